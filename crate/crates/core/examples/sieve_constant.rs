//! Sharp large-sieve constants for a few families, next to the bounds.

use iqsieve::bounds::{rhs_bound, BoundParams, Theorem};
use iqsieve::qfield::make_field;
use iqsieve::sieve::{build_fractions, lambda_max, FamilyKind};

fn main() -> iqsieve::Result<()> {
    let field = make_field(-1)?;
    let n = 16;
    let cases = [
        (FamilyKind::All, Theorem::Huxley13),
        (FamilyKind::Square, Theorem::Square),
        (FamilyKind::Power(3), Theorem::Power(3)),
    ];
    for (kind, theorem) in cases {
        for q in [2, 4, 8] {
            let family = build_fractions(&field, kind.clone(), q)?;
            let est = lambda_max(&family, n, 1e-10, 7, 5000)?;
            let rhs = rhs_bound(&BoundParams::new(theorem, q, n, 0.25))?;
            println!(
                "{:<7} Q={q:<2} F={:<5} lambda_max={:>10.4} rhs={:>12.2} ratio={:.4} ({} iterations)",
                kind.name(),
                family.len(),
                est.value,
                rhs,
                est.value / rhs,
                est.iterations
            );
        }
    }
    Ok(())
}
