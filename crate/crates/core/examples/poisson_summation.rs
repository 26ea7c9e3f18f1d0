//! Both sides of the twisted Poisson formula with a Gaussian weight.

use iqsieve::analytic::{poisson_identity_check, poisson_shift_check};
use iqsieve::qfield::{make_field, OKElt};

fn main() -> iqsieve::Result<()> {
    let field = make_field(-7)?;
    let n = OKElt::new(1, 1);
    for x in [0.5, 1.0, 5.0] {
        for r in [OKElt::zero(), OKElt::one()] {
            let c = poisson_identity_check(&field, x, &n, &r, 1_000_000)?;
            println!(
                "X={x:<3} r={r}: lhs={:.15} rhs={:.15} |diff|={:.1e} ({} + {} terms)",
                c.lhs.re,
                c.rhs.re,
                c.error(),
                c.lhs_terms,
                c.rhs_terms
            );
        }
    }
    let b = OKElt::new(2, 1);
    for q in [1.0, 4.0] {
        let c = poisson_shift_check(&field, &b, 5, q, 1_000_000)?;
        println!("shift b=({b})/5, Q={q}: lhs={:.12} rhs={:.12}", c.lhs, c.rhs);
    }
    Ok(())
}
