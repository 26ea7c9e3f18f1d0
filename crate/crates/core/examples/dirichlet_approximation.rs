use iqsieve::approx::{best_approx_oracle, DirichletApproximator};
use iqsieve::qfield::make_field;
use num_complex::Complex64;

fn main() -> iqsieve::Result<()> {
    let field = make_field(-11)?;
    let z = Complex64::new(std::f64::consts::PI, std::f64::consts::E);
    for n in [1, 4, 16, 25] {
        let ap = DirichletApproximator::new(&field, n)?.approximate(z)?;
        let best = best_approx_oracle(&field, z, n)?;
        println!(
            "N = {n:>2}: p/q = ({})/({}), |z - p/q| = {:.3e} <= {:.3e}; best scaled error {:.3e}",
            ap.p,
            ap.q,
            ap.error,
            ap.bound,
            best.scaled_error(&field)
        );
    }
    Ok(())
}
