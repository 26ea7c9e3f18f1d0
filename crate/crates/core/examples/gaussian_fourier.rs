use iqsieve::analytic::{
    decay_exponent, fourier_numeric_oracle, g_fourier_analytic, g_weight, gaussian_transform, transform_constant,
};
use iqsieve::qfield::{make_field, OKElt};
use num_complex::Complex64;

fn main() -> iqsieve::Result<()> {
    for d in [-1, -3] {
        let field = make_field(d)?;
        println!("d = {d}: A = {:.12} (2/sqrt|D| = {:.12})", transform_constant(&field)?, 2.0 / field.sqrt_abs_disc());

        let z = Complex64::new(0.4, -0.3);
        let gauss = |w: Complex64| Complex64::new((-std::f64::consts::PI * w.norm_sqr()).exp(), 0.0);
        let num = fourier_numeric_oracle(&field, gauss, z)?;
        println!(
            "  Gaussian transform at {z}: quadrature {:.12}, closed form {:.12}",
            num.re,
            gaussian_transform(&field, z.norm_sqr())
        );

        let alpha = [OKElt::new(1, 1), OKElt::new(0, -1)];
        let (q0, k) = (3.0, 3);
        let closed = g_fourier_analytic(&field, z, &alpha, q0, k)?;
        let quad = fourier_numeric_oracle(
            &field,
            |w| Complex64::new(g_weight(&field, w, &alpha, q0, k).unwrap_or(0.0), 0.0),
            z,
        )?;
        println!("  g transform, k = 3: closed {closed:.10}, quadrature {quad:.10}");
        println!("  log-log decay slope on [0.5, 2]: {:.2}", decay_exponent(&field, 0.5, 2.0, 6)?);
    }
    Ok(())
}
