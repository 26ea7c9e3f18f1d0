//! Spacing counts and the sieve constant for random points on the torus.

use iqsieve::sieve::{power_iteration, torus_counts, TorusGram, TorusMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> iqsieve::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let points: Vec<[f64; 2]> = (0..40).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect();
    for n in [4u64, 16, 64] {
        let f = torus_counts(&points, TorusMode::FCount(n))?;
        let gram = TorusGram::new(&points, n);
        let lam = power_iteration(&gram, 1e-10, 1, 5000)?.value;
        println!("N = {n:>2}: F = {f:>2}, lambda_max = {lam:>9.3}, F·N = {}", f as u64 * n);
    }
    for delta in [1.0 / 8.0, 1.0 / 16.0] {
        let k0 = torus_counts(&points, TorusMode::K0(delta))?;
        println!("K0({delta}) = {k0}");
    }
    Ok(())
}
