//! Residue systems, totients, divisors and split primes in Z[i].

use iqsieve::qfield::{make_field, OKElt};
use iqsieve::residue::{coprime_residues, divisors, kronecker, primes_up_to_norm, residue_system, totient};

fn main() -> iqsieve::Result<()> {
    let field = make_field(-1)?;
    let m = OKElt::new(3, 3);
    let rs = residue_system(&field, &m)?;
    println!("O_K / ({m}) has {} classes", rs.len());
    println!("reduce(17 + 5i) = {}", rs.reduce(&OKElt::new(17, 5)));
    println!("totient = {}, coprime reps: {}", totient(&field, &m)?, coprime_residues(&field, &m)?.len());

    let divs = divisors(&field, &m)?;
    println!("{} divisors (with associates)", divs.len());

    for p in [2u64, 3, 5, 7, 13] {
        println!("(-4 / {p}) = {:>2}", kronecker(field.disc(), p));
    }
    let primes: Vec<String> = primes_up_to_norm(&field, 13)?.iter().map(|p| format!("{p}")).collect();
    println!("primes with N <= 13: {}", primes.join(" "));
    Ok(())
}
