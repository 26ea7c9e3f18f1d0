use iqsieve::character::{eval_character, eval_character_complex_oracle, phase};
use iqsieve::qfield::{make_field, OKElt};
use iqsieve::residue::residue_system;
use num_complex::Complex64;

// Exact phases of ẽ_K(n·r/m) and the orthogonality relation over a residue system.
fn main() -> iqsieve::Result<()> {
    let field = make_field(-3)?;
    let m = OKElt::new(2, 1);
    let r = OKElt::new(1, 0);

    for n in field.enumerate_by_norm(3, true) {
        let p = phase(&field, &n, &r, &m)?;
        let z = field.to_complex(&n) * field.to_complex(&r) / field.to_complex(&m);
        println!(
            "n = {n:>8}: phase {p:>5}, e = {:.6}, complex formula = {:.6}",
            eval_character(&p),
            eval_character_complex_oracle(&field, z)
        );
    }

    let reps = residue_system(&field, &m)?;
    for a in [OKElt::new(1, 0), m.clone(), OKElt::new(0, 1)] {
        let mut sum = Complex64::new(0.0, 0.0);
        for rr in reps.reps() {
            sum += eval_character(&phase(&field, &a, rr, &m)?);
        }
        println!("sum over r mod {m} of e(a·r/m), a = {a}: {sum:.3e}");
    }
    Ok(())
}
