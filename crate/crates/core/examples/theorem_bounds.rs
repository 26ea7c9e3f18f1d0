use iqsieve::bounds::{count_a_t, make_s_t, theorem2_rhs, theorem3_rhs, verify_x_detailed, ModuliSet};
use iqsieve::qfield::{make_field, OKElt};

// The general-moduli bounds for the set of squares of norm at most 16 in Z[i].
fn main() -> iqsieve::Result<()> {
    let field = make_field(-1)?;
    let mut squares: Vec<OKElt> = Vec::new();
    for x in field.enumerate_by_norm(4, false) {
        let s = field.pow(&x, 2);
        if !squares.contains(&s) {
            squares.push(s);
        }
    }
    let set = ModuliSet::new(&field, 16, squares)?;
    println!("S has {} elements", set.len());

    let two = OKElt::new(2, 0);
    let s2 = make_s_t(&set, &two)?;
    println!("S_2 = {:?}", s2.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let a = count_a_t(&field, &s2, 16, &two, 1.0, &OKElt::one(), &OKElt::zero())?;
    println!("A_2(1, 1, 0) = {a}");

    let n = 16;
    for z in [8, 16, 32] {
        println!("nested bound with {z} radii: {:.3}", theorem2_rhs(&set, n, z)?);
    }
    if let Some(w) = verify_x_detailed(&set, n)? {
        println!("X = {:.4} attained at t = {}, u = {:.4}, count {}", w.x, w.t, w.u, w.count);
    }
    println!("X-based bound: {:.3}", theorem3_rhs(&set, n, 0.25)?);
    Ok(())
}
