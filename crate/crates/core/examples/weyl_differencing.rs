use iqsieve::analytic::{first_differencing, weyl_sum};
use iqsieve::qfield::{make_field, OKElt};

// One Weyl differencing step for a quadratic exponential sum over Z[i].
fn main() -> iqsieve::Result<()> {
    let field = make_field(-1)?;
    let (q1, r1) = (OKElt::new(2, 1), OKElt::one());
    for j in [OKElt::zero(), OKElt::one(), OKElt::new(1, 2)] {
        let s = weyl_sum(&field, &q1, &r1, &j, 2, 4.0, 10_000)?;
        let c = first_differencing(&field, &q1, &r1, &j, 2, 4.0, 0.25, 10_000)?;
        println!(
            "j = {j}: |S|^2 = {:.6}, expansion = {:.6}, head = {:.4}, tail = {:.4}",
            s.norm_sqr(),
            c.expanded.re,
            c.head,
            c.tail
        );
    }
    Ok(())
}
