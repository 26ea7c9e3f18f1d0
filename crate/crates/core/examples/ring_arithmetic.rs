//! Arithmetic in the ring of integers of Q(√−7).

use iqsieve::qfield::{make_field, OKElt};

fn main() -> iqsieve::Result<()> {
    let field = make_field(-7)?;
    println!("d = {}, D_K = {}, units = {}", field.d(), field.disc(), field.unit_count());

    let x = OKElt::new(3, 2);
    let y = OKElt::new(-1, 1);
    let xy = field.mul(&x, &y);
    println!("({x})·({y}) = {xy}");
    println!("N(x) = {}, Tr(x) = {}, conj(x) = {}", field.norm(&x), field.trace(&x), field.conj(&x));
    println!("N(xy) = {} = N(x)·N(y) = {}", field.norm(&xy), field.norm(&x) * field.norm(&y));
    println!("x^5 = {}", field.pow(&x, 5));

    match field.exact_div(&xy, &y)? {
        Some(q) => println!("xy / y = {q}"),
        None => println!("y does not divide xy?"),
    }
    println!("(x + 1) / y exact? {:?}", field.exact_div(&(&x + &OKElt::one()), &y)?);

    let small: Vec<String> = field.enumerate_by_norm(4, false).iter().map(|e| e.to_string()).collect();
    println!("elements with 0 < N <= 4: {}", small.join(", "));
    Ok(())
}
