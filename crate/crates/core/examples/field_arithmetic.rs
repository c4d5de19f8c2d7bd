//! Arithmetic in GF(9) and square roots of −1 in small prime fields.

use psl_maniplex::field::Field;

fn main() -> psl_maniplex::Result<()> {
    let f = Field::of_order(9)?;
    println!("GF(9), modulus {:?} (constant term first)", f.spec().modulus());
    let t = f.from_coeffs(&[0, 1])?;
    for e in 0..8 {
        println!("  t^{e} = {:?}", f.coeffs(f.pow(t, e)));
    }
    println!("  frobenius(t) = {:?}", f.coeffs(f.frobenius(t)));

    for q in [5u64, 7, 13, 37, 61] {
        let f = Field::of_order(q)?;
        match f.sqrt_minus_one() {
            Some(a) => println!("sqrt(-1) in GF({q}) = {}", a.code()),
            None => println!("-1 is not a square in GF({q})"),
        }
    }
    Ok(())
}
