// SPDX-License-Identifier: Apache-2.0

//! Arithmetic in GF(p^e) and the canonical element ordering.

use rmsp::{Field, Result};

pub fn main() -> Result<()> {
    let f = Field::parse("2^4")?;
    println!("{f}: modulus {:?}, generator {}", f.modulus(), f.zeta());

    // α_0 = 0, α_i = ζ^(i-1)
    let order: Vec<String> = f.elements().iter().map(|a| a.to_string()).collect();
    println!("canonical order: {}", order.join(" "));

    let a = f.elem(7)?;
    let b = f.elem(12)?;
    println!("7 + 12 = {}", f.add(a, b));
    println!("7 * 12 = {}", f.mul(a, b));
    println!("7^-1 = {}", f.inv(a)?);
    assert_eq!(f.mul(a, f.inv(a)?), f.elem(1)?);

    // checked wrapper with operators
    let g = Field::with_order(9)?;
    let x = g.element(4)?;
    let y = g.element(5)?;
    println!("in {g}: {} * {} = {}, order of 4 is {}", x.value(), y.value(), (&x * &y).value(), g.order_of(x.value())?);

    // an explicit modulus: x^2 + x + 2 over GF(3)
    let h = Field::parse("3^2 mod=2,1,1")?;
    println!("{h} with modulus {:?}: generator {}", h.modulus(), h.zeta());
    Ok(())
}
