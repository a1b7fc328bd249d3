// SPDX-License-Identifier: Apache-2.0

//! Super-sets over GF(q), q > 2: the d = 1 constructions and the recursion
//! over hyperplanes.

use rmsp::superset::{
    best_2superset_general, best_superset, condition9, recursive_general, thm10_superset, thm11_admissible,
    thm11_superset, thm8_superset, thm9_superset, Mode,
};
use rmsp::{Field, Result};

pub fn main() -> Result<()> {
    let f3 = Field::with_order(3)?;
    let f5 = Field::with_order(5)?;

    let mut a = thm8_superset(&f3, 4)?;
    a.verify()?;
    println!("GF(3) RM(1,4) S=1: {}", a.summary());
    let mut b = thm9_superset(&f3, 4)?;
    b.verify()?;
    println!("GF(3) RM(1,4) S=2: {}", b.summary());
    let mut c = thm10_superset(&f5)?;
    c.verify()?;
    println!("GF(5) RM(1,3) S=2: {}", c.summary());
    let xs = thm11_admissible(&f5, 6, 3).expect("admissible");
    let mut e = thm11_superset(&f5, 6, 3)?;
    e.verify()?;
    println!("GF(5) RM(1,6) S=2 blocks of 3 with x = {:?}: {}", xs.iter().map(|v| v.value()).collect::<Vec<_>>(), e.summary());
    println!("best GF(4) RM(1,4) S=2: {}", best_2superset_general(&Field::with_order(4)?, 4)?.summary());

    for (d, m, s) in [(2, 5, 1), (1, 5, 3), (2, 5, 2), (3, 6, 1)] {
        let r = recursive_general(&f3, d, m, s, Mode::Closed)?;
        println!("GF(3) RM({d},{m}) S={s}: size {} split={} ({})", r.size(), condition9(3, d, m, s), r.method().name());
    }

    let mut small = best_superset(&f3, 2, 3, 1, Mode::Closed)?;
    small.verify()?;
    println!("GF(3) RM(2,3) S=1 best: {}", small.summary());
    Ok(())
}
