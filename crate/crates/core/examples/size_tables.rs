// SPDX-License-Identifier: Apache-2.0

//! Super-set sizes from the recursions next to the prefix and repetition
//! baselines, for binary and non-binary codes.

use rmsp::superset::Mode;
use rmsp::tables::{binary_table, general_table};
use rmsp::Result;

pub fn main() -> Result<()> {
    println!(" d  m  S  recursive  lemma4  repetition  published");
    for r in binary_table(Mode::Closed, false)? {
        let flag = if r.matches { "" } else { "  *" };
        println!("{:2} {:2} {:2} {:10} {:7} {:11} {:10}{flag}", r.d, r.m, r.s, r.recursive, r.lemma4, r.repetition, r.published);
    }
    println!();
    println!(" q  d  m  S  recursive  lemma4  published");
    for r in general_table(Mode::Closed, false)? {
        println!("{:2} {:2} {:2} {:2} {:10} {:7} {:10}", r.q, r.d, r.m, r.s, r.recursive, r.lemma4, r.published);
    }
    Ok(())
}
