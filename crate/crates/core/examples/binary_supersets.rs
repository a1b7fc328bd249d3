// SPDX-License-Identifier: Apache-2.0

//! S-information super-sets for binary Reed-Muller codes: the d = 1
//! constructions, the greedy search, the recursion and its closed-form bound.

use rmsp::superset::{
    best_2superset_binary, greedy_2superset, greedy_sets, lemma8_union, recursive_binary, thm4_superset,
    thm5_superset, thm7_bound, Mode,
};
use rmsp::Result;

pub fn main() -> Result<()> {
    for m in [4, 5] {
        let mut t = thm4_superset(m)?;
        t.verify()?;
        println!("RM(1,{m}) S=1: {}", t.summary());
    }
    let mut t = thm5_superset(6)?;
    t.verify()?;
    println!("RM(1,6) S=2: {}", t.summary());

    let sets = greedy_sets(8, 4)?;
    println!("greedy m=8 eta=4 supports: {sets:?}");
    let mut g = greedy_2superset(8, 4)?;
    g.verify()?;
    println!("  {}", g.summary());
    println!("best RM(1,9) S=2: {}", best_2superset_binary(9)?.summary());

    let mut u = lemma8_union(&thm5_superset(5)?, &thm4_superset(5)?)?;
    u.verify()?;
    println!("union for RM(1,5) S=3: {} ({})", u.summary(), u.provenance());

    for (d, m, s) in [(2, 5, 2), (3, 6, 1), (3, 7, 2), (4, 8, 2)] {
        let closed = recursive_binary(d, m, s, Mode::Closed)?;
        let best = recursive_binary(d, m, s, Mode::Best)?;
        println!(
            "RM({d},{m}) S={s}: closed {} best {} bound {}",
            closed.size(),
            best.size(),
            thm7_bound(d, m, s)
        );
    }

    let mut small = recursive_binary(2, 5, 1, Mode::Closed)?;
    small.verify()?;
    println!("RM(2,5) S=1 {}", small.summary());
    for line in small.to_text().lines().take(4) {
        println!("  {line}");
    }
    Ok(())
}
