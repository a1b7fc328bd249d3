// SPDX-License-Identifier: Apache-2.0

//! Smallest 2-super-sets for RM_2(1, m) found by the greedy search, for m
//! far beyond what a generator matrix could hold.

use rmsp::tables::figure2_point;
use rmsp::Result;

pub fn main() -> Result<()> {
    println!("  m  size  extra  eta");
    for m in [4, 6, 8, 12, 16, 24, 32, 48, 64] {
        let p = figure2_point(m, Some(12))?;
        let eta = p.eta.map_or("-".to_string(), |e| e.to_string());
        println!("{:3} {:5} {:6} {:>4}", p.m, p.size, p.excess(), eta);
    }
    Ok(())
}
