// SPDX-License-Identifier: Apache-2.0

//! End-to-end runs of the trivial, information-set, super-set and LCC
//! schemes, with every straggler pattern where that is feasible.

use rmsp::privacy::{build_code, Family};
use rmsp::protocol::{simulate, PatternMode, Scheme, SchemeConfig};
use rmsp::superset::Mode;
use rmsp::{Field, Result};

pub fn main() -> Result<()> {
    let f2 = Field::with_order(2)?;
    let code = build_code(&f2, 4, 3, Family::Parity)?;
    for (scheme, s) in [(Scheme::Trivial, 0), (Scheme::Infoset, 0), (Scheme::Superset, 1)] {
        let cfg = SchemeConfig::new(code.clone(), 2, s, scheme, Mode::Closed)?;
        let rep = simulate(&cfg, 5, PatternMode::Exhaustive, 1)?;
        println!(
            "{:8} N={:2} D={:2} patterns={:2} ok={}",
            scheme.name(),
            rep.workers,
            rep.download,
            rep.straggler_patterns_tested,
            rep.decoded_ok
        );
    }

    let f16 = Field::with_order(16)?;
    let rs = build_code(&f16, 8, 2, Family::Vandermonde)?;
    for s in [1, 3] {
        let cfg = SchemeConfig::new(rs.clone(), 2, s, Scheme::Lcc, Mode::Closed)?;
        let rep = simulate(&cfg, 2, PatternMode::Exhaustive, 2)?;
        println!("lcc S={s}: N={} D={} patterns={} ok={}", rep.workers, rep.download, rep.straggler_patterns_tested, rep.decoded_ok);
    }
    let small = build_code(&Field::with_order(8)?, 8, 2, Family::Vandermonde)?;
    match SchemeConfig::new(small, 2, 1, Scheme::Lcc, Mode::Closed) {
        Err(e) => println!("lcc over GF(8): {e}"),
        Ok(_) => unreachable!("GF(8) cannot host 12 workers"),
    }

    // the syndrome upload changes only the storage phase
    let cfg = SchemeConfig::new(code, 2, 1, Scheme::Superset, Mode::Closed)?.with_syndrome_upload(true);
    let rep = simulate(&cfg, 3, PatternMode::Exhaustive, 3)?;
    println!("superset with syndrome upload: upload={} ok={}", rep.upload, rep.decoded_ok);
    Ok(())
}
