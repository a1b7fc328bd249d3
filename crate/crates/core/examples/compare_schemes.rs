// SPDX-License-Identifier: Apache-2.0

//! Worker counts and download costs of the schemes side by side.

use rmsp::privacy::{build_code, Family};
use rmsp::protocol::compare_schemes;
use rmsp::superset::Mode;
use rmsp::{Field, Result};

pub fn main() -> Result<()> {
    let f2 = Field::with_order(2)?;
    let f16 = Field::with_order(16)?;
    let cases = [
        (build_code(&f2, 7, 6, Family::Parity)?, 3, 1),
        (build_code(&f2, 4, 3, Family::Parity)?, 2, 0),
        (build_code(&f16, 8, 2, Family::Vandermonde)?, 1, 3),
    ];
    println!("scheme      q  n  r  d  S    N    D  m  ok");
    for (code, d, s) in cases {
        for r in compare_schemes(&code, d, s, Mode::Closed, 2, 7)? {
            println!(
                "{:10} {:2} {:2} {:2} {:2} {:2} {:4} {:4} {:2}  {}",
                r.scheme,
                r.q,
                r.n,
                r.r,
                r.d,
                r.s,
                r.workers,
                r.download,
                r.m,
                r.ok()
            );
        }
    }
    Ok(())
}
