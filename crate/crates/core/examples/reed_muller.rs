// SPDX-License-Identifier: Apache-2.0

//! RM_q(d, m): dimension, minimum distance, the information set I_(d,m) and
//! reconstruction of every evaluation from the values on it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rmsp::{Fe, Field, Reconstructor, Result, RmCode};

pub fn main() -> Result<()> {
    let f = Field::with_order(3)?;
    let code = RmCode::new(&f, 2, 3)?;
    println!("RM_3(2,3): n={} lambda={} dmin={}", code.len(), code.lambda(), code.dmin());

    let info = code.info_set();
    println!("information set indices: {:?}", info.distinct());
    for &p in info.distinct().iter().take(4) {
        println!("  point {p} = {:?}", code.point(p).iter().map(|v| v.value()).collect::<Vec<_>>());
    }
    assert!(code.is_information_set(&info));

    // any codeword is determined by its entries on I
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let coeffs: Vec<Fe> = (0..code.lambda()).map(|_| Fe(rng.gen_range(0..3))).collect();
    let word: Vec<Fe> = (0..code.len()).map(|i| code.evaluate(&coeffs, i)).collect();
    let rec = Reconstructor::new(&code, &info)?;
    let on_info: Vec<Fe> = rec.points().iter().map(|&p| word[p]).collect();
    let all: Vec<usize> = (0..code.len()).collect();
    let back = rec.reconstruct(&on_info, &all)?;
    assert_eq!(back, word);
    println!("reconstructed all {} evaluations from {}", code.len(), on_info.len());

    // a column subset that is too small has lower rank
    let few: Vec<usize> = info.distinct()[..5].to_vec();
    println!("rank of 5 information-set columns: {}", code.column_rank(&few));
    Ok(())
}
