// SPDX-License-Identifier: Apache-2.0

//! Storage codes, the exact leakage audit and the syndrome upload path.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmsp::privacy::{
    audit_subset_privacy, build_code, coset_representative, encode, random_vector, recover_key, sample_key, syndrome,
    Family,
};
use rmsp::{Field, Matrix, Result};

pub fn main() -> Result<()> {
    let f2 = Field::with_order(2)?;
    let g = Matrix::from_u32_rows(&f2, &[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]])?;
    let code = build_code(&f2, 4, 3, Family::Explicit(g))?;
    for r in [3, 4] {
        let rep = audit_subset_privacy(&code, r)?;
        println!("n=4 m=3 audited at r={r}: pass={} leakage={} bits over {} subsets", rep.pass, rep.leakage_bits, rep.subsets);
    }

    let rs = build_code(&Field::with_order(8)?, 7, 2, Family::Vandermonde)?;
    let rep = audit_subset_privacy(&rs, 2)?;
    println!("GF(8) Vandermonde n=7 r=2: pass={} ({} subsets)", rep.pass, rep.subsets);

    let bch = build_code(&f2, 15, 4, Family::DualBch)?;
    println!("binary n=15 r=4 from BCH: key length m={}", bch.m());

    // storage with a syndrome upload: n - m symbols instead of n
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x = random_vector(bch.field(), bch.n(), &mut rng);
    let s = syndrome(&bch, &x)?;
    let x_tilde = coset_representative(&bch, &s)?;
    let k = recover_key(&bch, &x, &x_tilde)?;
    assert_eq!(encode(&bch, &x, &k)?.x_tilde, x_tilde);
    println!("uploaded {} symbols instead of {}", s.len(), bch.n());

    let k = sample_key(&bch, 3);
    let enc = encode(&bch, &x, &k)?;
    assert_eq!(syndrome(&bch, &enc.x_tilde)?, s);
    println!("x and x + kG share a syndrome");
    Ok(())
}
