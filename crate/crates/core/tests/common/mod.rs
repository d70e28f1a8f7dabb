//! Helpers shared by the integration suites: a generator of random valid
//! variable schemes and small independent oracles for the codec checks.
#![allow(dead_code)]

use polarseq::{FrozenSet, Half, SchemeBuilder, VariableScheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Builds a random valid scheme supporting lengths `8..=2^max_exp`.
///
/// The layout mirrors the built-in one: sentinels sit literally at the seam
/// of the largest length and bold markers sit at the seams of every shorter
/// one. When `integer_updates` is set, update magnitudes stay whole so both
/// rounding modes agree.
pub fn random_scheme(seed: u64, max_exp: u32, integer_updates: bool) -> VariableScheme {
    assert!((3..=8).contains(&max_exp));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = 1usize << max_exp;
    let lengths: Vec<usize> = (3..=max_exp).map(|e| 1usize << e).collect();
    let n_bytes = (max / 16).max(1);
    let flat_len = n_bytes * 8;

    let mut b = SchemeBuilder::new();
    b.lengths(lengths.iter().copied());

    for half in [Half::Low, Half::High] {
        let (sentinel, prefix) = match half {
            Half::Low => ("ENDL", "V"),
            Half::High => ("ENDH", "W"),
        };
        let pool: Vec<String> = (0..rng.gen_range(2..=7))
            .map(|i| format!("{prefix}{i}"))
            .collect();
        let mut flat: Vec<String> = (0..flat_len)
            .map(|_| pool[rng.gen_range(0..pool.len())].clone())
            .collect();
        let mut bold = vec![false; flat_len];
        for &n in &lengths {
            let slot = match half {
                Half::Low => n / 2 - 1,
                Half::High => flat_len - n / 2,
            };
            if n == max {
                flat[slot] = sentinel.to_string();
            } else {
                bold[slot] = true;
            }
        }
        for (i, chunk) in flat.chunks(8).enumerate() {
            let row: Vec<String> = chunk
                .iter()
                .enumerate()
                .map(|(j, name)| {
                    if bold[i * 8 + j] {
                        format!("{name}*")
                    } else {
                        name.clone()
                    }
                })
                .collect();
            let byte_name = format!("{prefix}B{i}");
            match half {
                Half::Low => b.low_byte(&byte_name, &row.join(" ")).unwrap(),
                Half::High => b.high_byte(&byte_name, &row.join(" ")).unwrap(),
            };
        }
        let placed: Vec<&str> = pool
            .iter()
            .map(String::as_str)
            .filter(|name| flat.iter().any(|f| f == name))
            .chain([sentinel])
            .collect();
        for name in placed {
            for &n in &lengths {
                let init = rng.gen_range(0..=255i64);
                let mut half_units = rng.gen_range(0..=31u32);
                if integer_updates {
                    half_units &= !1;
                }
                let update = match half {
                    Half::Low => -(half_units as f64) / 2.0,
                    Half::High => half_units as f64 / 2.0,
                };
                b.rule(half, name, n, init, update).unwrap();
            }
        }
    }
    b.build().unwrap()
}

/// n-fold Kronecker power of [[1,0],[1,1]] over GF(2), built by block
/// doubling.
pub fn kronecker_matrix(n: usize) -> Vec<Vec<u8>> {
    let mut m = vec![vec![1u8]];
    while m.len() < n {
        let s = m.len();
        let mut next = vec![vec![0u8; 2 * s]; 2 * s];
        for i in 0..s {
            for j in 0..s {
                next[i][j] = m[i][j];
                next[s + i][j] = m[i][j];
                next[s + i][s + j] = m[i][j];
            }
        }
        m = next;
    }
    m
}

pub fn matrix_encode(u: &[u8], m: &[Vec<u8>]) -> Vec<u8> {
    let n = u.len();
    (0..n)
        .map(|j| (0..n).fold(0u8, |acc, i| acc ^ (u[i] & m[i][j])))
        .collect()
}

/// Weight of the hard-decision disagreement between `llrs` and `word`.
pub fn disagreement_metric(llrs: &[f64], word: &[u8]) -> f64 {
    llrs.iter()
        .zip(word)
        .filter(|(a, &b)| (**a < 0.0) != (b == 1))
        .map(|(a, _)| a.abs())
        .sum()
}

pub fn random_frozen(rng: &mut ChaCha8Rng, n: usize) -> FrozenSet {
    let frozen = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    FrozenSet::new(n, frozen).unwrap()
}
