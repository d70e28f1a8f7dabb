//! Reliability vectors, frozen-set selection and the code parameters that
//! tie them together.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How fractional update values behave while a sequence is generated.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RoundingMode {
    /// Variables keep their half-unit fraction between updates; only the
    /// emitted value is rounded down.
    KeepFraction,
    /// The fraction is dropped after every update, mirroring the hardware
    /// shift-left/add/shift-right datapath.
    FloorEachUpdate,
}

/// Per-index unreliability ranks: `p[i] = N-1` marks the least reliable
/// bit-channel, `p[i] = 0` the most reliable. Approximate generators may
/// emit duplicate values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReliabilityVector {
    values: Vec<i64>,
}

#[allow(clippy::len_without_is_empty)]
impl ReliabilityVector {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo { len: values.len() });
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// CSV rendering with an `index,reliability` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,reliability\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }

    /// Count of index pairs the two vectors order oppositely. Pairs tied in
    /// either vector do not count.
    pub fn kendall_tau_distance(&self, other: &Self) -> Result<u64> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let a = &self.values;
        let b = &other.values;
        let mut discordant = 0u64;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                let da = a[i].cmp(&a[j]);
                let db = b[i].cmp(&b[j]);
                if da != std::cmp::Ordering::Equal && db == da.reverse() {
                    discordant += 1;
                }
            }
        }
        Ok(discordant)
    }

    /// Splits `n` indices into `k` information positions (the smallest
    /// reliability values) and `n - k` frozen positions. Ties go to the
    /// larger index as information, which matches the tendency of later
    /// indices to be more reliable.
    pub fn select_frozen(&self, k: usize) -> Result<FrozenSet> {
        let n = self.len();
        if k > n {
            return Err(Error::InvalidK { k, n });
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by(|&a, &b| self.values[a].cmp(&self.values[b]).then(b.cmp(&a)));
        let mut frozen: Vec<usize> = order[k..].to_vec();
        frozen.sort_unstable();
        Ok(FrozenSet { n, frozen })
    }
}

impl std::ops::Index<usize> for ReliabilityVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.values[i]
    }
}

/// See [`ReliabilityVector::select_frozen`].
pub fn select_frozen(p: &ReliabilityVector, k: usize) -> Result<FrozenSet> {
    p.select_frozen(k)
}

/// The frozen positions of a code of length `n`. Information positions are
/// the complement.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FrozenSet {
    n: usize,
    frozen: Vec<usize>,
}

impl FrozenSet {
    pub fn new(n: usize, mut frozen: Vec<usize>) -> Result<Self> {
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::NotPowerOfTwo { len: n });
        }
        frozen.sort_unstable();
        frozen.dedup();
        if let Some(&bad) = frozen.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidConfig(format!(
                "frozen index {bad} out of range for length {n}"
            )));
        }
        Ok(Self { n, frozen })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of information positions.
    pub fn k(&self) -> usize {
        self.n - self.frozen.len()
    }

    pub fn frozen_indices(&self) -> &[usize] {
        &self.frozen
    }

    pub fn information_indices(&self) -> Vec<usize> {
        let mut mask = vec![true; self.n];
        for &i in &self.frozen {
            mask[i] = false;
        }
        (0..self.n).filter(|&i| mask[i]).collect()
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen.binary_search(&i).is_ok()
    }

    /// `mask[i]` is true for frozen positions.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &i in &self.frozen {
            mask[i] = true;
        }
        mask
    }

    /// Size of the symmetric difference between two frozen sets.
    pub fn symmetric_difference(&self, other: &Self) -> usize {
        let a: std::collections::BTreeSet<_> = self.frozen.iter().collect();
        let b: std::collections::BTreeSet<_> = other.frozen.iter().collect();
        a.symmetric_difference(&b).count()
    }
}

/// Code parameters: length `n = 2^n_exp` with `k` information bits.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CodeSpec {
    n: usize,
    k: usize,
}

impl CodeSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::NotPowerOfTwo { len: n });
        }
        if k > n {
            return Err(Error::InvalidK { k, n });
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_exp(&self) -> u32 {
        self.n.trailing_zeros()
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}
