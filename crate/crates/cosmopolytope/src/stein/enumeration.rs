//! Exhaustive enumeration over all graphs at small `n`: cached functional
//! values indexed by the arc bitmask, exact expectations, and exact
//! distributions under the product-Bernoulli law.
//!
//! All graphs with the same arc count share the same probability, so sums
//! are accumulated per arc count first and weighted exactly afterwards.
//! `f64` values convert to rationals losslessly (`BigRational::from_float`
//! is exact for every finite double), so the expectations are exact even
//! for non-integer-valued functionals.

use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::functional::GraphFunctional;
use crate::graph::{arc_slots, Graph, DEFAULT_ENUMERATION_CAP};
use crate::ratio::rat_pow;

/// Functional values over all `2^M` arc bitmasks.
pub(crate) struct ValueTable {
    pub slots: u64,
    pub values: Vec<f64>,
}

impl ValueTable {
    pub fn build(f: &dyn GraphFunctional, n: u32, cap: u64) -> Result<Self> {
        let slots = arc_slots(n);
        if slots > cap {
            return Err(Error::cap(format!(
                "enumerating n={n} needs {slots} arc slots, cap is {cap}"
            )));
        }
        let values = (0u64..1 << slots)
            .map(|mask| f.eval(&Graph::from_bitmask(n, mask).expect("mask in range")))
            .collect();
        Ok(ValueTable { slots, values })
    }

    /// Integer view of the table when every value is a small integer
    /// (enables pure-integer accumulation in the moment sums).
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        const LIMIT: f64 = (1u64 << 20) as f64;
        self.values
            .iter()
            .map(|&v| {
                (v.fract() == 0.0 && v.abs() <= LIMIT).then_some(v as i64)
            })
            .collect()
    }
}

/// `w[k] = p^k (1-p)^(M-k)`: the weight of any graph with `k` arcs.
pub(crate) fn arc_count_weights(slots: u64, p: &BigRational) -> Vec<BigRational> {
    let q = BigRational::from(num::BigInt::from(1)) - p;
    (0..=slots)
        .map(|k| rat_pow(p, k) * rat_pow(&q, slots - k))
        .collect()
}

/// Exact `E[F(G_{n,p})]` by weighted enumeration of all graphs.
pub fn exact_expectation(f: &dyn GraphFunctional, n: u32, p: &BigRational) -> Result<BigRational> {
    exact_expectation_capped(f, n, p, DEFAULT_ENUMERATION_CAP)
}

/// As [`exact_expectation`] with an explicit arc-slot cap.
pub fn exact_expectation_capped(
    f: &dyn GraphFunctional,
    n: u32,
    p: &BigRational,
    cap: u64,
) -> Result<BigRational> {
    let table = ValueTable::build(f, n, cap)?;
    let mut buckets = vec![BigRational::zero(); table.slots as usize + 1];
    for (mask, &v) in table.values.iter().enumerate() {
        let exact = BigRational::from_float(v)
            .ok_or_else(|| Error::domain(format!("functional returned non-finite value {v}")))?;
        buckets[(mask as u64).count_ones() as usize] += exact;
    }
    let weights = arc_count_weights(table.slots, p);
    Ok(buckets
        .iter()
        .zip(&weights)
        .map(|(b, w)| b * w)
        .sum())
}

/// The exact law of `F(G_{n,p})`: finitely many atoms with rational
/// probabilities summing to one.
#[derive(Clone, Debug)]
pub struct AtomicDistribution {
    atoms: Vec<(f64, BigRational)>,
}

impl AtomicDistribution {
    /// Atoms sorted by value; every probability is positive.
    pub fn atoms(&self) -> &[(f64, BigRational)] {
        &self.atoms
    }

    pub fn from_atoms(mut atoms: Vec<(f64, BigRational)>) -> Result<Self> {
        atoms.retain(|(_, p)| !p.is_zero());
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite atom values"));
        for pair in atoms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::domain("duplicate atom values"));
            }
        }
        let total: BigRational = atoms.iter().map(|(_, p)| p.clone()).sum();
        if total != BigRational::from(num::BigInt::from(1)) {
            return Err(Error::domain(format!(
                "atom probabilities sum to {total}, not 1"
            )));
        }
        Ok(AtomicDistribution { atoms })
    }

    /// Exact mean of the atomic law.
    pub fn mean(&self) -> BigRational {
        self.atoms
            .iter()
            .map(|(v, p)| BigRational::from_float(*v).expect("finite atom") * p)
            .sum()
    }

    /// Exact variance of the atomic law.
    pub fn variance(&self) -> BigRational {
        let mean = self.mean();
        let second: BigRational = self
            .atoms
            .iter()
            .map(|(v, p)| {
                let v = BigRational::from_float(*v).expect("finite atom");
                &v * &v * p
            })
            .sum();
        second - &mean * &mean
    }
}

/// Exact pmf of `F(G_{n,p})` by enumeration.
pub fn exact_distribution(
    f: &dyn GraphFunctional,
    n: u32,
    p: &BigRational,
) -> Result<AtomicDistribution> {
    exact_distribution_capped(f, n, p, DEFAULT_ENUMERATION_CAP)
}

/// As [`exact_distribution`] with an explicit arc-slot cap.
pub fn exact_distribution_capped(
    f: &dyn GraphFunctional,
    n: u32,
    p: &BigRational,
    cap: u64,
) -> Result<AtomicDistribution> {
    let table = ValueTable::build(f, n, cap)?;
    // Histogram of arc counts per distinct value; f64 bits are a stable key
    // for finite values.
    let mut histogram: std::collections::HashMap<u64, (f64, Vec<u64>)> =
        std::collections::HashMap::new();
    for (mask, &v) in table.values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::domain(format!(
                "functional returned non-finite value {v}"
            )));
        }
        let entry = histogram
            .entry(v.to_bits())
            .or_insert_with(|| (v, vec![0u64; table.slots as usize + 1]));
        entry.1[(mask as u64).count_ones() as usize] += 1;
    }
    let weights = arc_count_weights(table.slots, p);
    let atoms = histogram
        .into_values()
        .map(|(v, counts)| {
            let prob = counts
                .iter()
                .zip(&weights)
                .map(|(&c, w)| BigRational::from(num::BigInt::from(c)) * w)
                .sum();
            (v, prob)
        })
        .collect();
    AtomicDistribution::from_atoms(atoms)
}
