//! Finite simple graphs on labeled nodes `1..=n`, with the arc indexing,
//! Erdős–Rényi samplers, exhaustive enumeration, and sufficient statistics
//! used by every formula in this crate.
//!
//! Arcs are identified by their lexicographic rank among all node pairs
//! `(u, v)` with `u < v`; that order is fixed so that enumeration order, RNG
//! consumption order, and report output are reproducible bit for bit.

use num::{BigRational, One};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};
use crate::ratio::rat_pow;

/// Default number of arc slots an exhaustive enumeration may cover
/// (complete graphs up to n = 6).
pub const DEFAULT_ENUMERATION_CAP: u64 = 20;

/// `C(n, 2)`: the number of possible arcs on `n` nodes.
pub fn arc_slots(n: u32) -> u64 {
    let n = n as u64;
    n * (n - 1) / 2
}

/// Lexicographic rank of the arc `{u, v}` among all pairs on `n` nodes.
/// Nodes are 1-based and `u < v` is required.
pub fn arc_index(u: u32, v: u32, n: u32) -> Result<u64> {
    if u == 0 || v == 0 || u >= v || v > n {
        return Err(Error::domain(format!(
            "arc ({u},{v}) is not a pair with 1 <= u < v <= {n}"
        )));
    }
    let (u, v, n) = (u as u64, v as u64, n as u64);
    Ok((u - 1) * n - u * (u - 1) / 2 + (v - u - 1))
}

/// Inverse of [`arc_index`]: the endpoints `(u, v)` with `u < v` of the arc
/// with the given rank.
pub fn arc_endpoints(id: u64, n: u32) -> Result<(u32, u32)> {
    let slots = arc_slots(n);
    if id >= slots {
        return Err(Error::domain(format!(
            "arc id {id} out of range for n={n} ({slots} slots)"
        )));
    }
    // Number of arcs whose first endpoint is <= u: cum(u) = u*n - u(u+1)/2.
    // Find the smallest u with cum(u) > id, starting from a float guess.
    let nf = n as f64;
    let idf = id as f64;
    let disc = (nf - 0.5) * (nf - 0.5) - 2.0 * idf;
    let mut u = (nf - 0.5 - disc.max(0.0).sqrt()).floor() as i64 + 1;
    u = u.clamp(1, n as i64 - 1);
    let cum = |u: u64| u * n as u64 - u * (u + 1) / 2;
    let mut u = u as u64;
    while u > 1 && cum(u - 1) > id {
        u -= 1;
    }
    while cum(u) <= id {
        u += 1;
    }
    let before = cum(u - 1);
    let v = u + 1 + (id - before);
    Ok((u as u32, v as u32))
}

/// A simple graph on nodes `1..=n`, stored as the sorted list of present arc
/// ranks. Immutable from the caller's view: mutation-like operations return
/// a new value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u32,
    arcs: Vec<u64>,
}

impl Graph {
    pub fn empty(n: u32) -> Self {
        Graph { n, arcs: Vec::new() }
    }

    pub fn complete(n: u32) -> Self {
        Graph {
            n,
            arcs: (0..arc_slots(n)).collect(),
        }
    }

    /// Builds a graph from arbitrary arc ranks (sorted and deduplicated).
    pub fn from_arcs(n: u32, arcs: impl IntoIterator<Item = u64>) -> Result<Self> {
        let slots = arc_slots(n);
        let mut arcs: Vec<u64> = arcs.into_iter().collect();
        arcs.sort_unstable();
        arcs.dedup();
        if let Some(&last) = arcs.last() {
            if last >= slots {
                return Err(Error::domain(format!(
                    "arc id {last} out of range for n={n}"
                )));
            }
        }
        Ok(Graph { n, arcs })
    }

    /// Builds a graph from node pairs (either endpoint order).
    pub fn from_node_pairs(n: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        let ids = pairs
            .iter()
            .map(|&(a, b)| arc_index(a.min(b), a.max(b), n))
            .collect::<Result<Vec<_>>>()?;
        Graph::from_arcs(n, ids)
    }

    /// Interprets the low `C(n,2)` bits of `mask` as arc membership.
    /// Requires `C(n,2) <= 64`.
    pub fn from_bitmask(n: u32, mask: u64) -> Result<Self> {
        let slots = arc_slots(n);
        if slots > 64 {
            return Err(Error::domain(format!(
                "bitmask graphs need C(n,2) <= 64, n={n} has {slots}"
            )));
        }
        if slots < 64 && mask >> slots != 0 {
            return Err(Error::domain("bitmask has bits beyond the arc slots"));
        }
        let arcs = (0..slots).filter(|&i| mask >> i & 1 == 1).collect();
        Ok(Graph { n, arcs })
    }

    /// The arc-membership bitmask, when `C(n,2) <= 64`.
    pub fn bitmask(&self) -> Option<u64> {
        if arc_slots(self.n) > 64 {
            return None;
        }
        Some(self.arcs.iter().fold(0u64, |acc, &a| acc | 1 << a))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of present arcs.
    pub fn arc_count(&self) -> u64 {
        self.arcs.len() as u64
    }

    /// Present arc ranks in increasing order.
    pub fn arcs(&self) -> &[u64] {
        &self.arcs
    }

    pub fn contains_arc(&self, id: u64) -> bool {
        self.arcs.binary_search(&id).is_ok()
    }

    /// The graph with the membership of arc `id` flipped. An involution.
    pub fn toggled(&self, id: u64) -> Result<Graph> {
        if id >= arc_slots(self.n) {
            return Err(Error::domain(format!(
                "arc id {id} out of range for n={}",
                self.n
            )));
        }
        let mut arcs = self.arcs.clone();
        match arcs.binary_search(&id) {
            Ok(pos) => {
                arcs.remove(pos);
            }
            Err(pos) => arcs.insert(pos, id),
        }
        Ok(Graph { n: self.n, arcs })
    }

    /// The graph with arc `id` forced present or absent.
    pub fn with_arc(&self, id: u64, present: bool) -> Result<Graph> {
        if id >= arc_slots(self.n) {
            return Err(Error::domain(format!(
                "arc id {id} out of range for n={}",
                self.n
            )));
        }
        if self.contains_arc(id) == present {
            return Ok(self.clone());
        }
        self.toggled(id)
    }

    /// Sufficient statistics: arc count, leaf/isolated/non-isolated node
    /// counts, and the degree sequence.
    pub fn stats(&self) -> GraphStats {
        let mut degrees = vec![0u32; self.n as usize];
        for &id in &self.arcs {
            let (u, v) = arc_endpoints(id, self.n).expect("stored arc in range");
            degrees[u as usize - 1] += 1;
            degrees[v as usize - 1] += 1;
        }
        let mut leaves = 0;
        let mut isolated = 0;
        for &d in &degrees {
            if d == 0 {
                isolated += 1;
            } else if d == 1 {
                leaves += 1;
            }
        }
        GraphStats {
            m: self.arcs.len() as u64,
            leaves,
            isolated,
            non_isolated: self.n - isolated,
            degrees,
        }
    }

    /// Erdős–Rényi sample: every arc present independently with probability
    /// `p`, consuming one Bernoulli draw per arc slot in rank order.
    pub fn sample_dense(n: u32, p: f64, rng: &mut impl Rng) -> Result<Graph> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("p={p} outside [0,1]")));
        }
        let slots = arc_slots(n);
        let mut arcs = Vec::new();
        for id in 0..slots {
            if rng.random_bool(p) {
                arcs.push(id);
            }
        }
        Ok(Graph { n, arcs })
    }

    /// Erdős–Rényi sample with the same distribution as [`Graph::sample_dense`],
    /// produced by geometric skips over arc ranks so the expected cost is
    /// proportional to the number of present arcs.
    pub fn sample_sparse(n: u32, p: f64, rng: &mut impl Rng) -> Result<Graph> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("p={p} outside [0,1]")));
        }
        if p == 0.0 {
            return Ok(Graph::empty(n));
        }
        if p == 1.0 {
            return Ok(Graph::complete(n));
        }
        let slots = arc_slots(n);
        let skips = Geometric::new(p).map_err(|e| Error::domain(e.to_string()))?;
        let mut arcs = Vec::with_capacity((slots as f64 * p * 1.1) as usize + 8);
        let mut cur: u64 = 0;
        loop {
            let skip = skips.sample(rng);
            cur = match cur.checked_add(skip) {
                Some(next) => next,
                None => break,
            };
            if cur >= slots {
                break;
            }
            arcs.push(cur);
            cur += 1;
        }
        Ok(Graph { n, arcs })
    }
}

/// The sufficient statistics of a graph for every edge-count formula here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    /// Arc count.
    pub m: u64,
    /// Nodes of degree exactly 1.
    pub leaves: u32,
    /// Nodes of degree 0.
    pub isolated: u32,
    /// Nodes of degree >= 1; always `n - isolated`.
    pub non_isolated: u32,
    /// Degree of node `v` at index `v - 1`.
    pub degrees: Vec<u32>,
}

/// All `2^C(n,2)` graphs on `n` labeled nodes, in increasing bitmask order,
/// under the default enumeration cap.
pub fn enumerate_graphs(n: u32) -> Result<impl Iterator<Item = Graph>> {
    enumerate_graphs_capped(n, DEFAULT_ENUMERATION_CAP)
}

/// As [`enumerate_graphs`] with an explicit arc-slot cap.
pub fn enumerate_graphs_capped(n: u32, cap: u64) -> Result<impl Iterator<Item = Graph>> {
    let slots = arc_slots(n);
    if slots > cap {
        return Err(Error::cap(format!(
            "enumerating n={n} needs {slots} arc slots, cap is {cap}"
        )));
    }
    Ok((0u64..1 << slots).map(move |mask| Graph::from_bitmask(n, mask).expect("mask in range")))
}

/// Product-Bernoulli probability of one labeled graph:
/// `p^m (1-p)^(C(n,2)-m)`. Sums to exactly 1 over all graphs on `n` nodes.
pub fn graph_weight(g: &Graph, p: &BigRational) -> BigRational {
    let slots = arc_slots(g.n());
    let m = g.arc_count();
    let q = BigRational::one() - p;
    rat_pow(p, m) * rat_pow(&q, slots - m)
}

/// Per-replication random stream: a pure function of
/// `(master_seed, replication)`, so replications are order-independent and
/// parallel-safe.
pub fn replication_rng(master_seed: u64, replication: u64) -> ChaCha8Rng {
    let mut state = master_seed ^ replication.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    state = state.wrapping_add(replication);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
