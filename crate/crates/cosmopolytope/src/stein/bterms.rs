//! The five moment sums of the second-order normal-approximation bound,
//! computed by exhaustive enumeration.
//!
//! For a standardized functional `F` of the arc indicators (all sharing the
//! same probability `p`), with `D_k` the discrete gradient and `D_l D_j`
//! the second-order gradient:
//!
//! ```text
//! B1 = sum_{j,k,l} sqrt(E[(D_j F)^2 (D_k F)^2]) sqrt(E[(D_l D_j F)^2 (D_l D_k F)^2])
//! B2 = sum_{j,k,l} (pq)^-1 E[(D_l D_j F)^2 (D_l D_k F)^2]
//! B3 = sum_k     (pq)^-1 E[(D_k F)^4]
//! B4 = sum_{k,l} (pq)^-1 sqrt(E[(D_k F)^4]) sqrt(E[(D_l D_k F)^4])
//! B5 = sum_{k,l} (pq)^-2 E[(D_l D_k F)^4]
//! ```
//!
//! Sums run over all index tuples including repeats; the diagonal
//! second-order gradients vanish, so including them is harmless. Gradients
//! factor as `D_k F = sqrt(pq) * d_k` and `D_l D_j F = pq * dd_{lj}` with
//! integer-valued finite differences for counting functionals, so every
//! expectation above is an exact rational; only the square roots in B1 and
//! B4 are assembled in floating point. Standardization divides by the
//! enumerated variance, keeping everything rational.
//!
//! Cost is `O(M^3 2^M)` table lookups for `M` arc slots; graphs with equal
//! arc counts share a probability, so each expectation is accumulated per
//! arc count and weighted exactly afterwards.

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::functional::GraphFunctional;
use crate::graph::arc_slots;
use crate::ratio::to_f64;
use crate::stein::enumeration::{arc_count_weights, ValueTable};

/// Default arc-slot cap for the `O(M^3 2^M)` sums (complete graphs up to
/// n = 5); n = 6 needs an explicit cap of 15.
pub const DEFAULT_BTERM_ARC_CAP: u64 = 10;

/// The five nonnegative bound terms.
#[derive(Clone, Copy, Debug)]
pub struct BTerms {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
    pub b5: f64,
}

/// Bound terms plus the exact rational values of the sums that involve no
/// square roots, and the enumerated moments used for standardization.
#[derive(Clone, Debug)]
pub struct BTermsDetailed {
    pub terms: BTerms,
    pub b2_exact: BigRational,
    pub b3_exact: BigRational,
    pub b5_exact: BigRational,
    pub mean: BigRational,
    pub variance: BigRational,
}

/// Scalar the moment buckets accumulate in: `i128` for small-integer
/// functionals, exact rationals otherwise.
trait Accum: Clone {
    fn zero_value() -> Self;
    fn add_assign(&mut self, other: Self);
    fn sub(a: &Self, b: &Self) -> Self;
    fn mul(a: &Self, b: &Self) -> Self;
    fn to_rational(&self) -> BigRational;
}

impl Accum for i128 {
    fn zero_value() -> Self {
        0
    }
    fn add_assign(&mut self, other: Self) {
        *self += other;
    }
    fn sub(a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from(crate::ratio::bigint_from_i128(*self))
    }
}

impl Accum for BigRational {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn add_assign(&mut self, other: Self) {
        *self += other;
    }
    fn sub(a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// Raw (unstandardized, `pq`-stripped) moment tables: expectations of the
/// integer finite-difference powers.
struct RawTables {
    mean: BigRational,
    variance: BigRational,
    /// `E[d_k^4]`, indexed by `k`.
    e4: Vec<BigRational>,
    /// `E[d_j^2 d_k^2]`, indexed by `j*m + k` for `j <= k`.
    s2: Vec<BigRational>,
    /// `E[dd_{lj}^4]`, indexed by `l*m + j` for `l < j`.
    t4: Vec<BigRational>,
    /// `E[dd_{lj}^2 dd_{lk}^2]`, indexed by `(l*m + j)*m + k` for `j <= k`.
    t22: Vec<BigRational>,
    slots: usize,
}

impl RawTables {
    fn s2_at(&self, j: usize, k: usize) -> &BigRational {
        let (j, k) = (j.min(k), j.max(k));
        &self.s2[j * self.slots + k]
    }

    fn t4_at(&self, l: usize, j: usize) -> Option<&BigRational> {
        if l == j {
            return None;
        }
        let (l, j) = (l.min(j), l.max(j));
        Some(&self.t4[l * self.slots + j])
    }

    fn t22_at(&self, l: usize, j: usize, k: usize) -> &BigRational {
        let (j, k) = (j.min(k), j.max(k));
        &self.t22[(l * self.slots + j) * self.slots + k]
    }
}

fn accumulate_tables<T: Accum>(values: &[T], slots: usize, weights: &[BigRational]) -> RawTables {
    let m = slots;
    let nb = m + 1;
    let mut mean_b = vec![T::zero_value(); nb];
    let mut second_b = vec![T::zero_value(); nb];
    let mut e4_b = vec![T::zero_value(); m * nb];
    let mut s2_b = vec![T::zero_value(); m * m * nb];
    let mut t4_b = vec![T::zero_value(); m * m * nb];
    let mut t22_b = vec![T::zero_value(); m * m * m * nb];

    let mut delta = vec![T::zero_value(); m];
    let mut dd = vec![T::zero_value(); m];
    for mask in 0u64..1 << m {
        let pc = mask.count_ones() as usize;
        let v = &values[mask as usize];
        mean_b[pc].add_assign(v.clone());
        second_b[pc].add_assign(T::mul(v, v));

        for k in 0..m {
            let on = &values[(mask | 1 << k) as usize];
            let off = &values[(mask & !(1 << k)) as usize];
            delta[k] = T::sub(on, off);
        }
        for k in 0..m {
            let d2 = T::mul(&delta[k], &delta[k]);
            e4_b[k * nb + pc].add_assign(T::mul(&d2, &d2));
        }
        for j in 0..m {
            let dj2 = T::mul(&delta[j], &delta[j]);
            for k in j..m {
                let dk2 = T::mul(&delta[k], &delta[k]);
                s2_b[(j * m + k) * nb + pc].add_assign(T::mul(&dj2, &dk2));
            }
        }

        for l in 0..m {
            let with_l = mask | 1 << l;
            let sans_l = mask & !(1 << l);
            for (j, slot) in dd.iter_mut().enumerate() {
                if j == l {
                    *slot = T::zero_value();
                    continue;
                }
                let pp = &values[(with_l | 1 << j) as usize];
                let pm = &values[(with_l & !(1 << j)) as usize];
                let mp = &values[(sans_l | 1 << j) as usize];
                let mm = &values[(sans_l & !(1 << j)) as usize];
                *slot = T::sub(&T::sub(pp, pm), &T::sub(mp, mm));
            }
            for j in l + 1..m {
                let d2 = T::mul(&dd[j], &dd[j]);
                t4_b[(l * m + j) * nb + pc].add_assign(T::mul(&d2, &d2));
            }
            for j in 0..m {
                if j == l {
                    continue;
                }
                let dj2 = T::mul(&dd[j], &dd[j]);
                for k in j..m {
                    if k == l {
                        continue;
                    }
                    let dk2 = T::mul(&dd[k], &dd[k]);
                    t22_b[((l * m + j) * m + k) * nb + pc].add_assign(T::mul(&dj2, &dk2));
                }
            }
        }
    }

    let weigh = |buckets: &[T]| -> BigRational {
        buckets
            .iter()
            .zip(weights)
            .map(|(b, w)| b.to_rational() * w)
            .sum()
    };
    let weigh_all = |flat: &[T], count: usize| -> Vec<BigRational> {
        (0..count).map(|i| weigh(&flat[i * nb..(i + 1) * nb])).collect()
    };

    let mean = weigh(&mean_b);
    let second = weigh(&second_b);
    let variance = &second - &mean * &mean;
    RawTables {
        mean,
        variance,
        e4: weigh_all(&e4_b, m),
        s2: weigh_all(&s2_b, m * m),
        t4: weigh_all(&t4_b, m * m),
        t22: weigh_all(&t22_b, m * m * m),
        slots: m,
    }
}

/// The five bound terms for the internally standardized functional, under
/// the default arc-slot cap.
pub fn b_terms(f: &dyn GraphFunctional, n: u32, p: &BigRational) -> Result<BTerms> {
    Ok(b_terms_detailed(f, n, p, DEFAULT_BTERM_ARC_CAP)?.terms)
}

/// As [`b_terms`], also exposing the exact rational sums, with an explicit
/// arc-slot cap.
pub fn b_terms_detailed(
    f: &dyn GraphFunctional,
    n: u32,
    p: &BigRational,
    cap: u64,
) -> Result<BTermsDetailed> {
    if p.is_negative() || p >= &BigRational::one() || p.is_zero() {
        return Err(Error::domain(format!("p={p} outside (0,1)")));
    }
    let slots = arc_slots(n);
    let table = ValueTable::build(f, n, cap)?;
    let weights = arc_count_weights(slots, p);
    let m = slots as usize;

    let tables = match table.as_integers() {
        Some(ints) => {
            let ints: Vec<i128> = ints.into_iter().map(|v| v as i128).collect();
            accumulate_tables(&ints, m, &weights)
        }
        None => {
            let exact: Vec<BigRational> = table
                .values
                .iter()
                .map(|&v| {
                    BigRational::from_float(v).ok_or_else(|| {
                        Error::domain(format!("functional returned non-finite value {v}"))
                    })
                })
                .collect::<Result<_>>()?;
            accumulate_tables(&exact, m, &weights)
        }
    };

    if tables.variance.is_zero() {
        return Err(Error::domain(
            "cannot standardize a zero-variance functional",
        ));
    }

    let pq = p * &(BigRational::one() - p);
    let sigma4 = &tables.variance * &tables.variance;

    // Exact sums. Gradients scale as D_k = sqrt(pq) d_k and
    // D_l D_j = pq dd_{lj}; standardization divides each gradient by sigma.
    let sum_e4: BigRational = tables.e4.iter().sum();
    let b3_exact = &pq * &sum_e4 / &sigma4;

    let mut sum_t22: BigRational = Zero::zero();
    let mut sum_t4: BigRational = Zero::zero();
    for l in 0..m {
        for j in 0..m {
            for k in 0..m {
                sum_t22 += tables.t22_at(l, j, k);
            }
            if let Some(t) = tables.t4_at(l, j) {
                sum_t4 += t;
            }
        }
    }
    let pq3 = &pq * &pq * &pq;
    let b2_exact = &pq3 * &sum_t22 / &sigma4;
    let b5_exact = &pq * &pq * &sum_t4 / &sigma4;

    // Square-root assemblies in floating point.
    let pq_f = to_f64(&pq);
    let var_f = to_f64(&tables.variance);
    // sqrt(pq^2 X / sigma^4) = pq sqrt(X) / sigma^2, and similarly with
    // pq^4 for the second-order factors.
    let first_scale = pq_f / var_f;
    let second_scale = pq_f * pq_f / var_f;

    let sqrt_of = |r: &BigRational| to_f64(r).max(0.0).sqrt();
    let mut b1 = 0.0f64;
    for j in 0..m {
        for k in 0..m {
            let first = first_scale * sqrt_of(tables.s2_at(j, k));
            if first == 0.0 {
                continue;
            }
            let mut inner = 0.0;
            for l in 0..m {
                inner += second_scale * sqrt_of(tables.t22_at(l, j, k));
            }
            b1 += first * inner;
        }
    }
    let mut b4 = 0.0f64;
    for k in 0..m {
        let first = first_scale * sqrt_of(&tables.e4[k]);
        if first == 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for l in 0..m {
            if let Some(t) = tables.t4_at(l, k) {
                inner += second_scale * sqrt_of(t);
            }
        }
        b4 += first * inner / pq_f;
    }

    Ok(BTermsDetailed {
        terms: BTerms {
            b1,
            b2: to_f64(&b2_exact),
            b3: to_f64(&b3_exact),
            b4,
            b5: to_f64(&b5_exact),
        },
        b2_exact,
        b3_exact,
        b5_exact,
        mean: tables.mean,
        variance: tables.variance,
    })
}
