//! Exact rational linear-programming feasibility via a phase-1 simplex with
//! Bland's smallest-index anti-cycling rule, so termination is
//! unconditional.
//!
//! Input constraints have integer coefficients over free (unsigned-in-sign)
//! variables. Internally each free variable is split into a difference of
//! nonnegatives, rows are normalized to nonnegative right-hand sides, and
//! the phase-1 objective (the sum of artificial variables) is driven to
//! zero when and only when the system is feasible.
//!
//! Every tableau entry of a simplex method is a quotient of basis minors of
//! the original constraint matrix (Cramer's rule), so for small systems the
//! arithmetic provably fits in `Ratio<i128>`; larger systems fall back to
//! `BigRational`. Both paths are exact.

use num::rational::Ratio;
use num::{BigInt, BigRational, Signed};

/// Constraint relation. `Ge` rows are expressed as `Le` by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
}

/// One linear constraint `coeffs . x  (rel)  rhs` over free variables.
#[derive(Clone, Debug)]
pub struct IntConstraint {
    pub coeffs: Vec<i64>,
    pub rel: Rel,
    pub rhs: i64,
}

/// Decides feasibility of `{x : constraints}` over the reals, exactly.
pub fn feasible(num_vars: usize, constraints: &[IntConstraint]) -> bool {
    if constraints.is_empty() {
        return true;
    }
    if i128_is_safe(num_vars, constraints) {
        phase1_feasible::<Ratio<i128>>(num_vars, constraints)
    } else {
        phase1_feasible::<BigRational>(num_vars, constraints)
    }
}

/// Conservative check that all tableau arithmetic fits in `Ratio<i128>`.
///
/// Basis minors involve at most `s = min(rows, num_vars)` structural
/// columns (the remaining basis columns are units, and the two split copies
/// of one free variable are negatives of each other, so at most one of the
/// pair is ever basic). Hadamard bounds such a minor by `(a*sqrt(s))^s`
/// with `a` the largest absolute coefficient. Reduced-cost entries add a
/// factor `rows + 1`. Cross-multiplication squares the magnitude, so we
/// require twice the log bound to stay well under `i128::MAX ~ 1.7e38`.
fn i128_is_safe(num_vars: usize, constraints: &[IntConstraint]) -> bool {
    let rows = constraints.len();
    let mut max_abs: f64 = 1.0;
    for c in constraints {
        for &v in &c.coeffs {
            max_abs = max_abs.max(v.unsigned_abs() as f64);
        }
        max_abs = max_abs.max(c.rhs.unsigned_abs() as f64);
    }
    let s = rows.min(num_vars) as f64;
    let log_minor = s * (max_abs.log10() + 0.5 * s.max(1.0).log10());
    log_minor + ((rows + 2) as f64).log10() <= 17.0
}

trait Scalar: Clone + PartialOrd + Signed {
    fn from_i64(v: i64) -> Self;
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from(BigInt::from(v))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RowKind {
    Eq,
    Le,
    Ge,
}

// Index loops mirror the usual tableau notation.
#[allow(clippy::needless_range_loop)]
fn phase1_feasible<T: Scalar>(num_vars: usize, constraints: &[IntConstraint]) -> bool {
    let rows = constraints.len();

    // Normalize to b >= 0, remembering each row's relation.
    let mut kinds = Vec::with_capacity(rows);
    let mut coeffs: Vec<Vec<i64>> = Vec::with_capacity(rows);
    let mut rhs: Vec<i64> = Vec::with_capacity(rows);
    for c in constraints {
        debug_assert_eq!(c.coeffs.len(), num_vars);
        if c.rhs < 0 {
            kinds.push(match c.rel {
                Rel::Eq => RowKind::Eq,
                Rel::Le => RowKind::Ge,
            });
            coeffs.push(c.coeffs.iter().map(|&v| -v).collect());
            rhs.push(-c.rhs);
        } else {
            kinds.push(match c.rel {
                Rel::Eq => RowKind::Eq,
                Rel::Le => RowKind::Le,
            });
            coeffs.push(c.coeffs.clone());
            rhs.push(c.rhs);
        }
    }

    // Column layout: 2*num_vars split variables, then one slack/surplus per
    // inequality, then one artificial per Eq/Ge row. rhs is kept separately.
    let n_split = 2 * num_vars;
    let n_ineq = kinds.iter().filter(|k| **k != RowKind::Eq).count();
    let n_art = kinds.iter().filter(|k| **k != RowKind::Le).count();
    let n_cols = n_split + n_ineq + n_art;

    let mut tab: Vec<Vec<T>> = vec![vec![T::zero(); n_cols]; rows];
    let mut b: Vec<T> = rhs.iter().map(|&v| T::from_i64(v)).collect();
    let mut basis: Vec<usize> = vec![usize::MAX; rows];
    let mut is_artificial = vec![false; n_cols];

    let mut next_ineq = n_split;
    let mut next_art = n_split + n_ineq;
    for i in 0..rows {
        for (j, &v) in coeffs[i].iter().enumerate() {
            if v != 0 {
                tab[i][2 * j] = T::from_i64(v);
                tab[i][2 * j + 1] = T::from_i64(-v);
            }
        }
        match kinds[i] {
            RowKind::Le => {
                tab[i][next_ineq] = T::one();
                basis[i] = next_ineq;
                next_ineq += 1;
            }
            RowKind::Ge => {
                tab[i][next_ineq] = -T::one();
                next_ineq += 1;
                tab[i][next_art] = T::one();
                is_artificial[next_art] = true;
                basis[i] = next_art;
                next_art += 1;
            }
            RowKind::Eq => {
                tab[i][next_art] = T::one();
                is_artificial[next_art] = true;
                basis[i] = next_art;
                next_art += 1;
            }
        }
    }

    // Reduced costs for min(sum of artificials): r_j = c_j - sum over rows
    // with an artificial basic of tab[i][j]; objective value = sum of their
    // rhs. Entering columns need r_j < 0.
    let mut reduced: Vec<T> = vec![T::zero(); n_cols];
    let mut objective = T::zero();
    for i in 0..rows {
        if is_artificial[basis[i]] {
            for j in 0..n_cols {
                let delta = tab[i][j].clone();
                reduced[j] = reduced[j].clone() - delta;
            }
            objective = objective + b[i].clone();
        }
    }
    for (j, flag) in is_artificial.iter().enumerate() {
        if *flag {
            reduced[j] = reduced[j].clone() + T::one();
        }
    }

    // Departed artificials never re-enter; this preserves the phase-1
    // optimum's zero/nonzero status and can only shrink the column set.
    let mut banned = vec![false; n_cols];

    loop {
        // Bland: entering column = smallest index with negative reduced cost.
        let entering = (0..n_cols)
            .find(|&j| !banned[j] && basis.iter().all(|&bv| bv != j) && reduced[j] < T::zero());
        let Some(s) = entering else {
            return objective.is_zero();
        };

        // Ratio test; ties broken by smallest basic-variable index (Bland).
        let mut pivot_row: Option<usize> = None;
        let mut best: Option<T> = None;
        for i in 0..rows {
            if tab[i][s] > T::zero() {
                let ratio = b[i].clone() / tab[i][s].clone();
                let better = match &best {
                    None => true,
                    Some(cur) => {
                        ratio < *cur
                            || (ratio == *cur
                                && basis[i] < basis[pivot_row.expect("set with best")])
                    }
                };
                if better {
                    best = Some(ratio);
                    pivot_row = Some(i);
                }
            }
        }
        let Some(r) = pivot_row else {
            // Unbounded improving ray in phase 1 cannot happen (objective is
            // bounded below by zero), but guard anyway.
            return objective.is_zero();
        };

        // Pivot on (r, s).
        let piv = tab[r][s].clone();
        for j in 0..n_cols {
            tab[r][j] = tab[r][j].clone() / piv.clone();
        }
        b[r] = b[r].clone() / piv.clone();
        for i in 0..rows {
            if i != r && !tab[i][s].is_zero() {
                let factor = tab[i][s].clone();
                for j in 0..n_cols {
                    tab[i][j] = tab[i][j].clone() - factor.clone() * tab[r][j].clone();
                }
                b[i] = b[i].clone() - factor * b[r].clone();
            }
        }
        if !reduced[s].is_zero() {
            let factor = reduced[s].clone();
            for j in 0..n_cols {
                reduced[j] = reduced[j].clone() - factor.clone() * tab[r][j].clone();
            }
            // Minimization step: z moves by r_s * (b_r / pivot), which is
            // negative for an entering column.
            objective = objective + factor * b[r].clone();
        }

        let leaving = basis[r];
        if is_artificial[leaving] {
            banned[leaving] = true;
        }
        basis[r] = s;
    }
}
