//! Exhaustive exact checks for log-concavity of rows, two-row dominance,
//! (strong) q-log-convexity of row polynomials, and the polynomial
//! identities behind strong q-log-convexity.
//!
//! Each sweep visits its index range in lexicographic order and stops at
//! the first failure, so the reported witness is the smallest failing
//! index tuple. The single-inequality evaluators (`*_gap`, `*_difference`,
//! `*_residual`) are public so a witness can be re-checked in isolation.

use num_traits::Signed;
use thiserror::Error;

use crate::exact::{Int, Rat, Scalar};
use crate::poly::Poly;
use crate::recurrence::{liu_wang_failure, RecurrenceSpec};
use crate::triangle::Triangle;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("{check} up to {bound} needs {needed} rows, only {available} available")]
    TooShort { check: &'static str, bound: usize, needed: usize, available: usize },
    #[error("{check} needs the recurrence coefficients; triangle was supplied externally")]
    ExternalTriangle { check: &'static str },
    #[error("{check}: index i={i} outside 0..={max}")]
    IndexOutOfRange { check: &'static str, i: usize, max: usize },
}

fn require(check: &'static str, bound: usize, needed: usize, available: usize) -> Result<(), VerifyError> {
    if available < needed {
        return Err(VerifyError::TooShort { check, bound, needed, available });
    }
    Ok(())
}

/// Recurrence behind `t`, or an error naming the check that needed it.
pub fn spec_of<'a, T: Scalar>(t: &'a Triangle<T>, check: &'static str) -> Result<&'a RecurrenceSpec, VerifyError> {
    t.spec().ok_or(VerifyError::ExternalTriangle { check })
}

fn coeff_witness<T: Scalar>(indices: Vec<(&str, i64)>, i: usize, c: &T) -> Witness {
    let mut w = Witness::new([("i", i as i64)], "coeff", c.to_rat());
    let mut idx: Vec<(String, i64)> = indices.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    idx.append(&mut w.indices);
    w.indices = idx;
    w
}

fn lift<T: Scalar>(v: &Int) -> T {
    T::from(v.clone())
}

// ---------------------------------------------------------------------------
// Triangle entries

/// `T(n,k)^2 - T(n,k-1) T(n,k+1)`.
pub fn row_log_concavity_gap<T: Scalar>(t: &Triangle<T>, n: i64, k: i64) -> T {
    let mid = t.get(n, k);
    let mut gap = mid.clone() * &mid;
    gap -= &(t.get(n, k - 1) * &t.get(n, k + 1));
    gap
}

/// Every row `n <= n_max` is log-concave: the gap is nonnegative for
/// `1 <= k <= n - 1`.
pub fn check_row_log_concave<T: Scalar>(t: &Triangle<T>, n_max: usize) -> Result<Verdict, VerifyError> {
    const CHECK: &str = "row-log-concave";
    require(CHECK, n_max, n_max + 1, t.rows().len())?;
    let range = format!("1<=k<=n-1, n<={n_max}");
    for n in 0..=n_max as i64 {
        for k in 1..n {
            let gap = row_log_concavity_gap(t, n, k);
            if gap.is_negative() {
                let w = Witness::new([("n", n), ("k", k)], "gap", gap.to_rat());
                return Ok(Verdict::fail(CHECK, range, w));
            }
        }
    }
    Ok(Verdict::pass(CHECK, range))
}

/// `T(m,l) T(m',l') - T(m,l') T(m',l)`.
pub fn dominance_gap<T: Scalar>(t: &Triangle<T>, m: i64, mp: i64, l: i64, lp: i64) -> T {
    let mut gap = t.get(m, l) * &t.get(mp, lp);
    gap -= &(t.get(m, lp) * &t.get(mp, l));
    gap
}

/// Two-row dominance for all `0 <= l <= l' <= m <= m' <= n_max`.
pub fn check_dominance<T: Scalar>(t: &Triangle<T>, n_max: usize) -> Result<Verdict, VerifyError> {
    const CHECK: &str = "dominance";
    require(CHECK, n_max, n_max + 1, t.rows().len())?;
    let range = format!("0<=l<=l'<=m<=m'<={n_max}");
    let warning = match t.spec() {
        Some(spec) if spec.has_nonnegative_k_slopes() => None,
        Some(_) => Some("a2 >= 0 and b2 >= 0 does not hold; dominance is not implied"),
        None => Some("external triangle; a2, b2 unknown"),
    };
    let n_max = n_max as i64;
    let mut verdict = Verdict::pass(CHECK, range.clone());
    'outer: for m in 0..=n_max {
        for mp in m..=n_max {
            for l in 0..=m {
                for lp in l..=m {
                    let gap = dominance_gap(t, m, mp, l, lp);
                    if gap.is_negative() {
                        let w = Witness::new([("m", m), ("m'", mp), ("l", l), ("l'", lp)], "gap", gap.to_rat());
                        verdict = Verdict::fail(CHECK, range, w);
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(match warning {
        Some(msg) => verdict.with_warning(msg),
        None => verdict,
    })
}

// ---------------------------------------------------------------------------
// Row polynomials

/// `P_{m+1} P_{m-1} - P_m^2`.
pub fn qlc_difference<T: Scalar>(polys: &[Poly<T>], m: usize) -> Poly<T> {
    &(&polys[m + 1] * &polys[m - 1]) - &(&polys[m] * &polys[m])
}

/// q-log-convexity for `1 <= m <= m_max`.
pub fn check_q_log_convex<T: Scalar>(polys: &[Poly<T>], m_max: usize) -> Result<Verdict, VerifyError> {
    const CHECK: &str = "qlc";
    require(CHECK, m_max, m_max + 2, polys.len())?;
    let range = format!("1<=m<={m_max}");
    for m in 1..=m_max {
        if let Some((i, c)) = qlc_difference(polys, m).first_negative() {
            return Ok(Verdict::fail(CHECK, range, coeff_witness(vec![("m", m as i64)], i, c)));
        }
    }
    Ok(Verdict::pass(CHECK, range))
}

/// `P_{m-1} P_{n+1} - P_m P_n`.
pub fn strong_difference<T: Scalar>(polys: &[Poly<T>], m: usize, n: usize) -> Poly<T> {
    &(&polys[m - 1] * &polys[n + 1]) - &(&polys[m] * &polys[n])
}

/// Strong q-log-convexity for `1 <= m <= n <= n_max`.
pub fn check_strong_q_log_convex<T: Scalar>(polys: &[Poly<T>], n_max: usize) -> Result<Verdict, VerifyError> {
    const CHECK: &str = "strong-qlc";
    require(CHECK, n_max, n_max + 2, polys.len())?;
    let range = format!("1<=m<=n<={n_max}");
    for m in 1..=n_max {
        for n in m..=n_max {
            if let Some((i, c)) = strong_difference(polys, m, n).first_negative() {
                let w = coeff_witness(vec![("m", m as i64), ("n", n as i64)], i, c);
                return Ok(Verdict::fail(CHECK, range, w));
            }
        }
    }
    Ok(Verdict::pass(CHECK, range))
}

/// `P'_n P_{m-1} - P_n P'_{m-1}`.
pub fn wronskian<T: Scalar>(polys: &[Poly<T>], m: usize, n: usize) -> Poly<T> {
    &(&polys[n].derivative() * &polys[m - 1]) - &(&polys[n] * &polys[m - 1].derivative())
}

/// Wronskian positivity for `1 <= m <= n <= n_max`.
pub fn check_wronskian<T: Scalar>(polys: &[Poly<T>], n_max: usize) -> Result<Verdict, VerifyError> {
    const CHECK: &str = "wronskian";
    require(CHECK, n_max, n_max + 1, polys.len())?;
    let range = format!("1<=m<=n<={n_max}");
    let derivs: Vec<Poly<T>> = polys[..=n_max].iter().map(Poly::derivative).collect();
    for m in 1..=n_max {
        for n in m..=n_max {
            let w = &(&derivs[n] * &polys[m - 1]) - &(&polys[n] * &derivs[m - 1]);
            if let Some((i, c)) = w.first_negative() {
                let w = coeff_witness(vec![("m", m as i64), ("n", n as i64)], i, c);
                return Ok(Verdict::fail(CHECK, range, w));
            }
        }
    }
    Ok(Verdict::pass(CHECK, range))
}

// ---------------------------------------------------------------------------
// Identities that need the recurrence coefficients

/// `D P_m - [(a1 m + a3 + (b1 m + b2 + b3) q) P_{m-1} + (a2 + b2 q) q P'_{m-1}]`
/// with every coefficient multiplied by the common denominator `D`.
pub fn derivative_identity_residual<T: Scalar>(spec: &RecurrenceSpec, polys: &[Poly<T>], m: usize) -> Poly<T> {
    let s = spec.scaled();
    let [a1, a2, a3] = &s.a;
    let [b1, b2, b3] = &s.b;
    let mi = Int::from(m);
    let lead = Poly::linear(lift::<T>(&(a1 * &mi + a3)), lift::<T>(&(b1 * &mi + b2 + b3)));
    let slope = Poly::linear(lift::<T>(a2), lift::<T>(b2)).shift(1);
    let prev = &polys[m - 1];
    let rhs = &(&lead * prev) + &(&slope * &prev.derivative());
    &polys[m].scale(&lift::<T>(&s.denom)) - &rhs
}

/// `P_m` equals its derivative-form expansion in `P_{m-1}` for `1 <= m <= m_max`.
pub fn check_derivative_identity<T: Scalar>(
    spec: &RecurrenceSpec,
    polys: &[Poly<T>],
    m_max: usize,
) -> Result<Verdict, VerifyError> {
    const CHECK: &str = "deriv-identity";
    require(CHECK, m_max, m_max + 1, polys.len())?;
    let range = format!("1<=m<={m_max}");
    let denom = spec.scaled().denom;
    for m in 1..=m_max {
        let residual = derivative_identity_residual(spec, polys, m);
        if let Some((i, c)) = residual.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()) {
            let w = Witness::new([("m", m as i64), ("i", i as i64)], "residual", c.to_rat() / Rat::from(denom.clone()));
            return Ok(Verdict::fail(CHECK, range, w));
        }
    }
    Ok(Verdict::pass(CHECK, range))
}

/// `D (P_{m-1} P_{n+1} - P_m P_n) - [(a1 + b1 q)(n-m+1) P_{m-1} P_n + q (a2 + b2 q) W(m,n)]`,
/// where `W(m,n)` is the Wronskian and every coefficient is scaled by `D`.
pub fn decomposition_residual<T: Scalar>(spec: &RecurrenceSpec, polys: &[Poly<T>], m: usize, n: usize) -> Poly<T> {
    let s = spec.scaled();
    let [a1, a2, _] = &s.a;
    let [b1, b2, _] = &s.b;
    let gap = lift::<T>(&Int::from(n + 1 - m));
    let lhs = strong_difference(polys, m, n).scale(&lift::<T>(&s.denom));
    let first = &Poly::linear(lift::<T>(a1), lift::<T>(b1)).scale(&gap) * &(&polys[m - 1] * &polys[n]);
    let second = &Poly::linear(lift::<T>(a2), lift::<T>(b2)).shift(1) * &wronskian(polys, m, n);
    &lhs - &(&first + &second)
}

/// The strong q-log-convexity difference splits into its two nonnegative
/// parts exactly, for `1 <= m <= n <= n_max`.
pub fn check_decomposition_identity<T: Scalar>(
    spec: &RecurrenceSpec,
    polys: &[Poly<T>],
    n_max: usize,
) -> Result<Verdict, VerifyError> {
    const CHECK: &str = "decomp-identity";
    require(CHECK, n_max, n_max + 2, polys.len())?;
    let range = format!("1<=m<=n<={n_max}");
    let denom = spec.scaled().denom;
    for m in 1..=n_max {
        for n in m..=n_max {
            let residual = decomposition_residual(spec, polys, m, n);
            if let Some((i, c)) = residual.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()) {
                let w = Witness::new(
                    [("m", m as i64), ("n", n as i64), ("i", i as i64)],
                    "residual",
                    c.to_rat() / Rat::from(denom.clone()),
                );
                return Ok(Verdict::fail(CHECK, range, w));
            }
        }
    }
    Ok(Verdict::pass(CHECK, range))
}

/// `c_k = (i - 2k + 1)(a1 n + a2 (i - k + 1) + a3)`.
pub fn c_coefficient(spec: &RecurrenceSpec, n: i64, i: i64, k: i64) -> Rat {
    Rat::from(Int::from(i - 2 * k + 1)) * spec.a_weight(n, i - k + 1)
}

/// `d_k = (i - 2k + 1)(b1 n + b2 (i - k + 1) + b3)`.
pub fn d_coefficient(spec: &RecurrenceSpec, n: i64, i: i64, k: i64) -> Rat {
    Rat::from(Int::from(i - 2 * k + 1)) * spec.b_weight(n, i - k + 1)
}

/// For `0 <= k <= floor(i/2)`:
///
/// ```text
/// c_k + c_{i-k+1} = a2 (i-2k+1)^2
/// d_k + d_{i-k}   = b2 (i-2k+1)(i-2k) + 2 (b1 n + b2 (k+1) + b3)
/// ```
///
/// and, when `a2, b2 >= 0`, both sums are nonnegative.
pub fn check_ck_dk_identities(spec: &RecurrenceSpec, n: usize, i: usize) -> Result<Verdict, VerifyError> {
    const CHECK: &str = "ckdk";
    if i > 2 * n {
        return Err(VerifyError::IndexOutOfRange { check: CHECK, i, max: 2 * n });
    }
    let range = format!("n={n}, i={i}, 0<=k<={}", i / 2);
    let (ni, ii) = (n as i64, i as i64);
    let a2 = &spec.a()[1];
    let b2 = &spec.b()[1];
    let nonneg = spec.has_nonnegative_k_slopes();
    let r = |v: i64| Rat::from(Int::from(v));
    for k in 0..=ii / 2 {
        let w = |label: &str, value: Rat| Witness::new([("n", ni), ("i", ii), ("k", k)], label, value);

        let c_sum = c_coefficient(spec, ni, ii, k) + c_coefficient(spec, ni, ii, ii - k + 1);
        let c_closed = a2 * r((ii - 2 * k + 1).pow(2));
        if c_sum != c_closed {
            return Ok(Verdict::fail(CHECK, range, w("c_residual", c_sum - c_closed)));
        }
        let d_sum = d_coefficient(spec, ni, ii, k) + d_coefficient(spec, ni, ii, ii - k);
        let d_closed = b2 * r((ii - 2 * k + 1) * (ii - 2 * k)) + r(2) * spec.b_weight(ni, k + 1);
        if d_sum != d_closed {
            return Ok(Verdict::fail(CHECK, range, w("d_residual", d_sum - d_closed)));
        }
        if nonneg && c_sum.is_negative() {
            return Ok(Verdict::fail(CHECK, range, w("c_sum", c_sum)));
        }
        if nonneg && d_sum.is_negative() {
            return Ok(Verdict::fail(CHECK, range, w("d_sum", d_sum)));
        }
    }
    Ok(Verdict::pass(CHECK, range))
}

/// [`check_ck_dk_identities`] for every `1 <= n <= depth`, `0 <= i <= 2n`.
pub fn check_ck_dk_sweep(spec: &RecurrenceSpec, depth: usize) -> Verdict {
    for n in 1..=depth {
        for i in 0..=2 * n {
            let v = check_ck_dk_identities(spec, n, i).expect("i <= 2n");
            if !v.passed {
                return Verdict { range: format!("1<=n<={depth}, 0<=i<=2n"), ..v };
            }
        }
    }
    Verdict::pass("ckdk", format!("1<=n<={depth}, 0<=i<=2n"))
}

/// The Liu-Wang linear form is nonnegative on `0 < k <= n <= depth`.
pub fn check_liu_wang_condition(spec: &RecurrenceSpec, depth: usize) -> Verdict {
    const CHECK: &str = "liu-wang-condition";
    let range = format!("0<k<=n<={depth}");
    let w = liu_wang_failure(spec, depth).map(|(n, k, v)| Witness::new([("n", n), ("k", k)], "form", v));
    Verdict::from_witness(CHECK, range, w)
}
