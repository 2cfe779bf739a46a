//! Triangle transforms `w_n = sum_k T(n,k) z_k` and the sign-pattern
//! machinery used to show the Bessel transform preserves log-convexity.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{factorial, Int, ParseError, Rat, Scalar};
use crate::poly::Poly;
use crate::triangle::Triangle;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("sequence has {available} values, {needed} needed")]
    TooShort { needed: usize, available: usize },
    #[error("triangle depth {depth} is below the required {needed}")]
    TriangleTooShallow { needed: usize, depth: usize },
    #[error("entry z_{index} = {value} is not positive")]
    NonPositive { index: usize, value: Rat },
    #[error("input sequence is not log-convex: {0}")]
    InputNotLogConvex(Box<Verdict>),
    #[error("no sign pivot for beta_k({n},{i}): beta_{k} > 0 after a negative term")]
    NoPivot { n: usize, i: usize, k: usize },
    #[error("k={k} outside i-n-1 < k <= floor(i/2) for n={n}, i={i}")]
    KOutOfRegion { n: usize, i: usize, k: usize },
    #[error("need n >= 1 and 0 <= i <= 2n, got n={n}, i={i}")]
    IndexOutOfRange { n: usize, i: usize },
    #[error("unknown sequence {0:?} (known: ones, factorial, catalan, bellnumbers, pow2)")]
    UnknownSequence(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Exact rational sequence `z_0, z_1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumSeq {
    pub values: Vec<Rat>,
}

impl NumSeq {
    pub fn new(values: Vec<Rat>) -> Self {
        NumSeq { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        NumSeq::new(values.iter().map(|&v| Rat::from(Int::from(v))).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub const BUILTINS: [&'static str; 5] = ["ones", "factorial", "catalan", "bellnumbers", "pow2"];

    /// First `len` terms of a named sequence.
    pub fn builtin(name: &str, len: usize) -> Result<Self, TransformError> {
        let ints: Vec<Int> = match name {
            "ones" => vec![Int::one(); len],
            "factorial" => (0..len as u64).map(factorial).collect(),
            "catalan" => catalan_numbers(len),
            "bellnumbers" => bell_numbers(len),
            "pow2" => (0..len as u32).map(|k| Int::from(2).pow(k)).collect(),
            other => return Err(TransformError::UnknownSequence(other.to_string())),
        };
        Ok(NumSeq::new(ints.into_iter().map(Rat::from).collect()))
    }
}

fn catalan_numbers(len: usize) -> Vec<Int> {
    let mut out: Vec<Int> = Vec::with_capacity(len);
    let mut c = Int::one();
    for n in 0..len as u64 {
        out.push(c.clone());
        c = c * (2 * (2 * n + 1)) / (n + 2);
    }
    out
}

// Bell numbers from the Aitken array: each row starts with the last entry
// of the previous one.
fn bell_numbers(len: usize) -> Vec<Int> {
    let mut out = Vec::with_capacity(len);
    let mut row = vec![Int::one()];
    for _ in 0..len {
        out.push(row[0].clone());
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("nonempty").clone());
        for v in &row {
            let s = next.last().expect("nonempty") + v;
            next.push(s);
        }
        row = next;
    }
    out
}

/// `w_n = sum_{k<=n} T(n,k) z_k` for `0 <= n <= n_max`.
pub fn apply_transform<T: Scalar>(t: &Triangle<T>, z: &NumSeq, n_max: usize) -> Result<NumSeq, TransformError> {
    if z.len() < n_max + 1 {
        return Err(TransformError::TooShort { needed: n_max + 1, available: z.len() });
    }
    if t.depth() < n_max {
        return Err(TransformError::TriangleTooShallow { needed: n_max, depth: t.depth() });
    }
    let values = t.rows()[..=n_max]
        .iter()
        .map(|row| row.iter().zip(&z.values).map(|(c, v)| c.to_rat() * v).sum())
        .collect();
    Ok(NumSeq::new(values))
}

/// `z_m^2 <= z_{m+1} z_{m-1}` for `1 <= m <= n_max - 1`, after requiring
/// `z_0..=z_{n_max}` to be positive.
pub fn check_log_convex_seq(z: &NumSeq, n_max: usize) -> Result<Verdict, TransformError> {
    const CHECK: &str = "log-convex";
    if z.len() < n_max + 1 {
        return Err(TransformError::TooShort { needed: n_max + 1, available: z.len() });
    }
    if let Some((index, value)) = z.values[..=n_max].iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(TransformError::NonPositive { index, value: value.clone() });
    }
    let range = format!("1<=m<={}", n_max.saturating_sub(1));
    for m in 1..n_max {
        let gap = &z.values[m + 1] * &z.values[m - 1] - &z.values[m] * &z.values[m];
        if gap.is_negative() {
            return Ok(Verdict::fail(CHECK, range, Witness::new([("m", m as i64)], "gap", gap)));
        }
    }
    Ok(Verdict::pass(CHECK, range))
}

/// Log-convexity of `z` up to `n_max` carries over to the transformed
/// sequence. Input failures are errors; output failures are a failing
/// verdict.
pub fn check_preservation<T: Scalar>(t: &Triangle<T>, z: &NumSeq, n_max: usize) -> Result<Verdict, TransformError> {
    const CHECK: &str = "preservation";
    let input = check_log_convex_seq(z, n_max)?;
    if !input.passed {
        return Err(TransformError::InputNotLogConvex(Box::new(input)));
    }
    let w = apply_transform(t, z, n_max)?;
    match check_log_convex_seq(&w, n_max) {
        Ok(v) => Ok(Verdict { check: CHECK.to_string(), ..v }),
        Err(TransformError::NonPositive { index, value }) => Ok(Verdict::fail(
            CHECK,
            format!("0<=n<={n_max}"),
            Witness::new([("n", index as i64)], "w", value),
        )),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// Sign patterns

/// Values indexed by `k`, with the split point of their sign pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern {
    pub values: Vec<Rat>,
    /// Largest `k'` with `values[0..=k']` all `>= 0` (`-1` if `values[0] < 0`),
    /// present only when every later value is `<= 0`.
    pub pivot: Option<i64>,
}

impl SignPattern {
    pub fn new(values: Vec<Rat>) -> Self {
        let pivot = find_pivot(&values);
        SignPattern { values, pivot }
    }

    /// First `k` breaking the "nonnegative, then nonpositive" shape.
    pub fn first_violation(&self) -> Option<usize> {
        let start = self.values.iter().position(|v| v.is_negative())?;
        (start..self.values.len()).find(|&k| self.values[k].is_positive())
    }
}

fn find_pivot(values: &[Rat]) -> Option<i64> {
    let split = values.iter().position(|v| v.is_negative()).unwrap_or(values.len());
    values[split..].iter().all(|v| !v.is_positive()).then_some(split as i64 - 1)
}

fn check_ni(n: usize, i: usize) -> Result<(), TransformError> {
    if n == 0 || i > 2 * n {
        return Err(TransformError::IndexOutOfRange { n, i });
    }
    Ok(())
}

/// `alpha_k(n,i)` for `0 <= k <= floor(i/2)` from the entries of `t`:
/// `T(n-1,k) T(n+1,i-k) + T(n+1,k) T(n-1,i-k) - 2 T(n,k) T(n,i-k)` for
/// `k < i/2`, and `T(n-1,k) T(n+1,k) - T(n,k)^2` at the center of even `i`.
pub fn compute_alpha<T: Scalar>(t: &Triangle<T>, n: usize, i: usize) -> Result<SignPattern, TransformError> {
    check_ni(n, i)?;
    if t.depth() < n + 1 {
        return Err(TransformError::TriangleTooShallow { needed: n + 1, depth: t.depth() });
    }
    let (n, i) = (n as i64, i as i64);
    let at = |a: i64, b: i64| t.get(a, b).to_rat();
    let values = (0..=i / 2)
        .map(|k| {
            if 2 * k == i {
                at(n - 1, k) * at(n + 1, k) - at(n, k) * at(n, k)
            } else {
                at(n - 1, k) * at(n + 1, i - k) + at(n + 1, k) * at(n - 1, i - k)
                    - Rat::from(Int::from(2)) * at(n, k) * at(n, i - k)
            }
        })
        .collect();
    Ok(SignPattern::new(values))
}

/// Factorial table for Bessel entries `T(a,b) = (a+b)! / ((a-b)! b!)`.
struct BesselEntries {
    fact: Vec<Int>,
}

impl BesselEntries {
    fn up_to(n: usize) -> Self {
        let mut fact = vec![Int::one()];
        for j in 1..=(2 * n + 2) as u64 {
            let next = fact.last().expect("nonempty") * j;
            fact.push(next);
        }
        BesselEntries { fact }
    }

    fn get(&self, a: i64, b: i64) -> Int {
        if a < 0 || b < 0 || b > a {
            return Int::zero();
        }
        let (a, b) = (a as usize, b as usize);
        &self.fact[a + b] / (&self.fact[a - b] * &self.fact[b])
    }
}

/// `(n+k)! / ((n-k)! k!)`, zero outside `0 <= k <= n`.
pub fn bessel_entry(n: i64, k: i64) -> Int {
    BesselEntries::up_to(n.max(0) as usize).get(n, k)
}

fn beta_values(table: &BesselEntries, n: i64, i: i64) -> Vec<Int> {
    (0..=i / 2)
        .map(|k| {
            table.get(n + 1, k) * table.get(n - 1, i - k) + table.get(n + 1, i - k) * table.get(n - 1, k)
                - Int::from(2) * table.get(n, i - k) * table.get(n, k)
        })
        .collect()
}

/// `beta_k(n,i)` over the Bessel closed form for `0 <= k <= floor(i/2)`.
/// Fails with [`TransformError::NoPivot`] if the values are not
/// nonnegative-then-nonpositive.
pub fn compute_beta(n: usize, i: usize) -> Result<SignPattern, TransformError> {
    check_ni(n, i)?;
    let table = BesselEntries::up_to(n + 1);
    let values = beta_values(&table, n as i64, i as i64).into_iter().map(Rat::from).collect();
    let pattern = SignPattern::new(values);
    match pattern.first_violation() {
        Some(k) => Err(TransformError::NoPivot { n, i, k }),
        None => Ok(pattern),
    }
}

/// Runs [`compute_beta`] for every `1 <= n <= n_max`, `0 <= i <= 2n`.
pub fn check_beta_sweep(n_max: usize) -> Verdict {
    const CHECK: &str = "beta-pattern";
    let range = format!("1<=n<={n_max}, 0<=i<=2n");
    for n in 1..=n_max {
        for i in 0..=2 * n {
            if let Err(TransformError::NoPivot { k, .. }) = compute_beta(n, i) {
                let value = compute_beta_values(n, i)[k].clone();
                let w = Witness::new([("n", n as i64), ("i", i as i64), ("k", k as i64)], "beta", value.into());
                return Verdict::fail(CHECK, range, w);
            }
        }
    }
    Verdict::pass(CHECK, range)
}

/// Raw `beta_k(n,i)` values without pivot validation.
pub fn compute_beta_values(n: usize, i: usize) -> Vec<Int> {
    beta_values(&BesselEntries::up_to(n + 1), n as i64, i as i64)
}

// ---------------------------------------------------------------------------
// The quartic f(x) = f1 + f2 - 2 f3

/// `f1, f2, f3` as polynomials in `x` for fixed `(n, i)`.
pub fn f_parts(n: i64, i: i64) -> [Poly<Int>; 3] {
    let up = |c: i64| Poly::linear(Int::from(c), Int::one());
    let down = |c: i64| Poly::linear(Int::from(c), Int::from(-1));
    let prod = |fs: [Poly<Int>; 4]| fs.iter().fold(Poly::one(), |acc, f| &acc * f);
    [
        prod([up(n + 1), up(n - i), up(n), up(n - i + 1)]),
        prod([down(n), down(n + i + 1), down(n + 1), down(n + i)]),
        prod([down(n + 1), down(n + i), up(n), up(n - i + 1)]),
    ]
}

pub fn f_poly(n: i64, i: i64) -> Poly<Int> {
    let [f1, f2, f3] = f_parts(n, i);
    &(&f1 + &f2) - &f3.scale(&Int::from(2))
}

/// `g = 2 (2 + 8n^2 - i + 8n)`, constant in `x`.
pub fn g_value(n: i64, i: i64) -> Int {
    Int::from(2 * (2 + 8 * n * n - i + 8 * n))
}

/// `f'(x) - (2x - i) g`, which vanishes identically.
pub fn f_derivative_residual(n: i64, i: i64) -> Poly<Int> {
    let f = f_poly(n, i);
    let slope = Poly::linear(Int::from(-i), Int::from(2));
    &f.derivative() - &slope.scale(&g_value(n, i))
}

fn eval_int(p: &Poly<Int>, x: i64) -> Int {
    p.coeffs().iter().rev().fold(Int::zero(), |acc, c| acc * x + c)
}

/// For `n >= 1`, `0 <= i <= 2n`, `i-n-1 < k <= floor(i/2)`, checks:
/// `f3(k) > 0`; `beta_k f3(k) = f(k) T(n,i-k) T(n,k)`; `f'(x) = (2x - i) g`
/// as polynomials; `g >= 2(2 + 8n^2 + 6n) > 0`; `f(k) >= f(k+1)` when
/// `k+1 <= floor(i/2)`; and `beta_k` has the sign of `f(k)` whenever
/// `T(n,i-k) T(n,k) > 0`.
pub fn check_f_identity(n: usize, i: usize, k: usize) -> Result<Verdict, TransformError> {
    const CHECK: &str = "f-identity";
    check_ni(n, i)?;
    let (ni, ii, ki) = (n as i64, i as i64, k as i64);
    if ki < ii - ni || ki > ii / 2 {
        return Err(TransformError::KOutOfRegion { n, i, k });
    }
    let range = format!("n={n}, i={i}, k={k}");
    let w = |label: &str, value: Rat| Witness::new([("n", ni), ("i", ii), ("k", ki)], label, value);

    let [_, _, f3] = f_parts(ni, ii);
    let f = f_poly(ni, ii);
    let f3_k = eval_int(&f3, ki);
    if !f3_k.is_positive() {
        return Ok(Verdict::fail(CHECK, range, w("f3", f3_k.into())));
    }

    let table = BesselEntries::up_to(n + 1);
    let beta = &beta_values(&table, ni, ii)[k];
    let f_k = eval_int(&f, ki);
    let tt = table.get(ni, ii - ki) * table.get(ni, ki);
    let bridge = beta * &f3_k - &f_k * &tt;
    if !bridge.is_zero() {
        return Ok(Verdict::fail(CHECK, range, w("bridge_residual", bridge.into())));
    }
    if tt.is_positive() && beta.sign() != f_k.sign() {
        return Ok(Verdict::fail(CHECK, range, w("beta", beta.clone().into())));
    }

    let residual = f_derivative_residual(ni, ii);
    if let Some(c) = residual.coeffs().iter().find(|c| !c.is_zero()) {
        return Ok(Verdict::fail(CHECK, range, w("derivative_residual", c.clone().into())));
    }
    let g = g_value(ni, ii);
    let g_floor = Int::from(2 * (2 + 8 * ni * ni + 6 * ni));
    if g < g_floor || !g.is_positive() {
        return Ok(Verdict::fail(CHECK, range, w("g", g.into())));
    }

    if ki < ii / 2 {
        let f_next = eval_int(&f, ki + 1);
        if f_k.cmp(&f_next) == Ordering::Less {
            return Ok(Verdict::fail(CHECK, range, w("f_increase", (f_next - f_k).into())));
        }
    }
    Ok(Verdict::pass(CHECK, range))
}

/// [`check_f_identity`] over every valid `(n, i, k)` with `n <= n_max`.
pub fn check_f_sweep(n_max: usize) -> Verdict {
    let range = format!("1<=n<={n_max}, 0<=i<=2n, i-n-1<k<=i/2");
    for n in 1..=n_max {
        for i in 0..=2 * n {
            let lo = (i as i64 - n as i64).max(0) as usize;
            for k in lo..=i / 2 {
                let v = check_f_identity(n, i, k).expect("k in region");
                if !v.passed {
                    return Verdict { range, ..v };
                }
            }
        }
    }
    Verdict::pass("f-identity", range)
}
