//! Linear-coefficient triangular recurrences and their hypotheses.
//!
//! A [`RecurrenceSpec`] describes
//!
//! ```text
//! T(n,k) = (a1*n + a2*k + a3) T(n-1,k) + (b1*n + b2*k + b3) T(n-1,k-1)
//! ```
//!
//! with `T(0,0) = seed` and `T(n,-1) = T(n,n+1) = 0`.

use std::fmt;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::exact::{common_denominator, Int, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("seed T(0,0) must be positive, got {0}")]
    NonPositiveSeed(Int),
    #[error("expected six coefficients a1,a2,a3,b1,b2,b3, got {0}")]
    WrongArity(usize),
    #[error(transparent)]
    Parse(#[from] crate::exact::ParseError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    a: [Rat; 3],
    b: [Rat; 3],
    seed: Int,
}

/// The recurrence multiplied through by the least common denominator of
/// its six coefficients, so every coefficient is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSpec {
    pub denom: Int,
    pub a: [Int; 3],
    pub b: [Int; 3],
}

impl RecurrenceSpec {
    pub fn new(a: [Rat; 3], b: [Rat; 3], seed: Int) -> Result<Self, SpecError> {
        if !seed.is_positive() {
            return Err(SpecError::NonPositiveSeed(seed));
        }
        Ok(RecurrenceSpec { a, b, seed })
    }

    /// Integer coefficients and seed 1.
    pub fn integral(a: [i64; 3], b: [i64; 3]) -> Self {
        let lift = |v: [i64; 3]| v.map(|x| Rat::from_integer(Int::from(x)));
        RecurrenceSpec { a: lift(a), b: lift(b), seed: Int::one() }
    }

    pub fn with_seed(self, seed: Int) -> Result<Self, SpecError> {
        Self::new(self.a, self.b, seed)
    }

    /// Parses `"a1,a2,a3,b1,b2,b3"`; each entry may be `p` or `p/q`.
    pub fn parse(coeffs: &str, seed: Int) -> Result<Self, SpecError> {
        let values = coeffs
            .split(',')
            .map(crate::exact::parse_rat)
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != 6 {
            return Err(SpecError::WrongArity(values.len()));
        }
        let a = [values[0].clone(), values[1].clone(), values[2].clone()];
        let b = [values[3].clone(), values[4].clone(), values[5].clone()];
        Self::new(a, b, seed)
    }

    pub fn a(&self) -> &[Rat; 3] {
        &self.a
    }

    pub fn b(&self) -> &[Rat; 3] {
        &self.b
    }

    pub fn seed(&self) -> &Int {
        &self.seed
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().chain(&self.b).all(|c| c.is_integer())
    }

    /// `a1*n + a2*k + a3`, the weight on `T(n-1,k)`.
    pub fn a_weight(&self, n: i64, k: i64) -> Rat {
        linear(&self.a, n, k)
    }

    /// `b1*n + b2*k + b3`, the weight on `T(n-1,k-1)`.
    pub fn b_weight(&self, n: i64, k: i64) -> Rat {
        linear(&self.b, n, k)
    }

    pub fn scaled(&self) -> ScaledSpec {
        let denom = common_denominator(self.a.iter().chain(&self.b));
        let lift = |c: &Rat| (c * Rat::from_integer(denom.clone())).to_integer();
        ScaledSpec {
            a: [lift(&self.a[0]), lift(&self.a[1]), lift(&self.a[2])],
            b: [lift(&self.b[0]), lift(&self.b[1]), lift(&self.b[2])],
            denom,
        }
    }

    pub fn sign_conditions(&self) -> SignConditions {
        let [a1, a2, a3] = &self.a;
        let [b1, b2, b3] = &self.b;
        SignConditions {
            a1_nonneg: !a1.is_negative(),
            a1_a2_nonneg: !(a1 + a2).is_negative(),
            a_sum_positive: (a1 + a2 + a3).is_positive(),
            b1_nonneg: !b1.is_negative(),
            b1_b2_nonneg: !(b1 + b2).is_negative(),
            b_sum_positive: (b1 + b2 + b3).is_positive(),
        }
    }

    /// `(a2 b1 - a1 b2) n + a2 b2 k + (a2 b3 - a3 b2)`: the extra
    /// condition for plain q-log-convexity must keep this nonnegative for
    /// `0 < k <= n`.
    pub fn liu_wang_form(&self, n: i64, k: i64) -> Rat {
        let [a1, a2, a3] = &self.a;
        let [b1, b2, b3] = &self.b;
        let n = Rat::from_integer(Int::from(n));
        let k = Rat::from_integer(Int::from(k));
        (a2 * b1 - a1 * b2) * n + a2 * b2 * k + (a2 * b3 - a3 * b2)
    }

    /// `a2 >= 0` and `b2 >= 0`, the hypothesis for strong q-log-convexity.
    pub fn has_nonnegative_k_slopes(&self) -> bool {
        !self.a[1].is_negative() && !self.b[1].is_negative()
    }
}

fn linear(c: &[Rat; 3], n: i64, k: i64) -> Rat {
    &c[0] * Rat::from_integer(Int::from(n)) + &c[1] * Rat::from_integer(Int::from(k)) + &c[2]
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3] = &self.a;
        let [b1, b2, b3] = &self.b;
        write!(f, "({a1},{a2},{a3} | {b1},{b2},{b3})")?;
        if !self.seed.is_one() {
            write!(f, " seed {}", self.seed)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignConditions {
    pub a1_nonneg: bool,
    pub a1_a2_nonneg: bool,
    pub a_sum_positive: bool,
    pub b1_nonneg: bool,
    pub b1_b2_nonneg: bool,
    pub b_sum_positive: bool,
}

impl SignConditions {
    pub fn all(&self) -> bool {
        self.a1_nonneg
            && self.a1_a2_nonneg
            && self.a_sum_positive
            && self.b1_nonneg
            && self.b1_b2_nonneg
            && self.b_sum_positive
    }

    pub fn failing(&self) -> Vec<&'static str> {
        [
            (self.a1_nonneg, "a1>=0"),
            (self.a1_a2_nonneg, "a1+a2>=0"),
            (self.a_sum_positive, "a1+a2+a3>0"),
            (self.b1_nonneg, "b1>=0"),
            (self.b1_b2_nonneg, "b1+b2>=0"),
            (self.b_sum_positive, "b1+b2+b3>0"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub sign: SignConditions,
    pub theorem22_condition_ok: bool,
    /// First `(n, k)` in row-major order where the Liu-Wang form is negative.
    pub theorem22_failure: Option<(i64, i64, Rat)>,
    pub theorem24_condition_ok: bool,
    pub depth: usize,
}

/// Evaluates the sign conditions, the Liu-Wang form over every
/// `0 < k <= n <= depth`, and `a2, b2 >= 0`.
pub fn check_hypotheses(spec: &RecurrenceSpec, depth: usize) -> HypothesisReport {
    let theorem22_failure = liu_wang_failure(spec, depth);
    HypothesisReport {
        sign: spec.sign_conditions(),
        theorem22_condition_ok: theorem22_failure.is_none(),
        theorem22_failure,
        theorem24_condition_ok: spec.has_nonnegative_k_slopes(),
        depth,
    }
}

pub(crate) fn liu_wang_failure(spec: &RecurrenceSpec, depth: usize) -> Option<(i64, i64, Rat)> {
    (1..=depth as i64)
        .flat_map(|n| (1..=n).map(move |k| (n, k)))
        .map(|(n, k)| (n, k, spec.liu_wang_form(n, k)))
        .find(|(_, _, v)| v.is_negative())
}
