//! Named triangle families, each paired with an oracle that does not use
//! the family's recurrence.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::Int;
use crate::recurrence::RecurrenceSpec;
use crate::triangle::{generate, TriangleError};
use crate::verdict::{Verdict, Witness};

pub mod oracle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family {0:?} (known: {known})", known = Family::NAMES.join(", "))]
    Unknown(String),
    #[error("family {0} requires --m >= 1")]
    MissingOrder(&'static str),
    #[error("family {0} does not take a group order")]
    UnexpectedOrder(&'static str),
    #[error("oracle for {family} is only feasible up to depth {max}, requested {requested}")]
    OracleInfeasible { family: String, max: usize, requested: usize },
    #[error(transparent)]
    Triangle(#[from] TriangleError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Stirling numbers of the second kind; rows give Bell polynomials.
    Bell,
    /// `k! S(n,k)`.
    Tanny,
    /// `(n+k)! / ((n-k)! k!)`, coefficients of the Bessel polynomials in `x/2`.
    Bessel,
    /// Shor's `r(n+1,k)`: rooted labeled trees on `n+1` vertices with `k`
    /// improper edges.
    RamanujanShifted,
    /// Whitney numbers `W_m(n,k)` of the Dowling lattice.
    Dowling(u32),
    /// `k! m^k W_m(n,k)`.
    DowlingF1(u32),
    /// `k! W_m(n,k)`.
    DowlingF2(u32),
    /// Permutations of `[n]` with `k` descents.
    Eulerian,
}

impl Family {
    pub const NAMES: [&'static str; 8] = [
        "bell",
        "tanny",
        "bessel",
        "ramanujan-shifted",
        "dowling",
        "dowling-f1",
        "dowling-f2",
        "eulerian",
    ];

    pub fn parse(name: &str, m: Option<u32>) -> Result<Self, FamilyError> {
        let plain = |f: Family| match m {
            None => Ok(f),
            Some(_) => Err(FamilyError::UnexpectedOrder(f.name())),
        };
        let ordered = |make: fn(u32) -> Family, label: &'static str| match m {
            Some(m) if m >= 1 => Ok(make(m)),
            _ => Err(FamilyError::MissingOrder(label)),
        };
        match name {
            "bell" => plain(Family::Bell),
            "tanny" => plain(Family::Tanny),
            "bessel" => plain(Family::Bessel),
            "ramanujan-shifted" | "ramanujan" => plain(Family::RamanujanShifted),
            "eulerian" => plain(Family::Eulerian),
            "dowling" => ordered(Family::Dowling, "dowling"),
            "dowling-f1" => ordered(Family::DowlingF1, "dowling-f1"),
            "dowling-f2" => ordered(Family::DowlingF2, "dowling-f2"),
            other => Err(FamilyError::Unknown(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Bell => "bell",
            Family::Tanny => "tanny",
            Family::Bessel => "bessel",
            Family::RamanujanShifted => "ramanujan-shifted",
            Family::Dowling(_) => "dowling",
            Family::DowlingF1(_) => "dowling-f1",
            Family::DowlingF2(_) => "dowling-f2",
            Family::Eulerian => "eulerian",
        }
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            Family::Dowling(m) | Family::DowlingF1(m) | Family::DowlingF2(m) => Some(*m),
            _ => None,
        }
    }

    /// Coefficients `(a1,a2,a3 | b1,b2,b3)` with seed 1.
    pub fn spec(&self) -> RecurrenceSpec {
        let (a, b) = match *self {
            Family::Bell => ([0, 1, 0], [0, 0, 1]),
            Family::Tanny => ([0, 1, 0], [0, 1, 0]),
            Family::Bessel => ([0, 0, 1], [2, 2, -2]),
            Family::RamanujanShifted => ([1, 0, 0], [1, 1, -1]),
            Family::Dowling(m) => ([0, m as i64, 1], [0, 0, 1]),
            Family::DowlingF2(m) => ([0, m as i64, 1], [0, 1, 0]),
            Family::DowlingF1(m) => ([0, m as i64, 1], [0, m as i64, 0]),
            Family::Eulerian => ([0, 1, 1], [1, -1, 0]),
        };
        RecurrenceSpec::integral(a, b)
    }

    /// Largest depth the oracle is run at.
    pub fn oracle_limit(&self) -> usize {
        match self {
            Family::Bell | Family::Tanny => oracle::PARTITION_ENUMERATION_LIMIT,
            Family::Eulerian => oracle::PERMUTATION_ENUMERATION_LIMIT,
            Family::RamanujanShifted => 20,
            Family::Bessel | Family::Dowling(_) | Family::DowlingF1(_) | Family::DowlingF2(_) => 50,
        }
    }

    /// Every family used by the strong q-log-convexity checks, with the
    /// group orders exercised by default.
    pub fn registry() -> Vec<Family> {
        vec![
            Family::Bell,
            Family::Tanny,
            Family::Bessel,
            Family::RamanujanShifted,
            Family::Dowling(1),
            Family::Dowling(2),
            Family::Dowling(3),
            Family::DowlingF1(1),
            Family::DowlingF1(2),
            Family::DowlingF2(1),
            Family::DowlingF2(2),
            Family::Eulerian,
        ]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order() {
            Some(m) => write!(f, "{} m={m}", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// Shorthand for `family.spec()` from CLI vocabulary.
pub fn family_spec(name: &str, m: Option<u32>) -> Result<RecurrenceSpec, FamilyError> {
    Family::parse(name, m).map(|f| f.spec())
}

/// Compares the generated triangle against the family's oracle on every row
/// up to `depth`. A failure reports the first mismatch in row-major order.
pub fn oracle_check(family: Family, depth: usize) -> Result<Verdict, FamilyError> {
    let limit = family.oracle_limit();
    if depth > limit {
        return Err(FamilyError::OracleInfeasible {
            family: family.to_string(),
            max: limit,
            requested: depth,
        });
    }
    let generated = generate(&family.spec(), depth)?;
    let check = format!("oracle:{family}");
    let range = format!("n<={depth}");

    if family == Family::RamanujanShifted {
        return Ok(ramanujan_oracle(generated.rows(), depth, &check, range));
    }

    let expected = match family {
        Family::Bell => oracle::stirling2_by_enumeration(depth),
        Family::Tanny => oracle::scale_by_factorial(&oracle::stirling2_by_enumeration(depth), 1),
        Family::Bessel => oracle::bessel_closed_form(depth),
        Family::Dowling(m) => oracle::whitney_closed_form(m, depth),
        Family::DowlingF2(m) => oracle::scale_by_factorial(&oracle::whitney_closed_form(m, depth), 1),
        Family::DowlingF1(m) => oracle::scale_by_factorial(&oracle::whitney_closed_form(m, depth), m),
        Family::Eulerian => oracle::eulerian_by_enumeration(depth),
        Family::RamanujanShifted => unreachable!(),
    };
    Ok(compare_rows(&check, range, generated.rows(), &expected))
}

fn compare_rows(check: &str, range: String, got: &[Vec<Int>], expected: &[Vec<Int>]) -> Verdict {
    for (n, (g, e)) in got.iter().zip(expected).enumerate() {
        for (k, (gv, ev)) in g.iter().zip(e).enumerate() {
            if gv != ev {
                let w = Witness::new(
                    [("n", n as i64), ("k", k as i64)],
                    "got",
                    gv.clone().into(),
                )
                .with_expected(ev.clone().into());
                return Verdict::fail(check, range, w);
            }
        }
    }
    Verdict::pass(check, range)
}

/// Row sums against `(n+1)^n`, then every entry against Shor's unshifted
/// recurrence `r(n,k) = (n-1) r(n-1,k) + (n+k-2) r(n-1,k-1)`, `r(1,0) = 1`.
fn ramanujan_oracle(rows: &[Vec<Int>], depth: usize, check: &str, range: String) -> Verdict {
    for (n, row) in rows.iter().enumerate() {
        let sum: Int = row.iter().sum();
        let trees = oracle::rooted_trees_with_root_choice(n as u32 + 1);
        if sum != trees {
            let w = Witness::new([("n", n as i64)], "row_sum", sum.into()).with_expected(trees.into());
            return Verdict::fail(check, range, w);
        }
    }
    let shor = oracle::shor_unshifted(depth + 1);
    let shifted: Vec<Vec<Int>> = (0..=depth)
        .map(|n| {
            (0..=n)
                .map(|k| shor[n + 1].get(k).cloned().unwrap_or_else(Int::zero))
                .collect()
        })
        .collect();
    compare_rows(check, range, rows, &shifted)
}
