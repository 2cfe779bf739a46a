//! Materialized triangles `T(n,k)`, `0 <= k <= n <= depth`.

use thiserror::Error;

use crate::exact::{Int, Rat, Scalar};
use crate::poly::Poly;
use crate::recurrence::RecurrenceSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangleError {
    #[error("negative entry T({n},{k}) = {value}: recurrence is outside the nonnegative regime")]
    NegativeEntry { n: usize, k: usize, value: Rat },
    #[error("non-integral entry T({n},{k}) = {value}")]
    NonIntegral { n: usize, k: usize, value: Rat },
    #[error("row {row} must have length {expected}, got {got}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("triangle has no rows")]
    Empty,
    #[error("row {n} out of range for a triangle of depth {depth}")]
    RowOutOfRange { n: usize, depth: usize },
}

/// Where the rows of a triangle came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Recurrence(Box<RecurrenceSpec>),
    /// Rows supplied directly; spec-dependent identities cannot be checked.
    External,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle<T: Scalar = Int> {
    source: Source,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> Triangle<T> {
    /// Validates the triangular shape; `rows[n]` must have `n + 1` entries.
    pub fn from_rows(source: Source, rows: Vec<Vec<T>>) -> Result<Self, TriangleError> {
        if rows.is_empty() {
            return Err(TriangleError::Empty);
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(TriangleError::Ragged { row: n, expected: n + 1, got: row.len() });
            }
        }
        Ok(Triangle { source, rows })
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn spec(&self) -> Option<&RecurrenceSpec> {
        match &self.source {
            Source::Recurrence(spec) => Some(spec),
            Source::External => None,
        }
    }

    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// `T(n,k)`, zero outside `0 <= k <= n <= depth`.
    pub fn get(&self, n: i64, k: i64) -> T {
        if n < 0 || k < 0 || k > n {
            return T::zero();
        }
        self.rows
            .get(n as usize)
            .and_then(|row| row.get(k as usize))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// `P_n(q) = sum_k T(n,k) q^k`.
    pub fn row_poly(&self, n: usize) -> Result<Poly<T>, TriangleError> {
        self.rows
            .get(n)
            .map(|row| Poly::new(row.clone()))
            .ok_or(TriangleError::RowOutOfRange { n, depth: self.depth() })
    }

    /// Row polynomials `P_0, ..., P_depth`.
    pub fn polys(&self) -> Vec<Poly<T>> {
        self.rows.iter().map(|row| Poly::new(row.clone())).collect()
    }

    /// First `depth + 1` rows.
    pub fn truncate(&self, depth: usize) -> Self {
        Triangle {
            source: self.source.clone(),
            rows: self.rows.iter().take(depth + 1).cloned().collect(),
        }
    }

    pub fn to_rat(&self) -> Triangle<Rat> {
        Triangle {
            source: self.source.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(Scalar::to_rat).collect()).collect(),
        }
    }
}

/// Wraps externally supplied rows in a triangle tagged [`Source::External`].
pub fn inject_triangle<T: Scalar>(rows: Vec<Vec<T>>) -> Result<Triangle<T>, TriangleError> {
    Triangle::from_rows(Source::External, rows)
}

/// Generates rows `0..=depth` with integer entries.
///
/// The recurrence is applied for every `0 <= k <= n`, with out-of-range
/// terms read as zero. Fails on the first negative entry, or on the first
/// non-integral entry when the spec has fractional coefficients.
pub fn generate(spec: &RecurrenceSpec, depth: usize) -> Result<Triangle<Int>, TriangleError> {
    if spec.is_integral() {
        let a = spec.a().clone().map(|c| c.to_integer());
        let b = spec.b().clone().map(|c| c.to_integer());
        let rows = run(spec.seed().clone(), depth, |n, k| {
            (&a[0] * n + &a[1] * k + &a[2], &b[0] * n + &b[1] * k + &b[2])
        })?;
        return Triangle::from_rows(Source::Recurrence(Box::new(spec.clone())), rows);
    }
    let rational = generate_rational(spec, depth)?;
    let mut rows = Vec::with_capacity(rational.rows.len());
    for (n, row) in rational.rows.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (k, v) in row.iter().enumerate() {
            match v.to_int() {
                Some(i) => out.push(i),
                None => return Err(TriangleError::NonIntegral { n, k, value: v.clone() }),
            }
        }
        rows.push(out);
    }
    Triangle::from_rows(Source::Recurrence(Box::new(spec.clone())), rows)
}

/// Generates rows `0..=depth` over the rationals.
pub fn generate_rational(spec: &RecurrenceSpec, depth: usize) -> Result<Triangle<Rat>, TriangleError> {
    let rows = run(Rat::from_integer(spec.seed().clone()), depth, |n, k| {
        (spec.a_weight(n, k), spec.b_weight(n, k))
    })?;
    Triangle::from_rows(Source::Recurrence(Box::new(spec.clone())), rows)
}

fn run<T: Scalar>(
    seed: T,
    depth: usize,
    weights: impl Fn(i64, i64) -> (T, T),
) -> Result<Vec<Vec<T>>, TriangleError> {
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(depth + 1);
    rows.push(vec![seed]);
    for n in 1..=depth {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let (wa, wb) = weights(n as i64, k as i64);
            let mut v = T::zero();
            if let Some(up) = prev.get(k) {
                if !up.is_zero() {
                    v += &(wa * up);
                }
            }
            if k > 0 {
                let diag = &prev[k - 1];
                if !diag.is_zero() {
                    v += &(wb * diag);
                }
            }
            if v.is_negative() {
                return Err(TriangleError::NegativeEntry { n, k, value: v.to_rat() });
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn bell_row_four() {
        let t = generate(&RecurrenceSpec::integral([0, 1, 0], [0, 0, 1]), 4).unwrap();
        assert_eq!(t.rows()[4], ints(&[&[0, 1, 7, 6, 1]])[0]);
        assert_eq!(t.row_poly(2).unwrap(), Poly::from_ints(&[0, 1, 1]));
    }

    #[test]
    fn depth_zero_is_seed() {
        let spec = RecurrenceSpec::integral([0, 1, 0], [0, 0, 1]).with_seed(int(7)).unwrap();
        let t = generate(&spec, 0).unwrap();
        assert_eq!(t.rows(), ints(&[&[7]]).as_slice());
        assert_eq!(t.row_poly(0).unwrap(), Poly::constant(int(7)));
        assert!(matches!(t.row_poly(1), Err(TriangleError::RowOutOfRange { n: 1, depth: 0 })));
    }

    #[test]
    fn bessel_rows() {
        let t = generate(&RecurrenceSpec::integral([0, 0, 1], [2, 2, -2]), 2).unwrap();
        assert_eq!(t.rows()[2], ints(&[&[1, 6, 12]])[0]);
        assert_eq!(t.row_poly(1).unwrap(), Poly::from_ints(&[1, 2]));
    }

    #[test]
    fn negative_entries_are_rejected_with_position() {
        let err = generate(&RecurrenceSpec::integral([0, 2, -1], [0, 0, 1]), 3).unwrap_err();
        assert_eq!(err, TriangleError::NegativeEntry { n: 1, k: 0, value: rat(-1, 1) });
    }

    #[test]
    fn rational_specs() {
        // T(n,k) = (1/2) T(n-1,k) + T(n-1,k-1) with seed 4: row 1 = [2, 4], row 2 = [1, 4, 4]
        let spec = RecurrenceSpec::parse("0,0,1/2,0,0,1", int(4)).unwrap();
        let t = generate(&spec, 2).unwrap();
        assert_eq!(t.rows()[2], ints(&[&[1, 4, 4]])[0]);
        let err = generate(&spec, 3).unwrap_err();
        assert_eq!(err, TriangleError::NonIntegral { n: 3, k: 0, value: rat(1, 2) });
        let r = generate_rational(&spec, 3).unwrap();
        assert_eq!(r.rows()[3], vec![rat(1, 2), rat(3, 1), rat(6, 1), rat(4, 1)]);
    }

    #[test]
    fn injection_checks_shape() {
        let t = inject_triangle(ints(&[&[1], &[1, 2], &[1, 1, 1]])).unwrap();
        assert_eq!(t.source(), &Source::External);
        assert_eq!(t.depth(), 2);
        assert_eq!(
            inject_triangle(ints(&[&[1], &[1]])).unwrap_err(),
            TriangleError::Ragged { row: 1, expected: 2, got: 1 }
        );
        assert_eq!(inject_triangle(ints(&[&[5]])).unwrap().depth(), 0);
        assert_eq!(inject_triangle::<Int>(vec![]).unwrap_err(), TriangleError::Empty);
    }

    #[test]
    fn out_of_range_entries_read_as_zero() {
        let t = generate(&RecurrenceSpec::integral([0, 0, 1], [0, 0, 1]), 3).unwrap();
        assert_eq!(t.get(3, -1), int(0));
        assert_eq!(t.get(2, 3), int(0));
        assert_eq!(t.get(9, 0), int(0));
        assert_eq!(t.get(3, 1), int(3));
    }

    #[test]
    fn generation_is_deterministic_and_prefix_stable() {
        let spec = RecurrenceSpec::integral([1, 0, 0], [1, 1, -1]);
        let a = generate(&spec, 15).unwrap();
        assert_eq!(a, generate(&spec, 15).unwrap());
        for d in 0..15 {
            assert_eq!(a.truncate(d), generate(&spec, d).unwrap());
        }
    }
}
