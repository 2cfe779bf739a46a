//! Reference tables computed without the triangular recurrence: brute-force
//! enumeration, factorial closed forms, and inclusion-exclusion sums.

use num_traits::{One, Zero};

use crate::exact::{binomial, factorial, Int};

/// Set partitions of `[n]` are enumerated for `n <= 10` (115975 at `n = 10`).
pub const PARTITION_ENUMERATION_LIMIT: usize = 10;
/// Permutations of `[n]` are enumerated for `n <= 8`.
pub const PERMUTATION_ENUMERATION_LIMIT: usize = 8;

fn square(depth: usize) -> Vec<Vec<Int>> {
    (0..=depth).map(|n| vec![Int::zero(); n + 1]).collect()
}

/// `S(n,k)` by walking every restricted growth string of length `n`.
pub fn stirling2_by_enumeration(depth: usize) -> Vec<Vec<Int>> {
    let mut rows = square(depth);
    rows[0][0] = Int::one();
    for (n, row) in rows.iter_mut().enumerate().skip(1) {
        let mut counts = vec![0u64; n + 1];
        let mut rgs = vec![0usize; n];
        count_partitions(&mut rgs, 1, 0, &mut counts);
        for (slot, c) in row.iter_mut().zip(counts) {
            *slot = Int::from(c);
        }
    }
    rows
}

// rgs[0] = 0 is fixed; position `pos` may open block `max + 1`.
fn count_partitions(rgs: &mut [usize], pos: usize, max: usize, counts: &mut [u64]) {
    if pos == rgs.len() {
        counts[max + 1] += 1;
        return;
    }
    for block in 0..=max + 1 {
        rgs[pos] = block;
        count_partitions(rgs, pos + 1, max.max(block), counts);
    }
}

/// `A(n,k)`: permutations of `[n]` with exactly `k` descents.
pub fn eulerian_by_enumeration(depth: usize) -> Vec<Vec<Int>> {
    let mut rows = square(depth);
    rows[0][0] = Int::one();
    for (n, row) in rows.iter_mut().enumerate().skip(1) {
        let mut counts = vec![0u64; n + 1];
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let descents = perm.windows(2).filter(|w| w[0] > w[1]).count();
            counts[descents] += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        for (slot, c) in row.iter_mut().zip(counts) {
            *slot = Int::from(c);
        }
    }
    rows
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("pivot has a successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// `(n+k)! / ((n-k)! k!)`.
pub fn bessel_closed_form(depth: usize) -> Vec<Vec<Int>> {
    (0..=depth as u64)
        .map(|n| {
            (0..=n)
                .map(|k| factorial(n + k) / (factorial(n - k) * factorial(k)))
                .collect()
        })
        .collect()
}

/// `S(n,k) = (1/k!) sum_j (-1)^(k-j) C(k,j) j^n`.
pub fn stirling2_explicit(n: u64, k: u64) -> Int {
    let sum: Int = (0..=k)
        .map(|j| {
            let term = binomial(k, j) * Int::from(j).pow(n as u32);
            if (k - j).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum();
    sum / factorial(k)
}

/// Whitney numbers of the second kind of the Dowling lattice.
///
/// For `m = 1` this is `S(n+1,k+1)`; otherwise
/// `W_m(n,k) = (1/(m^k k!)) sum_j (-1)^(k-j) C(k,j) (1+mj)^n`.
pub fn whitney_closed_form(m: u32, depth: usize) -> Vec<Vec<Int>> {
    (0..=depth as u64)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    if m == 1 {
                        return stirling2_explicit(n + 1, k + 1);
                    }
                    let m = Int::from(m);
                    let sum: Int = (0..=k)
                        .map(|j| {
                            let term = binomial(k, j) * (Int::one() + &m * j).pow(n as u32);
                            if (k - j).is_multiple_of(2) {
                                term
                            } else {
                                -term
                            }
                        })
                        .sum();
                    sum / (m.pow(k as u32) * factorial(k))
                })
                .collect()
        })
        .collect()
}

/// Multiplies entry `(n,k)` by `k! * m^k`.
pub fn scale_by_factorial(rows: &[Vec<Int>], m: u32) -> Vec<Vec<Int>> {
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(k, v)| v * factorial(k as u64) * Int::from(m).pow(k as u32))
                .collect()
        })
        .collect()
}

/// Cayley's count of rooted labeled trees on `n` vertices, `n^(n-1)`.
pub fn rooted_trees_with_root_choice(n: u32) -> Int {
    if n == 0 {
        return Int::zero();
    }
    Int::from(n).pow(n - 1)
}

/// Shor's unshifted triangle `r(n,k)` for `0 <= n <= max_n`, indexed as
/// `rows[n][k]` with `r(0,.) = 0`, `r(1,0) = 1`, `k <= n - 1`.
pub fn shor_unshifted(max_n: usize) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = vec![Vec::new()];
    if max_n >= 1 {
        rows.push(vec![Int::one()]);
    }
    for n in 2..=max_n {
        let prev = &rows[n - 1];
        let get = |k: i64| -> Int {
            if k < 0 {
                Int::zero()
            } else {
                prev.get(k as usize).cloned().unwrap_or_else(Int::zero)
            }
        };
        let row = (0..n as i64)
            .map(|k| Int::from(n - 1) * get(k) + Int::from(n as i64 + k - 2) * get(k - 1))
            .collect();
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_stirling_rows() {
        let s = stirling2_by_enumeration(5);
        assert_eq!(s[4], ints(&[0, 1, 7, 6, 1]));
        assert_eq!(s[5], ints(&[0, 1, 15, 25, 10, 1]));
        let bell10: Int = stirling2_by_enumeration(10)[10].iter().sum();
        assert_eq!(bell10, int(115_975));
        let s = stirling2_by_enumeration(10);
        for n in 0..=10u64 {
            for k in 0..=n {
                assert_eq!(stirling2_explicit(n, k), s[n as usize][k as usize]);
            }
        }
    }

    #[test]
    fn small_eulerian_rows() {
        let a = eulerian_by_enumeration(4);
        assert_eq!(a[1], ints(&[1, 0]));
        assert_eq!(a[3], ints(&[1, 4, 1, 0]));
        assert_eq!(a[4], ints(&[1, 11, 11, 1, 0]));
    }

    #[test]
    fn bessel_rows() {
        let b = bessel_closed_form(3);
        assert_eq!(b[2], ints(&[1, 6, 12]));
        assert_eq!(b[3], ints(&[1, 12, 60, 120]));
    }

    #[test]
    fn whitney_rows() {
        assert_eq!(whitney_closed_form(1, 3)[3], ints(&[1, 7, 6, 1]));
        // W_2(2,k): (1+2k)W(1,k) + W(1,k-1) from W(1,.) = [1,1]
        assert_eq!(whitney_closed_form(2, 2)[2], ints(&[1, 4, 1]));
    }

    #[test]
    fn shor_rows() {
        let r = shor_unshifted(4);
        assert_eq!(r[2], ints(&[1, 1]));
        assert_eq!(r[3], ints(&[2, 4, 3]));
        let total: Int = r[4].iter().sum();
        assert_eq!(total, int(64));
        assert_eq!(rooted_trees_with_root_choice(4), int(64));
    }
}
