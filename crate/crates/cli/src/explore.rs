//! Grid sweeps over integer coefficient tuples.

use anyhow::{bail, Context, Result};
use serde_json::json;

use qlogconvex::triangle::TriangleError;
use qlogconvex::verify::check_strong_q_log_convex;
use qlogconvex::{check_hypotheses, generate, RecurrenceSpec, Verdict};

pub const MAX_DEPTH: usize = 12;

const HEADER: &str = "a1,a2,a3,b1,b2,b3,sign_ok,theorem22,theorem24,strong_qlc,witness";

pub struct Row {
    pub coeffs: [i64; 6],
    pub sign_ok: bool,
    pub theorem22: bool,
    pub theorem24: bool,
    /// `pass`, `fail`, or `invalid` when the triangle has a negative entry.
    pub strong_qlc: &'static str,
    pub witness: String,
}

pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    /// Points meeting every hypothesis of the nonnegative-slope theorem
    /// that still fail the check.
    pub fn counterexamples(&self) -> usize {
        self.rows.iter().filter(|r| r.sign_ok && r.theorem24 && r.strong_qlc == "fail").count()
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let rows: Vec<_> = self
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "a": &r.coeffs[..3], "b": &r.coeffs[3..],
                        "sign_ok": r.sign_ok, "theorem22": r.theorem22, "theorem24": r.theorem24,
                        "strong_qlc": r.strong_qlc, "witness": r.witness,
                    })
                })
                .collect();
            return format!("{}\n", serde_json::Value::Array(rows));
        }
        let mut out = format!("{HEADER}\n");
        for r in &self.rows {
            let cs: Vec<String> = r.coeffs.iter().map(i64::to_string).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                cs.join(","),
                r.sign_ok,
                r.theorem22,
                r.theorem24,
                r.strong_qlc,
                r.witness
            ));
        }
        out
    }
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = match s.split_once(':') {
        Some((lo, hi)) => (lo.trim(), hi.trim()),
        None => (s.trim(), s.trim()),
    };
    let lo: i64 = lo.parse().with_context(|| format!("bad grid bound {lo:?}"))?;
    let hi: i64 = hi.parse().with_context(|| format!("bad grid bound {hi:?}"))?;
    if lo > hi {
        bail!("empty grid range {s:?}");
    }
    Ok((lo, hi))
}

/// `min:max` (shared by all six coefficients) or six comma-separated ranges;
/// a bare integer is a single value.
pub fn parse_grid(s: &str) -> Result<[(i64, i64); 6]> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.len() {
        1 => Ok([parse_range(parts[0])?; 6]),
        6 => {
            let mut out = [(0, 0); 6];
            for (slot, p) in out.iter_mut().zip(&parts) {
                *slot = parse_range(p)?;
            }
            Ok(out)
        }
        n => bail!("--grid needs 1 or 6 ranges, got {n}"),
    }
}

/// Grid points in lexicographic order of `(a1, a2, a3, b1, b2, b3)`.
fn points(grid: &[(i64, i64); 6]) -> Vec<[i64; 6]> {
    let mut out = vec![[0i64; 6]];
    for (axis, &(lo, hi)) in grid.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p;
                    q[axis] = v;
                    q
                })
            })
            .collect();
    }
    out
}

fn grid_size(grid: &[(i64, i64); 6]) -> u128 {
    grid.iter().map(|(lo, hi)| (hi - lo + 1) as u128).product()
}

/// Points failing the sign conditions are dropped unless the grid is a
/// single point.
pub fn run(grid: &str, depth: usize, cap: u64) -> Result<Report> {
    if depth > MAX_DEPTH {
        bail!("explore depth is limited to {MAX_DEPTH}, got {depth}");
    }
    let grid = parse_grid(grid)?;
    let size = grid_size(&grid);
    if size > cap as u128 {
        bail!("grid has {size} points, above --cap {cap}");
    }
    let single = size == 1;
    let mut rows = Vec::new();
    for c in points(&grid) {
        let spec = RecurrenceSpec::integral([c[0], c[1], c[2]], [c[3], c[4], c[5]]);
        let sign_ok = spec.sign_conditions().all();
        if !sign_ok && !single {
            continue;
        }
        let hyp = check_hypotheses(&spec, depth);
        let (strong_qlc, witness) = empirical(&spec, depth)?;
        rows.push(Row {
            coeffs: c,
            sign_ok,
            theorem22: hyp.theorem22_condition_ok,
            theorem24: hyp.theorem24_condition_ok,
            strong_qlc,
            witness,
        });
    }
    Ok(Report { rows })
}

fn empirical(spec: &RecurrenceSpec, depth: usize) -> Result<(&'static str, String)> {
    let t = match generate(spec, depth) {
        Ok(t) => t,
        Err(TriangleError::NegativeEntry { n, k, value }) => {
            return Ok(("invalid", format!("T({n};{k})={value}")));
        }
        Err(e) => return Err(e.into()),
    };
    if depth < 2 {
        return Ok(("pass", String::new()));
    }
    let v: Verdict = check_strong_q_log_convex(&t.polys(), depth - 1)?;
    Ok(match v.witness {
        None => ("pass", String::new()),
        Some(w) => ("fail", w.describe(";")),
    })
}
