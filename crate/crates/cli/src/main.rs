use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qlogconvex::exact::{parse_int, Rat, Scalar};
use qlogconvex::families::family_spec;
use qlogconvex::io::{self, AnyTriangle};
use qlogconvex::transform::{apply_transform, check_beta_sweep, check_f_sweep, check_log_convex_seq, TransformError};
use qlogconvex::triangle::TriangleError;
use qlogconvex::verify;
use qlogconvex::{generate, generate_rational, NumSeq, RecurrenceSpec, Triangle, Verdict, Witness};

mod explore;

#[derive(Parser)]
#[command(name = "qlc", version, about = "Exact q-log-convexity checks for triangular recurrences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangle T(n,k) for rows 0..=depth
    Triangle {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 30)]
        depth: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run one or more checks; exit 1 if any fails
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        /// Triangle JSON (full document or a bare array of rows)
        #[arg(long, conflicts_with_all = ["family", "spec"])]
        inject: Option<PathBuf>,
        /// Defaults to 30, or to the depth of an injected triangle
        #[arg(long)]
        depth: Option<usize>,
        /// Check name; repeatable or comma-separated. Default: all applicable
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply the triangle to a sequence: w_n = sum_k T(n,k) z_k
    Transform {
        #[command(flatten)]
        source: SourceArgs,
        /// Built-in name (ones, factorial, catalan, bellnumbers, pow2) or file:PATH
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 30)]
        depth: usize,
        /// Only `log-convex` is supported
        #[arg(long)]
        check: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep integer coefficient grids and report hypotheses against observed strong q-log-convexity
    Explore {
        /// `min:max` for all six coefficients, or six comma-separated ranges
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Largest number of grid points accepted
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct SourceArgs {
    #[arg(long, conflicts_with = "spec")]
    family: Option<String>,
    /// Order parameter for the dowling families
    #[arg(long)]
    m: Option<u32>,
    /// a1,a2,a3,b1,b2,b3 (integers or p/q)
    #[arg(long, allow_hyphen_values = true)]
    spec: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    seed: String,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Exit 0 or 1; configuration errors surface as `Err` and exit 2.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Triangle { source, depth, output } => {
            let t = build(&source.spec()?, depth)?;
            let text = match (&t, output.format) {
                (AnyTriangle::Int(t), f) => render_triangle(t, f),
                (AnyTriangle::Rat(t), f) => render_triangle(t, f),
            };
            emit(&output, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Verify { source, inject, depth, check, output } => {
            let t = match inject {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    io::parse_triangle_json(&text).with_context(|| format!("parsing {}", path.display()))?
                }
                None => build(&source.spec()?, depth.unwrap_or(30))?,
            };
            let depth = depth.unwrap_or(t.depth().min(30));
            if depth > t.depth() {
                bail!("depth {depth} exceeds the {} rows available", t.depth());
            }
            let checks = if check.is_empty() { default_checks(&t) } else { check };
            let verdicts = checks
                .iter()
                .map(|name| match &t {
                    AnyTriangle::Int(t) => run_check(&t.truncate(depth), name, depth),
                    AnyTriangle::Rat(t) => run_check(&t.truncate(depth), name, depth),
                })
                .collect::<Result<Vec<_>>>()?;
            emit(&output, &render_verdicts(&verdicts, output.format))?;
            Ok(outcome(verdicts.iter().all(|v| v.passed)))
        }
        Command::Transform { source, seq, depth, check, output } => {
            if let Some(c) = &check {
                if c != "log-convex" {
                    bail!("unknown transform check {c:?} (supported: log-convex)");
                }
            }
            let z = load_seq(&seq, depth)?;
            let w = match build(&source.spec()?, depth)? {
                AnyTriangle::Int(t) => apply_transform(&t, &z, depth),
                AnyTriangle::Rat(t) => apply_transform(&t, &z, depth),
            }?;
            let verdict = check.map(|_| seq_verdict(&z, &w, depth)).transpose()?;
            emit(&output, &render_transform(&w, verdict.as_ref(), output.format))?;
            Ok(outcome(verdict.is_none_or(|v| v.passed)))
        }
        Command::Explore { grid, depth, cap, output } => {
            let report = explore::run(&grid, depth, cap)?;
            emit(&output, &report.render(output.format == Format::Json))?;
            Ok(outcome(report.counterexamples() == 0))
        }
    }
}

fn outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

impl SourceArgs {
    fn spec(&self) -> Result<RecurrenceSpec> {
        let seed = parse_int(self.seed.trim()).context("--seed")?;
        match (&self.family, &self.spec) {
            (Some(name), None) => {
                let spec = family_spec(name, self.m)?;
                Ok(spec.with_seed(seed)?)
            }
            (None, Some(coeffs)) => {
                if self.m.is_some() {
                    bail!("--m only applies to --family");
                }
                Ok(RecurrenceSpec::parse(coeffs, seed)?)
            }
            _ => bail!("give exactly one of --family or --spec"),
        }
    }
}

/// Integer triangle when every entry is integral, rational otherwise.
fn build(spec: &RecurrenceSpec, depth: usize) -> Result<AnyTriangle> {
    match generate(spec, depth) {
        Ok(t) => Ok(AnyTriangle::Int(t)),
        Err(TriangleError::NonIntegral { .. }) => Ok(AnyTriangle::Rat(generate_rational(spec, depth)?)),
        Err(e) => Err(anyhow!("invalid spec {spec}: {e}")),
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render_triangle<T: Scalar>(t: &Triangle<T>, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", io::triangle_to_json(t)),
        Format::Csv => io::triangle_to_csv(t),
        Format::Text => io::triangle_to_text(t),
    }
}

// ---------------------------------------------------------------------------
// verify

const CHECKS: [&str; 11] = [
    "row-log-concave",
    "dominance",
    "qlc",
    "strong-qlc",
    "wronskian",
    "deriv-identity",
    "decomp-identity",
    "ckdk",
    "beta-pattern",
    "f-identity",
    "liu-wang-condition",
];

const SPEC_FREE_CHECKS: [&str; 5] = ["row-log-concave", "dominance", "qlc", "strong-qlc", "wronskian"];

fn default_checks(t: &AnyTriangle) -> Vec<String> {
    let has_spec = match t {
        AnyTriangle::Int(t) => t.spec().is_some(),
        AnyTriangle::Rat(t) => t.spec().is_some(),
    };
    let names: &[&str] = if has_spec { &CHECKS[..8] } else { &SPEC_FREE_CHECKS };
    let mut out: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    if has_spec {
        out.push("liu-wang-condition".into());
    }
    out
}

/// Depth `D` covers every inequality whose polynomials lie in rows `0..=D`.
fn run_check<T: Scalar>(t: &Triangle<T>, name: &str, depth: usize) -> Result<Verdict> {
    let polys = t.polys();
    let below = depth.checked_sub(1);
    let vacuous = |check: &str| Verdict::pass(check, "empty range");
    let spec = |check: &'static str| verify::spec_of(t, check);
    let verdict = match name {
        "row-log-concave" => verify::check_row_log_concave(t, depth)?,
        "dominance" => verify::check_dominance(t, depth)?,
        "qlc" => match below {
            Some(m) if m >= 1 => verify::check_q_log_convex(&polys, m)?,
            _ => vacuous("qlc"),
        },
        "strong-qlc" => match below {
            Some(n) if n >= 1 => verify::check_strong_q_log_convex(&polys, n)?,
            _ => vacuous("strong-qlc"),
        },
        "wronskian" => verify::check_wronskian(&polys, depth)?,
        "deriv-identity" => verify::check_derivative_identity(spec("deriv-identity")?, &polys, depth)?,
        "decomp-identity" => match below {
            Some(n) if n >= 1 => verify::check_decomposition_identity(spec("decomp-identity")?, &polys, n)?,
            _ => vacuous("decomp-identity"),
        },
        "ckdk" => verify::check_ck_dk_sweep(spec("ckdk")?, depth),
        "liu-wang-condition" => verify::check_liu_wang_condition(spec("liu-wang-condition")?, depth),
        "beta-pattern" => check_beta_sweep(depth),
        "f-identity" => check_f_sweep(depth),
        other => bail!("unknown check {other:?} (known: {})", CHECKS.join(", ")),
    };
    Ok(verdict)
}

fn render_verdicts(verdicts: &[Verdict], format: Format) -> String {
    match format {
        Format::Json if verdicts.len() == 1 => format!("{}\n", verdicts[0].to_json()),
        Format::Json => format!("{}\n", serde_json::to_string(verdicts).expect("verdicts serialize")),
        Format::Csv => {
            let mut out = format!("{}\n", Verdict::CSV_HEADER);
            for v in verdicts {
                out.push_str(&v.to_csv_row());
                out.push('\n');
            }
            out
        }
        Format::Text => verdicts.iter().map(|v| format!("{v}\n")).collect(),
    }
}

// ---------------------------------------------------------------------------
// transform

fn load_seq(arg: &str, depth: usize) -> Result<NumSeq> {
    let z = match arg.strip_prefix("file:") {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            io::parse_seq_json(&text).with_context(|| format!("parsing {path}"))?
        }
        None => NumSeq::builtin(arg, depth + 1)?,
    };
    if z.len() < depth + 1 {
        bail!("sequence has {} values, depth {depth} needs {}", z.len(), depth + 1);
    }
    Ok(z)
}

/// Log-convexity of `w`, with a warning when the input itself is not log-convex.
fn seq_verdict(z: &NumSeq, w: &NumSeq, depth: usize) -> Result<Verdict> {
    let verdict = match check_log_convex_seq(w, depth) {
        Ok(v) => v,
        Err(TransformError::NonPositive { index, value }) => Verdict::fail(
            "log-convex",
            format!("0<=n<={depth}"),
            Witness::new([("n", index as i64)], "w", value),
        ),
        Err(e) => return Err(e.into()),
    };
    let input_ok = matches!(check_log_convex_seq(z, depth), Ok(v) if v.passed);
    Ok(if input_ok { verdict } else { verdict.with_warning("input sequence is not positive and log-convex") })
}

fn render_transform(w: &NumSeq, verdict: Option<&Verdict>, format: Format) -> String {
    let strs: Vec<String> = w.values.iter().map(Rat::to_string).collect();
    match format {
        Format::Json => {
            let mut doc = io::seq_to_json(w);
            if let Some(v) = verdict {
                doc["verdict"] = serde_json::to_value(v).expect("verdict serializes");
            }
            format!("{doc}\n")
        }
        Format::Csv => {
            let mut out = String::from("n,w\n");
            for (n, v) in strs.iter().enumerate() {
                out.push_str(&format!("{n},{v}\n"));
            }
            if let Some(v) = verdict {
                out.push_str(&format!("\n{}\n{}\n", Verdict::CSV_HEADER, v.to_csv_row()));
            }
            out
        }
        Format::Text => {
            let mut out = format!("w = {}\n", strs.join(","));
            if let Some(v) = verdict {
                out.push_str(&format!("{v}\n"));
            }
            out
        }
    }
}
