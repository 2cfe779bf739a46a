//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons
//! with the stated time budgets. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qlogconvex::exact::{int, Int};
use qlogconvex::families::{oracle_check, Family};
use qlogconvex::transform::{check_beta_sweep, check_f_sweep, check_log_convex_seq, check_preservation, NumSeq};
use qlogconvex::verify::{
    check_ck_dk_identities, check_decomposition_identity, check_derivative_identity, check_dominance,
    check_liu_wang_condition, check_q_log_convex, check_row_log_concave, check_strong_q_log_convex,
};
use qlogconvex::{check_hypotheses, generate, inject_triangle, RecurrenceSpec, Verdict};

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Result<(), String>,
}

fn require(v: Verdict) -> Result<(), String> {
    if v.passed {
        Ok(())
    } else {
        Err(v.to_string())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn bell_oracle() -> Result<(), String> {
    require(oracle_check(Family::Bell, 10).map_err(err)?)
}

fn bessel_oracle() -> Result<(), String> {
    require(oracle_check(Family::Bessel, 50).map_err(err)?)
}

fn dowling_oracle() -> Result<(), String> {
    require(oracle_check(Family::Dowling(1), 12).map_err(err)?)
}

fn ramanujan_oracle() -> Result<(), String> {
    require(oracle_check(Family::RamanujanShifted, 20).map_err(err)?)
}

const STRONG_FAMILIES: [Family; 11] = [
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
];

fn strong_families() -> Result<(), String> {
    for family in STRONG_FAMILIES {
        let t = generate(&family.spec(), 30).map_err(err)?;
        require(check_strong_q_log_convex(&t.polys(), 29).map_err(err)?).map_err(|e| format!("{family}: {e}"))?;
    }
    Ok(())
}

fn eulerian_qlc() -> Result<(), String> {
    let spec = Family::Eulerian.spec();
    require(check_liu_wang_condition(&spec, 25))?;
    let t = generate(&spec, 25).map_err(err)?;
    require(check_q_log_convex(&t.polys(), 24).map_err(err)?)
}

fn identity_replay() -> Result<(), String> {
    for family in Family::registry() {
        let spec = family.spec();
        let polys = generate(&spec, 20).map_err(err)?.polys();
        require(check_derivative_identity(&spec, &polys, 20).map_err(err)?).map_err(|e| format!("{family}: {e}"))?;
        require(check_decomposition_identity(&spec, &polys, 19).map_err(err)?)
            .map_err(|e| format!("{family}: {e}"))?;
    }
    Ok(())
}

fn row_shape() -> Result<(), String> {
    let mut checked = 0;
    for family in Family::registry() {
        let spec = family.spec();
        if !spec.has_nonnegative_k_slopes() {
            continue;
        }
        let t = generate(&spec, 20).map_err(err)?;
        require(check_row_log_concave(&t, 20).map_err(err)?).map_err(|e| format!("{family}: {e}"))?;
        require(check_dominance(&t, 20).map_err(err)?).map_err(|e| format!("{family}: {e}"))?;
        checked += 1;
    }
    if checked != 11 {
        return Err(format!("expected 11 families with a2,b2 >= 0, found {checked}"));
    }
    Ok(())
}

fn beta_pivots() -> Result<(), String> {
    require(check_beta_sweep(25))?;
    require(check_f_sweep(25))
}

fn bessel_preservation() -> Result<(), String> {
    let t = generate(&Family::Bessel.spec(), 25).map_err(err)?;
    for name in NumSeq::BUILTINS {
        let z = NumSeq::builtin(name, 26).map_err(err)?;
        require(check_preservation(&t, &z, 25).map_err(err)?).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn negative_controls() -> Result<(), String> {
    let rows = vec![vec![int(1)], vec![int(1), int(2)], vec![int(1), int(1), int(1)]];
    let t = inject_triangle(rows).map_err(err)?;
    let v = check_q_log_convex(&t.polys(), 1).map_err(err)?;
    let w = v.witness.as_ref().ok_or("injected triangle passed qlc")?;
    if (w.index("m"), w.index("i"), w.value.to_string().as_str()) != (Some(1), Some(1), "-3") {
        return Err(format!("unexpected witness: {v}"));
    }
    let v = check_log_convex_seq(&NumSeq::from_ints(&[1, 2, 3]), 2).map_err(err)?;
    match v.witness {
        Some(w) if w.index("m") == Some(1) => Ok(()),
        _ => Err(format!("unexpected verdict for (1,2,3): {v}")),
    }
}

/// Integer coefficients meeting the sign conditions with `a2, b2 >= 0`.
fn random_spec(rng: &mut StdRng) -> RecurrenceSpec {
    loop {
        let a = [rng.gen_range(0..=4), rng.gen_range(0..=4), rng.gen_range(-3..=4)];
        let b = [rng.gen_range(0..=4), rng.gen_range(0..=4), rng.gen_range(-3..=4)];
        let spec = RecurrenceSpec::integral(a, b).with_seed(Int::from(rng.gen_range(1..=3))).expect("seed > 0");
        if spec.sign_conditions().all() {
            return spec;
        }
    }
}

fn ckdk_draws() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(20240607);
    for _ in 0..50 {
        let spec = random_spec(&mut rng);
        let n = rng.gen_range(1..=25usize);
        let i = rng.gen_range(0..=2 * n);
        require(check_ck_dk_identities(&spec, n, i).map_err(err)?).map_err(|e| format!("{spec} n={n} i={i}: {e}"))?;
    }
    Ok(())
}

fn exploration() -> Result<(), String> {
    let mut tested = 0;
    for bits in 0u32..64 {
        let c: Vec<i64> = (0..6).rev().map(|j| ((bits >> j) & 1) as i64).collect();
        let spec = RecurrenceSpec::integral([c[0], c[1], c[2]], [c[3], c[4], c[5]]);
        if !spec.sign_conditions().all() || !check_hypotheses(&spec, 10).theorem24_condition_ok {
            continue;
        }
        let t = generate(&spec, 10).map_err(|e| format!("{spec}: {e}"))?;
        require(check_strong_q_log_convex(&t.polys(), 9).map_err(err)?).map_err(|e| format!("{spec}: {e}"))?;
        tested += 1;
    }
    if tested == 0 {
        return Err("no grid point passed the filter".into());
    }
    Ok(())
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "Bell equals set-partition enumeration, n<=10", budget: secs(1), run: bell_oracle },
        Criterion { id: 2, name: "Bessel equals (n+k)!/((n-k)!k!), n<=50", budget: secs(2), run: bessel_oracle },
        Criterion { id: 3, name: "Dowling m=1 equals S(n+1,k+1), n<=12", budget: secs(1), run: dowling_oracle },
        Criterion {
            id: 4,
            name: "Ramanujan-shifted row sums (n+1)^n and Shor replay, n<=20",
            budget: secs(1),
            run: ramanujan_oracle,
        },
        Criterion {
            id: 5,
            name: "strong q-log-convexity of 11 families at depth 30",
            budget: secs(60),
            run: strong_families,
        },
        Criterion { id: 6, name: "Eulerian Liu-Wang condition and qlc at depth 25", budget: secs(10), run: eulerian_qlc },
        Criterion {
            id: 7,
            name: "derivative and decomposition identities, all families, depth 20",
            budget: None,
            run: identity_replay,
        },
        Criterion { id: 8, name: "row log-concavity and dominance, a2,b2>=0 families, depth 20", budget: None, run: row_shape },
        Criterion { id: 9, name: "beta pivots and f-identity, 1<=n<=25, 0<=i<=2n", budget: secs(30), run: beta_pivots },
        Criterion {
            id: 10,
            name: "Bessel transform preserves log-convexity of 5 sequences, n<=25",
            budget: None,
            run: bessel_preservation,
        },
        Criterion { id: 11, name: "negative controls", budget: None, run: negative_controls },
        Criterion { id: 12, name: "c_k/d_k closed forms on 50 random draws", budget: None, run: ckdk_draws },
        Criterion {
            id: 13,
            name: "grid {0,1}^6 has no strong-qlc counterexample at depth 10",
            budget: secs(60),
            run: exploration,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let over_budget = c.budget.is_some_and(|b| elapsed > b);
        let status = if result.is_ok() && !over_budget { "PASS" } else { "FAIL" };
        let budget = c.budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        println!("[{status}] {:>2}. {} ({:.3}s{budget})", c.id, c.name, elapsed.as_secs_f64());
        if let Err(e) = &result {
            println!("       {e}");
        } else if over_budget {
            println!("       over time budget");
        }
        if status == "FAIL" {
            failures += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
