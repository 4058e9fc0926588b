//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if any criterion fails.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sis_core::analysis::{
    endemic_limit_ds, high_risk_threshold, local_r0, lyapunov_di, lyapunov_ds, solve_sstar,
    sstar_objective,
};
use sis_core::discretization::{neumann_laplacian, reaction_terms, ImplicitDiffusion};
use sis_core::eigen::{critical_diffusion, principal_eigenvalue};
use sis_core::models::Stepper;
use sis_core::scenario::{builtin, simulate, SimOutcome, BUILTINS};
use sis_core::{
    classify_regions, Classification, CoefficientField, Coefficients, EpidemicState, Expr, Grid,
    ModelKind,
};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn announce(line: &str) {
    // Written to the process stdout directly so it shows without --nocapture.
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

fn grid400() -> Grid {
    Grid::new(400, 0.0, 1.0).unwrap()
}

fn sim1_coef(k: f64, grid: &Grid) -> Coefficients {
    Coefficients::sample(
        Expr::Affine { k, c: 1.0 },
        Expr::Affine { k: 5.0, c: 1.0 },
        Expr::PaperM0,
        grid,
    )
    .unwrap()
}

/// Independent midpoint evaluation of ∫ m γ / (β - γ) for β = k + x, γ = 5 + x.
fn threshold_oracle(k: f64, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    (0..n)
        .map(|j| {
            let x = (j as f64 + 0.5) * h;
            let m = if x < 0.5 { 1.0 - 2.0 * x } else { 0.0 };
            h * m * (5.0 + x) / (k - 5.0)
        })
        .sum()
}

fn run_builtins() -> BTreeMap<&'static str, (SimOutcome, Duration)> {
    BUILTINS
        .par_iter()
        .map(|b| {
            let start = Instant::now();
            let out = simulate(&(b.build)()).unwrap_or_else(|e| panic!("{} failed: {e}", b.name));
            (b.name, (out, start.elapsed()))
        })
        .collect()
}

fn criterion_1() -> Verdict {
    let grid = grid400();
    let expected = [(5.1, 12.9167), (5.37, 3.4910), (6.0, 1.2917)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, paper) in expected {
        let coef = sim1_coef(k, &grid);
        let start = Instant::now();
        let f = high_risk_threshold(&coef, &grid).unwrap();
        let took = start.elapsed();
        let oracle = threshold_oracle(k, 400);
        ok &= (f - paper).abs() <= 1e-3
            && (f - oracle).abs() < 1e-10
            && took < Duration::from_millis(1);
        parts.push(format!("f({k})={f:.6} ({:.0}us)", took.as_secs_f64() * 1e6));
    }
    verdict(ok, parts.join(", "))
}

fn criterion_2() -> Verdict {
    let grid = grid400();
    let mut ok = true;
    let mut parts = Vec::new();
    // Only k = 6 and k = 5.37 have N > f(k); for 5.1 and 5.2 the equilibrium is infeasible.
    for k in [6.0, 5.37, 5.1, 5.2] {
        let coef = sim1_coef(k, &grid);
        let start = Instant::now();
        let p = endemic_limit_ds(&coef, &grid, 3.5).unwrap();
        let Some(s) = p.s_tilde else {
            ok &= p.threshold >= 3.5;
            parts.push(format!("k={k}: infeasible"));
            continue;
        };
        let i = vec![p.i_tilde; 400];
        let (ds, di) = reaction_terms(&s, &i, &coef).unwrap();
        let took = start.elapsed();
        let res = ds.iter().chain(&di).fold(0.0f64, |a, v| a.max(v.abs()));
        ok &= res < 1e-12 && took < Duration::from_millis(1);
        parts.push(format!(
            "k={k}: residual {res:.1e} ({:.0}us)",
            took.as_secs_f64() * 1e6
        ));
    }
    verdict(ok, parts.join(", "))
}

fn criterion_3(runs: &BTreeMap<&str, (SimOutcome, Duration)>) -> Verdict {
    let mut ok = runs.len() == BUILTINS.len();
    let mut worst = (0.0f64, "");
    let mut slowest = (Duration::ZERO, "");
    for (name, (out, took)) in runs {
        let n0 = out.trajectory.diagnostics[0].mass;
        let scale = builtin(name).unwrap().init_scale;
        ok &= (n0 - 3.5 * scale).abs() < 1e-12 * 3.5;
        let drift = out
            .trajectory
            .diagnostics
            .iter()
            .fold(0.0f64, |a, d| a.max((d.mass - n0).abs() / n0));
        ok &= drift < 1e-8 && *took < Duration::from_secs(60);
        if drift >= worst.0 {
            worst = (drift, name);
        }
        if *took >= slowest.0 {
            slowest = (*took, name);
        }
    }
    verdict(
        ok,
        format!(
            "{} runs, worst drift {:.1e} ({}), slowest {:.1}s ({})",
            runs.len(),
            worst.0,
            worst.1,
            slowest.0.as_secs_f64(),
            slowest.1
        ),
    )
}

fn criterion_4(runs: &BTreeMap<&str, (SimOutcome, Duration)>) -> Verdict {
    let a = &runs["sim1a"].0;
    let b = &runs["sim1b"].0;
    // Ĩ = (N - f(6)) / ∫ β/(β-γ), evaluated independently.
    let h = 1.0 / 400.0;
    let denom: f64 = (0..400).map(|j| h * (6.0 + (j as f64 + 0.5) * h)).sum();
    let i_tilde = (3.5 - threshold_oracle(6.0, 400)) / denom;
    let err_a = a
        .trajectory
        .last()
        .i
        .iter()
        .fold(0.0f64, |m, v| m.max((v - 0.33974).abs()));
    let max_b = b.trajectory.last().max_i();
    let ok = a.summary.classification == Classification::Endemic
        && err_a < 0.01
        && (i_tilde - 0.33974).abs() < 1e-5
        && b.summary.classification == Classification::Extinct
        && max_b < 1e-3;
    verdict(
        ok,
        format!(
            "sim1a {} |I-0.33974|={err_a:.1e} (oracle Ĩ={i_tilde:.6}); sim1b {} max I={max_b:.1e}",
            a.summary.classification, b.summary.classification
        ),
    )
}

fn criterion_5(runs: &BTreeMap<&str, (SimOutcome, Duration)>) -> Verdict {
    let a = &runs["sim4a"].0;
    let b = &runs["sim4b"].0;
    let i_final = &b.trajectory.last().i;
    let x = b.prepared.grid.centers();
    // Persistence region: where the transmission excess beats saturation at the final S.
    let s_final = b.trajectory.last().s[0];
    let region: Vec<usize> = (0..x.len())
        .filter(|&k| (1.0 + x[k]) / 0.8 * s_final - 1.0 - s_final > 0.05)
        .collect();
    let min_region = region
        .iter()
        .map(|&k| i_final[k])
        .fold(f64::INFINITY, f64::min);
    let vanishing = i_final.iter().filter(|&&v| v < 1e-3).count();
    let ok = a.summary.classification == Classification::Extinct
        && b.summary.classification == Classification::Endemic
        && !region.is_empty()
        && min_region > 0.0
        && vanishing > 0;
    verdict(
        ok,
        format!(
            "a=0.1 {}; a=0.5 {} (rule {}), min I on {} cells = {min_region:.3e}, {vanishing} cells below 1e-3",
            a.summary.classification,
            b.summary.classification,
            b.summary.endemic_rule.map_or("none".into(), |r| format!("{r:?}").to_lowercase()),
            region.len()
        ),
    )
}

fn criterion_6(runs: &BTreeMap<&str, (SimOutcome, Duration)>) -> Verdict {
    let mut ok = true;
    let mut worst = (0.0f64, "");
    let mut count = 0;
    for (name, (out, _)) in runs {
        if !matches!(out.summary.model, ModelKind::DiZero { .. }) {
            continue;
        }
        count += 1;
        let s = &out.trajectory.last().s;
        let mean = s.iter().sum::<f64>() / s.len() as f64;
        let dev = s.iter().fold(0.0f64, |a, v| a.max((v - mean).abs()));
        ok &= dev < 1e-3;
        if dev >= worst.0 {
            worst = (dev, name);
        }
    }
    verdict(
        ok && count > 0,
        format!("{count} runs, worst {:.1e} ({})", worst.0, worst.1),
    )
}

/// Brute-force root of `|Ω|τ + Σ h((R-1)τ - m)₊χ - N` by scanning `points` values of τ.
fn sstar_scan(beta: &[f64], gamma: &[f64], m: &[f64], h: f64, n_total: f64, points: usize) -> f64 {
    let omega = h * beta.len() as f64;
    let f = |tau: f64| {
        let mut v = omega * tau - n_total;
        for k in 0..beta.len() {
            v += h * ((beta[k] / gamma[k] - 1.0) * tau - m[k]).max(0.0);
        }
        v
    };
    let upper = n_total / omega;
    let step = upper / (points - 1) as f64;
    let mut prev = (0.0, f(0.0));
    for j in 1..points {
        let tau = j as f64 * step;
        let val = f(tau);
        if val >= 0.0 {
            return prev.0 + step * (-prev.1) / (val - prev.1);
        }
        prev = (tau, val);
    }
    upper
}

fn criterion_7(runs: &BTreeMap<&str, (SimOutcome, Duration)>) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut ok = true;
    for _ in 0..20 {
        let n = rng.gen_range(20..80);
        let grid = Grid::new(n, 0.0, 1.0).unwrap();
        let gamma: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..3.0)).collect();
        // R in (0.3, 1.9) keeps ∫(R-1)₊ < |Ω|.
        let beta: Vec<f64> = gamma.iter().map(|g| g * rng.gen_range(0.3..1.9)).collect();
        let m: Vec<f64> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    0.0
                } else {
                    rng.gen_range(0.0..2.0)
                }
            })
            .collect();
        let n_total = rng.gen_range(0.5..6.0);
        let coef = Coefficients::new(
            CoefficientField::from_values(beta.clone()),
            CoefficientField::from_values(gamma.clone()),
            CoefficientField::from_values(m.clone()),
        )
        .unwrap();
        let sol = solve_sstar(&coef, &grid, n_total, &vec![true; n]).unwrap();
        let scan = sstar_scan(&beta, &gamma, &m, grid.h(), n_total, 1_000_000);
        let diff = (sol.s_star - scan).abs();
        worst = worst.max(diff);
        ok &= diff < 1e-5;
    }
    let sim5 = &runs["sim5b"].0;
    let s_star = sim5.predictions.s_star.unwrap();
    let i_star = sim5.predictions.i_star.clone().unwrap();
    let last = sim5.trajectory.last();
    let err_s = last.s.iter().fold(0.0f64, |a, v| a.max((v - s_star).abs()));
    // ((R - 1) S* - m)₊ rebuilt from the coefficients rather than taken from the solver.
    let coef = &sim5.prepared.coef;
    let rebuilt: Vec<f64> = (0..last.i.len())
        .map(|k| {
            let r = coef.beta.values()[k] / coef.gamma.values()[k];
            ((r - 1.0) * s_star - coef.m.values()[k]).max(0.0)
        })
        .collect();
    let err_i = sup_diff(&last.i, &rebuilt);
    ok &= (s_star - 3.486).abs() < 1e-3
        && err_s < 0.02
        && err_i < 0.02
        && sup_diff(&rebuilt, &i_star) < 1e-12;
    verdict(
        ok,
        format!(
            "oracle worst |ΔS*|={worst:.1e} on 20 sets; sim5b S*={s_star:.6}, |S-S*|={err_s:.1e}, |I-I*|={err_i:.1e}"
        ),
    )
}

fn criterion_8() -> Verdict {
    let sub = Grid::new(1000, 0.5, 1.0).unwrap();
    let len = 0.5;
    let c = 1.0;
    let pot = vec![c; 1000];
    let d = 0.01;
    let eig = principal_eigenvalue(&sub, d, &pot).unwrap();
    let exact = c - d * (std::f64::consts::PI / len).powi(2);
    let rel_eig = ((eig.lambda0 - exact) / exact).abs();
    let crit = critical_diffusion(&sub, &pot, 1e-10).unwrap();
    let d_exact = c * (len / std::f64::consts::PI).powi(2);
    let rel_crit = ((crit.d_critical - d_exact) / d_exact).abs();
    let ladder: Vec<f64> = (0..10)
        .map(|j| 1e-3 * 10f64.powf(j as f64 / 3.0))
        .map(|d| principal_eigenvalue(&sub, d, &pot).unwrap().lambda0)
        .collect();
    let decreasing = ladder.windows(2).all(|w| w[1] < w[0]);
    let ok = rel_eig < 1e-5 && rel_crit < 1e-5 && crit.sign_change && decreasing;
    verdict(
        ok,
        format!(
            "λ0 rel err {rel_eig:.1e}, d* rel err {rel_crit:.1e}, ladder decreasing: {decreasing}"
        ),
    )
}

/// Steps a built-in to its horizon and returns the worst per-step increase of `energy`
/// relative to `1e-8 · energy`.
fn worst_lyapunov_increase(
    name: &str,
    energy: &dyn Fn(&EpidemicState, &Coefficients, &Grid) -> f64,
) -> f64 {
    let sc = builtin(name).unwrap();
    let prep = sc.prepare().unwrap();
    let stepper = Stepper::new(sc.model, &prep.coef, &prep.grid, sc.dt).unwrap();
    let mut state = prep.init.clone();
    let steps = (sc.t_end / sc.dt).round() as usize;
    let mut prev = energy(&state, &prep.coef, &prep.grid);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..steps {
        stepper.advance(&mut state).unwrap();
        let e = energy(&state, &prep.coef, &prep.grid);
        worst = worst.max((e - prev) / (1e-8 * prev.abs().max(f64::MIN_POSITIVE)));
        prev = e;
    }
    worst
}

fn criterion_9() -> Verdict {
    let ds = |s: &EpidemicState, c: &Coefficients, g: &Grid| lyapunov_ds(s, c, g).unwrap();
    let di = |s: &EpidemicState, c: &Coefficients, g: &Grid| {
        let support = vec![true; s.n_cells()];
        lyapunov_di(s, c, g, &support, 1e-12).unwrap()
    };
    let cases: Vec<(&str, bool)> = vec![
        ("sim1a", true),
        ("sim1b", true),
        ("sim4b", false),
        ("sim5a", false),
        ("sim5b", false),
    ];
    let results: Vec<(&str, f64)> = cases
        .par_iter()
        .map(|&(name, is_ds)| {
            let w = if is_ds {
                worst_lyapunov_increase(name, &ds)
            } else {
                worst_lyapunov_increase(name, &di)
            };
            (name, w)
        })
        .collect();
    let ok = results.iter().all(|(_, w)| *w <= 1.0);
    let detail = results
        .iter()
        .map(|(n, w)| format!("{n} {:.2}", w.max(-1.0)))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(ok, format!("worst ΔE/(1e-8 E) per step: {detail}"))
}

fn property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> String {
    let mut runner = TestRunner::new(Config {
        cases: 200,
        failure_persistence: None,
        ..Config::default()
    });
    match runner.run(&strategy, test) {
        Ok(()) => String::new(),
        Err(e) => format!("{name}: {e}; "),
    }
}

fn coef_strategy(n: usize) -> impl Strategy<Value = Coefficients> {
    (
        prop::collection::vec(0.01f64..10.0, n),
        prop::collection::vec(0.01f64..10.0, n),
        prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..5.0], n),
    )
        .prop_map(|(b, g, m)| {
            Coefficients::new(
                CoefficientField::from_values(b),
                CoefficientField::from_values(g),
                CoefficientField::from_values(m),
            )
            .unwrap()
        })
}

fn criterion_10() -> Verdict {
    let mut failures = String::new();

    failures += &property(
        "reaction antisymmetry",
        (2usize..60).prop_flat_map(|n| {
            (
                coef_strategy(n),
                prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..10.0], n),
                prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..10.0], n),
            )
        }),
        |(coef, s, i)| {
            let (ds, di) = reaction_terms(&s, &i, &coef).unwrap();
            for k in 0..s.len() {
                prop_assert_eq!(ds[k].to_bits(), (-di[k]).to_bits());
            }
            Ok(())
        },
    );

    failures += &property(
        "Laplacian zero sums",
        (2usize..300, 1e-4f64..10.0, -5.0f64..5.0, 0.1f64..10.0),
        |(n, d, a, len)| {
            let grid = Grid::new(n, a, a + len).unwrap();
            let op = neumann_laplacian(&grid, d);
            let scale = d / (grid.h() * grid.h());
            for k in 0..n {
                let row = op.sub[k] + op.diag[k] + op.sup[k];
                let col = op.diag[k]
                    + if k > 0 { op.sup[k - 1] } else { 0.0 }
                    + if k + 1 < n { op.sub[k + 1] } else { 0.0 };
                prop_assert!(row.abs() <= 4.0 * f64::EPSILON * scale);
                prop_assert!(col.abs() <= 4.0 * f64::EPSILON * scale);
            }
            Ok(())
        },
    );

    failures += &property(
        "diffusion positivity",
        (3usize..200).prop_flat_map(|n| {
            (
                Just(n),
                1e-4f64..10.0,
                1e-5f64..1.0,
                prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..10.0, 1e-300f64..1e-200], n),
            )
        }),
        |(n, d, dt, u)| {
            let grid = Grid::new(n, 0.0, 1.0).unwrap();
            let solver = ImplicitDiffusion::new(&neumann_laplacian(&grid, d), dt).unwrap();
            let mut direct = u.clone();
            solver.solve_in_place(&mut direct).unwrap();
            let mut incremental = u.clone();
            solver
                .step_in_place(&mut incremental, &mut Vec::new())
                .unwrap();
            let total: f64 = u.iter().sum();
            for k in 0..n {
                prop_assert!(direct[k] >= -1e-14 * total.max(1e-300));
                prop_assert!(incremental[k] >= 0.0);
            }
            Ok(())
        },
    );

    failures += &property(
        "f-monotonicity",
        (2usize..60).prop_flat_map(|n| (coef_strategy(n), 0.1f64..10.0, 0.0f64..5.0, 1e-6f64..5.0)),
        |(coef, n_total, tau, sigma)| {
            let grid = Grid::new(coef.n_cells(), 0.0, 1.0).unwrap();
            let support = vec![true; coef.n_cells()];
            let excess: f64 = (0..coef.n_cells())
                .map(|k| grid.h() * (coef.beta.values()[k] / coef.gamma.values()[k] - 1.0).max(0.0))
                .sum();
            let lhs = sstar_objective(&coef, &grid, n_total, &support, tau + sigma)
                - sstar_objective(&coef, &grid, n_total, &support, tau);
            let rhs = sigma * (grid.measure() - excess);
            prop_assert!(lhs >= rhs - 1e-9 * (1.0 + lhs.abs()), "{} < {}", lhs, rhs);
            Ok(())
        },
    );

    failures += &property(
        "S* increasing in N",
        (2usize..60).prop_flat_map(|n| {
            (
                prop::collection::vec(0.1f64..3.0, n),
                prop::collection::vec(0.3f64..1.9, n),
                prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..2.0], n),
                0.1f64..5.0,
                0.01f64..5.0,
            )
        }),
        |(gamma, ratio, m, n1, dn)| {
            let n = gamma.len();
            let beta: Vec<f64> = gamma.iter().zip(&ratio).map(|(g, r)| g * r).collect();
            let coef = Coefficients::new(
                CoefficientField::from_values(beta),
                CoefficientField::from_values(gamma),
                CoefficientField::from_values(m),
            )
            .unwrap();
            let grid = Grid::new(n, 0.0, 1.0).unwrap();
            let support = vec![true; n];
            let lo = solve_sstar(&coef, &grid, n1, &support).unwrap().s_star;
            let hi = solve_sstar(&coef, &grid, n1 + dn, &support).unwrap().s_star;
            prop_assert!(hi > lo, "{} <= {}", hi, lo);
            Ok(())
        },
    );

    failures += &property(
        "R0/risk consistency at m=0",
        (2usize..60).prop_flat_map(|n| {
            (
                prop::collection::vec(0.1f64..5.0, n),
                prop::collection::vec(prop_oneof![0.2f64..0.99, Just(1.0), 1.01f64..3.0], n),
                prop::collection::vec(0.01f64..5.0, n),
            )
        }),
        |(gamma, ratio, n_profile)| {
            let n = gamma.len();
            let beta: Vec<f64> = gamma
                .iter()
                .zip(&ratio)
                .map(|(g, r)| if *r == 1.0 { *g } else { g * r })
                .collect();
            let coef = Coefficients::new(
                CoefficientField::from_values(beta.clone()),
                CoefficientField::from_values(gamma.clone()),
                CoefficientField::from_values(vec![0.0; n]),
            )
            .unwrap();
            let masks = classify_regions(&coef, 1e-12).unwrap();
            for k in 0..n {
                let r0 = local_r0(beta[k], gamma[k], 0.0, n_profile[k]);
                prop_assert_eq!(r0 > 1.0, masks.high[k]);
                prop_assert_eq!(r0 < 1.0, masks.low[k]);
                prop_assert_eq!(r0 == 1.0, masks.moderate[k]);
            }
            Ok(())
        },
    );

    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            "6 properties x 200 cases, no failures".to_string()
        } else {
            failures
        },
    )
}

/// Reported only: the full model with tiny d_S should track the immobile-susceptible limit.
fn small_ds_comparison(runs: &BTreeMap<&str, (SimOutcome, Duration)>) -> String {
    let mut sc = builtin("sim1a").unwrap();
    sc.model = ModelKind::Full {
        d_s: 1e-4,
        d_i: 1.0,
    };
    match simulate(&sc) {
        Ok(full) => {
            let ds = runs["sim1a"].0.trajectory.last();
            let f = full.trajectory.last();
            format!(
                "full model d_S=1e-4 vs immobile S (sim1a): |ΔS|={:.2e}, |ΔI|={:.2e}",
                sup_diff(&f.s, &ds.s),
                sup_diff(&f.i, &ds.i)
            )
        }
        Err(e) => format!("full model d_S=1e-4 failed: {e}"),
    }
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let runs = run_builtins();
    announce(&format!(
        "built-in runs finished in {:.1}s",
        start.elapsed().as_secs_f64()
    ));

    let checks: Vec<(&str, Verdict)> = vec![
        ("1 threshold integrals", criterion_1()),
        ("2 equilibrium residual", criterion_2()),
        ("3 conservation", criterion_3(&runs)),
        ("4 simulation 1 dichotomy", criterion_4(&runs)),
        ("5 simulation 4 dichotomy", criterion_5(&runs)),
        ("6 S homogenization", criterion_6(&runs)),
        ("7 S* oracle equivalence", criterion_7(&runs)),
        ("8 eigenvalue analytic check", criterion_8()),
        ("9 Lyapunov dissipation", criterion_9()),
        ("10 property suite", criterion_10()),
    ];
    let mut failed = Vec::new();
    for (name, v) in &checks {
        announce(&format!(
            "[{}] criterion {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        ));
        if !v.passed {
            failed.push(*name);
        }
    }
    announce(&format!("[INFO] {}", small_ds_comparison(&runs)));
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
