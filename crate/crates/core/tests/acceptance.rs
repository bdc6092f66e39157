//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p glauber-retention --test acceptance`.

mod common;

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{detailed_balance_worst, random_topology, rel, value_iteration, LINEAR_S1_H0, TRIANGLE_S1_H0};
use glauber_retention::cli::{cmd_simulate, BetaSGrid, ModelSource};
use glauber_retention::closedform::{tau_linear, tau_single, tau_three_uncoupled, tau_triangle};
use glauber_retention::dynamics::estimate_retention;
use glauber_retention::exact::retention_time_exact;
use glauber_retention::{ModelParams, SimulationConfig, Topology};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn unit() -> ModelParams {
    ModelParams::new(1.0).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn timed(limit: Duration, f: impl Fn() -> Outcome) -> Outcome {
    // warm-up, then time the second call
    f()?;
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    check(elapsed < limit, format!("{detail}; {elapsed:?} (limit {limit:?})"))
}

fn constants() -> Outcome {
    let single = tau_single(0.0);
    let uncoupled = tau_three_uncoupled(0.0);
    check(
        (single - 2.0).abs() <= 1e-12 && (uncoupled - 6.0).abs() <= 1e-12,
        format!("single {single}, three uncoupled {uncoupled}"),
    )
}

fn field_law() -> Outcome {
    let mut worst = 0.0f64;
    for bh in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let exact = retention_time_exact(&Topology::single(bh), &unit()).map_err(|e| e.to_string())?;
        worst = worst.max(rel(exact, (2.0 * bh).exp() + 1.0));
    }
    check(worst <= 1e-12, format!("worst relative error {worst:.1e}"))
}

fn three_way_agreement() -> Outcome {
    let grid = BetaSGrid::log(0.1, 2.5, 8).unwrap().values();
    let mut worst_formula = 0.0f64;
    let mut worst_z = 0.0f64;
    for (k, &bs) in grid.iter().enumerate() {
        let topo = Topology::linear3(0.0, bs);
        let exact = retention_time_exact(&topo, &unit()).map_err(|e| e.to_string())?;
        let formula = tau_linear(0.0, bs);
        worst_formula = worst_formula.max(rel(formula, exact));
        let config = SimulationConfig::new(2024 + k as u64, 100_000).unwrap();
        let est = estimate_retention(&topo, &unit(), &config).map_err(|e| e.to_string())?;
        if est.n_censored > 0 {
            return Err(format!("{} censored samples at beta_s {bs}", est.n_censored));
        }
        worst_z = worst_z.max((est.mean_events - exact).abs() / est.std_error);
    }
    check(
        worst_formula <= 1e-9 && worst_z <= 3.0,
        format!("closed form vs exact {worst_formula:.1e}, worst MC deviation {worst_z:.2} SE"),
    )
}

fn exponents() -> Outcome {
    let slope = |f: fn(f64, f64) -> f64| (f(0.0, 6.0).ln() - f(0.0, 4.0).ln()) / 2.0;
    let triangle = slope(tau_triangle);
    let linear = slope(tau_linear);
    check(
        (triangle - 4.0).abs() <= 0.08 && (linear - 2.0).abs() <= 0.04,
        format!("triangle slope {triangle:.4}, linear slope {linear:.4}"),
    )
}

fn negative_field() -> Outcome {
    let single = tau_single(-10.0);
    let per_dipole = tau_three_uncoupled(-10.0) / 3.0;
    check(
        (single - 1.0).abs() <= 1e-8 && (per_dipole - 5.0 / 6.0).abs() <= 1e-8,
        format!("single {single:.10}, three uncoupled per dipole {per_dipole:.10}"),
    )
}

fn detailed_balance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for k in 0..50 {
        let topo = random_topology(&mut rng, 1 + k % 5, 2.0);
        worst = worst.max(detailed_balance_worst(&topo, 1.0));
    }
    check(
        worst <= 1e-12,
        format!("50 topologies, worst relative violation {worst:.1e}"),
    )
}

fn oracle_values() -> Outcome {
    let mut parts = Vec::new();
    for (name, topo, frozen, rounded) in [
        ("triangle", Topology::triangle(0.0, 1.0), TRIANGLE_S1_H0, 113.20),
        ("linear", Topology::linear3(0.0, 1.0), LINEAR_S1_H0, 31.80),
    ] {
        let (t, residual) = value_iteration(&topo, 1.0, true, 1e-12);
        let t_max = t.iter().cloned().fold(0.0, f64::max);
        let oracle_ok = residual <= 1e-12 && (t[7] - frozen).abs() <= 1.01 * t_max * t_max * residual;
        let exact = retention_time_exact(&topo, &unit()).map_err(|e| e.to_string())?;
        if !oracle_ok || rel(exact, frozen) > 1e-12 || (exact - rounded).abs() >= 0.005 {
            return Err(format!(
                "{name}: oracle {} (residual {residual:.1e}), exact {exact}",
                t[7]
            ));
        }
        parts.push(format!("{name} {exact:.2} (oracle residual {residual:.1e})"));
    }
    Ok(parts.join(", "))
}

fn determinism() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("topologies")
        .join("triangle.topo");
    let config = SimulationConfig::new(7, 50_000).unwrap();
    let source = ModelSource::default();
    let run = |serial| cmd_simulate(&path, &source, &config, serial).map_err(|e| e.to_string());
    let first = run(false)?;
    let same = first == run(false)? && first == run(true)?;

    let binary = || {
        Command::new(env!("CARGO_BIN_EXE_glauber-retention"))
            .arg("simulate")
            .arg(&path)
            .args(["--seed", "7", "--samples", "50000"])
            .output()
            .map(|o| o.stdout)
            .map_err(|e| e.to_string())
    };
    let bin_first = binary()?;
    let bin_same = bin_first == binary()? && bin_first == first.as_bytes();
    check(
        same && bin_same,
        format!("library runs identical: {same}, binary runs identical: {bin_same}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 reference constants",
            Box::new(|| timed(Duration::from_millis(1), constants)),
        ),
        (
            "2 single-dipole field law",
            Box::new(|| timed(Duration::from_millis(1), field_law)),
        ),
        (
            "3 linear chain three-way agreement",
            Box::new(|| timed(Duration::from_secs(60), three_way_agreement)),
        ),
        (
            "4 coupling exponents",
            Box::new(|| timed(Duration::from_millis(1), exponents)),
        ),
        ("5 negative-field limit", Box::new(negative_field)),
        (
            "6 detailed balance",
            Box::new(|| timed(Duration::from_secs(5), detailed_balance)),
        ),
        ("7 oracle-confirmed values", Box::new(oracle_values)),
        ("8 determinism", Box::new(determinism)),
    ];
    let mut failures = 0;
    for (name, criterion) in &criteria {
        match criterion() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
