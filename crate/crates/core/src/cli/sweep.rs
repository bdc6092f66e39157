//! Parameter sweeps over `(beta_s, beta_h)` grids.
//!
//! A sweep spec is line-oriented like the topology format:
//!
//! ```text
//! topology linear3          # a named topology, or a path to a topology file
//! topology triangle
//! method closedform montecarlo
//! beta_h -1 0 1
//! beta_s_log 0.1 10 20      # start stop points, log-spaced
//! seed 7
//! samples 100000
//! max_events 1000000000
//! ```
//!
//! Named topologies take `beta_h` and `beta_s` as their field and coupling
//! at `beta = 1`. File topologies keep their graph, use their couplings as
//! weights multiplied by `beta_s`, and have every field replaced by
//! `beta_h`. Rows come out ordered by topology, method, `beta_h`, `beta_s`.

use std::path::Path;

use rayon::prelude::*;

use crate::closedform::{ClosedFormInputs, NamedTopology};
use crate::dynamics::{estimate_retention, SimulationConfig, DEFAULT_MAX_EVENTS};
use crate::error::{Error, Result};
use crate::exact::retention_time_exact;
use crate::model::ModelParams;
use crate::topology::Topology;

pub const CSV_HEADER: [&str; 8] = [
    "topology",
    "method",
    "beta_s",
    "beta_h",
    "tau_events",
    "tau_events_per_dipole",
    "std_error",
    "n_censored",
];

const DEFAULT_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Exact,
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closedform",
            Method::Exact => "exact",
            Method::MonteCarlo => "montecarlo",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closedform" => Ok(Method::ClosedForm),
            "exact" => Ok(Method::Exact),
            "montecarlo" => Ok(Method::MonteCarlo),
            other => Err(Error::Input(format!(
                "unknown method `{other}` (expected closedform, exact or montecarlo)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TopologyRef {
    Named(NamedTopology),
    File { label: String, topology: Topology },
}

impl TopologyRef {
    pub fn label(&self) -> &str {
        match self {
            TopologyRef::Named(t) => t.name(),
            TopologyRef::File { label, .. } => label,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            TopologyRef::Named(t) => t.n(),
            TopologyRef::File { topology, .. } => topology.n(),
        }
    }

    /// Dimensionless topology for one grid point, evaluated at `beta = 1`.
    pub fn instantiate(&self, beta_h: f64, beta_s: f64) -> Result<Topology> {
        match self {
            TopologyRef::Named(t) => Ok(t.topology(beta_h, beta_s)),
            TopologyRef::File { topology, .. } => topology.scaled(1.0, beta_s)?.replace_field(beta_h),
        }
    }

    /// Resolves a name, else reads `reference` as a path relative to `base`.
    pub fn resolve(reference: &str, base: &Path) -> Result<Self> {
        if let Ok(named) = reference.parse::<NamedTopology>() {
            return Ok(TopologyRef::Named(named));
        }
        let path = base.join(reference);
        if !path.exists() {
            return Err(Error::Input(format!(
                "topology `{reference}` is neither a known name nor an existing file"
            )));
        }
        Ok(TopologyRef::File {
            label: reference.to_string(),
            topology: Topology::from_path(&path)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BetaSGrid {
    List(Vec<f64>),
    Log { start: f64, stop: f64, points: usize },
}

impl BetaSGrid {
    pub fn log(start: f64, stop: f64, points: usize) -> Result<Self> {
        if !(start > 0.0 && stop > 0.0 && start.is_finite() && stop.is_finite()) {
            return Err(Error::Input(format!(
                "log-spaced beta_s needs positive finite bounds, got {start} and {stop}"
            )));
        }
        if points < 2 {
            return Err(Error::Input(format!(
                "log-spaced beta_s needs at least 2 points, got {points}"
            )));
        }
        Ok(BetaSGrid::Log { start, stop, points })
    }

    pub fn values(&self) -> Vec<f64> {
        match *self {
            BetaSGrid::List(ref v) => v.clone(),
            BetaSGrid::Log { start, stop, points } => {
                let (a, b) = (start.ln(), stop.ln());
                let last = (points - 1) as f64;
                (0..points)
                    .map(|k| match k {
                        0 => start,
                        k if k == points - 1 => stop,
                        k => (a + (b - a) * k as f64 / last).exp(),
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub topologies: Vec<TopologyRef>,
    pub methods: Vec<Method>,
    pub beta_h: Vec<f64>,
    pub beta_s: BetaSGrid,
    pub simulation: SimulationConfig,
}

impl SweepSpec {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, &base)
    }

    /// Parses spec text; file topologies are resolved relative to `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut topologies = Vec::new();
        let mut methods: Vec<Method> = Vec::new();
        let mut beta_h: Option<Vec<f64>> = None;
        let mut beta_s: Option<BetaSGrid> = None;
        let (mut seed, mut samples, mut max_events) = (0u64, DEFAULT_SAMPLES, DEFAULT_MAX_EVENTS);

        for (idx, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: idx + 1,
                text: raw.trim().to_string(),
                message,
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let args = &tokens[1..];
            let floats = || -> Result<Vec<f64>> {
                args.iter()
                    .map(|t| match t.parse::<f64>() {
                        Ok(v) if v.is_finite() => Ok(v),
                        _ => Err(err(format!("bad number `{t}`"))),
                    })
                    .collect()
            };
            let integer = || -> Result<u64> {
                match args {
                    [v] => v.parse().map_err(|_| err(format!("bad integer `{v}`"))),
                    _ => Err(err(format!("expected `{} <int>`", tokens[0]))),
                }
            };

            match tokens[0] {
                "topology" => {
                    let [reference] = args else {
                        return Err(err("expected `topology <name-or-path>`".into()));
                    };
                    topologies.push(TopologyRef::resolve(reference, base).map_err(|e| err(e.to_string()))?);
                }
                "method" => {
                    if args.is_empty() {
                        return Err(err("expected `method <name> ...`".into()));
                    }
                    for m in args {
                        let m: Method = m.parse().map_err(|e: Error| err(e.to_string()))?;
                        if !methods.contains(&m) {
                            methods.push(m);
                        }
                    }
                }
                "beta_h" => beta_h = Some(floats()?),
                "beta_s_list" => beta_s = Some(BetaSGrid::List(floats()?)),
                "beta_s_log" => {
                    let [start, stop, points] = args else {
                        return Err(err("expected `beta_s_log <start> <stop> <points>`".into()));
                    };
                    let parse = |t: &str| t.parse::<f64>().map_err(|_| err(format!("bad number `{t}`")));
                    let points: usize = points.parse().map_err(|_| err(format!("bad integer `{points}`")))?;
                    beta_s = Some(BetaSGrid::log(parse(start)?, parse(stop)?, points).map_err(|e| err(e.to_string()))?);
                }
                "seed" => seed = integer()?,
                "samples" => samples = integer()?,
                "max_events" => max_events = integer()?,
                key => return Err(err(format!("unknown key `{key}`"))),
            }
        }

        let beta_h = beta_h.unwrap_or_default();
        let beta_s = beta_s.unwrap_or(BetaSGrid::List(Vec::new()));
        if topologies.is_empty() || beta_h.is_empty() || beta_s.values().is_empty() {
            return Err(Error::Input("empty sweep".into()));
        }
        if methods.is_empty() {
            return Err(Error::Input("missing `method` line".into()));
        }
        if methods.contains(&Method::ClosedForm) {
            if let Some(file) = topologies.iter().find(|t| matches!(t, TopologyRef::File { .. })) {
                return Err(Error::Input(format!(
                    "no closed form for file topology `{}`",
                    file.label()
                )));
            }
        }
        let simulation = SimulationConfig::new(seed, samples)?.with_max_events(max_events)?;

        Ok(Self {
            topologies,
            methods,
            beta_h,
            beta_s,
            simulation,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub topology: String,
    pub method: Method,
    pub beta_s: f64,
    pub beta_h: f64,
    /// `None` when every Monte Carlo trajectory was censored.
    pub tau_events: Option<f64>,
    pub tau_events_per_dipole: Option<f64>,
    pub std_error: Option<f64>,
    pub n_censored: Option<u64>,
}

impl SweepRow {
    pub fn to_record(&self) -> [String; 8] {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.topology.clone(),
            self.method.name().to_string(),
            self.beta_s.to_string(),
            self.beta_h.to_string(),
            opt(self.tau_events),
            opt(self.tau_events_per_dipole),
            opt(self.std_error),
            self.n_censored.map(|c| c.to_string()).unwrap_or_default(),
        ]
    }
}

/// Evaluates one grid point with one method.
pub fn evaluate_point(
    topology: &TopologyRef,
    method: Method,
    beta_h: f64,
    beta_s: f64,
    simulation: &SimulationConfig,
) -> Result<SweepRow> {
    let n = topology.n() as f64;
    let mut row = SweepRow {
        topology: topology.label().to_string(),
        method,
        beta_s,
        beta_h,
        tau_events: None,
        tau_events_per_dipole: None,
        std_error: None,
        n_censored: None,
    };
    let unit = ModelParams::default();
    match method {
        Method::ClosedForm => {
            let TopologyRef::Named(named) = topology else {
                return Err(Error::Input(format!("no closed form for `{}`", topology.label())));
            };
            row.tau_events = Some(named.tau(ClosedFormInputs::new(beta_h, beta_s)?));
        }
        Method::Exact => {
            row.tau_events = Some(retention_time_exact(&topology.instantiate(beta_h, beta_s)?, &unit)?);
        }
        Method::MonteCarlo => match estimate_retention(&topology.instantiate(beta_h, beta_s)?, &unit, simulation) {
            Ok(est) => {
                row.tau_events = Some(est.mean_events);
                row.std_error = Some(est.std_error);
                row.n_censored = Some(est.n_censored);
            }
            Err(Error::NoEstimate { n_censored }) => row.n_censored = Some(n_censored),
            Err(e) => return Err(e),
        },
    }
    row.tau_events_per_dipole = row.tau_events.map(|t| t / n);
    Ok(row)
}

/// Evaluates every grid point (concurrently) and returns rows in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let beta_s = spec.beta_s.values();
    let mut points = Vec::new();
    for topology in &spec.topologies {
        for &method in &spec.methods {
            for &bh in &spec.beta_h {
                for &bs in &beta_s {
                    points.push((topology, method, bh, bs));
                }
            }
        }
    }
    points
        .into_par_iter()
        .map(|(topology, method, bh, bs)| evaluate_point(topology, method, bh, bs, &spec.simulation))
        .collect()
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let to_io = |e: csv::Error| Error::io(path, e);
    let mut writer = csv::Writer::from_path(path).map_err(to_io)?;
    writer.write_record(CSV_HEADER).map_err(to_io)?;
    for row in rows {
        writer.write_record(row.to_record()).map_err(to_io)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<SweepSpec> {
        SweepSpec::parse(text, Path::new("."))
    }

    #[test]
    fn log_grid_endpoints_and_spacing() {
        let v = BetaSGrid::log(0.1, 10.0, 5).unwrap().values();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[4], 10.0);
        assert!((v[2] - 1.0).abs() < 1e-12);
        assert!(BetaSGrid::log(0.0, 1.0, 3).is_err());
        assert!(BetaSGrid::log(0.1, 1.0, 1).is_err());
    }

    #[test]
    fn parses_full_spec() {
        let spec = parse(
            "topology triangle\ntopology single\nmethod closedform exact\nbeta_h -1 0 1\n\
             beta_s_list 0 0.5\nseed 9\nsamples 50\nmax_events 1000\n",
        )
        .unwrap();
        assert_eq!(spec.topologies.len(), 2);
        assert_eq!(spec.methods, vec![Method::ClosedForm, Method::Exact]);
        assert_eq!(spec.beta_h, vec![-1.0, 0.0, 1.0]);
        assert_eq!(spec.simulation.seed, 9);
        assert_eq!(spec.simulation.n_samples, 50);
        assert_eq!(spec.simulation.max_events, 1000);
    }

    #[test]
    fn empty_grids_are_rejected() {
        for text in [
            "topology single\nmethod exact\nbeta_h 0\nbeta_s_list\n",
            "topology single\nmethod exact\nbeta_h\nbeta_s_list 1\n",
            "method exact\nbeta_h 0\nbeta_s_list 1\n",
            "topology single\nmethod exact\nbeta_h 0\n",
        ] {
            match parse(text) {
                Err(Error::Input(msg)) => assert_eq!(msg, "empty sweep"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(parse("topology square\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse("topology single\nmethod magic\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse("frobnicate 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("beta_s_log 0 1 4\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse("topology single\nbeta_h 0\nbeta_s_list 1\n"),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn rows_follow_grid_order() {
        let spec =
            parse("topology linear3\ntopology single\nmethod closedform\nbeta_h 0 1\nbeta_s_list 0 1\n").unwrap();
        let rows = run_sweep(&spec).unwrap();
        let keys: Vec<(&str, f64, f64)> = rows.iter().map(|r| (r.topology.as_str(), r.beta_h, r.beta_s)).collect();
        assert_eq!(
            keys,
            vec![
                ("linear3", 0.0, 0.0),
                ("linear3", 0.0, 1.0),
                ("linear3", 1.0, 0.0),
                ("linear3", 1.0, 1.0),
                ("single", 0.0, 0.0),
                ("single", 0.0, 1.0),
                ("single", 1.0, 0.0),
                ("single", 1.0, 1.0),
            ]
        );
        assert_eq!(rows[0].tau_events, Some(6.0));
        assert_eq!(rows[0].tau_events_per_dipole, Some(2.0));
        assert_eq!(rows[0].std_error, None);
    }

    #[test]
    fn all_censored_point_keeps_going() {
        let spec =
            parse("topology triangle\nmethod montecarlo\nbeta_h 3\nbeta_s_list 2\nsamples 10\nmax_events 2\n").unwrap();
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows[0].tau_events, None);
        assert_eq!(rows[0].n_censored, Some(10));
        assert_eq!(rows[0].to_record()[4], "");
    }
}
