//! `arcmetric`: lengths, distances and horofunctions on bordered hyperbolic
//! surfaces, plus the scaling-path experiments.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage, 3 domain error,
//! 4 unsupported class, surface or coordinates.

mod config;
mod experiments;
mod io;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use arcmetric::geometry::{arc_length_via_double, double_point, length, FNPoint};
use arcmetric::lamination::{doubled_dt, dt_encode};
use arcmetric::metric::{arc_metric_with, Horofunction, MetricValue};
use arcmetric::topology::{enumerate_panel, Surface};
use arcmetric::Exec;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::config::load_config;
use crate::io::{dt_to_json, parse_numbers, parse_signature, point_from_flat, read_lamination, read_point, to_json, Fail, Outcome};

#[derive(Parser)]
#[command(name = "arcmetric", version, about = "Arc-metric computations on bordered hyperbolic surfaces")]
struct Cli {
    /// Run every sweep on one thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

/// Picks the surface. `--pants` and `--torus` may carry the point itself.
#[derive(Args)]
struct SurfaceArgs {
    /// Pair of pants, optionally with boundary lengths B1,B2,B3
    #[arg(long, num_args = 0..=1, value_name = "B1,B2,B3", conflicts_with_all = ["torus", "surface"])]
    pants: Option<Option<String>>,
    /// One-holed torus, optionally with length, twist and boundary length
    #[arg(long, num_args = 0..=1, value_name = "L,TWIST,B", conflicts_with = "surface")]
    torus: Option<Option<String>>,
    /// Any signature: genus, punctures, boundaries
    #[arg(long, value_name = "G,N,B")]
    surface: Option<String>,
}

impl SurfaceArgs {
    fn resolve(&self) -> Outcome<(Arc<Surface>, Option<FNPoint>)> {
        let (sig, coords) = match (&self.pants, &self.torus, &self.surface) {
            (Some(v), _, _) => ("0,0,3", v.as_deref()),
            (_, Some(v), _) => ("1,0,1", v.as_deref()),
            (_, _, Some(s)) => (s.as_str(), None),
            _ => return Err(Fail::Usage("choose a surface with --pants, --torus or --surface".into())),
        };
        let s = parse_signature(sig)?;
        let x = coords.map(|c| point_from_flat(&s, &parse_numbers(c)?)).transpose()?;
        Ok((s, x))
    }

    /// The point given by `--x`, or else the one attached to the surface flag.
    fn point(&self, x: Option<&str>) -> Outcome<FNPoint> {
        let (s, inline) = self.resolve()?;
        match (x, inline) {
            (Some(text), None) => read_point(&s, text),
            (None, Some(p)) => Ok(p),
            (Some(_), Some(_)) => Err(Fail::Usage("give the point either with the surface flag or with --x".into())),
            (None, None) => Err(Fail::Usage("no point given: use --x or attach coordinates to --pants/--torus".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Length of an orthogeodesic arc
    ArcLength {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Point as flattened coordinates, inline JSON or a JSON file
        #[arg(long)]
        x: Option<String>,
        /// Arc id such as a12, a33 or a[1,2]
        #[arg(long)]
        arc: String,
        /// Evaluate through the holonomy of the doubled surface
        #[arg(long)]
        via_double: bool,
    },
    /// Length of a closed geodesic
    CurveLength {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        x: Option<String>,
        /// Curve id such as B1, C1 or g[2,1]
        #[arg(long)]
        curve: String,
    },
    /// Coordinates of the doubled point, and of the doubled lamination with --mu
    Double {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        x: Option<String>,
        /// Lamination such as a12:1,B3:0.5, inline JSON or a JSON file
        #[arg(long)]
        mu: Option<String>,
    },
    /// d(X, Y) and d(Y, X) over a panel, with maximizers
    Distance {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Panel complexity
        #[arg(long, default_value_t = 0)]
        panel_n: u32,
    },
    /// Horofunction based at --base, attached to --x or to --mu, evaluated at --y
    Horofn {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        base: String,
        #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
        x: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 0)]
        panel_n: u32,
    },
    /// Scaling-path experiments driven by a JSON config
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (JSON)
    config: PathBuf,
    /// CSV destination; overrides the config, defaults to stdout
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Summary destination; overrides the config, defaults to stderr
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Deviation of target lengths from e^t i(mu, target) along the path
    Inequality(RunArgs),
    /// Projective distance between the path and i(mu, .)
    BoundaryLimit(RunArgs),
    /// Uniform distance between interior and boundary horofunctions on probes
    HoroConverge(RunArgs),
    /// Search for a point separating two normalized laminations
    Separate(RunArgs),
    /// Coordinate and sphere dimensions, with a round-trip count
    DtSphere {
        /// Signature G,N,B
        #[arg(long, required_unless_present = "config")]
        surface: Option<String>,
        /// Config supplying surface, samples, seed and tolerances
        #[arg(long, conflicts_with = "surface")]
        config: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn metric_json(v: &MetricValue, s: &Surface) -> serde_json::Value {
    json!({"value": v.value, "maximizer": s.class_id(&v.maximizer), "panel_N": v.panel_n})
}

fn write_to(path: &Path, text: &str) -> Outcome<()> {
    std::fs::write(path, text).map_err(|e| Fail::Io(format!("cannot write {}: {e}", path.display())))
}

fn run_experiment(
    args: &RunArgs,
    exec: Exec,
    f: fn(&config::ExperimentConfig, Exec) -> Outcome<experiments::Output>,
) -> Outcome<String> {
    let cfg = load_config(&args.config)?;
    let out = f(&cfg, exec)?;
    let csv = out.csv.map(|t| t.render()).transpose()?;
    let summary = to_json(&out.summary);
    let mut stdout = String::new();
    match (csv, args.csv.as_ref().or(cfg.output.csv.as_ref())) {
        (Some(text), Some(path)) => write_to(path, &text)?,
        (Some(text), None) => stdout = text,
        (None, _) => {}
    }
    match args.summary.as_ref().or(cfg.output.summary.as_ref()) {
        Some(path) => write_to(path, &(summary + "\n"))?,
        None => eprintln!("{summary}"),
    }
    Ok(stdout.trim_end().to_string())
}

fn run(cli: Cli) -> Outcome<String> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match cli.command {
        Command::ArcLength { surface, x, arc, via_double } => {
            let x = surface.point(x.as_deref())?;
            let c = x.surface.parse_class(&arc)?;
            if !c.is_arc() {
                return Err(Fail::Usage(format!("{arc} is a curve; use curve-length")));
            }
            let value = if via_double { arc_length_via_double(&x, &c)? } else { length(&x, &c)? };
            Ok(to_json(&json!({"class": x.surface.class_id(&c), "value": value})))
        }
        Command::CurveLength { surface, x, curve } => {
            let x = surface.point(x.as_deref())?;
            let c = x.surface.parse_class(&curve)?;
            if c.is_arc() {
                return Err(Fail::Usage(format!("{curve} is an arc; use arc-length")));
            }
            Ok(to_json(&json!({"class": x.surface.class_id(&c), "value": length(&x, &c)?})))
        }
        Command::Double { surface, x, mu } => {
            let x = surface.point(x.as_deref())?;
            let xd = double_point(&x);
            let mut coords = serde_json::Map::new();
            for &(c, l, t) in &xd.coords {
                coords.insert(c.label(), json!({"length": l, "twist": t}));
            }
            let mut out = json!({
                "genus": xd.double.genus,
                "punctures": xd.double.punctures,
                "point": coords,
            });
            if let Some(m) = mu {
                let mu = read_lamination(&x.surface, &m)?;
                let mut dt = serde_json::Map::new();
                for (c, i, theta) in doubled_dt(&mu) {
                    dt.insert(c.label(), json!([i, theta]));
                }
                out["coordinates"] = json!(dt_to_json(&x.surface, &dt_encode(&mu)));
                out["lamination"] = dt.into();
            }
            Ok(to_json(&out))
        }
        Command::Distance { surface, x, y, panel_n } => {
            let x = surface.point(Some(&x))?;
            let y = surface.point(Some(&y))?;
            let panel = enumerate_panel(&x.surface, panel_n);
            let fwd = arc_metric_with(&x, &y, &panel, exec)?;
            let bwd = arc_metric_with(&y, &x, &panel, exec)?;
            Ok(to_json(&json!({
                "forward": metric_json(&fwd, &x.surface),
                "backward": metric_json(&bwd, &x.surface),
            })))
        }
        Command::Horofn { surface, base, x, mu, y, panel_n } => {
            let base = surface.point(Some(&base))?;
            let y = surface.point(Some(&y))?;
            let s = base.surface.clone();
            let panel = enumerate_panel(&s, panel_n);
            let (h, kind) = match (x, mu) {
                (Some(x), _) => (Horofunction::interior(surface.point(Some(&x))?, base, panel, exec)?, "interior"),
                (None, Some(m)) => (Horofunction::boundary(read_lamination(&s, &m)?, base, panel, exec)?, "boundary"),
                (None, None) => unreachable!("clap requires --x or --mu"),
            };
            Ok(to_json(&json!({"kind": kind, "value": h.eval(&y, exec)?, "panel_N": panel_n})))
        }
        Command::Experiment(cmd) => match cmd {
            ExperimentCmd::Inequality(a) => run_experiment(&a, exec, experiments::inequality),
            ExperimentCmd::BoundaryLimit(a) => run_experiment(&a, exec, experiments::boundary_limit),
            ExperimentCmd::HoroConverge(a) => run_experiment(&a, exec, experiments::horo_converge),
            ExperimentCmd::Separate(a) => run_experiment(&a, exec, experiments::separate),
            ExperimentCmd::DtSphere { surface, config, samples, seed } => {
                let (s, cfg_samples, cfg_seed, tol) = match (surface, config) {
                    (Some(sig), _) => (parse_signature(&sig)?, None, None, 1e-9),
                    (None, Some(path)) => {
                        let cfg = load_config(&path)?;
                        (cfg.surface()?, cfg.samples, cfg.seed, cfg.tolerances.length)
                    }
                    (None, None) => unreachable!("clap requires --surface or --config"),
                };
                let rep = experiments::dt_sphere(
                    s,
                    samples.or(cfg_samples).unwrap_or(200),
                    seed.or(cfg_seed).unwrap_or(1),
                    tol,
                )?;
                Ok(to_json(&rep))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                let mut stdout = std::io::stdout().lock();
                if writeln!(stdout, "{out}").is_err() {
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
