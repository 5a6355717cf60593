//! The `experiment` verbs. Each returns an optional CSV table and a JSON
//! summary; nothing is written until the whole run has succeeded.

use std::sync::Arc;

use arcmetric::asymptotics::{
    boundary_convergence, default_grid, horo_convergence, intersection_vector, scaling_path,
    separation_experiment, verify_key_inequality, PathSpec, DEFAULT_CAP,
};
use arcmetric::lamination::{
    coordinate_dimension, doubled_dt, doubled_symmetry_holds, dt_decode, dt_encode, normalize, sphere_dimension,
    DTCoordinates,
};
use arcmetric::metric::{detect_limit, sup_distance, Limit};
use arcmetric::topology::{enumerate_panel, Class, Surface};
use arcmetric::Exec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::config::ExperimentConfig;
use crate::io::{point_to_json, sig9, Fail, Outcome, Table};

pub struct Output {
    pub csv: Option<Table>,
    pub summary: serde_json::Value,
}

fn regimes(spec: &PathSpec, surface: &Surface) -> serde_json::Value {
    let mut m = serde_json::Map::new();
    let all = spec
        .interior
        .iter()
        .enumerate()
        .map(|(i, r)| (Class::Interior(i), r))
        .chain(spec.boundary.iter().enumerate().map(|(j, r)| (Class::Boundary(j), r)));
    for (c, r) in all {
        m.insert(surface.class_id(&c), json!(r.name()));
    }
    m.into()
}

fn path_spec(cfg: &ExperimentConfig, surface: &Arc<Surface>, verb: &str) -> Outcome<PathSpec> {
    let mu = cfg.lamination(surface, "mu", verb)?;
    let base = cfg.point(surface, "base", verb)?;
    Ok(PathSpec::from_lamination(mu, base, cfg.grid(default_grid())?)?)
}

pub fn inequality(cfg: &ExperimentConfig, exec: Exec) -> Outcome<Output> {
    let verb = "inequality";
    let s = cfg.surface()?;
    let spec = path_spec(cfg, &s, verb)?;
    let panel = enumerate_panel(&s, cfg.panel_n);
    let targets = match &cfg.targets {
        None => panel.entries.clone(),
        Some(ids) => ids.iter().map(|id| s.parse_class(id)).collect::<Result<Vec<_>, _>>()?,
    };
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let rep = verify_key_inequality(&spec, &targets, cap, exec)?;

    let mut header = vec!["t".to_string(), "panel_N".to_string()];
    header.extend(rep.targets.iter().map(|d| d.id.clone()));
    let mut table = Table::new(header);
    for (k, &t) in rep.grid.iter().enumerate() {
        let mut row = vec![sig9(t), cfg.panel_n.to_string()];
        row.extend(rep.targets.iter().map(|d| sig9(d.deviations[k])));
        table.push(row);
    }
    let targets: Vec<_> = rep
        .targets
        .iter()
        .map(|d| {
            json!({
                "id": d.id,
                "intersection": d.intersection,
                "max_lower": d.max_lower,
                "max_upper": d.max_upper,
                "final_deviation": d.deviations.last(),
                "exceeds_cap": d.exceeds_cap,
                "exploratory": d.exploratory,
            })
        })
        .collect();
    let skipped: Vec<_> = rep.skipped.iter().map(|(id, why)| json!({"id": id, "reason": why})).collect();
    let summary = json!({
        "experiment": verb,
        "panel_N": cfg.panel_n,
        "cap": cap,
        "regimes": regimes(&spec, &s),
        "flagged": rep.targets.iter().filter(|d| d.exceeds_cap).count(),
        "targets": targets,
        "skipped": skipped,
    });
    Ok(Output { csv: Some(table), summary })
}

pub fn boundary_limit(cfg: &ExperimentConfig, exec: Exec) -> Outcome<Output> {
    let verb = "boundary-limit";
    let s = cfg.surface()?;
    let spec = path_spec(cfg, &s, verb)?;
    let panel = enumerate_panel(&s, cfg.panel_n);
    let rows = boundary_convergence(&spec, &panel, exec)?;
    let mut table = Table::new(vec!["t".into(), "panel_N".into(), "sup_distance".into()]);
    for &(t, d) in &rows {
        table.push(vec![sig9(t), cfg.panel_n.to_string(), sig9(d)]);
    }
    let points = exec.try_map(&spec.grid, |&t| scaling_path(&spec, t))?;
    let target = intersection_vector(&spec.mu, &panel)?;
    let limit = detect_limit(&points, &panel, cfg.tolerances.limit, exec)?;
    let classification = match &limit.limit {
        Limit::Interior(x) => json!({"kind": "interior", "point": point_to_json(x)}),
        Limit::Boundary(v) => json!({
            "kind": "boundary",
            "projective_class": v,
            "distance_to_mu": sup_distance(v, &target),
        }),
        Limit::NoLimit => json!({"kind": "none"}),
    };
    let summary = json!({
        "experiment": verb,
        "panel_N": cfg.panel_n,
        "panel": panel.ids(&s),
        "regimes": regimes(&spec, &s),
        "final_distance": rows.last().map(|r| r.1),
        "limit": classification,
        "tolerance": cfg.tolerances.limit,
    });
    Ok(Output { csv: Some(table), summary })
}

pub fn horo_converge(cfg: &ExperimentConfig, exec: Exec) -> Outcome<Output> {
    let verb = "horo-converge";
    let s = cfg.surface()?;
    let spec = path_spec(cfg, &s, verb)?;
    let x0 = cfg.point(&s, "x0", verb)?;
    let probes = cfg.probes(&s, verb)?;
    let panel = enumerate_panel(&s, cfg.panel_n);
    let rows = horo_convergence(&spec, &x0, &probes, &panel, exec)?;
    let mut table = Table::new(vec!["t".into(), "panel_N".into(), "max_deviation".into()]);
    for &(t, d) in &rows {
        table.push(vec![sig9(t), cfg.panel_n.to_string(), sig9(d)]);
    }
    let summary = json!({
        "experiment": verb,
        "panel_N": cfg.panel_n,
        "probes": probes.len(),
        "regimes": regimes(&spec, &s),
        "final_deviation": rows.last().map(|r| r.1),
        "max_deviation": rows.iter().map(|r| r.1).fold(0.0, f64::max),
    });
    Ok(Output { csv: Some(table), summary })
}

pub fn separate(cfg: &ExperimentConfig, exec: Exec) -> Outcome<Output> {
    let verb = "separate";
    let s = cfg.surface()?;
    let x0 = cfg.point(&s, "x0", verb)?;
    let mu = normalize(&cfg.lamination(&s, "mu", verb)?, &x0)?;
    let nu = normalize(&cfg.lamination(&s, "nu", verb)?, &x0)?;
    let panel = enumerate_panel(&s, cfg.panel_n);
    let w = separation_experiment(&mu, &nu, &x0, &panel, &cfg.grid(default_grid())?, exec)?;
    let mut table = Table::new(["epsilon", "t", "panel_N", "lhs", "rhs", "gap"].map(String::from).to_vec());
    table.push(vec![
        sig9(w.epsilon),
        sig9(w.t),
        cfg.panel_n.to_string(),
        sig9(w.lhs),
        sig9(w.rhs),
        sig9(w.lhs - w.rhs),
    ]);
    let comps = |l: &arcmetric::lamination::RationalLamination| {
        l.ids().into_iter().map(|(c, w)| json!({"class": c, "weight": w})).collect::<Vec<_>>()
    };
    let summary = json!({
        "experiment": verb,
        "panel_N": cfg.panel_n,
        "mu": comps(&mu),
        "nu": comps(&nu),
        "witness": {
            "y": point_to_json(&w.y),
            "epsilon": w.epsilon,
            "t": w.t,
            "lhs": w.lhs,
            "rhs": w.rhs,
            "gap": w.lhs - w.rhs,
        },
    });
    Ok(Output { csv: Some(table), summary })
}

#[derive(Debug, Serialize)]
pub struct SphereReport {
    pub surface: String,
    pub coordinate_dim: usize,
    pub sphere_dim: usize,
    /// `6g − 6 + 3p + 2n` evaluated directly from the signature.
    pub expected_dim: i64,
    pub samples: usize,
    pub decoded: usize,
    pub round_trips: usize,
    pub doubled_symmetric: usize,
    pub unsupported: usize,
    pub seed: u64,
}

fn half_integer<R: Rng>(r: &mut R, lo: i32, hi: i32) -> f64 {
    r.gen_range(lo..=hi) as f64 / 2.0
}

fn close(a: &DTCoordinates, b: &DTCoordinates, tol: f64) -> bool {
    let near = |x: f64, y: f64| (x - y).abs() <= tol * x.abs().max(1.0);
    a.curves.len() == b.curves.len()
        && a.boundaries.len() == b.boundaries.len()
        && a.curves.iter().zip(&b.curves).all(|(p, q)| near(p.0, q.0) && near(p.1, q.1))
        && a.boundaries.iter().zip(&b.boundaries).all(|(&x, &y)| near(x, y))
}

/// Decodes random half-integer coordinate vectors and checks that each
/// decoded lamination encodes back to its vector and doubles symmetrically.
pub fn dt_sphere(surface: Arc<Surface>, samples: usize, seed: u64, tol: f64) -> Outcome<SphereReport> {
    if samples == 0 {
        return Err(Fail::Usage("samples must be positive".into()));
    }
    let sig = surface.signature;
    let d = &surface.decomposition;
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SphereReport {
        surface: sig.to_string(),
        coordinate_dim: coordinate_dimension(&surface),
        sphere_dim: sphere_dimension(&surface),
        expected_dim: 6 * sig.genus as i64 - 6 + 3 * sig.boundaries as i64 + 2 * sig.punctures as i64,
        samples,
        decoded: 0,
        round_trips: 0,
        doubled_symmetric: 0,
        unsupported: 0,
        seed,
    };
    let mut drawn = 0;
    while drawn < samples {
        let c = DTCoordinates {
            curves: (0..d.interior_count).map(|_| (half_integer(&mut r, 0, 4), half_integer(&mut r, -4, 4))).collect(),
            boundaries: (0..d.boundary_count).map(|_| half_integer(&mut r, -4, 4)).collect(),
        };
        if c.curves.iter().all(|&(a, t)| a == 0.0 && t == 0.0) && c.boundaries.iter().all(|&h| h == 0.0) {
            continue;
        }
        drawn += 1;
        match dt_decode(surface.clone(), &c) {
            Ok(mu) => {
                rep.decoded += 1;
                if close(&dt_encode(&mu), &c, tol) {
                    rep.round_trips += 1;
                }
                if doubled_symmetry_holds(&doubled_dt(&mu)) {
                    rep.doubled_symmetric += 1;
                }
            }
            Err(arcmetric::Error::UnsupportedCoordinates(_)) => rep.unsupported += 1,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(rep)
}
