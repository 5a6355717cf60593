//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Reference values are the high-precision ones from `tests/oracle.rs`. Where
//! a quoted six-digit decimal disagrees with them, the line also prints
//! that decimal and the gap so the discrepancy stays visible.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use arcmetric::asymptotics::{
    boundary_convergence, default_grid, horo_convergence, separation_experiment, verify_key_inequality,
    PathSpec, DEFAULT_CAP, SEPARATION_GAP,
};
use arcmetric::geometry::holonomy::{axis_gap, pants_matrices};
use arcmetric::geometry::mobius::axis_distance;
use arcmetric::geometry::{arc_length, double_curve_length, double_point, DoubledClass, FNPoint};
use arcmetric::lamination::{
    coordinate_dimension, doubled_dt, doubled_symmetry_holds, dt_decode, dt_encode, intersection_number,
    normalize, ratio_sup, sphere_dimension, RationalLamination,
};
use arcmetric::metric::arc_metric_with;
use arcmetric::topology::{enumerate_panel, ArcKind, Class, Panel};
use arcmetric::Exec;
use common::*;
use rand::Rng;

const CASE2_222: f64 = 1.704_912_832_358_013_7;
const CASE2_444: f64 = 0.827_136_901_638_556_8;
const ROUNDOFF: f64 = 1e-12;
const CPRIME_OFFSET: f64 = 1.303_644_651_894_054_4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn pants_oracle(x: &FNPoint, kind: ArcKind) -> f64 {
    let m = pants_matrices(x.pants_lengths(0)).unwrap();
    match kind {
        ArcKind::Distinct { b1, b2 } => axis_gap(&m[b1], &m[b2]).unwrap(),
        ArcKind::Same { beta } => {
            // axis of x_j x_b x_j^-1 is x_j applied to the axis of x_b
            let (r, f) = m[beta].fixed_points().unwrap();
            let j = &m[(beta + 1) % 3];
            axis_distance((r, f), (j.act_ideal(r), j.act_ideal(f)))
        }
    }
}

fn arcs_of(panel: &Panel) -> Vec<Class> {
    panel.entries.iter().filter(|c| c.is_arc()).copied().collect()
}

fn c1_oracle() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let s = pants_surface();
    let arcs = arcs_of(&enumerate_panel(&s, 0));
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x = random_pants(&mut r, 0.1, 6.0);
        for c in &arcs {
            let Class::Arc(a) = c else { unreachable!() };
            worst = worst.max((arc_length(&x, c).unwrap() - pants_oracle(&x, a.kind)).abs());
        }
    }
    let el = start.elapsed();
    outcome(
        worst <= 1e-9 && el < Duration::from_secs(5),
        format!("max |formula - axis oracle| = {worst:.2e} over 600 arcs, {el:.2?}"),
    )
}

fn c2_doubling() -> Outcome {
    let mut r = rng(2);
    let s = pants_surface();
    let arcs = arcs_of(&enumerate_panel(&s, 0));
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let x = random_pants(&mut r, 0.1, 6.0);
        let xd = double_point(&x);
        for c in &arcs {
            let d = double_curve_length(&xd, &DoubledClass::DoubledArc(*c)).unwrap();
            worst = worst.max((2.0 * arc_length(&x, c).unwrap() - d).abs());
        }
    }
    outcome(worst <= 1e-9, format!("max |2 l_a(X) - l_ad(Xd)| = {worst:.2e} over 300 arcs"))
}

fn c3_desk() -> Outcome {
    let x = FNPoint::pants(2.0, 2.0, 2.0).unwrap();
    let y = FNPoint::pants(4.0, 4.0, 4.0).unwrap();
    let p = enumerate_panel(&x.surface, 0);
    let dxy = arc_metric_with(&x, &y, &p, Exec::Parallel).unwrap();
    let dyx = arc_metric_with(&y, &x, &p, Exec::Parallel).unwrap();
    let want = (CASE2_222 / CASE2_444).ln();
    let quoted = (1.704915f64 / 0.827245).ln();
    let e1 = (dxy.value - 2f64.ln()).abs();
    let e2 = (dyx.value - want).abs();
    outcome(
        e1 <= 1e-9 && e2 <= 1e-6 && dxy.value != dyx.value,
        format!(
            "d(X,Y) = {:.12} [{}], d(Y,X) = {:.12} [{}] vs {want:.12} (err {e2:.1e}); \
             quoted log(1.704915/0.827245) = {quoted:.9} is off by {:.2e}",
            dxy.value,
            x.surface.class_id(&dxy.maximizer),
            dyx.value,
            x.surface.class_id(&dyx.maximizer),
            (quoted - want).abs()
        ),
    )
}

fn c4_axioms() -> Outcome {
    let mut r = rng(4);
    let p = enumerate_panel(&pants_surface(), 0);
    let d = |a: &FNPoint, b: &FNPoint| arc_metric_with(a, b, &p, Exec::Sequential).unwrap().value;
    let mut min_slack = f64::INFINITY;
    let mut min_pos = f64::INFINITY;
    let mut self_zero = true;
    for _ in 0..1000 {
        let (x, y, z) = (random_pants(&mut r, 0.1, 6.0), random_pants(&mut r, 0.1, 6.0), random_pants(&mut r, 0.1, 6.0));
        min_slack = min_slack.min(d(&x, &y) + d(&y, &z) - d(&x, &z));
        min_pos = min_pos.min(d(&x, &y));
        self_zero &= d(&x, &x) == 0.0;
    }
    outcome(
        self_zero && min_slack >= -1e-12 && min_pos > 0.0,
        format!("d(X,X) = 0: {self_zero}; min triangle slack {min_slack:.3e}; min d(X,Y) for X != Y {min_pos:.3e}"),
    )
}

fn cprime_spec(grid: Vec<f64>) -> PathSpec {
    let base = FNPoint::pants(1.0, 1.0, 2.0).unwrap();
    let s = base.surface.clone();
    let mu = RationalLamination::single(s.clone(), s.parse_class("a33").unwrap(), 1.0).unwrap();
    PathSpec::from_lamination(mu, base, grid).unwrap()
}

fn c5_key_inequality() -> Outcome {
    let start = Instant::now();
    let spec = cprime_spec(default_grid());
    let panel = enumerate_panel(&spec.base.surface, 0);
    let full = verify_key_inequality(&spec, &panel.entries, DEFAULT_CAP, Exec::Parallel).unwrap();
    let fine = cprime_spec((0..=28).map(|k| 3.0 + 0.25 * k as f64).collect());
    let a12 = fine.base.surface.parse_class("a12").unwrap();
    let rep = verify_key_inequality(&fine, &[a12], DEFAULT_CAP, Exec::Parallel).unwrap();
    let worst = rep.targets[0].deviations.iter().map(|d| (d - CPRIME_OFFSET).abs()).fold(0.0, f64::max);
    let bound = full.targets.iter().map(|d| d.max_lower.max(d.max_upper)).fold(0.0, f64::max);
    let el = start.elapsed();
    let pass = worst <= 1e-6
        && full.targets.len() == 9
        && full.skipped.is_empty()
        && full.targets.iter().all(|d| !d.exceeds_cap)
        && el < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "max |l_a12 - e^t - {CPRIME_OFFSET:.10}| on t in [3,10] = {worst:.2e}; \
             max deviation over 9 entries = {bound:.4} (cap {DEFAULT_CAP}); {el:.2?}; \
             quoted 1.303634 is off by {:.2e}",
            (1.303634 - CPRIME_OFFSET).abs()
        ),
    )
}

fn torus_spec(grid: Vec<f64>) -> PathSpec {
    let base = FNPoint::one_holed_torus(1.0, 0.5, 2.0).unwrap();
    let s = base.surface.clone();
    let mu = RationalLamination::single(s.clone(), s.parse_class("g[0,1]").unwrap(), 2.0).unwrap();
    PathSpec::from_lamination(mu, base, grid).unwrap()
}

fn c6_boundary() -> Outcome {
    let pants = cprime_spec(vec![8.0]);
    let pp = enumerate_panel(&pants.base.surface, 0);
    let dp = boundary_convergence(&pants, &pp, Exec::Parallel).unwrap()[0].1;
    let torus = torus_spec(vec![8.0]);
    let tp = enumerate_panel(&torus.base.surface, 2);
    let dt = boundary_convergence(&torus, &tp, Exec::Parallel).unwrap()[0].1;
    outcome(
        dp <= 1e-3 && dt <= 1e-3,
        format!("t = 8: pants (9 entries) {dp:.3e}, one-holed torus (N = 2, {} entries) {dt:.3e}", tp.len()),
    )
}

fn c7_horofunction() -> Outcome {
    let spec = cprime_spec(default_grid());
    let x0 = FNPoint::pants(2.0, 2.0, 2.0).unwrap();
    let panel = enumerate_panel(&x0.surface, 0);
    let mut r = rng(7);
    let probes: Vec<FNPoint> = (0..5).map(|_| random_pants(&mut r, 0.5, 4.0)).collect();
    let dev = horo_convergence(&spec, &x0, &probes, &panel, Exec::Parallel).unwrap();
    let at10 = dev.last().unwrap().1;
    let tail: Vec<f64> = dev.iter().filter(|(t, _)| *t >= 4.0).map(|d| d.1).collect();
    // Φ is a difference of two O(t) logarithms, so steps below 1e-12 are round-off
    let worst_rise = tail.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    let monotone = worst_rise <= ROUNDOFF;
    outcome(
        at10 <= 1e-2 && monotone,
        format!(
            "max over 5 probes at t = 10: {at10:.3e}; nonincreasing for t >= 4 up to {ROUNDOFF:.0e} round-off: \
             {monotone} (largest rise {worst_rise:.2e}); sequence {}",
            dev.iter().map(|(t, d)| format!("{t}:{d:.2e}")).collect::<Vec<_>>().join(" ")
        ),
    )
}

fn c8_separation() -> Outcome {
    let x0 = FNPoint::pants(2.0, 2.0, 2.0).unwrap();
    let panel = enumerate_panel(&x0.surface, 0);
    let mut r = rng(8);
    let mut found = 0;
    let mut min_gap = f64::INFINITY;
    let mut failures = Vec::new();
    let mut pairs = 0;
    while pairs < 10 {
        let mu = normalize(&random_pants_lamination(&mut r), &x0).unwrap();
        let nu = normalize(&random_pants_lamination(&mut r), &x0).unwrap();
        if mu == nu {
            continue;
        }
        pairs += 1;
        match separation_experiment(&mu, &nu, &x0, &panel, &default_grid(), Exec::Parallel) {
            Ok(w) => {
                // independent re-evaluation at the witness
                let ratio = |l: &RationalLamination| {
                    panel
                        .entries
                        .iter()
                        .map(|c| intersection_number(l, c).unwrap() / arcmetric::geometry::length(&w.y, c).unwrap())
                        .fold(0.0, f64::max)
                        .ln()
                };
                let gap = ratio(&nu) - ratio(&mu);
                if gap >= SEPARATION_GAP {
                    found += 1;
                    min_gap = min_gap.min(gap);
                } else {
                    failures.push(format!("false positive {:?} vs {:?}", mu.ids(), nu.ids()));
                }
            }
            Err(e) => failures.push(format!("{:?} vs {:?}: {e}", mu.ids(), nu.ids())),
        }
    }
    outcome(
        found == 10,
        format!("{found}/10 witnesses re-verified, min gap {min_gap:.3e}{}", if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }),
    )
}

fn c9_dt_sphere() -> Outcome {
    let mut r = rng(9);
    let mut round_trips = 0;
    let mut symmetric = 0;
    let mut total = 0;
    let mut dims = Vec::new();
    for (surface, sample) in [
        (pants_surface(), random_pants_lamination as fn(&mut _) -> RationalLamination),
        (torus_surface(), random_torus_lamination),
    ] {
        let sig = surface.signature;
        let (cd, sd) = (coordinate_dimension(&surface), sphere_dimension(&surface));
        let expect = 6 * sig.genus as i64 - 6 + 3 * sig.boundaries as i64 + 2 * sig.punctures as i64;
        for _ in 0..50 {
            let mu = sample(&mut r);
            let c = dt_encode(&mu);
            total += 1;
            if dt_decode(surface.clone(), &c).as_ref() == Ok(&mu) && c.dimension() == cd {
                round_trips += 1;
            }
            let dd = doubled_dt(&mu);
            if doubled_symmetry_holds(&dd) {
                symmetric += 1;
            }
        }
        dims.push((sig, cd as i64 == expect && sd as i64 == expect - 1, cd, sd));
    }
    let dims_ok = dims.iter().all(|d| d.1);
    outcome(
        round_trips == total && symmetric == total && dims_ok,
        format!(
            "round trips {round_trips}/{total}, doubled symmetry {symmetric}/{total}, dims {}",
            dims.iter().map(|d| format!("{}: {}/{}", d.0, d.2, d.3)).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn c10_ratio() -> Outcome {
    let mut r = rng(10);
    let panel = enumerate_panel(&pants_surface(), 0);
    let mut agree = 0;
    let mut infinite = 0;
    for _ in 0..100 {
        let mu = random_pants_lamination(&mut r);
        let nu = if r.gen_bool(0.5) {
            // reweight the components of mu, dropping some
            let mut comps = Vec::new();
            for (c, w) in mu.components() {
                if r.gen_bool(0.8) {
                    comps.push((*c, w * dyadic(&mut r, 24)));
                }
            }
            if comps.is_empty() {
                mu.scaled(0.5).unwrap()
            } else {
                RationalLamination::new(mu.surface().clone(), comps).unwrap()
            }
        } else {
            random_pants_lamination(&mut r)
        };
        // sup over the complete pants panel of i(nu, g)/i(mu, g)
        let mut brute: f64 = 0.0;
        for c in &panel.entries {
            let (a, b) = (intersection_number(&nu, c).unwrap(), intersection_number(&mu, c).unwrap());
            if b > 0.0 {
                brute = brute.max(a / b);
            } else if a > 0.0 {
                brute = f64::INFINITY;
            }
        }
        let got = ratio_sup(&nu, &mu).unwrap();
        if got.is_infinite() {
            infinite += 1;
        }
        if got == brute || (got - brute).abs() <= 1e-12 * got {
            agree += 1;
        }
    }
    outcome(agree == 100 && infinite > 0, format!("{agree}/100 agree with the panel sup, {infinite} on the +inf branch"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", c1_oracle),
        ("doubling relation", c2_doubling),
        ("arc-metric desk numbers", c3_desk),
        ("metric axioms", c4_axioms),
        ("key inequality", c5_key_inequality),
        ("Thurston-boundary convergence", c6_boundary),
        ("horofunction convergence", c7_horofunction),
        ("separation", c8_separation),
        ("DT sphere", c9_dt_sphere),
        ("ratio lemma", c10_ratio),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {:>2} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
