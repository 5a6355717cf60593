//! The arc metric over a panel, horofunctions, projective length vectors
//! and limit detection.
//!
//! Every supremum runs over a finite [`Panel`]. On the pair of pants the
//! nine-entry panel is the whole family of boundary curves and arcs, so the
//! values there are exact; elsewhere they are lower bounds that increase
//! with the panel complexity.

use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::geometry::{double_curve_length, double_point, panel_lengths, DoubledClass, FNPoint};
use crate::lamination::{intersection_number, RationalLamination};
use crate::topology::{Class, DoubledCurve, Panel};

/// `d(X, Y)` together with the panel entry attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricValue {
    pub value: f64,
    pub maximizer: Class,
    pub panel_n: u32,
}

fn same_surface(x: &FNPoint, y: &FNPoint) -> Result<()> {
    if x.surface != y.surface {
        return Err(domain(format!(
            "points live on different surfaces ({} and {})",
            x.surface.signature, y.surface.signature
        )));
    }
    Ok(())
}

/// Index of the largest entry; ties go to the first one.
fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (k, &x) in v.iter().enumerate().skip(1) {
        if x > v[best] {
            best = k;
        }
    }
    best
}

fn metric_from_lengths(lx: &[f64], ly: &[f64], panel: &Panel) -> MetricValue {
    let ratios: Vec<f64> = lx.iter().zip(ly).map(|(a, b)| b / a).collect();
    let k = argmax(&ratios);
    MetricValue { value: ratios[k].ln(), maximizer: panel.entries[k], panel_n: panel.complexity }
}

/// `log max_γ ℓ_γ(Y)/ℓ_γ(X)` over the panel.
pub fn arc_metric(x: &FNPoint, y: &FNPoint, panel: &Panel) -> Result<MetricValue> {
    arc_metric_with(x, y, panel, Exec::default())
}

pub fn arc_metric_with(x: &FNPoint, y: &FNPoint, panel: &Panel, exec: Exec) -> Result<MetricValue> {
    same_surface(x, y)?;
    if panel.is_empty() {
        return Err(domain("empty panel"));
    }
    let lx = panel_lengths(x, panel, exec)?;
    let ly = panel_lengths(y, panel, exec)?;
    Ok(metric_from_lengths(&lx, &ly, panel))
}

/// `max{d(X,Y), d(Y,X)}`.
pub fn symmetric_metric(x: &FNPoint, y: &FNPoint, panel: &Panel, exec: Exec) -> Result<f64> {
    same_surface(x, y)?;
    if panel.is_empty() {
        return Err(domain("empty panel"));
    }
    let lx = panel_lengths(x, panel, exec)?;
    let ly = panel_lengths(y, panel, exec)?;
    Ok(metric_from_lengths(&lx, &ly, panel).value.max(metric_from_lengths(&ly, &lx, panel).value))
}

/// The same panel value computed on the double: boundary curves are read
/// from the symmetric coordinates and every arc is replaced by its double,
/// whose length comes from the holonomy.
pub fn arc_metric_via_double(x: &FNPoint, y: &FNPoint, panel: &Panel) -> Result<MetricValue> {
    same_surface(x, y)?;
    if panel.is_empty() {
        return Err(domain("empty panel"));
    }
    let (xd, yd) = (double_point(x), double_point(y));
    let lift = |c: &Class| match *c {
        Class::Boundary(j) => DoubledClass::Decomposition(DoubledCurve::Boundary(j)),
        Class::Interior(i) => DoubledClass::Decomposition(DoubledCurve::Original(i)),
        c if c.is_arc() => DoubledClass::DoubledArc(c),
        c => DoubledClass::Original(c),
    };
    let mut lx = Vec::with_capacity(panel.len());
    let mut ly = Vec::with_capacity(panel.len());
    for c in &panel.entries {
        lx.push(double_curve_length(&xd, &lift(c))?);
        ly.push(double_curve_length(&yd, &lift(c))?);
    }
    Ok(metric_from_lengths(&lx, &ly, panel))
}

/// A horofunction based at `X₀` and evaluated over a fixed panel.
#[derive(Debug, Clone)]
pub enum Horofunction {
    /// `Φ_X(Y) = d(Y, X) − d(X₀, X)`.
    Interior {
        x: FNPoint,
        base: FNPoint,
        panel: Panel,
        lengths_x: Vec<f64>,
        base_distance: f64,
    },
    /// `Φ_μ(Y) = log max_γ 𝓛_γ(μ)/ℓ_γ(Y)`, `𝓛_γ(μ) = i(μ,γ)/S₀`.
    Boundary {
        mu: RationalLamination,
        base: FNPoint,
        panel: Panel,
        intersections: Vec<f64>,
        /// `S₀ = max_ν i(μ,ν)/ℓ_ν(X₀)`.
        normalizer: f64,
    },
}

impl Horofunction {
    pub fn interior(x: FNPoint, base: FNPoint, panel: Panel, exec: Exec) -> Result<Self> {
        same_surface(&x, &base)?;
        if panel.is_empty() {
            return Err(domain("empty panel"));
        }
        let lengths_x = panel_lengths(&x, &panel, exec)?;
        let lb = panel_lengths(&base, &panel, exec)?;
        let base_distance = metric_from_lengths(&lb, &lengths_x, &panel).value;
        Ok(Horofunction::Interior { x, base, panel, lengths_x, base_distance })
    }

    pub fn boundary(mu: RationalLamination, base: FNPoint, panel: Panel, exec: Exec) -> Result<Self> {
        if mu.surface() != &base.surface {
            return Err(domain("lamination and base point live on different surfaces"));
        }
        let intersections = panel
            .entries
            .iter()
            .map(|c| intersection_number(&mu, c))
            .collect::<Result<Vec<_>>>()?;
        if intersections.iter().all(|&i| i == 0.0) {
            return Err(Error::DegeneratePanel(format!(
                "i(mu, gamma) = 0 for every entry of the N = {} panel",
                panel.complexity
            )));
        }
        let lb = panel_lengths(&base, &panel, exec)?;
        let normalizer = intersections.iter().zip(&lb).map(|(i, l)| i / l).fold(0.0, f64::max);
        Ok(Horofunction::Boundary { mu, base, panel, intersections, normalizer })
    }

    pub fn base(&self) -> &FNPoint {
        match self {
            Horofunction::Interior { base, .. } | Horofunction::Boundary { base, .. } => base,
        }
    }

    pub fn panel(&self) -> &Panel {
        match self {
            Horofunction::Interior { panel, .. } | Horofunction::Boundary { panel, .. } => panel,
        }
    }

    pub fn eval(&self, y: &FNPoint, exec: Exec) -> Result<f64> {
        same_surface(self.base(), y)?;
        let ly = panel_lengths(y, self.panel(), exec)?;
        Ok(self.eval_lengths(&ly))
    }

    /// Evaluation from precomputed panel lengths of `Y`.
    pub fn eval_lengths(&self, ly: &[f64]) -> f64 {
        match self {
            Horofunction::Interior { panel, lengths_x, base_distance, .. } => {
                metric_from_lengths(ly, lengths_x, panel).value - base_distance
            }
            Horofunction::Boundary { intersections, normalizer, .. } => {
                let m = intersections.iter().zip(ly).map(|(i, l)| i / l).fold(0.0, f64::max);
                (m / normalizer).ln()
            }
        }
    }
}

/// Panel lengths scaled to sup-norm one.
pub fn thurston_vector(x: &FNPoint, panel: &Panel, exec: Exec) -> Result<Vec<f64>> {
    if panel.is_empty() {
        return Err(domain("empty panel"));
    }
    Ok(sup_normalize(&panel_lengths(x, panel, exec)?))
}

pub fn sup_normalize(v: &[f64]) -> Vec<f64> {
    let m = v.iter().fold(0.0, |a: f64, &b| a.max(b.abs()));
    if m == 0.0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / m).collect()
}

pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Classification of a sequence in Thurston's compactification.
#[derive(Debug, Clone, PartialEq)]
pub enum Limit {
    Interior(FNPoint),
    /// Projective class of the limit, sup-normalized, in panel order.
    Boundary(Vec<f64>),
    NoLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub limit: Limit,
    pub panel_n: u32,
    /// Sup-norm steps between consecutive normalized length vectors.
    pub increments: Vec<f64>,
}

/// Contraction factor that certifies geometric convergence of the steps.
const RATE_CERTIFICATE: f64 = 0.9;

/// Classifies `X_n` by the convergence of `𝓛_γ(X_n) = ℓ_γ(X_n)/e^{d(X₀,X_n)}`
/// with `X₀ = X_1`.
///
/// The sequence converges when its last step is below `tol`, or when the
/// last three step ratios are all at most 0.9; in the latter case the limit
/// is extrapolated. A convergent sequence whose points are still moving
/// apart by more than `tol` escapes to the boundary.
pub fn detect_limit(seq: &[FNPoint], panel: &Panel, tol: f64, exec: Exec) -> Result<LimitReport> {
    if seq.len() < 2 {
        return Err(domain("detect_limit needs at least two points"));
    }
    if panel.is_empty() {
        return Err(domain("empty panel"));
    }
    for x in &seq[1..] {
        same_surface(&seq[0], x)?;
    }
    let lengths = exec.try_map(seq, |x| panel_lengths(x, panel, Exec::Sequential))?;
    let base = &lengths[0];
    let normalized: Vec<Vec<f64>> = lengths
        .iter()
        .map(|l| {
            let d = metric_from_lengths(base, l, panel).value;
            l.iter().map(|x| x / d.exp()).collect()
        })
        .collect();
    let increments: Vec<f64> = normalized.windows(2).map(|w| sup_distance(&w[0], &w[1])).collect();
    let n = lengths.len();
    let (prev, last) = (&lengths[n - 2], &lengths[n - 1]);
    let step = metric_from_lengths(prev, last, panel).value.max(metric_from_lengths(last, prev, panel).value);
    let report = |limit| LimitReport { limit, panel_n: panel.complexity, increments: increments.clone() };
    if step <= tol {
        return Ok(report(Limit::Interior(seq[n - 1].clone())));
    }

    let e_last = *increments.last().expect("two points give one increment");
    let geometric = increments.len() >= 4
        && increments[increments.len() - 4..]
            .windows(2)
            .all(|w| w[0] > 0.0 && w[1] / w[0] <= RATE_CERTIFICATE);
    if e_last > tol && !geometric {
        return Ok(report(Limit::NoLimit));
    }
    let limit = if geometric && e_last > 0.0 {
        // remaining tail of a geometric series with the last observed ratio
        let r = increments[increments.len() - 1] / increments[increments.len() - 2];
        let (a, b) = (&normalized[n - 2], &normalized[n - 1]);
        a.iter().zip(b).map(|(x, y)| y + (y - x) * r / (1.0 - r)).collect()
    } else {
        normalized[n - 1].clone()
    };
    Ok(report(Limit::Boundary(sup_normalize(&limit))))
}
