//! Scaling paths toward a lamination and the experiments run along them.
//!
//! A scaling path moves every decomposition and boundary curve `C` in one of
//! three regimes fixed by the driving lamination `μ`: lengths grow like
//! `eᵗ·i(μ,C)` when `μ` crosses `C`, decay like `3|χ(Sᵈ)|/sinh(eᵗω/2)` when
//! `C` is a leaf of weight `ω`, and are held otherwise. Twists stay put.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{length, panel_lengths, FNPoint};
use crate::hyptrig::theret_upper_bound;
use crate::lamination::{intersection_number, refine, RationalLamination};
use crate::metric::{sup_distance, sup_normalize, thurston_vector, Horofunction};
use crate::topology::{Class, Panel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `ℓ(t) = eᵗ·rate`, with `rate = i(μ, C) > 0`.
    Grow { rate: f64 },
    /// `ℓ(t) = 3|χ(Sᵈ)|/sinh(eᵗ·omega/2)`, with `omega` the leaf weight.
    Decay { omega: f64 },
    /// `ℓ(t) = length`.
    Hold { length: f64 },
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Grow { .. } => "grow",
            Regime::Decay { .. } => "decay",
            Regime::Hold { .. } => "hold",
        }
    }
}

/// `0, 0.5, …, 10`.
pub fn default_grid() -> Vec<f64> {
    (0..=20).map(|k| k as f64 * 0.5).collect()
}

/// A validated scaling path.
#[derive(Debug, Clone)]
pub struct PathSpec {
    pub mu: RationalLamination,
    /// Supplies the surface and the (constant) twists.
    pub base: FNPoint,
    pub interior: Vec<Regime>,
    pub boundary: Vec<Regime>,
    pub grid: Vec<f64>,
    /// `|χ(Sᵈ)| = 2|χ(S)|`.
    pub abs_chi: f64,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(invalid("empty t-grid"));
    }
    if grid.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(invalid("t-grid values must be finite and >= 0"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("t-grid must be strictly increasing"));
    }
    Ok(())
}

/// The regime that `μ`'s data forces on curve `c`, holding at `held`.
fn forced_regime(mu: &RationalLamination, c: Class, held: f64) -> Result<Regime> {
    let i = intersection_number(mu, &c)?;
    let w = mu.weight(&c);
    Ok(if i > 0.0 {
        Regime::Grow { rate: i }
    } else if w > 0.0 {
        Regime::Decay { omega: w }
    } else {
        Regime::Hold { length: held }
    })
}

fn check_regime(mu: &RationalLamination, c: Class, r: Regime) -> Result<()> {
    let label = mu.surface().class_id(&c);
    let i = intersection_number(mu, &c)?;
    let w = mu.weight(&c);
    let ok = match r {
        Regime::Grow { rate } => rate == i && i > 0.0,
        Regime::Decay { omega } => omega == w && w > 0.0,
        Regime::Hold { length } => i == 0.0 && w == 0.0 && length > 0.0 && length.is_finite(),
    };
    if !ok {
        return Err(invalid(format!(
            "{label}: regime {} does not match mu (i = {i}, leaf weight = {w})",
            r.name()
        )));
    }
    Ok(())
}

impl PathSpec {
    pub fn new(
        mu: RationalLamination,
        base: FNPoint,
        interior: Vec<Regime>,
        boundary: Vec<Regime>,
        grid: Vec<f64>,
    ) -> Result<Self> {
        if mu.surface() != &base.surface {
            return Err(invalid("lamination and base point live on different surfaces"));
        }
        let d = &base.surface.decomposition;
        if interior.len() != d.interior_count || boundary.len() != d.boundary_count {
            return Err(invalid("one regime per decomposition and boundary curve is required"));
        }
        for (k, r) in interior.iter().enumerate() {
            check_regime(&mu, Class::Interior(k), *r)?;
        }
        for (k, r) in boundary.iter().enumerate() {
            check_regime(&mu, Class::Boundary(k), *r)?;
        }
        check_grid(&grid)?;
        let abs_chi = base.surface.double_abs_chi();
        Ok(Self { mu, base, interior, boundary, grid, abs_chi })
    }

    /// Regimes read off `μ`; held curves keep their length at `base`.
    pub fn from_lamination(mu: RationalLamination, base: FNPoint, grid: Vec<f64>) -> Result<Self> {
        let interior = (0..base.interior.len())
            .map(|k| forced_regime(&mu, Class::Interior(k), base.interior[k].0))
            .collect::<Result<Vec<_>>>()?;
        let boundary = (0..base.boundary.len())
            .map(|k| forced_regime(&mu, Class::Boundary(k), base.boundary[k]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(mu, base, interior, boundary, grid)
    }

    pub fn with_grid(&self, grid: Vec<f64>) -> Result<Self> {
        check_grid(&grid)?;
        Ok(Self { grid, ..self.clone() })
    }
}

fn regime_length(r: Regime, t: f64, abs_chi: f64) -> Result<f64> {
    match r {
        Regime::Grow { rate } => Ok(t.exp() * rate),
        Regime::Decay { omega } => theret_upper_bound(omega, t, abs_chi),
        Regime::Hold { length } => Ok(length),
    }
}

/// The point `X_t` of the path.
pub fn scaling_path(spec: &PathSpec, t: f64) -> Result<FNPoint> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(invalid(format!("t must be finite and >= 0, got {t}")));
    }
    let interior = spec
        .interior
        .iter()
        .zip(&spec.base.interior)
        .map(|(&r, &(_, tw))| Ok((regime_length(r, t, spec.abs_chi)?, tw)))
        .collect::<Result<Vec<_>>>()?;
    let boundary = spec
        .boundary
        .iter()
        .map(|&r| regime_length(r, t, spec.abs_chi))
        .collect::<Result<Vec<_>>>()?;
    spec.base.with(interior, boundary)
}

/// Per-target deviations `ℓ_α(X_t) − eᵗ·i(μ,α)` along the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetDeviation {
    pub class: Class,
    pub id: String,
    pub intersection: f64,
    /// `ℓ_α(X_t) − eᵗ·i(μ,α)` per grid point.
    pub deviations: Vec<f64>,
    /// `max_t (eᵗ·i(μ,α) − ℓ_α(X_t))`.
    pub max_lower: f64,
    /// `max_t (ℓ_α(X_t) − eᵗ·i(μ,α))`.
    pub max_upper: f64,
    pub exceeds_cap: bool,
    /// Word classes are not local to one pair of pants.
    pub exploratory: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeyInequalityReport {
    pub grid: Vec<f64>,
    pub cap: f64,
    pub targets: Vec<TargetDeviation>,
    /// `(target id, reason)` for targets that could not be evaluated.
    pub skipped: Vec<(String, String)>,
}

/// Deviation cap above which a target is flagged.
pub const DEFAULT_CAP: f64 = 10.0;

pub fn verify_key_inequality(spec: &PathSpec, targets: &[Class], cap: f64, exec: Exec) -> Result<KeyInequalityReport> {
    let surface = spec.mu.surface();
    let points = exec.try_map(&spec.grid, |&t| scaling_path(spec, t))?;
    let mut report = KeyInequalityReport { grid: spec.grid.clone(), cap, targets: vec![], skipped: vec![] };
    for c in targets {
        let id = surface.class_id(c);
        let i = match intersection_number(&spec.mu, c) {
            Ok(i) => i,
            Err(e) => {
                report.skipped.push((id, e.to_string()));
                continue;
            }
        };
        let lengths = match exec.try_map(&points, |x| length(x, c)) {
            Ok(l) => l,
            Err(e) => {
                report.skipped.push((id, e.to_string()));
                continue;
            }
        };
        let deviations: Vec<f64> = spec
            .grid
            .iter()
            .zip(&lengths)
            .map(|(&t, &l)| l - t.exp() * i)
            .collect();
        let max_upper = deviations.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let max_lower = deviations.iter().map(|d| -d).fold(f64::NEG_INFINITY, f64::max);
        report.targets.push(TargetDeviation {
            class: *c,
            id,
            intersection: i,
            exceeds_cap: max_upper > cap || max_lower > cap,
            exploratory: !c.is_decomposition_adapted(),
            deviations,
            max_lower,
            max_upper,
        });
    }
    Ok(report)
}

/// Sup-normalized `i(μ, ·)` over the panel.
pub fn intersection_vector(mu: &RationalLamination, panel: &Panel) -> Result<Vec<f64>> {
    let v = panel.entries.iter().map(|c| intersection_number(mu, c)).collect::<Result<Vec<_>>>()?;
    if v.iter().all(|&x| x == 0.0) {
        return Err(Error::DegeneratePanel("mu crosses no panel entry".into()));
    }
    Ok(sup_normalize(&v))
}

/// `(t, ‖π L(X_t) − π i(μ,·)‖_∞)` along the grid.
pub fn boundary_convergence(spec: &PathSpec, panel: &Panel, exec: Exec) -> Result<Vec<(f64, f64)>> {
    let target = intersection_vector(&spec.mu, panel)?;
    exec.try_map(&spec.grid, |&t| {
        let v = thurston_vector(&scaling_path(spec, t)?, panel, Exec::Sequential)?;
        Ok((t, sup_distance(&v, &target)))
    })
}

/// `(t, max_Y |Φ_{X_t}(Y) − Φ_μ(Y)|)` over the probes, along the grid.
pub fn horo_convergence(
    spec: &PathSpec,
    x0: &FNPoint,
    probes: &[FNPoint],
    panel: &Panel,
    exec: Exec,
) -> Result<Vec<(f64, f64)>> {
    let phi_mu = Horofunction::boundary(spec.mu.clone(), x0.clone(), panel.clone(), exec)?;
    let probe_lengths = exec.try_map(probes, |y| panel_lengths(y, panel, Exec::Sequential))?;
    let limit: Vec<f64> = probe_lengths.iter().map(|l| phi_mu.eval_lengths(l)).collect();
    exec.try_map(&spec.grid, |&t| {
        let xt = scaling_path(spec, t)?;
        let phi = Horofunction::interior(xt, x0.clone(), panel.clone(), Exec::Sequential)?;
        let dev = probe_lengths
            .iter()
            .zip(&limit)
            .map(|(l, m)| (phi.eval_lengths(l) - m).abs())
            .fold(0.0, f64::max);
        Ok((t, dev))
    })
}

/// A point where `ν` beats `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub y: FNPoint,
    /// `log max_γ i(ν,γ)/ℓ_γ(Y)`.
    pub lhs: f64,
    /// `log max_γ i(μ,γ)/ℓ_γ(Y)`.
    pub rhs: f64,
    pub epsilon: f64,
    pub t: f64,
}

/// Smallest accepted gap `lhs − rhs`.
pub const SEPARATION_GAP: f64 = 1e-3;

const NORMALIZATION_TOL: f64 = 1e-9;

fn log_max_ratio(inter: &[f64], lengths: &[f64]) -> f64 {
    inter.iter().zip(lengths).map(|(i, l)| i / l).fold(0.0, f64::max).ln()
}

fn same_lamination(a: &RationalLamination, b: &RationalLamination) -> bool {
    let (ia, ib) = (a.ids(), b.ids());
    ia.len() == ib.len()
        && ia.iter().zip(&ib).all(|((ca, wa), (cb, wb))| ca == cb && (wa - wb).abs() <= 1e-12 * wa.max(*wb))
}

/// Searches the scaling paths toward `μ̂_ε = (1−ε)μ + (ε/L)ζ`, with
/// `μ̂ = μ + ζ` the refinement and `L = ℓ_ζ(X₀)`, for a point `Y` with
/// `log max i(ν,·)/ℓ(Y) − log max i(μ,·)/ℓ(Y) ≥ 10⁻³`.
///
/// `ε` runs over `1/2, 1/4, …, 1/1024` and `t` over the grid; grid points
/// where a decaying length leaves double precision are skipped. Every hit is
/// recomputed sequentially before it is returned.
pub fn separation_experiment(
    mu: &RationalLamination,
    nu: &RationalLamination,
    x0: &FNPoint,
    panel: &Panel,
    grid: &[f64],
    exec: Exec,
) -> Result<Witness> {
    let pre = |m: String| Err(Error::Precondition(m));
    if mu.surface() != nu.surface() || mu.surface() != &x0.surface {
        return pre("mu, nu and X0 must live on the same surface".into());
    }
    if same_lamination(mu, nu) {
        return pre("mu and nu coincide".into());
    }
    for (name, l) in [("mu", mu), ("nu", nu)] {
        let len = crate::geometry::lamination_length(x0, l)?;
        if (len - 1.0).abs() > NORMALIZATION_TOL {
            return pre(format!("{name} is not normalized at X0 (length {len})"));
        }
    }
    check_grid(grid)?;
    let zeta = refine(mu)?.zeta;
    let inter = |l: &RationalLamination| {
        panel.entries.iter().map(|c| intersection_number(l, c)).collect::<Result<Vec<_>>>()
    };
    let (i_mu, i_nu) = (inter(mu)?, inter(nu)?);
    let epsilons: Vec<f64> = (1..=10).map(|k| 0.5f64.powi(k)).collect();
    for &eps in &epsilons {
        let hat = if zeta.is_zero() {
            mu.clone()
        } else {
            let l = crate::geometry::lamination_length(x0, &zeta)?;
            mu.combine(1.0 - eps, &zeta, eps / l)?
        };
        let spec = PathSpec::from_lamination(hat, x0.clone(), grid.to_vec())?;
        let scores = exec.map(grid, |&t| {
            let y = scaling_path(&spec, t).ok()?;
            let l = panel_lengths(&y, panel, Exec::Sequential).ok()?;
            Some((log_max_ratio(&i_nu, &l), log_max_ratio(&i_mu, &l)))
        });
        for (&t, s) in grid.iter().zip(scores) {
            let Some((lhs, rhs)) = s else { continue };
            if !(lhs - rhs >= SEPARATION_GAP) {
                continue;
            }
            // recompute from scratch before reporting
            let y = scaling_path(&spec, t)?;
            let l = panel_lengths(&y, panel, Exec::Sequential)?;
            let (lhs2, rhs2) = (log_max_ratio(&i_nu, &l), log_max_ratio(&i_mu, &l));
            if lhs2 - rhs2 >= SEPARATION_GAP {
                return Ok(Witness { y, lhs: lhs2, rhs: rhs2, epsilon: eps, t });
            }
        }
    }
    Err(Error::NoWitness(format!(
        "no gap >= {SEPARATION_GAP} for epsilon in 1/2..1/1024 and t in {:?}",
        grid
    )))
}
