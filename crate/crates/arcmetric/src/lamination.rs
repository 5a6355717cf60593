//! Rational measured laminations: intersection numbers, Dehn–Thurston
//! coordinates, the ratio lemma and the refinement `μ̂ = μ + ζ`.
//!
//! Intersection with arcs follows the endpoint convention: an arc crosses a
//! boundary curve once per endpoint, and an arc endpoint on a boundary leaf
//! of weight `ω` contributes `ω/2`. Two components are disjoint when their
//! intersection number is zero under this convention, so a boundary leaf
//! never shares its curve with an arc endpoint.

use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::geometry::{lamination_length, torus_slope, FNPoint};
use crate::hyptrig::{intersection_arc_distinct, intersection_arc_same, PantsIntersectionData};
use crate::topology::{enumerate_panel, ArcKind, Class, DoubledCurve, Panel, PantsArc, Side, Slope, Surface};

/// `Σ aᵢγᵢ` with pairwise disjoint classes and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalLamination {
    surface: Arc<Surface>,
    comps: Vec<(Class, f64)>,
}

impl RationalLamination {
    /// Canonicalizes classes, merges repeats, sorts, and checks disjointness.
    pub fn new(surface: Arc<Surface>, comps: Vec<(Class, f64)>) -> Result<Self> {
        let mut merged: Vec<(Class, f64)> = Vec::new();
        for (c, w) in comps {
            if !(w > 0.0) || !w.is_finite() {
                return Err(domain(format!("weight of {} must be positive, got {w}", surface.class_id(&c))));
            }
            let c = surface.canonical(&c)?;
            match merged.iter_mut().find(|(k, _)| *k == c) {
                Some(slot) => slot.1 += w,
                None => merged.push((c, w)),
            }
        }
        merged.sort_by_key(|c| c.0);
        for (a, (ca, _)) in merged.iter().enumerate() {
            for (cb, _) in &merged[a + 1..] {
                if pair_intersection(&surface, ca, cb)? > 0.0 || pair_intersection(&surface, cb, ca)? > 0.0 {
                    return Err(domain(format!(
                        "{} and {} intersect",
                        surface.class_id(ca),
                        surface.class_id(cb)
                    )));
                }
            }
        }
        Ok(Self { surface, comps: merged })
    }

    pub fn zero(surface: Arc<Surface>) -> Self {
        Self { surface, comps: vec![] }
    }

    pub fn single(surface: Arc<Surface>, class: Class, weight: f64) -> Result<Self> {
        Self::new(surface, vec![(class, weight)])
    }

    pub fn surface(&self) -> &Arc<Surface> {
        &self.surface
    }

    pub fn components(&self) -> impl Iterator<Item = (&Class, f64)> {
        self.comps.iter().map(|(c, w)| (c, *w))
    }

    pub fn support(&self) -> Vec<Class> {
        self.comps.iter().map(|(c, _)| *c).collect()
    }

    pub fn weight(&self, class: &Class) -> f64 {
        self.comps.iter().find(|(c, _)| c == class).map_or(0.0, |(_, w)| *w)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn scaled(&self, k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(domain(format!("scale factor must be positive, got {k}")));
        }
        Ok(Self {
            surface: self.surface.clone(),
            comps: self.comps.iter().map(|&(c, w)| (c, w * k)).collect(),
        })
    }

    /// `a·self + b·other`; the supports must be mutually disjoint.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        let mut comps: Vec<_> = self.comps.iter().map(|&(c, w)| (c, a * w)).collect();
        comps.extend(other.comps.iter().map(|&(c, w)| (c, b * w)));
        comps.retain(|&(_, w)| w != 0.0);
        Self::new(self.surface.clone(), comps)
    }

    pub fn ids(&self) -> Vec<(String, f64)> {
        self.comps.iter().map(|(c, w)| (self.surface.class_id(c), *w)).collect()
    }
}

enum TorusClass {
    Boundary,
    Curve(Slope),
    Arc(Slope),
}

fn torus_class(c: &Class) -> TorusClass {
    match c {
        Class::Boundary(_) => TorusClass::Boundary,
        Class::Arc(_) | Class::WordArc(_) => TorusClass::Arc(torus_slope(c).expect("torus arc")),
        _ => TorusClass::Curve(torus_slope(c).expect("torus curve")),
    }
}

/// `i(c₁, c₂)` with `c₁` a unit-weight component of a lamination.
pub fn pair_intersection(surface: &Surface, c1: &Class, c2: &Class) -> Result<f64> {
    let c1 = surface.canonical(c1)?;
    let c2 = surface.canonical(c2)?;
    if surface.is_one_holed_torus() {
        use TorusClass as T;
        return Ok(match (torus_class(&c1), torus_class(&c2)) {
            (T::Boundary, T::Arc(_)) => 1.0,
            (T::Arc(_), T::Boundary) => 2.0,
            (T::Boundary, _) | (_, T::Boundary) => 0.0,
            (T::Arc(s), T::Arc(r)) => (s.det(&r).abs() - 1).max(0) as f64,
            (T::Curve(s), T::Curve(r) | T::Arc(r)) | (T::Arc(s), T::Curve(r)) => s.det(&r).abs() as f64,
        });
    }
    Ok(match (c1, c2) {
        (Class::Boundary(j), arc @ Class::Arc(_)) => 0.5 * surface.endpoints_on(&arc, j) as f64,
        (arc @ Class::Arc(_), Class::Boundary(j)) => surface.endpoints_on(&arc, j) as f64,
        (a @ Class::Arc(_), Class::Arc(b)) => arc_crossings(surface, &a, &b),
        _ => 0.0,
    })
}

fn arc_crossings(surface: &Surface, mu: &Class, target: &PantsArc) -> f64 {
    let Class::Arc(host) = mu else { return 0.0 };
    if host.pants != target.pants {
        return 0.0;
    }
    let sides = surface.decomposition.pants[target.pants];
    let hits = |pos: usize| match sides[pos] {
        Side::Boundary(j) => surface.endpoints_on(mu, j) as f64,
        _ => 0.0,
    };
    let order = match target.kind {
        ArcKind::Same { beta } => [beta, (beta + 1) % 3, (beta + 2) % 3],
        ArcKind::Distinct { b1, b2 } => [b1, b2, 3 - b1 - b2],
    };
    let data = PantsIntersectionData::crossings(order.map(hits)).expect("endpoint counts are valid");
    match target.kind {
        ArcKind::Same { .. } => intersection_arc_same(&data),
        ArcKind::Distinct { .. } => intersection_arc_distinct(&data),
    }
}

/// `i(μ, γ) = Σ aᵢ·i(γᵢ, γ)`.
pub fn intersection_number(mu: &RationalLamination, gamma: &Class) -> Result<f64> {
    let mut total = 0.0;
    for (c, w) in mu.components() {
        total += w * pair_intersection(&mu.surface, c, gamma)?;
    }
    Ok(total)
}

/// `(i, θ)` per decomposition curve and `θ̂` per boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct DTCoordinates {
    pub curves: Vec<(f64, f64)>,
    pub boundaries: Vec<f64>,
}

impl DTCoordinates {
    pub fn dimension(&self) -> usize {
        2 * self.curves.len() + self.boundaries.len()
    }
}

/// Contribution of one unit-weight component to `(i, θ)` of each
/// decomposition curve, to the arc-endpoint count of each boundary, and to
/// the leaf weight of each boundary.
struct Contribution {
    curves: Vec<(usize, f64, f64)>,
    endpoints: Vec<(usize, f64)>,
    leaf: Option<usize>,
}

fn contribution(surface: &Surface, c: &Class) -> Contribution {
    let mut out = Contribution { curves: vec![], endpoints: vec![], leaf: None };
    match *c {
        Class::Boundary(j) => out.leaf = Some(j),
        Class::Interior(i) => out.curves.push((i, 0.0, 1.0)),
        Class::WordCurve(s) => out.curves.push((0, s.q as f64, s.p as f64)),
        Class::WordArc(s) => {
            out.curves.push((0, s.q as f64, s.p as f64));
            out.endpoints.push((0, 2.0));
        }
        Class::Arc(_) => {
            for j in 0..surface.decomposition.boundary_count {
                let e = surface.endpoints_on(c, j);
                if e > 0 {
                    out.endpoints.push((j, e as f64));
                }
            }
        }
    }
    out
}

/// Dehn–Thurston coordinates of a lamination.
pub fn dt_encode(mu: &RationalLamination) -> DTCoordinates {
    let d = &mu.surface.decomposition;
    let mut curves = vec![(0.0, 0.0); d.interior_count];
    let mut ends = vec![0.0; d.boundary_count];
    let mut leaves = vec![0.0; d.boundary_count];
    for (c, w) in mu.components() {
        let k = contribution(&mu.surface, c);
        for (i, a, t) in k.curves {
            curves[i].0 += w * a;
            curves[i].1 += w * t;
        }
        for (j, e) in k.endpoints {
            ends[j] += w * e;
        }
        if let Some(j) = k.leaf {
            leaves[j] += w;
        }
    }
    let boundaries = ends
        .iter()
        .zip(&leaves)
        .map(|(&n, &l)| if n > 0.0 { n } else if l > 0.0 { -l } else { 0.0 })
        .collect();
    DTCoordinates { curves, boundaries }
}

fn unsupported(msg: impl Into<String>) -> Error {
    Error::UnsupportedCoordinates(msg.into())
}

/// Inverse of [`dt_encode`] on the laminations built from supported classes.
pub fn dt_decode(surface: Arc<Surface>, c: &DTCoordinates) -> Result<RationalLamination> {
    let d = &surface.decomposition;
    if c.curves.len() != d.interior_count || c.boundaries.len() != d.boundary_count {
        return Err(unsupported("coordinate vector has the wrong shape"));
    }
    let finite = c.curves.iter().all(|(a, b)| a.is_finite() && b.is_finite() && *a >= 0.0)
        && c.boundaries.iter().all(|x| x.is_finite());
    if !finite {
        return Err(unsupported("coordinates must be finite with i >= 0"));
    }
    let comps = if surface.is_one_holed_torus() {
        decode_torus(c.curves[0], c.boundaries[0])?
    } else {
        decode_general(&surface, c)?
    };
    RationalLamination::new(surface, comps).map_err(|e| unsupported(format!("not a lamination: {e}")))
}

fn push(comps: &mut Vec<(Class, f64)>, c: Class, w: f64) {
    if w > 0.0 {
        comps.push((c, w));
    }
}

fn decode_general(surface: &Surface, c: &DTCoordinates) -> Result<Vec<(Class, f64)>> {
    let d = &surface.decomposition;
    let mut comps = Vec::new();
    for (i, &(a, t)) in c.curves.iter().enumerate() {
        if a != 0.0 {
            return Err(unsupported(format!("C{}: no supported class crosses it", i + 1)));
        }
        if t < 0.0 {
            return Err(unsupported(format!("C{}: negative twist with zero intersection", i + 1)));
        }
        push(&mut comps, Class::Interior(i), t);
    }
    for (j, &th) in c.boundaries.iter().enumerate() {
        push(&mut comps, Class::Boundary(j), -th);
    }
    for (k, sides) in d.pants.iter().enumerate() {
        let n = sides.map(|s| match s {
            Side::Boundary(j) => c.boundaries[j].max(0.0),
            _ => 0.0,
        });
        for (kind, w) in arcs_from_endpoints(n) {
            push(&mut comps, Class::Arc(PantsArc { pants: k, kind }), w);
        }
    }
    Ok(comps)
}

/// The unique disjoint arc system in a pants with endpoint counts `n`.
fn arcs_from_endpoints(n: [f64; 3]) -> Vec<(ArcKind, f64)> {
    let total: f64 = n.iter().sum();
    let mx = (0..3).fold(0, |m, k| if n[k] > n[m] { k } else { m });
    let pair = |a: usize, b: usize| ArcKind::Distinct { b1: a.min(b), b2: a.max(b) };
    if n[mx] > total - n[mx] {
        let (o1, o2) = ((mx + 1) % 3, (mx + 2) % 3);
        vec![
            (ArcKind::Same { beta: mx }, 0.5 * (n[mx] - n[o1] - n[o2])),
            (pair(mx, o1), n[o1]),
            (pair(mx, o2), n[o2]),
        ]
    } else {
        [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
            .iter()
            .map(|&(a, b, o)| (pair(a, b), 0.5 * (n[a] + n[b] - n[o])))
            .collect()
    }
}

const REL: f64 = 1e-12;

/// Largest slope denominator accepted when reading a ratio `θ/i`; past it,
/// convergents of an irrational would pass the tolerance by accident.
const MAX_DENOMINATOR: i64 = 10_000;

/// Primitive `(p, q)`, `q ≥ 1`, with `p/q = x` up to rounding.
fn rational_slope(x: f64) -> Option<Slope> {
    // continued-fraction convergents
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e9 {
            return None;
        }
        let a = a as i64;
        (h0, h1) = (h1, a * h1 + h0);
        (k0, k1) = (k1, a * k1 + k0);
        if k1 > MAX_DENOMINATOR {
            return None;
        }
        if (h1 as f64 / k1 as f64 - x).abs() <= REL * x.abs().max(1.0) {
            return Slope::new(h1, k1).ok();
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn decode_torus((i, theta): (f64, f64), hat: f64) -> Result<Vec<(Class, f64)>> {
    let c1 = Class::Interior(0);
    let local = Class::Arc(PantsArc { pants: 0, kind: ArcKind::Same { beta: 2 } });
    let mut comps = Vec::new();
    if hat <= 0.0 {
        push(&mut comps, Class::Boundary(0), -hat);
        if i == 0.0 {
            if theta < 0.0 {
                return Err(unsupported("negative twist with zero intersection"));
            }
            push(&mut comps, c1, theta);
        } else {
            let s = rational_slope(theta / i).ok_or_else(|| unsupported("irrational slope"))?;
            comps.push((Class::WordCurve(s), i / s.q as f64));
        }
        return Ok(comps);
    }
    let total = hat / 2.0;
    if i == 0.0 {
        if theta < 0.0 {
            return Err(unsupported("negative twist with zero intersection"));
        }
        comps.push((local, total));
        push(&mut comps, c1, theta);
        return Ok(comps);
    }
    let k = (theta / i).floor();
    if i <= total {
        // fan around the slope (1,0): weights on (1,0), (k,1), (k+1,1)
        let w3 = clamp0(theta - k * i, i);
        let w2 = clamp0(i - w3, i);
        push(&mut comps, local, clamp0(total - i, total));
        push(&mut comps, Class::WordArc(Slope { p: k as i64, q: 1 }), w2);
        push(&mut comps, Class::WordArc(Slope { p: k as i64 + 1, q: 1 }), w3);
        return Ok(comps);
    }
    // Farey descent through the cones spanned by neighbouring slopes
    let (mut u, mut v) = (Slope { p: k as i64, q: 1 }, Slope { p: k as i64 + 1, q: 1 });
    let scale = i.max(theta.abs());
    for _ in 0..200 {
        for s in [u, v] {
            let cross = s.p as f64 * i - s.q as f64 * theta;
            if cross.abs() <= REL * scale * s.complexity() as f64 {
                let lam = i / s.q as f64;
                if lam >= total * (1.0 - REL) {
                    comps.push((Class::WordArc(s), total));
                    push(&mut comps, Class::WordCurve(s), clamp0(lam - total, lam));
                    return Ok(comps);
                }
            }
        }
        // X = α·u + β·v with det(u, v) = ±1
        let det = u.det(&v) as f64;
        let alpha = (theta * v.q as f64 - i * v.p as f64) / det;
        let beta = (u.p as f64 * i - u.q as f64 * theta) / det;
        let (a, b, c) = (total - beta, total - alpha, alpha + beta - total);
        let tol = REL * total;
        if a >= -tol && b >= -tol && c >= -tol {
            let m = Slope { p: u.p + v.p, q: u.q + v.q };
            push(&mut comps, Class::WordArc(u), clamp0(a, total));
            push(&mut comps, Class::WordArc(v), clamp0(b, total));
            push(&mut comps, Class::WordArc(m), clamp0(c, total));
            return Ok(comps);
        }
        if c < -tol {
            break;
        }
        // X lies beyond the edge uv: step into the sub-cone containing it
        let m = Slope { p: u.p + v.p, q: u.q + v.q };
        if alpha > beta {
            v = m;
        } else {
            u = m;
        }
    }
    Err(unsupported("coordinates are not realized by a supported arc system"))
}

fn clamp0(x: f64, scale: f64) -> f64 {
    if x.abs() <= REL * scale {
        0.0
    } else {
        x
    }
}

/// `6g − 6 + 3p + 2n` with `p` boundaries and `n` punctures.
pub fn coordinate_dimension(surface: &Surface) -> usize {
    let s = surface.signature;
    (6 * s.genus as i64 - 6 + 3 * s.boundaries as i64 + 2 * s.punctures as i64) as usize
}

/// Dimension of the sphere of projective laminations, one less than the
/// coordinate space.
pub fn sphere_dimension(surface: &Surface) -> usize {
    coordinate_dimension(surface) - 1
}

/// A component of the doubled lamination `ψ(μ)` on the double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DoubledComponent {
    Original(Class),
    Mirror(Class),
    /// `α ∪ ᾱ` for an arc `α`.
    DoubledArc(Class),
    /// A boundary leaf, a single curve of the double.
    Leaf(usize),
}

pub fn double_lamination(mu: &RationalLamination) -> Vec<(DoubledComponent, f64)> {
    let mut out = Vec::new();
    for (c, w) in mu.components() {
        match c {
            Class::Boundary(j) => out.push((DoubledComponent::Leaf(*j), w)),
            c if c.is_arc() => out.push((DoubledComponent::DoubledArc(*c), w)),
            c => {
                out.push((DoubledComponent::Original(*c), w));
                out.push((DoubledComponent::Mirror(*c), w));
            }
        }
    }
    out
}

/// `(curve, i, θ)` of `ψ(μ)` along the symmetric decomposition of the
/// double, accumulated component by component.
pub fn doubled_dt(mu: &RationalLamination) -> Vec<(DoubledCurve, f64, f64)> {
    let d = &mu.surface.decomposition;
    let mut orig = vec![(0.0, 0.0); d.interior_count];
    let mut mirr = vec![(0.0, 0.0); d.interior_count];
    let mut bnd = vec![(0.0, 0.0); d.boundary_count];
    let add = |slot: &mut (f64, f64), a: f64, t: f64| {
        slot.0 += a;
        slot.1 += t;
    };
    for (comp, w) in double_lamination(mu) {
        match comp {
            DoubledComponent::Leaf(j) => add(&mut bnd[j], 0.0, w),
            DoubledComponent::Original(c) => {
                for (i, a, t) in contribution(&mu.surface, &c).curves {
                    add(&mut orig[i], w * a, w * t);
                }
            }
            DoubledComponent::Mirror(c) => {
                for (i, a, t) in contribution(&mu.surface, &c).curves {
                    add(&mut mirr[i], w * a, -(w * t));
                }
            }
            DoubledComponent::DoubledArc(c) => {
                let k = contribution(&mu.surface, &c);
                for (i, a, t) in k.curves {
                    add(&mut orig[i], w * a, w * t);
                    add(&mut mirr[i], w * a, -(w * t));
                }
                for (j, e) in k.endpoints {
                    add(&mut bnd[j], w * e, 0.0);
                }
            }
        }
    }
    let mut out: Vec<_> = orig.iter().enumerate().map(|(i, &(a, t))| (DoubledCurve::Original(i), a, t)).collect();
    out.extend(bnd.iter().enumerate().map(|(j, &(a, t))| (DoubledCurve::Boundary(j), a, t)));
    out.extend(mirr.iter().enumerate().map(|(i, &(a, t))| (DoubledCurve::Mirror(i), a, t)));
    out
}

/// `i(C) = i(C̄)` and `θ(C) = −θ(C̄)`, compared exactly.
pub fn doubled_symmetry_holds(coords: &[(DoubledCurve, f64, f64)]) -> bool {
    coords.iter().all(|&(c, a, t)| match c {
        DoubledCurve::Original(_) => coords
            .iter()
            .find(|(k, _, _)| *k == c.mirror())
            .is_some_and(|&(_, ma, mt)| ma == a && mt == -t),
        _ => true,
    })
}

/// Coefficients `f_j` of `ν` against the components of `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErgodicDecomposition {
    pub coefficients: Vec<(Class, f64)>,
}

/// `ν = Σ f_j μ_j` over the components of `μ`, or `None` when `ν` has a
/// component outside the support of `μ`.
pub fn ergodic_decomposition(nu: &RationalLamination, mu: &RationalLamination) -> Option<ErgodicDecomposition> {
    if nu.components().any(|(c, _)| mu.weight(c) == 0.0) {
        return None;
    }
    Some(ErgodicDecomposition {
        coefficients: mu.components().map(|(c, w)| (*c, nu.weight(c) / w)).collect(),
    })
}

/// `max f_j`, or `+∞` when `ν` is not supported on `μ`.
pub fn ratio_sup(nu: &RationalLamination, mu: &RationalLamination) -> Result<f64> {
    if mu.is_zero() {
        return Err(domain("ratio_sup needs a nonzero base lamination"));
    }
    Ok(match ergodic_decomposition(nu, mu) {
        None => f64::INFINITY,
        Some(e) => e.coefficients.iter().map(|&(_, f)| f).fold(0.0, f64::max),
    })
}

/// Output of [`refine`].
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub hat: RationalLamination,
    /// `μ̂ − μ`, unit weights on the added classes.
    pub zeta: RationalLamination,
    /// Number of classes added by each of the three steps.
    pub added: [usize; 3],
}

fn meets(support: &[Class], surface: &Surface, c: &Class) -> Result<bool> {
    for s in support {
        if pair_intersection(surface, s, c)? > 0.0 || pair_intersection(surface, c, s)? > 0.0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Panel complexity scanned by [`refine`] for a given lamination.
pub fn refine_complexity(mu: &RationalLamination) -> u32 {
    mu.components()
        .filter_map(|(c, _)| match c {
            Class::WordCurve(s) | Class::WordArc(s) => Some(s.complexity()),
            _ => None,
        })
        .max()
        .unwrap_or(0)
        .max(1)
        + 1
}

/// The panel [`refine`] scans for `μ`.
pub fn refine_panel(mu: &RationalLamination) -> Panel {
    enumerate_panel(&mu.surface, refine_complexity(mu))
}

/// Completes `μ` to `μ̂ = μ + ζ`.
///
/// Step I adds the boundary curves disjoint from `μ`; step II scans panel
/// arcs in order and adds each one disjoint from what has been collected;
/// step III adds the cores of complementary annuli cut out by the arcs.
pub fn refine(mu: &RationalLamination) -> Result<Refinement> {
    let surface = mu.surface.clone();
    if surface.tier1().is_none() {
        return Err(Error::UnsupportedSurface(format!("refine needs a Tier-1 surface, got {}", surface.signature)));
    }
    let panel = refine_panel(mu);
    let mut support = mu.support();
    let mut added = [0usize; 3];
    let mut zeta = Vec::new();

    for j in 0..surface.decomposition.boundary_count {
        let b = Class::Boundary(j);
        if !support.contains(&b) && !meets(&support, &surface, &b)? {
            support.push(b);
            zeta.push(b);
            added[0] += 1;
        }
    }
    for c in panel.entries.iter().filter(|c| c.is_arc()) {
        if !support.contains(c) && !meets(&support, &surface, c)? {
            support.push(*c);
            zeta.push(*c);
            added[1] += 1;
        }
    }
    for core in annulus_cores(&surface, &support) {
        if !support.contains(&core) && !meets(&support, &surface, &core)? {
            support.push(core);
            zeta.push(core);
            added[2] += 1;
        }
    }

    let zeta = RationalLamination::new(surface.clone(), zeta.into_iter().map(|c| (c, 1.0)).collect())?;
    let hat = mu.combine(1.0, &zeta, 1.0)?;
    Ok(Refinement { hat, zeta, added })
}

/// Closed curves isotopic to the boundary of a complementary annulus of
/// the arcs in `support`.
fn annulus_cores(surface: &Surface, support: &[Class]) -> Vec<Class> {
    let arcs: Vec<&Class> = support.iter().filter(|c| c.is_arc()).collect();
    let mut out: Vec<Class> = (0..surface.decomposition.boundary_count)
        .filter(|&j| arcs.iter().all(|a| surface.endpoints_on(a, j) == 0))
        .map(Class::Boundary)
        .collect();
    if surface.is_one_holed_torus() && arcs.len() == 1 {
        // cutting along a single arc leaves an annulus around its dual curve
        let s = torus_slope(arcs[0]).expect("torus arc");
        out.push(surface.canonical(&Class::WordCurve(s)).expect("valid slope"));
    }
    out
}

/// Every boundary carries a leaf or meets an arc, and every panel arc
/// outside `μ̂` meets `μ̂`.
pub fn completion_holds(hat: &RationalLamination, panel: &Panel) -> Result<bool> {
    let surface = &hat.surface;
    let support = hat.support();
    for j in 0..surface.decomposition.boundary_count {
        let leaf = support.contains(&Class::Boundary(j));
        let hit = support.iter().any(|c| surface.endpoints_on(c, j) > 0);
        if !leaf && !hit {
            return Ok(false);
        }
    }
    for c in panel.entries.iter().filter(|c| c.is_arc()) {
        if !support.contains(c) && !meets(&support, surface, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scales `μ` to unit length at `X₀`.
pub fn normalize(mu: &RationalLamination, x0: &FNPoint) -> Result<RationalLamination> {
    if mu.is_zero() {
        return Err(domain("cannot normalize the zero lamination"));
    }
    let l = lamination_length(x0, mu)?;
    if (l - 1.0).abs() <= 1e-15 {
        return Ok(mu.clone());
    }
    mu.scaled(1.0 / l)
}
