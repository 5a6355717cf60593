//! Fenchel–Nielsen points, the doubling map, and length evaluation.

pub mod holonomy;
pub mod mobius;
pub mod torus;

use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::hyptrig::{arc_length_distinct_boundaries, arc_length_same_boundary};
use crate::lamination::RationalLamination;
use crate::topology::{double_topology, ArcKind, Class, DoubleSurface, DoubledCurve, Panel, Side, Slope, Surface, Tier1};

pub use holonomy::{DoubledClass, Holonomy};
pub use torus::TorusLengths;

/// A marked hyperbolic structure in Fenchel–Nielsen coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct FNPoint {
    pub surface: Arc<Surface>,
    /// `(length, twist)` per interior decomposition curve.
    pub interior: Vec<(f64, f64)>,
    /// Length per boundary component.
    pub boundary: Vec<f64>,
}

fn positive(name: String, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name}: length must be positive and finite, got {x}")))
    }
}

impl FNPoint {
    pub fn new(surface: Arc<Surface>, interior: Vec<(f64, f64)>, boundary: Vec<f64>) -> Result<Self> {
        let d = &surface.decomposition;
        if interior.len() != d.interior_count || boundary.len() != d.boundary_count {
            return Err(domain(format!(
                "{} needs {} interior and {} boundary coordinates, got {} and {}",
                surface.signature,
                d.interior_count,
                d.boundary_count,
                interior.len(),
                boundary.len()
            )));
        }
        for (i, &(l, t)) in interior.iter().enumerate() {
            positive(format!("C{}", i + 1), l)?;
            if !t.is_finite() {
                return Err(domain(format!("C{}: twist must be finite", i + 1)));
            }
        }
        for (j, &l) in boundary.iter().enumerate() {
            positive(format!("B{}", j + 1), l)?;
        }
        Ok(Self { surface, interior, boundary })
    }

    /// Pair of pants with boundary lengths `(b₁, b₂, b₃)`.
    pub fn pants(b1: f64, b2: f64, b3: f64) -> Result<Self> {
        let s = crate::topology::build_surface(0, 0, 3)?;
        Self::new(Arc::new(s), vec![], vec![b1, b2, b3])
    }

    /// One-holed torus with decomposition curve `(ℓ, τ)` and boundary `b`.
    pub fn one_holed_torus(length: f64, twist: f64, boundary: f64) -> Result<Self> {
        let s = crate::topology::build_surface(1, 0, 1)?;
        Self::new(Arc::new(s), vec![(length, twist)], vec![boundary])
    }

    pub fn side_length(&self, side: Side) -> f64 {
        match side {
            Side::Interior(i) => self.interior[i].0,
            Side::Boundary(j) => self.boundary[j],
            Side::Puncture(_) => 0.0,
        }
    }

    pub fn pants_lengths(&self, k: usize) -> [f64; 3] {
        self.surface.decomposition.pants[k].map(|s| self.side_length(s))
    }

    /// Same surface, new coordinates.
    pub fn with(&self, interior: Vec<(f64, f64)>, boundary: Vec<f64>) -> Result<Self> {
        Self::new(self.surface.clone(), interior, boundary)
    }

    fn torus(&self) -> Result<TorusLengths> {
        let (l, t) = self.interior[0];
        TorusLengths::new(l, t, self.boundary[0])
    }
}

/// Length of a closed curve class.
pub fn curve_length(x: &FNPoint, class: &Class) -> Result<f64> {
    match x.surface.canonical(class)? {
        Class::Boundary(j) => Ok(x.boundary[j]),
        Class::Interior(i) => Ok(x.interior[i].0),
        Class::WordCurve(s) => Ok(x.torus()?.curve_length(s)),
        _ => Err(Error::UnsupportedClass(format!(
            "{} is an arc, not a curve",
            x.surface.class_id(class)
        ))),
    }
}

fn pants_arc_length(x: &FNPoint, pants: usize, kind: ArcKind) -> Result<f64> {
    let l = x.pants_lengths(pants);
    match kind {
        ArcKind::Same { beta } => {
            arc_length_same_boundary(l[beta], l[(beta + 1) % 3], l[(beta + 2) % 3])
        }
        ArcKind::Distinct { b1, b2 } => arc_length_distinct_boundaries(l[b1], l[b2], l[3 - b1 - b2]),
    }
}

/// Length of the orthogeodesic in an arc class.
pub fn arc_length(x: &FNPoint, class: &Class) -> Result<f64> {
    match x.surface.canonical(class)? {
        Class::Arc(arc) => pants_arc_length(x, arc.pants, arc.kind),
        Class::WordArc(s) => x.torus()?.arc_length(s),
        _ => Err(Error::UnsupportedClass(format!(
            "{} is a curve, not an arc",
            x.surface.class_id(class)
        ))),
    }
}

/// Length of any curve or arc class.
pub fn length(x: &FNPoint, class: &Class) -> Result<f64> {
    if class.is_arc() {
        arc_length(x, class)
    } else {
        curve_length(x, class)
    }
}

/// `Σ wᵢ·ℓ(γᵢ)`.
pub fn lamination_length(x: &FNPoint, mu: &RationalLamination) -> Result<f64> {
    let mut total = 0.0;
    for (c, w) in mu.components() {
        total += w * length(x, c)?;
    }
    Ok(total)
}

/// Lengths of all panel entries, in panel order.
///
/// On the one-holed torus every worker keeps its own trace cache, so the
/// result does not depend on the execution policy.
pub fn panel_lengths(x: &FNPoint, panel: &Panel, exec: Exec) -> Result<Vec<f64>> {
    exec.try_map(&panel.entries, |c| length(x, c))
}

/// A point of the double's Teichmüller space in the coordinates of the
/// symmetric decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubledPoint {
    pub source: Arc<Surface>,
    pub double: DoubleSurface,
    /// `(curve, length, twist)` in the order `{Cᵢ} ∪ {Bⱼ} ∪ {C̄ᵢ}`.
    pub coords: Vec<(DoubledCurve, f64, f64)>,
}

impl DoubledPoint {
    pub fn get(&self, c: DoubledCurve) -> (f64, f64) {
        let (_, l, t) = self.coords.iter().find(|(k, _, _)| *k == c).expect("curve of the double");
        (*l, *t)
    }

    /// Holonomy of the double; Tier-1 surfaces only.
    pub fn holonomy(&self) -> Result<Holonomy> {
        match self.source.tier1() {
            Some(Tier1::Pants) => Holonomy::pants_double([0, 1, 2].map(|j| self.get(DoubledCurve::Boundary(j)))),
            Some(Tier1::OneHoledTorus) => Holonomy::torus_double(
                self.get(DoubledCurve::Original(0)),
                self.get(DoubledCurve::Boundary(0)),
                self.get(DoubledCurve::Mirror(0)),
            ),
            None => Err(Error::UnsupportedSurface(format!(
                "no holonomy marking registered for {}",
                self.source.signature
            ))),
        }
    }

    /// The mirror relabeling `Cᵢ ↔ C̄ᵢ` with twists negated.
    pub fn mirrored(&self) -> DoubledPoint {
        let coords = self
            .double
            .curves
            .iter()
            .map(|&c| {
                let (l, t) = self.get(c.mirror());
                (c, l, -t)
            })
            .collect();
        DoubledPoint { source: self.source.clone(), double: self.double.clone(), coords }
    }
}

/// The doubling embedding: `(ℓ, τ)` on `Cᵢ`, `(ℓ_B, 0)` on `Bⱼ`, `(ℓ, −τ)` on `C̄ᵢ`.
pub fn double_point(x: &FNPoint) -> DoubledPoint {
    let double = double_topology(&x.surface);
    let coords = double
        .curves
        .iter()
        .map(|&c| match c {
            DoubledCurve::Original(i) => (c, x.interior[i].0, x.interior[i].1),
            DoubledCurve::Boundary(j) => (c, x.boundary[j], 0.0),
            DoubledCurve::Mirror(i) => (c, x.interior[i].0, -x.interior[i].1),
        })
        .collect();
    DoubledPoint { source: x.surface.clone(), double, coords }
}

/// Build the holonomy of a Tier-1 double.
pub fn holonomy_build(xd: &DoubledPoint) -> Result<Holonomy> {
    xd.holonomy()
}

/// Length of a class on the double; decomposition curves are read off the
/// coordinates, everything else goes through the holonomy.
pub fn double_curve_length(xd: &DoubledPoint, class: &DoubledClass) -> Result<f64> {
    if let DoubledClass::Decomposition(c) = class {
        return Ok(xd.get(*c).0);
    }
    let class = match *class {
        DoubledClass::Original(c) => DoubledClass::Original(xd.source.canonical(&c)?),
        DoubledClass::Mirror(c) => DoubledClass::Mirror(xd.source.canonical(&c)?),
        DoubledClass::DoubledArc(c) => DoubledClass::DoubledArc(xd.source.canonical(&c)?),
        d => d,
    };
    xd.holonomy()?.length(&class)
}

/// Second evaluation path: half the length of the doubled arc, exact when
/// `X` is symmetric, which every `double_point` image is.
pub fn arc_length_via_double(x: &FNPoint, class: &Class) -> Result<f64> {
    Ok(0.5 * double_curve_length(&double_point(x), &DoubledClass::DoubledArc(*class))?)
}

/// Curve length through the holonomy of the double.
pub fn curve_length_via_double(x: &FNPoint, class: &Class) -> Result<f64> {
    double_curve_length(&double_point(x), &DoubledClass::Original(*class))
}

/// Slope of a one-holed-torus class, if it has one.
pub fn torus_slope(class: &Class) -> Option<Slope> {
    match class {
        Class::Interior(0) => Some(Slope::HORIZONTAL),
        Class::Arc(_) => Some(Slope::HORIZONTAL),
        Class::WordCurve(s) | Class::WordArc(s) => Some(*s),
        _ => None,
    }
}
