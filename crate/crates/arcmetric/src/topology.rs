//! Surface signatures, canonical pants decompositions, curve and arc
//! classes, panels, and the topological double.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Genus, number of punctures, number of boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceSignature {
    pub genus: u32,
    pub punctures: u32,
    pub boundaries: u32,
}

impl SurfaceSignature {
    pub fn new(genus: u32, punctures: u32, boundaries: u32) -> Result<Self> {
        let s = Self { genus, punctures, boundaries };
        if boundaries == 0 {
            return Err(Error::UnsupportedSurface(format!(
                "{s}: at least one boundary component is required"
            )));
        }
        if s.euler_characteristic() >= 0 {
            return Err(Error::UnsupportedSurface(format!(
                "{s}: Euler characteristic {} is not negative",
                s.euler_characteristic()
            )));
        }
        Ok(s)
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64 - self.boundaries as i64
    }

    pub fn pants_count(&self) -> usize {
        (-self.euler_characteristic()) as usize
    }

    pub fn interior_count(&self) -> usize {
        (3 * self.genus as i64 - 3 + self.punctures as i64 + self.boundaries as i64) as usize
    }

    pub fn tier1(&self) -> Option<Tier1> {
        match (self.genus, self.punctures, self.boundaries) {
            (0, 0, 3) => Some(Tier1::Pants),
            (1, 0, 1) => Some(Tier1::OneHoledTorus),
            _ => None,
        }
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(g={}, n={}, p={})", self.genus, self.punctures, self.boundaries)
    }
}

/// The two surfaces that carry full holonomy markings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Tier1 {
    Pants,
    OneHoledTorus,
}

/// A side of a pair of pants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Interior(usize),
    Boundary(usize),
    Puncture(usize),
}

impl Side {
    pub fn label(&self) -> String {
        match self {
            Side::Interior(i) => format!("C{}", i + 1),
            Side::Boundary(j) => format!("B{}", j + 1),
            Side::Puncture(k) => format!("P{}", k + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PantsDecomposition {
    pub pants: Vec<[Side; 3]>,
    pub interior_count: usize,
    pub boundary_count: usize,
    pub puncture_count: usize,
}

impl PantsDecomposition {
    /// Host pants and side position of boundary `j`.
    pub fn boundary_position(&self, j: usize) -> Option<(usize, usize)> {
        self.pants.iter().enumerate().find_map(|(k, sides)| {
            sides.iter().position(|s| *s == Side::Boundary(j)).map(|pos| (k, pos))
        })
    }

    fn check(&self) -> bool {
        let mut interior = vec![0usize; self.interior_count];
        let mut boundary = vec![0usize; self.boundary_count];
        for sides in &self.pants {
            for s in sides {
                match *s {
                    Side::Interior(i) => interior[i] += 1,
                    Side::Boundary(j) => boundary[j] += 1,
                    Side::Puncture(_) => {}
                }
            }
        }
        interior.iter().all(|&c| c == 2) && boundary.iter().all(|&c| c == 1)
    }
}

/// A signature together with its canonical decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Surface {
    pub signature: SurfaceSignature,
    pub decomposition: PantsDecomposition,
}

/// Builds the canonical decomposition.
///
/// Boundaries, punctures and handles are lined up as a chain of items;
/// consecutive pants are joined by chain curves and every handle hangs off
/// the chain through a one-holed torus block `(c, c, x)`.
pub fn build_surface(genus: u32, punctures: u32, boundaries: u32) -> Result<Surface> {
    let signature = SurfaceSignature::new(genus, punctures, boundaries)?;
    let mut next_interior = 0usize;
    let mut fresh = || {
        next_interior += 1;
        Side::Interior(next_interior - 1)
    };
    let mut pants = Vec::new();

    if signature.tier1() == Some(Tier1::OneHoledTorus) {
        let c = fresh();
        pants.push([c, c, Side::Boundary(0)]);
    } else {
        let mut items: Vec<Side> = (0..boundaries as usize).map(Side::Boundary).collect();
        items.extend((0..punctures as usize).map(Side::Puncture));
        let mut handles = Vec::new();
        for _ in 0..genus {
            let x = fresh();
            items.push(x);
            handles.push(x);
        }
        let m = items.len();
        if m == 3 {
            pants.push([items[0], items[1], items[2]]);
        } else {
            let mut prev = fresh();
            pants.push([items[0], items[1], prev]);
            for item in &items[2..m - 2] {
                let y = fresh();
                pants.push([prev, *item, y]);
                prev = y;
            }
            pants.push([prev, items[m - 2], items[m - 1]]);
        }
        for x in handles {
            let c = fresh();
            pants.push([c, c, x]);
        }
    }

    let decomposition = PantsDecomposition {
        pants,
        interior_count: next_interior,
        boundary_count: boundaries as usize,
        puncture_count: punctures as usize,
    };
    debug_assert_eq!(decomposition.pants.len(), signature.pants_count());
    debug_assert_eq!(decomposition.interior_count, signature.interior_count());
    debug_assert!(decomposition.check());
    Ok(Surface { signature, decomposition })
}

impl Surface {
    pub fn tier1(&self) -> Option<Tier1> {
        self.signature.tier1()
    }

    pub fn is_pants(&self) -> bool {
        self.tier1() == Some(Tier1::Pants)
    }

    pub fn is_one_holed_torus(&self) -> bool {
        self.tier1() == Some(Tier1::OneHoledTorus)
    }

    /// `|χ|` of the double.
    pub fn double_abs_chi(&self) -> f64 {
        (-2 * self.signature.euler_characteristic()) as f64
    }

    /// All pants-local arcs in panel order: distinct-boundary arcs first,
    /// then same-boundary arcs, each sorted by boundary labels.
    pub fn pants_arcs(&self) -> Vec<PantsArc> {
        let mut distinct = Vec::new();
        let mut same = Vec::new();
        for (k, sides) in self.decomposition.pants.iter().enumerate() {
            for a in 0..3 {
                let Side::Boundary(ja) = sides[a] else { continue };
                same.push((ja, ja, PantsArc { pants: k, kind: ArcKind::Same { beta: a } }));
                for (b, side) in sides.iter().enumerate().skip(a + 1) {
                    if let Side::Boundary(jb) = *side {
                        let (lo, hi) = if ja < jb { (ja, jb) } else { (jb, ja) };
                        let kind = if ja < jb {
                            ArcKind::Distinct { b1: a, b2: b }
                        } else {
                            ArcKind::Distinct { b1: b, b2: a }
                        };
                        distinct.push((lo, hi, PantsArc { pants: k, kind }));
                    }
                }
            }
        }
        distinct.sort_by_key(|&(a, b, _)| (a, b));
        same.sort_by_key(|&(a, _, _)| a);
        distinct.into_iter().chain(same).map(|(_, _, arc)| arc).collect()
    }

    /// Boundary labels at the ends of a pants-local arc.
    pub fn arc_ends(&self, arc: &PantsArc) -> (usize, usize) {
        let sides = &self.decomposition.pants[arc.pants];
        let b = |pos: usize| match sides[pos] {
            Side::Boundary(j) => j,
            _ => unreachable!("arc ends are boundary sides by construction"),
        };
        match arc.kind {
            ArcKind::Same { beta } => (b(beta), b(beta)),
            ArcKind::Distinct { b1, b2 } => (b(b1), b(b2)),
        }
    }

    /// Number of endpoints of `class` on boundary `j`.
    pub fn endpoints_on(&self, class: &Class, j: usize) -> u32 {
        match class {
            Class::Arc(arc) => {
                let (x, y) = self.arc_ends(arc);
                (x == j) as u32 + (y == j) as u32
            }
            Class::WordArc(_) => 2 * (j == 0) as u32,
            _ => 0,
        }
    }

    /// Maps the two names of the slope (1,0) on the one-holed torus to the
    /// decomposition classes and checks that the class exists here.
    pub fn canonical(&self, class: &Class) -> Result<Class> {
        let bad = |what: &str| Err(Error::UnsupportedClass(format!("{what} on {}", self.signature)));
        match class {
            Class::Boundary(j) if *j < self.decomposition.boundary_count => Ok(*class),
            Class::Interior(i) if *i < self.decomposition.interior_count => Ok(*class),
            Class::Arc(arc) => {
                let Some(sides) = self.decomposition.pants.get(arc.pants) else {
                    return bad("arc host out of range");
                };
                let ok = match arc.kind {
                    ArcKind::Same { beta } => beta < 3 && matches!(sides[beta], Side::Boundary(_)),
                    ArcKind::Distinct { b1, b2 } => {
                        b1 < 3
                            && b2 < 3
                            && b1 != b2
                            && matches!(sides[b1], Side::Boundary(_))
                            && matches!(sides[b2], Side::Boundary(_))
                    }
                };
                if ok {
                    Ok(*class)
                } else {
                    bad("arc with a non-boundary end")
                }
            }
            Class::WordCurve(s) | Class::WordArc(s) => {
                if !self.is_one_holed_torus() {
                    return bad("word class");
                }
                let s = Slope::new(s.p, s.q)?;
                Ok(match (class, s == Slope::HORIZONTAL) {
                    (Class::WordCurve(_), true) => Class::Interior(0),
                    (Class::WordArc(_), true) => Class::Arc(PantsArc {
                        pants: 0,
                        kind: ArcKind::Same { beta: 2 },
                    }),
                    (Class::WordCurve(_), false) => Class::WordCurve(s),
                    _ => Class::WordArc(s),
                })
            }
            _ => bad("index out of range"),
        }
    }

    pub fn class_id(&self, class: &Class) -> String {
        match class {
            Class::Boundary(j) => format!("B{}", j + 1),
            Class::Interior(i) => format!("C{}", i + 1),
            Class::Arc(arc) => {
                let (x, y) = self.arc_ends(arc);
                let (x, y) = (x.min(y) + 1, x.max(y) + 1);
                if x >= 10 || y >= 10 {
                    format!("a{x}_{y}")
                } else {
                    format!("a{x}{y}")
                }
            }
            Class::WordCurve(s) => format!("g[{},{}]", s.p, s.q),
            Class::WordArc(s) => format!("a[{},{}]", s.p, s.q),
        }
    }

    /// Parses ids such as `B2`, `C1`, `a13`, `a3_12`, `g[2,1]`, `a[-1,1]`.
    pub fn parse_class(&self, id: &str) -> Result<Class> {
        let unknown = || Error::UnsupportedClass(format!("unknown class id '{id}' on {}", self.signature));
        let num = |s: &str| s.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1);
        let class = if let Some(rest) = id.strip_prefix('B') {
            Class::Boundary(num(rest).ok_or_else(unknown)?)
        } else if let Some(rest) = id.strip_prefix('C') {
            Class::Interior(num(rest).ok_or_else(unknown)?)
        } else if let Some(rest) = id.strip_prefix("g[").or_else(|| id.strip_prefix("a[")) {
            let body = rest.strip_suffix(']').ok_or_else(unknown)?;
            let (p, q) = body.split_once(',').ok_or_else(unknown)?;
            let p: i64 = p.trim().parse().map_err(|_| unknown())?;
            let q: i64 = q.trim().parse().map_err(|_| unknown())?;
            let s = Slope::new(p, q)?;
            if id.starts_with('g') {
                Class::WordCurve(s)
            } else {
                Class::WordArc(s)
            }
        } else if let Some(rest) = id.strip_prefix('a') {
            let (x, y) = match rest.split_once('_') {
                Some((x, y)) => (num(x).ok_or_else(unknown)?, num(y).ok_or_else(unknown)?),
                None if rest.len() == 2 => (
                    num(&rest[..1]).ok_or_else(unknown)?,
                    num(&rest[1..]).ok_or_else(unknown)?,
                ),
                None => return Err(unknown()),
            };
            let arc = self
                .pants_arcs()
                .into_iter()
                .find(|arc| {
                    let (a, b) = self.arc_ends(arc);
                    (a, b) == (x, y) || (a, b) == (y, x)
                })
                .ok_or_else(unknown)?;
            Class::Arc(arc)
        } else {
            return Err(unknown());
        };
        self.canonical(&class)
    }
}

/// Primitive homology direction `(p, q)` on the one-holed torus, normalized
/// to `q > 0` or `(1, 0)`. `(1, 0)` is the decomposition curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub const HORIZONTAL: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self> {
        if gcd(p, q) != 1 {
            return Err(Error::UnsupportedClass(format!("slope ({p},{q}) is not primitive")));
        }
        Ok(if q < 0 || (q == 0 && p < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        })
    }

    pub fn det(&self, other: &Slope) -> i64 {
        self.p * other.q - self.q * other.p
    }

    pub fn complexity(&self) -> u32 {
        (self.p.unsigned_abs() + self.q.unsigned_abs()) as u32
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ArcKind {
    /// From side `beta` back to itself.
    Same { beta: usize },
    /// Between sides `b1` and `b2`.
    Distinct { b1: usize, b2: usize },
}

/// An arc living in one pair of pants; sides are positions `0..3` of the
/// host.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PantsArc {
    pub pants: usize,
    pub kind: ArcKind,
}

/// A homotopy class of simple closed curve or essential arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Class {
    Boundary(usize),
    Interior(usize),
    Arc(PantsArc),
    /// One-holed torus only.
    WordCurve(Slope),
    /// One-holed torus only.
    WordArc(Slope),
}

impl Class {
    pub fn is_arc(&self) -> bool {
        matches!(self, Class::Arc(_) | Class::WordArc(_))
    }

    /// Decomposition-level classes exist on every surface.
    pub fn is_decomposition_adapted(&self) -> bool {
        !matches!(self, Class::WordCurve(_) | Class::WordArc(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Panel {
    pub entries: Vec<Class>,
    pub complexity: u32,
}

impl Panel {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, class: &Class) -> Option<usize> {
        self.entries.iter().position(|c| c == class)
    }

    pub fn ids(&self, surface: &Surface) -> Vec<String> {
        self.entries.iter().map(|c| surface.class_id(c)).collect()
    }

    /// Restricts to the given entries, keeping their order.
    pub fn subset(&self, keep: &[Class]) -> Panel {
        Panel {
            entries: self.entries.iter().filter(|c| keep.contains(c)).copied().collect(),
            complexity: self.complexity,
        }
    }
}

/// Slopes other than `(1,0)` with `|p| + |q| ≤ n`, in panel order.
pub fn slopes_up_to(n: u32) -> Vec<Slope> {
    let n = n as i64;
    let mut out = Vec::new();
    for q in 1..=n {
        for p in -(n - q)..=(n - q) {
            if gcd(p, q) == 1 {
                out.push(Slope { p, q });
            }
        }
    }
    out.sort_by_key(|s| (s.complexity(), s.q, s.p));
    out
}

/// Boundaries, decomposition curves and pants-local arcs; on the one-holed
/// torus also word curves and arcs of complexity `|p| + |q| ≤ n`.
pub fn enumerate_panel(surface: &Surface, n: u32) -> Panel {
    let d = &surface.decomposition;
    let mut entries: Vec<Class> = (0..d.boundary_count).map(Class::Boundary).collect();
    entries.extend((0..d.interior_count).map(Class::Interior));
    entries.extend(surface.pants_arcs().into_iter().map(Class::Arc));
    if surface.is_one_holed_torus() {
        for s in slopes_up_to(n) {
            entries.push(Class::WordCurve(s));
            entries.push(Class::WordArc(s));
        }
    }
    Panel { entries, complexity: n }
}

/// A curve of the symmetric decomposition of the double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DoubledCurve {
    Original(usize),
    Boundary(usize),
    Mirror(usize),
}

impl DoubledCurve {
    pub fn mirror(self) -> Self {
        match self {
            DoubledCurve::Original(i) => DoubledCurve::Mirror(i),
            DoubledCurve::Mirror(i) => DoubledCurve::Original(i),
            b => b,
        }
    }

    pub fn label(&self) -> String {
        match self {
            DoubledCurve::Original(i) => format!("C{}", i + 1),
            DoubledCurve::Boundary(j) => format!("B{}", j + 1),
            DoubledCurve::Mirror(i) => format!("C{}bar", i + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DoubledSide {
    Curve(DoubledCurve),
    Puncture { index: usize, mirrored: bool },
}

impl DoubledSide {
    pub fn mirror(self) -> Self {
        match self {
            DoubledSide::Curve(c) => DoubledSide::Curve(c.mirror()),
            DoubledSide::Puncture { index, mirrored } => DoubledSide::Puncture { index, mirrored: !mirrored },
        }
    }
}

/// Closed double with the decomposition `{Cᵢ} ∪ {Bⱼ} ∪ {C̄ᵢ}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoubleSurface {
    pub genus: u32,
    pub punctures: u32,
    pub curves: Vec<DoubledCurve>,
    /// Pants of `S` followed by their mirror images.
    pub pants: Vec<[DoubledSide; 3]>,
}

pub fn double_topology(surface: &Surface) -> DoubleSurface {
    let s = surface.signature;
    let d = &surface.decomposition;
    let lift = |side: Side| match side {
        Side::Interior(i) => DoubledSide::Curve(DoubledCurve::Original(i)),
        Side::Boundary(j) => DoubledSide::Curve(DoubledCurve::Boundary(j)),
        Side::Puncture(k) => DoubledSide::Puncture { index: k, mirrored: false },
    };
    let mut pants: Vec<[DoubledSide; 3]> = d.pants.iter().map(|p| p.map(lift)).collect();
    let mirrored: Vec<_> = pants.iter().map(|p| p.map(DoubledSide::mirror)).collect();
    pants.extend(mirrored);
    let mut curves: Vec<DoubledCurve> = (0..d.interior_count).map(DoubledCurve::Original).collect();
    curves.extend((0..d.boundary_count).map(DoubledCurve::Boundary));
    curves.extend((0..d.interior_count).map(DoubledCurve::Mirror));
    DoubleSurface {
        genus: 2 * s.genus + s.boundaries - 1,
        punctures: 2 * s.punctures,
        curves,
        pants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let p = build_surface(0, 0, 3).unwrap();
        assert_eq!(p.decomposition.pants.len(), 1);
        assert_eq!(p.decomposition.interior_count, 0);
        let t = build_surface(1, 0, 1).unwrap();
        assert_eq!(t.decomposition.pants, vec![[Side::Interior(0), Side::Interior(0), Side::Boundary(0)]]);
        assert!(matches!(build_surface(0, 0, 2), Err(Error::UnsupportedSurface(_))));
        assert!(build_surface(1, 1, 0).is_err());
    }

    #[test]
    fn larger_decompositions_are_consistent() {
        for g in 0..4 {
            for n in 0..4 {
                for p in 1..5 {
                    let Ok(s) = build_surface(g, n, p) else { continue };
                    let d = &s.decomposition;
                    assert_eq!(d.pants.len(), s.signature.pants_count(), "{}", s.signature);
                    assert_eq!(d.interior_count, s.signature.interior_count());
                    assert!(d.check(), "{}", s.signature);
                }
            }
        }
    }

    #[test]
    fn doubles() {
        let d = double_topology(&build_surface(0, 0, 3).unwrap());
        assert_eq!((d.genus, d.punctures, d.curves.len()), (2, 0, 3));
        let d = double_topology(&build_surface(1, 0, 1).unwrap());
        assert_eq!((d.genus, d.curves.len()), (2, 3));
        let d = double_topology(&build_surface(0, 1, 2).unwrap());
        assert_eq!((d.genus, d.punctures), (1, 2));
        for c in &d.curves {
            assert_eq!(c.mirror().mirror(), *c);
            assert_eq!(c.mirror() == *c, matches!(c, DoubledCurve::Boundary(_)));
        }
    }

    #[test]
    fn pants_panel() {
        let s = build_surface(0, 0, 3).unwrap();
        let panel = enumerate_panel(&s, 0);
        assert_eq!(
            panel.ids(&s),
            ["B1", "B2", "B3", "a12", "a13", "a23", "a11", "a22", "a33"]
        );
        assert_eq!(enumerate_panel(&s, 5).entries, panel.entries);
    }

    #[test]
    fn torus_panel_is_monotone() {
        let s = build_surface(1, 0, 1).unwrap();
        assert_eq!(enumerate_panel(&s, 0).ids(&s), ["B1", "C1", "a11"]);
        for n in 0..6 {
            let small = enumerate_panel(&s, n);
            let big = enumerate_panel(&s, n + 1);
            assert_eq!(&big.entries[..small.len()], &small.entries[..]);
        }
        assert_eq!(
            enumerate_panel(&s, 2).ids(&s)[3..],
            ["g[0,1]", "a[0,1]", "g[-1,1]", "a[-1,1]", "g[1,1]", "a[1,1]"]
        );
    }

    #[test]
    fn ids_round_trip() {
        for s in [build_surface(1, 0, 1).unwrap(), build_surface(0, 0, 3).unwrap(), build_surface(2, 1, 4).unwrap()] {
            for c in enumerate_panel(&s, 4).entries {
                assert_eq!(s.parse_class(&s.class_id(&c)).unwrap(), c);
            }
        }
        let t = build_surface(1, 0, 1).unwrap();
        assert_eq!(t.parse_class("g[1,0]").unwrap(), Class::Interior(0));
        assert_eq!(t.parse_class("g[-3,-2]").unwrap(), Class::WordCurve(Slope { p: 3, q: 2 }));
        assert!(t.parse_class("g[2,2]").is_err());
        assert!(t.parse_class("a12").is_err());
        assert!(build_surface(0, 0, 3).unwrap().parse_class("g[0,1]").is_err());
    }

    #[test]
    fn arcs_end_on_boundaries() {
        let s = build_surface(2, 2, 3).unwrap();
        for arc in s.pants_arcs() {
            let (a, b) = s.arc_ends(&arc);
            assert!(a < 3 && b < 3);
        }
    }
}
