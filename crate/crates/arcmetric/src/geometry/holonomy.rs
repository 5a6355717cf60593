//! Holonomy of the doubles of the two Tier-1 surfaces.
//!
//! Each pair of pants is realized by three matrices with product one. A
//! *frame* is a matrix `g` standing for the point `g(i)` with the upward
//! unit tangent; the frame of side `k` sits at the foot of the seam toward
//! side `SEAM_TARGET[k]`, with the pants to its left. Gluing two sides with
//! twist `τ` is `Fᵢ · shift(−τ) · R_π · Fⱼ⁻¹`, so a positive twist is a right
//! twist.

use crate::error::{domain, Error, Result};
use crate::geometry::mobius::{perpendicular_foot, to_vertical_through, Mat2};
use crate::geometry::torus::{inverse_word, slope_word, Letter};
use crate::topology::{ArcKind, Class, DoubledCurve, Slope, Tier1};

const SEAM_TARGET: [usize; 3] = [1, 0, 0];
/// Lengths above this make the matrix entries too large to carry useful
/// digits; the formula paths cover that regime instead.
pub const MAX_HOLONOMY_LENGTH: f64 = 200.0;

/// Matrices `X₀, X₁, X₂` with `X₀X₁X₂ = 1` whose axes bound a pants with
/// the given boundary lengths.
pub fn pants_matrices(l: [f64; 3]) -> Result<[Mat2; 3]> {
    for &x in &l {
        if !(x > 0.0) || x > MAX_HOLONOMY_LENGTH {
            return Err(domain(format!(
                "holonomy needs boundary lengths in (0, {MAX_HOLONOMY_LENGTH}], got {x}"
            )));
        }
    }
    let lam = (l[0] / 2.0).exp();
    let tb = 2.0 * (l[1] / 2.0).cosh();
    let tab = -2.0 * (l[2] / 2.0).cosh();
    let p = (tab - tb / lam) / (lam - 1.0 / lam);
    let s = tb - p;
    let x0 = Mat2::diag(lam, 1.0 / lam);
    let x1 = Mat2::new(p, 1.0, p * s - 1.0, s);
    let x2 = (x0 * x1).inv();
    Ok([x0, x1, x2])
}

fn frame(x: &[Mat2; 3], k: usize) -> Result<Mat2> {
    let j = SEAM_TARGET[k];
    let axk = x[k].fixed_points()?;
    let axj = x[j].fixed_points()?;
    let p = perpendicular_foot(axk, axj)?;
    let m = to_vertical_through(axk.0, axk.1, p);
    let mut g = m.inv();
    let mut w = m.act_ideal(axj.0);
    if w.is_infinite() {
        w = m.act_ideal(axj.1);
    }
    if w > 0.0 {
        g = g * Mat2::HALF_TURN;
    }
    Ok(g)
}

fn frames(x: &[Mat2; 3]) -> Result<[Mat2; 3]> {
    Ok([frame(x, 0)?, frame(x, 1)?, frame(x, 2)?])
}

fn glue(fi: &Mat2, fj: &Mat2, twist: f64) -> Mat2 {
    *fi * Mat2::shift(-twist) * Mat2::HALF_TURN * fj.inv()
}

/// Word in the generators: `(index, ±1)` pairs.
pub type Word = Vec<(usize, i8)>;

fn w(letters: &[(usize, i8)]) -> Word {
    letters.to_vec()
}

/// A curve or arc class of `S` viewed on the double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DoubledClass {
    /// Curve of the symmetric decomposition.
    Decomposition(DoubledCurve),
    /// Closed curve of `S` in the original half.
    Original(Class),
    /// Mirror image of a closed curve of `S`.
    Mirror(Class),
    /// The closed curve `α ∪ ᾱ` of an arc `α`.
    DoubledArc(Class),
}

/// Generator matrices for the double of a Tier-1 surface, with the words
/// of its relators and decomposition curves.
#[derive(Debug, Clone)]
pub struct Holonomy {
    pub kind: Tier1,
    pub names: Vec<&'static str>,
    pub generators: Vec<Mat2>,
    /// Pairs of words that must agree in `PSL(2, ℝ)`.
    pub relators: Vec<(Word, Word)>,
}

impl Holonomy {
    /// Pants double. Curves `B₁, B₂, B₃` have `(length, twist)` data.
    pub fn pants_double(b: [(f64, f64); 3]) -> Result<Self> {
        let l = [b[0].0, b[1].0, b[2].0];
        let x = pants_matrices(l)?;
        let y = x.map(|m| m.mirror());
        let fx = frames(&x)?;
        let fy = frames(&y)?;
        let t = glue(&fx[0], &fy[0], b[0].1);
        let yg = y.map(|m| t.conj(&m));
        let fyg = fy.map(|f| t * f);
        let t2 = glue(&fx[1], &fyg[1], b[1].1);
        let t3 = glue(&fx[2], &fyg[2], b[2].1);
        Ok(Holonomy {
            kind: Tier1::Pants,
            names: vec!["x0", "x1", "x2", "y0", "y1", "y2", "t2", "t3"],
            generators: vec![x[0], x[1], x[2], yg[0], yg[1], yg[2], t2, t3],
            relators: vec![
                (w(&[(0, 1), (1, 1), (2, 1)]), vec![]),
                (w(&[(3, 1), (4, 1), (5, 1)]), vec![]),
                (w(&[(3, 1)]), w(&[(0, 1)])),
                (w(&[(6, 1), (4, 1), (6, -1)]), w(&[(1, 1)])),
                (w(&[(7, 1), (5, 1), (7, -1)]), w(&[(2, 1)])),
            ],
        })
    }

    /// One-holed torus double with data for `C`, `B`, `C̄`.
    pub fn torus_double(c: (f64, f64), b: (f64, f64), cbar: (f64, f64)) -> Result<Self> {
        let x = pants_matrices([c.0, c.0, b.0])?;
        let fx = frames(&x)?;
        let t = glue(&fx[0], &fx[1], c.1);
        let y = pants_matrices([cbar.0, cbar.0, b.0])?.map(|m| m.mirror());
        let fy = frames(&y)?;
        let g = glue(&fx[2], &fy[2], b.1);
        let yg = y.map(|m| g.conj(&m));
        let fyg = fy.map(|f| g * f);
        let tb = glue(&fyg[0], &fyg[1], cbar.1);
        Ok(Holonomy {
            kind: Tier1::OneHoledTorus,
            names: vec!["a", "x1", "k", "b", "abar", "x1bar", "kbar", "bbar"],
            generators: vec![x[0], x[1], x[2], t, yg[0], yg[1], yg[2], tb],
            relators: vec![
                (w(&[(0, 1), (1, 1), (2, 1)]), vec![]),
                (w(&[(4, 1), (5, 1), (6, 1)]), vec![]),
                (w(&[(3, 1), (1, 1), (3, -1)]), w(&[(0, -1)])),
                (w(&[(7, 1), (5, 1), (7, -1)]), w(&[(4, -1)])),
                (w(&[(6, 1)]), w(&[(2, 1)])),
            ],
        })
    }

    pub fn eval(&self, word: &[(usize, i8)]) -> Mat2 {
        word.iter().fold(Mat2::IDENTITY, |acc, &(g, e)| {
            let m = self.generators[g];
            acc * if e > 0 { m } else { m.inv() }
        })
    }

    pub fn word_length(&self, word: &[(usize, i8)]) -> Result<f64> {
        self.eval(word).translation_length()
    }

    /// Largest relative mismatch over all relators.
    pub fn relator_residual(&self) -> f64 {
        self.relators
            .iter()
            .map(|(l, r)| self.eval(l).projective_gap(&self.eval(r)))
            .fold(0.0, f64::max)
    }

    fn torus_word(&self, letters: &[Letter], mirror: bool) -> Word {
        let (a, b) = if mirror { (4, 7) } else { (0, 3) };
        letters
            .iter()
            .map(|&x| (if x.abs() == 1 { a } else { b }, x.signum()))
            .collect()
    }

    /// Word for a class of the double, or an unsupported-class error.
    pub fn word(&self, class: &DoubledClass) -> Result<Word> {
        let unsupported = || Error::UnsupportedClass(format!("{class:?} on the {:?} double", self.kind));
        match self.kind {
            Tier1::Pants => {
                let boundary = |j: usize, mirror: bool| -> Result<Word> {
                    Ok(match (j, mirror) {
                        (0..=2, false) => w(&[(j, 1)]),
                        (0, true) => w(&[(3, 1)]),
                        (1, true) => w(&[(6, 1), (4, 1), (6, -1)]),
                        (2, true) => w(&[(7, 1), (5, 1), (7, -1)]),
                        _ => return Err(unsupported()),
                    })
                };
                match *class {
                    DoubledClass::Decomposition(DoubledCurve::Boundary(j)) => boundary(j, false),
                    DoubledClass::Original(Class::Boundary(j)) => boundary(j, false),
                    DoubledClass::Mirror(Class::Boundary(j)) => boundary(j, true),
                    DoubledClass::DoubledArc(Class::Arc(arc)) => Ok(match arc.kind {
                        ArcKind::Distinct { b1, b2 } => match (b1.min(b2), b1.max(b2)) {
                            (0, 1) => w(&[(6, 1)]),
                            (0, 2) => w(&[(7, 1)]),
                            _ => w(&[(7, 1), (6, -1)]),
                        },
                        ArcKind::Same { beta: 0 } => w(&[(1, 1), (4, -1)]),
                        ArcKind::Same { beta: 1 } => w(&[(2, 1), (6, 1), (5, -1), (6, -1)]),
                        ArcKind::Same { .. } => w(&[(0, 1), (7, 1), (0, -1), (7, -1)]),
                    }),
                    _ => Err(unsupported()),
                }
            }
            Tier1::OneHoledTorus => {
                let slope_of = |c: &Class| match *c {
                    Class::Interior(0) => Some(Slope::HORIZONTAL),
                    Class::WordCurve(s) => Some(s),
                    _ => None,
                };
                match *class {
                    DoubledClass::Decomposition(DoubledCurve::Original(0)) => Ok(w(&[(0, 1)])),
                    DoubledClass::Decomposition(DoubledCurve::Mirror(0)) => Ok(w(&[(4, 1)])),
                    DoubledClass::Decomposition(DoubledCurve::Boundary(0))
                    | DoubledClass::Original(Class::Boundary(0)) => Ok(w(&[(2, 1)])),
                    DoubledClass::Mirror(Class::Boundary(0)) => Ok(w(&[(6, 1)])),
                    DoubledClass::Original(c) => {
                        let s = slope_of(&c).ok_or_else(unsupported)?;
                        Ok(self.torus_word(&slope_word(s), false))
                    }
                    DoubledClass::Mirror(c) => {
                        let s = slope_of(&c).ok_or_else(unsupported)?;
                        Ok(self.torus_word(&slope_word(s), true))
                    }
                    DoubledClass::DoubledArc(c) => {
                        let s = match c {
                            Class::WordArc(s) => s,
                            Class::Arc(_) => Slope::HORIZONTAL,
                            _ => return Err(unsupported()),
                        };
                        let letters = slope_word(s);
                        let mut word = self.torus_word(&letters, false);
                        word.extend(self.torus_word(&inverse_word(&letters), true));
                        Ok(word)
                    }
                    _ => Err(unsupported()),
                }
            }
        }
    }

    pub fn length(&self, class: &DoubledClass) -> Result<f64> {
        self.word_length(&self.word(class)?)
    }

    /// Ideal endpoints of the axis of a word, for the distance oracle.
    pub fn axis(&self, word: &[(usize, i8)]) -> Result<(f64, f64)> {
        self.eval(word).fixed_points()
    }
}

/// Common-perpendicular length between the axes of two matrices.
pub fn axis_gap(m1: &Mat2, m2: &Mat2) -> Result<f64> {
    Ok(crate::geometry::mobius::axis_distance(m1.fixed_points()?, m2.fixed_points()?))
}
