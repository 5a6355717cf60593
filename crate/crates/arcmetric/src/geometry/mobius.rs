//! `SL(2, ℝ)` matrices acting on the upper half-plane.
//!
//! Points on the ideal boundary are `f64` values with `f64::INFINITY`
//! standing for `∞`.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::hyptrig::arccosh_guarded;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };
    /// Rotation by π about `i`.
    pub const HALF_TURN: Mat2 = Mat2 { a: 0.0, b: -1.0, c: 1.0, d: 0.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn diag(x: f64, y: f64) -> Self {
        Mat2 { a: x, b: 0.0, c: 0.0, d: y }
    }

    /// Hyperbolic translation by `s` along the imaginary axis.
    pub fn shift(s: f64) -> Self {
        Mat2::diag((s / 2.0).exp(), (-s / 2.0).exp())
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn inv(&self) -> Mat2 {
        let det = self.det();
        Mat2 { a: self.d / det, b: -self.b / det, c: -self.c / det, d: self.a / det }
    }

    /// Rescales to determinant one; the determinant must be positive.
    pub fn unimodular(&self) -> Mat2 {
        let s = self.det().sqrt().recip();
        Mat2 { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    /// Conjugation by `z ↦ -z̄`, the reflection in the imaginary axis.
    pub fn mirror(&self) -> Mat2 {
        Mat2 { a: self.a, b: -self.b, c: -self.c, d: self.d }
    }

    pub fn conj(&self, m: &Mat2) -> Mat2 {
        *self * *m * self.inv()
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// Distance to `other` in `PSL(2, ℝ)`, relative to the entry size.
    pub fn projective_gap(&self, other: &Mat2) -> f64 {
        let minus = (self.a - other.a).abs().max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs());
        let plus = (self.a + other.a).abs().max((self.b + other.b).abs())
            .max((self.c + other.c).abs())
            .max((self.d + other.d).abs());
        minus.min(plus) / self.max_abs().max(other.max_abs()).max(1.0)
    }

    pub fn act(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn act_ideal(&self, x: f64) -> f64 {
        if x.is_infinite() {
            return if self.c == 0.0 { f64::INFINITY } else { self.a / self.c };
        }
        let den = self.c * x + self.d;
        if den == 0.0 {
            f64::INFINITY
        } else {
            (self.a * x + self.b) / den
        }
    }

    /// Translation length `2·arccosh(|tr|/2)`.
    pub fn translation_length(&self) -> Result<f64> {
        Ok(2.0 * arccosh_guarded(self.trace().abs() / 2.0)?)
    }

    /// Repelling and attracting fixed points of a hyperbolic element.
    pub fn fixed_points(&self) -> Result<(f64, f64)> {
        let tr = self.trace().abs();
        if !(tr > 2.0) {
            return Err(domain(format!("not hyperbolic: |trace| = {tr}")));
        }
        let Mat2 { a, b, c, d } = *self;
        if c.abs() <= 1e-14 * a.abs().max(d.abs()) {
            let f = b / (d - a);
            return Ok(if a.abs() > d.abs() { (f, f64::INFINITY) } else { (f64::INFINITY, f) });
        }
        // roots of c z² + (d − a) z − b, written to avoid cancellation
        let disc = ((tr - 2.0) * (tr + 2.0)).sqrt();
        let s = if a - d >= 0.0 { 1.0 } else { -1.0 };
        let z1 = ((a - d) + s * disc) / (2.0 * c);
        let z2 = if z1 == 0.0 { ((a - d) - s * disc) / (2.0 * c) } else { -b / (c * z1) };
        // the attracting point has |cz + d| > 1
        Ok(if (c * z1 + d).abs() > (c * z2 + d).abs() { (z2, z1) } else { (z1, z2) })
    }
}

/// Orientation-preserving map sending `u ↦ 0` and `v ↦ ∞`, unimodular.
pub fn to_vertical(u: f64, v: f64) -> Mat2 {
    let m = if v.is_infinite() {
        Mat2::new(1.0, -u, 0.0, 1.0)
    } else if u.is_infinite() {
        Mat2::new(0.0, -1.0, 1.0, -v)
    } else if u - v > 0.0 {
        Mat2::new(1.0, -u, 1.0, -v)
    } else {
        Mat2::new(-1.0, u, 1.0, -v)
    };
    m.unimodular()
}

/// As [`to_vertical`], additionally sending the point `p` of the geodesic
/// `(u, v)` to `i`.
pub fn to_vertical_through(u: f64, v: f64, p: Complex64) -> Mat2 {
    let m = to_vertical(u, v);
    let w = m.act(p);
    (Mat2::new(1.0, -w.re, 0.0, w.im) * m).unimodular()
}

/// Hyperbolic distance between two disjoint geodesics given by their
/// ideal endpoints.
///
/// This is the independent oracle: it only uses cross-ratios of endpoints.
pub fn axis_distance(g1: (f64, f64), g2: (f64, f64)) -> f64 {
    let m = to_vertical(g1.0, g1.1);
    let (mut u, mut v) = (m.act_ideal(g2.0).abs(), m.act_ideal(g2.1).abs());
    if u > v {
        std::mem::swap(&mut u, &mut v);
    }
    ((v.sqrt() + u.sqrt()) / (v.sqrt() - u.sqrt())).ln()
}

/// Foot on geodesic `gi` of the common perpendicular to `gj`.
pub fn perpendicular_foot(gi: (f64, f64), gj: (f64, f64)) -> Result<Complex64> {
    let m = to_vertical(gi.0, gi.1);
    let (x, y) = (m.act_ideal(gj.0), m.act_ideal(gj.1));
    if !(x * y > 0.0) || x.is_infinite() || y.is_infinite() {
        return Err(domain("geodesics are not disjoint"));
    }
    Ok(m.inv().act(Complex64::new(0.0, (x * y).sqrt())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points_of_diagonal_and_conjugates() {
        let a = Mat2::diag(2.0, 0.5);
        assert_eq!(a.fixed_points().unwrap(), (0.0, f64::INFINITY));
        let g = Mat2::new(1.0, 2.0, 3.0, 7.0);
        let h = g.conj(&a);
        let (r, at) = h.fixed_points().unwrap();
        assert!((r - g.act_ideal(0.0)).abs() < 1e-12);
        assert!((at - g.act_ideal(f64::INFINITY)).abs() < 1e-12);
        assert!(Mat2::HALF_TURN.fixed_points().is_err());
    }

    #[test]
    fn distance_between_vertical_and_semicircle() {
        // (0,∞) and (1, e^2): cosh d = (e²+1)/(e²−1)
        let d = axis_distance((0.0, f64::INFINITY), (1.0, 2f64.exp()));
        assert!((d.cosh() - (2f64.exp() + 1.0) / (2f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn foot_lies_on_both_perpendicular() {
        let f = perpendicular_foot((0.0, f64::INFINITY), (1.0, 4.0)).unwrap();
        assert!(f.re.abs() < 1e-15 && (f.im - 2.0).abs() < 1e-15);
    }

    #[test]
    fn mirror_is_an_involution() {
        let g = Mat2::new(1.0, 2.0, 3.0, 7.0);
        assert_eq!(g.mirror().mirror(), g);
        assert_eq!(g.mirror().det(), g.det());
    }
}
