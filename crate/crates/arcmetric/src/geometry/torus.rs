//! Curve lengths on the one-holed torus from its Fenchel–Nielsen data.
//!
//! Curves of slope `(p, 1)` have the closed form
//! `cosh(ℓ/2) = cosh(d/2)·cosh((τ + pℓ_C)/2)`, where `d` is the seam between
//! the two copies of `C`. All other slopes follow from the trace relation
//! `T(s₁ + s₂) + T(s₁ − s₂) = T(s₁)·T(s₂)` for Farey neighbours, run in log
//! space so that large lengths neither overflow nor cancel.

use std::collections::HashMap;

use crate::error::Result;
use crate::hyptrig::{
    arc_length_distinct_boundaries, arc_length_same_boundary, asinh_exp, ln_cosh, ln_sinh,
    log_add_exp,
};
use crate::topology::Slope;

/// Length data `(ℓ_C, τ_C, ℓ_B)` of a one-holed torus.
#[derive(Debug, Clone)]
pub struct TorusLengths {
    pub curve: f64,
    pub twist: f64,
    pub boundary: f64,
    seam: f64,
    cache: HashMap<Slope, f64>,
}

impl TorusLengths {
    pub fn new(curve: f64, twist: f64, boundary: f64) -> Result<Self> {
        let seam = arc_length_distinct_boundaries(curve, curve, boundary)?;
        Ok(Self { curve, twist, boundary, seam, cache: HashMap::new() })
    }

    /// `ln(2·cosh(ℓ_s/2))`, the log of the absolute trace.
    pub fn ln_trace(&mut self, s: Slope) -> f64 {
        if let Some(&v) = self.cache.get(&s) {
            return v;
        }
        let v = if s.q == 0 {
            std::f64::consts::LN_2 + ln_cosh(self.curve / 2.0)
        } else if s.q == 1 {
            let u = self.twist + s.p as f64 * self.curve;
            std::f64::consts::LN_2 + ln_cosh(self.seam / 2.0) + ln_cosh(u / 2.0)
        } else {
            let (s1, s2) = farey_parents(s);
            let diff = Slope::new(s1.p - s2.p, s1.q - s2.q).expect("neighbours differ by a primitive vector");
            let (t1, t2, t3) = (self.ln_trace(s1), self.ln_trace(s2), self.ln_trace(diff));
            t1 + t2 + (-(t3 - t1 - t2).exp()).ln_1p()
        };
        self.cache.insert(s, v);
        v
    }

    pub fn curve_length(&mut self, s: Slope) -> f64 {
        if s == Slope::HORIZONTAL {
            return self.curve;
        }
        if s.q == 1 {
            // sinh²(ℓ/4) = sinh²(d/4)·cosh(u/2) + sinh²(u/4), exact near zero
            let u = self.twist + s.p as f64 * self.curve;
            let a = 2.0 * ln_sinh(self.seam / 4.0) + ln_cosh(u / 2.0);
            let b = if u == 0.0 { f64::NEG_INFINITY } else { 2.0 * ln_sinh(u.abs() / 4.0) };
            return 4.0 * asinh_exp(0.5 * log_add_exp(a, b));
        }
        let z = self.ln_trace(s) - std::f64::consts::LN_2;
        // arccosh(e^z) = z + ln(1 + sqrt(1 − e^{−2z}))
        2.0 * (z + (1.0 + (-(-2.0 * z).exp_m1()).max(0.0).sqrt()).ln())
    }

    /// The arc disjoint from the curve of slope `s` cuts off a pants with
    /// sides `(B, γ_s, γ_s)`.
    pub fn arc_length(&mut self, s: Slope) -> Result<f64> {
        let l = self.curve_length(s);
        arc_length_same_boundary(self.boundary, l, l)
    }
}

/// The two Farey parents `s₁, s₂` of a slope with `q ≥ 2`, `s = s₁ + s₂`.
pub fn farey_parents(s: Slope) -> (Slope, Slope) {
    debug_assert!(s.q >= 2);
    // q1 = p⁻¹ mod q, so p·q1 − q·p1 = 1
    let q1 = (1..s.q).find(|&k| (s.p * k).rem_euclid(s.q) == 1).expect("p is a unit mod q");
    let p1 = (s.p * q1 - 1).div_euclid(s.q);
    let s1 = Slope { p: p1, q: q1 };
    let s2 = Slope { p: s.p - p1, q: s.q - q1 };
    (s1, s2)
}

/// Generator letters for words in the torus group: `±1` is `a^{±1}`,
/// `±2` is `b^{±1}`.
pub type Letter = i8;

fn reduce_concat(u: &[Letter], v: &[Letter]) -> Vec<Letter> {
    let mut out = u.to_vec();
    for &x in v {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|x| -x).collect()
}

/// A simple word in `⟨a, b⟩` representing the curve of slope `s`, where
/// `a` is the decomposition curve `(1,0)` and `b` has slope `(0,1)`.
///
/// Descends the Stern–Brocot tree from a basis containing `s` in its cone;
/// every mediant `uv` of a basis `(u, v)` is again simple.
pub fn slope_word(s: Slope) -> Vec<Letter> {
    let (mut u, mut hu, mut v, mut hv) = if s.p >= 0 {
        (vec![1], Slope { p: 1, q: 0 }, vec![2], Slope { p: 0, q: 1 })
    } else {
        (vec![2], Slope { p: 0, q: 1 }, vec![-2, -1, 2], Slope { p: -1, q: 0 })
    };
    loop {
        if s == hu {
            return u;
        }
        if s == hv {
            return v;
        }
        let m = Slope { p: hu.p + hv.p, q: hu.q + hv.q };
        let uv = reduce_concat(&u, &v);
        if s == m {
            return uv;
        }
        if m.det(&s).signum() == m.det(&hu).signum() {
            v = uv;
            hv = m;
        } else {
            u = uv;
            hu = m;
        }
    }
}
