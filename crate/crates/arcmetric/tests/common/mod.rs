//! Shared sampling helpers for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use arcmetric::geometry::FNPoint;
use arcmetric::lamination::{dt_decode, DTCoordinates, RationalLamination};
use arcmetric::topology::{build_surface, Class, Slope, Surface};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pants_surface() -> Arc<Surface> {
    Arc::new(build_surface(0, 0, 3).unwrap())
}

pub fn torus_surface() -> Arc<Surface> {
    Arc::new(build_surface(1, 0, 1).unwrap())
}

pub fn random_pants(r: &mut impl Rng, lo: f64, hi: f64) -> FNPoint {
    FNPoint::pants(r.gen_range(lo..hi), r.gen_range(lo..hi), r.gen_range(lo..hi)).unwrap()
}

pub fn random_torus(r: &mut impl Rng) -> FNPoint {
    FNPoint::one_holed_torus(r.gen_range(0.2..4.0), r.gen_range(-2.0..2.0), r.gen_range(0.2..4.0)).unwrap()
}

/// A dyadic weight `k/8` with `1 ≤ k ≤ max`.
pub fn dyadic(r: &mut impl Rng, max: u32) -> f64 {
    r.gen_range(1..=max) as f64 / 8.0
}

/// A nonzero pants lamination from random dyadic `θ̂` values.
pub fn random_pants_lamination(r: &mut impl Rng) -> RationalLamination {
    let s = pants_surface();
    loop {
        let b: Vec<f64> = (0..3).map(|_| r.gen_range(-16i32..=16) as f64 / 8.0).collect();
        if b.iter().all(|&x| x == 0.0) {
            continue;
        }
        return dt_decode(s.clone(), &DTCoordinates { curves: vec![], boundaries: b }).unwrap();
    }
}

/// A random Farey triangle `(u, v, u+v)` below the strip `k ≤ p/q ≤ k+1`.
fn random_triangle(r: &mut impl Rng) -> (Slope, Slope) {
    let k = r.gen_range(-3i64..=3);
    let (mut u, mut v) = (Slope::new(k, 1).unwrap(), Slope::new(k + 1, 1).unwrap());
    for _ in 0..r.gen_range(0..4) {
        let m = Slope::new(u.p + v.p, u.q + v.q).unwrap();
        if r.gen_bool(0.5) {
            u = m;
        } else {
            v = m;
        }
    }
    (u, v)
}

/// A nonzero torus lamination drawn from the supported shapes.
pub fn random_torus_lamination(r: &mut impl Rng) -> RationalLamination {
    let s = torus_surface();
    let local = s.parse_class("a11").unwrap();
    let comps: Vec<(Class, f64)> = match r.gen_range(0..5) {
        0 => {
            let (u, v) = random_triangle(r);
            let m = Slope::new(u.p + v.p, u.q + v.q).unwrap();
            vec![
                (Class::WordArc(u), dyadic(r, 16)),
                (Class::WordArc(v), dyadic(r, 16)),
                (Class::WordArc(m), dyadic(r, 16)),
            ]
        }
        1 => {
            let (u, _) = random_triangle(r);
            vec![(Class::WordArc(u), dyadic(r, 16)), (Class::WordCurve(u), dyadic(r, 16))]
        }
        2 => {
            let (u, _) = random_triangle(r);
            vec![(Class::WordCurve(u), dyadic(r, 16)), (Class::Boundary(0), dyadic(r, 16))]
        }
        3 => {
            let k = r.gen_range(-3i64..=3);
            vec![
                (local, dyadic(r, 16)),
                (Class::WordArc(Slope::new(k, 1).unwrap()), dyadic(r, 16)),
                (Class::WordArc(Slope::new(k + 1, 1).unwrap()), dyadic(r, 16)),
            ]
        }
        _ => vec![(local, dyadic(r, 16)), (Class::Interior(0), dyadic(r, 16))],
    };
    RationalLamination::new(s, comps).unwrap()
}
