//! Hyperbolic trigonometry of a pair of pants.
//!
//! Lengths of the orthogeodesic arcs of a pair of pants are evaluated in
//! log space, so boundary lengths in the thousands neither overflow `cosh`
//! nor lose the additive constants that the asymptotic checks depend on.

use crate::error::{domain, Result};

const LN_2: f64 = std::f64::consts::LN_2;

/// `ln cosh x`, accurate for all finite `x`.
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// `ln sinh x` for `x > 0`; returns `-inf` at zero.
pub fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x - LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// `ln(e^a + e^b)` without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `asinh(e^ln_y)`.
pub fn asinh_exp(ln_y: f64) -> f64 {
    if ln_y > 30.0 {
        // asinh y = ln 2y + 1/(4y^2) + ...
        ln_y + LN_2 + 0.25 * (-2.0 * ln_y).exp()
    } else {
        ln_y.exp().asinh()
    }
}

/// `arccosh(1 + e^ln_y)`.
pub fn acosh1p_exp(ln_y: f64) -> f64 {
    if ln_y > 30.0 {
        LN_2 + ln_y + (-ln_y).exp().ln_1p()
    } else {
        let y = ln_y.exp();
        (y + (y * (y + 2.0)).sqrt()).ln_1p()
    }
}

/// Inverse hyperbolic cosine that absorbs rounding just below 1.
///
/// Values in `[1 - 1e-12, 1)` are clamped to 1; anything smaller is a
/// domain error.
pub fn arccosh_guarded(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(format!("arccosh of non-finite value {x}")));
    }
    if x >= 1.0 {
        Ok((x + (x * x - 1.0).sqrt()).ln())
    } else if x >= 1.0 - 1e-12 {
        Ok(0.0)
    } else {
        Err(domain(format!("arccosh argument {x} < 1")))
    }
}

fn check_length(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(domain(format!("{name} must be finite and >= 0, got {x}")));
    }
    Ok(())
}

/// Boundary lengths of a pair of pants; zero encodes a cusp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PantsBoundaryLengths {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

impl PantsBoundaryLengths {
    pub fn new(b1: f64, b2: f64, b3: f64) -> Result<Self> {
        check_length("b1", b1)?;
        check_length("b2", b2)?;
        check_length("b3", b3)?;
        Ok(Self { b1, b2, b3 })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.b1, self.b2, self.b3]
    }
}

/// Length of the simple arc from boundary `β` back to itself, separating
/// `γ₁` from `γ₂`.
///
/// Uses `sinh(ℓ/2) = sqrt(c₁² + c₂² + 2·c_β·c₁·c₂) / sinh(ℓ_β/2)` with
/// `c = cosh(length/2)`, which is the pentagon formula rearranged so that
/// nothing cancels.
pub fn arc_length_same_boundary(lb: f64, lg1: f64, lg2: f64) -> Result<f64> {
    check_length("lb", lb)?;
    check_length("lg1", lg1)?;
    check_length("lg2", lg2)?;
    if lb == 0.0 {
        return Err(domain("arc from a cusp is undefined (lb = 0)"));
    }
    // fixed argument order keeps the result exactly symmetric in γ₁, γ₂
    let (lg1, lg2) = (lg1.max(lg2), lg1.min(lg2));
    let (cb, c1, c2) = (ln_cosh(lb / 2.0), ln_cosh(lg1 / 2.0), ln_cosh(lg2 / 2.0));
    let num = log_add_exp(log_add_exp(2.0 * c1, 2.0 * c2), LN_2 + cb + c1 + c2);
    let ln_half = 0.5 * num - ln_sinh(lb / 2.0);
    Ok(2.0 * asinh_exp(ln_half))
}

/// Length of the simple arc joining distinct boundaries `β₁`, `β₂`.
///
/// With `bᵢ' = ℓ(βᵢ)/2` the hexagon formula reads `cosh ℓ = 1 + y` where
/// `y = (cosh(ℓ_γ/2) + cosh(b₁' − b₂')) / (sinh b₁' · sinh b₂')`.
pub fn arc_length_distinct_boundaries(lb1: f64, lb2: f64, lg: f64) -> Result<f64> {
    check_length("lb1", lb1)?;
    check_length("lb2", lb2)?;
    check_length("lg", lg)?;
    if lb1 == 0.0 || lb2 == 0.0 {
        return Err(domain("arc endpoint on a cusp is undefined"));
    }
    let (h1, h2) = (lb1.max(lb2) / 2.0, lb1.min(lb2) / 2.0);
    let ln_y = log_add_exp(ln_cosh(lg / 2.0), ln_cosh(h1 - h2)) - ln_sinh(h1) - ln_sinh(h2);
    Ok(acosh1p_exp(ln_y))
}

/// `ln(3·|χ| / sinh(eᵗ·ω/2))`; never underflows.
pub fn ln_theret_upper_bound(omega: f64, t: f64, abs_chi: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(domain(format!("leaf weight must be > 0, got {omega}")));
    }
    if !t.is_finite() {
        return Err(domain("path parameter must be finite"));
    }
    if !(abs_chi >= 1.0) || !abs_chi.is_finite() {
        return Err(domain(format!("|chi| must be >= 1, got {abs_chi}")));
    }
    Ok((3.0 * abs_chi).ln() - ln_sinh(t.exp() * omega / 2.0))
}

/// Decay prescription `3·|χ| / sinh(eᵗ·ω/2)` for a curve carrying a leaf of
/// weight `ω`.
///
/// Fails instead of returning a subnormal or zero length once the value
/// leaves the normal range of `f64`.
pub fn theret_upper_bound(omega: f64, t: f64, abs_chi: f64) -> Result<f64> {
    let v = ln_theret_upper_bound(omega, t, abs_chi)?.exp();
    if v < f64::MIN_POSITIVE {
        return Err(domain(format!(
            "decay length underflows double precision at t = {t}, omega = {omega}"
        )));
    }
    Ok(v)
}

/// Intersection numbers of a lamination with the three sides of a pants,
/// together with the weights of those sides as leaves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PantsIntersectionData {
    pub i: [f64; 3],
    pub w: [f64; 3],
}

impl PantsIntersectionData {
    pub fn new(i: [f64; 3], w: [f64; 3]) -> Result<Self> {
        for k in 0..3 {
            if !(i[k] >= 0.0) || !i[k].is_finite() || !(w[k] >= 0.0) || !w[k].is_finite() {
                return Err(domain(format!("side {k}: values must be finite and >= 0")));
            }
            if i[k] > 0.0 && w[k] > 0.0 {
                return Err(domain(format!(
                    "side {k} is a leaf and is crossed at the same time"
                )));
            }
        }
        Ok(Self { i, w })
    }

    pub fn crossings(i: [f64; 3]) -> Result<Self> {
        Self::new(i, [0.0; 3])
    }
}

/// `i(μ, α)` for the arc from side `β` (index 0) to itself; sides 1 and 2
/// are `γ₁`, `γ₂` in either order.
pub fn intersection_arc_same(data: &PantsIntersectionData) -> f64 {
    let ib = data.i[0];
    let wb = data.w[0];
    let (g1, g2) = if data.i[1] >= data.i[2] {
        (data.i[1], data.i[2])
    } else {
        (data.i[2], data.i[1])
    };
    if g1 > ib + g2 {
        g1 - ib + wb
    } else if ib > g1 + g2 {
        0.0
    } else {
        0.5 * (g1 + g2 - ib) + wb
    }
}

/// `i(μ, α)` for the arc joining sides `β₁` (index 0) and `β₂` (index 1);
/// side 2 is the third boundary `γ`.
///
/// The (C′) branch adds the full leaf weights, as the case list of the key
/// inequality states; see the crate README for how this relates to the
/// half-weight endpoint convention used by the lamination module.
pub fn intersection_arc_distinct(data: &PantsIntersectionData) -> f64 {
    let (b1, b2) = if data.i[0] >= data.i[1] {
        (data.i[0], data.i[1])
    } else {
        (data.i[1], data.i[0])
    };
    let ig = data.i[2];
    let ws = data.w[0] + data.w[1];
    if ig > b1 + b2 {
        0.5 * (ig - b1 - b2) + ws
    } else {
        0.5 * ws
    }
}

/// Elementary two-sided bounds used to size the asymptotic constants.
pub mod estimates {
    /// `(½eˣ, eˣ)`, bracketing `cosh x` for `x ≥ 0`.
    pub fn cosh_bounds(x: f64) -> (f64, f64) {
        let e = x.exp();
        (0.5 * e, e)
    }

    /// `(¼e²ˣ, e²ˣ)`, bracketing `cosh² x` for `x ≥ 0`.
    pub fn cosh_sq_bounds(x: f64) -> (f64, f64) {
        let e = (2.0 * x).exp();
        (0.25 * e, e)
    }

    /// Bounds on `sinh x` valid for `x > a > 0`:
    /// `½(1 − e^{−2a})eˣ ≤ sinh x ≤ ½eˣ`.
    pub fn sinh_bounds_beyond(x: f64, a: f64) -> (f64, f64) {
        let e = x.exp();
        (0.5 * (1.0 - (-2.0 * a).exp()) * e, 0.5 * e)
    }

    /// Bounds on `sinh x` valid for `0 < x < 1`: `x < sinh x < 2x`.
    pub fn sinh_bounds_small(x: f64) -> (f64, f64) {
        (x, 2.0 * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_case1(b: f64, g1: f64, g2: f64) -> f64 {
        let (cb, c1, c2) = ((b / 2.0).cosh(), (g1 / 2.0).cosh(), (g2 / 2.0).cosh());
        let v = (-1.0 + cb * cb + c1 * c1 + c2 * c2 + 2.0 * cb * c1 * c2) / (b / 2.0).sinh().powi(2);
        2.0 * v.sqrt().acosh()
    }

    fn naive_case2(b1: f64, b2: f64, g: f64) -> f64 {
        (((g / 2.0).cosh() + (b1 / 2.0).cosh() * (b2 / 2.0).cosh())
            / ((b1 / 2.0).sinh() * (b2 / 2.0).sinh()))
        .acosh()
    }

    #[test]
    fn log_space_matches_naive_formulas() {
        for &(a, b, c) in &[(2.0, 2.0, 2.0), (0.3, 5.0, 1.1), (6.0, 0.1, 4.0), (1.0, 1.0, 40.0)] {
            assert!((arc_length_same_boundary(a, b, c).unwrap() - naive_case1(a, b, c)).abs() < 1e-12);
            assert!((arc_length_distinct_boundaries(a, b, c).unwrap() - naive_case2(a, b, c)).abs() < 1e-12);
        }
    }

    #[test]
    fn huge_arguments_stay_finite() {
        let l = arc_length_distinct_boundaries(1.0, 1.0, 2.0 * 10f64.exp()).unwrap();
        assert!((l - 10f64.exp() - 1.303_644_651_894_054_4).abs() < 1e-9);
        let l = arc_length_same_boundary(600.0, 1.0, 1.0).unwrap();
        assert!(l.is_finite() && l > 0.0);
        // the true length is below the smallest subnormal
        assert_eq!(arc_length_same_boundary(3000.0, 1.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn cusps() {
        assert!(arc_length_same_boundary(0.0, 1.0, 1.0).is_err());
        assert!(arc_length_distinct_boundaries(1.0, 0.0, 1.0).is_err());
        let v = arc_length_distinct_boundaries(2.0, 2.0, 0.0).unwrap();
        assert!((v - naive_case2(2.0, 2.0, 0.0)).abs() < 1e-13);
        assert!(arc_length_same_boundary(2.0, 0.0, 0.0).unwrap() > 0.0);
        assert!(arc_length_same_boundary(-1.0, 1.0, 1.0).is_err());
        assert!(arc_length_same_boundary(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn arccosh_guard() {
        assert_eq!(arccosh_guarded(1.0 - 5e-13).unwrap(), 0.0);
        assert!(arccosh_guarded(0.99).is_err());
        assert!((arccosh_guarded(3.0).unwrap() - 3f64.acosh()).abs() < 1e-15);
    }

    #[test]
    fn intersection_cases() {
        let d = |i| PantsIntersectionData::crossings(i).unwrap();
        assert_eq!(intersection_arc_same(&d([4.0, 3.0, 2.0])), 0.5);
        assert_eq!(intersection_arc_same(&d([10.0, 3.0, 2.0])), 0.0);
        assert_eq!(intersection_arc_same(&d([1.0, 5.0, 2.0])), 4.0);
        assert_eq!(intersection_arc_same(&d([1.0, 2.0, 5.0])), 4.0);
        assert_eq!(intersection_arc_distinct(&d([0.0, 0.0, 2.0])), 1.0);
        assert_eq!(intersection_arc_distinct(&d([1.0, 1.0, 1.0])), 0.0);
        let w = PantsIntersectionData::new([0.0; 3], [1.0, 1.0, 0.0]).unwrap();
        assert_eq!(intersection_arc_distinct(&w), 1.0);
        assert!(PantsIntersectionData::new([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn seam_continuity_same() {
        // i(γ₁) = i(β) + i(γ₂): (A) and (B) agree
        for &(b, g2, w) in &[(1.0, 2.0, 0.0), (0.0, 3.5, 2.0), (2.25, 0.5, 0.0)] {
            let g1 = b + g2;
            let data = PantsIntersectionData::new([b, g1, g2], [w, 0.0, 0.0]);
            let Ok(data) = data else { continue };
            let a = 0.5 * (g1 + g2 - b) + w;
            let bb = g1 - b + w;
            assert_eq!(a, bb);
            assert_eq!(intersection_arc_same(&data), a);
        }
    }

    #[test]
    fn theret() {
        let v = theret_upper_bound(1.0, 0.0, 2.0).unwrap();
        assert!((v - 6.0 / 0.5f64.sinh()).abs() < 1e-12);
        assert!(theret_upper_bound(1.0, 1.0, 2.0).unwrap() < v);
        assert!(theret_upper_bound(0.0, 1.0, 2.0).is_err());
        assert!(theret_upper_bound(1.0, 8.0, 2.0).is_err());
        assert!(ln_theret_upper_bound(1.0, 8.0, 2.0).unwrap().is_finite());
    }

    #[test]
    fn sinh_beyond_bound_uses_negative_exponent() {
        // the variant with e^{2A} would make the lower bound negative
        let (lo, hi) = estimates::sinh_bounds_beyond(3.0, 1.0);
        assert!(lo > 0.0 && lo <= 3f64.sinh() && 3f64.sinh() <= hi);
    }
}
