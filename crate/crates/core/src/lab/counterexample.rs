//! Configurations near two-point nets where the center map is not Lipschitz,
//! and a sequence along which it is not uniformly continuous.

use serde::{Deserialize, Serialize};

use super::sample_pair;
use crate::error::{Error, Result};
use crate::geometry::{distance, Net, Point};
use crate::hyperbolic::{
    foot_of_perpendicular, geodesic_point, h_alpha, h_angle, h_cheb3, h_distance, h_midpoint,
    right_triangle_identity_check, HyperbolicPoint, HyperbolicTriangle,
};
use crate::linalg;

/// Planar witness pair `M = {x, y, z}`, `W = {x, y, u}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub m: Net,
    pub w: Net,
    /// Distance from `y` to `z`, the parameter of the construction.
    pub yz: f64,
    /// `cheb displacement / alpha` measured by the solvers.
    pub achieved_ratio: f64,
    /// `xy / (2 yz)` from the measured side lengths.
    pub formula_ratio: f64,
}

/// Points `x = (0, 0)`, `y = (1, 0)`, `z` on the upper half of the circle
/// with diameter `[x, y]` at distance `yz` from `y`, and `u` on the ray from
/// `x` through `z` placed so that `y` lies on the circle with diameter
/// `[x, u]`. Returns `(x, y, z, u)`.
pub fn lemma3_configuration(yz: f64) -> Result<(Point, Point, Point, Point)> {
    if !(yz > 0.0 && yz < 1.0) {
        return Err(Error::Domain(format!("yz must lie in (0, 1), got {yz}")));
    }
    let theta = yz.asin();
    let (s, c) = theta.sin_cos();
    let x = Point::new(vec![0.0, 0.0])?;
    let y = Point::new(vec![1.0, 0.0])?;
    let z = Point::new(vec![c * c, c * s])?;
    let u = Point::new(vec![1.0, s / c])?;
    Ok((x, y, z, u))
}

/// Builds a witness whose ratio exceeds `l_target`, using
/// `yz = min(1 / (4 l_target), 1/4)`.
pub fn lemma3_counterexample(l_target: f64) -> Result<Counterexample> {
    if !(l_target > 0.0 && l_target.is_finite()) {
        return Err(Error::Domain(format!("target must be positive and finite, got {l_target}")));
    }
    let yz = (0.25 / l_target).min(0.25);
    let (x, y, z, u) = lemma3_configuration(yz)?;
    let m = Net::new(vec![x.clone(), y.clone(), z.clone()])?;
    let w = Net::new(vec![x.clone(), y.clone(), u])?;
    let s = sample_pair(&m, &w)?;
    let formula_ratio = distance(&x, &y)? / (2.0 * distance(&z, &y)?);
    let rel = (s.ratio - formula_ratio).abs() / formula_ratio;
    if rel > 1e-6 {
        return Err(Error::Inconsistency(format!(
            "measured ratio {} differs from xy/(2yz) = {formula_ratio} by {rel:e} relative",
            s.ratio
        )));
    }
    if !(s.ratio > l_target) {
        return Err(Error::Inconsistency(format!(
            "ratio {} does not exceed target {l_target}",
            s.ratio
        )));
    }
    Ok(Counterexample {
        m,
        w,
        yz: distance(&y, &z)?,
        achieved_ratio: s.ratio,
        formula_ratio,
    })
}

/// Hyperbolic witness pair with the quantities of the right triangles
/// `x v w` (right angle at `v`) and `w p v` (right angle at `p`), where
/// `v` and `w` are the centers of `M` and `W` and `p` is the foot of the
/// perpendicular from `v` to `[x, w]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicCounterexample {
    /// `[x, y, z]`.
    pub m: [HyperbolicPoint; 3],
    /// `[x, y, u]`.
    pub w: [HyperbolicPoint; 3],
    pub yz: f64,
    pub alpha: f64,
    pub displacement: f64,
    pub achieved_ratio: f64,
    pub pv: f64,
    pub pw: f64,
    pub vw: f64,
    pub vx: f64,
    /// Angle at `w` shared by both right triangles.
    pub psi: f64,
    /// Residuals of `tanh(vx) = sinh(vw) tan(psi)` and
    /// `tanh(pv) = sinh(pw) tan(psi)`.
    pub identity_residuals: [f64; 2],
}

const BISECTION_STEPS: usize = 200;

/// The hyperbolic analogue of [`lemma3_configuration`]: `x`, `y` at distance
/// 1, `z` on the circle with diameter `[x, y]` at distance `yz` from `y`, and
/// `u` on the ray from `x` through `z` with `y` on the circle with diameter
/// `[x, u]` (found by bisection on `xu`).
pub fn lemma3_hyperbolic_configuration(yz: f64) -> Result<HyperbolicCounterexample> {
    if !(yz > 0.0 && yz < 0.5) {
        return Err(Error::Domain(format!("yz must lie in (0, 1/2), got {yz}")));
    }
    let half = 0.5_f64;
    let x = HyperbolicPoint::from_polar(half, std::f64::consts::PI);
    let y = HyperbolicPoint::from_polar(half, 0.0);
    // Isosceles triangle with legs 1/2 at the midpoint: sin(beta/2) sinh(1/2) = sinh(yz/2).
    let beta = 2.0 * ((yz / 2.0).sinh() / half.sinh()).asin();
    let z = HyperbolicPoint::from_polar(half, beta);

    let gap = |t: f64| -> Result<f64> {
        let u = geodesic_point(&x, &z, t)?;
        Ok(h_distance(&h_midpoint(&x, &u), &y) - t / 2.0)
    };
    let mut lo = h_distance(&x, &z);
    if !(gap(lo)? > 0.0) {
        return Err(Error::DegenerateInput("y already inside the circle on [x, z]".into()));
    }
    let mut hi = 2.0 * lo;
    let mut doublings = 0;
    while gap(hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 60 {
            return Err(Error::DegenerateInput("no point u puts y on the circle".into()));
        }
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = geodesic_point(&x, &z, 0.5 * (lo + hi))?;

    let m = [x, y, z];
    let w_net = [x, y, u];
    let (cm, _) = h_cheb3(&m)?;
    let (cw, _) = h_cheb3(&w_net)?;
    let displacement = h_distance(&cm, &cw);
    let alpha = h_alpha(&m, &w_net);

    let v = h_midpoint(&x, &y);
    let w = h_midpoint(&x, &u);
    let p = foot_of_perpendicular(&v, &x, &w)?;
    let xvw = HyperbolicTriangle::new([v, x, w])?;
    let wpv = HyperbolicTriangle::new([p, w, v])?;
    let r1 = right_triangle_identity_check(&xvw, 0)?;
    let r2 = right_triangle_identity_check(&wpv, 0)?;
    Ok(HyperbolicCounterexample {
        m,
        w: w_net,
        yz: h_distance(&y, &z),
        alpha,
        displacement,
        achieved_ratio: displacement / alpha,
        pv: h_distance(&p, &v),
        pw: h_distance(&p, &w),
        vw: h_distance(&v, &w),
        vx: h_distance(&v, &x),
        psi: h_angle(&w, &x, &v)?,
        // Vertex w is the second acute vertex of xvw and the first of wpv.
        identity_residuals: [r1[1], r2[0]],
    })
}

/// Halves `yz` from 1/4 until the hyperbolic witness ratio exceeds
/// `l_target`.
pub fn lemma3_hyperbolic_counterexample(l_target: f64) -> Result<HyperbolicCounterexample> {
    if !(l_target > 0.0 && l_target.is_finite()) {
        return Err(Error::Domain(format!("target must be positive and finite, got {l_target}")));
    }
    let mut yz = 0.25;
    for _ in 0..BISECTION_STEPS {
        let c = lemma3_hyperbolic_configuration(yz)?;
        if c.achieved_ratio > l_target {
            return Ok(c);
        }
        yz /= 2.0;
    }
    Err(Error::SamplingBudget(format!(
        "no parameter reached ratio {l_target} within {BISECTION_STEPS} steps"
    )))
}

/// One pair of the sequence: `M_n = {x_n, y, z_n}`, `Z_n = {x_n, y, u}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceTerm {
    pub n: usize,
    pub m: Net,
    pub z: Net,
    pub alpha: f64,
    pub displacement: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonuniformSequence {
    pub terms: Vec<SequenceTerm>,
    /// Distance from `y` to `u` in the base configuration.
    pub yu: f64,
}

/// Base configuration `yz = 1/4`; `x_n = y + n (x - y)` and `z_n` is where
/// the ray from `u` through `x_n` first meets the circle with diameter
/// `[x_n, y]`. The Hausdorff distance tends to zero while the centers stay
/// apart: `M_n` is right-angled at `z_n` and `Z_n` at `y`, so the centers are
/// the midpoints of `[x_n, y]` and `[x_n, u]`, which are `yu / 2` apart.
pub fn lemma3_nonuniform_sequence(n_max: usize) -> Result<NonuniformSequence> {
    if n_max < 2 {
        return Err(Error::Domain(format!("n_max must be at least 2, got {n_max}")));
    }
    let (x, y, _, u) = lemma3_configuration(0.25)?;
    let (xc, yc, uc) = (x.coords(), y.coords(), u.coords());
    let mut terms = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let nf = n as f64;
        let xn: Vec<f64> = yc.iter().zip(xc).map(|(b, a)| b + nf * (a - b)).collect();
        let c: Vec<f64> = xn.iter().zip(yc).map(|(a, b)| (a + b) / 2.0).collect();
        let dir = linalg::sub(&xn, uc);
        let len = linalg::norm(&dir);
        let d: Vec<f64> = dir.iter().map(|v| v / len).collect();
        let uc_rel = linalg::sub(uc, &c);
        let b = linalg::dot(&d, &uc_rel);
        // Power of u with respect to the circle, |u-c|^2 - |y-c|^2, without cancellation.
        let uy = linalg::sub(uc, yc);
        let sum: Vec<f64> = uc.iter().zip(yc).zip(&c).map(|((a, b), c)| a + b - 2.0 * c).collect();
        let k = linalg::dot(&uy, &sum);
        let disc = b * b - k;
        if !(disc >= 0.0) || !(k > 0.0) {
            return Err(Error::DegenerateInput(format!("ray misses the circle at n = {n}")));
        }
        let t = k / (-b + disc.sqrt());
        let zn: Vec<f64> = uc.iter().zip(&d).map(|(a, d)| a + t * d).collect();
        let xn = Point::new(xn)?;
        let m = Net::new(vec![xn.clone(), y.clone(), Point::new(zn)?])?;
        let z = Net::new(vec![xn, y.clone(), u.clone()])?;
        let s = sample_pair(&m, &z)?;
        terms.push(SequenceTerm {
            n,
            m,
            z,
            alpha: s.alpha_ab,
            displacement: s.cheb_displacement,
        });
    }
    let a_last = terms[n_max - 1].alpha;
    let a_half = terms[n_max / 2 - 1].alpha;
    if !(a_last < a_half) {
        return Err(Error::Inconsistency(format!(
            "alpha did not decrease: {a_half} at n = {}, {a_last} at n = {n_max}",
            n_max / 2
        )));
    }
    Ok(NonuniformSequence {
        terms,
        yu: distance(&y, &u)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_witness_examples() {
        let c = lemma3_counterexample(5.0).unwrap();
        assert!((c.yz - 0.05).abs() < 1e-15);
        assert!((c.achieved_ratio - 10.0).abs() < 1e-6 * 10.0);
        let c = lemma3_counterexample(1.0).unwrap();
        assert!((c.achieved_ratio - 2.0).abs() < 1e-6 * 2.0);
        // Small targets are capped at yz = 1/4.
        let c = lemma3_counterexample(0.1).unwrap();
        assert!((c.achieved_ratio - 2.0).abs() < 1e-6 * 2.0);
        assert!(lemma3_counterexample(0.0).is_err());
    }

    #[test]
    fn planar_ratio_tends_to_one_near_half() {
        let (x, y, z, u) = lemma3_configuration(0.49).unwrap();
        let m = Net::new(vec![x.clone(), y.clone(), z]).unwrap();
        let w = Net::new(vec![x, y, u]).unwrap();
        let r = sample_pair(&m, &w).unwrap().ratio;
        assert!((r - 1.0 / 0.98).abs() < 1e-9, "{r}");
    }

    #[test]
    fn hyperbolic_ratio_grows_as_parameter_shrinks() {
        let ratios: Vec<f64> = [0.2, 0.1, 0.05, 0.025]
            .iter()
            .map(|&yz| lemma3_hyperbolic_configuration(yz).unwrap().achieved_ratio)
            .collect();
        assert!(ratios.windows(2).all(|w| w[1] > w[0]), "{ratios:?}");
        let c = lemma3_hyperbolic_counterexample(2.0).unwrap();
        assert!(c.achieved_ratio > 2.0);
        assert!(c.identity_residuals.iter().all(|r| *r <= 1e-9), "{c:?}");
    }

    #[test]
    fn sequence_starts_at_base_pair() {
        let seq = lemma3_nonuniform_sequence(20).unwrap();
        let (x, y, z, u) = lemma3_configuration(0.25).unwrap();
        let base = &seq.terms[0];
        let m = Net::new(vec![x.clone(), y.clone(), z]).unwrap();
        let w = Net::new(vec![x, y, u]).unwrap();
        assert!(crate::hausdorff::alpha(&base.m, &m).unwrap() < 1e-12);
        assert_eq!(base.z, w);
        assert!(seq.terms[19].alpha < seq.terms[9].alpha);
        for t in &seq.terms {
            assert!((t.displacement - seq.yu / 2.0).abs() < 1e-9);
        }
        assert!(lemma3_nonuniform_sequence(1).is_err());
    }
}
