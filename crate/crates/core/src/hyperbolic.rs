//! Hyperbolic plane of curvature -1 in the hyperboloid model
//! `x0^2 - x1^2 - x2^2 = 1`, `x0 > 0`.
//!
//! Distances use `2 asinh(|a - b|_M / 2)` rather than `acosh(<a, b>)`, which
//! keeps full relative precision for nearby points.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::{CONTAINMENT_SLACK, TAU_ANGLE, TAU_GEOM};

/// Largest Minkowski-norm deviation the JSON loader repairs by rescaling.
pub const RENORMALIZE_LIMIT: f64 = 1e-6;

const NEWTON_MAX_ITERS: usize = 50;
const NEWTON_RESIDUAL: f64 = 1e-12;

/// Minkowski bilinear form `a0 b0 - a1 b1 - a2 b2`.
pub fn minkowski(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2]
}

/// A point on the upper sheet of the hyperboloid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HyperbolicRecord", into = "HyperbolicRecord")]
pub struct HyperbolicPoint {
    coords: [f64; 3],
}

impl HyperbolicPoint {
    pub fn new(coords: [f64; 3]) -> Result<Self> {
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::Model(format!("non-finite coordinates {coords:?}")));
        }
        if !(coords[0] > 0.0) {
            return Err(Error::Model(format!("x0 must be positive, got {}", coords[0])));
        }
        let dev = minkowski(&coords, &coords) - 1.0;
        if dev.abs() > TAU_GEOM * coords[0] * coords[0] {
            return Err(Error::Model(format!(
                "Minkowski norm deviates from 1 by {dev:e}"
            )));
        }
        Ok(Self { coords })
    }

    /// Keeps points already on the sheet, rescales those whose Minkowski norm
    /// is off by less than [`RENORMALIZE_LIMIT`], and rejects the rest.
    pub fn renormalized(coords: [f64; 3]) -> Result<Self> {
        if let Ok(p) = Self::new(coords) {
            return Ok(p);
        }
        if coords.iter().any(|x| !x.is_finite()) || !(coords[0] > 0.0) {
            return Err(Error::Model(format!("not on the upper sheet: {coords:?}")));
        }
        let q = minkowski(&coords, &coords);
        if (q - 1.0).abs() >= RENORMALIZE_LIMIT * coords[0] * coords[0] {
            return Err(Error::Model(format!(
                "Minkowski norm {q} too far from 1 to renormalize"
            )));
        }
        Ok(Self::normalize(coords))
    }

    /// Projects a future-timelike vector onto the sheet. Callers guarantee
    /// `<v, v> > 0` and `v0 > 0`.
    fn normalize(v: [f64; 3]) -> Self {
        let s = minkowski(&v, &v).sqrt();
        Self {
            coords: [v[0] / s, v[1] / s, v[2] / s],
        }
    }

    pub fn origin() -> Self {
        Self {
            coords: [1.0, 0.0, 0.0],
        }
    }

    /// The point at distance `r` from the origin in direction `theta`.
    pub fn from_polar(r: f64, theta: f64) -> Self {
        let s = r.sinh();
        Self {
            coords: [r.cosh(), s * theta.cos(), s * theta.sin()],
        }
    }

    pub fn coords(&self) -> &[f64; 3] {
        &self.coords
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperbolicRecord {
    model: String,
    coords: [f64; 3],
}

impl TryFrom<HyperbolicRecord> for HyperbolicPoint {
    type Error = Error;

    fn try_from(rec: HyperbolicRecord) -> Result<Self> {
        if rec.model != "hyperboloid" {
            return Err(Error::Model(format!(
                "field `model`: expected \"hyperboloid\", got {:?}",
                rec.model
            )));
        }
        Self::renormalized(rec.coords).map_err(|e| Error::Model(format!("field `coords`: {e}")))
    }
}

impl From<HyperbolicPoint> for HyperbolicRecord {
    fn from(p: HyperbolicPoint) -> Self {
        Self {
            model: "hyperboloid".into(),
            coords: p.coords,
        }
    }
}

fn diff(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// `-<a - b, a - b>` = `4 sinh^2(d/2)`, computed from the difference vector.
fn chord2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let d = diff(a, b);
    (d[1] * d[1] + d[2] * d[2] - d[0] * d[0]).max(0.0)
}

/// Geodesic distance.
pub fn h_distance(a: &HyperbolicPoint, b: &HyperbolicPoint) -> f64 {
    2.0 * (chord2(&a.coords, &b.coords).sqrt() / 2.0).asinh()
}

/// Geodesic midpoint: the normalized Minkowski sum.
pub fn h_midpoint(a: &HyperbolicPoint, b: &HyperbolicPoint) -> HyperbolicPoint {
    if a == b {
        return *a;
    }
    let s = [
        a.coords[0] + b.coords[0],
        a.coords[1] + b.coords[1],
        a.coords[2] + b.coords[2],
    ];
    HyperbolicPoint::normalize(s)
}

/// Unnormalized tangent vector at `a` pointing toward `b`:
/// `b - <a, b> a`, written as `(b - a) - (<a, b> - 1) a` to avoid cancellation.
fn tangent_toward(a: &HyperbolicPoint, b: &HyperbolicPoint) -> [f64; 3] {
    let d = diff(&b.coords, &a.coords);
    let h = chord2(&a.coords, &b.coords) / 2.0;
    [
        d[0] - h * a.coords[0],
        d[1] - h * a.coords[1],
        d[2] - h * a.coords[2],
    ]
}

fn det3(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Angle at `at` between the geodesics toward `a` and `b`, in `[0, pi]`.
pub fn h_angle(at: &HyperbolicPoint, a: &HyperbolicPoint, b: &HyperbolicPoint) -> Result<f64> {
    if at == a || at == b {
        return Err(Error::DegenerateInput("angle with a zero-length side".into()));
    }
    let u = tangent_toward(at, a);
    let v = tangent_toward(at, b);
    // Tangent vectors are spacelike; -<u, v> is their Euclidean-like inner
    // product and det[at, u, v] the oriented area element.
    let cos_part = -minkowski(&u, &v);
    let sin_part = det3(&at.coords, &u, &v).abs();
    Ok(sin_part.atan2(cos_part))
}

/// The point at arc length `t` from `a` along the geodesic ray through `b`.
pub fn geodesic_point(a: &HyperbolicPoint, b: &HyperbolicPoint, t: f64) -> Result<HyperbolicPoint> {
    if a == b {
        return Err(Error::DegenerateInput("geodesic needs two distinct points".into()));
    }
    let v = tangent_toward(a, b);
    let n = (-minkowski(&v, &v)).max(0.0).sqrt();
    if !(n > 0.0) {
        return Err(Error::DegenerateInput("points too close to define a direction".into()));
    }
    let (c, s) = (t.cosh(), t.sinh() / n);
    let p = [
        c * a.coords[0] + s * v[0],
        c * a.coords[1] + s * v[1],
        c * a.coords[2] + s * v[2],
    ];
    Ok(HyperbolicPoint::normalize(p))
}

/// Nearest point to `x` on the complete geodesic through `a` and `b`.
pub fn foot_of_perpendicular(
    x: &HyperbolicPoint,
    a: &HyperbolicPoint,
    b: &HyperbolicPoint,
) -> Result<HyperbolicPoint> {
    if a == b {
        return Err(Error::DegenerateInput("geodesic needs two distinct points".into()));
    }
    // Normal of the plane span(a, b) with respect to the Minkowski form.
    let (p, q) = (&a.coords, &b.coords);
    let w = [
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ];
    let n = [w[0], -w[1], -w[2]];
    let nn = minkowski(&n, &n);
    if !(nn < 0.0) {
        return Err(Error::DegenerateInput("degenerate geodesic normal".into()));
    }
    let k = minkowski(&x.coords, &n) / nn;
    let proj = [
        x.coords[0] - k * n[0],
        x.coords[1] - k * n[1],
        x.coords[2] - k * n[2],
    ];
    Ok(HyperbolicPoint::normalize(proj))
}

/// Hausdorff distance between two finite sets of hyperbolic points.
pub fn h_alpha(a: &[HyperbolicPoint], b: &[HyperbolicPoint]) -> f64 {
    crate::hausdorff::alpha_with(a, b, h_distance)
}

/// Lorentz transformation stored as a 3x3 matrix acting on coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: [[f64; 3]; 3],
}

impl Isometry {
    /// The boost carrying `g` to the origin.
    pub fn boost_to_origin(g: &HyperbolicPoint) -> Self {
        let [gamma, w1, w2] = g.coords;
        let k = 1.0 / (gamma + 1.0);
        Self {
            m: [
                [gamma, -w1, -w2],
                [-w1, 1.0 + k * w1 * w1, k * w1 * w2],
                [-w2, k * w1 * w2, 1.0 + k * w2 * w2],
            ],
        }
    }

    /// Rotation by `theta` about the origin.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            m: [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]],
        }
    }

    /// `J M^T J` with `J = diag(1, -1, -1)`.
    pub fn inverse(&self) -> Self {
        let sign = [1.0, -1.0, -1.0];
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = sign[i] * self.m[j][i] * sign[j];
            }
        }
        Self { m }
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Self { m }
    }

    pub fn apply(&self, p: &HyperbolicPoint) -> HyperbolicPoint {
        let c = &p.coords;
        let v = [0, 1, 2].map(|i| self.m[i][0] * c[0] + self.m[i][1] * c[1] + self.m[i][2] * c[2]);
        HyperbolicPoint::normalize(v)
    }
}

/// Exponential map at the origin for a tangent vector `(v1, v2)`.
pub fn exp_origin(v: [f64; 2]) -> HyperbolicPoint {
    let r = v[0].hypot(v[1]);
    if r == 0.0 {
        return HyperbolicPoint::origin();
    }
    let s = r.sinh() / r;
    HyperbolicPoint::normalize([r.cosh(), s * v[0], s * v[1]])
}

/// Exponential map at `base`, with the tangent frame transported from the
/// origin by the boost.
pub fn exp_at(base: &HyperbolicPoint, v: [f64; 2]) -> HyperbolicPoint {
    Isometry::boost_to_origin(base).inverse().apply(&exp_origin(v))
}

/// Normalized Minkowski mean of a set of points.
pub fn centroid(points: &[HyperbolicPoint]) -> HyperbolicPoint {
    let mut s = [0.0; 3];
    for p in points {
        for (acc, x) in s.iter_mut().zip(&p.coords) {
            *acc += x;
        }
    }
    HyperbolicPoint::normalize(s)
}

/// A triangle with pairwise distinct vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicTriangle {
    vertices: [HyperbolicPoint; 3],
}

impl HyperbolicTriangle {
    pub fn new(vertices: [HyperbolicPoint; 3]) -> Result<Self> {
        let [a, b, c] = &vertices;
        if a == b || b == c || a == c {
            return Err(Error::DegenerateInput("triangle vertices must be distinct".into()));
        }
        Ok(Self { vertices })
    }

    /// Right triangle with the right angle at the origin and the given legs
    /// along the two coordinate geodesics. Vertex 0 is the right angle,
    /// vertex 1 ends the leg `leg1`, vertex 2 ends `leg2`.
    pub fn right_from_legs(leg1: f64, leg2: f64) -> Result<Self> {
        Self::new([
            HyperbolicPoint::origin(),
            HyperbolicPoint::from_polar(leg1, 0.0),
            HyperbolicPoint::from_polar(leg2, FRAC_PI_2),
        ])
    }

    pub fn vertices(&self) -> &[HyperbolicPoint; 3] {
        &self.vertices
    }

    /// Side lengths; side `i` is opposite vertex `i`.
    pub fn sides(&self) -> [f64; 3] {
        let [a, b, c] = &self.vertices;
        [h_distance(b, c), h_distance(a, c), h_distance(a, b)]
    }

    /// Interior angles; angle `i` is at vertex `i`.
    pub fn angles(&self) -> [f64; 3] {
        let v = &self.vertices;
        [0, 1, 2].map(|i| {
            h_angle(&v[i], &v[(i + 1) % 3], &v[(i + 2) % 3]).expect("distinct vertices")
        })
    }

    pub fn map(&self, iso: &Isometry) -> Self {
        Self {
            vertices: self.vertices.map(|p| iso.apply(&p)),
        }
    }
}

/// `|tanh(opposite) - sinh(adjacent) tan(angle)|` for an acute angle of a
/// right triangle, `opposite` and `adjacent` being its legs.
pub fn right_triangle_residual(opposite: f64, adjacent: f64, angle: f64) -> f64 {
    (opposite.tanh() - adjacent.sinh() * angle.tan()).abs()
}

/// Residuals of `tanh(opposite leg) = sinh(adjacent leg) tan(angle)` at the
/// two acute vertices of a triangle right-angled at `right_vertex`, in
/// increasing vertex order.
pub fn right_triangle_identity_check(t: &HyperbolicTriangle, right_vertex: usize) -> Result<[f64; 2]> {
    if right_vertex > 2 {
        return Err(Error::Domain(format!("vertex index {right_vertex} out of range")));
    }
    let angles = t.angles();
    let sides = t.sides();
    if (angles[right_vertex] - FRAC_PI_2).abs() > TAU_ANGLE {
        return Err(Error::Domain(format!(
            "angle at vertex {right_vertex} is {} rad, not a right angle",
            angles[right_vertex]
        )));
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != right_vertex).collect();
    let residual = |k: usize, other: usize| {
        // Leg opposite k, and the leg joining k to the right angle (opposite `other`).
        right_triangle_residual(sides[k], sides[other], angles[k])
    };
    Ok([residual(others[0], others[1]), residual(others[1], others[0])])
}

/// Chebyshev center and radius of three points in the hyperbolic plane.
///
/// When the third point lies in the ball over the longest side, the center
/// is that side's midpoint; otherwise it is the circumcenter, found by Newton
/// iteration in tangent coordinates at the centroid (falling back to
/// [`h_cheb3_minimax`] if Newton does not converge).
pub fn h_cheb3(points: &[HyperbolicPoint; 3]) -> Result<(HyperbolicPoint, f64)> {
    let [a, b, c] = points;
    if a == b || b == c || a == c {
        return Err(Error::DegenerateInput("h_cheb3 needs three distinct points".into()));
    }
    let radius_of = |center: &HyperbolicPoint| {
        points
            .iter()
            .map(|p| h_distance(center, p))
            .fold(0.0, f64::max)
    };
    let sides = [h_distance(b, c), h_distance(a, c), h_distance(a, b)];
    let far = (0..3)
        .max_by(|&i, &j| sides[i].total_cmp(&sides[j]))
        .expect("three sides");
    let (i, j) = ((far + 1) % 3, (far + 2) % 3);
    let mid = h_midpoint(&points[i], &points[j]);
    let half = sides[far] / 2.0;
    let scale = points.iter().fold(1.0_f64, |m, p| m.max(p.coords[0]));
    if h_distance(&mid, &points[far]) <= half + CONTAINMENT_SLACK * scale {
        return Ok((mid, radius_of(&mid)));
    }
    match newton_circumcenter(points) {
        Some(center) => Ok((center, radius_of(&center))),
        None => Ok(h_cheb3_minimax(points)),
    }
}

fn newton_circumcenter(points: &[HyperbolicPoint; 3]) -> Option<HyperbolicPoint> {
    let g = centroid(points);
    let to_origin = Isometry::boost_to_origin(&g);
    let local = points.map(|p| to_origin.apply(&p));
    let residual = |v: [f64; 2]| {
        let c = exp_origin(v);
        let d0 = h_distance(&c, &local[0]);
        [d0 - h_distance(&c, &local[1]), d0 - h_distance(&c, &local[2])]
    };
    let norm = |r: [f64; 2]| r[0].hypot(r[1]);
    let mut v = [0.0, 0.0];
    let mut r = residual(v);
    for _ in 0..NEWTON_MAX_ITERS {
        if norm(r) < NEWTON_RESIDUAL {
            return Some(to_origin.inverse().apply(&exp_origin(v)));
        }
        // Central-difference Jacobian.
        let h = 1e-7 * (1.0 + v[0].hypot(v[1]));
        let mut jac = [[0.0; 2]; 2];
        for k in 0..2 {
            let mut vp = v;
            let mut vm = v;
            vp[k] += h;
            vm[k] -= h;
            let (rp, rm) = (residual(vp), residual(vm));
            jac[0][k] = (rp[0] - rm[0]) / (2.0 * h);
            jac[1][k] = (rp[1] - rm[1]) / (2.0 * h);
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if !(det.abs() > 0.0) || !det.is_finite() {
            return None;
        }
        let step = [
            (jac[1][1] * r[0] - jac[0][1] * r[1]) / det,
            (-jac[1][0] * r[0] + jac[0][0] * r[1]) / det,
        ];
        // Halve the step until the residual decreases.
        let mut t = 1.0;
        loop {
            let cand = [v[0] - t * step[0], v[1] - t * step[1]];
            let rc = residual(cand);
            if norm(rc) < norm(r) || t < 1e-6 {
                v = cand;
                r = rc;
                break;
            }
            t /= 2.0;
        }
    }
    (norm(r) < NEWTON_RESIDUAL).then(|| to_origin.inverse().apply(&exp_origin(v)))
}

const GOLDEN_ITERS: usize = 90;

fn golden_min<F: FnMut(f64) -> f64>(mut lo: f64, mut hi: f64, mut f: F) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..GOLDEN_ITERS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Chebyshev center of three points by direct minimization of the maximum
/// distance, using nested golden-section search in the projective (Klein)
/// chart centered at the centroid. Geodesics are straight lines in that chart,
/// so the objective is convex there.
pub fn h_cheb3_minimax(points: &[HyperbolicPoint; 3]) -> (HyperbolicPoint, f64) {
    let g = centroid(points);
    let to_origin = Isometry::boost_to_origin(&g);
    let local = points.map(|p| to_origin.apply(&p));
    let klein = local.map(|p| [p.coords[1] / p.coords[0], p.coords[2] / p.coords[0]]);
    let from_klein = |k: [f64; 2]| {
        let s = 1.0 - k[0] * k[0] - k[1] * k[1];
        HyperbolicPoint::normalize([1.0, k[0], k[1]].map(|x| x / s.sqrt()))
    };
    let objective = |k: [f64; 2]| {
        let c = from_klein(k);
        local.iter().map(|p| h_distance(&c, p)).fold(0.0, f64::max)
    };
    let lo0 = klein.iter().map(|k| k[0]).fold(f64::INFINITY, f64::min);
    let hi0 = klein.iter().map(|k| k[0]).fold(f64::NEG_INFINITY, f64::max);
    let lo1 = klein.iter().map(|k| k[1]).fold(f64::INFINITY, f64::min);
    let hi1 = klein.iter().map(|k| k[1]).fold(f64::NEG_INFINITY, f64::max);
    let inner = |k0: f64| {
        // Keep the search inside the unit disk.
        let chord = (1.0 - k0 * k0).max(0.0).sqrt() * (1.0 - 1e-12);
        let (lo, hi) = (lo1.max(-chord), hi1.min(chord));
        golden_min(lo, hi, |k1| objective([k0, k1]))
    };
    let (k0, _) = golden_min(lo0, hi0, |k0| inner(k0).1);
    let (k1, best) = inner(k0);
    let center = to_origin.inverse().apply(&from_klein([k0, k1]));
    (center, best)
}
