//! Euclidean points, nets, rays and affine planes.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, AffineFrame};
use crate::tolerance::TAU_GEOM;

/// A point of `R^d` with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("a point needs at least one coordinate".into()));
        }
        if let Some(i) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidPoint(format!(
                "coordinate {i} is not finite ({})",
                coords[i]
            )));
        }
        // -0.0 and 0.0 compare equal; store one representation so that the
        // lexicographic order used by `Net` agrees with exact equality.
        let coords = coords.into_iter().map(|x| x + 0.0).collect();
        Ok(Self { coords })
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            coords: vec![0.0; dim.max(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Total lexicographic order on coordinates.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }

    /// Image under `x -> scale * x + shift`. Used by invariance tests and the
    /// sampling code.
    pub fn affine_image(&self, scale: f64, shift: &[f64]) -> Result<Self> {
        check_dim(self.dim(), shift.len())?;
        Self::new(
            self.coords
                .iter()
                .zip(shift)
                .map(|(x, s)| scale * x + s)
                .collect(),
        )
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Euclidean distance.
pub fn distance(a: &Point, b: &Point) -> Result<f64> {
    check_dim(a.dim(), b.dim())?;
    Ok(linalg::dist(&a.coords, &b.coords))
}

/// Midpoint `(a + b) / 2`, the unique equidistant point in Euclidean space.
pub fn midpoint(a: &Point, b: &Point) -> Result<Point> {
    check_dim(a.dim(), b.dim())?;
    Ok(Point {
        coords: a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| (x + y) / 2.0)
            .collect(),
    })
}

/// A finite set of distinct points sharing one dimension, stored in
/// lexicographic order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "NetRecord", into = "NetRecord")]
pub struct Net {
    points: Vec<Point>,
    capacity: usize,
}

impl Net {
    /// A net whose capacity equals its size.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        Self::with_capacity(points, n)
    }

    /// A net of at most `capacity` points.
    pub fn with_capacity(mut points: Vec<Point>, capacity: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidNet("a net needs at least one point".into()));
        }
        if points.len() > capacity {
            return Err(Error::InvalidNet(format!(
                "{} points exceed capacity {capacity}",
                points.len()
            )));
        }
        let dim = points[0].dim();
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        points.sort_by(Point::lex_cmp);
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidNet(format!("duplicate point {}", w[0])));
        }
        Ok(Self { points, capacity })
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let points = rows
            .iter()
            .map(|r| Point::from_slice(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points
            .binary_search_by(|q| q.lex_cmp(p))
            .is_ok()
    }

    /// Largest absolute coordinate; the scale for relative tolerances.
    pub fn magnitude(&self) -> f64 {
        crate::tolerance::magnitude(self.points.iter().map(|p| p.coords()))
    }

    /// Image of every point under `x -> scale * x + shift`.
    pub fn affine_image(&self, scale: f64, shift: &[f64]) -> Result<Self> {
        let pts = self
            .points
            .iter()
            .map(|p| p.affine_image(scale, shift))
            .collect::<Result<Vec<_>>>()?;
        Self::with_capacity(pts, self.capacity)
    }
}

/// Nets are sets: equality ignores capacity.
impl PartialEq for Net {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

/// Wire format `{"dim": d, "points": [[x1, ..., xd], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetRecord {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl TryFrom<NetRecord> for Net {
    type Error = Error;

    fn try_from(rec: NetRecord) -> Result<Self> {
        if rec.dim == 0 {
            return Err(Error::InvalidNet("field `dim`: must be at least 1".into()));
        }
        if rec.points.is_empty() {
            return Err(Error::InvalidNet("field `points`: must not be empty".into()));
        }
        let mut pts = Vec::with_capacity(rec.points.len());
        for (i, row) in rec.points.into_iter().enumerate() {
            if row.len() != rec.dim {
                return Err(Error::InvalidNet(format!(
                    "field `points[{i}]`: expected {} coordinates, found {}",
                    rec.dim,
                    row.len()
                )));
            }
            let p = Point::new(row)
                .map_err(|e| Error::InvalidNet(format!("field `points[{i}]`: {e}")))?;
            pts.push(p);
        }
        Net::new(pts).map_err(|e| Error::InvalidNet(format!("field `points`: {e}")))
    }
}

impl From<Net> for NetRecord {
    fn from(net: Net) -> Self {
        Self {
            dim: net.dim(),
            points: net.points.into_iter().map(Point::into_coords).collect(),
        }
    }
}

/// `xZ`: distance from a point to the nearest member of a net.
pub fn point_to_net_distance(x: &Point, net: &Net) -> Result<f64> {
    check_dim(net.dim(), x.dim())?;
    Ok(net
        .points
        .iter()
        .map(|p| linalg::dist(x.coords(), p.coords()))
        .fold(f64::INFINITY, f64::min))
}

/// Largest pairwise distance; zero for a singleton.
pub fn diameter(net: &Net) -> f64 {
    let pts = net.points();
    let mut best = 0.0_f64;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            best = best.max(linalg::dist(a.coords(), b.coords()));
        }
    }
    best
}

/// Smallest pairwise distance; `None` for a singleton.
pub fn min_pairwise_distance(net: &Net) -> Option<f64> {
    let pts = net.points();
    let mut best: Option<f64> = None;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let d = linalg::dist(a.coords(), b.coords());
            best = Some(best.map_or(d, |m| m.min(d)));
        }
    }
    best
}

/// Ray with a vertex, passing through a second point.
#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    vertex: Point,
    through: Point,
    direction: Vec<f64>,
}

impl Ray {
    pub fn new(vertex: Point, through: Point) -> Result<Self> {
        check_dim(vertex.dim(), through.dim())?;
        if vertex == through {
            return Err(Error::DegenerateInput(
                "ray needs two distinct points".into(),
            ));
        }
        let d = linalg::sub(through.coords(), vertex.coords());
        let n = linalg::norm(&d);
        let direction = d.into_iter().map(|x| x / n).collect();
        Ok(Self {
            vertex,
            through,
            direction,
        })
    }

    pub fn vertex(&self) -> &Point {
        &self.vertex
    }

    pub fn through(&self) -> &Point {
        &self.through
    }

    /// Unit direction from the vertex toward `through`.
    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    /// The point at arc length `t` from the vertex.
    pub fn point_at(&self, t: f64) -> Result<Point> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("ray parameter must be >= 0, got {t}")));
        }
        if t == 0.0 {
            return Ok(self.vertex.clone());
        }
        Point::new(
            self.vertex
                .coords()
                .iter()
                .zip(&self.direction)
                .map(|(v, d)| v + t * d)
                .collect(),
        )
    }

    /// Signed arc-length coordinate of the orthogonal projection of `x` onto
    /// the supporting line.
    pub fn parameter_of(&self, x: &Point) -> Result<f64> {
        check_dim(self.vertex.dim(), x.dim())?;
        Ok(linalg::dot(
            &linalg::sub(x.coords(), self.vertex.coords()),
            &self.direction,
        ))
    }
}

/// `ray_point(r, t)`: the point of `r` at arc length `t`.
pub fn ray_point(ray: &Ray, t: f64) -> Result<Point> {
    ray.point_at(t)
}

/// Affine `m`-plane spanned by `m + 1` affinely independent points.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    spanning: Vec<Point>,
    frame: AffineFrame,
}

impl Hyperplane {
    pub fn new(spanning: Vec<Point>) -> Result<Self> {
        if spanning.is_empty() {
            return Err(Error::DegenerateInput("empty spanning set".into()));
        }
        let dim = spanning[0].dim();
        for p in &spanning {
            check_dim(dim, p.dim())?;
        }
        if spanning.len() > dim + 1 {
            return Err(Error::DegenerateInput(format!(
                "{} points cannot be affinely independent in dimension {dim}",
                spanning.len()
            )));
        }
        let rows: Vec<&[f64]> = spanning.iter().map(|p| p.coords()).collect();
        let frame = AffineFrame::new(&rows).ok_or_else(|| {
            Error::DegenerateInput("spanning points are affinely dependent".into())
        })?;
        Ok(Self { spanning, frame })
    }

    pub fn spanning_points(&self) -> &[Point] {
        &self.spanning
    }

    /// Dimension `m` of the plane.
    pub fn plane_dim(&self) -> usize {
        self.frame.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.spanning[0].dim()
    }

    pub fn project(&self, x: &Point) -> Result<Point> {
        check_dim(self.ambient_dim(), x.dim())?;
        Point::new(self.frame.project(x.coords()))
    }

    /// Euclidean distance from `x` to the plane.
    pub fn distance_to(&self, x: &Point) -> Result<f64> {
        let p = self.project(x)?;
        Ok(linalg::dist(p.coords(), x.coords()))
    }
}

/// Nearest point of the plane's affine span to `x`.
pub fn project_to_hyperplane(x: &Point, plane: &Hyperplane) -> Result<Point> {
    plane.project(x)
}

/// Angle at vertex `at` between the segments toward `a` and `b`, in `[0, pi]`.
pub fn angle(at: &Point, a: &Point, b: &Point) -> Result<f64> {
    check_dim(at.dim(), a.dim())?;
    check_dim(at.dim(), b.dim())?;
    let u = linalg::sub(a.coords(), at.coords());
    let v = linalg::sub(b.coords(), at.coords());
    if linalg::norm(&u) == 0.0 || linalg::norm(&v) == 0.0 {
        return Err(Error::DegenerateInput("angle with a zero-length side".into()));
    }
    // atan2 of |u x v| and u.v keeps precision near 0 and pi.
    Ok(cross_norm(&u, &v).atan2(linalg::dot(&u, &v)))
}

/// `|u x v|` from the 2x2 minors, which avoids the cancellation in
/// `|u|^2 |v|^2 - (u.v)^2`.
fn cross_norm(u: &[f64], v: &[f64]) -> f64 {
    let n = u.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let m = u[i] * v[j] - u[j] * v[i];
            s += m * m;
        }
    }
    s.sqrt()
}

/// Relative geometric tolerance for quantities built from these points.
pub fn geom_tol(points: &[&Point]) -> f64 {
    TAU_GEOM * crate::tolerance::magnitude(points.iter().map(|p| p.coords()))
}
