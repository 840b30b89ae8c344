//! Chebyshev center and radius of a finite Euclidean net, i.e. its minimum
//! enclosing ball.
//!
//! [`cheb`] runs the move-to-front variant of Welzl's algorithm over a seeded
//! random permutation. [`cheb_oracle`] is an exhaustive search over candidate
//! support sets, intended only for cross-checking small inputs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Net, Point};
use crate::linalg::{self, AffineFrame};
use crate::tolerance::{CONTAINMENT_SLACK, TAU_GEOM};

/// Largest net accepted by [`cheb_oracle`].
pub const ORACLE_MAX_POINTS: usize = 12;
/// Largest dimension accepted by [`cheb_oracle`].
pub const ORACLE_MAX_DIM: usize = 6;

const MAX_RETRIES: u64 = 3;

/// Center, radius and a witnessing support set of a minimum enclosing ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebResult {
    pub center: Point,
    pub radius: f64,
    /// Net points on the bounding sphere whose convex hull contains `center`.
    pub support: Vec<Point>,
}

/// Ball through a set of points, centered in their affine hull.
#[derive(Debug, Clone)]
struct Ball {
    center: Vec<f64>,
    radius: f64,
}

impl Ball {
    fn covers(&self, p: &[f64], slack: f64) -> bool {
        linalg::dist(&self.center, p) <= self.radius + slack
    }
}

fn ball_through(rows: &[&[f64]]) -> Option<Ball> {
    match rows.len() {
        0 => None,
        1 => Some(Ball {
            center: rows[0].to_vec(),
            radius: 0.0,
        }),
        2 => {
            let center: Vec<f64> = rows[0]
                .iter()
                .zip(rows[1])
                .map(|(a, b)| (a + b) / 2.0)
                .collect();
            let radius = linalg::dist(rows[0], rows[1]) / 2.0;
            Some(Ball { center, radius })
        }
        _ => {
            if rows.len() > rows[0].len() + 1 {
                return None;
            }
            let frame = AffineFrame::new(rows)?;
            // Equidistance in frame coordinates: (R^T R) lambda = |d_i|^2 / 2,
            // center - origin = Q y with R^T y = |d_i|^2 / 2.
            let rhs: Vec<f64> = rows[1..]
                .iter()
                .map(|p| {
                    let d = linalg::sub(p, rows[0]);
                    linalg::dot(&d, &d) / 2.0
                })
                .collect();
            let y = frame.solve_rt(&rhs);
            let center = frame.to_ambient(&y);
            let radius = rows
                .iter()
                .map(|p| linalg::dist(&center, p))
                .fold(0.0, f64::max);
            Some(Ball { center, radius })
        }
    }
}

/// Center and radius of the smallest sphere through every point of `support`,
/// with center in their affine hull.
pub fn circumball_of_support(support: &[Point]) -> Result<(Point, f64)> {
    if support.is_empty() {
        return Err(Error::DegenerateInput("empty support".into()));
    }
    let dim = support[0].dim();
    for p in support {
        crate::error::check_dim(dim, p.dim())?;
    }
    if support.len() > dim + 1 {
        return Err(Error::DegenerateInput(format!(
            "{} points cannot be affinely independent in dimension {dim}",
            support.len()
        )));
    }
    let rows: Vec<&[f64]> = support.iter().map(|p| p.coords()).collect();
    let ball = ball_through(&rows)
        .ok_or_else(|| Error::DegenerateInput("support is affinely dependent".into()))?;
    Ok((Point::new(ball.center)?, ball.radius))
}

struct MoveToFront<'a> {
    rows: &'a [&'a [f64]],
    order: Vec<usize>,
    max_support: usize,
    slack: f64,
}

impl MoveToFront<'_> {
    /// Smallest ball with `support` on its boundary that covers the first
    /// `end` points of the current order.
    fn solve(&mut self, end: usize, support: &mut Vec<usize>) -> Result<Option<Ball>> {
        let mut ball = if support.is_empty() {
            None
        } else {
            let rows: Vec<&[f64]> = support.iter().map(|&i| self.rows[i]).collect();
            Some(ball_through(&rows).ok_or_else(|| {
                Error::DegenerateInput("affinely dependent support during solve".into())
            })?)
        };
        if support.len() == self.max_support {
            return Ok(ball);
        }
        for i in 0..end {
            let idx = self.order[i];
            let covered = ball
                .as_ref()
                .is_some_and(|b| b.covers(self.rows[idx], self.slack));
            if !covered {
                support.push(idx);
                ball = self.solve(i, support)?;
                support.pop();
                self.order.remove(i);
                self.order.insert(0, idx);
            }
        }
        Ok(ball)
    }
}

/// Minimum enclosing ball with the default permutation seed 0.
pub fn cheb(net: &Net) -> Result<ChebResult> {
    cheb_with_seed(net, 0)
}

/// Minimum enclosing ball; `seed` fixes the processing permutation.
pub fn cheb_with_seed(net: &Net, seed: u64) -> Result<ChebResult> {
    let rows: Vec<&[f64]> = net.points().iter().map(|p| p.coords()).collect();
    if rows.len() == 1 {
        return Ok(singleton(net));
    }
    let slack = CONTAINMENT_SLACK * net.magnitude();
    let mut last_err = None;
    for attempt in 0..=MAX_RETRIES {
        let mut order: Vec<usize> = (0..rows.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        order.shuffle(&mut rng);
        let mut mtf = MoveToFront {
            rows: &rows,
            order,
            max_support: net.dim() + 1,
            slack,
        };
        let mut support = Vec::new();
        match mtf.solve(rows.len(), &mut support) {
            Ok(Some(ball)) => return finish(net, ball.center),
            Ok(None) => unreachable!("non-empty net yields a ball"),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::DegenerateInput("solver failed".into())))
}

fn singleton(net: &Net) -> ChebResult {
    let p = net.points()[0].clone();
    ChebResult {
        center: p.clone(),
        radius: 0.0,
        support: vec![p],
    }
}

/// Radius as the farthest net point from `center`, plus a support witness.
fn finish(net: &Net, center: Vec<f64>) -> Result<ChebResult> {
    let radius = net
        .points()
        .iter()
        .map(|p| linalg::dist(&center, p.coords()))
        .fold(0.0, f64::max);
    let support = extract_support(net, &center, radius).ok_or_else(|| {
        Error::Inconsistency("no support subset witnesses the computed ball".into())
    })?;
    Ok(ChebResult {
        center: Point::new(center)?,
        radius,
        support,
    })
}

const SUPPORT_CANDIDATE_LIMIT: usize = 20;

/// Smallest (then lexicographically first) affinely independent subset of the
/// net points on the sphere whose convex hull contains `center`.
fn extract_support(net: &Net, center: &[f64], radius: f64) -> Option<Vec<Point>> {
    let tol = TAU_GEOM * net.magnitude();
    let candidates: Vec<&Point> = net
        .points()
        .iter()
        .filter(|p| (linalg::dist(center, p.coords()) - radius).abs() <= tol)
        .collect();
    if candidates.is_empty() || candidates.len() > SUPPORT_CANDIDATE_LIMIT {
        return None;
    }
    let max_k = (net.dim() + 1).min(candidates.len());
    for k in 1..=max_k {
        let mut found = None;
        for_each_subset(candidates.len(), k, &mut |idx| {
            let rows: Vec<&[f64]> = idx.iter().map(|&i| candidates[i].coords()).collect();
            if hull_contains(&rows, center, tol) {
                found = Some(idx.iter().map(|&i| candidates[i].clone()).collect());
                return true;
            }
            false
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Whether `x` lies in the convex hull of the affinely independent `rows`
/// (within `tol` of the affine hull, barycentric coordinates >= -TAU_GEOM).
fn hull_contains(rows: &[&[f64]], x: &[f64], tol: f64) -> bool {
    if rows.len() == 1 {
        return linalg::dist(rows[0], x) <= tol;
    }
    let Some(frame) = AffineFrame::new(rows) else {
        return false;
    };
    let rel = linalg::sub(x, &frame.origin);
    let y: Vec<f64> = frame.q.iter().map(|q| linalg::dot(q, &rel)).collect();
    if linalg::dist(&frame.to_ambient(&y), x) > tol {
        return false;
    }
    frame.barycentric(&y).iter().all(|&b| b >= -TAU_GEOM)
}

/// Barycentric coordinates of `x` with respect to affinely independent
/// points, after projecting `x` onto their affine hull.
pub fn barycentric_coordinates(points: &[Point], x: &Point) -> Result<Vec<f64>> {
    if points.len() == 1 {
        return Ok(vec![1.0]);
    }
    let rows: Vec<&[f64]> = points.iter().map(|p| p.coords()).collect();
    let frame = AffineFrame::new(&rows)
        .ok_or_else(|| Error::DegenerateInput("points are affinely dependent".into()))?;
    let rel = linalg::sub(x.coords(), &frame.origin);
    let y: Vec<f64> = frame.q.iter().map(|q| linalg::dot(q, &rel)).collect();
    Ok(frame.barycentric(&y))
}

/// Calls `f` with each `k`-subset of `0..n` in lexicographic order until it
/// returns `true`.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Closed-form ball of a one-dimensional net: the midpoint of its extremes.
pub fn cheb_1d(net: &Net) -> Result<ChebResult> {
    crate::error::check_dim(1, net.dim())?;
    // Points are sorted lexicographically, which in one dimension is numeric.
    let lo = net.points().first().expect("non-empty");
    let hi = net.points().last().expect("non-empty");
    let (a, b) = (lo.coords()[0], hi.coords()[0]);
    let support = if net.len() == 1 {
        vec![lo.clone()]
    } else {
        vec![lo.clone(), hi.clone()]
    };
    Ok(ChebResult {
        center: Point::new(vec![(a + b) / 2.0])?,
        radius: (b - a) / 2.0,
        support,
    })
}

/// Exhaustive search: among all affinely independent subsets of at most
/// `dim + 1` points, the smallest circumball (center in the subset's affine
/// hull) that covers the whole net.
pub fn cheb_oracle(net: &Net) -> Result<ChebResult> {
    if net.len() > ORACLE_MAX_POINTS || net.dim() > ORACLE_MAX_DIM {
        return Err(Error::OracleBudget(format!(
            "oracle handles at most {ORACLE_MAX_POINTS} points in dimension <= {ORACLE_MAX_DIM}, got {} points in dimension {}",
            net.len(),
            net.dim()
        )));
    }
    if net.len() == 1 {
        return Ok(singleton(net));
    }
    let rows: Vec<&[f64]> = net.points().iter().map(|p| p.coords()).collect();
    let slack = CONTAINMENT_SLACK * net.magnitude();
    let mut best: Option<(Ball, Vec<usize>)> = None;
    for k in 2..=(net.dim() + 1).min(rows.len()) {
        for_each_subset(rows.len(), k, &mut |idx| {
            let sub: Vec<&[f64]> = idx.iter().map(|&i| rows[i]).collect();
            if let Some(ball) = ball_through(&sub) {
                let better = best.as_ref().is_none_or(|(b, _)| ball.radius < b.radius);
                if better && rows.iter().all(|p| ball.covers(p, slack)) {
                    best = Some((ball, idx.to_vec()));
                }
            }
            false
        });
    }
    let (ball, idx) = best.ok_or_else(|| {
        Error::DegenerateInput("no candidate support produced an enclosing ball".into())
    })?;
    let radius = rows
        .iter()
        .map(|p| linalg::dist(&ball.center, p))
        .fold(0.0, f64::max);
    Ok(ChebResult {
        center: Point::new(ball.center)?,
        radius,
        support: idx.iter().map(|&i| net.points()[i].clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::distance;

    fn net(rows: &[&[f64]]) -> Net {
        Net::from_rows(rows).unwrap()
    }

    fn close(a: &Point, b: &[f64], tol: f64) -> bool {
        a.coords().iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn subsets_enumerate_in_lex_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, &mut |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_subset(12, 7, &mut |_| {
            count += 1;
            false
        });
        assert_eq!(count, 792);
    }

    #[test]
    fn two_net_is_midpoint_ball() {
        let r = cheb(&net(&[&[0.0, 0.0], &[2.0, 0.0]])).unwrap();
        assert_eq!(r.center.coords(), &[1.0, 0.0]);
        assert_eq!(r.radius, 1.0);
        assert_eq!(r.support.len(), 2);
    }

    #[test]
    fn obtuse_triangle_uses_longest_side() {
        let r = cheb(&net(&[&[0.0, 0.0], &[2.0, 0.0], &[1.0, 0.1]])).unwrap();
        assert!(close(&r.center, &[1.0, 0.0], 1e-15));
        assert!((r.radius - 1.0).abs() < 1e-15);
        assert_eq!(r.support.len(), 2);
    }

    #[test]
    fn equilateral_triangle_circumcenter() {
        let h = 3f64.sqrt() / 2.0;
        let m = net(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, h]]);
        let r = cheb(&m).unwrap();
        assert!(close(&r.center, &[0.5, 3f64.sqrt() / 6.0], 1e-14));
        assert!((r.radius - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(r.support.len(), 3);
        let o = cheb_oracle(&m).unwrap();
        assert!((o.radius - 1.0 / 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn regular_tetrahedron_oracle() {
        let s = 1.0 / 2f64.sqrt();
        // Alternate cube vertices, side sqrt(2) * 2 * s = 1.
        let m = net(&[
            &[s / 2.0, s / 2.0, s / 2.0],
            &[s / 2.0, -s / 2.0, -s / 2.0],
            &[-s / 2.0, s / 2.0, -s / 2.0],
            &[-s / 2.0, -s / 2.0, s / 2.0],
        ]);
        let side = distance(&m.points()[0], &m.points()[1]).unwrap();
        assert!((side - 1.0).abs() < 1e-15);
        let expected = (3.0f64 / 8.0).sqrt();
        let o = cheb_oracle(&m).unwrap();
        assert!((o.radius - expected).abs() < 1e-14);
        assert_eq!(o.support.len(), 4);
        let r = cheb(&m).unwrap();
        assert!((r.radius - expected).abs() < 1e-14);
        assert!(close(&r.center, &[0.0, 0.0, 0.0], 1e-14));
    }

    #[test]
    fn cheb_1d_examples() {
        let r = cheb_1d(&net(&[&[0.0], &[1.0], &[2.0]])).unwrap();
        assert_eq!((r.center.coords()[0], r.radius), (1.0, 1.0));
        let r = cheb_1d(&net(&[&[5.0]])).unwrap();
        assert_eq!((r.center.coords()[0], r.radius), (5.0, 0.0));
        let r = cheb_1d(&net(&[&[-3.0], &[0.0], &[0.5], &[7.0]])).unwrap();
        assert_eq!((r.center.coords()[0], r.radius), (2.0, 5.0));
        assert!(matches!(
            cheb_1d(&net(&[&[0.0, 1.0]])),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn circumball_examples() {
        let p = |c: &[f64]| Point::from_slice(c).unwrap();
        let (c, r) = circumball_of_support(&[p(&[1.0, 2.0])]).unwrap();
        assert_eq!((c.coords(), r), (&[1.0, 2.0][..], 0.0));
        let (c, r) = circumball_of_support(&[p(&[0.0, 0.0]), p(&[2.0, 2.0])]).unwrap();
        assert_eq!(c.coords(), &[1.0, 1.0]);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        let (c, r) =
            circumball_of_support(&[p(&[0.0, 0.0]), p(&[3.0, 0.0]), p(&[0.0, 4.0])]).unwrap();
        assert!(close(&c, &[1.5, 2.0], 1e-15));
        assert!((r - 2.5).abs() < 1e-15);
        assert!(matches!(
            circumball_of_support(&[p(&[0.0, 0.0]), p(&[1.0, 1.0]), p(&[2.0, 2.0])]),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn cocircular_support_is_truncated_to_a_witness() {
        let m = net(&[&[1.0, 0.0], &[0.0, 1.0], &[-1.0, 0.0], &[0.0, -1.0]]);
        let r = cheb(&m).unwrap();
        assert!(close(&r.center, &[0.0, 0.0], 1e-15));
        assert_eq!(r.radius, 1.0);
        // Two antipodal points suffice; lexicographic tie-break picks the
        // first antipodal pair in sorted order.
        assert_eq!(r.support.len(), 2);
        assert_eq!(r.support[0].coords(), &[-1.0, 0.0]);
        assert_eq!(r.support[1].coords(), &[1.0, 0.0]);
    }

    #[test]
    fn oracle_budget_guard() {
        let rows: Vec<Vec<f64>> = (0..13).map(|i| vec![i as f64]).collect();
        let m = Net::from_rows(&rows).unwrap();
        assert!(matches!(cheb_oracle(&m), Err(Error::OracleBudget(_))));
        let m = Net::from_rows(&[vec![0.0; 7]]).unwrap();
        assert!(matches!(cheb_oracle(&m), Err(Error::OracleBudget(_))));
    }

    #[test]
    fn seed_changes_nothing_but_the_path() {
        let m = net(&[
            &[0.1, 0.9],
            &[-0.7, 0.2],
            &[0.5, -0.6],
            &[0.0, 0.0],
            &[0.3, 0.3],
        ]);
        let a = cheb_with_seed(&m, 0).unwrap();
        for seed in 1..20 {
            let b = cheb_with_seed(&m, seed).unwrap();
            assert!((a.radius - b.radius).abs() < 1e-14);
            assert!(close(&a.center, b.center.coords(), 1e-14));
        }
    }
}
