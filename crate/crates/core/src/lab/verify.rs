//! Randomized checks of the Lipschitz-type bounds.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use rand::Rng;

use super::{random_net, random_point, random_unit, sample_pair, trial_rng, LemmaId, LemmaReport, Worst};
use crate::chebyshev::cheb;
use crate::error::{Error, Result};
use crate::geometry::{angle, diameter, distance, Net, Point};
use crate::linalg;
use crate::tolerance::{TAU_GEOM, TAU_VERIFY};

/// Maximum number of random draws a rejection sampler may spend per run.
pub const SAMPLING_BUDGET: usize = 1_000_000;

fn check_counts(trials: usize, dim: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    if dim == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    Ok(())
}

fn net_of(points: Vec<Point>) -> Result<Net> {
    Net::new(points).map_err(|e| Error::DegenerateInput(e.to_string()))
}

fn offset(base: &Point, dir: &[f64], t: f64) -> Point {
    let c = base.coords().iter().zip(dir).map(|(b, d)| b + t * d).collect();
    Point::new(c).expect("finite coordinates")
}

/// Random pairs of two-point nets. Besides the ratio bound of 1, checks
/// `alpha <= displacement + (D[M] + D[Z]) / 2` and counts its violations.
pub fn verify_lemma1(trials: usize, dim: usize, seed: u64) -> Result<LemmaReport> {
    check_counts(trials, dim)?;
    let mut worst = Worst::default();
    let mut violations = 0;
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let m = random_net(&mut rng, 2, dim);
        let z = random_net(&mut rng, 2, dim);
        let s = sample_pair(&m, &z)?;
        let upper = s.cheb_displacement + (diameter(&m) + diameter(&z)) / 2.0;
        if s.alpha_ab > upper + TAU_VERIFY {
            violations += 1;
        }
        worst.offer(s);
    }
    let worst = worst.sample.expect("at least one trial");
    Ok(LemmaReport::new(LemmaId::L1, trials, 1.0, worst, violations))
}

/// Random pairs of one-dimensional `n`-point nets; bound 1.
pub fn verify_lemma2(trials: usize, n: usize, seed: u64) -> Result<LemmaReport> {
    check_counts(trials, n)?;
    let mut worst = Worst::default();
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let m = random_net(&mut rng, n, 1);
        let z = random_net(&mut rng, n, 1);
        worst.offer(sample_pair(&m, &z)?);
    }
    let worst = worst.sample.expect("at least one trial");
    Ok(LemmaReport::new(LemmaId::L2, trials, 1.0, worst, 0))
}

/// `1 / (2 sin phi)` when the angle `phi` at `u` is nonzero and acute and the
/// angle at `v` is acute; `1/2` otherwise (including `phi == pi/2`).
pub fn lemma4_constant(u: &Point, v: &Point, w: &Point) -> Result<f64> {
    if u == v || v == w || u == w {
        return Err(Error::DegenerateInput("u, v, w must be distinct".into()));
    }
    let phi = angle(u, v, w)?;
    let at_v = angle(v, u, w)?;
    if phi > 0.0 && phi < FRAC_PI_2 && at_v < FRAC_PI_2 {
        Ok(1.0 / (2.0 * phi.sin()))
    } else {
        Ok(0.5)
    }
}

/// Arc-length intervals of the ray from `u` through `w` that the sampler
/// spreads `z` over: up to the foot `p` of the perpendicular from `v`,
/// between `p` and the point `q` with `[q, v]` perpendicular to `[u, v]`, and
/// beyond `q`. Without an acute angle at `u` there is a single interval.
fn ray_strata(u: &Point, v: &Point, e: &[f64], s_w: f64) -> Vec<(f64, f64)> {
    let uv = linalg::sub(v.coords(), u.coords());
    let a = linalg::dot(&uv, e);
    let luv = linalg::norm(&uv);
    if a > 0.0 {
        let (s_p, s_q) = (a, luv * luv / a);
        vec![(0.0, s_p), (s_p, s_q), (s_q, s_q.max(s_w) + s_q + luv)]
    } else {
        vec![(s_w, 2.0 * (s_w + luv))]
    }
}

/// Slides `z` along the ray from `u` through `w`, beyond `w`, and compares
/// `{u, v, w}` with `{u, v, z}` against [`lemma4_constant`].
pub fn verify_lemma4(u: &Point, v: &Point, w: &Point, extensions: usize, seed: u64) -> Result<LemmaReport> {
    check_counts(extensions, u.dim())?;
    let bound = lemma4_constant(u, v, w)?;
    let m = net_of(vec![u.clone(), v.clone(), w.clone()])?;
    let uw = linalg::sub(w.coords(), u.coords());
    let s_w = linalg::norm(&uw);
    let e: Vec<f64> = uw.iter().map(|x| x / s_w).collect();
    let strata: Vec<(f64, f64)> = ray_strata(u, v, &e, s_w)
        .into_iter()
        .map(|(lo, hi)| (lo.max(s_w), hi))
        .filter(|(lo, hi)| lo < hi)
        .collect();
    let mut worst = Worst::default();
    for k in 0..extensions {
        let mut rng = trial_rng(seed, k as u64);
        let (lo, hi) = strata[k % strata.len()];
        let z_net = loop {
            let s = rng.random_range(lo..hi);
            if s <= s_w {
                continue;
            }
            if let Ok(net) = Net::new(vec![u.clone(), v.clone(), offset(u, &e, s)]) {
                break net;
            }
        };
        worst.offer(sample_pair(&m, &z_net)?);
    }
    let worst = worst.sample.expect("at least one extension");
    Ok(LemmaReport::new(LemmaId::L4, extensions, bound, worst, 0))
}

/// [`verify_lemma4`] over `configs` random triples in `[-1, 1]^dim`. The
/// report carries the configuration whose ratio exceeds its own constant
/// by the most.
pub fn verify_lemma4_random(configs: usize, extensions: usize, dim: usize, seed: u64) -> Result<LemmaReport> {
    check_counts(configs, dim)?;
    check_counts(extensions, dim)?;
    let mut worst: Option<LemmaReport> = None;
    for c in 0..configs {
        let mut rng = trial_rng(seed, c as u64);
        let (u, v, w) = loop {
            let (u, v, w) = (
                random_point(&mut rng, dim),
                random_point(&mut rng, dim),
                random_point(&mut rng, dim),
            );
            if u != v && v != w && u != w {
                break (u, v, w);
            }
        };
        let report = verify_lemma4(&u, &v, &w, extensions, rng.random())?;
        let excess = report.max_ratio - report.claimed_bound;
        if worst
            .as_ref()
            .is_none_or(|r| excess > r.max_ratio - r.claimed_bound)
        {
            worst = Some(report);
        }
    }
    let mut report = worst.expect("at least one configuration");
    report.trials = configs * extensions;
    Ok(report)
}

/// A configuration in which `w` and `z` both lie strictly between the foot
/// `p` and the point `q`, where the ratio equals `1 / (2 sin phi)` exactly.
/// Returns `(u, v, w, z)`.
pub fn lemma4_tight_configuration(phi: f64) -> Result<(Point, Point, Point, Point)> {
    if !(phi > 0.0 && phi < FRAC_PI_2) {
        return Err(Error::Domain(format!("phi must lie in (0, pi/2), got {phi}")));
    }
    let u = Point::new(vec![0.0, 0.0])?;
    let v = Point::new(vec![1.0, 0.0])?;
    let e = [phi.cos(), phi.sin()];
    let (s_p, s_q) = (phi.cos(), 1.0 / phi.cos());
    let w = offset(&u, &e, s_p + 0.3 * (s_q - s_p));
    let z = offset(&u, &e, s_p + 0.6 * (s_q - s_p));
    Ok((u, v, w, z))
}

/// The constant for planar nets with disjoint enclosing balls: `sqrt(2)` for
/// three points, the golden ratio for more.
pub fn statement1_bound(n: usize) -> f64 {
    if n == 3 {
        SQRT_2
    } else {
        (1.0 + 5f64.sqrt()) / 2.0
    }
}

/// Draws for the disjoint-balls sampler: `M` is a random square patch, `Z`
/// another patch at a random offset; pairs whose open enclosing balls meet
/// are rejected.
pub fn verify_statement1(trials: usize, n: usize, dim: usize, seed: u64) -> Result<LemmaReport> {
    check_counts(trials, dim)?;
    if dim != 2 {
        return Err(Error::Domain(format!("the disjoint-balls bound is planar, got dim {dim}")));
    }
    if n < 3 {
        return Err(Error::Domain(format!("nets need at least 3 points, got {n}")));
    }
    let patch = |rng: &mut rand_chacha::ChaCha8Rng, center: &[f64], scale: f64| loop {
        let pts: Vec<Point> = (0..n)
            .map(|_| {
                let c = center
                    .iter()
                    .map(|c| c + scale * rng.random_range(-1.0..=1.0))
                    .collect();
                Point::new(c).expect("finite")
            })
            .collect();
        if let Ok(net) = Net::new(pts) {
            break net;
        }
    };
    let mut draws = 0;
    let mut worst = Worst::default();
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        loop {
            draws += 1;
            if draws > SAMPLING_BUDGET {
                return Err(Error::SamplingBudget(format!(
                    "{SAMPLING_BUDGET} draws yielded only {i} disjoint pairs"
                )));
            }
            let cm = [rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)];
            let (sm, sz) = (rng.random_range(0.05..=1.0), rng.random_range(0.05..=1.0));
            let dir = random_unit(&mut rng, 2);
            let gap = rng.random_range(0.0..=2.5 * (sm + sz));
            let cz = [cm[0] + gap * dir[0], cm[1] + gap * dir[1]];
            let m = patch(&mut rng, &cm, sm);
            let z = patch(&mut rng, &cz, sz);
            let (bm, bz) = (cheb(&m)?, cheb(&z)?);
            let tol = TAU_GEOM * m.magnitude().max(z.magnitude());
            if distance(&bm.center, &bz.center)? > bm.radius + bz.radius + tol {
                worst.offer(sample_pair(&m, &z)?);
                break;
            }
        }
    }
    let worst = worst.sample.expect("at least one trial");
    Ok(LemmaReport::new(LemmaId::S1, trials, statement1_bound(n), worst, 0))
}

/// Component of `x - u` orthogonal to the line through `u` with unit
/// direction `e`.
fn normal_part(x: &Point, u: &Point, e: &[f64]) -> Vec<f64> {
    let r = linalg::sub(x.coords(), u.coords());
    let t = linalg::dot(&r, e);
    r.iter().zip(e).map(|(a, b)| a - t * b).collect()
}

/// Triangles `{u, v, w}` and `{u, v, z}` whose hulls meet exactly in the
/// shared edge `[u, v]`: `z` is reflected across the line `uv` when needed so
/// that the apexes lie on opposite sides. When both apex angles are acute,
/// pairs with `alpha >= wz` are discarded. Bound 1.
pub fn verify_statement2_shared_edge(trials: usize, dim: usize, seed: u64) -> Result<LemmaReport> {
    check_counts(trials, dim)?;
    if dim < 2 {
        return Err(Error::Domain("triangles need dimension at least 2".into()));
    }
    let mut draws = 0;
    let mut worst = Worst::default();
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        loop {
            draws += 1;
            if draws > SAMPLING_BUDGET {
                return Err(Error::SamplingBudget(format!(
                    "{SAMPLING_BUDGET} draws yielded only {i} shared-edge pairs"
                )));
            }
            let u = random_point(&mut rng, dim);
            let v = random_point(&mut rng, dim);
            let w = random_point(&mut rng, dim);
            let z0 = random_point(&mut rng, dim);
            if u == v {
                continue;
            }
            let uv = linalg::sub(v.coords(), u.coords());
            let luv = linalg::norm(&uv);
            let e: Vec<f64> = uv.iter().map(|x| x / luv).collect();
            let (nw, nz) = (normal_part(&w, &u, &e), normal_part(&z0, &u, &e));
            if linalg::norm(&nw) <= TAU_GEOM || linalg::norm(&nz) <= TAU_GEOM {
                continue;
            }
            let z = if linalg::dot(&nw, &nz) < 0.0 {
                z0
            } else {
                // Reflect across the line uv within the plane of the normal part.
                let c = z0.coords().iter().zip(&nz).map(|(a, b)| a - 2.0 * b).collect();
                Point::new(c)?
            };
            if !(linalg::dot(&nw, &normal_part(&z, &u, &e)) < 0.0) {
                continue;
            }
            let (Ok(m), Ok(zn)) = (
                Net::new(vec![u.clone(), v.clone(), w.clone()]),
                Net::new(vec![u.clone(), v.clone(), z.clone()]),
            ) else {
                continue;
            };
            let s = sample_pair(&m, &zn)?;
            let acute_w = angle(&w, &u, &v)? < FRAC_PI_2;
            let acute_z = angle(&z, &u, &v)? < FRAC_PI_2;
            if acute_w && acute_z && !(s.alpha_ab < distance(&w, &z)?) {
                continue;
            }
            worst.offer(s);
            break;
        }
    }
    let worst = worst.sample.expect("at least one trial");
    Ok(LemmaReport::new(LemmaId::S2i, trials, 1.0, worst, 0))
}

/// Whether a line through `u` with normal `n` strictly separates the other
/// points of the two triangles, so that their hulls share only `u`.
fn separated_at(u: &Point, n: &[f64], first: &[&Point], second: &[&Point]) -> bool {
    let side = |p: &Point| linalg::dot(&linalg::sub(p.coords(), u.coords()), n);
    first.iter().all(|p| side(p) > 0.0) && second.iter().all(|p| side(p) < 0.0)
}

/// Planar triangles `{u, v, w}` and `{u, q, z}` in opposite half-planes
/// through `u`, so that their hulls share only `u`. Bound 2.
pub fn verify_statement2_shared_vertex(trials: usize, seed: u64) -> Result<LemmaReport> {
    check_counts(trials, 2)?;
    let mut draws = 0;
    let mut worst = Worst::default();
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        loop {
            draws += 1;
            if draws > SAMPLING_BUDGET {
                return Err(Error::SamplingBudget(format!(
                    "{SAMPLING_BUDGET} draws yielded only {i} shared-vertex pairs"
                )));
            }
            let u = random_point(&mut rng, 2);
            let n = random_unit(&mut rng, 2);
            let mut place = |sign: f64| -> Result<Point> {
                let p = random_point(&mut rng, 2);
                let d = linalg::dot(&linalg::sub(p.coords(), u.coords()), &n);
                if d * sign >= 0.0 {
                    Ok(p)
                } else {
                    let c = p.coords().iter().zip(&n).map(|(a, b)| a - 2.0 * d * b).collect();
                    Point::new(c)
                }
            };
            let (v, w) = (place(1.0)?, place(1.0)?);
            let (q, z) = (place(-1.0)?, place(-1.0)?);
            if !separated_at(&u, &n, &[&v, &w], &[&q, &z]) {
                continue;
            }
            let (Ok(m), Ok(zn)) = (
                Net::new(vec![u.clone(), v, w]),
                Net::new(vec![u.clone(), q, z]),
            ) else {
                continue;
            };
            worst.offer(sample_pair(&m, &zn)?);
            break;
        }
    }
    let worst = worst.sample.expect("at least one trial");
    Ok(LemmaReport::new(LemmaId::S2ii, trials, 2.0, worst, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::sample_pair;
    use std::f64::consts::PI;

    fn p(c: &[f64]) -> Point {
        Point::from_slice(c).unwrap()
    }

    fn net(rows: &[&[f64]]) -> Net {
        Net::from_rows(rows).unwrap()
    }

    #[test]
    fn two_point_sandwich_examples() {
        let s = sample_pair(&net(&[&[0.0], &[2.0]]), &net(&[&[10.0], &[14.0]])).unwrap();
        assert_eq!((s.cheb_displacement, s.alpha_ab), (11.0, 12.0));
        assert!(s.alpha_ab <= s.cheb_displacement + (2.0 + 4.0) / 2.0);
        let s = sample_pair(&net(&[&[-1.0], &[1.0]]), &net(&[&[-2.0], &[2.0]])).unwrap();
        assert_eq!((s.cheb_displacement, s.alpha_ab), (0.0, 1.0));
    }

    #[test]
    fn sandwich_and_line_reports_pass() {
        for dim in 1..=4 {
            let r = verify_lemma1(300, dim, 11).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.secondary_violations, 0);
        }
        let r = verify_lemma2(500, 5, 7).unwrap();
        assert!(r.pass && r.max_ratio <= 1.0 + TAU_VERIFY, "{r:?}");
        assert!(verify_lemma2(0, 5, 7).is_err());
    }

    #[test]
    fn line_center_examples() {
        let s = sample_pair(&net(&[&[0.0], &[1.0], &[2.0]]), &net(&[&[0.0], &[1.0], &[4.0]])).unwrap();
        assert_eq!((s.cheb_displacement, s.alpha_ab, s.ratio), (1.0, 2.0, 0.5));
        let m = net(&[&[0.25], &[1.5], &[3.0]]);
        let shifted = m.affine_image(1.0, &[0.5]).unwrap();
        assert_eq!(sample_pair(&m, &shifted).unwrap().ratio, 1.0);
    }

    #[test]
    fn ray_constant_branches() {
        let u = p(&[0.0, 0.0]);
        let v = p(&[1.0, 0.0]);
        let at = |phi: f64, r: f64| p(&[r * phi.cos(), r * phi.sin()]);
        assert_eq!(lemma4_constant(&u, &v, &at(FRAC_PI_2, 1.0)).unwrap(), 0.5);
        let k = lemma4_constant(&u, &v, &at(PI / 6.0, 0.5)).unwrap();
        assert!((k - 1.0).abs() < 1e-12);
        let k = lemma4_constant(&u, &v, &at(PI / 4.0, 0.5)).unwrap();
        assert!((k - 1.0 / SQRT_2).abs() < 1e-12);
        // Obtuse at v.
        assert_eq!(lemma4_constant(&u, &v, &at(PI / 6.0, 3.0)).unwrap(), 0.5);
        assert!(matches!(lemma4_constant(&u, &u, &v), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn ray_tight_case_is_attained() {
        for phi in [0.3, PI / 6.0, PI / 4.0, 1.2] {
            let (u, v, w, z) = lemma4_tight_configuration(phi).unwrap();
            let m = Net::new(vec![u.clone(), v.clone(), w]).unwrap();
            let zn = Net::new(vec![u, v, z]).unwrap();
            let s = sample_pair(&m, &zn).unwrap();
            assert!((s.ratio - 1.0 / (2.0 * phi.sin())).abs() < 1e-9, "{phi}: {}", s.ratio);
        }
    }

    #[test]
    fn ray_midpoint_segment_ratio_at_most_half() {
        // Beyond q both centers are midpoints of [u, w] and [u, z].
        let (u, v) = (p(&[0.0, 0.0]), p(&[1.0, 0.0]));
        let w = p(&[2.0, 2.0]);
        let m = Net::new(vec![u.clone(), v.clone(), w]).unwrap();
        let zn = Net::new(vec![u, v, p(&[3.0, 3.0])]).unwrap();
        assert!(sample_pair(&m, &zn).unwrap().ratio <= 0.5 + 1e-12);
    }

    #[test]
    fn ray_extension_reports_pass() {
        let r = verify_lemma4(&p(&[0.0, 0.0]), &p(&[1.0, 0.0]), &p(&[0.6, 0.4]), 300, 1).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_lemma4_random(10, 50, 2, 9).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.trials, 500);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn disjoint_and_contact_bounds_and_reports() {
        assert!((statement1_bound(4) - 1.6180339887).abs() < 1e-10);
        assert!((statement1_bound(3) - 1.4142135624).abs() < 1e-10);
        assert!(verify_statement1(10, 3, 3, 0).is_err());
        let r = verify_statement1(300, 4, 2, 5).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_statement2_shared_edge(300, 2, 5).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_statement2_shared_edge(300, 3, 5).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_statement2_shared_vertex(300, 5).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn mirrored_obtuse_triangles_share_center() {
        let m = net(&[&[0.0, 0.0], &[2.0, 0.0], &[1.0, 0.3]]);
        let z = net(&[&[0.0, 0.0], &[2.0, 0.0], &[1.0, -0.3]]);
        let s = sample_pair(&m, &z).unwrap();
        assert!(s.cheb_displacement < 1e-12);
    }
}
