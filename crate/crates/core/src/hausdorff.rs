//! Hausdorff metric between nets.

use crate::error::{check_dim, Error, Result};
use crate::geometry::Net;
use crate::linalg;

/// Hausdorff distance between two finite point sets under an arbitrary
/// metric: the larger of the two one-sided max-min distances.
///
/// Both slices must be non-empty.
pub fn alpha_with<P, F>(a: &[P], b: &[P], dist: F) -> f64
where
    F: Fn(&P, &P) -> f64,
{
    let one_sided = |from: &[P], to: &[P]| {
        from.iter()
            .map(|x| to.iter().map(|y| dist(x, y)).fold(f64::INFINITY, f64::min))
            .fold(0.0_f64, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

/// Hausdorff distance `alpha(M, T)` between two Euclidean nets.
pub fn alpha(m: &Net, t: &Net) -> Result<f64> {
    check_dim(m.dim(), t.dim())?;
    Ok(alpha_with(m.points(), t.points(), |x, y| {
        linalg::dist(x.coords(), y.coords())
    }))
}

/// Membership of `z` in the open Hausdorff ball of radius `r` around `m`.
pub fn alpha_ball_contains(m: &Net, z: &Net, r: f64) -> Result<bool> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("ball radius must be positive, got {r}")));
    }
    Ok(alpha(m, z)? < r)
}
