//! Numerical tolerances shared by every module.
//!
//! Geometric tolerances are relative: multiply by [`magnitude`] of the inputs
//! involved before comparing.

/// Geometric identities (equidistance, containment, hull membership).
pub const TAU_GEOM: f64 = 1e-9;

/// Affine independence: a spanning direction whose squared residual after
/// orthogonalization falls below this fraction of its squared length is
/// treated as dependent.
pub const TAU_RANK: f64 = 1e-12;

/// Absolute slack on Lipschitz ratios compared against a claimed bound.
pub const TAU_VERIFY: f64 = 1e-7;

/// Angle slack for right-angle and acute-type tests.
pub const TAU_ANGLE: f64 = 1e-10;

/// Relative slack used inside the enclosing-ball solvers when deciding whether
/// a point is already covered. Much tighter than [`TAU_GEOM`] so the solver
/// output stays accurate to near machine precision.
pub const CONTAINMENT_SLACK: f64 = 1e-12;

/// Scale for relative tolerances: the largest absolute coordinate among the
/// given coordinate slices, or 1 when every coordinate is zero.
pub fn magnitude<'a, I>(coords: I) -> f64
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let m = coords
        .into_iter()
        .flat_map(|c| c.iter())
        .fold(0.0_f64, |acc, &x| acc.max(x.abs()));
    if m > 0.0 {
        m
    } else {
        1.0
    }
}
