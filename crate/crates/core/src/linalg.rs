//! Small dense helpers on coordinate slices. Sizes are bounded by the ambient
//! dimension plus one, so everything is plain loops.

use crate::tolerance::TAU_RANK;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Orthonormal frame of the affine hull of `origin, origin + dirs[0], ...`.
///
/// Built by modified Gram-Schmidt with one re-orthogonalization pass, so
/// `dirs = Q R` with `R` upper triangular.
#[derive(Debug, Clone)]
pub(crate) struct AffineFrame {
    pub origin: Vec<f64>,
    pub q: Vec<Vec<f64>>,
    /// `r[i][j]` for `i <= j`, row-major upper triangle.
    pub r: Vec<Vec<f64>>,
}

impl AffineFrame {
    /// `None` when some direction, after removing its components along the
    /// previous ones, keeps less than `TAU_RANK` of its squared length.
    pub fn new(points: &[&[f64]]) -> Option<Self> {
        let origin = points[0].to_vec();
        let k = points.len() - 1;
        let mut q: Vec<Vec<f64>> = Vec::with_capacity(k);
        let mut r = vec![vec![0.0; k]; k];
        for j in 0..k {
            let d = sub(points[j + 1], &origin);
            let len2 = dot(&d, &d);
            if !(len2 > 0.0) {
                return None;
            }
            let mut v = d;
            for _pass in 0..2 {
                for (i, qi) in q.iter().enumerate() {
                    let c = dot(qi, &v);
                    r[i][j] += c;
                    for (vx, qx) in v.iter_mut().zip(qi) {
                        *vx -= c * qx;
                    }
                }
            }
            let res2 = dot(&v, &v);
            if !(res2 > TAU_RANK * len2) {
                return None;
            }
            let rn = res2.sqrt();
            r[j][j] = rn;
            for x in v.iter_mut() {
                *x /= rn;
            }
            q.push(v);
        }
        Some(Self { origin, q, r })
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    /// Orthogonal projection of `x` onto the affine hull.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        let rel = sub(x, &self.origin);
        let coeffs: Vec<f64> = self.q.iter().map(|qi| dot(qi, &rel)).collect();
        self.to_ambient(&coeffs)
    }

    /// `origin + sum_i y[i] q[i]`
    pub fn to_ambient(&self, y: &[f64]) -> Vec<f64> {
        let mut out = self.origin.clone();
        for (qi, &w) in self.q.iter().zip(y) {
            for (o, x) in out.iter_mut().zip(qi) {
                *o += w * x;
            }
        }
        out
    }

    /// Solve `R^T y = b` (forward substitution).
    #[allow(clippy::needless_range_loop)]
    pub fn solve_rt(&self, b: &[f64]) -> Vec<f64> {
        let k = self.rank();
        let mut y = vec![0.0; k];
        for i in 0..k {
            let mut s = b[i];
            for m in 0..i {
                s -= self.r[m][i] * y[m];
            }
            y[i] = s / self.r[i][i];
        }
        y
    }

    /// Solve `R x = y` (back substitution).
    #[allow(clippy::needless_range_loop)]
    pub fn solve_r(&self, y: &[f64]) -> Vec<f64> {
        let k = self.rank();
        let mut x = vec![0.0; k];
        for i in (0..k).rev() {
            let mut s = y[i];
            for m in (i + 1)..k {
                s -= self.r[i][m] * x[m];
            }
            x[i] = s / self.r[i][i];
        }
        x
    }

    /// Barycentric coordinates of a point given by frame coordinates `y`
    /// with respect to the spanning points.
    pub fn barycentric(&self, y: &[f64]) -> Vec<f64> {
        let lambda = self.solve_r(y);
        let mut out = Vec::with_capacity(lambda.len() + 1);
        out.push(1.0 - lambda.iter().sum::<f64>());
        out.extend(lambda);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_rejects_dependent_directions() {
        let o = [0.0, 0.0, 0.0];
        assert!(AffineFrame::new(&[&o, &[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]]).is_none());
        assert!(AffineFrame::new(&[&o[..2], &[1.0, 0.0], &[1.0, 1e-9]]).is_none());
        assert!(AffineFrame::new(&[&o[..2], &[1.0, 0.0], &[1.0, 1e-5]]).is_some());
        assert!(AffineFrame::new(&[&o[..2], &o[..2]]).is_none());
    }

    #[test]
    fn triangular_solves_invert_r() {
        let o = [1.0, -1.0, 0.5];
        let f = AffineFrame::new(&[&o, &[2.0, 0.0, 0.5], &[0.0, 3.0, 1.0]]).unwrap();
        let x = [0.7, -0.2];
        // y = R x
        let y: Vec<f64> = (0..2)
            .map(|i| (i..2).map(|m| f.r[i][m] * x[m]).sum())
            .collect();
        let back = f.solve_r(&y);
        assert!((back[0] - x[0]).abs() < 1e-14 && (back[1] - x[1]).abs() < 1e-14);
    }
}
