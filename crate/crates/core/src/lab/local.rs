//! Sampled local Lipschitz constants of the center map.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{sample_pair, trial_rng, LipschitzSample, Worst};
use crate::error::{Error, Result};
use crate::geometry::{min_pairwise_distance, Net, Point};

/// A Hausdorff ball around a base net and how to sample it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodSpec {
    pub base_net: Net,
    pub epsilon: f64,
    pub sample_count: usize,
    pub seed: u64,
}

impl NeighborhoodSpec {
    pub fn new(base_net: Net, epsilon: f64, sample_count: usize, seed: u64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
        }
        if sample_count == 0 {
            return Err(Error::Domain("sample count must be at least 1".into()));
        }
        Ok(Self {
            base_net,
            epsilon,
            sample_count,
            seed,
        })
    }

    /// Uses [`default_epsilon`] of the base net.
    pub fn with_default_epsilon(base_net: Net, sample_count: usize, seed: u64) -> Result<Self> {
        let eps = default_epsilon(&base_net)?;
        Self::new(base_net, eps, sample_count, seed)
    }
}

/// One eighth of the smallest pairwise distance.
pub fn default_epsilon(m: &Net) -> Result<f64> {
    min_pairwise_distance(m)
        .map(|d| d / 8.0)
        .ok_or_else(|| Error::Domain("a singleton net has no pairwise distance".into()))
}

/// Moves every point independently to a uniform point of the ball of radius
/// `eps` around it.
fn perturb<R: Rng>(rng: &mut R, net: &Net, eps: f64) -> Result<Net> {
    let dim = net.dim();
    let pts = net
        .points()
        .iter()
        .map(|p| {
            let g: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
            let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            let r = eps * rng.random::<f64>().powf(1.0 / dim as f64);
            let scale = if n > 0.0 { r / n } else { 0.0 };
            Point::new(p.coords().iter().zip(&g).map(|(c, g)| c + scale * g).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Net::new(pts).map_err(|e| Error::Inconsistency(format!("perturbed net collapsed: {e}")))
}

/// Largest ratio over `sample_count` pairs of independent perturbations of
/// the base net, with the pair attaining it. Sample `i` draws from stream
/// `(seed, i)`, so a larger count only adds samples.
pub fn estimate_local_lipschitz(spec: &NeighborhoodSpec) -> Result<(f64, LipschitzSample)> {
    if !(spec.epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {}", spec.epsilon)));
    }
    if let Some(d) = min_pairwise_distance(&spec.base_net) {
        if spec.epsilon >= d / 2.0 {
            return Err(Error::Domain(format!(
                "epsilon {} is not below half the smallest pairwise distance {d}",
                spec.epsilon
            )));
        }
    }
    let mut worst = Worst::default();
    for i in 0..spec.sample_count {
        let mut rng = trial_rng(spec.seed, i as u64);
        let a = perturb(&mut rng, &spec.base_net, spec.epsilon)?;
        let b = perturb(&mut rng, &spec.base_net, spec.epsilon)?;
        worst.offer(sample_pair(&a, &b)?);
    }
    let s = worst
        .sample
        .ok_or_else(|| Error::Domain("sample count must be at least 1".into()))?;
    Ok((s.ratio, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hausdorff::alpha;
    use crate::tolerance::TAU_VERIFY;

    fn net(rows: &[&[f64]]) -> Net {
        Net::from_rows(rows).unwrap()
    }

    #[test]
    fn default_epsilon_examples() {
        assert_eq!(default_epsilon(&net(&[&[0.0, 0.0], &[8.0, 0.0]])).unwrap(), 1.0);
        let h = 3f64.sqrt() / 2.0;
        let tri = net(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, h]]);
        assert!((default_epsilon(&tri).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(default_epsilon(&net(&[&[0.0], &[1.0], &[100.0]])).unwrap(), 0.125);
        assert!(matches!(default_epsilon(&net(&[&[1.0]])), Err(Error::Domain(_))));
    }

    #[test]
    fn perturbations_stay_in_the_ball() {
        let m = net(&[&[0.0, 0.0], &[1.0, 0.0], &[0.2, 0.9]]);
        let mut rng = trial_rng(1, 0);
        for _ in 0..200 {
            let p = perturb(&mut rng, &m, 0.05).unwrap();
            assert!(alpha(&m, &p).unwrap() <= 0.05);
        }
    }

    #[test]
    fn two_point_base_is_non_expanding() {
        let spec = NeighborhoodSpec::with_default_epsilon(net(&[&[0.0, 0.0], &[1.0, 1.0]]), 500, 3).unwrap();
        let (sup, _) = estimate_local_lipschitz(&spec).unwrap();
        assert!(sup <= 1.0 + TAU_VERIFY);
    }

    #[test]
    fn large_epsilon_rejected() {
        let m = net(&[&[0.0], &[1.0]]);
        let spec = NeighborhoodSpec::new(m, 0.5, 10, 0).unwrap();
        assert!(matches!(estimate_local_lipschitz(&spec), Err(Error::Domain(_))));
    }

    #[test]
    fn larger_sample_count_never_lowers_sup() {
        let m = net(&[&[0.0, 0.0], &[1.0, 0.1], &[0.4, 0.8], &[-0.3, 0.5]]);
        let small = NeighborhoodSpec::with_default_epsilon(m.clone(), 50, 4).unwrap();
        let large = NeighborhoodSpec::with_default_epsilon(m, 200, 4).unwrap();
        assert!(estimate_local_lipschitz(&large).unwrap().0 >= estimate_local_lipschitz(&small).unwrap().0);
    }
}
