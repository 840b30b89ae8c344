//! Randomized verifiers for Lipschitz-type bounds on the Chebyshev center
//! map, generators for configurations where the map is not Lipschitz, and
//! sampled estimates of local Lipschitz constants.
//!
//! Every random draw comes from a ChaCha8 stream derived from `(seed, index)`
//! so trials are reproducible and independent of evaluation order.

mod counterexample;
mod local;
mod verify;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chebyshev::cheb;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{distance, Net, Point};
use crate::hausdorff::alpha;
use crate::tolerance::{TAU_GEOM, TAU_VERIFY};

pub use counterexample::{
    lemma3_configuration, lemma3_counterexample, lemma3_hyperbolic_configuration,
    lemma3_hyperbolic_counterexample, lemma3_nonuniform_sequence, Counterexample,
    HyperbolicCounterexample, NonuniformSequence, SequenceTerm,
};
pub use local::{default_epsilon, estimate_local_lipschitz, NeighborhoodSpec};
pub use verify::{
    lemma4_constant, lemma4_tight_configuration, statement1_bound, verify_lemma1, verify_lemma2,
    verify_lemma4, verify_lemma4_random, verify_statement1, verify_statement2_shared_edge,
    verify_statement2_shared_vertex, SAMPLING_BUDGET,
};

/// Displacement of the Chebyshev center between two nets, measured against
/// their Hausdorff distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipschitzSample {
    pub net_a: Net,
    pub net_b: Net,
    pub alpha_ab: f64,
    pub cheb_displacement: f64,
    /// `cheb_displacement / alpha_ab`, or 0 for identical nets.
    pub ratio: f64,
}

/// Packages `alpha(M, Z)`, the center displacement and their ratio.
pub fn sample_pair(m: &Net, z: &Net) -> Result<LipschitzSample> {
    check_dim(m.dim(), z.dim())?;
    let a = alpha(m, z)?;
    let (cm, cz) = (cheb(m)?, cheb(z)?);
    let d = distance(&cm.center, &cz.center)?;
    let ratio = if a > 0.0 {
        d / a
    } else if d <= TAU_GEOM * m.magnitude() {
        0.0
    } else {
        return Err(Error::Inconsistency(format!(
            "identical nets with centers {} apart",
            d
        )));
    };
    Ok(LipschitzSample {
        net_a: m.clone(),
        net_b: z.clone(),
        alpha_ab: a,
        cheb_displacement: d,
        ratio,
    })
}

/// Which bound a [`LemmaReport`] checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    /// Two-point nets: displacement <= alpha <= displacement + mean diameter.
    L1,
    /// One-dimensional nets: the center map is non-expanding.
    L2,
    /// Three-point nets with one point slid along a ray.
    L4,
    /// Planar nets with disjoint enclosing balls.
    S1,
    /// Triangles sharing an edge.
    S2i,
    /// Planar triangles sharing only a vertex.
    S2ii,
}

impl LemmaId {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::L1 => "L1",
            Self::L2 => "L2",
            Self::L4 => "L4",
            Self::S1 => "S1",
            Self::S2i => "S2i",
            Self::S2ii => "S2ii",
        }
    }
}

/// Outcome of a randomized verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma_id: LemmaId,
    pub trials: usize,
    pub max_ratio: f64,
    pub claimed_bound: f64,
    /// The sample attaining `max_ratio` (for runs with per-configuration
    /// bounds, the sample with the largest excess over its own bound).
    pub worst_sample: LipschitzSample,
    /// Violations of any secondary inequality the bound comes with.
    pub secondary_violations: usize,
    pub pass: bool,
}

impl LemmaReport {
    fn new(
        lemma_id: LemmaId,
        trials: usize,
        claimed_bound: f64,
        worst_sample: LipschitzSample,
        secondary_violations: usize,
    ) -> Self {
        let max_ratio = worst_sample.ratio;
        Self {
            lemma_id,
            trials,
            max_ratio,
            claimed_bound,
            worst_sample,
            secondary_violations,
            pass: max_ratio <= claimed_bound + TAU_VERIFY && secondary_violations == 0,
        }
    }

    /// Recomputes `pass` against a different bound.
    pub fn with_bound(mut self, claimed_bound: f64) -> Self {
        self.claimed_bound = claimed_bound;
        self.pass =
            self.max_ratio <= claimed_bound + TAU_VERIFY && self.secondary_violations == 0;
        self
    }
}

/// Keeps the sample with the largest ratio; ties keep the earlier one.
#[derive(Default)]
struct Worst {
    sample: Option<LipschitzSample>,
}

impl Worst {
    fn offer(&mut self, s: LipschitzSample) {
        if self.sample.as_ref().is_none_or(|w| s.ratio > w.ratio) {
            self.sample = Some(s);
        }
    }
}

/// The random stream for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A point with coordinates uniform in `[-1, 1]`.
pub fn random_point<R: Rng>(rng: &mut R, dim: usize) -> Point {
    let coords = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
    Point::new(coords).expect("finite coordinates")
}

/// A net of exactly `n` distinct points with coordinates uniform in `[-1, 1]`.
pub fn random_net<R: Rng>(rng: &mut R, n: usize, dim: usize) -> Net {
    loop {
        let pts = (0..n).map(|_| random_point(rng, dim)).collect();
        if let Ok(net) = Net::new(pts) {
            return net;
        }
    }
}

/// A uniformly distributed unit vector.
pub(crate) fn random_unit<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let n = crate::linalg::norm(&v);
        if n > 1e-3 && n <= 1.0 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}
