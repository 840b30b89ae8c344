//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use rand::Rng;

use chebnet::cli::{blow_up_point, local_base, merge_reports, suite_all, Envelope};
use chebnet::lab::{
    lemma3_counterexample, lemma3_hyperbolic_counterexample, lemma3_nonuniform_sequence,
    lemma4_constant, lemma4_tight_configuration, random_net, sample_pair, trial_rng,
    verify_lemma1, verify_lemma2, verify_lemma4_random, verify_statement1,
    verify_statement2_shared_edge, verify_statement2_shared_vertex, LemmaReport,
};
use chebnet::{cheb, cheb_oracle, distance, Net};

const TAU_VERIFY: f64 = 1e-7;
const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn report_line(r: &LemmaReport, bound: f64) -> String {
    format!("max ratio {:.10} vs bound {:.10} over {} trials", r.max_ratio, bound, r.trials)
}

fn meb_matches_oracle() -> Verdict {
    let start = Instant::now();
    let (mut worst_r, mut worst_c) = (0.0_f64, 0.0_f64);
    for i in 0..10_000u64 {
        let mut rng = trial_rng(SEED, i);
        let n = rng.random_range(2..=10);
        let dim = rng.random_range(1..=5);
        let net = random_net(&mut rng, n, dim);
        let fast = cheb(&net).expect("solver");
        let slow = cheb_oracle(&net).expect("oracle");
        worst_r = worst_r.max((fast.radius - slow.radius).abs() / slow.radius);
        worst_c = worst_c.max(distance(&fast.center, &slow.center).unwrap());
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst_r <= 1e-9 && worst_c <= 1e-8 && secs < 30.0,
        format!("max radius rel err {worst_r:.2e}, max center err {worst_c:.2e}, {secs:.1} s"),
    )
}

fn line_center_non_expanding() -> Verdict {
    let r = verify_lemma2(10_000, 5, SEED).unwrap();
    verdict(r.max_ratio <= 1.0 + TAU_VERIFY, report_line(&r, 1.0))
}

fn two_point_sandwich() -> Verdict {
    let reports = (1..=5)
        .map(|d| verify_lemma1(2_000, d, SEED + d as u64).unwrap())
        .collect();
    let r = merge_reports(reports).unwrap();
    verdict(
        r.max_ratio <= 1.0 + TAU_VERIFY && r.secondary_violations == 0,
        format!("{}, upper-side violations {}", report_line(&r, 1.0), r.secondary_violations),
    )
}

fn ray_bound_and_tight_case() -> Verdict {
    let r = verify_lemma4_random(100, 100, 2, SEED).unwrap();
    let phi = PI / 5.0;
    let (u, v, w, z) = lemma4_tight_configuration(phi).unwrap();
    let constant = lemma4_constant(&u, &v, &w).unwrap();
    let m = Net::new(vec![u.clone(), v.clone(), w]).unwrap();
    let zn = Net::new(vec![u, v, z]).unwrap();
    let tight = sample_pair(&m, &zn).unwrap().ratio;
    let expected = 1.0 / (2.0 * phi.sin());
    verdict(
        r.max_ratio <= r.claimed_bound + TAU_VERIFY
            && (tight - expected).abs() <= 1e-6
            && (constant - expected).abs() <= 1e-12,
        format!(
            "worst excess config {}, tight ratio {tight:.12} vs 1/(2 sin phi) {expected:.12}",
            report_line(&r, r.claimed_bound)
        ),
    )
}

fn disjoint_balls() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    // Bounds as published, to ten digits.
    #[allow(clippy::approx_constant)]
    let bounds = [(3, 1.4142135624), (4, 1.6180339887), (5, 1.6180339887)];
    for (n, bound) in bounds {
        let r = verify_statement1(10_000, n, 2, SEED + n as u64).unwrap();
        pass &= r.max_ratio <= bound + TAU_VERIFY;
        parts.push(format!("N={n}: {:.6} <= {bound}", r.max_ratio));
    }
    verdict(pass, parts.join("; "))
}

fn contact_configurations() -> Verdict {
    let edge = verify_statement2_shared_edge(10_000, 2, SEED).unwrap();
    let vertex = verify_statement2_shared_vertex(10_000, SEED).unwrap();
    verdict(
        edge.max_ratio <= 1.0 + TAU_VERIFY && vertex.max_ratio <= 2.0 + TAU_VERIFY,
        format!("shared edge {:.6} <= 1; shared vertex {:.6} <= 2", edge.max_ratio, vertex.max_ratio),
    )
}

fn euclidean_blow_up() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for l in [1.0, 10.0, 100.0, 1000.0] {
        match lemma3_counterexample(l) {
            Ok(c) => {
                let rel = (c.achieved_ratio - c.formula_ratio).abs() / c.formula_ratio;
                pass &= c.achieved_ratio > l && rel <= 1e-6;
                parts.push(format!("L={l}: ratio {:.6} (rel dev {rel:.1e})", c.achieved_ratio));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("L={l}: {e}"));
            }
        }
    }
    verdict(pass, parts.join("; "))
}

fn hyperbolic_blow_up() -> Verdict {
    match lemma3_hyperbolic_counterexample(10.0) {
        Ok(c) => verdict(
            c.achieved_ratio > 10.0 && c.identity_residuals.iter().all(|r| *r <= 1e-9),
            format!(
                "ratio {:.4} at yz {:.3e}, identity residuals {:.1e}, {:.1e}",
                c.achieved_ratio, c.yz, c.identity_residuals[0], c.identity_residuals[1]
            ),
        ),
        Err(e) => verdict(false, e.to_string()),
    }
}

fn nonuniform_sequence() -> Verdict {
    let seq = lemma3_nonuniform_sequence(1000).unwrap();
    let a10 = seq.terms[9].alpha;
    let last = &seq.terms[999];
    let drop = a10 / last.alpha;
    let gap = (last.displacement - seq.yu).abs() / seq.yu;
    verdict(
        drop >= 10.0 && gap <= 0.01,
        format!(
            "alpha drop {drop:.1}x, displacement {:.6} vs yu {:.6} (rel gap {gap:.3})",
            last.displacement, seq.yu
        ),
    )
}

fn local_lipschitz() -> Verdict {
    let mut pass = true;
    let mut worst_spread = 0.0_f64;
    for i in 0..20u64 {
        let mut rng = trial_rng(SEED + 100, i);
        let n = rng.random_range(3..=6);
        let dim = rng.random_range(2..=3);
        let base = random_net(&mut rng, n, dim);
        let b = local_base(base, 1000, SEED + i).unwrap();
        pass &= b.stable;
        worst_spread = worst_spread.max(chebnet::cli::relative_spread(b.sup_ratio, b.sup_ratio_half_epsilon));
    }
    let sups: Vec<f64> = [0.2, 0.1, 0.05, 0.025]
        .iter()
        .map(|&yz| blow_up_point(yz, 1000, SEED).unwrap().sup_ratio)
        .collect();
    pass &= sups.windows(2).all(|w| w[1] > w[0]) && sups[3] > 5.0;
    verdict(
        pass,
        format!("worst eps vs eps/2 spread {worst_spread:.3}; blow-up sups {sups:.3?}"),
    )
}

fn deterministic_suite() -> Verdict {
    let a = serde_json::to_string(&Envelope::new(suite_all(7).unwrap())).unwrap();
    let b = serde_json::to_string(&Envelope::new(suite_all(7).unwrap())).unwrap();
    verdict(a == b, format!("{} bytes", a.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("enclosing ball matches exhaustive oracle", meb_matches_oracle),
        ("1D center map is non-expanding", line_center_non_expanding),
        ("two-point sandwich inequalities", two_point_sandwich),
        ("ray extension bound and tight case", ray_bound_and_tight_case),
        ("disjoint enclosing balls", disjoint_balls),
        ("shared edge and shared vertex", contact_configurations),
        ("Euclidean ratio blow-up near two-point nets", euclidean_blow_up),
        ("hyperbolic ratio blow-up and right-triangle identities", hyperbolic_blow_up),
        ("non-uniform continuity sequence", nonuniform_sequence),
        ("sampled local Lipschitz constants", local_lipschitz),
        ("deterministic suite output", deterministic_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        println!(
            "criterion {:>2} {}: {} ({})",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            name,
            v.detail
        );
        if !v.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
