//! Command-line front end. Machine-readable output goes to `out`, a
//! human-readable summary to `err`; exit codes are 0 for success, 1 for
//! usage or input errors and 2 for a failed verification.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::chebyshev::{cheb_with_seed, ChebResult};
use crate::error::{Error, Result};
use crate::geometry::Net;
use crate::hausdorff::alpha;
use crate::lab::{
    self, estimate_local_lipschitz, lemma3_configuration, lemma3_counterexample,
    lemma3_hyperbolic_counterexample, lemma3_nonuniform_sequence, lemma4_constant,
    lemma4_tight_configuration, random_net, sample_pair, trial_rng, Counterexample,
    HyperbolicCounterexample, LemmaReport, LipschitzSample, NeighborhoodSpec,
};

/// Version of every JSON document written by the CLI.
pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

/// Default trial count for verifiers.
pub const DEFAULT_TRIALS: usize = 10_000;
/// Default sample count for local estimation.
pub const DEFAULT_SAMPLES: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaArg {
    #[value(name = "1")]
    L1,
    #[value(name = "2")]
    L2,
    #[value(name = "4")]
    L4,
    S1,
    S2i,
    S2ii,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn existing_file(s: &str) -> std::result::Result<PathBuf, String> {
    let p = PathBuf::from(s);
    if p.is_file() {
        Ok(p)
    } else {
        Err(format!("no such file: {s}"))
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "chebnet", version, about = "Chebyshev centers of point nets and Lipschitz checks of the center map")]
pub struct RunConfig {
    /// Output format; defaults to csv for `sequence` and json otherwise.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Suppress the summary on standard error.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Minimum enclosing ball of a net.
    Cheb {
        #[arg(long, value_parser = existing_file)]
        input: PathBuf,
        /// Seed of the solver's processing order.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hausdorff distance between two nets.
    Alpha {
        #[arg(long, value_parser = existing_file)]
        a: PathBuf,
        #[arg(long, value_parser = existing_file)]
        b: PathBuf,
    },
    /// Randomized check of one Lipschitz bound.
    Verify {
        #[arg(long, value_enum)]
        lemma: LemmaArg,
        #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = positive)]
        trials: usize,
        #[arg(long, default_value_t = 2, value_parser = positive)]
        dim: usize,
        #[arg(long, default_value_t = 3, value_parser = positive)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Points slid along each ray for the ray extension check; trials are split into
        /// trials / extensions random configurations.
        #[arg(long, default_value_t = 100, value_parser = positive)]
        extensions: usize,
        /// Multiplies the claimed bound (exercises the failure path).
        #[arg(long, hide = true)]
        scale_bound: Option<f64>,
    },
    /// Witness pair whose ratio exceeds the target.
    Counterexample {
        #[arg(long)]
        target: f64,
        #[arg(long)]
        hyperbolic: bool,
    },
    /// Sequence along which the Hausdorff distance vanishes but the centers
    /// stay apart.
    Sequence {
        #[arg(long, value_parser = positive)]
        nmax: usize,
    },
    /// Sampled local Lipschitz constant around a net.
    Estimate {
        #[arg(long, value_parser = existing_file)]
        input: PathBuf,
        /// Defaults to one eighth of the smallest pairwise distance.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = positive)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every verifier at default sizes, aggregated into one report.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A JSON document with its schema version.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    #[serde(flatten)]
    pub body: T,
}

impl<T> Envelope<T> {
    pub fn new(body: T) -> Self {
        Self {
            schema: SCHEMA,
            body,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaOutput {
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleOutput<W> {
    pub target: f64,
    pub witness: W,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceRow {
    pub n: usize,
    pub alpha_n: f64,
    pub displacement_n: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceOutput {
    pub yu: f64,
    pub rows: Vec<SequenceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateOutput {
    pub epsilon: f64,
    pub samples: usize,
    pub seed: u64,
    pub sup_ratio: f64,
    pub worst_pair: LipschitzSample,
}

pub fn load_net(path: &PathBuf) -> Result<Net> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidNet(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidNet(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(body: T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope::new(body)).expect("serializable");
    s.push('\n');
    s
}

struct Outcome {
    stdout: String,
    summary: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String, summary: String) -> Self {
        Self {
            stdout,
            summary,
            code: EXIT_OK,
        }
    }
}

/// Runs one parsed command line and returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(config) {
        Ok(o) => {
            if out.write_all(o.stdout.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            if !config.quiet && !o.summary.is_empty() {
                let _ = writeln!(err, "{}", o.summary);
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn csv_unsupported(what: &str) -> Error {
    Error::Domain(format!("{what} output has no CSV form; use --format json"))
}

fn dispatch(config: &RunConfig) -> Result<Outcome> {
    let csv = config.format == Some(Format::Csv);
    match &config.command {
        Command::Cheb { input, seed } => {
            let net = load_net(input)?;
            let r = cheb_with_seed(&net, *seed)?;
            let summary = format!("center {} radius {}", r.center, r.radius);
            let stdout = if csv { cheb_csv(&r) } else { to_json(&r) };
            Ok(Outcome::ok(stdout, summary))
        }
        Command::Alpha { a, b } => {
            let v = alpha(&load_net(a)?, &load_net(b)?)?;
            let stdout = if csv {
                format!("alpha\n{v}\n")
            } else {
                to_json(AlphaOutput { alpha: v })
            };
            Ok(Outcome::ok(stdout, format!("alpha {v}")))
        }
        Command::Verify {
            lemma,
            trials,
            dim,
            n,
            seed,
            extensions,
            scale_bound,
        } => {
            let mut report = verify(*lemma, *trials, *dim, *n, *seed, *extensions)?;
            if let Some(k) = scale_bound {
                let b = report.claimed_bound * k;
                report = report.with_bound(b);
            }
            let summary = report_summary(&report);
            let stdout = if csv { report_csv(&report) } else { to_json(&report) };
            let code = if report.pass { EXIT_OK } else { EXIT_FAIL };
            Ok(Outcome {
                stdout,
                summary,
                code,
            })
        }
        Command::Counterexample { target, hyperbolic } => {
            if csv {
                return Err(csv_unsupported("counterexample"));
            }
            if *hyperbolic {
                let w = lemma3_hyperbolic_counterexample(*target)?;
                let summary = format!("hyperbolic yz {} ratio {}", w.yz, w.achieved_ratio);
                Ok(Outcome::ok(
                    to_json(CounterexampleOutput { target: *target, witness: w }),
                    summary,
                ))
            } else {
                let w = lemma3_counterexample(*target)?;
                let summary = format!("yz {} ratio {}", w.yz, w.achieved_ratio);
                Ok(Outcome::ok(
                    to_json(CounterexampleOutput { target: *target, witness: w }),
                    summary,
                ))
            }
        }
        Command::Sequence { nmax } => {
            let seq = lemma3_nonuniform_sequence(*nmax)?;
            let rows: Vec<SequenceRow> = seq
                .terms
                .iter()
                .map(|t| SequenceRow {
                    n: t.n,
                    alpha_n: t.alpha,
                    displacement_n: t.displacement,
                })
                .collect();
            let last = rows.last().expect("n_max >= 2");
            let summary = format!(
                "n = {}: alpha {} displacement {} (yu = {})",
                last.n, last.alpha_n, last.displacement_n, seq.yu
            );
            let stdout = if config.format == Some(Format::Json) {
                to_json(SequenceOutput { yu: seq.yu, rows })
            } else {
                let mut s = String::from("n,alpha_n,displacement_n\n");
                for r in &rows {
                    s.push_str(&format!("{},{},{}\n", r.n, r.alpha_n, r.displacement_n));
                }
                s
            };
            Ok(Outcome::ok(stdout, summary))
        }
        Command::Estimate {
            input,
            epsilon,
            samples,
            seed,
        } => {
            let net = load_net(input)?;
            let spec = match epsilon {
                Some(e) => NeighborhoodSpec::new(net, *e, *samples, *seed)?,
                None => NeighborhoodSpec::with_default_epsilon(net, *samples, *seed)?,
            };
            let (sup, worst) = estimate_local_lipschitz(&spec)?;
            let summary = format!("sup ratio {sup} over {samples} pairs, epsilon {}", spec.epsilon);
            let o = EstimateOutput {
                epsilon: spec.epsilon,
                samples: *samples,
                seed: *seed,
                sup_ratio: sup,
                worst_pair: worst,
            };
            let stdout = if csv {
                format!(
                    "sup_ratio,alpha_ab,cheb_displacement,epsilon,samples\n{},{},{},{},{}\n",
                    o.sup_ratio,
                    o.worst_pair.alpha_ab,
                    o.worst_pair.cheb_displacement,
                    o.epsilon,
                    o.samples
                )
            } else {
                to_json(o)
            };
            Ok(Outcome::ok(stdout, summary))
        }
        Command::Suite { seed } => {
            if csv {
                return Err(csv_unsupported("suite"));
            }
            let report = suite_all(*seed)?;
            let summary = suite_summary(&report);
            let code = if report.pass { EXIT_OK } else { EXIT_FAIL };
            Ok(Outcome {
                stdout: to_json(&report),
                summary,
                code,
            })
        }
    }
}

fn verify(lemma: LemmaArg, trials: usize, dim: usize, n: usize, seed: u64, extensions: usize) -> Result<LemmaReport> {
    match lemma {
        LemmaArg::L1 => lab::verify_lemma1(trials, dim, seed),
        LemmaArg::L2 => lab::verify_lemma2(trials, n, seed),
        LemmaArg::L4 => {
            let ext = extensions.min(trials);
            lab::verify_lemma4_random(trials / ext, ext, dim, seed)
        }
        LemmaArg::S1 => lab::verify_statement1(trials, n, dim, seed),
        LemmaArg::S2i => lab::verify_statement2_shared_edge(trials, dim, seed),
        LemmaArg::S2ii => {
            if dim != 2 {
                return Err(Error::Domain(format!("the shared-vertex bound is planar, got dim {dim}")));
            }
            lab::verify_statement2_shared_vertex(trials, seed)
        }
    }
}

fn cheb_csv(r: &ChebResult) -> String {
    let d = r.center.dim();
    let mut s = String::from("radius");
    for i in 0..d {
        s.push_str(&format!(",c{i}"));
    }
    s.push('\n');
    s.push_str(&r.radius.to_string());
    for x in r.center.coords() {
        s.push_str(&format!(",{x}"));
    }
    s.push('\n');
    s
}

fn report_csv(r: &LemmaReport) -> String {
    format!(
        "lemma_id,trials,max_ratio,claimed_bound,secondary_violations,pass\n{},{},{},{},{},{}\n",
        r.lemma_id.as_str(),
        r.trials,
        r.max_ratio,
        r.claimed_bound,
        r.secondary_violations,
        r.pass
    )
}

fn report_summary(r: &LemmaReport) -> String {
    format!(
        "{}: max ratio {} vs bound {} over {} trials: {}",
        r.lemma_id.as_str(),
        r.max_ratio,
        r.claimed_bound,
        r.trials,
        if r.pass { "pass" } else { "FAIL" }
    )
}

/// Combines reports of the same bound: trials and violations add up and the
/// report with the largest excess over its bound supplies the worst sample.
pub fn merge_reports(reports: Vec<LemmaReport>) -> Option<LemmaReport> {
    let trials: usize = reports.iter().map(|r| r.trials).sum();
    let violations: usize = reports.iter().map(|r| r.secondary_violations).sum();
    let mut worst = reports
        .into_iter()
        .max_by(|a, b| (a.max_ratio - a.claimed_bound).total_cmp(&(b.max_ratio - b.claimed_bound)))?;
    worst.trials = trials;
    worst.secondary_violations = violations;
    let bound = worst.claimed_bound;
    Some(worst.with_bound(bound))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightCase {
    pub phi: f64,
    pub ratio: f64,
    pub constant: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RayExtensionSection {
    pub random: LemmaReport,
    pub tight: TightCase,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisjointBallsSection {
    pub by_n: BTreeMap<String, LemmaReport>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleSection {
    pub euclidean: Vec<CounterexampleOutput<Counterexample>>,
    pub hyperbolic: CounterexampleOutput<HyperbolicCounterexample>,
    pub pass: bool,
}

/// Summary of the non-uniform continuity sequence. The centers of `M_n` and
/// `Z_n` are the midpoints of `[x_n, y]` and `[x_n, u]`, so their distance is
/// `yu / 2` for every `n`; both gaps are reported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceSection {
    pub n_max: usize,
    pub alpha_10: f64,
    pub alpha_n_max: f64,
    pub alpha_drop: f64,
    pub displacement_n_max: f64,
    pub yu: f64,
    pub relative_gap_to_yu: f64,
    pub relative_gap_to_half_yu: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalBase {
    pub base_net: Net,
    pub epsilon: f64,
    pub sup_ratio: f64,
    pub sup_ratio_half_epsilon: f64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowUpPoint {
    pub yz: f64,
    pub epsilon: f64,
    pub sup_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalSection {
    pub samples: usize,
    pub bases: Vec<LocalBase>,
    pub blow_up: Vec<BlowUpPoint>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReports {
    #[serde(rename = "L1")]
    pub l1: LemmaReport,
    #[serde(rename = "L2")]
    pub l2: LemmaReport,
    #[serde(rename = "L4")]
    pub l4: RayExtensionSection,
    #[serde(rename = "S1")]
    pub s1: DisjointBallsSection,
    #[serde(rename = "S2i")]
    pub s2i: LemmaReport,
    #[serde(rename = "S2ii")]
    pub s2ii: LemmaReport,
    #[serde(rename = "L3")]
    pub l3: CounterexampleSection,
    #[serde(rename = "L3ii")]
    pub l3ii: SequenceSection,
    pub local: LocalSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub pass: bool,
    pub reports: SuiteReports,
}

/// Relative spread `|a - b| / max(a, b)` used for the stability check.
pub fn relative_spread(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

/// Blow-up family: the planar witness configuration `{x, y, z}` with a
/// neighborhood of radius `1.5 uz`, just wide enough to reach the companion
/// net `{x, y, u}`. The default epsilon (`yz / 8`) is far coarser than `uz`
/// (about `yz^2`) and does not resolve the transition.
pub fn blow_up_spec(yz: f64, samples: usize, seed: u64) -> Result<NeighborhoodSpec> {
    let (x, y, z, u) = lemma3_configuration(yz)?;
    let base = Net::new(vec![x, y, z.clone()])?;
    let uz = crate::geometry::distance(&u, &z)?;
    let eps = 1.5 * uz;
    NeighborhoodSpec::new(base, eps, samples, seed)
}

/// Sampled sup at `yz` in the blow-up family.
pub fn blow_up_point(yz: f64, samples: usize, seed: u64) -> Result<BlowUpPoint> {
    let spec = blow_up_spec(yz, samples, seed)?;
    let (sup, _) = estimate_local_lipschitz(&spec)?;
    Ok(BlowUpPoint {
        yz,
        epsilon: spec.epsilon,
        sup_ratio: sup,
    })
}

/// Sup ratios at the default epsilon and at half of it for a base net.
pub fn local_base(base: Net, samples: usize, seed: u64) -> Result<LocalBase> {
    let spec = NeighborhoodSpec::with_default_epsilon(base, samples, seed)?;
    let (sup, _) = estimate_local_lipschitz(&spec)?;
    let half = NeighborhoodSpec::new(spec.base_net.clone(), spec.epsilon / 2.0, samples, seed)?;
    let (sup_half, _) = estimate_local_lipschitz(&half)?;
    Ok(LocalBase {
        stable: sup.is_finite() && sup_half.is_finite() && relative_spread(sup, sup_half) < 0.5,
        base_net: spec.base_net,
        epsilon: spec.epsilon,
        sup_ratio: sup,
        sup_ratio_half_epsilon: sup_half,
    })
}

/// Every verifier at default sizes plus the counterexamples, the sequence
/// and local estimates, all derived from `seed`.
pub fn suite_all(seed: u64) -> Result<SuiteReport> {
    let t = DEFAULT_TRIALS;
    let sub = |k: u64| seed.wrapping_mul(1_000_003).wrapping_add(k);

    let l1 = merge_reports(
        (1..=5)
            .map(|d| lab::verify_lemma1(t / 5, d, sub(d as u64)))
            .collect::<Result<Vec<_>>>()?,
    )
    .expect("five dimensions");
    let l2 = lab::verify_lemma2(t, 5, sub(10))?;

    let random = lab::verify_lemma4_random(100, 100, 2, sub(20))?;
    let phi = std::f64::consts::PI / 5.0;
    let (u, v, w, z) = lemma4_tight_configuration(phi)?;
    let constant = lemma4_constant(&u, &v, &w)?;
    let ratio = sample_pair(&Net::new(vec![u.clone(), v.clone(), w])?, &Net::new(vec![u, v, z])?)?.ratio;
    let tight = TightCase {
        phi,
        ratio,
        constant,
        pass: (ratio - 1.0 / (2.0 * phi.sin())).abs() <= 1e-6,
    };
    let l4 = RayExtensionSection {
        pass: random.pass && tight.pass,
        random,
        tight,
    };

    let mut by_n = BTreeMap::new();
    for n in 3..=5 {
        by_n.insert(format!("N{n}"), lab::verify_statement1(t, n, 2, sub(30 + n as u64))?);
    }
    let s1 = DisjointBallsSection {
        pass: by_n.values().all(|r| r.pass),
        by_n,
    };
    let s2i = lab::verify_statement2_shared_edge(t, 2, sub(40))?;
    let s2ii = lab::verify_statement2_shared_vertex(t, sub(41))?;

    let euclidean = [1.0, 10.0, 100.0]
        .iter()
        .map(|&l| {
            lemma3_counterexample(l).map(|w| CounterexampleOutput { target: l, witness: w })
        })
        .collect::<Result<Vec<_>>>()?;
    let hyperbolic = CounterexampleOutput {
        target: 10.0,
        witness: lemma3_hyperbolic_counterexample(10.0)?,
    };
    let l3 = CounterexampleSection {
        pass: euclidean.iter().all(|c| c.witness.achieved_ratio > c.target)
            && hyperbolic.witness.achieved_ratio > hyperbolic.target
            && hyperbolic.witness.identity_residuals.iter().all(|r| *r <= 1e-9),
        euclidean,
        hyperbolic,
    };

    let n_max = 1000;
    let seq = lemma3_nonuniform_sequence(n_max)?;
    let a10 = seq.terms[9].alpha;
    let last = &seq.terms[n_max - 1];
    let gap_yu = (last.displacement - seq.yu).abs() / seq.yu;
    let gap_half = (last.displacement - seq.yu / 2.0).abs() / (seq.yu / 2.0);
    let l3ii = SequenceSection {
        n_max,
        alpha_10: a10,
        alpha_n_max: last.alpha,
        alpha_drop: a10 / last.alpha,
        displacement_n_max: last.displacement,
        yu: seq.yu,
        relative_gap_to_yu: gap_yu,
        relative_gap_to_half_yu: gap_half,
        pass: a10 / last.alpha >= 10.0 && gap_half <= 0.01,
    };

    let samples = DEFAULT_SAMPLES;
    let mut bases = Vec::new();
    for i in 0..3u64 {
        let mut rng = trial_rng(sub(50), i);
        let base = random_net(&mut rng, 3 + i as usize, 2);
        bases.push(local_base(base, samples, sub(60 + i))?);
    }
    let blow_up = [0.2, 0.1, 0.05, 0.025]
        .iter()
        .map(|&yz| blow_up_point(yz, samples, sub(70)))
        .collect::<Result<Vec<_>>>()?;
    let local = LocalSection {
        pass: bases.iter().all(|b| b.stable)
            && blow_up.windows(2).all(|w| w[1].sup_ratio > w[0].sup_ratio),
        samples,
        bases,
        blow_up,
    };

    let pass = l1.pass
        && l2.pass
        && l4.pass
        && s1.pass
        && s2i.pass
        && s2ii.pass
        && l3.pass
        && l3ii.pass
        && local.pass;
    Ok(SuiteReport {
        seed,
        pass,
        reports: SuiteReports {
            l1,
            l2,
            l4,
            s1,
            s2i,
            s2ii,
            l3,
            l3ii,
            local,
        },
    })
}

fn suite_summary(r: &SuiteReport) -> String {
    let s = &r.reports;
    let line = |k: &str, pass: bool| format!("{k}: {}", if pass { "pass" } else { "FAIL" });
    [
        report_summary(&s.l1),
        report_summary(&s.l2),
        line("L4", s.l4.pass),
        line("S1", s.s1.pass),
        report_summary(&s.s2i),
        report_summary(&s.s2ii),
        line("L3", s.l3.pass),
        line("L3ii", s.l3ii.pass),
        line("local", s.local.pass),
    ]
    .join("\n")
}
