//! Experiment runner: gap-decider sweeps, distinguisher trials and
//! approximation-ratio corpora, reported as CSV or JSON.
//!
//! Trials run in parallel. Rows come back in the order the configuration
//! enumerates them, so reports are identical across runs and thread counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    gen_clique_minus_edge, gen_complete, gen_erdos_renyi, gen_two_graph_family,
    has_k_clique_bruteforce, verify_subset_density, CliqueInstance, Graph, TwoGraphParams,
};
use crate::hardness::{
    decide_clique_via_gap, distinguish, soundness_bound_check, Declared, DistinguishConfig,
};
use crate::scalar::Scalar;
use crate::spca::{opt_exact, ratio_against, Settings, SolverKind, SpcaSolver};
use crate::spectral::{adjacency_matrix, random_uniform_symmetric, SymmetricMatrix};

/// Families to run; absent sections are skipped.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub gap_sweep: Option<GapSweep>,
    #[serde(default)]
    pub distinguisher: Option<DistinguisherTrials>,
    #[serde(default)]
    pub ratio_corpus: Option<RatioCorpus>,
}

/// `K_ℓ` (yes) and `K_ℓ` minus one edge (no) for every `ℓ` in range, decided with `K = ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapSweep {
    #[serde(default = "default_ell_min")]
    pub ell_min: usize,
    #[serde(default = "default_ell_max")]
    pub ell_max: usize,
    #[serde(default = "default_solver")]
    pub solver: SolverKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistinguisherTrials {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_ell")]
    pub ell: usize,
    #[serde(default = "default_alphas")]
    pub alphas: Vec<f64>,
    /// Density of the sparse side; `α²` when absent.
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_solver")]
    pub solver: SolverKind,
    #[serde(default = "default_retries")]
    pub retries: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusSource {
    /// Adjacency matrices of `G(n, p)`.
    ErdosRenyi,
    /// Symmetric matrices with entries uniform in `[-1, 1]`.
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioCorpus {
    #[serde(default = "default_corpus_n")]
    pub n: usize,
    #[serde(default = "default_r")]
    pub r: usize,
    #[serde(default = "default_count")]
    pub count: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_source")]
    pub source: CorpusSource,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_heuristics")]
    pub solvers: Vec<SolverKind>,
}

fn default_ell_min() -> usize {
    3
}
fn default_ell_max() -> usize {
    12
}
fn default_solver() -> SolverKind {
    SolverKind::Exact
}
fn default_n() -> usize {
    16
}
fn default_ell() -> usize {
    4
}
fn default_alphas() -> Vec<f64> {
    vec![0.5, 0.8, 0.95]
}
fn default_trials() -> usize {
    50
}
fn default_retries() -> usize {
    TwoGraphParams::DEFAULT_RETRIES
}
fn default_corpus_n() -> usize {
    8
}
fn default_r() -> usize {
    3
}
fn default_count() -> usize {
    20
}
fn default_source() -> CorpusSource {
    CorpusSource::ErdosRenyi
}
fn default_p() -> f64 {
    0.5
}
fn default_heuristics() -> Vec<SolverKind> {
    vec![SolverKind::Greedy, SolverKind::Threshold]
}

/// One instance outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub instance_id: String,
    pub family: String,
    pub n: usize,
    #[serde(rename = "K_or_ell")]
    pub k_or_ell: usize,
    pub solver: String,
    pub achieved: f64,
    pub threshold: f64,
    pub decision: String,
    pub ground_truth: String,
    pub correct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub family: String,
    pub instances: usize,
    pub correct: usize,
    pub accuracy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_ratio: Option<f64>,
    /// Sparse sides on which the soundness inequality held.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub soundness_passed: Option<usize>,
}

/// Tolerances in force, echoed into every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportSettings {
    pub tol: f64,
    pub tau: f64,
    pub guard: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub settings: ReportSettings,
    pub rows: Vec<ReportRow>,
    pub summary: Vec<FamilySummary>,
}

pub const CSV_COLUMNS: [&str; 10] = [
    "instance_id",
    "family",
    "n",
    "K_or_ell",
    "solver",
    "achieved",
    "threshold",
    "decision",
    "ground_truth",
    "correct",
];

impl Report {
    /// CSV with the settings on a leading `#` comment line.
    pub fn to_csv(&self) -> Result<String> {
        let s = self.settings;
        let mut out = format!("# tol={:e} tau={:e} guard={}\n", s.tol, s.tau, s.guard);
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidParameter(format!("csv: {e}"));
        w.write_record(CSV_COLUMNS).map_err(io)?;
        for row in &self.rows {
            w.serialize(row).map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn all_correct(&self) -> bool {
        self.rows.iter().all(|r| r.correct)
    }
}

fn f<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn summarize(family: &str, rows: &[ReportRow]) -> FamilySummary {
    let instances = rows.len();
    let correct = rows.iter().filter(|r| r.correct).count();
    FamilySummary {
        family: family.to_string(),
        instances,
        correct,
        accuracy: if instances == 0 {
            1.0
        } else {
            correct as f64 / instances as f64
        },
        min_ratio: None,
        mean_ratio: None,
        soundness_passed: None,
    }
}

fn gap_rows<T: Scalar>(cfg: &GapSweep, settings: &Settings<T>) -> Result<Vec<ReportRow>> {
    if cfg.ell_min < 2 || cfg.ell_min > cfg.ell_max {
        return Err(Error::InvalidParameter(format!(
            "gap sweep needs 2 <= ell_min <= ell_max, got {}..={}",
            cfg.ell_min, cfg.ell_max
        )));
    }
    let cases: Vec<(usize, bool)> = (cfg.ell_min..=cfg.ell_max)
        .flat_map(|l| [(l, true), (l, false)])
        .collect();
    cases
        .par_iter()
        .map(|&(ell, complete)| {
            let (graph, tag) = if complete {
                (gen_complete(ell), "complete")
            } else {
                (gen_clique_minus_edge(ell)?, "minus-edge")
            };
            let inst = CliqueInstance::new(graph, ell)?;
            let truth = has_k_clique_bruteforce(&inst, settings.guard)?;
            let d = decide_clique_via_gap(&inst, &cfg.solver, settings)?;
            Ok(ReportRow {
                instance_id: format!("gap-{tag}-{ell}"),
                family: "gap-sweep".into(),
                n: ell,
                k_or_ell: ell,
                solver: cfg.solver.to_string(),
                achieved: f(d.x),
                threshold: f(d.threshold),
                decision: d.has_clique.to_string(),
                ground_truth: truth.to_string(),
                correct: d.has_clique == truth,
            })
        })
        .collect()
}

fn distinguisher_rows<T: Scalar>(
    cfg: &DistinguisherTrials,
    settings: &Settings<T>,
) -> Result<(Vec<ReportRow>, usize)> {
    let mut jobs = Vec::new();
    for &alpha in &cfg.alphas {
        let dc = DistinguishConfig::<T>::new(cfg.ell, T::lit(alpha), cfg.delta.map(T::lit))?;
        for t in 0..cfg.trials {
            jobs.push((alpha, dc, t));
        }
    }
    let results: Vec<(ReportRow, bool)> = jobs
        .par_iter()
        .map(|&(alpha, dc, t)| {
            let delta = f(dc.delta);
            let seed = cfg.seed.wrapping_add(t as u64);
            let params = TwoGraphParams {
                retries: cfg.retries,
                ..TwoGraphParams::new(cfg.n, cfg.ell, delta, seed)
            };
            let fam = gen_two_graph_family(params, settings.guard)?;
            // the runner certifies both promises itself before scoring
            let clique_ok = has_k_clique_bruteforce(
                &CliqueInstance::new(fam.with_clique.clone(), cfg.ell)?,
                settings.guard,
            )?;
            let sparse_ok = verify_subset_density(&fam.sparse, cfg.ell, delta, settings.guard)?;
            if !(clique_ok && sparse_ok) {
                return Err(Error::CertificationFailed {
                    attempts: fam.attempts,
                });
            }
            let sound = soundness_bound_check(&fam.sparse, cfg.ell, dc.delta, settings)?;
            let (first, second, truth): (&Graph, &Graph, Declared) = if t % 2 == 0 {
                (&fam.with_clique, &fam.sparse, Declared::First)
            } else {
                (&fam.sparse, &fam.with_clique, Declared::Second)
            };
            let res = distinguish(first, second, &dc, &cfg.solver, settings)?;
            let row = ReportRow {
                instance_id: format!("dist-a{alpha}-t{t}"),
                family: "distinguisher".into(),
                n: cfg.n,
                k_or_ell: cfg.ell,
                solver: cfg.solver.to_string(),
                achieved: f(res.achieved_value),
                threshold: f(res.threshold),
                decision: res.declared.as_str().into(),
                ground_truth: truth.as_str().into(),
                correct: res.declared == truth,
            };
            Ok((row, sound))
        })
        .collect::<Result<_>>()?;
    let sound = results.iter().filter(|(_, s)| *s).count();
    Ok((results.into_iter().map(|(r, _)| r).collect(), sound))
}

fn corpus_matrix<T: Scalar>(cfg: &RatioCorpus, i: usize) -> Result<SymmetricMatrix<T>> {
    let seed = cfg.seed.wrapping_add(i as u64);
    Ok(match cfg.source {
        CorpusSource::ErdosRenyi => adjacency_matrix(&gen_erdos_renyi(cfg.n, cfg.p, seed)?),
        CorpusSource::Uniform => random_uniform_symmetric(cfg.n, seed),
    })
}

fn ratio_rows<T: Scalar>(cfg: &RatioCorpus, settings: &Settings<T>) -> Result<Vec<ReportRow>> {
    let rows: Vec<Vec<ReportRow>> = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let s = corpus_matrix::<T>(cfg, i)?;
            let opt = opt_exact(&s, cfg.r, settings)?;
            if !(opt.value > T::zero()) {
                // ratio undefined; instance skipped
                return Ok(Vec::new());
            }
            cfg.solvers
                .iter()
                .map(|kind| {
                    let got = kind.solve(&s, cfg.r, settings)?;
                    let ratio = ratio_against(got.value, opt.value)?;
                    Ok(ReportRow {
                        instance_id: format!("ratio-{i}"),
                        family: "ratio-corpus".into(),
                        n: cfg.n,
                        k_or_ell: cfg.r,
                        solver: kind.to_string(),
                        achieved: f(got.value),
                        threshold: f(opt.value),
                        decision: format!("{:.12}", f(ratio)),
                        ground_truth: "opt".into(),
                        correct: ratio >= T::one() - T::lit(1e-9),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Runs every configured family and assembles the report.
pub fn run_experiment<T: Scalar>(cfg: &ExperimentConfig, settings: &Settings<T>) -> Result<Report> {
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    if let Some(gap) = &cfg.gap_sweep {
        let r = gap_rows(gap, settings)?;
        summary.push(summarize("gap-sweep", &r));
        rows.extend(r);
    }
    if let Some(dist) = &cfg.distinguisher {
        let (r, sound) = distinguisher_rows(dist, settings)?;
        let mut s = summarize("distinguisher", &r);
        s.soundness_passed = Some(sound);
        summary.push(s);
        rows.extend(r);
    }
    if let Some(corpus) = &cfg.ratio_corpus {
        let r = ratio_rows(corpus, settings)?;
        let ratios: Vec<f64> = r.iter().map(|row| row.achieved / row.threshold).collect();
        let mut s = summarize("ratio-corpus", &r);
        if !ratios.is_empty() {
            s.min_ratio = Some(ratios.iter().copied().fold(f64::INFINITY, f64::min));
            s.mean_ratio = Some(ratios.iter().sum::<f64>() / ratios.len() as f64);
        }
        summary.push(s);
        rows.extend(r);
    }
    Ok(Report {
        settings: ReportSettings {
            tol: f(settings.tol),
            tau: f(settings.tau),
            guard: settings.guard.0,
        },
        rows,
        summary,
    })
}
