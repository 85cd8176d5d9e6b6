//! Duel assembly and parameter sweeps.
//!
//! A sweep is a grid of independent games; rows run concurrently when the
//! `parallel` feature is on and the output order is fixed either way.

use std::time::Instant;

use crate::algorithm::{build_algorithm, AlgorithmKind};
use crate::engine::{play, EngineError, GameOutcome};
use crate::presenter::{build_presenter, PresenterKind};
use crate::transcript::Transcript;
use crate::verify::{verify_class, ClassReport, VerifyDepth};

#[derive(Clone, Copy, Debug)]
pub struct DuelConfig {
    pub presenter: PresenterKind,
    pub algorithm: AlgorithmKind,
    pub target_colors: u32,
    pub seed: u64,
    pub round_cap: Option<u64>,
}

impl DuelConfig {
    pub fn new(presenter: PresenterKind, algorithm: AlgorithmKind, target_colors: u32) -> DuelConfig {
        DuelConfig {
            presenter,
            algorithm,
            target_colors,
            seed: 0,
            round_cap: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> DuelConfig {
        self.seed = seed;
        self
    }
}

pub struct DuelResult {
    pub outcome: GameOutcome,
    pub transcript: Transcript,
}

/// Runs one presenter/algorithm duel to its stop condition.
pub fn run_duel(config: &DuelConfig) -> Result<DuelResult, EngineError> {
    let mut presenter = build_presenter(config.presenter, config.target_colors);
    let mut algorithm = build_algorithm(config.algorithm, config.seed);
    let round_cap = config
        .round_cap
        .unwrap_or_else(|| config.presenter.default_round_cap(config.target_colors));
    let (outcome, transcript) = play(
        presenter.as_mut(),
        algorithm.as_mut(),
        config.target_colors,
        round_cap,
        config.seed,
    )?;
    Ok(DuelResult {
        outcome,
        transcript,
    })
}

/// One sweep row. Booleans render as 0/1, the elapsed time with three
/// decimals; everything else is integral, so rows are byte-stable apart from
/// the timing column.
#[derive(Clone, Debug)]
pub struct SweepRecord {
    pub presenter: String,
    pub algorithm: String,
    pub target_colors: u32,
    pub seed: u64,
    pub n_vertices: u64,
    pub colors_used: u32,
    pub phases: u64,
    pub broken_phases: u64,
    pub interesting_fans: u64,
    pub class_ok: bool,
    pub bound_ok: bool,
    pub elapsed_ms: f64,
    pub error: Option<String>,
}

pub const CSV_HEADER: &str = "presenter,algorithm,c,seed,n_vertices,colors_used,phases,broken_phases,interesting_fans,class_ok,bound_ok,elapsed_ms";

impl SweepRecord {
    pub fn ok(&self) -> bool {
        self.class_ok && self.bound_ok && self.error.is_none()
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.3}",
            self.presenter,
            self.algorithm,
            self.target_colors,
            self.seed,
            self.n_vertices,
            self.colors_used,
            self.phases,
            self.broken_phases,
            self.interesting_fans,
            self.class_ok as u8,
            self.bound_ok as u8,
            self.elapsed_ms,
        )
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub presenter: PresenterKind,
    pub algorithms: Vec<AlgorithmKind>,
    /// Inclusive color target range.
    pub colors: (u32, u32),
    pub seeds: Vec<u64>,
    pub round_cap: Option<u64>,
    pub depth: VerifyDepth,
}

impl SweepSpec {
    /// Deterministic job grid: algorithms in the given order, then color
    /// targets ascending, then seeds in the given order.
    pub fn jobs(&self) -> Vec<DuelConfig> {
        let mut jobs = Vec::new();
        for &algorithm in &self.algorithms {
            for c in self.colors.0..=self.colors.1 {
                for &seed in &self.seeds {
                    jobs.push(DuelConfig {
                        presenter: self.presenter,
                        algorithm,
                        target_colors: c,
                        seed,
                        round_cap: self.round_cap,
                    });
                }
            }
        }
        jobs
    }
}

/// Executes one job and grades it: class membership via the graph oracles
/// and the vertex count against the presenter's bound.
pub fn run_job(config: &DuelConfig, depth: VerifyDepth) -> SweepRecord {
    let start = Instant::now();
    let mut record = SweepRecord {
        presenter: config.presenter.name().to_string(),
        algorithm: config.algorithm.name().to_string(),
        target_colors: config.target_colors,
        seed: config.seed,
        n_vertices: 0,
        colors_used: 0,
        phases: 0,
        broken_phases: 0,
        interesting_fans: 0,
        class_ok: false,
        bound_ok: false,
        elapsed_ms: 0.0,
        error: None,
    };
    match run_duel(config) {
        Err(e) => record.error = Some(e.to_string()),
        Ok(result) => {
            record.n_vertices = result.outcome.vertices;
            record.colors_used = result.outcome.distinct_colors;
            let stat = |key: &str| result.outcome.strategy_stats.get(key).copied().unwrap_or(0);
            record.phases = stat("phases");
            record.broken_phases = stat("broken_phases");
            record.interesting_fans = stat("interesting_fans");
            record.bound_ok = config
                .presenter
                .bound_holds(config.target_colors, result.outcome.vertices);
            let report: ClassReport = match crate::engine::replay_verify(&result.transcript) {
                Err(e) => {
                    record.error = Some(e.to_string());
                    record.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
                    return record;
                }
                Ok((_, graph)) => verify_class(&graph, config.presenter.graph_class(), depth),
            };
            record.class_ok = report.ok;
            if !report.ok {
                record.error = Some(format!("class check failed: {}", report.detail));
            }
        }
    }
    record.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    record
}

/// Runs every job in order on the current thread.
pub fn run_sweep_sequential(spec: &SweepSpec) -> Vec<SweepRecord> {
    spec.jobs().iter().map(|job| run_job(job, spec.depth)).collect()
}

/// Runs the jobs across the rayon pool; output order matches the job grid.
#[cfg(feature = "parallel")]
pub fn run_sweep_parallel(spec: &SweepSpec) -> Vec<SweepRecord> {
    use rayon::prelude::*;
    let jobs = spec.jobs();
    jobs.par_iter().map(|job| run_job(job, spec.depth)).collect()
}

pub fn run_sweep(spec: &SweepSpec) -> Vec<SweepRecord> {
    #[cfg(feature = "parallel")]
    {
        run_sweep_parallel(spec)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sweep_sequential(spec)
    }
}

pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duel_summary_matches_engine() {
        let config = DuelConfig::new(PresenterKind::Bipartite, AlgorithmKind::FreshColor, 3);
        let result = run_duel(&config).unwrap();
        assert_eq!(result.outcome.vertices, 3);
        assert_eq!(result.outcome.distinct_colors, 3);
    }

    #[test]
    fn sweep_rows_are_graded_and_ordered() {
        let spec = SweepSpec {
            presenter: PresenterKind::TriangleFree,
            algorithms: vec![AlgorithmKind::FirstFit, AlgorithmKind::FreshColor],
            colors: (2, 4),
            seeds: vec![0],
            round_cap: None,
            depth: VerifyDepth::Auto,
        };
        let records = run_sweep_sequential(&spec);
        assert_eq!(records.len(), 6);
        assert!(records.iter().all(|r| r.ok()), "{:?}", records);
        let order: Vec<(String, u32)> = records
            .iter()
            .map(|r| (r.algorithm.clone(), r.target_colors))
            .collect();
        assert_eq!(
            order,
            vec![
                ("first-fit".into(), 2),
                ("first-fit".into(), 3),
                ("first-fit".into(), 4),
                ("fresh".into(), 2),
                ("fresh".into(), 3),
                ("fresh".into(), 4),
            ]
        );
        let csv = to_csv(&records);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 7);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_sweeps_agree() {
        let spec = SweepSpec {
            presenter: PresenterKind::Bipartite,
            algorithms: vec![AlgorithmKind::FirstFit, AlgorithmKind::RandomAdmissible],
            colors: (2, 6),
            seeds: vec![1, 2],
            round_cap: None,
            depth: VerifyDepth::Auto,
        };
        let seq = run_sweep_sequential(&spec);
        let par = run_sweep_parallel(&spec);
        assert_eq!(seq.len(), par.len());
        for (a, b) in seq.iter().zip(par.iter()) {
            assert_eq!(a.n_vertices, b.n_vertices);
            assert_eq!(a.colors_used, b.colors_used);
            assert_eq!(a.class_ok, b.class_ok);
            assert_eq!(a.bound_ok, b.bound_ok);
        }
    }
}
