//! The round loop: Presenter emits a move, the engine grows the graph, the
//! Algorithm colors the new vertex, the engine validates and records it.
//!
//! One game is strictly sequential; independent games can run concurrently.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Color, ColoredGraph, GraphError, VertexId};
use crate::transcript::{RoundRecord, Transcript, TranscriptError, TranscriptHeader};

/// A single presenter move: the neighbor set for the next vertex plus a short
/// annotation recorded in the transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub neighbors: Vec<VertexId>,
    pub annotation: String,
}

impl Move {
    /// Normalizes the neighbor set (sorted, deduplicated).
    pub fn new(mut neighbors: Vec<VertexId>, annotation: impl Into<String>) -> Move {
        neighbors.sort();
        neighbors.dedup();
        Move {
            neighbors,
            annotation: annotation.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum PresenterStep {
    Present(Move),
    Done,
}

/// A strategy-internal failure: a violated bookkeeping invariant or an
/// impossible state. Both sides of the game report through this type.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("{message}")]
pub struct StrategyError {
    pub message: String,
}

impl StrategyError {
    pub fn new(message: impl Into<String>) -> StrategyError {
        StrategyError {
            message: message.into(),
        }
    }
}

/// Adversary side: decides the next vertex's neighborhood. Sees the full
/// presented graph and every assigned color, never Algorithm internals.
pub trait Presenter {
    fn name(&self) -> &'static str;
    fn next_move(&mut self, view: &ColoredGraph) -> Result<PresenterStep, StrategyError>;
    fn observe(&mut self, vertex: VertexId, color: Color) -> Result<(), StrategyError>;
    fn stats(&self) -> BTreeMap<String, u64> {
        BTreeMap::new()
    }
}

/// Coloring side: sees only the presented graph (including the new uncolored
/// vertex) and must return a proper color for it.
pub trait Algorithm {
    fn name(&self) -> &'static str;
    fn choose_color(
        &mut self,
        view: &ColoredGraph,
        vertex: VertexId,
    ) -> Result<Color, StrategyError>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    TargetReached,
    PresenterDone,
    RoundCap,
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StopReason::TargetReached => write!(f, "target-reached"),
            StopReason::PresenterDone => write!(f, "presenter-done"),
            StopReason::RoundCap => write!(f, "round-cap"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameOutcome {
    pub vertices: u64,
    pub distinct_colors: u32,
    pub stopped: StopReason,
    pub strategy_stats: BTreeMap<String, u64>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid game config: {0}")]
    InvalidConfig(String),
    #[error("round {round}: illegal presenter move: {source}")]
    IllegalMove { round: u64, source: GraphError },
    #[error("round {round}: improper color from algorithm: {source}")]
    ImproperColor { round: u64, source: GraphError },
    #[error("round {round}: presenter failure: {source}")]
    PresenterFailure { round: u64, source: StrategyError },
    #[error("round {round}: algorithm failure: {source}")]
    AlgorithmFailure { round: u64, source: StrategyError },
    #[error("replay: {0}")]
    Replay(TranscriptError),
}

/// Runs one game to completion: stops at the first assignment that reaches
/// `target_colors` distinct colors, when the presenter is done, or at the
/// round cap (a safety net only).
pub fn play(
    presenter: &mut dyn Presenter,
    algorithm: &mut dyn Algorithm,
    target_colors: u32,
    round_cap: u64,
    seed: u64,
) -> Result<(GameOutcome, Transcript), EngineError> {
    if target_colors == 0 {
        return Err(EngineError::InvalidConfig("target colors must be >= 1".into()));
    }
    if round_cap == 0 {
        return Err(EngineError::InvalidConfig("round cap must be >= 1".into()));
    }
    let mut graph = ColoredGraph::new();
    let mut rounds: Vec<RoundRecord> = Vec::new();
    let stopped = loop {
        // the stop check runs after every single assignment (and before the
        // first), so games halt mid-phase and mid-fan
        if graph.distinct_color_count() as u32 >= target_colors {
            break StopReason::TargetReached;
        }
        if rounds.len() as u64 >= round_cap {
            break StopReason::RoundCap;
        }
        let round = rounds.len() as u64 + 1;
        let step = presenter
            .next_move(&graph)
            .map_err(|source| EngineError::PresenterFailure { round, source })?;
        let mv = match step {
            PresenterStep::Done => break StopReason::PresenterDone,
            PresenterStep::Present(m) => m,
        };
        let vertex = graph
            .add_vertex(&mv.neighbors)
            .map_err(|source| EngineError::IllegalMove { round, source })?;
        let color = algorithm
            .choose_color(&graph, vertex)
            .map_err(|source| EngineError::AlgorithmFailure { round, source })?;
        graph
            .assign_color(vertex, color)
            .map_err(|source| EngineError::ImproperColor { round, source })?;
        rounds.push(RoundRecord {
            index: vertex.get(),
            neighbors: mv.neighbors,
            color,
            annotation: mv.annotation,
        });
        presenter
            .observe(vertex, color)
            .map_err(|source| EngineError::PresenterFailure { round, source })?;
    };
    let outcome = GameOutcome {
        vertices: graph.vertex_count() as u64,
        distinct_colors: graph.distinct_color_count() as u32,
        stopped,
        strategy_stats: presenter.stats(),
    };
    let transcript = Transcript {
        header: TranscriptHeader {
            presenter: presenter.name().to_string(),
            algorithm: algorithm.name().to_string(),
            target_colors,
            seed,
        },
        rounds,
    };
    Ok((outcome, transcript))
}

/// Rebuilds the graph from a transcript, re-checking every move and every
/// color assignment. Returns the recomputed outcome (strategy counters are
/// not recoverable from a transcript) and the reconstructed graph.
pub fn replay_verify(t: &Transcript) -> Result<(GameOutcome, ColoredGraph), EngineError> {
    let mut graph = ColoredGraph::new();
    for (i, r) in t.rounds.iter().enumerate() {
        let round = i as u64 + 1;
        if r.index as u64 != round {
            return Err(EngineError::Replay(TranscriptError {
                line: i + 2,
                message: format!("round index {} out of order (expected {})", r.index, round),
            }));
        }
        graph
            .add_vertex(&r.neighbors)
            .map_err(|source| EngineError::IllegalMove { round, source })?;
        graph
            .assign_color(VertexId::new(r.index), r.color)
            .map_err(|source| EngineError::ImproperColor { round, source })?;
    }
    let distinct = graph.distinct_color_count() as u32;
    let outcome = GameOutcome {
        vertices: graph.vertex_count() as u64,
        distinct_colors: distinct,
        stopped: if distinct >= t.header.target_colors {
            StopReason::TargetReached
        } else {
            StopReason::PresenterDone
        },
        strategy_stats: BTreeMap::new(),
    };
    Ok((outcome, graph))
}
