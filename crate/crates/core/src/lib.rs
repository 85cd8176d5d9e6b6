//! Adversarial on-line graph coloring games.
//!
//! A Presenter reveals a graph one vertex at a time; an Algorithm irrevocably
//! assigns each new vertex a proper color before the next vertex appears. The
//! presenters here construct bipartite, triangle-free, and C3/C5-free graphs
//! that force any opponent to spend many colors, and every structural claim
//! they rely on is re-checked at runtime: component size bounds, level
//! censuses, table capacities, and exact-rational weight ledgers. Finished
//! games leave a replayable transcript that independent oracles verify.

pub mod algorithm;
pub mod engine;
pub mod graph;
pub mod oracle;
pub mod presenter;
pub mod sweep;
pub mod transcript;
pub mod verify;

pub use algorithm::{build_algorithm, AlgorithmKind};
pub use engine::{play, replay_verify, EngineError, GameOutcome, Move, StopReason};
pub use graph::{Color, ColoredGraph, GraphError, OddGirth, VertexId};
pub use presenter::{build_presenter, PresenterKind};
pub use sweep::{run_duel, run_sweep, DuelConfig, DuelResult, SweepRecord, SweepSpec};
pub use transcript::{Transcript, TranscriptError};
pub use verify::{verify_class, ClassReport, GraphClass, VerifyDepth};
