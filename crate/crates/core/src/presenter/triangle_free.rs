//! Adversary that forces colors on triangle-free graphs with a c-by-c table.
//!
//! Every colored vertex is filed in the table: row = its color, column = the
//! rightmost empty cell of that row (so the first vertex of a color lands in
//! column c). The game runs in phases 0..c-1; during phase k every new vertex
//! is adjacent to exactly the anchor set read from column k at phase start,
//! and the phase ends as soon as column k+1 holds a vertex whose color is not
//! on the anchor set. Neighborhoods stay inside a single column, which keeps
//! every column independent and the whole graph triangle-free, and the table
//! caps the game at c^2 vertices.

use std::collections::{BTreeMap, BTreeSet};

use crate::engine::{Move, Presenter, PresenterStep, StrategyError};
use crate::graph::{Color, ColoredGraph, VertexId};

/// c rows by c columns, at most one vertex per cell; rows fill right-to-left.
pub struct ShiftTable {
    target_colors: u32,
    cells: Vec<Vec<Option<VertexId>>>,
    fill: Vec<u32>,
}

impl ShiftTable {
    pub fn new(target_colors: u32) -> ShiftTable {
        let c = target_colors as usize;
        ShiftTable {
            target_colors,
            cells: vec![vec![None; c]; c],
            fill: vec![0; c],
        }
    }

    /// Files `v` under its color. Returns the 1-based (row, column).
    pub fn place(&mut self, v: VertexId, color: Color) -> Result<(u32, u32), StrategyError> {
        let c = self.target_colors;
        if color.get() > c {
            return Err(StrategyError::new(format!(
                "color {} exceeds the {}-row table",
                color, c
            )));
        }
        let row = color.get();
        if self.fill[(row - 1) as usize] >= c {
            return Err(StrategyError::new(format!(
                "row {} is full; the table should have ended the game earlier",
                row
            )));
        }
        let column = c - self.fill[(row - 1) as usize];
        self.cells[(row - 1) as usize][(column - 1) as usize] = Some(v);
        self.fill[(row - 1) as usize] += 1;
        Ok((row, column))
    }

    /// Occupied cells of a 1-based column, ascending row order.
    pub fn column_entries(&self, column: u32) -> Vec<(u32, VertexId)> {
        (1..=self.target_colors)
            .filter_map(|row| {
                self.cells[(row - 1) as usize][(column - 1) as usize].map(|v| (row, v))
            })
            .collect()
    }
}

/// True when some vertex in column `k+1` carries a color outside
/// `anchor_colors`; evaluated before presenting each vertex so a
/// pre-satisfied condition skips the phase without presenting.
pub fn phase_should_end(table: &ShiftTable, k: u32, anchor_colors: &BTreeSet<u32>) -> bool {
    if k + 1 > table.target_colors {
        return true;
    }
    table
        .column_entries(k + 1)
        .iter()
        .any(|(row, _)| !anchor_colors.contains(row))
}

pub struct TriangleFreePresenter {
    target_colors: u32,
    table: ShiftTable,
    phase: u32,
    anchors: Vec<VertexId>,
    anchor_colors: BTreeSet<u32>,
    placements: Vec<(u32, u32)>,
    positions: BTreeMap<VertexId, (u32, u32)>,
    done: bool,
}

impl TriangleFreePresenter {
    pub fn new(target_colors: u32) -> TriangleFreePresenter {
        TriangleFreePresenter {
            target_colors,
            table: ShiftTable::new(target_colors),
            phase: 0,
            anchors: Vec::new(),
            anchor_colors: BTreeSet::new(),
            placements: Vec::new(),
            positions: BTreeMap::new(),
            done: false,
        }
    }

    /// 1-based (row, column) of every placement, presentation order.
    pub fn placements(&self) -> &[(u32, u32)] {
        &self.placements
    }

    /// Table position of each presented vertex.
    pub fn positions(&self) -> &BTreeMap<VertexId, (u32, u32)> {
        &self.positions
    }

    fn advance_phase(&mut self) -> Result<(), StrategyError> {
        self.phase += 1;
        if self.phase > self.target_colors - 1 {
            self.done = true;
            return Ok(());
        }
        let entries = self.table.column_entries(self.phase);
        self.anchor_colors = entries.iter().map(|(row, _)| *row).collect();
        let mut anchors: Vec<VertexId> = entries.into_iter().map(|(_, v)| v).collect();
        anchors.sort();
        if (anchors.len() as u32) < self.phase {
            return Err(StrategyError::new(format!(
                "phase {}: anchor set of size {} is smaller than the phase index",
                self.phase,
                anchors.len()
            )));
        }
        self.anchors = anchors;
        Ok(())
    }
}

impl Presenter for TriangleFreePresenter {
    fn name(&self) -> &'static str {
        "triangle-free"
    }

    fn next_move(&mut self, _view: &ColoredGraph) -> Result<PresenterStep, StrategyError> {
        loop {
            if self.done || self.target_colors == 0 {
                return Ok(PresenterStep::Done);
            }
            if phase_should_end(&self.table, self.phase, &self.anchor_colors) {
                self.advance_phase()?;
                continue;
            }
            let annotation = format!("phase={} |I_k|={}", self.phase, self.anchors.len());
            return Ok(PresenterStep::Present(Move::new(
                self.anchors.clone(),
                annotation,
            )));
        }
    }

    fn observe(&mut self, vertex: VertexId, color: Color) -> Result<(), StrategyError> {
        let (row, column) = self.table.place(vertex, color)?;
        self.placements.push((row, column));
        self.positions.insert(vertex, (row, column));
        Ok(())
    }

    fn stats(&self) -> BTreeMap<String, u64> {
        let mut stats = BTreeMap::new();
        let phases = if self.done {
            self.target_colors as u64
        } else {
            self.phase as u64 + 1
        };
        stats.insert("phases".to_string(), phases);
        stats.insert("placements".to_string(), self.placements.len() as u64);
        stats
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithm::FirstFit;
    use crate::engine::{play, replay_verify, StopReason};

    #[test]
    fn placements_fill_rows_right_to_left() {
        let mut t = ShiftTable::new(3);
        assert_eq!(t.place(VertexId::new(1), Color::new(1)).unwrap(), (1, 3));
        assert_eq!(t.place(VertexId::new(2), Color::new(1)).unwrap(), (1, 2));
        assert_eq!(t.place(VertexId::new(3), Color::new(1)).unwrap(), (1, 1));
        let err = t.place(VertexId::new(4), Color::new(1)).unwrap_err();
        assert!(err.message.contains("full"));
    }

    #[test]
    fn phase_end_condition_examples() {
        let mut t = ShiftTable::new(3);
        let empty = BTreeSet::new();
        assert!(!phase_should_end(&t, 0, &empty));
        t.place(VertexId::new(1), Color::new(1)).unwrap();
        t.place(VertexId::new(2), Color::new(1)).unwrap();
        t.place(VertexId::new(3), Color::new(1)).unwrap();
        // vertex landed in column 1; against an empty anchor set any color ends phase 0
        assert!(phase_should_end(&t, 0, &empty));
        // column 2 holds only a color-1 vertex: no end against anchors colored {1}
        let ones: BTreeSet<u32> = [1].into_iter().collect();
        assert!(!phase_should_end(&t, 1, &ones));
    }

    #[test]
    fn first_fit_duel_c3_produces_pinned_trace() {
        let mut p = TriangleFreePresenter::new(3);
        let mut a = FirstFit;
        let (outcome, transcript) = play(&mut p, &mut a, 3, 1000, 0).unwrap();
        assert_eq!(outcome.vertices, 6);
        assert_eq!(outcome.distinct_colors, 3);
        assert_eq!(outcome.stopped, StopReason::TargetReached);
        assert!(outcome.vertices <= 9, "at most c^2 vertices");
        let expected = "ogc-transcript v1 presenter=triangle-free algorithm=first-fit c=3 seed=0\n\
                        1;;1;phase=0 |I_k|=0\n\
                        2;;1;phase=0 |I_k|=0\n\
                        3;;1;phase=0 |I_k|=0\n\
                        4;3;2;phase=1 |I_k|=1\n\
                        5;3;2;phase=1 |I_k|=1\n\
                        6;2,5;3;phase=2 |I_k|=2\n";
        assert_eq!(transcript.render(), expected);
        assert_eq!(
            p.placements(),
            &[(1, 3), (1, 2), (1, 1), (2, 3), (2, 2), (3, 3)]
        );
        let (_, graph) = replay_verify(&transcript).unwrap();
        assert!(graph.odd_girth().at_least(5));
    }

    #[test]
    fn every_column_stays_independent() {
        let mut p = TriangleFreePresenter::new(5);
        let mut a = FirstFit;
        let (_, transcript) = play(&mut p, &mut a, 5, 10_000, 0).unwrap();
        let (_, graph) = replay_verify(&transcript).unwrap();
        for v in graph.vertices() {
            let (_, cv) = p.positions()[&v];
            for &u in graph.neighbors(v) {
                let (_, cu) = p.positions()[&u];
                assert_ne!(cv, cu, "edge inside column {}", cv);
            }
        }
        // and each introduction's neighborhood sits inside one column
        for r in &transcript.rounds {
            let columns: BTreeSet<u32> =
                r.neighbors.iter().map(|v| p.positions()[v].1).collect();
            assert!(columns.len() <= 1);
        }
    }
}
