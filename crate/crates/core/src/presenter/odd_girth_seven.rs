//! Adversary that forces colors on graphs with no 3- or 5-cycles.
//!
//! The bookkeeping structure is a table with c rows (one per color) and 3c
//! columns, each cell holding up to 3c weighted vertices. A cell at capacity
//! is blocked; a color is available for a column while its cell there has
//! room. The game runs in 3c phases. Phase k splits the vertices of the
//! blocked cells of column k into 3c groups (one vertex per blocked color in
//! each group) and presents, per group, a fan: an independent set of
//! `3c*(1+ceil(ln 3c))` fresh vertices all adjacent to exactly that group.
//!
//! Three rules govern a fan. If some color is available for column k but
//! blocked in every column to its right, the phase is abandoned before the
//! fan ("broken", at most c times). If the fan can fill some cell right of
//! column k to capacity, it does so and the cell blocks, the moved vertices
//! weighing 0. Otherwise the fan is "interesting": a vertex of color i weighs
//! 3c/t_i, where t_i counts the columns right of k still open for color i,
//! and the whole fan goes to the column collecting the most weight, which is
//! provably at least the fan size. Unplaced fan vertices are discarded and
//! never used as neighbors again. Fans attach to single columns and columns
//! stay independent, which is what rules out C3 and C5.
//!
//! Weights are exact rationals. The per-row weight total and the weight
//! census are re-checked after every fan against a conservatively rounded
//! bound, so a passing run is sound.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

use crate::engine::{Move, Presenter, PresenterStep, StrategyError};
use crate::graph::{Color, ColoredGraph, VertexId};

pub fn ceil_ln(x: u64) -> u64 {
    assert!(x >= 2, "defined away from ln(1) = 0");
    (x as f64).ln().ceil() as u64
}

/// Fan size `3c * (1 + ceil(ln 3c))`.
pub fn fan_size(target_colors: u32) -> u32 {
    let three_c = 3 * target_colors as u64;
    (three_c * (1 + ceil_ln(three_c))) as u32
}

/// Worst-case vertex count `27c^3 * (1 + ceil(ln 3c))`.
pub fn vertex_bound(target_colors: u32) -> u64 {
    let c = target_colors as u64;
    27 * c * c * c * (1 + ceil_ln(3 * c))
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Strict upper bound for any row's weight total: `9c^2 * (1 + ln 3c)` with
/// the logarithm rounded down, so `weight < bound` passing implies the true
/// inequality.
pub fn row_weight_bound(target_colors: u32) -> BigRational {
    let c = target_colors as u64;
    let ln_low = (3.0 * c as f64).ln() * (1.0 - 1e-12);
    BigRational::from_integer(BigInt::from(9 * c * c))
        * (BigRational::one() + BigRational::from_float(ln_low).expect("finite"))
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub vertex: VertexId,
    /// `Some(t)` for weight `3c/t`; `None` for the weight-0 blocking moves.
    pub tier: Option<u32>,
}

/// c rows by 3c columns of weighted vertex lists, capacity 3c per cell.
pub struct WeightedTable {
    target_colors: u32,
    cells: Vec<Vec<Vec<TableEntry>>>,
    positions: BTreeMap<VertexId, (u32, u32)>,
    row_weights: Vec<BigRational>,
    row_tier_counts: Vec<BTreeMap<u32, u64>>,
}

impl WeightedTable {
    pub fn new(target_colors: u32) -> WeightedTable {
        let c = target_colors as usize;
        WeightedTable {
            target_colors,
            cells: vec![vec![Vec::new(); 3 * c]; c],
            positions: BTreeMap::new(),
            row_weights: vec![BigRational::zero(); c],
            row_tier_counts: vec![BTreeMap::new(); c],
        }
    }

    pub fn capacity(&self) -> u32 {
        3 * self.target_colors
    }

    pub fn columns(&self) -> u32 {
        3 * self.target_colors
    }

    pub fn entries(&self, row: u32, col: u32) -> &[TableEntry] {
        &self.cells[(row - 1) as usize][col as usize]
    }

    pub fn is_blocked(&self, row: u32, col: u32) -> bool {
        self.entries(row, col).len() as u32 >= self.capacity()
    }

    pub fn is_available(&self, row: u32, col: u32) -> bool {
        !self.is_blocked(row, col)
    }

    pub fn blocked_rows_in(&self, col: u32) -> Vec<u32> {
        (1..=self.target_colors)
            .filter(|&row| self.is_blocked(row, col))
            .collect()
    }

    /// Number of columns strictly right of `k` where `row`'s color is open.
    pub fn available_columns_right_of(&self, row: u32, k: u32) -> u32 {
        ((k + 1)..self.columns())
            .filter(|&j| self.is_available(row, j))
            .count() as u32
    }

    pub fn blocked_cell_count(&self) -> u64 {
        (1..=self.target_colors)
            .flat_map(|row| (0..self.columns()).map(move |col| (row, col)))
            .filter(|&(row, col)| self.is_blocked(row, col))
            .count() as u64
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, (u32, u32)> {
        &self.positions
    }

    fn place(&mut self, v: VertexId, row: u32, col: u32, tier: Option<u32>) -> Result<(), StrategyError> {
        let cell = &mut self.cells[(row - 1) as usize][col as usize];
        if cell.len() as u32 >= 3 * self.target_colors {
            return Err(StrategyError::new(format!(
                "cell ({}, {}) would exceed capacity; the blocking rule should have applied",
                row, col
            )));
        }
        cell.push(TableEntry { vertex: v, tier });
        self.positions.insert(v, (row, col));
        if let Some(t) = tier {
            self.row_weights[(row - 1) as usize] += ratio(3 * self.target_colors as u64, t as u64);
            *self.row_tier_counts[(row - 1) as usize].entry(t).or_insert(0) += 1;
        }
        Ok(())
    }

    pub fn row_weight(&self, row: u32) -> &BigRational {
        &self.row_weights[(row - 1) as usize]
    }

    /// Verifies that at most `3c*t` vertices in the row weigh `>= 3c/t`,
    /// for every tier t.
    fn census_violation(&self, row: u32) -> Option<String> {
        let cap_per_tier = 3 * self.target_colors as u64;
        let mut heavy = 0u64;
        for (&tier, &count) in &self.row_tier_counts[(row - 1) as usize] {
            heavy += count; // tiers iterate ascending: weight >= 3c/tier
            if heavy > cap_per_tier * tier as u64 {
                return Some(format!(
                    "row {}: {} vertices of weight >= 3c/{} (cap {})",
                    row,
                    heavy,
                    tier,
                    cap_per_tier * tier as u64
                ));
            }
        }
        None
    }
}

/// True when some color is available for column `k` but blocked in every
/// column right of it. For the last column the right side is empty, so any
/// open cell there counts; the game always ends before that matters.
pub(crate) fn rule1_broken(table: &WeightedTable, k: u32) -> bool {
    (1..=table.target_colors).any(|row| {
        table.is_available(row, k) && ((k + 1)..table.columns()).all(|j| table.is_blocked(row, j))
    })
}

/// 3c groups for phase `k`: empty at phase 0 or when column `k` has no
/// blocked cell, otherwise the g-th group takes the g-th stored vertex of
/// every blocked cell in the column.
pub(crate) fn split_groups(table: &WeightedTable, k: u32) -> Result<Vec<Vec<VertexId>>, StrategyError> {
    let group_count = 3 * table.target_colors as usize;
    let mut groups = vec![Vec::new(); group_count];
    if k == 0 {
        return Ok(groups);
    }
    for row in table.blocked_rows_in(k) {
        let entries = table.entries(row, k);
        if entries.len() != group_count {
            return Err(StrategyError::new(format!(
                "blocked cell ({}, {}) holds {} vertices, not {}",
                row,
                k,
                entries.len(),
                group_count
            )));
        }
        for (g, entry) in entries.iter().enumerate() {
            groups[g].push(entry.vertex);
        }
    }
    Ok(groups)
}

/// Lexicographically least cell right of column `k` that the fan can fill to
/// capacity: row-major over (row, column).
pub(crate) fn rule2_cell(
    table: &WeightedTable,
    fan_counts: &BTreeMap<u32, u32>,
    k: u32,
) -> Option<(u32, u32)> {
    let cap = table.capacity();
    for row in 1..=table.target_colors {
        let have = *fan_counts.get(&row).unwrap_or(&0);
        if have == 0 {
            continue;
        }
        for col in (k + 1)..table.columns() {
            let m = table.entries(row, col).len() as u32;
            if m < cap && have >= cap - m {
                return Some((row, col));
            }
        }
    }
    None
}

pub(crate) struct InterestingChoice {
    pub column: u32,
    pub tiers: BTreeMap<u32, u32>,
    pub anomalous_vertices: u64,
}

/// Weighted column choice for an interesting fan: each color-i fan vertex
/// weighs 3c/t_i; the column right of `k` with the largest incident weight
/// wins, smallest index on ties. Colors with no open column to the right are
/// counted as anomalies; their vertices carry no weight.
pub(crate) fn rule3_choose(
    table: &WeightedTable,
    fan_counts: &BTreeMap<u32, u32>,
    k: u32,
) -> Option<InterestingChoice> {
    let mut tiers = BTreeMap::new();
    let mut anomalous_vertices = 0u64;
    for (&color, &count) in fan_counts {
        let t = table.available_columns_right_of(color, k);
        if t == 0 {
            anomalous_vertices += count as u64;
        }
        tiers.insert(color, t);
    }
    let mut best: Option<(u32, BigRational)> = None;
    for col in (k + 1)..table.columns() {
        let mut score = BigRational::zero();
        for (&color, &count) in fan_counts {
            let t = tiers[&color];
            if t > 0 && table.is_available(color, col) {
                score += ratio(count as u64 * 3 * table.target_colors as u64, t as u64);
            }
        }
        match &best {
            Some((_, s)) if score <= *s => {}
            _ => best = Some((col, score)),
        }
    }
    best.map(|(column, _)| InterestingChoice {
        column,
        tiers,
        anomalous_vertices,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanDisposition {
    Blocked { row: u32, col: u32 },
    Interesting { col: u32 },
}

#[derive(Clone, Debug)]
pub struct FanRecord {
    pub phase: u32,
    pub group: u32,
    pub presented: u32,
    pub placed: u32,
    /// `None` means the game ended mid-fan (truncated); the ledger ignores it.
    pub disposition: Option<FanDisposition>,
}

enum Stage {
    PhaseStart,
    BeforeGroup,
    Fanning,
    Finished,
}

pub struct OddGirthSevenPresenter {
    target_colors: u32,
    table: WeightedTable,
    phase: u32,
    groups: Vec<Vec<VertexId>>,
    group: u32,
    stage: Stage,
    fan_anchor: Vec<VertexId>,
    fan: Vec<(VertexId, Color)>,
    fans: Vec<FanRecord>,
    phases_started: u64,
    broken_phases: u64,
    interesting_fans: u64,
    rule2_blocks: u64,
    anomalies: u64,
    discarded: u64,
    row_bound: BigRational,
}

impl OddGirthSevenPresenter {
    pub fn new(target_colors: u32) -> OddGirthSevenPresenter {
        OddGirthSevenPresenter {
            target_colors,
            table: WeightedTable::new(target_colors),
            phase: 0,
            groups: Vec::new(),
            group: 0,
            stage: Stage::PhaseStart,
            fan_anchor: Vec::new(),
            fan: Vec::new(),
            fans: Vec::new(),
            phases_started: 0,
            broken_phases: 0,
            interesting_fans: 0,
            rule2_blocks: 0,
            anomalies: 0,
            discarded: 0,
            row_bound: row_weight_bound(target_colors),
        }
    }

    pub fn fans(&self) -> &[FanRecord] {
        &self.fans
    }

    pub fn table(&self) -> &WeightedTable {
        &self.table
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, (u32, u32)> {
        self.table.positions()
    }

    fn dispose_fan(&mut self) -> Result<(), StrategyError> {
        let k = self.phase;
        let cap = self.table.capacity();
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &(_, color) in &self.fan {
            *counts.entry(color.get()).or_insert(0) += 1;
        }
        let record = self.fans.last_mut().expect("open fan record");
        if let Some((row, col)) = rule2_cell(&self.table, &counts, k) {
            let need = cap - self.table.entries(row, col).len() as u32;
            let mut moved = 0u32;
            for i in 0..self.fan.len() {
                let (v, color) = self.fan[i];
                if color.get() == row && moved < need {
                    self.table.place(v, row, col, None)?;
                    moved += 1;
                }
            }
            debug_assert_eq!(moved, need);
            debug_assert!(self.table.is_blocked(row, col));
            record.placed = moved;
            record.disposition = Some(FanDisposition::Blocked { row, col });
            self.rule2_blocks += 1;
            self.discarded += self.fan.len() as u64 - moved as u64;
        } else {
            let choice = rule3_choose(&self.table, &counts, k).ok_or_else(|| {
                StrategyError::new(format!(
                    "phase {}: no column right of the phase column; the game should have ended",
                    k
                ))
            })?;
            self.anomalies += choice.anomalous_vertices;
            let open_rows: Vec<u32> = counts
                .keys()
                .copied()
                .filter(|&color| self.table.is_available(color, choice.column))
                .collect();
            let mut placed_weight = BigRational::zero();
            let mut placed = 0u32;
            for i in 0..self.fan.len() {
                let (v, color) = self.fan[i];
                if open_rows.contains(&color.get()) {
                    let t = choice.tiers[&color.get()];
                    self.table.place(v, color.get(), choice.column, Some(t))?;
                    placed_weight += ratio(3 * self.target_colors as u64, t as u64);
                    placed += 1;
                }
            }
            let fan_total = BigRational::from_integer(BigInt::from(self.fan.len()));
            if placed_weight < fan_total {
                return Err(StrategyError::new(format!(
                    "phase {} fan {}: placed weight {} is below the fan size {} (anomalies: {})",
                    k,
                    self.fans.len() - 1,
                    placed_weight,
                    self.fan.len(),
                    self.anomalies
                )));
            }
            record.placed = placed;
            record.disposition = Some(FanDisposition::Interesting { col: choice.column });
            self.interesting_fans += 1;
            self.discarded += self.fan.len() as u64 - placed as u64;
        }
        for row in 1..=self.target_colors {
            if self.table.row_weight(row) >= &self.row_bound {
                return Err(StrategyError::new(format!(
                    "row {} weight {} reached the ledger bound",
                    row,
                    self.table.row_weight(row)
                )));
            }
            if let Some(violation) = self.table.census_violation(row) {
                return Err(StrategyError::new(format!("weight census: {}", violation)));
            }
        }
        Ok(())
    }
}

impl Presenter for OddGirthSevenPresenter {
    fn name(&self) -> &'static str {
        "odd-girth-7"
    }

    fn next_move(&mut self, _view: &ColoredGraph) -> Result<PresenterStep, StrategyError> {
        loop {
            match self.stage {
                Stage::Finished => return Ok(PresenterStep::Done),
                Stage::PhaseStart => {
                    if self.phase >= 3 * self.target_colors {
                        self.stage = Stage::Finished;
                        continue;
                    }
                    self.groups = split_groups(&self.table, self.phase)?;
                    self.group = 0;
                    self.phases_started += 1;
                    self.stage = Stage::BeforeGroup;
                }
                Stage::BeforeGroup => {
                    if self.group >= 3 * self.target_colors {
                        self.phase += 1;
                        self.stage = Stage::PhaseStart;
                        continue;
                    }
                    if rule1_broken(&self.table, self.phase) {
                        self.broken_phases += 1;
                        if self.broken_phases > self.target_colors as u64 {
                            return Err(StrategyError::new(format!(
                                "{} broken phases exceeds the color count {}",
                                self.broken_phases, self.target_colors
                            )));
                        }
                        self.phase += 1;
                        self.stage = Stage::PhaseStart;
                        continue;
                    }
                    let mut anchor = self.groups[self.group as usize].clone();
                    for &v in &anchor {
                        // group members all come from column `phase`
                        let (_, col) = self.table.positions()[&v];
                        if col != self.phase {
                            return Err(StrategyError::new(format!(
                                "group member {} sits in column {}, not {}",
                                v, col, self.phase
                            )));
                        }
                    }
                    anchor.sort();
                    self.fan_anchor = anchor;
                    self.fan.clear();
                    self.fans.push(FanRecord {
                        phase: self.phase,
                        group: self.group,
                        presented: 0,
                        placed: 0,
                        disposition: None,
                    });
                    self.stage = Stage::Fanning;
                }
                Stage::Fanning => {
                    debug_assert!((self.fan.len() as u32) < fan_size(self.target_colors));
                    let annotation = format!(
                        "phase={} group={} fan={}",
                        self.phase,
                        self.group,
                        self.fans.len() - 1
                    );
                    return Ok(PresenterStep::Present(Move::new(
                        self.fan_anchor.clone(),
                        annotation,
                    )));
                }
            }
        }
    }

    fn observe(&mut self, vertex: VertexId, color: Color) -> Result<(), StrategyError> {
        if !matches!(self.stage, Stage::Fanning) {
            return Err(StrategyError::new("unexpected color observation"));
        }
        if color.get() > self.target_colors {
            return Err(StrategyError::new(format!(
                "color {} exceeds the {}-row table",
                color, self.target_colors
            )));
        }
        self.fan.push((vertex, color));
        let record = self.fans.last_mut().expect("open fan record");
        record.presented += 1;
        if self.fan.len() as u32 == fan_size(self.target_colors) {
            self.dispose_fan()?;
            self.group += 1;
            self.stage = Stage::BeforeGroup;
        }
        Ok(())
    }

    fn stats(&self) -> BTreeMap<String, u64> {
        let truncated = self
            .fans
            .iter()
            .filter(|f| f.disposition.is_none())
            .count() as u64;
        let mut stats = BTreeMap::new();
        stats.insert("phases".to_string(), self.phases_started);
        stats.insert("broken_phases".to_string(), self.broken_phases);
        stats.insert("interesting_fans".to_string(), self.interesting_fans);
        stats.insert("blocked_cells".to_string(), self.table.blocked_cell_count());
        stats.insert("rule2_blocks".to_string(), self.rule2_blocks);
        stats.insert("anomalies".to_string(), self.anomalies);
        stats.insert("fans".to_string(), self.fans.len() as u64);
        stats.insert("truncated_fans".to_string(), truncated);
        stats.insert("discarded".to_string(), self.discarded);
        stats
    }
}
