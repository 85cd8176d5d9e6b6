//! Adversary that forces many colors on bipartite graphs.
//!
//! The game is a sequence of phases. Each phase either introduces a fresh
//! single-edge component or merges existing components by adding two adjacent
//! vertices `a` (joined to the left sides of the operands) and `b` (joined to
//! the right sides and to `a`). Per component the strategy tracks the two
//! sides, the set of two-sided colors (colors present on both sides), and two
//! selected vertices in opposite sides carrying one-sided colors.
//!
//! Rules are tried in a fixed order each phase: merge two components whose
//! two-sided sets differ in at least two colors; merge two whose sets differ
//! in exactly one color and whose selected colors intersect; merge a cycle of
//! components whose selected color pairs chain into a loop; otherwise
//! introduce a new edge. Every merge raises the level (the number of
//! two-sided colors) by at least two, which keeps component growth
//! exponential in the level and yields the size bound checked after every
//! phase.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::engine::{Move, Presenter, PresenterStep, StrategyError};
use crate::graph::{Color, ColoredGraph, VertexId};

#[derive(Clone, Debug)]
pub(crate) struct Component {
    pub(crate) left: BTreeSet<VertexId>,
    pub(crate) right: BTreeSet<VertexId>,
    pub(crate) two_sided: BTreeSet<Color>,
    pub(crate) selected: [VertexId; 2],
    pub(crate) created_phase: u64,
}

impl Component {
    pub(crate) fn level(&self) -> usize {
        self.two_sided.len()
    }

    pub(crate) fn size(&self) -> usize {
        self.left.len() + self.right.len()
    }

    fn side_colors(
        members: &BTreeSet<VertexId>,
        colors: &BTreeMap<VertexId, Color>,
    ) -> BTreeSet<Color> {
        members.iter().filter_map(|v| colors.get(v).copied()).collect()
    }

    /// Splits the component's colors into (one-sided, two-sided).
    pub(crate) fn classify(
        &self,
        colors: &BTreeMap<VertexId, Color>,
    ) -> (BTreeSet<Color>, BTreeSet<Color>) {
        let lc = Component::side_colors(&self.left, colors);
        let rc = Component::side_colors(&self.right, colors);
        let two: BTreeSet<Color> = lc.intersection(&rc).copied().collect();
        let one: BTreeSet<Color> = lc
            .symmetric_difference(&rc)
            .copied()
            .collect();
        (one, two)
    }

    /// Colors of the two selected vertices, ascending. They are always
    /// distinct: the pair is adjacent at creation time.
    fn selected_colors(&self, colors: &BTreeMap<VertexId, Color>) -> [Color; 2] {
        let a = colors[&self.selected[0]];
        let b = colors[&self.selected[1]];
        if a < b {
            [a, b]
        } else {
            [b, a]
        }
    }

    /// The selected vertex carrying `color`.
    fn selected_vertex_with(&self, color: Color, colors: &BTreeMap<VertexId, Color>) -> VertexId {
        *self
            .selected
            .iter()
            .find(|v| colors[v] == color)
            .expect("selected vertex with the requested color")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum RuleChoice {
    /// Operand pair indices, creation order.
    MergeDifferent(usize, usize),
    /// Operand pair plus the shared selected color that must become two-sided.
    MergeSimilar(usize, usize, Color),
    /// Components whose selected color pairs close a cycle, with the color
    /// sequence: operand `i` owns the pair `{colors[i], colors[i+1 mod k]}`.
    MergeEqual {
        operands: Vec<usize>,
        cycle_colors: Vec<Color>,
    },
    Introduce,
}

#[derive(Default)]
struct ColorLinkage {
    parent: BTreeMap<u32, u32>,
    adj: BTreeMap<u32, Vec<(u32, usize)>>,
    edge_operands: Vec<usize>,
}

impl ColorLinkage {
    fn find(&mut self, x: u32) -> u32 {
        let p = *self.parent.get(&x).unwrap_or(&x);
        if p == x {
            x
        } else {
            let root = self.find(p);
            self.parent.insert(x, root);
            root
        }
    }

    fn connected(&mut self, x: u32, y: u32) -> bool {
        self.parent.contains_key(&x)
            && self.parent.contains_key(&y)
            && self.find(x) == self.find(y)
    }

    fn add_edge(&mut self, operand: usize, x: u32, y: u32) {
        self.parent.entry(x).or_insert(x);
        self.parent.entry(y).or_insert(y);
        let rx = self.find(x);
        let ry = self.find(y);
        self.parent.insert(rx, ry);
        let edge = self.edge_operands.len();
        self.edge_operands.push(operand);
        self.adj.entry(x).or_default().push((y, edge));
        self.adj.entry(y).or_default().push((x, edge));
    }

    /// Shortest path from `x` to `y` over the recorded edges, earliest edges
    /// first on ties. Returns the operand list and the color sequence
    /// starting at `x` and ending at `y`.
    fn path(&self, x: u32, y: u32) -> (Vec<usize>, Vec<u32>) {
        let mut pred: BTreeMap<u32, (u32, usize)> = BTreeMap::new();
        let mut queue = VecDeque::new();
        queue.push_back(x);
        let mut seen = BTreeSet::new();
        seen.insert(x);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(neighbors) = self.adj.get(&u) {
                for &(w, edge) in neighbors {
                    if seen.insert(w) {
                        pred.insert(w, (u, edge));
                        if w == y {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut colors = vec![y];
        let mut operands = Vec::new();
        let mut at = y;
        while at != x {
            let (prev, edge) = pred[&at];
            operands.push(self.edge_operands[edge]);
            colors.push(prev);
            at = prev;
        }
        operands.reverse();
        colors.reverse();
        (operands, colors)
    }
}

/// First applicable rule over `comps` (slice order = creation order),
/// deterministic operand choice: first qualifying pair in creation order, or
/// the first component whose selected pair closes a color cycle within its
/// level/two-sided family.
pub(crate) fn select_rule(
    comps: &[&Component],
    colors: &BTreeMap<VertexId, Color>,
) -> RuleChoice {
    for i in 0..comps.len() {
        for j in (i + 1)..comps.len() {
            if comps[i].level() == comps[j].level()
                && comps[i].two_sided.difference(&comps[j].two_sided).count() >= 2
            {
                return RuleChoice::MergeDifferent(i, j);
            }
        }
    }
    for i in 0..comps.len() {
        for j in (i + 1)..comps.len() {
            if comps[i].level() != comps[j].level()
                || comps[i].two_sided.difference(&comps[j].two_sided).count() != 1
            {
                continue;
            }
            let si = comps[i].selected_colors(colors);
            let sj = comps[j].selected_colors(colors);
            let shared: Vec<Color> = si.iter().filter(|c| sj.contains(c)).copied().collect();
            if let Some(&color) = shared.first() {
                return RuleChoice::MergeSimilar(i, j, color);
            }
        }
    }
    let mut families: BTreeMap<(usize, Vec<u32>), ColorLinkage> = BTreeMap::new();
    for (idx, comp) in comps.iter().enumerate() {
        let key = (
            comp.level(),
            comp.two_sided.iter().map(|c| c.get()).collect::<Vec<u32>>(),
        );
        let family = families.entry(key).or_default();
        let [x, y] = comp.selected_colors(colors);
        let (x, y) = (x.get(), y.get());
        if family.connected(x, y) {
            let (mut operands, path_colors) = family.path(x, y);
            operands.push(idx);
            let cycle_colors = path_colors.into_iter().map(Color::new).collect();
            return RuleChoice::MergeEqual {
                operands,
                cycle_colors,
            };
        }
        family.add_edge(idx, x, y);
    }
    RuleChoice::Introduce
}

#[derive(Clone, Debug)]
struct PhasePlan {
    annotation: String,
    rule_tag: &'static str,
    /// Indices into the presenter's component list, removal targets.
    operand_idxs: Vec<usize>,
    left_union: BTreeSet<VertexId>,
    right_union: BTreeSet<VertexId>,
    min_level: usize,
}

#[derive(Clone, Debug)]
enum Stage {
    Ready,
    WaitingFirst(PhasePlan),
    EmitSecond { plan: PhasePlan, first: VertexId },
    WaitingSecond { plan: PhasePlan, first: VertexId },
}

pub struct BipartitePresenter {
    target_colors: u32,
    components: Vec<Component>,
    colors: BTreeMap<VertexId, Color>,
    colors_seen: BTreeSet<Color>,
    phase: u64,
    stage: Stage,
    rule_counts: BTreeMap<&'static str, u64>,
    max_level: u64,
}

impl BipartitePresenter {
    pub fn new(target_colors: u32) -> BipartitePresenter {
        BipartitePresenter {
            target_colors,
            components: Vec::new(),
            colors: BTreeMap::new(),
            colors_seen: BTreeSet::new(),
            phase: 0,
            stage: Stage::Ready,
            rule_counts: BTreeMap::new(),
            max_level: 0,
        }
    }

    fn plan_phase(&mut self) -> PhasePlan {
        self.phase += 1;
        let refs: Vec<&Component> = self.components.iter().collect();
        let rule = select_rule(&refs, &self.colors);
        let (rule_tag, k, operand_flips): (&'static str, usize, Vec<(usize, bool)>) = match rule {
            RuleChoice::Introduce => ("introduce", 0, Vec::new()),
            RuleChoice::MergeDifferent(i, j) => ("merge-diff", 2, vec![(i, false), (j, false)]),
            RuleChoice::MergeSimilar(i, j, shared) => {
                // the shared color goes left in the first operand and right
                // in the second, so it becomes two-sided after the merge
                let vi = self.components[i].selected_vertex_with(shared, &self.colors);
                let vj = self.components[j].selected_vertex_with(shared, &self.colors);
                let flip_i = !self.components[i].left.contains(&vi);
                let flip_j = !self.components[j].right.contains(&vj);
                ("merge-sim", 2, vec![(i, flip_i), (j, flip_j)])
            }
            RuleChoice::MergeEqual {
                operands,
                cycle_colors,
            } => {
                // orient operand i so cycle color i sits on its left side;
                // the next cycle color then sits on its right side
                let flips = operands
                    .iter()
                    .zip(cycle_colors.iter())
                    .map(|(&idx, &alpha)| {
                        let v = self.components[idx].selected_vertex_with(alpha, &self.colors);
                        (idx, !self.components[idx].left.contains(&v))
                    })
                    .collect::<Vec<_>>();
                ("merge-eq", operands.len(), flips)
            }
        };

        let mut left_union = BTreeSet::new();
        let mut right_union = BTreeSet::new();
        let mut min_level = 0;
        for &(idx, flip) in &operand_flips {
            let comp = &self.components[idx];
            let (l, r) = if flip {
                (&comp.right, &comp.left)
            } else {
                (&comp.left, &comp.right)
            };
            left_union.extend(l.iter().copied());
            right_union.extend(r.iter().copied());
            min_level = comp.level() + k; // operands share one level
        }
        *self.rule_counts.entry(rule_tag).or_insert(0) += 1;
        PhasePlan {
            annotation: format!("phase={} rule={} k={}", self.phase, rule_tag, k),
            rule_tag,
            operand_idxs: operand_flips.iter().map(|&(i, _)| i).collect(),
            left_union,
            right_union,
            min_level,
        }
    }

    fn finalize_phase(
        &mut self,
        plan: PhasePlan,
        first: VertexId,
        second: VertexId,
    ) -> Result<(), StrategyError> {
        // `first` saw all left sides, so it joins the right side; `second`
        // saw all right sides plus `first`, so it joins the left side
        let mut left = plan.left_union.clone();
        let mut right = plan.right_union.clone();
        right.insert(first);
        left.insert(second);

        let operand_two_sided: Vec<BTreeSet<Color>> = plan
            .operand_idxs
            .iter()
            .map(|&i| self.components[i].two_sided.clone())
            .collect();
        let mut idxs = plan.operand_idxs.clone();
        idxs.sort_unstable_by(|a, b| b.cmp(a));
        for idx in idxs {
            self.components.remove(idx);
        }

        let mut comp = Component {
            left,
            right,
            two_sided: BTreeSet::new(),
            selected: [first, second],
            created_phase: self.phase,
        };
        let (_, two_sided) = comp.classify(&self.colors);
        comp.two_sided = two_sided;

        if comp.level() < plan.min_level {
            return Err(StrategyError::new(format!(
                "phase {}: {} produced level {} < guaranteed {}",
                self.phase,
                plan.rule_tag,
                comp.level(),
                plan.min_level
            )));
        }
        for ts in &operand_two_sided {
            if !ts.is_subset(&comp.two_sided) {
                return Err(StrategyError::new(format!(
                    "phase {}: an operand two-sided color vanished in the merge",
                    self.phase
                )));
            }
        }
        for v in comp.selected {
            let color = self.colors[&v];
            if comp.two_sided.contains(&color) {
                return Err(StrategyError::new(format!(
                    "phase {}: selected vertex {} color {} is two-sided",
                    self.phase, v, color
                )));
            }
        }
        self.max_level = self.max_level.max(comp.level() as u64);
        self.components.push(comp);
        // rule selection keys off list position, which must track creation
        debug_assert!(self
            .components
            .windows(2)
            .all(|w| w[0].created_phase < w[1].created_phase));
        self.check_phase_invariants()
    }

    /// Size bound, no-merge-left-over, and level census checks that must hold
    /// after every completed phase.
    fn check_phase_invariants(&self) -> Result<(), StrategyError> {
        for comp in &self.components {
            if !size_bound_holds(comp.size() as u64, comp.level() as u32) {
                return Err(StrategyError::new(format!(
                    "phase {}: component of size {} exceeds bound for level {}",
                    self.phase,
                    comp.size(),
                    comp.level()
                )));
            }
        }
        if self.components.len() > 1 {
            let older: Vec<&Component> = self.components[..self.components.len() - 1]
                .iter()
                .collect();
            let rule = select_rule(&older, &self.colors);
            if rule != RuleChoice::Introduce {
                return Err(StrategyError::new(format!(
                    "phase {}: a merge rule still applies without the newest component: {:?}",
                    self.phase, rule
                )));
            }
        }
        if (self.colors_seen.len() as u32) < self.target_colors {
            let mut census: BTreeMap<usize, i64> = BTreeMap::new();
            for comp in self.components.iter().take(self.components.len().saturating_sub(1)) {
                *census.entry(comp.level()).or_insert(0) += 1;
            }
            for (&level, &count) in &census {
                let cap = self.target_colors as i64 - level as i64 - 2;
                if count > cap {
                    return Err(StrategyError::new(format!(
                        "phase {}: {} components at level {} exceeds census cap {}",
                        self.phase, count, level, cap
                    )));
                }
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn components(&self) -> &[Component] {
        &self.components
    }
}

/// Exact integer form of `size <= 2^(level/2 + 2) - 2`, compared as
/// `(size + 2)^2 <= 2^(level + 4)` to avoid the irrational intermediate.
pub fn size_bound_holds(size: u64, level: u32) -> bool {
    let shift = level + 4;
    if shift >= 128 {
        return true;
    }
    let lhs = (size as u128 + 2).pow(2);
    lhs <= (1u128 << shift)
}

/// Exact integer form of the terminal bound `n <= (8 + 7*sqrt(2)) * 2^(c/2)`.
pub fn terminal_bound_holds(n: u64, target_colors: u32) -> bool {
    let t = target_colors / 2;
    if t >= 40 {
        return true; // 2^40-scale bound dwarfs any machine-checkable game
    }
    let pow = 1u128 << t; // 2^floor(c/2)
    let (base, radicand_factor) = if target_colors % 2 == 0 {
        // n <= 8*2^t + 7*sqrt(2)*2^t
        (8u128 * pow, 98u128)
    } else {
        // n <= 14*2^t + 8*sqrt(2)*2^t
        (14u128 * pow, 128u128)
    };
    let n = n as u128;
    if n <= base {
        return true;
    }
    let d = n - base;
    d * d <= radicand_factor * pow * pow
}

impl Presenter for BipartitePresenter {
    fn name(&self) -> &'static str {
        "bipartite"
    }

    fn next_move(&mut self, _view: &ColoredGraph) -> Result<PresenterStep, StrategyError> {
        let stage = std::mem::replace(&mut self.stage, Stage::Ready);
        match stage {
            Stage::Ready => {
                let plan = self.plan_phase();
                let neighbors: Vec<VertexId> = plan.left_union.iter().copied().collect();
                let annotation = plan.annotation.clone();
                self.stage = Stage::WaitingFirst(plan);
                Ok(PresenterStep::Present(Move::new(neighbors, annotation)))
            }
            Stage::EmitSecond { plan, first } => {
                let mut neighbors: Vec<VertexId> = plan.right_union.iter().copied().collect();
                neighbors.push(first);
                let annotation = plan.annotation.clone();
                self.stage = Stage::WaitingSecond { plan, first };
                Ok(PresenterStep::Present(Move::new(neighbors, annotation)))
            }
            Stage::WaitingFirst(_) | Stage::WaitingSecond { .. } => Err(StrategyError::new(
                "next_move called before the previous vertex was colored",
            )),
        }
    }

    fn observe(&mut self, vertex: VertexId, color: Color) -> Result<(), StrategyError> {
        self.colors.insert(vertex, color);
        self.colors_seen.insert(color);
        let stage = std::mem::replace(&mut self.stage, Stage::Ready);
        match stage {
            Stage::WaitingFirst(plan) => {
                self.stage = Stage::EmitSecond {
                    plan,
                    first: vertex,
                };
                Ok(())
            }
            Stage::WaitingSecond { plan, first } => {
                self.stage = Stage::Ready;
                self.finalize_phase(plan, first, vertex)
            }
            _ => Err(StrategyError::new("unexpected color observation")),
        }
    }

    fn stats(&self) -> BTreeMap<String, u64> {
        let mut stats = BTreeMap::new();
        stats.insert("phases".to_string(), self.phase);
        stats.insert("components".to_string(), self.components.len() as u64);
        stats.insert("max_level".to_string(), self.max_level);
        for (tag, count) in &self.rule_counts {
            stats.insert(format!("phases_{}", tag), *count);
        }
        stats
    }
}
