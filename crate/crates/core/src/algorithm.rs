//! On-line coloring opponents.
//!
//! Every strategy is a pure function of the visible game history (plus the
//! declared seed for the random opponent), so replays are reproducible.

use std::collections::BTreeSet;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{Algorithm, StrategyError};
use crate::graph::{Color, ColoredGraph, GraphError, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgorithmKind {
    FirstFit,
    Cbip,
    RandomAdmissible,
    FreshColor,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 4] = [
        AlgorithmKind::FirstFit,
        AlgorithmKind::Cbip,
        AlgorithmKind::RandomAdmissible,
        AlgorithmKind::FreshColor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::FirstFit => "first-fit",
            AlgorithmKind::Cbip => "cbip",
            AlgorithmKind::RandomAdmissible => "random",
            AlgorithmKind::FreshColor => "fresh",
        }
    }
}

impl FromStr for AlgorithmKind {
    type Err = String;

    fn from_str(s: &str) -> Result<AlgorithmKind, String> {
        match s {
            "first-fit" => Ok(AlgorithmKind::FirstFit),
            "cbip" => Ok(AlgorithmKind::Cbip),
            "random" => Ok(AlgorithmKind::RandomAdmissible),
            "fresh" => Ok(AlgorithmKind::FreshColor),
            other => Err(format!(
                "unknown algorithm `{}` (expected first-fit|cbip|random|fresh)",
                other
            )),
        }
    }
}

/// Builds a fresh strategy instance for one game. The seed only matters for
/// the random opponent.
pub fn build_algorithm(kind: AlgorithmKind, seed: u64) -> Box<dyn Algorithm> {
    match kind {
        AlgorithmKind::FirstFit => Box::new(FirstFit),
        AlgorithmKind::Cbip => Box::new(Cbip),
        AlgorithmKind::RandomAdmissible => Box::new(RandomAdmissible::new(seed)),
        AlgorithmKind::FreshColor => Box::new(FreshColor),
    }
}

fn neighbor_colors(view: &ColoredGraph, vertex: VertexId) -> BTreeSet<u32> {
    view.neighbors(vertex)
        .iter()
        .filter_map(|&u| view.color(u))
        .map(Color::get)
        .collect()
}

/// Smallest positive integer not used on any neighbor.
pub fn first_fit_color(view: &ColoredGraph, vertex: VertexId) -> Color {
    let used = neighbor_colors(view, vertex);
    let mut candidate = 1u32;
    while used.contains(&candidate) {
        candidate += 1;
    }
    Color::new(candidate)
}

/// Colors each incoming vertex with the least admissible natural number.
pub struct FirstFit;

impl Algorithm for FirstFit {
    fn name(&self) -> &'static str {
        AlgorithmKind::FirstFit.name()
    }
    fn choose_color(
        &mut self,
        view: &ColoredGraph,
        vertex: VertexId,
    ) -> Result<Color, StrategyError> {
        Ok(first_fit_color(view, vertex))
    }
}

/// The component-bipartition rule: compute the new vertex's connected
/// component and its two sides, then use the least color absent from the
/// opposite side. Fails on components that have no bipartition.
pub fn cbip_color(view: &ColoredGraph, vertex: VertexId) -> Result<Color, GraphError> {
    let (_, opposite) = view.bipartition_of_component(vertex)?;
    let used: BTreeSet<u32> = opposite
        .iter()
        .filter_map(|&u| view.color(u))
        .map(Color::get)
        .collect();
    let mut candidate = 1u32;
    while used.contains(&candidate) {
        candidate += 1;
    }
    Ok(Color::new(candidate))
}

/// Component-bipartition strategy. On the rare non-bipartite component it
/// falls back to the least admissible color so games on graphs with odd
/// cycles still run to completion.
pub struct Cbip;

impl Algorithm for Cbip {
    fn name(&self) -> &'static str {
        AlgorithmKind::Cbip.name()
    }
    fn choose_color(
        &mut self,
        view: &ColoredGraph,
        vertex: VertexId,
    ) -> Result<Color, StrategyError> {
        match cbip_color(view, vertex) {
            Ok(c) => Ok(c),
            Err(GraphError::OddCycle(_)) => Ok(first_fit_color(view, vertex)),
            Err(e) => Err(StrategyError::new(format!("cbip: {}", e))),
        }
    }
}

/// Uniform choice among `{1..max_used+1}` minus the neighbor colors, driven
/// by a seeded ChaCha8 stream.
pub struct RandomAdmissible {
    rng: ChaCha8Rng,
}

impl RandomAdmissible {
    pub fn new(seed: u64) -> RandomAdmissible {
        RandomAdmissible {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Algorithm for RandomAdmissible {
    fn name(&self) -> &'static str {
        AlgorithmKind::RandomAdmissible.name()
    }
    fn choose_color(
        &mut self,
        view: &ColoredGraph,
        vertex: VertexId,
    ) -> Result<Color, StrategyError> {
        let max_used = view.max_color().map_or(0, Color::get);
        let used = neighbor_colors(view, vertex);
        let candidates: Vec<u32> = (1..=max_used + 1).filter(|c| !used.contains(c)).collect();
        // max_used+1 is never on a neighbor, so the pool is nonempty
        let pick = candidates[self.rng.gen_range(0..candidates.len())];
        Ok(Color::new(pick))
    }
}

/// Worst-case baseline: a brand-new color every round.
pub struct FreshColor;

impl Algorithm for FreshColor {
    fn name(&self) -> &'static str {
        AlgorithmKind::FreshColor.name()
    }
    fn choose_color(
        &mut self,
        view: &ColoredGraph,
        _vertex: VertexId,
    ) -> Result<Color, StrategyError> {
        Ok(Color::new(view.max_color().map_or(1, |c| c.get() + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colored_star(colors: &[u32]) -> (ColoredGraph, VertexId) {
        // hub arrives last, adjacent to all pre-colored leaves
        let mut g = ColoredGraph::new();
        let mut leaves = Vec::new();
        for &c in colors {
            let v = g.add_vertex(&[]).unwrap();
            g.assign_color(v, Color::new(c)).unwrap();
            leaves.push(v);
        }
        let hub = g.add_vertex(&leaves).unwrap();
        (g, hub)
    }

    #[test]
    fn first_fit_on_isolated_vertex() {
        let mut g = ColoredGraph::new();
        let v = g.add_vertex(&[]).unwrap();
        assert_eq!(first_fit_color(&g, v), Color::new(1));
    }

    #[test]
    fn first_fit_takes_smallest_gap() {
        let (g, hub) = colored_star(&[1, 2]);
        assert_eq!(first_fit_color(&g, hub), Color::new(3));
        let (g, hub) = colored_star(&[2, 3]);
        assert_eq!(first_fit_color(&g, hub), Color::new(1));
    }

    #[test]
    fn cbip_on_isolated_vertex() {
        let mut g = ColoredGraph::new();
        let v = g.add_vertex(&[]).unwrap();
        assert_eq!(cbip_color(&g, v).unwrap(), Color::new(1));
    }

    #[test]
    fn cbip_joining_two_edges_across_their_one_colored_ends() {
        // two single-edge components colored (1,2); the new vertex attaches
        // to both 1-colored endpoints, so the opposite side carries only {1}
        let mut g = ColoredGraph::new();
        let a1 = g.add_vertex(&[]).unwrap();
        let b1 = g.add_vertex(&[a1]).unwrap();
        let a2 = g.add_vertex(&[]).unwrap();
        let b2 = g.add_vertex(&[a2]).unwrap();
        g.assign_color(a1, Color::new(1)).unwrap();
        g.assign_color(b1, Color::new(2)).unwrap();
        g.assign_color(a2, Color::new(1)).unwrap();
        g.assign_color(b2, Color::new(2)).unwrap();
        let v = g.add_vertex(&[a1, a2]).unwrap();
        assert_eq!(cbip_color(&g, v).unwrap(), Color::new(2));
    }

    #[test]
    fn cbip_sees_both_colors_on_opposite_side() {
        // edges (1,2) and (3,4) colored (1,2) and (1,2); the new vertex is
        // adjacent to the 1-colored end of the first and the 2-colored end
        // of the second, putting colors {1,2} on its opposite side
        let mut g = ColoredGraph::new();
        let v1 = g.add_vertex(&[]).unwrap();
        let v2 = g.add_vertex(&[v1]).unwrap();
        let v3 = g.add_vertex(&[]).unwrap();
        let v4 = g.add_vertex(&[v3]).unwrap();
        g.assign_color(v1, Color::new(1)).unwrap();
        g.assign_color(v2, Color::new(2)).unwrap();
        g.assign_color(v3, Color::new(1)).unwrap();
        g.assign_color(v4, Color::new(2)).unwrap();
        let v = g.add_vertex(&[v1, v4]).unwrap();
        assert_eq!(cbip_color(&g, v).unwrap(), Color::new(3));
    }

    #[test]
    fn cbip_rejects_odd_component() {
        let mut g = ColoredGraph::new();
        let v1 = g.add_vertex(&[]).unwrap();
        let v2 = g.add_vertex(&[v1]).unwrap();
        let v3 = g.add_vertex(&[v1, v2]).unwrap();
        g.assign_color(v1, Color::new(1)).unwrap();
        g.assign_color(v2, Color::new(2)).unwrap();
        g.assign_color(v3, Color::new(3)).unwrap();
        let v = g.add_vertex(&[v1]).unwrap();
        assert!(matches!(cbip_color(&g, v), Err(GraphError::OddCycle(_))));
    }

    #[test]
    fn random_is_deterministic_per_seed() {
        let (g, hub) = colored_star(&[1, 3]);
        let mut a = RandomAdmissible::new(42);
        let mut b = RandomAdmissible::new(42);
        assert_eq!(
            a.choose_color(&g, hub).unwrap(),
            b.choose_color(&g, hub).unwrap()
        );
    }

    #[test]
    fn random_first_vertex_is_forced() {
        let mut g = ColoredGraph::new();
        let v = g.add_vertex(&[]).unwrap();
        let mut a = RandomAdmissible::new(7);
        assert_eq!(a.choose_color(&g, v).unwrap(), Color::new(1));
    }

    #[test]
    fn random_is_forced_when_all_small_colors_blocked() {
        let (g, hub) = colored_star(&[1, 2, 3]);
        let mut a = RandomAdmissible::new(5);
        assert_eq!(a.choose_color(&g, hub).unwrap(), Color::new(4));
    }

    #[test]
    fn fresh_color_spends_linearly() {
        let mut g = ColoredGraph::new();
        let mut a = FreshColor;
        for round in 1..=5u32 {
            let v = g.add_vertex(&[]).unwrap();
            let c = a.choose_color(&g, v).unwrap();
            assert_eq!(c, Color::new(round));
            g.assign_color(v, c).unwrap();
        }
    }
}
