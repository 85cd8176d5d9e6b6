//! Adversary strategies and their terminal size guarantees.

pub mod bipartite;
pub mod odd_girth_seven;
pub mod triangle_free;

use std::str::FromStr;

use crate::engine::Presenter;
use crate::verify::GraphClass;

pub use bipartite::BipartitePresenter;
pub use odd_girth_seven::OddGirthSevenPresenter;
pub use triangle_free::TriangleFreePresenter;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresenterKind {
    Bipartite,
    TriangleFree,
    OddGirthSeven,
}

impl PresenterKind {
    pub const ALL: [PresenterKind; 3] = [
        PresenterKind::Bipartite,
        PresenterKind::TriangleFree,
        PresenterKind::OddGirthSeven,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresenterKind::Bipartite => "bipartite",
            PresenterKind::TriangleFree => "triangle-free",
            PresenterKind::OddGirthSeven => "odd-girth-7",
        }
    }

    /// Graph class the strategy promises to stay inside.
    pub fn graph_class(self) -> GraphClass {
        match self {
            PresenterKind::Bipartite => GraphClass::Bipartite,
            PresenterKind::TriangleFree => GraphClass::OddGirthAtLeast5,
            PresenterKind::OddGirthSeven => GraphClass::OddGirthAtLeast7,
        }
    }

    /// Guaranteed worst-case vertex count for reaching `c` colors, as a
    /// display value. Use [`PresenterKind::bound_holds`] for exact checks.
    pub fn bound_value(self, target_colors: u32) -> f64 {
        let c = target_colors;
        match self {
            PresenterKind::Bipartite => {
                (8.0 + 7.0 * std::f64::consts::SQRT_2) * 2f64.powf(c as f64 / 2.0)
            }
            PresenterKind::TriangleFree => (c as f64) * (c as f64),
            PresenterKind::OddGirthSeven => odd_girth_seven::vertex_bound(c) as f64,
        }
    }

    /// Exact comparison of a final vertex count against the strategy's bound.
    pub fn bound_holds(self, target_colors: u32, vertices: u64) -> bool {
        match self {
            PresenterKind::Bipartite => bipartite::terminal_bound_holds(vertices, target_colors),
            PresenterKind::TriangleFree => vertices <= target_colors as u64 * target_colors as u64,
            PresenterKind::OddGirthSeven => vertices <= odd_girth_seven::vertex_bound(target_colors),
        }
    }

    /// Safety-net round cap: ten times the strategy's proven bound.
    pub fn default_round_cap(self, target_colors: u32) -> u64 {
        (10.0 * self.bound_value(target_colors)).ceil() as u64
    }
}

impl FromStr for PresenterKind {
    type Err = String;

    fn from_str(s: &str) -> Result<PresenterKind, String> {
        match s {
            "bipartite" => Ok(PresenterKind::Bipartite),
            "triangle-free" => Ok(PresenterKind::TriangleFree),
            "odd-girth-7" => Ok(PresenterKind::OddGirthSeven),
            other => Err(format!(
                "unknown presenter `{}` (expected bipartite|triangle-free|odd-girth-7)",
                other
            )),
        }
    }
}

pub fn build_presenter(kind: PresenterKind, target_colors: u32) -> Box<dyn Presenter> {
    match kind {
        PresenterKind::Bipartite => Box::new(BipartitePresenter::new(target_colors)),
        PresenterKind::TriangleFree => Box::new(TriangleFreePresenter::new(target_colors)),
        PresenterKind::OddGirthSeven => Box::new(OddGirthSevenPresenter::new(target_colors)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for kind in PresenterKind::ALL {
            assert_eq!(kind.name().parse::<PresenterKind>().unwrap(), kind);
        }
        assert!("nope".parse::<PresenterKind>().is_err());
    }

    #[test]
    fn bounds_are_sane() {
        assert_eq!(PresenterKind::TriangleFree.bound_value(3), 9.0);
        assert!(PresenterKind::Bipartite.bound_value(4) > 71.0);
        assert!(PresenterKind::Bipartite.bound_holds(4, 71));
        assert!(!PresenterKind::Bipartite.bound_holds(4, 72));
        assert!(PresenterKind::OddGirthSeven.bound_holds(2, 648));
        assert!(!PresenterKind::OddGirthSeven.bound_holds(2, 649));
    }
}
