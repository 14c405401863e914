//! Cuts and the four induced-matching cut values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexSet};
use crate::matching::{self, SideEdges};

/// A bipartition `(A, B)` of the vertex set of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cut {
    side_a: VertexSet,
    side_b: VertexSet,
}

impl Cut {
    pub fn new<S: AsRef<str>>(g: &Graph, side_a: &[S], side_b: &[S]) -> Result<Self> {
        let a = g.set_of(side_a)?;
        let b = g.set_of(side_b)?;
        Self::from_sets(g, a, b)
    }

    pub fn from_sets(g: &Graph, side_a: VertexSet, side_b: VertexSet) -> Result<Self> {
        let cut = Self { side_a, side_b };
        cut.validate(g)?;
        Ok(cut)
    }

    /// The cut `(X, V \ X)`.
    pub fn from_side(g: &Graph, side_a: VertexSet) -> Result<Self> {
        if side_a & !g.all() != 0 {
            return Err(Error::InvalidCut("side contains unknown vertices".into()));
        }
        Ok(Self {
            side_a,
            side_b: g.all() & !side_a,
        })
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.side_a & self.side_b != 0 {
            return Err(Error::InvalidCut(format!(
                "sides overlap on {:?}",
                g.names_of(self.side_a & self.side_b)
            )));
        }
        let all = g.all();
        if (self.side_a | self.side_b) & !all != 0 {
            return Err(Error::InvalidCut("side contains unknown vertices".into()));
        }
        if self.side_a | self.side_b != all {
            return Err(Error::InvalidCut(format!(
                "vertices missing from both sides: {:?}",
                g.names_of(all & !(self.side_a | self.side_b))
            )));
        }
        Ok(())
    }

    pub fn side_a(&self) -> VertexSet {
        self.side_a
    }

    pub fn side_b(&self) -> VertexSet {
        self.side_b
    }

    pub fn swapped(&self) -> Self {
        Self {
            side_a: self.side_b,
            side_b: self.side_a,
        }
    }
}

/// The four cut-value flavours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CutKind {
    /// Induced matching of the bipartite graph `G[A, B]`.
    #[serde(rename = "mim")]
    Mim,
    /// Cross matching that is induced in all of `G`.
    #[serde(rename = "sim")]
    Sim,
    /// Smaller of the two upper-induced matching numbers.
    #[serde(rename = "omim")]
    Omim,
    /// Larger of the two upper-induced matching numbers.
    #[serde(rename = "Omim")]
    OmimMax,
}

impl CutKind {
    pub const ALL: [CutKind; 4] = [CutKind::Mim, CutKind::OmimMax, CutKind::Omim, CutKind::Sim];

    pub fn as_str(self) -> &'static str {
        match self {
            CutKind::Mim => "mim",
            CutKind::Sim => "sim",
            CutKind::Omim => "omim",
            CutKind::OmimMax => "Omim",
        }
    }
}

impl fmt::Display for CutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CutKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mim" => Ok(CutKind::Mim),
            "sim" => Ok(CutKind::Sim),
            "omim" => Ok(CutKind::Omim),
            "Omim" => Ok(CutKind::OmimMax),
            other => Err(Error::Invalid(format!(
                "unknown parameter `{other}` (expected mim, sim, omim or Omim)"
            ))),
        }
    }
}

/// Upper-induced matching number of `x` inside the vertex universe `x | rest`.
#[inline]
fn upper(adj: &[u64], x: u64, rest: u64, cap: usize, must: Option<usize>) -> usize {
    matching::cross_matching(adj, x, rest, SideEdges::A_ONLY, cap, must)
}

/// Cut value of `(a, b)` restricted to the vertices of `a | b`, capped at `cap`.
pub(crate) fn value_of(adj: &[u64], kind: CutKind, a: u64, b: u64, cap: usize) -> usize {
    match kind {
        CutKind::Mim => matching::cross_matching(adj, a, b, SideEdges::NONE, cap, None),
        CutKind::Sim => matching::cross_matching(adj, a, b, SideEdges::BOTH, cap, None),
        CutKind::Omim => upper(adj, a, b, cap, None).min(upper(adj, b, a, cap, None)),
        CutKind::OmimMax => upper(adj, a, b, cap, None).max(upper(adj, b, a, cap, None)),
    }
}

/// Whether the cut value of `(a, b)` exceeds `w`.
///
/// `fresh` names a vertex that was just added to one side of a cut already
/// known to be within `w`; only matchings through it then need checking.
/// The min-of-two-sides flavour cannot use that shortcut and is always
/// evaluated in full.
pub(crate) fn exceeds(adj: &[u64], kind: CutKind, a: u64, b: u64, w: usize, fresh: Option<usize>) -> bool {
    let cap = w + 1;
    match kind {
        CutKind::Mim => matching::cross_matching(adj, a, b, SideEdges::NONE, cap, fresh) > w,
        CutKind::Sim => matching::cross_matching(adj, a, b, SideEdges::BOTH, cap, fresh) > w,
        CutKind::Omim => upper(adj, a, b, cap, None) > w && upper(adj, b, a, cap, None) > w,
        CutKind::OmimMax => upper(adj, a, b, cap, fresh) > w || upper(adj, b, a, cap, fresh) > w,
    }
}

pub fn cut_value(g: &Graph, c: &Cut, kind: CutKind) -> Result<usize> {
    c.validate(g)?;
    Ok(value_of(g.adjacency(), kind, c.side_a, c.side_b, usize::MAX))
}

pub fn mim_value(g: &Graph, c: &Cut) -> Result<usize> {
    cut_value(g, c, CutKind::Mim)
}

pub fn sim_value(g: &Graph, c: &Cut) -> Result<usize> {
    cut_value(g, c, CutKind::Sim)
}

pub fn omim_value(g: &Graph, c: &Cut) -> Result<usize> {
    cut_value(g, c, CutKind::Omim)
}

/// Larger one-sided value (written `Omim`, with a capital O, elsewhere).
pub fn omim_max_value(g: &Graph, c: &Cut) -> Result<usize> {
    cut_value(g, c, CutKind::OmimMax)
}

/// Largest cross matching of `(X, V \ X)` that stays induced once every edge
/// inside `V \ X` is deleted.
pub fn upper_induced_matching_number(g: &Graph, x: VertexSet) -> Result<usize> {
    if x & !g.all() != 0 {
        return Err(Error::InvalidCut("subset contains unknown vertices".into()));
    }
    Ok(upper(g.adjacency(), x, g.all() & !x, usize::MAX, None))
}

pub fn max_induced_matching(g: &Graph) -> usize {
    matching::max_induced_matching(g.adjacency(), g.all())
}

/// Value of the leaf cut `({v}, V \ {v})`: 1 for non-isolated vertices.
pub(crate) fn leaf_cut_value(g: &Graph, v: usize) -> usize {
    usize::from(g.neighbors(v) & !bit(v) != 0)
}
