//! Branch-and-bound kernels for induced matchings.
//!
//! Everything here works on raw adjacency bitmasks so that the width searches
//! can evaluate cuts restricted to an arbitrary subset of placed vertices: a
//! cut `(a, b)` only ever looks at vertices inside `a | b`.

use crate::graph::{bit, bits};

/// Which same-side edges count against inducedness of a cross matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct SideEdges {
    pub a: bool,
    pub b: bool,
}

impl SideEdges {
    pub const NONE: Self = Self { a: false, b: false };
    pub const BOTH: Self = Self { a: true, b: true };
    pub const A_ONLY: Self = Self { a: true, b: false };
}

struct CrossSearch<'a> {
    adj: &'a [u64],
    sides: SideEdges,
    cap: usize,
    best: usize,
}

impl CrossSearch<'_> {
    /// Extends a matching of size `size`; `cand_a`/`cand_b` hold the vertices
    /// still compatible with every edge chosen so far.
    fn grow(&mut self, size: usize, cand_a: u64, cand_b: u64) {
        if size > self.best {
            self.best = size;
        }
        if self.best >= self.cap {
            return;
        }
        let adj = self.adj;
        let live_a = bits(cand_a)
            .filter(|&a| adj[a] & cand_b != 0)
            .fold(0u64, |m, a| m | bit(a));
        if live_a == 0 {
            return;
        }
        let live_b = bits(cand_b)
            .filter(|&b| adj[b] & live_a != 0)
            .fold(0u64, |m, b| m | bit(b));
        let room = live_a.count_ones().min(live_b.count_ones()) as usize;
        if size + room <= self.best {
            return;
        }
        let a = live_a.trailing_zeros() as usize;
        for b in bits(adj[a] & live_b) {
            let (na, nb) = self.after_pick(a, b, live_a, live_b);
            self.grow(size + 1, na, nb);
            if self.best >= self.cap {
                return;
            }
        }
        self.grow(size, live_a & !bit(a), live_b);
    }

    #[inline]
    fn after_pick(&self, a: usize, b: usize, cand_a: u64, cand_b: u64) -> (u64, u64) {
        let adj = self.adj;
        let mut na = cand_a & !bit(a) & !adj[b];
        let mut nb = cand_b & !bit(b) & !adj[a];
        if self.sides.a {
            na &= !adj[a];
        }
        if self.sides.b {
            nb &= !adj[b];
        }
        (na, nb)
    }
}

/// Largest matching of edges between `a` and `b` in which no two matching
/// edges are joined by a cross edge or, when enabled in `sides`, by an edge
/// inside `a` or inside `b`. The result is capped at `cap`.
///
/// With `must = Some(v)` only matchings that cover `v` are considered (the
/// result is 0 when `v` is outside `a | b` or has no neighbour across).
pub(crate) fn cross_matching(
    adj: &[u64],
    a: u64,
    b: u64,
    sides: SideEdges,
    cap: usize,
    must: Option<usize>,
) -> usize {
    debug_assert_eq!(a & b, 0);
    let mut search = CrossSearch {
        adj,
        sides,
        cap,
        best: 0,
    };
    if cap == 0 {
        return 0;
    }
    match must {
        None => search.grow(0, a, b),
        Some(v) if a & bit(v) != 0 => {
            for w in bits(adj[v] & b) {
                let (na, nb) = search.after_pick(v, w, a, b);
                search.grow(1, na, nb);
                if search.best >= cap {
                    break;
                }
            }
        }
        Some(v) if b & bit(v) != 0 => {
            // mirror the roles of the two sides
            let mirrored = SideEdges {
                a: sides.b,
                b: sides.a,
            };
            let mut search = CrossSearch {
                adj,
                sides: mirrored,
                cap,
                best: 0,
            };
            for w in bits(adj[v] & a) {
                let (nb, na) = search.after_pick(v, w, b, a);
                search.grow(1, nb, na);
                if search.best >= cap {
                    break;
                }
            }
            return search.best.min(cap);
        }
        Some(_) => {}
    }
    search.best.min(cap)
}

struct InducedSearch<'a> {
    adj: &'a [u64],
    best: usize,
}

impl InducedSearch<'_> {
    fn grow(&mut self, size: usize, free: u64) {
        if size > self.best {
            self.best = size;
        }
        let adj = self.adj;
        let live = bits(free)
            .filter(|&v| adj[v] & free != 0)
            .fold(0u64, |m, v| m | bit(v));
        if size + (live.count_ones() as usize) / 2 <= self.best {
            return;
        }
        let v = live.trailing_zeros() as usize;
        for u in bits(adj[v] & live) {
            let closed = adj[v] | adj[u] | bit(v) | bit(u);
            self.grow(size + 1, live & !closed);
        }
        self.grow(size, live & !bit(v));
    }
}

/// Maximum induced matching of the subgraph induced by `within`.
pub(crate) fn max_induced_matching(adj: &[u64], within: u64) -> usize {
    let mut search = InducedSearch { adj, best: 0 };
    search.grow(0, within);
    search.best
}
