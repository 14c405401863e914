//! Long induced (chordless) cycles.

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph};

struct HoleSearch<'a> {
    adj: &'a [u64],
    min_len: usize,
    path: Vec<usize>,
}

impl HoleSearch<'_> {
    /// `path` is chordless and starts at its smallest vertex; `interior` holds
    /// every path vertex except the first and the last.
    fn extend(&mut self, allowed: u64, interior: u64) -> bool {
        let start = self.path[0];
        let last = *self.path.last().unwrap();
        let on_path = interior | bit(start) | bit(last);
        for x in bits(self.adj[last] & allowed & !on_path) {
            if self.adj[x] & interior != 0 {
                continue;
            }
            let closes = self.path.len() >= 2 && self.adj[x] & bit(start) != 0;
            if closes {
                // x touches the start: either it closes a hole or it is a chord
                if self.path.len() + 1 >= self.min_len {
                    self.path.push(x);
                    return true;
                }
                continue;
            }
            let next_interior = if self.path.len() >= 2 { interior | bit(last) } else { interior };
            self.path.push(x);
            if self.extend(allowed, next_interior) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// Finds an induced cycle on at least `min_len` vertices, returned as a vertex
/// sequence, or `None` when there is none.
pub fn has_induced_cycle_geq(g: &Graph, min_len: usize) -> Result<Option<Vec<String>>> {
    if min_len < 4 {
        return Err(Error::Invalid(format!(
            "cycle length bound must be at least 4, got {min_len}"
        )));
    }
    let adj = g.adjacency();
    let n = g.vertex_count();
    for start in 0..n {
        // the cycle's smallest vertex is `start`
        let allowed = g.all() & !((bit(start) << 1).wrapping_sub(1));
        let mut search = HoleSearch {
            adj,
            min_len,
            path: vec![start],
        };
        if search.extend(allowed, 0) {
            return Ok(Some(search.path.iter().map(|&v| g.name(v).to_string()).collect()));
        }
    }
    Ok(None)
}
