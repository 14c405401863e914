//! Quartets and unrooted quartet consistency.
//!
//! A quartet `ab|cd` is satisfied by a ternary tree when the tree paths
//! `a..b` and `c..d` share no node, and by a total order when it is satisfied
//! by the caterpillar of that order. On a caterpillar the second condition is
//! equivalent to the two earliest of the four points forming a pair, which is
//! what the order search checks as soon as a quartet's second point is placed.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::decomp::{caterpillar_from_order, tree_path, BranchDecomposition, GrowingTree, TotalOrder};
use crate::error::{Error, Result};
use crate::graph::{bit, valid_name, MAX_VERTICES};

/// An unrooted quartet `ab|cd`, kept in canonical form: each pair sorted and
/// the pairs sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quartet {
    pairs: [[String; 2]; 2],
}

impl Quartet {
    pub fn new(a: &str, b: &str, c: &str, d: &str) -> Result<Self> {
        let pts = [a, b, c, d];
        for (i, p) in pts.iter().enumerate() {
            if !valid_name(p) {
                return Err(Error::InvalidName(p.to_string()));
            }
            if pts[..i].contains(p) {
                return Err(Error::Invalid(format!(
                    "quartet {a} {b} | {c} {d} repeats point {p}"
                )));
            }
        }
        let sorted = |x: &str, y: &str| {
            if x <= y {
                [x.to_string(), y.to_string()]
            } else {
                [y.to_string(), x.to_string()]
            }
        };
        let mut pairs = [sorted(a, b), sorted(c, d)];
        pairs.sort();
        Ok(Self { pairs })
    }

    /// The three topologies on four distinct points.
    pub fn topologies(a: &str, b: &str, c: &str, d: &str) -> Result<[Quartet; 3]> {
        Ok([
            Self::new(a, b, c, d)?,
            Self::new(a, c, b, d)?,
            Self::new(a, d, b, c)?,
        ])
    }

    pub fn pairs(&self) -> &[[String; 2]; 2] {
        &self.pairs
    }

    pub fn points(&self) -> [&str; 4] {
        [
            &self.pairs[0][0],
            &self.pairs[0][1],
            &self.pairs[1][0],
            &self.pairs[1][1],
        ]
    }

    pub fn is_satisfied_by(&self, t: &BranchDecomposition) -> Result<bool> {
        let node = |p: &str| {
            t.node_of(p)
                .ok_or_else(|| Error::LabelMismatch(format!("tree has no leaf {p}")))
        };
        let [a, b, c, d] = self.points();
        let first = t.path(node(a)?, node(b)?);
        let second = t.path(node(c)?, node(d)?);
        Ok(first.iter().all(|x| !second.contains(x)))
    }

    pub fn is_satisfied_by_order(&self, order: &TotalOrder) -> Result<bool> {
        let pos = |p: &str| {
            order
                .position(p)
                .ok_or_else(|| Error::LabelMismatch(format!("order lacks point {p}")))
        };
        let [a, b, c, d] = self.points();
        let (a, b, c, d) = (pos(a)?, pos(b)?, pos(c)?, pos(d)?);
        Ok(a.max(b) < c.min(d) || c.max(d) < a.min(b))
    }
}

impl fmt::Display for Quartet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.points();
        write!(f, "{a} {b} | {c} {d}")
    }
}

impl FromStr for Quartet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (left, right) = s
            .split_once('|')
            .ok_or_else(|| Error::Invalid(format!("quartet `{s}` lacks `|`")))?;
        let l: Vec<&str> = left.split_whitespace().collect();
        let r: Vec<&str> = right.split_whitespace().collect();
        match (l.as_slice(), r.as_slice()) {
            ([a, b], [c, d]) => Self::new(a, b, c, d),
            _ => Err(Error::Invalid(format!(
                "quartet `{s}` must have two points on each side of `|`"
            ))),
        }
    }
}

/// A point set with quartet constraints. Duplicate quartets are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UqcInstance {
    points: Vec<String>,
    quartets: Vec<Quartet>,
}

impl UqcInstance {
    pub fn new<S: Into<String>>(points: impl IntoIterator<Item = S>, quartets: Vec<Quartet>) -> Result<Self> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for p in &points {
            if !valid_name(p) {
                return Err(Error::InvalidName(p.clone()));
            }
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicateVertex(p.clone()));
            }
        }
        if points.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                max: MAX_VERTICES,
                got: points.len(),
            });
        }
        if points.len() < 4 && !quartets.is_empty() {
            return Err(Error::InvalidInstance(format!(
                "{} points cannot carry quartets",
                points.len()
            )));
        }
        let mut kept = Vec::with_capacity(quartets.len());
        let mut distinct = HashSet::new();
        for q in quartets {
            if let Some(p) = q.points().into_iter().find(|p| !seen.contains(p)) {
                return Err(Error::UnknownVertex(p.to_string()));
            }
            if distinct.insert(q.clone()) {
                kept.push(q);
            } else {
                log::warn!("dropping duplicate quartet {q}");
            }
        }
        Ok(Self {
            points,
            quartets: kept,
        })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn quartets(&self) -> &[Quartet] {
        &self.quartets
    }

    pub fn point_index(&self, p: &str) -> Option<usize> {
        self.points.iter().position(|x| x == p)
    }

    /// Every quartet holds in `t`, whose leaves must be exactly the points.
    pub fn satisfied_by(&self, t: &BranchDecomposition) -> Result<bool> {
        let mut leaves = t.leaves();
        leaves.sort_unstable();
        let mut pts: Vec<&str> = self.points.iter().map(String::as_str).collect();
        pts.sort_unstable();
        if leaves != pts {
            return Err(Error::LabelMismatch("tree leaves differ from the point set".into()));
        }
        for q in &self.quartets {
            if !q.is_satisfied_by(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn satisfied_by_order(&self, order: &TotalOrder) -> Result<bool> {
        if order.len() != self.points.len() || self.points.iter().any(|p| order.position(p).is_none()) {
            return Err(Error::LabelMismatch("order differs from the point set".into()));
        }
        for q in &self.quartets {
            if !q.is_satisfied_by_order(order)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("points: {}\n", self.points.join(" "));
        for q in &self.quartets {
            out.push_str(&q.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    fn indexed(&self) -> Vec<[usize; 4]> {
        let index: HashMap<&str, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        self.quartets
            .iter()
            .map(|q| q.points().map(|p| index[p]))
            .collect()
    }
}

/// Quartet file: an optional `points: ...` line followed by one `a b | c d`
/// quartet per line. Without the header the points are taken in order of
/// first appearance. `#` starts a comment.
impl FromStr for UqcInstance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut points: Option<Vec<String>> = None;
        let mut quartets = Vec::new();
        let mut seen = Vec::<String>::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
            if let Some(rest) = line.strip_prefix("points:") {
                if points.is_some() || !quartets.is_empty() {
                    return Err(parse_err("`points:` must come first and only once".into()));
                }
                points = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            let q: Quartet = line.parse().map_err(|e: Error| parse_err(e.to_string()))?;
            if let Some(pts) = &points {
                if let Some(p) = q.points().into_iter().find(|p| !pts.iter().any(|x| x == p)) {
                    return Err(parse_err(format!("unknown point `{p}`")));
                }
            }
            for p in line.split(|c: char| c == '|' || c.is_whitespace()) {
                if !p.is_empty() && !seen.iter().any(|x| x == p) {
                    seen.push(p.to_string());
                }
            }
            quartets.push(q);
        }
        let points = points.unwrap_or(seen);
        Self::new(points, quartets)
    }
}

/// Points ordered by how many quartets mention them, most first.
fn busy_first(m: usize, qs: &[[usize; 4]]) -> Vec<usize> {
    let mut count = vec![0usize; m];
    for q in qs {
        for &p in q {
            count[p] += 1;
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| count[b].cmp(&count[a]).then(a.cmp(&b)));
    order
}

struct TreeSolver<'a> {
    order: Vec<usize>,
    /// quartets whose last point in insertion order is the key
    due: Vec<Vec<[usize; 4]>>,
    tree: GrowingTree,
    _qs: &'a [[usize; 4]],
}

impl TreeSolver<'_> {
    fn holds(&self, q: &[usize; 4]) -> bool {
        let leaf = |p: usize| self.tree.leaf_node[p];
        let first = tree_path(&self.tree.adj, leaf(q[0]), leaf(q[1]));
        let second = tree_path(&self.tree.adj, leaf(q[2]), leaf(q[3]));
        first.iter().all(|x| !second.contains(x))
    }

    fn dfs(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for e in 0..self.tree.edges.len() {
            self.tree.insert(e, v);
            if self.due[v].iter().all(|q| self.holds(q)) && self.dfs(depth + 1) {
                return true;
            }
            self.tree.undo(e);
        }
        false
    }
}

/// A ternary tree satisfying every quartet, if one exists. With
/// `caterpillar` set only caterpillars are considered.
pub fn solve_uqc(inst: &UqcInstance, caterpillar: bool) -> Option<BranchDecomposition> {
    if caterpillar {
        return solve_caterpillar_order(inst).map(|o| caterpillar_from_order(&o));
    }
    let m = inst.points.len();
    if m < 4 {
        let order = TotalOrder::new(inst.points.iter().cloned()).expect("distinct points");
        return Some(caterpillar_from_order(&order));
    }
    let qs = inst.indexed();
    let order = busy_first(m, &qs);
    let mut rank = vec![0usize; m];
    for (i, &p) in order.iter().enumerate() {
        rank[p] = i;
    }
    let mut due = vec![Vec::new(); m];
    for q in &qs {
        let last = *q.iter().max_by_key(|&&p| rank[p]).unwrap();
        due[last].push(*q);
    }
    let mut solver = TreeSolver {
        tree: GrowingTree::star(m, order[0], order[1], order[2]),
        order,
        due,
        _qs: &qs,
    };
    solver
        .dfs(3)
        .then(|| solver.tree.to_decomposition(&inst.points))
}

struct OrderSolver {
    m: usize,
    /// quartets through each point, as (partner in pair, other pair)
    through: Vec<Vec<(usize, [usize; 2])>>,
    candidates: Vec<usize>,
    prefix: Vec<usize>,
    placed: u64,
    dead: HashSet<u64>,
}

impl OrderSolver {
    /// Placing `v` after `placed` does not decide any quartet against us: a
    /// quartet is decided by its two earliest points, which must be a pair.
    fn admissible(&self, v: usize) -> bool {
        self.through[v].iter().all(|&(partner, [x, y])| {
            let others = bit(x) | bit(y);
            let partner_in = self.placed & bit(partner) != 0;
            let others_in = (self.placed & others).count_ones();
            // fine if nothing else is placed yet, or exactly the partner is
            // placed, or the quartet was already decided by the other pair
            match (partner_in, others_in) {
                (false, 0) => true,
                (true, 0) => true,
                (_, 2) => true,
                (false, 1) => false,
                (true, 1) => unreachable!("pruned when the second point was placed"),
                _ => unreachable!(),
            }
        })
    }

    fn dfs(&mut self) -> bool {
        if self.prefix.len() == self.m {
            return true;
        }
        if self.dead.contains(&self.placed) {
            return false;
        }
        for i in 0..self.candidates.len() {
            let v = self.candidates[i];
            if self.placed & bit(v) != 0 || !self.admissible(v) {
                continue;
            }
            self.prefix.push(v);
            self.placed |= bit(v);
            if self.dfs() {
                return true;
            }
            self.placed &= !bit(v);
            self.prefix.pop();
        }
        self.dead.insert(self.placed);
        false
    }
}

/// A total order whose caterpillar satisfies every quartet, if one exists.
pub fn solve_caterpillar_order(inst: &UqcInstance) -> Option<TotalOrder> {
    let m = inst.points.len();
    let qs = inst.indexed();
    let mut through = vec![Vec::new(); m];
    for q in &qs {
        let [a, b, c, d] = *q;
        through[a].push((b, [c, d]));
        through[b].push((a, [c, d]));
        through[c].push((d, [a, b]));
        through[d].push((c, [a, b]));
    }
    let mut solver = OrderSolver {
        m,
        through,
        candidates: busy_first(m, &qs),
        prefix: Vec::new(),
        placed: 0,
        dead: HashSet::new(),
    };
    solver.dfs().then(|| {
        TotalOrder::new(solver.prefix.iter().map(|&p| inst.points[p].clone())).expect("permutation")
    })
}
