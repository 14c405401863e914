//! Branch decompositions: unrooted ternary trees whose leaves are labelled by
//! graph vertices, plus caterpillars built from total orders.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cut::Cut;
use crate::error::{Error, Result};
use crate::graph::{bit, valid_name, Graph};

/// An edge of a decomposition tree, as node indices with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeEdge {
    pub u: usize,
    pub v: usize,
}

impl TreeEdge {
    pub fn new(a: usize, b: usize) -> Self {
        Self {
            u: a.min(b),
            v: a.max(b),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BranchDecomposition {
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

impl BranchDecomposition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(label: &str) -> Result<Self> {
        let t = Self {
            adj: vec![vec![]],
            labels: vec![Some(label.to_string())],
        };
        t.validate()?;
        Ok(t)
    }

    /// Builds a tree from explicit nodes; `labels[i]` must be `Some` exactly
    /// for the leaves.
    pub fn from_parts(labels: Vec<Option<String>>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); labels.len()];
        for &(a, b) in edges {
            if a >= labels.len() || b >= labels.len() {
                return Err(Error::InvalidTree(format!("edge {a}-{b} out of range")));
            }
            if a == b || adj[a].contains(&b) {
                return Err(Error::InvalidTree(format!("bad edge {a}-{b}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let t = Self { adj, labels };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let n = self.adj.len();
        if n == 0 {
            return Ok(());
        }
        let edge_count: usize = self.adj.iter().map(Vec::len).sum::<usize>() / 2;
        if edge_count + 1 != n {
            return Err(Error::InvalidTree(format!(
                "{n} nodes but {edge_count} edges"
            )));
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidTree("tree is disconnected".into()));
        }
        let mut names = HashSet::new();
        for (x, label) in self.labels.iter().enumerate() {
            let deg = self.adj[x].len();
            match label {
                Some(name) => {
                    if deg > 1 {
                        return Err(Error::InvalidTree(format!(
                            "labelled node `{name}` has degree {deg}"
                        )));
                    }
                    if !valid_name(name) {
                        return Err(Error::InvalidName(name.clone()));
                    }
                    if !names.insert(name.as_str()) {
                        return Err(Error::InvalidTree(format!("leaf `{name}` appears twice")));
                    }
                }
                None => {
                    if deg != 3 {
                        return Err(Error::InvalidTree(format!(
                            "internal node {x} has degree {deg}, expected 3"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_some()).count()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn label(&self, node: usize) -> Option<&str> {
        self.labels[node].as_deref()
    }

    /// Leaf labels in node order.
    pub fn leaves(&self) -> Vec<&str> {
        self.labels.iter().filter_map(|l| l.as_deref()).collect()
    }

    pub fn node_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    pub fn edges(&self) -> Vec<TreeEdge> {
        let mut out = Vec::new();
        for (x, nb) in self.adj.iter().enumerate() {
            for &y in nb {
                if x < y {
                    out.push(TreeEdge::new(x, y));
                }
            }
        }
        out
    }

    /// The edge joining the leaf `label` to the rest of the tree.
    pub fn leaf_edge(&self, label: &str) -> Option<TreeEdge> {
        let x = self.node_of(label)?;
        self.adj[x].first().map(|&y| TreeEdge::new(x, y))
    }

    /// Subdivides `edge` and hangs a new leaf off the new node. On a tree
    /// with at most one node `edge` must be `None` and the leaf is joined
    /// directly.
    pub fn insert_leaf(&mut self, edge: Option<TreeEdge>, label: &str) -> Result<usize> {
        if !valid_name(label) {
            return Err(Error::InvalidName(label.to_string()));
        }
        if self.node_of(label).is_some() {
            return Err(Error::InvalidTree(format!("leaf `{label}` already present")));
        }
        match (edge, self.adj.len()) {
            (None, 0) => {
                self.adj.push(vec![]);
                self.labels.push(Some(label.to_string()));
                Ok(0)
            }
            (None, 1) => {
                self.adj.push(vec![0]);
                self.adj[0].push(1);
                self.labels.push(Some(label.to_string()));
                Ok(1)
            }
            (None, _) => Err(Error::InvalidTree("an edge is required to insert a leaf".into())),
            (Some(TreeEdge { u, v }), _) => {
                if u >= self.adj.len() || !self.adj[u].contains(&v) {
                    return Err(Error::InvalidTree(format!("no edge {u}-{v}")));
                }
                let x = self.adj.len();
                let leaf = x + 1;
                replace(&mut self.adj[u], v, x);
                replace(&mut self.adj[v], u, x);
                self.adj.push(vec![u, v, leaf]);
                self.adj.push(vec![x]);
                self.labels.push(None);
                self.labels.push(Some(label.to_string()));
                Ok(leaf)
            }
        }
    }

    /// Leaf labels on the `u` side of `edge`.
    pub fn side_of(&self, edge: TreeEdge) -> Vec<&str> {
        let mut out = Vec::new();
        let mut stack = vec![(edge.u, edge.v)];
        while let Some((x, from)) = stack.pop() {
            if let Some(l) = self.label(x) {
                out.push(l);
            }
            for &y in &self.adj[x] {
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        out
    }

    /// Node sequence of the tree path between two nodes.
    pub(crate) fn path(&self, from: usize, to: usize) -> Vec<usize> {
        tree_path(&self.adj, from, to)
    }

    /// Internal nodes induce a path.
    pub fn is_caterpillar(&self) -> bool {
        self.adj.iter().enumerate().all(|(x, nb)| {
            self.labels[x].is_some() || nb.iter().filter(|&&y| self.labels[y].is_none()).count() <= 2
        })
    }

    /// Canonical Newick string; two trees are isomorphic as leaf-labelled
    /// trees iff their canonical strings agree.
    pub fn canonical(&self) -> String {
        if self.adj.is_empty() {
            return ";".to_string();
        }
        let (first, name) = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(x, l)| l.as_deref().map(|l| (x, l)))
            .min_by(|a, b| a.1.cmp(b.1))
            .expect("non-empty tree has a leaf");
        let Some(&hub) = self.adj[first].first() else {
            return format!("{name};");
        };
        if self.labels[hub].is_some() {
            let other = self.labels[hub].as_deref().unwrap();
            return format!("({name},{other});");
        }
        let mut parts: Vec<String> = self.adj[hub]
            .iter()
            .filter(|&&y| y != first)
            .map(|&y| self.subtree_string(y, hub))
            .collect();
        sort_subtrees(&mut parts);
        format!("({name},{});", parts.join(","))
    }

    fn subtree_string(&self, x: usize, from: usize) -> String {
        if let Some(l) = &self.labels[x] {
            return l.clone();
        }
        let mut parts: Vec<String> = self.adj[x]
            .iter()
            .filter(|&&y| y != from)
            .map(|&y| self.subtree_string(y, x))
            .collect();
        sort_subtrees(&mut parts);
        format!("({})", parts.join(","))
    }

    pub fn to_newick(&self) -> String {
        self.canonical()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn parse_newick(text: &str) -> Result<Self> {
        text.parse()
    }
}

fn replace(list: &mut [usize], old: usize, new: usize) {
    if let Some(slot) = list.iter_mut().find(|s| **s == old) {
        *slot = new;
    }
}

// leaves before nested subtrees, each group sorted
fn sort_subtrees(parts: &mut [String]) {
    parts.sort_by(|a, b| (a.starts_with('('), a).cmp(&(b.starts_with('('), b)));
}

pub(crate) fn tree_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            break;
        }
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = parent[x];
        path.push(x);
    }
    path
}

impl fmt::Display for BranchDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

enum Shape {
    Leaf(String),
    Inner(Vec<Shape>),
}

struct NewickParser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl NewickParser<'_> {
    fn err(msg: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn subtree(&mut self) -> Result<Shape> {
        self.skip_ws();
        match self.chars.peek() {
            Some((_, '(')) => {
                self.chars.next();
                let mut children = vec![self.subtree()?];
                loop {
                    self.skip_ws();
                    match self.chars.next() {
                        Some((_, ',')) => children.push(self.subtree()?),
                        Some((_, ')')) => break,
                        Some((i, c)) => return Err(Self::err(format!("unexpected `{c}` at {i}"))),
                        None => return Err(Self::err("unbalanced parentheses")),
                    }
                }
                self.skip_ws();
                if matches!(self.chars.peek(), Some((_, c)) if !matches!(c, ',' | ')' | ';')) {
                    return Err(Self::err("internal nodes must be unlabelled"));
                }
                Ok(Shape::Inner(children))
            }
            Some(_) => {
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ',' | ';') {
                        break;
                    }
                    name.push(c);
                    self.chars.next();
                }
                if name.is_empty() {
                    return Err(Self::err("missing leaf label"));
                }
                Ok(Shape::Leaf(name))
            }
            None => Err(Self::err("unexpected end of tree")),
        }
    }
}

struct Builder {
    labels: Vec<Option<String>>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn node(&mut self, label: Option<String>) -> usize {
        self.labels.push(label);
        self.labels.len() - 1
    }

    fn build(&mut self, shape: Shape) -> Result<usize> {
        match shape {
            Shape::Leaf(name) => Ok(self.node(Some(name))),
            Shape::Inner(children) => {
                if children.len() != 2 {
                    return Err(Error::InvalidTree(format!(
                        "nested node with {} children; internal nodes must have degree 3",
                        children.len()
                    )));
                }
                let x = self.node(None);
                for child in children {
                    let c = self.build(child)?;
                    self.edges.push((x, c));
                }
                Ok(x)
            }
        }
    }
}

impl FromStr for BranchDecomposition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let body = text
            .strip_suffix(';')
            .ok_or_else(|| NewickParser::err("tree must end with `;`"))?;
        if body.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut parser = NewickParser {
            chars: body.char_indices().peekable(),
        };
        let shape = parser.subtree()?;
        parser.skip_ws();
        if let Some((i, c)) = parser.chars.next() {
            return Err(NewickParser::err(format!("trailing `{c}` at {i}")));
        }
        let mut b = Builder {
            labels: Vec::new(),
            edges: Vec::new(),
        };
        match shape {
            Shape::Leaf(name) => {
                b.node(Some(name));
            }
            Shape::Inner(children) if children.len() == 2 => {
                // a two-child root is suppressed: its children are joined directly
                let mut roots = Vec::new();
                for child in children {
                    roots.push(b.build(child)?);
                }
                b.edges.push((roots[0], roots[1]));
            }
            Shape::Inner(children) if children.len() == 3 => {
                let x = b.node(None);
                for child in children {
                    let c = b.build(child)?;
                    b.edges.push((x, c));
                }
            }
            Shape::Inner(children) => {
                return Err(Error::InvalidTree(format!(
                    "top-level node with {} children",
                    children.len()
                )))
            }
        }
        Self::from_parts(b.labels, &b.edges)
    }
}

/// A total order on a finite set of names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TotalOrder(Vec<String>);

impl TotalOrder {
    pub fn new<I, S>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let seq: Vec<String> = items.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for s in &seq {
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidOrder(format!("`{s}` appears twice")));
            }
        }
        Ok(Self(seq))
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|s| s == name)
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().cloned().collect())
    }

    pub fn into_vec(self) -> Vec<String> {
        self.0
    }
}

/// The ternary caterpillar realizing `order`: leaves `p_1..p_n` hang off
/// spine nodes `2..n-1`, with `p_1` and `p_n` sharing the end nodes.
/// Orders of length at most 3 give the unique tree on that many leaves.
pub fn caterpillar_from_order(order: &TotalOrder) -> BranchDecomposition {
    let n = order.len();
    let mut labels: Vec<Option<String>> = order.0.iter().cloned().map(Some).collect();
    let mut edges = Vec::new();
    match n {
        0 | 1 => {}
        2 => edges.push((0, 1)),
        3 => {
            labels.push(None);
            edges.extend([(0, 3), (1, 3), (2, 3)]);
        }
        _ => {
            // spine node for position i (1-based, 2..=n-1) is n + i - 2
            labels.extend(std::iter::repeat_n(None, n - 2));
            for i in 2..n - 1 {
                edges.push((n + i - 2, n + i - 1));
            }
            for i in 1..=n {
                let spine = i.clamp(2, n - 1);
                edges.push((i - 1, n + spine - 2));
            }
        }
    }
    BranchDecomposition::from_parts(labels, &edges).expect("caterpillar is a valid ternary tree")
}

fn same_ground_set(t: &BranchDecomposition, names: &[String]) -> Result<()> {
    let leaves: HashSet<&str> = t.leaves().into_iter().collect();
    let wanted: HashSet<&str> = names.iter().map(String::as_str).collect();
    if leaves != wanted || t.leaf_count() != names.len() {
        let mut missing: Vec<&str> = wanted.difference(&leaves).copied().collect();
        let mut extra: Vec<&str> = leaves.difference(&wanted).copied().collect();
        missing.sort_unstable();
        extra.sort_unstable();
        return Err(Error::LabelMismatch(format!(
            "missing leaves {missing:?}, unexpected leaves {extra:?}"
        )));
    }
    Ok(())
}

/// Whether `t` is (isomorphic to) the caterpillar realizing `order`.
pub fn realizes(t: &BranchDecomposition, order: &TotalOrder) -> Result<bool> {
    same_ground_set(t, &order.0)?;
    Ok(t.is_isomorphic(&caterpillar_from_order(order)))
}

/// Every tree edge with the cut it induces on `g`.
pub fn cuts_of(t: &BranchDecomposition, g: &Graph) -> Result<Vec<(TreeEdge, Cut)>> {
    same_ground_set(t, g.names())?;
    let leaf_bits: Vec<u64> = t
        .labels
        .iter()
        .map(|l| l.as_deref().map_or(0, |name| bit(g.index_of(name).unwrap())))
        .collect();
    let all = g.all();
    t.edges()
        .into_iter()
        .map(|e| {
            let mut side = 0u64;
            let mut stack = vec![(e.u, e.v)];
            while let Some((x, from)) = stack.pop() {
                side |= leaf_bits[x];
                for &y in &t.adj[x] {
                    if y != from {
                        stack.push((y, x));
                    }
                }
            }
            Ok((e, Cut::from_sets(g, side, all & !side)?))
        })
        .collect()
}

/// A ternary tree grown by leaf insertion, with cheap undo. Leaves carry item
/// indices (vertex or point numbers) rather than names.
#[derive(Debug, Clone)]
pub(crate) struct GrowingTree {
    pub adj: Vec<Vec<usize>>,
    pub item: Vec<Option<usize>>,
    pub edges: Vec<(usize, usize)>,
    /// Leaf node of each item, `usize::MAX` while unplaced.
    pub leaf_node: Vec<usize>,
}

impl GrowingTree {
    /// Star on three of `items` items: leaves are nodes 0..3, the centre is
    /// node 3.
    pub fn star(items: usize, a: usize, b: usize, c: usize) -> Self {
        let adj = vec![vec![3], vec![3], vec![3], vec![0, 1, 2]];
        let item = vec![Some(a), Some(b), Some(c), None];
        let mut leaf_node = vec![usize::MAX; items];
        leaf_node[a] = 0;
        leaf_node[b] = 1;
        leaf_node[c] = 2;
        Self {
            adj,
            item,
            edges: vec![(0, 3), (1, 3), (2, 3)],
            leaf_node,
        }
    }

    /// Inserts `it` as a leaf subdividing edge `e`.
    pub fn insert(&mut self, e: usize, it: usize) {
        let (u, w) = self.edges[e];
        let x = self.adj.len();
        let y = x + 1;
        replace(&mut self.adj[u], w, x);
        replace(&mut self.adj[w], u, x);
        self.adj.push(vec![u, w, y]);
        self.adj.push(vec![x]);
        self.item.push(None);
        self.item.push(Some(it));
        self.edges[e] = (u, x);
        self.edges.push((x, w));
        self.edges.push((x, y));
        self.leaf_node[it] = y;
    }

    /// Reverts the most recent `insert(e, _)`.
    pub fn undo(&mut self, e: usize) {
        self.edges.pop();
        let (x, w) = self.edges.pop().unwrap();
        let (u, _) = self.edges[e];
        self.edges[e] = (u, w);
        self.adj.pop();
        self.adj.pop();
        replace(&mut self.adj[u], x, w);
        replace(&mut self.adj[w], x, u);
        if let Some(Some(it)) = self.item.pop() {
            self.leaf_node[it] = usize::MAX;
        }
        self.item.pop();
    }

    /// For every edge, the item mask on the side of its second endpoint as
    /// seen from node 0.
    pub fn side_masks(&self) -> Vec<u64> {
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0usize];
        parent[0] = 0;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut below = vec![0u64; n];
        for &x in order.iter().rev() {
            if let Some(it) = self.item[x] {
                below[x] |= bit(it);
            }
            if x != 0 {
                let p = parent[x];
                below[p] |= below[x];
            }
        }
        self.edges
            .iter()
            .map(|&(a, b)| if parent[b] == a { below[b] } else { below[a] })
            .collect()
    }

    pub fn to_decomposition(&self, names: &[String]) -> BranchDecomposition {
        let labels = self
            .item
            .iter()
            .map(|it| it.map(|i| names[i].clone()))
            .collect();
        BranchDecomposition::from_parts(labels, &self.edges).expect("grown tree is ternary")
    }
}

/// Iterator over all unrooted leaf-labelled ternary trees on a leaf set,
/// `(2n-5)!!` of them for `n >= 3`. Each tree is produced once by inserting
/// leaf `k` into every edge of each tree on the first `k` leaves. Fewer than
/// three leaves give the single degenerate tree.
pub struct TernaryTrees {
    leaves: Vec<String>,
    choices: Vec<usize>,
    done: bool,
}

pub fn enumerate_ternary_trees(leaves: &[String]) -> TernaryTrees {
    let extra = leaves.len().saturating_sub(3);
    TernaryTrees {
        leaves: leaves.to_vec(),
        choices: vec![0; extra],
        done: false,
    }
}

impl Iterator for TernaryTrees {
    type Item = BranchDecomposition;

    fn next(&mut self) -> Option<BranchDecomposition> {
        if self.done {
            return None;
        }
        if self.leaves.len() < 3 {
            self.done = true;
            let order = TotalOrder::new(self.leaves.clone()).ok()?;
            return Some(caterpillar_from_order(&order));
        }
        let mut tree = GrowingTree::star(self.leaves.len(), 0, 1, 2);
        for (k, &c) in self.choices.iter().enumerate() {
            tree.insert(c, k + 3);
        }
        let out = tree.to_decomposition(&self.leaves);

        // odometer: leaf k+3 has 2(k+3)-3 edges to choose from
        let mut k = self.choices.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.choices[k] += 1;
            if self.choices[k] < 2 * (k + 3) - 3 {
                break;
            }
            self.choices[k] = 0;
        }
        Some(out)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Total orders on `leaves` in lexicographic order of positions. With
/// `skip_reversals` only one of each order/reverse pair is produced (the one
/// whose first element precedes its last in `leaves`).
pub struct Orders {
    leaves: Vec<String>,
    perm: Vec<usize>,
    skip_reversals: bool,
    done: bool,
}

pub fn enumerate_orders(leaves: &[String], skip_reversals: bool) -> Orders {
    Orders {
        leaves: leaves.to_vec(),
        perm: (0..leaves.len()).collect(),
        skip_reversals,
        done: false,
    }
}

impl Iterator for Orders {
    type Item = TotalOrder;

    fn next(&mut self) -> Option<TotalOrder> {
        loop {
            if self.done {
                return None;
            }
            let keep = !self.skip_reversals
                || self.perm.len() < 2
                || self.perm[0] < self.perm[self.perm.len() - 1];
            let current = keep.then(|| {
                TotalOrder(self.perm.iter().map(|&i| self.leaves[i].clone()).collect())
            });
            if !next_permutation(&mut self.perm) {
                self.done = true;
            }
            if current.is_some() {
                return current;
            }
        }
    }
}
