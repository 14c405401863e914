//! Widths of decompositions and exact widths of graphs.
//!
//! Exact widths are found by deciding `width <= w` for increasing `w`. Both
//! searches prune with restriction monotonicity: the cut value of a partial
//! structure restricted to the vertices placed so far never exceeds the value
//! of any completion, so a partial cut above `w` kills the whole subtree.
//!
//! * Linear: depth-first over order prefixes. A prefix determines its cut
//!   `(S, V \ S)` completely, so prefix sets proven dead are memoised.
//! * General: depth-first over leaf insertions, vertices taken by descending
//!   degree. After inserting `v` every restricted cut only needs re-checking
//!   for matchings through `v`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, AtomicU8, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::cut::{exceeds, leaf_cut_value, value_of, CutKind};
use crate::decomp::{caterpillar_from_order, cuts_of, BranchDecomposition, GrowingTree, TotalOrder, TreeEdge};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};

/// A width parameter: a cut-value kind, optionally restricted to caterpillars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WidthParam {
    pub kind: CutKind,
    pub linear: bool,
}

impl WidthParam {
    pub const fn new(kind: CutKind, linear: bool) -> Self {
        Self { kind, linear }
    }

    pub const fn general(kind: CutKind) -> Self {
        Self::new(kind, false)
    }

    pub const fn linear(kind: CutKind) -> Self {
        Self::new(kind, true)
    }

    /// All eight parameters, general ones first.
    pub fn all() -> Vec<WidthParam> {
        [false, true]
            .into_iter()
            .flat_map(|linear| CutKind::ALL.into_iter().map(move |k| Self::new(k, linear)))
            .collect()
    }
}

impl fmt::Display for WidthParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.linear {
            write!(f, "linear-{}-width", self.kind)
        } else {
            write!(f, "{}-width", self.kind)
        }
    }
}

impl FromStr for WidthParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (linear, rest) = match s.strip_prefix("linear-") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let kind = rest.strip_suffix("-width").unwrap_or(rest).parse()?;
        Ok(Self::new(kind, linear))
    }
}

/// Search limits. `threads` above 1 fans the search out over worker threads;
/// the answer and witness do not depend on it.
#[derive(Debug, Clone)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
    pub threads: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 1_000_000_000,
            max_time: Duration::from_secs(15 * 60),
            threads: 1,
        }
    }
}

impl Budget {
    pub fn with_time(mut self, t: Duration) -> Self {
        self.max_time = t;
        self
    }

    pub fn with_nodes(mut self, n: u64) -> Self {
        self.max_nodes = n;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub pruned: u64,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.pruned += other.pruned;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exhaustion {
    NodeLimit,
    TimeLimit,
}

/// Cut value of one tree edge; `cut_a` lists the leaves on the `u` side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeValue {
    pub edge: TreeEdge,
    pub cut_a: Vec<String>,
    pub value: usize,
}

#[derive(Debug, Clone)]
pub struct WidthReport {
    pub param: WidthParam,
    pub width: usize,
    pub witness: Option<BranchDecomposition>,
    pub per_edge: Vec<EdgeValue>,
    pub stats: SearchStats,
}

impl Serialize for WidthReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Edge<'a> {
            cut_a: &'a [String],
            value: usize,
        }
        let per_edge: Vec<Edge<'_>> = self
            .per_edge
            .iter()
            .map(|e| Edge {
                cut_a: &e.cut_a,
                value: e.value,
            })
            .collect();
        let mut st = s.serialize_struct("WidthReport", 6)?;
        st.serialize_field("param", &self.param.kind)?;
        st.serialize_field("linear", &self.param.linear)?;
        st.serialize_field("width", &self.width)?;
        st.serialize_field("witness_newick", &self.witness.as_ref().map(|t| t.to_newick()))?;
        st.serialize_field("per_edge", &per_edge)?;
        st.serialize_field("stats", &self.stats)?;
        st.end()
    }
}

/// Answer to `width <= w`. `No` is only returned after the pruned search
/// space was exhausted.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "answer", rename_all = "lowercase")]
pub enum Decision {
    Yes(WidthReport),
    No(SearchStats),
    Inconclusive {
        reason: Exhaustion,
        stats: SearchStats,
    },
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No(_))
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            Decision::Yes(r) => r.stats,
            Decision::No(s) | Decision::Inconclusive { stats: s, .. } => *s,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ExactWidth {
    Solved(WidthReport),
    /// Every `w < at_width` was refuted; deciding `at_width` ran out of budget.
    Inconclusive {
        at_width: usize,
        reason: Exhaustion,
        stats: SearchStats,
    },
}

impl ExactWidth {
    pub fn width(&self) -> Option<usize> {
        match self {
            ExactWidth::Solved(r) => Some(r.width),
            ExactWidth::Inconclusive { .. } => None,
        }
    }
}

/// Evaluates `p` on every cut of `t`.
pub fn decomposition_width(g: &Graph, t: &BranchDecomposition, p: WidthParam) -> Result<WidthReport> {
    if p.linear && !t.is_caterpillar() {
        return Err(Error::Invalid(format!(
            "{p} needs a caterpillar decomposition"
        )));
    }
    let adj = g.adjacency();
    let per_edge: Vec<EdgeValue> = cuts_of(t, g)?
        .into_iter()
        .map(|(edge, cut)| EdgeValue {
            edge,
            cut_a: g.names_of(cut.side_a()),
            value: value_of(adj, p.kind, cut.side_a(), cut.side_b(), usize::MAX),
        })
        .collect();
    Ok(WidthReport {
        param: p,
        width: per_edge.iter().map(|e| e.value).max().unwrap_or(0),
        witness: Some(t.clone()),
        per_edge,
        stats: SearchStats::default(),
    })
}

const FLUSH_EVERY: u64 = 1024;
const MEMO_CAP: usize = 1 << 24;

/// Budget accounting and cancellation shared by all workers.
struct Control {
    start: Instant,
    deadline: Instant,
    max_nodes: u64,
    nodes: AtomicU64,
    /// 0 running, 1 node limit, 2 time limit
    stop: AtomicU8,
    /// Lowest branch index that found a solution.
    best: AtomicUsize,
}

impl Control {
    fn new(budget: &Budget) -> Self {
        let start = Instant::now();
        Self {
            start,
            deadline: start + budget.max_time,
            max_nodes: budget.max_nodes,
            nodes: AtomicU64::new(0),
            stop: AtomicU8::new(0),
            best: AtomicUsize::new(usize::MAX),
        }
    }

    fn flush(&self, count: u64) -> bool {
        let total = self.nodes.fetch_add(count, Ordering::Relaxed) + count;
        if total > self.max_nodes {
            let _ = self.stop.compare_exchange(0, 1, Ordering::Relaxed, Ordering::Relaxed);
        } else if Instant::now() > self.deadline {
            let _ = self.stop.compare_exchange(0, 2, Ordering::Relaxed, Ordering::Relaxed);
        }
        self.stopped()
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed) != 0
    }

    fn exhaustion(&self) -> Option<Exhaustion> {
        match self.stop.load(Ordering::Relaxed) {
            1 => Some(Exhaustion::NodeLimit),
            2 => Some(Exhaustion::TimeLimit),
            _ => None,
        }
    }

    fn reset_best(&self) {
        self.best.store(usize::MAX, Ordering::Relaxed);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Found,
    NotFound,
    Stopped,
}

/// Per-worker node counting with periodic flushes to the shared [`Control`].
struct Meter<'a> {
    ctl: &'a Control,
    branch: usize,
    unflushed: u64,
    stats: SearchStats,
}

impl<'a> Meter<'a> {
    fn new(ctl: &'a Control, branch: usize) -> Self {
        Self {
            ctl,
            branch,
            unflushed: 0,
            stats: SearchStats::default(),
        }
    }

    /// Counts a node; true when the worker must stop.
    #[inline]
    fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY || self.stats.nodes > self.ctl.max_nodes {
            let n = std::mem::take(&mut self.unflushed);
            if self.ctl.flush(n) {
                return true;
            }
        }
        self.ctl.best.load(Ordering::Relaxed) < self.branch
    }

    fn finish(mut self) -> SearchStats {
        let n = std::mem::take(&mut self.unflushed);
        self.ctl.flush(n);
        self.stats
    }
}

/// Insertion edges still open to each unplaced vertex.
type Candidates = Vec<(usize, Vec<usize>)>;

/// Leaf-insertion search for general decompositions.
///
/// Every unplaced vertex keeps the list of edges it could still be inserted
/// into. Inserting more leaves only enlarges cuts, so a list never regains an
/// edge it lost; each step branches on the vertex with the shortest list and
/// a vertex with an empty list kills the branch.
struct TreeSearch<'a> {
    adj: &'a [u64],
    kind: CutKind,
    w: usize,
    order: &'a [usize],
    tree: GrowingTree,
    placed: u64,
    choices: Vec<(usize, usize)>,
}

impl<'a> TreeSearch<'a> {
    fn new(adj: &'a [u64], kind: CutKind, w: usize, order: &'a [usize]) -> Self {
        let tree = GrowingTree::star(adj.len(), order[0], order[1], order[2]);
        Self {
            adj,
            kind,
            w,
            order,
            tree,
            placed: bit(order[0]) | bit(order[1]) | bit(order[2]),
            choices: Vec::new(),
        }
    }

    fn push(&mut self, v: usize, e: usize) {
        self.tree.insert(e, v);
        self.placed |= bit(v);
        self.choices.push((v, e));
    }

    fn pop(&mut self) {
        let (v, e) = self.choices.pop().unwrap();
        self.placed &= !bit(v);
        self.tree.undo(e);
    }

    /// All restricted cuts are within `w`, given they were before `fresh`
    /// was inserted.
    fn still_ok(&self, fresh: usize) -> bool {
        let placed = self.placed;
        self.tree.side_masks().into_iter().all(|side| {
            let other = placed & !side;
            side.count_ones() <= 1
                || other.count_ones() <= 1
                || !exceeds(self.adj, self.kind, side, other, self.w, Some(fresh))
        })
    }

    fn fits(&mut self, v: usize, e: usize, meter: &mut Meter<'_>) -> std::result::Result<bool, Step> {
        if meter.tick() {
            return Err(Step::Stopped);
        }
        self.push(v, e);
        let ok = self.still_ok(v);
        self.pop();
        if !ok {
            meter.stats.pruned += 1;
        }
        Ok(ok)
    }

    /// Candidate lists computed from scratch; `Err(NotFound)` when some
    /// vertex has nowhere to go.
    fn fresh_candidates(&mut self, meter: &mut Meter<'_>) -> std::result::Result<Candidates, Step> {
        let mut out = Vec::new();
        for &v in self.order {
            if self.placed & bit(v) != 0 {
                continue;
            }
            let mut list = Vec::new();
            for e in 0..self.tree.edges.len() {
                if self.fits(v, e, meter)? {
                    list.push(e);
                }
            }
            if list.is_empty() {
                return Err(Step::NotFound);
            }
            out.push((v, list));
        }
        Ok(out)
    }

    /// Candidate lists after the last push, derived from the parent's lists.
    /// The pushed leaf split edge `split` into itself and the two newest edges.
    fn child_candidates(
        &mut self,
        parent: &Candidates,
        split: usize,
        meter: &mut Meter<'_>,
    ) -> std::result::Result<Candidates, Step> {
        let (v, _) = *self.choices.last().unwrap();
        let newest = self.tree.edges.len() - 2;
        let mut out = Vec::with_capacity(parent.len());
        for (u, list) in parent {
            if *u == v {
                continue;
            }
            let mut next = Vec::with_capacity(list.len() + 2);
            for &f in list {
                let derived: &[usize] = if f == split { &[f, newest, newest + 1] } else { &[f] };
                for &g in derived {
                    // fits() pushes and pops on top of the current tree
                    if self.fits(*u, g, meter)? {
                        next.push(g);
                    }
                }
            }
            if next.is_empty() {
                return Err(Step::NotFound);
            }
            out.push((*u, next));
        }
        Ok(out)
    }

    /// Depth-first search below the current tree. With `collect` set to
    /// `(limit, out)` the search stops at `limit` placed vertices and records
    /// the choice prefixes instead.
    fn dfs(
        &mut self,
        cands: &Candidates,
        meter: &mut Meter<'_>,
        collect: &mut Option<(usize, Vec<Vec<usize>>)>,
    ) -> Step {
        if cands.is_empty() {
            return Step::Found;
        }
        if let Some((limit, out)) = collect {
            if self.placed.count_ones() as usize == *limit {
                out.push(self.choices.iter().flat_map(|&(v, e)| [v, e]).collect());
                return Step::NotFound;
            }
        }
        let (v, edges) = cands.iter().min_by_key(|(_, l)| l.len()).unwrap();
        for &e in edges {
            self.push(*v, e);
            let step = match self.child_candidates(cands, e, meter) {
                Ok(child) => self.dfs(&child, meter, collect),
                Err(step) => step,
            };
            match step {
                Step::NotFound => self.pop(),
                other => return other,
            }
        }
        Step::NotFound
    }

    /// Replays a flattened `[v, e, v, e, ...]` prefix and searches below it.
    fn run(&mut self, prefix: &[usize], meter: &mut Meter<'_>, collect: &mut Option<(usize, Vec<Vec<usize>>)>) -> Step {
        for pair in prefix.chunks(2) {
            self.push(pair[0], pair[1]);
        }
        match self.fresh_candidates(meter) {
            Ok(c) => self.dfs(&c, meter, collect),
            Err(step) => step,
        }
    }
}

/// Prefix search over vertex orders for caterpillar decompositions.
struct OrderSearch<'a> {
    adj: &'a [u64],
    kind: CutKind,
    w: usize,
    order: &'a [usize],
    all: u64,
    prefix: Vec<usize>,
    set: u64,
    dead: HashSet<u64>,
}

impl<'a> OrderSearch<'a> {
    fn new(adj: &'a [u64], kind: CutKind, w: usize, order: &'a [usize]) -> Self {
        Self {
            adj,
            kind,
            w,
            order,
            all: order.iter().fold(0, |m, &v| m | bit(v)),
            prefix: Vec::new(),
            set: 0,
            dead: HashSet::new(),
        }
    }

    fn push(&mut self, v: usize) {
        self.prefix.push(v);
        self.set |= bit(v);
    }

    fn pop(&mut self) {
        let v = self.prefix.pop().unwrap();
        self.set &= !bit(v);
    }

    fn bury(&mut self, set: u64) {
        if self.dead.len() < MEMO_CAP {
            self.dead.insert(set);
        }
    }

    /// Whether appending `v` keeps the new prefix cut within `w`.
    fn admissible(&mut self, v: usize, meter: &mut Meter<'_>) -> bool {
        let next = self.set | bit(v);
        let k = self.prefix.len() + 1;
        let n = self.order.len();
        // prefixes of size 1 and n-1 are leaf cuts, checked up front
        if k < 2 || k + 2 > n {
            return true;
        }
        if self.dead.contains(&next) {
            meter.stats.pruned += 1;
            return false;
        }
        if exceeds(self.adj, self.kind, next, self.all & !next, self.w, None) {
            meter.stats.pruned += 1;
            self.bury(next);
            return false;
        }
        true
    }

    fn dfs(&mut self, meter: &mut Meter<'_>) -> Step {
        if self.prefix.len() == self.order.len() {
            return Step::Found;
        }
        for i in 0..self.order.len() {
            let v = self.order[i];
            if self.set & bit(v) != 0 {
                continue;
            }
            if meter.tick() {
                return Step::Stopped;
            }
            if !self.admissible(v, meter) {
                continue;
            }
            self.push(v);
            match self.dfs(meter) {
                Step::NotFound => {}
                other => return other,
            }
            let set = self.set;
            self.pop();
            if set.count_ones() >= 2 {
                self.bury(set);
            }
        }
        Step::NotFound
    }

    fn collect(&mut self, limit: usize, out: &mut Vec<Vec<usize>>, meter: &mut Meter<'_>) -> Step {
        if self.prefix.len() == limit {
            out.push(self.prefix.clone());
            return Step::NotFound;
        }
        for i in 0..self.order.len() {
            let v = self.order[i];
            if self.set & bit(v) != 0 {
                continue;
            }
            if meter.tick() {
                return Step::Stopped;
            }
            if !self.admissible(v, meter) {
                continue;
            }
            self.push(v);
            if self.collect(limit, out, meter) == Step::Stopped {
                return Step::Stopped;
            }
            self.pop();
        }
        Step::NotFound
    }
}

/// Vertices by descending degree, ties broken by name.
fn insertion_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then_with(|| g.name(a).cmp(g.name(b))));
    order
}

enum Found {
    Tree(Vec<(usize, usize)>),
    Order(Vec<usize>),
}

/// Runs `work` on branches `0..branches`, possibly in parallel, returning the
/// solution of the lowest-indexed successful branch.
fn fan_out<F>(branches: usize, threads: usize, ctl: &Control, work: F) -> (Option<Found>, SearchStats)
where
    F: Fn(usize, &mut Meter<'_>) -> Option<Found> + Sync,
{
    let next = AtomicUsize::new(0);
    let results = std::sync::Mutex::new(Vec::<(usize, Found)>::new());
    let total = std::sync::Mutex::new(SearchStats::default());
    let worker = || {
        loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            if i >= branches || ctl.stopped() || ctl.best.load(Ordering::Relaxed) < i {
                break;
            }
            let mut meter = Meter::new(ctl, i);
            let found = work(i, &mut meter);
            let stats = meter.finish();
            total.lock().unwrap().absorb(&stats);
            if let Some(f) = found {
                ctl.best.fetch_min(i, Ordering::Relaxed);
                results.lock().unwrap().push((i, f));
            }
        }
    };
    if threads <= 1 || branches <= 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads.min(branches) {
                s.spawn(worker);
            }
        });
    }
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(i, _)| *i);
    let best = results.into_iter().next().map(|(_, f)| f);
    (best, total.into_inner().unwrap())
}

enum Inner {
    Yes(BranchDecomposition),
    No,
    Stopped(Exhaustion),
}

fn decide_inner(g: &Graph, p: WidthParam, w: usize, ctl: &Control, threads: usize, stats: &mut SearchStats) -> Inner {
    let n = g.vertex_count();
    let leaf_max = (0..n).map(|v| leaf_cut_value(g, v)).max().unwrap_or(0);
    if leaf_max > w {
        return Inner::No;
    }
    if n <= 3 {
        let order = TotalOrder::new(g.names().iter().cloned()).expect("distinct names");
        return Inner::Yes(caterpillar_from_order(&order));
    }
    let adj = g.adjacency();
    let order = insertion_order(g);
    ctl.reset_best();

    // split the search into independent branches when running in parallel
    let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
    if threads > 1 {
        let base = if p.linear { 0 } else { 3 };
        let mut limit = base + 1;
        while limit < n - 1 {
            let mut meter = Meter::new(ctl, 0);
            let mut out = Vec::new();
            let step = if p.linear {
                OrderSearch::new(adj, p.kind, w, &order).collect(limit, &mut out, &mut meter)
            } else {
                let mut sink = Some((limit, Vec::new()));
                let step = TreeSearch::new(adj, p.kind, w, &order).run(&[], &mut meter, &mut sink);
                out = sink.unwrap().1;
                step
            };
            stats.absorb(&meter.finish());
            if step == Step::Stopped {
                return Inner::Stopped(ctl.exhaustion().unwrap_or(Exhaustion::TimeLimit));
            }
            prefixes = out;
            if prefixes.is_empty() {
                return Inner::No;
            }
            if prefixes.len() >= threads * 8 {
                break;
            }
            limit += 1;
        }
    }

    let (found, worked) = fan_out(prefixes.len(), threads, ctl, |i, meter| {
        let prefix = &prefixes[i];
        if p.linear {
            let mut s = OrderSearch::new(adj, p.kind, w, &order);
            for &v in prefix {
                s.push(v);
            }
            (s.dfs(meter) == Step::Found).then(|| Found::Order(s.prefix.clone()))
        } else {
            let mut s = TreeSearch::new(adj, p.kind, w, &order);
            (s.run(prefix, meter, &mut None) == Step::Found).then(|| Found::Tree(s.choices.clone()))
        }
    });
    stats.absorb(&worked);

    match found {
        Some(Found::Order(seq)) => {
            let names = seq.iter().map(|&v| g.name(v).to_string());
            Inner::Yes(caterpillar_from_order(&TotalOrder::new(names).expect("permutation")))
        }
        Some(Found::Tree(choices)) => {
            let mut s = TreeSearch::new(adj, p.kind, w, &order);
            for (v, e) in choices {
                s.push(v, e);
            }
            Inner::Yes(s.tree.to_decomposition(g.names()))
        }
        None => match ctl.exhaustion() {
            Some(reason) => Inner::Stopped(reason),
            None => Inner::No,
        },
    }
}

fn report_for(g: &Graph, t: &BranchDecomposition, p: WidthParam, stats: SearchStats) -> WidthReport {
    let mut report = decomposition_width(g, t, p).expect("search builds valid decompositions");
    report.stats = stats;
    report
}

/// Decides whether `g` has a decomposition (a caterpillar when `p.linear`)
/// all of whose cuts have value at most `w`.
pub fn decide_width_leq(g: &Graph, p: WidthParam, w: usize, budget: &Budget) -> Decision {
    let ctl = Control::new(budget);
    let mut stats = SearchStats::default();
    let inner = decide_inner(g, p, w, &ctl, budget.threads, &mut stats);
    stats.elapsed = ctl.start.elapsed();
    match inner {
        Inner::Yes(t) => Decision::Yes(report_for(g, &t, p, stats)),
        Inner::No => Decision::No(stats),
        Inner::Stopped(reason) => Decision::Inconclusive { reason, stats },
    }
}

/// Optimal width with a witness, by deciding `w = 0, 1, 2, ...` in turn under
/// one shared budget.
pub fn exact_width(g: &Graph, p: WidthParam, budget: &Budget) -> ExactWidth {
    let ctl = Control::new(budget);
    let mut stats = SearchStats::default();
    let mut w = 0;
    loop {
        match decide_inner(g, p, w, &ctl, budget.threads, &mut stats) {
            Inner::Yes(t) => {
                stats.elapsed = ctl.start.elapsed();
                let report = report_for(g, &t, p, stats);
                debug_assert_eq!(report.width, w);
                return ExactWidth::Solved(report);
            }
            Inner::No => w += 1,
            Inner::Stopped(reason) => {
                stats.elapsed = ctl.start.elapsed();
                return ExactWidth::Inconclusive {
                    at_width: w,
                    reason,
                    stats,
                };
            }
        }
    }
}
