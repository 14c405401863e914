//! Brute-force reference implementations shared by the integration tests.
//! None of them call into the pruned searches or matching kernels.

#![allow(dead_code)]

use std::collections::HashMap;

use widthforge_core::{
    caterpillar_from_order, cuts_of, enumerate_orders, enumerate_ternary_trees, BranchDecomposition,
    CutKind, Graph, UqcInstance, WidthParam,
};

/// Which edges break inducedness of a cross matching.
#[derive(Clone, Copy)]
enum Blocking {
    /// only edges between the two sides
    Cross,
    /// every edge
    All,
    /// every edge except those inside the given set
    AllBut(u64),
}

fn blocks(g: &Graph, x: usize, y: usize, rule: Blocking, a: u64) -> bool {
    if !g.adjacent(x, y) {
        return false;
    }
    let in_a = |v: usize| a >> v & 1 == 1;
    match rule {
        Blocking::Cross => in_a(x) != in_a(y),
        Blocking::All => true,
        Blocking::AllBut(skip) => !(skip >> x & 1 == 1 && skip >> y & 1 == 1),
    }
}

/// Largest set of pairwise disjoint cross edges with no blocking edge between
/// two of them, by trying every subset of cross edges.
fn brute_matching(g: &Graph, a: u64, b: u64, rule: Blocking) -> usize {
    let cross: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| {
            let (ua, va) = (a >> u & 1 == 1, a >> v & 1 == 1);
            let (ub, vb) = (b >> u & 1 == 1, b >> v & 1 == 1);
            (ua && vb) || (ub && va)
        })
        .collect();
    let k = cross.len();
    assert!(k <= 20, "too many cross edges for brute force");
    let mut best = 0;
    for mask in 0u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let chosen: Vec<(usize, usize)> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| cross[i]).collect();
        let ok = chosen.iter().enumerate().all(|(i, &(x1, y1))| {
            chosen[i + 1..].iter().all(|&(x2, y2)| {
                let disjoint = x1 != x2 && x1 != y2 && y1 != x2 && y1 != y2;
                disjoint
                    && [(x1, x2), (x1, y2), (y1, x2), (y1, y2)]
                        .iter()
                        .all(|&(p, q)| !blocks(g, p, q, rule, a))
            })
        });
        if ok {
            best = size;
        }
    }
    best
}

/// Cut value of `(a, b)` straight from the definitions.
pub fn brute_cut(g: &Graph, a: u64, b: u64, kind: CutKind) -> usize {
    let upper = |x: u64, rest: u64| brute_matching(g, x, rest, Blocking::AllBut(rest));
    match kind {
        CutKind::Mim => brute_matching(g, a, b, Blocking::Cross),
        CutKind::Sim => brute_matching(g, a, b, Blocking::All),
        CutKind::Omim => upper(a, b).min(upper(b, a)),
        CutKind::OmimMax => upper(a, b).max(upper(b, a)),
    }
}

/// Width of one decomposition using [`brute_cut`], memoised by cut.
pub fn brute_tree_width(
    g: &Graph,
    t: &BranchDecomposition,
    kind: CutKind,
    memo: &mut HashMap<u64, usize>,
) -> usize {
    let all = g.all();
    cuts_of(t, g)
        .unwrap()
        .into_iter()
        .map(|(_, c)| {
            let a = c.side_a();
            let key = a.min(all & !a);
            *memo
                .entry(key)
                .or_insert_with(|| brute_cut(g, key, all & !key, kind))
        })
        .max()
        .unwrap_or(0)
}

/// Minimum width over every ternary tree (or every caterpillar).
pub fn naive_width(g: &Graph, p: WidthParam) -> usize {
    let mut memo = HashMap::new();
    let names = g.names();
    if p.linear {
        enumerate_orders(names, true)
            .map(|o| brute_tree_width(g, &caterpillar_from_order(&o), p.kind, &mut memo))
            .min()
            .unwrap_or(0)
    } else {
        enumerate_ternary_trees(names)
            .map(|t| brute_tree_width(g, &t, p.kind, &mut memo))
            .min()
            .unwrap_or(0)
    }
}

/// Whether some tree edge separates `{a, b}` from `{c, d}`.
pub fn split_displays(t: &BranchDecomposition, pts: [&str; 4]) -> bool {
    let [a, b, c, d] = pts;
    t.edges().into_iter().any(|e| {
        let side = t.side_of(e);
        let has = |x: &str| side.contains(&x);
        (has(a) && has(b) && !has(c) && !has(d)) || (!has(a) && !has(b) && has(c) && has(d))
    })
}

/// Satisfiability by enumerating every tree (or caterpillar) on the points.
pub fn naive_uqc(inst: &UqcInstance, caterpillar: bool) -> bool {
    let check = |t: &BranchDecomposition| inst.quartets().iter().all(|q| split_displays(t, q.points()));
    if caterpillar {
        enumerate_orders(inst.points(), true).any(|o| check(&caterpillar_from_order(&o)))
    } else {
        enumerate_ternary_trees(inst.points()).any(|t| check(&t))
    }
}

/// Whether `g` has an induced cycle on at least `min_len` vertices, by
/// checking every vertex subset for being a single 2-regular component.
pub fn brute_has_long_hole(g: &Graph, min_len: usize) -> bool {
    let n = g.vertex_count();
    assert!(n <= 22);
    let adj = g.adjacency();
    (0u64..1 << n).any(|s| {
        if (s.count_ones() as usize) < min_len {
            return false;
        }
        let two_regular = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .all(|v| (adj[v] & s).count_ones() == 2);
        if !two_regular {
            return false;
        }
        let start = s.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & s & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == s
    })
}

/// Every graph on `n` labelled vertices `v0..`.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let mut g = Graph::with_vertices(names.clone()).unwrap();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(&names[u], &names[v]).unwrap();
            }
        }
        g
    })
}

pub fn names(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

pub fn figure_one() -> (Graph, u64) {
    let vs = names("a1 a2 a3 a4 b1 b2 b3 b4");
    let edges = [
        ("a1", "b1"),
        ("a2", "b2"),
        ("a3", "b3"),
        ("a4", "b4"),
        ("a1", "a2"),
        ("a1", "a3"),
        ("a1", "a4"),
        ("b2", "b3"),
        ("b3", "b4"),
        ("b4", "b2"),
    ];
    let e: Vec<(String, String)> = edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let g = Graph::from_edges(&vs, &e).unwrap();
    let a = g.set_of(&vs[..4]).unwrap();
    (g, a)
}
