//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Budgets for the two long searches can be lowered with
//! `WIDTHFORGE_BUDGET_SECS`; criterion 5 then fails if it cannot finish,
//! criterion 7 accepts an inconclusive answer either way.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use widthforge_core::gen::{random_graph, random_uqc};
use widthforge_core::harness::{overall, verify_structure, Status};
use widthforge_core::reductions::{
    gamma_vertex, mim_gadget, mim_gadget_h, point_vertex, sim_gadget, u_vertex, witness_order_mim,
    witness_order_sim, witness_tree_h,
};
use widthforge_core::uqc::solve_caterpillar_order;
use widthforge_core::widths::{decide_width_leq, decomposition_width, exact_width, Budget, Decision, ExactWidth};
use widthforge_core::{
    caterpillar_from_order, cut_value, enumerate_ternary_trees, has_induced_cycle_geq, max_induced_matching,
    solve_uqc, Cut, CutKind, Graph, Quartet, TotalOrder, UqcInstance, WidthParam,
};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget(default_secs: u64) -> Budget {
    let secs = std::env::var("WIDTHFORGE_BUDGET_SECS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default_secs);
    Budget::default().with_time(Duration::from_secs(secs))
}

fn one_quartet() -> UqcInstance {
    "points: a b c d\na b | c d\n".parse().unwrap()
}

fn two_conflicting() -> UqcInstance {
    "points: a b c d\na b | c d\na c | b d\n".parse().unwrap()
}

fn width_of(r: ExactWidth) -> Result<usize, String> {
    r.width().ok_or_else(|| "exact width ran out of budget".to_string())
}

fn chain_kinds() -> [CutKind; 4] {
    [CutKind::Mim, CutKind::OmimMax, CutKind::Omim, CutKind::Sim]
}

fn c1_figure_one() -> Outcome {
    let (g, a) = figure_one();
    let cut = Cut::from_side(&g, a).unwrap();
    let got: Vec<usize> = chain_kinds().iter().map(|&k| cut_value(&g, &cut, k).unwrap()).collect();
    ensure(got == [4, 3, 2, 1], || format!("library values {got:?}"))?;
    let brute: Vec<usize> = chain_kinds().iter().map(|&k| brute_cut(&g, a, g.all() & !a, k)).collect();
    ensure(brute == [4, 3, 2, 1], || format!("brute-force values {brute:?}"))?;
    Ok("(mim, Omim, omim, sim) = (4, 3, 2, 1), brute force agrees".into())
}

/// Chain on every cut of `g`, and linear >= general per kind plus the chain
/// on exact widths.
fn chain_violations(g: &Graph) -> Result<usize, String> {
    let all = g.all();
    let n = g.vertex_count();
    let mut bad = 0;
    for a in 1..(1u64 << n) - 1 {
        if a & 1 == 0 {
            continue;
        }
        let cut = Cut::from_side(g, a).unwrap();
        let v: Vec<usize> = chain_kinds().iter().map(|&k| cut_value(g, &cut, k).unwrap()).collect();
        if !(v[0] >= v[1] && v[1] >= v[2] && v[2] >= v[3]) {
            bad += 1;
        }
    }
    let _ = all;
    let b = Budget::default();
    let mut general = Vec::new();
    for kind in chain_kinds() {
        let gw = width_of(exact_width(g, WidthParam::general(kind), &b))?;
        let lw = width_of(exact_width(g, WidthParam::linear(kind), &b))?;
        if lw < gw {
            bad += 1;
        }
        general.push(gw);
    }
    if !general.windows(2).all(|w| w[0] >= w[1]) {
        bad += 1;
    }
    Ok(bad)
}

fn c2_chain() -> Outcome {
    let mut graphs = 0;
    let mut bad = 0;
    for n in 1..=5 {
        for g in all_graphs(n) {
            graphs += 1;
            bad += chain_violations(&g)?;
        }
    }
    for seed in 0..200u64 {
        let n = 2 + (seed % 7) as usize;
        let p = [0.25, 0.4, 0.55, 0.7][(seed / 7 % 4) as usize];
        let g = random_graph(n, p, seed).unwrap();
        graphs += 1;
        bad += chain_violations(&g)?;
    }
    ensure(bad == 0, || format!("{bad} violations"))?;
    Ok(format!("{graphs} graphs, zero violations"))
}

fn c3_oracle() -> Outcome {
    let mut checks = 0;
    for seed in 0..50u64 {
        let n = 3 + (seed % 4) as usize;
        let g = random_graph(n, 0.5, 1000 + seed).unwrap();
        for p in WidthParam::all() {
            let fast = width_of(exact_width(&g, p, &Budget::default()))?;
            let slow = naive_width(&g, p);
            ensure(fast == slow, || format!("seed {seed} {p}: pruned {fast}, naive {slow}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} (graph, parameter) pairs match"))
}

fn c4_sim_satisfiable() -> Outcome {
    let inst = one_quartet();
    let red = sim_gadget(&inst).unwrap();
    let order = TotalOrder::new(["a", "b", "c", "d"]).unwrap();
    let w = witness_order_sim(&inst, &order).unwrap();
    let t = caterpillar_from_order(&w);
    let r = decomposition_width(&red.graph, &t, WidthParam::linear(CutKind::OmimMax)).unwrap();
    ensure(r.width == 1, || format!("witness Omim-width {}", r.width))?;
    for kind in [CutKind::Sim, CutKind::Omim, CutKind::OmimMax] {
        for linear in [false, true] {
            let p = WidthParam::new(kind, linear);
            let d = decide_width_leq(&red.graph, p, 1, &Budget::default());
            ensure(d.is_yes(), || format!("{p} <= 1 not decided yes"))?;
        }
    }
    Ok("witness Omim-width 1; width <= 1 decided yes for six variants".into())
}

fn c5_sim_unsatisfiable() -> Outcome {
    let red = sim_gadget(&two_conflicting()).unwrap();
    ensure(red.graph.vertex_count() == 12, || "gadget size".into())?;
    let m = max_induced_matching(&red.graph);
    ensure(m == 2, || format!("max induced matching {m}"))?;
    match decide_width_leq(&red.graph, WidthParam::general(CutKind::Sim), 1, &budget(15 * 60)) {
        Decision::No(s) => Ok(format!(
            "max induced matching 2; sim-width <= 1 refuted by full search ({} nodes, {} pruned, {:.2}s)",
            s.nodes,
            s.pruned,
            s.elapsed.as_secs_f64()
        )),
        Decision::Yes(r) => Err(format!("found decomposition {:?}", r.witness.map(|t| t.to_newick()))),
        Decision::Inconclusive { reason, stats } => Err(format!("inconclusive: {reason:?} after {} nodes", stats.nodes)),
    }
}

fn induced_cycle(g: &Graph, cyc: &[String]) -> bool {
    let idx: Vec<usize> = cyc.iter().map(|v| g.index_of(v).unwrap()).collect();
    let k = idx.len();
    (0..k).all(|i| {
        (0..k).all(|j| {
            let d = i.abs_diff(j);
            i == j || g.adjacent(idx[i], idx[j]) == (d == 1 || d == k - 1)
        })
    })
}

fn c6_mim_satisfiable() -> Outcome {
    let inst = one_quartet();
    let g = mim_gadget(&inst).unwrap().graph;
    let h = mim_gadget_h(&inst).unwrap().graph;
    let order = TotalOrder::new(["a", "b", "c", "d"]).unwrap();
    let lin = caterpillar_from_order(&witness_order_mim(&inst, &order).unwrap());
    let gw = decomposition_width(&g, &lin, WidthParam::linear(CutKind::Mim)).unwrap().width;
    ensure(gw == 2, || format!("G witness linear mim-width {gw}"))?;
    let tree = witness_tree_h(&inst, &order).unwrap();
    let hw = decomposition_width(&h, &tree, WidthParam::general(CutKind::Mim)).unwrap().width;
    ensure(hw == 2, || format!("H witness mim-width {hw}"))?;
    let mut memo = Default::default();
    let bw = brute_tree_width(&h, &tree, CutKind::Mim, &mut memo);
    ensure(bw == 2, || format!("H witness brute-force mim-width {bw}"))?;
    let c6 = vec![
        point_vertex("a"),
        u_vertex("a", 0),
        u_vertex("b", 0),
        point_vertex("b"),
        gamma_vertex("b", 0),
        gamma_vertex("a", 0),
    ];
    ensure(induced_cycle(&g, &c6) && induced_cycle(&h, &c6), || "C6 not induced".into())?;
    ensure(has_induced_cycle_geq(&g, 5).unwrap().is_some(), || "no long hole found".into())?;
    ensure(
        decide_width_leq(&g, WidthParam::general(CutKind::Mim), 1, &Budget::default()).is_no(),
        || "mim-width(G) <= 1 not refuted".into(),
    )?;
    Ok("linear-mim-width(G) = 2 and mim-width(H) = 2 witnessed; induced C6 p-u-u-p-g-g".into())
}

fn c7_mim_unsatisfiable() -> Outcome {
    let g = mim_gadget(&two_conflicting()).unwrap().graph;
    ensure(g.vertex_count() == 20, || "gadget size".into())?;
    match decide_width_leq(&g, WidthParam::linear(CutKind::Mim), 2, &budget(30 * 60)) {
        Decision::No(s) => Ok(format!(
            "linear mim-width <= 2 refuted by full search ({} nodes, {} pruned, {:.2}s)",
            s.nodes,
            s.pruned,
            s.elapsed.as_secs_f64()
        )),
        Decision::Inconclusive { reason, stats } => Ok(format!(
            "inconclusive ({reason:?}) after {} nodes, {} pruned, {:.2}s; never yes",
            stats.nodes,
            stats.pruned,
            stats.elapsed.as_secs_f64()
        )),
        Decision::Yes(r) => Err(format!("returned yes with {:?}", r.witness.map(|t| t.to_newick()))),
    }
}

fn structural_instances() -> Vec<UqcInstance> {
    let mut out = vec![one_quartet(), two_conflicting()];
    out.push("a b | c d\nc e | a f\nb f | d e\n".parse().unwrap());
    for seed in 0..12u64 {
        let points = 4 + (seed % 3) as usize;
        let qs = 1 + (seed % 3) as usize;
        out.push(random_uqc(points, qs, seed).unwrap());
    }
    out
}

fn c8_structure() -> Outcome {
    let instances = structural_instances();
    for inst in &instances {
        ensure(inst.quartets().len() <= 3, || "instance too large".into())?;
        let out = verify_structure(inst).unwrap();
        ensure(overall(&out) == Status::Verified, || format!("{inst:?}: {out:?}"))?;
        let g = sim_gadget(inst).unwrap().graph;
        ensure(!brute_has_long_hole(&g, 5), || "brute force finds a hole".into())?;
        ensure(!brute_has_long_hole(&g.complement(), 5), || "brute force finds an antihole".into())?;
    }
    Ok(format!("{} gadgets: no long holes or antiholes, simplicial points, U non-neighbours", instances.len()))
}

fn c9_quartets() -> Outcome {
    let mut trees = 0;
    for n in 4..=6 {
        let leaves: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        for t in enumerate_ternary_trees(&leaves) {
            trees += 1;
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        for d in c + 1..n {
                            let (a, b, c, d) = (&leaves[a], &leaves[b], &leaves[c], &leaves[d]);
                            let tops = Quartet::topologies(a, b, c, d).unwrap();
                            let lib = tops.iter().filter(|q| q.is_satisfied_by(&t).unwrap()).count();
                            let split = tops.iter().filter(|q| split_displays(&t, q.points())).count();
                            ensure(lib == 1 && split == 1, || format!("{} leaves: {lib}/{split}", t.to_newick()))?;
                        }
                    }
                }
            }
        }
    }
    for seed in 0..100u64 {
        let points = 4 + (seed % 3) as usize;
        let qs = 1 + (seed % 5) as usize;
        let inst = random_uqc(points, qs, 500 + seed).unwrap();
        for caterpillar in [false, true] {
            let got = solve_uqc(&inst, caterpillar);
            let want = naive_uqc(&inst, caterpillar);
            ensure(got.is_some() == want, || format!("seed {seed} caterpillar={caterpillar}"))?;
            if let Some(t) = got {
                ensure(inst.satisfied_by(&t).unwrap(), || "witness violates a quartet".into())?;
            }
        }
        if let Some(o) = solve_caterpillar_order(&inst) {
            ensure(inst.satisfied_by_order(&o).unwrap(), || "order violates a quartet".into())?;
        }
    }
    Ok(format!("exactly one topology on {trees} trees; 100 instances match the naive solver"))
}

fn c10_counts() -> Outcome {
    let mut counts = Vec::new();
    for n in [4, 5, 6] {
        let leaves: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let canon: HashSet<String> = enumerate_ternary_trees(&leaves).map(|t| t.canonical()).collect();
        let total = enumerate_ternary_trees(&leaves).count();
        ensure(canon.len() == total, || format!("{n} leaves: duplicates"))?;
        counts.push(total);
    }
    ensure(counts == [3, 15, 105], || format!("tree counts {counts:?}"))?;
    let inst = two_conflicting();
    let sizes = [
        sim_gadget(&inst).unwrap().graph.vertex_count(),
        mim_gadget(&inst).unwrap().graph.vertex_count(),
        mim_gadget_h(&inst).unwrap().graph.vertex_count(),
    ];
    ensure(sizes == [12, 20, 21], || format!("gadget sizes {sizes:?}"))?;
    for m in 1..=3usize {
        let inst = random_uqc(6, m, 77 + m as u64).unwrap();
        let m = inst.quartets().len();
        let g = sim_gadget(&inst).unwrap().graph;
        let expected = 6 * m + (4 * m) * (4 * m - 1) / 2 - m * 6;
        ensure(g.edge_count() == expected, || format!("sim edges {} vs {expected}", g.edge_count()))?;
    }
    Ok("tree counts 3/15/105; gadget sizes 12/20/21; sim gadget edge counts".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("figure-1 cut values", c1_figure_one),
        ("cut-value chain and linear >= general", c2_chain),
        ("pruned search equals naive enumeration", c3_oracle),
        ("sim gadget, satisfiable instance", c4_sim_satisfiable),
        ("sim gadget, unsatisfiable instance", c5_sim_unsatisfiable),
        ("mim gadgets, satisfiable instance", c6_mim_satisfiable),
        ("mim gadget, unsatisfiable instance", c7_mim_unsatisfiable),
        ("sim gadget structure", c8_structure),
        ("quartet topologies and consistency solver", c9_quartets),
        ("enumeration counts and gadget sizes", c10_counts),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
