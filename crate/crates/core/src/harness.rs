//! End-to-end checks of the gadget reductions on concrete instances.
//!
//! Each check produces a [`VerificationOutcome`]. A refutation always carries
//! a concrete counterexample; an inconclusive outcome carries the search
//! statistics of the exhausted budget.

use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::cut::CutKind;
use crate::cycles::has_induced_cycle_geq;
use crate::decomp::{caterpillar_from_order, TotalOrder};
use crate::error::Result;
use crate::graph::Graph;
use crate::reductions::{self, Reduction, Role};
use crate::uqc::{solve_caterpillar_order, solve_uqc, UqcInstance};
use crate::widths::{decide_width_leq, decomposition_width, Budget, Decision, WidthParam};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Inconclusive,
    Refuted,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationOutcome {
    pub claim: String,
    pub status: Status,
    pub evidence: Value,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// Refuted if anything was refuted, else inconclusive if anything was.
pub fn overall(outcomes: &[VerificationOutcome]) -> Status {
    outcomes.iter().map(|o| o.status).max().unwrap_or(Status::Verified)
}

struct Recorder {
    out: Vec<VerificationOutcome>,
    last: Instant,
}

impl Recorder {
    fn new() -> Self {
        Self {
            out: Vec::new(),
            last: Instant::now(),
        }
    }

    fn push(&mut self, claim: &str, status: Status, evidence: Value) {
        let now = Instant::now();
        self.out.push(VerificationOutcome {
            claim: claim.to_string(),
            status,
            evidence,
            elapsed: now - self.last,
        });
        self.last = now;
    }

    fn check(&mut self, claim: &str, ok: bool, evidence: Value) {
        let status = if ok { Status::Verified } else { Status::Refuted };
        self.push(claim, status, evidence);
    }

    /// Records a decision that is expected to be `No`.
    fn expect_no(&mut self, claim: &str, decision: Decision) {
        match decision {
            Decision::No(stats) => self.push(claim, Status::Verified, json!({ "answer": "no", "stats": stats })),
            Decision::Yes(report) => self.push(
                claim,
                Status::Refuted,
                json!({ "answer": "yes", "counterexample": report }),
            ),
            Decision::Inconclusive { reason, stats } => self.push(
                claim,
                Status::Inconclusive,
                json!({ "answer": "inconclusive", "reason": reason, "stats": stats }),
            ),
        }
    }

    fn finish(self) -> Vec<VerificationOutcome> {
        self.out
    }
}

/// How the instance can be satisfied.
enum Satisfiable {
    Caterpillar(TotalOrder),
    TreeOnly,
    No,
}

fn classify(inst: &UqcInstance) -> Satisfiable {
    if let Some(order) = solve_caterpillar_order(inst) {
        return Satisfiable::Caterpillar(order);
    }
    match solve_uqc(inst, false) {
        Some(_) => Satisfiable::TreeOnly,
        None => Satisfiable::No,
    }
}

fn tree_only(rec: &mut Recorder, prefix: &str) {
    rec.push(
        &format!("{prefix}.applicable"),
        Status::Inconclusive,
        json!({
            "reason": "satisfiable, but by no caterpillar; the upper bound needs a caterpillar and the lower bound needs unsatisfiability"
        }),
    );
}

/// Checks on the sim gadget: width 1 for all six sim/omim/Omim variants when
/// a caterpillar satisfies the quartets, sim-width exactly 2 when nothing does.
pub fn verify_sim_proposition(inst: &UqcInstance, budget: &Budget) -> Result<Vec<VerificationOutcome>> {
    let mut rec = Recorder::new();
    let red = reductions::sim_gadget(inst)?;
    let g = &red.graph;

    if !inst.quartets().is_empty() {
        let m = crate::cut::max_induced_matching(g);
        rec.check(
            "sim.max-induced-matching-at-most-2",
            m <= 2,
            json!({ "max_induced_matching": m }),
        );
    }

    match classify(inst) {
        Satisfiable::Caterpillar(order) => {
            let witness = reductions::witness_order_sim(inst, &order)?;
            let t = caterpillar_from_order(&witness);
            let expected = usize::from(g.edge_count() > 0);
            let omim = decomposition_width(g, &t, WidthParam::linear(CutKind::OmimMax))?;
            let claim = if expected == 1 {
                "sim.witness-linear-Omim-width-1"
            } else {
                "sim.vacuous-edgeless-width-0"
            };
            rec.check(
                claim,
                omim.width == expected,
                json!({ "point_order": order, "witness_order": witness, "report": omim }),
            );
            let mut widths = serde_json::Map::new();
            let mut all_ok = true;
            for kind in [CutKind::Sim, CutKind::Omim, CutKind::OmimMax] {
                for linear in [true, false] {
                    let p = WidthParam::new(kind, linear);
                    let w = decomposition_width(g, &t, p)?.width;
                    // any edge forces a leaf cut of value 1
                    all_ok &= w == expected;
                    widths.insert(p.to_string(), json!(w));
                }
            }
            rec.check(
                "sim.six-variants-equal-witness-bound",
                all_ok,
                json!({ "expected": expected, "widths": widths, "sim_width": expected }),
            );
        }
        Satisfiable::TreeOnly => tree_only(&mut rec, "sim"),
        Satisfiable::No => {
            let d = decide_width_leq(g, WidthParam::general(CutKind::Sim), 1, budget);
            rec.expect_no("sim.no-decomposition-of-sim-width-1", d);
        }
    }
    Ok(rec.finish())
}

/// The six-cycle `p_i u_i u_j p_j g_j g_i` of quartet `qi`, checked to be
/// induced in `g`.
fn quartet_c6(inst: &UqcInstance, red: &Reduction, qi: usize) -> Option<Vec<String>> {
    let [i, j, _, _] = inst.quartets()[qi].points();
    let cyc = vec![
        reductions::point_vertex(i),
        reductions::u_vertex(i, qi),
        reductions::u_vertex(j, qi),
        reductions::point_vertex(j),
        reductions::gamma_vertex(j, qi),
        reductions::gamma_vertex(i, qi),
    ];
    is_induced_cycle(&red.graph, &cyc).then_some(cyc)
}

fn is_induced_cycle(g: &Graph, cyc: &[String]) -> bool {
    let Ok(idx) = cyc.iter().map(|v| g.require(v)).collect::<Result<Vec<usize>>>() else {
        return false;
    };
    let k = idx.len();
    (0..k).all(|a| {
        (a + 1..k).all(|b| {
            let consecutive = b == a + 1 || (a == 0 && b == k - 1);
            g.adjacent(idx[a], idx[b]) == consecutive
        })
    })
}

/// Checks on the mim gadgets G and H: width 2 witnesses when a caterpillar
/// satisfies the quartets, no width-2 decompositions when nothing does.
pub fn verify_mim_proposition(inst: &UqcInstance, budget: &Budget) -> Result<Vec<VerificationOutcome>> {
    let mut rec = Recorder::new();
    let g_red = reductions::mim_gadget(inst)?;
    let h_red = reductions::mim_gadget_h(inst)?;

    if !inst.quartets().is_empty() {
        let g_cycles: Vec<Option<Vec<String>>> =
            (0..inst.quartets().len()).map(|q| quartet_c6(inst, &g_red, q)).collect();
        let h_cycles: Vec<Option<Vec<String>>> =
            (0..inst.quartets().len()).map(|q| quartet_c6(inst, &h_red, q)).collect();
        let ok = g_cycles.iter().chain(&h_cycles).all(Option::is_some);
        rec.check(
            "mim.induced-C6-per-quartet",
            ok,
            json!({ "G": g_cycles, "H": h_cycles }),
        );
    }

    match classify(inst) {
        Satisfiable::Caterpillar(order) => {
            let expected = if inst.quartets().is_empty() { 0 } else { 2 };
            let w_order = reductions::witness_order_mim(inst, &order)?;
            let g_report = decomposition_width(
                &g_red.graph,
                &caterpillar_from_order(&w_order),
                WidthParam::linear(CutKind::Mim),
            )?;
            rec.check(
                "mim.G-witness-linear-mim-width-2",
                g_report.width == expected,
                json!({ "expected": expected, "point_order": order, "witness_order": w_order, "report": g_report }),
            );
            let tree = reductions::witness_tree_h(inst, &order)?;
            let h_report = decomposition_width(&h_red.graph, &tree, WidthParam::general(CutKind::Mim))?;
            rec.check(
                "mim.H-witness-mim-width-2",
                h_report.width == expected,
                json!({ "expected": expected, "report": h_report }),
            );
        }
        Satisfiable::TreeOnly => tree_only(&mut rec, "mim"),
        Satisfiable::No => {
            let d = decide_width_leq(&g_red.graph, WidthParam::linear(CutKind::Mim), 2, budget);
            rec.expect_no("mim.G-no-linear-mim-width-2", d);
            let d = decide_width_leq(&h_red.graph, WidthParam::general(CutKind::Mim), 2, budget);
            rec.expect_no("mim.H-no-mim-width-2", d);
        }
    }
    Ok(rec.finish())
}

/// Structural facts about the sim gadget: no induced cycle of length at least
/// five in it or its complement, simplicial point vertices, and each `u`
/// vertex missing exactly the other pair of its own quartet within `U`.
pub fn verify_structure(inst: &UqcInstance) -> Result<Vec<VerificationOutcome>> {
    let mut rec = Recorder::new();
    let red = reductions::sim_gadget(inst)?;
    let g = &red.graph;

    let hole = has_induced_cycle_geq(g, 5)?;
    rec.check("structure.no-long-hole", hole.is_none(), json!({ "cycle": hole }));
    let antihole = has_induced_cycle_geq(&g.complement(), 5)?;
    rec.check(
        "structure.no-long-antihole",
        antihole.is_none(),
        json!({ "complement_cycle": antihole }),
    );

    let mut not_simplicial = Vec::new();
    for p in red.vertices_with(Role::Point) {
        if !g.is_simplicial(p)? {
            not_simplicial.push(p.to_string());
        }
    }
    rec.check(
        "structure.point-vertices-simplicial",
        not_simplicial.is_empty(),
        json!({ "not_simplicial": not_simplicial }),
    );

    let us = red.vertices_with(Role::U);
    let mut bad = Vec::new();
    for &u in &us {
        let ui = g.require(u)?;
        let qi = red.roles[u].quartet_index;
        let missing: Vec<&str> = us
            .iter()
            .copied()
            .filter(|&v| v != u && !g.adjacent(ui, g.require(v).unwrap()))
            .collect();
        let ok = missing.len() == 2 && missing.iter().all(|v| red.roles[*v].quartet_index == qi);
        if !ok {
            bad.push(json!({ "vertex": u, "non_neighbours": missing }));
        }
    }
    rec.check(
        "structure.u-non-neighbours",
        bad.is_empty(),
        json!({ "u_vertices": us.len(), "violations": bad }),
    );
    Ok(rec.finish())
}
