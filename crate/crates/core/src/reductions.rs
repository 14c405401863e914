//! Gadget graphs built from quartet instances, and the decompositions that
//! witness small width when the instance is satisfiable.
//!
//! Vertex names: `p:<point>` for point vertices, `u:<point>:<q>` and
//! `g:<point>:<q>` for the per-quartet copies (`q` is the quartet index) and
//! `omega` for the extra vertex of the H graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decomp::{caterpillar_from_order, BranchDecomposition, TotalOrder};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::uqc::UqcInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Point,
    U,
    Gamma,
    Omega,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRole {
    pub role: Role,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quartet_index: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gadget {
    #[serde(rename = "sim")]
    Sim,
    #[serde(rename = "mim")]
    Mim,
    #[serde(rename = "mimH")]
    MimH,
}

impl std::str::FromStr for Gadget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sim" => Ok(Gadget::Sim),
            "mim" => Ok(Gadget::Mim),
            "mimH" => Ok(Gadget::MimH),
            other => Err(Error::Invalid(format!(
                "unknown gadget `{other}` (expected sim, mim or mimH)"
            ))),
        }
    }
}

/// A gadget graph with the role of each vertex.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub gadget: Gadget,
    pub graph: Graph,
    pub roles: BTreeMap<String, VertexRole>,
}

impl Reduction {
    pub fn role(&self, vertex: &str) -> Option<&VertexRole> {
        self.roles.get(vertex)
    }

    /// Vertices with the given role, in graph order.
    pub fn vertices_with(&self, role: Role) -> Vec<&str> {
        self.graph
            .names()
            .iter()
            .filter(|v| self.roles[v.as_str()].role == role)
            .map(String::as_str)
            .collect()
    }
}

pub fn point_vertex(p: &str) -> String {
    format!("p:{p}")
}

pub fn u_vertex(p: &str, q: usize) -> String {
    format!("u:{p}:{q}")
}

pub fn gamma_vertex(p: &str, q: usize) -> String {
    format!("g:{p}:{q}")
}

pub const OMEGA: &str = "omega";

struct Builder {
    graph: Graph,
    roles: BTreeMap<String, VertexRole>,
}

impl Builder {
    fn new() -> Self {
        Self {
            graph: Graph::new(),
            roles: BTreeMap::new(),
        }
    }

    fn vertex(&mut self, name: String, role: Role, point: Option<&str>, q: Option<usize>) -> Result<()> {
        self.graph.add_vertex(&name)?;
        self.roles.insert(
            name,
            VertexRole {
                role,
                point: point.map(String::from),
                quartet_index: q,
            },
        );
        Ok(())
    }

    fn edge(&mut self, a: &str, b: &str) -> Result<()> {
        self.graph.add_edge(a, b)
    }

    fn finish(self, gadget: Gadget) -> Reduction {
        Reduction {
            gadget,
            graph: self.graph,
            roles: self.roles,
        }
    }
}

/// Point vertices, then the `u` copies of every quartet with each quartet's
/// two paths `p_i u_i u_j p_j` and `p_k u_k u_l p_l`, and all `u`-`u` edges
/// between different quartets.
fn base(inst: &UqcInstance) -> Result<Builder> {
    let mut b = Builder::new();
    for p in inst.points() {
        b.vertex(point_vertex(p), Role::Point, Some(p), None)?;
    }
    for (qi, q) in inst.quartets().iter().enumerate() {
        for p in q.points() {
            b.vertex(u_vertex(p, qi), Role::U, Some(p), Some(qi))?;
        }
        for [x, y] in q.pairs() {
            b.edge(&point_vertex(x), &u_vertex(x, qi))?;
            b.edge(&u_vertex(x, qi), &u_vertex(y, qi))?;
            b.edge(&u_vertex(y, qi), &point_vertex(y))?;
        }
    }
    let qs = inst.quartets();
    for q1 in 0..qs.len() {
        for q2 in q1 + 1..qs.len() {
            for x in qs[q1].points() {
                for y in qs[q2].points() {
                    b.edge(&u_vertex(x, q1), &u_vertex(y, q2))?;
                }
            }
        }
    }
    Ok(b)
}

pub fn sim_gadget(inst: &UqcInstance) -> Result<Reduction> {
    Ok(base(inst)?.finish(Gadget::Sim))
}

fn mim_builder(inst: &UqcInstance) -> Result<Builder> {
    let mut b = base(inst)?;
    let qs = inst.quartets();
    for (qi, q) in qs.iter().enumerate() {
        for p in q.points() {
            b.vertex(gamma_vertex(p, qi), Role::Gamma, Some(p), Some(qi))?;
            b.edge(&point_vertex(p), &gamma_vertex(p, qi))?;
        }
    }
    let gammas: Vec<String> = qs
        .iter()
        .enumerate()
        .flat_map(|(qi, q)| q.points().map(|p| gamma_vertex(p, qi)))
        .collect();
    for i in 0..gammas.len() {
        for j in i + 1..gammas.len() {
            b.edge(&gammas[i], &gammas[j])?;
        }
    }
    for (q1, a) in qs.iter().enumerate() {
        for (q2, c) in qs.iter().enumerate() {
            if q1 == q2 {
                continue;
            }
            for x in a.points() {
                for y in c.points() {
                    b.edge(&u_vertex(x, q1), &gamma_vertex(y, q2))?;
                }
            }
        }
    }
    Ok(b)
}

pub fn mim_gadget(inst: &UqcInstance) -> Result<Reduction> {
    Ok(mim_builder(inst)?.finish(Gadget::Mim))
}

/// The mim gadget plus `omega`, adjacent to every `u` vertex.
pub fn mim_gadget_h(inst: &UqcInstance) -> Result<Reduction> {
    let mut b = mim_builder(inst)?;
    b.vertex(OMEGA.to_string(), Role::Omega, None, None)?;
    for (qi, q) in inst.quartets().iter().enumerate() {
        for p in q.points() {
            b.edge(OMEGA, &u_vertex(p, qi))?;
        }
    }
    Ok(b.finish(Gadget::MimH))
}

pub fn build(inst: &UqcInstance, gadget: Gadget) -> Result<Reduction> {
    match gadget {
        Gadget::Sim => sim_gadget(inst),
        Gadget::Mim => mim_gadget(inst),
        Gadget::MimH => mim_gadget_h(inst),
    }
}

fn check_order(inst: &UqcInstance, cat_order: &TotalOrder) -> Result<()> {
    if !inst.satisfied_by_order(cat_order)? {
        let bad = inst
            .quartets()
            .iter()
            .find(|q| !q.is_satisfied_by_order(cat_order).unwrap_or(false))
            .map(ToString::to_string)
            .unwrap_or_default();
        return Err(Error::QuartetViolated(bad));
    }
    Ok(())
}

/// Quartet indices containing each point, in index order.
fn quartets_of(inst: &UqcInstance, p: &str) -> Vec<usize> {
    inst.quartets()
        .iter()
        .enumerate()
        .filter(|(_, q)| q.points().contains(&p))
        .map(|(i, _)| i)
        .collect()
}

/// Linear order of the sim gadget built from a satisfying point order: each
/// point vertex is flanked by its `u` copies, a copy going right of the point
/// when the point's pair comes first in the order and left otherwise.
pub fn witness_order_sim(inst: &UqcInstance, cat_order: &TotalOrder) -> Result<TotalOrder> {
    check_order(inst, cat_order)?;
    let pos = |p: &str| cat_order.position(p).unwrap();
    let mut out = Vec::new();
    for p in cat_order.as_slice() {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for qi in quartets_of(inst, p) {
            let [first, second] = inst.quartets()[qi].pairs();
            let (own, other) = if first.contains(p) { (first, second) } else { (second, first) };
            let own_max = pos(&own[0]).max(pos(&own[1]));
            let other_min = pos(&other[0]).min(pos(&other[1]));
            if own_max < other_min {
                right.push(u_vertex(p, qi));
            } else {
                left.push(u_vertex(p, qi));
            }
        }
        out.extend(left);
        out.push(point_vertex(p));
        out.extend(right);
    }
    TotalOrder::new(out)
}

/// The `u` then `gamma` copies of a point, by quartet index.
fn block_tail(inst: &UqcInstance, p: &str) -> Vec<String> {
    let qs = quartets_of(inst, p);
    qs.iter()
        .map(|&q| u_vertex(p, q))
        .chain(qs.iter().map(|&q| gamma_vertex(p, q)))
        .collect()
}

/// Linear order of the mim gadget: points in the given order, each followed
/// by its `u` copies and then its `gamma` copies.
pub fn witness_order_mim(inst: &UqcInstance, cat_order: &TotalOrder) -> Result<TotalOrder> {
    check_order(inst, cat_order)?;
    let mut out = Vec::new();
    for p in cat_order.as_slice() {
        out.push(point_vertex(p));
        out.extend(block_tail(inst, p));
    }
    TotalOrder::new(out)
}

/// Decomposition of the H graph: the caterpillar on the point vertices, with
/// `omega` forming a cherry with the first point and every point vertex
/// replaced by a caterpillar hanging its copies.
pub fn witness_tree_h(inst: &UqcInstance, cat_order: &TotalOrder) -> Result<BranchDecomposition> {
    check_order(inst, cat_order)?;
    let pts = TotalOrder::new(cat_order.as_slice().iter().map(|p| point_vertex(p)))?;
    let mut t = caterpillar_from_order(&pts);
    let insert_at = |t: &mut BranchDecomposition, at: &str, label: &str| -> Result<()> {
        let e = t.leaf_edge(at);
        t.insert_leaf(e, label)?;
        Ok(())
    };
    if let Some(first) = pts.as_slice().first() {
        insert_at(&mut t, first, OMEGA)?;
    } else {
        t.insert_leaf(None, OMEGA)?;
    }
    for p in cat_order.as_slice() {
        let mut prev = point_vertex(p);
        for x in block_tail(inst, p) {
            insert_at(&mut t, &prev, &x)?;
            prev = x;
        }
    }
    Ok(t)
}
