//! Pairings of grey half-edges and G-reductions.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{dual_graph, DualGraph, RedGraph};
use crate::error::{Error, Result};
use crate::web::{HalfEdgeId, VertexKind, Web, WebBuilder};

/// Grey half-edges, two per pair, each pair on one face with one end pointing
/// into the face's vertex and one pointing out.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pairing {
    pub pairs: Vec<(HalfEdgeId, HalfEdgeId)>,
}

/// A grey half-edge: the third half-edge at a vertex of a red face whose
/// edge borders no red face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grey {
    pub half_edge: HalfEdgeId,
    /// True when the edge points towards the face (the vertex is a sink).
    pub inward: bool,
    /// Position of the vertex along the face walk.
    pub position: usize,
}

/// Grey half-edges of every red vertex, in face-walk order.
pub fn grey_half_edges(w: &Web, dual: &DualGraph, g: &RedGraph) -> Result<Vec<Vec<Grey>>> {
    let red: BTreeSet<_> = g.faces.iter().copied().collect();
    let mut out = Vec::with_capacity(g.num_vertices());
    for (i, &f) in g.faces.iter().enumerate() {
        let walk = &dual.regions.get(f).walks[0];
        let mut greys = Vec::new();
        for (pos, &d) in walk.iter().enumerate() {
            let prev = walk[(pos + walk.len() - 1) % walk.len()];
            let v = w.vertex_of(d).expect("faces avoid the border");
            let third = w.third_half_edge(v, d, w.twin(prev));
            let sides = [dual.regions.region_of_dart[third], dual.regions.region_of_dart[w.twin(third)]];
            if sides.iter().all(|r| !red.contains(r)) {
                greys.push(Grey { half_edge: third, inward: w.vertex(v).kind == VertexKind::Sink, position: pos });
            }
        }
        if greys.len() != g.external_degree[i] {
            return Err(Error::Contradiction(format!(
                "face {f} has {} grey half-edges but external degree {}",
                greys.len(),
                g.external_degree[i]
            )));
        }
        out.push(greys);
    }
    Ok(out)
}

fn options_for(greys: &[Grey]) -> Result<Vec<Vec<(HalfEdgeId, HalfEdgeId)>>> {
    let h: Vec<HalfEdgeId> = greys.iter().map(|g| g.half_edge).collect();
    Ok(match h.len() {
        0 => vec![vec![]],
        2 => vec![vec![(h[0], h[1])]],
        4 => vec![vec![(h[0], h[1]), (h[2], h[3])], vec![(h[1], h[2]), (h[3], h[0])]],
        n => return Err(Error::Precondition(format!("red graph is not fair: a face has external degree {n}"))),
    })
}

/// Every valid pairing: one per face of external degree 2 or less, two per
/// face of external degree 4.
pub fn enumerate_pairings(w: &Web, g: &RedGraph) -> Result<Vec<Pairing>> {
    let dual = dual_graph(w)?;
    enumerate_pairings_with_dual(w, &dual, g)
}

pub fn enumerate_pairings_with_dual(w: &Web, dual: &DualGraph, g: &RedGraph) -> Result<Vec<Pairing>> {
    if !g.is_fair() {
        return Err(Error::Precondition("pairings need a fair red graph".into()));
    }
    let greys = grey_half_edges(w, dual, g)?;
    let per_face = greys.iter().map(|gs| options_for(gs)).collect::<Result<Vec<_>>>()?;
    let out: Vec<Pairing> = per_face
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| Pairing { pairs: choice.into_iter().flatten().collect() })
        .collect();
    // An empty red graph product yields no tuples; a graph always has a face.
    debug_assert!(!out.is_empty());
    for p in &out {
        check_pairing(&greys, p)?;
    }
    Ok(out)
}

/// Each pair lies on one face, joins an inward and an outward half-edge, and
/// the pairs on a face can be drawn as disjoint chords.
fn check_pairing(greys: &[Vec<Grey>], p: &Pairing) -> Result<()> {
    let mut where_is: HashMap<HalfEdgeId, (usize, Grey)> = HashMap::new();
    for (i, gs) in greys.iter().enumerate() {
        for g in gs {
            where_is.insert(g.half_edge, (i, *g));
        }
    }
    let mut used = BTreeSet::new();
    let mut chords: Vec<Vec<(usize, usize)>> = vec![Vec::new(); greys.len()];
    for &(a, b) in &p.pairs {
        let (Some(&(fa, ga)), Some(&(fb, gb))) = (where_is.get(&a), where_is.get(&b)) else {
            return Err(Error::InvalidPairing(format!("({a},{b}) is not a pair of grey half-edges")));
        };
        if fa != fb {
            return Err(Error::InvalidPairing(format!("({a},{b}) joins two different faces")));
        }
        if ga.inward == gb.inward {
            return Err(Error::InvalidPairing(format!("({a},{b}) joins two half-edges of the same direction")));
        }
        if !used.insert(a) || !used.insert(b) {
            return Err(Error::InvalidPairing(format!("half-edge of ({a},{b}) used twice")));
        }
        chords[fa].push((ga.position.min(gb.position), ga.position.max(gb.position)));
    }
    if used.len() != where_is.len() {
        return Err(Error::InvalidPairing("some grey half-edges are left unpaired".into()));
    }
    for cs in &chords {
        for (x, y) in cs.iter().tuple_combinations() {
            let inside = |p: usize| x.0 < p && p < x.1;
            if inside(y.0) != inside(y.1) {
                return Err(Error::InvalidPairing("pairs on a face cross".into()));
            }
        }
    }
    Ok(())
}

/// Deletes every vertex on a red face and reconnects the grey half-edges
/// according to the pairing.
pub fn g_reduction(w: &Web, g: &RedGraph, p: &Pairing) -> Result<Web> {
    let dual = dual_graph(w)?;
    g_reduction_with_dual(w, &dual, g, p)
}

pub fn g_reduction_with_dual(w: &Web, dual: &DualGraph, g: &RedGraph, p: &Pairing) -> Result<Web> {
    let fresh = RedGraph::new(w, dual, &g.faces)?;
    if fresh != *g {
        return Err(Error::Precondition("red graph does not belong to this web".into()));
    }
    if !g.is_fair() {
        return Err(Error::Precondition("G-reduction needs a fair red graph".into()));
    }
    let greys = grey_half_edges(w, dual, g)?;
    check_pairing(&greys, p)?;
    let dead: BTreeSet<usize> = g
        .faces
        .iter()
        .flat_map(|&f| dual.regions.get(f).walks[0].iter().map(|&d| w.vertex_of(d).expect("interior face")))
        .collect();
    let dead: Vec<usize> = dead.into_iter().collect();
    let mut b = WebBuilder::from_web(w);
    b.splice(&dead, &[], &p.pairs)?;
    Ok(b.finish())
}

/// `2(2#V(G) - (#E(G) + #grey/2))`, the degree of the idempotent foam of
/// `G` over the identity.
pub fn projection_degree_shift(g: &RedGraph, p: &Pairing) -> i64 {
    let grey = 2 * p.pairs.len() as i64;
    2 * (2 * g.num_vertices() as i64 - (g.num_edges() as i64 + grey / 2))
}

/// One stage of a stack: a red graph of the previous stage's output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StackStage {
    pub graph: RedGraph,
    pub pairing: Pairing,
}

pub fn reduce_by_stack(w: &Web, stack: &[StackStage]) -> Result<Web> {
    let mut cur = w.clone();
    for (stage, s) in stack.iter().enumerate() {
        cur = g_reduction(&cur, &s.graph, &s.pairing)
            .map_err(|e| Error::StageMismatch { stage, source: Box::new(e) })?;
    }
    Ok(cur)
}

pub fn stack_level(stack: &[StackStage]) -> i64 {
    stack.iter().map(|s| s.graph.level).sum()
}
