//! Red graphs: induced subgraphs of the dual graph on disk faces.

mod orient;
mod pairing;

use std::collections::{BTreeSet, VecDeque};
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::web::{RegionId, Regions, Web};

pub use orient::{
    count_fitting_orientations, find_fitting_orientation, find_fitting_orientation_bruteforce, is_admissible,
    is_exact, is_strongly_connected, minimal_admissible_subgraph, upgrade_to_admissible, Orientation,
};
pub use pairing::{
    enumerate_pairings, g_reduction, projection_degree_shift, reduce_by_stack, stack_level, Pairing, StackStage,
};

/// Faces beyond this many make subset enumeration refuse to run.
pub const FACE_GUARD: usize = 24;

/// One vertex per region, one edge per web edge (indexed like `Web::edges`).
#[derive(Clone, Debug, Serialize)]
pub struct DualGraph {
    pub regions: Regions,
    pub edges: Vec<(RegionId, RegionId)>,
    /// Number of edge sides on each region's boundary; a loop counts twice.
    pub degree: Vec<usize>,
}

pub fn dual_graph(w: &Web) -> Result<DualGraph> {
    let regions = w.regions()?;
    let edges: Vec<_> =
        w.edges().iter().map(|&(t, h)| (regions.region_of_dart[t], regions.region_of_dart[h])).collect();
    let mut degree = vec![0; regions.len()];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    Ok(DualGraph { regions, edges, degree })
}

/// A red graph with its induced edges and external degrees. Local vertex
/// `i` is the face `faces[i]`; edges refer to local vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RedGraph {
    pub faces: Vec<RegionId>,
    /// `(web edge index, local a, local b)` for every dual edge inside the set.
    pub edges: Vec<(usize, usize, usize)>,
    pub dual_degree: Vec<usize>,
    pub external_degree: Vec<usize>,
    pub level: i64,
}

impl RedGraph {
    /// The red graph on `faces`, checking conditions (i) and (ii).
    pub fn new(w: &Web, dual: &DualGraph, faces: &[RegionId]) -> Result<RedGraph> {
        let set: BTreeSet<RegionId> = faces.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::Precondition("a red graph needs at least one face".into()));
        }
        if set.len() != faces.len() {
            return Err(Error::Precondition("repeated face in red graph".into()));
        }
        for &f in &set {
            let r = dual.regions.get(f);
            if !eligible(r) {
                return Err(Error::Precondition(format!("region {f} is not a disk face")));
            }
        }
        for v in 0..w.num_vertices() {
            if w.vertex(v).rotation.iter().all(|&h| set.contains(&dual.regions.region_of_dart[h])) {
                return Err(Error::Precondition(format!("all three faces around vertex {v} are selected")));
            }
        }
        Ok(Self::build(dual, set.into_iter().collect()))
    }

    fn build(dual: &DualGraph, faces: Vec<RegionId>) -> RedGraph {
        let local = |f: RegionId| faces.binary_search(&f).ok();
        let mut edges = Vec::new();
        let mut red_degree = vec![0; faces.len()];
        for (e, &(a, b)) in dual.edges.iter().enumerate() {
            if let (Some(x), Some(y)) = (local(a), local(b)) {
                edges.push((e, x, y));
                red_degree[x] += 1;
                red_degree[y] += 1;
            }
        }
        let dual_degree: Vec<usize> = faces.iter().map(|&f| dual.degree[f]).collect();
        let external_degree: Vec<usize> = dual_degree.iter().zip(&red_degree).map(|(d, r)| d - 2 * r).collect();
        let ed_sum: usize = external_degree.iter().sum();
        let level = 2 * faces.len() as i64 - edges.len() as i64 - (ed_sum / 2) as i64;
        RedGraph { faces, edges, dual_degree, external_degree, level }
    }

    pub fn num_vertices(&self) -> usize {
        self.faces.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Every external degree is at most 4.
    pub fn is_fair(&self) -> bool {
        self.external_degree.iter().all(|&d| d <= 4)
    }

    /// Every external degree is at most 2.
    pub fn is_nice(&self) -> bool {
        self.external_degree.iter().all(|&d| d <= 2)
    }

    /// Local adjacency lists, one entry per incident edge.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.faces.len()];
        for &(_, a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.neighbours();
        let mut seen = vec![false; self.faces.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.faces.len() && self.is_connected()
    }

    /// Length of a shortest cycle (parallel edges make a 2-cycle); `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.faces.len();
        let mut best: Option<usize> = None;
        let mut seen_pair = BTreeSet::new();
        for &(_, a, b) in &self.edges {
            if a == b {
                return Some(1);
            }
            if !seen_pair.insert((a.min(b), a.max(b))) {
                best = Some(2);
            }
        }
        if best.is_some() {
            return best;
        }
        let adj = self.neighbours();
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// The sub red graph on the local vertices `keep`.
    pub fn restrict(&self, dual: &DualGraph, keep: &[usize]) -> RedGraph {
        let mut faces: Vec<RegionId> = keep.iter().map(|&i| self.faces[i]).collect();
        faces.sort_unstable();
        Self::build(dual, faces)
    }
}

fn eligible(r: &crate::web::Region) -> bool {
    r.is_face() && r.is_disk && !r.walks.is_empty()
}

/// Precomputed data for subset enumeration.
struct Candidates {
    faces: Vec<RegionId>,
    contribution: Vec<i64>,
    /// For each candidate, `(other candidate, number of shared edges)`.
    adj: Vec<Vec<(usize, i64)>>,
    /// Pairs that would complete a vertex whose three faces are all candidates.
    triples: Vec<Vec<(usize, usize)>>,
}

impl Candidates {
    fn new(w: &Web, dual: &DualGraph) -> Result<Candidates> {
        let faces: Vec<RegionId> = dual.regions.iter().filter(|r| eligible(r)).map(|r| r.id).collect();
        if faces.len() > FACE_GUARD {
            return Err(Error::SizeGuard { what: "disk faces", actual: faces.len(), limit: FACE_GUARD });
        }
        let local = |f: RegionId| faces.binary_search(&f).ok();
        let n = faces.len();
        let contribution = faces.iter().map(|&f| 2 - dual.degree[f] as i64 / 2).collect();
        let mut counts = vec![std::collections::BTreeMap::<usize, i64>::new(); n];
        for &(a, b) in &dual.edges {
            if let (Some(x), Some(y)) = (local(a), local(b)) {
                *counts[x].entry(y).or_default() += 1;
                if x != y {
                    *counts[y].entry(x).or_default() += 1;
                }
            }
        }
        let adj = counts.into_iter().map(|m| m.into_iter().collect()).collect();
        let mut triples = vec![Vec::new(); n];
        for v in 0..w.num_vertices() {
            let around: Vec<Option<usize>> =
                w.vertex(v).rotation.iter().map(|&h| local(dual.regions.region_of_dart[h])).collect();
            if let [Some(a), Some(b), Some(c)] = around[..] {
                triples[a].push((b, c));
                triples[b].push((a, c));
                triples[c].push((a, b));
            }
        }
        Ok(Candidates { faces, contribution, adj, triples })
    }

    /// Visits every valid non-empty subset with at most `max` faces, in
    /// lexicographic order of local indices, with its level.
    fn visit(&self, max: usize, f: &mut impl FnMut(&[usize], i64) -> ControlFlow<()>) {
        let mut chosen = Vec::new();
        let mut selected = vec![false; self.faces.len()];
        let _ = self.extend(0, max, 0, &mut chosen, &mut selected, f);
    }

    fn extend(
        &self,
        from: usize,
        max: usize,
        level: i64,
        chosen: &mut Vec<usize>,
        selected: &mut Vec<bool>,
        f: &mut impl FnMut(&[usize], i64) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if chosen.len() >= max {
            return ControlFlow::Continue(());
        }
        for i in from..self.faces.len() {
            if self.triples[i].iter().any(|&(a, b)| selected[a] && selected[b]) {
                continue;
            }
            let gained: i64 = self.adj[i].iter().filter(|(j, _)| selected[*j] || *j == i).map(|(_, c)| c).sum();
            let next = level + self.contribution[i] + gained;
            chosen.push(i);
            selected[i] = true;
            let flow = match f(chosen, next) {
                ControlFlow::Continue(()) => self.extend(i + 1, max, next, chosen, selected, f),
                stop => stop,
            };
            selected[i] = false;
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// All red graphs with at most `max_vertices` faces.
pub fn enumerate_red_graphs(w: &Web, max_vertices: usize) -> Result<Vec<RedGraph>> {
    let dual = dual_graph(w)?;
    enumerate_with_dual(w, &dual, max_vertices)
}

pub fn enumerate_with_dual(w: &Web, dual: &DualGraph, max_vertices: usize) -> Result<Vec<RedGraph>> {
    let cand = Candidates::new(w, dual)?;
    let mut out = Vec::new();
    cand.visit(max_vertices, &mut |chosen, level| {
        let g = RedGraph::build(dual, chosen.iter().map(|&i| cand.faces[i]).collect());
        debug_assert_eq!(g.level, level);
        out.push(g);
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// The first red graph (in enumeration order) with level at least `min_level`.
pub fn find_red_graph_with_level(w: &Web, dual: &DualGraph, min_level: i64) -> Result<Option<RedGraph>> {
    let cand = Candidates::new(w, dual)?;
    let mut found = None;
    cand.visit(usize::MAX, &mut |chosen, level| {
        if level >= min_level {
            found = Some(chosen.iter().map(|&i| cand.faces[i]).collect::<Vec<_>>());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found.map(|faces| RedGraph::build(dual, faces)))
}

/// Result of the exact red graph search with its intermediate stages.
#[derive(Clone, Debug, Serialize)]
pub struct ExactSearch {
    pub seed: RedGraph,
    pub admissible: RedGraph,
    pub exact: RedGraph,
}

/// For a non-elliptic web: any red graph of non-negative level, made
/// admissible and then minimal, which is exact.
pub fn find_exact_red_graph(w: &Web) -> Result<Option<RedGraph>> {
    Ok(find_exact_red_graph_traced(w)?.map(|s| s.exact))
}

pub fn find_exact_red_graph_traced(w: &Web) -> Result<Option<ExactSearch>> {
    w.ensure_valid()?;
    if !w.is_non_elliptic()? {
        return Err(Error::Precondition("find_exact_red_graph needs a non-elliptic web".into()));
    }
    let dual = dual_graph(w)?;
    let Some(seed) = find_red_graph_with_level(w, &dual, 0)? else {
        return Ok(None);
    };
    let admissible = upgrade_to_admissible(&dual, &seed)?;
    if admissible.level < seed.level || !is_admissible(&admissible) {
        return Err(Error::Contradiction(format!(
            "upgrade of a level {} red graph gave level {} (admissible: {})",
            seed.level,
            admissible.level,
            is_admissible(&admissible)
        )));
    }
    let exact = minimal_admissible_subgraph(&dual, &admissible)?;
    if !is_exact(&exact) {
        return Err(Error::Contradiction(format!(
            "minimal admissible red graph on faces {:?} has level {}",
            exact.faces, exact.level
        )));
    }
    Ok(Some(ExactSearch { seed, admissible, exact }))
}

/// Largest level over admissible red graphs with at most `max_vertices` faces.
pub fn max_admissible_level(w: &Web, max_vertices: usize) -> Result<Option<i64>> {
    Ok(enumerate_red_graphs(w, max_vertices)?.iter().filter(|g| is_admissible(g)).map(|g| g.level).max())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::fixtures::*;

    #[test]
    fn dual_graphs() {
        let d = dual_graph(&arc()).unwrap();
        assert_eq!((d.regions.len(), d.edges.len()), (2, 1));
        let d = dual_graph(&digon_arc()).unwrap();
        assert_eq!(d.regions.len(), 3);
        let face = d.regions.faces().next().unwrap().id;
        assert_eq!(d.degree[face], 2);
        let d = dual_graph(&circle()).unwrap();
        assert_eq!((d.regions.len(), d.edges.len()), (2, 0));
    }

    #[test]
    fn enumeration_examples() {
        assert!(enumerate_red_graphs(&arc(), 10).unwrap().is_empty());
        let gs = enumerate_red_graphs(&digon_arc(), 10).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].external_degree, vec![2]);
        assert_eq!(gs[0].level, 1);
        assert!(gs[0].is_nice());
    }

    #[test]
    fn condition_two_excludes_vertex_stars() {
        // Both digons of the theta plus nothing else: the theta's vertices
        // each see the two digons and the outer face, so the pair is allowed;
        // the double digon arc has two faces that share no vertex.
        let t = theta();
        let dual = dual_graph(&t).unwrap();
        let faces: Vec<_> = dual.regions.faces().map(|r| r.id).collect();
        assert!(RedGraph::new(&t, &dual, &faces).is_ok());
        let mut with_outer = faces.clone();
        with_outer.push(0);
        assert!(RedGraph::new(&t, &dual, &with_outer).is_err());
        assert_eq!(enumerate_red_graphs(&double_digon_arc(), 5).unwrap().len(), 3);
    }

    #[test]
    fn elliptic_input_is_refused() {
        assert!(find_exact_red_graph(&digon_arc()).is_err());
        assert_eq!(find_exact_red_graph(&tripod()).unwrap(), None);
    }

    #[test]
    fn level_formula_matches_definition() {
        for w in [digon_arc(), double_digon_arc(), theta()] {
            for g in enumerate_red_graphs(&w, 5).unwrap() {
                let ed: usize = g.external_degree.iter().sum();
                assert_eq!(g.level, 2 * g.num_vertices() as i64 - g.num_edges() as i64 - (ed / 2) as i64);
                assert!(g.external_degree.iter().all(|d| d % 2 == 0));
            }
        }
    }
}
