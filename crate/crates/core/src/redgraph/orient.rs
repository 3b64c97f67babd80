//! Orientations of red graphs and the admissibility questions built on them.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::Serialize;

use super::{DualGraph, RedGraph};
use crate::error::{Error, Result};

pub const BRUTE_FORCE_EDGE_GUARD: usize = 20;
pub const COUNT_EDGE_GUARD: usize = 30;
pub const MINIMAL_VERTEX_GUARD: usize = 15;

/// `toward_second[k]` is true when edge `k` of the red graph points from its
/// first local endpoint to its second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    pub toward_second: Vec<bool>,
}

impl Orientation {
    pub fn uniform(g: &RedGraph) -> Self {
        Orientation { toward_second: vec![true; g.num_edges()] }
    }

    fn from_mask(g: &RedGraph, mask: u64) -> Self {
        Orientation { toward_second: (0..g.num_edges()).map(|k| mask >> k & 1 == 1).collect() }
    }

    /// `(tail, head)` in local vertex ids for edge `k`.
    pub fn arc(&self, g: &RedGraph, k: usize) -> (usize, usize) {
        let (_, a, b) = g.edges[k];
        if self.toward_second[k] {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn indegrees(&self, g: &RedGraph) -> Vec<usize> {
        let mut d = vec![0; g.num_vertices()];
        for k in 0..g.num_edges() {
            d[self.arc(g, k).1] += 1;
        }
        d
    }

    /// `i_o(f) = 2 - ed(f)/2 - indegree(f)` for every red vertex.
    pub fn levels(&self, g: &RedGraph) -> Vec<i64> {
        self.indegrees(g)
            .iter()
            .zip(&g.external_degree)
            .map(|(&indeg, &ed)| 2 - (ed / 2) as i64 - indeg as i64)
            .collect()
    }

    pub fn is_fitting(&self, g: &RedGraph) -> bool {
        self.levels(g).iter().all(|&l| l >= 0)
    }

    fn successors(&self, g: &RedGraph) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); g.num_vertices()];
        for k in 0..g.num_edges() {
            let (t, h) = self.arc(g, k);
            out[t].push((h, k));
        }
        out
    }
}

/// Minimum outdegree a face needs: `max(0, deg_D(f)/2 - 2)`.
fn demands(g: &RedGraph) -> Vec<usize> {
    g.dual_degree.iter().map(|&d| (d / 2).saturating_sub(2)).collect()
}

/// A fitting orientation, found as a degree-constrained assignment: every
/// edge picks at most one endpoint to leave from, and each face must be left
/// by at least its demand. Solved with augmenting paths.
pub fn find_fitting_orientation(g: &RedGraph) -> Option<Orientation> {
    let need = demands(g);
    let mut incident = vec![Vec::new(); g.num_vertices()];
    for (k, &(_, a, b)) in g.edges.iter().enumerate() {
        if a != b {
            incident[a].push(k);
            incident[b].push(k);
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; g.num_edges()];

    fn augment(f: usize, incident: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &k in &incident[f] {
            if seen[k] || owner[k] == Some(f) {
                continue;
            }
            seen[k] = true;
            let free = match owner[k] {
                None => true,
                Some(other) => augment(other, incident, owner, seen),
            };
            if free {
                owner[k] = Some(f);
                return true;
            }
        }
        false
    }

    for f in 0..g.num_vertices() {
        for _ in 0..need[f] {
            let mut seen = vec![false; g.num_edges()];
            if !augment(f, &incident, &mut owner, &mut seen) {
                return None;
            }
        }
    }
    let toward_second = g.edges.iter().zip(&owner).map(|(&(_, a, _), o)| o.map_or(true, |f| f == a)).collect();
    let o = Orientation { toward_second };
    debug_assert!(o.is_fitting(g));
    Some(o)
}

/// Exhaustive search over all `2^E` orientations.
pub fn find_fitting_orientation_bruteforce(g: &RedGraph) -> Result<Option<Orientation>> {
    let e = g.num_edges();
    if e > BRUTE_FORCE_EDGE_GUARD {
        return Err(Error::SizeGuard { what: "red graph edges", actual: e, limit: BRUTE_FORCE_EDGE_GUARD });
    }
    Ok((0..1u64 << e).map(|m| Orientation::from_mask(g, m)).find(|o| o.is_fitting(g)))
}

/// Number of fitting orientations: a product over connected components of
/// pruned exhaustive counts.
pub fn count_fitting_orientations(g: &RedGraph) -> Result<u64> {
    let e = g.num_edges();
    if e > COUNT_EDGE_GUARD {
        return Err(Error::SizeGuard { what: "red graph edges", actual: e, limit: COUNT_EDGE_GUARD });
    }
    let need = demands(g);
    let n = g.num_vertices();
    let mut comp = vec![usize::MAX; n];
    let adj = g.neighbours();
    let mut total: u64 = 1;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = s;
                    queue.push_back(y);
                }
            }
        }
        let edges: Vec<(usize, usize)> =
            g.edges.iter().filter(|&&(_, a, _)| comp[a] == s).map(|&(_, a, b)| (a, b)).collect();
        let mut remaining = vec![0usize; n];
        for &(a, b) in &edges {
            remaining[a] += 1;
            remaining[b] += 1;
        }
        let mut out = vec![0usize; n];
        let members: Vec<usize> = (0..n).filter(|&v| comp[v] == s).collect();
        if members.iter().any(|&v| remaining[v] < need[v]) {
            return Ok(0);
        }
        let c = count_rec(&edges, 0, &need, &mut out, &mut remaining);
        total = total.saturating_mul(c);
        if total == 0 {
            return Ok(0);
        }
    }
    Ok(total)
}

fn count_rec(edges: &[(usize, usize)], k: usize, need: &[usize], out: &mut [usize], rem: &mut [usize]) -> u64 {
    let Some(&(a, b)) = edges.get(k) else {
        return 1;
    };
    rem[a] -= 1;
    rem[b] -= 1;
    let mut total = 0;
    for (t, h) in [(a, b), (b, a)] {
        out[t] += 1;
        if out[h] + rem[h] >= need[h] && out[t] + rem[t] >= need[t] {
            total += count_rec(edges, k + 1, need, out, rem);
        }
        out[t] -= 1;
    }
    rem[a] += 1;
    rem[b] += 1;
    total
}

pub fn is_admissible(g: &RedGraph) -> bool {
    find_fitting_orientation(g).is_some()
}

pub fn is_exact(g: &RedGraph) -> bool {
    g.level == 0 && is_admissible(g)
}

/// Whether every vertex reaches every other along the orientation.
pub fn is_strongly_connected(g: &RedGraph, o: &Orientation) -> bool {
    let n = g.num_vertices();
    let reach = |forward: bool| {
        let mut adj = vec![Vec::new(); n];
        for k in 0..g.num_edges() {
            let (t, h) = o.arc(g, k);
            if forward {
                adj[t].push(h);
            } else {
                adj[h].push(t);
            }
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Vertices reachable from `starts` along the orientation.
fn reachable(g: &RedGraph, o: &Orientation, starts: &[usize]) -> Vec<bool> {
    let succ = o.successors(g);
    let mut seen = vec![false; g.num_vertices()];
    let mut queue: VecDeque<usize> = starts.iter().copied().collect();
    for &s in starts {
        seen[s] = true;
    }
    while let Some(x) = queue.pop_front() {
        for &(y, _) in &succ[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// From a red graph of non-negative level, an admissible red subgraph of
/// at least the same level.
///
/// Directed paths from a vertex of positive level to one of negative level
/// are reversed until none is left; the vertices reachable from positive
/// ones then all have non-negative level and nothing points out of them.
pub fn upgrade_to_admissible(dual: &DualGraph, g: &RedGraph) -> Result<RedGraph> {
    if g.level < 0 {
        return Err(Error::Precondition(format!("upgrade needs level >= 0, got {}", g.level)));
    }
    let mut o = Orientation::uniform(g);
    loop {
        let levels = o.levels(g);
        if levels.iter().all(|&l| l >= 0) {
            return Ok(g.clone());
        }
        let positive: Vec<usize> = (0..g.num_vertices()).filter(|&v| levels[v] > 0).collect();
        let succ = o.successors(g);
        let mut via: Vec<Option<usize>> = vec![None; g.num_vertices()];
        let mut seen = vec![false; g.num_vertices()];
        let mut queue: VecDeque<usize> = positive.iter().copied().collect();
        for &p in &positive {
            seen[p] = true;
        }
        let mut target = None;
        while let Some(x) = queue.pop_front() {
            if levels[x] < 0 {
                target = Some(x);
                break;
            }
            for &(y, k) in &succ[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some(k);
                    queue.push_back(y);
                }
            }
        }
        let Some(mut x) = target else {
            let keep: Vec<usize> = (0..g.num_vertices()).filter(|&v| seen[v]).collect();
            if keep.is_empty() {
                return Err(Error::Contradiction("level >= 0 but no vertex has positive level".into()));
            }
            debug_assert_eq!(reachable(g, &o, &positive), seen);
            return Ok(g.restrict(dual, &keep));
        };
        while let Some(k) = via[x] {
            let (t, _) = o.arc(g, k);
            o.toward_second[k] = !o.toward_second[k];
            x = t;
        }
    }
}

/// A sub red graph with no smaller admissible sub red graph.
///
/// First shrinks to a sink strongly connected component of a fitting
/// orientation (nothing leaves it, so it stays admissible), then checks
/// subsets of that component by increasing size.
pub fn minimal_admissible_subgraph(dual: &DualGraph, g: &RedGraph) -> Result<RedGraph> {
    let o = find_fitting_orientation(g)
        .ok_or_else(|| Error::Precondition("minimal_admissible_subgraph needs an admissible red graph".into()))?;
    let core = smallest_sink_component(g, &o);
    let s = g.restrict(dual, &core);
    if !is_admissible(&s) {
        return Err(Error::Contradiction("closed part of a fitting orientation is not admissible".into()));
    }
    let n = s.num_vertices();
    if n > MINIMAL_VERTEX_GUARD {
        return Err(Error::SizeGuard { what: "red graph vertices", actual: n, limit: MINIMAL_VERTEX_GUARD });
    }
    for k in 1..n {
        for subset in (0..n).combinations(k) {
            let h = s.restrict(dual, &subset);
            if is_admissible(&h) {
                return Ok(h);
            }
        }
    }
    Ok(s)
}

/// Smallest strongly connected component that no edge leaves.
fn smallest_sink_component(g: &RedGraph, o: &Orientation) -> Vec<usize> {
    let n = g.num_vertices();
    let mut best: Option<Vec<usize>> = None;
    for v in 0..n {
        let fwd = reachable(g, o, &[v]);
        // Reachable set equals the component of v iff v's component is a sink.
        let comp: Vec<usize> = (0..n).filter(|&u| fwd[u]).collect();
        let is_sink_scc = comp.iter().all(|&u| reachable(g, o, &[u])[v]);
        if is_sink_scc && best.as_ref().map_or(true, |b| comp.len() < b.len()) {
            best = Some(comp);
        }
    }
    best.expect("a finite digraph has a sink component")
}

#[cfg(test)]
mod tests {
    use super::super::{dual_graph, enumerate_red_graphs};
    use super::*;
    use crate::web::fixtures::*;
    use proptest::prelude::*;

    fn synthetic(dual_degree: Vec<usize>, edges: Vec<(usize, usize)>) -> RedGraph {
        let mut red = vec![0; dual_degree.len()];
        for &(a, b) in &edges {
            red[a] += 1;
            red[b] += 1;
        }
        let external_degree: Vec<usize> = dual_degree.iter().zip(&red).map(|(d, r)| d - 2 * r).collect();
        let ed: usize = external_degree.iter().sum();
        let level = 2 * dual_degree.len() as i64 - edges.len() as i64 - (ed / 2) as i64;
        RedGraph {
            faces: (0..dual_degree.len()).collect(),
            edges: edges.into_iter().enumerate().map(|(k, (a, b))| (k, a, b)).collect(),
            dual_degree,
            external_degree,
            level,
        }
    }

    #[test]
    fn digon_red_graph() {
        let g = &enumerate_red_graphs(&digon_arc(), 3).unwrap()[0];
        let o = find_fitting_orientation(g).unwrap();
        assert_eq!(o.levels(g), vec![1]);
        assert!(is_admissible(g) && !is_exact(g));
        assert_eq!(count_fitting_orientations(g).unwrap(), 1);
        assert!(find_fitting_orientation_bruteforce(g).unwrap().is_some());
    }

    #[test]
    fn external_degree_six_is_not_admissible() {
        let g = synthetic(vec![6], vec![]);
        assert_eq!(g.level, -1);
        assert!(find_fitting_orientation(&g).is_none());
        assert_eq!(count_fitting_orientations(&g).unwrap(), 0);
    }

    #[test]
    fn hexagon_cycle_is_exact() {
        // Six hexagons in a ring, each sharing one side with either neighbour.
        let g = synthetic(vec![6; 6], (0..6).map(|i| (i, (i + 1) % 6)).collect());
        assert_eq!(g.level, 0);
        assert!(is_exact(&g));
        // Each face needs outdegree 1: the two cyclic orientations.
        assert_eq!(count_fitting_orientations(&g).unwrap(), 2);
        let o = find_fitting_orientation(&g).unwrap();
        assert!(is_strongly_connected(&g, &o));
    }

    #[test]
    fn guards() {
        let g = synthetic(vec![60; 2], vec![(0, 1); 21]);
        assert!(matches!(find_fitting_orientation_bruteforce(&g), Err(Error::SizeGuard { .. })));
        let g = synthetic(vec![80; 2], vec![(0, 1); 31]);
        assert!(matches!(count_fitting_orientations(&g), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn level_sum_is_orientation_independent() {
        let g = synthetic(vec![8, 6, 6, 8], vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let sums: Vec<i64> =
            (0..1u64 << g.num_edges()).map(|m| Orientation::from_mask(&g, m).levels(&g).iter().sum()).collect();
        assert!(sums.iter().all(|&s| s == g.level));
    }

    #[test]
    fn upgrade_keeps_level() {
        let w = double_digon_arc();
        let dual = dual_graph(&w).unwrap();
        for g in enumerate_red_graphs(&w, 3).unwrap() {
            let up = upgrade_to_admissible(&dual, &g).unwrap();
            assert!(is_admissible(&up));
            assert!(up.level >= g.level);
            let m = minimal_admissible_subgraph(&dual, &up).unwrap();
            assert!(is_admissible(&m) && m.num_vertices() <= up.num_vertices());
        }
    }

    fn random_graph() -> impl Strategy<Value = RedGraph> {
        (1usize..=8)
            .prop_flat_map(|n| {
                (
                    prop::collection::vec((0..n, 0..n), 0..=16),
                    prop::collection::vec(prop::sample::select(vec![0usize, 2, 4, 6]), n),
                )
            })
            .prop_map(|(pairs, ext)| {
                let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
                let mut red = vec![0; ext.len()];
                for &(a, b) in &edges {
                    red[a] += 1;
                    red[b] += 1;
                }
                synthetic(ext.iter().zip(&red).map(|(e, r)| e + 2 * r).collect(), edges)
            })
    }

    proptest! {
        #[test]
        fn flow_matches_brute_force(g in random_graph()) {
            let brute = (0..1u64 << g.num_edges()).filter(|&m| Orientation::from_mask(&g, m).is_fitting(&g)).count();
            prop_assert_eq!(find_fitting_orientation(&g).is_some(), brute > 0);
            prop_assert_eq!(find_fitting_orientation_bruteforce(&g).unwrap().is_some(), brute > 0);
            prop_assert_eq!(count_fitting_orientations(&g).unwrap(), brute as u64);
            if let Some(o) = find_fitting_orientation(&g) {
                prop_assert!(o.is_fitting(&g));
            }
        }
    }
}
