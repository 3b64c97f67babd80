use std::collections::HashMap;

use super::{BoundaryPoint, CircleGroup, Facing, HalfEdgeId, Vertex, VertexId, VertexKind, Web};
use crate::error::{Error, Result};
use crate::sign::Sign;

const NONE: usize = usize::MAX;

/// Mutable scratch form of a web used by the local rewriting operations.
/// Half-edge and vertex ids are stable while editing and compacted by
/// [`WebBuilder::finish`].
#[derive(Clone, Debug)]
pub(crate) struct WebBuilder {
    pub facing: Facing,
    pub kinds: Vec<Option<VertexKind>>,
    pub rotations: Vec<Vec<HalfEdgeId>>,
    pub twin: Vec<HalfEdgeId>,
    pub boundary: Vec<(HalfEdgeId, Sign)>,
    pub circles: Vec<CircleGroup>,
}

impl WebBuilder {
    pub fn new(facing: Facing) -> Self {
        WebBuilder { facing, kinds: vec![], rotations: vec![], twin: vec![], boundary: vec![], circles: vec![] }
    }

    pub fn from_web(w: &Web) -> Self {
        WebBuilder {
            facing: w.facing,
            kinds: w.vertices.iter().map(|v| Some(v.kind)).collect(),
            rotations: w.vertices.iter().map(|v| v.rotation.clone()).collect(),
            twin: w.twin.clone(),
            boundary: w.boundary.iter().map(|p| (p.half_edge, p.sign)).collect(),
            circles: w.circles.clone(),
        }
    }

    /// Copies `w` into this builder, returning the half-edge and vertex offsets.
    pub fn append(&mut self, w: &Web, mirrored: bool) -> (usize, usize) {
        let ho = self.twin.len();
        let vo = self.kinds.len();
        for v in &w.vertices {
            let mut rot: Vec<_> = v.rotation.iter().map(|h| h + ho).collect();
            let kind = if mirrored {
                rot.reverse();
                v.kind.flipped()
            } else {
                v.kind
            };
            self.kinds.push(Some(kind));
            self.rotations.push(rot);
        }
        self.twin.extend(w.twin.iter().map(|t| t + ho));
        for c in &w.circles {
            let hint = c.region_hint.map(|h| if mirrored { w.twin[h] } else { h } + ho);
            self.circles.push(CircleGroup { count: c.count, region_hint: hint });
        }
        (ho, vo)
    }

    pub fn new_half_edge(&mut self) -> HalfEdgeId {
        self.twin.push(NONE);
        self.twin.len() - 1
    }

    pub fn add_vertex(&mut self, kind: VertexKind, rotation: Vec<HalfEdgeId>) -> VertexId {
        self.kinds.push(Some(kind));
        self.rotations.push(rotation);
        self.kinds.len() - 1
    }

    pub fn link(&mut self, a: HalfEdgeId, b: HalfEdgeId) {
        self.twin[a] = b;
        self.twin[b] = a;
    }

    pub fn add_circles(&mut self, count: usize) {
        if count > 0 {
            self.circles.push(CircleGroup { count, region_hint: None });
        }
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        self.kinds[v] = None;
        self.rotations[v].clear();
    }

    /// Cuts out `dead_vertices` and the boundary points whose half-edges are
    /// listed in `dead_boundary`, then reconnects along `pairs`.
    ///
    /// Each pair `(p, q)` names two removed half-edges (ports) that become
    /// joined: a strand entering through `p` leaves through `q`. Removed
    /// half-edges that are not ports must have removed twins. Strands that
    /// close up without reaching a surviving half-edge become vertexless
    /// circles. Returns the number of circles created.
    pub fn splice(
        &mut self,
        dead_vertices: &[VertexId],
        dead_boundary: &[HalfEdgeId],
        pairs: &[(HalfEdgeId, HalfEdgeId)],
    ) -> Result<usize> {
        let mut removed = vec![false; self.twin.len()];
        for &v in dead_vertices {
            for &h in &self.rotations[v] {
                removed[h] = true;
            }
        }
        for &h in dead_boundary {
            removed[h] = true;
        }
        let mut partner: HashMap<HalfEdgeId, HalfEdgeId> = HashMap::new();
        for &(p, q) in pairs {
            for h in [p, q] {
                if !removed[h] {
                    return Err(Error::Precondition(format!("port {h} is not on a removed element")));
                }
            }
            if partner.insert(p, q).is_some() || partner.insert(q, p).is_some() || p == q {
                return Err(Error::Precondition(format!("port used twice in pairing ({p},{q})")));
            }
        }
        for h in 0..self.twin.len() {
            if removed[h] && !partner.contains_key(&h) {
                let t = self.twin[h];
                if t == NONE || !removed[t] || partner.contains_key(&t) {
                    return Err(Error::Precondition(format!("removed half-edge {h} would leave a dangling edge")));
                }
            }
        }
        let mut visited: HashMap<HalfEdgeId, bool> = HashMap::new();
        let mut new_links = Vec::new();
        let mut ports: Vec<_> = partner.keys().copied().collect();
        ports.sort_unstable();
        for &p in &ports {
            let x = self.twin[p];
            if removed[x] || visited.contains_key(&p) {
                continue;
            }
            let mut cur = p;
            loop {
                visited.insert(cur, true);
                let q = partner[&cur];
                visited.insert(q, true);
                let y = self.twin[q];
                if !removed[y] {
                    new_links.push((x, y));
                    break;
                }
                if !partner.contains_key(&y) || visited.contains_key(&y) {
                    return Err(Error::Precondition(format!("strand through {q} runs into a deleted edge")));
                }
                cur = y;
            }
        }
        let mut circles = 0;
        for &p in &ports {
            if visited.contains_key(&p) {
                continue;
            }
            let mut cur = p;
            loop {
                visited.insert(cur, true);
                let q = partner[&cur];
                visited.insert(q, true);
                let y = self.twin[q];
                if visited.contains_key(&y) {
                    break;
                }
                cur = y;
            }
            circles += 1;
        }
        for &v in dead_vertices {
            self.remove_vertex(v);
        }
        self.boundary.retain(|(h, _)| !removed[*h]);
        for h in 0..self.twin.len() {
            if removed[h] {
                self.twin[h] = NONE;
            }
        }
        for (x, y) in new_links {
            self.link(x, y);
        }
        self.add_circles(circles);
        Ok(circles)
    }

    /// Compacts ids and produces the web. Edge directions follow the ends'
    /// roles (sources and the outgoing boundary points are tails).
    pub fn finish(self) -> Web {
        let mut map = vec![NONE; self.twin.len()];
        let mut next = 0;
        let mut vertices = Vec::new();
        let mut boundary = Vec::new();
        let mut is_tail = vec![false; self.twin.len()];
        for (v, kind) in self.kinds.iter().enumerate() {
            let Some(kind) = kind else { continue };
            let mut rot = Vec::with_capacity(3);
            for &h in &self.rotations[v] {
                map[h] = next;
                is_tail[h] = *kind == VertexKind::Source;
                rot.push(next);
                next += 1;
            }
            vertices.push(Vertex { kind: *kind, rotation: rot });
        }
        for &(h, sign) in &self.boundary {
            map[h] = next;
            is_tail[h] = super::boundary_is_tail(self.facing, sign);
            boundary.push(BoundaryPoint { half_edge: next, sign });
            next += 1;
        }
        let mut edges = Vec::with_capacity(next / 2);
        for h in 0..self.twin.len() {
            let t = self.twin[h];
            if map[h] == NONE || t == NONE || h > t {
                continue;
            }
            debug_assert!(map[t] != NONE, "twin of live half-edge {h} is dead");
            let (a, b) = if is_tail[h] || !is_tail[t] { (h, t) } else { (t, h) };
            edges.push((map[a], map[b]));
        }
        let mut circles: Vec<CircleGroup> = Vec::new();
        let mut loose = 0;
        for c in &self.circles {
            match c.region_hint.map(|h| map[h]).filter(|&h| h != NONE) {
                Some(h) => circles.push(CircleGroup { count: c.count, region_hint: Some(h) }),
                None => loose += c.count,
            }
        }
        if loose > 0 {
            circles.insert(0, CircleGroup { count: loose, region_hint: None });
        }
        Web::from_parts(self.facing, vertices, edges, boundary, circles).expect("builder keeps references consistent")
    }
}
