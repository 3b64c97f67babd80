//! Webs as combinatorial maps.
//!
//! A web is stored as a rotation system: every vertex lists its incident
//! half-edges in counterclockwise order, and every edge is a pair of
//! half-edges declared `(tail, head)`. Boundary points are half-edges with no
//! vertex; they sit on a horizontal border line, ordered left to right. For an
//! upward facing web (an ε-web) the web lives above the line; its mirror image
//! faces down. Vertexless loops carry no half-edges and are kept as counts.
//!
//! Face tracing treats the whole border line as one extra vertex whose
//! rotation is the boundary order, which turns the web into an ordinary plane
//! map: regions touching the border are exactly the faces through that vertex.

mod builder;
mod canonical;
mod colouring;
pub mod dot;
pub mod fixtures;
pub mod io;
mod ops;
mod regions;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, FormatError, Result};
use crate::sign::{Sign, SignSequence};

pub(crate) use builder::WebBuilder;
pub use canonical::canonical_form;
pub use colouring::{colour_along_path, face_colouring, FaceColouring};
pub use ops::{closure, mirror, BorderMove, EllipticKind, Smoothing};
pub use regions::{Region, Regions};

pub type HalfEdgeId = usize;
pub type VertexId = usize;
pub type RegionId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Source,
    Sink,
}

impl VertexKind {
    pub fn flipped(self) -> Self {
        match self {
            VertexKind::Source => VertexKind::Sink,
            VertexKind::Sink => VertexKind::Source,
        }
    }
}

/// Which side of the border line the web occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Facing {
    #[default]
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Incident half-edges, counterclockwise.
    pub rotation: Vec<HalfEdgeId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub half_edge: HalfEdgeId,
    pub sign: Sign,
}

/// `count` vertexless loops lying in the region left of `region_hint`
/// (the unbounded region when absent).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircleGroup {
    pub count: usize,
    pub region_hint: Option<HalfEdgeId>,
}

/// Where a half-edge is attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Vertex { vertex: VertexId, slot: usize },
    Boundary { index: usize },
}

/// An invariant a web fails to satisfy. Violations are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Arity { vertex: VertexId, degree: usize },
    Orientation { tail: HalfEdgeId, head: HalfEdgeId, detail: String },
    Planarity { component: usize, euler_characteristic: i64 },
    RegionHint { half_edge: HalfEdgeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Arity { vertex, degree } => {
                write!(f, "arity: vertex {vertex} has {degree} half-edges, expected 3")
            }
            Violation::Orientation { tail, head, detail } => {
                write!(f, "orientation: edge [{tail},{head}] {detail}")
            }
            Violation::Planarity { component, euler_characteristic } => write!(
                f,
                "planarity: component {component} has Euler characteristic {euler_characteristic}, expected 2"
            ),
            Violation::RegionHint { half_edge } => {
                write!(f, "circle region hint {half_edge} is not a half-edge")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Web {
    facing: Facing,
    vertices: Vec<Vertex>,
    edges: Vec<(HalfEdgeId, HalfEdgeId)>,
    boundary: Vec<BoundaryPoint>,
    circles: Vec<CircleGroup>,
    twin: Vec<HalfEdgeId>,
    end: Vec<End>,
}

/// Connected components of the web with the border line counted as one vertex.
#[derive(Clone, Debug)]
pub struct Components {
    pub of_vertex: Vec<usize>,
    pub border: Option<usize>,
    pub count: usize,
}

impl Web {
    /// Builds a web from raw parts. Half-edge ids must be `0..2·edges`, each
    /// used by exactly one edge and attached to exactly one vertex slot or
    /// boundary point. Structural invariants (arity, orientation, planarity)
    /// are not checked here; see [`Web::validate`].
    pub fn from_parts(
        facing: Facing,
        vertices: Vec<Vertex>,
        edges: Vec<(HalfEdgeId, HalfEdgeId)>,
        boundary: Vec<BoundaryPoint>,
        circles: Vec<CircleGroup>,
    ) -> Result<Web, FormatError> {
        let n = edges.len() * 2;
        let mut twin = vec![usize::MAX; n];
        for &(a, b) in &edges {
            for h in [a, b] {
                if h >= n {
                    return Err(FormatError::Reference(format!("half-edge {h} out of range 0..{n}")));
                }
                if twin[h] != usize::MAX {
                    return Err(FormatError::Reference(format!("half-edge {h} used by two edges")));
                }
            }
            if a == b {
                return Err(FormatError::Reference(format!("edge [{a},{b}] joins a half-edge to itself")));
            }
            twin[a] = b;
            twin[b] = a;
        }
        let mut end: Vec<Option<End>> = vec![None; n];
        let mut attach = |h: HalfEdgeId, e: End| -> Result<(), FormatError> {
            match end.get_mut(h) {
                None => Err(FormatError::Reference(format!("half-edge {h} is not part of any edge"))),
                Some(Some(_)) => Err(FormatError::Reference(format!("half-edge {h} attached twice"))),
                Some(slot) => {
                    *slot = Some(e);
                    Ok(())
                }
            }
        };
        for (v, vert) in vertices.iter().enumerate() {
            for (slot, &h) in vert.rotation.iter().enumerate() {
                attach(h, End::Vertex { vertex: v, slot })?;
            }
        }
        for (index, p) in boundary.iter().enumerate() {
            attach(p.half_edge, End::Boundary { index })?;
        }
        let end = end
            .into_iter()
            .enumerate()
            .map(|(h, e)| e.ok_or_else(|| FormatError::Reference(format!("half-edge {h} is not attached"))))
            .collect::<Result<Vec<_>, _>>()?;
        let facing = if boundary.is_empty() { Facing::Up } else { facing };
        Ok(Web { facing, vertices, edges, boundary, circles, twin, end })
    }

    /// The empty closed web.
    pub fn empty() -> Web {
        Web::from_parts(Facing::Up, vec![], vec![], vec![], vec![]).expect("empty web")
    }

    /// A closed web made of `count` vertexless circles.
    pub fn circles_only(count: usize) -> Web {
        let circles = if count == 0 { vec![] } else { vec![CircleGroup { count, region_hint: None }] };
        Web::from_parts(Facing::Up, vec![], vec![], vec![], circles).expect("circles")
    }

    pub fn facing(&self) -> Facing {
        self.facing
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.twin.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as declared, `(tail, head)`.
    pub fn edges(&self) -> &[(HalfEdgeId, HalfEdgeId)] {
        &self.edges
    }

    pub fn boundary(&self) -> &[BoundaryPoint] {
        &self.boundary
    }

    pub fn signs(&self) -> SignSequence {
        SignSequence(self.boundary.iter().map(|p| p.sign).collect())
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn circle_groups(&self) -> &[CircleGroup] {
        &self.circles
    }

    pub fn circle_count(&self) -> usize {
        self.circles.iter().map(|c| c.count).sum()
    }

    pub fn twin(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.twin[h]
    }

    pub fn end(&self, h: HalfEdgeId) -> End {
        self.end[h]
    }

    pub fn vertex_of(&self, h: HalfEdgeId) -> Option<VertexId> {
        match self.end[h] {
            End::Vertex { vertex, .. } => Some(vertex),
            End::Boundary { .. } => None,
        }
    }

    /// True when `h` is the tail end of its edge, judged from the kind of its
    /// vertex or the sign of its boundary point.
    pub fn is_tail(&self, h: HalfEdgeId) -> bool {
        match self.end[h] {
            End::Vertex { vertex, .. } => self.vertices[vertex].kind == VertexKind::Source,
            End::Boundary { index } => boundary_is_tail(self.facing, self.boundary[index].sign),
        }
    }

    /// Counterclockwise successor of `h` around its vertex (or the border).
    pub fn rot_next(&self, h: HalfEdgeId) -> HalfEdgeId {
        match self.end[h] {
            End::Vertex { vertex, slot } => {
                let r = &self.vertices[vertex].rotation;
                r[(slot + 1) % r.len()]
            }
            End::Boundary { index } => {
                let n = self.boundary.len();
                let j = match self.facing {
                    Facing::Up => (index + n - 1) % n,
                    Facing::Down => (index + 1) % n,
                };
                self.boundary[j].half_edge
            }
        }
    }

    /// Counterclockwise predecessor of `h`.
    pub fn rot_prev(&self, h: HalfEdgeId) -> HalfEdgeId {
        match self.end[h] {
            End::Vertex { vertex, slot } => {
                let r = &self.vertices[vertex].rotation;
                r[(slot + r.len() - 1) % r.len()]
            }
            End::Boundary { index } => {
                let n = self.boundary.len();
                let j = match self.facing {
                    Facing::Up => (index + 1) % n,
                    Facing::Down => (index + n - 1) % n,
                };
                self.boundary[j].half_edge
            }
        }
    }

    /// Next dart of the face lying to the left of dart `h`.
    pub fn face_next(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.rot_prev(self.twin[h])
    }

    /// The half-edges of `v` other than `a` and `b`.
    pub(crate) fn third_half_edge(&self, v: VertexId, a: HalfEdgeId, b: HalfEdgeId) -> HalfEdgeId {
        *self.vertices[v]
            .rotation
            .iter()
            .find(|&&h| h != a && h != b)
            .expect("trivalent vertex")
    }

    pub fn components(&self) -> Components {
        let nv = self.vertices.len();
        let border_node = nv;
        let mut parent: Vec<usize> = (0..=nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let node = |w: &Web, h: HalfEdgeId| w.vertex_of(h).unwrap_or(border_node);
        for &(a, b) in &self.edges {
            let (x, y) = (node(self, a), node(self, b));
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
        let mut label = vec![usize::MAX; nv + 1];
        let mut count = 0;
        let mut of_vertex = Vec::with_capacity(nv);
        let has_border = !self.boundary.is_empty();
        let mut border = None;
        if has_border {
            let r = find(&mut parent, border_node);
            label[r] = 0;
            border = Some(0);
            count = 1;
        }
        for v in 0..nv {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            of_vertex.push(label[r]);
        }
        Components { of_vertex, border, count }
    }

    /// Component index of the node owning `h`.
    pub(crate) fn component_of_half_edge(&self, comps: &Components, h: HalfEdgeId) -> usize {
        match self.vertex_of(h) {
            Some(v) => comps.of_vertex[v],
            None => comps.border.expect("boundary half-edge implies border component"),
        }
    }

    /// Face orbits of the darts: `(orbit id per dart, darts of each orbit)`.
    /// Orbits are numbered by their smallest dart and listed starting there.
    pub(crate) fn face_orbits(&self) -> (Vec<usize>, Vec<Vec<HalfEdgeId>>) {
        let n = self.twin.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut walk = Vec::new();
            let mut h = start;
            loop {
                orbit_of[h] = id;
                walk.push(h);
                h = self.face_next(h);
                if h == start || orbit_of[h] != usize::MAX {
                    break;
                }
            }
            orbits.push(walk);
        }
        (orbit_of, orbits)
    }

    /// Every violated invariant; empty for a valid web.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (v, vert) in self.vertices.iter().enumerate() {
            if vert.rotation.len() != 3 {
                out.push(Violation::Arity { vertex: v, degree: vert.rotation.len() });
            }
        }
        for &(t, h) in &self.edges {
            let (rt, rh) = (self.is_tail(t), self.is_tail(h));
            let detail = match (rt, rh) {
                (true, false) => continue,
                (true, true) => "joins two tails (two sources or source-like ends)",
                (false, false) => "joins two heads (two sinks or sink-like ends)",
                (false, true) => "is declared against the orientation of its ends",
            };
            out.push(Violation::Orientation { tail: t, head: h, detail: detail.to_string() });
        }
        for c in &self.circles {
            if let Some(h) = c.region_hint {
                if h >= self.twin.len() {
                    out.push(Violation::RegionHint { half_edge: h });
                }
            }
        }
        if out.iter().any(|v| matches!(v, Violation::Arity { .. })) {
            return out;
        }
        let comps = self.components();
        let mut chi = vec![0i64; comps.count];
        for v in 0..self.vertices.len() {
            chi[comps.of_vertex[v]] += 1;
        }
        if let Some(b) = comps.border {
            chi[b] += 1;
        }
        for &(t, _) in &self.edges {
            chi[self.component_of_half_edge(&comps, t)] -= 1;
        }
        let (_, orbits) = self.face_orbits();
        for walk in &orbits {
            chi[self.component_of_half_edge(&comps, walk[0])] += 1;
        }
        for (component, &x) in chi.iter().enumerate() {
            if x != 2 {
                out.push(Violation::Planarity { component, euler_characteristic: x });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidWeb(v))
        }
    }

    /// True iff every connected component touches the border line.
    pub fn is_boundary_connected(&self) -> bool {
        if self.circle_count() > 0 {
            return false;
        }
        let comps = self.components();
        match comps.border {
            Some(_) => comps.count == 1,
            None => comps.count == 0,
        }
    }
}

/// On an upward web a `+` point is where a strand enters the border line;
/// the mirror image reverses this.
pub(crate) fn boundary_is_tail(facing: Facing, sign: Sign) -> bool {
    (sign == Sign::Minus) == (facing == Facing::Up)
}

pub fn validate(web: &Web) -> Vec<Violation> {
    web.validate()
}

pub fn is_boundary_connected(web: &Web) -> bool {
    web.is_boundary_connected()
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for w in [arc(), tripod(), digon_arc(), theta(), circle(), double_digon_arc(), Web::empty()] {
            assert_eq!(w.validate(), vec![], "{w:?}");
        }
    }

    #[test]
    fn arity_violation() {
        let w = Web::from_parts(
            Facing::Up,
            vec![Vertex { kind: VertexKind::Sink, rotation: vec![2, 3] }],
            vec![(1, 2), (0, 3)],
            vec![
                BoundaryPoint { half_edge: 0, sign: Sign::Minus },
                BoundaryPoint { half_edge: 1, sign: Sign::Minus },
            ],
            vec![],
        )
        .unwrap();
        let v = w.validate();
        assert!(matches!(v[..], [Violation::Arity { vertex: 0, degree: 2 }, ..]), "{v:?}");
    }

    #[test]
    fn two_sources_joined() {
        // Two sources sharing an edge; each also reaches the border twice.
        let w = Web::from_parts(
            Facing::Up,
            vec![
                Vertex { kind: VertexKind::Source, rotation: vec![0, 4, 5] },
                Vertex { kind: VertexKind::Source, rotation: vec![1, 6, 7] },
            ],
            vec![(0, 1), (4, 2), (5, 3), (6, 8), (7, 9)],
            vec![
                BoundaryPoint { half_edge: 3, sign: Sign::Plus },
                BoundaryPoint { half_edge: 2, sign: Sign::Plus },
                BoundaryPoint { half_edge: 9, sign: Sign::Plus },
                BoundaryPoint { half_edge: 8, sign: Sign::Plus },
            ],
            vec![],
        )
        .unwrap();
        let v = w.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::Orientation { .. })), "{v:?}");
    }

    #[test]
    fn non_planar_rotation_is_flagged() {
        // Theta with one rotation reversed lives on a torus.
        let t = theta();
        let mut vertices = t.vertices().to_vec();
        vertices[0].rotation.reverse();
        let bad = Web::from_parts(Facing::Up, vertices, t.edges().to_vec(), vec![], vec![]).unwrap();
        assert!(bad.validate().iter().any(|x| matches!(x, Violation::Planarity { .. })));
    }

    #[test]
    fn reference_errors() {
        assert!(Web::from_parts(Facing::Up, vec![], vec![(0, 1)], vec![], vec![]).is_err());
        assert!(Web::from_parts(Facing::Up, vec![], vec![(0, 0)], vec![], vec![]).is_err());
    }

    #[test]
    fn boundary_connectivity() {
        assert!(arc().is_boundary_connected());
        assert!(!arc().disjoint_union(&circle()).is_boundary_connected());
        assert!(!arc().disjoint_union(&theta()).is_boundary_connected());
        assert!(digon_arc().is_boundary_connected());
    }

    #[test]
    fn closed_web_counts() {
        let t = theta();
        assert_eq!(3 * t.num_vertices(), 2 * t.num_edges());
    }
}
