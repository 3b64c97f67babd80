use serde::{Deserialize, Serialize};

use super::{Facing, HalfEdgeId, Region, Web, WebBuilder, VertexKind};
use crate::error::{Error, Result};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EllipticKind {
    Circle,
    Digon,
    Square,
}

/// The two ways of resolving a square face with vertices `v0 v1 v2 v3`
/// (in face order): `First` joins the outer strands of `v0,v1` and of
/// `v2,v3`; `Second` joins `v1,v2` and `v3,v0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Smoothing {
    First,
    Second,
}

/// Local pieces glued onto the border line of an upward facing web.
///
/// `Cup`, `Split` and `H` grow a web away from the line (inverses of the
/// ∩, λ and H reductions); `Cap` and `Merge` close strands off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BorderMove {
    /// Insert an arc before boundary index `at`; `left` is the sign of its left end.
    Cup { at: usize, left: Sign },
    /// Replace the point `at` by a vertex with two legs of the opposite sign.
    Split { at: usize },
    /// Replace the opposite-signed points `at, at+1` by an H.
    H { at: usize },
    /// Join the opposite-signed points `at, at+1`.
    Cap { at: usize },
    /// Join the equal-signed points `at, at+1` at a vertex with one new leg.
    Merge { at: usize },
}

impl Web {
    /// Reflection through the border line with every orientation reversed.
    /// Boundary order and signs are unchanged; the facing flips.
    pub fn mirror(&self) -> Web {
        let mut b = WebBuilder::from_web(self);
        b.facing = match self.facing {
            Facing::Up => Facing::Down,
            Facing::Down => Facing::Up,
        };
        for (k, r) in b.kinds.iter_mut().zip(b.rotations.iter_mut()) {
            *k = k.map(VertexKind::flipped);
            r.reverse();
        }
        b.finish_preserving_ids(self)
    }

    /// The closed web obtained by gluing the mirror of `w1` under `w2`.
    pub fn closure(w1: &Web, w2: &Web) -> Result<Web> {
        if w1.facing != Facing::Up || w2.facing != Facing::Up {
            return Err(Error::NotUpward);
        }
        if w1.signs() != w2.signs() {
            return Err(Error::BoundaryMismatch { left: w1.signs(), right: w2.signs() });
        }
        let mut b = WebBuilder::new(Facing::Up);
        let (o2, _) = b.append(w2, false);
        let (o1, _) = b.append(w1, true);
        let top: Vec<_> = w2.boundary.iter().map(|p| p.half_edge + o2).collect();
        let bottom: Vec<_> = w1.boundary.iter().map(|p| p.half_edge + o1).collect();
        let dead: Vec<_> = top.iter().chain(&bottom).copied().collect();
        let pairs: Vec<_> = top.iter().copied().zip(bottom.iter().copied()).collect();
        b.splice(&[], &dead, &pairs)?;
        Ok(b.finish())
    }

    /// Side by side union; the boundary of `other` is appended to the right.
    pub fn disjoint_union(&self, other: &Web) -> Web {
        let mut b = WebBuilder::from_web(self);
        let (ho, _) = b.append(other, false);
        b.boundary.extend(other.boundary.iter().map(|p| (p.half_edge + ho, p.sign)));
        b.finish()
    }

    /// Any circle, digon or square; `None` iff the web is non-elliptic.
    pub fn find_elliptic_face(&self) -> Result<Option<(EllipticKind, Region)>> {
        let regions = self.regions()?;
        if let Some(r) = regions.iter().find(|r| r.is_face() && r.walks.is_empty()) {
            return Ok(Some((EllipticKind::Circle, r.clone())));
        }
        for r in regions.iter() {
            if !r.is_face() || !r.is_disk {
                continue;
            }
            match r.sides() {
                2 => return Ok(Some((EllipticKind::Digon, r.clone()))),
                4 => return Ok(Some((EllipticKind::Square, r.clone()))),
                _ => {}
            }
        }
        Ok(None)
    }

    pub fn is_non_elliptic(&self) -> Result<bool> {
        Ok(self.find_elliptic_face()?.is_none())
    }

    /// Removes one vertexless circle.
    pub fn remove_circle(&self) -> Result<Web> {
        if self.circle_count() == 0 {
            return Err(Error::Precondition("web has no vertexless circle".into()));
        }
        let mut b = WebBuilder::from_web(self);
        let i = b.circles.iter().position(|c| c.count > 0).expect("counted above");
        b.circles[i].count -= 1;
        b.circles.retain(|c| c.count > 0);
        Ok(b.finish())
    }

    /// Collapses the digon whose face walk is `walk` into a single strand.
    pub fn collapse_digon(&self, walk: &[HalfEdgeId]) -> Result<Web> {
        let [d0, d1] = *walk else {
            return Err(Error::Precondition(format!("digon walk has {} darts", walk.len())));
        };
        let (u, v) = (self.owner(d0)?, self.owner(d1)?);
        if u == v {
            return Err(Error::Precondition("digon walk revisits a vertex".into()));
        }
        let a = self.third_half_edge(u, d0, self.twin(d1));
        let c = self.third_half_edge(v, d1, self.twin(d0));
        let mut b = WebBuilder::from_web(self);
        b.splice(&[u, v], &[], &[(a, c)])?;
        Ok(b.finish())
    }

    /// The outer half-edges `e0..e3` of the square with face walk `walk`.
    fn square_ports(&self, walk: &[HalfEdgeId]) -> Result<([usize; 4], [HalfEdgeId; 4])> {
        if walk.len() != 4 {
            return Err(Error::Precondition(format!("square walk has {} darts", walk.len())));
        }
        let mut verts = [0; 4];
        let mut ports = [0; 4];
        for i in 0..4 {
            let v = self.owner(walk[i])?;
            let incoming = self.twin(walk[(i + 3) % 4]);
            verts[i] = v;
            ports[i] = self.third_half_edge(v, walk[i], incoming);
        }
        let mut sorted = verts;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("square walk revisits a vertex".into()));
        }
        Ok((verts, ports))
    }

    /// Replaces the square with face walk `walk` by one of its two smoothings.
    pub fn smooth_square(&self, walk: &[HalfEdgeId], which: Smoothing) -> Result<Web> {
        let (verts, e) = self.square_ports(walk)?;
        let pairs = match which {
            Smoothing::First => [(e[0], e[1]), (e[2], e[3])],
            Smoothing::Second => [(e[1], e[2]), (e[3], e[0])],
        };
        let mut b = WebBuilder::from_web(self);
        b.splice(&verts, &[], &pairs)?;
        Ok(b.finish())
    }

    /// Splits the web into the part attached to the border (possibly empty),
    /// each closed connected component, and the number of vertexless circles.
    pub fn split_components(&self) -> (Web, Vec<Web>, usize) {
        let comps = self.components();
        let keep_only = |c: Option<usize>| {
            let mut b = WebBuilder::from_web(self);
            b.circles.clear();
            let dead: Vec<_> =
                (0..self.vertices.len()).filter(|&v| Some(comps.of_vertex[v]) != c).collect();
            let dead_boundary: Vec<_> =
                if c.is_some() && c == comps.border { vec![] } else { b.boundary.iter().map(|p| p.0).collect() };
            b.splice(&dead, &dead_boundary, &[]).expect("whole components have no ports");
            b.finish()
        };
        let attached = match comps.border {
            Some(c) => keep_only(Some(c)),
            None => Web::empty(),
        };
        let floating = (0..comps.count).filter(|&c| Some(c) != comps.border).map(|c| keep_only(Some(c))).collect();
        (attached, floating, self.circle_count())
    }

    fn owner(&self, h: HalfEdgeId) -> Result<usize> {
        self.vertex_of(h).ok_or_else(|| Error::Precondition(format!("half-edge {h} is on the border")))
    }

    /// Glues a local piece onto the border line.
    pub fn apply_border_move(&self, mv: BorderMove) -> Result<Web> {
        if self.facing != Facing::Up {
            return Err(Error::NotUpward);
        }
        let n = self.boundary.len();
        let sign_at = |i: usize| self.boundary[i].sign;
        let check_pair = |at: usize, same: bool| -> Result<()> {
            if at + 1 >= n {
                return Err(Error::Precondition(format!("no boundary pair at {at}")));
            }
            if (sign_at(at) == sign_at(at + 1)) != same {
                return Err(Error::Precondition(format!(
                    "boundary pair at {at} must have {} signs",
                    if same { "equal" } else { "opposite" }
                )));
            }
            Ok(())
        };
        let mut b = WebBuilder::from_web(self);
        match mv {
            BorderMove::Cup { at, left } => {
                if at > n {
                    return Err(Error::Precondition(format!("cup position {at} beyond boundary of length {n}")));
                }
                let l = b.new_half_edge();
                let r = b.new_half_edge();
                b.link(l, r);
                b.boundary.splice(at..at, [(l, left), (r, -left)]);
            }
            BorderMove::Split { at } => {
                if at >= n {
                    return Err(Error::Precondition(format!("no boundary point {at}")));
                }
                let (old, s) = b.boundary[at];
                let x = b.twin[old];
                let (up, left, right) = (b.new_half_edge(), b.new_half_edge(), b.new_half_edge());
                let kind = if s == Sign::Plus { VertexKind::Sink } else { VertexKind::Source };
                b.add_vertex(kind, vec![up, left, right]);
                b.link(up, x);
                let (ql, qr) = (b.new_half_edge(), b.new_half_edge());
                b.link(left, ql);
                b.link(right, qr);
                b.twin[old] = usize::MAX;
                b.boundary.splice(at..=at, [(ql, -s), (qr, -s)]);
            }
            BorderMove::H { at } => {
                check_pair(at, false)?;
                let (bl, sl) = b.boundary[at];
                let (br, _) = b.boundary[at + 1];
                let (xl, xr) = (b.twin[bl], b.twin[br]);
                let kind_l = if sl == Sign::Plus { VertexKind::Sink } else { VertexKind::Source };
                let (pu, du, ru) = (b.new_half_edge(), b.new_half_edge(), b.new_half_edge());
                let (pv, lv, dv) = (b.new_half_edge(), b.new_half_edge(), b.new_half_edge());
                b.add_vertex(kind_l, vec![pu, du, ru]);
                b.add_vertex(kind_l.flipped(), vec![pv, lv, dv]);
                if xl == br {
                    b.link(pu, pv);
                } else {
                    b.link(pu, xl);
                    b.link(pv, xr);
                }
                b.link(ru, lv);
                let (ql, qr) = (b.new_half_edge(), b.new_half_edge());
                b.link(du, ql);
                b.link(dv, qr);
                b.twin[bl] = usize::MAX;
                b.twin[br] = usize::MAX;
                b.boundary.splice(at..=at + 1, [(ql, -sl), (qr, sl)]);
            }
            BorderMove::Cap { at } => {
                check_pair(at, false)?;
                let (bl, br) = (b.boundary[at].0, b.boundary[at + 1].0);
                b.splice(&[], &[bl, br], &[(bl, br)])?;
            }
            BorderMove::Merge { at } => {
                check_pair(at, true)?;
                let (bl, s) = b.boundary[at];
                let (br, _) = b.boundary[at + 1];
                let (xl, xr) = (b.twin[bl], b.twin[br]);
                let kind = if s == Sign::Plus { VertexKind::Sink } else { VertexKind::Source };
                let (down, right, left) = (b.new_half_edge(), b.new_half_edge(), b.new_half_edge());
                b.add_vertex(kind, vec![down, right, left]);
                b.link(left, xl);
                b.link(right, xr);
                let q = b.new_half_edge();
                b.link(down, q);
                b.twin[bl] = usize::MAX;
                b.twin[br] = usize::MAX;
                b.boundary.splice(at..=at + 1, [(q, -s)]);
            }
        }
        Ok(b.finish())
    }
}

impl WebBuilder {
    /// Like `finish`, for edits that only touch vertex data: ids are kept.
    fn finish_preserving_ids(self, original: &Web) -> Web {
        let vertices = self
            .kinds
            .iter()
            .zip(self.rotations)
            .map(|(k, rotation)| super::Vertex { kind: k.expect("no deletions"), rotation })
            .collect();
        let edges = original.edges.iter().map(|&(t, h)| (h, t)).collect();
        // Reflection swaps the two sides of every dart.
        let circles = original
            .circles
            .iter()
            .map(|c| super::CircleGroup { count: c.count, region_hint: c.region_hint.map(|h| original.twin(h)) })
            .collect();
        Web::from_parts(self.facing, vertices, edges, original.boundary.clone(), circles)
            .expect("same references")
    }
}

pub fn mirror(web: &Web) -> Web {
    web.mirror()
}

pub fn closure(w1: &Web, w2: &Web) -> Result<Web> {
    Web::closure(w1, w2)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn closure_examples() {
        let c = Web::closure(&arc(), &arc()).unwrap();
        assert!(c.is_closed());
        assert_eq!((c.num_vertices(), c.circle_count()), (0, 1));
        let t = Web::closure(&tripod(), &tripod()).unwrap();
        assert_eq!(t.validate(), vec![]);
        assert_eq!(canonical_form_eq(&t, &theta()), true);
        assert!(matches!(Web::closure(&arc(), &tripod()), Err(Error::BoundaryMismatch { .. })));
    }

    fn canonical_form_eq(a: &Web, b: &Web) -> bool {
        super::super::canonical_form(a) == super::super::canonical_form(b)
    }

    #[test]
    fn mirror_is_an_involution() {
        for w in [arc(), tripod(), digon_arc(), theta()] {
            let m = w.mirror();
            assert_eq!(m.validate(), vec![]);
            assert_eq!(m.signs(), w.signs());
            assert_eq!(m.mirror(), w);
        }
        assert_eq!(tripod().mirror().facing(), Facing::Down);
    }

    #[test]
    fn elliptic_faces() {
        assert_eq!(circle().find_elliptic_face().unwrap().unwrap().0, EllipticKind::Circle);
        assert_eq!(theta().find_elliptic_face().unwrap().unwrap().0, EllipticKind::Digon);
        assert!(arc().find_elliptic_face().unwrap().is_none());
        assert!(tripod().find_elliptic_face().unwrap().is_none());
        assert_eq!(digon_arc().find_elliptic_face().unwrap().unwrap().0, EllipticKind::Digon);
    }

    #[test]
    fn digon_collapse_gives_arc() {
        let w = digon_arc();
        let (_, r) = w.find_elliptic_face().unwrap().unwrap();
        let out = w.collapse_digon(&r.walks[0]).unwrap();
        assert_eq!(out.validate(), vec![]);
        assert!(canonical_form_eq(&out, &arc()));
    }

    #[test]
    fn theta_digon_leaves_circle() {
        let t = theta();
        let (_, r) = t.find_elliptic_face().unwrap().unwrap();
        let out = t.collapse_digon(&r.walks[0]).unwrap();
        assert_eq!((out.num_vertices(), out.circle_count()), (0, 1));
    }

    #[test]
    fn border_moves_build_valid_webs() {
        let tri = arc().apply_border_move(BorderMove::Split { at: 1 }).unwrap();
        assert_eq!(tri.validate(), vec![]);
        assert_eq!(tri.signs().to_string(), "(+,+,+)");
        assert!(canonical_form_eq(&tri, &tripod()));
        let h = arc().apply_border_move(BorderMove::H { at: 0 }).unwrap();
        assert_eq!(h.validate(), vec![]);
        assert_eq!(h.signs().to_string(), "(-,+)");
        assert_eq!(h.find_elliptic_face().unwrap().unwrap().0, EllipticKind::Digon);
        let closed = tripod().apply_border_move(BorderMove::Merge { at: 0 }).unwrap();
        assert_eq!(closed.validate(), vec![]);
        assert_eq!(closed.signs().to_string(), "(-,+)");
        let done = closed.apply_border_move(BorderMove::Cap { at: 0 }).unwrap();
        assert!(done.is_closed());
        assert!(canonical_form_eq(&done, &theta()));
        let circ = arc().apply_border_move(BorderMove::Cap { at: 0 }).unwrap();
        assert_eq!(circ.circle_count(), 1);
        assert!(arc().apply_border_move(BorderMove::Merge { at: 0 }).is_err());
    }
}
