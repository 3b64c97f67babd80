use super::{Facing, HalfEdgeId, VertexKind, Web};

const NONE: u32 = u32::MAX;

/// Breadth-first relabelling seeded by `seeds` (already in label order).
/// Each newly reached vertex gets its half-edges labelled counterclockwise
/// starting from the half-edge it was entered through.
fn bfs_code(w: &Web, seeds: &[HalfEdgeId]) -> Vec<u32> {
    let mut label = vec![NONE; w.num_half_edges()];
    let mut order: Vec<HalfEdgeId> = Vec::new();
    let mut kinds = Vec::new();
    let mut push_vertex = |start: HalfEdgeId, label: &mut Vec<u32>, order: &mut Vec<HalfEdgeId>| {
        let v = w.vertex_of(start).expect("vertex half-edge");
        kinds.push(match w.vertex(v).kind {
            VertexKind::Source => 0,
            VertexKind::Sink => 1,
        });
        let mut h = start;
        loop {
            label[h] = order.len() as u32;
            order.push(h);
            h = w.rot_next(h);
            if h == start {
                break;
            }
        }
    };
    for &s in seeds {
        if label[s] != NONE {
            continue;
        }
        if w.vertex_of(s).is_some() {
            push_vertex(s, &mut label, &mut order);
        } else {
            label[s] = order.len() as u32;
            order.push(s);
        }
    }
    let mut i = 0;
    while i < order.len() {
        let t = w.twin(order[i]);
        if label[t] == NONE {
            push_vertex(t, &mut label, &mut order);
        }
        i += 1;
    }
    let mut code = Vec::with_capacity(order.len() + kinds.len() + 2);
    code.push(order.len() as u32);
    code.push(kinds.len() as u32);
    code.extend(order.iter().map(|&h| label[w.twin(h)]));
    code.extend(kinds);
    code
}

/// A byte string identifying the web up to relabelling with the boundary
/// order fixed. Closed components away from the border are compared as
/// unrooted maps; their nesting and the position of vertexless circles are
/// ignored.
pub fn canonical_form(web: &Web) -> Vec<u8> {
    let comps = web.components();
    let mut words: Vec<u32> = vec![
        match web.facing() {
            Facing::Up => 0,
            Facing::Down => 1,
        },
        web.boundary_len() as u32,
    ];
    words.extend(web.boundary().iter().map(|p| u32::from(p.sign == crate::sign::Sign::Minus)));
    let seeds: Vec<_> = web.boundary().iter().map(|p| p.half_edge).collect();
    words.extend(bfs_code(web, &seeds));
    let mut floating: Vec<Vec<u32>> = Vec::new();
    for c in 0..comps.count {
        if Some(c) == comps.border {
            continue;
        }
        let best = (0..web.num_half_edges())
            .filter(|&h| web.vertex_of(h).is_some_and(|v| comps.of_vertex[v] == c))
            .map(|h| bfs_code(web, &[h]))
            .min()
            .expect("component has a vertex");
        floating.push(best);
    }
    floating.sort();
    words.push(web.circle_count() as u32);
    words.push(floating.len() as u32);
    for f in floating {
        words.extend(f);
    }
    words.iter().flat_map(|x| x.to_be_bytes()).collect()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{BoundaryPoint, Vertex};
    use super::*;

    /// Renames half-edges by `perm` and vertices by reversal.
    fn relabel(w: &Web, perm: &[usize]) -> Web {
        let vertices = w
            .vertices()
            .iter()
            .rev()
            .map(|v| Vertex { kind: v.kind, rotation: v.rotation.iter().map(|&h| perm[h]).collect() })
            .collect();
        let edges = w.edges().iter().rev().map(|&(a, b)| (perm[a], perm[b])).collect();
        let boundary =
            w.boundary().iter().map(|p| BoundaryPoint { half_edge: perm[p.half_edge], sign: p.sign }).collect();
        Web::from_parts(w.facing(), vertices, edges, boundary, vec![]).unwrap()
    }

    #[test]
    fn relabelling_preserves_form() {
        for w in [arc(), tripod(), digon_arc(), theta(), double_digon_arc()] {
            let n = w.num_half_edges();
            let perm: Vec<usize> = (0..n).map(|h| (h * 7 + 3) % n).collect();
            if perm.iter().collect::<std::collections::HashSet<_>>().len() != n {
                continue;
            }
            assert_eq!(canonical_form(&relabel(&w, &perm)), canonical_form(&w));
        }
    }

    #[test]
    fn distinct_webs_differ() {
        assert_ne!(canonical_form(&arc()), canonical_form(&tripod()));
        assert_ne!(canonical_form(&arc()), canonical_form(&digon_arc()));
        assert_ne!(canonical_form(&tripod()), canonical_form(&tripod().mirror()));
    }

    #[test]
    fn double_mirror_matches() {
        for w in [arc(), tripod(), digon_arc(), theta()] {
            assert_eq!(canonical_form(&w.mirror().mirror()), canonical_form(&w));
        }
    }
}
