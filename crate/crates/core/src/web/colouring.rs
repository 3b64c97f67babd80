use std::collections::VecDeque;

use serde::Serialize;

use super::{HalfEdgeId, RegionId, Regions, Web};
use crate::error::{Error, Result};

/// Colours in Z/3 for every region, indexed by region id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceColouring {
    pub base: u8,
    pub colour: Vec<u8>,
}

impl FaceColouring {
    /// True iff the two sides of every edge, and of every circle, differ.
    pub fn is_proper(&self, web: &Web, regions: &Regions) -> bool {
        let edges_ok = web.edges().iter().all(|&(t, h)| {
            self.colour[regions.region_of_dart[t]] != self.colour[regions.region_of_dart[h]]
        });
        edges_ok && regions.iter().all(|r| r.inside_of.map_or(true, |o| self.colour[o] != self.colour[r.id]))
    }
}

/// Step across the edge containing dart `d`: leaving the left side of the
/// edge's declared direction adds one, leaving the right side subtracts one.
fn crossing_step(web: &Web, regions: &Regions, d: HalfEdgeId) -> (RegionId, RegionId, u8) {
    let t = if web.is_tail(d) { d } else { web.twin(d) };
    let left = regions.region_of_dart[t];
    let right = regions.region_of_dart[web.twin(t)];
    (left, right, 1)
}

/// The canonical 3-colouring with the unbounded region coloured `base`.
///
/// Crossing an edge from its left side to its right side (looking along its
/// orientation) adds 1; vertexless circles count as counterclockwise, so
/// the inside of a circle is its outside minus 1.
pub fn face_colouring(web: &Web, base: u8) -> Result<FaceColouring> {
    let regions = web.regions()?;
    let n = regions.len();
    let mut adj: Vec<Vec<(RegionId, u8)>> = vec![Vec::new(); n];
    for &(t, _) in web.edges() {
        let (l, r, step) = crossing_step(web, &regions, t);
        adj[l].push((r, step));
        adj[r].push((l, 3 - step));
    }
    for r in regions.iter() {
        if let Some(o) = r.inside_of {
            adj[o].push((r.id, 2));
            adj[r.id].push((o, 1));
        }
    }
    let mut colour = vec![u8::MAX; n];
    colour[0] = base % 3;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &(y, step) in &adj[x] {
            let c = (colour[x] + step) % 3;
            if colour[y] == u8::MAX {
                colour[y] = c;
                queue.push_back(y);
            } else if colour[y] != c {
                return Err(Error::Contradiction(format!("face colouring is path dependent at region {y}")));
            }
        }
    }
    if let Some(r) = colour.iter().position(|&c| c == u8::MAX) {
        return Err(Error::Contradiction(format!("region {r} is unreachable from the unbounded region")));
    }
    Ok(FaceColouring { base: base % 3, colour })
}

/// Colour reached by crossing the edges of `path` (one dart per edge) in
/// order, starting in the unbounded region with colour `base`.
///
/// Each crossed edge must border the current region; returns the final
/// region and its colour.
pub fn colour_along_path(web: &Web, base: u8, path: &[HalfEdgeId]) -> Result<(RegionId, u8)> {
    let regions = web.regions()?;
    let mut here = regions.unbounded();
    let mut colour = base % 3;
    for &d in path {
        if d >= web.num_half_edges() {
            return Err(Error::Precondition(format!("half-edge {d} out of range")));
        }
        let (l, r, step) = crossing_step(web, &regions, d);
        if here == l {
            here = r;
            colour = (colour + step) % 3;
        } else if here == r {
            here = l;
            colour = (colour + 3 - step) % 3;
        } else {
            return Err(Error::Precondition(format!("edge of half-edge {d} does not border region {here}")));
        }
    }
    Ok((here, colour))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn arc_colouring() {
        let w = arc();
        let c = face_colouring(&w, 0).unwrap();
        assert_eq!(c.colour[0], 0);
        assert_eq!(c.colour.len(), 2);
        assert_ne!(c.colour[1], 0);
        let regions = w.regions().unwrap();
        assert!(c.is_proper(&w, &regions));
    }

    #[test]
    fn base_shift_is_pointwise() {
        for w in [arc(), tripod(), digon_arc(), theta(), double_digon_arc(), arc_with_circle()] {
            let c0 = face_colouring(&w, 0).unwrap();
            for base in 1..3 {
                let c = face_colouring(&w, base).unwrap();
                let shifted: Vec<u8> = c0.colour.iter().map(|x| (x + base) % 3).collect();
                assert_eq!(c.colour, shifted);
            }
        }
    }

    #[test]
    fn circle_inside_is_one_less() {
        let c = face_colouring(&circle(), 0).unwrap();
        assert_eq!(c.colour, vec![0, 2]);
    }

    #[test]
    fn two_paths_agree() {
        // Around either side of the digon, from the outside to the region under the arc.
        let w = digon_arc();
        let c = face_colouring(&w, 0).unwrap();
        let regions = w.regions().unwrap();
        let (r1, c1) = colour_along_path(&w, 0, &[2, 4]).unwrap();
        let (r2, c2) = colour_along_path(&w, 0, &[3]).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(c1, c2);
        assert_eq!(c.colour[r1], c1);
        assert!(regions.get(r1).touches_border);
    }
}
