use std::collections::HashSet;
use std::ops::Deref;

use serde::Serialize;

use super::{Facing, HalfEdgeId, RegionId, Web};
use crate::error::Result;

/// A connected component of the complement of the web in the half-plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub id: RegionId,
    /// Closed dart walks bounding the region; the region lies left of every dart.
    pub walks: Vec<Vec<HalfEdgeId>>,
    /// Vertexless circles on the boundary of the region (bounding it or lying in it).
    pub circles: usize,
    pub touches_border: bool,
    pub is_disk: bool,
    pub unbounded: bool,
    /// For the inside of a vertexless circle, the region the circle lies in.
    pub inside_of: Option<RegionId>,
}

impl Region {
    /// Bounded and away from the border line.
    pub fn is_face(&self) -> bool {
        !self.touches_border && !self.unbounded
    }

    /// Number of edge sides on the boundary.
    pub fn sides(&self) -> usize {
        self.walks.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Regions {
    pub regions: Vec<Region>,
    /// Region to the left of each dart.
    pub region_of_dart: Vec<RegionId>,
}

impl Regions {
    pub fn unbounded(&self) -> RegionId {
        0
    }

    pub fn get(&self, id: RegionId) -> &Region {
        &self.regions[id]
    }

    pub fn faces(&self) -> impl Iterator<Item = &Region> {
        self.regions.iter().filter(|r| r.is_face())
    }
}

impl Deref for Regions {
    type Target = [Region];
    fn deref(&self) -> &[Region] {
        &self.regions
    }
}

impl Web {
    /// Regions by face tracing. Region 0 is the unbounded one; the rest are
    /// numbered by smallest dart, followed by the insides of vertexless circles.
    ///
    /// Closed components not attached to the border are placed in the
    /// unbounded region, their outer face being the orbit with the most sides
    /// (ties to the smallest dart). Circles sit in the region of their hint.
    pub fn regions(&self) -> Result<Regions> {
        self.ensure_valid()?;
        let (orbit_of, orbits) = self.face_orbits();
        let comps = self.components();
        let mut outer_orbit: Vec<Option<usize>> = vec![None; comps.count];
        if let Some(b) = comps.border {
            let first = match self.facing {
                Facing::Up => self.boundary[0].half_edge,
                Facing::Down => self.boundary[self.boundary.len() - 1].half_edge,
            };
            outer_orbit[b] = Some(orbit_of[first]);
        }
        for (o, walk) in orbits.iter().enumerate() {
            let c = self.component_of_half_edge(&comps, walk[0]);
            if Some(c) == comps.border {
                continue;
            }
            match outer_orbit[c] {
                Some(best) if orbits[best].len() >= walk.len() => {}
                _ => outer_orbit[c] = Some(o),
            }
        }
        let outer: HashSet<usize> = outer_orbit.iter().flatten().copied().collect();
        let mut region_of_orbit = vec![0; orbits.len()];
        let mut regions = vec![Region {
            id: 0,
            walks: vec![],
            circles: 0,
            touches_border: comps.border.is_some(),
            is_disk: false,
            unbounded: true,
            inside_of: None,
        }];
        for (o, walk) in orbits.iter().enumerate() {
            if outer.contains(&o) {
                regions[0].walks.push(walk.clone());
                continue;
            }
            let touches = walk.iter().any(|&h| self.vertex_of(h).is_none());
            region_of_orbit[o] = regions.len();
            regions.push(Region {
                id: regions.len(),
                walks: vec![walk.clone()],
                circles: 0,
                touches_border: touches,
                is_disk: false,
                unbounded: false,
                inside_of: None,
            });
        }
        let region_of_dart: Vec<RegionId> = orbit_of.iter().map(|&o| region_of_orbit[o]).collect();
        for c in &self.circles {
            let host = c.region_hint.map_or(0, |h| region_of_dart[h]);
            regions[host].circles += c.count;
            for _ in 0..c.count {
                let id = regions.len();
                regions.push(Region {
                    id,
                    walks: vec![],
                    circles: 1,
                    touches_border: false,
                    is_disk: true,
                    unbounded: false,
                    inside_of: Some(host),
                });
            }
        }
        for r in regions.iter_mut() {
            if r.unbounded || r.walks.is_empty() {
                continue;
            }
            r.is_disk = r.walks.len() + r.circles == 1 && {
                let mut seen = HashSet::new();
                r.walks[0].iter().all(|&h| seen.insert(self.vertex_of(h)))
            };
        }
        Ok(Regions { regions, region_of_dart })
    }
}
