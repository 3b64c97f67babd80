//! Enumeration of non-elliptic webs by growth from the border, and random
//! closed webs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sign::{Sign, SignSequence};
use crate::web::{canonical_form, BorderMove, Web};

/// Memoised growth: every non-elliptic ε-web arises from a smaller one by
/// gluing an arc, a vertex or an H to the border, since it contains one of
/// the three at the border line.
#[derive(Default)]
pub struct Growth {
    /// Webs per sequence and exact vertex count.
    memo: HashMap<(Vec<Sign>, usize), Rc<Vec<Web>>>,
}

impl Growth {
    pub fn new() -> Self {
        Self::default()
    }

    /// Non-elliptic ε-webs with at most `max_vertices` vertices, ordered by
    /// vertex count.
    pub fn non_elliptic(&mut self, eps: &SignSequence, max_vertices: usize) -> Result<Vec<Web>> {
        if !eps.is_admissible() {
            return Err(Error::NotAdmissible(eps.clone()));
        }
        let mut out = Vec::new();
        for k in 0..=max_vertices {
            out.extend(self.exactly(&eps.0, k)?.iter().cloned());
        }
        Ok(out)
    }

    /// Non-elliptic ε-webs with exactly `k` vertices.
    pub fn with_vertices(&mut self, eps: &SignSequence, k: usize) -> Result<Vec<Web>> {
        if !eps.is_admissible() {
            return Err(Error::NotAdmissible(eps.clone()));
        }
        Ok(self.exactly(&eps.0, k)?.as_ref().clone())
    }

    fn exactly(&mut self, eps: &[Sign], k: usize) -> Result<Rc<Vec<Web>>> {
        let key = (eps.to_vec(), k);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        // Arcs and vertices glued to the border close off no region, so
        // only the H move can create an elliptic face.
        let mut keep = |w: Web, check: bool| -> Result<()> {
            if (!check || w.is_non_elliptic()?) && seen.insert(canonical_form(&w)) {
                out.push(w);
            }
            Ok(())
        };
        if eps.is_empty() && k == 0 {
            keep(Web::empty(), false)?;
        }
        for i in 0..eps.len().saturating_sub(1) {
            let (s, t) = (eps[i], eps[i + 1]);
            if s != t {
                let mut smaller = eps.to_vec();
                smaller.drain(i..=i + 1);
                for w in self.exactly(&smaller, k)?.iter() {
                    keep(w.apply_border_move(BorderMove::Cup { at: i, left: s })?, false)?;
                }
                if k >= 2 {
                    let mut swapped = eps.to_vec();
                    swapped.swap(i, i + 1);
                    for w in self.exactly(&swapped, k - 2)?.iter() {
                        keep(w.apply_border_move(BorderMove::H { at: i })?, true)?;
                    }
                }
            } else if k >= 1 {
                let mut merged = eps.to_vec();
                merged.splice(i..=i + 1, [-s]);
                for w in self.exactly(&merged, k - 1)?.iter() {
                    keep(w.apply_border_move(BorderMove::Split { at: i })?, false)?;
                }
            }
        }
        out.sort_by_cached_key(canonical_form);
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// Every non-elliptic ε-web with at most `max_vertices` vertices, without
/// repetition, ordered by vertex count.
pub fn generate_non_elliptic(eps: &SignSequence, max_vertices: usize) -> Result<Vec<Web>> {
    Growth::new().non_elliptic(eps, max_vertices)
}

/// Number of walks from 0 to 0 in the dominant Weyl chamber of sl3 whose
/// steps are weights of V (for `+`) or of V* (for `-`). This is the
/// dimension of the invariant space, hence the number of non-elliptic ε-webs.
pub fn dominant_path_count(eps: &SignSequence) -> u64 {
    const PLUS: [(i64, i64); 3] = [(1, 0), (-1, 1), (0, -1)];
    const MINUS: [(i64, i64); 3] = [(0, 1), (1, -1), (-1, 0)];
    let mut cur: BTreeMap<(i64, i64), u64> = BTreeMap::from([((0, 0), 1)]);
    for s in eps.iter() {
        let steps = if s == Sign::Plus { PLUS } else { MINUS };
        let mut next = BTreeMap::new();
        for (&(a, b), &n) in &cur {
            for (da, db) in steps {
                let (x, y) = (a + da, b + db);
                if x >= 0 && y >= 0 {
                    *next.entry((x, y)).or_insert(0) += n;
                }
            }
        }
        cur = next;
    }
    cur.get(&(0, 0)).copied().unwrap_or(0)
}

/// All non-elliptic ε-webs: the vertex bound is raised until the count
/// reaches [`dominant_path_count`]. Fails if `vertex_limit` is reached first.
pub fn generate_all_non_elliptic(eps: &SignSequence, vertex_limit: usize) -> Result<Vec<Web>> {
    let want = dominant_path_count(eps) as usize;
    let mut growth = Growth::new();
    for bound in 0..=vertex_limit {
        let webs = growth.non_elliptic(eps, bound)?;
        if webs.len() == want {
            return Ok(webs);
        }
        if webs.len() > want {
            return Err(Error::Contradiction(format!(
                "{} non-elliptic webs for {eps}, more than the {want} dominant paths",
                webs.len()
            )));
        }
    }
    Err(Error::SizeGuard { what: "vertex bound for complete enumeration", actual: vertex_limit + 1, limit: vertex_limit })
}

/// Longest boundary reached while growing a random closed web.
const RANDOM_BOUNDARY_CAP: usize = 10;

/// `count` pseudo-random valid closed webs with at most `max_vertices`
/// vertices, reproducible from `seed`. Elliptic faces, floating components
/// and vertexless circles all occur.
pub fn generate_closed(max_vertices: usize, count: usize, seed: u64) -> Vec<Web> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(w) = random_closed(max_vertices, &mut rng) {
            out.push(w);
        }
    }
    out
}

/// `count` pseudo-random upward webs with a non-empty boundary and at most
/// `max_vertices` vertices, reproducible from `seed`. Elliptic faces are not
/// filtered out.
pub fn generate_open(max_vertices: usize, count: usize, seed: u64) -> Vec<Web> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w = random_grown(max_vertices, &mut rng);
        if !w.is_closed() {
            out.push(w);
        }
    }
    out
}

fn random_grown(max_vertices: usize, rng: &mut ChaCha8Rng) -> Web {
    let mut w = Web::empty();
    let steps = rng.gen_range(1..=max_vertices + 3);
    for _ in 0..steps {
        let n = w.boundary_len();
        let v = w.num_vertices();
        let signs = w.signs().0;
        let mut moves = Vec::new();
        if n + 2 <= RANDOM_BOUNDARY_CAP {
            for at in 0..=n {
                moves.push(BorderMove::Cup { at, left: if rng.gen() { Sign::Plus } else { Sign::Minus } });
            }
        }
        if v + n + 2 <= max_vertices && n < RANDOM_BOUNDARY_CAP {
            moves.extend((0..n).map(|at| BorderMove::Split { at }));
        }
        if v + n + 2 <= max_vertices {
            moves.extend((0..n.saturating_sub(1)).filter(|&i| signs[i] != signs[i + 1]).map(|at| BorderMove::H { at }));
        }
        let Some(&mv) = moves.choose(rng) else { break };
        w = w.apply_border_move(mv).expect("move chosen to fit");
    }
    w
}

fn random_closed(max_vertices: usize, rng: &mut ChaCha8Rng) -> Option<Web> {
    let mut w = random_grown(max_vertices, rng);
    while w.boundary_len() > 0 {
        let signs = w.signs().0;
        let v = w.num_vertices();
        let caps: Vec<_> = (0..signs.len() - 1).filter(|&i| signs[i] != signs[i + 1]).map(|at| BorderMove::Cap { at }).collect();
        let merges: Vec<_> = (0..signs.len() - 1).filter(|&i| signs[i] == signs[i + 1]).map(|at| BorderMove::Merge { at }).collect();
        let mv = if caps.is_empty() || (v + signs.len() <= max_vertices && !merges.is_empty() && rng.gen_bool(0.3)) {
            *merges.choose(rng).expect("equal neighbours when no cap applies")
        } else {
            *caps.choose(rng).expect("non-empty")
        };
        w = w.apply_border_move(mv).expect("closing move fits");
    }
    (w.num_vertices() <= max_vertices).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::fixtures::*;

    fn eps(s: &str) -> SignSequence {
        s.parse().unwrap()
    }

    #[test]
    fn small_sequences() {
        let arcs = generate_non_elliptic(&eps("+-"), 6).unwrap();
        assert_eq!(arcs.len(), 1);
        assert_eq!(canonical_form(&arcs[0]), canonical_form(&arc()));
        let t = generate_non_elliptic(&eps("+++"), 1).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(canonical_form(&t[0]), canonical_form(&tripod()));
        assert!(generate_non_elliptic(&eps("+++"), 0).unwrap().is_empty());
        assert!(matches!(generate_non_elliptic(&eps("+"), 3), Err(Error::NotAdmissible(_))));
        assert_eq!(generate_non_elliptic(&eps(""), 3).unwrap().len(), 1);
    }

    #[test]
    fn path_counts() {
        assert_eq!(dominant_path_count(&eps("+-")), 1);
        assert_eq!(dominant_path_count(&eps("+++")), 1);
        assert_eq!(dominant_path_count(&eps("+-+-")), 2);
        assert_eq!(dominant_path_count(&eps("++++++")), 5);
        assert_eq!(dominant_path_count(&eps("+")), 0);
    }

    #[test]
    fn closed_webs_are_reproducible() {
        let a = generate_closed(12, 30, 7);
        assert_eq!(a, generate_closed(12, 30, 7));
        for w in &a {
            assert!(w.is_closed() && w.validate().is_empty());
            assert!(w.num_vertices() <= 12);
            assert_eq!(3 * w.num_vertices(), 2 * (w.num_edges()));
        }
        for w in generate_closed(0, 20, 1) {
            assert_eq!(w.num_vertices(), 0);
            assert!(w.circle_count() >= 1);
        }
    }
}
