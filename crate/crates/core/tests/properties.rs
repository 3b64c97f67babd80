//! Invariants over randomly generated webs.

use proptest::prelude::*;
use sl3web::generator::{generate_all_non_elliptic, generate_closed, generate_open};
use sl3web::kuperberg::{bracket, bracket_with_order, ReductionOrder};
use sl3web::web::io::{parse_web, write_web};
use sl3web::web::{canonical_form, colour_along_path, face_colouring, BoundaryPoint, Vertex};
use sl3web::{Sign, SignSequence, Web};

fn open_web() -> impl Strategy<Value = Web> {
    (0usize..16, any::<u64>()).prop_map(|(v, seed)| generate_open(v, 1, seed).remove(0))
}

fn admissible_signs() -> impl Strategy<Value = SignSequence> {
    prop::collection::vec(prop::bool::ANY, 2..=7)
        .prop_map(|v| SignSequence(v.into_iter().map(|p| if p { Sign::Plus } else { Sign::Minus }).collect()))
        .prop_filter("admissible", |e| e.is_admissible())
}

fn closed_web() -> impl Strategy<Value = Web> {
    (0usize..16, any::<u64>()).prop_map(|(v, seed)| generate_closed(v, 1, seed).remove(0))
}

/// The same web with half-edges renamed by `perm` and vertices reversed.
fn relabel(w: &Web, perm: &[usize]) -> Web {
    let vertices = w
        .vertices()
        .iter()
        .rev()
        .map(|v| Vertex { kind: v.kind, rotation: v.rotation.iter().map(|&h| perm[h]).collect() })
        .collect();
    let edges = w.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    let boundary = w.boundary().iter().map(|p| BoundaryPoint { half_edge: perm[p.half_edge], sign: p.sign }).collect();
    Web::from_parts(w.facing(), vertices, edges, boundary, vec![]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mirror_is_an_involution(w in open_web()) {
        let m = w.mirror();
        prop_assert!(m.validate().is_empty());
        prop_assert_eq!(m.signs(), w.signs());
        prop_assert_eq!(canonical_form(&m.mirror()), canonical_form(&w));
        prop_assert_eq!(m.is_non_elliptic().unwrap(), w.is_non_elliptic().unwrap());
    }

    #[test]
    fn canonical_form_ignores_labels(w in open_web(), seed in any::<u64>()) {
        let n = w.num_half_edges();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed | 1;
        for i in (1..n).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            perm.swap(i, (x % (i as u64 + 1)) as usize);
        }
        prop_assert_eq!(canonical_form(&relabel(&w, &perm)), canonical_form(&w));
    }

    #[test]
    fn file_round_trip(w in open_web()) {
        let back = parse_web(&write_web(&w)).unwrap();
        prop_assert_eq!(canonical_form(&back), canonical_form(&w));
    }

    #[test]
    fn reduction_order_does_not_matter(w in closed_web(), seeds in prop::collection::vec(any::<u64>(), 1..6)) {
        let want = bracket(&w).unwrap();
        prop_assert!(want.is_symmetric());
        for s in seeds {
            prop_assert_eq!(&bracket_with_order(&w, &ReductionOrder::Random(s)).unwrap(), &want);
        }
    }

    #[test]
    fn bracket_is_multiplicative(a in closed_web(), b in closed_web()) {
        let lhs = bracket(&a.disjoint_union(&b)).unwrap();
        prop_assert_eq!(lhs, &bracket(&a).unwrap() * &bracket(&b).unwrap());
    }

    #[test]
    fn pairing_is_symmetric(eps in admissible_signs(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let webs = generate_all_non_elliptic(&eps, 30).unwrap();
        let (a, b) = (i.get(&webs), j.get(&webs));
        let ab = bracket(&Web::closure(a, b).unwrap()).unwrap();
        let ba = bracket(&Web::closure(b, a).unwrap()).unwrap();
        prop_assert_eq!(&ab, &ba);
        prop_assert!(ab.degree().unwrap() <= eps.len() as i64);
        if canonical_form(a) != canonical_form(b) {
            prop_assert!(ab.degree().unwrap() < eps.len() as i64);
        }
    }

    #[test]
    fn colouring_is_path_independent(w in open_web(), steps in prop::collection::vec(any::<prop::sample::Index>(), 1..20)) {
        let c = face_colouring(&w, 0).unwrap();
        let regions = w.regions().unwrap();
        prop_assert!(c.is_proper(&w, &regions));
        let shifted = face_colouring(&w, 2).unwrap();
        prop_assert!(c.colour.iter().zip(&shifted.colour).all(|(a, b)| (a + 2) % 3 == *b));
        let mut here = regions.unbounded();
        let mut path = Vec::new();
        for i in steps {
            let darts: Vec<usize> = (0..w.num_half_edges()).filter(|&h| regions.region_of_dart[h] == here).collect();
            if darts.is_empty() {
                break;
            }
            let d = *i.get(&darts);
            path.push(d);
            here = regions.region_of_dart[w.twin(d)];
        }
        let (end, colour) = colour_along_path(&w, 0, &path).unwrap();
        prop_assert_eq!(end, here);
        prop_assert_eq!(colour, c.colour[end]);
    }
}
