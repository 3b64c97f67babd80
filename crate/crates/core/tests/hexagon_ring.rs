//! The 24-vertex non-elliptic web whose six hexagons form an exact red graph.

use sl3web::kuperberg::{classify, decompose, hom_graded_dimension, FactorStatus, Verdict};
use sl3web::redgraph::*;
use sl3web::web::{canonical_form, fixtures};
use sl3web::SignSequence;

#[test]
fn shape() {
    let w = fixtures::hexagon_ring();
    assert!(w.validate().is_empty());
    assert_eq!(w.num_vertices(), 24);
    assert_eq!(w.signs(), "+--++--++--+".parse::<SignSequence>().unwrap());
    assert!(w.is_non_elliptic().unwrap());
    assert!(w.is_boundary_connected());
}

#[test]
fn virtually_decomposable_at_level_zero() {
    let w = fixtures::hexagon_ring();
    let c = classify(&w).unwrap();
    assert_eq!(c.verdict, Verdict::Decomposable);
    assert_eq!(c.level, Some(0));
    assert_eq!(c.bracket.degree(), Some(12));
    assert_eq!(c.bracket.coeff(12), 2.into());
    // Degree-zero endomorphisms: the identity and the projection onto w_G.
    assert_eq!(hom_graded_dimension(&w, &w).unwrap().coeff(0), 2.into());
}

#[test]
fn ring_is_exact() {
    let w = fixtures::hexagon_ring();
    let g = find_exact_red_graph(&w).unwrap().unwrap();
    assert_eq!((g.num_vertices(), g.num_edges(), g.level), (6, 6, 0));
    assert!(g.is_nice() && g.is_connected() && !g.is_tree());
    assert_eq!(g.girth(), Some(6));
    assert_eq!(count_fitting_orientations(&g).unwrap(), 2);
    let o = find_fitting_orientation(&g).unwrap();
    assert!(is_strongly_connected(&g, &o));
    let dual = dual_graph(&w).unwrap();
    assert_eq!(minimal_admissible_subgraph(&dual, &g).unwrap(), g);
    let admissible: Vec<_> = enumerate_red_graphs(&w, usize::MAX).unwrap().into_iter().filter(is_admissible).collect();
    assert_eq!(admissible, vec![g]);
}

#[test]
fn reduction_is_a_degree_zero_summand() {
    let w = fixtures::hexagon_ring();
    let g = find_exact_red_graph(&w).unwrap().unwrap();
    let ps = enumerate_pairings(&w, &g).unwrap();
    assert_eq!(ps.len(), 1);
    assert_eq!(projection_degree_shift(&g, &ps[0]), 0);
    let r = g_reduction(&w, &g, &ps[0]).unwrap();
    // Every vertex lies on the ring: six arcs remain.
    assert_eq!(r.num_vertices(), 0);
    assert_eq!(r.signs(), w.signs());
    assert_eq!(classify(&r).unwrap().verdict, Verdict::Indecomposable);
    assert_eq!(hom_graded_dimension(&w, &r).unwrap().coeff(0), 1.into());
    let d = decompose(&w).unwrap();
    assert!(d.remainder);
    assert_eq!(d.shifts(), vec![0]);
    assert_eq!(d.factors[0].status, FactorStatus::Indecomposable);
    assert_eq!(canonical_form(&d.factors[0].web), canonical_form(&r));
}
