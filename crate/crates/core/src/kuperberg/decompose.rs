//! Splitting a web-module into graded pieces.

use serde::Serialize;

use super::{bracket, classify, Verdict};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::redgraph::{enumerate_pairings, find_exact_red_graph, g_reduction, RedGraph};
use crate::web::{canonical_form, EllipticKind, Smoothing, Web};

/// Factors beyond this many abort the decomposition.
pub const FACTOR_GUARD: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorStatus {
    /// Virtually indecomposable: the module is indecomposable.
    Indecomposable,
    /// Virtually decomposable but no exact red graph was found.
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WebFactor {
    pub web: Web,
    pub shift: i64,
    pub status: FactorStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Circle,
    Digon,
    Square,
    ClosedComponent,
    RedGraph,
}

/// One rewriting step: `input` splits as the sum of `parts`, each with a
/// grading shift relative to the input. Red-graph steps only split off the
/// listed part; the complement is not identified.
#[derive(Clone, Debug, Serialize)]
pub struct SplitStep {
    pub kind: StepKind,
    pub input: Web,
    pub parts: Vec<(Web, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub red_graph: Option<RedGraph>,
}

impl SplitStep {
    /// For the direct-sum steps, `<w̄w> = Σ_{i,j} q^(s_j - s_i) <w̄_i w_j>`:
    /// graded dimensions of endomorphisms agree on both sides.
    pub fn check_graded_dimension(&self) -> Result<bool> {
        if self.kind == StepKind::RedGraph {
            return Ok(true);
        }
        let lhs = bracket(&Web::closure(&self.input, &self.input)?)?;
        let mut rhs = LaurentPoly::zero();
        for (wi, si) in &self.parts {
            for (wj, sj) in &self.parts {
                rhs += &bracket(&Web::closure(wi, wj)?)?.shift(sj - si);
            }
        }
        Ok(lhs == rhs)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    /// Leaves, sorted by shift.
    pub factors: Vec<WebFactor>,
    /// Set when an exact red graph split off a factor whose complement is unknown.
    pub remainder: bool,
    pub steps: Vec<SplitStep>,
}

impl Decomposition {
    pub fn shifts(&self) -> Vec<i64> {
        self.factors.iter().map(|f| f.shift).collect()
    }
}

fn step(kind: StepKind, input: &Web, parts: Vec<(Web, i64)>) -> SplitStep {
    SplitStep { kind, input: input.clone(), parts, red_graph: None }
}

/// Decomposes by the categorified circle, digon and square relations, by
/// evaluating closed components, and by exact red graphs on non-elliptic
/// pieces. Leaves are virtually indecomposable webs or unresolved ones.
pub fn decompose(w: &Web) -> Result<Decomposition> {
    w.ensure_valid()?;
    let mut factors = Vec::new();
    let mut steps = Vec::new();
    let mut remainder = false;
    let mut work = vec![(w.clone(), 0i64)];
    while let Some((cur, s)) = work.pop() {
        if factors.len() + work.len() > FACTOR_GUARD {
            return Err(Error::SizeGuard { what: "decomposition factors", actual: factors.len(), limit: FACTOR_GUARD });
        }
        let (attached, floating, circles) = cur.split_components();
        let st = if circles > 0 {
            let r = cur.remove_circle()?;
            step(StepKind::Circle, &cur, vec![(r.clone(), -2), (r.clone(), 0), (r, 2)])
        } else if let Some((first, others)) = floating.split_first() {
            let value = bracket(first)?;
            let rest = others.iter().fold(attached, |acc, c| acc.disjoint_union(c));
            let mut parts = Vec::new();
            for (k, c) in value.terms() {
                let copies: usize = c.try_into().map_err(|_| {
                    Error::Precondition(format!("closed component evaluates to {value}, which has a negative or huge coefficient"))
                })?;
                parts.extend(std::iter::repeat((rest.clone(), k)).take(copies));
            }
            step(StepKind::ClosedComponent, &cur, parts)
        } else if let Some((kind, region)) = cur.find_elliptic_face()? {
            let walk = &region.walks[0];
            match kind {
                EllipticKind::Digon => {
                    let r = cur.collapse_digon(walk)?;
                    step(StepKind::Digon, &cur, vec![(r.clone(), -1), (r, 1)])
                }
                EllipticKind::Square => {
                    let a = cur.smooth_square(walk, Smoothing::First)?;
                    let b = cur.smooth_square(walk, Smoothing::Second)?;
                    step(StepKind::Square, &cur, vec![(a, 0), (b, 0)])
                }
                EllipticKind::Circle => unreachable!("circles handled above"),
            }
        } else {
            let class = classify(&cur)?;
            if class.verdict == Verdict::Indecomposable {
                factors.push(WebFactor { web: cur, shift: s, status: FactorStatus::Indecomposable });
                continue;
            }
            match find_exact_red_graph(&cur)? {
                None => {
                    factors.push(WebFactor { web: cur, shift: s, status: FactorStatus::Unresolved });
                    continue;
                }
                Some(g) => {
                    let p = enumerate_pairings(&cur, &g)?.remove(0);
                    let reduced = g_reduction(&cur, &g, &p)?;
                    remainder = true;
                    SplitStep { kind: StepKind::RedGraph, input: cur.clone(), parts: vec![(reduced, 0)], red_graph: Some(g) }
                }
            }
        };
        for (part, k) in st.parts.iter().rev() {
            work.push((part.clone(), s + k));
        }
        steps.push(st);
    }
    factors.sort_by(|a, b| a.shift.cmp(&b.shift).then_with(|| canonical_form(&a.web).cmp(&canonical_form(&b.web))));
    Ok(Decomposition { factors, remainder, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::fixtures::*;

    fn leaves_are_arcs(d: &Decomposition) -> bool {
        d.factors.iter().all(|f| canonical_form(&f.web) == canonical_form(&arc()))
    }

    #[test]
    fn examples() {
        let d = decompose(&arc()).unwrap();
        assert_eq!(d.shifts(), vec![0]);
        assert!(!d.remainder && leaves_are_arcs(&d));
        let d = decompose(&digon_arc()).unwrap();
        assert_eq!(d.shifts(), vec![-1, 1]);
        assert!(!d.remainder && leaves_are_arcs(&d));
        let d = decompose(&arc_with_circle()).unwrap();
        assert_eq!(d.shifts(), vec![-2, 0, 2]);
        assert!(leaves_are_arcs(&d));
    }

    #[test]
    fn closed_components_expand_by_their_bracket() {
        let d = decompose(&arc().disjoint_union(&theta())).unwrap();
        // <theta> = q^3+2q+2q^-1+q^-3
        assert_eq!(d.shifts(), vec![-3, -1, -1, 1, 1, 3]);
    }

    #[test]
    fn split_steps_conserve_graded_dimension() {
        for w in [digon_arc(), double_digon_arc(), arc_with_circle(), arc().disjoint_union(&theta())] {
            for st in decompose(&w).unwrap().steps {
                assert!(st.check_graded_dimension().unwrap(), "{:?}", st.kind);
            }
        }
    }
}
