//! The acceptance suite: each criterion runs over a generated corpus and
//! reports pass or fail with instance counts.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{dominant_path_count, generate_all_non_elliptic, generate_closed, generate_open, Growth};
use crate::kuperberg::{bracket, bracket_with_order, classify, decompose, reducible_faces, ReductionOrder, Verdict};
use crate::poly::{is_monic_of_degree, quantum_integer, LaurentPoly};
use crate::redgraph::{
    count_fitting_orientations, dual_graph, enumerate_pairings, enumerate_with_dual, find_exact_red_graph,
    find_fitting_orientation, find_fitting_orientation_bruteforce, g_reduction, is_admissible, is_exact,
    is_strongly_connected, minimal_admissible_subgraph, projection_degree_shift, Orientation, RedGraph,
};
use crate::sign::SignSequence;
use crate::web::{canonical_form, colour_along_path, face_colouring, fixtures, EllipticKind, Smoothing, Web};

/// Boundary of the stress search.
pub const STRESS_SIGNS: &str = "+--++--++--+";

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random closed webs for the bracket criteria.
    pub closed_webs: usize,
    pub closed_max_vertices: usize,
    pub reduction_orders: usize,
    /// Exhaustive non-elliptic corpus over every admissible ε up to this length.
    pub max_boundary: usize,
    /// Random open (possibly elliptic) webs feeding the red graph criteria.
    pub open_webs: usize,
    pub open_max_vertices: usize,
    /// Closures of random pairs of non-elliptic webs, for larger red graphs.
    pub closures: usize,
    /// Red graphs with at most this many edges are checked against brute force.
    pub oracle_edges: usize,
    pub stress_budget: Duration,
    pub stress_max_vertices: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 2024,
            closed_webs: 200,
            closed_max_vertices: 20,
            reduction_orders: 20,
            max_boundary: 8,
            open_webs: 400,
            open_max_vertices: 24,
            closures: 100,
            oracle_edges: 16,
            stress_budget: Duration::from_secs(600),
            stress_max_vertices: 40,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    /// Instances checked per property.
    pub counts: BTreeMap<String, usize>,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn counterexamples(&self) -> usize {
        self.failures.len()
    }

    pub fn summary_line(&self) -> String {
        let counts = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
        format!(
            "[{}] criterion {}: {} ({:.2}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            counts
        )
    }
}

/// Collects property checks for one criterion.
struct Tally {
    id: u8,
    title: &'static str,
    start: Instant,
    counts: BTreeMap<String, usize>,
    failures: Vec<String>,
    notes: Vec<String>,
}

const MAX_LISTED_FAILURES: usize = 20;

impl Tally {
    fn new(id: u8, title: &'static str) -> Self {
        Tally { id, title, start: Instant::now(), counts: BTreeMap::new(), failures: vec![], notes: vec![] }
    }

    fn check(&mut self, property: &str, ok: bool, detail: impl FnOnce() -> String) {
        *self.counts.entry(property.to_string()).or_default() += 1;
        if !ok {
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(format!("{property}: {}", detail()));
            } else {
                self.failures.push(format!("{property}"));
            }
        }
    }

    fn touch(&mut self, property: &str) {
        self.counts.entry(property.to_string()).or_default();
    }

    fn error(&mut self, property: &str, e: Error) {
        self.check(property, false, || e.to_string());
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(mut self) -> CriterionReport {
        for (k, v) in &self.counts {
            if *v == 0 {
                self.notes.push(format!("{k}: vacuous, no instances"));
            }
        }
        CriterionReport {
            id: self.id,
            title: self.title,
            passed: self.failures.is_empty(),
            counts: self.counts,
            failures: self.failures,
            notes: self.notes,
            seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

/// A red graph together with the web it lives in.
#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub web: usize,
    pub non_elliptic: bool,
    pub graph: RedGraph,
}

/// Webs and red graphs shared by the criteria.
pub struct Corpus {
    pub closed: Vec<Web>,
    pub non_elliptic: Vec<Web>,
    pub open: Vec<Web>,
    /// Every web searched for red graphs: the non-elliptic ones, the hexagon
    /// ring, the open ones, the closed ones and closures of pairs of
    /// non-elliptic webs.
    pub graph_webs: Vec<(Web, bool)>,
    pub graphs: Vec<CorpusGraph>,
    /// Webs whose face count exceeded the enumeration guard.
    pub skipped: usize,
}

impl Corpus {
    pub fn build(cfg: &VerifyConfig) -> Result<Corpus> {
        let closed = generate_closed(cfg.closed_max_vertices, cfg.closed_webs, cfg.seed);
        let mut non_elliptic = Vec::new();
        for len in 0..=cfg.max_boundary {
            let seqs: Vec<SignSequence> =
                SignSequence::all_of_length(len).into_iter().filter(|e| e.is_admissible()).collect();
            let parts = seqs
                .par_iter()
                .map(|eps| generate_all_non_elliptic(eps, 4 * len + 4))
                .collect::<Result<Vec<_>>>()?;
            non_elliptic.extend(parts.into_iter().flatten());
        }
        let open = generate_open(cfg.open_max_vertices, cfg.open_webs, cfg.seed ^ 0x5eed);
        let closures = random_closures(&non_elliptic, cfg.closures, cfg.seed ^ 0xc105e)?;
        let graph_webs: Vec<(Web, bool)> = non_elliptic
            .iter()
            .chain([&fixtures::hexagon_ring()])
            .map(|w| (w.clone(), true))
            .chain(open.iter().chain(&closed).chain(&closures).map(|w| (w.clone(), false)))
            .collect();
        let found: Vec<Option<Vec<CorpusGraph>>> = graph_webs
            .par_iter()
            .enumerate()
            .map(|(i, (w, ne))| {
                let dual = dual_graph(w)?;
                match enumerate_with_dual(w, &dual, usize::MAX) {
                    Ok(gs) => Ok(Some(
                        gs.into_iter().map(|graph| CorpusGraph { web: i, non_elliptic: *ne, graph }).collect(),
                    )),
                    Err(Error::SizeGuard { .. }) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect::<Result<_>>()?;
        let skipped = found.iter().filter(|f| f.is_none()).count();
        let graphs = found.into_iter().flatten().flatten().collect();
        Ok(Corpus { closed, non_elliptic, open, graph_webs, graphs, skipped })
    }

    pub fn web(&self, i: usize) -> &Web {
        &self.graph_webs[i].0
    }

    pub fn open_webs(&self) -> impl Iterator<Item = &Web> {
        self.non_elliptic.iter().chain(&self.open)
    }
}

/// `w̄w'` for random pairs of non-elliptic webs of the longest boundary.
fn random_closures(webs: &[Web], count: usize, seed: u64) -> Result<Vec<Web>> {
    let longest = webs.iter().map(Web::boundary_len).max().unwrap_or(0);
    let mut by_signs: BTreeMap<SignSequence, Vec<&Web>> = BTreeMap::new();
    for w in webs.iter().filter(|w| w.boundary_len() == longest) {
        by_signs.entry(w.signs()).or_default().push(w);
    }
    let groups: Vec<&Vec<&Web>> = by_signs.values().filter(|g| g.len() > 1).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let Some(g) = groups.choose(&mut rng) else { break };
        let (a, b) = (g.choose(&mut rng).expect("non-empty"), g.choose(&mut rng).expect("non-empty"));
        out.push(Web::closure(a, b)?);
    }
    Ok(out)
}

/// Circle, digon and square relations, one step at a time.
pub fn criterion_1(corpus: &Corpus) -> CriterionReport {
    let mut t = Tally::new(1, "bracket axioms");
    let three = quantum_integer(3).expect("n >= 1");
    let two = quantum_integer(2).expect("n >= 1");
    let circle = bracket(&fixtures::circle());
    t.check("circle value", circle.as_ref().ok() == Some(&three), || format!("{circle:?}"));
    let theta = bracket(&fixtures::theta());
    let want: LaurentPoly = &two * &three;
    t.check("theta value", theta.as_ref().ok() == Some(&want), || format!("{theta:?}"));
    let mut hand = vec![fixtures::theta(), Web::closure(&fixtures::digon_arc(), &fixtures::arc()).expect("same signs")];
    hand.push(Web::closure(&fixtures::double_digon_arc(), &fixtures::double_digon_arc()).expect("same signs"));
    for w in hand.iter().chain(&corpus.closed) {
        if let Err(e) = single_steps(w, &three, &two, &mut t) {
            t.error("evaluation", e);
        }
    }
    t.finish()
}

fn single_steps(w: &Web, three: &LaurentPoly, two: &LaurentPoly, t: &mut Tally) -> Result<()> {
    let whole = bracket(w)?;
    if w.circle_count() > 0 {
        let rest = bracket(&w.remove_circle()?)?;
        t.check("circle rule", whole == three * &rest, || format!("{whole} vs [3]·{rest}"));
    }
    let (_, parts, _) = w.split_components();
    for part in parts {
        for (kind, walk) in reducible_faces(&part) {
            let whole = bracket(&part)?;
            match kind {
                EllipticKind::Digon => {
                    let rest = bracket(&part.collapse_digon(&walk)?)?;
                    t.check("digon rule", whole == two * &rest, || format!("{whole} vs [2]·{rest}"));
                }
                EllipticKind::Square => {
                    let a = bracket(&part.smooth_square(&walk, Smoothing::First)?)?;
                    let b = bracket(&part.smooth_square(&walk, Smoothing::Second)?)?;
                    t.check("square rule", whole == &a + &b, || format!("{whole} vs {a} + {b}"));
                }
                EllipticKind::Circle => {}
            }
            break;
        }
    }
    Ok(())
}

/// Random reduction orders agree and every value is symmetric.
pub fn criterion_2(corpus: &Corpus, cfg: &VerifyConfig) -> CriterionReport {
    let mut t = Tally::new(2, "confluence and symmetry");
    let results: Vec<Result<(bool, bool, bool, String)>> = corpus
        .closed
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let want = bracket(w)?;
            let mut same = true;
            for k in 0..cfg.reduction_orders {
                let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add((i * cfg.reduction_orders + k) as u64);
                same &= bracket_with_order(w, &ReductionOrder::Random(seed))? == want;
            }
            let positive = want.has_nonnegative_coeffs();
            Ok((same, want.is_symmetric(), positive, want.to_string()))
        })
        .collect();
    let mut positive = 0;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((same, sym, nonneg, value)) => {
                t.check("order independent", same, || format!("closed web {i}"));
                t.check("symmetric", sym, || format!("closed web {i}: {value}"));
                positive += usize::from(nonneg);
            }
            Err(e) => t.error("evaluation", e),
        }
    }
    t.note(format!("{positive} of {} brackets have only non-negative coefficients", corpus.closed.len()));
    t.finish()
}

/// Non-elliptic webs: monic of degree l(ε), and no admissible red graph.
pub fn criterion_3(corpus: &Corpus) -> CriterionReport {
    let mut t = Tally::new(3, "characterisation on non-elliptic webs");
    let results: Vec<Result<(bool, String)>> = corpus
        .non_elliptic
        .par_iter()
        .map(|w| {
            let c = classify(w)?;
            Ok((c.verdict == Verdict::Indecomposable && is_monic_of_degree(&c.bracket, w.boundary_len() as i64), c.bracket.to_string()))
        })
        .collect();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((ok, b)) => t.check("monic of degree l", ok, || format!("{} web {i}: {b}", corpus.non_elliptic[i].signs())),
            Err(e) => t.error("classify", e),
        }
    }
    t.touch("no admissible red graph");
    for g in corpus.graphs.iter().filter(|g| g.web < corpus.non_elliptic.len()) {
        t.check("no admissible red graph", !is_admissible(&g.graph), || {
            format!("{} web {}: faces {:?}", corpus.web(g.web).signs(), g.web, g.graph.faces)
        });
    }
    t.note(format!(
        "{} non-elliptic webs, {} of their red graphs, {} webs over the face guard",
        corpus.non_elliptic.len(),
        corpus.graphs.iter().filter(|g| g.web < corpus.non_elliptic.len()).count(),
        corpus.skipped
    ));
    t.finish()
}

fn brute_force_count(g: &RedGraph) -> u64 {
    let e = g.num_edges();
    (0u64..1 << e)
        .filter(|mask| Orientation { toward_second: (0..e).map(|k| mask >> k & 1 == 1).collect() }.is_fitting(g))
        .count() as u64
}

/// The digon on an arc, end to end.
pub fn criterion_4() -> CriterionReport {
    let mut t = Tally::new(4, "digon-arc positive control");
    if let Err(e) = digon_arc_control(&mut t) {
        t.error("pipeline", e);
    }
    t.finish()
}

fn digon_arc_control(t: &mut Tally) -> Result<()> {
    let w = fixtures::digon_arc();
    let c = classify(&w)?;
    t.check("web level 1", c.level == Some(1), || format!("{:?}", c.level));
    let dual = dual_graph(&w)?;
    let gs = enumerate_with_dual(&w, &dual, usize::MAX)?;
    t.check("one red graph", gs.len() == 1, || format!("{} red graphs", gs.len()));
    let Some(g) = gs.first() else { return Ok(()) };
    t.check("admissible", is_admissible(g), String::new);
    t.check("level 1", g.level == 1, || format!("level {}", g.level));
    let flow = count_fitting_orientations(g)?;
    t.check("one fitting orientation (count)", flow == 1, || format!("{flow}"));
    let brute = brute_force_count(g);
    t.check("one fitting orientation (brute force)", brute == 1, || format!("{brute}"));
    let p = enumerate_pairings(&w, g)?.remove(0);
    let r = g_reduction(&w, g, &p)?;
    t.check("reduces to the arc", canonical_form(&r) == canonical_form(&fixtures::arc()), String::new);
    t.check("two vertices removed", w.num_vertices() - r.num_vertices() == 2, String::new);
    let d = decompose(&w)?;
    t.check("shifts -1, +1", d.shifts() == vec![-1, 1], || format!("{:?}", d.shifts()));
    Ok(())
}

/// Flow-based existence against brute force on small red graphs.
pub fn criterion_5(corpus: &Corpus, cfg: &VerifyConfig) -> CriterionReport {
    let mut t = Tally::new(5, "fitting orientation oracle");
    let small: Vec<&CorpusGraph> = corpus.graphs.iter().filter(|g| g.graph.num_edges() <= cfg.oracle_edges).collect();
    let results: Vec<Result<(bool, bool, Option<(u64, u64)>)>> = small
        .par_iter()
        .map(|g| {
            let flow = find_fitting_orientation(&g.graph);
            let brute = find_fitting_orientation_bruteforce(&g.graph)?;
            let flow_ok = flow.as_ref().map_or(true, |o| o.is_fitting(&g.graph));
            let counts = if g.graph.num_edges() <= 12 {
                Some((count_fitting_orientations(&g.graph)?, brute_force_count(&g.graph)))
            } else {
                None
            };
            Ok((flow.is_some() == brute.is_some(), flow_ok, counts))
        })
        .collect();
    for (g, r) in small.iter().zip(results) {
        match r {
            Ok((same, flow_ok, counts)) => {
                t.check("existence agrees", same, || format!("web {} faces {:?}", g.web, g.graph.faces));
                t.check("flow orientation fits", flow_ok, || format!("web {} faces {:?}", g.web, g.graph.faces));
                if let Some((a, b)) = counts {
                    t.check("counts agree", a == b, || format!("web {}: {a} vs {b}", g.web));
                }
            }
            Err(e) => t.error("solver", e),
        }
    }
    let admissible = small.iter().filter(|g| is_admissible(&g.graph)).count();
    let edges = corpus.graphs.iter().map(|g| g.graph.num_edges()).max().unwrap_or(0);
    t.note(format!("largest corpus red graph has {edges} edges"));
    t.note(format!("{} red graphs with at most {} edges, {admissible} admissible", small.len(), cfg.oracle_edges));
    t.finish()
}

/// Structural properties of admissible red graphs.
pub fn criterion_6(corpus: &Corpus, extra: &[(Web, RedGraph)]) -> CriterionReport {
    let mut t = Tally::new(6, "structure of admissible red graphs");
    for p in ["fair", "at least 2 vertices", "not a tree", "cycles of length >= 6", "minimal is exact", "minimal is strongly connected"] {
        t.touch(p);
    }
    for g in &corpus.graphs {
        let admissible = is_admissible(&g.graph);
        if admissible {
            t.check("fair", g.graph.is_fair(), || format!("web {} faces {:?}", g.web, g.graph.faces));
        }
        if g.non_elliptic {
            t.check("cycles of length >= 6", g.graph.girth().map_or(true, |c| c >= 6), || {
                format!("web {} faces {:?}", g.web, g.graph.faces)
            });
            if admissible {
                non_elliptic_admissible(corpus.web(g.web), &g.graph, &mut t);
            }
        }
    }
    for (w, g) in extra {
        t.check("fair", g.is_fair(), || format!("faces {:?}", g.faces));
        t.check("cycles of length >= 6", g.girth().map_or(true, |c| c >= 6), || format!("faces {:?}", g.faces));
        non_elliptic_admissible(w, g, &mut t);
    }
    t.finish()
}

fn non_elliptic_admissible(w: &Web, g: &RedGraph, t: &mut Tally) {
    t.check("at least 2 vertices", g.num_vertices() >= 2, || format!("faces {:?}", g.faces));
    t.check("not a tree", !g.is_tree(), || format!("faces {:?}", g.faces));
    let minimal = dual_graph(w).and_then(|dual| minimal_admissible_subgraph(&dual, g));
    match minimal {
        Ok(m) => {
            t.check("minimal is exact", is_exact(&m), || format!("faces {:?} level {}", m.faces, m.level));
            let strong = find_fitting_orientation(&m).is_some_and(|o| is_strongly_connected(&m, &o));
            t.check("minimal is strongly connected", strong, || format!("faces {:?}", m.faces));
        }
        Err(e) => t.error("minimal subgraph", e),
    }
}

/// Degree of the projection foam against the level.
pub fn criterion_7(corpus: &Corpus) -> CriterionReport {
    let mut t = Tally::new(7, "degree bookkeeping");
    let mut unfair = 0;
    for g in &corpus.graphs {
        if !g.graph.is_fair() {
            unfair += 1;
            continue;
        }
        let w = corpus.web(g.web);
        match enumerate_pairings(w, &g.graph) {
            Ok(ps) => {
                for p in &ps {
                    let shift = projection_degree_shift(&g.graph, p);
                    t.check("shift = 2 I(G)", shift == 2 * g.graph.level, || {
                        format!("web {} faces {:?}: {shift} vs level {}", g.web, g.graph.faces, g.graph.level)
                    });
                    if is_admissible(&g.graph) {
                        t.check("zero shift iff exact", (shift == 0) == is_exact(&g.graph), || {
                            format!("web {} faces {:?}", g.web, g.graph.faces)
                        });
                    }
                    if let Ok(r) = g_reduction(w, &g.graph, p) {
                        let removed = w.num_vertices() - r.num_vertices();
                        t.check("reduction is valid", r.validate().is_empty(), || format!("web {}", g.web));
                        t.check("vertices removed", removed == red_vertex_count(w, &g.graph), || format!("web {}", g.web));
                    } else {
                        t.check("reduction is valid", false, || format!("web {} faces {:?}", g.web, g.graph.faces));
                    }
                }
            }
            Err(e) => t.error("pairings", e),
        }
    }
    t.note(format!("{unfair} red graphs are not fair and have no pairing"));
    t.finish()
}

fn red_vertex_count(w: &Web, g: &RedGraph) -> usize {
    let regions = w.regions().expect("valid corpus web");
    let mut vs: Vec<usize> = g
        .faces
        .iter()
        .flat_map(|&f| regions.get(f).walks[0].iter().filter_map(|&d| w.vertex_of(d)).collect::<Vec<_>>())
        .collect();
    vs.sort_unstable();
    vs.dedup();
    vs.len()
}

/// Adjacent regions get distinct colours and random crossing paths agree
/// with the colouring.
pub fn criterion_8(corpus: &Corpus, cfg: &VerifyConfig) -> CriterionReport {
    let mut t = Tally::new(8, "face colouring");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc010);
    for w in corpus.open_webs().chain(&corpus.closed) {
        if let Err(e) = colouring_checks(w, &mut rng, &mut t) {
            t.error("colouring", e);
        }
    }
    t.finish()
}

fn colouring_checks(w: &Web, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let regions = w.regions()?;
    let c = face_colouring(w, 0)?;
    t.check("proper", c.is_proper(w, &regions), String::new);
    if w.num_edges() == 0 {
        return Ok(());
    }
    // Random walks across edges from the unbounded region.
    let mut by_region: Vec<Vec<usize>> = vec![Vec::new(); regions.len()];
    for (h, &r) in regions.region_of_dart.iter().enumerate() {
        by_region[r].push(h);
    }
    for _ in 0..4 {
        let mut here = regions.unbounded();
        let mut path = Vec::new();
        for _ in 0..rng.gen_range(1..=12) {
            let Some(&d) = by_region[here].choose(rng) else { break };
            path.push(d);
            here = regions.region_of_dart[w.twin(d)];
        }
        let (end, colour) = colour_along_path(w, 0, &path)?;
        t.check("path independent", end == here && colour == c.colour[end], || format!("path {path:?}"));
    }
    Ok(())
}

/// Outcome of the search for a non-elliptic web with an exact red graph.
#[derive(Clone, Debug, Serialize)]
pub struct StressOutcome {
    pub found: Option<(Web, RedGraph)>,
    pub webs_examined: usize,
    pub vertex_bound: usize,
    /// Number of non-elliptic webs on the boundary.
    pub webs_total: usize,
}

/// Searches non-elliptic webs on [`STRESS_SIGNS`] by increasing vertex
/// bound for one with an exact red graph, until the budget runs out.
pub fn stress_search(budget: Duration, max_vertices: usize) -> Result<StressOutcome> {
    let start = Instant::now();
    let eps: SignSequence = STRESS_SIGNS.parse().expect("literal");
    let mut growth = Growth::new();
    let mut examined = 0;
    let mut bound = 0;
    let complete = dominant_path_count(&eps) as usize;
    for b in 0..=max_vertices {
        if start.elapsed() > budget || examined == complete {
            break;
        }
        bound = b;
        let fresh: Vec<Web> = growth.non_elliptic(&eps, b)?.into_iter().filter(|w| w.num_vertices() == b).collect();
        examined += fresh.len();
        let hits: Vec<Option<(Web, RedGraph)>> = fresh
            .par_iter()
            .map(|w| match find_exact_red_graph(w) {
                Ok(Some(g)) => Ok(Some((w.clone(), g))),
                Ok(None) | Err(Error::SizeGuard { .. }) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<_>>()?;
        if let Some(hit) = hits.into_iter().flatten().next() {
            return Ok(StressOutcome { found: Some(hit), webs_examined: examined, vertex_bound: bound, webs_total: complete });
        }
    }
    Ok(StressOutcome { found: None, webs_examined: examined, vertex_bound: bound, webs_total: complete })
}

/// The stress search. Not finding a web within the budget is reported, not
/// failed; a hit must be virtually decomposable with a fitting orientation.
pub fn criterion_9(cfg: &VerifyConfig) -> (CriterionReport, Option<(Web, RedGraph)>) {
    let mut t = Tally::new(9, "stress search for an exact red graph");
    let mut hit = None;
    match stress_search(cfg.stress_budget, cfg.stress_max_vertices) {
        Ok(out) => {
            t.note(format!(
                "{} of {} webs examined, up to {} vertices",
                out.webs_examined, out.webs_total, out.vertex_bound
            ));
            match &out.found {
                None => t.note("not found within the budget"),
                Some((w, g)) => {
                    t.note(format!("found: {} vertices, red graph on {} faces", w.num_vertices(), g.num_vertices()));
                    match classify(w) {
                        Ok(c) => {
                            t.check("decomposable", c.verdict == Verdict::Decomposable, || format!("bracket {}", c.bracket));
                            t.note(format!("bracket {}, web level {:?}", c.bracket, c.level));
                        }
                        Err(e) => t.error("classify", e),
                    }
                    match count_fitting_orientations(g) {
                        Ok(n) => {
                            t.check("fitting orientations", n >= 1, || format!("{n}"));
                            t.note(format!("{n} fitting orientations"));
                        }
                        Err(e) => t.error("orientation count", e),
                    }
                    t.check("exact", is_exact(g), || format!("level {}", g.level));
                }
            }
            hit = out.found;
        }
        Err(e) => t.error("search", e),
    }
    (t.finish(), hit)
}

/// Runs every criterion.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CriterionReport>> {
    let corpus = Corpus::build(cfg)?;
    let (nine, hit) = criterion_9(cfg);
    let mut extra = Vec::new();
    if let Some((w, _)) = hit {
        if canonical_form(&w) != canonical_form(&fixtures::hexagon_ring()) {
            let graphs = enumerate_with_dual(&w, &dual_graph(&w)?, usize::MAX)?;
            extra.extend(graphs.into_iter().filter(is_admissible).map(|g| (w.clone(), g)));
        }
    }
    Ok(vec![
        criterion_1(&corpus),
        criterion_2(&corpus, cfg),
        criterion_3(&corpus),
        criterion_4(),
        criterion_5(&corpus, cfg),
        criterion_6(&corpus, &extra),
        criterion_7(&corpus),
        criterion_8(&corpus, cfg),
        nine,
    ])
}
