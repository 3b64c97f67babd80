//! Graphviz export.

use std::collections::HashSet;
use std::fmt::Write;

use super::{RegionId, VertexKind, Web};
use crate::error::Result;

/// The web with boundary points as boxes. Edges point from tail to head.
pub fn web_to_dot(web: &Web) -> String {
    let mut s = String::from("digraph web {\n  node [shape=circle, label=\"\", width=0.15];\n");
    for (i, v) in web.vertices().iter().enumerate() {
        let fill = match v.kind {
            VertexKind::Source => "white",
            VertexKind::Sink => "black",
        };
        let _ = writeln!(s, "  v{i} [style=filled, fillcolor={fill}];");
    }
    for (i, p) in web.boundary().iter().enumerate() {
        let _ = writeln!(s, "  b{i} [shape=box, label=\"{}\", width=0.3];", p.sign);
    }
    if web.boundary_len() > 1 {
        let chain: Vec<_> = (0..web.boundary_len()).map(|i| format!("b{i}")).collect();
        let _ = writeln!(s, "  {{ rank=same; {} }}", chain.join("; "));
    }
    let node = |h| match web.vertex_of(h) {
        Some(v) => format!("v{v}"),
        None => {
            let i = web.boundary().iter().position(|p| p.half_edge == h).expect("boundary half-edge");
            format!("b{i}")
        }
    };
    for &(t, h) in web.edges() {
        let _ = writeln!(s, "  {} -> {} [label=\"{t}/{h}\"];", node(t), node(h));
    }
    for (i, c) in web.circle_groups().iter().enumerate() {
        let _ = writeln!(s, "  c{i} [shape=doublecircle, label=\"{}\"];", c.count);
    }
    s.push_str("}\n");
    s
}

/// The dual graph: one node per region, one edge per web edge. Regions in
/// `red` are filled red.
pub fn dual_to_dot(web: &Web, red: &[RegionId]) -> Result<String> {
    let regions = web.regions()?;
    let red: HashSet<_> = red.iter().copied().collect();
    let mut s = String::from("graph dual {\n");
    for r in regions.iter() {
        let shape = if r.is_face() { "circle" } else { "box" };
        let style = if red.contains(&r.id) { ", style=filled, fillcolor=red" } else { "" };
        let _ = writeln!(s, "  r{} [shape={shape}, label=\"{}\"{style}];", r.id, r.id);
    }
    for &(t, h) in web.edges() {
        let (a, b) = (regions.region_of_dart[t], regions.region_of_dart[h]);
        let colour = if red.contains(&a) && red.contains(&b) { " [color=red]" } else { "" };
        let _ = writeln!(s, "  r{a} -- r{b}{colour};");
    }
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn exports_mention_every_element() {
        let w = digon_arc();
        let d = web_to_dot(&w);
        assert_eq!(d.matches("->").count(), w.num_edges());
        let dual = dual_to_dot(&w, &[1]).unwrap();
        assert_eq!(dual.matches("--").count(), w.num_edges());
        assert!(dual.contains("fillcolor=red"));
    }
}
