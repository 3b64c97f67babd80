//! Small hand-built webs used in examples and tests.

use super::{BoundaryPoint, Facing, Vertex, VertexKind, Web};
use crate::sign::Sign;

fn source(rotation: [usize; 3]) -> Vertex {
    Vertex { kind: VertexKind::Source, rotation: rotation.to_vec() }
}

fn sink(rotation: [usize; 3]) -> Vertex {
    Vertex { kind: VertexKind::Sink, rotation: rotation.to_vec() }
}

fn points(list: &[(usize, Sign)]) -> Vec<BoundaryPoint> {
    list.iter().map(|&(half_edge, sign)| BoundaryPoint { half_edge, sign }).collect()
}

/// One strand on `(+,-)`.
pub fn arc() -> Web {
    Web::from_parts(Facing::Up, vec![], vec![(1, 0)], points(&[(0, Sign::Plus), (1, Sign::Minus)]), vec![])
        .expect("arc")
}

/// A single source joined to three `+` points.
pub fn tripod() -> Web {
    Web::from_parts(
        Facing::Up,
        vec![source([3, 4, 5])],
        vec![(3, 0), (4, 1), (5, 2)],
        points(&[(0, Sign::Plus), (1, Sign::Plus), (2, Sign::Plus)]),
        vec![],
    )
    .expect("tripod")
}

/// The arc on `(+,-)` with one digon inserted.
pub fn digon_arc() -> Web {
    Web::from_parts(
        Facing::Up,
        vec![source([2, 3, 4]), sink([5, 6, 7])],
        vec![(2, 5), (4, 6), (3, 0), (1, 7)],
        points(&[(0, Sign::Plus), (1, Sign::Minus)]),
        vec![],
    )
    .expect("digon arc")
}

/// The arc on `(+,-)` with two digons in a row.
pub fn double_digon_arc() -> Web {
    Web::from_parts(
        Facing::Up,
        vec![source([2, 3, 4]), sink([5, 6, 7]), source([8, 9, 10]), sink([11, 12, 13])],
        vec![(3, 0), (2, 6), (4, 7), (9, 5), (8, 11), (10, 12), (1, 13)],
        points(&[(0, Sign::Plus), (1, Sign::Minus)]),
        vec![],
    )
    .expect("double digon arc")
}

/// Two vertices joined by three parallel edges.
pub fn theta() -> Web {
    Web::from_parts(Facing::Up, vec![source([0, 1, 2]), sink([3, 4, 5])], vec![(0, 4), (1, 3), (2, 5)], vec![], vec![])
        .expect("theta")
}

/// One vertexless circle.
pub fn circle() -> Web {
    Web::circles_only(1)
}

/// The arc with a vertexless circle beside it.
pub fn arc_with_circle() -> Web {
    arc().disjoint_union(&circle())
}

/// The non-elliptic web with 24 vertices on `(+,-,-,+,+,-,-,+,+,-,-,+)`:
/// six hexagons in a ring around a central face. The ring is an exact red
/// graph, so the web is virtually decomposable although it has no digon or
/// square.
pub fn hexagon_ring() -> Web {
    super::io::parse_web(include_str!("hexagon_ring.json")).expect("bundled web parses")
}

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Web> {
    Some(match name {
        "arc" => arc(),
        "tripod" => tripod(),
        "digon-arc" => digon_arc(),
        "double-digon-arc" => double_digon_arc(),
        "theta" => theta(),
        "circle" => circle(),
        "arc-with-circle" => arc_with_circle(),
        "hexagon-ring" => hexagon_ring(),
        "empty" => Web::empty(),
        _ => return None,
    })
}

pub const NAMES: &[&str] = &[
    "arc",
    "tripod",
    "digon-arc",
    "double-digon-arc",
    "theta",
    "circle",
    "arc-with-circle",
    "hexagon-ring",
    "empty",
];
