//! The JSON web format and newline-delimited corpora.
//!
//! ```json
//! {"boundary":[{"half_edge":0,"sign":"+"},{"half_edge":1,"sign":"-"}],
//!  "vertices":[],
//!  "edges":[[1,0]],
//!  "circles":[]}
//! ```
//!
//! Edges are listed `[tail, head]` (source side first). Half-edge ids may be
//! any distinct non-negative integers; they are renumbered on reading in
//! increasing order. Vertices are ordered by `id`. The optional `"facing"`
//! field (`"up"` or `"down"`) defaults to `"up"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{BoundaryPoint, CircleGroup, Facing, Vertex, VertexKind, Web};
use crate::error::FormatError;
use crate::sign::{Sign, SignSequence};

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawBoundary {
    half_edge: u64,
    sign: Sign,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawVertex {
    id: u64,
    kind: VertexKind,
    rotation: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawCircle {
    count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    region_hint: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeb {
    #[serde(default, skip_serializing_if = "is_up")]
    facing: Facing,
    #[serde(default)]
    boundary: Vec<RawBoundary>,
    #[serde(default)]
    vertices: Vec<RawVertex>,
    #[serde(default)]
    edges: Vec<[u64; 2]>,
    #[serde(default)]
    circles: Vec<RawCircle>,
}

fn is_up(f: &Facing) -> bool {
    *f == Facing::Up
}

impl RawWeb {
    fn from_web(w: &Web) -> RawWeb {
        RawWeb {
            facing: w.facing(),
            boundary: w
                .boundary()
                .iter()
                .map(|p| RawBoundary { half_edge: p.half_edge as u64, sign: p.sign })
                .collect(),
            vertices: w
                .vertices()
                .iter()
                .enumerate()
                .map(|(i, v)| RawVertex {
                    id: i as u64,
                    kind: v.kind,
                    rotation: v.rotation.iter().map(|&h| h as u64).collect(),
                })
                .collect(),
            edges: w.edges().iter().map(|&(t, h)| [t as u64, h as u64]).collect(),
            circles: w
                .circle_groups()
                .iter()
                .map(|c| RawCircle { count: c.count, region_hint: c.region_hint.map(|h| h as u64) })
                .collect(),
        }
    }

    fn into_web(self) -> Result<Web, FormatError> {
        let mut ids: BTreeMap<u64, usize> = BTreeMap::new();
        for e in &self.edges {
            for h in e {
                ids.insert(*h, 0);
            }
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        let map = |h: u64| -> Result<usize, FormatError> {
            ids.get(&h).copied().ok_or_else(|| FormatError::Reference(format!("half-edge {h} is not part of any edge")))
        };
        let mut vertices = self.vertices;
        vertices.sort_by_key(|v| v.id);
        if vertices.windows(2).any(|p| p[0].id == p[1].id) {
            return Err(FormatError::Reference("duplicate vertex id".into()));
        }
        let vertices = vertices
            .into_iter()
            .map(|v| {
                Ok(Vertex { kind: v.kind, rotation: v.rotation.into_iter().map(map).collect::<Result<_, _>>()? })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let edges = self.edges.iter().map(|[a, b]| Ok((map(*a)?, map(*b)?))).collect::<Result<Vec<_>, FormatError>>()?;
        let boundary = self
            .boundary
            .iter()
            .map(|p| Ok(BoundaryPoint { half_edge: map(p.half_edge)?, sign: p.sign }))
            .collect::<Result<Vec<_>, FormatError>>()?;
        let circles = self
            .circles
            .iter()
            .filter(|c| c.count > 0)
            .map(|c| Ok(CircleGroup { count: c.count, region_hint: c.region_hint.map(map).transpose()? }))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Web::from_parts(self.facing, vertices, edges, boundary, circles)
    }
}

impl Serialize for Web {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawWeb::from_web(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Web {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        RawWeb::deserialize(deserializer)?.into_web().map_err(serde::de::Error::custom)
    }
}

/// Reads one web. Structural validity is not checked; see [`Web::validate`].
pub fn parse_web(text: &str) -> Result<Web, FormatError> {
    let raw: RawWeb = serde_json::from_str(text)?;
    raw.into_web()
}

pub fn web_to_json(web: &Web) -> serde_json::Value {
    serde_json::to_value(RawWeb::from_web(web)).expect("web serializes")
}

pub fn write_web(web: &Web) -> String {
    serde_json::to_string_pretty(&RawWeb::from_web(web)).expect("web serializes")
}

/// One web per line.
pub fn write_corpus<'a>(webs: impl IntoIterator<Item = &'a Web>) -> String {
    let mut out = String::new();
    for w in webs {
        out.push_str(&serde_json::to_string(&RawWeb::from_web(w)).expect("web serializes"));
        out.push('\n');
    }
    out
}

/// Reads a newline-delimited corpus, skipping blank lines.
pub fn read_corpus(text: &str) -> Result<Vec<Web>, FormatError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_web(l).map_err(|e| FormatError::Syntax(format!("line {}: {e}", i + 1))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub signs: SignSequence,
    pub max_vertices: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

#[cfg(test)]
mod tests {
    use super::super::canonical_form;
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn round_trip() {
        for w in [arc(), tripod(), digon_arc(), theta(), circle(), double_digon_arc(), tripod().mirror()] {
            let back = parse_web(&write_web(&w)).unwrap();
            assert_eq!(back, w);
            assert_eq!(canonical_form(&back), canonical_form(&w));
        }
    }

    #[test]
    fn sparse_ids_are_compacted() {
        let text = r#"{"boundary":[{"half_edge":10,"sign":"+"},{"half_edge":42,"sign":"-"}],
                       "vertices":[],"edges":[[42,10]]}"#;
        let w = parse_web(text).unwrap();
        assert!(w.validate().is_empty());
        assert_eq!(canonical_form(&w), canonical_form(&arc()));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_web("{"), Err(FormatError::Json(_))));
        let dangling = r#"{"boundary":[{"half_edge":3,"sign":"+"}],"edges":[[1,2]]}"#;
        assert!(matches!(parse_web(dangling), Err(FormatError::Reference(_))));
    }

    #[test]
    fn corpus_round_trip() {
        let webs = vec![arc(), tripod(), theta()];
        let text = write_corpus(&webs);
        assert_eq!(text.lines().count(), 3);
        assert_eq!(read_corpus(&text).unwrap(), webs);
    }
}
