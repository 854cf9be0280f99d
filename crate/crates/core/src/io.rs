//! Text and JSON encodings of weighted multigraphs.
//!
//! Text format, one directive per line, `#` starts a comment:
//!
//! ```text
//! graph <nv> <ne>
//! vertex <id> <weight>
//! edge <id> <u> <v>
//! ```
//!
//! The JSON mirror carries the same fields:
//! `{"vertices":[{"id":..,"weight":..}],"edges":[{"id":..,"u":..,"v":..}]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId, WeightMap};

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    id: u32,
    weight: u64,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    id: u32,
    u: u32,
    v: u32,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    edges: Vec<JsonEdge>,
}

pub fn to_text(g: &MultiGraph, w: &WeightMap) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph {} {}\n", g.order(), g.size()));
    for v in g.vertices() {
        out.push_str(&format!("vertex {} {}\n", v.0, w.get(v)));
    }
    for (e, u, v) in g.edges() {
        out.push_str(&format!("edge {} {} {}\n", e.0, u.0, v.0));
    }
    out
}

pub fn to_json(g: &MultiGraph, w: &WeightMap) -> String {
    let jg = JsonGraph {
        vertices: g
            .vertices()
            .map(|v| JsonVertex {
                id: v.0,
                weight: w.get(v),
            })
            .collect(),
        edges: g
            .edges()
            .map(|(e, u, v)| JsonEdge {
                id: e.0,
                u: u.0,
                v: v.0,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&jg).expect("graph serialization cannot fail")
}

pub fn from_text(input: &str) -> Result<(MultiGraph, WeightMap)> {
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut edges: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
    let mut weights = WeightMap::new();
    let mut header: Option<(usize, usize)> = None;
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = |what: &str| Error::Input(format!("line {}: {}", lineno + 1, what));
        let num = |s: &str| -> Result<u64> {
            s.parse::<u64>()
                .map_err(|_| bad(&format!("bad number {s:?}")))
        };
        match toks[0] {
            "graph" => {
                if toks.len() != 3 {
                    return Err(bad("graph header takes 2 fields"));
                }
                header = Some((num(toks[1])? as usize, num(toks[2])? as usize));
            }
            "vertex" => {
                if toks.len() != 3 {
                    return Err(bad("vertex takes id and weight"));
                }
                let id = VertexId(num(toks[1])? as u32);
                vertices.push(id);
                weights.set(id, num(toks[2])?);
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(bad("edge takes id and two endpoints"));
                }
                edges.push((
                    EdgeId(num(toks[1])? as u32),
                    VertexId(num(toks[2])? as u32),
                    VertexId(num(toks[3])? as u32),
                ));
            }
            other => return Err(bad(&format!("unknown directive {other:?}"))),
        }
    }
    if let Some((nv, ne)) = header {
        if nv != vertices.len() || ne != edges.len() {
            return Err(Error::Input(format!(
                "header claims {nv} vertices / {ne} edges, found {} / {}",
                vertices.len(),
                edges.len()
            )));
        }
    }
    let g = MultiGraph::from_parts(vertices, edges)
        .map_err(|e| Error::Input(format!("invalid graph: {e}")))?;
    Ok((g, weights))
}

pub fn from_json(input: &str) -> Result<(MultiGraph, WeightMap)> {
    let jg: JsonGraph =
        serde_json::from_str(input).map_err(|e| Error::Input(format!("bad JSON graph: {e}")))?;
    let mut weights = WeightMap::new();
    let vertices: Vec<VertexId> = jg
        .vertices
        .iter()
        .map(|v| {
            let id = VertexId(v.id);
            weights.set(id, v.weight);
            id
        })
        .collect();
    let edges = jg
        .edges
        .iter()
        .map(|e| (EdgeId(e.id), VertexId(e.u), VertexId(e.v)));
    let g = MultiGraph::from_parts(vertices, edges)
        .map_err(|e| Error::Input(format!("invalid graph: {e}")))?;
    Ok((g, weights))
}

/// Parse either encoding, sniffing JSON by the leading `{`.
pub fn from_str(input: &str) -> Result<(MultiGraph, WeightMap)> {
    if input.trim_start().starts_with('{') {
        from_json(input)
    } else {
        from_text(input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn text_round_trip() {
        let p = corpus::prism();
        let w = WeightMap::uniform(&p.graph, 2);
        let (g2, w2) = from_text(&to_text(&p.graph, &w)).unwrap();
        assert_eq!(g2, p.graph);
        assert_eq!(w2.total(&g2), w.total(&p.graph));
    }

    #[test]
    fn json_round_trip() {
        let g = corpus::petersen();
        let w = WeightMap::uniform(&g, 3);
        let (g2, w2) = from_str(&to_json(&g, &w)).unwrap();
        assert_eq!(g2, g);
        assert_eq!(w2, w);
    }

    #[test]
    fn comments_and_header_checked() {
        let src = "# a triangle is not cubic, but parses\ngraph 2 3\nvertex 0 5\nvertex 1 0\nedge 0 0 1\nedge 1 0 1\nedge 2 0 1\n";
        let (g, w) = from_text(src).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(w.get(crate::VertexId(0)), 5);
        assert!(from_text("graph 3 0\nvertex 0 0\n").is_err());
    }
}
