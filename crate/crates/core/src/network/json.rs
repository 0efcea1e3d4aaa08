use serde_json::{json, Map, Value as Json};

use super::{PlanarNetwork, Point, Vertex, WeightMode};
use crate::error::{Error, Result};
use crate::semiring::{parse_rational, value_from_json, value_to_json, SemiringSpec};

fn rat_json(r: &num_rational::BigRational) -> Json {
    if r.is_integer() {
        json!(r.numer().to_string())
    } else {
        json!(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn coord(j: Option<&Json>) -> Result<num_rational::BigRational> {
    match j {
        Some(Json::String(s)) => parse_rational(s),
        Some(Json::Number(n)) => n
            .as_i64()
            .map(|i| num_rational::BigRational::from_integer(i.into()))
            .ok_or_else(|| Error::Parse(format!("coordinate {n} is not exact"))),
        _ => Err(Error::Parse("missing coordinate".into())),
    }
}

/// Serializes with coordinates as rational strings and weights keyed by vertex id or `"u->v"`.
pub fn network_to_json(g: &PlanarNetwork, spec: &SemiringSpec) -> Json {
    let vertices: Vec<Json> = g
        .vertices
        .iter()
        .map(|v| json!({"id": v.id, "x": rat_json(&v.pos.x), "y": rat_json(&v.pos.y)}))
        .collect();
    let edges: Vec<Json> = g
        .edges
        .iter()
        .map(|&(u, v)| json!([g.vertices[u].id, g.vertices[v].id]))
        .collect();
    let mut weights = Map::new();
    for (k, w) in g.weights.iter().enumerate() {
        if let Some(w) = w {
            let key = match g.weight_mode {
                WeightMode::Vertex => g.vertices[k].id.clone(),
                WeightMode::Edge => g.edge_label(k),
            };
            weights.insert(key, value_to_json(spec, w));
        }
    }
    json!({
        "vertices": vertices,
        "edges": edges,
        "sources": g.sources.iter().map(|&v| g.vertices[v].id.clone()).collect::<Vec<_>>(),
        "sinks": g.sinks.iter().map(|&v| g.vertices[v].id.clone()).collect::<Vec<_>>(),
        "weight_mode": match g.weight_mode { WeightMode::Vertex => "vertex", WeightMode::Edge => "edge" },
        "weights": Json::Object(weights),
    })
}

pub fn network_from_json(j: &Json, spec: &SemiringSpec) -> Result<PlanarNetwork> {
    let arr = |key: &str| -> Result<&Vec<Json>> {
        j.get(key)
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Parse(format!("network needs an array `{key}`")))
    };
    let mut vertices = Vec::new();
    for v in arr("vertices")? {
        let id = v
            .get("id")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::Parse("vertex without id".into()))?;
        vertices.push(Vertex {
            id: id.to_string(),
            pos: Point::new(coord(v.get("x"))?, coord(v.get("y"))?),
        });
    }
    let index = |id: &Json| -> Result<usize> {
        let id = id.as_str().ok_or_else(|| Error::Parse(format!("bad vertex reference {id}")))?;
        vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::Parse(format!("unknown vertex `{id}`")))
    };
    let mut edges = Vec::new();
    for e in arr("edges")? {
        match e.as_array().map(Vec::as_slice) {
            Some([u, v]) => edges.push((index(u)?, index(v)?)),
            _ => return Err(Error::Parse(format!("bad edge {e}"))),
        }
    }
    let sources = arr("sources")?.iter().map(&index).collect::<Result<Vec<_>>>()?;
    let sinks = arr("sinks")?.iter().map(&index).collect::<Result<Vec<_>>>()?;
    let mode = match j.get("weight_mode").and_then(Json::as_str).unwrap_or("vertex") {
        "vertex" => WeightMode::Vertex,
        "edge" => WeightMode::Edge,
        other => return Err(Error::Parse(format!("unknown weight mode `{other}`"))),
    };
    let mut g = PlanarNetwork::new(vertices, edges, sources, sinks, mode)?;
    if let Some(Json::Object(ws)) = j.get("weights") {
        for (key, val) in ws {
            let w = value_from_json(spec, val)?;
            let slot = match mode {
                WeightMode::Vertex => g.vertex_index(key),
                WeightMode::Edge => (0..g.edges.len()).find(|&e| g.edge_label(e) == *key),
            }
            .ok_or_else(|| Error::Parse(format!("weight for unknown key `{key}`")))?;
            g.weights[slot] = Some(w);
        }
    }
    Ok(g)
}
