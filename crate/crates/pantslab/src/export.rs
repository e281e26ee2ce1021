//! Serialization: JSON posets, DOT Hasse diagrams, OFF geometry, CSV tables,
//! and collapse-schedule traces.  All outputs are byte-stable for a fixed
//! input: cells sorted by (dimension, label), covers sorted lexicographically.

use crate::homology::BettiVector;
use crate::label::CellLabel;
use crate::poset::FacePoset;
use crate::rootgeom::{to_decimal, PolytopeGeometry};
use serde_json::{json, Value};

/// JSON form of a poset: `{"cells":[{"label","dim"}...],"covers":[[f,c]...]}`.
pub fn poset_to_json(p: &FacePoset) -> Value {
    let cells: Vec<Value> = p
        .cells()
        .iter()
        .map(|(l, d)| json!({"label": l.canonical(), "dim": d}))
        .collect();
    let covers: Vec<Value> = p
        .cover_pairs()
        .iter()
        .map(|(f, c)| json!([f.canonical(), c.canonical()]))
        .collect();
    json!({"cells": cells, "covers": covers})
}

/// DOT rendering of the Hasse diagram, facets pointing to cofaces.
pub fn poset_to_dot(p: &FacePoset, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    out.push_str("  rankdir=BT;\n");
    for (l, d) in p.cells() {
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\", dim={}];\n",
            l.canonical(),
            l.canonical(),
            d
        ));
    }
    for (f, c) in p.cover_pairs() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", f.canonical(), c.canonical()));
    }
    out.push_str("}\n");
    out
}

/// OFF file for a 3-dimensional polytope; coordinates are rendered in units
/// of pi with the given decimal precision.
pub fn geometry_to_off(g: &PolytopeGeometry, precision: usize) -> String {
    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str("# coordinates in units of pi\n");
    out.push_str(&format!(
        "{} {} {}\n",
        g.vertices.len(),
        g.faces.len(),
        g.edge_count()
    ));
    for v in &g.vertices {
        let coords: Vec<String> = v.iter().map(|c| to_decimal(c, precision)).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    for f in &g.faces {
        out.push_str(&f.len().to_string());
        for &i in f {
            out.push_str(&format!(" {i}"));
        }
        out.push('\n');
    }
    out
}

/// One CSV row per dimension: `object,n,label,dim,cells`.
pub fn f_vector_csv_rows(object: &str, n: u32, label: &str, p: &FacePoset) -> Vec<String> {
    p.f_vector()
        .iter()
        .enumerate()
        .map(|(d, c)| format!("{object},{n},{label},{d},{c}"))
        .collect()
}

/// One CSV row per degree: `object,n,label,degree,betti`.
pub fn betti_csv_rows(object: &str, n: u32, label: &str, b: &BettiVector) -> Vec<String> {
    b.iter()
        .enumerate()
        .map(|(d, r)| format!("{object},{n},{label},{d},{r}"))
        .collect()
}

/// JSON trace of a collapse schedule: an ordered list of (face, coface)
/// label pairs.
pub fn schedule_to_json(trace: &[(CellLabel, CellLabel)]) -> Value {
    Value::Array(
        trace
            .iter()
            .map(|(f, c)| json!([f.canonical(), c.canonical()]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::dsd_simplex;
    use crate::rootgeom::{perm_geometry_n3, zonotope_geometry_n3};
    use crate::subset::Subset;

    #[test]
    fn json_round_trip_shape() {
        let p = dsd_simplex([0u32, 1].into_iter().collect()).unwrap();
        let v = poset_to_json(&p);
        assert_eq!(v["cells"].as_array().unwrap().len(), 5);
        assert_eq!(v["covers"].as_array().unwrap().len(), 4);
        // byte-stable
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            serde_json::to_string(&poset_to_json(&p)).unwrap()
        );
    }

    #[test]
    fn dot_contains_every_cover() {
        let p = dsd_simplex([0u32, 1].into_iter().collect()).unwrap();
        let dot = poset_to_dot(&p, "dsd");
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches(" -> ").count(), 4);
    }

    #[test]
    fn off_headers_are_consistent() {
        let off = geometry_to_off(&perm_geometry_n3(), 6);
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        let _comment = lines.next();
        assert_eq!(lines.next(), Some("24 14 36"));
        let zoff = geometry_to_off(&zonotope_geometry_n3(), 6);
        assert!(zoff.contains("14 12 24"));
    }

    #[test]
    fn csv_rows_have_fixed_key_order() {
        let p = dsd_simplex(Subset::full(3)).unwrap();
        let rows = f_vector_csv_rows("dsd", 2, "full", &p);
        assert_eq!(rows[0], "dsd,2,full,0,7");
        assert_eq!(rows.len(), p.max_dim() + 1);
    }
}
