//! Simplex files: a TOML document with an integer `dim` and `dim + 1`
//! integer `vertices` of length `dim`.
//!
//! ```toml
//! dim = 2
//! vertices = [[0, 0], [7, 0], [0, 2]]
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use onepoint::exact::parse_rat;
use onepoint::{BigInt, LatticeSimplex, Rat};
use serde::Deserialize;
use toml::{Spanned, Value};

use crate::error::CliError;

#[derive(Deserialize)]
struct VertexRows {
    vertices: Vec<Spanned<Vec<Spanned<Value>>>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::String(_) => "string",
        Value::Integer(_) => "integer",
        Value::Float(_) => "float",
        Value::Boolean(_) => "boolean",
        Value::Datetime(_) => "datetime",
        Value::Array(_) => "array",
        Value::Table(_) => "table",
    }
}

pub fn parse_simplex(path: &str, text: &str) -> Result<LatticeSimplex, CliError> {
    let err = |offset: usize, field: &str, message: String| CliError::Parse {
        path: path.to_string(),
        line: line_of(text, offset),
        field: field.to_string(),
        message,
    };
    let fields: BTreeMap<String, Spanned<Value>> = toml::from_str(text).map_err(|e| {
        err(
            e.span().map_or(0, |s| s.start),
            "document",
            e.message().trim().to_string(),
        )
    })?;
    if let Some(extra) = fields.keys().find(|k| *k != "dim" && *k != "vertices") {
        let at = fields[extra].span().start;
        return Err(err(at, extra, "unknown field, expected `dim` or `vertices`".into()));
    }
    let Some(dim_field) = fields.get("dim") else {
        return Err(err(text.len(), "dim", "missing".into()));
    };
    let dim = match dim_field.get_ref() {
        Value::Integer(d) if *d >= 1 => *d as usize,
        Value::Integer(d) => {
            return Err(err(dim_field.span().start, "dim", format!("must be at least 1, got {d}")))
        }
        Value::Float(f) => {
            return Err(err(dim_field.span().start, "dim", format!("fractional value {f} not allowed")))
        }
        other => {
            return Err(err(
                dim_field.span().start,
                "dim",
                format!("expected integer, found {}", type_name(other)),
            ))
        }
    };
    let Some(vertices_field) = fields.get("vertices") else {
        return Err(err(text.len(), "vertices", "missing".into()));
    };
    let rows: VertexRows = toml::from_str(text).map_err(|e| {
        err(
            e.span().map_or(vertices_field.span().start, |s| s.start),
            "vertices",
            e.message().trim().to_string(),
        )
    })?;
    if rows.vertices.len() != dim + 1 {
        return Err(err(
            vertices_field.span().start,
            "vertices",
            format!("expected {} vertices for dim = {dim}, found {}", dim + 1, rows.vertices.len()),
        ));
    }
    let mut vertices = Vec::with_capacity(dim + 1);
    for (i, row) in rows.vertices.iter().enumerate() {
        if row.get_ref().len() != dim {
            return Err(err(
                row.span().start,
                &format!("vertices[{i}]"),
                format!("expected {dim} coordinates, found {}", row.get_ref().len()),
            ));
        }
        let mut v = Vec::with_capacity(dim);
        for (j, c) in row.get_ref().iter().enumerate() {
            let field = format!("vertices[{i}][{j}]");
            match c.get_ref() {
                Value::Integer(n) => v.push(BigInt::from(*n)),
                Value::Float(f) => {
                    return Err(err(c.span().start, &field, format!("fractional coordinate {f} not allowed")))
                }
                other => {
                    return Err(err(
                        c.span().start,
                        &field,
                        format!("expected integer, found {}", type_name(other)),
                    ))
                }
            }
        }
        vertices.push(v);
    }
    let s = LatticeSimplex::new(vertices)
        .map_err(|e| err(vertices_field.span().start, "vertices", e.to_string()))?;
    if !s.is_full_dimensional() {
        return Err(err(
            vertices_field.span().start,
            "vertices",
            "vertices are affinely dependent".into(),
        ));
    }
    Ok(s)
}

pub fn load_simplex(path: &Path) -> Result<LatticeSimplex, CliError> {
    let label = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: label.clone(),
        message: e.to_string(),
    })?;
    parse_simplex(&label, &text)
}

pub fn render_simplex(s: &LatticeSimplex) -> String {
    let rows: Vec<String> = s
        .vertices()
        .iter()
        .map(|v| {
            let c: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("[{}]", c.join(", "))
        })
        .collect();
    format!("dim = {}\nvertices = [{}]\n", s.dim(), rows.join(", "))
}

/// A comma-separated point such as `1,1` or `1/2,-3`.
pub fn parse_point(text: &str) -> Result<Vec<Rat>, CliError> {
    text.split(',')
        .map(|part| {
            parse_rat(part.trim()).ok_or_else(|| {
                CliError::Usage(format!("--point: `{}` is not an integer or fraction", part.trim()))
            })
        })
        .collect()
}
