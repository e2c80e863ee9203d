//! Plain-text field files: one `x y value` row per mesh vertex, ordered by
//! vertex id, boundary vertices included with value 0.
//!
//! Numbers are written in Rust's shortest round-trip form, so a file read
//! back reproduces the field bit for bit.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use fracpow_core::{build_mesh, Field, StructuredMesh};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldIoError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{0} rows do not form an (n+1)×(n+1) vertex grid with n ≥ 2")]
    Shape(usize),
    #[error(transparent)]
    Mesh(#[from] fracpow_core::Error),
}

pub fn write_field<W: Write>(
    out: W,
    mesh: &StructuredMesh,
    field: &Field,
) -> Result<(), FieldIoError> {
    let values = field.vertex_values(mesh)?;
    let mut out = BufWriter::new(out);
    for (p, v) in mesh.vertices.iter().zip(&values) {
        writeln!(out, "{:e} {:e} {:e}", p[0], p[1], v)?;
    }
    out.flush()?;
    Ok(())
}

pub fn save_field(path: &Path, mesh: &StructuredMesh, field: &Field) -> Result<(), FieldIoError> {
    write_field(fs::File::create(path)?, mesh, field)
}

/// Parses a field file, rebuilding its mesh from the row count and checking
/// the coordinates against it.
pub fn parse_field(text: &str) -> Result<(StructuredMesh, Field), FieldIoError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |reason: String| FieldIoError::Parse {
            line: i + 1,
            reason,
        };
        let nums: Vec<f64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| parse_err(format!("{t:?}: {e}")))
            })
            .collect::<Result<_, _>>()?;
        if nums.len() != 3 {
            return Err(parse_err(format!(
                "expected 3 columns, found {}",
                nums.len()
            )));
        }
        rows.push([nums[0], nums[1], nums[2]]);
    }
    let side = (rows.len() as f64).sqrt().round() as usize;
    if side * side != rows.len() || side < 3 {
        return Err(FieldIoError::Shape(rows.len()));
    }
    let mesh = build_mesh(side - 1)?;
    for (i, (row, p)) in rows.iter().zip(&mesh.vertices).enumerate() {
        if (row[0] - p[0]).abs() > 1e-12 || (row[1] - p[1]).abs() > 1e-12 {
            return Err(FieldIoError::Parse {
                line: i + 1,
                reason: format!(
                    "coordinates ({}, {}) do not match vertex ({}, {})",
                    row[0], row[1], p[0], p[1]
                ),
            });
        }
    }
    let all: Vec<f64> = rows.iter().map(|r| r[2]).collect();
    let field = Field::from_vertex_values(&mesh, &all)?;
    Ok((mesh, field))
}

pub fn load_field(path: &Path) -> Result<(StructuredMesh, Field), FieldIoError> {
    parse_field(&fs::read_to_string(path)?)
}
