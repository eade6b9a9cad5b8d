use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::Vector3;

use super::ellipsoid::SteeringEllipsoid;
use crate::error::{Error, Result};
use crate::numfmt::format_sig;

/// Triangulated surface; `faces` index `vertices` from zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl TriangleMesh {
    /// Wavefront subset: `v x y z` lines (9 significant digits) followed
    /// by `f i j k` lines with 1-based indices.
    pub fn to_obj(&self) -> String {
        let mut out = String::with_capacity(self.vertices.len() * 48 + self.faces.len() * 16);
        for v in &self.vertices {
            let _ = writeln!(
                out,
                "v {} {} {}",
                format_sig(v[0], 9),
                format_sig(v[1], 9),
                format_sig(v[2], 9)
            );
        }
        for f in &self.faces {
            let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        out
    }

    /// Parses the subset written by [`TriangleMesh::to_obj`]; blank lines
    /// and `#` comments are skipped.
    pub fn from_obj(text: &str) -> Result<Self> {
        let mut mesh = TriangleMesh { vertices: Vec::new(), faces: Vec::new() };
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Argument(format!("mesh line {}: cannot parse {line:?}", lineno + 1));
            let mut parts = line.split_whitespace();
            let tag = parts.next().ok_or_else(bad)?;
            let rest: Vec<&str> = parts.collect();
            if rest.len() != 3 {
                return Err(bad());
            }
            match tag {
                "v" => {
                    let mut xyz = [0.0; 3];
                    for (slot, tok) in xyz.iter_mut().zip(&rest) {
                        *slot = tok.parse().map_err(|_| bad())?;
                    }
                    mesh.vertices.push(xyz);
                }
                "f" => {
                    let mut idx = [0usize; 3];
                    for (slot, tok) in idx.iter_mut().zip(&rest) {
                        let i: usize = tok.parse().map_err(|_| bad())?;
                        if i == 0 {
                            return Err(bad());
                        }
                        *slot = i - 1;
                    }
                    mesh.faces.push(idx);
                }
                _ => return Err(bad()),
            }
        }
        Ok(mesh)
    }
}

/// Latitude/longitude mesh of the ellipsoid surface: both poles plus
/// `lat_steps - 1` rings of `lon_steps` vertices.
pub fn ellipsoid_mesh(e: &SteeringEllipsoid, lat_steps: usize, lon_steps: usize) -> Result<TriangleMesh> {
    if lat_steps < 4 || lon_steps < 8 {
        return Err(Error::Argument(format!(
            "mesh needs lat_steps >= 4 and lon_steps >= 8, got {lat_steps} and {lon_steps}"
        )));
    }
    let point = |theta: f64, phi: f64| -> [f64; 3] {
        let unit = Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
        e.surface_point(&unit).into()
    };

    let mut vertices = Vec::with_capacity((lat_steps - 1) * lon_steps + 2);
    vertices.push(point(0.0, 0.0));
    for i in 1..lat_steps {
        let theta = PI * i as f64 / lat_steps as f64;
        for j in 0..lon_steps {
            vertices.push(point(theta, 2.0 * PI * j as f64 / lon_steps as f64));
        }
    }
    vertices.push(point(PI, 0.0));

    let south = vertices.len() - 1;
    let ring = |i: usize, j: usize| 1 + (i - 1) * lon_steps + j % lon_steps;
    let mut faces = Vec::with_capacity(2 * lon_steps * (lat_steps - 1));
    for j in 0..lon_steps {
        faces.push([0, ring(1, j), ring(1, j + 1)]);
    }
    for i in 1..lat_steps - 1 {
        for j in 0..lon_steps {
            let (a, b) = (ring(i, j), ring(i, j + 1));
            let (c, d) = (ring(i + 1, j), ring(i + 1, j + 1));
            faces.push([a, c, d]);
            faces.push([a, d, b]);
        }
    }
    for j in 0..lon_steps {
        faces.push([south, ring(lat_steps - 1, j + 1), ring(lat_steps - 1, j)]);
    }
    Ok(TriangleMesh { vertices, faces })
}
