// Copyright The fekete Authors
// SPDX-License-Identifier: Apache-2.0

//! Text formats.
//!
//! Point sets: one point per line, `re im` (plane) or `x y z` (sphere), chosen
//! by column count; `#` starts a comment. Sphere points must satisfy
//! `|x² + y² + z² - 1| ≤ 1e-9` and are then renormalized.
//!
//! Polynomials: one coefficient `re im` per line in ascending degree, or JSON
//! `{"coeffs": [[re, im], ...]}`.
//!
//! Numbers are written in shortest round-trip form, so write-then-read is exact.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::sphere::{Configuration, PlanePoint, SpherePoint};

/// Largest accepted `|x² + y² + z² - 1|` for a sphere point read from text.
pub const FILE_SPHERE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum PointSet {
    Plane(Vec<PlanePoint<f64>>),
    Sphere(Configuration<f64>),
}

impl PointSet {
    pub fn len(&self) -> usize {
        match self {
            PointSet::Plane(p) => p.len(),
            PointSet::Sphere(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Plane points are lifted by inverse stereographic projection.
    pub fn into_configuration(self) -> Result<Configuration<f64>> {
        match self {
            PointSet::Plane(p) => Configuration::from_plane(&p),
            PointSet::Sphere(c) => Ok(c),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_fields(line: &str, lineno: usize) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|tok| {
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("`{tok}` is not a number"),
            })?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Parse {
                    line: lineno,
                    message: format!("`{tok}` is not finite"),
                })
            }
        })
        .collect()
}

/// Numbered, comment-stripped, non-empty rows of numbers.
fn rows(text: &str) -> Result<Vec<(usize, Vec<f64>)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if !line.is_empty() {
            out.push((i + 1, parse_fields(line, i + 1)?));
        }
    }
    Ok(out)
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let rows = rows(text)?;
    let Some((_, first)) = rows.first() else {
        return Err(Error::Parse {
            line: 0,
            message: "no points found".into(),
        });
    };
    let width = first.len();
    if width != 2 && width != 3 {
        return Err(Error::Parse {
            line: rows[0].0,
            message: format!("expected 2 (plane) or 3 (sphere) columns, found {width}"),
        });
    }
    for (line, r) in &rows {
        if r.len() != width {
            return Err(Error::Parse {
                line: *line,
                message: format!("expected {width} columns, found {}", r.len()),
            });
        }
    }
    if width == 2 {
        return Ok(PointSet::Plane(
            rows.iter().map(|(_, r)| PlanePoint::new(r[0], r[1])).collect(),
        ));
    }
    let mut points = Vec::with_capacity(rows.len());
    for (line, r) in &rows {
        let norm_sqr = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
        if (norm_sqr - 1.0).abs() > FILE_SPHERE_TOL {
            return Err(Error::Parse {
                line: *line,
                message: format!("point is off the unit sphere (|x|² = {norm_sqr})"),
            });
        }
        points.push(SpherePoint::normalized(r[0], r[1], r[2])?);
    }
    Ok(PointSet::Sphere(Configuration::new(points)?))
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointSet> {
    parse_points(&std::fs::read_to_string(path)?)
}

pub fn write_sphere_points(cfg: &Configuration<f64>) -> String {
    let mut s = String::new();
    for p in cfg.points() {
        let _ = writeln!(s, "{:?} {:?} {:?}", p.a, p.b, p.c);
    }
    s
}

pub fn write_plane_points(points: &[PlanePoint<f64>]) -> String {
    let mut s = String::new();
    for z in points {
        let _ = writeln!(s, "{:?} {:?}", z.re, z.im);
    }
    s
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    coeffs: Vec<[f64; 2]>,
}

fn poly_from_pairs(pairs: impl IntoIterator<Item = [f64; 2]>) -> Result<Polynomial<f64>> {
    Polynomial::new(pairs.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
}

/// Text or JSON, detected by a leading `{`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial<f64>> {
    if text.trim_start().starts_with('{') {
        parse_polynomial_json(text)
    } else {
        parse_polynomial_text(text)
    }
}

pub fn parse_polynomial_text(text: &str) -> Result<Polynomial<f64>> {
    let rows = rows(text)?;
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no coefficients found".into(),
        });
    }
    let mut pairs = Vec::with_capacity(rows.len());
    for (line, r) in rows {
        if r.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected `re im`, found {} columns", r.len()),
            });
        }
        pairs.push([r[0], r[1]]);
    }
    poly_from_pairs(pairs)
}

pub fn parse_polynomial_json(text: &str) -> Result<Polynomial<f64>> {
    let parsed: PolynomialJson = serde_json::from_str(text)?;
    if parsed.coeffs.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite coefficient".into()));
    }
    poly_from_pairs(parsed.coeffs)
}

pub fn read_polynomial(path: impl AsRef<Path>) -> Result<Polynomial<f64>> {
    parse_polynomial(&std::fs::read_to_string(path)?)
}

pub fn write_polynomial_text(poly: &Polynomial<f64>) -> String {
    let mut s = String::new();
    for c in poly.coeffs() {
        let _ = writeln!(s, "{:?} {:?}", c.re, c.im);
    }
    s
}

pub fn polynomial_to_json(poly: &Polynomial<f64>) -> serde_json::Value {
    let coeffs: Vec<[f64; 2]> = poly.coeffs().iter().map(|c| [c.re, c.im]).collect();
    serde_json::to_value(PolynomialJson { coeffs }).expect("finite coefficients serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn detects_plane_and_sphere() {
        let plane = parse_points("# roots\n1 0\n-1 0   # second\n\n").unwrap();
        assert_eq!(plane, PointSet::Plane(vec![PlanePoint::new(1.0, 0.0), PlanePoint::new(-1.0, 0.0)]));
        let sphere = parse_points("0 0 1\n0 0 -1\n").unwrap();
        assert_eq!(sphere.len(), 2);
        assert!(matches!(sphere, PointSet::Sphere(_)));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = parse_points("0 0 1\n# fine\n0 zero -1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_points("0 0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_points("1 2 3 4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_points("0 0 1.01\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        assert!(parse_points("# nothing\n").is_err());
        assert!(parse_points("nan 0\n").is_err());
    }

    #[test]
    fn slightly_off_sphere_points_are_renormalized() {
        let PointSet::Sphere(cfg) = parse_points("0 0 1.0000000001\n").unwrap() else {
            panic!("expected sphere points");
        };
        assert_eq!(cfg.points()[0].c, 1.0);
    }

    #[test]
    fn sphere_points_round_trip_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = Configuration::<f64>::random(50, &mut rng);
        let back = parse_points(&write_sphere_points(&cfg)).unwrap().into_configuration().unwrap();
        for (p, q) in cfg.points().iter().zip(back.points()) {
            assert!((p.a - q.a).abs() <= 2e-16 && (p.b - q.b).abs() <= 2e-16 && (p.c - q.c).abs() <= 2e-16);
        }
        let roots = vec![PlanePoint::new(1e-300, -3.5), PlanePoint::new(0.1, 1e12)];
        let PointSet::Plane(back) = parse_points(&write_plane_points(&roots)).unwrap() else {
            panic!("expected plane points");
        };
        assert_eq!(back, roots);
    }

    #[test]
    fn polynomial_formats() {
        let p = parse_polynomial("-1 0\n0 0\n1 0\n").unwrap();
        assert_eq!(p.degree(), 2);
        assert!((p.weyl_norm().unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let q = parse_polynomial(r#"{"coeffs": [[-1, 0], [0, 0], [1, 0]]}"#).unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_polynomial(&write_polynomial_text(&p)).unwrap(), p);
        assert_eq!(parse_polynomial(&polynomial_to_json(&p).to_string()).unwrap(), p);
        assert!(matches!(parse_polynomial("1 0\n2\n"), Err(Error::Parse { line: 2, .. })));
        let zero = parse_polynomial("0 0\n0 0\n").unwrap();
        assert!(matches!(zero.weyl_norm(), Err(Error::ZeroPolynomial)));
        assert!(parse_polynomial("{\"coeffs\": 3}").is_err());
    }
}
