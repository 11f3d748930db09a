//! File formats for grids and hulls: CSV tables for boundary surfaces and
//! Wavefront OBJ meshes for hulls. Numbers are written in shortest
//! round-trip form, so re-reading reproduces the exact f64 values.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::hull::Hull;
use crate::region::{SurfaceGrid, SurfacePoint};
use crate::{Error, Result};

fn csv_err(e: csv::Error) -> Error {
    Error::Parse {
        kind: "csv",
        detail: e.to_string(),
    }
}

/// Writes `y,z,x_max,x_effective,empty` rows; empty columns carry NaN
/// heights, which round-trip through the reader.
pub fn write_surface_csv<W: Write>(w: W, grid: &SurfaceGrid) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for p in &grid.points {
        wtr.serialize(p).map_err(csv_err)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn surface_csv_string(grid: &SurfaceGrid) -> Result<String> {
    let mut buf = Vec::new();
    write_surface_csv(&mut buf, grid)?;
    String::from_utf8(buf).map_err(|e| Error::Parse {
        kind: "csv",
        detail: e.to_string(),
    })
}

pub fn write_surface_csv_path<P: AsRef<Path>>(path: P, grid: &SurfaceGrid) -> Result<()> {
    write_surface_csv(BufWriter::new(File::create(path)?), grid)
}

/// Reads rows written by `write_surface_csv`.
pub fn read_surface_csv<R: Read>(r: R) -> Result<Vec<SurfacePoint>> {
    let mut rdr = csv::Reader::from_reader(r);
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        out.push(row.map_err(csv_err)?);
    }
    Ok(out)
}

/// Wavefront OBJ mesh: one `v` record per vertex, one triangular `f`
/// record per face (1-based indices).
pub fn hull_to_obj(h: &Hull) -> String {
    let mut s = String::new();
    for v in &h.vertices {
        s.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
    }
    for f in &h.faces {
        s.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    s
}

pub fn write_hull_obj_path<P: AsRef<Path>>(path: P, h: &Hull) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(hull_to_obj(h).as_bytes())?;
    Ok(())
}

/// Parses the subset of OBJ produced by `hull_to_obj` (v and triangular f
/// records; comments and blank lines skipped). The coplanar flag cannot be
/// recovered from the mesh and is left false.
pub fn parse_obj(text: &str) -> Result<Hull> {
    let mut vertices: Vec<[f64; 3]> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let tag = it.next().unwrap();
        let fields: Vec<&str> = it.collect();
        match tag {
            "v" => {
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        kind: "obj",
                        detail: format!("line {}: vertex needs 3 coordinates", lineno + 1),
                    });
                }
                let mut v = [0.0; 3];
                for (slot, f) in v.iter_mut().zip(&fields) {
                    *slot = f.parse().map_err(|_| Error::Parse {
                        kind: "obj",
                        detail: format!("line {}: bad coordinate {f:?}", lineno + 1),
                    })?;
                }
                vertices.push(v);
            }
            "f" => {
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        kind: "obj",
                        detail: format!("line {}: only triangular faces supported", lineno + 1),
                    });
                }
                let mut f3 = [0usize; 3];
                for (slot, f) in f3.iter_mut().zip(&fields) {
                    // Accept the common v/vt/vn syntax but use the vertex id.
                    let first = f.split('/').next().unwrap();
                    let idx: usize = first.parse().map_err(|_| Error::Parse {
                        kind: "obj",
                        detail: format!("line {}: bad face index {f:?}", lineno + 1),
                    })?;
                    if idx == 0 {
                        return Err(Error::Parse {
                            kind: "obj",
                            detail: format!("line {}: OBJ indices are 1-based", lineno + 1),
                        });
                    }
                    *slot = idx - 1;
                }
                faces.push(f3);
            }
            _ => {}
        }
    }
    for f in &faces {
        if f.iter().any(|&i| i >= vertices.len()) {
            return Err(Error::Parse {
                kind: "obj",
                detail: "face references a missing vertex".into(),
            });
        }
    }
    Ok(Hull {
        vertices,
        faces,
        coplanar: false,
    })
}

pub fn read_hull_obj_path<P: AsRef<Path>>(path: P) -> Result<Hull> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    parse_obj(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::convex_hull;
    use crate::region::sample_surface;
    use crate::slocc::SloccClass;

    #[test]
    fn csv_roundtrip_preserves_values_and_nans() {
        let grid = sample_surface(SloccClass::L031031, 8).unwrap();
        assert!(grid.points.iter().any(|p| p.empty));
        let text = surface_csv_string(&grid).unwrap();
        assert!(text.starts_with("y,z,x_max,x_effective,empty\n"));
        let rows = read_surface_csv(text.as_bytes()).unwrap();
        assert_eq!(rows.len(), grid.points.len());
        for (a, b) in grid.points.iter().zip(&rows) {
            assert_eq!(a.y.to_bits(), b.y.to_bits());
            assert_eq!(a.z.to_bits(), b.z.to_bits());
            assert_eq!(a.empty, b.empty);
            if a.empty {
                assert!(b.x_effective.is_nan());
            } else {
                assert_eq!(a.x_max.to_bits(), b.x_max.to_bits());
                assert_eq!(a.x_effective.to_bits(), b.x_effective.to_bits());
            }
        }
    }

    #[test]
    fn obj_roundtrip_reproduces_mesh() {
        let pts = vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.25, 0.25, 0.25],
        ];
        let h = convex_hull(&pts).unwrap();
        let text = hull_to_obj(&h);
        let back = parse_obj(&text).unwrap();
        assert_eq!(back.vertices.len(), h.vertices.len());
        assert_eq!(back.faces, h.faces);
        for (a, b) in h.vertices.iter().zip(&back.vertices) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn obj_parser_rejects_malformed_records() {
        assert!(parse_obj("v 1 2\n").is_err());
        assert!(parse_obj("v 1 2 x\n").is_err());
        assert!(parse_obj("v 1 2 3\nf 1 2 9\n").is_err());
        assert!(parse_obj("v 1 2 3\nf 0 1 1\n").is_err());
        let ok = parse_obj("# comment\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1 2/2 3/3\n").unwrap();
        assert_eq!(ok.faces, vec![[0, 1, 2]]);
    }
}
