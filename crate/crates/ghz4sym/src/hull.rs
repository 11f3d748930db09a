//! 3D convex hulls of region point clouds, used to compare the solved
//! class regions against polytope descriptions. Incremental
//! beneath-beyond construction with an outward-oriented triangle mesh;
//! rank-2 inputs degrade to a planar hull with a zero-volume flag.

use serde::{Deserialize, Serialize};

use crate::symstate::ParamPoint;
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Hull {
    /// Points on the hull (a subset of the input, deduplicated).
    pub vertices: Vec<[f64; 3]>,
    /// Outward-oriented triangles indexing `vertices`. For a planar hull
    /// this is a fan over the rim polygon and carries no volume.
    pub faces: Vec<[usize; 3]>,
    /// Input had rank 2: all points within tolerance of one plane.
    pub coplanar: bool,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Clone)]
struct Face {
    v: [usize; 3],
    /// Unit outward normal; plane is dot(n, p) = offset.
    n: [f64; 3],
    offset: f64,
    alive: bool,
}

fn make_face(pts: &[[f64; 3]], v: [usize; 3], fallback: Option<([f64; 3], f64)>) -> Face {
    let e1 = sub(pts[v[1]], pts[v[0]]);
    let e2 = sub(pts[v[2]], pts[v[0]]);
    let c = cross(e1, e2);
    let len = norm(c);
    if len > 1e-300 {
        let n = [c[0] / len, c[1] / len, c[2] / len];
        Face {
            v,
            n,
            offset: dot(n, pts[v[0]]),
            alive: true,
        }
    } else {
        // Degenerate sliver: inherit the plane it patches so the
        // containment test stays conservative.
        let (n, offset) = fallback.unwrap_or(([0.0, 0.0, 0.0], 0.0));
        Face {
            v,
            n,
            offset,
            alive: true,
        }
    }
}

/// Convex hull of a 3D point cloud. Errors when fewer than three affinely
/// independent points remain after deduplication; rank-2 input yields a
/// planar hull with `coplanar = true`.
pub fn convex_hull(points: &[[f64; 3]]) -> Result<Hull> {
    for p in points {
        if !p.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite("hull input"));
        }
    }
    let mut pts: Vec<[f64; 3]> = points.to_vec();
    pts.sort_by(|a, b| {
        a[0].total_cmp(&b[0])
            .then(a[1].total_cmp(&b[1]))
            .then(a[2].total_cmp(&b[2]))
    });
    pts.dedup_by(|a, b| a == b);
    if pts.len() < 3 {
        return Err(Error::TooFewPoints(pts.len(), 4));
    }
    let scale = pts
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1e-30);
    let eps = 1e-10 * scale;

    // Extreme pair along x (ties broken by the sort) seeds the rank probe.
    let i0 = 0;
    let i1 = (0..pts.len())
        .max_by(|&a, &b| {
            norm(sub(pts[a], pts[i0])).total_cmp(&norm(sub(pts[b], pts[i0])))
        })
        .unwrap();
    if norm(sub(pts[i1], pts[i0])) < eps {
        return Err(Error::TooFewPoints(1, 4));
    }
    let axis = sub(pts[i1], pts[i0]);
    let i2 = (0..pts.len())
        .max_by(|&a, &b| {
            norm(cross(axis, sub(pts[a], pts[i0])))
                .total_cmp(&norm(cross(axis, sub(pts[b], pts[i0]))))
        })
        .unwrap();
    if norm(cross(axis, sub(pts[i2], pts[i0]))) < eps * norm(axis) {
        return Err(Error::TooFewPoints(2, 4));
    }
    let base_n = cross(axis, sub(pts[i2], pts[i0]));
    let base_unit = {
        let l = norm(base_n);
        [base_n[0] / l, base_n[1] / l, base_n[2] / l]
    };
    let i3 = (0..pts.len())
        .max_by(|&a, &b| {
            (dot(base_unit, sub(pts[a], pts[i0])).abs())
                .total_cmp(&dot(base_unit, sub(pts[b], pts[i0])).abs())
        })
        .unwrap();
    let height = dot(base_unit, sub(pts[i3], pts[i0]));
    if height.abs() < eps {
        return planar_hull(&pts, base_unit, eps);
    }

    // Initial tetrahedron, outward-oriented against its centroid.
    let (a, b, c, d) = if height > 0.0 {
        (i0, i2, i1, i3)
    } else {
        (i0, i1, i2, i3)
    };
    let centroid = [
        (pts[a][0] + pts[b][0] + pts[c][0] + pts[d][0]) / 4.0,
        (pts[a][1] + pts[b][1] + pts[c][1] + pts[d][1]) / 4.0,
        (pts[a][2] + pts[b][2] + pts[c][2] + pts[d][2]) / 4.0,
    ];
    let mut faces: Vec<Face> = Vec::new();
    for v in [[a, b, c], [a, c, d], [a, d, b], [b, d, c]] {
        let mut f = make_face(&pts, v, None);
        if dot(f.n, centroid) > f.offset {
            f = make_face(&pts, [v[0], v[2], v[1]], None);
        }
        faces.push(f);
    }

    for p in 0..pts.len() {
        if p == a || p == b || p == c || p == d {
            continue;
        }
        let pt = pts[p];
        let visible: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive && dot(f.n, pt) - f.offset > eps)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Horizon: directed edges of the visible patch whose reverse is
        // not in the patch (consistent orientation makes interior edges
        // appear twice, once per direction).
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        for &fi in &visible {
            let v = faces[fi].v;
            for k in 0..3 {
                edges.push((v[k], v[(k + 1) % 3], fi));
            }
        }
        let horizon: Vec<(usize, usize, usize)> = edges
            .iter()
            .filter(|(s, t, _)| !edges.iter().any(|(s2, t2, _)| s2 == t && t2 == s))
            .copied()
            .collect();
        if horizon.is_empty() {
            continue;
        }
        for &fi in &visible {
            faces[fi].alive = false;
        }
        for (s, t, patched) in horizon {
            let fallback = Some((faces[patched].n, faces[patched].offset));
            faces.push(make_face(&pts, [s, t, p], fallback));
        }
    }

    // Compact the mesh onto the surviving vertex set.
    let mut remap = vec![usize::MAX; pts.len()];
    let mut vertices = Vec::new();
    let mut tri = Vec::new();
    for f in faces.iter().filter(|f| f.alive) {
        let mut m = [0usize; 3];
        for (slot, &vi) in m.iter_mut().zip(f.v.iter()) {
            if remap[vi] == usize::MAX {
                remap[vi] = vertices.len();
                vertices.push(pts[vi]);
            }
            *slot = remap[vi];
        }
        tri.push(m);
    }
    Ok(Hull {
        vertices,
        faces: tri,
        coplanar: false,
    })
}

/// Rank-2 fallback: 2D hull in the common plane, fan-triangulated.
fn planar_hull(pts: &[[f64; 3]], n: [f64; 3], _eps: f64) -> Result<Hull> {
    // In-plane orthonormal basis.
    let seed = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let u = {
        let c = cross(n, seed);
        let l = norm(c);
        [c[0] / l, c[1] / l, c[2] / l]
    };
    let v = cross(n, u);
    let proj: Vec<(f64, f64, usize)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (dot(u, *p), dot(v, *p), i))
        .collect();
    let rim = monotone_chain(&proj);
    if rim.len() < 3 {
        return Err(Error::TooFewPoints(rim.len(), 4));
    }
    let vertices: Vec<[f64; 3]> = rim.iter().map(|&i| pts[i]).collect();
    let faces: Vec<[usize; 3]> = (1..vertices.len() - 1).map(|i| [0, i, i + 1]).collect();
    Ok(Hull {
        vertices,
        faces,
        coplanar: true,
    })
}

/// Andrew's monotone chain on projected coordinates; returns input indices
/// of the rim in counterclockwise order.
fn monotone_chain(pts: &[(f64, f64, usize)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        pts[a]
            .0
            .total_cmp(&pts[b].0)
            .then(pts[a].1.total_cmp(&pts[b].1))
    });
    let cross2 = |o: usize, a: usize, b: usize| {
        (pts[a].0 - pts[o].0) * (pts[b].1 - pts[o].1)
            - (pts[a].1 - pts[o].1) * (pts[b].0 - pts[o].0)
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && cross2(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0.0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && cross2(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0.0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.iter().map(|&i| pts[i].2).collect()
}

/// Containment of a parameter point, with (x, y, z) mapped to the cloud
/// coordinate order.
pub fn hull_contains(hull: &Hull, p: ParamPoint, tol: f64) -> bool {
    contains_point(hull, [p.x, p.y, p.z], tol)
}

/// Signed distance semantics: a point is inside when it lies within `tol`
/// of the inner side of every face plane. Planar hulls additionally
/// require membership in the rim polygon.
pub fn contains_point(hull: &Hull, p: [f64; 3], tol: f64) -> bool {
    if !hull.coplanar {
        return hull.faces.iter().all(|f| {
            let a = hull.vertices[f[0]];
            let b = hull.vertices[f[1]];
            let c = hull.vertices[f[2]];
            let n = cross(sub(b, a), sub(c, a));
            let l = norm(n);
            if l < 1e-300 {
                return true;
            }
            dot([n[0] / l, n[1] / l, n[2] / l], sub(p, a)) <= tol
        });
    }
    // Planar: distance to the plane plus 2D rim test.
    let a = hull.vertices[0];
    let b = hull.vertices[1];
    let c = hull.vertices[2];
    let n = cross(sub(b, a), sub(c, a));
    let l = norm(n);
    if l < 1e-300 {
        return false;
    }
    let nu = [n[0] / l, n[1] / l, n[2] / l];
    if dot(nu, sub(p, a)).abs() > tol {
        return false;
    }
    let m = hull.vertices.len();
    (0..m).all(|i| {
        let s = hull.vertices[i];
        let t = hull.vertices[(i + 1) % m];
        let edge = sub(t, s);
        let inward = cross(nu, edge);
        dot(inward, sub(p, s)) >= -tol * norm(inward).max(1e-300)
    })
}

/// Signed volume of the face mesh (zero for planar hulls).
pub fn hull_volume(hull: &Hull) -> f64 {
    if hull.coplanar {
        return 0.0;
    }
    let mut six_v = 0.0;
    for f in &hull.faces {
        let a = hull.vertices[f[0]];
        let b = hull.vertices[f[1]];
        let c = hull.vertices[f[2]];
        six_v += dot(a, cross(b, c));
    }
    six_v / 6.0
}
