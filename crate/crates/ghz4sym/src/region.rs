//! Sampling of the projected (y, z) triangle, boundary-surface grids,
//! region point clouds for hulling, and pointwise inclusion reports
//! between class regions.
//!
//! The (y, z) triangle has corners at the GHZ column and the two
//! zero-coherence vertices; every class region projects into it. Clouds
//! are mirrored in x before hulling so hulls inherit the x -> -x symmetry.

use serde::{Deserialize, Serialize};

use crate::boundaries::{alphas_from_yz, effective_xmax};
use crate::exec::par_map;
use crate::hull::{convex_hull, Hull};
use crate::slocc::SloccClass;
use crate::Result;

/// Projected corners: GHZ column, two-excitation vertex, odd-sector vertex.
pub const YZ_GHZ: (f64, f64) = (0.467_707_173_346_742_67, 0.0);
pub const YZ_P3: (f64, f64) = (-0.066_815_310_478_106_1, -0.218_217_890_235_992_4);
pub const YZ_P4: (f64, f64) = (-0.066_815_310_478_106_1, 0.163_663_417_676_994_27);

/// Barycentric triangle grid with n-1 subdivisions per edge, n(n+1)/2
/// points, corners counted once. Row-major: the GHZ weight i is the outer
/// index, the P3 weight j the inner one.
pub fn yz_grid(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2, "grid needs at least the corner rows");
    let div = (n - 1) as f64;
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in 0..(n - i) {
            let k = n - 1 - i - j;
            let (l1, l2, l3) = (i as f64 / div, j as f64 / div, k as f64 / div);
            out.push((
                l1 * YZ_GHZ.0 + l2 * YZ_P3.0 + l3 * YZ_P4.0,
                l1 * YZ_GHZ.1 + l2 * YZ_P3.1 + l3 * YZ_P4.1,
            ));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub y: f64,
    pub z: f64,
    pub x_max: f64,
    pub x_effective: f64,
    pub empty: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceGrid {
    pub class: SloccClass,
    pub resolution: usize,
    pub points: Vec<SurfacePoint>,
}

/// Boundary surface of a class over the full grid; grid points where the
/// region is empty carry NaN heights and the empty flag.
pub fn sample_surface(cls: SloccClass, n: usize) -> Result<SurfaceGrid> {
    // Reject unsolved classes once instead of per point.
    effective_xmax(cls, YZ_GHZ.0 / 3.0, 0.0)?;
    let grid = yz_grid(n);
    let points = par_map(&grid, |&(y, z)| {
        let r = effective_xmax(cls, y, z).expect("class validated above");
        SurfacePoint {
            y,
            z,
            x_max: r.x_max,
            x_effective: if r.empty { f64::NAN } else { r.x_effective },
            empty: r.empty,
        }
    });
    Ok(SurfaceGrid {
        class: cls,
        resolution: n,
        points,
    })
}

fn clamped_height(cls: SloccClass, y: f64, z: f64) -> Option<f64> {
    let r = effective_xmax(cls, y, z).ok()?;
    if r.empty {
        None
    } else {
        Some(r.x_effective.max(0.0))
    }
}

/// Point cloud of a class region for hulling: grid samples at +/-
/// x_effective, refined along the lattice directions where either the
/// unclamped boundary crosses the physicality wall x = alpha1 (the clamp
/// kink carries hull vertices) or the region rims out (empty transition;
/// the limiting height is pushed at the bisected rim). The numeric
/// La2o31 class skips refinement: its fixtures are lattice corners and a
/// bisection would re-run the stationary solver thousands of times.
pub fn hull_cloud(cls: SloccClass, n: usize) -> Result<Vec<[f64; 3]>> {
    let grid = sample_surface(cls, n)?;
    let mut cloud: Vec<[f64; 3]> = Vec::with_capacity(2 * grid.points.len());
    for p in &grid.points {
        if !p.empty {
            let xe = p.x_effective.max(0.0);
            cloud.push([xe, p.y, p.z]);
            cloud.push([-xe, p.y, p.z]);
        }
    }
    if cls == SloccClass::La2o31 {
        return Ok(cloud);
    }

    // Lattice index helpers: row i starts at i*n - i(i-1)/2, written
    // without the underflowing i-1 at i = 0.
    let offset = |i: usize| i * (2 * n + 1 - i) / 2;
    let node = |i: usize, j: usize| &grid.points[offset(i) + j];
    let in_grid = |i: usize, j: usize| i + j <= n - 1;

    let mut refined: Vec<[f64; 3]> = Vec::new();
    let mut refine_pair = |a: &SurfacePoint, b: &SurfacePoint| {
        match (a.empty, b.empty) {
            (false, false) => {
                // Wall crossing of the unclamped surface.
                let (ga, gb) = (
                    a.x_max - alphas_from_yz(a.y, a.z).0,
                    b.x_max - alphas_from_yz(b.y, b.z).0,
                );
                if ga * gb < 0.0 {
                    let (mut lo, mut hi, glo) = (0.0f64, 1.0f64, ga);
                    for _ in 0..40 {
                        let mid = 0.5 * (lo + hi);
                        let (y, z) = (a.y + mid * (b.y - a.y), a.z + mid * (b.z - a.z));
                        let g = match effective_xmax(cls, y, z) {
                            Ok(r) if !r.empty => r.x_max - alphas_from_yz(y, z).0,
                            _ => break,
                        };
                        if g.signum() == glo.signum() {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    let t = 0.5 * (lo + hi);
                    let (y, z) = (a.y + t * (b.y - a.y), a.z + t * (b.z - a.z));
                    if let Some(x) = clamped_height(cls, y, z) {
                        refined.push([x, y, z]);
                        refined.push([-x, y, z]);
                    }
                }
            }
            (false, true) | (true, false) => {
                // Region rim: bisect the empty flag, keep the limiting
                // height on the nonempty side of the final bracket.
                let (ne, em) = if a.empty { (b, a) } else { (a, b) };
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                for _ in 0..40 {
                    let mid = 0.5 * (lo + hi);
                    let (y, z) = (ne.y + mid * (em.y - ne.y), ne.z + mid * (em.z - ne.z));
                    match effective_xmax(cls, y, z) {
                        Ok(r) if !r.empty => lo = mid,
                        _ => hi = mid,
                    }
                }
                let (y, z) = (ne.y + lo * (em.y - ne.y), ne.z + lo * (em.z - ne.z));
                if let Some(x) = clamped_height(cls, y, z) {
                    refined.push([x, y, z]);
                    refined.push([-x, y, z]);
                }
            }
            (true, true) => {}
        }
    };
    for i in 0..n {
        for j in 0..(n - i) {
            let a = node(i, j);
            if in_grid(i + 1, j) {
                refine_pair(a, node(i + 1, j));
            }
            if in_grid(i, j + 1) {
                refine_pair(a, node(i, j + 1));
            }
            if j >= 1 && in_grid(i + 1, j - 1) {
                refine_pair(a, node(i + 1, j - 1));
            }
        }
    }
    cloud.extend(refined);
    Ok(cloud)
}

/// Convex hull of the mirrored region cloud at resolution n.
pub fn region_hull(cls: SloccClass, n: usize) -> Result<Hull> {
    convex_hull(&hull_cloud(cls, n)?)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ViolationPoint {
    pub y: f64,
    pub z: f64,
    pub inner_x: f64,
    pub outer_x: f64,
    /// The outer region is empty here while the inner is not; inner_x is
    /// then unmatched by anything and counts as the defect.
    pub outer_empty: bool,
}

/// Pointwise comparison of effective region heights on a shared grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InclusionReport {
    pub inner: SloccClass,
    pub outer: SloccClass,
    pub resolution: usize,
    pub tolerance: f64,
    /// Largest inner - outer height defect over the comparable grid points
    /// (negative when the inclusion holds with slack everywhere).
    pub max_violation: f64,
    pub violating_points: Vec<ViolationPoint>,
    /// Grid points that constrained the check (inner nonempty).
    pub compared: usize,
}

impl InclusionReport {
    pub fn passes(&self) -> bool {
        self.max_violation <= self.tolerance
    }
}

/// Checks inner subset outer by comparing x_effective columns on yz_grid(n).
/// Mirror symmetry makes the x >= 0 comparison sufficient. Empty inner
/// columns impose no constraint; an empty outer column under a nonempty
/// inner one is a violation of the full inner height.
pub fn check_hierarchy(
    inner: SloccClass,
    outer: SloccClass,
    n: usize,
    tol: f64,
) -> Result<InclusionReport> {
    let gi = sample_surface(inner, n)?;
    let go = sample_surface(outer, n)?;
    let mut max_violation = f64::NEG_INFINITY;
    let mut violating = Vec::new();
    let mut compared = 0usize;
    for (pi, po) in gi.points.iter().zip(&go.points) {
        if pi.empty {
            continue;
        }
        compared += 1;
        let (defect, outer_x, outer_empty) = if po.empty {
            (pi.x_effective, f64::NAN, true)
        } else {
            (pi.x_effective - po.x_effective, po.x_effective, false)
        };
        if defect > max_violation {
            max_violation = defect;
        }
        if defect > tol {
            violating.push(ViolationPoint {
                y: pi.y,
                z: pi.z,
                inner_x: pi.x_effective,
                outer_x,
                outer_empty,
            });
        }
    }
    if compared == 0 {
        max_violation = 0.0;
    }
    Ok(InclusionReport {
        inner,
        outer,
        resolution: n,
        tolerance: tol,
        max_violation,
        violating_points: violating,
        compared,
    })
}
