//! Closed-form boundary surfaces x_max(y, z) for the five solved SLOCC
//! classes, plus the physicality clamp that turns a stationary value into
//! the effective region height inside the tetrahedron.
//!
//! Conventions shared by all five:
//! * inputs are the diagonal parameters (alpha1, alpha2, alpha3) recovered
//!   from (y, z); callers on the grid use `alphas_from_yz`;
//! * `empty` means the stationary problem has no admissible branch at this
//!   (y, z), so the class region has no points there for any x;
//! * regions are mirror symmetric, so only x >= 0 is reported.

use serde::{Deserialize, Serialize};

use crate::quartic::{eval_poly, solve_quartic_real};
use crate::slocc::SloccClass;
use crate::symstate::{Y_SCALE, Z_SCALE};
use crate::{Error, Result};

/// Corner/edge detection tolerance for the special-case branches below.
const EDGE_EPS: f64 = 1e-12;

/// Outcome of a boundary evaluation at one (y, z).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryResult {
    /// Stationary maximum of the coherence x (unclamped).
    pub x_max: f64,
    /// min(x_max, alpha1): the wall |x| <= alpha1 is a hard physicality cut.
    pub x_effective: f64,
    /// Human-readable solver diagnostics: branch taken, roots, residuals.
    pub branch_info: String,
    /// No admissible stationary branch at this (y, z).
    pub empty: bool,
}

impl BoundaryResult {
    fn empty_with(info: String) -> Self {
        BoundaryResult {
            x_max: f64::NAN,
            x_effective: f64::NAN,
            branch_info: info,
            empty: true,
        }
    }

    fn value(x_max: f64, alpha1: f64, info: String) -> Self {
        BoundaryResult {
            x_max,
            x_effective: x_max.min(alpha1),
            branch_info: info,
            empty: false,
        }
    }
}

/// Quartic root data for the separable-class boundary.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Labc2Root {
    /// Amplitude-ratio variable of the quartic.
    pub u: f64,
    /// Companion ratio sum; admissible branches need v >= 0.
    pub v: f64,
    /// Common squared-amplitude scale, x = 2 * absq * u.
    pub absq: f64,
}

/// One converged stationary branch of the nonlinear boundary system for
/// La2o31 (four unknowns f, nu, mu1, mu2).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct La2031Solution {
    pub f: f64,
    pub nu: f64,
    pub mu1: f64,
    pub mu2: f64,
}

impl La2031Solution {
    /// Coherence value this branch attains.
    pub fn x(&self) -> f64 {
        9.0 * self.f * self.nu * self.mu1 * self.mu2 * self.mu2
    }
}

/// Diagonal parameters at a projected point, ignoring x. The third alpha
/// comes from the trace constraint, so the triple is always trace-valid.
pub fn alphas_from_yz(y: f64, z: f64) -> (f64, f64, f64) {
    let alpha1 = 1.0 / 16.0 + y / Y_SCALE;
    let alpha2 = z / Z_SCALE + 1.0 / 14.0 - alpha1 / 7.0;
    let alpha3 = (0.5 - alpha1 - 4.0 * alpha2) / 3.0;
    (alpha1, alpha2, alpha3)
}

/// Coefficients (c4, c3, c2, c1, c0) of the palindromic quartic in the
/// ratio variable u whose admissible roots carry the separable-class
/// boundary: 2*[A(1+u)^2 + B(1+u^2)]^2 = A(1+u^2)(1+u)^2 with A = alpha1,
/// B = 2*alpha2.
pub fn labc2_quartic_coeffs(alpha1: f64, alpha2: f64) -> [f64; 5] {
    let a = alpha1;
    let p = alpha1 + 2.0 * alpha2;
    let q = 2.0 * alpha1;
    let c0 = 2.0 * p * p - a;
    let c1 = 4.0 * p * q - 2.0 * a;
    let c2 = 2.0 * q * q + 4.0 * p * p - 2.0 * a;
    // Palindromic: returned as (c4, c3, c2, c1, c0).
    [c0, c1, c2, c1, c0]
}

/// Separable-class boundary: quartic in u, branch rule = real root with
/// u >= 0 and companion ratio v >= 0, maximizing x = 2 alpha1 u / (1 + u^2).
pub fn xmax_labc2(alpha1: f64, alpha2: f64) -> BoundaryResult {
    if alpha1 <= EDGE_EPS && alpha2 <= EDGE_EPS {
        // The anchor itself twirls to this corner, so the boundary passes
        // through it even though the quartic degenerates to 0 = 0.
        return BoundaryResult::value(
            0.0,
            alpha1.max(0.0),
            "two-excitation corner; anchor state sits here".into(),
        );
    }
    let c = labc2_quartic_coeffs(alpha1, alpha2);
    let roots = match solve_quartic_real(c[0], c[1], c[2], c[3], c[4]) {
        Ok(r) => r,
        Err(_) => {
            return BoundaryResult::empty_with("quartic degenerate: all coefficients zero".into())
        }
    };
    let mut best: Option<Labc2Root> = None;
    for &u in &roots {
        if u < -EDGE_EPS {
            continue;
        }
        let u = u.max(0.0);
        let v = if alpha1 > 0.0 {
            4.0 * alpha2 * (1.0 + u * u) / (2.0 * alpha1 * (1.0 + u))
        } else {
            0.0
        };
        if v < -EDGE_EPS {
            continue;
        }
        let absq = alpha1 / (1.0 + u * u);
        let cand = Labc2Root { u, v, absq };
        if best.map_or(true, |b| 2.0 * cand.absq * cand.u > 2.0 * b.absq * b.u) {
            best = Some(cand);
        }
    }
    match best {
        Some(root) => {
            let x = 2.0 * root.absq * root.u;
            let max = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let norm: Vec<f64> = c.iter().rev().map(|v| v / max).collect();
            let residual = eval_poly(&norm, root.u).abs();
            BoundaryResult::value(
                x,
                alpha1,
                format!(
                    "quartic roots {:?}; picked u = {:.6e}, v = {:.6e}, |p(u)| = {:.2e}",
                    roots, root.u, root.v, residual
                ),
            )
        }
        None => BoundaryResult::empty_with(format!(
            "no admissible quartic root (real roots: {roots:?})"
        )),
    }
}

/// Chosen quartic branch as structured data, when one exists.
pub fn labc2_root(alpha1: f64, alpha2: f64) -> Option<Labc2Root> {
    let r = xmax_labc2(alpha1, alpha2);
    if r.empty {
        return None;
    }
    // Recover u from x = 2 alpha1 u / (1 + u^2); the stored branch info is
    // authoritative for diagnostics, this is the numeric inverse on the
    // reported maximum.
    let c = labc2_quartic_coeffs(alpha1, alpha2);
    let roots = solve_quartic_real(c[0], c[1], c[2], c[3], c[4]).ok()?;
    roots
        .into_iter()
        .filter(|&u| u >= -EDGE_EPS)
        .map(|u| {
            let u = u.max(0.0);
            Labc2Root {
                u,
                v: if alpha1 > 0.0 {
                    4.0 * alpha2 * (1.0 + u * u) / (2.0 * alpha1 * (1.0 + u))
                } else {
                    0.0
                },
                absq: alpha1 / (1.0 + u * u),
            }
        })
        .max_by(|a, b| (a.absq * a.u).total_cmp(&(b.absq * b.u)))
}

/// The partially separable class has the linear boundary x_max = 3 alpha3;
/// clamping against alpha1 is left to `effective_xmax`.
pub fn xmax_la2b2(alpha3: f64) -> BoundaryResult {
    BoundaryResult {
        x_max: 3.0 * alpha3,
        x_effective: 3.0 * alpha3,
        branch_info: "linear: x_max = 3 alpha3".into(),
        empty: false,
    }
}

/// Secular quartic coefficients (in nu^2) of the La2o31 stationary system.
pub fn secular_coeffs(mu1: f64, mu2: f64) -> (f64, f64, f64) {
    let a = (mu1 + 2.0 * mu2) * (3.0 - 2.0 * mu1 * mu2.powi(3) - mu2.powi(4));
    let b = -(mu1 * mu1 + mu1 * mu2 + mu2 * mu2)
        * (mu1 + 5.0 * mu2 - 5.0 * mu1 * mu2.powi(4) - mu2.powi(5));
    let c = mu1
        * mu2
        * mu2
        * (2.0 * mu1 + mu2)
        * (mu1 + 2.0 * mu2 - 3.0 * mu1 * mu2.powi(4));
    (a, b, c)
}

/// The four stationarity residuals of the La2o31 system at a candidate
/// solution; the fourth entry is the secular quartic in nu.
pub fn residuals_la2031(sol: &La2031Solution, alpha1: f64, alpha2: f64) -> [f64; 4] {
    let (f, nu, mu1, mu2) = (sol.f, sol.nu, sol.mu1, sol.mu2);
    let m12 = mu1 * mu1;
    let m24 = mu2.powi(4);
    let s1 = (mu1 + 2.0 * mu2).powi(2);
    let s2 = mu2 * mu2 * (2.0 * mu1 + mu2).powi(2);
    let k0 = 3.0 + 3.0 * m12 * m24 + s1 + s2;
    let k2 = 3.0 * m12 * m24 + 3.0 * nu * nu + s1 + nu * nu * s2;
    let (a, b, c) = secular_coeffs(mu1, mu2);
    [
        3.0 * f * (1.0 + nu * nu) * k0 - 1.0,
        9.0 * f * (1.0 + nu * nu * m12 * m24) - 2.0 * alpha1,
        3.0 * f * k2 - 8.0 * alpha2,
        a * nu.powi(4) + b * nu * nu + c,
    ]
}

fn solve4(mut m: [[f64; 4]; 4], mut rhs: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..4 {
            let fac = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= fac * m[col][k];
            }
            rhs[row] -= fac * rhs[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let mut acc = rhs[row];
        for k in row + 1..4 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

fn la2031_newton(
    start: La2031Solution,
    alpha1: f64,
    alpha2: f64,
) -> Option<(La2031Solution, f64)> {
    let mut v = [start.f, start.nu, start.mu1, start.mu2];
    let res_at = |v: &[f64; 4]| {
        residuals_la2031(
            &La2031Solution {
                f: v[0],
                nu: v[1],
                mu1: v[2],
                mu2: v[3],
            },
            alpha1,
            alpha2,
        )
    };
    let norm = |r: &[f64; 4]| r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut r = res_at(&v);
    let mut rn = norm(&r);
    for _ in 0..80 {
        if rn < 1e-12 {
            break;
        }
        // Central-difference Jacobian.
        let mut jac = [[0.0; 4]; 4];
        for col in 0..4 {
            let h = 1e-7 * (1.0 + v[col].abs());
            let mut vp = v;
            vp[col] += h;
            let mut vm = v;
            vm[col] -= h;
            let (rp, rm) = (res_at(&vp), res_at(&vm));
            for row in 0..4 {
                jac[row][col] = (rp[row] - rm[row]) / (2.0 * h);
            }
        }
        let neg_r = [-r[0], -r[1], -r[2], -r[3]];
        let delta = solve4(jac, neg_r)?;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let cand = [
                v[0] + lambda * delta[0],
                v[1] + lambda * delta[1],
                v[2] + lambda * delta[2],
                v[3] + lambda * delta[3],
            ];
            if cand[0] > 0.0 && cand[1] >= 0.0 {
                let rc = res_at(&cand);
                let rcn = norm(&rc);
                if rcn < rn {
                    v = cand;
                    r = rc;
                    rn = rcn;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let sol = La2031Solution {
        f: v[0],
        nu: v[1],
        mu1: v[2],
        mu2: v[3],
    };
    Some((sol, rn))
}

/// All converged stationary branches found by the multi-start solver,
/// deduplicated by attained x.
pub fn solve_la2031_branches(alpha1: f64, alpha2: f64) -> Vec<(La2031Solution, f64)> {
    let mut found: Vec<(La2031Solution, f64)> = Vec::new();
    // Seed magnitudes log-spaced; sign sectors (+,+) and (+,-) cover all
    // solutions because the simultaneous flip of both mu's only mirrors x.
    let mags: Vec<f64> = (0..20)
        .map(|i| 0.05 * (6.0f64 / 0.05).powf(i as f64 / 19.0))
        .collect();
    for &m1 in &mags {
        for &m2 in &mags {
            for (s1, s2) in [(1.0, 1.0), (1.0, -1.0)] {
                let (mu1, mu2) = (s1 * m1, s2 * m2);
                let (a, b, c) = secular_coeffs(mu1, mu2);
                // Closed-form nu^2 candidates from the secular quadratic.
                let mut nus: Vec<f64> = Vec::new();
                if a.abs() > 1e-14 {
                    let disc = b * b - 4.0 * a * c;
                    if disc >= 0.0 {
                        let s = disc.sqrt();
                        for nu2 in [(-b + s) / (2.0 * a), (-b - s) / (2.0 * a)] {
                            if nu2 > 0.0 && nu2.is_finite() {
                                nus.push(nu2.sqrt());
                            }
                        }
                    }
                } else if b.abs() > 1e-14 {
                    let nu2 = -c / b;
                    if nu2 > 0.0 && nu2.is_finite() {
                        nus.push(nu2.sqrt());
                    }
                }
                for nu in nus {
                    let denom = 1.0 + nu * nu * mu1 * mu1 * mu2.powi(4);
                    if denom.abs() < 1e-14 {
                        continue;
                    }
                    let f = 2.0 * alpha1 / (9.0 * denom);
                    if f <= 0.0 || !f.is_finite() {
                        continue;
                    }
                    let seed = La2031Solution { f, nu, mu1, mu2 };
                    if let Some((sol, rn)) = la2031_newton(seed, alpha1, alpha2) {
                        if rn < 1e-8 {
                            let x = sol.x();
                            let dup = found
                                .iter()
                                .any(|(s, _)| (s.x() - x).abs() < 1e-10);
                            if !dup {
                                found.push((sol, rn));
                            }
                        }
                    }
                }
            }
        }
    }
    found
}

/// Boundary for La2o31: numeric stationary system in (f, nu, mu1, mu2).
/// The maximum of |x| over converged branches is reported; special cases
/// cover the degenerate edges where the system loses rank.
pub fn xmax_la2031(alpha1: f64, alpha2: f64) -> BoundaryResult {
    if alpha1 <= EDGE_EPS {
        return BoundaryResult::value(
            0.0,
            alpha1.max(0.0),
            "alpha1 = 0 edge: coherence forced to zero".into(),
        );
    }
    if alpha2 <= EDGE_EPS {
        if alpha1 >= 0.5 - 1e-9 {
            return BoundaryResult::value(0.0, alpha1, "GHZ corner: boundary vanishes".into());
        }
        return BoundaryResult::empty_with(
            "alpha2 = 0 edge unreachable from the three-term anchor".into(),
        );
    }
    if (alpha1 - 1.0 / 16.0).abs() <= EDGE_EPS && (alpha2 - 1.0 / 16.0).abs() <= EDGE_EPS {
        // Degenerate one-parameter family mu1 = mu2 = 1; x = nu/(8(1+nu^2))
        // peaks at nu = 1.
        return BoundaryResult::value(
            1.0 / 16.0,
            alpha1,
            "degenerate family mu1 = mu2 = 1, maximum at nu = 1".into(),
        );
    }
    let branches = solve_la2031_branches(alpha1, alpha2);
    if branches.is_empty() {
        return BoundaryResult::empty_with("no converged stationary branch".into());
    }
    let (best, rn) = branches
        .iter()
        .max_by(|a, b| a.0.x().abs().total_cmp(&b.0.x().abs()))
        .copied()
        .unwrap();
    BoundaryResult::value(
        best.x().abs(),
        alpha1,
        format!(
            "{} branch(es); best (f, nu, mu1, mu2) = ({:.9e}, {:.9e}, {:.9e}, {:.9e}), residual {:.2e}",
            branches.len(),
            best.f,
            best.nu,
            best.mu1,
            best.mu2,
            rn
        ),
    )
}

/// Closed-form boundary of the doubled three-one class; empty where the
/// radicand goes negative.
pub fn xmax_l031031(alpha1: f64, alpha2: f64, alpha3: f64) -> BoundaryResult {
    if 16.0 * alpha2 > 1.0 + 1e-12 {
        return BoundaryResult::empty_with(format!(
            "16 alpha2 = {} > 1: square root leaves the reals",
            16.0 * alpha2
        ));
    }
    let s = (1.0 - 16.0 * alpha2).max(0.0).sqrt();
    let radicand = (2.0 * alpha1 * (1.0 - 8.0 * alpha2)
        - (1.0 - 16.0 * alpha2 + 32.0 * alpha2 * alpha2)
        + 6.0 * alpha3 * s)
        / 2.0;
    if radicand < -1e-12 {
        return BoundaryResult::empty_with(format!("radicand = {radicand:.6e} < 0"));
    }
    let x = if radicand.abs() <= 1e-12 {
        0.0
    } else {
        radicand.sqrt()
    };
    BoundaryResult::value(x, alpha1, format!("radicand = {radicand:.9e}"))
}

/// Closed-form boundary of the quadruple-degenerate class. The value also
/// solves the quadratic x^2 + (alpha1 - 3 alpha3) x + (4 alpha2^2 -
/// 3 alpha1 alpha3) = 0; `la4_quadratic_residual` reports that identity.
pub fn xmax_la4(alpha1: f64, alpha2: f64, alpha3: f64) -> BoundaryResult {
    let rad = (alpha1 + 3.0 * alpha3 - 4.0 * alpha2) / 2.0;
    if rad < -1e-12 {
        return BoundaryResult::empty_with(format!(
            "square-root argument {rad:.6e} < 0"
        ));
    }
    let x = 0.5 * ((3.0 * alpha3 - alpha1) + rad.max(0.0).sqrt());
    if x < 0.0 {
        let mut r = BoundaryResult::empty_with(format!(
            "stationary value {x:.9e} < 0: region empty for x >= 0"
        ));
        r.x_max = x;
        return r;
    }
    BoundaryResult::value(x, alpha1, format!("radicand = {rad:.9e}"))
}

/// Residual of the defining quadratic at the reported la4 root.
pub fn la4_quadratic_residual(x: f64, alpha1: f64, alpha2: f64, alpha3: f64) -> f64 {
    x * x + (alpha1 - 3.0 * alpha3) * x + (4.0 * alpha2 * alpha2 - 3.0 * alpha1 * alpha3)
}

/// Effective region height at (y, z): the full tetrahedron for the generic
/// class, the clamped stationary value for the five solved ones, an error
/// for the three unsolved ones.
pub fn effective_xmax(cls: SloccClass, y: f64, z: f64) -> Result<BoundaryResult> {
    let (a1, a2, a3) = alphas_from_yz(y, z);
    let res = match cls {
        SloccClass::Gabcd => BoundaryResult {
            x_max: a1,
            x_effective: a1,
            branch_info: "physicality wall |x| <= alpha1".into(),
            empty: false,
        },
        SloccClass::Labc2 => xmax_labc2(a1, a2),
        SloccClass::La2b2 => xmax_la2b2(a3),
        SloccClass::La2o31 => xmax_la2031(a1, a2),
        SloccClass::L031031 => xmax_l031031(a1, a2, a3),
        SloccClass::La4 => xmax_la4(a1, a2, a3),
        other => return Err(Error::Unsolved(other.tag())),
    };
    if res.empty {
        return Ok(res);
    }
    Ok(BoundaryResult {
        x_effective: res.x_max.min(a1),
        ..res
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GHZ_Y: f64 = 0.467_707_173_346_742_67; // sqrt(7/32)

    #[test]
    fn alphas_at_named_points() {
        let (a1, a2, a3) = alphas_from_yz(GHZ_Y, 0.0);
        assert!((a1 - 0.5).abs() < 1e-14 && a2.abs() < 1e-14 && a3.abs() < 1e-14);
        let (a1, a2, a3) = alphas_from_yz(0.0, 0.0);
        assert!((a1 - 1.0 / 16.0).abs() < 1e-15);
        assert!((a2 - 1.0 / 16.0).abs() < 1e-15);
        assert!((a3 - 1.0 / 16.0).abs() < 1e-15);
        // Wall-contact point of the doubled three-one class.
        let (a1, a2, a3) = alphas_from_yz(3.0 / (4.0 * 14.0f64.sqrt()), 21.0f64.sqrt() / 56.0);
        assert!((a1 - 0.25).abs() < 1e-14);
        assert!((a2 - 1.0 / 16.0).abs() < 1e-14);
        assert!(a3.abs() < 1e-14);
    }

    #[test]
    fn labc2_rectangle_corner_and_ghz() {
        // alpha = (1/4, 0): the quartic factors with a double root at u = 1
        // and the boundary reaches 1/4.
        let r = xmax_labc2(0.25, 0.0);
        assert!(!r.empty);
        assert!((r.x_max - 0.25).abs() < 1e-10, "{}", r.branch_info);

        let r = xmax_labc2(0.5, 0.0);
        assert!(!r.empty);
        assert!(r.x_max.abs() < 1e-10);
    }

    #[test]
    fn labc2_center_quartic_is_quadruple_root() {
        // At the tetrahedron center the quartic is proportional to (u-1)^4
        // and x = alpha1.
        let r = xmax_labc2(1.0 / 16.0, 1.0 / 16.0);
        assert!(!r.empty);
        assert!((r.x_max - 1.0 / 16.0).abs() < 1e-7, "{}", r.branch_info);
    }

    #[test]
    fn labc2_empty_when_alpha1_zero_but_alpha2_positive() {
        let r = xmax_labc2(0.0, 0.05);
        assert!(r.empty, "{}", r.branch_info);
        let corner = xmax_labc2(0.0, 0.0);
        assert!(!corner.empty);
        assert_eq!(corner.x_max, 0.0);
    }

    #[test]
    fn la2b2_linear_form_and_trace_identity() {
        let r = xmax_la2b2(1.0 / 24.0);
        assert!((r.x_max - 0.125).abs() < 1e-15);
        // 3 alpha3 = (1 - 2 alpha1 - 8 alpha2)/2 under the trace constraint.
        let (a1, a2, a3) = alphas_from_yz(0.1, -0.05);
        assert!((3.0 * a3 - (1.0 - 2.0 * a1 - 8.0 * a2) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn l031031_fixed_values() {
        let r = xmax_l031031(0.25, 1.0 / 16.0, 0.0);
        assert!(!r.empty);
        assert!((r.x_max - 0.25).abs() < 1e-10);
        let r = xmax_l031031(0.5, 0.0, 0.0);
        assert!(!r.empty);
        assert!(r.x_max.abs() < 1e-10);
        // Tetrahedron center: radicand -1/32, region empty.
        let r = xmax_l031031(1.0 / 16.0, 1.0 / 16.0, 1.0 / 16.0);
        assert!(r.empty, "{}", r.branch_info);
    }

    #[test]
    fn la4_fixed_values_and_quadratic_identity() {
        let r = xmax_la4(0.5, 0.0, 0.0);
        assert!(!r.empty);
        assert!(r.x_max.abs() < 1e-12);
        let r = xmax_la4(1.0 / 16.0, 1.0 / 16.0, 1.0 / 16.0);
        assert!(!r.empty);
        assert!((r.x_max - 1.0 / 16.0).abs() < 1e-12);
        assert!(la4_quadratic_residual(r.x_max, 1.0 / 16.0, 1.0 / 16.0, 1.0 / 16.0).abs() < 1e-12);
        // Wall-contact point of the doubled class: quadratic has the double
        // root -1/8, so the region is empty there.
        let r = xmax_la4(0.25, 1.0 / 16.0, 0.0);
        assert!(r.empty);
        assert!((r.x_max + 0.125).abs() < 1e-12);
    }

    #[test]
    fn la2031_frozen_stationary_values() {
        // Values frozen from an independent wide-seed prototype of the same
        // stationary system.
        let (a1, a2, _) = alphas_from_yz(0.1, 0.02);
        let r = xmax_la2031(a1, a2);
        assert!(!r.empty, "{}", r.branch_info);
        assert!((r.x_max - 0.149703496).abs() < 1e-7, "{}", r.branch_info);

        let (a1, a2, _) = alphas_from_yz(0.05, -0.05);
        let r = xmax_la2031(a1, a2);
        assert!(!r.empty);
        assert!((r.x_max - 0.053242882).abs() < 1e-7, "{}", r.branch_info);

        let (a1, a2, _) = alphas_from_yz(0.15, 0.0);
        let r = xmax_la2031(a1, a2);
        assert!(!r.empty);
        assert!((r.x_max - 0.129841978).abs() < 1e-7, "{}", r.branch_info);

        let r = xmax_la2031(1.0 / 16.0, 1.0 / 16.0);
        assert!((r.x_max - 1.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn residuals_la2031_vanish_on_branches() {
        let (a1, a2, _) = alphas_from_yz(0.1, 0.02);
        let branches = solve_la2031_branches(a1, a2);
        assert!(!branches.is_empty());
        for (sol, _) in &branches {
            let r = residuals_la2031(sol, a1, a2);
            assert!(r.iter().all(|v| v.abs() < 1e-8), "{r:?}");
        }
    }

    #[test]
    fn effective_clamps_to_wall() {
        // At the la2b2 anchor corner alpha1 = 0, so the effective height
        // clamps to zero.
        let p3_y = -(1.0 / 8.0) * (2.0f64 / 7.0).sqrt();
        let p3_z = -1.0 / 21.0f64.sqrt();
        let r = effective_xmax(SloccClass::La2b2, p3_y, p3_z).unwrap();
        assert!(!r.empty);
        assert!((r.x_max - 0.5).abs() < 1e-12);
        assert!(r.x_effective.abs() < 1e-12);

        let g = effective_xmax(SloccClass::Gabcd, GHZ_Y, 0.0).unwrap();
        assert!((g.x_effective - 0.5).abs() < 1e-14);

        assert!(effective_xmax(SloccClass::Lab3, 0.0, 0.0).is_err());
    }

    #[test]
    fn hierarchy_holds_on_sample_points() {
        for (y, z) in [(0.1, 0.02), (0.05, -0.05), (0.2, 0.0), (0.0, 0.1)] {
            let (a1, a2, a3) = alphas_from_yz(y, z);
            let inner = xmax_labc2(a1, a2);
            let mid = xmax_la4(a1, a2, a3);
            let outer = xmax_la2b2(a3);
            if !inner.empty {
                assert!(!mid.empty);
                assert!(inner.x_max.min(a1) <= mid.x_max.min(a1) + 1e-9);
            }
            if !mid.empty {
                assert!(mid.x_max.min(a1) <= outer.x_max.min(a1) + 2e-9);
            }
        }
    }
}
