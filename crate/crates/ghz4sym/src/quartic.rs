//! Real-root extraction for polynomials up to degree four.
//!
//! The boundary surfaces need every real root of a quartic, with
//! multiplicity, in a regime where double and quadruple roots actually occur
//! (boundary touchings). Closed-form Ferrari resolvents are fragile exactly
//! there, so roots are isolated between the critical points of the
//! polynomial (a cubic solve) and refined by bisection plus Newton steps;
//! critical points where the polynomial itself vanishes are the multiple
//! roots.

use crate::{Error, Result};

/// Horner evaluation of c[0] + c[1] x + ... + c[n] x^n.
pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

fn newton_step(coeffs: &[f64], deriv: &[f64], x: f64) -> f64 {
    let d = eval_poly(deriv, x);
    if d == 0.0 {
        return x;
    }
    let step = eval_poly(coeffs, x) / d;
    if step.is_finite() {
        x - step
    } else {
        x
    }
}

/// All real roots of a quadratic a x^2 + b x + c, ascending, with
/// multiplicity; stable form avoiding cancellation in the small root.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        if b == 0.0 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    let scale = (b * b).max((4.0 * a * c).abs());
    if disc < -1e-14 * scale {
        return Vec::new();
    }
    if disc <= 1e-14 * scale {
        return vec![-b / (2.0 * a); 2];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = (q / a, c / q);
    let mut out = vec![r1, r2];
    out.sort_by(f64::total_cmp);
    out
}

/// All real roots of a cubic a x^3 + b x^2 + c x + d, ascending.
/// Trigonometric branch for three real roots, Cardano with the product
/// identity for one; every root gets a Newton polish on the input cubic.
fn cubic_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    if a == 0.0 {
        return quadratic_roots(b, c, d);
    }
    let (b, c, d) = (b / a, c / a, d / a);
    // Depress: x = t - b/3.
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let coeffs = [d, c, b, 1.0];
    let deriv = derivative(&coeffs);
    let polish = |t: f64| {
        let mut x = t - shift;
        for _ in 0..2 {
            x = newton_step(&coeffs, &deriv, x);
        }
        x
    };
    let scale = p.abs().powi(3).max(q * q).max(1e-300);
    let disc = q * q / 4.0 + p * p * p / 27.0;
    let mut roots: Vec<f64> = if disc.abs() <= 1e-14 * scale {
        if q.abs() <= 1e-300 && p.abs() <= 1e-300 {
            vec![polish(0.0); 3]
        } else {
            // Double root plus a simple one; depressed roots sum to zero.
            let double = -1.5 * q / p;
            let single = -2.0 * double;
            vec![polish(double), polish(double), polish(single)]
        }
    } else if disc > 0.0 {
        let s = disc.sqrt();
        let u = (-q / 2.0 + s).cbrt();
        let v = if u != 0.0 { -p / (3.0 * u) } else { (-q / 2.0 - s).cbrt() };
        vec![polish(u + v)]
    } else {
        // Three distinct real roots.
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| polish(m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos()))
            .collect()
    };
    roots.sort_by(f64::total_cmp);
    roots
}

/// All real roots (with multiplicity, ascending) of
/// c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0.
///
/// Guarantees |p(root)| < 1e-10 after Newton polishing when coefficients are
/// normalized to unit max magnitude; callers get roots of the original
/// polynomial (roots are scale-invariant).
pub fn solve_quartic_real(c4: f64, c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Vec<f64>> {
    let raw = [c0, c1, c2, c3, c4];
    let max = raw.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max == 0.0 {
        return Err(Error::DegeneratePoly);
    }
    let coeffs: Vec<f64> = raw.iter().map(|c| c / max).collect();
    // Degree reduction when leading coefficients vanish.
    if coeffs[4] == 0.0 {
        if coeffs[3] != 0.0 {
            return Ok(cubic_roots(coeffs[3], coeffs[2], coeffs[1], coeffs[0]));
        }
        if coeffs[2] != 0.0 {
            return Ok(quadratic_roots(coeffs[2], coeffs[1], coeffs[0]));
        }
        if coeffs[1] != 0.0 {
            return Ok(vec![-coeffs[0] / coeffs[1]]);
        }
        // Nonzero constant: no roots.
        return Ok(Vec::new());
    }

    let deriv = derivative(&coeffs);
    let d2 = derivative(&deriv);
    let d3 = derivative(&d2);
    let crits = cubic_roots(deriv[3], deriv[2], deriv[1], deriv[0]);

    // Cauchy bound on root magnitudes for the monic form.
    let lead = coeffs[4];
    let bound = 1.0 + coeffs[..4].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);

    let mut nodes = vec![-bound];
    for &c in &crits {
        if c > -bound && c < bound && nodes.last().map_or(true, |&l| c > l + 1e-15) {
            nodes.push(c);
        }
    }
    nodes.push(bound);

    let mut candidates: Vec<f64> = Vec::new();
    // Multiple roots sit at critical points where p itself vanishes.
    for &c in &crits {
        let local = (1.0 + c.abs()).powi(4);
        if eval_poly(&coeffs, c).abs() <= 1e-11 * local {
            candidates.push(c);
        }
    }
    // Horner noise floor: near an even-multiplicity root the true value is
    // ~0 and the evaluated sign is rounding noise, so windows touching such
    // an endpoint must not be bisected (the critical-point scan above
    // already owns that root).
    let noise = |x: f64| 1e-12 * (1.0 + x.abs()).powi(4);
    // Simple roots change sign between consecutive nodes.
    for w in nodes.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval_poly(&coeffs, lo), eval_poly(&coeffs, hi));
        if flo.abs() <= noise(lo) || fhi.abs() <= noise(hi) {
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let fm = eval_poly(&coeffs, mid);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut r = 0.5 * (lo + hi);
        for _ in 0..3 {
            r = newton_step(&coeffs, &deriv, r);
        }
        candidates.push(r);
    }

    candidates.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    let mut idx = 0;
    while idx < candidates.len() && out.len() < 4 {
        // Merge candidates found twice (a critical point and a bracket):
        // transitive neighbor-gap clustering, keeping the candidate with the
        // smallest polynomial value as the cluster representative.
        let mut r = candidates[idx];
        let mut best = eval_poly(&coeffs, r).abs();
        while idx + 1 < candidates.len()
            && candidates[idx + 1] - candidates[idx] <= 1e-8 * (1.0 + candidates[idx].abs())
        {
            idx += 1;
            let v = eval_poly(&coeffs, candidates[idx]).abs();
            if v < best {
                best = v;
                r = candidates[idx];
            }
        }
        idx += 1;
        let local = 1.0 + r.abs();
        let mult = if eval_poly(&deriv, r).abs() > 1e-7 * local.powi(3) {
            1
        } else if eval_poly(&d2, r).abs() > 1e-7 * local.powi(2) {
            2
        } else if eval_poly(&d3, r).abs() > 1e-7 * local {
            3
        } else {
            4
        };
        for _ in 0..mult.min(4 - out.len()) {
            out.push(r);
        }
    }
    Ok(out)
}
