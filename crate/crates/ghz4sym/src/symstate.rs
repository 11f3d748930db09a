//! The GHZ-symmetric state family: parameters, coordinates, twirl, mirror.
//!
//! Basis convention, fixed once for the whole crate: the computational basis
//! state |ijkl> of qubits (1,2,3,4) sits at index `8i + 4j + 2k + l`. The
//! symmetric density matrix is diagonal in this basis except for a single
//! coherence pair, with the diagonal weight determined by the excitation
//! number (popcount) of the index:
//!
//! * popcount 0 or 4 (indices 0, 15): weight `alpha1` each, coherence `beta`
//!   between them;
//! * odd popcount (8 indices): weight `alpha2` each;
//! * popcount 2 (6 indices): weight `alpha3` each.
//!
//! Unit trace therefore reads `2*alpha1 + 8*alpha2 + 6*alpha3 = 1`; the crate
//! stores the halved form `alpha1 + 4*alpha2 + 3*alpha3 = 1/2` as the trace
//! constraint residual.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Indices with odd excitation number.
pub const ODD_INDICES: [usize; 8] = [1, 2, 4, 7, 8, 11, 13, 14];
/// Indices with exactly two excitations.
pub const TWO_EXC_INDICES: [usize; 6] = [3, 5, 6, 9, 10, 12];

/// y = Y_SCALE * (alpha1 - 1/16)
pub const Y_SCALE: f64 = 1.069_044_967_649_697_6; // sqrt(8/7)
/// z = Z_SCALE * (alpha1/7 + alpha2 - 1/14)
pub const Z_SCALE: f64 = 3.055_050_463_303_893_5; // sqrt(28/3)

/// The four real parameters of a GHZ-symmetric four-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetricState {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub beta: f64,
}

/// Euclidean coordinates of a symmetric state inside the tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A four-qubit pure state: 16 complex amplitudes in the fixed basis order.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    pub amplitudes: [Complex64; 16],
}

/// Dense 16x16 complex matrix; row-major, same basis order.
pub type DensityMatrix = [[Complex64; 16]; 16];

/// Builds the parameter record. Trace and physicality are not enforced here;
/// they are reported by `trace_residual` and `physicality_report`.
pub fn make_state(alpha1: f64, alpha2: f64, alpha3: f64, beta: f64) -> Result<SymmetricState> {
    for (v, name) in [
        (alpha1, "alpha1"),
        (alpha2, "alpha2"),
        (alpha3, "alpha3"),
        (beta, "beta"),
    ] {
        if !v.is_finite() {
            return Err(Error::NonFinite(name));
        }
    }
    Ok(SymmetricState {
        alpha1,
        alpha2,
        alpha3,
        beta,
    })
}

impl SymmetricState {
    pub fn new(alpha1: f64, alpha2: f64, alpha3: f64, beta: f64) -> Result<Self> {
        make_state(alpha1, alpha2, alpha3, beta)
    }

    /// |alpha1 + 4 alpha2 + 3 alpha3 - 1/2|
    pub fn trace_residual(&self) -> f64 {
        (self.alpha1 + 4.0 * self.alpha2 + 3.0 * self.alpha3 - 0.5).abs()
    }

    pub fn to_point(&self) -> ParamPoint {
        to_point(self)
    }

    pub fn to_density(&self) -> DensityMatrix {
        to_density(self)
    }

    pub fn is_physical(&self) -> bool {
        physicality_report(self).ok
    }

    pub fn mirror_conjugate(&self) -> SymmetricState {
        mirror_conjugate(self)
    }
}

/// x = beta, y and z are affine in (alpha1, alpha2).
pub fn to_point(s: &SymmetricState) -> ParamPoint {
    ParamPoint {
        x: s.beta,
        y: Y_SCALE * (s.alpha1 - 1.0 / 16.0),
        z: Z_SCALE * (s.alpha1 / 7.0 + s.alpha2 - 1.0 / 14.0),
    }
}

/// Inverse of `to_point`; alpha3 is recovered from the trace constraint, so
/// the result is always trace-valid. Physicality is not enforced: boundary
/// solvers evaluate slightly outside the tetrahedron while bracketing.
pub fn from_point(p: &ParamPoint) -> SymmetricState {
    let alpha1 = 1.0 / 16.0 + p.y / Y_SCALE;
    let alpha2 = p.z / Z_SCALE + 1.0 / 14.0 - alpha1 / 7.0;
    let alpha3 = (0.5 - alpha1 - 4.0 * alpha2) / 3.0;
    SymmetricState {
        alpha1,
        alpha2,
        alpha3,
        beta: p.x,
    }
}

/// Dense matrix assembly: popcount-graded diagonal plus one coherence pair.
pub fn to_density(s: &SymmetricState) -> DensityMatrix {
    let zero = Complex64::new(0.0, 0.0);
    let mut m = [[zero; 16]; 16];
    for idx in 0..16 {
        let w = match (idx as u32).count_ones() {
            0 | 4 => s.alpha1,
            2 => s.alpha3,
            _ => s.alpha2,
        };
        m[idx][idx] = Complex64::new(w, 0.0);
    }
    m[0][15] = Complex64::new(s.beta, 0.0);
    m[15][0] = Complex64::new(s.beta, 0.0);
    m
}

/// Hilbert-Schmidt distance sqrt(1/2 tr[(A-B)^2]), evaluated on the dense
/// matrices. For this family it coincides with the Euclidean distance of the
/// two coordinate points.
pub fn hs_distance(a: &SymmetricState, b: &SymmetricState) -> f64 {
    let ma = to_density(a);
    let mb = to_density(b);
    let mut sum = 0.0;
    for r in 0..16 {
        for c in 0..16 {
            sum += (ma[r][c] - mb[r][c]).norm_sqr();
        }
    }
    (0.5 * sum).sqrt()
}

/// Physicality report: the four interval conditions for the diagonal blocks
/// of the density matrix to be positive semidefinite, tolerance 1e-12
/// inclusive so tetrahedron faces count as physical.
pub struct PhysicalityReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

pub fn physicality_report(s: &SymmetricState) -> PhysicalityReport {
    let tol = 1e-12;
    let mut violations = Vec::new();
    let mut check = |cond: bool, msg: String| {
        if !cond {
            violations.push(msg);
        }
    };
    check(
        s.alpha2 >= -tol && s.alpha2 <= 0.125 + tol,
        format!("alpha2 = {} outside [0, 1/8]", s.alpha2),
    );
    check(
        s.alpha3 >= -tol && s.alpha3 <= 1.0 / 6.0 + tol,
        format!("alpha3 = {} outside [0, 1/6]", s.alpha3),
    );
    check(
        s.alpha1 >= -tol && s.alpha1 <= 0.5 + tol,
        format!("alpha1 = {} outside [0, 1/2]", s.alpha1),
    );
    check(
        s.alpha1 + s.beta >= -tol
            && s.alpha1 + s.beta <= 1.0 + tol
            && s.alpha1 - s.beta >= -tol
            && s.alpha1 - s.beta <= 1.0 + tol,
        format!(
            "alpha1 +- beta = {}, {} outside [0, 1]",
            s.alpha1 + s.beta,
            s.alpha1 - s.beta
        ),
    );
    PhysicalityReport {
        ok: violations.is_empty(),
        violations,
    }
}

pub fn is_physical(s: &SymmetricState) -> bool {
    physicality_report(s).ok
}

/// Projects a normalized pure state onto the symmetric family. Closed form:
/// no integration over the symmetry group is involved, only sector sums of
/// squared amplitudes and the extreme coherence.
pub fn twirl(psi: &PureState) -> Result<SymmetricState> {
    let norm_dev = (psi.norm_sqr() - 1.0).abs();
    if norm_dev > 1e-9 {
        return Err(Error::NotNormalized(norm_dev));
    }
    Ok(twirl_unchecked(psi))
}

/// Twirl without the normalization gate; callers that just normalized can
/// skip the check.
pub fn twirl_unchecked(psi: &PureState) -> SymmetricState {
    let a = &psi.amplitudes;
    let x = (a[0] * a[15].conj()).re;
    let alpha1 = 0.5 * (a[0].norm_sqr() + a[15].norm_sqr());
    let odd: f64 = ODD_INDICES.iter().map(|&i| a[i].norm_sqr()).sum();
    let two: f64 = TWO_EXC_INDICES.iter().map(|&i| a[i].norm_sqr()).sum();
    SymmetricState {
        alpha1,
        alpha2: odd / 8.0,
        alpha3: two / 6.0,
        beta: x,
    }
}

/// The four tetrahedron vertices as (point, state) pairs:
/// both GHZ states, the uniform two-excitation mixture, and the uniform
/// odd-excitation mixture.
pub fn vertices() -> [(ParamPoint, SymmetricState); 4] {
    let p1 = SymmetricState {
        alpha1: 0.5,
        alpha2: 0.0,
        alpha3: 0.0,
        beta: 0.5,
    };
    let p2 = SymmetricState { beta: -0.5, ..p1 };
    let p3 = SymmetricState {
        alpha1: 0.0,
        alpha2: 0.0,
        alpha3: 1.0 / 6.0,
        beta: 0.0,
    };
    let p4 = SymmetricState {
        alpha1: 0.0,
        alpha2: 0.125,
        alpha3: 0.0,
        beta: 0.0,
    };
    [p1, p2, p3, p4].map(|s| (to_point(&s), s))
}

/// Flips the sign of the coherence. Equivalent to conjugation by the local
/// unitary returned by `mirror_unitary`; `mirror_assertion_residual` measures
/// that equivalence on the dense matrices.
pub fn mirror_conjugate(s: &SymmetricState) -> SymmetricState {
    SymmetricState {
        beta: -s.beta,
        ..*s
    }
}

/// i * sigma_x (x) sigma_y (x) sigma_y (x) sigma_y as a dense 16x16 matrix.
/// The phases combine to a real signed bit-flip permutation.
pub fn mirror_unitary() -> DensityMatrix {
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let sx = [[zero, one], [one, zero]];
    let sy = [[zero, -i], [i, zero]];
    let mut u = [[zero; 16]; 16];
    for r in 0..16 {
        for c in 0..16 {
            let (r1, r2, r3, r4) = (r >> 3 & 1, r >> 2 & 1, r >> 1 & 1, r & 1);
            let (c1, c2, c3, c4) = (c >> 3 & 1, c >> 2 & 1, c >> 1 & 1, c & 1);
            u[r][c] = i * sx[r1][c1] * sy[r2][c2] * sy[r3][c3] * sy[r4][c4];
        }
    }
    u
}

/// Max entrywise deviation between u rho(beta) u^dagger and rho(-beta).
pub fn mirror_assertion_residual(s: &SymmetricState) -> f64 {
    let u = mirror_unitary();
    let rho = to_density(s);
    let flipped = to_density(&mirror_conjugate(s));
    // u rho u^dagger
    let zero = Complex64::new(0.0, 0.0);
    let mut tmp = [[zero; 16]; 16];
    for r in 0..16 {
        for c in 0..16 {
            let mut acc = zero;
            for k in 0..16 {
                acc += u[r][k] * rho[k][c];
            }
            tmp[r][c] = acc;
        }
    }
    let mut worst: f64 = 0.0;
    for r in 0..16 {
        for c in 0..16 {
            let mut acc = zero;
            for k in 0..16 {
                acc += tmp[r][k] * u[c][k].conj();
            }
            worst = worst.max((acc - flipped[r][c]).norm());
        }
    }
    worst
}

impl PureState {
    pub fn zero() -> Self {
        PureState {
            amplitudes: [Complex64::new(0.0, 0.0); 16],
        }
    }

    /// Computational basis state at the given index (0..16).
    pub fn basis(idx: usize) -> Self {
        let mut s = Self::zero();
        s.amplitudes[idx] = Complex64::new(1.0, 0.0);
        s
    }

    /// Real equal-weight superposition of the given basis indices, normalized.
    pub fn uniform(indices: &[usize]) -> Self {
        let mut s = Self::zero();
        let w = 1.0 / (indices.len() as f64).sqrt();
        for &i in indices {
            s.amplitudes[i] = Complex64::new(w, 0.0);
        }
        s
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<PureState> {
        let n = self.norm_sqr().sqrt();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::ZeroState);
        }
        let mut out = self.clone();
        for a in out.amplitudes.iter_mut() {
            *a /= n;
        }
        Ok(out)
    }
}

/// JSON form of a pure state: 16 [re, im] pairs in basis order.
impl Serialize for PureState {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|a| [a.re, a.im]).collect();
        pairs.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(de)?;
        if pairs.len() != 16 {
            return Err(serde::de::Error::custom(format!(
                "expected 16 amplitude pairs, got {}",
                pairs.len()
            )));
        }
        let mut s = PureState::zero();
        for (i, p) in pairs.iter().enumerate() {
            s.amplitudes[i] = Complex64::new(p[0], p[1]);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn point_round_trip_on_vertices_and_origin() {
        let mut states: Vec<SymmetricState> = vertices().iter().map(|(_, s)| *s).collect();
        states.push(SymmetricState {
            alpha1: 1.0 / 16.0,
            alpha2: 1.0 / 16.0,
            alpha3: 1.0 / 16.0,
            beta: 0.0,
        });
        for s in states {
            let p = to_point(&s);
            let back = from_point(&p);
            assert_close(back.alpha1, s.alpha1, 1e-12);
            assert_close(back.alpha2, s.alpha2, 1e-12);
            assert_close(back.alpha3, s.alpha3, 1e-12);
            assert_close(back.beta, s.beta, 1e-12);
        }
    }

    #[test]
    fn vertex_coordinates_match_closed_forms() {
        let vs = vertices();
        let s732 = (7.0f64 / 32.0).sqrt();
        assert_close(vs[0].0.x, 0.5, 1e-15);
        assert_close(vs[0].0.y, s732, 1e-15);
        assert_close(vs[0].0.z, 0.0, 1e-15);
        assert_close(vs[1].0.x, -0.5, 1e-15);
        let ylow = -(1.0 / 8.0) * (2.0f64 / 7.0).sqrt();
        assert_close(vs[2].0.y, ylow, 1e-15);
        assert_close(vs[2].0.z, -1.0 / 21.0f64.sqrt(), 1e-15);
        assert_close(vs[3].0.y, ylow, 1e-15);
        assert_close(vs[3].0.z, 21.0f64.sqrt() / 28.0, 1e-15);
    }

    #[test]
    fn origin_is_maximally_mixed() {
        let s = from_point(&ParamPoint {
            x: 0.0,
            y: 0.0,
            z: 0.0,
        });
        assert_close(s.alpha1, 1.0 / 16.0, 1e-15);
        assert_close(s.alpha2, 1.0 / 16.0, 1e-15);
        assert_close(s.alpha3, 1.0 / 16.0, 1e-15);
        let rho = to_density(&s);
        for r in 0..16 {
            assert_close(rho[r][r].re, 1.0 / 16.0, 1e-15);
        }
    }

    #[test]
    fn rectangle_corner_inversion() {
        // (1/4, 3 sqrt(14)/56, -1/(2 sqrt(21))) inverts to alpha = (1/4, 0, 1/12).
        let p = ParamPoint {
            x: 0.25,
            y: 3.0 * 14.0f64.sqrt() / 56.0,
            z: -0.5 / 21.0f64.sqrt(),
        };
        let s = from_point(&p);
        assert_close(s.alpha1, 0.25, 1e-14);
        assert_close(s.alpha2, 0.0, 1e-14);
        assert_close(s.alpha3, 1.0 / 12.0, 1e-14);
    }

    #[test]
    fn hs_distance_matches_euclidean_on_fixed_pairs() {
        let ghzp = vertices()[0].1;
        let ghzm = vertices()[1].1;
        assert_close(hs_distance(&ghzp, &ghzm), 1.0, 1e-12);
        let mixed = SymmetricState {
            alpha1: 1.0 / 16.0,
            alpha2: 1.0 / 16.0,
            alpha3: 1.0 / 16.0,
            beta: 0.0,
        };
        assert_close(
            hs_distance(&ghzp, &mixed),
            (15.0f64 / 32.0).sqrt(),
            1e-12,
        );
        assert_close(hs_distance(&ghzp, &ghzp), 0.0, 1e-15);
    }

    #[test]
    fn twirl_of_ghz_and_basis_states() {
        let ghz = PureState::uniform(&[0, 15]);
        let s = twirl(&ghz).unwrap();
        assert_close(s.alpha1, 0.5, 1e-15);
        assert_close(s.beta, 0.5, 1e-15);
        assert_close(s.alpha2, 0.0, 1e-15);
        assert_close(s.alpha3, 0.0, 1e-15);

        let b0110 = PureState::basis(0b0110);
        let s = twirl(&b0110).unwrap();
        assert_close(s.alpha3, 1.0 / 6.0, 1e-15);
        assert_close(s.alpha1, 0.0, 1e-15);

        let half = PureState::uniform(&[0b0000, 0b0111]);
        let s = twirl(&half).unwrap();
        assert_close(s.alpha1, 0.25, 1e-15);
        assert_close(s.alpha2, 1.0 / 16.0, 1e-15);
        assert_close(s.alpha3, 0.0, 1e-15);
        assert_close(s.beta, 0.0, 1e-15);
    }

    #[test]
    fn twirl_rejects_unnormalized() {
        let mut bad = PureState::basis(0);
        bad.amplitudes[0] = Complex64::new(1.1, 0.0);
        assert!(matches!(twirl(&bad), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn twirl_output_is_trace_valid() {
        // Phases and qubit permutations leave the sector sums alone.
        let psi = PureState {
            amplitudes: std::array::from_fn(|i| {
                Complex64::new(0.1 + 0.05 * i as f64, 0.03 * (i as f64 - 7.0))
            }),
        }
        .normalized()
        .unwrap();
        let s = twirl(&psi).unwrap();
        assert!(s.trace_residual() < 1e-12);
    }

    #[test]
    fn physicality_examples() {
        assert!(is_physical(&vertices()[0].1));
        let over = SymmetricState {
            alpha1: 0.5,
            alpha2: 0.0,
            alpha3: 0.0,
            beta: 0.6,
        };
        assert!(!is_physical(&over));
        let report = physicality_report(&over);
        assert_eq!(report.violations.len(), 1);
        let tiny = SymmetricState {
            alpha1: 0.0,
            alpha2: 0.125,
            alpha3: 0.0,
            beta: 0.01,
        };
        assert!(!is_physical(&tiny));
    }

    #[test]
    fn mirror_flip_and_unitary_agree() {
        let s = SymmetricState {
            alpha1: 0.25,
            alpha2: 0.0,
            alpha3: 1.0 / 12.0,
            beta: 0.25,
        };
        let m = mirror_conjugate(&s);
        assert_close(m.beta, -0.25, 1e-15);
        assert!(mirror_assertion_residual(&s) < 1e-12);
        let fixed = SymmetricState { beta: 0.0, ..s };
        assert_eq!(mirror_conjugate(&fixed).beta, 0.0);
    }

    #[test]
    fn pure_state_json_round_trip() {
        let psi = PureState {
            amplitudes: std::array::from_fn(|i| Complex64::new(i as f64, -(i as f64) / 3.0)),
        };
        let text = serde_json::to_string(&psi).unwrap();
        let back: PureState = serde_json::from_str(&text).unwrap();
        assert_eq!(psi, back);
    }
}
