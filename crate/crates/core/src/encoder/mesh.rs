//! Rectangular (Clements) beamsplitter-mesh synthesis.
//!
//! Every element acts on adjacent modes `(mode, mode + 1)` as
//! ```text
//! T(theta, phi) = [ e^{i phi} cos(theta)   -sin(theta) ]
//!                 [ e^{i phi} sin(theta)    cos(theta) ]
//! ```
//! and the unitary is `diag(e^{i phases}) * T_last * ... * T_first`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::ComplexMatrix;

const EPS: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshElement {
    /// Upper mode of the adjacent pair.
    pub mode: usize,
    pub theta: f64,
    pub phi: f64,
}

impl MeshElement {
    fn block(&self) -> [Complex64; 4] {
        let e = Complex64::from_polar(1.0, self.phi);
        let (s, c) = self.theta.sin_cos();
        [e * c, Complex64::new(-s, 0.0), e * s, Complex64::new(c, 0.0)]
    }

    /// `M <- T M`
    fn apply_left(&self, m: &mut ComplexMatrix) {
        let t = self.block();
        let (p, q) = (self.mode, self.mode + 1);
        for col in 0..m.cols() {
            let a = m[(p, col)];
            let b = m[(q, col)];
            m[(p, col)] = t[0] * a + t[1] * b;
            m[(q, col)] = t[2] * a + t[3] * b;
        }
    }

    /// `M <- M T^H`
    fn apply_right_adjoint(&self, m: &mut ComplexMatrix) {
        let t = self.block();
        let (p, q) = (self.mode, self.mode + 1);
        for row in 0..m.rows() {
            let a = m[(row, p)];
            let b = m[(row, q)];
            m[(row, p)] = a * t[0].conj() + b * t[1].conj();
            m[(row, q)] = a * t[2].conj() + b * t[3].conj();
        }
    }
}

/// Elements in the order light meets them, then output phases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshDecomposition {
    pub modes: usize,
    pub elements: Vec<MeshElement>,
    pub phases: Vec<f64>,
}

impl MeshDecomposition {
    pub fn recompose(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(self.modes);
        for e in &self.elements {
            e.apply_left(&mut m);
        }
        for (i, &ph) in self.phases.iter().enumerate() {
            let d = Complex64::from_polar(1.0, ph);
            for col in 0..self.modes {
                m[(i, col)] *= d;
            }
        }
        m
    }
}

fn arg_or_zero(z: Complex64) -> f64 {
    if z.norm() > 0.0 {
        z.arg()
    } else {
        0.0
    }
}

/// `T(theta, phi)` with `(U T^H)[row, p] = 0` for columns `p, p + 1`.
fn null_by_column(u: &ComplexMatrix, row: usize, p: usize) -> MeshElement {
    let x = u[(row, p)];
    let y = u[(row, p + 1)];
    MeshElement {
        mode: p,
        theta: x.norm().atan2(y.norm()),
        phi: arg_or_zero(x) - arg_or_zero(y),
    }
}

/// `T(theta, phi)` with `(T U)[p + 1, col] = 0` for rows `p, p + 1`.
fn null_by_row(u: &ComplexMatrix, p: usize, col: usize) -> MeshElement {
    let x = u[(p, col)];
    let y = u[(p + 1, col)];
    MeshElement {
        mode: p,
        theta: y.norm().atan2(x.norm()),
        phi: arg_or_zero(y) - arg_or_zero(x) + std::f64::consts::PI,
    }
}

/// Rewrites `T(theta, phi)^H diag(da, db)` as `diag(da', db') T(theta', phi')`.
fn commute_through_phases(el: &MeshElement, da: Complex64, db: Complex64) -> (Complex64, Complex64, MeshElement) {
    let t = el.block();
    // B = T^H * diag(da, db)
    let b00 = t[0].conj() * da;
    let b01 = t[2].conj() * db;
    let b10 = t[1].conj() * da;
    let b11 = t[3].conj() * db;
    let c = b11.norm();
    let s = b01.norm();
    let theta = s.atan2(c);
    let unit = |z: Complex64| if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) };
    let (na, nb, e) = if s > EPS && c > EPS {
        let na = unit(-b01);
        let nb = unit(b11);
        (na, nb, unit(b00 / na))
    } else if s <= EPS {
        (unit(b00), unit(b11), Complex64::new(1.0, 0.0))
    } else {
        (unit(-b01), unit(b10), Complex64::new(1.0, 0.0))
    };
    (
        na,
        nb,
        MeshElement {
            mode: el.mode,
            theta,
            phi: e.arg(),
        },
    )
}

/// Decomposes an `m x m` unitary into `m(m-1)/2` adjacent-mode elements
/// arranged in the rectangular pattern, plus output phases.
pub fn decompose_mesh(u: &ComplexMatrix) -> Result<MeshDecomposition> {
    let m = u.order()?;
    let err = u.unitarity_error();
    if err > 1e-8 {
        return Err(Error::NotUnitary(err));
    }
    let mut work = u.clone();
    let mut right: Vec<MeshElement> = Vec::new();
    let mut left: Vec<MeshElement> = Vec::new();
    for i in 0..m.saturating_sub(1) {
        if i % 2 == 0 {
            for j in 0..=i {
                let el = null_by_column(&work, m - 1 - j, i - j);
                el.apply_right_adjoint(&mut work);
                right.push(el);
            }
        } else {
            for j in 1..=i + 1 {
                let el = null_by_row(&work, m + j - i - 3, j - 1);
                el.apply_left(&mut work);
                left.push(el);
            }
        }
    }
    // work = L U R with L = T_lk...T_l1 and R = T_r1^H...T_rr^H, now diagonal:
    // U = T_l1^H ... T_lk^H D T_rr ... T_r1
    let mut diag: Vec<Complex64> = (0..m).map(|i| work[(i, i)]).collect();
    let mut pushed: Vec<MeshElement> = Vec::with_capacity(left.len());
    for el in left.iter().rev() {
        let (na, nb, moved) = commute_through_phases(el, diag[el.mode], diag[el.mode + 1]);
        diag[el.mode] = na;
        diag[el.mode + 1] = nb;
        pushed.push(moved);
    }
    // U = D' T'_1 ... T'_k T_rr ... T_r1, and pushed = [T'_k, ..., T'_1]
    let mut elements = right;
    elements.extend(pushed);
    Ok(MeshDecomposition {
        modes: m,
        elements,
        phases: diag.iter().map(|z| z.arg()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::encode;
    use crate::numkernel::random::random_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_has_trivial_rotations() {
        let d = decompose_mesh(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(d.elements.len(), 6);
        for e in &d.elements {
            assert!(e.theta.abs() < 1e-12 || (e.theta - std::f64::consts::PI).abs() < 1e-12);
        }
        assert!(d.recompose().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn random_unitaries_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for m in [1, 2, 3, 6, 9] {
            let u = random_unitary(m, &mut rng);
            let d = decompose_mesh(&u).unwrap();
            assert!(d.elements.len() <= m * (m - 1) / 2);
            assert!(d.recompose().max_abs_diff(&u) < 1e-8, "m={m}");
        }
    }

    #[test]
    fn dilation_round_trips() {
        let k3 = ComplexMatrix::from_real_rows(&[[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]).unwrap();
        let c = encode(&k3).unwrap();
        let d = decompose_mesh(&c.unitary).unwrap();
        assert!(d.recompose().max_abs_diff(&c.unitary) < 1e-8);
    }

    #[test]
    fn rejects_non_unitary() {
        let a = ComplexMatrix::identity(3).scale_real(2.0);
        assert!(matches!(decompose_mesh(&a), Err(Error::NotUnitary(_))));
    }
}
