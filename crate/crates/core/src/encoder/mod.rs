//! Rescaling + unitary dilation of a bounded matrix into a linear-optical
//! unitary, the block matrix used for subgraph sampling, and mesh synthesis.

mod mesh;
mod subgraph;

pub use mesh::{decompose_mesh, MeshDecomposition, MeshElement};
pub use subgraph::{build_subgraph_block, SubgraphBlock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::focksim::OutcomePattern;
use crate::numkernel::{svd, ComplexMatrix};

/// Below this largest singular value a matrix is treated as zero and the
/// scale defaults to 1.
pub const ZERO_SIGMA: f64 = 1e-12;
/// Slack allowed on `||A_s|| <= 1` and `s >= sigma_max`.
pub const NORM_SLACK: f64 = 1e-10;

/// A `2n`-mode unitary whose top-left `n x n` block is `A / scale`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UnitaryFile", into = "UnitaryFile")]
pub struct EncodedCircuit {
    pub unitary: ComplexMatrix,
    pub scale: f64,
    pub photon_count: usize,
    pub mode_count: usize,
}

/// On-disk form: `{"m", "re", "im", "scale", "n"}`.
#[derive(Serialize, Deserialize)]
struct UnitaryFile {
    m: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
    scale: f64,
    n: usize,
}

impl From<EncodedCircuit> for UnitaryFile {
    fn from(c: EncodedCircuit) -> Self {
        let u = &c.unitary;
        UnitaryFile {
            m: c.mode_count,
            re: (0..u.rows()).map(|i| u.row(i).iter().map(|z| z.re).collect()).collect(),
            im: (0..u.rows()).map(|i| u.row(i).iter().map(|z| z.im).collect()).collect(),
            scale: c.scale,
            n: c.photon_count,
        }
    }
}

impl TryFrom<UnitaryFile> for EncodedCircuit {
    type Error = Error;

    fn try_from(f: UnitaryFile) -> Result<Self> {
        let rows = f.re.len();
        if rows != f.m || f.im.len() != rows {
            return Err(Error::Dimension(format!("unitary file declares m = {} but has {rows} rows", f.m)));
        }
        let mut data = Vec::with_capacity(rows * rows);
        for (re, im) in f.re.iter().zip(&f.im) {
            if re.len() != rows || im.len() != rows {
                return Err(Error::Dimension("unitary file rows must have m entries".into()));
            }
            data.extend(re.iter().zip(im).map(|(&a, &b)| num_complex::Complex64::new(a, b)));
        }
        if f.scale.is_nan() || f.scale <= 0.0 || f.n > f.m {
            return Err(Error::Domain(format!("invalid scale {} or photon count {}", f.scale, f.n)));
        }
        Ok(EncodedCircuit {
            unitary: ComplexMatrix::from_vec(rows, rows, data)?,
            scale: f.scale,
            photon_count: f.n,
            mode_count: f.m,
        })
    }
}

impl EncodedCircuit {
    /// Wraps an arbitrary unitary (e.g. a beamsplitter) with scale 1.
    pub fn from_unitary(unitary: ComplexMatrix, photon_count: usize) -> Result<Self> {
        let m = unitary.order()?;
        let err = unitary.unitarity_error();
        if err > 1e-8 {
            return Err(Error::NotUnitary(err));
        }
        Ok(Self {
            unitary,
            scale: 1.0,
            photon_count,
            mode_count: m,
        })
    }

    /// Input (and post-selected output) pattern: one photon in each of the
    /// first `n` modes.
    pub fn standard_pattern(&self) -> OutcomePattern {
        OutcomePattern::leading_ones(self.mode_count, self.photon_count)
    }

    /// The encoded block `A / scale`.
    pub fn encoded_block(&self) -> ComplexMatrix {
        let n = self.photon_count;
        self.unitary.block(0, 0, n, n)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// `A_s = A / s`. With no scale given, `s = sigma_max(A)` (or 1 for a zero
/// matrix).
pub fn rescale(a: &ComplexMatrix, scale: Option<f64>) -> Result<(ComplexMatrix, f64)> {
    let n = a.order()?;
    if n == 0 {
        return Err(Error::Empty);
    }
    let sigma_max = svd(a)?.sigma_max();
    let s = match scale {
        Some(s) => {
            if s.is_nan() || s <= 0.0 || s < sigma_max - NORM_SLACK {
                return Err(Error::ScaleTooSmall { scale: s, sigma_max });
            }
            s
        }
        None if sigma_max < ZERO_SIGMA => 1.0,
        None => sigma_max,
    };
    Ok((a.scale_real(1.0 / s), s))
}

/// Unitary dilation
/// ```text
/// [ A_s                      sqrt(I - A_s A_s^H) ]
/// [ sqrt(I - A_s^H A_s)      -A_s^H              ]
/// ```
///
/// Both square roots come from a single SVD `A_s = W S V^H`, as
/// `W sqrt(I - S^2) W^H` and `V sqrt(I - S^2) V^H`, which keeps the
/// off-diagonal products consistent to rounding even when `S` touches 1.
pub fn dilate(a_s: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a_s.order()?;
    let dec = svd(a_s)?;
    if dec.sigma_max() > 1.0 + NORM_SLACK {
        return Err(Error::NormTooLarge(dec.sigma_max()));
    }
    let defect: Vec<f64> = dec
        .singular_values
        .iter()
        .map(|&s| {
            let s = s.min(1.0);
            ((1.0 - s) * (1.0 + s)).sqrt()
        })
        .collect();
    let root = |q: &ComplexMatrix| {
        ComplexMatrix::from_fn(n, n, |i, j| q[(i, j)] * defect[j])
            .matmul(&q.adjoint())
            .expect("square")
    };
    let top_right = root(&dec.w);
    let bottom_left = root(&dec.v);
    let mut u = ComplexMatrix::zeros(2 * n, 2 * n);
    u.set_block(0, 0, a_s);
    u.set_block(0, n, &top_right);
    u.set_block(n, 0, &bottom_left);
    u.set_block(n, n, &a_s.adjoint().scale_real(-1.0));
    Ok(u)
}

/// Rescale then dilate, with the default (optimal) scale.
pub fn encode(a: &ComplexMatrix) -> Result<EncodedCircuit> {
    encode_with_scale(a, None)
}

pub fn encode_with_scale(a: &ComplexMatrix, scale: Option<f64>) -> Result<EncodedCircuit> {
    let (a_s, s) = rescale(a, scale)?;
    let n = a_s.rows();
    let unitary = dilate(&a_s)?;
    Ok(EncodedCircuit {
        unitary,
        scale: s,
        photon_count: n,
        mode_count: 2 * n,
    })
}
