use serde::{Deserialize, Serialize};

use super::matrix::RealMatrix3;
use crate::error::{Error, Result};

/// Determinants smaller than this in magnitude report a sign of 0.
pub const DET_ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularDecomposition3 {
    /// Descending, nonnegative.
    pub singular_values: [f64; 3],
    /// -1, 0 or +1.
    pub det_sign: i8,
}

/// Singular values of a real 3x3 matrix together with the sign of its determinant.
///
/// One-sided Jacobi: column pairs of a working copy are rotated until they are
/// mutually orthogonal, which implicitly diagonalizes mᵀm. The singular values
/// are then the column norms; no square root of a tiny eigenvalue is taken, so
/// small singular values keep their absolute accuracy.
pub fn svd3(m: &RealMatrix3) -> Result<SingularDecomposition3> {
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix entry"));
    }
    let mut a = m.0;
    for _ in 0..64 {
        let mut rotated = false;
        for p in 0..2 {
            for q in (p + 1)..3 {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for row in a.iter() {
                    alpha += row[p] * row[p];
                    beta += row[q] * row[q];
                    gamma += row[p] * row[q];
                }
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut singular_values = [0.0; 3];
    for (j, sv) in singular_values.iter_mut().enumerate() {
        *sv = a.iter().map(|row| row[j] * row[j]).sum::<f64>().sqrt();
    }
    singular_values.sort_by(|x, y| y.total_cmp(x));

    let det = m.det();
    let det_sign = if det.abs() < DET_ZERO_TOL {
        0
    } else if det > 0.0 {
        1
    } else {
        -1
    };
    Ok(SingularDecomposition3 {
        singular_values,
        det_sign,
    })
}
