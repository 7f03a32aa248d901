//! Cyclic Jacobi eigensolver for 4x4 complex Hermitian matrices.

use super::matrix::{ComplexMatrix4, C64, ZERO};
use crate::error::{Error, Result};

/// Inputs whose Hermitian defect exceeds this are rejected.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Sweeps stop once the off-diagonal Frobenius norm falls below this,
/// relative to the Frobenius norm of the input.
const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

#[derive(Clone, Debug)]
pub struct EigenDecomposition4 {
    /// Ascending.
    pub eigenvalues: [f64; 4],
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix4,
}

impl EigenDecomposition4 {
    pub fn eigenvector(&self, k: usize) -> [C64; 4] {
        self.eigenvectors.column(k)
    }

    /// V diag(f(λ)) V†
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix4 {
        let mut m = ComplexMatrix4::zeros();
        for k in 0..4 {
            let v = self.eigenvector(k);
            m = m + ComplexMatrix4::outer(&v, &v).scale(f(self.eigenvalues[k]));
        }
        m
    }

    pub fn reconstruct(&self) -> ComplexMatrix4 {
        self.apply(|x| x)
    }
}

pub fn hermitian_eigen(m: &ComplexMatrix4) -> Result<EigenDecomposition4> {
    if !m.is_finite() {
        return Err(Error::NonFinite("matrix entry"));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NonHermitian {
            max_asymmetry: defect,
        });
    }

    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix4::identity();
    let threshold = OFF_DIAGONAL_TOL * a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    // Stable sort keeps the original index order among equal eigenvalues.
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let mut eigenvalues = [0.0; 4];
    let mut eigenvectors = ComplexMatrix4::zeros();
    for (k, &src) in order.iter().enumerate() {
        eigenvalues[k] = a[(src, src)].re;
        for i in 0..4 {
            eigenvectors[(i, k)] = v[(i, src)];
        }
    }
    Ok(EigenDecomposition4 {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating a[p][q]: a <- J† a J, v <- v J.
fn rotate(a: &mut ComplexMatrix4, v: &mut ComplexMatrix4, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if g <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    // Phase that makes the pivot real, then a real symmetric rotation.
    let phase = (apq / g).conj();
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // Only rows/columns p and q of J differ from the identity.
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = phase * (-s);
    let jqq = phase * c;

    // a <- a J (columns p, q)
    for i in 0..4 {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * jpp + aiq * jqp;
        a[(i, q)] = aip * jpq + aiq * jqq;
    }
    // a <- J† a (rows p, q)
    for j in 0..4 {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = jpp.conj() * apj + jqp.conj() * aqj;
        a[(q, j)] = jpq.conj() * apj + jqq.conj() * aqj;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for i in 0..4 {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * jpp + viq * jqp;
        v[(i, q)] = vip * jpq + viq * jqq;
    }
}
