//! Concurrence of the thermal state, the entanglement critical temperature and
//! the zero-temperature critical fields.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{ChainParams, DensityMatrix, XStateCoefficients};
use crate::numerics::{hermitian_eigen, ComplexMatrix4, Matrix2, I, ZERO};

/// Entries smaller than this outside the X pattern are treated as zero.
const X_STATE_TOL: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConcurrenceValue(pub f64);

impl ConcurrenceValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A critical temperature plus solver diagnostics.
///
/// `value` is only meaningful when `exists` is set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalResult {
    pub value: f64,
    pub exists: bool,
    pub iterations: u32,
    pub residual: f64,
    /// Set when the parameters sit exactly on the existence boundary.
    pub boundary: bool,
}

impl CriticalResult {
    pub(crate) fn absent(boundary: bool) -> Self {
        Self { value: 0.0, exists: false, iterations: 0, residual: 0.0, boundary }
    }

    pub fn temperature(&self) -> Option<f64> {
        self.exists.then_some(self.value)
    }
}

/// Zero-temperature level crossings, reported as positive field magnitudes.
///
/// The |00> level `-B - B1/2` meets `-eta` at `B = b_minus`; the |11> level
/// `B + B1/2` meets `-eta` at `B = -b_plus`. Flipping the signs of `B` and
/// `B1` together exchanges the two.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalFields {
    pub b_minus: f64,
    pub b_plus: f64,
}

impl CriticalFields {
    /// The signed positions `(-b_plus, b_minus)` on the B axis; the ground
    /// state lies on the entangled branch strictly between them.
    pub fn crossings_on_b_axis(&self) -> (f64, f64) {
        (-self.b_plus, self.b_minus)
    }
}

/// `2 max(0, |y| - sqrt(u v)) / Z`; for unscaled coefficients `sqrt(u v) = 1`.
pub fn concurrence_closed_form(x: &XStateCoefficients) -> ConcurrenceValue {
    let c = 2.0 * (x.y.abs() - x.u.sqrt() * x.v.sqrt()).max(0.0) / x.z;
    ConcurrenceValue(c)
}

fn sigma_y() -> Matrix2 {
    // Project convention: sigma_y |0> = -i |1>.
    [[ZERO, I], [-I, ZERO]]
}

/// Wootters concurrence `max(0, s1 - s2 - s3 - s4)`, with `s_k` the square
/// roots of the eigenvalues of `rho (σy⊗σy) rho* (σy⊗σy)` in descending order.
pub fn concurrence_wootters(rho: &DensityMatrix) -> Result<ConcurrenceValue> {
    let roots = if rho.is_x_state(X_STATE_TOL) {
        x_state_spin_flip_roots(rho.matrix())
    } else {
        general_spin_flip_roots(rho.matrix())?
    };
    let c = roots[0] - roots[1] - roots[2] - roots[3];
    Ok(ConcurrenceValue(c.max(0.0)))
}

/// For an X-state the spin-flip product splits into the {|00>,|11>} and
/// {|01>,|10>} blocks, with square-root eigenvalues
/// `sqrt(ρ00 ρ33) ± |ρ03|` and `sqrt(ρ11 ρ22) ± |ρ12|`.
fn x_state_spin_flip_roots(m: &ComplexMatrix4) -> [f64; 4] {
    let outer = (m[(0, 0)].re.max(0.0) * m[(3, 3)].re.max(0.0)).sqrt();
    let inner = (m[(1, 1)].re.max(0.0) * m[(2, 2)].re.max(0.0)).sqrt();
    let c_outer = m[(0, 3)].norm();
    let c_inner = m[(1, 2)].norm();
    let mut r = [
        outer + c_outer,
        (outer - c_outer).max(0.0),
        inner + c_inner,
        (inner - c_inner).max(0.0),
    ];
    r.sort_by(|a, b| b.total_cmp(a));
    r
}

/// General states: with `rho = Σ λ_k |v_k><v_k|` and `A = V diag(sqrt λ)`,
/// the square-root eigenvalues are the singular values of `τ = Aᵀ (σy⊗σy) A`.
fn general_spin_flip_roots(m: &ComplexMatrix4) -> Result<[f64; 4]> {
    let eig = hermitian_eigen(m)?;
    let mut a = eig.eigenvectors;
    for k in 0..4 {
        let s = eig.eigenvalues[k].max(0.0).sqrt();
        for i in 0..4 {
            a[(i, k)] *= s;
        }
    }
    let flip = ComplexMatrix4::kron(&sigma_y(), &sigma_y());
    let tau = a.transpose() * flip * a;
    let gram = (tau.adjoint() * tau).hermitian_part();
    let ev = hermitian_eigen(&gram)?.eigenvalues;
    Ok([ev[3], ev[2], ev[1], ev[0]].map(|x| x.max(0.0).sqrt()))
}

/// `k_B T_c = eta / (ln(eta + sqrt(J^2 + eta^2)) - ln|J|)`.
///
/// Independent of B. For J = 0 there is no entanglement at any positive
/// temperature and the result is flagged as absent.
pub fn entanglement_critical_temp(p: &ChainParams) -> CriticalResult {
    if p.j == 0.0 {
        return CriticalResult::absent(false);
    }
    let j = p.j.abs();
    let eta = p.eta();
    // ln((eta + sqrt(J^2 + eta^2)) / |J|) = asinh(eta / |J|)
    let tc = eta / (eta / j).asinh();
    let residual = ((j / eta) * (eta / tc).sinh() - 1.0).abs();
    CriticalResult { value: tc, exists: true, iterations: 0, residual, boundary: false }
}

pub fn critical_fields(p: &ChainParams) -> CriticalFields {
    let (b_minus, b_plus) = if p.j == 0.0 {
        let eta = p.eta();
        (eta - 0.5 * p.b1, eta + 0.5 * p.b1)
    } else {
        p.split_eta()
    };
    CriticalFields { b_minus, b_plus }
}
