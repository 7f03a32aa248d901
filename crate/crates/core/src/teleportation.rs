//! Maximal singlet fraction and optimal standard-teleportation fidelity of the
//! thermal state, the temperature where the fidelity drops to the classical
//! limit, and the envelope of those temperatures over the uniform field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entanglement::{entanglement_critical_temp, CriticalResult};
use crate::error::{Error, Result};
use crate::model::{ChainParams, DensityMatrix, Temperature};
use crate::numerics::{
    bisect_root, maximize_unimodal, svd3, ComplexMatrix4, Matrix2, RealMatrix3, SingularDecomposition3, C64, I,
    ONE, ROOT_TOL, ZERO,
};

/// Fidelity achievable without entanglement.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;

/// Fewest starts accepted by [`singlet_fraction_oracle`].
pub const MIN_RESTARTS: usize = 8;

const ORACLE_SEED: u64 = 0x5eed_f00d;
const ORACLE_STEP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTensor {
    /// `R_ij = Tr[rho σ_i⊗σ_j]` with σ1, σ2, σ3 = σx, σy, σz.
    pub matrix: RealMatrix3,
    pub svd: SingularDecomposition3,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TeleportMetrics {
    pub singlet_fraction: f64,
    pub fidelity: f64,
}

impl TeleportMetrics {
    pub fn from_singlet_fraction(f: f64) -> Result<Self> {
        Ok(Self { singlet_fraction: f, fidelity: optimal_fidelity(f)? })
    }

    pub fn beats_classical(&self) -> bool {
        self.fidelity > CLASSICAL_FIDELITY
    }
}

/// Pauli matrices in the project basis |0>, |1> with `σz|1> = +|1>`.
fn paulis() -> [Matrix2; 3] {
    [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, I], [-I, ZERO]],
        [[-ONE, ZERO], [ZERO, ONE]],
    ]
}

pub fn correlation_tensor(rho: &DensityMatrix) -> Result<CorrelationTensor> {
    let sigma = paulis();
    let mut r = RealMatrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let op = ComplexMatrix4::kron(&sigma[i], &sigma[j]);
            r.0[i][j] = (*rho.matrix() * op).trace().re;
        }
    }
    Ok(CorrelationTensor { matrix: r, svd: svd3(&r)? })
}

/// `F = (1 + λ1 + λ2 - sgn(det R) λ3) / 4`.
///
/// `det_sign == 0` only says `|det R| < 1e-12`; that still allows
/// `λ3 ~ 1e-6`, so the sign is then read off the raw determinant. An exactly
/// singular tensor takes the `+λ3` branch.
pub fn singlet_fraction_general(t: &CorrelationTensor) -> f64 {
    let [l1, l2, l3] = t.svd.singular_values;
    let positive = match t.svd.det_sign {
        0 => t.matrix.det() > 0.0,
        s => s > 0,
    };
    let sign = if positive { 1.0 } else { -1.0 };
    (1.0 + l1 + l2 - sign * l3) / 4.0
}

/// `F = max{cosh[β(B + B1/2)], (η cosh ηβ + |J| sinh ηβ)/η} / Z`.
pub fn singlet_fraction_closed_form(p: &ChainParams, t: &Temperature) -> Result<f64> {
    let beta = t.require_beta()?;
    p.require_coupling()?;
    let eta = p.eta();
    let s = p.total_field();
    // Divide every hyperbolic function by exp(shift); F only uses ratios.
    let shift = beta * s.abs().max(eta);
    let cosh = |x: f64| 0.5 * ((x - shift).exp() + (-x - shift).exp());
    let sinh = |x: f64| 0.5 * ((x - shift).exp() - (-x - shift).exp());
    let z = 2.0 * cosh(beta * s) + 2.0 * cosh(eta * beta);
    let product_branch = cosh(beta * s) / z;
    let singlet_branch = (eta * cosh(eta * beta) + p.j.abs() * sinh(eta * beta)) / (eta * z);
    Ok(product_branch.max(singlet_branch))
}

/// Direct maximization of `<ψ|rho|ψ>` over maximally entangled `ψ = (I⊗U)|Φ+>`.
///
/// Each start `U` in SU(2) (three random angles) is refined by cyclic
/// ascent over left rotations `exp(i t σ_k) U`, k = x, y, z. Rotating about
/// fixed axes has no coordinate singularities, unlike ascent on the angles
/// themselves. Starts come from a fixed seed, so the result is reproducible.
pub fn singlet_fraction_oracle(rho: &DensityMatrix, restarts: usize) -> Result<f64> {
    if restarts < MIN_RESTARTS {
        return Err(Error::OutOfRange { what: "restarts", value: restarts as f64 });
    }
    let m = rho.matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut best = f64::NEG_INFINITY;
    for k in 0..restarts {
        let start = if k == 0 {
            su2([0.0; 3])
        } else {
            su2([
                rng.random_range(0.0..std::f64::consts::PI),
                rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
                rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
            ])
        };
        best = best.max(rotation_ascent(m, start)?);
    }
    Ok(best)
}

/// `U = [[cos θ e^{iα}, sin θ e^{iγ}], [-sin θ e^{-iγ}, cos θ e^{-iα}]]`.
fn su2([theta, alpha, gamma]: [f64; 3]) -> Matrix2 {
    let (s, c) = theta.sin_cos();
    [
        [C64::from_polar(c, alpha), C64::from_polar(s, gamma)],
        [C64::from_polar(-s, -gamma), C64::from_polar(c, -alpha)],
    ]
}

fn mul2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `cos t I + i sin t σ`.
fn rotation(sigma: &Matrix2, t: f64) -> Matrix2 {
    let (s, c) = t.sin_cos();
    let mut r = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = I * s * sigma[i][j];
        }
        r[i][i] += c;
    }
    r
}

/// `<ψ|rho|ψ>` with `ψ_{ab} = U_{ba}/sqrt 2`.
fn overlap(m: &ComplexMatrix4, u: &Matrix2) -> f64 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi = [u[0][0] * h, u[1][0] * h, u[0][1] * h, u[1][1] * h];
    let m_psi = m.mul_vec(&psi);
    psi.iter().zip(m_psi).map(|(a, b)| a.conj() * b).sum::<C64>().re
}

/// Along each rotation the objective is `a + b cos 2t + c sin 2t`, so a
/// coarse scan over one period followed by a golden-section search inside
/// the best cell finds the exact line maximum.
fn rotation_ascent(m: &ComplexMatrix4, mut u: Matrix2) -> Result<f64> {
    const CELLS: usize = 8;
    let cell = std::f64::consts::PI / CELLS as f64;
    let axes = paulis();
    let mut value = overlap(m, &u);
    for _ in 0..200 {
        let before = value;
        for sigma in &axes {
            let along = |t: f64| overlap(m, &mul2(&rotation(sigma, t), &u));
            let centre = (0..CELLS)
                .map(|i| i as f64 * cell)
                .map(|t| (t, along(t)))
                .fold((0.0, f64::NEG_INFINITY), |best, p| if p.1 > best.1 { p } else { best })
                .0;
            let (t, v) = maximize_unimodal(along, centre - cell, centre + cell, ORACLE_STEP_TOL)?;
            if v > value {
                u = mul2(&rotation(sigma, t), &u);
                value = v;
            }
        }
        if value - before <= 1e-15 {
            break;
        }
    }
    Ok(value)
}

/// `f = (2F + 1) / 3`.
pub fn optimal_fidelity(singlet_fraction: f64) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if !(0.25 - SLACK..=1.0 + SLACK).contains(&singlet_fraction) {
        return Err(Error::OutOfRange { what: "singlet fraction", value: singlet_fraction });
    }
    Ok((2.0 * singlet_fraction + 1.0) / 3.0)
}

/// Optimal fidelity of the thermal state at positive temperature.
pub fn thermal_fidelity(p: &ChainParams, t: &Temperature) -> Result<TeleportMetrics> {
    TeleportMetrics::from_singlet_fraction(singlet_fraction_closed_form(p, t)?)
}

/// Temperature above which the optimal fidelity is at most 2/3: the root of
/// `sinh(ηβ) = (η/|J|) cosh[(B + B1/2)β]`, reported as `1/β`.
///
/// The root exists only for `|B + B1/2| < η`.
pub fn fidelity_critical_temp(p: &ChainParams) -> Result<CriticalResult> {
    fidelity_critical_temp_with_tol(p, ROOT_TOL)
}

pub fn fidelity_critical_temp_with_tol(p: &ChainParams, tol: f64) -> Result<CriticalResult> {
    if p.j == 0.0 {
        return Ok(CriticalResult::absent(false));
    }
    let j = p.j.abs();
    let eta = p.eta();
    let s = p.total_field().abs();
    if (s - eta).abs() <= 1e-12 * eta.max(1.0) {
        return Ok(CriticalResult::absent(true));
    }
    if s > eta {
        return Ok(CriticalResult::absent(false));
    }

    // |J| sinh(ηβ) - η cosh(sβ), divided by exp(ηβ)/2. Increasing in β.
    let g = |beta: f64| {
        j * (1.0 - (-2.0 * eta * beta).exp()) - eta * (((s - eta) * beta).exp() + (-(s + eta) * beta).exp())
    };
    let lo = 1e-6;
    let mut hi = 1.0 / eta;
    while g(hi) <= 0.0 {
        hi *= 2.0;
        if hi > 1e4 / eta {
            return Err(Error::BracketFailure { f_lo: g(lo), f_hi: g(hi) });
        }
    }
    let root = bisect_root(g, lo, hi, tol)?;
    Ok(CriticalResult {
        value: 1.0 / root.x,
        exists: true,
        iterations: root.iterations,
        residual: root.bracket_width,
        boundary: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub argmax_b: f64,
    pub max_t: f64,
}

/// Maximizes the fidelity critical temperature over B on
/// `[-B1/2 - 3η, -B1/2 + 3η]`. Where no critical temperature exists the
/// objective is 0.
pub fn envelope_extremum(j: f64, b1: f64) -> Result<Envelope> {
    if j == 0.0 {
        return Err(Error::NoEnvelope);
    }
    let base = ChainParams::new(j, 0.0, b1)?;
    let eta = base.eta();
    let centre = -0.5 * b1;

    let tc_at = |b: f64| -> Result<f64> {
        let r = fidelity_critical_temp_with_tol(&ChainParams { b, ..base }, 1e-15)?;
        Ok(r.temperature().unwrap_or(0.0))
    };
    let failure = std::cell::RefCell::new(None);
    let (argmax_b, _) = maximize_unimodal(
        |b| match tc_at(b) {
            Ok(t) => t,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        centre - 3.0 * eta,
        centre + 3.0 * eta,
        1e-9 * eta.max(1.0),
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(Envelope { argmax_b, max_t: tc_at(argmax_b)? })
}

/// Envelope maximum and the entanglement critical temperature it should touch.
pub fn envelope_agreement(j: f64, b1: f64) -> Result<(Envelope, f64)> {
    let env = envelope_extremum(j, b1)?;
    let tc = entanglement_critical_temp(&ChainParams::new(j, 0.0, b1)?).value;
    Ok((env, tc))
}
