//! The two-qubit XX chain with an impurity field on qubit 1, its spectrum and
//! its thermal equilibrium state.
//!
//! Spin convention: `S_z|1> = +|1>/2` and `S_z|0> = -|0>/2`, so `|00>` carries
//! energy `-B - B1/2`. Units have `k_B = 1`; temperatures are `k_B T` in the
//! energy units of `J`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigen, ComplexMatrix4, C64, ZERO};

/// Levels closer than this to the lowest energy count as ground-state degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Exponent magnitude above which Boltzmann factors are rescaled.
const EXP_SAFE: f64 = 700.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    pub j: f64,
    pub b: f64,
    pub b1: f64,
}

impl ChainParams {
    pub fn new(j: f64, b: f64, b1: f64) -> Result<Self> {
        if !(j.is_finite() && b.is_finite() && b1.is_finite()) {
            return Err(Error::NonFinite("chain parameter"));
        }
        Ok(Self { j, b, b1 })
    }

    /// sqrt(J^2 + B1^2/4)
    pub fn eta(&self) -> f64 {
        self.j.hypot(0.5 * self.b1)
    }

    /// B + B1/2, the energy of |11>.
    pub fn total_field(&self) -> f64 {
        self.b + 0.5 * self.b1
    }

    /// (eta - B1/2, eta + B1/2), each computed without cancellation.
    ///
    /// Their product is J^2.
    pub(crate) fn split_eta(&self) -> (f64, f64) {
        let eta = self.eta();
        let half = 0.5 * self.b1;
        if half >= 0.0 {
            let plus = eta + half;
            (self.j * self.j / plus, plus)
        } else {
            let minus = eta - half;
            (minus, self.j * self.j / minus)
        }
    }

    pub(crate) fn require_coupling(&self) -> Result<()> {
        if self.j == 0.0 {
            Err(Error::ClosedFormUnavailable)
        } else {
            Ok(())
        }
    }
}

/// `k_B T`, with zero reserved for the ground state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Temperature {
    kbt: f64,
}

impl Temperature {
    pub fn new(kbt: f64) -> Result<Self> {
        if !kbt.is_finite() || kbt < 0.0 {
            return Err(Error::InvalidTemperature(kbt));
        }
        Ok(Self { kbt })
    }

    pub fn ground() -> Self {
        Self { kbt: 0.0 }
    }

    pub fn kbt(&self) -> f64 {
        self.kbt
    }

    pub fn is_ground(&self) -> bool {
        self.kbt == 0.0
    }

    /// 1 / kbT, or `None` at zero temperature.
    pub fn beta(&self) -> Option<f64> {
        (self.kbt > 0.0).then(|| 1.0 / self.kbt)
    }

    pub(crate) fn require_beta(&self) -> Result<f64> {
        self.beta().ok_or(Error::ZeroTemperature)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub amplitudes: [C64; 4],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum {
    /// In the order |00>, |11>, +eta branch, -eta branch.
    pub levels: [Level; 4],
}

impl Spectrum {
    pub fn sorted_energies(&self) -> [f64; 4] {
        let mut e = self.levels.map(|l| l.energy);
        e.sort_by(f64::total_cmp);
        e
    }
}

/// The unnormalized X-state entries of the thermal state.
///
/// When the Boltzmann exponents would overflow, every coefficient carries a
/// common factor `exp(-scale_exponent)`; only ratios are meaningful then and
/// `u * v = exp(-2 * scale_exponent)` replaces `u * v = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XStateCoefficients {
    /// |11><11|
    pub u: f64,
    /// |00><00|
    pub v: f64,
    /// |10><10|
    pub w1: f64,
    /// |01><01|
    pub w2: f64,
    /// |10><01| and |01><10|
    pub y: f64,
    pub z: f64,
    pub scale_exponent: f64,
}

pub fn build_hamiltonian(p: &ChainParams) -> ComplexMatrix4 {
    let s = p.total_field();
    let half = 0.5 * p.b1;
    let mut h = ComplexMatrix4::from_real_diagonal([-s, -half, half, s]);
    h[(1, 2)] = C64::new(p.j, 0.0);
    h[(2, 1)] = C64::new(p.j, 0.0);
    h
}

pub fn closed_form_spectrum(p: &ChainParams) -> Result<Spectrum> {
    p.require_coupling()?;
    let eta = p.eta();
    let s = p.total_field();
    let (minus, plus) = p.split_eta();
    let re = |x: f64| C64::new(x, 0.0);

    // Norms: 2 eta^2 - B1 eta = 2 eta (eta - B1/2) and 2 eta^2 + B1 eta = 2 eta (eta + B1/2).
    let n3 = (2.0 * eta * minus).sqrt();
    let n4 = (2.0 * eta * plus).sqrt();
    Ok(Spectrum {
        levels: [
            Level { energy: -s, amplitudes: [re(1.0), ZERO, ZERO, ZERO] },
            Level { energy: s, amplitudes: [ZERO, ZERO, ZERO, re(1.0)] },
            Level { energy: eta, amplitudes: [ZERO, re(minus / n3), re(p.j / n3), ZERO] },
            Level { energy: -eta, amplitudes: [ZERO, re(-plus / n4), re(p.j / n4), ZERO] },
        ],
    })
}

pub fn thermal_coefficients(p: &ChainParams, t: &Temperature) -> Result<XStateCoefficients> {
    let beta = t.require_beta()?;
    p.require_coupling()?;
    let eta = p.eta();
    let s = p.total_field();
    let (minus, plus) = p.split_eta();

    let top = beta * s.abs().max(eta);
    let shift = if top > EXP_SAFE { top } else { 0.0 };

    let u = (-beta * s - shift).exp();
    let v = (beta * s - shift).exp();
    let down = (-beta * eta - shift).exp();
    let up = (beta * eta - shift).exp();

    // J^2 / (2 eta^2 -/+ eta B1) = (eta +/- B1/2) / (2 eta)
    let w1 = (plus * down + minus * up) / (2.0 * eta);
    let w2 = (minus * down + plus * up) / (2.0 * eta);
    let y = -(p.j / eta) * 0.5 * (up - down);
    let z = u + v + down + up;
    Ok(XStateCoefficients { u, v, w1, w2, y, z, scale_exponent: shift })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityMatrix {
    matrix: ComplexMatrix4,
}

impl DensityMatrix {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-12;
    pub const MIN_EIGENVALUE: f64 = -1e-10;

    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix4) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite("density matrix entry"));
        }
        let defect = matrix.hermitian_defect();
        if defect > Self::HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("Hermitian defect {defect:e}")));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > Self::TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let min = hermitian_eigen(&matrix)?.eigenvalues[0];
        if min < Self::MIN_EIGENVALUE {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_trusted(matrix: ComplexMatrix4) -> Self {
        Self { matrix }
    }

    pub fn pure(psi: &[C64; 4]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let unit = psi.map(|a| a / norm);
        Ok(Self::from_trusted(ComplexMatrix4::outer(&unit, &unit)))
    }

    pub fn maximally_mixed() -> Self {
        Self::from_trusted(ComplexMatrix4::from_real_diagonal([0.25; 4]))
    }

    /// (|01> - |10>)/sqrt 2
    pub fn singlet() -> Self {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_trusted(ComplexMatrix4::outer(
            &[ZERO, C64::new(a, 0.0), C64::new(-a, 0.0), ZERO],
            &[ZERO, C64::new(a, 0.0), C64::new(-a, 0.0), ZERO],
        ))
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.matrix
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }

    /// Mixture `(1 - w) self + w other`.
    pub fn mix(&self, other: &Self, w: f64) -> Self {
        Self::from_trusted(self.matrix.scale(1.0 - w) + other.matrix.scale(w))
    }

    /// True when every entry outside the diagonal and anti-diagonal vanishes.
    pub fn is_x_state(&self, tol: f64) -> bool {
        (0..4).all(|i| (0..4).all(|k| i == k || i + k == 3 || self.matrix[(i, k)].norm() <= tol))
    }
}

pub fn thermal_state(p: &ChainParams, t: &Temperature) -> Result<DensityMatrix> {
    if t.is_ground() {
        return ground_state(p);
    }
    let x = thermal_coefficients(p, t)?;
    Ok(x_state_matrix(&x))
}

pub(crate) fn x_state_matrix(x: &XStateCoefficients) -> DensityMatrix {
    let mut m = ComplexMatrix4::from_real_diagonal([x.v / x.z, x.w2 / x.z, x.w1 / x.z, x.u / x.z]);
    m[(1, 2)] = C64::new(x.y / x.z, 0.0);
    m[(2, 1)] = C64::new(x.y / x.z, 0.0);
    DensityMatrix::from_trusted(m)
}

/// exp(-beta H) / Tr exp(-beta H) through the eigendecomposition of H.
pub fn gibbs_oracle(p: &ChainParams, t: &Temperature) -> Result<DensityMatrix> {
    let beta = t.require_beta()?;
    let eig = hermitian_eigen(&build_hamiltonian(p))?;
    let e0 = eig.eigenvalues[0];
    let weights = eig.eigenvalues.map(|e| (-beta * (e - e0)).exp());
    let norm: f64 = weights.iter().sum();
    let mut rho = ComplexMatrix4::zeros();
    for (k, w) in weights.iter().enumerate() {
        let v = eig.eigenvector(k);
        rho = rho + ComplexMatrix4::outer(&v, &v).scale(w / norm);
    }
    Ok(DensityMatrix::from_trusted(rho.hermitian_part()))
}

/// Equal mixture of the projectors onto the lowest level (and any level within
/// [`DEGENERACY_TOL`] of it).
pub fn ground_state(p: &ChainParams) -> Result<DensityMatrix> {
    let eig = hermitian_eigen(&build_hamiltonian(p))?;
    let e0 = eig.eigenvalues[0];
    let ground: Vec<usize> = (0..4)
        .filter(|&k| eig.eigenvalues[k] - e0 < DEGENERACY_TOL)
        .collect();
    let w = 1.0 / ground.len() as f64;
    let mut rho = ComplexMatrix4::zeros();
    for &k in &ground {
        let v = eig.eigenvector(k);
        rho = rho + ComplexMatrix4::outer(&v, &v).scale(w);
    }
    Ok(DensityMatrix::from_trusted(rho.hermitian_part()))
}

/// Thermal state by whichever route applies: ground state at kbT = 0, the
/// Gibbs construction when J = 0, the closed form otherwise.
pub fn equilibrium_state(p: &ChainParams, t: &Temperature) -> Result<DensityMatrix> {
    if t.is_ground() {
        ground_state(p)
    } else if p.j == 0.0 {
        gibbs_oracle(p, t)
    } else {
        thermal_state(p, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(j: f64, b: f64, b1: f64) -> ChainParams {
        ChainParams::new(j, b, b1).unwrap()
    }

    fn temp(kbt: f64) -> Temperature {
        Temperature::new(kbt).unwrap()
    }

    #[test]
    fn hamiltonian_without_couplings_is_zero() {
        assert_eq!(build_hamiltonian(&params(0.0, 0.0, 0.0)), ComplexMatrix4::zeros());
    }

    #[test]
    fn hamiltonian_pure_exchange() {
        let h = build_hamiltonian(&params(1.0, 0.0, 0.0));
        let mut expected = ComplexMatrix4::zeros();
        expected[(1, 2)] = C64::new(1.0, 0.0);
        expected[(2, 1)] = C64::new(1.0, 0.0);
        assert_eq!(h, expected);
    }

    #[test]
    fn hamiltonian_with_impurity_matches_eigensolver() {
        let h = build_hamiltonian(&params(1.0, 1.0, 2.0));
        assert_eq!([h[(0, 0)].re, h[(1, 1)].re, h[(2, 2)].re, h[(3, 3)].re], [-2.0, -1.0, 1.0, 2.0]);
        assert_eq!(h[(1, 2)].re, 1.0);
        let e = hermitian_eigen(&h).unwrap().eigenvalues;
        let r2 = 2f64.sqrt();
        for (a, b) in e.iter().zip([-2.0, -r2, r2, 2.0]) {
            assert!((a - b).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn hamiltonian_zero_field_spectrum() {
        let e = hermitian_eigen(&build_hamiltonian(&params(1.0, 0.0, 0.0))).unwrap().eigenvalues;
        for (a, b) in e.iter().zip([-1.0, 0.0, 0.0, 1.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn singlet_is_lowest_level_without_fields() {
        let s = closed_form_spectrum(&params(1.0, 0.0, 0.0)).unwrap();
        let low = s.levels[3];
        assert!((low.energy + 1.0).abs() < 1e-15);
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [0.0, -a, a, 0.0];
        for (z, e) in low.amplitudes.iter().zip(expected) {
            assert!((z.re - e).abs() < 1e-15 && z.im == 0.0);
        }
    }

    #[test]
    fn strong_field_ground_level_is_all_down() {
        let s = closed_form_spectrum(&params(1.0, 2.0, 0.0)).unwrap();
        let ground = s.levels.iter().min_by(|a, b| a.energy.total_cmp(&b.energy)).unwrap();
        assert_eq!(ground.energy, -2.0);
        assert_eq!(ground.amplitudes[0].re, 1.0);
    }

    #[test]
    fn closed_form_levels_are_eigenvectors() {
        for &(j, b, b1) in &[(1.0, 0.3, 2.0), (-0.7, -1.2, -3.5), (2.0, 4.0, 0.01), (0.05, 0.0, 6.0)] {
            let p = params(j, b, b1);
            let h = build_hamiltonian(&p);
            let s = closed_form_spectrum(&p).unwrap();
            for l in &s.levels {
                let hv = h.mul_vec(&l.amplitudes);
                for k in 0..4 {
                    assert!((hv[k] - l.amplitudes[k] * l.energy).norm() < 1e-10);
                }
                let n: f64 = l.amplitudes.iter().map(|a| a.norm_sqr()).sum();
                assert!((n - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_forms_refuse_zero_coupling() {
        let p = params(0.0, 1.0, 1.0);
        assert!(matches!(closed_form_spectrum(&p), Err(Error::ClosedFormUnavailable)));
        assert!(matches!(thermal_coefficients(&p, &temp(1.0)), Err(Error::ClosedFormUnavailable)));
    }

    #[test]
    fn zero_temperature_is_not_a_thermal_coefficient() {
        assert!(matches!(
            thermal_coefficients(&params(1.0, 0.0, 0.0), &Temperature::ground()),
            Err(Error::ZeroTemperature)
        ));
        assert!(Temperature::ground().beta().is_none());
        assert!(Temperature::new(-1.0).is_err());
    }

    #[test]
    fn coefficients_at_half_temperature() {
        let x = thermal_coefficients(&params(1.0, 0.0, 0.0), &temp(0.5)).unwrap();
        assert_eq!((x.u, x.v), (1.0, 1.0));
        let c2 = 2f64.cosh();
        assert!((x.w1 - c2).abs() < 1e-14 && (x.w2 - c2).abs() < 1e-14);
        assert!((x.w1 - 3.762196).abs() < 1e-6);
        assert!((x.y + 3.626860).abs() < 1e-6);
        assert!((x.z - 9.524391).abs() < 1e-6);
    }

    #[test]
    fn coefficients_on_the_envelope_line() {
        let x = thermal_coefficients(&params(1.0, -1.0, 2.0), &temp(1.0)).unwrap();
        assert_eq!((x.u, x.v), (1.0, 1.0));
        let r2 = 2f64.sqrt();
        assert!((x.y + r2.sinh() / r2).abs() < 1e-14);
        assert!((x.y + 1.368298872).abs() < 1e-9);
        assert!((x.z - 6.356367113).abs() < 1e-9);
    }

    /// The coefficients written exactly as in the thermal-state formula, with
    /// the 2 eta^2 -/+ eta B1 denominators.
    fn literal_coefficients(p: &ChainParams, beta: f64) -> [f64; 6] {
        let (j, b, b1, eta) = (p.j, p.b, p.b1, p.eta());
        let u = (-beta * (b + 0.5 * b1)).exp();
        let v = (beta * (b + 0.5 * b1)).exp();
        let dm = 2.0 * eta * eta - eta * b1;
        let dp = 2.0 * eta * eta + eta * b1;
        let w1 = j * j * ((-eta * beta).exp() / dm + (eta * beta).exp() / dp);
        let w2 = (-eta * beta).exp() * (eta - 0.5 * b1).powi(2) / dm
            + (eta * beta).exp() * (eta + 0.5 * b1).powi(2) / dp;
        let y = -(j / eta) * (eta * beta).sinh();
        let z = 2.0 * ((b + 0.5 * b1) * beta).cosh() + 2.0 * (eta * beta).cosh();
        [u, v, w1, w2, y, z]
    }

    #[test]
    fn coefficients_match_literal_formula() {
        for &(j, b, b1, kbt) in &[(1.0, 0.0, 0.0, 0.5), (1.0, -1.0, 2.0, 1.0), (-2.0, 0.7, -1.5, 0.3), (0.4, 3.0, 1.0, 2.0)] {
            let p = params(j, b, b1);
            let x = thermal_coefficients(&p, &temp(kbt)).unwrap();
            let lit = literal_coefficients(&p, 1.0 / kbt);
            for (a, e) in [x.u, x.v, x.w1, x.w2, x.y, x.z].iter().zip(lit) {
                assert!((a - e).abs() <= 1e-12 * e.abs().max(1.0), "{a} vs {e}");
            }
        }
    }

    #[test]
    fn coefficient_identities() {
        let x = thermal_coefficients(&params(0.8, -2.0, 3.0), &temp(0.7)).unwrap();
        let eta = 0.8f64.hypot(1.5);
        assert!((x.u * x.v - 1.0).abs() < 1e-12);
        assert!((x.z - (x.u + x.v + x.w1 + x.w2)).abs() < 1e-12 * x.z);
        assert!((x.w1 + x.w2 - 2.0 * (eta / 0.7).cosh()).abs() < 1e-12 * x.z);
        assert!(x.y < 0.0);
        let x = thermal_coefficients(&params(-0.8, -2.0, 3.0), &temp(0.7)).unwrap();
        assert!(x.y > 0.0);
    }

    #[test]
    fn infinite_temperature_limit() {
        let x = thermal_coefficients(&params(1.0, 0.3, -0.4), &temp(1e6)).unwrap();
        for c in [x.u, x.v, x.w1, x.w2] {
            assert!((c - 1.0).abs() < 1e-5);
        }
        assert!(x.y.abs() < 1e-5);
        assert!((x.z - 4.0).abs() < 1e-5);
        let rho = thermal_state(&params(1.0, 0.3, -0.4), &temp(1e6)).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed()) < 1e-5);
    }

    #[test]
    fn thermal_state_entries() {
        let rho = thermal_state(&params(1.0, 0.0, 0.0), &temp(0.5)).unwrap();
        let m = rho.matrix();
        let diag = [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re];
        for (a, e) in diag.iter().zip([0.1049935854, 0.3950064146, 0.3950064146, 0.1049935854]) {
            assert!((a - e).abs() < 1e-10);
        }
        assert!((m[(1, 2)].re + 0.3807970780).abs() < 1e-10);
        assert!(rho.is_x_state(0.0));
        DensityMatrix::new(*m).unwrap();
    }

    #[test]
    fn large_beta_does_not_overflow() {
        let p = params(1.0, 3.0, 2.0);
        let t = temp(1e-3);
        let x = thermal_coefficients(&p, &t).unwrap();
        assert!(x.scale_exponent > 700.0);
        assert!([x.u, x.v, x.w1, x.w2, x.y, x.z].iter().all(|c| c.is_finite()));
        let rho = thermal_state(&p, &t).unwrap();
        DensityMatrix::new(*rho.matrix()).unwrap();
        // B + B1/2 = 4 > eta, so the state is |00><00|.
        assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(rho.max_abs_diff(&gibbs_oracle(&p, &t).unwrap()) < 1e-10);
    }

    #[test]
    fn gibbs_zero_hamiltonian_is_maximally_mixed() {
        let rho = gibbs_oracle(&params(0.0, 0.0, 0.0), &temp(1.0)).unwrap();
        assert_eq!(rho, DensityMatrix::maximally_mixed());
    }

    #[test]
    fn gibbs_uncoupled_is_diagonal() {
        let rho = gibbs_oracle(&params(0.0, 1.0, 0.0), &temp(1.0)).unwrap();
        let z = 1f64.exp() + 2.0 + (-1f64).exp();
        let m = rho.matrix();
        let expected = [1f64.exp() / z, 1.0 / z, 1.0 / z, (-1f64).exp() / z];
        for (i, e) in expected.iter().enumerate() {
            assert!((m[(i, i)].re - e).abs() < 1e-15);
        }
        assert_eq!(m[(1, 2)], ZERO);
    }

    #[test]
    fn gibbs_matches_closed_form() {
        let p = params(1.0, -1.0, 2.0);
        let t = temp(1.0);
        let a = gibbs_oracle(&p, &t).unwrap();
        let b = thermal_state(&p, &t).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-10);
    }

    #[test]
    fn ground_state_without_fields_is_singlet() {
        let rho = ground_state(&params(1.0, 0.0, 0.0)).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::singlet()) < 1e-12);
    }

    #[test]
    fn ground_state_beyond_critical_field_is_product() {
        let rho = ground_state(&params(1.0, 2.0, 0.0)).unwrap();
        let mut expected = ComplexMatrix4::zeros();
        expected[(0, 0)] = C64::new(1.0, 0.0);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn ground_state_at_crossing_is_even_mixture() {
        let rho = ground_state(&params(1.0, 1.0, 0.0)).unwrap();
        let mut down = ComplexMatrix4::zeros();
        down[(0, 0)] = C64::new(1.0, 0.0);
        let expected = DensityMatrix::from_trusted(down).mix(&DensityMatrix::singlet(), 0.5);
        assert!(rho.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(ComplexMatrix4::identity()).is_err());
        assert!(DensityMatrix::new(ComplexMatrix4::from_real_diagonal([1.5, -0.5, 0.0, 0.0])).is_err());
        let mut m = ComplexMatrix4::from_real_diagonal([0.25; 4]);
        m[(0, 1)] = C64::new(0.0, 0.1);
        assert!(DensityMatrix::new(m).is_err());
        assert!(DensityMatrix::new(*DensityMatrix::singlet().matrix()).is_ok());
    }

    #[test]
    fn eta_is_never_stale() {
        let mut p = params(1.0, 0.0, 0.0);
        p.b1 = 2.0;
        assert!((p.eta() - 2f64.sqrt()).abs() < 1e-15);
        let (m, pl) = p.split_eta();
        assert!((m * pl - 1.0).abs() < 1e-15);
    }
}
