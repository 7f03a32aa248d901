//! Randomized cross-validation of every closed form against its oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::entanglement::{concurrence_closed_form, concurrence_wootters, entanglement_critical_temp};
use crate::error::Result;
use crate::model::{
    build_hamiltonian, closed_form_spectrum, gibbs_oracle, thermal_coefficients, thermal_state, ChainParams,
    Temperature,
};
use crate::numerics::hermitian_eigen;
use crate::teleportation::{
    correlation_tensor, envelope_extremum, fidelity_critical_temp, singlet_fraction_closed_form,
    singlet_fraction_general, singlet_fraction_oracle, thermal_fidelity, CLASSICAL_FIDELITY, MIN_RESTARTS,
};

pub const DEFAULT_DRAWS: usize = 200;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub draws: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// `n` parameter points with J in [-3, 3] (|J| >= 0.05), B in [-5, 5],
/// B1 in [-6, 6] and kbT in [0.05, 10].
pub fn draw_params(seed: u64, n: usize) -> Vec<(ChainParams, Temperature)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let j = loop {
                let j = rng.random_range(-3.0..=3.0);
                if f64::abs(j) >= 0.05 {
                    break j;
                }
            };
            let b = rng.random_range(-5.0..=5.0);
            let b1 = rng.random_range(-6.0..=6.0);
            let kbt = rng.random_range(0.05..=10.0);
            (ChainParams { j, b, b1 }, Temperature::new(kbt).expect("positive"))
        })
        .collect()
}

/// Per-draw residuals, one slot per randomized check.
#[derive(Default, Clone, Copy)]
struct DrawResiduals {
    gibbs: f64,
    spectrum: f64,
    identities: f64,
    concurrence: f64,
    tensor: f64,
    optimizer: f64,
    symmetry: f64,
    ordering: f64,
    threshold: f64,
}

fn check_draw(p: &ChainParams, t: &Temperature) -> Result<DrawResiduals> {
    let rho = thermal_state(p, t)?;
    let gibbs = rho.max_abs_diff(&gibbs_oracle(p, t)?);

    let closed = closed_form_spectrum(p)?.sorted_energies();
    let numeric = hermitian_eigen(&build_hamiltonian(p))?.eigenvalues;
    let spectrum = closed.iter().zip(numeric).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let x = thermal_coefficients(p, t)?;
    let beta = 1.0 / t.kbt();
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
    let identities = rel(x.u * x.v, 1.0)
        .max(rel(x.u + x.v + x.w1 + x.w2, x.z))
        .max(rel(x.w1 + x.w2, 2.0 * (p.eta() * beta).cosh()));

    let c_closed = concurrence_closed_form(&x).value();
    let concurrence = (c_closed - concurrence_wootters(&rho)?.value()).abs();

    let f_closed = singlet_fraction_closed_form(p, t)?;
    let tensor = (f_closed - singlet_fraction_general(&correlation_tensor(&rho)?)).abs();
    let optimizer = (f_closed - singlet_fraction_oracle(&rho, MIN_RESTARTS)?).abs();

    let mut symmetry: f64 = 0.0;
    for q in [ChainParams { b: -p.b, b1: -p.b1, ..*p }, ChainParams { j: -p.j, ..*p }] {
        let c = concurrence_closed_form(&thermal_coefficients(&q, t)?).value();
        let f = thermal_fidelity(&q, t)?;
        symmetry = symmetry
            .max((c - c_closed).abs())
            .max((f.singlet_fraction - f_closed).abs())
            .max((f.fidelity - thermal_fidelity(p, t)?.fidelity).abs());
    }

    let tc = entanglement_critical_temp(p).value;
    let tf = fidelity_critical_temp(p)?;
    let (ordering, threshold) = match tf.temperature() {
        Some(v) => {
            let below = thermal_fidelity(p, &Temperature::new(0.99 * v)?)?.fidelity;
            let above = thermal_fidelity(p, &Temperature::new(1.01 * v)?)?.fidelity;
            ((v - tc).max(0.0), (CLASSICAL_FIDELITY - below).max(above - CLASSICAL_FIDELITY))
        }
        None => (0.0, f64::NEG_INFINITY),
    };

    Ok(DrawResiduals { gibbs, spectrum, identities, concurrence, tensor, optimizer, symmetry, ordering, threshold })
}

pub fn verify_suite(seed: u64, draws: usize) -> Result<VerifyReport> {
    let points = draw_params(seed, draws);
    let per_draw = points
        .par_iter()
        .map(|(p, t)| check_draw(p, t))
        .collect::<Result<Vec<_>>>()?;

    let worst = |f: fn(&DrawResiduals) -> f64| per_draw.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    let check = |name, tolerance: f64, worst: f64, samples| CheckResult {
        name,
        passed: worst <= tolerance,
        worst_residual: worst,
        tolerance,
        samples,
    };

    let mut checks = vec![
        check("thermal-state-vs-gibbs", 1e-10, worst(|d| d.gibbs), draws),
        check("spectrum-vs-eigensolver", 1e-10, worst(|d| d.spectrum), draws),
        check("x-state-identities", 1e-10, worst(|d| d.identities), draws),
        check("concurrence-closed-vs-wootters", 1e-10, worst(|d| d.concurrence), draws),
        check("singlet-fraction-closed-vs-tensor", 1e-10, worst(|d| d.tensor), draws),
        check("singlet-fraction-closed-vs-optimizer", 1e-6, worst(|d| d.optimizer), draws),
        check("symmetry", 1e-12, worst(|d| d.symmetry), draws),
        check("fidelity-tc-not-above-entanglement-tc", 1e-9, worst(|d| d.ordering), draws),
    ];
    // Strict: f must be above 2/3 just below the critical temperature and below it just above.
    let threshold = worst(|d| d.threshold);
    checks.push(CheckResult {
        name: "fidelity-threshold-crossing",
        passed: threshold < 0.0,
        worst_residual: threshold.max(-1.0),
        tolerance: 0.0,
        samples: per_draw.iter().filter(|d| d.threshold.is_finite()).count(),
    });

    let envelopes = [0.0, 1.0, 2.0, 4.0]
        .into_iter()
        .map(|b1| {
            let env = envelope_extremum(1.0, b1)?;
            let tc = entanglement_critical_temp(&ChainParams::new(1.0, 0.0, b1)?).value;
            Ok(((env.argmax_b + 0.5 * b1).abs(), (env.max_t - tc).abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    let arg = envelopes.iter().map(|e| e.0).fold(0.0, f64::max);
    let max = envelopes.iter().map(|e| e.1).fold(0.0, f64::max);
    checks.push(check("envelope-argmax-at-minus-half-b1", 1e-4, arg, envelopes.len()));
    checks.push(check("envelope-max-equals-entanglement-tc", 1e-6, max, envelopes.len()));

    Ok(VerifyReport { seed, draws, passed: checks.iter().all(|c| c.passed), checks })
}

/// Pretty JSON with a trailing newline; identical reports give identical bytes.
pub fn report_json(report: &VerifyReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}
