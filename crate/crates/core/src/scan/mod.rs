//! Parameter sweeps, figure presets and the self-check suite.

mod output;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::{concurrence_closed_form, concurrence_wootters, entanglement_critical_temp};
use crate::error::{Error, Result};
use crate::model::{equilibrium_state, thermal_coefficients, ChainParams, Temperature};
use crate::teleportation::{
    correlation_tensor, fidelity_critical_temp, optimal_fidelity, singlet_fraction_closed_form,
    singlet_fraction_general,
};

pub use output::{format_number, sidecar_path, write_csv, write_scan_files, Sidecar, CSV_COLUMNS};
pub use verify::{draw_params, report_json, verify_suite, CheckResult, VerifyReport, DEFAULT_DRAWS};

/// Emitted in place of a critical temperature that does not exist.
pub const NO_CRITICAL_TEMPERATURE: f64 = -1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Param {
    #[serde(rename = "J", alias = "j")]
    J,
    #[serde(rename = "B", alias = "b")]
    B,
    #[serde(rename = "B1", alias = "b1")]
    B1,
    #[serde(rename = "kbT", alias = "kbt")]
    KbT,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::J, Param::B, Param::B1, Param::KbT];

    pub fn name(self) -> &'static str {
        match self {
            Param::J => "J",
            Param::B => "B",
            Param::B1 => "B1",
            Param::KbT => "kbT",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Observable {
    Concurrence,
    Fidelity,
    SingletFraction,
    CriticalTempEntanglement,
    CriticalTempFidelity,
}

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Observable::Concurrence => "concurrence",
            Observable::Fidelity => "fidelity",
            Observable::SingletFraction => "singletFraction",
            Observable::CriticalTempEntanglement => "criticalTempEntanglement",
            Observable::CriticalTempFidelity => "criticalTempFidelity",
        }
    }

    fn required(self) -> &'static [Param] {
        match self {
            Observable::Concurrence | Observable::Fidelity | Observable::SingletFraction => &Param::ALL,
            Observable::CriticalTempEntanglement => &[Param::J, Param::B1],
            Observable::CriticalTempFidelity => &[Param::J, Param::B, Param::B1],
        }
    }

    fn is_critical(self) -> bool {
        matches!(self, Observable::CriticalTempEntanglement | Observable::CriticalTempFidelity)
    }

    /// Value at one parameter point. `kbt` is ignored by critical temperatures.
    pub fn evaluate(self, p: &ChainParams, kbt: f64) -> Result<f64> {
        match self {
            Observable::CriticalTempEntanglement => {
                Ok(entanglement_critical_temp(p).temperature().unwrap_or(NO_CRITICAL_TEMPERATURE))
            }
            Observable::CriticalTempFidelity => {
                Ok(fidelity_critical_temp(p)?.temperature().unwrap_or(NO_CRITICAL_TEMPERATURE))
            }
            Observable::Concurrence => {
                let t = Temperature::new(kbt)?;
                if p.j != 0.0 && !t.is_ground() {
                    Ok(concurrence_closed_form(&thermal_coefficients(p, &t)?).value())
                } else {
                    Ok(concurrence_wootters(&equilibrium_state(p, &t)?)?.value())
                }
            }
            Observable::SingletFraction => singlet_fraction_at(p, kbt),
            Observable::Fidelity => optimal_fidelity(singlet_fraction_at(p, kbt)?),
        }
    }
}

fn singlet_fraction_at(p: &ChainParams, kbt: f64) -> Result<f64> {
    let t = Temperature::new(kbt)?;
    if p.j != 0.0 && !t.is_ground() {
        singlet_fraction_closed_form(p, &t)
    } else {
        Ok(singlet_fraction_general(&correlation_tensor(&equilibrium_state(p, &t)?)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: Param,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(name: Param, lo: f64, hi: f64, points: usize) -> Self {
        Self { name, lo, hi, points }
    }

    /// Evenly spaced, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        let step = (self.hi - self.lo) / (n - 1) as f64;
        (0..n)
            .map(|i| if i + 1 == n { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub observable: Observable,
    #[serde(default)]
    pub fixed: BTreeMap<Param, f64>,
    pub axes: Vec<Axis>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    /// Axis values in declared order.
    pub coords: Vec<f64>,
    pub value: f64,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.axes.is_empty() {
            problems.push("axes: at least one axis is required".to_string());
        }
        if self.axes.len() > 2 {
            problems.push(format!("axes: at most two axes are supported, got {}", self.axes.len()));
        }
        for (i, a) in self.axes.iter().enumerate() {
            if a.points < 2 {
                problems.push(format!("axes[{i}].points: need at least 2, got {}", a.points));
            }
            if !(a.lo.is_finite() && a.hi.is_finite()) || a.lo >= a.hi {
                problems.push(format!("axes[{i}]: need finite lo < hi, got [{}, {}]", a.lo, a.hi));
            }
            if self.fixed.contains_key(&a.name) {
                problems.push(format!("axes[{i}].name: {} is also fixed", a.name));
            }
            if self.axes[..i].iter().any(|b| b.name == a.name) {
                problems.push(format!("axes[{i}].name: {} declared twice", a.name));
            }
            if a.name == Param::KbT && a.lo < 0.0 {
                problems.push(format!("axes[{i}].lo: kbT must be nonnegative, got {}", a.lo));
            }
        }
        for (name, value) in &self.fixed {
            if !value.is_finite() {
                problems.push(format!("fixed.{name}: not finite"));
            }
            if *name == Param::KbT && *value < 0.0 {
                problems.push(format!("fixed.kbT: must be nonnegative, got {value}"));
            }
        }
        for &name in self.observable.required() {
            if !self.fixed.contains_key(&name) && !self.axes.iter().any(|a| a.name == name) {
                problems.push(format!("{name}: required by {} but neither fixed nor an axis", self.observable.name()));
            }
        }
        if self.observable.is_critical() && self.is_declared(Param::KbT) {
            problems.push(format!("kbT: not an input of {}", self.observable.name()));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(problems))
        }
    }

    pub fn is_declared(&self, p: Param) -> bool {
        self.fixed.contains_key(&p) || self.axes.iter().any(|a| a.name == p)
    }

    pub fn row_count(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    /// Parameter values for every row, first axis outermost.
    fn grid(&self) -> Vec<Vec<f64>> {
        let values: Vec<Vec<f64>> = self.axes.iter().map(Axis::values).collect();
        let mut rows = vec![Vec::new()];
        for vs in &values {
            rows = rows
                .into_iter()
                .flat_map(|prefix| {
                    vs.iter().map(move |&v| {
                        let mut r = prefix.clone();
                        r.push(v);
                        r
                    })
                })
                .collect();
        }
        rows
    }

    /// Full parameter assignment for a row; undeclared parameters are absent.
    pub fn assignment(&self, coords: &[f64]) -> BTreeMap<Param, f64> {
        let mut m = self.fixed.clone();
        for (a, &v) in self.axes.iter().zip(coords) {
            m.insert(a.name, v);
        }
        m
    }
}

pub fn run_scan(spec: &ScanSpec) -> Result<Vec<ScanRow>> {
    spec.validate()?;
    spec.grid()
        .into_par_iter()
        .map(|coords| {
            let a = spec.assignment(&coords);
            let get = |p: Param| a.get(&p).copied().unwrap_or(0.0);
            let params = ChainParams::new(get(Param::J), get(Param::B), get(Param::B1))?;
            let value = spec.observable.evaluate(&params, get(Param::KbT))?;
            Ok(ScanRow { coords, value })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigurePreset {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 4] = [FigurePreset::Fig1a, FigurePreset::Fig1b, FigurePreset::Fig2, FigurePreset::Fig3];

    pub fn id(self) -> &'static str {
        match self {
            FigurePreset::Fig1a => "fig1a",
            FigurePreset::Fig1b => "fig1b",
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
        }
    }

    pub fn specs(self) -> Vec<ScanSpec> {
        let fixed = |kv: &[(Param, f64)]| kv.iter().copied().collect::<BTreeMap<_, _>>();
        let kbt = |hi: f64, n: usize| Axis::new(Param::KbT, 0.02, hi, n);
        match self {
            FigurePreset::Fig1a => vec![ScanSpec {
                observable: Observable::Concurrence,
                fixed: fixed(&[(Param::J, 1.0), (Param::B1, 0.0)]),
                axes: vec![kbt(2.0, 81), Axis::new(Param::B, -2.0, 2.0, 81)],
            }],
            FigurePreset::Fig1b => vec![ScanSpec {
                observable: Observable::Concurrence,
                fixed: fixed(&[(Param::J, 1.0), (Param::B, 0.0)]),
                axes: vec![kbt(2.0, 81), Axis::new(Param::B1, -2.0, 2.0, 81)],
            }],
            FigurePreset::Fig2 => [(-1.0, 2.0), (0.0, 2.0), (-0.5, 0.0), (0.0, 0.0)]
                .into_iter()
                .map(|(b, b1)| ScanSpec {
                    observable: Observable::Fidelity,
                    fixed: fixed(&[(Param::J, 1.0), (Param::B, b), (Param::B1, b1)]),
                    axes: vec![kbt(3.0, 300)],
                })
                .collect(),
            FigurePreset::Fig3 => {
                let b1_axis = || vec![Axis::new(Param::B1, 0.0, 6.0, 121)];
                let mut specs = vec![ScanSpec {
                    observable: Observable::CriticalTempEntanglement,
                    fixed: fixed(&[(Param::J, 1.0)]),
                    axes: b1_axis(),
                }];
                specs.extend([0.0, -1.0, -2.0, -3.0, -4.0].into_iter().map(|b| ScanSpec {
                    observable: Observable::CriticalTempFidelity,
                    fixed: fixed(&[(Param::J, 1.0), (Param::B, b)]),
                    axes: b1_axis(),
                }));
                specs
            }
        }
    }
}

impl std::str::FromStr for FigurePreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

pub fn figure_preset(id: &str) -> Result<Vec<ScanSpec>> {
    Ok(id.parse::<FigurePreset>()?.specs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(observable: Observable, fixed: &[(Param, f64)], axes: Vec<Axis>) -> ScanSpec {
        ScanSpec { observable, fixed: fixed.iter().copied().collect(), axes }
    }

    #[test]
    fn concurrence_rows() {
        let s = spec(
            Observable::Concurrence,
            &[(Param::J, 1.0), (Param::B1, 0.0), (Param::B, 0.0)],
            vec![Axis::new(Param::KbT, 0.1, 2.0, 3)],
        );
        let rows = run_scan(&s).unwrap();
        let kbts: Vec<f64> = rows.iter().map(|r| r.coords[0]).collect();
        assert_eq!(kbts, vec![0.1, 1.05, 2.0]);
        // 2 (sinh(10) - 1) / (2 + 2 cosh(10)) and zero above the critical temperature.
        let c0 = 2.0 * (10f64.sinh() - 1.0) / (2.0 + 2.0 * 10f64.cosh());
        assert!((rows[0].value - c0).abs() < 1e-15);
        assert!((rows[0].value - 0.99981841).abs() < 1e-8);
        let b: f64 = 1.0 / 1.05;
        let c1 = 2.0 * (b.sinh() - 1.0) / (2.0 + 2.0 * b.cosh());
        assert!((rows[1].value - c1).abs() < 1e-15);
        assert!((rows[1].value - 0.04139509).abs() < 1e-8);
        assert_eq!(rows[2].value, 0.0);
    }

    #[test]
    fn fidelity_first_row() {
        let s = spec(
            Observable::Fidelity,
            &[(Param::J, 1.0), (Param::B, 0.0), (Param::B1, 0.0)],
            vec![Axis::new(Param::KbT, 0.5, 1.0, 2)],
        );
        let rows = run_scan(&s).unwrap();
        assert!((rows[0].value - 0.850536).abs() < 1e-6);
    }

    #[test]
    fn empty_axes_rejected() {
        let s = spec(Observable::Concurrence, &Param::ALL.map(|p| (p, 1.0)), vec![]);
        assert!(matches!(run_scan(&s), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn validation_lists_every_problem() {
        let s = spec(
            Observable::CriticalTempFidelity,
            &[(Param::J, 1.0), (Param::B1, 0.0)],
            vec![Axis::new(Param::B1, 1.0, 0.0, 1), Axis::new(Param::KbT, 0.1, 1.0, 3)],
        );
        match s.validate() {
            Err(Error::InvalidSpec(p)) => {
                assert!(p.iter().any(|m| m.contains("points")));
                assert!(p.iter().any(|m| m.contains("lo < hi")));
                assert!(p.iter().any(|m| m.contains("also fixed")));
                assert!(p.iter().any(|m| m.starts_with("B:")));
                assert!(p.iter().any(|m| m.starts_with("kbT: not an input")));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn row_major_order() {
        let s = spec(
            Observable::Concurrence,
            &[(Param::J, 1.0), (Param::B1, 0.0)],
            vec![Axis::new(Param::KbT, 0.5, 1.0, 2), Axis::new(Param::B, -1.0, 1.0, 3)],
        );
        let rows = run_scan(&s).unwrap();
        assert_eq!(rows.len(), s.row_count());
        let coords: Vec<Vec<f64>> = rows.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(
            coords,
            vec![
                vec![0.5, -1.0],
                vec![0.5, 0.0],
                vec![0.5, 1.0],
                vec![1.0, -1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0]
            ]
        );
    }

    #[test]
    fn presets_expand_as_described() {
        assert_eq!(figure_preset("fig1a").unwrap().len(), 1);
        assert_eq!(figure_preset("fig1a").unwrap()[0].axes.len(), 2);
        assert_eq!(figure_preset("fig1b").unwrap()[0].row_count(), 81 * 81);
        assert_eq!(figure_preset("fig2").unwrap().len(), 4);
        let fig3 = figure_preset("fig3").unwrap();
        assert_eq!(fig3.len(), 6);
        assert_eq!(fig3[0].observable, Observable::CriticalTempEntanglement);
        assert!(fig3[1..].iter().all(|s| s.observable == Observable::CriticalTempFidelity));
        assert_eq!(figure_preset("fig2").unwrap(), figure_preset("fig2").unwrap());
        assert!(matches!(figure_preset("fig4"), Err(Error::UnknownPreset(_))));
        for p in FigurePreset::ALL {
            for s in p.specs() {
                s.validate().unwrap();
            }
        }
    }

    #[test]
    fn sentinel_only_for_missing_critical_temperatures() {
        let s = spec(
            Observable::CriticalTempFidelity,
            &[(Param::J, 1.0), (Param::B, -4.0)],
            vec![Axis::new(Param::B1, 0.0, 6.0, 121)],
        );
        for row in run_scan(&s).unwrap() {
            let b1 = row.coords[0];
            let exists = (-4.0 + 0.5 * b1).abs() < 1f64.hypot(0.5 * b1);
            if exists {
                assert!(row.value > 0.0);
            } else {
                assert_eq!(row.value, NO_CRITICAL_TEMPERATURE);
            }
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"observable":"criticalTempFidelity","fixed":{"J":1,"B":-1},
                       "axes":[{"name":"B1","lo":0,"hi":4,"points":5}]}"#;
        let s: ScanSpec = serde_json::from_str(json).unwrap();
        assert_eq!(s.fixed[&Param::B], -1.0);
        let back: ScanSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn zero_coupling_and_zero_temperature_points() {
        assert_eq!(Observable::Concurrence.evaluate(&ChainParams::new(0.0, 1.0, 0.0).unwrap(), 0.5).unwrap(), 0.0);
        let c = Observable::Concurrence.evaluate(&ChainParams::new(1.0, 0.0, 0.0).unwrap(), 0.0).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
        let f = Observable::Fidelity.evaluate(&ChainParams::new(1.0, 0.0, 0.0).unwrap(), 0.0).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }
}
