//! CSV rendering and the JSON sidecar written next to every scan.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{run_scan, Param, ScanRow, ScanSpec, NO_CRITICAL_TEMPERATURE};
use crate::error::Result;

pub const CSV_COLUMNS: [&str; 7] = ["series", "observable", "J", "B", "B1", "kbT", "value"];

const MIN_SIGNIFICANT: usize = 9;

/// Shortest round-trip digits, padded to at least nine significant digits.
///
/// Plain notation for exponents in [-5, 15), scientific otherwise.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let shortest = format!("{x:e}");
    let (mantissa, _) = shortest.split_once('e').expect("exponent marker");
    let digits = mantissa.chars().filter(char::is_ascii_digit).count();
    let precision = digits.max(MIN_SIGNIFICANT) - 1;
    let sci = format!("{x:.precision$e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        return sci;
    }
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    } else {
        let int_len = exp as usize + 1;
        if digits.len() <= int_len {
            out.push_str(&digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    }
    out
}

/// Long-format CSV: one line per row with every declared parameter; parameters
/// a series does not use are left empty.
pub fn write_csv<W: Write>(out: W, runs: &[(ScanSpec, Vec<ScanRow>)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for (series, (spec, rows)) in runs.iter().enumerate() {
        for row in rows {
            let a = spec.assignment(&row.coords);
            let mut record = vec![series.to_string(), spec.observable.name().to_string()];
            record.extend(Param::ALL.iter().map(|p| a.get(p).map(|&v| format_number(v)).unwrap_or_default()));
            record.push(format_number(row.value));
            w.write_record(&record)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct Sentinel {
    pub value: f64,
    pub meaning: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sidecar {
    pub library: &'static str,
    pub version: &'static str,
    pub preset: Option<String>,
    pub seed: Option<u64>,
    pub units: &'static str,
    pub columns: Vec<&'static str>,
    pub sentinel: Sentinel,
    pub rows: usize,
    pub specs: Vec<ScanSpec>,
}

impl Sidecar {
    pub fn new(preset: Option<&str>, runs: &[(ScanSpec, Vec<ScanRow>)]) -> Self {
        Self {
            library: "xxchain",
            version: crate::VERSION,
            preset: preset.map(str::to_string),
            seed: None,
            units: "k_B = 1; J, B, B1 and kbT share one energy unit",
            columns: CSV_COLUMNS.to_vec(),
            sentinel: Sentinel {
                value: NO_CRITICAL_TEMPERATURE,
                meaning: "critical temperature does not exist for these parameters",
            },
            rows: runs.iter().map(|(_, r)| r.len()).sum(),
            specs: runs.iter().map(|(s, _)| s.clone()).collect(),
        }
    }
}

/// `out.csv` -> `out.json`; a path already ending in `.json` gets `.meta.json`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    match csv_path.extension().and_then(|e| e.to_str()) {
        Some("json") => csv_path.with_extension("meta.json"),
        _ => csv_path.with_extension("json"),
    }
}

/// Runs every spec and writes the CSV plus its sidecar. Returns the sidecar path.
pub fn write_scan_files(specs: &[ScanSpec], preset: Option<&str>, csv_path: &Path) -> Result<PathBuf> {
    let runs = specs
        .iter()
        .map(|s| Ok((s.clone(), run_scan(s)?)))
        .collect::<Result<Vec<_>>>()?;
    write_csv(BufWriter::new(File::create(csv_path)?), &runs)?;
    let meta = sidecar_path(csv_path);
    let mut f = BufWriter::new(File::create(&meta)?);
    serde_json::to_writer_pretty(&mut f, &Sidecar::new(preset, &runs))?;
    writeln!(f)?;
    f.flush()?;
    Ok(meta)
}
