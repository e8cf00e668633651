//! CSV and JSON artifacts, with readers for every format written.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::kspectrum::KappaTable;
use crate::montecarlo::{DecayFit, EntropySeries, RadialHistogram, SimOutput};

/// Significant digits kept for floats in JSON output.
pub const JSON_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaRecord {
    pub n: usize,
    pub ell: usize,
    pub kappa: f64,
    pub kappa_hat: f64,
    pub kappa_tilde: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramRecord {
    pub bin_left: f64,
    pub bin_right: f64,
    pub density: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord {
    pub time: f64,
    #[serde(rename = "H_sampled")]
    pub h_sampled: f64,
    #[serde(rename = "H_implied1")]
    pub h_implied1: f64,
    #[serde(rename = "H_implied2")]
    pub h_implied2: f64,
}

fn write_records<W: Write, T: Serialize>(w: W, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for r in rows {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

fn read_records<R: Read, T: for<'de> Deserialize<'de>>(r: R) -> Result<Vec<T>> {
    let mut csv = csv::Reader::from_reader(r);
    let rows = csv
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()?;
    Ok(rows)
}

/// Header `n,ell,kappa,kappa_hat,kappa_tilde`, rows ordered by `ell` then `n`.
pub fn write_kappa_csv<W: Write>(w: W, table: &KappaTable) -> Result<()> {
    write_records(
        w,
        table
            .iter()
            .map(|(n, ell, kappa, kappa_hat, kappa_tilde)| KappaRecord {
                n,
                ell,
                kappa,
                kappa_hat,
                kappa_tilde,
            }),
    )
}

/// Same format as [`write_kappa_csv`] for records assembled by the caller.
pub fn write_kappa_records<W: Write>(w: W, records: &[KappaRecord]) -> Result<()> {
    write_records(w, records.iter())
}

pub fn read_kappa_csv<R: Read>(r: R) -> Result<Vec<KappaRecord>> {
    read_records(r)
}

/// Header `bin_left,bin_right,density`.
pub fn write_histogram_csv<W: Write>(w: W, hist: &RadialHistogram) -> Result<()> {
    let density = hist.density()?;
    write_records(
        w,
        density.iter().enumerate().map(|(i, &d)| {
            let (bin_left, bin_right) = hist.edges(i);
            HistogramRecord {
                bin_left,
                bin_right,
                density: d,
            }
        }),
    )
}

pub fn read_histogram_csv<R: Read>(r: R) -> Result<Vec<HistogramRecord>> {
    read_records(r)
}

/// Header `time,H_sampled,H_implied1,H_implied2`.
pub fn write_entropy_csv<W: Write>(w: W, series: &EntropySeries) -> Result<()> {
    write_records(
        w,
        (0..series.times.len()).map(|i| EntropyRecord {
            time: series.times[i],
            h_sampled: series.sampled[i],
            h_implied1: series.implied1[i],
            h_implied2: series.implied2[i],
        }),
    )
}

pub fn read_entropy_csv<R: Read>(r: R) -> Result<EntropySeries> {
    let rows: Vec<EntropyRecord> = read_records(r)?;
    Ok(EntropySeries {
        times: rows.iter().map(|r| r.time).collect(),
        sampled: rows.iter().map(|r| r.h_sampled).collect(),
        implied1: rows.iter().map(|r| r.h_implied1).collect(),
        implied2: rows.iter().map(|r| r.h_implied2).collect(),
    })
}

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_sig(x, JSON_DIGITS)))
            {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// JSON value of `value` with every float rounded to [`JSON_DIGITS`]
/// significant digits.
pub fn to_json_value<T: Serialize>(value: &T) -> Result<Value> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    Ok(v)
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&to_json_value(value)?)?)
}

/// Summary written next to simulation CSVs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSummary {
    pub alpha: u32,
    pub replicas: usize,
    pub seed: u64,
    pub bins: usize,
    pub initial: String,
    pub frames: Vec<f64>,
    pub total_steps: u64,
    pub max_momentum_residual: f64,
    pub max_energy_residual: f64,
    pub entropy: EntropySeries,
    /// `None` when fewer than three entropies clear the noise floor.
    pub fit: Option<DecayFit>,
    pub histograms: Vec<String>,
}

fn marginal_name(k: usize) -> &'static str {
    ["sampled", "implied1", "implied2"][k]
}

/// Writes `hist_<frame>_<marginal>.csv` for every frame, `entropy.csv` and
/// `summary.json` into `dir`. Returns the summary.
pub fn write_simulation(dir: &Path, out: &SimOutput) -> Result<SimSummary> {
    std::fs::create_dir_all(dir)?;
    let series = out.entropy_series()?;
    let mut histograms = Vec::new();
    for (i, frame) in out.frames.iter().enumerate() {
        for (k, h) in frame.hists.iter().enumerate() {
            let name = format!("hist_{i:02}_{}.csv", marginal_name(k));
            write_histogram_csv(File::create(dir.join(&name))?, h)?;
            histograms.push(name);
        }
    }
    write_entropy_csv(File::create(dir.join("entropy.csv"))?, &series)?;
    let fit = crate::montecarlo::fit_decay_rate(&series.points()).ok();
    let cfg = &out.config;
    let summary = SimSummary {
        alpha: cfg.alpha,
        replicas: cfg.replicas,
        seed: cfg.seed,
        bins: cfg.bins,
        initial: cfg.initial.name().to_string(),
        frames: cfg.frames.clone(),
        total_steps: out.total_steps,
        max_momentum_residual: out.max_momentum_residual,
        max_energy_residual: out.max_energy_residual,
        entropy: series,
        fit,
        histograms,
    };
    std::fs::write(dir.join("summary.json"), to_json_string(&summary)?)?;
    Ok(summary)
}

pub fn read_summary(path: &Path) -> Result<SimSummary> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}
