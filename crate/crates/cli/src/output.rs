//! Serialization: CSV with 4-decimal energies and a stable column order, or
//! JSON with full precision. Identical inputs produce identical bytes.

use crate::run::{CompareReport, SpectrumRow, TableRow, WavefunctionOutput};
use crate::FormatArg;
use anyhow::Result;
use cwkb_core::reference::TableId;
use std::io::Write;
use std::path::Path;

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    match out {
        Some(p) => Ok(Box::new(std::fs::File::create(p)?)),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn fmt4(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4}")).unwrap_or_default()
}

fn fmt5(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.5}")).unwrap_or_default()
}

pub fn write_spectrum(rows: &[SpectrumRow], format: FormatArg, out: Option<&Path>) -> Result<()> {
    let mut w = sink(out)?;
    match format {
        FormatArg::Csv => {
            writeln!(w, "r0,method,energy,regime,residual,warnings,error")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    r.r0,
                    r.method,
                    fmt4(r.energy),
                    r.regime.unwrap_or(""),
                    r.residual.map(|x| format!("{x:.3e}")).unwrap_or_default(),
                    r.warnings,
                    r.error.as_deref().unwrap_or("")
                )?;
            }
        }
        FormatArg::Json => {
            writeln!(w, "{}", serde_json::to_string_pretty(rows)?)?;
        }
    }
    Ok(())
}

pub fn write_table(
    id: TableId,
    rows: &[TableRow],
    format: FormatArg,
    out: Option<&Path>,
) -> Result<()> {
    let mut w = sink(out)?;
    match format {
        FormatArg::Csv => {
            match id {
                TableId::I => {
                    writeln!(w, "r0,E,E_WKB,E_var,E_exact,flags")?;
                    for r in rows {
                        writeln!(
                            w,
                            "{},{},{},{},{},{}",
                            r.r0,
                            fmt4(r.e),
                            fmt4(r.e_wkb),
                            fmt4(r.e_var),
                            fmt4(r.e_exact),
                            r.flags
                        )?;
                    }
                }
                TableId::II | TableId::III => {
                    writeln!(w, "r0,E,E_WKB,E_var,E_Varshni,E_exact,flags")?;
                    for r in rows {
                        writeln!(
                            w,
                            "{},{},{},{},{},{},{}",
                            r.r0,
                            fmt4(r.e),
                            fmt4(r.e_wkb),
                            fmt4(r.e_var),
                            fmt4(r.e_varshni),
                            fmt4(r.e_exact),
                            r.flags
                        )?;
                    }
                }
                TableId::IV | TableId::V => {
                    writeln!(w, "r0,state,nr,l,E,E_exact,E_1N,flags")?;
                    for r in rows {
                        writeln!(
                            w,
                            "{},{},{},{},{},{},{},{}",
                            r.r0,
                            r.state,
                            r.nr,
                            r.l,
                            fmt5(r.e),
                            fmt5(r.e_exact),
                            fmt5(r.e_one_over_n),
                            r.flags
                        )?;
                    }
                }
            }
            let errors: Vec<&TableRow> = rows.iter().filter(|r| r.error.is_some()).collect();
            for r in errors {
                writeln!(w, "# error at r0={}: {}", r.r0, r.error.as_deref().unwrap())?;
            }
        }
        FormatArg::Json => {
            writeln!(w, "{}", serde_json::to_string_pretty(rows)?)?;
        }
    }
    Ok(())
}

pub fn write_wavefunction(
    output: &WavefunctionOutput,
    format: FormatArg,
    out: Option<&Path>,
) -> Result<()> {
    let mut w = sink(out)?;
    match format {
        FormatArg::Csv => {
            writeln!(w, "# method={} energy={}", output.method, output.energy)?;
            writeln!(w, "# r1={}", output.trace.r1)?;
            if let Some(r2) = output.trace.r2 {
                writeln!(w, "# r2={r2}")?;
            }
            if output.trace.band_half_width > 0.0 {
                writeln!(
                    w,
                    "# excluded bands of half-width {:.6} around the turning points",
                    output.trace.band_half_width
                )?;
            }
            writeln!(w, "r,psi,region")?;
            for s in &output.trace.samples {
                writeln!(w, "{:.6},{:.6e},{}", s.r, s.psi, s.region.name())?;
            }
        }
        FormatArg::Json => {
            #[derive(serde::Serialize)]
            struct JsonSample {
                r: f64,
                psi: f64,
                region: &'static str,
            }
            #[derive(serde::Serialize)]
            struct JsonTrace {
                method: &'static str,
                energy: f64,
                r1: f64,
                r2: Option<f64>,
                band_half_width: f64,
                samples: Vec<JsonSample>,
            }
            let t = JsonTrace {
                method: output.method,
                energy: output.energy,
                r1: output.trace.r1,
                r2: output.trace.r2,
                band_half_width: output.trace.band_half_width,
                samples: output
                    .trace
                    .samples
                    .iter()
                    .map(|s| JsonSample { r: s.r, psi: s.psi, region: s.region.name() })
                    .collect(),
            };
            writeln!(w, "{}", serde_json::to_string_pretty(&t)?)?;
        }
    }
    Ok(())
}

pub fn write_compare(report: &CompareReport, format: FormatArg, out: Option<&Path>) -> Result<()> {
    let mut w = sink(out)?;
    match format {
        FormatArg::Csv => {
            writeln!(
                w,
                "table,r0,state,E_perturbative,E_langer,E_exact,delta_perturbative,delta_langer,closer,starred"
            )?;
            for r in &report.rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.table,
                    r.r0,
                    r.state,
                    fmt4(r.e_perturbative),
                    fmt4(r.e_langer),
                    fmt4(r.e_exact),
                    fmt5(r.delta_perturbative),
                    fmt5(r.delta_langer),
                    r.closer.unwrap_or(""),
                    r.starred
                )?;
            }
            writeln!(
                w,
                "# non-starred rows: perturbative closer in {} of {}, langer in {}",
                report.perturbative_wins,
                report.perturbative_wins + report.langer_wins,
                report.langer_wins
            )?;
        }
        FormatArg::Json => {
            writeln!(w, "{}", serde_json::to_string_pretty(report)?)?;
        }
    }
    Ok(())
}
