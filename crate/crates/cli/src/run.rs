//! Command execution: drives the solvers and assembles typed row data that
//! the output module serializes.

use crate::{MethodArg, ModelArgs, SolverArgs};
use anyhow::Result;
use cwkb_core::oracle::{solve_exact, NumerovConfig};
use cwkb_core::reference::{ReferenceRow, ReferenceTable, TableId};
use cwkb_core::wkb::{
    build_wavefunction_with, solve_energy, Method, QuantumNumbers, SearchParams, WavefunctionTrace,
};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct SpectrumRow {
    pub r0: f64,
    pub method: &'static str,
    pub energy: Option<f64>,
    pub regime: Option<&'static str>,
    pub residual: Option<f64>,
    pub warnings: String,
    pub error: Option<String>,
}

fn search_params(solver: &SolverArgs) -> SearchParams {
    SearchParams { rel_tol: solver.rel_tol(), ..SearchParams::default() }
}

fn numerov_config(solver: &SolverArgs) -> NumerovConfig {
    NumerovConfig { grid_points: solver.grid_points, ..NumerovConfig::default() }
}

fn solve_one(
    system: &cwkb_core::potentials::ConfinedSystem,
    qn: QuantumNumbers,
    method: Method,
    solver: &SolverArgs,
) -> std::result::Result<cwkb_core::wkb::EnergyResult, cwkb_core::CwkbError> {
    match method {
        Method::Exact => solve_exact(system, qn, &numerov_config(solver), None),
        m => solve_energy(system, qn, m, search_params(solver)),
    }
}

pub fn spectrum(
    model: &ModelArgs,
    r0s: &[f64],
    methods: &[MethodArg],
    solver: &SolverArgs,
) -> Result<Vec<SpectrumRow>> {
    let qn = QuantumNumbers::new(model.nr, model.l);
    let mut ordered: Vec<MethodArg> = methods.to_vec();
    ordered.sort_by_key(|m| m.to_method().name());
    ordered.dedup();
    let mut rows = Vec::new();
    for &r0 in r0s {
        let system = model.system(r0)?;
        for m in &ordered {
            let method = m.to_method();
            match solve_one(&system, qn, method, solver) {
                Ok(res) => rows.push(SpectrumRow {
                    r0,
                    method: method.name(),
                    energy: Some(res.energy),
                    regime: Some(res.regime.name()),
                    residual: Some(res.residual),
                    warnings: if res.near_wall_warning {
                        "near-turning-point".into()
                    } else {
                        String::new()
                    },
                    error: None,
                }),
                Err(e) => rows.push(SpectrumRow {
                    r0,
                    method: method.name(),
                    energy: None,
                    regime: None,
                    residual: None,
                    warnings: String::new(),
                    error: Some(e.to_string()),
                }),
            }
        }
    }
    Ok(rows)
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub r0: f64,
    pub state: String,
    pub nr: u32,
    pub l: u32,
    /// Computed perturbative energy.
    pub e: Option<f64>,
    /// Computed Langer energy (tables I-III only).
    pub e_wkb: Option<f64>,
    /// Computed exact energy (tables I-III); literature constant for IV-V.
    pub e_exact: Option<f64>,
    /// Literature constants echoed as published.
    pub e_var: Option<f64>,
    pub e_varshni: Option<f64>,
    pub e_one_over_n: Option<f64>,
    pub flags: String,
    pub error: Option<String>,
}

fn row_flags(row: &ReferenceRow) -> String {
    let mut flags = Vec::new();
    if row.starred_perturbative || row.starred_langer {
        flags.push("near-turning-point");
    }
    if row.exact_corrected {
        flags.push("exact-literature-corrected");
    }
    flags.join(";")
}

pub fn table(id: TableId, solver: &SolverArgs) -> Result<Vec<TableRow>> {
    let table = ReferenceTable::get(id);
    let computed_exact = matches!(id, TableId::I | TableId::II | TableId::III);
    let langer_column = computed_exact;
    let mut rows = Vec::new();
    for r in &table.rows {
        let system = table.system(r);
        let qn = r.quantum_numbers();
        let mut error: Option<String> = None;
        let mut run = |method: Method| -> Option<f64> {
            match solve_one(&system, qn, method, solver) {
                Ok(res) => Some(res.energy),
                Err(e) => {
                    error.get_or_insert_with(|| format!("{}: {e}", method.name()));
                    None
                }
            }
        };
        let e = run(Method::Perturbative);
        let e_wkb = if langer_column { run(Method::Langer) } else { None };
        let e_exact = if computed_exact { run(Method::Exact) } else { r.e_exact };
        rows.push(TableRow {
            r0: r.r0,
            state: qn.label(),
            nr: r.nr,
            l: r.l,
            e,
            e_wkb,
            e_exact,
            e_var: r.e_variational,
            e_varshni: r.e_varshni,
            e_one_over_n: r.e_one_over_n,
            flags: row_flags(r),
            error,
        });
    }
    Ok(rows)
}

pub struct WavefunctionOutput {
    pub trace: WavefunctionTrace,
    pub energy: f64,
    pub method: &'static str,
}

pub fn wavefunction(
    model: &ModelArgs,
    r0: f64,
    samples: usize,
    method: MethodArg,
    solver: &SolverArgs,
) -> Result<WavefunctionOutput> {
    let system = model.system(r0)?;
    let qn = QuantumNumbers::new(model.nr, model.l);
    let method = method.to_method();
    match method {
        Method::Exact => {
            let res = solve_exact(&system, qn, &numerov_config(solver), None)?;
            let pts = cwkb_core::oracle::wavefunction_samples(
                &system,
                res.energy,
                &numerov_config(solver),
                samples,
            )?;
            let tp = system.turning_points(res.energy);
            let samples = pts
                .into_iter()
                .map(|(r, psi)| {
                    let region = if r < tp.r1 {
                        cwkb_core::wkb::RegionTag::I
                    } else {
                        match tp.r2 {
                            Some(r2) if r > r2 => cwkb_core::wkb::RegionTag::III,
                            _ => cwkb_core::wkb::RegionTag::II,
                        }
                    };
                    cwkb_core::wkb::WavefunctionSample { r, psi, region }
                })
                .collect();
            Ok(WavefunctionOutput {
                trace: WavefunctionTrace {
                    samples,
                    r1: tp.r1,
                    r2: tp.r2,
                    band_half_width: 0.0,
                },
                energy: res.energy,
                method: method.name(),
            })
        }
        m => {
            let res = solve_energy(&system, qn, m, search_params(solver))?;
            let trace = build_wavefunction_with(&system, qn, res.energy, samples, m)?;
            Ok(WavefunctionOutput { trace, energy: res.energy, method: method.name() })
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CompareRow {
    pub table: &'static str,
    pub r0: f64,
    pub state: String,
    pub e_perturbative: Option<f64>,
    pub e_langer: Option<f64>,
    pub e_exact: Option<f64>,
    pub delta_perturbative: Option<f64>,
    pub delta_langer: Option<f64>,
    /// Which method lands closer to the exact energy.
    pub closer: Option<&'static str>,
    pub starred: bool,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    /// Win counts over non-starred rows; ties count for the perturbative
    /// method, matching the "at least as close" reading.
    pub perturbative_wins: usize,
    pub langer_wins: usize,
}

pub fn compare(ids: &[TableId], solver: &SolverArgs) -> Result<CompareReport> {
    let mut rows = Vec::new();
    let mut pert_wins = 0usize;
    let mut langer_wins = 0usize;
    for &id in ids {
        let table = ReferenceTable::get(id);
        for r in &table.rows {
            let system = table.system(r);
            let qn = r.quantum_numbers();
            let mut error: Option<String> = None;
            let mut run = |method: Method| -> Option<f64> {
                match solve_one(&system, qn, method, solver) {
                    Ok(res) => Some(res.energy),
                    Err(e) => {
                        error.get_or_insert_with(|| format!("{}: {e}", method.name()));
                        None
                    }
                }
            };
            let p = run(Method::Perturbative);
            let w = run(Method::Langer);
            let x = run(Method::Exact);
            let dp = match (p, x) {
                (Some(p), Some(x)) => Some(p - x),
                _ => None,
            };
            let dw = match (w, x) {
                (Some(w), Some(x)) => Some(w - x),
                _ => None,
            };
            let closer = match (dp, dw) {
                (Some(dp), Some(dw)) => {
                    Some(if dp.abs() <= dw.abs() { "perturbative" } else { "langer" })
                }
                _ => None,
            };
            let starred = r.starred_perturbative || r.starred_langer;
            if !starred {
                match closer {
                    Some("perturbative") => pert_wins += 1,
                    Some("langer") => langer_wins += 1,
                    _ => {}
                }
            }
            rows.push(CompareRow {
                table: id.name(),
                r0: r.r0,
                state: qn.label(),
                e_perturbative: p,
                e_langer: w,
                e_exact: x,
                delta_perturbative: dp,
                delta_langer: dw,
                closer,
                starred,
                error,
            });
        }
    }
    Ok(CompareReport { rows, perturbative_wins: pert_wins, langer_wins })
}
