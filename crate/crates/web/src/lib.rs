//! Browser demo bindings: three interactive operations over the core solver,
//! exported through wasm-bindgen as JSON-in/JSON-out functions. All DOM and
//! canvas work lives in the static page; this crate only computes.

use cwkb_core::oracle::{self, NumerovConfig};
use cwkb_core::potentials::{ConfinedSystem, PotentialModel};
use cwkb_core::wkb::{build_wavefunction_with, solve_energy, Method, QuantumNumbers, SearchParams};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn model_from(potential: &str, delta: f64) -> Result<PotentialModel, String> {
    match potential {
        "ho" => Ok(PotentialModel::harmonic_oscillator()),
        "hydrogen" => Ok(PotentialModel::hydrogen()),
        "hulthen" => {
            if delta > 0.0 {
                Ok(PotentialModel::hulthen(delta))
            } else {
                Err(format!("hulthen needs a positive delta, got {delta}"))
            }
        }
        other => Err(format!("unknown potential '{other}'")),
    }
}

fn method_from(name: &str) -> Result<Method, String> {
    match name {
        "perturbative" => Ok(Method::Perturbative),
        "langer" => Ok(Method::Langer),
        "exact" => Ok(Method::Exact),
        other => Err(format!("unknown method '{other}'")),
    }
}

fn err_json(msg: &str) -> String {
    #[derive(Serialize)]
    struct E<'a> {
        error: &'a str,
    }
    serde_json::to_string(&E { error: msg }).unwrap()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| err_json(&e.to_string()))
}

#[derive(Serialize)]
struct SpectrumPoint {
    r0: f64,
    method: &'static str,
    energy: Option<f64>,
    regime: Option<&'static str>,
    near_wall: bool,
    error: Option<String>,
}

fn solve_any(
    system: &ConfinedSystem,
    qn: QuantumNumbers,
    method: Method,
) -> Result<cwkb_core::wkb::EnergyResult, cwkb_core::CwkbError> {
    match method {
        Method::Exact => oracle::solve_exact(system, qn, &NumerovConfig::default(), None),
        m => solve_energy(system, qn, m, SearchParams::default()),
    }
}

/// Eigenvalue vs confinement radius for the selected methods
/// (comma-separated, e.g. "perturbative,exact").
#[wasm_bindgen]
pub fn spectrum_curve(
    potential: &str,
    delta: f64,
    l: u32,
    nr: u32,
    r0_min: f64,
    r0_max: f64,
    points: usize,
    methods: &str,
) -> String {
    let model = match model_from(potential, delta) {
        Ok(m) => m,
        Err(e) => return err_json(&e),
    };
    if !(r0_min > 0.0 && r0_max > r0_min) {
        return err_json("need 0 < r0_min < r0_max");
    }
    let points = points.clamp(2, 200);
    let methods: Vec<Method> = match methods
        .split(',')
        .filter(|s| !s.is_empty())
        .map(method_from)
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(v) if !v.is_empty() => v,
        Ok(_) => return err_json("no methods selected"),
        Err(e) => return err_json(&e),
    };
    let qn = QuantumNumbers::new(nr, l);
    let mut rows = Vec::new();
    for i in 0..points {
        let r0 = r0_min + (r0_max - r0_min) * i as f64 / (points - 1) as f64;
        let system = match ConfinedSystem::new(model, l, r0) {
            Ok(s) => s,
            Err(e) => return err_json(&e.to_string()),
        };
        for &m in &methods {
            match solve_any(&system, qn, m) {
                Ok(res) => rows.push(SpectrumPoint {
                    r0,
                    method: m.name(),
                    energy: Some(res.energy),
                    regime: Some(res.regime.name()),
                    near_wall: res.near_wall_warning,
                    error: None,
                }),
                Err(e) => rows.push(SpectrumPoint {
                    r0,
                    method: m.name(),
                    energy: None,
                    regime: None,
                    near_wall: false,
                    error: Some(e.to_string()),
                }),
            }
        }
    }
    json(&rows)
}

#[derive(Serialize)]
struct WavePoint {
    r: f64,
    psi: f64,
    region: &'static str,
}

#[derive(Serialize)]
struct WaveResponse {
    energy: f64,
    method: &'static str,
    r1: f64,
    r2: Option<f64>,
    samples: Vec<WavePoint>,
}

/// Sampled radial wavefunction of the converged state.
#[wasm_bindgen]
pub fn wavefunction_trace(
    potential: &str,
    delta: f64,
    l: u32,
    nr: u32,
    r0: f64,
    method: &str,
    samples: usize,
) -> String {
    let model = match model_from(potential, delta) {
        Ok(m) => m,
        Err(e) => return err_json(&e),
    };
    let method = match method_from(method) {
        Ok(m) => m,
        Err(e) => return err_json(&e),
    };
    let system = match ConfinedSystem::new(model, l, r0) {
        Ok(s) => s,
        Err(e) => return err_json(&e.to_string()),
    };
    let qn = QuantumNumbers::new(nr, l);
    let samples = samples.clamp(16, 4000);

    let result = match solve_any(&system, qn, method) {
        Ok(r) => r,
        Err(e) => return err_json(&e.to_string()),
    };
    let tp = system.turning_points(result.energy);
    let pts: Result<Vec<WavePoint>, String> = match method {
        Method::Exact => {
            oracle::wavefunction_samples(&system, result.energy, &NumerovConfig::default(), samples)
                .map(|v| {
                    v.into_iter()
                        .map(|(r, psi)| {
                            let region = if r < tp.r1 {
                                "I"
                            } else {
                                match tp.r2 {
                                    Some(r2) if r > r2 => "III",
                                    _ => "II",
                                }
                            };
                            WavePoint { r, psi, region }
                        })
                        .collect()
                })
                .map_err(|e| e.to_string())
        }
        m => build_wavefunction_with(&system, qn, result.energy, samples, m)
            .map(|t| {
                t.samples
                    .iter()
                    .map(|s| WavePoint { r: s.r, psi: s.psi, region: s.region.name() })
                    .collect()
            })
            .map_err(|e| e.to_string()),
    };
    match pts {
        Ok(samples) => json(&WaveResponse {
            energy: result.energy,
            method: method.name(),
            r1: tp.r1,
            r2: tp.r2,
            samples,
        }),
        Err(e) => err_json(&e),
    }
}

#[derive(Serialize)]
struct PotentialPoint {
    r: f64,
    v: f64,
    v_eff: f64,
}

#[derive(Serialize)]
struct PotentialResponse {
    samples: Vec<PotentialPoint>,
    r1: Option<f64>,
    r2: Option<f64>,
    regime: Option<&'static str>,
    v_eff_min: f64,
}

/// Effective potential over (0, r0] with turning points at a trial energy.
#[wasm_bindgen]
pub fn potential_curve(
    potential: &str,
    delta: f64,
    l: u32,
    r0: f64,
    energy: f64,
    samples: usize,
) -> String {
    let model = match model_from(potential, delta) {
        Ok(m) => m,
        Err(e) => return err_json(&e),
    };
    let system = match ConfinedSystem::new(model, l, r0) {
        Ok(s) => s,
        Err(e) => return err_json(&e.to_string()),
    };
    let samples = samples.clamp(16, 4000);
    let mut pts = Vec::with_capacity(samples);
    for i in 0..samples {
        let r = r0 * (i + 1) as f64 / samples as f64;
        let v = system.potential.eval(r).unwrap_or(f64::NAN);
        let v_eff = system.v_eff(r).unwrap_or(f64::NAN);
        pts.push(PotentialPoint { r, v, v_eff });
    }
    let tp = system.turning_points(energy);
    let regime = match tp.regime {
        cwkb_core::potentials::Regime::SingleInside => Some("single-inside"),
        cwkb_core::potentials::Regime::BothInside => Some("both-inside"),
        cwkb_core::potentials::Regime::NoClassicalRegion => Some("no-classical-region"),
    };
    json(&PotentialResponse {
        samples: pts,
        r1: if tp.r1.is_nan() { None } else { Some(tp.r1) },
        r2: tp.r2,
        regime,
        v_eff_min: system.v_eff_minimum(),
    })
}
