//! Independent exact eigenvalue solver: Numerov integration of the radial
//! equation with the full l(l+1) centrifugal term and a hard wall at r0.
//!
//! This is the reference the semiclassical results are judged against. It
//! shares no code path with the WKB machinery: no turning points, no phase
//! integrals, just the ODE
//!
//! ```text
//! u''(r) + [ 2m/hbar^2 (E - V(r)) - l(l+1)/r^2 ] u(r) = 0,   u(r0) = 0
//! ```
//!
//! marched outward from r ~ 0 with the regular start u ~ r^{l+1}. Interior
//! node counting makes the eigenvalue search monotone: the k-th eigenvalue
//! is the energy where the (k+1)-th node arrives at the wall.

use crate::error::{CwkbError, Result};
use crate::potentials::{ConfinedSystem, PotentialKind};
use crate::wkb::{Diagnostics, EnergyResult, Method, QuantumNumbers, SolveRegime};

#[derive(Debug, Clone, Copy)]
pub struct NumerovConfig {
    pub grid_points: usize,
    pub r_min: f64,
    /// Bisection tolerance on the eigenvalue.
    pub tolerance: f64,
}

impl Default for NumerovConfig {
    fn default() -> Self {
        NumerovConfig { grid_points: 20_000, r_min: 1e-8, tolerance: 1e-10 }
    }
}

/// Boundary value (arbitrary scale) and interior node count of the outward
/// Numerov march at trial energy `E`.
pub fn integrate_radial(
    system: &ConfinedSystem,
    energy: f64,
    config: &NumerovConfig,
) -> Result<(f64, usize)> {
    let n = config.grid_points;
    if n < 2000 {
        return Err(CwkbError::Precondition(format!("grid_points must be >= 2000, got {n}")));
    }
    if !energy.is_finite() {
        return Err(CwkbError::Precondition("energy must be finite".into()));
    }
    let u = system.potential.units;
    let l = system.l as f64;
    let pref = 2.0 * u.mass / (u.hbar * u.hbar);
    let centrifugal = l * (l + 1.0);
    let q = |r: f64| pref * (energy - system.potential.eval_unchecked(r)) - centrifugal / (r * r);

    let r_min = config.r_min;
    let h = (system.r0 - r_min) / (n - 1) as f64;
    let h2_12 = h * h / 12.0;

    // Regular solution near the origin: u ~ r^{l+1}. Scale so the seed does
    // not underflow for large l.
    let r1 = r_min + h;
    let exp_l1 = l + 1.0;
    let mut psi_prev = (r_min / r1).powf(exp_l1) * 1e-4; // u(r_min)/u(r1) * 1e-4
    let mut psi_cur: f64 = 1e-4;

    let mut f_prev = 1.0 + h2_12 * q(r_min);
    let mut f_cur = 1.0 + h2_12 * q(r1);
    let mut nodes = 0usize;
    let mut max_abs = psi_cur.abs();

    for i in 1..(n - 1) {
        let r_next = r_min + (i + 1) as f64 * h;
        let f_next = 1.0 + h2_12 * q(r_next);
        if f_next == 0.0 {
            return Err(CwkbError::Precondition(format!(
                "Numerov coefficient vanished at r = {r_next}; increase grid_points"
            )));
        }
        let psi_next = ((12.0 - 10.0 * f_cur) * psi_cur - f_prev * psi_prev) / f_next;
        if psi_next * psi_cur < 0.0 {
            nodes += 1;
        }
        psi_prev = psi_cur;
        psi_cur = psi_next;
        f_prev = f_cur;
        f_cur = f_next;
        max_abs = max_abs.max(psi_cur.abs());
        // positive rescaling keeps nodes and the boundary sign intact
        if psi_cur.abs() > 1e250 {
            psi_prev *= 1e-250;
            psi_cur *= 1e-250;
            max_abs *= 1e-250;
        }
    }
    Ok((psi_cur / max_abs.max(f64::MIN_POSITIVE), nodes))
}

/// Default exact-solver search window per potential.
fn default_window(system: &ConfinedSystem) -> (f64, f64) {
    let vmin = if system.l == 0 {
        match system.potential.kind {
            // l = 0 attractive potentials are unbounded below near the
            // origin only for the energy *scale*, not the spectrum; a deep
            // fixed floor covers every tabulated case.
            PotentialKind::HarmonicOscillator => 0.0,
            _ => -2.0 * system.potential.units.coulomb_strength.max(1.0).powi(2),
        }
    } else {
        system.v_eff_minimum()
    };
    match system.potential.kind {
        PotentialKind::HarmonicOscillator => (vmin + 1e-9, 60.0),
        PotentialKind::Hydrogen => (vmin + 1e-9, 200.0),
        PotentialKind::Hulthen => (vmin + 1e-9, 60.0),
    }
}

/// Exact eigenvalue by bisection on the interior node count, polished by a
/// sign bisection of the boundary value inside the node-matched bracket.
pub fn solve_exact(
    system: &ConfinedSystem,
    qn: QuantumNumbers,
    config: &NumerovConfig,
    window: Option<(f64, f64)>,
) -> Result<EnergyResult> {
    if qn.l != system.l {
        return Err(CwkbError::Precondition(format!(
            "quantum numbers carry l = {} but the system was built with l = {}",
            qn.l, system.l
        )));
    }
    let (lo, hi) = window.unwrap_or_else(|| default_window(system));
    if !(lo < hi) {
        return Err(CwkbError::Precondition(format!("empty window [{lo}, {hi}]")));
    }
    let target = qn.nr as usize;
    let nodes_at = |e: f64| -> Result<usize> { Ok(integrate_radial(system, e, config)?.1) };

    let (n_lo, n_hi) = (nodes_at(lo)?, nodes_at(hi)?);
    if n_lo > target || n_hi <= target {
        return Err(CwkbError::NoEigenvalueInWindow { lo, hi, nr: qn.nr });
    }
    // The eigenvalue is the infimum of { E : nodes(E) > n_r }.
    let (mut a, mut b) = (lo, hi);
    while b - a > config.tolerance.max(4.0 * f64::EPSILON * b.abs().max(1.0)) {
        let mid = 0.5 * (a + b);
        if nodes_at(mid)? > target {
            b = mid;
        } else {
            a = mid;
        }
    }
    // Polish on the boundary value, which flips sign across the eigenvalue.
    let (fa, _) = integrate_radial(system, a, config)?;
    let (fb, _) = integrate_radial(system, b, config)?;
    if fa * fb < 0.0 {
        for _ in 0..80 {
            if b - a <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
                break;
            }
            let mid = 0.5 * (a + b);
            let (fm, _) = integrate_radial(system, mid, config)?;
            if fa * fm <= 0.0 {
                b = mid;
            } else {
                a = mid;
            }
        }
    }
    let energy = 0.5 * (a + b);
    let (boundary, nodes) = integrate_radial(system, energy, config)?;
    if nodes != target && {
        // on the fence: one grid node may sit exactly at the wall
        let (_, n_minus) = integrate_radial(system, energy - 2.0 * config.tolerance, config)?;
        n_minus != target
    } {
        return Err(CwkbError::Precondition(format!(
            "converged state has {nodes} nodes, wanted {target}"
        )));
    }

    let tp = system.turning_points(energy);
    let regime = match tp.regime {
        crate::potentials::Regime::BothInside => SolveRegime::BothInside,
        _ => {
            if tp.r2.is_none() && energy > 0.0 {
                SolveRegime::PositiveEnergySingle
            } else {
                SolveRegime::SingleInside
            }
        }
    };
    Ok(EnergyResult {
        energy,
        method: Method::Exact,
        regime,
        residual: boundary,
        diagnostics: Diagnostics {
            lambda1: f64::NAN,
            lambda2: f64::NAN,
            theta: None,
            sigma0: None,
            bracket: (a, b),
        },
        near_wall_warning: match tp.r2 {
            Some(r2) => (system.r0 - r2).abs() < 0.05 * r2,
            None => false,
        },
    })
}

/// Normalized samples of the exact radial wavefunction at energy `E`
/// (used by the comparison surfaces; not part of the eigenvalue search).
pub fn wavefunction_samples(
    system: &ConfinedSystem,
    energy: f64,
    config: &NumerovConfig,
    sample_count: usize,
) -> Result<Vec<(f64, f64)>> {
    let n = config.grid_points;
    let u = system.potential.units;
    let l = system.l as f64;
    let pref = 2.0 * u.mass / (u.hbar * u.hbar);
    let centrifugal = l * (l + 1.0);
    let q = |r: f64| pref * (energy - system.potential.eval_unchecked(r)) - centrifugal / (r * r);

    let r_min = config.r_min;
    let h = (system.r0 - r_min) / (n - 1) as f64;
    let h2_12 = h * h / 12.0;
    let r1 = r_min + h;
    let mut psi = Vec::with_capacity(n);
    psi.push((r_min / r1).powf(l + 1.0) * 1e-4);
    psi.push(1e-4);
    let mut rescale_log = 0.0f64; // track factor applied to earlier samples
    let mut scales = vec![0.0f64; 2];
    for i in 1..(n - 1) {
        let r_prev = r_min + (i - 1) as f64 * h;
        let r_cur = r_min + i as f64 * h;
        let r_next = r_min + (i + 1) as f64 * h;
        let f_prev = 1.0 + h2_12 * q(r_prev);
        let f_cur = 1.0 + h2_12 * q(r_cur);
        let f_next = 1.0 + h2_12 * q(r_next);
        let next = ((12.0 - 10.0 * f_cur) * psi[i] - f_prev * psi[i - 1]) / f_next;
        let mut val = next;
        if val.abs() > 1e250 {
            // rescale the trailing values; earlier ones keep their log offset
            let factor = 1e-250;
            psi[i] *= factor;
            val *= factor;
            rescale_log += 250.0;
        }
        psi.push(val);
        scales.push(rescale_log);
    }
    // undo the per-sample scale offsets relative to the final scale
    let final_log = rescale_log;
    let full: Vec<f64> = psi
        .iter()
        .zip(scales.iter())
        .map(|(&v, &s)| {
            let decades = s - final_log; // <= 0
            v * 10f64.powf(decades)
        })
        .collect();
    let peak = full.iter().fold(0.0f64, |m, &v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let stride = (n / sample_count.max(2)).max(1);
    let mut out = Vec::new();
    for (i, &v) in full.iter().enumerate().step_by(stride) {
        out.push((r_min + i as f64 * h, v / peak));
    }
    if out.last().map(|&(r, _)| r) != Some(system.r0) {
        out.push((system.r0, full[n - 1] / peak));
    }
    Ok(out)
}
