//! Quantization rules for both confinement regimes, the eigenvalue solver,
//! the Langer-modified comparison solver, and piecewise wavefunctions.
//!
//! Two rules apply depending on where the wall sits:
//!
//! * wall inside the classically allowed region (`r1 < r0 < r2`, or no outer
//!   turning point at all): `lambda1 - lambda2 = (n_r + 3/4) pi`
//! * both turning points inside the box (`r2 < r0`):
//!   `2 cos(theta) e^{sigma(r0)} + sin(theta) e^{-sigma(r0)} = 0`, evaluated
//!   as `2 cos(theta) + sin(theta) e^{-2 sigma(r0)}` so large decay exponents
//!   never overflow.
//!
//! The perturbative method keeps the classical centrifugal coefficient `l^2`
//! and carries the residual `O(hbar)` piece in the correction integrals; the
//! Langer variant replaces `l^2` by `(l + 1/2)^2` and drops the correction.

use crate::error::{CwkbError, Result};
use crate::potentials::{ConfinedSystem, PotentialKind, Regime};
use crate::quadrature::{
    higher_order_terms_with, lambda1_with, lambda2_with, sigma_with, theta_with, Effective,
    HigherOrderTerms, DEFAULT_REL_TOL,
};
use std::f64::consts::PI;

/// Radial quantum number and angular momentum; reported principal label is
/// `n = n_r + l + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub nr: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(nr: u32, l: u32) -> Self {
        QuantumNumbers { nr, l }
    }

    pub fn principal(&self) -> u32 {
        self.nr + self.l + 1
    }

    /// Spectroscopic label like "2p" or "3d".
    pub fn label(&self) -> String {
        let letters = ['s', 'p', 'd', 'f', 'g', 'h'];
        let ch = letters
            .get(self.l as usize)
            .copied()
            .unwrap_or_else(|| char::from_digit(self.l, 36).unwrap_or('?'));
        format!("{}{}", self.principal(), ch)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Perturbative,
    Langer,
    Exact,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Perturbative => "perturbative",
            Method::Langer => "langer",
            Method::Exact => "exact",
        }
    }
}

/// Confinement regime the converged root was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveRegime {
    SingleInside,
    BothInside,
    /// Coulomb-like E > 0 state with a single turning point.
    PositiveEnergySingle,
}

impl SolveRegime {
    pub fn name(&self) -> &'static str {
        match self {
            SolveRegime::SingleInside => "single-inside",
            SolveRegime::BothInside => "both-inside",
            SolveRegime::PositiveEnergySingle => "positive-energy",
        }
    }
}

/// Integral values at the converged energy plus the bracket that was refined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub lambda1: f64,
    pub lambda2: f64,
    pub theta: Option<f64>,
    pub sigma0: Option<f64>,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyResult {
    pub energy: f64,
    pub method: Method,
    pub regime: SolveRegime,
    /// Final value of the applicable quantization function.
    pub residual: f64,
    pub diagnostics: Diagnostics,
    /// Wall within 5% of the outer turning point; the approximation is not
    /// expected to be reliable there (starred rows in the reference tables).
    pub near_wall_warning: bool,
}

/// Energy window and scan resolution for the root search.
#[derive(Debug, Clone, Copy)]
pub struct SearchParams {
    /// Search window; defaults per potential when `None`.
    pub window: Option<(f64, f64)>,
    /// Coarse scan step in energy units.
    pub grid_step: f64,
    /// Relative tolerance handed to the quadrature engine.
    pub rel_tol: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { window: None, grid_step: 1e-2, rel_tol: DEFAULT_REL_TOL }
    }
}

/// Residual of the small-confinement rule `lambda1 - lambda2 - (n_r + 3/4) pi`.
///
/// Valid when the wall cuts the classically allowed region, including the
/// positive-energy Coulomb case where no outer turning point exists.
pub fn residual_small_box(system: &ConfinedSystem, qn: QuantumNumbers, energy: f64) -> Result<f64> {
    residual_small_with(&Effective::perturbative(system), qn, energy, DEFAULT_REL_TOL)
}

fn residual_small_with(
    eff: &Effective<'_>,
    qn: QuantumNumbers,
    energy: f64,
    rel_tol: f64,
) -> Result<f64> {
    let tp = eff.turning_points(energy);
    match tp.regime {
        Regime::SingleInside => {}
        Regime::BothInside => {
            return Err(CwkbError::Regime(format!(
                "both turning points inside the box at E = {energy}; use the large-box rule"
            )))
        }
        Regime::NoClassicalRegion => {
            return Err(CwkbError::Regime(format!("no classically allowed region at E = {energy}")))
        }
    }
    let r0 = eff.sys.r0;
    let lam1 = lambda1_with(eff, energy, tp.r1, r0, rel_tol)?;
    let lam2 = lambda2_with(eff, energy, tp.r1, r0, rel_tol)?;
    Ok(lam1 - lam2 - (qn.nr as f64 + 0.75) * PI)
}

/// Residual of the large-confinement rule in its overflow-safe form
/// `2 cos(theta) + sin(theta) e^{-2 sigma(r0)}`.
pub fn residual_large_box(system: &ConfinedSystem, qn: QuantumNumbers, energy: f64) -> Result<f64> {
    let _ = qn;
    residual_large_with(&Effective::perturbative(system), energy, DEFAULT_REL_TOL)
}

fn residual_large_with(eff: &Effective<'_>, energy: f64, rel_tol: f64) -> Result<f64> {
    let tp = eff.turning_points(energy);
    if tp.regime != Regime::BothInside {
        return Err(CwkbError::Regime(format!(
            "large-box rule needs r2 < r0; regime at E = {energy} is {:?}",
            tp.regime
        )));
    }
    let th = theta_with(eff, energy, rel_tol)?;
    let sg = sigma_with(eff, energy, eff.sys.r0, rel_tol)?;
    Ok(2.0 * th.cos() + th.sin() * (-2.0 * sg).exp())
}

fn effective_for<'a>(system: &'a ConfinedSystem, method: Method) -> Result<Effective<'a>> {
    match method {
        Method::Perturbative => Ok(Effective::perturbative(system)),
        Method::Langer => Ok(Effective::langer(system)),
        Method::Exact => Err(CwkbError::Precondition(
            "use the oracle module for exact eigenvalues".into(),
        )),
    }
}

/// Default search window per potential, clipped above the V_eff minimum.
fn default_window(eff: &Effective<'_>) -> (f64, f64) {
    let vmin = eff.sys.v_eff_minimum_with(eff.centrifugal);
    match eff.sys.potential.kind {
        PotentialKind::HarmonicOscillator => (vmin + 1e-6, 50.0),
        PotentialKind::Hydrogen => (vmin + 1e-9, 200.0),
        PotentialKind::Hulthen => (vmin + 1e-9, -1e-9),
    }
}

struct Root {
    energy: f64,
    residual: f64,
    label: i64,
    regime: SolveRegime,
    bracket: (f64, f64),
}

/// Solve for the eigenvalue with radial quantum number `qn.nr`.
///
/// The window is split at the regime-flip energy `V_eff(r0)` (where the outer
/// turning point crosses the wall); each side is scanned for sign changes of
/// its own rule, brackets are bisected to `|dE| < 1e-10`, and candidate roots
/// are matched to `n_r` by the node count of the region-II phase.
pub fn solve_energy(
    system: &ConfinedSystem,
    qn: QuantumNumbers,
    method: Method,
    search: SearchParams,
) -> Result<EnergyResult> {
    if qn.l < 1 {
        return Err(CwkbError::Precondition(
            "the semiclassical solvers need l >= 1; l = 0 is supported by the oracle only".into(),
        ));
    }
    if qn.l != system.l {
        return Err(CwkbError::Precondition(format!(
            "quantum numbers carry l = {} but the system was built with l = {}",
            qn.l, system.l
        )));
    }
    let eff = effective_for(system, method)?;
    let (mut lo, hi) = search.window.unwrap_or_else(|| default_window(&eff));
    let vmin = system.v_eff_minimum_with(eff.centrifugal);
    if vmin.is_finite() {
        lo = lo.max(vmin + 1e-9);
    }
    if !(lo < hi) {
        return Err(CwkbError::Precondition(format!("empty search window [{lo}, {hi}]")));
    }

    // Regime flip: r2(E) = r0 exactly when E = V_eff(r0).
    let e_flip = eff.v_eff(system.r0);
    let margin = 1e-9 * (1.0 + e_flip.abs());
    let mut segments: Vec<(f64, f64, bool)> = Vec::new(); // (lo, hi, large_box)
    if e_flip > lo && e_flip < hi {
        segments.push((lo, e_flip - margin, true));
        segments.push((e_flip + margin, hi, false));
    } else if e_flip >= hi {
        segments.push((lo, hi, true));
    } else {
        segments.push((lo, hi, false));
    }

    let mut roots: Vec<Root> = Vec::new();
    for (slo, shi, large) in segments {
        if !(slo < shi) {
            continue;
        }
        scan_segment(&eff, qn, slo, shi, large, &search, 0, &mut roots)?;
    }

    let target = qn.nr as i64;
    roots.sort_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap());
    let found = roots.into_iter().find(|r| r.label == target);
    let Some(root) = found else {
        return Err(CwkbError::NoEigenvalueInWindow { lo, hi, nr: qn.nr });
    };
    finish_result(&eff, qn, method, root, search.rel_tol)
}

/// Comparison solver with the Langer-modified centrifugal term and no
/// first-order correction integrals.
pub fn solve_energy_langer(
    system: &ConfinedSystem,
    qn: QuantumNumbers,
    search: SearchParams,
) -> Result<EnergyResult> {
    solve_energy(system, qn, Method::Langer, search)
}

fn scan_segment(
    eff: &Effective<'_>,
    qn: QuantumNumbers,
    slo: f64,
    shi: f64,
    large: bool,
    search: &SearchParams,
    depth: u32,
    roots: &mut Vec<Root>,
) -> Result<()> {
    // Scan at a relaxed tolerance; brackets are refined at full tolerance.
    let scan_tol = search.rel_tol.max(1e-7);
    let span = shi - slo;
    let n = ((span / search.grid_step).ceil() as usize).clamp(64, 512);
    let f = |e: f64| -> Option<f64> {
        let v = if large {
            residual_large_with(eff, e, scan_tol)
        } else {
            residual_small_with(eff, qn, e, scan_tol)
        };
        v.ok()
    };
    let mut prev: Option<(f64, f64)> = None;
    let mut brackets: Vec<(f64, f64, f64, f64)> = Vec::new();
    for i in 0..=n {
        let e = slo + span * i as f64 / n as f64;
        match (f(e), prev) {
            (Some(fe), Some((pe, pf))) => {
                if pf == 0.0 {
                    brackets.push((pe, pe, pf, pf));
                } else if pf * fe < 0.0 {
                    brackets.push((pe, e, pf, fe));
                }
                prev = Some((e, fe));
            }
            (Some(fe), None) => prev = Some((e, fe)),
            (None, _) => prev = None,
        }
    }
    for (a, b, fa, fb) in brackets {
        let root = refine_root(eff, qn, a, b, fa, fb, large, search.rel_tol)?;
        roots.push(root);
    }

    // If the requested label is absent but straddled by neighbours, rescan
    // the gap more finely; shallow wells can hide closely spaced roots.
    if depth < 2 {
        let target = qn.nr as i64;
        let mut sorted: Vec<(f64, i64)> = roots.iter().map(|r| (r.energy, r.label)).collect();
        sorted.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        if !sorted.iter().any(|&(_, lab)| lab == target) {
            for w in sorted.windows(2) {
                let ((e1, l1), (e2, l2)) = (w[0], w[1]);
                if l1 < target && l2 > target && e1 >= slo && e2 <= shi {
                    let finer = SearchParams { grid_step: search.grid_step / 8.0, ..*search };
                    scan_segment(eff, qn, e1 + 1e-12, e2 - 1e-12, large, &finer, depth + 1, roots)?;
                }
            }
        }
    }
    Ok(())
}

fn refine_root(
    eff: &Effective<'_>,
    qn: QuantumNumbers,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    _fb: f64,
    large: bool,
    rel_tol: f64,
) -> Result<Root> {
    let eval = |e: f64| -> Result<f64> {
        if large {
            residual_large_with(eff, e, rel_tol)
        } else {
            residual_small_with(eff, qn, e, rel_tol)
        }
    };
    fa = if a == b { fa } else { eval(a)? };
    let mut fm = fa;
    for _ in 0..200 {
        if b - a < 1e-10 && fm.abs() < 1e-10 {
            break;
        }
        if b - a < 4.0 * f64::EPSILON * b.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (a + b);
        fm = eval(mid)?;
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    let energy = 0.5 * (a + b);
    let residual = eval(energy)?;

    let label = if large {
        // The root satisfies theta > (n_r + 1/2) pi, approaching equality as
        // sigma grows; the nudge keeps floor() from landing one label low
        // when theta sits at the boundary within rounding.
        let th = theta_with(eff, energy, rel_tol)?;
        (th / PI - 0.5 + 1e-9).floor() as i64
    } else {
        let tp = eff.turning_points(energy);
        let lam1 = lambda1_with(eff, energy, tp.r1, eff.sys.r0, rel_tol)?;
        let lam2 = lambda2_with(eff, energy, tp.r1, eff.sys.r0, rel_tol)?;
        ((lam1 - lam2) / PI - 0.75).round() as i64
    };
    let tp = eff.turning_points(energy);
    let regime = if large {
        SolveRegime::BothInside
    } else if tp.r2.is_none() {
        SolveRegime::PositiveEnergySingle
    } else {
        SolveRegime::SingleInside
    };
    Ok(Root { energy, residual, label, regime, bracket: (a, b) })
}

fn finish_result(
    eff: &Effective<'_>,
    qn: QuantumNumbers,
    method: Method,
    root: Root,
    rel_tol: f64,
) -> Result<EnergyResult> {
    let energy = root.energy;
    let tp = eff.turning_points(energy);
    let r0 = eff.sys.r0;
    let (lambda1, lambda2, theta, sigma0) = match root.regime {
        SolveRegime::BothInside => {
            let r2 = tp.r2.expect("BothInside has an outer turning point");
            let l1 = lambda1_with(eff, energy, tp.r1, r2, rel_tol)?;
            let l2 = lambda2_with(eff, energy, tp.r1, r2, rel_tol)?;
            let sg = sigma_with(eff, energy, r0, rel_tol)?;
            (l1, l2, Some(l1 - l2), Some(sg))
        }
        _ => {
            let l1 = lambda1_with(eff, energy, tp.r1, r0, rel_tol)?;
            let l2 = lambda2_with(eff, energy, tp.r1, r0, rel_tol)?;
            (l1, l2, None, None)
        }
    };
    let near_wall_warning = match tp.r2 {
        Some(r2) => (r0 - r2).abs() < 0.05 * r2,
        None => false,
    };
    let _ = qn;
    Ok(EnergyResult {
        energy,
        method,
        regime: root.regime,
        residual: root.residual,
        diagnostics: Diagnostics { lambda1, lambda2, theta, sigma0, bracket: root.bracket },
        near_wall_warning,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionTag {
    I,
    II,
    III,
}

impl RegionTag {
    pub fn name(&self) -> &'static str {
        match self {
            RegionTag::I => "I",
            RegionTag::II => "II",
            RegionTag::III => "III",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSample {
    pub r: f64,
    pub psi: f64,
    pub region: RegionTag,
}

/// Piecewise semiclassical wavefunction, normalized to max |psi| = 1.
/// Bands around the turning points, where the form diverges, are excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionTrace {
    pub samples: Vec<WavefunctionSample>,
    pub r1: f64,
    pub r2: Option<f64>,
    /// Half-width of the excluded bands around each turning point.
    pub band_half_width: f64,
}

impl WavefunctionTrace {
    /// Sign changes of psi among region-II samples. Samples inside the
    /// boundary dead-band (|psi| <= 1e-5 after normalization) are skipped so
    /// the enforced zero at the wall is not miscounted as an interior node.
    pub fn region_ii_nodes(&self) -> usize {
        let mut nodes = 0;
        let mut prev: Option<f64> = None;
        for s in &self.samples {
            if s.region != RegionTag::II || s.psi.abs() <= 1e-5 {
                continue;
            }
            if let Some(p) = prev {
                if p * s.psi < 0.0 {
                    nodes += 1;
                }
            }
            prev = Some(s.psi);
        }
        nodes
    }
}

/// Build the piecewise wavefunction at a converged eigenvalue.
pub fn build_wavefunction(
    system: &ConfinedSystem,
    qn: QuantumNumbers,
    energy: f64,
    sample_count: usize,
) -> Result<WavefunctionTrace> {
    build_wavefunction_with(system, qn, energy, sample_count, Method::Perturbative)
}

pub fn build_wavefunction_with(
    system: &ConfinedSystem,
    qn: QuantumNumbers,
    energy: f64,
    sample_count: usize,
    method: Method,
) -> Result<WavefunctionTrace> {
    if sample_count < 8 {
        return Err(CwkbError::Precondition(format!(
            "sample_count must be at least 8, got {sample_count}"
        )));
    }
    let eff = effective_for(system, method)?;
    let tp = eff.turning_points(energy);
    if tp.regime == Regime::NoClassicalRegion {
        return Err(CwkbError::Regime(format!("no classically allowed region at E = {energy}")));
    }
    // Converged-eigenvalue precondition.
    let resid = match tp.regime {
        Regime::BothInside => residual_large_with(&eff, energy, DEFAULT_REL_TOL)?,
        _ => residual_small_with(&eff, qn, energy, DEFAULT_REL_TOL)?,
    };
    if resid.abs() > 1e-6 {
        return Err(CwkbError::Precondition(format!(
            "E = {energy} is not a converged eigenvalue (residual {resid:e})"
        )));
    }

    let r0 = system.r0;
    let r1 = tp.r1;
    let r2_in = tp.r2.filter(|&r2| r2 < r0);
    let well_width = match tp.r2 {
        Some(r2) => r2 - r1,
        None => r0 - r1,
    };
    let band = 0.02 * well_width;
    let rel_tol = DEFAULT_REL_TOL;
    let u = system.potential.units;
    let wq = eff.l0 / (2.0 * u.hbar);
    let pref = 2.0 * u.mass / (u.hbar * u.hbar);

    let g0 = |r: f64| (pref * (energy - eff.v_eff(r))).max(0.0).sqrt();
    let k0 = |r: f64| (pref * (eff.v_eff(r) - energy)).max(0.0).sqrt();

    // theta and sigma(r0) for the region-III form
    let (theta_v, sigma0) = if r2_in.is_some() {
        (theta_with(&eff, energy, rel_tol)?, sigma_with(&eff, energy, r0, rel_tol)?)
    } else {
        (0.0, 0.0)
    };

    let n = sample_count;
    let mut samples = Vec::with_capacity(n);
    let grid = |i: usize| r0 * (i + 1) as f64 / n as f64;

    // Region I: accumulate the decay exponent inward from r1.
    // D(r) = int_r^{r1} (kappa0 + w/(kappa0 s^2)) ds, singular at r1.
    {
        let mut rows: Vec<f64> =
            (0..n).map(grid).filter(|&r| r < r1 - band && r > 0.0).collect();
        rows.sort_by(|a, b| b.partial_cmp(a).unwrap()); // descending
        let integrand = |s: f64| {
            let k = k0(s);
            if k == 0.0 {
                0.0
            } else {
                k + wq / (k * s * s)
            }
        };
        let mut d_acc = 0.0;
        let mut r_prev = r1;
        let mut first = true;
        for r in rows {
            let seg = if first {
                first = false;
                // singular upper endpoint at r1
                crate::quadrature::integrate_sqrt_edges(
                    &integrand,
                    r,
                    r1,
                    crate::quadrature::SingularEnds { lower: false, upper: true },
                    1e-9,
                )?
            } else {
                crate::quadrature::integrate_adaptive(&integrand, r, r_prev, 1e-9)?
            };
            d_acc += seg;
            r_prev = r;
            let k = k0(r);
            let psi = if k > 0.0 && d_acc < 700.0 { (-d_acc).exp() / k.sqrt() } else { 0.0 };
            samples.push(WavefunctionSample { r, psi, region: RegionTag::I });
        }
        samples.reverse();
    }

    // Region II: accumulate the phase outward from r1.
    {
        let upper = r2_in.unwrap_or(r0);
        let mut rows: Vec<f64> = (0..n)
            .map(grid)
            .filter(|&r| r > r1 + band && r < upper - if r2_in.is_some() { band } else { 0.0 })
            .collect();
        if r2_in.is_none() && !rows.contains(&r0) {
            rows.push(r0);
        }
        rows.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let integrand = |s: f64| {
            let g = g0(s);
            if g == 0.0 {
                0.0
            } else {
                g - wq / (g * s * s)
            }
        };
        let mut phase = 0.0;
        let mut r_prev = r1;
        let mut first = true;
        for r in rows {
            let seg = if first {
                first = false;
                crate::quadrature::integrate_sqrt_edges(
                    &integrand,
                    r1,
                    r,
                    crate::quadrature::SingularEnds { lower: true, upper: false },
                    1e-9,
                )?
            } else {
                crate::quadrature::integrate_adaptive(&integrand, r_prev, r, 1e-9)?
            };
            phase += seg;
            r_prev = r;
            let g = g0(r);
            let psi = if g > 0.0 { 2.0 * (phase + PI / 4.0).sin() / g.sqrt() } else { 0.0 };
            samples.push(WavefunctionSample { r, psi, region: RegionTag::II });
        }
    }

    // Region III: stable form using the quantization relation,
    // psi = sin(theta)/sqrt(kappa0) * (e^{-sigma} - e^{sigma - 2 sigma0}).
    if let Some(r2) = r2_in {
        let mut rows: Vec<f64> = (0..n).map(grid).filter(|&r| r > r2 + band && r < r0).collect();
        rows.push(r0);
        rows.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let integrand = |s: f64| {
            let k = k0(s);
            if k == 0.0 {
                0.0
            } else {
                k + wq / (k * s * s)
            }
        };
        let mut sig = 0.0;
        let mut r_prev = r2;
        let mut first = true;
        for r in rows {
            let seg = if first {
                first = false;
                crate::quadrature::integrate_sqrt_edges(
                    &integrand,
                    r2,
                    r,
                    crate::quadrature::SingularEnds { lower: true, upper: false },
                    1e-9,
                )?
            } else {
                crate::quadrature::integrate_adaptive(&integrand, r_prev, r, 1e-9)?
            };
            sig += seg;
            r_prev = r;
            let k = k0(r);
            let psi = if k > 0.0 {
                theta_v.sin() / k.sqrt() * ((-sig).exp() - (sig - 2.0 * sigma0).exp())
            } else {
                0.0
            };
            samples.push(WavefunctionSample { r, psi, region: RegionTag::III });
        }
    }

    // Normalize to max |psi| = 1.
    let peak = samples.iter().map(|s| s.psi.abs()).fold(0.0f64, f64::max);
    if peak > 0.0 {
        for s in &mut samples {
            s.psi /= peak;
        }
    }
    Ok(WavefunctionTrace { samples, r1, r2: tp.r2, band_half_width: band })
}

/// Diagnostic report of the higher-order correction terms and the residual
/// they would imply. Never feeds the default quantization.
#[derive(Debug, Clone, Copy)]
pub struct HigherOrderReport {
    pub terms: HigherOrderTerms,
    pub base_residual: f64,
    pub shifted_residual: f64,
}

/// Evaluate the truncated higher-order terms at a converged first-order
/// eigenvalue and report how the residual would shift.
pub fn higher_order_shift(
    system: &ConfinedSystem,
    qn: QuantumNumbers,
    energy: f64,
) -> Result<HigherOrderReport> {
    higher_order_shift_with(system, qn, energy, None)
}

pub fn higher_order_shift_with(
    system: &ConfinedSystem,
    qn: QuantumNumbers,
    energy: f64,
    epsilon: Option<f64>,
) -> Result<HigherOrderReport> {
    let eff = Effective::perturbative(system);
    let tp = eff.turning_points(energy);
    match tp.regime {
        Regime::NoClassicalRegion => {
            Err(CwkbError::Regime(format!("no classically allowed region at E = {energy}")))
        }
        Regime::SingleInside => {
            let base = residual_small_with(&eff, qn, energy, DEFAULT_REL_TOL)?;
            let terms = higher_order_terms_with(&eff, energy, tp.r1, system.r0, epsilon)?;
            Ok(HigherOrderReport {
                terms,
                base_residual: base,
                shifted_residual: base - terms.order2 - terms.order3,
            })
        }
        Regime::BothInside => {
            let base = residual_large_with(&eff, energy, DEFAULT_REL_TOL)?;
            let r2 = tp.r2.expect("BothInside has r2");
            let terms = higher_order_terms_with(&eff, energy, tp.r1, r2, epsilon)?;
            let th = theta_with(&eff, energy, DEFAULT_REL_TOL)? - terms.order2 - terms.order3;
            let sg = sigma_with(&eff, energy, system.r0, DEFAULT_REL_TOL)?;
            let shifted = 2.0 * th.cos() + th.sin() * (-2.0 * sg).exp();
            Ok(HigherOrderReport { terms, base_residual: base, shifted_residual: shifted })
        }
    }
}
