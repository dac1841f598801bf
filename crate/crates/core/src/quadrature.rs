//! The four semiclassical integrals with inverse-square-root singularities at
//! classical turning points, plus the higher-order correction integrals.
//!
//! At a turning point the local wavenumber vanishes like a square root, so
//! the substitution `r = r1 + u^2` (or `r = r2 - u^2` at the outer point)
//! turns every improper integrand into a smooth one. Panels of 32-point
//! Gauss-Legendre with bisection refinement then converge to the requested
//! relative tolerance.

use crate::error::{CwkbError, Result};
use crate::potentials::ConfinedSystem;
use std::sync::OnceLock;

/// Default relative tolerance for all phase/decay integrals.
pub const DEFAULT_REL_TOL: f64 = 1e-10;
/// Absolute floor below which refinement stops.
pub const ABS_FLOOR: f64 = 1e-14;

const GL_POINTS: usize = 32;
const MAX_DEPTH: u32 = 40;

fn gl32() -> &'static [(f64, f64); GL_POINTS] {
    static TABLE: OnceLock<[(f64, f64); GL_POINTS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Newton iteration on P_32; nodes symmetric about 0.
        let n = GL_POINTS;
        let mut out = [(0.0f64, 0.0f64); GL_POINTS];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0f64, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out[i] = (-x, w);
            out[n - 1 - i] = (x, w);
        }
        out
    })
}

fn gl_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in gl32().iter() {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Adaptive panel integration: a panel is accepted when splitting it in two
/// changes the estimate by less than the tolerance share assigned to it.
pub fn integrate_adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
        budget: &mut u64,
    ) -> Result<f64> {
        if *budget == 0 {
            return Err(CwkbError::QuadratureConvergence(format!(
                "panel budget exhausted at [{a}, {b}]"
            )));
        }
        *budget -= 1;
        let mid = 0.5 * (a + b);
        let left = gl_panel(f, a, mid);
        let right = gl_panel(f, mid, b);
        let refined = left + right;
        if !refined.is_finite() {
            return Err(CwkbError::QuadratureConvergence(format!(
                "non-finite integrand on [{a}, {b}]"
            )));
        }
        if (refined - whole).abs() <= tol.max(ABS_FLOOR) || depth >= MAX_DEPTH {
            if depth >= MAX_DEPTH && (refined - whole).abs() > 1e3 * tol.max(ABS_FLOOR) {
                return Err(CwkbError::QuadratureConvergence(format!(
                    "panel [{a}, {b}] still changing by {} at depth {depth}",
                    (refined - whole).abs()
                )));
            }
            return Ok(refined);
        }
        Ok(recurse(f, a, mid, left, 0.5 * tol, depth + 1, budget)?
            + recurse(f, mid, b, right, 0.5 * tol, depth + 1, budget)?)
    }
    let whole = gl_panel(f, a, b);
    if !whole.is_finite() {
        return Err(CwkbError::QuadratureConvergence(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    let tol = rel_tol * whole.abs().max(1.0);
    let mut budget: u64 = 200_000;
    recurse(f, a, b, whole, tol, 0, &mut budget)
}

/// Which integrand an [`IntegralRequest`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralKind {
    /// Gamma0(r)
    Action,
    /// 1/(Gamma0 r^2), already carrying the L0/2hbar prefactor
    Centrifugal,
    /// kappa0(r)
    Decay,
    /// 1/(kappa0 r^2) with the L0/2hbar prefactor
    DecayCentrifugal,
    /// L0^2 / (8 hbar^2 Gamma0^3 r^4)
    HigherOrder2,
    /// L0^3 / (16 hbar^3 Gamma0^5 r^6)
    HigherOrder3,
}

/// Flags marking which endpoints sit on a classical turning point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SingularEnds {
    pub lower: bool,
    pub upper: bool,
}

/// A single semiclassical integral over `[lower, upper]`.
#[derive(Debug, Clone, Copy)]
pub struct IntegralRequest<'a> {
    pub system: &'a ConfinedSystem,
    pub energy: f64,
    pub lower: f64,
    pub upper: f64,
    pub kind: IntegralKind,
    pub singular_ends: SingularEnds,
}

/// Internal view of a system with an overridable centrifugal coefficient,
/// so the Langer variant reuses the same machinery.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Effective<'a> {
    pub sys: &'a ConfinedSystem,
    /// coefficient `c` of `c hbar^2/(2 m r^2)` inside V_eff
    pub centrifugal: f64,
    /// L0 entering the first-order correction integrals (0 for Langer)
    pub l0: f64,
}

impl<'a> Effective<'a> {
    pub fn perturbative(sys: &'a ConfinedSystem) -> Self {
        Effective { sys, centrifugal: sys.centrifugal_coefficient(), l0: sys.correction_l0() }
    }

    pub fn langer(sys: &'a ConfinedSystem) -> Self {
        let lh = sys.l as f64 + 0.5;
        Effective { sys, centrifugal: lh * lh, l0: 0.0 }
    }

    #[inline]
    pub fn v_eff(&self, r: f64) -> f64 {
        self.sys.v_eff_with(r, self.centrifugal)
    }

    /// 2m/hbar^2 (E - V_eff); the squared local wavenumber.
    #[inline]
    pub fn gamma0_sq(&self, energy: f64, r: f64) -> f64 {
        let u = self.sys.potential.units;
        2.0 * u.mass / (u.hbar * u.hbar) * (energy - self.v_eff(r))
    }

    pub fn turning_points(&self, energy: f64) -> crate::potentials::TurningPoints {
        self.sys.turning_points_with(energy, self.centrifugal)
    }
}

/// Local wavenumber sqrt(2m (E - V_eff))/hbar. Errors when E <= V_eff.
pub fn gamma0(system: &ConfinedSystem, energy: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(CwkbError::Domain(format!("gamma0 needs r > 0, got {r}")));
    }
    let g2 = Effective::perturbative(system).gamma0_sq(energy, r);
    if g2 < 0.0 {
        return Err(CwkbError::Domain(format!(
            "gamma0 needs E > V_eff; E - V_eff = {g2:e} at r = {r}"
        )));
    }
    Ok(g2.sqrt())
}

/// Local decay rate sqrt(2m (V_eff - E))/hbar. Errors when V_eff <= E.
pub fn kappa0(system: &ConfinedSystem, energy: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(CwkbError::Domain(format!("kappa0 needs r > 0, got {r}")));
    }
    let g2 = Effective::perturbative(system).gamma0_sq(energy, r);
    if g2 > 0.0 {
        return Err(CwkbError::Domain(format!(
            "kappa0 needs V_eff > E; V_eff - E = {:e} at r = {r}",
            -g2
        )));
    }
    Ok((-g2).sqrt())
}

/// Integrates `f(r) dr` over `[a, b]` where `weight(r)` vanishes like
/// sqrt(r - a) (resp. sqrt(b - r)) at flagged singular endpoints.
/// `f` must be finite on the open interval.
pub(crate) fn integrate_sqrt_edges(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    ends: SingularEnds,
    rel_tol: f64,
) -> Result<f64> {
    if b < a {
        return Err(CwkbError::Precondition(format!("integral bounds reversed: [{a}, {b}]")));
    }
    if b == a {
        return Ok(0.0);
    }
    match (ends.lower, ends.upper) {
        (false, false) => integrate_adaptive(f, a, b, rel_tol),
        (true, false) => {
            // r = a + u^2
            let umax = (b - a).sqrt();
            integrate_adaptive(&|u: f64| 2.0 * u * f(a + u * u), 0.0, umax, rel_tol)
        }
        (false, true) => {
            let umax = (b - a).sqrt();
            integrate_adaptive(&|u: f64| 2.0 * u * f(b - u * u), 0.0, umax, rel_tol)
        }
        (true, true) => {
            let mid = 0.5 * (a + b);
            let lo = integrate_adaptive(&|u: f64| 2.0 * u * f(a + u * u), 0.0, (mid - a).sqrt(), rel_tol)?;
            let hi = integrate_adaptive(&|u: f64| 2.0 * u * f(b - u * u), 0.0, (b - mid).sqrt(), rel_tol)?;
            Ok(lo + hi)
        }
    }
}

impl<'a> IntegralRequest<'a> {
    /// Evaluate the requested integral at the default tolerance.
    pub fn evaluate(&self) -> Result<f64> {
        self.evaluate_with_tol(DEFAULT_REL_TOL)
    }

    pub fn evaluate_with_tol(&self, rel_tol: f64) -> Result<f64> {
        if !(self.lower < self.upper) {
            if self.lower == self.upper {
                return Ok(0.0);
            }
            return Err(CwkbError::Precondition(format!(
                "integral bounds reversed: [{}, {}]",
                self.lower, self.upper
            )));
        }
        let eff = Effective::perturbative(self.system);
        evaluate_kind(&eff, self.energy, self.lower, self.upper, self.kind, self.singular_ends, rel_tol)
    }
}

pub(crate) fn evaluate_kind(
    eff: &Effective<'_>,
    energy: f64,
    lower: f64,
    upper: f64,
    kind: IntegralKind,
    ends: SingularEnds,
    rel_tol: f64,
) -> Result<f64> {
    let u = eff.sys.potential.units;
    let l0 = eff.l0;
    let hbar = u.hbar;
    // Reject evaluation in the wrong region early: probe a few interior points.
    let probes = [0.5, 0.2, 0.8, 0.05, 0.95];
    let allowed_kind = matches!(kind, IntegralKind::Action | IntegralKind::Centrifugal
        | IntegralKind::HigherOrder2 | IntegralKind::HigherOrder3);
    for t in probes {
        let r = lower + t * (upper - lower);
        let g2 = eff.gamma0_sq(energy, r);
        if allowed_kind && g2 <= 0.0 {
            return Err(CwkbError::InconsistentBracket(format!(
                "E <= V_eff at r = {r} inside a classically allowed interval"
            )));
        }
        if !allowed_kind && g2 >= 0.0 {
            return Err(CwkbError::InconsistentBracket(format!(
                "V_eff <= E at r = {r} inside a classically forbidden interval"
            )));
        }
    }
    let g0 = |r: f64| eff.gamma0_sq(energy, r).max(0.0).sqrt();
    let k0 = |r: f64| (-eff.gamma0_sq(energy, r)).max(0.0).sqrt();
    // Within float noise of a turning point the 1/wavenumber integrands lose
    // their analytic u-cancellation; the affected set has measure ~1e-15, so
    // a zero there is the correct limit value.
    match kind {
        IntegralKind::Action => integrate_sqrt_edges(&|r| g0(r), lower, upper, ends, rel_tol),
        IntegralKind::Centrifugal => {
            if l0 == 0.0 {
                return Ok(0.0);
            }
            let f = |r: f64| {
                let g = g0(r);
                if g == 0.0 { 0.0 } else { 1.0 / (g * r * r) }
            };
            Ok(l0 / (2.0 * hbar) * integrate_sqrt_edges(&f, lower, upper, ends, rel_tol)?)
        }
        IntegralKind::Decay => integrate_sqrt_edges(&|r| k0(r), lower, upper, ends, rel_tol),
        IntegralKind::DecayCentrifugal => {
            if l0 == 0.0 {
                return Ok(0.0);
            }
            let f = |r: f64| {
                let k = k0(r);
                if k == 0.0 { 0.0 } else { 1.0 / (k * r * r) }
            };
            Ok(l0 / (2.0 * hbar) * integrate_sqrt_edges(&f, lower, upper, ends, rel_tol)?)
        }
        IntegralKind::HigherOrder2 => {
            if l0 == 0.0 {
                return Ok(0.0);
            }
            let c = l0 * l0 / (8.0 * hbar * hbar);
            let f = |r: f64| c / (g0(r).powi(3) * r.powi(4));
            integrate_power_law_edges(eff, energy, &f, lower, upper)
        }
        IntegralKind::HigherOrder3 => {
            if l0 == 0.0 {
                return Ok(0.0);
            }
            let c = l0 * l0 * l0 / (16.0 * hbar.powi(3));
            let f = |r: f64| c / (g0(r).powi(5) * r.powi(6));
            integrate_power_law_edges(eff, energy, &f, lower, upper)
        }
    }
}

/// Integration for the non-integrable higher-order integrands: the interval
/// ends sit a truncation distance away from turning points where the
/// integrand behaves like a steep power law, so panels widen geometrically
/// away from each nearby turning point. Each panel then sees only a bounded
/// relative variation and plain Gauss-Legendre converges.
fn integrate_power_law_edges(
    eff: &Effective<'_>,
    energy: f64,
    f: &impl Fn(f64) -> f64,
    lower: f64,
    upper: f64,
) -> Result<f64> {
    let tp = eff.turning_points(energy);
    let mid = 0.5 * (lower + upper);
    let mut edges: Vec<f64> = vec![lower];
    // grow panels away from the inner turning point up to the midpoint
    if !tp.r1.is_nan() && tp.r1 < lower {
        let mut width = lower - tp.r1;
        let mut x = lower;
        while x + width < mid {
            x += width;
            edges.push(x);
            width *= 2.0;
        }
    }
    edges.push(mid);
    // and away from the outer turning point, walking backwards
    let mut upper_edges: Vec<f64> = vec![upper];
    if let Some(r2) = tp.r2 {
        if r2 > upper {
            let mut width = r2 - upper;
            let mut x = upper;
            while x - width > mid {
                x -= width;
                upper_edges.push(x);
                width *= 2.0;
            }
        }
    }
    while let Some(e) = upper_edges.pop() {
        if e > *edges.last().unwrap() {
            edges.push(e);
        }
    }
    // Near the truncation edges E - V_eff is a difference of O(E) numbers,
    // so the integrand carries ~1e-16 * E / (E - V_eff) relative noise; the
    // panel tolerance must sit above that or refinement never terminates.
    let edge_gap = {
        let mut g = f64::INFINITY;
        if !tp.r1.is_nan() && tp.r1 < lower {
            g = g.min(eff.gamma0_sq(energy, lower).abs());
        }
        if let Some(r2) = tp.r2 {
            if r2 > upper {
                g = g.min(eff.gamma0_sq(energy, upper).abs());
            }
        }
        g
    };
    let noise = if edge_gap.is_finite() && edge_gap > 0.0 {
        1e-13 * eff.gamma0_sq(energy, mid).abs() / edge_gap
    } else {
        0.0
    };
    let tol = noise.clamp(1e-10, 1e-6);
    let mut total = 0.0;
    for pair in edges.windows(2) {
        total += integrate_adaptive(f, pair[0], pair[1], tol)?;
    }
    Ok(total)
}

/// lambda1 = int_from^to Gamma0 dr, `from` being the inner turning point.
pub fn lambda1(system: &ConfinedSystem, energy: f64, from: f64, to: f64) -> Result<f64> {
    lambda1_with(&Effective::perturbative(system), energy, from, to, DEFAULT_REL_TOL)
}

pub(crate) fn lambda1_with(
    eff: &Effective<'_>,
    energy: f64,
    from: f64,
    to: f64,
    rel_tol: f64,
) -> Result<f64> {
    if from == to {
        return Ok(0.0);
    }
    let upper_singular = is_turning_point(eff, energy, to);
    evaluate_kind(
        eff,
        energy,
        from,
        to,
        IntegralKind::Action,
        SingularEnds { lower: true, upper: upper_singular },
        rel_tol,
    )
}

/// lambda2 = (L0/2hbar) int_from^to dr/(Gamma0 r^2); exactly 0 when l = 0.
pub fn lambda2(system: &ConfinedSystem, energy: f64, from: f64, to: f64) -> Result<f64> {
    lambda2_with(&Effective::perturbative(system), energy, from, to, DEFAULT_REL_TOL)
}

pub(crate) fn lambda2_with(
    eff: &Effective<'_>,
    energy: f64,
    from: f64,
    to: f64,
    rel_tol: f64,
) -> Result<f64> {
    if from == to || eff.l0 == 0.0 {
        return Ok(0.0);
    }
    let upper_singular = is_turning_point(eff, energy, to);
    evaluate_kind(
        eff,
        energy,
        from,
        to,
        IntegralKind::Centrifugal,
        SingularEnds { lower: true, upper: upper_singular },
        rel_tol,
    )
}

fn is_turning_point(eff: &Effective<'_>, energy: f64, r: f64) -> bool {
    // Relative closeness of E to V_eff(r), scaled like the quadratic
    // vanishing of gamma0^2 near a root.
    let g2 = eff.gamma0_sq(energy, r);
    let scale = eff.gamma0_sq(energy, r * 0.99).abs().max(eff.gamma0_sq(energy, r * 1.01).abs());
    g2.abs() <= 1e-6 * scale.max(1e-300)
}

/// theta = full-well phase integral, Gamma0 minus the centrifugal correction.
pub fn theta(system: &ConfinedSystem, energy: f64) -> Result<f64> {
    theta_with(&Effective::perturbative(system), energy, DEFAULT_REL_TOL)
}

pub(crate) fn theta_with(eff: &Effective<'_>, energy: f64, rel_tol: f64) -> Result<f64> {
    let tp = eff.turning_points(energy);
    let r2 = tp.r2.ok_or_else(|| {
        CwkbError::Regime("theta needs both turning points; outer point missing".into())
    })?;
    if !(tp.r1 < r2) || tp.r1.is_nan() {
        return Err(CwkbError::Regime(format!("theta needs r1 < r2, got r1={}, r2={r2}", tp.r1)));
    }
    let ends = SingularEnds { lower: true, upper: true };
    let a = evaluate_kind(eff, energy, tp.r1, r2, IntegralKind::Action, ends, rel_tol)?;
    let c = evaluate_kind(eff, energy, tp.r1, r2, IntegralKind::Centrifugal, ends, rel_tol)?;
    Ok(a - c)
}

/// Region-III decay exponent from r2 out to `to`:
/// sigma = int kappa0 dr + (L0/2hbar) int dr/(kappa0 r^2).
///
/// The correction enters with a plus sign, matching the first-order
/// expansion kappa = kappa0 + L0/(2 hbar kappa0 r^2) and the region-I
/// solution it must mirror.
pub fn sigma(system: &ConfinedSystem, energy: f64, to: f64) -> Result<f64> {
    sigma_with(&Effective::perturbative(system), energy, to, DEFAULT_REL_TOL)
}

pub(crate) fn sigma_with(eff: &Effective<'_>, energy: f64, to: f64, rel_tol: f64) -> Result<f64> {
    let tp = eff.turning_points(energy);
    let r2 = tp.r2.ok_or_else(|| {
        CwkbError::Regime("sigma needs an outer turning point".into())
    })?;
    if to < r2 {
        return Err(CwkbError::Precondition(format!("sigma needs to >= r2 = {r2}, got {to}")));
    }
    if to == r2 {
        return Ok(0.0);
    }
    let ends = SingularEnds { lower: true, upper: false };
    let d = evaluate_kind(eff, energy, r2, to, IntegralKind::Decay, ends, rel_tol)?;
    let c = evaluate_kind(eff, energy, r2, to, IntegralKind::DecayCentrifugal, ends, rel_tol)?;
    Ok(d + c)
}

/// The two higher-order correction integrals on an interval truncated away
/// from turning points, where they diverge non-integrably.
#[derive(Debug, Clone, Copy)]
pub struct HigherOrderTerms {
    pub order2: f64,
    pub order3: f64,
    /// Truncation distance actually applied at each turning-point endpoint.
    pub epsilon: f64,
}

/// Evaluates the order-2 and order-3 correction integrals on
/// `[from, to]`, pulling any endpoint that is a turning point inward by
/// `epsilon` (default `1e-3 * (r2 - r1)` when `None`). Diagnostic only.
pub fn higher_order_terms(
    system: &ConfinedSystem,
    energy: f64,
    from: f64,
    to: f64,
    epsilon: Option<f64>,
) -> Result<HigherOrderTerms> {
    higher_order_terms_with(&Effective::perturbative(system), energy, from, to, epsilon)
}

pub(crate) fn higher_order_terms_with(
    eff: &Effective<'_>,
    energy: f64,
    from: f64,
    to: f64,
    epsilon: Option<f64>,
) -> Result<HigherOrderTerms> {
    if eff.l0 == 0.0 {
        return Ok(HigherOrderTerms { order2: 0.0, order3: 0.0, epsilon: 0.0 });
    }
    let tp = eff.turning_points(energy);
    let eps = epsilon.unwrap_or_else(|| {
        let width = match tp.r2 {
            Some(r2) => r2 - tp.r1,
            None => to - from,
        };
        1e-3 * width
    });
    let mut lo = from;
    let mut hi = to;
    if !tp.r1.is_nan() && (from - tp.r1).abs() <= eps {
        lo = tp.r1 + eps;
    }
    if let Some(r2) = tp.r2 {
        if (to - r2).abs() <= eps {
            hi = r2 - eps;
        }
    }
    if !(lo < hi) {
        return Err(CwkbError::IntervalTooNarrow(format!(
            "[{from}, {to}] collapses to [{lo}, {hi}] after epsilon = {eps}"
        )));
    }
    let ends = SingularEnds::default();
    let t2 = evaluate_kind(eff, energy, lo, hi, IntegralKind::HigherOrder2, ends, DEFAULT_REL_TOL)?;
    let t3 = evaluate_kind(eff, energy, lo, hi, IntegralKind::HigherOrder3, ends, DEFAULT_REL_TOL)?;
    Ok(HigherOrderTerms { order2: t2, order3: t3, epsilon: eps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{ConfinedSystem, PotentialModel};
    use std::f64::consts::PI;

    fn ho_l1(r0: f64) -> ConfinedSystem {
        ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 1, r0).unwrap()
    }

    /// Brute-force oracle: plain adaptive quadrature on an interval pulled
    /// 1e-10 inside the singular endpoints, plus the analytic tail bound
    /// 2*C*sqrt(h) for an integrand ~ C/sqrt(x) near the edge. Good to ~1e-5.
    fn naive_integral(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let h = 1e-10;
        integrate_adaptive(f, a + h, b - h, 1e-12).unwrap()
    }

    #[test]
    fn gl_nodes_integrate_high_degree_polynomials_exactly() {
        // degree 63 is exact for 32-point Gauss-Legendre
        let f = |x: f64| x.powi(62) + 3.0 * x.powi(11);
        let got = gl_panel(&f, -1.0, 1.0);
        assert!((got - 2.0 / 63.0).abs() < 1e-14);
    }

    #[test]
    fn gamma0_and_kappa0_values() {
        let s = ho_l1(3.0);
        assert!((gamma0(&s, 2.5, 1.0).unwrap() - 3.0f64.sqrt()).abs() < 1e-12);
        // at a turning point both vanish
        let tp = s.turning_points(2.5);
        assert!(gamma0(&s, 2.5, tp.r1 + 1e-14).unwrap() < 1e-6);
        assert!((kappa0(&s, 2.5, 3.0).unwrap() - 2.0275875100994063).abs() < 1e-10);
        assert!((kappa0(&s, 2.5, 0.1).unwrap() - 9.747307320486001).abs() < 1e-10);

        // Rydberg hydrogen: gamma0 = sqrt(2m(E - V_eff)) with m = 1/2
        let h = ConfinedSystem::new(PotentialModel::hydrogen(), 1, 3.0).unwrap();
        let veff = h.v_eff(2.0).unwrap();
        assert!((veff - -0.75).abs() < 1e-15);
        assert!((gamma0(&h, -0.25, 2.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gamma0_domain_errors() {
        let s = ho_l1(3.0);
        assert!(gamma0(&s, 2.5, 3.0).is_err()); // forbidden region
        assert!(kappa0(&s, 2.5, 1.0).is_err()); // allowed region
        assert!(gamma0(&s, 2.5, -1.0).is_err());
    }

    #[test]
    fn ho_full_well_action_is_closed_form() {
        // int_{r1}^{r2} Gamma0 dr = pi (E - l) / 2 in atomic units
        let s = ho_l1(10.0);
        for &e in &[1.5, 2.5, 6.0, 11.0] {
            let tp = s.turning_points(e);
            let lam1 = lambda1(&s, e, tp.r1, tp.r2.unwrap()).unwrap();
            assert!((lam1 - PI * (e - 1.0) / 2.0).abs() < 1e-10, "E={e}: {lam1}");
        }
    }

    #[test]
    fn ho_full_well_centrifugal_is_quarter_pi() {
        let s = ho_l1(10.0);
        for &e in &[1.5, 2.5, 6.0, 11.0] {
            let tp = s.turning_points(e);
            let lam2 = lambda2(&s, e, tp.r1, tp.r2.unwrap()).unwrap();
            assert!((lam2 - PI / 4.0).abs() < 1e-10, "E={e}: {lam2}");
        }
    }

    #[test]
    fn theta_is_difference_of_full_well_integrals() {
        let s = ho_l1(10.0);
        let th = theta(&s, 2.5).unwrap();
        assert!((th - (PI * 0.75 - PI / 4.0)).abs() < 1e-10);
        assert!((th - PI / 2.0).abs() < 1e-9);
    }

    #[test]
    fn hydrogen_full_well_closed_forms() {
        // Rydberg: lambda1 = pi (1/sqrt(e) - l), lambda2 = pi/2, so theta at
        // the unconfined 2p energy is exactly pi/2 = (n_r + 1/2) pi.
        let h = ConfinedSystem::new(PotentialModel::hydrogen(), 1, 100.0).unwrap();
        let e = 0.25f64;
        let tp = h.turning_points(-e);
        let lam1 = lambda1(&h, -e, tp.r1, tp.r2.unwrap()).unwrap();
        let lam2 = lambda2(&h, -e, tp.r1, tp.r2.unwrap()).unwrap();
        assert!((lam1 - PI * (1.0 / e.sqrt() - 1.0)).abs() < 1e-9, "{lam1}");
        assert!((lam2 - PI / 2.0).abs() < 1e-9, "{lam2}");
        assert!((theta(&h, -e).unwrap() - PI / 2.0).abs() < 1e-9);
    }

    #[test]
    fn lambda_zero_width_and_l0() {
        let s = ho_l1(3.0);
        assert_eq!(lambda1(&s, 2.5, 1.0, 1.0).unwrap(), 0.0);
        let s0 = ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 0, 3.0).unwrap();
        let tp = s0.turning_points(2.5);
        assert_eq!(lambda2(&s0, 2.5, tp.r1, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn lambda2_half_interval_is_between_zero_and_full() {
        let s = ho_l1(10.0);
        let tp = s.turning_points(2.5);
        let (r1, r2) = (tp.r1, tp.r2.unwrap());
        let half = lambda2(&s, 2.5, r1, 0.5 * (r1 + r2)).unwrap();
        let full = lambda2(&s, 2.5, r1, r2).unwrap();
        assert!(half > 0.0 && half < full);
    }

    #[test]
    fn lambda1_matches_naive_quadrature_with_singular_tails() {
        let s = ho_l1(1.0);
        let e = 10.2876;
        let tp = s.turning_points(e);
        let lam1 = lambda1(&s, e, tp.r1, 1.0).unwrap();
        let g = |r: f64| (2.0 * (e - s.v_eff(r).unwrap())).max(0.0).sqrt();
        let naive = naive_integral(&g, tp.r1, 1.0);
        // integrand vanishes at r1, so the omitted tail is ~ (1e-10)^{3/2}
        assert!((lam1 - naive).abs() < 1e-8, "{lam1} vs {naive}");
    }

    #[test]
    fn theta_and_sigma_match_truncated_naive_quadrature() {
        // Naive oracle: integrate on [r1+h, r2-h] and add back the clipped
        // 1/sqrt tails analytically: near a turning point g^2 ~ s (r - rt),
        // so the centrifugal sliver is w * 2 sqrt(h/s) / rt^2.
        let s = ho_l1(3.0);
        let e = 2.5313;
        let tp = s.turning_points(e);
        let (r1, r2) = (tp.r1, tp.r2.unwrap());
        let g = |r: f64| (2.0 * (e - s.v_eff(r).unwrap())).max(0.0).sqrt();
        let c = |r: f64| 0.5 / (g(r) * r * r);
        let h = 1e-6;
        let slope = |r: f64| (2.0 * r - 2.0 / (r * r * r)).abs(); // |d(g^2)/dr|
        let tail = |rt: f64| 0.5 * 2.0 * (h / slope(rt)).sqrt() / (rt * rt);
        let naive_theta = integrate_adaptive(&|r| g(r) - c(r), r1 + h, r2 - h, 1e-12).unwrap()
            - tail(r1)
            - tail(r2);
        let th = theta(&s, e).unwrap();
        assert!((th - naive_theta).abs() < 1e-5, "{th} vs {naive_theta}");

        let k = |r: f64| (2.0 * (s.v_eff(r).unwrap() - e)).max(0.0).sqrt();
        let ck = |r: f64| 0.5 / (k(r) * r * r);
        let naive_sigma =
            integrate_adaptive(&|r| k(r) + ck(r), r2 + h, 3.0, 1e-12).unwrap() + tail(r2);
        let sg = sigma(&s, e, 3.0).unwrap();
        assert!((sg - naive_sigma).abs() < 1e-5, "{sg} vs {naive_sigma}");
        assert!(sg > 0.0);
    }

    #[test]
    fn sigma_limits() {
        let s = ho_l1(5.0);
        let e = 2.5;
        let tp = s.turning_points(e);
        let r2 = tp.r2.unwrap();
        assert_eq!(sigma(&s, e, r2).unwrap(), 0.0);
        // shrinking interval -> 0 continuously
        let small = sigma(&s, e, r2 + 1e-9).unwrap();
        assert!(small.abs() < 1e-4);
        assert!(sigma(&s, e, r2 - 0.1).is_err());
    }

    #[test]
    fn halving_tolerance_changes_integrals_below_1e9() {
        let s = ho_l1(1.0);
        let e = 10.2876;
        let tp = s.turning_points(e);
        let eff = Effective::perturbative(&s);
        let (a, b) = (tp.r1, 1.0);
        let v1 = lambda1_with(&eff, e, a, b, 1e-10).unwrap();
        let v2 = lambda1_with(&eff, e, a, b, 5e-11).unwrap();
        assert!((v1 - v2).abs() < 1e-9);
        let w1 = lambda2_with(&eff, e, a, b, 1e-10).unwrap();
        let w2 = lambda2_with(&eff, e, a, b, 5e-11).unwrap();
        assert!((w1 - w2).abs() < 1e-9);
    }

    #[test]
    fn lambda1_strictly_increasing_in_energy() {
        let s = ho_l1(1.0);
        let mut prev = 0.0;
        for i in 0..20 {
            let e = 3.0 + i as f64 * 2.0;
            let tp = s.turning_points(e);
            let v = lambda1(&s, e, tp.r1, 1.0).unwrap();
            assert!(v > prev, "E={e}: {v} <= {prev}");
            prev = v;
        }
    }

    #[test]
    fn integrals_nonnegative() {
        let s = ho_l1(3.0);
        let e = 2.5313;
        let tp = s.turning_points(e);
        assert!(lambda1(&s, e, tp.r1, tp.r2.unwrap()).unwrap() >= 0.0);
        assert!(lambda2(&s, e, tp.r1, tp.r2.unwrap()).unwrap() >= 0.0);
        assert!(sigma(&s, e, 3.0).unwrap() >= 0.0);
    }

    #[test]
    fn higher_order_l0_is_zero() {
        let s0 = ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 0, 3.0).unwrap();
        let t = higher_order_terms(&s0, 2.5, 0.5, 2.0, None).unwrap();
        assert_eq!((t.order2, t.order3), (0.0, 0.0));
    }

    #[test]
    fn higher_order_terms_match_brute_force_on_fixed_interval() {
        let s = ho_l1(3.0);
        let e = 2.5;
        // fixed interval [r1 + 0.05, r2 - 0.05]
        let tp = s.turning_points(e);
        let (a, b) = (tp.r1 + 0.05, tp.r2.unwrap() - 0.05);
        let t = higher_order_terms(&s, e, a, b, Some(1e-12)).unwrap();
        let g = |r: f64| (2.0 * (e - s.v_eff(r).unwrap())).sqrt();
        let brute2 = integrate_adaptive(&|r: f64| 1.0 / (8.0 * g(r).powi(3) * r.powi(4)), a, b, 1e-12).unwrap();
        let brute3 = integrate_adaptive(&|r: f64| 1.0 / (16.0 * g(r).powi(5) * r.powi(6)), a, b, 1e-12).unwrap();
        assert!(t.order2 > 0.0 && t.order3 > 0.0);
        assert!((t.order2 - brute2).abs() < 1e-10 * brute2.max(1.0));
        assert!((t.order3 - brute3).abs() < 1e-10 * brute3.max(1.0));
    }

    #[test]
    fn higher_order_term_grows_as_interval_approaches_turning_point() {
        let s = ho_l1(3.0);
        let e = 2.5;
        let tp = s.turning_points(e);
        let (r1, r2) = (tp.r1, tp.r2.unwrap());
        let mut prev = 0.0;
        for &eps in &[1e-1, 1e-2, 1e-3, 1e-4] {
            let t = higher_order_terms(&s, e, r1, r2, Some(eps)).unwrap();
            assert!(t.order2 > prev, "eps={eps}");
            prev = t.order2;
        }
    }

    #[test]
    fn higher_order_interval_too_narrow() {
        let s = ho_l1(3.0);
        let e = 2.5;
        let tp = s.turning_points(e);
        let r = higher_order_terms(&s, e, tp.r1, tp.r1 + 1e-6, Some(1e-3));
        assert!(matches!(r, Err(CwkbError::IntervalTooNarrow(_))));
    }

    #[test]
    fn integral_request_roundtrip() {
        let s = ho_l1(3.0);
        let tp = s.turning_points(2.5);
        let req = IntegralRequest {
            system: &s,
            energy: 2.5,
            lower: tp.r1,
            upper: 1.5,
            kind: IntegralKind::Action,
            singular_ends: SingularEnds { lower: true, upper: false },
        };
        let direct = lambda1(&s, 2.5, tp.r1, 1.5).unwrap();
        assert!((req.evaluate().unwrap() - direct).abs() < 1e-12);
        // inconsistent bracket: action integral inside a forbidden interval
        let bad = IntegralRequest {
            system: &s,
            energy: 2.5,
            lower: 2.5,
            upper: 2.9,
            kind: IntegralKind::Action,
            singular_ends: SingularEnds::default(),
        };
        assert!(matches!(bad.evaluate(), Err(CwkbError::InconsistentBracket(_))));
    }
}
