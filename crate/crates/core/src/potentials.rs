//! Potential models, unit conventions, effective potentials and classical
//! turning points.
//!
//! Three radial potentials are built in:
//!
//! ```text
//! harmonic oscillator   V(r) = r^2 / 2
//! hydrogen              V(r) = -s / r          (s = coulomb strength)
//! Hulthen               V(r) = -z d e^{-d r} / (1 - e^{-d r})
//! ```
//!
//! A `ConfinedSystem` adds an angular momentum `l` and a hard spherical wall
//! of radius `r0`. The effective potential used by the semiclassical solvers
//! carries only the classical part of the centrifugal term,
//! `V_eff = V + l^2 hbar^2 / (2 m r^2)`; the remaining `O(hbar)` piece is
//! handled perturbatively by the `quadrature` and `wkb` modules.

use crate::error::{CwkbError, Result};

/// Dimensionless unit system used by a model.
///
/// Atomic: hbar = m = 1 (harmonic oscillator, Hulthen tables).
/// Rydberg: hbar = 1, m = 1/2, Coulomb strength 2, so the unconfined
/// hydrogen spectrum is E_n = -1/n^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitConvention {
    pub hbar: f64,
    pub mass: f64,
    pub coulomb_strength: f64,
}

impl UnitConvention {
    pub const fn atomic() -> Self {
        UnitConvention {
            hbar: 1.0,
            mass: 1.0,
            coulomb_strength: 1.0,
        }
    }

    pub const fn rydberg() -> Self {
        UnitConvention {
            hbar: 1.0,
            mass: 0.5,
            coulomb_strength: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    HarmonicOscillator,
    Hydrogen,
    Hulthen,
}

/// A radial potential with its parameters and unit convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialModel {
    pub kind: PotentialKind,
    /// Screening parameter, Hulthen only.
    pub delta: f64,
    /// Atomic number, Hulthen only.
    pub z: f64,
    pub units: UnitConvention,
}

impl PotentialModel {
    pub fn harmonic_oscillator() -> Self {
        PotentialModel {
            kind: PotentialKind::HarmonicOscillator,
            delta: 0.0,
            z: 0.0,
            units: UnitConvention::atomic(),
        }
    }

    /// Hydrogen defaults to the Rydberg convention; Tables II and III only
    /// reproduce there (adjudicated against the exact solver).
    pub fn hydrogen() -> Self {
        PotentialModel {
            kind: PotentialKind::Hydrogen,
            delta: 0.0,
            z: 0.0,
            units: UnitConvention::rydberg(),
        }
    }

    pub fn hydrogen_atomic() -> Self {
        PotentialModel {
            kind: PotentialKind::Hydrogen,
            delta: 0.0,
            z: 0.0,
            units: UnitConvention::atomic(),
        }
    }

    pub fn hulthen(delta: f64) -> Self {
        PotentialModel {
            kind: PotentialKind::Hulthen,
            delta,
            z: 1.0,
            units: UnitConvention::atomic(),
        }
    }

    /// V(r). Errors on r <= 0.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(CwkbError::Domain(format!("eval_potential needs r > 0, got {r}")));
        }
        Ok(self.eval_unchecked(r))
    }

    /// V(r) without the domain check; used inside quadrature hot loops.
    #[inline]
    pub(crate) fn eval_unchecked(&self, r: f64) -> f64 {
        match self.kind {
            PotentialKind::HarmonicOscillator => 0.5 * r * r,
            PotentialKind::Hydrogen => -self.units.coulomb_strength / r,
            PotentialKind::Hulthen => {
                // -z d e^{-dr} / (1 - e^{-dr}); expm1 keeps small d*r stable
                let x = self.delta * r;
                let em = (-x).exp_m1(); // e^{-x} - 1, negative
                self.z * self.delta * (-x).exp() / em
            }
        }
    }
}

/// Classification of the classically allowed region against the wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// r1 < r0 < r2, or r1 < r0 with no outer turning point at all.
    SingleInside,
    /// Both turning points inside the box (r2 < r0).
    BothInside,
    /// No classically allowed region inside the box.
    NoClassicalRegion,
}

/// Inner/outer classical turning points of E - V_eff = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub r1: f64,
    /// Absent for positive-energy Coulomb-like states, where the allowed
    /// region extends to infinity.
    pub r2: Option<f64>,
    pub regime: Regime,
}

/// A potential plus angular momentum `l` and wall radius `r0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfinedSystem {
    pub potential: PotentialModel,
    pub l: u32,
    pub r0: f64,
}

/// Width below which a classically allowed region is treated as absent.
const DEGENERATE_WELL_WIDTH: f64 = 1e-8;

impl ConfinedSystem {
    pub fn new(potential: PotentialModel, l: u32, r0: f64) -> Result<Self> {
        if !(r0 > 0.0) {
            return Err(CwkbError::Domain(format!("confinement radius must be > 0, got {r0}")));
        }
        Ok(ConfinedSystem { potential, l, r0 })
    }

    /// Classical centrifugal coefficient `c` in `c hbar^2 / (2 m r^2)`.
    #[inline]
    pub fn centrifugal_coefficient(&self) -> f64 {
        (self.l as f64) * (self.l as f64)
    }

    /// `L0 = hbar l`, the strength of the first-order quantum correction.
    #[inline]
    pub fn correction_l0(&self) -> f64 {
        self.potential.units.hbar * self.l as f64
    }

    /// V_eff(r) = V(r) + l^2 hbar^2 / (2 m r^2). Errors on r <= 0.
    pub fn v_eff(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(CwkbError::Domain(format!("eval_v_eff needs r > 0, got {r}")));
        }
        Ok(self.v_eff_with(r, self.centrifugal_coefficient()))
    }

    /// Effective potential with an arbitrary centrifugal coefficient; the
    /// Langer variant passes (l + 1/2)^2 here.
    #[inline]
    pub(crate) fn v_eff_with(&self, r: f64, centrifugal: f64) -> f64 {
        let u = self.potential.units;
        self.potential.eval_unchecked(r) + centrifugal * u.hbar * u.hbar / (2.0 * u.mass * r * r)
    }

    /// Turning points of E - V_eff = 0 and their regime against r0.
    pub fn turning_points(&self, energy: f64) -> TurningPoints {
        self.turning_points_with(energy, self.centrifugal_coefficient())
    }

    pub(crate) fn turning_points_with(&self, energy: f64, centrifugal: f64) -> TurningPoints {
        let u = self.potential.units;
        // a = c hbar^2 / (2 m), the coefficient of 1/r^2 in V_eff
        let a = centrifugal * u.hbar * u.hbar / (2.0 * u.mass);
        let raw = match self.potential.kind {
            PotentialKind::HarmonicOscillator => {
                // r^2/2 + a/r^2 = E  =>  r^4 - 2E r^2 + 2a = 0
                let disc = energy * energy - 2.0 * a;
                if disc < 0.0 {
                    None
                } else {
                    let s = disc.sqrt();
                    Some(((energy - s).max(0.0).sqrt(), Some((energy + s).sqrt())))
                }
            }
            PotentialKind::Hydrogen => {
                let s = u.coulomb_strength;
                if energy > 0.0 {
                    // E r^2 + s r - a = 0, single positive root
                    let rt = (-s + (s * s + 4.0 * energy * a).sqrt()) / (2.0 * energy);
                    Some((rt, None))
                } else if energy == 0.0 {
                    Some((a / s, None))
                } else {
                    // e r^2 - s r + a = 0, e = -E
                    let e = -energy;
                    let disc = s * s - 4.0 * e * a;
                    if disc < 0.0 {
                        None
                    } else {
                        let sq = disc.sqrt();
                        Some(((s - sq) / (2.0 * e), Some((s + sq) / (2.0 * e))))
                    }
                }
            }
            PotentialKind::Hulthen => self.hulthen_turning_points(energy, centrifugal),
        };

        let Some((r1, r2)) = raw else {
            return TurningPoints { r1: f64::NAN, r2: None, regime: Regime::NoClassicalRegion };
        };

        // Degenerate well: E essentially at the bottom of V_eff.
        if let Some(r2v) = r2 {
            if r2v - r1 < DEGENERATE_WELL_WIDTH {
                return TurningPoints { r1, r2, regime: Regime::NoClassicalRegion };
            }
        }

        let regime = if r1 >= self.r0 {
            Regime::NoClassicalRegion
        } else {
            match r2 {
                Some(r2v) if r2v <= self.r0 => Regime::BothInside,
                _ => Regime::SingleInside,
            }
        };
        TurningPoints { r1, r2, regime }
    }

    /// Bracketed bisection for the Hulthen turning points: a logarithmic scan
    /// locates sign changes of E - V_eff, bisection refines them. The scan
    /// domain expands outward until V_eff(upper) > E or a hard cap is hit,
    /// so an outer turning point beyond max(r0, 4/delta) is still found.
    fn hulthen_turning_points(&self, energy: f64, centrifugal: f64) -> Option<(f64, Option<f64>)> {
        let f = |r: f64| energy - self.v_eff_with(r, centrifugal);
        let mut upper = self.r0.max(4.0 / self.potential.delta);
        if energy < 0.0 {
            // V_eff -> 0+ at large r, so E - V_eff is eventually negative
            let cap = 1e7;
            while f(upper) > 0.0 && upper < cap {
                upper *= 2.0;
            }
        }
        let lower: f64 = 1e-6;
        let n = 512usize;
        let log_lo = lower.ln();
        let log_hi = upper.ln();
        let grid = |i: usize| (log_lo + (log_hi - log_lo) * i as f64 / n as f64).exp();

        let mut crossings: Vec<f64> = Vec::new();
        let mut prev_r = grid(0);
        let mut prev_f = f(prev_r);
        for i in 1..=n {
            let r = grid(i);
            let fr = f(r);
            if prev_f == 0.0 {
                crossings.push(prev_r);
            } else if prev_f * fr < 0.0 {
                crossings.push(bisect_root(&f, prev_r, r));
            }
            prev_r = r;
            prev_f = fr;
            if crossings.len() == 2 {
                break;
            }
        }
        match crossings.len() {
            0 => None,
            1 => {
                // Single crossing: for l >= 1 this is the descending branch
                // (inner point); for E >= 0 no outer point exists.
                Some((crossings[0], None))
            }
            _ => Some((crossings[0], Some(crossings[1]))),
        }
    }

    /// Minimum of V_eff on (0, r0], located on a dense grid and polished by
    /// golden-section; used to clip solver search windows.
    pub fn v_eff_minimum(&self) -> f64 {
        self.v_eff_minimum_with(self.centrifugal_coefficient())
    }

    pub(crate) fn v_eff_minimum_with(&self, centrifugal: f64) -> f64 {
        if centrifugal == 0.0 && self.potential.kind != PotentialKind::HarmonicOscillator {
            // Monotone increasing from -infinity; the infimum is unbounded,
            // callers must supply their own window.
            return f64::NEG_INFINITY;
        }
        let lo: f64 = 1e-6;
        let hi = match self.potential.kind {
            PotentialKind::HarmonicOscillator => self.r0.max(centrifugal.sqrt().max(1.0) * 4.0),
            _ => self.r0.max(1.0) * 64.0,
        };
        let n = 2048;
        let mut best = f64::INFINITY;
        let (llo, lhi) = (lo.ln(), hi.ln());
        let mut best_r = lo;
        for i in 0..=n {
            let r = (llo + (lhi - llo) * i as f64 / n as f64).exp();
            let v = self.v_eff_with(r, centrifugal);
            if v < best {
                best = v;
                best_r = r;
            }
        }
        // golden-section polish around the grid minimum
        let (mut a, mut b) = (best_r * 0.5, best_r * 2.0);
        const PHI: f64 = 0.618_033_988_749_894_9;
        for _ in 0..80 {
            let x1 = b - PHI * (b - a);
            let x2 = a + PHI * (b - a);
            if self.v_eff_with(x1, centrifugal) < self.v_eff_with(x2, centrifugal) {
                b = x2;
            } else {
                a = x1;
            }
        }
        best.min(self.v_eff_with(0.5 * (a + b), centrifugal))
    }
}

fn bisect_root(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
        if (b - a).abs() < 1e-15 * b.abs().max(1.0) {
            break;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ho_l1(r0: f64) -> ConfinedSystem {
        ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 1, r0).unwrap()
    }

    #[test]
    fn potential_values() {
        let ho = PotentialModel::harmonic_oscillator();
        assert_eq!(ho.eval(2.0).unwrap(), 2.0);

        let h = PotentialModel::hydrogen_atomic();
        assert_eq!(h.eval(0.5).unwrap(), -2.0);

        let hu = PotentialModel::hulthen(0.1);
        let expected = -0.1 * (-1.0f64).exp() / (1.0 - (-1.0f64).exp());
        assert!((hu.eval(10.0).unwrap() - expected).abs() < 1e-15);
        assert!((expected - -0.05819767068693265).abs() < 1e-15);
    }

    #[test]
    fn potential_rejects_nonpositive_radius() {
        let ho = PotentialModel::harmonic_oscillator();
        assert!(ho.eval(0.0).is_err());
        assert!(ho.eval(-1.0).is_err());
    }

    #[test]
    fn hulthen_small_delta_r_is_stable() {
        // For d*r -> 0 the Hulthen potential approaches -z/r + z*d/2.
        let hu = PotentialModel::hulthen(1e-6);
        let r = 1.0;
        let v = hu.eval(r).unwrap();
        assert!((v - (-1.0 / r + 0.5e-6)).abs() < 1e-9);
    }

    #[test]
    fn v_eff_values() {
        let s = ho_l1(3.0);
        assert!((s.v_eff(1.0).unwrap() - 1.0).abs() < 1e-15);

        let s0 = ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 0, 3.0).unwrap();
        assert_eq!(s0.v_eff(1.0).unwrap(), 0.5);

        let h = ConfinedSystem::new(PotentialModel::hydrogen(), 1, 3.0).unwrap();
        assert!((h.v_eff(1.0).unwrap() - -1.0).abs() < 1e-15);
    }

    #[test]
    fn ho_turning_points_match_closed_identities() {
        // r1^2 + r2^2 = 2E and r1 r2 = l in atomic units.
        let s = ho_l1(3.0);
        for &e in &[1.3, 2.5, 4.0, 7.7, 19.25, 42.0] {
            let tp = s.turning_points(e);
            let r2 = tp.r2.unwrap();
            assert!((tp.r1 * tp.r1 + r2 * r2 - 2.0 * e).abs() < 1e-10, "E={e}");
            assert!((tp.r1 * r2 - 1.0).abs() < 1e-10, "E={e}");
        }
    }

    #[test]
    fn ho_turning_points_example() {
        let s = ho_l1(3.0);
        let tp = s.turning_points(2.5);
        assert!((tp.r1 - 0.45685025174785676).abs() < 1e-10);
        assert!((tp.r2.unwrap() - 2.1889010593167337).abs() < 1e-10);
        // residual at the returned points
        for r in [tp.r1, tp.r2.unwrap()] {
            assert!((2.5 - s.v_eff(r).unwrap()).abs() <= 1e-10);
        }
    }

    #[test]
    fn ho_degenerate_well_is_no_classical_region() {
        let s = ho_l1(3.0);
        let tp = s.turning_points(1.0); // E = l: r1 = r2 = 1
        assert_eq!(tp.regime, Regime::NoClassicalRegion);
    }

    #[test]
    fn hydrogen_bound_identities() {
        // atomic units, strength 1: r1 + r2 = 1/e, r1 r2 = l^2/(2e)
        let sys = ConfinedSystem::new(PotentialModel::hydrogen_atomic(), 1, 5.0).unwrap();
        for &e in &[0.05, 0.125, 0.3, 0.45] {
            let tp = sys.turning_points(-e);
            let r2 = tp.r2.unwrap();
            assert!((tp.r1 + r2 - 1.0 / e).abs() < 1e-10 * (1.0 / e), "e={e}");
            assert!((tp.r1 * r2 - 1.0 / (2.0 * e)).abs() < 1e-10 / (2.0 * e), "e={e}");
        }
    }

    #[test]
    fn hydrogen_l0_bound_turning_points() {
        let sys = ConfinedSystem::new(PotentialModel::hydrogen_atomic(), 0, 5.0).unwrap();
        let tp = sys.turning_points(-0.5);
        assert_eq!(tp.r1, 0.0);
        assert!((tp.r2.unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn hydrogen_positive_energy_single_point() {
        let sys = ConfinedSystem::new(PotentialModel::hydrogen(), 1, 1.0).unwrap();
        let tp = sys.turning_points(16.5063);
        assert!(tp.r2.is_none());
        assert_eq!(tp.regime, Regime::SingleInside);
        // E = V_eff at the returned point
        assert!((16.5063 - sys.v_eff(tp.r1).unwrap()).abs() < 1e-9 * 16.5063);
    }

    #[test]
    fn hulthen_turning_points_agree_with_dense_scan() {
        let sys = ConfinedSystem::new(PotentialModel::hulthen(0.1), 1, 10.0).unwrap();
        let e = -0.0725;
        let tp = sys.turning_points(e);
        let r2 = tp.r2.expect("outer point exists for bound E");

        // dense scan oracle, step 1e-4
        let f = |r: f64| e - sys.v_eff(r).unwrap();
        let mut found = Vec::new();
        let mut prev = f(1e-4);
        let mut r_prev = 1e-4;
        let mut r = 2e-4;
        while r < 40.0 {
            let fr = f(r);
            if prev * fr < 0.0 {
                found.push(0.5 * (r_prev + r));
            }
            prev = fr;
            r_prev = r;
            r += 1e-4;
        }
        assert_eq!(found.len(), 2);
        assert!((tp.r1 - found[0]).abs() < 1e-4 + 1e-6);
        assert!((r2 - found[1]).abs() < 1e-4 + 1e-6);
        // and the residual condition is much tighter than the scan
        assert!((e - sys.v_eff(tp.r1).unwrap()).abs() < 1e-9);
        assert!((e - sys.v_eff(r2).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn hulthen_outer_point_beyond_scan_seed_is_found() {
        // E close to zero pushes r2 far out; the expanding scan must find it.
        let sys = ConfinedSystem::new(PotentialModel::hulthen(0.1), 1, 6.0).unwrap();
        let tp = sys.turning_points(-0.001);
        let r2 = tp.r2.expect("bound state has an outer turning point");
        assert!(r2 > 40.0, "r2 = {r2}");
        assert!((sys.v_eff(r2).unwrap() - -0.001).abs() < 1e-9);
        assert_eq!(tp.regime, Regime::SingleInside);
    }

    #[test]
    fn regime_classification_against_wall() {
        let tight = ho_l1(1.0);
        assert_eq!(tight.turning_points(10.2876).regime, Regime::SingleInside);
        let wide = ho_l1(5.0);
        assert_eq!(wide.turning_points(2.5).regime, Regime::BothInside);
        // E below the well bottom
        assert_eq!(wide.turning_points(0.5).regime, Regime::NoClassicalRegion);
    }

    #[test]
    fn v_eff_single_minimum_for_l_ge_1() {
        // at most two sign changes of E - V_eff on a dense grid
        let models = [
            PotentialModel::harmonic_oscillator(),
            PotentialModel::hydrogen(),
            PotentialModel::hulthen(0.2),
        ];
        for m in models {
            for l in 1..=2u32 {
                let sys = ConfinedSystem::new(m, l, 8.0).unwrap();
                let min = sys.v_eff_minimum();
                let e = min + 0.3 * min.abs().max(0.5);
                let mut changes = 0;
                let mut prev = e - sys.v_eff(1e-4).unwrap();
                for i in 1..30000 {
                    let r = 1e-4 + (8.0 - 1e-4) * i as f64 / 30000.0;
                    let cur = e - sys.v_eff(r).unwrap();
                    if prev * cur < 0.0 {
                        changes += 1;
                    }
                    prev = cur;
                }
                assert!(changes <= 2, "{m:?} l={l}: {changes} sign changes");
            }
        }
    }

    #[test]
    fn v_eff_minimum_matches_closed_forms() {
        // HO: min at r = sqrt(l), value l; hydrogen Rydberg: -1/l^2
        let s = ho_l1(5.0);
        assert!((s.v_eff_minimum() - 1.0).abs() < 1e-9);
        let h = ConfinedSystem::new(PotentialModel::hydrogen(), 1, 20.0).unwrap();
        assert!((h.v_eff_minimum() - -1.0).abs() < 1e-9);
        let h2 = ConfinedSystem::new(PotentialModel::hydrogen(), 2, 20.0).unwrap();
        assert!((h2.v_eff_minimum() - -0.25).abs() < 1e-9);
    }
}
