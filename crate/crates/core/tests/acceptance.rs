//! Acceptance suite: the eight gate criteria run end to end, one test per
//! criterion, one printed PASS/FAIL line per checked row or property.
//!
//! Criteria 1-3 (reproduction of the published semiclassical columns) are
//! asserted at their stated tolerances against the literal quantization
//! rules. Several published small- and moderate-box entries are internally
//! inconsistent with those rules at the gated tolerance (the required
//! quantization constants drift non-monotonically row to row), so those rows
//! fail honestly; the printed report shows the achieved deltas per row.

use cwkb_core::oracle::{solve_exact, NumerovConfig};
use cwkb_core::potentials::{ConfinedSystem, PotentialModel};
use cwkb_core::quadrature::{integrate_adaptive, lambda1, lambda2};
use cwkb_core::reference::{ReferenceTable, TableId};
use cwkb_core::wkb::{
    build_wavefunction, higher_order_shift, higher_order_shift_with, solve_energy, Method,
    QuantumNumbers, SearchParams,
};
use std::f64::consts::PI;
use std::time::Instant;

struct Gate {
    label: String,
    failures: Vec<String>,
    checks: usize,
}

impl Gate {
    fn new(label: &str) -> Self {
        Gate { label: label.to_string(), failures: Vec::new(), checks: 0 }
    }

    fn check(&mut self, what: &str, ok: bool, detail: &str) {
        self.checks += 1;
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("[{}] {verdict} {what}: {detail}", self.label);
        if !ok {
            self.failures.push(format!("{what}: {detail}"));
        }
    }

    fn finish(self) {
        println!(
            "[{}] {} of {} checks passed",
            self.label,
            self.checks - self.failures.len(),
            self.checks
        );
        assert!(
            self.failures.is_empty(),
            "[{}] {} of {} checks failed:\n  {}",
            self.label,
            self.failures.len(),
            self.checks,
            self.failures.join("\n  ")
        );
    }
}

fn solve(table: &ReferenceTable, row: &cwkb_core::reference::ReferenceRow, method: Method) -> Result<f64, String> {
    let sys = table.system(row);
    let qn = row.quantum_numbers();
    match method {
        Method::Exact => solve_exact(&sys, qn, &NumerovConfig::default(), None)
            .map(|r| r.energy)
            .map_err(|e| e.to_string()),
        m => solve_energy(&sys, qn, m, SearchParams::default())
            .map(|r| r.energy)
            .map_err(|e| e.to_string()),
    }
}

fn check_column(
    gate: &mut Gate,
    id: TableId,
    method: Method,
    tol: f64,
    select: impl Fn(&cwkb_core::reference::ReferenceRow) -> Option<f64>,
) {
    let table = ReferenceTable::get(id);
    for row in &table.rows {
        let Some(reference) = select(row) else { continue };
        let started = Instant::now();
        match solve(&table, row, method) {
            Ok(e) => {
                let d = (e - reference).abs();
                gate.check(
                    &format!("table {} r0={} {} {}", id.name(), row.r0, row.quantum_numbers().label(), method.name()),
                    d <= tol,
                    &format!("got {e:.5}, published {reference:.5}, |d| = {d:.1e}, tol {tol:.0e}, {} ms",
                        started.elapsed().as_millis()),
                );
            }
            Err(e) => gate.check(
                &format!("table {} r0={} {}", id.name(), row.r0, method.name()),
                false,
                &format!("solver error: {e}"),
            ),
        }
    }
}

/// Criterion 1: Table I, perturbative E on the five non-starred rows and
/// Langer E(WKB) on its non-starred rows, both within 1e-3; under 1 s a row.
#[test]
fn criterion_1_table_i_reproduction() {
    let mut gate = Gate::new("criterion 1");
    let pert_rows = [1.0, 1.5, 3.0, 4.0, 5.0];
    check_column(&mut gate, TableId::I, Method::Perturbative, 1e-3, |row| {
        if pert_rows.contains(&row.r0) {
            row.e_perturbative
        } else {
            None
        }
    });
    check_column(&mut gate, TableId::I, Method::Langer, 1e-3, |row| {
        if row.starred_langer {
            None
        } else {
            row.e_langer
        }
    });
    // runtime: each solve under one second
    let table = ReferenceTable::get(TableId::I);
    for row in &table.rows {
        let t0 = Instant::now();
        let _ = solve(&table, row, Method::Perturbative);
        let ms = t0.elapsed().as_millis();
        gate.check(&format!("runtime r0={}", row.r0), ms < 1000, &format!("{ms} ms"));
    }
    gate.finish();
}

/// Criterion 2: hydrogen Tables II-III at 2e-3 on non-starred rows, plus the
/// unit-convention adjudication (Rydberg matches E(exact), atomic does not).
#[test]
fn criterion_2_hydrogen_tables() {
    let mut gate = Gate::new("criterion 2");
    for id in [TableId::II, TableId::III] {
        check_column(&mut gate, id, Method::Perturbative, 2e-3, |row| {
            if row.starred_perturbative {
                None
            } else {
                row.e_perturbative
            }
        });
        check_column(&mut gate, id, Method::Langer, 2e-3, |row| {
            if row.starred_langer {
                None
            } else {
                row.e_langer
            }
        });
    }

    // Adjudication artifact: the exact solver reproduces Table II E(exact)
    // in Rydberg units and misses by about a factor of two in atomic units.
    let cfg = NumerovConfig::default();
    let qn = QuantumNumbers::new(0, 1);
    let mut max_d: f64 = 0.0;
    for row in &ReferenceTable::get(TableId::II).rows {
        let sys = ConfinedSystem::new(PotentialModel::hydrogen(), 1, row.r0).unwrap();
        let e = solve_exact(&sys, qn, &cfg, None).unwrap().energy;
        max_d = max_d.max((e - row.e_exact.unwrap()).abs());
    }
    gate.check("adjudication rydberg", max_d <= 2e-3, &format!("max |d| = {max_d:.1e} over Table II"));
    let atomic = ConfinedSystem::new(PotentialModel::hydrogen_atomic(), 1, 1.0).unwrap();
    let e_atomic = solve_exact(&atomic, qn, &cfg, None).unwrap().energy;
    gate.check(
        "adjudication atomic",
        (e_atomic - 16.446).abs() > 5.0,
        &format!("atomic-units 2p(r0=1) = {e_atomic:.4}, published 16.446 (must disagree)"),
    );
    gate.finish();
}

/// Criterion 3: Hulthen Tables IV-V, perturbative E within 2e-3 on all rows;
/// exact and 1/N columns are shipped as literature constants.
#[test]
fn criterion_3_hulthen_tables() {
    let mut gate = Gate::new("criterion 3");
    for id in [TableId::IV, TableId::V] {
        check_column(&mut gate, id, Method::Perturbative, 2e-3, |row| row.e_perturbative);
        for row in &ReferenceTable::get(id).rows {
            gate.check(
                &format!("table {} r0={} literature columns present", id.name(), row.r0),
                row.e_exact.is_some() && row.e_one_over_n.is_some(),
                "exact and 1/N constants echoed",
            );
        }
    }
    gate.finish();
}

/// Criterion 4: the exact solver matches every published E(exact) column
/// (2e-3 for Tables I-III, 5e-3 for IV-V) and is grid-converged to 1e-6.
#[test]
fn criterion_4_oracle_fidelity() {
    let mut gate = Gate::new("criterion 4");
    for (id, tol) in [
        (TableId::I, 2e-3),
        (TableId::II, 2e-3),
        (TableId::III, 2e-3),
        (TableId::IV, 5e-3),
        (TableId::V, 5e-3),
    ] {
        check_column(&mut gate, id, Method::Exact, tol, |row| row.e_exact);
    }
    // grid-doubling gate on a representative row of each table
    let base = NumerovConfig::default();
    let doubled = NumerovConfig { grid_points: base.grid_points * 2, ..base };
    for id in TableId::all() {
        let table = ReferenceTable::get(id);
        let row = &table.rows[table.rows.len() / 2];
        let sys = table.system(row);
        let qn = row.quantum_numbers();
        let e1 = solve_exact(&sys, qn, &base, None).unwrap().energy;
        let e2 = solve_exact(&sys, qn, &doubled, None).unwrap().energy;
        gate.check(
            &format!("grid doubling table {} r0={}", id.name(), row.r0),
            (e1 - e2).abs() < 1e-6,
            &format!("|d| = {:.1e}", (e1 - e2).abs()),
        );
    }
    gate.finish();
}

/// Criterion 5: over the non-starred rows of Tables I-III, the perturbative
/// energies beat the Langer energies against the exact solver in a strict
/// majority of rows.
#[test]
fn criterion_5_method_comparison() {
    let mut gate = Gate::new("criterion 5");
    let mut pert_wins = 0usize;
    let mut langer_wins = 0usize;
    for id in [TableId::I, TableId::II, TableId::III] {
        let table = ReferenceTable::get(id);
        for row in &table.rows {
            if row.starred_perturbative || row.starred_langer {
                continue;
            }
            let p = solve(&table, row, Method::Perturbative).unwrap();
            let w = solve(&table, row, Method::Langer).unwrap();
            let x = solve(&table, row, Method::Exact).unwrap();
            if (p - x).abs() <= (w - x).abs() {
                pert_wins += 1;
            } else {
                langer_wins += 1;
            }
        }
    }
    println!("[criterion 5] win count: perturbative {pert_wins}, langer {langer_wins}");
    gate.check(
        "strict majority",
        pert_wins > langer_wins,
        &format!("perturbative {pert_wins} vs langer {langer_wins}"),
    );
    gate.finish();
}

/// Criterion 6: the property suites, independent of the published tables.
#[test]
fn criterion_6_property_suites() {
    let mut gate = Gate::new("criterion 6");

    // turning-point residuals across all three potentials
    let systems: Vec<(ConfinedSystem, Vec<f64>)> = vec![
        (
            ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 1, 3.0).unwrap(),
            vec![1.7, 2.5, 5.5, 11.0, 23.0],
        ),
        (
            ConfinedSystem::new(PotentialModel::hydrogen(), 1, 5.0).unwrap(),
            vec![-0.8, -0.25, -0.05, 3.0, 40.0],
        ),
        (
            ConfinedSystem::new(PotentialModel::hulthen(0.1), 1, 10.0).unwrap(),
            vec![-0.07, -0.03, -0.005],
        ),
    ];
    let mut worst: f64 = 0.0;
    for (sys, energies) in &systems {
        for &e in energies {
            let tp = sys.turning_points(e);
            if tp.r1.is_nan() {
                continue;
            }
            let mut pts = vec![tp.r1];
            if let Some(r2) = tp.r2 {
                pts.push(r2);
            }
            for r in pts {
                if r <= 0.0 {
                    continue;
                }
                let resid = (e - sys.v_eff(r).unwrap()).abs() / e.abs().max(1.0);
                worst = worst.max(resid);
            }
        }
    }
    gate.check("turning-point residuals", worst <= 1e-9, &format!("worst {worst:.1e}"));

    // HO closed-form identities to 1e-10
    let ho = ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 1, 3.0).unwrap();
    let mut worst_ho: f64 = 0.0;
    for i in 0..40 {
        let e = 1.0 + 0.003 + i as f64 * 1.1;
        let tp = ho.turning_points(e);
        if tp.r2.is_none() {
            continue;
        }
        let r2 = tp.r2.unwrap();
        worst_ho = worst_ho.max((tp.r1 * tp.r1 + r2 * r2 - 2.0 * e).abs());
        worst_ho = worst_ho.max((tp.r1 * r2 - 1.0).abs());
    }
    gate.check("HO identities r1^2+r2^2=2E, r1 r2=l", worst_ho <= 1e-10, &format!("worst {worst_ho:.1e}"));

    // hydrogen identities in atomic units to 1e-10
    let hyd = ConfinedSystem::new(PotentialModel::hydrogen_atomic(), 1, 5.0).unwrap();
    let mut worst_h: f64 = 0.0;
    for i in 1..40 {
        let e = 0.002 + 0.012 * i as f64; // binding energy, E = -e
        if 1.0 - 2.0 * e < 0.0 {
            continue;
        }
        let tp = hyd.turning_points(-e);
        let r2 = tp.r2.unwrap();
        worst_h = worst_h.max(((tp.r1 + r2 - 1.0 / e) / (1.0 / e)).abs());
        worst_h = worst_h.max(((tp.r1 * r2 - 1.0 / (2.0 * e)) / (1.0 / (2.0 * e))).abs());
    }
    gate.check("hydrogen identities r1+r2=1/e, r1 r2=l^2/2e", worst_h <= 1e-10, &format!("worst {worst_h:.1e}"));

    // lambda2 vanishes identically at l = 0
    let s0 = ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 0, 3.0).unwrap();
    let tp = s0.turning_points(2.5);
    let l2 = lambda2(&s0, 2.5, tp.r1, 2.0).unwrap();
    gate.check("lambda2 at l=0", l2 == 0.0, &format!("lambda2 = {l2}"));

    // computed eigenvalues decrease strictly with r0 within each table state
    for id in TableId::all() {
        let table = ReferenceTable::get(id);
        let mut last: Option<(u32, u32, f64)> = None;
        let mut monotone = true;
        let mut detail = String::new();
        for row in &table.rows {
            let e = solve(&table, row, Method::Perturbative).unwrap();
            if let Some((nr, l, prev)) = last {
                if nr == row.nr && l == row.l && e >= prev {
                    monotone = false;
                    detail = format!("r0={}: {e:.6} >= {prev:.6}", row.r0);
                }
            }
            last = Some((row.nr, row.l, e));
        }
        gate.check(&format!("monotone in r0, table {}", id.name()), monotone, &detail);
    }

    // region-II node count equals n_r for every converged perturbative root
    for id in TableId::all() {
        let table = ReferenceTable::get(id);
        for row in &table.rows {
            let sys = table.system(row);
            let qn = row.quantum_numbers();
            let res = solve_energy(&sys, qn, Method::Perturbative, SearchParams::default()).unwrap();
            let trace = build_wavefunction(&sys, qn, res.energy, 1200).unwrap();
            let nodes = trace.region_ii_nodes();
            gate.check(
                &format!("node count table {} r0={} {}", id.name(), row.r0, qn.label()),
                nodes == row.nr as usize,
                &format!("{nodes} nodes for n_r = {}", row.nr),
            );
            gate.check(
                &format!("residual at root table {} r0={}", id.name(), row.r0),
                res.residual.abs() < 1e-9,
                &format!("|f(E*)| = {:.1e}", res.residual.abs()),
            );
        }
    }
    gate.finish();
}

/// Criterion 7: full-well closed forms for the oscillator, checked against
/// an independent naive quadrature at 1e-8.
#[test]
fn criterion_7_ho_closed_forms() {
    let mut gate = Gate::new("criterion 7");
    let sys = ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 1, 20.0).unwrap();
    for &e in &[1.8, 2.5, 4.0, 9.0] {
        let tp = sys.turning_points(e);
        let (r1, r2) = (tp.r1, tp.r2.unwrap());
        let a1 = lambda1(&sys, e, r1, r2).unwrap();
        let a2 = lambda2(&sys, e, r1, r2).unwrap();
        gate.check(
            &format!("lambda1 full well at E={e}"),
            (a1 - PI * (e - 1.0) / 2.0).abs() < 1e-8,
            &format!("{a1:.12} vs pi(E-l)/2 = {:.12}", PI * (e - 1.0) / 2.0),
        );
        gate.check(
            &format!("lambda2 full well at E={e}"),
            (a2 - PI / 4.0).abs() < 1e-8,
            &format!("{a2:.12} vs pi/4 = {:.12}", PI / 4.0),
        );
        // the independent route: naive quadrature on a clipped interval plus
        // the analytic sqrt tails
        let g = |r: f64| (2.0 * (e - sys.v_eff(r).unwrap())).max(0.0).sqrt();
        let h = 1e-8;
        let naive = integrate_adaptive(&g, r1 + h, r2 - h, 1e-13).unwrap();
        gate.check(
            &format!("lambda1 vs independent quadrature at E={e}"),
            (a1 - naive).abs() < 1e-8,
            &format!("|d| = {:.1e}", (a1 - naive).abs()),
        );
    }
    gate.finish();
}

/// Criterion 8: the higher-order terms are a nonzero diagnostic for the
/// confined oscillator and grow without bound as the truncation shrinks.
#[test]
fn criterion_8_higher_order_diagnostic() {
    let mut gate = Gate::new("criterion 8");
    let sys = ConfinedSystem::new(PotentialModel::harmonic_oscillator(), 1, 3.0).unwrap();
    let qn = QuantumNumbers::new(0, 1);
    let res = solve_energy(&sys, qn, Method::Perturbative, SearchParams::default()).unwrap();
    let rep = higher_order_shift(&sys, qn, res.energy).unwrap();
    gate.check(
        "nonzero shift at (l=1, r0=3)",
        rep.terms.order2 > 0.0 && rep.terms.order3 > 0.0 && rep.shifted_residual != rep.base_residual,
        &format!("order2 = {:.3e}, order3 = {:.3e}", rep.terms.order2, rep.terms.order3),
    );
    let mut prev = 0.0;
    let mut growing = true;
    for k in 1..=4 {
        let eps = rep.terms.epsilon / (10f64).powi(k);
        let r = higher_order_shift_with(&sys, qn, res.energy, Some(eps)).unwrap();
        if r.terms.order2 <= prev {
            growing = false;
        }
        prev = r.terms.order2;
    }
    gate.check("order-2 term grows as epsilon shrinks", growing, &format!("last {prev:.3e}"));
    gate.finish();
}
