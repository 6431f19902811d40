//! Parameter sweeps over `(gamma, alpha)` through all three routes.

mod config;
mod report;

pub use config::{OutputFormat, OutputTarget, SweepConfig, Tolerances, DEFAULT_FOCK_DIM, MAX_FOCK_DIM};
pub use report::{csv_header, render, to_csv, to_json, write_report, CSV_COLUMNS, SCHEMA_VERSION};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fock::{self, BogoliubovPair};
use crate::quadrature::{quadrature_moments, QuadratureRule};
use crate::state::{closed_form_moments, make_state, MomentSet, PhysicalConstants, VacuumParameters};
use crate::thermo::{classify_alpha, effective_temperature, energy_decomposition, EnergyReport, StateKind};
use crate::uncertainty::{evaluate_sur, UncertaintyReport};

/// Largest relative deviation between two moment sets over `var_q`, `var_p`
/// and the complex correlator, measured against `reference`.
pub fn relative_discrepancy(a: &MomentSet, reference: &MomentSet) -> f64 {
    let rel = |x: f64, r: f64| (x - r).abs() / r.abs();
    let corr = (a.correlator - reference.correlator).norm() / reference.correlator.norm();
    rel(a.var_q, reference.var_q)
        .max(rel(a.var_p, reference.var_p))
        .max(corr)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Discrepancies {
    pub quadrature_vs_closed: Option<f64>,
    pub fock_vs_closed: Option<f64>,
    pub fock_vs_quadrature: Option<f64>,
}

/// One grid point with every route's output. Route failures leave the
/// corresponding fields empty and are listed in `errors`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub gamma: f64,
    pub alpha: f64,
    pub hbar: f64,
    pub mass: f64,
    pub closed: MomentSet,
    pub quadrature: Option<MomentSet>,
    pub fock: Option<MomentSet>,
    /// Relations evaluated on the closed-form moments.
    pub uncertainty: UncertaintyReport,
    pub sur_gap_quadrature: Option<f64>,
    pub sur_gap_fock: Option<f64>,
    pub energy: EnergyReport,
    pub t_eff: Option<f64>,
    pub bogoliubov: BogoliubovPair,
    pub eq6_residual: Option<f64>,
    pub odd_weight: Option<f64>,
    pub classification: StateKind,
    pub discrepancies: Discrepancies,
    pub errors: Vec<String>,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub constants: PhysicalConstants,
    pub fock_dim: usize,
    pub tolerances: Tolerances,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn failing_rows(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn evaluate_point(gamma: f64, alpha: f64, cfg: &SweepConfig) -> Result<SweepRow> {
    let constants = cfg.constants();
    let tol = &cfg.tolerances;
    let params = VacuumParameters::new(gamma, alpha)?;
    let state = make_state(params, constants)?;
    let mut errors = Vec::new();

    let closed = closed_form_moments(&state);
    let uncertainty = evaluate_sur(&closed, &constants);
    let energy = energy_decomposition(&closed, &params, &constants);
    let t_eff = effective_temperature(&energy, &params, &constants);
    let bogoliubov = fock::bogoliubov_coefficients(alpha)?;

    let rule = QuadratureRule::default().with_tolerance(tol.integration);
    let quadrature = quadrature_moments(&state, &rule)
        .map_err(|e| errors.push(e.to_string()))
        .ok();

    let mut eq6_residual = None;
    let mut odd_weight = None;
    let fock_result = fock::build_fock(gamma, &constants, cfg.fock_dim).and_then(|rep| {
        let v = fock::solve_vacuum_vector(&rep, alpha)?;
        Ok((fock::fock_moments(&rep, &v), v))
    });
    let fock = match fock_result {
        Ok((m, v)) => {
            eq6_residual = Some(v.residual);
            odd_weight = Some(v.odd_weight());
            Some(m)
        }
        Err(e) => {
            errors.push(e.to_string());
            None
        }
    };

    let sur_gap = |m: &MomentSet| evaluate_sur(m, &constants).sur_gap;
    let discrepancies = Discrepancies {
        quadrature_vs_closed: quadrature.as_ref().map(|q| relative_discrepancy(q, &closed)),
        fock_vs_closed: fock.as_ref().map(|f| relative_discrepancy(f, &closed)),
        fock_vs_quadrature: fock
            .as_ref()
            .zip(quadrature.as_ref())
            .map(|(f, q)| relative_discrepancy(f, q)),
    };

    let mut row = SweepRow {
        gamma,
        alpha,
        hbar: constants.hbar,
        mass: constants.mass,
        closed,
        sur_gap_quadrature: quadrature.as_ref().map(sur_gap),
        sur_gap_fock: fock.as_ref().map(sur_gap),
        quadrature,
        fock,
        uncertainty,
        energy,
        t_eff,
        bogoliubov,
        eq6_residual,
        odd_weight,
        classification: classify_alpha(alpha).kind,
        discrepancies,
        errors,
        failures: Vec::new(),
        pass: false,
    };
    row.failures = row_failures(&row, tol);
    row.pass = row.errors.is_empty() && row.failures.is_empty();
    Ok(row)
}

fn row_failures(row: &SweepRow, tol: &Tolerances) -> Vec<String> {
    let hbar = row.hbar;
    let mut out = Vec::new();
    let mut check = |label: &str, value: Option<f64>, limit: f64| {
        if let Some(v) = value {
            // NaN must fail, hence the negation.
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(v.abs() <= limit) {
                out.push(format!("{label} = {v:e} exceeds {limit:e}"));
            }
        }
    };
    let d = &row.discrepancies;
    check("quadrature vs closed-form discrepancy", d.quadrature_vs_closed, tol.quadrature);
    check("fock vs closed-form discrepancy", d.fock_vs_closed, tol.fock);
    check("fock vs quadrature discrepancy", d.fock_vs_quadrature, tol.fock);
    check("closed-form sur_gap", Some(row.uncertainty.sur_gap), tol.sur_closed * hbar);
    check("quadrature sur_gap", row.sur_gap_quadrature, tol.sur_quadrature * hbar);
    check("fock sur_gap", row.sur_gap_fock, tol.sur_fock * hbar);
    out
}

/// Evaluates the whole grid. Rows come back sorted by `(gamma, alpha)`
/// regardless of evaluation order.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let points: Vec<(f64, f64)> = config
        .gamma_values
        .iter()
        .flat_map(|&g| config.alpha_values.iter().map(move |&a| (g, a)))
        .collect();
    let mut rows = points
        .par_iter()
        .map(|&(g, a)| evaluate_point(g, a, config))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|x, y| x.gamma.total_cmp(&y.gamma).then(x.alpha.total_cmp(&y.alpha)));
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        constants: config.constants(),
        fock_dim: config.fock_dim,
        tolerances: config.tolerances,
        rows,
    })
}

/// Exit status of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    ConfigError,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::ConfigError => 2,
        }
    }
}

/// One line per failing check, prefixed by the grid point.
pub fn failure_summary(report: &SweepReport) -> Vec<String> {
    report
        .failing_rows()
        .flat_map(|row| {
            row.errors
                .iter()
                .chain(&row.failures)
                .map(move |msg| format!("FAIL gamma={} alpha={}: {msg}", row.gamma, row.alpha))
        })
        .collect()
}

pub fn verify(config: &SweepConfig) -> (Verdict, Option<SweepReport>) {
    match run_sweep(config) {
        Ok(report) => {
            let verdict = if report.all_pass() { Verdict::Pass } else { Verdict::Fail };
            (verdict, Some(report))
        }
        Err(_) => (Verdict::ConfigError, None),
    }
}
