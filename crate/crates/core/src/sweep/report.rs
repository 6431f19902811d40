//! CSV and JSON serialization of a [`SweepReport`].
//!
//! The CSV column order is part of the public format; any change to it bumps
//! [`SCHEMA_VERSION`]. Floats are written with 17 significant digits in
//! scientific notation, which round-trips every `f64`.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use super::{OutputFormat, OutputTarget, SweepReport, SweepRow};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 31] = [
    "schema_version",
    "gamma",
    "alpha",
    "hbar",
    "mass",
    "var_q_closed",
    "var_q_quad",
    "var_q_fock",
    "var_p_closed",
    "var_p_quad",
    "var_p_fock",
    "corr_re_closed",
    "corr_im_closed",
    "corr_mag_closed",
    "corr_mag_quad",
    "corr_mag_fock",
    "up",
    "sur_gap",
    "hur_gap",
    "u_re",
    "u_im",
    "v_re",
    "v_im",
    "eq6_residual",
    "kinetic",
    "potential",
    "total",
    "excess_ratio",
    "t_eff",
    "classification",
    "pass",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn csv_row(r: &SweepRow) -> String {
    let q = r.quadrature.as_ref();
    let f = r.fock.as_ref();
    let fields = [
        SCHEMA_VERSION.to_string(),
        num(r.gamma),
        num(r.alpha),
        num(r.hbar),
        num(r.mass),
        num(r.closed.var_q),
        opt(q.map(|m| m.var_q)),
        opt(f.map(|m| m.var_q)),
        num(r.closed.var_p),
        opt(q.map(|m| m.var_p)),
        opt(f.map(|m| m.var_p)),
        num(r.closed.correlator.re),
        num(r.closed.correlator.im),
        num(r.closed.correlator.norm()),
        opt(q.map(|m| m.correlator.norm())),
        opt(f.map(|m| m.correlator.norm())),
        num(r.uncertainty.up),
        num(r.uncertainty.sur_gap),
        num(r.uncertainty.hur_gap),
        num(r.bogoliubov.u.re),
        num(r.bogoliubov.u.im),
        num(r.bogoliubov.v.re),
        num(r.bogoliubov.v.im),
        opt(r.eq6_residual),
        num(r.energy.kinetic),
        num(r.energy.potential),
        num(r.energy.total),
        num(r.energy.excess_ratio),
        opt(r.t_eff),
        r.classification.as_str().to_string(),
        r.pass.to_string(),
    ];
    fields.join(",")
}

pub fn to_csv(report: &SweepReport) -> String {
    let mut out = csv_header();
    out.push('\n');
    for row in &report.rows {
        out.push_str(&csv_row(row));
        out.push('\n');
    }
    out
}

pub fn to_json(report: &SweepReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report is always serializable");
    s.push('\n');
    s
}

pub fn render(report: &SweepReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => to_csv(report),
        OutputFormat::Json => to_json(report),
    }
}

pub fn write_report(report: &SweepReport, format: OutputFormat, target: &OutputTarget) -> Result<()> {
    let text = render(report, format);
    match target {
        OutputTarget::Stdout => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
        OutputTarget::File(path) => {
            let file = File::create(path)
                .map_err(|e| Error::Io(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::{run_sweep, SweepConfig};
    use super::*;

    fn small_report() -> SweepReport {
        run_sweep(&SweepConfig {
            gamma_values: vec![1.0],
            alpha_values: vec![0.0, 0.5],
            fock_dim: 48,
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn header_is_fixed() {
        assert_eq!(
            csv_header(),
            "schema_version,gamma,alpha,hbar,mass,var_q_closed,var_q_quad,var_q_fock,\
             var_p_closed,var_p_quad,var_p_fock,corr_re_closed,corr_im_closed,corr_mag_closed,\
             corr_mag_quad,corr_mag_fock,up,sur_gap,hur_gap,u_re,u_im,v_re,v_im,eq6_residual,\
             kinetic,potential,total,excess_ratio,t_eff,classification,pass"
        );
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::f64::consts::PI] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_shape() {
        let csv = to_csv(&small_report());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), CSV_COLUMNS.len());
        }
        let cold: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(cold[28], "", "t_eff is empty for the cold vacuum");
        assert_eq!(cold[29], "cold_vacuum");
        assert_eq!(cold[30], "true");
    }

    #[test]
    fn json_parses_back() {
        let report = small_report();
        let back: SweepReport = serde_json::from_str(&to_json(&report)).unwrap();
        assert_eq!(back, report);
    }
}
