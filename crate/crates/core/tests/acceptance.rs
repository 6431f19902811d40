//! Acceptance gate. Each criterion runs at its fixed tolerance and prints one
//! PASS/FAIL line; the test fails if any criterion fails.
//!
//! cargo test -p arbvac --test acceptance -- --nocapture

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::io::Write;
use std::process::Command;

use arbvac::fock::{bogoliubov_coefficients, build_fock, fock_moments, solve_vacuum_vector};
use arbvac::quadrature::{quadrature_moments, QuadratureRule};
use arbvac::state::{closed_form_moments, delta_q0, make_state, MomentSet, PhysicalConstants, VacuumParameters};
use arbvac::sweep::{relative_discrepancy, SweepConfig};
use arbvac::thermo::energy_decomposition;
use arbvac::uncertainty::evaluate_sur;
use arbvac::Error;
use num_complex::Complex64;

const GAMMAS: [f64; 3] = [0.5, 1.0, 2.0];
const ALPHAS: [f64; 7] = [0.0, FRAC_PI_6, -FRAC_PI_6, FRAC_PI_4, -FRAC_PI_4, FRAC_PI_3, -FRAC_PI_3];

type Outcome = Result<String, String>;

fn constants() -> PhysicalConstants {
    PhysicalConstants::default()
}

fn params(gamma: f64, alpha: f64) -> VacuumParameters {
    VacuumParameters::new(gamma, alpha).unwrap()
}

struct Routes {
    closed: MomentSet,
    quad: MomentSet,
    fock: MomentSet,
}

fn routes(gamma: f64, alpha: f64, dim: usize) -> Routes {
    let c = constants();
    let state = make_state(params(gamma, alpha), c).unwrap();
    let rep = build_fock(gamma, &c, dim).unwrap();
    let v = solve_vacuum_vector(&rep, alpha).unwrap();
    Routes {
        closed: closed_form_moments(&state),
        quad: quadrature_moments(&state, &QuadratureRule::default()).unwrap(),
        fock: fock_moments(&rep, &v),
    }
}

fn within(label: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{label}: got {got:e}, want {want:e} (tol {tol:e})"))
    }
}

/// 1. Cold-vacuum identities on every route, 1e-12 absolute.
fn cold_vacuum_identities() -> Outcome {
    let tol = 1e-12;
    let r = routes(1.0, 0.0, 32);
    let p = params(1.0, 0.0);
    for m in [r.closed, r.quad, r.fock] {
        let name = format!("{:?}", m.route);
        let u = evaluate_sur(&m, &constants());
        let e = energy_decomposition(&m, &p, &constants());
        within(&format!("{name} var_q"), m.var_q, 0.5, tol)?;
        within(&format!("{name} var_p"), m.var_p, 0.5, tol)?;
        within(&format!("{name} dp*dq"), u.up, 0.5, tol)?;
        within(&format!("{name} |R|"), u.corr_mag, 0.5, tol)?;
        within(&format!("{name} <K>"), e.kinetic, 0.25, tol)?;
        within(&format!("{name} <Pi>"), e.potential, 0.25, tol)?;
        within(&format!("{name} U"), e.total, 0.5, tol)?;
    }
    Ok("three routes reproduce 0.5, 0.5, 0.5, 0.25, 0.25, 0.5".into())
}

/// 2. Quadrature vs closed forms within 1e-10 relative; Fock (dim 128) within 1e-7.
fn arbitrary_vacuum_closed_forms() -> Outcome {
    let (mut worst_q, mut worst_f) = (0.0f64, 0.0f64);
    for g in GAMMAS {
        for a in ALPHAS {
            let r = routes(g, a, 128);
            let dq = relative_discrepancy(&r.quad, &r.closed);
            let df = relative_discrepancy(&r.fock, &r.closed);
            if dq > 1e-10 {
                return Err(format!("gamma={g} alpha={a}: quadrature rel dev {dq:e} > 1e-10"));
            }
            if df > 1e-7 {
                return Err(format!("gamma={g} alpha={a}: fock rel dev {df:e} > 1e-7"));
            }
            worst_q = worst_q.max(dq);
            worst_f = worst_f.max(df);
        }
    }
    Ok(format!("worst quadrature {worst_q:.1e}, worst fock {worst_f:.1e}"))
}

/// 3. sur_gap <= 1e-9 hbar (closed, quadrature) and <= 1e-7 hbar (Fock).
fn sur_saturation() -> Outcome {
    let hbar = constants().hbar;
    let mut worst = [0.0f64; 3];
    for g in GAMMAS {
        for a in ALPHAS {
            let r = routes(g, a, 128);
            for (i, (m, tol)) in [(r.closed, 1e-9), (r.quad, 1e-9), (r.fock, 1e-7)].iter().enumerate() {
                let gap = evaluate_sur(m, &constants()).sur_gap;
                if gap > tol * hbar {
                    return Err(format!("gamma={g} alpha={a} {:?}: sur_gap {gap:e}", m.route));
                }
                worst[i] = worst[i].max(gap.abs());
            }
        }
    }
    Ok(format!("max |sur_gap| closed {:.1e}, quad {:.1e}, fock {:.1e}", worst[0], worst[1], worst[2]))
}

/// 4. hur_gap = (hbar/2)(sec alpha - 1) within 1e-10; zero only at alpha = 0.
fn heisenberg_strictness() -> Outcome {
    let hbar = constants().hbar;
    for g in GAMMAS {
        for a in ALPHAS {
            let r = routes(g, a, 128);
            let want = 0.5 * hbar * (1.0 / a.cos() - 1.0);
            for m in [r.closed, r.quad, r.fock] {
                let gap = evaluate_sur(&m, &constants()).hur_gap;
                within(&format!("gamma={g} alpha={a} {:?} hur_gap", m.route), gap, want, 1e-10)?;
                let is_zero = gap.abs() <= 1e-10;
                if is_zero != (a == 0.0) {
                    return Err(format!("gamma={g} alpha={a}: hur_gap {gap:e} zero-ness is wrong"));
                }
            }
        }
    }
    Ok("matches (hbar/2)(sec alpha - 1); vanishes only for the cold vacuum".into())
}

/// Independent Gaussian-integral oracle for <p q>: for psi ∝ exp(-c q^2),
/// <q^2> = 1/(4 Re c) and <p q> = (hbar/i)(1 - 2 c <q^2>).
fn correlator_oracle(gamma: f64, alpha: f64, hbar: f64) -> Complex64 {
    let dq0 = hbar / (2.0 * gamma);
    let c = Complex64::from_polar(1.0, alpha) / (4.0 * dq0);
    let q2 = 1.0 / (4.0 * c.re);
    Complex64::new(0.0, -hbar) * (1.0 - 2.0 * c * q2)
}

/// 5. cov_sym against the oracle within 1e-10; |R|^2 = cov^2 + (hbar/2)^2 within 1e-12 rel.
fn covariance_value() -> Outcome {
    let hbar = constants().hbar;
    for g in GAMMAS {
        for a in ALPHAS {
            let oracle = correlator_oracle(g, a, hbar);
            within("oracle vs -(hbar/2) tan", oracle.re, -0.5 * hbar * a.tan(), 1e-10)?;
            let r = routes(g, a, 128);
            for m in [r.closed, r.quad] {
                within(&format!("gamma={g} alpha={a} {:?} cov_sym", m.route), m.cov_sym, oracle.re, 1e-10)?;
                let lhs = m.correlator.norm_sqr();
                let rhs = m.cov_sym.powi(2) + (0.5 * hbar).powi(2);
                if (lhs - rhs).abs() > 1e-12 * rhs {
                    return Err(format!("gamma={g} alpha={a}: |R|^2 {lhs:e} vs {rhs:e}"));
                }
            }
        }
    }
    Ok("cov_sym = -(hbar/2) tan alpha; |R|^2 identity holds".into())
}

/// 6. Bogoliubov normalization, residual at dim 64, and residual halving from 16 to 128.
fn bogoliubov_consistency() -> Outcome {
    for a in ALPHAS {
        let n = bogoliubov_coefficients(a).unwrap().normalization();
        within(&format!("alpha={a} |u|^2-|v|^2"), n, 1.0, 1e-12)?;
    }
    let c = constants();
    let mut worst64 = 0.0f64;
    for g in GAMMAS {
        let rep = build_fock(g, &c, 64).unwrap();
        for a in ALPHAS.into_iter().filter(|a| a.abs() <= FRAC_PI_6 + 1e-15) {
            let res = solve_vacuum_vector(&rep, a).unwrap().residual;
            if res > 1e-8 {
                return Err(format!("gamma={g} alpha={a}: dim-64 residual {res:e} > 1e-8"));
            }
            worst64 = worst64.max(res);
        }
    }
    let residuals: Vec<f64> = [16, 32, 64, 128]
        .iter()
        .map(|&d| {
            let rep = build_fock(1.0, &c, d).unwrap();
            solve_vacuum_vector(&rep, FRAC_PI_4).unwrap().residual
        })
        .collect();
    for (d, w) in [16, 32, 64].iter().zip(residuals.windows(2)) {
        if w[1] > 0.5 * 1.1 * w[0] {
            return Err(format!("residual did not halve from dim {d}: {:e} -> {:e}", w[0], w[1]));
        }
    }
    Ok(format!(
        "max dim-64 residual {worst64:.1e}; pi/4 residuals {}",
        residuals.iter().map(|r| format!("{r:.1e}")).collect::<Vec<_>>().join(" -> ")
    ))
}

/// 7. Odd-photon weight <= 1e-20 at every grid point.
fn even_sector_purity() -> Outcome {
    let c = constants();
    let mut worst = 0.0f64;
    for g in GAMMAS {
        let rep = build_fock(g, &c, 128).unwrap();
        for a in ALPHAS {
            let w = solve_vacuum_vector(&rep, a).unwrap().odd_weight();
            if w > 1e-20 {
                return Err(format!("gamma={g} alpha={a}: odd weight {w:e}"));
            }
            worst = worst.max(w);
        }
    }
    Ok(format!("max odd weight {worst:.1e}"))
}

fn arbvac(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_arbvac"))
        .args(args)
        .output()
        .expect("spawn arbvac")
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

/// 8. Byte-identical sweeps; verify exits 0 on defaults and nonzero at 1e-16.
fn cli_determinism() -> Outcome {
    let a = arbvac(&["sweep", "--quiet"]);
    let b = arbvac(&["sweep", "--quiet"]);
    if !a.status.success() || !b.status.success() {
        return Err("sweep failed".into());
    }
    if a.stdout != b.stdout || a.stdout.is_empty() {
        return Err("sweep output differs between runs".into());
    }
    let ok = arbvac(&["verify", "--quiet"]);
    if ok.status.code() != Some(0) {
        return Err(format!("verify on defaults exited {:?}", ok.status.code()));
    }
    let all = config_file(
        "tol_quadrature = 1e-16\ntol_fock = 1e-16\ntol_sur_closed = 1e-16\n\
         tol_sur_quadrature = 1e-16\ntol_sur_fock = 1e-16\ntol_integration = 1e-16\n",
    );
    let mut tight = vec![all];
    for key in ["tol_fock", "tol_quadrature"] {
        tight.push(config_file(&format!("{key} = 1e-16\n")));
    }
    for cfg in &tight {
        let out = arbvac(&["verify", "--quiet", "--config", cfg.path().to_str().unwrap()]);
        if out.status.code() != Some(1) {
            return Err(format!("verify with 1e-16 tolerance exited {:?}", out.status.code()));
        }
    }
    Ok(format!("{} identical bytes; verify 0 on defaults, 1 at 1e-16", a.stdout.len()))
}

/// 9. alpha = pi/2 and gamma = 0 are rejected at every entry point.
fn domain_enforcement() -> Outcome {
    let c = constants();
    let is_domain = |e: Error, p: &str| matches!(e, Error::Domain { param, .. } if param == p);
    let checks = [
        is_domain(VacuumParameters::new(1.0, FRAC_PI_2).unwrap_err(), "alpha"),
        is_domain(VacuumParameters::new(0.0, 0.0).unwrap_err(), "gamma"),
        is_domain(make_state(VacuumParameters { gamma: 1.0, alpha: FRAC_PI_2 }, c).unwrap_err(), "alpha"),
        is_domain(make_state(VacuumParameters { gamma: 0.0, alpha: 0.0 }, c).unwrap_err(), "gamma"),
        is_domain(delta_q0(&VacuumParameters { gamma: 0.0, alpha: 0.0 }, &c).unwrap_err(), "gamma"),
        is_domain(bogoliubov_coefficients(FRAC_PI_2).unwrap_err(), "alpha"),
        is_domain(build_fock(0.0, &c, 16).unwrap_err(), "gamma"),
        is_domain(solve_vacuum_vector(&build_fock(1.0, &c, 16).unwrap(), FRAC_PI_2).unwrap_err(), "alpha"),
    ];
    if let Some(i) = checks.iter().position(|ok| !ok) {
        return Err(format!("library entry point #{i} did not raise the expected domain error"));
    }
    for (cfg, field) in [
        (SweepConfig { alpha_values: vec![FRAC_PI_2], ..Default::default() }, "alpha_values"),
        (SweepConfig { gamma_values: vec![0.0], ..Default::default() }, "gamma_values"),
    ] {
        match cfg.validate() {
            Err(Error::Config { field: f, .. }) if f == field => {}
            other => return Err(format!("SweepConfig accepted bad {field}: {other:?}")),
        }
    }
    for text in ["alpha_values = pi/2\n", "gamma_values = 0\n"] {
        let f = config_file(text);
        for sub in ["sweep", "verify"] {
            let out = arbvac(&[sub, "--config", f.path().to_str().unwrap()]);
            if out.status.code() != Some(2) || !out.stdout.is_empty() {
                return Err(format!("`{sub}` with `{}` exited {:?}", text.trim(), out.status.code()));
            }
        }
    }
    Ok("library and CLI reject alpha = pi/2 and gamma = 0".into())
}

#[test]
fn acceptance_criteria() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("1 cold-vacuum identities", cold_vacuum_identities),
        ("2 arbitrary-vacuum closed forms", arbitrary_vacuum_closed_forms),
        ("3 SUR saturation", sur_saturation),
        ("4 Heisenberg strictness", heisenberg_strictness),
        ("5 covariance value", covariance_value),
        ("6 Bogoliubov consistency", bogoliubov_consistency),
        ("7 even-sector purity", even_sector_purity),
        ("8 CLI determinism", cli_determinism),
        ("9 domain enforcement", domain_enforcement),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
