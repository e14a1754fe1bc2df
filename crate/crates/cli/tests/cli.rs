use std::path::PathBuf;
use std::process::{Command, Output};

use axint::coords::{AxisConfig, PhaseState};
use axint::dynamics::{integrate_cartesian, uniform_times};
use axint::potentials::SeparablePotential;
use axint::Vec3;
use serde_json::Value;

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("axint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn axint(args: &[&str], config: Option<&PathBuf>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_axint"));
    cmd.args(args);
    if let Some(p) = config {
        cmd.arg("--config").arg(p);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> Vec<(String, String)> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| {
            let (k, v) = l.split_once(',').unwrap();
            (k.to_string(), v.to_string())
        })
        .collect()
}

fn field<'a>(rep: &'a [(String, String)], key: &str) -> &'a str {
    &rep.iter().find(|(k, _)| k == key).unwrap_or_else(|| panic!("no {key}")).1
}

const FREE: &str = "potential = free\nx = 1.2, 0.3, 0.4\np = 0.1, 0.5, -0.2\n";
const COULOMB: &str = "# bound orbit\npotential = coulomb\ncharge = 1\nx = 3, 0, 0.2\np = 0, 0.45, 0.1\n";

#[test]
fn output_is_byte_deterministic() {
    let cfg = scratch("det.cfg", &format!("{COULOMB}t_final = 5\nsamples = 21\n"));
    for args in [
        vec!["simulate"],
        vec!["simulate", "--format", "json"],
        vec!["audit", "--seed", "11"],
        vec!["audit", "--seed", "11", "--corrupt-phi", "0.01"],
    ] {
        let a = axint(&args, Some(&cfg));
        let b = axint(&args, Some(&cfg));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn free_particle_audit_passes_tightly() {
    let cfg = scratch("free.cfg", FREE);
    let o = axint(&["audit"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rep = report(&o);
    assert_eq!(field(&rep, "status"), "PASS");
    for key in [
        "drift_E",
        "drift_E_tilde",
        "drift_L",
        "bracket_H_L",
        "bracket_Htilde_L",
        "bracket_H_Htilde",
        "c2_spread",
        "c3_spread",
        "time_spread",
        "involution_residual",
    ] {
        let v: f64 = field(&rep, key).parse().unwrap();
        assert!(v < 1e-10, "{key} = {v}");
    }
}

#[test]
fn coulomb_audit_passes_and_corruption_fails() {
    let cfg = scratch("coulomb.cfg", COULOMB);
    let o = axint(&["audit"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(String::from_utf8_lossy(&o.stderr).contains("audit PASS"));

    let o = axint(&["audit", "--corrupt-phi", "0.01", "--seed", "5"], Some(&cfg));
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    let rep = report(&o);
    assert_eq!(field(&rep, "status"), "FAIL");
    assert!(field(&rep, "failed").contains("bracket"));
    assert!(field(&rep, "failed").contains("involution"));
}

#[test]
fn config_errors_exit_two() {
    let cases = [
        ("typo.cfg", format!("{FREE}t_finl = 3\n")),
        ("missing.cfg", "potential = free\np = 0, 1, 0\n".to_string()),
        ("value.cfg", format!("{FREE}t_final = soon\n")),
        ("negative.cfg", format!("{FREE}a = -1\n")),
        ("potential.cfg", "potential = yukawa\nx = 1, 0, 0\np = 0, 1, 0\n".to_string()),
        ("syntax.cfg", "x 1, 0, 0\n".to_string()),
    ];
    for (name, text) in cases {
        let o = axint(&["simulate"], Some(&scratch(name, &text)));
        assert_eq!(o.status.code(), Some(2), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    let o = axint(&["simulate"], Some(&PathBuf::from("/nonexistent/axint.cfg")));
    assert_eq!(o.status.code(), Some(2));
    let o = axint(&["potential-grid", "--corrupt-phi", "0.1"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trajectory_csv_round_trips_bitwise() {
    let cfg = scratch("traj.cfg", &format!("{COULOMB}t_final = 4\nsamples = 9\ntol = 1e-11\n"));
    let o = axint(&["simulate"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,x,y,z,px,py,pz,alpha,beta,phi,E,E_tilde,L");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();

    let axis = AxisConfig::new(Vec3::new(0.0, 0.0, 1.0), 1.0, 1.0).unwrap();
    let pot = SeparablePotential::coulomb_like(1.0, 1.0);
    let s0 = PhaseState::new(Vec3::new(3.0, 0.0, 0.2), Vec3::new(0.0, 0.45, 0.1));
    let rec = integrate_cartesian(&s0, &axis, &pot, 4.0, &uniform_times(4.0, 9), 1e-11).unwrap();
    assert_eq!(rows.len(), rec.samples.len());
    for (row, s) in rows.iter().zip(&rec.samples) {
        let want: [f64; 13] = [
            s.t,
            s.x.x(),
            s.x.y(),
            s.x.z(),
            s.p.x(),
            s.p.y(),
            s.p.z(),
            s.chart.alpha,
            s.chart.beta,
            s.chart.phi,
            s.invariants.e,
            s.invariants.e_tilde,
            s.invariants.ell,
        ];
        for (got, want) in row.iter().zip(want) {
            assert_eq!(got.to_bits(), want.to_bits());
        }
    }
}

#[test]
fn grid_vanishes_on_axis_and_is_mirror_symmetric() {
    let cfg = scratch("grid.cfg", "potential = coulomb\ncharge = 0.7\nx_min = 0\nx_max = 3\nz_min = -2\nz_max = 2\nnx = 13\nnz = 17\n");
    let o = axint(&["potential-grid"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 13 * 17);
    let value = |ix: usize, iz: usize| rows[iz * 13 + ix][2];
    for iz in 0..17 {
        let u: f64 = value(0, iz).parse().unwrap();
        assert!(u.abs() < 1e-15, "axis U = {u}");
        for ix in 0..13 {
            assert_eq!(value(ix, iz), value(ix, 16 - iz), "ix {ix} iz {iz}");
        }
    }
}

#[test]
fn json_grid_marks_focal_ring_as_null() {
    // x = 1 on z = 0 is the focal ring for a = 1.
    let cfg = scratch("ring.cfg", "potential = coulomb\nx_min = -2\nx_max = 2\nz_min = -1\nz_max = 1\nnx = 5\nnz = 3\n");
    let o = axint(&["potential-grid", "--format", "json"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["columns"], serde_json::json!(["x", "z", "U"]));
    let rows = v["rows"].as_array().unwrap();
    let nulls: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r[2].is_null())
        .map(|r| (r[0].as_f64().unwrap(), r[1].as_f64().unwrap()))
        .collect();
    assert_eq!(nulls, vec![(-1.0, 0.0), (1.0, 0.0)]);

    let o = axint(&["potential-grid"], Some(&cfg));
    assert!(stdout(&o).lines().any(|l| l == "1,0,"));
}

#[test]
fn angular_modes_reduce_to_legendre() {
    for ell in 0..4usize {
        let cfg = scratch(&format!("ang{ell}.cfg"), &format!("ell = {ell}\ngamma2 = 0\ncount = 5\n"));
        let o = axint(&["quantum", "angular", "--format", "json"], Some(&cfg));
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        for (i, row) in v["rows"].as_array().unwrap().iter().enumerate() {
            let l = (ell + i) as f64;
            let g = row[2].as_f64().unwrap();
            assert!((g - l * (l + 1.0)).abs() < 1e-9, "ell {ell} index {i}: {g}");
            assert_eq!(row[1], if i % 2 == 0 { "even" } else { "odd" });
        }
    }
}

#[test]
fn radial_series_and_solution_run() {
    let cfg = scratch("radial.cfg", "cal_e = 0.5\nq = 1\ncal_e_tilde = 2\nell = 1\noutput = series\nseries_terms = 30\n");
    let o = axint(&["quantum", "radial"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# exponent="));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 31);

    let cfg = scratch("radial2.cfg", "cal_e = 0.5\nq = 1\ncal_e_tilde = 2\nell = 1\nt_max = 2\nsamples = 11\n");
    let o = axint(&["quantum", "radial"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let first = stdout(&o).lines().next().unwrap().to_string();
    let max: f64 = first.strip_prefix("# max_residual=").unwrap().parse().unwrap();
    assert!(max < 1e-6, "{max}");
}

#[test]
fn quadrature_check_passes_for_bound_orbit() {
    let cfg = scratch("quad.cfg", COULOMB);
    let o = axint(&["quadrature-check"], Some(&cfg));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("# status=PASS\n"));
}
