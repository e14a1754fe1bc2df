use axint::coords::{AxisConfig, PhaseState};
use axint::dynamics::{
    integrate_cartesian, integrate_separated_from, invariant_brackets, invariants, uniform_times, InvariantTriple,
    TrajectoryRecord,
};
use axint::hj::{quadrature_constants, single_branch_segments};
use axint::potentials::{check_involution, potential_grid, CorruptedPhi, PlaneExtent, PotentialField, SeparablePotential};
use axint::quantum::angular::angular_modes;
use axint::quantum::radial::radial_solve;
use axint::quantum::series::{series_origin, OriginExponent, Parity};
use axint::quantum::QuantumParams;
use axint::{Error, Vec3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{Config, ConfigError};
use crate::output::{Cell, Report, Table};

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numeric(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(m) => Failure::Config(m),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

pub type CmdResult<T> = Result<T, Failure>;

/// Command-line settings shared by all commands.
#[derive(Debug, Clone, Copy, Default)]
pub struct Flags {
    pub seed: u64,
    pub tol: Option<f64>,
    pub corrupt_phi: Option<f64>,
}

pub enum Body {
    Table(Table),
    Report(Report),
}

/// What a command produced and, for checking commands, whether the checks passed.
pub struct Outcome {
    pub body: Body,
    pub verdict: Option<(bool, String)>,
}

impl Outcome {
    fn table(t: Table) -> Self {
        Outcome { body: Body::Table(t), verdict: None }
    }
}

fn axis(c: &Config) -> CmdResult<AxisConfig<f64>> {
    let [x, y, z] = c.vec3("axis", Some([0.0, 0.0, 1.0]))?;
    let a = c.float("a", 1.0, true)?;
    let m = c.float("m", 1.0, true)?;
    Ok(AxisConfig::new(Vec3::new(x, y, z), a, m)?)
}

fn potential(c: &Config, cfg: &AxisConfig<f64>) -> CmdResult<SeparablePotential<f64>> {
    match c.str_or("potential", "free") {
        "free" => Ok(SeparablePotential::free()),
        "coulomb" => Ok(SeparablePotential::coulomb_like(c.float("charge", 1.0, false)?, cfg.a())),
        "polynomial" => {
            let f = c.floats("f")?.unwrap_or_default();
            let g = c.floats("g")?.unwrap_or_default();
            Ok(SeparablePotential::polynomial(f, g))
        }
        other => Err(Failure::Config(format!("unknown potential {other:?} (free, coulomb, polynomial)"))),
    }
}

/// The potential, with `Φ` corrupted when requested.
enum Field {
    Plain(SeparablePotential<f64>),
    Corrupted(CorruptedPhi<f64>),
}

impl PotentialField<f64> for Field {
    fn u(&self, x: &Vec3<f64>, cfg: &AxisConfig<f64>) -> axint::Result<f64> {
        match self {
            Field::Plain(p) => p.u(x, cfg),
            Field::Corrupted(p) => p.u(x, cfg),
        }
    }

    fn phi(&self, x: &Vec3<f64>, cfg: &AxisConfig<f64>) -> axint::Result<f64> {
        match self {
            Field::Plain(p) => p.phi(x, cfg),
            Field::Corrupted(p) => p.phi(x, cfg),
        }
    }

    fn grad_u(&self, x: &Vec3<f64>, cfg: &AxisConfig<f64>) -> axint::Result<Vec3<f64>> {
        match self {
            Field::Plain(p) => p.grad_u(x, cfg),
            Field::Corrupted(p) => p.grad_u(x, cfg),
        }
    }
}

fn field(pot: &SeparablePotential<f64>, flags: &Flags, cfg: &AxisConfig<f64>) -> CmdResult<Field> {
    match flags.corrupt_phi {
        None => Ok(Field::Plain(pot.clone())),
        Some(eps) if eps.is_finite() => Ok(Field::Corrupted(CorruptedPhi::new(pot.clone(), eps, flags.seed, cfg))),
        Some(eps) => Err(Failure::Config(format!("--corrupt-phi must be finite, got {eps}"))),
    }
}

fn reject_corruption(flags: &Flags, command: &str) -> CmdResult<()> {
    match flags.corrupt_phi {
        Some(_) => Err(Failure::Config(format!("--corrupt-phi does not apply to {command}"))),
        None => Ok(()),
    }
}

fn state(c: &Config) -> CmdResult<PhaseState<f64>> {
    let [x, y, z] = c.vec3("x", None)?;
    let [px, py, pz] = c.vec3("p", None)?;
    Ok(PhaseState::new(Vec3::new(x, y, z), Vec3::new(px, py, pz)))
}

fn tolerance(c: &Config, flags: &Flags, default: f64) -> CmdResult<f64> {
    let from_file = c.float("tol", default, true)?;
    match flags.tol {
        Some(t) if t.is_finite() && t > 0.0 => Ok(t),
        Some(t) => Err(Failure::Config(format!("--tol must be positive, got {t}"))),
        None => Ok(from_file),
    }
}

fn count(c: &Config, key: &str, default: usize, min: usize) -> CmdResult<usize> {
    let n: usize = c.or(key, default)?;
    if n < min {
        return Err(Failure::Config(format!("{key} must be at least {min}")));
    }
    Ok(n)
}

pub fn potential_grid_cmd(c: &Config, flags: &Flags) -> CmdResult<Outcome> {
    reject_corruption(flags, "potential-grid")?;
    let cfg = axis(c)?;
    let pot = potential(c, &cfg)?;
    let extent = PlaneExtent {
        x_min: c.float("x_min", 0.0, false)?,
        x_max: c.float("x_max", 3.0, false)?,
        z_min: c.float("z_min", -3.0, false)?,
        z_max: c.float("z_max", 3.0, false)?,
    };
    let nx = count(c, "nx", 101, 2)?;
    let nz = count(c, "nz", 101, 2)?;
    c.finish()?;
    let grid = potential_grid(&cfg, &pot, extent, nx, nz)?;
    let mut t = Table::new(&["x", "z", "U"]);
    for s in &grid.samples {
        t.push(vec![s.x.into(), s.z.into(), s.u.into()]);
    }
    Ok(Outcome::table(t))
}

const TRAJECTORY_COLUMNS: [&str; 13] = ["t", "x", "y", "z", "px", "py", "pz", "alpha", "beta", "phi", "E", "E_tilde", "L"];

fn trajectory_table(rec: &TrajectoryRecord<f64>) -> Table {
    let mut t = Table::new(&TRAJECTORY_COLUMNS);
    for s in &rec.samples {
        let row: Vec<Cell> = [
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
        ]
        .into_iter()
        .map(Cell::from)
        .collect();
        t.push(row);
    }
    t
}

pub fn simulate_cmd(c: &Config, flags: &Flags) -> CmdResult<Outcome> {
    let cfg = axis(c)?;
    let pot = potential(c, &cfg)?;
    let s0 = state(c)?;
    let t_final = c.float("t_final", 10.0, true)?;
    let samples = count(c, "samples", 101, 2)?;
    let tol = tolerance(c, flags, 1e-10)?;
    let method = c.str_or("method", "cartesian").to_string();
    c.finish()?;
    let times = uniform_times(t_final, samples);
    let rec = match method.as_str() {
        "cartesian" => integrate_cartesian(&s0, &cfg, &field(&pot, flags, &cfg)?, t_final, &times, tol)?,
        "separated" => {
            reject_corruption(flags, "separated integration")?;
            integrate_separated_from(&s0, &cfg, &pot, t_final, &times, tol)?
        }
        other => return Err(Failure::Config(format!("unknown method {other:?} (cartesian, separated)"))),
    };
    Ok(Outcome::table(trajectory_table(&rec)))
}

struct Spreads {
    c2: f64,
    c3: f64,
    time: f64,
    segments: usize,
}

fn spread(v: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    if hi >= lo {
        hi - lo
    } else {
        0.0
    }
}

fn quadrature_spreads(
    rec: &TrajectoryRecord<f64>,
    cfg: &AxisConfig<f64>,
    pot: &SeparablePotential<f64>,
    inv: &InvariantTriple<f64>,
    guard: f64,
    rows: Option<&mut Table>,
) -> CmdResult<Spreads> {
    let mut out = Spreads { c2: 0.0, c3: 0.0, time: 0.0, segments: 0 };
    let mut rows = rows;
    for seg in single_branch_segments(&rec.samples, guard).iter().filter(|s| s.len() >= 3) {
        let q = quadrature_constants(seg, inv, cfg, pot)?;
        let scale = q.iter().map(|v| v.scale).fold(1.0, f64::max);
        let s = [
            spread(q.iter().map(|v| v.c2)) / scale,
            spread(q.iter().map(|v| v.c3)) / scale,
            spread(q.iter().map(|v| v.time_integral)) / scale,
        ];
        out.c2 = out.c2.max(s[0]);
        out.c3 = out.c3.max(s[1]);
        out.time = out.time.max(s[2]);
        if let Some(t) = rows.as_deref_mut() {
            let n = q.len() as f64;
            t.push(vec![
                out.segments.into(),
                seg[0].t.into(),
                seg[seg.len() - 1].t.into(),
                seg.len().into(),
                (q.iter().map(|v| v.c2).sum::<f64>() / n).into(),
                (q.iter().map(|v| v.c3).sum::<f64>() / n).into(),
                s[0].into(),
                s[1].into(),
                s[2].into(),
            ]);
        }
        out.segments += 1;
    }
    Ok(out)
}

fn random_state(r: &mut ChaCha8Rng, cfg: &AxisConfig<f64>, radius: f64, p_scale: f64) -> PhaseState<f64> {
    loop {
        let mut u = || r.gen_range(-1.0..1.0);
        let x = Vec3::new(u(), u(), u()) * radius;
        let p = Vec3::new(u(), u(), u()) * p_scale;
        if x.norm() > radius {
            continue;
        }
        if axint::coords::to_spheroidal(&x, cfg).is_ok_and(|pt| pt.separation() > 0.05 * cfg.a2()) {
            return PhaseState::new(x, p);
        }
    }
}

pub fn audit_cmd(c: &Config, flags: &Flags) -> CmdResult<Outcome> {
    let cfg = axis(c)?;
    let pot = potential(c, &cfg)?;
    let name = c.str_or("potential", "free").to_string();
    let s0 = state(c)?;
    let t_final = c.float("t_final", 20.0, true)?;
    let samples = count(c, "samples", 401, 2)?;
    let tol = tolerance(c, flags, 1e-12)?;
    let points = count(c, "random_points", 200, 0)?;
    let radius = c.float("sample_radius", 3.0 * cfg.a(), true)?;
    let guard = c.float("guard", 0.05, false)?;
    let drift_tol = c.float("drift_tol", 1e-6, true)?;
    let bracket_tol = c.float("bracket_tol", 1e-7, true)?;
    let quadrature_tol = c.float("quadrature_tol", 1e-6, true)?;
    let involution_tol = c.float("involution_tol", 1e-7, true)?;
    c.finish()?;

    let fld = field(&pot, flags, &cfg)?;
    let rec = integrate_cartesian(&s0, &cfg, &fld, t_final, &uniform_times(t_final, samples), tol)?;
    let drift = rec.max_relative_drift(&cfg, &fld)?;

    let mut r = ChaCha8Rng::seed_from_u64(flags.seed);
    let p_scale = s0.p.norm().max(1e-3);
    let mut probes: Vec<PhaseState<f64>> = (0..points).map(|_| random_state(&mut r, &cfg, radius, p_scale)).collect();
    let stride = (rec.samples.len() / 50).max(1);
    probes.extend(rec.samples.iter().step_by(stride).map(|s| s.state()));
    let mut brackets = [0.0f64; 3];
    let mut involution = 0.0f64;
    for s in &probes {
        for (w, b) in brackets.iter_mut().zip(invariant_brackets(s, &cfg, &fld)?) {
            *w = w.max(b.relative());
        }
        let inv = check_involution(&s.x, &cfg, &fld)?;
        involution = involution.max(inv.residual / (1.0 + inv.grad_u_norm));
    }
    // A corrupted trajectory may leave the region allowed by the uncorrupted constants.
    let quad = match quadrature_spreads(&rec, &cfg, &pot, &invariants(&s0, &cfg, &pot)?, guard, None) {
        Err(Failure::Numeric(_)) if flags.corrupt_phi.is_some() => {
            Spreads { c2: f64::INFINITY, c3: f64::INFINITY, time: f64::INFINITY, segments: 0 }
        }
        other => other?,
    };

    let bracket_max = brackets.iter().cloned().fold(0.0, f64::max);
    let drift_max = drift.e.max(drift.e_tilde).max(drift.ell);
    let quad_max = quad.c2.max(quad.c3).max(quad.time);
    let checks = [
        ("drift", drift_max < drift_tol),
        ("bracket", bracket_max < bracket_tol),
        ("quadrature", quad_max < quadrature_tol),
        ("involution", involution < involution_tol),
    ];
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    let pass = failed.is_empty();

    let inv0 = rec.samples[0].invariants;
    let mut rep = Report::default();
    rep.put("status", if pass { "PASS" } else { "FAIL" });
    rep.put("failed", failed.join(" "));
    rep.put("potential", name);
    rep.put("seed", flags.seed as i64);
    rep.put("corrupt_phi", Cell::from(flags.corrupt_phi));
    rep.put("E", inv0.e);
    rep.put("E_tilde", inv0.e_tilde);
    rep.put("L", inv0.ell);
    rep.put("drift_E", drift.e);
    rep.put("drift_E_tilde", drift.e_tilde);
    rep.put("drift_L", drift.ell);
    rep.put("drift_tol", drift_tol);
    rep.put("bracket_H_L", brackets[0]);
    rep.put("bracket_Htilde_L", brackets[1]);
    rep.put("bracket_H_Htilde", brackets[2]);
    rep.put("bracket_points", probes.len());
    rep.put("bracket_tol", bracket_tol);
    rep.put("c2_spread", quad.c2);
    rep.put("c3_spread", quad.c3);
    rep.put("time_spread", quad.time);
    rep.put("quadrature_segments", quad.segments);
    rep.put("quadrature_tol", quadrature_tol);
    rep.put("involution_residual", involution);
    rep.put("involution_tol", involution_tol);
    let summary = if pass { "audit PASS".to_string() } else { format!("audit FAIL: {}", failed.join(", ")) };
    Ok(Outcome { body: Body::Report(rep), verdict: Some((pass, summary)) })
}

pub fn quadrature_check_cmd(c: &Config, flags: &Flags) -> CmdResult<Outcome> {
    reject_corruption(flags, "quadrature-check")?;
    let cfg = axis(c)?;
    let pot = potential(c, &cfg)?;
    let s0 = state(c)?;
    let t_final = c.float("t_final", 30.0, true)?;
    let samples = count(c, "samples", 601, 2)?;
    let tol = tolerance(c, flags, 1e-12)?;
    let guard = c.float("guard", 0.05, false)?;
    let quadrature_tol = c.float("quadrature_tol", 1e-6, true)?;
    c.finish()?;
    let rec = integrate_separated_from(&s0, &cfg, &pot, t_final, &uniform_times(t_final, samples), tol)?;
    let mut table = Table::new(&["segment", "t_start", "t_end", "samples", "C2", "C3", "C2_spread", "C3_spread", "time_spread"]);
    let inv = invariants(&s0, &cfg, &pot)?;
    let q = quadrature_spreads(&rec, &cfg, &pot, &inv, guard, Some(&mut table))?;
    let worst = q.c2.max(q.c3).max(q.time);
    let pass = q.segments > 0 && worst < quadrature_tol;
    table.meta = vec![
        ("status".into(), if pass { "PASS" } else { "FAIL" }.into()),
        ("E".into(), inv.e.into()),
        ("E_tilde".into(), inv.e_tilde.into()),
        ("L".into(), inv.ell.into()),
        ("turning_events".into(), rec.turning_events.len().into()),
        ("max_spread".into(), worst.into()),
        ("quadrature_tol".into(), quadrature_tol.into()),
    ];
    let summary = format!(
        "quadrature-check {}: {} segments, max relative spread {worst:e}",
        if pass { "PASS" } else { "FAIL" },
        q.segments
    );
    Ok(Outcome { body: Body::Table(table), verdict: Some((pass, summary)) })
}

pub fn quantum_angular_cmd(c: &Config, flags: &Flags) -> CmdResult<Outcome> {
    reject_corruption(flags, "quantum angular")?;
    let ell = c.or::<usize>("ell", 0)?;
    let gamma2 = c.float("gamma2", 0.0, false)?;
    let n = count(c, "count", 7, 1)?;
    c.finish()?;
    let mut t = Table::new(&["index", "parity", "G", "weight"]);
    t.meta = vec![("ell".into(), ell.into()), ("gamma2".into(), gamma2.into())];
    for (i, m) in angular_modes(ell, gamma2, n)?.iter().enumerate() {
        let parity = if m.parity == Parity::Even { "even" } else { "odd" };
        t.push(vec![i.into(), parity.into(), m.g.into(), m.weight_expectation().into()]);
    }
    Ok(Outcome::table(t))
}

pub fn quantum_radial_cmd(c: &Config, flags: &Flags) -> CmdResult<Outcome> {
    reject_corruption(flags, "quantum radial")?;
    let qp = QuantumParams::new(
        c.float("cal_e", 0.0, false)?,
        c.float("q", 0.0, false)?,
        c.float("cal_e_tilde", 0.0, false)?,
        c.or::<i64>("ell", 0)?,
    );
    if qp.ell < 0 {
        return Err(Failure::Config("ell must be non-negative".into()));
    }
    let parity = match c.str_or("parity", "even") {
        "even" => Parity::Even,
        "odd" => Parity::Odd,
        other => return Err(Failure::Config(format!("parity must be even or odd, got {other:?}"))),
    };
    let output = c.str_or("output", "solution").to_string();
    match output.as_str() {
        "solution" => {
            let t_max = c.float("t_max", 1.0, true)?;
            let samples = count(c, "samples", 101, 2)?;
            let tol = tolerance(c, flags, 1e-10)?;
            c.finish()?;
            let sol = radial_solve(&qp, parity, t_max, samples, tol)?;
            let mut t = Table::new(&["t", "psi", "dpsi", "d2psi", "residual"]);
            for s in &sol.samples {
                t.push(vec![s.t.into(), s.psi.into(), s.dpsi.into(), s.d2psi.into(), s.relative_residual.into()]);
            }
            t.meta = vec![("max_residual".into(), sol.max_relative_residual().into())];
            Ok(Outcome::table(t))
        }
        "series" => {
            let terms = count(c, "series_terms", 40, 4)?;
            c.finish()?;
            let exponent = if parity == Parity::Even { OriginExponent::Zero } else { OriginExponent::Half };
            let s = series_origin(&qp, exponent, terms)?;
            let mut t = Table::new(&["n", "coefficient"]);
            for (i, a) in s.coefficients.iter().enumerate() {
                t.push(vec![i.into(), (*a).into()]);
            }
            t.meta = vec![
                ("exponent".into(), s.exponent.to_string().into()),
                ("radius_bound".into(), s.radius_bound.into()),
                ("residual_half_radius".into(), s.max_residual(0.5 * s.radius_bound, 64).into()),
            ];
            Ok(Outcome::table(t))
        }
        other => Err(Failure::Config(format!("output must be solution or series, got {other:?}"))),
    }
}
