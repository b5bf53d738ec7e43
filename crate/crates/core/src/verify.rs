//! Seeded property suite behind `slipwall verify`.
//!
//! Every property draws from its own ChaCha8 stream (same seed, stream = property
//! index), so results are deterministic and one property's sample count never
//! shifts another's samples. [`Fault`] injects a deliberate mutation used to check
//! that the suite actually detects errors.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dgsem::{
    ec_volume_flux, Boundary, Discretization, InitialCondition, InterfaceFlux, LglBasis,
    SolverConfig,
};
use crate::error::{Error, Result};
use crate::euler::{
    conservative_from_primitive, dot, entropy_quantities, ConservativeState, GasModel,
    PrimitiveState, UnitNormal, Vec3,
};
use crate::linear::{
    abs_coefficient_matrix, boundary_energy_term, linear_boundary_flux, mirror_state_linear,
    LinearScheme, LinearState, MeanState,
};
use crate::riemann::{approximate_flux, exact_riemann_star, ApproximateSolver, RiemannPair};
use crate::wall::{
    delta_s, entropy_boundary_term, pstar_ratio, roe_threshold, vacuum_limit, wall_flux,
    wall_pressure, WallFluxKind,
};

/// Deliberate mutations for checking the suite itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Flip the sign of the Roe threshold used by the Roe sign property.
    RoeThresholdSign,
}

impl std::str::FromStr for Fault {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(Fault::None),
            "roe-threshold-sign" => Ok(Fault::RoeThresholdSign),
            _ => Err(format!(
                "unknown fault '{s}' (expected none or roe-threshold-sign)"
            )),
        }
    }
}

/// Random helpers shared by the suite and the acceptance tests.
pub mod sampling {
    use super::*;

    pub fn random_normal(rng: &mut ChaCha8Rng) -> UnitNormal {
        loop {
            let v: Vec3 = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            if dot(&v, &v) > 1e-2 {
                return UnitNormal::normalize(v).expect("nonzero vector");
            }
        }
    }

    /// Valid state with normal Mach number exactly `ma` w.r.t. `n` and a random tangential velocity.
    pub fn random_wall_state(
        rng: &mut ChaCha8Rng,
        n: &UnitNormal,
        ma: f64,
        gas: &GasModel,
    ) -> ConservativeState {
        let rho = rng.random_range(0.2..3.0);
        let p = rng.random_range(0.2..3.0);
        let c = (gas.gamma() * p / rho).sqrt();
        let t: Vec3 = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let tn = dot(&t, n.as_array());
        let nn = n.as_array();
        let v = std::array::from_fn(|d| t[d] - tn * nn[d] + ma * c * nn[d]);
        conservative_from_primitive(&PrimitiveState::new(rho, v, p), gas)
            .expect("positive by construction")
    }

    pub fn random_state(rng: &mut ChaCha8Rng, gas: &GasModel) -> ConservativeState {
        let v: Vec3 = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let q = PrimitiveState::new(rng.random_range(0.1..3.0), v, rng.random_range(0.1..3.0));
        conservative_from_primitive(&q, gas).expect("positive by construction")
    }

    /// Mean state whose velocity is tangential to `n`.
    pub fn tangential_mean(rng: &mut ChaCha8Rng, n: &UnitNormal, gas: GasModel) -> MeanState {
        let v: Vec3 = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let vn = dot(&v, n.as_array());
        let nn = n.as_array();
        let vt = std::array::from_fn(|d| v[d] - vn * nn[d]);
        MeanState::new(
            rng.random_range(0.2..3.0),
            vt,
            rng.random_range(0.2..3.0),
            gas,
        )
        .expect("positive by construction")
    }

    pub fn random_linear(rng: &mut ChaCha8Rng) -> LinearState {
        LinearState::new(
            rng.random_range(-1.0..1.0),
            std::array::from_fn(|_| rng.random_range(-1.0..1.0)),
            rng.random_range(-1.0..1.0),
        )
    }
}

use sampling::*;

#[derive(Clone, Debug)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub outcomes: Vec<PropertyOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| o.name)
            .collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(
                f,
                "[{}] {:<24} {} ({:.1} ms)",
                if o.passed { "PASS" } else { "FAIL" },
                o.name,
                o.detail,
                o.elapsed.as_secs_f64() * 1e3
            )?;
        }
        let failed = self.failed().len();
        write!(
            f,
            "{} of {} properties passed",
            self.outcomes.len() - failed,
            self.outcomes.len()
        )
    }
}

type Check = std::result::Result<String, String>;

struct Ctx {
    rng: ChaCha8Rng,
    trials: usize,
    fault: Fault,
    gas: GasModel,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str(e: Error) -> String {
    e.to_string()
}

/// Spot values of the closed forms at `gamma = 1.4`.
fn spot_values(c: &mut Ctx) -> Check {
    let g = &c.gas;
    let cases = [
        (WallFluxKind::LaxFriedrichs, 0.5, 2.4, 1e-12),
        (WallFluxKind::HLL, 0.5, 1.7, 1e-12),
        (WallFluxKind::ECLF, 0.5, 2.05, 1e-12),
        (WallFluxKind::ExactRP, 1.0, 3.4727, 1e-4),
        (WallFluxKind::ExactRP, -0.5, 0.9_f64.powi(7), 1e-12),
    ];
    for (kind, ma, expect, tol) in cases {
        let r = pstar_ratio(kind, ma, g).map_err(err_str)?;
        ensure((r - expect).abs() <= tol, || {
            format!("{kind} at Ma {ma}: {r} != {expect}")
        })?;
    }
    for (ma, expect, tol) in [(1.0, 3.4727, 1e-4), (-0.5, 0.9_f64.powi(7), 1e-12)] {
        let u = random_wall_state(&mut c.rng, &UnitNormal::X, ma, g);
        let star =
            exact_riemann_star(&RiemannPair::mirror(&u, &UnitNormal::X), g).map_err(err_str)?;
        let r = star.p_star / u.pressure_unchecked(g);
        ensure((r - expect).abs() <= tol, || {
            format!("exact solver at Ma {ma}: {r} != {expect}")
        })?;
    }
    Ok("7 reference values".into())
}

/// Approximate solvers on mirror pairs reproduce the closed-form wall fluxes.
fn oracle_equivalence(c: &mut Ctx) -> Check {
    let g = c.gas;
    let mut worst: f64 = 0.0;
    for _ in 0..c.trials {
        let n = random_normal(&mut c.rng);
        let ma = c.rng.random_range(-0.99..0.99);
        let u = random_wall_state(&mut c.rng, &n, ma, &g);
        let pair = RiemannPair::mirror(&u, &n);
        let vn = u.normal_velocity(&n);
        for kind in [
            WallFluxKind::LaxFriedrichs,
            WallFluxKind::HLL,
            WallFluxKind::HLLC,
            WallFluxKind::Roe,
        ] {
            let solver = ApproximateSolver::for_wall(kind).expect("approximate kind");
            let f = approximate_flux(solver, &pair, &g).map_err(err_str)?;
            let w = wall_flux(kind, &u, &n, &g).map_err(err_str)?;
            let scale = w.max_abs().max(u.pressure_unchecked(&g) + u.rho * vn * vn);
            let rel = (f - w).max_abs() / scale;
            worst = worst.max(rel);
            ensure(rel <= 1e-12, || {
                format!("{kind} at Ma {ma}: relative deviation {rel:e}")
            })?;
            ensure(
                f.mass().abs() < 1e-13 * scale && f.energy().abs() < 1e-13 * scale,
                || {
                    format!(
                        "{kind} at Ma {ma}: mass/energy flux {:e}/{:e}",
                        f.mass(),
                        f.energy()
                    )
                },
            )?;
        }
    }
    Ok(format!(
        "{} states x 4 solvers, worst {worst:.1e}",
        c.trials
    ))
}

/// Iterative exact solver on symmetric pairs matches the closed form on both branches.
fn exact_riemann_branches(c: &mut Ctx) -> Check {
    let g = c.gas;
    let mut worst: f64 = 0.0;
    for _ in 0..c.trials {
        let n = random_normal(&mut c.rng);
        let ma = c.rng.random_range(-4.9..5.0);
        let u = random_wall_state(&mut c.rng, &n, ma, &g);
        let star = exact_riemann_star(&RiemannPair::mirror(&u, &n), &g).map_err(err_str)?;
        let ratio = pstar_ratio(WallFluxKind::ExactRP, ma, &g).map_err(err_str)?;
        let rel = (star.p_star / u.pressure_unchecked(&g) - ratio).abs() / ratio.max(1.0);
        worst = worst.max(rel);
        ensure(rel <= 1e-10, || format!("Ma {ma}: deviation {rel:e}"))?;
    }
    let sod = RiemannPair::new(
        conservative_from_primitive(&PrimitiveState::new(1.0, [0.0; 3], 1.0), &g)
            .map_err(err_str)?,
        conservative_from_primitive(&PrimitiveState::new(0.125, [0.0; 3], 0.1), &g)
            .map_err(err_str)?,
        UnitNormal::X,
    );
    let p = exact_riemann_star(&sod, &g).map_err(err_str)?.p_star;
    ensure((p - 0.30313).abs() < 1e-4, || {
        format!("Sod star pressure {p}")
    })?;
    Ok(format!(
        "{} pairs, worst {worst:.1e}; Sod p* = {p:.5}",
        c.trials
    ))
}

/// `delta_s >= 0` on a dense grid for every entropy-stable kind.
fn entropy_sign_sweep(c: &mut Ctx) -> Check {
    let g = c.gas;
    let lo = vacuum_limit(&g) + 1e-3;
    let n = 10_000;
    for kind in WallFluxKind::ALL
        .into_iter()
        .filter(|k| k.is_entropy_stable())
    {
        for i in 0..n {
            let ma = lo + (5.0 - lo) * (i + 1) as f64 / n as f64;
            let ds = delta_s(1.0, 1.0, ma, pstar_ratio(kind, ma, &g).map_err(err_str)?);
            ensure(ds >= -1e-14, || {
                format!("{kind} at Ma {ma}: delta_s = {ds:e}")
            })?;
        }
    }
    Ok(format!("7 kinds x {n} samples on ({lo:.3}, 5]"))
}

/// Roe `delta_s < 0` exactly below the threshold.
fn roe_sign(c: &mut Ctx) -> Check {
    let mut checked = 0;
    for t in 0..c.trials.max(4) {
        // first sample at gamma = 1.4, then random gases
        let gas = if t == 0 {
            c.gas
        } else {
            GasModel::new(c.rng.random_range(1.05..2.95)).map_err(err_str)?
        };
        let thr = match c.fault {
            Fault::RoeThresholdSign => -roe_threshold(&gas),
            Fault::None => roe_threshold(&gas),
        };
        let lo = vacuum_limit(&gas) + 1e-3;
        for i in 0..=200 {
            let ma = if i == 200 {
                c.rng.random_range(lo..5.0)
            } else {
                lo + (5.0 - lo) * i as f64 / 199.0
            };
            if ma == 0.0 || (ma - thr).abs() < 1e-9 {
                continue;
            }
            let ds = delta_s(
                1.0,
                1.0,
                ma,
                pstar_ratio(WallFluxKind::Roe, ma, &gas).map_err(err_str)?,
            );
            ensure((ds < 0.0) == (ma < thr), || {
                format!(
                    "gamma {:.3}, Ma {ma:.6}: delta_s = {ds:e}, threshold {thr:.6}",
                    gas.gamma()
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} samples"))
}

/// HLLC and EC-Roe coincide with HLL at the wall.
fn hll_family_identity(c: &mut Ctx) -> Check {
    for _ in 0..c.trials {
        let ma = c.rng.random_range(-4.999..5.0);
        let h = pstar_ratio(WallFluxKind::HLL, ma, &c.gas).map_err(err_str)?;
        for kind in [WallFluxKind::HLLC, WallFluxKind::ECRoe] {
            let r = pstar_ratio(kind, ma, &c.gas).map_err(err_str)?;
            ensure(r == h, || format!("{kind} at Ma {ma}: {r} != {h}"))?;
        }
    }
    Ok(format!("{} samples, bitwise equal", c.trials))
}

/// Linear energy terms: central 0, upwind `c^3 Ma^2`, LF `c^2 lambda Ma^2`; `U^T |A| U`.
fn linear_closed_forms(c: &mut Ctx) -> Check {
    let g = c.gas;
    for _ in 0..c.trials {
        let n = random_normal(&mut c.rng);
        let mean = tangential_mean(&mut c.rng, &n, g);
        let cb = mean.sound_speed();
        let u = random_linear(&mut c.rng);
        let ext = mirror_state_linear(&u, &n);
        let ma = u.normal_mach(&n, &mean);
        let scale = (u.to_vector().norm_squared() * cb).max(1.0);
        let lambda = c.rng.random_range(0.5..3.0);
        let b0 = boundary_energy_term(
            &u,
            &linear_boundary_flux(&u, &ext, &mean, &n, LinearScheme::Central),
            &mean,
            &n,
        );
        let b1 = boundary_energy_term(
            &u,
            &linear_boundary_flux(&u, &ext, &mean, &n, LinearScheme::Upwind),
            &mean,
            &n,
        );
        let blf = boundary_energy_term(
            &u,
            &linear_boundary_flux(
                &u,
                &ext,
                &mean,
                &n,
                LinearScheme::LaxFriedrichs {
                    lambda_max: Some(lambda),
                },
            ),
            &mean,
            &n,
        );
        ensure(b0.abs() <= 1e-12 * scale, || format!("central: {b0:e}"))?;
        ensure((b1 - cb.powi(3) * ma * ma).abs() <= 1e-12 * scale, || {
            format!("upwind: {b1} vs {}", cb.powi(3) * ma * ma)
        })?;
        ensure(
            (blf - cb * cb * lambda * ma * ma).abs() <= 1e-12 * scale,
            || format!("LF: {blf}"),
        )?;
        let ui = u.to_vector();
        let quad = ui.dot(&(abs_coefficient_matrix(&mean, &n) * ui));
        let q = u.q(&mean);
        let expect = q * q / cb + cb.powi(3) * ma * ma;
        ensure((quad - expect).abs() <= 1e-12 * scale, || {
            format!("U^T|A|U: {quad} vs {expect}")
        })?;
    }
    Ok(format!("{} states", c.trials))
}

/// General contraction `W^T(F* - F.n) + s v_n` equals `rho V_n (P*/P - 1)`.
fn entropy_term_reduction(c: &mut Ctx) -> Check {
    let g = c.gas;
    let lo = vacuum_limit(&g) + 1e-2;
    for _ in 0..c.trials {
        let n = random_normal(&mut c.rng);
        let ma = c.rng.random_range(lo..5.0);
        let u = random_wall_state(&mut c.rng, &n, ma, &g);
        for kind in WallFluxKind::ALL {
            let r = wall_pressure(kind, &u, &n, &g).map_err(err_str)?;
            let f = wall_flux(kind, &u, &n, &g).map_err(err_str)?;
            let general = entropy_boundary_term(&u, &f, &n, &g).map_err(err_str)?;
            let reduced = u.rho * u.normal_velocity(&n) * (r.ratio - 1.0);
            let scale = reduced
                .abs()
                .max(entropy_quantities(&u, &g).map_err(err_str)?.s.abs())
                .max(1.0);
            ensure((general - reduced).abs() <= 1e-12 * scale, || {
                format!("{kind} at Ma {ma}: {general} vs {reduced}")
            })?;
        }
    }
    Ok(format!("{} states x 8 kinds", c.trials))
}

fn sbp_identity(_: &mut Ctx) -> Check {
    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        let r = LglBasis::new(n).sbp_residual();
        worst = worst.max(r);
        ensure(r < 1e-13, || format!("N = {n}: residual {r:e}"))?;
    }
    Ok(format!("N = 1..8, worst {worst:.1e}"))
}

fn lgl_quadrature(_: &mut Ctx) -> Check {
    for n in 1..=8 {
        let b = LglBasis::new(n);
        ensure((b.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14, || {
            format!("N = {n}: weights sum")
        })?;
        for k in 0..=(2 * n - 1) {
            let q: f64 = b
                .nodes
                .iter()
                .zip(&b.weights)
                .map(|(x, w)| w * x.powi(k as i32))
                .sum();
            let exact = if k % 2 == 0 {
                2.0 / (k as f64 + 1.0)
            } else {
                0.0
            };
            ensure((q - exact).abs() < 1e-13, || {
                format!("N = {n}, x^{k}: {q} vs {exact}")
            })?;
        }
    }
    Ok("N = 1..8, degree <= 2N-1".into())
}

/// `(w_R - w_L)^T F_ec = psi_R - psi_L`.
fn tadmor_condition(c: &mut Ctx) -> Check {
    let g = c.gas;
    let pairs = 10 * c.trials;
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let l = random_state(&mut c.rng, &g);
        let r = random_state(&mut c.rng, &g);
        let f = ec_volume_flux(&l, &r, &g);
        let (wl, wr) = (
            entropy_quantities(&l, &g).map_err(err_str)?.w,
            entropy_quantities(&r, &g).map_err(err_str)?.w,
        );
        let dw: [f64; 5] = std::array::from_fn(|k| wr[k] - wl[k]);
        let (psil, psir) = (l.mom[0], r.mom[0]);
        let scale: f64 =
            (0..5).map(|k| (dw[k] * f[k]).abs()).sum::<f64>() + psil.abs() + psir.abs();
        let res = (f.contract(&dw) - (psir - psil)).abs() / scale;
        worst = worst.max(res);
        ensure(res < 1e-11, || format!("residual {res:e}"))?;
    }
    Ok(format!("{pairs} pairs, worst {worst:.1e}"))
}

/// Uniform state with tangential velocity is steady for every wall kind.
fn free_stream(c: &mut Ctx) -> Check {
    for kind in WallFluxKind::ALL {
        let cfg = SolverConfig {
            num_elements: 4,
            poly_degree: 3,
            gas: c.gas,
            boundary: Boundary::Walls {
                left: kind,
                right: kind,
            },
            interface_flux: InterfaceFlux::ECPlusLF,
            initial_condition: InitialCondition::UniformFlow {
                rho: c.rng.random_range(0.5..2.0),
                pressure: c.rng.random_range(0.5..2.0),
                mach: 0.0,
                tangential_velocity: c.rng.random_range(-1.0..1.0),
            },
            ..SolverConfig::default()
        };
        let d = Discretization::new(cfg).map_err(err_str)?;
        let r = d
            .rhs(&d.initial_field().map_err(err_str)?.data)
            .map_err(err_str)?;
        let max = r.du.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
        ensure(max < 1e-12, || format!("{kind}: |rhs| = {max:e}"))?;
    }
    Ok("8 kinds".into())
}

/// Semi-discrete entropy budget closes for EC interfaces on random smooth fields.
fn entropy_budget(c: &mut Ctx) -> Check {
    let mut worst: f64 = 0.0;
    for t in 0..c.trials.clamp(1, 50) {
        let kind = WallFluxKind::ALL[t % 8];
        let cfg = SolverConfig {
            num_elements: 3,
            poly_degree: 3,
            gas: c.gas,
            boundary: Boundary::Walls {
                left: kind,
                right: kind,
            },
            ..SolverConfig::default()
        };
        let d = Discretization::new(cfg).map_err(err_str)?;
        let (a, k, v0, ph) = (
            c.rng.random_range(0.0..0.3),
            c.rng.random_range(0.5..3.0),
            c.rng.random_range(-0.8..0.8),
            c.rng.random_range(0.0..6.0),
        );
        let field = d
            .project(|x| {
                PrimitiveState::new(
                    1.0 + a * (k * x + ph).sin(),
                    [v0 + a * (k * x).cos(), 0.2, 0.0],
                    1.0 + a * (k * x).sin(),
                )
            })
            .map_err(err_str)?;
        let r = d.rhs(&field.data).map_err(err_str)?;
        let dsdt = d.entropy_rate(&field.data, &r.du).map_err(err_str)?;
        let defect = dsdt + r.boundary_left + r.boundary_right;
        let scale = dsdt
            .abs()
            .max(r.boundary_left.abs())
            .max(r.boundary_right.abs())
            .max(1.0);
        worst = worst.max(defect.abs() / scale);
        ensure(defect.abs() < 1e-11 * scale, || {
            format!("{kind}: defect {defect:e}")
        })?;
    }
    Ok(format!("worst relative defect {worst:.1e}"))
}

type Property = (&'static str, fn(&mut Ctx) -> Check);

pub const PROPERTY_NAMES: [&str; 14] = [
    "spot_values",
    "oracle_equivalence",
    "exact_riemann_branches",
    "entropy_sign_sweep",
    "roe_sign",
    "hll_family_identity",
    "linear_closed_forms",
    "entropy_term_reduction",
    "sbp_identity",
    "lgl_quadrature",
    "tadmor_condition",
    "free_stream",
    "entropy_budget",
    "roe_threshold_value",
];

/// The Roe threshold equals `-sqrt(2/(3-gamma))` (independent of the fault flag).
fn roe_threshold_value(c: &mut Ctx) -> Check {
    let thr = roe_threshold(&c.gas);
    let expect = -(2.0 / (3.0 - c.gas.gamma())).sqrt();
    ensure((thr - expect).abs() < 1e-15, || {
        format!("{thr} vs {expect}")
    })?;
    Ok(format!("{thr:.12}"))
}

fn properties() -> [Property; 14] {
    [
        ("spot_values", spot_values),
        ("oracle_equivalence", oracle_equivalence),
        ("exact_riemann_branches", exact_riemann_branches),
        ("entropy_sign_sweep", entropy_sign_sweep),
        ("roe_sign", roe_sign),
        ("hll_family_identity", hll_family_identity),
        ("linear_closed_forms", linear_closed_forms),
        ("entropy_term_reduction", entropy_term_reduction),
        ("sbp_identity", sbp_identity),
        ("lgl_quadrature", lgl_quadrature),
        ("tadmor_condition", tadmor_condition),
        ("free_stream", free_stream),
        ("entropy_budget", entropy_budget),
        ("roe_threshold_value", roe_threshold_value),
    ]
}

/// Run every property sequentially.
pub fn run_verify(seed: u64, trials: usize, fault: Fault) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(Error::InvalidRange("trials must be >= 1".into()));
    }
    let mut report = VerifyReport::default();
    for (idx, (name, prop)) in properties().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx as u64);
        let mut ctx = Ctx {
            rng,
            trials,
            fault,
            gas: GasModel::AIR,
        };
        let start = Instant::now();
        let res = prop(&mut ctx);
        let elapsed = start.elapsed();
        let (passed, detail) = match res {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        report.outcomes.push(PropertyOutcome {
            name,
            passed,
            detail,
            elapsed,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_properties() {
        let names: Vec<&str> = properties().iter().map(|p| p.0).collect();
        assert_eq!(names, PROPERTY_NAMES);
    }

    #[test]
    fn all_pass_on_correct_build() {
        let report = run_verify(2024, 50, Fault::None).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn fault_fails_exactly_roe_sign() {
        let report = run_verify(2024, 20, Fault::RoeThresholdSign).unwrap();
        assert_eq!(report.failed(), vec!["roe_sign"], "{report}");
    }

    #[test]
    fn deterministic_given_seed() {
        let a = run_verify(7, 5, Fault::None).unwrap();
        let b = run_verify(7, 5, Fault::None).unwrap();
        let da: Vec<&String> = a.outcomes.iter().map(|o| &o.detail).collect();
        let db: Vec<&String> = b.outcomes.iter().map(|o| &o.detail).collect();
        assert_eq!(da, db);
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(
            run_verify(1, 0, Fault::None),
            Err(Error::InvalidRange(_))
        ));
    }
}
