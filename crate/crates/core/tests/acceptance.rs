//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Run with `cargo test -p slipwall --test acceptance` (add `--release` for
//! representative runtimes).

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slipwall::dgsem::{
    cfl_steps, ec_flux, ec_volume_flux, run_simulation, run_simulation_steps, InterfaceFlux,
    LglBasis, SolverConfig,
};
use slipwall::euler::{conservative_from_primitive, entropy_quantities, PrimitiveState};
use slipwall::linear::{
    abs_coefficient_matrix, boundary_energy_term, linear_boundary_flux, mirror_state_linear,
    LinearScheme,
};
use slipwall::riemann::{approximate_flux, exact_riemann_star, ApproximateSolver, RiemannPair};
use slipwall::sweep::{column, locate_sign_change, run_sweep, SweepSpec};
use slipwall::verify::sampling::{
    random_linear, random_normal, random_state, random_wall_state, tangential_mean,
};
use slipwall::wall::{
    entropy_boundary_term, mirror_state, pstar_ratio, vacuum_limit, wall_flux, wall_pressure,
};
use slipwall::{GasModel, NormalFlux, UnitNormal, WallFluxKind};

const AIR: GasModel = GasModel::AIR;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64, what: &str) -> Result<(), String> {
    check(elapsed.as_secs_f64() < limit_s, || {
        format!(
            "{what} took {:.2} s (limit {limit_s} s)",
            elapsed.as_secs_f64()
        )
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let spec = SweepSpec::default();
    let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    // (a) zero at rest
    let at_rest: Vec<_> = rows.iter().filter(|r| r.ma_n == 0.0).collect();
    check(at_rest.len() == WallFluxKind::ALL.len(), || {
        format!("{} rows at Ma_n = 0", at_rest.len())
    })?;
    for r in &at_rest {
        check(r.delta_s.abs() < 1e-14, || {
            format!("(a) {} delta_s = {:e} at rest", r.kind, r.delta_s)
        })?;
    }
    // (b) non-negative for the stable families
    for kind in [
        WallFluxKind::ExactRP,
        WallFluxKind::LaxFriedrichs,
        WallFluxKind::HLL,
        WallFluxKind::HLLC,
        WallFluxKind::ECLF,
        WallFluxKind::ECRoe,
    ] {
        for r in column(&rows, kind) {
            check(r.delta_s >= -1e-14, || {
                format!("(b) {kind} at Ma {}: {:e}", r.ma_n, r.delta_s)
            })?;
        }
    }
    // (c) Roe negative exactly below -sqrt(2/(3-gamma)) = -sqrt(1.25)
    let thr = -(2.0 / (3.0 - 1.4_f64)).sqrt();
    check((thr + 1.25_f64.sqrt()).abs() < 1e-15, || {
        "threshold identity".into()
    })?;
    for r in column(&rows, WallFluxKind::Roe) {
        check((r.delta_s < 0.0) == (r.ma_n < thr), || {
            format!("(c) Roe at Ma {}: {:e}", r.ma_n, r.delta_s)
        })?;
    }
    let root = locate_sign_change(&spec, &rows, WallFluxKind::Roe, 1e-12)
        .ok_or("(c) no Roe sign change")?;
    check((root - thr).abs() < 1e-10, || {
        format!("(c) sign change at {root}, expected {thr}")
    })?;
    // (d) identical columns
    let hll: Vec<(f64, f64)> = column(&rows, WallFluxKind::HLL)
        .iter()
        .map(|r| (r.ma_n, r.delta_s))
        .collect();
    for kind in [WallFluxKind::HLLC, WallFluxKind::ECRoe] {
        let other: Vec<(f64, f64)> = column(&rows, kind)
            .iter()
            .map(|r| (r.ma_n, r.delta_s))
            .collect();
        check(other == hll, || {
            format!("(d) {kind} column differs from HLL")
        })?;
    }
    within(elapsed, 1.0, "sweep")?;
    Ok(format!(
        "{} rows; Roe sign change at {root:.12} (|err| {:.1e}); sweep {:.1} ms",
        rows.len(),
        (root - thr).abs(),
        elapsed.as_secs_f64() * 1e3
    ))
}

fn criterion_2() -> Outcome {
    // independent evaluation of the printed formulas
    let g: f64 = 1.4;
    let m: f64 = 0.5;
    let cases = [
        (
            WallFluxKind::LaxFriedrichs,
            0.5,
            1.0 + g * m * (m + m.abs() + 1.0),
            2.4,
        ),
        (WallFluxKind::HLL, 0.5, 1.0 + g * m, 1.7),
        (WallFluxKind::ECLF, 0.5, 1.0 + g * m * (m.abs() + 1.0), 2.05),
    ];
    for (kind, ma, formula, expect) in cases {
        let r = pstar_ratio(kind, ma, &AIR).map_err(|e| e.to_string())?;
        check(
            (r - expect).abs() < 1e-12 && (formula - expect).abs() < 1e-12,
            || format!("{kind} at {ma}: {r} (formula {formula}, expected {expect})"),
        )?;
    }
    // ExactRP: closed form and the iterative exact solver on a mirror pair
    for (ma, expect, tol) in [(1.0, 3.4727, 1e-4), (-0.5, 0.9_f64.powi(7), 1e-12)] {
        let r = pstar_ratio(WallFluxKind::ExactRP, ma, &AIR).map_err(|e| e.to_string())?;
        let u = conservative_from_primitive(
            &PrimitiveState::new(1.0, [ma * 1.4_f64.sqrt(), 0.0, 0.0], 1.0),
            &AIR,
        )
        .unwrap();
        let star = exact_riemann_star(&RiemannPair::mirror(&u, &UnitNormal::X), &AIR)
            .map_err(|e| e.to_string())?;
        for v in [r, star.p_star] {
            check((v - expect).abs() < tol, || {
                format!("ExactRP at {ma}: {v} vs {expect}")
            })?;
        }
    }
    Ok(format!(
        "LF 2.4, HLL 1.7, EC-LF 2.05, ExactRP(1) = {:.6}, ExactRP(-0.5) = 0.9^7",
        pstar_ratio(WallFluxKind::ExactRP, 1.0, &AIR).unwrap()
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    let mut worst_me: f64 = 0.0;
    for _ in 0..1000 {
        let n = random_normal(&mut rng);
        let ma = rng.random_range(-0.99..0.99);
        let u = random_wall_state(&mut rng, &n, ma, &AIR);
        let pair = RiemannPair::mirror(&u, &n);
        let vn = u.normal_velocity(&n);
        let p = u.pressure_unchecked(&AIR);
        let scale = p + u.rho * vn * vn;

        let mut compare = |label: &str, f: NormalFlux, kind: WallFluxKind| -> Result<(), String> {
            let w = wall_flux(kind, &u, &n, &AIR).map_err(|e| e.to_string())?;
            let s = scale.max(w.max_abs());
            for c in 0..5 {
                let rel = (f[c] - w[c]).abs() / s;
                worst = worst.max(rel);
                check(rel <= 1e-12, || {
                    format!("{label} component {c} at Ma {ma}: rel {rel:e}")
                })?;
            }
            let me = f.mass().abs().max(f.energy().abs()) / s;
            worst_me = worst_me.max(me);
            check(me < 1e-13, || {
                format!("{label} mass/energy {me:e} at Ma {ma}")
            })
        };
        for kind in [
            WallFluxKind::LaxFriedrichs,
            WallFluxKind::HLL,
            WallFluxKind::HLLC,
            WallFluxKind::Roe,
        ] {
            let f = approximate_flux(ApproximateSolver::for_wall(kind).unwrap(), &pair, &AIR)
                .map_err(|e| e.to_string())?;
            compare(kind.name(), f, kind)?;
        }
        // exact solver: the star state of the mirror pair has u* = 0, so the Godunov flux is [0, p* n, 0]
        let star = exact_riemann_star(&pair, &AIR).map_err(|e| e.to_string())?;
        let nn = n.as_array();
        compare(
            "ExactRP",
            NormalFlux([
                0.0,
                star.p_star * nn[0],
                star.p_star * nn[1],
                star.p_star * nn[2],
                0.0,
            ]),
            WallFluxKind::ExactRP,
        )?;
        // EC flux on the mirror pair gives P* = P; adding LF dissipation gives EC-LF
        let (l, r) = mirror_state(&u, &n);
        compare(
            "EC",
            ec_flux(&l, &r, &n, &AIR),
            WallFluxKind::InternalPressure,
        )?;
        let lambda = vn.abs() + u.sound_speed_unchecked(&AIR);
        let (ul, ur) = (l.to_array(), r.to_array());
        let eclf = ec_flux(&l, &r, &n, &AIR)
            - (0.5 * lambda) * NormalFlux(std::array::from_fn(|k| ur[k] - ul[k]));
        compare("EC+LF", eclf, WallFluxKind::ECLF)?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 5.0, "oracle check")?;
    Ok(format!(
        "1000 states x 7 solvers; worst rel {worst:.1e}, worst mass/energy {worst_me:.1e}; {:.1} ms",
        elapsed.as_secs_f64() * 1e3
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let count = 2000;
    for i in 0..count {
        // uniform coverage of (-4.9, 5) plus random states and normals
        let ma = -4.9 + 9.9 * (i as f64 + 0.5) / count as f64;
        let n = random_normal(&mut rng);
        let u = random_wall_state(&mut rng, &n, ma, &AIR);
        let star =
            exact_riemann_star(&RiemannPair::mirror(&u, &n), &AIR).map_err(|e| e.to_string())?;
        let g = 1.4_f64;
        let closed = if ma > 0.0 {
            let k = (g + 1.0) * ma / 4.0;
            1.0 + g * ma * (k + (k * k + 1.0).sqrt())
        } else {
            (1.0 + 0.5 * (g - 1.0) * ma).powf(2.0 * g / (g - 1.0))
        };
        let rel = (star.p_star / u.pressure_unchecked(&AIR) - closed).abs() / closed.max(1.0);
        worst = worst.max(rel);
        check(rel < 1e-10, || format!("Ma {ma}: rel {rel:e}"))?;
    }
    let sod = RiemannPair::new(
        conservative_from_primitive(&PrimitiveState::new(1.0, [0.0; 3], 1.0), &AIR).unwrap(),
        conservative_from_primitive(&PrimitiveState::new(0.125, [0.0; 3], 0.1), &AIR).unwrap(),
        UnitNormal::X,
    );
    let p = exact_riemann_star(&sod, &AIR)
        .map_err(|e| e.to_string())?
        .p_star;
    check((p - 0.30313).abs() < 1e-4, || format!("Sod p* = {p}"))?;
    Ok(format!(
        "{count} symmetric pairs, worst rel {worst:.1e}; Sod p* = {p:.6}"
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let n = random_normal(&mut rng);
        let mean = tangential_mean(&mut rng, &n, AIR);
        let c = mean.sound_speed();
        let mut u = random_linear(&mut rng);
        if i % 2 == 0 {
            // half the samples without tangential velocity perturbation
            let vn = u.normal_velocity(&n);
            u.v = n.as_array().map(|x| vn * x);
        }
        let ext = mirror_state_linear(&u, &n);
        let ma = u.normal_mach(&n, &mean);
        let lambda = rng.random_range(0.5..3.0);
        let scale = (u.to_vector().norm_squared() * c).max(1.0);
        let terms = [
            (LinearScheme::Central, 0.0),
            (LinearScheme::Upwind, c.powi(3) * ma * ma),
            (
                LinearScheme::LaxFriedrichs {
                    lambda_max: Some(lambda),
                },
                c * c * lambda * ma * ma,
            ),
        ];
        for (scheme, expect) in terms {
            let b = boundary_energy_term(
                &u,
                &linear_boundary_flux(&u, &ext, &mean, &n, scheme),
                &mean,
                &n,
            );
            let err = (b - expect).abs() / scale;
            worst = worst.max(err);
            check(err < 1e-12, || format!("{scheme:?}: {b} vs {expect}"))?;
        }
        let ui = u.to_vector();
        let quad = ui.dot(&(abs_coefficient_matrix(&mean, &n) * ui));
        let q = u.q(&mean);
        let expect = q * q / c + c.powi(3) * ma * ma;
        let err = (quad - expect).abs() / scale;
        worst = worst.max(err);
        check(err < 1e-12, || format!("U^T|A|U: {quad} vs {expect}"))?;
    }
    Ok(format!("1000 states x 4 identities, worst {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let lo = vacuum_limit(&AIR) + 1e-2;
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = random_normal(&mut rng);
        let ma = rng.random_range(lo..5.0);
        let u = random_wall_state(&mut rng, &n, ma, &AIR);
        for kind in WallFluxKind::ALL {
            let f = wall_flux(kind, &u, &n, &AIR).map_err(|e| e.to_string())?;
            let general = entropy_boundary_term(&u, &f, &n, &AIR).map_err(|e| e.to_string())?;
            let ratio = wall_pressure(kind, &u, &n, &AIR)
                .map_err(|e| e.to_string())?
                .ratio;
            let reduced = u.rho * u.normal_velocity(&n) * (ratio - 1.0);
            let s = entropy_quantities(&u, &AIR).unwrap().s;
            let scale = reduced.abs().max(s.abs()).max(1.0);
            let err = (general - reduced).abs() / scale;
            worst = worst.max(err);
            check(err < 1e-12, || {
                format!("{kind} at Ma {ma}: {general} vs {reduced}")
            })?;
        }
    }
    Ok(format!("1000 states x 8 kinds, worst {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    // (a)
    let sbp = (1..=8)
        .map(|n| LglBasis::new(n).sbp_residual())
        .fold(0.0, f64::max);
    check(sbp < 1e-13, || format!("(a) SBP residual {sbp:e}"))?;
    // (b)
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tadmor: f64 = 0.0;
    for _ in 0..10_000 {
        let (l, r) = (random_state(&mut rng, &AIR), random_state(&mut rng, &AIR));
        let f = ec_volume_flux(&l, &r, &AIR);
        let (wl, wr) = (
            entropy_quantities(&l, &AIR).unwrap().w,
            entropy_quantities(&r, &AIR).unwrap().w,
        );
        let dw: [f64; 5] = std::array::from_fn(|k| wr[k] - wl[k]);
        let scale: f64 =
            (0..5).map(|k| (dw[k] * f[k]).abs()).sum::<f64>() + l.mom[0].abs() + r.mom[0].abs();
        tadmor = tadmor.max((f.contract(&dw) - (r.mom[0] - l.mom[0])).abs() / scale);
    }
    check(tadmor < 1e-11, || format!("(b) Tadmor residual {tadmor:e}"))?;
    // (c)
    let cfg = SolverConfig::impulsive_start(WallFluxKind::LaxFriedrichs, 0.1, InterfaceFlux::EC);
    let out = run_simulation(&cfg).map_err(|e| format!("(c) {e}"))?;
    let min_b = out.budget.min_boundary_contribution();
    check(min_b >= -1e-12, || {
        format!("(c) min wall entropy contribution {min_b:e}")
    })?;
    // (d): base step at CFL 0.1, then two halvings
    let mut cfg =
        SolverConfig::impulsive_start(WallFluxKind::InternalPressure, 0.1, InterfaceFlux::EC);
    cfg.cfl = 0.1;
    let base = cfl_steps(&cfg).map_err(|e| e.to_string())?;
    let mut drift = [0.0; 3];
    for (i, m) in [1, 2, 4].into_iter().enumerate() {
        drift[i] = run_simulation_steps(&cfg, base * m)
            .map_err(|e| format!("(d) {e}"))?
            .budget
            .entropy_drift()
            .abs();
    }
    let o1 = (drift[0] / drift[1]).log2();
    let o2 = (drift[1] / drift[2]).log2();
    check(o1 >= 2.7 && o2 >= 2.7, || {
        format!("(d) drift {drift:?}, orders {o1:.3}, {o2:.3}")
    })?;
    let elapsed = start.elapsed();
    within(elapsed, 60.0, "solver checks")?;
    Ok(format!(
        "SBP {sbp:.1e}; Tadmor {tadmor:.1e}; impulsive LF {} steps, min wall term {min_b:.2e}; drift orders {o1:.3}, {o2:.3}; {:.2} s",
        out.steps,
        elapsed.as_secs_f64()
    ))
}

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_slipwall");
    let ok = Command::new(bin)
        .args(["verify"])
        .output()
        .map_err(|e| e.to_string())?;
    check(ok.status.code() == Some(0), || {
        format!(
            "verify exited {:?}: {}",
            ok.status.code(),
            String::from_utf8_lossy(&ok.stdout)
        )
    })?;
    let bad = Command::new(bin)
        .args(["verify", "--inject-fault", "roe-threshold-sign"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&bad.stdout);
    check(bad.status.code() == Some(1), || {
        format!("faulted verify exited {:?}", bad.status.code())
    })?;
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("[FAIL]")).collect();
    check(
        failing.len() == 1 && failing[0].contains("roe_sign"),
        || format!("unexpected failures: {failing:?}"),
    )?;
    Ok("verify exit 0; with --inject-fault roe-threshold-sign exit 1, only roe_sign fails".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("figure reproduction", criterion_1),
        ("spot values", criterion_2),
        ("oracle equivalence", criterion_3),
        ("exact Riemann cross-check", criterion_4),
        ("linear closed forms", criterion_5),
        ("entropy term reduction", criterion_6),
        ("solver properties", criterion_7),
        ("verify exit status", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
