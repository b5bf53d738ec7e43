//! Entropy-conservative two-point flux.
//!
//! Kinetic-energy-preserving and entropy-conservative flux built from
//! logarithmic means of density and `beta = rho / (2p)`. It satisfies the
//! shuffle condition `(w_R - w_L) . F = psi_R - psi_L` with the flux potential
//! `psi = rho v_n`.

use crate::euler::{dot, ConservativeState, GasModel, NormalFlux, UnitNormal};

/// Logarithmic mean `(a - b) / (ln a - ln b)`, with a series expansion for nearly equal arguments.
pub fn ln_mean(a: f64, b: f64) -> f64 {
    let zeta = a / b;
    let f = (zeta - 1.0) / (zeta + 1.0);
    let u = f * f;
    let denom = if u < 1e-4 {
        1.0 + u / 3.0 + u * u / 5.0 + u * u * u / 7.0
    } else {
        zeta.ln() / (2.0 * f)
    };
    0.5 * (a + b) / denom
}

/// Two-point EC flux through `n`. Assumes valid states.
pub fn ec_flux(
    left: &ConservativeState,
    right: &ConservativeState,
    n: &UnitNormal,
    gas: &GasModel,
) -> NormalFlux {
    let (vl, vr) = (left.velocity(), right.velocity());
    let (pl, pr) = (left.pressure_unchecked(gas), right.pressure_unchecked(gas));
    let (bl, br) = (0.5 * left.rho / pl, 0.5 * right.rho / pr);

    let rho_ln = ln_mean(left.rho, right.rho);
    let beta_ln = ln_mean(bl, br);
    let v_avg = [
        0.5 * (vl[0] + vr[0]),
        0.5 * (vl[1] + vr[1]),
        0.5 * (vl[2] + vr[2]),
    ];
    let p_hat = 0.5 * (left.rho + right.rho) / (bl + br);
    let nn = n.as_array();
    let vn_avg = dot(&v_avg, nn);

    let f_rho = rho_ln * vn_avg;
    let f_mom = [
        f_rho * v_avg[0] + p_hat * nn[0],
        f_rho * v_avg[1] + p_hat * nn[1],
        f_rho * v_avg[2] + p_hat * nn[2],
    ];
    let v2_avg = 0.5 * (dot(&vl, &vl) + dot(&vr, &vr));
    let f_e = f_rho * (0.5 / (gas.gm1() * beta_ln) - 0.5 * v2_avg) + dot(&v_avg, &f_mom);
    NormalFlux([f_rho, f_mom[0], f_mom[1], f_mom[2], f_e])
}

/// EC flux in the +x direction.
#[inline]
pub fn ec_volume_flux(
    left: &ConservativeState,
    right: &ConservativeState,
    gas: &GasModel,
) -> NormalFlux {
    ec_flux(left, right, &UnitNormal::X, gas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{
        conservative_from_primitive, entropy_quantities, physical_normal_flux, PrimitiveState, Vec3,
    };
    use crate::wall::{mirror_state, wall_flux, WallFluxKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const AIR: GasModel = GasModel::AIR;

    fn random_state(rng: &mut ChaCha8Rng) -> ConservativeState {
        let v: Vec3 = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        conservative_from_primitive(
            &PrimitiveState::new(rng.random_range(0.1..3.0), v, rng.random_range(0.1..3.0)),
            &AIR,
        )
        .unwrap()
    }

    #[test]
    fn ln_mean_branches_agree() {
        for (a, b) in [
            (1.0, 2.0),
            (3.0, 1.0),
            (1.0, 1.0 + 1e-9),
            (2.0, 2.0),
            (1.0, 1.02),
            (1.0, 1.0202),
        ] {
            let expect = if a == b {
                a
            } else {
                (a - b) / (f64::ln(a) - f64::ln(b))
            };
            let tol = if (a - b).abs() < 1e-6 { 1e-9 } else { 1e-14 };
            assert!((ln_mean(a, b) - expect).abs() < tol * expect, "{a} {b}");
        }
        assert_eq!(ln_mean(2.5, 2.5), 2.5);
    }

    #[test]
    fn consistent_and_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..100 {
            let u = random_state(&mut rng);
            let n = UnitNormal::normalize(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
                .unwrap();
            let f = ec_flux(&u, &u, &n, &AIR);
            let g = physical_normal_flux(&u, &n, &AIR);
            assert!((f - g).max_abs() < 1e-13 * g.max_abs().max(1.0));
            let v = random_state(&mut rng);
            assert!(
                (ec_flux(&u, &v, &n, &AIR) - ec_flux(&v, &u, &n, &AIR)).max_abs()
                    < 1e-14 * f.max_abs().max(1.0)
            );
        }
    }

    #[test]
    fn tadmor_shuffle_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for i in 0..10_000 {
            let l = random_state(&mut rng);
            // every tenth pair nearly equal, to exercise the series branch
            let r = if i % 10 == 0 {
                let a = l.to_array();
                ConservativeState::from_array(std::array::from_fn(|k| {
                    a[k] * (1.0 + 1e-5 * rng.random_range(-1.0..1.0))
                }))
            } else {
                random_state(&mut rng)
            };
            let n = UnitNormal::X;
            let f = ec_volume_flux(&l, &r, &AIR);
            let (wl, wr) = (
                entropy_quantities(&l, &AIR).unwrap().w,
                entropy_quantities(&r, &AIR).unwrap().w,
            );
            let dw: [f64; 5] = std::array::from_fn(|k| wr[k] - wl[k]);
            let (psil, psir) = (l.rho * l.normal_velocity(&n), r.rho * r.normal_velocity(&n));
            let lhs = f.contract(&dw);
            let scale: f64 =
                (0..5).map(|k| (dw[k] * f[k]).abs()).sum::<f64>() + psil.abs() + psir.abs();
            assert!(
                (lhs - (psir - psil)).abs() < 1e-11 * scale,
                "{lhs} vs {}",
                psir - psil
            );
        }
    }

    #[test]
    fn mirror_pair_gives_internal_pressure() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let u = random_state(&mut rng);
            let n = UnitNormal::normalize(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
                .unwrap();
            let (l, r) = mirror_state(&u, &n);
            let f = ec_flux(&l, &r, &n, &AIR);
            let w = wall_flux(WallFluxKind::InternalPressure, &u, &n, &AIR).unwrap();
            assert!((f - w).max_abs() < 1e-13 * w.max_abs().max(1.0));
        }
    }
}
