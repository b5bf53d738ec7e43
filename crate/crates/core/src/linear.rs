//! Symmetrized linearized Euler equations and their wall boundary terms.
//!
//! Perturbation variables `U = [rho', V, P']` about a constant mean state,
//! with the constants
//!
//! ```text
//! c = sqrt(gamma p_bar / rho_bar),  a = sqrt((gamma - 1)/gamma) c,  b = c / sqrt(gamma)
//! ```
//!
//! and normal coefficient matrix `A_n = n1 A1 + n2 A2 + n3 A3`. With zero mean
//! normal velocity `A_n U = [b V_n, Q n, a V_n]` where `Q = b rho' + a P'`.
//!
//! The energy boundary term `B_L = U^T (F* - A_n U / 2)` must be non-negative at
//! every wall quadrature point for energy stability.

use nalgebra::{Matrix5, SymmetricEigen, Vector5};

use crate::error::{Error, Result};
use crate::euler::{dot, GasModel, NormalFlux, UnitNormal, Vec3};

/// Relative tolerance (against the mean sound speed) for `v_bar . n = 0`.
pub const MEAN_NORMAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanState {
    rho: f64,
    v: Vec3,
    p: f64,
    gas: GasModel,
}

impl MeanState {
    pub fn new(rho: f64, v: Vec3, p: f64, gas: GasModel) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(Error::NonPositiveDensity(rho));
        }
        if !(p > 0.0) {
            return Err(Error::NonPositivePressure(p));
        }
        Ok(Self { rho, v, p, gas })
    }

    /// Mean state with the given sound speed, `rho_bar = 1`.
    pub fn with_sound_speed(c: f64, v: Vec3, gas: GasModel) -> Result<Self> {
        Self::new(1.0, v, c * c / gas.gamma(), gas)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn velocity(&self) -> Vec3 {
        self.v
    }

    pub fn pressure(&self) -> f64 {
        self.p
    }

    pub fn gas(&self) -> GasModel {
        self.gas
    }

    pub fn sound_speed(&self) -> f64 {
        (self.gas.gamma() * self.p / self.rho).sqrt()
    }

    pub fn a(&self) -> f64 {
        (self.gas.gm1() / self.gas.gamma()).sqrt() * self.sound_speed()
    }

    pub fn b(&self) -> f64 {
        self.sound_speed() / self.gas.gamma().sqrt()
    }

    pub fn normal_velocity(&self, n: &UnitNormal) -> f64 {
        dot(&self.v, n.as_array())
    }

    fn check_wall(&self, n: &UnitNormal) -> Result<()> {
        let vn = self.normal_velocity(n);
        if vn.abs() > MEAN_NORMAL_TOL * self.sound_speed() {
            Err(Error::NonzeroMeanNormalVelocity(vn))
        } else {
            Ok(())
        }
    }
}

/// Perturbation state `(rho', V, P')`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearState {
    pub rho_p: f64,
    pub v: Vec3,
    pub p_p: f64,
}

impl LinearState {
    pub fn new(rho_p: f64, v: Vec3, p_p: f64) -> Self {
        Self { rho_p, v, p_p }
    }

    pub fn from_vector(u: &Vector5<f64>) -> Self {
        Self {
            rho_p: u[0],
            v: [u[1], u[2], u[3]],
            p_p: u[4],
        }
    }

    pub fn to_vector(&self) -> Vector5<f64> {
        Vector5::new(self.rho_p, self.v[0], self.v[1], self.v[2], self.p_p)
    }

    /// `Q = b rho' + a P'`.
    pub fn q(&self, mean: &MeanState) -> f64 {
        mean.b() * self.rho_p + mean.a() * self.p_p
    }

    pub fn normal_velocity(&self, n: &UnitNormal) -> f64 {
        dot(&self.v, n.as_array())
    }

    /// `V_n / c_bar`.
    pub fn normal_mach(&self, n: &UnitNormal, mean: &MeanState) -> f64 {
        self.normal_velocity(n) / mean.sound_speed()
    }
}

fn flux_from_vector(v: &Vector5<f64>) -> NormalFlux {
    NormalFlux([v[0], v[1], v[2], v[3], v[4]])
}

fn flux_to_vector(f: &NormalFlux) -> Vector5<f64> {
    Vector5::from_column_slice(&f.0)
}

pub fn coefficient_matrix(mean: &MeanState, n: &UnitNormal) -> Matrix5<f64> {
    let (a, b) = (mean.a(), mean.b());
    let vn = mean.normal_velocity(n);
    let n = n.as_array();
    let mut m = Matrix5::from_diagonal_element(vn);
    for d in 0..3 {
        m[(0, d + 1)] = b * n[d];
        m[(d + 1, 0)] = b * n[d];
        m[(4, d + 1)] = a * n[d];
        m[(d + 1, 4)] = a * n[d];
    }
    m
}

/// `|A|` of a symmetric matrix from its eigendecomposition.
pub fn symmetric_abs(m: &Matrix5<f64>) -> Matrix5<f64> {
    let eig = SymmetricEigen::new(*m);
    let abs = eig.eigenvalues.map(f64::abs);
    eig.eigenvectors * Matrix5::from_diagonal(&abs) * eig.eigenvectors.transpose()
}

/// `|A_n|` from the wall eigenstructure: eigenvalues `+-c` on span{x, y} with
/// `x = [b, 0, a] / c` and `y = [0, n, 0]`, zero on the rest.
fn wall_abs(mean: &MeanState, n: &UnitNormal) -> Matrix5<f64> {
    let c = mean.sound_speed();
    let x = Vector5::new(mean.b() / c, 0.0, 0.0, 0.0, mean.a() / c);
    let n = n.as_array();
    let y = Vector5::new(0.0, n[0], n[1], n[2], 0.0);
    c * (x * x.transpose() + y * y.transpose())
}

/// `|A_n|` using the closed form at walls and a general eigensolve otherwise.
pub fn abs_coefficient_matrix(mean: &MeanState, n: &UnitNormal) -> Matrix5<f64> {
    if mean.check_wall(n).is_ok() {
        wall_abs(mean, n)
    } else {
        symmetric_abs(&coefficient_matrix(mean, n))
    }
}

/// `(|A_n|, A_n^-)` with `A_n^- = (A_n - |A_n|) / 2`. Requires `v_bar . n = 0`.
pub fn matrix_abs_and_minus(
    mean: &MeanState,
    n: &UnitNormal,
) -> Result<(Matrix5<f64>, Matrix5<f64>)> {
    mean.check_wall(n)?;
    let abs = wall_abs(mean, n);
    let minus = 0.5 * (coefficient_matrix(mean, n) - abs);
    Ok((abs, minus))
}

/// Reflects the velocity perturbation: `V -> V - 2 V_n n`.
pub fn mirror_state_linear(u: &LinearState, n: &UnitNormal) -> LinearState {
    let vn = u.normal_velocity(n);
    let n = n.as_array();
    LinearState {
        rho_p: u.rho_p,
        v: std::array::from_fn(|d| u.v[d] - 2.0 * vn * n[d]),
        p_p: u.p_p,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LinearScheme {
    Central,
    Upwind,
    /// Scalar dissipation `|lambda|_max I`; `None` uses the mean sound speed.
    LaxFriedrichs {
        lambda_max: Option<f64>,
    },
}

/// `F* = (A_n U + A_n U_ext)/2 - (eps/2) D (U_ext - U)` with `D = |A_n|` (upwind),
/// `D = lambda_max I` (Lax-Friedrichs) or `D = 0` (central).
pub fn linear_boundary_flux(
    u: &LinearState,
    u_ext: &LinearState,
    mean: &MeanState,
    n: &UnitNormal,
    scheme: LinearScheme,
) -> NormalFlux {
    let an = coefficient_matrix(mean, n);
    let (ui, ue) = (u.to_vector(), u_ext.to_vector());
    let central = 0.5 * (an * ui + an * ue);
    let jump = ue - ui;
    let f = match scheme {
        LinearScheme::Central => central,
        LinearScheme::Upwind => central - 0.5 * abs_coefficient_matrix(mean, n) * jump,
        LinearScheme::LaxFriedrichs { lambda_max } => {
            let lambda = lambda_max.unwrap_or_else(|| default_lambda_max(mean, n));
            central - 0.5 * lambda * jump
        }
    };
    flux_from_vector(&f)
}

/// Largest `|eigenvalue|` of `A_n`: `|v_bar . n| + c_bar`.
pub fn default_lambda_max(mean: &MeanState, n: &UnitNormal) -> f64 {
    mean.normal_velocity(n).abs() + mean.sound_speed()
}

/// `B_L = U^T (F* - A_n U / 2)`.
pub fn boundary_energy_term(
    u: &LinearState,
    f_star: &NormalFlux,
    mean: &MeanState,
    n: &UnitNormal,
) -> f64 {
    let ui = u.to_vector();
    let interior = coefficient_matrix(mean, n) * ui;
    ui.dot(&(flux_to_vector(f_star) - 0.5 * interior))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DirectVariant {
    /// `rho* = rho'`, `P* = P'`: neutrally stable.
    Neutral,
    /// `Q* = Q + |lambda|_max V_n`, matching the reflected Lax-Friedrichs flux.
    LaxFriedrichs { lambda_max: Option<f64> },
    /// `Q* = Q + c_bar V_n`, matching the reflected upwind flux.
    UpwindEquivalent,
}

/// Direct wall flux `A_n U*` with `V*_n = 0`: `[0, Q* n, 0]`.
///
/// The dissipative variants keep `rho* = rho'` and shift `P*` so that
/// `V_n (Q* - Q)` equals the dissipation of the corresponding reflected Riemann flux.
pub fn direct_wall_flux_linear(
    u: &LinearState,
    mean: &MeanState,
    n: &UnitNormal,
    variant: DirectVariant,
) -> NormalFlux {
    let vn = u.normal_velocity(n);
    let a = mean.a();
    let p_star = match variant {
        DirectVariant::Neutral => u.p_p,
        DirectVariant::LaxFriedrichs { lambda_max } => {
            let lambda = lambda_max.unwrap_or_else(|| default_lambda_max(mean, n));
            u.p_p + lambda * vn / a
        }
        DirectVariant::UpwindEquivalent => u.p_p + mean.sound_speed() * vn / a,
    };
    let q_star = mean.b() * u.rho_p + a * p_star;
    let n = n.as_array();
    NormalFlux([0.0, q_star * n[0], q_star * n[1], q_star * n[2], 0.0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_normal(rng: &mut ChaCha8Rng) -> UnitNormal {
        loop {
            let v: Vec3 = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            if dot(&v, &v) > 1e-2 {
                return UnitNormal::normalize(v).unwrap();
            }
        }
    }

    /// Mean velocity tangential to `n`.
    fn tangential_mean(rng: &mut ChaCha8Rng, n: &UnitNormal) -> MeanState {
        let v: Vec3 = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let vn = dot(&v, n.as_array());
        let nn = n.as_array();
        let vt = std::array::from_fn(|d| v[d] - vn * nn[d]);
        MeanState::new(
            rng.random_range(0.2..3.0),
            vt,
            rng.random_range(0.2..3.0),
            GasModel::AIR,
        )
        .unwrap()
    }

    fn random_linear(rng: &mut ChaCha8Rng) -> LinearState {
        LinearState::new(
            rng.random_range(-1.0..1.0),
            std::array::from_fn(|_| rng.random_range(-1.0..1.0)),
            rng.random_range(-1.0..1.0),
        )
    }

    #[test]
    fn constants_satisfy_pythagoras() {
        for gamma in [1.1, 1.4, 5.0 / 3.0, 2.5] {
            let mean = MeanState::new(1.3, [0.0; 3], 0.7, GasModel::new(gamma).unwrap()).unwrap();
            let c = mean.sound_speed();
            assert!(((mean.a().powi(2) + mean.b().powi(2)) / (c * c) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn a1_matches_printed_matrix() {
        let mean = MeanState::new(1.0, [0.0; 3], 1.0, GasModel::AIR).unwrap();
        let (a, b) = (mean.a(), mean.b());
        let m = coefficient_matrix(&mean, &UnitNormal::X);
        #[rustfmt::skip]
        let expect = Matrix5::new(
            0.0, b,   0.0, 0.0, 0.0,
            b,   0.0, 0.0, 0.0, a,
            0.0, 0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0, 0.0,
            0.0, a,   0.0, 0.0, 0.0,
        );
        assert_eq!(m, expect);
    }

    #[test]
    fn coefficient_matrix_symmetric_with_zero_diagonal_at_wall() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let n = random_normal(&mut rng);
            let mean = tangential_mean(&mut rng, &n);
            let m = coefficient_matrix(&mean, &n);
            assert!((m - m.transpose()).amax() <= 1e-15);
            for i in 0..5 {
                assert!(m[(i, i)].abs() < 1e-15);
            }
        }
    }

    #[test]
    fn eigenvalues_at_wall() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = random_normal(&mut rng);
            let mean = tangential_mean(&mut rng, &n);
            let c = mean.sound_speed();
            let eig = SymmetricEigen::new(coefficient_matrix(&mean, &n));
            let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            ev.sort_by(f64::total_cmp);
            let expect = [-c, 0.0, 0.0, 0.0, c];
            for (x, y) in ev.iter().zip(expect) {
                assert!((x - y).abs() < 1e-13, "{ev:?} vs c = {c}");
            }
        }
    }

    #[test]
    fn closed_form_abs_matches_eigensolver() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let n = random_normal(&mut rng);
            let mean = tangential_mean(&mut rng, &n);
            let (abs, minus) = matrix_abs_and_minus(&mean, &n).unwrap();
            let general = symmetric_abs(&coefficient_matrix(&mean, &n));
            assert!((abs - general).amax() < 1e-13);
            let min_abs = SymmetricEigen::new(abs).eigenvalues.min();
            assert!(min_abs >= -1e-12);
            let max_minus = SymmetricEigen::new(minus).eigenvalues.max();
            assert!(max_minus <= 1e-12);
            // A_n = V Lambda V^T
            let an = coefficient_matrix(&mean, &n);
            let eig = SymmetricEigen::new(an);
            let rebuilt = eig.eigenvectors
                * Matrix5::from_diagonal(&eig.eigenvalues)
                * eig.eigenvectors.transpose();
            assert!((rebuilt - an).amax() < 1e-13);
        }
    }

    #[test]
    fn abs_rejects_mean_normal_flow() {
        let mean = MeanState::new(1.0, [0.3, 0.0, 0.0], 1.0, GasModel::AIR).unwrap();
        assert!(matches!(
            matrix_abs_and_minus(&mean, &UnitNormal::X),
            Err(Error::NonzeroMeanNormalVelocity(_))
        ));
        // general route still works and is positive semidefinite
        let abs = abs_coefficient_matrix(&mean, &UnitNormal::X);
        assert!(SymmetricEigen::new(abs).eigenvalues.min() >= -1e-12);
    }

    #[test]
    fn quadratic_forms_of_abs_and_minus() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let n = random_normal(&mut rng);
            let mean = tangential_mean(&mut rng, &n);
            let c = mean.sound_speed();
            let u = random_linear(&mut rng);
            let ext = mirror_state_linear(&u, &n);
            let (abs, minus) = matrix_abs_and_minus(&mean, &n).unwrap();
            let (q, ma) = (u.q(&mean), u.normal_mach(&n, &mean));
            let ui = u.to_vector();
            let lhs = ui.dot(&(abs * ui));
            let rhs = q * q / c + c.powi(3) * ma * ma;
            assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0));
            let abs_minus = -minus;
            let lhs = ui.dot(&(abs_minus * ext.to_vector()));
            let rhs = q * q / (2.0 * c) - 0.5 * c.powi(3) * ma * ma;
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn mirror_examples() {
        let u = LinearState::new(0.3, [1.0, 2.0, 3.0], -0.2);
        let m = mirror_state_linear(&u, &UnitNormal::X);
        assert_eq!(m.v, [-1.0, 2.0, 3.0]);
        assert_eq!((m.rho_p, m.p_p), (0.3, -0.2));
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let n = random_normal(&mut rng);
            let u = random_linear(&mut rng);
            let m = mirror_state_linear(&u, &n);
            assert!((m.normal_velocity(&n) + u.normal_velocity(&n)).abs() < 1e-15);
            let mm = mirror_state_linear(&m, &n);
            for d in 0..3 {
                assert!((mm.v[d] - u.v[d]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn boundary_flux_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..100 {
            let n = random_normal(&mut rng);
            let mean = tangential_mean(&mut rng, &n);
            let u = random_linear(&mut rng);
            let ext = mirror_state_linear(&u, &n);
            // central flux with mirror state carries no mass or energy
            let f = linear_boundary_flux(&u, &ext, &mean, &n, LinearScheme::Central);
            assert!(f.mass().abs() < 1e-14 && f.energy().abs() < 1e-14);
            // consistency of the upwind flux
            let f = linear_boundary_flux(&u, &u, &mean, &n, LinearScheme::Upwind);
            let an = coefficient_matrix(&mean, &n) * u.to_vector();
            for i in 0..5 {
                assert!((f[i] - an[i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn energy_terms_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..1000 {
            let n = random_normal(&mut rng);
            let mean = tangential_mean(&mut rng, &n);
            let c = mean.sound_speed();
            let u = random_linear(&mut rng);
            let ext = mirror_state_linear(&u, &n);
            let ma = u.normal_mach(&n, &mean);
            let scale = u.to_vector().norm_squared() * c;

            let f0 = linear_boundary_flux(&u, &ext, &mean, &n, LinearScheme::Central);
            assert!(boundary_energy_term(&u, &f0, &mean, &n).abs() < 1e-13 * scale.max(1.0));

            let f1 = linear_boundary_flux(&u, &ext, &mean, &n, LinearScheme::Upwind);
            let b1 = boundary_energy_term(&u, &f1, &mean, &n);
            assert!((b1 - c.powi(3) * ma * ma).abs() < 1e-12 * scale.max(1.0));

            let lambda = rng.random_range(0.5..3.0);
            let flf = linear_boundary_flux(
                &u,
                &ext,
                &mean,
                &n,
                LinearScheme::LaxFriedrichs {
                    lambda_max: Some(lambda),
                },
            );
            let blf = boundary_energy_term(&u, &flf, &mean, &n);
            assert!((blf - c * c * lambda * ma * ma).abs() < 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn energy_term_spot_values() {
        let mean = MeanState::with_sound_speed(1.0, [0.0; 3], GasModel::AIR).unwrap();
        let n = UnitNormal::X;
        let u = LinearState::new(0.2, [0.1, 0.4, -0.3], 0.5);
        let ext = mirror_state_linear(&u, &n);
        let f1 = linear_boundary_flux(&u, &ext, &mean, &n, LinearScheme::Upwind);
        assert!((boundary_energy_term(&u, &f1, &mean, &n) - 0.01).abs() < 1e-14);
        let flf = linear_boundary_flux(
            &u,
            &ext,
            &mean,
            &n,
            LinearScheme::LaxFriedrichs {
                lambda_max: Some(1.0),
            },
        );
        assert!((boundary_energy_term(&u, &flf, &mean, &n) - 0.01).abs() < 1e-14);
        let d = direct_wall_flux_linear(
            &u,
            &mean,
            &n,
            DirectVariant::LaxFriedrichs {
                lambda_max: Some(1.0),
            },
        );
        let q_star = d.momentum()[0];
        assert!((0.1 * (q_star - u.q(&mean)) - 0.01).abs() < 1e-14);
    }

    #[test]
    fn direct_fluxes() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let n = random_normal(&mut rng);
            let mean = tangential_mean(&mut rng, &n);
            let c = mean.sound_speed();
            let u = random_linear(&mut rng);
            let ext = mirror_state_linear(&u, &n);
            let ma = u.normal_mach(&n, &mean);
            let vn = u.normal_velocity(&n);
            let scale = u.to_vector().norm_squared().max(1.0) * c;

            let neutral = direct_wall_flux_linear(&u, &mean, &n, DirectVariant::Neutral);
            assert!(boundary_energy_term(&u, &neutral, &mean, &n).abs() < 1e-13 * scale);
            assert_eq!((neutral.mass(), neutral.energy()), (0.0, 0.0));

            let lambda = rng.random_range(0.5..3.0);
            let lf = direct_wall_flux_linear(
                &u,
                &mean,
                &n,
                DirectVariant::LaxFriedrichs {
                    lambda_max: Some(lambda),
                },
            );
            let q_star = dot(&lf.momentum(), n.as_array());
            let q = u.q(&mean);
            assert!((q_star - q - c * lambda * ma).abs() < 1e-12 * scale);
            assert!((vn * (q_star - q) - c * c * lambda * ma * ma).abs() < 1e-12 * scale);
            assert!(vn * (q_star - q) >= 0.0);
            // equivalent to the reflected Lax-Friedrichs flux
            let reflected = linear_boundary_flux(
                &u,
                &ext,
                &mean,
                &n,
                LinearScheme::LaxFriedrichs {
                    lambda_max: Some(lambda),
                },
            );
            assert!((lf - reflected).max_abs() < 1e-12 * scale);

            let up = direct_wall_flux_linear(&u, &mean, &n, DirectVariant::UpwindEquivalent);
            let reflected = linear_boundary_flux(&u, &ext, &mean, &n, LinearScheme::Upwind);
            assert!((up - reflected).max_abs() < 1e-12 * scale);
            let b = boundary_energy_term(&u, &up, &mean, &n);
            assert!((b - c.powi(3) * ma * ma).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn direct_variants_coincide_without_normal_velocity() {
        let mean = MeanState::with_sound_speed(1.7, [0.0, 0.2, 0.0], GasModel::AIR).unwrap();
        let u = LinearState::new(0.4, [0.0, 0.3, 0.9], -0.6);
        let n = UnitNormal::X;
        let a = direct_wall_flux_linear(&u, &mean, &n, DirectVariant::Neutral);
        let b = direct_wall_flux_linear(
            &u,
            &mean,
            &n,
            DirectVariant::LaxFriedrichs { lambda_max: None },
        );
        let c = direct_wall_flux_linear(&u, &mean, &n, DirectVariant::UpwindEquivalent);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(boundary_energy_term(&u, &a, &mean, &n).abs() < 1e-14);
    }
}
