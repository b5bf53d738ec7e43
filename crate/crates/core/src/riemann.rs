//! Riemann solvers for arbitrary left/right states across a unit normal.
//!
//! These are general-purpose solvers (Rusanov, HLL, HLLC, Roe without entropy
//! fix, and the iterative exact solver). Evaluated on a mirror pair they must
//! reproduce the closed-form wall pressures in [`crate::wall`]; nothing here
//! uses those closed forms.

use crate::error::{Error, Result};
use crate::euler::{
    dot, norm_sq, physical_normal_flux, primitive_from_conservative, ConservativeState, GasModel,
    NormalFlux, PrimitiveState, UnitNormal, Vec3,
};
use crate::wall::{mirror_state, WallFluxKind};

/// Newton iteration cap for the exact solver.
pub const MAX_NEWTON_ITERATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemannPair {
    pub left: ConservativeState,
    pub right: ConservativeState,
    pub normal: UnitNormal,
}

impl RiemannPair {
    pub fn new(left: ConservativeState, right: ConservativeState, normal: UnitNormal) -> Self {
        Self {
            left,
            right,
            normal,
        }
    }

    /// Interior state on the left, its reflection on the right.
    pub fn mirror(u: &ConservativeState, n: &UnitNormal) -> Self {
        let (left, right) = mirror_state(u, n);
        Self {
            left,
            right,
            normal: *n,
        }
    }

    /// Same interface seen from the right: states swapped, normal flipped.
    pub fn reversed(&self) -> Self {
        Self {
            left: self.right,
            right: self.left,
            normal: -self.normal,
        }
    }

    fn primitives(&self, gas: &GasModel) -> Result<(PrimitiveState, PrimitiveState)> {
        Ok((
            primitive_from_conservative(&self.left, gas)?,
            primitive_from_conservative(&self.right, gas)?,
        ))
    }

    /// Checks that the right state is the reflection of the left one.
    pub fn check_mirror(&self, gas: &GasModel) -> Result<()> {
        let (l, r) = self.primitives(gas)?;
        let n = self.normal.as_array();
        let tol = 1e-12;
        let rel = |a: f64, b: f64, scale: f64| (a - b).abs() <= tol * scale;
        let vscale = l.sound_speed(gas) + norm_sq(&l.v).sqrt();
        let (vnl, vnr) = (dot(&l.v, n), dot(&r.v, n));
        let tangential_ok = (0..3).all(|d| rel(l.v[d] - vnl * n[d], r.v[d] - vnr * n[d], vscale));
        if !rel(l.rho, r.rho, l.rho) {
            return Err(Error::NotAMirrorPair(format!(
                "densities differ: {} vs {}",
                l.rho, r.rho
            )));
        }
        if !rel(l.p, r.p, l.p) {
            return Err(Error::NotAMirrorPair(format!(
                "pressures differ: {} vs {}",
                l.p, r.p
            )));
        }
        if !rel(vnl, -vnr, vscale) {
            return Err(Error::NotAMirrorPair(format!(
                "normal velocities not opposite: {vnl} vs {vnr}"
            )));
        }
        if !tangential_ok {
            return Err(Error::NotAMirrorPair("tangential velocities differ".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarState {
    pub p_star: f64,
    /// Contact velocity along the pair normal.
    pub u_star: f64,
}

struct Side {
    rho: f64,
    u: f64,
    p: f64,
    c: f64,
}

impl Side {
    /// Pressure function `f_K(p)` and its derivative.
    fn pressure_function(&self, p: f64, gas: &GasModel) -> (f64, f64) {
        let g = gas.gamma();
        if p > self.p {
            let a = 2.0 / ((g + 1.0) * self.rho);
            let b = (g - 1.0) / (g + 1.0) * self.p;
            let q = (a / (p + b)).sqrt();
            ((p - self.p) * q, q * (1.0 - 0.5 * (p - self.p) / (b + p)))
        } else {
            let z = (g - 1.0) / (2.0 * g);
            let ratio = p / self.p;
            (
                2.0 * self.c / (g - 1.0) * (ratio.powf(z) - 1.0),
                ratio.powf(-(g + 1.0) / (2.0 * g)) / (self.rho * self.c),
            )
        }
    }
}

/// Star-region pressure and velocity of the exact Riemann problem along the pair normal.
///
/// Newton iteration on `f_L(p) + f_R(p) + (u_R - u_L) = 0` from the
/// two-rarefaction guess.
pub fn exact_riemann_star(pair: &RiemannPair, gas: &GasModel) -> Result<StarState> {
    let (l, r) = pair.primitives(gas)?;
    let n = pair.normal.as_array();
    let left = Side {
        rho: l.rho,
        u: dot(&l.v, n),
        p: l.p,
        c: l.sound_speed(gas),
    };
    let right = Side {
        rho: r.rho,
        u: dot(&r.v, n),
        p: r.p,
        c: r.sound_speed(gas),
    };
    let g = gas.gamma();
    let du = right.u - left.u;
    let positivity = 2.0 / (g - 1.0) * (left.c + right.c) - du;
    if positivity <= 0.0 {
        return Err(Error::VacuumGenerated { positivity });
    }

    let z = (g - 1.0) / (2.0 * g);
    let floor = 1e-12 * left.p.min(right.p);
    let guess = ((left.c + right.c - 0.5 * (g - 1.0) * du)
        / (left.c / left.p.powf(z) + right.c / right.p.powf(z)))
    .powf(1.0 / z);
    let mut p = guess.max(floor);
    let scale = du.abs() + left.c + right.c;

    for _ in 0..MAX_NEWTON_ITERATIONS {
        let (fl, dfl) = left.pressure_function(p, gas);
        let (fr, dfr) = right.pressure_function(p, gas);
        let residual = fl + fr + du;
        let mut next = p - residual / (dfl + dfr);
        if next <= 0.0 {
            next = 0.5 * p;
        }
        let change = (next - p).abs() / (0.5 * (next + p));
        p = next;
        if change < 1e-15 || residual.abs() <= 1e-15 * scale {
            let (fl, _) = left.pressure_function(p, gas);
            let (fr, _) = right.pressure_function(p, gas);
            return Ok(StarState {
                p_star: p,
                u_star: 0.5 * (left.u + right.u) + 0.5 * (fr - fl),
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_NEWTON_ITERATIONS,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaveSpeedMethod {
    /// `S_L = V_n^L - c^L`, `S_R = V_n^R + c^R`; only accepted for mirror pairs.
    WallExact,
    /// `S_L = min(v_n - c)`, `S_R = max(v_n + c)` over both sides.
    Davis,
}

pub fn wave_speed_estimates(
    pair: &RiemannPair,
    gas: &GasModel,
    method: WaveSpeedMethod,
) -> Result<(f64, f64)> {
    let (l, r) = pair.primitives(gas)?;
    let n = pair.normal.as_array();
    let (vl, vr) = (dot(&l.v, n), dot(&r.v, n));
    let (cl, cr) = (l.sound_speed(gas), r.sound_speed(gas));
    match method {
        WaveSpeedMethod::WallExact => {
            pair.check_mirror(gas)?;
            Ok((vl - cl, vr + cr))
        }
        WaveSpeedMethod::Davis => Ok(((vl - cl).min(vr - cr), (vl + cl).max(vr + cr))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApproximateSolver {
    /// Rusanov with `lambda_max = max(|v_n| + c)`.
    LaxFriedrichs,
    Hll(WaveSpeedMethod),
    Hllc(WaveSpeedMethod),
    /// Roe linearization without entropy fix.
    Roe,
}

impl ApproximateSolver {
    /// The solver that, fed a mirror pair, corresponds to a wall flux kind.
    pub fn for_wall(kind: WallFluxKind) -> Option<Self> {
        match kind {
            WallFluxKind::LaxFriedrichs => Some(Self::LaxFriedrichs),
            WallFluxKind::HLL => Some(Self::Hll(WaveSpeedMethod::WallExact)),
            WallFluxKind::HLLC => Some(Self::Hllc(WaveSpeedMethod::WallExact)),
            WallFluxKind::Roe => Some(Self::Roe),
            _ => None,
        }
    }
}

pub fn approximate_flux(
    solver: ApproximateSolver,
    pair: &RiemannPair,
    gas: &GasModel,
) -> Result<NormalFlux> {
    match solver {
        ApproximateSolver::LaxFriedrichs => lax_friedrichs_flux(pair, gas),
        ApproximateSolver::Hll(method) => {
            let (sl, sr) = wave_speed_estimates(pair, gas, method)?;
            hll_flux_with_speeds(pair, gas, sl, sr)
        }
        ApproximateSolver::Hllc(method) => {
            let (sl, sr) = wave_speed_estimates(pair, gas, method)?;
            hllc_flux_with_speeds(pair, gas, sl, sr)
        }
        ApproximateSolver::Roe => roe_flux(pair, gas),
    }
}

fn lax_friedrichs_flux(pair: &RiemannPair, gas: &GasModel) -> Result<NormalFlux> {
    let (l, r) = pair.primitives(gas)?;
    let n = &pair.normal;
    let lambda = (dot(&l.v, n.as_array()).abs() + l.sound_speed(gas))
        .max(dot(&r.v, n.as_array()).abs() + r.sound_speed(gas));
    Ok(rusanov(pair, gas, lambda))
}

/// `(F_L + F_R)/2 - (lambda/2)(U_R - U_L)`.
pub fn rusanov(pair: &RiemannPair, gas: &GasModel, lambda: f64) -> NormalFlux {
    let fl = physical_normal_flux(&pair.left, &pair.normal, gas);
    let fr = physical_normal_flux(&pair.right, &pair.normal, gas);
    let jump = NormalFlux(pair.right.to_array()) - NormalFlux(pair.left.to_array());
    0.5 * (fl + fr) - (0.5 * lambda) * jump
}

/// Three-branch HLL flux for given wave speeds.
pub fn hll_flux_with_speeds(
    pair: &RiemannPair,
    gas: &GasModel,
    sl: f64,
    sr: f64,
) -> Result<NormalFlux> {
    pair.primitives(gas)?;
    let fl = physical_normal_flux(&pair.left, &pair.normal, gas);
    let fr = physical_normal_flux(&pair.right, &pair.normal, gas);
    if sl >= 0.0 {
        return Ok(fl);
    }
    if sr <= 0.0 {
        return Ok(fr);
    }
    let jump = NormalFlux(pair.right.to_array()) - NormalFlux(pair.left.to_array());
    Ok((1.0 / (sr - sl)) * (sr * fl - sl * fr + (sl * sr) * jump))
}

/// Contact wave speed of the HLLC approximation.
pub fn hllc_contact_speed(pair: &RiemannPair, gas: &GasModel, sl: f64, sr: f64) -> Result<f64> {
    let (l, r) = pair.primitives(gas)?;
    let n = pair.normal.as_array();
    let (ul, ur) = (dot(&l.v, n), dot(&r.v, n));
    let num = r.p - l.p + l.rho * ul * (sl - ul) - r.rho * ur * (sr - ur);
    let den = l.rho * (sl - ul) - r.rho * (sr - ur);
    Ok(num / den)
}

fn hllc_star(
    u: &ConservativeState,
    q: &PrimitiveState,
    n: &Vec3,
    s: f64,
    s_star: f64,
) -> NormalFlux {
    let un = dot(&q.v, n);
    let factor = q.rho * (s - un) / (s - s_star);
    let shift = s_star - un;
    NormalFlux([
        factor,
        factor * (q.v[0] + shift * n[0]),
        factor * (q.v[1] + shift * n[1]),
        factor * (q.v[2] + shift * n[2]),
        factor * (u.energy / q.rho + shift * (s_star + q.p / (q.rho * (s - un)))),
    ])
}

/// HLLC flux with the standard star-region states.
pub fn hllc_flux_with_speeds(
    pair: &RiemannPair,
    gas: &GasModel,
    sl: f64,
    sr: f64,
) -> Result<NormalFlux> {
    let (l, r) = pair.primitives(gas)?;
    let n = pair.normal.as_array();
    let fl = physical_normal_flux(&pair.left, &pair.normal, gas);
    let fr = physical_normal_flux(&pair.right, &pair.normal, gas);
    if sl >= 0.0 {
        return Ok(fl);
    }
    if sr <= 0.0 {
        return Ok(fr);
    }
    let s_star = hllc_contact_speed(pair, gas, sl, sr)?;
    if s_star >= 0.0 {
        let star = hllc_star(&pair.left, &l, n, sl, s_star);
        Ok(fl + sl * (star - NormalFlux(pair.left.to_array())))
    } else {
        let star = hllc_star(&pair.right, &r, n, sr, s_star);
        Ok(fr + sr * (star - NormalFlux(pair.right.to_array())))
    }
}

/// Roe-averaged quantities and the strength of the left acoustic wave.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoeAverages {
    pub rho: f64,
    pub v: Vec3,
    pub v_n: f64,
    /// Total enthalpy `(E + p) / rho`, averaged.
    pub h: f64,
    pub c: f64,
    /// `v_n - c`.
    pub lambda1: f64,
    /// `(dp - rho c dv_n) / (2 c^2)`.
    pub alpha1: f64,
}

pub fn roe_averages(pair: &RiemannPair, gas: &GasModel) -> Result<RoeAverages> {
    let (l, r) = pair.primitives(gas)?;
    let n = pair.normal.as_array();
    let (sl, sr) = (l.rho.sqrt(), r.rho.sqrt());
    let w = 1.0 / (sl + sr);
    let v: Vec3 = std::array::from_fn(|d| (sl * l.v[d] + sr * r.v[d]) * w);
    let hl = (pair.left.energy + l.p) / l.rho;
    let hr = (pair.right.energy + r.p) / r.rho;
    let h = (sl * hl + sr * hr) * w;
    let c = (gas.gm1() * (h - 0.5 * norm_sq(&v))).sqrt();
    let v_n = dot(&v, n);
    let rho = sl * sr;
    let dvn = dot(&r.v, n) - dot(&l.v, n);
    Ok(RoeAverages {
        rho,
        v,
        v_n,
        h,
        c,
        lambda1: v_n - c,
        alpha1: (r.p - l.p - rho * c * dvn) / (2.0 * c * c),
    })
}

fn roe_flux(pair: &RiemannPair, gas: &GasModel) -> Result<NormalFlux> {
    let (l, r) = pair.primitives(gas)?;
    let avg = roe_averages(pair, gas)?;
    let n = pair.normal.as_array();
    let (rho, v, vn, h, c) = (avg.rho, avg.v, avg.v_n, avg.h, avg.c);

    let dp = r.p - l.p;
    let dvn = dot(&r.v, n) - dot(&l.v, n);
    let drho = r.rho - l.rho;
    let dv: Vec3 = std::array::from_fn(|d| r.v[d] - l.v[d]);
    let dvt: Vec3 = std::array::from_fn(|d| dv[d] - dvn * n[d]);

    let alpha1 = avg.alpha1;
    let alpha5 = (dp + rho * c * dvn) / (2.0 * c * c);
    let alpha2 = drho - dp / (c * c);

    let k1 = NormalFlux([
        1.0,
        v[0] - c * n[0],
        v[1] - c * n[1],
        v[2] - c * n[2],
        h - vn * c,
    ]);
    let k5 = NormalFlux([
        1.0,
        v[0] + c * n[0],
        v[1] + c * n[1],
        v[2] + c * n[2],
        h + vn * c,
    ]);
    let k2 = NormalFlux([1.0, v[0], v[1], v[2], 0.5 * norm_sq(&v)]);
    let shear = NormalFlux([
        0.0,
        rho * dvt[0],
        rho * dvt[1],
        rho * dvt[2],
        rho * dot(&v, &dvt),
    ]);

    let dissipation = ((vn - c).abs() * alpha1) * k1
        + (vn.abs() * alpha2) * k2
        + vn.abs() * shear
        + ((vn + c).abs() * alpha5) * k5;

    let fl = physical_normal_flux(&pair.left, &pair.normal, gas);
    let fr = physical_normal_flux(&pair.right, &pair.normal, gas);
    Ok(0.5 * (fl + fr) - 0.5 * dissipation)
}
