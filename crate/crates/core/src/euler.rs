//! Ideal-gas Euler state algebra.
//!
//! Conservative and primitive states, the physical flux projected on a unit
//! normal, and the entropy pair
//!
//! ```text
//! s     = -rho * sigma / (gamma - 1),   sigma = ln p - gamma ln rho
//! f_ent = v s
//! w     = [ (gamma - sigma)/(gamma - 1) - beta |v|^2,  2 beta v,  -2 beta ],  beta = rho / (2p)
//! ```
//!
//! Validity (positive density and pressure) is checked by the fallible
//! conversions. The flux kernels assume a valid state.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm_sq(a: &Vec3) -> f64 {
    dot(a, a)
}

/// Tolerance on `| |n| - 1 |` accepted by [`UnitNormal::new`].
pub const NORMAL_TOL: f64 = 1e-12;

/// Ideal gas closure `p = (gamma - 1)(E - rho |v|^2 / 2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasModel {
    gamma: f64,
}

impl GasModel {
    /// Diatomic gas, gamma = 7/5.
    pub const AIR: GasModel = GasModel { gamma: 1.4 };

    /// Accepts `1 < gamma < 3`. The upper bound keeps the Roe wall threshold finite.
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.is_finite() && gamma > 1.0 && gamma < 3.0 {
            Ok(Self { gamma })
        } else {
            Err(Error::GammaOutOfRange(gamma))
        }
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    #[inline]
    pub fn gm1(&self) -> f64 {
        self.gamma - 1.0
    }
}

impl Default for GasModel {
    fn default() -> Self {
        Self::AIR
    }
}

/// Unit-length 3-vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitNormal(Vec3);

impl UnitNormal {
    pub const X: UnitNormal = UnitNormal([1.0, 0.0, 0.0]);
    pub const NEG_X: UnitNormal = UnitNormal([-1.0, 0.0, 0.0]);

    pub fn new(n: Vec3) -> Result<Self> {
        let norm = norm_sq(&n).sqrt();
        if (norm - 1.0).abs() <= NORMAL_TOL {
            Ok(Self(n))
        } else {
            Err(Error::NonUnitNormal { norm })
        }
    }

    /// Scales any nonzero vector to unit length.
    pub fn normalize(v: Vec3) -> Result<Self> {
        let norm = norm_sq(&v).sqrt();
        if norm > 0.0 && norm.is_finite() {
            Ok(Self([v[0] / norm, v[1] / norm, v[2] / norm]))
        } else {
            Err(Error::NonUnitNormal { norm })
        }
    }

    #[inline]
    pub fn as_array(&self) -> &Vec3 {
        &self.0
    }

    #[inline]
    pub fn component(&self, i: usize) -> f64 {
        self.0[i]
    }
}

impl Neg for UnitNormal {
    type Output = UnitNormal;
    fn neg(self) -> UnitNormal {
        UnitNormal([-self.0[0], -self.0[1], -self.0[2]])
    }
}

/// Conservative variables `(rho, rho v, E)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservativeState {
    pub rho: f64,
    pub mom: Vec3,
    pub energy: f64,
}

impl ConservativeState {
    pub fn new(rho: f64, mom: Vec3, energy: f64) -> Self {
        Self { rho, mom, energy }
    }

    pub fn from_array(u: [f64; 5]) -> Self {
        Self {
            rho: u[0],
            mom: [u[1], u[2], u[3]],
            energy: u[4],
        }
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.rho, self.mom[0], self.mom[1], self.mom[2], self.energy]
    }

    #[inline]
    pub fn velocity(&self) -> Vec3 {
        [
            self.mom[0] / self.rho,
            self.mom[1] / self.rho,
            self.mom[2] / self.rho,
        ]
    }

    #[inline]
    pub fn normal_velocity(&self, n: &UnitNormal) -> f64 {
        dot(&self.mom, n.as_array()) / self.rho
    }

    /// Pressure without validity checks.
    #[inline]
    pub fn pressure_unchecked(&self, gas: &GasModel) -> f64 {
        gas.gm1() * (self.energy - 0.5 * norm_sq(&self.mom) / self.rho)
    }

    pub fn pressure(&self, gas: &GasModel) -> Result<f64> {
        Ok(primitive_from_conservative(self, gas)?.p)
    }

    /// Sound speed `sqrt(gamma p / rho)`, no validity checks.
    #[inline]
    pub fn sound_speed_unchecked(&self, gas: &GasModel) -> f64 {
        (gas.gamma() * self.pressure_unchecked(gas) / self.rho).sqrt()
    }

    pub fn validate(&self, gas: &GasModel) -> Result<()> {
        primitive_from_conservative(self, gas).map(|_| ())
    }
}

/// Primitive variables `(rho, v, p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimitiveState {
    pub rho: f64,
    pub v: Vec3,
    pub p: f64,
}

impl PrimitiveState {
    pub fn new(rho: f64, v: Vec3, p: f64) -> Self {
        Self { rho, v, p }
    }

    #[inline]
    pub fn sound_speed(&self, gas: &GasModel) -> f64 {
        (gas.gamma() * self.p / self.rho).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0) {
            return Err(Error::NonPositiveDensity(self.rho));
        }
        if !(self.p > 0.0) {
            return Err(Error::NonPositivePressure(self.p));
        }
        Ok(())
    }
}

pub fn primitive_from_conservative(
    u: &ConservativeState,
    gas: &GasModel,
) -> Result<PrimitiveState> {
    if !(u.rho > 0.0) {
        return Err(Error::NonPositiveDensity(u.rho));
    }
    let p = u.pressure_unchecked(gas);
    if !(p > 0.0) {
        return Err(Error::NonPositivePressure(p));
    }
    Ok(PrimitiveState {
        rho: u.rho,
        v: u.velocity(),
        p,
    })
}

pub fn conservative_from_primitive(
    q: &PrimitiveState,
    gas: &GasModel,
) -> Result<ConservativeState> {
    q.validate()?;
    Ok(conservative_from_primitive_unchecked(q, gas))
}

#[inline]
pub(crate) fn conservative_from_primitive_unchecked(
    q: &PrimitiveState,
    gas: &GasModel,
) -> ConservativeState {
    ConservativeState {
        rho: q.rho,
        mom: [q.rho * q.v[0], q.rho * q.v[1], q.rho * q.v[2]],
        energy: q.p / gas.gm1() + 0.5 * q.rho * norm_sq(&q.v),
    }
}

/// Five-component flux through a surface with a given normal.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NormalFlux(pub [f64; 5]);

impl NormalFlux {
    pub const ZERO: NormalFlux = NormalFlux([0.0; 5]);

    #[inline]
    pub fn mass(&self) -> f64 {
        self.0[0]
    }

    #[inline]
    pub fn momentum(&self) -> Vec3 {
        [self.0[1], self.0[2], self.0[3]]
    }

    #[inline]
    pub fn energy(&self) -> f64 {
        self.0[4]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Contraction with a 5-vector.
    #[inline]
    pub fn contract(&self, w: &[f64; 5]) -> f64 {
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }
}

impl Index<usize> for NormalFlux {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for NormalFlux {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for NormalFlux {
    type Output = NormalFlux;
    fn add(self, rhs: NormalFlux) -> NormalFlux {
        NormalFlux(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for NormalFlux {
    type Output = NormalFlux;
    fn sub(self, rhs: NormalFlux) -> NormalFlux {
        NormalFlux(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for NormalFlux {
    type Output = NormalFlux;
    fn neg(self) -> NormalFlux {
        NormalFlux(self.0.map(|x| -x))
    }
}

impl Mul<NormalFlux> for f64 {
    type Output = NormalFlux;
    fn mul(self, rhs: NormalFlux) -> NormalFlux {
        NormalFlux(rhs.0.map(|x| self * x))
    }
}

/// `f . n = [rho v_n, rho v_n v + p n, (E + p) v_n]`. Assumes a valid state.
#[inline]
pub fn physical_normal_flux(u: &ConservativeState, n: &UnitNormal, gas: &GasModel) -> NormalFlux {
    let p = u.pressure_unchecked(gas);
    let vn = u.normal_velocity(n);
    let n = n.as_array();
    NormalFlux([
        u.rho * vn,
        u.mom[0] * vn + p * n[0],
        u.mom[1] * vn + p * n[1],
        u.mom[2] * vn + p * n[2],
        (u.energy + p) * vn,
    ])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyQuantities {
    /// Entropy density `-rho sigma / (gamma - 1)`.
    pub s: f64,
    /// Physical entropy `ln p - gamma ln rho`.
    pub sigma: f64,
    /// `rho / (2p)`.
    pub beta: f64,
    /// Entropy variables `ds/du`.
    pub w: [f64; 5],
}

pub fn entropy_quantities(u: &ConservativeState, gas: &GasModel) -> Result<EntropyQuantities> {
    let q = primitive_from_conservative(u, gas)?;
    Ok(entropy_quantities_primitive(&q, gas))
}

#[inline]
pub(crate) fn entropy_quantities_primitive(
    q: &PrimitiveState,
    gas: &GasModel,
) -> EntropyQuantities {
    let g = gas.gamma();
    let sigma = q.p.ln() - g * q.rho.ln();
    let s = -q.rho * sigma / gas.gm1();
    let beta = q.rho / (2.0 * q.p);
    let v2 = norm_sq(&q.v);
    EntropyQuantities {
        s,
        sigma,
        beta,
        w: [
            (g - sigma) / gas.gm1() - beta * v2,
            2.0 * beta * q.v[0],
            2.0 * beta * q.v[1],
            2.0 * beta * q.v[2],
            -2.0 * beta,
        ],
    }
}

/// Entropy flux through the normal, `s v_n`.
pub fn entropy_normal_flux(u: &ConservativeState, n: &UnitNormal, gas: &GasModel) -> Result<f64> {
    let eq = entropy_quantities(u, gas)?;
    Ok(eq.s * u.normal_velocity(n))
}
