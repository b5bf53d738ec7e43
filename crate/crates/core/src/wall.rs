//! Nonlinear slip-wall fluxes.
//!
//! Every wall procedure produces a flux of the form `[0, P* n, 0]`: no mass or
//! energy crosses the wall and the momentum flux carries a wall pressure `P*`.
//! The procedures differ only in the ratio `P*/P` as a function of the
//! interior normal Mach number `Ma_n = V_n / c` (positive towards the wall).
//!
//! The entropy boundary term reduces to
//!
//! ```text
//! B_NL = W^T (F* - F.n) + F_ent.n = rho V_n (P*/P - 1) = (rho c) Ma_n (P*/P - 1) = delta_s
//! ```
//!
//! so a wall flux is entropy stable exactly when `Ma_n (P*/P - 1) >= 0`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::euler::{
    dot, entropy_quantities, physical_normal_flux, primitive_from_conservative, ConservativeState,
    GasModel, NormalFlux, UnitNormal,
};

/// Absolute tolerance on `delta_s` for classifying a wall flux as entropy stable.
pub const ENTROPY_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WallFluxKind {
    /// `P* = P`.
    InternalPressure,
    /// Exact solution of the symmetric reflection Riemann problem.
    ExactRP,
    /// Local Lax-Friedrichs (Rusanov) with `lambda_max = |V_n| + c`.
    LaxFriedrichs,
    /// HLL with `S_R = -V_n + c = -S_L`.
    HLL,
    /// HLLC; the contact speed vanishes for the mirror pair.
    HLLC,
    /// Roe without entropy fix.
    Roe,
    /// Entropy-conservative flux with Lax-Friedrichs-type dissipation.
    ECLF,
    /// Entropy-conservative flux with Roe-type dissipation.
    ECRoe,
}

impl WallFluxKind {
    pub const ALL: [WallFluxKind; 8] = [
        WallFluxKind::InternalPressure,
        WallFluxKind::ExactRP,
        WallFluxKind::LaxFriedrichs,
        WallFluxKind::HLL,
        WallFluxKind::HLLC,
        WallFluxKind::Roe,
        WallFluxKind::ECLF,
        WallFluxKind::ECRoe,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            WallFluxKind::InternalPressure => "InternalPressure",
            WallFluxKind::ExactRP => "ExactRP",
            WallFluxKind::LaxFriedrichs => "LaxFriedrichs",
            WallFluxKind::HLL => "HLL",
            WallFluxKind::HLLC => "HLLC",
            WallFluxKind::Roe => "Roe",
            WallFluxKind::ECLF => "ECLF",
            WallFluxKind::ECRoe => "ECRoe",
        }
    }

    /// Whether `delta_s >= 0` holds for every Mach number above the vacuum limit.
    pub fn is_entropy_stable(&self) -> bool {
        !matches!(self, WallFluxKind::Roe)
    }
}

impl fmt::Display for WallFluxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WallFluxKind {
    type Err = String;

    /// Case-insensitive; ignores `-` and `_` (`ec-lf`, `lax_friedrichs`, `rp` ...).
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect::<String>()
            .to_ascii_lowercase();
        let kind = match key.as_str() {
            "internalpressure" | "internal" | "neutral" => WallFluxKind::InternalPressure,
            "exactrp" | "rp" | "exact" => WallFluxKind::ExactRP,
            "laxfriedrichs" | "lf" | "rusanov" => WallFluxKind::LaxFriedrichs,
            "hll" => WallFluxKind::HLL,
            "hllc" => WallFluxKind::HLLC,
            "roe" => WallFluxKind::Roe,
            "eclf" => WallFluxKind::ECLF,
            "ecroe" | "es" => WallFluxKind::ECRoe,
            _ => return Err(format!("unknown wall flux kind '{s}'")),
        };
        Ok(kind)
    }
}

/// Mirror pair `(u_L, u_R)`: `u_R` keeps density and energy and reflects the normal momentum.
pub fn mirror_state(
    u: &ConservativeState,
    n: &UnitNormal,
) -> (ConservativeState, ConservativeState) {
    let mn = dot(&u.mom, n.as_array());
    let nn = n.as_array();
    let reflected = ConservativeState {
        rho: u.rho,
        mom: std::array::from_fn(|d| u.mom[d] - 2.0 * mn * nn[d]),
        energy: u.energy,
    };
    (*u, reflected)
}

/// Normal Mach number where the rarefaction branch of the exact solution reaches vacuum.
pub fn vacuum_limit(gas: &GasModel) -> f64 {
    -2.0 / gas.gm1()
}

/// Root of `P*/P - 1` for the Roe wall pressure; Roe is entropy stable above it.
pub fn roe_threshold(gas: &GasModel) -> f64 {
    -(2.0 / (3.0 - gas.gamma())).sqrt()
}

/// Closed-form wall pressure ratio `P*/P` for a normal Mach number.
pub fn pstar_ratio(kind: WallFluxKind, ma_n: f64, gas: &GasModel) -> Result<f64> {
    let g = gas.gamma();
    let m = ma_n;
    let ratio = match kind {
        WallFluxKind::InternalPressure => 1.0,
        WallFluxKind::ExactRP => {
            if m > 0.0 {
                let k = 0.25 * (g + 1.0) * m;
                1.0 + g * m * (k + (k * k + 1.0).sqrt())
            } else {
                let limit = vacuum_limit(gas);
                if m <= limit {
                    return Err(Error::VacuumLimitExceeded { ma_n: m, limit });
                }
                (1.0 + 0.5 * gas.gm1() * m).powf(2.0 * g / gas.gm1())
            }
        }
        WallFluxKind::LaxFriedrichs => 1.0 + g * m * (m + m.abs() + 1.0),
        WallFluxKind::HLL | WallFluxKind::HLLC | WallFluxKind::ECRoe => 1.0 + g * m,
        WallFluxKind::Roe => 1.0 + g * m * (m + (1.0 + 0.5 * gas.gm1() * m * m).sqrt()),
        WallFluxKind::ECLF => 1.0 + g * m * (m.abs() + 1.0),
    };
    Ok(ratio)
}

/// Entropy contribution `(rho c) Ma_n (P*/P - 1)`.
#[inline]
pub fn delta_s(rho: f64, c: f64, ma_n: f64, ratio: f64) -> f64 {
    rho * c * ma_n * (ratio - 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WallPressureResult {
    pub kind: WallFluxKind,
    pub ma_n: f64,
    pub ratio: f64,
    pub pstar: f64,
    pub delta_s: f64,
    /// `delta_s >= -ENTROPY_TOL`.
    pub stable: bool,
    /// `P* < 0`. Possible for ECLF; `P*` is a flux coefficient, not a thermodynamic pressure.
    pub negative_pstar: bool,
    /// `Ma_n` at or below the vacuum limit (only reachable by the approximate kinds).
    pub below_vacuum_limit: bool,
}

/// Wall pressure and entropy contribution for an interior state.
pub fn wall_pressure(
    kind: WallFluxKind,
    u: &ConservativeState,
    n: &UnitNormal,
    gas: &GasModel,
) -> Result<WallPressureResult> {
    let q = primitive_from_conservative(u, gas)?;
    let c = q.sound_speed(gas);
    let ma_n = dot(&q.v, n.as_array()) / c;
    let ratio = pstar_ratio(kind, ma_n, gas)?;
    let ds = delta_s(q.rho, c, ma_n, ratio);
    let pstar = q.p * ratio;
    Ok(WallPressureResult {
        kind,
        ma_n,
        ratio,
        pstar,
        delta_s: ds,
        stable: ds >= -ENTROPY_TOL,
        negative_pstar: pstar < 0.0,
        below_vacuum_limit: ma_n <= vacuum_limit(gas),
    })
}

/// `[0, P* n, 0]` for the given wall procedure.
pub fn wall_flux(
    kind: WallFluxKind,
    u: &ConservativeState,
    n: &UnitNormal,
    gas: &GasModel,
) -> Result<NormalFlux> {
    let r = wall_pressure(kind, u, n, gas)?;
    Ok(pressure_flux(r.pstar, n))
}

#[inline]
pub(crate) fn pressure_flux(pstar: f64, n: &UnitNormal) -> NormalFlux {
    let n = n.as_array();
    NormalFlux([0.0, pstar * n[0], pstar * n[1], pstar * n[2], 0.0])
}

/// `B_NL = W^T (F* - F.n) + F_ent.n`, evaluated from the state and an arbitrary boundary flux.
pub fn entropy_boundary_term(
    u: &ConservativeState,
    f_star: &NormalFlux,
    n: &UnitNormal,
    gas: &GasModel,
) -> Result<f64> {
    let e = entropy_quantities(u, gas)?;
    let f = physical_normal_flux(u, n, gas);
    let fent = e.s * u.normal_velocity(n);
    Ok((*f_star - f).contract(&e.w) + fent)
}
