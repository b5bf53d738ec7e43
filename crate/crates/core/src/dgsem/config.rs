//! Solver configuration and its plain-text `key = value` format.
//!
//! ```text
//! # impulsive start against the right wall
//! num_elements = 8
//! poly_degree = 3
//! wall_left = LaxFriedrichs
//! wall_right = LaxFriedrichs
//! initial_condition = uniform_flow
//! mach = 0.1
//! transit_times = 2
//! ```
//!
//! Blank lines and everything after `#` are ignored. Unknown keys are errors.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::euler::GasModel;
use crate::wall::WallFluxKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterfaceFlux {
    /// Entropy conservative.
    EC,
    /// Entropy conservative plus scalar Lax-Friedrichs dissipation.
    ECPlusLF,
}

impl FromStr for InterfaceFlux {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "ec" => Ok(InterfaceFlux::EC),
            "ec_lf" | "ecpluslf" | "ec_plus_lf" => Ok(InterfaceFlux::ECPlusLF),
            _ => Err(format!(
                "unknown interface flux '{s}' (expected ec or ec_lf)"
            )),
        }
    }
}

impl fmt::Display for InterfaceFlux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InterfaceFlux::EC => "ec",
            InterfaceFlux::ECPlusLF => "ec_lf",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Walls {
        left: WallFluxKind,
        right: WallFluxKind,
    },
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitialCondition {
    /// Uniform state moving along x at `mach` times the sound speed, plus a tangential (y) velocity.
    UniformFlow {
        rho: f64,
        pressure: f64,
        mach: f64,
        tangential_velocity: f64,
    },
    /// `rho = rho0 + amplitude sin(2 pi k x / L)` advected at constant velocity and pressure.
    DensityWave {
        rho0: f64,
        amplitude: f64,
        velocity: f64,
        pressure: f64,
        wavenumber: f64,
    },
}

impl InitialCondition {
    /// Reference density and pressure (for the sound speed used by `transit_times`).
    pub fn reference(&self) -> (f64, f64) {
        match *self {
            InitialCondition::UniformFlow { rho, pressure, .. } => (rho, pressure),
            InitialCondition::DensityWave { rho0, pressure, .. } => (rho0, pressure),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub num_elements: usize,
    pub poly_degree: usize,
    pub gas: GasModel,
    pub cfl: f64,
    pub end_time: f64,
    /// Domain `[0, length]`.
    pub length: f64,
    pub boundary: Boundary,
    pub interface_flux: InterfaceFlux,
    pub initial_condition: InitialCondition,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            num_elements: 8,
            poly_degree: 3,
            gas: GasModel::AIR,
            cfl: 0.5,
            end_time: 1.0,
            length: 1.0,
            boundary: Boundary::Walls {
                left: WallFluxKind::InternalPressure,
                right: WallFluxKind::InternalPressure,
            },
            interface_flux: InterfaceFlux::EC,
            initial_condition: InitialCondition::UniformFlow {
                rho: 1.0,
                pressure: 1.0,
                mach: 0.0,
                tangential_velocity: 0.0,
            },
        }
    }
}

impl SolverConfig {
    /// Impulsive start: uniform flow at `mach` into the right wall, same wall kind at both ends.
    pub fn impulsive_start(wall: WallFluxKind, mach: f64, interface_flux: InterfaceFlux) -> Self {
        let mut cfg = Self {
            boundary: Boundary::Walls {
                left: wall,
                right: wall,
            },
            interface_flux,
            initial_condition: InitialCondition::UniformFlow {
                rho: 1.0,
                pressure: 1.0,
                mach,
                tangential_velocity: 0.0,
            },
            ..Self::default()
        };
        cfg.end_time = 2.0 * cfg.transit_time();
        cfg
    }

    /// `length / c` for the reference state of the initial condition.
    pub fn transit_time(&self) -> f64 {
        let (rho, p) = self.initial_condition.reference();
        self.length / (self.gas.gamma() * p / rho).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| {
            Err(Error::ConfigParse {
                path: "<config>".into(),
                message: m,
            })
        };
        if self.num_elements < 1 {
            return bad("num_elements must be >= 1".into());
        }
        if self.poly_degree < 1 {
            return bad("poly_degree must be >= 1".into());
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return bad(format!("cfl {} outside (0, 1]", self.cfl));
        }
        if !(self.end_time > 0.0 && self.end_time.is_finite()) {
            return bad(format!("end_time {} must be positive", self.end_time));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return bad(format!("length {} must be positive", self.length));
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigParse {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text).map_err(|e| match e {
            Error::ConfigParse { message, .. } => Error::ConfigParse {
                path: path.display().to_string(),
                message,
            },
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, m: String| Error::ConfigParse {
            path: "<config>".into(),
            message: format!("line {line}: {m}"),
        };
        let mut cfg = SolverConfig::default();
        let mut wall_left = WallFluxKind::InternalPressure;
        let mut wall_right = WallFluxKind::InternalPressure;
        let mut periodic = false;
        let mut ic_name = "uniform_flow".to_string();
        let (mut rho, mut pressure, mut mach, mut vt) = (1.0, 1.0, 0.0, 0.0);
        let (mut amplitude, mut velocity, mut wavenumber) = (0.2, 1.0, 1.0);
        let mut end_time = None;
        let mut transit_times = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(line_no, format!("expected key = value, got '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let num = || -> Result<f64> {
                value
                    .parse::<f64>()
                    .map_err(|_| err(line_no, format!("{key}: '{value}' is not a number")))
            };
            let count = || -> Result<usize> {
                value.parse::<usize>().map_err(|_| {
                    err(
                        line_no,
                        format!("{key}: '{value}' is not a non-negative integer"),
                    )
                })
            };
            let kind =
                || -> Result<WallFluxKind> { value.parse().map_err(|m: String| err(line_no, m)) };
            match key {
                "num_elements" => cfg.num_elements = count()?,
                "poly_degree" => cfg.poly_degree = count()?,
                "gamma" => {
                    cfg.gas = GasModel::new(num()?).map_err(|e| err(line_no, e.to_string()))?
                }
                "cfl" => cfg.cfl = num()?,
                "end_time" => end_time = Some(num()?),
                "transit_times" => transit_times = Some(num()?),
                "length" => cfg.length = num()?,
                "boundary" => {
                    periodic = match value.to_ascii_lowercase().as_str() {
                        "walls" | "wall" => false,
                        "periodic" => true,
                        _ => return Err(err(line_no, format!("unknown boundary '{value}'"))),
                    }
                }
                "wall" => {
                    wall_left = kind()?;
                    wall_right = wall_left;
                }
                "wall_left" => wall_left = kind()?,
                "wall_right" => wall_right = kind()?,
                "interface_flux" => {
                    cfg.interface_flux = value.parse().map_err(|m: String| err(line_no, m))?
                }
                "initial_condition" => ic_name = value.to_ascii_lowercase(),
                "rho" => rho = num()?,
                "pressure" => pressure = num()?,
                "mach" => mach = num()?,
                "tangential_velocity" => vt = num()?,
                "amplitude" => amplitude = num()?,
                "velocity" => velocity = num()?,
                "wavenumber" => wavenumber = num()?,
                _ => return Err(err(line_no, format!("unknown key '{key}'"))),
            }
        }

        cfg.boundary = if periodic {
            Boundary::Periodic
        } else {
            Boundary::Walls {
                left: wall_left,
                right: wall_right,
            }
        };
        cfg.initial_condition = match ic_name.as_str() {
            "uniform_flow" => InitialCondition::UniformFlow {
                rho,
                pressure,
                mach,
                tangential_velocity: vt,
            },
            "density_wave" => InitialCondition::DensityWave {
                rho0: rho,
                amplitude,
                velocity,
                pressure,
                wavenumber,
            },
            other => return Err(err(0, format!("unknown initial_condition '{other}'"))),
        };
        cfg.end_time = match (end_time, transit_times) {
            (Some(_), Some(_)) => {
                return Err(err(0, "give end_time or transit_times, not both".into()))
            }
            (Some(t), None) => t,
            (None, Some(k)) => k * cfg.transit_time(),
            (None, None) => 2.0 * cfg.transit_time(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
