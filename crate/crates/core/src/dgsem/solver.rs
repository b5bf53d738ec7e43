//! Flux-differencing DGSEM on a uniform 1D mesh with SSP-RK3 time stepping.
//!
//! On element `k` with Jacobian `J = dx/2` the semi-discrete scheme at node `i` is
//!
//! ```text
//! du_i/dt = -(1/J) [ sum_j 2 D_ij F_ec(u_i, u_j)
//!                    + delta_iN (F*_R - f_N) / w_N
//!                    - delta_i0 (F*_L - f_0) / w_0 ]
//! ```
//!
//! where `F*` is the interface flux (EC, optionally with scalar LF dissipation)
//! or the wall flux. The left wall has outward normal `-x`, so its x-flux is
//! `-F*(u_0, -x)`.
//!
//! # Entropy accounting
//!
//! Contracting the scheme with the entropy variables and the quadrature weights
//! gives `dS/dt = -(B_left + B_right) + (interface dissipation <= 0)`, where
//! `B = W^T (F* - F.n) + s v_n` is the entropy boundary term evaluated at the
//! wall node with the outward normal. In 1D the quadrature weight and the
//! surface Jacobian cancel exactly, so `B` is reported without any extra
//! factor and equals `rho c Ma_n (P*/P - 1)`. A non-negative `B` is entropy
//! stable. The budget defect `dS/dt + B_left + B_right` is zero (to round-off)
//! for EC interfaces and non-positive with LF dissipation.

use std::io::Write;

use crate::dgsem::config::{Boundary, InitialCondition, InterfaceFlux, SolverConfig};
use crate::dgsem::ec_flux::ec_volume_flux;
use crate::dgsem::lgl::LglBasis;
use crate::error::{Error, Result};
use crate::euler::{
    conservative_from_primitive, entropy_quantities, physical_normal_flux, ConservativeState,
    NormalFlux, PrimitiveState, UnitNormal,
};
use crate::wall::{entropy_boundary_term, wall_flux};

/// Nodal solution: `num_elements * (N + 1)` conservative states, element-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionField {
    pub num_elements: usize,
    pub nodes_per_element: usize,
    pub dx: f64,
    pub time: f64,
    pub data: Vec<[f64; 5]>,
}

impl SolutionField {
    #[inline]
    pub fn state(&self, element: usize, node: usize) -> ConservativeState {
        ConservativeState::from_array(self.data[element * self.nodes_per_element + node])
    }
}

/// Time derivative together with the wall entropy terms evaluated on the same state.
#[derive(Clone, Debug)]
pub struct RhsEvaluation {
    pub du: Vec<[f64; 5]>,
    /// Entropy boundary term at the left wall (0 for periodic).
    pub boundary_left: f64,
    pub boundary_right: f64,
}

#[derive(Clone, Debug)]
pub struct Discretization {
    pub config: SolverConfig,
    pub basis: LglBasis,
    pub dx: f64,
}

impl Discretization {
    pub fn new(config: SolverConfig) -> Result<Self> {
        config.validate()?;
        let basis = LglBasis::new(config.poly_degree);
        let dx = config.length / config.num_elements as f64;
        Ok(Self { config, basis, dx })
    }

    #[inline]
    fn jac(&self) -> f64 {
        0.5 * self.dx
    }

    #[inline]
    fn np(&self) -> usize {
        self.basis.len()
    }

    /// Physical coordinates of all nodes, element-major.
    pub fn node_positions(&self) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.config.num_elements * self.np());
        for k in 0..self.config.num_elements {
            let left = k as f64 * self.dx;
            x.extend(
                self.basis
                    .nodes
                    .iter()
                    .map(|xi| left + self.jac() * (xi + 1.0)),
            );
        }
        x
    }

    pub fn empty_field(&self) -> SolutionField {
        SolutionField {
            num_elements: self.config.num_elements,
            nodes_per_element: self.np(),
            dx: self.dx,
            time: 0.0,
            data: vec![[0.0; 5]; self.config.num_elements * self.np()],
        }
    }

    /// Field from a pointwise primitive-state function of x.
    pub fn project(&self, f: impl Fn(f64) -> PrimitiveState) -> Result<SolutionField> {
        let mut field = self.empty_field();
        for (slot, x) in field.data.iter_mut().zip(self.node_positions()) {
            *slot = conservative_from_primitive(&f(x), &self.config.gas)?.to_array();
        }
        Ok(field)
    }

    pub fn initial_field(&self) -> Result<SolutionField> {
        let gas = self.config.gas;
        let length = self.config.length;
        match self.config.initial_condition {
            InitialCondition::UniformFlow {
                rho,
                pressure,
                mach,
                tangential_velocity,
            } => {
                let c = (gas.gamma() * pressure / rho).sqrt();
                self.project(|_| {
                    PrimitiveState::new(rho, [mach * c, tangential_velocity, 0.0], pressure)
                })
            }
            InitialCondition::DensityWave {
                rho0,
                amplitude,
                velocity,
                pressure,
                wavenumber,
            } => self.project(|x| {
                let phase = 2.0 * std::f64::consts::PI * wavenumber * x / length;
                PrimitiveState::new(
                    rho0 + amplitude * phase.sin(),
                    [velocity, 0.0, 0.0],
                    pressure,
                )
            }),
        }
    }

    fn check(&self, data: &[[f64; 5]]) -> Result<()> {
        let gas = &self.config.gas;
        for (idx, u) in data.iter().enumerate() {
            let invalid = |reason: String| Error::InvalidState {
                element: idx / self.np(),
                node: idx % self.np(),
                reason,
            };
            if u.iter().any(|v| !v.is_finite()) {
                return Err(invalid(format!("non-finite state {u:?}")));
            }
            ConservativeState::from_array(*u)
                .validate(gas)
                .map_err(|e| invalid(e.to_string()))?;
        }
        Ok(())
    }

    fn interface_flux(&self, l: &ConservativeState, r: &ConservativeState) -> NormalFlux {
        let gas = &self.config.gas;
        let f = ec_volume_flux(l, r, gas);
        match self.config.interface_flux {
            InterfaceFlux::EC => f,
            InterfaceFlux::ECPlusLF => {
                let lambda = (l.velocity()[0].abs() + l.sound_speed_unchecked(gas))
                    .max(r.velocity()[0].abs() + r.sound_speed_unchecked(gas));
                let (ul, ur) = (l.to_array(), r.to_array());
                f - (0.5 * lambda) * NormalFlux(std::array::from_fn(|k| ur[k] - ul[k]))
            }
        }
    }

    /// Semi-discrete right-hand side; fails with `InvalidState` on any inadmissible node.
    pub fn rhs(&self, data: &[[f64; 5]]) -> Result<RhsEvaluation> {
        self.check(data)?;
        let gas = &self.config.gas;
        let np = self.np();
        let ne = self.config.num_elements;
        let d = &self.basis.diff;
        let w = &self.basis.weights;
        let inv_j = 1.0 / self.jac();
        let states: Vec<ConservativeState> = data
            .iter()
            .map(|u| ConservativeState::from_array(*u))
            .collect();

        // x-flux at every element interface, index k = left edge of element k (k = 0..=ne)
        let mut face = vec![NormalFlux::ZERO; ne + 1];
        let (mut b_left, mut b_right) = (0.0, 0.0);
        for k in 1..ne {
            face[k] = self.interface_flux(&states[k * np - 1], &states[k * np]);
        }
        match self.config.boundary {
            Boundary::Periodic => {
                let f = self.interface_flux(&states[ne * np - 1], &states[0]);
                face[0] = f;
                face[ne] = f;
            }
            Boundary::Walls { left, right } => {
                let at = |node: usize, element: usize| {
                    move |e: Error| Error::InvalidState {
                        element,
                        node,
                        reason: e.to_string(),
                    }
                };
                let u0 = &states[0];
                let fl = wall_flux(left, u0, &UnitNormal::NEG_X, gas).map_err(at(0, 0))?;
                b_left =
                    entropy_boundary_term(u0, &fl, &UnitNormal::NEG_X, gas).map_err(at(0, 0))?;
                face[0] = -fl;
                let un = &states[ne * np - 1];
                let fr = wall_flux(right, un, &UnitNormal::X, gas).map_err(at(np - 1, ne - 1))?;
                b_right = entropy_boundary_term(un, &fr, &UnitNormal::X, gas)
                    .map_err(at(np - 1, ne - 1))?;
                face[ne] = fr;
            }
        }

        let mut du = vec![[0.0; 5]; data.len()];
        let mut acc = vec![NormalFlux::ZERO; np];
        for k in 0..ne {
            let u = &states[k * np..(k + 1) * np];
            acc.iter_mut().for_each(|a| *a = NormalFlux::ZERO);
            for i in 0..np {
                acc[i] =
                    acc[i] + (2.0 * d[(i, i)]) * physical_normal_flux(&u[i], &UnitNormal::X, gas);
                for j in (i + 1)..np {
                    let f = ec_volume_flux(&u[i], &u[j], gas);
                    acc[i] = acc[i] + (2.0 * d[(i, j)]) * f;
                    acc[j] = acc[j] + (2.0 * d[(j, i)]) * f;
                }
            }
            let f0 = physical_normal_flux(&u[0], &UnitNormal::X, gas);
            let f_n = physical_normal_flux(&u[np - 1], &UnitNormal::X, gas);
            acc[np - 1] = acc[np - 1] + (1.0 / w[np - 1]) * (face[k + 1] - f_n);
            acc[0] = acc[0] - (1.0 / w[0]) * (face[k] - f0);
            for i in 0..np {
                du[k * np + i] = std::array::from_fn(|c| -inv_j * acc[i][c]);
            }
        }
        Ok(RhsEvaluation {
            du,
            boundary_left: b_left,
            boundary_right: b_right,
        })
    }

    /// `S = sum_k sum_j w_j J s(u_j)`.
    pub fn total_entropy(&self, data: &[[f64; 5]]) -> Result<f64> {
        let mut total = 0.0;
        for (idx, u) in data.iter().enumerate() {
            let e = entropy_quantities(&ConservativeState::from_array(*u), &self.config.gas)?;
            total += self.basis.weights[idx % self.np()] * e.s;
        }
        Ok(self.jac() * total)
    }

    /// Discrete entropy rate `sum w_j J W(u_j)^T du_j`.
    pub fn entropy_rate(&self, data: &[[f64; 5]], du: &[[f64; 5]]) -> Result<f64> {
        let mut total = 0.0;
        for (idx, (u, r)) in data.iter().zip(du).enumerate() {
            let e = entropy_quantities(&ConservativeState::from_array(*u), &self.config.gas)?;
            total +=
                self.basis.weights[idx % self.np()] * (0..5).map(|c| e.w[c] * r[c]).sum::<f64>();
        }
        Ok(self.jac() * total)
    }

    /// Quadrature integrals of the five conserved variables.
    pub fn conserved_totals(&self, data: &[[f64; 5]]) -> [f64; 5] {
        let mut t = [0.0; 5];
        for (idx, u) in data.iter().enumerate() {
            let wj = self.basis.weights[idx % self.np()] * self.jac();
            for c in 0..5 {
                t[c] += wj * u[c];
            }
        }
        t
    }

    /// `max(|v_x| + c)` over all nodes.
    pub fn max_wave_speed(&self, data: &[[f64; 5]]) -> f64 {
        data.iter()
            .map(|u| {
                let s = ConservativeState::from_array(*u);
                s.velocity()[0].abs() + s.sound_speed_unchecked(&self.config.gas)
            })
            .fold(0.0, f64::max)
    }

    /// `cfl * dx / ((N + 1) * max(|v| + c))`.
    pub fn stable_dt(&self, data: &[[f64; 5]]) -> f64 {
        self.config.cfl * self.dx / (self.np() as f64 * self.max_wave_speed(data))
    }
}

/// Semi-discrete time derivative of `field`.
pub fn dg_rhs(field: &SolutionField, config: &SolverConfig) -> Result<SolutionField> {
    let disc = Discretization::new(*config)?;
    let r = disc.rhs(&field.data)?;
    Ok(SolutionField {
        data: r.du,
        ..field.clone()
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BudgetRow {
    pub t: f64,
    pub s_total: f64,
    pub dsdt: f64,
    pub boundary_left: f64,
    pub boundary_right: f64,
    /// `dsdt + boundary_left + boundary_right`.
    pub defect: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EntropyBudget {
    pub rows: Vec<BudgetRow>,
}

impl EntropyBudget {
    pub const CSV_HEADER: &'static str =
        "t,S_total,dSdt_discrete,boundary_left,boundary_right,defect";

    pub fn min_boundary_contribution(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.boundary_left.min(r.boundary_right))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_defect(&self) -> f64 {
        self.rows.iter().map(|r| r.defect.abs()).fold(0.0, f64::max)
    }

    /// Rows whose wall contribution is below `-tol` on either side.
    pub fn negative_boundary_events(&self, tol: f64) -> usize {
        self.rows
            .iter()
            .filter(|r| r.boundary_left < -tol || r.boundary_right < -tol)
            .count()
    }

    pub fn entropy_drift(&self) -> f64 {
        match (self.rows.first(), self.rows.last()) {
            (Some(a), Some(b)) => b.s_total - a.s_total,
            _ => 0.0,
        }
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for r in &self.rows {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r.t, r.s_total, r.dsdt, r.boundary_left, r.boundary_right, r.defect
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SimulationOutput {
    pub budget: EntropyBudget,
    pub field: SolutionField,
    pub steps: usize,
    pub dt: f64,
}

/// Outcome of a run that may have stopped early. On blow-up, `budget` holds every
/// row recorded before the failure and `field` the last admissible state.
#[derive(Debug)]
pub struct SimulationRun {
    pub budget: EntropyBudget,
    pub field: SolutionField,
    pub steps_planned: usize,
    pub steps_completed: usize,
    pub dt: f64,
    pub blow_up: Option<Error>,
}

impl SimulationRun {
    pub fn into_output(self) -> Result<SimulationOutput> {
        match self.blow_up {
            Some(e) => Err(e),
            None => Ok(SimulationOutput {
                budget: self.budget,
                field: self.field,
                steps: self.steps_completed,
                dt: self.dt,
            }),
        }
    }
}

/// Number of equal steps that keeps every step at or below the CFL limit of the initial field.
pub fn cfl_steps(config: &SolverConfig) -> Result<usize> {
    let disc = Discretization::new(*config)?;
    let u0 = disc.initial_field()?;
    Ok((config.end_time / disc.stable_dt(&u0.data)).ceil().max(1.0) as usize)
}

/// Run to `end_time`, recording the budget even if the run blows up.
///
/// `steps = None` uses [`cfl_steps`]. Only configuration and initial-condition
/// errors are returned as `Err`; a blow-up is reported in [`SimulationRun::blow_up`].
pub fn simulate(config: &SolverConfig, steps: Option<usize>) -> Result<SimulationRun> {
    let disc = Discretization::new(*config)?;
    let u0 = disc.initial_field()?;
    let steps = match steps {
        Some(0) => {
            return Err(Error::InvalidRange(
                "number of time steps must be >= 1".into(),
            ))
        }
        Some(n) => n,
        None => (config.end_time / disc.stable_dt(&u0.data)).ceil().max(1.0) as usize,
    };
    integrate(&disc, u0, steps)
}

/// Run to `end_time` with the CFL-limited step from the initial field, rounded so that
/// an integer number of equal steps lands exactly on `end_time`.
pub fn run_simulation(config: &SolverConfig) -> Result<SimulationOutput> {
    simulate(config, None)?.into_output()
}

/// Run to `end_time` with exactly `steps` equal steps.
pub fn run_simulation_steps(config: &SolverConfig, steps: usize) -> Result<SimulationOutput> {
    simulate(config, Some(steps))?.into_output()
}

fn blow_up(time: f64, e: Error) -> Error {
    match e {
        Error::InvalidState {
            element,
            node,
            reason,
        } => Error::BlowUp {
            time,
            element,
            node,
            reason,
        },
        other => other,
    }
}

fn budget_row(
    disc: &Discretization,
    t: f64,
    data: &[[f64; 5]],
    r: &RhsEvaluation,
) -> Result<BudgetRow> {
    let dsdt = disc.entropy_rate(data, &r.du)?;
    Ok(BudgetRow {
        t,
        s_total: disc.total_entropy(data)?,
        dsdt,
        boundary_left: r.boundary_left,
        boundary_right: r.boundary_right,
        defect: dsdt + r.boundary_left + r.boundary_right,
    })
}

/// Shu-Osher SSP-RK3 with a budget row at the start of every step and at the final time.
fn integrate(
    disc: &Discretization,
    mut field: SolutionField,
    steps: usize,
) -> Result<SimulationRun> {
    let dt = disc.config.end_time / steps as f64;
    let mut budget = EntropyBudget::default();
    let combine =
        |a: f64, x: &[[f64; 5]], b: f64, y: &[[f64; 5]], du: &[[f64; 5]]| -> Vec<[f64; 5]> {
            x.iter()
                .zip(y)
                .zip(du)
                .map(|((xi, yi), di)| std::array::from_fn(|c| a * xi[c] + b * (yi[c] + dt * di[c])))
                .collect()
        };
    let step_once =
        |field: &mut SolutionField, budget: &mut EntropyBudget, step: usize| -> Result<()> {
            let t = step as f64 * dt;
            let u = &field.data;
            let r1 = disc.rhs(u).map_err(|e| blow_up(t, e))?;
            budget.rows.push(budget_row(disc, t, u, &r1)?);
            let u1 = combine(0.0, u, 1.0, u, &r1.du);
            let r2 = disc.rhs(&u1).map_err(|e| blow_up(t + dt, e))?;
            let u2 = combine(0.75, u, 0.25, &u1, &r2.du);
            let r3 = disc.rhs(&u2).map_err(|e| blow_up(t + 0.5 * dt, e))?;
            let next = combine(1.0 / 3.0, u, 2.0 / 3.0, &u2, &r3.du);
            disc.check(&next).map_err(|e| blow_up(t + dt, e))?;
            field.data = next;
            field.time = if step + 1 == steps {
                disc.config.end_time
            } else {
                t + dt
            };
            Ok(())
        };

    let mut completed = steps;
    let mut err = None;
    for step in 0..steps {
        if let Err(e) = step_once(&mut field, &mut budget, step) {
            completed = step;
            err = Some(e);
            break;
        }
    }
    if err.is_none() {
        match disc
            .rhs(&field.data)
            .map_err(|e| blow_up(field.time, e))
            .and_then(|r| budget_row(disc, field.time, &field.data, &r))
        {
            Ok(row) => budget.rows.push(row),
            Err(e) => err = Some(e),
        }
    }
    Ok(SimulationRun {
        budget,
        field,
        steps_planned: steps,
        steps_completed: completed,
        dt,
        blow_up: err,
    })
}
