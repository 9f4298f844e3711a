//! Multizone airflow: a pressure network with one unknown reference
//! pressure per zone, power-law cracks, and bidirectional large openings
//! after Walton (1984). Wind and stack effects enter through the
//! boundary pressures; the nonlinear mass balance is solved by damped
//! Newton-Raphson with an analytic Jacobian.

use thiserror::Error;

use crate::consts;
use crate::model::ComponentId;
use crate::scalar::Scalar;

/// Airflow model bound at building level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AirflowModel {
    /// Flows are taken as known: each link moves its prescribed flow.
    Prescribed,
    /// Zone reference pressures are solved each step.
    Pressure,
}

/// Pressure-side of a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkNode {
    /// Index into the zone list of the network.
    Zone(usize),
    Outside,
}

/// Wind exposure of an outside-facing link. The pressure is
/// 0.5·Cp·rho_out·V²; the facade azimuth is carried for reporting.
#[derive(Debug, Clone, Copy)]
pub struct WindExposure<S = f64> {
    pub cp: S,
    pub facade_azimuth: S,
}

#[derive(Debug, Clone)]
pub enum LinkKind<S = f64> {
    /// Power-law crack: mass flow = C·|dP|^n, kg/s.
    Crack { coefficient: S, exponent: S },
    /// Large rectangular opening with possible counterflow.
    LargeOpening {
        width: S,
        height: S,
        discharge_coefficient: S,
    },
}

#[derive(Debug, Clone)]
pub struct Link<S = f64> {
    pub component: ComponentId,
    pub node_a: LinkNode,
    pub node_b: LinkNode,
    pub kind: LinkKind<S>,
    /// Elevation of the link above the common pressure datum, m; the
    /// bottom of the opening for large openings.
    pub elevation: S,
    pub wind: Option<WindExposure<S>>,
    /// Flow used by the prescribed model, kg/s, positive from a to b.
    pub prescribed_flow: S,
}

/// Zone pressure nodes plus links. Zones are indexed 0..n_zones.
#[derive(Debug, Clone)]
pub struct AirflowNetwork<S = f64> {
    pub n_zones: usize,
    pub links: Vec<Link<S>>,
}

/// Boundary state for one airflow solve.
#[derive(Debug, Clone)]
pub struct AirflowBoundary<S = f64> {
    /// Zone air temperatures, Kelvin, indexed like the network zones.
    pub zone_temperatures: Vec<S>,
    /// Outdoor air temperature, Kelvin.
    pub outside_temperature: S,
    /// Meteorological wind speed, m/s.
    pub wind_speed: S,
    /// Direction the wind blows from, degrees from north.
    pub wind_direction: S,
}

/// Flows through one link. Both directions are ≥ 0; cracks use a single
/// direction at a time, large openings may use both.
#[derive(Debug, Clone, Copy)]
pub struct LinkFlow<S = f64> {
    pub component: ComponentId,
    pub flow_a_to_b: S,
    pub flow_b_to_a: S,
    /// Height of the neutral plane above the opening bottom, when a
    /// large opening carries counterflow.
    pub neutral_height: Option<S>,
}

impl<S: Scalar> LinkFlow<S> {
    pub fn net_a_to_b(&self) -> S {
        self.flow_a_to_b - self.flow_b_to_a
    }
}

/// Result of one airflow solve.
#[derive(Debug, Clone)]
pub struct FlowSolution<S = f64> {
    /// Zone reference pressures at the datum, Pa.
    pub zone_pressures: Vec<S>,
    pub link_flows: Vec<LinkFlow<S>>,
    /// Net mass imbalance per zone, kg/s.
    pub residuals: Vec<S>,
    pub iterations: usize,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AirflowError {
    #[error("pressure solve did not converge in {iterations} iterations (worst residual {worst_residual} kg/s in zone {zone})")]
    NonConvergence {
        iterations: usize,
        worst_residual: f64,
        zone: usize,
    },
    #[error("singular Jacobian while solving zone pressures")]
    SingularJacobian,
    #[error("zone {zone} has no airflow path to the outside")]
    NotConnected { zone: usize },
    #[error("boundary supplies {got} zone temperatures, network has {expected} zones")]
    BoundaryMismatch { got: usize, expected: usize },
}

/// Newton solver tuning. The defaults match the documented behaviour:
/// relaxation 0.75, convergence below 1e-6 kg/s, at most 100 iterations.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions<S = f64> {
    pub relaxation: S,
    pub tolerance: S,
    pub max_iterations: usize,
}

impl<S: Scalar> Default for SolverOptions<S> {
    fn default() -> Self {
        Self {
            relaxation: S::lit(0.75),
            tolerance: S::lit(1e-6),
            max_iterations: 100,
        }
    }
}

/// Pressure gap below which link laws are linearized so the Jacobian
/// stays finite through zero.
const DP_LINEAR: f64 = 1e-4;

/// Dry-air density at standard pressure, kg/m³, from the temperature in
/// Kelvin.
pub fn air_density<S: Scalar>(temperature: S) -> S {
    S::lit(consts::AIR_DENSITY_NUMERATOR) / temperature
}

/// Wind stagnation pressure on a facade, Pa.
pub fn wind_pressure<S: Scalar>(cp: S, outside_density: S, wind_speed: S) -> S {
    S::lit(0.5) * cp * outside_density * wind_speed * wind_speed
}

/// Signed crack mass flow, kg/s, positive with positive `dp`.
pub fn crack_flow<S: Scalar>(coefficient: S, exponent: S, dp: S) -> S {
    crack_flow_derivative(coefficient, exponent, dp).0
}

/// Crack flow and its derivative with respect to `dp`.
pub fn crack_flow_derivative<S: Scalar>(coefficient: S, exponent: S, dp: S) -> (S, S) {
    let dp_lin = S::lit(DP_LINEAR);
    let magnitude = dp.abs();
    if magnitude < dp_lin {
        let slope = coefficient * dp_lin.powf(exponent - S::one());
        (slope * dp, slope)
    } else {
        let flow = coefficient * magnitude.powf(exponent);
        let slope = coefficient * exponent * magnitude.powf(exponent - S::one());
        (flow * dp.signum(), slope)
    }
}

/// Flows through a large opening, with derivatives for the Newton solve.
#[derive(Debug, Clone, Copy)]
pub struct OpeningFlow<S = f64> {
    /// kg/s ≥ 0 in each direction.
    pub a_to_b: S,
    pub b_to_a: S,
    /// d(a_to_b)/d(dp_bottom) and d(b_to_a)/d(dp_bottom).
    pub d_a_to_b: S,
    pub d_b_to_a: S,
    pub neutral_height: Option<S>,
}

/// Bidirectional flow through a rectangular opening.
///
/// The pressure difference varies linearly over the height,
/// `dP(z) = dp_bottom − g·(rho_a − rho_b)·z`; where it changes sign the
/// opening carries counterflow split at the neutral plane, and each side
/// integrates `Cd·W·rho_up·sqrt(2|dP(z)|/rho_up)` in closed form. Nearly
/// uniform pressure profiles collapse to the orifice equation at the
/// mid-height pressure difference.
pub fn large_opening_flow<S: Scalar>(
    width: S,
    height: S,
    discharge_coefficient: S,
    rho_a: S,
    rho_b: S,
    dp_bottom: S,
) -> OpeningFlow<S> {
    let g = S::lit(consts::GRAVITY);
    let slope = -g * (rho_a - rho_b); // d(dP)/dz
    let dp_mid = dp_bottom + slope * height.half();
    let dp_lin = S::lit(DP_LINEAR);

    // Uniform-profile limit: stratification negligible against the
    // driving pressure. The midpoint orifice value is second-order
    // accurate in (slope·height / dp).
    if (slope * height).abs() <= S::lit(1e-4) * dp_mid.abs().max(dp_lin) {
        let area = width * height;
        let (rho_up, forward) = if dp_mid >= S::zero() {
            (rho_a, true)
        } else {
            (rho_b, false)
        };
        let k = discharge_coefficient * area * (S::lit(2.0) * rho_up).sqrt();
        let magnitude = dp_mid.abs();
        let (flow, dflow) = if magnitude < dp_lin {
            // Secant slope through (dp_lin, k·sqrt(dp_lin)).
            let slope_lin = k / dp_lin.sqrt();
            (k * dp_lin.sqrt() * (dp_mid / dp_lin), slope_lin)
        } else {
            (k * magnitude.sqrt(), k / (S::lit(2.0) * magnitude.sqrt()))
        };
        return if forward {
            OpeningFlow {
                a_to_b: flow.abs(),
                b_to_a: S::zero(),
                d_a_to_b: dflow,
                d_b_to_a: S::zero(),
                neutral_height: None,
            }
        } else {
            OpeningFlow {
                a_to_b: S::zero(),
                b_to_a: flow.abs(),
                d_a_to_b: S::zero(),
                d_b_to_a: -dflow,
                neutral_height: None,
            }
        };
    }

    // Signed primitive of sqrt(|p|): F(p) = sign(p)·|p|^(3/2); the
    // integral of sqrt(|dP|) over [z1, z2] with uniform sign is
    // (2/(3·slope))·(F(p2) − F(p1)).
    let primitive = |p: S| p.signum() * p.abs().powf(S::lit(1.5));
    let seg = |p1: S, p2: S| (S::lit(2.0) / (S::lit(3.0) * slope)) * (primitive(p2) - primitive(p1));
    // d(seg)/d(dp_bottom): both p1 and p2 shift by the same amount.
    let dseg = |p1: S, p2: S| (p2.abs().sqrt() - p1.abs().sqrt()) / slope;

    let p_bottom = dp_bottom;
    let p_top = dp_bottom + slope * height;
    let neutral = -dp_bottom / slope;
    let k_a = discharge_coefficient * width * (S::lit(2.0) * rho_a).sqrt();
    let k_b = discharge_coefficient * width * (S::lit(2.0) * rho_b).sqrt();

    if neutral > S::zero() && neutral < height {
        // Counterflow: split at the neutral plane (dP = 0 there).
        // The segment integral is ≥ 0 on any uniform-sign interval; the
        // sign of dP there decides which direction it feeds.
        let zero = S::zero();
        let (j_bottom, dj_bottom) = (seg(p_bottom, zero), dseg(p_bottom, zero));
        let (j_top, dj_top) = (seg(zero, p_top), dseg(zero, p_top));
        let (mut a_to_b, mut b_to_a) = (S::zero(), S::zero());
        let (mut d_a_to_b, mut d_b_to_a) = (S::zero(), S::zero());
        if p_bottom > S::zero() {
            a_to_b += k_a * j_bottom;
            d_a_to_b += k_a * dj_bottom;
        } else {
            b_to_a += k_b * j_bottom;
            d_b_to_a += k_b * dj_bottom;
        }
        if p_top > S::zero() {
            a_to_b += k_a * j_top;
            d_a_to_b += k_a * dj_top;
        } else {
            b_to_a += k_b * j_top;
            d_b_to_a += k_b * dj_top;
        }
        OpeningFlow {
            a_to_b,
            b_to_a,
            d_a_to_b,
            d_b_to_a,
            neutral_height: Some(neutral),
        }
    } else {
        // One-directional over the full height.
        let j = seg(p_bottom, p_top);
        let dj = dseg(p_bottom, p_top);
        if dp_mid >= S::zero() {
            OpeningFlow {
                a_to_b: k_a * j,
                b_to_a: S::zero(),
                d_a_to_b: k_a * dj,
                d_b_to_a: S::zero(),
                neutral_height: None,
            }
        } else {
            OpeningFlow {
                a_to_b: S::zero(),
                b_to_a: k_b * j,
                d_a_to_b: S::zero(),
                d_b_to_a: k_b * dj,
                neutral_height: None,
            }
        }
    }
}

struct LinkState<S> {
    flow: LinkFlow<S>,
    /// d(net a→b flow)/d(dp at the link reference).
    d_net: S,
}

impl<S: Scalar> AirflowNetwork<S> {
    /// Checks that every zone reaches the outside through the links.
    fn check_connectivity(&self) -> Result<(), AirflowError> {
        let mut reached = vec![false; self.n_zones];
        let mut queue: Vec<usize> = Vec::new();
        for link in &self.links {
            for (x, y) in [(link.node_a, link.node_b), (link.node_b, link.node_a)] {
                if let (LinkNode::Outside, LinkNode::Zone(z)) = (x, y) {
                    if !reached[z] {
                        reached[z] = true;
                        queue.push(z);
                    }
                }
            }
        }
        while let Some(z) = queue.pop() {
            for link in &self.links {
                if let (LinkNode::Zone(a), LinkNode::Zone(b)) = (link.node_a, link.node_b) {
                    let other = if a == z {
                        b
                    } else if b == z {
                        a
                    } else {
                        continue;
                    };
                    if !reached[other] {
                        reached[other] = true;
                        queue.push(other);
                    }
                }
            }
        }
        match reached.iter().position(|r| !r) {
            Some(zone) => Err(AirflowError::NotConnected { zone }),
            None => Ok(()),
        }
    }

    fn evaluate(
        &self,
        pressures: &[S],
        boundary: &AirflowBoundary<S>,
    ) -> (Vec<LinkState<S>>, Vec<S>) {
        let g = S::lit(consts::GRAVITY);
        let rho_out = air_density(boundary.outside_temperature);
        let mut states = Vec::with_capacity(self.links.len());
        let mut residuals = vec![S::zero(); self.n_zones];
        for link in &self.links {
            let side = |node: LinkNode| -> (S, S) {
                // (pressure at link elevation, density)
                match node {
                    LinkNode::Zone(z) => {
                        let rho = air_density(boundary.zone_temperatures[z]);
                        (pressures[z] - rho * g * link.elevation, rho)
                    }
                    LinkNode::Outside => {
                        let p_wind = link
                            .wind
                            .map(|w| wind_pressure(w.cp, rho_out, boundary.wind_speed))
                            .unwrap_or(S::zero());
                        (p_wind - rho_out * g * link.elevation, rho_out)
                    }
                }
            };
            let (p_a, rho_a) = side(link.node_a);
            let (p_b, rho_b) = side(link.node_b);
            let dp = p_a - p_b;
            let (flow, d_net) = match &link.kind {
                LinkKind::Crack {
                    coefficient,
                    exponent,
                } => {
                    let (m, d) = crack_flow_derivative(*coefficient, *exponent, dp);
                    (
                        LinkFlow {
                            component: link.component,
                            flow_a_to_b: m.max(S::zero()),
                            flow_b_to_a: (-m).max(S::zero()),
                            neutral_height: None,
                        },
                        d,
                    )
                }
                LinkKind::LargeOpening {
                    width,
                    height,
                    discharge_coefficient,
                } => {
                    let opening =
                        large_opening_flow(*width, *height, *discharge_coefficient, rho_a, rho_b, dp);
                    (
                        LinkFlow {
                            component: link.component,
                            flow_a_to_b: opening.a_to_b,
                            flow_b_to_a: opening.b_to_a,
                            neutral_height: opening.neutral_height,
                        },
                        opening.d_a_to_b - opening.d_b_to_a,
                    )
                }
            };
            let net = flow.net_a_to_b();
            if let LinkNode::Zone(z) = link.node_a {
                residuals[z] -= net;
            }
            if let LinkNode::Zone(z) = link.node_b {
                residuals[z] += net;
            }
            states.push(LinkState { flow, d_net });
        }
        (states, residuals)
    }

    fn jacobian(&self, states: &[LinkState<S>]) -> crate::linalg::DenseSystem<S> {
        let mut jac = crate::linalg::DenseSystem::zeros(self.n_zones);
        for (link, state) in self.links.iter().zip(states) {
            let d = state.d_net;
            if let LinkNode::Zone(a) = link.node_a {
                jac.add(a, a, -d);
                if let LinkNode::Zone(b) = link.node_b {
                    jac.add(a, b, d);
                    jac.add(b, a, d);
                }
            }
            if let LinkNode::Zone(b) = link.node_b {
                jac.add(b, b, -d);
            }
        }
        jac
    }

    /// Residual vector at the given pressures; exposed for Jacobian
    /// verification against finite differences.
    pub fn residuals_at(&self, pressures: &[S], boundary: &AirflowBoundary<S>) -> Vec<S> {
        self.evaluate(pressures, boundary).1
    }

    /// Analytic Jacobian d(residual_i)/d(pressure_j) at the given point.
    pub fn jacobian_at(&self, pressures: &[S], boundary: &AirflowBoundary<S>) -> Vec<Vec<S>> {
        let (states, _) = self.evaluate(pressures, boundary);
        let jac = self.jacobian(&states);
        (0..self.n_zones)
            .map(|i| (0..self.n_zones).map(|j| jac.get(i, j)).collect())
            .collect()
    }

    /// Builds the solution used by the prescribed airflow model: every
    /// link moves its fixed flow, pressures are all zero, and residuals
    /// report the (possibly non-zero) per-zone imbalance.
    pub fn prescribed_flows(&self) -> FlowSolution<S> {
        let mut residuals = vec![S::zero(); self.n_zones];
        let link_flows = self
            .links
            .iter()
            .map(|link| {
                let m = link.prescribed_flow;
                if let LinkNode::Zone(z) = link.node_a {
                    residuals[z] -= m;
                }
                if let LinkNode::Zone(z) = link.node_b {
                    residuals[z] += m;
                }
                LinkFlow {
                    component: link.component,
                    flow_a_to_b: m.max(S::zero()),
                    flow_b_to_a: (-m).max(S::zero()),
                    neutral_height: None,
                }
            })
            .collect();
        FlowSolution {
            zone_pressures: vec![S::zero(); self.n_zones],
            link_flows,
            residuals,
            iterations: 0,
        }
    }

    /// Solves the zone reference pressures by damped Newton-Raphson.
    ///
    /// Pressures start at 0 Pa; each step solves the analytic Jacobian,
    /// applies the relaxation factor and backtracks (halving the step up
    /// to five times) whenever the worst residual grows. Converged when
    /// every zone's net mass imbalance is below the tolerance.
    pub fn solve_pressures(
        &self,
        boundary: &AirflowBoundary<S>,
        options: &SolverOptions<S>,
    ) -> Result<FlowSolution<S>, AirflowError> {
        if boundary.zone_temperatures.len() != self.n_zones {
            return Err(AirflowError::BoundaryMismatch {
                got: boundary.zone_temperatures.len(),
                expected: self.n_zones,
            });
        }
        self.check_connectivity()?;
        let mut pressures = vec![S::zero(); self.n_zones];
        let mut iterations = 0;
        loop {
            let (states, residuals) = self.evaluate(&pressures, boundary);
            let worst = worst_abs(&residuals);
            if residuals[worst].abs() < options.tolerance {
                return Ok(FlowSolution {
                    zone_pressures: pressures,
                    link_flows: states.into_iter().map(|s| s.flow).collect(),
                    residuals,
                    iterations,
                });
            }
            if iterations >= options.max_iterations {
                return Err(AirflowError::NonConvergence {
                    iterations,
                    worst_residual: residuals[worst].abs().as_f64(),
                    zone: worst,
                });
            }
            iterations += 1;
            let mut jac = self.jacobian(&states);
            for (i, r) in residuals.iter().enumerate() {
                jac.add_rhs(i, *r);
            }
            let delta = jac.solve().map_err(|_| AirflowError::SingularJacobian)?;
            // Damped update with backtracking on the residual norm.
            let base_norm = residuals[worst].abs();
            let mut step = options.relaxation;
            for attempt in 0..6 {
                let trial: Vec<S> = pressures
                    .iter()
                    .zip(&delta)
                    .map(|(p, d)| *p - step * *d)
                    .collect();
                let trial_residuals = self.residuals_at(&trial, boundary);
                let trial_norm = trial_residuals[worst_abs(&trial_residuals)].abs();
                if trial_norm < base_norm || attempt == 5 {
                    pressures = trial;
                    break;
                }
                step = step.half();
            }
        }
    }
}

fn worst_abs<S: Scalar>(values: &[S]) -> usize {
    let mut idx = 0;
    let mut best = S::zero();
    for (i, v) in values.iter().enumerate() {
        if v.abs() >= best {
            best = v.abs();
            idx = i;
        }
    }
    idx
}
