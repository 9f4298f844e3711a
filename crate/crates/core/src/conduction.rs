//! Wall conduction by the electrical analogy: layer descriptions become
//! RC networks at a selectable fidelity, from a two-node lumped model to
//! a per-layer discretization.
//!
//! The module also carries the analytic multilayer quadrupole (transfer
//! matrix) response used to quantify each scheme's dynamic fidelity.

use num_complex::Complex;

use crate::linalg::DenseSystem;
use crate::model::WallLayer;
use crate::scalar::Scalar;

/// Wall discretization fidelity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscretizationScheme {
    /// Two surface nodes carrying half the wall capacity each, one
    /// resistance between them.
    R2C,
    /// Resistance split 1/4 - 1/2 - 1/4 with two internal capacity nodes
    /// (half the capacity each); the surface nodes are massless.
    R3C2,
    /// Every layer becomes `nodes_per_layer` T-sections (half-resistance,
    /// capacity, half-resistance); adjacent half-resistances merge.
    PerLayer { nodes_per_layer: usize },
}

impl DiscretizationScheme {
    pub const PER_LAYER_DEFAULT: DiscretizationScheme = DiscretizationScheme::PerLayer {
        nodes_per_layer: 3,
    };
}

/// Role of an RC node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Surface on the face-A side of the wall (first layer).
    SurfaceA,
    /// Surface on the face-B side (last layer).
    SurfaceB,
    Internal,
}

#[derive(Debug, Clone)]
pub struct RcNode<S = f64> {
    /// Heat capacity, J/K; zero for massless surface nodes.
    pub capacity: S,
    pub kind: NodeKind,
}

#[derive(Debug, Clone)]
pub struct RcBranch<S = f64> {
    pub node_a: usize,
    pub node_b: usize,
    /// W/K, > 0.
    pub conductance: S,
}

/// Thermal network of one wall (or window): a chain of capacities and
/// conductances between the two surface nodes.
#[derive(Debug, Clone)]
pub struct RcNetwork<S = f64> {
    pub nodes: Vec<RcNode<S>>,
    pub branches: Vec<RcBranch<S>>,
}

impl<S: Scalar> RcNetwork<S> {
    pub fn surface_a(&self) -> usize {
        self.nodes
            .iter()
            .position(|n| n.kind == NodeKind::SurfaceA)
            .expect("network has a face-A surface node")
    }

    pub fn surface_b(&self) -> usize {
        self.nodes
            .iter()
            .position(|n| n.kind == NodeKind::SurfaceB)
            .expect("network has a face-B surface node")
    }

    pub fn total_capacity(&self) -> S {
        self.nodes.iter().map(|n| n.capacity).sum()
    }

    /// Steady surface-to-surface conductance, W/K, by imposing unit
    /// temperature difference across the surfaces and solving the
    /// interior nodes. Serves as the reduction oracle for every scheme.
    pub fn steady_conductance(&self) -> S {
        self.transmittance(S::zero()).norm()
    }

    /// Complex periodic transmittance at angular frequency `omega`
    /// (rad/s), W/K: the amplitude of the heat flux through the face-B
    /// surface for a unit sinusoidal temperature at face A with face B
    /// held at zero.
    pub fn transmittance(&self, omega: S) -> Complex<S> {
        let a = self.surface_a();
        let b = self.surface_b();
        let n = self.nodes.len();
        // Unknowns: interior nodes only; surfaces are Dirichlet (A=1, B=0).
        let mut index = vec![usize::MAX; n];
        let mut count = 0;
        for i in 0..n {
            if i != a && i != b {
                index[i] = count;
                count += 1;
            }
        }
        let mut matrix = vec![Complex::new(S::zero(), S::zero()); count * count];
        let mut rhs = vec![Complex::new(S::zero(), S::zero()); count];
        for (i, node) in self.nodes.iter().enumerate() {
            if index[i] == usize::MAX {
                continue;
            }
            let row = index[i];
            matrix[row * count + row] += Complex::new(S::zero(), omega * node.capacity);
        }
        for branch in &self.branches {
            let k = Complex::new(branch.conductance, S::zero());
            for (from, to) in [(branch.node_a, branch.node_b), (branch.node_b, branch.node_a)] {
                if index[from] == usize::MAX {
                    continue;
                }
                let row = index[from];
                matrix[row * count + row] += k;
                if index[to] != usize::MAX {
                    matrix[row * count + index[to]] -= k;
                } else if to == a {
                    rhs[row] += k; // T_a = 1
                }
            }
        }
        let solution = complex_solve(&mut matrix, &mut rhs, count);
        // Flux into the face-B surface.
        let mut flux = Complex::new(S::zero(), S::zero());
        for branch in &self.branches {
            let other = if branch.node_a == b {
                branch.node_b
            } else if branch.node_b == b {
                branch.node_a
            } else {
                continue;
            };
            let t_other = if other == a {
                Complex::new(S::one(), S::zero())
            } else {
                solution[index[other]]
            };
            flux += Complex::new(branch.conductance, S::zero()) * t_other;
        }
        flux
    }
}

/// Steady conductance of a multilayer wall: UA = area / sum(L/k), W/K.
pub fn wall_ua<S: Scalar>(layers: &[WallLayer<S>], area: S) -> S {
    let resistance_per_area: S = layers
        .iter()
        .map(|l| l.thickness / l.conductivity)
        .sum();
    area / resistance_per_area
}

/// Total heat capacity of a wall, J/K.
pub fn wall_capacity<S: Scalar>(layers: &[WallLayer<S>], area: S) -> S {
    layers
        .iter()
        .map(|l| l.density * l.specific_heat * l.thickness * area)
        .sum::<S>()
}

/// Discretizes a wall into an RC network at the requested fidelity.
///
/// Every scheme preserves the total capacity and the steady
/// surface-to-surface conductance exactly.
pub fn discretize_wall<S: Scalar>(
    layers: &[WallLayer<S>],
    area: S,
    scheme: DiscretizationScheme,
) -> RcNetwork<S> {
    let ua = wall_ua(layers, area);
    let capacity = wall_capacity(layers, area);
    match scheme {
        DiscretizationScheme::R2C => RcNetwork {
            nodes: vec![
                RcNode {
                    capacity: capacity.half(),
                    kind: NodeKind::SurfaceA,
                },
                RcNode {
                    capacity: capacity.half(),
                    kind: NodeKind::SurfaceB,
                },
            ],
            branches: vec![RcBranch {
                node_a: 0,
                node_b: 1,
                conductance: ua,
            }],
        },
        DiscretizationScheme::R3C2 => {
            let four = S::lit(4.0);
            let two = S::lit(2.0);
            RcNetwork {
                nodes: vec![
                    RcNode {
                        capacity: S::zero(),
                        kind: NodeKind::SurfaceA,
                    },
                    RcNode {
                        capacity: capacity.half(),
                        kind: NodeKind::Internal,
                    },
                    RcNode {
                        capacity: capacity.half(),
                        kind: NodeKind::Internal,
                    },
                    RcNode {
                        capacity: S::zero(),
                        kind: NodeKind::SurfaceB,
                    },
                ],
                branches: vec![
                    RcBranch {
                        node_a: 0,
                        node_b: 1,
                        conductance: four * ua,
                    },
                    RcBranch {
                        node_a: 1,
                        node_b: 2,
                        conductance: two * ua,
                    },
                    RcBranch {
                        node_a: 2,
                        node_b: 3,
                        conductance: four * ua,
                    },
                ],
            }
        }
        DiscretizationScheme::PerLayer { nodes_per_layer } => {
            let n = nodes_per_layer.max(1);
            let n_s = S::lit(n as f64);
            let mut nodes = vec![RcNode {
                capacity: S::zero(),
                kind: NodeKind::SurfaceA,
            }];
            let mut branches: Vec<RcBranch<S>> = Vec::new();
            // Half-resistance left over from the previous section, K/W.
            let mut pending_resistance = S::zero();
            for layer in layers {
                let layer_resistance = layer.thickness / (layer.conductivity * area);
                let section_capacity =
                    layer.density * layer.specific_heat * layer.thickness * area / n_s;
                let half_section = layer_resistance / (n_s + n_s);
                for _ in 0..n {
                    let previous = nodes.len() - 1;
                    nodes.push(RcNode {
                        capacity: section_capacity,
                        kind: NodeKind::Internal,
                    });
                    branches.push(RcBranch {
                        node_a: previous,
                        node_b: nodes.len() - 1,
                        conductance: S::one() / (pending_resistance + half_section),
                    });
                    pending_resistance = half_section;
                }
            }
            let previous = nodes.len() - 1;
            nodes.push(RcNode {
                capacity: S::zero(),
                kind: NodeKind::SurfaceB,
            });
            branches.push(RcBranch {
                node_a: previous,
                node_b: nodes.len() - 1,
                conductance: S::one() / pending_resistance,
            });
            RcNetwork { nodes, branches }
        }
    }
}

/// A window as a massless series conductance between its two surfaces.
pub fn window_network<S: Scalar>(u_value: S, area: S) -> RcNetwork<S> {
    RcNetwork {
        nodes: vec![
            RcNode {
                capacity: S::zero(),
                kind: NodeKind::SurfaceA,
            },
            RcNode {
                capacity: S::zero(),
                kind: NodeKind::SurfaceB,
            },
        ],
        branches: vec![RcBranch {
            node_a: 0,
            node_b: 1,
            conductance: u_value * area,
        }],
    }
}

/// Analytic periodic response of the multilayer slab, per unit area.
#[derive(Debug, Clone, Copy)]
pub struct PeriodicResponse<S = f64> {
    /// Cyclic transmittance, W/(m²·K).
    pub transmittance: Complex<S>,
    /// Surface admittance on side A, W/(m²·K).
    pub admittance_a: Complex<S>,
    /// Surface admittance on side B, W/(m²·K).
    pub admittance_b: Complex<S>,
}

/// Multilayer quadrupole (transfer-matrix) response at the given period.
///
/// Each layer contributes the matrix
/// `[[cosh(gL), sinh(gL)/(k·g)], [k·g·sinh(gL), cosh(gL)]]` with
/// `g = sqrt(i·omega/diffusivity)`; matrices multiply in layer order.
/// This is the independent oracle the RC discretizations are judged
/// against.
pub fn analytic_periodic_response<S: Scalar>(
    layers: &[WallLayer<S>],
    period_s: S,
) -> PeriodicResponse<S> {
    assert!(period_s > S::zero(), "period must be positive");
    let omega = S::lit(2.0 * std::f64::consts::PI) / period_s;
    let zero = Complex::new(S::zero(), S::zero());
    let one = Complex::new(S::one(), S::zero());
    // [[a, b], [c, d]], initialized to the identity.
    let (mut a, mut b, mut c, mut d) = (one, zero, zero, one);
    for layer in layers {
        let diffusivity = layer.conductivity / (layer.density * layer.specific_heat);
        let gamma = Complex::new(S::zero(), omega / diffusivity).sqrt();
        let gl = gamma * Complex::new(layer.thickness, S::zero());
        let cosh = gl.cosh();
        let sinh = gl.sinh();
        let kg = gamma * Complex::new(layer.conductivity, S::zero());
        let (la, lb, lc, ld) = (cosh, sinh / kg, kg * sinh, cosh);
        let na = a * la + b * lc;
        let nb = a * lb + b * ld;
        let nc = c * la + d * lc;
        let nd = c * lb + d * ld;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    PeriodicResponse {
        transmittance: one / b,
        admittance_a: a / b,
        admittance_b: d / b,
    }
}

/// In-place complex Gaussian elimination with partial pivoting.
fn complex_solve<S: Scalar>(
    a: &mut [Complex<S>],
    rhs: &mut [Complex<S>],
    n: usize,
) -> Vec<Complex<S>> {
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[col * n + col].norm_sqr();
        for row in (col + 1)..n {
            let mag = a[row * n + col].norm_sqr();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        assert!(
            pivot_mag > S::lit(1e-280),
            "singular complex system in transmittance evaluation"
        );
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            for k in (col + 1)..n {
                let upper = a[col * n + k];
                a[row * n + k] = a[row * n + k] - factor * upper;
            }
            a[row * n + col] = Complex::new(S::zero(), S::zero());
            let pivot_rhs = rhs[col];
            rhs[row] = rhs[row] - factor * pivot_rhs;
        }
    }
    let mut out = vec![Complex::new(S::zero(), S::zero()); n];
    for col in (0..n).rev() {
        let mut acc = rhs[col];
        for k in (col + 1)..n {
            acc = acc - a[col * n + k] * out[k];
        }
        out[col] = acc / a[col * n + col];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(thickness: f64, k: f64, rho: f64, c: f64) -> WallLayer {
        WallLayer {
            thickness,
            conductivity: k,
            density: rho,
            specific_heat: c,
        }
    }

    /// Render / insulation / plaster wall used across the module tests.
    fn three_layer_wall() -> Vec<WallLayer> {
        vec![
            layer(0.02, 0.8, 1900.0, 840.0),
            layer(0.10, 0.04, 30.0, 1400.0),
            layer(0.015, 0.35, 900.0, 850.0),
        ]
    }

    fn heavy_wall() -> Vec<WallLayer> {
        vec![
            layer(0.20, 1.4, 2200.0, 880.0),
            layer(0.05, 0.04, 30.0, 1400.0),
            layer(0.013, 0.35, 900.0, 850.0),
        ]
    }

    const ALL_SCHEMES: [DiscretizationScheme; 6] = [
        DiscretizationScheme::R2C,
        DiscretizationScheme::R3C2,
        DiscretizationScheme::PerLayer { nodes_per_layer: 1 },
        DiscretizationScheme::PerLayer { nodes_per_layer: 2 },
        DiscretizationScheme::PerLayer { nodes_per_layer: 3 },
        DiscretizationScheme::PerLayer { nodes_per_layer: 4 },
    ];

    #[test]
    fn single_layer_ua() {
        let layers = vec![layer(0.2, 1.0, 2000.0, 900.0)];
        assert!((wall_ua(&layers, 10.0) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn two_equal_layers_halve_ua() {
        let one = vec![layer(0.2, 1.0, 2000.0, 900.0)];
        let two = vec![
            layer(0.2, 1.0, 2000.0, 900.0),
            layer(0.2, 1.0, 2000.0, 900.0),
        ];
        assert!((wall_ua(&two, 10.0) - wall_ua(&one, 10.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn three_layer_ua_hand_value() {
        // 1/(0.02/0.8 + 0.10/0.04 + 0.015/0.35) = 0.3894 W/K on 1 m².
        let ua = wall_ua(&three_layer_wall(), 1.0);
        assert!((ua - 0.3894).abs() < 1e-3, "{ua}");
    }

    #[test]
    fn r2c_puts_half_capacity_on_each_surface() {
        let layers = three_layer_wall();
        let area = 8.0;
        let net = discretize_wall(&layers, area, DiscretizationScheme::R2C);
        let total = wall_capacity(&layers, area);
        assert_eq!(net.nodes.len(), 2);
        assert!((net.nodes[0].capacity - total / 2.0).abs() < 1e-9);
        assert!((net.nodes[1].capacity - total / 2.0).abs() < 1e-9);
    }

    #[test]
    fn per_layer_one_homogeneous_layer_is_a_t_section() {
        let layers = vec![layer(0.2, 1.0, 2000.0, 900.0)];
        let net = discretize_wall(&layers, 1.0, DiscretizationScheme::PerLayer {
            nodes_per_layer: 1,
        });
        let ua = wall_ua(&layers, 1.0);
        assert_eq!(net.nodes.len(), 3);
        assert_eq!(net.branches.len(), 2);
        for branch in &net.branches {
            assert!((branch.conductance - 2.0 * ua).abs() < 1e-12);
        }
        let caps: Vec<f64> = net.nodes.iter().map(|n| n.capacity).collect();
        assert_eq!(caps.iter().filter(|c| **c > 0.0).count(), 1);
    }

    #[test]
    fn every_scheme_preserves_series_conductance() {
        let layers = three_layer_wall();
        let area = 12.5;
        let ua = wall_ua(&layers, area);
        for scheme in ALL_SCHEMES {
            let net = discretize_wall(&layers, area, scheme);
            let g = net.steady_conductance();
            assert!(
                ((g - ua) / ua).abs() < 1e-9,
                "{scheme:?}: {g} vs {ua}"
            );
        }
    }

    #[test]
    fn every_scheme_preserves_total_capacity() {
        let layers = heavy_wall();
        let area = 7.0;
        let total = wall_capacity(&layers, area);
        for scheme in ALL_SCHEMES {
            let net = discretize_wall(&layers, area, scheme);
            assert!(
                ((net.total_capacity() - total) / total).abs() < 1e-12,
                "{scheme:?}"
            );
        }
    }

    #[test]
    fn window_is_a_pure_resistance() {
        let net = window_network(5.8f64, 2.0);
        assert_eq!(net.total_capacity(), 0.0);
        assert!((net.steady_conductance() - 11.6).abs() < 1e-9);
    }

    #[test]
    fn zero_frequency_limit_matches_ua() {
        let layers = three_layer_wall();
        // One-week period is effectively steady for this construction...
        let response = analytic_periodic_response(&layers, 20.0 * 365.0 * 86400.0);
        let ua = wall_ua(&layers, 1.0);
        assert!(
            (response.transmittance.norm() - ua).abs() / ua < 1e-3,
            "{} vs {ua}",
            response.transmittance.norm()
        );
    }

    #[test]
    fn thick_concrete_attenuates_at_daily_period() {
        let layers = vec![layer(0.3, 1.4, 2200.0, 880.0)];
        let response = analytic_periodic_response(&layers, 86400.0);
        let ua = wall_ua(&layers, 1.0);
        assert!(response.transmittance.norm() < ua);
    }

    #[test]
    fn per_layer_3_matches_quadrupole_within_5_percent() {
        let layers = heavy_wall();
        let omega = 2.0 * std::f64::consts::PI / 86400.0;
        let analytic = analytic_periodic_response(&layers, 86400.0).transmittance.norm();
        let net = discretize_wall(&layers, 1.0, DiscretizationScheme::PER_LAYER_DEFAULT);
        let numeric = net.transmittance(omega).norm();
        assert!(
            ((numeric - analytic) / analytic).abs() < 0.05,
            "{numeric} vs {analytic}"
        );
    }

    #[test]
    fn fidelity_ordering_at_daily_period() {
        let layers = heavy_wall();
        let omega = 2.0 * std::f64::consts::PI / 86400.0;
        let analytic = analytic_periodic_response(&layers, 86400.0).transmittance.norm();
        let error = |scheme| {
            let net = discretize_wall(&layers, 1.0, scheme);
            (net.transmittance(omega).norm() - analytic).abs()
        };
        let e_r2c = error(DiscretizationScheme::R2C);
        let e_3r2c = error(DiscretizationScheme::R3C2);
        let e_pl3 = error(DiscretizationScheme::PER_LAYER_DEFAULT);
        assert!(
            e_pl3 <= e_3r2c && e_3r2c <= e_r2c,
            "errors: R2C {e_r2c}, 3R2C {e_3r2c}, PL3 {e_pl3}"
        );
    }

    #[test]
    fn steady_flux_equals_ua_delta_t() {
        // Impose surface temperatures via the steady conductance oracle
        // and check UA·dT on an asymmetric wall.
        let layers = heavy_wall();
        for scheme in ALL_SCHEMES {
            let net = discretize_wall(&layers, 3.0, scheme);
            let ua = wall_ua(&layers, 3.0);
            let g = net.steady_conductance();
            let dt = 7.5;
            assert!(((g * dt - ua * dt) / (ua * dt)).abs() < 1e-9, "{scheme:?}");
        }
    }

    #[test]
    fn f32_network_construction() {
        let layers = vec![WallLayer::<f32> {
            thickness: 0.1,
            conductivity: 1.0,
            density: 2000.0,
            specific_heat: 900.0,
        }];
        let net = discretize_wall(&layers, 2.0f32, DiscretizationScheme::R3C2);
        let ua = wall_ua(&layers, 2.0f32);
        assert!((net.steady_conductance() - ua).abs() / ua < 1e-5);
    }
}
