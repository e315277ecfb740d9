//! Numerical verification of the protocol's quantitative claims: exact
//! retrieval probabilities, the single-qubit optimality ceiling, the
//! N-qubit retrieval bound, the entropy of the program ensemble, and the
//! average program length.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::protocol::{cascade, encode_program, Angle};
use crate::statevec::StateVector;

/// Largest register for exact branch enumeration.
pub const MAX_EXACT_QUBITS: usize = 16;

/// Largest exponent accepted by the bound computations.
pub const MAX_BOUND_QUBITS: usize = 30;

/// Largest register for the averaged-projector quadrature.
pub const MAX_DENSITY_QUBITS: usize = 10;

/// Feasibility slack for the success-probability constraint.
const FEASIBILITY_TOL: f64 = 1e-12;

/// Parameters of a general heralded single-qubit storage gate: the success
/// probabilities at the two reference angles 0 and π, and the real part of
/// the overlap between their (not necessarily orthogonal) program states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitGateParams {
    pub p0: f64,
    pub p_pi: f64,
    pub overlap_re: f64,
}

impl SingleQubitGateParams {
    pub fn new(p0: f64, p_pi: f64, overlap_re: f64) -> Self {
        Self {
            p0,
            p_pi,
            overlap_re,
        }
    }

    /// Whether the parameters satisfy the unitarity-derived constraint
    /// √(p₀·p_π) ≤ √((1−p₀)(1−p_π)).
    pub fn is_feasible(&self) -> bool {
        (self.p0 * self.p_pi).sqrt()
            <= ((1.0 - self.p0) * (1.0 - self.p_pi)).sqrt() + FEASIBILITY_TOL
    }
}

/// A 2^n-dimensional density matrix, stored row-major.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..self.dim {
            for j in i..self.dim {
                if (self.entry(i, j) - self.entry(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Max entrywise distance to I/dim, the maximally mixed state.
    pub fn max_deviation_from_maximally_mixed(&self) -> f64 {
        let uniform = 1.0 / self.dim as f64;
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expect = if i == j {
                    Complex64::new(uniform, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                dev = dev.max((self.entry(i, j) - expect).norm());
            }
        }
        dev
    }
}

/// Exact retrieval success probability for an n-qubit program: runs the
/// cascade on the reference data state |0⟩ and sums the probabilities of
/// every program outcome other than all-ones. Equals 1 − 2⁻ⁿ for any α.
pub fn exact_success_probability(alpha: Angle, n: usize) -> Result<f64> {
    if n == 0 || n > MAX_EXACT_QUBITS {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_EXACT_QUBITS,
        });
    }
    let data = StateVector::zero_state(1)?;
    let joint = cascade(&data, &encode_program(alpha, n)?)?;
    let qubits: Vec<usize> = (1..=n).collect();
    let success: f64 = joint
        .branch_probabilities(&qubits)?
        .iter()
        .filter(|(bits, _)| !bits.iter().all(|&b| b == 1))
        .map(|(_, p)| p)
        .sum();
    Ok(success)
}

/// Success probability of the general single-qubit gate at angle α:
/// (cos²(α/2)/p₀ + sin²(α/2)/p_π + 2·cos(α/2)·sin(α/2)·Re⟨0̲|π̲⟩/√(p₀·p_π))⁻¹.
pub fn single_qubit_p_alpha(alpha: Angle, params: &SingleQubitGateParams) -> Result<f64> {
    let half = alpha.radians() / 2.0;
    let (c, s) = (half.cos(), half.sin());
    let denom = c * c / params.p0
        + s * s / params.p_pi
        + 2.0 * c * s * params.overlap_re / (params.p0 * params.p_pi).sqrt();
    if denom <= 0.0 {
        return Err(Error::InfeasibleParams {
            alpha: alpha.radians(),
        });
    }
    Ok(1.0 / denom)
}

/// Maximizes the average success probability √(p₀·p_π) of a single-qubit
/// storage gate over the feasible region √(p₀·p_π) ≤ √((1−p₀)(1−p_π)),
/// by coarse grid search plus golden-section refinement.
///
/// The ceiling is 1/2, attained at p₀ = p_π = 1/2.
pub fn single_qubit_max_avg() -> (SingleQubitGateParams, f64) {
    // Coarse pass, step 1e-2 in each coordinate.
    let mut best = (0.0f64, 0.0f64);
    let mut best_value = f64::NEG_INFINITY;
    for i in 1..=100 {
        for j in 1..=100 {
            let p0 = i as f64 / 100.0;
            let p_pi = j as f64 / 100.0;
            if !SingleQubitGateParams::new(p0, p_pi, 0.0).is_feasible() {
                continue;
            }
            let value = (p0 * p_pi).sqrt();
            if value > best_value {
                best_value = value;
                best = (p0, p_pi);
            }
        }
    }
    // The objective grows with either coordinate while p₀ + p_π ≤ 1 keeps
    // it feasible, so the optimum sits on the boundary p_π = 1 − p₀; refine
    // along that line around the grid winner.
    let lo = (best.0 - 0.02).max(1e-6);
    let hi = (best.0 + 0.02).min(1.0 - 1e-6);
    let (p0, value) = golden_section_max(|p0| (p0 * (1.0 - p0)).sqrt(), lo, hi, 1e-8);
    (SingleQubitGateParams::new(p0, 1.0 - p0, 0.0), value)
}

/// Magnitude of the unitarity inner product |sin(δ/2)·∏ cos(2^{l-1}δ/2)|
/// for an n-qubit program pair whose stored angles differ by δ. Telescopes
/// to |sin(2^{n-1}δ)|/2ⁿ.
pub fn bound_product(delta: f64, n: usize) -> Result<f64> {
    if n == 0 || n > MAX_BOUND_QUBITS {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_BOUND_QUBITS,
        });
    }
    let mut product = (delta / 2.0).sin();
    for l in 0..n {
        product *= (f64::powi(2.0, l as i32) * delta / 2.0).cos();
    }
    Ok(product.abs())
}

/// Ceiling on the retrieval success probability of any gate consuming the
/// n-qubit program encoding: 1 minus the maximum of [`bound_product`] over
/// the angle difference δ. Comes out to 1 − 2⁻ⁿ, which the cascade attains.
pub fn retrieval_bound(n: usize) -> Result<f64> {
    if n == 0 || n > MAX_BOUND_QUBITS {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_BOUND_QUBITS,
        });
    }
    // |sin(2^{n-1}δ)|/2ⁿ repeats every π/2^{n-1} and peaks once per period,
    // so a fine grid over a single period brackets the global maximum.
    let period = std::f64::consts::PI / f64::powi(2.0, n as i32 - 1);
    let grid_points = 4096;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 1..=grid_points {
        let delta = period * i as f64 / (grid_points + 1) as f64;
        let value = bound_product(delta, n)?;
        if value > best {
            best = value;
            best_i = i;
        }
    }
    let step = period / (grid_points + 1) as f64;
    let lo = step * (best_i - 1) as f64;
    let hi = step * (best_i + 1) as f64;
    let (_, max_value) = golden_section_max(
        |delta| bound_product(delta, n).expect("n already validated"),
        lo,
        hi,
        period * 1e-10,
    );
    Ok(1.0 - max_value)
}

/// Grid size used by [`program_density_average`] callers that do not pick
/// their own: 2^{n+2} points, enough to annihilate every nonzero frequency
/// of the integrand exactly.
pub fn default_density_grid(n: usize) -> usize {
    1 << (n + 2)
}

/// Uniform-grid average of the program projector |U_α^N⟩⟨U_α^N| over the
/// stored angle. The integrand's off-diagonal frequencies are at most
/// 2ⁿ − 1, so any grid of at least 2^{n+1} points integrates them to zero
/// exactly and the average is the maximally mixed state I/2ⁿ.
pub fn program_density_average(n: usize, grid_points: usize) -> Result<DensityMatrix> {
    if n == 0 || n > MAX_DENSITY_QUBITS {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_DENSITY_QUBITS,
        });
    }
    let required = 1usize << (n + 1);
    if grid_points < required {
        return Err(Error::GridTooCoarse {
            points: grid_points,
            required,
        });
    }
    let dim = 1usize << n;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    let weight = 1.0 / grid_points as f64;
    for k in 0..grid_points {
        let alpha = Angle::new(std::f64::consts::TAU * k as f64 / grid_points as f64);
        let program = encode_program(alpha, n)?;
        let amps = program.state().amplitudes();
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] += amps[i] * amps[j].conj() * weight;
            }
        }
    }
    Ok(DensityMatrix { dim, entries })
}

/// Partial sum Σ_{N=1..max_terms} N·2⁻ᴺ of the average program length of
/// the adaptive protocol. Converges to 2; the tail after m terms is
/// exactly (m+2)·2⁻ᵐ.
pub fn expected_program_length(max_terms: usize) -> f64 {
    (1..=max_terms)
        .map(|n| n as f64 * f64::powi(0.5, n as i32))
        .sum()
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Returns `(x_max, f_max)`. Assumes `f` is unimodal on the bracket.
fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_895;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
