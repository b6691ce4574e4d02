//! Analytics of the critical Erdős–Rényi network, `N p = 1`, where
//! every SPP geometry occurs with density `g(L, n) / N^2` and the
//! network-averaged gain for nearly pure links follows
//! `dC ~ A / (N^2 eps^4)` with `eps = 1 - x`.
//!
//! The constant `A` is the third moment of `h(s) = f(e^(-s))`, where
//! `f(y)` integrates the positive SPP gain `(1 - a) dC(y; a, b)` over
//! the good region of the `(a, b)` plane. The region boundary is
//! available in closed form, so `f` needs only a one-dimensional
//! adaptive quadrature with an exact inner `b` integral.

use rayon::prelude::*;

use crate::numeric::{self, adaptive_simpson, composite_simpson};
use crate::spp;
use crate::Result;

/// Default prefactor of the critical-cluster radius `a N^(1/3)`,
/// as observed in simulations of the largest component.
pub const DEFAULT_RADIUS_PREFACTOR: f64 = 3.0;

/// Absolute tolerance of one `f(y)` evaluation.
const F_TOL: f64 = 1e-10;

/// Absolute tolerance of the outer `s` quadrature for `A`.
const A_TOL: f64 = 1e-9;

/// The critical-point constants: the integration limits in
/// `s = -ln y` and the numerically determined amplitude `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalConstants {
    /// Lower limit `ln 2` (from the largest upper bound `y = 1/2`).
    pub s_lo: f64,
    /// Upper limit `-ln((sqrt 5 - 1)/4)` (from the lowest lower bound).
    pub s_hi: f64,
    /// `A = integral of s^3 h(s) ds` over `[s_lo, s_hi]`.
    pub big_a: f64,
}

impl CriticalConstants {
    pub fn compute() -> Result<Self> {
        Ok(CriticalConstants {
            s_lo: 2f64.ln(),
            s_hi: -spp::y_lo_min().ln(),
            big_a: big_a_constant(A_TOL)?,
        })
    }

    /// Asymptotic network gain `A / (N^2 eps^4)` for `eps = 1 - x`.
    pub fn asymptotic_gain(&self, n_nodes: f64, eps: f64) -> f64 {
        self.big_a / (n_nodes * n_nodes * eps.powi(4))
    }

    /// Validity ceiling of the asymptotic law: bounding contributing
    /// path lengths by the critical-cluster radius
    /// `radius_prefactor * N^(1/3)` gives
    /// `dC < radius_prefactor^4 * A * N^(-2/3)`.
    pub fn gain_ceiling(&self, n_nodes: f64, radius_prefactor: f64) -> f64 {
        radius_prefactor.powi(4) * self.big_a * n_nodes.powf(-2.0 / 3.0)
    }
}

/// Inner gain integral over the excess fraction `b` at fixed `(y, a)`,
/// in closed form: with `B = 4y^2 + y - (y^a - 2y)^2` and `g = g(y)`,
/// `int_0^(b*) dC db = g [1 - B/g + ln(B/g)] / (4 ln y)`,
/// where `b*` is the vanishing-gain boundary. Zero when the `b = 0`
/// gain is already nonpositive.
fn gain_integral_over_b(y: f64, a: f64) -> f64 {
    let d = y.powf(a) - 2.0 * y;
    let bracket = 4.0 * y * y + y - d * d;
    let g = if y < 1.0 / 3.0 {
        1.0 - y
    } else {
        5.0 * y - 1.0
    };
    if bracket <= g {
        return 0.0;
    }
    let t = bracket / g;
    g * (1.0 - t + t.ln()) / (4.0 * y.ln())
}

/// Density of gain contributions at rescaled parameter `y`:
/// `f(y) = int (1 - a) dC(y; a, b) da db` over the positive-gain
/// region. Supported exactly on `(y_lo_min, 1/2)`.
pub fn f_of_y(y: f64) -> f64 {
    let roots = spp::spp_roots_a(y);
    if roots.len() != 2 {
        return 0.0;
    }
    let (a_lo, a_hi) = (roots[0], roots[1]);
    if a_hi - a_lo < 1e-12 {
        return 0.0;
    }
    adaptive_simpson(
        &|a: f64| (1.0 - a) * gain_integral_over_b(y, a),
        a_lo,
        a_hi,
        F_TOL,
    )
    .expect("smooth integrand with vanishing endpoints")
}

/// `h(s) = f(e^(-s))`.
pub fn h_of_s(s: f64) -> f64 {
    f_of_y((-s).exp())
}

/// `A` by adaptive quadrature of `s^3 h(s)` over the support of `h`.
pub fn big_a_constant(tol: f64) -> Result<f64> {
    adaptive_simpson(
        &|s: f64| s.powi(3) * h_of_s(s),
        2f64.ln(),
        -spp::y_lo_min().ln(),
        tol,
    )
}

/// `A` by a fixed-step composite Simpson rule with `2 * half_steps`
/// intervals; used to verify step-halving stability.
pub fn big_a_fixed_steps(half_steps: usize) -> f64 {
    composite_simpson(
        &|s: f64| s.powi(3) * h_of_s(s),
        2f64.ln(),
        -spp::y_lo_min().ln(),
        half_steps,
    )
}

/// `N^2` times the discrete critical-point gain sum: every geometry
/// `(L, n, m)` with `3 <= L <= l_max`, `2 <= n <= L - 1`,
/// `0 <= m <= n - 1` contributes its multiplicity `g(L, n)` times the
/// clamped gain at `y = x^L, a = n/L, b = m/L`. Multiplying by the
/// critical density `1/N^2` gives the network average.
pub fn n2_gain_sum(x: f64, l_max: u32) -> f64 {
    assert!((0.0..=1.0).contains(&x));
    let y_lo_min = spp::y_lo_min();
    let per_l: Vec<f64> = (3..=l_max)
        .into_par_iter()
        .map(|l| {
            let y = x.powi(l as i32);
            // every geometry's gain is nonpositive outside this window
            if y <= y_lo_min || y >= spp::Y_HI_MAX {
                return 0.0;
            }
            let direct = (0.5 * (3.0 * y - 1.0)).max(0.0);
            let one_minus_y = 1.0 - y;
            let mut sum_l = 0.0;
            for n in 2..l {
                let positions = (l - n + 1) as f64;
                // y^b walks down in steps of x, starting from b = 0
                let p_coeff = y + 4.0 * y * x.powi(n as i32) - x.powi(2 * n as i32);
                let mut y_pow_b = 1.0;
                for m in 0..n {
                    let qm = (0.25 * (y_pow_b * p_coeff - one_minus_y)).max(0.0);
                    let gain = qm - direct;
                    if gain <= 0.0 {
                        break;
                    }
                    let weight = if m == 0 { positions / 2.0 } else { positions };
                    sum_l += weight * gain;
                    y_pow_b *= x;
                }
            }
            sum_l
        })
        .collect();
    per_l.iter().sum()
}

/// Network-averaged discrete gain sum at the critical point.
pub fn discrete_gain_sum(n_nodes: f64, x: f64, l_max: u32) -> f64 {
    n2_gain_sum(x, l_max) / (n_nodes * n_nodes)
}

/// Sampled `(y, f(y))` curve across the support.
pub fn f_curve(n_points: usize) -> Vec<(f64, f64)> {
    let lo = spp::y_lo_min();
    let hi = spp::Y_HI_MAX;
    (0..n_points)
        .map(|i| {
            let y = lo + (hi - lo) * (i as f64 + 0.5) / n_points as f64;
            (y, f_of_y(y))
        })
        .collect()
}

/// Sampled `(s, h(s))` curve across the support.
pub fn h_curve(n_points: usize) -> Vec<(f64, f64)> {
    let lo = 2f64.ln();
    let hi = -spp::y_lo_min().ln();
    (0..n_points)
        .map(|i| {
            let s = lo + (hi - lo) * (i as f64 + 0.5) / n_points as f64;
            (s, h_of_s(s))
        })
        .collect()
}

/// `(eps, N^2 dC)` rows of the discrete sum for a list of `eps = 1 - x`.
pub fn gain_sum_curve(eps: &[f64], l_max: u32) -> Vec<(f64, f64)> {
    eps.iter()
        .map(|&e| (e, n2_gain_sum(1.0 - e, l_max)))
        .collect()
}

/// Log-log slope of `N^2 dC` against `eps` over the given grid.
pub fn gain_sum_loglog_slope(eps: &[f64], l_max: u32) -> f64 {
    let pts = gain_sum_curve(eps, l_max);
    let lx: Vec<f64> = pts.iter().map(|(e, _)| e.ln()).collect();
    let ly: Vec<f64> = pts.iter().map(|(_, v)| v.ln()).collect();
    numeric::linear_fit(&lx, &ly).0
}
