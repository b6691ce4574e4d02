//! Closed-form and numerical analysis of the single purification
//! protocol (SPP): one subpath of fractional length `a` purified
//! against one edge-disjoint alternate path of fractional length
//! `a + b`, followed by swapping the rest.
//!
//! The central object is the gain
//! `dC(y; a, b) = (1/4) { y^b [4y^2 + y - (y^a - 2y)^2] - g(y) }`
//! with `g(y) = 1 - y` below the separability threshold and `5y - 1`
//! above it. The branch function already encodes the subtraction of
//! the direct strategy; the implementation additionally clamps the
//! protocol concurrence at zero so the closed form agrees with the
//! pipeline of swap/purify primitives everywhere, not just where the
//! gain is positive.

use crate::numeric::{self, ROOT_TOL};
use crate::protocol::ConstraintPolynomial;
use crate::werner::{noisy_purify_equal, NoiseModel, WernerState};
use crate::{Error, Result};

/// Lowest lower endpoint of the good interval over all SPP geometries,
/// `(sqrt 5 - 1) / 4`.
pub fn y_lo_min() -> f64 {
    (5f64.sqrt() - 1.0) / 4.0
}

/// Largest upper endpoint of the good interval, attained as `a -> 0`.
pub const Y_HI_MAX: f64 = 0.5;

/// Closed-form extremal points of the SPP family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SppExtremals {
    /// Lowest achievable lower endpoint, `(sqrt 5 - 1) / 4`.
    pub y_lo_min: f64,
    /// Subpath fraction attaining it, `1 + ln 2 / ln y_lo_min`.
    pub a_at_y_lo_min: f64,
    /// Largest achievable upper endpoint, `1/2`.
    pub y_hi_max: f64,
    /// Global maximum of the gain, `1/36`.
    pub max_gain: f64,
    /// Subpath fraction attaining it at `y = 1/3`, `ln(3/2) / ln 3`.
    pub a_at_max_gain: f64,
    /// Largest excess fraction with positive gain anywhere,
    /// `ln(7/6) / ln 3`.
    pub b_max: f64,
}

pub fn extremals() -> SppExtremals {
    let ylo = y_lo_min();
    SppExtremals {
        y_lo_min: ylo,
        a_at_y_lo_min: 1.0 + 2f64.ln() / ylo.ln(),
        y_hi_max: Y_HI_MAX,
        max_gain: 1.0 / 36.0,
        a_at_max_gain: (1.5f64).ln() / 3f64.ln(),
        b_max: (7.0f64 / 6.0).ln() / 3f64.ln(),
    }
}

/// Branch function `g(y)`: subtracting zero below the threshold and
/// the direct concurrence above it.
fn g_branch(y: f64) -> f64 {
    if y < 1.0 / 3.0 {
        1.0 - y
    } else {
        5.0 * y - 1.0
    }
}

/// The bracket `4y^2 + y - (y^a - 2y)^2` multiplying `y^b`.
fn gain_bracket(y: f64, a: f64) -> f64 {
    let d = y.powf(a) - 2.0 * y;
    4.0 * y * y + y - d * d
}

/// SPP gain over the direct strategy. Equals the closed form on its
/// positive branch and the swap/purify pipeline everywhere (the
/// protocol concurrence is clamped at zero before the direct strategy
/// is subtracted).
pub fn delta_c_spp(y: f64, a: f64, b: f64) -> f64 {
    let qm = 0.25 * (y.powf(b) * gain_bracket(y, a) - (1.0 - y));
    qm.max(0.0) - (0.5 * (3.0 * y - 1.0)).max(0.0)
}

/// Roots in `a` of the `b = 0` gain at fixed `y`, sorted ascending.
/// Empty outside `[y_lo_min, 1/2]`; the two branches coincide at both
/// ends of that range.
pub fn spp_roots_a(y: f64) -> Vec<f64> {
    let third = 1.0 / 3.0;
    if y < y_lo_min() || y > Y_HI_MAX {
        return Vec::new();
    }
    if y >= third {
        // 4y - 1 in [1/3, 1] here, so the logarithm ratio is in [0, 1]
        vec![0.0, (4.0 * y - 1.0).ln() / y.ln()]
    } else {
        let disc = ((y - y_lo_min()) * (y + (5f64.sqrt() + 1.0) / 4.0)).max(0.0);
        let s = 2.0 * disc.sqrt();
        let upper = (2.0 * y + s).ln() / y.ln();
        let lower = (2.0 * y - s).ln() / y.ln();
        vec![upper, lower]
    }
}

/// Largest excess fraction `b` with nonnegative gain at `(y, a)`:
/// `b = ln(g(y) / [4y^2 + y - (y^a - 2y)^2]) / ln y`. The gain
/// vanishes exactly at the returned value. Errors when the `b = 0`
/// gain is already nonpositive.
pub fn spp_boundary_b(y: f64, a: f64) -> Result<f64> {
    let bracket = gain_bracket(y, a);
    let g = g_branch(y);
    if bracket <= g {
        // points on the b = 0 root curve land here through rounding
        return if bracket >= g - 1e-12 {
            Ok(0.0)
        } else {
            Err(Error::NoGoodInterval)
        };
    }
    Ok((g / bracket).ln() / y.ln())
}

/// Threshold excess ratio `c(z) = ln(2 [1 + 4z - 3z^2]^(-1)) / ln z`
/// where `z = y^a`: alternate paths longer than `(1 + c) n` make the
/// purification worse than plain swapping. Valid on `z in [1/3, 1]`,
/// with `c(1)` defined by its limit, 1.
pub fn threshold_c(z: f64) -> Result<f64> {
    if !(1.0 / 3.0..=1.0).contains(&z) {
        return Err(Error::Domain {
            name: "z",
            value: z,
            constraint: "1/3 <= z <= 1",
        });
    }
    if z >= 1.0 - 1e-12 {
        return Ok(1.0);
    }
    Ok((2.0 / (1.0 + 4.0 * z - 3.0 * z * z)).ln() / z.ln())
}

/// Maximum single-purification parameter gain on equal inputs:
/// the stationary point of `x'(z, z) - z`, which is the root of
/// `3z^4 + 8z^2 - 8z + 1` near `z = 0.69`. Returns `(z_star, gain)`;
/// the gain is approximately `0.05`.
pub fn delta_p_max() -> (f64, f64) {
    let poly = |z: f64| 3.0 * z.powi(4) + 8.0 * z * z - 8.0 * z + 1.0;
    let z = numeric::bisect(poly, 1.0 / 3.0, 1.0, ROOT_TOL).expect("sign change on [1/3, 1]");
    let gain = z * (3.0 * z - 1.0) * (1.0 - z) / (3.0 * (1.0 + z * z));
    (z, gain)
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain {
            name: "alpha",
            value: alpha,
            constraint: "0 < alpha <= 1",
        });
    }
    Ok(())
}

/// Good-interval endpoints when a fraction `alpha` of the shortest
/// path is split into `n` equal subpaths, each purified against an
/// equal-length alternate path. Both endpoints are found numerically.
pub fn multipur_bounds(n: u32, alpha: f64) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::Domain {
            name: "n",
            value: n as f64,
            constraint: "n >= 1",
        });
    }
    validate_alpha(alpha)?;
    let nf = n as f64;
    let frac = alpha / nf;

    let f_lo = |y: f64| {
        3.0 * (2.0f64 / 3.0).powf(nf) * y * (1.0 + 2.0 * y.powf(frac)).powf(nf)
            - (1.0 + y.powf(2.0 * frac)).powf(nf)
    };
    let y_lo = numeric::bisect(f_lo, 1e-12, 1.0 - 1e-12, ROOT_TOL)?;

    // The gain equality has a trivial root at y = 1; bracket away from it.
    let f_hi = |y: f64| {
        (1.0f64 / 6.0).powf(nf)
            * (2.0f64.powf(nf) * 3.0 * y * (1.0 + 2.0 * y.powf(frac)).powf(nf)
                - 3.0f64.powf(nf) * (1.0 + y.powf(2.0 * frac)).powf(nf))
            - 3.0 * y
            + 1.0
    };
    let third = 1.0 / 3.0;
    let at_third = f_hi(third);
    let y_hi = if at_third.abs() < 1e-12 {
        third
    } else if at_third < 0.0 {
        return Err(Error::NoGoodInterval);
    } else {
        numeric::bisect(f_hi, third, 1.0 - 1e-6, ROOT_TOL)?
    };
    Ok((y_lo, y_hi))
}

/// Limits of [`multipur_bounds`] as the number of purifications grows
/// without bound: `y_lo = (1/3)^(3/(3 - alpha))` in closed form and
/// `y_hi` as the nontrivial root of
/// `3 y^(2 alpha / 3 + 1) - y^alpha - 3y + 1 = 0`.
pub fn multipur_bounds_inf(alpha: f64) -> Result<(f64, f64)> {
    validate_alpha(alpha)?;
    // The equation vanishes identically as alpha -> 0.
    if alpha < 1e-6 {
        return Err(Error::Degenerate(
            "the limit equation vanishes identically as alpha -> 0",
        ));
    }
    let y_lo = (1.0f64 / 3.0).powf(3.0 / (3.0 - alpha));
    let f = |y: f64| 3.0 * y.powf(2.0 * alpha / 3.0 + 1.0) - y.powf(alpha) - 3.0 * y + 1.0;
    // Exclude the trivial root at y = 1.
    let y_hi = numeric::bisect(f, 1.0 / 3.0, 1.0 - 1e-6, ROOT_TOL)?;
    Ok((y_lo, y_hi))
}

/// Second-order large-`L` root of a generic constraint with integer
/// perturbations `d_i = n_i / L`:
/// `x* = yhat^(1/L) - ln(yhat) * sum_ji K_j n_i c_ji yhat^(c_j0)
///        / (L^2 sum_j K_j c_j0 yhat^(c_j0))`,
/// where `yhat` is the unperturbed root. A vanishing denominator means
/// the expansion starts at third order and is reported as an error.
pub fn asymptotic_root(
    poly: &ConstraintPolynomial,
    n_counts: &[u32],
    path_len: u32,
) -> Result<f64> {
    let y_hat = base_root(poly)?;
    let mut numer = 0.0;
    let mut denom = 0.0;
    let mut scale = 0.0f64;
    for term in &poly.terms {
        let base = term.coefficient * y_hat.powf(term.base_exponent);
        denom += base * term.base_exponent;
        scale = scale.max((base * term.base_exponent).abs());
        for (i, &n_i) in n_counts.iter().enumerate() {
            let weight = term.weights.get(i).copied().unwrap_or(0.0);
            numer += base * n_i as f64 * weight;
        }
    }
    if denom.abs() <= 1e-12 * scale.max(1.0) {
        return Err(Error::HigherOrder(
            "sum_j K_j c_j0 yhat^(c_j0) vanishes; the 1/L^2 term is absent",
        ));
    }
    let l = path_len as f64;
    Ok(y_hat.powf(1.0 / l) - y_hat.ln() * numer / (l * l * denom))
}

/// Unperturbed root of a constraint polynomial in `(0, 1)`, located by
/// a coarse sign scan followed by bisection.
pub fn base_root(poly: &ConstraintPolynomial) -> Result<f64> {
    const STEPS: usize = 2048;
    let lo_edge = 1e-9;
    let hi_edge = 1.0 - 1e-9;
    let mut prev_y = lo_edge;
    let mut prev_f = poly.eval_base(prev_y);
    for k in 1..=STEPS {
        let y = lo_edge + (hi_edge - lo_edge) * k as f64 / STEPS as f64;
        let f = poly.eval_base(y);
        if prev_f == 0.0 {
            return Ok(prev_y);
        }
        if prev_f.signum() != f.signum() {
            return numeric::bisect(|v| poly.eval_base(v), prev_y, y, ROOT_TOL);
        }
        prev_y = y;
        prev_f = f;
    }
    Err(Error::NoBracket {
        lo: lo_edge,
        hi: hi_edge,
    })
}

/// Good interval in `x` for the nearly-full-length SPP with subpath
/// `L - q` and alternate path `L - r` at large `L`:
/// `xhat - (ln 3 / L^2)(3q - 2r) < x < xhat + (ln 3 / (3 L^2))(3q - 2r)`
/// around `xhat = (1/3)^(1/L)`. Empty unless `3q - 2r > 0`, i.e.
/// `q / r > 2/3`.
pub fn near_full_length_interval(q: u32, r: u32, path_len: u32) -> Option<(f64, f64)> {
    let margin = 3.0 * q as f64 - 2.0 * r as f64;
    if margin <= 0.0 {
        return None;
    }
    let l2 = (path_len as f64) * (path_len as f64);
    let x_hat = (1.0f64 / 3.0).powf(1.0 / path_len as f64);
    let ln3 = 3f64.ln();
    Some((x_hat - ln3 * margin / l2, x_hat + ln3 * margin / (3.0 * l2)))
}

/// First-order displacement of a `b = 0` root `yhat` when the
/// alternate path picks up an integer excess `m`:
/// `y* = yhat + m ln(yhat) (-yhat + 4 yhat^(1+a) - yhat^(2a))
///        / (L^2 (yhat + 4(1+a) yhat^(1+a) - 2 yhat^(2a)))`.
/// The shift is linear in `m`. A vanishing denominator is reported.
pub fn small_b_shift(m: i32, a: f64, path_len: u32, y_hat: f64) -> Result<f64> {
    let ya1 = y_hat.powf(1.0 + a);
    let y2a = y_hat.powf(2.0 * a);
    let denom = y_hat + 4.0 * (1.0 + a) * ya1 - 2.0 * y2a;
    if denom.abs() < 1e-12 {
        return Err(Error::HigherOrder("small-b denominator vanishes"));
    }
    let numer = -y_hat + 4.0 * ya1 - y2a;
    let l2 = (path_len as f64) * (path_len as f64);
    Ok(y_hat + m as f64 * y_hat.ln() * numer / (l2 * denom))
}

/// SPP gain with noisy operations, built from the noisy primitives for
/// the optimal-alternate geometry `b = 0`. The rescaled parameter is
/// `y = (x/c)^L`, the purified pair enters at `u = c y^a`, and the
/// direct strategy delivers the parameter `c y`:
/// `dC = P * C(x' y^(1-a)) - C(c y)` with `(x', P)` the noisy
/// purification of two copies of `u`. Reduces to [`delta_c_spp`] at
/// `b = 0` for perfect operations.
///
/// This derived form reproduces the transcription
/// [`noisy_delta_c_spp_transcribed`] on its upper branch; the two
/// differ by `c y / 4` on the lower branch, where only the derived
/// form has the correct perfect-operation limit.
pub fn noisy_delta_c_spp(y: f64, a: f64, noise: &NoiseModel) -> Result<f64> {
    let c = noise.swap_attenuation();
    let u = c * y.powf(a);
    if u > 1.0 {
        return Err(Error::Domain {
            name: "c * y^a",
            value: u,
            constraint: "c * y^a <= 1",
        });
    }
    if c * y > 1.0 {
        return Err(Error::Domain {
            name: "c * y",
            value: c * y,
            constraint: "c * y <= 1",
        });
    }
    let (purified, prob) = noisy_purify_equal(WernerState::from_valid(u), noise);
    let final_param = purified.x() * y.powf(1.0 - a);
    let qm = prob * (0.5 * (3.0 * final_param - 1.0)).max(0.0);
    Ok(qm - (0.5 * (3.0 * c * y - 1.0)).max(0.0))
}

/// Literal transcription of the published noisy-gain closed form,
/// exposed for comparison against [`noisy_delta_c_spp`]. Its lower
/// branch (`c y <= 1/3`) does not reduce to the perfect-operation gain.
pub fn noisy_delta_c_spp_transcribed(y: f64, a: f64, noise: &NoiseModel) -> f64 {
    let c = noise.swap_attenuation();
    let delta = noise.delta();
    let alpha = noise.alpha();
    let w = c * y;
    let g_tilde = if w <= 1.0 / 3.0 {
        1.0 - w
    } else {
        4.0 * w - 1.0
    };
    let ratio = 2.0 * (1.0 - delta) / (1.0 - 2.0 * delta);
    let sq = y.powf(a) - ratio * y;
    0.25 * (4.0 * c * c * (1.0 - delta).powi(2) / (1.0 - 2.0 * delta) * y * y
        - g_tilde
        - 2.0 * c * delta * y
        - alpha
        - c * c * (1.0 - 2.0 * delta) * sq * sq)
}

/// Maximum of the noisy SPP gain over `(y, a)`, attained at
/// `y = 1/(3c)` with `y^a = 2(1 - delta) y / (1 - 2 delta)`:
/// `(1/4) { 4(1-delta)^2 / (9(1-2delta)) - (1 + 2 delta)/3 - alpha }`.
/// Independent of the one-qubit reliability `p1`; equals `1/36` for
/// perfect operations.
pub fn noisy_delta_c_max(noise: &NoiseModel) -> f64 {
    let delta = noise.delta();
    let alpha = noise.alpha();
    0.25 * (4.0 * (1.0 - delta).powi(2) / (9.0 * (1.0 - 2.0 * delta))
        - (1.0 + 2.0 * delta) / 3.0
        - alpha)
}
