//! The direct strategy and the swap-and-purify quantum protocol.
//!
//! All quantities are expressed in the rescaled variables `y = x^L`,
//! `a_i = n_i / L`, `b_i = m_i / L`, which removes the path length from
//! the constraint equations. A [`SegmentPlan`] fixes `y` together with
//! the fractional geometry of every purified segment; the expected
//! concurrence is the product of per-segment success probabilities
//! times the concurrence of the fully swapped chain, with failures
//! contributing zero.

use crate::numeric::{self, ROOT_TOL};
use crate::werner::{concurrence_of_param, purify_bbpssw, WernerState, SEPARABILITY_THRESHOLD};
use crate::{Error, Result};

/// One purified segment: fractional subpath length `a` and fractional
/// excess alternate-path length `b` (the alternate path has fractional
/// length `a + b`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
}

impl Segment {
    pub fn new(a: f64, b: f64) -> Self {
        Segment { a, b }
    }
}

/// A protocol instance in rescaled variables.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentPlan {
    y: f64,
    segments: Vec<Segment>,
}

impl SegmentPlan {
    /// Requires `y` in `(0, 1]`, each `a_i` in `(0, 1)`, each `b_i` in
    /// `[0, 1)` and `sum a_i <= 1` (the subpaths must fit into the
    /// shortest path). `b_i >= a_i` is allowed here; such segments
    /// simply fail the improvement constraint.
    pub fn new(y: f64, segments: Vec<Segment>) -> Result<Self> {
        if !(y > 0.0 && y <= 1.0) {
            return Err(Error::Domain {
                name: "y",
                value: y,
                constraint: "0 < y <= 1",
            });
        }
        let mut total_a = 0.0;
        for s in &segments {
            if !(s.a > 0.0 && s.a < 1.0) {
                return Err(Error::Domain {
                    name: "a",
                    value: s.a,
                    constraint: "0 < a < 1",
                });
            }
            if !(0.0..1.0).contains(&s.b) {
                return Err(Error::Domain {
                    name: "b",
                    value: s.b,
                    constraint: "0 <= b < 1",
                });
            }
            total_a += s.a;
        }
        if total_a > 1.0 + 1e-12 {
            return Err(Error::Domain {
                name: "sum of a_i",
                value: total_a,
                constraint: "sum a_i <= 1",
            });
        }
        Ok(SegmentPlan { y, segments })
    }

    /// The direct strategy: no purified segments at all.
    pub fn direct_only(y: f64) -> Result<Self> {
        SegmentPlan::new(y, Vec::new())
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Same geometry at a different rescaled parameter.
    pub fn with_y(&self, y: f64) -> Result<Self> {
        SegmentPlan::new(y, self.segments.clone())
    }
}

/// Rescaled purified parameter of one segment,
/// `p_y(a, b) = (y^a + y^(a+b) + 4 y^(2a+b)) / (3 + 3 y^(2a+b))`.
pub fn purified_param(y: f64, a: f64, b: f64) -> f64 {
    let tail = y.powf(2.0 * a + b);
    (y.powf(a) + y.powf(a + b) + 4.0 * tail) / (3.0 + 3.0 * tail)
}

/// Rescaled success probability of one segment,
/// `pi_y(a, b) = (1 + y^(2a+b)) / 2`.
pub fn purification_prob(y: f64, a: f64, b: f64) -> f64 {
    (1.0 + y.powf(2.0 * a + b)) / 2.0
}

/// Swap a subpath of `n` links and a disjoint alternate path of `n + m`
/// links down to one link each, then purify the pair. Integer-length
/// version of [`purified_param`] / [`purification_prob`].
pub fn swap_purify_segment(x: WernerState, n: u32, m: u32) -> (WernerState, f64) {
    let sub = WernerState::from_valid(x.x().powi(n as i32));
    let alt = WernerState::from_valid(x.x().powi((n + m) as i32));
    purify_bbpssw(sub, alt)
}

/// Concurrence after swapping along the whole shortest path: `C(x^L)`.
pub fn direct_concurrence(x: WernerState, path_len: u32) -> f64 {
    concurrence_of_param(x.x().powi(path_len as i32))
}

/// Final Werner parameter of the plan conditioned on every purification
/// succeeding: `y^(1 - sum a_j) * prod p_y(a_i, b_i)`.
fn final_param(plan: &SegmentPlan) -> f64 {
    let y = plan.y();
    let mut total_a = 0.0;
    let mut prod = 1.0;
    for s in plan.segments() {
        total_a += s.a;
        prod *= purified_param(y, s.a, s.b);
    }
    y.powf(1.0 - total_a) * prod
}

/// Probability that every purification in the plan succeeds.
fn success_prob(plan: &SegmentPlan) -> f64 {
    plan.segments()
        .iter()
        .map(|s| purification_prob(plan.y(), s.a, s.b))
        .product()
}

/// Expected concurrence of the quantum protocol. A plan succeeds only
/// when all of its purifications succeed; failure contributes zero
/// concurrence. Always in `[0, 1]`; an empty plan reproduces the
/// direct strategy.
pub fn qm_expected_concurrence(plan: &SegmentPlan) -> f64 {
    success_prob(plan) * concurrence_of_param(final_param(plan))
}

/// Gain over the direct strategy, `C_QM - C(y)`. Negative values mean
/// the plan is worse than plain swapping.
pub fn delta_concurrence(plan: &SegmentPlan) -> f64 {
    qm_expected_concurrence(plan) - concurrence_of_param(plan.y())
}

/// Truth values of the three strict admissibility constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    /// Per segment: purifying beats swapping the subpath alone,
    /// `p_y(a_i, b_i) > y^(a_i)`.
    pub purification_improves: Vec<bool>,
    /// The protocol delivers positive concurrence on success,
    /// `y^(1 - sum a) * prod p > 1/3`.
    pub positive_concurrence: bool,
    /// The expected concurrence exceeds the direct strategy.
    pub beats_direct: bool,
}

impl ConstraintCheck {
    pub fn is_good(&self) -> bool {
        self.purification_improves.iter().all(|&x| x)
            && self.positive_concurrence
            && self.beats_direct
    }
}

pub fn check_constraints(plan: &SegmentPlan) -> ConstraintCheck {
    let y = plan.y();
    let purification_improves = plan
        .segments()
        .iter()
        .map(|s| purified_param(y, s.a, s.b) > y.powf(s.a))
        .collect();
    ConstraintCheck {
        purification_improves,
        positive_concurrence: final_param(plan) > SEPARABILITY_THRESHOLD,
        beats_direct: delta_concurrence(plan) > 0.0,
    }
}

/// Good-interval endpoints `(y_lo, y_hi)` for a fixed segment geometry:
/// `y_lo` is the positive-concurrence root in `(0, 1/3]`, `y_hi` the
/// vanishing-gain root in `[1/3, 1)`. Both coincide at `1/3` exactly
/// when the gain vanishes there. Fails with [`Error::NoGoodInterval`]
/// when no `y` satisfies all three constraints (for example when some
/// `b_i` is too large).
pub fn good_interval(segments: &[Segment]) -> Result<(f64, f64)> {
    if segments.is_empty() {
        return Err(Error::NoGoodInterval);
    }
    let plan_at = |y: f64| SegmentPlan::new(y, segments.to_vec());
    let third = SEPARABILITY_THRESHOLD;

    // The gain is maximal at y = 1/3 for every plan of this family, so
    // a positive gain there is equivalent to a nonempty good interval.
    let at_third = plan_at(third)?;
    if delta_concurrence(&at_third) <= 0.0 {
        // Degenerate boundary case: both roots sit exactly at 1/3.
        if final_param(&at_third) >= third - 1e-14 {
            return Ok((third, third));
        }
        return Err(Error::NoGoodInterval);
    }

    let y_lo = numeric::bisect(
        |y| final_param(&plan_at(y).expect("bracket stays in domain")) - third,
        1e-12,
        third,
        ROOT_TOL,
    )?;
    let y_hi = numeric::bisect(
        |y| delta_concurrence(&plan_at(y).expect("bracket stays in domain")),
        third,
        1.0 - 1e-9,
        ROOT_TOL,
    )?;

    // The fidelity-improvement constraint is redundant for single
    // purifications; verify it holds on the computed interval anyway.
    let mid = plan_at(0.5 * (y_lo + y_hi))?;
    if !check_constraints(&mid).is_good() {
        return Err(Error::NoGoodInterval);
    }
    Ok((y_lo, y_hi))
}

/// Map a rescaled root back to the physical link parameter,
/// `x* = (y*)^(1/L)`. Monotone, so endpoint ordering is preserved.
pub fn unscale_root(y_star: f64, path_len: u32) -> f64 {
    y_star.powf(1.0 / path_len as f64)
}

/// One term `K * y^(c0 + sum_i c_i d_i)` of a constraint function in
/// the generic exponential-polynomial form.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyTerm {
    pub coefficient: f64,
    pub base_exponent: f64,
    /// Exponent weight of each perturbation parameter `d_i`.
    pub weights: Vec<f64>,
}

/// Constraint function `f(y, {d_i}) = sum_j K_j y^(c_j0 + sum_i c_ji d_i)`.
/// The good-interval endpoints are its roots in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintPolynomial {
    pub terms: Vec<PolyTerm>,
}

impl ConstraintPolynomial {
    pub fn new(terms: Vec<PolyTerm>) -> Self {
        ConstraintPolynomial { terms }
    }

    pub fn eval(&self, y: f64, d: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let exp =
                    t.base_exponent + t.weights.iter().zip(d).map(|(c, di)| c * di).sum::<f64>();
                t.coefficient * y.powf(exp)
            })
            .sum()
    }

    /// Value with all perturbation parameters set to zero.
    pub fn eval_base(&self, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient * y.powf(t.base_exponent))
            .sum()
    }
}
