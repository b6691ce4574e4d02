//! Exact algebra for Werner and Bell-diagonal two-qubit states.
//!
//! A Werner state is identified by the single weight `x` of its Bell
//! component; every protocol in this crate manipulates that scalar.
//! Entanglement swapping multiplies Werner parameters, BBPSSW
//! purification maps a pair of parameters to a single higher one, and
//! the noisy-operation variants follow the depolarizing gate /
//! unsharp-measurement model with reliabilities `(p1, p2, eta)`.

use crate::{Error, Result};

/// Werner states are entangled strictly above this parameter value.
pub const SEPARABILITY_THRESHOLD: f64 = 1.0 / 3.0;

/// Two-qubit Werner state, `rho_W(x) = x |Phi00><Phi00| + (1-x)/4 * I`.
///
/// Construction rejects parameters outside `[0, 1]` rather than
/// clamping, so protocol bugs surface at the point of creation.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WernerState(f64);

impl WernerState {
    pub fn new(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain {
                name: "x",
                value: x,
                constraint: "0 <= x <= 1",
            });
        }
        Ok(WernerState(x))
    }

    /// Internal constructor for values that are in range by algebra.
    pub(crate) fn from_valid(x: f64) -> Self {
        debug_assert!((0.0..=1.0 + 1e-9).contains(&x), "werner parameter {x}");
        WernerState(x.min(1.0))
    }

    pub fn x(self) -> f64 {
        self.0
    }

    /// Overlap with the Bell state, `F = (3x + 1) / 4`.
    pub fn fidelity(self) -> f64 {
        (3.0 * self.0 + 1.0) / 4.0
    }

    /// `C(x) = max(0, (3x - 1) / 2)`.
    pub fn concurrence(self) -> f64 {
        concurrence_of_param(self.0)
    }

    pub fn is_entangled(self) -> bool {
        self.0 > SEPARABILITY_THRESHOLD
    }

    /// Bell-basis populations `((1+3x)/4, (1-x)/4, (1-x)/4, (1-x)/4)`.
    pub fn to_bell_diagonal(self) -> BellDiagonalState {
        let x = self.0;
        let rest = (1.0 - x) / 4.0;
        BellDiagonalState {
            populations: [(1.0 + 3.0 * x) / 4.0, rest, rest, rest],
        }
    }
}

/// Concurrence of the Werner parameter without constructing a state.
pub(crate) fn concurrence_of_param(x: f64) -> f64 {
    (0.5 * (3.0 * x - 1.0)).max(0.0)
}

/// State diagonal in the Bell basis, stored as the four populations of
/// `|Phi00>, |Phi01>, |Phi10>, |Phi11>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState {
    populations: [f64; 4],
}

impl BellDiagonalState {
    /// Tolerance on the normalization check at construction.
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(populations: [f64; 4]) -> Result<Self> {
        for &p in &populations {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Domain {
                    name: "population",
                    value: p,
                    constraint: "0 <= p <= 1",
                });
            }
        }
        let sum: f64 = populations.iter().sum();
        if (sum - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::Domain {
                name: "population sum",
                value: sum,
                constraint: "sum = 1 within 1e-12",
            });
        }
        Ok(BellDiagonalState { populations })
    }

    pub fn populations(&self) -> [f64; 4] {
        self.populations
    }

    /// `max(0, 2 * largest population - 1)` for Bell-diagonal states.
    pub fn concurrence(&self) -> f64 {
        let max = self.populations.iter().cloned().fold(f64::MIN, f64::max);
        (2.0 * max - 1.0).max(0.0)
    }
}

/// Entanglement swapping of two Bell-diagonal states: the four bilinear
/// population combinations. Output is normalized whenever the inputs
/// are.
pub fn swap_bell_diagonal(s1: &BellDiagonalState, s2: &BellDiagonalState) -> BellDiagonalState {
    let [a, b, c, d] = s1.populations;
    let [a2, b2, c2, d2] = s2.populations;
    BellDiagonalState {
        populations: [
            a * a2 + b * b2 + c * c2 + d * d2,
            a * b2 + b * a2 + c * d2 + d * c2,
            a * c2 + b * d2 + c * a2 + d * b2,
            a * d2 + b * c2 + c * b2 + d * a2,
        ],
    }
}

/// Swapping two Werner links yields the Werner link `x1 * x2`.
pub fn swap_werner(x1: WernerState, x2: WernerState) -> WernerState {
    WernerState::from_valid(x1.x() * x2.x())
}

/// One round of BBPSSW purification on two Werner links. Returns the
/// purified state `x' = (x1 + x2 + 4 x1 x2) / (3 + 3 x1 x2)` and the
/// success probability `(1 + x1 x2) / 2`; failure leaves two separable
/// states.
pub fn purify_bbpssw(x1: WernerState, x2: WernerState) -> (WernerState, f64) {
    let (a, b) = (x1.x(), x2.x());
    let prod = a * b;
    let out = (a + b + 4.0 * prod) / (3.0 + 3.0 * prod);
    (WernerState::from_valid(out), (1.0 + prod) / 2.0)
}

/// The smallest partner `x_low` for which purifying `(x, x_low)` still
/// returns `x`: the solution of `x'(x, x_low) = x`, in closed form
/// `x_low = 2x / (1 + 4x - 3x^2)`. Defined for `1/3 < x < 1`.
pub fn purify_break_even(x: WernerState) -> Result<WernerState> {
    let v = x.x();
    if v <= SEPARABILITY_THRESHOLD || v >= 1.0 {
        return Err(Error::Domain {
            name: "x",
            value: v,
            constraint: "1/3 < x < 1",
        });
    }
    Ok(WernerState::from_valid(
        2.0 * v / (1.0 + 4.0 * v - 3.0 * v * v),
    ))
}

/// Reliabilities of the noisy operations: `p1` for one-qubit gates,
/// `p2` for two-qubit gates, `eta` for measurements. The derived
/// quantities are `delta = 2 eta (1 - eta)`, `alpha = (1 - p2^2)/p2^2`
/// and the swap attenuation `c = 3 / (p1 p2 (4 eta^2 - 1)) >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    p1: f64,
    p2: f64,
    eta: f64,
}

impl NoiseModel {
    /// `eta <= 1/2` is rejected: the swap attenuation would be infinite
    /// or negative.
    pub fn new(p1: f64, p2: f64, eta: f64) -> Result<Self> {
        if !(p1 > 0.0 && p1 <= 1.0) {
            return Err(Error::Domain {
                name: "p1",
                value: p1,
                constraint: "0 < p1 <= 1",
            });
        }
        if !(p2 > 0.0 && p2 <= 1.0) {
            return Err(Error::Domain {
                name: "p2",
                value: p2,
                constraint: "0 < p2 <= 1",
            });
        }
        if !(eta > 0.5 && eta <= 1.0) {
            return Err(Error::Domain {
                name: "eta",
                value: eta,
                constraint: "1/2 < eta <= 1",
            });
        }
        Ok(NoiseModel { p1, p2, eta })
    }

    pub fn perfect() -> Self {
        NoiseModel {
            p1: 1.0,
            p2: 1.0,
            eta: 1.0,
        }
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Measurement unsharpness `delta = 2 eta (1 - eta)`.
    pub fn delta(&self) -> f64 {
        2.0 * self.eta * (1.0 - self.eta)
    }

    /// Two-qubit gate admixture `alpha = (1 - p2^2) / p2^2`.
    pub fn alpha(&self) -> f64 {
        (1.0 - self.p2 * self.p2) / (self.p2 * self.p2)
    }

    /// Per-swap attenuation `c = 3 / (p1 p2 (4 eta^2 - 1))`; equals 1
    /// exactly for perfect operations.
    pub fn swap_attenuation(&self) -> f64 {
        3.0 / (self.p1 * self.p2 * (4.0 * self.eta * self.eta - 1.0))
    }
}

/// Noisy BBPSSW on two equal inputs `x`:
/// `x' = (2x + 4x^2)(1 - delta) / (3(1 + alpha) + 3x^2(1 - 2 delta))`,
/// succeeding with probability `(1 + alpha + x^2 (1 - 2 delta)) / 2`.
/// Reduces to [`purify_bbpssw`] on equal inputs when the operations are
/// perfect. The unequal-input noisy map is not defined here.
pub fn noisy_purify_equal(x: WernerState, noise: &NoiseModel) -> (WernerState, f64) {
    let v = x.x();
    let delta = noise.delta();
    let alpha = noise.alpha();
    let out = (2.0 * v + 4.0 * v * v) * (1.0 - delta)
        / (3.0 * (1.0 + alpha) + 3.0 * v * v * (1.0 - 2.0 * delta));
    let prob = (1.0 + alpha + v * v * (1.0 - 2.0 * delta)) / 2.0;
    (WernerState::from_valid(out), prob)
}

/// Noisy swapping along a chain of `n_links` equal links:
/// `x' = x^n / c^(n-1)`. One link is returned unchanged. The result
/// cannot exceed 1 because `c >= 1`.
pub fn noisy_swap_chain(x: WernerState, n_links: u32, noise: &NoiseModel) -> WernerState {
    assert!(n_links >= 1, "a chain has at least one link");
    let c = noise.swap_attenuation();
    let ratio = x.x() / c;
    WernerState::from_valid(x.x() * ratio.powi(n_links as i32 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::IDENTITY_TOL;

    fn w(x: f64) -> WernerState {
        WernerState::new(x).unwrap()
    }

    #[test]
    fn construction_rejects_out_of_range() {
        assert!(WernerState::new(-0.01).is_err());
        assert!(WernerState::new(1.01).is_err());
        assert!(WernerState::new(0.0).is_ok());
        assert!(WernerState::new(1.0).is_ok());
    }

    #[test]
    fn concurrence_values() {
        assert_eq!(w(1.0).concurrence(), 1.0);
        assert!(w(1.0 / 3.0).concurrence().abs() < IDENTITY_TOL);
        assert!((w(0.7).concurrence() - 0.55).abs() < IDENTITY_TOL);
        // entangled strictly above 1/3
        assert!(!w(1.0 / 3.0).is_entangled());
        assert!(w(1.0 / 3.0 + 1e-9).is_entangled());
    }

    #[test]
    fn fidelity_values() {
        assert_eq!(w(1.0).fidelity(), 1.0);
        assert_eq!(w(0.0).fidelity(), 0.25);
        assert!((w(1.0 / 3.0).fidelity() - 0.5).abs() < IDENTITY_TOL);
    }

    #[test]
    fn bell_diagonal_conversion() {
        assert_eq!(
            w(1.0).to_bell_diagonal().populations(),
            [1.0, 0.0, 0.0, 0.0]
        );
        for (p, e) in w(0.0)
            .to_bell_diagonal()
            .populations()
            .iter()
            .zip([0.25; 4])
        {
            assert!((p - e).abs() < IDENTITY_TOL);
        }
        let thirds = w(1.0 / 3.0).to_bell_diagonal().populations();
        assert!((thirds[0] - 0.5).abs() < IDENTITY_TOL);
        for p in &thirds[1..] {
            assert!((p - 1.0 / 6.0).abs() < IDENTITY_TOL);
        }
    }

    #[test]
    fn bell_diagonal_validation() {
        assert!(BellDiagonalState::new([0.5, 0.5, 0.1, -0.1]).is_err());
        assert!(BellDiagonalState::new([0.5, 0.3, 0.1, 0.2]).is_err()); // sums to 1.1
        assert!(BellDiagonalState::new([0.25; 4]).is_ok());
    }

    #[test]
    fn perfect_bell_swap_is_identity() {
        let bell = BellDiagonalState::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        let other = BellDiagonalState::new([0.4, 0.3, 0.2, 0.1]).unwrap();
        let out = swap_bell_diagonal(&bell, &other);
        for (p, e) in out.populations().iter().zip(other.populations()) {
            assert!((p - e).abs() < IDENTITY_TOL);
        }
    }

    #[test]
    fn swapped_werner_populations_match_product_rule() {
        let out = swap_bell_diagonal(&w(0.6).to_bell_diagonal(), &w(0.5).to_bell_diagonal());
        let expect = w(0.3).to_bell_diagonal().populations();
        for (p, e) in out.populations().iter().zip(expect) {
            assert!((p - e).abs() < IDENTITY_TOL);
        }
    }

    #[test]
    fn swap_with_bell_diagonal_concurrence() {
        // swapping rho_W(x) with a Bell-diagonal state of largest
        // population A gives concurrence ((4A - 1) x - 1) / 2
        let x = 0.9;
        let a = 0.85;
        let other = BellDiagonalState::new([a, 0.07, 0.05, 0.03]).unwrap();
        let out = swap_bell_diagonal(&w(x).to_bell_diagonal(), &other);
        let expect = ((4.0 * a - 1.0) * x - 1.0) / 2.0;
        assert!((out.concurrence() - expect).abs() < IDENTITY_TOL);
    }

    #[test]
    fn swap_werner_values() {
        assert!((swap_werner(w(0.9), w(0.8)).x() - 0.72).abs() < IDENTITY_TOL);
        assert_eq!(swap_werner(w(0.37), w(1.0)).x(), 0.37);
    }

    #[test]
    fn purify_values() {
        let (s, p) = purify_bbpssw(w(1.0), w(1.0));
        assert_eq!((s.x(), p), (1.0, 1.0));

        // fixed point at the separability threshold
        let (s, p) = purify_bbpssw(w(1.0 / 3.0), w(1.0 / 3.0));
        assert!((s.x() - 1.0 / 3.0).abs() < IDENTITY_TOL);
        assert!((p - 5.0 / 9.0).abs() < IDENTITY_TOL);

        let (s, p) = purify_bbpssw(w(0.8), w(0.8));
        assert!((s.x() - 0.845528455284552845).abs() < IDENTITY_TOL);
        assert!((p - 0.82).abs() < IDENTITY_TOL);
    }

    #[test]
    fn break_even_partner() {
        let t = purify_break_even(w(0.8)).unwrap();
        assert!((t.x() - 0.701754385964912280).abs() < IDENTITY_TOL);
        // purifying against the break-even partner returns x itself
        let (back, _) = purify_bbpssw(w(0.8), t);
        assert!((back.x() - 0.8).abs() < IDENTITY_TOL);

        // limits: both curves vanish at x = 1 and cross zero at x = 1/3
        let near_one = purify_break_even(w(1.0 - 1e-9)).unwrap();
        assert!((near_one.x() - 1.0).abs() < 1e-8);
        let near_third = purify_break_even(w(1.0 / 3.0 + 1e-9)).unwrap();
        assert!((near_third.x() - 1.0 / 3.0).abs() < 1e-8);

        assert!(purify_break_even(w(1.0 / 3.0)).is_err());
        assert!(purify_break_even(w(1.0)).is_err());
        assert!(purify_break_even(w(0.2)).is_err());
    }

    #[test]
    fn break_even_agrees_with_bisection() {
        // independent oracle: solve x'(x, t) = x for t by bisection
        let x = 0.8;
        let f = |t: f64| {
            let (out, _) = purify_bbpssw(w(x), w(t));
            out.x() - x
        };
        let root = crate::numeric::bisect(f, 0.4, x, 1e-13).unwrap();
        assert!((purify_break_even(w(x)).unwrap().x() - root).abs() < 1e-11);
    }

    #[test]
    fn noise_model_validation_and_derived() {
        assert!(NoiseModel::new(1.0, 1.0, 0.5).is_err());
        assert!(NoiseModel::new(0.0, 1.0, 0.9).is_err());
        assert!(NoiseModel::new(1.0, 1.1, 0.9).is_err());

        let perfect = NoiseModel::perfect();
        assert_eq!(perfect.swap_attenuation(), 1.0);
        assert_eq!(perfect.delta(), 0.0);
        assert_eq!(perfect.alpha(), 0.0);

        let n = NoiseModel::new(0.99, 0.99, 0.99).unwrap();
        assert!((n.swap_attenuation() - 1.048114008978648).abs() < 1e-12);
        assert!(n.swap_attenuation() >= 1.0);
        assert!(n.delta() >= 0.0 && n.delta() < 0.5);
        assert!(n.alpha() >= 0.0);
    }

    #[test]
    fn noisy_purify_reduces_to_perfect() {
        let perfect = NoiseModel::perfect();
        for x in [0.0, 0.3, 0.8, 1.0] {
            let (a, pa) = noisy_purify_equal(w(x), &perfect);
            let (b, pb) = purify_bbpssw(w(x), w(x));
            assert!((a.x() - b.x()).abs() < IDENTITY_TOL);
            assert!((pa - pb).abs() < IDENTITY_TOL);
        }
        let (s, p) = noisy_purify_equal(w(1.0), &perfect);
        assert_eq!((s.x(), p), (1.0, 1.0));
    }

    #[test]
    fn noisy_purify_arithmetic_oracle() {
        // direct evaluation with delta = 0.0198, alpha = (1 - 0.9801)/0.9801
        let noise = NoiseModel::new(1.0, 0.99, 0.99).unwrap();
        let delta: f64 = 0.0198;
        let alpha = (1.0 - 0.9801f64) / 0.9801;
        let x: f64 = 0.8;
        let expect_x = (2.0 * x + 4.0 * x * x) * (1.0 - delta)
            / (3.0 * (1.0 + alpha) + 3.0 * x * x * (1.0 - 2.0 * delta));
        let expect_p = (1.0 + alpha + x * x * (1.0 - 2.0 * delta)) / 2.0;
        let (s, p) = noisy_purify_equal(w(x), &noise);
        assert!((s.x() - expect_x).abs() < IDENTITY_TOL);
        assert!((p - expect_p).abs() < IDENTITY_TOL);
    }

    #[test]
    fn noisy_swap_chain_values() {
        let noise = NoiseModel::new(0.9, 0.9, 0.9).unwrap();
        assert_eq!(noisy_swap_chain(w(0.77), 1, &noise).x(), 0.77);

        let perfect = NoiseModel::perfect();
        assert!((noisy_swap_chain(w(0.9), 3, &perfect).x() - 0.729).abs() < IDENTITY_TOL);

        let n = NoiseModel::new(0.99, 0.99, 0.99).unwrap();
        let c = n.swap_attenuation();
        assert!((noisy_swap_chain(w(0.9), 3, &n).x() - 0.729 / (c * c)).abs() < IDENTITY_TOL);
    }
}
