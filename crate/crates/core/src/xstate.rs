//! The two-qubit X state and its closed-form correlation measures.
//!
//! All information quantities use base-2 logarithms and are reported in
//! bits. The state is parameterized by the mixing weight `p` and the two
//! coherence magnitudes `b` and `c`; its matrix has diagonal
//! `(p/2, (1-p)/2, (1-p)/2, p/2)` and anti-diagonal `(b/2, c/2, c/2, b/2)`
//! in the basis `|+,+>, |+,->, |-,+>, |-,->`.

use crate::{Error, Result};

/// Inputs within this distance outside a closed domain are snapped to the
/// boundary; anything farther is rejected. Keeps quadrature round-off from
/// tripping entropy evaluations.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// `x lg x` with the `0 lg 0 := 0` convention.
pub(crate) fn xlg(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

pub(crate) fn k_clamped(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    -xlg(0.5 * (1.0 + x)) - xlg(0.5 * (1.0 - x))
}

/// `K(x) = -((1+x)/2) lg((1+x)/2) - ((1-x)/2) lg((1-x)/2)`: the entropy in
/// bits of a binary split with imbalance `x`. `K(0) = 1`, `K(1) = 0`,
/// strictly decreasing on `[0, 1]`.
pub fn k_function(x: f64) -> Result<f64> {
    if !x.is_finite() || x < -BOUNDARY_TOL || x > 1.0 + BOUNDARY_TOL {
        return Err(Error::InvalidInput(format!("K is defined on [0, 1], got {x}")));
    }
    Ok(k_clamped(x))
}

fn snap(value: f64, lo: f64, hi: f64, name: &str) -> Result<f64> {
    if !value.is_finite() || value < lo - BOUNDARY_TOL || value > hi + BOUNDARY_TOL {
        return Err(Error::InvalidState(format!(
            "{name} must lie in [{lo}, {hi}], got {value}"
        )));
    }
    Ok(value.clamp(lo, hi))
}

/// X-form two-qubit density matrix carried as `(p, b, c)`.
///
/// Positivity is equivalent to `0 <= b <= p` and `0 <= c <= 1 - p`; the four
/// eigenvalues are `(p +/- b)/2` and `((1-p) +/- c)/2`, and the trace is 1
/// by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    p: f64,
    b: f64,
    c: f64,
}

impl XState {
    pub fn new(p: f64, b: f64, c: f64) -> Result<Self> {
        let p = snap(p, 0.0, 1.0, "p")?;
        let b = snap(b, 0.0, p, "b")?;
        let c = snap(c, 0.0, 1.0 - p, "c")?;
        Ok(Self { p, b, c })
    }

    /// The initial Bell mixture: weight `p` on the outer Bell state, so
    /// `b(0) = p` and `c(0) = 1 - p`.
    pub fn bell_mixture(p: f64) -> Result<Self> {
        Self::new(p, p, 1.0 - p)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Population imbalance `a = 2p - 1` between the two Bell sectors.
    pub fn a(&self) -> f64 {
        2.0 * self.p - 1.0
    }

    /// `w = max(|a|, b + c)`, the argument of `K` in the classical
    /// correlation. The state invariants keep `b + c <= 1`.
    pub fn w(&self) -> f64 {
        self.a().abs().max(self.b + self.c)
    }

    /// Eigenvalues `(p +/- b)/2`, `((1-p) +/- c)/2` of the 4x4 matrix.
    pub fn eigenvalues(&self) -> [f64; 4] {
        [
            0.5 * (self.p + self.b),
            0.5 * (self.p - self.b),
            0.5 * (1.0 - self.p + self.c),
            0.5 * (1.0 - self.p - self.c),
        ]
    }

    /// Classical correlation `C = 1 - K(w)` in bits: the information about A
    /// extractable by the best projective measurement on B.
    pub fn classical_correlation(&self) -> f64 {
        1.0 - k_clamped(self.w())
    }

    /// Quantum discord in bits:
    /// `D = 1 + p lg p + (1-p) lg(1-p) + K(w) - p K(b/p) - (1-p) K(c/(1-p))`,
    /// with the vanishing-weight ratios taken as 0.
    pub fn quantum_discord(&self) -> f64 {
        let outer = if self.p == 0.0 { 0.0 } else { self.p * k_clamped(self.b / self.p) };
        let inner = if self.p == 1.0 {
            0.0
        } else {
            (1.0 - self.p) * k_clamped(self.c / (1.0 - self.p))
        };
        1.0 + xlg(self.p) + xlg(1.0 - self.p) + k_clamped(self.w()) - outer - inner
    }

    /// Von Neumann entropy of the joint state in bits, from the closed-form
    /// eigenvalues.
    pub fn joint_entropy(&self) -> f64 {
        -self.eigenvalues().iter().copied().map(xlg).sum::<f64>()
    }

    /// Mutual information `I = S(A) + S(B) - S(AB) = 2 - S(AB)`; both
    /// reduced states of this family are maximally mixed.
    pub fn mutual_information(&self) -> f64 {
        2.0 - self.joint_entropy()
    }

    /// Bundle the correlation measures at time `t`.
    pub fn correlation_point(&self, t: f64) -> CorrelationPoint {
        CorrelationPoint {
            t,
            b: self.b,
            c: self.c,
            classical: self.classical_correlation(),
            discord: self.quantum_discord(),
            mutual_information: self.mutual_information(),
            entropy: self.joint_entropy(),
        }
    }
}

/// One sampled instant of the correlation dynamics, everything in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationPoint {
    pub t: f64,
    pub b: f64,
    pub c: f64,
    pub classical: f64,
    pub discord: f64,
    pub mutual_information: f64,
    pub entropy: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const H_08: f64 = 0.721_928_094_887_362_3; // binary entropy of 0.8

    #[test]
    fn k_endpoints_and_interior() {
        assert_eq!(k_function(0.0).unwrap(), 1.0);
        assert_eq!(k_function(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(k_function(0.6).unwrap(), H_08, epsilon = 1e-15);
    }

    #[test]
    fn k_clamps_boundary_noise_and_rejects_farther() {
        assert_eq!(k_function(-1e-13).unwrap(), 1.0);
        assert_eq!(k_function(1.0 + 1e-13).unwrap(), 0.0);
        assert!(k_function(-1e-9).is_err());
        assert!(k_function(1.0 + 1e-9).is_err());
        assert!(k_function(f64::NAN).is_err());
    }

    #[test]
    fn k_is_strictly_decreasing() {
        let mut prev = k_clamped(0.0);
        for i in 1..=100 {
            let cur = k_clamped(i as f64 / 100.0);
            assert!(cur < prev);
            prev = cur;
        }
    }

    #[test]
    fn state_invariants_enforced() {
        assert!(XState::new(0.8, 0.9, 0.1).is_err()); // b > p
        assert!(XState::new(0.8, 0.5, 0.3).is_err()); // c > 1 - p
        assert!(XState::new(1.2, 0.0, 0.0).is_err());
        assert!(XState::new(0.8, -0.1, 0.0).is_err());
        // boundary noise is snapped
        let s = XState::new(0.8, 0.8 + 1e-13, 0.2).unwrap();
        assert_eq!(s.b(), 0.8);
    }

    #[test]
    fn bell_mixture_is_fully_coherent() {
        let s = XState::bell_mixture(0.8).unwrap();
        assert_eq!(s.b(), 0.8);
        assert_abs_diff_eq!(s.c(), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.a(), 0.6, epsilon = 1e-15);
    }

    #[test]
    fn classical_correlation_examples() {
        let t0 = XState::new(0.8, 0.8, 0.2).unwrap();
        assert_abs_diff_eq!(t0.classical_correlation(), 1.0, epsilon = 1e-15);

        let dephased = XState::new(0.8, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(dephased.classical_correlation(), 1.0 - H_08, epsilon = 1e-15);

        let uncorrelated = XState::new(0.5, 0.0, 0.0).unwrap();
        assert_eq!(uncorrelated.classical_correlation(), 0.0);
    }

    #[test]
    fn discord_examples() {
        let t0 = XState::new(0.8, 0.8, 0.2).unwrap();
        assert_abs_diff_eq!(t0.quantum_discord(), 1.0 - H_08, epsilon = 1e-15);

        let dephased = XState::new(0.8, 0.0, 0.0).unwrap();
        assert_eq!(dephased.quantum_discord(), 0.0);
    }

    #[test]
    fn discord_limits_at_pure_p() {
        let zero = XState::new(0.0, 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(zero.quantum_discord(), 1.0, epsilon = 1e-15);
        let one = XState::new(1.0, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(one.quantum_discord(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn entropy_examples() {
        let t0 = XState::new(0.8, 0.8, 0.2).unwrap();
        assert_abs_diff_eq!(t0.joint_entropy(), H_08, epsilon = 1e-15);

        let dephased = XState::new(0.8, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(dephased.joint_entropy(), 1.0 + H_08, epsilon = 1e-15);

        let pure = XState::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(pure.joint_entropy(), 0.0);
    }

    #[test]
    fn mutual_information_examples() {
        let t0 = XState::new(0.8, 0.8, 0.2).unwrap();
        assert_abs_diff_eq!(t0.mutual_information(), 2.0 - H_08, epsilon = 1e-15);
        let product = XState::new(0.5, 0.0, 0.0).unwrap();
        assert_eq!(product.mutual_information(), 0.0);
    }

    #[test]
    fn eigenvalues_are_nonnegative_and_sum_to_one() {
        let s = XState::new(0.7, 0.3, 0.25).unwrap();
        let ev = s.eigenvalues();
        assert!(ev.iter().all(|&l| l >= 0.0));
        assert_abs_diff_eq!(ev.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn identity_holds_on_a_seeded_sample() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let p: f64 = rng.random_range(0.0..=1.0);
            let b: f64 = rng.random_range(0.0..=p);
            let c: f64 = rng.random_range(0.0..=(1.0 - p));
            let s = XState::new(p, b, c).unwrap();
            let lhs = s.mutual_information();
            let rhs = s.classical_correlation() + s.quantum_discord();
            assert!((lhs - rhs).abs() <= 1e-12, "I = {lhs}, C + D = {rhs} at ({p}, {b}, {c})");
            assert!(s.classical_correlation() >= 0.0);
            assert!(s.quantum_discord() >= -1e-12);
            assert!(lhs >= s.classical_correlation().max(s.quantum_discord()) - 1e-12);
        }
    }
}
