//! Brute-force verification of the classical-correlation maximization.
//!
//! Projective measurements on subsystem B are swept over the Bloch sphere
//! and the extracted information `S(rho_A) - sum_k p_k S(rho_k)` is computed
//! from the dense 4x4 density matrix, independently of the analytic X-state
//! result. The closed-form landscape `G(theta, phi) = 1 - K(g)` is also
//! provided for cross-checks.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::xstate::{k_clamped, xlg, XState};
use crate::{Error, Result};

pub const HERMITICITY_TOL: f64 = 1e-14;
pub const TRACE_TOL: f64 = 1e-12;
pub const EIGENVALUE_TOL: f64 = 1e-10;

/// Measurement branches with probability below this are reported as
/// degenerate; their conditional state is replaced by the maximally mixed
/// one (the entropy contribution carries the vanishing weight anyway).
pub const DEGENERATE_OUTCOME_TOL: f64 = 1e-14;

/// A projective measurement basis on subsystem B, parameterized by the
/// Bloch angles of its first state:
/// `|psi1> = cos(theta/2)|-> + e^{i phi} sin(theta/2)|+>` and
/// `|psi2> = cos(theta/2)|+> - e^{-i phi} sin(theta/2)|->`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    /// `phi` is stored modulo 2 pi; `theta` is used as given (the poles
    /// `theta = 0, pi` are the sigma_z basis, `theta = pi/2` sigma_x).
    pub fn new(theta: f64, phi: f64) -> Self {
        let phi = phi.rem_euclid(std::f64::consts::TAU);
        Self { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The two orthonormal basis states, components ordered `(|+>, |->)`.
    pub fn states(&self) -> [[C64; 2]; 2] {
        let (sin_half, cos_half) = (0.5 * self.theta).sin_cos();
        let phase = C64::from_polar(1.0, self.phi);
        [
            [phase * sin_half, C64::new(cos_half, 0.0)],
            [C64::new(cos_half, 0.0), -phase.conj() * sin_half],
        ]
    }
}

/// Dense 4x4 density matrix in the basis `|+,+>, |+,->, |-,+>, |-,->`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseTwoQubitState {
    m: [[C64; 4]; 4],
}

impl DenseTwoQubitState {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness.
    pub fn new(m: [[C64; 4]; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                let diff = (m[i][j] - m[j][i].conj()).norm();
                if diff > HERMITICITY_TOL {
                    return Err(Error::InvalidState(format!(
                        "matrix is not Hermitian at ({i}, {j}): asymmetry {diff:e}"
                    )));
                }
            }
        }
        let trace: C64 = (0..4).map(|i| m[i][i]).sum();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace must be 1, got {trace}")));
        }
        let state = Self { m };
        let min = state.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -EIGENVALUE_TOL {
            return Err(Error::InvalidState(format!(
                "matrix is not positive semidefinite: eigenvalue {min:e}"
            )));
        }
        Ok(state)
    }

    pub fn matrix(&self) -> &[[C64; 4]; 4] {
        &self.m
    }

    pub fn element(&self, i: usize, j: usize) -> C64 {
        self.m[i][j]
    }

    /// Eigenvalues sorted ascending, via cyclic Jacobi rotations.
    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues_4(&self.m)
    }

    /// Partial trace over B.
    pub fn reduced_a(&self) -> [[C64; 2]; 2] {
        let m = &self.m;
        [
            [m[0][0] + m[1][1], m[0][2] + m[1][3]],
            [m[2][0] + m[3][1], m[2][2] + m[3][3]],
        ]
    }

    /// Partial trace over A.
    pub fn reduced_b(&self) -> [[C64; 2]; 2] {
        let m = &self.m;
        [
            [m[0][0] + m[2][2], m[0][1] + m[2][3]],
            [m[1][0] + m[3][2], m[1][1] + m[3][3]],
        ]
    }
}

/// Embed an X state as a dense matrix: diagonal
/// `(p/2, (1-p)/2, (1-p)/2, p/2)`, anti-diagonal `(b/2, c/2, c/2, b/2)`.
pub fn densify(state: &XState) -> DenseTwoQubitState {
    let re = |x: f64| C64::new(x, 0.0);
    let (p, b, c) = (state.p(), state.b(), state.c());
    let z = C64::ZERO;
    DenseTwoQubitState {
        m: [
            [re(0.5 * p), z, z, re(0.5 * b)],
            [z, re(0.5 * (1.0 - p)), re(0.5 * c), z],
            [z, re(0.5 * c), re(0.5 * (1.0 - p)), z],
            [re(0.5 * b), z, z, re(0.5 * p)],
        ],
    }
}

/// Eigenvalues of a 4x4 Hermitian matrix by cyclic complex Jacobi
/// rotations, sorted ascending.
pub fn hermitian_eigenvalues_4(m: &[[C64; 4]; 4]) -> [f64; 4] {
    let mut a = *m;
    for _sweep in 0..64 {
        let off: f64 = (0..4)
            .flat_map(|p| ((p + 1)..4).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q].norm_sqr())
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                if apq.norm_sqr() < 1e-34 {
                    continue;
                }
                let phase = apq / C64::new(apq.norm(), 0.0);
                let angle = 0.5 * (2.0 * apq.norm()).atan2(a[p][p].re - a[q][q].re);
                let (sin, cos) = angle.sin_cos();
                let u_pq = -phase * sin; // rotation column q entry at row p
                let u_qp = phase.conj() * sin;
                // columns: A <- A U
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp * cos + akq * u_qp;
                    a[k][q] = akp * u_pq + akq * cos;
                }
                // rows: A <- U^H A
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = apk * cos + aqk * u_qp.conj();
                    a[q][k] = apk * u_pq.conj() + aqk * cos;
                }
            }
        }
    }
    let mut ev = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    ev.sort_by(f64::total_cmp);
    ev
}

/// Entropy in bits of a 2x2 Hermitian state via its closed-form
/// eigenvalues `(tr +/- sqrt(tr^2 - 4 det)) / 2`.
fn entropy_2x2(m: &[[C64; 2]; 2]) -> f64 {
    let trace = m[0][0].re + m[1][1].re;
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re;
    let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
    -(xlg((0.5 * (trace + disc)).max(0.0)) + xlg((0.5 * (trace - disc)).max(0.0)))
}

/// One measurement branch: outcome probability, the post-measurement state
/// of A, and whether the branch was too improbable to normalize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalOutcome {
    pub probability: f64,
    pub state: [[C64; 2]; 2],
    pub degenerate: bool,
}

/// `p_k = Tr(rho Pi_k)` and `rho_k = Tr_B(Pi_k rho Pi_k) / p_k` for the two
/// projectors of `basis`, in basis order.
///
/// With `Pi_k = I (x) |psi_k><psi_k|` the unnormalized conditional state of
/// A is `M_k[i][j] = <psi_k| R_ij |psi_k>`, where `R_ij` is the 2x2 B-block
/// of `rho` between A levels `i` and `j`.
pub fn conditional_decomposition(
    rho: &DenseTwoQubitState,
    basis: &MeasurementBasis,
) -> [ConditionalOutcome; 2] {
    basis.states().map(|psi| {
        let mut m = [[C64::ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = C64::ZERO;
                for u in 0..2 {
                    for v in 0..2 {
                        acc += psi[u].conj() * rho.element(2 * i + u, 2 * j + v) * psi[v];
                    }
                }
                m[i][j] = acc;
            }
        }
        let probability = (m[0][0] + m[1][1]).re;
        if probability < DEGENERATE_OUTCOME_TOL {
            let half = C64::new(0.5, 0.0);
            ConditionalOutcome {
                probability: probability.max(0.0),
                state: [[half, C64::ZERO], [C64::ZERO, half]],
                degenerate: true,
            }
        } else {
            let inv = C64::new(1.0 / probability, 0.0);
            ConditionalOutcome {
                probability,
                state: m.map(|row| row.map(|x| x * inv)),
                degenerate: false,
            }
        }
    })
}

fn conditional_entropy(rho: &DenseTwoQubitState, basis: &MeasurementBasis) -> f64 {
    conditional_decomposition(rho, basis)
        .iter()
        .map(|o| o.probability * entropy_2x2(&o.state))
        .sum()
}

/// Classical information extracted by measuring `basis` on B:
/// `S(rho_A) - sum_k p_k S(rho_k)`, in bits.
pub fn classical_info_at(rho: &DenseTwoQubitState, basis: &MeasurementBasis) -> f64 {
    entropy_2x2(&rho.reduced_a()) - conditional_entropy(rho, basis)
}

/// The Bloch-sphere landscape
/// `g(theta, phi) = sqrt(a^2 cos^2 theta + sin^2 theta [b^2 + c^2 + 2 b c cos 2 phi])`.
pub fn g_closed_form(state: &XState, theta: f64, phi: f64) -> f64 {
    let (sin, cos) = theta.sin_cos();
    let (a, b, c) = (state.a(), state.b(), state.c());
    let planar = b * b + c * c + 2.0 * b * c * (2.0 * phi).cos();
    (a * a * cos * cos + sin * sin * planar).max(0.0).sqrt()
}

/// Closed-form classical information `G(theta, phi) = 1 - K(g)` for an
/// X state, in bits.
pub fn classical_info_closed_form(state: &XState, theta: f64, phi: f64) -> f64 {
    1.0 - k_clamped(g_closed_form(state, theta, phi))
}

/// Bloch-sphere scan resolution: `n_theta` points on `[0, pi]` inclusive,
/// `n_phi` points on `[0, 2 pi]` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleGrid {
    pub n_theta: usize,
    pub n_phi: usize,
}

pub const MIN_THETA_POINTS: usize = 61;
pub const MIN_PHI_POINTS: usize = 121;

impl Default for OracleGrid {
    fn default() -> Self {
        Self { n_theta: 181, n_phi: 361 }
    }
}

#[derive(Clone, Copy)]
struct Candidate {
    value: f64,
    theta: f64,
    phi: f64,
}

// Total order: larger value wins, ties prefer smaller theta, then smaller
// phi, so parallel reduction is order-independent.
fn better(a: Candidate, b: Candidate) -> Candidate {
    if a.value > b.value {
        return a;
    }
    if b.value > a.value {
        return b;
    }
    if (a.theta, a.phi) <= (b.theta, b.phi) {
        a
    } else {
        b
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, x_tol: f64) -> Candidate {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > x_tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        Candidate { value: f1, theta: x1, phi: 0.0 }
    } else {
        Candidate { value: f2, theta: x2, phi: 0.0 }
    }
}

/// Maximize the extracted classical information over projective bases on B:
/// a coarse grid scan followed by alternating 1-D golden-section
/// refinements around the best cell, stopping once a full round improves
/// the value by less than `refine_tol` bits. Grid ties break toward smaller
/// `theta`, then smaller `phi`; a refined point replaces the incumbent only
/// when strictly better, so exact grid maxima (the poles) are kept.
pub fn maximize_classical(
    rho: &DenseTwoQubitState,
    grid: OracleGrid,
    refine_tol: f64,
) -> Result<(f64, MeasurementBasis)> {
    if grid.n_theta < MIN_THETA_POINTS || grid.n_phi < MIN_PHI_POINTS {
        return Err(Error::InvalidInput(format!(
            "oracle grid must be at least {MIN_THETA_POINTS}x{MIN_PHI_POINTS}, got {}x{}",
            grid.n_theta, grid.n_phi
        )));
    }
    if !(refine_tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "refinement tolerance must be positive, got {refine_tol}"
        )));
    }

    let entropy_a = entropy_2x2(&rho.reduced_a());
    let info = |theta: f64, phi: f64| {
        entropy_a - conditional_entropy(rho, &MeasurementBasis::new(theta, phi))
    };

    let d_theta = std::f64::consts::PI / (grid.n_theta - 1) as f64;
    let d_phi = std::f64::consts::TAU / (grid.n_phi - 1) as f64;
    let worst = Candidate { value: f64::NEG_INFINITY, theta: f64::INFINITY, phi: f64::INFINITY };

    let mut best = (0..grid.n_theta)
        .into_par_iter()
        .map(|i| {
            let theta = (i as f64 * d_theta).min(std::f64::consts::PI);
            let mut row_best = worst;
            for j in 0..grid.n_phi {
                let phi = (j as f64 * d_phi).min(std::f64::consts::TAU);
                let value = info(theta, phi);
                row_best = better(row_best, Candidate { value, theta, phi });
            }
            row_best
        })
        .reduce(|| worst, better);

    const ANGLE_TOL: f64 = 1e-5;
    for _round in 0..16 {
        let before = best.value;

        let lo = (best.theta - d_theta).max(0.0);
        let hi = (best.theta + d_theta).min(std::f64::consts::PI);
        let cand = golden_max(&|th| info(th, best.phi), lo, hi, ANGLE_TOL);
        if cand.value > best.value {
            best = Candidate { value: cand.value, theta: cand.theta, phi: best.phi };
        }

        let cand = golden_max(&|ph| info(best.theta, ph), best.phi - d_phi, best.phi + d_phi, ANGLE_TOL);
        if cand.value > best.value {
            best = Candidate { value: cand.value, theta: best.theta, phi: cand.theta };
        }

        if best.value - before < refine_tol {
            break;
        }
    }

    Ok((best.value, MeasurementBasis::new(best.theta, best.phi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    fn random_state(rng: &mut impl Rng) -> XState {
        let p: f64 = rng.random_range(0.0..=1.0);
        let b: f64 = rng.random_range(0.0..=p);
        let c: f64 = rng.random_range(0.0..=(1.0 - p));
        XState::new(p, b, c).unwrap()
    }

    #[test]
    fn basis_states_are_orthonormal() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..200 {
            let basis = MeasurementBasis::new(
                rng.random_range(0.0..=std::f64::consts::PI),
                rng.random_range(0.0..std::f64::consts::TAU),
            );
            let [psi1, psi2] = basis.states();
            let n1: f64 = psi1.iter().map(|x| x.norm_sqr()).sum();
            let n2: f64 = psi2.iter().map(|x| x.norm_sqr()).sum();
            let overlap = (psi1[0].conj() * psi2[0] + psi1[1].conj() * psi2[1]).norm();
            assert!((n1 - 1.0).abs() <= 1e-14);
            assert!((n2 - 1.0).abs() <= 1e-14);
            assert!(overlap <= 1e-14);
        }
    }

    #[test]
    fn densify_bell_states() {
        // p = 1, b = 1: the outer Bell projector, halves at the four corners.
        let outer = densify(&XState::new(1.0, 1.0, 0.0).unwrap());
        assert_eq!(outer.element(0, 0).re, 0.5);
        assert_eq!(outer.element(0, 3).re, 0.5);
        assert_eq!(outer.element(3, 0).re, 0.5);
        assert_eq!(outer.element(3, 3).re, 0.5);
        assert_eq!(outer.element(1, 1).re, 0.0);

        // p = 0, c = 1: the inner Bell projector.
        let inner = densify(&XState::new(0.0, 0.0, 1.0).unwrap());
        assert_eq!(inner.element(1, 1).re, 0.5);
        assert_eq!(inner.element(1, 2).re, 0.5);
        assert_eq!(inner.element(0, 0).re, 0.0);
    }

    #[test]
    fn densify_preserves_trace_and_passes_validation() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        for _ in 0..100 {
            let rho = densify(&random_state(&mut rng));
            let trace: C64 = (0..4).map(|i| rho.element(i, i)).sum();
            assert_abs_diff_eq!(trace.re, 1.0, epsilon = 1e-14);
            assert!(DenseTwoQubitState::new(*rho.matrix()).is_ok());
        }
    }

    #[test]
    fn jacobi_matches_the_closed_form_x_spectrum() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        for _ in 0..100 {
            let state = random_state(&mut rng);
            let mut expect = state.eigenvalues();
            expect.sort_by(f64::total_cmp);
            let got = densify(&state).eigenvalues();
            for (g, e) in got.iter().zip(expect) {
                assert_abs_diff_eq!(*g, e, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        let mut m = *densify(&XState::new(0.8, 0.5, 0.1).unwrap()).matrix();
        m[0][1] = C64::new(0.1, 0.0); // breaks Hermiticity
        assert!(DenseTwoQubitState::new(m).is_err());

        let mut m = *densify(&XState::new(0.8, 0.5, 0.1).unwrap()).matrix();
        m[0][0] = C64::new(0.9, 0.0); // breaks the trace
        assert!(DenseTwoQubitState::new(m).is_err());

        // Hermitian, unit trace, but indefinite: b > p.
        let z = C64::ZERO;
        let re = |x: f64| C64::new(x, 0.0);
        let m = [
            [re(0.25), z, z, re(0.45)],
            [z, re(0.25), z, z],
            [z, z, re(0.25), z],
            [re(0.45), z, z, re(0.25)],
        ];
        assert!(matches!(DenseTwoQubitState::new(m), Err(Error::InvalidState(_))));
    }

    #[test]
    fn reduced_states_of_the_x_family_are_maximally_mixed() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(9);
        for _ in 0..50 {
            let rho = densify(&random_state(&mut rng));
            for reduced in [rho.reduced_a(), rho.reduced_b()] {
                assert_abs_diff_eq!(reduced[0][0].re, 0.5, epsilon = 1e-14);
                assert_abs_diff_eq!(reduced[1][1].re, 0.5, epsilon = 1e-14);
                assert!(reduced[0][1].norm() <= 1e-14);
            }
        }
    }

    #[test]
    fn product_state_has_uniform_uninformative_outcomes() {
        let rho = densify(&XState::new(0.5, 0.0, 0.0).unwrap());
        for (theta, phi) in [(0.0, 0.0), (1.0, 2.0), (std::f64::consts::FRAC_PI_2, 0.0)] {
            let outcomes = conditional_decomposition(&rho, &MeasurementBasis::new(theta, phi));
            for o in outcomes {
                assert_abs_diff_eq!(o.probability, 0.5, epsilon = 1e-14);
                assert_abs_diff_eq!(o.state[0][0].re, 0.5, epsilon = 1e-13);
                assert!(o.state[0][1].norm() <= 1e-13);
            }
            assert_abs_diff_eq!(classical_info_at(&rho, &MeasurementBasis::new(theta, phi)), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn bell_state_measured_along_z_is_perfectly_correlated() {
        let rho = densify(&XState::new(1.0, 1.0, 0.0).unwrap());
        let outcomes = conditional_decomposition(&rho, &MeasurementBasis::new(0.0, 0.0));
        for o in outcomes {
            assert_abs_diff_eq!(o.probability, 0.5, epsilon = 1e-14);
            assert_abs_diff_eq!(entropy_2x2(&o.state), 0.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(
            classical_info_at(&rho, &MeasurementBasis::new(0.0, 0.0)),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn equatorial_conditional_entropy_matches_k_of_b_plus_c() {
        let state = XState::new(0.8, 0.48, 0.12).unwrap();
        let rho = densify(&state);
        let basis = MeasurementBasis::new(std::f64::consts::FRAC_PI_2, 0.0);
        let cond = conditional_entropy(&rho, &basis);
        assert_abs_diff_eq!(cond, k_clamped(0.6), epsilon = 1e-12);
    }

    #[test]
    fn outcome_probabilities_sum_to_one_with_unit_trace_states() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(13);
        for _ in 0..100 {
            let rho = densify(&random_state(&mut rng));
            let basis = MeasurementBasis::new(
                rng.random_range(0.0..=std::f64::consts::PI),
                rng.random_range(0.0..std::f64::consts::TAU),
            );
            let outcomes = conditional_decomposition(&rho, &basis);
            let total: f64 = outcomes.iter().map(|o| o.probability).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-13);
            for o in outcomes {
                let tr = (o.state[0][0] + o.state[1][1]).re;
                assert_abs_diff_eq!(tr, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn g_closed_form_special_angles() {
        let state = XState::new(0.8, 0.3, 0.15).unwrap();
        assert_abs_diff_eq!(g_closed_form(&state, 0.0, 1.3), state.a().abs(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            g_closed_form(&state, std::f64::consts::FRAC_PI_2, 0.0),
            state.b() + state.c(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            g_closed_form(&state, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2),
            (state.b() - state.c()).abs(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn dense_path_matches_the_closed_form_landscape() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(17);
        for _ in 0..300 {
            let state = random_state(&mut rng);
            let rho = densify(&state);
            let theta = rng.random_range(0.0..=std::f64::consts::PI);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            let dense = classical_info_at(&rho, &MeasurementBasis::new(theta, phi));
            let closed = classical_info_closed_form(&state, theta, phi);
            assert!(
                (dense - closed).abs() <= 1e-10,
                "dense {dense} vs closed {closed} at ({theta}, {phi})"
            );
        }
    }

    #[test]
    fn antipodal_bases_give_identical_information() {
        let state = XState::new(0.7, 0.4, 0.2).unwrap();
        let rho = densify(&state);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(19);
        for _ in 0..50 {
            let theta = rng.random_range(0.0..=std::f64::consts::PI);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            let here = classical_info_at(&rho, &MeasurementBasis::new(theta, phi));
            let antipode = classical_info_at(
                &rho,
                &MeasurementBasis::new(std::f64::consts::PI - theta, phi + std::f64::consts::PI),
            );
            assert_abs_diff_eq!(here, antipode, epsilon = 1e-13);
        }
    }

    #[test]
    fn phi_maxima_sit_on_the_meridians_when_both_coherences_are_present() {
        let state = XState::new(0.6, 0.35, 0.3).unwrap();
        for theta in [0.4, 1.0, std::f64::consts::FRAC_PI_2, 2.2] {
            let at = |phi: f64| g_closed_form(&state, theta, phi);
            let reference = at(0.0).max(at(std::f64::consts::PI));
            for j in 1..=400 {
                let phi = j as f64 * std::f64::consts::TAU / 401.0;
                if (phi - std::f64::consts::PI).abs() < 1e-9 {
                    continue;
                }
                assert!(at(phi) <= reference + 1e-12);
            }
        }
    }

    #[test]
    fn maximizer_lands_on_the_poles_when_populations_dominate() {
        let state = XState::new(0.9, 0.2, 0.05).unwrap(); // |a| = 0.8 > 0.25
        let rho = densify(&state);
        let (value, basis) =
            maximize_classical(&rho, OracleGrid { n_theta: 61, n_phi: 121 }, 1e-9).unwrap();
        assert_abs_diff_eq!(value, state.classical_correlation(), epsilon = 1e-7);
        assert!(basis.theta() < 1e-3 || (basis.theta() - std::f64::consts::PI).abs() < 1e-3);
    }

    #[test]
    fn maximizer_lands_on_the_equator_when_coherences_dominate() {
        let state = XState::new(0.6, 0.5, 0.3).unwrap(); // b + c = 0.8 > 0.2
        let rho = densify(&state);
        let (value, basis) =
            maximize_classical(&rho, OracleGrid { n_theta: 61, n_phi: 121 }, 1e-9).unwrap();
        assert_abs_diff_eq!(value, state.classical_correlation(), epsilon = 1e-7);
        assert!((basis.theta() - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
    }

    #[test]
    fn maximum_never_exceeds_the_analytic_value() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(23);
        for _ in 0..25 {
            let state = random_state(&mut rng);
            let rho = densify(&state);
            let (value, _) =
                maximize_classical(&rho, OracleGrid { n_theta: 61, n_phi: 121 }, 1e-9).unwrap();
            let analytic = state.classical_correlation();
            assert!(value <= analytic + 1e-6, "oracle {value} above analytic {analytic}");
            assert!(value >= analytic - 1e-6, "oracle {value} below analytic {analytic}");
        }
    }

    #[test]
    fn undersized_grids_are_rejected() {
        let rho = densify(&XState::new(0.8, 0.1, 0.1).unwrap());
        assert!(maximize_classical(&rho, OracleGrid { n_theta: 60, n_phi: 121 }, 1e-9).is_err());
        assert!(maximize_classical(&rho, OracleGrid { n_theta: 61, n_phi: 120 }, 1e-9).is_err());
        assert!(maximize_classical(&rho, OracleGrid::default(), 0.0).is_err());
    }
}
