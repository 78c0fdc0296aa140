//! Complex monic polynomials with one double zero: zero/coefficient maps,
//! numerical root finding and double-root identification.
//!
//! The polynomial of degree `N + 1` is stored through its trailing
//! coefficients `y_1 ..= y_{N+1}` (the leading coefficient is an implicit 1),
//! and its zero set is `x_1` (multiplicity 2) together with the simple zeros
//! `x_2 ..= x_N`.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub type C64 = Complex64;

/// Zero-state constructors reject configurations whose pairwise separations
/// (or |x1|) fall below this floor.
pub const SEPARATION_FLOOR: f64 = 1e-10;

/// Default clustering tolerance for deciding that two numerical roots form
/// the double zero. Double roots of a polynomial known to machine precision
/// split by O(sqrt(eps)) ~ 1.5e-8; 1e-5 leaves headroom for coefficient error
/// accumulated along trajectories.
pub const DOUBLE_ROOT_CLUSTER_TOL: f64 = 1e-5;

fn ensure_finite(values: &[C64], what: &'static str) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { what })
    }
}

/// Monic polynomial `z^d + y_1 z^{d-1} + ... + y_d` over the complex numbers.
///
/// Only the trailing coefficients are stored; `degree() == coeffs.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<C64>,
}

impl MonicPolynomial {
    /// Build from the trailing coefficients `y_1 ..= y_{N+1}`.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidState(format!(
                "monic polynomial needs at least 2 trailing coefficients, got {}",
                coeffs.len()
            )));
        }
        ensure_finite(&coeffs, "polynomial coefficients")?;
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Trailing coefficients `y_1 ..= y_{N+1}` (index `m - 1` holds `y_m`).
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        let mut p = C64::new(1.0, 0.0);
        for &c in &self.coeffs {
            p = p * z + c;
        }
        p
    }

    /// Evaluate the polynomial and its z-derivative in one pass.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = C64::new(1.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &c in &self.coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// All `degree()` roots, with double-root clustering at the default tolerance.
    pub fn roots(&self) -> Result<RootSet> {
        self.roots_with_cluster_tol(DOUBLE_ROOT_CLUSTER_TOL)
    }

    pub fn roots_with_cluster_tol(&self, cluster_tol: f64) -> Result<RootSet> {
        let roots = find_roots_monic(&self.coeffs)?;
        Ok(RootSet::from_roots(roots, cluster_tol))
    }
}

/// Positions and velocities of the zeros: the double zero `x_1` and the
/// simple zeros `x_2 ..= x_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroState {
    x1: C64,
    simple: Vec<C64>,
    v1: C64,
    vsimple: Vec<C64>,
}

impl ZeroState {
    /// Validating constructor: rejects non-finite input, `|x1|` below the
    /// separation floor, and any pair of zeros closer than the floor.
    pub fn new(x1: C64, simple: Vec<C64>, v1: C64, vsimple: Vec<C64>) -> Result<Self> {
        if simple.len() != vsimple.len() {
            return Err(Error::InvalidState(format!(
                "{} simple zeros but {} simple velocities",
                simple.len(),
                vsimple.len()
            )));
        }
        ensure_finite(&[x1, v1], "zero state")?;
        ensure_finite(&simple, "zero state")?;
        ensure_finite(&vsimple, "zero state")?;
        let state = Self {
            x1,
            simple,
            v1,
            vsimple,
        };
        if let Some((i, j, sep)) = state.degenerate_pair(SEPARATION_FLOOR) {
            return Err(Error::SingularConfiguration {
                detail: format!("zeros {i} and {j} coincide within the separation floor"),
                separation: sep,
                pair: (i, j),
            });
        }
        if state.x1.norm() < SEPARATION_FLOOR {
            return Err(Error::SingularConfiguration {
                detail: "double zero x1 vanishes".to_string(),
                separation: state.x1.norm(),
                pair: (1, 1),
            });
        }
        Ok(state)
    }

    /// Internal constructor for integrator stage states; the right-hand sides
    /// apply their own (stricter) singularity guard.
    pub(crate) fn new_unchecked(x1: C64, simple: Vec<C64>, v1: C64, vsimple: Vec<C64>) -> Self {
        Self {
            x1,
            simple,
            v1,
            vsimple,
        }
    }

    /// Number of zeros N (the double zero plus `N - 1` simple zeros).
    pub fn n(&self) -> usize {
        1 + self.simple.len()
    }

    pub fn x1(&self) -> C64 {
        self.x1
    }

    pub fn v1(&self) -> C64 {
        self.v1
    }

    pub fn simple(&self) -> &[C64] {
        &self.simple
    }

    pub fn vsimple(&self) -> &[C64] {
        &self.vsimple
    }

    /// Positions `x_1 ..= x_N`.
    pub fn positions(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.n());
        out.push(self.x1);
        out.extend_from_slice(&self.simple);
        out
    }

    /// Velocities `xdot_1 ..= xdot_N`.
    pub fn velocities(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.n());
        out.push(self.v1);
        out.extend_from_slice(&self.vsimple);
        out
    }

    /// Smallest pairwise separation among the zeros (1-based labels).
    pub fn min_separation(&self) -> (f64, (usize, usize)) {
        let xs = self.positions();
        let mut best = (f64::INFINITY, (1, 1));
        for i in 0..xs.len() {
            for j in (i + 1)..xs.len() {
                let d = (xs[i] - xs[j]).norm();
                if d < best.0 {
                    best = (d, (i + 1, j + 1));
                }
            }
        }
        best
    }

    fn degenerate_pair(&self, floor: f64) -> Option<(usize, usize, f64)> {
        let (sep, pair) = self.min_separation();
        (self.simple.len() >= 1 && sep < floor).then_some((pair.0, pair.1, sep))
    }
}

/// Multiset of numerical roots with an optional identified double-root pair.
#[derive(Debug, Clone)]
pub struct RootSet {
    roots: Vec<C64>,
    pairing: Option<(usize, usize)>,
    pair_separation: f64,
}

impl RootSet {
    fn from_roots(roots: Vec<C64>, cluster_tol: f64) -> Self {
        let mut set = Self {
            roots,
            pairing: None,
            pair_separation: f64::INFINITY,
        };
        if let Some((i, j, sep)) = set.closest_pair() {
            if sep <= cluster_tol {
                set.pairing = Some((i, j));
                set.pair_separation = sep;
            }
        }
        set
    }

    pub fn roots(&self) -> &[C64] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Index pair of the numerically coincident double root, when one was
    /// found within the clustering tolerance.
    pub fn pairing(&self) -> Option<(usize, usize)> {
        self.pairing
    }

    /// Separation of the paired roots; infinite when no pairing is set.
    pub fn pair_separation(&self) -> f64 {
        self.pair_separation
    }

    fn closest_pair(&self) -> Option<(usize, usize, f64)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..self.roots.len() {
            for j in (i + 1)..self.roots.len() {
                let d = (self.roots[i] - self.roots[j]).norm();
                if best.map_or(true, |(_, _, b)| d < b) {
                    best = Some((i, j, d));
                }
            }
        }
        best
    }
}

/// Result of double-root identification: the double zero (pair midpoint),
/// the remaining simple zeros, and the pair separation as a quality metric.
#[derive(Debug, Clone)]
pub struct DoubleRootSplit {
    pub x1: C64,
    pub simple: Vec<C64>,
    pub separation: f64,
}

/// Pick the double root out of a root multiset.
///
/// The closest pair under Euclidean distance is taken as the double root and
/// its midpoint returned as `x1`. When several candidate pairs have
/// separations within a factor of 2 of the smallest, a `hint` resolves the
/// tie toward the pair nearest the hint; without a hint the ambiguity is an
/// error.
pub fn identify_double_root(rs: &RootSet, hint: Option<C64>) -> Result<DoubleRootSplit> {
    if rs.len() < 2 {
        return Err(Error::InvalidState(
            "double-root identification needs at least two roots".to_string(),
        ));
    }
    let mut pairs: Vec<(usize, usize, f64)> = Vec::new();
    for i in 0..rs.len() {
        for j in (i + 1)..rs.len() {
            pairs.push((i, j, (rs.roots[i] - rs.roots[j]).norm()));
        }
    }
    pairs.sort_by(|a, b| a.2.total_cmp(&b.2));
    let best_sep = pairs[0].2;

    let chosen = match hint {
        Some(h) => {
            // Candidate set: every pair within a factor of 2 of the tightest.
            *pairs
                .iter()
                .take_while(|p| p.2 <= 2.0 * best_sep)
                .min_by(|a, b| {
                    let da = ((rs.roots[a.0] + rs.roots[a.1]) * 0.5 - h).norm();
                    let db = ((rs.roots[b.0] + rs.roots[b.1]) * 0.5 - h).norm();
                    da.total_cmp(&db)
                })
                .expect("non-empty candidate set")
        }
        None => {
            if pairs.len() > 1 && pairs[1].2 < 2.0 * best_sep {
                return Err(Error::AmbiguousDoubleRoot {
                    sep_best: best_sep,
                    sep_next: pairs[1].2,
                });
            }
            pairs[0]
        }
    };

    let (i, j, separation) = chosen;
    let x1 = (rs.roots[i] + rs.roots[j]) * 0.5;
    let simple = rs
        .roots
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, &z)| z)
        .collect();
    Ok(DoubleRootSplit {
        x1,
        simple,
        separation,
    })
}

/// Multiply a polynomial (dense, leading coefficient first) by `(z - root)`.
fn mul_linear(coeffs: &mut Vec<C64>, root: C64) {
    coeffs.push(C64::new(0.0, 0.0));
    for k in (1..coeffs.len()).rev() {
        let shifted = coeffs[k - 1];
        coeffs[k] = coeffs[k] - root * shifted;
    }
}

fn product_of_linear_factors(roots: &[C64]) -> Vec<C64> {
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    for &r in roots {
        mul_linear(&mut coeffs, r);
    }
    coeffs
}

/// Coefficients `y_1 ..= y_{N+1}` of `(z - x_1)^2 * prod_n (z - x_n)`,
/// i.e. `y_m = (-1)^m sigma_m` of the zero multiset with `x_1` doubled.
///
/// Built by incremental multiplication of the linear factors, which is stable
/// at desk scale and matches the product-rule form of the velocity map.
pub fn coefficients_from_zeros(state: &ZeroState) -> Vec<C64> {
    let mut zeros = Vec::with_capacity(state.n() + 1);
    zeros.push(state.x1());
    zeros.push(state.x1());
    zeros.extend_from_slice(state.simple());
    let full = product_of_linear_factors(&zeros);
    full[1..].to_vec()
}

/// Time derivatives `ydot_1 ..= ydot_{N+1}` of the coefficients, by the
/// product rule over the factorization:
/// `p_t = -2 xdot_1 (z - x_1) Q(z) - (z - x_1)^2 sum_n xdot_n Q_n(z)`
/// with `Q = prod_n (z - x_n)` and `Q_n` the same product without factor `n`.
pub fn coefficient_velocities_from_zeros(state: &ZeroState) -> Vec<C64> {
    let np1 = state.n() + 1;
    let zero = C64::new(0.0, 0.0);
    // Accumulate into a dense degree-N polynomial (leading coefficient first).
    let mut acc = vec![zero; np1];

    let add_scaled = |acc: &mut [C64], poly: &[C64], scale: C64| {
        // Align trailing coefficients: poly has degree poly.len() - 1 <= N.
        let offset = acc.len() - poly.len();
        for (k, &c) in poly.iter().enumerate() {
            acc[offset + k] += scale * c;
        }
    };

    // -2 xdot_1 (z - x_1) Q(z)
    let mut factors = vec![state.x1()];
    factors.extend_from_slice(state.simple());
    let term1 = product_of_linear_factors(&factors);
    add_scaled(&mut acc, &term1, -2.0 * state.v1());

    // -(z - x_1)^2 sum_n xdot_n Q_n(z)
    for (idx, &vn) in state.vsimple().iter().enumerate() {
        let mut factors = vec![state.x1(), state.x1()];
        for (jdx, &xj) in state.simple().iter().enumerate() {
            if jdx != idx {
                factors.push(xj);
            }
        }
        let term = product_of_linear_factors(&factors);
        add_scaled(&mut acc, &term, -vn);
    }

    acc
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

const ABERTH_MAX_ITERATIONS: u32 = 200;

/// All roots of the monic polynomial with trailing coefficients `coeffs`
/// (leading 1 implicit). Exact zero trailing coefficients are deflated first;
/// degree 1 and 2 use closed forms, higher degrees the Aberth-Ehrlich
/// simultaneous iteration.
pub(crate) fn find_roots_monic(coeffs: &[C64]) -> Result<Vec<C64>> {
    ensure_finite(coeffs, "polynomial coefficients")?;
    let mut trailing = coeffs.to_vec();
    let mut roots = Vec::with_capacity(coeffs.len());
    // Deflate exact roots at the origin.
    while trailing.last().is_some_and(|c| c.norm() == 0.0) {
        roots.push(C64::new(0.0, 0.0));
        trailing.pop();
    }
    match trailing.len() {
        0 => {}
        1 => roots.push(-trailing[0]),
        2 => roots.extend(quadratic_roots(trailing[0], trailing[1])),
        _ => roots.extend(aberth_roots(&trailing)?),
    }
    Ok(roots)
}

/// Roots of `z^2 + b z + c`, with the usual cancellation-avoiding pairing.
fn quadratic_roots(b: C64, c: C64) -> [C64; 2] {
    let disc = b * b - 4.0 * c;
    let mut s = disc.sqrt();
    // Choose the branch that adds constructively to b.
    if (b + s).norm() < (b - s).norm() {
        s = -s;
    }
    let q = -(b + s) * 0.5;
    if q.norm() > 0.0 {
        [q, c / q]
    } else {
        [q, -b - q]
    }
}

fn aberth_roots(trailing: &[C64]) -> Result<Vec<C64>> {
    let degree = trailing.len();
    let eval = |z: C64| -> (C64, C64, f64) {
        // Polynomial, derivative and an evaluation-error bound at z.
        let mut p = C64::new(1.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        let mut bound = 1.0_f64;
        let az = z.norm();
        for &c in trailing {
            dp = dp * z + p;
            p = p * z + c;
            bound = bound * az + c.norm();
        }
        (p, dp, bound)
    };

    // Initial guesses on a circle around the root centroid.
    let centroid = -trailing[0] / degree as f64;
    let radius = 1.0
        + trailing
            .iter()
            .fold(0.0_f64, |acc, c| acc.max(c.norm()));
    let mut z: Vec<C64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (degree as f64) + 0.45;
            centroid + radius * C64::new(angle.cos(), angle.sin())
        })
        .collect();

    let eps = f64::EPSILON;
    let mut worst_residual = f64::INFINITY;
    for _iteration in 0..ABERTH_MAX_ITERATIONS {
        let mut done = true;
        worst_residual = 0.0;
        for k in 0..degree {
            let (p, dp, bound) = eval(z[k]);
            worst_residual = worst_residual.max(p.norm());
            // Backward-stable acceptance: residual at rounding level for this z.
            if p.norm() <= 4.0 * (degree as f64) * eps * bound {
                continue;
            }
            let dp = if dp.norm() == 0.0 {
                C64::new(eps, eps)
            } else {
                dp
            };
            let newton = p / dp;
            let mut repulsion = C64::new(0.0, 0.0);
            for j in 0..degree {
                if j != k {
                    let mut diff = z[k] - z[j];
                    if diff.norm() == 0.0 {
                        diff = C64::new(eps, 0.0);
                    }
                    repulsion += diff.inv();
                }
            }
            let denom = C64::new(1.0, 0.0) - newton * repulsion;
            let correction = if denom.norm() == 0.0 {
                newton
            } else {
                newton / denom
            };
            z[k] -= correction;
            if !(z[k].re.is_finite() && z[k].im.is_finite()) {
                return Err(Error::RootFindingFailed {
                    residual: f64::INFINITY,
                    iterations: _iteration,
                });
            }
            if correction.norm() > 1e-13 * (1.0 + z[k].norm()) {
                done = false;
            }
        }
        if done {
            return Ok(z);
        }
    }
    // Accept anyway if every residual is at the backward-error floor.
    let acceptable = z.iter().all(|&zk| {
        let (p, _, bound) = eval(zk);
        p.norm() <= 16.0 * (degree as f64) * eps * bound
    });
    if acceptable {
        Ok(z)
    } else {
        Err(Error::RootFindingFailed {
            residual: worst_residual,
            iterations: ABERTH_MAX_ITERATIONS,
        })
    }
}
