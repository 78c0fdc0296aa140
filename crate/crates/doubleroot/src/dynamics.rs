//! Right-hand sides of the nonlinear systems satisfied by the zeros: the
//! general-N transfer formulas expressing first and second time derivatives
//! of the zeros through the corresponding derivatives of the coefficients.
//!
//! Divided differences of powers are always evaluated through their
//! summation identity, never as raw quotients: the quotient form cancels
//! catastrophically when a simple zero approaches the double zero.

use crate::error::{Error, Result};
use crate::laws::ModelSpec;
use crate::poly::{coefficient_velocities_from_zeros, coefficients_from_zeros, C64, ZeroState};

/// Right-hand-side evaluations refuse configurations tighter than this and
/// report a singular configuration instead of returning huge values;
/// integrators treat that as a step-rejection trigger.
pub const SINGULAR_SEPARATION: f64 = 1e-8;

/// `(a^k - b^k) / (a - b)` evaluated by the polynomial summation identity.
///
/// For `k > 0` this is `sum_{j=0}^{k-1} a^{k-1-j} b^j`; for `k = 0` it is 0;
/// for `k < 0` it is `-sum_{j=0}^{|k|-1} a^{-(j+1)} b^{k+j}`, which requires
/// both bases to be nonzero.
pub fn divided_power(k: i32, a: C64, b: C64) -> Result<C64> {
    let zero = C64::new(0.0, 0.0);
    if k == 0 {
        return Ok(zero);
    }
    if k > 0 {
        let mut acc = zero;
        // a^{k-1-j} b^j, running the a-power down and the b-power up.
        let mut term = a.powi(k - 1);
        for _ in 0..k {
            acc += term;
            term = if a.norm() == 0.0 {
                // Only the j = k-1 term b^{k-1} survives; recompute directly.
                zero
            } else {
                term / a * b
            };
        }
        if a.norm() == 0.0 {
            // Degenerate base: the sum collapses to b^{k-1}.
            return Ok(b.powi(k - 1));
        }
        Ok(acc)
    } else {
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(Error::InvalidState(
                "divided power with negative exponent needs nonzero bases".to_string(),
            ));
        }
        let ai = a.inv();
        let bi = b.inv();
        let mut acc = zero;
        // -a^{-(j+1)} b^{k+j} for j = 0..|k|-1; b-exponents run k..-1.
        let mut a_pow = ai;
        let mut b_pow = bi.powi(-k);
        for _ in 0..(-k) {
            acc -= a_pow * b_pow;
            a_pow *= ai;
            b_pow *= b;
        }
        Ok(acc)
    }
}

fn guard_state(state: &ZeroState) -> Result<()> {
    let (sep, pair) = state.min_separation();
    if state.n() > 1 && sep < SINGULAR_SEPARATION {
        return Err(Error::SingularConfiguration {
            detail: format!("zeros {} and {} nearly collide", pair.0, pair.1),
            separation: sep,
            pair,
        });
    }
    if state.x1().norm() < SINGULAR_SEPARATION {
        return Err(Error::SingularConfiguration {
            detail: "double zero approaches the origin".to_string(),
            separation: state.x1().norm(),
            pair: (1, 1),
        });
    }
    Ok(())
}

fn check_lengths(model: &ModelSpec, state: &ZeroState, derivs: &[C64]) -> Result<()> {
    if state.n() != model.n() {
        return Err(Error::InvalidState(format!(
            "state has N = {} but the model expects N = {}",
            state.n(),
            model.n()
        )));
    }
    if derivs.len() != model.n() + 1 {
        return Err(Error::InvalidState(format!(
            "coefficient derivative vector must have length {} (entry {} is ignored), got {}",
            model.n() + 1,
            model.mbar(),
            derivs.len()
        )));
    }
    Ok(())
}

/// First time derivative of the simple zero `x_n` (`n` in `2..=N`) from the
/// coefficient velocities; the entry for `m = mbar` is ignored.
pub fn xdot_simple(n: usize, state: &ZeroState, ydots: &[C64], model: &ModelSpec) -> Result<C64> {
    check_lengths(model, state, ydots)?;
    if n < 2 || n > model.n() {
        return Err(Error::InvalidState(format!(
            "simple-zero index {n} outside 2..={}",
            model.n()
        )));
    }
    guard_state(state)?;
    let xs = state.positions();
    let xn = xs[n - 1];
    let x1 = xs[0];
    let mbar = model.mbar() as i32;

    let mut prod = C64::new(1.0, 0.0);
    for (l, &xl) in xs.iter().enumerate() {
        if l != n - 1 {
            prod *= xn - xl;
        }
    }
    let mut sum = C64::new(0.0, 0.0);
    for m in 1..=(model.n() + 1) {
        if m == model.mbar() {
            continue;
        }
        sum += ydots[m - 1] * divided_power(mbar - m as i32, xn, x1)?;
    }
    Ok(-(xn.powi((model.n() + 1) as i32 - mbar) / prod) * sum)
}

/// First time derivative of the double zero `x_1` from the coefficient
/// velocities; the entry for `m = mbar` is ignored.
pub fn xdot_double(state: &ZeroState, ydots: &[C64], model: &ModelSpec) -> Result<C64> {
    check_lengths(model, state, ydots)?;
    guard_state(state)?;
    let x1 = state.x1();
    let mbar = model.mbar() as i32;
    let mut prod = C64::new(2.0, 0.0);
    for &xl in state.simple() {
        prod *= x1 - xl;
    }
    let mut sum = C64::new(0.0, 0.0);
    for m in 1..=(model.n() + 1) {
        if m == model.mbar() {
            continue;
        }
        sum += (m as f64 - mbar as f64) * ydots[m - 1] * x1.powi(model.n() as i32 - m as i32);
    }
    Ok(sum / prod)
}

/// Second time derivative of the double zero from the coefficient
/// accelerations (entry `mbar` ignored) and the state velocities.
pub fn xddot_double(state: &ZeroState, yddots: &[C64], model: &ModelSpec) -> Result<C64> {
    check_lengths(model, state, yddots)?;
    guard_state(state)?;
    let x1 = state.x1();
    let v1 = state.v1();
    let mbar = model.mbar() as i32;
    let npow = (model.n() + 1) as i32 - mbar;

    let mut acc = -(npow as f64) * v1 * v1 / x1;
    for (&xn, &vn) in state.simple().iter().zip(state.vsimple()) {
        acc += v1 * (2.0 * vn + v1) / (x1 - xn);
    }
    let mut prod = C64::new(2.0, 0.0);
    for &xl in state.simple() {
        prod *= x1 - xl;
    }
    let mut sum = C64::new(0.0, 0.0);
    for m in 1..=(model.n() + 1) {
        if m == model.mbar() {
            continue;
        }
        sum += (m as f64 - mbar as f64) * yddots[m - 1] * x1.powi(model.n() as i32 - m as i32);
    }
    Ok(acc + sum / prod)
}

/// Second time derivative of the simple zero `x_n` (`n` in `2..=N`).
pub fn xddot_simple(
    n: usize,
    state: &ZeroState,
    yddots: &[C64],
    model: &ModelSpec,
) -> Result<C64> {
    check_lengths(model, state, yddots)?;
    if n < 2 || n > model.n() {
        return Err(Error::InvalidState(format!(
            "simple-zero index {n} outside 2..={}",
            model.n()
        )));
    }
    guard_state(state)?;
    let xs = state.positions();
    let vs = state.velocities();
    let x1 = xs[0];
    let v1 = vs[0];
    let xn = xs[n - 1];
    let vn = vs[n - 1];
    let mbar = model.mbar() as i32;
    let npow = (model.n() + 1) as i32 - mbar;

    let mut acc = 2.0 * v1 * vn / (xn - x1);
    for l in 1..=model.n() {
        if l != n {
            acc += 2.0 * vn * vs[l - 1] / (xn - xs[l - 1]);
        }
    }

    let mut ratio_prod = C64::new(1.0, 0.0);
    for l in 2..=model.n() {
        if l != n {
            ratio_prod *= (x1 - xs[l - 1]) / (xn - xs[l - 1]);
        }
    }
    acc += (2.0 * v1 * v1 / (xn - x1)) * (xn / x1).powi(npow) * ratio_prod;

    let mut prod = C64::new(1.0, 0.0);
    for (l, &xl) in xs.iter().enumerate() {
        if l != n - 1 {
            prod *= xn - xl;
        }
    }
    let mut sum = C64::new(0.0, 0.0);
    for m in 1..=(model.n() + 1) {
        if m == model.mbar() {
            continue;
        }
        sum += yddots[m - 1] * divided_power(mbar - m as i32, xn, x1)?;
    }
    Ok(acc - (xn.powi(npow) / prod) * sum)
}

/// Accelerations of all zeros for the closed self-contained system in the
/// zero variables: the coefficients and their velocities are recovered from
/// the state, the law accelerations substituted, and the transfer formulas
/// applied.
pub fn system_rhs(model: &ModelSpec, state: &ZeroState) -> Result<Vec<C64>> {
    guard_state(state)?;
    if state.n() != model.n() {
        return Err(Error::InvalidState(format!(
            "state has N = {} but the model expects N = {}",
            state.n(),
            model.n()
        )));
    }
    let y = coefficients_from_zeros(state);
    let ydot = coefficient_velocities_from_zeros(state);
    let mut yddot = vec![C64::new(0.0, 0.0); model.n() + 1];
    for m in model.evolved_indices() {
        let law = model.law(m).expect("evolved index carries a law");
        yddot[m - 1] = law.second_derivative(y[m - 1], ydot[m - 1])?;
    }
    let mut acc = Vec::with_capacity(model.n());
    acc.push(xddot_double(state, &yddot, model)?);
    for n in 2..=model.n() {
        acc.push(xddot_simple(n, state, &yddot, model)?);
    }
    Ok(acc)
}

/// Coefficient velocity vector with the reconstructed entry zeroed, as fed
/// to the transfer formulas (that entry never enters them).
pub fn masked_coefficient_velocities(model: &ModelSpec, state: &ZeroState) -> Vec<C64> {
    let mut ydot = coefficient_velocities_from_zeros(state);
    ydot[model.mbar() - 1] = C64::new(0.0, 0.0);
    ydot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::{CoefficientLaw, ModelSpec, Rate};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn model_n2(mbar: usize) -> ModelSpec {
        // Law kinds are irrelevant for the transfer formulas; any valid
        // assignment provides the index bookkeeping.
        let mut laws = BTreeMap::new();
        for m in 1..=3 {
            if m != mbar {
                laws.insert(m, CoefficientLaw::linear_velocity(Rate::new(1, 2), TAU));
            }
        }
        ModelSpec::new(2, mbar, laws).unwrap()
    }

    fn model_n(n: usize, mbar: usize) -> ModelSpec {
        let mut laws = BTreeMap::new();
        for m in 1..=(n + 1) {
            if m != mbar {
                laws.insert(m, CoefficientLaw::harmonic(Rate::new(1, 2), TAU));
            }
        }
        ModelSpec::new(n, mbar, laws).unwrap()
    }

    fn random_state(rng: &mut ChaCha8Rng, n: usize) -> ZeroState {
        loop {
            let draw = |rng: &mut ChaCha8Rng| c(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
            let s = ZeroState::new(
                draw(rng),
                (1..n).map(|_| draw(rng)).collect(),
                draw(rng),
                (1..n).map(|_| draw(rng)).collect(),
            );
            if let Ok(s) = s {
                if s.min_separation().0 >= 0.25 && s.x1().norm() >= 0.3 {
                    return s;
                }
            }
        }
    }

    fn random_derivs(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
        (0..=n)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    }

    #[test]
    fn divided_power_small_cases() {
        let a = c(0.8, -0.3);
        let b = c(-0.4, 0.9);
        assert_eq!(divided_power(0, a, b).unwrap(), c(0.0, 0.0));
        assert!((divided_power(1, a, b).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((divided_power(2, a, b).unwrap() - (a + b)).norm() < 1e-15);
        let got = divided_power(-1, c(2.0, 0.0), c(4.0, 0.0)).unwrap();
        assert!((got - c(-0.125, 0.0)).norm() < 1e-15);
        assert!(divided_power(-1, c(0.0, 0.0), b).is_err());
    }

    #[test]
    fn first_derivative_formulas_match_degree2_printouts() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let s = random_state(&mut rng, 2);
            let yd = random_derivs(&mut rng, 2);
            let (x1, x2) = (s.x1(), s.simple()[0]);
            let (d1, d2, d3) = (yd[0], yd[1], yd[2]);

            // mbar = 3: uses ydot_1, ydot_2.
            let m3 = model_n2(3);
            let v1 = xdot_double(&s, &yd, &m3).unwrap();
            let v2 = xdot_simple(2, &s, &yd, &m3).unwrap();
            let v1_ref = -(2.0 * x1 * d1 + d2) / (2.0 * (x1 - x2));
            let v2_ref = ((x1 + x2) * d1 + d2) / (x1 - x2);
            assert!((v1 - v1_ref).norm() <= 1e-12 * v1_ref.norm().max(1.0));
            assert!((v2 - v2_ref).norm() <= 1e-12 * v2_ref.norm().max(1.0));

            // mbar = 2: uses ydot_1, ydot_3.
            let m2 = model_n2(2);
            let v1 = xdot_double(&s, &yd, &m2).unwrap();
            let v2 = xdot_simple(2, &s, &yd, &m2).unwrap();
            let v1_ref = -(x1 * x1 * d1 - d3) / (2.0 * x1 * (x1 - x2));
            let v2_ref = (x1 * x2 * d1 - d3) / (x1 * (x1 - x2));
            assert!((v1 - v1_ref).norm() <= 1e-12 * v1_ref.norm().max(1.0));
            assert!((v2 - v2_ref).norm() <= 1e-12 * v2_ref.norm().max(1.0));

            // mbar = 1: uses ydot_2, ydot_3.
            let m1 = model_n2(1);
            let v1 = xdot_double(&s, &yd, &m1).unwrap();
            let v2 = xdot_simple(2, &s, &yd, &m1).unwrap();
            let v1_ref = (x1 * d2 + 2.0 * d3) / (2.0 * x1 * (x1 - x2));
            let v2_ref = -(x1 * x2 * d2 + (x1 + x2) * d3) / (x1 * x1 * (x1 - x2));
            assert!((v1 - v1_ref).norm() <= 1e-12 * v1_ref.norm().max(1.0));
            assert!((v2 - v2_ref).norm() <= 1e-12 * v2_ref.norm().max(1.0));
        }
    }

    #[test]
    fn second_derivative_formulas_match_degree2_printouts() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let s = random_state(&mut rng, 2);
            let ydd = random_derivs(&mut rng, 2);
            let (x1, x2, v1, v2) = (s.x1(), s.simple()[0], s.v1(), s.vsimple()[0]);
            let (a1, a2, a3) = (ydd[0], ydd[1], ydd[2]);

            let m3 = model_n2(3);
            let got1 = xddot_double(&s, &ydd, &m3).unwrap();
            let got2 = xddot_simple(2, &s, &ydd, &m3).unwrap();
            let ref1 = (2.0 * v1 * (v1 + 2.0 * v2) - 2.0 * x1 * a1 - a2) / (2.0 * (x1 - x2));
            let ref2 = (-2.0 * v1 * (v1 + 2.0 * v2) + (x1 + x2) * a1 + a2) / (x1 - x2);
            assert!((got1 - ref1).norm() <= 1e-12 * ref1.norm().max(1.0));
            assert!((got2 - ref2).norm() <= 1e-12 * ref2.norm().max(1.0));

            let m2 = model_n2(2);
            let got1 = xddot_double(&s, &ydd, &m2).unwrap();
            let got2 = xddot_simple(2, &s, &ydd, &m2).unwrap();
            let ref1 = (2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) - x1 * x1 * a1 + a3)
                / (2.0 * x1 * (x1 - x2));
            let ref2 =
                (-2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) + x1 * x2 * a1 - a3) / (x1 * (x1 - x2));
            assert!((got1 - ref1).norm() <= 1e-12 * ref1.norm().max(1.0));
            assert!((got2 - ref2).norm() <= 1e-12 * ref2.norm().max(1.0));

            let m1 = model_n2(1);
            let got1 = xddot_double(&s, &ydd, &m1).unwrap();
            let got2 = xddot_simple(2, &s, &ydd, &m1).unwrap();
            let ref1 = (-2.0 * x1 * v1 * (v1 - 2.0 * v2)
                + 4.0 * v1 * v1 * x2
                + x1 * a2
                + 2.0 * a3)
                / (2.0 * x1 * (x1 - x2));
            let ref2 = -(2.0 * v1 * (v1 * x2 * x2 + 2.0 * v2 * x1 * x1)
                + x1 * x2 * a2
                + (x1 + x2) * a3)
                / (x1 * x1 * (x1 - x2));
            assert!((got1 - ref1).norm() <= 1e-12 * ref1.norm().max(1.0));
            assert!((got2 - ref2).norm() <= 1e-12 * ref2.norm().max(1.0));
        }
    }

    #[test]
    fn zero_coefficient_motion_freezes_the_zeros() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let zeros = vec![c(0.0, 0.0); 4];
        for mbar in 1..=4 {
            let model = model_n(3, mbar);
            let s = random_state(&mut rng, 3);
            assert!(xdot_double(&s, &zeros, &model).unwrap().norm() < 1e-15);
            for n in 2..=3 {
                assert!(xdot_simple(n, &s, &zeros, &model).unwrap().norm() < 1e-15);
            }
            let stationary = ZeroState::new(
                s.x1(),
                s.simple().to_vec(),
                c(0.0, 0.0),
                vec![c(0.0, 0.0); 2],
            )
            .unwrap();
            assert!(xddot_double(&stationary, &zeros, &model).unwrap().norm() < 1e-15);
            for n in 2..=3 {
                assert!(
                    xddot_simple(n, &stationary, &zeros, &model).unwrap().norm() < 1e-15
                );
            }
        }
    }

    #[test]
    fn near_singular_states_are_refused() {
        let model = model_n2(3);
        let s = ZeroState::new_unchecked(
            c(1.0, 0.0),
            vec![c(1.0 + 5e-9, 0.0)],
            c(0.1, 0.0),
            vec![c(0.0, 0.1)],
        );
        assert!(matches!(
            system_rhs(&model, &s),
            Err(Error::SingularConfiguration { .. })
        ));
    }

    #[test]
    fn reconstructed_index_never_enters() {
        // Garbage in the mbar slot must not change any transfer formula.
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for n in 2..=4 {
            for mbar in 1..=(n + 1) {
                let model = model_n(n, mbar);
                let s = random_state(&mut rng, n);
                let mut derivs = random_derivs(&mut rng, n);
                let v_ref = xdot_double(&s, &derivs, &model).unwrap();
                let a_ref = xddot_double(&s, &derivs, &model).unwrap();
                let simple_ref: Vec<C64> = (2..=n)
                    .map(|k| xdot_simple(k, &s, &derivs, &model).unwrap())
                    .collect();
                derivs[mbar - 1] = c(1e9, -3e8);
                assert_eq!(xdot_double(&s, &derivs, &model).unwrap(), v_ref);
                assert_eq!(xddot_double(&s, &derivs, &model).unwrap(), a_ref);
                for (k, &r) in (2..=n).zip(&simple_ref) {
                    assert_eq!(xdot_simple(k, &s, &derivs, &model).unwrap(), r);
                }
            }
        }
    }

    #[test]
    fn equal_rate_drift_model_simplifies() {
        // With every rate equal the mbar = 3 system collapses to
        // xddot_1 = v1 (v1 + 2 v2) / (x1 - x2) + i omega r v1.
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let rate = Rate::new(2, 3);
        let mut laws = BTreeMap::new();
        laws.insert(1, CoefficientLaw::linear_velocity(rate, TAU));
        laws.insert(2, CoefficientLaw::linear_velocity(rate, TAU));
        let model = ModelSpec::new(2, 3, laws).unwrap();
        let r = 2.0 / 3.0;
        for _ in 0..50 {
            let s = random_state(&mut rng, 2);
            let acc = system_rhs(&model, &s).unwrap();
            let (x1, x2, v1, v2) = (s.x1(), s.simple()[0], s.v1(), s.vsimple()[0]);
            let iwr = C64::new(0.0, TAU * r);
            let ref1 = v1 * (v1 + 2.0 * v2) / (x1 - x2) + iwr * v1;
            let ref2 = -2.0 * v1 * (v1 + 2.0 * v2) / (x1 - x2) + iwr * v2;
            assert!((acc[0] - ref1).norm() <= 1e-12 * ref1.norm().max(1.0));
            assert!((acc[1] - ref2).norm() <= 1e-12 * ref2.norm().max(1.0));
        }
    }

    #[test]
    fn top_index_reconstruction_avoids_negative_powers() {
        // For mbar = N + 1 every divided power has a nonnegative exponent, so
        // the formulas stay regular as x1 shrinks toward the origin guard.
        let model = model_n(3, 4);
        let s = ZeroState::new(
            c(1e-6, 0.0),
            vec![c(1.0, 0.3), c(-0.8, 0.7)],
            c(0.2, -0.1),
            vec![c(0.1, 0.0), c(0.0, 0.2)],
        )
        .unwrap();
        let acc = system_rhs(&model, &s).unwrap();
        for a in acc {
            assert!(a.norm() < 1e3, "unexpected blow-up: {a}");
        }
    }

    proptest! {
        #[test]
        fn divided_power_identity_holds(
            k in -6i32..=6,
            are in -2.0f64..2.0,
            aim in -2.0f64..2.0,
            bre in -2.0f64..2.0,
            bim in -2.0f64..2.0,
        ) {
            let a = c(are + 2.5, aim);
            let b = c(bre - 2.5, bim);
            prop_assume!((a - b).norm() >= 1e-3);
            prop_assume!(a.norm() >= 1e-2 && b.norm() >= 1e-2);
            let dp = divided_power(k, a, b).unwrap();
            let direct = a.powi(k) - b.powi(k);
            let scale = direct.norm().max(1e-30);
            prop_assert!((dp * (a - b) - direct).norm() <= 1e-12 * scale.max(1.0));
        }
    }
}
