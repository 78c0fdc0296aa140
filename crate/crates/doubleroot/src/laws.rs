//! Closed-form solvable second-order laws for the polynomial coefficients,
//! their exact flows, and the model assignment of one law per coefficient
//! index with a single reconstructed index left out.

use crate::error::{Error, Result};
use crate::poly::C64;
use num_integer::Integer;
use num_rational::Ratio;
use std::collections::BTreeMap;

/// Exact rational rate `r = p/q` used by the rotating laws, kept as an
/// integer pair so period multiples are exact integer statements.
pub type Rate = Ratio<i64>;

/// Parse a rate given as `"p/q"` or a bare integer `"p"`.
pub fn parse_rate(text: &str) -> Result<Rate> {
    let parts: Vec<&str> = text.split('/').collect();
    let bad = |_| Error::Config(format!("cannot parse rational rate from {text:?}"));
    let rate = match parts.as_slice() {
        [p] => Rate::new(p.trim().parse::<i64>().map_err(bad)?, 1),
        [p, q] => {
            let den = q.trim().parse::<i64>().map_err(bad)?;
            if den == 0 {
                return Err(Error::Config(format!("zero denominator in rate {text:?}")));
            }
            Rate::new(p.trim().parse::<i64>().map_err(bad)?, den)
        }
        _ => return Err(Error::Config(format!("cannot parse rational rate from {text:?}"))),
    };
    if rate == Rate::new(0, 1) {
        return Err(Error::Config("rates must be nonvanishing".to_string()));
    }
    Ok(rate)
}

pub fn rate_to_string(rate: Rate) -> String {
    if *rate.denom() == 1 {
        format!("{}", rate.numer())
    } else {
        format!("{}/{}", rate.numer(), rate.denom())
    }
}

/// The closed-form law families for a single coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LawKind {
    /// `yddot = i r omega ydot`: the velocity rotates uniformly in the plane.
    LinearVelocity { rate: Rate },
    /// `yddot = -(r omega)^2 y`: harmonic oscillation.
    Harmonic { rate: Rate },
    /// `yddot = -a ydot` with `a > 0`: exponentially damped drift.
    Damped { decay: f64 },
    /// The reconstructed coefficient; it carries no evolution law.
    Frozen,
}

/// A coefficient law together with the shared angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientLaw {
    pub kind: LawKind,
    pub omega: f64,
}

impl CoefficientLaw {
    pub fn linear_velocity(rate: Rate, omega: f64) -> Self {
        Self {
            kind: LawKind::LinearVelocity { rate },
            omega,
        }
    }

    pub fn harmonic(rate: Rate, omega: f64) -> Self {
        Self {
            kind: LawKind::Harmonic { rate },
            omega,
        }
    }

    pub fn damped(decay: f64, omega: f64) -> Self {
        Self {
            kind: LawKind::Damped { decay },
            omega,
        }
    }

    pub fn frozen() -> Self {
        Self {
            kind: LawKind::Frozen,
            omega: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            LawKind::LinearVelocity { rate } | LawKind::Harmonic { rate } => {
                if rate == Rate::new(0, 1) {
                    return Err(Error::InvalidModel("rates must be nonvanishing".into()));
                }
                if self.omega == 0.0 || !self.omega.is_finite() {
                    return Err(Error::InvalidModel(
                        "omega must be a nonvanishing finite real".into(),
                    ));
                }
            }
            LawKind::Damped { decay } => {
                if !(decay > 0.0) || !decay.is_finite() {
                    return Err(Error::InvalidModel("damping must be a positive real".into()));
                }
            }
            LawKind::Frozen => {}
        }
        Ok(())
    }

    fn rate_value(rate: Rate) -> f64 {
        *rate.numer() as f64 / *rate.denom() as f64
    }

    /// Exact state `(y(t), ydot(t))` of the law started from `(y0, ydot0)`.
    ///
    /// A frozen coefficient keeps its initial state.
    pub fn flow(&self, y0: C64, ydot0: C64, t: f64) -> (C64, C64) {
        match self.kind {
            LawKind::LinearVelocity { rate } => {
                let phase = C64::new(0.0, Self::rate_value(rate) * self.omega);
                let growth = (phase * t).exp();
                (y0 + ydot0 * (growth - 1.0) / phase, ydot0 * growth)
            }
            LawKind::Harmonic { rate } => {
                let w = Self::rate_value(rate) * self.omega;
                let (sin, cos) = (w * t).sin_cos();
                (
                    y0 * cos + ydot0 * (sin / w),
                    -y0 * (w * sin) + ydot0 * cos,
                )
            }
            LawKind::Damped { decay } => {
                let fade = (-decay * t).exp();
                (y0 + ydot0 * ((1.0 - fade) / decay), ydot0 * fade)
            }
            LawKind::Frozen => (y0, ydot0),
        }
    }

    /// The law's acceleration `f(ydot, y)`.
    pub fn second_derivative(&self, y: C64, ydot: C64) -> Result<C64> {
        match self.kind {
            LawKind::LinearVelocity { rate } => {
                Ok(C64::new(0.0, Self::rate_value(rate) * self.omega) * ydot)
            }
            LawKind::Harmonic { rate } => {
                let w = Self::rate_value(rate) * self.omega;
                Ok(-(w * w) * y)
            }
            LawKind::Damped { decay } => Ok(-decay * ydot),
            LawKind::Frozen => Err(Error::FrozenLaw),
        }
    }

    fn is_rotating(&self) -> bool {
        matches!(
            self.kind,
            LawKind::LinearVelocity { .. } | LawKind::Harmonic { .. }
        )
    }

    fn rate(&self) -> Option<Rate> {
        match self.kind {
            LawKind::LinearVelocity { rate } | LawKind::Harmonic { rate } => Some(rate),
            _ => None,
        }
    }
}

/// Degree parameters and the per-index law assignment. The distinguished
/// index `mbar` gets no law: that coefficient is reconstructed from the
/// double-root constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    n: usize,
    mbar: usize,
    laws: BTreeMap<usize, CoefficientLaw>,
}

impl ModelSpec {
    pub fn new(n: usize, mbar: usize, laws: BTreeMap<usize, CoefficientLaw>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModel(format!("need N >= 2, got {n}")));
        }
        if mbar < 1 || mbar > n + 1 {
            return Err(Error::InvalidModel(format!(
                "mbar must lie in 1..={}, got {mbar}",
                n + 1
            )));
        }
        if laws.contains_key(&mbar) {
            return Err(Error::InvalidModel(format!(
                "index {mbar} is reconstructed and must not carry a law"
            )));
        }
        for (&m, law) in &laws {
            if m < 1 || m > n + 1 {
                return Err(Error::InvalidModel(format!(
                    "law index {m} outside 1..={}",
                    n + 1
                )));
            }
            law.validate()?;
        }
        if laws.len() != n {
            return Err(Error::InvalidModel(format!(
                "expected {} laws (all indices except {mbar}), got {}",
                n,
                laws.len()
            )));
        }
        let omegas: Vec<f64> = laws
            .values()
            .filter(|l| l.is_rotating())
            .map(|l| l.omega)
            .collect();
        if omegas.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::InvalidModel(
                "all rotating laws must share one omega".into(),
            ));
        }
        Ok(Self { n, mbar, laws })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mbar(&self) -> usize {
        self.mbar
    }

    pub fn law(&self, m: usize) -> Option<&CoefficientLaw> {
        self.laws.get(&m)
    }

    /// Evolved coefficient indices (everything except `mbar`), ascending.
    pub fn evolved_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.laws.keys().copied()
    }

    /// Shared angular frequency of the rotating laws, when any exist.
    pub fn omega(&self) -> Option<f64> {
        self.laws.values().find(|l| l.is_rotating()).map(|l| l.omega)
    }

    /// Basic period `T = 2 pi / |omega|`.
    pub fn basic_period(&self) -> Option<f64> {
        self.omega().map(|w| std::f64::consts::TAU / w.abs())
    }

    /// Common period of the coefficient flows as an exact integer multiple of
    /// the basic period: `lcm` of the rate denominators. `None` as soon as a
    /// damped law is present (those models are only asymptotically periodic).
    pub fn minimal_period(&self) -> Option<f64> {
        if self
            .laws
            .values()
            .any(|l| matches!(l.kind, LawKind::Damped { .. }))
        {
            return None;
        }
        Some(self.basic_period().unwrap_or(0.0) * self.period_multiple_of_rotating_part() as f64)
    }

    /// `lcm` of the reduced rate denominators over the rotating laws (1 when
    /// there are none). `k * T` is a period of every rotating coefficient.
    pub fn period_multiple_of_rotating_part(&self) -> u64 {
        self.laws
            .values()
            .filter_map(CoefficientLaw::rate)
            .fold(1u64, |acc, r| acc.lcm(&(*r.denom() as u64)))
    }

    /// Period of the rotating subsystem alone, ignoring damped laws. This is
    /// the natural probe period for asymptotically isochronous models.
    pub fn rotating_period(&self) -> Option<f64> {
        self.basic_period()
            .map(|t| t * self.period_multiple_of_rotating_part() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn drift(p: i64, q: i64) -> CoefficientLaw {
        CoefficientLaw::linear_velocity(Rate::new(p, q), TAU)
    }

    fn spring(p: i64, q: i64) -> CoefficientLaw {
        CoefficientLaw::harmonic(Rate::new(p, q), TAU)
    }

    #[test]
    fn flow_is_identity_at_t0() {
        let y0 = c(0.3, -1.2);
        let v0 = c(-0.8, 0.45);
        for law in [
            drift(1, 2),
            spring(2, 3),
            CoefficientLaw::damped(0.1, TAU),
            CoefficientLaw::frozen(),
        ] {
            let (y, v) = law.flow(y0, v0, 0.0);
            assert!((y - y0).norm() < 1e-15);
            assert!((v - v0).norm() < 1e-15);
        }
    }

    #[test]
    fn linear_velocity_full_phase_returns_to_start() {
        // r = 1/2, omega = 2 pi, t = 4: phase r*omega*t = 4 pi.
        let law = drift(1, 2);
        let y0 = c(1.3, 0.4);
        let v0 = c(-0.2, 0.9);
        let (y, v) = law.flow(y0, v0, 4.0);
        assert!((y - y0).norm() < 1e-13);
        assert!((v - v0).norm() < 1e-13);
    }

    #[test]
    fn harmonic_half_period_negates() {
        // cos(2 pi t / 3) at t = 1.5 is cos(pi) = -1.
        let law = spring(1, 3);
        let (y, v) = law.flow(c(1.0, 0.0), c(0.0, 0.0), 1.5);
        assert!((y - c(-1.0, 0.0)).norm() < 1e-13);
        assert!(v.norm() < 1e-13);
    }

    #[test]
    fn second_derivative_matches_law_definitions() {
        let y = c(0.7, -0.2);
        let v = c(-1.1, 0.6);
        let got = drift(1, 2).second_derivative(y, v).unwrap();
        assert!((got - C64::new(0.0, 0.5 * TAU) * v).norm() < 1e-15);
        let got = spring(1, 3).second_derivative(y, v).unwrap();
        let w = TAU / 3.0;
        assert!((got - (-(w * w) * y)).norm() < 1e-13);
        let got = CoefficientLaw::damped(0.1, TAU).second_derivative(y, v).unwrap();
        assert!((got - (-0.1 * v)).norm() < 1e-15);
        assert!(matches!(
            CoefficientLaw::frozen().second_derivative(y, v),
            Err(Error::FrozenLaw)
        ));
    }

    #[test]
    fn flow_satisfies_its_own_ode() {
        let h = 1e-6;
        let y0 = c(0.9, -0.35);
        let v0 = c(0.15, 0.8);
        for law in [drift(3, 2), spring(2, 5), CoefficientLaw::damped(0.37, TAU)] {
            for &t in &[0.3, 1.7, 4.1] {
                let (y, v) = law.flow(y0, v0, t);
                let (yp, vp) = law.flow(y0, v0, t + h);
                let (ym, vm) = law.flow(y0, v0, t - h);
                let fd_v = (yp - ym) / (2.0 * h);
                let fd_a = (vp - vm) / (2.0 * h);
                let a = law.second_derivative(y, v).unwrap();
                assert!((fd_v - v).norm() <= 1e-5 * v.norm().max(1.0));
                assert!((fd_a - a).norm() <= 1e-5 * a.norm().max(1.0));
            }
        }
    }

    #[test]
    fn minimal_period_lcm_and_damped_cases() {
        let mut laws = BTreeMap::new();
        laws.insert(1, drift(1, 2));
        laws.insert(2, drift(1, 3));
        let spec = ModelSpec::new(2, 3, laws).unwrap();
        let period = spec.minimal_period().unwrap();
        assert!((period - 6.0).abs() < 1e-12);

        let mut laws = BTreeMap::new();
        laws.insert(1, spring(1, 1));
        laws.insert(2, spring(1, 1));
        let spec = ModelSpec::new(2, 3, laws).unwrap();
        assert!((spec.minimal_period().unwrap() - 1.0).abs() < 1e-12);

        let mut laws = BTreeMap::new();
        laws.insert(1, spring(1, 3));
        laws.insert(3, CoefficientLaw::damped(0.1, TAU));
        let spec = ModelSpec::new(2, 2, laws).unwrap();
        assert_eq!(spec.minimal_period(), None);
        assert!((spec.rotating_period().unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn model_validation_rejects_bad_assignments() {
        let mut laws = BTreeMap::new();
        laws.insert(1, drift(1, 2));
        laws.insert(3, drift(1, 3));
        assert!(matches!(
            ModelSpec::new(2, 3, laws),
            Err(Error::InvalidModel(_))
        ));

        let mut laws = BTreeMap::new();
        laws.insert(1, drift(1, 2));
        assert!(ModelSpec::new(2, 3, laws).is_err());

        let mut laws = BTreeMap::new();
        laws.insert(1, CoefficientLaw::damped(-0.1, TAU));
        laws.insert(2, drift(1, 3));
        assert!(ModelSpec::new(2, 3, laws).is_err());
    }

    proptest! {
        #[test]
        fn flow_group_property(
            kind in 0usize..3,
            num in prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2), Just(3)],
            den in 1i64..6,
            t1 in -3.0f64..3.0,
            t2 in -3.0f64..3.0,
            re in -1.0f64..1.0,
            im in -1.0f64..1.0,
        ) {
            let law = match kind {
                0 => drift(num, den),
                1 => spring(num, den),
                _ => CoefficientLaw::damped(0.2 + (num.unsigned_abs() as f64) * 0.1, TAU),
            };
            let y0 = c(re, im - 0.5);
            let v0 = c(im, re + 0.25);
            let (y_mid, v_mid) = law.flow(y0, v0, t1);
            let (y_two, v_two) = law.flow(y_mid, v_mid, t2);
            let (y_one, v_one) = law.flow(y0, v0, t1 + t2);
            let scale = y_one.norm().max(v_one.norm()).max(1.0);
            prop_assert!((y_two - y_one).norm() <= 1e-12 * scale);
            prop_assert!((v_two - v_one).norm() <= 1e-12 * scale);
        }

        #[test]
        fn rotating_flows_have_exact_integer_period(
            kind in 0usize..2,
            num in prop_oneof![Just(-3i64), Just(-1), Just(1), Just(2), Just(5)],
            den in 1i64..6,
            re in -1.0f64..1.0,
            im in -1.0f64..1.0,
        ) {
            let rate = Rate::new(num, den);
            let law = if kind == 0 {
                CoefficientLaw::linear_velocity(rate, TAU)
            } else {
                CoefficientLaw::harmonic(rate, TAU)
            };
            // Period multiple = reduced denominator; basic period T = 1.
            let k = *rate.denom() as f64;
            let y0 = c(re, im + 0.3);
            let v0 = c(im - 0.2, re);
            let (y, v) = law.flow(y0, v0, k);
            let scale = y0.norm().max(v0.norm()).max(1.0);
            prop_assert!((y - y0).norm() <= 1e-10 * scale);
            prop_assert!((v - v0).norm() <= 1e-10 * scale);
        }
    }
}
