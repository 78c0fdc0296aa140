//! Built-in example models and the transcribed explicit systems they
//! generate.
//!
//! Presets are compiled-in constants: model structure, parameters, initial
//! conditions and default sampling for every example configuration. The
//! [`printed`] module holds hand-transcribed right-hand sides of the same
//! systems as independent expression trees; they are cross-checked against
//! the generic transfer formulas before use, and readings that fail that
//! cross-check are kept, unused, in [`alt`].

use crate::error::{Error, Result};
use crate::laws::{CoefficientLaw, ModelSpec, Rate};
use crate::poly::{C64, ZeroState};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

/// Numeric parameters of a catalog system: one rational rate slot per
/// coefficient index (unused slots hold 1), the shared angular frequency and
/// the damping constant (unused when no damped law is present).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedParams {
    pub rates: [(i64, i64); 4],
    pub omega: f64,
    pub damping: f64,
}

impl PrintedParams {
    pub fn rate(&self, m: usize) -> f64 {
        let (p, q) = self.rates[m - 1];
        p as f64 / q as f64
    }

    pub fn rate_ratio(&self, m: usize) -> Rate {
        let (p, q) = self.rates[m - 1];
        Rate::new(p, q)
    }
}

/// Law family used by a preset entry; the rate slot is the coefficient index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawFamily {
    LinearVelocity,
    Harmonic,
    Damped,
}

impl LawFamily {
    fn build(self, m: usize, params: &PrintedParams) -> CoefficientLaw {
        match self {
            LawFamily::LinearVelocity => {
                CoefficientLaw::linear_velocity(params.rate_ratio(m), params.omega)
            }
            LawFamily::Harmonic => CoefficientLaw::harmonic(params.rate_ratio(m), params.omega),
            LawFamily::Damped => CoefficientLaw::damped(params.damping, params.omega),
        }
    }
}

/// Identifier of a transcribed explicit system in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrintedSystemId {
    S311,
    S312,
    S313,
    S321,
    S322,
    S323,
    S331,
    S332,
    S333,
    S341,
    S342,
    S343,
    S35M1,
    S35M2,
    S35M3,
    S35M4,
    /// Equal-rate simplifications of the drift family, by reconstructed index.
    DriftEqualMbar3,
    DriftEqualMbar2,
    DriftEqualMbar1,
    /// Equal-rate simplifications of the harmonic family.
    HarmonicEqualMbar3,
    HarmonicEqualMbar2,
    HarmonicEqualMbar1,
}

impl PrintedSystemId {
    pub fn all() -> &'static [PrintedSystemId] {
        use PrintedSystemId::*;
        &[
            S311, S312, S313, S321, S322, S323, S331, S332, S333, S341, S342, S343, S35M1, S35M2,
            S35M3, S35M4, DriftEqualMbar3, DriftEqualMbar2, DriftEqualMbar1, HarmonicEqualMbar3,
            HarmonicEqualMbar2, HarmonicEqualMbar1,
        ]
    }

    pub fn name(&self) -> &'static str {
        use PrintedSystemId::*;
        match self {
            S311 => "3.1.1",
            S312 => "3.1.2",
            S313 => "3.1.3",
            S321 => "3.2.1",
            S322 => "3.2.2",
            S323 => "3.2.3",
            S331 => "3.3.1",
            S332 => "3.3.2",
            S333 => "3.3.3",
            S341 => "3.4.1",
            S342 => "3.4.2",
            S343 => "3.4.3",
            S35M1 => "3.5-mbar1",
            S35M2 => "3.5-mbar2",
            S35M3 => "3.5-mbar3",
            S35M4 => "3.5-mbar4",
            DriftEqualMbar3 => "drift-equal-mbar3",
            DriftEqualMbar2 => "drift-equal-mbar2",
            DriftEqualMbar1 => "drift-equal-mbar1",
            HarmonicEqualMbar3 => "harmonic-equal-mbar3",
            HarmonicEqualMbar2 => "harmonic-equal-mbar2",
            HarmonicEqualMbar1 => "harmonic-equal-mbar1",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::all().iter().copied().find(|id| id.name() == text)
    }

    /// Number of zeros N of the system.
    pub fn n(&self) -> usize {
        match self.structure().0 {
            n => n,
        }
    }

    /// `(N, mbar, law assignment)` of the generating model.
    pub fn structure(&self) -> (usize, usize, &'static [(usize, LawFamily)]) {
        use LawFamily::*;
        use PrintedSystemId::*;
        match self {
            S311 | DriftEqualMbar3 => (2, 3, &[(1, LinearVelocity), (2, LinearVelocity)]),
            S312 | DriftEqualMbar2 => (2, 2, &[(1, LinearVelocity), (3, LinearVelocity)]),
            S313 | DriftEqualMbar1 => (2, 1, &[(2, LinearVelocity), (3, LinearVelocity)]),
            S321 | HarmonicEqualMbar3 => (2, 3, &[(1, Harmonic), (2, Harmonic)]),
            S322 | HarmonicEqualMbar2 => (2, 2, &[(1, Harmonic), (3, Harmonic)]),
            S323 | HarmonicEqualMbar1 => (2, 1, &[(2, Harmonic), (3, Harmonic)]),
            S331 => (2, 3, &[(1, Harmonic), (2, LinearVelocity)]),
            S332 => (2, 2, &[(1, Harmonic), (3, LinearVelocity)]),
            S333 => (2, 1, &[(2, Harmonic), (3, LinearVelocity)]),
            S341 => (2, 3, &[(1, Harmonic), (2, Damped)]),
            S342 => (2, 2, &[(1, Harmonic), (3, Damped)]),
            S343 => (2, 1, &[(2, Harmonic), (3, Damped)]),
            S35M1 => (3, 1, &[(2, Harmonic), (3, Harmonic), (4, Harmonic)]),
            S35M2 => (3, 2, &[(1, Harmonic), (3, Harmonic), (4, Harmonic)]),
            S35M3 => (3, 3, &[(1, Harmonic), (2, Harmonic), (4, Harmonic)]),
            S35M4 => (3, 4, &[(1, Harmonic), (2, Harmonic), (3, Harmonic)]),
        }
    }

    /// The generating model with the given parameters.
    pub fn model_spec(&self, params: &PrintedParams) -> Result<ModelSpec> {
        let (n, mbar, families) = self.structure();
        let mut laws = BTreeMap::new();
        for &(m, family) in families {
            laws.insert(m, family.build(m, params));
        }
        ModelSpec::new(n, mbar, laws)
    }

    /// Transcribed right-hand side: accelerations from positions and
    /// velocities.
    pub fn rhs(&self, params: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        use PrintedSystemId::*;
        match self {
            S311 => printed::system_3_1_1(params, x, v),
            S312 => printed::system_3_1_2(params, x, v),
            S313 => printed::system_3_1_3(params, x, v),
            S321 => printed::system_3_2_1(params, x, v),
            S322 => printed::system_3_2_2(params, x, v),
            S323 => printed::system_3_2_3(params, x, v),
            S331 => printed::system_3_3_1(params, x, v),
            S332 => printed::system_3_3_2(params, x, v),
            S333 => printed::system_3_3_3(params, x, v),
            S341 => printed::system_3_4_1(params, x, v),
            S342 => printed::system_3_4_2(params, x, v),
            S343 => printed::system_3_4_3(params, x, v),
            S35M1 => printed::system_3_5(params, 1, x, v),
            S35M2 => printed::system_3_5(params, 2, x, v),
            S35M3 => printed::system_3_5(params, 3, x, v),
            S35M4 => printed::system_3_5(params, 4, x, v),
            DriftEqualMbar3 => printed::drift_equal_rates_mbar3(params, x, v),
            DriftEqualMbar2 => printed::drift_equal_rates_mbar2(params, x, v),
            DriftEqualMbar1 => printed::drift_equal_rates_mbar1(params, x, v),
            HarmonicEqualMbar3 => printed::harmonic_equal_rates_mbar3(params, x, v),
            HarmonicEqualMbar2 => printed::harmonic_equal_rates_mbar2(params, x, v),
            HarmonicEqualMbar1 => printed::harmonic_equal_rates_mbar1(params, x, v),
        }
    }
}

/// A ready-to-run example configuration.
#[derive(Debug, Clone)]
pub struct Preset {
    pub id: &'static str,
    pub summary: &'static str,
    pub printed: PrintedSystemId,
    pub params: PrintedParams,
    positions: &'static [[f64; 2]],
    velocities: &'static [[f64; 2]],
    /// Default trajectory window and sample count (0.005 time step).
    pub t_end: f64,
    pub samples: usize,
    /// Claimed zero-trajectory period as an integer multiple of the basic
    /// period, for the configurations where one is established.
    pub period_multiple: Option<u32>,
}

impl Preset {
    pub fn n(&self) -> usize {
        self.printed.structure().0
    }

    pub fn mbar(&self) -> usize {
        self.printed.structure().1
    }

    pub fn model_spec(&self) -> ModelSpec {
        self.printed
            .model_spec(&self.params)
            .expect("preset models are valid by construction")
    }

    pub fn initial_state(&self) -> ZeroState {
        let p: Vec<C64> = self.positions.iter().map(|&[re, im]| C64::new(re, im)).collect();
        let v: Vec<C64> = self
            .velocities
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        ZeroState::new(p[0], p[1..].to_vec(), v[0], v[1..].to_vec())
            .expect("preset initial conditions are non-degenerate")
    }

    /// Uniform sample grid `[0, t_end]` with the preset's sample count.
    pub fn t_grid(&self) -> Vec<f64> {
        uniform_grid(self.t_end, self.samples)
    }
}

/// `samples` equally spaced times covering `[0, t_end]`.
pub fn uniform_grid(t_end: f64, samples: usize) -> Vec<f64> {
    assert!(samples >= 2 && t_end > 0.0);
    let dt = t_end / (samples - 1) as f64;
    (0..samples)
        .map(|k| if k + 1 == samples { t_end } else { k as f64 * dt })
        .collect()
}

const OMEGA: f64 = TAU;
const NO_DAMPING: f64 = 0.0;

macro_rules! presets {
    ($($preset:expr),+ $(,)?) => {
        vec![$($preset),+]
    };
}

/// All built-in presets.
pub fn all_presets() -> Vec<Preset> {
    // Initial data shared inside each example family.
    const IC_DRIFT: (&[[f64; 2]], &[[f64; 2]]) = (
        &[[0.90, -0.19], [1.96, 1.75]],
        &[[0.085, -0.37], [-0.34, 2.14]],
    );
    const IC_HARMONIC: (&[[f64; 2]], &[[f64; 2]]) = (
        &[[-2.4, -1.21], [4.89, 2.42]],
        &[[-6.82, -3.92], [-6.81, -2.44]],
    );
    const IC_HYBRID: (&[[f64; 2]], &[[f64; 2]]) = (
        &[[0.94, -0.28], [1.40, 1.11]],
        &[[-0.38, -4.68], [-9.20, 2.50]],
    );
    const IC_DAMPED: (&[[f64; 2]], &[[f64; 2]]) = (
        &[[1.21, 0.0], [1.42, 0.89]],
        &[[-0.56, -2.34], [-1.78, -0.54]],
    );
    const IC_THREE_BODY: (&[[f64; 2]], &[[f64; 2]]) = (
        &[[1.74, 1.42], [-3.20, 0.52], [0.44, -3.15]],
        &[[12.47, 4.46], [-10.23, 6.40], [3.16, -14.66]],
    );

    let rates_half_third = [(1, 2), (1, 3), (1, 1), (1, 1)];
    let rates_m13 = [(1, 2), (1, 1), (1, 3), (1, 1)];
    let rates_m23 = [(1, 1), (1, 2), (1, 3), (1, 1)];
    let drift = |rates, ic: (&'static [[f64; 2]], &'static [[f64; 2]])| PrintedParams {
        rates,
        omega: OMEGA,
        damping: NO_DAMPING,
    }
    .pipe(ic);
    // Small helper so each entry stays one readable block.
    struct P(PrintedParams, (&'static [[f64; 2]], &'static [[f64; 2]]));
    trait Pipe: Sized {
        fn pipe(self, ic: (&'static [[f64; 2]], &'static [[f64; 2]])) -> P;
    }
    impl Pipe for PrintedParams {
        fn pipe(self, ic: (&'static [[f64; 2]], &'static [[f64; 2]])) -> P {
            P(self, ic)
        }
    }
    let _ = &drift;

    let make = |id,
                summary,
                printed,
                P(params, (positions, velocities)): P,
                t_end: f64,
                period_multiple| Preset {
        id,
        summary,
        printed,
        params,
        positions,
        velocities,
        t_end,
        samples: (t_end / 0.005).round() as usize + 1,
        period_multiple,
    };

    let harmonic = |rates| PrintedParams {
        rates,
        omega: OMEGA,
        damping: NO_DAMPING,
    };
    let damped = |rates| PrintedParams {
        rates,
        omega: OMEGA,
        damping: 0.1,
    };

    presets![
        make(
            "example-3.1.1",
            "two-body drift pair (rates 1/2, 1/3), reconstructed index 3; zero period 12",
            PrintedSystemId::S311,
            harmonic(rates_half_third).pipe(IC_DRIFT),
            12.0,
            Some(12),
        ),
        make(
            "example-3.1.2",
            "two-body drift pair on coefficients 1 and 3, reconstructed index 2",
            PrintedSystemId::S312,
            harmonic(rates_m13).pipe(IC_DRIFT),
            12.0,
            None,
        ),
        make(
            "example-3.1.3",
            "two-body drift pair on coefficients 2 and 3, reconstructed index 1",
            PrintedSystemId::S313,
            harmonic(rates_m23).pipe(IC_DRIFT),
            12.0,
            None,
        ),
        make(
            "example-3.2.1",
            "two-body harmonic pair (rates 1/2, 1/3), reconstructed index 3; zero period 6",
            PrintedSystemId::S321,
            harmonic(rates_half_third).pipe(IC_HARMONIC),
            6.0,
            Some(6),
        ),
        make(
            "example-3.2.2",
            "two-body harmonic pair on coefficients 1 and 3, reconstructed index 2",
            PrintedSystemId::S322,
            harmonic(rates_m13).pipe(IC_HARMONIC),
            12.0,
            None,
        ),
        make(
            "example-3.2.3",
            "two-body harmonic pair on coefficients 2 and 3, reconstructed index 1",
            PrintedSystemId::S323,
            harmonic(rates_m23).pipe(IC_HARMONIC),
            12.0,
            None,
        ),
        make(
            "example-3.3.1",
            "harmonic coefficient 1 with drifting coefficient 2, reconstructed index 3",
            PrintedSystemId::S331,
            harmonic([(1, 3), (1, 2), (1, 1), (1, 1)]).pipe(IC_HYBRID),
            12.0,
            None,
        ),
        make(
            "example-3.3.2",
            "harmonic coefficient 1 with drifting coefficient 3, reconstructed index 2",
            PrintedSystemId::S332,
            harmonic([(1, 3), (1, 1), (1, 2), (1, 1)]).pipe(IC_HYBRID),
            12.0,
            None,
        ),
        make(
            "example-3.3.3",
            "harmonic coefficient 2 with drifting coefficient 3 (rates 1/3, 1/2); zero period 6",
            PrintedSystemId::S333,
            harmonic([(1, 1), (1, 3), (1, 2), (1, 1)]).pipe(IC_HYBRID),
            6.0,
            Some(6),
        ),
        make(
            "example-3.4.1",
            "harmonic coefficient 1 with damped coefficient 2; asymptotically isochronous",
            PrintedSystemId::S341,
            damped([(1, 3), (1, 1), (1, 1), (1, 1)]).pipe(IC_DAMPED),
            30.0,
            None,
        ),
        make(
            "example-3.4.2",
            "harmonic coefficient 1 (rate 1/3) with damped coefficient 3 (a = 0.1); \
             asymptotically isochronous",
            PrintedSystemId::S342,
            damped([(1, 3), (1, 1), (1, 1), (1, 1)]).pipe(IC_DAMPED),
            30.0,
            None,
        ),
        make(
            "example-3.4.3",
            "harmonic coefficient 2 with damped coefficient 3; asymptotically isochronous",
            PrintedSystemId::S343,
            damped([(1, 1), (1, 3), (1, 1), (1, 1)]).pipe(IC_DAMPED),
            30.0,
            None,
        ),
        make(
            "example-3.5-mbar1",
            "three-body harmonic model, reconstructed index 1",
            PrintedSystemId::S35M1,
            harmonic([(1, 1), (1, 2), (1, 3), (2, 3)]).pipe(IC_THREE_BODY),
            6.0,
            None,
        ),
        make(
            "example-3.5-mbar2",
            "three-body harmonic model, reconstructed index 2",
            PrintedSystemId::S35M2,
            harmonic([(1, 2), (1, 1), (1, 3), (2, 3)]).pipe(IC_THREE_BODY),
            6.0,
            None,
        ),
        make(
            "example-3.5-mbar3",
            "three-body harmonic model (rates 1/2, 1/3, 2/3), reconstructed index 3; \
             zero period 6",
            PrintedSystemId::S35M3,
            harmonic([(1, 2), (1, 3), (1, 1), (2, 3)]).pipe(IC_THREE_BODY),
            6.0,
            Some(6),
        ),
        make(
            "example-3.5-mbar4",
            "three-body harmonic model, reconstructed index 4",
            PrintedSystemId::S35M4,
            harmonic([(1, 2), (1, 3), (2, 3), (1, 1)]).pipe(IC_THREE_BODY),
            6.0,
            None,
        ),
    ]
}

pub fn find_preset(id: &str) -> Result<Preset> {
    all_presets()
        .into_iter()
        .find(|p| p.id == id)
        .ok_or_else(|| {
            let names: Vec<&str> = all_presets().iter().map(|p| p.id).collect();
            Error::Config(format!(
                "unknown preset {id:?}; available presets: {}",
                names.join(", ")
            ))
        })
}

/// Hand-transcribed explicit right-hand sides of the catalog systems.
///
/// Each function is an independent expression tree kept deliberately close
/// to its display form; the test suite checks every one of them against the
/// generic transfer formulas at random states.
pub mod printed {
    use super::PrintedParams;
    use crate::poly::C64;

    const I: C64 = C64::new(0.0, 1.0);

    pub fn system_3_1_1(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w = p.omega;
        let (r1, r2) = (p.rate(1), p.rate(2));
        let a1 = (v1 * (-I * (r2 * w) * x2 + v1 + 2.0 * v2)
            + I * w * x1 * ((2.0 * r1 - r2) * v1 + (r1 - r2) * v2))
            / (x1 - x2);
        let a2 = -I / (x1 - x2)
            * (-2.0 * I * v1 * (v1 + 2.0 * v2)
                + w * x2 * (2.0 * (r1 - r2) * v1 + r1 * v2)
                + w * x1 * (2.0 * (r1 - r2) * v1 + (r1 - 2.0 * r2) * v2));
        vec![a1, a2]
    }

    pub fn system_3_1_2(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w = p.omega;
        let (r1, r3) = (p.rate(1), p.rate(3));
        let a1 = (2.0 * x2 * v1 * v1
            + 2.0 * x1 * v1 * (-I * (r3 * w) * x2 + 2.0 * v2)
            + I * w * x1 * x1 * (2.0 * r1 * v1 + (r1 - r3) * v2))
            / (2.0 * x1 * (x1 - x2));
        let a2 = I / (x1 * (x1 - x2))
            * (2.0 * I * x2 * v1 * v1 + r3 * w * x1 * x1 * v2 + 4.0 * I * x1 * v1 * v2
                - w * x1 * x2 * (2.0 * (r1 - r3) * v1 + r1 * v2));
        vec![a1, a2]
    }

    pub fn system_3_1_3(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w = p.omega;
        let (r2, r3) = (p.rate(2), p.rate(3));
        let a1 = I / (x1 * (x1 - x2))
            * (-2.0 * I * x2 * v1 * v1
                + x1 * v1 * ((r2 - 2.0 * r3) * w * x2 + I * (v1 - 2.0 * v2))
                + w * x1 * x1 * (r2 * v1 + (r2 - r3) * v2));
        let a2 = I / (x1 * x1 * (x1 - x2))
            * (2.0 * (-r2 + r3) * w * x1 * x2 * x2 * v1
                + 2.0 * I * x2 * x2 * v1 * v1
                + r3 * w * x1 * x1 * x1 * v2
                + 4.0 * I * x1 * x1 * v1 * v2
                + w * x1 * x1 * x2 * (-2.0 * (r2 - r3) * v1 + (-2.0 * r2 + r3) * v2));
        vec![a1, a2]
    }

    pub fn system_3_2_1(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let (r1, r2) = (p.rate(1), p.rate(2));
        let (r1s, r2s) = (r1 * r1, r2 * r2);
        let a1 = (w2 * x1 * ((-4.0 * r1s + r2s) * x1 + 2.0 * (-r1s + r2s) * x2)
            + 2.0 * v1 * (v1 + 2.0 * v2))
            / (2.0 * (x1 - x2));
        let a2 = (w2 * x1 * ((2.0 * r1s - r2s) * x1 + (3.0 * r1s - 2.0 * r2s) * x2)
            + r1s * w2 * x2 * x2
            - 2.0 * v1 * (v1 + 2.0 * v2))
            / (x1 - x2);
        vec![a1, a2]
    }

    pub fn system_3_2_2(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let (r1, r3) = (p.rate(1), p.rate(3));
        let (r1s, r3s) = (r1 * r1, r3 * r3);
        let a1 = (w2 * x1 * x1 * (-2.0 * r1s * x1 + (-r1s + r3s) * x2)
            + 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2))
            / (2.0 * x1 * (x1 - x2));
        let a2 = (w2 * x1 * x2 * (r1s * (2.0 * x1 + x2) - r3s * x1)
            - 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2))
            / (x1 * (x1 - x2));
        vec![a1, a2]
    }

    pub fn system_3_2_3(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let (r2, r3) = (p.rate(2), p.rate(3));
        let (r2s, r3s) = (r2 * r2, r3 * r3);
        let a1 = (w2 * x1 * x1 * (-r2s * x1 + 2.0 * (-r2s + r3s) * x2)
            + 2.0 * v1 * (2.0 * x2 * v1 - x1 * (v1 - 2.0 * v2)))
            / (2.0 * x1 * (x1 - x2));
        let a2 = (w2 * x1 * x1 * x2 * ((r2s - r3s) * x1 + (2.0 * r2s - r3s) * x2)
            - 2.0 * v1 * (x2 * x2 * v1 + 2.0 * x1 * x1 * v2))
            / (x1 * x1 * (x1 - x2));
        vec![a1, a2]
    }

    pub fn system_3_3_1(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w = p.omega;
        let (r1, r2) = (p.rate(1), p.rate(2));
        let a1 = (v1 * (v1 + 2.0 * v2)
            - r1 * r1 * w * w * x1 * (2.0 * x1 + x2)
            - I * (r2 * w) * (v1 * (x1 + x2) + v2 * x1))
            / (x1 - x2);
        let a2 = (-2.0 * v1 * (v1 + 2.0 * v2)
            + r1 * r1 * w * w * (x1 + x2) * (2.0 * x1 + x2)
            + 2.0 * I * (r2 * w) * (v1 * (x1 + x2) + v2 * x1))
            / (x1 - x2);
        vec![a1, a2]
    }

    pub fn system_3_3_2(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w = p.omega;
        let (r1, r3) = (p.rate(1), p.rate(3));
        let a1 = (2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1)
            - r1 * r1 * w * w * x1 * x1 * (2.0 * x1 + x2)
            - I * (r3 * w) * x1 * (2.0 * v1 * x2 + v2 * x1))
            / (2.0 * x1 * (x1 - x2));
        let a2 = (-2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1)
            + r1 * r1 * w * w * x1 * x2 * (2.0 * x1 + x2)
            + I * (r3 * w) * x1 * (2.0 * v1 * x2 + v2 * x1))
            / (x1 * (x1 - x2));
        vec![a1, a2]
    }

    pub fn system_3_3_3(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w = p.omega;
        let (r2, r3) = (p.rate(2), p.rate(3));
        let a1 = -(2.0 * v1 * (v1 * (x1 - 2.0 * x2) - 2.0 * v2 * x1)
            + r2 * r2 * w * w * x1 * x1 * (x1 + 2.0 * x2)
            + 2.0 * I * (r3 * w) * x1 * (2.0 * v1 * x2 + v2 * x1))
            / (2.0 * x1 * (x1 - x2));
        let a2 = (-2.0 * v1 * (v1 * x2 * x2 + 2.0 * v2 * x1 * x1)
            + r2 * r2 * w * w * x1 * x1 * x2 * (x1 + 2.0 * x2)
            + I * (r3 * w) * x1 * (x1 + x2) * (2.0 * v1 * x2 + v2 * x1))
            / (x1 * x1 * (x1 - x2));
        vec![a1, a2]
    }

    pub fn system_3_4_1(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let r = p.rate(1);
        let a = p.damping;
        let a1 = (v1 * (v1 + 2.0 * v2) - r * r * w2 * x1 * (2.0 * x1 + x2)
            + a * (v1 * (x1 + x2) + v2 * x1))
            / (x1 - x2);
        let a2 = (-2.0 * v1 * (v1 + 2.0 * v2) + r * r * w2 * (x1 + x2) * (2.0 * x1 + x2)
            - 2.0 * a * (v1 * (x1 + x2) + v2 * x1))
            / (x1 - x2);
        vec![a1, a2]
    }

    pub fn system_3_4_2(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let r = p.rate(1);
        let a = p.damping;
        let a1 = (2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1)
            - r * r * w2 * x1 * x1 * (2.0 * x1 + x2)
            + a * x1 * (2.0 * v1 * x2 + v2 * x1))
            / (2.0 * x1 * (x1 - x2));
        let a2 = (-2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1)
            + r * r * w2 * x1 * x2 * (2.0 * x1 + x2)
            - a * x1 * (2.0 * v1 * x2 + v2 * x1))
            / (x1 * (x1 - x2));
        vec![a1, a2]
    }

    pub fn system_3_4_3(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let r = p.rate(2);
        let a = p.damping;
        let a1 = (-2.0 * v1 * (v1 * (x1 - 2.0 * x2) - 2.0 * v2 * x1)
            - r * r * w2 * x1 * x1 * (x1 + 2.0 * x2)
            + 2.0 * a * x1 * (2.0 * v1 * x2 + v2 * x1))
            / (2.0 * x1 * (x1 - x2));
        let a2 = (-2.0 * v1 * (v1 * x2 * x2 + 2.0 * v2 * x1 * x1)
            + r * r * w2 * x1 * x1 * x2 * (x1 + 2.0 * x2)
            - a * x1 * (x1 + x2) * (2.0 * v1 * x2 + v2 * x1))
            / (x1 * x1 * (x1 - x2));
        vec![a1, a2]
    }

    /// Three-body harmonic family, parametric in the reconstructed index.
    pub fn system_3_5(p: &PrintedParams, mbar: usize, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, x3, v1, v2, v3) = (x[0], x[1], x[2], v[0], v[1], v[2]);
        let w2 = p.omega * p.omega;
        let y = [
            -(2.0 * x1 + x2 + x3),
            x1 * x1 + 2.0 * x1 * x2 + 2.0 * x1 * x3 + x2 * x3,
            -(x1 * x1 * x2 + x1 * x1 * x3 + 2.0 * x1 * x2 * x3),
            x1 * x1 * x2 * x3,
        ];
        let mb = mbar as i32;

        let mut sum1 = C64::new(0.0, 0.0);
        for m in 1..=4 {
            if m == mbar {
                continue;
            }
            let rs = p.rate(m) * p.rate(m);
            sum1 += (m as f64 - mb as f64) * rs * w2 * x1.powi(3 - m as i32) * y[m - 1];
        }
        let a1 = -((4 - mb) as f64) * v1 * v1 / x1
            + v1 * (2.0 * v2 + v1) / (x1 - x2)
            + v1 * (2.0 * v3 + v1) / (x1 - x3)
            - sum1 / (2.0 * (x1 - x2) * (x1 - x3));

        let simple = |xn: C64, vn: C64, other_x: C64, other_v: C64| {
            let mut sum = C64::new(0.0, 0.0);
            for m in 1..=4 {
                if m == mbar {
                    continue;
                }
                let rs = p.rate(m) * p.rate(m);
                sum += rs * w2 * y[m - 1] * (xn.powi(mb - m as i32) - x1.powi(mb - m as i32))
                    / (xn - x1);
            }
            2.0 * vn * other_v / (xn - other_x)
                + 2.0 * v1 / (xn - x1)
                    * (2.0 * vn + (xn / x1).powi(4 - mb) * ((x1 - other_x) / (xn - other_x)) * v1)
                + xn.powi(4 - mb) / ((xn - x1) * (xn - other_x)) * sum
        };
        let a2 = simple(x2, v2, x3, v3);
        let a3 = simple(x3, v3, x2, v2);
        vec![a1, a2, a3]
    }

    pub fn drift_equal_rates_mbar3(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let iwr = I * (p.omega * p.rate(1));
        let a1 = v1 * (v1 + 2.0 * v2) / (x1 - x2) + iwr * v1;
        let a2 = -2.0 * v1 * (v1 + 2.0 * v2) / (x1 - x2) + iwr * v2;
        vec![a1, a2]
    }

    pub fn drift_equal_rates_mbar2(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let iwr = I * (p.omega * p.rate(1));
        let a1 = v1 * (v1 * x2 + 2.0 * v2 * x1) / (x1 * (x1 - x2)) + iwr * v1;
        let a2 = -2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) / (x1 * (x1 - x2)) + iwr * v2;
        vec![a1, a2]
    }

    pub fn drift_equal_rates_mbar1(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let iwr = I * (p.omega * p.rate(2));
        let a1 = -v1 * (v1 * (x1 - 2.0 * x2) - 2.0 * v2 * x1) / (x1 * (x1 - x2)) + iwr * v1;
        let a2 =
            -2.0 * v1 * (v1 * x2 * x2 + 2.0 * v2 * x1 * x1) / (x1 * x1 * (x1 - x2)) + iwr * v2;
        vec![a1, a2]
    }

    pub fn harmonic_equal_rates_mbar3(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2r2 = p.omega * p.omega * p.rate(1) * p.rate(1);
        let a1 = (-3.0 * w2r2 * x1 * x1 + 2.0 * v1 * (v1 + 2.0 * v2)) / (2.0 * (x1 - x2));
        let a2 = (w2r2 * (x1 * x1 + x1 * x2 + x2 * x2) - 2.0 * v1 * (v1 + 2.0 * v2)) / (x1 - x2);
        vec![a1, a2]
    }

    pub fn harmonic_equal_rates_mbar2(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2r2 = p.omega * p.omega * p.rate(1) * p.rate(1);
        let a1 = (-2.0 * w2r2 * x1 * x1 * x1 + 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2))
            / (2.0 * x1 * (x1 - x2));
        let a2 = (w2r2 * x1 * x2 * (x1 + x2) - 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2))
            / (x1 * (x1 - x2));
        vec![a1, a2]
    }

    pub fn harmonic_equal_rates_mbar1(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2r2 = p.omega * p.omega * p.rate(2) * p.rate(2);
        let a1 = (-w2r2 * x1 * x1 * x1
            + 2.0 * v1 * (2.0 * x2 * v1 - x1 * v1 + 2.0 * x1 * v2))
            / (2.0 * x1 * (x1 - x2));
        let a2 = (w2r2 * x1 * x1 * x2 * x2 - 2.0 * v1 * (x2 * x2 * v1 + 2.0 * x1 * x1 * v2))
            / (x1 * x1 * (x1 - x2));
        vec![a1, a2]
    }
}

/// Alternate transcription readings.
///
/// These are display-form readings that fail the cross-check against the
/// generic transfer formulas (a sign or power differs in the second
/// equation). They are retained so the cross-check can demonstrate the
/// discrepancy explicitly; nothing else uses them.
pub mod alt {
    use super::PrintedParams;
    use crate::poly::C64;

    pub fn system_3_2_1(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let mut acc = super::printed::system_3_2_1(p, x, v);
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let (r1s, r2s) = (p.rate(1) * p.rate(1), p.rate(2) * p.rate(2));
        // Velocity term with the opposite sign.
        acc[1] = (w2 * x1 * ((2.0 * r1s - r2s) * x1 + (3.0 * r1s - 2.0 * r2s) * x2)
            + r1s * w2 * x2 * x2
            + 2.0 * v1 * (v1 + 2.0 * v2))
            / (x1 - x2);
        acc
    }

    pub fn system_3_2_2(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let mut acc = super::printed::system_3_2_2(p, x, v);
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let (r1s, r3s) = (p.rate(1) * p.rate(1), p.rate(3) * p.rate(3));
        // Whole numerator with the opposite sign.
        acc[1] = (w2 * x1 * x2 * (r3s * x1 - r1s * (2.0 * x1 + x2))
            + 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2))
            / (x1 * (x1 - x2));
        acc
    }

    pub fn system_3_4_1(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let mut acc = super::printed::system_3_4_1(p, x, v);
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let r = p.rate(1);
        let a = p.damping;
        acc[1] = (2.0 * v1 * (v1 + 2.0 * v2) + r * r * w2 * (x1 + x2) * (2.0 * x1 + x2)
            - 2.0 * a * (v1 * (x1 + x2) + v2 * x1))
            / (x1 - x2);
        acc
    }

    pub fn system_3_4_2(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let mut acc = super::printed::system_3_4_2(p, x, v);
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2 = p.omega * p.omega;
        let r = p.rate(1);
        let a = p.damping;
        // Linear rate factor in the restoring term.
        acc[1] = (-2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) + r * w2 * x1 * x2 * (2.0 * x1 + x2)
            - a * x1 * (2.0 * v1 * x2 + v2 * x1))
            / (x1 * (x1 - x2));
        acc
    }

    pub fn harmonic_equal_rates_mbar3(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let mut acc = super::printed::harmonic_equal_rates_mbar3(p, x, v);
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2r2 = p.omega * p.omega * p.rate(1) * p.rate(1);
        acc[1] = (w2r2 * (x1 * x1 + x1 * x2 + x2 * x2) + 2.0 * v1 * (v1 + 2.0 * v2)) / (x1 - x2);
        acc
    }

    pub fn harmonic_equal_rates_mbar2(p: &PrintedParams, x: &[C64], v: &[C64]) -> Vec<C64> {
        let mut acc = super::printed::harmonic_equal_rates_mbar2(p, x, v);
        let (x1, x2, v1, v2) = (x[0], x[1], v[0], v[1]);
        let w2r2 = p.omega * p.omega * p.rate(1) * p.rate(1);
        acc[1] = (w2r2 * x1 * x2 * (x2 - x1) + 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2))
            / (x1 * (x1 - x2));
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_well_formed() {
        let presets = all_presets();
        assert_eq!(presets.len(), 16);
        for p in &presets {
            let model = p.model_spec();
            let state = p.initial_state();
            assert_eq!(model.n(), state.n(), "{}", p.id);
            assert_eq!(model.mbar(), p.mbar(), "{}", p.id);
            let grid = p.t_grid();
            assert_eq!(grid.len(), p.samples);
            assert_eq!(grid[0], 0.0);
            assert_eq!(*grid.last().unwrap(), p.t_end);
        }
    }

    #[test]
    fn preset_lookup_reports_available_names() {
        assert!(find_preset("example-3.2.1").is_ok());
        let err = find_preset("example-9.9.9").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("example-3.1.1") && msg.contains("example-3.5-mbar4"));
    }

    #[test]
    fn grid_spacing_matches_default_step() {
        let p = find_preset("example-3.2.1").unwrap();
        assert_eq!(p.samples, 1201);
        let grid = p.t_grid();
        assert!((grid[1] - 0.005).abs() < 1e-12);
    }

    #[test]
    fn printed_ids_round_trip_names() {
        for id in PrintedSystemId::all() {
            assert_eq!(PrintedSystemId::parse(id.name()), Some(*id));
        }
        assert_eq!(PrintedSystemId::parse("nope"), None);
    }
}
