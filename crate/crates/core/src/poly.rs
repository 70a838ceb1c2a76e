//! Trigonometric polynomials `F(x) = sum_n a_n cos(nx) + b_n sin(nx)`, their
//! Gaussian ensembles and exact derivatives.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real trigonometric polynomial of degree `N`.
///
/// Coefficient vectors both have length `N + 1`; `b_0` is always zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialJson", into = "PolynomialJson")]
pub struct TrigPolynomial {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialJson {
    degree: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<PolynomialJson> for TrigPolynomial {
    type Error = Error;

    fn try_from(value: PolynomialJson) -> Result<Self> {
        if value.a.len() != value.degree + 1 {
            return Err(Error::InvalidInput(format!(
                "degree {} needs {} cosine coefficients, got {}",
                value.degree,
                value.degree + 1,
                value.a.len()
            )));
        }
        TrigPolynomial::new(value.a, value.b)
    }
}

impl From<TrigPolynomial> for PolynomialJson {
    fn from(value: TrigPolynomial) -> Self {
        PolynomialJson {
            degree: value.degree(),
            a: value.cos,
            b: value.sin,
        }
    }
}

impl TrigPolynomial {
    /// Builds a polynomial from cosine coefficients `a_0..a_N` and sine
    /// coefficients `b_0..b_N`. `b_0` is set to zero.
    pub fn new(cos: Vec<f64>, mut sin: Vec<f64>) -> Result<Self> {
        if cos.is_empty() {
            return Err(Error::InvalidInput("coefficient vectors are empty".into()));
        }
        if cos.len() != sin.len() {
            return Err(Error::InvalidInput(format!(
                "coefficient lengths differ: {} cosine vs {} sine",
                cos.len(),
                sin.len()
            )));
        }
        if cos.iter().chain(sin.iter()).any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        sin[0] = 0.0;
        Ok(Self { cos, sin })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            cos: vec![0.0; degree + 1],
            sin: vec![0.0; degree + 1],
        }
    }

    /// `amplitude * cos(mode * x)` as a degree-`degree` polynomial.
    pub fn cosine(degree: usize, mode: usize, amplitude: f64) -> Self {
        assert!(mode <= degree, "mode {mode} exceeds degree {degree}");
        let mut p = Self::zero(degree);
        p.cos[mode] = amplitude;
        p
    }

    /// `amplitude * sin(mode * x)` as a degree-`degree` polynomial.
    pub fn sine(degree: usize, mode: usize, amplitude: f64) -> Self {
        assert!(mode <= degree, "mode {mode} exceeds degree {degree}");
        let mut p = Self::zero(degree);
        if mode > 0 {
            p.sin[mode] = amplitude;
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.cos.len() - 1
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn is_zero(&self) -> bool {
        self.cos.iter().chain(self.sin.iter()).all(|&c| c == 0.0)
    }

    /// Sum of the absolute values of all coefficients, a bound on `|F|`.
    pub fn coeff_l1_norm(&self) -> f64 {
        self.cos.iter().chain(self.sin.iter()).map(|c| c.abs()).sum()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.cos
            .iter()
            .chain(self.sin.iter())
            .fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            cos: self.cos.iter().map(|c| c * factor).collect(),
            sin: self.sin.iter().map(|c| c * factor).collect(),
        }
    }

    /// Complex coefficients `c_n = a_n - i b_n`, so `F(x) = Re sum_n c_n e^{inx}`.
    pub fn analytic_coeffs(&self) -> Vec<Complex64> {
        self.cos
            .iter()
            .zip(&self.sin)
            .map(|(&a, &b)| Complex64::new(a, -b))
            .collect()
    }

    /// Value of the sum at `x`, by Horner's rule in `z = e^{ix}`.
    pub fn evaluate(&self, x: f64) -> f64 {
        let z = Complex64::new(x.cos(), x.sin());
        let n = self.degree();
        let mut acc = Complex64::new(self.cos[n], -self.sin[n]);
        for k in (0..n).rev() {
            acc = acc * z + Complex64::new(self.cos[k], -self.sin[k]);
        }
        acc.re
    }

    /// Value and first derivative at `x`.
    pub fn evaluate_with_derivative(&self, x: f64) -> (f64, f64) {
        let z = Complex64::new(x.cos(), x.sin());
        let n = self.degree();
        let mut value = Complex64::new(self.cos[n], -self.sin[n]);
        let mut slope = value * n as f64;
        for k in (0..n).rev() {
            let c = Complex64::new(self.cos[k], -self.sin[k]);
            value = value * z + c;
            slope = slope * z + c * k as f64;
        }
        // d/dx Re(sum c_n e^{inx}) = Re(i sum n c_n e^{inx})
        (value.re, -slope.im)
    }

    /// Evaluates `F(pi x / N)`: in this coordinate the mean spacing of all
    /// `2N` zeros per period is one.
    pub fn evaluate_rescaled(&self, x_rescaled: f64) -> f64 {
        self.evaluate(PI * x_rescaled / self.degree().max(1) as f64)
    }

    /// Exact derivative of order `times`. Each step maps
    /// `(a_n, b_n) -> (n b_n, -n a_n)`.
    pub fn differentiate(&self, times: u32) -> Self {
        self.differentiate_scaled(times, 1.0)
    }

    /// Exact derivative of order `times` with each step additionally divided
    /// by `unit`, i.e. the derivative with respect to `unit * x`. With
    /// `unit = N` coefficients stay bounded for any order.
    pub fn differentiate_scaled(&self, times: u32, unit: f64) -> Self {
        let mut cos = self.cos.clone();
        let mut sin = self.sin.clone();
        for _ in 0..times {
            for n in 0..cos.len() {
                let w = n as f64 / unit;
                let (a, b) = (cos[n], sin[n]);
                cos[n] = w * b;
                sin[n] = -(w * a);
            }
        }
        Self { cos, sin }
    }
}

/// Per-mode standard deviations `sigma_0..sigma_N`; coefficients `a_n` and
/// `b_n` have variance `sigma_n^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarianceProfile {
    sigmas: Vec<f64>,
}

impl VarianceProfile {
    pub fn new(sigmas: Vec<f64>) -> Result<Self> {
        if sigmas.iter().any(|s| !s.is_finite() || *s < 0.0) {
            return Err(Error::InvalidInput(
                "standard deviations must be finite and non-negative".into(),
            ));
        }
        if !sigmas.iter().skip(1).any(|&s| s > 0.0) {
            return Err(Error::InvalidInput(
                "profile needs sigma_n > 0 for some n >= 1".into(),
            ));
        }
        Ok(Self { sigmas })
    }

    /// `sigma_n = sigma` for every `n` in `0..=degree`.
    pub fn equal(degree: usize, sigma: f64) -> Result<Self> {
        Self::new(vec![sigma; degree + 1])
    }

    /// Profile of the `p`-th derivative of an equal-variance polynomial,
    /// `sigma_n = (n/N)^p`. The common factor `N^p` is dropped; zero
    /// statistics do not depend on it. `0^0 = 1`.
    pub fn derivative(degree: usize, p: u32) -> Result<Self> {
        let n_max = degree.max(1) as f64;
        Self::new(
            (0..=degree)
                .map(|n| (n as f64 / n_max).powi(p as i32))
                .collect(),
        )
    }

    /// All variance on a single mode.
    pub fn concentrated(degree: usize, mode: usize, sigma: f64) -> Result<Self> {
        let mut sigmas = vec![0.0; degree + 1];
        if mode < sigmas.len() {
            sigmas[mode] = sigma;
        }
        Self::new(sigmas)
    }

    pub fn degree(&self) -> usize {
        self.sigmas.len() - 1
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    /// Variances `sigma_n^2`.
    pub fn variances(&self) -> impl Iterator<Item = f64> + '_ {
        self.sigmas.iter().map(|s| s * s)
    }
}

/// Everything needed to regenerate an ensemble bit for bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub degree: usize,
    pub derivative_order: u32,
    pub profile: VarianceProfile,
    pub realizations: u64,
    pub master_seed: u64,
}

impl EnsembleSpec {
    pub fn new(
        derivative_order: u32,
        profile: VarianceProfile,
        realizations: u64,
        master_seed: u64,
    ) -> Result<Self> {
        if realizations == 0 {
            return Err(Error::InvalidInput("need at least one realization".into()));
        }
        Ok(Self {
            degree: profile.degree(),
            derivative_order,
            profile,
            realizations,
            master_seed,
        })
    }

    /// Equal-variance base polynomials, differentiated `p` times.
    pub fn equal_variance(degree: usize, p: u32, realizations: u64, seed: u64) -> Result<Self> {
        Self::new(p, VarianceProfile::equal(degree, 1.0)?, realizations, seed)
    }

    /// Base polynomial number `index`.
    pub fn sample(&self, index: u64) -> Result<TrigPolynomial> {
        sample(self, index)
    }

    /// The `derivative_order`-th derivative of sample `index`, taken with
    /// respect to `N x` so that coefficients stay of order one.
    pub fn realization(&self, index: u64) -> Result<TrigPolynomial> {
        let base = self.sample(index)?;
        Ok(base.differentiate_scaled(self.derivative_order, self.degree.max(1) as f64))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the substream for realization `index`.
pub fn realization_seed(master_seed: u64, index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(index))
}

/// Draws base polynomial `index` of the ensemble: independent
/// `N(0, sigma_n^2)` coefficients from a ChaCha8 stream keyed by
/// `(master_seed, index)`. Draw order is `a_0`, then `a_n, b_n` for
/// `n = 1..=N`; every mode is drawn even when its sigma is zero.
pub fn sample(spec: &EnsembleSpec, index: u64) -> Result<TrigPolynomial> {
    if index >= spec.realizations {
        return Err(Error::IndexOutOfRange {
            index,
            realizations: spec.realizations,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(realization_seed(spec.master_seed, index));
    let sigmas = spec.profile.sigmas();
    let mut cos = Vec::with_capacity(sigmas.len());
    let mut sin = Vec::with_capacity(sigmas.len());
    for (n, &sigma) in sigmas.iter().enumerate() {
        let a: f64 = StandardNormal.sample(&mut rng);
        cos.push(sigma * a);
        if n == 0 {
            sin.push(0.0);
        } else {
            let b: f64 = StandardNormal.sample(&mut rng);
            sin.push(sigma * b);
        }
    }
    Ok(TrigPolynomial { cos, sin })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_poly(degree: usize, seed: u64) -> TrigPolynomial {
        EnsembleSpec::equal_variance(degree, 0, 1, seed)
            .unwrap()
            .sample(0)
            .unwrap()
    }

    #[test]
    fn zero_variance_modes_are_exactly_zero() {
        let profile = VarianceProfile::concentrated(6, 1, 1.0).unwrap();
        let spec = EnsembleSpec::new(0, profile, 3, 7).unwrap();
        let f = spec.sample(2).unwrap();
        for n in 0..=6 {
            if n != 1 {
                assert_eq!(f.cos_coeffs()[n], 0.0);
                assert_eq!(f.sin_coeffs()[n], 0.0);
            }
        }
        assert!(f.cos_coeffs()[1] != 0.0 && f.sin_coeffs()[1] != 0.0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = EnsembleSpec::equal_variance(12, 0, 5, 99).unwrap();
        let a = spec.sample(3).unwrap();
        let b = spec.sample(3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, spec.sample(4).unwrap());
    }

    #[test]
    fn sample_index_out_of_range() {
        let spec = EnsembleSpec::equal_variance(4, 0, 5, 1).unwrap();
        assert!(matches!(
            spec.sample(5),
            Err(Error::IndexOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn sample_moments_match_profile() {
        let m = 10_000u64;
        let sigmas = vec![1.0, 0.5, 2.0, 1.0, 0.25];
        let profile = VarianceProfile::new(sigmas).unwrap();
        let spec = EnsembleSpec::new(0, profile, m, 2024).unwrap();
        let draws: Vec<f64> = (0..m).map(|i| spec.sample(i).unwrap().cos_coeffs()[2]).collect();
        let mean = draws.iter().sum::<f64>() / m as f64;
        let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
        assert!(mean.abs() < 4.0 * 2.0 / (m as f64).sqrt(), "mean {mean}");
        assert!((var / 4.0 - 1.0).abs() < 0.1, "variance {var}");
    }

    #[test]
    fn evaluate_simple_modes() {
        assert_eq!(TrigPolynomial::cosine(1, 1, 1.0).evaluate(0.0), 1.0);
        let s = TrigPolynomial::sine(3, 3, 1.0).evaluate(PI / 6.0);
        assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn evaluate_matches_compensated_termwise_sum() {
        for seed in 0..20 {
            let f = random_poly(40, seed);
            let x = 0.7;
            // Neumaier-compensated term-by-term sum as an extended-precision oracle
            let (mut sum, mut comp, mut scale) = (0.0f64, 0.0f64, 0.0f64);
            for n in 0..=40 {
                let t = f.cos_coeffs()[n] * (n as f64 * x).cos()
                    + f.sin_coeffs()[n] * (n as f64 * x).sin();
                scale += t.abs();
                let s = sum + t;
                if sum.abs() >= t.abs() {
                    comp += (sum - s) + t;
                } else {
                    comp += (t - s) + sum;
                }
                sum = s;
            }
            let exact = sum + comp;
            assert!((f.evaluate(x) - exact).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn derivative_of_cos2x() {
        let d = TrigPolynomial::cosine(2, 2, 1.0).differentiate(1);
        assert_eq!(d.cos_coeffs()[2], 0.0);
        assert_eq!(d.sin_coeffs()[2], -2.0);
    }

    #[test]
    fn constant_differentiates_to_zero() {
        let d = TrigPolynomial::cosine(3, 0, 5.0).differentiate(1);
        assert!(d.is_zero());
    }

    #[test]
    fn fourth_derivative_scales_by_n4() {
        let f = random_poly(9, 3);
        let d = f.differentiate(4);
        for n in 0..=9 {
            let w = (n as f64).powi(4);
            let ea = w * f.cos_coeffs()[n];
            let eb = w * f.sin_coeffs()[n];
            assert!((d.cos_coeffs()[n] - ea).abs() <= 4.0 * f64::EPSILON * ea.abs());
            assert!((d.sin_coeffs()[n] - eb).abs() <= 4.0 * f64::EPSILON * eb.abs());
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-6;
        for seed in 0..100u64 {
            let n = 1 + (seed as usize % 20);
            let f = random_poly(n, 1000 + seed);
            let x = (seed as f64 * 0.37) % (2.0 * PI);
            let fd = (f.evaluate(x + h) - f.evaluate(x - h)) / (2.0 * h);
            let exact = f.differentiate(1).evaluate(x);
            let tol = 1e-5 * (n as f64).powi(3) * f.max_abs_coeff();
            assert!((fd - exact).abs() < tol, "seed {seed}: {fd} vs {exact}");
            let (_, slope) = f.evaluate_with_derivative(x);
            assert!((slope - exact).abs() < 1e-10 * (n * n) as f64 * f.max_abs_coeff());
        }
    }

    #[test]
    fn rescaled_coordinate_has_unit_spacing() {
        let n = 7;
        let f = TrigPolynomial::cosine(n, n, 1.0);
        assert!(f.evaluate_rescaled(0.5).abs() < 1e-15);
        assert_eq!(f.evaluate_rescaled(0.0), f.evaluate(0.0));
        for k in 0..(2 * n) {
            assert!(f.evaluate_rescaled(0.5 + k as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn json_round_trip_and_schema() {
        let f = random_poly(3, 11);
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.starts_with("{\"degree\":3,\"a\":["));
        let back: TrigPolynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"degree": 2, "a": [1.0, 2.0], "b": [0.0, 1.0]}"#;
        assert!(serde_json::from_str::<TrigPolynomial>(bad).is_err());
    }

    #[test]
    fn b0_is_forced_to_zero() {
        let f = TrigPolynomial::new(vec![1.0, 2.0], vec![3.0, 4.0]).unwrap();
        assert_eq!(f.sin_coeffs()[0], 0.0);
    }

    #[test]
    fn degenerate_profiles_rejected() {
        assert!(VarianceProfile::new(vec![1.0, 0.0, 0.0]).is_err());
        assert!(VarianceProfile::new(vec![0.0, -1.0]).is_err());
        assert!(VarianceProfile::derivative(5, 3).is_ok());
    }
}
