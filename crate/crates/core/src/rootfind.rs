//! Zeros of trigonometric polynomials: real zeros by bracketing on a fine
//! grid, and all `2N` zeros through the companion matrix of
//! `Q(z) = e^{iNx} F(x)`, `z = e^{ix}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::eigen::polynomial_roots;
use crate::error::{Error, Result};
use crate::poly::TrigPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootMethod {
    Sampled,
    Companion,
}

impl RootMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootMethod::Sampled => "sampled",
            RootMethod::Companion => "companion",
        }
    }
}

/// Zeros of one polynomial over one period.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// Sorted real zeros in `[0, 2pi)`.
    pub real_roots: Vec<f64>,
    /// Non-real zeros `x = -i log z`, when the method produces them.
    pub complex_roots: Option<Vec<Complex64>>,
    pub method: RootMethod,
    pub tolerance: f64,
}

#[derive(Serialize, Deserialize)]
struct RootSetJson {
    real: Vec<f64>,
    complex: Option<Vec<[f64; 2]>>,
    method: RootMethod,
}

impl RootSet {
    pub fn to_json(&self) -> Result<String> {
        let json = RootSetJson {
            real: self.real_roots.clone(),
            complex: self
                .complex_roots
                .as_ref()
                .map(|c| c.iter().map(|z| [z.re, z.im]).collect()),
            method: self.method,
        };
        Ok(serde_json::to_string_pretty(&json)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: RootSetJson = serde_json::from_str(text)?;
        Ok(Self {
            real_roots: json.real,
            complex_roots: json
                .complex
                .map(|c| c.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()),
            method: json.method,
            tolerance: 0.0,
        })
    }

    /// Real roots, one per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in &self.real_roots {
            out.push_str(&format!("{r}\n"));
        }
        out
    }

    pub fn total_count(&self) -> usize {
        self.real_roots.len() + self.complex_roots.as_ref().map_or(0, Vec::len)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SampledOptions {
    pub oversample: usize,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SampledOptions {
    fn default() -> Self {
        Self {
            oversample: 16,
            tolerance: 1e-12,
            max_iterations: 200,
        }
    }
}

/// Default `||z| - 1|` threshold below which a companion root is real.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-8;

/// Values of `f` at `x_k = 2 pi k / len`, `k = 0..len`, by one inverse FFT.
pub fn grid_values(f: &TrigPolynomial, len: usize) -> Vec<f64> {
    assert!(len > f.degree(), "grid too coarse for degree");
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for (slot, c) in buf.iter_mut().zip(f.analytic_coeffs()) {
        *slot = c;
    }
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_inverse(len).process(&mut buf);
    buf.into_iter().map(|z| z.re).collect()
}

/// Brent's method on a sign-changing bracket; stops once the bracket is
/// narrower than `tol`.
fn brent<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
    tol: f64,
    max_iterations: usize,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f_lo, f_hi);
    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iterations {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.45 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Err(Error::NoConvergence {
        lo: b.min(c),
        hi: b.max(c),
    })
}

/// Sorted zeros in `[0, 2pi)` of the sign changes of `f` on a uniform grid
/// of `len` points, each refined by Brent's method.
fn grid_sign_changes(f: &TrigPolynomial, len: usize, options: &SampledOptions) -> Result<Vec<f64>> {
    let step = TAU / len as f64;
    let mut values = grid_values(f, len);
    // FFT values near zero get their sign from direct evaluation
    let near_zero = 1e-9 * f.coeff_l1_norm();
    for (k, v) in values.iter_mut().enumerate() {
        if v.abs() < near_zero {
            *v = f.evaluate(k as f64 * step);
        }
    }
    let mut roots = Vec::new();
    for k in 0..len {
        let (v0, v1) = (values[k], values[(k + 1) % len]);
        let x0 = k as f64 * step;
        if v0 == 0.0 {
            roots.push(x0);
            continue;
        }
        if v1 == 0.0 || (v0 > 0.0) == (v1 > 0.0) {
            continue;
        }
        let x1 = (k + 1) as f64 * step;
        if let Some(root) = refine(f, x0, x1, options)? {
            roots.push(root);
        }
    }
    Ok(normalize(roots))
}

/// Zero of `f` in `[x0, x1]` when `f` changes sign there.
fn refine(f: &TrigPolynomial, x0: f64, x1: f64, options: &SampledOptions) -> Result<Option<f64>> {
    let (h0, h1) = (f.evaluate(x0), f.evaluate(x1));
    let root = if h0 == 0.0 {
        x0
    } else if h1 == 0.0 {
        x1
    } else if (h0 > 0.0) != (h1 > 0.0) {
        brent(
            |x| f.evaluate(x),
            x0,
            x1,
            h0,
            h1,
            options.tolerance,
            options.max_iterations,
        )?
    } else {
        return Ok(None);
    };
    Ok(Some(root))
}

fn normalize(mut roots: Vec<f64>) -> Vec<f64> {
    for r in roots.iter_mut() {
        *r = r.rem_euclid(TAU);
        if *r >= TAU {
            *r = 0.0;
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| (*b - *a).abs() < 1e-13);
    if roots.len() > 1 && TAU - roots[roots.len() - 1] + roots[0] < 1e-13 {
        roots.pop();
    }
    roots
}

/// Real zeros in `[0, 2pi)`.
///
/// The critical points of `f` are located first, from sign changes of `f'`
/// on `oversample * (2N + 1)` grid points. `f` is monotone between
/// consecutive critical points, so each such arc holds at most one zero,
/// found by Brent's method. This keeps pairs of zeros closer than the grid
/// spacing apart.
pub fn real_roots_sampled(f: &TrigPolynomial, options: SampledOptions) -> Result<RootSet> {
    if options.oversample < 4 {
        return Err(Error::InvalidInput(format!(
            "oversample must be at least 4, got {}",
            options.oversample
        )));
    }
    if f.is_zero() {
        return Err(Error::DegenerateInput);
    }
    let len = options.oversample * (2 * f.degree() + 1);
    let df = f.differentiate(1);
    let roots = if df.is_zero() {
        Vec::new()
    } else {
        let critical = grid_sign_changes(&df, len, &options)?;
        if critical.is_empty() {
            grid_sign_changes(f, len, &options)?
        } else {
            let mut roots = Vec::new();
            let m = critical.len();
            for k in 0..m {
                let x0 = critical[k];
                let x1 = if k + 1 == m {
                    critical[0] + TAU
                } else {
                    critical[k + 1]
                };
                if let Some(root) = refine(f, x0, x1, &options)? {
                    roots.push(root);
                }
            }
            normalize(roots)
        }
    };
    Ok(RootSet {
        real_roots: roots,
        complex_roots: None,
        method: RootMethod::Sampled,
        tolerance: options.tolerance,
    })
}

/// Coefficients of `Q(z)` with `F(x) = e^{-iNx} Q(e^{ix})`, lowest degree
/// first.
pub fn companion_coeffs(f: &TrigPolynomial) -> Vec<Complex64> {
    let n = f.degree();
    let mut q = vec![Complex64::new(0.0, 0.0); 2 * n + 1];
    q[n] = Complex64::new(f.cos_coeffs()[0], 0.0);
    for k in 1..=n {
        let (a, b) = (f.cos_coeffs()[k], f.sin_coeffs()[k]);
        q[n + k] = Complex64::new(0.5 * a, -0.5 * b);
        q[n - k] = Complex64::new(0.5 * a, 0.5 * b);
    }
    q
}

/// All `2N` zeros from the roots of `Q`. Roots with `||z| - 1| < classify_tol`
/// are real zeros `x = arg z mod 2pi`; the rest are returned as
/// `x = arg z - i ln|z|`.
pub fn all_roots_companion(f: &TrigPolynomial, classify_tol: f64) -> Result<RootSet> {
    let n = f.degree();
    if n == 0 || (f.cos_coeffs()[n] == 0.0 && f.sin_coeffs()[n] == 0.0) {
        return Err(Error::DegreeDeficient);
    }
    let zs = polynomial_roots(&companion_coeffs(f))?;
    let mut real = Vec::new();
    let mut complex = Vec::new();
    for z in zs {
        let modulus = z.norm();
        let arg = z.arg().rem_euclid(TAU);
        let arg = if arg >= TAU { 0.0 } else { arg };
        if (modulus - 1.0).abs() < classify_tol {
            real.push(arg);
        } else {
            complex.push(Complex64::new(arg, -modulus.ln()));
        }
    }
    real.sort_by(f64::total_cmp);
    Ok(RootSet {
        real_roots: real,
        complex_roots: Some(complex),
        method: RootMethod::Companion,
        tolerance: classify_tol,
    })
}

/// Fraction of the `2N` zeros that are real.
pub fn fraction_real(roots: &RootSet, degree: usize) -> f64 {
    if degree == 0 {
        return 0.0;
    }
    roots.real_roots.len() as f64 / (2 * degree) as f64
}

/// Distance between two points on the circle of circumference `2pi`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::EnsembleSpec;
    use std::f64::consts::PI;

    #[test]
    fn cos8x_has_sixteen_equally_spaced_roots() {
        let f = TrigPolynomial::cosine(8, 8, 1.0);
        let r = real_roots_sampled(&f, SampledOptions::default()).unwrap();
        assert_eq!(r.real_roots.len(), 16);
        for (k, x) in r.real_roots.iter().enumerate() {
            let expect = PI / 16.0 + k as f64 * PI / 8.0;
            assert!((x - expect).abs() < 1e-10);
        }
        assert_eq!(fraction_real(&r, 8), 1.0);
    }

    #[test]
    fn sine_roots_include_origin() {
        let f = TrigPolynomial::sine(5, 1, 1.0);
        let r = real_roots_sampled(&f, SampledOptions::default()).unwrap();
        assert_eq!(r.real_roots.len(), 2);
        assert_eq!(r.real_roots[0], 0.0);
        assert!((r.real_roots[1] - PI).abs() < 1e-12);
    }

    #[test]
    fn shifted_cosine_has_no_real_roots() {
        let f = TrigPolynomial::new(vec![2.0, 1.0], vec![0.0, 0.0]).unwrap();
        let r = real_roots_sampled(&f, SampledOptions::default()).unwrap();
        assert!(r.real_roots.is_empty());
        assert_eq!(fraction_real(&r, 1), 0.0);
        let c = all_roots_companion(&f, DEFAULT_CLASSIFY_TOL).unwrap();
        assert!(c.real_roots.is_empty());
        assert_eq!(c.total_count(), 2);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            real_roots_sampled(&TrigPolynomial::zero(3), SampledOptions::default()),
            Err(Error::DegenerateInput)
        ));
        let low = TrigPolynomial::cosine(4, 2, 1.0);
        assert!(matches!(
            all_roots_companion(&low, DEFAULT_CLASSIFY_TOL),
            Err(Error::DegreeDeficient)
        ));
        let opts = SampledOptions {
            oversample: 3,
            ..SampledOptions::default()
        };
        assert!(real_roots_sampled(&low, opts).is_err());
    }

    #[test]
    fn companion_of_top_cosine() {
        let n = 6;
        let q = companion_coeffs(&TrigPolynomial::cosine(n, n, 1.0));
        assert_eq!(q[0], Complex64::new(0.5, 0.0));
        assert_eq!(q[2 * n], Complex64::new(0.5, 0.0));
        let r = all_roots_companion(&TrigPolynomial::cosine(n, n, 1.0), DEFAULT_CLASSIFY_TOL)
            .unwrap();
        assert_eq!(r.real_roots.len(), 2 * n);
        assert_eq!(r.total_count(), 2 * n);
    }

    #[test]
    fn companion_roots_are_conjugate_closed_and_complete() {
        for seed in 0..20 {
            let n = 3 + seed as usize;
            let f = EnsembleSpec::equal_variance(n, 0, 1, seed).unwrap().sample(0).unwrap();
            let r = all_roots_companion(&f, DEFAULT_CLASSIFY_TOL).unwrap();
            assert_eq!(r.total_count(), 2 * n);
            let complex = r.complex_roots.as_ref().unwrap();
            for z in complex {
                assert!(z.im != 0.0);
                let partner = complex
                    .iter()
                    .map(|w| circular_distance(w.re, z.re) + (w.im + z.im).abs())
                    .fold(f64::INFINITY, f64::min);
                assert!(partner < 1e-10, "no conjugate for {z}");
            }
        }
    }

    #[test]
    fn sampled_and_companion_agree() {
        for seed in 0..100u64 {
            let f = EnsembleSpec::equal_variance(20, 0, 1, 500 + seed)
                .unwrap()
                .sample(0)
                .unwrap();
            let s = real_roots_sampled(&f, SampledOptions::default()).unwrap();
            let c = all_roots_companion(&f, DEFAULT_CLASSIFY_TOL).unwrap();
            assert_eq!(s.real_roots.len(), c.real_roots.len(), "seed {seed}");
            for (a, b) in s.real_roots.iter().zip(&c.real_roots) {
                assert!(circular_distance(*a, *b) < 1e-8, "seed {seed}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn classification_insensitive_to_tolerance() {
        for seed in 0..30u64 {
            let f = EnsembleSpec::equal_variance(15, 2, 1, 77 + seed)
                .unwrap()
                .realization(0)
                .unwrap();
            let tight = all_roots_companion(&f, 1e-10).unwrap();
            let loose = all_roots_companion(&f, 1e-6).unwrap();
            assert_eq!(tight.real_roots.len(), loose.real_roots.len());
        }
    }

    #[test]
    fn grid_values_match_direct_evaluation() {
        let f = EnsembleSpec::equal_variance(9, 0, 1, 3).unwrap().sample(0).unwrap();
        let len = 16 * 19;
        let v = grid_values(&f, len);
        for (k, val) in v.iter().enumerate() {
            let x = TAU * k as f64 / len as f64;
            assert!((val - f.evaluate(x)).abs() < 1e-12 * (1.0 + f.max_abs_coeff()));
        }
    }

    #[test]
    fn json_and_csv_exports() {
        let f = TrigPolynomial::new(vec![2.0, 1.0], vec![0.0, 0.0]).unwrap();
        let r = all_roots_companion(&f, DEFAULT_CLASSIFY_TOL).unwrap();
        let text = r.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["method"], "companion");
        assert_eq!(v["complex"].as_array().unwrap().len(), 2);
        assert_eq!(v["real"].as_array().unwrap().len(), 0);
        let back = RootSet::from_json(&text).unwrap();
        assert_eq!(back.complex_roots.unwrap().len(), 2);

        let s = real_roots_sampled(&TrigPolynomial::cosine(2, 2, 1.0), SampledOptions::default())
            .unwrap();
        assert_eq!(s.to_csv().lines().count(), 4);
    }
}
