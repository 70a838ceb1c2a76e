//! Large-`p` behavior of the limiting pair correlation: series for
//! `A_p`, `B_p`, `C_p`, the location and shape of the peaks near the
//! integers, the small-separation repulsion, and a worked example of two
//! complex zeros merging into a triple real zero of the derivative.

use std::f64::consts::PI;

use crate::analytic::{v_p, SmallSeparationSeries};
use crate::error::{Error, Result};

/// Leading large-`p` terms of `A_p`, `B_p`, `C_p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesTerms {
    pub ap: f64,
    pub bp: f64,
    pub cp: f64,
}

/// `A_p` and `B_p` to order `p^-5`, `C_p` through `p^-4`.
pub fn series_abc(p: u32, x: f64) -> SeriesTerms {
    let p = p as f64;
    let w = PI * x;
    let (s1, c1) = w.sin_cos();
    let (s2, c2) = (2.0 * w).sin_cos();
    let c3 = (3.0 * w).cos();
    let w2 = w * w;
    let ap = (-2.0 * w2 - 2.0 * s2 * w + (4.0 * w2 - 1.0) * c2 + 1.0) / 64.0 / p.powi(5);
    let bp = (c1 + (4.0 * w2 - 1.0) * c3 - 8.0 * w * s1) / 128.0 / p.powi(5);
    let cp = 0.25 * s1 * s1 / (p * p) - 0.25 * (w * c1 + s1) * s1 / p.powi(3)
        + (w2 + 8.0 * s2 * w + 3.0 * (w2 - 1.0) * c2 + 3.0) / 32.0 / p.powi(4);
    SeriesTerms { ap, bp, cp }
}

/// `d C_p / dx` of the three-term `C_p` series, with the `p^-5` parts of
/// the exact derivative dropped.
pub fn series_cp_derivative(p: u32, x: f64) -> f64 {
    let p = p as f64;
    let w = PI * x;
    let (s2, c2) = (2.0 * w).sin_cos();
    -PI * ((4.0 * p - 11.0) * PI * c2 * x - w + (-4.0 * p * p + 6.0 * p + 3.0 * w * w - 7.0) * s2)
        / 16.0
        / p.powi(4)
}

/// `C_p`, `A_p`, `B_p` at `x = n (1 + 1/(2p) + u/p)` to leading order.
pub fn peak_expansions(n: u32, p: u32, u: f64) -> SeriesTerms {
    let (n, p) = (n as f64, p as f64);
    let a = PI * PI / 32.0 * n * n / p.powi(5);
    let sign = if n as u64 % 2 == 0 { 1.0 } else { -1.0 };
    SeriesTerms {
        ap: a,
        bp: sign * a,
        cp: PI * PI / 16.0 * (1.0 + 4.0 * u * u) * n * n / p.powi(4),
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    if (f_lo > 0.0) == (f(hi) > 0.0) {
        return Err(Error::NoConvergence { lo, hi });
    }
    while hi - lo > 4.0 * f64::EPSILON * hi.abs() {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of `tan(2 pi x) = pi x / p` nearest the integer `n`: Newton from
/// `n (1 + 1/(2p))` on `sin(2 pi x) - (pi x / p) cos(2 pi x)`, falling back
/// to bisection on `(n - 1/4, n + 1/4)` if an iterate leaves it.
pub fn peak_location(n: u32, p: u32) -> Result<f64> {
    if n == 0 || p < 2 {
        return Err(Error::InvalidInput(format!(
            "peak_location needs n >= 1 and p >= 2, got n={n}, p={p}"
        )));
    }
    let (nf, pf) = (n as f64, p as f64);
    let h = |x: f64| {
        let (s, c) = (2.0 * PI * x).sin_cos();
        s - PI * x / pf * c
    };
    let dh = |x: f64| {
        let (s, c) = (2.0 * PI * x).sin_cos();
        2.0 * PI * c - PI / pf * c + 2.0 * PI * PI * x / pf * s
    };
    let (lo, hi) = (nf - 0.25, nf + 0.25);
    let mut x = nf * (1.0 + 0.5 / pf);
    for _ in 0..50 {
        let step = h(x) / dh(x);
        let next = x - step;
        if !(next > lo && next < hi) {
            return bisect(h, lo, hi);
        }
        x = next;
        if step.abs() <= 1e-15 * x {
            return Ok(x);
        }
    }
    bisect(h, lo, hi)
}

/// Zero of [`series_cp_derivative`] in `(n - 1/4, n + 1/4)`: the minimum of
/// the three-term `C_p` series, which tracks the true minimum of `C_p` more
/// closely than [`peak_location`] at moderate `p`.
pub fn refined_peak_location(n: u32, p: u32) -> Result<f64> {
    if n == 0 || p < 2 {
        return Err(Error::InvalidInput(format!(
            "refined_peak_location needs n >= 1 and p >= 2, got n={n}, p={p}"
        )));
    }
    let nf = n as f64;
    bisect(|x| series_cp_derivative(p, x), nf - 0.25, nf + 0.25)
}

/// `(1 + 4u^2)^{-3/2}`: the large-`p` density of `u = p (s - 1 - 1/(2p))`
/// for nearest-neighbor spacings `s`.
pub fn nn_density(u: f64) -> f64 {
    (1.0 + 4.0 * u * u).powf(-1.5)
}

/// Distribution function of [`nn_density`].
pub fn nn_cdf(u: f64) -> f64 {
    0.5 + u / (1.0 + 4.0 * u * u).sqrt()
}

/// `(p/n) (1 + 4u^2)^{-3/2}`, the limiting shape of the `n`-th pair
/// correlation peak.
pub fn delta_profile(n: u32, p: u32, u: f64) -> f64 {
    p as f64 / n as f64 * nn_density(u)
}

/// The `n`-th pair-correlation peak at derivative order `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeakProfile {
    pub n: u32,
    pub p: u32,
    pub center: f64,
    pub height: f64,
}

impl PeakProfile {
    pub fn new(n: u32, p: u32) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(Error::InvalidInput(format!(
                "peak profile needs n >= 1 and p >= 1, got n={n}, p={p}"
            )));
        }
        let (nf, pf) = (n as f64, p as f64);
        Ok(Self {
            n,
            p,
            center: nf * (1.0 + 0.5 / pf),
            height: pf / nf,
        })
    }

    /// Separation `n (1 + 1/(2p) + u/p)`.
    pub fn x_at(&self, u: f64) -> f64 {
        self.n as f64 * (1.0 + (0.5 + u) / self.p as f64)
    }

    pub fn value(&self, u: f64) -> f64 {
        delta_profile(self.n, self.p, u)
    }
}

/// Exact slope of `R_{2,p}` at the origin,
/// `pi^2 sqrt(4p^2 + 8p + 3) / (2 (2p+3)^2 (2p+5))`.
pub fn repulsion_slope(p: u32) -> f64 {
    let p = p as f64;
    PI * PI * (4.0 * p * p + 8.0 * p + 3.0).sqrt()
        / (2.0 * (2.0 * p + 3.0).powi(2) * (2.0 * p + 5.0))
}

/// Large-`p` form of the slope, `pi^2 / (8 p^2)`.
pub fn repulsion_slope_asymptotic(p: u32) -> f64 {
    PI * PI / (8.0 * (p as f64).powi(2))
}

/// Quadratic coefficient as it is usually quoted alongside the slope,
/// `pi^2 (4p^2+8p+3)^{3/2} / ((2p+1)(2p+3)^2 sqrt((2p+5)^3 (2p+7)))`.
///
/// `R_{2,p}` is odd in `x` to this order (its expansion runs in odd powers
/// of `x`), so this term is not part of [`repulsion_expansion`]; the unit
/// tests show that adding it moves the expansion away from the exact curve.
pub fn quoted_quadratic_coefficient(p: u32) -> f64 {
    let p = p as f64;
    PI * PI * (4.0 * p * p + 8.0 * p + 3.0).powf(1.5)
        / ((2.0 * p + 1.0)
            * (2.0 * p + 3.0).powi(2)
            * ((2.0 * p + 5.0).powi(3) * (2.0 * p + 7.0)).sqrt())
}

/// Largest separation accepted by [`repulsion_expansion`].
pub const REPULSION_WINDOW: f64 = 0.2;

/// `R_{2,p}(x)` near the origin: `repulsion_slope(p) x + O(x^3)`.
pub fn repulsion_expansion(p: u32, x: f64) -> Result<f64> {
    if !(0.0..=REPULSION_WINDOW).contains(&x) {
        return Err(Error::ExpansionDomain {
            x,
            max: REPULSION_WINDOW,
        });
    }
    Ok(repulsion_slope(p) * x)
}

/// Slope of `R_{2,p}` at the origin read off the power series of the
/// limit terms; an independent route to [`repulsion_slope`].
pub fn repulsion_slope_from_series(p: u32) -> f64 {
    SmallSeparationSeries::new(p).slope()
}

/// Expected fraction of zeros that become real between derivative orders
/// `p - 1` and `p`: `v_p - v_{p-1} = 4 / ((2p+1)(2p+3)(v_p + v_{p-1}))`.
pub fn new_real_fraction(p: u32) -> Result<f64> {
    if p == 0 {
        return Err(Error::InvalidInput("new_real_fraction needs p >= 1".into()));
    }
    let pf = p as f64;
    Ok(4.0 / ((2.0 * pf + 1.0) * (2.0 * pf + 3.0) * (v_p(p) + v_p(p - 1))))
}

/// Value of `a` at which the derivative of [`TripleZero`] has a triple
/// zero at `x = 1/2`: `2 / (pi^2 - 8)`.
pub fn triple_zero_threshold() -> f64 {
    2.0 / (PI * PI - 8.0)
}

/// `sin(y)/y` and its derivative, by series for small `y`.
fn sinc_with_derivative(y: f64) -> (f64, f64) {
    if y.abs() < 1e-3 {
        let y2 = y * y;
        (
            1.0 - y2 / 6.0 * (1.0 - y2 / 20.0),
            -y / 3.0 * (1.0 - y2 / 10.0),
        )
    } else {
        let (s, c) = y.sin_cos();
        (s / y, (y * c - s) / (y * y))
    }
}

/// `f(x) = sin(pi x) ((x - 1/2)^2 + a) / (x (x - 1))`: zeros at every
/// integer except 0 and 1, and a complex pair at `1/2 +- i sqrt(a)`.
///
/// For `a` below [`triple_zero_threshold`] the derivative has three real
/// zeros in `(0, 1)`, above it only one; at the threshold they coalesce.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripleZero {
    pub a: f64,
}

impl TripleZero {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidInput(format!("a must be positive, got {a}")));
        }
        Ok(Self { a })
    }

    /// `sin(pi x) / (x (x - 1))` and its derivative, continuous at 0 and 1.
    fn envelope(x: f64) -> (f64, f64) {
        if x < 0.5 {
            let (s, ds) = sinc_with_derivative(PI * x);
            let d = x - 1.0;
            (PI * s / d, PI * PI * ds / d - PI * s / (d * d))
        } else {
            let (s, ds) = sinc_with_derivative(PI * (1.0 - x));
            (-PI * s / x, PI * PI * ds / x + PI * s / (x * x))
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        let t = x - 0.5;
        Self::envelope(x).0 * (t * t + self.a)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let t = x - 0.5;
        let (s, ds) = Self::envelope(x);
        ds * (t * t + self.a) + 2.0 * s * t
    }

    /// `f''(1/2) = 4a(pi^2 - 8) - 8`.
    pub fn second_derivative_at_center(&self) -> f64 {
        4.0 * self.a * (PI * PI - 8.0) - 8.0
    }

    /// Number of real zeros of `f'` in `(0, 1)`.
    ///
    /// `f'` is odd about `1/2`, so `x = 1/2` is always a zero and the rest
    /// pair up. The zeros with `t = x - 1/2 > 0` are the sign changes of
    /// `f'(1/2 + t) / t` on `(0, 1/2)`, whose value at `t = 0` is `f''(1/2)`.
    pub fn derivative_zero_count(&self) -> usize {
        const STEPS: usize = 4000;
        let mut prev = self.second_derivative_at_center();
        let mut changes = 0;
        for k in 1..STEPS {
            let t = 0.5 * k as f64 / STEPS as f64;
            let g = self.derivative(0.5 + t) / t;
            if g != 0.0 && prev != 0.0 && (g > 0.0) != (prev > 0.0) {
                changes += 1;
            }
            if g != 0.0 {
                prev = g;
            }
        }
        1 + 2 * changes
    }

    /// `(x, f, f')` on `points` evenly spaced samples of `[-margin, 1 + margin]`.
    pub fn samples(&self, points: usize, margin: f64) -> Vec<(f64, f64, f64)> {
        assert!(points >= 2);
        let (lo, hi) = (-margin, 1.0 + margin);
        (0..points)
            .map(|k| {
                let x = lo + (hi - lo) * k as f64 / (points - 1) as f64;
                (x, self.value(x), self.derivative(x))
            })
            .collect()
    }
}

/// Sampled curve and derivative-zero count for one value of `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleZeroDemo {
    pub a: f64,
    pub samples: Vec<(f64, f64, f64)>,
    pub derivative_zeros: usize,
}

impl TripleZeroDemo {
    /// CSV with header `x,f,df`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,f,df\n");
        for (x, f, df) in &self.samples {
            out.push_str(&format!("{x},{f},{df}\n"));
        }
        out
    }
}

pub fn triple_zero_demo(a: f64) -> Result<TripleZeroDemo> {
    let f = TripleZero::new(a)?;
    Ok(TripleZeroDemo {
        a,
        samples: f.samples(401, 0.5),
        derivative_zeros: f.derivative_zero_count(),
    })
}

/// Bisection on `a` in `[lo, hi]` for the switch from three derivative
/// zeros in `(0, 1)` to one, using only the zero counts.
pub fn locate_triple_zero_transition(lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let count = |a: f64| TripleZero::new(a).map(|f| f.derivative_zero_count());
    let (mut lo, mut hi) = (lo, hi);
    if count(lo)? != 3 || count(hi)? != 1 {
        return Err(Error::NoConvergence { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if count(mid)? == 3 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{pair_correlation_limit, LimitTerms};

    #[test]
    fn series_special_points() {
        for p in [5, 50, 500] {
            let pf = p as f64;
            let s = series_abc(p, 0.5);
            let lead = 0.25 / (pf * pf);
            // p^-3 and p^-4 corrections at x = 1/2
            let expect = lead - 0.25 / pf.powi(3) + (PI * PI / 4.0 - 3.0 * (PI * PI / 4.0 - 1.0) + 3.0) / 32.0 / pf.powi(4);
            assert!((s.cp - expect).abs() < 1e-15 * lead);
            let at_integer = series_abc(p, 2.0);
            let c4 = (4.0 * PI * PI + 3.0 * (4.0 * PI * PI - 1.0) + 3.0) / 32.0 / pf.powi(4);
            assert!((at_integer.cp - c4).abs() < 1e-12 * c4);
        }
    }

    #[test]
    fn cp_series_converges_to_quadrature() {
        let err = |p: u32| {
            let exact = LimitTerms::new(p, 0.7).unwrap().cp;
            ((series_abc(p, 0.7).cp - exact) / exact).abs()
        };
        let (e100, e1000) = (err(100), err(1000));
        assert!(e100 < 1e-5 && e1000 < e100 / 10.0, "{e100} {e1000}");
    }

    #[test]
    fn peak_expansions_match_quadrature() {
        let p = 2000;
        for n in [1u32, 2] {
            for u in [0.0, 0.5] {
                let x = PeakProfile::new(n, p).unwrap().x_at(u);
                let exact = LimitTerms::new(p, x).unwrap();
                let approx = peak_expansions(n, p, u);
                assert!((exact.cp / approx.cp - 1.0).abs() < 5e-3, "n={n} u={u}");
                assert!((exact.ap / approx.ap - 1.0).abs() < 5e-3);
                assert!((exact.bp / approx.bp - 1.0).abs() < 5e-3);
            }
        }
    }

    #[test]
    fn derivative_series_is_derivative_of_cp_series() {
        for p in [10, 40] {
            for x in [0.3, 1.1, 2.7] {
                let h = 1e-5;
                let fd = (series_abc(p, x + h).cp - series_abc(p, x - h).cp) / (2.0 * h);
                let pf = p as f64;
                // agreement up to the dropped p^-5 terms
                assert!((fd - series_cp_derivative(p, x)).abs() < 20.0 / pf.powi(5), "{p} {x}");
            }
        }
    }

    #[test]
    fn peak_location_solves_tangent_equation() {
        for p in [2, 10, 20, 100, 500] {
            for n in 1..=4 {
                let x = peak_location(n, p).unwrap();
                let residual = (2.0 * PI * x).tan() - PI * x / p as f64;
                assert!(residual.abs() < 1e-10, "n={n} p={p}");
                assert!((x - n as f64).abs() < 0.25);
            }
        }
        let x = peak_location(1, 10).unwrap();
        assert!((x - 1.05).abs() < 5.0 / 100.0);
        assert!((peak_location(3, 100_000).unwrap() - 3.0).abs() < 1e-4);
    }

    #[test]
    fn refined_peak_tracks_cp_minimum() {
        // dense scan of the quadrature-built C_p on (3/4, 5/4)
        let p = 20;
        let (best, _) = (0..=5000)
            .map(|k| 0.75 + 0.5 * k as f64 / 5000.0)
            .map(|x| (x, LimitTerms::new(p, x).unwrap().cp))
            .fold((0.0, f64::INFINITY), |acc, (x, c)| if c < acc.1 { (x, c) } else { acc });
        let refined = refined_peak_location(1, p).unwrap();
        assert!((refined - best).abs() < 1e-4, "{refined} vs {best}");
        let tangent = peak_location(1, p).unwrap();
        assert!((tangent - best).abs() < 5.0 / (p * p) as f64);
    }

    #[test]
    fn spacing_density_properties() {
        assert_eq!(nn_density(0.0), 1.0);
        assert_eq!(delta_profile(2, 10, 0.0), 5.0);
        for u in [0.1, 0.7, 2.5] {
            assert_eq!(delta_profile(3, 12, u), delta_profile(3, 12, -u));
            assert!((delta_profile(3, 12, u) - 4.0 * nn_density(u)).abs() < 1e-15);
        }
        // heavy tail: Gaussian with the same peak and unit mass is exp(-pi u^2)
        let ratio = nn_density(2.0) / (-PI * 4.0).exp();
        assert!(ratio > 10.0);
        assert!((nn_cdf(1e9) - 1.0).abs() < 1e-9 && nn_cdf(-1e9).abs() < 1e-9);
        let h = 1e-6;
        for u in [-1.0, 0.2, 3.0] {
            let fd = (nn_cdf(u + h) - nn_cdf(u - h)) / (2.0 * h);
            assert!((fd - nn_density(u)).abs() < 1e-8);
        }
        let profile = PeakProfile::new(1, 20).unwrap();
        assert_eq!(profile.value(0.0), profile.height);
        assert!((profile.x_at(0.0) - profile.center).abs() < 1e-15);
    }

    #[test]
    fn off_peak_decay() {
        let r10 = pair_correlation_limit(10, 0.5).unwrap();
        let r80 = pair_correlation_limit(80, 0.5).unwrap();
        assert!(r80 < r10);
    }

    #[test]
    fn slope_routes_agree() {
        for p in [0, 1, 3, 10, 50, 200] {
            let a = repulsion_slope(p);
            let b = repulsion_slope_from_series(p);
            assert!((a - b).abs() < 1e-13 * a);
        }
        assert!((repulsion_slope(0) - PI * PI * 3f64.sqrt() / 90.0).abs() < 1e-15);
        assert!((repulsion_slope(0) - 0.1900).abs() < 1e-4);
        // the ratio approaches 1 like 1 - 9/(2p)
        for p in [50, 250, 1000] {
            let r = repulsion_slope(p) / repulsion_slope_asymptotic(p);
            assert!((1.0 - r - 4.5 / p as f64).abs() < 15.0 / (p * p) as f64, "p={p}: {r}");
        }
    }

    #[test]
    fn expansion_window_and_accuracy() {
        assert!(matches!(
            repulsion_expansion(3, 0.3),
            Err(Error::ExpansionDomain { .. })
        ));
        assert!(repulsion_expansion(3, -0.01).is_err());
        let exact = pair_correlation_limit(3, 0.05).unwrap();
        let lin = repulsion_expansion(3, 0.05).unwrap();
        assert!(((lin - exact) / exact).abs() < 1e-2);
    }

    #[test]
    fn limit_curve_has_no_quadratic_term() {
        for p in [0, 3, 10] {
            let c1 = repulsion_slope(p);
            let curvature = |x: f64| (pair_correlation_limit(p, x).unwrap() / x - c1) / x;
            // (R/x - c1)/x vanishes linearly, so halving x halves it
            let ratio = curvature(0.02) / curvature(0.01);
            assert!((ratio - 2.0).abs() < 0.01, "p={p}: {ratio}");
            let quoted = quoted_quadratic_coefficient(p);
            assert!(curvature(0.01).abs() < 0.05 * quoted);
        }
    }

    #[test]
    fn new_real_fraction_values() {
        let f1 = new_real_fraction(1).unwrap();
        assert!((f1 - ((0.6f64).sqrt() - (1.0f64 / 3.0).sqrt())).abs() < 1e-15);
        assert!((f1 - 0.1972).abs() < 1e-4);
        let f50 = new_real_fraction(50).unwrap();
        assert!((2500.0 * f50 - 0.5).abs() < 0.025);
        let mut prev = f64::INFINITY;
        for p in 1..200 {
            let f = new_real_fraction(p).unwrap();
            assert!(f > 0.0 && f < prev);
            assert!((f - (v_p(p) - v_p(p - 1))).abs() < 1e-15);
            prev = f;
        }
        assert!(new_real_fraction(0).is_err());
    }

    #[test]
    fn triple_zero_function() {
        let f = TripleZero::new(0.7).unwrap();
        for x in [-1.0, 2.0, 3.0, -4.0] {
            assert!(f.value(x).abs() < 1e-12);
        }
        // removable singularities
        assert!((f.value(0.0) - (-PI * 0.95)).abs() < 1e-12);
        assert!((f.value(1.0) - (-PI * 0.95)).abs() < 1e-12);
        for x in [0.0, 1e-9, 0.3, 0.5, 0.999_999, 1.0, 1.7] {
            let h = 1e-5;
            let fd = (f.value(x + h) - f.value(x - h)) / (2.0 * h);
            assert!((fd - f.derivative(x)).abs() < 1e-7, "x={x}");
        }
        let h = 1e-4;
        let fd2 = (f.derivative(0.5 + h) - f.derivative(0.5 - h)) / (2.0 * h);
        assert!((fd2 - f.second_derivative_at_center()).abs() < 1e-6);
    }

    #[test]
    fn triple_zero_counts_and_threshold() {
        assert_eq!(triple_zero_demo(0.92).unwrap().derivative_zeros, 3);
        assert_eq!(triple_zero_demo(1.1).unwrap().derivative_zeros, 1);
        let a = locate_triple_zero_transition(0.9, 1.2, 1e-7).unwrap();
        assert!((a - triple_zero_threshold()).abs() < 1e-6);
        assert!((triple_zero_threshold() - 1.06975).abs() < 1e-5);
    }

    #[test]
    fn triple_zero_sign_change_count_agrees() {
        // plain sign changes of f' on a grid avoiding x = 1/2
        for a in [0.5, 0.92, 1.0, 1.1, 2.0] {
            let f = TripleZero::new(a).unwrap();
            let xs: Vec<f64> = (1..2000).map(|k| k as f64 / 2000.0 + 1e-7).collect();
            let changes = xs
                .windows(2)
                .filter(|w| (f.derivative(w[0]) > 0.0) != (f.derivative(w[1]) > 0.0))
                .count();
            assert_eq!(changes, f.derivative_zero_count(), "a={a}");
        }
    }

    #[test]
    fn triple_zero_csv() {
        let demo = triple_zero_demo(0.92).unwrap();
        let csv = demo.to_csv();
        assert!(csv.starts_with("x,f,df\n-0.5,"));
        assert_eq!(csv.lines().count(), 402);
    }
}
