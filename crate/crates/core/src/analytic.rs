//! Exact formulas: Kac-Rice real-zero counts, the finite-`N` pair
//! correlation of real zeros of a stationary Gaussian trigonometric
//! polynomial, and its large-`N` limit for the `p`-th derivative.

use std::f64::consts::{FRAC_PI_2, PI};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fixed::{factorial, sin_cos, Fixed};
use crate::poly::VarianceProfile;
use crate::quadrature::Quadrature;
use crate::sum::{compensated_sum, CompensatedSum};

/// Second moments of `(F, F')` at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KacRiceInputs {
    /// `Var F`
    pub a2: f64,
    /// `Var F'`
    pub b2: f64,
    /// `Cov(F, F')`, zero for stationary ensembles
    pub c: f64,
    pub delta2: f64,
}

impl KacRiceInputs {
    pub fn from_profile(profile: &VarianceProfile) -> Self {
        let a2 = compensated_sum(profile.variances());
        let b2 = compensated_sum(
            profile
                .variances()
                .enumerate()
                .map(|(n, v)| (n * n) as f64 * v),
        );
        Self {
            a2,
            b2,
            c: 0.0,
            delta2: a2 * b2,
        }
    }

    /// Expected number of real zeros per unit length, `Delta / (pi A^2)`.
    pub fn density(&self) -> f64 {
        (self.delta2 - self.c * self.c).max(0.0).sqrt() / (PI * self.a2)
    }
}

/// Large-`N` expected fraction of real zeros of the `p`-th derivative,
/// `sqrt((2p+1)/(2p+3))`.
pub fn v_p(p: u32) -> f64 {
    let p = p as f64;
    ((2.0 * p + 1.0) / (2.0 * p + 3.0)).sqrt()
}

/// Expected fraction of the `2N` zeros of the `p`-th derivative of an
/// equal-variance degree-`N` polynomial that are real:
/// `(1/N) sqrt(sum n^{2p+2} / sum n^{2p})` over `0 <= n <= N` with `0^0 = 1`.
/// Powers are taken of `n/N` so nothing overflows.
pub fn expected_real_fraction_finite_n(degree: usize, p: u32) -> f64 {
    assert!(degree >= 1, "degree must be positive");
    let n_max = degree as f64;
    let mut lower = CompensatedSum::new();
    let mut upper = CompensatedSum::new();
    for n in 0..=degree {
        let r = n as f64 / n_max;
        let w = r.powi(2 * p as i32);
        lower.add(w);
        upper.add(w * r * r);
    }
    (upper.value() / lower.value()).sqrt()
}

/// Expected real zeros per unit `x` for a stationary profile:
/// `(1/pi) sqrt(sum n^2 sigma_n^2 / sum sigma_n^2)`.
pub fn kac_rice_density(profile: &VarianceProfile) -> f64 {
    KacRiceInputs::from_profile(profile).density()
}

/// `s asin(s) + sqrt(1 - s^2)`; even in `s`, with `1 - s^2` formed as
/// `(1 - |s|)(1 + |s|)`.
fn arcsin_kernel(s: f64) -> f64 {
    let m = s.abs().min(1.0);
    m * m.asin() + ((1.0 - m) * (1.0 + m)).sqrt()
}

fn arcsin_ratio(a: f64, b: f64, slack: f64) -> Result<f64> {
    let s = b / a;
    if !s.is_finite() || s.abs() > 1.0 + slack {
        return Err(Error::ArcsinDomain { ratio: s });
    }
    if s.abs() > 1.0 {
        log::trace!("clamping arcsin argument {s}");
    }
    Ok(s.clamp(-1.0, 1.0))
}

/// The five moment sums and the combinations `A`, `B`, `C` at separation
/// `tau` for a finite variance profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BblTerms {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
    pub g5: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl BblTerms {
    /// Sums run over every mode of the profile; a nonzero `sigma_0` adds
    /// `sigma_0^2` to `g1` and `g3` only.
    pub fn new(profile: &VarianceProfile, tau: f64) -> Self {
        let mut s = [CompensatedSum::new(); 6];
        for (n, v) in profile.variances().enumerate() {
            let n = n as f64;
            let (sin, cos) = (n * tau).sin_cos();
            let half = (0.5 * n * tau).sin();
            s[0].add(v);
            s[1].add(n * n * v);
            s[2].add(v * cos);
            s[3].add(n * v * sin);
            s[4].add(n * n * v * cos);
            // g1 - g3 without cancellation
            s[5].add(2.0 * v * half * half);
        }
        let [g1, g2, g3, g4, g5, d3] = s.map(|acc| acc.value());
        let c = d3 * (g1 + g3);
        Self {
            g1,
            g2,
            g3,
            g4,
            g5,
            a: g2 * c - g1 * g4 * g4,
            b: g5 * c - g3 * g4 * g4,
            c,
        }
    }
}

/// Pair correlation of the real zeros at separation `tau` (radians) for a
/// finite profile:
/// `R2 = (B asin(B/A) + sqrt(A^2 - B^2)) / (pi^2 C^{3/2})`.
pub fn pair_correlation_finite_n(profile: &VarianceProfile, tau: f64) -> Result<f64> {
    let t = BblTerms::new(profile, tau);
    if !(t.c > 1e-10 * t.g1 * t.g1) || !(t.a > 0.0) {
        return Err(Error::DegenerateSeparation { tau, c: t.c });
    }
    let s = arcsin_ratio(t.a, t.b, 1e-12)?;
    Ok(t.a * arcsin_kernel(s) / (PI * PI * t.c.powf(1.5)))
}

/// Finite-`N` pair correlation in the rescaled coordinate `x = N tau / pi`,
/// normalized by the squared zero density `N^2 / pi^2` so that it is
/// directly comparable with [`pair_correlation_limit`].
pub fn pair_correlation_finite_n_rescaled(profile: &VarianceProfile, x: f64) -> Result<f64> {
    let n = profile.degree() as f64;
    let r = pair_correlation_finite_n(profile, PI * x / n)?;
    Ok(r * PI * PI / (n * n))
}

/// Below this separation the limit curve is evaluated from its power series.
pub const SMALL_SEPARATION: f64 = 0.25;

/// Large-`N` terms at rescaled separation `x` for the `p`-th derivative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitTerms {
    pub g1p: f64,
    pub g2p: f64,
    pub g3p: f64,
    pub g4p: f64,
    pub g5p: f64,
    pub ap: f64,
    pub bp: f64,
    pub cp: f64,
}

/// `lo..=hi` cut into `ceil(x)` equal pieces, one per oscillation.
fn oscillation_points(x: f64, lo: f64, hi: f64) -> Vec<f64> {
    let pieces = (x.abs().ceil() as usize).clamp(1, 512);
    (0..=pieces)
        .map(|k| lo + (hi - lo) * k as f64 / pieces as f64)
        .collect()
}

/// Quadrature for the three limit integrals and `g1p - g3p`, returned as
/// `[g1p - g3p, g4p, g5p, g2p - g5p]`.
fn limit_integrals(p: u32, x: f64, quad: &Quadrature) -> Result<[f64; 4]> {
    let w = PI * x;
    let e = 2 * p as i32;
    let kernel = move |t: f64| {
        let base = t.powi(e);
        let (s, c) = (w * t).sin_cos();
        let h = (0.5 * w * t).sin();
        let d = 2.0 * h * h;
        [base * d, base * t * s, base * t * t * c, base * t * t * d]
    };
    if p > 50 {
        // t = 1 - s/(2p): the integrand lives in an O(1/p) layer at t = 1
        let width = 2.0 * p as f64;
        let mut pts = vec![0.0];
        let mut s = 1.0;
        while s < width {
            pts.push(s);
            s *= 2.0;
        }
        pts.push(width);
        pts.extend(oscillation_points(x, 0.0, width));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let est = quad.integrate(
            |s| {
                let v = kernel(1.0 - s / width);
                v.map(|c| c / width)
            },
            &pts,
        )?;
        Ok(est.value)
    } else {
        let mut pts = oscillation_points(x, 0.0, 1.0);
        let layer = 2.0 * p as f64 + 1.0;
        for k in [1.0, 2.0, 4.0, 8.0] {
            let t = 1.0 - k / layer;
            if t > 0.0 {
                pts.push(t);
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Ok(quad.integrate(kernel, &pts)?.value)
    }
}

/// `(g3p, g4p, g5p)`: the integrals over `t in [0, 1]` of `cos(pi x t) t^{2p}`,
/// `sin(pi x t) t^{2p+1}` and `cos(pi x t) t^{2p+2}`, by adaptive
/// Gauss-Kronrod quadrature (relative tolerance 1e-10, absolute 1e-14).
pub fn g_limit_integrals(p: u32, x: f64) -> Result<(f64, f64, f64)> {
    g_limit_integrals_with(p, x, &Quadrature::default())
}

pub fn g_limit_integrals_with(p: u32, x: f64, quad: &Quadrature) -> Result<(f64, f64, f64)> {
    let g1 = 1.0 / (2.0 * p as f64 + 1.0);
    let g2 = 1.0 / (2.0 * p as f64 + 3.0);
    if x == 0.0 {
        return Ok((g1, 0.0, g2));
    }
    let [d3, g4, g5, _] = limit_integrals(p, x, quad)?;
    Ok((g1 - d3, g4, g5))
}

/// The same three integrals from the integration-by-parts recurrence
/// `I_k = sin(a)/a - (k/a) J_{k-1}`, `J_k = -cos(a)/a + (k/a) I_{k-1}`,
/// `a = pi x`, run in 512-bit fixed point. The upward recurrence loses
/// about `log10(k!/a^k)` digits, which the extra precision absorbs.
pub fn g_limit_integrals_recurrence(p: u32, x: f64) -> (f64, f64, f64) {
    let g1 = 1.0 / (2.0 * p as f64 + 1.0);
    let g2 = 1.0 / (2.0 * p as f64 + 3.0);
    if x == 0.0 {
        return (g1, 0.0, g2);
    }
    let a = Fixed::from_f64(PI * x);
    let (sin, cos) = sin_cos(&a);
    let one = Fixed::from_int(1);
    let sin_over = sin.div(&a);
    let cos_over = cos.div(&a);
    let mut i = sin_over.clone();
    let mut j = (&one - &cos).div(&a);
    let top = 2 * p as i64 + 2;
    let mut cos_ints = vec![i.clone()];
    let mut sin_ints = vec![j.clone()];
    for k in 1..=top {
        let next_i = &sin_over - &j.mul_int(k).div(&a);
        let next_j = &(-cos_over.clone()) + &i.mul_int(k).div(&a);
        i = next_i;
        j = next_j;
        cos_ints.push(i.clone());
        sin_ints.push(j.clone());
    }
    let e = 2 * p as usize;
    (
        cos_ints[e].to_f64(),
        sin_ints[e + 1].to_f64(),
        cos_ints[e + 2].to_f64(),
    )
}

impl LimitTerms {
    pub fn new(p: u32, x: f64) -> Result<Self> {
        Self::with_quadrature(p, x, &Quadrature::with_tolerance(1e-13, 1e-17))
    }

    pub fn with_quadrature(p: u32, x: f64, quad: &Quadrature) -> Result<Self> {
        let g1p = 1.0 / (2.0 * p as f64 + 1.0);
        let g2p = 1.0 / (2.0 * p as f64 + 3.0);
        let [d3, g4p, g5p, _] = if x == 0.0 {
            [0.0, 0.0, g2p, 0.0]
        } else {
            limit_integrals(p, x, quad)?
        };
        let g3p = g1p - d3;
        let cp = d3 * (g1p + g3p);
        Ok(Self {
            g1p,
            g2p,
            g3p,
            g4p,
            g5p,
            ap: g2p * cp - g1p * g4p * g4p,
            bp: g5p * cp - g3p * g4p * g4p,
            cp,
        })
    }
}

/// Power series of the limit terms in `y = (pi x)^2`, with the leading
/// cancellations of `A_p` (order `y`) and `A_p + B_p` (orders `y`, `y^2`)
/// removed exactly. `A_p = y^2 a(y)`, `A_p + B_p = y^3 e(y)`,
/// `C_p = y c(y)`.
#[derive(Clone, Debug)]
pub struct SmallSeparationSeries {
    a: Vec<f64>,
    e: Vec<f64>,
    c: Vec<f64>,
}

const SERIES_TERMS: usize = 26;

fn series_mul(x: &[Fixed], y: &[Fixed]) -> Vec<Fixed> {
    let n = x.len().min(y.len());
    (0..n)
        .map(|k| {
            (0..=k).fold(Fixed::zero(), |acc, i| &acc + &(&x[i] * &y[k - i]))
        })
        .collect()
}

impl SmallSeparationSeries {
    pub fn new(p: u32) -> Self {
        let k_max = SERIES_TERMS + 2;
        let q = 2 * p as i64;
        let term = |k: usize, fact: u32, offset: i64| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let den = factorial(fact) * BigInt::from(q + 2 * k as i64 + offset);
            Fixed::ratio(&BigInt::from(sign), &den)
        };
        let g3: Vec<Fixed> = (0..k_max).map(|k| term(k, 2 * k as u32, 1)).collect();
        let h4: Vec<Fixed> = (0..k_max).map(|k| term(k, 2 * k as u32 + 1, 3)).collect();
        let g5: Vec<Fixed> = (0..k_max).map(|k| term(k, 2 * k as u32, 3)).collect();
        let g1 = g3[0].clone();
        let g2 = g5[0].clone();

        // C = y * dt * s3 with dt = (g1 - g3)/y and s3 = g1 + g3
        let dt: Vec<Fixed> = (0..k_max - 1).map(|k| -g3[k + 1].clone()).collect();
        let mut s3 = g3.clone();
        s3[0] = &g1 + &g1;
        let ct = series_mul(&dt, &s3);
        let h2 = series_mul(&h4, &h4);

        let a_full: Vec<Fixed> = ct
            .iter()
            .zip(&h2)
            .map(|(c, h)| &(&g2 * c) - &(&g1 * h))
            .collect();
        let mut g5_plus = g5.clone();
        g5_plus[0] = &g5[0] + &g2;
        let mut g3_plus = g3.clone();
        g3_plus[0] = &g3[0] + &g1;
        let lhs = series_mul(&g5_plus, &ct);
        let rhs = series_mul(&g3_plus, &h2);
        let e_full: Vec<Fixed> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();

        Self {
            a: a_full[1..].iter().take(SERIES_TERMS).map(Fixed::to_f64).collect(),
            e: e_full[2..].iter().take(SERIES_TERMS).map(Fixed::to_f64).collect(),
            c: ct.iter().take(SERIES_TERMS).map(Fixed::to_f64).collect(),
        }
    }

    fn eval(coeffs: &[f64], y: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c)
    }

    /// `R_{2,p}(x)` for `0 <= x <= SMALL_SEPARATION`.
    pub fn pair_correlation(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let y = (PI * x).powi(2);
        let a = Self::eval(&self.a, y);
        let e = Self::eval(&self.e, y);
        let c = Self::eval(&self.c, y);
        // B/A = -1 + eps
        let eps = (y * e / a).clamp(0.0, 2.0);
        let phi = 2.0 * (0.5 * eps).sqrt().asin();
        let tail = if phi < 0.1 {
            // sin(phi) - phi cos(phi)
            let p2 = phi * phi;
            phi * p2 * (1.0 / 3.0 - p2 * (1.0 / 30.0 - p2 * (1.0 / 840.0 - p2 / 45360.0)))
        } else {
            phi.sin() - phi * phi.cos()
        };
        let kernel = FRAC_PI_2 * (1.0 - eps) + tail;
        y.sqrt() * a * kernel / c.powf(1.5)
    }

    /// Coefficient of the linear term of `R_{2,p}(x)`.
    pub fn slope(&self) -> f64 {
        PI * FRAC_PI_2 * self.a[0] / self.c[0].powf(1.5)
    }
}

/// Large-`N` pair correlation `R_{2,p}(x)` of the real zeros of the `p`-th
/// derivative in the coordinate where all zeros have unit mean spacing:
/// `(B_p asin(B_p/A_p) + sqrt(A_p^2 - B_p^2)) / C_p^{3/2}`.
///
/// For `x < SMALL_SEPARATION` the terms come from [`SmallSeparationSeries`];
/// the closed form cancels catastrophically there.
pub fn pair_correlation_limit(p: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::BelowResolvableSeparation { x });
    }
    if x < SMALL_SEPARATION {
        return Ok(SmallSeparationSeries::new(p).pair_correlation(x));
    }
    let t = LimitTerms::new(p, x)?;
    pair_correlation_from_terms(&t, p, x)
}

fn pair_correlation_from_terms(t: &LimitTerms, p: u32, x: f64) -> Result<f64> {
    if !(t.cp > 0.0) || !(t.ap > 0.0) {
        return Err(Error::BelowResolvableSeparation { x });
    }
    // A_p and B_p are differences of terms larger by ~p^2
    let slack = 1e-12 * (2.0 * p as f64 + 1.0).powi(2);
    let s = arcsin_ratio(t.ap, t.bp, slack)?;
    Ok(t.ap * arcsin_kernel(s) / t.cp.powf(1.5))
}

/// Tabulates [`pair_correlation_limit`] on `xs`, reusing one series for the
/// small-separation points.
pub fn tabulate_limit(p: u32, xs: &[f64]) -> Result<Vec<(f64, f64)>> {
    let series = SmallSeparationSeries::new(p);
    xs.iter()
        .map(|&x| {
            let r = if x > 0.0 && x < SMALL_SEPARATION {
                series.pair_correlation(x)
            } else {
                pair_correlation_limit(p, x)?
            };
            Ok((x, r))
        })
        .collect()
}

/// CSV with header `x,R2`.
pub fn curve_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("x,R2\n");
    for (x, r) in points {
        out.push_str(&format!("{x},{r}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_p_values() {
        assert!((v_p(0) - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((v_p(49) - (99.0f64 / 101.0).sqrt()).abs() < 1e-15);
        assert!((v_p(49) - 0.990050).abs() < 1e-6);
        assert!(v_p(49) >= 0.99 && v_p(48) < 0.99);
        assert!((1.0 - v_p(10_000)) * 20_000.0 - 1.0 < 1e-3);
    }

    #[test]
    fn finite_n_fraction_reported_value() {
        let f = expected_real_fraction_finite_n(30, 10);
        assert!((f - 0.9696).abs() < 5e-5, "{f}");
        assert!((f - v_p(10) - 0.014).abs() < 1e-3);
    }

    #[test]
    fn finite_n_fraction_direct_sum() {
        // sum n^2 over n <= 30 is 9455; 31 terms of n^0 including n = 0
        let expect = (9455.0f64 / 31.0).sqrt() / 30.0;
        assert!((expected_real_fraction_finite_n(30, 0) - expect).abs() < 1e-15);
    }

    #[test]
    fn density_of_top_mode() {
        let profile = VarianceProfile::concentrated(9, 9, 2.0).unwrap();
        assert!((kac_rice_density(&profile) - 9.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn density_and_fraction_routes_agree() {
        for (n, p) in [(30, 10), (100, 0), (7, 3), (256, 20), (4096, 500)] {
            let profile = VarianceProfile::derivative(n, p).unwrap();
            let via_density = kac_rice_density(&profile) * 2.0 * PI / (2 * n) as f64;
            let direct = expected_real_fraction_finite_n(n, p);
            assert!((via_density - direct).abs() < 1e-14 * direct, "{n} {p}");
        }
    }

    #[test]
    fn g_integrals_at_known_points() {
        let (g3, g4, g5) = g_limit_integrals(0, 1.0).unwrap();
        assert!(g3.abs() < 1e-14);
        assert!((g4 - 1.0 / PI).abs() < 1e-12);
        assert!((g5 + 2.0 / (PI * PI)).abs() < 1e-12);
        for p in [0, 3, 60] {
            let (a, b, c) = g_limit_integrals(p, 0.0).unwrap();
            assert_eq!(a, 1.0 / (2 * p + 1) as f64);
            assert_eq!(b, 0.0);
            assert_eq!(c, 1.0 / (2 * p + 3) as f64);
        }
    }

    #[test]
    fn quadrature_and_recurrence_agree() {
        for p in 0..=5 {
            for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
                let q = g_limit_integrals(p, x).unwrap();
                let r = g_limit_integrals_recurrence(p, x);
                for (u, v) in [(q.0, r.0), (q.1, r.1), (q.2, r.2)] {
                    let scale = 1.0 / (2 * p + 1) as f64;
                    assert!((u - v).abs() <= 1e-9 * v.abs().max(scale), "p={p} x={x}: {u} {v}");
                }
            }
        }
    }

    #[test]
    fn g_integral_bounds() {
        for p in [0, 2, 7, 80] {
            for x in [0.3, 1.7, 4.2] {
                let (g3, g4, g5) = g_limit_integrals(p, x).unwrap();
                let pf = p as f64;
                assert!(g3.abs() <= 1.0 / (2.0 * pf + 1.0));
                assert!(g4.abs() <= 1.0 / (2.0 * pf + 2.0));
                assert!(g5.abs() <= 1.0 / (2.0 * pf + 3.0));
            }
        }
    }

    #[test]
    fn plateau_is_squared_density() {
        for p in [0, 1, 3] {
            let r = pair_correlation_limit(p, 40.3).unwrap();
            let v2 = v_p(p).powi(2);
            assert!((r - v2).abs() < 0.02 * v2, "p={p}: {r} vs {v2}");
        }
    }

    #[test]
    fn series_and_closed_form_meet() {
        for p in [0, 1, 3, 10, 40] {
            let series = SmallSeparationSeries::new(p);
            for x in [0.2, 0.25, 0.3] {
                let s = series.pair_correlation(x);
                let t = LimitTerms::new(p, x).unwrap();
                let d = pair_correlation_from_terms(&t, p, x).unwrap();
                assert!((s - d).abs() < 1e-8 * d, "p={p} x={x}: {s} vs {d}");
            }
        }
    }

    #[test]
    fn series_slope_matches_closed_form_coefficient() {
        for p in [0u32, 1, 3, 10, 50] {
            let pf = p as f64;
            let expect = PI * PI * (4.0 * pf * pf + 8.0 * pf + 3.0).sqrt()
                / (2.0 * (2.0 * pf + 3.0).powi(2) * (2.0 * pf + 5.0));
            let got = SmallSeparationSeries::new(p).slope();
            assert!((got - expect).abs() < 1e-13 * expect);
        }
    }

    #[test]
    fn finite_n_nonnegative_and_in_domain() {
        let profile = VarianceProfile::equal(32, 1.0).unwrap();
        for k in 1..200 {
            let x = 0.05 * k as f64;
            let t = BblTerms::new(&profile, PI * x / 32.0);
            assert!(t.a >= t.b.abs() * (1.0 - 1e-12));
            assert!(pair_correlation_finite_n_rescaled(&profile, x).unwrap() >= 0.0);
        }
        assert!(matches!(
            pair_correlation_finite_n(&profile, 0.0),
            Err(Error::DegenerateSeparation { .. })
        ));
    }

    #[test]
    fn limit_rejects_non_positive_separation() {
        assert!(pair_correlation_limit(2, 0.0).is_err());
        assert!(pair_correlation_limit(2, -1.0).is_err());
    }

    #[test]
    fn curve_csv_header() {
        let csv = curve_csv(&tabulate_limit(0, &[0.1, 1.0]).unwrap());
        assert!(csv.starts_with("x,R2\n0.1,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
