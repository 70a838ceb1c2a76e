//! Globally adaptive Gauss-Kronrod (7/15) quadrature for small vector-valued
//! integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_intervals: 4000,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Estimate<const D: usize> {
    pub value: [f64; D],
    pub error: [f64; D],
}

struct Segment<const D: usize> {
    a: f64,
    b: f64,
    value: [f64; D],
    error: [f64; D],
    floor: [f64; D],
    priority: f64,
}

impl<const D: usize> PartialEq for Segment<D> {
    fn eq(&self, other: &Self) -> bool {
        self.priority == other.priority
    }
}
impl<const D: usize> Eq for Segment<D> {}
impl<const D: usize> PartialOrd for Segment<D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const D: usize> Ord for Segment<D> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority.total_cmp(&other.priority)
    }
}

/// Kronrod value, error estimate and roundoff floor on `[a, b]`.
fn kronrod<const D: usize, F: Fn(f64) -> [f64; D]>(
    f: &F,
    a: f64,
    b: f64,
) -> ([f64; D], [f64; D], [f64; D]) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = [0.0; D];
    let mut gauss = [0.0; D];
    let mut resabs = [0.0; D];
    for d in 0..D {
        kron[d] = WGK[7] * fc[d];
        gauss[d] = WG[3] * fc[d];
        resabs[d] = WGK[7] * fc[d].abs();
    }
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        for d in 0..D {
            kron[d] += WGK[j] * (f1[d] + f2[d]);
            resabs[d] += WGK[j] * (f1[d].abs() + f2[d].abs());
            if j % 2 == 1 {
                gauss[d] += WG[j / 2] * (f1[d] + f2[d]);
            }
        }
    }
    let mut value = [0.0; D];
    let mut error = [0.0; D];
    let mut floor = [0.0; D];
    for d in 0..D {
        value[d] = kron[d] * half;
        let raw = ((kron[d] - gauss[d]) * half).abs();
        let scale = resabs[d] * half.abs();
        // QUADPACK error heuristic
        let mut err = if raw > 0.0 && scale > 0.0 {
            scale * (200.0 * raw / scale).powf(1.5).min(1.0)
        } else {
            raw
        };
        floor[d] = 50.0 * f64::EPSILON * scale;
        err = err.max(floor[d]);
        error[d] = err;
    }
    (value, error, floor)
}

impl Quadrature {
    pub fn with_tolerance(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }

    /// Integrates `f` over `[points[0], points[last]]`, starting from the
    /// partition given by `points` (which must be increasing).
    pub fn integrate<const D: usize, F>(&self, f: F, points: &[f64]) -> Result<Estimate<D>>
    where
        F: Fn(f64) -> [f64; D],
    {
        assert!(points.len() >= 2, "need at least one interval");
        let priority = |err: &[f64; D]| err.iter().fold(0.0f64, |m, e| m.max(*e));
        let mut heap = BinaryHeap::new();
        for w in points.windows(2) {
            if w[1] > w[0] {
                let (value, error, floor) = kronrod(&f, w[0], w[1]);
                heap.push(Segment {
                    a: w[0],
                    b: w[1],
                    value,
                    error,
                    floor,
                    priority: priority(&error),
                });
            }
        }
        loop {
            let mut total = [0.0; D];
            let mut err = [0.0; D];
            let mut floor = [0.0; D];
            for s in heap.iter() {
                for d in 0..D {
                    total[d] += s.value[d];
                    err[d] += s.error[d];
                    floor[d] += s.floor[d];
                }
            }
            // accept once the error is at the roundoff level of int |f|
            let done = (0..D).all(|d| {
                err[d] <= self.abs_tol.max(self.rel_tol * total[d].abs()).max(2.0 * floor[d])
            });
            if done {
                return Ok(Estimate { value: total, error: err });
            }
            if heap.len() >= self.max_intervals {
                let worst = heap.peek().expect("non-empty");
                return Err(Error::QuadratureNoConvergence {
                    a: worst.a,
                    b: worst.b,
                    error: priority(&err),
                });
            }
            let worst = heap.pop().expect("non-empty");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                return Err(Error::QuadratureNoConvergence {
                    a: worst.a,
                    b: worst.b,
                    error: priority(&err),
                });
            }
            for (a, b) in [(worst.a, mid), (mid, worst.b)] {
                let (value, error, floor) = kronrod(&f, a, b);
                heap.push(Segment {
                    a,
                    b,
                    value,
                    error,
                    floor,
                    priority: priority(&error),
                });
            }
        }
    }

    pub fn integrate_scalar<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        Ok(self.integrate(|t| [f(t)], &[a, b])?.value[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let q = Quadrature::default();
        let v = q.integrate_scalar(|t| t.powi(6) - 3.0 * t, 0.0, 2.0).unwrap();
        assert!((v - (128.0 / 7.0 - 6.0)).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_integrand() {
        let q = Quadrature::with_tolerance(1e-12, 1e-15);
        let v = q.integrate_scalar(|t| (40.0 * PI * t).cos() * t, 0.0, 1.0).unwrap();
        // int_0^1 t cos(kt) dt = (cos k - 1)/k^2 + sin k / k with k = 40 pi
        assert!(v.abs() < 1e-13);
        let w = q.integrate_scalar(|t| (3.0 * t).sin(), 0.0, 1.0).unwrap();
        assert!((w - (1.0 - 3.0f64.cos()) / 3.0).abs() < 1e-14);
    }

    #[test]
    fn vector_integrand_and_breakpoints() {
        let q = Quadrature::default();
        let est = q
            .integrate(|t| [t, t * t, (-t).exp()], &[0.0, 0.5, 1.0])
            .unwrap();
        assert!((est.value[0] - 0.5).abs() < 1e-14);
        assert!((est.value[1] - 1.0 / 3.0).abs() < 1e-14);
        assert!((est.value[2] - (1.0 - (-1.0f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn reports_non_convergence() {
        let q = Quadrature {
            rel_tol: 1e-15,
            abs_tol: 0.0,
            max_intervals: 4,
        };
        assert!(q.integrate_scalar(|t| 1.0 / t.sqrt(), 0.0, 1.0).is_err());
    }

    #[test]
    fn unit_mass_of_spacing_density() {
        // substitute u = tan(theta)/2 to integrate over the whole line
        let q = Quadrature::with_tolerance(1e-12, 1e-15);
        let v = q
            .integrate_scalar(
                |th: f64| {
                    let u = 0.5 * th.tan();
                    let jac = 0.5 / th.cos().powi(2);
                    (1.0 + 4.0 * u * u).powf(-1.5) * jac
                },
                -PI / 2.0,
                PI / 2.0,
            )
            .unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }
}
