//! Eigenvalues of complex upper Hessenberg matrices by single-shift QR, and
//! polynomial roots through the companion matrix.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major square matrix.
#[derive(Clone, Debug)]
struct Square {
    n: usize,
    data: Vec<Complex64>,
}

impl Square {
    fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Rotation `[c s; -conj(s) c]` that maps `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let norm = na.hypot(nb);
    (na / norm, (a / na) * b.conj() / norm)
}

/// Eigenvalues of an upper Hessenberg matrix. Entries below the first
/// subdiagonal are ignored.
fn hessenberg_eigenvalues(mut h: Square) -> Result<Vec<Complex64>> {
    let n = h.n;
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let max_iter = 60 * n.max(10);
    let mut total_iter = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eig[0] = h.at(0, 0);
            break;
        }
        // look for a negligible subdiagonal entry
        let mut lo = hi;
        while lo > 0 {
            let sub = abs1(h.at(lo, lo - 1));
            let diag = abs1(h.at(lo - 1, lo - 1)) + abs1(h.at(lo, lo));
            if sub <= f64::EPSILON * diag || sub < f64::MIN_POSITIVE {
                *h.at_mut(lo, lo - 1) = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h.at(hi, hi);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total_iter += 1;
        since_deflation += 1;
        if total_iter > max_iter {
            return Err(Error::EigenNoConvergence { order: n });
        }

        let shift = if since_deflation % 11 == 10 {
            // exceptional shift breaks cycles such as the companion of z^n + 1
            let angle = since_deflation as f64 * 1.7;
            h.at(hi, hi) + Complex64::from_polar(0.75 * h.at(hi, hi - 1).norm().max(1e-3), angle)
        } else {
            // Wilkinson shift: eigenvalue of the trailing 2x2 block nearest h[hi][hi]
            let a = h.at(hi - 1, hi - 1);
            let b = h.at(hi - 1, hi);
            let c = h.at(hi, hi - 1);
            let d = h.at(hi, hi);
            let tr_half = (a + d) * 0.5;
            let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
            let l1 = tr_half + disc;
            let l2 = tr_half - disc;
            if (l1 - d).norm() <= (l2 - d).norm() {
                l1
            } else {
                l2
            }
        };

        for k in lo..=hi {
            *h.at_mut(k, k) -= shift;
        }
        rot.clear();
        for k in lo..hi {
            let (c, s) = givens(h.at(k, k), h.at(k + 1, k));
            for j in k..=hi {
                let x = h.at(k, j);
                let y = h.at(k + 1, j);
                *h.at_mut(k, j) = x * c + s * y;
                *h.at_mut(k + 1, j) = -s.conj() * x + y * c;
            }
            rot.push((c, s));
        }
        for (offset, &(c, s)) in rot.iter().enumerate() {
            let k = lo + offset;
            let last = (k + 2).min(hi);
            for i in lo..=last {
                let x = h.at(i, k);
                let y = h.at(i, k + 1);
                *h.at_mut(i, k) = x * c + y * s.conj();
                *h.at_mut(i, k + 1) = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            *h.at_mut(k, k) += shift;
        }
    }
    Ok(eig)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of `sum_k coeffs[k] z^k` (leading coefficient nonzero) as
/// eigenvalues of the companion matrix, each refined by at most a few
/// Newton steps that are kept only while they reduce `|Q(z)|`.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len().saturating_sub(1);
    let lead = *coeffs.last().ok_or(Error::DegreeDeficient)?;
    if lead.norm() == 0.0 {
        return Err(Error::DegreeDeficient);
    }
    if degree == 0 {
        return Ok(Vec::new());
    }
    // companion in Hessenberg form: first row -c_{m-1}/c_m .. -c_0/c_m
    let mut h = Square::zeros(degree);
    for j in 0..degree {
        *h.at_mut(0, j) = -coeffs[degree - 1 - j] / lead;
    }
    for i in 1..degree {
        *h.at_mut(i, i - 1) = Complex64::new(1.0, 0.0);
    }
    let mut roots = hessenberg_eigenvalues(h)?;
    for z in roots.iter_mut() {
        let (mut val, mut der) = horner(coeffs, *z);
        for _ in 0..3 {
            if der.norm() == 0.0 {
                break;
            }
            let step = val / der;
            let cand = *z - step;
            let (cval, cder) = horner(coeffs, cand);
            if cval.norm() >= val.norm() || step.norm() > 1e-6 * z.norm().max(1.0) {
                break;
            }
            *z = cand;
            val = cval;
            der = cder;
        }
    }
    Ok(roots)
}
