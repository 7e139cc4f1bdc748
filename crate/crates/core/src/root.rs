//! Bracketing, bisection and small dense solvers shared by the spectra and
//! oracle modules. NaN function values mark regions where an equation is
//! undefined (a discriminant went negative); scans treat them as bracket
//! breaks rather than sign changes.

use crate::error::{Error, Result};

/// Bisection on a bracketing pair to absolute tolerance `tol_x`.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol_x: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoRootInBracket { lo, hi });
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo * f_hi > 0.0 {
        return Err(Error::NoRootInBracket { lo, hi });
    }
    for _ in 0..220 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.is_nan() {
            // shrink toward the defined side
            hi = mid;
            continue;
        }
        if f_lo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = fm;
        }
        if hi - lo <= tol_x {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scans [lo, hi] on `n` uniform points and returns every sign-change
/// bracket. Undefined (NaN) samples truncate the admissible interval.
pub(crate) fn scan_brackets<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let fx = f(x);
        if prev_f.is_finite() && fx.is_finite() && prev_f * fx <= 0.0 && prev_f != 0.0 {
            out.push((prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    out
}

/// All roots found by scan-and-bisect on [lo, hi].
pub(crate) fn find_roots<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
    tol_x: f64,
) -> Vec<f64> {
    scan_brackets(f, lo, hi, n)
        .into_iter()
        .filter_map(|(a, b)| bisect(f, a, b, tol_x).ok())
        .collect()
}

/// Damped Newton iteration on a 2-vector residual with a forward-difference
/// Jacobian. Returns the solution or reports a singular Jacobian /
/// non-convergence.
pub(crate) fn newton2<F: Fn([f64; 2]) -> [f64; 2]>(
    f: &F,
    start: [f64; 2],
    scale: [f64; 2],
    tol: f64,
) -> Result<[f64; 2]> {
    let mut x = start;
    let mut r = f(x);
    if !(r[0].is_finite() && r[1].is_finite()) {
        return Err(Error::NoSolution("residual undefined at start".into()));
    }
    for _ in 0..120 {
        let norm = r[0].abs().max(r[1].abs());
        if norm <= tol {
            return Ok(x);
        }
        // forward-difference Jacobian
        let mut j = [[0.0f64; 2]; 2];
        for col in 0..2 {
            let h = 1e-7 * scale[col].max(x[col].abs());
            let mut xp = x;
            xp[col] += h;
            let rp = f(xp);
            if !(rp[0].is_finite() && rp[1].is_finite()) {
                return Err(Error::NoSolution("residual undefined near iterate".into()));
            }
            j[0][col] = (rp[0] - r[0]) / h;
            j[1][col] = (rp[1] - r[1]) / h;
        }
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let jscale = j[0][0].abs().max(j[0][1].abs()).max(j[1][0].abs()).max(j[1][1].abs());
        if det.abs() <= 1e-14 * jscale * jscale {
            return Err(Error::SingularJacobian);
        }
        let dx = [
            -(r[0] * j[1][1] - r[1] * j[0][1]) / det,
            -(j[0][0] * r[1] - j[1][0] * r[0]) / det,
        ];
        // backtracking damping
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = [x[0] + lambda * dx[0], x[1] + lambda * dx[1]];
            let rt = f(trial);
            if rt[0].is_finite() && rt[1].is_finite() && rt[0].abs().max(rt[1].abs()) < norm {
                x = trial;
                r = rt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(Error::NoSolution("damped step stalled".into()));
        }
    }
    Err(Error::NoSolution("newton iteration did not converge".into()))
}

/// Real roots of a dense real polynomial given by ascending coefficients.
///
/// Scan-and-bisect inside the Cauchy bound, then Newton polish. Intended for
/// the low-degree condition polynomials (degree ≤ 8); tangent (even-order)
/// roots are not resolved.
pub(crate) fn poly_real_roots(coeffs: &[f64]) -> Vec<f64> {
    let deg = match coeffs.iter().rposition(|&c| c != 0.0) {
        Some(d) if d >= 1 => d,
        _ => return Vec::new(),
    };
    let lead = coeffs[deg];
    let bound = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
    let eval = |x: f64| coeffs[..=deg].iter().rev().fold(0.0, |acc, &c| acc * x + c);
    let deriv = |x: f64| {
        coeffs[1..=deg]
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (i, &c)| acc * x + (i + 1) as f64 * c)
    };
    let mut roots = find_roots(&eval, -bound, bound, 4000.max(deg * 400), 1e-13 * bound);
    // Newton polish
    for r in &mut roots {
        for _ in 0..4 {
            let d = deriv(*r);
            if d.abs() > 1e-300 {
                let step = eval(*r) / d;
                if step.is_finite() {
                    *r -= step;
                }
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * bound);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bisect_finds_simple_root() {
        let r = bisect(&|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert_relative_eq!(r, 2.0f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn bisect_rejects_unbracketed() {
        assert!(matches!(
            bisect(&|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoRootInBracket { .. })
        ));
    }

    #[test]
    fn scan_skips_undefined_regions() {
        // sqrt makes everything left of 1 undefined; the sign change at 2 is
        // still found
        let f = |x: f64| (x - 1.0).sqrt() - 1.0;
        let roots = find_roots(&f, 0.0, 3.0, 300, 1e-13);
        assert_eq!(roots.len(), 1);
        assert_relative_eq!(roots[0], 2.0, epsilon = 1e-10);
    }

    #[test]
    fn newton2_solves_coupled_system() {
        // x^2 + y^2 = 4, x y = 1
        let f = |p: [f64; 2]| [p[0] * p[0] + p[1] * p[1] - 4.0, p[0] * p[1] - 1.0];
        let sol = newton2(&f, [2.0, 0.4], [1.0, 1.0], 1e-13).unwrap();
        let r = f(sol);
        assert!(r[0].abs() < 1e-12 && r[1].abs() < 1e-12);
    }

    #[test]
    fn poly_roots_cubic() {
        // (x-1)(x+2)(x-3) = x^3 - 2x^2 - 5x + 6
        let roots = poly_real_roots(&[6.0, -5.0, -2.0, 1.0]);
        assert_eq!(roots.len(), 3);
        assert_relative_eq!(roots[0], -2.0, epsilon = 1e-10);
        assert_relative_eq!(roots[1], 1.0, epsilon = 1e-10);
        assert_relative_eq!(roots[2], 3.0, epsilon = 1e-10);
    }

    #[test]
    fn poly_roots_ignores_complex_pair() {
        // (x^2+1)(x-2)
        let roots = poly_real_roots(&[-2.0, 1.0, -2.0, 1.0]);
        assert_eq!(roots.len(), 1);
        assert_relative_eq!(roots[0], 2.0, epsilon = 1e-10);
    }
}
