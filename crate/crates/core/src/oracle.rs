//! Independent numerical verification.
//!
//! Nothing here uses the closed-form spectra: eigenvalues come from direct
//! two-sided integration of the radial equation with logarithmic-derivative
//! matching, norms and orthogonality integrals from adaptive quadrature, and
//! wavefunction quality from the pointwise residual of the radial operator.
//!
//! Integration runs on the uniform grid x = ln r with w(x) = u(r)/√r, where
//! the equation u'' = Q(r) u becomes w'' = (r²Q + 1/4) w. The log grid
//! resolves both the inverse-power region near the origin and the
//! exponential tail with one fixed step.

use crate::error::{Error, Result};
use crate::model::{build_radial, PotentialParams, ProblemSpec, RadialEquation};

/// Integration window and resolution for the shooting method. Radial scales
/// are in units of the bound-state length 1/√(M²−E²); `grid_points = 0`
/// picks the resolution from the stiffness of the transformed equation.
#[derive(Clone, Copy, Debug)]
pub struct ShootingConfig {
    pub r_min_scale: f64,
    pub r_max_scale: f64,
    pub grid_points: usize,
    pub node_tol: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            r_min_scale: 1e-4,
            r_max_scale: 40.0,
            grid_points: 0,
            node_tol: 1e-13,
        }
    }
}

struct Shot {
    nodes: usize,
    defect: f64,
}

/// How fast the wavefunction must leave the origin / enter the tail,
/// used to seed the two integration directions analytically.
struct Frame {
    x_lo: f64,
    x_hi: f64,
    n_points: usize,
    match_idx: usize,
    /// log of the analytic start, up to a constant: inner direction
    log_inner: Box<dyn Fn(f64) -> f64>,
    log_outer: Box<dyn Fn(f64) -> f64>,
    q_tilde: Vec<f64>,
}

fn build_frame(
    spec: &ProblemSpec,
    params: &PotentialParams,
    energy: f64,
    cfg: &ShootingConfig,
) -> Result<Frame> {
    let eq = build_radial(spec, params, energy)?;
    let decay = (-eq.rhs).sqrt(); // √(M²−E²)
    if !(decay > 0.0) {
        return Err(Error::NotBoundState);
    }
    let r_max = cfg.r_max_scale / decay;
    let (r_min, log_inner): (f64, Box<dyn Fn(f64) -> f64>) = if eq.inv_r4 > 0.0 {
        // essential singularity: u ~ r^θ e^{a/r}; start deep enough that the
        // seed error is erased by the e^{a/r} contrast
        let a_mag = eq.inv_r4.sqrt();
        let theta = 1.0 + eq.inv_r3 / (2.0 * a_mag);
        let r_min = a_mag / 650.0;
        (
            r_min,
            Box::new(move |x: f64| (theta - 0.5) * x - a_mag * (-x).exp()),
        )
    } else {
        // regular singular point: u ~ r^c (1 + α₁ r)
        let disc = 0.25 + eq.inv_r2;
        if disc < 0.0 {
            return Err(Error::OvercriticalCoupling { discriminant: disc });
        }
        let c_in = 0.5 + disc.sqrt();
        let alpha1 = eq.inv_r / (2.0 * c_in);
        let r_min = cfg.r_min_scale / decay;
        (
            r_min,
            Box::new(move |x: f64| (c_in - 0.5) * x + (1.0 + alpha1 * x.exp()).abs().ln()),
        )
    };
    if !(r_min < r_max) {
        return Err(Error::Shooting(format!(
            "integration window empty: r_min {r_min} >= r_max {r_max}"
        )));
    }
    let sigma = eq.inv_r / (2.0 * -decay);
    let log_outer: Box<dyn Fn(f64) -> f64> =
        Box::new(move |x: f64| -decay * x.exp() + (sigma - 0.5) * x);

    let (x_lo, x_hi) = (r_min.ln(), r_max.ln());
    let range = x_hi - x_lo;
    let q_tilde_at = |x: f64, eq: &RadialEquation| {
        let r = x.exp();
        r * r * eq.strength_at(r) + 0.25
    };
    let n_points = if cfg.grid_points > 0 {
        cfg.grid_points.max(64)
    } else {
        let mut qmax: f64 = 1.0;
        for i in 0..=256 {
            let x = x_lo + range * i as f64 / 256.0;
            qmax = qmax.max(q_tilde_at(x, &eq).abs());
        }
        let h = (2.4e-7 / (qmax * qmax * range)).powf(0.25);
        ((range / h).ceil() as usize).clamp(4000, 1_600_000)
    };
    let h = range / (n_points - 1) as f64;
    let q_tilde: Vec<f64> = (0..n_points)
        .map(|i| q_tilde_at(x_lo + h * i as f64, &eq))
        .collect();
    // match where the equation is most classically allowed
    let (mut match_idx, mut qmin) = (n_points / 2, f64::INFINITY);
    for (i, &q) in q_tilde.iter().enumerate() {
        if q < qmin {
            qmin = q;
            match_idx = i;
        }
    }
    match_idx = match_idx.clamp(n_points / 20 + 2, n_points - n_points / 20 - 3);
    Ok(Frame {
        x_lo,
        x_hi,
        n_points,
        match_idx,
        log_inner,
        log_outer,
        q_tilde,
    })
}

/// One Numerov sweep with renormalization; returns the node count over the
/// swept range and the triplet (w_{m−1}, w_m, w_{m+1}) around `record_at`.
fn numerov_sweep(
    q: &[f64],
    h: f64,
    start: (f64, f64),
    forward: bool,
    record_at: usize,
) -> (usize, [f64; 3]) {
    let n = q.len();
    let h2 = h * h;
    let f = |qi: f64| 1.0 - h2 * qi / 12.0;
    let mut nodes = 0usize;
    let mut rec = [0.0f64; 3];
    let idx: Box<dyn Fn(usize) -> usize> = if forward {
        Box::new(|j| j)
    } else {
        Box::new(move |j| n - 1 - j)
    };
    let (mut w_prev, mut w_cur) = start;
    let store = |rec: &mut [f64; 3], i: usize, v: f64| {
        if i + 1 == record_at {
            rec[0] = v;
        } else if i == record_at {
            rec[1] = v;
        } else if i == record_at + 1 {
            rec[2] = v;
        }
    };
    store(&mut rec, idx(0), w_prev);
    store(&mut rec, idx(1), w_cur);
    if w_prev * w_cur < 0.0 {
        nodes += 1;
    }
    for j in 1..n - 1 {
        let (im, i0, ip) = (idx(j - 1), idx(j), idx(j + 1));
        let w_next =
            (2.0 * w_cur * (1.0 + 5.0 * h2 * q[i0] / 12.0) - w_prev * f(q[im])) / f(q[ip]);
        if w_next * w_cur < 0.0 || (w_next == 0.0 && w_cur != 0.0) {
            nodes += 1;
        }
        store(&mut rec, ip, w_next);
        w_prev = w_cur;
        w_cur = w_next;
        let mag = w_cur.abs().max(w_prev.abs());
        if mag > 1e220 {
            w_prev /= mag;
            w_cur /= mag;
            for r in rec.iter_mut() {
                // renormalization must keep the recorded triplet consistent
                // only while it is still being filled; scale uniformly
                *r /= if (forward && ip <= record_at + 1) || (!forward && ip >= record_at.saturating_sub(1)) {
                    mag
                } else {
                    1.0
                };
            }
        }
    }
    (nodes, rec)
}

fn integrate_once(
    spec: &ProblemSpec,
    params: &PotentialParams,
    energy: f64,
    cfg: &ShootingConfig,
) -> Result<Shot> {
    let frame = build_frame(spec, params, energy, cfg)?;
    let n = frame.n_points;
    let h = (frame.x_hi - frame.x_lo) / (n - 1) as f64;
    let m = frame.match_idx;

    let x_at = |i: usize| frame.x_lo + h * i as f64;
    let s_in = (frame.log_inner)(x_at(1)) - (frame.log_inner)(x_at(0));
    let (nodes, left) = numerov_sweep(&frame.q_tilde, h, (1.0, s_in.exp()), true, m);
    let s_out = (frame.log_outer)(x_at(n - 2)) - (frame.log_outer)(x_at(n - 1));
    let (_, right) = numerov_sweep(&frame.q_tilde, h, (1.0, s_out.exp()), false, m);

    // sign-free Wronskian-style matching defect, scale-normalized
    let raw = (left[2] - left[0]) * right[1] - (right[2] - right[0]) * left[1];
    let scale = (left[0].abs() + left[1].abs() + left[2].abs())
        * (right[0].abs() + right[1].abs() + right[2].abs());
    let defect = if scale > 0.0 { raw / scale } else { f64::NAN };
    Ok(Shot { nodes, defect })
}

/// Locates the bound-state energy with exactly `n_nodes` interior nodes by
/// two-sided integration: node-count bisection brackets the state (the count
/// is monotone in E, in either direction), then the logarithmic-derivative
/// matching defect is bisected inside the transition window.
pub fn shoot_eigenvalue(
    spec: &ProblemSpec,
    params: &PotentialParams,
    n_nodes: usize,
    bracket: (f64, f64),
    cfg: &ShootingConfig,
) -> Result<f64> {
    let m = spec.mass;
    let (mut lo, mut hi) = bracket;
    if !(lo < hi && lo > -m && hi < m) {
        return Err(Error::Domain(format!(
            "bracket ({lo}, {hi}) must lie inside (-M, M)"
        )));
    }
    let count = |e: f64| -> Result<usize> { Ok(integrate_once(spec, params, e, cfg)?.nodes) };
    let c_lo = count(lo)?;
    let c_hi = count(hi)?;
    let increasing = c_hi >= c_lo;
    let (c_min, c_max) = (c_lo.min(c_hi), c_lo.max(c_hi));
    if !(c_min <= n_nodes && n_nodes < c_max) {
        return Err(Error::NoSolution(format!(
            "no eigenvalue with {n_nodes} nodes in bracket: counts {c_lo}..{c_hi}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let c = count(mid)?;
        let keep_low = if increasing { c <= n_nodes } else { c > n_nodes };
        if keep_low {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= cfg.node_tol * m {
            break;
        }
    }
    let e_count = 0.5 * (lo + hi);

    // polish on the matching defect inside a small window around the jump
    let w = (hi - lo).max(1e-11 * m) * 32.0;
    let (p_lo, p_hi) = ((e_count - w).max(bracket.0), (e_count + w).min(bracket.1));
    let defect = |e: f64| -> f64 {
        integrate_once(spec, params, e, cfg)
            .map(|s| s.defect)
            .unwrap_or(f64::NAN)
    };
    let brackets = crate::root::scan_brackets(&defect, p_lo, p_hi, 64);
    for (a, b) in brackets {
        if let Ok(root) = crate::root::bisect(&defect, a, b, cfg.node_tol * m) {
            // accept only the defect zero attached to the node transition
            if (root - e_count).abs() <= w {
                return Ok(root);
            }
        }
    }
    Ok(e_count)
}

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

/// Adaptive Simpson quadrature of `f` over [lo, hi] to relative tolerance
/// `rel_tol`. A semi-infinite range (hi = ∞) is cut off where the integrand
/// has fallen below 10⁻¹⁶ of its peak; the discarded tail is bounded by the
/// exponential envelope of everything this crate integrates.
pub fn quad_adaptive<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<f64> {
    if !(rel_tol > 0.0) {
        return Err(Error::Domain("rel_tol must be positive".into()));
    }
    let hi = if hi.is_infinite() {
        find_cutoff(&f, lo)?
    } else {
        hi
    };
    if !(hi > lo) {
        return Err(Error::Domain("empty integration range".into()));
    }
    // coarse estimate fixes the absolute tolerance budget
    let n0 = 512;
    let hstep = (hi - lo) / n0 as f64;
    let mut coarse = 0.0;
    let mut fmax: f64 = 0.0;
    for i in 0..n0 {
        let a = lo + i as f64 * hstep;
        let m = a + 0.5 * hstep;
        let b = a + hstep;
        coarse += hstep / 6.0 * (f(a) + 4.0 * f(m) + f(b));
        fmax = fmax.max(f(m).abs());
    }
    let tol_abs = rel_tol * coarse.abs().max(fmax * (hi - lo) * 1e-3).max(1e-300);
    adaptive_simpson(&f, lo, hi, tol_abs, 52)
}

fn find_cutoff<F: Fn(f64) -> f64>(f: &F, lo: f64) -> Result<f64> {
    // geometric probe for the peak, then extend until negligible
    let base = if lo > 0.0 { lo } else { 1e-9 };
    let mut peak: f64 = 0.0;
    let mut r = base;
    let mut peak_r = base;
    while r < 1e9 {
        let v = f(r).abs();
        if v > peak {
            peak = v;
            peak_r = r;
        }
        r *= 1.3;
    }
    if peak == 0.0 {
        return Err(Error::Domain("integrand vanishes on the probe range".into()));
    }
    let mut cut = peak_r.max(base) * 2.0;
    while f(cut).abs() > 1e-16 * peak && cut < 1e12 {
        cut *= 1.5;
    }
    Ok(cut)
}

fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureDepthExceeded);
    }
    let l = simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

// ---------------------------------------------------------------------------
// Operator residual
// ---------------------------------------------------------------------------

/// Maximum pointwise residual of the radial operator on a sampled
/// wavefunction, relative to the largest term magnitude on the grid.
///
/// `samples` must lie on a uniform logarithmic grid (at least 9 points);
/// second derivatives use fourth-order central stencils in x = ln r. The
/// stencil truncation error is estimated by re-differencing on the doubled
/// spacing; if that estimate exceeds `disc_tol` the grid is reported as too
/// coarse instead of silently passing a discretization-limited number.
pub fn residual(
    spec: &ProblemSpec,
    params: &PotentialParams,
    energy: f64,
    samples: &[(f64, f64)],
    disc_tol: f64,
) -> Result<f64> {
    if samples.len() < 9 {
        return Err(Error::Domain("need at least 9 samples".into()));
    }
    let n = samples.len();
    let h = (samples[1].0 / samples[0].0).ln();
    for i in 1..n {
        let hi_step = (samples[i].0 / samples[i - 1].0).ln();
        if !(hi_step > 0.0) || (hi_step - h).abs() > 1e-8 * h {
            return Err(Error::Domain("samples must sit on a uniform log grid".into()));
        }
    }
    let eq = build_radial(spec, params, energy)?;
    let u: Vec<f64> = samples.iter().map(|&(_, u)| u).collect();
    let r: Vec<f64> = samples.iter().map(|&(r, _)| r).collect();

    let second = |i: usize, stride: usize, hh: f64| -> f64 {
        let d1 = (-u[i + 2 * stride] + 8.0 * u[i + stride] - 8.0 * u[i - stride]
            + u[i - 2 * stride])
            / (12.0 * hh);
        let d2 = (-u[i + 2 * stride] + 16.0 * u[i + stride] - 30.0 * u[i]
            + 16.0 * u[i - stride]
            - u[i - 2 * stride])
            / (12.0 * hh * hh);
        (d2 - d1) / (r[i] * r[i])
    };

    let mut max_defect: f64 = 0.0;
    let mut max_scale: f64 = 0.0;
    for i in 2..n - 2 {
        let upp = second(i, 1, h);
        let pot = eq.potential_at(r[i]) * u[i];
        let rhs = eq.rhs * u[i];
        max_defect = max_defect.max((upp - (pot - rhs)).abs());
        max_scale = max_scale.max(upp.abs()).max(pot.abs()).max(rhs.abs());
    }
    if max_scale == 0.0 {
        return Ok(0.0); // degenerate all-zero sample
    }
    // stencil-error estimate from the doubled spacing
    let mut est: f64 = 0.0;
    for i in 4..n - 4 {
        est = est.max((second(i, 1, h) - second(i, 2, 2.0 * h)).abs() / 15.0);
    }
    let est_rel = est / max_scale;
    if est_rel > disc_tol {
        return Err(Error::GridTooCoarse {
            estimate: est_rel,
            target: disc_tol,
        });
    }
    Ok(max_defect / max_scale)
}

/// Default sampling grid for residual checks: 1601 log-spaced points on
/// [10⁻², 10²] bound-state lengths. The count balances stencil truncation
/// against roundoff amplification of the second derivative near the inner
/// edge; both sit near 10⁻⁹ relative there.
pub fn default_residual_grid(b_decay: f64) -> Vec<f64> {
    let scale = 1.0 / b_decay.abs();
    log_grid(0.01 * scale, 100.0 * scale, 1601)
}

/// Uniform logarithmic grid with `n` points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
