//! Numerical domination roots.
//!
//! Roots are found by Aberth–Ehrlich simultaneous iteration in double
//! precision on the polynomial with its root at the origin divided out
//! exactly. Converged roots are polished with Newton steps whose residual is
//! evaluated by double-double (compensated) Horner. Starting points sit on
//! a fixed circle, so results are reproducible.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;
use crate::poly::Polynomial;
use crate::recurrence::{d_corona, d_kstar};

/// Default relative residual accepted for a root.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default threshold for calling a root real or zero.
pub const DEFAULT_EPS: f64 = 1e-8;
/// Largest degree handed to the double-precision solver.
pub const MAX_ROOT_DEGREE: usize = 60;

const MAX_ITERATIONS: usize = 2000;
const POLISH_STEPS: usize = 12;

/// All complex roots of a polynomial, with multiplicity.
///
/// `residuals[i]` is `|p(z)| / (max|coeff| * max(1,|z|)^degree)` for
/// `roots[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub degree: usize,
}

#[derive(Serialize)]
struct RootJson {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct RootSetJson {
    degree: usize,
    roots: Vec<RootJson>,
    residuals: Vec<f64>,
    real_nonzero_count: usize,
}

impl RootSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Distinct roots, merging those closer than `tol`.
    pub fn distinct(&self, tol: f64) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for &z in &self.roots {
            if !out.iter().any(|w| (w - z).norm() <= tol) {
                out.push(z);
            }
        }
        out
    }

    /// Every root has a partner (itself, when real) at its conjugate.
    pub fn conjugate_symmetric(&self, eps: f64) -> bool {
        self.roots.iter().all(|z| {
            self.roots
                .iter()
                .any(|w| (w - z.conj()).norm() <= eps * z.norm().max(1.0))
        })
    }

    pub fn to_json(&self, eps: f64) -> String {
        let j = RootSetJson {
            degree: self.degree,
            roots: self
                .roots
                .iter()
                .map(|z| RootJson {
                    re: clean_zero(z.re),
                    im: clean_zero(z.im),
                })
                .collect(),
            residuals: self.residuals.clone(),
            real_nonzero_count: classify_real(self, eps).real_nonzero_count,
        };
        serde_json::to_string(&j).expect("finite floats serialize")
    }
}

/// Set-level agreement: same distinct roots up to `tol`.
pub fn root_sets_agree(a: &RootSet, b: &RootSet, tol: f64) -> bool {
    let (da, db) = (a.distinct(tol), b.distinct(tol));
    da.len() == db.len()
        && da.iter().all(|z| db.iter().any(|w| (w - z).norm() <= tol))
        && db.iter().all(|z| da.iter().any(|w| (w - z).norm() <= tol))
}

fn clean_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

// Error-free transformations for the double-double evaluation.

#[derive(Clone, Copy, Debug, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

impl Dd {
    fn from(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let lo = s.lo + self.lo + o.lo;
        let r = two_sum(s.hi, lo);
        Dd { hi: r.hi, lo: r.lo }
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = two_prod(self.hi, b);
        let lo = p.lo + self.lo * b;
        two_sum(p.hi, lo)
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Clone, Copy, Default)]
struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    // self * z + c
    fn mul_add(self, z: Complex64, c: DdComplex) -> DdComplex {
        DdComplex {
            re: self
                .re
                .mul_f64(z.re)
                .add(self.im.mul_f64(z.im).neg())
                .add(c.re),
            im: self.re.mul_f64(z.im).add(self.im.mul_f64(z.re)).add(c.im),
        }
    }

    fn real(c: f64) -> DdComplex {
        DdComplex {
            re: Dd::from(c),
            im: Dd::default(),
        }
    }

    fn value(self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `p(z)` with double-double accumulation. `coeffs` lowest degree first.
fn eval_compensated(coeffs: &[f64], z: Complex64) -> Complex64 {
    eval_compensated_with_derivative(coeffs, z).0
}

/// `p(z)` and `p'(z)`, both accumulated in double-double.
fn eval_compensated_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let (mut p, mut dp) = (DdComplex::default(), DdComplex::default());
    for &c in coeffs.iter().rev() {
        dp = dp.mul_add(z, p);
        p = p.mul_add(z, DdComplex::real(c));
    }
    (p.value(), dp.value())
}

/// `p(z)`, `p'(z)` and a running bound on the rounding error of `p(z)`.
fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let r = z.norm();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * r + p.norm();
    }
    (p, dp, bound * 4.0 * f64::EPSILON)
}

fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let scale_coeff = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let degree = coeffs.len().saturating_sub(1) as i32;
    let scale = scale_coeff * z.norm().max(1.0).powi(degree);
    if scale == 0.0 {
        return 0.0;
    }
    eval_compensated(coeffs, z).norm() / scale
}

/// Fujiwara's bound on the moduli of the roots of a monic polynomial.
fn root_bound(monic: &[f64]) -> f64 {
    let d = monic.len() - 1;
    let mut bound: f64 = 0.0;
    for i in 1..=d {
        let a = monic[d - i].abs();
        let term = if i == d {
            (a / 2.0).powf(1.0 / d as f64)
        } else {
            a.powf(1.0 / i as f64)
        };
        bound = bound.max(term);
    }
    2.0 * bound.max(f64::MIN_POSITIVE)
}

fn aberth(monic: &[f64]) -> std::result::Result<Vec<Complex64>, (usize, Vec<Complex64>)> {
    let d = monic.len() - 1;
    let radius = root_bound(monic);
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| {
            Complex64::from_polar(
                radius,
                2.0 * PI * j as f64 / d as f64 + PI / (2.0 * d as f64),
            )
        })
        .collect();
    let mut done = vec![false; d];
    for iteration in 0..MAX_ITERATIONS {
        if done.iter().all(|&f| f) {
            return Ok(z);
        }
        for j in 0..d {
            if done[j] {
                continue;
            }
            let (p, dp, err) = eval_with_derivative(monic, z[j]);
            if p.norm() <= err {
                done[j] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&i| i != j)
                .map(|i| (z[j] - z[i]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                return Err((iteration, z));
            }
            z[j] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[j].norm() {
                done[j] = true;
            }
        }
    }
    if done.iter().all(|&f| f) {
        Ok(z)
    } else {
        Err((MAX_ITERATIONS, z))
    }
}

/// Newton on the exact coefficients, keeping the best point seen.
fn polish(coeffs: &[f64], z: Complex64) -> Complex64 {
    let (mut best, mut best_val) = (z, eval_compensated(coeffs, z).norm());
    let mut current = z;
    for _ in 0..POLISH_STEPS {
        let (p, dp) = eval_compensated_with_derivative(coeffs, current);
        if p.norm() == 0.0 {
            return current;
        }
        let next = current - p / dp;
        if !next.is_finite() || next == current {
            break;
        }
        current = next;
        let val = eval_compensated(coeffs, current).norm();
        if val < best_val {
            best = current;
            best_val = val;
        }
    }
    best
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// All complex roots of `p` with multiplicity. The root at the origin is
/// split off exactly; every other root must reach relative residual `tol`.
pub fn find_roots(p: &Polynomial, tol: f64) -> Result<RootSet> {
    let degree = p.degree().ok_or(Error::UndefinedDegree)?;
    if degree == 0 {
        return Err(Error::SpecDomain("a nonzero constant has no roots".into()));
    }
    if degree > MAX_ROOT_DEGREE {
        return Err(Error::Capacity {
            what: "root-finding degree",
            got: degree,
            limit: MAX_ROOT_DEGREE,
        });
    }
    let zeros = p.min_degree()?;
    let full = p.to_f64s();
    let reduced = &full[zeros..];
    let lead = *reduced.last().expect("nonzero polynomial");
    let monic: Vec<f64> = reduced.iter().map(|c| c / lead).collect();

    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let converged = if monic.len() > 1 {
        aberth(&monic)
    } else {
        Ok(Vec::new())
    };
    let (found, failure) = match converged {
        Ok(z) => (z, None),
        Err((iterations, z)) => (z, Some(iterations)),
    };
    roots.extend(
        found
            .into_iter()
            .map(|z| snap_real(reduced, polish(reduced, z))),
    );
    sort_roots(&mut roots);
    let residuals: Vec<f64> = roots
        .iter()
        .map(|&z| {
            if z == Complex64::new(0.0, 0.0) {
                0.0
            } else {
                relative_residual(&full, z)
            }
        })
        .collect();
    let set = RootSet {
        roots,
        residuals,
        degree,
    };
    let unconverged = failure.or_else(|| (set.max_residual() > tol).then_some(MAX_ITERATIONS));
    match unconverged {
        Some(iterations) => Err(Error::Convergence {
            iterations,
            partial: Box::new(set),
        }),
        None => Ok(set),
    }
}

// A real polynomial's real roots come back with imaginary noise far below
// any meaningful scale; drop it when the real axis fits no worse.
fn snap_real(coeffs: &[f64], z: Complex64) -> Complex64 {
    if z.im == 0.0 || z.im.abs() > 1e-12 * z.re.abs().max(1.0) {
        return z;
    }
    let on_axis = Complex64::new(z.re, 0.0);
    if relative_residual(coeffs, on_axis) <= relative_residual(coeffs, z).max(f64::EPSILON) {
        on_axis
    } else {
        z
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealClassification {
    pub real_nonzero_count: usize,
    /// Real parts of the nonzero real roots, ascending.
    pub real_roots: Vec<f64>,
}

/// A root is real when `|im| <= eps * max(1, |re|)`; it is zero when
/// `|z| <= eps`, and zeros are not counted.
pub fn classify_real(rs: &RootSet, eps: f64) -> RealClassification {
    let mut real_roots: Vec<f64> = rs
        .roots
        .iter()
        .filter(|z| z.norm() > eps && z.im.abs() <= eps * z.re.abs().max(1.0))
        .map(|z| z.re)
        .collect();
    real_roots.sort_by(f64::total_cmp);
    RealClassification {
        real_nonzero_count: real_roots.len(),
        real_roots,
    }
}

/// One level of the iterated corona `G ∘ S, (G ∘ S) ∘ S, ...` with
/// `S = S_{k,n-k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoronaLevel {
    pub depth: usize,
    /// Order of the graph the star copies hang off at this level.
    pub host_order: usize,
    /// `D` at this level is the block polynomial to this power.
    pub exponent: usize,
    pub roots: RootSet,
}

/// The per-vertex block `x(1+x)^n + D(S_{k,n-k})` of `D(G ∘ S_{k,n-k})`.
pub fn corona_block(k: usize, n: usize) -> Result<Polynomial> {
    Ok(d_corona(1, n, &d_kstar(k, n)?))
}

/// Roots of `D` along the corona sequence over `base`, for depths
/// `1..=depth`. Each level's polynomial is `block^host_order`, so its roots
/// are the block's roots with multiplicity scaled by `host_order`.
pub fn corona_sequence_roots(
    base: &Graph,
    k: usize,
    n: usize,
    depth: usize,
    tol: f64,
) -> Result<Vec<CoronaLevel>> {
    if base.n() == 0 {
        return Err(Error::SpecDomain(
            "corona needs a nonempty base graph".into(),
        ));
    }
    let block = corona_block(k, n)?;
    let block_roots = find_roots(&block, tol)?;
    let mut levels = Vec::with_capacity(depth);
    let mut host_order = base.n();
    for level in 1..=depth {
        let mut roots = Vec::with_capacity(block_roots.roots.len() * host_order);
        let mut residuals = Vec::with_capacity(roots.capacity());
        for (z, r) in block_roots.roots.iter().zip(&block_roots.residuals) {
            roots.extend(std::iter::repeat_n(*z, host_order));
            residuals.extend(std::iter::repeat_n(*r, host_order));
        }
        levels.push(CoronaLevel {
            depth: level,
            host_order,
            exponent: host_order,
            roots: RootSet {
                roots,
                residuals,
                degree: block_roots.degree * host_order,
            },
        });
        host_order *= n + 1;
    }
    Ok(levels)
}

/// Roots of `D(S_{k,n-k})` for one `n` of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub roots: RootSet,
}

/// Roots of `D(S_{k,n-k}, x)` for every `n` in `nmin..=nmax`, from the
/// closed form.
pub fn kstar_sweep(k: usize, nmin: usize, nmax: usize, tol: f64) -> Result<Vec<SweepRow>> {
    if nmin <= k || nmin > nmax {
        return Err(Error::SpecDomain(format!(
            "sweep needs k < nmin <= nmax, got k={k} nmin={nmin} nmax={nmax}"
        )));
    }
    let ns: Vec<usize> = (nmin..=nmax).collect();
    par::map(&ns, |&n| {
        let roots = find_roots(&d_kstar(k, n)?, tol)?;
        Ok(SweepRow { n, roots })
    })
    .into_iter()
    .collect()
}

/// The scatter for `S_{4,n-4}`, `5 <= n <= 44` by default.
pub fn figure2_sweep(nmin: usize, nmax: usize, tol: f64) -> Result<Vec<SweepRow>> {
    kstar_sweep(4, nmin, nmax, tol)
}

/// 17 significant digits, scientific notation, no negative zero.
pub fn format_float(v: f64) -> String {
    format!("{:.16e}", clean_zero(v))
}

/// CSV with header `n,re,im` and one row per root.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("n,re,im\n");
    for row in rows {
        for z in &row.roots.roots {
            out.push_str(&format!(
                "{},{},{}\n",
                row.n,
                format_float(z.re),
                format_float(z.im)
            ));
        }
    }
    out
}
