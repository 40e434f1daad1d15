//! Small dense complex linear-algebra helpers built on `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Euclidean norm of a complex slice.
pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian inner product `<a, b> = Σ conj(a_i) b_i`.
pub fn hdot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Returns `v / |v|`, or `None` for the zero vector.
pub fn normalized<const N: usize>(v: &[C64; N]) -> Option<[C64; N]> {
    let n = norm(v);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    let mut out = *v;
    for z in out.iter_mut() {
        *z /= n;
    }
    Some(out)
}

/// Chordal distance between the complex lines spanned by two vectors: the
/// sine of the angle between them. Scale- and phase-free.
pub fn chordal_distance(u: &[C64], v: &[C64]) -> f64 {
    let nu = norm(u);
    let nv = norm(v);
    if nu == 0.0 || nv == 0.0 {
        return 1.0;
    }
    // residual of v/|v| after projecting onto u/|u|; avoids sqrt(1 - c²) cancellation
    let c = hdot(u, v) / (nu * nv);
    u.iter().zip(v).map(|(a, b)| (b / nv - c * a / nu).norm_sqr()).sum::<f64>().sqrt().min(1.0)
}

/// Orthonormal basis of the kernel of `a` (as a map `C^n -> C^m`).
///
/// Singular values below `rel_tol * sigma_max` count as zero. Rows are padded
/// with zeros when `m < n` so that the full right-singular basis is available.
pub fn null_space(a: &DMatrix<C64>, rel_tol: f64) -> Vec<DVector<C64>> {
    let (m, n) = a.shape();
    let padded;
    let work = if m < n {
        let mut p = DMatrix::<C64>::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        padded = p;
        &padded
    } else {
        a
    };
    let svd = work.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = rel_tol * sigma_max;
    let mut out = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s <= cutoff || sigma_max == 0.0 {
            out.push(v_t.row(i).adjoint());
        }
    }
    out
}

/// Numerical rank with the same relative cutoff convention as [`null_space`].
pub fn rank(a: &DMatrix<C64>, rel_tol: f64) -> usize {
    let sv = a.clone().singular_values();
    let sigma_max = sv.iter().cloned().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > rel_tol * sigma_max).count()
}

/// Modified Gram–Schmidt. Vectors that are numerically dependent on the
/// previous ones are dropped.
pub fn orthonormalize(vs: &[DVector<C64>]) -> Vec<DVector<C64>> {
    let mut out: Vec<DVector<C64>> = Vec::with_capacity(vs.len());
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = q.dotc(&w);
                w -= q * c;
            }
        }
        let n = w.norm();
        if n > 1e-12 * v.norm().max(f64::MIN_POSITIVE) {
            out.push(w / C64::new(n, 0.0));
        }
    }
    out
}

/// Largest sine of the principal angles between two subspaces of equal
/// dimension. Returns 1.0 when the dimensions differ.
pub fn subspace_distance(a: &[DVector<C64>], b: &[DVector<C64>]) -> f64 {
    let qa = orthonormalize(a);
    let qb = orthonormalize(b);
    if qa.len() != qb.len() || qa.is_empty() {
        return 1.0;
    }
    let n = qa[0].len();
    let k = qa.len();
    let mut resid = DMatrix::<C64>::zeros(n, k);
    for (j, v) in qb.iter().enumerate() {
        let mut w = v.clone();
        for q in &qa {
            let c = q.dotc(&w);
            w -= q * c;
        }
        resid.set_column(j, &w);
    }
    resid.singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Sine of the angle between `v` and the span of `basis`.
pub fn distance_to_span(basis: &[DVector<C64>], v: &DVector<C64>) -> f64 {
    let n = v.norm();
    if n == 0.0 {
        return 0.0;
    }
    let q = orthonormalize(basis);
    let mut w = v / C64::new(n, 0.0);
    for _ in 0..2 {
        for q in &q {
            let c = q.dotc(&w);
            w -= q * c;
        }
    }
    w.norm()
}

/// Roots `(λ:μ)` of the binary quadratic `a λ² + b λμ + c μ²`.
///
/// Returns `None` when the form vanishes identically or has a double root
/// (relative discriminant below `tol`).
pub fn binary_quadratic_roots(a: C64, b: C64, c: C64, tol: f64) -> Option<[(C64, C64); 2]> {
    let scale = a.norm().max(b.norm()).max(c.norm());
    if scale == 0.0 {
        return None;
    }
    let (a, b, c) = (a / scale, b / scale, c / scale);
    let disc = b * b - 4.0 * a * c;
    if disc.norm() < tol {
        return None;
    }
    let sq = disc.sqrt();
    // Stable pair: q = -(b + sign·sqrt(disc))/2 with the sign avoiding cancellation.
    let q = if (b.conj() * sq).re >= 0.0 { -(b + sq) / 2.0 } else { -(b - sq) / 2.0 };
    // Roots in t = λ/μ are q/a and c/q; homogeneous forms avoid division by 0.
    // a t² + b t + c: roots (q : a) and (c : q).
    Some([(q, a), (c, q)])
}
