//! Cubic forms on CP³.

mod nullspace;
mod singular;
pub mod text;

use nalgebra::Matrix4;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{norm, normalized, C64, ZERO};
use crate::proj::{ProjLine, ProjPoint, ProjTransform};

pub use nullspace::{nullspace_cubics, Constraint, LINE_SAMPLE_PARAMS};
pub use singular::{certify_nonsingular, find_singular_point, SingularSearch};

/// Exponent vectors of the 20 cubic monomials, graded-lex with z1 > z2 > z3 > z4.
pub const MONOMIALS: [[u8; 4]; 20] = [
    [3, 0, 0, 0],
    [2, 1, 0, 0],
    [2, 0, 1, 0],
    [2, 0, 0, 1],
    [1, 2, 0, 0],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [1, 0, 2, 0],
    [1, 0, 1, 1],
    [1, 0, 0, 2],
    [0, 3, 0, 0],
    [0, 2, 1, 0],
    [0, 2, 0, 1],
    [0, 1, 2, 0],
    [0, 1, 1, 1],
    [0, 1, 0, 2],
    [0, 0, 3, 0],
    [0, 0, 2, 1],
    [0, 0, 1, 2],
    [0, 0, 0, 3],
];

/// Index into [`MONOMIALS`] of `z_i z_j z_k` (0-based variable indices, any order).
pub fn monomial_index(i: usize, j: usize, k: usize) -> usize {
    let mut e = [0u8; 4];
    e[i] += 1;
    e[j] += 1;
    e[k] += 1;
    MONOMIALS.iter().position(|m| *m == e).expect("degree-3 exponent")
}

/// Index of the monomial with the given exponent vector.
pub fn exponent_index(e: [u8; 4]) -> Option<usize> {
    MONOMIALS.iter().position(|m| *m == e)
}

/// Value of every cubic monomial at `z`, in [`MONOMIALS`] order.
pub fn monomial_values(z: &[C64; 4]) -> [C64; 20] {
    MONOMIALS.map(|e| {
        let mut v = C64::new(1.0, 0.0);
        for (k, &p) in e.iter().enumerate() {
            for _ in 0..p {
                v *= z[k];
            }
        }
        v
    })
}

/// A cubic surface, given by the 20 coefficients of its defining form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicSurface {
    coeffs: [C64; 20],
}

/// A binary cubic `c0 λ³ + c1 λ²μ + c2 λμ² + c3 μ³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryCubic(pub [C64; 4]);

impl BinaryCubic {
    pub fn eval(&self, lambda: C64, mu: C64) -> C64 {
        let c = &self.0;
        c[0] * lambda * lambda * lambda + c[1] * lambda * lambda * mu + c[2] * lambda * mu * mu + c[3] * mu * mu * mu
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Symmetric trilinear form `T` with `C(z) = Σ T_ijk z_i z_j z_k`.
#[derive(Debug, Clone)]
pub(crate) struct Polarization {
    pub t: [[[C64; 4]; 4]; 4],
}

impl Polarization {
    pub fn of(coeffs: &[C64; 20]) -> Self {
        let mut t = [[[ZERO; 4]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let idx = monomial_index(i, j, k);
                    let e = MONOMIALS[idx];
                    // number of ordered triples giving this monomial
                    let fact = |n: u8| -> f64 { (1..=n).map(f64::from).product() };
                    let count = 6.0 / (fact(e[0]) * fact(e[1]) * fact(e[2]) * fact(e[3]));
                    t[i][j][k] = coeffs[idx] / count;
                }
            }
        }
        Polarization { t }
    }

    /// `T(x, y, ·)` as a covector.
    pub fn bilinear(&self, x: &[C64; 4], y: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for i in 0..4 {
            for j in 0..4 {
                let w = x[i] * y[j];
                if w == ZERO {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.t[i][j][k];
                }
            }
        }
        out
    }

    /// Binary cubic `C(λx + μy)`.
    pub fn restrict(&self, x: &[C64; 4], y: &[C64; 4]) -> BinaryCubic {
        let bxx = self.bilinear(x, x);
        let byy = self.bilinear(y, y);
        let dot = |a: &[C64; 4], b: &[C64; 4]| -> C64 { (0..4).map(|k| a[k] * b[k]).sum() };
        BinaryCubic([dot(&bxx, x), 3.0 * dot(&bxx, y), 3.0 * dot(&byy, x), dot(&byy, y)])
    }
}

impl CubicSurface {
    pub fn new(coeffs: [C64; 20]) -> Result<Self> {
        if norm(&coeffs) == 0.0 || coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("cubic form must have a nonzero finite coefficient".into()));
        }
        Ok(CubicSurface { coeffs })
    }

    /// Builds a cubic from `(coefficient, [i, j, k])` terms with 1-based
    /// variable indices; repeated monomials accumulate.
    pub fn from_terms(terms: &[(C64, [usize; 3])]) -> Result<Self> {
        let mut c = [ZERO; 20];
        for (coef, [i, j, k]) in terms {
            c[monomial_index(i - 1, j - 1, k - 1)] += coef;
        }
        Self::new(c)
    }

    /// `z1³ + z2³ + z3³ + z4³`.
    pub fn fermat() -> Self {
        let one = C64::new(1.0, 0.0);
        Self::from_terms(&[(one, [1, 1, 1]), (one, [2, 2, 2]), (one, [3, 3, 3]), (one, [4, 4, 4])]).unwrap()
    }

    /// `z1 z4² + z2 z3² − z3 z2² − z4 z1²`, the most symmetric cubic with five
    /// standard twistor fibres.
    pub fn symmetric_five_fibre() -> Self {
        let one = C64::new(1.0, 0.0);
        Self::from_terms(&[(one, [1, 4, 4]), (one, [2, 3, 3]), (-one, [3, 2, 2]), (-one, [4, 1, 1])]).unwrap()
    }

    /// Clebsch diagonal surface `z1³ + z2³ + z3³ + z4³ = (z1 + z2 + z3 + z4)³`.
    pub fn clebsch() -> Self {
        let mut c = [ZERO; 20];
        for (idx, e) in MONOMIALS.iter().enumerate() {
            // multinomial coefficient of (z1+z2+z3+z4)^3
            let fact = |n: u8| -> f64 { (1..=n).map(f64::from).product() };
            let multinom = 6.0 / (fact(e[0]) * fact(e[1]) * fact(e[2]) * fact(e[3]));
            c[idx] = C64::new(-multinom, 0.0);
            if e.contains(&3) {
                c[idx] += 1.0;
            }
        }
        Self::new(c).unwrap()
    }

    pub fn coeffs(&self) -> &[C64; 20] {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: [u8; 4]) -> C64 {
        exponent_index(exponent).map(|i| self.coeffs[i]).unwrap_or(ZERO)
    }

    /// Unit-norm coefficient vector.
    pub fn normalized(&self) -> CubicSurface {
        CubicSurface { coeffs: normalized(&self.coeffs).expect("nonzero") }
    }

    pub fn scaled(&self, s: C64) -> Result<CubicSurface> {
        CubicSurface::new(self.coeffs.map(|c| c * s))
    }

    /// `self + t·other`.
    pub fn add_scaled(&self, other: &CubicSurface, t: C64) -> Result<CubicSurface> {
        CubicSurface::new(std::array::from_fn(|i| self.coeffs[i] + t * other.coeffs[i]))
    }

    /// Equality of the surfaces (coefficient vectors proportional).
    pub fn same_surface(&self, other: &CubicSurface, tol: f64) -> bool {
        crate::linalg::chordal_distance(&self.coeffs, &other.coeffs) < tol
    }

    pub(crate) fn polarization(&self) -> Polarization {
        Polarization::of(&self.coeffs)
    }

    /// The pulled-back form `z ↦ C(T z)`; its zero set is `T⁻¹(surface)`.
    pub fn pullback(&self, t: &ProjTransform) -> CubicSurface {
        pullback_coeffs(&self.coeffs, t.matrix())
    }
}

fn pullback_coeffs(coeffs: &[C64; 20], m: &Matrix4<C64>) -> CubicSurface {
    let mut out = [ZERO; 20];
    for (idx, e) in MONOMIALS.iter().enumerate() {
        let c = coeffs[idx];
        if c == ZERO {
            continue;
        }
        let vars: Vec<usize> = (0..4).flat_map(|k| std::iter::repeat_n(k, e[k] as usize)).collect();
        let (i, j, k) = (vars[0], vars[1], vars[2]);
        for a in 0..4 {
            let ca = c * m[(i, a)];
            if ca == ZERO {
                continue;
            }
            for b in 0..4 {
                let cb = ca * m[(j, b)];
                if cb == ZERO {
                    continue;
                }
                for d in 0..4 {
                    out[monomial_index(a, b, d)] += cb * m[(k, d)];
                }
            }
        }
    }
    CubicSurface { coeffs: out }
}

/// Value of the form at the unit representative of `p`.
pub fn evaluate(c: &CubicSurface, p: &ProjPoint) -> C64 {
    let v = monomial_values(p.coords());
    (0..20).map(|i| c.coeffs[i] * v[i]).sum()
}

/// Partial derivatives `∂C/∂z_i` at the unit representative of `p`.
pub fn gradient(c: &CubicSurface, p: &ProjPoint) -> [C64; 4] {
    gradient_at(c, p.coords())
}

pub(crate) fn gradient_at(c: &CubicSurface, z: &[C64; 4]) -> [C64; 4] {
    let mut g = [ZERO; 4];
    for (idx, e) in MONOMIALS.iter().enumerate() {
        let coef = c.coeffs[idx];
        if coef == ZERO {
            continue;
        }
        for v in 0..4 {
            if e[v] == 0 {
                continue;
            }
            let mut term = coef * f64::from(e[v]);
            for (k, &p) in e.iter().enumerate() {
                let p = if k == v { p - 1 } else { p };
                for _ in 0..p {
                    term *= z[k];
                }
            }
            g[v] += term;
        }
    }
    g
}

/// `C(λa + μb)` in the stored span basis `(a, b)` of `L`.
pub fn restrict_to_line(c: &CubicSurface, l: &ProjLine) -> BinaryCubic {
    let [a, b] = l.span();
    c.polarization().restrict(a.coords(), b.coords())
}

/// Threshold on the restricted coefficients (unit form, orthonormal basis).
pub const CONTAINMENT_TOL: f64 = 1e-9;

/// Largest restricted coefficient of the unit-normalized form in an
/// orthonormal basis of `L`. Zero exactly when `L` lies on the surface.
pub fn containment_residual(c: &CubicSurface, l: &ProjLine) -> f64 {
    let (u, v) = l.orthonormal_basis();
    c.normalized().polarization().restrict(&u, &v).max_abs()
}

pub fn contains_line(c: &CubicSurface, l: &ProjLine) -> bool {
    containment_residual(c, l) < CONTAINMENT_TOL
}

impl Serialize for CubicSurface {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CubicSurface {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = <[C64; 20]>::deserialize(d)?;
        CubicSurface::new(coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::line_from_points;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn evaluation_examples() {
        let f = CubicSurface::fermat();
        assert!(evaluate(&f, &ProjPoint::real([1.0, -1.0, 0.0, 0.0])).norm() < 1e-15);
        assert!((evaluate(&f, &ProjPoint::real([1.0, 0.0, 0.0, 0.0])) - 1.0).norm() < 1e-15);
        let s = CubicSurface::symmetric_five_fibre();
        assert!(evaluate(&s, &ProjPoint::real([0.0, 1.0, 0.0, 1.0])).norm() < 1e-15);
        let g = gradient(&f, &ProjPoint::real([1.0, 0.0, 0.0, 0.0]));
        assert!((g[0] - 3.0).norm() < 1e-15 && g[1..].iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn restriction_examples() {
        let e = |i: usize| {
            let mut x = [0.0; 4];
            x[i] = 1.0;
            ProjPoint::real(x)
        };
        let f = CubicSurface::fermat();
        let l = line_from_points(&e(0), &e(1)).unwrap();
        let r = restrict_to_line(&f, &l);
        assert_eq!(r.0.map(|z| (z.re * 1e12).round() / 1e12), [1.0, 0.0, 0.0, 1.0].map(|x| c(x, 0.0)).map(|z| z.re));
        assert!(!contains_line(&f, &l));
        let s = CubicSurface::symmetric_five_fibre();
        let b5 = line_from_points(&e(1), &e(3)).unwrap();
        assert!(restrict_to_line(&s, &b5).max_abs() == 0.0);
        assert!(contains_line(&s, &b5));
        // {z1 + z2 = 0, z3 + z4 = 0}
        let fl =
            line_from_points(&ProjPoint::real([1.0, -1.0, 0.0, 0.0]), &ProjPoint::real([0.0, 0.0, 1.0, -1.0])).unwrap();
        assert!(contains_line(&f, &fl));
    }

    #[test]
    fn clebsch_coefficients() {
        let cl = CubicSurface::clebsch();
        assert_eq!(cl.coeff([3, 0, 0, 0]), c(0.0, 0.0));
        assert_eq!(cl.coeff([2, 1, 0, 0]), c(-3.0, 0.0));
        assert_eq!(cl.coeff([1, 1, 1, 0]), c(-6.0, 0.0));
    }

    #[test]
    fn pullback_by_diagonal() {
        let s = CubicSurface::symmetric_five_fibre();
        let t = ProjTransform::phi(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        let p = s.pullback(&t);
        // z1²z4 picks up u²v = 4, z2²z3 picks up v²u = 2
        assert!((p.coeff([2, 0, 0, 1]) + 4.0).norm() < 1e-14);
        assert!((p.coeff([0, 2, 1, 0]) + 2.0).norm() < 1e-14);
    }

    #[test]
    fn zero_form_rejected() {
        assert!(CubicSurface::new([ZERO; 20]).is_err());
    }
}
