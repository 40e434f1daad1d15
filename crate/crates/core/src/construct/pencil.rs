use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{check_invariants_generic, CrossRatioInvariants, SevenLineConfig};
use crate::cubic::{containment_residual, exponent_index, monomial_index, monomial_values, CubicSurface};
use crate::cubic::{nullspace_cubics, Constraint};
use crate::error::{Error, Result};
use crate::linalg::{distance_to_span, norm, null_space, subspace_distance, C64, ZERO};
use crate::proj::{intersection_point, ExtComplex, ProjLine, ProjPoint};

/// Monomials of the first generator: `z₂²z₃, z₁z₂z₄, z₂z₃z₄, z₁z₄²` (1-based).
pub const C1_MONOMIALS: [[usize; 3]; 4] = [[2, 2, 3], [1, 2, 4], [2, 3, 4], [1, 4, 4]];
/// Monomials of the second generator: `z₂z₃², z₁z₂z₃, z₁z₃z₄, z₁²z₄`.
pub const C2_MONOMIALS: [[usize; 3]; 4] = [[2, 3, 3], [1, 2, 3], [1, 3, 4], [1, 1, 4]];

/// Two generators of the cubics through a seven-line configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pencil {
    pub c1: CubicSurface,
    pub c2: CubicSurface,
}

impl Pencil {
    /// `C₁ + t·C₂`, with `t = ∞` giving `C₂`.
    pub fn member(&self, t: ExtComplex) -> CubicSurface {
        match t {
            ExtComplex::Infinity => self.c2,
            ExtComplex::Finite(t) => self.c1.add_scaled(&self.c2, t).expect("pencil generators are independent"),
        }
    }

    /// Largest principal-angle sine between the coefficient spans.
    pub fn span_distance(&self, other: &Pencil) -> f64 {
        subspace_distance(&self.basis(), &other.basis())
    }

    /// Distance from `c` to the span, relative to `|c|`.
    pub fn distance_to(&self, c: &CubicSurface) -> f64 {
        distance_to_span(&self.basis(), &DVector::from_column_slice(c.coeffs()))
    }

    /// Parameter `t` with `c ∝ C₁ + t·C₂`, if `c` lies in the pencil.
    pub fn locate(&self, c: &CubicSurface, tol: f64) -> Option<ExtComplex> {
        if self.distance_to(c) > tol {
            return None;
        }
        let a = DMatrix::from_fn(20, 2, |r, k| if k == 0 { self.c1.coeffs()[r] } else { self.c2.coeffs()[r] });
        let b = DVector::from_column_slice(c.coeffs());
        let x = a.svd(true, true).solve(&b, 1e-14).ok()?;
        Some(ExtComplex::from_homogeneous(x[1], x[0]))
    }

    /// Worst containment residual of the seven lines over both generators.
    pub fn max_residual(&self, lines: &[ProjLine]) -> f64 {
        lines
            .iter()
            .flat_map(|l| [containment_residual(&self.c1, l), containment_residual(&self.c2, l)])
            .fold(0.0, f64::max)
    }

    fn basis(&self) -> [DVector<C64>; 2] {
        [DVector::from_column_slice(self.c1.coeffs()), DVector::from_column_slice(self.c2.coeffs())]
    }
}

fn from_four(monos: &[[usize; 3]; 4], values: [C64; 4]) -> Result<CubicSurface> {
    let mut c = [ZERO; 20];
    for (m, v) in monos.iter().zip(values) {
        c[monomial_index(m[0] - 1, m[1] - 1, m[2] - 1)] = v;
    }
    if norm(&c) < 1e-12 {
        return Err(Error::DegenerateInvariants);
    }
    CubicSurface::new(c)
}

/// Closed-form generators in terms of the cross-ratio invariants.
///
/// The closed forms below are written with `a` for the `b₆`-side and `b` for
/// the `b₅`-side value of `a₃` (primes marking `a₄`), in a frame where `a₁`
/// lies over `∞`. They are evaluated at `(a, b, a′, b′) = (α′, α, β′, β)` and
/// pulled back by `(z₁, z₂) ↔ (z₃, z₄)`, which reverses each coefficient list
/// against the monomial lists.
pub fn pencil_explicit(inv: &CrossRatioInvariants) -> Result<Pencil> {
    check_invariants_generic(inv.alpha, inv.beta).map_err(|_| Error::CoincidentPoints)?;
    let (a, b, ap, bp) = (inv.alpha_prime, inv.alpha, inv.beta_prime, inv.beta);
    let mut v1 = [
        -a * b * bp + b * b * bp + b * ap * bp - b * b * ap * bp - b * bp * bp + a * b * bp * bp,
        a * b * ap - b * b * ap - a * ap * bp + b * b * ap * bp + a * bp * bp - a * b * bp * bp,
        -b * ap + b * b * ap + a * bp - b * b * bp - a * bp * bp + b * bp * bp,
        b * ap - a * b * ap - a * bp + a * b * bp + a * ap * bp - b * ap * bp,
    ];
    let mut v2 = [
        -b * ap + a * b * ap + a * bp - a * b * bp - a * ap * bp + b * ap * bp,
        b * ap * ap - a * b * ap * ap - a * a * bp + a * b * bp + a * a * ap * bp - b * ap * bp,
        -a * a * ap + b * ap + a * ap * ap - b * ap * ap - a * bp + a * a * bp,
        a * a * ap - a * b * ap - a * ap * ap + a * b * ap * ap + a * ap * bp - a * a * ap * bp,
    ];
    v1.reverse();
    v2.reverse();
    Ok(Pencil { c1: from_four(&C1_MONOMIALS, v1)?, c2: from_four(&C2_MONOMIALS, v2)? })
}

/// Ruled ansatz `(p z₁ + q z₃) z₂² + … + (u z₁ + v z₃) z₄²` and its mirror
/// with `(z₁, z₃) ↔ (z₂, z₄)`.
const RULED: [[[usize; 3]; 6]; 2] = [
    [[1, 2, 2], [3, 2, 2], [1, 2, 4], [3, 2, 4], [1, 4, 4], [3, 4, 4]],
    [[2, 1, 1], [4, 1, 1], [2, 1, 3], [4, 1, 3], [2, 3, 3], [4, 3, 3]],
];

fn ruled_generator(monos: &[[usize; 3]; 6], points: &[ProjPoint]) -> Result<CubicSurface> {
    let idx: Vec<usize> = monos.iter().map(|m| monomial_index(m[0] - 1, m[1] - 1, m[2] - 1)).collect();
    let rows: Vec<C64> = points
        .iter()
        .flat_map(|p| {
            let v = monomial_values(p.coords());
            idx.iter().map(move |&i| v[i]).collect::<Vec<_>>()
        })
        .collect();
    let ns = null_space(&DMatrix::from_row_slice(points.len(), 6, &rows), 1e-9);
    if ns.len() != 1 {
        return Err(Error::UnexpectedNullspaceDim { dim: ns.len(), expected: 1 });
    }
    let mut c = [ZERO; 20];
    for (k, &i) in idx.iter().enumerate() {
        c[i] = ns[0][k];
    }
    CubicSurface::new(c)
}

/// Cubics through the seven lines by linear algebra.
///
/// In the standard frame a ruled cubic of the ansatz form contains `b₅` and
/// `b₆` automatically and a transversal as soon as it contains one point of
/// it off `b₅ ∪ b₆`, so each generator solves a 5×6 system. Otherwise all
/// cubics vanishing at four points of each line are computed.
pub fn pencil_nullspace(cfg: &SevenLineConfig) -> Result<Pencil> {
    if cfg.is_standard_frame() {
        let mut pts = Vec::with_capacity(5);
        for t in cfg.transversals() {
            let p = intersection_point(&t, &cfg.b5)?;
            let q = intersection_point(&t, &cfg.b6)?;
            pts.push(ProjPoint::new(std::array::from_fn(|k| p.coords()[k] + q.coords()[k]))?);
        }
        return Ok(Pencil { c1: ruled_generator(&RULED[0], &pts)?, c2: ruled_generator(&RULED[1], &pts)? });
    }
    let constraints: Vec<Constraint> = cfg.all_lines().iter().map(|l| Constraint::Line(*l)).collect();
    let ns = match nullspace_cubics(&constraints) {
        Ok(ns) => ns,
        Err(Error::EmptyNullspace) => Vec::new(),
        Err(e) => return Err(e),
    };
    if ns.len() != 2 {
        return Err(Error::UnexpectedNullspaceDim { dim: ns.len(), expected: 2 });
    }
    Ok(Pencil { c1: ns[0], c2: ns[1] })
}

fn coefficient_ratio(c: &CubicSurface, num: [u8; 4], den: [u8; 4]) -> Result<f64> {
    let scale = norm(c.coeffs());
    let m = c.coeffs()[exponent_index(num).expect("cubic monomial")];
    let n = c.coeffs()[exponent_index(den).expect("cubic monomial")];
    if m.norm() < 1e-12 * scale || n.norm() < 1e-12 * scale {
        return Err(Error::RuledDegenerate);
    }
    Ok((m / n).norm())
}

/// `ξ = |M/N|` with `M` the coefficient of `z₁²z₄` and `N` that of `z₂²z₃`.
/// Under the pullback by `φ(u, v)` it scales by `|u/v|`.
pub fn xi_invariant(c: &CubicSurface) -> Result<f64> {
    coefficient_ratio(c, [2, 0, 0, 1], [0, 2, 1, 0])
}

/// The ratio `|coef(z₁z₄²) / coef(z₂²z₃)|`. Both monomials belong to the first
/// generator, so this value is the same for every member `C₁ + t·C₂`.
pub fn xi_invariant_literal(c: &CubicSurface) -> Result<f64> {
    coefficient_ratio(c, [1, 0, 0, 2], [0, 2, 1, 0])
}
