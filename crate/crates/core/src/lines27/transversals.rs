use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{binary_quadratic_roots, null_space, C64, ONE, ZERO};
use crate::proj::{lines_meet, ProjLine, ProjPoint};

const QUAD_MONOMIALS: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

/// Symmetric matrix of a quadratic form given by coefficients on `QUAD_MONOMIALS`.
fn quadric_matrix(q: &[C64]) -> [[C64; 4]; 4] {
    let mut m = [[ZERO; 4]; 4];
    for (k, &(i, j)) in QUAD_MONOMIALS.iter().enumerate() {
        if i == j {
            m[i][i] = q[k];
        } else {
            m[i][j] = q[k] / 2.0;
            m[j][i] = q[k] / 2.0;
        }
    }
    m
}

fn bilinear(m: &[[C64; 4]; 4], x: &[C64; 4], y: &[C64; 4]) -> C64 {
    let mut s = ZERO;
    for i in 0..4 {
        for j in 0..4 {
            s += x[i] * m[i][j] * y[j];
        }
    }
    s
}

/// The plane spanned by a point and a line, as a linear form.
fn plane_through(p: &ProjPoint, l: &ProjLine) -> Result<[C64; 4]> {
    let [a, b] = l.span();
    let rows = [*p.coords(), *a.coords(), *b.coords()].concat();
    let ns = null_space(&DMatrix::from_row_slice(3, 4, &rows), 1e-10);
    if ns.len() != 1 {
        return Err(Error::DegenerateConfiguration("point lies on the line".into()));
    }
    Ok(std::array::from_fn(|k| ns[0][k]))
}

/// The two lines meeting four pairwise skew lines.
///
/// The quadric through the first three lines meets the fourth in two points;
/// through each passes one line of the other ruling, obtained as the
/// intersection of the planes it spans with `l1` and with `l2`.
pub fn transversals_of_four(l: [&ProjLine; 4]) -> Result<[ProjLine; 2]> {
    let params = [(ONE, ZERO), (ZERO, ONE), (ONE, ONE)];
    let mut rows = Vec::with_capacity(90);
    for line in &l[..3] {
        for &(lam, mu) in &params {
            let p = line.point_at(lam, mu)?;
            let z = p.coords();
            rows.extend(QUAD_MONOMIALS.iter().map(|&(i, j)| z[i] * z[j]));
        }
    }
    let ns = null_space(&DMatrix::from_row_slice(9, 10, &rows), 1e-9);
    if ns.len() != 1 {
        return Err(Error::DegenerateConfiguration(format!("{} independent quadrics through three lines", ns.len())));
    }
    let q: Vec<C64> = ns[0].iter().copied().collect();
    let m = quadric_matrix(&q);
    let (u, v) = l[3].orthonormal_basis();
    let roots = binary_quadratic_roots(bilinear(&m, &u, &u), 2.0 * bilinear(&m, &u, &v), bilinear(&m, &v, &v), 1e-10)
        .ok_or_else(|| Error::DegenerateConfiguration("fourth line is tangent to the quadric".into()))?;
    let mut out = Vec::with_capacity(2);
    for (lam, mu) in roots {
        let p = ProjPoint::new(std::array::from_fn(|k| lam * u[k] + mu * v[k]))?;
        let n1 = plane_through(&p, l[0])?;
        let n2 = plane_through(&p, l[1])?;
        let t = ProjLine::from_planes(n1, n2)?;
        if !l.iter().all(|x| lines_meet(x, &t)) {
            return Err(Error::DegenerateConfiguration("transversal misses an input line".into()));
        }
        out.push(t);
    }
    Ok([out[0], out[1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::{line_equal, line_from_points, twistor_fibre_through, TwistorStructure};

    #[test]
    fn twistor_fibres_through_coordinate_lines() {
        // Fibres through [0, t, 0, 1] meet {z1=z3=0} and {z2=z4=0}.
        let j = TwistorStructure::standard();
        let fibres: Vec<ProjLine> = [0.0, 1.0, 2.0, -3.0]
            .iter()
            .enumerate()
            .map(|(k, &t)| {
                let im = if k == 3 { 1.5 } else { 0.0 };
                twistor_fibre_through(&j, &ProjPoint::new([ZERO, C64::new(t, im), ZERO, ONE]).unwrap())
            })
            .collect();
        let [t1, t2] = transversals_of_four([&fibres[0], &fibres[1], &fibres[2], &fibres[3]]).unwrap();
        let b5 =
            line_from_points(&ProjPoint::real([0.0, 1.0, 0.0, 0.0]), &ProjPoint::real([0.0, 0.0, 0.0, 1.0])).unwrap();
        let b6 =
            line_from_points(&ProjPoint::real([1.0, 0.0, 0.0, 0.0]), &ProjPoint::real([0.0, 0.0, 1.0, 0.0])).unwrap();
        let got = (line_equal(&t1, &b5) && line_equal(&t2, &b6)) || (line_equal(&t1, &b6) && line_equal(&t2, &b5));
        assert!(got);
    }
}
