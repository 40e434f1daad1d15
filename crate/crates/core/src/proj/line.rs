use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::point::{point_equal, ProjPoint};
use super::sphere::cross_ratio_homogeneous;
use crate::error::{Error, Result};
use crate::linalg::{chordal_distance, hdot, normalized, null_space, C64, ZERO};

/// Index pairs of the Plücker coordinates, in the order p12, p13, p14, p23, p24, p34.
pub const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Incidence threshold on the Plücker pairing of unit Plücker vectors.
pub const MEET_TOL: f64 = 1e-8;
/// Plücker chordal distance below which two lines are the same line.
pub const LINE_EQ_TOL: f64 = 1e-7;
/// Distance from a point to a line's span below which the point lies on it.
pub const ON_LINE_TOL: f64 = 1e-8;

/// A projective line, i.e. a 2-dimensional subspace of `C^4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjLine {
    span: [ProjPoint; 2],
    plucker: [C64; 6],
}

fn plucker_of(p: &[C64; 4], q: &[C64; 4]) -> [C64; 6] {
    PLUCKER_PAIRS.map(|(i, j)| p[i] * q[j] - p[j] * q[i])
}

/// Bilinear pairing `p12 q34 − p13 q24 + p14 q23 + p23 q14 − p24 q13 + p34 q12`.
/// Vanishes exactly when the two lines meet.
pub fn plucker_pairing(p: &[C64; 6], q: &[C64; 6]) -> C64 {
    p[0] * q[5] - p[1] * q[4] + p[2] * q[3] + p[3] * q[2] - p[4] * q[1] + p[5] * q[0]
}

/// The Klein-quadric relation `p12 p34 − p13 p24 + p14 p23`.
pub fn plucker_relation(p: &[C64; 6]) -> C64 {
    p[0] * p[5] - p[1] * p[4] + p[2] * p[3]
}

impl ProjLine {
    pub fn span(&self) -> &[ProjPoint; 2] {
        &self.span
    }

    pub fn plucker(&self) -> &[C64; 6] {
        &self.plucker
    }

    /// Line through two points of a plane-pair description `{n1·z = n2·z = 0}`.
    pub fn from_planes(n1: [C64; 4], n2: [C64; 4]) -> Result<Self> {
        let a = DMatrix::from_row_slice(2, 4, &[n1, n2].concat());
        let ns = null_space(&a, 1e-10);
        if ns.len() != 2 {
            return Err(Error::DegenerateConfiguration(format!(
                "plane pair cuts out a {}-dimensional space",
                ns.len()
            )));
        }
        let p = ProjPoint::new([ns[0][0], ns[0][1], ns[0][2], ns[0][3]])?;
        let q = ProjPoint::new([ns[1][0], ns[1][1], ns[1][2], ns[1][3]])?;
        line_from_points(&p, &q)
    }

    /// Hermitian-orthonormal basis `(u, v)` of the underlying 2-space, with
    /// `u` parallel to the first span point.
    pub fn orthonormal_basis(&self) -> ([C64; 4], [C64; 4]) {
        let a = *self.span[0].coords();
        let b = *self.span[1].coords();
        let c = hdot(&a, &b);
        let mut w = b;
        for k in 0..4 {
            w[k] -= c * a[k];
        }
        (a, normalized(&w).expect("span points are distinct"))
    }

    /// `λ a + μ b` in the stored span basis.
    pub fn point_at(&self, lambda: C64, mu: C64) -> Result<ProjPoint> {
        let a = self.span[0].coords();
        let b = self.span[1].coords();
        ProjPoint::new(std::array::from_fn(|k| lambda * a[k] + mu * b[k]))
    }

    /// Coordinates of `p` in the orthonormal basis, with the residual of the
    /// orthogonal projection onto the line.
    pub fn orthonormal_coords(&self, p: &ProjPoint) -> ((C64, C64), f64) {
        let (u, v) = self.orthonormal_basis();
        let x = p.coords();
        let l = hdot(&u, x);
        let m = hdot(&v, x);
        let resid: f64 = (0..4).map(|k| (x[k] - l * u[k] - m * v[k]).norm_sqr()).sum::<f64>().sqrt();
        ((l, m), resid)
    }

    /// Distance of the unit representative of `p` from the line's span.
    pub fn residual(&self, p: &ProjPoint) -> f64 {
        self.orthonormal_coords(p).1
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.residual(p) < ON_LINE_TOL
    }

    /// Two independent linear forms vanishing on the line.
    pub fn annihilator(&self) -> [[C64; 4]; 2] {
        let a = DMatrix::from_row_slice(2, 4, &[*self.span[0].coords(), *self.span[1].coords()].concat());
        let ns = null_space(&a, 1e-12);
        debug_assert_eq!(ns.len(), 2);
        [std::array::from_fn(|k| ns[0][k]), std::array::from_fn(|k| ns[1][k])]
    }

    /// Chordal distance between unit Plücker vectors (modulo phase).
    pub fn distance(&self, other: &ProjLine) -> f64 {
        chordal_distance(&self.plucker, &other.plucker)
    }
}

/// The line through two projectively distinct points.
pub fn line_from_points(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if point_equal(p, q) {
        return Err(Error::CoincidentPoints);
    }
    let pl = plucker_of(p.coords(), q.coords());
    let plucker = normalized(&pl).ok_or(Error::CoincidentPoints)?;
    Ok(ProjLine { span: [*p, *q], plucker })
}

/// Projective equality of lines via Plücker chordal distance.
pub fn line_equal(l: &ProjLine, m: &ProjLine) -> bool {
    l.distance(m) < LINE_EQ_TOL
}

/// Modulus of the Plücker pairing of the unit Plücker vectors.
pub fn meet_residual(l: &ProjLine, m: &ProjLine) -> f64 {
    plucker_pairing(&l.plucker, &m.plucker).norm()
}

/// Whether two lines intersect (including `L = M`).
pub fn lines_meet(l: &ProjLine, m: &ProjLine) -> bool {
    meet_residual(l, m) < MEET_TOL
}

/// The common point of two meeting, distinct lines.
pub fn intersection_point(l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    let (u, v) = l.orthonormal_basis();
    let [n1, n2] = m.annihilator();
    let dot = |n: &[C64; 4], x: &[C64; 4]| -> C64 { (0..4).map(|k| n[k] * x[k]).sum() };
    let rows = [[dot(&n1, &u), dot(&n1, &v)], [dot(&n2, &u), dot(&n2, &v)]];
    let r = if rows[0][0].norm_sqr() + rows[0][1].norm_sqr() >= rows[1][0].norm_sqr() + rows[1][1].norm_sqr() {
        rows[0]
    } else {
        rows[1]
    };
    if r[0].norm() + r[1].norm() < 1e-12 {
        return Err(Error::DegenerateConfiguration("lines coincide".into()));
    }
    let (lam, mu) = (r[1], -r[0]);
    let p = ProjPoint::new(std::array::from_fn(|k| lam * u[k] + mu * v[k]))?;
    if m.residual(&p) > 1e-6 {
        return Err(Error::DegenerateConfiguration("lines do not meet".into()));
    }
    Ok(p)
}

/// Cross ratio of four points on `on`, computed in a basis of the line.
pub fn cross_ratio(p: [&ProjPoint; 4], on: &ProjLine) -> Result<C64> {
    let mut hom = [(ZERO, ZERO); 4];
    for (k, pk) in p.iter().enumerate() {
        let (c, resid) = on.orthonormal_coords(pk);
        if resid > ON_LINE_TOL {
            return Err(Error::PointOffLine { residual: resid });
        }
        hom[k] = c;
    }
    cross_ratio_homogeneous(hom)
}

#[derive(Serialize, Deserialize)]
struct LineRepr {
    span: [ProjPoint; 2],
    plucker: [C64; 6],
}

impl Serialize for ProjLine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LineRepr { span: self.span, plucker: self.plucker }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjLine {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LineRepr::deserialize(d)?;
        let line = line_from_points(&raw.span[0], &raw.span[1]).map_err(serde::de::Error::custom)?;
        if chordal_distance(&line.plucker, &raw.plucker) > LINE_EQ_TOL {
            return Err(serde::de::Error::custom("stored Plücker vector does not match the span points"));
        }
        Ok(line)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> ProjPoint {
        let mut x = [0.0; 4];
        x[i] = 1.0;
        ProjPoint::real(x)
    }

    fn coord_line(i: usize, j: usize) -> ProjLine {
        line_from_points(&e(i), &e(j)).unwrap()
    }

    #[test]
    fn coordinate_lines() {
        // {z1 = z3 = 0} is spanned by e2, e4.
        let l = coord_line(1, 3);
        let m = coord_line(0, 2);
        assert!(!lines_meet(&l, &m));
        assert!(lines_meet(&l, &l));
        // {z1=z2=0} and {z1=z3=0} share [0,0,0,1].
        let a = coord_line(2, 3);
        assert!(lines_meet(&a, &l));
        let p = intersection_point(&a, &l).unwrap();
        assert!(point_equal(&p, &e(3)));
    }

    #[test]
    fn coincident_points_rejected() {
        assert_eq!(line_from_points(&e(0), &e(0)).unwrap_err(), Error::CoincidentPoints);
    }

    #[test]
    fn from_planes_matches_points() {
        let one = C64::new(1.0, 0.0);
        let z = ZERO;
        let l = ProjLine::from_planes([one, z, z, z], [z, z, one, z]).unwrap();
        assert!(line_equal(&l, &coord_line(1, 3)));
    }

    #[test]
    fn json_round_trip_validates_plucker() {
        let l = coord_line(0, 1);
        let s = serde_json::to_string(&l).unwrap();
        let back: ProjLine = serde_json::from_str(&s).unwrap();
        assert!(line_equal(&l, &back));
        let other = coord_line(2, 3);
        let bad = format!(
            r#"{{"span":{},"plucker":{}}}"#,
            serde_json::to_string(l.span()).unwrap(),
            serde_json::to_string(other.plucker()).unwrap()
        );
        assert!(serde_json::from_str::<ProjLine>(&bad).is_err());
    }

    #[test]
    fn off_line_point_rejected_by_cross_ratio() {
        let l = coord_line(0, 1);
        let p = [e(0), e(1), ProjPoint::real([1.0, 1.0, 0.0, 0.0]), e(2)];
        let r = cross_ratio([&p[0], &p[1], &p[2], &p[3]], &l);
        assert!(matches!(r, Err(Error::PointOffLine { .. })));
    }
}
