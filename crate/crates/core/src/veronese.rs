//! Symmetric 3x3 matrices as points of PG(5, q), the Veronese map, conic
//! planes, the nucleus plane, the delta correspondence between conics and
//! hyperplanes, the action of GL(3, q), and the trace-form polarity.
//!
//! A point `(y0, .., y5)` stands for the matrix
//! `[[y0, y1, y2], [y1, y3, y4], [y2, y4, y5]]`.
//!
//! The group acts on matrices by `M -> A M A^T` and on PG(2, q) by `u -> A u`
//! (column vectors). With these conventions `nu(A u) = A . nu(u)` holds exactly.

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};
use crate::pg::{self, canonicalize, Subspace};

pub type Mat3 = [[Elem; 3]; 3];
pub type Coords6 = [Elem; 6];

/// Position of matrix entry `(i, j)` in the 6-tuple.
pub const SYM_INDEX: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];

pub fn sym_matrix(y: &Coords6) -> Mat3 {
    let mut m = [[0; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = y[SYM_INDEX[i][j]];
        }
    }
    m
}

/// The 6-tuple of a matrix, or `None` if it is not symmetric.
pub fn sym_coords(m: &Mat3) -> Option<Coords6> {
    if m[0][1] != m[1][0] || m[0][2] != m[2][0] || m[1][2] != m[2][1] {
        return None;
    }
    Some([m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2]])
}

pub const IDENTITY: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn mat_mul(f: &Gf, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0;
            for k in 0..3 {
                s = f.add(s, f.mul(a[i][k], b[k][j]));
            }
            c[i][j] = s;
        }
    }
    c
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let mut t = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub fn mat_vec(f: &Gf, a: &Mat3, u: &[Elem; 3]) -> [Elem; 3] {
    let mut out = [0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..3).fold(0, |s, k| f.add(s, f.mul(a[i][k], u[k])));
    }
    out
}

pub fn det3(f: &Gf, m: &Mat3) -> Elem {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][c], m[2][d]))
    };
    let t0 = f.mul(m[0][0], minor(1, 2, 2, 1));
    let t1 = f.mul(m[0][1], minor(0, 2, 2, 0));
    let t2 = f.mul(m[0][2], minor(0, 1, 1, 0));
    f.add(f.sub(t0, t1), t2)
}

pub fn mat_rank(f: &Gf, m: &Mat3) -> u8 {
    pg::matrix_rank(f, &m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()) as u8
}

pub fn mat_inverse(f: &Gf, m: &Mat3) -> Result<Mat3> {
    let d = det3(f, m);
    if d == 0 {
        return Err(Error::Singular);
    }
    let di = f.inv(d);
    let mut inv = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // cofactor of (j, i)
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let c = f.sub(
                f.mul(m[rows[0]][cols[0]], m[rows[1]][cols[1]]),
                f.mul(m[rows[0]][cols[1]], m[rows[1]][cols[0]]),
            );
            let c = if (i + j) % 2 == 1 { f.neg(c) } else { c };
            inv[i][j] = f.mul(c, di);
        }
    }
    Ok(inv)
}

/// A point of PG(5, q) with its symmetric-matrix view.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymPoint(Coords6);

impl SymPoint {
    /// Normalizes `y`; fails on the zero vector or out-of-range entries.
    pub fn new(f: &Gf, mut y: Coords6) -> Result<SymPoint> {
        if let Some(i) = y.iter().position(|&c| c >= f.q()) {
            return Err(Error::EntryOutOfRange(i));
        }
        if !pg::normalize(f, &mut y) {
            return Err(Error::EmptySpan);
        }
        Ok(SymPoint(y))
    }

    pub fn from_matrix(f: &Gf, m: &Mat3) -> Result<SymPoint> {
        let y = sym_coords(m).ok_or(Error::NotSymmetric(0))?;
        SymPoint::new(f, y)
    }

    pub fn coords(&self) -> &Coords6 {
        &self.0
    }

    pub fn matrix(&self) -> Mat3 {
        sym_matrix(&self.0)
    }

    pub fn rank(&self, f: &Gf) -> u8 {
        point_rank(f, &self.0)
    }
}

/// `(u0^2, u0 u1, u0 u2, u1^2, u1 u2, u2^2)`.
pub fn veronese(f: &Gf, u: &[Elem; 3]) -> Coords6 {
    [
        f.mul(u[0], u[0]),
        f.mul(u[0], u[1]),
        f.mul(u[0], u[2]),
        f.mul(u[1], u[1]),
        f.mul(u[1], u[2]),
        f.mul(u[2], u[2]),
    ]
}

/// Rank of the matrix of `y` (0 only for the zero vector).
pub fn point_rank(f: &Gf, y: &Coords6) -> u8 {
    let m = sym_matrix(y);
    if det3(f, &m) != 0 {
        return 3;
    }
    if y.iter().all(|&c| c == 0) {
        return 0;
    }
    for i in 0..3 {
        for j in 0..3 {
            for k in i + 1..3 {
                for l in j + 1..3 {
                    let d = f.sub(f.mul(m[i][j], m[k][l]), f.mul(m[i][l], m[k][j]));
                    if d != 0 {
                        return 2;
                    }
                }
            }
        }
    }
    1
}

/// Points of PG(2, q), normalized, in lexicographic order.
pub fn plane_points(f: &Gf) -> Vec<[Elem; 3]> {
    Subspace::whole(3)
        .points(f)
        .into_iter()
        .map(|p| [p.coords()[0], p.coords()[1], p.coords()[2]])
        .collect()
}

/// Points of the line `{x : k . x = 0}` of PG(2, q).
pub fn line_points(f: &Gf, k: &[Elem; 3]) -> Vec<[Elem; 3]> {
    let basis = pg::nullspace(f, &[k.to_vec()], 3);
    canonicalize(f, &basis)
        .expect("a line has a basis")
        .points(f)
        .into_iter()
        .map(|p| [p.coords()[0], p.coords()[1], p.coords()[2]])
        .collect()
}

/// The conic plane spanned by the image of the line `k . x = 0`.
pub fn conic_plane_of_line(f: &Gf, k: &[Elem; 3]) -> Subspace {
    let images: Vec<Vec<Elem>> = line_points(f, k).iter().map(|u| veronese(f, u).to_vec()).collect();
    canonicalize(f, &images).expect("conic points span a plane")
}

/// A generator of the kernel of a rank-2 symmetric matrix.
pub fn kernel_point(f: &Gf, y: &Coords6) -> Result<[Elem; 3]> {
    let r = point_rank(f, y);
    if r != 2 {
        return Err(Error::RankNot2(r));
    }
    let m = sym_matrix(y);
    let ns = pg::nullspace(f, &m.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), 3);
    let mut k = [ns[0][0], ns[0][1], ns[0][2]];
    pg::normalize(f, &mut k);
    Ok(k)
}

/// The unique conic plane through a rank-2 point, and the q+1 points of its conic.
pub fn conic_plane_of(f: &Gf, y: &Coords6) -> Result<(Subspace, Vec<Coords6>)> {
    let k = kernel_point(f, y)?;
    let conic = line_points(f, &k).iter().map(|u| veronese(f, u)).collect();
    Ok((conic_plane_of_line(f, &k), conic))
}

/// The plane of zero-diagonal matrices (q even).
pub fn nucleus_plane(f: &Gf) -> Result<Subspace> {
    if !f.is_even() {
        return Err(Error::Parity("even"));
    }
    let rows = [1, 2, 4]
        .iter()
        .map(|&i| (0..6).map(|j| Elem::from(j == i)).collect())
        .collect();
    Ok(Subspace::from_rref(6, rows))
}

/// A quadratic form `a00 X0^2 + a01 X0 X1 + a02 X0 X2 + a11 X1^2 + a12 X1 X2 + a22 X2^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConicForm(pub Coords6);

impl ConicForm {
    pub fn eval(&self, f: &Gf, u: &[Elem; 3]) -> Elem {
        pg::dot(f, &self.0, &veronese(f, u))
    }

    pub fn zeros(&self, f: &Gf) -> Vec<[Elem; 3]> {
        plane_points(f).into_iter().filter(|u| self.eval(f, u) == 0).collect()
    }
}

/// Dual coordinates of the hyperplane cut out by a conic: `u` lies on the conic
/// iff `nu(u)` lies on the hyperplane.
pub fn delta(c: &ConicForm) -> Coords6 {
    c.0
}

/// The conic whose hyperplane section is the given dual vector.
pub fn delta_inverse(dual: &Coords6) -> ConicForm {
    ConicForm(*dual)
}

/// `A M A^T` for the matrix of `y`.
pub fn k_action(f: &Gf, a: &Mat3, y: &Coords6) -> Coords6 {
    let m = sym_matrix(y);
    let r = mat_mul(f, &mat_mul(f, a, &m), &transpose(a));
    sym_coords(&r).expect("congruence preserves symmetry")
}

/// The 6x6 matrix `T` of the induced linear map, so that the image of `y` is `T y`.
pub fn induced_map(f: &Gf, a: &Mat3) -> [[Elem; 6]; 6] {
    let mut t = [[0; 6]; 6];
    for j in 0..6 {
        let mut e = [0; 6];
        e[j] = 1;
        let img = k_action(f, a, &e);
        for i in 0..6 {
            t[i][j] = img[i];
        }
    }
    t
}

pub fn apply_map(f: &Gf, t: &[[Elem; 6]; 6], y: &[Elem]) -> Coords6 {
    let mut out = [0; 6];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..6).fold(0, |s, k| f.add(s, f.mul(t[i][k], y[k])));
    }
    out
}

/// Image of a subspace of PG(5, q) under `A`.
pub fn k_action_subspace(f: &Gf, a: &Mat3, w: &Subspace) -> Result<Subspace> {
    if det3(f, a) == 0 {
        return Err(Error::Singular);
    }
    let rows: Vec<Vec<Elem>> = w.rows().iter().map(|r| apply_map(f, &induced_map(f, a), r).to_vec()).collect();
    canonicalize(f, &rows)
}

/// Gram diagonal of the trace form `tr(A B)` in 6-tuple coordinates.
pub fn trace_form_weights(f: &Gf) -> Coords6 {
    let two = f.from_int(2);
    [1, two, two, 1, two, 1]
}

/// Polar of `w` under the trace form (q odd).
pub fn polarity_rho(f: &Gf, w: &Subspace) -> Result<Subspace> {
    if f.is_even() {
        return Err(Error::Parity("odd"));
    }
    if w.is_whole() {
        return Err(Error::EmptySpan);
    }
    let g = trace_form_weights(f);
    let rows: Vec<Vec<Elem>> = w
        .rows()
        .iter()
        .map(|r| r.iter().zip(&g).map(|(&x, &c)| f.mul(x, c)).collect())
        .collect();
    canonicalize(f, &pg::nullspace(f, &rows, 6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use std::collections::HashSet;

    fn all_points(f: &Gf) -> Vec<Coords6> {
        Subspace::whole(6)
            .points(f)
            .into_iter()
            .map(|p| p.coords().try_into().unwrap())
            .collect()
    }

    #[test]
    fn veronese_examples() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(veronese(&f, &[1, 0, 0]), [1, 0, 0, 0, 0, 0]);
        assert_eq!(veronese(&f, &[0, 0, 1]), [0, 0, 0, 0, 0, 1]);
        assert_eq!(veronese(&f, &[1, 1, 1]), [1; 6]);
    }

    #[test]
    fn veronese_is_injective_with_rank_one_image() {
        for q in [2, 3, 4, 5] {
            let f = crate::gf::parse_field_spec(&q.to_string()).unwrap();
            let imgs: HashSet<Coords6> = plane_points(&f)
                .iter()
                .map(|u| {
                    let y = veronese(&f, u);
                    assert_eq!(point_rank(&f, &y), 1);
                    y
                })
                .collect();
            assert_eq!(imgs.len() as u32, q * q + q + 1);
        }
    }

    #[test]
    fn rank_examples() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(point_rank(&f, &[0, 1, 0, 0, 0, 0]), 2);
        assert_eq!(point_rank(&f, &[1, 0, 0, 1, 0, 1]), 3);
        assert_eq!(point_rank(&f, &[1, 2, 3, 4, 1, 4]), 1); // nu(1,2,3)
    }

    #[test]
    fn rank_census() {
        for q in [2u64, 3, 4, 5] {
            let f = crate::gf::parse_field_spec(&q.to_string()).unwrap();
            let mut counts = [0u64; 4];
            for y in all_points(&f) {
                counts[point_rank(&f, &y) as usize] += 1;
            }
            assert_eq!(counts[1], q * q + q + 1);
            assert_eq!(counts[2], (q * q + q + 1) * q * q);
            assert_eq!(counts[3], q.pow(5) - q * q);
        }
    }

    #[test]
    fn conic_planes() {
        let f = make_field(3, 1).unwrap();
        let (plane, conic) = conic_plane_of(&f, &[1, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(kernel_point(&f, &[1, 0, 0, 1, 0, 0]).unwrap(), [0, 0, 1]);
        assert_eq!(conic.len(), 4);
        assert!(plane.contains(&f, &[1, 0, 0, 1, 0, 0]));
        let (plane2, _) = conic_plane_of(&f, &[0, 1, 0, 0, 0, 0]).unwrap();
        assert_eq!(plane, plane2);
        assert_eq!(conic_plane_of(&f, &[1, 0, 0, 0, 0, 0]).unwrap_err(), Error::RankNot2(1));
        // a point on a secant picks out the conic through both ends
        let a = veronese(&f, &[1, 2, 0]);
        let b = veronese(&f, &[0, 1, 1]);
        let p: Coords6 = std::array::from_fn(|i| f.add(a[i], f.mul(2, b[i])));
        let (_, c) = conic_plane_of(&f, &p).unwrap();
        let mut an = a;
        pg::normalize(&f, &mut an);
        assert!(c.contains(&an) && c.contains(&b));
    }

    #[test]
    fn nucleus_plane_is_rank_two() {
        for q in [2, 4, 8] {
            let f = crate::gf::parse_field_spec(&q.to_string()).unwrap();
            let pi = nucleus_plane(&f).unwrap();
            let pts = pi.points(&f);
            assert_eq!(pts.len() as u32, q * q + q + 1);
            for p in pts {
                assert_eq!(point_rank(&f, p.coords().try_into().unwrap()), 2);
            }
            assert!(pi.contains(&f, &[0, 1, 1, 0, 1, 0]));
        }
        assert!(nucleus_plane(&make_field(3, 1).unwrap()).is_err());
    }

    #[test]
    fn delta_examples_and_incidence() {
        assert_eq!(delta(&ConicForm([1, 0, 0, 0, 0, 0])), [1, 0, 0, 0, 0, 0]);
        assert_eq!(delta(&ConicForm([0, 1, 0, 0, 0, 0])), [0, 1, 0, 0, 0, 0]);
        assert_eq!(delta(&ConicForm([0, 0, 1, 1, 0, 0])), [0, 0, 1, 1, 0, 0]);
        for q in [2, 3, 4] {
            let f = crate::gf::parse_field_spec(&q.to_string()).unwrap();
            let pts = plane_points(&f);
            for c in all_points(&f) {
                let form = ConicForm(c);
                let d = delta(&form);
                for u in &pts {
                    assert_eq!(form.eval(&f, u) == 0, pg::incident(&f, &veronese(&f, u), &d));
                }
            }
        }
    }

    #[test]
    fn action_examples() {
        let f = crate::gf::parse_field_spec("4").unwrap();
        for y in all_points(&f).into_iter().step_by(37) {
            assert_eq!(k_action(&f, &IDENTITY, &y), y);
        }
        let a = [[1, 2, 3], [0, 1, 1], [2, 0, 1]];
        assert_ne!(det3(&f, &a), 0);
        for u in plane_points(&f) {
            let img = k_action(&f, &a, &veronese(&f, &u));
            assert_eq!(point_rank(&f, &img), 1);
            assert_eq!(img, veronese(&f, &mat_vec(&f, &a, &u)));
        }
        assert_eq!(k_action_subspace(&f, &[[1, 1, 0], [1, 1, 0], [0, 0, 1]], &Subspace::whole(6)), Err(Error::Singular));
    }

    #[test]
    fn rescaling_pi_1b0() {
        // <l_{12,1}, P(0,0,1,b,0,0)> is carried to a plane containing P(0,0,1,1,0,0)
        let f = crate::gf::parse_field_spec("4").unwrap();
        let line = [vec![0, 1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 0]];
        let target = canonicalize(&f, &[line[0].clone(), line[1].clone(), vec![0, 0, 1, 1, 0, 0]]).unwrap();
        for b in 1..4 {
            let w = canonicalize(&f, &[line[0].clone(), line[1].clone(), vec![0, 0, 1, b, 0, 0]]).unwrap();
            let bi = f.inv(b);
            let a = [[bi, 0, 0], [0, bi, 0], [0, 0, 1]];
            assert_eq!(k_action_subspace(&f, &a, &w).unwrap(), target);
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let f = make_field(5, 1).unwrap();
        let a = [[1, 2, 3], [0, 1, 4], [2, 0, 1]];
        let ai = mat_inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &ai), IDENTITY);
        assert_eq!(mat_inverse(&f, &[[1, 2, 0], [2, 4, 0], [0, 0, 1]]), Err(Error::Singular));
    }

    #[test]
    fn polarity_maps_conic_planes_to_tangent_planes() {
        let f = make_field(3, 1).unwrap();
        assert!(polarity_rho(&crate::gf::parse_field_spec("4").unwrap(), &Subspace::whole(1)).is_err());
        for k in plane_points(&f) {
            let cp = conic_plane_of_line(&f, &k);
            let t = polarity_rho(&f, &cp).unwrap();
            assert_eq!(t.projdim(), 2);
            assert_eq!(polarity_rho(&f, &t).unwrap(), cp);
            let ranks: Vec<u8> = t
                .points(&f)
                .iter()
                .map(|p| point_rank(&f, p.coords().try_into().unwrap()))
                .collect();
            assert_eq!(ranks.iter().filter(|&&r| r == 1).count(), 1);
            assert!(ranks.iter().all(|&r| r <= 2));
            assert!(t.contains(&f, &veronese(&f, &k)));
        }
    }
}
