//! Point and hyperplane classes under K, orbit distributions of subspaces,
//! and orbit/stabilizer computations for the induced action of GL(3, q).

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Pg5;
use crate::gf::{Elem, Gf};
use crate::pg::{self, Subspace};
use crate::veronese::{
    self, apply_map, conic_plane_of, induced_map, point_rank, Coords6, ConicForm, Mat3,
};

/// The six K-orbits of points; `P2n`/`P2s` occur for q even, `P2e`/`P2i` for q odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointClass {
    P1,
    P2n,
    P2s,
    P2e,
    P2i,
    P3,
}

impl PointClass {
    /// Position in an OD0 vector.
    pub fn slot(self) -> u8 {
        match self {
            PointClass::P1 => 0,
            PointClass::P2n | PointClass::P2e => 1,
            PointClass::P2s | PointClass::P2i => 2,
            PointClass::P3 => 3,
        }
    }

    pub fn rank(self) -> u8 {
        match self {
            PointClass::P1 => 1,
            PointClass::P3 => 3,
            _ => 2,
        }
    }
}

/// The four K-orbits of hyperplanes, named after the conics they cut out:
/// double lines, real line pairs, conjugate line pairs, nonsingular conics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HyperplaneClass {
    H1,
    H2r,
    H2i,
    H3,
}

impl HyperplaneClass {
    pub fn slot(self) -> u8 {
        self as u8
    }
}

/// Nonzero principal 2x2 minor of a rank-2 symmetric matrix.
fn principal_minor(f: &Gf, y: &Coords6) -> Elem {
    let m = veronese::sym_matrix(y);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = f.sub(f.mul(m[i][i], m[j][j]), f.mul(m[i][j], m[i][j]));
        if d != 0 {
            return d;
        }
    }
    unreachable!("a rank-2 symmetric matrix has a nonzero principal 2x2 minor")
}

/// Algebraic point classification. For q odd a rank-2 point is exterior to
/// its conic iff minus a nonzero principal 2x2 minor is a square.
pub fn classify_point(f: &Gf, y: &Coords6) -> PointClass {
    match point_rank(f, y) {
        1 => PointClass::P1,
        3 => PointClass::P3,
        2 if f.is_even() => {
            if y[0] == 0 && y[3] == 0 && y[5] == 0 {
                PointClass::P2n
            } else {
                PointClass::P2s
            }
        }
        2 => {
            let m = principal_minor(f, y);
            if f.is_square(f.neg(m)).expect("q odd") {
                PointClass::P2e
            } else {
                PointClass::P2i
            }
        }
        _ => panic!("zero vector has no class"),
    }
}

/// Number of tangent lines to the conic of a rank-2 point that pass through
/// the point inside its conic plane.
pub fn tangent_count(f: &Gf, y: &Coords6) -> Result<usize> {
    let (_, conic) = conic_plane_of(f, y)?;
    let mut tangents = 0;
    for c in &conic {
        let line = pg::canonicalize(f, &[y.to_vec(), c.to_vec()])?;
        if conic.iter().filter(|d| line.contains(f, &d[..])).count() == 1 {
            tangents += 1;
        }
    }
    Ok(tangents)
}

/// Classification of a rank-2 point for q odd by counting tangents: two for
/// exterior points, none for interior ones.
pub fn classify_point_geometric(f: &Gf, y: &Coords6) -> Result<PointClass> {
    if f.is_even() {
        return Err(Error::Parity("odd"));
    }
    match tangent_count(f, y)? {
        2 => Ok(PointClass::P2e),
        0 => Ok(PointClass::P2i),
        n => Err(Error::Inconsistent(format!("{n} tangents through a rank-2 point"))),
    }
}

/// Classification of the hyperplane with dual coordinates `dual` through the
/// zero set `S` of the corresponding conic in PG(2, q).
pub fn classify_hyperplane(f: &Gf, dual: &Coords6) -> Result<HyperplaneClass> {
    let zeros = veronese::delta_inverse(dual).zeros(f);
    let q = f.q() as usize;
    if zeros.len() == 1 {
        return Ok(HyperplaneClass::H2i);
    }
    if zeros.len() == 2 * q + 1 {
        return Ok(HyperplaneClass::H2r);
    }
    if zeros.len() == q + 1 {
        let line = pg::canonicalize(f, &[zeros[0].to_vec(), zeros[1].to_vec()])?;
        let collinear = zeros.iter().all(|u| line.contains(f, u));
        return Ok(if collinear { HyperplaneClass::H1 } else { HyperplaneClass::H3 });
    }
    Err(Error::Inconsistent(format!("conic with {} points", zeros.len())))
}

/// Zeros of a conic on the coordinate line `x_i = 0`.
fn zeros_on_coordinate_line(f: &Gf, c: &ConicForm, i: usize) -> usize {
    let (a, b) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut count = 0;
    let mut u = [0; 3];
    u[b] = 1;
    if c.eval(f, &u) == 0 {
        count += 1;
    }
    u[a] = 1;
    for t in f.elements() {
        u[b] = t;
        if c.eval(f, &u) == 0 {
            count += 1;
        }
    }
    count
}

/// Algebraic hyperplane classification: the singular locus of the conic,
/// and for line pairs the zero count on a line avoiding the vertex.
pub fn classify_hyperplane_fast(f: &Gf, dual: &Coords6) -> HyperplaneClass {
    let c = ConicForm(*dual);
    let [a00, a01, a02, a11, a12, a22] = *dual;
    let vertex = if f.is_even() {
        if a01 == 0 && a02 == 0 && a12 == 0 {
            return HyperplaneClass::H1;
        }
        let n = [a12, a02, a01];
        if c.eval(f, &n) != 0 {
            return HyperplaneClass::H3;
        }
        n
    } else {
        let two = f.from_int(2);
        let b: Mat3 = [
            [f.mul(two, a00), a01, a02],
            [a01, f.mul(two, a11), a12],
            [a02, a12, f.mul(two, a22)],
        ];
        match veronese::mat_rank(f, &b) {
            3 => return HyperplaneClass::H3,
            1 => return HyperplaneClass::H1,
            _ => {}
        }
        let ns = pg::nullspace(f, &b.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), 3);
        [ns[0][0], ns[0][1], ns[0][2]]
    };
    let i = vertex.iter().position(|&x| x != 0).expect("vertex is a point");
    match zeros_on_coordinate_line(f, &c, i) {
        2 => HyperplaneClass::H2r,
        0 => HyperplaneClass::H2i,
        n => panic!("line pair meets a line off its vertex in {n} points"),
    }
}

pub type Od = [u64; 4];

/// OD0, OD4 and the plain rank distribution of a subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitDistribution {
    pub od0: Od,
    pub od4: Od,
    pub ranks: [u64; 3],
}

pub fn ranks_of(od0: &Od) -> [u64; 3] {
    [od0[0], od0[1] + od0[2], od0[3]]
}

/// Least rank present in a subspace with the given OD0.
pub fn min_rank_of(od0: &Od) -> u8 {
    let r = ranks_of(od0);
    (r.iter().position(|&x| x > 0).expect("nonempty subspace") + 1) as u8
}

pub fn od0(g: &Pg5, w: &Subspace) -> Od {
    g.od0(&g.rows_of(w), &mut Vec::new())
}

pub fn od4(g: &Pg5, w: &Subspace) -> Od {
    g.od4(&g.rows_of(w), &mut Vec::new())
}

pub fn rank_distribution(g: &Pg5, w: &Subspace) -> [u64; 3] {
    ranks_of(&od0(g, w))
}

pub fn distributions(g: &Pg5, w: &Subspace) -> OrbitDistribution {
    let od0 = od0(g, w);
    OrbitDistribution {
        od0,
        od4: od4(g, w),
        ranks: ranks_of(&od0),
    }
}

/// `|PGL(3, q)| = q^3 (q^3 - 1)(q^2 - 1)`.
pub fn pgl3_order(q: u32) -> u64 {
    let q = q as u64;
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

/// A transvection, a cyclic permutation matrix and `diag(w, 1, 1)` with `w` primitive.
pub fn k_generators(f: &Gf) -> Vec<Mat3> {
    vec![
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        [[f.primitive(), 0, 0], [0, 1, 0], [0, 0, 1]],
    ]
}

fn projective_key(f: &Gf, m: &Mat3) -> u64 {
    let mut flat: Vec<Elem> = m.iter().flatten().copied().collect();
    pg::normalize(f, &mut flat);
    flat.iter().fold(0u64, |acc, &x| acc * f.q() as u64 + x as u64)
}

/// Order of the group of projectivities generated by [`k_generators`], by closure.
pub fn generated_group_order(f: &Gf) -> u64 {
    let gens = k_generators(f);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(projective_key(f, &veronese::IDENTITY));
    queue.push_back(veronese::IDENTITY);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let n = veronese::mat_mul(f, g, &m);
            if seen.insert(projective_key(f, &n)) {
                queue.push_back(n);
            }
        }
    }
    seen.len() as u64
}

/// A subspace in packed RREF rows, the hash key used for orbits.
pub type Key = Vec<u32>;

/// Induced 6x6 maps of the generators.
pub fn generator_maps(f: &Gf) -> Vec<[[Elem; 6]; 6]> {
    k_generators(f).iter().map(|a| induced_map(f, a)).collect()
}

pub fn image_key(g: &Pg5, map: &[[Elem; 6]; 6], key: &[u32]) -> Key {
    let rows: Vec<u32> = key
        .iter()
        .map(|&r| g.encode(&apply_map(g.field(), map, &g.decode(r))))
        .collect();
    g.canonical(&rows)
}

/// The K-orbit of `w` by breadth-first search, members in discovery order.
pub fn orbit_of(g: &Pg5, w: &Subspace, budget: usize) -> Result<Vec<Key>> {
    orbit_of_key(g, &g.rows_of(w), budget)
}

pub fn orbit_of_key(g: &Pg5, start: &[u32], budget: usize) -> Result<Vec<Key>> {
    let maps = generator_maps(g.field());
    let start = g.canonical(start);
    let mut seen: HashSet<Key> = HashSet::new();
    seen.insert(start.clone());
    let mut members = vec![start];
    let mut next = 0;
    while next < members.len() {
        let cur = members[next].clone();
        next += 1;
        for m in &maps {
            let img = image_key(g, m, &cur);
            if seen.insert(img.clone()) {
                if members.len() == budget {
                    return Err(Error::BudgetExceeded {
                        needed: budget as u128 + 1,
                        budget: budget as u128,
                    });
                }
                members.push(img);
            }
        }
    }
    Ok(members)
}

/// `|K| / |orbit|`.
pub fn stabilizer_order(g: &Pg5, w: &Subspace, budget: usize) -> Result<u64> {
    let orbit = orbit_of(g, w, budget)?;
    Ok(pgl3_order(g.q()) / orbit.len() as u64)
}

/// Expected global point census `[P1, P2a, P2b, P3]` in OD0 slot order.
pub fn point_census(q: u64, even: bool) -> Od {
    let n = q * q + q + 1;
    let (a, b) = if even {
        (n, (q * q - 1) * n)
    } else {
        (n * q * (q + 1) / 2, n * q * (q - 1) / 2)
    };
    [n, a, b, q.pow(5) - q * q]
}

/// Expected global hyperplane census `[H1, H2r, H2i, H3]`.
pub fn hyperplane_census(q: u64) -> Od {
    let n = q * q + q + 1;
    [n, n * (q * q + q) / 2, (q.pow(4) - q) / 2, q.pow(5) - q * q]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::parse_field_spec;
    use crate::veronese::nucleus_plane;

    #[test]
    fn point_examples() {
        let f3 = parse_field_spec("3").unwrap();
        assert_eq!(classify_point(&f3, &[1, 0, 0, 1, 0, 0]), PointClass::P2i);
        assert_eq!(tangent_count(&f3, &[1, 0, 0, 1, 0, 0]).unwrap(), 0);
        assert_eq!(classify_point(&f3, &[1, 0, 0, 2, 0, 0]), PointClass::P2e);
        assert_eq!(tangent_count(&f3, &[1, 0, 0, 2, 0, 0]).unwrap(), 2);
        let f4 = parse_field_spec("4").unwrap();
        assert_eq!(classify_point(&f4, &[0, 1, 0, 0, 0, 0]), PointClass::P2n);
        assert_eq!(classify_point(&f4, &[1, 0, 0, 0, 0, 0]), PointClass::P1);
        assert_eq!(classify_point(&f4, &[1, 0, 0, 1, 0, 1]), PointClass::P3);
    }

    #[test]
    fn exterior_interior_tests_agree() {
        for q in ["3", "5"] {
            let f = parse_field_spec(q).unwrap();
            for p in Subspace::whole(6).points(&f) {
                let y: Coords6 = p.coords().try_into().unwrap();
                if point_rank(&f, &y) == 2 {
                    assert_eq!(classify_point(&f, &y), classify_point_geometric(&f, &y).unwrap());
                }
            }
        }
    }

    #[test]
    fn hyperplane_examples() {
        let f3 = parse_field_spec("3").unwrap();
        assert_eq!(classify_hyperplane(&f3, &[1, 0, 0, 0, 0, 0]).unwrap(), HyperplaneClass::H1);
        assert_eq!(classify_hyperplane(&f3, &[0, 1, 0, 0, 0, 0]).unwrap(), HyperplaneClass::H2r);
        // X1^2 - X0 X2
        let d = [0, 0, f3.neg(1), 1, 0, 0];
        assert_eq!(classify_hyperplane(&f3, &d).unwrap(), HyperplaneClass::H3);
        let zeros = ConicForm(d).zeros(&f3);
        assert_eq!(zeros.len(), 4);
        assert!(zeros.contains(&[0, 0, 1]));
        // X0^2 + X1^2 is irreducible over F3
        assert_eq!(classify_hyperplane(&f3, &[1, 0, 0, 1, 0, 0]).unwrap(), HyperplaneClass::H2i);
    }

    #[test]
    fn censuses() {
        for q in ["2", "3", "4", "5"] {
            let f = parse_field_spec(q).unwrap();
            let g = Pg5::new(&f).unwrap();
            let mut pts = [0u64; 4];
            let mut hyp = [0u64; 4];
            for p in Subspace::whole(6).points(&f) {
                let i = g.encode(p.coords());
                pts[g.point_slot(i) as usize] += 1;
                hyp[g.hyper_slot(i) as usize] += 1;
            }
            let qq = f.q() as u64;
            assert_eq!(pts, point_census(qq, f.is_even()));
            assert_eq!(hyp, hyperplane_census(qq));
            assert_eq!(hyp.iter().sum::<u64>(), (qq.pow(6) - 1) / (qq - 1));
        }
    }

    #[test]
    fn nucleus_plane_distributions() {
        let f = parse_field_spec("4").unwrap();
        let g = Pg5::new(&f).unwrap();
        let pn = nucleus_plane(&f).unwrap();
        assert_eq!(od0(&g, &pn), [0, 21, 0, 0]);
        assert_eq!(od4(&g, &pn), [21, 0, 0, 0]);
        assert_eq!(min_rank_of(&od0(&g, &pn)), 2);
    }

    #[test]
    fn h1_hyperplanes_contain_the_nucleus_plane() {
        for q in ["4", "8"] {
            let f = parse_field_spec(q).unwrap();
            let pn = nucleus_plane(&f).unwrap();
            for p in Subspace::whole(6).points(&f) {
                let d: Coords6 = p.coords().try_into().unwrap();
                if classify_hyperplane_fast(&f, &d) == HyperplaneClass::H1 {
                    assert!(pn.rows().iter().all(|r| pg::incident(&f, r, &d)));
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        for (q, order) in [("2", 168), ("3", 5616), ("4", 60480)] {
            let f = parse_field_spec(q).unwrap();
            assert_eq!(generated_group_order(&f), order);
            assert_eq!(pgl3_order(f.q()), order);
        }
    }

    #[test]
    fn orbits_and_stabilizers() {
        let f4 = parse_field_spec("4").unwrap();
        let g4 = Pg5::new(&f4).unwrap();
        let pn = nucleus_plane(&f4).unwrap();
        assert_eq!(orbit_of(&g4, &pn, 100).unwrap().len(), 1);
        assert_eq!(stabilizer_order(&g4, &pn, 100).unwrap(), 60480);
        let p = pg::canonicalize(&f4, &[vec![0, 1, 0, 0, 0, 0]]).unwrap();
        assert_eq!(orbit_of(&g4, &p, 1000).unwrap().len(), 21);
        assert_eq!(stabilizer_order(&g4, &p, 1000).unwrap(), 2880);

        let f2 = parse_field_spec("2").unwrap();
        let g2 = Pg5::new(&f2).unwrap();
        let p = pg::canonicalize(&f2, &[vec![0, 1, 0, 0, 0, 0]]).unwrap();
        assert_eq!(stabilizer_order(&g2, &p, 1000).unwrap(), 24);

        let f3 = parse_field_spec("3").unwrap();
        let g3 = Pg5::new(&f3).unwrap();
        let cp = veronese::conic_plane_of_line(&f3, &[0, 0, 1]);
        let orbit = orbit_of(&g3, &cp, 1000).unwrap();
        assert_eq!(orbit.len(), 13);
        let d = distributions(&g3, &cp);
        for k in &orbit {
            let w = g3.subspace(k);
            assert_eq!(distributions(&g3, &w), d);
        }
        assert!(matches!(orbit_of(&g3, &cp, 5), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn rank_three_point_orbit_size() {
        let f = parse_field_spec("3").unwrap();
        let g = Pg5::new(&f).unwrap();
        let id = pg::canonicalize(&f, &[vec![1, 0, 0, 1, 0, 1]]).unwrap();
        let orbit = orbit_of(&g, &id, 10_000).unwrap();
        // q odd: rank-3 points form a single orbit
        assert_eq!(orbit.len() as u64, 3u64.pow(5) - 9);
    }
}
