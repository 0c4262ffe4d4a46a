//! Linear algebra over GF(q) and subspace combinatorics of PG(n, q).
//!
//! Vectors are plain `Vec<Elem>` interpreted in a given [`Gf`]. Subspaces are
//! kept in reduced row-echelon form, which makes them unique and hashable.

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};

/// Default cap on the number of objects an enumeration may produce.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Reduces `rows` in place to RREF, dropping zero rows. Returns the pivot columns.
pub fn rref(f: &Gf, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in c..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn matrix_rank(f: &Gf, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : row . x = 0 for every row}` in a space of `ncols` coordinates.
pub fn nullspace(f: &Gf, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

pub fn dot(f: &Gf, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Scales `v` so its first nonzero coordinate is 1. Returns false for the zero vector.
pub fn normalize(f: &Gf, v: &mut [Elem]) -> bool {
    let Some(&lead) = v.iter().find(|&&x| x != 0) else {
        return false;
    };
    if lead != 1 {
        let inv = f.inv(lead);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
    true
}

/// A point of PG(n, q), normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(Vec<Elem>);

impl ProjPoint {
    pub fn new(f: &Gf, mut coords: Vec<Elem>) -> Result<ProjPoint> {
        if coords.iter().any(|&c| c >= f.q()) {
            return Err(Error::EntryOutOfRange(0));
        }
        if !normalize(f, &mut coords) {
            return Err(Error::EmptySpan);
        }
        Ok(ProjPoint(coords))
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Elem> {
        self.0
    }
}

/// Is the point with coordinates `point` on the hyperplane with dual coordinates `dual`?
pub fn incident(f: &Gf, point: &[Elem], dual: &[Elem]) -> bool {
    dot(f, point, dual) == 0
}

/// A projective subspace stored as its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ncols: usize,
    rows: Vec<Vec<Elem>>,
}

/// RREF of the span of `generators`.
pub fn canonicalize(f: &Gf, generators: &[Vec<Elem>]) -> Result<Subspace> {
    let ncols = generators.first().map_or(0, Vec::len);
    if generators.iter().any(|g| g.len() != ncols) {
        return Err(Error::Malformed("generators of unequal length".into()));
    }
    let mut rows = generators.to_vec();
    rref(f, &mut rows);
    if rows.is_empty() {
        return Err(Error::EmptySpan);
    }
    Ok(Subspace { ncols, rows })
}

impl Subspace {
    /// Wraps rows already known to be in RREF.
    pub(crate) fn from_rref(ncols: usize, rows: Vec<Vec<Elem>>) -> Subspace {
        Subspace { ncols, rows }
    }

    /// The whole space PG(ncols - 1, q).
    pub fn whole(ncols: usize) -> Subspace {
        let rows = (0..ncols)
            .map(|i| (0..ncols).map(|j| Elem::from(i == j)).collect())
            .collect();
        Subspace { ncols, rows }
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    /// Vector-space dimension.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn projdim(&self) -> usize {
        self.rows.len() - 1
    }

    /// Dimension `n` of the ambient PG(n, q).
    pub fn ambient(&self) -> usize {
        self.ncols - 1
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_whole(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("RREF rows are nonzero"))
            .collect()
    }

    /// Residual of `v` after clearing the pivot columns with the basis rows.
    /// Zero iff `v` lies in the subspace.
    pub fn reduce(&self, f: &Gf, v: &[Elem]) -> Vec<Elem> {
        let mut out = v.to_vec();
        for (row, pc) in self.rows.iter().zip(self.pivots()) {
            let c = out[pc];
            if c != 0 {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = f.sub(*o, f.mul(c, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &Gf, v: &[Elem]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, f: &Gf, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(f, r))
    }

    pub fn join(&self, f: &Gf, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        rref(f, &mut rows);
        Subspace { ncols: self.ncols, rows }
    }

    pub fn join_vector(&self, f: &Gf, v: &[Elem]) -> Subspace {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rref(f, &mut rows);
        Subspace { ncols: self.ncols, rows }
    }

    /// The dual subspace `{d : d . w = 0 for all w}`; `None` for the whole space.
    pub fn annihilator(&self, f: &Gf) -> Option<Subspace> {
        let ns = nullspace(f, &self.rows, self.ncols);
        if ns.is_empty() {
            None
        } else {
            Some(canonicalize(f, &ns).expect("nullspace basis is nonzero"))
        }
    }

    /// Number of points, `(q^k - 1)/(q - 1)`.
    pub fn point_count(&self, q: u32) -> u64 {
        let k = self.rows.len() as u32;
        ((q as u64).pow(k) - 1) / (q as u64 - 1)
    }

    /// All points, in lexicographic order of their normalized coefficient vectors.
    pub fn points(&self, f: &Gf) -> Vec<ProjPoint> {
        let k = self.rows.len();
        let q = f.q() as u64;
        let mut out = Vec::with_capacity(self.point_count(f.q()) as usize);
        let mut coeffs = vec![0; k];
        for lead in (0..k).rev() {
            let tail = k - 1 - lead;
            for n in 0..q.pow(tail as u32) {
                coeffs.iter_mut().for_each(|c| *c = 0);
                coeffs[lead] = 1;
                let mut m = n;
                for i in (lead + 1..k).rev() {
                    coeffs[i] = (m % q) as Elem;
                    m /= q;
                }
                let mut v = vec![0; self.ncols];
                for (c, row) in coeffs.iter().zip(&self.rows) {
                    if *c != 0 {
                        for (x, &r) in v.iter_mut().zip(row) {
                            *x = f.add(*x, f.mul(*c, r));
                        }
                    }
                }
                normalize(f, &mut v);
                out.push(ProjPoint(v));
            }
        }
        out
    }
}

/// Number of k-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: u32, k: u32, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

#[derive(Clone, Debug)]
struct Pattern {
    pivots: Vec<usize>,
    /// (row, column) of every free entry, in reading order.
    free: Vec<(usize, usize)>,
    offset: u128,
    count: u128,
}

/// Indexable enumeration of every k-dimensional subspace of GF(q)^ncols.
///
/// Subspaces are grouped by RREF pivot pattern (patterns in lexicographic
/// order); within a pattern the free entries are filled as base-q digits.
#[derive(Clone, Debug)]
pub struct SubspaceEnumerator {
    q: u32,
    ncols: usize,
    k: usize,
    patterns: Vec<Pattern>,
    total: u128,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl SubspaceEnumerator {
    pub fn new(q: u32, ncols: usize, k: usize) -> SubspaceEnumerator {
        assert!(k >= 1 && k <= ncols, "dimension {k} out of range for {ncols} columns");
        let mut patterns = Vec::new();
        let mut offset = 0u128;
        for pivots in combinations(ncols, k) {
            let mut free = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                for c in p + 1..ncols {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let count = (q as u128).pow(free.len() as u32);
            patterns.push(Pattern {
                pivots,
                free,
                offset,
                count,
            });
            offset += count;
        }
        SubspaceEnumerator {
            q,
            ncols,
            k,
            patterns,
            total: offset,
        }
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Writes the RREF rows of subspace `index` into `out` (k * ncols entries, row-major).
    pub fn decode_into(&self, index: u128, out: &mut [Elem]) {
        assert!(index < self.total, "subspace index out of range");
        let pi = self.patterns.partition_point(|p| p.offset + p.count <= index);
        let pat = &self.patterns[pi];
        out.iter_mut().for_each(|x| *x = 0);
        for (r, &p) in pat.pivots.iter().enumerate() {
            out[r * self.ncols + p] = 1;
        }
        let mut local = index - pat.offset;
        let q = self.q as u128;
        for &(r, c) in pat.free.iter().rev() {
            out[r * self.ncols + c] = (local % q) as Elem;
            local /= q;
        }
    }

    pub fn get(&self, index: u128) -> Subspace {
        let mut flat = vec![0; self.k * self.ncols];
        self.decode_into(index, &mut flat);
        let rows = flat.chunks(self.ncols).map(<[Elem]>::to_vec).collect();
        Subspace::from_rref(self.ncols, rows)
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        (0..self.total).map(move |i| self.get(i))
    }
}

/// All subspaces of projective dimension `projdim` in PG(n, q), subject to `budget`.
pub fn all_subspaces(n: usize, q: u32, projdim: usize, budget: u128) -> Result<SubspaceEnumerator> {
    if projdim > n {
        return Err(Error::Malformed(format!("projective dimension {projdim} exceeds {n}")));
    }
    let needed = gaussian_binomial(n as u32 + 1, projdim as u32 + 1, q);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(SubspaceEnumerator::new(q, n + 1, projdim + 1))
}

/// Every hyperplane of PG(n, q) as a normalized dual vector.
pub fn hyperplane_duals(f: &Gf, n: usize) -> Vec<ProjPoint> {
    Subspace::whole(n + 1).points(f)
}

/// Indexable enumeration of the subspaces of a given dimension containing `base`.
///
/// Works in the quotient by `base`, realized on the non-pivot columns of its RREF.
#[derive(Clone, Debug)]
pub struct Superspaces {
    base: Subspace,
    free_cols: Vec<usize>,
    /// `None` when the requested dimension equals that of `base`.
    inner: Option<SubspaceEnumerator>,
}

pub fn superspaces(base: &Subspace, q: u32, projdim: usize) -> Result<Superspaces> {
    let k = base.dim();
    if projdim + 1 < k || projdim >= base.ncols() {
        return Err(Error::Malformed(format!(
            "no {projdim}-dimensional superspaces of a {}-space",
            base.projdim()
        )));
    }
    let pivots = base.pivots();
    let free_cols: Vec<usize> = (0..base.ncols()).filter(|c| !pivots.contains(c)).collect();
    let extra = projdim + 1 - k;
    let inner = (extra > 0).then(|| SubspaceEnumerator::new(q, free_cols.len(), extra));
    Ok(Superspaces {
        base: base.clone(),
        free_cols,
        inner,
    })
}

impl Superspaces {
    pub fn len(&self) -> u128 {
        self.inner.as_ref().map_or(1, SubspaceEnumerator::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, f: &Gf, index: u128) -> Subspace {
        let Some(inner) = &self.inner else {
            assert_eq!(index, 0, "superspace index out of range");
            return self.base.clone();
        };
        let sub = inner.get(index);
        let mut rows = self.base.rows().to_vec();
        for r in sub.rows() {
            let mut v = vec![0; self.base.ncols()];
            for (&c, &x) in self.free_cols.iter().zip(r) {
                v[c] = x;
            }
            rows.push(v);
        }
        rref(f, &mut rows);
        Subspace::from_rref(self.base.ncols(), rows)
    }

    pub fn iter<'a>(&'a self, f: &'a Gf) -> impl Iterator<Item = Subspace> + 'a {
        (0..self.len()).map(move |i| self.get(f, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use std::collections::HashSet;

    #[test]
    fn ranks() {
        let f = make_field(3, 1).unwrap();
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(matrix_rank(&f, &id), 3);
        assert_eq!(matrix_rank(&f, &[vec![0; 3], vec![0; 3], vec![0; 3]]), 0);
        assert_eq!(matrix_rank(&f, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]), 2);
    }

    #[test]
    fn canonical_forms() {
        let f = make_field(3, 1).unwrap();
        let line = canonicalize(&f, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(line.projdim(), 1);
        assert!(!line.contains(&f, &[0, 0, 1]));
        let pt = canonicalize(&f, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(pt.rows(), &[vec![1, 1]]);
        let mut gens = vec![vec![0; 6]; 3];
        gens[0][1] = 1;
        gens[1][0] = 1;
        gens[2][0] = 1;
        gens[2][1] = 1;
        assert_eq!(canonicalize(&f, &gens).unwrap().projdim(), 1);
        assert_eq!(canonicalize(&f, &[vec![0, 0]]).unwrap_err(), Error::EmptySpan);
    }

    #[test]
    fn point_counts() {
        let f4 = make_field(2, 2).unwrap();
        let line = canonicalize(&f4, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(line.points(&f4).len(), 5);
        let f3 = make_field(3, 1).unwrap();
        let solid = canonicalize(&f3, &Subspace::whole(4).rows().to_vec()).unwrap();
        assert_eq!(solid.points(&f3).len(), 40);
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(Subspace::whole(3).points(&f2).len(), 7);
    }

    #[test]
    fn points_are_distinct_and_sorted_by_coefficients() {
        let f = make_field(3, 1).unwrap();
        let w = canonicalize(&f, &[vec![1, 2, 0, 1], vec![0, 0, 1, 1]]).unwrap();
        let pts = w.points(&f);
        let set: HashSet<_> = pts.iter().collect();
        assert_eq!(set.len(), pts.len());
        // (0,1), (1,0), (1,1), (1,2)
        assert_eq!(pts[0].coords(), &[0, 0, 1, 1]);
        assert_eq!(pts[1].coords(), &[1, 2, 0, 1]);
        assert_eq!(pts[3].coords(), &[1, 2, 2, 0]);
    }

    #[test]
    fn binomials() {
        for q in [2, 3, 4, 5] {
            assert_eq!(gaussian_binomial(2, 1, q), q as u128 + 1);
        }
        assert_eq!(gaussian_binomial(6, 3, 2), 1395);
        assert_eq!(gaussian_binomial(6, 2, 2), 651);
        assert_eq!(gaussian_binomial(6, 4, 2), 651);
        assert_eq!(gaussian_binomial(6, 3, 3), 33880);
        assert_eq!(gaussian_binomial(6, 3, 4), 376_805);
        assert_eq!(gaussian_binomial(6, 4, 5), 508_431);
    }

    #[test]
    fn enumeration_matches_binomials_without_duplicates() {
        let f2 = make_field(2, 1).unwrap();
        for k in 1..=6 {
            let e = SubspaceEnumerator::new(2, 6, k);
            assert_eq!(e.len(), gaussian_binomial(6, k as u32, 2));
            let set: HashSet<_> = e.iter().collect();
            assert_eq!(set.len() as u128, e.len());
            for s in set.iter().take(50) {
                let again = canonicalize(&f2, s.rows()).unwrap();
                assert_eq!(&again, s);
            }
        }
        let e = all_subspaces(2, 3, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(e.len(), 13);
        let e = all_subspaces(5, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(e.len(), 651);
        let e = all_subspaces(5, 3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(e.len(), 33880);
        let f3 = make_field(3, 1).unwrap();
        let set: HashSet<_> = e.iter().collect();
        assert_eq!(set.len(), 33880);
        assert!(set.iter().take(100).all(|s| canonicalize(&f3, s.rows()).unwrap() == *s));
    }

    #[test]
    fn budget_is_enforced() {
        let err = all_subspaces(5, 7, 2, 1000).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                needed: gaussian_binomial(6, 3, 7),
                budget: 1000
            }
        );
    }

    #[test]
    fn hyperplanes_and_incidence() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(hyperplane_duals(&f2, 5).len(), 63);
        let d = [1, 0, 0, 0, 0, 0];
        assert!(incident(&f2, &[0, 1, 0, 0, 0, 0], &d));
        assert!(!incident(&f2, &[1, 0, 0, 1, 0, 1], &d));
    }

    #[test]
    fn hyperplanes_through_subspaces() {
        let f = make_field(3, 1).unwrap();
        let e = SubspaceEnumerator::new(3, 6, 3);
        let duals = hyperplane_duals(&f, 5);
        for i in (0..e.len()).step_by(997) {
            let w = e.get(i);
            let through = duals
                .iter()
                .filter(|d| w.rows().iter().all(|r| incident(&f, r, d.coords())))
                .count();
            assert_eq!(through, 13);
            let ann = w.annihilator(&f).unwrap();
            assert_eq!(ann.dim(), 3);
        }
    }

    #[test]
    fn superspace_counts() {
        let f = make_field(2, 2).unwrap();
        let line = canonicalize(&f, &[vec![0, 1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1, 0]]).unwrap();
        let s = superspaces(&line, 4, 2).unwrap();
        assert_eq!(s.len(), 85);
        let planes: HashSet<_> = s.iter(&f).collect();
        assert_eq!(planes.len(), 85);
        assert!(planes.iter().all(|p| p.dim() == 3 && p.contains_subspace(&f, &line)));
        let pt = canonicalize(&f, &[vec![0, 0, 0, 0, 1, 0]]).unwrap();
        assert_eq!(superspaces(&pt, 4, 2).unwrap().len(), 5797);
        let same = superspaces(&line, 4, 1).unwrap();
        assert_eq!(same.len(), 1);
        assert_eq!(same.get(&f, 0), line);
    }
}
