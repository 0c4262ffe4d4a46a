//! Table-driven PG(5, q) for the enumeration workloads.
//!
//! A vector `y` is packed as the integer `sum y_i q^(5-i)`, so numeric order on
//! packed vectors is lexicographic order on coordinates. Point and hyperplane
//! classes are precomputed for every nonzero packed vector, which removes all
//! normalization from the inner loops.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx, Gf};
use crate::invariants::{classify_hyperplane_fast, classify_point};
use crate::pg::{self, Subspace};
use crate::veronese::Coords6;

/// Largest odd field order with an addition table.
pub const MAX_ODD_Q: u32 = 13;
/// Largest even field order supported.
pub const MAX_EVEN_Q: u32 = 16;

pub struct Pg5 {
    f: FieldCtx,
    q: u32,
    q3: u32,
    place: [u32; 6],
    /// Orbit slot (0..4) of the point class, indexed by packed vector.
    point_slot: Vec<u8>,
    hyper_slot: Vec<u8>,
    /// Addition of packed 3-coordinate halves, for odd characteristic.
    half_add: Vec<u32>,
}

impl Pg5 {
    pub fn new(f: &FieldCtx) -> Result<Pg5> {
        let q = f.q();
        let limit = if f.is_even() { MAX_EVEN_Q } else { MAX_ODD_Q };
        if q > limit {
            return Err(Error::Unsupported(format!("tabulated PG(5,{q}) (limit {limit})")));
        }
        let mut place = [0; 6];
        for (i, p) in place.iter_mut().enumerate() {
            *p = q.pow(5 - i as u32);
        }
        let q3 = q * q * q;
        let mut g = Pg5 {
            f: f.clone(),
            q,
            q3,
            place,
            point_slot: Vec::new(),
            hyper_slot: Vec::new(),
            half_add: Vec::new(),
        };
        if !f.is_even() {
            g.half_add = (0..q3 * q3)
                .into_par_iter()
                .map(|ab| {
                    let (a, b) = (ab / q3, ab % q3);
                    let mut out = 0;
                    let mut scale = 1;
                    let (mut a, mut b) = (a, b);
                    for _ in 0..3 {
                        out += f.add(a % q, b % q) * scale;
                        a /= q;
                        b /= q;
                        scale *= q;
                    }
                    out
                })
                .collect();
        }
        let size = (q3 * q3) as usize;
        let field: &Gf = f;
        g.point_slot = (0..size)
            .into_par_iter()
            .map(|i| if i == 0 { u8::MAX } else { classify_point(field, &g.decode(i as u32)).slot() })
            .collect();
        g.hyper_slot = (0..size)
            .into_par_iter()
            .map(|i| {
                if i == 0 {
                    u8::MAX
                } else {
                    classify_hyperplane_fast(field, &g.decode(i as u32)).slot()
                }
            })
            .collect();
        Ok(g)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of packed vectors, `q^6`.
    pub fn size(&self) -> u32 {
        self.q3 * self.q3
    }

    #[inline]
    pub fn encode(&self, y: &[Elem]) -> u32 {
        y.iter().zip(&self.place).map(|(&c, &p)| c * p).sum()
    }

    #[inline]
    pub fn decode(&self, mut idx: u32) -> Coords6 {
        let mut y = [0; 6];
        for c in y.iter_mut().rev() {
            *c = idx % self.q;
            idx /= self.q;
        }
        y
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.half_add.is_empty() {
            a ^ b
        } else {
            let q3 = self.q3;
            let hi = self.half_add[((a / q3) * q3 + b / q3) as usize];
            let lo = self.half_add[((a % q3) * q3 + b % q3) as usize];
            hi * q3 + lo
        }
    }

    pub fn scale(&self, c: Elem, idx: u32) -> u32 {
        let y = self.decode(idx);
        let z: Vec<Elem> = y.iter().map(|&x| self.f.mul(c, x)).collect();
        self.encode(&z)
    }

    /// Packed vector of the normalized representative.
    pub fn normalize(&self, idx: u32) -> u32 {
        let mut y = self.decode(idx);
        pg::normalize(&self.f, &mut y);
        self.encode(&y)
    }

    /// Orbit slot of a point: 0 rank 1, 1 for P2n/P2e, 2 for P2s/P2i, 3 rank 3.
    #[inline]
    pub fn point_slot(&self, idx: u32) -> u8 {
        self.point_slot[idx as usize]
    }

    /// Orbit slot of a hyperplane given by packed dual coordinates: 0 H1, 1 H2r, 2 H2i, 3 H3.
    #[inline]
    pub fn hyper_slot(&self, idx: u32) -> u8 {
        self.hyper_slot[idx as usize]
    }

    pub fn rank(&self, idx: u32) -> u8 {
        match self.point_slot(idx) {
            0 => 1,
            1 | 2 => 2,
            _ => 3,
        }
    }

    /// Appends one packed vector per point of the span of the independent `rows`.
    /// The vectors come out normalized when `rows` is in RREF.
    pub fn points_into(&self, rows: &[u32], out: &mut Vec<u32>) {
        let mults: Vec<Vec<u32>> = rows
            .iter()
            .map(|&r| (0..self.q).map(|c| self.scale(c, r)).collect())
            .collect();
        for lead in 0..rows.len() {
            self.extend_points(&mults[lead + 1..], rows[lead], out);
        }
    }

    fn extend_points(&self, mults: &[Vec<u32>], acc: u32, out: &mut Vec<u32>) {
        match mults.split_first() {
            None => out.push(acc),
            Some((first, rest)) => {
                for &m in first {
                    self.extend_points(rest, self.add(acc, m), out);
                }
            }
        }
    }

    pub fn points(&self, rows: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        self.points_into(rows, &mut out);
        out
    }

    pub fn rows_of(&self, w: &Subspace) -> Vec<u32> {
        w.rows().iter().map(|r| self.encode(r)).collect()
    }

    pub fn subspace(&self, rows: &[u32]) -> Subspace {
        let rs: Vec<Vec<Elem>> = rows.iter().map(|&r| self.decode(r).to_vec()).collect();
        pg::canonicalize(&self.f, &rs).expect("rows are nonzero")
    }

    /// RREF rows (packed) of the span of `rows`.
    pub fn canonical(&self, rows: &[u32]) -> Vec<u32> {
        let mut rs: Vec<Vec<Elem>> = rows.iter().map(|&r| self.decode(r).to_vec()).collect();
        pg::rref(&self.f, &mut rs);
        rs.iter().map(|r| self.encode(r)).collect()
    }

    /// Packed basis of the dual subspace of the span of RREF `rows`; empty for the whole space.
    pub fn annihilator(&self, rows: &[u32]) -> Vec<u32> {
        let decoded: Vec<Coords6> = rows.iter().map(|&r| self.decode(r)).collect();
        let pivots: Vec<usize> = decoded
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect();
        let mut out = Vec::with_capacity(6 - rows.len());
        for c in (0..6).filter(|c| !pivots.contains(c)) {
            let mut v = [0; 6];
            v[c] = 1;
            for (r, &p) in decoded.iter().zip(&pivots) {
                v[p] = self.f.neg(r[c]);
            }
            out.push(self.encode(&v));
        }
        out
    }

    /// Point-orbit counts of the span of `rows`.
    pub fn od0(&self, rows: &[u32], buf: &mut Vec<u32>) -> [u64; 4] {
        buf.clear();
        self.points_into(rows, buf);
        let mut od = [0u64; 4];
        for &p in buf.iter() {
            od[self.point_slot(p) as usize] += 1;
        }
        od
    }

    /// Hyperplane-orbit counts over the hyperplanes containing the span of RREF `rows`.
    pub fn od4(&self, rows: &[u32], buf: &mut Vec<u32>) -> [u64; 4] {
        let ann = self.annihilator(rows);
        let mut od = [0u64; 4];
        if ann.is_empty() {
            return od;
        }
        buf.clear();
        self.points_into(&ann, buf);
        for &h in buf.iter() {
            od[self.hyper_slot(h) as usize] += 1;
        }
        od
    }

    /// Minimum rank over the points of the span.
    pub fn min_rank(&self, rows: &[u32], buf: &mut Vec<u32>) -> u8 {
        buf.clear();
        self.points_into(rows, buf);
        buf.iter().map(|&p| self.rank(p)).min().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::parse_field_spec;
    use crate::invariants::classify_hyperplane;
    use std::collections::HashSet;

    #[test]
    fn packing_round_trips_and_orders_lexicographically() {
        let f = parse_field_spec("5").unwrap();
        let g = Pg5::new(&f).unwrap();
        let a = [0, 1, 2, 3, 4, 0];
        assert_eq!(g.decode(g.encode(&a)), a);
        assert!(g.encode(&[0, 1, 0, 0, 0, 0]) > g.encode(&[0, 0, 4, 4, 4, 4]));
        for (x, y) in [(7u32, 12_000u32), (15_624, 1), (3906, 3906)] {
            let s = g.add(x, y);
            let (dx, dy) = (g.decode(x), g.decode(y));
            let expect: Vec<Elem> = dx.iter().zip(&dy).map(|(&a, &b)| f.add(a, b)).collect();
            assert_eq!(g.decode(s).to_vec(), expect);
        }
    }

    #[test]
    fn subspace_points_match_generic_enumeration() {
        for q in ["3", "4", "5"] {
            let f = parse_field_spec(q).unwrap();
            let g = Pg5::new(&f).unwrap();
            let e = pg::SubspaceEnumerator::new(f.q(), 6, 3);
            for i in (0..e.len()).step_by(1009) {
                let w = e.get(i);
                let fast: Vec<u32> = g.points(&g.rows_of(&w));
                let slow: Vec<u32> = w.points(&f).iter().map(|p| g.encode(p.coords())).collect();
                assert_eq!(fast.iter().collect::<HashSet<_>>(), slow.iter().collect::<HashSet<_>>());
                assert_eq!(fast.len(), slow.len());
                let ann = g.annihilator(&g.rows_of(&w));
                assert_eq!(g.subspace(&ann), w.annihilator(&f).unwrap());
            }
        }
    }

    #[test]
    fn fast_hyperplane_classes_agree_with_zero_sets() {
        for q in ["2", "3", "4", "5", "7", "8"] {
            let f = parse_field_spec(q).unwrap();
            let g = Pg5::new(&f).unwrap();
            for p in Subspace::whole(6).points(&f) {
                let slow = classify_hyperplane(&f, p.coords().try_into().unwrap()).unwrap();
                assert_eq!(g.hyper_slot(g.encode(p.coords())), slow.slot());
            }
        }
    }

    #[test]
    fn scalar_multiples_share_classes() {
        let f = parse_field_spec("7").unwrap();
        let g = Pg5::new(&f).unwrap();
        for idx in (1..g.size()).step_by(331) {
            for c in 2..7 {
                let m = g.scale(c, idx);
                assert_eq!(g.point_slot(idx), g.point_slot(m));
                assert_eq!(g.hyper_slot(idx), g.hyper_slot(m));
            }
        }
    }

    #[test]
    fn size_limits() {
        assert!(Pg5::new(&parse_field_spec("16").unwrap()).is_ok());
        assert!(matches!(Pg5::new(&parse_field_spec("17").unwrap()), Err(Error::Unsupported(_))));
    }
}
