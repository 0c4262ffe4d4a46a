//! Symmetric rank-distance codes of 3x3 matrices as subspaces of PG(5, q).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Pg5;
use crate::gf::{cubic_extension, parse_field_spec, Elem, FieldCtx, Gf};
use crate::invariants::{min_rank_of, ranks_of, Od};
use crate::pg::{self, Subspace};
use crate::veronese::{sym_coords, sym_matrix, Coords6, Mat3};

/// An F_q-linear code given by a basis of symmetric matrices.
#[derive(Clone, Debug)]
pub struct SrdCode {
    field: FieldCtx,
    basis: Vec<Mat3>,
    subspace: Subspace,
}

impl SrdCode {
    /// Validates entries, symmetry and independence.
    pub fn new(f: &FieldCtx, basis: Vec<Mat3>) -> Result<SrdCode> {
        if basis.is_empty() {
            return Err(Error::Malformed("empty basis".into()));
        }
        let mut rows = Vec::with_capacity(basis.len());
        for (n, m) in basis.iter().enumerate() {
            if m.iter().flatten().any(|&e| e >= f.q()) {
                return Err(Error::EntryOutOfRange(n));
            }
            let y = sym_coords(m).ok_or(Error::NotSymmetric(n))?;
            rows.push(y.to_vec());
        }
        let subspace = pg::canonicalize(f, &rows)?;
        if subspace.dim() != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(SrdCode {
            field: f.clone(),
            basis,
            subspace,
        })
    }

    /// The code whose basis is the RREF basis of `w`.
    pub fn from_subspace(f: &FieldCtx, w: &Subspace) -> SrdCode {
        let basis = w.rows().iter().map(|r| sym_matrix(&to6(r))).collect();
        SrdCode {
            field: f.clone(),
            basis,
            subspace: w.clone(),
        }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn basis(&self) -> &[Mat3] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Number of codewords, `q^k`.
    pub fn size(&self) -> u64 {
        (self.field.q() as u64).pow(self.dim() as u32)
    }
}

fn to6(r: &[Elem]) -> Coords6 {
    r.try_into().expect("six coordinates")
}

/// Upper bound on the dimension of an n x n symmetric code with minimum distance d.
pub fn dim_bound(n: u32, d: u32) -> Result<u32> {
    if d == 0 || d > n {
        return Err(Error::Malformed(format!("minimum distance {d} outside 1..={n}")));
    }
    Ok(if (n - d) % 2 == 0 {
        n * (n - d + 2) / 2
    } else {
        (n + 1) * (n - d + 1) / 2
    })
}

/// Class labels of complete codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    #[serde(rename = "Omega_8,2")]
    Omega8_2,
    #[serde(rename = "Omega_14,2")]
    Omega14_2,
    #[serde(rename = "Omega_15,2")]
    Omega15_2,
    #[serde(rename = "Omega_7")]
    Omega7,
    #[serde(rename = "Omega_13")]
    Omega13,
    #[serde(rename = "Omega_14")]
    Omega14,
    #[serde(rename = "Sigma_N")]
    SigmaN,
    #[serde(rename = "Sigma_16")]
    Sigma16,
    #[serde(rename = "Sigma_18")]
    Sigma18,
    #[serde(rename = "GF_type")]
    GfType,
    #[serde(rename = "TF_type")]
    TfType,
    WholeSpace,
    NotComplete,
}

impl ClassLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Omega8_2 => "Omega_8,2",
            ClassLabel::Omega14_2 => "Omega_14,2",
            ClassLabel::Omega15_2 => "Omega_15,2",
            ClassLabel::Omega7 => "Omega_7",
            ClassLabel::Omega13 => "Omega_13",
            ClassLabel::Omega14 => "Omega_14",
            ClassLabel::SigmaN => "Sigma_N",
            ClassLabel::Sigma16 => "Sigma_16",
            ClassLabel::Sigma18 => "Sigma_18",
            ClassLabel::GfType => "GF_type",
            ClassLabel::TfType => "TF_type",
            ClassLabel::WholeSpace => "WholeSpace",
            ClassLabel::NotComplete => "NotComplete",
        }
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything reported about a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeSummary {
    pub field: String,
    pub dim: usize,
    pub min_distance: u8,
    pub size: u64,
    /// `[r0, r1, r2, r3]` over all codewords.
    pub rank_distribution: [u64; 4],
    pub od0: Od,
    pub is_msrd: bool,
    pub is_complete: bool,
    pub class: ClassLabel,
}

/// PG(5, q) tables plus the normalized points of rank at most 1 and 2.
pub struct CodeSpace {
    g: Pg5,
    /// `low[r]` lists the points of rank `<= r`, for r = 1, 2.
    low: [Vec<Coords6>; 3],
}

impl CodeSpace {
    pub fn new(f: &FieldCtx) -> Result<CodeSpace> {
        let g = Pg5::new(f)?;
        let mut low: [Vec<Coords6>; 3] = Default::default();
        for idx in 1..g.size() {
            if g.normalize(idx) != idx {
                continue;
            }
            let r = g.rank(idx) as usize;
            for slot in low.iter_mut().skip(r) {
                slot.push(g.decode(idx));
            }
        }
        Ok(CodeSpace { g, low })
    }

    pub fn pg(&self) -> &Pg5 {
        &self.g
    }

    pub fn field(&self) -> &FieldCtx {
        self.g.field()
    }

    pub fn od0(&self, w: &Subspace) -> Od {
        self.g.od0(&self.g.rows_of(w), &mut Vec::new())
    }

    pub fn min_rank(&self, w: &Subspace) -> u8 {
        min_rank_of(&self.od0(w))
    }

    pub fn min_distance(&self, c: &SrdCode) -> u8 {
        self.min_rank(c.subspace())
    }

    /// Codeword rank distribution: `r0 = 1`, `r_i = (q - 1) r_i(subspace)`.
    pub fn rank_distribution(&self, c: &SrdCode) -> [u64; 4] {
        let r = ranks_of(&self.od0(c.subspace()));
        let m = self.field().q() as u64 - 1;
        [1, m * r[0], m * r[1], m * r[2]]
    }

    pub fn is_msrd(&self, c: &SrdCode) -> bool {
        let d = self.min_distance(c) as u32;
        dim_bound(3, d).map(|b| b as usize == c.dim()).unwrap_or(false)
    }

    /// Quotient marks of all points of rank below `d`, indexed by the
    /// normalized non-pivot coordinates of their reduction modulo `w`.
    fn coverage(&self, w: &Subspace, d: u8) -> (Vec<bool>, Vec<usize>) {
        let f: &Gf = self.field();
        let q = f.q() as usize;
        let pivots = w.pivots();
        let free: Vec<usize> = (0..6).filter(|c| !pivots.contains(c)).collect();
        let mut marks = vec![false; q.pow(free.len() as u32)];
        if d >= 2 {
            for p in &self.low[d as usize - 1] {
                if let Some(i) = quotient_index(f, w, &free, p) {
                    marks[i] = true;
                }
            }
        }
        (marks, free)
    }

    /// A subspace of minimum rank `d` is complete when every point outside it
    /// spans, together with it, some point of rank below `d`.
    pub fn is_complete_subspace(&self, w: &Subspace) -> bool {
        let d = self.min_rank(w);
        let (marks, free) = self.coverage(w, d);
        let q = self.field().q() as usize;
        // Every nonzero normalized quotient vector must be covered.
        (1..q.pow(free.len() as u32)).all(|i| marks[i] || !is_normalized_index(i, q))
    }

    pub fn is_complete(&self, c: &SrdCode) -> bool {
        self.is_complete_subspace(c.subspace())
    }

    /// Points over GF(q^3) of rank one on the scalar extension of `w`.
    pub fn extension_rank_one_count(&self, w: &Subspace) -> Result<usize> {
        extension_rank_one_count(self.field(), w)
    }

    pub fn classify(&self, c: &SrdCode) -> Result<ClassLabel> {
        self.classify_subspace(c.subspace())
    }

    pub fn classify_subspace(&self, w: &Subspace) -> Result<ClassLabel> {
        if !self.is_complete_subspace(w) {
            return Ok(ClassLabel::NotComplete);
        }
        let od0 = self.od0(w);
        let d = min_rank_of(&od0);
        let q = self.field().q() as u64;
        let even = self.field().is_even();
        let r3 = od0[3];
        let label = match (d, w.dim()) {
            (1, _) => Some(ClassLabel::WholeSpace),
            (2, 4) if r3 == q * q * q - q => Some(if even { ClassLabel::Omega7 } else { ClassLabel::Omega8_2 }),
            (2, 4) if r3 == q * q * q - 2 * q => Some(if even { ClassLabel::Omega13 } else { ClassLabel::Omega14_2 }),
            (2, 4) if r3 == q * q * q => Some(if even { ClassLabel::Omega14 } else { ClassLabel::Omega15_2 }),
            (2, 3) if even && r3 == 0 => Some(ClassLabel::SigmaN),
            (2, 3) if even && r3 == q * q => Some(ClassLabel::Sigma16),
            (2, 3) if even && r3 == q * q + q => Some(ClassLabel::Sigma18),
            (3, 3) => match self.extension_rank_one_count(w)? {
                3 => Some(ClassLabel::GfType),
                0 => Some(ClassLabel::TfType),
                _ => None,
            },
            _ => None,
        };
        label.ok_or_else(|| {
            Error::Inconsistent(format!(
                "complete subspace of dimension {} with OD0 {od0:?} matches no class",
                w.dim()
            ))
        })
    }

    /// Greedily adjoins the first point, in packed order, that keeps the minimum rank.
    pub fn extend_to_complete(&self, c: &SrdCode) -> SrdCode {
        let f = self.field();
        let d = self.min_distance(c);
        let q = f.q() as usize;
        let mut w = c.subspace().clone();
        loop {
            let (marks, free) = self.coverage(&w, d);
            let open = (1..q.pow(free.len() as u32)).find(|&i| !marks[i] && is_normalized_index(i, q));
            let Some(i) = open else { break };
            // Lift the quotient point back: coordinates on the free columns.
            let mut v = [0; 6];
            let mut rest = i;
            for &col in free.iter().rev() {
                v[col] = (rest % q) as Elem;
                rest /= q;
            }
            w = w.join_vector(f, &v);
        }
        SrdCode::from_subspace(f, &w)
    }

    pub fn summary(&self, c: &SrdCode) -> Result<CodeSummary> {
        let od0 = self.od0(c.subspace());
        Ok(CodeSummary {
            field: self.field().spec_string(),
            dim: c.dim(),
            min_distance: min_rank_of(&od0),
            size: c.size(),
            rank_distribution: self.rank_distribution(c),
            od0,
            is_msrd: self.is_msrd(c),
            is_complete: self.is_complete(c),
            class: self.classify(c)?,
        })
    }
}

fn quotient_index(f: &Gf, w: &Subspace, free: &[usize], p: &Coords6) -> Option<usize> {
    let r = w.reduce(f, p);
    let mut v: Vec<Elem> = free.iter().map(|&c| r[c]).collect();
    if !pg::normalize(f, &mut v) {
        return None;
    }
    let q = f.q() as usize;
    Some(v.iter().fold(0, |acc, &x| acc * q + x as usize))
}

/// Whether the base-q digits of `i` start with a 1 after leading zeros.
fn is_normalized_index(mut i: usize, q: usize) -> bool {
    let mut lead = 0;
    while i > 0 {
        lead = i % q;
        i /= q;
    }
    lead == 1
}

/// Number of points `u` of PG(2, q^3) with `nu(u)` in the scalar extension of `w`.
pub fn extension_rank_one_count(f: &FieldCtx, w: &Subspace) -> Result<usize> {
    let e = cubic_extension(f)?;
    let ext = e.ext();
    let duals: Vec<Coords6> = match w.annihilator(f) {
        None => return Ok((ext.q() * ext.q() + ext.q() + 1) as usize),
        Some(a) => a.rows().iter().map(|r| to6(r).map(|c| e.embed(c))).collect(),
    };
    let on_all = |u: [Elem; 3]| {
        let nu = crate::veronese::veronese(ext, &u);
        duals.iter().all(|a| pg::dot(ext, a, &nu) == 0)
    };
    let n = ext.q();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            count += on_all([1, a, b]) as usize;
        }
        count += on_all([0, 1, a]) as usize;
    }
    count += on_all([0, 0, 1]) as usize;
    Ok(count)
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    field: String,
    basis: Vec<Vec<Vec<i64>>>,
}

/// Parses `{"field": "p^h", "basis": [3x3 matrices]}`.
pub fn parse_code(json: &str) -> Result<SrdCode> {
    let raw: CodeJson = serde_json::from_str(json).map_err(|e| Error::Malformed(format!("code JSON: {e}")))?;
    let f = parse_field_spec(&raw.field)?;
    let mut basis = Vec::with_capacity(raw.basis.len());
    for (n, m) in raw.basis.iter().enumerate() {
        if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
            return Err(Error::Malformed(format!("matrix {n} is not 3x3")));
        }
        let mut out = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let e = m[i][j];
                if e < 0 || e >= f.q() as i64 {
                    return Err(Error::EntryOutOfRange(n));
                }
                out[i][j] = e as Elem;
            }
        }
        basis.push(out);
    }
    SrdCode::new(&f, basis)
}

pub fn emit_code(c: &SrdCode) -> String {
    let raw = CodeJson {
        field: c.field().spec_string(),
        basis: c
            .basis()
            .iter()
            .map(|m| m.iter().map(|r| r.iter().map(|&e| e as i64).collect()).collect())
            .collect(),
    };
    serde_json::to_string(&raw).expect("plain data serializes")
}
