//! Exact arithmetic in GF(p^h) for small prime powers.
//!
//! Elements are encoded as integers in `[0, q)`: the residue polynomial
//! `c_0 + c_1 x + ... + c_{h-1} x^{h-1}` is stored as `sum c_i p^i`. Addition
//! is digit-wise mod `p`; multiplication goes through exp/log tables built
//! from a primitive element found at construction time.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Raw field element. Only meaningful together with the [`Gf`] it came from.
pub type Elem = u32;

/// Largest field order accepted by [`make_field`].
pub const DEFAULT_CEILING: u32 = 4096;
/// Largest extension degree accepted by [`make_field`].
pub const MAX_DEGREE: u32 = 6;

const ADD_TABLE_LIMIT: u32 = 256;

pub struct Gf {
    p: u32,
    h: u32,
    q: u32,
    /// `c_0..c_{h-1}` of the monic modulus; empty for prime fields.
    modulus: Vec<u32>,
    default_modulus: bool,
    primitive: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    add_table: Option<Vec<Elem>>,
}

/// Shared handle to an immutable field.
pub type FieldCtx = Arc<Gf>;

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for Gf {}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.spec_string())
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Field with the default modulus: the monic irreducible of degree `h` whose
/// coefficients `(c_0, .., c_{h-1})`, read as the integer `sum c_i p^i`, is
/// smallest.
pub fn make_field(p: u32, h: u32) -> Result<FieldCtx> {
    make_field_with_ceiling(p, h, DEFAULT_CEILING)
}

pub fn make_field_with_ceiling(p: u32, h: u32, ceiling: u32) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(1..=MAX_DEGREE).contains(&h) {
        return Err(Error::DegreeOutOfRange(h, MAX_DEGREE));
    }
    check_ceiling(p, h, ceiling)?;
    Ok(Arc::new(Gf::build(p, h, default_modulus(p, h), true)))
}

/// Field with an explicit modulus given as `c_0..c_{h-1}` (monic leading term implied).
pub fn make_field_with_modulus(p: u32, h: u32, coeffs: &[u32]) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(1..=MAX_DEGREE).contains(&h) {
        return Err(Error::DegreeOutOfRange(h, MAX_DEGREE));
    }
    check_ceiling(p, h, DEFAULT_CEILING)?;
    if coeffs.len() != h as usize || coeffs.iter().any(|&c| c >= p) {
        return Err(Error::FieldSpec(format!("modulus coefficients {coeffs:?}")));
    }
    if h == 1 {
        return Ok(Arc::new(Gf::build(p, 1, Vec::new(), true)));
    }
    let mut poly = coeffs.to_vec();
    poly.push(1);
    if !poly_is_irreducible(&poly, p) {
        return Err(Error::ReducibleModulus(p));
    }
    let default = default_modulus(p, h) == coeffs;
    Ok(Arc::new(Gf::build(p, h, coeffs.to_vec(), default)))
}

fn check_ceiling(p: u32, h: u32, ceiling: u32) -> Result<()> {
    let q = (p as u64).checked_pow(h).unwrap_or(u64::MAX);
    if q > ceiling as u64 {
        return Err(Error::CeilingExceeded { p, h, ceiling });
    }
    Ok(())
}

fn default_modulus(p: u32, h: u32) -> Vec<u32> {
    if h == 1 {
        return Vec::new();
    }
    let count = p.pow(h);
    for n in 0..count {
        let mut poly = digits(n, p, h);
        poly.push(1);
        if poly_is_irreducible(&poly, p) {
            poly.pop();
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut n: u32, p: u32, h: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(h as usize);
    for _ in 0..h {
        out.push(n % p);
        n /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo `m` over GF(p); `m` must have a nonzero leading coefficient.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let factor = r[dr] * lead_inv % p;
        if factor != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = dr - dm + i;
                r[idx] = (r[idx] + p - (factor * c) % p) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

/// Irreducibility over GF(p) by trial division with every monic polynomial of
/// degree at most half the degree. `poly` is given low-to-high.
pub fn poly_is_irreducible(poly: &[u32], p: u32) -> bool {
    let mut f = poly.to_vec();
    poly_trim(&mut f);
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for deg in 1..=d / 2 {
        for n in 0..p.pow(deg as u32) {
            let mut g = digits(n, p, deg as u32);
            g.push(1);
            let r = poly_rem(&f, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Gf {
    fn build(p: u32, h: u32, modulus: Vec<u32>, default_modulus: bool) -> Gf {
        let q = p.pow(h);
        let mut f = Gf {
            p,
            h,
            q,
            modulus,
            default_modulus,
            primitive: 1,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        f.neg = (0..q).map(|a| f.digit_neg(a)).collect();
        if q <= ADD_TABLE_LIMIT {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = f.digit_add(a, b);
                }
            }
            f.add_table = Some(t);
        }
        let g = (1..q)
            .find(|&g| f.slow_order(g) == q - 1)
            .expect("multiplicative group is cyclic");
        f.primitive = g;
        let n = (q - 1) as usize;
        let mut exp = vec![0; 2 * n.max(1)];
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for (i, slot) in exp.iter_mut().enumerate().take(n) {
            *slot = x;
            log[x as usize] = i as u32;
            x = f.slow_mul(x, g);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        f.exp = exp;
        f.log = log;
        f
    }

    fn digit_add(&self, a: Elem, b: Elem) -> Elem {
        if self.h == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.h {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn digit_neg(&self, a: Elem) -> Elem {
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.h {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        if self.h == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as Elem;
        }
        let p = self.p;
        let h = self.h as usize;
        let da = digits(a, p, self.h);
        let db = digits(b, p, self.h);
        let mut prod = vec![0u32; 2 * h - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // x^h = -(c_0 + ... + c_{h-1} x^{h-1})
        for k in (h..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = k - h + i;
                prod[idx] = (prod[idx] + p - (c * m) % p) % p;
            }
        }
        undigits(&prod[..h], p)
    }

    fn slow_order(&self, g: Elem) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.slow_mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    /// Modulus coefficients `c_0..c_{h-1}`; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_default_modulus(&self) -> bool {
        self.default_modulus
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// `"p^h"`, or `"p^h/c_{h-1}...c_0"` for a non-default modulus.
    pub fn spec_string(&self) -> String {
        if self.default_modulus {
            format!("{}^{}", self.p, self.h)
        } else {
            let sep = if self.p > 10 { "," } else { "" };
            let cs: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
            format!("{}^{}/{}", self.p, self.h, cs.join(sep))
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.digit_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Inverse of a nonzero element.
    ///
    /// Panics on zero; use [`Gf::try_inv`] when the argument may vanish.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv(a))
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[l as usize]
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    /// Discrete log to the base [`Gf::primitive`]; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Square test for odd q; zero counts as a square.
    pub fn is_square(&self, a: Elem) -> Result<bool> {
        if self.is_even() {
            return Err(Error::Parity("odd"));
        }
        Ok(a == 0 || self.log[a as usize] % 2 == 0)
    }

    /// Absolute trace to GF(2): `a + a^2 + ... + a^(2^(h-1))`.
    pub fn trace2(&self, a: Elem) -> Result<Elem> {
        if !self.is_even() {
            return Err(Error::Parity("even"));
        }
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.h {
            acc = self.add(acc, x);
            x = self.mul(x, x);
        }
        Ok(acc)
    }

    /// Absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    pub fn element(self: &Arc<Self>, value: Elem) -> FieldElement {
        assert!(value < self.q, "value {value} outside GF({})", self.q);
        FieldElement {
            field: Arc::clone(self),
            value,
        }
    }
}

/// A field element bound to its field. Mixed-field arithmetic is an error.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldCtx,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.value, self.field)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl FieldElement {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.mul(self.value, other.value)))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.field.try_inv(self.value).map(|v| self.field.element(v))
    }
}

/// GF(q^3) over GF(q) with the subfield embedding and relative Frobenius.
pub struct CubicExtension {
    base: FieldCtx,
    ext: FieldCtx,
    embed: Vec<Elem>,
    restrict: Vec<Option<Elem>>,
}

/// Builds GF(p^{3h}) with its default modulus and embeds `base` via a root of
/// the base modulus (the smallest such root in the element encoding).
pub fn cubic_extension(base: &FieldCtx) -> Result<CubicExtension> {
    cubic_extension_with_ceiling(base, DEFAULT_CEILING)
}

pub fn cubic_extension_with_ceiling(base: &FieldCtx, ceiling: u32) -> Result<CubicExtension> {
    let (p, h) = (base.p, base.h);
    check_ceiling(p, 3 * h, ceiling)?;
    let ext = Arc::new(Gf::build(p, 3 * h, default_modulus(p, 3 * h), true));
    let root = if h == 1 {
        0
    } else {
        let eval = |x: Elem| {
            // modulus(x) = x^h + sum c_i x^i, coefficients live in the prime field
            let mut acc = ext.pow(x, h as u64);
            for (i, &c) in base.modulus.iter().enumerate() {
                acc = ext.add(acc, ext.mul(c, ext.pow(x, i as u64)));
            }
            acc
        };
        ext.elements()
            .find(|&x| eval(x) == 0)
            .expect("base modulus splits in the extension")
    };
    let embed: Vec<Elem> = base
        .elements()
        .map(|a| {
            if h == 1 {
                a
            } else {
                digits(a, p, h)
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (i, &c)| ext.add(acc, ext.mul(c, ext.pow(root, i as u64))))
            }
        })
        .collect();
    let mut restrict = vec![None; ext.q as usize];
    for (a, &e) in embed.iter().enumerate() {
        restrict[e as usize] = Some(a as Elem);
    }
    Ok(CubicExtension {
        base: Arc::clone(base),
        ext,
        embed,
        restrict,
    })
}

impl CubicExtension {
    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a as usize]
    }

    pub fn embed_element(&self, a: &FieldElement) -> Result<FieldElement> {
        if *a.field != *self.base {
            return Err(Error::FieldMismatch);
        }
        Ok(self.ext.element(self.embed(a.value)))
    }

    /// Preimage under the embedding, if `x` lies in the subfield.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        self.restrict[x as usize]
    }

    /// Relative Frobenius `x -> x^q`.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.ext.pow(x, self.base.q as u64)
    }

    /// Relative trace `x + x^q + x^{q^2}`, pulled back to the base field.
    pub fn trace(&self, x: Elem) -> Elem {
        let x1 = self.frobenius(x);
        let x2 = self.frobenius(x1);
        let t = self.ext.add(self.ext.add(x, x1), x2);
        self.restrict(t).expect("relative trace lands in the base field")
    }
}

/// Parses `"q"`, `"p^h"` or `"p^h/c_{h-1}...c_0"` (comma separated when p > 10).
pub fn parse_field_spec(spec: &str) -> Result<FieldCtx> {
    let bad = || Error::FieldSpec(spec.to_string());
    let spec = spec.trim();
    let (head, modulus) = match spec.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let (p, h) = match head.split_once('^') {
        Some((p, h)) => (
            p.trim().parse::<u32>().map_err(|_| bad())?,
            h.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => {
            let q: u32 = head.trim().parse().map_err(|_| bad())?;
            prime_power(q).ok_or_else(bad)?
        }
    };
    match modulus {
        None => make_field(p, h),
        Some(m) => {
            let mut cs: Vec<u32> = if m.contains(',') {
                m.split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<_>>()?
            } else {
                m.chars()
                    .map(|c| c.to_digit(10).ok_or_else(bad))
                    .collect::<Result<_>>()?
            };
            cs.reverse();
            make_field_with_modulus(p, h, &cs)
        }
    }
}

/// `(p, h)` with `p^h = q`, if q is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut n = q;
    let mut h = 0;
    while n % p == 0 {
        n /= p;
        h += 1;
    }
    (n == 1).then_some((p, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_axioms(f: &Gf) {
        for a in f.elements() {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                for c in f.elements() {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_exhaustively_up_to_16() {
        for (p, h) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            field_axioms(&make_field(p, h).unwrap());
        }
    }

    #[test]
    fn default_moduli() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1]);
        assert!(make_field(3, 1).unwrap().modulus().is_empty());
        // x^3 + x + 1 beats x^3 + x^2 + 1
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0]);
    }

    #[test]
    fn degree_three_search_matches_brute_force() {
        // every cubic over GF(2) without a root is irreducible
        let mut first = None;
        for n in 0..8u32 {
            let c = [n & 1, (n >> 1) & 1, (n >> 2) & 1];
            let f = |x: u32| (x * x * x + c[2] * x * x + c[1] * x + c[0]) % 2;
            if f(0) != 0 && f(1) != 0 {
                first = Some(c);
                break;
            }
        }
        assert_eq!(first.unwrap().as_slice(), make_field(2, 3).unwrap().modulus());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 7), Err(Error::DegreeOutOfRange(7, _))));
        assert!(matches!(make_field(2, 0), Err(Error::DegreeOutOfRange(0, _))));
        assert!(matches!(make_field(17, 3), Err(Error::CeilingExceeded { .. })));
        assert_eq!(make_field_with_modulus(2, 2, &[0, 1]).unwrap_err(), Error::ReducibleModulus(2));
    }

    #[test]
    fn squares() {
        let f3 = make_field(3, 1).unwrap();
        assert!(!f3.is_square(2).unwrap());
        let f5 = make_field(5, 1).unwrap();
        assert!(f5.is_square(4).unwrap());
        let f7 = make_field(7, 1).unwrap();
        let sq: Vec<u32> = (0..7).map(|b| b * b % 7).collect();
        assert!(sq.contains(&2));
        assert!(f7.is_square(2).unwrap());
        assert_eq!(make_field(2, 2).unwrap().is_square(1), Err(Error::Parity("odd")));
        for (p, h) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1)] {
            let f = make_field(p, h).unwrap();
            let brute: std::collections::HashSet<u32> = f.elements().map(|b| f.mul(b, b)).collect();
            for a in f.elements() {
                assert_eq!(f.is_square(a).unwrap(), brute.contains(&a));
            }
            assert_eq!(brute.len() as u32, (f.q() + 1) / 2);
        }
    }

    #[test]
    fn traces() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.trace2(1).unwrap(), 0);
        // omega is encoded as 2 (the residue x); omega + omega^2 = 1
        assert_eq!(f4.trace2(2).unwrap(), 1);
        let f8 = make_field(2, 3).unwrap();
        assert_eq!(f8.trace2(1).unwrap(), 1);
        assert!(make_field(3, 1).unwrap().trace2(1).is_err());
        for h in 1..=5 {
            let f = make_field(2, h).unwrap();
            let zeros = f.elements().filter(|&a| f.trace2(a).unwrap() == 0).count();
            assert_eq!(zeros as u32, f.q() / 2);
        }
    }

    #[test]
    fn cross_field_is_rejected() {
        let f3 = make_field(3, 1).unwrap();
        let f5 = make_field(5, 1).unwrap();
        let a = f3.element(1);
        let b = f5.element(1);
        assert_eq!(a.try_add(&b).unwrap_err(), Error::FieldMismatch);
        assert_eq!(a.try_mul(&f3.element(2)).unwrap().value(), 2);
        let other = parse_field_spec("3").unwrap();
        assert!(a.try_add(&other.element(2)).is_ok());
    }

    #[test]
    fn cubic_extensions() {
        let f2 = make_field(2, 1).unwrap();
        let e = cubic_extension(&f2).unwrap();
        assert_eq!(e.ext().q(), 8);
        for x in e.ext().elements() {
            let y = e.frobenius(e.frobenius(e.frobenius(x)));
            assert_eq!(y, x);
        }
        assert!(e.ext().elements().any(|x| e.frobenius(x) != x));

        let f3 = make_field(3, 1).unwrap();
        let e = cubic_extension(&f3).unwrap();
        assert_eq!(e.ext().q(), 27);
        let two = e.embed(2);
        assert_eq!(e.ext().add(two, e.embed(1)), 0);

        let f4 = make_field(2, 2).unwrap();
        let e = cubic_extension(&f4).unwrap();
        assert_eq!(e.ext().q(), 64);
        let fixed: Vec<u32> = e.ext().elements().filter(|&x| e.frobenius(x) == x).collect();
        assert_eq!(fixed.len(), 4);
        for x in fixed {
            assert!(e.restrict(x).is_some());
        }
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.embed(f4.mul(a, b)), e.ext().mul(e.embed(a), e.embed(b)));
                assert_eq!(e.embed(f4.add(a, b)), e.ext().add(e.embed(a), e.embed(b)));
            }
        }
        let bad = f4.element(1);
        assert_eq!(e.embed_element(&f3.element(1)).unwrap_err(), Error::FieldMismatch);
        assert_eq!(e.embed_element(&bad).unwrap().value(), 1);
    }

    #[test]
    fn relative_trace_is_surjective_and_linear() {
        for q in [2u32, 3, 4, 5] {
            let f = parse_field_spec(&q.to_string()).unwrap();
            let e = cubic_extension(&f).unwrap();
            let mut counts = vec![0; q as usize];
            for x in e.ext().elements() {
                counts[e.trace(x) as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == (q * q) as usize));
        }
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("4").unwrap().spec_string(), "2^2");
        assert_eq!(parse_field_spec("3^1").unwrap().q(), 3);
        let f = parse_field_spec("2^3/101").unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.spec_string(), "2^3/101");
        assert_eq!(parse_field_spec("2^3/011").unwrap().spec_string(), "2^3");
        assert!(parse_field_spec("6").is_err());
        assert!(parse_field_spec("2^2/100").is_err());
        assert!(parse_field_spec("x").is_err());
    }
}
