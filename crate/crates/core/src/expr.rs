//! Two tiny expression languages used by the atlas tables.
//!
//! * Count formulas in `q`, such as `(q^2+3q)/2`, evaluated exactly over the
//!   rationals. Juxtaposition multiplies (`3q`).
//! * Linear forms in the indeterminates `x, y, z, t` with coefficients built
//!   from named field parameters, such as `alpha^-1*x` or `-delta*(x+y)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    Ident(String),
    Op(char),
    InvPow,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let bad = || Error::Malformed(format!("expression {s:?}"));
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[start..i].iter().collect();
            out.push(Tok::Num(n.parse().map_err(|_| bad())?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if c == '^' && cs.get(i + 1) == Some(&'-') && cs.get(i + 2) == Some(&'1') {
            out.push(Tok::InvPow);
            i += 3;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(bad());
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Rat(i128, i128);

impl Rat {
    fn new(n: i128, d: i128) -> Rat {
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(n, d).max(1);
        let s = if d < 0 { -1 } else { 1 };
        Rat(s * n / g, s * d / g)
    }
    fn add(self, o: Rat) -> Rat {
        Rat::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
    }
    fn mul(self, o: Rat) -> Rat {
        Rat::new(self.0 * o.0, self.1 * o.1)
    }
}

struct FormulaParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    q: i128,
}

impl FormulaParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self) -> Error {
        Error::Malformed(format!("formula near token {}", self.pos))
    }

    fn expr(&mut self) -> Result<Rat> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(t) } else { acc.add(Rat(-t.0, t.1)) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Rat> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(self.power()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.0 == 0 {
                        return Err(self.err());
                    }
                    acc = acc.mul(Rat::new(d.1, d.0));
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    acc = acc.mul(self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Rat> {
        let base = self.unary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(self.err());
            };
            self.pos += 1;
            let mut r = Rat(1, 1);
            for _ in 0..e {
                r = r.mul(base);
            }
            return Ok(r);
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Rat> {
        match self.peek().cloned() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(Rat(-v.0, v.1))
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Rat(n, 1))
            }
            Some(Tok::Ident(id)) if id == "q" => {
                self.pos += 1;
                Ok(Rat(self.q, 1))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err()),
        }
    }
}

/// Evaluates an integer-valued formula in `q`.
pub fn eval_formula(s: &str, q: u64) -> Result<i128> {
    let toks = tokenize(s)?;
    let mut p = FormulaParser {
        toks: &toks,
        pos: 0,
        q: q as i128,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err());
    }
    if v.1 != 1 {
        return Err(Error::Malformed(format!("{s} is not an integer at q = {q}")));
    }
    Ok(v.0)
}

/// Evaluates a bracketed list such as `[1,q^2+q,0,q^3]`.
pub fn eval_vector(s: &str, q: u64) -> Result<Vec<i128>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Malformed(format!("vector {s:?}")))?;
    inner.split(',').map(|e| eval_formula(e, q)).collect()
}

/// Names of the indeterminates, in basis order.
pub const VARS: [&str; 4] = ["x", "y", "z", "t"];

/// A linear form in the indeterminates plus a constant term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lin {
    pub constant: Elem,
    pub coeffs: [Elem; 4],
}

impl Lin {
    fn scalar(c: Elem) -> Lin {
        Lin {
            constant: c,
            coeffs: [0; 4],
        }
    }

    fn is_scalar(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn add(self, f: &Gf, o: Lin) -> Lin {
        Lin {
            constant: f.add(self.constant, o.constant),
            coeffs: std::array::from_fn(|i| f.add(self.coeffs[i], o.coeffs[i])),
        }
    }

    fn scale(self, f: &Gf, c: Elem) -> Lin {
        Lin {
            constant: f.mul(self.constant, c),
            coeffs: self.coeffs.map(|x| f.mul(x, c)),
        }
    }
}

pub type Params = BTreeMap<String, Elem>;

struct LinParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    f: &'a Gf,
    params: &'a Params,
    src: &'a str,
}

impl LinParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, why: &str) -> Error {
        Error::Malformed(format!("entry {:?}: {why}", self.src))
    }

    fn expr(&mut self) -> Result<Lin> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            let t = if c == '-' { t.scale(self.f, self.f.neg(1)) } else { t };
            acc = acc.add(self.f, t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Lin> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if acc.is_scalar() {
                rhs.scale(self.f, acc.constant)
            } else if rhs.is_scalar() {
                acc.scale(self.f, rhs.constant)
            } else {
                return Err(self.err("product of two indeterminates"));
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Lin> {
        match self.peek().cloned() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.scale(self.f, self.f.neg(1)))
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Lin::scalar(self.f.from_int(n as i64)))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if let Some(j) = VARS.iter().position(|&v| v == id) {
                    let mut l = Lin::scalar(0);
                    l.coeffs[j] = 1;
                    return Ok(l);
                }
                let v = *self
                    .params
                    .get(&id)
                    .ok_or_else(|| self.err(&format!("unknown parameter {id}")))?;
                if self.peek() == Some(&Tok::InvPow) {
                    self.pos += 1;
                    let inv = self.f.try_inv(v).ok_or_else(|| self.err("inverse of zero"))?;
                    return Ok(Lin::scalar(inv));
                }
                Ok(Lin::scalar(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("unbalanced parenthesis"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Evaluates a homogeneous linear form such as `beta*y-gamma*x`.
pub fn eval_linear(f: &Gf, s: &str, params: &Params) -> Result<[Elem; 4]> {
    let toks = tokenize(s)?;
    let mut p = LinParser {
        toks: &toks,
        pos: 0,
        f,
        params,
        src: s,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    if v.constant != 0 {
        return Err(p.err("constant term"));
    }
    Ok(v.coeffs)
}
