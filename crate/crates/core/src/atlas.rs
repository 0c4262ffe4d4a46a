//! Representatives of the line and solid orbits, the special planes, and the
//! parameter searches behind their side conditions.
//!
//! Table matrices are stored as strings: rows split by `;`, entries by `,`.
//! Entries are linear forms in `x, y, z, t` whose coefficients may use the
//! named parameters. Basis vector `j` of a representative sets the `j`-th
//! indeterminate that occurs to 1 and the others to 0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{eval_linear, eval_vector, Params, VARS};
use crate::geometry::Pg5;
use crate::gf::{cubic_extension, Elem, Gf};
use crate::invariants::Od;
use crate::pg::{self, Subspace, SubspaceEnumerator};
use crate::veronese::{kernel_point, polarity_rho, sym_coords, sym_matrix, Coords6, Mat3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Any,
}

impl Parity {
    pub fn admits(self, f: &Gf) -> bool {
        match self {
            Parity::Even => f.is_even(),
            Parity::Odd => !f.is_even(),
            Parity::Any => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Line,
    Plane,
    Solid,
}

impl Kind {
    pub fn dim(self) -> usize {
        match self {
            Kind::Line => 2,
            Kind::Plane => 3,
            Kind::Solid => 4,
        }
    }
}

/// Side conditions on table parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `delta` a nonsquare.
    DeltaNonsquare,
    /// `Tr(gamma^-1) = 1`, absolute trace.
    TraceGammaInv,
    /// `Tr(gamma) = 1`.
    TraceGamma,
    /// `u` and `v_i` with `v_i l^2 + u v_i l - 1` rootless. For odd q,
    /// `-v_1` is a square and `-v_2` a nonsquare.
    Uv(u8),
    /// The same for the odd-q solid rows, whose matrices need
    /// `v_i l^2 + 2u v_i l - 1` rootless to match their distributions.
    UvSolid(u8),
    /// `l^3 + gamma l^2 - beta l + alpha` rootless.
    Cubic,
    /// `l^3 + 4 gamma l^2 - 4 beta l + alpha` rootless, for the odd-q solid row.
    CubicSolid,
    /// `b l^3 + c l + 1` irreducible.
    Bc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Matrix(&'static str),
    /// `<P, l>` with `l` a line of type o_17 in the H1 hyperplane of a point `P` of the nucleus plane.
    Sigma18,
    /// Gram matrices of trace forms of GF(q^3).
    TraceForm,
    /// Image of [`Source::TraceForm`] under the polarity.
    TraceFormDual,
}

#[derive(Clone, Debug)]
pub struct RepSpec {
    pub id: &'static str,
    pub kind: Kind,
    pub parity: Parity,
    pub source: Source,
    pub conditions: &'static [Condition],
    pub od0: &'static str,
    pub od4: Option<&'static str>,
    /// Smallest q for which the printed distributions are claimed.
    pub min_q: u32,
}

const fn row(
    id: &'static str,
    kind: Kind,
    parity: Parity,
    matrix: &'static str,
    conditions: &'static [Condition],
    od0: &'static str,
    od4: &'static str,
) -> RepSpec {
    let min_q = match parity {
        Parity::Even => 4,
        _ => 2,
    };
    RepSpec {
        id,
        kind,
        parity,
        source: Source::Matrix(matrix),
        conditions,
        od0,
        od4: Some(od4),
        min_q,
    }
}

use Condition::*;
use Kind::{Line, Plane, Solid};
use Parity::{Any, Even, Odd};

/// Lines, q even.
pub static LINES_EVEN: [RepSpec; 15] = [
    row("o_5", Line, Even, "x,0,0;0,y,0;0,0,0", &[], "[2,0,q-1,0]", "[1,2q^2+q,0,q^3-q^2]"),
    row("o_6", Line, Even, "x,y,0;y,0,0;0,0,0", &[], "[1,1,q-1,0]", "[q+1,(3q^2+q)/2,(q^2-q)/2,q^3-q^2]"),
    row("o_8,1", Line, Even, "x,0,0;0,y,0;0,0,-y", &[], "[1,0,1,q-1]", "[1,q^2+3q/2,q/2,q^3-q]"),
    row("o_8,3", Line, Even, "x,0,0;0,0,y;0,y,0", &[], "[1,1,0,q-1]", "[q+1,q^2+q,0,q^3-q]"),
    row("o_9", Line, Even, "x,0,y;0,y,0;y,0,0", &[], "[1,0,0,q]", "[1,q^2+q,0,q^3]"),
    row("o_10", Line, Even, "v0*x,y,0;y,x+u*y,0;0,0,0", &[Uv(0)], "[0,0,q+1,0]", "[1,q^2+q,q^2,q^3-q^2]"),
    row("o_12,1", Line, Even, "0,x,0;x,0,y;0,y,0", &[], "[0,q+1,0,0]", "[q^2+q+1,(q^2+q)/2,(q^2-q)/2,q^3-q^2]"),
    row("o_12,3", Line, Even, "0,x,0;x,x+y,y;0,y,0", &[], "[0,1,q,0]", "[q+1,q^2+q/2,q^2-q/2,q^3-q^2]"),
    row("o_13,1", Line, Even, "0,x,0;x,y,0;0,0,-y", &[], "[0,1,1,q-1]", "[q+1,q^2/2+q,q^2/2,q^3-q]"),
    row("o_13,3", Line, Even, "0,x,0;x,x+y,0;0,0,y", &[], "[0,0,2,q-1]", "[1,(q^2+3q)/2,(q^2+q)/2,q^3-q]"),
    row("o_14,1", Line, Even, "x,0,0;0,-(x+y),0;0,0,y", &[], "[0,0,3,q-2]", "[1,q^2/2+2q,q^2/2+q,q^3-2q]"),
    row("o_15,1", Line, Even, "v1*y,x,0;x,u*x+y,0;0,0,x", &[Uv(1)], "[0,0,1,q]", "[1,q^2/2+q,q^2/2,q^3]"),
    row("o_16,1", Line, Even, "0,0,x;0,x,y;x,y,0", &[], "[0,1,0,q]", "[q+1,(q^2+q)/2,(q^2-q)/2,q^3]"),
    row("o_16,3", Line, Even, "0,0,x;0,x,y;x,y,y", &[], "[0,0,1,q]", "[1,q^2/2+q,q^2/2,q^3]"),
    row(
        "o_17",
        Line,
        Even,
        "alpha^-1*x,y,0;y,beta*y-gamma*x,x;0,x,y",
        &[Cubic],
        "[0,0,0,q+1]",
        "[1,(q^2+q)/2,(q^2-q)/2,q^3+q]",
    ),
];

/// Solids, q even.
pub static SOLIDS_EVEN: [RepSpec; 15] = [
    row("Omega_1", Solid, Even, "x,y,z;y,t,0;z,0,t", &[], "[1,q+1,2q^2-1,q^3-q^2]", "[1,q/2,q/2,0]"),
    row("Omega_2", Solid, Even, "x,y,z;y,t,0;z,0,0", &[], "[q+1,q+1,2q^2-q-1,q^3-q^2]", "[1,q,0,0]"),
    row("Omega_3", Solid, Even, "x,y,z;y,0,t;z,t,0", &[], "[1,q^2+q+1,q^2-1,q^3-q^2]", "[q+1,0,0,0]"),
    row("Omega_4", Solid, Even, "x,0,y;0,z,0;y,0,t", &[], "[q+2,1,2q^2-2,q^3-q^2]", "[0,q+1,0,0]"),
    row("Omega_5", Solid, Even, "0,x,y;x,z,t;y,t,x", &[], "[1,q+1,q^2-1,q^3]", "[1,0,0,q]"),
    row("Omega_6", Solid, Even, "x,0,y;0,z,t;y,t,0", &[], "[2,q+1,q^2+q-2,q^3-q]", "[1,1,0,q-1]"),
    row(
        "Omega_7",
        Solid,
        Even,
        "x,y,z;y,x+gamma*y,t;z,t,y",
        &[TraceGammaInv],
        "[0,q+1,q^2+q,q^3-q]",
        "[1,0,1,q-1]",
    ),
    row("Omega_8", Solid, Even, "x,y,z;y,t,z;z,z,y", &[], "[3,1,q^2+2q-3,q^3-q]", "[0,2,0,q-1]"),
    row("Omega_9", Solid, Even, "x,x,y;x,z,t;y,t,t", &[], "[4,1,q^2+3q-4,q^3-2q]", "[0,3,0,q-2]"),
    row(
        "Omega_10",
        Solid,
        Even,
        "x,y,z;y,y+gamma*t,t;z,t,y",
        &[TraceGammaInv],
        "[1,1,q^2+2q-1,q^3-q]",
        "[0,1,1,q-1]",
    ),
    row("Omega_11", Solid, Even, "x,y,z;y,t,0;z,0,y", &[], "[2,1,q^2+q-2,q^3]", "[0,1,0,q]"),
    row(
        "Omega_12",
        Solid,
        Even,
        "x,y,z;y,t,gamma*y+z;z,gamma*y+z,y",
        &[TraceGammaInv],
        "[2,1,q^2+q-2,q^3]",
        "[0,1,0,q]",
    ),
    row(
        "Omega_13",
        Solid,
        Even,
        "x,y,z;y,gamma*x+y,t;z,t,gamma*x+z",
        &[TraceGamma],
        "[0,1,q^2+3q,q^3-2q]",
        "[0,1,2,q-2]",
    ),
    row(
        "Omega_14",
        Solid,
        Even,
        "x,y,gamma*x+y+gamma*t;y,gamma*x+y,z;gamma*x+y+gamma*t,z,t",
        &[TraceGamma],
        "[0,1,q^2+q,q^3]",
        "[0,0,1,q]",
    ),
    row(
        "Omega_15",
        Solid,
        Even,
        "x,y,b*z+c*y;y,z,t;b*z+c*y,t,y",
        &[Bc],
        "[1,1,q^2-1,q^3+q]",
        "[0,0,0,q+1]",
    ),
];

/// Solids, q odd. Each solid's OD0 is the OD4 of the matching line and vice versa.
pub static SOLIDS_ODD: [RepSpec; 15] = [
    row("Omega_5", Solid, Odd, "0,x,y;x,0,z;y,z,t", &[], "[1,2q^2+q,0,q^3-q^2]", "[2,(q-1)/2,(q-1)/2,0]"),
    row("Omega_6", Solid, Odd, "0,0,x;0,y,z;x,z,t", &[], "[q+1,(3q^2+q)/2,(q^2-q)/2,q^3-q^2]", "[1,q,0,0]"),
    row("Omega_8,1", Solid, Odd, "0,x,y;x,z,t;y,t,z", &[], "[2,q^2+(3q-1)/2,(q-1)/2,q^3-q]", "[1,1,0,q-1]"),
    row(
        "Omega_8,2",
        Solid,
        Odd,
        "0,x,y;x,delta*z,t;y,t,z",
        &[DeltaNonsquare],
        "[0,q^2+(3q+1)/2,(q+1)/2,q^3-q]",
        "[1,0,1,q-1]",
    ),
    row("Omega_9", Solid, Odd, "0,x,y;x,-y,z;y,z,t", &[], "[1,q^2+q,0,q^3]", "[1,0,0,q]"),
    row(
        "Omega_10",
        Solid,
        Odd,
        "x,u*v0*x,y;u*v0*x,-v0*x,z;y,z,t",
        &[UvSolid(0)],
        "[1,q^2+q,q^2,q^3-q^2]",
        "[0,(q+1)/2,(q+1)/2,0]",
    ),
    row(
        "Omega_12,1",
        Solid,
        Odd,
        "x,0,y;0,z,0;y,0,t",
        &[],
        "[q+2,q^2+(q-1)/2,q^2-(q+1)/2,q^3-q^2]",
        "[0,q+1,0,0]",
    ),
    row(
        "Omega_13,1",
        Solid,
        Odd,
        "x,0,y;0,z,t;y,t,z",
        &[],
        "[3,(q^2+3q-2)/2,(q^2+q-2)/2,q^3-q]",
        "[0,2,0,q-1]",
    ),
    row(
        "Omega_13,2",
        Solid,
        Odd,
        "x,0,y;0,delta*z,t;y,t,z",
        &[DeltaNonsquare],
        "[1,(q^2+3q)/2,(q^2+q)/2,q^3-q]",
        "[0,1,1,q-1]",
    ),
    row(
        "Omega_14,1",
        Solid,
        Odd,
        "x,y,z;y,x,t;z,t,x",
        &[],
        "[4,(q^2-1)/2+2q-1,(q^2-1)/2+q-1,q^3-2q]",
        "[0,3,0,q-2]",
    ),
    row(
        "Omega_14,2",
        Solid,
        Odd,
        "delta*x,y,z;y,x,t;z,t,delta*x",
        &[DeltaNonsquare],
        "[0,(q^2+1)/2+2q,(q^2+1)/2+q,q^3-2q]",
        "[0,1,2,q-2]",
    ),
    row(
        "Omega_15,1",
        Solid,
        Odd,
        "x,y,z;y,-v1*x,t;z,t,-y+u*v1*x",
        &[UvSolid(1)],
        "[2,(q^2-1)/2+q,(q^2-1)/2,q^3]",
        "[0,1,0,q]",
    ),
    row(
        "Omega_15,2",
        Solid,
        Odd,
        "x,y,z;y,-v2*x,t;z,t,-y+u*v2*x",
        &[UvSolid(2)],
        "[0,(q^2+1)/2+q,(q^2+1)/2,q^3]",
        "[0,0,1,q]",
    ),
    row(
        "Omega_16,1",
        Solid,
        Odd,
        "x,y,z;y,-z,0;z,0,t",
        &[],
        "[2,(q^2-1)/2+q,(q^2-1)/2,q^3]",
        "[0,1,0,q]",
    ),
    row(
        "Omega_17",
        Solid,
        Odd,
        "alpha*gamma*z-alpha*t,x,y;x,z,t;y,t,-x-beta*z",
        &[CubicSolid],
        "[1,(q^2+q)/2,(q^2-q)/2,q^3+q]",
        "[0,0,0,q+1]",
    ),
];

/// Lines, q odd.
pub static LINES_ODD: [RepSpec; 15] = [
    row("o_5", Line, Odd, "x,0,0;0,y,0;0,0,0", &[], "[2,(q-1)/2,(q-1)/2,0]", "[1,2q^2+q,0,q^3-q^2]"),
    row("o_6", Line, Odd, "x,y,0;y,0,0;0,0,0", &[], "[1,q,0,0]", "[q+1,(3q^2+q)/2,(q^2-q)/2,q^3-q^2]"),
    row("o_8,1", Line, Odd, "x,0,0;0,y,0;0,0,-y", &[], "[1,1,0,q-1]", "[2,q^2+(3q-1)/2,(q-1)/2,q^3-q]"),
    row(
        "o_8,2",
        Line,
        Odd,
        "x,0,0;0,y,0;0,0,-delta*y",
        &[DeltaNonsquare],
        "[1,0,1,q-1]",
        "[0,q^2+(3q+1)/2,(q+1)/2,q^3-q]",
    ),
    row("o_9", Line, Odd, "x,0,y;0,y,0;y,0,0", &[], "[1,0,0,q]", "[1,q^2+q,0,q^3]"),
    row(
        "o_10",
        Line,
        Odd,
        "v0*x,y,0;y,x+u*y,0;0,0,0",
        &[Uv(0)],
        "[0,(q+1)/2,(q+1)/2,0]",
        "[1,q^2+q,q^2,q^3-q^2]",
    ),
    row(
        "o_12,1",
        Line,
        Odd,
        "0,x,0;x,0,y;0,y,0",
        &[],
        "[0,q+1,0,0]",
        "[q+2,q^2+(q-1)/2,q^2-(q+1)/2,q^3-q^2]",
    ),
    row(
        "o_13,1",
        Line,
        Odd,
        "0,x,0;x,y,0;0,0,-y",
        &[],
        "[0,2,0,q-1]",
        "[3,(q^2+3q-2)/2,(q^2+q-2)/2,q^3-q]",
    ),
    row(
        "o_13,2",
        Line,
        Odd,
        "0,x,0;x,y,0;0,0,-delta*y",
        &[DeltaNonsquare],
        "[0,1,1,q-1]",
        "[1,(q^2+3q)/2,(q^2+q)/2,q^3-q]",
    ),
    row(
        "o_14,1",
        Line,
        Odd,
        "x,0,0;0,-(x+y),0;0,0,y",
        &[],
        "[0,3,0,q-2]",
        "[4,(q^2-1)/2+2q-1,(q^2-1)/2+q-1,q^3-2q]",
    ),
    row(
        "o_14,2",
        Line,
        Odd,
        "x,0,0;0,-delta*(x+y),0;0,0,y",
        &[DeltaNonsquare],
        "[0,1,2,q-2]",
        "[0,(q^2+1)/2+2q,(q^2+1)/2+q,q^3-2q]",
    ),
    row(
        "o_15,1",
        Line,
        Odd,
        "v1*y,x,0;x,u*x+y,0;0,0,x",
        &[Uv(1)],
        "[0,1,0,q]",
        "[2,(q^2-1)/2+q,(q^2-1)/2,q^3]",
    ),
    row(
        "o_15,2",
        Line,
        Odd,
        "v2*y,x,0;x,u*x+y,0;0,0,x",
        &[Uv(2)],
        "[0,0,1,q]",
        "[0,(q^2+1)/2+q,(q^2+1)/2,q^3]",
    ),
    row(
        "o_16,1",
        Line,
        Odd,
        "0,0,x;0,x,y;x,y,0",
        &[],
        "[0,1,0,q]",
        "[2,(q^2-1)/2+q,(q^2-1)/2,q^3]",
    ),
    row(
        "o_17",
        Line,
        Odd,
        "alpha^-1*x,y,0;y,beta*y-gamma*x,x;0,x,y",
        &[Cubic],
        "[0,0,0,q+1]",
        "[1,(q^2+q)/2,(q^2-q)/2,q^3+q]",
    ),
];

/// Planes and lines used by the maximality and completeness arguments.
pub static CONSTRUCTIONS: [RepSpec; 7] = [
    row(
        "Sigma_N",
        Plane,
        Even,
        "0,x,y;x,0,z;y,z,0",
        &[],
        "[0,q^2+q+1,0,0]",
        "[q^2+q+1,0,0,0]",
    ),
    row("Sigma_16", Plane, Even, "0,x,z;x,z,y;z,y,0", &[], "[0,q+1,0,q^2]", "[q+1,0,0,q^2]"),
    RepSpec {
        id: "Sigma_18",
        kind: Plane,
        parity: Even,
        source: Source::Sigma18,
        conditions: &[],
        od0: "[0,1,0,q^2+q]",
        od4: Some("[1,0,0,q^2+q]"),
        min_q: 4,
    },
    RepSpec {
        id: "Sigma_11",
        kind: Plane,
        parity: Even,
        source: Source::Matrix("x,y,0;y,z,z;0,z,x+z"),
        conditions: &[],
        od0: "[1,1,q-1,q^2]",
        od4: None,
        min_q: 4,
    },
    // A line of the Omega_7 representative; it lies in o_16,1.
    row(
        "L_7",
        Line,
        Even,
        "0,y,0;y,gamma*y,t;0,t,y",
        &[TraceGammaInv],
        "[0,1,0,q]",
        "[q+1,(q^2+q)/2,(q^2-q)/2,q^3]",
    ),
    RepSpec {
        id: "Sigma_GF",
        kind: Plane,
        parity: Any,
        source: Source::TraceForm,
        conditions: &[],
        od0: "[0,0,0,q^2+q+1]",
        od4: Some("[0,0,0,q^2+q+1]"),
        min_q: 2,
    },
    RepSpec {
        id: "Sigma_TF",
        kind: Plane,
        parity: Odd,
        source: Source::TraceFormDual,
        conditions: &[],
        od0: "[0,0,0,q^2+q+1]",
        od4: Some("[0,0,0,q^2+q+1]"),
        min_q: 3,
    },
];

/// The table representatives for the parity of `f`: 15 lines then 15 solids.
pub fn table_specs(f: &Gf) -> Vec<&'static RepSpec> {
    let (lines, solids) = if f.is_even() {
        (&LINES_EVEN, &SOLIDS_EVEN)
    } else {
        (&LINES_ODD, &SOLIDS_ODD)
    };
    lines.iter().chain(solids.iter()).collect()
}

/// Table representatives followed by the constructions valid for the parity.
pub fn all_specs(f: &Gf) -> Vec<&'static RepSpec> {
    let mut out = table_specs(f);
    out.extend(CONSTRUCTIONS.iter().filter(|s| s.parity.admits(f)));
    out
}

/// Looks up a row by id within the parity of `f`.
pub fn spec(f: &Gf, id: &str) -> Result<&'static RepSpec> {
    let all = LINES_EVEN
        .iter()
        .chain(&SOLIDS_EVEN)
        .chain(&LINES_ODD)
        .chain(&SOLIDS_ODD)
        .chain(&CONSTRUCTIONS);
    let mut seen = false;
    for s in all {
        if s.id == id {
            if s.parity.admits(f) {
                return Ok(s);
            }
            seen = true;
        }
    }
    if seen {
        Err(Error::NotDefined(id.to_string(), f.q()))
    } else {
        Err(Error::Malformed(format!("unknown representative {id}")))
    }
}

fn has_root(f: &Gf, poly: impl Fn(Elem) -> Elem) -> bool {
    f.elements().any(|l| poly(l) == 0)
}

fn trace(f: &Gf, a: Elem) -> Elem {
    f.trace2(a).expect("trace conditions are only paired with even q")
}

fn no_params(c: Condition, f: &Gf) -> Error {
    Error::Inconsistent(format!("no parameters satisfy {c:?} at q = {}", f.q()))
}

/// The lexicographically first assignment satisfying `c`, found by exhaustive scan.
pub fn find_params(c: Condition, f: &Gf) -> Result<Params> {
    let mut out = Params::new();
    let parity_err = |what: &str| Error::Unsupported(format!("{c:?} needs {what} q"));
    match c {
        DeltaNonsquare => {
            if f.is_even() {
                return Err(parity_err("odd"));
            }
            let d = f
                .elements()
                .find(|&d| d != 0 && !f.is_square(d).unwrap_or(true))
                .ok_or_else(|| no_params(c, f))?;
            out.insert("delta".into(), d);
        }
        TraceGammaInv | TraceGamma => {
            if !f.is_even() {
                return Err(parity_err("even"));
            }
            let g = f
                .elements()
                .find(|&g| g != 0 && trace(f, if c == TraceGamma { g } else { f.inv(g) }) == 1)
                .ok_or_else(|| no_params(c, f))?;
            out.insert("gamma".into(), g);
        }
        Uv(i) | UvSolid(i) => {
            if i > 2 || (f.is_even() && i == 2) {
                return Err(Error::Unsupported(format!("{c:?} at q = {}", f.q())));
            }
            let twice = matches!(c, UvSolid(_));
            let minus_square = |v: Elem| f.is_square(f.neg(v)).unwrap_or(false);
            let q = f.q();
            let (u, v) = (0..q * q)
                .map(|n| (n / q, n % q))
                .find(|&(u, v)| {
                    let lin = if twice { f.add(u, u) } else { u };
                    v != 0
                        && !has_root(f, |l| f.sub(f.add(f.mul(v, f.mul(l, l)), f.mul(lin, f.mul(v, l))), 1))
                        && match (f.is_even(), i) {
                            (false, 1) => minus_square(v),
                            (false, 2) => !minus_square(v),
                            _ => true,
                        }
                })
                .ok_or_else(|| no_params(c, f))?;
            out.insert("u".into(), u);
            out.insert(format!("v{i}"), v);
        }
        Cubic | CubicSolid => {
            let k = if c == CubicSolid { f.from_int(4) } else { 1 };
            let q = f.q();
            let (a, b, g) = (0..q * q * q)
                .map(|i| (i / (q * q), (i / q) % q, i % q))
                .find(|&(a, b, g)| {
                    !has_root(f, |l| {
                        let l2 = f.mul(l, l);
                        let s = f.add(f.mul(l2, l), f.mul(f.mul(k, g), l2));
                        f.add(f.sub(s, f.mul(f.mul(k, b), l)), a)
                    })
                })
                .ok_or_else(|| no_params(c, f))?;
            out.insert("alpha".into(), a);
            out.insert("beta".into(), b);
            out.insert("gamma".into(), g);
        }
        Bc => {
            if !f.is_even() {
                return Err(parity_err("even"));
            }
            let q = f.q();
            let (b, cc) = (0..q * q)
                .map(|i| (i / q, i % q))
                .find(|&(b, cc)| {
                    b != 0 && !has_root(f, |l| f.add(f.add(f.mul(b, f.pow(l, 3)), f.mul(cc, l)), 1))
                })
                .ok_or_else(|| no_params(c, f))?;
            out.insert("b".into(), b);
            out.insert("c".into(), cc);
        }
    }
    Ok(out)
}

/// A constructed representative.
#[derive(Clone, Debug)]
pub struct Rep {
    pub id: &'static str,
    pub kind: Kind,
    pub params: Params,
    /// Basis matrices, one per indeterminate for table rows.
    pub basis: Vec<Mat3>,
    pub subspace: Subspace,
}

/// Parses a `;`/`,` matrix string into one symmetric basis matrix per indeterminate.
pub fn parse_matrix(f: &Gf, src: &str, params: &Params) -> Result<Vec<Mat3>> {
    let rows: Vec<Vec<&str>> = src.split(';').map(|r| r.split(',').collect()).collect();
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(Error::Malformed(format!("matrix {src:?} is not 3x3")));
    }
    let mut forms = [[[0; 4]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            forms[i][j] = eval_linear(f, rows[i][j].trim(), params)?;
        }
    }
    let used: Vec<usize> = (0..VARS.len())
        .filter(|&v| forms.iter().flatten().any(|c| c[v] != 0))
        .collect();
    let basis: Vec<Mat3> = used
        .iter()
        .map(|&v| std::array::from_fn(|i| std::array::from_fn(|j| forms[i][j][v])))
        .collect();
    for (n, m) in basis.iter().enumerate() {
        if sym_coords(m).is_none() {
            return Err(Error::NotSymmetric(n));
        }
    }
    Ok(basis)
}

fn span_of(f: &Gf, basis: &[Mat3], expect: usize) -> Result<Subspace> {
    let rows: Vec<Vec<Elem>> = basis
        .iter()
        .map(|m| sym_coords(m).expect("symmetric").to_vec())
        .collect();
    let w = pg::canonicalize(f, &rows)?;
    if w.dim() != expect {
        return Err(Error::Inconsistent(format!(
            "basis spans dimension {} instead of {expect}",
            w.dim()
        )));
    }
    Ok(w)
}

/// Builds the representative described by `spec` over `f`.
pub fn representative(spec: &RepSpec, f: &crate::gf::FieldCtx) -> Result<Rep> {
    if !spec.parity.admits(f) {
        return Err(Error::NotDefined(spec.id.to_string(), f.q()));
    }
    let mut params = Params::new();
    for &c in spec.conditions {
        params.extend(find_params(c, f)?);
    }
    let basis = match spec.source {
        Source::Matrix(m) => parse_matrix(f, m, &params)?,
        Source::Sigma18 => sigma18_basis(f)?,
        Source::TraceForm => trace_form_basis(f)?,
        Source::TraceFormDual => {
            let w = span_of(f, &trace_form_basis(f)?, 3)?;
            polarity_rho(f, &w)?.rows().iter().map(|r| sym_matrix(&coords(r))).collect()
        }
    };
    let subspace = span_of(f, &basis, spec.kind.dim())?;
    Ok(Rep {
        id: spec.id,
        kind: spec.kind,
        params,
        basis,
        subspace,
    })
}

fn coords(r: &[Elem]) -> Coords6 {
    r.try_into().expect("six coordinates")
}

/// Gram matrices of `(x, y) -> Tr(c x y)` on the basis `1, w, w^2` of GF(q^3),
/// for `c` in the same basis. `w` is the primitive element of the extension.
fn trace_form_basis(f: &crate::gf::FieldCtx) -> Result<Vec<Mat3>> {
    let e = cubic_extension(f)?;
    let ext = e.ext();
    let w = ext.primitive();
    let b = [1, w, ext.mul(w, w)];
    Ok(b.iter()
        .map(|&c| std::array::from_fn(|i| std::array::from_fn(|j| e.trace(ext.mul(c, ext.mul(b[i], b[j]))))))
        .collect())
}

/// `<P, l>` for `P` the first coordinate point of the nucleus plane in its
/// H1 hyperplane and `l` the first o_17 line of that hyperplane whose join
/// with `P` has the expected point distribution.
fn sigma18_basis(f: &crate::gf::FieldCtx) -> Result<Vec<Mat3>> {
    if !f.is_even() || f.q() < 4 {
        return Err(Error::Unsupported("Sigma_18 needs even q >= 4".into()));
    }
    let g = Pg5::new(f)?;
    let q = f.q() as u64;
    let p: Coords6 = [0, 0, 0, 0, 1, 0];
    let k = kernel_point(f, &p)?;
    // The double line (k.x)^2 as a dual coordinate vector.
    let sq: Vec<Elem> = k.iter().map(|&c| f.mul(c, c)).collect();
    let hp = [sq[0], 0, 0, sq[1], 0, sq[2]];
    let frame = pg::nullspace(f, &[hp.to_vec()], 6);
    let want_line: Od = [0, 0, 0, q + 1];
    let want_plane: Od = [0, 1, 0, q * q + q];
    let lines = SubspaceEnumerator::new(f.q(), 5, 2);
    let mut buf = Vec::new();
    let mut flat = vec![0; 10];
    for i in 0..lines.len() {
        lines.decode_into(i, &mut flat);
        let rows: Vec<Vec<Elem>> = flat
            .chunks(5)
            .map(|c| {
                (0..6)
                    .map(|col| {
                        c.iter()
                            .zip(&frame)
                            .fold(0, |acc, (&a, v)| f.add(acc, f.mul(a, v[col])))
                    })
                    .collect()
            })
            .collect();
        let packed: Vec<u32> = rows.iter().map(|r| g.encode(r)).collect();
        if g.od0(&packed, &mut buf) != want_line {
            continue;
        }
        let plane = [packed[0], packed[1], g.encode(&p)];
        if g.od0(&plane, &mut buf) == want_plane {
            let mut out = vec![sym_matrix(&p)];
            out.extend(rows.iter().map(|r| sym_matrix(&coords(r))));
            return Ok(out);
        }
    }
    Err(Error::Inconsistent("no o_17 line found in H(P)".into()))
}

/// Status of one emitted representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    Match,
    Mismatch,
    /// q is below the range where the printed distributions are claimed.
    OutOfRange,
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasEntry {
    pub id: String,
    pub kind: Kind,
    pub params: Params,
    pub basis: Vec<Mat3>,
    pub od0: Od,
    pub od4: Od,
    pub expected_od0: Vec<i128>,
    pub expected_od4: Option<Vec<i128>>,
    pub status: EntryStatus,
}

fn as_i128(od: &Od) -> Vec<i128> {
    od.iter().map(|&x| x as i128).collect()
}

/// Builds a representative and checks its distributions against the printed formulas.
pub fn check(spec: &RepSpec, g: &Pg5) -> Result<AtlasEntry> {
    let f = g.field();
    let rep = representative(spec, f)?;
    let rows = g.rows_of(&rep.subspace);
    let mut buf = Vec::new();
    let od0 = g.od0(&rows, &mut buf);
    let od4 = g.od4(&rows, &mut buf);
    let q = f.q() as u64;
    let expected_od0 = eval_vector(spec.od0, q)?;
    let expected_od4 = spec.od4.map(|s| eval_vector(s, q)).transpose()?;
    let ok = expected_od0 == as_i128(&od0) && expected_od4.as_ref().is_none_or(|e| *e == as_i128(&od4));
    let status = if f.q() < spec.min_q {
        EntryStatus::OutOfRange
    } else if ok {
        EntryStatus::Match
    } else {
        EntryStatus::Mismatch
    };
    Ok(AtlasEntry {
        id: spec.id.to_string(),
        kind: spec.kind,
        params: rep.params,
        basis: rep.basis,
        od0,
        od4,
        expected_od0,
        expected_od4,
        status,
    })
}

/// Every representative valid for the parity of the field of `g`.
/// Constructions that do not exist below their range are skipped.
pub fn emit(g: &Pg5) -> Result<Vec<AtlasEntry>> {
    let q = g.q();
    let mut out = Vec::new();
    for s in all_specs(g.field()) {
        match check(s, g) {
            Ok(e) => out.push(e),
            Err(_) if q < s.min_q && !matches!(s.source, Source::Matrix(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::parse_field_spec;

    fn assert_all_match(q: &str) {
        let f = parse_field_spec(q).unwrap();
        let g = Pg5::new(&f).unwrap();
        let entries = emit(&g).unwrap();
        for e in &entries {
            assert_eq!(e.status, EntryStatus::Match, "q={q} {} got {:?} {:?} want {:?} {:?}", e.id, e.od0, e.od4, e.expected_od0, e.expected_od4);
        }
    }

    #[test]
    fn parameter_search() {
        let f3 = parse_field_spec("3").unwrap();
        assert_eq!(find_params(DeltaNonsquare, &f3).unwrap()["delta"], 2);
        let f4 = parse_field_spec("4").unwrap();
        let g = find_params(TraceGammaInv, &f4).unwrap()["gamma"];
        assert_eq!(f4.trace2(f4.inv(g)).unwrap(), 1);
        assert_eq!(g, 2);
        let f2 = parse_field_spec("2").unwrap();
        let p = find_params(Cubic, &f2).unwrap();
        assert_eq!((p["alpha"], p["beta"], p["gamma"]), (1, 0, 1));
        let p = find_params(Uv(2), &f3).unwrap();
        assert_eq!((p["u"], p["v2"]), (1, 1));
        let p = find_params(Uv(1), &f3).unwrap();
        assert_eq!((p["u"], p["v1"]), (0, 2));
        assert!(find_params(Bc, &f3).is_err());
        assert!(find_params(DeltaNonsquare, &f4).is_err());
    }

    #[test]
    fn tables_match_at_q4() {
        assert_all_match("4");
    }

    #[test]
    fn tables_match_at_q3() {
        assert_all_match("3");
    }

    #[test]
    fn tables_match_at_q5() {
        assert_all_match("5");
    }

    #[test]
    fn documented_examples() {
        let f = parse_field_spec("4").unwrap();
        let g = Pg5::new(&f).unwrap();
        assert_eq!(check(spec(&f, "Sigma_16").unwrap(), &g).unwrap().od0, [0, 5, 0, 16]);
        assert_eq!(check(spec(&f, "o_12,1").unwrap(), &g).unwrap().od0, [0, 5, 0, 0]);
        let s18 = check(spec(&f, "Sigma_18").unwrap(), &g).unwrap();
        assert_eq!((s18.od0, s18.od4), ([0, 1, 0, 20], [1, 0, 0, 20]));
        let f3 = parse_field_spec("3").unwrap();
        let g3 = Pg5::new(&f3).unwrap();
        assert_eq!(check(spec(&f3, "Omega_14,2").unwrap(), &g3).unwrap().od0, [0, 11, 8, 21]);
        assert!(matches!(spec(&f3, "Sigma_16"), Err(Error::NotDefined(..))));
        assert!(matches!(spec(&f3, "Omega_99"), Err(Error::Malformed(_))));
    }

    #[test]
    fn trace_form_plane_has_constant_rank_three() {
        for q in ["2", "3", "4", "5", "7", "8"] {
            let f = parse_field_spec(q).unwrap();
            let g = Pg5::new(&f).unwrap();
            let e = check(spec(&f, "Sigma_GF").unwrap(), &g).unwrap();
            let n = (f.q() * f.q() + f.q() + 1) as u64;
            assert_eq!(e.od0, [0, 0, 0, n], "q={q}");
        }
    }

    #[test]
    fn sigma11_misses_the_hyperplane_of_its_nucleus_point() {
        let f = parse_field_spec("4").unwrap();
        let w = representative(spec(&f, "Sigma_11").unwrap(), &f).unwrap().subspace;
        // (x, y, z) = (0, 1, 0) is the point on the nucleus plane; its H1 hyperplane is Y5 = 0.
        assert!(w.contains(&f, &[0, 1, 0, 0, 0, 0]));
        assert!(w.points(&f).iter().any(|p| p.coords()[5] != 0));
    }

    #[test]
    fn matrix_parser_rejects_bad_shapes() {
        let f = parse_field_spec("3").unwrap();
        let p = Params::new();
        assert!(parse_matrix(&f, "x,0;0,x", &p).is_err());
        assert_eq!(parse_matrix(&f, "0,x,0;0,0,0;0,0,0", &p).unwrap_err(), Error::NotSymmetric(0));
    }
}
