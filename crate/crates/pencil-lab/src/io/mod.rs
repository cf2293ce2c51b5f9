//! Text and JSON input/output: the expression parser, the polynomial JSON
//! schema and the versioned report document.

pub mod parse;
pub mod report;

pub use parse::{from_json, parse_expr, parse_polynomial, unparse, Expr, PolyJson};
pub use report::{analyze, AnalyzeOptions, Report, SetKind, SCHEMA};

use crate::arith::{BPoly, Q};
use crate::error::Result;

/// Polynomial from user input text: a JSON polynomial object when the text
/// starts with `{`, an expression otherwise.  JSON inputs carry their own
/// variable names, which replace `vars`.
pub fn read_polynomial(text: &str, vars: [&str; 2]) -> Result<(BPoly<Q>, Option<[String; 2]>)> {
    let t = text.trim_start();
    if t.starts_with('{') {
        let (f, v) = from_json(t)?;
        return Ok((f, Some([v[0].clone(), v[1].clone()])));
    }
    // Offsets refer to the original text.
    let lead = text.len() - t.len();
    match parse_polynomial(t.trim_end(), vars) {
        Ok(f) => Ok((f, None)),
        Err(crate::Error::Parse { offset, msg }) => Err(crate::Error::Parse { offset: offset + lead, msg }),
        Err(e) => Err(e),
    }
}
