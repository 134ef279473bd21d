//! `.fam` files: one family per file.
//!
//! ```text
//! vars x, y
//! params s, t
//! (y^2+x^4)+s*x*(y+x^3)+t*(y+x^4)
//! kind contact
//! ```
//!
//! The `vars` and `params` keywords are optional; the `kind` line defaults to
//! `contact`. `#` starts a comment.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamFile {
    pub vars: Vec<String>,
    pub params: Vec<String>,
    pub expr: String,
    pub kind: String,
}

fn list(s: &str) -> Vec<String> {
    s.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect()
}

pub fn parse_fam(text: &str) -> Result<FamFile> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if lines.len() < 3 || lines.len() > 4 {
        return Err(Error::Job(format!(
            "family file needs 3 or 4 lines (vars, params, expression, optional kind), found {}",
            lines.len()
        )));
    }
    let strip = |l: &str, kw: &str| l.strip_prefix(kw).map(str::trim).unwrap_or(l).to_string();
    let vars = list(&strip(lines[0], "vars"));
    // a lone `params` keyword declares no parameters
    let params = list(&strip(lines[1], "params"));
    let expr = lines[2].to_string();
    let kind = match lines.get(3) {
        None => "contact".to_string(),
        Some(l) => strip(l, "kind"),
    };
    if kind != "contact" && kind != "interior" {
        return Err(Error::Job(format!("unknown family kind `{kind}`")));
    }
    Ok(FamFile {
        vars,
        params,
        expr,
        kind,
    })
}
