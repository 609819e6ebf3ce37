//! Versioned on-disk format for polynomial systems: a small line-oriented
//! header (coefficient field, variable count, optional descent provenance,
//! field-equation flag) followed by the polynomials in the shared grammar.
//! Serialization is canonical, so parse-then-print is byte-identical.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::parse::parse_poly;
use crate::poly::{Poly, RingCtx};

pub const MAGIC: &str = "#falldeg v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentMeta {
    pub q: u64,
    pub n: usize,
    pub m: usize,
    /// "classic" (coordinate model) or "bar" (digit model).
    pub model: String,
    /// Basis of the big field over GF(q), as element codes of the big field.
    pub basis: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct SystemFile {
    pub ring: RingCtx,
    pub polys: Vec<Poly>,
    pub descent: Option<DescentMeta>,
    pub field_equations: bool,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col: 0, msg: msg.into() }
}

impl SystemFile {
    pub fn new(
        ring: RingCtx,
        polys: Vec<Poly>,
        descent: Option<DescentMeta>,
        field_equations: bool,
    ) -> SystemFile {
        SystemFile { ring, polys, descent, field_equations }
    }

    /// Canonical text form; `parse` of the result reproduces it byte for byte.
    pub fn write(&self) -> String {
        let field = self.ring.field();
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        let degrees: Vec<String> =
            field.degrees().iter().map(|d| d.to_string()).collect();
        if degrees.is_empty() {
            out.push_str(&format!("field p={}\n", field.p()));
        } else {
            out.push_str(&format!("field p={} tower={}\n", field.p(), degrees.join(",")));
        }
        out.push_str(&format!("vars {}\n", self.ring.nvars()));
        if let Some(d) = &self.descent {
            let basis: Vec<String> = d.basis.iter().map(|b| b.to_string()).collect();
            out.push_str(&format!(
                "descent q={} n={} m={} model={} basis={}\n",
                d.q,
                d.n,
                d.m,
                d.model,
                basis.join(",")
            ));
        }
        out.push_str(&format!("field_equations {}\n", self.field_equations));
        for f in &self.polys {
            out.push_str(&format!("poly {}\n", f));
        }
        out
    }

    pub fn parse(text: &str) -> Result<SystemFile> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines.next().ok_or_else(|| perr(1, "empty file"))?;
        if first.trim_end() != MAGIC {
            return Err(perr(1, format!("expected header line `{}`", MAGIC)));
        }
        let mut field: Option<FieldCtx> = None;
        let mut nvars: Option<usize> = None;
        let mut descent: Option<DescentMeta> = None;
        let mut field_equations = false;
        let mut poly_lines: Vec<(usize, String)> = Vec::new();
        for (i, raw) in lines {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            match key {
                "field" => {
                    let mut p = None;
                    let mut degrees: Vec<usize> = Vec::new();
                    for part in rest.split_whitespace() {
                        if let Some(v) = part.strip_prefix("p=") {
                            p = Some(v.parse::<u64>().map_err(|_| perr(lineno, "bad p"))?);
                        } else if let Some(v) = part.strip_prefix("tower=") {
                            for d in v.split(',') {
                                degrees.push(
                                    d.parse().map_err(|_| perr(lineno, "bad tower degree"))?,
                                );
                            }
                        } else {
                            return Err(perr(lineno, format!("unknown field item `{}`", part)));
                        }
                    }
                    let p = p.ok_or_else(|| perr(lineno, "field line missing p="))?;
                    field = Some(if degrees.is_empty() {
                        FieldCtx::prime(p)?
                    } else {
                        FieldCtx::tower(p, &degrees)?
                    });
                }
                "vars" => {
                    nvars = Some(rest.trim().parse().map_err(|_| perr(lineno, "bad vars"))?);
                }
                "descent" => {
                    let (mut q, mut n, mut m) = (None, None, None);
                    let mut model = None;
                    let mut basis = Vec::new();
                    for part in rest.split_whitespace() {
                        if let Some(v) = part.strip_prefix("q=") {
                            q = Some(v.parse().map_err(|_| perr(lineno, "bad q"))?);
                        } else if let Some(v) = part.strip_prefix("n=") {
                            n = Some(v.parse().map_err(|_| perr(lineno, "bad n"))?);
                        } else if let Some(v) = part.strip_prefix("m=") {
                            m = Some(v.parse().map_err(|_| perr(lineno, "bad m"))?);
                        } else if let Some(v) = part.strip_prefix("model=") {
                            if v != "classic" && v != "bar" {
                                return Err(perr(lineno, "model must be classic or bar"));
                            }
                            model = Some(v.to_string());
                        } else if let Some(v) = part.strip_prefix("basis=") {
                            for b in v.split(',') {
                                basis
                                    .push(b.parse().map_err(|_| perr(lineno, "bad basis code"))?);
                            }
                        } else {
                            return Err(perr(lineno, format!("unknown descent item `{}`", part)));
                        }
                    }
                    descent = Some(DescentMeta {
                        q: q.ok_or_else(|| perr(lineno, "descent missing q="))?,
                        n: n.ok_or_else(|| perr(lineno, "descent missing n="))?,
                        m: m.ok_or_else(|| perr(lineno, "descent missing m="))?,
                        model: model.ok_or_else(|| perr(lineno, "descent missing model="))?,
                        basis,
                    });
                }
                "field_equations" => {
                    field_equations = match rest.trim() {
                        "true" => true,
                        "false" => false,
                        other => {
                            return Err(perr(lineno, format!("bad flag `{}`", other)));
                        }
                    };
                }
                "poly" => poly_lines.push((lineno, rest.to_string())),
                other => return Err(perr(lineno, format!("unknown directive `{}`", other))),
            }
        }
        let field = field.ok_or_else(|| perr(1, "missing field line"))?;
        let nvars = nvars.ok_or_else(|| perr(1, "missing vars line"))?;
        let ring = match &descent {
            Some(d) if d.m * d.n == nvars => RingCtx::descended(field, d.m, d.n),
            _ => RingCtx::new(field, nvars),
        };
        let mut polys = Vec::with_capacity(poly_lines.len());
        for (lineno, text) in poly_lines {
            let f = parse_poly(&ring, &text).map_err(|e| match e {
                Error::Parse { col, msg, .. } => Error::Parse { line: lineno, col, msg },
                e => e,
            })?;
            polys.push(f);
        }
        Ok(SystemFile { ring, polys, descent, field_equations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        let field = FieldCtx::tower(2, &[2]).unwrap();
        let ring = RingCtx::descended(field, 1, 2);
        let f = parse_poly(&ring, "x0_0^2 + x0_0*x0_1 + [0,1]").unwrap();
        let sf = SystemFile::new(
            ring,
            vec![f],
            Some(DescentMeta { q: 2, n: 2, m: 1, model: "classic".into(), basis: vec![1, 2] }),
            true,
        );
        let text = sf.write();
        let back = SystemFile::parse(&text).unwrap();
        assert_eq!(back.write(), text);
        assert_eq!(back.polys, sf.polys);
        assert_eq!(back.descent, sf.descent);
        assert!(back.field_equations);
    }

    #[test]
    fn plain_prime_field_round_trip() {
        let field = FieldCtx::prime(5).unwrap();
        let ring = RingCtx::new(field, 2);
        let f = parse_poly(&ring, "x0^2*x1 + 3*x0 + 4").unwrap();
        let sf = SystemFile::new(ring, vec![f], None, false);
        let text = sf.write();
        assert!(text.starts_with(MAGIC));
        let back = SystemFile::parse(&text).unwrap();
        assert_eq!(back.write(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "#falldeg v1\nfield p=2\nvars 1\nfield_equations true\npoly x0 +\n";
        match SystemFile::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected parse error, got {:?}", other.map(|s| s.write())),
        }
        assert!(SystemFile::parse("nope\n").is_err());
        let unknown = "#falldeg v1\nfield p=2\nvars 1\nbogus directive\n";
        match SystemFile::parse(unknown) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {:?}", other.map(|s| s.write())),
        }
    }
}
