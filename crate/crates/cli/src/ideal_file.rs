//! The `.ideal` and skew-matrix file formats.
//!
//! Line oriented; `#` starts a comment.  An ideal file:
//!
//! ```text
//! field GF(3)
//! vars x y z
//! gen x^2*y
//! gen x^2*z
//! ```
//!
//! A skew matrix file replaces the `gen` lines with a `skew <size>` header
//! followed by `entry <i> <j> <polynomial>` lines for i < j (1-based).

use artin_core::gorenstein::SkewPolyMatrix;
use artin_core::poly::parse_polynomial;
use artin_core::{parse_field_spec, Error, FieldSpec, GradedIdeal, Polynomial, Result};

#[derive(Debug)]
pub struct ParsedFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub gens: Vec<Polynomial>,
    pub skew: Option<SkewPolyMatrix>,
}

impl ParsedFile {
    pub fn ideal(&self) -> Result<GradedIdeal> {
        GradedIdeal::new(self.field.clone(), self.vars.len(), self.gens.clone())
    }
}

fn err_at(line: usize, msg: impl Into<String>) -> Error {
    Error::PolyParse { line, col: 1, msg: msg.into() }
}

/// Parse file contents; `field_override` replaces the file's field line
/// (coefficients are re-read in the override field).
pub fn parse_ideal_source(src: &str, field_override: Option<&FieldSpec>) -> Result<ParsedFile> {
    let mut field: Option<FieldSpec> = field_override.cloned();
    let mut field_from_file = false;
    let mut vars: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
    let mut gen_lines: Vec<(usize, String)> = Vec::new();
    let mut skew_size: Option<usize> = None;
    let mut entry_lines: Vec<(usize, usize, usize, String)> = Vec::new();

    for (idx, raw) in src.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "field" => {
                if field_override.is_none() {
                    field = Some(
                        parse_field_spec(rest).map_err(|e| err_at(lineno, e.to_string()))?,
                    );
                }
                field_from_file = true;
            }
            "vars" => {
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(err_at(lineno, "vars line declares no variables"));
                }
                vars = names;
            }
            "gen" => {
                if rest.is_empty() {
                    return Err(err_at(lineno, "gen line without a polynomial"));
                }
                gen_lines.push((lineno, rest.to_string()));
            }
            "skew" => {
                let size: usize = rest
                    .parse()
                    .map_err(|_| err_at(lineno, format!("bad skew size `{rest}`")))?;
                skew_size = Some(size);
            }
            "entry" => {
                let mut parts = rest.splitn(3, char::is_whitespace);
                let i: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err_at(lineno, "entry needs a row index"))?;
                let j: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err_at(lineno, "entry needs a column index"))?;
                let poly = parts
                    .next()
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| err_at(lineno, "entry needs a polynomial"))?;
                entry_lines.push((lineno, i, j, poly.to_string()));
            }
            other => return Err(err_at(lineno, format!("unknown directive `{other}`"))),
        }
    }

    let field = field.ok_or_else(|| {
        err_at(
            1,
            if field_from_file { "unreadable field line" } else { "missing `field` line" },
        )
    })?;
    let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();

    let mut gens = Vec::with_capacity(gen_lines.len());
    for (lineno, text) in &gen_lines {
        let p = parse_polynomial(text, &field, &var_refs).map_err(|e| relocate(e, *lineno))?;
        if p.is_zero() {
            return Err(err_at(*lineno, "zero generator"));
        }
        if p.homogeneous_degree().is_none() {
            return Err(err_at(*lineno, "inhomogeneous generator"));
        }
        gens.push(p);
    }

    let skew = match skew_size {
        None => {
            if !entry_lines.is_empty() {
                let l = entry_lines[0].0;
                return Err(err_at(l, "entry lines need a `skew <size>` header"));
            }
            None
        }
        Some(size) => {
            let mut upper = Vec::with_capacity(entry_lines.len());
            for (lineno, i, j, text) in &entry_lines {
                if *i == 0 || *j == 0 || *i >= *j || *j > size {
                    return Err(err_at(
                        *lineno,
                        format!("entry indices ({i},{j}) must satisfy 1 <= i < j <= {size}"),
                    ));
                }
                let p =
                    parse_polynomial(text, &field, &var_refs).map_err(|e| relocate(e, *lineno))?;
                upper.push(((*i - 1, *j - 1), p));
            }
            Some(
                SkewPolyMatrix::from_upper(field.clone(), vars.len(), size, upper)
                    .map_err(|e| err_at(1, e.to_string()))?,
            )
        }
    };

    Ok(ParsedFile { field, vars, gens, skew })
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::PolyParse { col, msg, .. } => Error::PolyParse { line, col, msg },
        other => other,
    }
}

pub fn parse_ideal_file(path: &std::path::Path, field_override: Option<&FieldSpec>) -> Result<ParsedFile> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_ideal_source(&src, field_override)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_exceptional_ideal() {
        let src = "field GF(3)\nvars x y z\ngen x^2*y\ngen x^2*z\ngen y^3\ngen z^3\ngen x^4+y^2*z^2\n";
        let parsed = parse_ideal_source(src, None).unwrap();
        assert_eq!(parsed.gens.len(), 5);
        let ideal = parsed.ideal().unwrap();
        assert_eq!(ideal.hilbert_function(6), vec![1, 3, 6, 6, 3, 1, 0]);
    }

    #[test]
    fn parses_over_q_with_comments() {
        let src = "# complete intersection\nfield Q\nvars x y z\ngen x^2  # quadric\ngen y^3\ngen z^3\n";
        let parsed = parse_ideal_source(src, None).unwrap();
        assert_eq!(parsed.field, FieldSpec::Rationals);
        assert_eq!(parsed.gens.len(), 3);
    }

    #[test]
    fn malformed_exponent_is_a_parse_error() {
        let src = "field Q\nvars x y z\ngen x^\n";
        match parse_ideal_source(src, None) {
            Err(Error::PolyParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn inhomogeneous_generator_rejected() {
        let src = "field Q\nvars x y z\ngen x^2 + y\n";
        assert!(matches!(parse_ideal_source(src, None), Err(Error::PolyParse { .. })));
    }

    #[test]
    fn unknown_variable_rejected() {
        let src = "field Q\nvars x y z\ngen w^2\n";
        assert!(parse_ideal_source(src, None).is_err());
    }

    #[test]
    fn field_override_reinterprets_coefficients() {
        let src = "field GF(3)\nvars x y z\ngen x^2 - 4*y^2\n";
        let f7 = FieldSpec::prime(7).unwrap();
        let parsed = parse_ideal_source(src, Some(&f7)).unwrap();
        assert_eq!(parsed.field, f7);
    }

    #[test]
    fn parses_skew_matrix() {
        let src = "field GF(3)\nvars x y z\nskew 5\nentry 1 2 x^2\nentry 1 4 z^2\nentry 2 3 y^2\nentry 3 4 x^2\nentry 1 5 y\nentry 2 5 z\n";
        let parsed = parse_ideal_source(src, None).unwrap();
        let m = parsed.skew.unwrap();
        assert_eq!(m.size(), 5);
        let ideal = artin_core::gorenstein::pfaffian_ideal(&m).unwrap();
        assert_eq!(ideal.hilbert_function(6), vec![1, 3, 6, 6, 3, 1, 0]);
    }

    #[test]
    fn bad_entry_indices_rejected() {
        let src = "field Q\nvars x y z\nskew 5\nentry 2 2 x\n";
        assert!(parse_ideal_source(src, None).is_err());
    }
}
