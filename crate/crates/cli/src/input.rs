//! Triple files:
//!
//! ```text
//! # comment
//! n = 3
//! f = X0^3
//! g = X1^2
//! h = X2^2
//! ```

use pblab_core::geometry::SectionTriple;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing `{0} = …` line")]
    Missing(&'static str),
    #[error("{0}")]
    Triple(String),
}

pub fn parse_triple_file(text: &str) -> Result<SectionTriple, InputError> {
    let mut n: Option<u32> = None;
    let mut polys: [Option<String>; 3] = [None, None, None];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| InputError::Line { line: i + 1, msg };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let slot = match key {
            "n" => {
                if n.is_some() {
                    return Err(err("duplicate `n`".into()));
                }
                n = Some(value.parse().map_err(|_| err(format!("invalid degree `{value}`")))?);
                continue;
            }
            "f" => 0,
            "g" => 1,
            "h" => 2,
            other => return Err(err(format!("unknown key `{other}`"))),
        };
        if polys[slot].replace(value.to_string()).is_some() {
            return Err(err(format!("duplicate `{key}`")));
        }
    }
    let n = n.ok_or(InputError::Missing("n"))?;
    let [f, g, h] = polys;
    let f = f.ok_or(InputError::Missing("f"))?;
    let g = g.ok_or(InputError::Missing("g"))?;
    let h = h.ok_or(InputError::Missing("h"))?;
    SectionTriple::from_text(n, &f, &g, &h).map_err(|e| InputError::Triple(e.to_string()))
}

/// `(X0^n, X1^(n−1), X2^(n−1))`, used when no input file is given.
pub fn standard_triple(n: u32) -> SectionTriple {
    SectionTriple::from_text(n, &format!("X0^{n}"), &format!("X1^{}", n - 1), &format!("X2^{}", n - 1))
        .expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let t = parse_triple_file("# quadric\nn = 2\n\nf = X0^2  # leading\ng = X1\nh = X2\n").unwrap();
        assert_eq!(t, standard_triple(2));
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_triple_file("n = 2\nf X0^2\n").unwrap_err();
        assert!(matches!(e, InputError::Line { line: 2, .. }));
        assert_eq!(parse_triple_file("n = 2\nf = X0^2\ng = X1\n").unwrap_err(), InputError::Missing("h"));
        assert!(matches!(parse_triple_file("n = 2\nf = X0^2\ng = X1\nh = X9\n"), Err(InputError::Triple(_))));
        assert!(matches!(parse_triple_file("n = two\n"), Err(InputError::Line { line: 1, .. })));
    }
}
