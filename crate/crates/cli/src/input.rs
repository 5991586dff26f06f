//! The `x = ... / y = ... / z = ...` input format.

use std::fmt;

use surfsym::arith::{MPoly, ParseError};
use surfsym::surface::{ts, Parametrization};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    /// 1-based line and column, when the error has a position.
    pub at: Option<(usize, usize)>,
    pub msg: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at {
            Some((line, col)) => write!(f, "line {}, column {}: {}", line, col, self.msg),
            None => write!(f, "{}", self.msg),
        }
    }
}

impl std::error::Error for InputError {}

/// The three components as parsed, plus the source text of each.
#[derive(Debug, Clone)]
pub struct InputSpec {
    pub components: [MPoly; 3],
    pub source: [String; 3],
}

impl InputSpec {
    pub fn parametrization(&self) -> Parametrization {
        let [x, y, z] = self.components.clone();
        Parametrization::new(x, y, z).expect("components are over (t, s)")
    }
}

const NAMES: [&str; 3] = ["x", "y", "z"];

/// Parses one `name = expr` assignment per line. Blank lines and text after
/// `#` are ignored.
pub fn parse_input(text: &str) -> Result<InputSpec, InputError> {
    let mut found: [Option<(MPoly, String)>; 3] = [None, None, None];
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let at = |col: usize| Some((ln + 1, col));
        let Some(eq) = line.find('=') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(InputError {
                at: at(col),
                msg: "expected `x = <expr>`, `y = <expr>` or `z = <expr>`".into(),
            });
        };
        let name = line[..eq].trim();
        let Some(idx) = NAMES.iter().position(|n| *n == name) else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(InputError {
                at: at(col),
                msg: format!("unknown component `{}`", name),
            });
        };
        if found[idx].is_some() {
            return Err(InputError {
                at: at(1),
                msg: format!("component `{}` given twice", name),
            });
        }
        let expr = &line[eq + 1..];
        let offset = eq + 1;
        let poly = MPoly::parse(expr, ts()).map_err(|e| match e {
            ParseError::Syntax { col, msg } => InputError {
                at: at(offset + col),
                msg,
            },
            ParseError::UnknownVariable { name, col } => InputError {
                at: at(offset + col),
                msg: format!("unknown variable `{}` (expected t or s)", name),
            },
        })?;
        found[idx] = Some((poly, expr.trim().to_string()));
    }
    let missing: Vec<&str> = (0..3).filter(|&i| found[i].is_none()).map(|i| NAMES[i]).collect();
    if !missing.is_empty() {
        let msg = if missing.len() == 1 {
            format!("missing component `{}`", missing[0])
        } else {
            format!("missing components {}", missing.iter().map(|m| format!("`{}`", m)).collect::<Vec<_>>().join(", "))
        };
        return Err(InputError { at: None, msg });
    }
    let [x, y, z] = found.map(|f| f.expect("checked above"));
    Ok(InputSpec {
        components: [x.0, y.0, z.0],
        source: [x.1, y.1, z.1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use surfsym::arith::rat::rat;

    #[test]
    fn enneper_component() {
        let spec = parse_input("x = -s^3+3*s*t^2+3*s\ny = t^3 - 3*t*s^2 - 3*t\nz = 3*t^2 - 3*s^2").unwrap();
        let expected = MPoly::parse("3*s - s^3 + 3*t^2*s", ts()).unwrap();
        assert_eq!(spec.components[0], expected);
    }

    #[test]
    fn missing_component_is_named() {
        let err = parse_input("x = t\ny = s").unwrap_err();
        assert!(err.msg.contains("`z`"), "{}", err);
    }

    #[test]
    fn rational_coefficient() {
        let spec = parse_input("x = 1/2*t\ny = s\nz = t*s").unwrap();
        assert_eq!(spec.components[0].coeff(&[1, 0]), rat(1, 2));
    }

    #[test]
    fn positions_are_reported() {
        let err = parse_input("x = t\ny = s +* t\nz = 1").unwrap_err();
        assert_eq!(err.at.map(|a| a.0), Some(2));
        let err = parse_input("x = t\ny = s\nz = w").unwrap_err();
        assert_eq!(err.at, Some((3, 5)));
        assert!(err.msg.contains("`w`"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let spec = parse_input("# saddle\n\nx = t\ny = s  # second\nz = t*s\n").unwrap();
        assert_eq!(spec.source[1], "s");
    }
}
