use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;
use crate::error::{Error, Result};

pub(super) fn parse_poly(s: &str) -> Result<IntPoly> {
    let s = s.trim();
    if s.starts_with('[') {
        return parse_json(s);
    }
    parse_symbolic(s)
}

fn parse_json(s: &str) -> Result<IntPoly> {
    let v: serde_json::Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad JSON array: {e}")))?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
    let coeffs = arr
        .iter()
        .map(|c| match c {
            serde_json::Value::Number(n) => n
                .to_string()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("non-integer coefficient {n}"))),
            serde_json::Value::String(t) => t
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("non-integer coefficient {t:?}"))),
            other => Err(Error::Parse(format!("bad coefficient {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.next().map(|(_, c)| c)
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.chars.peek()?.0;
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                end = i + c.len_utf8();
                self.chars.next();
            } else {
                break;
            }
        }
        (end > start).then(|| self.src[start..end].parse().expect("digits"))
    }
}

fn parse_symbolic(s: &str) -> Result<IntPoly> {
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut lx = Lexer {
        chars: s.char_indices().peekable(),
        src: s,
    };
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    while lx.peek().is_some() {
        let mut sign = 1i32;
        match lx.peek() {
            Some('+') => {
                lx.bump();
            }
            Some('-') => {
                lx.bump();
                sign = -1;
            }
            _ if first => {}
            Some(c) => return Err(Error::Parse(format!("expected '+' or '-', found {c:?}"))),
            None => unreachable!(),
        }
        first = false;
        let coef = lx.integer();
        if coef.is_some() && lx.peek() == Some('*') {
            lx.bump();
        }
        let (c, k) = match lx.peek() {
            Some('x') | Some('t') => {
                lx.bump();
                let k = if lx.peek() == Some('^') {
                    lx.bump();
                    lx.integer()
                        .ok_or_else(|| Error::Parse("missing exponent after '^'".into()))?
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?
                } else {
                    1usize
                };
                (coef.unwrap_or_else(|| BigInt::from(1)), k)
            }
            _ => (
                coef.ok_or_else(|| Error::Parse(format!("malformed term in {s:?}")))?,
                0,
            ),
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        if sign < 0 {
            coeffs[k] -= c;
        } else {
            coeffs[k] += c;
        }
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_and_json_agree() {
        let a = parse_poly("x^14 - x^11 - x^10 + x^7 - x^4 - x^3 + 1").unwrap();
        let b = parse_poly("[1,0,0,-1,-1,0,0,1,0,0,-1,-1,0,0,1]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn implicit_and_explicit_products() {
        assert_eq!(
            parse_poly("x^2-3x+1").unwrap(),
            parse_poly("1 - 3*x + x^2").unwrap()
        );
        assert_eq!(parse_poly("-x").unwrap(), IntPoly::from_i64s(&[0, -1]));
        assert_eq!(parse_poly("2 t^2").unwrap(), IntPoly::from_i64s(&[0, 0, 2]));
    }

    #[test]
    fn json_accepts_strings() {
        assert_eq!(
            parse_poly(r#"["-1", 0, "1"]"#).unwrap(),
            IntPoly::from_i64s(&[-1, 0, 1])
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("x y").is_err());
        assert!(parse_poly("[1.5]").is_err());
    }
}
