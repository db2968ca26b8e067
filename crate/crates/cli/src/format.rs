//! Number rendering for reports and the plain-text printer.

use num_rational::BigRational;
use serde_json::{json, Value};

use salemkit::certroots::ComplexInterval;
use salemkit::interval::{certified_decimal, rational_to_f64, RealEnclosure};

const SIGNIFICANT: i32 = 15;

/// Fractional digits giving about 15 significant digits at the largest of
/// the given magnitudes.
fn frac_digits(ends: &[&BigRational]) -> usize {
    let m = ends.iter().map(|x| rational_to_f64(x).abs()).fold(0.0, f64::max);
    let mag = if m > 0.0 && m.is_finite() { m.log10().floor() as i32 } else { 0 };
    (SIGNIFICANT - 1 - mag).clamp(0, 60) as usize
}

fn decimal(lo: &BigRational, hi: &BigRational, digits: usize, exact: bool) -> Value {
    let (d, k) = certified_decimal(lo, hi, digits);
    let mut v = json!({ "decimal": d, "certified_digits": k });
    if exact {
        v["lo"] = json!(lo.to_string());
        v["hi"] = json!(hi.to_string());
    }
    v
}

/// Midpoint decimal, every printed fractional digit certified; endpoints
/// added when `exact`.
pub fn real(e: &RealEnclosure, exact: bool) -> Value {
    decimal(&e.lo, &e.hi, frac_digits(&[&e.lo, &e.hi]), exact)
}

pub fn complex(b: &ComplexInterval, exact: bool) -> Value {
    let k = frac_digits(&[&b.re_lo, &b.re_hi, &b.im_lo, &b.im_hi]);
    json!({
        "re": decimal(&b.re_lo, &b.re_hi, k, exact),
        "im": decimal(&b.im_lo, &b.im_hi, k, exact),
    })
}

fn as_number(v: &Value) -> Option<String> {
    let d = v.get("decimal")?.as_str()?;
    let k = v.get("certified_digits")?;
    Some(match (v.get("lo"), v.get("hi")) {
        (Some(lo), Some(hi)) => format!("{d} [{k} digits] in [{}, {}]", unquote(lo), unquote(hi)),
        _ => format!("{d} [{k} digits]"),
    })
}

fn as_complex(v: &Value) -> Option<String> {
    let re = v.get("re")?;
    let im = v.get("im")?;
    let (r, i) = (re.get("decimal")?.as_str()?, im.get("decimal")?.as_str()?);
    let (sign, i) = match i.strip_prefix('-') {
        Some(rest) => ('-', rest),
        None => ('+', i),
    };
    let mut s = format!("{r} {sign} {i}i");
    if re.get("lo").is_some() {
        s.push_str(&format!("  (re {}, im {})", as_number(re)?, as_number(im)?));
    }
    Some(s)
}

fn unquote(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Object(_) => as_number(v).or_else(|| as_complex(v)),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(unquote).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(_) => None,
        other => Some(unquote(other)),
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                render(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

/// Indented `key: value` listing of a results object.
pub fn render_text(results: &Value) -> String {
    let mut out = String::new();
    match results {
        Value::Object(m) => {
            for (k, v) in m {
                render(&mut out, k, v, 0);
            }
        }
        other => render(&mut out, "result", other, 0),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn digits_follow_width() {
        let v = real(&RealEnclosure::new(r(1, 3), r(1, 3)), false);
        assert_eq!(v["decimal"], "0.333333333333333");
        let v = real(&RealEnclosure::new(r(333, 1000), r(334, 1000)), false);
        assert_eq!(v["certified_digits"], 3);
        let v = real(&RealEnclosure::new(r(1234, 1), r(1234, 1)), true);
        assert_eq!(v["decimal"], "1234.00000000000");
        assert_eq!(v["lo"], "1234");
    }

    #[test]
    fn text_rendering() {
        let b = ComplexInterval::new(r(1, 2), r(1, 2), r(-1, 4), r(-1, 4)).unwrap();
        let s = render_text(&json!({ "z": complex(&b, false), "flag": true, "xs": [1, 2] }));
        assert!(s.contains("z: 0.500000000000000 - 0.250000000000000i"));
        assert!(s.contains("flag: true"));
        assert!(s.contains("xs: [1, 2]"));
    }
}
