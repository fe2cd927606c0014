//! Complex literals of the form `a+bi`, `a-bi`, `a` or `bi`.

use ellipk::Complex64;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("invalid complex literal {s:?}; expected a+bi or a-bi, e.g. 0.5-0.25i");
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(s).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // The split point is the last sign that does not belong to an exponent
    // and is not the leading sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k]).ok_or_else(bad)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).ok_or_else(bad)?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_real(s: &str) -> Option<f64> {
    // f64::from_str also accepts "inf" and "NaN".
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}
