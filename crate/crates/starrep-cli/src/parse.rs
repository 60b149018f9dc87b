//! Command-line value parsing: complex numbers, time grids, sweep values.

use num_complex::Complex64;

/// Parse `RE`, `RE+IMi` or `RE-IMi` (no spaces, decimal or scientific
/// mantissa). A bare real is accepted as a complex number with zero
/// imaginary part.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Ok(re) = t.parse::<f64>() {
        return finite(Complex64::new(re, 0.0), t);
    }
    let body = t
        .strip_suffix('i')
        .ok_or_else(|| format!("invalid complex literal `{t}` (expected RE or RE+IMi)"))?;
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let i = split.ok_or_else(|| format!("invalid complex literal `{t}`"))?;
    let re: f64 = body[..i]
        .parse()
        .map_err(|_| format!("invalid real part in `{t}`"))?;
    let im_str = &body[i..];
    let im: f64 = match im_str {
        "+" => 1.0,
        "-" => -1.0,
        _ => im_str
            .parse()
            .map_err(|_| format!("invalid imaginary part in `{t}`"))?,
    };
    finite(Complex64::new(re, im), t)
}

fn finite(z: Complex64, s: &str) -> Result<Complex64, String> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("non-finite complex literal `{s}`"))
    }
}

/// Parse `start:stop:step` (inclusive grid) or a comma list of times.
pub fn parse_times(s: &str) -> Result<Vec<f64>, String> {
    let t = s.trim();
    if t.contains(':') {
        let parts: Vec<&str> = t.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("time grid `{t}` must be start:stop:step"));
        }
        let start: f64 = parts[0].parse().map_err(|_| format!("bad start in `{t}`"))?;
        let stop: f64 = parts[1].parse().map_err(|_| format!("bad stop in `{t}`"))?;
        let step: f64 = parts[2].parse().map_err(|_| format!("bad step in `{t}`"))?;
        if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0) {
            return Err(format!("time grid `{t}` needs finite bounds and step > 0"));
        }
        if stop < start {
            return Err(format!("time grid `{t}` has stop before start"));
        }
        let mut times = Vec::new();
        let mut k = 0u64;
        loop {
            let t_k = start + k as f64 * step;
            if t_k > stop + step * 1e-9 {
                break;
            }
            times.push(t_k);
            k += 1;
        }
        Ok(times)
    } else {
        t.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("invalid time `{tok}`"))
            })
            .collect()
    }
}

/// Split a comma list keeping the raw tokens (echoed verbatim in CSV output).
pub fn split_values(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_reals() {
        assert_eq!(parse_complex("0.9").unwrap(), Complex64::new(0.9, 0.0));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("1e-3").unwrap(), Complex64::new(1e-3, 0.0));
    }

    #[test]
    fn full_complex_forms() {
        assert_eq!(parse_complex("2+0i").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("0.2-1.5i").unwrap(), Complex64::new(0.2, -1.5));
        assert_eq!(parse_complex("-1.5+2i").unwrap(), Complex64::new(-1.5, 2.0));
        assert_eq!(parse_complex("1e-2+3e1i").unwrap(), Complex64::new(0.01, 30.0));
        assert_eq!(parse_complex("0+i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("0-i").unwrap(), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_complex("").is_err());
        assert!(parse_complex("2i").is_err());
        assert!(parse_complex("1+2").is_err());
        assert!(parse_complex("1 + 2i").is_err());
        assert!(parse_complex("nan").is_err());
        assert!(parse_complex("inf+0i").is_err());
    }

    #[test]
    fn time_grids() {
        assert_eq!(parse_times("0,1.5,3").unwrap(), vec![0.0, 1.5, 3.0]);
        assert_eq!(parse_times("0:1:0.5").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_times("0").unwrap(), vec![0.0]);
        assert!(parse_times("0:1").is_err());
        assert!(parse_times("0:1:-0.5").is_err());
        assert!(parse_times("1:0:0.5").is_err());
    }
}
