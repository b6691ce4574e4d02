//! Parsing of `lo:hi:step` ranges and comma-separated count lists.

/// A float flag: either a single value or an inclusive `lo:hi:step`
/// range.
pub fn parse_float_range(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => {
            let v = parse_float(single)?;
            Ok(vec![v])
        }
        [lo, hi, step] => {
            let lo = parse_float(lo)?;
            let hi = parse_float(hi)?;
            let step = parse_float(step)?;
            if step <= 0.0 {
                return Err(format!("step must be positive in '{text}'"));
            }
            if hi < lo {
                return Err(format!("empty range '{text}'"));
            }
            let mut values = Vec::new();
            let mut k = 0u32;
            loop {
                let v = lo + step * k as f64;
                if v > hi + step * 1e-9 {
                    break;
                }
                values.push(v);
                k += 1;
                if k > 1_000_000 {
                    return Err(format!("range '{text}' has too many points"));
                }
            }
            Ok(values)
        }
        _ => Err(format!("expected 'value' or 'lo:hi:step', got '{text}'")),
    }
}

fn parse_float(text: &str) -> Result<f64, String> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| format!("not a number: '{text}'"))
}

/// A count flag: comma-separated integers, each optionally in
/// scientific notation (`1e6`).
pub fn parse_counts(text: &str) -> Result<Vec<u64>, String> {
    text.split(',').map(|tok| parse_count(tok.trim())).collect()
}

pub fn parse_count(text: &str) -> Result<u64, String> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v);
    }
    let f = text
        .parse::<f64>()
        .map_err(|_| format!("not a count: '{text}'"))?;
    if f >= 1.0 && f.fract() == 0.0 && f < 1e18 {
        Ok(f as u64)
    } else {
        Err(format!("not a positive integer: '{text}'"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_value() {
        assert_eq!(parse_float_range("0.25").unwrap(), vec![0.25]);
    }

    #[test]
    fn inclusive_range() {
        let v = parse_float_range("0.1:0.3:0.1").unwrap();
        assert_eq!(v.len(), 3);
        assert!((v[2] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn bad_ranges() {
        assert!(parse_float_range("1:2").is_err());
        assert!(parse_float_range("1:2:0").is_err());
        assert!(parse_float_range("2:1:0.1").is_err());
        assert!(parse_float_range("a").is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(parse_counts("100,200,400").unwrap(), vec![100, 200, 400]);
        assert_eq!(parse_count("1e6").unwrap(), 1_000_000);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }
}
