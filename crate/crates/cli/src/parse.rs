//! Value parsers for grids and length lists.

/// `a:b:step`, inclusive of `b` up to rounding. A bare number is a
/// one-point grid.
pub fn grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|_| format!("'{p}' is not a number"))
    };
    match parts.as_slice() {
        [x] => Ok(vec![num(x)?]),
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if !(step > 0.0 && a.is_finite() && b.is_finite()) {
                return Err("grid needs finite ends and a positive step".into());
            }
            if b < a {
                return Err(format!("grid end {b} is below its start {a}"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| a + i as f64 * step).collect())
        }
        _ => Err(format!("'{s}' is not of the form a:b:step")),
    }
}

/// Comma-separated lengths and inclusive ranges: `2..10,100`.
pub fn k_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let num = |p: &str| {
            p.parse::<usize>()
                .map_err(|_| format!("'{p}' is not a length"))
        };
        match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
                if hi < lo {
                    return Err(format!("empty range {item}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(item)?),
        }
    }
    if out.is_empty() {
        return Err("no lengths given".into());
    }
    Ok(out)
}

/// Comma-separated vertex counts.
pub fn n_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("'{p}' is not a count"))
        })
        .collect()
}
