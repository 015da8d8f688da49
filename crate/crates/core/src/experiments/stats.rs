//! Small estimators shared by the reports.

/// `sqrt(p (1 - p) / trials)`.
pub fn binomial_stderr(p: f64, trials: usize) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(xs: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let (mut n, mut mean, mut m2) = (0usize, 0.0, 0.0);
    for x in xs {
        n += 1;
        let d = x - mean;
        mean += d / n as f64;
        m2 += d * (x - mean);
    }
    if n < 2 {
        return (mean, 0.0);
    }
    let var = m2 / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Median of a non-empty sample (mean of the middle pair when even).
pub fn median(xs: &[usize]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_unstable();
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m] as f64
    } else {
        (v[m - 1] + v[m]) as f64 / 2.0
    })
}

/// Poisson probabilities `Pr[X = j]` for `j = 0..len`.
pub fn poisson_pmf(mean: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut p = (-mean).exp();
    for j in 0..len {
        out.push(p);
        p *= mean / (j + 1) as f64;
    }
    out
}

/// Total variation distance between an empirical distribution on
/// `0..emp.len()` and Poisson(`mean`), counting the Poisson mass beyond the
/// observed range.
pub fn tv_to_poisson(emp: &[f64], mean: f64) -> f64 {
    let pois = poisson_pmf(mean, emp.len());
    let inside: f64 = emp.iter().zip(&pois).map(|(a, b)| (a - b).abs()).sum();
    let beyond = (1.0 - pois.iter().sum::<f64>()).max(0.0);
    0.5 * (inside + beyond)
}
