//! Small numerical utilities for the experiment harness.

/// Composite Simpson rule with `n` (even) subintervals.
pub fn composite_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    debug_assert!(n >= 2 && n % 2 == 0);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Simpson integration with interval doubling until two refinements agree
/// to the absolute tolerance.
pub fn simpson_to_tol<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let mut n = 64;
    let mut prev = composite_simpson(f, a, b, n);
    loop {
        n *= 2;
        let cur = composite_simpson(f, a, b, n);
        if (cur - prev).abs() <= tol || n >= 1 << 22 {
            return cur;
        }
        prev = cur;
    }
}

/// Absolute determinant of a 4x4 matrix by Gaussian elimination with
/// partial pivoting.
pub fn det4_abs(mut m: [[f64; 4]; 4]) -> f64 {
    let mut det = 1.0_f64;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
        }
        det *= m[col][col];
        for row in (col + 1)..4 {
            let factor = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    det.abs()
}

/// Sample mean and standard error (zero for fewer than two samples).
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}
