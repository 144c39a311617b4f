//! Small least-squares fits for the scaling-exponent regressions.

/// Ordinary least squares line `y = slope * x + intercept`; returns
/// `(slope, intercept, rms_residual)`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    debug_assert!(xs.len() == ys.len() && xs.len() >= 2);
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let mut ss = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let r = y - (slope * x + intercept);
        ss += r * r;
    }
    (slope, intercept, (ss / n).sqrt())
}

/// Fit of the growth model `log2 mu = -a * j + d * log2(max(j, 2)) + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    pub a: f64,
    pub d: f64,
    pub c: f64,
    /// RMS residual in log2 units.
    pub residual: f64,
}

/// Least squares over the three-parameter growth model. `js` carries the
/// dyadic levels (eps = 2^-j), `log2_mu` the measured log2 measures.
pub fn fit_growth_model(js: &[f64], log2_mu: &[f64]) -> GrowthFit {
    debug_assert!(js.len() == log2_mu.len() && js.len() >= 4);
    // design: y = a * (-j) + d * log2(max(j,2)) + c
    let x1: Vec<f64> = js.iter().map(|&j| -j).collect();
    let x2: Vec<f64> = js.iter().map(|&j| j.max(2.0).log2()).collect();
    let n = js.len() as f64;

    // normal equations for [a, d, c]
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for i in 0..js.len() {
        let row = [x1[i], x2[i], 1.0];
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] += row[r] * row[c];
            }
            rhs[r] += row[r] * log2_mu[i];
        }
    }
    let sol = solve3(m, rhs);
    let (a, d, c) = (sol[0], sol[1], sol[2]);
    let mut ss = 0.0;
    for i in 0..js.len() {
        let r = log2_mu[i] - (a * x1[i] + d * x2[i] + c);
        ss += r * r;
    }
    GrowthFit { a, d, c, residual: (ss / n).sqrt() }
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        m.swap(col, piv);
        b.swap(col, piv);
        let p = m[col][col];
        for i in 0..3 {
            if i != col && m[i][col] != 0.0 {
                let f = m[i][col] / p;
                for j in 0..3 {
                    m[i][j] -= f * m[col][j];
                }
                b[i] -= f * b[col];
            }
        }
    }
    [b[0] / m[0][0], b[1] / m[1][1], b[2] / m[2][2]]
}
