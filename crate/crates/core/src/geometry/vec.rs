//! Small fixed-size vector helpers.

pub type P2 = [f64; 2];
pub type P3 = [f64; 3];

/// Absolute tolerance for incidence and feasibility tests.
pub const GEOM_TOL: f64 = 1e-9;

pub fn dot2(a: P2, b: P2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn cross2(a: P2, b: P2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn sub2(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn add2(a: P2, b: P2) -> P2 {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn scale2(t: f64, a: P2) -> P2 {
    [t * a[0], t * a[1]]
}

/// Counterclockwise quarter turn.
pub fn perp2(a: P2) -> P2 {
    [-a[1], a[0]]
}

pub fn norm2(a: P2) -> f64 {
    a[0].hypot(a[1])
}

pub fn unit2(a: P2) -> Option<P2> {
    let n = norm2(a);
    (n > 1e-300 && n.is_finite()).then(|| [a[0] / n, a[1] / n])
}

pub fn dot3(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn sub3(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn norm3(a: P3) -> f64 {
    dot3(a, a).sqrt()
}

pub fn unit3(a: P3) -> Option<P3> {
    let n = norm3(a);
    (n > 1e-300 && n.is_finite()).then(|| [a[0] / n, a[1] / n, a[2] / n])
}

/// Solves `m·x = b` by Gaussian elimination with partial pivoting; `None`
/// when the matrix is (numerically) singular.
pub fn solve<const N: usize>(mut m: [[f64; N]; N], mut b: [f64; N]) -> Option<[f64; N]> {
    let scale = m.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs())).max(1e-300);
    for col in 0..N {
        let piv = (col..N).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..N {
            let f = m[row][col] / m[col][col];
            for k in col..N {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; N];
    for row in (0..N).rev() {
        let s: f64 = (row + 1..N).map(|k| m[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / m[row][row];
    }
    Some(x)
}

/// Numerical rank of a list of vectors together with an orthonormal basis
/// of their span (Gram–Schmidt with re-orthogonalization).
pub fn span_basis<const N: usize>(vs: &[[f64; N]], tol: f64) -> Vec<[f64; N]> {
    let mut basis: Vec<[f64; N]> = Vec::new();
    for v in vs {
        let mut w = *v;
        for _ in 0..2 {
            for b in &basis {
                let d: f64 = (0..N).map(|i| w[i] * b[i]).sum();
                for i in 0..N {
                    w[i] -= d * b[i];
                }
            }
        }
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > tol * vn.max(1.0) {
            for x in &mut w {
                *x /= n;
            }
            basis.push(w);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_systems() {
        let x = solve([[2.0, 1.0], [1.0, 3.0]], [3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve([[1.0, 2.0], [2.0, 4.0]], [1.0, 2.0]).is_none());
    }

    #[test]
    fn span_rank() {
        assert_eq!(span_basis(&[[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 1.0, 1.0]], 1e-9).len(), 2);
    }
}
