//! Cyclic Jacobi eigenvalue iteration for dense symmetric matrices.

// Index loops read more clearly than iterator chains for in-place matrix updates.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

/// Sweep cap and convergence threshold for [`eigenvalues_symmetric_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiConfig {
    /// Converged when the off-diagonal Frobenius norm is below `tol * ||m||_F`.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        JacobiConfig { tol: 1e-12, max_sweeps: 100 }
    }
}

fn frobenius(m: &[Vec<f64>]) -> f64 {
    m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal(m: &[Vec<f64>]) -> f64 {
    let mut s = 0.0;
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                s += x * x;
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of a symmetric matrix, sorted descending, with the default sweep cap.
pub fn eigenvalues_symmetric(m: &[Vec<f64>], tol: f64) -> Result<Vec<f64>> {
    eigenvalues_symmetric_with(m, JacobiConfig { tol, ..JacobiConfig::default() })
}

pub fn eigenvalues_symmetric_with(m: &[Vec<f64>], config: JacobiConfig) -> Result<Vec<f64>> {
    let n = m.len();
    if let Some(i) = m.iter().position(|row| row.len() != n) {
        return Err(Error::NotSymmetric(i, m[i].len()));
    }
    let norm = frobenius(m);
    let sym_tol = 1e-12 * norm.max(f64::MIN_POSITIVE);
    for i in 0..n {
        for j in i + 1..n {
            if (m[i][j] - m[j][i]).abs() > sym_tol {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }

    let mut a: Vec<Vec<f64>> = m.to_vec();
    let threshold = config.tol * norm;
    let mut converged = off_diagonal(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == config.max_sweeps {
            return Err(Error::NoConvergence(sweeps));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal(&a) <= threshold;
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Applies the rotation that annihilates `a[p][q]`.
fn rotate(a: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    // smaller root of t^2 + 2 theta t - 1 = 0
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.len();
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[r][p];
        let arq = a[r][q];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        a[r][p] = new_rp;
        a[p][r] = new_rp;
        a[r][q] = new_rq;
        a[q][r] = new_rq;
    }
    a[p][p] -= t * apq;
    a[q][q] += t * apq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn small_matrices() {
        let e = eigenvalues_symmetric(&[vec![0.0, 1.0], vec![1.0, 0.0]], 1e-12).unwrap();
        assert!(close(&e, &[1.0, -1.0], 1e-14));

        let e = eigenvalues_symmetric(&[vec![3.0, 6.0], vec![6.0, 0.0]], 1e-12).unwrap();
        let s = 153f64.sqrt();
        assert!(close(&e, &[(3.0 + s) / 2.0, (3.0 - s) / 2.0], 1e-12), "{e:?}");

        let id = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert_eq!(eigenvalues_symmetric(&id, 1e-12).unwrap(), vec![1.0, 1.0, 1.0]);

        assert!(eigenvalues_symmetric(&[], 1e-12).unwrap().is_empty());
        assert_eq!(eigenvalues_symmetric(&[vec![0.0; 2], vec![0.0; 2]], 1e-12).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn complete_graph_spectrum() {
        // J - I of size 6: {5, (-1)^5}
        let m: Vec<Vec<f64>> = (0..6).map(|i| (0..6).map(|j| if i == j { 0.0 } else { 1.0 }).collect()).collect();
        let e = eigenvalues_symmetric(&m, 1e-12).unwrap();
        assert!(close(&e, &[5.0, -1.0, -1.0, -1.0, -1.0, -1.0], 1e-12), "{e:?}");
    }

    #[test]
    fn path_graph_matches_cosines() {
        // P_n adjacency: 2 cos(pi j / (n+1))
        let n: usize = 9;
        let m: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 }).collect()).collect();
        let e = eigenvalues_symmetric(&m, 1e-12).unwrap();
        let expect: Vec<f64> =
            (1..=n).map(|j| 2.0 * (std::f64::consts::PI * j as f64 / (n as f64 + 1.0)).cos()).collect();
        assert!(close(&e, &expect, 1e-12), "{e:?}");
    }

    #[test]
    fn rejects_asymmetric_and_ragged() {
        assert!(matches!(
            eigenvalues_symmetric(&[vec![0.0, 1.0], vec![2.0, 0.0]], 1e-12),
            Err(Error::NotSymmetric(0, 1))
        ));
        assert!(eigenvalues_symmetric(&[vec![0.0, 1.0], vec![1.0]], 1e-12).is_err());
    }

    #[test]
    fn sweep_cap() {
        let m = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 5.0], vec![3.0, 5.0, 6.0]];
        let cfg = JacobiConfig { tol: 1e-12, max_sweeps: 0 };
        assert_eq!(eigenvalues_symmetric_with(&m, cfg), Err(Error::NoConvergence(0)));
    }
}
