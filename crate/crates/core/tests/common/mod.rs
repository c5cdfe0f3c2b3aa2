//! Reference computations written against textbook formulas, sharing no code
//! with the library beyond its input types.

#![allow(dead_code)]

use num_complex::Complex64;
use ortho_szego::{RealRecurrence, VerblunskySeq};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alpha_uniform(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-0.9..0.9)).collect()
}

pub fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `|a − b| / max(1, |b|)`, maximised over entries.
pub fn rel_dev(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "length mismatch");
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs().max(1.0))
        .fold(0.0, f64::max)
}

pub fn flat(rc: &RealRecurrence) -> Vec<f64> {
    let mut v = rc.b_coeffs().to_vec();
    v.extend_from_slice(rc.d_coeffs());
    v
}

pub fn reals(vs: &VerblunskySeq) -> Vec<f64> {
    vs.as_slice().iter().map(|a| a.re).collect()
}

// ---------------------------------------------------------------------------
// Polynomials

/// Monic `P_0 .. P_n` at `x` from `b_1.., d_1..` (slices are 0-based).
pub fn monic_oprl(b: &[f64], d: &[f64], n: usize, x: Complex64) -> Vec<Complex64> {
    let mut p = vec![cx(1.0)];
    if n == 0 {
        return p;
    }
    p.push(x - b[0]);
    for j in 1..n {
        let next = (x - b[j]) * p[j] - d[j - 1] * p[j - 1];
        p.push(next);
    }
    p
}

/// `(Φ_n(z), Φ*_n(z))` for real Verblunsky coefficients.
pub fn szego_phi(alpha: &[f64], n: usize, z: Complex64) -> (Complex64, Complex64) {
    let (mut phi, mut star) = (cx(1.0), cx(1.0));
    for &a in &alpha[..n] {
        let zp = z * phi;
        phi = zp - a * star;
        star -= a * zp;
    }
    (phi, star)
}

/// Monic OPRL value through the circle: for real `α` and `x = (z + 1/z)/2`,
/// `P_n(x) = z^{−n}(Φ_{2n}(z) + Φ*_{2n}(z)) / (2ⁿ (1 − α_{2n−1}))`.
pub fn monic_via_circle(alpha: &[f64], n: usize, z: Complex64) -> Complex64 {
    if n == 0 {
        return cx(1.0);
    }
    let (phi, star) = szego_phi(alpha, 2 * n, z);
    (phi + star) / (z.powi(n as i32) * 2f64.powi(n as i32) * (1.0 - alpha[2 * n - 1]))
}

/// Recurrence coefficients `b_1..b_n`, `d_1..d_n` of the Szegő preimage of
/// real `α` (at least `2n + 2` entries), recovered by solving
/// `P_{j+1} − x P_j = −b_{j+1} P_j − d_j P_{j−1}` at two real points.
pub fn fitted_recurrence(alpha: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(alpha.len() >= 2 * n + 2);
    let nodes = [0.45, 0.3];
    let xs = nodes.map(|z| 0.5 * (z + 1.0 / z));
    let p: Vec<Vec<f64>> = nodes
        .iter()
        .map(|&z| (0..=n + 1).map(|j| monic_via_circle(alpha, j, cx(z)).re).collect())
        .collect();
    let mut b = vec![xs[0] - p[0][1]];
    let mut d = Vec::new();
    for j in 1..=n {
        let r0 = p[0][j + 1] - xs[0] * p[0][j];
        let r1 = p[1][j + 1] - xs[1] * p[1][j];
        let (a11, a12, a21, a22) = (p[0][j], p[0][j - 1], p[1][j], p[1][j - 1]);
        let det = a11 * a22 - a12 * a21;
        if j < n {
            b.push(-(r0 * a22 - a12 * r1) / det);
        }
        d.push(-(a11 * r1 - r0 * a21) / det);
    }
    (b, d)
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    match n {
        0 => 1.0,
        1 => m[0][0],
        _ => (0..n)
            .filter(|&j| m[0][j] != 0.0)
            .map(|j| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][j] * det_cofactor(&minor)
            })
            .sum(),
    }
}

/// Monic Jacobi matrix `J_N`: diagonal `b`, super-diagonal ones,
/// sub-diagonal `d`.
pub fn monic_jacobi(b: &[f64], d: &[f64], order: usize) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; order]; order];
    for i in 0..order {
        m[i][i] = b[i];
        if i + 1 < order {
            m[i][i + 1] = 1.0;
            m[i + 1][i] = d[i];
        }
    }
    m
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Spectral functions

/// `S(x) = 1/(x − b_1 − d_1/(x − b_2 − …))`, evaluated from the bottom.
pub fn s_backward(b: &[f64], d: &[f64], depth: usize, x: Complex64) -> Complex64 {
    let mut tail = cx(0.0);
    for j in (0..depth).rev() {
        let dj = if j + 1 < depth { d[j] } else { 0.0 };
        tail = 1.0 / (x - b[j] - dj * tail);
    }
    tail
}

/// `F(z) = (1 + z f(z)) / (1 − z f(z))`, with the Schur function `f`
/// rebuilt from its parameters `α_0, …, α_{depth−1}`.
pub fn f_schur(alpha: &[Complex64], depth: usize, z: Complex64) -> Complex64 {
    let mut f = cx(0.0);
    for &a in alpha[..depth].iter().rev() {
        f = (a + z * f) / (1.0 + a.conj() * z * f);
    }
    (1.0 + z * f) / (1.0 - z * f)
}

/// Disk point on the in-disk branch for real `|x| > 1`.
pub fn z_of(x: f64) -> f64 {
    x - x.signum() * (x * x - 1.0).sqrt()
}

pub fn s_chebyshev_t(x: f64) -> f64 {
    x.signum() / (x * x - 1.0).sqrt()
}

pub fn s_chebyshev_u(x: f64) -> f64 {
    2.0 * z_of(x)
}

/// `d` sequence of Chebyshev T: `d_1 = 1/2`, then `1/4`.
pub fn chebyshev_t_d(n: usize) -> Vec<f64> {
    (0..n).map(|j| if j == 0 { 0.5 } else { 0.25 }).collect()
}

/// `α = (0, −1/2, 0, −1/3, …)`.
pub fn chebyshev_u_alpha(len: usize) -> Vec<f64> {
    (0..len)
        .map(|j| if j % 2 == 0 { 0.0 } else { -1.0 / ((j + 3) / 2) as f64 })
        .collect()
}
