//! S- and C-functions through continued-fraction convergents, the 2×2
//! transfer matrices of the perturbed families and the pointwise checks
//! that tie them together across the Szegő map.

use num_complex::Complex64;
use serde::Serialize;

use crate::numeric::{c, DEN_TOL};
use crate::oprl::{oprl_polys, prepend_coefficients, shift_coefficients, RealRecurrence};
use crate::opuc::{opuc_polys, prepend_verblunsky, second_kind, VerblunskySeq};
use crate::polyhom::{Poly, PolyMatrix2};
use crate::szego::{map_x_to_z, map_z_to_x, sqrt_x2_minus_1};
use crate::{Error, Result};

pub const DEFAULT_DEPTH: usize = 40;

/// Minimal distance to `[−1, 1]` (for `x`) or to the unit circle (for `z`).
pub const FORBIDDEN_GAP: f64 = 1e-6;

const RESCALE: f64 = 1e100;

/// Convergent value together with an Aitken-extrapolated error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

fn aitken(s0: Complex64, s1: Complex64, s2: Complex64) -> f64 {
    let d1 = s1 - s0;
    let d2 = s2 - s1;
    let den = d2 - d1;
    if den.norm() <= f64::EPSILON * s2.norm().max(1.0) {
        return d2.norm();
    }
    let limit = s2 - d2 * d2 / den;
    (limit - s2).norm().max(d2.norm().min(f64::EPSILON * s2.norm()))
}

fn estimate_from(tail: &[Complex64]) -> Estimate {
    let value = *tail.last().expect("at least one convergent");
    let error = match tail.len() {
        0 | 1 => f64::INFINITY,
        2 => (tail[1] - tail[0]).norm(),
        n => aitken(tail[n - 3], tail[n - 2], tail[n - 1]),
    };
    Estimate { value, error }
}

fn distance_to_segment(x: Complex64) -> f64 {
    let nearest = c(x.re.clamp(-1.0, 1.0));
    (x - nearest).norm()
}

/// `S(x)` of the measure behind a recurrence, cut at a fixed convergent order.
#[derive(Debug, Clone, PartialEq)]
pub struct SFunctionHandle {
    rc: RealRecurrence,
    depth: usize,
}

impl SFunctionHandle {
    pub fn new(rc: RealRecurrence, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidSpec("depth must be >= 1".into()));
        }
        rc.require(depth, depth - 1)?;
        Ok(SFunctionHandle { rc, depth })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn recurrence(&self) -> &RealRecurrence {
        &self.rc
    }

    fn convergents(&self, x: Complex64, keep: usize) -> Result<Vec<Complex64>> {
        if distance_to_segment(x) <= FORBIDDEN_GAP {
            return Err(Error::ForbiddenPoint { point: x });
        }
        let zero = c(0.0);
        // P_{n-1}, P_n and Q_n = P^{(1)}_{n-1}, which obeys the same recurrence.
        let (mut p_prev, mut p) = (zero, c(1.0));
        let (mut q_prev, mut q) = (zero, zero);
        let mut out = Vec::with_capacity(keep);
        for n in 0..self.depth {
            let step = x - self.rc.b(n + 1);
            let d = self.rc.d(n);
            let p_next = step * p - d * p_prev;
            let q_next = if n == 0 { c(1.0) } else { step * q - d * q_prev };
            p_prev = p;
            p = p_next;
            q_prev = q;
            q = q_next;
            let scale = p.norm().max(q.norm());
            if scale > RESCALE {
                p /= scale;
                p_prev /= scale;
                q /= scale;
                q_prev /= scale;
            }
            if n + keep >= self.depth {
                if p.norm() <= DEN_TOL * (1.0 + q.norm()) {
                    if n + 1 == self.depth {
                        return Err(Error::PoleHit { point: x });
                    }
                    continue;
                }
                out.push(q / p);
            }
        }
        Ok(out)
    }

    /// `P^{(1)}_{D−1}(x) / P_D(x)` with `D` the handle depth.
    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        Ok(*self.convergents(x, 1)?.last().expect("one convergent"))
    }

    pub fn estimate(&self, x: Complex64) -> Result<Estimate> {
        Ok(estimate_from(&self.convergents(x, 3)?))
    }
}

/// `F(z)` of the measure behind a Verblunsky sequence, cut at a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct CFunctionHandle {
    vs: VerblunskySeq,
    depth: usize,
}

impl CFunctionHandle {
    pub fn new(vs: VerblunskySeq, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidSpec("depth must be >= 1".into()));
        }
        vs.require(depth)?;
        Ok(CFunctionHandle { vs, depth })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn verblunsky(&self) -> &VerblunskySeq {
        &self.vs
    }

    fn convergents(&self, z: Complex64, keep: usize) -> Result<Vec<Complex64>> {
        if z.norm() >= 1.0 - FORBIDDEN_GAP {
            return Err(Error::ForbiddenPoint { point: z });
        }
        let one = c(1.0);
        let (mut phi, mut phi_star) = (one, one);
        let (mut omega, mut omega_star) = (one, one);
        let mut out = Vec::with_capacity(keep);
        for (n, &a) in self.vs.as_slice()[..self.depth].iter().enumerate() {
            let zp = z * phi;
            phi = zp - a.conj() * phi_star;
            phi_star -= a * zp;
            let zo = z * omega;
            omega = zo + a.conj() * omega_star;
            omega_star += a * zo;
            if n + keep >= self.depth {
                if phi_star.norm() <= DEN_TOL * (1.0 + omega_star.norm()) {
                    if n + 1 == self.depth {
                        return Err(Error::PoleHit { point: z });
                    }
                    continue;
                }
                out.push(omega_star / phi_star);
            }
        }
        Ok(out)
    }

    /// `Ω*_D(z) / Φ*_D(z)`; exactly 1 at `z = 0`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(*self.convergents(z, 1)?.last().expect("one convergent"))
    }

    pub fn estimate(&self, z: Complex64) -> Result<Estimate> {
        Ok(estimate_from(&self.convergents(z, 3)?))
    }
}

pub fn s_convergent(h: &SFunctionHandle, x: Complex64) -> Result<Complex64> {
    h.eval(x)
}

pub fn f_convergent(h: &CFunctionHandle, z: Complex64) -> Result<Complex64> {
    h.eval(z)
}

/// `|F(z) − (1 − z²)/(2z) · S(x)|` at real `|x| > 1`, `z = x − √(x² − 1)`.
///
/// `S` uses `depth` recurrence pairs; `F` uses every available Verblunsky
/// coefficient up to `2 depth`.
pub fn fs_bridge_check(rc: &RealRecurrence, vs: &VerblunskySeq, x: f64, depth: usize) -> Result<f64> {
    let xc = c(x);
    if distance_to_segment(xc) <= FORBIDDEN_GAP {
        return Err(Error::ForbiddenPoint { point: xc });
    }
    let z = map_x_to_z(xc);
    let s = SFunctionHandle::new(rc.clone(), depth)?.eval(xc)?;
    let f_depth = vs.len().min(2 * depth);
    let f = CFunctionHandle::new(vs.clone(), f_depth)?.eval(z)?;
    Ok((f - sqrt_x2_minus_1(xc) * s).norm())
}

// ---------------------------------------------------------------------------
// Transfer matrices

fn real_poly(coeffs: &[f64]) -> Poly {
    Poly::from_real(coeffs)
}

/// `B^{(k)} = [[P_k, −P^{(1)}_{k−1}], [d_k P_{k−1}, −d_k P^{(1)}_{k−2}]]` in `x`,
/// with `S^{(k)} ≐ B^{(k)} S`.
pub fn matrix_b_assoc(rc: &RealRecurrence, k: usize) -> Result<PolyMatrix2> {
    if k == 0 {
        return Ok(PolyMatrix2::identity());
    }
    rc.require(k, k)?;
    let p = oprl_polys(rc, k)?;
    let p1 = oprl_polys(&shift_coefficients(rc, 1)?, k - 1)?;
    let dk = c(rc.d(k));
    let p1_km2 = if k >= 2 { p1[k - 2].clone() } else { Poly::zero() };
    Ok(PolyMatrix2::new(
        p[k].clone(),
        -&p1[k - 1],
        p[k - 1].scale(dk),
        -&p1_km2.scale(dk),
    ))
}

fn anti_families(
    rc: &RealRecurrence,
    pre_b: &[f64],
    pre_d: &[f64],
) -> Result<(Vec<Poly>, Vec<Poly>, Complex64)> {
    let k = pre_b.len();
    let ext = prepend_coefficients(rc, pre_b, pre_d)?;
    ext.require(k + 1, k)?;
    let p = oprl_polys(&ext, k)?;
    let p1 = oprl_polys(&shift_coefficients(&ext, 1)?, k)?;
    Ok((p, p1, c(pre_d[k - 1])))
}

/// `B^{(−k)}` with `S^{(−k)} ≐ B^{(−k)} S`, `k = pre_b.len()`:
/// `[[d̃_k P^{(−k+1)}_{k−2}, −P^{(−k+1)}_{k−1}], [d̃_k P^{(−k)}_{k−1}, −P^{(−k)}_k]]`.
///
/// `P^{(−k)}` is the anti-associated family, `P^{(−k+1)}` its first associated
/// family and `d̃_k` the last prepended `d`. This is the inverse of
/// `B^{(k)}` built from the extended coefficients.
pub fn matrix_b_antiassoc(rc: &RealRecurrence, pre_b: &[f64], pre_d: &[f64]) -> Result<PolyMatrix2> {
    let k = pre_b.len();
    if k == 0 {
        return Ok(PolyMatrix2::identity());
    }
    let (p, p1, dk) = anti_families(rc, pre_b, pre_d)?;
    let p1_km2 = if k >= 2 { p1[k - 2].clone() } else { Poly::zero() };
    Ok(PolyMatrix2::new(
        p1_km2.scale(dk),
        -&p1[k - 1],
        p[k - 1].scale(dk),
        -&p[k],
    ))
}

/// The variant with the upper-left and lower-right families swapped,
/// `[[d̃_k P^{(−k)}_{k−2}, −P^{(−k+1)}_{k−1}], [d̃_k P^{(−k)}_{k−1}, −P^{(−k+1)}_k]]`.
///
/// Kept for comparison only: already at `k = 1` it produces
/// `1/(x − b_1 − d̃_1 S)` instead of `1/(x − b̃_1 − d̃_1 S)`.
pub fn matrix_b_antiassoc_swapped(
    rc: &RealRecurrence,
    pre_b: &[f64],
    pre_d: &[f64],
) -> Result<PolyMatrix2> {
    let k = pre_b.len();
    if k == 0 {
        return Ok(PolyMatrix2::identity());
    }
    let (p, p1, dk) = anti_families(rc, pre_b, pre_d)?;
    let p_km2 = if k >= 2 { p[k - 2].clone() } else { Poly::zero() };
    Ok(PolyMatrix2::new(
        p_km2.scale(dk),
        -&p1[k - 1],
        p[k - 1].scale(dk),
        -&p1[k],
    ))
}

fn upsilon_parts(vs: &VerblunskySeq, k: usize) -> Result<[Poly; 4]> {
    let (phi, phi_star) = opuc_polys(vs, k)?;
    let (omega, omega_star) = opuc_polys(&second_kind(&vs.truncate(k)?), k)?;
    Ok([
        phi[k].clone(),
        phi_star[k].clone(),
        omega[k].clone(),
        omega_star[k].clone(),
    ])
}

/// `Υ^{(k)} = [[Φ_k + Φ*_k, Ω_k − Ω*_k], [Φ_k − Φ*_k, Ω_k + Ω*_k]]` in `z`,
/// with `F^{(k)} ≐ Υ^{(k)} F`.
pub fn matrix_upsilon_assoc(vs: &VerblunskySeq, k: usize) -> Result<PolyMatrix2> {
    let [phi, phi_s, om, om_s] = upsilon_parts(vs, k)?;
    Ok(PolyMatrix2::new(&phi + &phi_s, &om - &om_s, &phi - &phi_s, &om + &om_s))
}

/// `Υ^{(−k)} = [[Ω̃_k + Ω̃*_k, Ω̃*_k − Ω̃_k], [Φ̃*_k − Φ̃_k, Φ̃_k + Φ̃*_k]]` in `z`
/// for the family with `ξ` prepended; `F^{(−k)} ≐ Υ^{(−k)} F`.
pub fn matrix_upsilon_antiassoc(xi: &[Complex64]) -> Result<PolyMatrix2> {
    let k = xi.len();
    let vs = prepend_verblunsky(&VerblunskySeq::zeros(0), xi)?;
    let [phi, phi_s, om, om_s] = upsilon_parts(&vs, k)?;
    Ok(PolyMatrix2::new(&om + &om_s, &om_s - &om, &phi_s - &phi, &phi + &phi_s))
}

// ---------------------------------------------------------------------------
// Pointwise checks

/// One evaluation row: `{ point, lhs, rhs, residual }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckRow {
    pub point: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

impl CheckRow {
    fn new(point: Complex64, lhs: Complex64, rhs: Complex64) -> Self {
        CheckRow {
            point,
            lhs,
            rhs,
            residual: (lhs - rhs).norm(),
        }
    }
}

fn apply(m: &PolyMatrix2, g: Complex64, t: Complex64, point: Complex64) -> Result<Complex64> {
    m.apply(g, t).map_err(|e| match e {
        Error::DenominatorVanishes { .. } => Error::PoleHit { point },
        other => other,
    })
}

/// `S_transformed(x)` against `M(x) · S(x)`.
pub fn transfer_check_line(
    m: &PolyMatrix2,
    s: &SFunctionHandle,
    s_transformed: &SFunctionHandle,
    x: Complex64,
) -> Result<CheckRow> {
    let lhs = s_transformed.eval(x)?;
    let rhs = apply(m, s.eval(x)?, x, x)?;
    Ok(CheckRow::new(x, lhs, rhs))
}

/// `F_transformed(z)` against `M(z) · F(z)`.
pub fn transfer_check_circle(
    m: &PolyMatrix2,
    f: &CFunctionHandle,
    f_transformed: &CFunctionHandle,
    z: Complex64,
) -> Result<CheckRow> {
    let lhs = f_transformed.eval(z)?;
    let rhs = apply(m, f.eval(z)?, z, z)?;
    Ok(CheckRow::new(z, lhs, rhs))
}

/// A matrix acting on S-functions, carried to the circle: with
/// `x = (z + 1/z)/2` and `w = 2z/(1 − z²)`, compares
/// `w F_transformed(z)` with `M(x) · (w F(z))`.
pub fn conjugate_check_line(
    m: &PolyMatrix2,
    f: &CFunctionHandle,
    f_transformed: &CFunctionHandle,
    z: Complex64,
) -> Result<CheckRow> {
    let x = map_z_to_x(z)?;
    let w = 2.0 * z / (1.0 - z * z);
    let lhs = w * f_transformed.eval(z)?;
    let rhs = apply(m, w * f.eval(z)?, x, z)?;
    Ok(CheckRow::new(z, lhs, rhs))
}

/// A matrix acting on C-functions, carried to the line: with
/// `z = x − √(x² − 1)`, compares `√(x² − 1) S_transformed(x)` with
/// `M(z) · (√(x² − 1) S(x))`.
pub fn conjugate_check_circle(
    m: &PolyMatrix2,
    s: &SFunctionHandle,
    s_transformed: &SFunctionHandle,
    x: Complex64,
) -> Result<CheckRow> {
    let z = map_x_to_z(x);
    let r = sqrt_x2_minus_1(x);
    let lhs = r * s_transformed.eval(x)?;
    let rhs = apply(m, r * s.eval(x)?, z, x)?;
    Ok(CheckRow::new(x, lhs, rhs))
}

// ---------------------------------------------------------------------------
// Corollaries

/// `F̂^{(1)} ≐ M · F_Ω` with `F_Ω = 1/F`, in `z`:
/// `[−(1 − z²)² F_Ω + (1 − z²)(z² − 2b_1 z + 1)] / (4 d_1 z²)`.
pub fn corollary_assoc1_matrix(b1: f64, d1: f64) -> PolyMatrix2 {
    PolyMatrix2::new(
        real_poly(&[-1.0, 0.0, 2.0, 0.0, -1.0]),
        real_poly(&[1.0, -2.0 * b1, 0.0, 2.0 * b1, -1.0]),
        Poly::zero(),
        real_poly(&[0.0, 0.0, 4.0 * d1]),
    )
}

/// `F̃_Ω ≐ [[Ã, B̃], [0, D̃]] · F` with `Ã = 4 d̃_1 z²`,
/// `B̃ = −(1 − z²)(z² − 2 b̃_1 z + 1)`, `D̃ = −(1 − z²)²`, in `z`.
pub fn corollary_antiassoc1_matrix(b1: f64, d1: f64) -> PolyMatrix2 {
    PolyMatrix2::new(
        real_poly(&[0.0, 0.0, 4.0 * d1]),
        real_poly(&[-1.0, 2.0 * b1, 0.0, -2.0 * b1, 1.0]),
        Poly::zero(),
        real_poly(&[-1.0, 0.0, 2.0, 0.0, -1.0]),
    )
}

/// `Ŝ^{(2)} ≐ [[P_1, −1], [(λ − 1)(1 − x²), (λ − 1)(x + b_1)]] · S` with
/// `λ = 2/(1 − α_1)`, for the associated OPUC of order 2, in `x`.
pub fn corollary_assoc2_matrix(b1: f64, alpha1: f64) -> PolyMatrix2 {
    let l = 2.0 / (1.0 - alpha1) - 1.0;
    PolyMatrix2::new(
        real_poly(&[-b1, 1.0]),
        real_poly(&[-1.0]),
        real_poly(&[l, 0.0, -l]),
        real_poly(&[l * b1, l]),
    )
}

/// `[[K̃(x − b̃_1), 1], [K̃(x² − 1), x + b̃_1]]` with `K̃ = (1 − ξ_1)/(1 + ξ_1)`.
///
/// Does not reproduce `S̃^{(−2)}` in general; see
/// [`corollary_antiassoc2_matrix`].
pub fn corollary_antiassoc2_matrix_as_published(b1: f64, xi1: f64) -> PolyMatrix2 {
    let k = (1.0 - xi1) / (1.0 + xi1);
    PolyMatrix2::new(
        real_poly(&[-k * b1, k]),
        real_poly(&[1.0]),
        real_poly(&[-k, 0.0, k]),
        real_poly(&[b1, 1.0]),
    )
}

/// `S̃^{(−2)} ≐ [[x + b̃_1, K̃], [x² − 1, K̃(x − b̃_1)]] · S`, the inverse of
/// the order-2 associated corollary read on the extended family
/// (`b̃_1 = ξ_0`, `K̃ = (1 − ξ_1)/(1 + ξ_1)`).
pub fn corollary_antiassoc2_matrix(b1: f64, xi1: f64) -> PolyMatrix2 {
    let k = (1.0 - xi1) / (1.0 + xi1);
    PolyMatrix2::new(
        real_poly(&[b1, 1.0]),
        real_poly(&[k]),
        real_poly(&[-1.0, 0.0, 1.0]),
        real_poly(&[-k * b1, k]),
    )
}

/// One corollary evaluation; `checked == false` marks rows that are reported
/// but not expected to vanish.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureRow {
    pub name: String,
    pub checked: bool,
    #[serde(flatten)]
    pub row: CheckRow,
}

/// Sample points in the disk used by the order-1 corollary.
pub fn corollary_disk_points() -> Vec<Complex64> {
    (0..10)
        .map(|j| Complex64::from_polar(0.15 + 0.03 * j as f64, 0.3 * j as f64))
        .collect()
}

/// Evaluates every corollary on its Chebyshev-type data set.
pub fn corollary_fixtures(depth: usize) -> Result<Vec<FixtureRow>> {
    use crate::perturb::{assoc_opuc_to_recurrence, Path};
    use crate::szego::{geronimus_forward, geronimus_inverse};

    let mut rows = Vec::new();
    let mut push = |name: &str, checked: bool, row: CheckRow| {
        rows.push(FixtureRow {
            name: name.to_string(),
            checked,
            row,
        })
    };

    let t_rc = RealRecurrence::chebyshev_t(depth + 2);
    let f_t = CFunctionHandle::new(VerblunskySeq::zeros(2 * depth), 2 * depth)?;
    let assoc1 = corollary_assoc1_matrix(t_rc.b(1), t_rc.d(1));
    for z in corollary_disk_points() {
        let lhs = apply(&assoc1, f_t.eval(z)?.inv(), z, z)?;
        push("assoc1_chebyshev_t", true, CheckRow::new(z, lhs, 1.0 - z * z));
    }

    // Base family: order-1 associated of an admissible extended family, so
    // that both sides of the identity live on [−1, 1].
    let mut tilde = vec![0.2, -0.3];
    tilde.resize(2 * depth + 2, 0.0);
    let tilde = VerblunskySeq::from_real(&tilde)?;
    let ext = geronimus_forward(&tilde, depth + 1)?;
    let base = shift_coefficients(&ext, 1)?;
    let f_base = CFunctionHandle::new(geronimus_inverse(&base, depth)?, 2 * depth)?;
    let f_ext = CFunctionHandle::new(tilde, 2 * depth)?;
    let anti1 = corollary_antiassoc1_matrix(ext.b(1), ext.d(1));
    for z in [c(0.3), Complex64::new(0.1, 0.25)] {
        let lhs = apply(&anti1, f_base.eval(z)?, z, z)?;
        push("antiassoc1", true, CheckRow::new(z, lhs, f_ext.eval(z)?.inv()));
    }

    let x = c(2.0);
    let zeros = VerblunskySeq::zeros(2 * depth + 4);
    let s_t = SFunctionHandle::new(geronimus_forward(&zeros, depth)?, depth)?;
    let assoc2_zero = corollary_assoc2_matrix(0.0, 0.0);
    push(
        "assoc2_zero",
        true,
        CheckRow::new(x, apply(&assoc2_zero, s_t.eval(x)?, x, x)?, c(1.0 / 3f64.sqrt())),
    );

    let u = VerblunskySeq::chebyshev_u(2 * depth + 4);
    let alpha_u = u.real_view()?;
    let u_rc = geronimus_forward(&u, depth)?;
    let s_u = SFunctionHandle::new(u_rc.clone(), depth)?;
    let s_hat = SFunctionHandle::new(assoc_opuc_to_recurrence(&u, 2, depth, Path::Theorem)?, depth)?;
    let assoc2_u = corollary_assoc2_matrix(u_rc.b(1), alpha_u[1]);
    push(
        "assoc2_chebyshev_u",
        true,
        CheckRow::new(x, apply(&assoc2_u, s_u.eval(x)?, x, x)?, s_hat.eval(x)?),
    );

    let xi = [0.0, 0.5];
    let ext = prepend_verblunsky(&zeros, &[c(xi[0]), c(xi[1])])?;
    let s_tilde = SFunctionHandle::new(geronimus_forward(&ext, depth)?, depth)?;
    let rhs = s_tilde.eval(x)?;
    let published = corollary_antiassoc2_matrix_as_published(xi[0], xi[1]);
    push(
        "antiassoc2_as_published",
        false,
        CheckRow::new(x, apply(&published, s_t.eval(x)?, x, x)?, rhs),
    );
    let inverted = corollary_antiassoc2_matrix(xi[0], xi[1]);
    push(
        "antiassoc2_inverted",
        true,
        CheckRow::new(x, apply(&inverted, s_t.eval(x)?, x, x)?, rhs),
    );
    Ok(rows)
}
