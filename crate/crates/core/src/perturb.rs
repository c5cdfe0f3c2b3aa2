//! Perturbed families as coefficient maps.
//!
//! Every closed-form map exists in two flavours selected by [`Path`]:
//! [`Path::Theorem`] evaluates the closed-form update formulas directly,
//! [`Path::Oracle`] perturbs the coefficients first and then runs the plain
//! Geronimus relations of [`crate::szego`]. The two must agree; debug builds
//! cross-check every theorem evaluation against its oracle.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize};

use crate::numeric::{guarded, in_support};
use crate::oprl::{prepend_coefficients, shift_coefficients, RealRecurrence};
use crate::opuc::{prepend_verblunsky, shift_verblunsky, VerblunskySeq};
use crate::szego::{
    alpha_ext, even_from_b, forward_real, inverse_real, odd_from_d, v_from_alpha_real,
    v_from_recurrence, VSeq,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Path {
    /// Closed-form update formulas.
    #[default]
    Theorem,
    /// Perturb the coefficients, then run the generic Geronimus relations.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Recurrence coefficients `(b, d)`.
    Line,
    /// Verblunsky coefficients `α`.
    Circle,
}

/// One perturbation, serialized as a tagged object such as
/// `{"kind": "co_dilated", "k": 1, "lambda": 0.5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PerturbationSpec {
    /// `d_k -> λ d_k`.
    CoDilated { k: usize, lambda: f64 },
    /// `b_{k+1} -> b_{k+1} + τ`.
    CoRecursive { k: usize, tau: f64 },
    /// `α_k -> η`.
    KModification {
        k: usize,
        #[serde(deserialize_with = "complex_or_real")]
        eta: Complex64,
    },
    /// Drop the first `k` coefficients.
    Associated { k: usize },
    /// Prepend `k` coefficients: `b`/`d` on the line, `xi` on the circle.
    AntiAssociated {
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        xi: Option<Vec<Complex64>>,
    },
    /// Sieving of order `ell`.
    Sieve { ell: usize },
}

fn complex_or_real<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Complex64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Real(f64),
        Pair(f64, f64),
    }
    Ok(match Repr::deserialize(de)? {
        Repr::Real(re) => Complex64::new(re, 0.0),
        Repr::Pair(re, im) => Complex64::new(re, im),
    })
}

impl PerturbationSpec {
    /// Checks parameter domains.
    pub fn validate(&self) -> Result<()> {
        match self {
            PerturbationSpec::CoDilated { k, lambda } => {
                if *k == 0 {
                    return Err(Error::InvalidSpec(
                        "co_dilated requires k >= 1 (d_0 multiplies P_{-1} = 0)".into(),
                    ));
                }
                if !(lambda.is_finite() && *lambda > 0.0) {
                    return Err(Error::InvalidSpec(format!("lambda = {lambda} must be > 0")));
                }
            }
            PerturbationSpec::CoRecursive { tau, .. } => {
                if !tau.is_finite() {
                    return Err(Error::InvalidSpec("tau must be finite".into()));
                }
            }
            PerturbationSpec::KModification { eta, .. } => {
                if !(eta.norm() < 1.0) {
                    return Err(Error::InvalidEta { value: *eta });
                }
            }
            PerturbationSpec::Associated { .. } => {}
            PerturbationSpec::AntiAssociated { k, b, d, xi } => match (b, d, xi) {
                (Some(b), Some(d), None) => {
                    if b.len() != *k || d.len() != *k {
                        return Err(Error::InvalidSpec(format!(
                            "anti_associated: k = {k} but {} b and {} d values",
                            b.len(),
                            d.len()
                        )));
                    }
                    if let Some(i) = d.iter().position(|v| *v == 0.0 || !v.is_finite()) {
                        return Err(Error::InvalidPrepend {
                            index: i,
                            reason: "d entry must be nonzero",
                        });
                    }
                }
                (None, None, Some(xi)) => {
                    if xi.len() != *k {
                        return Err(Error::InvalidSpec(format!(
                            "anti_associated: k = {k} but {} xi values",
                            xi.len()
                        )));
                    }
                    if let Some(i) = xi.iter().position(|x| !(x.norm() < 1.0)) {
                        return Err(Error::InvalidXi {
                            index: i,
                            value: xi[i],
                        });
                    }
                }
                _ => {
                    return Err(Error::InvalidSpec(
                        "anti_associated needs either b and d, or xi".into(),
                    ))
                }
            },
            PerturbationSpec::Sieve { ell } => {
                if *ell == 0 {
                    return Err(Error::InvalidSpec("sieve requires ell >= 1".into()));
                }
            }
        }
        Ok(())
    }

    /// Whether the perturbation acts on recurrence or Verblunsky coefficients.
    pub fn accepts(&self, side: Side) -> bool {
        match self {
            PerturbationSpec::CoDilated { .. } | PerturbationSpec::CoRecursive { .. } => {
                side == Side::Line
            }
            PerturbationSpec::KModification { .. } | PerturbationSpec::Sieve { .. } => {
                side == Side::Circle
            }
            PerturbationSpec::Associated { .. } => true,
            PerturbationSpec::AntiAssociated { xi, .. } => {
                (side == Side::Circle) == xi.is_some()
            }
        }
    }
}

#[cfg(debug_assertions)]
fn debug_cross_check(label: &str, theorem: &[f64], oracle: impl FnOnce() -> Result<Vec<f64>>) {
    if let Ok(o) = oracle() {
        let dev = crate::numeric::max_deviation(theorem, &o);
        debug_assert!(
            dev < 1e-6,
            "{label}: closed form and oracle differ by {dev:e}"
        );
    }
}

#[cfg(not(debug_assertions))]
#[inline(always)]
fn debug_cross_check(_: &str, _: &[f64], _: impl FnOnce() -> Result<Vec<f64>>) {}

fn real_alpha(vs: &VerblunskySeq, needed: usize) -> Result<Vec<f64>> {
    vs.require(needed)?;
    vs.truncate(needed)?.real_view()
}

// ---------------------------------------------------------------------------
// Co-polynomials on the real line

/// Applies co-dilations `d_k -> λ d_k` and co-recursions
/// `b_{k+1} -> b_{k+1} + τ`, left to right.
pub fn coprl_apply(rc: &RealRecurrence, specs: &[PerturbationSpec]) -> Result<RealRecurrence> {
    let mut out = rc.clone();
    let mut dilated = Vec::new();
    let mut shifted = Vec::new();
    for spec in specs {
        spec.validate()?;
        match *spec {
            PerturbationSpec::CoDilated { k, lambda } => {
                if dilated.contains(&k) {
                    return Err(Error::InvalidSpec(format!("d_{k} dilated twice")));
                }
                dilated.push(k);
                out.require(0, k)?;
                out.d_mut()[k - 1] *= lambda;
            }
            PerturbationSpec::CoRecursive { k, tau } => {
                if shifted.contains(&k) {
                    return Err(Error::InvalidSpec(format!("b_{} shifted twice", k + 1)));
                }
                shifted.push(k);
                out.require(k + 1, 0)?;
                out.b_mut()[k] += tau;
            }
            _ => {
                return Err(Error::InvalidSpec(
                    "only co_dilated and co_recursive act on the real line here".into(),
                ))
            }
        }
    }
    Ok(out)
}

fn copolynomial_specs(k: usize, lambda: f64, tau: f64) -> Result<Vec<PerturbationSpec>> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidSpec(format!("lambda = {lambda} must be > 0")));
    }
    let mut specs = Vec::new();
    if lambda != 1.0 {
        if k == 0 {
            return Err(Error::InvalidSpec(
                "co-dilation needs k >= 1 (d_0 multiplies P_{-1} = 0)".into(),
            ));
        }
        specs.push(PerturbationSpec::CoDilated { k, lambda });
    }
    if tau != 0.0 {
        specs.push(PerturbationSpec::CoRecursive { k, tau });
    }
    Ok(specs)
}

/// Verblunsky coefficients `α̂_0..α̂_{2n−1}` of the Szegő image of the
/// co-polynomials with `d_k -> λ d_k` and `b_{k+1} -> b_{k+1} + τ`.
///
/// The closed form keeps `α̂_n = α_n` for `n < 2k − 1`, sets
/// `α̂_{2k−1} = α_{2k−1} + M` with
/// `M = 4(λ − 1) d_k / ((1 − α_{2k−3})(1 − α_{2k−2}²))`, updates `α̂_{2k}`
/// and then reruns the inverse recursion on the unperturbed tail.
pub fn coprl_verblunsky(
    rc: &RealRecurrence,
    k: usize,
    lambda: f64,
    tau: f64,
    n: usize,
    path: Path,
) -> Result<VerblunskySeq> {
    let specs = copolynomial_specs(k, lambda, tau)?;
    if k >= n {
        return Err(Error::InsufficientCoefficients {
            needed: k + 1,
            available: n,
        });
    }
    let oracle = || inverse_real(&coprl_apply(&rc.truncate(n)?, &specs)?, n);
    let out = match path {
        Path::Oracle => oracle()?,
        Path::Theorem => {
            let alpha = inverse_real(rc, n)?;
            let a = |j: isize| alpha_ext(&alpha, j);
            let k_i = k as isize;
            let mut out: Vec<f64> = alpha[..(2 * k).saturating_sub(1)].to_vec();

            let m_const = if k == 0 || lambda == 1.0 {
                0.0
            } else {
                let den = guarded((1.0 - a(2 * k_i - 3)) * (1.0 - a(2 * k_i - 2).powi(2)), 2 * k - 1)?;
                4.0 * (lambda - 1.0) * rc.d(k) / den
            };
            if k >= 1 {
                out.push(in_support(a(2 * k_i - 1) + m_const, 2 * k - 1)?);
            }
            let den = guarded(1.0 - a(2 * k_i - 1) - m_const, 2 * k)?;
            let even = ((1.0 - a(2 * k_i - 1)) * a(2 * k_i) + 2.0 * tau + m_const * a(2 * k_i - 2))
                / den;
            out.push(in_support(even, 2 * k)?);

            for m in k..n {
                let odd_prev = alpha_ext(&out, 2 * m as isize - 1);
                out.push(odd_from_d(rc.d(m + 1), odd_prev, out[2 * m], 2 * m + 1)?);
                if m + 1 < n {
                    let even = even_from_b(rc.b(m + 2), out[2 * m + 1], out[2 * m], 2 * m + 2)?;
                    out.push(even);
                }
            }
            debug_cross_check("coprl_verblunsky", &out, oracle);
            out
        }
    };
    VerblunskySeq::from_real(&out)
}

// ---------------------------------------------------------------------------
// Co-polynomials on the unit circle

/// k-modification `β_n = η δ_{n,k} + (1 − δ_{n,k}) α_n`.
///
/// `η = α_k` is allowed and returns the input unchanged.
pub fn copuc_apply(vs: &VerblunskySeq, k: usize, eta: Complex64) -> Result<VerblunskySeq> {
    if !(eta.norm() < 1.0) {
        return Err(Error::InvalidEta { value: eta });
    }
    vs.require(k + 1)?;
    let mut alpha = vs.as_slice().to_vec();
    alpha[k] = eta;
    Ok(VerblunskySeq::from_vec_unchecked(alpha))
}

// ---------------------------------------------------------------------------
// Associated and anti-associated OPRL -> Verblunsky coefficients

/// Verblunsky coefficients `α̂_0..α̂_{2n−1}` of the Szegő image of the
/// associated polynomials of order `k`.
pub fn assoc_oprl_to_verblunsky(
    rc: &RealRecurrence,
    k: usize,
    n: usize,
    path: Path,
) -> Result<VerblunskySeq> {
    rc.require(n + k, n + k)?;
    let oracle = || inverse_real(&shift_coefficients(rc, k)?, n);
    let out = match path {
        Path::Oracle => oracle()?,
        Path::Theorem => {
            let mut out = Vec::with_capacity(2 * n);
            if n > 0 {
                let a0 = in_support(rc.b(k + 1), 0)?;
                out.push(a0);
                let den = guarded(1.0 - a0 * a0, 1)?;
                out.push(in_support(-1.0 + 2.0 * rc.d(k + 1) / den, 1)?);
            }
            for m in 1..n {
                let even = even_from_b(rc.b(m + k + 1), out[2 * m - 1], out[2 * m - 2], 2 * m)?;
                out.push(even);
                out.push(odd_from_d(rc.d(m + k + 1), out[2 * m - 1], even, 2 * m + 1)?);
            }
            debug_cross_check("assoc_oprl_to_verblunsky", &out, oracle);
            out
        }
    };
    VerblunskySeq::from_real(&out)
}

/// Verblunsky coefficients `α̃_0..α̃_{2n−1}` of the Szegő image of the
/// anti-associated polynomials obtained by prepending `pre_b`, `pre_d`.
///
/// In the closed form the prepended values are `b_{1−k}, ..., b_0` and
/// `d_{1−k}, ..., d_0`, so the recursion reads `b_{m−k+1}`, `d_{m−k+1}`
/// across both windows.
pub fn antiassoc_oprl_to_verblunsky(
    rc: &RealRecurrence,
    pre_b: &[f64],
    pre_d: &[f64],
    n: usize,
    path: Path,
) -> Result<VerblunskySeq> {
    let extended = prepend_coefficients(rc, pre_b, pre_d)?;
    let k = pre_b.len();
    extended.require(n, n)?;
    let oracle = || inverse_real(&extended, n);
    let out = match path {
        Path::Oracle => oracle()?,
        Path::Theorem => {
            // b_j and d_j for j in (1 - k)..=0 live in the prepended window.
            let b_at = |j: isize| -> f64 {
                if j <= 0 {
                    pre_b[(j + k as isize - 1) as usize]
                } else {
                    rc.b(j as usize)
                }
            };
            let d_at = |j: isize| -> f64 {
                if j <= 0 {
                    pre_d[(j + k as isize - 1) as usize]
                } else {
                    rc.d(j as usize)
                }
            };
            let k_i = k as isize;
            let mut out = Vec::with_capacity(2 * n);
            if n > 0 {
                let a0 = in_support(b_at(1 - k_i), 0)?;
                out.push(a0);
                let den = guarded(1.0 - a0 * a0, 1)?;
                out.push(in_support(-1.0 + 2.0 * d_at(1 - k_i) / den, 1)?);
            }
            for m in 1..n {
                let m_i = m as isize;
                let even = even_from_b(b_at(m_i - k_i + 1), out[2 * m - 1], out[2 * m - 2], 2 * m)?;
                out.push(even);
                out.push(odd_from_d(d_at(m_i - k_i + 1), out[2 * m - 1], even, 2 * m + 1)?);
            }
            debug_cross_check("antiassoc_oprl_to_verblunsky", &out, oracle);
            out
        }
    };
    VerblunskySeq::from_real(&out)
}

// ---------------------------------------------------------------------------
// Associated and anti-associated OPUC -> recurrence coefficients

/// Recurrence coefficients `(b̂, d̂)_1..n` of the OPRL whose Szegő image is
/// the associated OPUC of order `k` (Verblunsky coefficients `α_{n+k}`).
///
/// The closed form distinguishes `k = 2m − 1`, where the ratios of the
/// `v`-sequence enter, from `k = 2m`, where only the first pair changes,
/// through `λ = 2 / (1 − α_{2m−1})`. For odd `k` it reads one Verblunsky
/// coefficient more than the oracle (`2n + k + 1` instead of `2n + k`).
pub fn assoc_opuc_to_recurrence(
    vs: &VerblunskySeq,
    k: usize,
    n: usize,
    path: Path,
) -> Result<RealRecurrence> {
    let oracle = || -> Result<RealRecurrence> {
        let alpha = real_alpha(vs, 2 * n + k)?;
        forward_real(&alpha[k..], n)
    };
    if path == Path::Oracle || k == 0 {
        return oracle();
    }
    let m = k.div_ceil(2);
    let alpha = real_alpha(vs, 2 * (n + m))?;
    let base = forward_real(&alpha, n + m)?;
    let mut b = Vec::with_capacity(n);
    let mut d = Vec::with_capacity(n);
    if k % 2 == 1 {
        let v = v_from_alpha_real(&alpha, 2 * (n + m))?;
        for j in 0..n {
            if j == 0 {
                let den = guarded(v.v[2 * m + 1], 2 * m + 1)?;
                d.push((1.0 + alpha[2 * m - 1]) / den * base.d(m + 1));
                b.push(alpha[2 * m - 1]);
            } else {
                let s = 2 * (j + m);
                let den = guarded(v.v[s + 1], s + 1)?;
                d.push(v.v[s - 1] / den * base.d(j + m + 1));
                b.push(base.b(j + m + 1) + v.v[s - 2] - v.v[s]);
            }
        }
    } else {
        let lambda = 2.0 / guarded(1.0 - alpha[2 * m - 1], 2 * m - 1)?;
        for j in 0..n {
            if j == 0 {
                d.push(lambda * base.d(m + 1));
                b.push(alpha[2 * m]);
            } else {
                d.push(base.d(j + m + 1));
                b.push(base.b(j + m + 1));
            }
        }
    }
    let out = RealRecurrence::new(b, d)?;
    debug_cross_check("assoc_opuc_to_recurrence", &flatten(&out), || {
        oracle().map(|r| flatten(&r))
    });
    Ok(out)
}

/// Recurrence coefficients `(b̃, d̃)_1..n` of the OPRL whose Szegő image is
/// the anti-associated OPUC with Verblunsky coefficients
/// `ξ_0, ..., ξ_{k−1}, α_0, α_1, ...` (`k = xi.len()`).
///
/// The closed form is a case table in the row index `n` around
/// `m = ⌈k/2⌉`: pure-`ξ` rows, one or two boundary rows mixing `ξ` and `α`,
/// and the original coefficients (or expressions in `α` for odd `k`) in the
/// stable range.
pub fn antiassoc_opuc_to_recurrence(
    vs: &VerblunskySeq,
    xi: &[f64],
    n: usize,
    path: Path,
) -> Result<RealRecurrence> {
    if let Some(i) = xi.iter().position(|x| !(x.abs() < 1.0)) {
        return Err(Error::InvalidXi {
            index: i,
            value: Complex64::new(xi[i], 0.0),
        });
    }
    let k = xi.len();
    let needed = (2 * n).saturating_sub(k);
    let oracle = || -> Result<RealRecurrence> {
        let alpha = real_alpha(vs, needed)?;
        let mut joined = xi.to_vec();
        joined.extend_from_slice(&alpha);
        forward_real(&joined, n)
    };
    if path == Path::Oracle || k == 0 {
        return oracle();
    }
    let alpha = real_alpha(vs, needed)?;
    let m = k.div_ceil(2);
    let x = |j: isize| -> f64 {
        if j == -1 {
            -1.0
        } else {
            xi[j as usize]
        }
    };
    let a = |j: isize| alpha[j as usize];
    let mut b = Vec::with_capacity(n);
    let mut d = Vec::with_capacity(n);
    let m_i = m as isize;
    if k % 2 == 1 {
        for j in 0..n as isize {
            let dj = if j == m_i - 1 {
                0.25 * (1.0 - x(2 * j - 1)) * (1.0 - x(2 * j).powi(2)) * (1.0 + a(2 * (j - m_i) + 2))
            } else if j == 0 {
                0.5 * (1.0 - x(0).powi(2)) * (1.0 + x(1))
            } else if j <= m_i - 2 {
                0.25 * (1.0 - x(2 * j - 1)) * (1.0 - x(2 * j).powi(2)) * (1.0 + x(2 * j + 1))
            } else {
                let r = 2 * (j - m_i);
                0.25 * (1.0 - a(r)) * (1.0 - a(r + 1).powi(2)) * (1.0 + a(r + 2))
            };
            let bj = if j == 0 {
                x(0)
            } else if j <= m_i - 1 {
                0.5 * ((1.0 - x(2 * j - 1)) * x(2 * j) - (1.0 + x(2 * j - 1)) * x(2 * j - 2))
            } else if j == m_i {
                let r = 2 * (j - m_i);
                0.5 * ((1.0 - a(r)) * a(r + 1) - (1.0 + a(r)) * x(2 * j - 2))
            } else {
                let r = 2 * (j - m_i);
                0.5 * ((1.0 - a(r)) * a(r + 1) - (1.0 + a(r)) * a(r - 1))
            };
            d.push(dj);
            b.push(bj);
        }
    } else {
        let base = if n > m {
            Some(forward_real(&alpha, n - m)?)
        } else {
            None
        };
        for j in 0..n as isize {
            let (dj, bj) = if j == 0 {
                (0.5 * (1.0 - x(0).powi(2)) * (1.0 + x(1)), x(0))
            } else if j <= m_i - 1 {
                (
                    0.25 * (1.0 - x(2 * j - 1)) * (1.0 - x(2 * j).powi(2)) * (1.0 + x(2 * j + 1)),
                    0.5 * ((1.0 - x(2 * j - 1)) * x(2 * j) - (1.0 + x(2 * j - 1)) * x(2 * j - 2)),
                )
            } else if j == m_i {
                (
                    0.25 * (1.0 - x(2 * j - 1)) * (1.0 - a(0).powi(2)) * (1.0 + a(1)),
                    0.5 * ((1.0 - x(2 * j - 1)) * a(0) - (1.0 + x(2 * j - 1)) * x(2 * j - 2)),
                )
            } else {
                let base = base.as_ref().expect("n > m in the stable range");
                let r = (j - m_i + 1) as usize;
                (base.d(r), base.b(r))
            };
            d.push(dj);
            b.push(bj);
        }
    }
    let out = RealRecurrence::new(b, d)?;
    debug_cross_check("antiassoc_opuc_to_recurrence", &flatten(&out), || {
        oracle().map(|r| flatten(&r))
    });
    Ok(out)
}

fn flatten(rc: &RealRecurrence) -> Vec<f64> {
    let mut v = rc.b_coeffs().to_vec();
    v.extend_from_slice(rc.d_coeffs());
    v
}

// ---------------------------------------------------------------------------
// LU route for co-polynomials

/// Which recipe produces the perturbed LU sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LuPath {
    /// Refactorize `J̃ + I` of the perturbed Jacobi matrix.
    #[default]
    Refactorized,
    /// Closed-form update: keep `v_n` for `n ≤ 2k − 1`, patch `v_{2k}`, rerun
    /// the recursion. Exact for pure co-recursion (`λ = 1`) only.
    ClosedForm,
}

fn closed_form_v(rc: &RealRecurrence, k: usize, lambda: f64, tau: f64, len: usize) -> Result<VSeq> {
    let v = v_from_recurrence(rc, len)?;
    let mut out: Vec<f64> = v.v[..(2 * k).min(len)].to_vec();
    if 2 * k < len {
        out.push(v.v[2 * k] + (1.0 - lambda) * v.get(2 * k as isize - 1) + tau);
    }
    let mut m = k;
    while out.len() < len {
        let odd = rc.d(m + 1) / guarded(out[2 * m], 2 * m)?;
        out.push(odd);
        if out.len() < len {
            out.push(rc.b(m + 2) + 1.0 - odd);
        }
        m += 1;
    }
    Ok(VSeq { v: out })
}

/// LU sequence `ṽ_0..ṽ_{len−1}` of the co-polynomials.
pub fn perturbed_v(
    rc: &RealRecurrence,
    k: usize,
    lambda: f64,
    tau: f64,
    len: usize,
    path: LuPath,
) -> Result<VSeq> {
    let specs = copolynomial_specs(k, lambda, tau)?;
    match path {
        LuPath::Refactorized => v_from_recurrence(&coprl_apply(rc, &specs)?, len),
        LuPath::ClosedForm => closed_form_v(rc, k, lambda, tau, len),
    }
}

/// Verblunsky coefficients `α̂_0..α̂_{len−1}` of the co-polynomials computed
/// through the LU sequence.
pub fn perturbed_alpha_lu(
    rc: &RealRecurrence,
    k: usize,
    lambda: f64,
    tau: f64,
    len: usize,
    path: LuPath,
) -> Result<VerblunskySeq> {
    match path {
        LuPath::Refactorized => {
            let v = perturbed_v(rc, k, lambda, tau, len, LuPath::Refactorized)?;
            crate::szego::alpha_from_v(&v, len)
        }
        LuPath::ClosedForm => {
            copolynomial_specs(k, lambda, tau)?;
            let alpha = inverse_real(rc, len.div_ceil(2))?;
            let v = v_from_recurrence(rc, len)?;
            let v_new = closed_form_v(rc, k, lambda, tau, len)?;
            let mut out: Vec<f64> = alpha[..(2 * k).min(len)].to_vec();
            if 2 * k < len {
                let odd_prev = alpha_ext(&alpha, 2 * k as isize - 1);
                let den = guarded(1.0 - odd_prev, 2 * k)?;
                let shift = 2.0 * ((1.0 - lambda) * v.get(2 * k as isize - 1) + tau) / den;
                out.push(in_support(alpha[2 * k] + shift, 2 * k)?);
            }
            for j in out.len()..len {
                let den = guarded(1.0 - out[j - 1], j)?;
                out.push(in_support(-1.0 + 2.0 * v_new.v[j] / den, j)?);
            }
            VerblunskySeq::from_real(&out)
        }
    }
}

/// Side-by-side comparison of the two LU recipes for one co-polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct LuDiscrepancy {
    pub k: usize,
    pub lambda: f64,
    pub tau: f64,
    pub v_refactorized: Vec<f64>,
    pub v_closed_form: Vec<f64>,
    /// First index where the two `v` sequences differ by more than 1e−12
    /// relative, with both values.
    pub first_mismatch: Option<(usize, f64, f64)>,
    /// Largest deviation between the two Verblunsky sequences, when both exist.
    pub alpha_deviation: Option<f64>,
}

impl LuDiscrepancy {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn lu_discrepancy(
    rc: &RealRecurrence,
    k: usize,
    lambda: f64,
    tau: f64,
    len: usize,
) -> Result<LuDiscrepancy> {
    let v_ref = perturbed_v(rc, k, lambda, tau, len, LuPath::Refactorized)?;
    let v_cf = perturbed_v(rc, k, lambda, tau, len, LuPath::ClosedForm)?;
    let first_mismatch = v_ref
        .v
        .iter()
        .zip(&v_cf.v)
        .enumerate()
        .find(|(_, (r, c))| (*r - *c).abs() > 1e-12 * r.abs().max(1.0))
        .map(|(i, (r, c))| (i, *r, *c));
    let a_ref = perturbed_alpha_lu(rc, k, lambda, tau, len, LuPath::Refactorized);
    let a_cf = perturbed_alpha_lu(rc, k, lambda, tau, len, LuPath::ClosedForm);
    let alpha_deviation = match (a_ref, a_cf) {
        (Ok(r), Ok(c)) => Some(crate::numeric::max_deviation_c(c.as_slice(), r.as_slice())),
        _ => None,
    };
    Ok(LuDiscrepancy {
        k,
        lambda,
        tau,
        v_refactorized: v_ref.v,
        v_closed_form: v_cf.v,
        first_mismatch,
        alpha_deviation,
    })
}

// ---------------------------------------------------------------------------
// Sieved OPUC

/// `α^{ℓ}_n = α_{m−1}` when `n + 1 = mℓ`, zero otherwise; the output has
/// `ℓ · len` entries.
pub fn sieve(vs: &VerblunskySeq, ell: usize) -> Result<VerblunskySeq> {
    if ell == 0 {
        return Err(Error::InvalidSpec("sieve requires ell >= 1".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    let alpha = (0..vs.len() * ell)
        .map(|n| {
            if (n + 1) % ell == 0 {
                vs.alpha((n + 1) / ell - 1)
            } else {
                zero
            }
        })
        .collect();
    Ok(VerblunskySeq::from_vec_unchecked(alpha))
}

/// Recurrence coefficients of the Szegő preimage of the sieved OPUC with
/// `ℓ = 2`: `b ≡ 0` and `d_{n+1} = ¼ (1 − α_{n−1})(1 + α_n)`.
pub fn sieve2_recurrence(vs: &VerblunskySeq, n: usize, path: Path) -> Result<RealRecurrence> {
    let alpha = real_alpha(vs, n)?;
    let oracle = || forward_real(&real_sieve2(&alpha), n);
    if path == Path::Oracle {
        return oracle();
    }
    let d = (0..n)
        .map(|j| 0.25 * (1.0 - alpha_ext(&alpha, j as isize - 1)) * (1.0 + alpha[j]))
        .collect();
    let out = RealRecurrence::new(vec![0.0; n], d)?;
    debug_cross_check("sieve2_recurrence", &flatten(&out), || {
        oracle().map(|r| flatten(&r))
    });
    Ok(out)
}

fn real_sieve2(alpha: &[f64]) -> Vec<f64> {
    alpha.iter().flat_map(|&a| [0.0, a]).collect()
}

/// Sieved (`ℓ = 2`) recurrence after the k-modification `α_k -> η`: only
/// `d_{k+1}` and `d_{k+2}` change, by the factors `(1 + η)/(1 + α_k)` and
/// `(1 − η)/(1 − α_k)`.
pub fn sieved_kmod_recurrence(
    vs: &VerblunskySeq,
    k: usize,
    eta: f64,
    n: usize,
    path: Path,
) -> Result<RealRecurrence> {
    if !(eta.abs() < 1.0) {
        return Err(Error::InvalidEta {
            value: Complex64::new(eta, 0.0),
        });
    }
    let alpha = real_alpha(vs, n.max(k + 1))?;
    let oracle = || {
        let mut modified = alpha.clone();
        modified[k] = eta;
        forward_real(&real_sieve2(&modified), n)
    };
    if path == Path::Oracle {
        return oracle();
    }
    let base = sieve2_recurrence(vs, n, Path::Theorem)?;
    let mut d = base.d_coeffs().to_vec();
    let ak = alpha[k];
    if k < n {
        d[k] *= (1.0 + eta) / guarded(1.0 + ak, k)?;
    }
    if k + 1 < n {
        d[k + 1] *= (1.0 - eta) / guarded(1.0 - ak, k)?;
    }
    let out = RealRecurrence::new(base.b_coeffs().to_vec(), d)?;
    debug_cross_check("sieved_kmod_recurrence", &flatten(&out), || {
        oracle().map(|r| flatten(&r))
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// Symmetric OPRL

fn symmetric_oracle(d: &[f64], n: usize) -> Result<Vec<f64>> {
    let rc = RealRecurrence::new(vec![0.0; d.len()], d.to_vec())?;
    inverse_real(&rc, n)
}

/// Verblunsky coefficients `γ_0..γ_{2n−1}` for a symmetric recurrence
/// (`b ≡ 0`): `γ_{2n} = 0`, `γ_{2n+1} = −1 + 4 d_{n+1} / (1 − γ_{2n−1})`.
pub fn symmetric_verblunsky(d: &[f64], n: usize, path: Path) -> Result<VerblunskySeq> {
    if d.len() < n {
        return Err(Error::InsufficientCoefficients {
            needed: n,
            available: d.len(),
        });
    }
    let out = match path {
        Path::Oracle => symmetric_oracle(d, n)?,
        Path::Theorem => {
            let out = symmetric_closed_form(d, n)?;
            debug_cross_check("symmetric_verblunsky", &out, || symmetric_oracle(d, n));
            out
        }
    };
    VerblunskySeq::from_real(&out)
}

fn symmetric_closed_form(d: &[f64], n: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let prev = alpha_ext(&out, 2 * j as isize - 1);
        out.push(0.0);
        let den = guarded(1.0 - prev, 2 * j + 1)?;
        out.push(in_support(-1.0 + 4.0 * d[j] / den, 2 * j + 1)?);
    }
    Ok(out)
}

/// Symmetric Verblunsky coefficients after the co-dilation `d_k -> λ d_k`:
/// odd entries from index `2k − 1` on change, even entries stay zero.
pub fn symmetric_codilated_verblunsky(
    d: &[f64],
    k: usize,
    lambda: f64,
    n: usize,
    path: Path,
) -> Result<VerblunskySeq> {
    PerturbationSpec::CoDilated { k, lambda }.validate()?;
    if d.len() < n || k > n {
        return Err(Error::InsufficientCoefficients {
            needed: n.max(k),
            available: d.len(),
        });
    }
    let oracle = || {
        let mut dd = d[..n].to_vec();
        dd[k - 1] *= lambda;
        symmetric_oracle(&dd, n)
    };
    let out = match path {
        Path::Oracle => oracle()?,
        Path::Theorem => {
            let gamma = symmetric_closed_form(d, n)?;
            let mut out: Vec<f64> = gamma[..2 * k - 1].to_vec();
            let prev = alpha_ext(&gamma, 2 * k as isize - 3);
            let den = guarded(1.0 - prev, 2 * k - 1)?;
            out.push(in_support(
                gamma[2 * k - 1] + 4.0 * (lambda - 1.0) * d[k - 1] / den,
                2 * k - 1,
            )?);
            for j in k..n {
                out.push(0.0);
                let den = guarded(1.0 - out[2 * j - 1], 2 * j + 1)?;
                out.push(in_support(-1.0 + 4.0 * d[j] / den, 2 * j + 1)?);
            }
            debug_cross_check("symmetric_codilated_verblunsky", &out, oracle);
            out
        }
    };
    VerblunskySeq::from_real(&out)
}

// ---------------------------------------------------------------------------
// Pipelines

/// Applies a line-side perturbation to the recurrence coefficients.
pub fn apply_line(rc: &RealRecurrence, spec: &PerturbationSpec) -> Result<RealRecurrence> {
    spec.validate()?;
    if !spec.accepts(Side::Line) {
        return Err(Error::InvalidSpec(format!("{spec:?} does not act on the real line")));
    }
    match spec {
        PerturbationSpec::CoDilated { .. } | PerturbationSpec::CoRecursive { .. } => {
            coprl_apply(rc, std::slice::from_ref(spec))
        }
        PerturbationSpec::Associated { k } => shift_coefficients(rc, *k),
        PerturbationSpec::AntiAssociated {
            b: Some(b),
            d: Some(d),
            ..
        } => prepend_coefficients(rc, b, d),
        _ => unreachable!("accepts(Line) covers the remaining variants"),
    }
}

/// Applies a circle-side perturbation to the Verblunsky coefficients.
pub fn apply_circle(vs: &VerblunskySeq, spec: &PerturbationSpec) -> Result<VerblunskySeq> {
    spec.validate()?;
    if !spec.accepts(Side::Circle) {
        return Err(Error::InvalidSpec(format!("{spec:?} does not act on the unit circle")));
    }
    match spec {
        PerturbationSpec::KModification { k, eta } => copuc_apply(vs, *k, *eta),
        PerturbationSpec::Associated { k } => shift_verblunsky(vs, *k),
        PerturbationSpec::AntiAssociated { xi: Some(xi), .. } => prepend_verblunsky(vs, xi),
        PerturbationSpec::Sieve { ell } => sieve(vs, *ell),
        _ => unreachable!("accepts(Circle) covers the remaining variants"),
    }
}

/// Szegő image (`2n` Verblunsky coefficients) of a line-side perturbation.
pub fn line_spec_to_verblunsky(
    rc: &RealRecurrence,
    spec: &PerturbationSpec,
    n: usize,
    path: Path,
) -> Result<VerblunskySeq> {
    spec.validate()?;
    match spec {
        PerturbationSpec::CoDilated { k, lambda } => coprl_verblunsky(rc, *k, *lambda, 0.0, n, path),
        PerturbationSpec::CoRecursive { k, tau } => coprl_verblunsky(rc, *k, 1.0, *tau, n, path),
        PerturbationSpec::Associated { k } => assoc_oprl_to_verblunsky(rc, *k, n, path),
        PerturbationSpec::AntiAssociated {
            b: Some(b),
            d: Some(d),
            ..
        } => antiassoc_oprl_to_verblunsky(rc, b, d, n, path),
        _ => Err(Error::InvalidSpec(format!("{spec:?} does not act on the real line"))),
    }
}

/// Szegő preimage (`n` recurrence pairs) of a circle-side perturbation.
///
/// Only associated, anti-associated and `ℓ = 2` sieving carry closed forms;
/// the remaining cases use the oracle on both paths.
pub fn circle_spec_to_recurrence(
    vs: &VerblunskySeq,
    spec: &PerturbationSpec,
    n: usize,
    path: Path,
) -> Result<RealRecurrence> {
    spec.validate()?;
    match spec {
        PerturbationSpec::Associated { k } => assoc_opuc_to_recurrence(vs, *k, n, path),
        PerturbationSpec::AntiAssociated { xi: Some(xi), .. } => {
            let real: Vec<f64> = VerblunskySeq::new(xi.clone())?.real_view()?;
            antiassoc_opuc_to_recurrence(vs, &real, n, path)
        }
        PerturbationSpec::Sieve { ell: 2 } => sieve2_recurrence(vs, n, path),
        PerturbationSpec::Sieve { .. } | PerturbationSpec::KModification { .. } => {
            crate::szego::geronimus_forward(&apply_circle(vs, spec)?, n)
        }
        _ => Err(Error::InvalidSpec(format!("{spec:?} does not act on the unit circle"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{c, max_deviation};
    use crate::szego::geronimus_inverse;

    fn u_alpha(len: usize) -> Vec<f64> {
        VerblunskySeq::chebyshev_u(len).real_view().unwrap()
    }

    #[test]
    fn spec_json_shape() {
        let spec = PerturbationSpec::CoDilated { k: 1, lambda: 0.5 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"co_dilated","k":1,"lambda":0.5}"#);
        let parsed: PerturbationSpec =
            serde_json::from_str(r#"{"kind":"k_modification","k":0,"eta":0.3}"#).unwrap();
        assert_eq!(parsed, PerturbationSpec::KModification { k: 0, eta: c(0.3) });
        let parsed: PerturbationSpec =
            serde_json::from_str(r#"{"kind":"k_modification","k":0,"eta":[0.1,-0.2]}"#).unwrap();
        assert_eq!(
            parsed,
            PerturbationSpec::KModification {
                k: 0,
                eta: Complex64::new(0.1, -0.2)
            }
        );
    }

    #[test]
    fn validation() {
        assert!(PerturbationSpec::CoDilated { k: 0, lambda: 2.0 }.validate().is_err());
        assert!(PerturbationSpec::CoDilated { k: 1, lambda: 0.0 }.validate().is_err());
        assert!(matches!(
            PerturbationSpec::KModification { k: 0, eta: c(1.0) }.validate(),
            Err(Error::InvalidEta { .. })
        ));
        assert!(PerturbationSpec::Sieve { ell: 0 }.validate().is_err());
        let bad = PerturbationSpec::AntiAssociated {
            k: 2,
            b: Some(vec![0.0]),
            d: Some(vec![0.1]),
            xi: None,
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn coprl_apply_examples() {
        let t = RealRecurrence::chebyshev_t(6);
        let u = coprl_apply(&t, &[PerturbationSpec::CoDilated { k: 1, lambda: 0.5 }]).unwrap();
        assert_eq!(u, RealRecurrence::chebyshev_u(6));
        let r = coprl_apply(&t, &[PerturbationSpec::CoRecursive { k: 0, tau: 0.3 }]).unwrap();
        assert_eq!(r.b(1), 0.3);
        assert_eq!(&r.b_coeffs()[1..], &t.b_coeffs()[1..]);
        let id = coprl_apply(
            &t,
            &[
                PerturbationSpec::CoDilated { k: 2, lambda: 1.0 },
                PerturbationSpec::CoRecursive { k: 2, tau: 0.0 },
            ],
        )
        .unwrap();
        assert_eq!(id, t);
        assert!(coprl_apply(
            &t,
            &[
                PerturbationSpec::CoDilated { k: 2, lambda: 0.9 },
                PerturbationSpec::CoDilated { k: 2, lambda: 0.8 },
            ]
        )
        .is_err());
    }

    #[test]
    fn coprl_verblunsky_chebyshev() {
        let t = RealRecurrence::chebyshev_t(6);
        for path in [Path::Theorem, Path::Oracle] {
            let a = coprl_verblunsky(&t, 1, 0.5, 0.0, 6, path).unwrap().real_view().unwrap();
            assert!(max_deviation(&a, &u_alpha(12)) < 1e-15, "{path:?}");
            assert!(matches!(
                coprl_verblunsky(&t, 1, 2.0, 0.0, 6, path),
                Err(Error::SupportViolation { index: 1, .. })
            ));
            let same = coprl_verblunsky(&t, 2, 1.0, 0.0, 6, path).unwrap();
            assert_eq!(same, VerblunskySeq::zeros(12));
        }
        assert!(coprl_verblunsky(&t, 0, 0.5, 0.0, 6, Path::Theorem).is_err());
    }

    #[test]
    fn copuc_apply_examples() {
        let vs = VerblunskySeq::zeros(4);
        let m = copuc_apply(&vs, 0, c(0.3)).unwrap();
        assert_eq!(m.real_view().unwrap(), vec![0.3, 0.0, 0.0, 0.0]);
        assert_eq!(copuc_apply(&m, 0, c(0.0)).unwrap(), vs);
        assert_eq!(copuc_apply(&vs, 2, c(0.0)).unwrap(), vs);
        assert!(copuc_apply(&vs, 1, c(1.0)).is_err());
    }

    #[test]
    fn assoc_oprl_chebyshev() {
        let t = RealRecurrence::chebyshev_t(8);
        for path in [Path::Theorem, Path::Oracle] {
            let a = assoc_oprl_to_verblunsky(&t, 1, 6, path).unwrap().real_view().unwrap();
            assert!(max_deviation(&a, &u_alpha(12)) < 1e-15);
            let k0 = assoc_oprl_to_verblunsky(&t, 0, 6, path).unwrap();
            assert_eq!(k0, geronimus_inverse(&t, 6).unwrap());
        }
    }

    #[test]
    fn antiassoc_oprl_chebyshev_u() {
        let u = RealRecurrence::chebyshev_u(8);
        for path in [Path::Theorem, Path::Oracle] {
            let a = antiassoc_oprl_to_verblunsky(&u, &[0.0], &[0.25], 6, path)
                .unwrap()
                .real_view()
                .unwrap();
            assert!(max_deviation(&a, &u_alpha(12)) < 1e-15);
            let k0 = antiassoc_oprl_to_verblunsky(&u, &[], &[], 6, path).unwrap();
            assert_eq!(k0, geronimus_inverse(&u, 6).unwrap());
        }
    }

    #[test]
    fn assoc_opuc_fixtures() {
        let u = VerblunskySeq::chebyshev_u(40);
        let odd = assoc_opuc_to_recurrence(&u, 1, 4, Path::Theorem).unwrap();
        assert_eq!(odd.b(1), -0.5);
        assert!((odd.d(1) - 3.0 / 8.0).abs() < 1e-15);
        assert!((odd.d(2) - 2.0 / 9.0).abs() < 1e-15);
        assert!((odd.b(2) - 1.0 / 12.0).abs() < 1e-15);

        let even = assoc_opuc_to_recurrence(&u, 2, 4, Path::Theorem).unwrap();
        assert_eq!(even.b(1), 0.0);
        assert!((even.d(1) - 1.0 / 3.0).abs() < 1e-15);
        assert!(max_deviation(&even.d_coeffs()[1..], &[0.25; 3]) < 1e-15);

        let zeros = VerblunskySeq::zeros(40);
        for k in 1..5 {
            let r = assoc_opuc_to_recurrence(&zeros, k, 6, Path::Theorem).unwrap();
            assert_eq!(r, RealRecurrence::chebyshev_t(6));
        }
    }

    #[test]
    fn antiassoc_opuc_fixture() {
        let zeros = VerblunskySeq::zeros(20);
        let r = antiassoc_opuc_to_recurrence(&zeros, &[0.0, -0.5], 5, Path::Theorem).unwrap();
        assert!((r.d(1) - 0.25).abs() < 1e-15);
        assert!((r.d(2) - 0.375).abs() < 1e-15);
        assert_eq!(r.b(1), 0.0);
        assert_eq!(r.b(2), 0.0);
        let oracle = antiassoc_opuc_to_recurrence(&zeros, &[0.0, -0.5], 5, Path::Oracle).unwrap();
        assert!(max_deviation(&flatten(&r), &flatten(&oracle)) < 1e-15);
        let none = antiassoc_opuc_to_recurrence(&zeros, &[], 5, Path::Theorem).unwrap();
        assert_eq!(none, RealRecurrence::chebyshev_t(5));
    }

    #[test]
    fn lu_paths_chebyshev() {
        let t = RealRecurrence::chebyshev_t(8);
        let corec = perturbed_v(&t, 1, 1.0, 0.1, 6, LuPath::ClosedForm).unwrap();
        let refac = perturbed_v(&t, 1, 1.0, 0.1, 6, LuPath::Refactorized).unwrap();
        assert!(max_deviation(&corec.v, &refac.v) < 1e-15);
        assert!((corec.v[2] - 0.6).abs() < 1e-15);
        assert!((corec.v[3] - 5.0 / 12.0).abs() < 1e-15);

        let dil = perturbed_v(&t, 1, 0.5, 0.0, 6, LuPath::Refactorized).unwrap();
        let expected = [1.0, 0.25, 0.75, 1.0 / 3.0, 2.0 / 3.0, 0.375];
        assert!(max_deviation(&dil.v, &expected) < 1e-15);
        let cf = perturbed_v(&t, 1, 0.5, 0.0, 6, LuPath::ClosedForm).unwrap();
        assert_eq!(cf.v[1], 0.5);

        let report = lu_discrepancy(&t, 1, 0.5, 0.0, 6).unwrap();
        assert_eq!(report.first_mismatch, Some((1, 0.25, 0.5)));
        assert!(!report.agrees());

        let alpha = perturbed_alpha_lu(&t, 1, 0.5, 0.0, 12, LuPath::Refactorized)
            .unwrap()
            .real_view()
            .unwrap();
        assert!(max_deviation(&alpha, &u_alpha(12)) < 1e-14);
        let same = perturbed_alpha_lu(&t, 2, 1.0, 0.0, 12, LuPath::ClosedForm).unwrap();
        assert_eq!(same, VerblunskySeq::zeros(12));
    }

    #[test]
    fn sieve_examples() {
        let vs = VerblunskySeq::from_real(&[0.1, 0.2, 0.3]).unwrap();
        assert_eq!(sieve(&vs, 1).unwrap(), vs);
        assert_eq!(
            sieve(&vs, 2).unwrap().real_view().unwrap(),
            vec![0.0, 0.1, 0.0, 0.2, 0.0, 0.3]
        );
        assert_eq!(
            sieve(&vs, 3).unwrap().real_view().unwrap()[..6],
            [0.0, 0.0, 0.1, 0.0, 0.0, 0.2]
        );
        assert!(sieve(&vs, 0).is_err());
    }

    #[test]
    fn sieve2_examples() {
        let t = sieve2_recurrence(&VerblunskySeq::zeros(6), 6, Path::Theorem).unwrap();
        assert_eq!(t, RealRecurrence::chebyshev_t(6));
        let odd_u: Vec<f64> = (0..8).map(|n| -1.0 / (n as f64 + 2.0)).collect();
        let vs = VerblunskySeq::from_real(&odd_u).unwrap();
        let r = sieve2_recurrence(&vs, 8, Path::Theorem).unwrap();
        assert!(max_deviation(r.d_coeffs(), &[0.25; 8]) < 1e-15);
    }

    #[test]
    fn sieved_kmod_examples() {
        let zeros = VerblunskySeq::zeros(6);
        let r = sieved_kmod_recurrence(&zeros, 0, 0.5, 6, Path::Theorem).unwrap();
        assert_eq!(r.d(1), 0.75);
        assert_eq!(r.d(2), 0.125);
        assert_eq!(&r.d_coeffs()[2..], &[0.25; 4]);
        let vs = VerblunskySeq::from_real(&[0.1, -0.3, 0.5, 0.2, 0.0, -0.6]).unwrap();
        let id = sieved_kmod_recurrence(&vs, 2, 0.5, 6, Path::Theorem).unwrap();
        assert_eq!(id, sieve2_recurrence(&vs, 6, Path::Theorem).unwrap());
        assert!(sieved_kmod_recurrence(&vs, 2, 1.0, 6, Path::Theorem).is_err());
    }

    #[test]
    fn symmetric_examples() {
        let t = symmetric_verblunsky(&[0.5, 0.25, 0.25, 0.25], 4, Path::Theorem).unwrap();
        assert_eq!(t, VerblunskySeq::zeros(8));
        let u = symmetric_verblunsky(&[0.25; 6], 6, Path::Theorem).unwrap();
        assert!(max_deviation(&u.real_view().unwrap(), &u_alpha(12)) < 1e-15);
        let one = symmetric_verblunsky(&[0.6], 1, Path::Theorem).unwrap();
        assert!((one.alpha(1).re - 0.2).abs() < 1e-15);

        let d = [0.5, 0.25, 0.25, 0.25, 0.25, 0.25];
        let dil = symmetric_codilated_verblunsky(&d, 1, 0.5, 6, Path::Theorem).unwrap();
        assert!(max_deviation(&dil.real_view().unwrap(), &u_alpha(12)) < 1e-15);
        let id = symmetric_codilated_verblunsky(&d, 3, 1.0, 6, Path::Theorem).unwrap();
        assert_eq!(id, VerblunskySeq::zeros(12));
    }

    #[test]
    fn side_routing() {
        let t = RealRecurrence::chebyshev_t(4);
        let kmod = PerturbationSpec::KModification { k: 0, eta: c(0.2) };
        assert!(apply_line(&t, &kmod).is_err());
        let dil = PerturbationSpec::CoDilated { k: 1, lambda: 0.5 };
        assert!(apply_circle(&VerblunskySeq::zeros(4), &dil).is_err());
        assert_eq!(apply_line(&t, &dil).unwrap(), RealRecurrence::chebyshev_u(4));
    }
}
