//! Pointwise curvature analytics: the `C₀`-positivity form, pinching margins
//! and the Webster adapted metric `g_λ = dθ + λ⁻²θ²`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Margins with `|margin| ≤ BOUNDARY_BAND` are reported as undetermined.
pub const BOUNDARY_BAND: f64 = 1e-2;

#[derive(Debug, Error, PartialEq)]
pub enum PointwiseError {
    #[error("direction x¹ must be non-zero")]
    ZeroDirection,
    #[error("λ must be positive, got {0}")]
    NonpositiveLambda(f64),
    #[error("no points supplied")]
    NoPoints,
}

/// `Tor(X,X) = 2Re[i A₁̄₁̄ (x̄¹)²]` with `A₁̄₁̄ = conj(A₁₁)`.
pub fn torsion_form_value(a11: Complex64, x1: Complex64) -> f64 {
    2.0 * (I * a11.conj() * x1.conj() * x1.conj()).re
}

/// `W|x¹|² + C₀·Tor(X,X)`.
pub fn quadratic_form(w: f64, a11: Complex64, c0: f64, x1: Complex64) -> Result<f64, PointwiseError> {
    if x1 == Complex64::new(0.0, 0.0) {
        return Err(PointwiseError::ZeroDirection);
    }
    Ok(w * x1.norm_sqr() + c0 * torsion_form_value(a11, x1))
}

/// `W − 2C₀|A₁₁|`; positive exactly when the form is positive definite.
pub fn pinching_margin(w: f64, a11: Complex64, c0: f64) -> f64 {
    w - 2.0 * c0 * a11.norm()
}

pub fn is_c0_positive(w: f64, a11: Complex64, c0: f64) -> bool {
    pinching_margin(w, a11, c0) > 0.0
}

pub fn is_c0_negative(w: f64, a11: Complex64, c0: f64) -> bool {
    w + 2.0 * c0 * a11.norm() < 0.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Positive,
    Negative,
    Boundary,
}

/// Sign of the margin outside the band `|margin| ≤ BOUNDARY_BAND`.
pub fn margin_verdict(margin: f64) -> Verdict {
    if margin > BOUNDARY_BAND {
        Verdict::Positive
    } else if margin < -BOUNDARY_BAND {
        Verdict::Negative
    } else {
        Verdict::Boundary
    }
}

/// `f(s) = −4(as + b)/(1 + s²) + 2b` for `A₁₁ = a + bi`: the torsion form
/// along `x¹ = 1 + si`, divided by `|x¹|²`.
pub fn torsion_profile(a11: Complex64, s: f64) -> f64 {
    let (a, b) = (a11.re, a11.im);
    -4.0 * (a * s + b) / (1.0 + s * s) + 2.0 * b
}

/// Critical points of [`torsion_profile`]. When `Re A₁₁ = 0` the extrema are
/// only approached as `s → ±∞`; then `s0`, `s1` are `None`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtremalParameters {
    pub s0: Option<f64>,
    pub s1: Option<f64>,
    pub fmax: f64,
    pub fmin: f64,
    pub attained: bool,
}

pub fn extremal_parameters(a11: Complex64) -> ExtremalParameters {
    let (a, b) = (a11.re, a11.im);
    let r = a11.norm();
    if a == 0.0 {
        return ExtremalParameters { s0: None, s1: None, fmax: 2.0 * b.abs(), fmin: -2.0 * b.abs(), attained: false };
    }
    ExtremalParameters {
        s0: Some((b + r) / (-a)),
        s1: Some((b - r) / (-a)),
        fmax: 2.0 * r,
        fmin: -2.0 * r,
        attained: true,
    }
}

/// Inputs to the Ricci tensor of `g_λ`. `a11_0` is `A₁₁,₀` and `a11_1bar` is
/// `A₁₁,₁̄`; the barred torsion and its `T`-derivative are their conjugates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WebsterInputs {
    pub lambda: f64,
    pub w: f64,
    pub a11: Complex64,
    pub a11_0: Complex64,
    pub a11_1bar: Complex64,
    pub theta11_t: Complex64,
}

/// Symmetric Ricci matrix of `g_λ` in the orthonormal frame
/// `{e₁, e₂, λT}`. Entries involving `θ₁¹(T)` are evaluated in complex
/// arithmetic and their real part is kept; for a unitary connection
/// `θ₁¹(T)` is imaginary, so nothing is discarded.
pub fn webster_ricci(inp: &WebsterInputs) -> Result<[[f64; 3]; 3], PointwiseError> {
    let l = inp.lambda;
    if !(l > 0.0) {
        return Err(PointwiseError::NonpositiveLambda(l));
    }
    let (l2, lm2) = (l * l, 1.0 / (l * l));
    let abar = inp.a11.conj();
    let abar_0 = inp.a11_0.conj();
    let th = inp.theta11_t;
    let shear = 2.0 * I * l2 * abar.im * th;

    let r11 = (2.0 * inp.w - 2.0 * lm2) - shear.re + 2.0 * abar.im - l2 * abar_0.re;
    let r22 = (2.0 * inp.w - 2.0 * lm2) + shear.re - 2.0 * abar.im + l2 * abar_0.re;
    let r33 = -2.0 * l2 * abar.norm_sqr() + 2.0 * lm2;
    let r12 = (2.0 * I * l2 * abar.re * th).re - 2.0 * abar.re - l2 * abar_0.im;
    let r13 = 2.0 * l * inp.a11_1bar.re;
    let r23 = -2.0 * l * inp.a11_1bar.im;
    Ok([[r11, r12, r13], [r12, r22, r23], [r13, r23, r33]])
}

/// `R^λ = 4W − 2λ²|A₁₁|² − 2λ⁻²`.
pub fn webster_scalar(lambda: f64, w: f64, abs_a: f64) -> Result<f64, PointwiseError> {
    if !(lambda > 0.0) {
        return Err(PointwiseError::NonpositiveLambda(lambda));
    }
    Ok(4.0 * w - 2.0 * lambda * lambda * abs_a * abs_a - 2.0 / (lambda * lambda))
}

/// Open interval of `μ = λ²`; `upper = None` means `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MuInterval {
    pub lower: f64,
    pub upper: Option<f64>,
}

impl MuInterval {
    pub fn contains(&self, mu: f64) -> bool {
        mu > self.lower && self.upper.is_none_or(|u| mu < u)
    }

    pub fn intersect(&self, other: &MuInterval) -> Option<MuInterval> {
        let lower = self.lower.max(other.lower);
        let upper = match (self.upper, other.upper) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        match upper {
            Some(u) if u <= lower => None,
            _ => Some(MuInterval { lower, upper }),
        }
    }

    /// `√((l+u)/2)`, or `√(2l)` for an unbounded interval.
    pub fn representative_lambda(&self) -> f64 {
        match self.upper {
            Some(u) => (0.5 * (self.lower + u)).sqrt(),
            None => (2.0 * self.lower).sqrt(),
        }
    }
}

/// The set of `μ > 0` with `2|A|²μ² − 4Wμ + 2 < 0`, or `None` if empty.
pub fn admissible_mu_interval(w: f64, abs_a: f64) -> Option<MuInterval> {
    if abs_a > 0.0 {
        if w <= abs_a {
            return None;
        }
        let disc = ((w - abs_a) * (w + abs_a)).sqrt();
        let a2 = abs_a * abs_a;
        // the smaller root in the cancellation-free form 1/(W + disc)
        let lower = 1.0 / (w + disc);
        let upper = (w + disc) / a2;
        if !(upper > lower) {
            return None;
        }
        Some(MuInterval { lower, upper: Some(upper) })
    } else if w > 0.0 {
        Some(MuInterval { lower: 1.0 / (2.0 * w), upper: None })
    } else {
        None
    }
}

/// Intersection of all pointwise admissible intervals and its deterministic
/// representative λ.
pub fn uniform_mu_interval(points: &[(f64, f64)]) -> Result<Option<MuInterval>, PointwiseError> {
    let (first, rest) = points.split_first().ok_or(PointwiseError::NoPoints)?;
    let mut acc = match admissible_mu_interval(first.0, first.1) {
        Some(i) => i,
        None => return Ok(None),
    };
    for &(w, a) in rest {
        match admissible_mu_interval(w, a).and_then(|i| acc.intersect(&i)) {
            Some(i) => acc = i,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

pub fn find_uniform_lambda(points: &[(f64, f64)]) -> Result<Option<f64>, PointwiseError> {
    Ok(uniform_mu_interval(points)?.map(|i| i.representative_lambda()))
}

/// Minimum of `quadratic_form / |x¹|²` over `count` unit directions `e^{iφ}`.
pub fn scan_min_quadratic_form(w: f64, a11: Complex64, c0: f64, count: usize) -> f64 {
    (0..count)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
            quadratic_form(w, a11, c0, Complex64::from_polar(1.0, phi)).expect("unit direction")
        })
        .fold(f64::INFINITY, f64::min)
}
