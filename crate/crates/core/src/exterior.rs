//! Exterior calculus on a left-invariant coframe `{θ, θ¹, θ¹̄}` and the
//! pseudohermitian structure equations.
//!
//! Coefficients are constant complex numbers, so `d` is determined by `dθ`,
//! `dθ¹` and `dθ¹̄` through linearity and the Leibniz rule. `dθ = iθ¹∧θ¹̄` is
//! fixed (Levi form normalised to `h₁₁̄ = 1`, `T` the Reeb field).

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for structural residuals on `O(1)` structure constants.
/// Residuals that are quadratic in the constants are scaled by `max(1, ‖c‖²)`.
pub const STRUCTURE_TOL: f64 = 1e-12;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Error, PartialEq)]
pub enum ExteriorError {
    #[error("form degree {0} exceeds 3")]
    DegreeOverflow(usize),
    #[error("structure constants violate d² = 0 (residual {residual:e})")]
    JacobiViolation { residual: f64 },
    #[error("connection system is rank deficient (smallest singular value {sigma_min:e})")]
    SingularSystem { sigma_min: f64 },
    #[error("connection system is inconsistent (residual {residual:e})")]
    Inconsistent { residual: f64 },
    #[error("dθ₁¹ does not have the Tanaka-Webster shape: {0}")]
    StructureMismatch(String),
}

/// Sorted wedge monomial over `{θ, θ¹, θ¹̄}`, stored as a bit mask
/// (bit 0 = θ, bit 1 = θ¹, bit 2 = θ¹̄).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u8);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);
    pub const THETA: Monomial = Monomial(0b001);
    pub const THETA1: Monomial = Monomial(0b010);
    pub const THETA1BAR: Monomial = Monomial(0b100);
    /// `θ¹∧θ¹̄`
    pub const T1_T1BAR: Monomial = Monomial(0b110);
    /// `θ∧θ¹`
    pub const T_T1: Monomial = Monomial(0b011);
    /// `θ∧θ¹̄`
    pub const T_T1BAR: Monomial = Monomial(0b101);
    /// `θ∧θ¹∧θ¹̄`
    pub const VOLUME: Monomial = Monomial(0b111);

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    fn factors(self) -> impl Iterator<Item = u8> {
        (0..3u8).filter(move |b| self.0 & (1 << b) != 0)
    }

    /// Sign and product of `self ∧ other`, or `None` if they share a factor.
    fn wedge(self, other: Monomial) -> Option<(f64, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions = self.factors().map(|i| other.factors().filter(|&j| j < i).count()).sum::<usize>();
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        Some((sign, Monomial(self.0 | other.0)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let names = ["θ", "θ¹", "θ¹̄"];
        let parts: Vec<&str> = self.factors().map(|b| names[b as usize]).collect();
        write!(f, "{}", parts.join("∧"))
    }
}

/// Constant-coefficient complex differential form of fixed degree.
#[derive(Clone, PartialEq)]
pub struct ComplexForm {
    degree: usize,
    coeffs: BTreeMap<Monomial, Complex64>,
}

impl fmt::Debug for ComplexForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form{}{:?}", self.degree, self.coeffs)
    }
}

impl ComplexForm {
    pub fn zero(degree: usize) -> Result<Self, ExteriorError> {
        if degree > 3 {
            return Err(ExteriorError::DegreeOverflow(degree));
        }
        Ok(Self { degree, coeffs: BTreeMap::new() })
    }

    pub fn monomial(m: Monomial, c: Complex64) -> Self {
        let mut form = Self { degree: m.degree(), coeffs: BTreeMap::new() };
        form.add_term(m, c);
        form
    }

    pub fn theta() -> Self {
        Self::monomial(Monomial::THETA, ONE)
    }

    pub fn theta1() -> Self {
        Self::monomial(Monomial::THETA1, ONE)
    }

    pub fn theta1bar() -> Self {
        Self::monomial(Monomial::THETA1BAR, ONE)
    }

    /// `c_t θ + c_1 θ¹ + c_1̄ θ¹̄`
    pub fn one_form(c_t: Complex64, c_1: Complex64, c_1bar: Complex64) -> Self {
        let mut form = Self { degree: 1, coeffs: BTreeMap::new() };
        form.add_term(Monomial::THETA, c_t);
        form.add_term(Monomial::THETA1, c_1);
        form.add_term(Monomial::THETA1BAR, c_1bar);
        form
    }

    /// Coefficients in the basis `{θ¹∧θ¹̄, θ∧θ¹, θ∧θ¹̄}`.
    pub fn two_form(c_11bar: Complex64, c_t1: Complex64, c_t1bar: Complex64) -> Self {
        let mut form = Self { degree: 2, coeffs: BTreeMap::new() };
        form.add_term(Monomial::T1_T1BAR, c_11bar);
        form.add_term(Monomial::T_T1, c_t1);
        form.add_term(Monomial::T_T1BAR, c_t1bar);
        form
    }

    fn add_term(&mut self, m: Monomial, c: Complex64) {
        debug_assert_eq!(m.degree(), self.degree);
        if c == ZERO {
            return;
        }
        let entry = self.coeffs.entry(m).or_insert(ZERO);
        *entry += c;
        if *entry == ZERO {
            self.coeffs.remove(&m);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, m: Monomial) -> Complex64 {
        self.coeffs.get(&m).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Complex64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    pub fn add(&self, other: &ComplexForm) -> ComplexForm {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> ComplexForm {
        let mut out = Self { degree: self.degree, coeffs: BTreeMap::new() };
        for (m, c) in self.terms() {
            out.add_term(m, c * s);
        }
        out
    }

    /// Complex conjugate: conjugates coefficients and swaps `θ¹ ↔ θ¹̄`.
    pub fn conj(&self) -> ComplexForm {
        let mut out = Self { degree: self.degree, coeffs: BTreeMap::new() };
        for (m, c) in self.terms() {
            // rebuild the swapped monomial factor by factor to pick up the sign
            let mut acc = (1.0, Monomial::ONE);
            for b in m.factors() {
                let swapped = match b {
                    1 => Monomial::THETA1BAR,
                    2 => Monomial::THETA1,
                    _ => Monomial::THETA,
                };
                let (s, next) = acc.1.wedge(swapped).expect("distinct factors");
                acc = (acc.0 * s, next);
            }
            out.add_term(acc.1, c.conj() * acc.0);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.norm()))
    }
}

/// Graded-antisymmetric wedge product.
pub fn wedge(u: &ComplexForm, v: &ComplexForm) -> Result<ComplexForm, ExteriorError> {
    let degree = u.degree + v.degree;
    let mut out = ComplexForm::zero(degree)?;
    for (mu, cu) in u.terms() {
        for (mv, cv) in v.terms() {
            if let Some((sign, m)) = mu.wedge(mv) {
                out.add_term(m, cu * cv * sign);
            }
        }
    }
    Ok(out)
}

/// Structure constants of a left-invariant coframe with `dθ = iθ¹∧θ¹̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoframeAlgebra {
    d_theta: ComplexForm,
    d_theta1: ComplexForm,
}

impl CoframeAlgebra {
    pub fn d_theta(&self) -> &ComplexForm {
        &self.d_theta
    }

    pub fn d_theta1(&self) -> &ComplexForm {
        &self.d_theta1
    }

    pub fn d_theta1bar(&self) -> ComplexForm {
        self.d_theta1.conj()
    }

    /// `(c_{θ¹∧θ¹̄}, c_{θ∧θ¹}, c_{θ∧θ¹̄})` of `dθ¹`.
    pub fn constants(&self) -> [Complex64; 3] {
        [
            self.d_theta1.coefficient(Monomial::T1_T1BAR),
            self.d_theta1.coefficient(Monomial::T_T1),
            self.d_theta1.coefficient(Monomial::T_T1BAR),
        ]
    }

    fn scale(&self) -> f64 {
        let c = self.constants();
        c.iter().map(|z| z.norm_sqr()).sum::<f64>().max(1.0)
    }

    /// Largest coefficient of `d²θ`, `d²θ¹`, `d²θ¹̄`.
    pub fn closure_residual(&self) -> f64 {
        [ComplexForm::theta(), ComplexForm::theta1(), ComplexForm::theta1bar()]
            .iter()
            .map(|u| {
                let du = exterior_derivative(u, self).expect("degree 1");
                exterior_derivative(&du, self).expect("degree 2").max_abs()
            })
            .fold(0.0, f64::max)
    }

    /// The conjugate structure `θ ↦ −θ`, `θ¹ ↦ iθ¹̄`, which keeps `dθ = iθ¹∧θ¹̄`.
    pub fn conjugate(&self) -> CoframeAlgebra {
        let [c1, c2, c3] = self.constants();
        make_coframe_algebra([I * c1.conj(), -c2.conj(), c3.conj()]).expect("conjugate of a valid algebra")
    }
}

/// Builds the algebra from the `dθ¹` coefficients `(θ¹∧θ¹̄, θ∧θ¹, θ∧θ¹̄)`.
pub fn make_coframe_algebra(d_theta1: [Complex64; 3]) -> Result<CoframeAlgebra, ExteriorError> {
    let alg = CoframeAlgebra {
        d_theta: ComplexForm::monomial(Monomial::T1_T1BAR, I),
        d_theta1: ComplexForm::two_form(d_theta1[0], d_theta1[1], d_theta1[2]),
    };
    let residual = alg.closure_residual();
    if !(residual <= STRUCTURE_TOL * alg.scale()) {
        return Err(ExteriorError::JacobiViolation { residual });
    }
    Ok(alg)
}

/// `d` on constant-coefficient forms, via linearity and Leibniz from the stored
/// differentials of the coframe. Only meaningful for left-invariant forms.
pub fn exterior_derivative(u: &ComplexForm, alg: &CoframeAlgebra) -> Result<ComplexForm, ExteriorError> {
    let mut out = ComplexForm::zero(u.degree + 1)?;
    for (m, c) in u.terms() {
        let mut acc = ComplexForm::monomial(Monomial::ONE, ONE);
        let mut d_acc = ComplexForm::zero(1)?;
        for b in m.factors() {
            let (e, de) = match b {
                0 => (ComplexForm::theta(), alg.d_theta.clone()),
                1 => (ComplexForm::theta1(), alg.d_theta1.clone()),
                _ => (ComplexForm::theta1bar(), alg.d_theta1bar()),
            };
            // d(acc ∧ e) = d(acc) ∧ e + (−1)^{deg acc} acc ∧ de
            let sign = if acc.degree.is_multiple_of(2) { ONE } else { -ONE };
            d_acc = wedge(&d_acc, &e)?.add(&wedge(&acc, &de)?.scale(sign));
            acc = wedge(&acc, &e)?;
        }
        out = out.add(&d_acc.scale(c));
    }
    Ok(out)
}

/// `θ₁¹ = αθ¹ + βθ¹̄ + γθ` and the torsion `τ¹ = A¹₁̄θ¹̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionData {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    /// `A¹₁̄`, the coefficient of `τ¹` on `θ¹̄`.
    pub torsion_upper: Complex64,
    /// `A₁₁ = conj(A¹₁̄)`: lowering the upper index of `A¹₁̄` with `h₁₁̄ = 1`
    /// gives `A₁̄₁̄`, whose conjugate is `A₁₁`.
    pub a11: Complex64,
    pub reconstruction_residual: f64,
    pub hermitian_residual: f64,
}

impl ConnectionData {
    pub fn theta11(&self) -> ComplexForm {
        ComplexForm::one_form(self.gamma, self.alpha, self.beta)
    }

    pub fn tau1(&self) -> ComplexForm {
        ComplexForm::monomial(Monomial::THETA1BAR, self.torsion_upper)
    }
}

fn connection_residuals(alg: &CoframeAlgebra, theta11: &ComplexForm, tau1: &ComplexForm) -> (ComplexForm, ComplexForm) {
    let rebuilt = wedge(&ComplexForm::theta1(), theta11)
        .expect("degree 2")
        .add(&wedge(&ComplexForm::theta(), tau1).expect("degree 2"));
    let mismatch = rebuilt.add(&alg.d_theta1.scale(-ONE));
    let hermitian = theta11.add(&theta11.conj());
    (mismatch, hermitian)
}

/// Solves `dθ¹ = θ¹∧θ₁¹ + θ∧τ¹`, `τ¹ ≡ 0 mod θ¹̄`, `θ₁¹ + θ₁̄¹̄ = 0`.
///
/// The conditions are real-linear in `(α, β, γ, A¹₁̄)`; the overdetermined
/// real system is solved by SVD after checking it has full column rank.
pub fn solve_connection(alg: &CoframeAlgebra) -> Result<ConnectionData, ExteriorError> {
    let unknowns = |u: &[f64]| {
        let alpha = Complex64::new(u[0], u[1]);
        let beta = Complex64::new(u[2], u[3]);
        let gamma = Complex64::new(u[4], u[5]);
        let tau = Complex64::new(u[6], u[7]);
        (ComplexForm::one_form(gamma, alpha, beta), ComplexForm::monomial(Monomial::THETA1BAR, tau))
    };
    let rows = |mismatch: &ComplexForm, hermitian: &ComplexForm| -> Vec<f64> {
        let mut r = Vec::with_capacity(12);
        for m in [Monomial::T1_T1BAR, Monomial::T_T1, Monomial::T_T1BAR] {
            let c = mismatch.coefficient(m);
            r.extend([c.re, c.im]);
        }
        for m in [Monomial::THETA, Monomial::THETA1, Monomial::THETA1BAR] {
            let c = hermitian.coefficient(m);
            r.extend([c.re, c.im]);
        }
        r
    };

    // affine map u ↦ L u − b, sampled at 0 and at the unit vectors
    let (t0, tau0) = unknowns(&[0.0; 8]);
    let (m0, h0) = connection_residuals(alg, &t0, &tau0);
    let offset = rows(&m0, &h0);
    let mut matrix = DMatrix::<f64>::zeros(12, 8);
    for j in 0..8 {
        let mut e = [0.0; 8];
        e[j] = 1.0;
        let (t, tau) = unknowns(&e);
        let (m, h) = connection_residuals(alg, &t, &tau);
        for (i, v) in rows(&m, &h).into_iter().enumerate() {
            matrix[(i, j)] = v - offset[i];
        }
    }
    let rhs = DVector::from_iterator(12, offset.iter().map(|v| -v));

    let svd = matrix.clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    let sigma_min = svd.singular_values.min();
    if sigma_min <= 1e-10 * sigma_max {
        return Err(ExteriorError::SingularSystem { sigma_min });
    }
    let solution = svd.solve(&rhs, 1e-14).map_err(|_| ExteriorError::SingularSystem { sigma_min })?;
    let u: Vec<f64> = solution.iter().copied().collect();

    let (theta11, tau1) = unknowns(&u);
    let (mismatch, hermitian) = connection_residuals(alg, &theta11, &tau1);
    let reconstruction_residual = mismatch.max_abs();
    let hermitian_residual = hermitian.max_abs();
    let worst = reconstruction_residual.max(hermitian_residual);
    if !(worst <= STRUCTURE_TOL * alg.scale().sqrt()) {
        return Err(ExteriorError::Inconsistent { residual: worst });
    }
    let torsion_upper = Complex64::new(u[6], u[7]);
    Ok(ConnectionData {
        alpha: Complex64::new(u[0], u[1]),
        beta: Complex64::new(u[2], u[3]),
        gamma: Complex64::new(u[4], u[5]),
        torsion_upper,
        a11: torsion_upper.conj(),
        reconstruction_residual,
        hermitian_residual,
    })
}

/// Tanaka-Webster curvature and torsion at a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PointData {
    #[serde(rename = "W")]
    pub w: f64,
    #[serde(rename = "A11", serialize_with = "crate::report::complex_pair")]
    pub a11: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StructureResiduals {
    pub closure: f64,
    pub reconstruction: f64,
    pub hermitian: f64,
    /// Imaginary part of the `θ¹∧θ¹̄` coefficient of `dθ₁¹`.
    pub curvature_imag: f64,
    /// `|c_{θ∧θ¹̄} + conj(c_{θ∧θ¹})|` for `dθ₁¹`.
    pub conjugate_pair: f64,
}

/// Reads `W` from `dθ₁¹ = Wθ¹∧θ¹̄ + 2i Im(B θ¹∧θ)`. The `θ∧θ¹` and `θ∧θ¹̄`
/// coefficients must form the pair `(−B, B̄)`; no particular formula for `B`
/// is asserted.
pub fn curvature_torsion(
    alg: &CoframeAlgebra,
    conn: &ConnectionData,
) -> Result<(PointData, StructureResiduals), ExteriorError> {
    let d_conn = exterior_derivative(&conn.theta11(), alg)?;
    let w = d_conn.coefficient(Monomial::T1_T1BAR);
    let pair = (d_conn.coefficient(Monomial::T_T1BAR) + d_conn.coefficient(Monomial::T_T1).conj()).norm();
    let tol = STRUCTURE_TOL * alg.scale();
    if !(w.im.abs() <= tol) {
        return Err(ExteriorError::StructureMismatch(format!("θ¹∧θ¹̄ coefficient has imaginary part {:e}", w.im)));
    }
    if !(pair <= tol) {
        return Err(ExteriorError::StructureMismatch(format!(
            "θ∧θ¹, θ∧θ¹̄ coefficients are not a conjugate pair ({pair:e})"
        )));
    }
    let residuals = StructureResiduals {
        closure: alg.closure_residual(),
        reconstruction: conn.reconstruction_residual,
        hermitian: conn.hermitian_residual,
        curvature_imag: w.im.abs(),
        conjugate_pair: pair,
    };
    Ok((PointData { w: w.re, a11: conn.a11 }, residuals))
}

/// Whole pipeline: connection, then curvature and torsion.
pub fn analyze(alg: &CoframeAlgebra) -> Result<(ConnectionData, PointData, StructureResiduals), ExteriorError> {
    let conn = solve_connection(alg)?;
    let (point, residuals) = curvature_torsion(alg, &conn)?;
    Ok((conn, point, residuals))
}

/// `{"d_theta1": {"t1_t1bar": [re,im], "t_t1": [re,im], "t_t1bar": [re,im]}}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConstantsDoc {
    pub d_theta1: DTheta1Doc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DTheta1Doc {
    #[serde(default)]
    pub t1_t1bar: [f64; 2],
    #[serde(default)]
    pub t_t1: [f64; 2],
    #[serde(default)]
    pub t_t1bar: [f64; 2],
}

impl StructureConstantsDoc {
    pub fn constants(&self) -> [Complex64; 3] {
        let c = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        [c(self.d_theta1.t1_t1bar), c(self.d_theta1.t_t1), c(self.d_theta1.t_t1bar)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn kappa_family(kappa: f64) -> CoframeAlgebra {
        make_coframe_algebra([ZERO, c(0.0, kappa), ZERO]).unwrap()
    }

    fn eps_family(eps: f64) -> CoframeAlgebra {
        make_coframe_algebra([ZERO, ZERO, c(eps, 0.0)]).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let t1 = ComplexForm::theta1();
        let t1b = ComplexForm::theta1bar();
        assert_eq!(wedge(&t1, &t1).unwrap().max_abs(), 0.0);
        let p = wedge(&t1, &t1b).unwrap();
        assert_eq!(p.coefficient(Monomial::T1_T1BAR), ONE);
        let sum = ComplexForm::theta().add(&t1);
        let w = wedge(&sum, &t1b).unwrap();
        assert_eq!(w, ComplexForm::two_form(ONE, ZERO, ONE));
        assert_eq!(wedge(&t1b, &t1).unwrap().coefficient(Monomial::T1_T1BAR), -ONE);
    }

    #[test]
    fn wedge_degree_overflow() {
        let two = ComplexForm::two_form(ONE, ONE, ZERO);
        assert_eq!(wedge(&two, &two), Err(ExteriorError::DegreeOverflow(4)));
    }

    #[test]
    fn derivative_examples() {
        let flat = make_coframe_algebra([ZERO; 3]).unwrap();
        let d_theta = exterior_derivative(&ComplexForm::theta(), &flat).unwrap();
        assert_eq!(d_theta, ComplexForm::monomial(Monomial::T1_T1BAR, I));
        let area = wedge(&ComplexForm::theta1(), &ComplexForm::theta1bar()).unwrap();
        assert_eq!(exterior_derivative(&area, &flat).unwrap().max_abs(), 0.0);
        let k = kappa_family(0.7);
        let d_t1 = exterior_derivative(&ComplexForm::theta1(), &k).unwrap();
        assert_eq!(d_t1, ComplexForm::monomial(Monomial::T_T1, c(0.0, 0.7)));
    }

    #[test]
    fn real_kappa_violates_jacobi() {
        // Re c_{θ∧θ¹} ≠ 0 breaks d²θ = 0
        let err = make_coframe_algebra([ZERO, c(0.5, 0.0), ZERO]).unwrap_err();
        assert!(matches!(err, ExteriorError::JacobiViolation { .. }));
        // c₁ ≠ 0 with c₃c̄₁ ≠ c₁c₂
        let err = make_coframe_algebra([c(1.0, 0.0), ZERO, c(0.3, 0.0)]).unwrap_err();
        assert!(matches!(err, ExteriorError::JacobiViolation { .. }));
    }

    #[test]
    fn model_families() {
        let (conn, p, _) = analyze(&make_coframe_algebra([ZERO; 3]).unwrap()).unwrap();
        assert_eq!(conn.theta11().max_abs(), 0.0);
        assert_eq!((p.w, p.a11), (0.0, ZERO));

        let (conn, p, _) = analyze(&kappa_family(1.0)).unwrap();
        assert!((conn.gamma - c(0.0, -1.0)).norm() < 1e-14);
        assert!(conn.alpha.norm() < 1e-14 && conn.beta.norm() < 1e-14);
        assert!((p.w - 1.0).abs() < 1e-12 && p.a11.norm() < 1e-12);

        let (conn, p, _) = analyze(&eps_family(0.3)).unwrap();
        assert!(conn.theta11().max_abs() < 1e-14);
        assert!(p.w.abs() < 1e-12 && (p.a11 - c(0.3, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn mixed_algebra_with_area_term() {
        // c₁ ≠ 0 is admissible when c₃c̄₁ = c₁c₂
        let c1 = c(0.3, 0.4);
        let c2 = c(0.0, 0.8);
        let c3 = c1 * c2 / c1.conj();
        let alg = make_coframe_algebra([c1, c2, c3]).unwrap();
        let (conn, p, res) = analyze(&alg).unwrap();
        assert!(res.reconstruction < 1e-12 && res.hermitian < 1e-12);
        assert!((conn.alpha + conn.beta.conj()).norm() < 1e-12);
        assert!((p.w - (0.8 - 2.0 * c1.norm_sqr())).abs() < 1e-12);
    }

    #[test]
    fn kappa_sign_flips_curvature() {
        for kappa in [0.25, 1.0, 3.0] {
            let (_, plus, _) = analyze(&kappa_family(kappa)).unwrap();
            let (_, minus, _) = analyze(&kappa_family(-kappa)).unwrap();
            assert!((plus.w + minus.w).abs() < 1e-12);
        }
    }

    #[test]
    fn json_document() {
        let doc: StructureConstantsDoc =
            serde_json::from_str(r#"{"d_theta1": {"t1_t1bar": [0,0], "t_t1": [0,1], "t_t1bar": [0,0]}}"#).unwrap();
        assert_eq!(doc.constants()[1], I);
        assert!(serde_json::from_str::<StructureConstantsDoc>(r#"{"d_theta1": {"bogus": [0,0]}}"#).is_err());
    }
}
