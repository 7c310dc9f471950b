//! Soliton residuals, Harnack quantities and integral identities evaluated on
//! the flat Heisenberg background.
//!
//! Every covariant derivative is an iterated flat frame derivative, so these
//! diagnostics certify model and manufactured data, not curved structures.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::heisenberg::{
    d_t, integral_of_t_derivative, paneitz_fourth, sublaplacian, z1, z1bar, ComplexField, FieldError, HeisenbergGrid,
    RealField, COMPLEX_RESIDUE_TOL,
};
use crate::pointwise::{pinching_margin, quadratic_form};
use std::sync::Arc;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolitonKind {
    Yamabe,
    Torsion,
}

#[derive(Clone, Debug)]
pub struct SolitonData {
    pub f: RealField,
    pub mu: f64,
    pub w: RealField,
    pub a11: ComplexField,
}

impl SolitonData {
    pub fn new(f: RealField, mu: f64, w: RealField, a11: ComplexField) -> Result<Self, FieldError> {
        f.check_grid(&w)?;
        f.check_grid(&a11)?;
        Ok(SolitonData { f, mu, w, a11 })
    }

    pub fn grid(&self) -> &Arc<HeisenbergGrid> {
        self.f.grid()
    }
}

/// The three constant-curvature torsion-free models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceForm {
    Sphere,
    Heisenberg,
    Lorentz,
}

impl SpaceForm {
    pub fn curvature(self) -> f64 {
        match self {
            SpaceForm::Sphere => 1.0,
            SpaceForm::Heisenberg => 0.0,
            SpaceForm::Lorentz => -1.0,
        }
    }

    /// `W ≡ μ ≡ curvature`, `A₁₁ ≡ 0`, `f ≡ f_const`.
    pub fn data(self, grid: &Arc<HeisenbergGrid>, f_const: f64) -> SolitonData {
        let k = self.curvature();
        SolitonData {
            f: RealField::constant(grid, f_const),
            mu: k,
            w: RealField::constant(grid, k),
            a11: ComplexField::zeros(grid),
        }
    }
}

impl std::str::FromStr for SpaceForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sphere" => Ok(SpaceForm::Sphere),
            "heisenberg" => Ok(SpaceForm::Heisenberg),
            "lorentz" => Ok(SpaceForm::Lorentz),
            _ => Err(format!("unknown space form '{s}'")),
        }
    }
}

/// `X = c_T T + c_{Z₁} Z₁ + c_{Z₁̄} Z₁̄`.
#[derive(Clone, Debug)]
pub struct ContactVectorField {
    pub coef_t: RealField,
    pub coef_z1: ComplexField,
    pub coef_z1bar: ComplexField,
}

/// `X_f = −fT − i f₁̄ Z₁ + i f₁ Z₁̄`.
pub fn contact_vector_field(f: &RealField) -> ContactVectorField {
    ContactVectorField { coef_t: f.scale(-1.0), coef_z1: z1bar(f).mul_scalar(-I), coef_z1bar: z1(f).mul_scalar(I) }
}

/// `⟨∇_bW, X⟩ = ⟨W₁̄Z₁ + W₁Z₁̄, X⟩ = W₁̄·c_{Z₁̄} + W₁·c_{Z₁}`.
pub fn pair_gradient(w: &RealField, x: &ContactVectorField) -> ComplexField {
    let w1 = z1(w);
    let w1bar = z1bar(w);
    &w1bar.mul(&x.coef_z1bar) + &w1.mul(&x.coef_z1)
}

fn real_part_checked(z: &ComplexField) -> Result<RealField, FieldError> {
    let re = z.re();
    let residue = z.im().sup_norm();
    if residue > COMPLEX_RESIDUE_TOL * re.sup_norm().max(1.0) {
        return Err(FieldError::ComplexResidue(residue));
    }
    Ok(re)
}

/// `⟨∇_bW + W₀T, X_f⟩` by direct pairing.
pub fn gradient_pairing_direct(w: &RealField, f: &RealField) -> Result<RealField, FieldError> {
    w.check_grid(f)?;
    let x = contact_vector_field(f);
    let horizontal = real_part_checked(&pair_gradient(w, &x))?;
    let vertical = d_t(w).mul(&x.coef_t);
    Ok(&horizontal + &vertical)
}

/// The same pairing as `−W₀f − ⟨∇_bW, J∇_bf⟩` with `J∇_bf = if₁̄Z₁ − if₁Z₁̄`.
pub fn gradient_pairing_via_j(w: &RealField, f: &RealField) -> Result<RealField, FieldError> {
    w.check_grid(f)?;
    let j_grad = ContactVectorField {
        coef_t: RealField::zeros(f.grid()),
        coef_z1: z1bar(f).mul_scalar(I),
        coef_z1bar: z1(f).mul_scalar(-I),
    };
    let cross = real_part_checked(&pair_gradient(w, &j_grad))?;
    let w0f = d_t(w).mul(f);
    Ok((&w0f + &cross).scale(-1.0))
}

/// `(W + ½f₀ − μ, f₁₁ + iA₁₁f)`.
pub fn yamabe_residuals(sd: &SolitonData) -> (RealField, ComplexField) {
    let f0 = d_t(&sd.f);
    let r1 = sd.w.zip_map(&f0, |w, f0| w + 0.5 * f0 - sd.mu);
    let f11 = z1(&z1(&sd.f));
    let r2 = f11.zip_map(&sd.a11.zip_map(&sd.f, |a, f| I * a * f), |x, y| x + y);
    (r1, r2)
}

/// As [`yamabe_residuals`] with `r₂ = f₁₁ + iA₁₁f + A₁₁`.
pub fn torsion_residuals(sd: &SolitonData) -> (RealField, ComplexField) {
    let (r1, r2) = yamabe_residuals(sd);
    (r1, &r2 + &sd.a11)
}

pub fn residuals(sd: &SolitonData, kind: SolitonKind) -> (RealField, ComplexField) {
    match kind {
        SolitonKind::Yamabe => yamabe_residuals(sd),
        SolitonKind::Torsion => torsion_residuals(sd),
    }
}

/// `A₁₁,₁̄₁̄ = Z₁̄Z₁̄A₁₁`.
pub fn torsion_second_derivative(a11: &ComplexField) -> ComplexField {
    z1bar(&z1bar(a11))
}

/// `i(A₁₁,₁̄₁̄ − A₁̄₁̄,₁₁)`, real since it is `i(z − z̄)`.
pub fn torsion_divergence_term(a11: &ComplexField) -> Result<RealField, FieldError> {
    let z = torsion_second_derivative(a11);
    let zbar = z1(&z1(&a11.conj()));
    real_part_checked(&(&z - &zbar).mul_scalar(I))
}

/// `Q = −½[Δ_bW − i(A₁₁,₁̄₁̄ − A₁̄₁̄,₁₁)]`.
pub fn q_curvature(w: &RealField, a11: &ComplexField) -> Result<RealField, FieldError> {
    w.check_grid(a11)?;
    let div = torsion_divergence_term(a11)?;
    Ok((&sublaplacian(w) - &div).scale(-0.5))
}

/// `A₁₁,₁̄₁̄ + A₁̄₁̄,₁₁ − W₀`, reported but never imposed.
pub fn bianchi_residual(w: &RealField, a11: &ComplexField) -> Result<RealField, FieldError> {
    w.check_grid(a11)?;
    let z = torsion_second_derivative(a11);
    let zbar = z1(&z1(&a11.conj()));
    let sum = real_part_checked(&(&z + &zbar))?;
    Ok(&sum - &d_t(w))
}

/// `4Δ_bW + 2W(W−μ) + ⟨∇_bW, X_f⟩ + ⟨W₀T, X_f⟩`.
pub fn harnack_yamabe(sd: &SolitonData) -> Result<RealField, FieldError> {
    let lap = sublaplacian(&sd.w);
    let reaction = sd.w.map(|w| 2.0 * w * (w - sd.mu));
    let pairing = gradient_pairing_direct(&sd.w, &sd.f)?;
    Ok(&(&lap.scale(4.0) + &reaction) + &pairing)
}

/// Both forms of the torsion Harnack quantity: the divergence form
/// `… − i(A₁₁,₁̄₁̄ − A₁̄₁̄,₁₁) − 2|A₁₁|²` and the `Q`-form
/// `3Δ_bW + 2W(W−μ) + ⟨∇_bW + W₀T, X_f⟩ − 2Q − 2|A₁₁|²`.
pub fn harnack_torsion(sd: &SolitonData, q: &RealField) -> Result<(RealField, RealField), FieldError> {
    sd.w.check_grid(q)?;
    let abs_sq = sd.a11.norm_sqr().scale(2.0);
    let yamabe = harnack_yamabe(sd)?;
    let div = torsion_divergence_term(&sd.a11)?;
    let divergence_form = &(&yamabe - &div) - &abs_sq;

    let reaction = sd.w.map(|w| 2.0 * w * (w - sd.mu));
    let pairing = gradient_pairing_direct(&sd.w, &sd.f)?;
    let lap3 = sublaplacian(&sd.w).scale(3.0);
    let q_form = &(&(&(&lap3 + &reaction) + &pairing) - &q.scale(2.0)) - &abs_sq;
    Ok((divergence_form, q_form))
}

/// Volume average of `W + ½f₀`.
pub fn suggested_mu(sd: &SolitonData) -> f64 {
    let f0 = d_t(&sd.f);
    sd.w.zip_map(&f0, |w, f0| w + 0.5 * f0).mean()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralReport {
    pub int_f0: f64,
    #[serde(rename = "int_W_minus_mu")]
    pub int_w_minus_mu: f64,
    #[serde(rename = "int_W_minus_mu_sq")]
    pub int_w_minus_mu_sq: f64,
    #[serde(rename = "int_absA_sq")]
    pub int_abs_a_sq: f64,
    #[serde(rename = "int_W_times_W_minus_mu")]
    pub int_w_times_w_minus_mu: f64,
    pub harnack_sup_residual: f64,
    pub paneitz_term: f64,
}

/// Integrals used in the classification argument. The Harnack residual is
/// the torsion quantity with `Q` from its definition for `Torsion`, and the
/// Yamabe quantity otherwise.
pub fn soliton_integrals(sd: &SolitonData, kind: SolitonKind) -> Result<IntegralReport, FieldError> {
    let wm = sd.w.map(|w| w - sd.mu);
    let harnack = match kind {
        SolitonKind::Yamabe => harnack_yamabe(sd)?,
        SolitonKind::Torsion => {
            let q = q_curvature(&sd.w, &sd.a11)?;
            harnack_torsion(sd, &q)?.0
        }
    };
    let p0f = paneitz_fourth(&sd.f, &sd.a11)?;
    Ok(IntegralReport {
        int_f0: integral_of_t_derivative(&sd.f),
        int_w_minus_mu: wm.integral(),
        int_w_minus_mu_sq: wm.mul(&wm).integral(),
        int_abs_a_sq: sd.a11.norm_sqr().integral(),
        int_w_times_w_minus_mu: sd.w.mul(&wm).integral(),
        harnack_sup_residual: harnack.sup_norm(),
        paneitz_term: p0f.mul(&sd.f).integral(),
    })
}

/// The three terms of
/// `0 = ∫|A₁₁|²f² + ∫(W + Tor)((∇_bf)_ℂ, (∇_bf)_ℂ) − ½∫(P₀f)f`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct YamabeIdentityReport {
    pub int_abs_a_sq_f_sq: f64,
    pub int_w_plus_tor: f64,
    pub half_paneitz_term: f64,
    pub sum: f64,
    /// `|sum|` divided by the largest term magnitude.
    pub relative_residual: f64,
    /// `W − 2|A₁₁| > BAND` at every point.
    pub w_plus_tor_positive: bool,
    /// `∫(P₀f)f ≤ 0`.
    pub paneitz_form_nonpositive: bool,
    /// Both hypotheses hold, so the identity leaves no room for torsion.
    pub forces_vanishing_torsion: bool,
}

pub fn yamabe_integral_identity(sd: &SolitonData, p0f: Option<&RealField>) -> Result<YamabeIdentityReport, FieldError> {
    let computed;
    let p0f = match p0f {
        Some(p) => {
            sd.f.check_grid(p)?;
            p
        }
        None => {
            computed = paneitz_fourth(&sd.f, &sd.a11)?;
            &computed
        }
    };
    let f_sq = sd.f.mul(&sd.f);
    let t1 = sd.a11.norm_sqr().mul(&f_sq).integral();

    let f1bar = z1bar(&sd.f);
    let (wv, av, gv) = (sd.w.values(), sd.a11.values(), f1bar.values());
    let form: Vec<f64> = (0..wv.len())
        .map(|i| {
            if gv[i] == Complex64::new(0.0, 0.0) {
                0.0
            } else {
                quadratic_form(wv[i], av[i], 1.0, gv[i]).expect("non-zero direction")
            }
        })
        .collect();
    let t2 = RealField::new(sd.grid().clone(), form)?.integral();
    let paneitz = p0f.mul(&sd.f).integral();
    let t3 = -0.5 * paneitz;

    let sum = t1 + t2 + t3;
    let scale = t1.abs().max(t2.abs()).max(t3.abs());
    let relative_residual = if scale == 0.0 { 0.0 } else { sum.abs() / scale };
    let w_plus_tor_positive = (0..wv.len()).all(|i| pinching_margin(wv[i], av[i], 1.0) > 0.0);
    let paneitz_form_nonpositive = paneitz <= 0.0;
    Ok(YamabeIdentityReport {
        int_abs_a_sq_f_sq: t1,
        int_w_plus_tor: t2,
        half_paneitz_term: t3,
        sum,
        relative_residual,
        w_plus_tor_positive,
        paneitz_form_nonpositive,
        forces_vanishing_torsion: w_plus_tor_positive && paneitz_form_nonpositive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{make_grid, testfields};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_data(n: usize, seed: u64) -> SolitonData {
        let g = make_grid(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = testfields::random_smooth_real(&g, &mut rng, 1.0);
        let w = testfields::random_smooth_real(&g, &mut rng, 1.0);
        let a = testfields::random_smooth_complex(&g, &mut rng, 0.5);
        SolitonData::new(f, 0.3, w, a).unwrap()
    }

    #[test]
    fn constant_potential_gives_reeb_field() {
        let g = make_grid(4).unwrap();
        let x = contact_vector_field(&RealField::constant(&g, 2.0));
        assert!(x.coef_t.values().iter().all(|&v| v == -2.0));
        assert_eq!(x.coef_z1.sup_norm(), 0.0);
        assert_eq!(x.coef_z1bar.sup_norm(), 0.0);
    }

    #[test]
    fn contact_field_is_real_and_pairings_agree() {
        let sd = random_data(8, 5);
        let x = contact_vector_field(&sd.f);
        assert_eq!(x.coef_z1bar.values(), x.coef_z1.conj().values());
        let direct = gradient_pairing_direct(&sd.w, &sd.f).unwrap();
        let via_j = gradient_pairing_via_j(&sd.w, &sd.f).unwrap();
        assert!((&direct - &via_j).sup_norm() < 1e-10 * direct.sup_norm().max(1.0));
    }

    #[test]
    fn residual_oracles() {
        let g = make_grid(4).unwrap();
        for f in [0.0, 1.7] {
            let sd = SolitonData::new(
                RealField::constant(&g, f),
                0.5,
                RealField::constant(&g, 0.5),
                ComplexField::zeros(&g),
            )
            .unwrap();
            let (r1, r2) = yamabe_residuals(&sd);
            assert_eq!((r1.sup_norm(), r2.sup_norm()), (0.0, 0.0));
            let (t1, t2) = torsion_residuals(&sd);
            assert_eq!((t1.sup_norm(), t2.sup_norm()), (0.0, 0.0));
        }
        let eps = Complex64::new(0.2, 0.0);
        let sd =
            SolitonData::new(RealField::zeros(&g), 0.0, RealField::zeros(&g), ComplexField::constant(&g, eps)).unwrap();
        let (_, r2) = torsion_residuals(&sd);
        assert!(r2.values().iter().all(|&v| v == eps));
    }

    #[test]
    fn residuals_match_composition() {
        let sd = random_data(8, 9);
        let (r1, r2) = torsion_residuals(&sd);
        let f0 = d_t(&sd.f);
        let manual1 = &(&sd.w + &f0.scale(0.5)) - &RealField::constant(sd.grid(), sd.mu);
        assert!((&r1 - &manual1).sup_norm() < 1e-13);
        let manual2 = &(&z1(&z1(&sd.f)) + &sd.a11.mul(&sd.f.to_complex()).mul_scalar(I)) + &sd.a11;
        assert!((&r2 - &manual2).sup_norm() < 1e-12);
    }

    #[test]
    fn harnack_oracles() {
        let g = make_grid(4).unwrap();
        let mu = 0.7;
        let sd =
            SolitonData::new(RealField::constant(&g, 3.0), mu, RealField::constant(&g, mu), ComplexField::zeros(&g))
                .unwrap();
        assert_eq!(harnack_yamabe(&sd).unwrap().sup_norm(), 0.0);
        let delta = 0.1;
        let sd = SolitonData { w: RealField::constant(&g, mu + delta), f: RealField::zeros(&g), ..sd };
        let h = harnack_yamabe(&sd).unwrap();
        assert!(h.values().iter().all(|&v| v == 2.0 * (mu + delta) * ((mu + delta) - mu)));

        let eps = 0.3;
        let sd = SolitonData::new(
            RealField::zeros(&g),
            mu,
            RealField::constant(&g, mu),
            ComplexField::constant(&g, Complex64::new(eps, 0.0)),
        )
        .unwrap();
        let (div, qf) = harnack_torsion(&sd, &RealField::zeros(&g)).unwrap();
        assert!(div.values().iter().all(|&v| (v + 2.0 * eps * eps).abs() < 1e-15));
        assert!(qf.values().iter().all(|&v| (v + 2.0 * eps * eps).abs() < 1e-15));
    }

    #[test]
    fn harnack_forms_agree_and_differ_by_torsion_terms() {
        let sd = random_data(8, 21);
        let q = q_curvature(&sd.w, &sd.a11).unwrap();
        let (div, qf) = harnack_torsion(&sd, &q).unwrap();
        assert!((&div - &qf).sup_norm() < 1e-9 * div.sup_norm().max(1.0));
        let yam = harnack_yamabe(&sd).unwrap();
        let expected = &torsion_divergence_term(&sd.a11).unwrap().scale(-1.0) - &sd.a11.norm_sqr().scale(2.0);
        assert!((&(&div - &yam) - &expected).sup_norm() < 1e-10 * yam.sup_norm().max(1.0));
    }

    #[test]
    fn space_forms_are_exact() {
        let g = make_grid(8).unwrap();
        for sf in [SpaceForm::Sphere, SpaceForm::Heisenberg, SpaceForm::Lorentz] {
            let sd = sf.data(&g, 1.0);
            for kind in [SolitonKind::Yamabe, SolitonKind::Torsion] {
                let (r1, r2) = residuals(&sd, kind);
                assert!(r1.sup_norm() <= 1e-12 && r2.sup_norm() <= 1e-12);
            }
            let q = q_curvature(&sd.w, &sd.a11).unwrap();
            let (a, b) = harnack_torsion(&sd, &q).unwrap();
            assert!(a.sup_norm() <= 1e-12 && b.sup_norm() <= 1e-12);
            assert!(harnack_yamabe(&sd).unwrap().sup_norm() <= 1e-12);
        }
    }

    #[test]
    fn integrals() {
        let sd = random_data(8, 2);
        assert_eq!(soliton_integrals(&sd, SolitonKind::Torsion).unwrap().int_f0, 0.0);

        let g = make_grid(8).unwrap();
        let mu = 0.4;
        let sd = SolitonData::new(
            RealField::zeros(&g),
            mu,
            RealField::from_fn(&g, |x, _, _| mu + (2.0 * PI * x).sin()),
            ComplexField::zeros(&g),
        )
        .unwrap();
        let r = soliton_integrals(&sd, SolitonKind::Yamabe).unwrap();
        assert!((r.int_w_minus_mu_sq - 0.5).abs() < 1e-12);
        let chain = r.int_w_times_w_minus_mu - mu * r.int_w_minus_mu;
        assert!((r.int_w_minus_mu_sq - chain).abs() < 1e-12);

        let sd = SpaceForm::Sphere.data(&g, 1.0);
        let r = soliton_integrals(&sd, SolitonKind::Torsion).unwrap();
        assert_eq!(
            (r.int_w_minus_mu, r.int_w_minus_mu_sq, r.int_abs_a_sq, r.int_w_times_w_minus_mu),
            (0.0, 0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn identity_on_constants() {
        let g = make_grid(4).unwrap();
        let sd =
            SolitonData::new(RealField::constant(&g, 2.0), 1.0, RealField::constant(&g, 1.0), ComplexField::zeros(&g))
                .unwrap();
        let r = yamabe_integral_identity(&sd, None).unwrap();
        assert_eq!((r.int_abs_a_sq_f_sq, r.int_w_plus_tor, r.half_paneitz_term), (0.0, 0.0, 0.0));
        assert!(r.w_plus_tor_positive && r.paneitz_form_nonpositive && r.forces_vanishing_torsion);
    }

    #[test]
    fn suggested_mu_is_mean_curvature() {
        let g = make_grid(4).unwrap();
        let sd = SpaceForm::Lorentz.data(&g, 0.0);
        assert_eq!(suggested_mu(&sd), -1.0);
    }
}
