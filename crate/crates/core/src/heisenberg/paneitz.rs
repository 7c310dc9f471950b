//! CR pluriharmonic operator `P₁` and the fourth-order CR Paneitz operator `P₀`
//! on the flat background.

use num_complex::Complex64;
use serde::Serialize;

use super::field::{inner_product, ComplexField, RealField};
use super::ops::{z1, z1bar};
use super::FieldError;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Tolerance on the imaginary residue of `P₀φ`, relative to `max(1, sup|Re P₀φ|)`.
pub const COMPLEX_RESIDUE_TOL: f64 = 1e-10;

/// `P₁φ = φ_{1̄}{}^{1̄}{}_{1} + iA₁₁φ¹`.
///
/// With `h₁₁̄ = 1` the raised indices are identified with their conjugates, so
/// the third-order term is `φ_{1̄11} = Z₁Z₁Z₁̄φ` (rightmost index applied first)
/// and `φ¹ = φ_{1̄} = Z₁̄φ`.
pub fn paneitz_third(phi: &RealField, a11: &ComplexField) -> Result<ComplexField, FieldError> {
    phi.check_grid(a11)?;
    let phi_1bar = z1bar(phi);
    let third = z1(&z1(&phi_1bar));
    let torsion_term = a11.zip_map(&phi_1bar, |a, p| I * a * p);
    Ok(&third + &torsion_term)
}

/// `P₀φ = δ_b(Pφ) + δ̄_b(P̄φ)` with `δ_b(σ₁θ¹) = σ_{1,1̄} = Z₁̄σ₁` and
/// `δ̄_b(σ₁̄θ¹̄) = Z₁σ₁̄` on the flat background.
pub fn paneitz_fourth(phi: &RealField, a11: &ComplexField) -> Result<RealField, FieldError> {
    let p1 = paneitz_third(phi, a11)?;
    let full = &z1bar(&p1) + &z1(&p1.conj());
    let real = full.re();
    let residue = full.im().sup_norm();
    let scale = real.sup_norm().max(1.0);
    if residue > COMPLEX_RESIDUE_TOL * scale {
        return Err(FieldError::ComplexResidue(residue));
    }
    Ok(real)
}

/// Sup-norm of `P₁φ` on the torsion-free background; small values certify
/// approximate membership in `ker P₁ ⊆ ker P₀`.
pub fn pluriharmonic_residual(phi: &RealField) -> f64 {
    let zero = ComplexField::zeros(phi.grid());
    paneitz_third(phi, &zero).expect("same grid").sup_norm()
}

#[derive(Clone, Debug, Serialize)]
pub struct PaneitzDiagnostics {
    pub n: usize,
    /// `⟨P₀φ, ψ⟩`
    pub form_phi_psi: f64,
    /// `⟨φ, P₀ψ⟩`
    pub form_psi_phi: f64,
    pub self_adjoint_rel_err: f64,
    /// `∫⟨Pφ + P̄φ, d_bφ⟩ dμ`
    pub ibp_lhs: f64,
    /// `−∫ P₀φ·φ dμ`
    pub ibp_rhs: f64,
    pub ibp_rel_err: f64,
    pub ibp_lhs_imag: f64,
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Self-adjointness of `P₀` and the integration-by-parts identity
/// `∫⟨Pφ + P̄φ, d_bφ⟩_{L*} dμ = −∫ P₀φ·φ dμ` on the supplied fields.
pub fn paneitz_diagnostics(
    phi: &RealField,
    psi: &RealField,
    a11: &ComplexField,
) -> Result<PaneitzDiagnostics, FieldError> {
    phi.check_grid(psi)?;
    let p0_phi = paneitz_fourth(phi, a11)?;
    let p0_psi = paneitz_fourth(psi, a11)?;
    let form_phi_psi = inner_product(&p0_phi, psi)?.re;
    let form_psi_phi = inner_product(phi, &p0_psi)?.re;

    // ⟨σ₁θ¹ + σ₁̄θ¹̄, τ₁θ¹ + τ₁̄θ¹̄⟩ = σ₁τ̄₁ + σ₁̄τ̄₁̄ with d_bφ = φ₁θ¹ + φ₁̄θ¹̄
    let p1 = paneitz_third(phi, a11)?;
    let phi_1 = z1(phi);
    let phi_1bar = z1bar(phi);
    let pairing = &p1.zip_map(&phi_1, |p, d| p * d.conj()) + &p1.conj().zip_map(&phi_1bar, |p, d| p * d.conj());
    let lhs = pairing.integral();
    let rhs = -p0_phi.mul(phi).integral();

    Ok(PaneitzDiagnostics {
        n: phi.grid().n(),
        form_phi_psi,
        form_psi_phi,
        self_adjoint_rel_err: relative_gap(form_phi_psi, form_psi_phi),
        ibp_lhs: lhs.re,
        ibp_rhs: rhs,
        ibp_rel_err: relative_gap(lhs.re, rhs),
        ibp_lhs_imag: lhs.im,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{make_grid, testfields};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn constants_are_in_the_kernel() {
        let g = make_grid(8).unwrap();
        let c = RealField::constant(&g, 3.0);
        let a = ComplexField::constant(&g, Complex64::new(0.4, -0.2));
        assert_eq!(paneitz_third(&c, &a).unwrap().sup_norm(), 0.0);
        assert_eq!(paneitz_fourth(&c, &a).unwrap().sup_norm(), 0.0);
        assert_eq!(pluriharmonic_residual(&c), 0.0);
    }

    #[test]
    fn torsion_free_third_order_is_a_composition() {
        let g = make_grid(8).unwrap();
        let phi = RealField::from_fn(&g, |_, y, _| (2.0 * PI * y).sin());
        let zero = ComplexField::zeros(&g);
        let p1 = paneitz_third(&phi, &zero).unwrap();
        let composed = z1(&z1(&z1bar(&phi)));
        assert_eq!(p1.values(), composed.values());
    }

    #[test]
    fn sin_x_is_not_pluriharmonic() {
        let g = make_grid(8).unwrap();
        let phi = RealField::from_fn(&g, |x, _, _| (2.0 * PI * x).sin());
        assert!(pluriharmonic_residual(&phi) > 1.0);
    }

    #[test]
    fn self_adjoint_on_random_fields() {
        let g = make_grid(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi = testfields::random_smooth_real(&g, &mut rng, 1.0);
        let psi = testfields::random_smooth_real(&g, &mut rng, 1.0);
        let a = testfields::random_smooth_complex(&g, &mut rng, 0.5);
        let d = paneitz_diagnostics(&phi, &psi, &a).unwrap();
        assert!(d.self_adjoint_rel_err < 1e-8, "{d:?}");
        assert!(d.ibp_rel_err < 1e-8, "{d:?}");
        assert!(d.ibp_lhs_imag.abs() < 1e-8 * d.ibp_lhs.abs().max(1.0));
    }

    #[test]
    fn output_is_real() {
        let g = make_grid(6).unwrap();
        let phi = RealField::from_fn(&g, |x, y, _| (2.0 * PI * x).cos() * (2.0 * PI * y).sin());
        let a = ComplexField::from_fn(&g, |x, _, _| Complex64::new(x.sin(), 0.3));
        assert!(paneitz_fourth(&phi, &a).is_ok());
    }
}
