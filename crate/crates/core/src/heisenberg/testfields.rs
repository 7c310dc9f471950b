//! Smooth fields on the nilmanifold used by the CLI presets, the self-test and
//! the convergence studies.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use super::field::{ComplexField, RealField};
use super::grid::HeisenbergGrid;

/// Theta function with central frequency `m ≥ 1`:
/// `F_m(x,y,t) = e^{2πimt} Σ_n exp(−πm(x+n)²) e^{2πimny}`.
///
/// It is invariant under the left lattice action, and it satisfies
/// `Z₁̄F_m = 0` in the continuum, so `Re F_m` is CR-pluriharmonic.
pub fn theta_value(m: u32, x: f64, y: f64, t: f64) -> Complex64 {
    let m = m as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in -8i32..=8 {
        let u = x + n as f64;
        let gauss = (-PI * m * u * u).exp();
        if gauss < 1e-300 {
            continue;
        }
        sum += Complex64::from_polar(gauss, 2.0 * PI * m * n as f64 * y);
    }
    Complex64::from_polar(1.0, 2.0 * PI * m * t) * sum
}

pub fn theta_cr_function(grid: &Arc<HeisenbergGrid>, m: u32) -> ComplexField {
    ComplexField::from_fn(grid, |x, y, t| theta_value(m, x, y, t))
}

/// One term `amp · cos(2π(jx + ky) + phase)` of a trigonometric polynomial in `(x, y)`.
#[derive(Clone, Copy, Debug)]
pub struct TrigTerm {
    pub amp: f64,
    pub jx: i32,
    pub ky: i32,
    pub phase: f64,
}

impl TrigTerm {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.amp * (2.0 * PI * (self.jx as f64 * x + self.ky as f64 * y) + self.phase).cos()
    }

    /// `4π²(j² + k²)`, the continuum eigenvalue of `−Δ` on this mode.
    pub fn laplace_eigenvalue(&self) -> f64 {
        4.0 * PI * PI * (self.jx * self.jx + self.ky * self.ky) as f64
    }
}

pub fn trig_polynomial(terms: &[TrigTerm], x: f64, y: f64) -> f64 {
    terms.iter().map(|t| t.eval(x, y)).sum()
}

pub fn trig_field(grid: &Arc<HeisenbergGrid>, terms: &[TrigTerm]) -> RealField {
    RealField::from_fn(grid, |x, y, _| trig_polynomial(terms, x, y))
}

pub fn random_trig_terms<R: Rng>(rng: &mut R, count: usize, max_freq: i32, amplitude: f64) -> Vec<TrigTerm> {
    (0..count)
        .map(|_| TrigTerm {
            amp: amplitude * rng.gen_range(-1.0..1.0),
            jx: rng.gen_range(-max_freq..=max_freq),
            ky: rng.gen_range(-max_freq..=max_freq),
            phase: rng.gen_range(0.0..2.0 * PI),
        })
        .collect()
}

/// Random smooth real field: a low-frequency trigonometric polynomial in
/// `(x, y)` plus a theta-function component that varies along the fibres.
pub fn random_smooth_real<R: Rng>(grid: &Arc<HeisenbergGrid>, rng: &mut R, amplitude: f64) -> RealField {
    let terms = random_trig_terms(rng, 4, 2, amplitude);
    let c = Complex64::from_polar(amplitude * rng.gen_range(0.0..1.0), rng.gen_range(0.0..2.0 * PI));
    RealField::from_fn(grid, |x, y, t| trig_polynomial(&terms, x, y) + (c * theta_value(1, x, y, t)).re)
}

pub fn random_smooth_complex<R: Rng>(grid: &Arc<HeisenbergGrid>, rng: &mut R, amplitude: f64) -> ComplexField {
    let re = random_smooth_real(grid, rng, amplitude);
    let im = random_smooth_real(grid, rng, amplitude);
    re.zip_map(&im, Complex64::new)
}

/// Random smooth field with values in `[0, 2·amplitude]`.
pub fn random_nonnegative<R: Rng>(grid: &Arc<HeisenbergGrid>, rng: &mut R, amplitude: f64) -> RealField {
    let f = random_smooth_real(grid, rng, 1.0);
    let (lo, hi) = (f.min(), f.max());
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    f.map(|v| 2.0 * amplitude * (v - lo) / span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{make_grid, z1bar};

    #[test]
    fn theta_is_lattice_invariant() {
        for &(x, y, t) in &[(0.1, 0.2, 0.3), (0.7, 0.9, 0.05)] {
            let f = theta_value(1, x, y, t);
            assert!((theta_value(1, x + 1.0, y, t + y) - f).norm() < 1e-12);
            assert!((theta_value(1, x, y + 1.0, t) - f).norm() < 1e-12);
            assert!((theta_value(1, x, y, t + 1.0) - f).norm() < 1e-12);
            assert!((theta_value(2, x + 1.0, y, t + y) - theta_value(2, x, y, t)).norm() < 1e-12);
        }
    }

    #[test]
    fn theta_is_discretely_nearly_cr() {
        let mut errs = Vec::new();
        for n in [8, 16, 32] {
            let g = make_grid(n).unwrap();
            let f = theta_cr_function(&g, 1);
            errs.push(z1bar(&f).sup_norm() / f.sup_norm());
        }
        let orders = crate::numeric::observed_orders(&errs);
        assert!(orders.iter().all(|&o| o > 1.9), "{errs:?} {orders:?}");
    }

    #[test]
    fn nonnegative_fields_are_nonnegative() {
        use rand::SeedableRng;
        let g = make_grid(4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let a = random_nonnegative(&g, &mut rng, 0.5);
        assert!(a.min() >= 0.0 && a.max() <= 1.0 + 1e-15);
    }
}
