//! Frame derivatives along exact right group translations.
//!
//! On the flat model the pseudohermitian connection form vanishes, so
//! covariant derivatives of functions are iterated frame derivatives.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::field::{ComplexField, Field, RealField, Scalar};
use super::grid::Translation;
use crate::numeric::exact_sum;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameDirection {
    X,
    Y,
    T,
    Z1,
    Z1bar,
}

fn centered<T: Scalar>(f: &Field<T>, plus: Translation, minus: Translation, spacing: f64) -> Field<T> {
    let grid = f.grid();
    let fwd = grid.table(plus);
    let back = grid.table(minus);
    let v = f.values();
    let scale = 1.0 / (2.0 * spacing);
    let out = (0..v.len()).map(|i| (v[fwd[i] as usize] - v[back[i] as usize]) * scale).collect();
    Field::new(grid.clone(), out).expect("same length")
}

/// `(f(p·(h,0,0)) − f(p·(−h,0,0))) / 2h`
pub fn d_x<T: Scalar>(f: &Field<T>) -> Field<T> {
    let h = f.grid().h();
    centered(f, Translation::PlusX, Translation::MinusX, h)
}

/// Centered difference along `p·(0,±h,0) = (x, y±h, t±x·h)`.
pub fn d_y<T: Scalar>(f: &Field<T>) -> Field<T> {
    let h = f.grid().h();
    centered(f, Translation::PlusY, Translation::MinusY, h)
}

pub fn d_t<T: Scalar>(f: &Field<T>) -> Field<T> {
    let ht = f.grid().ht();
    centered(f, Translation::PlusT, Translation::MinusT, ht)
}

/// `Z₁ f = (D_X f + i D_Y f)/√2`
pub fn z1<T: Scalar>(f: &Field<T>) -> ComplexField {
    let dx = d_x(f).to_complex();
    let dy = d_y(f).to_complex();
    dx.zip_map(&dy, |a, b| (a + I * b) * FRAC_1_SQRT_2)
}

/// `Z₁̄ f = (D_X f − i D_Y f)/√2`
pub fn z1bar<T: Scalar>(f: &Field<T>) -> ComplexField {
    let dx = d_x(f).to_complex();
    let dy = d_y(f).to_complex();
    dx.zip_map(&dy, |a, b| (a - I * b) * FRAC_1_SQRT_2)
}

/// Frame derivative in any of the five directions, returned as a complex field.
pub fn frame_derivative<T: Scalar>(f: &Field<T>, dir: FrameDirection) -> ComplexField {
    match dir {
        FrameDirection::X => d_x(f).to_complex(),
        FrameDirection::Y => d_y(f).to_complex(),
        FrameDirection::T => d_t(f).to_complex(),
        FrameDirection::Z1 => z1(f),
        FrameDirection::Z1bar => z1bar(f),
    }
}

/// `Δ_b f = (D²_X + D²_Y) f` with second centered differences along the group
/// translations. Written as a sum of neighbour differences so that an explicit
/// heat step is a convex combination even after rounding.
pub fn sublaplacian<T: Scalar>(f: &Field<T>) -> Field<T> {
    let grid = f.grid();
    let px = grid.table(Translation::PlusX);
    let mx = grid.table(Translation::MinusX);
    let py = grid.table(Translation::PlusY);
    let my = grid.table(Translation::MinusY);
    let v = f.values();
    let inv_h2 = 1.0 / (grid.h() * grid.h());
    let out = (0..v.len())
        .map(|i| {
            let c = v[i];
            let s =
                (v[px[i] as usize] - c) + (v[mx[i] as usize] - c) + (v[py[i] as usize] - c) + (v[my[i] as usize] - c);
            s * inv_h2
        })
        .collect();
    Field::new(grid.clone(), out).expect("same length")
}

/// `|∇_b f|² = (D_X f)² + (D_Y f)²` for real `f` (Levi metric with `h₁₁̄ = 1`).
pub fn horizontal_gradient_sq(f: &RealField) -> RealField {
    d_x(f).zip_map(&d_y(f), |a, b| a * a + b * b)
}

/// `∫ (D_T f) dμ` in telescoped form: the translated and untranslated values
/// are the same multiset, each summed with a correctly rounded sum, so the
/// result is exactly zero on every field.
pub fn integral_of_t_derivative(f: &RealField) -> f64 {
    let grid = f.grid();
    let v = f.values();
    let fwd = exact_sum(grid.table(Translation::PlusT).iter().map(|&j| v[j as usize]));
    let back = exact_sum(grid.table(Translation::MinusT).iter().map(|&j| v[j as usize]));
    (fwd - back) * grid.cell_volume() / (2.0 * grid.ht())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::make_grid;
    use std::f64::consts::PI;

    #[test]
    fn constants_are_annihilated() {
        let g = make_grid(6).unwrap();
        let c = RealField::constant(&g, 2.5);
        for dir in [FrameDirection::X, FrameDirection::Y, FrameDirection::T, FrameDirection::Z1, FrameDirection::Z1bar]
        {
            assert_eq!(frame_derivative(&c, dir).sup_norm(), 0.0);
        }
        assert_eq!(sublaplacian(&c).sup_norm(), 0.0);
    }

    #[test]
    fn sin_y_exact_difference() {
        let g = make_grid(8).unwrap();
        let h = g.h();
        let f = RealField::from_fn(&g, |_, y, _| (2.0 * PI * y).sin());
        assert_eq!(d_x(&f).sup_norm(), 0.0);
        let dy = d_y(&f);
        for idx in 0..g.len() {
            let (_, y, _) = g.point(idx);
            let expected = (2.0 * PI * y).cos() * (2.0 * PI * h).sin() / h;
            assert!((dy.get(idx) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn sin_x_discrete_eigenvalue() {
        let g = make_grid(8).unwrap();
        let h = g.h();
        let f = RealField::from_fn(&g, |x, _, _| (2.0 * PI * x).sin());
        let lap = sublaplacian(&f);
        let lambda = -(2.0 / (h * h)) * (1.0 - (2.0 * PI * h).cos());
        for idx in 0..g.len() {
            assert!((lap.get(idx) - lambda * f.get(idx)).abs() < 1e-11);
        }
    }

    #[test]
    fn y_derivative_sees_the_t_shear() {
        // f = sin(2πN t) is lattice-compatible; Y f = x·∂t f exactly up to the t-difference
        let g = make_grid(8).unwrap();
        let n = g.n() as f64;
        let h = g.h();
        let f = RealField::from_fn(&g, |_, _, t| (2.0 * PI * n * t).sin());
        let dy = d_y(&f);
        for idx in 0..g.len() {
            let (x, _, t) = g.point(idx);
            let expected = (2.0 * PI * n * x * h).sin() / h * (2.0 * PI * n * t).cos();
            assert!((dy.get(idx) - expected).abs() < 1e-9);
        }
        let dt = d_t(&f);
        let ht = g.ht();
        for idx in 0..g.len() {
            let (_, _, t) = g.point(idx);
            let expected = (2.0 * PI * n * ht).sin() / ht * (2.0 * PI * n * t).cos();
            assert!((dt.get(idx) - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn z1_of_conjugate_is_conjugate_of_z1bar() {
        let g = make_grid(4).unwrap();
        let f = ComplexField::from_fn(&g, |x, y, t| Complex64::new((x * 3.0).sin() + t, y * x));
        let lhs = z1(&f.conj());
        let rhs = z1bar(&f).conj();
        assert_eq!(lhs.values(), rhs.values());
    }

    #[test]
    fn t_derivative_integrates_to_exact_zero() {
        let g = make_grid(6).unwrap();
        let f = RealField::from_fn(&g, |x, y, t| (x * 7.1).exp() * (y + t * t).cos());
        assert_eq!(integral_of_t_derivative(&f), 0.0);
    }
}
