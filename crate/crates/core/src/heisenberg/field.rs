use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::HeisenbergGrid;
use super::FieldError;
use crate::numeric::{pairwise_sum, pairwise_sum_complex};

/// Value type stored in a [`Field`].
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn to_complex(self) -> Complex64;
    fn conj(self) -> Self;
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn conj(self) -> Self {
        self
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

/// Lattice function on a [`HeisenbergGrid`]. Values are stored once per point of
/// the fundamental domain, so every lookup through the twisted wrap is
/// single-valued by construction.
#[derive(Clone, Debug)]
pub struct Field<T> {
    grid: Arc<HeisenbergGrid>,
    values: Vec<T>,
}

pub type RealField = Field<f64>;
pub type ComplexField = Field<Complex64>;

impl<T: Scalar> Field<T> {
    pub fn new(grid: Arc<HeisenbergGrid>, values: Vec<T>) -> Result<Self, FieldError> {
        if values.len() != grid.len() {
            return Err(FieldError::LengthMismatch { expected: grid.len(), found: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: &Arc<HeisenbergGrid>, value: T) -> Self {
        Self { grid: grid.clone(), values: vec![value; grid.len()] }
    }

    pub fn zeros(grid: &Arc<HeisenbergGrid>) -> Self {
        Self::constant(grid, T::zero())
    }

    /// Samples `f(x, y, t)` at every lattice point of the fundamental domain.
    pub fn from_fn(grid: &Arc<HeisenbergGrid>, f: impl Fn(f64, f64, f64) -> T) -> Self {
        let values = (0..grid.len())
            .map(|idx| {
                let (x, y, t) = grid.point(idx);
                f(x, y, t)
            })
            .collect();
        Self { grid: grid.clone(), values }
    }

    pub fn grid(&self) -> &Arc<HeisenbergGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, idx: usize) -> T {
        self.values[idx]
    }

    /// Value at an arbitrary integer lattice triple, resolved through the wrap.
    pub fn at(&self, kx: i64, ky: i64, kt: i64) -> T {
        self.values[self.grid.resolve(kx, ky, kt)]
    }

    pub fn same_grid<U>(&self, other: &Field<U>) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    pub fn check_grid<U>(&self, other: &Field<U>) -> Result<(), FieldError> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(FieldError::GridMismatch { left: self.grid.n(), right: other.grid.n() })
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Field<U> {
        Field { grid: self.grid.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Pointwise combination. Panics if the grids differ; use [`Field::check_grid`]
    /// first on user input.
    pub fn zip_map<U: Scalar, V: Scalar>(&self, other: &Field<U>, f: impl Fn(T, U) -> V) -> Field<V> {
        assert!(self.same_grid(other), "fields live on different grids");
        Field {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn to_complex(&self) -> ComplexField {
        self.map(Scalar::to_complex)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.modulus()))
    }

    pub fn l2_norm(&self) -> f64 {
        let w = self.grid.cell_volume();
        let sq: Vec<f64> = self.values.iter().map(|v| v.modulus() * v.modulus() * w).collect();
        pairwise_sum(&sq).sqrt()
    }
}

impl<T: Scalar> Add for &Field<T> {
    type Output = Field<T>;
    fn add(self, rhs: Self) -> Field<T> {
        self.zip_map(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &Field<T> {
    type Output = Field<T>;
    fn sub(self, rhs: Self) -> Field<T> {
        self.zip_map(rhs, |a, b| a - b)
    }
}

impl RealField {
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `∫ f dμ` with pairwise summation in index order.
    pub fn integral(&self) -> f64 {
        let w = self.grid.cell_volume();
        let weighted: Vec<f64> = self.values.iter().map(|v| v * w).collect();
        pairwise_sum(&weighted)
    }

    pub fn mean(&self) -> f64 {
        self.integral()
    }

    pub fn mul(&self, other: &RealField) -> RealField {
        self.zip_map(other, |a, b| a * b)
    }
}

impl ComplexField {
    pub fn re(&self) -> RealField {
        self.map(|z| z.re)
    }

    pub fn im(&self) -> RealField {
        self.map(|z| z.im)
    }

    pub fn norm_sqr(&self) -> RealField {
        self.map(|z| z.norm_sqr())
    }

    pub fn modulus_field(&self) -> RealField {
        self.map(|z| z.norm())
    }

    pub fn integral(&self) -> Complex64 {
        let w = self.grid.cell_volume();
        let weighted: Vec<Complex64> = self.values.iter().map(|v| v * w).collect();
        pairwise_sum_complex(&weighted)
    }

    pub fn mul(&self, other: &ComplexField) -> ComplexField {
        self.zip_map(other, |a, b| a * b)
    }

    pub fn mul_scalar(&self, s: Complex64) -> ComplexField {
        self.map(|z| z * s)
    }
}

/// `⟨f, g⟩ = Σ f·conj(g)·h²h_t`, reduced by index-ascending pairwise summation.
pub fn inner_product<T: Scalar, U: Scalar>(f: &Field<T>, g: &Field<U>) -> Result<Complex64, FieldError> {
    f.check_grid(g)?;
    let w = f.grid.cell_volume();
    let terms: Vec<Complex64> =
        f.values.iter().zip(&g.values).map(|(&a, &b)| a.to_complex() * b.to_complex().conj() * w).collect();
    Ok(pairwise_sum_complex(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::make_grid;

    #[test]
    fn unit_volume() {
        let g = make_grid(8).unwrap();
        let one = RealField::constant(&g, 1.0);
        let ip = inner_product(&one, &one).unwrap();
        assert!((ip.re - 1.0).abs() < 1e-14 && ip.im == 0.0);
    }

    #[test]
    fn hermitian_symmetry() {
        let g = make_grid(4).unwrap();
        let f = ComplexField::from_fn(&g, |x, y, t| Complex64::new(x + t, y * y));
        let h = ComplexField::from_fn(&g, |x, y, _| Complex64::new(y.cos(), x - 0.3));
        let a = inner_product(&f, &h).unwrap();
        let b = inner_product(&h, &f).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let a = RealField::zeros(&make_grid(4).unwrap());
        let b = RealField::zeros(&make_grid(6).unwrap());
        assert!(matches!(inner_product(&a, &b), Err(FieldError::GridMismatch { left: 4, right: 6 })));
    }
}
