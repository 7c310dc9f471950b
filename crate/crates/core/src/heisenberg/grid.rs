use std::sync::Arc;

use super::FieldError;

/// Unit right translations generating the lattice stencil.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Translation {
    PlusX,
    MinusX,
    PlusY,
    MinusY,
    PlusT,
    MinusT,
}

impl Translation {
    pub const ALL: [Translation; 6] = [
        Translation::PlusX,
        Translation::MinusX,
        Translation::PlusY,
        Translation::MinusY,
        Translation::PlusT,
        Translation::MinusT,
    ];

    fn slot(self) -> usize {
        self as usize
    }
}

/// Lattice on the compact Heisenberg nilmanifold `Γ\H` with `N × N × N²` points.
///
/// Coordinates are `x = k_x/N`, `y = k_y/N`, `t = k_t/N²`, the group law is
/// `(a,b,c)·(x,y,t) = (a+x, b+y, c+t+a·y)` and `Γ` is the integer lattice acting
/// on the left. Left-invariant frame: `X = ∂x`, `Y = ∂y + x∂t`, `T = ∂t`, with
/// `θ = dt − x dy`, `θ¹ = (dx − i dy)/√2` and `Z₁ = (X + iY)/√2`, so that
/// `dθ = iθ¹∧θ¹̄`.
///
/// Right translation by `(0,h,0)` shifts `t` by `x·h = k_x/N²`, a whole number
/// of `t`-steps, and leaving the fundamental domain in `x` twists `t` by `−y`.
/// Every stencil neighbour is therefore an exact lattice point.
#[derive(Debug)]
pub struct HeisenbergGrid {
    n: usize,
    neighbours: [Vec<u32>; 6],
}

/// Builds the lattice for an even `N ≥ 4`.
pub fn make_grid(n: usize) -> Result<Arc<HeisenbergGrid>, FieldError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(FieldError::BadSize(n));
    }
    // u32 neighbour tables
    if n > 1024 {
        return Err(FieldError::BadSize(n));
    }
    let mut grid = HeisenbergGrid { n, neighbours: Default::default() };
    let len = grid.len();
    for tr in Translation::ALL {
        let mut table = Vec::with_capacity(len);
        for idx in 0..len {
            let (kx, ky, kt) = grid.coords(idx);
            let (kx, ky, kt) = (kx as i64, ky as i64, kt as i64);
            let target = match tr {
                Translation::PlusX => grid.resolve(kx + 1, ky, kt),
                Translation::MinusX => grid.resolve(kx - 1, ky, kt),
                Translation::PlusY => grid.resolve(kx, ky + 1, kt + kx),
                Translation::MinusY => grid.resolve(kx, ky - 1, kt - kx),
                Translation::PlusT => grid.resolve(kx, ky, kt + 1),
                Translation::MinusT => grid.resolve(kx, ky, kt - 1),
            };
            table.push(target as u32);
        }
        grid.neighbours[tr.slot()] = table;
    }
    Ok(Arc::new(grid))
}

impl HeisenbergGrid {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nt(&self) -> usize {
        self.n * self.n
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.nt()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Spacing in `x` and `y`.
    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Spacing in `t`.
    pub fn ht(&self) -> f64 {
        1.0 / self.nt() as f64
    }

    /// Uniform volume weight `h·h·h_t`; the total volume is 1.
    pub fn cell_volume(&self) -> f64 {
        self.h() * self.h() * self.ht()
    }

    /// Linear index with `k_t` fastest.
    pub fn index(&self, kx: usize, ky: usize, kt: usize) -> usize {
        debug_assert!(kx < self.n && ky < self.n && kt < self.nt());
        (kx * self.n + ky) * self.nt() + kt
    }

    pub fn coords(&self, idx: usize) -> (usize, usize, usize) {
        let nt = self.nt();
        let kt = idx % nt;
        let rest = idx / nt;
        (rest / self.n, rest % self.n, kt)
    }

    /// Resolves an arbitrary integer lattice triple to its representative in
    /// the fundamental domain: `(k_x + qN, k_y, k_t) ~ (k_x, k_y, k_t − q·k_y·N)`,
    /// plain periodicity in `k_y` (period `N`) and `k_t` (period `N²`).
    pub fn resolve(&self, kx: i64, ky: i64, kt: i64) -> usize {
        let n = self.n as i64;
        let nt = self.nt() as i64;
        let q = kx.div_euclid(n);
        let kx = kx.rem_euclid(n);
        let ky = ky.rem_euclid(n);
        let kt = (kt - q * ky * n).rem_euclid(nt);
        self.index(kx as usize, ky as usize, kt as usize)
    }

    /// Coordinates `(x, y, t)` of a lattice point in the fundamental domain.
    pub fn point(&self, idx: usize) -> (f64, f64, f64) {
        let (kx, ky, kt) = self.coords(idx);
        (kx as f64 * self.h(), ky as f64 * self.h(), kt as f64 * self.ht())
    }

    #[inline]
    pub fn neighbour(&self, idx: usize, tr: Translation) -> usize {
        self.neighbours[tr.slot()][idx] as usize
    }

    pub(crate) fn table(&self, tr: Translation) -> &[u32] {
        &self.neighbours[tr.slot()]
    }
}

impl PartialEq for HeisenbergGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_and_weights() {
        let g = make_grid(4).unwrap();
        assert_eq!(g.len(), 256);
        assert!((g.cell_volume() * g.len() as f64 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(make_grid(3), Err(FieldError::BadSize(3))));
        assert!(matches!(make_grid(2), Err(FieldError::BadSize(2))));
        assert!(matches!(make_grid(7), Err(FieldError::BadSize(7))));
    }

    #[test]
    fn twisted_wrap() {
        let n = 4;
        let g = make_grid(n).unwrap();
        let nt = (n * n) as i64;
        let expected = g.index(0, 1, (0 - n as i64).rem_euclid(nt) as usize);
        assert_eq!(g.resolve(n as i64, 1, 0), expected);
        assert_eq!(g.resolve(-1, 2, 3), g.index(3, 2, 3 + 2 * n));
        assert_eq!(g.resolve(1, n as i64 + 1, nt + 2), g.index(1, 1, 2));
    }

    #[test]
    fn translations_are_bijections_and_inverse() {
        let g = make_grid(6).unwrap();
        for (fwd, back) in [
            (Translation::PlusX, Translation::MinusX),
            (Translation::PlusY, Translation::MinusY),
            (Translation::PlusT, Translation::MinusT),
        ] {
            let mut seen = vec![false; g.len()];
            for idx in 0..g.len() {
                let j = g.neighbour(idx, fwd);
                assert!(!seen[j]);
                seen[j] = true;
                assert_eq!(g.neighbour(j, back), idx);
            }
        }
    }

    #[test]
    fn group_commutator_is_central_step() {
        // X Y X⁻¹ Y⁻¹ on the lattice equals a translation by h² in t, i.e. N² h_t·h² = one t-step
        let g = make_grid(8).unwrap();
        for idx in [0, 17, 301, g.len() - 1] {
            let p = g.neighbour(idx, Translation::PlusX);
            let p = g.neighbour(p, Translation::PlusY);
            let p = g.neighbour(p, Translation::MinusX);
            let p = g.neighbour(p, Translation::MinusY);
            assert_eq!(p, g.neighbour(idx, Translation::PlusT));
        }
    }
}
