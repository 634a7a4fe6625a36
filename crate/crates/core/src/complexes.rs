//! Bounded cochain complexes of coordinate spaces, chain maps and chain homotopies.
//!
//! Differentials raise degree: `∂^i : C^i -> C^{i+1}` is a `dim(i+1) x dim(i)` matrix. A
//! homotopy `Ω` between complexes `C -> D` has components `Ω^i : C^i -> D^{i-1}`, and
//! `Ω` is a null-homotopy of `T` when `T^i = ∂_D^{i-1} Ω^i + Ω^{i+1} ∂_C^i` in every degree.
//!
//! Every complex is isomorphic to a sum of one-term pieces and acyclic two-term pieces. The
//! [`Decomposition`] makes this explicit per degree with an ordered basis
//! `C^i = B^i ⊕ H^i ⊕ L^i`, where `B^i = ∂^{i-1}(L^{i-1})` are the boundaries, `H^i` is a
//! complement of the boundaries inside the cycles, and `L^i` is a complement of the cycles.
//! Because `B^{i+1}` is spanned by the images of the `L^i` columns themselves, `∂^i` is the
//! identity from the `L^i` block onto the `B^{i+1}` block in these coordinates. Chain maps
//! become block upper-triangular, and their `H` blocks are the induced maps on cohomology.
//!
//! Coordinate fibers always have trivializable Berezinian lines: the standard bases give
//! a canonical element, and a [`BerTrivialization`] records a rescaling of it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{extend_to_basis, kernel_basis, solve, Matrix};
use crate::report::ValidationReport;
use crate::scalar::Field;

/// A bounded cochain complex `C^lo -> ... -> C^hi` of coordinate spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexFiber<K> {
    lo: i32,
    dims: Vec<usize>,
    /// `differentials[k]` is `∂^{lo+k}`; there are `dims.len() - 1` of them.
    differentials: Vec<Matrix<K>>,
}

impl<K: Field> ComplexFiber<K> {
    /// Checks shapes only; use [`verify_complex`] for `∂∂ = 0`.
    pub fn new(lo: i32, dims: Vec<usize>, differentials: Vec<Matrix<K>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Precondition {
                op: "ComplexFiber::new",
                detail: "a complex needs at least one degree".into(),
            });
        }
        if differentials.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch {
                op: "ComplexFiber::new",
                detail: format!(
                    "{} degrees need {} differentials, got {}",
                    dims.len(),
                    dims.len() - 1,
                    differentials.len()
                ),
            });
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::DimensionMismatch {
                    op: "ComplexFiber::new",
                    detail: format!(
                        "differential in degree {} is {}x{}, expected {}x{}",
                        lo + k as i32,
                        d.rows(),
                        d.cols(),
                        dims[k + 1],
                        dims[k]
                    ),
                });
            }
        }
        Ok(ComplexFiber {
            lo,
            dims,
            differentials,
        })
    }

    /// All differentials zero.
    pub fn with_zero_differential(lo: i32, dims: Vec<usize>) -> Self {
        let differentials = dims.windows(2).map(|w| Matrix::zeros(w[1], w[0])).collect();
        ComplexFiber {
            lo,
            dims,
            differentials,
        }
    }

    /// A single space of dimension `dim` in `degree`.
    pub fn concentrated(degree: i32, dim: usize) -> Self {
        Self::with_zero_differential(degree, vec![dim])
    }

    /// The two-term complex `K^n --id--> K^n` in degrees `lo, lo+1`.
    pub fn acyclic_pair(lo: i32, n: usize) -> Self {
        ComplexFiber {
            lo,
            dims: vec![n, n],
            differentials: vec![Matrix::identity(n)],
        }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    /// Dimension in degree `i`; zero outside the range.
    pub fn dim(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `∂^i`, a `dim(i+1) x dim(i)` matrix (zero outside the stored range).
    pub fn differential(&self, i: i32) -> Matrix<K> {
        if i >= self.lo && i < self.hi() {
            self.differentials[(i - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.dim(i + 1), self.dim(i))
        }
    }

    /// Same complex with differentials transported along per-degree isomorphisms:
    /// `∂'^i = P^{i+1} ∂^i (P^i)^{-1}`.
    pub fn transport(&self, isos: &[Matrix<K>]) -> Result<Self> {
        let inverses = invert_all(isos, self.lo)?;
        let differentials = (0..self.differentials.len())
            .map(|k| &(&isos[k + 1] * &self.differentials[k]) * &inverses[k])
            .collect();
        ComplexFiber::new(self.lo, self.dims.clone(), differentials)
    }

    /// True when both complexes have the same dimension in every degree.
    pub fn same_graded_dims(&self, other: &Self) -> bool {
        let (lo, hi) = span(self, other);
        (lo..=hi).all(|i| self.dim(i) == other.dim(i))
    }
}

fn invert_all<K: Field>(isos: &[Matrix<K>], lo: i32) -> Result<Vec<Matrix<K>>> {
    isos.iter()
        .enumerate()
        .map(|(k, p)| {
            p.inverse()?.ok_or(Error::Singular {
                degree: lo + k as i32,
            })
        })
        .collect()
}

/// Smallest degree interval covering both complexes.
fn span<K: Field>(a: &ComplexFiber<K>, b: &ComplexFiber<K>) -> (i32, i32) {
    (a.lo().min(b.lo()), a.hi().max(b.hi()))
}

/// Passes iff shapes match and `∂^{i+1} ∂^i = 0` in every degree.
pub fn verify_complex<K: Field>(c: &ComplexFiber<K>) -> ValidationReport {
    let mut report = ValidationReport::new();
    for (k, d) in c.differentials.iter().enumerate() {
        if d.shape() != (c.dims[k + 1], c.dims[k]) {
            report.push(
                "shape",
                format!(
                    "differential in degree {} has shape {}x{}",
                    c.lo + k as i32,
                    d.rows(),
                    d.cols()
                ),
            );
        }
    }
    if !report.is_valid() {
        return report;
    }
    for i in c.lo..c.hi() - 1 {
        if !(&c.differential(i + 1) * &c.differential(i)).is_zero() {
            report.push("d∘d = 0", format!("∂^{} ∂^{} ≠ 0", i + 1, i));
        }
    }
    report
}

/// Degree-preserving maps `C -> D`, one matrix per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap<K> {
    source: Arc<ComplexFiber<K>>,
    target: Arc<ComplexFiber<K>>,
    lo: i32,
    /// Components over the union of both degree ranges.
    components: Vec<Matrix<K>>,
}

fn same_complex<K: Field>(a: &Arc<ComplexFiber<K>>, b: &Arc<ComplexFiber<K>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<K: Field> ChainMap<K> {
    /// Missing degrees are zero. Shapes are checked, the chain-map law is not.
    pub fn new(
        source: Arc<ComplexFiber<K>>,
        target: Arc<ComplexFiber<K>>,
        components: BTreeMap<i32, Matrix<K>>,
    ) -> Result<Self> {
        let (lo, hi) = span(&source, &target);
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        for i in lo..=hi {
            let shape = (target.dim(i), source.dim(i));
            match components.get(&i) {
                Some(m) if m.shape() != shape => {
                    return Err(Error::DimensionMismatch {
                        op: "ChainMap::new",
                        detail: format!(
                            "component in degree {i} is {}x{}, expected {}x{}",
                            m.rows(),
                            m.cols(),
                            shape.0,
                            shape.1
                        ),
                    })
                }
                Some(m) => out.push(m.clone()),
                None => out.push(Matrix::zeros(shape.0, shape.1)),
            }
        }
        if let Some(&i) = components.keys().find(|&&i| i < lo || i > hi) {
            return Err(Error::DimensionMismatch {
                op: "ChainMap::new",
                detail: format!("component in degree {i} lies outside both complexes"),
            });
        }
        Ok(ChainMap {
            source,
            target,
            lo,
            components: out,
        })
    }

    pub fn from_fn(
        source: Arc<ComplexFiber<K>>,
        target: Arc<ComplexFiber<K>>,
        mut f: impl FnMut(i32) -> Matrix<K>,
    ) -> Result<Self> {
        let (lo, hi) = span(&source, &target);
        Self::new(source, target, (lo..=hi).map(|i| (i, f(i))).collect())
    }

    pub fn identity(c: Arc<ComplexFiber<K>>) -> Self {
        let components = c.degrees().map(|i| Matrix::identity(c.dim(i))).collect();
        ChainMap {
            lo: c.lo(),
            source: c.clone(),
            target: c,
            components,
        }
    }

    pub fn zero(source: Arc<ComplexFiber<K>>, target: Arc<ComplexFiber<K>>) -> Self {
        Self::new(source, target, BTreeMap::new()).expect("zero map has consistent shapes")
    }

    pub fn source(&self) -> &Arc<ComplexFiber<K>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ComplexFiber<K>> {
        &self.target
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.lo + self.components.len() as i32 - 1
    }

    /// `T^i`, zero outside the stored range.
    pub fn component(&self, i: i32) -> Matrix<K> {
        if self.degrees().contains(&i) {
            self.components[(i - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.target.dim(i), self.source.dim(i))
        }
    }

    pub fn components(&self) -> BTreeMap<i32, Matrix<K>> {
        self.degrees().map(|i| (i, self.component(i))).collect()
    }

    fn check_parallel(&self, other: &Self, op: &'static str) -> Result<()> {
        if !same_complex(&self.source, &other.source) || !same_complex(&self.target, &other.target)
        {
            return Err(Error::DimensionMismatch {
                op,
                detail: "chain maps have different source or target".into(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other, "ChainMap::add")?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ChainMap {
            components,
            ..self.clone()
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other, "ChainMap::sub")?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ChainMap {
            components,
            ..self.clone()
        })
    }

    /// `self ∘ inner`, where `inner: A -> B` and `self: B -> C`.
    pub fn after(&self, inner: &Self) -> Result<Self> {
        if !same_complex(&inner.target, &self.source) {
            return Err(Error::DimensionMismatch {
                op: "ChainMap::after",
                detail: "inner target differs from outer source".into(),
            });
        }
        Self::from_fn(inner.source.clone(), self.target.clone(), |i| {
            &self.component(i) * &inner.component(i)
        })
    }

    /// True when every component is square and invertible.
    pub fn is_invertible(&self) -> bool {
        self.degrees().all(|i| {
            let m = self.component(i);
            m.is_square() && m.det().map(|d| !d.is_zero()).unwrap_or(false)
        })
    }

    /// Degreewise inverse; the inverse of an invertible chain map is a chain map.
    pub fn inverse(&self) -> Result<Self> {
        Self::new(
            self.target.clone(),
            self.source.clone(),
            self.degrees()
                .map(|i| {
                    let m = self.component(i);
                    if !m.is_square() {
                        return Err(Error::Singular { degree: i });
                    }
                    Ok((i, m.inverse()?.ok_or(Error::Singular { degree: i })?))
                })
                .collect::<Result<_>>()?,
        )
    }
}

/// Passes iff `∂_D^i T^i = T^{i+1} ∂_C^i` in every degree.
pub fn verify_chain_map<K: Field>(t: &ChainMap<K>) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (src, tgt) = (&t.source, &t.target);
    let (lo, hi) = span(src, tgt);
    for i in lo - 1..=hi {
        let left = &tgt.differential(i) * &t.component(i);
        let right = &t.component(i + 1) * &src.differential(i);
        if left != right {
            report.push("chain map", format!("∂T ≠ T∂ from degree {i} to {}", i + 1));
        }
    }
    report
}

/// Components `Ω^i : C^i -> D^{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy<K> {
    lo: i32,
    components: Vec<Matrix<K>>,
}

impl<K: Field> Homotopy<K> {
    /// The zero homotopy between two complexes.
    pub fn zero(source: &ComplexFiber<K>, target: &ComplexFiber<K>) -> Self {
        let (lo, hi) = span(source, target);
        Homotopy {
            lo,
            components: (lo..=hi + 1)
                .map(|i| Matrix::zeros(target.dim(i - 1), source.dim(i)))
                .collect(),
        }
    }

    /// Missing degrees are zero; present ones must have shape `target.dim(i-1) x source.dim(i)`.
    pub fn new(
        source: &ComplexFiber<K>,
        target: &ComplexFiber<K>,
        components: BTreeMap<i32, Matrix<K>>,
    ) -> Result<Self> {
        let mut h = Self::zero(source, target);
        for (i, m) in components {
            let shape = (target.dim(i - 1), source.dim(i));
            if m.shape() != shape {
                return Err(Error::DimensionMismatch {
                    op: "Homotopy::new",
                    detail: format!(
                        "component in degree {i} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        shape.0,
                        shape.1
                    ),
                });
            }
            if m.rows() == 0 || m.cols() == 0 {
                continue;
            }
            let k = (i - h.lo) as usize;
            h.components[k] = m;
        }
        Ok(h)
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.lo + self.components.len() as i32 - 1
    }

    /// `Ω^i`. Pass the complexes so out-of-range degrees get the right zero shape.
    pub fn component(
        &self,
        i: i32,
        source: &ComplexFiber<K>,
        target: &ComplexFiber<K>,
    ) -> Matrix<K> {
        if self.degrees().contains(&i) {
            self.components[(i - self.lo) as usize].clone()
        } else {
            Matrix::zeros(target.dim(i - 1), source.dim(i))
        }
    }

    /// Nonempty components, keyed by degree.
    pub fn components(&self) -> BTreeMap<i32, Matrix<K>> {
        self.degrees()
            .zip(&self.components)
            .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
            .map(|(i, m)| (i, m.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|m| m.is_zero())
    }

    /// The chain map `∂Ω + Ω∂`.
    pub fn boundary(
        &self,
        source: &Arc<ComplexFiber<K>>,
        target: &Arc<ComplexFiber<K>>,
    ) -> Result<ChainMap<K>> {
        ChainMap::from_fn(source.clone(), target.clone(), |i| {
            let a = &target.differential(i - 1) * &self.component(i, source, target);
            let b = &self.component(i + 1, source, target) * &source.differential(i);
            &a + &b
        })
    }
}

/// A global linear system for `Ω` with `T = ∂Ω + Ω∂`; `None` when it is inconsistent.
/// Any returned homotopy has been checked against `t` exactly.
pub fn null_homotopy<K: Field>(t: &ChainMap<K>) -> Result<Option<Homotopy<K>>> {
    let (src, tgt) = (t.source.clone(), t.target.clone());
    let (lo, hi) = span(&src, &tgt);

    // Unknowns: entries of Ω^i for i in lo..=hi+1, row-major.
    let mut var_offset = BTreeMap::new();
    let mut n_vars = 0;
    for i in lo..=hi + 1 {
        var_offset.insert(i, n_vars);
        n_vars += tgt.dim(i - 1) * src.dim(i);
    }
    // Equations: entries of T^i for i in lo..=hi.
    let mut eq_offset = BTreeMap::new();
    let mut n_eqs = 0;
    for i in lo..=hi {
        eq_offset.insert(i, n_eqs);
        n_eqs += tgt.dim(i) * src.dim(i);
    }

    let mut a: Matrix<K> = Matrix::zeros(n_eqs, n_vars);
    let mut b = Matrix::zeros(n_eqs, 1);
    for i in lo..=hi {
        let (rows, cols) = (tgt.dim(i), src.dim(i));
        let ti = t.component(i);
        let d_tgt = tgt.differential(i - 1); // rows x tgt.dim(i-1)
        let d_src = src.differential(i); // src.dim(i+1) x cols
        let prev_cols = src.dim(i);
        let next_cols = src.dim(i + 1);
        for r in 0..rows {
            for c in 0..cols {
                let eq = eq_offset[&i] + r * cols + c;
                b[(eq, 0)] = ti[(r, c)].clone();
                // (∂ Ω^i)[r, c] = Σ_k ∂[r, k] Ω^i[k, c]
                for k in 0..tgt.dim(i - 1) {
                    let coeff = &d_tgt[(r, k)];
                    if !coeff.is_zero() {
                        let var = var_offset[&i] + k * prev_cols + c;
                        a[(eq, var)] = a[(eq, var)].clone() + coeff.clone();
                    }
                }
                // (Ω^{i+1} ∂)[r, c] = Σ_k Ω^{i+1}[r, k] ∂[k, c]
                for k in 0..next_cols {
                    let coeff = &d_src[(k, c)];
                    if !coeff.is_zero() {
                        let var = var_offset[&(i + 1)] + r * next_cols + k;
                        a[(eq, var)] = a[(eq, var)].clone() + coeff.clone();
                    }
                }
            }
        }
    }

    let Some(x) = solve(&a, &b)? else {
        return Ok(None);
    };
    let mut components = BTreeMap::new();
    for i in lo..=hi + 1 {
        let (rows, cols) = (tgt.dim(i - 1), src.dim(i));
        let off = var_offset[&i];
        let data = (0..rows * cols).map(|k| x[(off + k, 0)].clone()).collect();
        components.insert(i, Matrix::from_vec(rows, cols, data)?);
    }
    let h = Homotopy::new(&src, &tgt, components)?;
    let check = h.boundary(&src, &tgt)?;
    assert_eq!(
        &check, t,
        "null-homotopy solver produced a wrong certificate"
    );
    Ok(Some(h))
}

/// A homotopy `Ω` with `f - g = ∂Ω + Ω∂`, if one exists.
pub fn are_homotopic<K: Field>(f: &ChainMap<K>, g: &ChainMap<K>) -> Result<Option<Homotopy<K>>> {
    null_homotopy(&f.try_sub(g)?)
}

/// Order in which candidate columns are scanned when choosing complements.
///
/// The decomposition is not canonical; quantities derived from it (cohomology dimensions,
/// Berezinian classes) must not depend on this choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanOrder {
    #[default]
    Natural,
    Reversed,
    /// Start at column `k mod n` and wrap around.
    Rotated(usize),
}

impl ScanOrder {
    fn permutation(self, n: usize) -> Vec<usize> {
        match self {
            ScanOrder::Natural => (0..n).collect(),
            ScanOrder::Reversed => (0..n).rev().collect(),
            ScanOrder::Rotated(k) => (0..n).map(|j| (j + k) % n.max(1)).collect(),
        }
    }
}

/// Per-degree basis `[B | H | L]` of one term of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBasis<K> {
    /// Invertible, columns ordered as boundaries, cohomology complement, cycle complement.
    pub basis: Matrix<K>,
    pub basis_inverse: Matrix<K>,
    pub boundaries: usize,
    pub cohomology: usize,
    pub lift: usize,
}

impl<K: Field> DegreeBasis<K> {
    pub fn boundary_columns(&self) -> Matrix<K> {
        self.basis.column_range(0, self.boundaries)
    }

    pub fn cohomology_columns(&self) -> Matrix<K> {
        self.basis
            .column_range(self.boundaries, self.boundaries + self.cohomology)
    }

    pub fn lift_columns(&self) -> Matrix<K> {
        self.basis
            .column_range(self.boundaries + self.cohomology, self.basis.cols())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<K> {
    lo: i32,
    degrees: Vec<DegreeBasis<K>>,
}

impl<K: Field> Decomposition<K> {
    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.lo + self.degrees.len() as i32 - 1
    }

    pub fn at(&self, i: i32) -> Option<&DegreeBasis<K>> {
        if self.degrees().contains(&i) {
            Some(&self.degrees[(i - self.lo) as usize])
        } else {
            None
        }
    }

    pub fn cohomology_dim(&self, i: i32) -> usize {
        self.at(i).map_or(0, |d| d.cohomology)
    }

    pub fn boundary_dim(&self, i: i32) -> usize {
        self.at(i).map_or(0, |d| d.boundaries)
    }

    /// Basis matrix in degree `i` (empty outside the range).
    fn basis(&self, i: i32) -> Matrix<K> {
        self.at(i).map_or(Matrix::zeros(0, 0), |d| d.basis.clone())
    }

    fn basis_inverse(&self, i: i32) -> Matrix<K> {
        self.at(i)
            .map_or(Matrix::zeros(0, 0), |d| d.basis_inverse.clone())
    }

    /// Sizes `(b, h, l)` in degree `i`.
    fn sizes(&self, i: i32) -> (usize, usize, usize) {
        self.at(i)
            .map_or((0, 0, 0), |d| (d.boundaries, d.cohomology, d.lift))
    }
}

/// Decomposition with the default scan order.
pub fn decompose<K: Field>(c: &ComplexFiber<K>) -> Result<Decomposition<K>> {
    decompose_with(c, ScanOrder::Natural)
}

pub fn decompose_with<K: Field>(c: &ComplexFiber<K>, order: ScanOrder) -> Result<Decomposition<K>> {
    if !verify_complex(c).is_valid() {
        return Err(Error::Precondition {
            op: "decompose",
            detail: "input is not a complex".into(),
        });
    }
    let mut degrees = Vec::new();
    let mut boundaries = Matrix::zeros(c.dim(c.lo()), 0);
    for i in c.degrees() {
        let n = c.dim(i);
        let d = c.differential(i);
        let kernel = kernel_basis(&d);
        let kernel = kernel.select_columns(&order.permutation(kernel.cols()));
        let cycles = extend_to_basis(&boundaries, &kernel)?;
        let ambient = Matrix::identity(n).select_columns(&order.permutation(n));
        let basis = extend_to_basis(&cycles, &ambient)?;
        let b = boundaries.cols();
        let h = cycles.cols() - b;
        let l = n - cycles.cols();
        let lift = basis.column_range(b + h, n);
        let basis_inverse = basis.inverse()?.expect("extended basis is invertible");
        degrees.push(DegreeBasis {
            basis,
            basis_inverse,
            boundaries: b,
            cohomology: h,
            lift: l,
        });
        boundaries = &d * &lift;
    }
    Ok(Decomposition {
        lo: c.lo(),
        degrees,
    })
}

/// Dimension of `H^i` for every degree of the complex.
pub fn cohomology_dims<K: Field>(c: &ComplexFiber<K>) -> Result<BTreeMap<i32, usize>> {
    let dec = decompose(c)?;
    Ok(c.degrees().map(|i| (i, dec.cohomology_dim(i))).collect())
}

/// A chain map written in decomposition coordinates on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm<K> {
    lo: i32,
    coords: Vec<Matrix<K>>,
    source_sizes: Vec<(usize, usize, usize)>,
    target_sizes: Vec<(usize, usize, usize)>,
}

impl<K: Field> BlockForm<K> {
    pub fn new(t: &ChainMap<K>, src: &Decomposition<K>, tgt: &Decomposition<K>) -> Self {
        let degrees: Vec<i32> = t.degrees().collect();
        let coords = degrees
            .iter()
            .map(|&i| &(&tgt.basis_inverse(i) * &t.component(i)) * &src.basis(i))
            .collect();
        BlockForm {
            lo: *t.degrees().start(),
            coords,
            source_sizes: degrees.iter().map(|&i| src.sizes(i)).collect(),
            target_sizes: degrees.iter().map(|&i| tgt.sizes(i)).collect(),
        }
    }

    fn index(&self, i: i32) -> Option<usize> {
        let k = i - self.lo;
        (k >= 0 && (k as usize) < self.coords.len()).then_some(k as usize)
    }

    /// Full coordinate matrix in degree `i`.
    pub fn coords(&self, i: i32) -> Option<&Matrix<K>> {
        self.index(i).map(|k| &self.coords[k])
    }

    fn diagonal_block(&self, i: i32, which: usize) -> Matrix<K> {
        let Some(k) = self.index(i) else {
            return Matrix::zeros(0, 0);
        };
        let (sb, sh, sl) = self.source_sizes[k];
        let (tb, th, tl) = self.target_sizes[k];
        let (r0, r1, c0, c1) = match which {
            0 => (0, tb, 0, sb),
            1 => (tb, tb + th, sb, sb + sh),
            _ => (tb + th, tb + th + tl, sb + sh, sb + sh + sl),
        };
        self.coords[k].submatrix(r0, r1, c0, c1)
    }

    /// Boundary block `f^{B^i}`.
    pub fn boundary_block(&self, i: i32) -> Matrix<K> {
        self.diagonal_block(i, 0)
    }

    /// Induced map on cohomology `f^{H^i}`.
    pub fn cohomology_block(&self, i: i32) -> Matrix<K> {
        self.diagonal_block(i, 1)
    }

    /// Block on the cycle complements, which equals `f^{B^{i+1}}`.
    pub fn lift_block(&self, i: i32) -> Matrix<K> {
        self.diagonal_block(i, 2)
    }

    /// Blocks below the diagonal are zero in every degree.
    pub fn is_upper_triangular(&self) -> bool {
        self.coords.iter().enumerate().all(|(k, m)| {
            let (sb, sh, _) = self.source_sizes[k];
            let (tb, th, _) = self.target_sizes[k];
            (0..m.rows()).all(|r| {
                let row_block = if r < tb {
                    0
                } else if r < tb + th {
                    1
                } else {
                    2
                };
                (0..m.cols()).all(|c| {
                    let col_block = if c < sb {
                        0
                    } else if c < sb + sh {
                        1
                    } else {
                        2
                    };
                    row_block <= col_block || m[(r, c)].is_zero()
                })
            })
        })
    }
}

/// Outcome of [`is_homotopy_equivalence`], with the induced cohomology maps as witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceCheck<K> {
    pub is_equivalence: bool,
    /// `f^{H^i}` in decomposition coordinates.
    pub cohomology_maps: BTreeMap<i32, Matrix<K>>,
    /// First degree where the induced map fails to be invertible.
    pub failing_degree: Option<i32>,
}

/// Decides whether `f` induces isomorphisms on all cohomology.
pub fn is_homotopy_equivalence<K: Field>(f: &ChainMap<K>) -> Result<EquivalenceCheck<K>> {
    is_homotopy_equivalence_with(f, ScanOrder::Natural)
}

pub fn is_homotopy_equivalence_with<K: Field>(
    f: &ChainMap<K>,
    order: ScanOrder,
) -> Result<EquivalenceCheck<K>> {
    let src = decompose_with(f.source(), order)?;
    let tgt = decompose_with(f.target(), order)?;
    let blocks = BlockForm::new(f, &src, &tgt);
    let mut cohomology_maps = BTreeMap::new();
    let mut failing_degree = None;
    for i in f.degrees() {
        let h = blocks.cohomology_block(i);
        let ok = h.is_square() && !h.det()?.is_zero();
        if !ok && failing_degree.is_none() {
            failing_degree = Some(i);
        }
        cohomology_maps.insert(i, h);
    }
    Ok(EquivalenceCheck {
        is_equivalence: failing_degree.is_none(),
        cohomology_maps,
        failing_degree,
    })
}

/// An invertible chain map together with a homotopy `Φ` from the original map:
/// `map - original = ∂Φ + Φ∂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replacement<K> {
    pub map: ChainMap<K>,
    pub homotopy: Homotopy<K>,
}

fn require_equal_dims<K: Field>(f: &ChainMap<K>) -> Result<()> {
    for i in f.degrees() {
        let (s, t) = (f.source().dim(i), f.target().dim(i));
        if s != t {
            return Err(Error::GradedDimMismatch {
                degree: i,
                source_dim: s,
                target_dim: t,
            });
        }
    }
    Ok(())
}

/// Replaces a homotopy equivalence between complexes of equal graded dimension by a
/// homotopic chain isomorphism. In decomposition coordinates the correction adds
/// `I - f^{B^i}` to every boundary block, so all boundary and lift blocks of the result
/// are identities and the cohomology blocks are untouched.
pub fn invertible_replacement<K: Field>(f: &ChainMap<K>) -> Result<Replacement<K>> {
    invertible_replacement_with(f, ScanOrder::Natural)
}

pub fn invertible_replacement_with<K: Field>(
    f: &ChainMap<K>,
    order: ScanOrder,
) -> Result<Replacement<K>> {
    require_equal_dims(f)?;
    let (src_c, tgt_c) = (f.source().clone(), f.target().clone());
    let src = decompose_with(&src_c, order)?;
    let tgt = decompose_with(&tgt_c, order)?;
    let blocks = BlockForm::new(f, &src, &tgt);
    for i in f.degrees() {
        let h = blocks.cohomology_block(i);
        if !h.is_square() || h.det()?.is_zero() {
            return Err(Error::NotHomotopyEquivalence { degree: i });
        }
    }

    // Φ^i sends the boundary block of C^i to the lift block of D^{i-1}.
    let mut phi = BTreeMap::new();
    for i in f.degrees() {
        let (sb, _, _) = src.sizes(i);
        let (tb, _, _) = tgt.sizes(i);
        debug_assert_eq!(
            sb, tb,
            "equal graded and cohomology dims force equal boundaries"
        );
        if sb == 0 {
            continue;
        }
        let correction = &Matrix::identity(sb) - &blocks.boundary_block(i);
        let rows = tgt_c.dim(i - 1);
        let cols = src_c.dim(i);
        let (pb, ph, pl) = tgt.sizes(i - 1);
        debug_assert_eq!(pl, sb);
        let mut coords = Matrix::zeros(rows, cols);
        coords.set_block(pb + ph, 0, &correction);
        let standard = &(&tgt.basis(i - 1) * &coords) * &src.basis_inverse(i);
        phi.insert(i, standard);
    }
    let homotopy = Homotopy::new(&src_c, &tgt_c, phi)?;
    let map = f.try_add(&homotopy.boundary(&src_c, &tgt_c)?)?;
    assert!(
        map.is_invertible(),
        "corrected map must be invertible in every degree"
    );
    Ok(Replacement { map, homotopy })
}

/// Nonzero rescaling of the standard Berezinian element of a coordinate fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BerTrivialization<K>(K);

impl<K: Field> BerTrivialization<K> {
    pub fn new(scale: K) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::ZeroValue("Berezinian trivialization scale".into()));
        }
        Ok(BerTrivialization(scale))
    }

    /// The element determined by the coordinate bases.
    pub fn standard() -> Self {
        BerTrivialization(K::one())
    }

    pub fn scale(&self) -> &K {
        &self.0
    }
}

/// Graded determinant of an invertible chain map: even-degree determinants over odd-degree
/// ones, rescaled by `σ_src / σ_tgt`.
pub fn berezinian<K: Field>(
    t: &ChainMap<K>,
    sigma_src: &BerTrivialization<K>,
    sigma_tgt: &BerTrivialization<K>,
) -> Result<K> {
    let mut value = sigma_src.scale().clone() / sigma_tgt.scale().clone();
    for i in t.degrees() {
        let m = t.component(i);
        if !m.is_square() {
            return Err(Error::Singular { degree: i });
        }
        let d = m.det()?;
        if d.is_zero() {
            return Err(Error::Singular { degree: i });
        }
        value = if i.rem_euclid(2) == 0 {
            value * d
        } else {
            value / d
        };
    }
    Ok(value)
}

/// Berezinian of any homotopy equivalence, through its invertible replacement.
pub fn berezinian_class<K: Field>(
    t: &ChainMap<K>,
    sigma_src: &BerTrivialization<K>,
    sigma_tgt: &BerTrivialization<K>,
) -> Result<K> {
    berezinian_class_with(t, sigma_src, sigma_tgt, ScanOrder::Natural)
}

pub fn berezinian_class_with<K: Field>(
    t: &ChainMap<K>,
    sigma_src: &BerTrivialization<K>,
    sigma_tgt: &BerTrivialization<K>,
    order: ScanOrder,
) -> Result<K> {
    let replacement = invertible_replacement_with(t, order)?;
    berezinian(&replacement.map, sigma_src, sigma_tgt)
}
