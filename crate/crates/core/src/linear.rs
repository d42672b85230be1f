//! Exact rational matrices between tensor powers of finite-dimensional spaces.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A tensor product `V_1 ⊗ … ⊗ V_k` described by its factor dimensions.
///
/// Basis tensors are ordered lexicographically by their index tuples, last
/// factor fastest. Arity 0 is the scalar line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorSpace {
    factors: Vec<usize>,
}

impl TensorSpace {
    /// `k`-fold tensor power of an `n`-dimensional space.
    pub fn power(n: usize, k: usize) -> Self {
        assert!(n > 0, "base dimension must be positive");
        Self {
            factors: vec![n; k],
        }
    }

    pub fn from_factors(factors: Vec<usize>) -> Self {
        assert!(
            factors.iter().all(|&d| d > 0),
            "factor dimensions must be positive"
        );
        Self { factors }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().product()
    }

    /// The common factor dimension, if all factors agree.
    pub fn base_dim(&self) -> Option<usize> {
        let first = *self.factors.first()?;
        self.factors.iter().all(|&d| d == first).then_some(first)
    }

    pub fn tensor(&self, other: &TensorSpace) -> TensorSpace {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        TensorSpace { factors }
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.factors.len());
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn tuple_of(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.factors.len()];
        for (slot, &d) in tuple.iter_mut().zip(&self.factors).rev() {
            *slot = index % d;
            index /= d;
        }
        tuple
    }
}

impl fmt::Display for TensorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("K");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("⊗")?;
            }
            write!(f, "K{d}")?;
        }
        Ok(())
    }
}

/// A linear map stored as a `codomain.dim() × domain.dim()` matrix. Column `j`
/// is the image of the `j`-th basis tensor of the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinMap {
    domain: TensorSpace,
    codomain: TensorSpace,
    entries: Vec<Scalar>,
}

impl LinMap {
    pub fn zero(domain: TensorSpace, codomain: TensorSpace) -> Self {
        let len = domain.dim() * codomain.dim();
        Self {
            domain,
            codomain,
            entries: vec![Scalar::zero(); len],
        }
    }

    pub fn identity(space: TensorSpace) -> Self {
        let mut map = Self::zero(space.clone(), space);
        for i in 0..map.cols() {
            map.set(i, i, Scalar::one());
        }
        map
    }

    pub fn from_fn(
        domain: TensorSpace,
        codomain: TensorSpace,
        mut entry: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let (rows, cols) = (codomain.dim(), domain.dim());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(entry(r, c));
            }
        }
        Self {
            domain,
            codomain,
            entries,
        }
    }

    /// Builds a map from its matrix rows.
    pub fn from_rows(
        domain: TensorSpace,
        codomain: TensorSpace,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        if rows.len() != codomain.dim() || rows.iter().any(|r| r.len() != domain.dim()) {
            return Err(Error::Argument(alloc::format!(
                "matrix rows do not match shape {} × {} ({} -> {})",
                codomain.dim(),
                domain.dim(),
                domain,
                codomain
            )));
        }
        Ok(Self {
            domain,
            codomain,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a map from the images of the domain basis tensors.
    pub fn from_images(
        domain: TensorSpace,
        codomain: TensorSpace,
        images: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        if images.len() != domain.dim() || images.iter().any(|r| r.len() != codomain.dim()) {
            return Err(Error::Argument(alloc::format!(
                "expected {} images of length {} ({} -> {})",
                domain.dim(),
                codomain.dim(),
                domain,
                codomain
            )));
        }
        let mut map = Self::zero(domain, codomain);
        for (c, image) in images.into_iter().enumerate() {
            for (r, value) in image.into_iter().enumerate() {
                map.set(r, c, value);
            }
        }
        Ok(map)
    }

    /// Square matrix on `K^n` from integer rows.
    pub fn square(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let space = TensorSpace::power(n, 1);
        Self::from_fn(space.clone(), space, |r, c| crate::scalar::int(rows[r][c]))
    }

    pub fn domain(&self) -> &TensorSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &TensorSpace {
        &self.codomain
    }

    pub fn rows(&self) -> usize {
        self.codomain.dim()
    }

    pub fn cols(&self) -> usize {
        self.domain.dim()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.cols() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        let cols = self.cols();
        self.entries[row * cols + col] = value;
    }

    pub fn column(&self, col: usize) -> Vec<Scalar> {
        (0..self.rows())
            .map(|r| self.entry(r, col).clone())
            .collect()
    }

    pub fn row(&self, row: usize) -> &[Scalar] {
        let cols = self.cols();
        &self.entries[row * cols..(row + 1) * cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// The same matrix with relabelled spaces of equal dimension.
    pub fn reinterpret(&self, domain: TensorSpace, codomain: TensorSpace) -> Result<Self> {
        if domain.dim() != self.domain.dim() {
            return Err(Error::Dimension {
                op: "reinterpret",
                left: self.domain.clone(),
                right: domain,
            });
        }
        if codomain.dim() != self.codomain.dim() {
            return Err(Error::Dimension {
                op: "reinterpret",
                left: self.codomain.clone(),
                right: codomain,
            });
        }
        Ok(Self {
            domain,
            codomain,
            entries: self.entries.clone(),
        })
    }

    pub fn apply(&self, vector: &[Scalar]) -> Result<Vec<Scalar>> {
        if vector.len() != self.cols() {
            return Err(Error::Argument(alloc::format!(
                "vector of length {} applied to map with domain {}",
                vector.len(),
                self.domain
            )));
        }
        let mut out = vec![Scalar::zero(); self.rows()];
        for (c, x) in vector.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, slot) in out.iter_mut().enumerate() {
                let a = self.entry(r, c);
                if !a.is_zero() {
                    *slot += a * x;
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &LinMap) -> Result<LinMap> {
        if self.domain != f.codomain {
            return Err(Error::Dimension {
                op: "compose",
                left: self.domain.clone(),
                right: f.codomain.clone(),
            });
        }
        let (rows, inner, cols) = (self.rows(), self.cols(), f.cols());
        let mut out = vec![Scalar::zero(); rows * cols];
        for r in 0..rows {
            for k in 0..inner {
                let a = &self.entries[r * inner + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..cols {
                    let b = &f.entries[k * cols + c];
                    if !b.is_zero() {
                        out[r * cols + c] += a * b;
                    }
                }
            }
        }
        Ok(LinMap {
            domain: f.domain.clone(),
            codomain: self.codomain.clone(),
            entries: out,
        })
    }

    /// Kronecker product `self ⊗ g`.
    pub fn tensor(&self, g: &LinMap) -> LinMap {
        let domain = self.domain.tensor(&g.domain);
        let codomain = self.codomain.tensor(&g.codomain);
        let (gr, gc) = (g.rows(), g.cols());
        let cols = domain.dim();
        let mut out = vec![Scalar::zero(); codomain.dim() * cols];
        for r1 in 0..self.rows() {
            for c1 in 0..self.cols() {
                let a = self.entry(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..gr {
                    for c2 in 0..gc {
                        let b = g.entry(r2, c2);
                        if !b.is_zero() {
                            out[(r1 * gr + r2) * cols + c1 * gc + c2] = a * b;
                        }
                    }
                }
            }
        }
        LinMap {
            domain,
            codomain,
            entries: out,
        }
    }

    fn check_same_spaces(&self, other: &LinMap, op: &'static str) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::Dimension {
                op,
                left: self.domain.clone(),
                right: other.domain.clone(),
            });
        }
        if self.codomain != other.codomain {
            return Err(Error::Dimension {
                op,
                left: self.codomain.clone(),
                right: other.codomain.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.check_same_spaces(other, "add")?;
        Ok(LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.check_same_spaces(other, "sub")?;
        Ok(LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> LinMap {
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    /// Exact equality of spaces and entries.
    pub fn equal(&self, other: &LinMap) -> Result<bool> {
        self.check_same_spaces(other, "equal")?;
        Ok(self.entries == other.entries)
    }

    /// Matrix transpose: the dual map under dual bases.
    pub fn transpose(&self) -> LinMap {
        LinMap::from_fn(self.codomain.clone(), self.domain.clone(), |r, c| {
            self.entry(c, r).clone()
        })
    }

    pub fn rank(&self) -> usize {
        RowEchelon::reduce(self).pivots.len()
    }

    /// A basis of `{v : self(v) = 0}`, one vector per pivot-free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let echelon = RowEchelon::reduce(self);
        let cols = self.cols();
        let mut is_pivot = vec![false; cols];
        for &(_, c) in &echelon.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for &(r, c) in &echelon.pivots {
                let row = &echelon.rows[r];
                if !row[free].is_zero() {
                    v[c] = -BigRational::new(row[free].clone(), row[c].clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Fraction-free Gauss-Jordan elimination over the integers. Each row is
/// cleared of denominators first and kept primitive after every update.
struct RowEchelon {
    rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot; every other row is zero in a pivot column.
    pivots: Vec<(usize, usize)>,
}

impl RowEchelon {
    fn reduce(map: &LinMap) -> Self {
        let cols = map.cols();
        let mut rows: Vec<Vec<BigInt>> = (0..map.rows())
            .map(|r| integer_row(map.row(r)))
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            let Some(found) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &pivot_row[c] - &factor * p;
                }
                make_primitive(row);
            }
            pivots.push((next, c));
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        Self { rows, pivots }
    }
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let gcd = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() || gcd.is_one() {
        return;
    }
    let gcd = gcd.abs();
    for x in row.iter_mut() {
        *x = &*x / &gcd;
    }
}

/// Permutation of the factors of `space`: factor `p` of a basis tensor moves
/// to position `image_positions[p]`.
pub fn perm_operator_on(space: &TensorSpace, image_positions: &[usize]) -> Result<LinMap> {
    let k = space.arity();
    let mut seen = vec![false; k];
    if image_positions.len() != k
        || image_positions
            .iter()
            .any(|&p| p >= k || core::mem::replace(&mut seen[p], true))
    {
        return Err(Error::NotAPermutation(image_positions.to_vec()));
    }
    let mut target_factors = vec![0; k];
    for (p, &q) in image_positions.iter().enumerate() {
        target_factors[q] = space.factors()[p];
    }
    let target = TensorSpace::from_factors(target_factors);
    let mut map = LinMap::zero(space.clone(), target.clone());
    let mut moved = vec![0; k];
    for src in 0..space.dim() {
        let tuple = space.tuple_of(src);
        for (p, &q) in image_positions.iter().enumerate() {
            moved[q] = tuple[p];
        }
        map.set(target.index_of(&moved), src, Scalar::one());
    }
    Ok(map)
}

/// Permutation operator on the arity-`image_positions.len()` power of `K^n`.
pub fn perm_operator(n: usize, image_positions: &[usize]) -> Result<LinMap> {
    perm_operator_on(
        &TensorSpace::power(n, image_positions.len()),
        image_positions,
    )
}

fn fixed_perm(space: TensorSpace, image_positions: &[usize]) -> LinMap {
    perm_operator_on(&space, image_positions).expect("fixed permutation is valid")
}

/// `v ⊗ w ↦ w ⊗ v` on `K^n ⊗ K^n`.
pub fn tau(n: usize) -> LinMap {
    flip(n, n)
}

/// `v ⊗ w ↦ w ⊗ v` from `K^a ⊗ K^b` to `K^b ⊗ K^a`.
pub fn flip(a: usize, b: usize) -> LinMap {
    fixed_perm(TensorSpace::from_factors(vec![a, b]), &[1, 0])
}

/// `x ⊗ y ⊗ z ↦ y ⊗ z ⊗ x`.
pub fn xi(n: usize) -> LinMap {
    fixed_perm(TensorSpace::power(n, 3), &[2, 0, 1])
}

/// `x ⊗ y ⊗ z ↦ z ⊗ x ⊗ y`.
pub fn xi_sq(n: usize) -> LinMap {
    fixed_perm(TensorSpace::power(n, 3), &[1, 2, 0])
}

/// `x ⊗ y ⊗ z ↦ y ⊗ x ⊗ z`.
pub fn tau12(n: usize) -> LinMap {
    fixed_perm(TensorSpace::power(n, 3), &[1, 0, 2])
}

pub fn identity(n: usize, k: usize) -> LinMap {
    LinMap::identity(TensorSpace::power(n, k))
}
