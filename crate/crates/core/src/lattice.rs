//! Integer symmetric bilinear forms and divisor classes, with exact arithmetic.
//!
//! A [`Lattice`] is Z^n equipped with an integer symmetric pairing given by a
//! Gram matrix in a fixed basis; a [`DivisorClass`] is a coordinate vector in
//! that basis. Everything here is computed over arbitrary-precision integers
//! and rationals; no floating point is used anywhere in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("gram matrix must be square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("lattice rank must be positive")]
    EmptyMatrix,
    #[error("coordinate vector has length {got}, lattice rank is {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("self-intersection is odd")]
    OddSelfIntersection,
}

/// Inertia of a symmetric bilinear form: the number of positive, negative and
/// zero eigenvalues, determined exactly by rational congruence reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    /// Signature (1, rank-1) with no radical, the shape required of the
    /// numerical lattice of a projective surface.
    pub fn is_hyperbolic(&self) -> bool {
        self.positive == 1 && self.zero == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// An integer coordinate vector in the fixed basis of a lattice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DivisorClass {
    coords: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        DivisorClass { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        DivisorClass {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coords: vec![BigInt::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, s: &BigInt) -> Self {
        DivisorClass {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Half of this class, when every coordinate is even.
    pub fn try_halved(&self) -> Option<Self> {
        let two = BigInt::from(2);
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            if (c % &two).is_zero() {
                coords.push(c / &two);
            } else {
                return None;
            }
        }
        Some(DivisorClass { coords })
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        DivisorClass {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

/// An integer symmetric bilinear form on Z^rank. The signature is computed
/// once at construction and cached; a `Lattice` is immutable afterwards, so
/// values may be shared freely across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<BigInt>>,
    signature: Signature,
}

impl Lattice {
    pub fn new(gram: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 {
            return Err(LatticeError::EmptyMatrix);
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric { row: i, col: j });
                }
            }
        }
        let signature = inertia(&gram);
        Ok(Lattice { gram, signature })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Lattice::new(
            rows.iter()
                .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// Every self-intersection is even iff every diagonal entry is even.
    pub fn is_even(&self) -> bool {
        use num_integer::Integer;
        (0..self.rank()).all(|i| self.gram[i][i].is_even())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.signature.zero == 0
    }

    /// The linear functional `y -> x . y` as the integer vector `G x`.
    pub fn gram_vector(&self, x: &DivisorClass) -> Vec<BigInt> {
        assert_eq!(x.rank(), self.rank(), "rank mismatch");
        self.gram
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x.coords())
                    .map(|(g, c)| g * c)
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// The intersection number `x . y`. Panics on rank mismatch; use
    /// [`Lattice::try_pair`] for unvalidated input.
    pub fn pair(&self, x: &DivisorClass, y: &DivisorClass) -> BigInt {
        let gy = self.gram_vector(y);
        x.coords().iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    pub fn try_pair(&self, x: &DivisorClass, y: &DivisorClass) -> Result<BigInt, LatticeError> {
        for v in [x, y] {
            if v.rank() != self.rank() {
                return Err(LatticeError::RankMismatch {
                    expected: self.rank(),
                    got: v.rank(),
                });
            }
        }
        Ok(self.pair(x, y))
    }

    pub fn square(&self, x: &DivisorClass) -> BigInt {
        self.pair(x, x)
    }
}

/// Exact inertia by symmetric Gaussian elimination over the rationals: the
/// form is diagonalized by congruence transformations and the pivot signs are
/// counted. Sylvester's law of inertia makes the count basis-independent.
fn inertia(gram: &[Vec<BigInt>]) -> Signature {
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect()
        })
        .collect();
    let (mut positive, mut negative, mut zero) = (0usize, 0usize, 0usize);
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                swap_symmetric(&mut a, i, j);
            } else if let Some((j, k)) = first_off_diagonal(&a, i) {
                // all trailing diagonal entries vanish; e_j + e_k has square
                // 2 a[j][k] != 0, realized by adding row/column k to j
                add_symmetric(&mut a, j, k);
                if j != i {
                    swap_symmetric(&mut a, i, j);
                }
            } else {
                zero += n - i;
                break;
            }
        }
        let pivot = a[i][i].clone();
        if pivot.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        for r in (i + 1)..n {
            if a[r][i].is_zero() {
                continue;
            }
            let t = &a[r][i] / &pivot;
            for c in i..n {
                let v = &a[i][c] * &t;
                a[r][c] -= v;
            }
            for rr in i..n {
                let v = &a[rr][i] * &t;
                a[rr][r] -= v;
            }
        }
    }
    Signature {
        positive,
        negative,
        zero,
    }
}

fn swap_symmetric(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Congruence by `row j += row k; col j += col k`.
fn add_symmetric(a: &mut [Vec<BigRational>], j: usize, k: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[k][c].clone();
        a[j][c] += v;
    }
    for r in 0..n {
        let v = a[r][k].clone();
        a[r][j] += v;
    }
}

fn first_off_diagonal(a: &[Vec<BigRational>], from: usize) -> Option<(usize, usize)> {
    let n = a.len();
    for j in from..n {
        for k in (j + 1)..n {
            if !a[j][k].is_zero() {
                return Some((j, k));
            }
        }
    }
    None
}
