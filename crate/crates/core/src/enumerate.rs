//! Exhaustive enumeration of lattice vectors with prescribed degree and
//! self-intersection.
//!
//! Fixing a class `L` with `L.L > 0` in a lattice of signature (1, n-1), the
//! set `{x : x.L = c, x.x = m}` is finite: writing `x = (c/L.L) L + y` puts
//! `y` in the negative definite orthogonal complement of `L`, where only
//! finitely many squares exceed any bound. The search is realized exactly by
//! solving the degree equation as an integer coset, restricting the form to
//! the hyperplane basis and running a shifted recursive-interval enumeration
//! on the resulting definite form. All interval endpoints are derived with
//! integer square roots; nothing is approximated.

use crate::lattice::{DivisorClass, Lattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("fixed class must have positive self-intersection")]
    NotBig,
    #[error("restricted form is not definite")]
    NonDefiniteForm,
    #[error("coordinate length mismatch")]
    RankMismatch,
}

/// All integer vectors `v` with `q(v + shift) = target`, where `q` is a
/// negative definite integer form. The output is sorted lexicographically.
///
/// Definiteness is verified on the way in: the exact LDL reduction of `-q`
/// must produce positive pivots, which for a symmetric form is equivalent to
/// positive definiteness. A positive `target` yields an empty list.
pub fn definite_enumerate(
    q: &[Vec<BigInt>],
    shift: &[BigRational],
    target: &BigRational,
) -> Result<Vec<Vec<BigInt>>, EnumError> {
    let r = q.len();
    if q.iter().any(|row| row.len() != r) || shift.len() != r {
        return Err(EnumError::RankMismatch);
    }
    if r == 0 {
        return Ok(if target.is_zero() {
            vec![vec![]]
        } else {
            vec![]
        });
    }
    let (d, u) = ldl_of_negation(q)?;
    let budget = -target;
    if budget.is_negative() {
        return Ok(vec![]);
    }
    let mut search = Search {
        d,
        u,
        shift,
        chosen: vec![BigInt::zero(); r],
        offsets: vec![BigRational::zero(); r],
        results: Vec::new(),
    };
    search.descend(r, budget);
    let mut results = search.results;
    results.sort();
    Ok(results)
}

/// Exact LDL reduction of `-q`; positive pivots certify that `q` is negative
/// definite. Returns the pivots `d` and the unit upper-triangular multipliers
/// `u`, so that `-q(y) = sum_i d_i (y_i + sum_{j>i} u_ij y_j)^2`.
#[allow(clippy::type_complexity)]
fn ldl_of_negation(
    q: &[Vec<BigInt>],
) -> Result<(Vec<BigRational>, Vec<Vec<BigRational>>), EnumError> {
    let r = q.len();
    let p: Vec<Vec<BigRational>> = q
        .iter()
        .map(|row| row.iter().map(|e| BigRational::from_integer(-e)).collect())
        .collect();
    let mut d = vec![BigRational::zero(); r];
    let mut u = vec![vec![BigRational::zero(); r]; r];
    for i in 0..r {
        let mut pivot = p[i][i].clone();
        for k in 0..i {
            pivot -= &d[k] * &u[k][i] * &u[k][i];
        }
        if !pivot.is_positive() {
            return Err(EnumError::NonDefiniteForm);
        }
        for j in (i + 1)..r {
            let mut v = p[i][j].clone();
            for k in 0..i {
                v -= &d[k] * &u[k][i] * &u[k][j];
            }
            u[i][j] = v / &pivot;
        }
        d[i] = pivot;
    }
    Ok((d, u))
}

struct Search<'a> {
    d: Vec<BigRational>,
    u: Vec<Vec<BigRational>>,
    shift: &'a [BigRational],
    chosen: Vec<BigInt>,
    offsets: Vec<BigRational>,
    results: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    /// Assigns coordinate `level - 1`, consuming its square term from the
    /// remaining budget. Coordinates are fixed from the last to the first so
    /// that the cross terms of the LDL expansion are already determined.
    fn descend(&mut self, level: usize, remaining: BigRational) {
        if level == 0 {
            if remaining.is_zero() {
                self.results.push(self.chosen.clone());
            }
            return;
        }
        let i = level - 1;
        let r = self.shift.len();
        let mut cross = BigRational::zero();
        for j in (i + 1)..r {
            cross += &self.u[i][j] * &self.offsets[j];
        }
        let alpha = &self.shift[i] + &cross;
        let beta = &remaining / &self.d[i];
        let hi = floor_add_sqrt(&-&alpha, &beta);
        let lo = -floor_add_sqrt(&alpha, &beta);
        let mut v = lo;
        while v <= hi {
            let y = BigRational::from_integer(v.clone()) + &self.shift[i];
            let displaced = BigRational::from_integer(v.clone()) + &alpha;
            let consumed = &self.d[i] * &displaced * &displaced;
            debug_assert!(consumed <= remaining);
            self.chosen[i] = v.clone();
            self.offsets[i] = y;
            self.descend(i, &remaining - &consumed);
            v += 1;
        }
    }
}

/// floor(x + sqrt(beta)) for rationals, beta >= 0, computed exactly.
///
/// With beta = n/d reduced, sqrt(beta) lies in [s/d, (s+1)/d] for the integer
/// square root s of n*d, so the floor is one of two candidates; the larger is
/// kept iff it verifies against beta exactly.
fn floor_add_sqrt(x: &BigRational, beta: &BigRational) -> BigInt {
    debug_assert!(!beta.is_negative());
    let n = beta.numer();
    let den = beta.denom();
    let s = (n * den).sqrt();
    let low = x + BigRational::new(s, den.clone());
    let mut c = low.floor().to_integer();
    let candidate: BigInt = &c + 1;
    let diff = BigRational::from_integer(candidate.clone()) - x;
    if !diff.is_positive() || &(&diff * &diff) <= beta {
        c = candidate;
    }
    c
}

/// Integer solutions of `w . x = c` for a nonzero integer functional `w`:
/// one particular solution together with a basis of the rank n-1 sublattice
/// `{x : w . x = 0}`. `None` when gcd(w) does not divide c.
///
/// Column-reduces the identity against `w` by a Euclidean chain; the column
/// operations are unimodular, so the non-pivot columns are a genuine basis of
/// the kernel lattice rather than a finite-index sublattice of it.
fn hyperplane_solutions(w: &[BigInt], c: &BigInt) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let n = w.len();
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut vals: Vec<BigInt> = w.to_vec();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&j| !vals[j].is_zero()).collect();
        match nonzero.len() {
            0 => {
                // zero functional: every x solves w.x = 0
                return if c.is_zero() {
                    Some((vec![BigInt::zero(); n], cols))
                } else {
                    None
                };
            }
            1 => {
                let p = nonzero[0];
                let g = vals[p].clone();
                let (quot, rem) = c.div_mod_floor(&g);
                if !rem.is_zero() {
                    return None;
                }
                let particular = cols[p].iter().map(|e| e * &quot).collect();
                let basis = cols
                    .into_iter()
                    .enumerate()
                    .filter(|(j, _)| *j != p)
                    .map(|(_, col)| col)
                    .collect();
                return Some((particular, basis));
            }
            _ => {
                let p = *nonzero
                    .iter()
                    .min_by(|&&a, &&b| vals[a].abs().cmp(&vals[b].abs()))
                    .unwrap();
                for &j in &nonzero {
                    if j == p {
                        continue;
                    }
                    let (factor, rem) = vals[j].div_mod_floor(&vals[p]);
                    vals[j] = rem;
                    for row in 0..n {
                        let v = &cols[p][row] * &factor;
                        cols[j][row] -= v;
                    }
                }
            }
        }
    }
}

/// The complete list of classes `x` with `x . l = degree` and `x . x = square`,
/// sorted lexicographically by coordinates.
///
/// Requires `l.l > 0`; the hyperplane `x . l = degree` then carries a definite
/// restricted form whenever the ambient signature is (1, n-1), which is what
/// makes the list finite. A non-definite restriction is reported as an error.
pub fn classes_with_degree_and_square(
    lattice: &Lattice,
    l: &DivisorClass,
    degree: &BigInt,
    square: &BigInt,
) -> Result<Vec<DivisorClass>, EnumError> {
    if l.rank() != lattice.rank() {
        return Err(EnumError::RankMismatch);
    }
    if !lattice.square(l).is_positive() {
        return Err(EnumError::NotBig);
    }
    let w = lattice.gram_vector(l);
    let Some((x0, basis)) = hyperplane_solutions(&w, degree) else {
        return Ok(vec![]);
    };
    let n = lattice.rank();
    let r = basis.len();
    let gram = lattice.gram();

    // G b_j for each basis column, then Q = B^T G B and u = B^T G x0
    let gb: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|b| {
            (0..n)
                .map(|row| (0..n).map(|col| &gram[row][col] * &b[col]).sum())
                .collect()
        })
        .collect();
    let q: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| basis[i].iter().zip(&gb[j]).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let u: Vec<BigInt> = (0..r)
        .map(|j| x0.iter().zip(&gb[j]).map(|(a, b)| a * b).sum())
        .collect();
    let s: BigInt = {
        let gx0: Vec<BigInt> = (0..n)
            .map(|row| (0..n).map(|col| &gram[row][col] * &x0[col]).sum())
            .collect();
        x0.iter().zip(&gx0).map(|(a, b)| a * b).sum()
    };

    // complete the square: x.x = (t+z)^T Q (t+z) - u^T z + s with Q z = u
    let q_rat: Vec<Vec<BigRational>> = q
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect()
        })
        .collect();
    let u_rat: Vec<BigRational> = u
        .iter()
        .map(|e| BigRational::from_integer(e.clone()))
        .collect();
    let z = solve_linear_system(&q_rat, &u_rat).ok_or(EnumError::NonDefiniteForm)?;
    let mut target = BigRational::from_integer(square - &s);
    for (ui, zi) in u_rat.iter().zip(&z) {
        target += ui * zi;
    }

    let shifts = definite_enumerate(&q, &z, &target)?;
    let mut out: Vec<DivisorClass> = shifts
        .into_iter()
        .map(|t| {
            let coords: Vec<BigInt> = (0..n)
                .map(|row| {
                    let mut v = x0[row].clone();
                    for (j, tj) in t.iter().enumerate() {
                        v += &basis[j][row] * tj;
                    }
                    v
                })
                .collect();
            DivisorClass::new(coords)
        })
        .collect();
    out.sort();
    debug_assert!(out
        .iter()
        .all(|x| &lattice.pair(x, l) == degree && &lattice.square(x) == square));
    Ok(out)
}

/// Gaussian elimination with partial pivoting over the rationals.
fn solve_linear_system(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot_row);
        let pivot = m[col][col].clone();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let t = &m[r][col] / &pivot;
            for c in col..=n {
                let v = &m[col][c] * &t;
                m[r][c] -= v;
            }
        }
    }
    Some((0..n).map(|i| &m[i][n] / &m[i][i]).collect())
}
