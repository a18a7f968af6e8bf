//! Validated polarized surfaces over a numerical lattice.
//!
//! A [`PolarizedSurface`] bundles a lattice with a surface kind, a reference
//! class `h` in the interior of the ample chamber (used to orient
//! effectivity), and, for Enriques surfaces, an explicit set of nodal
//! classes. All deciders in the crate operate on validated surfaces only.

use crate::enumerate::{self, EnumError};
use crate::lattice::{DivisorClass, Lattice, LatticeError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    K3,
    Enriques,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Effectivity {
    Effective,
    NotEffective,
    /// The numerical data does not decide effectivity. Only produced for
    /// classes of self-intersection <= -4, and on Enriques surfaces for
    /// (-2)-classes outside the span of the declared nodal set.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("lattice is not even: diagonal entry {index} is odd")]
    OddLattice { index: usize },
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("signature must be (1, rank-1), got {signature}")]
    WrongSignature { signature: String },
    #[error("reference class h must have positive self-intersection")]
    HNotPositive,
    #[error("reference class h lies on a wall: {0} has square -2 and is orthogonal to h")]
    HOnWall(DivisorClass),
    #[error("nodal class {0} must have square -2 and positive degree against h")]
    BadNodalClass(DivisorClass),
    #[error("enriques surfaces use the built-in rank-10 lattice")]
    WrongEnriquesLattice,
    #[error("nodal classes are only accepted for enriques surfaces")]
    NodalOnK3,
}

/// Gram matrix of the even unimodular lattice of signature (1, 9) underlying
/// every Enriques surface: a hyperbolic plane spanned by `e`, `f` with
/// `e.e = f.f = 0`, `e.f = 1`, followed by eight (-2)-vectors `r1..r8`
/// pairing along the diagram
///
/// ```text
///                 r2
///                 |
///  r1 - r3 - r4 - r5 - r6 - r7 - r8      (ri.rj = 1 on an edge, else 0)
/// ```
///
/// User coordinates for Enriques surfaces always refer to this basis, in the
/// order `e, f, r1, ..., r8`.
pub fn enriques_gram() -> Vec<Vec<BigInt>> {
    let mut g = vec![vec![0i64; 10]; 10];
    g[0][1] = 1;
    g[1][0] = 1;
    for i in 2..10 {
        g[i][i] = -2;
    }
    // edges of the E8 diagram, 1-indexed nodes offset by 2
    let edges = [(1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)];
    for (a, b) in edges {
        g[a + 1][b + 1] = 1;
        g[b + 1][a + 1] = 1;
    }
    g.into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect()
}

pub fn enriques_lattice() -> Lattice {
    Lattice::new(enriques_gram()).expect("built-in gram matrix is square and symmetric")
}

/// Labels for the basis printed by `enriques_gram`, in coordinate order.
pub fn enriques_basis_labels() -> [&'static str; 10] {
    ["e", "f", "r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8"]
}

/// A query for classes of fixed degree and square, optionally restricted to
/// the effective orientation against `h`.
#[derive(Clone, Debug)]
pub struct SliceQuery {
    pub class: DivisorClass,
    pub degree: BigInt,
    pub square: BigInt,
    pub oriented: bool,
}

#[derive(Clone, Debug)]
pub struct PolarizedSurface {
    lattice: Lattice,
    kind: SurfaceKind,
    h: DivisorClass,
    nodal: Vec<DivisorClass>,
}

impl PolarizedSurface {
    /// Validates the full bundle of surface data, reporting every violated
    /// invariant it can detect. Checks that need earlier invariants (the wall
    /// enumeration needs the hyperbolic signature) run only once those hold.
    pub fn validate(
        lattice: Lattice,
        kind: SurfaceKind,
        h: DivisorClass,
        nodal: Vec<DivisorClass>,
    ) -> Result<Self, Vec<ValidationError>> {
        let mut errors = Vec::new();
        let rank = lattice.rank();
        if h.rank() != rank {
            errors.push(ValidationError::Lattice(LatticeError::RankMismatch {
                expected: rank,
                got: h.rank(),
            }));
        }
        for g in &nodal {
            if g.rank() != rank {
                errors.push(ValidationError::Lattice(LatticeError::RankMismatch {
                    expected: rank,
                    got: g.rank(),
                }));
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        if let Some(index) = (0..rank).find(|&i| lattice.gram()[i][i].is_odd()) {
            errors.push(ValidationError::OddLattice { index });
        }
        let sig = lattice.signature();
        if sig.zero > 0 {
            errors.push(ValidationError::DegenerateForm);
        }
        if sig.positive != 1 {
            errors.push(ValidationError::WrongSignature {
                signature: sig.to_string(),
            });
        }
        match kind {
            SurfaceKind::K3 => {
                if !nodal.is_empty() {
                    errors.push(ValidationError::NodalOnK3);
                }
            }
            SurfaceKind::Enriques => {
                if lattice.gram() != enriques_gram() {
                    errors.push(ValidationError::WrongEnriquesLattice);
                }
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }

        if !lattice.square(&h).is_positive() {
            return Err(vec![ValidationError::HNotPositive]);
        }

        match kind {
            SurfaceKind::K3 => {
                // h must avoid every wall: no (-2)-class orthogonal to h. Such
                // classes live in the negative definite complement of h, so
                // the search is finite.
                let walls = enumerate::classes_with_degree_and_square(
                    &lattice,
                    &h,
                    &BigInt::zero(),
                    &BigInt::from(-2),
                )
                .expect("h has positive square");
                if let Some(w) = walls.into_iter().next() {
                    return Err(vec![ValidationError::HOnWall(w)]);
                }
            }
            SurfaceKind::Enriques => {
                for g in &nodal {
                    if lattice.square(g) != BigInt::from(-2) || !lattice.pair(g, &h).is_positive() {
                        errors.push(ValidationError::BadNodalClass(g.clone()));
                    }
                }
                if !errors.is_empty() {
                    return Err(errors);
                }
            }
        }

        let mut nodal = nodal;
        nodal.sort();
        nodal.dedup();
        Ok(PolarizedSurface {
            lattice,
            kind,
            h,
            nodal,
        })
    }

    pub fn k3(lattice: Lattice, h: DivisorClass) -> Result<Self, Vec<ValidationError>> {
        Self::validate(lattice, SurfaceKind::K3, h, Vec::new())
    }

    /// An Enriques surface over the built-in lattice. An empty nodal set
    /// declares the surface unnodal.
    pub fn enriques(
        h: DivisorClass,
        nodal: Vec<DivisorClass>,
    ) -> Result<Self, Vec<ValidationError>> {
        Self::validate(enriques_lattice(), SurfaceKind::Enriques, h, nodal)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn h(&self) -> &DivisorClass {
        &self.h
    }

    pub fn nodal_classes(&self) -> &[DivisorClass] {
        &self.nodal
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn pair(&self, x: &DivisorClass, y: &DivisorClass) -> BigInt {
        self.lattice.pair(x, y)
    }

    pub fn square(&self, x: &DivisorClass) -> BigInt {
        self.lattice.square(x)
    }

    pub fn degree_against_h(&self, x: &DivisorClass) -> BigInt {
        self.lattice.pair(x, &self.h)
    }

    /// Euler characteristic of the class: `x.x/2 + 2` on K3 and `x.x/2 + 1`
    /// on Enriques surfaces.
    pub fn chi(&self, x: &DivisorClass) -> Result<BigInt, LatticeError> {
        let sq = self.lattice.try_pair(x, x)?;
        if sq.is_odd() {
            return Err(LatticeError::OddSelfIntersection);
        }
        let base = match self.kind {
            SurfaceKind::K3 => 2,
            SurfaceKind::Enriques => 1,
        };
        Ok(sq / 2 + base)
    }

    /// All classes of the given degree against `l` and the given square,
    /// optionally keeping only the effective orientation (positive degree
    /// against h).
    pub fn classes_with_degree_and_square(
        &self,
        l: &DivisorClass,
        degree: &BigInt,
        square: &BigInt,
        oriented: bool,
    ) -> Result<Vec<DivisorClass>, EnumError> {
        let mut found =
            enumerate::classes_with_degree_and_square(&self.lattice, l, degree, square)?;
        if oriented {
            found.retain(|x| self.degree_against_h(x).is_positive());
        }
        Ok(found)
    }

    pub fn search(&self, query: &SliceQuery) -> Result<Vec<DivisorClass>, EnumError> {
        self.classes_with_degree_and_square(
            &query.class,
            &query.degree,
            &query.square,
            query.oriented,
        )
    }

    /// Decides effectivity from Riemann-Roch and the orientation against h.
    ///
    /// On K3 a class with square at least -2 has positive Euler
    /// characteristic, so either it or its negative is effective, and the
    /// sign of the degree against h picks which. On Enriques the decisive
    /// threshold is square zero; a (-2)-class is effective only when it is a
    /// nonnegative integer combination of the declared nodal classes.
    pub fn is_effective(&self, x: &DivisorClass) -> Effectivity {
        if x.is_zero() {
            return Effectivity::Effective;
        }
        let sq = self.square(x);
        let threshold = match self.kind {
            SurfaceKind::K3 => BigInt::from(-2),
            SurfaceKind::Enriques => BigInt::zero(),
        };
        if sq >= threshold {
            let dh = self.degree_against_h(x);
            if dh.is_positive() {
                Effectivity::Effective
            } else if dh.is_negative() {
                Effectivity::NotEffective
            } else {
                unreachable!(
                    "validated surface: no nonzero class above the effectivity threshold \
                     is orthogonal to h"
                )
            }
        } else if self.kind == SurfaceKind::Enriques && sq == BigInt::from(-2) {
            if self.is_nodal_combination(x) {
                Effectivity::Effective
            } else {
                Effectivity::Indeterminate
            }
        } else {
            Effectivity::Indeterminate
        }
    }

    /// Whether `x` is a nonnegative integer combination of the declared nodal
    /// classes. Degrees against h strictly decrease along the search, so it
    /// terminates.
    fn is_nodal_combination(&self, x: &DivisorClass) -> bool {
        fn go(surface: &PolarizedSurface, remaining: &DivisorClass, from: usize) -> bool {
            if remaining.is_zero() {
                return true;
            }
            if !surface.degree_against_h(remaining).is_positive() {
                return false;
            }
            for i in from..surface.nodal.len() {
                let next = remaining - &surface.nodal[i];
                if go(surface, &next, i) {
                    return true;
                }
            }
            false
        }
        go(self, x, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn k3(rows: &[Vec<i64>], h: &[i64]) -> Result<PolarizedSurface, Vec<ValidationError>> {
        PolarizedSurface::k3(
            Lattice::from_i64_rows(rows).unwrap(),
            DivisorClass::from_i64(h),
        )
    }

    #[test]
    fn validates_rank_one_quartic() {
        let s = k3(&[vec![4]], &[1]).unwrap();
        assert_eq!(s.kind(), SurfaceKind::K3);
        assert!(s.lattice().signature().is_hyperbolic());
    }

    #[test]
    fn rejects_odd_lattice() {
        let errs = k3(&[vec![3]], &[1]).unwrap_err();
        assert!(errs.contains(&ValidationError::OddLattice { index: 0 }));
    }

    #[test]
    fn rejects_wrong_signature() {
        let errs = k3(&[vec![2, 0], vec![0, 2]], &[1, 0]).unwrap_err();
        assert!(matches!(errs[0], ValidationError::WrongSignature { .. }));
    }

    #[test]
    fn rejects_degenerate_form() {
        let errs = k3(&[vec![2, 2], vec![2, 2]], &[1, 0]).unwrap_err();
        assert!(errs.contains(&ValidationError::DegenerateForm));
    }

    #[test]
    fn rejects_h_on_wall() {
        // B - E has square -2 and pairs to zero with h = B
        let errs = k3(&[vec![0, 2], vec![2, 2]], &[0, 1]).unwrap_err();
        assert!(matches!(errs[0], ValidationError::HOnWall(_)));
    }

    #[test]
    fn rejects_non_positive_h() {
        let errs = k3(&[vec![0, 2], vec![2, 2]], &[1, 0]).unwrap_err();
        assert_eq!(errs, vec![ValidationError::HNotPositive]);
    }

    #[test]
    fn chi_values() {
        let s = k3(&[vec![0, 2], vec![2, 2]], &[1, 1]).unwrap();
        assert_eq!(s.chi(&DivisorClass::zero(2)).unwrap(), BigInt::from(2));
        // (B - E)^2 = -2
        assert_eq!(
            s.chi(&DivisorClass::from_i64(&[-1, 1])).unwrap(),
            BigInt::from(1)
        );
        let e = PolarizedSurface::enriques(
            DivisorClass::from_i64(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
            vec![],
        )
        .unwrap();
        assert_eq!(e.chi(&DivisorClass::zero(10)).unwrap(), BigInt::from(1));
        assert_eq!(
            e.chi(&DivisorClass::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]))
                .unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn effectivity_on_k3() {
        let s = k3(&[vec![4]], &[1]).unwrap();
        assert_eq!(
            s.is_effective(&DivisorClass::from_i64(&[1])),
            Effectivity::Effective
        );

        let s = k3(&[vec![0, 2], vec![2, 2]], &[1, 1]).unwrap();
        assert_eq!(
            s.is_effective(&DivisorClass::from_i64(&[-1, 1])),
            Effectivity::Effective
        );
        assert_eq!(
            s.is_effective(&DivisorClass::from_i64(&[1, -1])),
            Effectivity::NotEffective
        );
        // square -4 and below gives no information
        assert_eq!(
            s.is_effective(&DivisorClass::from_i64(&[-2, 1])),
            Effectivity::Indeterminate
        );
    }

    #[test]
    fn effectivity_on_enriques_uses_nodal_set() {
        let h = DivisorClass::from_i64(&[2, 3, 0, 0, 0, 0, 0, 0, 0, 0]);
        let gamma = DivisorClass::from_i64(&[1, -1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let s = PolarizedSurface::enriques(h.clone(), vec![gamma.clone()]).unwrap();
        assert_eq!(s.is_effective(&gamma), Effectivity::Effective);
        assert_eq!(s.is_effective(&-&gamma), Effectivity::Indeterminate);

        let unnodal = PolarizedSurface::enriques(h, vec![]).unwrap();
        assert_eq!(unnodal.is_effective(&gamma), Effectivity::Indeterminate);
    }

    #[test]
    fn enriques_requires_builtin_lattice() {
        let errs = PolarizedSurface::validate(
            Lattice::from_i64_rows(&[vec![0, 1], vec![1, 0]]).unwrap(),
            SurfaceKind::Enriques,
            DivisorClass::from_i64(&[1, 1]),
            vec![],
        )
        .unwrap_err();
        assert!(errs.contains(&ValidationError::WrongEnriquesLattice));
    }

    #[test]
    fn enriques_rejects_bad_nodal_class() {
        let h = DivisorClass::from_i64(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
        // e is isotropic, not a (-2)-class
        let errs = PolarizedSurface::enriques(
            h,
            vec![DivisorClass::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0])],
        )
        .unwrap_err();
        assert!(matches!(errs[0], ValidationError::BadNodalClass(_)));
    }

    #[test]
    fn slice_query_respects_orientation() {
        let s = k3(&[vec![2, 1], vec![1, -2]], &[3, 1]).unwrap();
        let l = DivisorClass::from_i64(&[2, 1]);
        // both orientations of the contracted (-2)-class solve the slice
        let all = s
            .search(&SliceQuery {
                class: l.clone(),
                degree: BigInt::from(0),
                square: BigInt::from(-2),
                oriented: false,
            })
            .unwrap();
        assert_eq!(all.len(), 2);
        // the effective orientation keeps only the h-positive one
        let oriented = s
            .search(&SliceQuery {
                class: l,
                degree: BigInt::from(0),
                square: BigInt::from(-2),
                oriented: true,
            })
            .unwrap();
        assert_eq!(oriented, vec![DivisorClass::from_i64(&[0, 1])]);
    }

    #[test]
    fn builtin_enriques_lattice_shape() {
        let lat = enriques_lattice();
        assert_eq!(lat.rank(), 10);
        assert!(lat.is_even());
        let sig = lat.signature();
        assert_eq!((sig.positive, sig.negative, sig.zero), (1, 9, 0));
        // unimodular: determinant -1, computed by exact rational elimination
        assert_eq!(
            rational_determinant(lat.gram()),
            BigRational::from_integer(BigInt::from(-1))
        );
    }

    fn rational_determinant(gram: &[Vec<BigInt>]) -> BigRational {
        use num_traits::One;
        let n = gram.len();
        let mut m: Vec<Vec<BigRational>> = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| BigRational::from_integer(e.clone()))
                    .collect()
            })
            .collect();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return BigRational::from_integer(BigInt::from(0));
            };
            if pivot_row != col {
                m.swap(col, pivot_row);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in (col + 1)..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let t = &m[r][col] / &pivot;
                for c in col..n {
                    let v = &m[col][c] * &t;
                    m[r][c] -= v;
                }
            }
        }
        det
    }
}
