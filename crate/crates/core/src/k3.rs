//! Deciders for line bundle positivity on K3 surfaces: nef, ample, base
//! point free, k-very ample, birationally k-very ample, Clifford index and
//! minimal gonality, all with witness certificates.
//!
//! Every negative verdict is certified: either by a degree obstruction, or by
//! an explicit violating class whose invariants can be re-checked against the
//! pairing. The decisive numerical condition for a big and nef `L` failing to
//! be k-very ample is the existence of an effective class `D` with
//!
//! ```text
//!   2 D.D <= L.D <= D.D + k + 1 <= 2k + 2
//! ```
//!
//! where equality on the left admits `D` only when `L = 2D` and
//! `L.L <= 4k + 4`, and equality on the right only when `L = 2D` and
//! `L.L = 4k + 4`. The birational variant additionally restricts to
//! `D.D >= 0` and excludes the single pair `(L.L, D.D) = (4k + 2, k)`.

use crate::enumerate::EnumError;
use crate::lattice::{DivisorClass, LatticeError};
use crate::surface::{PolarizedSurface, SurfaceKind};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// A (-2)-class of degree at most k-1 against L.
    NegTwoCurve,
    /// A class of nonnegative square satisfying the full violator chain.
    NonNegSquare,
    /// The (-2)-curve of an exceptional decomposition `L = 2D + Gamma`.
    Exceptional,
}

/// A violating class together with the invariants that certify the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub class: DivisorClass,
    /// D.D
    pub self_intersection: BigInt,
    /// D.L
    pub degree: BigInt,
    /// The order k of the failed criterion.
    pub k: i64,
    /// (L - D).D, the degree of a failing zero-dimensional scheme carried by
    /// the violator; equals k+1 for a minimal violator.
    pub failing_degree: BigInt,
    pub kind: WitnessKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clause {
    /// L.L < 4k.
    DegreeBound,
    /// Exhaustive search found no violating class.
    NoViolator,
    ViolatorFound,
    NotSpanned,
    /// A (-2)-class with positive degree against h and negative degree
    /// against L.
    NotNef {
        wall: DivisorClass,
    },
    NotBig,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub clause: Clause,
    pub witness: Option<WitnessCertificate>,
}

impl Verdict {
    fn holds() -> Self {
        Verdict {
            answer: true,
            clause: Clause::NoViolator,
            witness: None,
        }
    }

    fn degree_bound() -> Self {
        Verdict {
            answer: false,
            clause: Clause::DegreeBound,
            witness: None,
        }
    }

    fn violator(witness: WitnessCertificate) -> Self {
        Verdict {
            answer: false,
            clause: Clause::ViolatorFound,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriteriaError {
    #[error("class is not big: it needs positive square and positive degree against h")]
    NotBig,
    #[error("class is not nef: {wall} has square -2, is effective and has negative degree")]
    NotNef { wall: DivisorClass },
    #[error("linear system has base points; witness {}", .witness.class)]
    NotSpanned { witness: Box<WitnessCertificate> },
    #[error("k must be at least {min}")]
    KTooSmall { min: i64 },
    #[error("operation is only defined for k3 surfaces")]
    K3Only,
    #[error("operation is only defined for enriques surfaces")]
    EnriquesOnly,
    #[error("derived bound for k exceeds the supported integer range")]
    KRange,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// Clifford index of the smooth curves in |L|, with the data that determined
/// it: `k1` is the smallest order admitting a violator of nonnegative square
/// (`None` when no order up to `k2` does), `k2` the smallest order ruled out
/// by the degree of L alone, and `c = min(k1, k2) - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordReport {
    pub c: i64,
    pub k1: Option<i64>,
    pub k2: i64,
    pub exceptional: bool,
    /// For exceptional systems, the pair (D, Gamma) with `L = 2D + Gamma`,
    /// `D.D = c + 1`, `Gamma.Gamma = -2` and `D.Gamma = 1`.
    pub decomposition: Option<(DivisorClass, DivisorClass)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolatorMode {
    /// The full k-very ampleness search.
    Full,
    /// The birational variant: nonnegative squares only, and the pair
    /// (L.L, D.D) = (4k+2, k) is exempt.
    Birational,
}

fn require_k3(surface: &PolarizedSurface) -> Result<(), CriteriaError> {
    if surface.kind() != SurfaceKind::K3 {
        return Err(CriteriaError::K3Only);
    }
    Ok(())
}

pub(crate) fn ensure_big(
    surface: &PolarizedSurface,
    l: &DivisorClass,
) -> Result<BigInt, CriteriaError> {
    if l.rank() != surface.rank() {
        return Err(CriteriaError::Lattice(LatticeError::RankMismatch {
            expected: surface.rank(),
            got: l.rank(),
        }));
    }
    let l_sq = surface.square(l);
    if !l_sq.is_positive() || !surface.degree_against_h(l).is_positive() {
        return Err(CriteriaError::NotBig);
    }
    Ok(l_sq)
}

/// The lexicographically first effective (-2)-class of negative degree
/// against `l`, if one exists (scanning degrees against h upwards).
///
/// For a wall `Gamma` with `a = Gamma.h > 0` and `b = -Gamma.L > 0`, the span
/// of (h, L, Gamma) carries at most one positive direction, which forces
///
/// ```text
///   h.h b^2 + 2ab h.L + a^2 L.L <= 2 ((h.L)^2 - h.h L.L)
/// ```
///
/// so `a` is bounded and the scan is finite. When L is proportional to h the
/// right side vanishes and no wall can exist.
fn nef_wall(
    surface: &PolarizedSurface,
    l: &DivisorClass,
) -> Result<Option<DivisorClass>, CriteriaError> {
    let l_sq = surface.square(l);
    let h_sq = surface.square(surface.h());
    let hl = surface.degree_against_h(l);
    let disc = &hl * &hl - &h_sq * &l_sq;
    debug_assert!(!disc.is_negative());
    if disc.is_zero() {
        return Ok(None);
    }
    let rhs = BigInt::from(2) * disc;
    let minus_two = BigInt::from(-2);
    let mut a = BigInt::from(1);
    while &a * &a * &l_sq <= rhs {
        let candidates =
            surface.classes_with_degree_and_square(surface.h(), &a, &minus_two, false)?;
        for gamma in candidates {
            if surface.pair(&gamma, l).is_negative() {
                return Ok(Some(gamma));
            }
        }
        a += 1;
    }
    Ok(None)
}

/// True iff `l` pairs nonnegatively with every effective (-2)-class; on a
/// validated K3 lattice that is the whole nef test for a big class.
pub fn is_nef(surface: &PolarizedSurface, l: &DivisorClass) -> Result<Verdict, CriteriaError> {
    require_k3(surface)?;
    ensure_big(surface, l)?;
    Ok(match nef_wall(surface, l)? {
        None => Verdict::holds(),
        Some(wall) => Verdict {
            answer: false,
            clause: Clause::NotNef { wall },
            witness: None,
        },
    })
}

fn ensure_nef(surface: &PolarizedSurface, l: &DivisorClass) -> Result<(), CriteriaError> {
    match nef_wall(surface, l)? {
        None => Ok(()),
        Some(wall) => Err(CriteriaError::NotNef { wall }),
    }
}

/// Nef with no contracted (-2)-class: a contracted class is exactly a
/// violator of order 1, so the witness is reported in that shape.
pub fn is_ample(surface: &PolarizedSurface, l: &DivisorClass) -> Result<Verdict, CriteriaError> {
    require_k3(surface)?;
    ensure_big(surface, l)?;
    if let Some(wall) = nef_wall(surface, l)? {
        return Ok(Verdict {
            answer: false,
            clause: Clause::NotNef { wall },
            witness: None,
        });
    }
    let contracted =
        surface.classes_with_degree_and_square(l, &BigInt::zero(), &BigInt::from(-2), true)?;
    if let Some(gamma) = contracted.into_iter().next() {
        let witness = WitnessCertificate {
            self_intersection: BigInt::from(-2),
            degree: BigInt::zero(),
            k: 1,
            failing_degree: BigInt::from(2),
            kind: WitnessKind::NegTwoCurve,
            class: gamma,
        };
        return Ok(Verdict::violator(witness));
    }
    Ok(Verdict::holds())
}

/// Scans classes of nonnegative square subject to the violator chain, in
/// (square, degree, lex) order.
fn nonneg_family(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    l_sq: &BigInt,
    k: i64,
    birational: bool,
) -> Result<Option<WitnessCertificate>, CriteriaError> {
    let k_big = BigInt::from(k);
    let four_k_plus_2 = BigInt::from(4) * &k_big + 2;
    let four_k_plus_4 = BigInt::from(4) * &k_big + 4;
    let m_max = &k_big + 1;
    let mut m = BigInt::zero();
    while m <= m_max {
        if birational && *l_sq == four_k_plus_2 && m == k_big {
            m += 2;
            continue;
        }
        let equality_right = m == m_max;
        // both equality clauses demand L = 2D; their degree conditions can be
        // ruled out cell-wide
        if equality_right && *l_sq != four_k_plus_4 {
            m += 2;
            continue;
        }
        let c_lo = std::cmp::max(BigInt::from(2) * &m, BigInt::from(1));
        let c_hi = &m + &k_big + 1;
        let mut c = c_lo;
        while c <= c_hi {
            let equality_left = c == BigInt::from(2) * &m;
            if equality_left && *l_sq > four_k_plus_4 {
                c += 1;
                continue;
            }
            let candidates = surface.classes_with_degree_and_square(l, &c, &m, true)?;
            for d in candidates {
                if (equality_left || equality_right) && *l != d.scaled(&BigInt::from(2)) {
                    continue;
                }
                let failing_degree = &c - &m;
                return Ok(Some(WitnessCertificate {
                    self_intersection: m.clone(),
                    degree: c.clone(),
                    k,
                    failing_degree,
                    kind: WitnessKind::NonNegSquare,
                    class: d,
                }));
            }
            c += 1;
        }
        m += 2;
    }
    Ok(None)
}

/// Scans effective (-2)-classes of degree 0..k-1 against `l`. Any violator of
/// negative square contains a smooth rational component of no larger degree,
/// so searching (-2)-classes alone is complete.
fn neg_two_family(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    k: i64,
) -> Result<Option<WitnessCertificate>, CriteriaError> {
    let minus_two = BigInt::from(-2);
    for c in 0..k {
        let degree = BigInt::from(c);
        let candidates = surface.classes_with_degree_and_square(l, &degree, &minus_two, true)?;
        if let Some(gamma) = candidates.into_iter().next() {
            let failing_degree = &degree + 2;
            return Ok(Some(WitnessCertificate {
                self_intersection: minus_two,
                degree,
                k,
                failing_degree,
                kind: WitnessKind::NegTwoCurve,
                class: gamma,
            }));
        }
    }
    Ok(None)
}

/// Exhaustive search for a violating class, nonnegative squares first, the
/// canonically smallest witness (family, square, degree, lex order) returned.
fn violator_scan(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    l_sq: &BigInt,
    k: i64,
    mode: ViolatorMode,
) -> Result<Option<WitnessCertificate>, CriteriaError> {
    let birational = mode == ViolatorMode::Birational;
    if let Some(w) = nonneg_family(surface, l, l_sq, k, birational)? {
        return Ok(Some(w));
    }
    if mode == ViolatorMode::Full {
        if let Some(w) = neg_two_family(surface, l, k)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The canonically smallest violating class for the order-k criterion, or
/// `None` when the exhaustive search is empty. `l` must be big and nef.
pub fn find_violator(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    k: i64,
    mode: ViolatorMode,
) -> Result<Option<WitnessCertificate>, CriteriaError> {
    require_k3(surface)?;
    if k < 0 {
        return Err(CriteriaError::KTooSmall { min: 0 });
    }
    let l_sq = ensure_big(surface, l)?;
    ensure_nef(surface, l)?;
    violator_scan(surface, l, &l_sq, k, mode)
}

/// k-very ampleness of a big and nef class: the degree bound `L.L >= 4k`
/// together with the absence of violators. k-spannedness is equivalent, see
/// [`is_k_spanned`].
pub fn is_k_very_ample(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    k: i64,
) -> Result<Verdict, CriteriaError> {
    require_k3(surface)?;
    if k < 0 {
        return Err(CriteriaError::KTooSmall { min: 0 });
    }
    let l_sq = ensure_big(surface, l)?;
    ensure_nef(surface, l)?;
    if l_sq < BigInt::from(4) * BigInt::from(k) {
        return Ok(Verdict::degree_bound());
    }
    Ok(
        match violator_scan(surface, l, &l_sq, k, ViolatorMode::Full)? {
            Some(w) => Verdict::violator(w),
            None => Verdict::holds(),
        },
    )
}

/// Identical to [`is_k_very_ample`]: on K3 surfaces the two notions agree for
/// every k.
pub fn is_k_spanned(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    k: i64,
) -> Result<Verdict, CriteriaError> {
    is_k_very_ample(surface, l, k)
}

/// Base point freeness, decided as k-very ampleness of order zero: the only
/// possible violators are effective isotropic classes of degree 1 against L.
pub fn is_spanned(surface: &PolarizedSurface, l: &DivisorClass) -> Result<Verdict, CriteriaError> {
    is_k_very_ample(surface, l, 0)
}

fn ensure_spanned(surface: &PolarizedSurface, l: &DivisorClass) -> Result<(), CriteriaError> {
    let verdict = is_spanned(surface, l)?;
    if !verdict.answer {
        let witness = verdict
            .witness
            .expect("spannedness can only fail with a violator witness");
        return Err(CriteriaError::NotSpanned {
            witness: Box::new(witness),
        });
    }
    Ok(())
}

/// Birational k-very ampleness of a spanned and big class: the degree bound
/// plus the absence of violators of nonnegative square other than the single
/// exempt pair `(L.L, D.D) = (4k+2, k)`.
pub fn is_birationally_k_very_ample(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    k: i64,
) -> Result<Verdict, CriteriaError> {
    require_k3(surface)?;
    if k < 1 {
        return Err(CriteriaError::KTooSmall { min: 1 });
    }
    let l_sq = ensure_big(surface, l)?;
    ensure_spanned(surface, l)?;
    if l_sq < BigInt::from(4) * BigInt::from(k) {
        return Ok(Verdict::degree_bound());
    }
    Ok(
        match violator_scan(surface, l, &l_sq, k, ViolatorMode::Birational)? {
            Some(w) => Verdict::violator(w),
            None => Verdict::holds(),
        },
    )
}

/// Identical to [`is_birationally_k_very_ample`].
pub fn is_birationally_k_spanned(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    k: i64,
) -> Result<Verdict, CriteriaError> {
    is_birationally_k_very_ample(surface, l, k)
}

fn clifford_core(
    surface: &PolarizedSurface,
    l: &DivisorClass,
) -> Result<(i64, Option<i64>, i64), CriteriaError> {
    let l_sq = ensure_big(surface, l)?;
    ensure_spanned(surface, l)?;
    let k2: i64 = (&l_sq / BigInt::from(4))
        .to_i64()
        .and_then(|q| q.checked_add(1))
        .ok_or(CriteriaError::KRange)?;
    let mut k1 = None;
    for k in 1..=k2 {
        if nonneg_family(surface, l, &l_sq, k, false)?.is_some() {
            k1 = Some(k);
            break;
        }
    }
    let c = match k1 {
        Some(k1) => k1.min(k2) - 1,
        None => k2 - 1,
    };
    Ok((c, k1, k2))
}

fn exceptional_pair(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    l_sq: &BigInt,
    c: i64,
) -> Result<Option<(DivisorClass, DivisorClass)>, CriteriaError> {
    let k = c + 1;
    if violator_scan(surface, l, l_sq, k, ViolatorMode::Birational)?.is_some() {
        return Ok(None);
    }
    let contracted =
        surface.classes_with_degree_and_square(l, &BigInt::zero(), &BigInt::from(-2), true)?;
    let target_sq = BigInt::from(c) + 1;
    for gamma in contracted {
        let Some(d) = (l - &gamma).try_halved() else {
            continue;
        };
        if surface.square(&d) == target_sq
            && surface.pair(&d, &gamma) == BigInt::from(1)
            && surface.degree_against_h(&d).is_positive()
        {
            return Ok(Some((d, gamma)));
        }
    }
    Ok(None)
}

/// Whether every smooth curve in |L| has gonality c+3 instead of the usual
/// c+2; equivalent to a decomposition `L = 2D + Gamma` with `D.D = c+1`,
/// `Gamma.Gamma = -2`, `D.Gamma = 1` and no violator at order c+1 in the
/// birational sense. Returns the decomposition when it exists.
pub fn detect_exceptional(
    surface: &PolarizedSurface,
    l: &DivisorClass,
) -> Result<Option<(DivisorClass, DivisorClass)>, CriteriaError> {
    require_k3(surface)?;
    let (c, _, _) = clifford_core(surface, l)?;
    let l_sq = surface.square(l);
    exceptional_pair(surface, l, &l_sq, c)
}

/// Clifford index of the smooth curves in |L|, computed from the smallest
/// order admitting a violator of nonnegative square and the degree bound.
pub fn clifford_index(
    surface: &PolarizedSurface,
    l: &DivisorClass,
) -> Result<CliffordReport, CriteriaError> {
    require_k3(surface)?;
    let (c, k1, k2) = clifford_core(surface, l)?;
    let l_sq = surface.square(l);
    let decomposition = exceptional_pair(surface, l, &l_sq, c)?;
    Ok(CliffordReport {
        c,
        k1,
        k2,
        exceptional: decomposition.is_some(),
        decomposition,
    })
}

/// The minimal gonality of a smooth curve in |L|: `2 + max{k >= 1 : L is
/// birationally k-very ample}`, with the maximum read as 0 when already the
/// order-1 criterion fails. The result is always c+2 or c+3.
pub fn min_gonality(surface: &PolarizedSurface, l: &DivisorClass) -> Result<i64, CriteriaError> {
    require_k3(surface)?;
    let l_sq = ensure_big(surface, l)?;
    ensure_spanned(surface, l)?;
    let k2: i64 = (&l_sq / BigInt::from(4))
        .to_i64()
        .and_then(|q| q.checked_add(1))
        .ok_or(CriteriaError::KRange)?;
    let mut best = 0;
    for k in 1..=k2 {
        if l_sq < BigInt::from(4) * BigInt::from(k) {
            break;
        }
        if violator_scan(surface, l, &l_sq, k, ViolatorMode::Birational)?.is_some() {
            break;
        }
        best = k;
    }
    Ok(best + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    fn k3(rows: &[Vec<i64>], h: &[i64]) -> PolarizedSurface {
        PolarizedSurface::k3(
            Lattice::from_i64_rows(rows).unwrap(),
            DivisorClass::from_i64(h),
        )
        .unwrap()
    }

    fn cls(coords: &[i64]) -> DivisorClass {
        DivisorClass::from_i64(coords)
    }

    // the rank-2 lattice with basis D, Gamma, D.D = 2, Gamma.Gamma = -2,
    // D.Gamma = 1, polarized by h = 3D + Gamma
    fn exceptional_system() -> PolarizedSurface {
        k3(&[vec![2, 1], vec![1, -2]], &[3, 1])
    }

    // hyperbolic genus-4 lattice with basis E, B: E.E = 0, E.B = 2, B.B = 2
    fn genus4() -> PolarizedSurface {
        k3(&[vec![0, 2], vec![2, 2]], &[1, 1])
    }

    #[test]
    fn nef_examples() {
        assert!(is_nef(&exceptional_system(), &cls(&[2, 1])).unwrap().answer);

        let v = is_nef(&genus4(), &cls(&[-1, 3])).unwrap();
        assert!(!v.answer);
        assert_eq!(
            v.clause,
            Clause::NotNef {
                wall: cls(&[-1, 1])
            }
        );

        let quartic = k3(&[vec![4]], &[1]);
        assert!(is_nef(&quartic, &cls(&[2])).unwrap().answer);
    }

    #[test]
    fn nef_requires_big() {
        let s = genus4();
        assert_eq!(
            is_nef(&s, &cls(&[1, 0])).unwrap_err(),
            CriteriaError::NotBig
        );
        assert_eq!(
            is_nef(&s, &cls(&[-1, -1])).unwrap_err(),
            CriteriaError::NotBig
        );
    }

    #[test]
    fn ample_examples() {
        let quartic = k3(&[vec![4]], &[1]);
        assert!(is_ample(&quartic, &cls(&[1])).unwrap().answer);

        let v = is_ample(&exceptional_system(), &cls(&[2, 1])).unwrap();
        assert!(!v.answer);
        let w = v.witness.unwrap();
        assert_eq!(w.class, cls(&[0, 1]));
        assert_eq!(w.degree, BigInt::zero());

        assert!(is_ample(&genus4(), &cls(&[1, 1])).unwrap().answer);
    }

    #[test]
    fn spanned_examples() {
        assert!(is_spanned(&genus4(), &cls(&[1, 1])).unwrap().answer);

        // L = B over the lattice E.E = 0, E.B = 1, B.B = 2: a degree-1
        // isotropic class exists
        let s = k3(&[vec![0, 1], vec![1, 2]], &[1, 1]);
        let v = is_spanned(&s, &cls(&[0, 1])).unwrap();
        assert!(!v.answer);
        let w = v.witness.unwrap();
        assert_eq!(w.self_intersection, BigInt::zero());
        assert_eq!(w.degree, BigInt::from(1));

        let g2 = k3(&[vec![2]], &[1]);
        assert!(is_spanned(&g2, &cls(&[1])).unwrap().answer);
    }

    #[test]
    fn violator_examples() {
        let w = find_violator(&genus4(), &cls(&[1, 1]), 1, ViolatorMode::Full)
            .unwrap()
            .unwrap();
        assert_eq!(w.class, cls(&[1, 0]));
        assert_eq!(w.self_intersection, BigInt::zero());
        assert_eq!(w.degree, BigInt::from(2));
        assert_eq!(w.failing_degree, BigInt::from(2));

        let w = find_violator(&exceptional_system(), &cls(&[2, 1]), 2, ViolatorMode::Full)
            .unwrap()
            .unwrap();
        assert_eq!(w.class, cls(&[1, 0]));
        assert_eq!(w.self_intersection, BigInt::from(2));
        assert_eq!(w.degree, BigInt::from(5));
        assert_eq!(w.failing_degree, BigInt::from(3));

        assert!(find_violator(
            &exceptional_system(),
            &cls(&[2, 1]),
            2,
            ViolatorMode::Birational
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn k_very_ample_examples() {
        let quartic = k3(&[vec![4]], &[1]);
        assert!(is_k_very_ample(&quartic, &cls(&[1]), 1).unwrap().answer);

        let v = is_k_very_ample(&quartic, &cls(&[1]), 2).unwrap();
        assert!(!v.answer);
        assert_eq!(v.clause, Clause::DegreeBound);

        let v = is_k_very_ample(&genus4(), &cls(&[1, 1]), 1).unwrap();
        assert!(!v.answer);
        assert_eq!(v.witness.unwrap().class, cls(&[1, 0]));
    }

    #[test]
    fn birational_examples() {
        assert!(
            is_birationally_k_very_ample(&exceptional_system(), &cls(&[2, 1]), 2)
                .unwrap()
                .answer
        );

        let v = is_birationally_k_very_ample(&genus4(), &cls(&[1, 1]), 1).unwrap();
        assert!(!v.answer);
        assert_eq!(v.witness.unwrap().self_intersection, BigInt::zero());

        let oct = k3(&[vec![8]], &[1]);
        assert!(
            is_birationally_k_very_ample(&oct, &cls(&[1]), 1)
                .unwrap()
                .answer
        );
    }

    #[test]
    fn birational_rejects_k_zero() {
        assert_eq!(
            is_birationally_k_very_ample(&exceptional_system(), &cls(&[2, 1]), 0).unwrap_err(),
            CriteriaError::KTooSmall { min: 1 }
        );
    }

    #[test]
    fn clifford_examples() {
        let s = k3(&[vec![12]], &[1]);
        let report = clifford_index(&s, &cls(&[1])).unwrap();
        assert_eq!(report.c, 3);
        assert_eq!(report.k1, None);
        assert_eq!(report.k2, 4);
        assert!(!report.exceptional);

        let report = clifford_index(&genus4(), &cls(&[1, 1])).unwrap();
        assert_eq!(report.c, 0);
        assert_eq!(report.k1, Some(1));

        let report = clifford_index(&exceptional_system(), &cls(&[2, 1])).unwrap();
        assert_eq!(report.c, 1);
        assert_eq!(report.k1, Some(2));
        assert_eq!(report.k2, 3);
        assert!(report.exceptional);
    }

    #[test]
    fn exceptional_examples() {
        let pair = detect_exceptional(&exceptional_system(), &cls(&[2, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(pair.0, cls(&[1, 0]));
        assert_eq!(pair.1, cls(&[0, 1]));

        let s = k3(&[vec![12]], &[1]);
        assert!(detect_exceptional(&s, &cls(&[1])).unwrap().is_none());

        assert!(detect_exceptional(&genus4(), &cls(&[1, 1]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn gonality_examples() {
        assert_eq!(min_gonality(&genus4(), &cls(&[1, 1])).unwrap(), 2);
        assert_eq!(
            min_gonality(&exceptional_system(), &cls(&[2, 1])).unwrap(),
            4
        );
        let s = k3(&[vec![12]], &[1]);
        assert_eq!(min_gonality(&s, &cls(&[1])).unwrap(), 5);
    }

    #[test]
    fn unspanned_inputs_are_rejected_downstream() {
        let s = k3(&[vec![0, 1], vec![1, 2]], &[1, 1]);
        let l = cls(&[0, 1]);
        assert!(matches!(
            min_gonality(&s, &l).unwrap_err(),
            CriteriaError::NotSpanned { .. }
        ));
        assert!(matches!(
            clifford_index(&s, &l).unwrap_err(),
            CriteriaError::NotSpanned { .. }
        ));
        assert!(matches!(
            is_birationally_k_very_ample(&s, &l, 1).unwrap_err(),
            CriteriaError::NotSpanned { .. }
        ));
    }
}
