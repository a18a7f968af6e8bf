//! Deciders for Enriques surfaces: the minimal isotropic degree phi, k-very
//! ampleness, and the largest order of k-very ampleness with a classified
//! violator.
//!
//! On an Enriques surface k-very ampleness of a big and nef `L` is governed
//! entirely by two clauses: a nodal class of degree <= k-1 against L, or an
//! effective isotropic class of degree <= k+1. The isotropic clause is exact
//! on the numerical lattice (an isotropic class of positive degree against h
//! is genuinely effective); the nodal clause is exact relative to the
//! declared nodal set, since effectivity of (-2)-classes carries no numerical
//! signature here.

use crate::k3::{ensure_big, Clause, CriteriaError, Verdict, WitnessCertificate, WitnessKind};
use crate::lattice::DivisorClass;
use crate::surface::{PolarizedSurface, SurfaceKind};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// How the minimal violator fails, following the classification of minimal
/// violators by square and shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolatorType {
    /// A declared nodal class of minimal degree against L.
    Nodal,
    /// An effective isotropic class realizing phi.
    Isotropic,
    /// `L = 2D` with `D.D = 2`; fails first at order 1, and `D` decomposes
    /// as a sum of two isotropic classes of degree 2 against L.
    DoubleSquareTwo,
    /// `L = 2D` with `D.D = 4`; fails first at order 3, and `D` decomposes
    /// as a sum of two isotropic classes of degree 4 against L.
    DoubleSquareFour,
    /// No violating class (never produced: phi is always finite).
    None,
}

/// The phi invariant and the largest order of k-very ampleness, with the
/// classified violator at the first failing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnriquesReport {
    /// Minimal degree against L of an effective isotropic class.
    pub phi: i64,
    /// Largest k for which L is k-very ample; -1 when not even spanned.
    pub k_max: i64,
    pub violator_type: ViolatorType,
    pub witness: Option<WitnessCertificate>,
}

fn require_enriques(surface: &PolarizedSurface) -> Result<(), CriteriaError> {
    if surface.kind() != SurfaceKind::Enriques {
        return Err(CriteriaError::EnriquesOnly);
    }
    Ok(())
}

/// Big plus nonnegative degree against every declared nodal class. Isotropic
/// classes cannot obstruct nefness of a big class: an effective isotropic f
/// has f.h > 0, and together with L.L > 0, L.h > 0 the span of (h, L, f)
/// would otherwise carry two positive directions. With an incomplete nodal
/// set the check is conditional on the declared data.
pub fn check_big_and_nef(
    surface: &PolarizedSurface,
    l: &DivisorClass,
) -> Result<BigInt, CriteriaError> {
    require_enriques(surface)?;
    let l_sq = ensure_big(surface, l)?;
    for gamma in surface.nodal_classes() {
        if surface.pair(gamma, l).is_negative() {
            return Err(CriteriaError::NotNef {
                wall: gamma.clone(),
            });
        }
    }
    Ok(l_sq)
}

/// Nefness relative to the declared nodal set, as a verdict.
pub fn is_nef_declared(
    surface: &PolarizedSurface,
    l: &DivisorClass,
) -> Result<Verdict, CriteriaError> {
    require_enriques(surface)?;
    ensure_big(surface, l)?;
    for gamma in surface.nodal_classes() {
        if surface.pair(gamma, l).is_negative() {
            return Ok(Verdict {
                answer: false,
                clause: Clause::NotNef {
                    wall: gamma.clone(),
                },
                witness: None,
            });
        }
    }
    Ok(Verdict {
        answer: true,
        clause: Clause::NoViolator,
        witness: None,
    })
}

/// The smallest degree against L of an effective isotropic class, together
/// with a class realizing it. Always at most the integer square root of L.L,
/// so the scan terminates with a value.
pub fn phi(
    surface: &PolarizedSurface,
    l: &DivisorClass,
) -> Result<(i64, DivisorClass), CriteriaError> {
    let l_sq = check_big_and_nef(surface, l)?;
    let bound = l_sq.sqrt();
    let mut c = BigInt::from(1);
    while c <= bound {
        let found = surface.classes_with_degree_and_square(l, &c, &BigInt::zero(), true)?;
        if let Some(f) = found.into_iter().next() {
            let value = c.to_i64().ok_or(CriteriaError::KRange)?;
            return Ok((value, f));
        }
        c += 1;
    }
    unreachable!(
        "the rank-10 even unimodular hyperbolic lattice admits an effective isotropic \
         class of degree at most sqrt(L.L) for every big and nef L"
    )
}

fn nodal_minimum(surface: &PolarizedSurface, l: &DivisorClass) -> Option<(BigInt, DivisorClass)> {
    surface
        .nodal_classes()
        .iter()
        .map(|g| (surface.pair(g, l), g.clone()))
        .min()
}

/// k-very ampleness on an Enriques surface. Checks the nodal clause first,
/// then the isotropic clause via phi. Equivalent to k-spannedness, see
/// [`is_k_spanned_enriques`]. Exact when the declared nodal set is complete
/// (in particular for unnodal surfaces); otherwise sound relative to the
/// declared data — the isotropic clause is always exact.
pub fn is_k_very_ample_enriques(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    k: i64,
) -> Result<Verdict, CriteriaError> {
    if k < 0 {
        return Err(CriteriaError::KTooSmall { min: 0 });
    }
    check_big_and_nef(surface, l)?;
    if let Some((degree, gamma)) = nodal_minimum(surface, l) {
        if degree < BigInt::from(k) {
            let failing_degree = &degree + 2;
            return Ok(Verdict {
                answer: false,
                clause: Clause::ViolatorFound,
                witness: Some(WitnessCertificate {
                    class: gamma,
                    self_intersection: BigInt::from(-2),
                    degree,
                    k,
                    failing_degree,
                    kind: WitnessKind::NegTwoCurve,
                }),
            });
        }
    }
    let (phi_value, f) = phi(surface, l)?;
    if phi_value <= k + 1 {
        return Ok(Verdict {
            answer: false,
            clause: Clause::ViolatorFound,
            witness: Some(WitnessCertificate {
                class: f,
                self_intersection: BigInt::zero(),
                degree: BigInt::from(phi_value),
                k,
                failing_degree: BigInt::from(phi_value),
                kind: WitnessKind::NonNegSquare,
            }),
        });
    }
    Ok(Verdict {
        answer: true,
        clause: Clause::NoViolator,
        witness: None,
    })
}

/// Identical to [`is_k_very_ample_enriques`].
pub fn is_k_spanned_enriques(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    k: i64,
) -> Result<Verdict, CriteriaError> {
    is_k_very_ample_enriques(surface, l, k)
}

/// The largest k for which L is k-very ample: the minimum of the smallest
/// nodal degree and phi - 2. The violator at order k_max + 1 is classified;
/// a nodal witness wins ties, and when `L = 2D` integrally with `D.D` equal
/// to 2 or 4 at the matching order the doubled shape is reported instead of
/// the isotropic one.
pub fn max_k_enriques(
    surface: &PolarizedSurface,
    l: &DivisorClass,
) -> Result<EnriquesReport, CriteriaError> {
    check_big_and_nef(surface, l)?;
    let (phi_value, f) = phi(surface, l)?;
    let nodal = nodal_minimum(surface, l);
    let phi_bound = phi_value - 2;
    let (k_max, nodal_attains) = match &nodal {
        Some((degree, _)) => {
            let nd = degree.to_i64().ok_or(CriteriaError::KRange)?;
            (nd.min(phi_bound), nd <= phi_bound)
        }
        None => (phi_bound, false),
    };
    let k0 = k_max + 1;

    if nodal_attains {
        let (degree, gamma) = nodal.expect("nodal minimum attained");
        let failing_degree = &degree + 2;
        return Ok(EnriquesReport {
            phi: phi_value,
            k_max,
            violator_type: ViolatorType::Nodal,
            witness: Some(WitnessCertificate {
                class: gamma,
                self_intersection: BigInt::from(-2),
                degree,
                k: k0,
                failing_degree,
                kind: WitnessKind::NegTwoCurve,
            }),
        });
    }

    if let Some(d) = l.try_halved() {
        let d_sq = surface.square(&d);
        let doubled = if d_sq == BigInt::from(2) && k0 == 1 {
            Some(ViolatorType::DoubleSquareTwo)
        } else if d_sq == BigInt::from(4) && k0 == 3 {
            Some(ViolatorType::DoubleSquareFour)
        } else {
            None
        };
        if let Some(violator_type) = doubled {
            let degree = surface.pair(&d, l);
            let failing_degree = &degree - &d_sq;
            return Ok(EnriquesReport {
                phi: phi_value,
                k_max,
                violator_type,
                witness: Some(WitnessCertificate {
                    class: d,
                    self_intersection: d_sq,
                    degree,
                    k: k0,
                    failing_degree,
                    kind: WitnessKind::NonNegSquare,
                }),
            });
        }
    }

    Ok(EnriquesReport {
        phi: phi_value,
        k_max,
        violator_type: ViolatorType::Isotropic,
        witness: Some(WitnessCertificate {
            class: f,
            self_intersection: BigInt::zero(),
            degree: BigInt::from(phi_value),
            k: k0,
            failing_degree: BigInt::from(phi_value),
            kind: WitnessKind::NonNegSquare,
        }),
    })
}
