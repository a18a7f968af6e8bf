//! Query evaluation and the machine-readable report.
//!
//! Reports carry integers only; serialization goes through a sorted-key JSON
//! value so that emitted output re-parses and re-serializes byte-identically.

use crate::schema::{Kind, Op, QueryFile, QuerySpec};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use polaramp_core::{
    enriques, k3, Clause, CriteriaError, DivisorClass, Lattice, PolarizedSurface, SurfaceKind,
    Verdict, WitnessCertificate, WitnessKind,
};
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid surface: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Surface(Vec<polaramp_core::ValidationError>),
    #[error("invalid gram matrix: {0}")]
    Gram(#[from] polaramp_core::LatticeError),
    #[error("query {index}: {message}")]
    Query { index: usize, message: String },
    #[error("value does not fit a 64-bit integer")]
    Overflow,
}

#[derive(Debug, Clone, Default)]
pub struct RunFlags {
    /// Overrides the upper bound of every `scan` query.
    pub max_k: Option<i64>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub kind: String,
    pub rank: usize,
    pub signature: [usize; 3],
    pub results: Vec<QueryRecord>,
}

#[derive(Debug, Serialize, Default)]
pub struct QueryRecord {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answer: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clifford: Option<CliffordRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gonality: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_k: Option<MaxKRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<ExceptionalRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<Vec<ScanRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub time_us: u64,
}

#[derive(Debug, Serialize)]
pub struct WitnessRecord {
    pub class: Vec<i64>,
    pub self_intersection: i64,
    pub degree: i64,
    pub failing_degree: i64,
    pub k: i64,
    pub kind: String,
}

#[derive(Debug, Serialize)]
pub struct CliffordRecord {
    pub c: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<i64>,
    pub k2: i64,
    pub exceptional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<ExceptionalRecord>,
}

#[derive(Debug, Serialize)]
pub struct ExceptionalRecord {
    pub d: Vec<i64>,
    pub gamma: Vec<i64>,
}

#[derive(Debug, Serialize)]
pub struct MaxKRecord {
    pub phi: i64,
    pub k_max: i64,
    pub violator_type: String,
}

#[derive(Debug, Serialize)]
pub struct ScanRow {
    pub k: i64,
    pub kva: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub birkva: Option<bool>,
}

fn to_i64(value: &BigInt) -> Result<i64, RunError> {
    value.to_i64().ok_or(RunError::Overflow)
}

fn class_to_vec(class: &DivisorClass) -> Result<Vec<i64>, RunError> {
    class.coords().iter().map(to_i64).collect()
}

fn witness_record(w: &WitnessCertificate) -> Result<WitnessRecord, RunError> {
    Ok(WitnessRecord {
        class: class_to_vec(&w.class)?,
        self_intersection: to_i64(&w.self_intersection)?,
        degree: to_i64(&w.degree)?,
        failing_degree: to_i64(&w.failing_degree)?,
        k: w.k,
        kind: match w.kind {
            WitnessKind::NegTwoCurve => "neg-two-curve",
            WitnessKind::NonNegSquare => "non-neg-square",
            WitnessKind::Exceptional => "exceptional",
        }
        .to_string(),
    })
}

fn clause_name(clause: &Clause) -> &'static str {
    match clause {
        Clause::DegreeBound => "degree-bound",
        Clause::NoViolator => "no-violator",
        Clause::ViolatorFound => "violator-found",
        Clause::NotSpanned => "not-spanned",
        Clause::NotNef { .. } => "not-nef",
        Clause::NotBig => "not-big",
    }
}

fn violator_citation(kind: Kind, w: &WitnessCertificate) -> String {
    match (kind, w.kind) {
        (Kind::K3, WitnessKind::NegTwoCurve) => {
            "effective (-2)-class D with 0 <= D.L <= k-1".to_string()
        }
        (Kind::K3, _) => "effective D with 2 D.D <= D.L <= D.D + k + 1 <= 2k + 2".to_string(),
        (Kind::Enriques, WitnessKind::NegTwoCurve) => {
            "declared nodal class with degree <= k-1 against L".to_string()
        }
        (Kind::Enriques, _) => "effective isotropic class with degree <= k+1 against L".to_string(),
    }
}

fn fill_verdict(
    record: &mut QueryRecord,
    verdict: &Verdict,
    kind: Kind,
    positive_citation: &str,
) -> Result<(), RunError> {
    record.answer = Some(verdict.answer);
    record.clause = Some(clause_name(&verdict.clause).to_string());
    if let Clause::NotNef { wall } = &verdict.clause {
        record.wall = Some(class_to_vec(wall)?);
        record.citation = Some("effective (-2)-class with negative degree against L".to_string());
    }
    if let Some(w) = &verdict.witness {
        record.citation = Some(violator_citation(kind, w));
        record.witness = Some(witness_record(w)?);
    }
    if verdict.answer {
        record.citation = Some(positive_citation.to_string());
    } else if verdict.clause == Clause::DegreeBound {
        record.citation =
            Some("L.L < 4k forces failing schemes of degree <= k+1 on smooth members".to_string());
    }
    Ok(())
}

fn fill_error(record: &mut QueryRecord, error: &CriteriaError) {
    record.error = Some(error.to_string());
    let clause = match error {
        CriteriaError::NotBig => Some("not-big"),
        CriteriaError::NotNef { .. } => Some("not-nef"),
        CriteriaError::NotSpanned { .. } => Some("not-spanned"),
        _ => None,
    };
    record.clause = clause.map(str::to_string);
    if let CriteriaError::NotNef { wall } = error {
        record.wall = class_to_vec(wall).ok();
    }
}

fn scan_bound(
    surface: &PolarizedSurface,
    l: &DivisorClass,
    spec_k: Option<i64>,
    flags: &RunFlags,
) -> i64 {
    if let Some(k) = flags.max_k.or(spec_k) {
        return k;
    }
    let l_sq = surface.square(l);
    (&l_sq / BigInt::from(4))
        .to_i64()
        .map_or(i64::MAX, |q| q + 1)
}

fn evaluate_k3(
    surface: &PolarizedSurface,
    spec: &QuerySpec,
    record: &mut QueryRecord,
    flags: &RunFlags,
) -> Result<(), RunError> {
    let l = spec.l.as_ref().map(|coords| DivisorClass::from_i64(coords));
    match spec.op {
        Op::Validate => {
            record.answer = Some(true);
            record.citation = Some("surface data satisfies every validation rule".to_string());
        }
        Op::Nef => {
            let l = l.expect("checked by prepass");
            match k3::is_nef(surface, &l) {
                Ok(v) => fill_verdict(
                    record,
                    &v,
                    Kind::K3,
                    "no effective (-2)-class pairs negatively with L",
                )?,
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Ample => {
            let l = l.expect("checked by prepass");
            match k3::is_ample(surface, &l) {
                Ok(v) => fill_verdict(
                    record,
                    &v,
                    Kind::K3,
                    "nef and no (-2)-class of degree zero against L",
                )?,
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Spanned => {
            let l = l.expect("checked by prepass");
            match k3::is_spanned(surface, &l) {
                Ok(v) => fill_verdict(
                    record,
                    &v,
                    Kind::K3,
                    "no effective isotropic class of degree 1 against L",
                )?,
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Kva | Op::Kspanned => {
            let l = l.expect("checked by prepass");
            let k = spec.k.expect("checked by prepass");
            match k3::is_k_very_ample(surface, &l, k) {
                Ok(v) => fill_verdict(
                    record,
                    &v,
                    Kind::K3,
                    "L.L >= 4k and the exhaustive violator search is empty",
                )?,
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Birkva => {
            let l = l.expect("checked by prepass");
            let k = spec.k.expect("checked by prepass");
            match k3::is_birationally_k_very_ample(surface, &l, k) {
                Ok(v) => fill_verdict(
                    record,
                    &v,
                    Kind::K3,
                    "L.L >= 4k and no violator of nonnegative square outside the exempt pair",
                )?,
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Clifford => {
            let l = l.expect("checked by prepass");
            match k3::clifford_index(surface, &l) {
                Ok(report) => {
                    let decomposition = match &report.decomposition {
                        Some((d, gamma)) => Some(ExceptionalRecord {
                            d: class_to_vec(d)?,
                            gamma: class_to_vec(gamma)?,
                        }),
                        None => None,
                    };
                    record.clifford = Some(CliffordRecord {
                        c: report.c,
                        k1: report.k1,
                        k2: report.k2,
                        exceptional: report.exceptional,
                        decomposition,
                    });
                    record.citation = Some(
                        "c = min(k1, k2) - 1 over violators of nonnegative square".to_string(),
                    );
                }
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Gonality => {
            let l = l.expect("checked by prepass");
            match k3::min_gonality(surface, &l) {
                Ok(g) => {
                    record.gonality = Some(g);
                    record.citation = Some(
                        "2 + the largest k for which L is birationally k-very ample".to_string(),
                    );
                }
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Exceptional => {
            let l = l.expect("checked by prepass");
            match k3::detect_exceptional(surface, &l) {
                Ok(Some((d, gamma))) => {
                    record.answer = Some(true);
                    let gamma_l = to_i64(&surface.pair(&gamma, &l))?;
                    record.witness = Some(WitnessRecord {
                        class: class_to_vec(&gamma)?,
                        self_intersection: -2,
                        degree: gamma_l,
                        failing_degree: gamma_l + 2,
                        k: 0,
                        kind: "exceptional".to_string(),
                    });
                    record.exceptional = Some(ExceptionalRecord {
                        d: class_to_vec(&d)?,
                        gamma: class_to_vec(&gamma)?,
                    });
                    record.citation = Some(
                        "L = 2D + Gamma with D.D = c+1, Gamma.Gamma = -2, D.Gamma = 1".to_string(),
                    );
                }
                Ok(None) => {
                    record.answer = Some(false);
                    record.citation = Some(
                        "no decomposition L = 2D + Gamma certifies constant gonality c+3"
                            .to_string(),
                    );
                }
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Scan => {
            let l = l.expect("checked by prepass");
            let bound = scan_bound(surface, &l, spec.k, flags);
            let mut rows = Vec::new();
            for k in 0..=bound {
                let kva = match k3::is_k_very_ample(surface, &l, k) {
                    Ok(v) => v.answer,
                    Err(e) => {
                        fill_error(record, &e);
                        return Ok(());
                    }
                };
                let birkva = if k >= 1 {
                    k3::is_birationally_k_very_ample(surface, &l, k)
                        .ok()
                        .map(|v| v.answer)
                } else {
                    None
                };
                rows.push(ScanRow { k, kva, birkva });
            }
            record.scan = Some(rows);
        }
        Op::Phi | Op::Kmax => unreachable!("rejected by the prepass"),
    }
    Ok(())
}

fn evaluate_enriques(
    surface: &PolarizedSurface,
    spec: &QuerySpec,
    record: &mut QueryRecord,
    flags: &RunFlags,
) -> Result<(), RunError> {
    let l = spec.l.as_ref().map(|coords| DivisorClass::from_i64(coords));
    match spec.op {
        Op::Validate => {
            record.answer = Some(true);
            record.citation = Some("surface data satisfies every validation rule".to_string());
        }
        Op::Nef => {
            let l = l.expect("checked by prepass");
            match enriques::is_nef_declared(surface, &l) {
                Ok(v) => fill_verdict(
                    record,
                    &v,
                    Kind::Enriques,
                    "nonnegative against every declared nodal class; isotropic classes \
                     cannot obstruct a big class",
                )?,
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Spanned => {
            let l = l.expect("checked by prepass");
            match enriques::is_k_very_ample_enriques(surface, &l, 0) {
                Ok(v) => fill_verdict(
                    record,
                    &v,
                    Kind::Enriques,
                    "no nodal or isotropic clause fires at order 0",
                )?,
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Kva | Op::Kspanned => {
            let l = l.expect("checked by prepass");
            let k = spec.k.expect("checked by prepass");
            match enriques::is_k_very_ample_enriques(surface, &l, k) {
                Ok(v) => fill_verdict(
                    record,
                    &v,
                    Kind::Enriques,
                    "every declared nodal class has degree >= k and phi(L) >= k+2",
                )?,
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Phi => {
            let l = l.expect("checked by prepass");
            match enriques::phi(surface, &l) {
                Ok((value, witness)) => {
                    record.phi = Some(value);
                    record.witness = Some(WitnessRecord {
                        class: class_to_vec(&witness)?,
                        self_intersection: 0,
                        degree: value,
                        failing_degree: value,
                        k: value - 1,
                        kind: "non-neg-square".to_string(),
                    });
                    record.citation = Some(
                        "smallest degree against L of an effective isotropic class".to_string(),
                    );
                }
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Kmax => {
            let l = l.expect("checked by prepass");
            match enriques::max_k_enriques(surface, &l) {
                Ok(report) => {
                    let violator_type = match report.violator_type {
                        enriques::ViolatorType::Nodal => "nodal",
                        enriques::ViolatorType::Isotropic => "isotropic",
                        enriques::ViolatorType::DoubleSquareTwo => "double-square-two",
                        enriques::ViolatorType::DoubleSquareFour => "double-square-four",
                        enriques::ViolatorType::None => "none",
                    };
                    record.max_k = Some(MaxKRecord {
                        phi: report.phi,
                        k_max: report.k_max,
                        violator_type: violator_type.to_string(),
                    });
                    if let Some(w) = &report.witness {
                        record.witness = Some(witness_record(w)?);
                    }
                    record.citation = Some(
                        "k_max = min(smallest nodal degree, phi - 2); doubled classes \
                         decompose as two isotropic classes of degree k+1"
                            .to_string(),
                    );
                }
                Err(e) => fill_error(record, &e),
            }
        }
        Op::Scan => {
            let l = l.expect("checked by prepass");
            let bound = scan_bound(surface, &l, spec.k, flags);
            let mut rows = Vec::new();
            for k in 0..=bound {
                match enriques::is_k_very_ample_enriques(surface, &l, k) {
                    Ok(v) => rows.push(ScanRow {
                        k,
                        kva: v.answer,
                        birkva: None,
                    }),
                    Err(e) => {
                        fill_error(record, &e);
                        return Ok(());
                    }
                }
            }
            record.scan = Some(rows);
        }
        Op::Ample | Op::Birkva | Op::Clifford | Op::Gonality | Op::Exceptional => {
            unreachable!("rejected by the prepass")
        }
    }
    Ok(())
}

fn prepass(file: &QueryFile) -> Result<(), RunError> {
    let rank = match file.kind {
        Kind::K3 => {
            let Some(gram) = &file.gram else {
                return Err(RunError::Query {
                    index: 0,
                    message: "k3 surfaces need a gram matrix".to_string(),
                });
            };
            if !file.nodal_classes.is_empty() {
                return Err(RunError::Query {
                    index: 0,
                    message: "nodal_classes are only accepted for enriques surfaces".to_string(),
                });
            }
            gram.len()
        }
        Kind::Enriques => {
            if file.gram.is_some() {
                return Err(RunError::Query {
                    index: 0,
                    message: "enriques surfaces use the built-in lattice; omit gram".to_string(),
                });
            }
            10
        }
    };
    for (index, spec) in file.queries.iter().enumerate() {
        if let Some(l) = &spec.l {
            if l.len() != rank {
                return Err(RunError::Query {
                    index,
                    message: format!("class L has length {}, lattice rank is {rank}", l.len()),
                });
            }
        }
        if !spec.op.supported_on(file.kind) {
            return Err(RunError::Query {
                index,
                message: format!("op {} is not defined for this surface kind", spec.op.name()),
            });
        }
        if spec.op.requires_class() && spec.l.is_none() {
            return Err(RunError::Query {
                index,
                message: format!("op {} needs a class L", spec.op.name()),
            });
        }
        if spec.op.requires_k() && spec.k.is_none() {
            return Err(RunError::Query {
                index,
                message: format!("op {} needs an order k", spec.op.name()),
            });
        }
        if spec.k.is_some() && !spec.op.accepts_k() {
            return Err(RunError::Query {
                index,
                message: format!("op {} does not take k", spec.op.name()),
            });
        }
    }
    Ok(())
}

pub fn build_surface(file: &QueryFile) -> Result<PolarizedSurface, RunError> {
    let h = DivisorClass::from_i64(&file.h);
    match file.kind {
        Kind::K3 => {
            let gram = file.gram.as_ref().expect("prepass requires gram");
            let lattice = Lattice::from_i64_rows(gram)?;
            PolarizedSurface::validate(lattice, SurfaceKind::K3, h, Vec::new())
                .map_err(RunError::Surface)
        }
        Kind::Enriques => {
            let nodal = file
                .nodal_classes
                .iter()
                .map(|coords| DivisorClass::from_i64(coords))
                .collect();
            PolarizedSurface::enriques(h, nodal).map_err(RunError::Surface)
        }
    }
}

/// Evaluates every query in order. Per-query precondition failures are
/// reported inside the records; only unparsable or unvalidatable input is an
/// error here.
pub fn run(file: &QueryFile, flags: &RunFlags) -> Result<Report, RunError> {
    prepass(file)?;
    let surface = build_surface(file)?;
    let sig = surface.lattice().signature();
    let mut results = Vec::with_capacity(file.queries.len());
    for spec in &file.queries {
        let started = Instant::now();
        let mut record = QueryRecord {
            op: spec.op.name().to_string(),
            l: spec.l.clone(),
            k: spec.k,
            ..QueryRecord::default()
        };
        match file.kind {
            Kind::K3 => evaluate_k3(&surface, spec, &mut record, flags)?,
            Kind::Enriques => evaluate_enriques(&surface, spec, &mut record, flags)?,
        }
        record.time_us = started.elapsed().as_micros() as u64;
        results.push(record);
    }
    Ok(Report {
        kind: match file.kind {
            Kind::K3 => "k3",
            Kind::Enriques => "enriques",
        }
        .to_string(),
        rank: surface.rank(),
        signature: [sig.positive, sig.negative, sig.zero],
        results,
    })
}

/// Canonical JSON: object keys sorted, integers only, stable across
/// parse/serialize round trips.
pub fn to_canonical_json(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    serde_json::to_string_pretty(&value).expect("json value prints")
}
