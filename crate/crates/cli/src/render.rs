//! Human-readable table output.

use crate::report::{QueryRecord, Report};
use std::fmt::Write;

fn vec_str(v: &[i64]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn header(record: &QueryRecord) -> String {
    let mut line = record.op.clone();
    if let Some(l) = &record.l {
        let _ = write!(line, " L={}", vec_str(l));
    }
    if let Some(k) = record.k {
        let _ = write!(line, " k={k}");
    }
    line
}

pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "surface: kind={} rank={} signature=({}, {}, {})",
        report.kind, report.rank, report.signature[0], report.signature[1], report.signature[2]
    );
    for (index, record) in report.results.iter().enumerate() {
        let mut status = String::new();
        if let Some(answer) = record.answer {
            let _ = write!(status, "{answer}");
        }
        if let Some(clause) = &record.clause {
            let _ = write!(status, "  [{clause}]");
        }
        if let Some(g) = record.gonality {
            let _ = write!(status, "gonality={g}");
        }
        if let Some(phi) = record.phi {
            let _ = write!(status, "phi={phi}");
        }
        if let Some(c) = &record.clifford {
            let _ = write!(
                status,
                "c={} k1={} k2={} exceptional={}",
                c.c,
                c.k1.map_or("none".to_string(), |k| k.to_string()),
                c.k2,
                c.exceptional
            );
        }
        if let Some(m) = &record.max_k {
            let _ = write!(
                status,
                "k_max={} phi={} violator={}",
                m.k_max, m.phi, m.violator_type
            );
        }
        if record.scan.is_some() {
            let _ = write!(status, "table below");
        }
        if let Some(error) = &record.error {
            let _ = write!(status, "error: {error}");
        }
        let _ = writeln!(
            out,
            "#{index} {:<32} -> {}  ({} us)",
            header(record),
            status,
            record.time_us
        );
        if let Some(w) = &record.witness {
            let _ = writeln!(
                out,
                "     witness: D={}  D.D={}  D.L={}  F.D={}  kind={}  at k={}",
                vec_str(&w.class),
                w.self_intersection,
                w.degree,
                w.failing_degree,
                w.kind,
                w.k
            );
        }
        if let Some(wall) = &record.wall {
            let _ = writeln!(out, "     wall: {}", vec_str(wall));
        }
        if let Some(e) = &record.exceptional {
            let _ = writeln!(
                out,
                "     decomposition: L = 2D + Gamma with D={}, Gamma={}",
                vec_str(&e.d),
                vec_str(&e.gamma)
            );
        }
        if let Some(c) = &record.clifford {
            if let Some(e) = &c.decomposition {
                let _ = writeln!(
                    out,
                    "     decomposition: L = 2D + Gamma with D={}, Gamma={}",
                    vec_str(&e.d),
                    vec_str(&e.gamma)
                );
            }
        }
        if let Some(rows) = &record.scan {
            let _ = writeln!(out, "     k    kva    birkva");
            for row in rows {
                let bir = row.birkva.map_or("-".to_string(), |b| b.to_string());
                let _ = writeln!(out, "     {:<4} {:<6} {}", row.k, row.kva, bir);
            }
        }
        if let Some(citation) = &record.citation {
            let _ = writeln!(out, "     reason: {citation}");
        }
    }
    out
}

/// The built-in Enriques gram matrix in its documented basis order.
pub fn render_enriques_lattice() -> String {
    let gram = polaramp_core::enriques_gram();
    let labels = polaramp_core::enriques_basis_labels();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "rank-10 even unimodular lattice of signature (1, 9): hyperbolic plane + eight (-2)-vectors"
    );
    let _ = writeln!(out, "basis order: {}", labels.join(", "));
    let _ = write!(out, "    ");
    for label in labels {
        let _ = write!(out, "{label:>4}");
    }
    let _ = writeln!(out);
    for (i, row) in gram.iter().enumerate() {
        let _ = write!(out, "{:>4}", labels[i]);
        for entry in row {
            let _ = write!(out, "{entry:>4}");
        }
        let _ = writeln!(out);
    }
    out
}
