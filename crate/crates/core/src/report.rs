//! Analysis summaries, seed documents, sweep tables and their JSON, CSV and
//! LaTeX renderings.

use crate::closed::{block_counts_closed, center_generators, corank_closed, degree_from_blocks, det_closed, BlockCountReport};
use crate::error::Result;
use crate::families::{build_h, FamilyKind, FamilySpec};
use crate::json::{matrix_value, spec_value};
use crate::linalg::{det, rank, skew_normal_form};
use crate::scalar::Scalar;
use crate::seeds::{CompatiblePair, TruncatedPair};
use crate::verify::{verify_inverse, verify_lambda, verify_seeds};
use crate::{Int, Matrix};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub spec: FamilySpec,
    pub corank: usize,
    pub det: Int,
    /// Block value → multiplicity in the skew normal form.
    pub blocks: BTreeMap<Int, usize>,
    pub degree: BTreeMap<u64, Int>,
    pub warnings: Vec<String>,
    pub centers: Vec<String>,
}

pub fn analyze(spec: &FamilySpec, ms: &[u64]) -> Result<Analysis> {
    let h = build_h(spec)?;
    let form = skew_normal_form(&h)?;
    let mut blocks = BTreeMap::new();
    for d in &form.block_values {
        *blocks.entry(d.clone()).or_insert(0) += 1;
    }
    let mut degree = BTreeMap::new();
    let mut warnings = Vec::new();
    for &m in ms {
        degree.insert(m, degree_from_blocks(&form.block_values, m));
        if m % 2 == 0 {
            warnings.push(format!("m={m} is even; parity effects are not modelled"));
        }
    }
    let centers = if matches!(spec.kind, FamilyKind::Frt | FamilyKind::DipperDonkin) {
        center_generators(spec)?.into_iter().map(|g| g.label).collect()
    } else {
        Vec::new()
    };
    Ok(Analysis {
        spec: spec.clone(),
        corank: form.corank,
        det: det(&h)?,
        blocks,
        degree,
        warnings,
        centers,
    })
}

pub fn analysis_value(a: &Analysis) -> Value {
    let blocks: Map<String, Value> = a.blocks.iter().map(|(d, k)| (d.to_string(), json!(k))).collect();
    let degree: Map<String, Value> = a.degree.iter().map(|(m, d)| (m.to_string(), json!(d.to_string()))).collect();
    let mut v = json!({
        "spec": spec_value(&a.spec),
        "corank": a.corank,
        "det": a.det.to_string(),
        "blocks": blocks,
        "degree": degree,
        "centerGenerators": a.centers,
    });
    if !a.warnings.is_empty() {
        v["warnings"] = json!(a.warnings);
    }
    v
}

pub fn seed_value(pair: &CompatiblePair, truncated: Option<&TruncatedPair>) -> Value {
    let mut v = json!({
        "family": spec_value(&pair.family),
        "lambda": matrix_value(&pair.lambda),
        "bTilde": matrix_value(&pair.b_tilde),
        "c": pair.c,
        "frozen": [],
        "blockParams": pair.params_note,
        "basisChange": matrix_value(&pair.basis_change),
    });
    if let Some(t) = truncated {
        v["frozen"] = json!(t.frozen.iter().map(|&(a, j)| [a, j]).collect::<Vec<_>>());
        v["mutable"] = json!(t.mutable);
        v["b"] = matrix_value(&t.b);
    }
    v
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub families: Vec<FamilyKind>,
    pub n_range: (usize, usize),
    pub r_range: (usize, usize),
    pub ms: Vec<u64>,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub family: FamilyKind,
    pub n: usize,
    pub r: usize,
    pub corank_closed: Option<usize>,
    pub corank: usize,
    pub det: Int,
    pub det_closed: Option<Int>,
    pub observed: Option<BlockCountReport>,
    pub expected: Option<BlockCountReport>,
    pub degree: BTreeMap<u64, Int>,
    pub verdicts: Vec<(String, bool)>,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.verdicts.iter().filter(|(_, ok)| !ok).map(|(c, _)| c.as_str()).collect()
    }
}

pub fn sweep_row(kind: FamilyKind, n: usize, r: usize, ms: &[u64], cap: usize) -> Result<SweepRow> {
    let spec = FamilySpec::named(kind, n, r);
    let h = build_h(&spec)?;
    let corank = h.rows() - rank(&h);
    let form = skew_normal_form(&h)?;
    let observed = BlockCountReport::observed(&form);
    let expected = Some(block_counts_closed(&spec)?);
    let corank_closed = match kind {
        FamilyKind::Extended => expected.as_ref().map(|e| e.corank),
        _ => Some(corank_closed(&spec)?),
    };
    let det_h = det(&h)?;
    let det_c = if kind == FamilyKind::Extended { None } else { det_closed(&spec)? };
    let degree = ms.iter().map(|&m| (m, degree_from_blocks(&form.block_values, m))).collect();

    let mut verdicts = vec![("corank".to_string(), corank_closed.is_none_or(|c| c == corank))];
    if let Some(d) = &det_c {
        verdicts.push(("det".into(), *d == det_h));
    }
    if let Some(e) = &expected {
        verdicts.push(("blocks".into(), observed.as_ref() == Some(e)));
    }
    if kind != FamilyKind::Extended {
        verdicts.push(("lambda".into(), verify_lambda(&spec, cap)?.passed));
    }
    if matches!(kind, FamilyKind::Frt | FamilyKind::DipperDonkin) {
        verdicts.push(("inverse".into(), verify_inverse(&spec)?.passed));
        verdicts.push(("seeds".into(), verify_seeds(&spec)?.passed));
    }
    Ok(SweepRow {
        family: kind,
        n,
        r,
        corank_closed,
        corank,
        det: det_h,
        det_closed: det_c,
        observed,
        expected,
        degree,
        verdicts,
    })
}

/// One row per `(family, n, r)`, sorted; jobs run on the current rayon pool.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let jobs: Vec<(FamilyKind, usize, usize)> = cfg
        .families
        .iter()
        .flat_map(|&k| {
            (cfg.n_range.0..=cfg.n_range.1).flat_map(move |n| (cfg.r_range.0..=cfg.r_range.1).map(move |r| (k, n, r)))
        })
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|&(k, n, r)| sweep_row(k, n, r, &cfg.ms, cfg.cap))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|row| (row.family.code(), row.n, row.r));
    Ok(rows)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn counts(b: &Option<BlockCountReport>) -> [String; 3] {
    match b {
        Some(b) => [b.ones.to_string(), b.twos.to_string(), b.fours.to_string()],
        None => Default::default(),
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let ms: Vec<u64> = rows.first().map(|r| r.degree.keys().copied().collect()).unwrap_or_default();
    let mut head = vec![
        "family", "n", "r", "corank_closed", "corank", "det", "det_closed", "ones", "twos", "fours",
    ]
    .into_iter()
    .map(String::from)
    .collect::<Vec<_>>();
    head.extend(ms.iter().map(|m| format!("degree_m{m}")));
    head.push("verdict".into());
    let mut out = head.join(",") + "\n";
    for row in rows {
        let [o, t, f] = counts(&row.observed);
        let mut cells = vec![
            row.family.code().to_string(),
            row.n.to_string(),
            row.r.to_string(),
            opt(&row.corank_closed),
            row.corank.to_string(),
            row.det.to_string(),
            opt(&row.det_closed),
            o,
            t,
            f,
        ];
        cells.extend(row.degree.values().map(ToString::to_string));
        cells.push(verdict_cell(row));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn verdict_cell(row: &SweepRow) -> String {
    if row.passed() {
        "PASS".into()
    } else {
        format!("FAIL:{}", row.failures().join("|"))
    }
}

pub fn sweep_json(rows: &[SweepRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                let blocks = |b: &Option<BlockCountReport>| {
                    b.as_ref().map(|b| json!({"1": b.ones, "2": b.twos, "4": b.fours, "corank": b.corank}))
                };
                let degree: Map<String, Value> =
                    row.degree.iter().map(|(m, d)| (m.to_string(), json!(d.to_string()))).collect();
                let verdicts: Map<String, Value> = row.verdicts.iter().map(|(c, ok)| (c.clone(), json!(ok))).collect();
                json!({
                    "family": row.family.code(),
                    "n": row.n,
                    "r": row.r,
                    "corankClosed": row.corank_closed,
                    "corank": row.corank,
                    "det": row.det.to_string(),
                    "detClosed": row.det_closed.as_ref().map(ToString::to_string),
                    "blocks": blocks(&row.observed),
                    "blocksClosed": blocks(&row.expected),
                    "degree": degree,
                    "verdicts": verdicts,
                    "passed": row.passed(),
                })
            })
            .collect(),
    )
}

pub fn sweep_latex(rows: &[SweepRow]) -> String {
    let mut out = String::from("\\begin{tabular}{lrrrrrrrrl}\n\\hline\n");
    out.push_str("family & $n$ & $r$ & corank & closed & $\\det H$ & 1 & 2 & 4 & verdict \\\\\n\\hline\n");
    for row in rows {
        let [o, t, f] = counts(&row.observed);
        out.push_str(&format!(
            "{} & {} & {} & {} & {} & {} & {o} & {t} & {f} & {} \\\\\n",
            row.family.code(),
            row.n,
            row.r,
            row.corank,
            opt(&row.corank_closed),
            row.det,
            verdict_cell(row)
        ));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

/// Block-partitioned `array` environment; `block` sets the partition size.
pub fn matrix_latex<T: Scalar>(m: &Matrix<T>, block: Option<usize>) -> String {
    let b = block.filter(|&b| b > 0 && b < m.cols().max(m.rows()));
    let spec: String = (0..m.cols())
        .map(|j| match b {
            Some(b) if j > 0 && j % b == 0 => "|c",
            _ => "c",
        })
        .collect();
    let mut out = format!("\\left(\\begin{{array}}{{{spec}}}\n");
    for i in 0..m.rows() {
        if let Some(b) = b {
            if i > 0 && i % b == 0 {
                out.push_str("\\hline\n");
            }
        }
        let cells: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" & "));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{array}\\right)\n");
    out
}

pub fn matrix_csv<T: Scalar>(m: &Matrix<T>) -> String {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}
