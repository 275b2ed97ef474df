//! Text and JSON renderings of command results.

use cocom_core::degeneration::{Limit, PageTable};
use cocom_core::strata::{enumerate_r, Chain};
use cocom_core::{GradedDims, RankVector};
use serde_json::{json, Value};

use crate::document::complex_json;

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Ranks as a bare number when there is a single differential.
fn rank_text(r: &[usize]) -> String {
    match r {
        [x] => x.to_string(),
        _ => tuple(r),
    }
}

pub fn poset_rows(dims: &GradedDims) -> Vec<(RankVector, Vec<usize>, bool, usize)> {
    enumerate_r(dims)
        .into_iter()
        .map(|r| {
            let h = r.cohomology_dims();
            let max = r.is_maximal();
            let dim = r.stratum_dim();
            (r, h, max, dim)
        })
        .collect()
}

pub fn poset_text(dims: &GradedDims) -> String {
    let rows = poset_rows(dims);
    let mut out = format!(
        "{:<16} {:>4}  {:<8} {:<16} {:>5}\n",
        "r", "|r|", "maximal", "h", "dim"
    );
    for (r, h, max, dim) in &rows {
        out.push_str(&format!(
            "{:<16} {:>4}  {:<8} {:<16} {:>5}\n",
            r.to_string(),
            r.len_sum(),
            if *max { "yes" } else { "no" },
            tuple(h),
            dim
        ));
    }
    let maximal = rows.iter().filter(|x| x.2).count();
    out.push_str(&format!("{} rank vectors, {maximal} maximal\n", rows.len()));
    out
}

pub fn poset_json(dims: &GradedDims) -> Value {
    Value::Array(
        poset_rows(dims)
            .into_iter()
            .map(|(r, h, max, dim)| {
                json!({
                    "r": r.as_slice(),
                    "size": r.len_sum(),
                    "maximal": max,
                    "h": h,
                    "stratum_dim": dim,
                })
            })
            .collect(),
    )
}

pub fn table_text(t: &PageTable) -> String {
    let mut out = String::new();
    for (a, row) in t.rows.iter().enumerate() {
        out.push_str(&format!(
            "  E{a}: dims {} ranks {}\n",
            tuple(&row.dims),
            tuple(&row.ranks)
        ));
    }
    out
}

pub fn chain_json(c: &Chain) -> Value {
    json!({
        "steps": c.steps().iter().map(|s| s.as_slice().to_vec()).collect::<Vec<_>>(),
        "terminal": c.terminal().map(|t| t.as_slice().to_vec()),
    })
}

pub fn limit_text(limit: &Limit) -> String {
    let mut out = String::from("page table:\n");
    out.push_str(&table_text(&limit.table));
    let pages: Vec<String> = limit
        .ss
        .differentials()
        .enumerate()
        .map(|(v, d)| format!("D{v} rank {}", rank_text(d.rank_vector().as_slice())))
        .collect();
    out.push_str(&format!("pages: {}\n", pages.join("; ")));
    out.push_str(&format!("final page: {}\n", limit.ss.final_page().dims()));
    match &limit.label {
        Some(l) => out.push_str(&format!("label: {l}\n")),
        None => out.push_str("label: none\n"),
    }
    out.push_str(&format!("reduced: {}\n", limit.reduced));
    out
}

pub fn limit_json(limit: &Limit) -> Value {
    let pages: Vec<Value> = limit.ss.differentials().map(complex_json).collect();
    let blocks: Vec<Value> = limit
        .decomposition
        .blocks
        .iter()
        .map(|b| {
            json!({
                "degree": b.degree,
                "exponent": b.exponent,
                "source": b.source,
                "target": b.target,
            })
        })
        .collect();
    json!({
        "pages": pages,
        "final": limit.ss.final_page().dims().as_slice(),
        "label": limit.label.as_ref().map(chain_json),
        "reduced": limit.reduced,
        "table": limit.table,
        "blocks": blocks,
    })
}
