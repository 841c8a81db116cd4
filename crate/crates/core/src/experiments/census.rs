use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::json;

use super::{poly_strings, ExperimentReport, Limits, Mode, ReportParams, TupleSpace};
use crate::error::Result;
use crate::field::Field;
use crate::poly::Poly;
use crate::resolution::{minimal_free_resolution_with, BettiTable, GradedMap};

/// Distinct Betti tables of `R/(fs)` over the drawn tuples, in order of
/// first occurrence, with counts.
pub fn betti_census(degrees: &[u32], field: &Field, n: usize, mode: Mode, limits: Limits) -> Result<ExperimentReport> {
    let space = TupleSpace::new(field, n, degrees)?;
    let draws = space.draws(mode, limits.max_tuples)?;
    let tables: Vec<BettiTable> = draws
        .par_iter()
        .map(|(_, fs)| Ok(minimal_free_resolution_with(&GradedMap::cyclic(space.ring(), fs)?, limits.budget)?.betti()))
        .collect::<Result<_>>()?;

    let mut index: HashMap<&BettiTable, usize> = HashMap::new();
    let mut distinct: Vec<(&BettiTable, usize, u128, &[Poly])> = vec![];
    for ((id, fs), t) in draws.iter().zip(&tables) {
        match index.get(t) {
            Some(&k) => distinct[k].1 += 1,
            None => {
                index.insert(t, distinct.len());
                distinct.push((t, 1, *id, fs));
            }
        }
    }
    let records: Vec<_> = distinct
        .iter()
        .enumerate()
        .map(|(k, (t, count, first, fs))| {
            json!({
                "table_id": k,
                "count": count,
                "betti_hash": t.hash(),
                "betti": t.canonical(),
                "first_tuple_id": *first as u64,
                "first_tuple": poly_strings(fs).join(";"),
            })
        })
        .collect();
    let text: String = distinct
        .iter()
        .enumerate()
        .map(|(k, (t, count, _, _))| format!("table {k} ({count} tuples)\n{}", t.to_text(true)))
        .collect();
    let summary = json!({"tuples": draws.len(), "distinct_tables": distinct.len(), "tables": text});
    let params = ReportParams { degrees: degrees.to_vec(), field: field.descriptor().clone(), n: vec![n], mode, limits };
    Ok(ExperimentReport::new("census", params, summary, records))
}
