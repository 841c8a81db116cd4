use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use super::{poly_strings, ExperimentReport, Limits, Mode, ReportParams, TupleSpace};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{is_regular_sequence_with, RegSeqMethod};
use crate::strength::{collective_strength_with, StrengthOracle, StrengthValue};

/// Records collective strength and regularity for every tuple and reports
/// `N̂ = 1 + max` collective strength over the non-regular tuples (0 if all
/// tuples are regular).
pub fn threshold_search(degrees: &[u32], field: &Field, n: usize, mode: Mode, limits: Limits) -> Result<ExperimentReport> {
    let space = TupleSpace::new(field, n, degrees)?;
    let draws = space.draws(mode, limits.max_tuples)?;
    let oracle = StrengthOracle::new(limits.strength_tests);
    let rows: Vec<(u128, Vec<String>, StrengthValue, bool)> = draws
        .par_iter()
        .map(|(id, fs)| {
            let cs = collective_strength_with(fs, &oracle)?.value;
            let regular = is_regular_sequence_with(fs, RegSeqMethod::Codim, limits.budget)?;
            Ok((*id, poly_strings(fs), cs, regular))
        })
        .collect::<Result<_>>()?;

    let n_hat = rows
        .iter()
        .filter(|r| !r.3)
        .map(|r| r.2)
        .max()
        .map_or(StrengthValue::Finite(0), |m| match m {
            StrengthValue::Finite(v) => StrengthValue::Finite(v + 1),
            StrengthValue::Infinity => StrengthValue::Infinity,
        });
    if let Some(bad) = rows.iter().find(|r| !r.3 && r.2 >= n_hat) {
        return Err(Error::Invariant(format!("tuple {} is non-regular with collective strength {}", bad.0, bad.2)));
    }

    // census of (collective strength, regular) pairs
    let mut census: BTreeMap<(StrengthValue, bool), usize> = BTreeMap::new();
    for r in &rows {
        *census.entry((r.2, r.3)).or_default() += 1;
    }
    let census: Vec<_> = census
        .into_iter()
        .map(|((cs, regular), count)| json!({"collective_strength": cs, "regular": regular, "count": count}))
        .collect();
    let summary = json!({
        "tuples": rows.len(),
        "non_regular": rows.iter().filter(|r| !r.3).count(),
        "n_hat": n_hat,
        "consistent": true,
        "census": census,
        "caveat": "N-hat is measured for these (degrees, field, n) only",
    });
    let records = rows
        .into_iter()
        .map(|(id, fs, cs, regular)| {
            json!({"tuple_id": id as u64, "tuple": fs.join(";"), "collective_strength": cs, "regular": regular})
        })
        .collect();
    let params = ReportParams { degrees: degrees.to_vec(), field: field.descriptor().clone(), n: vec![n], mode, limits };
    Ok(ExperimentReport::new("threshold", params, summary, records))
}
