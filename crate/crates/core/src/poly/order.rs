use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Monomial, RingCtx};

/// Monomial orders. Grevlex uses the weighted degree of the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Block order: compares the `block` variables first (weighted grevlex on
    /// the block), then the remaining variables (weighted grevlex). Any
    /// polynomial whose leading term is free of the block lies entirely in
    /// the subring of the remaining variables.
    Elimination { block: Vec<usize> },
}

fn grevlex_on<F: Fn(usize) -> bool>(ring: &RingCtx, a: &Monomial, b: &Monomial, keep: F) -> Ordering {
    let (ea, eb) = (a.exps(), b.exps());
    let mut da = 0u32;
    let mut db = 0u32;
    for i in (0..ea.len()).filter(|&i| keep(i)) {
        let w = ring.var_degree(i);
        da += ea[i] * w;
        db += eb[i] * w;
    }
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..ea.len()).rev().filter(|&i| keep(i)) {
        if ea[i] != eb[i] {
            // smaller exponent in the last differing variable is larger
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(&self, ring: &RingCtx, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex_on(ring, a, b, |_| true),
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Elimination { block } => {
                let first = grevlex_on(ring, a, b, |i| block.contains(&i));
                if first != Ordering::Equal {
                    return first;
                }
                grevlex_on(ring, a, b, |i| !block.contains(&i))
            }
        }
    }

    /// Whether `m` involves a variable of the elimination block.
    pub fn touches_block(&self, m: &Monomial) -> bool {
        match self {
            MonomialOrder::Elimination { block } => block.iter().any(|&i| m.exps()[i] > 0),
            _ => false,
        }
    }
}
