use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Graded Betti numbers `β_{i,j}`, keyed by homological index `i` and
/// internal degree `j`. Zero counts are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BettiTable {
    counts: BTreeMap<(usize, u32), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: u32,
    pub count: usize,
}

impl BettiTable {
    pub fn add(&mut self, i: usize, j: u32, count: usize) {
        if count > 0 {
            *self.counts.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: usize, j: u32) -> usize {
        self.counts.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        self.counts.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> usize {
        self.entries().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    /// Largest `i` with a nonzero entry.
    pub fn length(&self) -> usize {
        self.counts.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.counts.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Numerator `Σ (−1)^i β_{i,j} t^j` of the Hilbert series.
    pub fn alternating_numerator(&self) -> Vec<i64> {
        let mut num = vec![0i64; self.max_degree() as usize + 1];
        for (i, j, c) in self.entries() {
            let s = if i % 2 == 0 { 1 } else { -1 };
            num[j as usize] += s * c as i64;
        }
        while num.last() == Some(&0) {
            num.pop();
        }
        num
    }

    pub fn to_entries(&self) -> Vec<BettiEntry> {
        self.entries().map(|(i, j, count)| BettiEntry { i, j, count }).collect()
    }

    pub fn from_entries(entries: &[BettiEntry]) -> BettiTable {
        let mut t = BettiTable::default();
        for e in entries {
            t.add(e.i, e.j, e.count);
        }
        t
    }

    /// Grid with one line per homological index `i` and one column per
    /// internal degree `j`.
    pub fn to_csv(&self) -> String {
        let maxj = self.max_degree();
        let mut s = String::from("i");
        for j in 0..=maxj {
            write!(s, ",{j}").unwrap();
        }
        s.push('\n');
        for i in 0..=self.length() {
            write!(s, "{i}").unwrap();
            for j in 0..=maxj {
                write!(s, ",{}", self.get(i, j)).unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// Macaulay2 layout: columns are `i`, rows are `j − i`, dots for zero.
    pub fn to_text(&self, with_total: bool) -> String {
        if self.is_empty() {
            return String::from("(zero module)\n");
        }
        let len = self.length();
        let rows: Vec<i64> = {
            let lo = self.entries().map(|(i, j, _)| j as i64 - i as i64).min().unwrap_or(0);
            let hi = self.entries().map(|(i, j, _)| j as i64 - i as i64).max().unwrap_or(0);
            (lo..=hi).collect()
        };
        let cell = |i: usize, r: i64| -> String {
            let j = r + i as i64;
            if j < 0 {
                return ".".into();
            }
            match self.get(i, j as u32) {
                0 => ".".into(),
                c => c.to_string(),
            }
        };
        let width: Vec<usize> = (0..=len)
            .map(|i| {
                let mut w = i.to_string().len().max(self.total(i).to_string().len());
                for &r in &rows {
                    w = w.max(cell(i, r).len());
                }
                w
            })
            .collect();
        let labels: Vec<String> = rows.iter().map(|r| format!("{r}:")).collect();
        let lw = labels.iter().map(|l| l.len()).max().unwrap_or(0).max(if with_total { 6 } else { 0 });
        let mut s = String::new();
        let line = |s: &mut String, label: &str, cells: Vec<String>| {
            write!(s, "{label:>lw$}").unwrap();
            for (c, w) in cells.iter().zip(&width) {
                write!(s, " {c:>w$}").unwrap();
            }
            s.push('\n');
        };
        line(&mut s, "", (0..=len).map(|i| i.to_string()).collect());
        if with_total {
            line(&mut s, "total:", (0..=len).map(|i| self.total(i).to_string()).collect());
        }
        for (r, label) in rows.iter().zip(&labels) {
            line(&mut s, label, (0..=len).map(|i| cell(i, *r)).collect());
        }
        s
    }

    /// Canonical one-line form `i,j:count;...`.
    pub fn canonical(&self) -> String {
        self.entries().map(|(i, j, c)| format!("{i},{j}:{c}")).collect::<Vec<_>>().join(";")
    }

    /// First 16 hex digits of the SHA-256 of [`BettiTable::canonical`].
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

impl std::fmt::Display for BettiTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text(true))
    }
}
