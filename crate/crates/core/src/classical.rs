//! Memoized classical rows `[Δ̄(m):L̄(n)]` and `[T̄(m):Δ̄(n)]` over absolute
//! weights, computed from the Frobenius-twisted short exact sequences.
//!
//! For `m = p·n + j` with `0 ≤ j ≤ p − 2` and `n ≥ 1`:
//!
//! * `Δ̄(m)` is an extension of `Δ̄(j) ⊗ Δ̄(n)^F` by `Δ̄(p − 2 − j) ⊗ Δ̄(n − 1)^F`,
//! * `T̄(m) ≅ T̄(p + j) ⊗ T̄(n − 1)^F`, and `T̄(p + j) ⊗ Δ̄(u)^F` has
//!   `Δ̄`-quotients `Δ̄(p(u + 1) + j)` and `Δ̄(pu + p − 2 − j)`.
//!
//! For `m = p·n − 1` both `Δ̄(m)` and `T̄(m)` are `Δ̄(p − 1)`-twists of the
//! corresponding module for `n − 1`. Restricted weights (`m < p`) give simple
//! Weyl modules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::row::SparseRow;
use crate::weights::is_prime;

/// Rows with weight below this bound are memoized by default.
pub const DEFAULT_MEMO_BOUND: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    /// Composition factors of a Weyl module.
    Decomposition,
    /// `Δ`-quotients of a tilting module.
    Tilting,
}

impl RowKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowKind::Decomposition => "decomposition",
            RowKind::Tilting => "tilting",
        }
    }
}

type Memo = RwLock<HashMap<u64, Arc<SparseRow>>>;

/// Classical recursions for one prime, with one memo table per row kind.
///
/// Lookups take a read lock; insertions are serialized by a write lock. Rows
/// are immutable once inserted, so concurrent callers always agree.
#[derive(Debug)]
pub struct Recursions {
    p: u64,
    memo_bound: u64,
    decomp: Memo,
    tilt: Memo,
}

impl Recursions {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_memo_bound(p, DEFAULT_MEMO_BOUND)
    }

    /// Rows for weights `m ≥ memo_bound` are recomputed on every call instead
    /// of being stored.
    pub fn with_memo_bound(p: u64, memo_bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameters(vec![format!("p = {p} is not a prime")]));
        }
        Ok(Recursions {
            p,
            memo_bound,
            decomp: RwLock::new(HashMap::new()),
            tilt: RwLock::new(HashMap::new()),
        })
    }

    /// Process-wide tables for `p`, created on first use.
    pub fn shared(p: u64) -> Result<Arc<Recursions>> {
        static SHARED: OnceLock<Mutex<HashMap<u64, Arc<Recursions>>>> = OnceLock::new();
        let registry = SHARED.get_or_init(Default::default);
        let mut guard = registry.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(r) = guard.get(&p) {
            return Ok(Arc::clone(r));
        }
        let r = Arc::new(Recursions::new(p)?);
        guard.insert(p, Arc::clone(&r));
        Ok(r)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn memo_bound(&self) -> u64 {
        self.memo_bound
    }

    fn memo(&self, kind: RowKind) -> &Memo {
        match kind {
            RowKind::Decomposition => &self.decomp,
            RowKind::Tilting => &self.tilt,
        }
    }

    pub fn row(&self, kind: RowKind, m: u64) -> Result<Arc<SparseRow>> {
        if let Some(r) = self.memo(kind).read().unwrap_or_else(|e| e.into_inner()).get(&m) {
            return Ok(Arc::clone(r));
        }
        let row = Arc::new(match kind {
            RowKind::Decomposition => self.compute_decomp(m)?,
            RowKind::Tilting => self.compute_tilt(m)?,
        });
        if m < self.memo_bound {
            let mut memo = self.memo(kind).write().unwrap_or_else(|e| e.into_inner());
            return Ok(Arc::clone(memo.entry(m).or_insert(row)));
        }
        Ok(row)
    }

    /// `{n : [Δ̄(m):L̄(n)] = 1}`.
    pub fn decomp_row(&self, m: u64) -> Result<Arc<SparseRow>> {
        self.row(RowKind::Decomposition, m)
    }

    /// `{n : [T̄(m):Δ̄(n)] = 1}`.
    pub fn tilt_row(&self, m: u64) -> Result<Arc<SparseRow>> {
        self.row(RowKind::Tilting, m)
    }

    fn compute_decomp(&self, m: u64) -> Result<SparseRow> {
        let p = self.p;
        if m < p {
            return Ok(SparseRow::singleton(m));
        }
        if (m + 1).is_multiple_of(p) {
            let inner = self.decomp_row((m + 1) / p - 1)?;
            return Ok(inner.map_monotone(|u| p * (u + 1) - 1));
        }
        let (n, j) = (m / p, m % p);
        let quotient = self.decomp_row(n)?.map_monotone(|u| p * u + j);
        let sub = self.decomp_row(n - 1)?.map_monotone(|u| p * u + (p - 2 - j));
        quotient.disjoint_union(&sub, &format!("classical decomposition row {m} (p = {p})"))
    }

    fn compute_tilt(&self, m: u64) -> Result<SparseRow> {
        let p = self.p;
        if m < p {
            return Ok(SparseRow::singleton(m));
        }
        if (m + 1).is_multiple_of(p) {
            let inner = self.tilt_row((m + 1) / p - 1)?;
            return Ok(inner.map_monotone(|u| p * (u + 1) - 1));
        }
        let (n, j) = (m / p, m % p);
        let inner = self.tilt_row(n - 1)?;
        let mut out = Vec::with_capacity(2 * inner.len());
        for u in inner.iter() {
            out.push(p * (u + 1) + j);
            out.push(p * u + (p - 2 - j));
        }
        SparseRow::from_unsorted(out, &format!("classical tilting row {m} (p = {p})"))
    }

    pub fn memo_len(&self, kind: RowKind) -> usize {
        self.memo(kind).read().unwrap_or_else(|e| e.into_inner()).len()
    }

    /// All memoized rows of one kind, sorted by weight.
    pub fn snapshot(&self, kind: RowKind) -> Vec<(u64, Arc<SparseRow>)> {
        let memo = self.memo(kind).read().unwrap_or_else(|e| e.into_inner());
        let mut rows: Vec<_> = memo.iter().map(|(&m, r)| (m, Arc::clone(r))).collect();
        rows.sort_unstable_by_key(|(m, _)| *m);
        rows
    }

    /// Seeds the memo table with rows from an external cache.
    ///
    /// Rows that fail the cheap structural checks (top entry is `m`, nothing
    /// above it) are skipped and will be recomputed on demand. Returns the
    /// number of rows accepted.
    pub fn preload(&self, kind: RowKind, rows: impl IntoIterator<Item = (u64, SparseRow)>) -> usize {
        let mut memo = self.memo(kind).write().unwrap_or_else(|e| e.into_inner());
        let mut accepted = 0;
        for (m, row) in rows {
            if m >= self.memo_bound || row.max() != Some(m) {
                continue;
            }
            memo.entry(m).or_insert_with(|| Arc::new(row));
            accepted += 1;
        }
        accepted
    }
}
