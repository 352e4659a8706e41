use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Support of a 0/1 row: strictly increasing indices (or absolute weights).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct SparseRow(Vec<u64>);

impl SparseRow {
    pub fn singleton(x: u64) -> Self {
        SparseRow(vec![x])
    }

    /// Builds a row from indices that must already be strictly increasing.
    pub fn from_sorted(indices: Vec<u64>) -> Result<Self> {
        if let Some(w) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::NotMultiplicityFree {
                index: w[1],
                context: "unsorted or duplicated row".to_string(),
            });
        }
        Ok(SparseRow(indices))
    }

    /// Sorts `indices`; a repeated index is a multiplicity error.
    pub fn from_unsorted(mut indices: Vec<u64>, context: &str) -> Result<Self> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotMultiplicityFree { index: w[0], context: context.to_string() });
        }
        Ok(SparseRow(indices))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    /// Applies a strictly increasing map to every entry.
    pub fn map_monotone(&self, f: impl Fn(u64) -> u64) -> SparseRow {
        SparseRow(self.0.iter().map(|&x| f(x)).collect())
    }

    /// Merge of two rows that must be disjoint.
    pub fn disjoint_union(&self, other: &SparseRow, context: &str) -> Result<SparseRow> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    return Err(Error::NotMultiplicityFree {
                        index: a[i],
                        context: context.to_string(),
                    })
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(SparseRow(out))
    }

    /// Entries of `self` in the half-open range `[lo, hi)`.
    pub fn range(&self, lo: u64, hi: u64) -> &[u64] {
        let start = self.0.partition_point(|&x| x < lo);
        let end = self.0.partition_point(|&x| x < hi);
        &self.0[start..end.max(start)]
    }

    /// Size of the intersection of two rows.
    pub fn intersection_len(&self, other: &SparseRow) -> u64 {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// Smallest index in exactly one of the two rows.
    pub fn first_difference(&self, other: &SparseRow) -> Option<u64> {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => return Some(a[i]),
                std::cmp::Ordering::Greater => return Some(b[j]),
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        a.get(i).or(b.get(j)).copied()
    }
}

impl TryFrom<Vec<u64>> for SparseRow {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        SparseRow::from_sorted(v)
    }
}

impl From<SparseRow> for Vec<u64> {
    fn from(r: SparseRow) -> Self {
        r.0
    }
}

impl<'a> IntoIterator for &'a SparseRow {
    type Item = u64;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, u64>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}
