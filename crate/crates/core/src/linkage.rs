//! Weights of the whole Schur algebra `S(2, r)` and their linkage classes.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::block::MultiplicityMatrix;
use crate::classical::Recursions;
use crate::error::{Error, Result};
use crate::row::SparseRow;
use crate::weights::{weight_of_index_unbounded, BlockSpec, Variant};

/// `{r, r − 2, …}` down to 0 or 1, ascending.
pub fn weight_list(r: u64) -> Vec<u64> {
    (r % 2..=r).step_by(2).collect()
}

/// Composition factors of the Weyl module of absolute weight `n`, for the
/// quantum group at an `ℓ`-th root of unity over a field of characteristic
/// `rec.p()`. Taking `ℓ = p` gives the classical row.
pub fn quantum_decomp_row_abs(n: u64, ell: u64, rec: &Recursions) -> Result<SparseRow> {
    let (q, i) = (n / ell, n % ell);
    if i == ell - 1 {
        return Ok(rec.decomp_row(q)?.map_monotone(|v| ell * (v + 1) - 1));
    }
    if q == 0 {
        return Ok(SparseRow::singleton(i));
    }
    let top = rec.decomp_row(q)?.map_monotone(|v| ell * v + i);
    let bottom = rec.decomp_row(q - 1)?.map_monotone(|u| ell * u + (ell - 2 - i));
    top.disjoint_union(&bottom, &format!("decomposition row of weight {n} (ell = {ell})"))
}

/// `Δ`-quotients of the tilting module of absolute weight `n`.
pub fn quantum_tilt_row_abs(n: u64, ell: u64, rec: &Recursions) -> Result<SparseRow> {
    let (q, i) = (n / ell, n % ell);
    if i == ell - 1 {
        return Ok(rec.tilt_row(q)?.map_monotone(|v| ell * (v + 1) - 1));
    }
    if q == 0 {
        return Ok(SparseRow::singleton(i));
    }
    let inner = rec.tilt_row(q - 1)?;
    let mut out = Vec::with_capacity(2 * inner.len());
    for u in inner.iter() {
        out.push(ell * (u + 1) + i);
        out.push(ell * u + (ell - 2 - i));
    }
    SparseRow::from_unsorted(out, &format!("tilting row of weight {n} (ell = {ell})"))
}

/// If `weights` is exactly the primitive block with lowest weight
/// `weights[0]` cut off at `bound`, returns `(lowest, size)`.
pub fn match_primitive_shape(weights: &[u64], ell: u64, bound: u64) -> Option<(u64, u64)> {
    let lowest = *weights.first()?;
    if lowest + 2 > ell {
        return None;
    }
    let size = weights.len() as u64;
    for (m, &w) in weights.iter().enumerate() {
        if weight_of_index_unbounded(m as u64, ell, lowest).ok()? != w {
            return None;
        }
    }
    match weight_of_index_unbounded(size, ell, lowest) {
        Ok(next) if next <= bound => None,
        _ => Some((lowest, size)),
    }
}

/// One linkage class of weights of `S(2, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockComponent {
    /// Absolute weights, ascending.
    pub weights: Vec<u64>,
    /// No weight is `≡ −1 (mod ℓ)`.
    pub primitive: bool,
    /// The block whose matrices this component carries. For imprimitive
    /// components this is a classical block reached after stripping.
    pub identified: Option<BlockSpec>,
    /// Moduli removed, outermost first (`s = q·u + q − 1 ↦ u`).
    pub strips: Vec<u64>,
}

impl BlockComponent {
    pub fn size(&self) -> u64 {
        self.weights.len() as u64
    }

    /// Decomposition matrix computed directly from the absolute rows of this
    /// component, indexed by position in `weights`.
    pub fn decomp_matrix(&self, ell: u64, rec: &Recursions) -> Result<MultiplicityMatrix> {
        let rows = self
            .weights
            .iter()
            .map(|&s| {
                let row = quantum_decomp_row_abs(s, ell, rec)?;
                let idx = row
                    .iter()
                    .map(|x| {
                        self.weights
                            .binary_search(&x)
                            .map(|i| i as u64)
                            .map_err(|_| Error::WeightNotInBlock { weight: x })
                    })
                    .collect::<Result<Vec<_>>>()?;
                SparseRow::from_sorted(idx)
            })
            .collect::<Result<Vec<_>>>()?;
        MultiplicityMatrix::from_rows(rows)
    }
}

fn strip(weights: &[u64], q: u64) -> Vec<u64> {
    weights.iter().map(|&s| (s + 1) / q - 1).collect()
}

fn classify(weights: Vec<u64>, r: u64, variant: Variant, p: u64, ell: u64) -> Result<BlockComponent> {
    let primitive = weights.iter().all(|&s| (s + 1) % ell != 0);
    if primitive {
        let (lowest, size) = match_primitive_shape(&weights, ell, r)
            .ok_or_else(|| Error::Unclassified { weights: weights.clone() })?;
        let spec = match variant {
            Variant::Classical => BlockSpec::classical(p, lowest, size)?,
            Variant::Quantum => BlockSpec::quantum(p, ell, lowest, size)?,
        };
        return Ok(BlockComponent { weights, primitive, identified: Some(spec), strips: Vec::new() });
    }
    if weights.iter().any(|&s| (s + 1) % ell != 0) {
        return Err(Error::Unclassified { weights });
    }
    let mut strips = vec![ell];
    let mut reduced = strip(&weights, ell);
    let mut bound = (r + 1) / ell - 1;
    while reduced.iter().any(|&u| (u + 1) % p == 0) {
        if reduced.iter().any(|&u| (u + 1) % p != 0) {
            return Err(Error::Unclassified { weights });
        }
        strips.push(p);
        reduced = strip(&reduced, p);
        bound = (bound + 1) / p - 1;
    }
    let (lowest, size) = match_primitive_shape(&reduced, p, bound)
        .ok_or_else(|| Error::Unclassified { weights: weights.clone() })?;
    Ok(BlockComponent {
        weights,
        primitive,
        identified: Some(BlockSpec::classical(p, lowest, size)?),
        strips,
    })
}

/// Linkage classes of `S(2, r)`, sorted by lowest weight. In classical mode
/// pass `ell = p`.
pub fn block_partition(r: u64, variant: Variant, ell: u64, rec: &Recursions) -> Result<Vec<BlockComponent>> {
    let p = rec.p();
    BlockSpec { variant, p, ell, lowest: 0, size: 1 }.validate()?;
    let weights = weight_list(r);
    let position = |s: u64| ((s - r % 2) / 2) as usize;
    let mut uf = UnionFind::<usize>::new(weights.len());
    for &s in &weights {
        for t in &quantum_decomp_row_abs(s, ell, rec)? {
            uf.union(position(s), position(t));
        }
    }
    let labels = uf.into_labeling();
    let mut groups: Vec<Vec<u64>> = Vec::new();
    let mut group_of_root = std::collections::HashMap::new();
    for (idx, &s) in weights.iter().enumerate() {
        let g = *group_of_root.entry(labels[idx]).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(s);
    }
    groups.into_iter().map(|g| classify(g, r, variant, p, ell)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: u64, ell: u64, p: u64) -> Vec<u64> {
        let rec = Recursions::new(p).unwrap();
        quantum_decomp_row_abs(n, ell, &rec).unwrap().as_slice().to_vec()
    }

    #[test]
    fn weights() {
        assert_eq!(weight_list(4), [0, 2, 4]);
        assert_eq!(weight_list(5), [1, 3, 5]);
        assert_eq!(weight_list(0), [0]);
    }

    #[test]
    fn absolute_rows() {
        assert_eq!(row(4, 2, 3), [2, 4]);
        assert_eq!(row(2, 2, 3), [0, 2]);
        for ell in [2, 3, 4, 5, 7] {
            assert_eq!(row(ell - 1, ell, 3), [ell - 1]);
        }
        // Classical rows come back when ell = p.
        let rec = Recursions::new(5).unwrap();
        for n in 0..200 {
            assert_eq!(quantum_decomp_row_abs(n, 5, &rec).unwrap(), *rec.decomp_row(n).unwrap());
            assert_eq!(quantum_tilt_row_abs(n, 5, &rec).unwrap(), *rec.tilt_row(n).unwrap());
        }
    }

    #[test]
    fn primitive_shapes() {
        assert_eq!(match_primitive_shape(&[0, 2, 4], 2, 4), Some((0, 3)));
        assert_eq!(match_primitive_shape(&[0, 2], 2, 4), None);
        assert_eq!(match_primitive_shape(&[1, 7, 11, 17], 5, 20), Some((1, 4)));
        assert_eq!(match_primitive_shape(&[1, 7, 11, 17], 5, 21), None);
        assert_eq!(match_primitive_shape(&[4], 5, 4), None);
    }

    #[test]
    fn partitions() {
        let rec = Recursions::new(3).unwrap();
        let blocks = block_partition(4, Variant::Quantum, 2, &rec).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].weights, [0, 2, 4]);
        assert!(blocks[0].primitive);
        assert_eq!(blocks[0].identified, Some(BlockSpec::quantum(3, 2, 0, 3).unwrap()));

        let rec2 = Recursions::new(2).unwrap();
        let blocks = block_partition(2, Variant::Quantum, 3, &rec2).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!((blocks[0].weights.as_slice(), blocks[0].primitive), (&[0u64][..], true));
        assert_eq!((blocks[1].weights.as_slice(), blocks[1].primitive), (&[2u64][..], false));
        assert_eq!(blocks[1].strips, [3]);

        let blocks = block_partition(2, Variant::Classical, 2, &rec2).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].weights, [0, 2]);

        let blocks = block_partition(0, Variant::Classical, 5, &Recursions::new(5).unwrap()).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].weights, [0]);
    }

    #[test]
    fn invalid_parameters_are_reported() {
        let rec = Recursions::new(3).unwrap();
        assert!(matches!(
            block_partition(10, Variant::Quantum, 6, &rec),
            Err(Error::InvalidParameters(_))
        ));
    }
}
