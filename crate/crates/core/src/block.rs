//! Matrices of a primitive block, indexed by block index `0..w`.

use std::ops::Range;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::classical::Recursions;
use crate::error::{Error, Result};
use crate::linkage::{quantum_decomp_row_abs, quantum_tilt_row_abs};
use crate::row::SparseRow;
use crate::weights::{pow, sigma_index, sigma_index_inverse, BlockSpec};

/// Blocks up to this size get a dense Cartan table; larger ones compute
/// entries from sparse rows on demand.
pub const DENSE_CARTAN_LIMIT: u64 = 4096;

/// `w = a·p^k` with `2 ≤ a ≤ p`, so that the block is the disjoint union of
/// the intervals `I_0^{(k)}, …, I_{a−1}^{(k)}` of `p^k` indices each. The
/// one-element block is recorded as `a = 1, k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockShape {
    pub a: u64,
    pub k: u32,
    pub p: u64,
}

impl BlockShape {
    pub fn of(size: u64, p: u64) -> Option<BlockShape> {
        if size == 1 {
            return Some(BlockShape { a: 1, k: 0, p });
        }
        let mut pk = 1u64;
        let mut k = 0u32;
        loop {
            if size.is_multiple_of(pk) {
                let a = size / pk;
                if (2..=p).contains(&a) {
                    return Some(BlockShape { a, k, p });
                }
                if a < 2 {
                    return None;
                }
            } else {
                return None;
            }
            pk = pk.checked_mul(p)?;
            k += 1;
        }
    }

    /// `p^k`, the interval length.
    pub fn interval_len(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn size(&self) -> u64 {
        self.a * self.interval_len()
    }

    /// `c` with `m ∈ I_c^{(k)}`.
    pub fn interval_of(&self, m: u64) -> u64 {
        m / self.interval_len()
    }

    /// Indices of `I_c^{(k)}`.
    pub fn interval(&self, c: u64) -> Range<u64> {
        let pk = self.interval_len();
        c * pk..(c + 1) * pk
    }

    pub fn sigma(&self, m: u64) -> Result<u64> {
        sigma_index(m, self.k, self.p)
    }

    pub fn sigma_inverse(&self, mu: u64) -> Result<u64> {
        sigma_index_inverse(mu, self.k, self.p)
    }
}

/// A square 0/1 matrix stored as sorted row supports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityMatrix {
    size: u64,
    rows: Vec<SparseRow>,
}

impl MultiplicityMatrix {
    pub fn from_rows(rows: Vec<SparseRow>) -> Result<Self> {
        let size = rows.len() as u64;
        if let Some((m, _)) =
            rows.iter().enumerate().find(|(_, r)| r.max().is_some_and(|x| x >= size))
        {
            return Err(Error::IndexOutOfRange { index: rows[m].max().unwrap(), size });
        }
        Ok(MultiplicityMatrix { size, rows })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn row(&self, m: u64) -> &SparseRow {
        &self.rows[m as usize]
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn entry(&self, m: u64, n: u64) -> u64 {
        u64::from(self.row(m).contains(n))
    }

    pub fn transpose(&self) -> MultiplicityMatrix {
        let mut cols = vec![Vec::new(); self.rows.len()];
        for (m, row) in self.rows.iter().enumerate() {
            for n in row {
                cols[n as usize].push(m as u64);
            }
        }
        MultiplicityMatrix {
            size: self.size,
            rows: cols.into_iter().map(|c| SparseRow::from_sorted(c).expect("rows are visited in order")).collect(),
        }
    }

    /// The top-left `w × w` corner.
    pub fn leading_submatrix(&self, w: u64) -> MultiplicityMatrix {
        let w = w.min(self.size);
        MultiplicityMatrix {
            size: w,
            rows: self.rows[..w as usize]
                .iter()
                .map(|r| SparseRow::from_sorted(r.range(0, w).to_vec()).expect("subrow of a sorted row"))
                .collect(),
        }
    }

    /// First row violating "contains its own index and nothing larger".
    pub fn first_non_unitriangular_row(&self) -> Option<u64> {
        (0..self.size).find(|&m| self.row(m).max() != Some(m))
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        (0..self.size).map(|m| (0..self.size).map(|n| self.entry(m, n)).collect()).collect()
    }
}

#[derive(Debug, Clone)]
enum CartanStorage {
    Dense(Vec<u32>),
    OnDemand,
}

/// A symmetric Gram-type matrix `G(m, n) = |S_m ∩ S_n|` for index sets `S_m`.
///
/// With `S_m` the column `m` of `D` this is the Cartan matrix `DᵀD`; with `S_m`
/// the row `m` of `T` it is `T·Tᵀ`.
#[derive(Debug, Clone)]
pub struct CartanMatrix {
    size: u64,
    supports: Vec<SparseRow>,
    storage: CartanStorage,
}

impl CartanMatrix {
    pub fn from_supports(supports: Vec<SparseRow>) -> Self {
        let size = supports.len() as u64;
        let storage = if size <= DENSE_CARTAN_LIMIT {
            let w = size as usize;
            let mut dense = vec![0u32; w * w];
            // Invert the supports so every shared element is visited once per pair.
            let mut owners: Vec<Vec<usize>> = Vec::new();
            for (m, s) in supports.iter().enumerate() {
                for x in s {
                    let x = x as usize;
                    if owners.len() <= x {
                        owners.resize_with(x + 1, Vec::new);
                    }
                    owners[x].push(m);
                }
            }
            for group in &owners {
                for &a in group {
                    for &b in group {
                        dense[a * w + b] += 1;
                    }
                }
            }
            CartanStorage::Dense(dense)
        } else {
            CartanStorage::OnDemand
        };
        CartanMatrix { size, supports, storage }
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, CartanStorage::Dense(_))
    }

    pub fn entry(&self, m: u64, n: u64) -> u64 {
        match &self.storage {
            CartanStorage::Dense(d) => u64::from(d[(m * self.size + n) as usize]),
            CartanStorage::OnDemand => {
                self.supports[m as usize].intersection_len(&self.supports[n as usize])
            }
        }
    }

    pub fn diagonal(&self) -> Vec<u64> {
        (0..self.size).map(|m| self.entry(m, m)).collect()
    }

    /// Nonzero entries of row `m` as `(column, value)`.
    pub fn row_entries(&self, m: u64) -> Vec<(u64, u64)> {
        (0..self.size).map(|n| (n, self.entry(m, n))).filter(|&(_, v)| v != 0).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        (0..self.size).map(|m| (0..self.size).map(|n| self.entry(m, n)).collect()).collect()
    }
}

/// The torsion submodule `t(P(λ))` of an indecomposable projective, for the
/// torsion class generated by the projective-injective modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum TorsionImage {
    /// `t(P(λ)) = P(λ) ≅ T(index)`.
    FullProjective(u64),
    /// `t(P(λ)) ≅ T(index)` with `P(λ)` not tilting.
    Tilting(u64),
    /// `t(P(λ)) = L(index)`.
    Simple(u64),
    /// Not determined by the available multiplicity data.
    Unsupported,
}

/// Lazily assembled matrices of one block.
#[derive(Debug)]
pub struct BlockMatrices {
    spec: BlockSpec,
    rec: Arc<Recursions>,
    decomp: OnceLock<MultiplicityMatrix>,
    decomp_cols: OnceLock<MultiplicityMatrix>,
    tilt: OnceLock<MultiplicityMatrix>,
    cartan: OnceLock<CartanMatrix>,
    ringel: OnceLock<CartanMatrix>,
}

fn cached<T>(cell: &OnceLock<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = init()?;
    Ok(cell.get_or_init(|| v))
}

impl BlockMatrices {
    pub fn new(spec: BlockSpec, rec: Arc<Recursions>) -> Result<Self> {
        spec.validate()?;
        if rec.p() != spec.p {
            return Err(Error::InvalidParameters(vec![format!(
                "recursion tables are for p = {}, block has p = {}",
                rec.p(),
                spec.p
            )]));
        }
        Ok(BlockMatrices {
            spec,
            rec,
            decomp: OnceLock::new(),
            decomp_cols: OnceLock::new(),
            tilt: OnceLock::new(),
            cartan: OnceLock::new(),
            ringel: OnceLock::new(),
        })
    }

    /// Uses the process-wide recursion tables for `spec.p`.
    pub fn for_spec(spec: BlockSpec) -> Result<Self> {
        spec.validate()?;
        Self::new(spec, Recursions::shared(spec.p)?)
    }

    pub fn spec(&self) -> &BlockSpec {
        &self.spec
    }

    pub fn size(&self) -> u64 {
        self.spec.size
    }

    pub fn recursions(&self) -> &Arc<Recursions> {
        &self.rec
    }

    pub fn shape(&self) -> Option<BlockShape> {
        BlockShape::of(self.spec.size, self.spec.p)
    }

    pub fn require_shape(&self) -> Result<BlockShape> {
        self.shape()
            .ok_or(Error::NotIntervalShaped { size: self.spec.size, p: self.spec.p })
    }

    fn check_index(&self, m: u64) -> Result<()> {
        if m >= self.spec.size {
            return Err(Error::IndexOutOfRange { index: m, size: self.spec.size });
        }
        Ok(())
    }

    fn to_indices(&self, weights: &SparseRow) -> Result<SparseRow> {
        let indices = weights
            .iter()
            .map(|w| self.spec.index_of_weight(w))
            .collect::<Result<Vec<_>>>()?;
        SparseRow::from_sorted(indices)
    }

    /// `{n : [Δ(m):L(n)] = 1}`, from the composition factors of the Weyl
    /// module of weight `ℓm + i*(m)`.
    pub fn decomp_row(&self, m: u64) -> Result<SparseRow> {
        self.check_index(m)?;
        if let Some(d) = self.decomp.get() {
            return Ok(d.row(m).clone());
        }
        let weight = self.spec.weight_of_index(m)?;
        self.to_indices(&quantum_decomp_row_abs(weight, self.spec.ell, &self.rec)?)
    }

    /// `{n : [T(m):Δ(n)] = 1}`.
    pub fn tilt_row(&self, m: u64) -> Result<SparseRow> {
        self.check_index(m)?;
        if let Some(t) = self.tilt.get() {
            return Ok(t.row(m).clone());
        }
        let weight = self.spec.weight_of_index(m)?;
        self.to_indices(&quantum_tilt_row_abs(weight, self.spec.ell, &self.rec)?)
    }

    fn assemble(&self, row: impl Fn(u64) -> Result<SparseRow>, what: &str) -> Result<MultiplicityMatrix> {
        let rows = (0..self.spec.size).map(row).collect::<Result<Vec<_>>>()?;
        let matrix = MultiplicityMatrix::from_rows(rows)?;
        if let Some(m) = matrix.first_non_unitriangular_row() {
            return Err(Error::NotMultiplicityFree {
                index: m,
                context: format!("{what} row {m} is not unitriangular"),
            });
        }
        Ok(matrix)
    }

    pub fn decomp_matrix(&self) -> Result<&MultiplicityMatrix> {
        cached(&self.decomp, || {
            let d = self.assemble(|m| self.decomp_row(m), "decomposition")?;
            if let Some(shape) = self.shape() {
                for m in shape.interval_len()..self.spec.size {
                    let c = shape.interval_of(m);
                    let allowed = shape.interval(c - 1).start..shape.interval(c).end;
                    if let Some(n) = d.row(m).iter().find(|n| !allowed.contains(n)) {
                        return Err(Error::NotMultiplicityFree {
                            index: n,
                            context: format!("decomposition row {m} leaves I_{} ∪ I_{}", c - 1, c),
                        });
                    }
                }
            }
            Ok(d)
        })
    }

    pub fn tilt_matrix(&self) -> Result<&MultiplicityMatrix> {
        cached(&self.tilt, || self.assemble(|m| self.tilt_row(m), "tilting"))
    }

    /// Columns of `D`: column `μ` lists the `Δ`-quotients of `P(μ)`.
    pub fn decomp_columns(&self) -> Result<&MultiplicityMatrix> {
        cached(&self.decomp_cols, || Ok(self.decomp_matrix()?.transpose()))
    }

    /// `{s < w : [Δ(s):L(μ)] = 1}`, the `Δ`-quotients of the projective cover
    /// of `L(μ)` in this block.
    pub fn projective_column(&self, mu: u64) -> Result<SparseRow> {
        self.check_index(mu)?;
        Ok(self.decomp_columns()?.row(mu).clone())
    }

    /// `C(m, n) = Σ_s [Δ(s):L(m)]·[Δ(s):L(n)]`.
    pub fn cartan_matrix(&self) -> Result<&CartanMatrix> {
        cached(&self.cartan, || Ok(CartanMatrix::from_supports(self.decomp_columns()?.rows().to_vec())))
    }

    /// `C'(m, n) = Σ_ρ [T(m):Δ(ρ)]·[T(n):Δ(ρ)]`, the Cartan matrix of the
    /// Ringel dual.
    pub fn ringel_cartan_matrix(&self) -> Result<&CartanMatrix> {
        cached(&self.ringel, || Ok(CartanMatrix::from_supports(self.tilt_matrix()?.rows().to_vec())))
    }

    /// `σ` at the block's own interval level.
    pub fn sigma(&self, m: u64) -> Result<u64> {
        self.require_shape()?.sigma(m)
    }

    pub fn torsion_image(&self, lambda: u64) -> Result<TorsionImage> {
        let shape = self.require_shape()?;
        if shape.a < 2 {
            return Err(Error::NotIntervalShaped { size: self.spec.size, p: self.spec.p });
        }
        self.check_index(lambda)?;
        let d = shape.interval_of(lambda);
        Ok(if lambda == self.spec.size - 1 {
            TorsionImage::Simple(shape.sigma(lambda)?)
        } else if d + 2 <= shape.a {
            TorsionImage::FullProjective(shape.sigma_inverse(lambda)?)
        } else if shape.a == 2 {
            TorsionImage::Tilting(shape.sigma(lambda)?)
        } else {
            TorsionImage::Unsupported
        })
    }

    /// Matrices of the same block truncated to its first `w` weights.
    pub fn truncated(&self, w: u64) -> Result<BlockMatrices> {
        let t = BlockMatrices::new(self.spec.with_size(w), Arc::clone(&self.rec))?;
        if w <= self.spec.size {
            if let Some(d) = self.decomp.get() {
                let _ = t.decomp.set(d.leading_submatrix(w));
            }
            if let Some(tm) = self.tilt.get() {
                let _ = t.tilt.set(tm.leading_submatrix(w));
            }
        }
        Ok(t)
    }
}

/// `p^k` for a block level, as used by callers that build interval ranges.
pub fn interval_len(p: u64, k: u32) -> Result<u64> {
    pow(p, k)
}
