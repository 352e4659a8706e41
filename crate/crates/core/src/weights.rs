//! Base-`p` digit combinatorics on weights and block indices.
//!
//! A weight is the single integer `λ₁ − λ₂`. A primitive block with lowest
//! residue `i` consists of the weights `ℓm + i*(m)`, where `i*(m)` is `i` for
//! even `m` and `ī = ℓ − 2 − i` for odd `m`; `m` is the block index. Classical
//! blocks use `p` in place of `ℓ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Classical,
    Quantum,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::Classical => f.write_str("classical"),
            Variant::Quantum => f.write_str("quantum"),
        }
    }
}

/// Identifies a primitive block: the algebra, the characteristic, the order
/// `ℓ` of the root of unity (equal to `p` for classical blocks), the lowest
/// residue and the number of simple modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockSpec {
    pub variant: Variant,
    pub p: u64,
    pub ell: u64,
    pub lowest: u64,
    pub size: u64,
}

impl BlockSpec {
    pub fn classical(p: u64, lowest: u64, size: u64) -> Result<Self> {
        let spec = BlockSpec { variant: Variant::Classical, p, ell: p, lowest, size };
        spec.validate()?;
        Ok(spec)
    }

    pub fn quantum(p: u64, ell: u64, lowest: u64, size: u64) -> Result<Self> {
        let spec = BlockSpec { variant: Variant::Quantum, p, ell, lowest, size };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks every constraint and reports all violations at once.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !is_prime(self.p) {
            problems.push(format!("p = {} is not a prime", self.p));
        }
        match self.variant {
            Variant::Classical => {
                if self.ell != self.p {
                    problems.push(format!("classical blocks need ell = p, got ell = {}", self.ell));
                }
            }
            Variant::Quantum => {
                if self.ell < 2 {
                    problems.push(format!("ell = {} must be at least 2", self.ell));
                } else if self.p >= 2 && self.ell.is_multiple_of(self.p) {
                    problems.push(format!(
                        "p = {} divides ell = {}: no primitive ell-th root of unity",
                        self.p, self.ell
                    ));
                }
            }
        }
        if self.ell >= 2 && self.lowest > self.ell - 2 {
            problems.push(format!(
                "lowest residue {} exceeds {} (= ell - 2)",
                self.lowest,
                self.ell - 2
            ));
        }
        if self.size == 0 {
            problems.push("block size must be at least 1".to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameters(problems))
        }
    }

    /// The same block with a different number of simple modules.
    pub fn with_size(&self, size: u64) -> Self {
        BlockSpec { size, ..*self }
    }

    /// `ī = ℓ − 2 − i`.
    pub fn conjugate_lowest(&self) -> u64 {
        self.ell - 2 - self.lowest
    }

    /// Both residues coincide (`ℓ` even, `i = (ℓ − 2)/2`).
    pub fn residues_coincide(&self) -> bool {
        self.lowest == self.conjugate_lowest()
    }

    /// `i*(m)`: the residue mod `ℓ` of the weight with block index `m`.
    pub fn residue_of_index(&self, m: u64) -> u64 {
        if m.is_multiple_of(2) {
            self.lowest
        } else {
            self.conjugate_lowest()
        }
    }

    pub fn weight_of_index(&self, m: u64) -> Result<u64> {
        if m >= self.size {
            return Err(Error::IndexOutOfRange { index: m, size: self.size });
        }
        weight_of_index_unbounded(m, self.ell, self.lowest)
    }

    pub fn index_of_weight(&self, weight: u64) -> Result<u64> {
        let m = weight / self.ell;
        if weight % self.ell != self.residue_of_index(m) || m >= self.size {
            return Err(Error::WeightNotInBlock { weight });
        }
        Ok(m)
    }
}

/// `ℓm + i*(m)` for a block of unbounded size.
pub fn weight_of_index_unbounded(m: u64, ell: u64, lowest: u64) -> Result<u64> {
    let residue = if m.is_multiple_of(2) { lowest } else { ell - 2 - lowest };
    ell.checked_mul(m)
        .and_then(|x| x.checked_add(residue))
        .ok_or(Error::Overflow("weight of block index"))
}

/// `c·p^k ≤ n + 1 < (c + 1)·p^k` with `1 ≤ c ≤ p − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LeadingPart {
    pub c: u64,
    pub k: u32,
}

impl LeadingPart {
    /// `n₀ = n − c·p^k`, which lies in `[−1, p^k − 2]`.
    pub fn remainder(&self, n: u64, p: u64) -> i128 {
        n as i128 - (self.c as i128) * (p as i128).pow(self.k)
    }
}

/// Result of writing `m = (p^t − 1) + p^t·(reduced + 1) − p^t`, i.e.
/// `m ≡ −1 (mod p^t)`, `m ≢ −1 (mod p^{t+1})`, `reduced = (m + 1)/p^t − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StripResult {
    pub t: u32,
    pub reduced: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checked `p^k`.
pub fn pow(p: u64, k: u32) -> Result<u64> {
    p.checked_pow(k).ok_or(Error::Overflow("p^k"))
}

/// Leading digit and exponent of `n + 1` in base `p`.
pub fn leading_part(n: u64, p: u64) -> LeadingPart {
    debug_assert!(p >= 2);
    let x = n as u128 + 1;
    let p = p as u128;
    let mut pk = 1u128;
    let mut k = 0u32;
    while pk * p <= x {
        pk *= p;
        k += 1;
    }
    LeadingPart { c: (x / pk) as u64, k }
}

/// `σ̄(n) = 2·c·p^k − n − 2`; the socle of the classical Weyl module `Δ̄(n)` is
/// `L̄(σ̄(n))`.
pub fn sigma_bar(n: u64, p: u64) -> u64 {
    let LeadingPart { c, k } = leading_part(n, p);
    let top = 2 * c as u128 * (p as u128).pow(k);
    (top - n as u128 - 2) as u64
}

/// The order-reversing bijection `I_c^{(k)} → I_{c−1}^{(k)}` on block indices,
/// `m ↦ 2·c·p^k − m − 1` with `c = ⌊m / p^k⌋`. Undefined on `I_0`.
pub fn sigma_index(m: u64, k: u32, p: u64) -> Result<u64> {
    let pk = pow(p, k)?;
    let c = m / pk;
    if c == 0 {
        return Err(Error::SigmaUndefined { index: m, level: k });
    }
    Ok((2 * c as u128 * pk as u128 - m as u128 - 1) as u64)
}

/// Inverse of [`sigma_index`]: the unique `λ ∈ I_{d+1}^{(k)}` with `σλ = μ`
/// for `μ ∈ I_d^{(k)}`.
pub fn sigma_index_inverse(mu: u64, k: u32, p: u64) -> Result<u64> {
    let pk = pow(p, k)?;
    let d = mu / pk;
    let lambda = 2 * (d as u128 + 1) * pk as u128 - mu as u128 - 1;
    u64::try_from(lambda).map_err(|_| Error::Overflow("inverse sigma"))
}

/// `q = a·p^k` with `2 ≤ a ≤ p` and `k ≥ 0`.
fn is_a_times_power(q: u128, p: u128) -> bool {
    if q < 2 {
        return false;
    }
    let mut a = q;
    let mut v = 0;
    while a.is_multiple_of(p) {
        a /= p;
        v += 1;
    }
    (a == 1 && v >= 1) || (a >= 2 && a < p)
}

/// Whether the standard module `Δ(n)` is simple.
///
/// Quantum: `n ≤ ℓ − 1` or `n + 1 = ℓ·a·p^k` with `2 ≤ a ≤ p`. Classical
/// (`ell` ignored): `n ≤ p − 1` or `n + 1 = a·p^k`.
pub fn is_simple_standard(n: u64, variant: Variant, p: u64, ell: u64) -> bool {
    let x = n as u128 + 1;
    match variant {
        Variant::Classical => n < p || is_a_times_power(x, p as u128),
        Variant::Quantum => {
            n < ell || (x.is_multiple_of(ell as u128) && is_a_times_power(x / ell as u128, p as u128))
        }
    }
}

/// Splits off the trailing run of `p − 1` digits of `m`.
pub fn strip_trailing(m: u64, p: u64) -> StripResult {
    let p = p as u128;
    let mut x = m as u128 + 1;
    let mut t = 0;
    while x.is_multiple_of(p) {
        x /= p;
        t += 1;
    }
    StripResult { t, reduced: (x - 1) as u64 }
}
