//! Executable checks of the identities satisfied by block matrices.
//!
//! Every check reads only `D`, `T`, `C` and `C'` (plus the classical rows for
//! the factorization check), never the output of another check. Sweeps run
//! the outer index `λ` in increasing order and the inner index `ρ` in
//! increasing order and stop at the first mismatch, so a failing report always
//! carries the lexicographically smallest counterexample.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::block::{BlockMatrices, TorsionImage};
use crate::error::{Error, Result};
use crate::row::SparseRow;
use crate::weights::{pow, sigma_bar, sigma_index, strip_trailing, BlockSpec, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Indices and the two sides of the identity at that point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "λ")]
    pub lambda: u64,
    #[serde(rename = "ρ", default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<u64>,
    pub lhs: u64,
    pub rhs: u64,
    /// Which part of a multi-part check the witness belongs to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<String>,
}

impl Witness {
    fn new(lambda: u64, rho: Option<u64>, lhs: u64, rhs: u64) -> Self {
        Witness { lambda, rho, lhs, rhs, part: None }
    }

    fn part(mut self, part: &str) -> Self {
        self.part = Some(part.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub variant: Variant,
    pub p: u64,
    pub ell: u64,
    pub lowest: u64,
    pub size: u64,
    /// The single index a pointwise check was run at.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
}

impl From<&BlockSpec> for Params {
    fn from(s: &BlockSpec) -> Self {
        Params { variant: s.variant, p: s.p, ell: s.ell, lowest: s.lowest, size: s.size, index: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub params: Params,
    pub status: Status,
    /// Always present on failure. Some passing checks also report the value
    /// they found (the non-power-of-2 diagonal entry, for instance).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Last outer index known to be verified; a sweep can be resumed after it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoint: Option<u64>,
    pub millis: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

struct Run {
    theorem: &'static str,
    params: Params,
    start: Instant,
}

impl Run {
    fn new(theorem: &'static str, spec: &BlockSpec) -> Self {
        Run { theorem, params: Params::from(spec), start: Instant::now() }
    }

    fn at(mut self, index: u64) -> Self {
        self.params.index = Some(index);
        self
    }

    fn report(self, status: Status, witness: Option<Witness>, checkpoint: Option<u64>) -> VerificationReport {
        VerificationReport {
            theorem: self.theorem.to_string(),
            params: self.params,
            status,
            witness,
            checkpoint,
            millis: self.start.elapsed().as_millis() as u64,
        }
    }

    fn pass(self) -> VerificationReport {
        self.report(Status::Pass, None, None)
    }

    fn finish(self, failure: Option<Witness>) -> VerificationReport {
        match failure {
            None => self.pass(),
            Some(w) => self.report(Status::Fail, Some(w), None),
        }
    }

    fn sweep(self, first: u64, failure: Option<Witness>, end: u64) -> VerificationReport {
        match failure {
            None => self.report(Status::Pass, None, end.checked_sub(1)),
            Some(w) => {
                let last = w.lambda.checked_sub(1).filter(|&l| l >= first);
                self.report(Status::Fail, Some(w), last)
            }
        }
    }
}

fn bit(row: &SparseRow, x: u64) -> u64 {
    u64::from(row.contains(x))
}

/// First index where two sorted sets differ, with membership in each.
fn first_mismatch(a: &[u64], b: &[u64]) -> Option<(u64, u64, u64)> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => return Some((a[i], 1, 0)),
            std::cmp::Ordering::Greater => return Some((b[j], 0, 1)),
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    match (a.get(i), b.get(j)) {
        (Some(&x), _) => Some((x, 1, 0)),
        (_, Some(&y)) => Some((y, 0, 1)),
        _ => None,
    }
}

/// `[T(λ):Δ(ρ)] = [Δ(ρ):L(σλ)]` for every `λ` outside `I_0` and every `ρ`.
pub fn verify_tilting_decomposition_duality(b: &BlockMatrices) -> Result<VerificationReport> {
    verify_tilting_decomposition_duality_from(b, 0)
}

/// As [`verify_tilting_decomposition_duality`], skipping `λ < start`.
pub fn verify_tilting_decomposition_duality_from(b: &BlockMatrices, start: u64) -> Result<VerificationReport> {
    let run = Run::new("prop4.1", b.spec());
    let shape = b.require_shape()?;
    let tilt = b.tilt_matrix()?;
    let cols = b.decomp_columns()?;
    let first = start.max(shape.interval_len());
    for lambda in first..b.size() {
        let column = cols.row(shape.sigma(lambda)?);
        if let Some((rho, lhs, rhs)) = first_mismatch(tilt.row(lambda).as_slice(), column.as_slice()) {
            return Ok(run.sweep(first, Some(Witness::new(lambda, Some(rho), lhs, rhs)), b.size()));
        }
    }
    Ok(run.sweep(first, None, b.size()))
}

/// Reflection symmetry across adjacent intervals:
///
/// * (a) `[Δ(ρ):L(μ)] = [Δ(σρ):L(μ)]` for `ρ ∈ I_c`, `μ ∈ I_{c−1}`;
/// * (b) `[T(σλ):Δ(σρ)] = [Δ(ρ):L(λ)]` for `λ, ρ ∈ I_c`.
pub fn verify_interval_symmetry(b: &BlockMatrices) -> Result<VerificationReport> {
    verify_interval_symmetry_from(b, 0)
}

pub fn verify_interval_symmetry_from(b: &BlockMatrices, start: u64) -> Result<VerificationReport> {
    let run = Run::new("prop4.4", b.spec());
    let shape = b.require_shape()?;
    let d = b.decomp_matrix()?;
    let cols = b.decomp_columns()?;
    let tilt = b.tilt_matrix()?;
    let first = start.max(shape.interval_len());
    for rho in first..b.size() {
        let below = shape.interval(shape.interval_of(rho) - 1);
        let own = d.row(rho).range(below.start, below.end);
        let reflected = d.row(shape.sigma(rho)?).range(below.start, below.end);
        if let Some((mu, lhs, rhs)) = first_mismatch(own, reflected) {
            return Ok(run.sweep(first, Some(Witness::new(rho, Some(mu), lhs, rhs).part("a")), b.size()));
        }
    }
    for lambda in first..b.size() {
        let c = shape.interval_of(lambda);
        let here = shape.interval(c);
        let below = shape.interval(c - 1);
        // σ⁻¹ of the I_{c−1} part of T(σλ), as a sorted subset of I_c.
        let mut lhs: Vec<u64> = tilt
            .row(shape.sigma(lambda)?)
            .range(below.start, below.end)
            .iter()
            .map(|&mu| shape.sigma_inverse(mu))
            .collect::<Result<_>>()?;
        lhs.reverse();
        let rhs = cols.row(lambda).range(here.start, here.end);
        if let Some((rho, l, r)) = first_mismatch(&lhs, rhs) {
            return Ok(run.sweep(first, Some(Witness::new(lambda, Some(rho), l, r).part("b")), b.size()));
        }
    }
    Ok(run.sweep(first, None, b.size()))
}

/// `T(λ) ≅ P(σλ)` as `Δ`-multisets, for every `λ` outside `I_0`.
pub fn verify_tilting_projective(b: &BlockMatrices) -> Result<VerificationReport> {
    let run = Run::new("cor4.3", b.spec());
    let shape = b.require_shape()?;
    for lambda in shape.interval_len()..b.size() {
        let t = b.tilt_row(lambda)?;
        let p = b.projective_column(shape.sigma(lambda)?)?;
        if let Some((rho, lhs, rhs)) = first_mismatch(t.as_slice(), p.as_slice()) {
            return Ok(run.finish(Some(Witness::new(lambda, Some(rho), lhs, rhs))));
        }
    }
    Ok(run.pass())
}

/// For the largest `ρ ∈ I_c`, `c ≥ 1`, the only composition factor of `Δ(ρ)`
/// in `I_{c−1}` is `L(σρ)`. The witness reports the number of such factors
/// against 1, or the offending factor.
pub fn verify_top_of_interval(b: &BlockMatrices) -> Result<VerificationReport> {
    let run = Run::new("lemma3.10", b.spec());
    let shape = b.require_shape()?;
    for c in 1..shape.a {
        let rho = shape.interval(c).end - 1;
        let below = shape.interval(c - 1);
        let row = b.decomp_row(rho)?;
        let hits = row.range(below.start, below.end);
        let sigma = shape.sigma(rho)?;
        if hits != [sigma] {
            let w = match hits.iter().find(|&&mu| mu != sigma) {
                Some(&mu) => Witness::new(rho, Some(mu), 1, 0),
                None => Witness::new(rho, Some(sigma), 0, 1),
            };
            return Ok(run.finish(Some(w)));
        }
    }
    Ok(run.pass())
}

/// For `λ` outside `I_0`, `T(λ)` has exactly two `Δ`-quotients iff `λ` is the
/// smallest index of its interval.
pub fn verify_two_quotient_tilting(b: &BlockMatrices) -> Result<VerificationReport> {
    let run = Run::new("lemma3.11", b.spec());
    let shape = b.require_shape()?;
    let pk = shape.interval_len();
    for lambda in pk..b.size() {
        let n = b.tilt_row(lambda)?.len() as u64;
        if (n == 2) != (lambda % pk == 0) {
            return Ok(run.finish(Some(Witness::new(lambda, None, n, u64::from(lambda % pk == 0) * 2))));
        }
    }
    Ok(run.pass())
}

/// Row `m ∈ I_c` of `D` is supported in `I_{c−1} ∪ I_c`.
pub fn verify_interval_support(b: &BlockMatrices) -> Result<VerificationReport> {
    let run = Run::new("interval-support", b.spec());
    let shape = b.require_shape()?;
    for m in 0..b.size() {
        let c = shape.interval_of(m);
        let lo = shape.interval(c.saturating_sub(1)).start;
        let hi = shape.interval(c).end;
        if let Some(n) = b.decomp_row(m)?.iter().find(|&n| n < lo || n >= hi) {
            return Ok(run.finish(Some(Witness::new(m, Some(n), 1, 0))));
        }
    }
    Ok(run.pass())
}

/// The socle `L(σ̄(m − 1))` of `Δ(m)` occurs as a composition factor, for
/// every `m ≥ 1`.
pub fn verify_socle(b: &BlockMatrices) -> Result<VerificationReport> {
    let run = Run::new("socle", b.spec());
    for m in 1..b.size() {
        let s = sigma_bar(m - 1, b.spec().p);
        let row = b.decomp_row(m)?;
        if !row.contains(s) {
            return Ok(run.finish(Some(Witness::new(m, Some(s), 0, 1))));
        }
    }
    Ok(run.pass())
}

/// Columns `μ ∉ I_{a−1}` of `D` and the diagonals of `C` and `C'` have
/// power-of-2 entries. The witness gives the offending count against the next power of 2.
pub fn verify_power_of_two(b: &BlockMatrices) -> Result<VerificationReport> {
    let run = Run::new("power-of-two", b.spec());
    let shape = b.require_shape()?;
    let cols = b.decomp_columns()?;
    let last = shape.interval(shape.a - 1).start;
    for mu in 0..last {
        let n = cols.row(mu).len() as u64;
        if !n.is_power_of_two() {
            return Ok(run.finish(Some(Witness::new(mu, None, n, n.next_power_of_two()).part("column"))));
        }
    }
    for (m, n) in b.cartan_matrix()?.diagonal().into_iter().enumerate() {
        if !n.is_power_of_two() {
            return Ok(run.finish(Some(Witness::new(m as u64, None, n, n.next_power_of_two()).part("cartan-diagonal"))));
        }
    }
    let ringel = b.ringel_cartan_matrix()?;
    for (m, n) in ringel.diagonal().into_iter().enumerate() {
        if !n.is_power_of_two() {
            return Ok(run.finish(Some(Witness::new(m as u64, None, n, n.next_power_of_two()).part("ringel-diagonal"))));
        }
    }
    Ok(run.pass())
}

/// The five single-block lemmas, in a fixed order.
pub fn verify_lemmas(b: &BlockMatrices) -> Result<Vec<VerificationReport>> {
    Ok(vec![
        verify_top_of_interval(b)?,
        verify_two_quotient_tilting(b)?,
        verify_interval_support(b)?,
        verify_socle(b)?,
        verify_power_of_two(b)?,
    ])
}

/// For a block of size `w = a·p^k + s`, `1 ≤ s < p^k`, not of interval shape:
/// the diagonal Cartan entry at `μ = σ(w)` is `2^t − 1` for some `t ≥ 2`,
/// where `2^t` is the same column count in the next interval-shaped block.
///
/// The witness is `λ = μ`, `ρ = w` (the first excluded index), `lhs` the
/// diagonal entry and `rhs = 2^t`.
pub fn verify_truncated_cartan(b: &BlockMatrices) -> Result<VerificationReport> {
    let run = Run::new("lemma4.6", b.spec());
    let p = b.spec().p;
    let w = b.size();
    if b.shape().is_some() {
        return Err(Error::InvalidParameters(vec![format!(
            "block size {w} is of the form a*p^k (p = {p})"
        )]));
    }
    // w ≥ p here, so k ≥ 1 and the leading digit a is at most p − 1.
    let mut k = 0u32;
    while pow(p, k + 1).is_ok_and(|x| x <= w) {
        k += 1;
    }
    let pk = pow(p, k)?;
    let a = w / pk;
    let mu = sigma_index(w, k, p)?;
    let cartan = b.cartan_matrix()?;
    let value = cartan.entry(mu, mu);
    let larger = BlockMatrices::new(b.spec().with_size((a + 1) * pk), b.recursions().clone())?;
    let full = (mu..(a + 1) * pk).map(|s| larger.decomp_row(s).map(|r| bit(&r, mu))).sum::<Result<u64>>()?;
    let witness = Witness::new(mu, Some(w), value, full);
    let ok = full.is_power_of_two() && value + 1 == full && !value.is_power_of_two();
    if ok {
        Ok(run.report(Status::Pass, Some(witness), None))
    } else {
        Ok(run.report(Status::Fail, Some(witness), None))
    }
}

/// The smallest diagonal Cartan entry that is not a power of 2, as
/// `(μ, C(μ, μ))`.
pub fn first_non_power_diagonal(b: &BlockMatrices) -> Result<Option<(u64, u64)>> {
    let c = b.cartan_matrix()?;
    Ok((0..b.size()).map(|m| (m, c.entry(m, m))).find(|&(_, v)| !v.is_power_of_two()))
}

/// Ringel self-duality of a block with `2p^k` simple modules:
///
/// * (i) the torsion images `t(P(λ))` are tilting modules `T(ν)` with every
///   `ν` hit exactly once;
/// * (ii) `[T(σλ):L(μ)] = [P(λ):L(μ)]` for non-maximal `λ ∈ I_1`, `μ ∈ I_0`;
/// * (iii) `C(μ, λ) = C'(f μ, f λ)` with `f(m) = 2p^k − 1 − m`.
pub fn verify_ringel_self_duality(b: &BlockMatrices) -> Result<VerificationReport> {
    let run = Run::new("ringel", b.spec());
    let shape = b.require_shape()?;
    let w = b.size();
    if shape.a != 2 {
        return Err(Error::InvalidParameters(vec![format!(
            "Ringel self-duality needs a block of size 2*p^k, got {w}"
        )]));
    }
    let pk = shape.interval_len();

    let mut hit = vec![false; w as usize];
    for lambda in 0..w {
        let nu = match b.torsion_image(lambda)? {
            TorsionImage::FullProjective(n) | TorsionImage::Tilting(n) | TorsionImage::Simple(n) => n,
            TorsionImage::Unsupported => {
                return Ok(run.finish(Some(Witness::new(lambda, None, 0, 1).part("torsion"))));
            }
        };
        if nu >= w || std::mem::replace(&mut hit[nu as usize], true) {
            return Ok(run.finish(Some(Witness::new(lambda, Some(nu), 2, 1).part("torsion"))));
        }
    }

    let d = b.decomp_matrix()?;
    let tilt = b.tilt_matrix()?;
    let cartan = b.cartan_matrix()?;
    for lambda in pk..w - 1 {
        let mut counts = vec![0u64; pk as usize];
        for rho in tilt.row(shape.sigma(lambda)?) {
            for mu in d.row(rho).range(0, pk) {
                counts[*mu as usize] += 1;
            }
        }
        for mu in 0..pk {
            let rhs = cartan.entry(lambda, mu);
            if counts[mu as usize] != rhs {
                return Ok(run.finish(Some(Witness::new(lambda, Some(mu), counts[mu as usize], rhs).part("multiplicity"))));
            }
        }
    }

    let ringel = b.ringel_cartan_matrix()?;
    for mu in 0..w {
        for lambda in 0..w {
            let lhs = cartan.entry(mu, lambda);
            let rhs = ringel.entry(w - 1 - mu, w - 1 - lambda);
            if lhs != rhs {
                return Ok(run.finish(Some(Witness::new(mu, Some(lambda), lhs, rhs).part("cartan"))));
            }
        }
    }
    Ok(run.pass())
}

/// `Δ̄`-quotients `V` of the classical projective cover of `L̄(m)` in the
/// truncated classical block `P̄_{(c+1)p^x}(m)`.
pub fn classical_projective_quotients(b: &BlockMatrices, m: u64) -> Result<Vec<u64>> {
    let shape = b.require_shape()?;
    let p = shape.p;
    let c = shape.interval_of(m);
    let strip = strip_trailing(m, p);
    if c == 0 || strip.t >= shape.k {
        return Err(Error::InvalidParameters(vec![format!(
            "index {m} is not a non-maximal element of I_c with c >= 1 (block size {})",
            b.size()
        )]));
    }
    let x = shape.k - 1 - strip.t;
    let n = strip.reduced / p;
    let j = strip.reduced % p;
    let lowest = if n.is_multiple_of(2) { j } else { p - 2 - j };
    let members = BlockSpec::classical(p, lowest, (c + 1) * pow(p, x)?)?;
    let pt = pow(p, strip.t)?;
    let rec = b.recursions();
    let mut v = Vec::new();
    for idx in 0..members.size {
        let u = pt - 1 + pt * members.weight_of_index(idx)?;
        if rec.decomp_row(u)?.contains(m) {
            v.push(u);
        }
    }
    Ok(v)
}

/// `P(λ) ≅ T(ℓ + ī*) ⊗ P̄(m)^F` at the level of `Δ`-quotients, for one
/// non-maximal `λ = m ∈ I_c` in a block of size `(c + 1)p^k`.
///
/// The witness on failure compares `Q = ∪_{u ∈ V} {u, u + 1}` with the
/// projective column: either the first differing index (part "column") or
/// `|Q|` against `2|V|` (part "count").
pub fn verify_factorization_at(b: &BlockMatrices, m: u64) -> Result<VerificationReport> {
    let run = Run::new("factorization", b.spec()).at(m);
    let shape = b.require_shape()?;
    if shape.interval_of(m) + 1 != shape.a {
        return Err(Error::InvalidParameters(vec![format!(
            "index {m} must lie in the last interval of a block of size {}",
            b.size()
        )]));
    }
    let v = classical_projective_quotients(b, m)?;
    let mut q: Vec<u64> = v.iter().flat_map(|&u| [u, u + 1]).collect();
    q.sort_unstable();
    q.dedup();
    if q.len() != 2 * v.len() {
        return Ok(run.finish(Some(Witness::new(m, None, q.len() as u64, 2 * v.len() as u64).part("count"))));
    }
    let column = b.projective_column(m)?;
    if let Some((rho, lhs, rhs)) = first_mismatch(&q, column.as_slice()) {
        return Ok(run.finish(Some(Witness::new(m, Some(rho), lhs, rhs).part("column"))));
    }
    Ok(run.pass())
}

/// [`verify_factorization_at`] for every non-maximal index of the last
/// interval.
pub fn verify_factorization(b: &BlockMatrices) -> Result<VerificationReport> {
    let run = Run::new("factorization", b.spec());
    let shape = b.require_shape()?;
    if shape.a >= 2 {
        let last = shape.interval(shape.a - 1);
        for m in last.start..last.end - 1 {
            let r = verify_factorization_at(b, m)?;
            if !r.passed() {
                return Ok(run.finish(r.witness));
            }
        }
    }
    Ok(run.pass())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(p: u64, size: u64) -> BlockMatrices {
        BlockMatrices::for_spec(BlockSpec::classical(p, 0, size).unwrap()).unwrap()
    }

    #[test]
    fn small_blocks_pass_everything() {
        for (p, w) in [(5, 10), (5, 25), (2, 2), (2, 4), (2, 8), (3, 18), (7, 14), (5, 1)] {
            let b = block(p, w);
            assert!(verify_tilting_decomposition_duality(&b).unwrap().passed(), "{p} {w}");
            assert!(verify_interval_symmetry(&b).unwrap().passed(), "{p} {w}");
            assert!(verify_tilting_projective(&b).unwrap().passed(), "{p} {w}");
            for r in verify_lemmas(&b).unwrap() {
                assert!(r.passed(), "{} {p} {w}", r.theorem);
            }
            assert!(verify_factorization(&b).unwrap().passed(), "{p} {w}");
        }
    }

    #[test]
    fn ringel_examples() {
        for (p, w) in [(5, 10), (2, 2), (3, 54)] {
            assert!(verify_ringel_self_duality(&block(p, w)).unwrap().passed());
        }
        assert!(verify_ringel_self_duality(&block(5, 15)).is_err());
    }

    #[test]
    fn truncated_cartan_examples() {
        let r = verify_truncated_cartan(&block(5, 11)).unwrap();
        assert!(r.passed());
        assert_eq!(r.witness, Some(Witness::new(8, Some(11), 3, 4)));
        let r = verify_truncated_cartan(&block(5, 12)).unwrap();
        assert!(r.passed());
        assert_eq!(r.witness.unwrap().lambda, 7);
        assert!(verify_truncated_cartan(&block(2, 5)).unwrap().passed());
        assert!(verify_truncated_cartan(&block(5, 10)).is_err());
        assert_eq!(first_non_power_diagonal(&block(5, 11)).unwrap().map(|x| x.1), Some(3));
    }

    #[test]
    fn factorization_example() {
        let b = block(5, 10);
        assert_eq!(classical_projective_quotients(&b, 6).unwrap(), [6]);
        assert_eq!(b.projective_column(6).unwrap().as_slice(), [6, 7]);
        assert!(verify_factorization_at(&b, 6).unwrap().passed());
        assert!(verify_factorization_at(&b, 9).is_err());
        assert!(verify_factorization_at(&b, 3).is_err());
    }

    #[test]
    fn resume_skips_verified_prefix() {
        let b = block(3, 54);
        let full = verify_tilting_decomposition_duality(&b).unwrap();
        assert_eq!(full.checkpoint, Some(53));
        let resumed = verify_tilting_decomposition_duality_from(&b, 40).unwrap();
        assert!(resumed.passed());
    }

    #[test]
    fn report_serializes_with_greek_keys() {
        let mut r = verify_truncated_cartan(&block(5, 11)).unwrap();
        r.millis = 0;
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""witness":{"λ":8,"ρ":11,"lhs":3,"rhs":4}"#), "{json}");
        assert!(json.contains(r#""status":"pass""#));
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
