//! Shared test fixtures: the printed p = 5 matrices and a character-based
//! oracle that does not use the short exact sequences.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Decomposition matrix, p = 5, first 25 block indices. Row `m` lists
/// columns `0..=m`; `1` marks a composition factor.
pub const REFERENCE_DECOMPOSITION: [&str; 25] = [
    "1",
    "11",
    ".11",
    "..11",
    "...11",
    "...111",
    "..11.11",
    ".11...11",
    "11.....11",
    "1.......11",
    "........111",
    ".......11.11",
    "......11...11",
    ".....11.....11",
    ".....1.......11",
    ".............111",
    "............11.11",
    "...........11...11",
    "..........11.....11",
    "..........1.......11",
    "..................111",
    ".................11.11",
    "................11...11",
    "...............11.....11",
    "...............1.......11",
];

/// Tilting matrix, p = 5, same layout.
pub const REFERENCE_TILTING: [&str; 25] = [
    "1",
    "11",
    ".11",
    "..11",
    "...11",
    "....11",
    "...1111",
    "..11..11",
    ".11....11",
    "11......11",
    ".........11",
    "........1111",
    ".......11..11",
    "......11....11",
    ".....11......11",
    "..............11",
    ".............1111",
    "............11..11",
    "...........11....11",
    "..........11......11",
    "...................11",
    "..................1111",
    ".................11..11",
    "................11....11",
    "...............11......11",
];

pub fn reference_supports(rows: &[&str]) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|r| r.bytes().enumerate().filter(|(_, b)| *b == b'1').map(|(i, _)| i as u64).collect())
        .collect()
}

/// Formal character: weight -> multiplicity.
pub type Character = BTreeMap<i64, i64>;

pub fn weyl(m: u64) -> Character {
    let m = m as i64;
    (0..=m).map(|j| (m - 2 * j, 1)).collect()
}

pub fn twist(ch: &Character, q: i64) -> Character {
    ch.iter().map(|(&w, &c)| (w * q, c)).collect()
}

pub fn product(a: &Character, b: &Character) -> Character {
    let mut out = Character::new();
    for (&x, &c) in a {
        for (&y, &d) in b {
            *out.entry(x + y).or_default() += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Simple character from the base-p digits of `m`.
pub fn simple(m: u64, p: u64) -> Character {
    let mut ch: Character = [(0, 1)].into_iter().collect();
    let (mut rest, mut q) = (m, 1i64);
    while rest > 0 {
        ch = product(&ch, &twist(&weyl(rest % p), q));
        rest /= p;
        q *= p as i64;
    }
    ch
}

/// Tilting character from the tensor product decomposition of tilting
/// modules: `T(p − 1 + r + p·s) = T(p − 1 + r) ⊗ T(s)^F`.
pub fn tilting(m: u64, p: u64) -> Character {
    if m < p {
        return weyl(m);
    }
    let r = (m - (p - 1)) % p;
    let s = (m - (p - 1)) / p;
    let base = if r == 0 {
        weyl(p - 1)
    } else {
        let mut ch = weyl(p - 1 + r);
        for (w, c) in weyl(p - 1 - r) {
            *ch.entry(w).or_default() += c;
        }
        ch
    };
    product(&base, &twist(&tilting(s, p), p as i64))
}

/// Writes `ch` as a sum of `basis(h)` by repeatedly removing the highest
/// weight. Returns `(highest weight, coefficient)` pairs.
pub fn peel(mut ch: Character, basis: impl Fn(u64) -> Character) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    while let Some((&h, &c)) = ch.iter().next_back() {
        assert!(h >= 0, "character is not symmetric");
        for (w, d) in basis(h as u64) {
            let e = ch.entry(w).or_default();
            *e -= c * d;
            if *e == 0 {
                ch.remove(&w);
            }
        }
        out.push((h as u64, c));
    }
    out.sort_unstable();
    out
}

/// `{n : [Δ̄(m):L̄(n)] ≠ 0}` by peeling simple characters off `χ(m)`;
/// panics on a multiplicity other than 1.
pub fn oracle_decomposition(m: u64, p: u64) -> Vec<u64> {
    support(peel(weyl(m), |h| simple(h, p)))
}

/// `{n : [T̄(m):Δ̄(n)] ≠ 0}` by peeling Weyl characters off the tilting
/// character.
pub fn oracle_tilting(m: u64, p: u64) -> Vec<u64> {
    support(peel(tilting(m, p), weyl))
}

fn support(terms: Vec<(u64, i64)>) -> Vec<u64> {
    terms
        .into_iter()
        .map(|(h, c)| {
            assert_eq!(c, 1, "multiplicity {c} at {h}");
            h
        })
        .collect()
}

/// Power-of-two test written out by hand so it does not share code with the
/// library.
pub fn is_pow2(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}
