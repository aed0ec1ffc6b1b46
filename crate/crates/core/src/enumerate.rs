//! Canonical basis words of the relatively free algebras of `L_n`, their
//! closed-form count, and multilinear codimensions.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::rewrite::canonical_word;
use crate::term::{x, LeftNormedWord};

/// Canonical words in `x_1..x_m` grouped by degree, for `L_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCatalog {
    pub n: usize,
    pub m: usize,
    pub by_degree: BTreeMap<usize, Vec<LeftNormedWord>>,
    /// The degree-0 unit counted by the dimension formula; never a word.
    pub includes_unit: bool,
}

impl BasisCatalog {
    /// Number of words, excluding the unit.
    pub fn word_count(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn total(&self) -> usize {
        self.word_count() + usize::from(self.includes_unit)
    }

    pub fn words(&self) -> impl Iterator<Item = &LeftNormedWord> {
        self.by_degree.values().flatten()
    }

    pub fn to_json(&self, with_words: bool) -> Value {
        let counts: serde_json::Map<String, Value> = self
            .by_degree
            .iter()
            .map(|(s, ws)| (s.to_string(), json!(ws.len())))
            .collect();
        let mut v = json!({
            "n": self.n,
            "m": self.m,
            "by_degree": counts,
            "unit": usize::from(self.includes_unit),
            "total": self.total(),
        });
        if with_words {
            let words: serde_json::Map<String, Value> = self
                .by_degree
                .iter()
                .map(|(s, ws)| (s.to_string(), ws.iter().map(|w| json!(w.indices())).collect()))
                .collect();
            v["words"] = Value::Object(words);
        }
        v
    }
}

/// Nondecreasing sequences of length `len` over `1..=m`, in lexicographic order.
fn sorted_sequences(m: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(m: u32, len: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            cur.push(v);
            go(m, len, v, cur, out);
            cur.pop();
        }
    }
    go(m, len, 1, &mut cur, &mut out);
    out
}

fn word(indices: &[u32]) -> LeftNormedWord {
    LeftNormedWord::new(indices.iter().map(|&k| x(k)).collect()).expect("nonempty")
}

pub fn basis_monomials(n: usize, m: usize) -> Result<BasisCatalog> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be at least 1".into()));
    }
    let mu = m as u32;
    let mut by_degree = BTreeMap::new();
    for s in 1..=n {
        let words: Vec<LeftNormedWord> = if s == n {
            sorted_sequences(mu, s).iter().map(|w| word(w)).collect()
        } else {
            (1..=mu)
                .flat_map(|j| {
                    sorted_sequences(mu, s - 1).into_iter().map(move |tail| {
                        let mut w = vec![j];
                        w.extend(tail);
                        word(&w)
                    })
                })
                .collect()
        };
        by_degree.insert(s, words);
    }
    Ok(BasisCatalog {
        n,
        m,
        by_degree,
        includes_unit: true,
    })
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `1 + C(n+m-1, m-1) + sum_{s=1}^{n-1} sum_{l=1}^{min(m,s)} l C(m,l) C(s-1,l-1)`.
pub fn dim_relatively_free(n: usize, m: usize) -> Result<BigUint> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be at least 1".into()));
    }
    let (n, m) = (n as u64, m as u64);
    let mut total = BigUint::one() + binomial(n + m - 1, m - 1);
    for s in 1..n {
        for l in 1..=m.min(s) {
            total += BigUint::from(l) * binomial(m, l) * binomial(s - 1, l - 1);
        }
    }
    Ok(total)
}

/// `c_m`: dimension of the multilinear part of degree `m` modulo identities.
pub fn multilinear_codim(algebra: Algebra, m: usize) -> Result<usize> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    Ok(match algebra {
        Algebra::Infinite => m,
        Algebra::Finite(n) if m < n => m,
        Algebra::Finite(n) if m == n => 1,
        Algebra::Finite(_) => 0,
    })
}

/// Counts distinct canonical forms of all `m!` multilinear left-normed words.
pub fn count_multilinear_canonical(algebra: Algebra, m: usize) -> usize {
    let mut perm: Vec<u32> = (1..=m as u32).collect();
    let mut seen = std::collections::HashSet::new();
    loop {
        if let Some(w) = canonical_word(&word(&perm), algebra) {
            seen.insert(w);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    seen.len()
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(c: &BasisCatalog) -> Vec<usize> {
        c.by_degree.values().map(Vec::len).collect()
    }

    #[test]
    fn small_catalogs() {
        let c = basis_monomials(2, 2).unwrap();
        let ws: Vec<Vec<u32>> = c.words().map(|w| w.indices()).collect();
        assert_eq!(ws, vec![vec![1], vec![2], vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(c.total(), 6);

        let c = basis_monomials(3, 2).unwrap();
        assert_eq!(counts(&c), vec![2, 4, 4]);
        assert_eq!(c.total(), 11);

        let c = basis_monomials(1, 3).unwrap();
        assert_eq!(counts(&c), vec![3]);
        assert_eq!(c.total(), 4);
    }

    #[test]
    fn formula_spot_values() {
        assert_eq!(dim_relatively_free(2, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(dim_relatively_free(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(dim_relatively_free(3, 2).unwrap(), BigUint::from(11u32));
    }

    #[test]
    fn codimensions() {
        assert_eq!(multilinear_codim(Algebra::Infinite, 5).unwrap(), 5);
        assert_eq!(multilinear_codim(Algebra::Finite(4), 4).unwrap(), 1);
        assert_eq!(multilinear_codim(Algebra::Finite(4), 6).unwrap(), 0);
        assert_eq!(multilinear_codim(Algebra::Finite(4), 3).unwrap(), 3);
        assert_eq!(count_multilinear_canonical(Algebra::Infinite, 5), 5);
        assert_eq!(count_multilinear_canonical(Algebra::Finite(4), 4), 1);
        assert_eq!(count_multilinear_canonical(Algebra::Finite(4), 6), 0);
    }

    #[test]
    fn catalog_json() {
        let v = basis_monomials(3, 2).unwrap().to_json(false);
        assert_eq!(
            v,
            json!({"n": 3, "m": 2, "by_degree": {"1": 2, "2": 4, "3": 4}, "unit": 1, "total": 11})
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }
}
