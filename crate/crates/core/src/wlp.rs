//! Wordlength patterns and the orders used to compare them.
//!
//! [`wordlength_pattern`] goes through the dual weight distribution: the run
//! weights of a design are the weights of the code spanned by the rows of its
//! label matrix, and the defining words are the dual code. The Krawtchouk
//! transform is evaluated in exact integers and must divide out cleanly.
//! [`wordlength_pattern_enum`] counts defining words directly and serves as
//! an independent check.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::design::{label_positions, Design};
use crate::error::{capacity, Error, Result};
use crate::gf2core::{binomial, krawtchouk_column, q_coefficient, ExactRational};

/// Default limit on enumeration nodes for direct word counting.
pub const DEFAULT_ENUM_BUDGET: u64 = 50_000_000;

/// `(A_0, A_1, ..., A_n)` with `A_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordlengthPattern {
    #[serde(rename = "A", with = "crate::json::big_vec")]
    a: Vec<BigInt>,
}

impl WordlengthPattern {
    pub fn from_counts(a: Vec<BigInt>) -> Self {
        Self { a }
    }

    pub fn from_u64(a: &[u64]) -> Self {
        Self { a: a.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.a
    }

    /// `A_i`, zero beyond the stored length.
    pub fn get(&self, i: usize) -> BigInt {
        self.a.get(i).cloned().unwrap_or_default()
    }

    /// Highest stored index (the factor count for a full pattern).
    pub fn max_len(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    /// `sum_i A_i`, including `A_0`.
    pub fn total(&self) -> BigInt {
        self.a.iter().sum()
    }

    pub fn resolution(&self) -> Resolution {
        match self.a.iter().skip(1).position(|x| !x.is_zero()) {
            Some(p) => Resolution::Finite(p + 1),
            None => Resolution::Infinite,
        }
    }

    /// `(A_lo, ..., A_hi)`, zero-padded.
    pub fn slice(&self, lo: usize, hi: usize) -> Vec<BigInt> {
        (lo..=hi).map(|i| self.get(i)).collect()
    }
}

/// Shortest defining-word length, or infinite when no word exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Resolution {
    Finite(usize),
    Infinite,
}

impl Resolution {
    pub fn at_least(self, r: usize) -> bool {
        match self {
            Resolution::Finite(x) => x >= r,
            Resolution::Infinite => true,
        }
    }
}

impl Serialize for Resolution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Resolution::Finite(r) => s.serialize_u64(*r as u64),
            Resolution::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Resolution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "inf" => Ok(Resolution::Infinite),
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|r| Resolution::Finite(r as usize))
                .ok_or_else(|| D::Error::custom("resolution must be a positive integer")),
            other => Err(D::Error::custom(format!("bad resolution {other}"))),
        }
    }
}

/// Exact wordlength pattern through the dual weight distribution.
pub fn wordlength_pattern(d: &Design) -> Result<WordlengthPattern> {
    let dist = d.row_weight_distribution()?;
    wlp_from_weight_distribution(&dist, d.n_factors(), d.log2_runs(), d.rank())
}

/// `A_i = 2^{-r} sum_j B_j K_i(j; n)`, where `B` is the distribution over the
/// `2^r` distinct codewords; each codeword occurs `2^{k-r}` times among runs.
pub(crate) fn wlp_from_weight_distribution(
    dist: &BTreeMap<u32, u64>,
    n: usize,
    log2_runs: u32,
    rank: usize,
) -> Result<WordlengthPattern> {
    let repeat = BigInt::one() << (log2_runs as usize - rank);
    let mut a = vec![BigInt::zero(); n + 1];
    for (&w, &count) in dist {
        let (b, rem) = BigInt::from(count).div_rem(&repeat);
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "weight {w} occurs {count} times, not a multiple of 2^{}",
                log2_runs as usize - rank
            )));
        }
        for (ai, k) in a.iter_mut().zip(krawtchouk_column(w as u64, n as u64)) {
            *ai += &b * k;
        }
    }
    let size = BigInt::one() << rank;
    for (i, ai) in a.iter_mut().enumerate() {
        let (q, rem) = ai.div_rem(&size);
        if !rem.is_zero() || q.is_negative() {
            return Err(Error::Internal(format!("transform gave A_{i} = {ai}/2^{rank}, not a nonnegative integer")));
        }
        *ai = q;
    }
    Ok(WordlengthPattern { a })
}

/// `A_1..A_max_len` by direct enumeration of column subsets.
pub fn wordlength_pattern_enum(d: &Design, max_len: usize, budget: u64) -> Result<WordlengthPattern> {
    let max_len = max_len.min(d.n_factors());
    let mut a = vec![0u64; max_len + 1];
    a[0] = 1;
    for_each_word(d.labels(), max_len, budget, |word| a[word.len()] += 1)?;
    Ok(WordlengthPattern::from_u64(&a))
}

/// Calls `visit` on every defining word of length `1..=max_len` (0-based
/// positions, ascending).
///
/// Walks subsets of size `< max_len` and closes each with a label lookup, so
/// the work is `sum_{s < max_len} C(n, s)`; `budget` bounds that sum.
pub(crate) fn for_each_word(
    labels: &[u64],
    max_len: usize,
    budget: u64,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    let n = labels.len();
    if max_len == 0 || n == 0 {
        return Ok(());
    }
    let nodes: BigInt = (0..max_len).map(|s| binomial(n as i64, s as i64)).sum();
    if nodes > BigInt::from(budget) {
        return capacity(format!(
            "enumerating words up to length {max_len} over {n} columns needs {nodes} steps (budget {budget})"
        ));
    }
    let positions = label_positions(labels);
    let mut prefix: Vec<usize> = Vec::with_capacity(max_len);
    fn walk(
        labels: &[u64],
        positions: &std::collections::HashMap<u64, Vec<usize>>,
        max_len: usize,
        start: usize,
        acc: u64,
        prefix: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if let Some(ps) = positions.get(&acc) {
            for &q in ps.iter().filter(|&&q| q >= start) {
                prefix.push(q);
                visit(prefix);
                prefix.pop();
            }
        }
        if prefix.len() + 1 >= max_len {
            return;
        }
        for p in start..labels.len() {
            prefix.push(p);
            walk(labels, positions, max_len, p + 1, acc ^ labels[p], prefix, visit);
            prefix.pop();
        }
    }
    walk(labels, &positions, max_len, 0, 0, &mut prefix, &mut visit);
    Ok(())
}

pub fn resolution(d: &Design) -> Result<Resolution> {
    Ok(wordlength_pattern(d)?.resolution())
}

/// `N sum_{i=0}^{min(n,k)} Q_k(i; n) A_i`.
pub fn pless_rhs(wlp: &WordlengthPattern, runs: u64, n: usize, k: usize) -> ExactRational {
    let sum: ExactRational =
        (0..=n.min(k)).map(|i| q_coefficient(k, i, n as u64) * ExactRational::from_integer(wlp.get(i))).sum();
    sum * ExactRational::from(runs as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlessEntry {
    pub k: usize,
    #[serde(with = "crate::json::big")]
    pub moment: BigInt,
    pub rhs: ExactRational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlessReport {
    pub entries: Vec<PlessEntry>,
    pub pass: bool,
}

/// Checks `M_k(D) = N sum_i Q_k(i; n) A_i(D)` for `k = 1..=k_max`.
pub fn verify_pless(d: &Design, k_max: usize) -> Result<PlessReport> {
    let dist = d.row_weight_distribution()?;
    let wlp = wlp_from_weight_distribution(&dist, d.n_factors(), d.log2_runs(), d.rank())?;
    let entries: Vec<PlessEntry> = (1..=k_max)
        .map(|k| {
            let moment = crate::design::moment_of_distribution(&dist, k as u32);
            let rhs = pless_rhs(&wlp, d.runs(), d.n_factors(), k);
            let pass = rhs == ExactRational::from_integer(moment.clone());
            PlessEntry { k, moment, rhs, pass }
        })
        .collect();
    let pass = entries.iter().all(|e| e.pass);
    Ok(PlessReport { entries, pass })
}

/// Minimum-aberration order: lexicographic on `(A_1, A_2, ...)`, padded with
/// zeros. `Less` means `a` has less aberration.
pub fn ma_compare(a: &WordlengthPattern, b: &WordlengthPattern) -> Ordering {
    let len = a.a.len().max(b.a.len());
    for i in 1..len {
        match a.get(i).cmp(&b.get(i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// `(A_4, -A_5, A_6, -A_7, ...)`, compared lexicographically with zero
/// padding; smaller is better.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeqKey(#[serde(with = "crate::json::big_vec")] pub Vec<BigInt>);

impl Ord for SeqKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.0.len().max(other.0.len());
        let zero = BigInt::zero();
        for i in 0..len {
            let (x, y) = (self.0.get(i).unwrap_or(&zero), other.0.get(i).unwrap_or(&zero));
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for SeqKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Key over the whole stored pattern.
pub fn seq_key(a: &WordlengthPattern) -> SeqKey {
    seq_key_to_depth(a, a.max_len().max(4))
}

/// Key over `A_4..A_depth`.
pub fn seq_key_to_depth(a: &WordlengthPattern, depth: usize) -> SeqKey {
    SeqKey((4..=depth).map(|i| if i % 2 == 1 { -a.get(i) } else { a.get(i) }).collect())
}
