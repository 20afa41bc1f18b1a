//! Regular two-level designs as ordered lists of GF(2) column labels.
//!
//! A design with `log2_runs = k` has `N = 2^k` runs indexed by `x` in
//! `0..N`; entry `(x, j)` is the parity of `x & labels[j]`. The N x n matrix
//! is never materialized. Column indices in the public interface are
//! 1-based.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{capacity, invalid, Error, Result};
use crate::gf2core::{rank_of_masks, BitLabel, MAX_WIDTH};

/// Largest run-size exponent for operations that sweep every run.
pub const MAX_ROW_LOG2: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Design {
    log2_runs: u32,
    labels: Vec<u64>,
}

impl Design {
    /// Design with the given (possibly empty) column list.
    pub fn with_columns(log2_runs: u32, labels: Vec<u64>) -> Result<Self> {
        if log2_runs > MAX_WIDTH {
            return capacity(format!("run-size exponent {log2_runs} exceeds {MAX_WIDTH}"));
        }
        for (j, &l) in labels.iter().enumerate() {
            if log2_runs < 64 && l >> log2_runs != 0 {
                return invalid(format!("label {l} of column {} does not fit in width {log2_runs}", j + 1));
            }
        }
        Ok(Self { log2_runs, labels })
    }

    pub fn empty(log2_runs: u32) -> Self {
        Self { log2_runs, labels: Vec::new() }
    }

    pub fn log2_runs(&self) -> u32 {
        self.log2_runs
    }

    /// Number of runs `N = 2^k`.
    pub fn runs(&self) -> u64 {
        1u64 << self.log2_runs
    }

    pub fn n_factors(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Label of 1-based column `j`.
    pub fn label(&self, j: usize) -> BitLabel {
        BitLabel::new(self.labels[j - 1], self.log2_runs).expect("labels validated on construction")
    }

    pub fn rank(&self) -> usize {
        rank_of_masks(&self.labels)
    }

    pub fn has_zero_label(&self) -> bool {
        self.labels.contains(&0)
    }

    pub fn has_repeated_labels(&self) -> bool {
        let mut seen = self.labels.clone();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }

    /// Entry (0/1) at run `row` and 1-based column `col`.
    pub fn entry(&self, row: u64, col: usize) -> u8 {
        ((row & self.labels[col - 1]).count_ones() & 1) as u8
    }

    /// Hamming weight of run `row`.
    pub fn row_weight(&self, row: u64) -> u32 {
        self.labels.iter().map(|&l| (row & l).count_ones() & 1).sum()
    }

    /// Hamming weight of every run, indexed by run.
    ///
    /// Uses a Walsh-Hadamard transform of the label histogram:
    /// `w(x) = (n - sum_v c_v (-1)^{x.v}) / 2`.
    pub fn row_weights(&self) -> Result<Vec<u32>> {
        if self.log2_runs > MAX_ROW_LOG2 {
            return capacity(format!("row sweep over 2^{} runs exceeds 2^{MAX_ROW_LOG2}", self.log2_runs));
        }
        let size = 1usize << self.log2_runs;
        let mut h = vec![0i32; size];
        for &l in &self.labels {
            h[l as usize] += 1;
        }
        walsh_hadamard(&mut h);
        let n = self.labels.len() as i32;
        Ok(h.into_iter().map(|c| ((n - c) / 2) as u32).collect())
    }

    /// Map weight -> number of runs with that weight.
    pub fn row_weight_distribution(&self) -> Result<BTreeMap<u32, u64>> {
        let mut dist = BTreeMap::new();
        for w in self.row_weights()? {
            *dist.entry(w).or_insert(0u64) += 1;
        }
        Ok(dist)
    }

    /// `M_k = sum over runs of weight^k`.
    pub fn moment(&self, k: u32) -> Result<BigInt> {
        Ok(moment_of_distribution(&self.row_weight_distribution()?, k))
    }

    /// The 2N x 2n double `[[X, X], [X, X + 1]]`.
    ///
    /// The new run bit becomes the highest label bit; the second column block
    /// is appended after the first.
    pub fn double(&self) -> Result<Design> {
        if self.log2_runs + 1 > MAX_WIDTH {
            return capacity(format!("doubling would exceed label width {MAX_WIDTH}"));
        }
        let bit = 1u64 << self.log2_runs;
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|&l| l | bit));
        Ok(Design { log2_runs: self.log2_runs + 1, labels })
    }

    /// Doubles `t` times and records the pedigree.
    pub fn double_iter(&self, t: u32) -> Result<DoubledDesign> {
        let mut d = self.clone();
        for _ in 0..t {
            d = d.double()?;
        }
        Ok(DoubledDesign { design: d, pedigree: DoublingPedigree { base: self.clone(), t } })
    }

    /// Columns `keep` (1-based, distinct) in the given order.
    pub fn project(&self, keep: &[usize]) -> Result<Design> {
        check_columns(keep, self.labels.len())?;
        Ok(Design { log2_runs: self.log2_runs, labels: keep.iter().map(|&j| self.labels[j - 1]).collect() })
    }

    /// Every nonempty column subset whose labels sum to zero, as bit-masks
    /// over the 0-based column positions.
    pub fn defining_words(&self) -> Result<Vec<u128>> {
        let n = self.labels.len();
        if n > 128 {
            return capacity("defining-word listing supports at most 128 columns");
        }
        let kernel = kernel_basis(&self.labels);
        if kernel.len() > 24 {
            return capacity(format!("defining subgroup of size 2^{} too large to list", kernel.len()));
        }
        let mut words = Vec::with_capacity((1usize << kernel.len()) - 1);
        let mut cur = 0u128;
        for g in 1u64..(1u64 << kernel.len()) {
            cur ^= kernel[g.trailing_zeros() as usize];
            words.push(cur);
        }
        words.sort_unstable();
        Ok(words)
    }
}

/// Design from an explicit nonempty column list.
pub fn design_from_labels(log2_runs: u32, labels: Vec<u64>) -> Result<Design> {
    if labels.is_empty() {
        return invalid("a design needs at least one column");
    }
    Design::with_columns(log2_runs, labels)
}

/// Regular `2^{n-p}` design whose defining contrast subgroup is generated by
/// `generator_words` (1-based factor subsets).
///
/// Pivots are taken from the highest-numbered factors, so the remaining
/// (basic) factors receive unit labels in increasing order and each pivot
/// factor is the product of basic factors named by its reduced word.
pub fn design_from_defining_words(n: usize, generator_words: &[Vec<usize>]) -> Result<Design> {
    if n == 0 || n > 128 {
        return invalid(format!("factor count {n} outside 1..=128"));
    }
    let mut rows: Vec<u128> = Vec::with_capacity(generator_words.len());
    for (w, word) in generator_words.iter().enumerate() {
        let mut mask = 0u128;
        for &f in word {
            if f == 0 || f > n {
                return invalid(format!("word {} names factor {f} outside 1..={n}", w + 1));
            }
            if mask >> (f - 1) & 1 == 1 {
                return invalid(format!("word {} repeats factor {f}", w + 1));
            }
            mask |= 1u128 << (f - 1);
        }
        if mask == 0 {
            return invalid(format!("word {} is empty", w + 1));
        }
        rows.push(mask);
    }
    // reduced row echelon form with pivots chosen from the right; `combo`
    // records which generators each row is built from
    let p = rows.len();
    let mut combos: Vec<u128> = (0..p).map(|i| 1u128 << i).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut next_row = 0;
    for col in (0..n).rev() {
        let Some(r) = (next_row..p).find(|&r| rows[r] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(next_row, r);
        combos.swap(next_row, r);
        for other in 0..p {
            if other != next_row && rows[other] >> col & 1 == 1 {
                rows[other] ^= rows[next_row];
                combos[other] ^= combos[next_row];
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    if next_row < p {
        let dependent: Vec<String> =
            (0..p).filter(|&i| combos[next_row] >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
        return Err(Error::InvalidInput(format!(
            "generator words are dependent: the product of words {} is the identity",
            dependent.join(", ")
        )));
    }
    let k = n - p;
    if k as u32 > MAX_WIDTH {
        return capacity(format!("{k} basic factors exceed label width {MAX_WIDTH}"));
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut labels = vec![0u64; n];
    for (s, &c) in free.iter().enumerate() {
        labels[c] = 1u64 << s;
    }
    for (r, &pc) in pivots.iter().enumerate() {
        labels[pc] =
            free.iter().enumerate().filter(|&(_, &c)| rows[r] >> c & 1 == 1).fold(0u64, |acc, (s, _)| acc | 1u64 << s);
    }
    Design::with_columns(k as u32, labels)
}

/// Basis of the GF(2) relations among `labels`, as position bit-masks.
pub(crate) fn kernel_basis(labels: &[u64]) -> Vec<u128> {
    let mut basis: [(u64, u128); 64] = [(0, 0); 64];
    let mut kernel = Vec::new();
    for (pos, &l) in labels.iter().enumerate() {
        let mut v = l;
        let mut combo = 1u128 << pos;
        loop {
            if v == 0 {
                kernel.push(combo);
                break;
            }
            let top = 63 - v.leading_zeros() as usize;
            if basis[top].0 == 0 {
                basis[top] = (v, combo);
                break;
            }
            v ^= basis[top].0;
            combo ^= basis[top].1;
        }
    }
    kernel
}

pub(crate) fn walsh_hadamard(h: &mut [i32]) {
    let mut len = 1;
    while len < h.len() {
        for block in h.chunks_mut(2 * len) {
            let (lo, hi) = block.split_at_mut(len);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        len <<= 1;
    }
}

pub(crate) fn moment_of_distribution(dist: &BTreeMap<u32, u64>, k: u32) -> BigInt {
    dist.iter().fold(BigInt::zero(), |acc, (&w, &c)| acc + num_traits::pow(BigInt::from(w), k as usize) * c)
}

fn check_columns(cols: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    for &j in cols {
        if j == 0 || j > n {
            return invalid(format!("column index {j} outside 1..={n}"));
        }
        if seen[j] {
            return invalid(format!("column index {j} repeated"));
        }
        seen[j] = true;
    }
    Ok(())
}

/// Provenance of a design obtained by doubling `base` `t` times.
///
/// Column `j` (1-based) comes from base column `((j - 1) mod m0) + 1` and
/// copy `(j - 1) div m0`; its label is the base label with the copy index
/// in the appended bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingPedigree {
    pub base: Design,
    pub t: u32,
}

impl DoublingPedigree {
    pub fn m0(&self) -> usize {
        self.base.n_factors()
    }

    pub fn copies(&self) -> u64 {
        1u64 << self.t
    }

    /// Columns of the ambient design, `m = 2^t m0`.
    pub fn m(&self) -> usize {
        self.m0() << self.t
    }

    /// Base-column group (1-based) of ambient column `j`.
    pub fn column_group(&self, j: usize) -> usize {
        (j - 1) % self.m0() + 1
    }

    /// Copy index of ambient column `j`.
    pub fn column_copy(&self, j: usize) -> u64 {
        ((j - 1) / self.m0()) as u64
    }

    /// Ambient column index for (group, copy).
    pub fn column_index(&self, group: usize, copy: u64) -> usize {
        self.m0() * copy as usize + group
    }

    /// Label of ambient column (group, copy).
    pub fn label_of(&self, group: usize, copy: u64) -> u64 {
        self.base.labels[group - 1] | copy << self.base.log2_runs
    }

    pub fn frequencies(&self, cols: &[usize]) -> Result<FrequencyVector> {
        check_columns(cols, self.m())?;
        let mut f = vec![0u32; self.m0()];
        for &j in cols {
            f[self.column_group(j) - 1] += 1;
        }
        Ok(FrequencyVector { f })
    }
}

/// A design together with the doubling that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledDesign {
    pub design: Design,
    pub pedigree: DoublingPedigree,
}

impl DoubledDesign {
    /// Pairs a design with a claimed pedigree, checking they agree.
    pub fn new(design: Design, pedigree: DoublingPedigree) -> Result<Self> {
        let rebuilt = pedigree.base.double_iter(pedigree.t)?.design;
        if rebuilt != design {
            return invalid("design does not equal its pedigree base doubled t times");
        }
        Ok(Self { design, pedigree })
    }

    /// Splits the columns into kept `D` and deleted `D̄`.
    pub fn complement_split(&self, complement_cols: &[usize]) -> Result<ComplementSplit> {
        let m = self.design.n_factors();
        check_columns(complement_cols, m)?;
        let mut complement = complement_cols.to_vec();
        complement.sort_unstable();
        let mut in_complement = vec![false; m + 1];
        for &j in &complement {
            in_complement[j] = true;
        }
        let kept: Vec<usize> = (1..=m).filter(|&j| !in_complement[j]).collect();
        Ok(ComplementSplit {
            d: self.design.project(&kept)?,
            d_bar: self.design.project(&complement)?,
            f: self.pedigree.frequencies(&complement)?,
            kept,
            complement,
        })
    }
}

/// Partition of a doubled design's columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementSplit {
    pub kept: Vec<usize>,
    pub complement: Vec<usize>,
    pub d: Design,
    pub d_bar: Design,
    pub f: FrequencyVector,
}

/// Number of deleted columns from each base-column group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrequencyVector {
    pub f: Vec<u32>,
}

impl FrequencyVector {
    pub fn new(f: Vec<u32>, copies: u64) -> Result<Self> {
        if let Some(bad) = f.iter().find(|&&x| x as u64 > copies) {
            return invalid(format!("frequency {bad} exceeds the {copies} copies per group"));
        }
        Ok(Self { f })
    }

    pub fn u(&self) -> u32 {
        self.f.iter().sum()
    }

    /// `|f_i - f_j| <= 1` for all pairs.
    pub fn is_balanced(&self) -> bool {
        match (self.f.iter().max(), self.f.iter().min()) {
            (Some(hi), Some(lo)) => hi - lo <= 1,
            _ => true,
        }
    }

    /// Frequencies sorted in nonincreasing order.
    pub fn multiset(&self) -> Vec<u32> {
        let mut v = self.f.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// On-disk design record: `{"log2_runs", "labels", "pedigree"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    pub log2_runs: u32,
    pub labels: Vec<u64>,
    pub pedigree: Option<PedigreeFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PedigreeFile {
    pub base_log2_runs: u32,
    pub base_labels: Vec<u64>,
    pub t: u32,
}

impl DesignFile {
    pub fn from_design(design: &Design, pedigree: Option<&DoublingPedigree>) -> Self {
        Self {
            log2_runs: design.log2_runs,
            labels: design.labels.clone(),
            pedigree: pedigree.map(|p| PedigreeFile {
                base_log2_runs: p.base.log2_runs,
                base_labels: p.base.labels.clone(),
                t: p.t,
            }),
        }
    }

    /// Validated design and, when present, its checked pedigree.
    pub fn into_parts(self) -> Result<(Design, Option<DoubledDesign>)> {
        let design = Design::with_columns(self.log2_runs, self.labels)?;
        let doubled = match self.pedigree {
            None => None,
            Some(p) => {
                let base = Design::with_columns(p.base_log2_runs, p.base_labels)?;
                Some(DoubledDesign::new(design.clone(), DoublingPedigree { base, t: p.t })?)
            }
        };
        Ok((design, doubled))
    }
}

/// Map from label to the (ascending) 0-based positions carrying it.
pub(crate) fn label_positions(labels: &[u64]) -> HashMap<u64, Vec<usize>> {
    let mut map: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, &l) in labels.iter().enumerate() {
        map.entry(l).or_default().push(i);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x0_res_v() -> Design {
        design_from_labels(4, vec![1, 2, 4, 8, 15]).unwrap()
    }

    #[test]
    fn from_labels_examples() {
        let x0 = design_from_labels(1, vec![0b1]).unwrap();
        assert_eq!((x0.entry(0, 1), x0.entry(1, 1)), (0, 1));
        let ex1 = design_from_labels(1, vec![0, 1]).unwrap();
        assert_eq!([ex1.entry(0, 1), ex1.entry(0, 2), ex1.entry(1, 1), ex1.entry(1, 2)], [0, 0, 0, 1]);
        assert_eq!(x0_res_v().runs(), 16);
        assert!(design_from_labels(2, vec![4]).is_err());
        assert!(design_from_labels(2, vec![]).is_err());
    }

    #[test]
    fn from_defining_words_examples() {
        let d = design_from_defining_words(5, &[vec![1, 2, 3, 4, 5]]).unwrap();
        assert_eq!(d, x0_res_v());
        let small = design_from_defining_words(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(small.labels(), &[1, 2, 3]);
        let nine =
            design_from_defining_words(9, &[vec![1, 2, 3, 5], vec![2, 3, 4, 6], vec![3, 4, 5, 7], vec![1, 3, 4, 8, 9]])
                .unwrap();
        assert_eq!(nine.labels(), &[1, 2, 4, 8, 7, 14, 11, 16, 29]);
    }

    #[test]
    fn dependent_generators_are_named() {
        let err = design_from_defining_words(5, &[vec![1, 2, 3], vec![3, 4, 5], vec![1, 2, 4, 5]]).unwrap_err();
        match err {
            Error::InvalidInput(msg) => assert!(msg.contains("1, 2, 3"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn double_examples() {
        let ex1 = design_from_labels(1, vec![0, 1]).unwrap();
        assert_eq!(ex1.double().unwrap().labels(), &[0b00, 0b01, 0b10, 0b11]);
        let even = design_from_labels(1, vec![1]).unwrap();
        assert_eq!(even.double().unwrap().labels(), &[0b01, 0b11]);
    }

    #[test]
    fn double_matches_block_matrix() {
        let x = x0_res_v();
        let d = x.double().unwrap();
        let (nr, nc) = (x.runs(), x.n_factors());
        for row in 0..d.runs() {
            for col in 1..=d.n_factors() {
                let base = x.entry(row % nr, (col - 1) % nc + 1);
                let flip = (row >= nr && col > nc) as u8;
                assert_eq!(d.entry(row, col), base ^ flip);
            }
        }
    }

    #[test]
    fn pedigree_indexing() {
        let dd = x0_res_v().double_iter(2).unwrap();
        assert_eq!(dd.design.runs(), 64);
        assert_eq!(dd.design.n_factors(), 20);
        assert_eq!(dd.pedigree.column_group(12), 2);
        assert_eq!(dd.pedigree.column_copy(12), 2);
        for j in 1..=20 {
            let (g, c) = (dd.pedigree.column_group(j), dd.pedigree.column_copy(j));
            assert_eq!(dd.pedigree.column_index(g, c), j);
            assert_eq!(dd.design.labels()[j - 1], dd.pedigree.label_of(g, c));
        }
        let trivial = x0_res_v().double_iter(0).unwrap();
        assert_eq!(trivial.design, x0_res_v());
    }

    #[test]
    fn project_examples() {
        let x = x0_res_v();
        assert_eq!(x.project(&[1, 2, 3, 4, 5]).unwrap(), x);
        assert_eq!(x.project(&[5, 1]).unwrap().labels(), &[15, 1]);
        assert!(x.project(&[0]).is_err());
        assert!(x.project(&[6]).is_err());
        assert!(x.project(&[2, 2]).is_err());
    }

    #[test]
    fn complement_split_frequencies() {
        let x = x0_res_v().double_iter(3).unwrap();
        let s = x.complement_split(&[1, 2, 3, 4, 5, 6, 12, 18, 24]).unwrap();
        assert_eq!(s.f.f, vec![2, 2, 2, 2, 1]);
        assert_eq!(s.kept.len() + s.complement.len(), 40);
        let s2 = x.complement_split(&[1, 2, 3, 4, 5, 6, 12, 23, 39]).unwrap();
        assert_eq!(s2.f.f, vec![2, 2, 2, 2, 1]);
        let none = x.complement_split(&[]).unwrap();
        assert_eq!(none.d, x.design);
        assert_eq!(none.f.u(), 0);
    }

    #[test]
    fn row_weight_examples() {
        let dist = x0_res_v().row_weight_distribution().unwrap();
        assert_eq!(dist, BTreeMap::from([(0, 1), (2, 10), (4, 5)]));
        assert_eq!(x0_res_v().moment(1).unwrap(), BigInt::from(40));
        assert_eq!(x0_res_v().moment(2).unwrap(), BigInt::from(120));
        let single = design_from_labels(1, vec![1]).unwrap();
        assert_eq!(single.row_weight_distribution().unwrap(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(single.moment(3).unwrap(), BigInt::from(1));
    }

    #[test]
    fn fast_weights_match_direct_parity() {
        let x = x0_res_v().double_iter(2).unwrap().design;
        let fast = x.row_weights().unwrap();
        for row in 0..x.runs() {
            assert_eq!(fast[row as usize], x.row_weight(row));
        }
        let total: u64 = fast.iter().map(|&w| w as u64).sum();
        assert_eq!(total, x.runs() * x.n_factors() as u64 / 2);
    }

    #[test]
    fn doubling_weight_relations() {
        // rows beyond the base block: w(D) + w(D̄) = m/2;
        // base rows: w(D) = 2^t w(X0) - w(D̄)
        let base = x0_res_v();
        for t in 1..=3 {
            let x = base.double_iter(t).unwrap();
            let cols: Vec<usize> = [1, 7, 13, 14, 20].into_iter().filter(|&j| j <= x.design.n_factors()).collect();
            let split = x.complement_split(&cols).unwrap();
            let (wd, wdb) = (split.d.row_weights().unwrap(), split.d_bar.row_weights().unwrap());
            let m = x.design.n_factors() as u32;
            for row in 0..x.design.runs() as usize {
                if row < base.runs() as usize {
                    assert_eq!(wd[row], (1 << t) * base.row_weight(row as u64) - wdb[row]);
                } else {
                    assert_eq!(wd[row] + wdb[row], m / 2);
                }
            }
        }
    }

    #[test]
    fn file_round_trip_and_validation() {
        let dd = x0_res_v().double_iter(1).unwrap();
        let file = DesignFile::from_design(&dd.design, Some(&dd.pedigree));
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(
            text,
            r#"{"log2_runs":5,"labels":[1,2,4,8,15,17,18,20,24,31],"pedigree":{"base_log2_runs":4,"base_labels":[1,2,4,8,15],"t":1}}"#
        );
        let back: DesignFile = serde_json::from_str(&text).unwrap();
        let (d, ped) = back.into_parts().unwrap();
        assert_eq!(d, dd.design);
        assert_eq!(ped.unwrap().pedigree.t, 1);
        let mut bad = file.clone();
        bad.labels[0] = 3;
        assert!(bad.into_parts().is_err());
    }

    #[test]
    fn defining_words_listing() {
        let words = x0_res_v().defining_words().unwrap();
        assert_eq!(words, vec![0b11111]);
    }
}
