//! Streaming enumeration of complement column sets with incremental word
//! counts and exact branch-and-bound on `A_4`.

use std::collections::{BTreeMap, BTreeSet};

use crate::design::DoublingPedigree;

/// Word counts by length (up to a fixed depth) of a growing list of labels.
///
/// A dependent push adds the coset `v + span(kernel)` of new words, where
/// `v` is the new kernel vector; independent pushes add none.
pub(crate) struct WordTally {
    depth: usize,
    pivot_mask: u64,
    pivots: [(u64, u64); 64],
    kernel: Vec<u64>,
    counts: Vec<u32>,
    saved: Vec<u32>,
    undo: Vec<Option<u32>>,
}

impl WordTally {
    pub(crate) fn new(depth: usize) -> Self {
        Self {
            depth,
            pivot_mask: 0,
            pivots: [(0, 0); 64],
            kernel: Vec::new(),
            counts: vec![0; depth + 1],
            saved: Vec::new(),
            undo: Vec::new(),
        }
    }

    pub(crate) fn count(&self, len: usize) -> u32 {
        self.counts.get(len).copied().unwrap_or(0)
    }

    pub(crate) fn len(&self) -> usize {
        self.undo.len()
    }

    pub(crate) fn push(&mut self, label: u64) {
        let pos = self.undo.len();
        debug_assert!(pos < 64);
        let mut residual = label;
        let mut combo = 1u64 << pos;
        while residual != 0 {
            let bit = 63 - residual.leading_zeros();
            if self.pivot_mask >> bit & 1 == 0 {
                self.pivots[bit as usize] = (residual, combo);
                self.pivot_mask |= 1 << bit;
                self.undo.push(Some(bit));
                return;
            }
            let (l, c) = self.pivots[bit as usize];
            residual ^= l;
            combo ^= c;
        }
        self.saved.extend_from_slice(&self.counts);
        let mut w = combo;
        self.tally(w);
        for i in 1u64..(1u64 << self.kernel.len()) {
            w ^= self.kernel[i.trailing_zeros() as usize];
            self.tally(w);
        }
        self.kernel.push(combo);
        self.undo.push(None);
    }

    #[inline]
    fn tally(&mut self, w: u64) {
        let len = w.count_ones() as usize;
        if len <= self.depth {
            self.counts[len] += 1;
        }
    }

    pub(crate) fn pop(&mut self) {
        match self.undo.pop().expect("pop on empty tally") {
            Some(bit) => self.pivot_mask &= !(1 << bit),
            None => {
                self.kernel.pop();
                let keep = self.saved.len() - self.counts.len();
                self.counts.copy_from_slice(&self.saved[keep..]);
                self.saved.truncate(keep);
            }
        }
    }

    /// `(A_4, -A_5, A_6, ...)` up to the depth.
    pub(crate) fn key(&self) -> Vec<i64> {
        (4..=self.depth)
            .map(|i| {
                let c = self.count(i) as i64;
                if i % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect()
    }

    /// Compares the current key with `best` without allocating.
    pub(crate) fn cmp_key(&self, best: &[i64]) -> std::cmp::Ordering {
        for (i, b) in best.iter().enumerate() {
            let len = i + 4;
            let c = self.count(len) as i64;
            let v = if len % 2 == 1 { -c } else { c };
            match v.cmp(b) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ClassAcc {
    pub count: u64,
    pub representative: Vec<usize>,
    pub f: Vec<u32>,
}

/// Best key, its ties, and classes tied with the best on `(A_4, -A_5)`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Collector {
    pub best: Option<Vec<i64>>,
    pub ties: u64,
    pub tie_sets: BTreeSet<Vec<usize>>,
    pub max_ties: usize,
    pub prefix: Option<Vec<i64>>,
    pub classes: BTreeMap<Vec<i64>, ClassAcc>,
    /// Candidates strictly better than `threshold`, when one is set.
    pub threshold: Option<Vec<i64>>,
    pub beaters: u64,
    pub beater_sets: BTreeMap<Vec<usize>, (Vec<i64>, Vec<u32>)>,
    pub examined: u64,
}

fn prefix_of(key: &[i64]) -> Vec<i64> {
    key[..key.len().min(2)].to_vec()
}

impl Collector {
    pub(crate) fn new(max_ties: usize, threshold: Option<Vec<i64>>) -> Self {
        Self { max_ties, threshold, ..Default::default() }
    }

    fn insert_capped(set: &mut BTreeSet<Vec<usize>>, cols: Vec<usize>, cap: usize) {
        set.insert(cols);
        while set.len() > cap {
            set.pop_last();
        }
    }

    pub(crate) fn offer(&mut self, key: Vec<i64>, cols: &[usize], f: &[u32]) {
        let sorted = || {
            let mut c = cols.to_vec();
            c.sort_unstable();
            c
        };
        if let Some(th) = &self.threshold {
            if key < *th {
                self.beaters += 1;
                self.beater_sets.insert(sorted(), (key.clone(), f.to_vec()));
                while self.beater_sets.len() > self.max_ties {
                    self.beater_sets.pop_last();
                }
            }
        }
        let p = prefix_of(&key);
        let take_class = match &self.prefix {
            None => true,
            Some(cur) if p < *cur => true,
            Some(cur) => p == *cur,
        };
        if take_class {
            if self.prefix.as_ref() != Some(&p) {
                self.prefix = Some(p);
                self.classes.clear();
            }
            let cols = sorted();
            let e = self.classes.entry(key.clone()).or_insert_with(|| ClassAcc {
                count: 0,
                representative: cols.clone(),
                f: f.to_vec(),
            });
            e.count += 1;
            if cols < e.representative {
                e.representative = cols;
                e.f = f.to_vec();
            }
        }
        match self.best.as_ref().map(|b| key.cmp(b)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => {
                self.ties += 1;
                Self::insert_capped(&mut self.tie_sets, sorted(), self.max_ties);
            }
            _ => {
                self.best = Some(key);
                self.ties = 1;
                self.tie_sets.clear();
                self.tie_sets.insert(sorted());
            }
        }
    }

    pub(crate) fn merge(&mut self, other: Collector) {
        self.examined += other.examined;
        self.beaters += other.beaters;
        for (k, v) in other.beater_sets {
            self.beater_sets.insert(k, v);
        }
        while self.beater_sets.len() > self.max_ties {
            self.beater_sets.pop_last();
        }
        match (&self.prefix, &other.prefix) {
            (_, None) => {}
            (Some(a), Some(b)) if a < b => {}
            (Some(a), Some(b)) if a == b => {
                for (k, v) in other.classes {
                    match self.classes.get_mut(&k) {
                        None => {
                            self.classes.insert(k, v);
                        }
                        Some(e) => {
                            e.count += v.count;
                            if v.representative < e.representative {
                                e.representative = v.representative;
                                e.f = v.f;
                            }
                        }
                    }
                }
            }
            _ => {
                self.prefix = other.prefix;
                self.classes = other.classes;
            }
        }
        match (&self.best, other.best) {
            (_, None) => {}
            (Some(a), Some(b)) if *a < b => {}
            (Some(a), Some(b)) if *a == b => {
                self.ties += other.ties;
                for s in other.tie_sets {
                    Self::insert_capped(&mut self.tie_sets, s, self.max_ties);
                }
            }
            (_, Some(b)) => {
                self.best = Some(b);
                self.ties = other.ties;
                self.tie_sets = other.tie_sets;
            }
        }
    }
}

/// One slice of the candidate space: a frequency vector, the group visit
/// order, which groups are anchored at copy 0, and a fixed copy subset for
/// the first visited group.
#[derive(Clone, Debug)]
pub(crate) struct Unit {
    pub f: Vec<u32>,
    pub order: Vec<usize>,
    pub anchored: Vec<bool>,
    pub first: Vec<u64>,
}

pub(crate) enum UnitOutcome {
    Done(Collector),
    OverBudget,
}

struct Walker<'a> {
    unit: &'a Unit,
    pedigree: &'a DoublingPedigree,
    tally: WordTally,
    cols: Vec<usize>,
    bound: Option<u32>,
    budget: u64,
    out: Collector,
    over: bool,
}

impl Walker<'_> {
    fn push(&mut self, group: usize, copy: u64) -> bool {
        self.tally.push(self.pedigree.label_of(group + 1, copy));
        self.cols.push(self.pedigree.column_index(group + 1, copy));
        let a4 = self.tally.count(4);
        let best_a4 = self.out.best.as_ref().map(|b| b[0] as u32);
        let limit = match (self.bound, best_a4) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        limit.is_none_or(|l| a4 <= l)
    }

    fn pop(&mut self) {
        self.tally.pop();
        self.cols.pop();
    }

    fn leaf(&mut self) {
        self.out.examined += 1;
        if self.out.examined > self.budget {
            self.over = true;
            return;
        }
        // cheap rejection before building the key
        if let (Some(b), None) = (&self.out.best, &self.out.threshold) {
            let p = b.len().min(2);
            if self.tally.cmp_key(&b[..p]) == std::cmp::Ordering::Greater {
                return;
            }
        }
        let key = self.tally.key();
        self.out.offer(key, &self.cols, &self.unit.f);
    }

    /// Chooses `need` more copies of `order[gi]` from `from..copies`, then
    /// moves to the next group.
    fn choose(&mut self, gi: usize, need: u32, from: u64) {
        if self.over {
            return;
        }
        if need == 0 {
            return self.next_group(gi + 1);
        }
        let g = self.unit.order[gi];
        let copies = self.pedigree.copies();
        let last = copies - need as u64;
        for c in from..=last {
            if self.push(g, c) {
                self.choose(gi, need - 1, c + 1);
            }
            self.pop();
            if self.over {
                return;
            }
        }
    }

    fn next_group(&mut self, gi: usize) {
        if gi == self.unit.order.len() {
            return self.leaf();
        }
        let g = self.unit.order[gi];
        let f = self.unit.f[g];
        if self.unit.anchored[g] {
            if self.push(g, 0) {
                self.choose(gi, f - 1, 1);
            }
            self.pop();
        } else {
            self.choose(gi, f, 0);
        }
    }

    fn start(&mut self) {
        if self.unit.order.is_empty() {
            return self.leaf();
        }
        let g = self.unit.order[0];
        let mut ok = true;
        for &c in &self.unit.first {
            ok &= self.push(g, c);
        }
        if ok {
            self.next_group(1);
        }
        for _ in &self.unit.first {
            self.pop();
        }
    }
}

/// Runs one unit; `bound` is a known upper bound on the optimal `A_4`.
pub(crate) fn run_unit(
    unit: &Unit,
    pedigree: &DoublingPedigree,
    depth: usize,
    bound: Option<u32>,
    budget: u64,
    max_ties: usize,
    threshold: Option<Vec<i64>>,
) -> UnitOutcome {
    let mut w = Walker {
        unit,
        pedigree,
        tally: WordTally::new(depth),
        cols: Vec::new(),
        bound,
        budget,
        out: Collector::new(max_ties, threshold),
        over: false,
    };
    w.start();
    debug_assert!(w.over || w.tally.len() == 0);
    if w.over {
        UnitOutcome::OverBudget
    } else {
        UnitOutcome::Done(w.out)
    }
}
