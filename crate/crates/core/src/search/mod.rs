//! Minimum-aberration search over complements of a doubled design, greedy
//! projection, and the bounds used to rule out competing maximal designs.

mod bounds;
mod greedy;
mod kernel;
mod section6;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::design::{Design, DoubledDesign, DoublingPedigree};
use crate::error::{capacity, invalid, Error, Result};
use crate::gf2core::{binomial, rank_of_masks};
use crate::wlp::{seq_key_to_depth, wordlength_pattern, SeqKey, WordlengthPattern};

pub use bounds::{
    corollary2_bound, even_lower_bound, lemma6_check, lemma7_check, Lemma6Report, Lemma6Row, Lemma7Report, RationalPoly,
};
pub use greedy::{greedy_projection, word_count_per_factor, GreedyProjection};
pub use section6::{reproduce_section6, Section6Options, Section6Report, Section6Row};

use kernel::{run_unit, Collector, Unit, UnitOutcome};

/// Default leaf budget for a single search.
pub const DEFAULT_BUDGET: u64 = 500_000_000;
/// Largest complement the enumerator accepts.
pub const MAX_COMPLEMENT: usize = 32;

/// Which automorphisms of the doubled design are used to cut the space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    /// Every column subset is visited.
    None,
    /// Copy translations: within a set of groups whose base labels are
    /// independent, each nonempty group contains copy 0.
    Translations,
    /// Translations plus group permutations when every permutation of the
    /// base columns is induced by a linear map.
    Full,
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "translations" => Ok(Self::Translations),
            "full" => Ok(Self::Full),
            _ => invalid(format!("unknown symmetry '{s}' (expected none, translations or full)")),
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::Translations => "translations",
            Self::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConstraints {
    /// Restrict to complements with `|f_i - f_j| <= 1`.
    pub balanced_only: bool,
    /// Last wordlength in the key `(A_4, -A_5, ..., ±A_depth)`.
    pub depth: usize,
    /// Maximum number of complete candidates evaluated.
    pub budget: u64,
    /// With `balanced_only`, also search all frequency vectors to see
    /// whether an unbalanced complement beats the balanced winner.
    pub unconstrained_check: bool,
    pub unconstrained_budget: u64,
    pub symmetry: Symmetry,
    /// Cap on listed tied column sets.
    pub max_reported_ties: usize,
}

impl Default for SearchConstraints {
    fn default() -> Self {
        Self {
            balanced_only: true,
            depth: 8,
            budget: DEFAULT_BUDGET,
            unconstrained_check: false,
            unconstrained_budget: DEFAULT_BUDGET,
            symmetry: Symmetry::Full,
            max_reported_ties: 16,
        }
    }
}

impl SearchConstraints {
    pub fn validate(&self) -> Result<()> {
        if self.depth < 4 || self.depth > MAX_COMPLEMENT {
            return invalid(format!("depth {} outside 4..={MAX_COMPLEMENT}", self.depth));
        }
        if self.budget == 0 || (self.unconstrained_check && self.unconstrained_budget == 0) {
            return invalid("budget must be positive");
        }
        if self.max_reported_ties == 0 {
            return invalid("max_reported_ties must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Satisfiability {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub complement: Vec<usize>,
    pub f: Vec<u32>,
    pub key: SeqKey,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Winner {
    pub complement: Vec<usize>,
    pub f: Vec<u32>,
    pub key: SeqKey,
    /// Full pattern of the complement, recomputed from scratch.
    pub wlp: WordlengthPattern,
}

/// Candidates whose key agrees with the winner's on `(A_4, -A_5)`, grouped
/// by full key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivorClass {
    pub key: SeqKey,
    pub count: u64,
    pub representative: Vec<usize>,
    pub f: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnconstrainedCheck {
    /// Every frequency vector was covered.
    pub complete: bool,
    pub examined: u64,
    pub best: Option<Candidate>,
    /// Candidates with a key strictly below the balanced winner's.
    pub beaters: u64,
    pub beater_examples: Vec<Candidate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub u: usize,
    pub m: usize,
    pub t: u32,
    pub constraints: SearchConstraints,
    pub winner: Option<Winner>,
    /// Number of candidates sharing the winner's key (in the searched,
    /// symmetry-reduced space).
    pub ties: u64,
    /// Lexicographically smallest tied complements, capped.
    pub tied_complements: Vec<Vec<usize>>,
    pub stage_survivors: Vec<SurvivorClass>,
    pub candidates_examined: u64,
    /// Size of the searched space before pruning.
    pub space_size: u128,
    /// The budget ran out before the space was covered.
    pub partial: bool,
    pub unconstrained: Option<UnconstrainedCheck>,
    /// Whether a balanced complement also minimizes the key over all
    /// complements.
    pub conditions_satisfiable: Satisfiability,
    /// Best unconstrained complement, reported when no balanced complement
    /// attains the overall minimum.
    pub fallback: Option<Candidate>,
}

/// Every permutation of the base columns is induced by a linear map: the
/// labels are distinct, nonzero, and either independent or a single circuit.
pub fn base_fully_symmetric(base: &Design) -> bool {
    let l = base.labels();
    if base.has_zero_label() || base.has_repeated_labels() {
        return false;
    }
    let r = rank_of_masks(l);
    r == l.len() || (r + 1 == l.len() && l.iter().fold(0, |a, &b| a ^ b) == 0)
}

fn frequency_vectors(p: &DoublingPedigree, u: usize, balanced: bool, sorted: bool) -> Result<Vec<Vec<u32>>> {
    let m0 = p.m0();
    let copies = p.copies();
    let mut out = Vec::new();
    if balanced {
        let q = (u / m0) as u64;
        let r = u % m0;
        if q + u64::from(r > 0) > copies {
            return invalid(format!("no balanced complement of size {u}"));
        }
        let subsets: Vec<Vec<usize>> = if sorted { vec![(0..r).collect()] } else { combinations(m0, r) };
        for s in subsets {
            let mut f = vec![q as u32; m0];
            for i in s {
                f[i] += 1;
            }
            out.push(f);
        }
    } else {
        let cap = copies.min(u as u64) as u32;
        let mut cur = Vec::with_capacity(m0);
        fn rec(m0: usize, cap: u32, left: u32, sorted: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == m0 {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let top = if sorted { cur.last().copied().unwrap_or(cap).min(cap) } else { cap };
            let slots = (m0 - cur.len()) as u64;
            if top as u64 * slots < left as u64 {
                return;
            }
            for v in (0..=top.min(left)).rev() {
                cur.push(v);
                rec(m0, cap, left - v, sorted, cur, out);
                cur.pop();
            }
        }
        rec(m0, cap, u as u32, sorted, &mut cur, &mut out);
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

fn combinations_u64(lo: u64, hi: u64, k: usize) -> Vec<Vec<u64>> {
    combinations((hi - lo) as usize, k).into_iter().map(|c| c.into_iter().map(|i| lo + i as u64).collect()).collect()
}

/// Splits the space for one frequency vector into units keyed by the first
/// visited group's copy subset.
fn units_for(p: &DoublingPedigree, f: &[u32], translations: bool) -> (Vec<Unit>, u128) {
    let m0 = p.m0();
    let mut order: Vec<usize> = (0..m0).filter(|&g| f[g] > 0).collect();
    let mut anchored = vec![false; m0];
    if translations {
        let mut by_small: Vec<usize> = order.clone();
        by_small.sort_by_key(|&g| (f[g], g));
        let mut chosen: Vec<u64> = Vec::new();
        for g in by_small {
            let mut trial = chosen.clone();
            trial.push(p.base.labels()[g]);
            if rank_of_masks(&trial) == trial.len() {
                chosen = trial;
                anchored[g] = true;
            }
        }
    }
    order.sort_by_key(|&g| (std::cmp::Reverse(f[g]), g));
    let copies = p.copies();
    let space: u128 = order
        .iter()
        .map(|&g| {
            let a = u64::from(anchored[g]);
            u128::try_from(binomial((copies - a) as i64, (f[g] as u64 - a) as i64)).unwrap_or(u128::MAX)
        })
        .fold(1u128, |acc, v| acc.saturating_mul(v));
    let Some(&g0) = order.first() else {
        return (vec![Unit { f: f.to_vec(), order, anchored, first: vec![] }], 1);
    };
    let firsts: Vec<Vec<u64>> = if anchored[g0] {
        combinations_u64(1, copies, f[g0] as usize - 1)
            .into_iter()
            .map(|mut c| {
                c.insert(0, 0);
                c
            })
            .collect()
    } else {
        combinations_u64(0, copies, f[g0] as usize)
    };
    let units = firsts
        .into_iter()
        .map(|first| Unit { f: f.to_vec(), order: order.clone(), anchored: anchored.clone(), first })
        .collect();
    (units, space)
}

struct Sweep {
    collector: Collector,
    partial: bool,
    space: u128,
}

fn sweep(
    p: &DoublingPedigree,
    fs: &[Vec<u32>],
    c: &SearchConstraints,
    budget: u64,
    bound: Option<u32>,
    threshold: Option<Vec<i64>>,
) -> Sweep {
    let translations = c.symmetry != Symmetry::None;
    let mut units = Vec::new();
    let mut space = 0u128;
    for f in fs {
        let (us, s) = units_for(p, f, translations);
        units.extend(us);
        space = space.saturating_add(s);
    }
    let mut total = Collector::new(c.max_reported_ties, threshold.clone());
    let chunk = (rayon::current_num_threads() * 4).max(1);
    for batch in units.chunks(chunk) {
        let outcomes: Vec<UnitOutcome> = batch
            .par_iter()
            .map(|u| run_unit(u, p, c.depth, bound, budget, c.max_reported_ties, threshold.clone()))
            .collect();
        for o in outcomes {
            match o {
                UnitOutcome::Done(col) if total.examined + col.examined <= budget => total.merge(col),
                _ => return Sweep { collector: total, partial: true, space },
            }
        }
    }
    Sweep { collector: total, partial: false, space }
}

fn to_key(v: &[i64]) -> SeqKey {
    SeqKey(v.iter().map(|&x| BigInt::from(x)).collect())
}

/// Searches complements of size `u` of a doubled design for the smallest key
/// `(A_4, -A_5, A_6, ...)`.
pub fn complement_search(x: &DoubledDesign, u: usize, c: &SearchConstraints) -> Result<SearchResult> {
    c.validate()?;
    let p = &x.pedigree;
    let m = p.m();
    if u > m {
        return invalid(format!("u = {u} exceeds the {m} columns"));
    }
    if u > MAX_COMPLEMENT {
        return capacity(format!("complements above {MAX_COMPLEMENT} columns are not supported"));
    }
    if x.design.log2_runs() > 63 {
        return capacity("designs above 2^63 runs are not supported");
    }
    let sorted = c.symmetry == Symmetry::Full && base_fully_symmetric(&p.base);
    let fs = frequency_vectors(p, u, c.balanced_only, sorted)?;
    let s = sweep(p, &fs, c, c.budget, None, None);
    let col = s.collector;
    let winner = match (&col.best, col.tie_sets.first()) {
        (Some(k), Some(cols)) => Some(build_winner(x, cols, k, c.depth)?),
        _ => None,
    };
    let stage_survivors = col
        .classes
        .iter()
        .map(|(k, v)| SurvivorClass {
            key: to_key(k),
            count: v.count,
            representative: v.representative.clone(),
            f: v.f.clone(),
        })
        .collect();

    let mut unconstrained = None;
    let mut satisfiable = Satisfiability::Unknown;
    let mut fallback = None;
    if c.balanced_only && c.unconstrained_check {
        if let Some(best) = &col.best {
            let all = frequency_vectors(p, u, false, sorted)?;
            let us = sweep(p, &all, c, c.unconstrained_budget, Some(best[0] as u32), Some(best.clone()));
            let uc = us.collector;
            let ubest = match (&uc.best, uc.tie_sets.first()) {
                (Some(k), Some(cols)) => {
                    Some(Candidate { complement: cols.clone(), f: p.frequencies(cols)?.f, key: to_key(k) })
                }
                _ => None,
            };
            satisfiable = if uc.beaters > 0 {
                Satisfiability::No
            } else if us.partial {
                Satisfiability::Unknown
            } else {
                Satisfiability::Yes
            };
            if satisfiable == Satisfiability::No {
                fallback = ubest.clone();
            }
            unconstrained = Some(UnconstrainedCheck {
                complete: !us.partial,
                examined: uc.examined,
                best: ubest,
                beaters: uc.beaters,
                beater_examples: uc
                    .beater_sets
                    .iter()
                    .map(|(cols, (k, f))| Candidate { complement: cols.clone(), f: f.clone(), key: to_key(k) })
                    .collect(),
            });
        }
    }

    Ok(SearchResult {
        u,
        m,
        t: p.t,
        constraints: c.clone(),
        winner,
        ties: col.ties,
        tied_complements: col.tie_sets.iter().cloned().collect(),
        stage_survivors,
        candidates_examined: col.examined,
        space_size: s.space,
        partial: s.partial,
        unconstrained,
        conditions_satisfiable: satisfiable,
        fallback,
    })
}

fn build_winner(x: &DoubledDesign, cols: &[usize], key: &[i64], depth: usize) -> Result<Winner> {
    let wlp = wordlength_pattern(&x.design.project(cols)?)?;
    let recomputed = seq_key_to_depth(&wlp, depth);
    let key = to_key(key);
    if recomputed != key {
        return Err(Error::Internal(format!(
            "search key {:?} of {cols:?} disagrees with the recomputed pattern",
            key.0
        )));
    }
    Ok(Winner { complement: cols.to_vec(), f: x.pedigree.frequencies(cols)?.f, key, wlp })
}

#[derive(Clone, Debug, Serialize)]
pub struct MaProjection {
    pub n: usize,
    pub deleted: Vec<usize>,
    pub kept: Vec<usize>,
    pub wlp: WordlengthPattern,
    #[serde(skip)]
    pub design: Design,
    pub search: SearchResult,
}

/// `X` minus the canonical (lexicographically smallest) winning complement
/// of size `m - n`.
pub fn ma_project(x: &DoubledDesign, n: usize, c: &SearchConstraints) -> Result<MaProjection> {
    let m = x.pedigree.m();
    if n > m {
        return invalid(format!("n = {n} exceeds the {m} columns"));
    }
    let search = complement_search(x, m - n, c)?;
    let Some(w) = &search.winner else {
        return capacity("search budget exhausted before any complement was evaluated");
    };
    let split = x.complement_split(&w.complement)?;
    Ok(MaProjection {
        n,
        deleted: split.complement.clone(),
        kept: split.kept.clone(),
        wlp: wordlength_pattern(&split.d)?,
        design: split.d,
        search,
    })
}
