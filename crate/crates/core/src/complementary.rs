//! Complementary projection designs of a doubled design: the correction
//! term Δ_k, the wordlength identity linking a projection to its
//! complement, and the closed forms for the 5N/16, 9N/32, saturated and
//! even families.

#[cfg(test)]
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Num, One, Zero};
use serde::Serialize;

use crate::design::{Design, DoublingPedigree, FrequencyVector};
use crate::error::{invalid, Error, Result};
use crate::gf2core::{binomial, q_coefficient, ExactRational};
use crate::wlp::{wordlength_pattern, wordlength_pattern_enum, WordlengthPattern};

/// Base design plus doubling count; `m = 2^t m0` columns, `N = 2^t N0` runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaContext {
    pub base: Design,
    pub t: u32,
}

impl DeltaContext {
    pub fn new(base: Design, t: u32) -> Result<Self> {
        if base.log2_runs() + t > crate::gf2core::MAX_WIDTH {
            return invalid("doubled design would exceed 64 label bits");
        }
        Ok(Self { base, t })
    }

    pub fn from_pedigree(p: &DoublingPedigree) -> Self {
        Self { base: p.base.clone(), t: p.t }
    }

    pub fn pedigree(&self) -> DoublingPedigree {
        DoublingPedigree { base: self.base.clone(), t: self.t }
    }

    pub fn m0(&self) -> usize {
        self.base.n_factors()
    }

    pub fn m(&self) -> usize {
        self.m0() << self.t
    }

    pub fn copies(&self) -> u64 {
        1 << self.t
    }

    pub fn n_runs(&self) -> u64 {
        self.base.runs() << self.t
    }

    pub fn log2_runs(&self) -> u32 {
        self.base.log2_runs() + self.t
    }

    fn ambient_labels_sorted(&self) -> Vec<u64> {
        let p = self.pedigree();
        let mut v: Vec<u64> = (1..=self.m()).map(|j| p.label_of(p.column_group(j), p.column_copy(j))).collect();
        v.sort_unstable();
        v
    }

    fn check_split(&self, d: &Design, d_bar: &Design) -> Result<()> {
        let w = self.log2_runs();
        if d.log2_runs() != w || d_bar.log2_runs() != w {
            return invalid(format!(
                "split designs have {} and {} run bits, ambient design has {w}",
                d.log2_runs(),
                d_bar.log2_runs()
            ));
        }
        let mut union: Vec<u64> = d.labels().iter().chain(d_bar.labels()).copied().collect();
        union.sort_unstable();
        if union != self.ambient_labels_sorted() {
            return invalid("the two designs do not partition the columns of the doubled base design");
        }
        Ok(())
    }
}

/// `2^k Δ_k` from doubled weights: `Σ (2 w_D)^k - (m - 2 w_D̄)^k`.
fn twice_scaled_delta(pairs: impl Iterator<Item = (i64, i64)>, m: i64, k: u32) -> BigInt {
    pairs
        .map(|(wd, wdb)| {
            num_traits::pow(BigInt::from(2 * wd), k as usize) - num_traits::pow(BigInt::from(m - 2 * wdb), k as usize)
        })
        .sum()
}

fn unscale(v: BigInt, k: u32) -> ExactRational {
    ExactRational::new(v, BigInt::one() << k).expect("nonzero denominator")
}

/// Δ_k from the first `N0` row weights of a concrete split.
pub fn delta_k(d: &Design, d_bar: &Design, ctx: &DeltaContext, k: u32) -> Result<ExactRational> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    ctx.check_split(d, d_bar)?;
    let pairs = (0..ctx.base.runs()).map(|x| (d.row_weight(x) as i64, d_bar.row_weight(x) as i64));
    Ok(unscale(twice_scaled_delta(pairs, ctx.m() as i64, k), k))
}

/// Δ_k from a frequency vector, using `w(D̄) = Σ f_j x_j` and
/// `w(D) = Σ (2^t - f_j) x_j` on the base rows.
pub fn delta_from_frequencies(ctx: &DeltaContext, f: &FrequencyVector, k: u32) -> Result<ExactRational> {
    if f.f.len() != ctx.m0() {
        return invalid(format!("{} frequencies for a base with {} columns", f.f.len(), ctx.m0()));
    }
    let copies = ctx.copies() as i64;
    if f.f.iter().any(|&v| v as i64 > copies) {
        return invalid(format!("a frequency exceeds the {copies} copies per column"));
    }
    let pairs = (0..ctx.base.runs()).map(|x| {
        let mut wdb = 0i64;
        let mut wd = 0i64;
        for (j, &fj) in f.f.iter().enumerate() {
            if ctx.base.entry(x, j + 1) == 1 {
                wdb += fj as i64;
                wd += copies - fj as i64;
            }
        }
        (wd, wdb)
    });
    Ok(unscale(twice_scaled_delta(pairs, ctx.m() as i64, k), k))
}

/// Wordlength identity residuals `LHS - RHS` for `k = 1..=k_max`.
pub fn theorem1_residuals(d: &Design, d_bar: &Design, ctx: &DeltaContext, k_max: u32) -> Result<Vec<ExactRational>> {
    ctx.check_split(d, d_bar)?;
    let a = wordlength_pattern(d)?;
    let a_bar = wordlength_pattern(d_bar)?;
    (1..=k_max)
        .map(|k| {
            let delta = delta_k(d, d_bar, ctx, k)?;
            Ok(identity_residual(&a, &a_bar, d.n_factors(), d_bar.n_factors(), ctx, k, &delta))
        })
        .collect()
}

/// Single-`k` form of [`theorem1_residuals`].
pub fn theorem1_residual(d: &Design, d_bar: &Design, ctx: &DeltaContext, k: u32) -> Result<ExactRational> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    ctx.check_split(d, d_bar)?;
    let a = wordlength_pattern(d)?;
    let a_bar = wordlength_pattern(d_bar)?;
    let delta = delta_k(d, d_bar, ctx, k)?;
    Ok(identity_residual(&a, &a_bar, d.n_factors(), d_bar.n_factors(), ctx, k, &delta))
}

fn identity_residual(
    a: &WordlengthPattern,
    a_bar: &WordlengthPattern,
    n: usize,
    u: usize,
    ctx: &DeltaContext,
    k: u32,
    delta: &ExactRational,
) -> ExactRational {
    let k = k as usize;
    let half_m = ExactRational::new(ctx.m() as i64, 2).expect("nonzero");
    let lhs: ExactRational = (0..=k).map(|i| q_coefficient(k, i, n as u64) * ExactRational::from(a.get(i))).sum();
    let mut rhs = delta.clone() / ExactRational::from(BigInt::from(ctx.n_runs()));
    for i in 0..=k {
        let ai = a_bar.get(i);
        if ai.is_zero() {
            continue;
        }
        let mut coef = ExactRational::zero();
        for j in i..=k {
            let sign = if j % 2 == 1 { -1 } else { 1 };
            coef += ExactRational::from(binomial(k as i64, j as i64) * sign)
                * half_m.pow((k - j) as u32)
                * q_coefficient(j, i, u as u64);
        }
        rhs += coef * ExactRational::from(ai);
    }
    lhs - rhs
}

/// `A_4(D)` predicted from `A_4(D̄)` and Δ_4 on a resolution IV ambient design.
pub fn corollary1_a4(a4_bar: &BigInt, n: usize, m: usize, runs: u64, delta4: &ExactRational) -> ExactRational {
    let (n, m) = (n as i64, m as i64);
    let poly = ExactRational::new(BigInt::from(2 * n - m) * BigInt::from(6 * n * n + 3 * m - 2), 24).expect("nonzero");
    ExactRational::from(a4_bar.clone()) - poly
        + delta4.clone() * ExactRational::new(2, BigInt::from(3) * BigInt::from(runs)).expect("nonzero")
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: &'static str,
    pub observed: ExactRational,
    pub expected: ExactRational,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Corollary1Report {
    pub n: usize,
    pub u: usize,
    pub m: usize,
    pub runs: u64,
    pub relations: Vec<RelationCheck>,
    pub pass: bool,
}

/// Checks the four resolution-IV consequences of the identity on a split.
pub fn corollary1_report(d: &Design, d_bar: &Design, ctx: &DeltaContext) -> Result<Corollary1Report> {
    ctx.check_split(d, d_bar)?;
    let x = ctx.base.double_iter(ctx.t)?.design;
    let low = wordlength_pattern_enum(&x, 3, crate::wlp::DEFAULT_ENUM_BUDGET)?;
    if !low.resolution().at_least(4) {
        return invalid("the ambient doubled design has resolution below IV");
    }
    let (n, m, runs) = (d.n_factors(), ctx.m(), ctx.n_runs());
    let (ni, mi) = (n as i64, m as i64);
    let r = |v: BigInt, den: i64| ExactRational::new(v, den).expect("nonzero");
    let big_n = BigInt::from(runs);
    let deltas: Vec<ExactRational> = (1..=4).map(|k| delta_k(d, d_bar, ctx, k)).collect::<Result<_>>()?;
    let a4 = ExactRational::from(wordlength_pattern(d)?.get(4));
    let a4_bar = wordlength_pattern(d_bar)?.get(4);
    let mut relations = vec![
        RelationCheck { name: "delta1", observed: deltas[0].clone(), expected: ExactRational::zero(), pass: false },
        RelationCheck {
            name: "delta2",
            observed: deltas[1].clone(),
            expected: r(&big_n * (2 * ni - mi), 4),
            pass: false,
        },
        RelationCheck {
            name: "delta3",
            observed: deltas[2].clone(),
            expected: r(&big_n * (3 * ni * (2 * ni - mi)), 8),
            pass: false,
        },
        RelationCheck {
            name: "a4",
            observed: a4,
            expected: corollary1_a4(&a4_bar, n, m, runs, &deltas[3]),
            pass: false,
        },
    ];
    for rel in &mut relations {
        rel.pass = rel.observed == rel.expected;
    }
    let pass = relations.iter().all(|r| r.pass);
    Ok(Corollary1Report { n, u: d_bar.n_factors(), m, runs, relations, pass })
}

/// [`corollary1_report`] with failures turned into errors.
pub fn corollary1_check(d: &Design, d_bar: &Design, ctx: &DeltaContext) -> Result<Corollary1Report> {
    let rep = corollary1_report(d, d_bar, ctx)?;
    if let Some(bad) = rep.relations.iter().find(|r| !r.pass) {
        return Err(Error::Verification(format!("{}: observed {}, expected {}", bad.name, bad.observed, bad.expected)));
    }
    Ok(rep)
}

/// Closed-form Δ_k for splits of the t-fold double of the 16-run
/// resolution V base.
pub fn delta_closed_5n16(f: &[u32], t: u32, k: u32) -> Result<ExactRational> {
    if f.len() != 5 {
        return invalid(format!("expected 5 frequencies, got {}", f.len()));
    }
    let tt = 1i64 << t;
    if f.iter().any(|&v| v as i64 > tt) {
        return invalid(format!("a frequency exceeds 2^t = {tt}"));
    }
    Ok(unscale(delta_5n16_scaled(f, t, k), k))
}

/// `2^k Δ_k` for the 5N/16 family, all integers.
fn delta_5n16_scaled(f: &[u32], t: u32, k: u32) -> BigInt {
    let tt = 1i64 << t;
    let m = 5 * tt;
    let u: i64 = f.iter().map(|&v| v as i64).sum();
    let p = |v: i64| num_traits::pow(BigInt::from(v), k as usize);
    let mut acc = -p(m);
    for &fi in f {
        let fi = fi as i64;
        acc += p(2 * (4 * tt - u + fi)) - p(m - 2 * u + 2 * fi);
    }
    for i in 0..5 {
        for j in i + 1..5 {
            let s = f[i] as i64 + f[j] as i64;
            acc += p(2 * (2 * tt - s)) - p(m - 2 * s);
        }
    }
    acc
}

/// Frequency aggregates of the 9N/32 Δ_4 polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Delta4Aggregates {
    pub t_pow: u64,
    pub f1: u64,
    pub f2: u64,
    pub g1: u64,
    pub g2: u64,
    pub g3: u64,
}

impl Delta4Aggregates {
    pub fn new(f: &[u32], t: u32) -> Result<Self> {
        check_nine(f, t)?;
        let s = |r: std::ops::Range<usize>, e: u32| f[r].iter().map(|&v| (v as u64).pow(e)).sum::<u64>();
        Ok(Self { t_pow: 1 << t, f1: s(0..7, 1), f2: s(0..7, 2), g1: s(7..9, 1), g2: s(7..9, 2), g3: s(7..9, 3) })
    }
}

fn check_nine(f: &[u32], t: u32) -> Result<()> {
    if f.len() != 9 {
        return invalid(format!("expected 9 frequencies, got {}", f.len()));
    }
    if t > 24 {
        return invalid("doubling count above 24 is not supported");
    }
    if f.iter().any(|&v| v as u64 > 1 << t) {
        return invalid(format!("a frequency exceeds 2^t = {}", 1u64 << t));
    }
    Ok(())
}

fn delta4_poly<N: Num + Clone + From<i64>>(f: &[u32], t: u32) -> N {
    let c = |v: i64| N::from(v);
    let fi = |i: usize| N::from(f[i] as i64);
    let tt = c(1i64 << t);
    let sum = |r: std::ops::Range<usize>, e: u32| {
        r.fold(c(0), |acc, i| {
            let mut p = c(1);
            for _ in 0..e {
                p = p * fi(i);
            }
            acc + p
        })
    };
    let (f1, f2) = (sum(0..7, 1), sum(0..7, 2));
    let (g1, g2, g3) = (sum(7..9, 1), sum(7..9, 2), sum(7..9, 3));
    let t2 = tt.clone() * tt.clone();
    let t3 = t2.clone() * tt.clone();
    let t4 = t3.clone() * tt.clone();
    let f1sq = f1.clone() * f1.clone();
    let g1sq = g1.clone() * g1.clone();
    let cyclic = (0..7).fold(c(0), |acc, i| acc + fi(i) * fi((i + 2) % 7) * fi((i + 3) % 7));

    let deg1 = c(535) * f1.clone() + c(511) * g1.clone();
    let deg2 = c(51) * f1sq.clone()
        + c(3) * f2.clone()
        + c(94) * f1.clone() * g1.clone()
        + c(47) * g1sq.clone()
        + c(7) * g2.clone();
    let deg3 = c(4) * f1sq.clone() * f1.clone()
        + c(9) * f1sq * g1.clone()
        + c(3) * f2 * g1.clone()
        + c(12) * g1.clone() * g2.clone()
        + c(9) * f1.clone() * g1sq
        + c(3) * f1 * g2
        - c(8) * g3;
    c(9534) * t4 - c(8) * t3 * deg1 + c(12) * t2 * deg2 - c(8) * tt.clone() * deg3 + c(48) * tt * cyclic
}

/// Closed-form Δ_4 for splits of the t-fold double of the 32-run nine-factor
/// base, given the nine per-column frequencies.
pub fn delta4_closed_9n32(f: &[u32], t: u32) -> Result<BigInt> {
    check_nine(f, t)?;
    Ok(delta4_poly::<BigInt>(f, t))
}

/// All nonincreasing `len`-vectors with entries in `0..=cap` summing to `total`.
fn multisets(len: usize, cap: u32, total: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, cap: u32, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = (len - cur.len()) as u64;
        if (cap as u64) * slots < total as u64 {
            return;
        }
        for v in (0..=cap.min(total)).rev() {
            cur.push(v);
            rec(len, v, total - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, cap, total, &mut Vec::with_capacity(len), &mut out);
    out
}

/// All `len`-vectors with entries in `0..=cap` summing to `total`, in
/// lexicographic order.
fn compositions(len: usize, cap: u32, total: u32, mut visit: impl FnMut(&[u32])) {
    fn rec(len: usize, cap: u32, total: u32, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if cur.len() == len {
            if total == 0 {
                visit(cur);
            }
            return;
        }
        let slots = (len - cur.len()) as u64;
        if (cap as u64) * slots < total as u64 {
            return;
        }
        for v in 0..=cap.min(total) {
            cur.push(v);
            rec(len, cap, total - v, cur, visit);
            cur.pop();
        }
    }
    rec(len, cap, total, &mut Vec::with_capacity(len), &mut visit);
}

fn spread_at_most_one(f: &[u32]) -> bool {
    match (f.iter().max(), f.iter().min()) {
        (Some(a), Some(b)) => a - b <= 1,
        _ => true,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma2Report {
    pub t: u32,
    pub u: u32,
    /// Argmin multisets, each sorted nonincreasing, in decreasing lexicographic order.
    pub minimizers: Vec<Vec<u32>>,
    pub min_delta4: ExactRational,
    /// Whether `u <= 15 * 2^{t-3}`, where the balanced-only contract applies.
    pub in_range: bool,
    pub pass: bool,
}

/// Argmin of the 5N/16 Δ_4 over all frequency multisets with sum `u`.
pub fn lemma2_minimizers(t: u32, u: u32) -> Result<Lemma2Report> {
    if t > 20 {
        return invalid("doubling count above 20 is not supported");
    }
    let tt = 1u32 << t;
    if u > 5 * tt {
        return invalid(format!("u = {u} exceeds m = {}", 5 * tt));
    }
    let mut best: Option<BigInt> = None;
    let mut minimizers = Vec::new();
    for f in multisets(5, tt, u) {
        let v = delta_5n16_scaled(&f, t, 4);
        match best.as_ref().map(|b| v.cmp(b)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => minimizers.push(f),
            _ => {
                best = Some(v);
                minimizers = vec![f];
            }
        }
    }
    let in_range = 8 * u as u64 <= 15 * tt as u64;
    let pass = !in_range || (minimizers.len() == 1 && spread_at_most_one(&minimizers[0]));
    Ok(Lemma2Report { t, u, minimizers, min_delta4: unscale(best.expect("at least one multiset"), 4), in_range, pass })
}

/// Lower bound on the 9N/32 Δ_4 for an `n`-factor projection.
pub fn lemma3_bound(n: u64, t: u32) -> ExactRational {
    let n = BigInt::from(n);
    let tt = BigInt::one() << t;
    let inner = BigInt::from(760) * &n * &n * &n - BigInt::from(5400) * &n * &n * &tt
        + BigInt::from(17380) * &n * &tt * &tt
        - BigInt::from(39477) * &tt * &tt * &tt;
    ExactRational::new((BigInt::one() << (t + 1)) * inner, 49).expect("nonzero")
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma3Report {
    pub t: u32,
    pub u: u32,
    #[serde(with = "crate::json::big")]
    pub min_delta4: BigInt,
    /// Argmin frequency vectors (all of them), lexicographic order.
    pub minimizers: Vec<Vec<u32>>,
    pub bound: ExactRational,
    pub bound_holds: bool,
    pub bound_attained: bool,
    pub u_multiple_of_7: bool,
    /// Whether `u <= 3 * 2^{t-1}`, where the necessary conditions apply.
    pub in_range: bool,
    pub pass: bool,
}

/// Exhaustive scan of all 9N/32 frequency vectors with sum `u`.
pub fn lemma3_check(t: u32, u: u32) -> Result<Lemma3Report> {
    if t > 16 {
        return invalid("doubling count above 16 is not supported");
    }
    let tt = 1u32 << t;
    if u > 9 * tt {
        return invalid(format!("u = {u} exceeds m = {}", 9 * tt));
    }
    let mut best: Option<i128> = None;
    let mut minimizers: Vec<Vec<u32>> = Vec::new();
    compositions(9, tt, u, |f| {
        let v = delta4_poly::<i128>(f, t);
        match best.map(|b| v.cmp(&b)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => minimizers.push(f.to_vec()),
            _ => {
                best = Some(v);
                minimizers = vec![f.to_vec()];
            }
        }
    });
    let min = BigInt::from(best.expect("at least one vector"));
    let n = 9 * tt as u64 - u as u64;
    let bound = lemma3_bound(n, t);
    let min_r = ExactRational::from(min.clone());
    let in_range = 2 * u as u64 <= 3 * tt as u64;
    let bound_holds = min_r >= bound;
    let necessary = minimizers.iter().all(|f| f[7] == 0 && f[8] == 0 && spread_at_most_one(&f[..7]));
    Ok(Lemma3Report {
        t,
        u,
        bound_attained: min_r == bound,
        min_delta4: min,
        minimizers,
        bound,
        bound_holds,
        u_multiple_of_7: u.is_multiple_of(7),
        in_range,
        pass: !in_range || (bound_holds && necessary),
    })
}

/// Lower bound on `A_4` over `n`-factor projections of the 9N/32 maximal
/// design with `32 * 2^t` runs; defined for `15N/64 <= n <= 9N/32`.
pub fn lemma4_lower_bound(n: u64, t: u32) -> Result<ExactRational> {
    if t > 40 {
        return invalid("doubling count above 40 is not supported");
    }
    let tt = 1u64 << t;
    if 2 * n < 15 * tt || n > 9 * tt {
        return invalid(format!("n = {n} outside [{}, {}] for t = {t}", (15 * tt).div_ceil(2), 9 * tt));
    }
    Ok(lemma4_value(&BigInt::from(n), t))
}

/// [`lemma4_lower_bound`] without the range check.
pub(crate) fn lemma4_value(n: &BigInt, t: u32) -> ExactRational {
    let tt = BigInt::one() << t;
    let a = BigInt::from(196) * n + BigInt::from(172) * n * n * n;
    let b = BigInt::from(882) + BigInt::from(2646) * n + BigInt::from(2754) * n * n;
    let c = BigInt::from(11907) + BigInt::from(17380) * n;
    let v = a - b * &tt + c * &tt * &tt - BigInt::from(39477) * &tt * &tt * &tt;
    ExactRational::new(v, 1176).expect("nonzero")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExampleKind {
    Saturated,
    Even,
}

impl std::str::FromStr for ExampleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "saturated" => Ok(Self::Saturated),
            "even" => Ok(Self::Even),
            _ => invalid(format!("unknown example kind '{s}' (expected saturated or even)")),
        }
    }
}

/// Closed-form Δ_k for the saturated (zero column kept) and maximal even
/// doubled designs; both are independent of how the `u` deleted columns
/// are chosen.
pub fn example_deltas(kind: ExampleKind, t: u32, u: u64, k: u32) -> Result<ExactRational> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if t > 40 {
        return invalid("doubling count above 40 is not supported");
    }
    let tt = 1i64 << t;
    let p = |v: i64| num_traits::pow(BigInt::from(v), k as usize);
    match kind {
        ExampleKind::Saturated => {
            if u > 2 * tt as u64 {
                return invalid(format!("u = {u} exceeds m = {}", 2 * tt));
            }
            Ok(ExactRational::from(-(BigInt::one() << (t * k))))
        }
        ExampleKind::Even => {
            if u > tt as u64 {
                return invalid(format!("u = {u} exceeds m = {tt}"));
            }
            // doubled: (2T - 2u)^k - T^k - (T - 2u)^k over 2^k
            let u = u as i64;
            Ok(unscale(p(2 * tt - 2 * u) - p(tt) - p(tt - 2 * u), k))
        }
    }
}

/// Frequency vectors whose closed-form Δ differs from the row-weight form
/// for some `k <= k_max`; empty means agreement.
pub fn frequency_form_mismatches(
    ctx: &DeltaContext,
    fs: &[FrequencyVector],
    k_max: u32,
    closed: impl Fn(&FrequencyVector, u32) -> Result<ExactRational>,
) -> Result<Vec<(FrequencyVector, u32)>> {
    let mut bad = Vec::new();
    for f in fs {
        for k in 1..=k_max {
            if closed(f, k)? != delta_from_frequencies(ctx, f, k)? {
                bad.push((f.clone(), k));
            }
        }
    }
    Ok(bad)
}

/// The balanced split of `u` over `parts` groups, nonincreasing.
pub fn balanced_multiset(parts: usize, u: u32) -> Vec<u32> {
    let q = u / parts as u32;
    let r = u as usize % parts;
    (0..parts).map(|i| q + u32::from(i < r)).collect()
}

/// `f` sorted nonincreasing.
pub fn sorted_key(f: &[u32]) -> Vec<u32> {
    let mut v = f.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

#[cfg(test)]
pub(crate) fn distinct_sorted(fs: impl IntoIterator<Item = Vec<u32>>) -> Vec<Vec<u32>> {
    fs.into_iter().map(|f| sorted_key(&f)).collect::<BTreeSet<_>>().into_iter().collect()
}
