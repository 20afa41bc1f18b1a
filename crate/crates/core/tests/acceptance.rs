//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Reference values are recomputed here by brute force (subset enumeration,
//! pair-XOR counting, direct row-weight sums) rather than taken from the
//! library paths under test.

use std::collections::HashMap;
use std::panic;
use std::time::{Duration, Instant};

use dlab_core::catalog::{maximal_5n16, maximal_9n32, maximal_even, s_complement, x0_nine, x0_res_v};
use dlab_core::complementary::{
    delta4_closed_9n32, delta_closed_5n16, delta_k, lemma2_minimizers, lemma3_bound, lemma3_check, lemma4_lower_bound,
    theorem1_residuals, DeltaContext,
};
use dlab_core::search::{
    complement_search, greedy_projection, lemma6_check, lemma7_check, reproduce_section6, SearchConstraints,
    Section6Options,
};
use dlab_core::wlp::{pless_rhs, seq_key_to_depth, wordlength_pattern, wordlength_pattern_enum};
use dlab_core::{Design, DoubledDesign, ExactRational, Resolution};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d).unwrap()
}

fn int(v: impl Into<BigInt>) -> ExactRational {
    ExactRational::from(v.into())
}

fn parity(v: u64) -> i64 {
    (v.count_ones() & 1) as i64
}

/// `A_0..A_n` by enumerating every column subset.
fn brute_wlp(labels: &[u64]) -> Vec<u64> {
    let n = labels.len();
    assert!(n <= 22);
    let mut a = vec![0u64; n + 1];
    for s in 0u64..1 << n {
        let x = (0..n).filter(|&i| s >> i & 1 == 1).fold(0, |acc, i| acc ^ labels[i]);
        if x == 0 {
            a[s.count_ones() as usize] += 1;
        }
    }
    a
}

/// `A_4` of a design with distinct nonzero labels: each 4-word splits into
/// three pairs of pairs with equal XOR.
fn pair_xor_a4(labels: &[u64]) -> u64 {
    let mut by_xor: HashMap<u64, u64> = HashMap::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            *by_xor.entry(labels[i] ^ labels[j]).or_default() += 1;
        }
    }
    let pairs: u64 = by_xor.values().map(|&c| c * (c - 1) / 2).sum();
    assert_eq!(pairs % 3, 0);
    pairs / 3
}

fn row_weight(labels: &[u64], x: u64) -> i64 {
    labels.iter().map(|&l| parity(x & l)).sum()
}

/// `Σ_{x < N0} w_D(x)^k - (m/2 - w_D̄(x))^k` over the base rows.
fn oracle_delta(d: &[u64], d_bar: &[u64], base_runs: u64, m: usize, k: u32) -> ExactRational {
    let half_m = rat(m as i64, 2);
    (0..base_runs).map(|x| int(row_weight(d, x)).pow(k) - (half_m.clone() - int(row_weight(d_bar, x))).pow(k)).sum()
}

fn random_split(rng: &mut ChaCha8Rng, m: usize) -> Vec<usize> {
    let u = rng.gen_range(0..=m);
    let mut cols: Vec<usize> = (1..=m).collect();
    cols.shuffle(rng);
    cols.truncate(u);
    cols.sort_unstable();
    cols
}

fn random_design(rng: &mut ChaCha8Rng, max_k: u32, max_n: usize) -> Design {
    let k = rng.gen_range(1..=max_k);
    let n = rng.gen_range(1..=max_n);
    let labels = (0..n).map(|_| rng.gen_range(1..1u64 << k)).collect();
    Design::with_columns(k, labels).unwrap()
}

fn binom(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::from(0);
    }
    (0..r).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

// 1. Regression values for the two base designs.
fn wlp_regression() {
    let v = wordlength_pattern(&x0_res_v()).unwrap();
    assert_eq!(v.slice(1, 5), [0, 0, 0, 0, 1].map(BigInt::from).to_vec());
    assert_eq!(brute_wlp(x0_res_v().labels()), vec![1, 0, 0, 0, 0, 1]);

    let nine = x0_nine().unwrap();
    let w = wordlength_pattern(&nine).unwrap();
    let expected = [1u64, 0, 0, 0, 7, 7, 0, 0, 0, 1];
    assert_eq!(brute_wlp(nine.labels()), expected);
    for (i, &e) in expected.iter().enumerate() {
        assert_eq!(w.get(i), BigInt::from(e), "A_{i}");
    }
    assert_eq!(w.max_len(), 9);
}

// 2. Power moments equal the wordlength expression for k = 1..8.
fn pless_identity() {
    let mut designs = vec![x0_res_v(), x0_nine().unwrap(), maximal_even(3).unwrap().design];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    designs.extend((0..200).map(|_| random_design(&mut rng, 10, 40)));
    for d in &designs {
        let w = wordlength_pattern(d).unwrap();
        for k in 1..=8u32 {
            let direct: BigInt = (0..d.runs()).map(|x| BigInt::from(row_weight(d.labels(), x)).pow(k)).sum();
            assert_eq!(d.moment(k).unwrap(), direct);
            let rhs = pless_rhs(&w, d.runs(), d.n_factors(), k as usize);
            assert_eq!(int(direct), rhs, "labels {:?}, k = {k}", d.labels());
        }
    }
}

fn identity_splits() -> Vec<(DoubledDesign, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = Vec::new();
    for (t, count) in [(1, 334), (2, 333), (3, 333)] {
        let x = maximal_5n16(t).unwrap();
        for _ in 0..count {
            let c = random_split(&mut rng, x.pedigree.m());
            out.push((x.clone(), c));
        }
    }
    let x = maximal_9n32(1).unwrap();
    for _ in 0..200 {
        let c = random_split(&mut rng, x.pedigree.m());
        out.push((x.clone(), c));
    }
    out
}

// 3. The wordlength identity holds with zero residual.
fn complementary_identity() {
    for (x, comp) in identity_splits() {
        let ctx = DeltaContext::from_pedigree(&x.pedigree);
        let s = x.complement_split(&comp).unwrap();
        let res = theorem1_residuals(&s.d, &s.d_bar, &ctx, 8).unwrap();
        assert!(res.iter().all(|r| r.is_zero()), "complement {comp:?}: {res:?}");
        for k in [1, 4, 8] {
            let oracle = oracle_delta(s.d.labels(), s.d_bar.labels(), x.pedigree.base.runs(), x.pedigree.m(), k);
            assert_eq!(delta_k(&s.d, &s.d_bar, &ctx, k).unwrap(), oracle);
        }
    }
}

// 4. Low-order differences and the A_4 relation; closed-form A_4.
fn low_order_relations() {
    for (x, comp) in identity_splits() {
        let s = x.complement_split(&comp).unwrap();
        let (m, n) = (x.pedigree.m() as i64, s.kept.len() as i64);
        let runs = x.design.runs() as i64;
        let base_runs = x.pedigree.base.runs();
        let delta = |k| oracle_delta(s.d.labels(), s.d_bar.labels(), base_runs, m as usize, k);
        assert!(delta(1).is_zero());
        assert_eq!(delta(2), rat(runs * (2 * n - m), 4));
        assert_eq!(delta(3), rat(3 * runs * n * (2 * n - m), 8));
        let a4 = int(pair_xor_a4(s.d.labels()));
        let a4_bar = int(pair_xor_a4(s.d_bar.labels()));
        let predicted = a4_bar - rat((2 * n - m) * (6 * n * n + 3 * m - 2), 24) + delta(4) * rat(2, 3 * runs);
        assert_eq!(a4, predicted, "complement {comp:?}");
    }
    for t in 1..=4u32 {
        let x = maximal_5n16(t).unwrap().design;
        let tt = 1i64 << t;
        let closed = rat(65 * tt * tt * tt - 75 * tt * tt + 10 * tt, 24);
        assert_eq!(int(wordlength_pattern(&x).unwrap().get(4)), closed);
        assert_eq!(int(pair_xor_a4(x.labels())), closed);
    }
    let x1 = maximal_5n16(1).unwrap().design;
    assert_eq!(brute_wlp(x1.labels())[4], 10);
    assert_eq!(wordlength_pattern_enum(&x1, 10, 1 << 20).unwrap().get(4), BigInt::from(10));
}

fn rotate7(f: &[u32]) -> Vec<u32> {
    let mut g = f.to_vec();
    g[..7].rotate_left(1);
    g
}

// 5. Frequency closed forms agree with concrete splits.
fn closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let t = rng.gen_range(1..=3);
        let x = maximal_5n16(t).unwrap();
        let comp = random_split(&mut rng, x.pedigree.m());
        let s = x.complement_split(&comp).unwrap();
        let k = rng.gen_range(1..=6);
        let oracle = oracle_delta(s.d.labels(), s.d_bar.labels(), x.pedigree.base.runs(), x.pedigree.m(), k);
        assert_eq!(delta_closed_5n16(&s.f.f, t, k).unwrap(), oracle, "t={t} f={:?} k={k}", s.f.f);
    }
    for t in 1..=3u32 {
        let x = maximal_9n32(t).unwrap();
        let ctx = DeltaContext::from_pedigree(&x.pedigree);
        for _ in 0..500 {
            let comp = random_split(&mut rng, x.pedigree.m());
            let s = x.complement_split(&comp).unwrap();
            let closed = delta4_closed_9n32(&s.f.f, t).unwrap();
            let oracle = oracle_delta(s.d.labels(), s.d_bar.labels(), x.pedigree.base.runs(), x.pedigree.m(), 4);
            assert_eq!(int(closed.clone()), oracle, "t={t} f={:?}", s.f.f);
            assert_eq!(int(closed.clone()), delta_k(&s.d, &s.d_bar, &ctx, 4).unwrap());
            let mut swapped = s.f.f.clone();
            swapped.swap(7, 8);
            assert_eq!(delta4_closed_9n32(&swapped, t).unwrap(), closed);
            let mut g = s.f.f.clone();
            for _ in 0..7 {
                g = rotate7(&g);
                assert_eq!(delta4_closed_9n32(&g, t).unwrap(), closed);
            }
        }
    }
}

/// Nonincreasing multisets of `parts` values in `0..=cap` summing to `u`.
fn multisets(parts: usize, cap: u32, u: u32) -> Vec<Vec<u32>> {
    fn go(parts: usize, cap: u32, u: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if u == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (0..=cap.min(u)).rev() {
            if v * parts as u32 >= u {
                cur.push(v);
                go(parts - 1, v, u - v, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(parts, cap, u, &mut Vec::new(), &mut out);
    out
}

/// Complement taking the first `f_i` copies of each group.
fn complement_of(x: &DoubledDesign, f: &[u32]) -> Vec<usize> {
    let mut c: Vec<usize> = f
        .iter()
        .enumerate()
        .flat_map(|(g, &fi)| (0..fi as u64).map(move |copy| (g + 1, copy)))
        .map(|(g, copy)| x.pedigree.column_index(g, copy))
        .collect();
    c.sort_unstable();
    c
}

fn split_delta(x: &DoubledDesign, f: &[u32], k: u32) -> ExactRational {
    let s = x.complement_split(&complement_of(x, f)).unwrap();
    oracle_delta(s.d.labels(), s.d_bar.labels(), x.pedigree.base.runs(), x.pedigree.m(), k)
}

// 6. Balanced frequencies minimize Δ_4 in range; the documented tie.
fn balanced_minimizers() {
    for t in 0..=4u32 {
        let x = maximal_5n16(t).unwrap();
        let tt = 1u32 << t;
        for u in 0..=15 * tt / 8 {
            let all = multisets(5, tt, u);
            let values: Vec<ExactRational> = all.iter().map(|f| split_delta(&x, f, 4)).collect();
            let best = values.iter().min().unwrap();
            let argmin: Vec<Vec<u32>> =
                all.iter().zip(&values).filter(|(_, v)| *v == best).map(|(f, _)| f.clone()).collect();
            let balanced: Vec<u32> = (0..5).map(|i| u / 5 + u32::from(i < u % 5)).collect();
            assert_eq!(argmin, vec![balanced], "t={t} u={u}");
            let r = lemma2_minimizers(t, u).unwrap();
            assert!(r.pass && r.in_range);
            assert_eq!(r.minimizers, argmin);
        }
    }
    let x = maximal_5n16(2).unwrap();
    assert_eq!(split_delta(&x, &[2, 2, 2, 1, 1], 4), split_delta(&x, &[2, 2, 2, 2, 0], 4));
    let r = lemma2_minimizers(2, 8).unwrap();
    assert!(r.minimizers.contains(&vec![2, 2, 2, 1, 1]));
    assert!(r.minimizers.contains(&vec![2, 2, 2, 2, 0]));
}

/// Every vector of `parts` values in `0..=cap` summing to `u`.
fn compositions(parts: usize, cap: u32, u: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if u == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=cap.min(u))
        .flat_map(|v| {
            compositions(parts - 1, cap, u - v).into_iter().map(move |mut rest| {
                rest.insert(0, v);
                rest
            })
        })
        .collect()
}

// 7. 9N/32 scans: argmin structure, the cubic bound, and L(9) = 7.
fn nine_factor_scans() {
    for t in 0..=1u32 {
        let x = maximal_9n32(t).unwrap();
        let tt = 1u32 << t;
        for u in 0..=3 * tt / 2 {
            let n = 9 * tt as u64 - u as u64;
            let bound = lemma3_bound(n, t);
            let all = compositions(9, tt, u);
            let values: Vec<ExactRational> = all.iter().map(|f| split_delta(&x, f, 4)).collect();
            let best = values.iter().min().unwrap().clone();
            for (f, v) in all.iter().zip(&values) {
                assert!(*v >= bound, "t={t} f={f:?}");
                if *v == best {
                    assert_eq!((f[7], f[8]), (0, 0), "t={t} f={f:?}");
                    let (hi, lo) = (f[..7].iter().max().unwrap(), f[..7].iter().min().unwrap());
                    assert!(hi - lo <= 1, "t={t} f={f:?}");
                }
            }
            if u == 0 {
                assert_eq!(best, bound);
            }
            assert!(lemma3_check(t, u).unwrap().pass);
        }
    }
    let l = lemma4_lower_bound(9, 0).unwrap();
    assert_eq!(l, int(7));
    assert_eq!(int(brute_wlp(x0_nine().unwrap().labels())[4]), l);
}

// 8. Complement search at 128 runs.
fn search_128() {
    let x = maximal_5n16(3).unwrap();
    let c = SearchConstraints::default();
    let key_of = |comp: &[usize]| seq_key_to_depth(&wordlength_pattern(&x.design.project(comp).unwrap()).unwrap(), 8);
    for u in 1..=5usize {
        let r = complement_search(&x, u, &c).unwrap();
        assert!(!r.partial);
        let w = r.winner.unwrap();
        let first: Vec<usize> = (1..=u).collect();
        assert!(w.complement == first || r.tied_complements.contains(&first), "u={u}");
        assert_eq!(key_of(&first), w.key);
        assert_eq!(w.key.0[0], BigInt::from(0));
        if u == 5 {
            assert_eq!(w.key.0[1], BigInt::from(-1));
        }
    }
    for u in [5usize, 6] {
        let best = brute_balanced_min(&x, u);
        let r = complement_search(&x, u, &c).unwrap();
        let w = r.winner.unwrap();
        assert_eq!(w.key.0[..3], best.map(BigInt::from), "u={u}");
    }

    let r = complement_search(&x, 9, &c).unwrap();
    assert_eq!(r.stage_survivors.len(), 2);
    let tail = |comp: &[usize]| {
        let w = wordlength_pattern(&x.design.project(comp).unwrap()).unwrap();
        (4..=9).map(|i| w.get(i)).collect::<Vec<_>>()
    };
    let mut tails: Vec<Vec<BigInt>> = r.stage_survivors.iter().map(|s| tail(&s.representative)).collect();
    tails.sort();
    let first = [0, 2, 1, 0, 0, 0].map(BigInt::from).to_vec();
    let second = [0, 2, 0, 0, 1, 0].map(BigInt::from).to_vec();
    assert_eq!(tails, vec![second.clone(), first]);
    assert_eq!(tail(&r.winner.unwrap().complement), second);

    for u in 6..=11usize {
        let r = complement_search(&x, u, &c).unwrap();
        assert!(!r.partial, "u={u}");
        let w = r.winner.unwrap();
        let s = wordlength_pattern(&x.design.project(&s_complement(u, 3).unwrap()).unwrap()).unwrap();
        assert_eq!(s.get(4), BigInt::from(0), "u={u}");
        assert_eq!(-s.get(5), w.key.0[1], "u={u}");
    }
}

/// Smallest `(A_4, -A_5, A_6)` over balanced complements of size `u`, by
/// enumerating every column subset.
fn brute_balanced_min(x: &DoubledDesign, u: usize) -> [i64; 3] {
    let labels = x.design.labels();
    let m = labels.len();
    let m0 = x.pedigree.m0();
    let mut best = [i64::MAX; 3];
    let mut idx: Vec<usize> = (0..u).collect();
    loop {
        let mut f = vec![0u32; m0];
        for &i in &idx {
            f[i % m0] += 1;
        }
        let (hi, lo) = (f.iter().max().unwrap(), f.iter().min().unwrap());
        if hi - lo <= 1 {
            let mut a = [0i64; 7];
            for s in 1u32..1 << u {
                let v = (0..u).filter(|&b| s >> b & 1 == 1).fold(0, |acc, b| acc ^ labels[idx[b]]);
                let len = s.count_ones() as usize;
                if v == 0 && len <= 6 {
                    a[len] += 1;
                }
            }
            best = best.min([a[4], -a[5], a[6]]);
        }
        // next u-subset of 0..m
        let mut i = u;
        while i > 0 && idx[i - 1] == m - u + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return best;
        }
        idx[i - 1] += 1;
        for j in i..u {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// 9. Greedy projection bound and the inequality checks.
fn greedy_and_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let x = if rng.gen_bool(0.5) {
            let t = rng.gen_range(0..=2);
            let mut labels = maximal_5n16(t).unwrap().design.labels().to_vec();
            labels.shuffle(&mut rng);
            Design::with_columns(4 + t, labels).unwrap()
        } else {
            random_design(&mut rng, 6, 24)
        };
        let m = x.n_factors() as u64;
        let r = rng.gen_range(3..=4usize);
        if m < r as u64 {
            continue;
        }
        let n = rng.gen_range(r as u64..=m);
        let g = greedy_projection(&x, n as usize, r).unwrap();
        let a_x = wordlength_pattern(&x).unwrap().get(r);
        let achieved = wordlength_pattern(&x.project(&g.kept).unwrap()).unwrap().get(r);
        let bound = int(a_x * binom(n, r as u64)) / int(binom(m, r as u64));
        assert_eq!(achieved, BigInt::from(g.achieved));
        assert!(int(achieved) <= bound, "labels {:?} n={n} r={r}", x.labels());
    }
    let x1 = maximal_5n16(1).unwrap().design;
    let g = greedy_projection(&x1, 8, 4).unwrap();
    assert_eq!(g.achieved, 3);
    assert_eq!(g.bound, int(10 * binom(8, 4)) / int(binom(10, 4)));
    assert_eq!(g.bound, rat(10, 3));
    for t in 0..=5 {
        assert!(lemma6_check(t).unwrap().pass, "lemma6 t={t}");
        assert!(lemma7_check(t).unwrap().pass, "lemma7 t={t}");
    }
}

// 10. The 256-run table for 69..79 factors.
fn table_256() {
    let r = reproduce_section6(&Section6Options::default()).unwrap();
    assert_eq!(r.runs, 256);
    assert_eq!(r.rows.iter().map(|row| row.n).collect::<Vec<_>>(), (69..=79).collect::<Vec<_>>());
    let x = maximal_5n16(4).unwrap();
    for row in &r.rows {
        let kept: Vec<usize> = (1..=80).filter(|j| !row.complement.contains(j)).collect();
        let w = wordlength_pattern(&x.design.project(&kept).unwrap()).unwrap();
        assert_eq!(w, row.wlp);
        assert!(matches!(w.resolution(), Resolution::Finite(r) if r >= 4) || w.resolution() == Resolution::Infinite);
        let mut f = [0u32; 5];
        for &j in &row.complement {
            f[(j - 1) % 5] += 1;
        }
        assert!(f.iter().max().unwrap() - f.iter().min().unwrap() <= 1, "n={}", row.n);
        let key = seq_key_to_depth(&wordlength_pattern(&x.design.project(&row.complement).unwrap()).unwrap(), 8);
        let greedy = seq_key_to_depth(&wordlength_pattern(&x.design.project(&row.greedy_deleted).unwrap()).unwrap(), 8);
        assert!(key <= greedy, "n={}", row.n);
        assert_eq!(row.flagged, row.n == 71);
        assert!(row.pass, "n={}", row.n);
    }
    let flagged = r.rows.iter().find(|row| row.n == 71).unwrap();
    assert!(flagged.note.as_deref().is_some_and(|s| s.contains("vs greedy")));
    assert!(r.pass);
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn(),
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "wordlength pattern regression", limit: Duration::from_secs(1), run: wlp_regression },
    Criterion { id: 2, name: "power moment identity", limit: Duration::from_secs(30), run: pless_identity },
    Criterion {
        id: 3,
        name: "complementary wordlength identity",
        limit: Duration::from_secs(120),
        run: complementary_identity,
    },
    Criterion { id: 4, name: "low-order relations and A4", limit: Duration::from_secs(120), run: low_order_relations },
    Criterion { id: 5, name: "frequency closed forms", limit: Duration::from_secs(120), run: closed_forms },
    Criterion { id: 6, name: "balanced minimizers", limit: Duration::from_secs(60), run: balanced_minimizers },
    Criterion { id: 7, name: "9N/32 scans and lower bound", limit: Duration::from_secs(60), run: nine_factor_scans },
    Criterion { id: 8, name: "complement search at 128 runs", limit: Duration::from_secs(1800), run: search_128 },
    Criterion { id: 9, name: "greedy projection and bounds", limit: Duration::from_secs(120), run: greedy_and_bounds },
    Criterion { id: 10, name: "256-run table", limit: Duration::from_secs(600), run: table_256 },
];

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &CRITERIA {
        if !filter.is_empty() && !filter.iter().any(|f| c.id.to_string() == *f || c.name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.run);
        let elapsed = start.elapsed();
        let pass = outcome.is_ok() && elapsed <= c.limit;
        if !pass {
            failed += 1;
        }
        let why = match (outcome.is_ok(), elapsed <= c.limit) {
            (true, true) => String::new(),
            (false, _) => " (assertion failed)".to_string(),
            (true, false) => " (over time limit)".to_string(),
        };
        println!(
            "criterion {:>2} {:<34} {} in {:.2?} (limit {:?}){why}",
            c.id,
            c.name,
            if pass { "PASS" } else { "FAIL" },
            elapsed,
            c.limit
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
