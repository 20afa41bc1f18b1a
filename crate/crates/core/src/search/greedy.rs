use serde::Serialize;

use crate::design::Design;
use crate::error::{invalid, Result};
use crate::gf2core::{binomial, ExactRational};
use crate::wlp::{for_each_word, DEFAULT_ENUM_BUDGET};

/// Length-`r` defining words as 0-based column lists.
fn words_of_length(d: &Design, r: usize, budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut words = Vec::new();
    for_each_word(d.labels(), r, budget, |w| {
        if w.len() == r {
            words.push(w.to_vec());
        }
    })?;
    Ok(words)
}

/// For each column, how many length-`r` words contain it.
pub fn word_count_per_factor(d: &Design, r: usize, budget: u64) -> Result<Vec<u64>> {
    if r == 0 {
        return invalid("word length must be at least 1");
    }
    let mut counts = vec![0u64; d.n_factors()];
    for w in words_of_length(d, r, budget)? {
        for j in w {
            counts[j] += 1;
        }
    }
    Ok(counts)
}

#[derive(Clone, Debug, Serialize)]
pub struct GreedyProjection {
    pub n: usize,
    pub r: usize,
    /// Deleted columns (1-based) in deletion order.
    pub deleted: Vec<usize>,
    pub kept: Vec<usize>,
    pub initial_count: u64,
    pub achieved: u64,
    /// `A_r(X) C(n, r) / C(m, r)`.
    pub bound: ExactRational,
    pub within_bound: bool,
    #[serde(skip)]
    pub design: Design,
}

/// Deletes, one at a time, the column lying in the most length-`r` words
/// (smallest index on ties) until `n` columns remain.
pub fn greedy_projection(x: &Design, n: usize, r: usize) -> Result<GreedyProjection> {
    let m = x.n_factors();
    if r == 0 || r > n || n > m {
        return invalid(format!("need 1 <= r <= n <= m, got r = {r}, n = {n}, m = {m}"));
    }
    let words = words_of_length(x, r, DEFAULT_ENUM_BUDGET)?;
    let mut alive = vec![true; words.len()];
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, w) in words.iter().enumerate() {
        for &j in w {
            containing[j].push(i);
        }
    }
    let mut counts: Vec<u64> = containing.iter().map(|v| v.len() as u64).collect();
    let mut present = vec![true; m];
    let mut deleted = Vec::new();
    for _ in n..m {
        let j = (0..m)
            .filter(|&j| present[j])
            .max_by_key(|&j| (counts[j], std::cmp::Reverse(j)))
            .expect("a column remains");
        present[j] = false;
        deleted.push(j + 1);
        for &wi in &containing[j] {
            if alive[wi] {
                alive[wi] = false;
                for &k in &words[wi] {
                    counts[k] -= 1;
                }
            }
        }
    }
    let kept: Vec<usize> = (0..m).filter(|&j| present[j]).map(|j| j + 1).collect();
    let achieved = alive.iter().filter(|&&a| a).count() as u64;
    let initial = words.len() as u64;
    let bound =
        ExactRational::from(binomial(n as i64, r as i64) * initial) / ExactRational::from(binomial(m as i64, r as i64));
    Ok(GreedyProjection {
        n,
        r,
        within_bound: ExactRational::from(achieved as i64) <= bound,
        design: x.project(&kept)?,
        deleted,
        kept,
        initial_count: initial,
        achieved,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{maximal_5n16, maximal_9n32, x0_nine};
    use crate::wlp::wordlength_pattern;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn per_factor_counts() {
        let x = maximal_5n16(1).unwrap().design;
        assert_eq!(word_count_per_factor(&x, 4, DEFAULT_ENUM_BUDGET).unwrap(), vec![4; 10]);
        let c = word_count_per_factor(&x0_nine().unwrap(), 4, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(c, vec![4, 4, 4, 4, 4, 4, 4, 0, 0]);
        let y = maximal_9n32(1).unwrap().design;
        let c = word_count_per_factor(&y, 5, DEFAULT_ENUM_BUDGET).unwrap();
        let a5 = wordlength_pattern(&y).unwrap().get(5);
        assert_eq!(BigInt::from(c.iter().sum::<u64>()), a5 * 5);
    }

    #[test]
    fn greedy_small_case() {
        let x = maximal_5n16(1).unwrap().design;
        let g = greedy_projection(&x, 8, 4).unwrap();
        assert_eq!(g.deleted, vec![1, 2]);
        assert_eq!(g.achieved, 3);
        assert_eq!(g.bound, ExactRational::new(10, 3).unwrap());
        assert!(g.within_bound);
        assert_eq!(wordlength_pattern(&g.design).unwrap().get(4), BigInt::from(3));
        let same = greedy_projection(&x, 10, 4).unwrap();
        assert!(same.deleted.is_empty() && same.design == x);
    }

    #[test]
    fn greedy_meets_bound_randomly() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let t = rng.gen_range(1..=3);
            let x = if rng.gen_bool(0.5) { maximal_5n16(t) } else { maximal_9n32(t - 1) }.unwrap().design;
            let n = rng.gen_range(4..=x.n_factors());
            let g = greedy_projection(&x, n, 4).unwrap();
            assert!(g.within_bound, "n={n}");
            assert_eq!(BigInt::from(g.achieved), wordlength_pattern(&g.design).unwrap().get(4));
        }
    }

    #[test]
    fn greedy_rejects_bad_sizes() {
        let x = maximal_5n16(1).unwrap().design;
        assert!(greedy_projection(&x, 11, 4).is_err());
        assert!(greedy_projection(&x, 3, 4).is_err());
    }
}
