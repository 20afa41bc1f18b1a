//! Seeded verification suites producing `{check, params, pass, witness?}`
//! reports.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{maximal_9n32, maximal_even, saturated_with_zero, Family};
use crate::complementary::{
    corollary1_report, delta4_closed_9n32, delta_closed_5n16, delta_k, example_deltas, lemma2_minimizers, lemma3_check,
    lemma4_lower_bound, theorem1_residuals, DeltaContext, ExampleKind,
};
use crate::design::{Design, DoubledDesign};
use crate::error::{invalid, Result};
use crate::gf2core::ExactRational;
use crate::search::{lemma6_check, lemma7_check};
use crate::wlp::{verify_pless, wordlength_pattern};

pub const DEFAULT_SEED: u64 = 20080401;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pless,
    Theorem1,
    Corollary1,
    Lemma2,
    Lemma3,
    Lemma4,
    Lemma6,
    Lemma7,
    Examples,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Pless,
        Suite::Theorem1,
        Suite::Corollary1,
        Suite::Lemma2,
        Suite::Lemma3,
        Suite::Lemma4,
        Suite::Lemma6,
        Suite::Lemma7,
        Suite::Examples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pless => "pless",
            Suite::Theorem1 => "theorem1",
            Suite::Corollary1 => "corollary1",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma3 => "lemma3",
            Suite::Lemma4 => "lemma4",
            Suite::Lemma6 => "lemma6",
            Suite::Lemma7 => "lemma7",
            Suite::Examples => "examples",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| crate::Error::InvalidInput(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    pub family: Option<Family>,
    pub t: u32,
    pub u: Option<u32>,
    pub n: Option<u64>,
    pub kmax: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self { family: None, t: 1, u: None, n: None, kmax: 8, samples: 20, seed: DEFAULT_SEED }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: Value,
}

impl CheckReport {
    fn new(suite: Suite, params: &SuiteParams, pass: bool, witness: Option<Value>, details: Value) -> Self {
        Self {
            check: suite.name().to_string(),
            params: serde_json::to_value(params).expect("params serialize"),
            pass,
            witness,
            details,
        }
    }
}

pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    match suite {
        Suite::Pless => pless(p, &mut rng),
        Suite::Theorem1 => theorem1(p, &mut rng),
        Suite::Corollary1 => corollary1(p, &mut rng),
        Suite::Lemma2 => lemma2(p),
        Suite::Lemma3 => lemma3(p),
        Suite::Lemma4 => lemma4(p, &mut rng),
        Suite::Lemma6 => {
            let r = lemma6_check(p.t)?;
            let witness = r.rows.iter().find(|r| !r.pass).map(|r| json!(r));
            Ok(CheckReport::new(suite, p, r.pass, witness, json!({ "rows": r.rows.len() })))
        }
        Suite::Lemma7 => {
            let r = lemma7_check(p.t)?;
            let witness = (!r.pass).then(|| json!(r));
            Ok(CheckReport::new(suite, p, r.pass, witness, json!({ "checks": r.checks, "monotone": r.monotone })))
        }
        Suite::Examples => examples(p, &mut rng),
    }
}

/// A random full-rank design with `log2_runs <= max_k` and `n <= max_n`
/// columns (labels may repeat or be zero only if `allow_degenerate`).
pub fn random_design(rng: &mut impl Rng, max_k: u32, max_n: usize, allow_degenerate: bool) -> Design {
    let k = rng.gen_range(1..=max_k);
    let n = rng.gen_range(1..=max_n);
    let mut labels: Vec<u64> = (0..n)
        .map(|_| if allow_degenerate { rng.gen_range(0..1u64 << k) } else { rng.gen_range(1..1u64 << k) })
        .collect();
    for (i, l) in labels.iter_mut().take(k as usize).enumerate() {
        *l = 1 << i;
    }
    labels.shuffle(rng);
    Design::with_columns(k, labels).expect("labels fit the width")
}

pub fn random_complement(rng: &mut impl Rng, m: usize) -> Vec<usize> {
    let u = rng.gen_range(0..=m);
    let mut cols: Vec<usize> = (1..=m).collect();
    cols.shuffle(rng);
    cols.truncate(u);
    cols.sort_unstable();
    cols
}

fn family_doubled(p: &SuiteParams, default: Family) -> Result<(Family, DoubledDesign)> {
    let fam = p.family.unwrap_or(default);
    let x = match fam {
        Family::Saturated => saturated_with_zero(p.t)?,
        other => other.build(p.t)?.doubled().expect("doubling family"),
    };
    Ok((fam, x))
}

fn pless(p: &SuiteParams, rng: &mut ChaCha8Rng) -> Result<CheckReport> {
    let mut designs: Vec<(String, Design)> = Vec::new();
    if let Some(f) = p.family {
        designs.push((f.name().into(), f.build(p.t)?.design));
    }
    for i in 0..p.samples {
        designs.push((format!("random-{i}"), random_design(rng, 10, 40, true)));
    }
    if designs.is_empty() {
        return invalid("pless needs --family or a positive sample count");
    }
    let mut witness = None;
    for (name, d) in &designs {
        let r = verify_pless(d, p.kmax as usize)?;
        if !r.pass && witness.is_none() {
            witness = Some(json!({ "design": name, "labels": d.labels(), "log2_runs": d.log2_runs(), "report": r }));
        }
    }
    Ok(CheckReport::new(Suite::Pless, p, witness.is_none(), witness, json!({ "designs": designs.len() })))
}

fn theorem1(p: &SuiteParams, rng: &mut ChaCha8Rng) -> Result<CheckReport> {
    let (_, x) = family_doubled(p, Family::Max5n16)?;
    let ctx = DeltaContext::from_pedigree(&x.pedigree);
    let mut witness = None;
    for _ in 0..p.samples {
        let comp = random_complement(rng, x.pedigree.m());
        let s = x.complement_split(&comp)?;
        let res = theorem1_residuals(&s.d, &s.d_bar, &ctx, p.kmax)?;
        if let Some(k) = res.iter().position(|r| !r.is_zero()) {
            witness = Some(json!({ "complement": comp, "k": k + 1, "residual": res[k] }));
            break;
        }
    }
    Ok(CheckReport::new(
        Suite::Theorem1,
        p,
        witness.is_none(),
        witness,
        json!({ "splits": p.samples, "max_residual": "0" }),
    ))
}

fn corollary1(p: &SuiteParams, rng: &mut ChaCha8Rng) -> Result<CheckReport> {
    let (_, x) = family_doubled(p, Family::Max5n16)?;
    let ctx = DeltaContext::from_pedigree(&x.pedigree);
    let mut witness = None;
    let mut splits = vec![vec![]];
    splits.extend((0..p.samples).map(|_| random_complement(rng, x.pedigree.m())));
    for comp in &splits {
        let s = x.complement_split(comp)?;
        let r = corollary1_report(&s.d, &s.d_bar, &ctx)?;
        if !r.pass {
            witness = Some(json!({ "complement": comp, "report": r }));
            break;
        }
    }
    Ok(CheckReport::new(Suite::Corollary1, p, witness.is_none(), witness, json!({ "splits": splits.len() })))
}

fn lemma2(p: &SuiteParams) -> Result<CheckReport> {
    let tt = 1u32 << p.t;
    let us: Vec<u32> = match p.u {
        Some(u) => vec![u],
        None => (0..=5 * tt).collect(),
    };
    let reports = us.iter().map(|&u| lemma2_minimizers(p.t, u)).collect::<Result<Vec<_>>>()?;
    let witness = reports.iter().find(|r| !r.pass).map(|r| json!(r));
    let details = if reports.len() == 1 { json!(reports[0]) } else { json!({ "values_of_u": reports.len() }) };
    Ok(CheckReport::new(Suite::Lemma2, p, witness.is_none(), witness, details))
}

fn lemma3(p: &SuiteParams) -> Result<CheckReport> {
    let tt = 1u32 << p.t;
    let us: Vec<u32> = match p.u {
        Some(u) => vec![u],
        None => (0..=3 * tt / 2).collect(),
    };
    let reports = us.iter().map(|&u| lemma3_check(p.t, u)).collect::<Result<Vec<_>>>()?;
    let witness = reports.iter().find(|r| !r.pass).map(|r| json!(r));
    let summary: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "u": r.u, "min_delta4": r.min_delta4.to_string(), "bound": r.bound,
                "bound_attained": r.bound_attained, "in_range": r.in_range, "minimizers": r.minimizers.len(),
            })
        })
        .collect();
    Ok(CheckReport::new(Suite::Lemma3, p, witness.is_none(), witness, json!(summary)))
}

/// Bound values over the range, monotonicity, and `A_4 >= L(n)` on random
/// projections of the 9N/32 maximal design.
fn lemma4(p: &SuiteParams, rng: &mut ChaCha8Rng) -> Result<CheckReport> {
    let tt = 1u64 << p.t;
    let lo = (15 * tt).div_ceil(2);
    let ns: Vec<u64> = match p.n {
        Some(n) => vec![n],
        None => (lo..=9 * tt).collect(),
    };
    let bounds = ns.iter().map(|&n| lemma4_lower_bound(n, p.t)).collect::<Result<Vec<_>>>()?;
    let mut witness = None;
    if p.n.is_none() && !bounds.windows(2).all(|w| w[0] < w[1]) {
        witness = Some(json!({ "monotone": false }));
    }
    let x = maximal_9n32(p.t)?;
    let m = x.pedigree.m();
    for _ in 0..p.samples {
        if witness.is_some() {
            break;
        }
        let i = rng.gen_range(0..ns.len());
        let n = ns[i] as usize;
        let mut cols: Vec<usize> = (1..=m).collect();
        cols.shuffle(rng);
        cols.truncate(n);
        cols.sort_unstable();
        let a4 = ExactRational::from(wordlength_pattern(&x.design.project(&cols)?)?.get(4));
        if a4 < bounds[i] {
            witness = Some(json!({ "kept": cols, "a4": a4, "bound": bounds[i] }));
        }
    }
    let table: Vec<Value> = ns.iter().zip(&bounds).map(|(n, b)| json!({ "n": n, "bound": b })).collect();
    Ok(CheckReport::new(Suite::Lemma4, p, witness.is_none(), witness, json!(table)))
}

/// Closed forms against concrete splits: 5N/16, 9N/32, saturated, even.
fn examples(p: &SuiteParams, rng: &mut ChaCha8Rng) -> Result<CheckReport> {
    let t = p.t;
    let mut witness = None;
    let mut checked = 0u64;
    let cases: Vec<(&str, DoubledDesign)> = vec![
        ("max-5n16", crate::catalog::maximal_5n16(t)?),
        ("max-9n32", maximal_9n32(t)?),
        ("saturated", saturated_with_zero(t)?),
        ("max-even", maximal_even(t)?),
    ];
    'outer: for (name, x) in &cases {
        let ctx = DeltaContext::from_pedigree(&x.pedigree);
        for _ in 0..p.samples {
            let comp = random_complement(rng, x.pedigree.m());
            let s = x.complement_split(&comp)?;
            for k in 1..=p.kmax.min(6) {
                let direct = delta_k(&s.d, &s.d_bar, &ctx, k)?;
                let closed = match *name {
                    "max-5n16" => delta_closed_5n16(&s.f.f, t, k)?,
                    "max-9n32" if k == 4 => ExactRational::from(delta4_closed_9n32(&s.f.f, t)?),
                    "max-9n32" => continue,
                    "saturated" => example_deltas(ExampleKind::Saturated, t, comp.len() as u64, k)?,
                    _ => example_deltas(ExampleKind::Even, t, comp.len() as u64, k)?,
                };
                checked += 1;
                if closed != direct {
                    witness =
                        Some(json!({ "family": name, "complement": comp, "k": k, "closed": closed, "direct": direct }));
                    break 'outer;
                }
            }
        }
    }
    Ok(CheckReport::new(
        Suite::Examples,
        p,
        witness.is_none(),
        witness,
        json!({ "comparisons": checked, "families": cases.len() }),
    ))
}

/// Sum of a report list's failures, for batch callers.
pub fn failures(reports: &[CheckReport]) -> usize {
    reports.iter().filter(|r| !r.pass).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_scale() {
        for s in Suite::ALL {
            let p = SuiteParams { samples: 5, kmax: 6, ..Default::default() };
            let r = run_suite(s, &p).unwrap();
            assert!(r.pass, "{}: {:?}", s.name(), r.witness);
            assert_eq!(r.check, s.name());
        }
    }

    #[test]
    fn pless_on_named_family() {
        let p = SuiteParams { family: Some(Family::X0ResV), samples: 0, ..Default::default() };
        assert!(run_suite(Suite::Pless, &p).unwrap().pass);
        let p = SuiteParams { samples: 0, ..Default::default() };
        assert!(run_suite(Suite::Pless, &p).is_err());
    }

    #[test]
    fn balanced_minimizer_scan_reports_documented_tie() {
        let p = SuiteParams { t: 2, u: Some(8), ..Default::default() };
        let r = run_suite(Suite::Lemma2, &p).unwrap();
        assert!(r.pass);
        let mins = &r.details["minimizers"];
        assert!(mins.as_array().unwrap().contains(&json!([2, 2, 2, 1, 1])));
        assert!(mins.as_array().unwrap().contains(&json!([2, 2, 2, 2, 0])));
    }

    #[test]
    fn reports_are_deterministic() {
        let p = SuiteParams { samples: 4, ..Default::default() };
        let a = serde_json::to_string(&run_suite(Suite::Theorem1, &p).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Theorem1, &p).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_designs_are_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let d = random_design(&mut rng, 10, 40, false);
            assert!(!d.has_zero_label());
            assert_eq!(d.rank() as u32, d.log2_runs().min(d.n_factors() as u32));
        }
    }
}
