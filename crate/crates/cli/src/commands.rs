use std::fmt;
use std::path::Path;

use dlab_core::catalog::{chosen_complement, maximal_5n16, Family};
use dlab_core::complementary::{
    corollary1_report, delta4_closed_9n32, delta_closed_5n16, delta_k, example_deltas, lemma3_bound,
    lemma4_lower_bound, theorem1_residuals, DeltaContext, ExampleKind,
};
use dlab_core::search::{
    complement_search, corollary2_bound, lemma6_check, lemma7_check, reproduce_section6, Satisfiability,
    SearchConstraints, Section6Options, DEFAULT_BUDGET,
};
use dlab_core::suites::{run_suite, SuiteParams};
use dlab_core::wlp::wordlength_pattern;
use dlab_core::{Design, DesignFile, DoubledDesign, DoublingPedigree, ExactRational};
use serde_json::{json, Value};

use crate::args::{BoundKind, Command};
use crate::manifest::FileDigest;

#[derive(Debug)]
pub enum CliError {
    Core(dlab_core::Error),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use dlab_core::Error::*;
        match self {
            CliError::Core(Verification(_) | Internal(_)) => 1,
            CliError::Core(InvalidInput(_)) | CliError::Input(_) => 2,
            CliError::Core(Capacity(_)) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Input(s) => write!(f, "invalid input: {s}"),
        }
    }
}

impl From<dlab_core::Error> for CliError {
    fn from(e: dlab_core::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    BudgetExhausted,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::BudgetExhausted => 3,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Ok
        } else {
            Status::VerificationFailed
        }
    }
}

pub struct Outcome {
    pub value: Value,
    pub status: Status,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Self { value, status: Status::Ok }
    }
}

/// Input files read so far, for the manifest.
#[derive(Default)]
pub struct Inputs(pub Vec<FileDigest>);

impl Inputs {
    fn read_design(&mut self, path: &Path) -> CliResult<(Design, Option<DoubledDesign>)> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        self.0.push(FileDigest::of_bytes(&path.display().to_string(), &bytes));
        let file: DesignFile = serde_json::from_slice(&bytes)
            .map_err(|e| CliError::Input(format!("{} is not a design file: {e}", path.display())))?;
        Ok(file.into_parts()?)
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn design_json(d: &Design, p: Option<&DoublingPedigree>) -> Value {
    to_json(&DesignFile::from_design(d, p))
}

fn budget_or_default(b: Option<u64>) -> u64 {
    b.unwrap_or(DEFAULT_BUDGET)
}

pub fn run(cmd: &Command, inputs: &mut Inputs) -> CliResult<Outcome> {
    match cmd {
        Command::Construct { family, t, complement_u } => construct(*family, *t, *complement_u),
        Command::Double { input, times } => {
            let (d, doubled) = inputs.read_design(input)?;
            let base = match doubled {
                Some(x) => x.pedigree.base.double_iter(x.pedigree.t + times)?,
                None => d.double_iter(*times)?,
            };
            Ok(Outcome::ok(design_json(&base.design, Some(&base.pedigree))))
        }
        Command::Project { input, keep, drop } => {
            let (d, _) = inputs.read_design(input)?;
            let kept = match (keep, drop) {
                (Some(k), _) => k.0.clone(),
                (None, Some(dr)) => {
                    d.project(&dr.0)?;
                    (1..=d.n_factors()).filter(|j| !dr.0.contains(j)).collect()
                }
                (None, None) => return Err(CliError::Input("one of --keep or --drop is required".into())),
            };
            Ok(Outcome::ok(design_json(&d.project(&kept)?, None)))
        }
        Command::Wlp { input } => {
            let (d, _) = inputs.read_design(input)?;
            let w = wordlength_pattern(&d)?;
            let mut v = to_json(&w);
            v["resolution"] = to_json(&w.resolution());
            Ok(Outcome::ok(v))
        }
        Command::Delta { input, family, t, complement, kmax } => {
            let x = match (input, family) {
                (Some(path), _) => {
                    inputs.read_design(path)?.1.ok_or_else(|| CliError::Input("design file has no pedigree".into()))?
                }
                (None, Some(f)) => doubled_family(*f, *t)?,
                (None, None) => return Err(CliError::Input("one of --in or --family is required".into())),
            };
            delta(&x, &complement.0, *kmax)
        }
        Command::Verify { suite, family, t, u, n, kmax, samples, seed } => {
            let p = SuiteParams { family: *family, t: *t, u: *u, n: *n, kmax: *kmax, samples: *samples, seed: *seed };
            let r = run_suite(*suite, &p)?;
            Ok(Outcome { status: Status::from_pass(r.pass), value: to_json(&r) })
        }
        Command::Search { family, t, u, balanced, depth, budget, symmetry, no_unconstrained_check, max_ties } => {
            let x = doubled_family(*family, *t)?;
            let budget = budget_or_default(*budget);
            let c = SearchConstraints {
                balanced_only: *balanced,
                depth: *depth,
                budget,
                unconstrained_check: *balanced && !no_unconstrained_check,
                unconstrained_budget: budget,
                symmetry: *symmetry,
                max_reported_ties: *max_ties,
            };
            let r = complement_search(&x, *u, &c)?;
            let partial = r.partial || r.unconstrained.as_ref().is_some_and(|c| !c.complete);
            let status = if partial { Status::BudgetExhausted } else { Status::Ok };
            Ok(Outcome { value: to_json(&r), status })
        }
        Command::Bounds { which, t, n } => bounds(*which, *t, *n),
        Command::ReproduceS6 { depth, no_certify, budget } => {
            let opts = Section6Options { depth: *depth, certify: !no_certify, budget: budget_or_default(*budget) };
            let r = reproduce_section6(&opts)?;
            let status = if !r.pass {
                Status::VerificationFailed
            } else if opts.certify && r.rows.iter().any(|row| row.minimizes_key == Satisfiability::Unknown) {
                Status::BudgetExhausted
            } else {
                Status::Ok
            };
            Ok(Outcome { value: to_json(&r), status })
        }
    }
}

fn doubled_family(f: Family, t: u32) -> CliResult<DoubledDesign> {
    f.build(t)?.doubled().ok_or_else(|| CliError::Input(format!("family {f} has no doubling pedigree")))
}

fn construct(family: Family, t: u32, complement_u: Option<usize>) -> CliResult<Outcome> {
    let Some(u) = complement_u else {
        let c = family.build(t)?;
        return Ok(Outcome::ok(design_json(&c.design, c.pedigree.as_ref())));
    };
    if family != Family::Max5n16 {
        return Err(CliError::Input("--complement-u applies to max-5n16 only".into()));
    }
    let split = maximal_5n16(t)?.complement_split(&chosen_complement(u, t)?)?;
    Ok(Outcome::ok(design_json(&split.d, None)))
}

/// Closed form for the family the pedigree belongs to, when one exists.
fn closed_form(p: &DoublingPedigree, f: &[u32], u: u64, k: u32) -> CliResult<Option<ExactRational>> {
    let t = p.t;
    Ok(match Family::of_pedigree(p) {
        Some(Family::Max5n16) => Some(delta_closed_5n16(f, t, k)?),
        Some(Family::Max9n32) if k == 4 => Some(ExactRational::from(delta4_closed_9n32(f, t)?)),
        Some(Family::MaxEven) => Some(example_deltas(ExampleKind::Even, t, u, k)?),
        _ if p.base.log2_runs() == 1 && p.base.labels() == [0, 1] => {
            Some(example_deltas(ExampleKind::Saturated, t, u, k)?)
        }
        _ => None,
    })
}

fn delta(x: &DoubledDesign, complement: &[usize], kmax: u32) -> CliResult<Outcome> {
    if kmax == 0 {
        return Err(CliError::Input("kmax must be at least 1".into()));
    }
    let ctx = DeltaContext::from_pedigree(&x.pedigree);
    let s = x.complement_split(complement)?;
    let residuals = theorem1_residuals(&s.d, &s.d_bar, &ctx, kmax)?;
    let u = s.complement.len() as u64;
    let mut rows = Vec::new();
    let mut witness = None;
    for k in 1..=kmax {
        let value = delta_k(&s.d, &s.d_bar, &ctx, k)?;
        let closed = closed_form(&x.pedigree, &s.f.f, u, k)?;
        let residual = &residuals[k as usize - 1];
        let agrees = closed.as_ref().is_none_or(|c| *c == value);
        if witness.is_none() && (!residual.is_zero() || !agrees) {
            witness = Some(json!({ "k": k, "value": value, "closed_form": closed, "residual": residual }));
        }
        rows.push(json!({ "k": k, "value": value, "closed_form": closed, "theorem1_residual": residual }));
    }
    let corollary1 = if wordlength_pattern(&x.design)?.resolution().at_least(4) {
        let r = corollary1_report(&s.d, &s.d_bar, &ctx)?;
        if witness.is_none() && !r.pass {
            witness = Some(to_json(&r));
        }
        Some(r)
    } else {
        None
    };
    let pass = witness.is_none();
    let mut report = json!({
        "check": "delta",
        "params": { "complement": s.complement, "kmax": kmax, "t": x.pedigree.t, "m": x.pedigree.m() },
        "pass": pass,
        "details": { "f": s.f.f, "n": s.kept.len(), "u": u, "deltas": rows, "corollary1": corollary1 },
    });
    if let Some(w) = witness {
        report["witness"] = w;
    }
    Ok(Outcome { value: report, status: Status::from_pass(pass) })
}

fn bounds(which: BoundKind, t: u32, n: Option<u64>) -> CliResult<Outcome> {
    if t > 20 {
        return Err(CliError::Input("doubling count above 20 is not supported".into()));
    }
    let tt = 1u64 << t;
    let which_name = to_json(&which);
    let table =
        |range: std::ops::RangeInclusive<u64>, f: &dyn Fn(u64) -> CliResult<ExactRational>| -> CliResult<Outcome> {
            let v = match n {
                Some(n) => json!({ "which": which_name, "t": t, "n": n, "value": f(n)? }),
                None => {
                    let rows = range.map(|n| Ok(json!({ "n": n, "value": f(n)? }))).collect::<CliResult<Vec<_>>>()?;
                    json!({ "which": which_name, "t": t, "values": rows })
                }
            };
            Ok(Outcome::ok(v))
        };
    match which {
        BoundKind::Corollary2 => table(0..=5 * tt, &|n| Ok(corollary2_bound(n, t)?)),
        BoundKind::Lemma3 => table((15 * tt).div_ceil(2)..=9 * tt, &|n| {
            if n > 9 * tt {
                return Err(CliError::Input(format!("n = {n} exceeds 9 * 2^t = {}", 9 * tt)));
            }
            Ok(lemma3_bound(n, t))
        }),
        BoundKind::Lemma4 => table((15 * tt).div_ceil(2)..=9 * tt, &|n| Ok(lemma4_lower_bound(n, t)?)),
        BoundKind::Lemma6 => {
            let r = lemma6_check(t)?;
            Ok(Outcome { status: Status::from_pass(r.pass), value: json!({ "which": which_name, "report": r }) })
        }
        BoundKind::Lemma7 => {
            let r = lemma7_check(t)?;
            Ok(Outcome { status: Status::from_pass(r.pass), value: json!({ "which": which_name, "report": r }) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Ok.exit_code(), 0);
        assert_eq!(Status::VerificationFailed.exit_code(), 1);
        assert_eq!(Status::BudgetExhausted.exit_code(), 3);
        let core = |e| CliError::Core(e).exit_code();
        assert_eq!(core(dlab_core::Error::Verification("x".into())), 1);
        assert_eq!(core(dlab_core::Error::Internal("x".into())), 1);
        assert_eq!(core(dlab_core::Error::InvalidInput("x".into())), 2);
        assert_eq!(core(dlab_core::Error::Capacity("x".into())), 3);
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
    }

    #[test]
    fn delta_handles_every_doubling_family() {
        for f in [Family::Max5n16, Family::Max9n32, Family::MaxEven] {
            let x = doubled_family(f, 1).unwrap();
            let r = delta(&x, &[1, 2], 4).unwrap();
            assert_eq!(r.status, Status::Ok, "{f}");
            assert!(!r.value["details"]["deltas"][3]["closed_form"].is_null(), "{f}");
        }
        let sat = dlab_core::catalog::saturated_with_zero(2).unwrap();
        let r = delta(&sat, &[2, 5], 3).unwrap();
        assert_eq!(r.status, Status::Ok);
        assert!(r.value["details"]["corollary1"].is_null());
    }
}
