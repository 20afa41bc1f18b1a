//! Named designs and the complement column sets used with them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::design::{design_from_defining_words, design_from_labels, Design, DoubledDesign, DoublingPedigree};
use crate::error::{invalid, Error, Result};
use crate::wlp::{wordlength_pattern, Resolution};

/// Complement columns for `u = 6..=11` deletions from the 5N/16 maximal
/// design (first `u` entries); the first six are the first six columns.
pub const S_SET: [usize; 11] = [1, 2, 3, 4, 5, 6, 12, 18, 24, 30, 31];

/// The two `u = 9` complements with `A_4 = 0` and `A_5 = 2`.
pub const U9_FIRST: [usize; 9] = [1, 2, 3, 4, 5, 6, 12, 18, 24];
pub const U9_SECOND: [usize; 9] = [1, 2, 3, 4, 5, 6, 12, 23, 39];

/// The 15 defining words of the 32-run nine-factor base design.
pub const X0_NINE_WORDS: [&[usize]; 15] = [
    &[1, 2, 3, 5],
    &[2, 3, 4, 6],
    &[3, 4, 5, 7],
    &[4, 5, 6, 1],
    &[5, 6, 7, 2],
    &[6, 7, 1, 3],
    &[7, 1, 2, 4],
    &[1, 2, 3, 4, 5, 6, 7, 8, 9],
    &[1, 3, 4, 8, 9],
    &[2, 4, 5, 8, 9],
    &[3, 5, 6, 8, 9],
    &[4, 6, 7, 8, 9],
    &[5, 7, 1, 8, 9],
    &[6, 1, 2, 8, 9],
    &[7, 2, 3, 8, 9],
];

/// 16-run, 5-factor resolution V design `I = ABCDE`.
pub fn x0_res_v() -> Design {
    design_from_labels(4, vec![1, 2, 4, 8, 15]).expect("static labels")
}

/// `x0_res_v` doubled `t` times: `16 * 2^t` runs, `5 * 2^t` factors.
pub fn maximal_5n16(t: u32) -> Result<DoubledDesign> {
    x0_res_v().double_iter(t)
}

/// 32-run, 9-factor base of the 9N/32 family, rebuilt from four generators
/// and checked word for word against the full defining subgroup.
pub fn x0_nine() -> Result<Design> {
    let generators: Vec<Vec<usize>> = [0usize, 1, 2, 8].iter().map(|&i| X0_NINE_WORDS[i].to_vec()).collect();
    let d = design_from_defining_words(9, &generators)?;
    let mut expected: Vec<u128> =
        X0_NINE_WORDS.iter().map(|w| w.iter().fold(0u128, |m, &f| m | 1u128 << (f - 1))).collect();
    expected.sort_unstable();
    if d.defining_words()? != expected || d.log2_runs() != 5 {
        return Err(Error::Internal("nine-factor base does not reproduce its defining subgroup".into()));
    }
    Ok(d)
}

pub fn maximal_9n32(t: u32) -> Result<DoubledDesign> {
    x0_nine()?.double_iter(t)
}

/// Two-run single column doubled `t` times: `2^{t+1}` runs, `2^t` factors.
pub fn maximal_even(t: u32) -> Result<DoubledDesign> {
    design_from_labels(1, vec![1])?.double_iter(t)
}

/// The 2x2 base with a zero column, doubled `t` times (zero column kept).
pub fn saturated_with_zero(t: u32) -> Result<DoubledDesign> {
    design_from_labels(1, vec![0, 1])?.double_iter(t)
}

/// `saturated_with_zero(t)` without its zero first column: all `2^{t+1} - 1`
/// nonzero labels of width `t + 1`.
pub fn saturated_res_iii(t: u32) -> Result<Design> {
    if t == 0 {
        return invalid("the saturated family needs t >= 1");
    }
    let x = saturated_with_zero(t)?.design;
    let keep: Vec<usize> = (2..=x.n_factors()).collect();
    x.project(&keep)
}

/// Complement for deleting `u` columns from `maximal_5n16(t)`.
pub fn s_complement(u: usize, t: u32) -> Result<Vec<usize>> {
    if !(1..=11).contains(&u) {
        return invalid(format!("complement size u = {u} outside 1..=11"));
    }
    if u >= 6 && t < 3 {
        return invalid(format!("u = {u} needs at least 128 runs (t >= 3), got t = {t}"));
    }
    let m = 5usize << t;
    if u > m {
        return invalid(format!("cannot delete {u} of {m} columns"));
    }
    Ok(S_SET[..u].to_vec())
}

/// The complement deleted to build the minimum aberration projection with
/// `u` fewer columns: the `S_SET` prefix, except `U9_SECOND` at `u = 9`
/// (smaller `A_6` than the prefix).
pub fn chosen_complement(u: usize, t: u32) -> Result<Vec<usize>> {
    let s = s_complement(u, t)?;
    Ok(if u == 9 { U9_SECOND.to_vec() } else { s })
}

pub fn u9_pair(t: u32) -> Result<(Vec<usize>, Vec<usize>)> {
    if t < 3 {
        return invalid(format!("the u = 9 pair needs at least 128 runs (t >= 3), got t = {t}"));
    }
    Ok((U9_FIRST.to_vec(), U9_SECOND.to_vec()))
}

/// Constructor families exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    X0ResV,
    Max5n16,
    X0Nine,
    Max9n32,
    MaxEven,
    Saturated,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::X0ResV, Family::Max5n16, Family::X0Nine, Family::Max9n32, Family::MaxEven, Family::Saturated];

    pub fn name(self) -> &'static str {
        match self {
            Family::X0ResV => "x0-5",
            Family::Max5n16 => "max-5n16",
            Family::X0Nine => "x0-9",
            Family::Max9n32 => "max-9n32",
            Family::MaxEven => "max-even",
            Family::Saturated => "saturated",
        }
    }

    /// Builds the family member for doubling count `t` (ignored by the base
    /// designs).
    pub fn build(self, t: u32) -> Result<CatalogDesign> {
        let (design, pedigree) = match self {
            Family::X0ResV => {
                let d = maximal_5n16(0)?;
                (d.design, Some(d.pedigree))
            }
            Family::X0Nine => {
                let d = maximal_9n32(0)?;
                (d.design, Some(d.pedigree))
            }
            Family::Max5n16 => split(maximal_5n16(t)?),
            Family::Max9n32 => split(maximal_9n32(t)?),
            Family::MaxEven => split(maximal_even(t)?),
            Family::Saturated => (saturated_res_iii(t)?, None),
        };
        let t = match self {
            Family::X0ResV | Family::X0Nine => 0,
            _ => t,
        };
        let entry = CatalogDesign { family: self, t, design, pedigree };
        entry.check_invariants()?;
        Ok(entry)
    }

    pub fn expected_factors(self, t: u32) -> usize {
        match self {
            Family::X0ResV => 5,
            Family::X0Nine => 9,
            Family::Max5n16 => 5 << t,
            Family::Max9n32 => 9 << t,
            Family::MaxEven => 1 << t,
            Family::Saturated => (2 << t) - 1,
        }
    }

    pub fn expected_resolution(self, t: u32) -> Resolution {
        match self {
            Family::X0ResV => Resolution::Finite(5),
            Family::Max5n16 if t == 0 => Resolution::Finite(5),
            Family::Max5n16 | Family::X0Nine | Family::Max9n32 => Resolution::Finite(4),
            Family::MaxEven if t <= 1 => Resolution::Infinite,
            Family::MaxEven => Resolution::Finite(4),
            Family::Saturated => Resolution::Finite(3),
        }
    }

    /// Which doubling family a pedigree belongs to, judged by its base.
    pub fn of_pedigree(p: &DoublingPedigree) -> Option<Family> {
        if p.base == x0_res_v() {
            Some(Family::Max5n16)
        } else if x0_nine().is_ok_and(|b| b == p.base) {
            Some(Family::Max9n32)
        } else if p.base.log2_runs() == 1 && p.base.labels() == [1] {
            Some(Family::MaxEven)
        } else {
            None
        }
    }
}

fn split(d: DoubledDesign) -> (Design, Option<DoublingPedigree>) {
    (d.design, Some(d.pedigree))
}

impl serde::Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
            Error::InvalidInput(format!("unknown family '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

/// A constructed catalog design with its expected invariants checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogDesign {
    pub family: Family,
    pub t: u32,
    pub design: Design,
    pub pedigree: Option<DoublingPedigree>,
}

impl CatalogDesign {
    pub fn doubled(&self) -> Option<DoubledDesign> {
        self.pedigree.clone().map(|pedigree| DoubledDesign { design: self.design.clone(), pedigree })
    }

    /// Factor count, full rank, no zero or repeated label, and resolution.
    pub fn check_invariants(&self) -> Result<()> {
        let d = &self.design;
        let fail = |what: String| Err(Error::Internal(format!("{} (t = {}): {what}", self.family, self.t)));
        if d.n_factors() != self.family.expected_factors(self.t) {
            return fail(format!("has {} factors", d.n_factors()));
        }
        if d.rank() != d.log2_runs() as usize {
            return fail(format!("labels span rank {} < {}", d.rank(), d.log2_runs()));
        }
        if d.has_zero_label() || d.has_repeated_labels() {
            return fail("zero or repeated label".into());
        }
        let res = wordlength_pattern(d)?.resolution();
        if res != self.family.expected_resolution(self.t) {
            return fail(format!("resolution {res:?}"));
        }
        Ok(())
    }
}

/// `A_4` of `maximal_5n16(t)`:
/// `(65 * 2^{3t} - 75 * 2^{2t} + 10 * 2^t) / 24`.
pub fn a4_maximal_5n16(t: u32) -> BigInt {
    let p = |e: u32| BigInt::from(1) << e;
    (p(3 * t) * 65 - p(2 * t) * 75 + p(t) * 10) / 24
}
