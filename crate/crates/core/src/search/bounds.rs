use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::catalog::a4_maximal_5n16;
use crate::error::{invalid, Result};
use crate::gf2core::{binomial, ExactRational};

fn rat(v: impl Into<BigInt>) -> ExactRational {
    ExactRational::from(v.into())
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

/// Upper bound on `A_4` of the best `n`-factor projection of the 5N/16
/// maximal design with `16 * 2^t` runs.
pub fn corollary2_bound(n: u64, t: u32) -> Result<ExactRational> {
    let m = 5u64 << t;
    if n > m {
        return invalid(format!("n = {n} exceeds 5 * 2^t = {m}"));
    }
    Ok(rat(a4_maximal_5n16(t) * binomial(n as i64, 4)) / rat(binomial(m as i64, 4)))
}

/// Lower bound on `A_4` of any `n`-factor even design with `16 * 2^t` runs:
/// `[C(n,2)^2 / (2^{t+3} - 1) - C(n,2)] / 6`.
pub fn even_lower_bound(n: u64, t: u32) -> ExactRational {
    let c2 = rat(binomial(n as i64, 2));
    let d = rat(pow2(t + 3) - 1);
    (c2.clone() * c2.clone() / d - c2) / rat(6)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma6Row {
    pub n: u64,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub upper: ExactRational,
    pub lower: ExactRational,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma6Report {
    pub t: u32,
    pub rows: Vec<Lemma6Row>,
    pub pass: bool,
}

/// For `4 * 2^t < n <= 5 * 2^t`: the 5N/16 projection bound sits strictly
/// below the even-design lower bound, checked both in the cleared-denominator
/// form and directly.
pub fn lemma6_check(t: u32) -> Result<Lemma6Report> {
    if t > 20 {
        return invalid("doubling count above 20 is not supported");
    }
    let tt = 1u64 << t;
    // 4 * A_4(X) * 6 / 4 = 65 * 2^{3t-2} - 75 * 2^{2t-2} + 5 * 2^{t-1}
    let p = rat(pow2(3 * t) * 65 - pow2(2 * t) * 75 + pow2(t) * 10) / rat(4);
    let c5 = rat(binomial(5 * tt as i64, 4));
    let d = rat(pow2(t + 3) - 1);
    let rows: Vec<Lemma6Row> = (4 * tt + 1..=5 * tt)
        .map(|n| {
            let ni = n as i64;
            let lhs = p.clone() * rat((ni - 2) * (ni - 3));
            let rhs = (rat(6 * ni * (ni - 1)) / d.clone() - rat(12)) * c5.clone();
            let upper = corollary2_bound(n, t)?;
            let lower = even_lower_bound(n, t);
            let pass = lhs < rhs && upper < lower;
            Ok(Lemma6Row { n, lhs, rhs, upper, lower, pass })
        })
        .collect::<Result<_>>()?;
    let pass = rows.iter().all(|r| r.pass);
    Ok(Lemma6Report { t, rows, pass })
}

/// Polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalPoly(pub Vec<ExactRational>);

impl RationalPoly {
    pub fn constant(c: ExactRational) -> Self {
        Self(vec![c])
    }

    /// `x - root`.
    pub fn linear(root: ExactRational) -> Self {
        Self(vec![-root, ExactRational::one()])
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.0.iter().rev().fold(ExactRational::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Self(vec![ExactRational::zero()]);
        }
        Self(self.0.iter().enumerate().skip(1).map(|(i, c)| c.clone() * rat(i as i64)).collect())
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;

    fn sub(self, o: RationalPoly) -> RationalPoly {
        let len = self.0.len().max(o.0.len());
        RationalPoly(
            (0..len)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(ExactRational::zero);
                    let b = o.0.get(i).cloned().unwrap_or_else(ExactRational::zero);
                    a - b
                })
                .collect(),
        )
    }
}

impl Mul for RationalPoly {
    type Output = RationalPoly;

    fn mul(self, o: RationalPoly) -> RationalPoly {
        let mut out = vec![ExactRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        RationalPoly(out)
    }
}

/// The 9N/32 projection lower bound as a cubic in `n`.
fn lower_poly(t: u32) -> RationalPoly {
    let tt = rat(pow2(t));
    let t2 = tt.clone() * tt.clone();
    let t3 = t2.clone() * tt.clone();
    let d = rat(1176);
    RationalPoly(vec![
        (rat(-882) * tt.clone() + rat(11907) * t2.clone() - rat(39477) * t3) / d.clone(),
        (rat(196) - rat(2646) * tt.clone() + rat(17380) * t2) / d.clone(),
        rat(-2754) * tt / d.clone(),
        rat(172) / d,
    ])
}

/// The 5N/16 projection bound at `32 * 2^t` runs as a quartic in `n`.
fn upper_poly(t: u32) -> RationalPoly {
    let lead = rat(a4_maximal_5n16(t + 1)) / rat(binomial(10i64 << t, 4)) / rat(24);
    (0..4).fold(RationalPoly::constant(lead), |p, r| p * RationalPoly::linear(rat(r)))
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma7Check {
    pub name: String,
    pub value: ExactRational,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma7Report {
    pub t: u32,
    /// `F = L - U` coefficients, lowest degree first.
    pub f: RationalPoly,
    pub checks: Vec<Lemma7Check>,
    pub monotone: bool,
    pub pass: bool,
}

/// Sign conditions showing `F = L - U` is positive and strictly increasing
/// on `8 * 2^t < n <= 9 * 2^t`, plus a direct integer sweep.
pub fn lemma7_check(t: u32) -> Result<Lemma7Report> {
    if t > 20 {
        return invalid("doubling count above 20 is not supported");
    }
    let tt = 1i64 << t;
    let f = lower_poly(t) - upper_poly(t);
    let at = |k: usize, x: i64| f.nth_derivative(k).eval(&rat(x));
    let zero = ExactRational::zero();
    let mut checks = Vec::new();
    let mut add = |name: String, value: ExactRational, positive: bool| {
        let pass = if positive { value > zero } else { value < zero };
        checks.push(Lemma7Check { name, value, pass });
    };
    add(format!("F'''({})", 9 * tt), at(3, 9 * tt), true);
    add(format!("F''''({})", 8 * tt), at(4, 8 * tt), false);
    add(format!("F''''({})", 9 * tt), at(4, 9 * tt), false);
    add(format!("F''({})", 8 * tt), at(2, 8 * tt), true);
    add(format!("F'({})", 8 * tt), at(1, 8 * tt), true);
    add(format!("F({})", 8 * tt + 1), at(0, 8 * tt + 1), true);
    let vals: Vec<ExactRational> = (8 * tt..=9 * tt).map(|n| at(0, n)).collect();
    let monotone = vals.windows(2).all(|w| w[0] < w[1]);
    let pass = monotone && checks.iter().all(|c| c.pass) && f.degree() == 4;
    Ok(Lemma7Report { t, f, checks, monotone, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complementary::lemma4_value;

    #[test]
    fn projection_upper_bound_examples() {
        for t in 0..=4 {
            assert_eq!(corollary2_bound(5 << t, t).unwrap(), rat(a4_maximal_5n16(t)));
        }
        assert_eq!(corollary2_bound(8, 1).unwrap(), ExactRational::new(10, 3).unwrap());
        for n in 0..=5 {
            assert!(corollary2_bound(n, 0).unwrap().is_zero());
        }
        assert!(corollary2_bound(11, 1).is_err());
    }

    #[test]
    fn upper_below_even_lower_bound() {
        let r0 = lemma6_check(0).unwrap();
        assert_eq!(r0.rows.len(), 1);
        assert_eq!(r0.rows[0].lhs, rat(0));
        assert_eq!(r0.rows[0].rhs, (ExactRational::new(120, 7).unwrap() - rat(12)) * rat(5));
        for t in 0..=5 {
            let r = lemma6_check(t).unwrap();
            assert!(r.pass, "t={t}");
            assert_eq!(r.rows.len() as u64, 1 << t);
        }
        assert_eq!(lemma6_check(4).unwrap().rows.first().unwrap().n, 65);
    }

    #[test]
    fn difference_polynomial_positive_small_t() {
        for t in 0..=5 {
            let r = lemma7_check(t).unwrap();
            assert!(r.pass, "t={t}: {:?}", r.checks);
        }
    }

    #[test]
    fn bound_polynomials_match_direct_forms() {
        assert_eq!(lower_poly(0).eval(&rat(9)), rat(7));
        assert_eq!(upper_poly(0).eval(&rat(9)), rat(6));
        for t in 0..=3u32 {
            for n in 0..=(9i64 << t) {
                assert_eq!(lower_poly(t).eval(&rat(n)), lemma4_value(&BigInt::from(n), t));
                let expect = if n as u64 <= 10 << t {
                    corollary2_bound(n as u64, t + 1).unwrap()
                } else {
                    continue;
                };
                assert_eq!(upper_poly(t).eval(&rat(n)), expect);
            }
        }
    }

    #[test]
    fn poly_helpers() {
        let p = RationalPoly(vec![rat(1), rat(2), rat(3)]);
        assert_eq!(p.eval(&rat(2)), rat(17));
        assert_eq!(p.derivative(), RationalPoly(vec![rat(2), rat(6)]));
        assert_eq!(p.nth_derivative(3), RationalPoly(vec![rat(0)]));
        assert_eq!(p.degree(), 2);
    }
}
