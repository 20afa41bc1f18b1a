//! GF(2) labels and exact combinatorial arithmetic.
//!
//! Column generators of a regular design are stored as bit-masks over the
//! run-index basis. Everything numeric here is exact: binomials, Stirling
//! numbers and Krawtchouk values are arbitrary-precision integers, and the
//! moment coefficients `Q_k(i; n)` are reduced rationals.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, BitXor, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};

/// Largest supported label width.
pub const MAX_WIDTH: u32 = 64;

/// A vector of GF(2)^width stored as a mask; bit `s` is the coefficient of
/// run-basis coordinate `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitLabel {
    mask: u64,
    width: u32,
}

impl BitLabel {
    pub fn new(mask: u64, width: u32) -> Result<Self> {
        if width > MAX_WIDTH {
            return invalid(format!("label width {width} exceeds {MAX_WIDTH}"));
        }
        if width < 64 && mask >> width != 0 {
            return invalid(format!("label {mask:#b} does not fit in width {width}"));
        }
        Ok(Self { mask, width })
    }

    pub const fn mask(self) -> u64 {
        self.mask
    }

    pub const fn width(self) -> u32 {
        self.width
    }

    pub const fn is_zero(self) -> bool {
        self.mask == 0
    }

    /// Inner product with a run index over GF(2).
    pub const fn parity_with(self, run: u64) -> u32 {
        (self.mask & run).count_ones() & 1
    }
}

impl BitXor for BitLabel {
    type Output = BitLabel;

    fn bitxor(self, rhs: Self) -> Self::Output {
        assert_eq!(self.width, rhs.width, "xor of labels with different widths");
        BitLabel { mask: self.mask ^ rhs.mask, width: self.width }
    }
}

/// Dimension of the GF(2) span of `labels`, all of which must have `width`.
pub fn gf2_rank(labels: &[BitLabel], width: u32) -> Result<usize> {
    if let Some(bad) = labels.iter().find(|l| l.width != width) {
        return invalid(format!("label width {} does not match expected width {width}", bad.width));
    }
    let masks: Vec<u64> = labels.iter().map(|l| l.mask).collect();
    Ok(rank_of_masks(&masks))
}

/// Rank of a set of bit-masks over GF(2).
pub fn rank_of_masks(masks: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &m in masks {
        let mut v = m;
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

/// Arbitrary-precision rational kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d = denom.into();
        if d.is_zero() {
            return invalid("zero denominator");
        }
        Ok(Self(BigRational::new(numer.into(), d)))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn pow(&self, e: u32) -> Self {
        Self(num_traits::pow(self.0.clone(), e as usize))
    }

    /// Lossy conversion for display only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for ExactRational {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigInt> for ExactRational {
    fn from(v: BigInt) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for ExactRational {
    fn from(v: BigRational) -> Self {
        Self(v)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: ExactRational) {
        self.0 += rhs.0;
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: serde_json::Number,
    den: serde_json::Number,
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr { num: crate::json::big_number(self.numer()), den: crate::json::big_number(self.denom()) }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = RationalRepr::deserialize(deserializer)?;
        let num = crate::json::parse_big(&repr.num).map_err(D::Error::custom)?;
        let den = crate::json::parse_big(&repr.den).map_err(D::Error::custom)?;
        ExactRational::new(num, den).map_err(D::Error::custom)
    }
}

/// Memoized binomial, factorial and Stirling tables.
///
/// Requests beyond the caps fall back to direct evaluation.
#[derive(Debug)]
pub struct Combinatorics {
    pascal: Vec<Vec<BigInt>>,
    stirling: Vec<Vec<BigInt>>,
    factorial: Vec<BigInt>,
}

impl Combinatorics {
    pub const DEFAULT_BINOMIAL_CAP: usize = 400;
    pub const DEFAULT_STIRLING_CAP: usize = 64;

    pub fn with_caps(binomial_cap: usize, stirling_cap: usize) -> Self {
        let mut pascal: Vec<Vec<BigInt>> = Vec::with_capacity(binomial_cap + 1);
        for n in 0..=binomial_cap {
            let mut row = vec![BigInt::one(); n + 1];
            for r in 1..n {
                row[r] = &pascal[n - 1][r - 1] + &pascal[n - 1][r];
            }
            pascal.push(row);
        }
        let mut stirling: Vec<Vec<BigInt>> = Vec::with_capacity(stirling_cap + 1);
        for k in 0..=stirling_cap {
            let mut row = vec![BigInt::zero(); k + 1];
            if k == 0 {
                row[0] = BigInt::one();
            } else {
                for j in 1..=k {
                    let carried = if j < k { &stirling[k - 1][j] * j } else { BigInt::zero() };
                    row[j] = carried + &stirling[k - 1][j - 1];
                }
            }
            stirling.push(row);
        }
        let mut factorial = vec![BigInt::one()];
        for i in 1..=stirling_cap.max(32) {
            let next = &factorial[i - 1] * i;
            factorial.push(next);
        }
        Self { pascal, stirling, factorial }
    }

    /// `C(n, r)`, zero when `r` is out of `0..=n` or `n` is negative.
    pub fn binomial(&self, n: i64, r: i64) -> BigInt {
        if n < 0 || r < 0 || r > n {
            return BigInt::zero();
        }
        let (n, r) = (n as usize, r as usize);
        if n < self.pascal.len() {
            return self.pascal[n][r].clone();
        }
        let r = r.min(n - r);
        let mut acc = BigInt::one();
        for i in 0..r {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }

    pub fn factorial(&self, n: usize) -> BigInt {
        if n < self.factorial.len() {
            return self.factorial[n].clone();
        }
        (1..=n).fold(BigInt::one(), |acc, i| acc * i)
    }

    /// Stirling number of the second kind `S(k, j)`.
    pub fn stirling2(&self, k: usize, j: usize) -> BigInt {
        if j > k {
            return BigInt::zero();
        }
        if k < self.stirling.len() {
            return self.stirling[k][j].clone();
        }
        // S(k, j) = (1/j!) sum_i (-1)^(j-i) C(j, i) i^k
        let mut acc = BigInt::zero();
        for i in 0..=j {
            let term = self.binomial(j as i64, i as i64) * num_traits::pow(BigInt::from(i), k);
            if (j - i) % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        acc / self.factorial(j)
    }
}

fn tables() -> &'static Combinatorics {
    static TABLES: OnceLock<Combinatorics> = OnceLock::new();
    TABLES.get_or_init(|| {
        Combinatorics::with_caps(Combinatorics::DEFAULT_BINOMIAL_CAP, Combinatorics::DEFAULT_STIRLING_CAP)
    })
}

pub fn binomial(n: i64, r: i64) -> BigInt {
    tables().binomial(n, r)
}

pub fn factorial(n: usize) -> BigInt {
    tables().factorial(n)
}

pub fn stirling2(k: usize, j: usize) -> BigInt {
    tables().stirling2(k, j)
}

/// `Q_k(i; n) = (-1)^i sum_{j=i}^{k} j! S(k, j) 2^{-j} C(n - i, j - i)`.
///
/// Defined for `k = 0` as well (`Q_0(i; n) = [i = 0]`), which the
/// complementary identity needs for its `j = 0` term.
pub fn q_coefficient(k: usize, i: usize, n: u64) -> ExactRational {
    type Cache = Mutex<HashMap<(usize, usize, u64), ExactRational>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("q cache poisoned").get(&(k, i, n)) {
        return v.clone();
    }
    let t = tables();
    let mut numer = BigInt::zero();
    // common denominator 2^k
    for j in i..=k {
        let c = t.binomial(n as i64 - i as i64, (j - i) as i64);
        if c.is_zero() {
            continue;
        }
        numer += (t.factorial(j) * t.stirling2(k, j) * c) << (k - j);
    }
    if i % 2 == 1 {
        numer = -numer;
    }
    let value = ExactRational(BigRational::new(numer, BigInt::one() << k));
    cache.lock().expect("q cache poisoned").insert((k, i, n), value.clone());
    value
}

/// Binary Krawtchouk value `K_i(j; n) = sum_s (-1)^s C(j, s) C(n - j, i - s)`.
pub fn krawtchouk(i: u64, j: u64, n: u64) -> BigInt {
    let t = tables();
    let mut acc = BigInt::zero();
    for s in 0..=i.min(j) {
        let term = t.binomial(j as i64, s as i64) * t.binomial((n - j) as i64, (i - s) as i64);
        if s % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

/// `K_0(j; n), ..., K_n(j; n)` by the three-term recurrence
/// `(i + 1) K_{i+1} = (n - 2j) K_i - (n - i + 1) K_{i-1}`.
pub fn krawtchouk_column(j: u64, n: u64) -> Vec<BigInt> {
    let mut col = Vec::with_capacity(n as usize + 1);
    col.push(BigInt::one());
    if n == 0 {
        return col;
    }
    let a = BigInt::from(n as i64 - 2 * j as i64);
    col.push(a.clone());
    for i in 1..n {
        let next = &a * &col[i as usize] - BigInt::from(n - i + 1) * &col[i as usize - 1];
        let (q, r) = next.div_rem(&BigInt::from(i + 1));
        debug_assert!(r.is_zero(), "krawtchouk recurrence not integral");
        col.push(q);
    }
    col
}
