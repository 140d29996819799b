//! Exact coefficients: Laurent polynomials in `q` over the rationals and
//! their fraction field.
//!
//! Both types are kept in a canonical form, so structural equality is
//! mathematical equality and the types can be used as hash keys.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A Laurent polynomial `sum_k c_k q^k` stored densely from its lowest
/// exponent. The first and last stored coefficients are nonzero; the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn monomial(c: Rational, k: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { low: k, coeffs: vec![c] }
        }
    }

    pub fn q_pow(k: i32) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(Rational::from_integer(BigInt::from(c)), 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i32, Rational)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    fn from_dense(low: i32, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self { low: low + lead_zeros as i32, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent carrying a nonzero coefficient (0 for the zero poly).
    pub fn low_degree(&self) -> i32 {
        self.low
    }

    pub fn high_degree(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    /// `Some((c, k))` when the polynomial is a single term `c q^k`.
    pub fn as_monomial(&self) -> Option<(&Rational, i32)> {
        (self.coeffs.len() == 1).then(|| (&self.coeffs[0], self.low))
    }

    pub fn coeff(&self, k: i32) -> Rational {
        let idx = k - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Replaces `q` by `q^{-1}`.
    pub fn subst_q_inverse(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { low: -self.high_degree(), coeffs }
    }

    /// Exact division by a nonzero polynomial; `None` when the division
    /// leaves a remainder.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (quot, rem) = poly_div_rem(&self.coeffs, &d.coeffs);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.low - d.low, quot))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let lo = self.low.min(other.low);
        let hi = self.high_degree().max(other.high_degree());
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - lo) as usize + i];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_dense(lo, coeffs)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((c, k)) = other.as_monomial() {
            return Self {
                low: self.low + k,
                coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            };
        }
        if let Some((c, k)) = self.as_monomial() {
            return Self {
                low: other.low + k,
                coeffs: other.coeffs.iter().map(|x| c * x).collect(),
            };
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_dense(self.low + other.low, coeffs)
    }
}

/// Dense polynomial long division over the rationals (coefficient index =
/// degree). Returns `(quotient, remainder)`.
fn poly_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem: Vec<Rational> = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    if a.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (quot, rem)
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Monic gcd of two dense polynomials (index = degree).
fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, mut r) = poly_div_rem(&x, &y);
        trim(&mut r);
        x = std::mem::replace(&mut y, r);
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &l;
        }
    }
    x
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let q_part = match k {
                0 => None,
                1 => Some("q".to_string()),
                _ => Some(format!("q^{k}")),
            };
            match (abs.is_one(), q_part) {
                (true, Some(qp)) => write!(f, "{qp}")?,
                (true, None) => write!(f, "1")?,
                (false, Some(qp)) => write!(f, "{abs}*{qp}")?,
                (false, None) => write!(f, "{abs}")?,
            }
        }
        Ok(())
    }
}

/// A rational function `num/den` in `q`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` has lowest exponent 0 and
/// leading coefficient 1, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(c))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::monomial(c, 0))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn q() -> Self {
        Self::qpow(1)
    }

    /// The monomial `q^k`.
    pub fn qpow(k: i32) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(k))
    }

    /// `c q^k` for an integer `c`.
    pub fn int_qpow(c: i64, k: i32) -> Self {
        Self::from_laurent(LaurentPoly::monomial(Rational::from_integer(c.into()), k))
    }

    /// `(-q)^k`.
    pub fn neg_qpow(k: i32) -> Self {
        Self::int_qpow(if k.rem_euclid(2) == 0 { 1 } else { -1 }, k)
    }

    /// `q - q^{-1}`.
    pub fn qhat() -> Self {
        Self::from_laurent(LaurentPoly::from_terms([
            (1, Rational::one()),
            (-1, -Rational::one()),
        ]))
    }

    /// Builds `num/den` in canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // Powers of q are units; move the den's lowest power into num.
        let mut num = num.shift(-den.low);
        let mut den = den.shift(-den.low);
        if den.coeffs.len() > 1 {
            let num_shift = num.low;
            let n0 = num.shift(-num_shift);
            let g = poly_gcd(&n0.coeffs, &den.coeffs);
            if g.len() > 1 {
                let gp = LaurentPoly::from_dense(0, g);
                num = n0.exact_div(&gp).expect("gcd divides num").shift(num_shift);
                den = den.exact_div(&gp).expect("gcd divides den");
                num = num.shift(-den.low);
                den = den.shift(-den.low);
            }
        }
        let lead = den.leading_coeff().cloned().expect("nonzero den");
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `Some((c, k))` when the value is `c q^k` with rational `c`.
    pub fn as_monomial(&self) -> Option<(&Rational, i32)> {
        if self.den.is_one() {
            self.num.as_monomial()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn subst_q_inverse(&self) -> Self {
        Self::normalize(self.num.subst_q_inverse(), self.den.subst_q_inverse())
    }

    pub fn scale_int(&self, c: i32) -> Self {
        self * &Self::from_int(c as i64)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            let num = if negate { &self.num - &rhs.num } else { &self.num + &rhs.num };
            return Self { num, den: LaurentPoly::one() };
        }
        if self.den == rhs.den {
            let num = if negate { &self.num - &rhs.num } else { &self.num + &rhs.num };
            return Self::normalize(num, self.den.clone());
        }
        let a = &self.num * &rhs.den;
        let b = &rhs.num * &self.den;
        let num = if negate { &a - &b } else { &a + &b };
        Self::normalize(num, &self.den * &rhs.den)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self { num: &self.num * &rhs.num, den: LaurentPoly::one() };
        }
        Self::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order on canonical forms, used only to make sorted
/// output deterministic.
impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:expr) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $imp(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $imp(&self, &rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $imp(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatFunc, b: &RatFunc| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &RatFunc, b: &RatFunc| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &RatFunc, b: &RatFunc| a.mul_impl(b));

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = self.mul_impl(rhs);
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic with an explicit error for division by zero.
pub fn rat_arith(op: ArithOp, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

pub fn qpow(k: i32) -> RatFunc {
    RatFunc::qpow(k)
}

pub fn subst_q_inverse(f: &RatFunc) -> RatFunc {
    f.subst_q_inverse()
}

// --- parsing ---------------------------------------------------------------

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn exponent(&mut self) -> Result<i32> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let neg = self.eat(b'-');
        let v = self.uint().ok_or_else(|| self.err("expected exponent"))?;
        let v: i32 = i32::try_from(v).map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// term := rational ['*' 'q' exp] | 'q' exp
    fn term(&mut self) -> Result<(i32, Rational)> {
        if self.eat(b'q') {
            return Ok((self.exponent()?, Rational::one()));
        }
        let n = self.uint().ok_or_else(|| self.err("expected coefficient or q"))?;
        let mut c = Rational::from_integer(n);
        if self.eat(b'/') {
            let d = self.uint().ok_or_else(|| self.err("expected denominator"))?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            c /= Rational::from_integer(d);
        }
        if self.eat(b'*') {
            if !self.eat(b'q') {
                return Err(self.err("expected q after *"));
            }
            return Ok((self.exponent()?, c));
        }
        if self.peek() == Some(b'q') {
            self.pos += 1;
            return Ok((self.exponent()?, c));
        }
        Ok((0, c))
    }

    fn sum(&mut self) -> Result<LaurentPoly> {
        let mut terms = Vec::new();
        let mut neg = self.eat(b'-');
        loop {
            let (k, c) = self.term()?;
            terms.push((k, if neg { -c } else { c }));
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }

    fn ratfunc(&mut self) -> Result<RatFunc> {
        let r = if self.eat(b'(') {
            let num = self.sum()?;
            if !self.eat(b')') {
                return Err(self.err("expected )"));
            }
            if self.eat(b'/') {
                if !self.eat(b'(') {
                    return Err(self.err("expected ( after /"));
                }
                let den = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected )"));
                }
                RatFunc::new(num, den)?
            } else {
                RatFunc::from_laurent(num)
            }
        } else {
            RatFunc::from_laurent(self.sum()?)
        };
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(r)
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Parser { s: s.as_bytes(), pos: 0 }.ratfunc()
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r: RatFunc = s.parse()?;
        if r.is_laurent() {
            Ok(r.num)
        } else {
            Err(Error::Parse(format!("{s:?} is not a Laurent polynomial")))
        }
    }
}

/// The deformation parameter of an algebra: either `q` itself or `q^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Q,
    QInv,
}

impl Param {
    pub fn sign(self) -> i32 {
        match self {
            Param::Q => 1,
            Param::QInv => -1,
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Param::Q => Param::QInv,
            Param::QInv => Param::Q,
        }
    }

    /// `p^k`.
    pub fn pow(self, k: i32) -> RatFunc {
        RatFunc::qpow(self.sign() * k)
    }

    /// `(-p)^k`.
    pub fn neg_pow(self, k: i32) -> RatFunc {
        RatFunc::neg_qpow(self.sign() * k)
    }

    /// `p - p^{-1}`.
    pub fn hat(self) -> RatFunc {
        RatFunc::qhat().scale_int(self.sign())
    }

    /// Rewrites a value expressed in `q` into one expressed in this parameter.
    pub fn apply(self, c: &RatFunc) -> RatFunc {
        match self {
            Param::Q => c.clone(),
            Param::QInv => c.subst_q_inverse(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        assert!((RatFunc::q() * RatFunc::qpow(-1)).is_one());
    }

    #[test]
    fn qhat_is_q_minus_inverse() {
        let d = rat_arith(ArithOp::Sub, &RatFunc::q(), &qpow(-1)).unwrap();
        assert_eq!(d, RatFunc::qhat());
        assert_eq!(d.to_string(), "q - q^-1");
    }

    #[test]
    fn exact_division() {
        let a = rf("q^2 - 1");
        let r = rat_arith(ArithOp::Div, &a, &RatFunc::q()).unwrap();
        assert_eq!(r, RatFunc::qhat());
        assert!(r.is_laurent());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            rat_arith(ArithOp::Div, &RatFunc::one(), &RatFunc::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(RatFunc::zero().inv().is_err());
    }

    #[test]
    fn qpow_values() {
        assert!(qpow(0).is_one());
        assert_eq!(qpow(2).to_string(), "q^2");
        assert_eq!(qpow(-3).to_string(), "q^-3");
    }

    #[test]
    fn q_inverse_substitution() {
        assert_eq!(subst_q_inverse(&RatFunc::qhat()), -RatFunc::qhat());
        assert_eq!(subst_q_inverse(&qpow(2)), qpow(-2));
        let sym = rf("q + q^-1");
        assert_eq!(subst_q_inverse(&sym), sym);
    }

    #[test]
    fn canonical_form_of_fractions() {
        // (q^2 - 1)/(q - 1) = q + 1
        let a = RatFunc::new(rf("q^2 - 1").num, rf("q - 1").num).unwrap();
        assert_eq!(a, rf("q + 1"));
        // 1/(2q) = 1/2 q^-1
        let b = RatFunc::new(LaurentPoly::one(), LaurentPoly::from_int(2).shift(1)).unwrap();
        assert_eq!(b.to_string(), "1/2*q^-1");
        let c = RatFunc::one().checked_div(&RatFunc::qhat()).unwrap();
        assert_eq!(c.to_string(), "(q)/(q^2 - 1)");
        assert_eq!(c.denom().low_degree(), 0);
        assert!(c.denom().leading_coeff().unwrap().is_one());
    }

    #[test]
    fn render_and_parse_grammar() {
        for s in ["-q^2 + 1 - q^-2", "0", "q", "-7 + 3/2*q^-1", "(q)/(q^2 - 1)", "-1"] {
            assert_eq!(rf(s).to_string(), s);
        }
        assert_eq!(rf("2q^3"), RatFunc::int_qpow(2, 3));
        assert!("q^".parse::<RatFunc>().is_err());
        assert!("(q)/(0)".parse::<RatFunc>().is_err());
    }

    #[test]
    fn neg_qpow_sign() {
        assert_eq!(RatFunc::neg_qpow(3), RatFunc::int_qpow(-1, 3));
        assert_eq!(RatFunc::neg_qpow(-2), RatFunc::qpow(-2));
        assert_eq!(RatFunc::neg_qpow(-1), RatFunc::int_qpow(-1, -1));
    }
}
