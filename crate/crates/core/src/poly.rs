//! Sparse Laurent polynomials over the rationals, plus a bare-bones field of
//! fractions for formal square-move weights.
//!
//! Exponents are signed so that gauge fixing can divide by monomials. The
//! canonical string form lists terms in lex order with `t1 > t2 > ...`, for
//! example `t1*t2^2+3/4*t3-1`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let d = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(BigInt::from_str(a.trim()).map_err(|_| bad())?, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Variable names order naturally: `t2 < t10`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(pub String);

impl Var {
    fn key(&self) -> (&str, Option<u64>, &str) {
        let s = self.0.as_str();
        let split = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (head, digits) = s.split_at(split);
        (head, digits.parse().ok(), digits)
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Sorted `(variable, nonzero exponent)` pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(Var(name.to_string()), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    fn combine(&self, other: &Monomial, sign: i32) -> Monomial {
        let mut map: BTreeMap<Var, i32> = self.0.iter().cloned().collect();
        for (v, e) in &other.0 {
            *map.entry(v.clone()).or_insert(0) += sign * e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.combine(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.combine(other, -1)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), -e)).collect())
    }

    /// Lex order with earlier variables dominant.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            let a = self.0.get(i);
            let b = other.0.get(j);
            let (va, ea, vb, eb) = match (a, b) {
                (None, None) => return Ordering::Equal,
                (Some((v, e)), None) => (Some(v), *e, None, 0),
                (None, Some((v, e))) => (None, 0, Some(v), *e),
                (Some((v, e)), Some((w, f))) => (Some(v), *e, Some(w), *f),
            };
            match (va, vb) {
                (Some(x), Some(y)) if x == y => {
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => return ea.cmp(&0),
                (Some(_), None) => return ea.cmp(&0),
                _ => return 0.cmp(&eb),
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.0.clone() } else { format!("{}^{}", v.0, e) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var(name: &str) -> Self {
        Self::term(rat(1), Monomial::var(name))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(rat(0)),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// The single term of a monomial, if it is one.
    pub fn as_term(&self) -> Option<(&Rational, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    /// Inverse of a single nonzero term.
    pub fn invert_term(&self) -> Result<Poly> {
        let (c, m) = self
            .as_term()
            .ok_or_else(|| Error::Arithmetic(format!("{self} is not invertible as a Laurent polynomial")))?;
        Ok(Poly::term(c.recip(), m.inverse()))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    pub fn evaluate(&self, values: &HashMap<String, Rational>) -> Result<Rational> {
        let mut total = rat(0);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = values
                    .get(&v.0)
                    .ok_or_else(|| Error::Invalid(format!("no value for {}", v.0)))?;
                if *e < 0 && x.is_zero() {
                    return Err(Error::Arithmetic(format!("{} = 0 in a denominator", v.0)));
                }
                let base = if *e < 0 { x.recip() } else { x.clone() };
                for _ in 0..e.unsigned_abs() {
                    t *= &base;
                }
            }
            total += t;
        }
        Ok(total)
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<Var> = self.terms.keys().flat_map(|m| m.factors().iter().map(|(v, _)| v.clone())).collect();
        vars.sort();
        vars.dedup();
        vars.into_iter().map(|v| v.0).collect()
    }

    /// Divides by the gcd of numerators over the lcm of denominators and makes
    /// the leading coefficient positive.
    pub fn primitive(&self) -> (Rational, Poly) {
        let Some((_, lead)) = self.leading() else {
            return (rat(1), Poly::zero());
        };
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut content = Rational::new(g, l);
        if lead.is_negative() {
            content = -content;
        }
        (content.clone(), self.scale(&content.recip()))
    }

    /// Whether every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.factors().iter().all(|(_, e)| *e >= 0))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(|| rat(0));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut sorted: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| b.0.lex_cmp(a.0));
        for (idx, (m, c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let bad = |why: &str| Error::Invalid(format!("cannot parse polynomial {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        // split into signed terms, keeping '-' that follows '^'
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if prev.is_some() {
                    return Err(bad("dangling sign"));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if cur.is_empty() {
            return Err(bad("dangling sign"));
        }
        pieces.push((neg, cur));
        let mut out = Poly::zero();
        for (neg, piece) in pieces {
            let mut coef = rat(1);
            let mut mono = Monomial::one();
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor"));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coef *= parse_rational(factor)?;
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (n, e.parse::<i32>().map_err(|_| bad("exponent"))?),
                        None => (factor, 1),
                    };
                    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(bad("variable name"));
                    }
                    mono = mono.mul(&Monomial(vec![(Var(name.to_string()), exp)]).normalized());
                }
            }
            out.add_term(mono, if neg { -coef } else { coef });
        }
        Ok(out)
    }
}

impl Monomial {
    fn normalized(self) -> Monomial {
        Monomial(self.0.into_iter().filter(|(_, e)| *e != 0).collect())
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::int(1)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! by_value {
    ($ty:ty, $($tr:ident $f:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty {
                $tr::$f(&self, &rhs)
            }
        }
    )*};
}

by_value!(Poly, Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Poly {
        Poly::constant(c)
    }
}

/// Commutative ring elements usable as matrix entries.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
}

impl Scalar for Rational {}
impl Scalar for Poly {}

/// Scalars with division, for weight transforms.
pub trait Field: Scalar + Div<Output = Self> {}

impl Field for Rational {}

/// Quotient of two Laurent polynomials, compared by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(RationalFunction { num, den })
    }

    /// The polynomial value, if the denominator is a single term.
    pub fn to_poly(&self) -> Option<Poly> {
        self.den.invert_term().ok().map(|inv| &self.num * &inv)
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Poly::zero().into()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Poly::one().into()
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        RationalFunction { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        RationalFunction { num: &self.num * &o.num, den: &self.den * &o.den }
    }
}

impl Div for RationalFunction {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(!o.num.is_zero(), "division by zero rational function");
        RationalFunction { num: &self.num * &o.den, den: &self.den * &o.num }
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl Scalar for RationalFunction {}
impl Field for RationalFunction {}
