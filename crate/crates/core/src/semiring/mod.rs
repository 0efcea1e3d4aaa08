//! Commutative semirings used throughout the crate.
//!
//! A [`SemiringSpec`] names the instance and a [`Value`] carries the payload.
//! All arithmetic is exact.

mod polynomial;

pub use polynomial::{Monomial, Polynomial};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SemiringSpec {
    Integers,
    Rationals,
    /// Strictly positive rationals under ordinary `+` and `*`.
    PositiveRationals,
    /// Max-plus over the integers.
    TropicalInt,
    /// Max-plus over the rationals.
    TropicalRat,
    /// Laurent polynomials with integer coefficients in the named variables.
    PolynomialInt(Vec<String>),
    /// Adjoins a neutral element `∗` with `∗ ⊕ a = a` and `∗ ⊙ a = ∗`.
    StarExtended(Box<SemiringSpec>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capabilities {
    pub has_zero: bool,
    pub has_one: bool,
    pub has_additive_inverse: bool,
    pub has_division: bool,
    pub has_star: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Poly(Polynomial),
    Star,
}

impl Value {
    pub fn int(v: i64) -> Value {
        Value::Int(BigInt::from(v))
    }

    pub fn rat(n: i64, d: i64) -> Value {
        Value::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(index: usize) -> Value {
        Value::Poly(Polynomial::var(index))
    }

    pub fn is_star(&self) -> bool {
        matches!(self, Value::Star)
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Value::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<BigRational> {
        match self {
            Value::Int(v) => Some(BigRational::from_integer(v.clone())),
            Value::Rat(r) => Some(r.clone()),
            Value::Poly(p) => p.as_constant().map(BigRational::from_integer),
            Value::Star => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            Value::Poly(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Rat(r) => write!(f, "{r}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Star => write!(f, "*"),
        }
    }
}

impl SemiringSpec {
    pub fn star(inner: SemiringSpec) -> SemiringSpec {
        SemiringSpec::StarExtended(Box::new(inner))
    }

    pub fn polynomial<S: Into<String>, I: IntoIterator<Item = S>>(vars: I) -> SemiringSpec {
        SemiringSpec::PolynomialInt(vars.into_iter().map(Into::into).collect())
    }

    pub fn capabilities(&self) -> Capabilities {
        use SemiringSpec::*;
        match self {
            Integers => Capabilities {
                has_zero: true,
                has_one: true,
                has_additive_inverse: true,
                has_division: false,
                has_star: false,
            },
            Rationals => Capabilities {
                has_zero: true,
                has_one: true,
                has_additive_inverse: true,
                has_division: true,
                has_star: false,
            },
            PositiveRationals | TropicalInt | TropicalRat => Capabilities {
                has_zero: false,
                has_one: true,
                has_additive_inverse: false,
                has_division: true,
                has_star: false,
            },
            PolynomialInt(_) => Capabilities {
                has_zero: true,
                has_one: true,
                has_additive_inverse: true,
                has_division: false,
                has_star: false,
            },
            StarExtended(inner) => {
                let c = inner.capabilities();
                Capabilities {
                    has_zero: false,
                    has_one: c.has_one,
                    has_additive_inverse: false,
                    has_division: c.has_division,
                    has_star: true,
                }
            }
        }
    }

    /// The base semiring with any `∗` wrapper removed.
    pub fn base(&self) -> &SemiringSpec {
        match self {
            SemiringSpec::StarExtended(inner) => inner.base(),
            s => s,
        }
    }

    pub fn is_ring(&self) -> bool {
        self.capabilities().has_additive_inverse
    }

    /// Wraps in `StarExtended` when there is no zero to stand for an empty sum.
    pub fn with_neutral(&self) -> SemiringSpec {
        let c = self.capabilities();
        if c.has_zero || c.has_star {
            self.clone()
        } else {
            SemiringSpec::star(self.clone())
        }
    }

    pub fn name(&self) -> String {
        match self {
            SemiringSpec::Integers => "integers".into(),
            SemiringSpec::Rationals => "rationals".into(),
            SemiringSpec::PositiveRationals => "positive-rationals".into(),
            SemiringSpec::TropicalInt => "tropical-int".into(),
            SemiringSpec::TropicalRat => "tropical-rat".into(),
            SemiringSpec::PolynomialInt(_) => "polynomial".into(),
            SemiringSpec::StarExtended(inner) => format!("star:{}", inner.name()),
        }
    }

    pub fn var_names(&self) -> &[String] {
        match self {
            SemiringSpec::PolynomialInt(v) => v,
            SemiringSpec::StarExtended(inner) => inner.var_names(),
            _ => &[],
        }
    }

    pub fn zero(&self) -> Option<Value> {
        match self {
            SemiringSpec::Integers => Some(Value::Int(BigInt::zero())),
            SemiringSpec::Rationals => Some(Value::Rat(BigRational::zero())),
            SemiringSpec::PolynomialInt(_) => Some(Value::Poly(Polynomial::zero())),
            _ => None,
        }
    }

    /// The empty-sum value: the zero if present, otherwise `∗` when adjoined.
    pub fn neutral(&self) -> Option<Value> {
        if self.capabilities().has_star {
            Some(Value::Star)
        } else {
            self.zero()
        }
    }

    pub fn one(&self) -> Option<Value> {
        match self {
            SemiringSpec::Integers => Some(Value::Int(BigInt::one())),
            SemiringSpec::Rationals | SemiringSpec::PositiveRationals => {
                Some(Value::Rat(BigRational::one()))
            }
            SemiringSpec::TropicalInt => Some(Value::Int(BigInt::zero())),
            SemiringSpec::TropicalRat => Some(Value::Rat(BigRational::zero())),
            SemiringSpec::PolynomialInt(_) => Some(Value::Poly(Polynomial::one())),
            SemiringSpec::StarExtended(inner) => inner.one(),
        }
    }

    /// Maps an integer into the semiring (tropically: the integer itself as a tropical number).
    pub fn from_int(&self, v: i64) -> Result<Value> {
        self.coerce(&Value::int(v))
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (SemiringSpec::Integers | SemiringSpec::TropicalInt, Value::Int(_)) => true,
            (SemiringSpec::Rationals | SemiringSpec::TropicalRat, Value::Rat(_)) => true,
            (SemiringSpec::PositiveRationals, Value::Rat(r)) => r.is_positive(),
            (SemiringSpec::PolynomialInt(vars), Value::Poly(p)) => {
                p.max_var().is_none_or(|m| m < vars.len())
            }
            (SemiringSpec::StarExtended(_), Value::Star) => true,
            (SemiringSpec::StarExtended(inner), v) => inner.contains(v),
            _ => false,
        }
    }

    fn not_in(&self, v: &Value) -> Error {
        Error::NotInSemiring {
            value: v.to_string(),
            semiring: self.name(),
        }
    }

    /// Converts a value into this semiring's representation where that is lossless.
    pub fn coerce(&self, v: &Value) -> Result<Value> {
        if self.contains(v) {
            return Ok(v.clone());
        }
        let out = match (self.base(), v) {
            (_, Value::Star) => return Err(self.not_in(v)),
            (
                SemiringSpec::Rationals | SemiringSpec::PositiveRationals | SemiringSpec::TropicalRat,
                Value::Int(i),
            ) => Value::Rat(BigRational::from_integer(i.clone())),
            (SemiringSpec::Integers | SemiringSpec::TropicalInt, Value::Rat(r)) if r.is_integer() => {
                Value::Int(r.to_integer())
            }
            (SemiringSpec::PolynomialInt(_), Value::Int(i)) => Value::Poly(Polynomial::constant(i.clone())),
            (SemiringSpec::PolynomialInt(_), Value::Rat(r)) if r.is_integer() => {
                Value::Poly(Polynomial::constant(r.to_integer()))
            }
            (_, Value::Poly(p)) => match p.as_constant() {
                Some(c) => return self.coerce(&Value::Int(c)),
                None => return Err(self.not_in(v)),
            },
            _ => return Err(self.not_in(v)),
        };
        if self.contains(&out) {
            Ok(out)
        } else {
            Err(self.not_in(v))
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value> {
        use SemiringSpec::*;
        match self {
            StarExtended(inner) => match (a, b) {
                (Value::Star, x) | (x, Value::Star) => {
                    if x.is_star() {
                        Ok(Value::Star)
                    } else {
                        inner.coerce(x)
                    }
                }
                _ => inner.add(a, b),
            },
            Integers | Rationals | PositiveRationals | PolynomialInt(_) => {
                let (a, b) = (self.coerce(a)?, self.coerce(b)?);
                Ok(match (a, b) {
                    (Value::Int(x), Value::Int(y)) => Value::Int(x + y),
                    (Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
                    (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.add(&y)),
                    _ => unreachable!("coerced operands share a representation"),
                })
            }
            TropicalInt | TropicalRat => {
                let (a, b) = (self.coerce(a)?, self.coerce(b)?);
                Ok(if a >= b { a } else { b })
            }
        }
    }

    /// `acc ⊕= v`, in place for polynomials; `None` stands for the empty sum.
    pub fn add_into(&self, acc: &mut Option<Value>, v: &Value) -> Result<()> {
        match (self, acc.as_mut()) {
            (_, None) => *acc = Some(self.coerce(v)?),
            (SemiringSpec::PolynomialInt(_), Some(Value::Poly(p))) => match self.coerce(v)? {
                Value::Poly(q) => p.add_assign(&q),
                _ => unreachable!("polynomial semiring coerces to polynomials"),
            },
            (_, Some(a)) => *acc = Some(self.add(a, v)?),
        }
        Ok(())
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Result<Value> {
        use SemiringSpec::*;
        match self {
            StarExtended(inner) => match (a, b) {
                (Value::Star, x) | (x, Value::Star) => {
                    if !x.is_star() {
                        inner.coerce(x)?;
                    }
                    Ok(Value::Star)
                }
                _ => inner.mul(a, b),
            },
            Integers | Rationals | PositiveRationals | PolynomialInt(_) => {
                let (a, b) = (self.coerce(a)?, self.coerce(b)?);
                Ok(match (a, b) {
                    (Value::Int(x), Value::Int(y)) => Value::Int(x * y),
                    (Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
                    (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.mul(&y)),
                    _ => unreachable!("coerced operands share a representation"),
                })
            }
            TropicalInt | TropicalRat => {
                let (a, b) = (self.coerce(a)?, self.coerce(b)?);
                Ok(match (a, b) {
                    (Value::Int(x), Value::Int(y)) => Value::Int(x + y),
                    (Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
                    _ => unreachable!("coerced operands share a representation"),
                })
            }
        }
    }

    pub fn neg(&self, a: &Value) -> Result<Value> {
        if !self.is_ring() {
            return Err(Error::RingRequired(self.name()));
        }
        Ok(match self.coerce(a)? {
            Value::Int(x) => Value::Int(-x),
            Value::Rat(x) => Value::Rat(-x),
            Value::Poly(p) => Value::Poly(p.neg()),
            Value::Star => unreachable!("rings have no star"),
        })
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Result<Value> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Returns `c` with `c ⊙ b = a`.
    ///
    /// Laurent polynomials admit division by unit monomials even though the
    /// polynomial semiring does not advertise general division.
    pub fn divide(&self, a: &Value, b: &Value) -> Result<Value> {
        use SemiringSpec::*;
        match self {
            StarExtended(inner) => {
                if b.is_star() {
                    return Err(Error::NotInvertible("*".into()));
                }
                if a.is_star() {
                    inner.coerce(b)?;
                    return Ok(Value::Star);
                }
                inner.divide(a, b)
            }
            Integers => Err(Error::DivisionUnsupported(self.name())),
            PolynomialInt(_) => {
                let (a, b) = (self.coerce(a)?, self.coerce(b)?);
                let (Value::Poly(a), Value::Poly(b)) = (a, b) else {
                    unreachable!("coerced to polynomials")
                };
                let inv = b.inverse().ok_or_else(|| Error::NotInvertible(b.to_string()))?;
                Ok(Value::Poly(a.mul(&inv)))
            }
            Rationals | PositiveRationals => {
                let (a, b) = (self.coerce(a)?, self.coerce(b)?);
                let (Value::Rat(a), Value::Rat(b)) = (a, b) else {
                    unreachable!("coerced to rationals")
                };
                if b.is_zero() {
                    return Err(Error::NotInvertible("0".into()));
                }
                Ok(Value::Rat(a / b))
            }
            TropicalInt | TropicalRat => {
                let (a, b) = (self.coerce(a)?, self.coerce(b)?);
                Ok(match (a, b) {
                    (Value::Int(x), Value::Int(y)) => Value::Int(x - y),
                    (Value::Rat(x), Value::Rat(y)) => Value::Rat(x - y),
                    _ => unreachable!("coerced operands share a representation"),
                })
            }
        }
    }

    pub fn equal(&self, a: &Value, b: &Value) -> bool {
        match (self.coerce(a), self.coerce(b)) {
            (Ok(x), Ok(y)) => x == y,
            _ => a == b,
        }
    }

    pub fn display(&self, v: &Value) -> String {
        match v {
            Value::Poly(p) => p.display_with(self.var_names()),
            v => v.to_string(),
        }
    }
}

impl fmt::Display for SemiringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for SemiringSpec {
    type Err = Error;

    /// Accepts the names produced by [`SemiringSpec::name`]; `star:` prefixes nest.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("star:") {
            return Ok(SemiringSpec::star(rest.parse()?));
        }
        match s {
            "integers" | "int" => Ok(SemiringSpec::Integers),
            "rationals" | "rat" => Ok(SemiringSpec::Rationals),
            "positive-rationals" => Ok(SemiringSpec::PositiveRationals),
            "tropical-int" | "tropical" => Ok(SemiringSpec::TropicalInt),
            "tropical-rat" => Ok(SemiringSpec::TropicalRat),
            "polynomial" => Ok(SemiringSpec::PolynomialInt(Vec::new())),
            other => Err(Error::Parse(format!("unknown semiring `{other}`"))),
        }
    }
}

/// Left fold of `⊕`; the empty sum is the zero, or `∗` in a star-extended semiring.
pub fn fold_sum<'a, I>(spec: &SemiringSpec, values: I) -> Result<Value>
where
    I: IntoIterator<Item = &'a Value>,
{
    let mut acc: Option<Value> = None;
    for v in values {
        acc = Some(match acc {
            None => spec.coerce(v)?,
            Some(a) => spec.add(&a, v)?,
        });
    }
    match acc {
        Some(v) => Ok(v),
        None => spec.neutral().ok_or(Error::EmptySumWithoutNeutral),
    }
}

pub fn fold_product<'a, I>(spec: &SemiringSpec, values: I) -> Result<Value>
where
    I: IntoIterator<Item = &'a Value>,
{
    let mut acc: Option<Value> = None;
    for v in values {
        acc = Some(match acc {
            None => spec.coerce(v)?,
            Some(a) => spec.mul(&a, v)?,
        });
    }
    match acc {
        Some(v) => Ok(v),
        None => spec.one().ok_or(Error::EmptyProductWithoutOne),
    }
}

pub fn divide(spec: &SemiringSpec, a: &Value, b: &Value) -> Result<Value> {
    spec.divide(a, b)
}

fn bigint_json(v: &BigInt) -> Json {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn rat_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn json_bigint(j: &Json) -> Result<BigInt> {
    match j {
        Json::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Json::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: `{s}`"))),
        other => Err(Error::Parse(format!("not an integer: {other}"))),
    }
}

/// JSON form of a value: integers as numbers, rationals as `"p/q"`, `∗` as `"star"`,
/// polynomials as a list of `{"monomial": {name: exp}, "coeff": c}`.
pub fn value_to_json(spec: &SemiringSpec, v: &Value) -> Json {
    match v {
        Value::Int(i) => bigint_json(i),
        Value::Rat(r) => json!(rat_string(r)),
        Value::Star => json!("star"),
        Value::Poly(p) => {
            let names = spec.var_names();
            let terms: Vec<Json> = p
                .terms()
                .map(|(m, c)| {
                    let mut mono = Map::new();
                    for &(var, e) in m.exponents() {
                        let name = names.get(var).cloned().unwrap_or_else(|| format!("v{var}"));
                        mono.insert(name, json!(e));
                    }
                    json!({"monomial": Json::Object(mono), "coeff": bigint_json(c)})
                })
                .collect();
            Json::Array(terms)
        }
    }
}

pub fn value_from_json(spec: &SemiringSpec, j: &Json) -> Result<Value> {
    if j.as_str() == Some("star") {
        return if spec.capabilities().has_star {
            Ok(Value::Star)
        } else {
            Err(Error::NotInSemiring {
                value: "star".into(),
                semiring: spec.name(),
            })
        };
    }
    let raw = match (spec.base(), j) {
        (SemiringSpec::PolynomialInt(names), Json::Array(terms)) => {
            let mut p = Polynomial::zero();
            for t in terms {
                let coeff = json_bigint(t.get("coeff").ok_or_else(|| Error::Parse("missing coeff".into()))?)?;
                let mut pairs = Vec::new();
                if let Some(Json::Object(mono)) = t.get("monomial") {
                    for (name, e) in mono {
                        let idx = names
                            .iter()
                            .position(|n| n == name)
                            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                        let e = e.as_i64().ok_or_else(|| Error::Parse("bad exponent".into()))?;
                        pairs.push((idx, e as i32));
                    }
                }
                p.add_term(Monomial::from_pairs(pairs), coeff);
            }
            Value::Poly(p)
        }
        (_, Json::Number(n)) => match n.as_i64() {
            Some(i) => Value::int(i),
            None => return Err(Error::Parse(format!("not an exact number: {n}"))),
        },
        (_, Json::String(s)) => {
            let r = parse_rational(s)?;
            if r.is_integer() {
                Value::Int(r.to_integer())
            } else {
                Value::Rat(r)
            }
        }
        (_, other) => return Err(Error::Parse(format!("not a value: {other}"))),
    };
    spec.coerce(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn specs() -> Vec<SemiringSpec> {
        vec![
            SemiringSpec::Integers,
            SemiringSpec::Rationals,
            SemiringSpec::PositiveRationals,
            SemiringSpec::TropicalInt,
            SemiringSpec::TropicalRat,
            SemiringSpec::polynomial(["x", "y", "z"]),
            SemiringSpec::star(SemiringSpec::TropicalInt),
        ]
    }

    fn sample(spec: &SemiringSpec, seed: (i64, i64, u8)) -> Value {
        let (a, b, k) = seed;
        match spec {
            SemiringSpec::Integers | SemiringSpec::TropicalInt => Value::int(a),
            SemiringSpec::Rationals | SemiringSpec::TropicalRat => Value::rat(a, b.abs() + 1),
            SemiringSpec::PositiveRationals => Value::rat(a.abs() + 1, b.abs() + 1),
            SemiringSpec::PolynomialInt(_) => {
                let p = Polynomial::var((k % 3) as usize)
                    .mul(&Polynomial::constant(BigInt::from(a)))
                    .add(&Polynomial::constant(BigInt::from(b)));
                Value::Poly(p)
            }
            SemiringSpec::StarExtended(inner) => {
                if k % 5 == 0 {
                    Value::Star
                } else {
                    sample(inner, seed)
                }
            }
        }
    }

    fn triple() -> impl Strategy<Value = [(i64, i64, u8); 3]> {
        let one = (-50i64..50, -50i64..50, any::<u8>());
        [one.clone(), one.clone(), one]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn semiring_axioms_hold(t in triple()) {
            for spec in specs() {
                let a = sample(&spec, t[0]);
                let b = sample(&spec, t[1]);
                let c = sample(&spec, t[2]);
                let add = |x: &Value, y: &Value| spec.add(x, y).unwrap();
                let mul = |x: &Value, y: &Value| spec.mul(x, y).unwrap();
                prop_assert_eq!(add(&a, &b), add(&b, &a));
                prop_assert_eq!(mul(&a, &b), mul(&b, &a));
                prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
                prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
                prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
            }
        }

        #[test]
        fn division_inverts_product(t in triple()) {
            for spec in specs().into_iter().filter(|s| s.capabilities().has_division) {
                let a = sample(&spec, t[0]);
                let b = sample(&spec, t[1]);
                if b.is_star() || spec.zero().as_ref() == Some(&b) {
                    continue;
                }
                let ab = spec.mul(&a, &b).unwrap();
                prop_assert_eq!(spec.divide(&ab, &b).unwrap(), a);
            }
        }

        #[test]
        fn tropical_is_max_plus(xs in prop::collection::vec(-1000i64..1000, 1..8)) {
            let vals: Vec<Value> = xs.iter().map(|&x| Value::int(x)).collect();
            let s = fold_sum(&SemiringSpec::TropicalInt, &vals).unwrap();
            let p = fold_product(&SemiringSpec::TropicalInt, &vals).unwrap();
            prop_assert_eq!(s, Value::int(*xs.iter().max().unwrap()));
            prop_assert_eq!(p, Value::int(xs.iter().sum()));
        }

        #[test]
        fn star_is_absorbing_and_neutral(x in -100i64..100) {
            let spec = SemiringSpec::star(SemiringSpec::TropicalInt);
            let a = Value::int(x);
            prop_assert_eq!(spec.add(&Value::Star, &a).unwrap(), a.clone());
            prop_assert_eq!(spec.mul(&Value::Star, &a).unwrap(), Value::Star);
        }
    }

    #[test]
    fn fold_examples() {
        let t = SemiringSpec::TropicalInt;
        let v: Vec<Value> = [3, 5, 1].iter().map(|&x| Value::int(x)).collect();
        assert_eq!(fold_sum(&t, &v).unwrap(), Value::int(5));
        let v: Vec<Value> = [1, 2, 3].iter().map(|&x| Value::int(x)).collect();
        assert_eq!(fold_sum(&SemiringSpec::Integers, &v).unwrap(), Value::int(6));
        assert_eq!(fold_sum(&SemiringSpec::star(t.clone()), &[]).unwrap(), Value::Star);
        assert_eq!(fold_sum(&t, &[]), Err(Error::EmptySumWithoutNeutral));
    }

    #[test]
    fn product_and_division_examples() {
        assert_eq!(
            divide(&SemiringSpec::TropicalInt, &Value::int(5), &Value::int(3)).unwrap(),
            Value::int(2)
        );
        let pr = SemiringSpec::PositiveRationals;
        assert_eq!(
            fold_product(&pr, &[Value::rat(1, 2), Value::int(4)]).unwrap(),
            Value::rat(2, 1)
        );
        let poly = SemiringSpec::polynomial(["x1", "x2"]);
        let x1 = Value::var(0);
        let sum = poly.add(&Value::var(0), &Value::var(1)).unwrap();
        let got = fold_product(&poly, &[x1, sum]).unwrap();
        let expected = Polynomial::from_terms([
            (Monomial::from_pairs([(0, 2)]), BigInt::one()),
            (Monomial::from_pairs([(0, 1), (1, 1)]), BigInt::one()),
        ]);
        assert_eq!(got, Value::Poly(expected));
    }

    #[test]
    fn division_errors() {
        assert!(matches!(
            divide(&SemiringSpec::Integers, &Value::int(4), &Value::int(2)),
            Err(Error::DivisionUnsupported(_))
        ));
        assert!(matches!(
            divide(&SemiringSpec::Rationals, &Value::int(4), &Value::int(0)),
            Err(Error::NotInvertible(_))
        ));
        let s = SemiringSpec::star(SemiringSpec::TropicalInt);
        assert!(matches!(
            divide(&s, &Value::int(4), &Value::Star),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn membership() {
        assert!(!SemiringSpec::PositiveRationals.contains(&Value::rat(-1, 2)));
        assert!(SemiringSpec::PositiveRationals.coerce(&Value::int(0)).is_err());
        assert!(SemiringSpec::TropicalInt.coerce(&Value::Star).is_err());
    }

    #[test]
    fn json_round_trip() {
        let poly = SemiringSpec::polynomial(["a", "b"]);
        let p = Value::Poly(Polynomial::from_terms([
            (Monomial::from_pairs([(0, 2), (1, -1)]), BigInt::from(3)),
            (Monomial::one(), BigInt::from(-1)),
        ]));
        let j = value_to_json(&poly, &p);
        assert_eq!(value_from_json(&poly, &j).unwrap(), p);
        let q = Value::rat(-3, 4);
        let j = value_to_json(&SemiringSpec::Rationals, &q);
        assert_eq!(j, json!("-3/4"));
        assert_eq!(value_from_json(&SemiringSpec::Rationals, &j).unwrap(), q);
        let s = SemiringSpec::star(SemiringSpec::TropicalInt);
        assert_eq!(value_from_json(&s, &json!("star")).unwrap(), Value::Star);
    }

    #[test]
    fn spec_names_parse_back() {
        for spec in specs() {
            let parsed: SemiringSpec = spec.name().parse().unwrap();
            assert_eq!(parsed.name(), spec.name());
        }
    }
}
