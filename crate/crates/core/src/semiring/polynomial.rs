//! Sparse Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A monomial as a sorted list of `(variable index, exponent)` with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(usize, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Monomial(vec![(index, 1)])
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (usize, i32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn exponents(&self) -> &[(usize, i32)] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> i32 {
        self.0
            .iter()
            .find(|&&(v, _)| v == var)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            if a.0 < b.0 {
                out.push(a);
                i += 1;
            } else if b.0 < a.0 {
                out.push(b);
                j += 1;
            } else {
                if a.1 + b.1 != 0 {
                    out.push((a.0, a.1 + b.1));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v)
    }
}

/// Polynomial in canonical form: monomials sorted, zero coefficients removed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index), BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let e = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *e += c;
            e.is_zero()
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Single-term polynomials with a unit coefficient are invertible.
    pub fn inverse(&self) -> Option<Polynomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if c.abs().is_one() {
            Some(Polynomial::term(m.inverse(), c.clone()))
        } else {
            None
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    /// Evaluates at rational points; `None` if a negative power hits zero.
    pub fn evaluate(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for &(v, e) in m.exponents() {
                let x = point.get(v)?;
                if e < 0 && x.is_zero() {
                    return None;
                }
                let base = if e < 0 { x.recip() } else { x.clone() };
                for _ in 0..e.unsigned_abs() {
                    t *= &base;
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Max-plus evaluation of the monomials (coefficients are ignored; all must be positive).
    pub fn tropical_evaluate(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut best: Option<BigRational> = None;
        for (m, c) in &self.terms {
            if !c.is_positive() {
                return None;
            }
            let mut t = BigRational::zero();
            for &(v, e) in m.exponents() {
                t += point.get(v)? * BigRational::from_integer(BigInt::from(e));
            }
            best = Some(match best {
                Some(b) if b >= t => b,
                _ => t,
            });
        }
        best
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for &(v, e) in m.exponents() {
                let name = names.get(v).cloned().unwrap_or_else(|| format!("v{v}"));
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            let body = factors.join("*");
            let s = if body.is_empty() {
                c.to_string()
            } else if c.is_one() {
                body
            } else if *c == -BigInt::one() {
                format!("-{body}")
            } else {
                format!("{c}*{body}")
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn distributes() {
        let p = x(0).mul(&x(0).add(&x(1)));
        let expected = Polynomial::from_terms([
            (Monomial::from_pairs([(0, 2)]), BigInt::one()),
            (Monomial::from_pairs([(0, 1), (1, 1)]), BigInt::one()),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = x(0).add(&x(1)).sub(&x(1));
        assert_eq!(p, x(0));
        assert!(x(2).sub(&x(2)).is_zero());
    }

    #[test]
    fn laurent_inverse() {
        let m = Polynomial::term(Monomial::from_pairs([(0, 2), (3, -1)]), BigInt::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Polynomial::one());
        assert!(x(0).add(&x(1)).inverse().is_none());
    }

    #[test]
    fn evaluation() {
        let p = x(0).mul(&x(1)).add(&Polynomial::constant(BigInt::from(3)));
        let pt = [BigRational::from_integer(2.into()), BigRational::from_integer(5.into())];
        assert_eq!(p.evaluate(&pt), Some(BigRational::from_integer(13.into())));
        let q = Polynomial::term(Monomial::from_pairs([(0, -1)]), BigInt::one());
        assert_eq!(q.evaluate(&pt), Some(BigRational::new(1.into(), 2.into())));
    }
}
