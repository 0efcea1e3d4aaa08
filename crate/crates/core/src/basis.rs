//! Interval bases for FG-functions over semirings with division, weight recovery and
//! Laurent expansions.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use crate::flows::for_each_flow;
use crate::network::{PlanarNetwork, StandardKind};
use crate::semiring::{value_from_json, value_to_json, SemiringSpec, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisCase {
    /// Intervals of `[n]` plus the empty set, for flag arguments.
    FlagIntervals(usize),
    /// Pressed double intervals of `[n] × [n']` plus `(∅, ∅)`.
    PressedDoubleIntervals(usize, usize),
}

/// An argument `(I | I')`; in the flag case `I'` is `[|I|]`.
pub type Arg = (Vec<usize>, Vec<usize>);

fn interval(p: usize, q: usize) -> Vec<usize> {
    (p..=q).collect()
}

fn is_interval(s: &[usize]) -> bool {
    s.windows(2).all(|w| w[1] == w[0] + 1)
}

fn prefix(k: usize) -> Vec<usize> {
    (1..=k).collect()
}

fn interval_key(s: &[usize]) -> String {
    match (s.first(), s.last()) {
        (Some(p), Some(q)) => format!("{p}..{q}"),
        _ => String::new(),
    }
}

fn parse_interval(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let (p, q) = s.split_once("..").ok_or_else(|| Error::Parse(format!("bad interval `{s}`")))?;
    let p: usize = p.trim().parse().map_err(|_| Error::Parse(format!("bad interval `{s}`")))?;
    let q: usize = q.trim().parse().map_err(|_| Error::Parse(format!("bad interval `{s}`")))?;
    if p == 0 || q < p {
        return Err(Error::Parse(format!("bad interval `{s}`")));
    }
    Ok(interval(p, q))
}

/// All nonempty intervals of `[n]`, by right end and then length.
pub fn flag_intervals(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|q| (1..=q).rev().map(move |p| interval(p, q))).collect()
}

/// `D(k, k')`: the equal-length intervals ending at `k` and `k'`, one of them initial.
pub fn pressed_interval(k: usize, kp: usize) -> Arg {
    let m = k.min(kp);
    (interval(k + 1 - m, k), interval(kp + 1 - m, kp))
}

/// `(∅, ∅)` followed by `D(k, k')` for every vertex `(k, k')` of the `n × n'` grid.
pub fn pressed_basis(n: usize, np: usize) -> Vec<Arg> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for k in 1..=n {
        for kp in 1..=np {
            out.push(pressed_interval(k, kp));
        }
    }
    out
}

impl BasisCase {
    pub fn elements(&self) -> Vec<Arg> {
        match *self {
            BasisCase::FlagIntervals(n) => {
                let mut out = vec![(Vec::new(), Vec::new())];
                out.extend(flag_intervals(n).into_iter().map(|i| {
                    let ip = prefix(i.len());
                    (i, ip)
                }));
                out
            }
            BasisCase::PressedDoubleIntervals(n, np) => pressed_basis(n, np),
        }
    }

    pub fn contains(&self, arg: &Arg) -> bool {
        let (i, ip) = arg;
        if i.len() != ip.len() || !is_interval(i) || !is_interval(ip) {
            return false;
        }
        match *self {
            BasisCase::FlagIntervals(n) => i.last().is_none_or(|&q| q <= n) && *ip == prefix(i.len()),
            BasisCase::PressedDoubleIntervals(n, np) => {
                i.is_empty()
                    || (i.last() <= Some(&n) && ip.last() <= Some(&np) && (i[0] == 1 || ip[0] == 1))
            }
        }
    }

    fn key(&self, arg: &Arg) -> String {
        match self {
            BasisCase::FlagIntervals(_) => interval_key(&arg.0),
            BasisCase::PressedDoubleIntervals(..) => format!("{}|{}", interval_key(&arg.0), interval_key(&arg.1)),
        }
    }

    fn parse_key(&self, key: &str) -> Result<Arg> {
        match self {
            BasisCase::FlagIntervals(_) => {
                let i = parse_interval(key)?;
                let ip = prefix(i.len());
                Ok((i, ip))
            }
            BasisCase::PressedDoubleIntervals(..) => {
                let (a, b) = key.split_once('|').ok_or_else(|| Error::Parse(format!("bad key `{key}`")))?;
                Ok((parse_interval(a)?, parse_interval(b)?))
            }
        }
    }
}

/// Values on the basis elements. A missing `∅` entry stands for the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisAssignment {
    pub case: BasisCase,
    pub spec: SemiringSpec,
    pub values: BTreeMap<Arg, Value>,
}

fn require_division(spec: &SemiringSpec) -> Result<()> {
    if spec.capabilities().has_division || matches!(spec.base(), SemiringSpec::PolynomialInt(_)) {
        Ok(())
    } else {
        Err(Error::DivisionUnsupported(spec.name()))
    }
}

impl BasisAssignment {
    pub fn new(case: BasisCase, spec: SemiringSpec, values: BTreeMap<Arg, Value>) -> Result<BasisAssignment> {
        require_division(&spec)?;
        let mut checked = BTreeMap::new();
        for (arg, v) in values {
            if !case.contains(&arg) {
                return Err(Error::BadParams(format!("`{}` is not a basis element", case.key(&arg))));
            }
            if v.is_star() {
                return Err(Error::NotInvertible(format!("∗ at `{}`", case.key(&arg))));
            }
            checked.insert(arg, spec.coerce(&v)?);
        }
        for arg in case.elements().into_iter().skip(1) {
            if !checked.contains_key(&arg) {
                return Err(Error::BadParams(format!("no value for `{}`", case.key(&arg))));
            }
        }
        Ok(BasisAssignment {
            case,
            spec,
            values: checked,
        })
    }

    /// Restricts a function to the basis.
    pub fn from_function<F>(case: BasisCase, spec: SemiringSpec, mut f: F) -> Result<BasisAssignment>
    where
        F: FnMut(&[usize], &[usize]) -> Result<Value>,
    {
        let mut values = BTreeMap::new();
        for (i, ip) in case.elements() {
            let v = f(&i, &ip)?;
            values.insert((i, ip), v);
        }
        BasisAssignment::new(case, spec, values)
    }

    pub fn get(&self, arg: &Arg) -> Result<Value> {
        if arg.0.is_empty() && arg.1.is_empty() {
            if let Some(v) = self.values.get(arg) {
                return Ok(v.clone());
            }
            return self.spec.one().ok_or(Error::EmptyProductWithoutOne);
        }
        self.values
            .get(arg)
            .cloned()
            .ok_or_else(|| Error::BadParams(format!("`{}` is not a basis element", self.case.key(arg))))
    }

    pub fn to_json(&self) -> Json {
        let (case, dims) = match self.case {
            BasisCase::FlagIntervals(n) => ("flag-intervals", json!([n])),
            BasisCase::PressedDoubleIntervals(n, np) => ("pressed-double-intervals", json!([n, np])),
        };
        let mut values = Map::new();
        for (arg, v) in &self.values {
            values.insert(self.case.key(arg), value_to_json(&self.spec, v));
        }
        json!({"case": case, "dims": dims, "semiring": self.spec.name(), "values": Json::Object(values)})
    }

    pub fn from_json(j: &Json) -> Result<BasisAssignment> {
        let dims: Vec<usize> = j
            .get("dims")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Parse("missing `dims`".into()))?
            .iter()
            .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| Error::Parse("bad dimension".into())))
            .collect::<Result<_>>()?;
        let case = match (j.get("case").and_then(Json::as_str), dims.as_slice()) {
            (Some("flag-intervals"), [n]) => BasisCase::FlagIntervals(*n),
            (Some("pressed-double-intervals"), [n, np]) => BasisCase::PressedDoubleIntervals(*n, *np),
            _ => return Err(Error::Parse("bad `case`/`dims`".into())),
        };
        let spec: SemiringSpec = j
            .get("semiring")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::Parse("missing `semiring`".into()))?
            .parse()?;
        let mut values = BTreeMap::new();
        for (k, v) in j
            .get("values")
            .and_then(Json::as_object)
            .ok_or_else(|| Error::Parse("missing `values`".into()))?
        {
            values.insert(case.parse_key(k)?, value_from_json(&spec, v)?);
        }
        BasisAssignment::new(case, spec, values)
    }
}

fn div(spec: &SemiringSpec, a: &Value, b: &Value) -> Result<Value> {
    spec.divide(a, b)
}

/// Vertex weights on the half-grid whose flag FG-function takes the given interval values.
pub fn weights_from_intervals(a: &BasisAssignment) -> Result<PlanarNetwork> {
    let BasisCase::FlagIntervals(n) = a.case else {
        return Err(Error::BadParams("expected an interval basis".into()));
    };
    let spec = &a.spec;
    // f(I_{i,j}) with I_{i,j} = [i-j+1..i] and f(I_{i,0}) = 1.
    let f = |i: usize, j: usize| -> Result<Value> {
        if j == 0 {
            return spec.one().ok_or(Error::EmptyProductWithoutOne);
        }
        a.get(&(interval(i + 1 - j, i), prefix(j)))
    };
    let mut g = PlanarNetwork::build_standard(StandardKind::HalfGrid(n));
    for i in 1..=n {
        for j in 1..=i {
            let w = if i > j {
                let num = spec.mul(&f(i, j)?, &f(i - 1, j - 1)?)?;
                let den = spec.mul(&f(i - 1, j)?, &f(i, j - 1)?)?;
                div(spec, &num, &den)?
            } else {
                div(spec, &f(i, j)?, &f(i, j - 1)?)?
            };
            let v = g.vertex_index(&format!("({i},{j})")).expect("half-grid vertex");
            g.set_vertex_weight(v, w);
        }
    }
    Ok(g)
}

/// Vertex weights on the `n × n'` grid with the given values on pressed double intervals.
pub fn weights_from_pressed(a: &BasisAssignment) -> Result<PlanarNetwork> {
    let BasisCase::PressedDoubleIntervals(n, np) = a.case else {
        return Err(Error::BadParams("expected a pressed double interval basis".into()));
    };
    let spec = &a.spec;
    let f = |k: usize, kp: usize| -> Result<Value> {
        if k == 0 || kp == 0 {
            return spec.one().ok_or(Error::EmptyProductWithoutOne);
        }
        a.get(&pressed_interval(k, kp))
    };
    let mut g = PlanarNetwork::build_standard(StandardKind::Grid(n, np));
    for k in 1..=n {
        for kp in 1..=np {
            let num = spec.mul(&f(k, kp)?, &f(k - 1, kp - 1)?)?;
            let den = spec.mul(&f(k - 1, kp)?, &f(k, kp - 1)?)?;
            let v = g.vertex_index(&format!("({k},{kp})")).expect("grid vertex");
            g.set_vertex_weight(v, div(spec, &num, &den)?);
        }
    }
    Ok(g)
}

/// Which missing element the recursions pivot on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Choice {
    #[default]
    Smallest,
    Largest,
}

/// Memoized evaluation of an FG-function from its basis values.
pub struct Reconstructor<'a> {
    assignment: &'a BasisAssignment,
    choice: Choice,
    memo: HashMap<Arg, Value>,
}

fn with(base: &[usize], extra: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = base.iter().chain(extra).copied().collect();
    v.sort_unstable();
    v
}

impl<'a> Reconstructor<'a> {
    pub fn new(assignment: &'a BasisAssignment) -> Reconstructor<'a> {
        Reconstructor {
            assignment,
            choice: Choice::Smallest,
            memo: HashMap::new(),
        }
    }

    pub fn with_choice(mut self, choice: Choice) -> Self {
        self.choice = choice;
        self
    }

    fn pick(&self, s: &[usize]) -> usize {
        let (lo, hi) = (s[0], s[s.len() - 1]);
        let mut gaps = (lo..=hi).filter(|x| !s.contains(x));
        match self.choice {
            Choice::Smallest => gaps.next(),
            Choice::Largest => gaps.next_back(),
        }
        .expect("not an interval")
    }

    pub fn value(&mut self, s: &[usize], sp: &[usize]) -> Result<Value> {
        let mut s = s.to_vec();
        s.sort_unstable();
        let sp = match self.assignment.case {
            BasisCase::FlagIntervals(n) => {
                if s.last().is_some_and(|&x| x > n) || s.first() == Some(&0) {
                    return Err(Error::OutOfRange(format!("{s:?} outside [{n}]")));
                }
                if !sp.is_empty() && sp != prefix(s.len()) {
                    return Err(Error::BadParams("flag arguments have I' = [|I|]".into()));
                }
                prefix(s.len())
            }
            BasisCase::PressedDoubleIntervals(n, np) => {
                let mut sp = sp.to_vec();
                sp.sort_unstable();
                if s.len() != sp.len() {
                    return Err(Error::SizeMismatch(format!("|I| = {} but |I'| = {}", s.len(), sp.len())));
                }
                if s.last().is_some_and(|&x| x > n) || sp.last().is_some_and(|&x| x > np) {
                    return Err(Error::OutOfRange("argument outside the ground sets".into()));
                }
                sp
            }
        };
        self.eval((s, sp))
    }

    fn eval(&mut self, arg: Arg) -> Result<Value> {
        if let Some(v) = self.memo.get(&arg) {
            return Ok(v.clone());
        }
        let v = self.compute(&arg)?;
        self.memo.insert(arg, v.clone());
        Ok(v)
    }

    fn flag(&mut self, s: Vec<usize>) -> Result<Value> {
        let ip = prefix(s.len());
        self.eval((s, ip))
    }

    fn relation(&mut self, num: [(Arg, Arg); 2], den: Arg) -> Result<Value> {
        let spec = self.assignment.spec.clone();
        let mut sum = None;
        for (a, b) in num {
            let term = spec.mul(&self.eval(a)?, &self.eval(b)?)?;
            spec.add_into(&mut sum, &term)?;
        }
        let d = self.eval(den)?;
        div(&spec, &sum.expect("two terms"), &d)
    }

    fn compute(&mut self, arg: &Arg) -> Result<Value> {
        let (s, sp) = arg;
        if self.assignment.case.contains(arg) {
            return self.assignment.get(arg);
        }
        match self.assignment.case {
            BasisCase::FlagIntervals(_) => {
                // f(Xik) f(Xj) = f(Xij) f(Xk) ⊕ f(Xi) f(Xjk)
                let (i, k) = (s[0], s[s.len() - 1]);
                let j = self.pick(s);
                let x = &s[1..s.len() - 1];
                let spec = self.assignment.spec.clone();
                let a = spec.mul(&self.flag(with(x, &[i, j]))?, &self.flag(with(x, &[k]))?)?;
                let b = spec.mul(&self.flag(with(x, &[i]))?, &self.flag(with(x, &[j, k]))?)?;
                let d = self.flag(with(x, &[j]))?;
                div(&spec, &spec.add(&a, &b)?, &d)
            }
            BasisCase::PressedDoubleIntervals(..) => {
                if !is_interval(s) {
                    // f(Xik|X'k') f(Xj|X') = f(Xij|X'k') f(Xk|X') ⊕ f(Xjk|X'k') f(Xi|X')
                    let (i, k) = (s[0], s[s.len() - 1]);
                    let j = self.pick(s);
                    let x = &s[1..s.len() - 1];
                    let kp = sp[sp.len() - 1];
                    let xp = &sp[..sp.len() - 1];
                    self.relation(
                        [
                            ((with(x, &[i, j]), with(xp, &[kp])), (with(x, &[k]), xp.to_vec())),
                            ((with(x, &[j, k]), with(xp, &[kp])), (with(x, &[i]), xp.to_vec())),
                        ],
                        (with(x, &[j]), xp.to_vec()),
                    )
                } else if !is_interval(sp) {
                    // f(Xk|X'i'k') f(X|X'j') = f(Xk|X'i'j') f(X|X'k') ⊕ f(Xk|X'j'k') f(X|X'i')
                    let (ip, kp) = (sp[0], sp[sp.len() - 1]);
                    let jp = self.pick(sp);
                    let xp = &sp[1..sp.len() - 1];
                    let k = s[s.len() - 1];
                    let x = &s[..s.len() - 1];
                    self.relation(
                        [
                            ((with(x, &[k]), with(xp, &[ip, jp])), (x.to_vec(), with(xp, &[kp]))),
                            ((with(x, &[k]), with(xp, &[jp, kp])), (x.to_vec(), with(xp, &[ip]))),
                        ],
                        (x.to_vec(), with(xp, &[jp])),
                    )
                } else {
                    // Unpressed double interval: f(Xi|X'i') f(Xk|X'k') = f(Xik|X'i'k') f(X|X') ⊕ f(Xk|X'i') f(Xi|X'k')
                    let (i, ip) = (s[0] - 1, sp[0] - 1);
                    let (k, kp) = (s[s.len() - 1], sp[sp.len() - 1]);
                    let x = &s[..s.len() - 1];
                    let xp = &sp[..sp.len() - 1];
                    self.relation(
                        [
                            ((with(x, &[i, k]), with(xp, &[ip, kp])), (x.to_vec(), xp.to_vec())),
                            ((with(x, &[k]), with(xp, &[ip])), (with(x, &[i]), with(xp, &[kp]))),
                        ],
                        (with(x, &[i]), with(xp, &[ip])),
                    )
                }
            }
        }
    }
}

/// The unique FG-value at `(S | S')` consistent with the basis values.
pub fn reconstruct_value(a: &BasisAssignment, s: &[usize], sp: &[usize]) -> Result<Value> {
    Reconstructor::new(a).value(s, sp)
}

/// `f(A)` as a sum of Laurent monomials in the interval values `f(I)`, `I` a nonempty interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentExpansion {
    pub target: Vec<usize>,
    /// Exponent maps keyed by `(p, q)` for `[p..q]`, with multiplicities.
    pub monomials: Vec<(BTreeMap<(usize, usize), i32>, u64)>,
}

impl LaurentExpansion {
    pub fn exponents(&self) -> impl Iterator<Item = i32> + '_ {
        self.monomials.iter().flat_map(|(m, _)| m.values().copied())
    }

    /// Evaluates the expansion at interval values given by an interval basis.
    pub fn evaluate(&self, a: &BasisAssignment) -> Result<Value> {
        let spec = &a.spec;
        let one = spec.one().ok_or(Error::EmptyProductWithoutOne)?;
        let mut sum = None;
        for (m, mult) in &self.monomials {
            let mut term = one.clone();
            for (&(p, q), &e) in m {
                let v = a.get(&(interval(p, q), prefix(q + 1 - p)))?;
                for _ in 0..e.unsigned_abs() {
                    term = if e > 0 { spec.mul(&term, &v)? } else { div(spec, &term, &v)? };
                }
            }
            for _ in 0..*mult {
                spec.add_into(&mut sum, &term)?;
            }
        }
        sum.ok_or(Error::EmptySumWithoutNeutral)
    }

    pub fn to_json(&self) -> Json {
        let monos: Vec<Json> = self
            .monomials
            .iter()
            .map(|(m, c)| {
                let mut e = Map::new();
                for (&(p, q), &x) in m {
                    e.insert(format!("{p}..{q}"), json!(x));
                }
                json!({"exponents": Json::Object(e), "multiplicity": c})
            })
            .collect();
        json!({"target": self.target, "monomials": monos})
    }
}

/// Expands `f(A)` for the flag case by substituting the interval formulas for the
/// half-grid weights into its flows.
pub fn laurent_expand(target: &[usize], n: usize) -> Result<LaurentExpansion> {
    let mut s = target.to_vec();
    s.sort_unstable();
    if s.first() == Some(&0) || s.last().is_some_and(|&x| x > n) {
        return Err(Error::OutOfRange(format!("{target:?} outside [{n}]")));
    }
    let g = PlanarNetwork::build_standard(StandardKind::HalfGrid(n));
    // Laurent monomial of w(i,j) in the interval variables.
    let mut weight: Vec<BTreeMap<(usize, usize), i32>> = vec![BTreeMap::new(); g.num_vertices()];
    let iv = |i: usize, j: usize| (i + 1 - j, i);
    for i in 1..=n {
        for j in 1..=i {
            let m = &mut weight[g.vertex_index(&format!("({i},{j})")).expect("half-grid vertex")];
            let mut bump = |key: (usize, usize), e: i32| {
                *m.entry(key).or_insert(0) += e;
            };
            bump(iv(i, j), 1);
            if j > 1 {
                bump(iv(i, j - 1), -1);
            }
            if i > j {
                if j > 1 {
                    bump(iv(i - 1, j - 1), 1);
                }
                bump(iv(i - 1, j), -1);
            }
            m.retain(|_, e| *e != 0);
        }
    }
    let mut acc: BTreeMap<BTreeMap<(usize, usize), i32>, u64> = BTreeMap::new();
    let sp = prefix(s.len());
    for_each_flow(&g, &s, &sp, g.num_vertices(), |flow| {
        let mut m: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        for v in flow.vertices() {
            for (&k, &e) in &weight[v] {
                *m.entry(k).or_insert(0) += e;
            }
        }
        m.retain(|_, e| *e != 0);
        *acc.entry(m).or_insert(0) += 1;
    })?;
    Ok(LaurentExpansion {
        target: s,
        monomials: acc.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::fg_value;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn subsets(n: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).map(|m| (1..=n).filter(|b| m >> (b - 1) & 1 == 1).collect()).collect()
    }

    fn random_value(spec: &SemiringSpec, rng: &mut ChaCha8Rng) -> Value {
        match spec {
            SemiringSpec::TropicalInt => Value::int(rng.gen_range(-20..=20)),
            _ => Value::Rat(BigRational::new(rng.gen_range(1i64..=9).into(), rng.gen_range(1i64..=5).into())),
        }
    }

    fn random_weighting(base: &PlanarNetwork, spec: &SemiringSpec, rng: &mut ChaCha8Rng) -> PlanarNetwork {
        let mut g = base.clone();
        for v in 0..g.num_vertices() {
            g.set_vertex_weight(v, random_value(spec, rng));
        }
        g
    }

    fn flag_basis_of(g: &PlanarNetwork, spec: &SemiringSpec, n: usize) -> BasisAssignment {
        BasisAssignment::from_function(BasisCase::FlagIntervals(n), spec.clone(), |i, ip| fg_value(spec, g, i, ip)).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(flag_intervals(4).len(), 10);
        for (n, np) in [(1, 1), (2, 3), (4, 3), (3, 5)] {
            let b = pressed_basis(n, np);
            assert_eq!(b.len() - 1, n * np);
            let mut sorted = b.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), b.len());
            assert!(b.iter().all(|d| BasisCase::PressedDoubleIntervals(n, np).contains(d)));
        }
        assert_eq!(pressed_interval(3, 5), (vec![1, 2, 3], vec![3, 4, 5]));
    }

    #[test]
    fn tropical_zero_values_give_zero_weights() {
        let a = BasisAssignment::from_function(BasisCase::FlagIntervals(4), SemiringSpec::TropicalInt, |_, _| Ok(Value::int(0))).unwrap();
        let g = weights_from_intervals(&a).unwrap();
        assert!(g.weights.iter().all(|w| w == &Some(Value::int(0))));
    }

    #[test]
    fn two_by_two_weights() {
        let spec = SemiringSpec::PositiveRationals;
        let vals = [((vec![1], vec![1]), Value::rat(3, 1)), ((vec![2], vec![1]), Value::rat(5, 1)), ((vec![1, 2], vec![1, 2]), Value::rat(7, 1))];
        let a = BasisAssignment::new(BasisCase::FlagIntervals(2), spec.clone(), vals.into_iter().collect()).unwrap();
        let g = weights_from_intervals(&a).unwrap();
        let w = |id: &str| g.weights[g.vertex_index(id).unwrap()].clone().unwrap();
        assert_eq!(w("(1,1)"), Value::rat(3, 1));
        assert_eq!(w("(2,1)"), Value::rat(5, 3));
        assert_eq!(w("(2,2)"), Value::rat(7, 5));
    }

    #[test]
    fn weight_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        for spec in [SemiringSpec::PositiveRationals, SemiringSpec::TropicalInt] {
            for n in 1..=6 {
                let base = PlanarNetwork::build_standard(StandardKind::HalfGrid(n));
                let g = random_weighting(&base, &spec, &mut rng);
                let back = weights_from_intervals(&flag_basis_of(&g, &spec, n)).unwrap();
                for v in 0..g.num_vertices() {
                    assert!(spec.equal(g.weights[v].as_ref().unwrap(), back.weights[v].as_ref().unwrap()));
                }
            }
        }
    }

    #[test]
    fn flag_reconstruction_matches_flows() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for spec in [SemiringSpec::PositiveRationals, SemiringSpec::TropicalInt, SemiringSpec::TropicalRat] {
            for n in 1..=5 {
                let base = PlanarNetwork::build_standard(StandardKind::HalfGrid(n));
                let g = random_weighting(&base, &spec, &mut rng);
                let a = flag_basis_of(&g, &spec, n);
                let mut small = Reconstructor::new(&a);
                let mut large = Reconstructor::new(&a).with_choice(Choice::Largest);
                for s in subsets(n) {
                    let direct = fg_value(&spec, &g, &s, &prefix(s.len())).unwrap();
                    assert!(spec.equal(&small.value(&s, &[]).unwrap(), &direct), "{spec:?} {s:?}");
                    assert!(spec.equal(&large.value(&s, &[]).unwrap(), &direct));
                }
            }
        }
        let spec = SemiringSpec::PositiveRationals;
        let g = random_weighting(&PlanarNetwork::build_standard(StandardKind::HalfGrid(3)), &spec, &mut rng);
        let a = flag_basis_of(&g, &spec, 3);
        let f = |s: &[usize]| a.get(&(s.to_vec(), prefix(s.len()))).unwrap();
        let expect = spec
            .divide(
                &spec.add(&spec.mul(&f(&[1, 2]), &f(&[3])).unwrap(), &spec.mul(&f(&[1]), &f(&[2, 3])).unwrap()).unwrap(),
                &f(&[2]),
            )
            .unwrap();
        assert_eq!(reconstruct_value(&a, &[1, 3], &[]).unwrap(), expect);
        assert_eq!(reconstruct_value(&a, &[2, 3], &[]).unwrap(), f(&[2, 3]));
    }

    #[test]
    fn free_flag_assignments_are_realized() {
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        for spec in [SemiringSpec::PositiveRationals, SemiringSpec::TropicalInt] {
            for n in 1..=5 {
                let a = BasisAssignment::from_function(BasisCase::FlagIntervals(n), spec.clone(), |i, _| {
                    if i.is_empty() {
                        Ok(spec.one().unwrap())
                    } else {
                        Ok(random_value(&spec, &mut rng))
                    }
                })
                .unwrap();
                let g = weights_from_intervals(&a).unwrap();
                for s in subsets(n) {
                    let direct = fg_value(&spec, &g, &s, &prefix(s.len())).unwrap();
                    assert!(spec.equal(&reconstruct_value(&a, &s, &[]).unwrap(), &direct));
                }
            }
        }
    }

    fn all_pairs(n: usize, np: usize) -> Vec<Arg> {
        let mut out = Vec::new();
        for s in subsets(n) {
            for sp in subsets(np) {
                if s.len() == sp.len() {
                    out.push((s.clone(), sp));
                }
            }
        }
        out
    }

    #[test]
    fn pressed_reconstruction_matches_flows() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for spec in [SemiringSpec::PositiveRationals, SemiringSpec::TropicalInt] {
            for (n, np) in [(1, 1), (2, 2), (3, 2), (2, 4), (4, 3), (3, 4), (4, 4)] {
                let base = PlanarNetwork::build_standard(StandardKind::Grid(n, np));
                let g = random_weighting(&base, &spec, &mut rng);
                let case = BasisCase::PressedDoubleIntervals(n, np);
                let a = BasisAssignment::from_function(case, spec.clone(), |i, ip| fg_value(&spec, &g, i, ip)).unwrap();
                let back = weights_from_pressed(&a).unwrap();
                assert_eq!(back.weights, g.weights.iter().map(|w| w.clone().map(|w| spec.coerce(&w).unwrap())).collect::<Vec<_>>());
                let mut small = Reconstructor::new(&a);
                let mut large = Reconstructor::new(&a).with_choice(Choice::Largest);
                for (s, sp) in all_pairs(n, np) {
                    let direct = fg_value(&spec, &g, &s, &sp).unwrap();
                    assert!(spec.equal(&small.value(&s, &sp).unwrap(), &direct), "{s:?}|{sp:?}");
                    assert!(spec.equal(&large.value(&s, &sp).unwrap(), &direct));
                }
            }
        }
    }

    #[test]
    fn free_pressed_assignments_are_realized() {
        let mut rng = ChaCha8Rng::seed_from_u64(74);
        let spec = SemiringSpec::TropicalInt;
        for (n, np) in [(2, 3), (3, 3), (4, 2)] {
            let case = BasisCase::PressedDoubleIntervals(n, np);
            let a = BasisAssignment::from_function(case, spec.clone(), |i, _| {
                Ok(if i.is_empty() { Value::int(0) } else { random_value(&spec, &mut rng) })
            })
            .unwrap();
            let g = weights_from_pressed(&a).unwrap();
            for (s, sp) in all_pairs(n, np) {
                assert!(spec.equal(&reconstruct_value(&a, &s, &sp).unwrap(), &fg_value(&spec, &g, &s, &sp).unwrap()));
            }
        }
    }

    #[test]
    fn laurent_expansions() {
        let e = laurent_expand(&[1, 3], 3).unwrap();
        assert_eq!(e.monomials.len(), 2);
        for (m, c) in &e.monomials {
            assert_eq!(*c, 1);
            assert_eq!(m.get(&(2, 2)), Some(&-1));
        }
        let e = laurent_expand(&[2, 3, 4], 5).unwrap();
        assert_eq!(e.monomials, vec![([((2, 4), 1)].into_iter().collect(), 1)]);
        for n in 1..=5 {
            for s in subsets(n) {
                let e = laurent_expand(&s, n).unwrap();
                assert!(e.exponents().all(|x| (-1..=2).contains(&x)), "{s:?}: {:?}", e.monomials);
            }
        }
    }

    #[test]
    fn tropical_expansion_evaluates_to_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(75);
        let spec = SemiringSpec::TropicalInt;
        for n in 2..=5 {
            let a = BasisAssignment::from_function(BasisCase::FlagIntervals(n), spec.clone(), |_, _| Ok(random_value(&spec, &mut rng))).unwrap();
            let mut r = Reconstructor::new(&a);
            for s in subsets(n).into_iter().filter(|s| !s.is_empty()) {
                let e = laurent_expand(&s, n).unwrap();
                assert_eq!(e.evaluate(&a).unwrap(), r.value(&s, &[]).unwrap());
            }
        }
        let spec = SemiringSpec::PositiveRationals;
        let a = BasisAssignment::from_function(BasisCase::FlagIntervals(4), spec.clone(), |_, _| Ok(random_value(&spec, &mut rng))).unwrap();
        for s in subsets(4).into_iter().filter(|s| !s.is_empty()) {
            assert_eq!(laurent_expand(&s, 4).unwrap().evaluate(&a).unwrap(), reconstruct_value(&a, &s, &[]).unwrap());
        }
    }

    #[test]
    fn refusals() {
        let star = SemiringSpec::star(SemiringSpec::TropicalInt);
        let r = BasisAssignment::from_function(BasisCase::FlagIntervals(2), star, |i, _| {
            Ok(if i == [2] { Value::Star } else { Value::int(1) })
        });
        assert!(matches!(r, Err(Error::NotInvertible(_))));
        let r = BasisAssignment::from_function(BasisCase::FlagIntervals(2), SemiringSpec::Integers, |_, _| Ok(Value::int(1)));
        assert!(matches!(r, Err(Error::DivisionUnsupported(_))));
        // A zero interval value in a denominator.
        let a = BasisAssignment::from_function(BasisCase::FlagIntervals(3), SemiringSpec::Rationals, |i, _| {
            Ok(if i == [2] { Value::int(0) } else { Value::int(1) })
        })
        .unwrap();
        assert!(matches!(reconstruct_value(&a, &[1, 3], &[]), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn json_round_trip() {
        let spec = SemiringSpec::PositiveRationals;
        let a = BasisAssignment::from_function(BasisCase::PressedDoubleIntervals(2, 3), spec, |i, ip| {
            Ok(Value::rat((i.len() + ip.iter().sum::<usize>() + 1) as i64, 2))
        })
        .unwrap();
        let j = a.to_json();
        assert!(j["values"].get("1..2|2..3").is_some());
        assert_eq!(BasisAssignment::from_json(&j).unwrap(), a);
        let f = BasisAssignment::from_function(BasisCase::FlagIntervals(3), SemiringSpec::TropicalInt, |i, _| Ok(Value::int(i.len() as i64))).unwrap();
        assert_eq!(BasisAssignment::from_json(&f.to_json()).unwrap(), f);
    }
}
