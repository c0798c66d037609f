use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::generator::{Gen, GenKind};
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exact linear combination of normal-form monomials in a free
/// graded-commutative algebra. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct GradedElement<S> {
    terms: BTreeMap<Monomial, S>,
}

/// How [`GradedElement::evaluate`] treats odd generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddPolicy {
    Reject,
    CoefficientExtraction,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation<S> {
    Scalar(S),
    /// Coefficients keyed by canonical odd word.
    Table(BTreeMap<Vec<Gen>, S>),
}

impl<S: Scalar> Default for GradedElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> GradedElement<S> {
    pub fn zero() -> Self {
        GradedElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(c: S) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(Monomial::of_gen(g), S::one())
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GradedElement { terms }
    }

    /// Builds the normal form of a list of (coefficient, word) pairs.
    pub fn from_words(raw: impl IntoIterator<Item = (S, Vec<Gen>)>) -> Self {
        let mut acc = Accumulator::default();
        for (c, word) in raw {
            if let Some((m, neg)) = Monomial::from_word(&word) {
                acc.add(m, if neg { -c } else { c });
            }
        }
        acc.finish()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the normal form of `word` (sign included).
    pub fn coefficient_of_word(&self, word: &[Gen]) -> S {
        match Monomial::from_word(word) {
            Some((m, neg)) => {
                let c = self.coefficient(&m);
                if neg {
                    -c
                } else {
                    c
                }
            }
            None => S::zero(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GradedElement { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            add_into(&mut self.terms, m.clone(), v.clone() * c.clone());
        }
    }

    /// The set of generators that occur.
    pub fn generators(&self) -> BTreeSet<Gen> {
        self.terms.keys().flat_map(|m| m.generators()).collect()
    }

    pub fn contains_kind(&self, kind: GenKind) -> bool {
        self.terms.keys().any(|m| m.generators().any(|g| g.kind() == kind))
    }

    /// The distinct total degrees present.
    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// Homogeneous components keyed by total degree.
    pub fn degree_decomposition(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, BTreeMap<Monomial, S>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().insert(m.clone(), c.clone());
        }
        out.into_iter().map(|(d, t)| (d, GradedElement { terms: t })).collect()
    }

    /// The single degree of a homogeneous element; `None` for zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degrees();
        (d.len() == 1).then(|| *d.iter().next().unwrap())
    }

    /// Parity shared by all terms; `None` for zero or mixed parity.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(Monomial::is_odd);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        GradedElement { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Terms free of every generator of the given kind.
    pub fn without_kind(&self, kind: GenKind) -> Self {
        self.filter(|m| !m.generators().any(|g| g.kind() == kind))
    }

    /// Ring homomorphism fixing unlisted generators. Images of odd
    /// generators must be odd and images of even generators even.
    pub fn substitute(&self, image: impl Fn(Gen) -> Option<Self>) -> Self {
        let mut cache: HashMap<Gen, Option<Self>> = HashMap::new();
        let mut lookup = |g: Gen| -> Option<Self> { cache.entry(g).or_insert_with(|| image(g)).clone() };
        let mut acc = Accumulator::default();
        for (m, c) in &self.terms {
            // Untouched generators are collected into a monomial directly.
            let mut fixed = Monomial::one();
            let mut prod = Self::scalar(c.clone());
            for &(g, p) in m.even() {
                match lookup(g) {
                    Some(img) => {
                        for _ in 0..p {
                            prod = &prod * &img;
                        }
                    }
                    None => fixed.even.push((g, p)),
                }
                if prod.is_zero() {
                    break;
                }
            }
            if prod.is_zero() {
                continue;
            }
            prod = &prod * &Self::term(fixed, S::one());
            for &g in m.odd() {
                let img = lookup(g).unwrap_or_else(|| Self::gen(g));
                prod = &prod * &img;
                if prod.is_zero() {
                    break;
                }
            }
            for (pm, pc) in prod.terms {
                acc.add(pm, pc);
            }
        }
        acc.finish()
    }

    /// Renames generators (a homomorphism that maps generators to
    /// generators of the same parity).
    pub fn rename(&self, f: impl Fn(Gen) -> Gen) -> Self {
        self.substitute(|g| {
            let h = f(g);
            (h != g).then(|| Self::gen(h))
        })
    }

    /// Definite integral over an even degree-0 parameter, applied
    /// coefficient-wise: the parameter is eliminated.
    pub fn integrate_parameter(&self, var: Gen, lower: &S, upper: &S) -> Result<Self> {
        if !matches!(var.kind(), GenKind::Alpha | GenKind::T) {
            return Err(Error::Shape(format!("cannot integrate over {}", var.name())));
        }
        let mut acc = Accumulator::default();
        let mut factors: Vec<S> = Vec::new();
        for (m, c) in &self.terms {
            let (rest, p) = m.take_even(var);
            let p = p as usize;
            while factors.len() <= p {
                let e = factors.len() as u32;
                factors.push((pow(upper, e + 1) - pow(lower, e + 1)) / S::int(i64::from(e) + 1));
            }
            acc.add(rest, c.clone() * factors[p].clone());
        }
        Ok(acc.finish())
    }

    /// Substitutes rational values for even generators.
    pub fn evaluate(&self, assignment: &HashMap<Gen, S>, policy: OddPolicy) -> Result<Evaluation<S>> {
        let mut table: BTreeMap<Vec<Gen>, S> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(g, p) in m.even() {
                let x = assignment.get(&g).ok_or_else(|| Error::Unassigned(g.name()))?;
                v = v * pow(x, p);
            }
            if policy == OddPolicy::Reject {
                if let Some(g) = m.odd().first() {
                    return Err(Error::OddGenerator(g.name()));
                }
            }
            let key = m.odd().to_vec();
            let slot = table.entry(key).or_insert_with(S::zero);
            *slot = slot.clone() + v;
        }
        table.retain(|_, v| !v.is_zero());
        match policy {
            OddPolicy::Reject => Ok(Evaluation::Scalar(table.remove(&Vec::new()).unwrap_or_else(S::zero))),
            OddPolicy::CoefficientExtraction => Ok(Evaluation::Table(table)),
        }
    }

    /// Partial substitution of even generators by scalars; odd generators
    /// and unassigned even generators are kept.
    pub fn assign(&self, assignment: &HashMap<Gen, S>) -> Self {
        let mut acc = Accumulator::default();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut rest = Monomial::one();
            rest.odd = m.odd.clone();
            for &(g, p) in m.even() {
                match assignment.get(&g) {
                    Some(x) => v = v * pow(x, p),
                    None => rest.even.push((g, p)),
                }
            }
            acc.add(rest, v);
        }
        acc.finish()
    }

    /// Writes every term containing the odd generator `g` as `X · g` and
    /// returns `(X, remainder)` where the remainder is free of `g`.
    pub fn split_right(&self, g: Gen) -> (Self, Self) {
        assert!(g.is_odd());
        let mut with = Accumulator::default();
        let mut without = Accumulator::default();
        for (m, c) in &self.terms {
            match m.odd().iter().position(|h| *h == g) {
                Some(k) => {
                    let mut rest = m.clone();
                    rest.odd.remove(k);
                    let moves = m.odd().len() - 1 - k;
                    with.add(rest, if moves % 2 == 1 { -c.clone() } else { c.clone() });
                }
                None => without.add(m.clone(), c.clone()),
            }
        }
        (with.finish(), without.finish())
    }

    /// Canonical multi-line text with Unicode generators.
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word: Vec<String> = m
                .even()
                .iter()
                .map(|(g, p)| if *p == 1 { g.pretty() } else { format!("({})^{}", g.pretty(), p) })
                .chain(m.odd().iter().map(|g| g.pretty()))
                .collect();
            if word.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&word.join("·"));
            } else {
                out.push_str(&format!("{}·{}", abs, word.join("·")));
            }
        }
        out
    }
}

pub(crate) fn pow<S: Scalar>(x: &S, p: u32) -> S {
    let mut out = S::one();
    for _ in 0..p {
        out = out * x.clone();
    }
    out
}

fn add_into<S: Scalar>(terms: &mut BTreeMap<Monomial, S>, m: Monomial, c: S) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let v = e.get().clone() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

/// Hash-based term accumulator; sorted once at the end.
pub(crate) struct Accumulator<S> {
    map: FxHashMap<Monomial, S>,
}

impl<S> Default for Accumulator<S> {
    fn default() -> Self {
        Accumulator { map: FxHashMap::default() }
    }
}

impl<S: Scalar> Accumulator<S> {
    pub(crate) fn add(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.map.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v = v.clone() + c;
            }
        }
    }

    pub(crate) fn add_element(&mut self, x: &GradedElement<S>, scale: &S) {
        for (m, c) in &x.terms {
            self.add(m.clone(), c.clone() * scale.clone());
        }
    }

    pub(crate) fn finish(self) -> GradedElement<S> {
        GradedElement { terms: self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<S: Scalar> Add for &GradedElement<S> {
    type Output = GradedElement<S>;
    fn add(self, rhs: &GradedElement<S>) -> GradedElement<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &S::one());
        out
    }
}

impl<S: Scalar> Sub for &GradedElement<S> {
    type Output = GradedElement<S>;
    fn sub(self, rhs: &GradedElement<S>) -> GradedElement<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-S::one());
        out
    }
}

impl<S: Scalar> Neg for &GradedElement<S> {
    type Output = GradedElement<S>;
    fn neg(self) -> GradedElement<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &GradedElement<S> {
    type Output = GradedElement<S>;
    fn mul(self, rhs: &GradedElement<S>) -> GradedElement<S> {
        if self.is_zero() || rhs.is_zero() {
            return GradedElement::zero();
        }
        let mut acc = Accumulator::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                if let Some((m, neg)) = a.mul(b) {
                    let c = ca.clone() * cb.clone();
                    acc.add(m, if neg { -c } else { c });
                }
            }
        }
        acc.finish()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<S: Scalar> $tr for GradedElement<S> {
            type Output = GradedElement<S>;
            fn $f(self, rhs: GradedElement<S>) -> GradedElement<S> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for GradedElement<S> {
    type Output = GradedElement<S>;
    fn neg(self) -> GradedElement<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Debug for GradedElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl<S: Scalar> fmt::Display for GradedElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

/// Σ_i coeffs[i] · xs[i].
pub fn linear_combination<S: Scalar>(items: impl IntoIterator<Item = (S, GradedElement<S>)>) -> GradedElement<S> {
    let mut acc = Accumulator::default();
    for (c, x) in items {
        acc.add_element(&x, &c);
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    type E = GradedElement<Q>;

    fn g(x: Gen) -> E {
        E::gen(x)
    }

    #[test]
    fn normalize_examples() {
        let x = E::from_words(vec![(q(1, 1), vec![Gen::mc(1), Gen::mc(0)])]);
        assert_eq!(x, -&(&g(Gen::mc(0)) * &g(Gen::mc(1))));
        assert!(E::from_words(vec![(q(1, 1), vec![Gen::mc(0), Gen::mc(0)])]).is_zero());
        let y = E::from_words(vec![(q(1, 1), vec![Gen::curv(0), Gen::conn(0)])]);
        assert_eq!(y, &g(Gen::conn(0)) * &g(Gen::curv(0)));
        assert_eq!(y.coefficient_of_word(&[Gen::conn(0), Gen::curv(0)]), q(1, 1));
    }

    #[test]
    fn multiply_examples() {
        let t1 = g(Gen::mc(0));
        let t2 = g(Gen::mc(1));
        let p = &(&t1 + &t2) * &(&t1 - &t2);
        assert_eq!(p, (&t1 * &t2).scale(&q(-2, 1)));

        let th1 = g(Gen::conn(0));
        let rhs = &g(Gen::curv(0)) - &(&g(Gen::conn(1)) * &g(Gen::conn(2)));
        let expect = &(&th1 * &g(Gen::curv(0))) - &(&(&th1 * &g(Gen::conn(1))) * &g(Gen::conn(2)));
        assert_eq!(&th1 * &rhs, expect);

        let chi = g(Gen::chi(0));
        assert!((&(&chi * &t1) - &(&t1 * &chi)).is_zero());
    }

    #[test]
    fn integrate_examples() {
        let a = g(Gen::alpha());
        let one = E::one();
        assert_eq!(one.integrate_parameter(Gen::alpha(), &q(0, 1), &q(1, 1)).unwrap(), one);
        let x = &(&a * &a) - &a;
        assert_eq!(x.integrate_parameter(Gen::alpha(), &q(0, 1), &q(1, 1)).unwrap(), E::scalar(q(-1, 6)));
        let t = g(Gen::t());
        let form = &(&(&t * &t) - &t) * &(&g(Gen::mc(0)) * &g(Gen::mc(1)));
        let r = form.integrate_parameter(Gen::t(), &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(r, (&g(Gen::mc(0)) * &g(Gen::mc(1))).scale(&q(-1, 6)));
        assert!(form.integrate_parameter(Gen::chi(0), &q(0, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let a = g(Gen::alpha());
        let x = &(&a * &a) - &a;
        let mut asg = HashMap::new();
        asg.insert(Gen::alpha(), q(1, 2));
        assert_eq!(x.evaluate(&asg, OddPolicy::Reject).unwrap(), Evaluation::Scalar(q(-1, 4)));

        let y = &g(Gen::ad(0, 0)) * &g(Gen::mc(0));
        let mut asg = HashMap::new();
        asg.insert(Gen::ad(0, 0), q(3, 5));
        let mut table = BTreeMap::new();
        table.insert(vec![Gen::mc(0)], q(3, 5));
        assert_eq!(y.evaluate(&asg, OddPolicy::CoefficientExtraction).unwrap(), Evaluation::Table(table));
        assert!(matches!(y.evaluate(&asg, OddPolicy::Reject), Err(Error::OddGenerator(_))));
        assert!(matches!(y.evaluate(&HashMap::new(), OddPolicy::CoefficientExtraction), Err(Error::Unassigned(_))));

        let z = &(&g(Gen::chi(0)) * &g(Gen::ad(0, 0))) - &g(Gen::chi(0));
        let mut asg = HashMap::new();
        asg.insert(Gen::ad(0, 0), q(1, 1));
        asg.insert(Gen::chi(0), q(7, 3));
        assert_eq!(z.evaluate(&asg, OddPolicy::Reject).unwrap(), Evaluation::Scalar(q(0, 1)));
    }

    #[test]
    fn split_right_moves_marker_last() {
        // Θ1·dt·... with dt sorted after Θ: Θ1 dt = X·dt with X = Θ1
        let x = &g(Gen::mc(0)) * &g(Gen::dt());
        let (with, rest) = x.split_right(Gen::dt());
        assert_eq!(with, g(Gen::mc(0)));
        assert!(rest.is_zero());
        // dθ·Θ1 ... dθ sorts before dt; in (dθ·dt·?) no reordering needed.
        let y = &g(Gen::dt()) * &g(Gen::mc(0)); // = -Θ1 dt
        assert_eq!(y.split_right(Gen::dt()).0, -&g(Gen::mc(0)));
    }

    #[test]
    fn substitution_is_multiplicative() {
        let x = &g(Gen::mc_hat(0)) * &g(Gen::mc_hat(1));
        let img = |h: Gen| match h.kind() {
            GenKind::ThetaHat => Some(&g(Gen::mc(h.i())) + &g(Gen::mc(2))),
            _ => None,
        };
        let lhs = x.substitute(img);
        let rhs = &(&g(Gen::mc(0)) + &g(Gen::mc(2))) * &(&g(Gen::mc(1)) + &g(Gen::mc(2)));
        assert_eq!(lhs, rhs);
    }
}
