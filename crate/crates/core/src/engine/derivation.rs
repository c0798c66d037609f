use std::collections::BTreeMap;

use rayon::prelude::*;

use super::element::{Accumulator, GradedElement};
use super::generator::Gen;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Above this many terms [`Derivation::apply`] splits the work across threads.
const PARALLEL_TERMS: usize = 512;

/// A graded derivation given by its values on generators.
#[derive(Clone)]
pub struct Derivation<S> {
    name: String,
    odd: bool,
    action: BTreeMap<Gen, GradedElement<S>>,
}

impl<S: Scalar> Derivation<S> {
    pub fn new(name: impl Into<String>, odd: bool) -> Self {
        Derivation { name: name.into(), odd, action: BTreeMap::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn set(&mut self, g: Gen, image: GradedElement<S>) {
        self.action.insert(g, image);
    }

    pub fn with(mut self, g: Gen, image: GradedElement<S>) -> Self {
        self.set(g, image);
        self
    }

    /// Declares the derivation to vanish on each listed generator.
    pub fn vanishing_on(mut self, gens: impl IntoIterator<Item = Gen>) -> Self {
        for g in gens {
            self.action.entry(g).or_insert_with(GradedElement::zero);
        }
        self
    }

    pub fn image(&self, g: Gen) -> Result<&GradedElement<S>> {
        self.action.get(&g).ok_or_else(|| Error::MissingAction { derivation: self.name.clone(), generator: g.name() })
    }

    pub fn domain(&self) -> impl Iterator<Item = Gen> + '_ {
        self.action.keys().copied()
    }

    pub fn actions(&self) -> impl Iterator<Item = (Gen, &GradedElement<S>)> {
        self.action.iter().map(|(g, x)| (*g, x))
    }

    /// Graded Leibniz extension to an arbitrary element.
    pub fn apply(&self, x: &GradedElement<S>) -> Result<GradedElement<S>> {
        if x.len() >= PARALLEL_TERMS {
            let terms: Vec<_> = x.terms().collect();
            let parts: Result<Vec<GradedElement<S>>> = terms
                .par_chunks(PARALLEL_TERMS / 4)
                .map(|chunk| {
                    let mut acc = Accumulator::default();
                    for (m, c) in chunk {
                        self.apply_term(m, c, &mut acc)?;
                    }
                    Ok(acc.finish())
                })
                .collect();
            let mut acc = Accumulator::default();
            for p in parts? {
                acc.add_element(&p, &S::one());
            }
            return Ok(acc.finish());
        }
        let mut acc = Accumulator::default();
        for (m, c) in x.terms() {
            self.apply_term(m, c, &mut acc)?;
        }
        Ok(acc.finish())
    }

    fn apply_term(&self, m: &super::Monomial, c: &S, acc: &mut Accumulator<S>) -> Result<()> {
        // Even generators commute with everything: D(e^p) = p e^{p-1} D(e).
        for &(g, p) in m.even() {
            let img = self.image(g)?;
            if img.is_zero() {
                continue;
            }
            let rest = m.lower_even(g);
            let factor = c.clone() * S::int(i64::from(p));
            for (n, cn) in img.terms() {
                if let Some((mm, neg)) = n.mul(&rest) {
                    let v = factor.clone() * cn.clone();
                    acc.add(mm, if neg { -v } else { v });
                }
            }
        }
        for (k, &g) in m.odd().iter().enumerate() {
            let img = self.image(g)?;
            if img.is_zero() {
                continue;
            }
            let (left, right) = m.split_odd_at(k);
            let flip = self.odd && k % 2 == 1;
            for (n, cn) in img.terms() {
                let Some((lm, neg1)) = left.mul(n) else { continue };
                let Some((mm, neg2)) = lm.mul(&right) else { continue };
                let v = c.clone() * cn.clone();
                acc.add(mm, if flip ^ neg1 ^ neg2 { -v } else { v });
            }
        }
        Ok(())
    }

    /// Applies the derivation `n` times.
    pub fn apply_n(&self, x: &GradedElement<S>, n: usize) -> Result<GradedElement<S>> {
        let mut y = x.clone();
        for _ in 0..n {
            if y.is_zero() {
                break;
            }
            y = self.apply(&y)?;
        }
        Ok(y)
    }

    /// Sum of derivations of equal parity; a generator missing from one
    /// summand counts as annihilated by it.
    pub fn sum(name: impl Into<String>, parts: &[(S, &Derivation<S>)]) -> Result<Self> {
        let odd = parts.first().map(|(_, d)| d.odd).unwrap_or(true);
        if let Some((_, bad)) = parts.iter().find(|(_, d)| d.odd != odd) {
            return Err(Error::ParityMismatch(parts[0].1.name.clone(), bad.name.clone()));
        }
        let mut out = Derivation::new(name, odd);
        for (c, d) in parts {
            for (g, img) in &d.action {
                out.action.entry(*g).or_insert_with(GradedElement::zero).add_scaled(img, c);
            }
        }
        Ok(out)
    }

    /// d_A + d_B on the tensor product of the two generator sets.
    pub fn tensor_sum(name: impl Into<String>, a: &Derivation<S>, b: &Derivation<S>) -> Result<Self> {
        Self::sum(name, &[(S::one(), a), (S::one(), b)])
    }

    /// Graded commutator [a, b] = ab − (−1)^{|a||b|} ba, computed on the
    /// generators in the common domain.
    pub fn commutator(name: impl Into<String>, a: &Derivation<S>, b: &Derivation<S>) -> Result<Self> {
        let sign = if a.odd && b.odd { S::one() } else { -S::one() };
        let mut out = Derivation::new(name, a.odd ^ b.odd);
        for g in a.action.keys().filter(|g| b.action.contains_key(g)) {
            let ab = a.apply(b.image(*g)?)?;
            let ba = b.apply(a.image(*g)?)?;
            let mut v = ab;
            v.add_scaled(&ba, &sign);
            out.action.insert(*g, v);
        }
        Ok(out)
    }

    /// Renames the derivation.
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl<S: Scalar> std::fmt::Debug for Derivation<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Derivation").field("name", &self.name).field("odd", &self.odd).field("action", &self.action).finish()
    }
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
    fn odd_leibniz_sign() {
        let d = Derivation::new("D", true).with(Gen::mc(0), g(Gen::curv(0))).with(Gen::mc(1), g(Gen::chi(1)));
        let x = &g(Gen::mc(0)) * &g(Gen::mc(1));
        let expect = &(&g(Gen::curv(0)) * &g(Gen::mc(1))) - &(&g(Gen::mc(0)) * &g(Gen::chi(1)));
        assert_eq!(d.apply(&x).unwrap(), expect);
    }

    #[test]
    fn alternating_signs_on_word() {
        let mut d = Derivation::new("i", true);
        for i in 0..3 {
            d.set(Gen::mc(i), g(Gen::chi(i)));
        }
        let x = &(&g(Gen::mc(0)) * &g(Gen::mc(1))) * &g(Gen::mc(2));
        let y = d.apply(&x).unwrap();
        assert_eq!(y.coefficient_of_word(&[Gen::chi(0), Gen::mc(1), Gen::mc(2)]), q(1, 1));
        assert_eq!(y.coefficient_of_word(&[Gen::chi(1), Gen::mc(0), Gen::mc(2)]), q(-1, 1));
        assert_eq!(y.coefficient_of_word(&[Gen::chi(2), Gen::mc(0), Gen::mc(1)]), q(1, 1));
        assert_eq!(y.len(), 3);
    }

    #[test]
    fn even_derivation_kills_scalars() {
        let d: Derivation<Q> = Derivation::new("L", false);
        assert!(d.apply(&E::scalar(q(5, 2))).unwrap().is_zero());
    }

    #[test]
    fn missing_action_is_reported() {
        let d: Derivation<Q> = Derivation::new("D", true).with(Gen::mc(0), E::zero());
        let err = d.apply(&g(Gen::mc(1))).unwrap_err();
        assert_eq!(err, Error::MissingAction { derivation: "D".into(), generator: "Theta_2".into() });
    }

    #[test]
    fn even_generator_powers() {
        let d = Derivation::new("D", true).with(Gen::chi(0), g(Gen::mc(0))).with(Gen::mc(1), E::zero());
        let x = &(&g(Gen::chi(0)) * &g(Gen::chi(0))) * &g(Gen::mc(1));
        let y = d.apply(&x).unwrap();
        let expect = (&(&g(Gen::chi(0)) * &g(Gen::mc(0))) * &g(Gen::mc(1))).scale(&q(2, 1));
        assert_eq!(y, expect);
    }

    #[test]
    fn commutator_of_odd_is_anticommutator() {
        let d = Derivation::new("d", true).with(Gen::mc(0), g(Gen::chi(0))).with(Gen::chi(0), E::zero());
        let i = Derivation::new("i", true).with(Gen::mc(0), E::one()).with(Gen::chi(0), E::zero());
        let l = Derivation::commutator("L", &d, &i).unwrap();
        assert!(!l.is_odd());
        assert!(l.image(Gen::mc(0)).unwrap().is_zero());
        assert!(l.image(Gen::chi(0)).unwrap().is_zero());
    }
}
