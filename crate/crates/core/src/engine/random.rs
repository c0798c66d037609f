//! Random elements for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::element::GradedElement;
use super::generator::Gen;
use crate::scalar::Scalar;

/// Sum of up to `terms` random monomials over `gens`, each a product of up to
/// `max_factors` generators, with small nonzero integer coefficients.
pub fn random_element<S: Scalar>(gens: &[Gen], terms: usize, max_factors: usize, rng: &mut impl Rng) -> GradedElement<S> {
    let mut out = GradedElement::zero();
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_factors);
        let mut m = GradedElement::scalar(S::int(*[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty")));
        for _ in 0..len {
            let g = *gens.choose(rng).expect("generator list is nonempty");
            m = &m * &GradedElement::gen(g);
        }
        out = &out + &m;
    }
    out
}

/// Random element homogeneous of `degree`, built from the same pieces.
pub fn random_homogeneous<S: Scalar>(gens: &[Gen], degree: u32, terms: usize, rng: &mut impl Rng) -> GradedElement<S> {
    let positive: Vec<Gen> = gens.iter().copied().filter(|g| g.degree() > 0 && g.degree() <= degree).collect();
    let weightless: Vec<Gen> = gens.iter().copied().filter(|g| g.degree() == 0).collect();
    let mut out = GradedElement::zero();
    for _ in 0..terms {
        let mut m = GradedElement::scalar(S::int(*[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty")));
        let mut left = degree;
        let mut guard = 0;
        while left > 0 && guard < 32 {
            guard += 1;
            let fit: Vec<Gen> = positive.iter().copied().filter(|g| g.degree() <= left).collect();
            let Some(&g) = fit.choose(rng) else { break };
            m = &m * &GradedElement::gen(g);
            left -= g.degree();
        }
        if left > 0 || m.is_zero() {
            continue;
        }
        if !weightless.is_empty() && rng.gen_bool(0.5) {
            m = &m * &GradedElement::gen(*weightless.choose(rng).expect("nonempty"));
        }
        out = &out + &m;
    }
    out
}
