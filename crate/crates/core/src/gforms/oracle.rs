//! Evaluation-based equality test: two elements are compared after
//! substituting an exact adjoint point for (A, Ā), AΘ for Θ̂ and random
//! rationals for the remaining even generators.
//!
//! The point is exact and rational. The decision reduces it modulo a
//! 61-bit prime and pairs each odd-degree component with random test
//! vectors, so large elements are never expanded in the Θ basis. The
//! rational residual is expanded only to report a witness.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use super::adjoint::{sample_adjoint_with, AdjointPoint};
use crate::engine::{Gen, GenKind, GradedElement};
use crate::error::Result;
use crate::lie::LieAlgebra;
use crate::modp::{self, P};
use crate::scalar::Scalar;

type E<S> = GradedElement<S>;

/// One evaluation point.
#[derive(Clone, Debug)]
pub struct SamplePoint<S> {
    pub adjoint: AdjointPoint<S>,
    /// Values of even generators other than A and Ā.
    pub values: BTreeMap<Gen, S>,
    /// Seed for the test vectors the odd generators are evaluated on.
    pub odd_seed: u64,
}

impl<S: Scalar> SamplePoint<S> {
    pub fn to_json(&self) -> Value {
        let values: serde_json::Map<String, Value> = self.values.iter().map(|(g, v)| (g.name(), Value::String(v.to_string()))).collect();
        json!({
            "A": self.adjoint.a.to_string_rows(),
            "Abar": self.adjoint.a_inv.to_string_rows(),
            "values": values,
            "odd_seed": self.odd_seed,
        })
    }

    /// Reduces `x` to a polynomial in the odd generators other than Θ̂.
    pub fn evaluate(&self, x: &E<S>) -> E<S> {
        let n = self.adjoint.a.rows;
        let reduced = x.assign(&self.even_assignment());
        if !reduced.contains_kind(GenKind::ThetaHat) {
            return reduced;
        }
        let a = &self.adjoint.a;
        reduced.substitute(|g| {
            (g.kind() == GenKind::ThetaHat).then(|| {
                let i = g.i();
                let mut img = E::zero();
                for j in 0..n {
                    img.add_scaled(&E::gen(Gen::mc(j)), &a[(i, j)]);
                }
                img
            })
        })
    }

    fn even_assignment(&self) -> HashMap<Gen, S> {
        let n = self.adjoint.a.rows;
        let mut asg: HashMap<Gen, S> = self.values.iter().map(|(g, v)| (*g, v.clone())).collect();
        for i in 0..n {
            for j in 0..n {
                asg.insert(Gen::ad(i, j), self.adjoint.a[(i, j)].clone());
                asg.insert(Gen::ad_inv(i, j), self.adjoint.a_inv[(i, j)].clone());
            }
        }
        asg
    }

    /// Residues of the odd generator `g` on the first `r` test vectors.
    /// The vectors are random in the Θ, θ, dθ, dt directions and Θ̂ = AΘ
    /// is imposed, so this is a point of the quotient by that relation.
    fn odd_values(&self, g: Gen, r: usize, a: &[u64]) -> Vec<u64> {
        let n = self.adjoint.a.cols;
        if g.kind() == GenKind::ThetaHat {
            let mut out = vec![0; r];
            for k in 0..n {
                let c = a[g.i() * n + k];
                if c == 0 {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(self.odd_values(Gen::mc(k), r, a)) {
                    *o = modp::add(*o, modp::mul(c, v, P), P);
                }
            }
            return out;
        }
        let key = ((g.kind() as u64) << 32) ^ ((g.i() as u64) << 16) ^ g.j() as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(self.odd_seed ^ key.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        (0..r).map(|_| rng.gen_range(0..P)).collect()
    }

    /// Fingerprint of `x` modulo P: every even generator takes the residue
    /// of its value here and each r-form is evaluated on the first r test
    /// vectors. A nonzero entry proves x nonzero at this point. `None`
    /// when some value has no residue or is missing.
    #[cfg(test)]
    fn fingerprint(&self, x: &E<S>) -> Option<Vec<u64>> {
        let coeffs: Vec<u64> = x.terms().map(|(_, c)| c.residue(P)).collect::<Option<_>>()?;
        self.fingerprint_with(x, &coeffs)
    }

    /// As `fingerprint`, with the coefficient residues of `x` (in term
    /// order) supplied.
    fn fingerprint_with(&self, x: &E<S>, coeffs: &[u64]) -> Option<Vec<u64>> {
        let asg: FxHashMap<Gen, u64> =
            self.even_assignment().into_iter().map(|(g, v)| v.residue(P).map(|r| (g, r))).collect::<Option<_>>()?;
        let n = self.adjoint.a.cols;
        let a: Vec<u64> = (0..n * n).map(|k| asg.get(&Gen::ad(k / n, k % n)).copied()).collect::<Option<_>>()?;
        let mut words: FxHashMap<&[Gen], u64> = FxHashMap::default();
        for ((m, _), &c) in x.terms().zip(coeffs) {
            let mut v = c;
            for &(g, e) in m.even() {
                v = modp::mul(v, modp::pow(*asg.get(&g)?, u64::from(e), P), P);
            }
            let slot = words.entry(m.odd()).or_insert(0);
            *slot = modp::add(*slot, v, P);
        }
        let r_max = words.keys().map(|w| w.len()).max().unwrap_or(0);
        let mut cache: FxHashMap<Gen, Vec<u64>> = FxHashMap::default();
        let mut sums = vec![0; r_max + 1];
        for (word, c) in words {
            if c == 0 {
                continue;
            }
            let r = word.len();
            let rows: Vec<Vec<u64>> =
                word.iter().map(|g| cache.entry(*g).or_insert_with(|| self.odd_values(*g, r_max, &a))[..r].to_vec()).collect();
            sums[r] = modp::add(sums[r], modp::mul(c, modp::determinant(rows, P), P), P);
        }
        Some(sums)
    }
}

/// Outcome of an oracle comparison.
#[derive(Clone, Debug)]
pub struct OracleVerdict<S: Scalar> {
    pub equal: bool,
    pub samples: usize,
    pub seed: u64,
    pub witness: Option<Witness<S>>,
}

#[derive(Clone, Debug)]
pub struct Witness<S: Scalar> {
    pub sample: usize,
    pub point: SamplePoint<S>,
    /// The nonzero value of x − y at the point.
    pub residual: E<S>,
}

impl<S: Scalar> Witness<S> {
    pub fn to_json(&self) -> Value {
        let mut residual: Vec<Value> = Vec::new();
        for (m, c) in self.residual.terms().take(8) {
            let word: Vec<String> = m.generators().map(|g| g.name()).collect();
            residual.push(json!({ "word": word.join(" "), "coeff": c.to_string() }));
        }
        json!({ "sample": self.sample, "point": self.point.to_json(), "residual": residual })
    }
}

impl<S: Scalar> OracleVerdict<S> {
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "equal": self.equal, "samples": self.samples, "seed": self.seed });
        if let Some(w) = &self.witness {
            v["witness"] = w.to_json();
        }
        v
    }
}

/// Seeded equality oracle for elements of the free model.
#[derive(Clone, Debug)]
pub struct EqualityOracle<S: Scalar> {
    algebra: LieAlgebra<S>,
    seed: u64,
    points: Vec<SamplePoint<S>>,
}

fn random_value<S: Scalar>(rng: &mut impl Rng) -> S {
    let num = rng.gen_range(-9..=9i64);
    let den = rng.gen_range(1..=7i64);
    S::ratio(num, den)
}

impl<S: Scalar> EqualityOracle<S> {
    /// Draws `samples` points from `seed`. The even generators that get
    /// random values are χ^i, μ^i, π⁻¹, α and t.
    pub fn new(algebra: &LieAlgebra<S>, samples: usize, seed: u64) -> Result<Self> {
        let n = algebra.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(samples);
        for _ in 0..samples.max(1) {
            let adjoint = sample_adjoint_with(algebra, &mut rng)?;
            let mut values = BTreeMap::new();
            for i in 0..n {
                values.insert(Gen::chi(i), random_value(&mut rng));
                values.insert(Gen::curv(i), random_value(&mut rng));
            }
            for g in [Gen::pi_inv(), Gen::alpha(), Gen::t()] {
                values.insert(g, random_value(&mut rng));
            }
            let odd_seed = rng.gen();
            points.push(SamplePoint { adjoint, values, odd_seed });
        }
        Ok(EqualityOracle { algebra: algebra.clone(), seed, points })
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn points(&self) -> &[SamplePoint<S>] {
        &self.points
    }

    /// x = 0 at every sample point.
    pub fn is_zero(&self, x: &E<S>) -> OracleVerdict<S> {
        if x.is_zero() {
            return OracleVerdict { equal: true, samples: self.points.len(), seed: self.seed, witness: None };
        }
        // The fingerprint decides; the exact residual is only expanded for
        // the witness.
        let coeffs: Option<Vec<u64>> = x.terms().map(|(_, c)| c.residue(P)).collect();
        let nonzero: Vec<bool> = self
            .points
            .par_iter()
            .map(|p| match coeffs.as_deref().and_then(|c| p.fingerprint_with(x, c)) {
                Some(v) => v.iter().any(|&c| c != 0),
                None => !p.evaluate(x).is_zero(),
            })
            .collect();
        let witness = nonzero.iter().position(|&nz| nz).map(|sample| Witness {
            sample,
            point: self.points[sample].clone(),
            residual: self.points[sample].evaluate(x),
        });
        OracleVerdict { equal: witness.is_none(), samples: self.points.len(), seed: self.seed, witness }
    }

    pub fn equal(&self, x: &E<S>, y: &E<S>) -> OracleVerdict<S> {
        self.is_zero(&(x - y))
    }
}

/// Convenience wrapper: compares x and y at `samples` points drawn from `seed`.
pub fn equality_oracle<S: Scalar>(algebra: &LieAlgebra<S>, x: &E<S>, y: &E<S>, samples: usize, seed: u64) -> Result<OracleVerdict<S>> {
    Ok(EqualityOracle::new(algebra, samples, seed)?.equal(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gforms::complex::hat_theta;
    use crate::lie::{su2, su3, valued};
    use crate::scalar::Q;

    fn mc_cubic(a: &LieAlgebra<Q>, kind: GenKind) -> E<Q> {
        let v = valued::generator_vector::<Q>(kind, a.dim());
        valued::pairing(a, &valued::bracket(a, &v, &v), &v)
    }

    #[test]
    fn inverse_pair_is_identity() {
        let a = su2::<Q>().unwrap();
        let oracle = EqualityOracle::new(&a, 8, 1).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                let mut x = E::zero();
                for j in 0..3 {
                    x = &x + &(&E::gen(Gen::ad(i, j)) * &E::gen(Gen::ad_inv(j, k)));
                }
                if i == k {
                    x = &x - &E::one();
                }
                assert!(oracle.is_zero(&x).equal);
            }
        }
    }

    #[test]
    fn cubic_invariant_of_hat_equals_left() {
        for a in [su2::<Q>().unwrap(), su3::<Q>().unwrap()] {
            let v = equality_oracle(&a, &mc_cubic(&a, GenKind::Theta), &mc_cubic(&a, GenKind::ThetaHat), 8, 7).unwrap();
            assert!(v.equal);
        }
    }

    #[test]
    fn theta_differs_from_hat_with_witness() {
        let a = su2::<Q>().unwrap();
        let v = equality_oracle(&a, &E::gen(Gen::mc(0)), &E::gen(Gen::mc_hat(0)), 8, 3).unwrap();
        assert!(!v.equal);
        assert!(v.to_json_has_witness());
        let w = v.witness.unwrap();
        assert!(!w.point.adjoint.a.is_identity());
    }

    #[test]
    fn hat_expansion_matches_generator() {
        let a = su2::<Q>().unwrap();
        let oracle = EqualityOracle::new(&a, 8, 9).unwrap();
        for i in 0..3 {
            assert!(oracle.equal(&hat_theta(&a, i).unwrap(), &E::gen(Gen::mc_hat(i))).equal);
        }
    }

    #[test]
    fn reflexive_and_deterministic() {
        let a = su3::<Q>().unwrap();
        let x = mc_cubic(&a, GenKind::ThetaHat);
        let o1 = EqualityOracle::new(&a, 3, 42).unwrap();
        let o2 = EqualityOracle::new(&a, 3, 42).unwrap();
        assert!(o1.equal(&x, &x).equal);
        let y = E::gen(Gen::mc_hat(0));
        assert_eq!(o1.points()[0].evaluate(&y), o2.points()[0].evaluate(&y));
    }

    #[test]
    fn fingerprint_agrees_with_expanded_residual() {
        use crate::engine::random::random_element;
        let a = su3::<Q>().unwrap();
        let oracle = EqualityOracle::new(&a, 2, 11).unwrap();
        let gens: Vec<Gen> =
            (0..8).flat_map(|i| [Gen::mc(i), Gen::mc_hat(i), Gen::chi(i), Gen::ad(i, (i + 3) % 8), Gen::ad_inv(i, i)]).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // Θ̂^i − Σ A^i_j Θ^j vanishes only modulo the relation.
        let rel = &hat_theta(&a, 2).unwrap() - &E::gen(Gen::mc_hat(2));
        for k in 0..40 {
            let x = random_element::<Q>(&gens, 3, 3, &mut rng);
            let x = if k % 2 == 0 { &x * &rel } else { x };
            for p in oracle.points() {
                let fp = p.fingerprint(&x).unwrap().iter().any(|&c| c != 0);
                assert_eq!(fp, !p.evaluate(&x).is_zero(), "{}", x.to_pretty());
            }
        }
    }

    impl<S: Scalar> OracleVerdict<S> {
        fn to_json_has_witness(&self) -> bool {
            self.to_json().get("witness").is_some()
        }
    }
}
