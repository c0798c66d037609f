use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use rand::Rng;

use super::algebra::LieAlgebra;
use crate::engine::{Accumulator, Gen, GradedElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A rational multiple of a power of the formal symbol π⁻¹.
#[derive(Clone, Debug, PartialEq)]
pub struct Scale<S> {
    pub coeff: S,
    pub pi_inv_power: u32,
}

impl<S: Scalar> Scale<S> {
    pub fn one() -> Self {
        Scale { coeff: S::one(), pi_inv_power: 0 }
    }

    pub fn new(coeff: S, pi_inv_power: u32) -> Self {
        Scale { coeff, pi_inv_power }
    }

    /// The scale −1/(8π²) matching the basic string class normalization.
    pub fn string_normalization() -> Self {
        Scale { coeff: S::ratio(-1, 8), pi_inv_power: 2 }
    }

    pub fn times(&self, other: &Scale<S>) -> Self {
        Scale { coeff: self.coeff.clone() * other.coeff.clone(), pi_inv_power: self.pi_inv_power + other.pi_inv_power }
    }

    pub fn to_element(&self) -> GradedElement<S> {
        let word = vec![Gen::pi_inv(); self.pi_inv_power as usize];
        GradedElement::from_words([(self.coeff.clone(), word)])
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.pi_inv_power == 0
    }
}

impl<S: Scalar> fmt::Display for Scale<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_inv_power {
            0 => write!(f, "{}", self.coeff),
            p => write!(f, "{}·π^-{}", self.coeff, p),
        }
    }
}

/// Dense symmetric k-tensor over an n-dimensional space, times a [`Scale`].
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricTensor<S> {
    n: usize,
    k: usize,
    data: Vec<S>,
    scale: Scale<S>,
}

fn flat(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

fn unflat(n: usize, k: usize, mut f: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = f % n;
        f /= n;
    }
    out
}

/// All nondecreasing index tuples of length `k` over `0..n`.
pub fn sorted_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; k];
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&p| cur[p] + 1 < n) else { break };
        let v = cur[pos] + 1;
        for slot in cur[pos..].iter_mut() {
            *slot = v;
        }
    }
    if k == 0 {
        out.truncate(1);
    }
    out
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl<S: Scalar> SymmetricTensor<S> {
    /// Checks shape and full index symmetry.
    pub fn new(n: usize, k: usize, data: Vec<S>, scale: Scale<S>) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadDegree(0, "polynomials have positive degree".into()));
        }
        if data.len() != n.pow(k as u32) {
            return Err(Error::DimensionMismatch(format!("{} components for n = {n}, k = {k}", data.len())));
        }
        let t = SymmetricTensor { n, k, data, scale };
        for f in 0..t.data.len() {
            let mut idx = unflat(n, k, f);
            idx.sort_unstable();
            if t.data[f] != t.data[flat(n, &idx)] {
                let w: Vec<String> = unflat(n, k, f).iter().map(|i| (i + 1).to_string()).collect();
                return Err(Error::NotSymmetric(format!("entry ({}) differs from its sorted permutation", w.join(","))));
            }
        }
        Ok(t)
    }

    /// Builds the tensor from its values on nondecreasing index tuples.
    pub fn from_sorted_fn(n: usize, k: usize, f: impl Fn(&[usize]) -> S, scale: Scale<S>) -> Self {
        let mut cache: HashMap<Vec<usize>, S> = HashMap::new();
        for t in sorted_tuples(n, k) {
            let v = f(&t);
            cache.insert(t, v);
        }
        let data = (0..n.pow(k as u32))
            .map(|f| {
                let mut idx = unflat(n, k, f);
                idx.sort_unstable();
                cache[&idx].clone()
            })
            .collect();
        SymmetricTensor { n, k, data, scale }
    }

    /// Random symmetric tensor with small integer entries; not invariant in general.
    pub fn random(n: usize, k: usize, rng: &mut impl Rng) -> Self {
        let vals: HashMap<Vec<usize>, S> = sorted_tuples(n, k).into_iter().map(|t| (t, S::int(rng.gen_range(-3..=3)))).collect();
        Self::from_sorted_fn(n, k, |t| vals[t].clone(), Scale::one())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn scale(&self) -> &Scale<S> {
        &self.scale
    }

    pub fn with_scale(mut self, scale: Scale<S>) -> Self {
        self.scale = scale;
        self
    }

    /// Unscaled component `p_{i1..ik}`.
    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[flat(self.n, idx)]
    }

    pub fn components(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Symmetrization of `a ⊗ b`; scales multiply.
    pub fn symmetrized_product(a: &Self, b: &Self) -> Result<Self> {
        if a.n != b.n {
            return Err(Error::DimensionMismatch(format!("tensors over dimensions {} and {}", a.n, b.n)));
        }
        let (ka, k) = (a.k, a.k + b.k);
        let subsets: Vec<Vec<usize>> =
            (0..1usize << k).filter(|m| m.count_ones() as usize == ka).map(|m| (0..k).filter(|p| m >> p & 1 == 1).collect()).collect();
        let weight = S::one() / S::int(binomial(k, ka) as i64);
        let f = |idx: &[usize]| {
            let mut acc = S::zero();
            for sub in &subsets {
                let ia: Vec<usize> = sub.iter().map(|&p| idx[p]).collect();
                let ib: Vec<usize> = (0..k).filter(|p| !sub.contains(p)).map(|p| idx[p]).collect();
                let x = a.get(&ia);
                if x.is_zero() {
                    continue;
                }
                acc = acc + x.clone() * b.get(&ib).clone();
            }
            acc * weight.clone()
        };
        Ok(Self::from_sorted_fn(a.n, k, f, a.scale.times(&b.scale)))
    }

    /// First index tuple violating ad-invariance, checked exhaustively over
    /// nondecreasing tuples (the defect tensor is itself symmetric).
    pub fn invariance_defect(&self, algebra: &LieAlgebra<S>) -> Option<(usize, Vec<usize>)> {
        let n = self.n;
        for x in 0..n {
            // For each a: the pairs (m, c^m_{x a}).
            let mut col: Vec<Vec<(usize, S)>> = vec![Vec::new(); n];
            for (m, a, v) in algebra.ad_entries(x) {
                col[a].push((m, v));
            }
            if col.iter().all(Vec::is_empty) {
                continue;
            }
            for tuple in sorted_tuples(n, self.k) {
                let mut s = S::zero();
                let mut work = tuple.clone();
                for j in 0..self.k {
                    let a = tuple[j];
                    for (m, c) in &col[a] {
                        work[j] = *m;
                        let p = self.get(&work);
                        if !p.is_zero() {
                            s = s + c.clone() * p.clone();
                        }
                    }
                    work[j] = a;
                }
                if !s.is_zero() {
                    return Some((x, tuple));
                }
            }
        }
        None
    }

    /// p(V_1, …, V_k) for 𝔤-valued elements V_j (component vectors), keeping
    /// slot order for the graded signs. The scale is applied.
    pub fn contract(&self, slots: &[&[GradedElement<S>]]) -> Result<GradedElement<S>> {
        if slots.len() != self.k {
            return Err(Error::BadDegree(slots.len(), format!("polynomial has degree {}", self.k)));
        }
        if let Some(s) = slots.iter().find(|s| s.len() != self.n) {
            return Err(Error::DimensionMismatch(format!("slot of length {} for dimension {}", s.len(), self.n)));
        }
        let n = self.n;
        let k = self.k;
        // Innermost: R[prefix] = Σ_i p_{prefix,i} V_k^i over prefixes of length k-1.
        let last = slots[k - 1];
        let mut level: Vec<GradedElement<S>> = (0..n.pow(k as u32 - 1))
            .map(|pre| {
                let mut acc = Accumulator::default();
                for (i, v) in last.iter().enumerate() {
                    let p = &self.data[pre * n + i];
                    if !p.is_zero() && !v.is_zero() {
                        acc.add_element(v, p);
                    }
                }
                acc.finish()
            })
            .collect();
        for s in (0..k - 1).rev() {
            let slot = slots[s];
            level = (0..n.pow(s as u32))
                .map(|pre| {
                    let mut acc = Accumulator::default();
                    for (i, v) in slot.iter().enumerate() {
                        let r = &level[pre * n + i];
                        if r.is_zero() || v.is_zero() {
                            continue;
                        }
                        acc.add_element(&(v * r), &S::one());
                    }
                    acc.finish()
                })
                .collect();
        }
        let out = level.pop().unwrap_or_default();
        Ok(if self.scale.is_one() { out } else { &self.scale.to_element() * &out })
    }

    /// G_a = p(ξ_a, F, …, F) with k−1 copies of an even 𝔤-valued F,
    /// summing each monomial F^{b_1}⋯F^{b_{k−1}} once over sorted index
    /// tuples. The scale is applied.
    pub fn polarized(&self, f: &[GradedElement<S>]) -> Result<Vec<GradedElement<S>>> {
        if f.len() != self.n {
            return Err(Error::DimensionMismatch(format!("slot of length {} for dimension {}", f.len(), self.n)));
        }
        if let Some(i) = f.iter().position(|x| !x.is_zero() && x.parity() != Some(false)) {
            return Err(Error::Shape(format!("component {} of a polarized slot is not even", i + 1)));
        }
        let n = self.n;
        let m = self.k - 1;
        let mut acc: Vec<Accumulator<S>> = (0..n).map(|_| Accumulator::default()).collect();
        let mut idx = Vec::with_capacity(m);
        self.polarize_rec(f, &mut idx, 0, &GradedElement::one(), &mut acc);
        let scale = self.scale.to_element();
        Ok(acc
            .into_iter()
            .map(|a| {
                let g = a.finish();
                if self.scale.is_one() {
                    g
                } else {
                    &scale * &g
                }
            })
            .collect())
    }

    fn polarize_rec(
        &self,
        f: &[GradedElement<S>],
        idx: &mut Vec<usize>,
        start: usize,
        prefix: &GradedElement<S>,
        acc: &mut [Accumulator<S>],
    ) {
        let n = self.n;
        let m = self.k - 1;
        if idx.len() == m {
            // multinomial count of distinct orderings of idx
            let mut mult = (1..=m).fold(1u64, |a, i| a * i as u64);
            let mut run = 1u64;
            for w in 1..=m {
                if w < m && idx[w] == idx[w - 1] {
                    run += 1;
                } else {
                    mult /= (1..=run).product::<u64>();
                    run = 1;
                }
            }
            let mult = S::int(mult as i64);
            let mut full = vec![0; m + 1];
            full[1..].copy_from_slice(idx);
            for (a, slot) in acc.iter_mut().enumerate() {
                full[0] = a;
                let c = &self.data[flat(n, &full)];
                if !c.is_zero() {
                    slot.add_element(prefix, &(c.clone() * mult.clone()));
                }
            }
            return;
        }
        for b in start..n {
            if f[b].is_zero() {
                continue;
            }
            let next = prefix * &f[b];
            if next.is_zero() {
                continue;
            }
            idx.push(b);
            self.polarize_rec(f, idx, b, &next, acc);
            idx.pop();
        }
    }

    /// p(v_1, …, v_k) on scalar vectors, scale ignored.
    pub fn evaluate_unscaled(&self, vecs: &[&[S]]) -> S {
        let n = self.n;
        let mut acc = S::zero();
        for f in 0..self.data.len() {
            let p = &self.data[f];
            if p.is_zero() {
                continue;
            }
            let idx = unflat(n, self.k, f);
            let mut t = p.clone();
            for (v, &i) in vecs.iter().zip(&idx) {
                t = t * v[i].clone();
            }
            acc = acc + t;
        }
        acc
    }
}

/// A symmetric tensor certified ad-invariant for a specific algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPolynomial<S> {
    tensor: SymmetricTensor<S>,
    label: String,
}

impl<S: Scalar> InvariantPolynomial<S> {
    pub fn new(algebra: &LieAlgebra<S>, tensor: SymmetricTensor<S>, label: impl Into<String>) -> Result<Self> {
        if tensor.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "tensor over dimension {} for algebra of dimension {}",
                tensor.dim(),
                algebra.dim()
            )));
        }
        if let Some((x, tuple)) = tensor.invariance_defect(algebra) {
            let w: Vec<String> = tuple.iter().map(|i| (i + 1).to_string()).collect();
            return Err(Error::NotInvariant(format!("ad(ξ_{}) fails on index tuple ({})", x + 1, w.join(","))));
        }
        Ok(InvariantPolynomial { tensor, label: label.into() })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tensor(&self) -> &SymmetricTensor<S> {
        &self.tensor
    }

    pub fn with_scale(self, scale: Scale<S>) -> Self {
        InvariantPolynomial { tensor: self.tensor.with_scale(scale), label: self.label }
    }
}

impl<S> Deref for InvariantPolynomial<S> {
    type Target = SymmetricTensor<S>;
    fn deref(&self) -> &SymmetricTensor<S> {
        &self.tensor
    }
}

/// p_{ij} = scale·⟨ξ_i, ξ_j⟩.
pub fn metric_polynomial<S: Scalar>(algebra: &LieAlgebra<S>, scale: Scale<S>) -> Result<InvariantPolynomial<S>> {
    let n = algebra.dim();
    let t = SymmetricTensor::new(n, 2, algebra.metric().components().to_vec(), scale.clone())?;
    let label = if scale.is_one() { "metric".to_string() } else { format!("metric·({scale})") };
    InvariantPolynomial::new(algebra, t, label)
}

/// Symmetrization of ⟨·,·⟩^{k/2}.
pub fn sym_power_polynomial<S: Scalar>(algebra: &LieAlgebra<S>, k: usize) -> Result<InvariantPolynomial<S>> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::BadDegree(k, "symmetric powers of the metric need even degree ≥ 2".into()));
    }
    let g = SymmetricTensor::new(algebra.dim(), 2, algebra.metric().components().to_vec(), Scale::one())?;
    let mut t = g.clone();
    for _ in 1..k / 2 {
        t = SymmetricTensor::symmetrized_product(&t, &g)?;
    }
    InvariantPolynomial::new(algebra, t, format!("sym_power:{k}"))
}

/// Symmetrized trace form Re(i^k · sym tr(ξ_{i1}⋯ξ_{ik})) in the algebra's
/// matrix realization.
pub fn trace_polynomial<S: Scalar>(algebra: &LieAlgebra<S>, k: usize) -> Result<InvariantPolynomial<S>> {
    if k == 0 {
        return Err(Error::BadDegree(0, "polynomials have positive degree".into()));
    }
    let r = algebra.realization().ok_or_else(|| Error::UnsupportedAlgebra(algebra.name().to_string()))?;
    let basis = r.basis();
    let perms = permutations(k);
    let fact = S::int(perms.len() as i64);
    let f = |idx: &[usize]| {
        let mut re = S::zero();
        let mut im = S::zero();
        for p in &perms {
            let mut m = basis[idx[p[0]]].clone();
            for &q in &p[1..] {
                m = &m * &basis[idx[q]];
            }
            let (tr, ti) = m.trace();
            re = re + tr;
            im = im + ti;
        }
        let v = match k % 4 {
            0 => re,
            1 => -im,
            2 => -re,
            _ => im,
        };
        v / fact.clone()
    };
    let t = SymmetricTensor::from_sorted_fn(algebra.dim(), k, f, Scale::one());
    InvariantPolynomial::new(algebra, t, format!("trace:{k}"))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for x in 0..k {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Parses a polynomial spec: `metric`, `metric-normalized`, `sym_power:k`, `trace:k`.
pub fn parse_polynomial<S: Scalar>(algebra: &LieAlgebra<S>, spec: &str) -> Result<InvariantPolynomial<S>> {
    let err = || Error::Parse { what: "polynomial".into(), detail: spec.to_string() };
    match spec.trim() {
        "metric" => metric_polynomial(algebra, Scale::one()),
        "metric-normalized" => Ok(metric_polynomial(algebra, Scale::string_normalization())?.relabel("metric-normalized")),
        other => {
            let (head, k) = other.split_once(':').ok_or_else(err)?;
            let k: usize = k.trim().parse().map_err(|_| err())?;
            match head.trim() {
                "sym_power" => sym_power_polynomial(algebra, k),
                "trace" => trace_polynomial(algebra, k),
                _ => Err(err()),
            }
        }
    }
}

impl<S> InvariantPolynomial<S> {
    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}
