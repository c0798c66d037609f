use smallvec::SmallVec;

use super::generator::Gen;

/// A normal-form monomial: a sorted product of even generators with
/// exponents times a strictly increasing word of odd generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub(crate) even: SmallVec<[(Gen, u32); 4]>,
    pub(crate) odd: SmallVec<[Gen; 6]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn even(&self) -> &[(Gen, u32)] {
        &self.even
    }

    pub fn odd(&self) -> &[Gen] {
        &self.odd
    }

    pub fn of_gen(g: Gen) -> Self {
        let mut m = Monomial::one();
        if g.is_odd() {
            m.odd.push(g);
        } else {
            m.even.push((g, 1));
        }
        m
    }

    /// Total degree (odd generators count their degree, even ones with
    /// multiplicity).
    pub fn degree(&self) -> u32 {
        self.even.iter().map(|(g, p)| g.degree() * p).sum::<u32>() + self.odd.iter().map(|g| g.degree()).sum::<u32>()
    }

    /// Parity of the odd word (true when odd).
    pub fn is_odd(&self) -> bool {
        self.odd.len() % 2 == 1
    }

    pub fn power_of(&self, g: Gen) -> u32 {
        self.even.iter().find(|(h, _)| *h == g).map_or(0, |(_, p)| *p)
    }

    pub fn contains(&self, g: Gen) -> bool {
        if g.is_odd() {
            self.odd.binary_search(&g).is_ok()
        } else {
            self.power_of(g) > 0
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.even.iter().map(|(g, _)| *g).chain(self.odd.iter().copied())
    }

    /// Removes every power of the even generator `g`, returning the exponent.
    pub fn take_even(&self, g: Gen) -> (Monomial, u32) {
        let mut m = self.clone();
        let mut p = 0;
        m.even.retain(|(h, e)| {
            if *h == g {
                p = *e;
                false
            } else {
                true
            }
        });
        (m, p)
    }

    /// Lowers the exponent of the even generator `g` by one.
    pub(crate) fn lower_even(&self, g: Gen) -> Monomial {
        let mut m = self.clone();
        if let Some(pos) = m.even.iter().position(|(h, _)| *h == g) {
            if m.even[pos].1 == 1 {
                m.even.remove(pos);
            } else {
                m.even[pos].1 -= 1;
            }
        }
        m
    }

    /// Product of normal-form monomials. Returns `None` when an odd generator
    /// repeats, otherwise the product and whether the sign flipped.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let (odd, neg) = merge_odd(&self.odd, &other.odd)?;
        let even = merge_even(&self.even, &other.even);
        Some((Monomial { even, odd }, neg))
    }

    /// Splits off the odd word at position `k`: returns (prefix, suffix)
    /// monomials where the prefix keeps the even part.
    pub(crate) fn split_odd_at(&self, k: usize) -> (Monomial, Monomial) {
        let left = Monomial { even: self.even.clone(), odd: self.odd[..k].iter().copied().collect() };
        let right = Monomial { even: SmallVec::new(), odd: self.odd[k + 1..].iter().copied().collect() };
        (left, right)
    }

    /// Normal form of an arbitrary word of generators together with its sign;
    /// `None` when the word vanishes.
    pub fn from_word(word: &[Gen]) -> Option<(Monomial, bool)> {
        let mut odd: SmallVec<[Gen; 6]> = SmallVec::new();
        let mut even: SmallVec<[(Gen, u32); 4]> = SmallVec::new();
        for &g in word {
            if g.is_odd() {
                odd.push(g);
            } else if let Some(e) = even.iter_mut().find(|(h, _)| *h == g) {
                e.1 += 1;
            } else {
                even.push((g, 1));
            }
        }
        even.sort_unstable();
        // Count inversions and detect repeats with an insertion sort; words are short.
        let mut neg = false;
        for i in 1..odd.len() {
            let mut j = i;
            while j > 0 && odd[j - 1] > odd[j] {
                odd.swap(j - 1, j);
                neg = !neg;
                j -= 1;
            }
        }
        if odd.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Monomial { even, odd }, neg))
    }
}

fn merge_even(a: &[(Gen, u32)], b: &[(Gen, u32)]) -> SmallVec<[(Gen, u32); 4]> {
    if a.is_empty() {
        return b.iter().copied().collect();
    }
    if b.is_empty() {
        return a.iter().copied().collect();
    }
    let mut out = SmallVec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Merges two strictly increasing odd words. The sign flips once for every
/// pair (x from `a`, y from `b`) with x > y, since y has to move past x.
fn merge_odd(a: &[Gen], b: &[Gen]) -> Option<(SmallVec<[Gen; 6]>, bool)> {
    if b.is_empty() {
        return Some((a.iter().copied().collect(), false));
    }
    if a.is_empty() {
        return Some((b.iter().copied().collect(), false));
    }
    let mut out = SmallVec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut swaps = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                swaps += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, swaps % 2 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_flips_sign() {
        let (m, neg) = Monomial::from_word(&[Gen::mc(1), Gen::mc(0)]).unwrap();
        assert!(neg);
        assert_eq!(m.odd(), &[Gen::mc(0), Gen::mc(1)]);
        assert!(Monomial::from_word(&[Gen::mc(0), Gen::mc(0)]).is_none());
        let (m, neg) = Monomial::from_word(&[Gen::curv(0), Gen::conn(0)]).unwrap();
        assert!(!neg);
        assert_eq!(m.even(), &[(Gen::curv(0), 1)]);
    }

    #[test]
    fn merge_counts_crossings() {
        let a = Monomial::from_word(&[Gen::mc(0), Gen::mc(2)]).unwrap().0;
        let b = Monomial::from_word(&[Gen::mc(1), Gen::mc(3)]).unwrap().0;
        // Θ1Θ3·Θ2Θ4 = -Θ1Θ2Θ3Θ4
        let (p, neg) = a.mul(&b).unwrap();
        assert!(neg);
        assert_eq!(p.odd().len(), 4);
        assert!(a.mul(&a).is_none());
    }
}
