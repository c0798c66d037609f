//! Formal generators of the graded algebras.
//!
//! A generator is packed into a `u32` as `kind:8 | i:12 | j:12`, so the
//! derived ordering is "kind first, then indices lexicographically". That
//! ordering is the fixed total order used for odd words.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum GenKind {
    /// Left Maurer-Cartan form component Θ^i. Odd, degree 1.
    Theta = 0,
    /// Right Maurer-Cartan form component Θ̂^i. Odd, degree 1.
    ThetaHat = 1,
    /// Weil connection generator θ^i. Odd, degree 1.
    WeilTheta = 2,
    /// Weil curvature generator μ^i. Even, degree 2.
    Mu = 3,
    /// Loop-direction marker dθ. Odd, degree 1.
    DThetaLoop = 4,
    /// Auxiliary differential of the transgression parameter. Odd, degree 1.
    Dt = 5,
    /// Ad(g) matrix entry A^i_j. Even, degree 0.
    Ad = 6,
    /// Ad(g⁻¹) matrix entry Ā^i_j. Even, degree 0.
    AdInv = 7,
    /// Cartan model variable χ^i. Even, degree 2.
    Chi = 8,
    /// Cut-off function α along the loop. Even, degree 0.
    Alpha = 9,
    /// Transgression parameter t. Even, degree 0.
    T = 10,
    /// The transcendental symbol π⁻¹. Even, degree 0.
    PiInv = 11,
}

impl GenKind {
    pub const ALL: [GenKind; 12] = [
        GenKind::Theta,
        GenKind::ThetaHat,
        GenKind::WeilTheta,
        GenKind::Mu,
        GenKind::DThetaLoop,
        GenKind::Dt,
        GenKind::Ad,
        GenKind::AdInv,
        GenKind::Chi,
        GenKind::Alpha,
        GenKind::T,
        GenKind::PiInv,
    ];

    pub fn is_odd(self) -> bool {
        matches!(self, GenKind::Theta | GenKind::ThetaHat | GenKind::WeilTheta | GenKind::DThetaLoop | GenKind::Dt)
    }

    pub fn degree(self) -> u32 {
        match self {
            GenKind::Theta | GenKind::ThetaHat | GenKind::WeilTheta | GenKind::DThetaLoop | GenKind::Dt => 1,
            GenKind::Mu | GenKind::Chi => 2,
            GenKind::Ad | GenKind::AdInv | GenKind::Alpha | GenKind::T | GenKind::PiInv => 0,
        }
    }

    /// Number of indices the generator carries.
    pub fn arity(self) -> usize {
        match self {
            GenKind::Ad | GenKind::AdInv => 2,
            GenKind::Theta | GenKind::ThetaHat | GenKind::WeilTheta | GenKind::Mu | GenKind::Chi => 1,
            _ => 0,
        }
    }

    fn from_u8(v: u8) -> GenKind {
        GenKind::ALL[v as usize]
    }

    pub fn stem(self) -> &'static str {
        match self {
            GenKind::Theta => "Theta",
            GenKind::ThetaHat => "ThetaHat",
            GenKind::WeilTheta => "theta",
            GenKind::Mu => "mu",
            GenKind::DThetaLoop => "dtheta",
            GenKind::Dt => "dt",
            GenKind::Ad => "A",
            GenKind::AdInv => "Abar",
            GenKind::Chi => "chi",
            GenKind::Alpha => "alpha",
            GenKind::T => "t",
            GenKind::PiInv => "pi_inv",
        }
    }
}

/// A single formal generator. Indices are 0-based internally and printed
/// 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(u32);

const IDX_MASK: u32 = 0xfff;

impl Gen {
    fn pack(kind: GenKind, i: usize, j: usize) -> Gen {
        assert!(i <= IDX_MASK as usize && j <= IDX_MASK as usize, "generator index too large");
        Gen(((kind as u32) << 24) | ((i as u32) << 12) | j as u32)
    }

    pub fn kind(self) -> GenKind {
        GenKind::from_u8((self.0 >> 24) as u8)
    }

    pub fn i(self) -> usize {
        ((self.0 >> 12) & IDX_MASK) as usize
    }

    pub fn j(self) -> usize {
        (self.0 & IDX_MASK) as usize
    }

    pub fn is_odd(self) -> bool {
        self.kind().is_odd()
    }

    pub fn degree(self) -> u32 {
        self.kind().degree()
    }

    /// Left Maurer-Cartan component Θ^i.
    pub fn mc(i: usize) -> Gen {
        Gen::pack(GenKind::Theta, i, 0)
    }
    /// Right Maurer-Cartan component Θ̂^i.
    pub fn mc_hat(i: usize) -> Gen {
        Gen::pack(GenKind::ThetaHat, i, 0)
    }
    /// Weil connection generator θ^i.
    pub fn conn(i: usize) -> Gen {
        Gen::pack(GenKind::WeilTheta, i, 0)
    }
    /// Weil curvature generator μ^i.
    pub fn curv(i: usize) -> Gen {
        Gen::pack(GenKind::Mu, i, 0)
    }
    pub fn dtheta() -> Gen {
        Gen::pack(GenKind::DThetaLoop, 0, 0)
    }
    pub fn dt() -> Gen {
        Gen::pack(GenKind::Dt, 0, 0)
    }
    /// Ad(g)^i_j.
    pub fn ad(i: usize, j: usize) -> Gen {
        Gen::pack(GenKind::Ad, i, j)
    }
    /// Ad(g⁻¹)^i_j.
    pub fn ad_inv(i: usize, j: usize) -> Gen {
        Gen::pack(GenKind::AdInv, i, j)
    }
    pub fn chi(i: usize) -> Gen {
        Gen::pack(GenKind::Chi, i, 0)
    }
    pub fn alpha() -> Gen {
        Gen::pack(GenKind::Alpha, 0, 0)
    }
    pub fn t() -> Gen {
        Gen::pack(GenKind::T, 0, 0)
    }
    pub fn pi_inv() -> Gen {
        Gen::pack(GenKind::PiInv, 0, 0)
    }

    pub fn new(kind: GenKind, i: usize, j: usize) -> Gen {
        match kind.arity() {
            0 => Gen::pack(kind, 0, 0),
            1 => Gen::pack(kind, i, 0),
            _ => Gen::pack(kind, i, j),
        }
    }

    /// Every generator that can occur for an algebra of dimension `n`.
    pub fn all(n: usize) -> Vec<Gen> {
        let mut out = Vec::new();
        for kind in GenKind::ALL {
            match kind.arity() {
                0 => out.push(Gen::new(kind, 0, 0)),
                1 => out.extend((0..n).map(|i| Gen::new(kind, i, 0))),
                _ => {
                    for i in 0..n {
                        for j in 0..n {
                            out.push(Gen::new(kind, i, j));
                        }
                    }
                }
            }
        }
        out
    }

    /// Canonical text name, e.g. `Theta_1`, `A_12`, `pi_inv`.
    pub fn name(self) -> String {
        let kind = self.kind();
        match kind.arity() {
            0 => kind.stem().to_string(),
            1 => format!("{}_{}", kind.stem(), self.i() + 1),
            _ => {
                let (i, j) = (self.i() + 1, self.j() + 1);
                if i < 10 && j < 10 {
                    format!("{}_{}{}", kind.stem(), i, j)
                } else {
                    format!("{}_{},{}", kind.stem(), i, j)
                }
            }
        }
    }

    pub fn parse(name: &str) -> Result<Gen> {
        let err = || Error::Parse { what: "generator".into(), detail: name.to_string() };
        let (stem, rest) = match name.split_once('_') {
            Some((s, r)) if s != "pi" => (s, Some(r)),
            _ => (name, None),
        };
        let kind = GenKind::ALL.iter().copied().find(|k| k.stem() == stem).ok_or_else(err)?;
        let parse_idx = |s: &str| s.parse::<usize>().ok().filter(|v| *v >= 1).map(|v| v - 1);
        match (kind.arity(), rest) {
            (0, None) => Ok(Gen::new(kind, 0, 0)),
            (1, Some(r)) => Ok(Gen::new(kind, parse_idx(r).ok_or_else(err)?, 0)),
            (2, Some(r)) => {
                let (a, b) = if let Some((a, b)) = r.split_once(',') {
                    (a, b)
                } else if r.len() == 2 {
                    r.split_at(1)
                } else {
                    return Err(err());
                };
                Ok(Gen::new(kind, parse_idx(a).ok_or_else(err)?, parse_idx(b).ok_or_else(err)?))
            }
            _ => Err(err()),
        }
    }

    /// LaTeX rendering.
    pub fn latex(self) -> String {
        let (i, j) = (self.i() + 1, self.j() + 1);
        match self.kind() {
            GenKind::Theta => format!("\\Theta^{{{i}}}"),
            GenKind::ThetaHat => format!("\\hat{{\\Theta}}^{{{i}}}"),
            GenKind::WeilTheta => format!("\\theta^{{{i}}}"),
            GenKind::Mu => format!("\\mu^{{{i}}}"),
            GenKind::DThetaLoop => "d\\theta".to_string(),
            GenKind::Dt => "dt".to_string(),
            GenKind::Ad => format!("A^{{{i}}}_{{{j}}}"),
            GenKind::AdInv => format!("\\bar{{A}}^{{{i}}}_{{{j}}}"),
            GenKind::Chi => format!("\\chi^{{{i}}}"),
            GenKind::Alpha => "\\alpha".to_string(),
            GenKind::T => "t".to_string(),
            GenKind::PiInv => "\\pi^{-1}".to_string(),
        }
    }

    /// Unicode rendering for terminal output.
    pub fn pretty(self) -> String {
        let sup = |n: usize| -> String {
            const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
            n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
        };
        let sub = |n: usize| -> String {
            const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
            n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
        };
        let (i, j) = (self.i() + 1, self.j() + 1);
        match self.kind() {
            GenKind::Theta => format!("Θ{}", sup(i)),
            GenKind::ThetaHat => format!("Θ̂{}", sup(i)),
            GenKind::WeilTheta => format!("θ{}", sup(i)),
            GenKind::Mu => format!("μ{}", sup(i)),
            GenKind::DThetaLoop => "dθ".to_string(),
            GenKind::Dt => "dt".to_string(),
            GenKind::Ad => format!("A{}{}", sup(i), sub(j)),
            GenKind::AdInv => format!("Ā{}{}", sup(i), sub(j)),
            GenKind::Chi => format!("χ{}", sup(i)),
            GenKind::Alpha => "α".to_string(),
            GenKind::T => "t".to_string(),
            GenKind::PiInv => "π⁻¹".to_string(),
        }
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
