use std::fmt;

use serde_json::Value;

use super::realization::Realization;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{parse_scalar, Scalar};

/// Structure constants and invariant inner product of a Lie algebra in a
/// fixed basis ξ_1..ξ_n, with `[ξ_j, ξ_k] = c^i_{jk} ξ_i`.
#[derive(Clone)]
pub struct LieAlgebra<S> {
    name: String,
    dim: usize,
    c: Vec<S>,
    metric: Matrix<S>,
    metric_inv: Option<Matrix<S>>,
    realization: Option<Realization<S>>,
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    /// First violating index tuple (1-based), when the check failed.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub algebra: String,
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.pass { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, " at {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl<S: Scalar> LieAlgebra<S> {
    /// Assembles algebra data without checking the axioms. `c` is indexed
    /// as `c[i][j][k] = c^i_{jk}`, flattened row-major.
    pub fn from_parts(name: impl Into<String>, dim: usize, c: Vec<S>, metric: Matrix<S>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("dimension must be positive".into()));
        }
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!("{} structure constants for dimension {dim}", c.len())));
        }
        if metric.rows != dim || metric.cols != dim {
            return Err(Error::DimensionMismatch(format!("metric is {}x{} for dimension {dim}", metric.rows, metric.cols)));
        }
        let metric_inv = metric.inverse();
        Ok(LieAlgebra { name: name.into(), dim, c, metric, metric_inv, realization: None })
    }

    /// Builds from a closure `c(i, j, k)` for `j < k`, completing antisymmetry.
    pub fn from_fn(name: impl Into<String>, dim: usize, f: impl Fn(usize, usize, usize) -> S, metric: Matrix<S>) -> Result<Self> {
        let mut c = vec![S::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in j + 1..dim {
                    let v = f(i, j, k);
                    c[(i * dim + k) * dim + j] = -v.clone();
                    c[(i * dim + j) * dim + k] = v;
                }
            }
        }
        Self::from_parts(name, dim, c, metric)
    }

    pub(crate) fn with_realization(mut self, r: Realization<S>) -> Self {
        self.realization = Some(r);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^i_{jk}`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &S {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// `c_{ijk} = g_{im} c^m_{jk}`, totally antisymmetric for a valid algebra.
    pub fn c_lower(&self, i: usize, j: usize, k: usize) -> S {
        (0..self.dim).fold(S::zero(), |acc, m| acc + self.metric[(i, m)].clone() * self.c(m, j, k).clone())
    }

    pub fn metric(&self) -> &Matrix<S> {
        &self.metric
    }

    pub fn metric_inverse(&self) -> Option<&Matrix<S>> {
        self.metric_inv.as_ref()
    }

    pub fn realization(&self) -> Option<&Realization<S>> {
        self.realization.as_ref()
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Nonzero entries `(i, k, c^i_{jk})` for fixed `j`: the matrix of ad ξ_j.
    pub fn ad_entries(&self, j: usize) -> Vec<(usize, usize, S)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for k in 0..self.dim {
                let v = self.c(i, j, k);
                if !v.is_zero() {
                    out.push((i, k, v.clone()));
                }
            }
        }
        out
    }

    /// Matrix of ad ξ_j, entries `(ad ξ_j)^i_k = c^i_{jk}`.
    pub fn ad_matrix(&self, j: usize) -> Matrix<S> {
        Matrix::from_fn(self.dim, self.dim, |i, k| self.c(i, j, k).clone())
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim;
        let mut out = vec![S::zero(); n];
        for j in 0..n {
            if x[j].is_zero() {
                continue;
            }
            for k in 0..n {
                if y[k].is_zero() {
                    continue;
                }
                let xy = x[j].clone() * y[k].clone();
                for (i, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + c.clone() * xy.clone();
                    }
                }
            }
        }
        out
    }

    /// `⟨x, y⟩` for coordinate vectors.
    pub fn pairing(&self, x: &[S], y: &[S]) -> S {
        let mut acc = S::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc = acc + x[i].clone() * self.metric[(i, j)].clone() * y[j].clone();
            }
        }
        acc
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let idx = |v: &[usize]| -> String {
            let parts: Vec<String> = v.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", parts.join(","))
        };
        let mut checks = Vec::new();

        let mut witness = None;
        'anti: for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    if *self.c(i, j, k) != -self.c(i, k, j).clone() {
                        witness = Some(idx(&[i, j, k]));
                        break 'anti;
                    }
                }
            }
        }
        checks.push(AxiomCheck { name: "antisymmetry", pass: witness.is_none(), witness });

        let mut witness = None;
        'jacobi: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = S::zero();
                        for m in 0..n {
                            s = s
                                + self.c(m, j, k).clone() * self.c(i, m, l).clone()
                                + self.c(m, k, l).clone() * self.c(i, m, j).clone()
                                + self.c(m, l, j).clone() * self.c(i, m, k).clone();
                        }
                        if !s.is_zero() {
                            witness = Some(idx(&[i, j, k, l]));
                            break 'jacobi;
                        }
                    }
                }
            }
        }
        checks.push(AxiomCheck { name: "jacobi", pass: witness.is_none(), witness });

        let mut witness = None;
        'sym: for i in 0..n {
            for j in i + 1..n {
                if self.metric[(i, j)] != self.metric[(j, i)] {
                    witness = Some(idx(&[i, j]));
                    break 'sym;
                }
            }
        }
        checks.push(AxiomCheck { name: "metric_symmetric", pass: witness.is_none(), witness });
        checks.push(AxiomCheck { name: "metric_invertible", pass: self.metric_inv.is_some(), witness: None });

        // ⟨[ξ_x, ξ_y], ξ_z⟩ + ⟨ξ_y, [ξ_x, ξ_z]⟩ = c_{zxy} + c_{yxz}
        let mut witness = None;
        'inv: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut s = S::zero();
                    for m in 0..n {
                        s = s
                            + self.c(m, x, y).clone() * self.metric[(m, z)].clone()
                            + self.metric[(y, m)].clone() * self.c(m, x, z).clone();
                    }
                    if !s.is_zero() {
                        witness = Some(idx(&[x, y, z]));
                        break 'inv;
                    }
                }
            }
        }
        checks.push(AxiomCheck { name: "metric_invariant", pass: witness.is_none(), witness });

        ValidationReport { algebra: self.name.clone(), checks }
    }

    /// Parses the JSON algebra file format. Indices are 1-based; entries with
    /// `j < k` are mirrored antisymmetrically, others are stored as given.
    pub fn from_json(v: &Value) -> Result<Self> {
        let err = |s: String| Error::AlgebraFile(s);
        let name = v.get("name").and_then(Value::as_str).unwrap_or("custom").to_string();
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| err("missing `dim`".into()))? as usize;
        if dim == 0 || dim > 4095 {
            return Err(err(format!("unsupported dimension {dim}")));
        }
        let mut c = vec![S::zero(); dim * dim * dim];
        if let Some(entries) = v.get("c") {
            let entries = entries.as_array().ok_or_else(|| err("`c` must be an array".into()))?;
            for e in entries {
                let e = e.as_array().filter(|e| e.len() == 4).ok_or_else(|| err(format!("bad entry {e}")))?;
                let mut ix = [0usize; 3];
                for (slot, val) in ix.iter_mut().zip(e.iter()) {
                    let v = val.as_u64().ok_or_else(|| err(format!("bad index {val}")))? as usize;
                    if v == 0 || v > dim {
                        return Err(Error::IndexOutOfRange { index: v, dim });
                    }
                    *slot = v - 1;
                }
                let val: S = scalar_value(&e[3]).ok_or_else(|| err(format!("bad value {}", e[3])))?;
                let [i, j, k] = ix;
                if j < k {
                    c[(i * dim + k) * dim + j] = -val.clone();
                }
                c[(i * dim + j) * dim + k] = val;
            }
        }
        let metric = match v.get("metric") {
            None => Matrix::identity(dim),
            Some(m) => {
                let rows = m.as_array().ok_or_else(|| err("`metric` must be an array".into()))?;
                if rows.len() != dim {
                    return Err(Error::DimensionMismatch(format!("metric has {} rows for dimension {dim}", rows.len())));
                }
                let mut out = Vec::with_capacity(dim);
                for r in rows {
                    let r = r.as_array().ok_or_else(|| err("metric rows must be arrays".into()))?;
                    if r.len() != dim {
                        return Err(Error::DimensionMismatch(format!("metric row of length {} for dimension {dim}", r.len())));
                    }
                    out.push(
                        r.iter()
                            .map(|x| scalar_value(x).ok_or_else(|| err(format!("bad metric entry {x}"))))
                            .collect::<Result<Vec<S>>>()?,
                    );
                }
                Matrix::from_rows(out)
            }
        };
        Self::from_parts(name, dim, c, metric)
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim;
        let mut c = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    let v = self.c(i, j, k);
                    if !v.is_zero() {
                        c.push(serde_json::json!([i + 1, j + 1, k + 1, v.to_string()]));
                    }
                }
            }
        }
        let metric: Vec<Vec<String>> = self.metric.to_string_rows();
        serde_json::json!({ "name": self.name, "dim": n, "c": c, "metric": metric })
    }
}

fn scalar_value<S: Scalar>(v: &Value) -> Option<S> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) => n.as_i64().map(S::int),
        _ => None,
    }
}

impl<S: Scalar> fmt::Debug for LieAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra").field("name", &self.name).field("dim", &self.dim).finish()
    }
}
