//! The truncated polynomial algebra `kG = k[t_1..t_r]/(t_i^p)`, its two
//! Hopf structures, and its finite-dimensional modules.
//!
//! A module is a tuple of `r` pairwise-commuting `p`-nilpotent matrices; a
//! homomorphism is a matrix intertwining the two tuples. The monomial basis
//! of `kG` is ordered lexicographically on exponent vectors with the first
//! generator most significant, matching the Kronecker convention of
//! [`crate::fp::FpMatrix::kronecker`] (first factor major).

use crate::error::Error;
use crate::fp::FpMatrix;
use crate::Result;
use serde::{Deserialize, Serialize};

/// The two coalgebra structures carried by `kG`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hopf {
    /// `1 + t_i` is group-like: `t` acts on a tensor as `t(x)1 + 1(x)t + t(x)t`.
    Grouplike,
    /// `t_i` is primitive: `t` acts on a tensor as `t(x)1 + 1(x)t`.
    Primitive,
}

/// `kG = k[t_1..t_r]/(t_i^p)` with a chosen Hopf structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    pub p: u32,
    pub r: usize,
    pub hopf: Hopf,
}

impl AlgebraDescriptor {
    pub fn new(p: u32, r: usize, hopf: Hopf) -> Self {
        AlgebraDescriptor { p, r, hopf }
    }

    pub fn dim(&self) -> usize {
        (self.p as usize).pow(self.r as u32)
    }

    /// Loewy length `r(p-1) + 1`: least `n` with `Rad^n(kG) = 0`.
    pub fn loewy_length(&self) -> usize {
        self.r * (self.p as usize - 1) + 1
    }
}

/// Monomial basis bookkeeping for `k[t_1..t_s]/(t_i^p)`.
///
/// Index layout is mixed-radix with the first exponent most significant, so
/// a basis listed first-factor major under a tensor factorization agrees
/// with flat indices here.
#[derive(Debug, Clone)]
pub struct MonomialTable {
    pub p: u32,
    pub s: usize,
    pub dim: usize,
}

impl MonomialTable {
    pub fn new(p: u32, s: usize) -> Self {
        let dim = (p as usize).pow(s as u32);
        MonomialTable { p, s, dim }
    }

    pub fn exponents(&self, mut idx: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.s];
        for i in (0..self.s).rev() {
            e[i] = (idx % self.p as usize) as u32;
            idx /= self.p as usize;
        }
        e
    }

    pub fn index(&self, exps: &[u32]) -> usize {
        let mut idx = 0usize;
        for &e in exps {
            idx = idx * self.p as usize + e as usize;
        }
        idx
    }

    /// Index of `t_i * t^a`, or `None` if the power overflows.
    pub fn mult_by_gen(&self, gen: usize, idx: usize) -> Option<usize> {
        let stride = (self.p as usize).pow((self.s - 1 - gen) as u32);
        let digit = idx / stride % self.p as usize;
        if digit + 1 >= self.p as usize {
            None
        } else {
            Some(idx + stride)
        }
    }

    pub fn total_degree(&self, idx: usize) -> u32 {
        self.exponents(idx).iter().sum()
    }

    /// Index of `t^a * t^b`, or `None` if a power overflows.
    pub fn mono_product(&self, a: usize, b: usize) -> Option<usize> {
        let ea = self.exponents(a);
        let eb = self.exponents(b);
        let mut e = vec![0u32; self.s];
        for k in 0..self.s {
            e[k] = ea[k] + eb[k];
            if e[k] >= self.p {
                return None;
            }
        }
        Some(self.index(&e))
    }

    /// Multiplication of residue classes: coefficient vector of `f * g`.
    pub fn poly_mul(&self, f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                if let Some(idx) = self.mono_product(i, j) {
                    out[idx] = (out[idx] + a * b) % p;
                }
            }
        }
        out
    }

    /// Dense matrix of multiplication by `f` on the regular module.
    pub fn regular_rep(&self, f: &[u32], p: u32) -> FpMatrix {
        let mut m = FpMatrix::zeros(p, self.dim, self.dim);
        for (i, &c) in f.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..self.dim {
                if let Some(idx) = self.mono_product(i, j) {
                    m.data[idx * self.dim + j] = (m.data[idx * self.dim + j] + c) % p;
                }
            }
        }
        m
    }
}

/// A finite-dimensional `kG`-module: `r` commuting `p`-nilpotent actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpModule {
    pub p: u32,
    pub r: usize,
    pub dim: usize,
    pub action: Vec<FpMatrix>,
}

impl FpModule {
    pub fn new(p: u32, r: usize, action: Vec<FpMatrix>) -> Result<Self> {
        let dim = action.first().map_or(0, |a| a.rows);
        let m = FpModule { p, r, dim, action };
        m.validate()?;
        Ok(m)
    }

    /// Construct without the validity check; callers guarantee the module
    /// axioms hold (used for modules assembled from validated pieces).
    pub fn from_parts_unchecked(p: u32, r: usize, dim: usize, action: Vec<FpMatrix>) -> Self {
        FpModule { p, r, dim, action }
    }

    pub fn validate(&self) -> Result<()> {
        if self.action.len() != self.r {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, got {}",
                self.r,
                self.action.len()
            )));
        }
        for a in &self.action {
            if a.rows != self.dim || a.cols != self.dim || a.p != self.p {
                return Err(Error::InvalidModule("action matrix shape/modulus".into()));
            }
            if a.data.iter().any(|&x| x >= self.p) {
                return Err(Error::InvalidModule("entry not reduced".into()));
            }
        }
        for i in 0..self.r {
            if !self.action[i].pow(self.p)?.is_zero() {
                return Err(Error::InvalidModule(format!("t_{} not p-nilpotent", i + 1)));
            }
            for j in i + 1..self.r {
                let ab = self.action[i].mul(&self.action[j])?;
                let ba = self.action[j].mul(&self.action[i])?;
                if ab != ba {
                    return Err(Error::InvalidModule(format!(
                        "t_{} and t_{} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The trivial module `k`.
    pub fn trivial(p: u32, r: usize) -> Self {
        FpModule {
            p,
            r,
            dim: 1,
            action: vec![FpMatrix::zeros(p, 1, 1); r],
        }
    }

    pub fn zero(p: u32, r: usize) -> Self {
        FpModule {
            p,
            r,
            dim: 0,
            action: vec![FpMatrix::zeros(p, 0, 0); r],
        }
    }

    /// The regular module `kG` on its monomial basis.
    pub fn regular(p: u32, r: usize) -> Self {
        let table = MonomialTable::new(p, r);
        let dim = table.dim;
        let mut action = Vec::with_capacity(r);
        for g in 0..r {
            let mut m = FpMatrix::zeros(p, dim, dim);
            for j in 0..dim {
                if let Some(i) = table.mult_by_gen(g, j) {
                    m.data[i * dim + j] = 1;
                }
            }
            action.push(m);
        }
        FpModule { p, r, dim, action }
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        if self.p != other.p || self.r != other.r {
            return Err(Error::IncompatibleModules("direct_sum".into()));
        }
        let dim = self.dim + other.dim;
        let mut action = Vec::with_capacity(self.r);
        for i in 0..self.r {
            let mut m = FpMatrix::zeros(self.p, dim, dim);
            for a in 0..self.dim {
                for b in 0..self.dim {
                    m.data[a * dim + b] = self.action[i].get(a, b);
                }
            }
            for a in 0..other.dim {
                for b in 0..other.dim {
                    m.data[(self.dim + a) * dim + (self.dim + b)] = other.action[i].get(a, b);
                }
            }
            action.push(m);
        }
        Ok(FpModule {
            p: self.p,
            r: self.r,
            dim,
            action,
        })
    }

    /// Action of the monomial `t^e` (product of generator powers).
    pub fn monomial_action(&self, exps: &[u32]) -> Result<FpMatrix> {
        let mut acc = FpMatrix::identity(self.p, self.dim);
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                acc = self.action[i].mul(&acc)?;
            }
        }
        Ok(acc)
    }

    /// Action of an algebra element given as coefficients on the monomial
    /// basis of `kG`.
    pub fn element_action(&self, coeffs: &[u32]) -> Result<FpMatrix> {
        let table = MonomialTable::new(self.p, self.r);
        let mut acc = FpMatrix::zeros(self.p, self.dim, self.dim);
        for (idx, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let m = self.monomial_action(&table.exponents(idx))?;
            acc = acc.add(&m.scale(c))?;
        }
        Ok(acc)
    }

    /// Radical `Rad M = sum t_i M` as an image basis.
    pub fn radical_basis(&self) -> FpMatrix {
        let stacked = self
            .action
            .iter()
            .fold(FpMatrix::zeros(self.p, self.dim, 0), |acc, a| {
                acc.hstack(a).unwrap()
            });
        stacked.image_basis()
    }

    /// Dimension of `M / Rad M`.
    pub fn top_dim(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let stacked = self
            .action
            .iter()
            .fold(FpMatrix::zeros(self.p, self.dim, 0), |acc, a| {
                acc.hstack(a).unwrap()
            });
        self.dim - stacked.rank()
    }

    /// Socle `soc M = {m : t_i m = 0 for all i}` as a column basis.
    pub fn socle_basis(&self) -> FpMatrix {
        if self.dim == 0 {
            return FpMatrix::zeros(self.p, 0, 0);
        }
        let stacked = self
            .action
            .iter()
            .skip(1)
            .fold(self.action[0].clone(), |acc, a| acc.vstack(a).unwrap());
        stacked.kernel_basis()
    }

    /// Transpose-dual module (contravariant, exact, preserves projectives).
    pub fn dual(&self) -> FpModule {
        FpModule {
            p: self.p,
            r: self.r,
            dim: self.dim,
            action: self.action.iter().map(|a| a.transpose()).collect(),
        }
    }

    /// Rank of the action of the full product `(t_1...t_r)^(p-1)`; equals
    /// the number of free direct summands.
    pub fn free_rank(&self) -> Result<usize> {
        let exps = vec![self.p - 1; self.r];
        Ok(self.monomial_action(&exps)?.rank())
    }

    /// Standard-basis indices whose classes form a basis of `M / Rad M`.
    pub fn top_generators(&self) -> Vec<usize> {
        let rad = self.radical_basis();
        complement_indices(&rad, self.dim)
    }
}

/// Indices of standard basis vectors completing the span of `sub`'s columns
/// to the whole space of dimension `n`.
pub fn complement_indices(sub: &FpMatrix, n: usize) -> Vec<usize> {
    let mut t = sub.transpose();
    let info = t.rref_in_place();
    let mut is_pivot = vec![false; n];
    for &(_, c) in &info.pivots {
        is_pivot[c] = true;
    }
    (0..n).filter(|&i| !is_pivot[i]).collect()
}

/// A homomorphism of `kG`-modules, stored as its matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub matrix: FpMatrix,
}

impl ModuleMap {
    pub fn new(source: &FpModule, target: &FpModule, matrix: FpMatrix) -> Result<Self> {
        if matrix.rows != target.dim || matrix.cols != source.dim {
            return Err(Error::ShapeMismatch("module map shape".into()));
        }
        for i in 0..source.r {
            let lhs = matrix.mul(&source.action[i])?;
            let rhs = target.action[i].mul(&matrix)?;
            if lhs != rhs {
                return Err(Error::NotEquivariant(format!("generator t_{}", i + 1)));
            }
        }
        Ok(ModuleMap { matrix })
    }

    pub fn is_equivariant(source: &FpModule, target: &FpModule, matrix: &FpMatrix) -> bool {
        (0..source.r).all(|i| {
            matrix.mul(&source.action[i]).unwrap() == target.action[i].mul(matrix).unwrap()
        })
    }
}

/// Tensor product over `k` with the diagonal action induced by the chosen
/// coalgebra structure. Basis order is first factor major.
pub fn tensor_module(m: &FpModule, n: &FpModule, alg: &AlgebraDescriptor) -> Result<FpModule> {
    if m.p != n.p || m.r != n.r || m.p != alg.p || m.r != alg.r {
        return Err(Error::IncompatibleModules("tensor_module".into()));
    }
    let p = m.p;
    let dim = m.dim * n.dim;
    let im = FpMatrix::identity(p, m.dim);
    let in_ = FpMatrix::identity(p, n.dim);
    let mut action = Vec::with_capacity(m.r);
    for i in 0..m.r {
        let a = &m.action[i];
        let b = &n.action[i];
        let mat = match alg.hopf {
            Hopf::Primitive => a
                .kronecker(&in_)?
                .add(&im.kronecker(b)?)?,
            Hopf::Grouplike => {
                // (1+a)(x)(1+b) - 1(x)1 = a(x)1 + 1(x)b + a(x)b
                let mut t = a.kronecker(&in_)?.add(&im.kronecker(b)?)?;
                t = t.add(&a.kronecker(b)?)?;
                t
            }
        };
        action.push(mat);
    }
    Ok(FpModule {
        p,
        r: m.r,
        dim,
        action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_indexing_roundtrip() {
        let t = MonomialTable::new(3, 2);
        for i in 0..t.dim {
            assert_eq!(t.index(&t.exponents(i)), i);
        }
        // t_1 * t^(1,2) = t^(2,2)
        assert_eq!(t.mult_by_gen(0, t.index(&[1, 2])), Some(t.index(&[2, 2])));
        assert_eq!(t.mult_by_gen(1, t.index(&[1, 2])), None);
    }

    #[test]
    fn regular_module_valid() {
        for (p, r) in [(2, 2), (3, 2), (2, 3)] {
            let kg = FpModule::regular(p, r);
            kg.validate().unwrap();
            assert_eq!(kg.dim, (p as usize).pow(r as u32));
            assert_eq!(kg.top_dim(), 1);
            assert_eq!(kg.socle_basis().cols, 1);
            assert_eq!(kg.free_rank().unwrap(), 1);
        }
    }

    #[test]
    fn tensor_unit_object() {
        let alg_g = AlgebraDescriptor::new(2, 2, Hopf::Grouplike);
        let alg_p = AlgebraDescriptor::new(2, 2, Hopf::Primitive);
        let k = FpModule::trivial(2, 2);
        let kg = FpModule::regular(2, 2);
        for alg in [alg_g, alg_p] {
            let t = tensor_module(&kg, &k, &alg).unwrap();
            assert_eq!(t.action, kg.action);
            let kk = tensor_module(&k, &k, &alg).unwrap();
            assert_eq!(kk.dim, 1);
        }
    }

    #[test]
    fn tensor_valid_both_hopf() {
        let k3 = FpModule::regular(3, 2);
        for hopf in [Hopf::Grouplike, Hopf::Primitive] {
            let alg = AlgebraDescriptor::new(3, 2, hopf);
            let t = tensor_module(&k3, &k3, &alg).unwrap();
            t.validate().unwrap();
            assert_eq!(t.dim, 81);
        }
    }

    #[test]
    fn loewy_length_formula() {
        assert_eq!(AlgebraDescriptor::new(2, 2, Hopf::Grouplike).loewy_length(), 3);
        assert_eq!(AlgebraDescriptor::new(3, 2, Hopf::Grouplike).loewy_length(), 5);
        assert_eq!(AlgebraDescriptor::new(5, 3, Hopf::Grouplike).loewy_length(), 13);
    }
}
