//! Minimal free resolutions of `k` over `kH = k[x_1..x_s]/(x_i^p)`,
//! cohomology classes as cocycles on the generators, chain-map lifting, and
//! chain-level cup products.
//!
//! The resolution is the total complex of `s` periodic one-variable
//! resolutions (`.. -x^{p-1}-> kA -x-> kA -> k`), with Koszul signs. Free
//! generators in homological degree `n` are labelled by exponent vectors of
//! weight `n`, so minimality gives `Hom(P_n, k) = H^n(H, k)` on the nose and
//! the generator labels double as the monomial basis of cohomology.

use crate::algebra::MonomialTable;
use crate::error::Error;
use crate::fp::{FpMatrix, RrefSolver};
use crate::Result;

/// All exponent vectors in `N^s` of weight `n`, lexicographically ascending.
pub fn weight_vectors(s: usize, n: usize) -> Vec<Vec<u32>> {
    fn rec(s: usize, n: usize, out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>) {
        if s == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if s == 1 {
            prefix.push(n as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=n {
            prefix.push(first as u32);
            rec(s - 1, n - first, out, prefix);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, n, &mut out, &mut Vec::new());
    out
}

/// A matrix over `kH`: each entry is a coefficient vector on the monomial
/// basis of `kH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KhMatrix {
    pub p: u32,
    pub s: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

impl KhMatrix {
    pub fn zeros(p: u32, s: usize, rows: usize, cols: usize) -> Self {
        let hd = (p as usize).pow(s as u32);
        KhMatrix {
            p,
            s,
            rows,
            cols,
            entries: vec![vec![0; hd]; rows * cols],
        }
    }

    pub fn identity(p: u32, s: usize, n: usize) -> Self {
        let mut m = Self::zeros(p, s, n, n);
        for i in 0..n {
            m.entries[i * n + i][0] = 1;
        }
        m
    }

    pub fn entry(&self, i: usize, j: usize) -> &[u32] {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Vec<u32> {
        &mut self.entries[i * self.cols + j]
    }

    pub fn compose(&self, other: &KhMatrix) -> Result<KhMatrix> {
        if self.cols != other.rows || self.p != other.p || self.s != other.s {
            return Err(Error::ShapeMismatch("KhMatrix compose".into()));
        }
        let table = MonomialTable::new(self.p, self.s);
        let mut out = KhMatrix::zeros(self.p, self.s, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = vec![0u32; table.dim];
                for l in 0..self.cols {
                    let prod = table.poly_mul(self.entry(i, l), other.entry(l, j), self.p);
                    for (a, x) in acc.iter_mut().zip(prod.iter()) {
                        *a = (*a + x) % self.p;
                    }
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// k-linear expansion: block `(i, j)` is the regular representation of
    /// the entry. Free-module basis order is generator-major.
    pub fn expand(&self) -> FpMatrix {
        let table = MonomialTable::new(self.p, self.s);
        let hd = table.dim;
        let mut out = FpMatrix::zeros(self.p, self.rows * hd, self.cols * hd);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let block = table.regular_rep(self.entry(i, j), self.p);
                for a in 0..hd {
                    for b in 0..hd {
                        let v = block.get(a, b);
                        if v != 0 {
                            out.data[(i * hd + a) * out.cols + (j * hd + b)] = v;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Constant terms as a scalar matrix (image under the augmentation).
    pub fn constant_term(&self) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * self.cols + j] = self.entry(i, j)[0];
            }
        }
        m
    }

    pub fn add(&self, other: &KhMatrix) -> Result<KhMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("KhMatrix add".into()));
        }
        let mut out = self.clone();
        for (e, f) in out.entries.iter_mut().zip(other.entries.iter()) {
            for (a, b) in e.iter_mut().zip(f.iter()) {
                *a = (*a + b) % self.p;
            }
        }
        Ok(out)
    }
}

/// Minimal free resolution `.. -> P_1 -> P_0 -> k -> 0` over `kH`, truncated
/// at length `len`: `boundaries[n]` is the map `P_{n+1} -> P_n`.
pub struct MinimalResolution {
    pub p: u32,
    pub s: usize,
    pub len: usize,
    pub ranks: Vec<usize>,
    pub gens: Vec<Vec<Vec<u32>>>,
    pub boundaries: Vec<KhMatrix>,
    expanded: Vec<FpMatrix>,
    solvers: Vec<RrefSolver>,
}

impl MinimalResolution {
    /// Build the total complex of `s` periodic one-variable resolutions up
    /// to homological degree `len`.
    pub fn build(p: u32, s: usize, len: usize) -> Result<MinimalResolution> {
        let mut gens = Vec::with_capacity(len + 1);
        for n in 0..=len {
            gens.push(weight_vectors(s, n));
        }
        let ranks: Vec<usize> = gens.iter().map(|g| g.len()).collect();
        let table = MonomialTable::new(p, s);
        let mut boundaries = Vec::with_capacity(len);
        for n in 1..=len {
            let src = &gens[n];
            let dst = &gens[n - 1];
            let mut d = KhMatrix::zeros(p, s, dst.len(), src.len());
            for (col, a) in src.iter().enumerate() {
                for i in 0..s {
                    if a[i] == 0 {
                        continue;
                    }
                    let mut b = a.clone();
                    b[i] -= 1;
                    let row = dst.iter().position(|g| *g == b).expect("generator");
                    // x_i if a_i odd, x_i^{p-1} if a_i even; Koszul sign from
                    // the preceding degrees
                    let e = if a[i] % 2 == 1 { 1 } else { p - 1 };
                    let mut exps = vec![0u32; s];
                    exps[i] = e;
                    let idx = table.index(&exps);
                    let presum: u32 = a[..i].iter().sum();
                    let sign = if presum % 2 == 0 { 1 } else { p - 1 };
                    d.entry_mut(row, col)[idx] = sign;
                }
            }
            boundaries.push(d);
        }
        let expanded: Vec<FpMatrix> = boundaries.iter().map(|b| b.expand()).collect();
        let solvers = expanded.iter().map(|e| RrefSolver::new(e.clone())).collect();
        let res = MinimalResolution {
            p,
            s,
            len,
            ranks,
            gens,
            boundaries,
            expanded,
            solvers,
        };
        res.validate()?;
        Ok(res)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `kH` dimension.
    pub fn h_dim(&self) -> usize {
        (self.p as usize).pow(self.s as u32)
    }

    pub fn boundary(&self, n: usize) -> &KhMatrix {
        &self.boundaries[n - 1]
    }

    pub fn boundary_expanded(&self, n: usize) -> &FpMatrix {
        &self.expanded[n - 1]
    }

    fn validate(&self) -> Result<()> {
        let hd = self.h_dim();
        for n in 2..=self.len {
            let dd = self.boundary(n - 1).compose(self.boundary(n))?;
            if !dd.is_zero() {
                return Err(Error::SolveFailed(format!("dd != 0 at degree {n}")));
            }
        }
        // minimality: no constant terms
        for b in &self.boundaries {
            if !b.constant_term().is_zero() {
                return Err(Error::SolveFailed("boundary not minimal".into()));
            }
        }
        // exactness by rank count at internal degrees
        for n in 1..self.len {
            let rk_n = self.boundary_expanded(n).rank();
            let rk_n1 = self.boundary_expanded(n + 1).rank();
            let need = self.rank(n) * hd;
            if rk_n + rk_n1 != need {
                return Err(Error::SolveFailed(format!(
                    "homology at degree {n}: {rk_n} + {rk_n1} != {need}"
                )));
            }
        }
        if self.len >= 1 {
            let rk1 = self.boundary_expanded(1).rank();
            if rk1 + 1 != hd {
                return Err(Error::SolveFailed("image of d_1 is not ker(aug)".into()));
            }
        }
        Ok(())
    }
}

/// A cohomology class of `H^d(H, k)`: by minimality, a functional on the
/// degree-`d` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub vector: Vec<u32>,
}

impl CohomologyClass {
    pub fn zero(res: &MinimalResolution, degree: usize) -> Self {
        CohomologyClass {
            degree,
            vector: vec![0; res.rank(degree)],
        }
    }

    pub fn unit(res: &MinimalResolution) -> Self {
        let mut c = Self::zero(res, 0);
        c.vector[0] = 1;
        c
    }

    /// Dual of a single degree-`d` generator.
    pub fn generator_dual(res: &MinimalResolution, degree: usize, idx: usize) -> Self {
        let mut c = Self::zero(res, degree);
        c.vector[idx] = 1;
        c
    }

    /// The class dual to the generator with a given exponent label.
    pub fn from_exponents(res: &MinimalResolution, exps: &[u32]) -> Result<Self> {
        let degree = exps.iter().sum::<u32>() as usize;
        if degree > res.len {
            return Err(Error::TruncationTooShort {
                needed: degree,
                have: res.len,
            });
        }
        let idx = res.gens[degree]
            .iter()
            .position(|g| g == exps)
            .ok_or_else(|| Error::Schema("unknown generator label".into()))?;
        Ok(Self::generator_dual(res, degree, idx))
    }

    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(|&x| x == 0)
    }
}

/// A chain-map lift `{gamma_i : P_{d+i} -> P_i}` of a cocycle, for
/// `i <= depth`.
#[derive(Debug, Clone)]
pub struct ChainLift {
    pub degree: usize,
    pub maps: Vec<KhMatrix>,
}

impl ChainLift {
    pub fn map(&self, i: usize) -> &KhMatrix {
        &self.maps[i]
    }
}

/// Lift a cocycle to a chain map by successive solves against the expanded
/// boundaries; the particular solution of each solve is the deterministic
/// echelon one, so the lift is reproducible.
pub fn lift_chain_map(
    class: &CohomologyClass,
    res: &MinimalResolution,
    depth: usize,
) -> Result<ChainLift> {
    let d = class.degree;
    if d + depth > res.len {
        return Err(Error::TruncationTooShort {
            needed: d + depth,
            have: res.len,
        });
    }
    let hd = res.h_dim();
    let mut maps: Vec<KhMatrix> = Vec::with_capacity(depth + 1);
    // gamma_0: constants given by the cocycle values
    let mut g0 = KhMatrix::zeros(res.p, res.s, res.rank(0), res.rank(d));
    for (col, &v) in class.vector.iter().enumerate() {
        g0.entry_mut(0, col)[0] = v % res.p;
    }
    maps.push(g0);
    for i in 1..=depth {
        let prev = maps[i - 1].expand();
        let bdy_src = res.boundary_expanded(d + i);
        let mut gi = KhMatrix::zeros(res.p, res.s, res.rank(i), res.rank(d + i));
        let solver = &res.solvers[i - 1];
        for alpha in 0..res.rank(d + i) {
            // rhs = gamma_{i-1}(boundary(e_alpha))
            let col = bdy_src.col(alpha * hd);
            let rhs = prev.mul_vec(&col)?;
            let sol = solver
                .solve_one(&rhs)
                .ok_or_else(|| Error::SolveFailed("chain lift: exactness violated".into()))?;
            for beta in 0..res.rank(i) {
                let coeffs = sol[beta * hd..(beta + 1) * hd].to_vec();
                *gi.entry_mut(beta, alpha) = coeffs;
            }
        }
        maps.push(gi);
    }
    Ok(ChainLift { degree: d, maps })
}

/// Chain-level cup product: the cocycle of the composite chain map,
/// `(g . mu_d)(e_a) = sum_b aug((mu_d)[b, a]) g[b]`.
pub fn cup_product(
    g: &CohomologyClass,
    mu: &CohomologyClass,
    res: &MinimalResolution,
) -> Result<CohomologyClass> {
    let d = g.degree + mu.degree;
    if d > res.len {
        return Err(Error::TruncationTooShort {
            needed: d,
            have: res.len,
        });
    }
    let lift = lift_chain_map(mu, res, g.degree)?;
    let top = lift.map(g.degree);
    let ct = top.constant_term();
    let mut vector = vec![0u32; res.rank(d)];
    for (alpha, v) in vector.iter_mut().enumerate() {
        let mut acc = 0u32;
        for (beta, &gb) in g.vector.iter().enumerate() {
            acc = (acc + gb * ct.get(beta, alpha)) % res.p;
        }
        *v = acc;
    }
    Ok(CohomologyClass { degree: d, vector })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_match_cohomology() {
        // s=1: rank 1 forever; s=2: rank n+1
        let r1 = MinimalResolution::build(2, 1, 8).unwrap();
        assert!(r1.ranks.iter().all(|&b| b == 1));
        let r2 = MinimalResolution::build(2, 2, 8).unwrap();
        for n in 0..=8 {
            assert_eq!(r2.rank(n), n + 1);
        }
        let r3 = MinimalResolution::build(3, 2, 6).unwrap();
        for n in 0..=6 {
            assert_eq!(r3.rank(n), n + 1);
        }
    }

    #[test]
    fn one_variable_boundaries_alternate() {
        let r = MinimalResolution::build(3, 1, 4).unwrap();
        // d_1 = x, d_2 = x^2, d_3 = x, ...
        assert_eq!(r.boundary(1).entry(0, 0)[1], 1);
        assert_eq!(r.boundary(2).entry(0, 0)[2], 1);
        assert_eq!(r.boundary(3).entry(0, 0)[1], 1);
    }

    #[test]
    fn lift_of_unit_is_identity() {
        let res = MinimalResolution::build(2, 2, 5).unwrap();
        let one = CohomologyClass::unit(&res);
        let lift = lift_chain_map(&one, &res, 4).unwrap();
        for i in 0..=4 {
            assert_eq!(*lift.map(i), KhMatrix::identity(2, 2, res.rank(i)));
        }
    }

    #[test]
    fn lift_of_zero_is_zero() {
        let res = MinimalResolution::build(3, 1, 5).unwrap();
        let zero = CohomologyClass::zero(&res, 1);
        let lift = lift_chain_map(&zero, &res, 3).unwrap();
        for i in 0..=3 {
            assert!(lift.map(i).is_zero());
        }
    }

    #[test]
    fn lift_is_chain_map() {
        let res = MinimalResolution::build(3, 2, 6).unwrap();
        let eta = CohomologyClass::from_exponents(&res, &[1, 0]).unwrap();
        let lift = lift_chain_map(&eta, &res, 4).unwrap();
        for i in 1..=4 {
            let lhs = res.boundary(i).compose(lift.map(i)).unwrap();
            let rhs = lift.map(i - 1).compose(res.boundary(1 + i)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn periodic_lift_s1_p2() {
        // degree-1 generator lifts to identity 1x1 matrices
        let res = MinimalResolution::build(2, 1, 6).unwrap();
        let eta = CohomologyClass::generator_dual(&res, 1, 0);
        let lift = lift_chain_map(&eta, &res, 5).unwrap();
        for i in 0..=5 {
            let e = lift.map(i).entry(0, 0);
            assert_eq!(e[0], 1, "constant term at step {i}");
            assert!(e[1..].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn cup_products_polynomial_p2() {
        let res = MinimalResolution::build(2, 1, 8).unwrap();
        let eta = CohomologyClass::generator_dual(&res, 1, 0);
        // eta^2 != 0, eta cup 1 = eta
        let one = CohomologyClass::unit(&res);
        assert_eq!(cup_product(&eta, &one, &res).unwrap(), eta);
        let sq = cup_product(&eta, &eta, &res).unwrap();
        assert_eq!(sq.vector, vec![1]);
        // and all higher powers stay nonzero
        let mut pw = eta.clone();
        for _ in 0..5 {
            pw = cup_product(&pw, &eta, &res).unwrap();
            assert!(!pw.is_zero());
        }
    }

    #[test]
    fn cup_products_exterior_p_odd() {
        for p in [3u32, 5] {
            let res = MinimalResolution::build(p, 1, 6).unwrap();
            let eta = CohomologyClass::generator_dual(&res, 1, 0);
            let sq = cup_product(&eta, &eta, &res).unwrap();
            assert!(sq.is_zero(), "eta^2 = 0 for p = {p}");
            let zeta = CohomologyClass::generator_dual(&res, 2, 0);
            let ez = cup_product(&eta, &zeta, &res).unwrap();
            let ze = cup_product(&zeta, &eta, &res).unwrap();
            assert!(!ez.is_zero());
            assert_eq!(ez, ze);
            let zz = cup_product(&zeta, &zeta, &res).unwrap();
            assert!(!zz.is_zero());
        }
    }

    #[test]
    fn graded_commutativity_s2_p3() {
        let res = MinimalResolution::build(3, 2, 5).unwrap();
        let e1 = CohomologyClass::from_exponents(&res, &[1, 0]).unwrap();
        let e2 = CohomologyClass::from_exponents(&res, &[0, 1]).unwrap();
        let ab = cup_product(&e1, &e2, &res).unwrap();
        let ba = cup_product(&e2, &e1, &res).unwrap();
        // odd * odd anticommutes
        let neg: Vec<u32> = ba.vector.iter().map(|&x| (3 - x) % 3).collect();
        assert_eq!(ab.vector, neg);
        assert!(!ab.is_zero());
        // even classes commute with everything
        let z1 = CohomologyClass::from_exponents(&res, &[2, 0]).unwrap();
        let cz = cup_product(&z1, &e2, &res).unwrap();
        let zc = cup_product(&e2, &z1, &res).unwrap();
        assert_eq!(cz, zc);
    }

    #[test]
    fn weight_vector_order() {
        assert_eq!(
            weight_vectors(2, 2),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(weight_vectors(1, 3), vec![vec![3]]);
        assert_eq!(weight_vectors(0, 0), vec![Vec::<u32>::new()]);
    }
}
