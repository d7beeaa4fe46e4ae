//! The commutative graded ring `Gamma` modelling the stable endomorphism
//! ring of the idempotent truncations, and truncated products in it.
//!
//! For `p = 2`, `Gamma` is the polynomial cohomology ring `k[y_1..y_s]`.
//! For odd `p`, `Gamma = k[z_1..z_s] (x) Theta` where `Theta` replaces the
//! exterior generators by square-zero ones: `n'_i n'_j = 0`, and `n'_i x`
//! dies whenever `n_i x` dies in the exterior algebra. Monomials are encoded
//! by the same exponent vectors that label resolution generators (`a_i =
//! eps_i + 2 b_i`), so the vector-space identification with cohomology is
//! the identity on coordinates, and only the multiplication differs.
//!
//! An odd monomial is stored as `n'_i . (even part)` with `i` the smallest
//! index in its support. For `s <= 2` every product of basis monomials lands
//! back in this basis; for `s >= 3` some products of odd monomials with even
//! ones fall outside the encodable set, and multiplication reports them as
//! unsupported rather than guessing.

use crate::error::Error;
use crate::resolution::{weight_vectors, CohomologyClass, MinimalResolution};
use crate::Result;

/// Ring parameters; all arithmetic routes through here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaRing {
    pub p: u32,
    pub s: usize,
}

/// A homogeneous element, as coefficients on the degree's monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaElement {
    pub degree: usize,
    pub coeffs: Vec<u32>,
}

impl GammaElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&x| x == 0)
    }
}

impl GammaRing {
    pub fn new(p: u32, s: usize) -> Self {
        GammaRing { p, s }
    }

    pub fn basis(&self, degree: usize) -> Vec<Vec<u32>> {
        weight_vectors(self.s, degree)
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.basis(degree).len()
    }

    pub fn zero(&self, degree: usize) -> GammaElement {
        GammaElement {
            degree,
            coeffs: vec![0; self.dim(degree)],
        }
    }

    pub fn one(&self) -> GammaElement {
        GammaElement {
            degree: 0,
            coeffs: vec![1],
        }
    }

    pub fn monomial(&self, exps: &[u32]) -> GammaElement {
        let degree = exps.iter().sum::<u32>() as usize;
        let basis = self.basis(degree);
        let idx = basis.iter().position(|b| b == exps).expect("monomial");
        let mut coeffs = vec![0; basis.len()];
        coeffs[idx] = 1;
        GammaElement { degree, coeffs }
    }

    /// Product of two basis monomials: `None` means zero in `Gamma`.
    fn mono_product(&self, a: &[u32], b: &[u32]) -> Result<Option<(Vec<u32>, u32)>> {
        if self.p == 2 {
            let sum: Vec<u32> = a.iter().zip(b.iter()).map(|(&x, &y)| x + y).collect();
            return Ok(Some((sum, 1)));
        }
        let split = |v: &[u32]| -> (Vec<u32>, Vec<u32>) {
            let eps: Vec<u32> = v.iter().map(|&x| x % 2).collect();
            let zeta: Vec<u32> = v.iter().map(|&x| x / 2).collect();
            (eps, zeta)
        };
        let (ea, za) = split(a);
        let (eb, zb) = split(b);
        let parity = |e: &[u32]| e.iter().sum::<u32>() % 2;
        let (pa, pb) = (parity(&ea), parity(&eb));
        if pa == 1 && pb == 1 {
            return Ok(None);
        }
        // split an odd word into its marker index and even remainder
        let decompose = |e: &[u32]| -> (Option<usize>, Vec<u32>) {
            if parity(e) == 0 {
                (None, e.to_vec())
            } else {
                let i = e.iter().position(|&x| x == 1).unwrap();
                let mut rest = e.to_vec();
                rest[i] = 0;
                (Some(i), rest)
            }
        };
        let (ma, ra) = decompose(&ea);
        let (mb, rb) = decompose(&eb);
        let marker = ma.or(mb);
        // exterior product of the even remainders
        let mut supp_sign = 0u32;
        let mut merged = vec![0u32; self.s];
        for i in 0..self.s {
            if ra[i] == 1 && rb[i] == 1 {
                return Ok(None);
            }
            merged[i] = ra[i] + rb[i];
        }
        for i in 0..self.s {
            if ra[i] == 1 {
                for j in 0..i {
                    if rb[j] == 1 {
                        supp_sign ^= 1;
                    }
                }
            }
        }
        if let Some(i) = marker {
            // square-zero marker: dies against its own variable
            if merged[i] == 1 {
                return Ok(None);
            }
            if merged[..i].iter().any(|&x| x == 1) {
                return Err(Error::Unsupported(
                    "Gamma product leaves the encodable basis (s >= 3 odd word)".into(),
                ));
            }
            merged[i] = 1;
        }
        let mut out = vec![0u32; self.s];
        for i in 0..self.s {
            out[i] = merged[i] + 2 * (za[i] + zb[i]);
        }
        let coeff = if supp_sign == 0 { 1 } else { self.p - 1 };
        Ok(Some((out, coeff)))
    }

    pub fn multiply(&self, a: &GammaElement, b: &GammaElement) -> Result<GammaElement> {
        let degree = a.degree + b.degree;
        let basis_a = self.basis(a.degree);
        let basis_b = self.basis(b.degree);
        let basis_out = self.basis(degree);
        let mut coeffs = vec![0u32; basis_out.len()];
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coeffs.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                if let Some((mono, sign)) = self.mono_product(&basis_a[i], &basis_b[j])? {
                    let idx = basis_out
                        .iter()
                        .position(|m| *m == mono)
                        .expect("product monomial in basis");
                    coeffs[idx] = (coeffs[idx] + ca * cb % self.p * sign) % self.p;
                }
            }
        }
        Ok(GammaElement { degree, coeffs })
    }

    /// Monomials of the even coefficient subring used for span computations:
    /// pure powers of the degree-2 generators for odd `p`, everything for
    /// `p = 2`.
    pub fn ev_monomials(&self, degree: usize) -> Vec<Vec<u32>> {
        if self.p == 2 {
            return self.basis(degree);
        }
        if degree % 2 == 1 {
            return Vec::new();
        }
        weight_vectors(self.s, degree / 2)
            .into_iter()
            .map(|b| b.iter().map(|&x| 2 * x).collect())
            .collect()
    }
}

/// Transport between cohomology classes and `Gamma` coordinates; the bases
/// share labels so both directions are coordinatewise.
pub fn class_to_gamma(class: &CohomologyClass) -> GammaElement {
    GammaElement {
        degree: class.degree,
        coeffs: class.vector.clone(),
    }
}

pub fn gamma_to_class(g: &GammaElement, res: &MinimalResolution) -> Result<CohomologyClass> {
    if g.degree > res.len {
        return Err(Error::TruncationTooShort {
            needed: g.degree,
            have: res.len,
        });
    }
    Ok(CohomologyClass {
        degree: g.degree,
        vector: g.coeffs.clone(),
    })
}

/// A truncated element of the endomorphism-ring model: components
/// `gamma_0..gamma_N` with `gamma_i` homogeneous of degree `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndElement {
    pub ring: GammaRing,
    pub comps: Vec<GammaElement>,
}

impl EndElement {
    pub fn zero(ring: GammaRing, bound: usize) -> Self {
        let comps = (0..=bound).map(|d| ring.zero(d)).collect();
        EndElement { ring, comps }
    }

    pub fn unit(ring: GammaRing, bound: usize) -> Self {
        let mut e = Self::zero(ring, bound);
        e.comps[0] = ring.one();
        e
    }

    pub fn bound(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn from_gamma(ring: GammaRing, g: &GammaElement, bound: usize) -> Self {
        let mut e = Self::zero(ring, bound);
        if g.degree <= bound {
            e.comps[g.degree] = g.clone();
        }
        e
    }

    pub fn from_class(ring: GammaRing, class: &CohomologyClass, bound: usize) -> Self {
        Self::from_gamma(ring, &class_to_gamma(class), bound)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Least degree with a nonzero component.
    pub fn degree(&self) -> Option<usize> {
        self.comps.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, bound: usize) -> EndElement {
        let mut e = Self::zero(self.ring, bound);
        for d in 0..=bound.min(self.bound()) {
            e.comps[d] = self.comps[d].clone();
        }
        e
    }

    pub fn add(&self, other: &EndElement) -> EndElement {
        let bound = self.bound().min(other.bound());
        let mut e = Self::zero(self.ring, bound);
        for d in 0..=bound {
            let mut c = self.comps[d].clone();
            for (x, y) in c.coeffs.iter_mut().zip(other.comps[d].coeffs.iter()) {
                *x = (*x + y) % self.ring.p;
            }
            e.comps[d] = c;
        }
        e
    }

    pub fn scale(&self, f: u32) -> EndElement {
        let mut e = self.clone();
        for c in e.comps.iter_mut() {
            for x in c.coeffs.iter_mut() {
                *x = *x * f % self.ring.p;
            }
        }
        e
    }

    /// Truncated convolution; the result bound is the minimum of the inputs.
    pub fn multiply(&self, other: &EndElement) -> Result<EndElement> {
        let bound = self.bound().min(other.bound());
        let mut out = Self::zero(self.ring, bound);
        for n in 0..=bound {
            let mut acc = self.ring.zero(n);
            for i in 0..=n {
                let a = &self.comps[i];
                let b = &other.comps[n - i];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let prod = self.ring.multiply(a, b)?;
                for (x, y) in acc.coeffs.iter_mut().zip(prod.coeffs.iter()) {
                    *x = (*x + y) % self.ring.p;
                }
            }
            out.comps[n] = acc;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<EndElement> {
        let mut acc = Self::unit(self.ring, self.bound());
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Invertible iff the degree-zero component is a nonzero scalar.
    pub fn is_invertible(&self) -> bool {
        !self.comps[0].is_zero()
    }

    /// Truncated inverse by solving the convolution equations degree by
    /// degree.
    pub fn inverse(&self) -> Result<EndElement> {
        if !self.is_invertible() {
            return Err(Error::SolveFailed("element not invertible".into()));
        }
        let p = self.ring.p;
        let a0 = self.comps[0].coeffs[0];
        let a0inv = crate::fp::inv_mod(a0, p);
        let bound = self.bound();
        let mut inv = Self::zero(self.ring, bound);
        inv.comps[0] = GammaElement {
            degree: 0,
            coeffs: vec![a0inv],
        };
        for n in 1..=bound {
            // a_0 b_n = -(sum_{i>=1} a_i b_{n-i})
            let mut acc = self.ring.zero(n);
            for i in 1..=n {
                let a = &self.comps[i];
                let b = &inv.comps[n - i];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let prod = self.ring.multiply(a, b)?;
                for (x, y) in acc.coeffs.iter_mut().zip(prod.coeffs.iter()) {
                    *x = (*x + y) % p;
                }
            }
            for x in acc.coeffs.iter_mut() {
                *x = (p - *x) % p * a0inv % p;
            }
            inv.comps[n] = acc;
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_is_neutral() {
        let ring = GammaRing::new(3, 1);
        let one = EndElement::unit(ring, 6);
        let mut a = EndElement::zero(ring, 6);
        a.comps[1] = ring.monomial(&[1]);
        a.comps[2] = ring.monomial(&[2]);
        let prod = one.multiply(&a).unwrap();
        assert_eq!(prod, a);
    }

    #[test]
    fn square_zero_markers() {
        // n'_1 n'_1 = 0 for odd p
        let ring = GammaRing::new(3, 1);
        let eta = ring.monomial(&[1]);
        let sq = ring.multiply(&eta, &eta).unwrap();
        assert!(sq.is_zero());
        // but zeta eta' != 0
        let zeta = ring.monomial(&[2]);
        let ze = ring.multiply(&zeta, &eta).unwrap();
        assert_eq!(ze, ring.monomial(&[3]));
    }

    #[test]
    fn p2_is_polynomial() {
        let ring = GammaRing::new(2, 1);
        let y = ring.monomial(&[1]);
        let mut pw = y.clone();
        for d in 2..=6 {
            pw = ring.multiply(&pw, &y).unwrap();
            assert_eq!(pw, ring.monomial(&[d]));
        }
    }

    #[test]
    fn commutative_and_associative_small() {
        // exhaustive on monomials of degree <= 4, s <= 2, p in {2, 3}
        for p in [2u32, 3] {
            for s in [1usize, 2] {
                let ring = GammaRing::new(p, s);
                let mut monos = Vec::new();
                for d in 0..=4 {
                    for b in ring.basis(d) {
                        monos.push(ring.monomial(&b));
                    }
                }
                for a in &monos {
                    for b in &monos {
                        let ab = ring.multiply(a, b).unwrap();
                        let ba = ring.multiply(b, a).unwrap();
                        assert_eq!(ab, ba, "commutativity p={p} s={s}");
                        for c in &monos {
                            if a.degree + b.degree + c.degree > 6 {
                                continue;
                            }
                            let l = ring.multiply(&ab, c).unwrap();
                            let r = ring.multiply(a, &ring.multiply(b, c).unwrap()).unwrap();
                            assert_eq!(l, r, "associativity p={p} s={s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn odd_times_odd_vanishes_in_convolution() {
        let ring = GammaRing::new(3, 1);
        let mut a = EndElement::zero(ring, 6);
        a.comps[1] = ring.monomial(&[1]);
        let sq = a.multiply(&a).unwrap();
        assert!(sq.is_zero());
    }

    #[test]
    fn p2_convolution_square() {
        // (0, y, 0, ..) squared = (0, 0, y^2, 0, ..)
        let ring = GammaRing::new(2, 1);
        let mut a = EndElement::zero(ring, 6);
        a.comps[1] = ring.monomial(&[1]);
        let sq = a.multiply(&a).unwrap();
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(sq.comps[2], ring.monomial(&[2]));
    }

    #[test]
    fn invertibility_and_inverse() {
        let ring = GammaRing::new(2, 1);
        let mut a = EndElement::unit(ring, 8);
        a.comps[1] = ring.monomial(&[1]);
        assert!(a.is_invertible());
        let inv = a.inverse().unwrap();
        let prod = a.multiply(&inv).unwrap();
        assert_eq!(prod, EndElement::unit(ring, 8));
        let mut b = EndElement::zero(ring, 4);
        b.comps[2] = ring.monomial(&[2]);
        assert!(!b.is_invertible());
    }

    #[test]
    fn ev_monomials_shape() {
        let ring = GammaRing::new(3, 1);
        assert_eq!(ring.ev_monomials(2), vec![vec![2]]);
        assert!(ring.ev_monomials(3).is_empty());
        let ring2 = GammaRing::new(2, 1);
        assert_eq!(ring2.ev_monomials(3), vec![vec![3]]);
    }

    #[test]
    fn degree_superadditive() {
        let ring = GammaRing::new(3, 2);
        let mut a = EndElement::zero(ring, 8);
        a.comps[2] = ring.monomial(&[0, 2]);
        let mut b = EndElement::zero(ring, 8);
        b.comps[3] = ring.monomial(&[1, 2]);
        let ab = a.multiply(&b).unwrap();
        assert!(ab.degree().map_or(true, |d| d >= 5));
    }
}
