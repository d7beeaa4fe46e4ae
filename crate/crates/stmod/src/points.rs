//! Pi-points, restrictions, splittings `kG = kH (x) kC`, and the coefficient
//! spaces `Gamma(M) = M^C / Z^{p-1} M`.
//!
//! A pi-point is a flat map `k[t]/(t^p) -> kG` recorded by the coefficients
//! of `t`'s image: a nonzero linear part plus an optional tail in `Rad^2`.
//! Restricting a module along it means evaluating that element in the action
//! algebra and reading off the Jordan type of the resulting nilpotent.

use crate::algebra::{complement_indices, FpModule};
use crate::error::Error;
use crate::fp::{inv_mod, FpMatrix, RrefSolver};
use crate::Result;
use serde::{Deserialize, Serialize};

/// A pi-point defined over the prime field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiPoint {
    /// Coefficients `c_1..c_r` of the linear part, not all zero.
    pub linear: Vec<u32>,
    /// Tail in `Rad^2`, as (exponent vector, coefficient) pairs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tail: Vec<(Vec<u32>, u32)>,
}

impl PiPoint {
    pub fn linear_only(coeffs: &[u32]) -> Self {
        PiPoint {
            linear: coeffs.to_vec(),
            tail: Vec::new(),
        }
    }

    pub fn validate(&self, p: u32, r: usize) -> Result<()> {
        if self.linear.len() != r {
            return Err(Error::ShapeMismatch("pi-point linear part length".into()));
        }
        if self.linear.iter().all(|&c| c % p == 0) {
            return Err(Error::ZeroLinearPart);
        }
        for (e, _) in &self.tail {
            if e.len() != r {
                return Err(Error::ShapeMismatch("pi-point tail exponent length".into()));
            }
            let deg: u32 = e.iter().sum();
            if deg < 2 {
                return Err(Error::Schema("tail term not in Rad^2".into()));
            }
            if e.iter().any(|&x| x >= p) {
                return Err(Error::Schema("tail exponent out of range".into()));
            }
        }
        Ok(())
    }

    /// The acting element `Z_M = sum c_i A_i + tail(A)` on a module.
    pub fn act_on(&self, m: &FpModule) -> Result<FpMatrix> {
        self.validate(m.p, m.r)?;
        let mut z = FpMatrix::zeros(m.p, m.dim, m.dim);
        for (i, &c) in self.linear.iter().enumerate() {
            if c % m.p != 0 {
                z = z.add(&m.action[i].scale(c))?;
            }
        }
        for (e, c) in &self.tail {
            if c % m.p != 0 {
                z = z.add(&m.monomial_action(e)?.scale(*c))?;
            }
        }
        Ok(z)
    }
}

/// Multiset of Jordan block sizes of a p-nilpotent matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanType {
    pub p: u32,
    /// `blocks[s]` = number of blocks of size `s+1`, for sizes `1..=p`.
    pub blocks: Vec<usize>,
}

impl JordanType {
    pub fn total_dim(&self) -> usize {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, &n)| (i + 1) * n)
            .sum()
    }

    /// Dimension of the largest free direct summand.
    pub fn projective_dim(&self) -> usize {
        self.blocks[self.p as usize - 1] * self.p as usize
    }

    pub fn nonprojective_dim(&self) -> usize {
        self.total_dim() - self.projective_dim()
    }

    pub fn is_projective(&self) -> bool {
        self.nonprojective_dim() == 0
    }

    /// Block sizes < p, as a sorted multiset.
    pub fn nonprojective_blocks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &n) in self.blocks.iter().enumerate() {
            if i + 1 < self.p as usize {
                out.extend(std::iter::repeat(i + 1).take(n));
            }
        }
        out
    }
}

/// Jordan type of a nilpotent matrix with `N^p = 0`.
pub fn jordan_type(z: &FpMatrix, p: u32) -> Result<JordanType> {
    if z.rows != z.cols {
        return Err(Error::ShapeMismatch("jordan_type of non-square".into()));
    }
    let n = z.rows;
    let mut ranks = Vec::with_capacity(p as usize + 2);
    ranks.push(n);
    let mut pw = FpMatrix::identity(z.p, n);
    for _ in 1..=p + 1 {
        pw = pw.mul(z)?;
        ranks.push(pw.rank());
    }
    if ranks[p as usize] != 0 {
        return Err(Error::InvalidModule("matrix not p-nilpotent".into()));
    }
    let mut blocks = vec![0usize; p as usize];
    for s in 1..=p as usize {
        let b = ranks[s - 1] + ranks[s + 1];
        let b = b as isize - 2 * ranks[s] as isize;
        blocks[s - 1] = b as usize;
    }
    Ok(JordanType { p, blocks })
}

/// Restriction of a module along a pi-point: the one-generator module given
/// by `Z_M`, reported through its Jordan type.
pub fn restrict(m: &FpModule, pt: &PiPoint) -> Result<(FpMatrix, JordanType)> {
    let z = pt.act_on(m)?;
    let jt = jordan_type(&z, m.p)?;
    Ok((z, jt))
}

/// A splitting `kG = kH (x) kC` attached to a pi-point: `kC` is generated by
/// the point's element `Z`, `kH` by the standard generators away from the
/// pivot slot.
///
/// Pivot rule: the leftmost nonzero coefficient of the linear part is the
/// pivot; the remaining standard generators fill the `X_i` in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub p: u32,
    pub r: usize,
    pub point: PiPoint,
    /// Index of the pivot generator.
    pub pivot: usize,
    /// Standard-generator indices of `X_1..X_{r-1}`, in order.
    pub h_gens: Vec<usize>,
}

impl Splitting {
    pub fn s(&self) -> usize {
        self.r - 1
    }

    /// Action matrices `(X_1..X_{r-1}, Z)` of a module given in standard
    /// coordinates.
    pub fn split_actions(&self, m: &FpModule) -> Result<(Vec<FpMatrix>, FpMatrix)> {
        let xs = self
            .h_gens
            .iter()
            .map(|&i| m.action[i].clone())
            .collect::<Vec<_>>();
        let z = self.point.act_on(m)?;
        Ok((xs, z))
    }

    pub fn z_action(&self, m: &FpModule) -> Result<FpMatrix> {
        self.point.act_on(m)
    }

    /// Reassemble standard `t_i` actions from split actions. The pivot
    /// action is recovered from `Z = c_pi t_pi + sum c_j t_j + tail(t)` by a
    /// fixed-point iteration; the tail contributes only in degrees >= 2, so
    /// the iteration stabilizes within the Loewy length.
    pub fn standard_actions(
        &self,
        xs: &[FpMatrix],
        z: &FpMatrix,
        dim: usize,
    ) -> Result<Vec<FpMatrix>> {
        if xs.len() != self.r - 1 {
            return Err(Error::ShapeMismatch("split action count".into()));
        }
        let p = self.p;
        let mut actions = vec![FpMatrix::zeros(p, dim, dim); self.r];
        for (k, &i) in self.h_gens.iter().enumerate() {
            actions[i] = xs[k].clone();
        }
        let c_pivot = self.point.linear[self.pivot] % p;
        let c_inv = inv_mod(c_pivot, p);
        let mut t_pivot = FpMatrix::zeros(p, dim, dim);
        let max_iter = self.r * (p as usize - 1) + 2;
        let mut stable = false;
        for _ in 0..max_iter {
            actions[self.pivot] = t_pivot.clone();
            let mut rest = FpMatrix::zeros(p, dim, dim);
            for (j, &c) in self.point.linear.iter().enumerate() {
                if j != self.pivot && c % p != 0 {
                    rest = rest.add(&actions[j].scale(c))?;
                }
            }
            for (e, c) in &self.point.tail {
                if c % p != 0 {
                    let tmp = FpModule::from_parts_unchecked(p, self.r, dim, actions.clone());
                    rest = rest.add(&tmp.monomial_action(e)?.scale(*c))?;
                }
            }
            let next = z.sub(&rest)?.scale(c_inv);
            if next == t_pivot {
                stable = true;
                break;
            }
            t_pivot = next;
        }
        if !stable {
            return Err(Error::SolveFailed(
                "pivot action iteration did not stabilize".into(),
            ));
        }
        actions[self.pivot] = t_pivot;
        Ok(actions)
    }
}

/// Completion of a pi-point to a splitting, with the deterministic pivot
/// rule above.
pub fn split_along(pt: &PiPoint, p: u32, r: usize) -> Result<Splitting> {
    pt.validate(p, r)?;
    let pivot = pt
        .linear
        .iter()
        .position(|&c| c % p != 0)
        .ok_or(Error::ZeroLinearPart)?;
    let h_gens = (0..r).filter(|&i| i != pivot).collect();
    Ok(Splitting {
        p,
        r,
        point: pt.clone(),
        pivot,
        h_gens,
    })
}

/// A quotient `V / W` of subspaces of a fixed ambient space, with chosen
/// representatives and a coordinate solver.
pub struct QuotientSpace {
    pub ambient: usize,
    /// basis of W (columns)
    pub sub: FpMatrix,
    /// representative vectors completing W to V (columns)
    pub reps: FpMatrix,
    solver: RrefSolver,
}

impl QuotientSpace {
    /// Build from column bases of `W <= V`.
    pub fn new(sub: FpMatrix, full: FpMatrix) -> Result<QuotientSpace> {
        let ambient = full.rows;
        if sub.rows != ambient {
            return Err(Error::ShapeMismatch("quotient ambient".into()));
        }
        let joint = sub.hstack(&full)?;
        let mut work = joint.clone();
        let info = work.rref_in_place();
        let mut reps_cols = Vec::new();
        for &(_, c) in &info.pivots {
            if c >= sub.cols {
                reps_cols.push(c - sub.cols);
            }
        }
        let mut reps = FpMatrix::zeros(full.p, ambient, reps_cols.len());
        for (k, &c) in reps_cols.iter().enumerate() {
            for i in 0..ambient {
                reps.data[i * reps.cols + k] = full.get(i, c);
            }
        }
        let solver = RrefSolver::new(sub.hstack(&reps)?);
        Ok(QuotientSpace {
            ambient,
            sub,
            reps,
            solver,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols
    }

    /// Coordinates of `v`'s class, or an error if `v` is not in `V + W`.
    pub fn coords(&self, v: &[u32]) -> Result<Vec<u32>> {
        let x = self
            .solver
            .solve_one(v)
            .ok_or_else(|| Error::SolveFailed("vector not in quotient domain".into()))?;
        Ok(x[self.sub.cols..].to_vec())
    }

    /// Representative vector of a coordinate tuple.
    pub fn rep_of(&self, coords: &[u32]) -> Result<Vec<u32>> {
        self.reps.mul_vec(coords)
    }
}

/// `Gamma(M) = M^C / Z^{p-1} M` where `M^C = ker Z`.
pub fn gamma_space(m: &FpModule, split: &Splitting) -> Result<QuotientSpace> {
    let z = split.z_action(m)?;
    let full = z.kernel_basis();
    let zp1 = z.pow(m.p - 1)?;
    let sub = zp1.image_basis();
    QuotientSpace::new(sub, full)
}

/// `Gamma'(M) = ker(Z^{p-1}) / Z M`: the odd-layer coefficient space in its
/// operational form.
pub fn gamma_prime_space(m: &FpModule, split: &Splitting) -> Result<QuotientSpace> {
    let z = split.z_action(m)?;
    let full = z.pow(m.p - 1)?.kernel_basis();
    let sub = z.image_basis();
    QuotientSpace::new(sub, full)
}

/// The inflation to `kG` of a `kC`-module given by a single nilpotent `w`:
/// the `X_i` act as zero, `Z` acts as `w`.
pub fn inflate_from_c(w: &FpMatrix, split: &Splitting) -> Result<FpModule> {
    let dim = w.rows;
    let xs = vec![FpMatrix::zeros(split.p, dim, dim); split.r - 1];
    let actions = split.standard_actions(&xs, w, dim)?;
    let m = FpModule::from_parts_unchecked(split.p, split.r, dim, actions);
    m.validate()?;
    Ok(m)
}

/// The inflation to `kG` of a `kH`-module given by `r-1` commuting
/// nilpotents: `Z` acts as zero.
pub fn inflate_from_h(h_action: &[FpMatrix], split: &Splitting) -> Result<FpModule> {
    if h_action.len() != split.r - 1 {
        return Err(Error::ShapeMismatch("kH action count".into()));
    }
    let dim = h_action.first().map_or(0, |a| a.rows);
    let z = FpMatrix::zeros(split.p, dim, dim);
    let actions = split.standard_actions(h_action, &z, dim)?;
    let m = FpModule::from_parts_unchecked(split.p, split.r, dim, actions);
    m.validate()?;
    Ok(m)
}

/// The regular nilpotent shift on basis `1, Z, .., Z^(p-2)`.
pub fn u_shift_matrix(p: u32) -> FpMatrix {
    let d = p as usize - 1;
    let mut m = FpMatrix::zeros(p, d, d);
    for j in 0..d.saturating_sub(1) {
        m.data[(j + 1) * d + j] = 1;
    }
    m
}

/// The module `U`: inflation of the shift, `dim U = p - 1`, `H` acts
/// trivially.
pub fn module_u(split: &Splitting) -> Result<FpModule> {
    inflate_from_c(&u_shift_matrix(split.p), split)
}

/// `kH` inflated to `kG` (Z acts as zero).
pub fn inflated_kh(split: &Splitting) -> Result<FpModule> {
    let kh = FpModule::regular(split.p, split.r - 1);
    inflate_from_h(&kh.action, split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FpModule;

    #[test]
    fn restrict_regular_is_free() {
        let kg = FpModule::regular(2, 2);
        let pt = PiPoint::linear_only(&[1, 1]);
        let (_, jt) = restrict(&kg, &pt).unwrap();
        assert!(jt.is_projective());
        assert_eq!(jt.blocks, vec![0, 2]);
    }

    #[test]
    fn restrict_trivial_single_block() {
        let k = FpModule::trivial(3, 2);
        let pt = PiPoint::linear_only(&[0, 1]);
        let (_, jt) = restrict(&k, &pt).unwrap();
        assert_eq!(jt.blocks, vec![1, 0, 0]);
    }

    #[test]
    fn split_pivot_rule() {
        // Z = t_r picks pivot r, X_i = t_i
        let pt = PiPoint::linear_only(&[0, 0, 1]);
        let s = split_along(&pt, 2, 3).unwrap();
        assert_eq!(s.pivot, 2);
        assert_eq!(s.h_gens, vec![0, 1]);

        // (1,1): pivot is the leftmost nonzero, so X_1 = t_2
        let pt = PiPoint::linear_only(&[1, 1]);
        let s = split_along(&pt, 2, 2).unwrap();
        assert_eq!(s.pivot, 0);
        assert_eq!(s.h_gens, vec![1]);
    }

    #[test]
    fn split_roundtrip_with_tail() {
        // Z includes the tail; standard_actions must invert the substitution
        let p = 3;
        let pt = PiPoint {
            linear: vec![2, 1],
            tail: vec![(vec![2, 0], 1), (vec![1, 1], 2)],
        };
        let s = split_along(&pt, p, 2).unwrap();
        let m = FpModule::regular(p, 2);
        let (xs, z) = s.split_actions(&m).unwrap();
        let back = s.standard_actions(&xs, &z, m.dim).unwrap();
        assert_eq!(back, m.action);
    }

    #[test]
    fn gamma_of_trivial_and_regular() {
        let pt = PiPoint::linear_only(&[0, 1]);
        let s = split_along(&pt, 2, 2).unwrap();
        let k = FpModule::trivial(2, 2);
        assert_eq!(gamma_space(&k, &s).unwrap().dim(), 1);
        let kg = FpModule::regular(2, 2);
        assert_eq!(gamma_space(&kg, &s).unwrap().dim(), 0);
    }

    #[test]
    fn gamma_of_inflated_kh() {
        // p=2, r=2: kH inflated, Z acts 0: ker Z = M, Z M = 0
        let pt = PiPoint::linear_only(&[0, 1]);
        let s = split_along(&pt, 2, 2).unwrap();
        let m = inflated_kh(&s).unwrap();
        assert_eq!(m.dim, 2);
        assert_eq!(gamma_space(&m, &s).unwrap().dim(), 2);
    }

    #[test]
    fn inflated_kh_restriction_free_at_diagonal() {
        // p=2, r=2, M = kH with Z = t_2 acting 0; at (1,1) blocks = {2}
        let pt = PiPoint::linear_only(&[0, 1]);
        let s = split_along(&pt, 2, 2).unwrap();
        let m = inflated_kh(&s).unwrap();
        let (_, jt) = restrict(&m, &PiPoint::linear_only(&[1, 1])).unwrap();
        assert_eq!(jt.blocks, vec![0, 1]);
    }

    #[test]
    fn u_has_expected_shape() {
        let pt = PiPoint::linear_only(&[0, 1]);
        let s = split_along(&pt, 3, 2).unwrap();
        let u = module_u(&s).unwrap();
        assert_eq!(u.dim, 2);
        // H acts trivially
        assert!(u.action[s.h_gens[0]].is_zero());
        // U^C = span{Z^(p-2)}, Z^(p-1) U = 0
        assert_eq!(gamma_space(&u, &s).unwrap().dim(), 1);
    }

    #[test]
    fn inflation_of_trivial_is_trivial() {
        let pt = PiPoint::linear_only(&[1, 2]);
        let s = split_along(&pt, 3, 2).unwrap();
        let w = FpMatrix::zeros(3, 1, 1);
        let m = inflate_from_c(&w, &s).unwrap();
        assert_eq!(m, FpModule::trivial(3, 2));
    }

    #[test]
    fn restriction_additive_on_sums() {
        let p = 3;
        let pt = PiPoint::linear_only(&[1, 1]);
        let a = FpModule::regular(p, 2);
        let b = FpModule::trivial(p, 2);
        let sum = a.direct_sum(&b).unwrap();
        let (_, ja) = restrict(&a, &pt).unwrap();
        let (_, jb) = restrict(&b, &pt).unwrap();
        let (_, js) = restrict(&sum, &pt).unwrap();
        let merged: Vec<usize> = ja
            .blocks
            .iter()
            .zip(jb.blocks.iter())
            .map(|(&x, &y)| x + y)
            .collect();
        assert_eq!(js.blocks, merged);
    }

    #[test]
    fn zero_linear_part_rejected() {
        let pt = PiPoint::linear_only(&[0, 0]);
        assert!(matches!(split_along(&pt, 2, 2), Err(Error::ZeroLinearPart)));
    }

    #[test]
    fn complement_indices_cover() {
        let m = FpModule::regular(2, 2);
        let rad = m.radical_basis();
        let gens = complement_indices(&rad, m.dim);
        assert_eq!(gens.len(), 1);
    }
}
