//! Finite truncations `E_0 <= E_1 <= ..` of the idempotent module attached
//! to a closed point, and the calculus of maps out of them.
//!
//! `E_n` restricted to `kH` is `P_0 + (P_1 (x) U) + P_2 + ..`: one layer per
//! homological degree of the minimal resolution, with `U` the
//! `(p-1)`-dimensional shift module on the point's side. The `Z`-action
//! climbs the `U`-powers inside a layer and exits through the boundary map
//! into the layer below. The parity-swapped shape (`U` on even layers) is
//! the syzygy of the unswapped one and is used for the commutation checks.
//!
//! Basis order: layer-major, then resolution generator, then `kH`-monomial,
//! then `U`-power. All inclusions, augmentations and lifts use this order.

use crate::algebra::{AlgebraDescriptor, FpModule, MonomialTable};
use crate::error::Error;
use crate::fp::FpMatrix;
use crate::points::{
    gamma_prime_space, gamma_space, jordan_type, module_u, JordanType, PiPoint, QuotientSpace,
    Splitting,
};
use crate::resolution::{ChainLift, CohomologyClass, MinimalResolution};
use crate::Result;

/// Shared context: algebra, splitting, and the resolution truncation.
pub struct IdemCtx {
    pub alg: AlgebraDescriptor,
    pub split: Splitting,
    pub res: MinimalResolution,
}

impl IdemCtx {
    pub fn new(alg: AlgebraDescriptor, point: PiPoint, depth: usize) -> Result<IdemCtx> {
        let split = crate::points::split_along(&point, alg.p, alg.r)?;
        let res = MinimalResolution::build(alg.p, alg.r - 1, depth)?;
        Ok(IdemCtx { alg, split, res })
    }

    pub fn s(&self) -> usize {
        self.alg.r - 1
    }

    pub fn h_dim(&self) -> usize {
        (self.alg.p as usize).pow(self.s() as u32)
    }

    /// Width of a layer's `U`-factor.
    pub fn layer_width(&self, layer: usize, swapped: bool) -> usize {
        if Etrunc::u_typed(layer, swapped) {
            self.alg.p as usize - 1
        } else {
            1
        }
    }

    pub fn build_e(&self, n: usize) -> Result<Etrunc> {
        Etrunc::build(self, n, false)
    }

    /// The parity-swapped truncation modelling the syzygy of the idempotent.
    pub fn build_omega_e(&self, n: usize) -> Result<Etrunc> {
        Etrunc::build(self, n, true)
    }
}

/// How `Z` moves a `kH`-generator of the truncation.
#[derive(Debug, Clone)]
enum ZImage {
    Zero,
    /// next `U`-power of the same generator
    Shift(usize),
    /// boundary exit: entries `(target generator, kH-monomial, coeff)`
    Boundary(Vec<(usize, usize, u32)>),
}

#[derive(Debug, Clone, Copy)]
pub struct LayerInfo {
    pub start: usize,
    /// number of resolution generators
    pub b: usize,
    /// `U`-width (p-1 or 1)
    pub w: usize,
}

/// One truncation `E_n` (or its parity-swapped companion).
pub struct Etrunc {
    pub n: usize,
    pub swapped: bool,
    pub dim: usize,
    pub layers: Vec<LayerInfo>,
    /// kH-free generators as `(layer, gen, upow)`, in basis order
    pub gens: Vec<(usize, usize, usize)>,
    z_gen_images: Vec<ZImage>,
    pub x_actions: Vec<FpMatrix>,
    pub z_action: FpMatrix,
    /// the truncation as a module in standard coordinates
    pub module: FpModule,
    /// augmentation row onto `k` (zero for the swapped shape)
    pub sigma: FpMatrix,
}

impl Etrunc {
    pub fn u_typed(layer: usize, swapped: bool) -> bool {
        (layer % 2 == 1) ^ swapped
    }

    pub fn u_type(&self, layer: usize) -> bool {
        Self::u_typed(layer, self.swapped)
    }

    pub fn flat(&self, hd: usize, layer: usize, g: usize, mono: usize, j: usize) -> usize {
        let info = &self.layers[layer];
        info.start + (g * hd + mono) * info.w + j
    }

    /// Dimension of the sub-truncation `E_m`.
    pub fn prefix_dim(&self, m: usize) -> usize {
        if m + 1 < self.layers.len() {
            self.layers[m + 1].start
        } else {
            self.dim
        }
    }

    pub fn layer_range(&self, m: usize) -> std::ops::Range<usize> {
        self.layers[m].start..self.prefix_dim(m)
    }

    pub fn layer_dim(&self, m: usize) -> usize {
        self.layer_range(m).len()
    }

    fn build(ctx: &IdemCtx, n: usize, swapped: bool) -> Result<Etrunc> {
        if n > ctx.res.len {
            return Err(Error::TruncationTooShort {
                needed: n,
                have: ctx.res.len,
            });
        }
        let p = ctx.alg.p;
        let hd = ctx.h_dim();
        let mut layers = Vec::with_capacity(n + 1);
        let mut dim = 0usize;
        for i in 0..=n {
            let b = ctx.res.rank(i);
            let w = ctx.layer_width(i, swapped);
            layers.push(LayerInfo { start: dim, b, w });
            dim += b * hd * w;
        }
        let table = MonomialTable::new(p, ctx.s());
        let mut partial = Etrunc {
            n,
            swapped,
            dim,
            layers,
            gens: Vec::new(),
            z_gen_images: Vec::new(),
            x_actions: Vec::new(),
            z_action: FpMatrix::zeros(p, dim, dim),
            module: FpModule::zero(p, ctx.alg.r),
            sigma: FpMatrix::zeros(p, 1, dim),
        };
        // generator list, in basis order
        let mut gens = Vec::new();
        for i in 0..=n {
            let info = partial.layers[i];
            for g in 0..info.b {
                for j in 0..info.w {
                    gens.push((i, g, j));
                }
            }
        }
        let gen_index = |gens: &Vec<(usize, usize, usize)>, key: (usize, usize, usize)| -> usize {
            gens.iter().position(|&t| t == key).expect("generator")
        };
        // X actions: regular kH action on the monomial slot
        let mut x_actions = Vec::with_capacity(ctx.s());
        for l in 0..ctx.s() {
            let mut m = FpMatrix::zeros(p, dim, dim);
            for i in 0..=n {
                let info = partial.layers[i];
                for g in 0..info.b {
                    for mono in 0..hd {
                        if let Some(mono2) = table.mult_by_gen(l, mono) {
                            for j in 0..info.w {
                                let src = partial.flat(hd, i, g, mono, j);
                                let dst = partial.flat(hd, i, g, mono2, j);
                                m.data[dst * dim + src] = 1;
                            }
                        }
                    }
                }
            }
            x_actions.push(m);
        }
        // Z action and generator images
        let mut z = FpMatrix::zeros(p, dim, dim);
        let mut z_gen_images = Vec::with_capacity(gens.len());
        for &(i, g, j) in &gens {
            let info = partial.layers[i];
            let image = if partial.u_type(i) && j + 1 < info.w {
                ZImage::Shift(gen_index(&gens, (i, g, j + 1)))
            } else if i == 0 {
                ZImage::Zero
            } else {
                let bdy = ctx.res.boundary_expanded(i);
                let jt = 0usize;
                let mut terms = Vec::new();
                for row in 0..bdy.rows {
                    let c = bdy.get(row, g * hd);
                    if c != 0 {
                        let g2 = row / hd;
                        let mono2 = row % hd;
                        terms.push((gen_index(&gens, (i - 1, g2, jt)), mono2, c));
                    }
                }
                ZImage::Boundary(terms)
            };
            z_gen_images.push(image);
        }
        // assemble Z on the whole basis: Z(X^m . gen) = X^m . Z(gen)
        for (gi, &(i, g, j)) in gens.iter().enumerate() {
            for mono in 0..hd {
                let src = partial.flat(hd, i, g, mono, j);
                match &z_gen_images[gi] {
                    ZImage::Zero => {}
                    ZImage::Shift(_) => {
                        let dst = partial.flat(hd, i, g, mono, j + 1);
                        z.data[dst * dim + src] = 1;
                    }
                    ZImage::Boundary(terms) => {
                        for &(tgen, tmono, c) in terms {
                            let (ti, tg, tj) = gens[tgen];
                            if let Some(m2) = table.mono_product(tmono, mono) {
                                let dst = partial.flat(hd, ti, tg, m2, tj);
                                z.data[dst * dim + src] = (z.data[dst * dim + src] + c) % p;
                            }
                        }
                    }
                }
            }
        }
        // standard coordinates
        let actions = ctx.split.standard_actions(&x_actions, &z, dim)?;
        let module = FpModule::from_parts_unchecked(p, ctx.alg.r, dim, actions);
        let mut sigma = FpMatrix::zeros(p, 1, dim);
        if !swapped {
            sigma.data[partial.flat(hd, 0, 0, 0, 0)] = 1;
        }
        partial.gens = gens;
        partial.z_gen_images = z_gen_images;
        partial.x_actions = x_actions;
        partial.z_action = z;
        partial.module = module;
        partial.sigma = sigma;
        Ok(partial)
    }

    /// The sub-truncation `E_m` as a module (basis prefix; closed under the
    /// action since `Z` never raises the layer).
    pub fn prefix_module(&self, m: usize) -> FpModule {
        let d = self.prefix_dim(m);
        let action = self
            .module
            .action
            .iter()
            .map(|a| a.submatrix(0..d, 0..d))
            .collect();
        FpModule::from_parts_unchecked(self.module.p, self.module.r, d, action)
    }

    /// The layer quotient `E_m / E_{m-1}` as a module: boundary exits die.
    pub fn layer_module(&self, ctx: &IdemCtx, m: usize) -> Result<FpModule> {
        let p = self.module.p;
        let hd = ctx.h_dim();
        let info = self.layers[m];
        let d = info.b * hd * info.w;
        let table = MonomialTable::new(p, ctx.s());
        let flat = |g: usize, mono: usize, j: usize| (g * hd + mono) * info.w + j;
        let mut xs = Vec::with_capacity(ctx.s());
        for l in 0..ctx.s() {
            let mut mm = FpMatrix::zeros(p, d, d);
            for g in 0..info.b {
                for mono in 0..hd {
                    if let Some(m2) = table.mult_by_gen(l, mono) {
                        for j in 0..info.w {
                            mm.data[flat(g, m2, j) * d + flat(g, mono, j)] = 1;
                        }
                    }
                }
            }
            xs.push(mm);
        }
        let mut z = FpMatrix::zeros(p, d, d);
        if self.u_type(m) {
            for g in 0..info.b {
                for mono in 0..hd {
                    for j in 0..info.w - 1 {
                        z.data[flat(g, mono, j + 1) * d + flat(g, mono, j)] = 1;
                    }
                }
            }
        }
        let actions = ctx.split.standard_actions(&xs, &z, d)?;
        Ok(FpModule::from_parts_unchecked(p, ctx.alg.r, d, actions))
    }

    /// Restriction of a map on `E_n` to the columns of `E_m`.
    pub fn restrict_map(&self, f: &FpMatrix, m: usize) -> FpMatrix {
        f.submatrix(0..f.rows, 0..self.prefix_dim(m))
    }

    /// Columns of a map at one layer.
    pub fn layer_of_map(&self, f: &FpMatrix, m: usize) -> FpMatrix {
        f.submatrix(0..f.rows, self.layer_range(m))
    }
}

/// Report of the restriction of `E_n` along a pi-point.
#[derive(Debug, Clone)]
pub struct RestrictEReport {
    pub jordan: JordanType,
    pub nonprojective_dim: usize,
    /// whether the augmentation detects a trivial summand of the restriction
    pub sigma_witnesses_k: bool,
}

pub fn restrict_e(e: &Etrunc, pt: &PiPoint) -> Result<RestrictEReport> {
    let z = pt.act_on(&e.module)?;
    let jt = jordan_type(&z, e.module.p)?;
    let sigma_z = e.sigma.mul(&z)?;
    let witnesses = if sigma_z.is_zero() && !e.sigma.is_zero() {
        let k = z.kernel_basis();
        !e.sigma.mul(&k)?.is_zero()
    } else {
        false
    };
    Ok(RestrictEReport {
        nonprojective_dim: jt.nonprojective_dim(),
        jordan: jt,
        sigma_witnesses_k: witnesses,
    })
}

/// A target module together with its split actions and all `kH`-monomial
/// action matrices (the data the generator-image solver needs).
pub struct SplitTarget {
    pub module: FpModule,
    pub xs: Vec<FpMatrix>,
    pub z: FpMatrix,
    pub x_mono: Vec<FpMatrix>,
}

impl SplitTarget {
    pub fn new(split: &Splitting, module: FpModule) -> Result<SplitTarget> {
        let (xs, z) = split.split_actions(&module)?;
        let table = MonomialTable::new(module.p, split.r - 1);
        let mut x_mono: Vec<Option<FpMatrix>> = vec![None; table.dim];
        x_mono[0] = Some(FpMatrix::identity(module.p, module.dim));
        for a in 0..table.dim {
            let cur = x_mono[a].clone().expect("monomial BFS order");
            for l in 0..split.r - 1 {
                if let Some(b) = table.mult_by_gen(l, a) {
                    if x_mono[b].is_none() {
                        x_mono[b] = Some(xs[l].mul(&cur)?);
                    }
                }
            }
        }
        Ok(SplitTarget {
            module,
            xs,
            z,
            x_mono: x_mono.into_iter().map(|m| m.unwrap()).collect(),
        })
    }
}

/// Basis of `Hom_kG(E_n, M)` (optionally of the subspace vanishing on
/// `E_{vanish_below - 1}`), parametrized by generator images.
///
/// A `kH`-map out of a free `kH`-module is determined by generator images;
/// `Z`-equivariance on generators is the complete remaining constraint. Each
/// basis element is returned as the concatenated images, generator-major.
pub fn e_hom_space(
    e: &Etrunc,
    tgt: &SplitTarget,
    vanish_below: usize,
) -> Result<Vec<Vec<u32>>> {
    let p = tgt.module.p;
    let md = tgt.module.dim;
    let ng = e.gens.len();
    let free: Vec<usize> = (0..ng).filter(|&gi| e.gens[gi].0 >= vanish_below).collect();
    let slot: Vec<Option<usize>> = {
        let mut s = vec![None; ng];
        for (k, &gi) in free.iter().enumerate() {
            s[gi] = Some(k);
        }
        s
    };
    let unknowns = free.len() * md;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut cons = FpMatrix::zeros(p, free.len() * md, unknowns);
    for (k, &gi) in free.iter().enumerate() {
        // Z_M u_G - phi(Z G) = 0
        for row in 0..md {
            let out_row = k * md + row;
            for col in 0..md {
                let c = tgt.z.get(row, col);
                if c != 0 {
                    let u = k * md + col;
                    cons.data[out_row * unknowns + u] = (cons.data[out_row * unknowns + u] + c) % p;
                }
            }
        }
        match &e.z_gen_images[gi] {
            ZImage::Zero => {}
            ZImage::Shift(t) => {
                let tk = slot[*t].expect("shift target stays free");
                for row in 0..md {
                    let out_row = k * md + row;
                    let u = tk * md + row;
                    cons.data[out_row * unknowns + u] = (cons.data[out_row * unknowns + u] + p - 1) % p;
                }
            }
            ZImage::Boundary(terms) => {
                for &(tgen, tmono, c) in terms {
                    let Some(tk) = slot[tgen] else { continue };
                    let xm = &tgt.x_mono[tmono];
                    for row in 0..md {
                        let out_row = k * md + row;
                        for col in 0..md {
                            let v = xm.get(row, col) * c % p;
                            if v != 0 {
                                let u = tk * md + col;
                                cons.data[out_row * unknowns + u] =
                                    (cons.data[out_row * unknowns + u] + p - v) % p;
                            }
                        }
                    }
                }
            }
        }
    }
    let kernel = cons.kernel_basis();
    let mut out = Vec::with_capacity(kernel.cols);
    for c in 0..kernel.cols {
        let mut full = vec![0u32; ng * md];
        for (k, &gi) in free.iter().enumerate() {
            for m in 0..md {
                full[gi * md + m] = kernel.get(k * md + m, c);
            }
        }
        out.push(full);
    }
    Ok(out)
}

/// Expand generator images to the full matrix of the map `E_n -> M`.
pub fn gen_images_to_matrix(
    e: &Etrunc,
    ctx: &IdemCtx,
    tgt: &SplitTarget,
    images: &[u32],
) -> Result<FpMatrix> {
    let md = tgt.module.dim;
    let hd = ctx.h_dim();
    let mut f = FpMatrix::zeros(tgt.module.p, md, e.dim);
    for (gi, &(i, g, j)) in e.gens.iter().enumerate() {
        let u = &images[gi * md..(gi + 1) * md];
        if u.iter().all(|&x| x == 0) {
            continue;
        }
        for mono in 0..hd {
            let v = tgt.x_mono[mono].mul_vec(u)?;
            let col = e.flat(hd, i, g, mono, j);
            for (row, &x) in v.iter().enumerate() {
                f.data[row * e.dim + col] = x;
            }
        }
    }
    debug_assert!(crate::algebra::ModuleMap::is_equivariant(
        &e.module,
        &tgt.module,
        &f
    ));
    Ok(f)
}

/// Lift a cohomology class to an endomorphism of the truncation: the layer
/// shift built from a chain lift. Validated to commute with the full action.
pub fn lift_class(e: &Etrunc, ctx: &IdemCtx, class: &CohomologyClass) -> Result<FpMatrix> {
    let d = class.degree;
    if d > e.n {
        return Err(Error::TruncationTooShort {
            needed: d,
            have: e.n,
        });
    }
    let lift = crate::resolution::lift_chain_map(class, &ctx.res, e.n - d)?;
    let f = hat_matrix(e, ctx, &lift)?;
    for (name, act) in std::iter::once(("z", &e.z_action))
        .chain(e.x_actions.iter().map(|x| ("x", x)))
    {
        let lhs = f.mul(act)?;
        let rhs = act.mul(&f)?;
        if lhs != rhs {
            return Err(Error::NotEquivariant(format!(
                "lifted endomorphism vs {name}-action"
            )));
        }
    }
    Ok(f)
}

/// The matrix of the lifted endomorphism, mapping layer `m + d` into layer
/// `m` (and `m - 1` in the mixed odd case).
fn hat_matrix(e: &Etrunc, ctx: &IdemCtx, lift: &ChainLift) -> Result<FpMatrix> {
    let d = lift.degree;
    let p = e.module.p;
    let hd = ctx.h_dim();
    let mut f = FpMatrix::zeros(p, e.dim, e.dim);
    for m in 0..=e.n.saturating_sub(d) {
        let src_layer = m + d;
        let gm = lift.map(m).expand();
        let src = e.layers[src_layer];
        let dst = e.layers[m];
        if d % 2 == 0 {
            // same parity: gamma_m (x) id on the U-slot
            for gs in 0..src.b {
                for ms in 0..hd {
                    let colbase = gs * hd + ms;
                    for gt in 0..dst.b {
                        for mt in 0..hd {
                            let c = gm.get(gt * hd + mt, colbase);
                            if c == 0 {
                                continue;
                            }
                            for j in 0..src.w {
                                let sc = e.flat(hd, src_layer, gs, ms, j);
                                let tc = e.flat(hd, m, gt, mt, j);
                                f.data[tc * e.dim + sc] = (f.data[tc * e.dim + sc] + c) % p;
                            }
                        }
                    }
                }
            }
        } else if e.u_type(m) {
            // source plain, target U: x -> gamma_m(x) (x) Z^{p-2}
            let top = dst.w - 1;
            for gs in 0..src.b {
                for ms in 0..hd {
                    for gt in 0..dst.b {
                        for mt in 0..hd {
                            let c = gm.get(gt * hd + mt, gs * hd + ms);
                            if c == 0 {
                                continue;
                            }
                            let sc = e.flat(hd, src_layer, gs, ms, 0);
                            let tc = e.flat(hd, m, gt, mt, top);
                            f.data[tc * e.dim + sc] = (f.data[tc * e.dim + sc] + c) % p;
                        }
                    }
                }
            }
        } else {
            // source U, target plain: j = 0 -> gamma_m(x); j > 0 -> the
            // boundary of the lift, shifted into layer m - 1
            for gs in 0..src.b {
                for ms in 0..hd {
                    for gt in 0..dst.b {
                        for mt in 0..hd {
                            let c = gm.get(gt * hd + mt, gs * hd + ms);
                            if c == 0 {
                                continue;
                            }
                            let sc = e.flat(hd, src_layer, gs, ms, 0);
                            let tc = e.flat(hd, m, gt, mt, 0);
                            f.data[tc * e.dim + sc] = (f.data[tc * e.dim + sc] + c) % p;
                        }
                    }
                }
            }
            if m >= 1 {
                let dg = ctx.res.boundary(m).compose(lift.map(m))?.expand();
                let low = e.layers[m - 1];
                for gs in 0..src.b {
                    for ms in 0..hd {
                        for j in 1..src.w {
                            for gt in 0..low.b {
                                for mt in 0..hd {
                                    let c = dg.get(gt * hd + mt, gs * hd + ms);
                                    if c == 0 {
                                        continue;
                                    }
                                    let sc = e.flat(hd, src_layer, gs, ms, j);
                                    let tc = e.flat(hd, m - 1, gt, mt, j - 1);
                                    f.data[tc * e.dim + sc] = (f.data[tc * e.dim + sc] + c) % p;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(f)
}

/// Lift every component of a truncated endomorphism-ring element and sum.
pub fn lift_end_element(
    e: &Etrunc,
    ctx: &IdemCtx,
    el: &crate::gamma::EndElement,
) -> Result<FpMatrix> {
    let mut f = FpMatrix::zeros(e.module.p, e.dim, e.dim);
    for comp in &el.comps {
        if comp.is_zero() {
            continue;
        }
        let class = crate::gamma::gamma_to_class(comp, &ctx.res)?;
        f = f.add(&lift_class(e, ctx, &class)?)?;
    }
    Ok(f)
}

/// The structure map `layer_{d+n} -> layer_d` induced by a degree-`n` lifted
/// endomorphism, in the layer quotient (lower-layer components dropped).
pub fn omega_shift_layer_matrix(
    e: &Etrunc,
    ctx: &IdemCtx,
    lift: &ChainLift,
    d: usize,
) -> Result<FpMatrix> {
    let nd = lift.degree;
    let src_layer = d + nd;
    if src_layer > e.n {
        return Err(Error::TruncationTooShort {
            needed: src_layer,
            have: e.n,
        });
    }
    let p = e.module.p;
    let hd = ctx.h_dim();
    let src = e.layers[src_layer];
    let dst = e.layers[d];
    let gm = lift.map(d).expand();
    let sdim = src.b * hd * src.w;
    let tdim = dst.b * hd * dst.w;
    let sflat = |g: usize, m: usize, j: usize| (g * hd + m) * src.w + j;
    let tflat = |g: usize, m: usize, j: usize| (g * hd + m) * dst.w + j;
    let mut out = FpMatrix::zeros(p, tdim, sdim);
    if nd % 2 == 0 {
        for gs in 0..src.b {
            for ms in 0..hd {
                for gt in 0..dst.b {
                    for mt in 0..hd {
                        let c = gm.get(gt * hd + mt, gs * hd + ms);
                        if c == 0 {
                            continue;
                        }
                        for j in 0..src.w {
                            out.data[tflat(gt, mt, j) * sdim + sflat(gs, ms, j)] = c;
                        }
                    }
                }
            }
        }
    } else if e.u_type(d) {
        let top = dst.w - 1;
        for gs in 0..src.b {
            for ms in 0..hd {
                for gt in 0..dst.b {
                    for mt in 0..hd {
                        let c = gm.get(gt * hd + mt, gs * hd + ms);
                        if c != 0 {
                            out.data[tflat(gt, mt, top) * sdim + sflat(gs, ms, 0)] = c;
                        }
                    }
                }
            }
        }
    } else {
        for gs in 0..src.b {
            for ms in 0..hd {
                for gt in 0..dst.b {
                    for mt in 0..hd {
                        let c = gm.get(gt * hd + mt, gs * hd + ms);
                        if c != 0 {
                            out.data[tflat(gt, mt, 0) * sdim + sflat(gs, ms, 0)] = c;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The coefficient space of maps out of one layer: `Gamma(M)` per generator
/// on plain layers, `Gamma'(M) = ker(Z^{p-1})/ZM` per generator on `U`
/// layers. Coordinates are generator-major.
pub struct LayerHomSpace {
    pub layer: usize,
    pub u_type: bool,
    pub b: usize,
    pub q: QuotientSpace,
}

impl LayerHomSpace {
    pub fn new(e: &Etrunc, ctx: &IdemCtx, layer: usize, tgt: &SplitTarget) -> Result<LayerHomSpace> {
        let u_type = e.u_type(layer);
        let q = if u_type {
            gamma_prime_space(&tgt.module, &ctx.split)?
        } else {
            gamma_space(&tgt.module, &ctx.split)?
        };
        Ok(LayerHomSpace {
            layer,
            u_type,
            b: e.layers[layer].b,
            q,
        })
    }

    pub fn dim(&self) -> usize {
        self.b * self.q.dim()
    }

    /// Coordinates of a layer map (matrix over the layer's basis).
    pub fn coords_of_map(
        &self,
        e: &Etrunc,
        ctx: &IdemCtx,
        f: &FpMatrix,
    ) -> Result<Vec<u32>> {
        let hd = ctx.h_dim();
        let info = e.layers[self.layer];
        let mut out = vec![0u32; self.dim()];
        for g in 0..self.b {
            let col = (g * hd) * info.w;
            let v = f.col(col);
            let coords = self.q.coords(&v)?;
            for (t, &c) in coords.iter().enumerate() {
                out[g * self.q.dim() + t] = c;
            }
        }
        Ok(out)
    }

    /// A representative layer map with prescribed coordinates.
    pub fn map_of_coords(
        &self,
        e: &Etrunc,
        ctx: &IdemCtx,
        tgt: &SplitTarget,
        coords: &[u32],
    ) -> Result<FpMatrix> {
        let hd = ctx.h_dim();
        let info = e.layers[self.layer];
        let ldim = info.b * hd * info.w;
        let md = tgt.module.dim;
        let mut f = FpMatrix::zeros(tgt.module.p, md, ldim);
        let zpow: Vec<FpMatrix> = {
            let mut v = vec![FpMatrix::identity(tgt.module.p, md)];
            for j in 1..info.w {
                v.push(tgt.z.mul(&v[j - 1])?);
            }
            v
        };
        for g in 0..self.b {
            let vg = self.q.rep_of(&coords[g * self.q.dim()..(g + 1) * self.q.dim()])?;
            for mono in 0..hd {
                for j in 0..info.w {
                    let w = tgt.x_mono[mono].mul_vec(&zpow[j].mul_vec(&vg)?)?;
                    let col = (g * hd + mono) * info.w + j;
                    for (row, &x) in w.iter().enumerate() {
                        f.data[row * ldim + col] = x;
                    }
                }
            }
        }
        Ok(f)
    }

    /// Image-containment factoring criterion: the map factors through a
    /// projective iff every generator's class vanishes.
    pub fn factors_through_projective(
        &self,
        e: &Etrunc,
        ctx: &IdemCtx,
        f: &FpMatrix,
    ) -> Result<bool> {
        Ok(self.coords_of_map(e, ctx, f)?.iter().all(|&c| c == 0))
    }
}

/// Transport from `Gamma'(M)` to `Gamma(M (x) U)`: the official coordinates
/// of the odd layers. Built from a `Z`-invariant vector of `U (x) U` with
/// nonzero class, applied naturally in `M`.
pub struct OddTransport {
    /// matrix from Gamma'(M) coordinates to Gamma(M (x) U) coordinates
    pub matrix: FpMatrix,
    pub target_dim: usize,
}

pub fn odd_transport(
    ctx: &IdemCtx,
    tgt: &SplitTarget,
    gamma_prime: &QuotientSpace,
) -> Result<OddTransport> {
    let p = ctx.alg.p;
    let u = module_u(&ctx.split)?;
    let uu = crate::algebra::tensor_module(&u, &u, &ctx.alg)?;
    let z_uu = ctx.split.z_action(&uu)?;
    let guu = gamma_space(&uu, &ctx.split)?;
    let kern = z_uu.kernel_basis();
    let mut w = None;
    for c in 0..kern.cols {
        let v = kern.col(c);
        if guu.coords(&v)?.iter().any(|&x| x != 0) {
            w = Some(v);
            break;
        }
    }
    let w = w.ok_or_else(|| Error::SolveFailed("no invariant generator in U (x) U".into()))?;
    let mu = crate::algebra::tensor_module(&tgt.module, &u, &ctx.alg)?;
    let g_mu = gamma_space(&mu, &ctx.split)?;
    if g_mu.dim() != gamma_prime.dim() {
        return Err(Error::SolveFailed(format!(
            "Gamma'(M) and Gamma(M(x)U) dimensions differ: {} vs {}",
            gamma_prime.dim(),
            g_mu.dim()
        )));
    }
    let ud = u.dim;
    let md = tgt.module.dim;
    // z powers on M
    let mut zpow = vec![FpMatrix::identity(p, md)];
    for k in 1..ud {
        zpow.push(tgt.z.mul(&zpow[k - 1])?);
    }
    let mut matrix = FpMatrix::zeros(p, g_mu.dim(), gamma_prime.dim());
    for c in 0..gamma_prime.dim() {
        let mut unit = vec![0u32; gamma_prime.dim()];
        unit[c] = 1;
        let m0 = gamma_prime.rep_of(&unit)?;
        // sum_{k,j} w[k (p-1) + j] (Z^k m0) (x) e_j
        let mut vec_mu = vec![0u32; md * ud];
        for k in 0..ud {
            for j in 0..ud {
                let coeff = w[k * ud + j];
                if coeff == 0 {
                    continue;
                }
                let zk = zpow[k].mul_vec(&m0)?;
                for (mi, &x) in zk.iter().enumerate() {
                    let idx = mi * ud + j;
                    vec_mu[idx] = (vec_mu[idx] + x * coeff) % p;
                }
            }
        }
        let coords = g_mu.coords(&vec_mu)?;
        for (row, &x) in coords.iter().enumerate() {
            matrix.data[row * matrix.cols + c] = x;
        }
    }
    if matrix.rank() != gamma_prime.dim() {
        return Err(Error::SolveFailed(
            "odd-layer transport is not an isomorphism".into(),
        ));
    }
    Ok(OddTransport {
        target_dim: g_mu.dim(),
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Hopf;

    fn ctx(p: u32, r: usize, depth: usize) -> IdemCtx {
        let mut linear = vec![0u32; r];
        linear[r - 1] = 1;
        IdemCtx::new(
            AlgebraDescriptor::new(p, r, Hopf::Grouplike),
            PiPoint::linear_only(&linear),
            depth,
        )
        .unwrap()
    }

    #[test]
    fn dims_p2_r2() {
        let c = ctx(2, 2, 8);
        for n in 0..=8 {
            let e = c.build_e(n).unwrap();
            assert_eq!(e.dim, 2 * (n + 1));
        }
    }

    #[test]
    fn dims_p3_r2() {
        let c = ctx(3, 2, 4);
        let e1 = c.build_e(1).unwrap();
        assert_eq!(e1.dim, 3 + 3 * 2);
        let e0 = c.build_e(0).unwrap();
        assert_eq!(e0.dim, 3);
        assert!(e0.z_action.is_zero());
    }

    #[test]
    fn module_axioms_hold() {
        for (p, r) in [(2, 2), (3, 2), (2, 3)] {
            let c = ctx(p, r, 4);
            let e = c.build_e(4).unwrap();
            e.module.validate().unwrap();
        }
    }

    #[test]
    fn prefix_closed_and_sigma_equivariant() {
        let c = ctx(2, 2, 6);
        let e = c.build_e(6).unwrap();
        for m in 0..=6 {
            let sub = e.prefix_module(m);
            sub.validate().unwrap();
            assert_eq!(sub.dim, 2 * (m + 1));
        }
        // sigma is a module map onto k
        let k = FpModule::trivial(2, 2);
        assert!(crate::algebra::ModuleMap::is_equivariant(
            &e.module, &k, &e.sigma
        ));
    }

    #[test]
    fn defining_restriction_p2_r2() {
        let c = ctx(2, 2, 12);
        // E_1: free^1 + k^2
        let e1 = c.build_e(1).unwrap();
        let rep = restrict_e(&e1, &c.split.point).unwrap();
        assert_eq!(rep.jordan.blocks, vec![2, 1]);
        assert_eq!(rep.nonprojective_dim, 2);
        assert!(rep.sigma_witnesses_k);
        // constant nonprojective dimension for n = 2..6
        for n in 2..=6 {
            let e = c.build_e(n).unwrap();
            let rep = restrict_e(&e, &c.split.point).unwrap();
            assert_eq!(rep.nonprojective_dim, 2);
            assert!(rep.sigma_witnesses_k);
        }
    }

    #[test]
    fn restriction_of_e0_is_trivial_blocks() {
        let c = ctx(3, 2, 4);
        let e0 = c.build_e(0).unwrap();
        let rep = restrict_e(&e0, &c.split.point).unwrap();
        // k^{p^{r-1}}: three size-1 blocks
        assert_eq!(rep.jordan.blocks, vec![3, 0, 0]);
    }

    #[test]
    fn lift_unit_is_identity() {
        let c = ctx(3, 2, 6);
        let e = c.build_e(6).unwrap();
        let one = CohomologyClass::unit(&c.res);
        let f = lift_class(&e, &c, &one).unwrap();
        assert_eq!(f, FpMatrix::identity(3, e.dim));
    }

    #[test]
    fn lift_is_equivariant_and_shifts_layers() {
        for p in [2u32, 3] {
            let c = ctx(p, 2, 8);
            let e = c.build_e(8).unwrap();
            let eta = CohomologyClass::generator_dual(&c.res, 1, 0);
            let f = lift_class(&e, &c, &eta).unwrap();
            // kills E_0
            let first = e.restrict_map(&f, 0);
            assert!(first.is_zero());
            // maps E_m into E_{m-1}
            for m in 1..=8 {
                let block = f.submatrix(e.prefix_dim(m - 1)..e.dim, e.layer_range(m));
                assert!(block.is_zero(), "p={p} layer {m} must drop");
            }
        }
    }

    #[test]
    fn odd_odd_composite_vanishes_p3() {
        let c = ctx(3, 2, 8);
        let e = c.build_e(8).unwrap();
        let eta = CohomologyClass::generator_dual(&c.res, 1, 0);
        let f = lift_class(&e, &c, &eta).unwrap();
        let ff = f.mul(&f).unwrap();
        // image of the square lies in Z^{p-2} E, killed by sigma
        let sf = e.sigma.mul(&ff).unwrap();
        assert!(sf.is_zero());
    }

    #[test]
    fn swapped_shape_builds() {
        let c = ctx(3, 2, 6);
        let oe = c.build_omega_e(6).unwrap();
        oe.module.validate().unwrap();
        // layer 0 is U-typed: width p-1
        assert_eq!(oe.layers[0].w, 2);
        assert_eq!(oe.layers[1].w, 1);
    }

    #[test]
    fn layer_hom_dims_match_gamma() {
        let c = ctx(2, 2, 6);
        let e = c.build_e(6).unwrap();
        let k = FpModule::trivial(2, 2);
        let tgt = SplitTarget::new(&c.split, k).unwrap();
        for layer in 0..=4 {
            let lh = LayerHomSpace::new(&e, &c, layer, &tgt).unwrap();
            assert_eq!(lh.dim(), 1, "layer {layer}");
        }
        // target kG: all layer spaces vanish
        let kg = FpModule::regular(2, 2);
        let tgt = SplitTarget::new(&c.split, kg).unwrap();
        for layer in 0..=4 {
            let lh = LayerHomSpace::new(&e, &c, layer, &tgt).unwrap();
            assert_eq!(lh.dim(), 0);
        }
    }

    #[test]
    fn odd_transport_is_iso_p3() {
        let c = ctx(3, 2, 4);
        let e = c.build_e(4).unwrap();
        for m in [
            FpModule::trivial(3, 2),
            crate::points::inflated_kh(&c.split).unwrap(),
        ] {
            let tgt = SplitTarget::new(&c.split, m).unwrap();
            let lh = LayerHomSpace::new(&e, &c, 1, &tgt).unwrap();
            let tr = odd_transport(&c, &tgt, &lh.q).unwrap();
            assert_eq!(tr.matrix.rank(), lh.q.dim());
        }
    }

    #[test]
    fn e_hom_space_counts() {
        // Hom(E_n, k): one generator image per layer survives
        let c = ctx(2, 2, 6);
        let e = c.build_e(6).unwrap();
        let k = FpModule::trivial(2, 2);
        let tgt = SplitTarget::new(&c.split, k).unwrap();
        let hom = e_hom_space(&e, &tgt, 0).unwrap();
        // functionals supported on each layer's generator: dims = n + 1
        assert_eq!(hom.len(), 7);
        for h in &hom {
            let f = gen_images_to_matrix(&e, &c, &tgt, h).unwrap();
            assert!(crate::algebra::ModuleMap::is_equivariant(
                &e.module,
                &tgt.module,
                &f
            ));
        }
    }

    #[test]
    fn e_hom_space_vanishing_prefix() {
        let c = ctx(3, 2, 6);
        let e = c.build_e(6).unwrap();
        let k = FpModule::trivial(3, 2);
        let tgt = SplitTarget::new(&c.split, k).unwrap();
        let all = e_hom_space(&e, &tgt, 0).unwrap();
        let van = e_hom_space(&e, &tgt, 3).unwrap();
        assert!(van.len() < all.len());
        for h in &van {
            let f = gen_images_to_matrix(&e, &c, &tgt, h).unwrap();
            assert!(e.restrict_map(&f, 2).is_zero());
        }
    }
}
