//! Short exact sequences of modules and their constructive surgery.
//!
//! Every sequence carries explicit matrices and is certified by exact rank
//! equalities: the left map injective, the right map surjective, the
//! composite zero, and dimension additivity (which pins image = kernel).
//!
//! The constructions keep the literal shapes of their statements:
//! the horseshoe produces a middle that *is* the module
//! `syzygy(mid) + free(s)`, and the rotations cancel surplus free rank-one
//! summands explicitly (a local-ring cancellation argument made
//! algorithmic), so callers can pattern-match on the returned modules
//! instead of chasing isomorphisms.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{AlgebraHom, LocalAlgebra};
use crate::mat::{rows_to_mat, Mat};
use crate::module::{cancel_last_free, coords_in_rows, is_r_linear, FDModule, ModuleError};

/// 0 -> left -> mid -> right -> 0 with explicit maps.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub left: FDModule,
    pub mid: FDModule,
    pub right: FDModule,
    /// mid.dim x left.dim
    pub inj: Mat,
    /// right.dim x mid.dim
    pub surj: Mat,
}

impl ShortExactSeq {
    pub fn new(
        left: FDModule,
        mid: FDModule,
        right: FDModule,
        inj: Mat,
        surj: Mat,
    ) -> Result<ShortExactSeq, ModuleError> {
        let s = ShortExactSeq { left, mid, right, inj, surj };
        s.certify()?;
        Ok(s)
    }

    /// Exactness by exact rank equalities; no tolerances anywhere.
    pub fn certify(&self) -> Result<(), ModuleError> {
        if !self.left.same_algebra(&self.mid) || !self.mid.same_algebra(&self.right) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if self.inj.rows != self.mid.dim()
            || self.inj.cols != self.left.dim()
            || self.surj.rows != self.right.dim()
            || self.surj.cols != self.mid.dim()
        {
            return Err(ModuleError::DimensionMismatch("short exact sequence maps".into()));
        }
        if !is_r_linear(&self.inj, &self.left, &self.mid) {
            return Err(ModuleError::Certification("left map is not R-linear".into()));
        }
        if !is_r_linear(&self.surj, &self.mid, &self.right) {
            return Err(ModuleError::Certification("right map is not R-linear".into()));
        }
        if self.inj.rank() != self.left.dim() {
            return Err(ModuleError::Certification("left map is not injective".into()));
        }
        if self.surj.rank() != self.right.dim() {
            return Err(ModuleError::Certification("right map is not surjective".into()));
        }
        if !self.surj.mul(&self.inj).is_zero() {
            return Err(ModuleError::Certification("composite is not zero".into()));
        }
        if self.left.dim() + self.right.dim() != self.mid.dim() {
            return Err(ModuleError::Certification(
                "image and kernel differ (dimension count)".into(),
            ));
        }
        Ok(())
    }

    /// The split sequence 0 -> l -> l + r -> r -> 0.
    pub fn split(l: &FDModule, r: &FDModule) -> ShortExactSeq {
        let f = l.field();
        let mid = FDModule::direct_sum(&[l, r]);
        let mut inj = Mat::zeros(f, mid.dim(), l.dim());
        for i in 0..l.dim() {
            inj.set(i, i, 1);
        }
        let mut surj = Mat::zeros(f, r.dim(), mid.dim());
        for i in 0..r.dim() {
            surj.set(i, l.dim() + i, 1);
        }
        ShortExactSeq { left: l.clone(), mid, right: r.clone(), inj, surj }
    }

    /// 0 -> m -> R -> k -> 0 over the given algebra.
    pub fn augmentation(algebra: &Arc<LocalAlgebra>) -> ShortExactSeq {
        let f = algebra.field();
        let d = algebra.dim();
        let m = FDModule::maximal_ideal(algebra.clone());
        let r = FDModule::free(algebra.clone(), 1);
        let k = FDModule::residue_field(algebra.clone());
        let mut inj = Mat::zeros(f, d, d - 1);
        for i in 1..d {
            inj.set(i, i - 1, 1);
        }
        let mut surj = Mat::zeros(f, 1, d);
        surj.set(0, 0, 1);
        ShortExactSeq { left: m, mid: r, right: k, inj, surj }
    }
}

/// A random short exact sequence: a random module, a random action-stable
/// subspace generated by a few vectors, and the induced quotient.
pub fn random_short_exact(
    algebra: &Arc<LocalAlgebra>,
    target_rank: usize,
    source_rank: usize,
    picks: usize,
    rng: &mut impl Rng,
) -> ShortExactSeq {
    let m = FDModule::random_module(algebra, target_rank, source_rank, rng);
    let f = algebra.field();
    let p = f.modulus();
    let d = m.dim();
    let mut rows = Vec::new();
    for _ in 0..picks {
        let v: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        // orbit of v under the basis actions spans the submodule it generates
        for t in 0..algebra.dim() {
            rows.push(m.basis_actions()[t].mul_vec(&v));
        }
    }
    let span = rows_to_mat(f, d, &rows).row_basis();
    let (sub, emb) = FDModule::submodule(&m, &span).expect("orbit span is action-stable");
    let (quot, proj) = FDModule::quotient(&m, &span);
    ShortExactSeq { left: sub, mid: m, right: quot, inj: emb, surj: proj }
}

// ---------------------------------------------------------------------------
// lifts along covers

/// R-linear lift of `phi: R^src_rank -> M` through the minimal cover of M:
/// returns gamma with pi . gamma = phi. (`phi` given as a linear matrix on
/// the underlying spaces; the lift sends standard generators to solved
/// preimages and extends by the module action.)
fn lift_through_cover(pi: &Mat, cover_free: &FDModule, src_rank: usize, phi: &Mat) -> Mat {
    let f = cover_free.field();
    let dr = cover_free.algebra().dim();
    let mut gen_imgs = Mat::zeros(f, phi.rows, src_rank);
    for u in 0..src_rank {
        for r in 0..phi.rows {
            gen_imgs.set(r, u, phi.get(r, u * dr));
        }
    }
    let lifted = pi.solve_mat(&gen_imgs).expect("minimal covers are surjective");
    let ba = cover_free.basis_actions();
    let mut out = Mat::zeros(f, cover_free.dim(), src_rank * dr);
    for u in 0..src_rank {
        let col: Vec<u64> = (0..cover_free.dim()).map(|r| lifted.get(r, u)).collect();
        for t in 0..dr {
            let img = ba[t].mul_vec(&col);
            for (r, &v) in img.iter().enumerate() {
                out.set(r, u * dr + t, v);
            }
        }
    }
    out
}

/// Functorial syzygy of a map u: M -> M2 (lift to covers, restrict to kernels).
pub fn syzygy_map(u: &Mat, m: &FDModule, m2: &FDModule) -> Mat {
    let cov = m.minimal_cover();
    let cov2 = m2.minimal_cover();
    let phi = u.mul(&cov.pi);
    let free2 = FDModule::free(m2.algebra().clone(), cov2.rank);
    let lift = lift_through_cover(&cov2.pi, &free2, cov.rank, &phi);
    let (_, k) = m.syzygy_data();
    let (_, k2) = m2.syzygy_data();
    let imgs = lift.mul(&k.transpose());
    coords_in_rows(k2, &imgs).expect("lifts preserve cover kernels")
}

/// Transport a split pair (sec: M -> M2, ret: M2 -> M, ret.sec = id) to the
/// syzygies, correcting the lifted retraction so the composite is again the
/// identity.
pub fn syzygy_split_pair(
    sec: &Mat,
    ret: &Mat,
    m: &FDModule,
    m2: &FDModule,
) -> Result<(Mat, Mat), ModuleError> {
    let osec = syzygy_map(sec, m, m2);
    let oret = syzygy_map(ret, m2, m);
    let q = oret.mul(&osec);
    let qi = q.inverse().ok_or_else(|| {
        ModuleError::Certification("lifted identity composite is not invertible".into())
    })?;
    Ok((osec, qi.mul(&oret)))
}

// ---------------------------------------------------------------------------
// the sequence surgery

/// One horseshoe step: from 0 -> L -> M -> N -> 0 build
/// 0 -> syzygy(L) -> syzygy(M) + free(s) -> syzygy(N) -> 0 with the literal
/// direct-sum middle, s = nu(L) + nu(N) - nu(M).
pub fn horseshoe_step(s: &ShortExactSeq) -> Result<(ShortExactSeq, usize), ModuleError> {
    s.certify()?;
    let alg = s.mid.algebra().clone();
    let f = s.mid.field();
    let dr = alg.dim();
    let (l, m, n) = (&s.left, &s.mid, &s.right);
    let cov_l = l.minimal_cover();
    let cov_n = n.minimal_cover();
    let cov_m = m.minimal_cover();
    let (a, c, b) = (cov_l.rank, cov_n.rank, cov_m.rank);

    // sigma: free(c) -> M, an R-linear lift of the cover of N through surj
    let mut n_targets = Mat::zeros(f, n.dim(), c);
    for (j, &t) in cov_n.targets.iter().enumerate() {
        n_targets.set(t, j, 1);
    }
    let pre = s.surj.solve_mat(&n_targets).expect("surjection is onto");
    let mba = m.basis_actions();
    let mut sigma = Mat::zeros(f, m.dim(), c * dr);
    for j in 0..c {
        let col: Vec<u64> = (0..m.dim()).map(|r| pre.get(r, j)).collect();
        for t in 0..dr {
            let img = mba[t].mul_vec(&col);
            for (r, &v) in img.iter().enumerate() {
                sigma.set(r, j * dr + t, v);
            }
        }
    }

    // phi: free(a + c) -> M, surjective
    let phi = s.inj.mul(&cov_l.pi).hstack(&sigma);
    let big_free = FDModule::free(alg.clone(), a + c);
    let fm = FDModule::free(alg.clone(), b);

    // gamma: free(a + c) -> free(b) lifting phi through the cover of M;
    // surjective by Nakayama since the cover is minimal
    let gamma = lift_through_cover(&cov_m.pi, &fm, a + c, &phi);
    let mut gbar = Mat::zeros(f, b, a + c);
    for i in 0..b {
        for u in 0..(a + c) {
            gbar.set(i, u, gamma.get(i * dr, u * dr));
        }
    }
    let mut gb = gbar.clone();
    let piv = gb.rref_in_place();
    assert_eq!(piv.len(), b, "lifted cover map must be surjective");
    let chosen: Vec<usize> = piv; // b independent columns mod m

    // delta: free(b) -> free(a + c), an R-linear section of gamma supported
    // on the chosen copies (their block is invertible since it is mod-m)
    let mut gjl = Mat::zeros(f, b * dr, b * dr);
    for (i, &u) in chosen.iter().enumerate() {
        for t in 0..dr {
            for r in 0..b * dr {
                gjl.set(r, i * dr + t, gamma.get(r, u * dr + t));
            }
        }
    }
    let gjl_inv = gjl.inverse().expect("unit block of a surjective lift");
    let mut delta = Mat::zeros(f, (a + c) * dr, b * dr);
    for (i, &u) in chosen.iter().enumerate() {
        for t in 0..dr {
            for cc in 0..b * dr {
                delta.set(u * dr + t, cc, gjl_inv.get(i * dr + t, cc));
            }
        }
    }
    assert_eq!(gamma.mul(&delta), Mat::identity(f, b * dr), "section property");

    // projector onto ker gamma, and a free basis of that kernel
    let proj_ker = Mat::identity(f, (a + c) * dr).sub(&delta.mul(&gamma));
    let s_rank = a + c - b;
    let mut pbar = Mat::zeros(f, a + c, a + c);
    for u in 0..(a + c) {
        for v in 0..(a + c) {
            pbar.set(u, v, proj_ker.get(u * dr, v * dr));
        }
    }
    let mut pb = pbar;
    let ppiv = pb.rref_in_place();
    assert_eq!(ppiv.len(), s_rank, "kernel of the lifted cover map is free of rank s");
    let units: Vec<usize> = ppiv;

    // Phi: free(b) + free(s) -> free(a + c), an isomorphism with
    // phi . Phi = [cover of M | 0]
    let bigba = big_free.basis_actions();
    let mut phi_iso = delta.clone();
    for &u in &units {
        let q: Vec<u64> = (0..(a + c) * dr).map(|r| proj_ker.get(r, u * dr)).collect();
        let mut cols = Mat::zeros(f, (a + c) * dr, dr);
        for t in 0..dr {
            let img = bigba[t].mul_vec(&q);
            for (r, &v) in img.iter().enumerate() {
                cols.set(r, t, v);
            }
        }
        phi_iso = phi_iso.hstack(&cols);
    }
    assert_eq!(phi_iso.rank(), (a + c) * dr, "free decomposition must be invertible");
    let expected = cov_m.pi.hstack(&Mat::zeros(f, m.dim(), s_rank * dr));
    assert_eq!(phi.mul(&phi_iso), expected, "decomposition aligns the covers");
    let phi_iso_inv = phi_iso.inverse().expect("checked invertible");

    // middle module, literally syzygy(M) + free(s)
    let omega_m = m.syzygy();
    let (_, k_m) = m.syzygy_data();
    let free_s = FDModule::free(alg.clone(), s_rank);
    let mid = FDModule::direct_sum(&[&omega_m, &free_s]);
    // embedding of mid into free(a + c): kernel rows through Phi
    let mut emb = Mat::zeros(f, (a + c) * dr, mid.dim());
    for i in 0..omega_m.dim() {
        for r in 0..b * dr {
            emb.set(r, i, k_m.get(i, r));
        }
    }
    for j in 0..s_rank * dr {
        emb.set(b * dr + j, omega_m.dim() + j, 1);
    }
    let emb_mid = phi_iso.mul(&emb);

    // left map: syzygy(L) -> mid
    let omega_l = l.syzygy();
    let (_, k_l) = l.syzygy_data();
    let mut x = Mat::zeros(f, (a + c) * dr, omega_l.dim());
    for i in 0..omega_l.dim() {
        for r in 0..a * dr {
            x.set(r, i, k_l.get(i, r));
        }
    }
    let y = phi_iso_inv.mul(&x);
    let top = y.submatrix(0, b * dr, 0, omega_l.dim());
    let coords = coords_in_rows(k_m, &top).expect("restriction lands in the kernel");
    let bottom = y.submatrix(b * dr, (a + c) * dr, 0, omega_l.dim());
    let inj = coords.vstack(&bottom);

    // right map: mid -> syzygy(N), projection to the free(c) block
    let omega_n = n.syzygy();
    let (_, k_n) = n.syzygy_data();
    let pr_n = emb_mid.submatrix(a * dr, (a + c) * dr, 0, mid.dim());
    let surj = coords_in_rows(k_n, &pr_n).expect("projection lands in the kernel");

    let out = ShortExactSeq { left: omega_l, mid, right: omega_n, inj, surj };
    out.certify()?;
    Ok((out, s_rank))
}

/// Iterated horseshoe: 0 -> syzygy^n(L) -> syzygy^n(M) + free(a) -> syzygy^n(N) -> 0.
/// Returns the final free rank a.
pub fn horseshoe(s: &ShortExactSeq, n: usize) -> Result<(ShortExactSeq, usize), ModuleError> {
    s.certify()?;
    let mut cur = s.clone();
    let mut free_rank = 0;
    for _ in 0..n {
        let (next, a) = horseshoe_step(&cur)?;
        cur = next;
        free_rank = a;
    }
    Ok((cur, free_rank))
}

/// One rotation: from 0 -> L -> M -> N -> 0 build
/// 0 -> syzygy(N) -> L + free(b) -> M -> 0 with b = nu(N), using the pullback
/// along the cover of N (the middle is literally the direct sum).
pub fn rotate_left_step(s: &ShortExactSeq) -> Result<(ShortExactSeq, usize), ModuleError> {
    s.certify()?;
    let alg = s.mid.algebra().clone();
    let f = s.mid.field();
    let dr = alg.dim();
    let (l, m, n) = (&s.left, &s.mid, &s.right);
    let cov_n = n.minimal_cover();
    let b = cov_n.rank;

    // sigma: free(b) -> M lifting the cover of N through surj
    let mut n_targets = Mat::zeros(f, n.dim(), b);
    for (j, &t) in cov_n.targets.iter().enumerate() {
        n_targets.set(t, j, 1);
    }
    let pre = s.surj.solve_mat(&n_targets).expect("surjection is onto");
    let mba = m.basis_actions();
    let mut sigma = Mat::zeros(f, m.dim(), b * dr);
    for j in 0..b {
        let col: Vec<u64> = (0..m.dim()).map(|r| pre.get(r, j)).collect();
        for t in 0..dr {
            let img = mba[t].mul_vec(&col);
            for (r, &v) in img.iter().enumerate() {
                sigma.set(r, j * dr + t, v);
            }
        }
    }

    let free_b = FDModule::free(alg.clone(), b);
    let mid = FDModule::direct_sum(&[l, &free_b]);
    let surj_out = s.inj.hstack(&sigma);

    // injection: a kernel element kappa of the cover of N maps to
    // (-inj^{-1}(sigma kappa), kappa)
    let omega_n = n.syzygy();
    let (_, k_n) = n.syzygy_data();
    let s1 = sigma.mul(&k_n.transpose());
    let neg = s1.scale(f.sub(0, 1));
    let x = s.inj.solve_mat(&neg).expect("sigma maps the kernel into the image of L");
    let inj_out = x.vstack(&k_n.transpose());

    let out = ShortExactSeq { left: omega_n, mid, right: m.clone(), inj: inj_out, surj: surj_out };
    out.certify()?;
    Ok((out, b))
}

/// Rotation with syzygy depth: 0 -> syzygy^{n+1}(N) -> syzygy^n(L) + free(b) -> syzygy^n(M) -> 0.
pub fn rotate_left(s: &ShortExactSeq, n: usize) -> Result<(ShortExactSeq, usize), ModuleError> {
    let (first, b) = rotate_left_step(s)?;
    if n == 0 {
        return Ok((first, b));
    }
    horseshoe(&first, n)
}

/// Double rotation with explicit free cancellation:
/// 0 -> syzygy^{n+1}(M) -> syzygy^{n+1}(N) + free(c) -> syzygy^n(L) -> 0.
pub fn rotate_left2(s: &ShortExactSeq, n: usize) -> Result<(ShortExactSeq, usize), ModuleError> {
    let alg = s.mid.algebra().clone();
    let f = s.mid.field();
    let dr = alg.dim();
    let (s1, b) = rotate_left_step(s)?;
    let (s2, q) = rotate_left_step(&s1)?;
    // s2: 0 -> syzygy(M) -> syzygy(N) + free(q) -> L + free(b) -> 0
    let dcore = s1.left.clone(); // syzygy(N)
    let l = &s.left;

    // W0: kernel of (project to the free(b) block of s1.mid) . surj
    let pr_free = s2.surj.submatrix(l.dim(), l.dim() + b * dr, 0, s2.mid.dim());
    let w0_rows = pr_free.kernel_basis();
    let (w0, emb0) = FDModule::submodule(&s2.mid, &w0_rows)
        .expect("kernel of a module map is a submodule");

    // R-linear section of the free(b) component
    let mut targets = Mat::zeros(f, s1.mid.dim(), b);
    for j in 0..b {
        targets.set(l.dim() + j * dr, j, 1);
    }
    let pre = s2.surj.solve_mat(&targets).expect("surjection is onto");
    let m2ba = s2.mid.basis_actions();
    let mut sec = Mat::zeros(f, s2.mid.dim(), b * dr);
    for j in 0..b {
        let col: Vec<u64> = (0..s2.mid.dim()).map(|r| pre.get(r, j)).collect();
        for t in 0..dr {
            let img = m2ba[t].mul_vec(&col);
            for (r, &v) in img.iter().enumerate() {
                sec.set(r, j * dr + t, v);
            }
        }
    }
    // lam: w0 + free(b) -> dcore + free(q), an isomorphism
    let mut lam = emb0.hstack(&sec);
    assert_eq!(lam.rank(), s2.mid.dim(), "internal direct sum must decompose the middle");

    // cancel the b surplus free copies
    let mut pf = b;
    let mut qf = q;
    while pf > 0 {
        let p = if pf == 1 {
            w0.clone()
        } else {
            FDModule::direct_sum(&[&w0, &FDModule::free(alg.clone(), pf - 1)])
        };
        let qm = if qf == 1 {
            dcore.clone()
        } else {
            FDModule::direct_sum(&[&dcore, &FDModule::free(alg.clone(), qf - 1)])
        };
        lam = cancel_last_free(&p, &qm, &lam)?;
        pf -= 1;
        qf -= 1;
    }
    let c = q - b;
    let mid = if c == 0 {
        dcore.clone()
    } else {
        FDModule::direct_sum(&[&dcore, &FDModule::free(alg.clone(), c)])
    };

    // maps through the cancelled isomorphism
    let c0 = coords_in_rows(&w0_rows, &s2.inj).expect("the injection lands in W0");
    let inj = lam.mul(&c0);
    let lam_inv = lam.inverse().expect("cancellation output is an isomorphism");
    let to_mid1 = s2.surj.mul(&emb0).mul(&lam_inv);
    let surj = to_mid1.submatrix(0, l.dim(), 0, mid.dim());

    let first = ShortExactSeq { left: s2.left.clone(), mid, right: l.clone(), inj, surj };
    first.certify()?;
    if n == 0 {
        return Ok((first, c));
    }
    horseshoe(&first, n)
}

/// 0 -> k^r -> R -> R/Soc -> 0.
pub fn socle_sequence(algebra: &Arc<LocalAlgebra>) -> ShortExactSeq {
    let soc = algebra.socle_basis();
    let r = soc.rows;
    let left = FDModule::semisimple(algebra.clone(), r);
    let mid = FDModule::free(algebra.clone(), 1);
    let (right, proj) = FDModule::quotient(&mid, &soc);
    let seq = ShortExactSeq { left, mid, right, inj: soc.transpose(), surj: proj };
    seq.certify().expect("socle sequence is exact by construction");
    seq
}

/// For IM = 0: 0 -> I^{nu(M)} -> syzygy_R(M) -> syzygy_{R/I}(M) -> 0,
/// computed with the same cover targets on both sides. Returns the sequence
/// together with the module I (as a submodule of R).
pub fn syzygy_quotient_sequence(
    m: &FDModule,
    ideal: &[Vec<u64>],
    qalg: &Arc<LocalAlgebra>,
    qhom: &AlgebraHom,
) -> Result<(ShortExactSeq, FDModule), ModuleError> {
    let alg = m.algebra().clone();
    let f = m.field();
    let d = alg.dim();
    for a in ideal {
        if !m.action_of(a).is_zero() {
            return Err(ModuleError::NonzeroIdealAction);
        }
    }
    let (mbar, _) = m.base_change(qalg, ideal)?;
    assert_eq!(mbar.dim(), m.dim(), "annihilated ideal leaves the space unchanged");
    let nu = m.num_min_gens();
    assert_eq!(
        mbar.num_min_gens(),
        nu,
        "covers agree for the quotient structure"
    );
    let (omega_r, k_r) = m.syzygy_data();
    let (omega_q, k_q) = mbar.syzygy_data();

    // blockwise reduction R^nu -> (R/I)^nu maps kernel onto kernel
    let dq = qalg.dim();
    let mut red = Mat::zeros(f, nu * dq, nu * d);
    for j in 0..nu {
        for r in 0..dq {
            for cc in 0..d {
                let v = qhom.matrix.get(r, cc);
                if v != 0 {
                    red.set(j * dq + r, j * d + cc, v);
                }
            }
        }
    }
    let mapped = red.mul(&k_r.transpose());
    let surj = coords_in_rows(k_q, &mapped).expect("reduction maps kernel into kernel");
    // view the quotient-side syzygy as a module over the original ring
    let right = omega_q.inflate(&alg, qhom);

    // the module I inside R
    let mut rows = Vec::new();
    for a in ideal {
        for t in 0..d {
            rows.push(alg.mul_elems(&alg.basis_elem(t), a));
        }
    }
    let i_rows = rows_to_mat(f, d, &rows).row_basis();
    let free1 = FDModule::free(alg.clone(), 1);
    let (imod, _) = FDModule::submodule(&free1, &i_rows)?;
    let di = imod.dim();
    let left = if nu == 0 {
        FDModule::zero(alg.clone())
    } else {
        let parts: Vec<&FDModule> = vec![&imod; nu];
        FDModule::direct_sum(&parts)
    };

    // embed I^nu into the syzygy: copy j of I sits in block j of R^nu
    let mut big = Mat::zeros(f, nu * d, nu * di);
    for j in 0..nu {
        for si in 0..di {
            for cc in 0..d {
                big.set(j * d + cc, j * di + si, i_rows.get(si, cc));
            }
        }
    }
    let inj = coords_in_rows(k_r, &big).expect("annihilating ideal lands in the syzygy");

    let seq = ShortExactSeq { left, mid: omega_r.clone(), right, inj, surj };
    seq.certify()?;
    Ok((seq, imod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::fixtures::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn split_and_augmentation_sequences_certify() {
        let r5 = ring_dim5();
        let k = FDModule::residue_field(r5.clone());
        let m = FDModule::maximal_ideal(r5.clone());
        ShortExactSeq::split(&k, &m).certify().unwrap();
        ShortExactSeq::augmentation(&r5).certify().unwrap();
    }

    #[test]
    fn random_sequences_certify() {
        let r5 = ring_dim5();
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        for _ in 0..4 {
            let s = random_short_exact(&r5, 2, 2, 1, &mut rng);
            s.certify().unwrap();
        }
    }

    #[test]
    fn horseshoe_on_split_input_keeps_the_split_shape() {
        let r5 = ring_dim5();
        let k = FDModule::residue_field(r5.clone());
        let m = FDModule::maximal_ideal(r5);
        let s = ShortExactSeq::split(&k, &m);
        let (out, a) = horseshoe_step(&s).unwrap();
        assert_eq!(a, 0, "covers add up on split input");
        assert_eq!(out.left, k.syzygy());
        assert_eq!(out.right, m.syzygy());
        let sum = FDModule::direct_sum(&[&k, &m]);
        assert_eq!(out.mid, FDModule::direct_sum(&[&sum.syzygy(), &FDModule::free(out.mid.algebra().clone(), 0)]));
    }

    #[test]
    fn horseshoe_of_augmentation_has_free_middle() {
        let r5 = ring_dim5();
        let s = ShortExactSeq::augmentation(&r5);
        let (out, a) = horseshoe_step(&s).unwrap();
        // syzygy(R) = 0, so the middle is purely free: nu(m) + nu(k) - nu(R) = 2
        assert_eq!(a, 2);
        assert_eq!(out.mid.dim(), 2 * r5.dim());
        assert!(out.left.dim() == s.left.syzygy().dim());
        assert_eq!(out.right, s.right.syzygy());
    }

    #[test]
    fn iterated_horseshoe_certifies_on_random_input() {
        let r7 = ring_dim7();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let s = random_short_exact(&r7, 2, 2, 1, &mut rng);
        let (out, _a) = horseshoe(&s, 2).unwrap();
        out.certify().unwrap();
        assert_eq!(out.left, s.left.syzygy_n(2));
        assert_eq!(out.right, s.right.syzygy_n(2));
    }

    #[test]
    fn rotation_of_augmentation() {
        let r5 = ring_dim5();
        let s = ShortExactSeq::augmentation(&r5);
        let (out, b) = rotate_left(&s, 0).unwrap();
        assert_eq!(b, 1);
        assert_eq!(out.left, s.right.syzygy());
        assert_eq!(out.right, FDModule::free(r5.clone(), 1));
        assert_eq!(out.mid.dim(), s.left.dim() + r5.dim());
    }

    #[test]
    fn double_rotation_of_augmentation_cancels_all_frees() {
        let r5 = ring_dim5();
        let s = ShortExactSeq::augmentation(&r5);
        let (out, c) = rotate_left2(&s, 0).unwrap();
        // here syzygy(R) = 0 and nu(R) = nu(k) = 1, so everything cancels
        assert_eq!(c, 0);
        assert!(out.left.is_zero());
        assert_eq!(out.mid, s.right.syzygy());
        assert_eq!(out.right, s.left);
    }

    #[test]
    fn double_rotation_with_leftover_free_rank() {
        let r5 = ring_dim5();
        let k = FDModule::residue_field(r5.clone());
        let s = ShortExactSeq::split(&k, &k);
        // nu(mid) = 2, nu(right) = 1: one free copy survives
        let (out, c) = rotate_left2(&s, 0).unwrap();
        assert_eq!(c, 1);
        assert_eq!(out.right, k);
        let expect_mid =
            FDModule::direct_sum(&[&k.syzygy(), &FDModule::free(r5.clone(), 1)]);
        assert_eq!(out.mid, expect_mid);
        assert_eq!(out.left, s.mid.syzygy());
    }

    #[test]
    fn deeper_rotations_certify() {
        let r3 = ring_dim3();
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let s = random_short_exact(&r3, 2, 1, 1, &mut rng);
        let (o1, _) = rotate_left(&s, 1).unwrap();
        o1.certify().unwrap();
        assert_eq!(o1.left, s.right.syzygy_n(2));
        let (o2, _) = rotate_left2(&s, 1).unwrap();
        o2.certify().unwrap();
        assert_eq!(o2.left, s.mid.syzygy_n(2));
        assert_eq!(o2.right, s.left.syzygy_n(1));
    }

    #[test]
    fn socle_sequence_length_matches_type() {
        let r5 = ring_dim5();
        let s = socle_sequence(&r5);
        assert_eq!(s.left.dim(), 2);
        assert_eq!(s.left.dim(), r5.type_r());
        let r7 = ring_dim7();
        assert_eq!(socle_sequence(&r7).left.dim(), r7.type_r());
    }

    #[test]
    fn syzygy_quotient_sequence_for_k_modulo_socle() {
        let r6 = ring_dim6();
        let k = FDModule::residue_field(r6.clone());
        let soc = r6.socle_basis();
        let gens: Vec<Vec<u64>> = (0..soc.rows).map(|r| soc.row(r).to_vec()).collect();
        let (qalg, qhom) = r6.quotient_algebra(&gens).unwrap();
        let qalg = Arc::new(qalg);
        let (seq, imod) = syzygy_quotient_sequence(&k, &gens, &qalg, &qhom).unwrap();
        // soc = m^2 here: dim I = 3, syzygy_R(k) = m has dim 5,
        // syzygy_{R/I}(k) = m/m^2 has dim 2
        assert_eq!(imod.dim(), 3);
        assert_eq!(seq.mid.dim(), 5);
        assert_eq!(seq.right.dim(), 2);
    }

    #[test]
    fn syzygy_quotient_sequence_with_zero_ideal() {
        let r5 = ring_dim5();
        let k = FDModule::residue_field(r5.clone());
        let (qalg, qhom) = r5.quotient_algebra(&[]).unwrap();
        let qalg = Arc::new(qalg);
        let (seq, imod) = syzygy_quotient_sequence(&k, &[], &qalg, &qhom).unwrap();
        assert!(imod.is_zero());
        assert!(seq.left.is_zero());
        assert_eq!(seq.mid.dim(), seq.right.dim());
    }

    #[test]
    fn syzygy_quotient_sequence_rejects_acting_ideals() {
        let r5 = ring_dim5();
        let free = FDModule::free(r5.clone(), 1);
        let soc = r5.socle_basis();
        let gens: Vec<Vec<u64>> = (0..soc.rows).map(|r| soc.row(r).to_vec()).collect();
        let (qalg, qhom) = r5.quotient_algebra(&gens).unwrap();
        let qalg = Arc::new(qalg);
        assert!(matches!(
            syzygy_quotient_sequence(&free, &gens, &qalg, &qhom),
            Err(ModuleError::NonzeroIdealAction)
        ));
    }

    #[test]
    fn split_pairs_transport_through_syzygies() {
        let r5 = ring_dim5();
        let f = r5.field();
        let k = FDModule::residue_field(r5.clone());
        let m = FDModule::maximal_ideal(r5);
        let sum = FDModule::direct_sum(&[&m, &k]);
        let mut sec = Mat::zeros(f, sum.dim(), m.dim());
        for i in 0..m.dim() {
            sec.set(i, i, 1);
        }
        let mut ret = Mat::zeros(f, m.dim(), sum.dim());
        for i in 0..m.dim() {
            ret.set(i, i, 1);
        }
        let (osec, oret) = syzygy_split_pair(&sec, &ret, &m, &sum).unwrap();
        let om = m.syzygy();
        let osum = sum.syzygy();
        assert!(is_r_linear(&osec, &om, &osum));
        assert!(is_r_linear(&oret, &osum, &om));
        assert_eq!(oret.mul(&osec), Mat::identity(f, om.dim()));
    }
}
