//! Direct-sum decomposition of modules and the verdicts built on it:
//! indecomposable factors with multiplicities, summand tests, isomorphism
//! tests, and additive-closure membership.
//!
//! The engine is the endomorphism algebra. Its Jacobson radical is computed
//! by the trace-form chain for algebras over a prime field and certified by
//! exact checks (the span is a nilpotent two-sided ideal, and the quotient
//! has no radical of its own in its regular representation). Idempotents are
//! found by coprime factor splitting of minimal polynomials — deterministic
//! through the center when the radical quotient has several simple factors,
//! seeded-random inside a single matrix-algebra factor — and lifted through
//! the radical by the quadratically convergent update 3e^2 - 2e^3 until
//! e^2 = e holds on the nose. Every positive verdict returns explicit
//! section/retraction witnesses that are re-verified before being returned.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::field::PrimeField;
use crate::mat::{rows_to_mat, Mat};
use crate::module::{coords_in_rows, hom_via_presentation, is_r_linear, FDModule, ModuleError};
use crate::unipoly::{factor, min_poly, UniPoly};

// ---------------------------------------------------------------------------
// small matrix helpers

fn flatten(m: &Mat) -> Vec<u64> {
    let mut v = Vec::with_capacity(m.rows * m.cols);
    for r in 0..m.rows {
        v.extend_from_slice(m.row(r));
    }
    v
}

fn unflatten(f: PrimeField, d: usize, v: &[u64]) -> Mat {
    let mut m = Mat::zeros(f, d, d);
    for r in 0..d {
        for c in 0..d {
            m.set(r, c, v[r * d + c]);
        }
    }
    m
}

fn mat_pow(m: &Mat, mut e: u64) -> Mat {
    assert!(e >= 1);
    let mut base = m.clone();
    let mut acc: Option<Mat> = None;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.mul(&base),
            });
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc.expect("exponent at least one")
}

fn trace(m: &Mat) -> u64 {
    let f = m.field();
    let mut t = 0;
    for i in 0..m.rows {
        t = f.add(t, m.get(i, i));
    }
    t
}

fn combo(f: PrimeField, basis: &[Mat], coeffs: &[u64]) -> Mat {
    let d = basis[0].rows;
    let mut out = Mat::zeros(f, d, basis[0].cols);
    for (c, b) in coeffs.iter().zip(basis) {
        if *c != 0 {
            out = out.add(&b.scale(*c));
        }
    }
    out
}

fn poly_pow(p: &UniPoly, e: usize) -> UniPoly {
    assert!(e >= 1);
    let mut out = p.clone();
    for _ in 1..e {
        out = out.mul(p);
    }
    out
}

/// Radical of the span of `basis` inside d x d matrices, by the trace-form
/// chain: repeatedly keep the x with Tr((xy)^{p^j}) = 0 for all y in the
/// current span, for p^j up to the matrix size. Returns coordinate rows with
/// respect to `basis`.
fn radical_chain(f: PrimeField, basis: &[Mat], rep_dim: usize) -> Mat {
    let p = f.modulus();
    let n = basis.len();
    let mut cur = Mat::identity(f, n);
    let mut exp = 1u64;
    while exp <= rep_dim as u64 {
        if cur.rows == 0 {
            break;
        }
        let mats: Vec<Mat> = (0..cur.rows).map(|r| combo(f, basis, cur.row(r))).collect();
        let k = mats.len();
        let mut cond = Mat::zeros(f, k, k);
        for (yi, y) in mats.iter().enumerate() {
            for (xi, x) in mats.iter().enumerate() {
                cond.set(yi, xi, trace(&mat_pow(&x.mul(y), exp)));
            }
        }
        cur = cond.kernel_basis().mul(&cur).row_basis();
        exp = exp.saturating_mul(p);
    }
    cur
}

// ---------------------------------------------------------------------------
// endomorphism algebras

/// The endomorphism algebra End_R(M) as an explicit matrix algebra.
pub struct EndoAlgebra {
    module: FDModule,
    basis: Vec<Mat>,
    /// flattened basis, one endomorphism per row
    rows: Mat,
    radical: OnceLock<Radical>,
}

/// Radical data: RREF coordinate rows with respect to the endomorphism basis.
#[derive(Clone)]
pub struct Radical {
    pub coords: Mat,
    pub pivots: Vec<usize>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.coords.rows
    }
}

impl EndoAlgebra {
    pub fn new(m: &FDModule) -> EndoAlgebra {
        assert!(m.dim() > 0, "endomorphism algebra of the zero module");
        let f = m.field();
        let d = m.dim();
        let (_, basis) = FDModule::hom(m, m).expect("same algebra on both sides");
        let flat: Vec<Vec<u64>> = basis.iter().map(flatten).collect();
        let rows = rows_to_mat(f, d * d, &flat);
        let e = EndoAlgebra { module: m.clone(), basis, rows, radical: OnceLock::new() };
        debug_assert!(e.contains(&Mat::identity(f, d)), "identity endomorphism");
        e
    }

    pub fn module(&self) -> &FDModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn coords_of(&self, phi: &Mat) -> Option<Vec<u64>> {
        let f = self.module.field();
        let flat = flatten(phi);
        let mut target = Mat::zeros(f, flat.len(), 1);
        for (i, &v) in flat.iter().enumerate() {
            target.set(i, 0, v);
        }
        let sol = coords_in_rows(&self.rows, &target)?;
        Some((0..self.dim()).map(|i| sol.get(i, 0)).collect())
    }

    pub fn contains(&self, phi: &Mat) -> bool {
        self.coords_of(phi).is_some()
    }

    /// Spot-check the algebra invariants: identity in the span and closure
    /// under product on sampled basis pairs.
    pub fn certify(&self, samples: usize, rng: &mut impl Rng) -> Result<(), ModuleError> {
        let f = self.module.field();
        if !self.contains(&Mat::identity(f, self.module.dim())) {
            return Err(ModuleError::Certification("identity missing from End".into()));
        }
        let n = self.dim();
        for _ in 0..samples {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if !self.contains(&self.basis[i].mul(&self.basis[j])) {
                return Err(ModuleError::Certification("End not closed under product".into()));
            }
        }
        Ok(())
    }

    /// The Jacobson radical, computed once and certified: the span is a
    /// two-sided ideal, it is nilpotent, and the quotient has zero radical
    /// in its regular representation.
    pub fn radical(&self) -> &Radical {
        self.radical.get_or_init(|| self.compute_radical())
    }

    fn compute_radical(&self) -> Radical {
        let f = self.module.field();
        let d = self.module.dim();
        let coords = radical_chain(f, &self.basis, d);
        let mut rr = coords;
        let pivots = rr.rref_in_place();
        let rad = Radical { coords: rr, pivots };

        // (a) two-sided ideal
        let rad_mats: Vec<Mat> =
            (0..rad.coords.rows).map(|r| combo(f, &self.basis, rad.coords.row(r))).collect();
        let rad_flat: Vec<Vec<u64>> = rad_mats.iter().map(flatten).collect();
        let rad_span = rows_to_mat(f, d * d, &rad_flat).row_basis();
        let in_rad = |m: &Mat| -> bool {
            let flat = flatten(m);
            let mut t = Mat::zeros(f, flat.len(), 1);
            for (i, &v) in flat.iter().enumerate() {
                t.set(i, 0, v);
            }
            coords_in_rows(&rad_span, &t).is_some()
        };
        for x in &rad_mats {
            for b in &self.basis {
                assert!(in_rad(&b.mul(x)) && in_rad(&x.mul(b)), "radical span is an ideal");
            }
        }

        // (b) nilpotency
        let mut cur = rad_span.clone();
        while cur.rows > 0 {
            let mut prods = Vec::new();
            for r in 0..cur.rows {
                let v = unflatten(f, d, cur.row(r));
                for b in &rad_mats {
                    prods.push(flatten(&v.mul(b)));
                }
            }
            let next = rows_to_mat(f, d * d, &prods).row_basis();
            assert!(next.rows < cur.rows, "radical span must be nilpotent");
            cur = next;
        }

        // (c) semisimple quotient: the same chain on the regular
        // representation of End/rad finds nothing
        let q = Quotient::new(self, &rad);
        if q.nbar() > 0 {
            let reg: Vec<Mat> = (0..q.nbar())
                .map(|i| {
                    let mut e = vec![0; q.nbar()];
                    e[i] = 1;
                    q.left_regular(&e)
                })
                .collect();
            let residue = radical_chain(f, &reg, q.nbar());
            assert!(residue.rows == 0, "quotient by the radical must be semisimple");
        }

        rad
    }

    fn quotient(&self) -> Quotient<'_> {
        Quotient::new(self, self.radical())
    }

    /// True iff the algebra is local (its semisimple quotient is a field):
    /// the quotient must be commutative with exactly one simple factor.
    pub fn is_local(&self) -> bool {
        let q = self.quotient();
        q.is_commutative() && q.simple_factor_count() == 1
    }

    /// A nontrivial idempotent endomorphism, or None if the algebra is
    /// local (certified, not a search failure). The deterministic route
    /// splits a non-scalar Frobenius-fixed central element of the radical
    /// quotient; when that quotient is a single matrix-algebra factor the
    /// split element is found by a seeded random sweep instead.
    pub fn find_idempotent(&self, seed: u64) -> Result<Option<Mat>, ModuleError> {
        let f = self.module.field();
        let d = self.module.dim();
        let q = self.quotient();
        let commutative = q.is_commutative();
        let r = q.simple_factor_count();
        if commutative && r == 1 {
            return Ok(None);
        }
        let ebar = if r >= 2 { q.central_split()? } else { q.random_split(seed)? };
        let e = self.lift_idempotent(&q, &ebar);
        let id = Mat::identity(f, d);
        assert_eq!(e.mul(&e), e, "lifted element is idempotent");
        assert!(!e.is_zero() && e != id, "lifted idempotent is nontrivial");
        Ok(Some(e))
    }

    /// Newton lift e <- 3e^2 - 2e^3 through the nilpotent radical.
    fn lift_idempotent(&self, q: &Quotient<'_>, ebar: &[u64]) -> Mat {
        let mut e = q.lift_mat(ebar);
        for _ in 0..64 {
            let e2 = e.mul(&e);
            if e2 == e {
                return e;
            }
            let e3 = e2.mul(&e);
            e = e2.scale(3).sub(&e3.scale(2));
        }
        panic!("idempotent lifting did not converge");
    }
}

// ---------------------------------------------------------------------------
// the radical quotient

/// End/rad with elements in coordinates over a complement basis.
struct Quotient<'a> {
    endo: &'a EndoAlgebra,
    rad: Radical,
    comp: Vec<usize>,
}

impl<'a> Quotient<'a> {
    fn new(endo: &'a EndoAlgebra, rad: &Radical) -> Quotient<'a> {
        let n = endo.dim();
        let comp: Vec<usize> = (0..n).filter(|i| !rad.pivots.contains(i)).collect();
        Quotient { endo, rad: rad.clone(), comp }
    }

    fn nbar(&self) -> usize {
        self.comp.len()
    }

    fn field(&self) -> PrimeField {
        self.endo.module.field()
    }

    /// Reduce full coordinates modulo the radical rows, returning
    /// complement coordinates.
    fn reduce(&self, coords: &[u64]) -> Vec<u64> {
        let f = self.field();
        let mut v = coords.to_vec();
        for (r, &p) in self.rad.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                for j in 0..v.len() {
                    v[j] = f.sub(v[j], f.mul(c, self.rad.coords.get(r, j)));
                }
            }
        }
        self.comp.iter().map(|&i| v[i]).collect()
    }

    fn lift_coords(&self, cbar: &[u64]) -> Vec<u64> {
        let mut v = vec![0; self.endo.dim()];
        for (k, &ci) in self.comp.iter().enumerate() {
            v[ci] = cbar[k];
        }
        v
    }

    fn lift_mat(&self, cbar: &[u64]) -> Mat {
        let f = self.field();
        combo(f, &self.endo.basis, &self.lift_coords(cbar))
    }

    fn one(&self) -> Vec<u64> {
        let f = self.field();
        let id = Mat::identity(f, self.endo.module.dim());
        let coords = self.endo.coords_of(&id).expect("identity lies in End");
        self.reduce(&coords)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let prod = self.lift_mat(a).mul(&self.lift_mat(b));
        let coords = self.endo.coords_of(&prod).expect("End is closed under product");
        self.reduce(&coords)
    }

    /// Matrix of left multiplication by `a` on the quotient.
    fn left_regular(&self, a: &[u64]) -> Mat {
        let f = self.field();
        let nb = self.nbar();
        let mut out = Mat::zeros(f, nb, nb);
        for j in 0..nb {
            let mut ej = vec![0; nb];
            ej[j] = 1;
            let col = self.mul(a, &ej);
            for (i, &v) in col.iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }

    fn right_regular(&self, a: &[u64]) -> Mat {
        let f = self.field();
        let nb = self.nbar();
        let mut out = Mat::zeros(f, nb, nb);
        for j in 0..nb {
            let mut ej = vec![0; nb];
            ej[j] = 1;
            let col = self.mul(&ej, a);
            for (i, &v) in col.iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }

    fn is_commutative(&self) -> bool {
        let nb = self.nbar();
        for i in 0..nb {
            let mut ei = vec![0; nb];
            ei[i] = 1;
            for j in (i + 1)..nb {
                let mut ej = vec![0; nb];
                ej[j] = 1;
                if self.mul(&ei, &ej) != self.mul(&ej, &ei) {
                    return false;
                }
            }
        }
        true
    }

    /// Basis rows (in quotient coordinates) of the center.
    fn center_rows(&self) -> Mat {
        let f = self.field();
        let nb = self.nbar();
        let mut stacked = Mat::zeros(f, 0, nb);
        for c in 0..nb {
            let mut ec = vec![0; nb];
            ec[c] = 1;
            let cond = self.left_regular(&ec).sub(&self.right_regular(&ec));
            stacked = stacked.vstack(&cond);
        }
        stacked.kernel_basis()
    }

    /// p-th power of an element (computed on a matrix lift; well defined
    /// modulo the radical ideal).
    fn frobenius(&self, a: &[u64]) -> Vec<u64> {
        let p = self.field().modulus();
        let m = mat_pow(&self.lift_mat(a), p);
        let coords = self.endo.coords_of(&m).expect("closure under powers");
        self.reduce(&coords)
    }

    /// Number of simple factors of the quotient: the dimension of the
    /// Frobenius-fixed subspace of the center.
    pub fn simple_factor_count(&self) -> usize {
        self.fixed_center_rows().rows
    }

    /// Rows spanning {z central : z^p = z}, in quotient coordinates.
    fn fixed_center_rows(&self) -> Mat {
        let f = self.field();
        let z = self.center_rows();
        if z.rows == 0 {
            return z;
        }
        // Frobenius expressed on the center basis
        let mut imgs = Mat::zeros(f, self.nbar(), z.rows);
        for t in 0..z.rows {
            let fi = self.frobenius(z.row(t));
            for (i, &v) in fi.iter().enumerate() {
                imgs.set(i, t, v);
            }
        }
        let fr = coords_in_rows(&z, &imgs).expect("center is Frobenius stable");
        let delta = fr.sub(&Mat::identity(f, z.rows));
        // kernel combos of the center basis
        delta.transpose().kernel_basis().mul(&z)
    }

    /// Deterministic idempotent from a non-scalar Frobenius-fixed central
    /// element (exists whenever there are at least two simple factors).
    fn central_split(&self) -> Result<Vec<u64>, ModuleError> {
        let f = self.field();
        let fixed = self.fixed_center_rows();
        let one = self.one();
        let one_row = rows_to_mat(f, self.nbar(), &[one.clone()]);
        for t in 0..fixed.rows {
            let z = fixed.row(t).to_vec();
            let stacked = one_row.vstack(&rows_to_mat(f, self.nbar(), &[z.clone()]));
            if stacked.rank() == 2 {
                return self.split_element(&z);
            }
        }
        Err(ModuleError::Certification(
            "no non-scalar fixed central element despite several factors".into(),
        ))
    }

    /// Seeded sweep for a split element inside a single matrix-algebra
    /// factor (the quotient is simple but not a field).
    fn random_split(&self, seed: u64) -> Result<Vec<u64>, ModuleError> {
        let f = self.field();
        let p = f.modulus();
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x6b72735f73706c69);
        for _ in 0..256 {
            let z: Vec<u64> = (0..self.nbar()).map(|_| rng.gen_range(0..p)).collect();
            if let Ok(e) = self.split_element(&z) {
                return Ok(e);
            }
        }
        Err(ModuleError::Certification(
            "idempotent search exhausted in a non-local endomorphism algebra".into(),
        ))
    }

    /// Coprime factor splitting: if the minimal polynomial of z factors as
    /// g*h with coprime parts, Bezout gives the idempotent (v*h)(z).
    fn split_element(&self, z: &[u64]) -> Result<Vec<u64>, ModuleError> {
        let f = self.field();
        let lz = self.left_regular(z);
        let mp = min_poly(&lz);
        let factors = factor(&mp, 0);
        if factors.len() < 2 {
            return Err(ModuleError::Certification("primary minimal polynomial".into()));
        }
        let g = poly_pow(&factors[0].0, factors[0].1);
        let (h, rem) = mp.divrem(&g);
        assert!(rem.is_zero());
        let (gg, _u, v) = g.xgcd(&h);
        assert!(gg.is_one(), "distinct irreducible factors are coprime");
        let proj = v.mul(&h).eval_matrix(&lz);
        let one = self.one();
        let mut onecol = Mat::zeros(f, self.nbar(), 1);
        for (i, &c) in one.iter().enumerate() {
            onecol.set(i, 0, c);
        }
        let ec = proj.mul(&onecol);
        let e: Vec<u64> = (0..self.nbar()).map(|i| ec.get(i, 0)).collect();
        assert_eq!(self.mul(&e, &e), e, "Bezout element is idempotent");
        let zero = vec![0; self.nbar()];
        assert!(e != zero && e != one, "split idempotent is nontrivial");
        Ok(e)
    }
}

// ---------------------------------------------------------------------------
// decompositions

/// One indecomposable copy inside a decomposed module.
#[derive(Clone)]
pub struct Summand {
    /// index into `Decomposition::factors`
    pub factor: usize,
    /// idempotent projector onto this copy, dim x dim
    pub idem: Mat,
    /// factor -> module
    pub sec: Mat,
    /// module -> factor, with ret . sec = id
    pub ret: Mat,
}

/// Direct-sum decomposition into indecomposables with multiplicities.
pub struct Decomposition {
    pub module: FDModule,
    pub factors: Vec<(FDModule, usize)>,
    pub copies: Vec<Summand>,
}

impl Decomposition {
    pub fn num_indecomposables(&self) -> usize {
        self.copies.len()
    }

    /// Exact structural checks: orthogonal idempotents summing to the
    /// identity, section/retraction pairs realizing them, R-linearity,
    /// and multiplicity bookkeeping.
    pub fn certify(&self) -> Result<(), ModuleError> {
        let f = self.module.field();
        let d = self.module.dim();
        let mut sum = Mat::zeros(f, d, d);
        for (i, c) in self.copies.iter().enumerate() {
            let w = &self.factors[c.factor].0;
            if !is_r_linear(&c.sec, w, &self.module) || !is_r_linear(&c.ret, &self.module, w) {
                return Err(ModuleError::Certification("copy maps are not R-linear".into()));
            }
            if c.ret.mul(&c.sec) != Mat::identity(f, w.dim()) {
                return Err(ModuleError::Certification("retraction does not split".into()));
            }
            if c.sec.mul(&c.ret) != c.idem {
                return Err(ModuleError::Certification("idempotent mismatch".into()));
            }
            for (j, other) in self.copies.iter().enumerate() {
                if i != j && !c.idem.mul(&other.idem).is_zero() {
                    return Err(ModuleError::Certification("idempotents not orthogonal".into()));
                }
            }
            sum = sum.add(&c.idem);
        }
        if sum != Mat::identity(f, d) {
            return Err(ModuleError::Certification("idempotents do not sum to identity".into()));
        }
        for (fi, (_, mult)) in self.factors.iter().enumerate() {
            let count = self.copies.iter().filter(|c| c.factor == fi).count();
            if count != *mult {
                return Err(ModuleError::Certification("multiplicity mismatch".into()));
            }
        }
        Ok(())
    }
}

/// A section/retraction pair found between two indecomposables, proving
/// `a` is (isomorphic to) a summand of `b`: ret . sec = id_a.
fn unit_pair(a: &FDModule, b: &FDModule) -> Option<(Mat, Mat)> {
    let (_, fs) = FDModule::hom(a, b).expect("same algebra");
    let (_, gs) = FDModule::hom(b, a).expect("same algebra");
    for fm in &fs {
        for gm in &gs {
            if let Some(ui) = gm.mul(fm).inverse() {
                return Some((fm.clone(), ui.mul(gm)));
            }
        }
    }
    None
}

/// Indecomposable-pair isomorphism: equal dimension plus a split unit.
fn indec_isomorphic(a: &FDModule, b: &FDModule) -> bool {
    a.dim() == b.dim() && unit_pair(a, b).is_some()
}

/// Full Krull-Schmidt decomposition by recursive idempotent splitting.
pub fn decompose(m: &FDModule, seed: u64) -> Decomposition {
    let f = m.field();
    if m.is_zero() {
        return Decomposition { module: m.clone(), factors: vec![], copies: vec![] };
    }
    let endo = EndoAlgebra::new(m);
    match endo.find_idempotent(seed).expect("idempotent search") {
        None => {
            let d = m.dim();
            let id = Mat::identity(f, d);
            Decomposition {
                module: m.clone(),
                factors: vec![(m.clone(), 1)],
                copies: vec![Summand { factor: 0, idem: id.clone(), sec: id.clone(), ret: id }],
            }
        }
        Some(e) => {
            let d = m.dim();
            let id = Mat::identity(f, d);
            let one_minus = id.sub(&e);
            // image part
            let im_rows = e.transpose().row_basis();
            let (m1, emb1) = FDModule::submodule(m, &im_rows).expect("image of an idempotent");
            let ret1 = coords_in_rows(&im_rows, &e).expect("e lands in its image");
            // kernel part
            let ker_rows = e.kernel_basis();
            let (m0, emb0) = FDModule::submodule(m, &ker_rows).expect("kernel of an idempotent");
            let ret0 = coords_in_rows(&ker_rows, &one_minus).expect("1-e lands in the kernel");

            let d1 = decompose(&m1, seed);
            let d0 = decompose(&m0, seed);

            let mut factors: Vec<(FDModule, usize)> = Vec::new();
            let mut copies: Vec<Summand> = Vec::new();
            let mut absorb = |dd: Decomposition, emb: &Mat, ret: &Mat| {
                for c in dd.copies {
                    let w = dd.factors[c.factor].0.clone();
                    let fi = match factors.iter().position(|(v, _)| indec_isomorphic(v, &w)) {
                        Some(i) => {
                            factors[i].1 += 1;
                            i
                        }
                        None => {
                            factors.push((w, 1));
                            factors.len() - 1
                        }
                    };
                    let sec = emb.mul(&c.sec);
                    let retg = c.ret.mul(ret);
                    let idem = sec.mul(&retg);
                    copies.push(Summand { factor: fi, idem, sec, ret: retg });
                }
            };
            absorb(d1, &emb1, &ret1);
            absorb(d0, &emb0, &ret0);
            Decomposition { module: m.clone(), factors, copies }
        }
    }
}

/// Witness that X is a direct summand of M: R-linear maps with
/// ret . sec = id_X.
pub struct SummandWitness {
    pub sec: Mat,
    pub ret: Mat,
}

/// Witness isomorphism with its inverse.
pub struct IsoWitness {
    pub map: Mat,
    pub inverse: Mat,
}

/// Is X a direct summand of M? Decomposes X only; each indecomposable copy
/// is located in M by the local-endomorphism unit criterion and peeled off
/// before the next is sought. The returned witness is re-verified.
pub fn is_summand(
    x: &FDModule,
    m: &FDModule,
    seed: u64,
) -> Result<Option<SummandWitness>, ModuleError> {
    if !x.same_algebra(m) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let f = x.field();
    if x.is_zero() {
        return Ok(Some(SummandWitness {
            sec: Mat::zeros(f, m.dim(), 0),
            ret: Mat::zeros(f, 0, m.dim()),
        }));
    }
    if x.dim() > m.dim() {
        return Ok(None);
    }
    let decomp = decompose(x, seed);

    let mut cur = m.clone();
    let mut emb = Mat::identity(f, m.dim());
    let mut retr = Mat::identity(f, m.dim());
    let mut sec_parts: Vec<Mat> = Vec::new();
    let mut ret_parts: Vec<Mat> = Vec::new();
    for c in &decomp.copies {
        let w = &decomp.factors[c.factor].0;
        if cur.dim() < w.dim() {
            return Ok(None);
        }
        let (sig, pi) = match unit_pair(w, &cur) {
            Some(p) => p,
            None => return Ok(None),
        };
        sec_parts.push(emb.mul(&sig));
        ret_parts.push(pi.mul(&retr));
        // peel the found copy
        let e = sig.mul(&pi);
        let ker_rows = e.kernel_basis();
        let (next, emb_step) = FDModule::submodule(&cur, &ker_rows).expect("kernel submodule");
        let one_minus = Mat::identity(f, cur.dim()).sub(&e);
        let ret_step = coords_in_rows(&ker_rows, &one_minus).expect("1-e lands in the kernel");
        emb = emb.mul(&emb_step);
        retr = ret_step.mul(&retr);
        cur = next;
    }

    // assemble: the cross terms are strictly triangular, so the composite
    // with the copy projections of X is invertible
    let mut sec = Mat::zeros(f, m.dim(), x.dim());
    let mut ret0 = Mat::zeros(f, x.dim(), m.dim());
    for (i, c) in decomp.copies.iter().enumerate() {
        sec = sec.add(&sec_parts[i].mul(&c.ret));
        ret0 = ret0.add(&c.sec.mul(&ret_parts[i]));
    }
    let u = ret0.mul(&sec);
    let ui = u.inverse().expect("assembled composite is unit triangular");
    let ret = ui.mul(&ret0);
    assert_eq!(ret.mul(&sec), Mat::identity(f, x.dim()));
    assert!(is_r_linear(&sec, x, m) && is_r_linear(&ret, m, x), "witness maps are R-linear");
    Ok(Some(SummandWitness { sec, ret }))
}

/// Module isomorphism via Krull-Schmidt: equal dimension together with
/// X | M forces X isomorphic to M; the summand section is then invertible.
///
/// Positive instances are usually settled by a fast path first: when any
/// isomorphism exists, the invertible maps form a dense open subset of
/// Hom(M, N), so a few random points of that space almost surely hit one.
/// Only if the sampling fails does the full decomposition run.
pub fn is_isomorphic(
    m: &FDModule,
    n: &FDModule,
    seed: u64,
) -> Result<Option<IsoWitness>, ModuleError> {
    if !m.same_algebra(n) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let f = m.field();
    if m.dim() == 0 {
        return Ok(Some(IsoWitness { map: Mat::zeros(f, 0, 0), inverse: Mat::zeros(f, 0, 0) }));
    }
    let (_, basis) = hom_via_presentation(m, n)?;
    if !basis.is_empty() {
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let p = f.modulus();
        for _ in 0..64 {
            let mut cand = Mat::zeros(f, n.dim(), m.dim());
            for phi in &basis {
                cand = cand.add(&phi.scale(rng.gen_range(0..p)));
            }
            if let Some(inv) = cand.inverse() {
                debug_assert!(is_r_linear(&cand, m, n), "hom basis point must be R-linear");
                return Ok(Some(IsoWitness { map: cand, inverse: inv }));
            }
        }
    }
    match is_summand(m, n, seed)? {
        None => Ok(None),
        Some(w) => {
            let inv = w.sec.inverse().expect("split section of equal dimension");
            Ok(Some(IsoWitness { map: w.sec, inverse: inv }))
        }
    }
}

/// Is X in add(M): every indecomposable factor of X occurs in M
/// (multiplicities irrelevant).
pub fn in_add(x: &FDModule, m: &FDModule, seed: u64) -> Result<bool, ModuleError> {
    if !x.same_algebra(m) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if x.is_zero() {
        return Ok(true);
    }
    if m.is_zero() {
        return Ok(false);
    }
    let decomp = decompose(x, seed);
    for (w, _) in &decomp.factors {
        if unit_pair(w, m).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::fixtures::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn endomorphisms_of_the_free_module_form_the_ring() {
        let r5 = ring_dim5();
        let free = FDModule::free(r5.clone(), 1);
        let e = EndoAlgebra::new(&free);
        assert_eq!(e.dim(), 5);
        assert_eq!(e.radical().dim(), 4);
        assert!(e.is_local());
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        e.certify(10, &mut rng).unwrap();
    }

    #[test]
    fn endomorphisms_of_the_residue_field() {
        let r5 = ring_dim5();
        let k = FDModule::residue_field(r5);
        let e = EndoAlgebra::new(&k);
        assert_eq!(e.dim(), 1);
        assert_eq!(e.radical().dim(), 0);
        assert!(e.is_local());
        assert!(e.find_idempotent(0).unwrap().is_none());
    }

    #[test]
    fn semisimple_square_is_a_matrix_algebra() {
        let r5 = ring_dim5();
        let k2 = FDModule::semisimple(r5, 2);
        let e = EndoAlgebra::new(&k2);
        assert_eq!(e.dim(), 4);
        assert_eq!(e.radical().dim(), 0);
        assert!(!e.is_local());
        let idem = e.find_idempotent(0).unwrap().expect("matrix algebra splits");
        assert_eq!(idem.mul(&idem), idem);
    }

    #[test]
    fn decompose_mixed_direct_sum() {
        let r5 = ring_dim5();
        let free = FDModule::free(r5.clone(), 1);
        let k = FDModule::residue_field(r5);
        let sum = FDModule::direct_sum(&[&free, &k]);
        let d = decompose(&sum, 0);
        d.certify().unwrap();
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.num_indecomposables(), 2);
    }

    #[test]
    fn decompose_semisimple_power_groups_multiplicity() {
        let r5 = ring_dim5();
        let k3 = FDModule::semisimple(r5, 3);
        let d = decompose(&k3, 0);
        d.certify().unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].1, 3);
        assert_eq!(d.factors[0].0.dim(), 1);
    }

    #[test]
    fn maximal_ideal_indecomposable_on_the_dim5_ring() {
        let r5 = ring_dim5();
        let m = FDModule::maximal_ideal(r5);
        let d = decompose(&m, 0);
        d.certify().unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].1, 1);
    }

    #[test]
    fn maximal_ideal_splits_on_the_dim7_ring() {
        let r7 = ring_dim7();
        let m = FDModule::maximal_ideal(r7);
        let d = decompose(&m, 0);
        d.certify().unwrap();
        assert_eq!(d.num_indecomposables(), 2);
        let mut dims: Vec<usize> = d.copies.iter().map(|c| d.factors[c.factor].0.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![3, 3]);
    }

    #[test]
    fn maximal_ideal_splits_on_the_dim3_and_dim4_rings() {
        for alg in [ring_dim3(), ring_dim4()] {
            let m = FDModule::maximal_ideal(alg);
            let d = decompose(&m, 0);
            d.certify().unwrap();
            assert_eq!(d.num_indecomposables(), 2);
        }
    }

    #[test]
    fn summand_of_a_direct_sum_is_found_with_witness() {
        let r5 = ring_dim5();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let a = FDModule::random_module(&r5, 2, 1, &mut rng);
        let b = FDModule::random_module(&r5, 1, 2, &mut rng);
        let sum = FDModule::direct_sum(&[&a, &b]);
        let w = is_summand(&a, &sum, 0).unwrap().expect("left part is a summand");
        assert_eq!(w.ret.mul(&w.sec), Mat::identity(r5.field(), a.dim()));
    }

    #[test]
    fn residue_field_is_not_a_summand_of_the_free_module() {
        let r5 = ring_dim5();
        let k = FDModule::residue_field(r5.clone());
        let free = FDModule::free(r5, 1);
        assert!(is_summand(&k, &free, 0).unwrap().is_none());
    }

    #[test]
    fn maximal_ideal_is_a_summand_of_omega2k_on_the_dim5_ring() {
        let r5 = ring_dim5();
        let k = FDModule::residue_field(r5.clone());
        let m = FDModule::maximal_ideal(r5);
        let omega2 = k.syzygy_n(2);
        assert!(is_summand(&m, &omega2, 0).unwrap().is_some());
    }

    #[test]
    fn maximal_ideal_is_not_a_summand_of_omega2k_on_the_dim6_ring() {
        let r6 = ring_dim6();
        let k = FDModule::residue_field(r6.clone());
        let m = FDModule::maximal_ideal(r6);
        let omega2 = k.syzygy_n(2);
        assert!(is_summand(&m, &omega2, 0).unwrap().is_none());
    }

    #[test]
    fn additive_closure_membership() {
        let r5 = ring_dim5();
        let k = FDModule::residue_field(r5.clone());
        let m = FDModule::maximal_ideal(r5.clone());
        let free = FDModule::free(r5, 1);
        let omega2 = k.syzygy_n(2);
        let target = FDModule::direct_sum(&[&free, &omega2]);
        assert!(in_add(&m, &target, 0).unwrap());
        assert!(in_add(&m, &m, 0).unwrap());
        // (x^2, 0) spans a socle line outside m*Omega^2(k), so k splits off
        assert!(in_add(&k, &target, 0).unwrap());
    }

    #[test]
    fn residue_field_not_in_add_over_the_gorenstein_square() {
        let g4 = ring_gor4();
        let k = FDModule::residue_field(g4.clone());
        let free = FDModule::free(g4, 1);
        let omega2 = k.syzygy_n(2);
        let target = FDModule::direct_sum(&[&free, &omega2]);
        assert!(!in_add(&k, &target, 0).unwrap());
    }

    #[test]
    fn second_syzygy_of_k_is_k_over_dual_numbers() {
        let dn = dual_numbers();
        let k = FDModule::residue_field(dn.clone());
        let omega2 = k.syzygy_n(2);
        let w = is_isomorphic(&k, &omega2, 0).unwrap().expect("periodicity");
        assert_eq!(w.inverse.mul(&w.map), Mat::identity(dn.field(), k.dim()));
        let free = FDModule::free(dn, 1);
        assert!(is_isomorphic(&k, &free, 0).unwrap().is_none());
    }

    #[test]
    fn algebra_mismatch_is_reported() {
        let a = ring_dim5();
        let b = ring_dim6();
        let ka = FDModule::residue_field(a);
        let kb = FDModule::residue_field(b);
        assert!(matches!(is_isomorphic(&ka, &kb, 0), Err(ModuleError::AlgebraMismatch)));
        assert!(matches!(is_summand(&ka, &kb, 0), Err(ModuleError::AlgebraMismatch)));
        assert!(matches!(in_add(&ka, &kb, 0), Err(ModuleError::AlgebraMismatch)));
    }

    fn conjugated(m: &FDModule, rng: &mut ChaCha12Rng) -> FDModule {
        let f = m.field();
        let p = f.modulus();
        let d = m.dim();
        loop {
            let mut s = Mat::zeros(f, d, d);
            for r in 0..d {
                for c in 0..d {
                    s.set(r, c, rng.gen_range(0..p));
                }
            }
            if let Some(si) = s.inverse() {
                let actions: Vec<Mat> =
                    m.actions().iter().map(|a| s.mul(a).mul(&si)).collect();
                return FDModule::from_parts(m.algebra().clone(), d, actions);
            }
        }
    }

    #[test]
    fn decomposition_is_stable_under_basis_change() {
        let r5 = ring_dim5();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let k = FDModule::residue_field(r5.clone());
        let m = FDModule::maximal_ideal(r5.clone());
        let free = FDModule::free(r5, 1);
        let orig = FDModule::direct_sum(&[&k, &m, &free]);
        let conj = conjugated(&orig, &mut rng);
        let d1 = decompose(&orig, 0);
        let d2 = decompose(&conj, 0);
        d1.certify().unwrap();
        d2.certify().unwrap();
        assert_eq!(d1.num_indecomposables(), d2.num_indecomposables());
        // match factor multisets through isomorphism
        let mut used = vec![false; d2.factors.len()];
        for (w, mult) in &d1.factors {
            let hit = d2.factors.iter().enumerate().position(|(j, (v, m2))| {
                !used[j] && m2 == mult && is_isomorphic(w, v, 0).unwrap().is_some()
            });
            used[hit.expect("matching factor")] = true;
        }
    }

    #[test]
    fn hom_dimension_is_an_isomorphism_invariant() {
        let r5 = ring_dim5();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let m = FDModule::random_module(&r5, 2, 2, &mut rng);
        let n = conjugated(&m, &mut rng);
        assert!(is_isomorphic(&m, &n, 0).unwrap().is_some());
        for _ in 0..3 {
            let x = FDModule::random_module(&r5, 1, 2, &mut rng);
            let da = FDModule::hom(&x, &m).unwrap().0.dim();
            let db = FDModule::hom(&x, &n).unwrap().0.dim();
            assert_eq!(da, db);
        }
    }

    #[test]
    fn radical_of_a_mixed_endomorphism_algebra_certifies() {
        let r5 = ring_dim5();
        let k = FDModule::residue_field(r5.clone());
        let free = FDModule::free(r5.clone(), 1);
        let m = FDModule::maximal_ideal(r5);
        let sum = FDModule::direct_sum(&[&k, &free, &m]);
        // radical() certifies internally: ideal, nilpotent, semisimple quotient
        let e = EndoAlgebra::new(&sum);
        assert!(e.radical().dim() > 0);
        assert!(!e.is_local());
    }
}
