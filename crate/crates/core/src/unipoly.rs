//! Univariate polynomials over a prime field, plus the matrix invariants
//! built on them (characteristic and minimal polynomials) and complete
//! factorization into irreducibles.
//!
//! Factorization runs squarefree decomposition, then distinct-degree
//! splitting, then seeded equal-degree splitting, so the only randomness is
//! the explicit seed. Results are sorted canonically and re-multiplication
//! is cheap, which the tests exploit.

use crate::field::PrimeField;
use crate::mat::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

/// Coefficients low degree first, no trailing zeros; zero = empty vec.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 if c == 1 => "t".into(),
                1 => format!("{c}*t"),
                _ if c == 1 => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl UniPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        let p = field.modulus();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        UniPoly { field, coeffs: vec![] }
    }

    pub fn one(field: PrimeField) -> Self {
        UniPoly { field, coeffs: vec![1] }
    }

    pub fn x(field: PrimeField) -> Self {
        UniPoly { field, coeffs: vec![0, 1] }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        UniPoly::new(field, vec![c])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lead(&self) -> u64 {
        *self.coeffs.last().expect("lead of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.field.add(self.coeff(i), other.coeff(i));
        }
        UniPoly::new(self.field, out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.field.sub(self.coeff(i), other.coeff(i));
        }
        UniPoly::new(self.field, out)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let p = self.field.modulus();
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        UniPoly::new(self.field, out)
    }

    pub fn scale(&self, s: u64) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|&c| self.field.mul(c, s)).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < div.coeffs.len() {
            return (UniPoly::zero(self.field), self.clone());
        }
        let f = self.field;
        let dlead_inv = f.inv(div.lead());
        let mut rem = self.coeffs.clone();
        let dd = div.deg();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, dlead_inv);
            quot[i - dd] = q;
            for (k, &dc) in div.coeffs.iter().enumerate() {
                let idx = i - dd + k;
                rem[idx] = f.sub(rem[idx], f.mul(q, dc));
            }
        }
        (UniPoly::new(f, quot), UniPoly::new(f, rem))
    }

    pub fn rem(&self, div: &UniPoly) -> UniPoly {
        self.divrem(div).1
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g, g monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = f.inv(r0.lead());
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(self.field);
        }
        let f = self.field;
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| f.mul(c, (i as u64 + 1) % f.modulus()))
            .collect();
        UniPoly::new(f, out)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &Mat) -> Mat {
        assert_eq!(a.rows, a.cols);
        let mut acc = Mat::zeros(self.field, a.rows, a.rows);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            for i in 0..a.rows {
                acc.set(i, i, self.field.add(acc.get(i, i), c));
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &UniPoly) -> UniPoly {
        let mut base = self.rem(modulus);
        let mut acc = UniPoly::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// p-th root of a polynomial with zero derivative, i.e. of g(x^p).
    /// Over F_p coefficients are fixed by Frobenius, so this just reindexes.
    fn pth_root(&self) -> UniPoly {
        let p = self.field.modulus() as usize;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| i % p == 0)
            .map(|(_, &c)| c)
            .collect();
        UniPoly::new(self.field, out)
    }
}

/// Characteristic polynomial via Hessenberg reduction, monic of degree n.
pub fn char_poly(a: &Mat) -> UniPoly {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let f = a.field();
    let p = f.modulus();
    if n == 0 {
        return UniPoly::one(f);
    }
    // similarity-reduce to upper Hessenberg form
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let piv = (j + 1..n).find(|&i| h.get(i, j) != 0);
        let Some(piv) = piv else { continue };
        if piv != j + 1 {
            // swap rows and columns (similarity)
            for c in 0..n {
                let (x, y) = (h.get(j + 1, c), h.get(piv, c));
                h.set(j + 1, c, y);
                h.set(piv, c, x);
            }
            for r in 0..n {
                let (x, y) = (h.get(r, j + 1), h.get(r, piv));
                h.set(r, j + 1, y);
                h.set(r, piv, x);
            }
        }
        let inv = f.inv(h.get(j + 1, j));
        for i in j + 2..n {
            let factor = f.mul(h.get(i, j), inv);
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            // row_i -= factor * row_{j+1}
            for c in 0..n {
                let v = (h.get(i, c) + neg * h.get(j + 1, c)) % p;
                h.set(i, c, v);
            }
            // col_{j+1} += factor * col_i
            for r in 0..n {
                let v = (h.get(r, j + 1) + factor * h.get(r, i)) % p;
                h.set(r, j + 1, v);
            }
        }
    }
    // det(tI - H[0..m,0..m]) by the Hessenberg recurrence
    let mut ps: Vec<UniPoly> = vec![UniPoly::one(f)];
    for m in 1..=n {
        let lin = UniPoly::new(f, vec![f.neg(h.get(m - 1, m - 1)), 1]);
        let mut pm = lin.mul(&ps[m - 1]);
        let mut beta = 1u64; // product of subdiagonal entries
        for i in 1..m {
            beta = f.mul(beta, h.get(m - i, m - i - 1));
            if beta == 0 {
                break;
            }
            let coef = f.mul(beta, h.get(m - 1 - i, m - 1));
            if coef != 0 {
                pm = pm.sub(&ps[m - 1 - i].scale(coef));
            }
        }
        ps.push(pm);
    }
    ps.pop().unwrap()
}

/// Minimal polynomial: lcm of the local minimal polynomials of the standard
/// basis vectors, with early exit once the degree can no longer grow.
pub fn min_poly(a: &Mat) -> UniPoly {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let f = a.field();
    if n == 0 {
        return UniPoly::one(f);
    }
    let mut m = UniPoly::one(f);
    for seed in 0..n {
        if m.degree() == Some(n) {
            break;
        }
        let mut v = vec![0u64; n];
        v[seed] = 1;
        // rows: [iterate | power coordinates], eliminated incrementally
        let mut reduced: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut cur = v.clone();
        let mut k = 0usize;
        let local = loop {
            let mut row = cur.clone();
            let mut tail = vec![0u64; n + 1];
            tail[k] = 1;
            // reduce row against the current basis
            for (idx, (brow, btail)) in reduced.iter().enumerate() {
                let c = row[pivots[idx]];
                if c != 0 {
                    for (x, &y) in row.iter_mut().zip(brow) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                    for (x, &y) in tail.iter_mut().zip(btail) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            if let Some(pc) = row.iter().position(|&x| x != 0) {
                let inv = f.inv(row[pc]);
                for x in row.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                for x in tail.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                reduced.push((row, tail));
                pivots.push(pc);
                cur = a.mul_vec(&cur);
                k += 1;
            } else {
                // dependency found: tail holds c with sum c_k A^k v = 0,
                // negated except the leading 1 handled by normalization
                break UniPoly::new(f, tail).monic();
            }
        };
        // lcm(m, local)
        let g = m.gcd(&local);
        m = m.mul(&local.divrem(&g).0);
    }
    m.monic()
}

pub fn is_nilpotent_matrix(a: &Mat) -> bool {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return true;
    }
    let mut pw = a.clone();
    let mut e = 1usize;
    while e < n {
        pw = pw.mul(&pw);
        e *= 2;
    }
    pw.is_zero()
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients). The scalar content is dropped; callers
/// that need it use `lead()` of the input.
pub fn factor(poly: &UniPoly, seed: u64) -> Vec<(UniPoly, usize)> {
    assert!(!poly.is_zero(), "factor of zero polynomial");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    for (g, mult) in squarefree_decomposition(&poly.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.coeffs.len(), &a.0.coeffs, a.1).cmp(&(b.0.coeffs.len(), &b.0.coeffs, b.1))
    });
    out
}

/// Squarefree decomposition in characteristic p (Yun with Frobenius descent).
fn squarefree_decomposition(poly: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    let mut stack = vec![(poly.clone(), 1usize)];
    while let Some((fpoly, scale)) = stack.pop() {
        if fpoly.degree() == Some(0) {
            continue;
        }
        let deriv = fpoly.derivative();
        if deriv.is_zero() {
            // f = g(x^p)
            stack.push((fpoly.pth_root(), scale * fpoly.field().modulus() as usize));
            continue;
        }
        let mut c = fpoly.gcd(&deriv);
        let mut w = fpoly.divrem(&c).0;
        let mut i = 1usize;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if !z.is_one() {
                out.push((z, i * scale));
            }
            i += 1;
            c = c.divrem(&y).0;
            w = y;
        }
        if !c.is_one() {
            stack.push((c.pth_root(), scale * fpoly.field().modulus() as usize));
        }
    }
    out
}

/// Distinct-degree splitting of a squarefree monic polynomial.
fn distinct_degree(poly: &UniPoly) -> Vec<(UniPoly, usize)> {
    let f = poly.field();
    let p = f.modulus();
    let mut out = Vec::new();
    let mut g = poly.clone();
    let mut h = UniPoly::x(f).rem(&g);
    let mut d = 0usize;
    while g.degree().map_or(false, |dg| dg > 0) {
        d += 1;
        if 2 * d > g.deg() {
            out.push((g.clone(), g.deg()));
            break;
        }
        h = h.pow_mod(p, &g);
        let diff = h.sub(&UniPoly::x(f));
        let gd = g.gcd(&diff);
        if gd.degree().map_or(false, |x| x > 0) {
            out.push((gd.clone(), d));
            g = g.divrem(&gd).0;
            h = h.rem(&g);
        }
    }
    out
}

/// Seeded Cantor–Zassenhaus equal-degree splitting (trace method at p = 2).
fn equal_degree(poly: &UniPoly, d: usize, rng: &mut ChaCha12Rng) -> Vec<UniPoly> {
    let f = poly.field();
    let p = f.modulus();
    if poly.deg() == d {
        return vec![poly.monic()];
    }
    loop {
        let deg = poly.deg();
        let coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
        let a = UniPoly::new(f, coeffs);
        if a.is_zero() {
            continue;
        }
        let split = if p == 2 {
            // trace map sum a^(2^i), i < d
            let mut acc = UniPoly::zero(f);
            let mut t = a.rem(poly);
            for _ in 0..d {
                acc = acc.add(&t).rem(poly);
                t = t.mul(&t).rem(poly);
            }
            poly.gcd(&acc)
        } else {
            // norm chain: t = prod a^(p^i), then t^((p-1)/2) = a^((p^d-1)/2)
            let mut t = a.rem(poly);
            let mut fr = a.rem(poly);
            for _ in 1..d {
                fr = fr.pow_mod(p, poly);
                t = t.mul(&fr).rem(poly);
            }
            let b = t.pow_mod((p - 1) / 2, poly);
            poly.gcd(&b.sub(&UniPoly::one(f)))
        };
        if let Some(sd) = split.degree() {
            if sd > 0 && sd < poly.deg() {
                let rest = poly.divrem(&split).0;
                let mut out = equal_degree(&split, d, rng);
                out.extend(equal_degree(&rest, d, rng));
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn divrem_roundtrip() {
        let f = fp(7);
        let a = UniPoly::new(f, vec![1, 2, 3, 4, 5]);
        let b = UniPoly::new(f, vec![2, 0, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().map_or(true, |d| d < b.deg()));
    }

    #[test]
    fn xgcd_identity() {
        let f = fp(101);
        let a = UniPoly::new(f, vec![1, 0, 1]); // t^2 + 1
        let b = UniPoly::new(f, vec![1, 1]); // t + 1
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn char_poly_of_companion_and_cayley_hamilton() {
        let f = fp(101);
        // companion matrix of t^3 + 2t + 5
        let m = Mat::from_rows(
            f,
            vec![vec![0, 0, f.neg(5)], vec![1, 0, f.neg(2)], vec![0, 1, 0]],
        );
        let cp = char_poly(&m);
        assert_eq!(cp, UniPoly::new(f, vec![5, 2, 0, 1]));
        assert!(cp.eval_matrix(&m).is_zero());
    }

    #[test]
    fn char_poly_cayley_hamilton_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for &p in &[2u64, 3, 101] {
            let f = fp(p);
            for n in 1..=8 {
                let m = Mat::from_fn(f, n, n, |_, _| rng.gen_range(0..p));
                let cp = char_poly(&m);
                assert_eq!(cp.deg(), n);
                assert_eq!(cp.lead(), 1);
                assert!(cp.eval_matrix(&m).is_zero(), "CH failed p={p} n={n}");
            }
        }
    }

    #[test]
    fn min_poly_divides_char_poly() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let f = fp(5);
        for n in 1..=7 {
            let m = Mat::from_fn(f, n, n, |_, _| rng.gen_range(0..5));
            let mp = min_poly(&m);
            let cp = char_poly(&m);
            assert!(cp.rem(&mp).is_zero());
            assert!(mp.eval_matrix(&m).is_zero());
        }
    }

    #[test]
    fn min_poly_of_identity_and_nilpotent() {
        let f = fp(101);
        let id = Mat::identity(f, 4);
        assert_eq!(min_poly(&id), UniPoly::new(f, vec![f.neg(1), 1]));
        let mut nil = Mat::zeros(f, 3, 3);
        nil.set(0, 1, 1);
        nil.set(1, 2, 1);
        assert_eq!(min_poly(&nil), UniPoly::new(f, vec![0, 0, 0, 1]));
        assert!(is_nilpotent_matrix(&nil));
        assert!(!is_nilpotent_matrix(&id));
    }

    #[test]
    fn factor_reassembles_small_cases() {
        let f = fp(5);
        // (t+1)^2 (t^2+2) over F_5; t^2+2 = t^2-3 irreducible mod 5 (3 is
        // a non-residue: squares are 0,1,4).
        let a = UniPoly::new(f, vec![1, 1]);
        let b = UniPoly::new(f, vec![2, 0, 1]);
        let prod = a.mul(&a).mul(&b);
        let factors = factor(&prod, 0);
        let mut re = UniPoly::one(f);
        for (g, m) in &factors {
            for _ in 0..*m {
                re = re.mul(g);
            }
        }
        assert_eq!(re, prod.monic());
        assert_eq!(factors.len(), 2);
        assert!(factors.contains(&(a.monic(), 2)));
        assert!(factors.contains(&(b.monic(), 1)));
    }

    #[test]
    fn factor_frobenius_power() {
        let f = fp(3);
        // (t^3 - t - 1) is irreducible over F_3; cube it via x -> x^3 trick:
        // g(x^3) where g = t - 1 gives x^3 - 1 = (x - 1)^3.
        let a = UniPoly::new(f, vec![f.neg(1), 0, 0, 1]);
        let factors = factor(&a, 0);
        assert_eq!(factors, vec![(UniPoly::new(f, vec![f.neg(1), 1]), 3)]);
    }

    #[test]
    fn factor_big_mixed_randomized() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for &p in &[2u64, 3, 101] {
            let f = fp(p);
            for trial in 0..6 {
                let deg = 3 + (trial % 4);
                let mut poly = UniPoly::one(f);
                for _ in 0..deg {
                    // random monic linear or quadratic
                    let d = 1 + rng.gen_range(0..2usize);
                    let mut cs: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
                    cs.push(1);
                    poly = poly.mul(&UniPoly::new(f, cs));
                }
                let factors = factor(&poly, trial as u64);
                let mut re = UniPoly::one(f);
                for (g, m) in &factors {
                    assert_eq!(g.lead(), 1);
                    for _ in 0..*m {
                        re = re.mul(g);
                    }
                }
                assert_eq!(re, poly.monic());
            }
        }
    }
}
