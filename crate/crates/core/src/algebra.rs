//! Finite-dimensional local algebras over a prime field, with an explicit
//! basis, full structure constants, and a distinguished generator list of
//! the maximal ideal.
//!
//! Every constructor certifies the structure it produces: the unit law,
//! commutativity, associativity on basis triples, that the span of the
//! non-unit basis vectors is an ideal, and that this ideal is nilpotent
//! (which is what makes the algebra local with that span as its maximal
//! ideal). Construction fails loudly otherwise.
//!
//! Conventions baked into the representation:
//! - basis index 0 is the unit element; indices 1..dim span the maximal
//!   ideal m;
//! - elements are coordinate vectors (`Vec<u64>`) in that basis;
//! - every basis element carries a word: an exponent vector over the
//!   generator list whose evaluation reproduces the basis element. Words
//!   let module code express each basis action as a product of generator
//!   actions.

use crate::field::PrimeField;
use crate::ideal::{IdealError, PolyIdeal};
use crate::mat::Mat;
use crate::mpoly::{Mono, MultiPoly};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("quotient ring is not finite-dimensional")]
    NotArtinian,
    #[error("ideal is not contained in the irrelevant maximal ideal")]
    NotInIrrelevant,
    #[error("ideal is the whole ring")]
    WholeRing,
    #[error("algebras are defined over different prime fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("structure certification failed: {0}")]
    Certification(String),
}

impl From<IdealError> for AlgebraError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::NotArtinian => AlgebraError::NotArtinian,
            IdealError::UnitIdeal => AlgebraError::WholeRing,
            IdealError::NotInIrrelevant => AlgebraError::NotInIrrelevant,
            IdealError::MemberElement => {
                AlgebraError::Certification("unexpected ideal member".into())
            }
        }
    }
}

/// A finite-dimensional local commutative algebra with certified structure.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalAlgebra {
    field: PrimeField,
    dim: usize,
    labels: Vec<String>,
    /// Left-multiplication matrix of each basis element.
    left_mult: Vec<Mat>,
    /// Generators of the maximal ideal, as coordinate vectors.
    gens: Vec<Vec<u64>>,
    gen_labels: Vec<String>,
    /// Exponent word over `gens` reproducing each basis element.
    basis_words: Vec<Mono>,
    /// Least n with m^n = 0 (1 for the field itself).
    loewy: usize,
}

impl std::fmt::Debug for LocalAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LocalAlgebra(dim {}, basis [{}], gens [{}])",
            self.dim,
            self.labels.join(", "),
            self.gen_labels.join(", ")
        )
    }
}

/// A unital algebra map, stored as the matrix of the underlying linear map
/// (columns indexed by source basis, rows by target basis).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraHom {
    pub matrix: Mat,
}

impl AlgebraHom {
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.matrix.mul_vec(v)
    }

    /// Check the map is unital and multiplicative between the two algebras.
    pub fn certify(&self, source: &LocalAlgebra, target: &LocalAlgebra) -> Result<(), AlgebraError> {
        if self.matrix.cols != source.dim || self.matrix.rows != target.dim {
            return Err(AlgebraError::DimensionMismatch(format!(
                "hom matrix {}x{} between algebras of dimension {} and {}",
                self.matrix.rows, self.matrix.cols, source.dim, target.dim
            )));
        }
        if self.apply(&source.unit()) != target.unit() {
            return Err(AlgebraError::Certification("hom does not preserve the unit".into()));
        }
        for i in 0..source.dim {
            for j in 0..=i {
                let prod = source.mul_basis(i, j);
                let lhs = self.apply(&prod);
                let rhs = target.mul_elems(
                    &self.apply(&source.basis_elem(i)),
                    &self.apply(&source.basis_elem(j)),
                );
                if lhs != rhs {
                    return Err(AlgebraError::Certification(format!(
                        "hom not multiplicative on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Certify as an isomorphism of algebras.
    pub fn certify_isomorphism(
        &self,
        source: &LocalAlgebra,
        target: &LocalAlgebra,
    ) -> Result<(), AlgebraError> {
        self.certify(source, target)?;
        if source.dim != target.dim || self.matrix.rank() != source.dim {
            return Err(AlgebraError::Certification("hom is not bijective".into()));
        }
        Ok(())
    }
}

impl LocalAlgebra {
    /// Assemble and certify an algebra from raw structure data.
    pub fn from_raw_parts(
        field: PrimeField,
        labels: Vec<String>,
        left_mult: Vec<Mat>,
        gens: Vec<Vec<u64>>,
        gen_labels: Vec<String>,
        basis_words: Vec<Mono>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if dim == 0 {
            return Err(AlgebraError::Certification("empty basis".into()));
        }
        if left_mult.len() != dim || basis_words.len() != dim || gens.len() != gen_labels.len() {
            return Err(AlgebraError::DimensionMismatch("structure table sizes".into()));
        }
        let mut alg = LocalAlgebra {
            field,
            dim,
            labels,
            left_mult,
            gens,
            gen_labels,
            basis_words,
            loewy: 0,
        };
        alg.loewy = alg.certify()?;
        Ok(alg)
    }

    /// Full structure certification; returns the Loewy length.
    fn certify(&self) -> Result<usize, AlgebraError> {
        let d = self.dim;
        for (i, l) in self.left_mult.iter().enumerate() {
            if l.rows != d || l.cols != d {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "multiplication matrix {i} is {}x{}",
                    l.rows, l.cols
                )));
            }
        }
        // unit law: e_0 * e_j = e_j
        if self.left_mult[0] != Mat::identity(self.field, d) {
            return Err(AlgebraError::Certification("basis element 0 is not a unit".into()));
        }
        // commutativity: e_i e_j = e_j e_i
        for i in 0..d {
            for j in 0..i {
                if self.mul_basis(i, j) != self.mul_basis(j, i) {
                    return Err(AlgebraError::Certification(format!(
                        "multiplication not commutative on ({i}, {j})"
                    )));
                }
            }
        }
        // associativity: L_{e_i} L_{e_j} = L_{e_i e_j}
        for i in 1..d {
            for j in 1..=i {
                let lhs = self.left_mult[i].mul(&self.left_mult[j]);
                let prod = self.mul_basis(i, j);
                let mut rhs = Mat::zeros(self.field, d, d);
                for (t, &c) in prod.iter().enumerate() {
                    if c != 0 {
                        rhs = rhs.add(&self.left_mult[t].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(AlgebraError::Certification(format!(
                        "multiplication not associative at pair ({i}, {j})"
                    )));
                }
            }
        }
        // the span of e_1.. is an ideal: products of positive basis elements
        // have no unit component
        for i in 1..d {
            for j in 1..=i {
                if self.mul_basis(i, j)[0] != 0 {
                    return Err(AlgebraError::Certification(format!(
                        "maximal-ideal span is not an ideal at pair ({i}, {j})"
                    )));
                }
            }
        }
        // generators lie in m
        for (gi, g) in self.gens.iter().enumerate() {
            if g.len() != d {
                return Err(AlgebraError::DimensionMismatch(format!("generator {gi}")));
            }
            if g[0] != 0 {
                return Err(AlgebraError::Certification(format!(
                    "generator {gi} has a unit component"
                )));
            }
        }
        // m nilpotent: certifies locality and yields the Loewy length
        let dims = self.m_power_dims_internal(d + 1);
        let loewy = match dims.iter().position(|&r| r == 0) {
            Some(k) => k + 1,
            None => {
                return Err(AlgebraError::Certification(
                    "maximal-ideal span is not nilpotent; algebra is not local".into(),
                ))
            }
        };
        // basis words evaluate back to the basis elements, and the word
        // alphabet matches the generator list
        for (i, w) in self.basis_words.iter().enumerate() {
            if w.0.len() != self.gens.len() {
                return Err(AlgebraError::DimensionMismatch(format!("word of basis {i}")));
            }
            if self.eval_gen_word(w) != self.basis_elem(i) {
                return Err(AlgebraError::Certification(format!(
                    "word of basis element {i} does not evaluate to it"
                )));
            }
        }
        // the generators generate m: their monomials span it (equivalently,
        // the words cover the basis, which was just verified; double-check
        // the span of all basis elements of m is reachable)
        Ok(loewy)
    }

    // -- accessors ---------------------------------------------------------

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gen_labels(&self) -> &[String] {
        &self.gen_labels
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[Vec<u64>] {
        &self.gens
    }

    pub fn basis_words(&self) -> &[Mono] {
        &self.basis_words
    }

    pub fn is_field(&self) -> bool {
        self.dim == 1
    }

    // -- element arithmetic -------------------------------------------------

    pub fn zero_elem(&self) -> Vec<u64> {
        vec![0; self.dim]
    }

    pub fn unit(&self) -> Vec<u64> {
        self.basis_elem(0)
    }

    pub fn basis_elem(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<u64> {
        (0..self.dim).map(|r| self.left_mult[i].get(r, j)).collect()
    }

    pub fn add_elems(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub_elems(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale_elem(&self, a: &[u64], c: u64) -> Vec<u64> {
        a.iter().map(|&x| self.field.mul(x, c)).collect()
    }

    /// Left-multiplication matrix of an arbitrary element.
    pub fn mult_matrix(&self, a: &[u64]) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.left_mult[i].scale(c));
            }
        }
        m
    }

    pub fn mul_elems(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.mult_matrix(a).mul_vec(b)
    }

    pub fn is_in_m(&self, a: &[u64]) -> bool {
        a[0] == 0
    }

    /// An element of m is a unit times a generator-word evaluation; elements
    /// with unit component are invertible (unit + nilpotent).
    pub fn is_unit_elem(&self, a: &[u64]) -> bool {
        a[0] != 0
    }

    pub fn eval_gen_word(&self, w: &Mono) -> Vec<u64> {
        let mut acc = self.unit();
        for (g, &e) in self.gens.iter().zip(&w.0) {
            for _ in 0..e {
                acc = self.mul_elems(&acc, g);
            }
        }
        acc
    }

    /// Evaluate a polynomial in the generators (variables = generator list).
    pub fn eval_poly_in_gens(&self, p: &MultiPoly) -> Result<Vec<u64>, AlgebraError> {
        if p.nvars() != self.gens.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "polynomial in {} variables over an algebra with {} generators",
                p.nvars(),
                self.gens.len()
            )));
        }
        let mut acc = self.zero_elem();
        for (m, c) in p.terms() {
            let t = self.scale_elem(&self.eval_gen_word(m), c);
            acc = self.add_elems(&acc, &t);
        }
        Ok(acc)
    }

    pub fn render_elem(&self, a: &[u64]) -> String {
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 && i != 0 {
                    self.labels[i].clone()
                } else if i == 0 {
                    format!("{c}")
                } else {
                    format!("{}*{}", c, self.labels[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    // -- invariants ----------------------------------------------------------

    /// Dimensions of m^1, m^2, ... down to the first zero (inclusive).
    pub fn m_power_dims(&self) -> Vec<usize> {
        self.m_power_dims_internal(self.dim + 1)
    }

    fn m_power_dims_internal(&self, cap: usize) -> Vec<usize> {
        let mut dims = Vec::new();
        // m^1 basis: e_1..e_{d-1}
        let mut rows: Vec<Vec<u64>> = (1..self.dim).map(|i| self.basis_elem(i)).collect();
        if rows.is_empty() {
            return vec![0];
        }
        let mut cur = Mat::from_rows(self.field, rows.clone()).row_basis();
        loop {
            dims.push(cur.rows);
            if cur.rows == 0 || dims.len() >= cap {
                return dims;
            }
            rows = Vec::new();
            for i in 1..self.dim {
                for r in 0..cur.rows {
                    rows.push(self.mul_elems(&self.basis_elem(i), cur.row(r)));
                }
            }
            let next = Mat::from_rows(self.field, rows).row_basis();
            if next.rows == cur.rows {
                // stabilized nonzero: not nilpotent
                dims.push(next.rows);
                return dims;
            }
            cur = next;
        }
    }

    /// Least n with m^n = 0.
    pub fn loewy_length(&self) -> usize {
        self.loewy
    }

    /// Basis (as matrix rows) of Soc = 0 : m, the joint kernel of
    /// multiplication by the generators.
    pub fn socle_basis(&self) -> Mat {
        if self.gens.is_empty() {
            return Mat::identity(self.field, self.dim);
        }
        let stacked = self
            .gens
            .iter()
            .map(|g| self.mult_matrix(g))
            .reduce(|a, b| a.vstack(&b))
            .unwrap();
        stacked.kernel_basis()
    }

    /// dim_k Soc R.
    pub fn type_r(&self) -> usize {
        self.socle_basis().rows
    }

    /// dim_k m/m².
    pub fn edim(&self) -> usize {
        let d = self.dim;
        if d == 1 {
            return 0;
        }
        let mut rows = Vec::new();
        for i in 1..d {
            for j in 1..=i {
                rows.push(self.mul_basis(i, j));
            }
        }
        let msq_rank = if rows.is_empty() {
            0
        } else {
            Mat::from_rows(self.field, rows).rank()
        };
        (d - 1) - msq_rank
    }

    /// Row basis of m² (coordinates in the algebra basis).
    pub fn m_square_basis(&self) -> Mat {
        let mut rows = Vec::new();
        for i in 1..self.dim {
            for j in 1..=i {
                rows.push(self.mul_basis(i, j));
            }
        }
        if rows.is_empty() {
            return Mat::zeros(self.field, 0, self.dim);
        }
        Mat::from_rows(self.field, rows).row_basis()
    }

    // -- constructors --------------------------------------------------------

    /// The quotient of a polynomial ring by a zero-dimensional ideal inside
    /// the irrelevant maximal ideal. Basis: the standard monomials; maximal
    /// ideal generators: the images of the presentation variables.
    pub fn from_quotient(ideal: &PolyIdeal, var_names: &[String]) -> Result<Self, AlgebraError> {
        let field = ideal.field();
        let n = ideal.nvars();
        if var_names.len() != n {
            return Err(AlgebraError::DimensionMismatch("variable name list".into()));
        }
        if ideal.is_unit_ideal() {
            return Err(AlgebraError::WholeRing);
        }
        // containment in the irrelevant ideal = no constant terms
        for g in ideal.gens() {
            if g.terms().any(|(m, _)| m.is_one()) {
                return Err(AlgebraError::NotInIrrelevant);
            }
        }
        if !ideal.is_artinian_quotient() {
            return Err(AlgebraError::NotArtinian);
        }
        let basis = ideal.monomial_basis()?; // ascending: 1 first
        let dim = basis.len();
        let index_of = |m: &Mono| basis.iter().position(|b| b == m);
        // coordinates of the normal form of a polynomial
        let coords = |p: &MultiPoly| -> Vec<u64> {
            let nf = ideal.normal_form(p);
            let mut v = vec![0u64; dim];
            for (m, c) in nf.terms() {
                let i = index_of(m).expect("normal form supported on standard monomials");
                v[i] = c;
            }
            v
        };
        let mono_poly =
            |m: &Mono| MultiPoly::from_terms(field, n, vec![(m.clone(), 1)]);
        let left_mult: Vec<Mat> = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<u64>> = (0..dim)
                    .map(|j| coords(&mono_poly(&basis[i].mul(&basis[j]))))
                    .collect();
                Mat::from_fn(field, dim, dim, |r, c| cols[c][r])
            })
            .collect();
        let gens: Vec<Vec<u64>> = (0..n)
            .map(|v| coords(&MultiPoly::var(field, n, v)))
            .collect();
        let labels: Vec<String> = basis
            .iter()
            .map(|m| {
                if m.is_one() {
                    "1".into()
                } else {
                    mono_poly(m).render(var_names)
                }
            })
            .collect();
        // a standard monomial is its own word in the variable images
        let basis_words = basis.clone();
        LocalAlgebra::from_raw_parts(
            field,
            labels,
            left_mult,
            gens,
            var_names.to_vec(),
            basis_words,
        )
    }

    /// Fiber product A ×_k B: unit shared, m = m_A ⊕ m_B, cross products
    /// zero.
    pub fn fiber_product(a: &LocalAlgebra, b: &LocalAlgebra) -> Result<Self, AlgebraError> {
        if a.field != b.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let field = a.field;
        let (da, db) = (a.dim, b.dim);
        let dim = da + db - 1;
        // index maps: A basis i>=1 -> i; B basis j>=1 -> da-1+j
        let embed_a = |v: &[u64]| -> Vec<u64> {
            let mut w = vec![0u64; dim];
            w[..da].copy_from_slice(v);
            w
        };
        let embed_b = |v: &[u64]| -> Vec<u64> {
            let mut w = vec![0u64; dim];
            w[0] = v[0];
            for j in 1..db {
                w[da - 1 + j] = v[j];
            }
            w
        };
        // products of basis elements
        let prod = |i: usize, j: usize| -> Vec<u64> {
            if i == 0 {
                let mut v = vec![0u64; dim];
                v[j] = 1;
                return v;
            }
            if j == 0 {
                let mut v = vec![0u64; dim];
                v[i] = 1;
                return v;
            }
            let ia = (1..da).contains(&i);
            let ja = (1..da).contains(&j);
            match (ia, ja) {
                (true, true) => embed_a(&a.mul_basis(i, j)),
                (false, false) => embed_b(&b.mul_basis(i - (da - 1), j - (da - 1))),
                _ => vec![0u64; dim],
            }
        };
        let left_mult: Vec<Mat> = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<u64>> = (0..dim).map(|j| prod(i, j)).collect();
                Mat::from_fn(field, dim, dim, |r, c| cols[c][r])
            })
            .collect();
        // labels: disambiguate collisions from the B side
        let mut labels: Vec<String> = a.labels.clone();
        for j in 1..db {
            let mut l = b.labels[j].clone();
            if labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        let mut gen_labels = a.gen_labels.clone();
        for gl in &b.gen_labels {
            let mut l = gl.clone();
            if gen_labels.contains(&l) {
                l.push('\'');
            }
            gen_labels.push(l);
        }
        let mut gens: Vec<Vec<u64>> = a.gens.iter().map(|g| embed_a(g)).collect();
        gens.extend(b.gens.iter().map(|g| embed_b(g)));
        let nga = a.gens.len();
        let ngb = b.gens.len();
        let mut basis_words = Vec::with_capacity(dim);
        for w in &a.basis_words {
            let mut e = w.0.clone();
            e.extend(std::iter::repeat(0).take(ngb));
            basis_words.push(Mono(e));
        }
        for w in b.basis_words.iter().skip(1) {
            let mut e = vec![0u32; nga];
            e.extend_from_slice(&w.0);
            basis_words.push(Mono(e));
        }
        LocalAlgebra::from_raw_parts(field, labels, left_mult, gens, gen_labels, basis_words)
    }

    /// Quotient by the ideal generated by the given elements of m; returns
    /// the quotient algebra and the projection map.
    pub fn quotient_algebra(
        &self,
        ideal_gens: &[Vec<u64>],
    ) -> Result<(LocalAlgebra, AlgebraHom), AlgebraError> {
        let field = self.field;
        let d = self.dim;
        for g in ideal_gens {
            if g.len() != d {
                return Err(AlgebraError::DimensionMismatch("ideal generator".into()));
            }
            if g[0] != 0 {
                // element with unit component is invertible
                return Err(AlgebraError::WholeRing);
            }
        }
        // close under multiplication by basis elements
        let seed: Vec<Vec<u64>> =
            ideal_gens.iter().filter(|g| g.iter().any(|&c| c != 0)).cloned().collect();
        let mut basis_mat = if seed.is_empty() {
            Mat::zeros(field, 0, d)
        } else {
            Mat::from_rows(field, seed).row_basis()
        };
        loop {
            let mut new_rows: Vec<Vec<u64>> = Vec::new();
            for r in 0..basis_mat.rows {
                for i in 1..d {
                    new_rows.push(self.mul_elems(&self.basis_elem(i), basis_mat.row(r)));
                }
            }
            let mut all = Vec::new();
            for r in 0..basis_mat.rows {
                all.push(basis_mat.row(r).to_vec());
            }
            all.extend(new_rows);
            let next = Mat::from_rows(field, all).row_basis();
            if next.rows == basis_mat.rows {
                break;
            }
            basis_mat = next;
        }
        // reduced row echelon rows of the ideal subspace
        let mut w = basis_mat.clone();
        let pivots = w.rref_in_place();
        let rank = pivots.len();
        let qdim = d - rank;
        // quotient basis: non-pivot coordinates (0 is never a pivot since
        // the ideal sits inside m)
        let mut non_pivots: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
        non_pivots.sort();
        debug_assert_eq!(non_pivots.first().copied(), Some(0));
        // projection: reduce v modulo the RREF rows, read non-pivot coords
        let project = |v: &[u64]| -> Vec<u64> {
            let mut v = v.to_vec();
            for (k, &pc) in pivots.iter().enumerate() {
                let c = v[pc];
                if c != 0 {
                    for t in 0..d {
                        v[t] = field.sub(v[t], field.mul(c, w.get(k, t)));
                    }
                }
            }
            non_pivots.iter().map(|&i| v[i]).collect()
        };
        let proj_mat = {
            let cols: Vec<Vec<u64>> = (0..d).map(|i| project(&self.basis_elem(i))).collect();
            Mat::from_fn(field, qdim, d, |r, c| cols[c][r])
        };
        // multiplication on quotient basis via representatives
        let left_mult: Vec<Mat> = (0..qdim)
            .map(|i| {
                let cols: Vec<Vec<u64>> = (0..qdim)
                    .map(|j| {
                        let p = self.mul_basis(non_pivots[i], non_pivots[j]);
                        project(&p)
                    })
                    .collect();
                Mat::from_fn(field, qdim, qdim, |r, c| cols[c][r])
            })
            .collect();
        let labels: Vec<String> = non_pivots.iter().map(|&i| self.labels[i].clone()).collect();
        let gens: Vec<Vec<u64>> = self.gens.iter().map(|g| project(g)).collect();
        let basis_words: Vec<Mono> =
            non_pivots.iter().map(|&i| self.basis_words[i].clone()).collect();
        let q = LocalAlgebra::from_raw_parts(
            field,
            labels,
            left_mult,
            gens,
            self.gen_labels.clone(),
            basis_words,
        )?;
        let hom = AlgebraHom { matrix: proj_mat };
        hom.certify(self, &q)?;
        Ok((q, hom))
    }

    /// Build the unital algebra map sending the i-th generator of `self` to
    /// `images[i]` in `target`, by evaluating basis words; certified.
    pub fn hom_from_gen_images(
        &self,
        target: &LocalAlgebra,
        images: &[Vec<u64>],
    ) -> Result<AlgebraHom, AlgebraError> {
        if images.len() != self.gens.len() {
            return Err(AlgebraError::DimensionMismatch("generator image list".into()));
        }
        let cols: Vec<Vec<u64>> = self
            .basis_words
            .iter()
            .map(|w| {
                let mut acc = target.unit();
                for (img, &e) in images.iter().zip(&w.0) {
                    for _ in 0..e {
                        acc = target.mul_elems(&acc, img);
                    }
                }
                acc
            })
            .collect();
        let m = Mat::from_fn(self.field, target.dim, self.dim, |r, c| cols[c][r]);
        let hom = AlgebraHom { matrix: m };
        hom.certify(self, target)?;
        Ok(hom)
    }

    /// Socle inclusion data: elements x with x·m = 0, returned as rows.
    pub fn annihilates_m(&self, x: &[u64]) -> bool {
        self.gens.iter().all(|g| {
            self.mul_elems(g, x).iter().all(|&c| c == 0)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    fn quotient_ring(gens: &[&str], vars: &[&str]) -> LocalAlgebra {
        let f = f101();
        let v = names(vars);
        let ideal = PolyIdeal::new(
            f,
            vars.len(),
            gens.iter().map(|g| parse_poly(g, f, &v).unwrap()).collect(),
        );
        LocalAlgebra::from_quotient(&ideal, &v).unwrap()
    }

    #[test]
    fn five_dimensional_quotient() {
        let r = quotient_ring(&["x^3", "x^2*y", "y^2"], &["x", "y"]);
        assert_eq!(r.dim(), 5);
        let set: std::collections::HashSet<&str> =
            r.labels().iter().map(|s| s.as_str()).collect();
        for l in ["1", "x", "y", "x^2", "x*y"] {
            assert!(set.contains(l), "missing label {l}");
        }
        assert_eq!(r.edim(), 2);
        assert_eq!(r.loewy_length(), 3);
        assert_eq!(r.type_r(), 2);
        // socle = span{x^2, xy}
        let soc = r.socle_basis();
        assert_eq!(soc.rows, 2);
        for i in 0..soc.rows {
            assert!(r.annihilates_m(soc.row(i)));
            assert!(r.is_in_m(soc.row(i)));
        }
    }

    #[test]
    fn six_dimensional_quotient() {
        let r = quotient_ring(&["x^3", "x^2*y", "x*y^2", "y^3"], &["x", "y"]);
        assert_eq!(r.dim(), 6);
        assert_eq!(r.loewy_length(), 3);
        assert_eq!(r.type_r(), 3); // socle = degree-2 part
        assert_eq!(r.edim(), 2);
    }

    #[test]
    fn field_case() {
        let r = quotient_ring(&["x"], &["x"]);
        assert_eq!(r.dim(), 1);
        assert!(r.is_field());
        assert_eq!(r.loewy_length(), 1);
        assert_eq!(r.edim(), 0);
        assert_eq!(r.type_r(), 1); // Soc = k
    }

    #[test]
    fn dual_numbers() {
        let r = quotient_ring(&["x^2"], &["x"]);
        assert_eq!(r.dim(), 2);
        assert_eq!(r.loewy_length(), 2);
        assert_eq!(r.edim(), 1);
        assert_eq!(r.type_r(), 1);
    }

    #[test]
    fn nonminimal_presentation_variable_not_standard() {
        // x - y in the ideal: the x image is y; edim must still be 1
        let r = quotient_ring(&["x - y", "y^2"], &["x", "y"]);
        assert_eq!(r.dim(), 2);
        assert_eq!(r.edim(), 1);
        // both generators map to the same m element
        assert_eq!(r.gens()[0], r.gens()[1]);
    }

    #[test]
    fn edim_matches_linear_part_rank() {
        let f = f101();
        for (gens, vars) in [
            (vec!["x^3", "x^2*y", "y^2"], vec!["x", "y"]),
            (vec!["x - y", "y^2"], vec!["x", "y"]),
            (vec!["x^2", "y^2", "z^2", "w^2", "x*z", "x*w", "y*z", "y*w"],
             vec!["x", "y", "z", "w"]),
        ] {
            let v = names(&vars);
            let ideal = PolyIdeal::new(
                f,
                vars.len(),
                gens.iter().map(|g| parse_poly(g, f, &v).unwrap()).collect(),
            );
            let r = LocalAlgebra::from_quotient(&ideal, &v).unwrap();
            assert_eq!(
                r.edim(),
                vars.len() - ideal.linear_part_rank().unwrap(),
                "gens {gens:?}"
            );
        }
    }

    #[test]
    fn loewy_boundary_powers() {
        for r in [
            quotient_ring(&["x^3", "x^2*y", "y^2"], &["x", "y"]),
            quotient_ring(&["x^2"], &["x"]),
            quotient_ring(&["x^4"], &["x"]),
        ] {
            let dims = r.m_power_dims();
            let ll = r.loewy_length();
            assert_eq!(dims[ll - 1], 0);
            if ll >= 2 {
                assert!(dims[ll - 2] > 0);
            }
        }
    }

    #[test]
    fn fiber_product_of_dual_numbers() {
        let a = quotient_ring(&["x^2"], &["x"]);
        let b = quotient_ring(&["y^2"], &["y"]);
        let fp = LocalAlgebra::fiber_product(&a, &b).unwrap();
        assert_eq!(fp.dim(), 3);
        assert_eq!(fp.edim(), 2);
        assert_eq!(fp.loewy_length(), 2);
        // isomorphic to k[x,y]/(x^2, y^2, x*y)
        let direct = quotient_ring(&["x^2", "y^2", "x*y"], &["x", "y"]);
        let iso = fp
            .hom_from_gen_images(&direct, &[direct.gens()[0].clone(), direct.gens()[1].clone()])
            .unwrap();
        iso.certify_isomorphism(&fp, &direct).unwrap();
    }

    #[test]
    fn fiber_product_with_field_is_identity() {
        let a = quotient_ring(&["x^3"], &["x"]);
        let k = quotient_ring(&["y"], &["y"]);
        let fp = LocalAlgebra::fiber_product(&a, &k).unwrap();
        assert_eq!(fp.dim(), a.dim());
        let iso = fp.hom_from_gen_images(&a, &[a.gens()[0].clone(), a.zero_elem()]);
        // fp has gens [x, y-image = 0]; map x -> x, dead gen -> 0
        iso.unwrap().certify_isomorphism(&fp, &a).unwrap();
    }

    #[test]
    fn fiber_product_symmetry() {
        let a = quotient_ring(&["x^2"], &["x"]);
        let b = quotient_ring(&["y^3"], &["y"]);
        let ab = LocalAlgebra::fiber_product(&a, &b).unwrap();
        let ba = LocalAlgebra::fiber_product(&b, &a).unwrap();
        assert_eq!(ab.dim(), ba.dim());
        // swap generator images: ab gens = [x, y], ba gens = [y, x]
        let iso = ab
            .hom_from_gen_images(&ba, &[ba.gens()[1].clone(), ba.gens()[0].clone()])
            .unwrap();
        iso.certify_isomorphism(&ab, &ba).unwrap();
    }

    #[test]
    fn seven_dimensional_fiber_product_ring() {
        // quotient by (x²,y²,z²,w²,xz,xw,yz,yw): dim 7
        let r = quotient_ring(
            &["x^2", "y^2", "z^2", "w^2", "x*z", "x*w", "y*z", "y*w"],
            &["x", "y", "z", "w"],
        );
        assert_eq!(r.dim(), 7);
        assert_eq!(r.edim(), 4);
        // isomorphic to k[x,y]/(x²,y²) ×_k k[z,w]/(z²,w²), both dim 4
        let a = quotient_ring(&["x^2", "y^2"], &["x", "y"]);
        let b = quotient_ring(&["z^2", "w^2"], &["z", "w"]);
        assert_eq!(a.dim(), 4);
        assert_eq!(b.dim(), 4);
        let fp = LocalAlgebra::fiber_product(&a, &b).unwrap();
        assert_eq!(fp.dim(), 7);
        // map fp gens (x,y,z,w) to r gens (x,y,z,w)
        let images: Vec<Vec<u64>> = r.gens().to_vec();
        let iso = fp.hom_from_gen_images(&r, &images).unwrap();
        iso.certify_isomorphism(&fp, &r).unwrap();
    }

    #[test]
    fn quotient_by_zero_and_by_m() {
        let r = quotient_ring(&["x^3", "x^2*y", "y^2"], &["x", "y"]);
        let (q0, h0) = r.quotient_algebra(&[]).unwrap();
        assert_eq!(q0.dim(), r.dim());
        assert_eq!(h0.matrix.rank(), r.dim());
        let mgens: Vec<Vec<u64>> = (1..r.dim()).map(|i| r.basis_elem(i)).collect();
        let (qk, hk) = r.quotient_algebra(&mgens).unwrap();
        assert_eq!(qk.dim(), 1);
        assert_eq!(hk.apply(&r.unit()), qk.unit());
    }

    #[test]
    fn quotient_by_socle() {
        let r = quotient_ring(&["x^3", "x^2*y", "x*y^2", "y^3"], &["x", "y"]);
        let soc = r.socle_basis();
        let gens: Vec<Vec<u64>> = (0..soc.rows).map(|i| soc.row(i).to_vec()).collect();
        let (q, h) = r.quotient_algebra(&gens).unwrap();
        assert_eq!(q.dim(), r.dim() - soc.rows); // 6 - 3 = 3
        assert_eq!(q.loewy_length(), 2);
        // projection kills the socle
        for g in &gens {
            assert!(h.apply(g).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn quotient_by_unit_element_fails() {
        let r = quotient_ring(&["x^2"], &["x"]);
        let mut u = r.zero_elem();
        u[0] = 1;
        u[1] = 1; // 1 + x is a unit
        assert!(matches!(
            r.quotient_algebra(&[u]),
            Err(AlgebraError::WholeRing)
        ));
    }

    #[test]
    fn from_quotient_rejects_bad_ideals() {
        let f = f101();
        let v = names(&["x", "y"]);
        let non_artinian =
            PolyIdeal::new(f, 2, vec![parse_poly("x*y", f, &v).unwrap()]);
        assert!(matches!(
            LocalAlgebra::from_quotient(&non_artinian, &v),
            Err(AlgebraError::NotArtinian)
        ));
        let affine = PolyIdeal::new(f, 2, vec![
            parse_poly("x - 1", f, &v).unwrap(),
            parse_poly("y", f, &v).unwrap(),
        ]);
        assert!(matches!(
            LocalAlgebra::from_quotient(&affine, &v),
            Err(AlgebraError::NotInIrrelevant)
        ));
    }

    #[test]
    fn certification_rejects_fake_idempotent_in_m() {
        // 2-dim "algebra" where e_1 * e_1 = e_1: m not nilpotent
        let f = f101();
        let l0 = Mat::identity(f, 2);
        let l1 = Mat::from_rows(f, vec![vec![0, 0], vec![1, 1]]);
        let r = LocalAlgebra::from_raw_parts(
            f,
            vec!["1".into(), "e".into()],
            vec![l0, l1],
            vec![vec![0, 1]],
            vec!["e".into()],
            vec![Mono(vec![0]), Mono(vec![1])],
        );
        assert!(matches!(r, Err(AlgebraError::Certification(_))));
    }

    #[test]
    fn element_arithmetic_and_words() {
        let r = quotient_ring(&["x^3", "x^2*y", "y^2"], &["x", "y"]);
        let x = r.gens()[0].clone();
        let y = r.gens()[1].clone();
        let xy = r.mul_elems(&x, &y);
        assert!(r.is_in_m(&xy));
        // x * x * y = x^2 y = 0 in this ring
        assert_eq!(r.mul_elems(&r.mul_elems(&x, &x), &y), r.zero_elem());
        // evaluate the polynomial x^2 + 3y in the generators
        let v = names(&["x", "y"]);
        let p = parse_poly("x^2 + 3*y", f101(), &v).unwrap();
        let e = r.eval_poly_in_gens(&p).unwrap();
        let direct = r.add_elems(&r.mul_elems(&x, &x), &r.scale_elem(&y, 3));
        assert_eq!(e, direct);
        // rendering round trip is readable
        assert!(r.render_elem(&e).contains("x^2"));
    }
}
