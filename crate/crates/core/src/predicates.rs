//! Ring-theoretic predicates evaluated on presented local rings: the Burch
//! property, decomposability and quasi-decomposability of the maximal ideal,
//! the hypersurface test, the two syzygy-summand conditions, and
//! torsionfreeness classes defined by Ext vanishing.
//!
//! Rings enter in two forms. A [`RingPresentation`] is an ideal in a
//! polynomial ring over a prime field together with an optional regular
//! sequence; it carries presentation-relative data (embedding dimension,
//! witnessed depth, the Burch test) and reduces to a finite-dimensional
//! [`LocalAlgebra`] when the quotient is Artinian. Predicates that only see
//! the abstract ring (decomposability, the syzygy conditions) take the
//! algebra directly.
//!
//! Every positive verdict is machine-checked before it is reported: Burch
//! witnesses are re-tested for membership on both sides of the strict
//! inclusion, ideal summands are certified action-stable submodules meeting
//! trivially, and summand claims rest on verified section/retraction pairs.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, LocalAlgebra};
use crate::field::PrimeField;
use crate::ideal::{IdealError, PolyIdeal};
use crate::krs;
use crate::mat::{rows_to_mat, Mat};
use crate::module::{FDModule, ModuleError};
use crate::mpoly::{parse_poly, MultiPoly};

#[derive(Debug, Error)]
pub enum PredicateError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ideal computation failed: {0}")]
    Ideal(#[from] IdealError),
    #[error("algebra construction failed: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("module computation failed: {0}")]
    Module(#[from] ModuleError),
    #[error("the quotient ring is zero")]
    ZeroRing,
    #[error("the ring is a field; the predicate needs a nonzero maximal ideal")]
    FieldInput,
    #[error("the reduction is not Artinian: {0}")]
    NotArtinian(String),
    #[error("sequence element {index} is not regular: {reason}")]
    SequenceNotRegular { index: usize, reason: String },
    #[error("the supplied regular sequence does not reduce the ring to dimension zero")]
    SequenceNotMaximal,
    #[error(
        "sequence element {index} is not a linear form; the reduction has no \
         polynomial presentation this tool can build"
    )]
    NonLinearSequenceElement { index: usize },
    #[error("depth is not witnessed: {0}")]
    DepthNotWitnessed(String),
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
}

/// Outcome of a predicate: established true, established false, or not
/// decided by the data supplied (used where only a search over unbounded
/// inputs could settle the question).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    NotEstablished,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    /// Two-valued reading where it exists.
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails => Some(false),
            Verdict::NotEstablished => None,
        }
    }

    fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::NotEstablished => write!(f, "not established"),
        }
    }
}

/// Result of one predicate evaluation. `witness` carries the rendered
/// evidence for a positive verdict (each item has been machine-checked by
/// the evaluator before reporting); `notes` carries explanatory context.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PredicateReport {
    pub predicate: String,
    pub verdict: Verdict,
    pub witness: Vec<String>,
    pub notes: Vec<String>,
}

impl PredicateReport {
    fn new(predicate: &str, verdict: Verdict) -> Self {
        PredicateReport {
            predicate: predicate.to_string(),
            verdict,
            witness: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

impl fmt::Display for PredicateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.predicate, self.verdict)?;
        for w in &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// ring presentations

/// A local ring presented as polynomial ring modulo an ideal, with an
/// optional regular sequence for positive-dimensional input.
///
/// Construction validates everything it claims: generators and sequence
/// elements lie in the irrelevant maximal ideal, each sequence element is a
/// verified nonzerodivisor on the quotient by the ideal plus its
/// predecessors, and a nonempty sequence must cut the ring down to dimension
/// zero (so its length equals both depth and Krull dimension).
#[derive(Debug, Clone)]
pub struct RingPresentation {
    field: PrimeField,
    vars: Vec<String>,
    ideal: PolyIdeal,
    sequence: Vec<MultiPoly>,
}

impl RingPresentation {
    pub fn new(
        field: PrimeField,
        vars: Vec<String>,
        gens: Vec<MultiPoly>,
        sequence: Vec<MultiPoly>,
    ) -> Result<Self, PredicateError> {
        let n = vars.len();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(PredicateError::Parse(format!("bad variable name list: {vars:?}")));
            }
        }
        for g in &gens {
            if g.terms().any(|(m, _)| m.is_one()) {
                return Err(PredicateError::Ideal(IdealError::NotInIrrelevant));
            }
        }
        let ideal = PolyIdeal::new(field, n, gens);
        for (index, s) in sequence.iter().enumerate() {
            if s.is_zero() || s.terms().any(|(m, _)| m.is_one()) {
                return Err(PredicateError::SequenceNotRegular {
                    index,
                    reason: "element must be nonzero with zero constant term".into(),
                });
            }
        }
        // successive regularity: each element is a nonzerodivisor modulo the
        // ideal plus its predecessors
        let mut accumulated = ideal.clone();
        for (index, s) in sequence.iter().enumerate() {
            match accumulated.is_regular_element(s) {
                Err(IdealError::MemberElement) => {
                    return Err(PredicateError::SequenceNotRegular {
                        index,
                        reason: "element already lies in the accumulated ideal".into(),
                    });
                }
                Err(e) => return Err(PredicateError::Ideal(e)),
                Ok(false) => {
                    return Err(PredicateError::SequenceNotRegular {
                        index,
                        reason: "element is a zerodivisor on the quotient".into(),
                    });
                }
                Ok(true) => {
                    let principal = PolyIdeal::new(field, n, vec![s.clone()]);
                    accumulated = accumulated.sum(&principal);
                }
            }
        }
        if !sequence.is_empty() && !accumulated.is_artinian_quotient() {
            return Err(PredicateError::SequenceNotMaximal);
        }
        Ok(RingPresentation { field, vars, ideal, sequence })
    }

    /// Parse generators and sequence elements from source strings.
    pub fn parse(
        field: PrimeField,
        vars: &[&str],
        gens: &[&str],
        sequence: &[&str],
    ) -> Result<Self, PredicateError> {
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let parse_all = |srcs: &[&str]| -> Result<Vec<MultiPoly>, PredicateError> {
            srcs.iter()
                .map(|s| parse_poly(s, field, &names).map_err(PredicateError::Parse))
                .collect()
        };
        let g = parse_all(gens)?;
        let s = parse_all(sequence)?;
        Self::new(field, names, g, s)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn ideal(&self) -> &PolyIdeal {
        &self.ideal
    }

    pub fn sequence(&self) -> &[MultiPoly] {
        &self.sequence
    }

    /// Krull dimension of the presented ring.
    pub fn krull_dimension(&self) -> Result<usize, PredicateError> {
        Ok(self.ideal.krull_dimension()?)
    }

    /// Embedding dimension: variables minus the rank of the degree-one part
    /// of the defining ideal.
    pub fn edim(&self) -> Result<usize, PredicateError> {
        Ok(self.vars.len() - self.ideal.linear_part_rank()?)
    }

    pub fn is_artinian(&self) -> bool {
        self.ideal.is_artinian_quotient()
    }

    /// Depth when it is certified by the presentation: 0 for an Artinian
    /// quotient, the sequence length when a (necessarily maximal) regular
    /// sequence was supplied, unknown otherwise.
    pub fn witnessed_depth(&self) -> Option<usize> {
        if self.is_artinian() {
            Some(0)
        } else if !self.sequence.is_empty() {
            // construction forced the reduction to dimension zero, so the
            // sequence length equals depth and Krull dimension
            Some(self.sequence.len())
        } else {
            None
        }
    }

    /// The defining ideal plus the regular sequence, in the same ring.
    pub fn reduced_ideal(&self) -> PolyIdeal {
        let seq = PolyIdeal::new(self.field, self.vars.len(), self.sequence.clone());
        self.ideal.sum(&seq)
    }

    /// The ring modulo the regular sequence as a finite-dimensional algebra.
    pub fn artinian_reduction(&self) -> Result<Arc<LocalAlgebra>, PredicateError> {
        let reduced = self.reduced_ideal();
        if !reduced.is_artinian_quotient() {
            return Err(PredicateError::NotArtinian(
                "the ideal plus the supplied sequence does not have dimension zero".into(),
            ));
        }
        Ok(Arc::new(LocalAlgebra::from_quotient(&reduced, &self.vars)?))
    }

    /// Present the reduction modulo the sequence over a smaller polynomial
    /// ring by eliminating one variable per sequence element. Requires every
    /// sequence element to be a linear form (after substituting the earlier
    /// eliminations), since only those identify the quotient of the ambient
    /// polynomial ring with a polynomial ring again.
    pub fn eliminated_reduction(&self) -> Result<(PolyIdeal, Vec<String>), PredicateError> {
        let mut ideal = self.ideal.clone();
        let mut vars = self.vars.clone();
        let mut pending = self.sequence.clone();
        for index in 0..pending.len() {
            let ell = pending[index].clone();
            let (next_ideal, next_vars, images) = eliminate_linear_form(&ideal, &vars, &ell)
                .ok_or(PredicateError::NonLinearSequenceElement { index })?;
            let target = next_vars.len();
            for later in pending[index + 1..].iter_mut() {
                *later = later.substitute(&images, target);
            }
            ideal = next_ideal;
            vars = next_vars;
        }
        Ok((ideal, vars))
    }
}

/// Substitute away one variable along the linear form `ell` (no constant
/// term, total degree one). Returns the image ideal, the surviving variable
/// names, and the substitution images indexed by the old variables. `None`
/// if the form is not linear.
fn eliminate_linear_form(
    ideal: &PolyIdeal,
    vars: &[String],
    ell: &MultiPoly,
) -> Option<(PolyIdeal, Vec<String>, Vec<MultiPoly>)> {
    if ell.is_zero() || ell.terms().any(|(m, _)| m.total_degree() != 1) {
        return None;
    }
    let f = ideal.field();
    let n = ideal.nvars();
    let mut coeffs = vec![0u64; n];
    for (m, c) in ell.terms() {
        let (i, _) = m.pure_power().expect("degree-one monomial is a pure power");
        coeffs[i] = c;
    }
    let pivot = coeffs.iter().rposition(|&c| c != 0)?;
    let inv = f.inv(coeffs[pivot]);
    // x_pivot maps to -c_pivot^{-1} * (ell - c_pivot * x_pivot); the other
    // variables keep their identity under the index shift
    let new_index = |i: usize| if i < pivot { i } else { i - 1 };
    let mut pivot_image = MultiPoly::zero(f, n - 1);
    for i in (0..n).filter(|&i| i != pivot && coeffs[i] != 0) {
        let scale = f.neg(f.mul(inv, coeffs[i]));
        pivot_image = pivot_image.add(&MultiPoly::var(f, n - 1, new_index(i)).scale(scale));
    }
    let images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            if i == pivot {
                pivot_image.clone()
            } else {
                MultiPoly::var(f, n - 1, new_index(i))
            }
        })
        .collect();
    let new_gens: Vec<MultiPoly> = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(&images, n - 1))
        .filter(|g| !g.is_zero())
        .collect();
    let new_vars: Vec<String> =
        vars.iter().enumerate().filter(|&(i, _)| i != pivot).map(|(_, v)| v.clone()).collect();
    Some((PolyIdeal::new(f, n - 1, new_gens), new_vars, images))
}

// ---------------------------------------------------------------------------
// the Burch test

/// Strict-inclusion test on the presentation: with n the irrelevant maximal
/// ideal of the (possibly sequence-reduced) polynomial ring and I the
/// defining ideal, decide whether n·(I : n) differs from n·I. A positive
/// verdict carries an element of the difference, re-checked for membership
/// on both sides.
pub fn is_burch(p: &RingPresentation) -> Result<PredicateReport, PredicateError> {
    let (ideal, vars) = p.eliminated_reduction()?;
    if ideal.is_unit_ideal() {
        return Err(PredicateError::ZeroRing);
    }
    if !ideal.is_artinian_quotient() {
        return Err(PredicateError::NotArtinian(
            "the Burch test needs a dimension-zero quotient; supply a maximal regular sequence"
                .into(),
        ));
    }
    let f = ideal.field();
    let n_ideal = PolyIdeal::irrelevant(f, ideal.nvars());
    let colon = ideal.ideal_quotient(&n_ideal);
    let lhs = n_ideal.product(&colon);
    let rhs = n_ideal.product(&ideal);
    if !lhs.contains_ideal(&rhs) {
        return Err(PredicateError::Inconsistency(
            "n*(I:n) must contain n*I because I is contained in (I:n)".into(),
        ));
    }
    let render =
        |id: &PolyIdeal| id.groebner().iter().map(|g| g.render(&vars)).collect::<Vec<_>>().join(", ");
    let mut report = PredicateReport::new("burch", Verdict::Fails);
    if !p.sequence.is_empty() {
        report.notes.push(format!(
            "after eliminating the regular sequence the presentation lives in ({})",
            vars.join(", ")
        ));
    }
    report.notes.push(format!("colon ideal (I : n) = ({})", render(&colon)));
    for g in lhs.groebner() {
        if !rhs.contains(g) {
            if !lhs.contains(g) {
                return Err(PredicateError::Inconsistency(
                    "witness must come from n*(I:n)".into(),
                ));
            }
            report.verdict = Verdict::Holds;
            report.witness.push(format!("{} lies in n*(I:n) but not in n*I", g.render(&vars)));
            break;
        }
    }
    if report.verdict == Verdict::Fails {
        report.notes.push("n*(I:n) = n*I".into());
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// decomposability of the maximal ideal

/// Decide whether the maximal ideal splits as a direct sum of two nonzero
/// ideals. A positive verdict carries the two summands, rebuilt as certified
/// action-stable submodules of the ring whose spans meet trivially and fill
/// the maximal ideal.
pub fn decomposable_maximal_ideal(
    algebra: &Arc<LocalAlgebra>,
    seed: u64,
) -> Result<PredicateReport, PredicateError> {
    if algebra.dim() == 1 {
        return Err(PredicateError::FieldInput);
    }
    let m = FDModule::maximal_ideal(algebra.clone());
    let dec = krs::decompose(&m, seed);
    dec.certify()?;
    let pieces = dec.num_indecomposables();
    let mut report =
        PredicateReport::new("decomposable maximal ideal", Verdict::from_bool(pieces >= 2));
    report.notes.push(format!("the maximal ideal has {pieces} indecomposable summand(s)"));
    if pieces < 2 {
        return Ok(report);
    }
    // realize the first indecomposable copy and the sum of the rest as
    // ideals: basis vectors of the maximal ideal sit at ring coordinates
    // shifted past the identity
    let f = algebra.field();
    let d = algebra.dim();
    let in_ring = |cols: &Mat| -> Mat {
        let rows: Vec<Vec<u64>> = (0..cols.cols)
            .map(|j| {
                let mut row = vec![0u64; d];
                for i in 0..cols.rows {
                    row[i + 1] = cols.get(i, j);
                }
                row
            })
            .collect();
        rows_to_mat(f, d, &rows)
    };
    let left_rows = in_ring(&dec.copies[0].sec);
    let mut right_cols = dec.copies[1].sec.clone();
    for c in &dec.copies[2..] {
        right_cols = right_cols.hstack(&c.sec);
    }
    let right_rows = in_ring(&right_cols);
    let free1 = FDModule::free(algebra.clone(), 1);
    // submodule construction is the closure certificate: it fails unless the
    // span is stable under every ring generator
    let (left_ideal, _) = FDModule::submodule(&free1, &left_rows)?;
    let (right_ideal, _) = FDModule::submodule(&free1, &right_rows)?;
    let span_rank = left_rows.vstack(&right_rows).rank();
    if span_rank != d - 1 || left_ideal.dim() + right_ideal.dim() != d - 1 {
        return Err(PredicateError::Inconsistency(
            "ideal summands must meet trivially and fill the maximal ideal".into(),
        ));
    }
    let describe = |rows: &Mat| -> String {
        let gens: Vec<String> =
            (0..rows.rows).map(|r| algebra.render_elem(rows.row(r))).collect();
        format!("span({})", gens.join(", "))
    };
    report.witness.push(format!("ideal I = {}", describe(&left_rows)));
    report.witness.push(format!("ideal J = {}", describe(&right_rows)));
    report.notes.push(format!(
        "m = I + J with dim I = {}, dim J = {}, intersection zero",
        left_ideal.dim(),
        right_ideal.dim()
    ));
    Ok(report)
}

/// Decide whether the maximal ideal becomes decomposable after killing the
/// supplied regular sequence. Positive verdicts carry the summand witness of
/// the reduction; a negative is only proven for an Artinian ring (where the
/// empty sequence is the only regular sequence), otherwise the report says
/// the supplied sequence did not establish the property.
pub fn quasi_decomposable(
    p: &RingPresentation,
    seed: u64,
) -> Result<PredicateReport, PredicateError> {
    let reduction = p.artinian_reduction()?;
    let mut report = PredicateReport::new("quasi-decomposable maximal ideal", Verdict::Fails);
    if p.sequence.is_empty() {
        report.notes.push("reduction by the empty sequence".into());
    } else {
        let rendered: Vec<String> =
            p.sequence.iter().map(|s| s.render(&p.vars)).collect();
        report.notes.push(format!("reduction by the regular sequence ({})", rendered.join(", ")));
    }
    let negative = || {
        // a ring of depth zero admits no nonzero regular element, so the
        // empty sequence decides the property outright
        if p.is_artinian() && p.sequence.is_empty() {
            Verdict::Fails
        } else {
            Verdict::NotEstablished
        }
    };
    if reduction.dim() == 1 {
        report.verdict = negative();
        report.notes.push("the reduction is a field; its maximal ideal is zero".into());
        return Ok(report);
    }
    let sub = decomposable_maximal_ideal(&reduction, seed)?;
    report.witness = sub.witness;
    report.notes.extend(sub.notes);
    report.verdict = if sub.verdict.holds() { Verdict::Holds } else { negative() };
    Ok(report)
}

// ---------------------------------------------------------------------------
// hypersurface test

/// Decide `edim - depth <= 1` from the presentation. Depth must be
/// witnessed: zero for an Artinian quotient, otherwise the length of the
/// supplied maximal regular sequence.
pub fn is_hypersurface(p: &RingPresentation) -> Result<PredicateReport, PredicateError> {
    let edim = p.edim()?;
    let depth = p.witnessed_depth().ok_or_else(|| {
        PredicateError::DepthNotWitnessed(
            "positive-dimensional input needs a maximal regular sequence".into(),
        )
    })?;
    let verdict = Verdict::from_bool(edim <= depth + 1);
    let mut report = PredicateReport::new("hypersurface", verdict);
    report.notes.push(format!("embedding dimension {edim}, witnessed depth {depth}"));
    if verdict.holds() {
        report.witness.push(format!("edim - depth = {}", edim - depth));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// syzygy-summand conditions

/// The two summand conditions on the second syzygy of the residue field of
/// an Artinian local ring: the first asks whether the maximal ideal lies in
/// the additive closure of R plus the second syzygy of k, the second asks
/// the same for k itself.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SyzygyConditions {
    pub c1: PredicateReport,
    pub c2: PredicateReport,
}

impl SyzygyConditions {
    pub fn c1_holds(&self) -> bool {
        self.c1.holds()
    }

    pub fn c2_holds(&self) -> bool {
        self.c2.holds()
    }
}

pub fn syzygy_conditions(
    algebra: &Arc<LocalAlgebra>,
    seed: u64,
) -> Result<SyzygyConditions, PredicateError> {
    let k = FDModule::residue_field(algebra.clone());
    let omega2 = k.syzygy_n(2);
    let free1 = FDModule::free(algebra.clone(), 1);
    let target = FDModule::direct_sum(&[&free1, &omega2]);
    let m = FDModule::maximal_ideal(algebra.clone());

    let mut c1 = PredicateReport::new(
        "maximal ideal lies in add(R + second syzygy of k)",
        Verdict::from_bool(krs::in_add(&m, &target, seed)?),
    );
    let mut c2 = PredicateReport::new(
        "residue field lies in add(R + second syzygy of k)",
        Verdict::from_bool(krs::in_add(&k, &target, seed)?),
    );
    let note = format!(
        "second syzygy of k has dimension {}; candidate sum has dimension {}",
        omega2.dim(),
        target.dim()
    );
    c1.notes.push(note.clone());
    c2.notes.push(note);
    if c1.holds() {
        c1.witness.push("every summand of m admits a split embedding into the sum".into());
    }
    if c2.holds() {
        c2.witness.push("k admits a split embedding into the sum".into());
    }
    Ok(SyzygyConditions { c1, c2 })
}

/// Evaluate the syzygy conditions on the Artinian reduction of a
/// presentation and cross-check the implication "second condition forces
/// Burch" on the same presentation, erroring out on a violation.
pub fn syzygy_conditions_checked(
    p: &RingPresentation,
    seed: u64,
) -> Result<SyzygyConditions, PredicateError> {
    let algebra = p.artinian_reduction()?;
    if algebra.dim() == 1 {
        return Err(PredicateError::FieldInput);
    }
    let mut sc = syzygy_conditions(&algebra, seed)?;
    if sc.c2_holds() {
        let burch = is_burch(p)?;
        if !burch.holds() {
            return Err(PredicateError::Inconsistency(
                "k splits off its own second syzygy sum but the Burch test failed".into(),
            ));
        }
        sc.c2.notes.push("cross-check: the presentation passes the Burch test".into());
    }
    Ok(sc)
}

// ---------------------------------------------------------------------------
// torsionfreeness classes

/// Largest `j <= bound` such that the first `j` Ext modules of the
/// transpose against the ring vanish.
pub fn torsionfree_degree(m: &FDModule, bound: usize) -> Result<usize, PredicateError> {
    let free1 = FDModule::free(m.algebra().clone(), 1);
    let tr = m.transpose();
    let mut degree = 0;
    while degree < bound && FDModule::ext(&tr, &free1, degree + 1)?.is_zero() {
        degree += 1;
    }
    Ok(degree)
}

pub fn is_n_torsionfree(m: &FDModule, n: usize) -> Result<bool, PredicateError> {
    Ok(torsionfree_degree(m, n)? == n)
}

/// Membership in the class cut out by `Ext^i(M, R) = 0` for `1 <= i <= n`
/// and `Ext^j(Tr M, R) = 0` for `1 <= j <= m`.
pub fn g_membership(module: &FDModule, n: usize, m: usize) -> Result<bool, PredicateError> {
    let free1 = FDModule::free(module.algebra().clone(), 1);
    for i in 1..=n {
        if !FDModule::ext(module, &free1, i)?.is_zero() {
            return Ok(false);
        }
    }
    let tr = module.transpose();
    for j in 1..=m {
        if !FDModule::ext(&tr, &free1, j)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::fixtures::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn pres(vars: &[&str], gens: &[&str], seq: &[&str]) -> RingPresentation {
        RingPresentation::parse(f101(), vars, gens, seq).unwrap()
    }

    #[test]
    fn burch_holds_for_the_cube_of_the_maximal_ideal() {
        let p = pres(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"], &[]);
        let report = is_burch(&p).unwrap();
        assert!(report.holds());
        assert!(!report.witness.is_empty());
        // the colon ideal is the square of the irrelevant ideal
        let colon = p.ideal().ideal_quotient(&PolyIdeal::irrelevant(f101(), 2));
        let square = pres(&["x", "y"], &["x^2", "x*y", "y^2"], &[]).ideal().clone();
        assert_eq!(colon, square);
    }

    #[test]
    fn burch_fails_for_the_gorenstein_complete_intersection() {
        let p = pres(&["x", "y"], &["x^2", "y^2"], &[]);
        let report = is_burch(&p).unwrap();
        assert!(!report.holds());
        assert!(report.witness.is_empty());
    }

    #[test]
    fn burch_holds_for_a_principal_power() {
        let p = pres(&["x"], &["x^2"], &[]);
        assert!(is_burch(&p).unwrap().holds());
    }

    #[test]
    fn burch_holds_on_the_socle_split_fixture() {
        // same ring as ring_dim5: x^2 multiplies the irrelevant ideal into I
        let p = pres(&["x", "y"], &["y^2", "x^2*y", "x^3"], &[]);
        let report = is_burch(&p).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn burch_is_invariant_under_variable_permutation() {
        let p1 = pres(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"], &[]);
        let p2 = pres(&["y", "x"], &["x^3", "x^2*y", "x*y^2", "y^3"], &[]);
        assert_eq!(is_burch(&p1).unwrap().verdict, is_burch(&p2).unwrap().verdict);
        let q1 = pres(&["x", "y"], &["x^2", "y^2"], &[]);
        let q2 = pres(&["y", "x"], &["y^2", "x^2"], &[]);
        assert_eq!(is_burch(&q1).unwrap().verdict, is_burch(&q2).unwrap().verdict);
    }

    #[test]
    fn burch_needs_a_zero_dimensional_reduction() {
        let p = pres(&["x", "y"], &["x*y"], &[]);
        assert!(matches!(is_burch(&p), Err(PredicateError::NotArtinian(_))));
    }

    #[test]
    fn burch_after_reduction_along_a_linear_form() {
        // killing x - y sends the node to a double point, a Burch ring
        let p = pres(&["x", "y"], &["x*y"], &["x - y"]);
        let report = is_burch(&p).unwrap();
        assert!(report.holds());
        let (reduced, vars) = p.eliminated_reduction().unwrap();
        assert_eq!(vars, vec!["x".to_string()]);
        let double_point = PolyIdeal::new(
            f101(),
            1,
            vec![parse_poly("x^2", f101(), &["x".into()]).unwrap()],
        );
        // xy maps to x * c x for some unit c, i.e. the double point
        assert_eq!(reduced, double_point);
    }

    #[test]
    fn nonlinear_sequence_elements_are_rejected_by_the_burch_test() {
        // x - y^2 is regular on k[x,y]/(x*y^2) is false; use a clean setup:
        // zero ideal, sequence x - y^2 (regular on the polynomial ring)
        let p = RingPresentation::parse(f101(), &["x", "y"], &[], &["x - y^2"]);
        // construction succeeds only if the reduction is Artinian; (x - y^2)
        // cuts k[x,y] to a ring of dimension one, so it is rejected already
        assert!(matches!(p, Err(PredicateError::SequenceNotMaximal)));
        // a genuinely maximal but nonlinear sequence: (x - y^2, y^3)? y^3 is
        // regular on k[x,y]/(x - y^2) and the reduction is Artinian
        let p = pres(&["x", "y"], &[], &["x - y^2", "y^3"]);
        assert!(matches!(
            is_burch(&p),
            Err(PredicateError::NonLinearSequenceElement { index: 0 })
        ));
    }

    #[test]
    fn presentation_rejects_zerodivisor_sequences() {
        let err = RingPresentation::parse(f101(), &["x", "y"], &["x*y"], &["x"]);
        assert!(matches!(err, Err(PredicateError::SequenceNotRegular { index: 0, .. })));
        let err = RingPresentation::parse(f101(), &["x", "y"], &["x*y"], &["x - y", "x + y"]);
        assert!(matches!(err, Err(PredicateError::SequenceNotRegular { index: 1, .. })));
        let err = RingPresentation::parse(f101(), &["x", "y"], &["x^2", "x*y", "y^2"], &["x"]);
        assert!(matches!(err, Err(PredicateError::SequenceNotRegular { index: 0, .. })));
    }

    #[test]
    fn presentation_invariants_on_small_examples() {
        let node = pres(&["x", "y"], &["x*y"], &["x - y"]);
        assert_eq!(node.krull_dimension().unwrap(), 1);
        assert_eq!(node.edim().unwrap(), 2);
        assert_eq!(node.witnessed_depth(), Some(1));
        assert!(!node.is_artinian());

        let artin = pres(&["x", "y"], &["y^2", "x^2*y", "x^3"], &[]);
        assert_eq!(artin.krull_dimension().unwrap(), 0);
        assert_eq!(artin.edim().unwrap(), 2);
        assert_eq!(artin.witnessed_depth(), Some(0));
        let alg = artin.artinian_reduction().unwrap();
        assert_eq!(alg.dim(), 5);

        let unknown = pres(&["x", "y"], &["x*y"], &[]);
        assert_eq!(unknown.witnessed_depth(), None);
    }

    #[test]
    fn maximal_ideal_splits_for_fiber_product_shapes() {
        for (alg, dims) in [
            (ring_dim7(), vec![3, 3]),
            (ring_dim3(), vec![1, 1]),
            (ring_dim4(), vec![1, 2]),
        ] {
            let report = decomposable_maximal_ideal(&alg, 0).unwrap();
            assert!(report.holds(), "expected a split for {:?}", alg.labels());
            assert_eq!(report.witness.len(), 2);
            // summand dimensions are reported in the closing note
            let note = report.notes.last().unwrap();
            let mut sorted = dims.clone();
            sorted.sort_unstable();
            let mut seen: Vec<usize> = note
                .split(|c: char| !c.is_ascii_digit())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().unwrap())
                .collect();
            seen.sort_unstable();
            assert_eq!(seen, sorted, "summand dimensions in note: {note}");
        }
    }

    #[test]
    fn maximal_ideal_is_indecomposable_for_connected_fixtures() {
        assert!(!decomposable_maximal_ideal(&ring_dim5(), 0).unwrap().holds());
        assert!(!decomposable_maximal_ideal(&dual_numbers(), 0).unwrap().holds());
        assert!(!decomposable_maximal_ideal(&ring_gor4(), 0).unwrap().holds());
    }

    #[test]
    fn decomposability_rejects_fields() {
        let ideal = PolyIdeal::irrelevant(f101(), 1);
        let field_ring =
            Arc::new(LocalAlgebra::from_quotient(&ideal, &["x".to_string()]).unwrap());
        assert!(matches!(
            decomposable_maximal_ideal(&field_ring, 0),
            Err(PredicateError::FieldInput)
        ));
    }

    #[test]
    fn quasi_decomposable_along_a_linear_section() {
        // the node reduced by x - y is the double point with principal
        // maximal ideal: nothing splits, but nothing is proven either
        let p = pres(&["x", "y"], &["x*y"], &["x - y"]);
        let report = quasi_decomposable(&p, 0).unwrap();
        assert_eq!(report.verdict, Verdict::NotEstablished);

        // without a sequence the reduction does not exist
        let p = pres(&["x", "y"], &["x*y"], &[]);
        assert!(matches!(quasi_decomposable(&p, 0), Err(PredicateError::NotArtinian(_))));
    }

    #[test]
    fn quasi_decomposable_is_decided_on_artinian_rings() {
        let split = pres(
            &["x", "y", "z", "w"],
            &["x^2", "y^2", "z^2", "w^2", "x*z", "x*w", "y*z", "y*w"],
            &[],
        );
        let report = quasi_decomposable(&split, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert_eq!(report.witness.len(), 2);

        let connected = pres(&["x", "y"], &["y^2", "x^2*y", "x^3"], &[]);
        let report = quasi_decomposable(&connected, 0).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
    }

    #[test]
    fn hypersurface_verdicts() {
        assert!(is_hypersurface(&pres(&["x"], &["x^2"], &[])).unwrap().holds());
        assert!(!is_hypersurface(&pres(&["x", "y"], &["y^2", "x^2*y", "x^3"], &[]))
            .unwrap()
            .holds());
        assert!(is_hypersurface(&pres(&["x", "y"], &["x*y"], &["x - y"])).unwrap().holds());
        // regular rings pass trivially once depth is witnessed
        assert!(is_hypersurface(&pres(&["x"], &[], &["x"])).unwrap().holds());
        // depth unknown: positive-dimensional input without a sequence
        assert!(matches!(
            is_hypersurface(&pres(&["x", "y"], &["x*y"], &[])),
            Err(PredicateError::DepthNotWitnessed(_))
        ));
    }

    #[test]
    fn syzygy_conditions_on_the_socle_split_fixture() {
        // the maximal ideal embeds split into R + the second syzygy of k,
        // and so does k itself via its socle coordinate
        let sc = syzygy_conditions(&ring_dim5(), 0).unwrap();
        assert!(sc.c1_holds());
        assert!(sc.c2_holds());
    }

    #[test]
    fn syzygy_conditions_on_the_cube_fixture() {
        let sc = syzygy_conditions(&ring_dim6(), 0).unwrap();
        assert!(!sc.c1_holds());
        assert!(sc.c2_holds());
    }

    #[test]
    fn syzygy_conditions_on_hypersurface_and_gorenstein_fixtures() {
        let sc = syzygy_conditions(&dual_numbers(), 0).unwrap();
        assert!(sc.c1_holds());
        assert!(sc.c2_holds());
        // (x^2, y^2): k never splits off, and m does not either
        let sc = syzygy_conditions(&ring_gor4(), 0).unwrap();
        assert!(!sc.c1_holds());
        assert!(!sc.c2_holds());
    }

    #[test]
    fn checked_syzygy_conditions_cross_check_burch() {
        let p = pres(&["x", "y"], &["y^2", "x^2*y", "x^3"], &[]);
        let sc = syzygy_conditions_checked(&p, 0).unwrap();
        assert!(sc.c2_holds());
        assert!(sc.c2.notes.iter().any(|n| n.contains("Burch")));

        let p = pres(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"], &[]);
        let sc = syzygy_conditions_checked(&p, 0).unwrap();
        assert!(!sc.c1_holds());
        assert!(sc.c2_holds());
    }

    #[test]
    fn free_modules_are_fully_torsionfree() {
        let r = FDModule::free(ring_dim5(), 2);
        assert_eq!(torsionfree_degree(&r, 6).unwrap(), 6);
        assert!(g_membership(&r, 4, 4).unwrap());
    }

    #[test]
    fn residue_field_is_fully_torsionfree_over_the_dual_numbers() {
        let k = FDModule::residue_field(dual_numbers());
        assert_eq!(torsionfree_degree(&k, 5).unwrap(), 5);
        assert!(is_n_torsionfree(&k, 4).unwrap());
        assert!(g_membership(&k, 3, 3).unwrap());
    }

    #[test]
    fn residue_field_is_torsionless_but_not_reflexive_over_the_socle_split_fixture() {
        // k embeds into R along a socle line, so it is 1-torsionfree over
        // any Artinian local ring; reflexivity fails here because the ring
        // has type two, making the double dual four-dimensional
        let k = FDModule::residue_field(ring_dim5());
        assert_eq!(torsionfree_degree(&k, 3).unwrap(), 1);
        assert!(is_n_torsionfree(&k, 1).unwrap());
        assert!(!is_n_torsionfree(&k, 2).unwrap());
        assert!(g_membership(&k, 0, 1).unwrap());
        assert!(!g_membership(&k, 0, 2).unwrap());
    }

    #[test]
    fn torsionfree_degree_matches_class_membership() {
        for m in [
            FDModule::residue_field(ring_dim5()),
            FDModule::maximal_ideal(ring_dim5()),
            FDModule::residue_field(dual_numbers()),
            FDModule::free(ring_dim6(), 1),
        ] {
            let bound = 3;
            let d = torsionfree_degree(&m, bound).unwrap();
            for j in 0..=bound {
                assert_eq!(g_membership(&m, 0, j).unwrap(), j <= d);
            }
        }
    }

    #[test]
    fn reports_serialize_and_render() {
        let report = decomposable_maximal_ideal(&ring_dim7(), 0).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: PredicateReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.verdict, Verdict::Holds);
        let text = format!("{report}");
        assert!(text.contains("witness"));
    }
}
