//! Exact computational algebra over prime fields for finite-dimensional
//! local algebras: syzygies, transposes, Krull–Schmidt decompositions,
//! homological predicates, extension-closure certificates, and generation
//! bound arithmetic, with a small script front end.
//!
//! Layers, bottom up:
//! - `field`, `mat`, `unipoly`: exact linear algebra over F_p.
//! - `mpoly`, `ideal`: multivariate polynomials and Gröbner bases.
//! - `algebra`: finite-dimensional local algebras with explicit bases.
//! - `module`: finitely generated modules, syzygies, Hom/Ext, exact
//!   sequences and their constructive surgery.
//! - `krs`: endomorphism rings, radicals, idempotents, direct-sum
//!   decomposition (Krull–Schmidt engine).
//! - `predicates`: ring-level homological predicates.
//! - `cert`: extension-closure membership certificates and their verifier.
//! - `bounds`: dominant-index / generation bound arithmetic.
//! - `script`, `report`, `runner`: the batch front end.

pub mod algebra;
pub mod bounds;
pub mod cert;
pub mod field;
pub mod ideal;
pub mod krs;
pub mod mat;
pub mod module;
pub mod mpoly;
pub mod predicates;
pub mod sequences;
pub mod unipoly;
