//! Script front end: a small declarative language for driving the engine.
//!
//! A script is an ordered list of statements over one coefficient prime.
//! Names must be declared before use. The grammar, with `#` comments running
//! to end of line:
//!
//! ```text
//! option prime = 101;            # set once, before the first ring
//! option seed = 0;               # RNG seed for randomized searches
//! option maxsteps = 12;          # cap on syzygy/cosyzygy indices
//!
//! ring R = poly(x, y) / (x^3, x^2*y, y^2);
//! ring S = fiber(A, B);          # fiber product over the residue field
//!
//! module M = coker R [[x, y], [0, x^2]];
//! module K = residue(R);         # the residue field as a module
//! # other module forms: maxideal(R), free(R, n), syz(M, n), cosyz(M, n),
//! #                     tr(M), sum(M, N)
//!
//! seq s on R = (x - y);          # attach a maximal regular sequence
//!
//! check burch R;                 # predicate checks on rings:
//! check decomposable R;          #   burch, decomposable, quasidecomposable,
//! check c1 R expect false;       #   hypersurface, c1, c2
//! check summand(maxideal(R), syz(K, 2));   # module comparisons:
//! check iso(K, syz(K, 2));                  #   summand, iso, inadd
//! check splitting R M;           # verified statement suites:
//! check infpd R M;               #   splitting, infpd, exchange, msummand,
//! check recurrence R;            #   recurrence
//!
//! cert domination R M;           # build + verify a summand certificate
//!
//! bound dx R;                            # derive bounds from computed facts
//! bound dx R with {C1};                  # ...or from asserted hypotheses
//! bound udim R with {n = 2, m = 3, l = 3};
//! ```
//!
//! Any check may end with `expect true` or `expect false`; the default is
//! `expect true`, and a check passes when its verdict matches the
//! expectation. Running a script produces a [`report::Report`]: one record
//! per command in statement order, emitted as text or as JSON with stable
//! key order. Reports are byte-identical across runs at a fixed seed, and
//! verdict-identical at any `--jobs` setting; runtime failures are recorded
//! per command without aborting the rest of the script.

pub mod ast;
mod lexer;
mod parser;
pub mod report;
mod runner;

pub use ast::Script;
pub use parser::parse;
pub use report::{CommandRecord, Report};
pub use runner::{run_script, run_source, RunConfig};

use thiserror::Error;

/// Errors surfaced while turning script text into a runnable [`Script`].
/// Every variant carries enough position information to point at the
/// offending token.
#[derive(Debug, Error)]
pub enum CliError {
    /// Lexical, grammatical, or name-resolution failure at `line:col`
    /// (1-based).
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    /// Script file or output file could not be read or written.
    #[error("{0}")]
    Io(String),
}
