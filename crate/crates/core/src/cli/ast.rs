//! Abstract syntax for the script language, with the canonical renderer
//! used for report echoes and round-trip tests.

/// A parsed script: the ordered statement list.
#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    /// 1-based position of the statement's first token.
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    /// `option seed = 7;`
    Option { name: String, value: u64 },
    /// `ring R = poly(x, y) / (x^3, y^2);`
    RingPoly {
        name: String,
        vars: Vec<String>,
        gens: Vec<PolyAst>,
    },
    /// `ring S = fiber(A, B);`
    RingFiber {
        name: String,
        left: String,
        right: String,
    },
    /// `module M = coker R [[x, y], [0, x^2]];`
    Module { name: String, expr: ModExpr },
    /// `seq s on R = (x - y);`
    Seq {
        name: String,
        ring: String,
        elems: Vec<PolyAst>,
    },
    /// `check burch R expect false;`
    Check {
        body: CheckBody,
        expect: Option<bool>,
    },
    /// `cert domination R M;`
    Cert { ring: String, module: ModExpr },
    /// `bound udim R with {n = 2, m = 3, l = 3};`
    Bound {
        target: BoundTargetAst,
        ring: String,
        with: Vec<WithItem>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundTargetAst {
    Dx,
    Udim,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WithItem {
    /// a bare structural flag, e.g. `C1`
    Flag(String),
    /// a numeric assignment, e.g. `m = 3`
    Assign(String, u64),
}

/// Module-valued expression.
#[derive(Debug, Clone, PartialEq)]
pub enum ModExpr {
    /// a declared module name
    Name(String),
    /// cokernel of a free-module map with polynomial entries (rows = target)
    Coker {
        ring: String,
        rows: Vec<Vec<PolyAst>>,
    },
    /// the residue field of a ring
    Residue(String),
    /// the maximal ideal of a ring
    MaxIdeal(String),
    /// a free module of the given rank
    Free { ring: String, rank: u64 },
    /// iterated syzygy
    Syz { expr: Box<ModExpr>, n: u64 },
    /// iterated cosyzygy
    Cosyz { expr: Box<ModExpr>, n: u64 },
    /// transpose
    Tr(Box<ModExpr>),
    /// direct sum
    Sum(Box<ModExpr>, Box<ModExpr>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckBody {
    /// Burch test on the polynomial presentation
    Burch(String),
    /// direct-sum decomposability of the maximal ideal
    Decomposable(String),
    /// decomposability after killing the attached regular sequence
    QuasiDecomposable(String),
    Hypersurface(String),
    /// the first syzygy condition (next residue syzygy splits off)
    CondOne(String),
    /// the second syzygy condition
    CondTwo(String),
    /// the first module is a direct summand of the second
    Summand(ModExpr, ModExpr),
    Iso(ModExpr, ModExpr),
    /// membership of the first module in add of the second
    InAdd(ModExpr, ModExpr),
    /// structure checks around the second syzygy of one module over a ring
    /// with decomposable maximal ideal
    Splitting { ring: String, module: ModExpr },
    /// infinite-projective-dimension consequences: the maximal ideal splits
    /// off the third-plus-fourth syzygy, and the trichotomy resolves
    InfPd { ring: String, module: ModExpr },
    /// each component of a decomposed maximal ideal splits off the syzygy
    /// of the other
    Exchange(String),
    /// the maximal ideal splits off the second syzygy of the residue field
    MSummand(String),
    /// residue-field syzygy recurrences (hypersurface, Burch,
    /// quasi-decomposable clauses)
    Recurrence(String),
}

/// Polynomial expression exactly as written (parentheses preserved), so the
/// renderer reproduces the source shape.
#[derive(Debug, Clone, PartialEq)]
pub enum PolyAst {
    Int(u64),
    Var(String),
    Neg(Box<PolyAst>),
    Add(Box<PolyAst>, Box<PolyAst>),
    Sub(Box<PolyAst>, Box<PolyAst>),
    Mul(Box<PolyAst>, Box<PolyAst>),
    Pow(Box<PolyAst>, u32),
    Paren(Box<PolyAst>),
}

// ---------------------------------------------------------------------------
// rendering

impl Script {
    /// Canonical text form; `parse(render(..))` reproduces the same tree.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            out.push_str(&s.render());
            out.push('\n');
        }
        out
    }
}

impl Stmt {
    pub fn render(&self) -> String {
        match &self.kind {
            StmtKind::Option { name, value } => format!("option {name} = {value};"),
            StmtKind::RingPoly { name, vars, gens } => format!(
                "ring {name} = poly({}) / ({});",
                vars.join(", "),
                render_list(gens)
            ),
            StmtKind::RingFiber { name, left, right } => {
                format!("ring {name} = fiber({left}, {right});")
            }
            StmtKind::Module { name, expr } => format!("module {name} = {};", expr.render()),
            StmtKind::Seq { name, ring, elems } => {
                format!("seq {name} on {ring} = ({});", render_list(elems))
            }
            StmtKind::Check { body, expect } => {
                let tail = match expect {
                    None => String::new(),
                    Some(true) => " expect true".into(),
                    Some(false) => " expect false".into(),
                };
                format!("check {}{tail};", body.render())
            }
            StmtKind::Cert { ring, module } => {
                format!("cert domination {ring} {};", module.render())
            }
            StmtKind::Bound { target, ring, with } => {
                let t = match target {
                    BoundTargetAst::Dx => "dx",
                    BoundTargetAst::Udim => "udim",
                };
                if with.is_empty() {
                    format!("bound {t} {ring};")
                } else {
                    let items: Vec<String> = with
                        .iter()
                        .map(|w| match w {
                            WithItem::Flag(f) => f.clone(),
                            WithItem::Assign(k, v) => format!("{k} = {v}"),
                        })
                        .collect();
                    format!("bound {t} {ring} with {{{}}};", items.join(", "))
                }
            }
        }
    }
}

fn render_list(polys: &[PolyAst]) -> String {
    polys.iter().map(PolyAst::render).collect::<Vec<_>>().join(", ")
}

impl ModExpr {
    pub fn render(&self) -> String {
        match self {
            ModExpr::Name(n) => n.clone(),
            ModExpr::Coker { ring, rows } => {
                let body: Vec<String> =
                    rows.iter().map(|r| format!("[{}]", render_list(r))).collect();
                format!("coker {ring} [{}]", body.join(", "))
            }
            ModExpr::Residue(r) => format!("residue({r})"),
            ModExpr::MaxIdeal(r) => format!("maxideal({r})"),
            ModExpr::Free { ring, rank } => format!("free({ring}, {rank})"),
            ModExpr::Syz { expr, n } => format!("syz({}, {n})", expr.render()),
            ModExpr::Cosyz { expr, n } => format!("cosyz({}, {n})", expr.render()),
            ModExpr::Tr(e) => format!("tr({})", e.render()),
            ModExpr::Sum(a, b) => format!("sum({}, {})", a.render(), b.render()),
        }
    }
}

impl CheckBody {
    pub fn render(&self) -> String {
        match self {
            CheckBody::Burch(r) => format!("burch {r}"),
            CheckBody::Decomposable(r) => format!("decomposable {r}"),
            CheckBody::QuasiDecomposable(r) => format!("quasidecomposable {r}"),
            CheckBody::Hypersurface(r) => format!("hypersurface {r}"),
            CheckBody::CondOne(r) => format!("c1 {r}"),
            CheckBody::CondTwo(r) => format!("c2 {r}"),
            CheckBody::Summand(a, b) => format!("summand({}, {})", a.render(), b.render()),
            CheckBody::Iso(a, b) => format!("iso({}, {})", a.render(), b.render()),
            CheckBody::InAdd(a, b) => format!("inadd({}, {})", a.render(), b.render()),
            CheckBody::Splitting { ring, module } => {
                format!("splitting {ring} {}", module.render())
            }
            CheckBody::InfPd { ring, module } => format!("infpd {ring} {}", module.render()),
            CheckBody::Exchange(r) => format!("exchange {r}"),
            CheckBody::MSummand(r) => format!("msummand {r}"),
            CheckBody::Recurrence(r) => format!("recurrence {r}"),
        }
    }
}

impl PolyAst {
    /// Prints following the tree structure; the parser never builds a tree
    /// whose naive printing would reparse differently, and explicit
    /// parentheses survive as [`PolyAst::Paren`] nodes.
    pub fn render(&self) -> String {
        match self {
            PolyAst::Int(n) => n.to_string(),
            PolyAst::Var(v) => v.clone(),
            PolyAst::Neg(a) => format!("-{}", a.render()),
            PolyAst::Add(a, b) => format!("{} + {}", a.render(), b.render()),
            PolyAst::Sub(a, b) => format!("{} - {}", a.render(), b.render()),
            PolyAst::Mul(a, b) => format!("{}*{}", a.render(), b.render()),
            PolyAst::Pow(a, e) => format!("{}^{e}", a.render()),
            PolyAst::Paren(a) => format!("({})", a.render()),
        }
    }
}
