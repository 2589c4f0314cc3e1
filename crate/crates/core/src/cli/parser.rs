//! Recursive-descent parser and the name-resolution pass. [`parse`] runs
//! lexing, parsing, and resolution, so a returned script has every name
//! declared before use, a valid prime, and well-formed bound clauses.

use std::collections::HashSet;

use crate::field::PrimeField;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::CliError;

/// Identifiers with fixed grammatical meaning; declarations may not shadow
/// them.
const RESERVED: &[&str] = &[
    "option", "ring", "module", "seq", "check", "cert", "bound", "poly", "fiber", "coker",
    "residue", "maxideal", "syz", "cosyz", "tr", "sum", "free", "on", "with", "expect", "true",
    "false", "dx", "udim", "burch", "decomposable", "quasidecomposable", "hypersurface", "c1",
    "c2", "summand", "iso", "inadd", "splitting", "infpd", "exchange", "msummand", "recurrence",
    "domination",
];

/// Largest exponent a polynomial literal may carry.
const MAX_EXPONENT: u64 = 65_535;

pub fn parse(src: &str) -> Result<Script, CliError> {
    let tokens = lex(src)?;
    let script = Parser { tokens, pos: 0 }.script()?;
    resolve(&script)?;
    Ok(script)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CliError> {
        let (line, col) = self
            .tokens
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .or_else(|| self.tokens.last().map(|t| (t.line, t.col + 1)))
            .unwrap_or((1, 1));
        Err(CliError::Syntax { line, col, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<(), CliError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => self.err(format!("expected {want}, found {t}")),
            None => self.err(format!("expected {want}, found end of input")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, CliError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let Some(Token { tok: Tok::Ident(s), .. }) = self.next() else {
                    unreachable!()
                };
                Ok(s)
            }
            Some(t) => self.err(format!("expected {what}, found {t}")),
            None => self.err(format!("expected {what}, found end of input")),
        }
    }

    /// Consumes the identifier only when it matches `kw`.
    fn eat_kw(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self, what: &str) -> Result<u64, CliError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some(Token { tok: Tok::Int(v), .. }) = self.next() else {
                    unreachable!()
                };
                Ok(v)
            }
            Some(t) => self.err(format!("expected {what}, found {t}")),
            None => self.err(format!("expected {what}, found end of input")),
        }
    }

    fn script(mut self) -> Result<Script, CliError> {
        let mut statements = Vec::new();
        while self.pos < self.tokens.len() {
            statements.push(self.statement()?);
        }
        Ok(Script { statements })
    }

    fn statement(&mut self) -> Result<Stmt, CliError> {
        let (line, col) = {
            let t = &self.tokens[self.pos];
            (t.line, t.col)
        };
        let kw = self.ident("a statement keyword (option, ring, module, seq, check, cert, bound)")?;
        let kind = match kw.as_str() {
            "option" => self.option_stmt()?,
            "ring" => self.ring_stmt()?,
            "module" => self.module_stmt()?,
            "seq" => self.seq_stmt()?,
            "check" => self.check_stmt()?,
            "cert" => self.cert_stmt()?,
            "bound" => self.bound_stmt()?,
            other => {
                self.pos -= 1;
                return self.err(format!(
                    "unknown statement keyword '{other}' (expected option, ring, module, seq, \
                     check, cert, or bound)"
                ));
            }
        };
        self.expect(&Tok::Semi)?;
        Ok(Stmt { kind, line, col })
    }

    fn option_stmt(&mut self) -> Result<StmtKind, CliError> {
        let name = self.ident("an option name (prime, seed, maxsteps)")?;
        if !matches!(name.as_str(), "prime" | "seed" | "maxsteps") {
            self.pos -= 1;
            return self.err(format!(
                "unknown option '{name}' (expected prime, seed, or maxsteps)"
            ));
        }
        self.expect(&Tok::Eq)?;
        let value = self.int("an option value")?;
        Ok(StmtKind::Option { name, value })
    }

    fn ring_stmt(&mut self) -> Result<StmtKind, CliError> {
        let name = self.ident("a ring name")?;
        self.expect(&Tok::Eq)?;
        if self.eat_kw("poly") {
            self.expect(&Tok::LParen)?;
            let mut vars = vec![self.ident("a variable name")?];
            while matches!(self.peek(), Some(Tok::Comma)) {
                self.pos += 1;
                vars.push(self.ident("a variable name")?);
            }
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::Slash)?;
            self.expect(&Tok::LParen)?;
            let mut gens = vec![self.poly()?];
            while matches!(self.peek(), Some(Tok::Comma)) {
                self.pos += 1;
                gens.push(self.poly()?);
            }
            self.expect(&Tok::RParen)?;
            Ok(StmtKind::RingPoly { name, vars, gens })
        } else if self.eat_kw("fiber") {
            self.expect(&Tok::LParen)?;
            let left = self.ident("a ring name")?;
            self.expect(&Tok::Comma)?;
            let right = self.ident("a ring name")?;
            self.expect(&Tok::RParen)?;
            Ok(StmtKind::RingFiber { name, left, right })
        } else {
            self.err("expected 'poly(...) / (...)' or 'fiber(A, B)' after '='")
        }
    }

    fn module_stmt(&mut self) -> Result<StmtKind, CliError> {
        let name = self.ident("a module name")?;
        self.expect(&Tok::Eq)?;
        let expr = self.modexpr()?;
        Ok(StmtKind::Module { name, expr })
    }

    fn seq_stmt(&mut self) -> Result<StmtKind, CliError> {
        let name = self.ident("a sequence name")?;
        if !self.eat_kw("on") {
            return self.err("expected 'on' after the sequence name");
        }
        let ring = self.ident("a ring name")?;
        self.expect(&Tok::Eq)?;
        self.expect(&Tok::LParen)?;
        let mut elems = vec![self.poly()?];
        while matches!(self.peek(), Some(Tok::Comma)) {
            self.pos += 1;
            elems.push(self.poly()?);
        }
        self.expect(&Tok::RParen)?;
        Ok(StmtKind::Seq { name, ring, elems })
    }

    fn check_stmt(&mut self) -> Result<StmtKind, CliError> {
        let kw = self.ident("a check name")?;
        let body = match kw.as_str() {
            "burch" => CheckBody::Burch(self.ident("a ring name")?),
            "decomposable" => CheckBody::Decomposable(self.ident("a ring name")?),
            "quasidecomposable" => CheckBody::QuasiDecomposable(self.ident("a ring name")?),
            "hypersurface" => CheckBody::Hypersurface(self.ident("a ring name")?),
            "c1" => CheckBody::CondOne(self.ident("a ring name")?),
            "c2" => CheckBody::CondTwo(self.ident("a ring name")?),
            "summand" | "iso" | "inadd" => {
                self.expect(&Tok::LParen)?;
                let a = self.modexpr()?;
                self.expect(&Tok::Comma)?;
                let b = self.modexpr()?;
                self.expect(&Tok::RParen)?;
                match kw.as_str() {
                    "summand" => CheckBody::Summand(a, b),
                    "iso" => CheckBody::Iso(a, b),
                    _ => CheckBody::InAdd(a, b),
                }
            }
            "splitting" => {
                let ring = self.ident("a ring name")?;
                CheckBody::Splitting { ring, module: self.modexpr()? }
            }
            "infpd" => {
                let ring = self.ident("a ring name")?;
                CheckBody::InfPd { ring, module: self.modexpr()? }
            }
            "exchange" => CheckBody::Exchange(self.ident("a ring name")?),
            "msummand" => CheckBody::MSummand(self.ident("a ring name")?),
            "recurrence" => CheckBody::Recurrence(self.ident("a ring name")?),
            other => {
                self.pos -= 1;
                return self.err(format!(
                    "unknown check '{other}' (expected burch, decomposable, quasidecomposable, \
                     hypersurface, c1, c2, summand, iso, inadd, splitting, infpd, exchange, \
                     msummand, or recurrence)"
                ));
            }
        };
        let expect = if self.eat_kw("expect") {
            if self.eat_kw("true") {
                Some(true)
            } else if self.eat_kw("false") {
                Some(false)
            } else {
                return self.err("expected 'true' or 'false' after 'expect'");
            }
        } else {
            None
        };
        Ok(StmtKind::Check { body, expect })
    }

    fn cert_stmt(&mut self) -> Result<StmtKind, CliError> {
        if !self.eat_kw("domination") {
            return self.err("expected 'domination' after 'cert'");
        }
        let ring = self.ident("a ring name")?;
        let module = self.modexpr()?;
        Ok(StmtKind::Cert { ring, module })
    }

    fn bound_stmt(&mut self) -> Result<StmtKind, CliError> {
        let target = if self.eat_kw("dx") {
            BoundTargetAst::Dx
        } else if self.eat_kw("udim") {
            BoundTargetAst::Udim
        } else {
            return self.err("expected 'dx' or 'udim' after 'bound'");
        };
        let ring = self.ident("a ring name")?;
        let mut with = Vec::new();
        if self.eat_kw("with") {
            self.expect(&Tok::LBrace)?;
            loop {
                let key = self.ident("a flag or a key = value item")?;
                if matches!(self.peek(), Some(Tok::Eq)) {
                    self.pos += 1;
                    let v = self.int("a value")?;
                    with.push(WithItem::Assign(key, v));
                } else {
                    with.push(WithItem::Flag(key));
                }
                if matches!(self.peek(), Some(Tok::Comma)) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            self.expect(&Tok::RBrace)?;
        }
        Ok(StmtKind::Bound { target, ring, with })
    }

    fn modexpr(&mut self) -> Result<ModExpr, CliError> {
        let kw = self.ident("a module expression")?;
        let builtin_call = matches!(self.peek(), Some(Tok::LParen));
        match kw.as_str() {
            "coker" => {
                let ring = self.ident("a ring name")?;
                let rows = self.matrix()?;
                Ok(ModExpr::Coker { ring, rows })
            }
            "residue" if builtin_call => {
                self.expect(&Tok::LParen)?;
                let r = self.ident("a ring name")?;
                self.expect(&Tok::RParen)?;
                Ok(ModExpr::Residue(r))
            }
            "maxideal" if builtin_call => {
                self.expect(&Tok::LParen)?;
                let r = self.ident("a ring name")?;
                self.expect(&Tok::RParen)?;
                Ok(ModExpr::MaxIdeal(r))
            }
            "free" if builtin_call => {
                self.expect(&Tok::LParen)?;
                let ring = self.ident("a ring name")?;
                self.expect(&Tok::Comma)?;
                let rank = self.int("a rank")?;
                self.expect(&Tok::RParen)?;
                Ok(ModExpr::Free { ring, rank })
            }
            "syz" | "cosyz" if builtin_call => {
                self.expect(&Tok::LParen)?;
                let inner = Box::new(self.modexpr()?);
                self.expect(&Tok::Comma)?;
                let n = self.int("a syzygy index")?;
                self.expect(&Tok::RParen)?;
                Ok(if kw == "syz" {
                    ModExpr::Syz { expr: inner, n }
                } else {
                    ModExpr::Cosyz { expr: inner, n }
                })
            }
            "tr" if builtin_call => {
                self.expect(&Tok::LParen)?;
                let inner = Box::new(self.modexpr()?);
                self.expect(&Tok::RParen)?;
                Ok(ModExpr::Tr(inner))
            }
            "sum" if builtin_call => {
                self.expect(&Tok::LParen)?;
                let a = Box::new(self.modexpr()?);
                self.expect(&Tok::Comma)?;
                let b = Box::new(self.modexpr()?);
                self.expect(&Tok::RParen)?;
                Ok(ModExpr::Sum(a, b))
            }
            _ => Ok(ModExpr::Name(kw)),
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<PolyAst>>, CliError> {
        self.expect(&Tok::LBrack)?;
        let mut rows = vec![self.matrix_row()?];
        while matches!(self.peek(), Some(Tok::Comma)) {
            self.pos += 1;
            rows.push(self.matrix_row()?);
        }
        self.expect(&Tok::RBrack)?;
        let width = rows[0].len();
        if rows.iter().any(|r| r.len() != width) {
            return self.err("matrix rows must all have the same length");
        }
        Ok(rows)
    }

    fn matrix_row(&mut self) -> Result<Vec<PolyAst>, CliError> {
        self.expect(&Tok::LBrack)?;
        let mut row = vec![self.poly()?];
        while matches!(self.peek(), Some(Tok::Comma)) {
            self.pos += 1;
            row.push(self.poly()?);
        }
        self.expect(&Tok::RBrack)?;
        Ok(row)
    }

    // polynomial expressions: sums of terms, terms are products of powers
    fn poly(&mut self) -> Result<PolyAst, CliError> {
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            PolyAst::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = PolyAst::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = PolyAst::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyAst, CliError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            acc = PolyAst::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyAst, CliError> {
        let base = self.poly_base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let e = self.int("an exponent")?;
            if e > MAX_EXPONENT {
                self.pos -= 1;
                return self.err(format!("exponent {e} exceeds the limit {MAX_EXPONENT}"));
            }
            Ok(PolyAst::Pow(Box::new(base), e as u32))
        } else {
            Ok(base)
        }
    }

    fn poly_base(&mut self) -> Result<PolyAst, CliError> {
        match self.peek() {
            Some(Tok::Int(_)) => Ok(PolyAst::Int(self.int("an integer")?)),
            Some(Tok::Ident(_)) => Ok(PolyAst::Var(self.ident("a variable")?)),
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.poly()?;
                self.expect(&Tok::RParen)?;
                Ok(PolyAst::Paren(Box::new(inner)))
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("expected a polynomial, found {t}"))
            }
            None => self.err("expected a polynomial, found end of input"),
        }
    }
}

// ---------------------------------------------------------------------------
// name resolution

/// Numeric keys a bound with-clause accepts.
const BOUND_KEYS: &[&str] = &["n", "t", "d", "e", "m", "l", "level", "gt"];
/// Structural flags a bound with-clause accepts (case preserved from the
/// script; matching is case-insensitive for the two condition names).
const BOUND_FLAGS: &[&str] =
    &["c1", "c2", "burch", "quasi", "quasidecomposable", "hypersurface", "regular"];

fn resolve(script: &Script) -> Result<(), CliError> {
    let mut rings: HashSet<&str> = HashSet::new();
    let mut modules: HashSet<&str> = HashSet::new();
    let mut seqs: HashSet<&str> = HashSet::new();
    let mut prime_set = false;
    let err = |stmt: &Stmt, msg: String| -> Result<(), CliError> {
        Err(CliError::Syntax { line: stmt.line, col: stmt.col, msg })
    };
    let declare = |stmt: &Stmt,
                   set: &mut HashSet<&str>,
                   other: &str,
                   name: &str|
     -> Result<(), CliError> {
        if RESERVED.contains(&name) {
            return Err(CliError::Syntax {
                line: stmt.line,
                col: stmt.col,
                msg: format!("'{name}' is a reserved word and cannot be declared"),
            });
        }
        if set.contains(name) {
            return Err(CliError::Syntax {
                line: stmt.line,
                col: stmt.col,
                msg: format!("{other} '{name}' is declared twice"),
            });
        }
        Ok(())
    };
    for stmt in &script.statements {
        match &stmt.kind {
            StmtKind::Option { name, value } => {
                if name == "prime" {
                    if prime_set {
                        err(stmt, "the coefficient prime may be set only once".into())?;
                    }
                    if !rings.is_empty() {
                        err(
                            stmt,
                            "the coefficient prime must be set before the first ring \
                             declaration"
                                .into(),
                        )?;
                    }
                    if let Err(e) = PrimeField::new(*value) {
                        err(stmt, format!("bad prime: {e}"))?;
                    }
                    prime_set = true;
                }
            }
            StmtKind::RingPoly { name, vars, .. } => {
                declare(stmt, &mut rings, "ring", name)?;
                for (i, v) in vars.iter().enumerate() {
                    if vars[..i].contains(v) {
                        err(stmt, format!("variable '{v}' appears twice"))?;
                    }
                }
                rings.insert(name);
            }
            StmtKind::RingFiber { name, left, right } => {
                declare(stmt, &mut rings, "ring", name)?;
                for r in [left, right] {
                    if !rings.contains(r.as_str()) {
                        err(stmt, format!("undeclared ring '{r}'"))?;
                    }
                }
                rings.insert(name);
            }
            StmtKind::Module { name, expr } => {
                declare(stmt, &mut modules, "module", name)?;
                resolve_modexpr(stmt, expr, &rings, &modules)?;
                modules.insert(name);
            }
            StmtKind::Seq { name, ring, .. } => {
                declare(stmt, &mut seqs, "sequence", name)?;
                if !rings.contains(ring.as_str()) {
                    err(stmt, format!("undeclared ring '{ring}'"))?;
                }
                seqs.insert(name);
            }
            StmtKind::Check { body, .. } => match body {
                CheckBody::Burch(r)
                | CheckBody::Decomposable(r)
                | CheckBody::QuasiDecomposable(r)
                | CheckBody::Hypersurface(r)
                | CheckBody::CondOne(r)
                | CheckBody::CondTwo(r)
                | CheckBody::Exchange(r)
                | CheckBody::MSummand(r)
                | CheckBody::Recurrence(r) => {
                    if !rings.contains(r.as_str()) {
                        err(stmt, format!("undeclared ring '{r}'"))?;
                    }
                }
                CheckBody::Summand(a, b) | CheckBody::Iso(a, b) | CheckBody::InAdd(a, b) => {
                    resolve_modexpr(stmt, a, &rings, &modules)?;
                    resolve_modexpr(stmt, b, &rings, &modules)?;
                }
                CheckBody::Splitting { ring, module } | CheckBody::InfPd { ring, module } => {
                    if !rings.contains(ring.as_str()) {
                        err(stmt, format!("undeclared ring '{ring}'"))?;
                    }
                    resolve_modexpr(stmt, module, &rings, &modules)?;
                }
            },
            StmtKind::Cert { ring, module } => {
                if !rings.contains(ring.as_str()) {
                    err(stmt, format!("undeclared ring '{ring}'"))?;
                }
                resolve_modexpr(stmt, module, &rings, &modules)?;
            }
            StmtKind::Bound { ring, with, .. } => {
                if !rings.contains(ring.as_str()) {
                    err(stmt, format!("undeclared ring '{ring}'"))?;
                }
                for item in with {
                    match item {
                        WithItem::Flag(f) => {
                            if !BOUND_FLAGS.contains(&f.to_ascii_lowercase().as_str()) {
                                err(
                                    stmt,
                                    format!(
                                        "unknown flag '{f}' (expected one of: C1, C2, burch, \
                                         quasidecomposable, hypersurface, regular)"
                                    ),
                                )?;
                            }
                        }
                        WithItem::Assign(k, _) => {
                            if !BOUND_KEYS.contains(&k.as_str()) {
                                err(
                                    stmt,
                                    format!(
                                        "unknown key '{k}' (expected one of: n, t, d, e, m, l, \
                                         level, gt)"
                                    ),
                                )?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn resolve_modexpr(
    stmt: &Stmt,
    expr: &ModExpr,
    rings: &HashSet<&str>,
    modules: &HashSet<&str>,
) -> Result<(), CliError> {
    let err = |msg: String| -> Result<(), CliError> {
        Err(CliError::Syntax { line: stmt.line, col: stmt.col, msg })
    };
    match expr {
        ModExpr::Name(n) => {
            if !modules.contains(n.as_str()) {
                err(format!("undeclared module '{n}'"))?;
            }
        }
        ModExpr::Coker { ring, .. }
        | ModExpr::Residue(ring)
        | ModExpr::MaxIdeal(ring)
        | ModExpr::Free { ring, .. } => {
            if !rings.contains(ring.as_str()) {
                err(format!("undeclared ring '{ring}'"))?;
            }
        }
        ModExpr::Syz { expr, .. } | ModExpr::Cosyz { expr, .. } | ModExpr::Tr(expr) => {
            resolve_modexpr(stmt, expr, rings, modules)?;
        }
        ModExpr::Sum(a, b) => {
            resolve_modexpr(stmt, a, rings, modules)?;
            resolve_modexpr(stmt, b, rings, modules)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(src: &str) -> Script {
        let first = parse(src).unwrap();
        let rendered = first.render();
        let second = parse(&rendered).unwrap();
        assert_eq!(first, second, "parse/render/parse must be the identity");
        second
    }

    #[test]
    fn full_grammar_round_trips() {
        let src = r#"
            option prime = 101;
            option seed = 7;
            option maxsteps = 16;
            ring R = poly(x, y) / (y^2, x^2*y, x^3);
            ring A = poly(t) / (t^2);
            ring S = fiber(R, A);
            module K = residue(R);
            module M = coker R [[x, y], [0, x^2]];
            module W = sum(free(R, 2), tr(syz(K, 2)));
            module C = cosyz(M, 1);
            seq s on R = (x - y, x + 2*y);
            check burch R;
            check decomposable R expect false;
            check quasidecomposable R;
            check hypersurface A expect true;
            check c1 R;
            check c2 R expect false;
            check summand(maxideal(R), syz(K, 2));
            check iso(K, syz(K, 2));
            check inadd(maxideal(R), sum(free(R, 1), syz(K, 2)));
            check splitting S M;
            check infpd S residue(S);
            check exchange S;
            check msummand S;
            check recurrence A;
            cert domination R K;
            bound dx R;
            bound dx R with {C1};
            bound udim R with {n = 2, m = 3, l = 3};
            bound udim R with {burch, level = 1, gt = 3};
        "#;
        let script = roundtrip(src);
        assert_eq!(script.statements.len(), 30);
        let twice = parse(&script.render()).unwrap().render();
        assert_eq!(script.render(), twice, "rendering is a fixed point");
    }

    #[test]
    fn polynomial_structure_survives_round_trips() {
        let src = "ring R = poly(x, y) / (x^3 + 2*x*y, -x + (x - y)^2, 5);";
        let script = roundtrip(src);
        let StmtKind::RingPoly { gens, .. } = &script.statements[0].kind else {
            panic!()
        };
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[0].render(), "x^3 + 2*x*y");
        assert_eq!(gens[1].render(), "-x + (x - y)^2");
    }

    #[test]
    fn missing_semicolon_is_located() {
        let err = parse("option seed = 3\noption prime = 101;").unwrap_err();
        match err {
            CliError::Syntax { line, col, msg } => {
                assert_eq!((line, col), (2, 1));
                assert!(msg.contains("';'"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn undeclared_names_are_parse_errors() {
        let err = parse("check burch R;").unwrap_err();
        assert!(err.to_string().contains("undeclared ring 'R'"), "{err}");
        let err = parse("ring R = poly(x) / (x^2);\nmodule M = sum(K, residue(R));").unwrap_err();
        assert!(err.to_string().contains("undeclared module 'K'"), "{err}");
        assert!(err.to_string().starts_with("2:"), "{err}");
    }

    #[test]
    fn bad_primes_are_parse_errors() {
        let err = parse("option prime = 91;").unwrap_err();
        assert!(err.to_string().contains("bad prime"), "{err}");
    }

    #[test]
    fn prime_after_ring_is_rejected() {
        let err = parse("ring R = poly(x) / (x^2);\noption prime = 7;").unwrap_err();
        assert!(err.to_string().contains("before the first ring"), "{err}");
    }

    #[test]
    fn reserved_and_duplicate_names_are_rejected() {
        let err = parse("ring syz = poly(x) / (x^2);").unwrap_err();
        assert!(err.to_string().contains("reserved"), "{err}");
        let err =
            parse("ring R = poly(x) / (x^2);\nring R = poly(y) / (y^2);").unwrap_err();
        assert!(err.to_string().contains("declared twice"), "{err}");
    }

    #[test]
    fn unknown_bound_keys_are_rejected() {
        let err = parse("ring R = poly(x) / (x^2);\nbound dx R with {q = 3};").unwrap_err();
        assert!(err.to_string().contains("unknown key 'q'"), "{err}");
        let err = parse("ring R = poly(x) / (x^2);\nbound dx R with {gorenstein};").unwrap_err();
        assert!(err.to_string().contains("unknown flag"), "{err}");
    }

    #[test]
    fn ragged_matrices_are_rejected() {
        let err =
            parse("ring R = poly(x) / (x^2);\nmodule M = coker R [[x], [x, x]];").unwrap_err();
        assert!(err.to_string().contains("same length"), "{err}");
    }
}
