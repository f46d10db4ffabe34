//! Text formats for models and properties.
//!
//! Model files are line oriented:
//!
//! ```text
//! clocks: x, y
//! params: p
//! domain: time=dense param=real
//! loc q0 init inv: x <= p
//! loc q1 inv: true
//! edge q0 -> q1 : x >= 2 & x - y < p ; a ; reset y:=0
//! ```
//!
//! Relations `>=`, `>` and `=` are rewritten into `<`/`<=` atoms while parsing.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::constraint::{AtomicConstraint, ClockTerm, Rel, SimpleConstraint};
use super::expr::Expr;
use super::property::{StateProperty, SystemProperty};
use super::{ActionId, ClockId, LocId, Location, ParamDomain, ParamId, Pta, TimeDomain, Transition, Updates};
use crate::algebra::MPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 21] = [
    "<=", ">=", ":=", "->", "&&", "||", "<", ">", "=", "&", "!", "(", ")", "+", "-", "*", "^", ",", ":",
    ";", "|",
];

fn lex(text: &str, first_line: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut end = (first_line, 1);
    for (li, raw) in text.lines().enumerate() {
        let line = first_line + li;
        let content = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
                i += s.len();
                out.push(Token { tok: Tok::Int(s.parse().unwrap()), line, col });
            } else if c.is_alphabetic() || c == '_' {
                let s: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_alphanumeric() || **c == '_' || **c == '\'')
                    .collect();
                i += s.chars().count();
                out.push(Token { tok: Tok::Ident(s), line, col });
            } else {
                let rest: String = chars[i..].iter().take(2).collect();
                let sym = SYMBOLS.iter().find(|s| rest.starts_with(**s)).ok_or_else(|| Error::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                })?;
                i += sym.len();
                out.push(Token { tok: Tok::Sym(sym), line, col });
            }
        }
        end = (line, chars.len() + 1);
    }
    out.push(Token { tok: Tok::Eof, line: end.0, col: end.1 });
    Ok(out)
}

/// Names visible to the constraint and property grammar.
struct Scope<'a> {
    clocks: &'a [String],
    params: &'a [String],
    locs: &'a [String],
}

impl Scope<'_> {
    fn clock(&self, n: &str) -> Option<ClockId> {
        self.clocks.iter().position(|c| c == n).map(ClockId)
    }
    fn param(&self, n: &str) -> Option<ParamId> {
        self.params.iter().position(|c| c == n).map(ParamId)
    }
    fn loc(&self, n: &str) -> Option<LocId> {
        self.locs.iter().position(|c| c == n).map(LocId)
    }
}

enum PExpr {
    Poly(MPoly<ParamId>),
    Inf,
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    scope: Scope<'a>,
}

impl<'a> Parser<'a> {
    fn new(toks: Vec<Token>, scope: Scope<'a>) -> Self {
        Parser { toks, pos: 0, scope }
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(Error::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize)> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) => {
                self.next();
                Ok((s, t.line, t.col))
            }
            _ => self.err("expected an identifier"),
        }
    }

    fn at_end(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    fn undeclared<T>(&self, kind: &'static str, name: &str, line: usize, col: usize) -> Result<T> {
        Err(Error::Undeclared { kind, name: name.to_string(), line, col })
    }

    fn clock_ref(&mut self) -> Result<ClockId> {
        let (n, line, col) = self.ident()?;
        match self.scope.clock(&n) {
            Some(c) => Ok(c),
            None if self.scope.param(&n).is_some() || self.scope.loc(&n).is_some() => {
                Err(Error::Syntax { line, col, msg: format!("`{n}` is not a clock") })
            }
            None => self.undeclared("clock", &n, line, col),
        }
    }

    fn term(&mut self) -> Result<ClockTerm> {
        if matches!(&self.peek().tok, Tok::Int(z) if z.is_zero()) {
            self.next();
            return Ok(ClockTerm::zero());
        }
        if self.eat_sym("-") {
            return Ok(ClockTerm::minus(self.clock_ref()?));
        }
        let a = self.clock_ref()?;
        let diff = self.is_sym("-")
            && matches!(self.peek_at(1), Tok::Ident(n) if self.scope.clock(n).is_some());
        if diff {
            self.next();
            let b = self.clock_ref()?;
            if a == b {
                return self.err("difference of a clock with itself");
            }
            return Ok(ClockTerm::diff(a, b));
        }
        Ok(ClockTerm::clock(a))
    }

    fn relation(&mut self) -> Result<&'static str> {
        for r in ["<=", ">=", "<", ">", "="] {
            if self.eat_sym(r) {
                return Ok(r);
            }
        }
        self.err("expected one of <, <=, >, >=, =")
    }

    fn atom(&mut self) -> Result<Vec<AtomicConstraint>> {
        let term = self.term()?;
        let rel = self.relation()?;
        let at = self.peek().clone();
        let rhs = match self.expr()? {
            PExpr::Inf => Expr::Infinity,
            PExpr::Poly(p) => Expr::from_poly(p)?,
        };
        let lower = |rel: Rel| -> Result<AtomicConstraint> {
            let neg = rhs.neg().ok_or_else(|| Error::Syntax {
                line: at.line,
                col: at.col,
                msg: "a lower bound cannot be infinite".into(),
            })?;
            Ok(AtomicConstraint::new(term.negate(), rel, neg))
        };
        Ok(match rel {
            "<=" => vec![AtomicConstraint::new(term, Rel::Le, rhs.clone())],
            "<" => vec![AtomicConstraint::new(term, Rel::Lt, rhs.clone())],
            ">=" => vec![lower(Rel::Le)?],
            ">" => vec![lower(Rel::Lt)?],
            _ => vec![AtomicConstraint::new(term, Rel::Le, rhs.clone()), lower(Rel::Le)?],
        })
    }

    fn constraint(&mut self) -> Result<SimpleConstraint> {
        if self.is_ident("true") {
            self.next();
            return Ok(SimpleConstraint::tt());
        }
        let mut atoms = self.atom()?;
        while self.eat_sym("&&") || self.eat_sym("&") {
            atoms.extend(self.atom()?);
        }
        Ok(SimpleConstraint::of(atoms))
    }

    fn expr(&mut self) -> Result<PExpr> {
        let start = self.peek().clone();
        let mut acc: Option<PExpr> = None;
        let mut sign = 1;
        if self.eat_sym("-") {
            sign = -1;
        } else {
            self.eat_sym("+");
        }
        loop {
            let t = self.expr_term()?;
            acc = Some(match (acc, t) {
                (None, PExpr::Inf) if sign == 1 => PExpr::Inf,
                (None, PExpr::Poly(p)) => PExpr::Poly(p.scale(&sign.into())),
                (Some(PExpr::Poly(a)), PExpr::Poly(p)) => PExpr::Poly(&a + &p.scale(&sign.into())),
                _ => {
                    return Err(Error::Syntax {
                        line: start.line,
                        col: start.col,
                        msg: "`inf` must stand alone".into(),
                    })
                }
            });
            if self.eat_sym("+") {
                sign = 1;
            } else if self.eat_sym("-") {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(acc.unwrap())
    }

    fn expr_term(&mut self) -> Result<PExpr> {
        let mut acc = self.factor()?;
        loop {
            let implicit = matches!(&self.peek().tok, Tok::Ident(n) if n != "inf" && self.scope.param(n).is_some())
                || self.is_sym("(");
            if self.eat_sym("*") || implicit {
                let f = self.factor()?;
                acc = match (acc, f) {
                    (PExpr::Poly(a), PExpr::Poly(b)) => PExpr::Poly(&a * &b),
                    _ => return self.err("`inf` must stand alone"),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<PExpr> {
        let base = self.primary()?;
        if self.eat_sym("^") {
            let t = self.next();
            let Tok::Int(k) = t.tok else {
                return Err(Error::Syntax { line: t.line, col: t.col, msg: "expected an exponent".into() });
            };
            let k = k.to_u32().filter(|k| *k <= 16).ok_or(Error::Syntax {
                line: t.line,
                col: t.col,
                msg: "exponent out of range".into(),
            })?;
            let PExpr::Poly(b) = base else {
                return self.err("`inf` must stand alone");
            };
            let mut acc = MPoly::constant(1.into());
            for _ in 0..k {
                acc = &acc * &b;
            }
            return Ok(PExpr::Poly(acc));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<PExpr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(k) => {
                self.next();
                Ok(PExpr::Poly(MPoly::constant(k)))
            }
            Tok::Ident(n) if n == "inf" => {
                self.next();
                Ok(PExpr::Inf)
            }
            Tok::Ident(n) => {
                self.next();
                match self.scope.param(&n) {
                    Some(p) => Ok(PExpr::Poly(MPoly::var(p))),
                    None if self.scope.clock(&n).is_some() => Err(Error::Syntax {
                        line: t.line,
                        col: t.col,
                        msg: format!("clock `{n}` cannot appear in a parameter expression"),
                    }),
                    None => self.undeclared("parameter", &n, t.line, t.col),
                }
            }
            Tok::Sym("(") => {
                self.next();
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => self.err("expected an expression"),
        }
    }

    fn state_property(&mut self) -> Result<StateProperty> {
        let mut acc = self.conjunction()?;
        while self.eat_sym("||") || self.eat_sym("|") {
            let r = self.conjunction()?;
            acc = StateProperty::or(acc, r);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<StateProperty> {
        let mut acc = self.unary()?;
        while self.eat_sym("&&") || self.eat_sym("&") {
            let r = self.unary()?;
            acc = StateProperty::and(acc, r);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<StateProperty> {
        if self.eat_sym("!") {
            return Ok(StateProperty::not(self.unary()?));
        }
        if self.eat_sym("(") {
            let p = self.state_property()?;
            self.expect_sym(")")?;
            return Ok(p);
        }
        let t = self.peek().clone();
        match &t.tok {
            Tok::Ident(n) if n == "true" => {
                self.next();
                Ok(StateProperty::True)
            }
            Tok::Ident(n) if n == "false" => {
                self.next();
                Ok(StateProperty::False)
            }
            Tok::Ident(n) if self.scope.clock(n).is_none() => match self.scope.loc(n) {
                Some(q) => {
                    self.next();
                    Ok(StateProperty::Loc(q))
                }
                None if self.scope.param(n).is_some() => {
                    self.err(format!("parameter `{n}` cannot start an atom"))
                }
                None => self.undeclared("identifier", n, t.line, t.col),
            },
            _ => {
                let atoms = self.atom()?;
                let mut it = atoms.into_iter().map(StateProperty::Atom);
                let first = it.next().unwrap();
                Ok(it.fold(first, StateProperty::and))
            }
        }
    }
}

fn declared_list(p: &mut Parser, kind: &str) -> Result<Vec<String>> {
    p.expect_sym(":")?;
    let mut out = Vec::new();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        let (n, line, col) = p.ident()?;
        if out.contains(&n) {
            return Err(Error::Syntax { line, col, msg: format!("{kind} `{n}` declared twice") });
        }
        out.push(n);
        if !p.eat_sym(",") {
            break;
        }
    }
    Ok(out)
}

fn expect_end(p: &Parser) -> Result<()> {
    if p.at_end() {
        Ok(())
    } else {
        p.err("unexpected trailing input")
    }
}

const KEYWORDS: [&str; 8] = ["true", "false", "inf", "init", "inv", "reset", "EF", "AG"];

/// Parses a model file.
pub fn parse_model(text: &str) -> Result<Pta> {
    let mut clocks: Vec<String> = Vec::new();
    let mut params: Vec<String> = Vec::new();
    let mut time_domain = TimeDomain::default();
    let mut param_domain = ParamDomain::default();
    let mut locs: Vec<String> = Vec::new();
    let mut initial: Option<LocId> = None;
    let mut deferred: Vec<(usize, Vec<Token>)> = Vec::new();
    let empty: [String; 0] = [];

    for (li, line) in text.lines().enumerate() {
        let toks = lex(line, li + 1)?;
        if toks.len() == 1 {
            continue;
        }
        let mut p = Parser::new(toks.clone(), Scope { clocks: &empty, params: &empty, locs: &empty });
        let (kw, l, c) = p.ident()?;
        match kw.as_str() {
            "clocks" => clocks.extend(declared_list(&mut p, "clock")?),
            "params" => params.extend(declared_list(&mut p, "parameter")?),
            "domain" => {
                p.expect_sym(":")?;
                while !p.at_end() {
                    let (k, kl, kc) = p.ident()?;
                    p.expect_sym("=")?;
                    let (v, vl, vc) = p.ident()?;
                    let bad = || Error::Syntax { line: vl, col: vc, msg: format!("unknown domain `{v}`") };
                    match k.as_str() {
                        "time" => {
                            time_domain = match v.as_str() {
                                "nat" => TimeDomain::Nat,
                                "dense" => TimeDomain::Dense,
                                _ => return Err(bad()),
                            }
                        }
                        "param" => {
                            param_domain = match v.as_str() {
                                "int" => ParamDomain::Int,
                                "real" => ParamDomain::Real,
                                "nat" => ParamDomain::Nat,
                                _ => return Err(bad()),
                            }
                        }
                        _ => return Err(Error::Syntax { line: kl, col: kc, msg: format!("unknown key `{k}`") }),
                    }
                }
            }
            "loc" => {
                let (n, nl, nc) = p.ident()?;
                if locs.contains(&n) {
                    return Err(Error::Syntax { line: nl, col: nc, msg: format!("location `{n}` declared twice") });
                }
                if p.is_ident("init") {
                    p.next();
                    if initial.is_some() {
                        return p.err("a second initial location");
                    }
                    initial = Some(LocId(locs.len()));
                }
                locs.push(n);
                deferred.push((li + 1, toks));
            }
            "edge" => deferred.push((li + 1, toks)),
            _ => return Err(Error::Syntax { line: l, col: c, msg: format!("unknown declaration `{kw}`") }),
        }
        if matches!(kw.as_str(), "clocks" | "params" | "domain") {
            expect_end(&p)?;
        }
    }

    let mut seen: HashMap<&str, &str> = HashMap::new();
    for (kind, names) in [("clock", &clocks), ("parameter", &params), ("location", &locs)] {
        for n in names.iter() {
            if KEYWORDS.contains(&n.as_str()) {
                return Err(Error::Invalid(format!("`{n}` is a reserved word")));
            }
            if let Some(k) = seen.insert(n, kind) {
                return Err(Error::Invalid(format!("`{n}` names both a {k} and a {kind}")));
            }
        }
    }

    let initial = initial.ok_or_else(|| Error::Invalid("no location is marked init".into()))?;
    let mut locations: Vec<Location> = Vec::new();
    let mut transitions = Vec::new();
    let mut actions: Vec<String> = Vec::new();
    for (line, toks) in deferred {
        let scope = Scope { clocks: &clocks, params: &params, locs: &locs };
        let mut p = Parser::new(toks, scope);
        let (kw, _, _) = p.ident()?;
        if kw == "loc" {
            let (n, _, _) = p.ident()?;
            if p.is_ident("init") {
                p.next();
            }
            if !p.is_ident("inv") {
                return p.err("expected `inv:`");
            }
            p.next();
            p.expect_sym(":")?;
            let invariant = p.constraint()?;
            expect_end(&p)?;
            locations.push(Location { name: n, invariant });
            continue;
        }
        let loc_ref = |p: &mut Parser| -> Result<LocId> {
            let (n, l, c) = p.ident()?;
            p.scope.loc(&n).ok_or(Error::Undeclared { kind: "location", name: n, line: l, col: c })
        };
        let source = loc_ref(&mut p)?;
        p.expect_sym("->")?;
        let target = loc_ref(&mut p)?;
        p.expect_sym(":")?;
        let guard = p.constraint()?;
        p.expect_sym(";")?;
        let (a, _, _) = p.ident()?;
        let action = match actions.iter().position(|x| *x == a) {
            Some(i) => ActionId(i),
            None => {
                actions.push(a);
                ActionId(actions.len() - 1)
            }
        };
        let mut updates = Updates::new();
        if p.eat_sym(";") && p.is_ident("reset") {
            p.next();
            loop {
                let c = p.clock_ref()?;
                if !p.eat_sym(":=") {
                    return Err(Error::MalformedUpdate { line, msg: "expected `:=`".into() });
                }
                let t = p.next();
                let b = match t.tok {
                    Tok::Int(b) => b.to_u64().ok_or(Error::MalformedUpdate {
                        line,
                        msg: "reset constant out of range".into(),
                    })?,
                    _ => {
                        return Err(Error::MalformedUpdate {
                            line,
                            msg: "reset value must be a natural constant".into(),
                        })
                    }
                };
                if updates.insert(c, b).is_some() {
                    return Err(Error::MalformedUpdate { line, msg: format!("clock `{}` reset twice", clocks[c.0]) });
                }
                if !p.eat_sym(",") {
                    break;
                }
            }
        }
        expect_end(&p)?;
        transitions.push(Transition { source, guard, action, updates, target });
    }

    let pta = Pta { clocks, params, actions, locations, initial, transitions, time_domain, param_domain };
    pta.validate()?;
    Ok(pta)
}

/// Parses `EF φ` or `AG φ` against the names of `pta`.
pub fn parse_property(text: &str, pta: &Pta) -> Result<SystemProperty> {
    let toks = lex(text, 1)?;
    let locs = pta.loc_names();
    let mut p = Parser::new(toks, Scope { clocks: &pta.clocks, params: &pta.params, locs: &locs });
    let (q, _, _) = p.ident()?;
    let phi = p.state_property()?;
    expect_end(&p)?;
    match q.as_str() {
        "EF" => Ok(SystemProperty::ef(phi)),
        "AG" => Ok(SystemProperty::ag(phi)),
        _ => Err(Error::Syntax { line: 1, col: 1, msg: "a property starts with EF or AG".into() }),
    }
}

/// Parses a bare state property (no quantifier).
pub fn parse_state_property(text: &str, pta: &Pta) -> Result<StateProperty> {
    let toks = lex(text, 1)?;
    let locs = pta.loc_names();
    let mut p = Parser::new(toks, Scope { clocks: &pta.clocks, params: &pta.params, locs: &locs });
    let phi = p.state_property()?;
    expect_end(&p)?;
    Ok(phi)
}

/// Parses a parameter expression such as `2p+3`.
pub fn parse_expr(text: &str, params: &[String]) -> Result<Expr> {
    let toks = lex(text, 1)?;
    let empty: [String; 0] = [];
    let mut p = Parser::new(toks, Scope { clocks: &empty, params, locs: &empty });
    let e = match p.expr()? {
        PExpr::Inf => Expr::Infinity,
        PExpr::Poly(m) => Expr::from_poly(m)?,
    };
    expect_end(&p)?;
    Ok(e)
}

/// Parses a constraint in model syntax.
pub fn parse_constraint(text: &str, pta: &Pta) -> Result<SimpleConstraint> {
    let toks = lex(text, 1)?;
    let locs = pta.loc_names();
    let mut p = Parser::new(toks, Scope { clocks: &pta.clocks, params: &pta.params, locs: &locs });
    let c = p.constraint()?;
    expect_end(&p)?;
    Ok(c)
}

/// Parses a run file: edge indices separated by whitespace or commas.
pub fn parse_run(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        for tok in content.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
            out.push(tok.parse().map_err(|_| Error::Syntax {
                line: li + 1,
                col: 1,
                msg: format!("`{tok}` is not an edge index"),
            })?);
        }
    }
    Ok(out)
}

/// Map of edge-free name lookups used by tools.
pub fn name_table(pta: &Pta) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    for c in &pta.clocks {
        m.insert(c.clone(), "clock".into());
    }
    for c in &pta.params {
        m.insert(c.clone(), "parameter".into());
    }
    for l in &pta.locations {
        m.insert(l.name.clone(), "location".into());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Rel;

    const GATE: &str = "clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x >= 2 & x <= p ; a ;";

    #[test]
    fn rewrites_lower_bounds() {
        let pta = parse_model(GATE).unwrap();
        assert_eq!(pta.locations.len(), 2);
        assert_eq!(pta.transitions.len(), 1);
        let g = &pta.transitions[0].guard.conjuncts;
        assert_eq!(g[0], AtomicConstraint::new(ClockTerm::minus(ClockId(0)), Rel::Le, Expr::constant(-2)));
        assert_eq!(g[1], AtomicConstraint::new(ClockTerm::clock(ClockId(0)), Rel::Le, Expr::param(ParamId(0))));
    }

    #[test]
    fn splits_equalities() {
        let pta = parse_model("clocks: x\nloc q0 init inv: true\nedge q0 -> q0 : x = 3 ; a ;").unwrap();
        let g = &pta.transitions[0].guard.conjuncts;
        assert_eq!(g.len(), 2);
        assert_eq!(g[0], AtomicConstraint::new(ClockTerm::clock(ClockId(0)), Rel::Le, Expr::constant(3)));
        assert_eq!(g[1], AtomicConstraint::new(ClockTerm::minus(ClockId(0)), Rel::Le, Expr::constant(-3)));
    }

    #[test]
    fn undeclared_location() {
        let text = "clocks: x\nloc q0 init inv: true\nedge q0 -> q2 : true ; a ;";
        match parse_model(text) {
            Err(Error::Undeclared { kind: "location", name, line: 3, col: 12 }) => assert_eq!(name, "q2"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn undeclared_clock_and_syntax_positions() {
        let text = "clocks: x\nloc q0 init inv: z <= 1";
        assert!(matches!(parse_model(text), Err(Error::Undeclared { kind: "clock", line: 2, col: 18, .. })));
        let text = "clocks: x\nloc q0 init inv: x <= ";
        assert!(matches!(parse_model(text), Err(Error::Syntax { line: 2, .. })));
    }

    #[test]
    fn malformed_updates() {
        let base = "clocks: x\nloc q0 init inv: true\n";
        let twice = format!("{base}edge q0 -> q0 : true ; a ; reset x:=0, x:=1");
        assert!(matches!(parse_model(&twice), Err(Error::MalformedUpdate { line: 3, .. })));
        let param = format!("{base}edge q0 -> q0 : true ; a ; reset x:=p");
        assert!(matches!(parse_model(&param), Err(Error::MalformedUpdate { .. })));
    }

    #[test]
    fn resets_and_domains() {
        let text = "clocks: x, y\nparams: p\ndomain: time=nat param=int\nloc q0 init inv: x - y < p\nedge q0 -> q0 : y > 1 ; tick ; reset y:=0, x:=2";
        let pta = parse_model(text).unwrap();
        assert_eq!(pta.time_domain, TimeDomain::Nat);
        assert_eq!(pta.param_domain, ParamDomain::Int);
        assert_eq!(pta.transitions[0].updates, Updates::from([(ClockId(0), 2), (ClockId(1), 0)]));
        assert_eq!(pta.locations[0].invariant.conjuncts[0].term, ClockTerm::diff(ClockId(0), ClockId(1)));
    }

    #[test]
    fn expressions() {
        let ps = vec!["p".to_string(), "q".to_string()];
        assert_eq!(parse_expr("2p+3", &ps).unwrap(), Expr::linear(3, [(ParamId(0), 2)]));
        assert_eq!(parse_expr("-(p - 2*q) + 1", &ps).unwrap(), Expr::linear(1, [(ParamId(0), -1), (ParamId(1), 2)]));
        assert!(matches!(parse_expr("p^2-1", &ps).unwrap(), Expr::Polynomial(_)));
        assert!(matches!(parse_expr("p*q", &ps).unwrap(), Expr::Polynomial(_)));
        assert_eq!(parse_expr("inf", &ps).unwrap(), Expr::Infinity);
        assert!(parse_expr("inf + 1", &ps).is_err());
        assert!(matches!(parse_expr("r", &ps), Err(Error::Undeclared { .. })));
    }

    #[test]
    fn properties() {
        let pta = parse_model("clocks: x, y\nparams: p\nloc q0 init inv: true\nloc q1 inv: true").unwrap();
        let ef = parse_property("EF (q1 && x <= p)", &pta).unwrap();
        let atom = AtomicConstraint::new(ClockTerm::clock(ClockId(0)), Rel::Le, Expr::param(ParamId(0)));
        assert_eq!(ef, SystemProperty::ef(StateProperty::and(StateProperty::Loc(LocId(1)), StateProperty::Atom(atom))));
        let ag = parse_property("AG (!q1)", &pta).unwrap();
        assert_eq!(ag, SystemProperty::ag(StateProperty::not(StateProperty::Loc(LocId(1)))));
        let d = parse_property("EF (x - y < p)", &pta).unwrap();
        match d.phi {
            StateProperty::Atom(a) => {
                assert_eq!((a.b1(), a.b2(), a.rel), (1, 1, Rel::Lt));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_property("EF q7", &pta), Err(Error::Undeclared { .. })));
        assert!(parse_property("XF q1", &pta).is_err());
    }

    #[test]
    fn run_files() {
        assert_eq!(parse_run("0 1, 2\n# c\n3").unwrap(), vec![0, 1, 2, 3]);
        assert!(parse_run("a").is_err());
    }
}
