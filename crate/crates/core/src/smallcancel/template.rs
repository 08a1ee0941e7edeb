use super::factor::{free_reduce, Factor};
use super::{FactorLetter, ScError};
use crate::parse::{lines, Line, ParseError};

/// Longest relator, in symbols, a template may expand to.
pub const MAX_EXPANDED: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    pub name: String,
    pub factor: Factor,
    pub symbols: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Groups {
    Free { generators: Vec<String> },
    Product { factors: Vec<FactorSpec> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub values: Vec<i64>,
}

/// `coef * n + constant`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub coef: i64,
    pub constant: i64,
}

impl Affine {
    pub fn at(&self, n: i64) -> i64 {
        self.coef * n + self.constant
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Symbol(usize),
    Seq(Vec<Term>),
    /// `[x, y] = x y x⁻¹ y⁻¹`.
    Commutator(Box<Term>, Box<Term>),
    Power(Box<Term>, Affine),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub line: usize,
    pub text: String,
    pub term: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub groups: Groups,
    pub param: Option<Param>,
    pub templates: Vec<Template>,
}

/// Concrete relators in the presentation's letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relators {
    Free(Vec<Vec<i32>>),
    Product(Vec<Vec<FactorLetter>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expanded {
    pub relators: Relators,
    /// One label per relator, e.g. `(a^n b^n)^5 [n=2]`.
    pub labels: Vec<String>,
}

impl Expanded {
    pub fn lengths(&self) -> Vec<usize> {
        match &self.relators {
            Relators::Free(rs) => rs.iter().map(Vec::len).collect(),
            Relators::Product(rs) => rs.iter().map(Vec::len).collect(),
        }
    }
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let ls = lines(text);
        let mut generators: Option<Vec<String>> = None;
        let mut factors: Vec<FactorSpec> = Vec::new();
        let mut param: Option<Param> = None;
        let mut relator_lines: Vec<&Line> = Vec::new();
        for line in &ls {
            let kw = &line.tokens[0];
            match kw.text {
                "generators" => {
                    if generators.is_some() {
                        return Err(line.error_at(kw, "duplicate generators line"));
                    }
                    let names: Vec<String> = line.tokens[1..].iter().map(|t| t.text.to_string()).collect();
                    for t in &line.tokens[1..] {
                        check_symbol(line, t)?;
                    }
                    if names.is_empty() {
                        return Err(line.error(line.end_column(), "expected at least one generator"));
                    }
                    generators = Some(names);
                }
                "factor" => factors.push(parse_factor(line)?),
                "param" => {
                    if param.is_some() {
                        return Err(line.error_at(kw, "only one parameter is supported"));
                    }
                    param = Some(parse_param(line)?);
                }
                "relator" => relator_lines.push(line),
                other => return Err(line.error_at(kw, format!("unknown keyword '{other}'"))),
            }
        }
        let groups = match (generators, factors.is_empty()) {
            (Some(_), false) => return Err(ParseError::new(1, 1, "use either 'generators' or 'factor' lines, not both")),
            (Some(generators), true) => Groups::Free { generators },
            (None, false) => Groups::Product { factors },
            (None, true) => return Err(ParseError::new(1, 1, "no 'generators' or 'factor' declaration")),
        };
        let symbols = symbol_names(&groups);
        let mut seen = std::collections::BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s) {
                return Err(ParseError::new(1, 1, format!("symbol '{s}' declared twice")));
            }
        }
        if relator_lines.is_empty() {
            return Err(ParseError::new(ls.last().map_or(1, |l| l.number), 1, "no relator lines"));
        }
        let pname = param.as_ref().map(|p| p.name.as_str());
        let templates = relator_lines
            .into_iter()
            .map(|line| {
                let (text, col) = line.rest_after_keyword();
                let term = TermParser::new(line, text, col, &symbols, pname)?.parse_all()?;
                Ok(Template { line: line.number, text: text.trim_end().to_string(), term })
            })
            .collect::<Result<_, ParseError>>()?;
        Ok(Presentation { groups, param, templates })
    }

    /// Substitutes every index value into every template.
    pub fn expand(&self) -> Result<Expanded, ScError> {
        let values: Vec<Option<i64>> = match &self.param {
            Some(p) if p.values.is_empty() => return Err(ScError::EmptyIndexSet),
            Some(p) => p.values.iter().map(|&v| Some(v)).collect(),
            None => vec![None],
        };
        let mut labels = Vec::new();
        let mut words = Vec::new();
        for t in &self.templates {
            for &v in &values {
                let mut w = Vec::new();
                push_term(&t.term, v.unwrap_or(0), 1, &mut w)?;
                let label = match (&self.param, v) {
                    (Some(p), Some(v)) => format!("{} [{}={}]", t.text, p.name, v),
                    _ => t.text.clone(),
                };
                words.push(w);
                labels.push(label);
            }
        }
        let relators = match &self.groups {
            Groups::Free { .. } => Relators::Free(
                words.into_iter().map(|w| free_reduce(w.into_iter().map(|(s, e)| e * (s as i32 + 1)))).collect(),
            ),
            Groups::Product { factors } => {
                let owner = symbol_owners(factors);
                Relators::Product(words.into_iter().map(|w| consolidate(factors, &owner, &w)).collect())
            }
        };
        let empty = match &relators {
            Relators::Free(rs) => rs.iter().position(Vec::is_empty),
            Relators::Product(rs) => rs.iter().position(Vec::is_empty),
        };
        if let Some(i) = empty {
            return Err(ScError::TrivialAfterSubstitution(labels[i].clone()));
        }
        Ok(Expanded { relators, labels })
    }
}

pub(super) fn symbol_names(groups: &Groups) -> Vec<String> {
    match groups {
        Groups::Free { generators } => generators.clone(),
        Groups::Product { factors } => factors.iter().flat_map(|f| f.symbols.iter().cloned()).collect(),
    }
}

/// `(factor, generator)` for every global symbol index.
fn symbol_owners(factors: &[FactorSpec]) -> Vec<(usize, usize)> {
    factors.iter().enumerate().flat_map(|(f, spec)| (0..spec.symbols.len()).map(move |i| (f, i))).collect()
}

/// Normal form in the free product: adjacent symbols of one factor merge and
/// identity letters disappear.
fn consolidate(factors: &[FactorSpec], owner: &[(usize, usize)], w: &[(usize, i32)]) -> Vec<FactorLetter> {
    let mut out: Vec<FactorLetter> = Vec::new();
    for &(s, e) in w {
        let (f, i) = owner[s];
        let x = factors[f].factor.generator(i, i64::from(e));
        match out.last_mut() {
            Some(top) if top.factor == f => {
                top.element = top.element.multiply(&x).expect("same factor");
                if top.element.is_identity() {
                    out.pop();
                }
            }
            _ if x.is_identity() => {}
            _ => out.push(FactorLetter { factor: f, element: x }),
        }
    }
    out
}

fn push_term(t: &Term, n: i64, sign: i32, out: &mut Vec<(usize, i32)>) -> Result<(), ScError> {
    if out.len() > MAX_EXPANDED {
        return Err(ScError::Malformed(format!("relator longer than {MAX_EXPANDED} symbols")));
    }
    match t {
        Term::Symbol(s) => out.push((*s, sign)),
        Term::Seq(ts) => {
            if sign > 0 {
                for t in ts {
                    push_term(t, n, sign, out)?;
                }
            } else {
                for t in ts.iter().rev() {
                    push_term(t, n, sign, out)?;
                }
            }
        }
        Term::Commutator(x, y) => {
            let parts = [(x, 1), (y, 1), (x, -1), (y, -1)];
            let order: Vec<_> = if sign > 0 { parts.to_vec() } else { parts.iter().rev().copied().collect() };
            for (t, s) in order {
                push_term(t, n, s * sign, out)?;
            }
        }
        Term::Power(base, e) => {
            let k = e.at(n);
            let s = if k < 0 { -sign } else { sign };
            for _ in 0..k.unsigned_abs() {
                push_term(base, n, s, out)?;
                if out.len() > MAX_EXPANDED {
                    return Err(ScError::Malformed(format!("relator longer than {MAX_EXPANDED} symbols")));
                }
            }
        }
    }
    Ok(())
}

fn check_symbol(line: &Line, t: &crate::parse::Token) -> Result<(), ParseError> {
    let ok = t.text.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && t.text.chars().all(|c| c.is_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(line.error_at(t, format!("'{}' is not a valid symbol", t.text)))
    }
}

fn parse_factor(line: &Line) -> Result<FactorSpec, ParseError> {
    let t = &line.tokens;
    if t.len() < 4 {
        return Err(line.error(line.end_column(), "expected 'factor NAME KIND SIZE SYMBOLS...'"));
    }
    let size: usize = t[3].text.parse().map_err(|_| line.error_at(&t[3], format!("expected a number, found '{}'", t[3].text)))?;
    let factor = match t[2].text {
        "cyclic" => Factor::Cyclic(u32::try_from(size).map_err(|_| line.error_at(&t[3], "order too large"))?),
        "free-abelian" => Factor::FreeAbelian(size),
        "free" => Factor::Free(size),
        other => return Err(line.error_at(&t[2], format!("unknown factor kind '{other}' (cyclic, free-abelian, free)"))),
    };
    let symbols: Vec<String> = t[4..].iter().map(|s| s.text.to_string()).collect();
    for s in &t[4..] {
        check_symbol(line, s)?;
    }
    if symbols.len() != factor.rank() || symbols.is_empty() {
        return Err(line.error(t[3].column, format!("factor {} needs {} symbol(s), found {}", t[1].text, factor.rank().max(1), symbols.len())));
    }
    Ok(FactorSpec { name: t[1].text.to_string(), factor, symbols })
}

fn parse_param(line: &Line) -> Result<Param, ParseError> {
    let t = &line.tokens;
    if t.len() < 3 || t[2].text != "=" {
        return Err(line.error(t.get(2).map_or(line.end_column(), |x| x.column), "expected 'param NAME = VALUES'"));
    }
    let name = t[1].text.to_string();
    check_symbol(line, &t[1])?;
    let mut values = Vec::new();
    for tok in &t[3..] {
        for part in tok.text.split(',').map(|s| s.trim_matches(|c| c == '{' || c == '}')).filter(|s| !s.is_empty()) {
            let bad = || line.error_at(tok, format!("bad index value '{part}'"));
            if let Some((a, b)) = part.split_once("..") {
                let (a, b): (i64, i64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                values.extend(a..=b);
            } else {
                values.push(part.parse().map_err(|_| bad())?);
            }
        }
    }
    values.sort_unstable();
    values.dedup();
    Ok(Param { name, values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Punct(char),
}

struct TermParser<'a> {
    line: &'a Line<'a>,
    toks: Vec<(Tok, usize, bool)>,
    pos: usize,
    symbols: &'a [String],
    param: Option<&'a str>,
    end: usize,
}

impl<'a> TermParser<'a> {
    fn new(line: &'a Line<'a>, text: &str, col: usize, symbols: &'a [String], param: Option<&'a str>) -> Result<Self, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        let mut spaced = true;
        while i < chars.len() {
            let c = chars[i];
            let column = col + i;
            if c.is_whitespace() {
                spaced = true;
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| line.error(column, "number too large"))?;
                toks.push((Tok::Int(v), column, spaced));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), column, spaced));
            } else if "()[],^+-*".contains(c) {
                toks.push((Tok::Punct(c), column, spaced));
                i += 1;
            } else {
                return Err(line.error(column, format!("unexpected character '{c}'")));
            }
            spaced = false;
        }
        Ok(TermParser { line, toks, pos: 0, symbols, param, end: col + chars.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        self.line.error(self.column(), msg)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn parse_all(mut self) -> Result<Term, ParseError> {
        let t = self.seq()?;
        if self.pos < self.toks.len() {
            return Err(self.err("unexpected token"));
        }
        if matches!(&t, Term::Seq(v) if v.is_empty()) {
            return Err(self.err("empty relator"));
        }
        Ok(t)
    }

    fn seq(&mut self) -> Result<Term, ParseError> {
        let mut items = Vec::new();
        while let Some(tok) = self.peek() {
            if matches!(tok, Tok::Punct(')' | ']' | ',')) {
                break;
            }
            items.push(self.item()?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Term::Seq(items) })
    }

    fn item(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::Punct('^')) {
            self.pos += 1;
            let e = self.exponent()?;
            t = Term::Power(Box::new(t), e);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let t = self.symbol(&name)?;
                self.pos += 1;
                Ok(t)
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Term::Seq(Vec::new()))
            }
            Some(Tok::Punct('(')) => {
                self.pos += 1;
                let t = self.seq()?;
                self.expect(')')?;
                Ok(t)
            }
            Some(Tok::Punct('[')) => {
                self.pos += 1;
                let x = self.seq()?;
                self.expect(',')?;
                let y = self.seq()?;
                self.expect(']')?;
                Ok(Term::Commutator(Box::new(x), Box::new(y)))
            }
            _ => Err(self.err("expected a symbol, '(' or '['")),
        }
    }

    /// A declared symbol, or a run of one-character symbols such as `ab`.
    fn symbol(&self, name: &str) -> Result<Term, ParseError> {
        let find = |s: &str| self.symbols.iter().position(|x| x == s);
        if let Some(i) = find(name) {
            return Ok(Term::Symbol(i));
        }
        let split: Option<Vec<Term>> = name.chars().map(|c| find(&c.to_string()).map(Term::Symbol)).collect();
        split.map(Term::Seq).ok_or_else(|| self.err(format!("unknown symbol '{name}'")))
    }

    /// `^3`, `^-1`, `^n`, `^-2n`, or a parenthesised sum such as `^(2n+1)`.
    fn exponent(&mut self) -> Result<Affine, ParseError> {
        if self.toks.get(self.pos).is_none_or(|t| t.2) {
            return Err(self.err("expected an exponent directly after '^'"));
        }
        if self.peek() == Some(&Tok::Punct('(')) {
            self.pos += 1;
            let mut acc = Affine { coef: 0, constant: 0 };
            let mut sign = if self.eat('-') { -1 } else { 1 };
            loop {
                let a = self.affine_term(true)?;
                acc.coef += sign * a.coef;
                acc.constant += sign * a.constant;
                sign = if self.eat('+') {
                    1
                } else if self.eat('-') {
                    -1
                } else {
                    break;
                };
            }
            self.expect(')')?;
            return Ok(acc);
        }
        let negative = self.eat('-');
        let a = self.affine_term(false)?;
        Ok(if negative { Affine { coef: -a.coef, constant: -a.constant } } else { a })
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(&Tok::Punct(c));
        if hit {
            self.pos += 1;
        }
        hit
    }

    /// `k`, `n`, `kn` or `k*n`. Outside parentheses the parts must touch, so
    /// `a^2 b` reads as `a^2` followed by `b`.
    fn affine_term(&mut self, spaces: bool) -> Result<Affine, ParseError> {
        let param = self.param;
        let is_param = |t: Option<&(Tok, usize, bool)>| match t {
            Some((Tok::Ident(name), _, spaced)) => Some(name.as_str()) == param && (spaces || !spaced),
            _ => false,
        };
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Int(k), ..)) => {
                self.pos += 1;
                if self.eat('*') {
                    if !is_param(self.toks.get(self.pos)) {
                        return Err(self.err("expected the parameter after '*'"));
                    }
                } else if !is_param(self.toks.get(self.pos)) {
                    return Ok(Affine { coef: 0, constant: k });
                }
                self.pos += 1;
                Ok(Affine { coef: k, constant: 0 })
            }
            Some((Tok::Ident(name), ..)) => {
                if !is_param(self.toks.get(self.pos)) {
                    return Err(self.err(format!("unknown exponent '{name}'")));
                }
                self.pos += 1;
                Ok(Affine { coef: 1, constant: 0 })
            }
            _ => Err(self.err("expected an exponent")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(text: &str) -> Vec<Vec<i32>> {
        match Presentation::parse(text).unwrap().expand().unwrap().relators {
            Relators::Free(rs) => rs,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn expand_examples() {
        let rs = free("generators a b\nparam n = 1..2\nrelator (a^n b^n)^5");
        assert_eq!(rs.iter().map(Vec::len).collect::<Vec<_>>(), vec![10, 20]);
        assert_eq!(&rs[0][..4], &[1, 2, 1, 2]);

        let rs = free("generators a b c d\nparam n = 1\nrelator [(ab)^n,(cd)^n]^5");
        assert_eq!(rs[0].len(), 40);
        assert_eq!(&rs[0][..8], &[1, 2, 3, 4, -2, -1, -4, -3]);

        let p = Presentation::parse("generators a\nparam n = \nrelator a^n").unwrap();
        assert_eq!(p.expand(), Err(ScError::EmptyIndexSet));
        let p = Presentation::parse("generators a b\nparam n = 0 1\nrelator a^n").unwrap();
        assert!(matches!(p.expand(), Err(ScError::TrivialAfterSubstitution(_))));
    }

    #[test]
    fn exponents() {
        assert_eq!(free("generators a b\nparam n = 2\nrelator a^(2n+1) b^-n")[0], vec![1, 1, 1, 1, 1, -2, -2]);
        assert_eq!(free("generators a b\nparam n = 1\nrelator a^2n b^(n - 1) b")[0], vec![1, 1, 2]);
        assert_eq!(free("generators a b\nrelator (a b^-1)^-2")[0], vec![2, -1, 2, -1]);
        assert!(Presentation::parse("generators a b\nrelator a^m").is_err());
        let e = Presentation::parse("generators a b\nrelator a $").unwrap_err();
        assert_eq!((e.line, e.column), (2, 11));
    }

    #[test]
    fn free_product_consolidation() {
        let text = "factor F1 free-abelian 2 a b\nfactor F2 free-abelian 2 c d\nparam n = 1..2\nrelator (a^n b^n c^n d^n)^5";
        let p = Presentation::parse(text).unwrap();
        let Relators::Product(rs) = p.expand().unwrap().relators else { panic!() };
        assert_eq!(rs[0].len(), 10);
        assert_eq!(rs[1][0].element, super::super::Element::Vector(vec![2, 2]));
        assert_eq!(rs[1][1].factor, 1);

        let p = Presentation::parse("factor A cyclic 5 a\nfactor B cyclic 0 b\nrelator a^3 b a^2 b^-1 a").unwrap();
        let Relators::Product(rs) = p.expand().unwrap().relators else { panic!() };
        assert_eq!(rs[0].len(), 5);
        // a^5 vanishes in Z/5, after which b b^-1 cancels as well.
        let p = Presentation::parse("factor A cyclic 5 a\nfactor B cyclic 0 b\nrelator a^3 b a^5 b^-1 a^2").unwrap();
        assert!(matches!(p.expand(), Err(ScError::TrivialAfterSubstitution(_))));
        let p = Presentation::parse("factor A cyclic 5 a\nfactor B cyclic 0 b\nrelator c").unwrap_err();
        assert_eq!(p.line, 3);
    }
}
