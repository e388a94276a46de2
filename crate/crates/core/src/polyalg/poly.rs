use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{parse_rational, Rational, Scalar};

use super::PolyError;

/// Ordered variable names; position 0 has the highest lex precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(PolyError::BadVariableName(n.to_string()));
            }
            if index.insert(n.to_string(), i).is_some() {
                return Err(PolyError::DuplicateVariable(n.to_string()));
            }
        }
        Ok(VarTable {
            names: names.iter().map(|n| n.as_ref().to_string()).collect(),
            index,
        })
    }

    /// Parse a comma-separated list such as `a,b,c`.
    pub fn parse_list(s: &str) -> Result<Self, PolyError> {
        let names: Vec<&str> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect();
        Self::new(&names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly, PolyError> {
        let i = self
            .position(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(MultiPoly::variable(self.len(), i))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector, one entry per variable. The derived `Ord` compares
/// exponents from the leftmost variable, which is exactly lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when only variables at positions `>= first` occur.
    pub fn only_uses_suffix(&self, first: usize) -> bool {
        self.0[..first].iter().all(|&e| e == 0)
    }

    fn to_text(&self, vars: &VarTable) -> String {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars.names[i].clone()
                } else {
                    format!("{}^{}", vars.names[i], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Lex comparison; errors when the monomials come from different tables.
pub fn lex_compare(m1: &Monomial, m2: &Monomial) -> Result<Ordering, PolyError> {
    if m1.nvars() != m2.nvars() {
        return Err(PolyError::VarTableMismatch {
            left: m1.nvars(),
            right: m2.nvars(),
        });
    }
    Ok(m1.cmp(m2))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub mono: Monomial,
}

/// Polynomial over ℚ with terms sorted strictly descending in lex order and
/// no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<Term>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(
            nvars,
            vec![Term {
                coeff: c,
                mono: Monomial::one(nvars),
            }],
        )
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(
            nvars,
            vec![Term {
                coeff: Rational::one(),
                mono: Monomial(e),
            }],
        )
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms(nvars: usize, terms: Vec<Term>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for t in terms {
            assert_eq!(t.mono.nvars(), nvars, "monomial width");
            *acc.entry(t.mono).or_insert_with(Rational::zero) += t.coeff;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: BTreeMap<Monomial, Rational>) -> Self {
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.mono.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// `c·m·self`
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        // multiplying by a monomial preserves the order
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable table width");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Rational| if negate { -c.clone() } else { c.clone() };
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.mono.cmp(&b.mono),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let t = &other.terms[j];
                    out.push(Term {
                        coeff: sign(&t.coeff),
                        mono: t.mono.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].coeff + sign(&other.terms[j].coeff);
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            mono: self.terms[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable table width");
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                *acc.entry(a.mono.mul(&b.mono))
                    .or_insert_with(Rational::zero) += &a.coeff * &b.coeff;
            }
        }
        Self::from_map(self.nvars, acc)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// True when every term only involves variables at positions `>= first`.
    pub fn only_uses_suffix(&self, first: usize) -> bool {
        self.terms.iter().all(|t| t.mono.only_uses_suffix(first))
    }

    /// Evaluate at a point of any scalar domain, mapping coefficients with
    /// `coeff`. `None` when a coefficient has no image (e.g. p divides a
    /// denominator).
    pub fn eval_in<T: Scalar>(
        &self,
        point: &[T],
        coeff: impl Fn(&Rational) -> Option<T>,
    ) -> Option<T> {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let mut acc = T::zero();
        for t in &self.terms {
            let mut v = coeff(&t.coeff)?;
            for (x, &e) in point.iter().zip(t.mono.exponents()) {
                v = v * x.pow(e);
            }
            acc = acc + v;
        }
        Some(acc)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.eval_in(point, |c| Some(c.clone()))
            .expect("rational coefficients")
    }

    /// Replace variable `i` by the constant `value`.
    pub fn substitute(&self, i: usize, value: &Rational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut e = t.mono.0.clone();
                let k = std::mem::replace(&mut e[i], 0);
                Term {
                    coeff: &t.coeff * Scalar::pow(value, k),
                    mono: Monomial(e),
                }
            })
            .collect();
        Self::from_terms(self.nvars, terms)
    }

    /// Render in the text format `c*x^e*y^f + ...`, highest term first.
    pub fn to_text(&self, vars: &VarTable) -> String {
        assert_eq!(vars.len(), self.nvars, "variable table width");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for t in &self.terms {
            let s = t.coeff.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let m = t.mono.to_text(vars);
            match (m.is_empty(), mag == "1") {
                (true, _) => out.push_str(&mag),
                (false, true) => out.push_str(&m),
                (false, false) => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(&m);
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> impl fmt::Display + 'a {
        struct D<'a>(&'a MultiPoly, &'a VarTable);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.to_text(self.1))
            }
        }
        D(self, vars)
    }
}

/// Parse `c*x^e*y^f + ...`. Coefficients may be integers or `p/q`.
/// Whitespace is ignored; errors carry the byte offset.
pub fn parse_poly(s: &str, vars: &VarTable) -> Result<MultiPoly, PolyError> {
    Parser {
        src: s,
        pos: 0,
        vars,
    }
    .parse()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a VarTable,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            input: self.src.to_string(),
            position: self.pos,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn parse(mut self) -> Result<MultiPoly, PolyError> {
        let n = self.vars.len();
        let mut terms = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = Rational::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                Some(_) if first => {}
                Some(c) => return Err(self.err(format!("expected '+' or '-', found {c:?}"))),
                None => break,
            }
            first = false;
            let (c, m) = self.term()?;
            terms.push(Term {
                coeff: sign * c,
                mono: m,
            });
        }
        Ok(MultiPoly::from_terms(n, terms))
    }

    fn term(&mut self) -> Result<(Rational, Monomial), PolyError> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.vars.len()];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    let num = self.take_while(|c| c.is_ascii_digit()).to_string();
                    self.skip_ws();
                    let text = if self.peek() == Some('/') {
                        self.pos += 1;
                        self.skip_ws();
                        let den = self.take_while(|c| c.is_ascii_digit()).to_string();
                        if den.is_empty() {
                            return Err(self.err("expected denominator after '/'"));
                        }
                        format!("{num}/{den}")
                    } else {
                        num
                    };
                    let q = parse_rational(&text).map_err(|e| {
                        self.pos = start;
                        self.err(e.reason)
                    })?;
                    coeff *= q;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    let name = self
                        .take_while(|c| c.is_ascii_alphanumeric() || c == '_')
                        .to_string();
                    let Some(i) = self.vars.position(&name) else {
                        self.pos = start;
                        return Err(self.err(format!("unknown variable {name:?}")));
                    };
                    self.skip_ws();
                    let mut e = 1;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        let digits = self.take_while(|c| c.is_ascii_digit());
                        e = digits
                            .parse::<u32>()
                            .map_err(|_| self.err("expected a non-negative exponent"))?;
                    }
                    exps[i] += e;
                }
                Some(c) => return Err(self.err(format!("unexpected character {c:?}"))),
                None => return Err(self.err("unexpected end of input")),
            }
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, Monomial(exps)))
    }
}
