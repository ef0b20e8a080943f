//! Graded polynomial algebras over GF(2) with generators of arbitrary
//! positive degree.
//!
//! A polynomial is a finite set of monomials: over GF(2) the coefficient of
//! a monomial is its presence. All polynomials handled here are homogeneous
//! for the weighted grading; the zero polynomial carries no degree and is
//! compatible with every degree. Term lists are kept sorted in graded
//! lexicographic order (within one degree: lexicographically largest
//! exponent vector first), which makes every derived basis and matrix
//! bit-reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::Result;

/// An ordered list of named generators with positive degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    gens: Vec<(String, u32)>,
}

pub type Ring = Arc<RingDescriptor>;

impl RingDescriptor {
    pub fn new(gens: Vec<(String, u32)>) -> Result<Ring> {
        for (name, deg) in &gens {
            if *deg == 0 {
                return Err(Error::InvalidRing(format!(
                    "generator {name} has degree 0; generators must have positive degree"
                )));
            }
            if name.is_empty() || !name.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::InvalidRing(format!("bad generator name {name:?}")));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if gens[i].0 == gens[j].0 {
                    return Err(Error::InvalidRing(format!(
                        "duplicate generator name {}",
                        gens[i].0
                    )));
                }
            }
        }
        Ok(Arc::new(RingDescriptor { gens }))
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_name(&self, j: usize) -> &str {
        &self.gens[j].0
    }

    pub fn gen_degree(&self, j: usize) -> u32 {
        self.gens[j].1
    }

    pub fn gens(&self) -> &[(String, u32)] {
        &self.gens
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|(n, _)| n == name)
    }

    pub fn max_gen_degree(&self) -> u32 {
        self.gens.iter().map(|(_, d)| *d).max().unwrap_or(0)
    }

    pub fn total_gen_degree(&self) -> u32 {
        self.gens.iter().map(|(_, d)| *d).sum()
    }
}

/// The mod-2 cohomology ring of a rank-`n` elementary abelian 2-group:
/// `F2[t1, .., tn]` with every generator in degree 1. Rank 0 gives the
/// field itself (no generators).
pub fn cohomology_ring(n: u32) -> Ring {
    let gens = (1..=n).map(|i| (format!("t{i}"), 1)).collect();
    RingDescriptor::new(gens).expect("cohomology ring descriptor is always valid")
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector, one entry per ring generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(num_gens: usize) -> Self {
        Monomial {
            exps: vec![0; num_gens],
        }
    }

    pub fn var(num_gens: usize, j: usize) -> Self {
        let mut exps = vec![0; num_gens];
        exps[j] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self, ring: &RingDescriptor) -> u32 {
        self.exps
            .iter()
            .zip(ring.gens())
            .map(|(e, (_, d))| e * d)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    pub fn render(&self, ring: &RingDescriptor) -> String {
        let factors: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(j, e)| {
                if *e == 1 {
                    ring.gen_name(j).to_string()
                } else {
                    format!("{}^{}", ring.gen_name(j), e)
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

/// Term order used everywhere: within a fixed degree, larger exponent
/// vectors (plain lexicographic) come first.
fn term_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    b.exps.cmp(&a.exps)
}

/// A homogeneous polynomial over GF(2): a canonical sorted set of monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![Monomial::one(ring.num_gens())],
        }
    }

    pub fn var(ring: &Ring, j: usize) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![Monomial::var(ring.num_gens(), j)],
        }
    }

    /// Build from a list of monomials, cancelling duplicates mod 2 and
    /// rejecting inhomogeneous input.
    pub fn from_monomials(ring: &Ring, monomials: Vec<Monomial>) -> Result<Self> {
        let mut terms = monomials;
        for m in &terms {
            if m.exps.len() != ring.num_gens() {
                return Err(Error::InvalidRing(
                    "monomial exponent count does not match ring".into(),
                ));
            }
        }
        cancel_pairs(&mut terms);
        if let Some(first) = terms.first() {
            let d = first.degree(ring);
            for m in &terms[1..] {
                if m.degree(ring) != d {
                    return Err(Error::DegreeMismatch(format!(
                        "inhomogeneous term set: degree {} vs {}",
                        d,
                        m.degree(ring)
                    )));
                }
            }
        }
        Ok(Polynomial {
            ring: Arc::clone(ring),
            terms,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial has none.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|m| m.degree(&self.ring))
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch("add over different rings".into()));
        }
        match (self.degree(), other.degree()) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::DegreeMismatch(format!(
                    "cannot add degree {a} to degree {b}"
                )))
            }
            _ => {}
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        cancel_pairs(&mut terms);
        Ok(Polynomial {
            ring: Arc::clone(&self.ring),
            terms,
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch("mul over different rings".into()));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.mul(b));
            }
        }
        cancel_pairs(&mut terms);
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    /// Frobenius: in characteristic 2, squaring squares each monomial.
    pub fn square(&self) -> Polynomial {
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|m| m.pow(2)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        if k == 0 {
            return Polynomial::one(&self.ring);
        }
        let mut base = self.clone();
        let mut acc: Option<Polynomial> = None;
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul_unchecked(&base),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.square();
        }
        acc.unwrap()
    }

    /// Multiply by a single variable (used heavily by module expansion).
    pub fn mul_var(&self, j: usize) -> Polynomial {
        let v = Monomial::var(self.ring.num_gens(), j);
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|m| m.mul(&v)).collect(),
        }
    }
}

fn cancel_pairs(terms: &mut Vec<Monomial>) {
    terms.sort_unstable_by(term_cmp);
    let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
    for m in terms.drain(..) {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    *terms = out;
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self.terms.iter().map(|m| m.render(&self.ring)).collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A degree-preserving algebra morphism given on generators.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    source: Ring,
    target: Ring,
    images: Vec<Polynomial>,
}

impl AlgebraMap {
    pub fn new(source: &Ring, target: &Ring, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.num_gens() {
            return Err(Error::InvalidMap(format!(
                "expected {} images, got {}",
                source.num_gens(),
                images.len()
            )));
        }
        for (j, img) in images.iter().enumerate() {
            if !same_ring(img.ring(), target) {
                return Err(Error::InvalidMap(format!(
                    "image of {} lives in the wrong ring",
                    source.gen_name(j)
                )));
            }
            if let Some(d) = img.degree() {
                if d != source.gen_degree(j) {
                    return Err(Error::InvalidMap(format!(
                        "image of {} has degree {} instead of {}",
                        source.gen_name(j),
                        d,
                        source.gen_degree(j)
                    )));
                }
            }
        }
        Ok(AlgebraMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        })
    }

    pub fn identity(ring: &Ring) -> Self {
        let images = (0..ring.num_gens())
            .map(|j| Polynomial::var(ring, j))
            .collect();
        AlgebraMap {
            source: Arc::clone(ring),
            target: Arc::clone(ring),
            images,
        }
    }

    /// Inclusion along matching generator names (e.g. `F2[t1..tm]` into
    /// `F2[t1..tn]`, m <= n).
    pub fn inclusion(source: &Ring, target: &Ring) -> Result<Self> {
        let mut images = Vec::with_capacity(source.num_gens());
        for (name, deg) in source.gens() {
            match target.index_of(name) {
                Some(j) if target.gen_degree(j) == *deg => images.push(Polynomial::var(target, j)),
                _ => {
                    return Err(Error::InvalidMap(format!(
                        "no degree-{deg} generator {name} in target"
                    )))
                }
            }
        }
        AlgebraMap::new(source, target, images)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_ring(p.ring(), &self.source) {
            return Err(Error::RingMismatch(
                "polynomial not in the source ring of the map".into(),
            ));
        }
        let mut acc = Polynomial::zero(&self.target);
        for m in p.terms() {
            let mut prod = Polynomial::one(&self.target);
            for (j, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if self.images[j].is_zero() {
                    prod = Polynomial::zero(&self.target);
                    break;
                }
                prod = prod.mul_unchecked(&self.images[j].pow(e));
            }
            // accumulate with plain XOR of term sets
            let mut terms = acc.terms;
            terms.extend(prod.terms);
            cancel_pairs(&mut terms);
            acc = Polynomial {
                ring: Arc::clone(&self.target),
                terms,
            };
        }
        Ok(acc)
    }

    /// Composition: apply `self`, then `next`.
    pub fn then(&self, next: &AlgebraMap) -> Result<AlgebraMap> {
        if !same_ring(&self.target, &next.source) {
            return Err(Error::RingMismatch("maps do not compose".into()));
        }
        let images = self
            .images
            .iter()
            .map(|img| next.apply(img))
            .collect::<Result<Vec<_>>>()?;
        AlgebraMap::new(&self.source, &next.target, images)
    }
}

/// All monomials of weighted degree exactly `d`, in the canonical order
/// (exponent of the first generator descending, then recursively).
pub fn monomial_basis(ring: &Ring, d: u32) -> Vec<Monomial> {
    let n = ring.num_gens();
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn fill(
        ring: &RingDescriptor,
        j: usize,
        remaining: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if j == ring.num_gens() {
            if remaining == 0 {
                out.push(Monomial::from_exps(current.clone()));
            }
            return;
        }
        let dj = ring.gen_degree(j);
        let max = remaining / dj;
        for e in (0..=max).rev() {
            current[j] = e;
            fill(ring, j + 1, remaining - e * dj, current, out);
        }
        current[j] = 0;
    }
    fill(ring, 0, d, &mut current, &mut out);
    out
}

/// The `2^n - 1` nonzero GF(2)-linear combinations of `t1..tn`, ordered by
/// the binary mask whose bit `j` selects `t_{j+1}`.
pub fn nonzero_linear_forms(n: u32) -> Vec<Polynomial> {
    let ring = cohomology_ring(n);
    let mut out = Vec::with_capacity((1usize << n) - 1);
    for mask in 1u64..(1u64 << n) {
        let monomials = (0..n as usize)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| Monomial::var(n as usize, j))
            .collect();
        out.push(Polynomial::from_monomials(&ring, monomials).unwrap());
    }
    out
}

// ---------------------------------------------------------------------------
// text syntax: `t1^2*t2 + t1*t2^2`, `1`, `0`
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Int(u32),
    Caret,
    Star,
    Plus,
    LParen,
    RParen,
}

pub fn tokenize(input: &str) -> std::result::Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v = s.parse::<u32>().map_err(|_| format!("bad integer {s}"))?;
                out.push(Token::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

/// Parse a homogeneous polynomial in the text syntax over the given ring.
pub fn parse_polynomial(ring: &Ring, input: &str) -> Result<Polynomial> {
    let tokens = tokenize(input).map_err(|msg| Error::Parse { line: 0, msg })?;
    let mut parser = PolyParser {
        ring,
        tokens: &tokens,
        pos: 0,
    };
    let p = parser.parse_poly()?;
    if parser.pos != tokens.len() {
        return Err(Error::Parse {
            line: 0,
            msg: "trailing input after polynomial".into(),
        });
    }
    Ok(p)
}

struct PolyParser<'a> {
    ring: &'a Ring,
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn parse_poly(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_term()?;
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            let t = self.parse_term()?;
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let f = self.parse_factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Token::Int(0)) => {
                self.pos += 1;
                Ok(Polynomial::zero(self.ring))
            }
            Some(Token::Int(1)) => {
                self.pos += 1;
                Ok(Polynomial::one(self.ring))
            }
            Some(Token::Int(v)) => Err(Error::Parse {
                line: 0,
                msg: format!("coefficient {v} is not a GF(2) value"),
            }),
            Some(Token::LParen) => {
                self.pos += 1;
                let p = self.parse_poly()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(Error::Parse {
                        line: 0,
                        msg: "missing closing parenthesis".into(),
                    });
                }
                self.pos += 1;
                Ok(p)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let j = self.ring.index_of(&name).ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("unknown generator {name}"),
                })?;
                let mut exp = 1;
                if self.peek() == Some(&Token::Caret) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Token::Int(e)) => {
                            self.pos += 1;
                            exp = e;
                        }
                        _ => {
                            return Err(Error::Parse {
                                line: 0,
                                msg: "expected integer exponent after ^".into(),
                            })
                        }
                    }
                }
                Ok(Polynomial::var(self.ring, j).pow(exp))
            }
            other => Err(Error::Parse {
                line: 0,
                msg: format!("expected a factor, found {other:?}"),
            }),
        }
    }
}
