//! Multigraded polynomial algebras over GF(2) with exponent caps.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::gf2::{BitVector, Echelon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("variable {name:?} has invalid degree {degree}")]
    BadDegree { name: String, degree: BiDegree },
    #[error("variable {0:?} has cap 0")]
    ZeroCap(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("monomial has {got} exponents but the algebra has {expected} variables")]
    MixedAmbient { expected: usize, got: usize },
    #[error("monomial {0} exceeds an exponent cap")]
    CapExceeded(String),
    #[error("polynomial {0} is not homogeneous")]
    Inhomogeneous(String),
    #[error("relation {0} is not homogeneous")]
    InhomogeneousRelation(String),
}

/// Internal bidegree `(a, b)`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct BiDegree {
    pub a: i32,
    pub b: i32,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { a: 0, b: 0 };

    pub const fn new(a: i32, b: i32) -> Self {
        BiDegree { a, b }
    }

    pub fn total(self) -> i32 {
        self.a + self.b
    }

    pub fn is_pure(self) -> bool {
        self.a == self.b
    }

    pub fn is_nonnegative(self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    /// Componentwise `self ≤ other`.
    pub fn le(self, other: BiDegree) -> bool {
        self.a <= other.a && self.b <= other.b
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.a + o.a, self.b + o.b)
    }
}

impl AddAssign for BiDegree {
    fn add_assign(&mut self, o: BiDegree) {
        *self = *self + o;
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.a, -self.b)
    }
}

impl Mul<i32> for BiDegree {
    type Output = BiDegree;
    fn mul(self, k: i32) -> BiDegree {
        BiDegree::new(self.a * k, self.b * k)
    }
}

/// A degree selector: a single bidegree or a whole total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Bi(BiDegree),
    Total(i32),
}

impl From<BiDegree> for Degree {
    fn from(d: BiDegree) -> Self {
        Degree::Bi(d)
    }
}

impl From<i32> for Degree {
    fn from(t: i32) -> Self {
        Degree::Total(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedVariable {
    pub name: String,
    pub degree: BiDegree,
    pub cap: Option<u32>,
}

impl GradedVariable {
    pub fn new(name: impl Into<String>, degree: BiDegree) -> Self {
        GradedVariable { name: name.into(), degree, cap: None }
    }

    pub fn capped(name: impl Into<String>, degree: BiDegree, cap: u32) -> Self {
        GradedVariable { name: name.into(), degree, cap: Some(cap) }
    }
}

/// Exponent vector in declaration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize, exp: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = exp;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.0[i] = e;
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Exponent-wise sum, ignoring caps.
    pub fn times(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    /// Splits into the first `k` exponents and the rest.
    pub fn split_at(&self, k: usize) -> (Monomial, Monomial) {
        (Monomial::from_exponents(&self.0[..k]), Monomial::from_exponents(&self.0[k..]))
    }

    fn scaled(&self, k: u16) -> Monomial {
        Monomial(self.0.iter().map(|&e| e * k).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A finite set of monomials; coefficients are implicitly 1.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeSet<Monomial>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Monomial::one(nvars))
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Poly { terms }
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Poly::zero();
        for m in ms {
            p.toggle(m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds a monomial over GF(2): inserting an existing term cancels it.
    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn plus(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = Monomial> {
        self.terms.into_iter()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(Monomial::is_one)
    }
}

impl FromIterator<Monomial> for Poly {
    fn from_iter<T: IntoIterator<Item = Monomial>>(iter: T) -> Self {
        Poly::from_monomials(iter)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.terms.iter()).finish()
    }
}

/// A commutative polynomial algebra over GF(2) on graded, optionally capped variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyAlgebra {
    vars: Vec<GradedVariable>,
    index: HashMap<String, usize>,
}

impl PolyAlgebra {
    /// Variables must have unique names and nonnegative bidegrees of positive total degree.
    pub fn new(vars: Vec<GradedVariable>) -> Result<Self, AlgebraError> {
        let mut index = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if !v.degree.is_nonnegative() || v.degree.total() <= 0 {
                return Err(AlgebraError::BadDegree { name: v.name.clone(), degree: v.degree });
            }
            if v.cap == Some(0) {
                return Err(AlgebraError::ZeroCap(v.name.clone()));
            }
            if index.insert(v.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(PolyAlgebra { vars, index })
    }

    /// The ground field, with no variables.
    pub fn ground() -> Self {
        PolyAlgebra { vars: Vec::new(), index: HashMap::new() }
    }

    /// Variables of `self` followed by those of `other`.
    pub fn tensor(&self, other: &PolyAlgebra) -> Result<Self, AlgebraError> {
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        PolyAlgebra::new(vars)
    }

    /// Two copies of `self`, right copy renamed with a trailing `'`.
    pub fn doubled(&self) -> Self {
        let mut vars = self.vars.clone();
        vars.extend(self.vars.iter().map(|v| GradedVariable {
            name: format!("{}'", v.name),
            ..v.clone()
        }));
        PolyAlgebra::new(vars).expect("primed names are fresh")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn variable(&self, i: usize) -> &GradedVariable {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index.get(name).copied().ok_or_else(|| AlgebraError::UnknownVariable(name.into()))
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars())
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn var_poly(&self, i: usize) -> Poly {
        Poly::monomial(Monomial::var(self.nvars(), i, 1))
    }

    pub fn gen(&self, name: &str) -> Result<Poly, AlgebraError> {
        Ok(self.var_poly(self.var_index(name)?))
    }

    /// Builds a monomial from `(name, exponent)` pairs.
    pub fn monomial_of(&self, pairs: &[(&str, u16)]) -> Result<Monomial, AlgebraError> {
        let mut m = self.one_monomial();
        for &(name, e) in pairs {
            let i = self.var_index(name)?;
            m.set_exp(i, m.exp(i) + e);
        }
        self.check_monomial(&m)?;
        Ok(m)
    }

    pub fn monomial_pairs(&self, m: &Monomial) -> Vec<(String, u16)> {
        m.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (self.vars[i].name.clone(), e))
            .collect()
    }

    pub fn respects_caps(&self, m: &Monomial) -> bool {
        self.vars.iter().zip(m.exponents()).all(|(v, &e)| v.cap.is_none_or(|c| e as u32 <= c))
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<(), AlgebraError> {
        if m.arity() != self.nvars() {
            return Err(AlgebraError::MixedAmbient { expected: self.nvars(), got: m.arity() });
        }
        if !self.respects_caps(m) {
            return Err(AlgebraError::CapExceeded(self.format_monomial(m)));
        }
        Ok(())
    }

    pub fn check_poly(&self, p: &Poly) -> Result<(), AlgebraError> {
        p.terms().try_for_each(|m| self.check_monomial(m))
    }

    pub fn degree_of(&self, m: &Monomial) -> BiDegree {
        self.vars
            .iter()
            .zip(m.exponents())
            .fold(BiDegree::ZERO, |acc, (v, &e)| acc + v.degree * e as i32)
    }

    /// The common bidegree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self, p: &Poly) -> Option<BiDegree> {
        let mut it = p.terms().map(|m| self.degree_of(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, p: &Poly) -> bool {
        p.is_zero() || self.homogeneous_degree(p).is_some()
    }

    pub fn is_total_homogeneous(&self, p: &Poly) -> bool {
        let mut it = p.terms().map(|m| self.degree_of(m).total());
        match it.next() {
            None => true,
            Some(t) => it.all(|u| u == t),
        }
    }

    /// Product of monomials, or `None` when a cap is exceeded.
    pub fn mul_monomials(&self, m: &Monomial, n: &Monomial) -> Option<Monomial> {
        let p = m.times(n);
        self.respects_caps(&p).then_some(p)
    }

    pub fn multiply(&self, p: &Poly, q: &Poly) -> Result<Poly, AlgebraError> {
        self.check_poly(p)?;
        self.check_poly(q)?;
        Ok(self.mul(p, q))
    }

    /// Unchecked product; callers guarantee both factors live in `self`.
    pub fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::zero();
        for m in p.terms() {
            for n in q.terms() {
                if let Some(t) = self.mul_monomials(m, n) {
                    out.toggle(t);
                }
            }
        }
        out
    }

    pub fn mul_monomial(&self, p: &Poly, m: &Monomial) -> Poly {
        p.terms().filter_map(|n| self.mul_monomials(n, m)).collect()
    }

    /// Frobenius: squaring is additive in characteristic 2.
    pub fn square(&self, p: &Poly) -> Poly {
        p.terms().map(|m| m.scaled(2)).filter(|m| self.respects_caps(m)).collect()
    }

    pub fn pow(&self, p: &Poly, e: u32) -> Poly {
        let mut result = self.one();
        let mut base = p.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        result
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// Applies the algebra homomorphism sending variable `i` to `images[i]` in `target`.
    pub fn map_hom(&self, p: &Poly, images: &[Poly], target: &PolyAlgebra) -> Poly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let mut out = Poly::zero();
        for m in p.terms() {
            let mut t = target.one();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = target.mul(&t, &target.pow(&images[i], e as u32));
                }
            }
            out.add_assign(&t);
        }
        out
    }

    /// All cap-respecting monomials of the given degree, graded-lex descending
    /// (higher exponents of earlier variables first).
    pub fn monomial_basis(&self, deg: impl Into<Degree>) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = self.one_monomial();
        match deg.into() {
            Degree::Bi(d) => {
                if d.is_nonnegative() {
                    self.enumerate_bi(0, d, &mut cur, &mut out);
                }
            }
            Degree::Total(t) => {
                if t >= 0 {
                    self.enumerate_total(0, t, &mut cur, &mut out);
                }
            }
        }
        out
    }

    fn enumerate_bi(&self, i: usize, rem: BiDegree, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.vars.len() {
            if rem == BiDegree::ZERO {
                out.push(cur.clone());
            }
            return;
        }
        let v = &self.vars[i];
        let d = v.degree;
        let mut max = rem.total() / d.total();
        if d.a > 0 {
            max = max.min(rem.a / d.a);
        }
        if d.b > 0 {
            max = max.min(rem.b / d.b);
        }
        if let Some(c) = v.cap {
            max = max.min(c as i32);
        }
        for e in (0..=max).rev() {
            cur.set_exp(i, e as u16);
            self.enumerate_bi(i + 1, rem - d * e, cur, out);
        }
        cur.set_exp(i, 0);
    }

    fn enumerate_total(&self, i: usize, rem: i32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.vars.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let v = &self.vars[i];
        let t = v.degree.total();
        let mut max = rem / t;
        if let Some(c) = v.cap {
            max = max.min(c as i32);
        }
        for e in (0..=max).rev() {
            cur.set_exp(i, e as u16);
            self.enumerate_total(i + 1, rem - t * e, cur, out);
        }
        cur.set_exp(i, 0);
    }

    /// Bidegrees `(a, t - a)` that can hold monomials of total degree `t`.
    pub fn bidegrees_of_total(&self, t: i32) -> Vec<BiDegree> {
        (0..=t.max(-1)).map(|a| BiDegree::new(a, t - a)).collect()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = self.vars.get(i).map_or_else(|| format!("v{i}"), |v| v.name.clone());
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Human-readable form, terms in graded-lex descending order.
    pub fn format_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<&Monomial> = p.terms().collect();
        terms.sort_by(|x, y| self.grlex_cmp(y, x));
        terms.iter().map(|m| self.format_monomial(m)).collect::<Vec<_>>().join(" + ")
    }

    pub fn grlex_cmp(&self, x: &Monomial, y: &Monomial) -> Ordering {
        self.degree_of(x).total().cmp(&self.degree_of(y).total()).then_with(|| x.cmp(y))
    }

    /// Sorted `(variable, exponent)` lists, one per monomial.
    pub fn poly_to_pairs(&self, p: &Poly) -> Vec<Vec<(String, u16)>> {
        p.terms().map(|m| self.monomial_pairs(m)).collect()
    }
}

/// Index of monomials spanning one graded piece.
#[derive(Clone, Debug, Default)]
pub struct DegreeBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        DegreeBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p`; `None` if some term lies outside this piece.
    pub fn vector(&self, p: &Poly) -> Option<BitVector> {
        let mut v = BitVector::zeros(self.len());
        for m in p.terms() {
            v.flip(self.position(m)?);
        }
        Some(v)
    }

    pub fn poly(&self, v: &BitVector) -> Poly {
        v.ones().map(|i| self.monomials[i].clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GradingMode {
    BiDegree,
    Total,
}

/// A quotient of a polynomial algebra by homogeneous relations.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    algebra: PolyAlgebra,
    relations: Vec<Poly>,
    mode: GradingMode,
}

impl PresentedAlgebra {
    pub fn new(
        algebra: PolyAlgebra,
        relations: Vec<Poly>,
        mode: GradingMode,
    ) -> Result<Self, AlgebraError> {
        for r in &relations {
            algebra.check_poly(r)?;
            let ok = match mode {
                GradingMode::BiDegree => algebra.is_homogeneous(r),
                GradingMode::Total => algebra.is_total_homogeneous(r),
            };
            if !ok {
                return Err(AlgebraError::InhomogeneousRelation(algebra.format_poly(r)));
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(PresentedAlgebra { algebra, relations, mode })
    }

    pub fn free(algebra: PolyAlgebra) -> Self {
        PresentedAlgebra { algebra, relations: Vec::new(), mode: GradingMode::BiDegree }
    }

    pub fn algebra(&self) -> &PolyAlgebra {
        &self.algebra
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn mode(&self) -> GradingMode {
        self.mode
    }

    pub fn with_relation(&self, r: Poly) -> Result<Self, AlgebraError> {
        let mut rels = self.relations.clone();
        rels.push(r);
        PresentedAlgebra::new(self.algebra.clone(), rels, self.mode)
    }

    /// `|basis| − rank(span of monomial multiples of the relations)`.
    ///
    /// A presentation graded only by total degree cannot answer bidegree queries.
    pub fn graded_dim(&self, deg: impl Into<Degree>) -> Result<usize, AlgebraError> {
        match (deg.into(), self.mode) {
            (Degree::Total(t), GradingMode::BiDegree) => Ok(self
                .algebra
                .bidegrees_of_total(t)
                .into_iter()
                .map(|d| self.piece_dim(d.into()))
                .sum()),
            (Degree::Bi(d), GradingMode::Total) => {
                Err(AlgebraError::InhomogeneousRelation(format!("bidegree query {d} on a total-degree presentation")))
            }
            (deg, _) => Ok(self.piece_dim(deg)),
        }
    }

    fn piece_dim(&self, deg: Degree) -> usize {
        let basis = DegreeBasis::new(self.algebra.monomial_basis(deg));
        if basis.is_empty() {
            return 0;
        }
        let mut span = Echelon::new(basis.len());
        for r in &self.relations {
            let Some(rd) = self.algebra.homogeneous_degree(r).or_else(|| {
                r.terms().next().map(|m| self.algebra.degree_of(m))
            }) else {
                continue;
            };
            let cofactor_deg = match deg {
                Degree::Bi(d) => Degree::Bi(d - rd),
                Degree::Total(t) => Degree::Total(t - rd.total()),
            };
            for m in self.algebra.monomial_basis(cofactor_deg) {
                let prod = self.algebra.mul_monomial(r, &m);
                let mut v = BitVector::zeros(basis.len());
                for t in prod.terms() {
                    let i = basis.position(t).expect("homogeneous multiple stays in its degree");
                    v.flip(i);
                }
                span.insert(v);
            }
        }
        basis.len() - span.rank()
    }

    pub fn poincare_coeffs(&self, max_total: u32) -> Vec<usize> {
        (0..=max_total as i32).map(|t| self.graded_dim(t).expect("total degree query")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda2() -> PolyAlgebra {
        PolyAlgebra::new(vec![
            GradedVariable::capped("x1", BiDegree::new(1, 0), 1),
            GradedVariable::new("x2", BiDegree::new(1, 1)),
        ])
        .unwrap()
    }

    fn chern(n: i32) -> PolyAlgebra {
        PolyAlgebra::new((1..=n).map(|i| GradedVariable::new(format!("c{i}"), BiDegree::new(i, i))).collect())
            .unwrap()
    }

    #[test]
    fn capped_square_vanishes() {
        let l = lambda2();
        let x1 = l.gen("x1").unwrap();
        assert!(l.multiply(&x1, &x1).unwrap().is_zero());
    }

    #[test]
    fn multiply_by_one_and_frobenius() {
        let a = chern(2);
        let p = a.gen("c1").unwrap().plus(&a.gen("c2").unwrap());
        assert_eq!(a.multiply(&p, &a.one()).unwrap(), p);
        let sq = a.multiply(&p, &p).unwrap();
        let expect = a.pow(&a.gen("c1").unwrap(), 2).plus(&a.pow(&a.gen("c2").unwrap(), 2));
        assert_eq!(sq, expect);
        assert_eq!(a.square(&p), expect);
    }

    #[test]
    fn mixed_ambient_is_rejected() {
        let a = chern(2);
        let b = chern(3);
        assert!(matches!(
            a.multiply(&a.one(), &b.gen("c3").unwrap()),
            Err(AlgebraError::MixedAmbient { .. })
        ));
    }

    #[test]
    fn basis_examples() {
        let l = lambda2();
        for d in 0..10 {
            assert_eq!(l.monomial_basis(d).len(), 1, "degree {d}");
        }
        let a = chern(2);
        let b = a.monomial_basis(4);
        assert_eq!(b.len(), 2);
        assert_eq!(a.format_monomial(&b[0]), "c1^2");
        assert_eq!(a.format_monomial(&b[1]), "c2");
        assert!(a.monomial_basis(BiDegree::new(-1, 3)).is_empty());
        assert!(a.monomial_basis(-2).is_empty());
    }

    #[test]
    fn graded_dims_of_examples() {
        let x23 = PolyAlgebra::new(vec![
            GradedVariable::new("x2", BiDegree::new(1, 1)),
            GradedVariable::new("x3", BiDegree::new(1, 2)),
        ])
        .unwrap();
        let free = PresentedAlgebra::free(x23);
        assert_eq!(free.poincare_coeffs(10), vec![1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2]);

        let x = PolyAlgebra::new(vec![GradedVariable::new("x", BiDegree::new(1, 0))]).unwrap();
        let sq = x.pow(&x.gen("x").unwrap(), 2);
        let pa = PresentedAlgebra::new(x, vec![sq], GradingMode::BiDegree).unwrap();
        assert_eq!(pa.graded_dim(2).unwrap(), 0);
        assert_eq!(pa.graded_dim(1).unwrap(), 1);

        assert_eq!(PresentedAlgebra::free(PolyAlgebra::ground()).poincare_coeffs(3), vec![1, 0, 0, 0]);
        assert_eq!(PresentedAlgebra::free(lambda2()).poincare_coeffs(4), vec![1; 5]);
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let a = chern(2);
        let r = a.gen("c1").unwrap().plus(&a.gen("c2").unwrap());
        assert!(PresentedAlgebra::new(a, vec![r], GradingMode::BiDegree).is_err());
    }

    #[test]
    fn map_hom_substitutes() {
        let a = chern(2);
        let b = chern(1);
        let c1 = b.gen("c1").unwrap();
        let images = vec![c1.clone(), b.pow(&c1, 2)];
        let p = a.gen("c2").unwrap().plus(&a.pow(&a.gen("c1").unwrap(), 2));
        assert!(a.map_hom(&p, &images, &b).is_zero());
    }

    #[test]
    fn format_is_grlex_descending() {
        let a = chern(3);
        let p = a.gen("c3").unwrap().plus(&a.pow(&a.gen("c1").unwrap(), 3));
        assert_eq!(a.format_poly(&p), "c1^3 + c3");
    }
}
