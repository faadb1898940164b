//! Splitting `A ≅ F₂[a♯] ⊗ P_qA`, canonical lifts of generators, the star product,
//! the `d₁` complex on `P₂A`, and the classes `b_h`, `y_I` with their relations.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gf2::{kernel_basis, rank, solve, BitMatrix, BitVector, Echelon};
use crate::hopf::{ComoduleAlgebra, HopfFlavor};
use crate::poly::{BiDegree, DegreeBasis, Poly};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TodaError {
    #[error("element is not bihomogeneous")]
    NotHomogeneous,
    #[error("{0} is not in P_2A")]
    NotInP2(String),
    #[error("the star product needs q = 2, found q = {0}")]
    WrongQ(usize),
    #[error("index {index} out of range 2..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("no bar generator with index {0}")]
    MissingBar(usize),
    #[error("peeling did not terminate")]
    NoProgress,
}

/// An element with `d_q(a♯) = 1` and `d_h(a♯) = 0` for `h > q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpElement {
    pub element: Poly,
    pub q: usize,
    pub degree: BiDegree,
}

/// Whether `p` satisfies the sharp conditions for `q` in degree `deg`.
fn is_sharp(ca: &ComoduleAlgebra, p: &Poly, q: usize, deg: BiDegree) -> bool {
    let one = ca.algebra().one();
    if ca.d_op(q, p) != one {
        return false;
    }
    let bound = ca.hopf().max_d_index(deg);
    (q + 1..=bound).all(|h| ca.d_op(h, p).is_zero())
}

/// Stacks `d_h` for `h` in `from..=bound` on the `deg` piece; columns index `src`.
fn stacked_d(ca: &ComoduleAlgebra, src: &DegreeBasis, deg: BiDegree, from: usize) -> (BitMatrix, Vec<(usize, usize)>) {
    let bound = ca.hopf().max_d_index(deg);
    let mut rows: Vec<BitVector> = Vec::new();
    let mut blocks = Vec::new();
    for h in from..=bound {
        let shift = ca.hopf().d_shift(h);
        let tgt = ca.basis(deg - shift);
        if tgt.is_empty() {
            continue;
        }
        let m = ca.d_matrix(h, src, &tgt);
        blocks.push((h, rows.len()));
        for r in 0..m.rows() {
            rows.push(m.row(r));
        }
    }
    let mat = BitMatrix::from_rows(src.len(), &rows).expect("rows sized to the source basis");
    (mat, blocks)
}

/// Searches degree by degree for `a♯`, smallest `q` first (powers of two from the flavor minimum).
pub fn find_sharp(ca: &ComoduleAlgebra, max_q: usize) -> Option<SharpElement> {
    let hopf = ca.hopf();
    let mut q = hopf.flavor().min_sharp_q();
    while q <= max_q {
        let lam = hopf.d_index_monomial(q)?;
        let deg = hopf.algebra().degree_of(&lam);
        let basis = ca.basis(deg);
        if !basis.is_empty() {
            let gens = basis.monomials().iter().filter(|m| m.word_length() == 1);
            let others = basis.monomials().iter().filter(|m| m.word_length() != 1);
            for m in gens.chain(others) {
                let p = Poly::monomial(m.clone());
                if is_sharp(ca, &p, q, deg) {
                    return Some(SharpElement { element: p, q, degree: deg });
                }
            }
            // d_q = 1 and d_h = 0 (h > q) as one linear system
            let (mat, blocks) = stacked_d(ca, &basis, deg, q);
            if let Some(&(_, start)) = blocks.iter().find(|(h, _)| *h == q) {
                let mut rhs = BitVector::zeros(mat.rows());
                rhs.set(start, true);
                if let Ok(Some(v)) = solve(&mat, &rhs) {
                    let p = basis.poly(&v);
                    debug_assert!(is_sharp(ca, &p, q, deg));
                    return Some(SharpElement { element: p, q, degree: deg });
                }
            }
        }
        q *= 2;
    }
    None
}

/// Basis of `P_qA = ∩_{h≥q} ker d_h` in one bidegree.
pub fn pq_basis(ca: &ComoduleAlgebra, q: usize, deg: BiDegree) -> Vec<Poly> {
    let basis = ca.basis(deg);
    if basis.is_empty() {
        return Vec::new();
    }
    let (mat, _) = stacked_d(ca, &basis, deg, q);
    kernel_basis(&mat).iter().map(|v| basis.poly(v)).collect()
}

pub fn in_pq(ca: &ComoduleAlgebra, q: usize, p: &Poly) -> Result<bool, TodaError> {
    if p.is_zero() {
        return Ok(true);
    }
    let deg = ca.algebra().homogeneous_degree(p).ok_or(TodaError::NotHomogeneous)?;
    let bound = ca.hopf().max_d_index(deg);
    Ok((q..=bound).all(|h| ca.d_op(h, p).is_zero()))
}

/// The `j = 0` component of `a = Σ a♯^j b_j` with `b_j ∈ P_qA`, found by peeling
/// `a♯^j · d_{qj}(a)` off at the highest nonzero `d_h`.
pub fn canonical_lift(ca: &ComoduleAlgebra, sharp: &SharpElement, a: &Poly) -> Result<Poly, TodaError> {
    if a.is_zero() {
        return Ok(Poly::zero());
    }
    let deg = ca.algebra().homogeneous_degree(a).ok_or(TodaError::NotHomogeneous)?;
    let alg = ca.algebra();
    let bound = ca.hopf().max_d_index(deg);
    let mut rest = a.clone();
    for _ in 0..=4 * (deg.total().max(1) as usize) * (bound + 1) {
        let top = (1..=bound).rev().find(|&h| !ca.d_op(h, &rest).is_zero());
        match top {
            Some(h) if h >= sharp.q => {
                let j = h / sharp.q;
                let b = ca.d_op(sharp.q * j, &rest);
                let peeled = alg.mul(&alg.pow(&sharp.element, j as u32), &b);
                rest.add_assign(&peeled);
            }
            _ => return Ok(rest),
        }
    }
    Err(TodaError::NoProgress)
}

/// `a ∗ b`: the product of `A/(a♯)` carried to `P₂A`.
pub fn star(ca: &ComoduleAlgebra, sharp: &SharpElement, a: &Poly, b: &Poly) -> Result<Poly, TodaError> {
    if sharp.q != 2 {
        return Err(TodaError::WrongQ(sharp.q));
    }
    for p in [a, b] {
        if !in_pq(ca, 2, p)? {
            return Err(TodaError::NotInP2(ca.algebra().format_poly(p)));
        }
    }
    let alg = ca.algebra();
    let mut out = alg.mul(a, b);
    if !ca.hopf().flavor().even_multiplicative() {
        let corr = alg.product([&ca.d_op(1, a), &ca.d_op(1, b), &sharp.element]);
        out.add_assign(&corr);
    }
    Ok(out)
}

fn star_product(ca: &ComoduleAlgebra, sharp: &SharpElement, factors: &[&Poly]) -> Result<Poly, TodaError> {
    let mut acc = ca.algebra().one();
    for f in factors {
        acc = star(ca, sharp, &acc, f)?;
    }
    Ok(acc)
}

/// Matrix of `d₁` restricted to a `P₂A` basis, with target coordinates in the full basis.
fn d1_on(ca: &ComoduleAlgebra, src: &[Poly], deg: BiDegree) -> BitMatrix {
    let shift = ca.hopf().d_shift(1);
    let tgt = ca.basis(deg - shift);
    let rows: Vec<BitVector> = src
        .iter()
        .map(|p| tgt.vector(&ca.d_op(1, p)).expect("d₁ is homogeneous"))
        .collect();
    BitMatrix::from_rows(tgt.len(), &rows).expect("rows sized to the target basis")
}

/// `dim H(P₂A, d₁)` summed by total degree, indices `0..=max_total`.
pub fn d1_cohomology(ca: &ComoduleAlgebra, max_total: u32) -> Vec<usize> {
    let shift = ca.hopf().d_shift(1);
    let degrees: Vec<BiDegree> = (0..=max_total as i32)
        .flat_map(|t| ca.occupied_bidegrees(t))
        .collect();
    let mut out = vec![0; max_total as usize + 1];
    let rank_from = |deg: BiDegree| -> (usize, usize) {
        let p2 = pq_basis(ca, 2, deg);
        let r = if p2.is_empty() { 0 } else { rank(&d1_on(ca, &p2, deg)) };
        (p2.len(), r)
    };
    for deg in degrees {
        let (dim, out_rank) = rank_from(deg);
        let (_, in_rank) = rank_from(deg + shift);
        out[deg.total() as usize] += dim - out_rank - in_rank;
    }
    out
}

/// Canonical generators `c̄_i` / `ū_i`, keyed by the index in the generator name.
#[derive(Clone, Debug)]
pub struct BarGenerators {
    pub bars: BTreeMap<usize, Poly>,
    /// Generator index to algebra variable.
    pub variables: BTreeMap<usize, usize>,
}

fn name_index(name: &str) -> Option<usize> {
    let digits: String = name.chars().rev().take_while(char::is_ascii_digit).collect();
    digits.chars().rev().collect::<String>().parse().ok()
}

impl BarGenerators {
    /// `a♯` stays, an odd index with an even partner gets `d₁` of the partner's bar,
    /// everything else gets its canonical lift.
    pub fn build(ca: &ComoduleAlgebra, sharp: &SharpElement) -> Result<Self, TodaError> {
        let alg = ca.algebra();
        let variables: BTreeMap<usize, usize> = alg
            .variables()
            .iter()
            .enumerate()
            .filter_map(|(i, v)| name_index(&v.name).map(|k| (k, i)))
            .collect();
        let mut bars = BTreeMap::new();
        for (&k, &v) in &variables {
            let g = alg.var_poly(v);
            if k % 2 == 1 && k >= 3 && variables.contains_key(&(k + 1)) {
                continue;
            }
            let bar = if g == sharp.element { g } else { canonical_lift(ca, sharp, &g)? };
            bars.insert(k, bar);
        }
        for &k in variables.keys() {
            if k % 2 == 1 && k >= 3 {
                if let Some(partner) = bars.get(&(k + 1)) {
                    bars.insert(k, ca.d_op(1, partner));
                }
            }
        }
        Ok(BarGenerators { bars, variables })
    }

    pub fn get(&self, k: usize) -> Result<&Poly, TodaError> {
        self.bars.get(&k).ok_or(TodaError::MissingBar(k))
    }

    /// Membership in `P₂A`, indecomposable change, congruence mod `a♯`, and `d₁` links.
    pub fn verify(&self, ca: &ComoduleAlgebra, sharp: &SharpElement) -> Report {
        let alg = ca.algebra();
        let mut report = Report::new(format!("bar generators of {}", ca.name()));
        for (&k, bar) in &self.bars {
            let g = alg.var_poly(self.variables[&k]);
            let name = &alg.variable(self.variables[&k]).name;
            if *bar == sharp.element {
                report.check(is_sharp(ca, bar, sharp.q, sharp.degree), || format!("{name} is not a♯"));
            } else {
                report.check(in_pq(ca, sharp.q, bar).unwrap_or(false), || format!("lift of {name} is not in P_qA"));
            }
            let diff = bar.plus(&g);
            report.check(diff.terms().all(|m| m.word_length() != 1), || {
                format!("lift of {name} differs from it by a linear term")
            });
            if k % 2 == 0 && g != sharp.element {
                report.check(divisible_in_span(ca, sharp, &diff), || {
                    format!("lift of {name} is not congruent to it mod a♯")
                });
            }
            if k % 2 == 1 && k >= 3 {
                if let Some(p) = self.bars.get(&(k + 1)) {
                    report.check(ca.d_op(1, p) == *bar, || format!("lift of {name} is not d₁ of the next lift"));
                }
            }
        }
        report
    }
}

/// Whether `p` lies in `a♯ · A`, by span membership in its bidegree.
pub fn divisible_in_span(ca: &ComoduleAlgebra, sharp: &SharpElement, p: &Poly) -> bool {
    let Some(deg) = ca.algebra().homogeneous_degree(p) else {
        return p.is_zero();
    };
    let basis = ca.basis(deg);
    let mut span = Echelon::new(basis.len());
    for m in ca.algebra().monomial_basis(deg - sharp.degree) {
        let prod = ca.algebra().mul_monomial(&sharp.element, &m);
        span.insert(basis.vector(&prod).expect("same bidegree"));
    }
    basis.vector(p).is_some_and(|v| span.contains(&v))
}

/// `b_h = c̄_{2h}∗c̄_{2h} + c̄₁c̄_{2h}c̄_{2h−1}` over `Λ₁`, `ū_{2h}²` over `Λ₂`.
pub fn build_b(ca: &ComoduleAlgebra, sharp: &SharpElement, bar: &BarGenerators, h: usize) -> Result<Poly, TodaError> {
    let alg = ca.algebra();
    let even = bar.get(2 * h)?;
    if ca.hopf().flavor().even_multiplicative() {
        return Ok(alg.square(even));
    }
    let mut b = star(ca, sharp, even, even)?;
    b.add_assign(&alg.product([bar.get(1)?, even, bar.get(2 * h - 1)?]));
    Ok(b)
}

/// `y_I = d₁(∗-product of the even lifts indexed by I)`.
pub fn build_y(ca: &ComoduleAlgebra, sharp: &SharpElement, bar: &BarGenerators, set: &[usize]) -> Result<Poly, TodaError> {
    let factors: Vec<&Poly> = set.iter().map(|&i| bar.get(2 * i)).collect::<Result<_, _>>()?;
    let prod = star_product(ca, sharp, &factors)?;
    Ok(ca.d_op(1, &prod))
}

/// Which relation family the classes satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationFamily {
    /// `y_{h,h,J} = y_J b_h + y_{h,J} y_h x` and sums over all nonempty `K ⊂ I`.
    Linear,
    /// `y_{h,h,J} = b_h y_J` and sums over single elements of `I`.
    Orthogonal,
}

/// Whatever interprets `y_I`, `b_h` and `x` as polynomials in one algebra.
pub trait ClassAlgebra {
    fn mul(&self, a: &Poly, b: &Poly) -> Poly;
    /// `I` strictly increasing and nonempty.
    fn y(&self, set: &[usize]) -> Poly;
    fn b(&self, h: usize) -> Poly;
    /// The degree-two class multiplying the linear-family correction.
    fn x(&self) -> Poly;
}

/// `y` of a sorted multiset, reducing repeated indices by the family's convention.
pub fn y_multiset<C: ClassAlgebra>(c: &C, family: RelationFamily, ms: &[usize]) -> Poly {
    if ms.is_empty() {
        return Poly::zero();
    }
    let dup = ms.windows(2).position(|w| w[0] == w[1]);
    let Some(pos) = dup else {
        return c.y(ms);
    };
    let h = ms[pos];
    let mut rest: Vec<usize> = ms.to_vec();
    rest.drain(pos..pos + 2);
    match family {
        RelationFamily::Orthogonal => c.mul(&c.b(h), &y_multiset(c, family, &rest)),
        RelationFamily::Linear => {
            let mut with_h = rest.clone();
            with_h.push(h);
            with_h.sort_unstable();
            let mut out = c.mul(&y_multiset(c, family, &rest), &c.b(h));
            let t = c.mul(&c.mul(&y_multiset(c, family, &with_h), &c.y(&[h])), &c.x());
            out.add_assign(&t);
            out
        }
    }
}

fn merged(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

/// Nonempty subsets of `{2, …, 2m+1}` in increasing size then lexicographic order.
pub fn index_sets(m: usize) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (2..=2 * m + 1).collect();
    let mut out: Vec<Vec<usize>> = (1u32..1 << idx.len())
        .map(|mask| idx.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

pub fn set_label(set: &[usize]) -> String {
    set.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// `y_I y_J + Σ …` for one pair `(I, J)`; zero when the relation holds.
pub fn relation_residue<C: ClassAlgebra>(c: &C, family: RelationFamily, i: &[usize], j: &[usize]) -> Poly {
    let mut res = c.mul(&c.y(i), &c.y(j));
    match family {
        RelationFamily::Orthogonal => {
            for (pos, &h) in i.iter().enumerate() {
                let mut rest = i.to_vec();
                rest.remove(pos);
                let t = c.mul(&y_multiset(c, family, &merged(&rest, j)), &c.y(&[h]));
                res.add_assign(&t);
            }
        }
        RelationFamily::Linear => {
            for mask in 1u32..1 << i.len() {
                let (k, rest): (Vec<_>, Vec<_>) =
                    i.iter().copied().enumerate().partition(|(p, _)| mask >> p & 1 == 1);
                let k: Vec<usize> = k.into_iter().map(|(_, v)| v).collect();
                let rest: Vec<usize> = rest.into_iter().map(|(_, v)| v).collect();
                let mut t = y_multiset(c, family, &merged(&rest, j));
                for &kk in &k {
                    t = c.mul(&t, &c.y(&[kk]));
                }
                for _ in 1..k.len() {
                    t = c.mul(&t, &c.x());
                }
                res.add_assign(&t);
            }
        }
    }
    res
}

/// Every `(I, J)` instance used for a family: all pairs for the linear family,
/// `|I| ≥ 2` for the orthogonal one (smaller `I` give identities).
pub fn relation_pairs(family: RelationFamily, m: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let sets = index_sets(m);
    let mut out = Vec::new();
    for i in &sets {
        if family == RelationFamily::Orthogonal && i.len() < 2 {
            continue;
        }
        for j in &sets {
            out.push((i.clone(), j.clone()));
        }
    }
    out
}

/// Concrete classes built inside a comodule algebra.
pub struct TodaClasses<'a> {
    ca: &'a ComoduleAlgebra,
    pub family: RelationFamily,
    pub m: usize,
    pub b: BTreeMap<usize, Poly>,
    pub y: BTreeMap<Vec<usize>, Poly>,
    pub x: Poly,
}

impl<'a> TodaClasses<'a> {
    /// Builds `b_h` for `1 < h ≤ 2m+1` and `y_I` for every nonempty `I ⊂ {2..2m+1}`.
    pub fn build(ca: &'a ComoduleAlgebra, sharp: &SharpElement, bar: &BarGenerators, m: usize) -> Result<Self, TodaError> {
        let family = if ca.hopf().flavor().even_multiplicative() {
            RelationFamily::Orthogonal
        } else {
            RelationFamily::Linear
        };
        let mut b = BTreeMap::new();
        for h in 2..=2 * m + 1 {
            b.insert(h, build_b(ca, sharp, bar, h)?);
        }
        let mut y = BTreeMap::new();
        for set in index_sets(m) {
            let v = build_y(ca, sharp, bar, &set)?;
            y.insert(set, v);
        }
        let x = match family {
            RelationFamily::Linear => bar.get(1)?.clone(),
            RelationFamily::Orthogonal => Poly::zero(),
        };
        Ok(TodaClasses { ca, family, m, b, y, x })
    }

    /// Primitivity of every `b_h` and `y_I`.
    pub fn verify_primitive(&self) -> Report {
        let alg = self.ca.algebra();
        let mut report = Report::new(format!("b_h and y_I are primitive in {}", self.ca.name()));
        for (h, p) in &self.b {
            report.check(self.ca.is_primitive(p), || format!("b_{h} = {} is not primitive", alg.format_poly(p)));
        }
        for (set, p) in &self.y {
            report.check(self.ca.is_primitive(p), || {
                format!("y_{{{}}} = {} is not primitive", set_label(set), alg.format_poly(p))
            });
        }
        report
    }
}

impl ClassAlgebra for TodaClasses<'_> {
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.ca.algebra().mul(a, b)
    }
    fn y(&self, set: &[usize]) -> Poly {
        self.y[set].clone()
    }
    fn b(&self, h: usize) -> Poly {
        self.b[&h].clone()
    }
    fn x(&self) -> Poly {
        self.x.clone()
    }
}

/// Substitutes the constructed classes into every relation instance.
pub fn verify_relations(classes: &TodaClasses<'_>) -> Report {
    let alg = classes.ca.algebra();
    let label = match classes.family {
        RelationFamily::Linear => "y_I y_J relations with y_{h,h,J} = y_J b_h + y_{h,J} y_h c_1",
        RelationFamily::Orthogonal => "y_I y_J relations with y_{h,h,J} = b_h y_J",
    };
    let mut report = Report::new(format!("{label} in {}", classes.ca.name()));
    for (i, j) in relation_pairs(classes.family, classes.m) {
        let r = relation_residue(classes, classes.family, &i, &j);
        report.check(r.is_zero(), || {
            format!("I = {{{}}}, J = {{{}}}: residue {}", set_label(&i), set_label(&j), alg.format_poly(&r))
        });
    }
    report
}

/// `Σ_j dim P_qA(D − j|a♯|) = dim A(D)` for every occupied bidegree up to `max_total`.
pub fn check_splitting(ca: &ComoduleAlgebra, sharp: &SharpElement, max_total: u32) -> Report {
    let mut report = Report::new(format!("A ≅ F₂[a♯] ⊗ P_qA additively for {} up to degree {max_total}", ca.name()));
    for t in 0..=max_total as i32 {
        for deg in ca.occupied_bidegrees(t) {
            let mut sum = 0;
            let mut d = deg;
            while d.is_nonnegative() {
                sum += pq_basis(ca, sharp.q, d).len();
                d = d - sharp.degree;
            }
            let full = ca.basis(deg).len();
            report.check(sum == full, || format!("degree {deg}: {sum} vs {full}"));
        }
    }
    report
}

/// `d₁ ∘ d₁ = 0` on `P₂A` up to `max_total`.
pub fn check_d1_squared(ca: &ComoduleAlgebra, max_total: u32) -> Report {
    let mut report = Report::new(format!("d₁² = 0 on P₂A of {} up to degree {max_total}", ca.name()));
    for t in 0..=max_total as i32 {
        for deg in ca.occupied_bidegrees(t) {
            for p in pq_basis(ca, 2, deg) {
                let dd = ca.d_op(1, &ca.d_op(1, &p));
                report.check(dd.is_zero(), || format!("on {}", ca.algebra().format_poly(&p)));
            }
        }
    }
    report
}

/// Whether the flavor uses the corrected star product.
pub fn star_is_twisted(flavor: HopfFlavor) -> bool {
    !flavor.even_multiplicative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn name_indices() {
        assert_eq!(name_index("c12"), Some(12));
        assert_eq!(name_index("u3"), Some(3));
        assert_eq!(name_index("x"), None);
    }

    #[test]
    fn index_sets_order() {
        assert_eq!(index_sets(1), vec![vec![2], vec![3], vec![2, 3]]);
        assert_eq!(index_sets(2).len(), 15);
    }

    use crate::catalog::{model, ModelId};

    fn parse(ca: &ComoduleAlgebra, terms: &[&[(&str, u16)]]) -> Poly {
        Poly::from_monomials(terms.iter().map(|t| ca.algebra().monomial_of(t).unwrap()))
    }

    #[test]
    fn sharp_elements() {
        let gl = model(ModelId::Gl(6)).unwrap();
        let s = find_sharp(&gl, 8).unwrap();
        assert_eq!((s.q, gl.algebra().format_poly(&s.element)), (2, "c2".to_string()));
        let so = model(ModelId::So(6)).unwrap();
        let s = find_sharp(&so, 8).unwrap();
        assert_eq!((s.q, so.algebra().format_poly(&s.element)), (2, "u2".to_string()));
        let sp = model(ModelId::Sp(6)).unwrap();
        let s = find_sharp(&sp, 8).unwrap();
        assert_eq!((s.q, sp.algebra().format_poly(&s.element)), (4, "q1".to_string()));
    }

    #[test]
    fn gl6_bars() {
        let gl = model(ModelId::Gl(6)).unwrap();
        let s = find_sharp(&gl, 8).unwrap();
        let bar = BarGenerators::build(&gl, &s).unwrap();
        let want = [
            (3, parse(&gl, &[&[("c3", 1)], &[("c1", 3)]])),
            (4, parse(&gl, &[&[("c4", 1)], &[("c2", 2)], &[("c1", 2), ("c2", 1)]])),
            (5, parse(&gl, &[&[("c5", 1)], &[("c4", 1), ("c1", 1)], &[("c3", 1), ("c2", 1)], &[("c3", 1), ("c1", 2)]])),
            (6, parse(&gl, &[&[("c6", 1)], &[("c4", 1), ("c2", 1)], &[("c3", 1), ("c1", 1), ("c2", 1)]])),
        ];
        for (k, p) in want {
            assert_eq!(bar.get(k).unwrap(), &p, "bar {k}: {}", gl.algebra().format_poly(bar.get(k).unwrap()));
        }
        let r = bar.verify(&gl, &s);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn relations_hold_in_gl6_and_so6() {
        for id in [ModelId::Gl(6), ModelId::So(6)] {
            let ca = model(id).unwrap();
            let s = find_sharp(&ca, 8).unwrap();
            let bar = BarGenerators::build(&ca, &s).unwrap();
            let classes = TodaClasses::build(&ca, &s, &bar, 1).unwrap();
            let r = classes.verify_primitive();
            assert!(r.passed(), "{r}");
            let r = verify_relations(&classes);
            assert!(r.passed(), "{r}");
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn d1_cohomology_so6_and_gl6() {
        let so = model(ModelId::So(6)).unwrap();
        let h = d1_cohomology(&so, 14);
        let nonzero: Vec<usize> = (0..h.len()).filter(|&t| h[t] > 0).collect();
        assert_eq!(nonzero, vec![0, 8, 12]);
        assert!(check_d1_squared(&so, 14).passed());
        let gl = model(ModelId::Gl(6)).unwrap();
        let h = d1_cohomology(&gl, 26);
        // F₂[c₁, b₂, b₃] with degrees 2, 16, 24
        let mut want = vec![0usize; 27];
        for a in 0..=13 {
            for b in 0..=1 {
                for c in 0..=1 {
                    let t = 2 * a + 16 * b + 24 * c;
                    if t <= 26 {
                        want[t] += 1;
                    }
                }
            }
        }
        assert_eq!(h, want);
    }
}

