//! Cotor over the small Hopf algebras, by the reduced cobar complex and by the
//! twisted tensor product `R ⊗_θ M`.
//!
//! A `z` variable carries the internal bidegree of the Hopf monomial it images,
//! and the cotor degree `s` counts `z` factors. A class at `(s, a, b)` has total
//! degree `a + b + s` and Hodge bidegree `(a, b + s)`.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::gf2::{rank, BitMatrix, BitVector, Echelon};
use crate::hopf::{ComoduleAlgebra, HopfDescriptor, HopfFlavor};
use crate::poly::{AlgebraError, BiDegree, DegreeBasis, GradedVariable, Monomial, Poly, PolyAlgebra};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CotorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element of internal total degree {degree} exceeds the twisting cochain truncation {limit}")]
    TruncationOverflow { degree: i32, limit: i32 },
    #[error("cobar complex would need cotor degree {needed}, above the configured bound {bound}")]
    SizeGuard { needed: u32, bound: u32 },
    #[error("d² ≠ 0 starting from cotor degree {s} in internal degree {internal}")]
    DSquaredNonzero { s: u32, internal: BiDegree },
    #[error("element is not a cycle")]
    NotACycle,
    #[error("element is not homogeneous in (s, a, b)")]
    NotHomogeneous,
    #[error("element lies outside the computed range of the complex")]
    OutOfRange,
    #[error("this complex does not keep representatives")]
    RepresentativesUnavailable,
    #[error("{0} is not primitive")]
    NonPrimitive(String),
    #[error("twisting cochain is over {tc:?} but the comodule is over {ca:?}")]
    FlavorMismatch { tc: HopfFlavor, ca: HopfFlavor },
}

/// Cotor degree `s` with internal bidegree `(a, b)`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct TriDegree {
    pub s: u32,
    pub a: i32,
    pub b: i32,
}

impl TriDegree {
    pub fn new(s: u32, a: i32, b: i32) -> Self {
        TriDegree { s, a, b }
    }

    pub fn internal(self) -> BiDegree {
        BiDegree::new(self.a, self.b)
    }

    pub fn total(self) -> i32 {
        self.a + self.b + self.s as i32
    }

    pub fn hodge(self) -> BiDegree {
        BiDegree::new(self.a, self.b + self.s as i32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Cobar,
    Twisted,
}

/// The twisting cochain `θ : Λ → R`, nonzero only on `x₁` and on `x₂^(2^h)`
/// (and their singular analogues).
#[derive(Clone, Debug)]
pub struct TwistingCochain {
    hopf: Arc<HopfDescriptor>,
    ring: PolyAlgebra,
    support: HashMap<Monomial, usize>,
    max_internal_total: i32,
}

impl TwistingCochain {
    /// Includes every `z` whose Hopf preimage has total degree `≤ max_internal_total`.
    pub fn new(hopf: Arc<HopfDescriptor>, max_internal_total: u32) -> Self {
        let limit = max_internal_total as i32;
        let h = hopf.algebra();
        let mut entries: Vec<(Monomial, String)> = Vec::new();
        let mut push = |m: Monomial, name: String| {
            if h.degree_of(&m).total() <= limit {
                entries.push((m, name));
            }
        };
        match hopf.flavor() {
            HopfFlavor::Lambda1 | HopfFlavor::SingGm => {
                for h in 0..15u32 {
                    push(Monomial::var(1, 0, 1 << h), format!("z{}", (1u32 << (h + 1)) + 1));
                }
            }
            HopfFlavor::Lambda2 => {
                push(Monomial::var(2, 0, 1), "z2".into());
                for h in 0..15u32 {
                    push(Monomial::var(2, 1, 1 << h), format!("z{}", (1u32 << (h + 1)) + 1));
                }
            }
            HopfFlavor::SingZ2 => {
                push(Monomial::var(1, 0, 1), "z2".into());
                for k in 1..15u32 {
                    push(Monomial::var(1, 0, 1 << k), format!("z{}", (1u32 << k) + 1));
                }
            }
        }
        let vars = entries
            .iter()
            .map(|(m, name)| GradedVariable::new(name.clone(), h.degree_of(m)))
            .collect();
        let ring = PolyAlgebra::new(vars).expect("distinct z names");
        let support = entries.into_iter().enumerate().map(|(i, (m, _))| (m, i)).collect();
        TwistingCochain { hopf, ring, support, max_internal_total: limit }
    }

    pub fn hopf(&self) -> &HopfDescriptor {
        &self.hopf
    }

    pub fn ring(&self) -> &PolyAlgebra {
        &self.ring
    }

    pub fn max_internal_total(&self) -> i32 {
        self.max_internal_total
    }

    /// The `z` variable index that `θ` assigns to a Hopf basis monomial.
    pub fn theta_monomial(&self, m: &Monomial) -> Option<usize> {
        self.support.get(m).copied()
    }

    pub fn theta(&self, lambda: &Poly) -> Result<Poly, CotorError> {
        let mut out = Poly::zero();
        for m in lambda.terms() {
            let t = self.hopf.algebra().degree_of(m).total();
            if t > self.max_internal_total {
                return Err(CotorError::TruncationOverflow { degree: t, limit: self.max_internal_total });
            }
            if let Some(i) = self.theta_monomial(m) {
                out.toggle(Monomial::var(self.ring.nvars(), i, 1));
            }
        }
        Ok(out)
    }

    /// `μ∘(θ⊗θ)∘Δ = 0` on all Hopf monomials up to `max_total`.
    pub fn check_equation(&self, max_total: u32) -> Report {
        let mut report = Report::new(format!(
            "twisting cochain identity μ(θ⊗θ)Δ = 0 over {} up to degree {max_total}",
            self.hopf.flavor().name()
        ));
        if max_total as i32 > self.max_internal_total {
            report.fail(format!("truncation {} is below the requested degree", self.max_internal_total));
            return report;
        }
        let n = self.ring.nvars();
        for m in self.hopf.basis_up_to(max_total) {
            let mut acc = Poly::zero();
            for (l, r) in self.hopf.coproduct_pairs(&m) {
                if let (Some(i), Some(j)) = (self.theta_monomial(&l), self.theta_monomial(&r)) {
                    let mut t = Monomial::one(n);
                    t.set_exp(i, t.exp(i) + 1);
                    t.set_exp(j, t.exp(j) + 1);
                    acc.toggle(t);
                }
            }
            report.check(acc.is_zero(), || {
                format!("nonzero on {}: {}", self.hopf.algebra().format_monomial(&m), self.ring.format_poly(&acc))
            });
        }
        report
    }

    /// `R ⊗ A` with the `z` variables first.
    pub fn twisted_ring(&self, ca: &ComoduleAlgebra) -> Result<PolyAlgebra, CotorError> {
        Ok(self.ring.tensor(ca.algebra())?)
    }

    fn check_flavor(&self, ca: &ComoduleAlgebra) -> Result<(), CotorError> {
        if self.hopf.flavor() != ca.hopf().flavor() {
            return Err(CotorError::FlavorMismatch { tc: self.hopf.flavor(), ca: ca.hopf().flavor() });
        }
        Ok(())
    }

    /// `d_θ(1⊗a) = Σ θ(λ) ⊗ a'` over the coaction `φ(a) = Σ λ⊗a'`, as `(z index, a')` pairs.
    fn twist_monomial(&self, ca: &ComoduleAlgebra, a: &Monomial) -> Result<Vec<(usize, Poly)>, CotorError> {
        let t = ca.algebra().degree_of(a).total();
        if t > self.max_internal_total {
            return Err(CotorError::TruncationOverflow { degree: t, limit: self.max_internal_total });
        }
        Ok(ca
            .coaction_split(a)
            .iter()
            .filter_map(|(l, p)| self.theta_monomial(l).map(|i| (i, p.clone())))
            .collect())
    }
}

/// `d_θ = (μ_R⊗1)(1⊗θ⊗1)(1⊗φ)` on an element of `R ⊗ A`.
pub fn twisted_differential(
    tc: &TwistingCochain,
    ca: &ComoduleAlgebra,
    elt: &Poly,
) -> Result<Poly, CotorError> {
    tc.check_flavor(ca)?;
    let ring = tc.twisted_ring(ca)?;
    ring.check_poly(elt)?;
    let k = tc.ring.nvars();
    let mut out = Poly::zero();
    for term in elt.terms() {
        let (r, a) = term.split_at(k);
        for (i, p) in tc.twist_monomial(ca, &a)? {
            let mut rz = r.clone();
            rz.set_exp(i, rz.exp(i) + 1);
            for b in p.terms() {
                out.toggle(rz.concat(b));
            }
        }
    }
    Ok(out)
}

/// Embeds `r ⊗ p` into `R ⊗ A`.
pub fn tensor_element(r: &Poly, p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for x in r.terms() {
        for y in p.terms() {
            out.toggle(x.concat(y));
        }
    }
    out
}

/// Range of cells to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    /// Largest total degree `a + b + s` whose cohomology is reported.
    pub max_total: u32,
    /// Optional bound on the first internal degree `a`.
    pub max_a: Option<i32>,
}

impl Truncation {
    pub fn total(max_total: u32) -> Self {
        Truncation { max_total, max_a: None }
    }

    fn internal_degrees(&self) -> Vec<BiDegree> {
        let t = self.max_total as i32;
        let mut out = Vec::new();
        for total in 0..=t {
            for a in 0..=total {
                if self.max_a.is_none_or(|m| a <= m) {
                    out.push(BiDegree::new(a, total - a));
                }
            }
        }
        out
    }
}

/// One `(s, internal degree)` piece of a complex.
#[derive(Clone, Debug)]
struct Cell {
    dim: usize,
    /// Rank of the differential leaving this cell, when computed.
    rank_out: Option<usize>,
    basis: Option<DegreeBasis>,
    /// Row `i` is the image of basis element `i`.
    diff: Option<BitMatrix>,
}

/// Cells of a cochain complex with their differentials' ranks, optionally keeping bases.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    method: Method,
    truncation: Truncation,
    ring: Option<PolyAlgebra>,
    z_count: usize,
    cells: BTreeMap<TriDegree, Cell>,
}

impl CochainComplex {
    pub fn method(&self) -> Method {
        self.method
    }

    pub fn dim(&self, t: TriDegree) -> usize {
        self.cells.get(&t).map_or(0, |c| c.dim)
    }

    /// The ambient ring `R ⊗ A` of a twisted complex.
    pub fn ring(&self) -> Option<&PolyAlgebra> {
        self.ring.as_ref()
    }

    pub fn basis(&self, t: TriDegree) -> Option<&DegreeBasis> {
        self.cells.get(&t).and_then(|c| c.basis.as_ref())
    }

    /// Cohomology dimensions within the truncation, zero entries omitted.
    pub fn cohomology(&self) -> CotorTable {
        let mut entries = BTreeMap::new();
        for (&t, cell) in &self.cells {
            if t.total() > self.truncation.max_total as i32 {
                continue;
            }
            let out = cell.rank_out.expect("differential computed inside the truncation");
            let inc = if t.s == 0 {
                0
            } else {
                self.cells
                    .get(&TriDegree::new(t.s - 1, t.a, t.b))
                    .and_then(|c| c.rank_out)
                    .unwrap_or(0)
            };
            let h = cell.dim - out - inc;
            if h > 0 {
                entries.insert(t, h);
            }
        }
        CotorTable { method: self.method, max_total: self.truncation.max_total, entries }
    }

    fn tridegree_of(&self, elt: &Poly) -> Result<Option<TriDegree>, CotorError> {
        let ring = self.ring.as_ref().ok_or(CotorError::RepresentativesUnavailable)?;
        let mut found = None;
        for m in elt.terms() {
            let (r, _) = m.split_at(self.z_count);
            let d = ring.degree_of(m);
            let t = TriDegree::new(r.word_length(), d.a, d.b);
            match found {
                None => found = Some(t),
                Some(f) if f != t => return Err(CotorError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(found)
    }

    /// Applies the stored differential to an element of a twisted complex.
    pub fn apply(&self, elt: &Poly) -> Result<Poly, CotorError> {
        let Some(t) = self.tridegree_of(elt)? else {
            return Ok(Poly::zero());
        };
        let cell = self.cells.get(&t).ok_or(CotorError::OutOfRange)?;
        let (basis, diff) = match (&cell.basis, &cell.diff) {
            (Some(b), Some(d)) => (b, d),
            _ => return Err(CotorError::OutOfRange),
        };
        let target = self
            .basis(TriDegree::new(t.s + 1, t.a, t.b))
            .ok_or(CotorError::OutOfRange)?;
        let v = basis.vector(elt).ok_or(CotorError::OutOfRange)?;
        let mut img = BitVector::zeros(diff.cols());
        for i in v.ones() {
            img.xor_assign(&diff.row(i));
        }
        Ok(target.poly(&img))
    }

    /// Whether a cycle lies in the image of the previous differential.
    pub fn is_boundary(&self, elt: &Poly) -> Result<bool, CotorError> {
        let Some(t) = self.tridegree_of(elt)? else {
            return Ok(true);
        };
        if !self.apply(elt)?.is_zero() {
            return Err(CotorError::NotACycle);
        }
        if t.s == 0 {
            return Ok(false);
        }
        let basis = self.basis(t).ok_or(CotorError::OutOfRange)?;
        let v = basis.vector(elt).ok_or(CotorError::OutOfRange)?;
        let prev = self
            .cells
            .get(&TriDegree::new(t.s - 1, t.a, t.b))
            .and_then(|c| c.diff.as_ref());
        let Some(prev) = prev else {
            return Ok(false);
        };
        let mut span = Echelon::new(basis.len());
        for r in 0..prev.rows() {
            span.insert(prev.row(r));
        }
        Ok(span.contains(&v))
    }
}

/// Checks `d_{s+1}∘d_s = 0` on row-oriented matrices.
fn composes_to_zero(first: &BitMatrix, second: &BitMatrix) -> bool {
    first.mul(second).map(|m| m.is_zero()).unwrap_or(false)
}

struct DegreeResult {
    cells: Vec<(TriDegree, Cell)>,
}

fn finish_degree(
    internal: BiDegree,
    mut mats: Vec<(usize, Option<BitMatrix>, Option<DegreeBasis>)>,
    keep: bool,
) -> Result<DegreeResult, CotorError> {
    for s in 0..mats.len().saturating_sub(1) {
        if let (Some(a), Some(b)) = (&mats[s].1, &mats[s + 1].1) {
            if !composes_to_zero(a, b) {
                return Err(CotorError::DSquaredNonzero { s: s as u32, internal });
            }
        }
    }
    let cells = mats
        .drain(..)
        .enumerate()
        .map(|(s, (dim, diff, basis))| {
            let rank_out = diff.as_ref().map(rank);
            let cell = Cell {
                dim,
                rank_out,
                basis: if keep { basis } else { None },
                diff: if keep { diff } else { None },
            };
            (TriDegree::new(s as u32, internal.a, internal.b), cell)
        })
        .collect();
    Ok(DegreeResult { cells })
}

/// Builds `R ⊗_θ M` up to `max_total`, keeping bases and matrices.
pub fn build_twisted_complex(
    tc: &TwistingCochain,
    ca: &ComoduleAlgebra,
    max_total: u32,
) -> Result<CochainComplex, CotorError> {
    build_twisted(tc, ca, Truncation::total(max_total), true)
}

pub fn cotor_twisted(
    tc: &TwistingCochain,
    ca: &ComoduleAlgebra,
    max_total: u32,
) -> Result<CotorTable, CotorError> {
    cotor_twisted_truncated(tc, ca, Truncation::total(max_total))
}

pub fn cotor_twisted_truncated(
    tc: &TwistingCochain,
    ca: &ComoduleAlgebra,
    truncation: Truncation,
) -> Result<CotorTable, CotorError> {
    Ok(build_twisted(tc, ca, truncation, false)?.cohomology())
}

fn build_twisted(
    tc: &TwistingCochain,
    ca: &ComoduleAlgebra,
    truncation: Truncation,
    keep: bool,
) -> Result<CochainComplex, CotorError> {
    tc.check_flavor(ca)?;
    let max_internal = truncation.max_total as i32;
    if max_internal > tc.max_internal_total {
        return Err(CotorError::TruncationOverflow { degree: max_internal, limit: tc.max_internal_total });
    }
    let ring = tc.twisted_ring(ca)?;
    let results: Vec<Result<DegreeResult, CotorError>> = truncation
        .internal_degrees()
        .into_par_iter()
        .map(|d| twisted_degree(tc, ca, d, truncation.max_total as i32, keep))
        .collect();
    let mut cells = BTreeMap::new();
    for r in results {
        cells.extend(r?.cells);
    }
    Ok(CochainComplex {
        method: Method::Twisted,
        truncation,
        ring: Some(ring),
        z_count: tc.ring.nvars(),
        cells,
    })
}

/// All cells `(s, internal)` and differentials for one internal bidegree.
fn twisted_degree(
    tc: &TwistingCochain,
    ca: &ComoduleAlgebra,
    internal: BiDegree,
    max_total: i32,
    keep: bool,
) -> Result<DegreeResult, CotorError> {
    let r_alg = &tc.ring;
    let s_top = (max_total - internal.total()).min(internal.total());
    if s_top < 0 {
        return Ok(DegreeResult { cells: Vec::new() });
    }
    // s ranges up to s_top + 1 so that every reported cell has its outgoing differential.
    let s_max = (s_top + 1).min(internal.total()) as u32;
    let mut by_s: Vec<Vec<Monomial>> = vec![Vec::new(); s_max as usize + 1];
    let mut a_bases: HashMap<BiDegree, Vec<Monomial>> = HashMap::new();
    for ra in 0..=internal.a {
        for rb in 0..=internal.b {
            let rd = BiDegree::new(ra, rb);
            let a_basis = a_bases
                .entry(internal - rd)
                .or_insert_with(|| ca.algebra().monomial_basis(internal - rd))
                .clone();
            if a_basis.is_empty() {
                continue;
            }
            for r in r_alg.monomial_basis(rd) {
                let s = r.word_length();
                if s > s_max {
                    continue;
                }
                for a in &a_basis {
                    by_s[s as usize].push(r.concat(a));
                }
            }
        }
    }
    let bases: Vec<DegreeBasis> = by_s.into_iter().map(DegreeBasis::new).collect();
    let k = r_alg.nvars();
    let mut twists: HashMap<Monomial, Vec<(usize, Poly)>> = HashMap::new();
    let mut mats = Vec::with_capacity(bases.len());
    for s in 0..bases.len() {
        let src = &bases[s];
        let reported = internal.total() + s as i32 <= max_total;
        let diff = if reported && s + 1 < bases.len() {
            let tgt = &bases[s + 1];
            let mut m = BitMatrix::zeros(src.len(), tgt.len());
            for (row, mono) in src.monomials().iter().enumerate() {
                let (r, a) = mono.split_at(k);
                if !twists.contains_key(&a) {
                    let t = tc.twist_monomial(ca, &a)?;
                    twists.insert(a.clone(), t);
                }
                for (i, p) in &twists[&a] {
                    let mut rz = r.clone();
                    rz.set_exp(*i, rz.exp(*i) + 1);
                    for b in p.terms() {
                        let col = tgt.position(&rz.concat(b)).expect("image stays in its cell");
                        m.flip(row, col);
                    }
                }
            }
            Some(m)
        } else if reported {
            // Top cell: no room for an image of higher cotor degree.
            Some(BitMatrix::zeros(src.len(), 0))
        } else {
            None
        };
        mats.push((src.len(), diff, Some(src.clone())));
    }
    finish_degree(internal, mats, keep)
}

/// Options for the cobar construction.
#[derive(Clone, Copy, Debug)]
pub struct CobarOptions {
    /// Largest cotor degree the construction may allocate.
    pub max_s: u32,
}

impl Default for CobarOptions {
    fn default() -> Self {
        CobarOptions { max_s: 6 }
    }
}

pub fn cotor_cobar(ca: &ComoduleAlgebra, max_total: u32) -> Result<CotorTable, CotorError> {
    cotor_cobar_with(ca, max_total, CobarOptions::default())
}

type Tensor = SmallVec<[u32; 8]>;

/// Reduced cobar complex `Λ̄^{⊗s} ⊗ M`.
pub fn cotor_cobar_with(
    ca: &ComoduleAlgebra,
    max_total: u32,
    opts: CobarOptions,
) -> Result<CotorTable, CotorError> {
    // every bar factor has total degree ≥ 1, so s ≤ (total)/2 on all cells touched
    let needed = max_total.div_ceil(2);
    if needed > opts.max_s {
        return Err(CotorError::SizeGuard { needed, bound: opts.max_s });
    }
    let hopf = ca.hopf();
    let bar: Vec<(Monomial, BiDegree)> = hopf
        .basis_up_to(max_total + 1)
        .into_iter()
        .filter(|m| !m.is_one())
        .map(|m| {
            let d = hopf.algebra().degree_of(&m);
            (m, d)
        })
        .collect();
    let bar_index: HashMap<Monomial, u32> =
        bar.iter().enumerate().map(|(i, (m, _))| (m.clone(), i as u32)).collect();
    let one = hopf.algebra().one_monomial();
    let reduced: Vec<Vec<(u32, u32)>> = bar
        .iter()
        .map(|(m, _)| {
            hopf.coproduct_pairs(m)
                .into_iter()
                .filter(|(l, r)| *l != one && *r != one)
                .map(|(l, r)| (bar_index[&l], bar_index[&r]))
                .collect()
        })
        .collect();
    let ctx = CobarContext { ca, bar: &bar, bar_index: &bar_index, reduced: &reduced };
    let trunc = Truncation::total(max_total);
    let results: Vec<Result<DegreeResult, CotorError>> = trunc
        .internal_degrees()
        .into_par_iter()
        .map(|d| ctx.degree(d, max_total as i32))
        .collect();
    let mut cells = BTreeMap::new();
    for r in results {
        cells.extend(r?.cells);
    }
    let complex =
        CochainComplex { method: Method::Cobar, truncation: trunc, ring: None, z_count: 0, cells };
    Ok(complex.cohomology())
}

struct CobarContext<'a> {
    ca: &'a ComoduleAlgebra,
    bar: &'a [(Monomial, BiDegree)],
    bar_index: &'a HashMap<Monomial, u32>,
    reduced: &'a [Vec<(u32, u32)>],
}

impl CobarContext<'_> {
    fn tensors(&self, s: usize, rem: BiDegree, prefix: &mut Tensor, out: &mut Vec<(Tensor, BiDegree)>) {
        if prefix.len() == s {
            out.push((prefix.clone(), rem));
            return;
        }
        let slots_left = (s - prefix.len()) as i32;
        for (i, (_, d)) in self.bar.iter().enumerate() {
            let r = rem - *d;
            if r.is_nonnegative() && r.total() >= slots_left - 1 {
                prefix.push(i as u32);
                self.tensors(s, r, prefix, out);
                prefix.pop();
            }
        }
    }

    fn cell_basis(&self, s: usize, internal: BiDegree) -> Vec<(Tensor, Monomial)> {
        let mut ts = Vec::new();
        self.tensors(s, internal, &mut SmallVec::new(), &mut ts);
        let mut out = Vec::new();
        let mut a_bases: HashMap<BiDegree, Vec<Monomial>> = HashMap::new();
        for (t, rem) in ts {
            let a = a_bases.entry(rem).or_insert_with(|| self.ca.algebra().monomial_basis(rem));
            for m in a.iter() {
                out.push((t.clone(), m.clone()));
            }
        }
        out
    }

    fn degree(&self, internal: BiDegree, max_total: i32) -> Result<DegreeResult, CotorError> {
        let s_top = (max_total - internal.total()).min(internal.total());
        if s_top < 0 {
            return Ok(DegreeResult { cells: Vec::new() });
        }
        let s_max = (s_top + 1).min(internal.total()) as usize;
        let bases: Vec<Vec<(Tensor, Monomial)>> = (0..=s_max).map(|s| self.cell_basis(s, internal)).collect();
        let one = self.ca.hopf().algebra().one_monomial();
        let mut mats = Vec::new();
        for s in 0..bases.len() {
            let reported = internal.total() + s as i32 <= max_total;
            let diff = if reported && s + 1 < bases.len() {
                let tgt: HashMap<&(Tensor, Monomial), usize> =
                    bases[s + 1].iter().enumerate().map(|(i, e)| (e, i)).collect();
                let mut m = BitMatrix::zeros(bases[s].len(), bases[s + 1].len());
                for (row, (t, a)) in bases[s].iter().enumerate() {
                    for k in 0..t.len() {
                        for &(l, r) in &self.reduced[t[k] as usize] {
                            let mut nt: Tensor = t[..k].iter().copied().collect();
                            nt.push(l);
                            nt.push(r);
                            nt.extend(t[k + 1..].iter().copied());
                            m.flip(row, tgt[&(nt, a.clone())]);
                        }
                    }
                    for (lam, p) in self.ca.coaction_split(a).iter() {
                        if *lam == one {
                            continue;
                        }
                        let mut nt = t.clone();
                        nt.push(self.bar_index[lam]);
                        for b in p.terms() {
                            m.flip(row, tgt[&(nt.clone(), b.clone())]);
                        }
                    }
                }
                Some(m)
            } else if reported {
                Some(BitMatrix::zeros(bases[s].len(), 0))
            } else {
                None
            };
            mats.push((bases[s].len(), diff, None));
        }
        finish_degree(internal, mats, false)
    }
}

/// One row of an exported table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CotorRow {
    pub s: u32,
    pub a: i32,
    pub b: i32,
    pub total: i32,
    pub hodge_a: i32,
    pub hodge_b: i32,
    pub dim: usize,
}

/// Nonzero Cotor dimensions by `(s, a, b)` within a total-degree truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotorTable {
    method: Method,
    max_total: u32,
    entries: BTreeMap<TriDegree, usize>,
}

impl CotorTable {
    pub fn method(&self) -> Method {
        self.method
    }

    pub fn max_total(&self) -> u32 {
        self.max_total
    }

    pub fn get(&self, t: TriDegree) -> usize {
        self.entries.get(&t).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<TriDegree, usize> {
        &self.entries
    }

    /// Dimensions summed by total degree, indices `0..=max_total`.
    pub fn total_dims(&self) -> Vec<usize> {
        let mut v = vec![0; self.max_total as usize + 1];
        for (t, &d) in &self.entries {
            v[t.total() as usize] += d;
        }
        v
    }

    /// Dimensions summed by cotor degree for one total degree.
    pub fn dims_by_s(&self, total: i32) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for (t, &d) in &self.entries {
            if t.total() == total {
                *m.entry(t.s).or_insert(0) += d;
            }
        }
        m
    }

    /// Same nonzero entries, ignoring the method tag.
    pub fn same_dims(&self, other: &CotorTable) -> bool {
        self.max_total == other.max_total && self.entries == other.entries
    }

    /// First entry where two tables differ.
    pub fn first_difference(&self, other: &CotorTable) -> Option<(TriDegree, usize, usize)> {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .copied()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|t| (t, self.get(t), other.get(t)))
            .find(|(_, x, y)| x != y)
    }

    pub fn rows(&self) -> Vec<CotorRow> {
        self.entries
            .iter()
            .map(|(t, &dim)| {
                let h = t.hodge();
                CotorRow { s: t.s, a: t.a, b: t.b, total: t.total(), hodge_a: h.a, hodge_b: h.b, dim }
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for row in self.rows() {
            out.serialize(row)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "method": self.method,
            "max_total": self.max_total,
            "rows": self.rows(),
        })
    }
}

/// Product of two classes represented in `R ⊗ PA`.
pub fn product_on_rpa(
    tc: &TwistingCochain,
    ca: &ComoduleAlgebra,
    (r1, p1): (&Poly, &Poly),
    (r2, p2): (&Poly, &Poly),
) -> Result<(Poly, Poly), CotorError> {
    for p in [p1, p2] {
        if !ca.is_primitive(p) {
            return Err(CotorError::NonPrimitive(ca.algebra().format_poly(p)));
        }
    }
    let r = tc.ring.multiply(r1, r2)?;
    let p = ca.algebra().multiply(p1, p2)?;
    Ok((r, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tc1(t: u32) -> TwistingCochain {
        TwistingCochain::new(Arc::new(HopfDescriptor::lambda1()), t)
    }

    #[test]
    fn theta_values() {
        let tc = tc1(16);
        let h = HopfDescriptor::lambda1();
        let x = |e: u16| Poly::monomial(Monomial::var(1, 0, e));
        let name = |p: Poly| tc.ring().format_poly(&p);
        assert_eq!(name(tc.theta(&x(1)).unwrap()), "z3");
        assert_eq!(name(tc.theta(&x(2)).unwrap()), "z5");
        assert_eq!(name(tc.theta(&x(4)).unwrap()), "z9");
        assert!(tc.theta(&x(3)).unwrap().is_zero());
        assert!(tc.theta(&x(20)).is_err());
        drop(h);

        let tc2 = TwistingCochain::new(Arc::new(HopfDescriptor::lambda2()), 8);
        let l2 = HopfDescriptor::lambda2();
        let x1x2 = Poly::monomial(l2.algebra().monomial_of(&[("x1", 1), ("x2", 1)]).unwrap());
        assert!(tc2.theta(&x1x2).unwrap().is_zero());
        let x1 = l2.algebra().gen("x1").unwrap();
        assert_eq!(tc2.ring().format_poly(&tc2.theta(&x1).unwrap()), "z2");
    }

    #[test]
    fn twisting_identity() {
        for flavor in [HopfFlavor::Lambda1, HopfFlavor::Lambda2, HopfFlavor::SingZ2, HopfFlavor::SingGm] {
            let tc = TwistingCochain::new(Arc::new(HopfDescriptor::for_flavor(flavor)), 32);
            let r = tc.check_equation(32);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn regular_comodule_differential() {
        let hopf = Arc::new(HopfDescriptor::lambda1());
        let tc = TwistingCochain::new(hopf.clone(), 8);
        let ca = ComoduleAlgebra::regular(hopf);
        let ring = tc.twisted_ring(&ca).unwrap();
        let x = ring.gen("x2'").unwrap();
        let d = twisted_differential(&tc, &ca, &x).unwrap();
        assert_eq!(ring.format_poly(&d), "z3");
    }

    #[test]
    fn trivial_comodule_gives_r() {
        let hopf = Arc::new(HopfDescriptor::lambda1());
        let tc = TwistingCochain::new(hopf.clone(), 8);
        let ca = ComoduleAlgebra::trivial(hopf);
        let table = cotor_twisted(&tc, &ca, 8).unwrap();
        let cobar = cotor_cobar(&ca, 8).unwrap();
        assert!(table.same_dims(&cobar));
        // R₁ = F₂[z3, z5, z9] with total degrees 3, 5, 9
        let expect: Vec<usize> = (0..=8)
            .map(|t| {
                (0..=t / 3).filter(|i| (t - 3 * i) % 5 == 0).count()
            })
            .collect();
        assert_eq!(table.total_dims(), expect);
    }

    #[test]
    fn acyclic_regular_comodules() {
        for flavor in [HopfFlavor::Lambda1, HopfFlavor::Lambda2] {
            let hopf = Arc::new(HopfDescriptor::for_flavor(flavor));
            let tc = TwistingCochain::new(hopf.clone(), 10);
            let ca = ComoduleAlgebra::regular(hopf);
            let table = cotor_twisted(&tc, &ca, 10).unwrap();
            assert_eq!(table.entries().len(), 1);
            assert_eq!(table.get(TriDegree::new(0, 0, 0)), 1);
        }
    }

    #[test]
    fn size_guard() {
        let ca = ComoduleAlgebra::trivial(Arc::new(HopfDescriptor::lambda1()));
        assert!(matches!(cotor_cobar(&ca, 13), Err(CotorError::SizeGuard { .. })));
    }
}
