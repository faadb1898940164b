//! Hopf-algebra descriptors, comodule algebras and the coefficient operators `d_i`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{kernel_basis, BitMatrix};
use crate::poly::{AlgebraError, BiDegree, DegreeBasis, GradedVariable, Monomial, Poly, PolyAlgebra};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComoduleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected {expected} generator images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("image of {generator} has a term of degree {found}, expected {expected}")]
    NotDegreePreserving { generator: String, expected: BiDegree, found: BiDegree },
}

/// `C(n, k) mod 2` by Lucas' theorem; zero outside `0 ≤ k ≤ n`.
pub fn binom_mod2(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (k & !n) == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HopfFlavor {
    /// `F₂[x₂]`, `|x₂| = (1,1)`.
    Lambda1,
    /// `F₂[x₁,x₂]/(x₁²)`, `|x₁| = (1,0)`, `|x₂| = (1,1)`.
    Lambda2,
    /// `F₂[z]` with `z` in total degree 1.
    SingZ2,
    /// `F₂[x]` with `x` in total degree 2.
    SingGm,
}

impl HopfFlavor {
    /// Smallest admissible `q` for a splitting element.
    pub fn min_sharp_q(self) -> usize {
        match self {
            HopfFlavor::Lambda1 | HopfFlavor::SingGm => 1,
            HopfFlavor::Lambda2 | HopfFlavor::SingZ2 => 2,
        }
    }

    /// Whether `d₂ₕ(ab)` only involves even indices, making `P₂A` a subring.
    pub fn even_multiplicative(self) -> bool {
        matches!(self, HopfFlavor::Lambda2)
    }

    pub fn name(self) -> &'static str {
        match self {
            HopfFlavor::Lambda1 => "lambda1",
            HopfFlavor::Lambda2 => "lambda2",
            HopfFlavor::SingZ2 => "sing_z2",
            HopfFlavor::SingGm => "sing_gm",
        }
    }
}

/// A connected polynomial Hopf algebra over GF(2), given on generators.
#[derive(Clone, Debug)]
pub struct HopfDescriptor {
    flavor: HopfFlavor,
    algebra: PolyAlgebra,
    doubled: PolyAlgebra,
    comultiplication: Vec<Poly>,
    counit: Vec<bool>,
}

impl HopfDescriptor {
    pub fn new(
        flavor: HopfFlavor,
        algebra: PolyAlgebra,
        comultiplication: Vec<Poly>,
        counit: Vec<bool>,
    ) -> Result<Self, ComoduleError> {
        let n = algebra.nvars();
        if comultiplication.len() != n || counit.len() != n {
            return Err(ComoduleError::WrongArity { expected: n, got: comultiplication.len() });
        }
        let doubled = algebra.doubled();
        for p in &comultiplication {
            doubled.check_poly(p)?;
        }
        Ok(HopfDescriptor { flavor, algebra, doubled, comultiplication, counit })
    }

    /// All generators primitive, counit zero on generators.
    pub fn primitively_generated(flavor: HopfFlavor, algebra: PolyAlgebra) -> Self {
        let n = algebra.nvars();
        let doubled = algebra.doubled();
        let comultiplication = (0..n)
            .map(|i| doubled.var_poly(i).plus(&doubled.var_poly(n + i)))
            .collect();
        HopfDescriptor { flavor, algebra, doubled, comultiplication, counit: vec![false; n] }
    }

    pub fn lambda1() -> Self {
        let alg = PolyAlgebra::new(vec![GradedVariable::new("x2", BiDegree::new(1, 1))]).unwrap();
        Self::primitively_generated(HopfFlavor::Lambda1, alg)
    }

    pub fn lambda2() -> Self {
        let alg = PolyAlgebra::new(vec![
            GradedVariable::capped("x1", BiDegree::new(1, 0), 1),
            GradedVariable::new("x2", BiDegree::new(1, 1)),
        ])
        .unwrap();
        Self::primitively_generated(HopfFlavor::Lambda2, alg)
    }

    /// Singular degrees are carried in the first slot of the bidegree.
    pub fn sing_z2() -> Self {
        let alg = PolyAlgebra::new(vec![GradedVariable::new("z", BiDegree::new(1, 0))]).unwrap();
        Self::primitively_generated(HopfFlavor::SingZ2, alg)
    }

    pub fn sing_gm() -> Self {
        let alg = PolyAlgebra::new(vec![GradedVariable::new("x", BiDegree::new(2, 0))]).unwrap();
        Self::primitively_generated(HopfFlavor::SingGm, alg)
    }

    pub fn for_flavor(flavor: HopfFlavor) -> Self {
        match flavor {
            HopfFlavor::Lambda1 => Self::lambda1(),
            HopfFlavor::Lambda2 => Self::lambda2(),
            HopfFlavor::SingZ2 => Self::sing_z2(),
            HopfFlavor::SingGm => Self::sing_gm(),
        }
    }

    pub fn flavor(&self) -> HopfFlavor {
        self.flavor
    }

    pub fn algebra(&self) -> &PolyAlgebra {
        &self.algebra
    }

    pub fn doubled(&self) -> &PolyAlgebra {
        &self.doubled
    }

    pub fn nvars(&self) -> usize {
        self.algebra.nvars()
    }

    /// `Δ(m)` in the doubled algebra, extended multiplicatively from generators.
    pub fn coproduct(&self, m: &Monomial) -> Poly {
        let mut out = self.doubled.one();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                let f = self.doubled.pow(&self.comultiplication[i], e as u32);
                out = self.doubled.mul(&out, &f);
            }
        }
        out
    }

    /// `Δ(m)` as a set of `(left, right)` pairs.
    pub fn coproduct_pairs(&self, m: &Monomial) -> Vec<(Monomial, Monomial)> {
        self.coproduct(m).terms().map(|t| t.split_at(self.nvars())).collect()
    }

    pub fn counit_of(&self, m: &Monomial) -> bool {
        m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || self.counit[i])
    }

    /// The basis monomial whose coaction coefficient defines `d_i`.
    pub fn d_index_monomial(&self, i: usize) -> Option<Monomial> {
        let n = self.nvars();
        let e = u16::try_from(i).ok()?;
        match self.flavor {
            HopfFlavor::Lambda1 | HopfFlavor::SingZ2 | HopfFlavor::SingGm => {
                (n == 1).then(|| Monomial::var(1, 0, e))
            }
            HopfFlavor::Lambda2 => {
                if n != 2 {
                    return None;
                }
                let mut m = Monomial::var(2, 1, e / 2);
                m.set_exp(0, e % 2);
                Some(m)
            }
        }
    }

    /// Inverse of [`HopfDescriptor::d_index_monomial`].
    pub fn d_index_of(&self, m: &Monomial) -> Option<usize> {
        match self.flavor {
            HopfFlavor::Lambda1 | HopfFlavor::SingZ2 | HopfFlavor::SingGm => {
                Some(m.exp(0) as usize)
            }
            HopfFlavor::Lambda2 => Some(2 * m.exp(1) as usize + m.exp(0) as usize),
        }
    }

    /// Degree lowered by `d_i`.
    pub fn d_shift(&self, i: usize) -> BiDegree {
        let m = self.d_index_monomial(i).expect("indexed flavor");
        self.algebra.degree_of(&m)
    }

    /// Largest `i` whose `d_i` can be nonzero on elements of degree `deg`.
    pub fn max_d_index(&self, deg: BiDegree) -> usize {
        let mut best = 0;
        let mut i = 1;
        loop {
            let s = self.d_shift(i);
            if s.total() > deg.total() {
                return best;
            }
            if s.le(deg) {
                best = i;
            }
            i += 1;
        }
    }

    /// Basis monomials of total degree `≤ max_total`, by increasing degree.
    pub fn basis_up_to(&self, max_total: u32) -> Vec<Monomial> {
        (0..=max_total as i32).flat_map(|t| self.algebra.monomial_basis(t)).collect()
    }
}

pub fn check_hopf_axioms(h: &HopfDescriptor, max_total: u32) -> Report {
    let mut report = Report::new(format!("Hopf axioms for {} up to degree {max_total}", h.flavor.name()));
    let alg = h.algebra();
    let n = h.nvars();
    for (i, g) in alg.variables().iter().enumerate() {
        let prim = h.doubled.var_poly(i).plus(&h.doubled.var_poly(n + i));
        report.check(h.comultiplication[i] == prim, || format!("generator {} is not primitive", g.name));
    }
    for m in h.basis_up_to(max_total) {
        let pairs = h.coproduct_pairs(&m);
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for (l, r) in &pairs {
            for (ll, lr) in h.coproduct_pairs(l) {
                toggle(&mut left, (ll, lr, r.clone()));
            }
            for (rl, rr) in h.coproduct_pairs(r) {
                toggle(&mut right, (l.clone(), rl, rr));
            }
        }
        report.check(left == right, || format!("coassociativity fails on {}", alg.format_monomial(&m)));
        let lcounit: Poly = pairs.iter().filter(|(l, _)| h.counit_of(l)).map(|(_, r)| r.clone()).collect();
        let rcounit: Poly = pairs.iter().filter(|(_, r)| h.counit_of(r)).map(|(l, _)| l.clone()).collect();
        let target = Poly::monomial(m.clone());
        report.check(lcounit == target && rcounit == target, || {
            format!("counit law fails on {}", alg.format_monomial(&m))
        });
    }
    report
}

fn toggle<T: Ord>(set: &mut BTreeSet<T>, t: T) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

/// Verifies that a linear map `g` on bases intertwines comultiplications and counits.
pub fn check_coalgebra_map(
    src: &HopfDescriptor,
    dst: &HopfDescriptor,
    g: &dyn Fn(&Monomial) -> Poly,
    max_total: u32,
) -> Report {
    let mut report = Report::new(format!(
        "coalgebra map {} -> {} up to degree {max_total}",
        src.flavor.name(),
        dst.flavor.name()
    ));
    let dn = dst.nvars();
    for m in src.basis_up_to(max_total) {
        let mut lhs = Poly::zero();
        for (l, r) in src.coproduct_pairs(&m) {
            let (gl, gr) = (g(&l), g(&r));
            for a in gl.terms() {
                for b in gr.terms() {
                    lhs.toggle(a.concat(b));
                }
            }
        }
        let mut rhs = Poly::zero();
        let gm = g(&m);
        for t in gm.terms() {
            rhs.add_assign(&dst.coproduct(t));
        }
        report.check(lhs == rhs, || format!("Δ not preserved on {}", src.algebra.format_monomial(&m)));
        let eps_dst = gm.terms().filter(|t| dst.counit_of(t)).count() % 2 == 1;
        report.check(eps_dst == src.counit_of(&m), || {
            format!("counit not preserved on {}", src.algebra.format_monomial(&m))
        });
        debug_assert!(gm.terms().all(|t| t.arity() == dn));
    }
    report
}

/// Coaction of one monomial, grouped by its Hopf-side monomial.
pub type Coaction = BTreeMap<Monomial, Poly>;

/// A polynomial algebra with a coaction that is a ring homomorphism.
#[derive(Debug)]
pub struct ComoduleAlgebra {
    name: String,
    hopf: Arc<HopfDescriptor>,
    algebra: PolyAlgebra,
    tensor: PolyAlgebra,
    generator_coactions: Vec<Arc<Coaction>>,
    cache: Mutex<HashMap<Monomial, Arc<Coaction>>>,
}

impl ComoduleAlgebra {
    /// `images[i]` is the coaction of generator `i`, a polynomial in Hopf ⊗ algebra variables.
    pub fn new(
        name: impl Into<String>,
        hopf: Arc<HopfDescriptor>,
        algebra: PolyAlgebra,
        images: Vec<Poly>,
    ) -> Result<Self, ComoduleError> {
        if images.len() != algebra.nvars() {
            return Err(ComoduleError::WrongArity { expected: algebra.nvars(), got: images.len() });
        }
        let tensor = hopf.algebra().tensor(&algebra)?;
        let k = hopf.nvars();
        let mut generator_coactions = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            tensor.check_poly(img)?;
            let expected = algebra.variable(i).degree;
            let mut split = Coaction::new();
            for t in img.terms() {
                let found = tensor.degree_of(t);
                if found != expected {
                    return Err(ComoduleError::NotDegreePreserving {
                        generator: algebra.variable(i).name.clone(),
                        expected,
                        found,
                    });
                }
                let (l, a) = t.split_at(k);
                split.entry(l).or_default().toggle(a);
            }
            split.retain(|_, p| !p.is_zero());
            generator_coactions.push(Arc::new(split));
        }
        Ok(ComoduleAlgebra {
            name: name.into(),
            hopf,
            algebra,
            tensor,
            generator_coactions,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// The Hopf algebra as a comodule over itself; algebra variables are primed.
    pub fn regular(hopf: Arc<HopfDescriptor>) -> Self {
        let algebra = PolyAlgebra::new(
            hopf.algebra()
                .variables()
                .iter()
                .map(|v| GradedVariable { name: format!("{}'", v.name), ..v.clone() })
                .collect(),
        )
        .expect("primed names are fresh");
        let images = (0..hopf.nvars()).map(|i| hopf.comultiplication[i].clone()).collect();
        let name = format!("{} over itself", hopf.flavor.name());
        Self::new(name, hopf, algebra, images).expect("comultiplication is degree preserving")
    }

    /// The ground field with trivial coaction.
    pub fn trivial(hopf: Arc<HopfDescriptor>) -> Self {
        let name = format!("trivial over {}", hopf.flavor.name());
        Self::new(name, hopf, PolyAlgebra::ground(), Vec::new()).expect("no generators")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn hopf(&self) -> &HopfDescriptor {
        &self.hopf
    }

    pub fn hopf_arc(&self) -> Arc<HopfDescriptor> {
        self.hopf.clone()
    }

    pub fn algebra(&self) -> &PolyAlgebra {
        &self.algebra
    }

    /// Hopf variables followed by algebra variables.
    pub fn tensor_algebra(&self) -> &PolyAlgebra {
        &self.tensor
    }

    pub fn generator_coaction(&self, i: usize) -> Poly {
        split_to_poly(&self.generator_coactions[i])
    }

    /// `φ(m)` grouped by Hopf-side monomial; cached.
    pub fn coaction_split(&self, m: &Monomial) -> Arc<Coaction> {
        if m.is_one() {
            let mut c = Coaction::new();
            c.insert(self.hopf.algebra().one_monomial(), self.algebra.one());
            return Arc::new(c);
        }
        if let Some(c) = self.cache.lock().expect("cache lock").get(m) {
            return c.clone();
        }
        let result = if m.exponents().iter().all(|e| e % 2 == 0) {
            let half = Monomial::from_exponents(&m.exponents().iter().map(|e| e / 2).collect::<Vec<_>>());
            self.square_split(&self.coaction_split(&half))
        } else {
            let i = m.exponents().iter().position(|e| e % 2 == 1).expect("odd exponent");
            let mut rest = m.clone();
            rest.set_exp(i, m.exp(i) - 1);
            let gen = self.generator_coactions[i].clone();
            self.mul_split(&gen, &self.coaction_split(&rest))
        };
        let result = Arc::new(result);
        self.cache.lock().expect("cache lock").insert(m.clone(), result.clone());
        result
    }

    fn mul_split(&self, x: &Coaction, y: &Coaction) -> Coaction {
        let h = self.hopf.algebra();
        let mut out = Coaction::new();
        for (l1, p1) in x {
            for (l2, p2) in y {
                if let Some(l) = h.mul_monomials(l1, l2) {
                    let p = self.algebra.mul(p1, p2);
                    out.entry(l).or_default().add_assign(&p);
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn square_split(&self, x: &Coaction) -> Coaction {
        let h = self.hopf.algebra();
        let mut out = Coaction::new();
        for (l, p) in x {
            if let Some(l2) = h.mul_monomials(l, l) {
                let p2 = self.algebra.square(p);
                if !p2.is_zero() {
                    out.insert(l2, p2);
                }
            }
        }
        out
    }

    /// `φ(p)` grouped by Hopf-side monomial.
    pub fn coaction_split_poly(&self, p: &Poly) -> Coaction {
        let mut out = Coaction::new();
        for m in p.terms() {
            for (l, q) in self.coaction_split(m).iter() {
                out.entry(l.clone()).or_default().add_assign(q);
            }
        }
        out.retain(|_, q| !q.is_zero());
        out
    }

    /// `φ(p)` in the tensor algebra.
    pub fn coaction(&self, p: &Poly) -> Result<Poly, ComoduleError> {
        self.algebra.check_poly(p)?;
        Ok(split_to_poly(&self.coaction_split_poly(p)))
    }

    /// Coefficient of the `i`-th Hopf basis monomial in `φ(p)`.
    pub fn d_op(&self, i: usize, p: &Poly) -> Poly {
        let Some(l) = self.hopf.d_index_monomial(i) else {
            return Poly::zero();
        };
        let mut out = Poly::zero();
        for m in p.terms() {
            if let Some(q) = self.coaction_split(m).get(&l) {
                out.add_assign(q);
            }
        }
        out
    }

    /// Matrix of `d_i` from the `deg` piece to the `deg − shift` piece (rows = target).
    pub fn d_matrix(&self, i: usize, src: &DegreeBasis, tgt: &DegreeBasis) -> BitMatrix {
        let l = self.hopf.d_index_monomial(i).expect("indexed flavor");
        let mut m = BitMatrix::zeros(tgt.len(), src.len());
        for (c, mono) in src.monomials().iter().enumerate() {
            if let Some(q) = self.coaction_split(mono).get(&l) {
                for t in q.terms() {
                    let r = tgt.position(t).expect("d_i is homogeneous");
                    m.flip(r, c);
                }
            }
        }
        m
    }

    pub fn basis(&self, deg: BiDegree) -> DegreeBasis {
        DegreeBasis::new(self.algebra.monomial_basis(deg))
    }

    /// Bidegrees of total degree `t` with nonempty monomial basis.
    pub fn occupied_bidegrees(&self, t: i32) -> Vec<BiDegree> {
        self.algebra
            .bidegrees_of_total(t)
            .into_iter()
            .filter(|&d| !self.algebra.monomial_basis(d).is_empty())
            .collect()
    }

    /// Basis of `{p : φ(p) = 1⊗p}` in bidegree `deg`.
    pub fn primitives(&self, deg: BiDegree) -> Vec<Poly> {
        let basis = self.basis(deg);
        let one = self.hopf.algebra().one_monomial();
        let mut rows: HashMap<(Monomial, Monomial), usize> = HashMap::new();
        let mut entries = Vec::new();
        for (c, m) in basis.monomials().iter().enumerate() {
            for (l, q) in self.coaction_split(m).iter() {
                if *l == one {
                    continue;
                }
                for t in q.terms() {
                    let n = rows.len();
                    let r = *rows.entry((l.clone(), t.clone())).or_insert(n);
                    entries.push((r, c));
                }
            }
        }
        let mut mat = BitMatrix::zeros(rows.len(), basis.len());
        for (r, c) in entries {
            mat.flip(r, c);
        }
        kernel_basis(&mat).iter().map(|v| basis.poly(v)).collect()
    }

    pub fn is_primitive(&self, p: &Poly) -> bool {
        if p.is_zero() {
            return true;
        }
        let c = self.coaction_split_poly(p);
        c.len() == 1 && c.get(&self.hopf.algebra().one_monomial()) == Some(p)
    }

    /// Monomials of total degree `≤ max_total`.
    pub fn monomials_up_to(&self, max_total: u32) -> Vec<Monomial> {
        (0..=max_total as i32).flat_map(|t| self.algebra.monomial_basis(t)).collect()
    }
}

fn split_to_poly(c: &Coaction) -> Poly {
    let mut out = Poly::zero();
    for (l, p) in c {
        for a in p.terms() {
            out.toggle(l.concat(a));
        }
    }
    out
}

/// Coassociativity, counit and the `d_i d_j = C(i+j,i) d_{i+j}` rule on all monomials.
pub fn check_comodule_axioms(ca: &ComoduleAlgebra, max_total: u32) -> Report {
    let mut report = Report::new(format!("comodule axioms for {} up to degree {max_total}", ca.name));
    let h = ca.hopf();
    let alg = ca.algebra();
    for m in ca.monomials_up_to(max_total) {
        let phi = ca.coaction_split(&m);
        let deg = alg.degree_of(&m);
        let name = || alg.format_monomial(&m);

        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for (l, p) in phi.iter() {
            for (ll, lr) in h.coproduct_pairs(l) {
                for a in p.terms() {
                    toggle(&mut left, (ll.clone(), lr.clone(), a.clone()));
                }
            }
            for a in p.terms() {
                for (mu, q) in ca.coaction_split(a).iter() {
                    for b in q.terms() {
                        toggle(&mut right, (l.clone(), mu.clone(), b.clone()));
                    }
                }
            }
        }
        report.check(left == right, || format!("coassociativity fails on {}", name()));

        let counit: Poly = phi
            .iter()
            .filter(|(l, _)| h.counit_of(l))
            .fold(Poly::zero(), |acc, (_, p)| acc.plus(p));
        report.check(counit == Poly::monomial(m.clone()), || format!("counit law fails on {}", name()));

        let preserved = phi
            .iter()
            .all(|(l, p)| p.terms().all(|a| h.algebra().degree_of(l) + alg.degree_of(a) == deg));
        report.check(preserved, || format!("coaction not degree preserving on {}", name()));

        let mono = Poly::monomial(m.clone());
        let bound = h.max_d_index(deg);
        let dj: Vec<Poly> = (0..=bound).map(|j| ca.d_op(j, &mono)).collect();
        for i in 1..=bound {
            for (j, d_mono) in dj.iter().enumerate().skip(1) {
                if !(h.d_shift(i) + h.d_shift(j)).le(deg) {
                    continue;
                }
                let lhs = ca.d_op(i, d_mono);
                let rhs = if binom_mod2((i + j) as i64, i as i64) {
                    ca.d_op(i + j, &mono)
                } else {
                    Poly::zero()
                };
                report.check(lhs == rhs, || format!("d-composition d{i}∘d{j} fails on {}", name()));
            }
        }
    }
    report
}

/// Verifies `(g⊗f)∘φ_src = φ_dst∘f` where `f` is the algebra map sending source
/// generator `i` to `f_images[i]` and `g` is linear on Hopf basis monomials.
pub fn check_comodule_map(
    f_images: &[Poly],
    src: &ComoduleAlgebra,
    dst: &ComoduleAlgebra,
    g: &dyn Fn(&Monomial) -> Poly,
    max_total: u32,
) -> Report {
    let mut report = Report::new(format!(
        "comodule map {} -> {} up to degree {max_total}",
        src.name(),
        dst.name()
    ));
    if f_images.len() != src.algebra().nvars() {
        report.fail(format!("expected {} generator images", src.algebra().nvars()));
        return report;
    }
    let f = |p: &Poly| src.algebra().map_hom(p, f_images, dst.algebra());
    for m in src.monomials_up_to(max_total) {
        let mut lhs = Coaction::new();
        for (l, p) in src.coaction_split(&m).iter() {
            let fp = f(p);
            if fp.is_zero() {
                continue;
            }
            for mu in g(l).terms() {
                lhs.entry(mu.clone()).or_default().add_assign(&fp);
            }
        }
        lhs.retain(|_, p| !p.is_zero());
        let rhs = dst.coaction_split_poly(&f(&Poly::monomial(m.clone())));
        report.check(lhs == rhs, || {
            format!("square fails on {}", src.algebra().format_monomial(&m))
        });
    }
    report
}
