//! Built-in comodule algebras, target presentations, degeneration checks and
//! Hodge/representation tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cotor::{cotor_twisted_truncated, CotorError, CotorTable, Truncation, TwistingCochain};
use crate::hopf::{binom_mod2, check_coalgebra_map, ComoduleAlgebra, ComoduleError, HopfDescriptor, HopfFlavor};
use crate::poly::{AlgebraError, BiDegree, GradedVariable, GradingMode, Monomial, Poly, PolyAlgebra, PresentedAlgebra};
use crate::report::Report;
use crate::toda::{index_sets, relation_pairs, relation_residue, ClassAlgebra, RelationFamily};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("invalid model: {0}")]
    BadModel(String),
    #[error(transparent)]
    Comodule(#[from] ComoduleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cotor(#[from] CotorError),
}

/// Names of the built-in models; parameters are the matrix size (or rank for `o2pow`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelId {
    /// `Λ₁` as a comodule over itself.
    Gm,
    /// `Λ₂` over itself.
    Mu2,
    /// `F₂[z]` over itself.
    SingZ2,
    /// `F₂[x]`, `|x| = 2`, over itself.
    SingCx,
    Gl(u32),
    Sp(u32),
    So(u32),
    O(u32),
    O2Power(u32),
    GlSing(u32),
    SpSing(u32),
    Trivial(HopfFlavor),
}

impl FromStr for ModelId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CatalogError::BadModel(s.to_string());
        let (head, param) = match s.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (s, None),
        };
        let num = || -> Result<u32, CatalogError> {
            let n: u32 = param.ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(n)
        };
        let even = || -> Result<u32, CatalogError> {
            let n = num()?;
            if n % 2 == 1 {
                return Err(CatalogError::BadModel(format!("{s}: size must be even")));
            }
            Ok(n)
        };
        let id = match head {
            "gm" => ModelId::Gm,
            "mu2" => ModelId::Mu2,
            "sing_z2" => ModelId::SingZ2,
            "sing_cx" => ModelId::SingCx,
            "gl" => ModelId::Gl(num()?),
            "sp" => ModelId::Sp(even()?),
            "so" => ModelId::So(even()?),
            "o" => ModelId::O(even()?),
            "o2pow" => ModelId::O2Power(num()?),
            "gl_sing" => ModelId::GlSing(num()?),
            "sp_sing" => ModelId::SpSing(even()?),
            "trivial" => ModelId::Trivial(match param.ok_or_else(bad)? {
                "lambda1" => HopfFlavor::Lambda1,
                "lambda2" => HopfFlavor::Lambda2,
                "sing_z2" => HopfFlavor::SingZ2,
                "sing_gm" => HopfFlavor::SingGm,
                _ => return Err(bad()),
            }),
            _ => return Err(bad()),
        };
        if param.is_some() && matches!(id, ModelId::Gm | ModelId::Mu2 | ModelId::SingZ2 | ModelId::SingCx) {
            return Err(bad());
        }
        Ok(id)
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelId::Gm => write!(f, "gm"),
            ModelId::Mu2 => write!(f, "mu2"),
            ModelId::SingZ2 => write!(f, "sing_z2"),
            ModelId::SingCx => write!(f, "sing_cx"),
            ModelId::Gl(n) => write!(f, "gl:{n}"),
            ModelId::Sp(n) => write!(f, "sp:{n}"),
            ModelId::So(n) => write!(f, "so:{n}"),
            ModelId::O(n) => write!(f, "o:{n}"),
            ModelId::O2Power(r) => write!(f, "o2pow:{r}"),
            ModelId::GlSing(n) => write!(f, "gl_sing:{n}"),
            ModelId::SpSing(n) => write!(f, "sp_sing:{n}"),
            ModelId::Trivial(h) => write!(f, "trivial:{}", h.name()),
        }
    }
}

impl ModelId {
    pub fn flavor(self) -> HopfFlavor {
        match self {
            ModelId::Gm | ModelId::Gl(_) => HopfFlavor::Lambda1,
            ModelId::Mu2 | ModelId::Sp(_) | ModelId::So(_) | ModelId::O(_) | ModelId::O2Power(_) => {
                HopfFlavor::Lambda2
            }
            ModelId::SingZ2 | ModelId::SpSing(_) => HopfFlavor::SingZ2,
            ModelId::SingCx | ModelId::GlSing(_) => HopfFlavor::SingGm,
            ModelId::Trivial(h) => h,
        }
    }

    /// Every family at small sizes, for axiom sweeps.
    pub fn samples() -> Vec<ModelId> {
        let mut v = vec![ModelId::Gm, ModelId::Mu2, ModelId::SingZ2, ModelId::SingCx];
        for n in 1..=6 {
            v.push(ModelId::Gl(n));
            v.push(ModelId::GlSing(n));
        }
        for n in [2, 4, 6] {
            v.extend([ModelId::Sp(n), ModelId::So(n), ModelId::O(n), ModelId::SpSing(n)]);
        }
        v.extend([ModelId::O2Power(1), ModelId::O2Power(2), ModelId::O2Power(3)]);
        v.extend([HopfFlavor::Lambda1, HopfFlavor::Lambda2, HopfFlavor::SingZ2, HopfFlavor::SingGm].map(ModelId::Trivial));
        v
    }
}

/// Builds `φ(generator)` polynomials from `(hopf exponents, algebra variable or 1)` terms.
struct ImageBuilder {
    tensor: PolyAlgebra,
    hopf_vars: usize,
}

impl ImageBuilder {
    fn new(hopf: &HopfDescriptor, alg: &PolyAlgebra) -> Result<Self, AlgebraError> {
        Ok(ImageBuilder { tensor: hopf.algebra().tensor(alg)?, hopf_vars: hopf.nvars() })
    }

    fn term(&self, hopf_exps: &[(usize, u16)], factor: Option<usize>) -> Monomial {
        let mut m = Monomial::one(self.tensor.nvars());
        for &(i, e) in hopf_exps {
            m.set_exp(i, e);
        }
        if let Some(v) = factor {
            m.set_exp(self.hopf_vars + v, 1);
        }
        m
    }
}

fn graded(names_degrees: impl IntoIterator<Item = (String, BiDegree)>) -> Result<PolyAlgebra, AlgebraError> {
    PolyAlgebra::new(names_degrees.into_iter().map(|(n, d)| GradedVariable::new(n, d)).collect())
}

/// `φ(c_i) = Σ C(n−i₂, i₁) λ^{step·i₁} ⊗ c_{i₂}` with `λ` the variable at `hopf_var`.
fn chern_like(
    name: String,
    hopf: Arc<HopfDescriptor>,
    n: u32,
    prefix: &str,
    degree: impl Fn(i32) -> BiDegree,
    hopf_var: usize,
    step: u16,
) -> Result<ComoduleAlgebra, CatalogError> {
    let alg = graded((1..=n as i32).map(|i| (format!("{prefix}{i}"), degree(i))))?;
    let b = ImageBuilder::new(&hopf, &alg)?;
    let images = (1..=n as i64)
        .map(|i| {
            let mut p = Poly::zero();
            for i2 in 0..=i {
                let i1 = i - i2;
                if binom_mod2(n as i64 - i2, i1) {
                    let var = (i2 > 0).then(|| i2 as usize - 1);
                    p.toggle(b.term(&[(hopf_var, step * i1 as u16)], var));
                }
            }
            p
        })
        .collect();
    Ok(ComoduleAlgebra::new(name, hopf, alg, images)?)
}

/// The orthogonal models; `with_u1` keeps `u₁` (the full orthogonal group).
fn orthogonal(name: String, r: u32, with_u1: bool) -> Result<ComoduleAlgebra, CatalogError> {
    let hopf = Arc::new(HopfDescriptor::lambda2());
    let first = if with_u1 { 1 } else { 2 };
    let indices: Vec<i32> = (first..=2 * r as i32).collect();
    let deg = |k: i32| if k % 2 == 0 { BiDegree::new(k / 2, k / 2) } else { BiDegree::new(k / 2, k / 2 + 1) };
    let alg = graded(indices.iter().map(|&k| (format!("u{k}"), deg(k))))?;
    let b = ImageBuilder::new(&hopf, &alg)?;
    // variable index of u_k, `None` for u₀ = 1; `Err` when u_k vanishes
    let var = |k: i32| -> Result<Option<usize>, ()> {
        match k {
            0 => Ok(None),
            k if k < first => Err(()),
            k => Ok(Some((k - first) as usize)),
        }
    };
    let r = r as i64;
    let images = indices
        .iter()
        .map(|&k| {
            let a = (k / 2) as i64;
            let mut p = Poly::zero();
            for j in 0..=a {
                let i = a - j;
                // odd generators see one fewer free torus coordinate
                let top = if k % 2 == 0 { r - j } else { r - 1 - j };
                if !binom_mod2(top, i) {
                    continue;
                }
                if k % 2 == 0 {
                    if let Ok(v) = var(2 * j as i32) {
                        p.toggle(b.term(&[(1, i as u16)], v));
                    }
                    if let Ok(v) = var(2 * j as i32 - 1) {
                        p.toggle(b.term(&[(0, 1), (1, i as u16)], v));
                    }
                } else if let Ok(v) = var(2 * j as i32 + 1) {
                    p.toggle(b.term(&[(1, i as u16)], v));
                }
            }
            p
        })
        .collect();
    Ok(ComoduleAlgebra::new(name, hopf, alg, images)?)
}

/// `H(BO₂)^{⊗r}`: `s_i ↦ 1⊗s_i`, `t_i ↦ 1⊗t_i + x₂⊗1 + x₁⊗s_i`.
fn o2_power(name: String, r: u32) -> Result<ComoduleAlgebra, CatalogError> {
    let hopf = Arc::new(HopfDescriptor::lambda2());
    let r = r as usize;
    let alg = graded(
        (1..=r)
            .map(|i| (format!("s{i}"), BiDegree::new(0, 1)))
            .chain((1..=r).map(|i| (format!("t{i}"), BiDegree::new(1, 1)))),
    )?;
    let b = ImageBuilder::new(&hopf, &alg)?;
    let mut images: Vec<Poly> = (0..r).map(|i| Poly::monomial(b.term(&[], Some(i)))).collect();
    for i in 0..r {
        images.push(Poly::from_monomials([
            b.term(&[], Some(r + i)),
            b.term(&[(1, 1)], None),
            b.term(&[(0, 1)], Some(i)),
        ]));
    }
    Ok(ComoduleAlgebra::new(name, hopf, alg, images)?)
}

pub fn model(id: ModelId) -> Result<ComoduleAlgebra, CatalogError> {
    let name = id.to_string();
    let hopf = Arc::new(HopfDescriptor::for_flavor(id.flavor()));
    match id {
        ModelId::Gm | ModelId::Mu2 | ModelId::SingZ2 | ModelId::SingCx => Ok(ComoduleAlgebra::regular(hopf)),
        ModelId::Trivial(_) => Ok(ComoduleAlgebra::trivial(hopf)),
        ModelId::Gl(n) => chern_like(name, hopf, n, "c", |i| BiDegree::new(i, i), 0, 1),
        ModelId::Sp(n) => chern_like(name, hopf, n / 2, "q", |i| BiDegree::new(2 * i, 2 * i), 1, 2),
        ModelId::GlSing(n) => chern_like(name, hopf, n, "c", |i| BiDegree::new(2 * i, 0), 0, 1),
        ModelId::SpSing(n) => chern_like(name, hopf, n / 2, "q", |i| BiDegree::new(4 * i, 0), 0, 4),
        ModelId::So(n) => orthogonal(name, n / 2, false),
        ModelId::O(n) => orthogonal(name, n / 2, true),
        ModelId::O2Power(r) => o2_power(name, r),
    }
}

/// Images of `u_k` in `F₂[s₁..s_r, t₁..t_r]` for the orthogonal model `src` of `O_{2r}` or `SO_{2r}`.
pub fn o2r_pullback_images(src: &ComoduleAlgebra, dst: &ComoduleAlgebra, r: u32) -> Result<Vec<Poly>, CatalogError> {
    let r = r as usize;
    let d = dst.algebra();
    let s = |i: usize| d.var_poly(i);
    let t = |i: usize| d.var_poly(r + i);
    // e_a of the t's, skipping index `skip`
    let elementary = |a: usize, skip: Option<usize>| -> Poly {
        let idx: Vec<usize> = (0..r).filter(|&i| Some(i) != skip).collect();
        let mut out = Poly::zero();
        for mask in 0u32..1 << idx.len() {
            if mask.count_ones() as usize == a {
                let factors: Vec<Poly> = idx.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| t(i)).collect();
                out.add_assign(&d.product(factors.iter()));
            }
        }
        out
    };
    src.algebra()
        .variables()
        .iter()
        .map(|v| {
            let k: usize = v.name.trim_start_matches('u').parse().map_err(|_| CatalogError::BadModel(v.name.clone()))?;
            let a = k / 2;
            Ok(if k.is_multiple_of(2) {
                elementary(a, None)
            } else {
                let mut p = Poly::zero();
                for j in 0..r {
                    p.add_assign(&d.mul(&s(j), &elementary(a, Some(j))));
                }
                p
            })
        })
        .collect()
}

/// Applies the pullback to one polynomial.
pub fn o2r_pullback(src: &ComoduleAlgebra, dst: &ComoduleAlgebra, r: u32, p: &Poly) -> Result<Poly, CatalogError> {
    let images = o2r_pullback_images(src, dst, r)?;
    Ok(src.algebra().map_hom(p, &images, dst.algebra()))
}

/// `c_{2h} ↦ q_h`, `c_{2h+1} ↦ 0`.
pub fn restriction_images(gl: &ComoduleAlgebra, sp: &ComoduleAlgebra) -> Vec<Poly> {
    (1..=gl.algebra().nvars())
        .map(|i| if i % 2 == 0 { sp.algebra().var_poly(i / 2 - 1) } else { Poly::zero() })
        .collect()
}

/// `Λ₁ → Λ₂`, `x₂^i ↦ x₂^i`.
pub fn center_restriction(m: &Monomial) -> Poly {
    Poly::monomial(Monomial::from_exponents(&[0, m.exp(0)]))
}

/// `x₂^i ↦ z^{2i}`, `x₁x₂^i ↦ z^{2i+1}`.
pub fn psi(m: &Monomial) -> Poly {
    Poly::monomial(Monomial::var(1, 0, 2 * m.exp(1) + m.exp(0)))
}

/// `ψ` is a coalgebra map and a bijection on bases up to `max_total`.
pub fn check_psi(max_total: u32) -> Report {
    let l2 = HopfDescriptor::lambda2();
    let sz = HopfDescriptor::sing_z2();
    let mut report = check_coalgebra_map(&l2, &sz, &psi, max_total);
    report.title = format!("ψ: Λ₂ → F₂[z] is a coalgebra isomorphism up to degree {max_total}");
    let images: Vec<Poly> = l2.basis_up_to(max_total).iter().map(psi).collect();
    let mut seen: Vec<Monomial> = images.iter().flat_map(|p| p.terms().cloned()).collect();
    seen.sort();
    seen.dedup();
    report.check(images.iter().all(|p| p.len() == 1) && seen.len() == images.len(), || "ψ is not injective on monomials".into());
    report.check(seen.len() == sz.basis_up_to(max_total).len(), || "ψ is not surjective".into());
    report
}

/// `(1⊗π)∘φ_O = φ_{O₂^r}∘π` for the O model of rank `r`, and the quotient `u₁ ↦ 0`
/// from O to SO is a comodule map.
pub fn check_pullback_square(r: u32, max_total: u32) -> Result<Report, CatalogError> {
    let dst = model(ModelId::O2Power(r))?;
    let full = model(ModelId::O(2 * r))?;
    let special = model(ModelId::So(2 * r))?;
    let mut report = Report::new(format!("O₂^r pullback square for r = {r} up to degree {max_total}"));
    let id_map = |m: &Monomial| Poly::monomial(m.clone());
    let images = o2r_pullback_images(&full, &dst, r)?;
    report.absorb(crate::hopf::check_comodule_map(&images, &full, &dst, &id_map, max_total));
    let quotient: Vec<Poly> = std::iter::once(Poly::zero())
        .chain((0..special.algebra().nvars()).map(|i| special.algebra().var_poly(i)))
        .collect();
    report.absorb(crate::hopf::check_comodule_map(&quotient, &full, &special, &id_map, max_total));
    Ok(report)
}

/// Restriction `GL_{2n} → Sp_{2n}` intertwines the coactions up to `max_total`.
pub fn check_restriction_square(n: u32, max_total: u32) -> Result<Report, CatalogError> {
    let gl = model(ModelId::Gl(2 * n))?;
    let sp = model(ModelId::Sp(2 * n))?;
    let images = restriction_images(&gl, &sp);
    Ok(crate::hopf::check_comodule_map(&images, &gl, &sp, &center_restriction, max_total))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Pgl,
    Pso,
    Psp,
}

impl FromStr for Group {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pgl" => Ok(Group::Pgl),
            "pso" => Ok(Group::Pso),
            "psp" => Ok(Group::Psp),
            _ => Err(CatalogError::BadModel(format!("unknown group {s}"))),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Pgl => "pgl",
            Group::Pso => "pso",
            Group::Psp => "psp",
        })
    }
}

impl Group {
    /// The Hodge-side model and its size `4m+2`.
    pub fn model_id(self, m: u32) -> ModelId {
        let n = 4 * m + 2;
        match self {
            Group::Pgl => ModelId::Gl(n),
            Group::Pso => ModelId::So(n),
            Group::Psp => ModelId::Sp(n),
        }
    }
}

/// Generators and relations of the projective groups' cohomology rings.
#[derive(Clone, Debug)]
pub struct TargetPresentation {
    pub group: Group,
    pub m: u32,
    pub algebra: PresentedAlgebra,
}

struct Symbolic<'a> {
    alg: &'a PolyAlgebra,
    y: BTreeMap<Vec<usize>, usize>,
    b: BTreeMap<usize, usize>,
    x: usize,
}

impl ClassAlgebra for Symbolic<'_> {
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.alg.mul(a, b)
    }
    fn y(&self, set: &[usize]) -> Poly {
        self.alg.var_poly(self.y[set])
    }
    fn b(&self, h: usize) -> Poly {
        self.alg.var_poly(self.b[&h])
    }
    fn x(&self) -> Poly {
        self.alg.var_poly(self.x)
    }
}

pub fn y_name(set: &[usize]) -> String {
    format!("y{}", set.iter().map(usize::to_string).collect::<Vec<_>>().join("_"))
}

/// PGL: `x₂, x₃, b_h, y_I` with the linear-family relations (`x₂` as the correction class)
/// and `x₃y_I = 0`. PSO: `x₂, b_h, y_I` with the orthogonal-family relations and `x₂y_I = 0`.
pub fn target_presentation(group: Group, m: u32) -> Result<TargetPresentation, CatalogError> {
    let mu = m as usize;
    let sets = index_sets(mu);
    let d = |s: &[usize]| s.iter().sum::<usize>() as i32;
    let mut vars = vec![GradedVariable::new("x2", BiDegree::new(1, 1))];
    let (family, killer) = match group {
        Group::Pgl => {
            vars.push(GradedVariable::new("x3", BiDegree::new(1, 2)));
            for h in 2..=2 * m as i32 + 1 {
                vars.push(GradedVariable::new(format!("b{h}"), BiDegree::new(4 * h, 4 * h)));
            }
            for s in &sets {
                vars.push(GradedVariable::new(y_name(s), BiDegree::new(2 * d(s) - 1, 2 * d(s) - 1)));
            }
            (RelationFamily::Linear, 1)
        }
        Group::Pso => {
            for h in 2..=2 * m as i32 + 1 {
                vars.push(GradedVariable::new(format!("b{h}"), BiDegree::new(2 * h, 2 * h)));
            }
            for s in &sets {
                vars.push(GradedVariable::new(y_name(s), BiDegree::new(d(s) - 1, d(s))));
            }
            (RelationFamily::Orthogonal, 0)
        }
        Group::Psp => return Err(CatalogError::BadModel("no closed presentation is used for psp".into())),
    };
    let alg = PolyAlgebra::new(vars)?;
    let sym = Symbolic {
        alg: &alg,
        y: sets.iter().map(|s| (s.clone(), alg.var_index(&y_name(s)).expect("declared"))).collect(),
        b: (2..=2 * mu + 1).map(|h| (h, alg.var_index(&format!("b{h}")).expect("declared"))).collect(),
        x: 0,
    };
    let mut rels = Vec::new();
    for (i, j) in relation_pairs(family, mu) {
        rels.push(relation_residue(&sym, family, &i, &j));
    }
    for s in &sets {
        rels.push(alg.mul(&alg.var_poly(killer), &sym.y(s)));
    }
    let algebra = PresentedAlgebra::new(alg, rels, GradingMode::BiDegree)?;
    Ok(TargetPresentation { group, m, algebra })
}

/// Per-degree comparison of two Poincaré series.
#[derive(Clone, Debug, Serialize)]
pub struct DegenerationReport {
    pub group: Group,
    pub m: u32,
    pub max_total: u32,
    pub expected_label: String,
    pub actual_label: String,
    /// `(total, expected, actual)`.
    pub rows: Vec<(u32, usize, usize)>,
}

impl DegenerationReport {
    pub fn first_mismatch(&self) -> Option<(u32, usize, usize)> {
        self.rows.iter().copied().find(|(_, e, a)| e != a)
    }

    pub fn passed(&self) -> bool {
        self.first_mismatch().is_none()
    }
}

/// Cotor over the model's Hopf algebra up to `max_total`, through the twisted complex.
pub fn cotor_of(ca: &ComoduleAlgebra, truncation: Truncation) -> Result<CotorTable, CatalogError> {
    let tc = TwistingCochain::new(ca.hopf_arc(), truncation.max_total);
    Ok(cotor_twisted_truncated(&tc, ca, truncation)?)
}

/// PGL/PSO: presentation series against Cotor. PSP: Hodge-side Cotor against singular-side Cotor.
pub fn degeneration_check(group: Group, m: u32, max_total: u32) -> Result<DegenerationReport, CatalogError> {
    let hodge = model(group.model_id(m))?;
    let actual = cotor_of(&hodge, Truncation::total(max_total))?.total_dims();
    let (expected, expected_label) = match group {
        Group::Pgl | Group::Pso => {
            let p = target_presentation(group, m)?;
            (p.algebra.poincare_coeffs(max_total), "presentation".to_string())
        }
        Group::Psp => {
            let sing = model(ModelId::SpSing(4 * m + 2))?;
            (cotor_of(&sing, Truncation::total(max_total))?.total_dims(), "singular cotor".to_string())
        }
    };
    let rows = (0..=max_total).map(|t| (t, expected[t as usize], actual[t as usize])).collect();
    Ok(DegenerationReport {
        group,
        m,
        max_total,
        expected_label,
        actual_label: "hodge cotor".into(),
        rows,
    })
}

/// Dimensions by Hodge bidegree `(a, b + s)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeTable {
    entries: BTreeMap<(i32, i32), usize>,
}

impl HodgeTable {
    pub fn from_cotor(ct: &CotorTable) -> Self {
        let mut entries = BTreeMap::new();
        for (t, &d) in ct.entries() {
            let h = t.hodge();
            *entries.entry((h.a, h.b)).or_insert(0) += d;
        }
        HodgeTable { entries }
    }

    pub fn get(&self, a: i32, b: i32) -> usize {
        self.entries.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(i32, i32), usize> {
        &self.entries
    }

    /// Bidegrees of one total degree with nonzero dimension.
    pub fn at_total(&self, total: i32) -> Vec<((i32, i32), usize)> {
        self.entries.iter().filter(|((a, b), _)| a + b == total).map(|(&k, &v)| (k, v)).collect()
    }

    /// `H^j(G, Sym^i)` read off at `(i, i + j)`.
    pub fn rep_dims(&self, i: i32, j: i32) -> usize {
        self.get(i, i + j)
    }

    /// Entries with `a > b`.
    pub fn positivity_violations(&self) -> Vec<(i32, i32)> {
        self.entries.keys().copied().filter(|(a, b)| a > b).collect()
    }
}

/// Number of ways to write `i − j` with parts `1` and `4h`, `2 ≤ h ≤ 2m+1`.
pub fn pgl_counting_formula(m: u32, i: i32, j: i32) -> usize {
    if i < j {
        return 0;
    }
    let n = (i - j) as usize;
    let parts: Vec<usize> = std::iter::once(1).chain((2..=2 * m as usize + 1).map(|h| 4 * h)).collect();
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for p in parts {
        for k in p..=n {
            ways[k] += ways[k - p];
        }
    }
    ways[n]
}

/// `dim H^j(G, Sym^i)` for `0 ≤ i ≤ i_max`, `0 ≤ j ≤ j_max`.
#[derive(Clone, Debug, Serialize)]
pub struct RepTable {
    pub group: Group,
    pub m: u32,
    pub cells: Vec<Vec<usize>>,
}

/// Cotor restricted to Hodge `a ≤ i_max`, `b − a ≤ j_max`.
pub fn hodge_table_for(group: Group, m: u32, i_max: u32, j_max: u32) -> Result<HodgeTable, CatalogError> {
    let ca = model(group.model_id(m))?;
    let trunc = Truncation { max_total: 2 * i_max + j_max, max_a: Some(i_max as i32) };
    Ok(HodgeTable::from_cotor(&cotor_of(&ca, trunc)?))
}

/// The table plus its internal cross-checks: the counting formula for PGL,
/// the non-pure primitives for PSO.
pub fn rep_table(group: Group, m: u32, i_max: u32, j_max: u32) -> Result<(RepTable, Report), CatalogError> {
    let ht = hodge_table_for(group, m, i_max, j_max)?;
    let cells: Vec<Vec<usize>> = (0..=i_max as i32)
        .map(|i| (0..=j_max as i32).map(|j| ht.rep_dims(i, j)).collect())
        .collect();
    let mut report = Report::new(format!("{group} m = {m} representation table cross-checks"));
    match group {
        Group::Pgl => {
            for i in 0..=i_max as i32 {
                for j in 1..=j_max as i32 {
                    let (got, want) = (cells[i as usize][j as usize], pgl_counting_formula(m, i, j));
                    report.check(got == want, || format!("(i={i}, j={j}): cotor {got}, counting formula {want}"));
                }
            }
        }
        Group::Pso => {
            let (nonpure, r) = pso_nonpure_table(m, 2 * i_max + j_max)?;
            report.absorb(r);
            for ((i, j), d) in nonpure {
                if i <= i_max as i32 && j <= j_max as i32 {
                    let got = cells[i as usize][j as usize];
                    report.check(got == d, || format!("(i={i}, j={j}): cotor {got}, primitives {d}"));
                }
            }
        }
        Group::Psp => {}
    }
    Ok((RepTable { group, m, cells }, report))
}

/// `dim` of the primitives of the SO model at `(i, i + j)`, `j ≥ 1`, `2i + j ≤ max_total`,
/// checked against the non-pure part of the full Hodge table.
/// Dimensions keyed by `(i, i + j)`.
pub type HodgeCells = BTreeMap<(i32, i32), usize>;

pub fn pso_nonpure_table(m: u32, max_total: u32) -> Result<(HodgeCells, Report), CatalogError> {
    let ca = model(ModelId::So(4 * m + 2))?;
    let ht = HodgeTable::from_cotor(&cotor_of(&ca, Truncation::total(max_total))?);
    let mut table = BTreeMap::new();
    let mut report = Report::new(format!("non-pure primitives of so:{} match the Hodge table", 4 * m + 2));
    let t = max_total as i32;
    for i in 0..=t / 2 {
        for j in 1..=t - 2 * i {
            let d = ca.primitives(BiDegree::new(i, i + j)).len();
            if d > 0 {
                table.insert((i, j), d);
            }
            let h = ht.get(i, i + j);
            report.check(h == d, || format!("(i={i}, j={j}): primitives {d}, hodge table {h}"));
        }
    }
    Ok((table, report))
}

/// One generator in a model file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    pub deg: [i32; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
}

/// JSON description of a custom comodule algebra. The coaction lists, per generator,
/// pairs of monomials `"x2^2"`, `"c1*c2"` or `"1"` on the Hopf and algebra sides.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub hopf: HopfFlavor,
    pub variables: Vec<VariableSpec>,
    pub coaction: BTreeMap<String, Vec<[String; 2]>>,
}

fn parse_monomial(alg: &PolyAlgebra, s: &str) -> Result<Monomial, CatalogError> {
    let s = s.trim();
    if s == "1" {
        return Ok(alg.one_monomial());
    }
    let mut pairs = Vec::new();
    for factor in s.split('*') {
        let (name, exp) = match factor.trim().split_once('^') {
            Some((n, e)) => (n.trim(), e.trim().parse::<u16>().map_err(|_| CatalogError::BadModel(format!("bad exponent in {s}")))?),
            None => (factor.trim(), 1),
        };
        pairs.push((name.to_string(), exp));
    }
    let refs: Vec<(&str, u16)> = pairs.iter().map(|(n, e)| (n.as_str(), *e)).collect();
    Ok(alg.monomial_of(&refs)?)
}

impl ModelFile {
    pub fn build(&self, name: impl Into<String>) -> Result<ComoduleAlgebra, CatalogError> {
        let hopf = Arc::new(HopfDescriptor::for_flavor(self.hopf));
        let vars = self
            .variables
            .iter()
            .map(|v| {
                let d = BiDegree::new(v.deg[0], v.deg[1]);
                match v.cap {
                    Some(c) => GradedVariable::capped(v.name.clone(), d, c),
                    None => GradedVariable::new(v.name.clone(), d),
                }
            })
            .collect();
        let alg = PolyAlgebra::new(vars)?;
        for key in self.coaction.keys() {
            alg.var_index(key)?;
        }
        let b = ImageBuilder::new(&hopf, &alg)?;
        let mut images = Vec::new();
        for v in &self.variables {
            let terms = self
                .coaction
                .get(&v.name)
                .ok_or_else(|| CatalogError::BadModel(format!("no coaction for {}", v.name)))?;
            let mut p = Poly::zero();
            for [l, a] in terms {
                let lm = parse_monomial(hopf.algebra(), l)?;
                let am = parse_monomial(&alg, a)?;
                p.toggle(lm.concat(&am));
            }
            b.tensor.check_poly(&p)?;
            images.push(p);
        }
        Ok(ComoduleAlgebra::new(name, hopf, alg, images)?)
    }
}
