//! Modules over `A = 𝒫(P, Q)`, the induced Poisson `Q`-module on `U ⊗ V`, and presentations of
//! the two left adjoints of the tensor functors.
//!
//! The adjoints are emitted as generators and relations only. No normal forms are computed in
//! them; relation coefficients are reduced in `A` and free-module operators are kept formal.

use std::fmt;

use crate::algebra::matrix::{matrix_sum, ring_matrix_product, RingMatrix};
use crate::algebra::poly::{PolyRing, Polynomial, TermOrder};
use crate::algebra::scalar::{Field, Scalar};
use crate::error::{Error, Result};
use crate::poisson::{verify_poisson_module, PoissonModuleStructure, PoissonStructure};
use crate::universal::{universal_algebra, UniversalPresentation};

/// A finite-dimensional left `A`-module, given by one action matrix per generator `x_{si}`.
///
/// `x_{si} · v_c = Σ_t γ_{s,i,c}^t v_t`, so column `c` of `action(s, i)` holds `γ_{s,i,c}^·`.
#[derive(Clone, Debug)]
pub struct AModuleStructure {
    presentation: UniversalPresentation,
    dim: usize,
    actions: Vec<RingMatrix<Scalar>>,
}

impl AModuleStructure {
    /// `actions[s * m + i]` is the matrix of `x_{si}`. Fails unless the matrices commute and
    /// every relation of `A` evaluates to zero on them.
    pub fn new(presentation: UniversalPresentation, actions: Vec<RingMatrix<Scalar>>) -> Result<Self> {
        let vars = presentation.n() * presentation.m();
        if actions.len() != vars {
            return Err(Error::dimension(format!("need {vars} action matrices, got {}", actions.len())));
        }
        let dim = actions[0].rows();
        if dim == 0 {
            return Err(Error::input("module dimension must be positive"));
        }
        let field = presentation.field();
        for a in &actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::dimension("action matrices must be square of one size"));
            }
            if a.entries().iter().any(|c| c.field() != field) {
                return Err(Error::input("action entries lie in a different field"));
            }
        }
        for (k, a) in actions.iter().enumerate() {
            for b in &actions[k + 1..] {
                if ring_matrix_product(&field, a, b)? != ring_matrix_product(&field, b, a)? {
                    return Err(Error::Verification("action matrices do not commute".into()));
                }
            }
        }
        let v = AModuleStructure {
            presentation,
            dim,
            actions,
        };
        let zero = RingMatrix::filled(&field, dim, dim);
        for r in v.presentation.all_relations() {
            if v.evaluate(&r.polynomial)? != zero {
                return Err(Error::Verification(format!(
                    "action does not factor through the relations: {} fails",
                    r.label()
                )));
            }
        }
        Ok(v)
    }

    /// The one-dimensional module attached to an algebra map `A → k` with values `theta`.
    pub fn from_point(presentation: UniversalPresentation, theta: &RingMatrix<Scalar>) -> Result<Self> {
        let actions = theta
            .entries()
            .iter()
            .map(|c| RingMatrix::from_fn(1, 1, |_, _| c.clone()))
            .collect();
        Self::new(presentation, actions)
    }

    /// `x_{ij}` acting by `δ_{ij}` on `k`; valid on `𝒫(P)` where it is the counit.
    pub fn counit(presentation: UniversalPresentation) -> Result<Self> {
        let f = presentation.field();
        let theta = RingMatrix::from_fn(presentation.n(), presentation.m(), |s, i| {
            if s == i {
                f.one()
            } else {
                f.zero()
            }
        });
        Self::from_point(presentation, &theta)
    }

    pub fn presentation(&self) -> &UniversalPresentation {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.presentation.field()
    }

    pub fn action(&self, s: usize, i: usize) -> &RingMatrix<Scalar> {
        &self.actions[self.presentation.var_index(s, i)]
    }

    pub fn actions(&self) -> &[RingMatrix<Scalar>] {
        &self.actions
    }

    /// `γ_{s,i,c}^t`.
    pub fn constant(&self, s: usize, i: usize, c: usize, t: usize) -> &Scalar {
        self.action(s, i).get(t, c)
    }

    /// The matrix by which a polynomial in the generators acts.
    pub fn evaluate(&self, p: &Polynomial) -> Result<RingMatrix<Scalar>> {
        let f = self.field();
        let mut total = RingMatrix::filled(&f, self.dim, self.dim);
        for (mono, c) in p.terms() {
            let mut term = RingMatrix::from_fn(self.dim, self.dim, |r, k| if r == k { c.clone() } else { f.zero() });
            for (k, &e) in mono.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = ring_matrix_product(&f, &term, &self.actions[k])?;
                }
            }
            total = matrix_sum(&f, &total, &term)?;
        }
        Ok(total)
    }
}

/// Whether `phi: V₁ → V₂` (a `dim V₂ × dim V₁` matrix) commutes with every generator action.
pub fn is_a_module_map(v1: &AModuleStructure, v2: &AModuleStructure, phi: &RingMatrix<Scalar>) -> Result<bool> {
    if phi.rows() != v2.dim || phi.cols() != v1.dim || v1.actions.len() != v2.actions.len() {
        return Err(Error::dimension("map does not fit the modules"));
    }
    let f = v1.field();
    for (a, b) in v1.actions.iter().zip(&v2.actions) {
        if ring_matrix_product(&f, phi, a)? != ring_matrix_product(&f, b, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Kronecker product; basis `l ⊗ t` has index `l * dim(b) + t`.
pub fn kronecker(a: &RingMatrix<Scalar>, b: &RingMatrix<Scalar>) -> RingMatrix<Scalar> {
    let (br, bc) = (b.rows(), b.cols());
    RingMatrix::from_fn(a.rows() * br, a.cols() * bc, |r, c| {
        a.get(r / br, c / bc) * b.get(r % br, c % bc)
    })
}

/// `Id_U ⊗ phi`.
pub fn induced_tensor_map(field: Field, dim_u: usize, phi: &RingMatrix<Scalar>) -> RingMatrix<Scalar> {
    kronecker(&RingMatrix::identity(&field, dim_u), phi)
}

fn require_verified(u: &PoissonModuleStructure, what: &str) -> Result<()> {
    if u.is_verified() {
        return Ok(());
    }
    let report = verify_poisson_module(u)?;
    match report.failures.first() {
        None => Ok(()),
        Some(first) => Err(Error::Precondition(format!("{what} is not a Poisson module: {first}"))),
    }
}

/// The Poisson `Q`-module `U ⊗ V` with `f_i ▷ (l ⊗ t) = Σ_j (e_j ▸ l) ⊗ (x_{ji} · t)` and the same
/// formula for `⇀`.
pub fn tensor_module(u: &PoissonModuleStructure, v: &AModuleStructure) -> Result<PoissonModuleStructure> {
    let a = &v.presentation;
    if u.algebra() != a.source() {
        return Err(Error::input("U must be a module over the first algebra of the presentation"));
    }
    require_verified(u, "U")?;
    let f = u.field();
    let (n, m) = (a.n(), a.m());
    let induced = |matrix: &dyn Fn(usize) -> RingMatrix<Scalar>| -> Result<Vec<RingMatrix<Scalar>>> {
        (0..m)
            .map(|i| {
                let mut acc = RingMatrix::filled(&f, u.dim() * v.dim, u.dim() * v.dim);
                for j in 0..n {
                    acc = matrix_sum(&f, &acc, &kronecker(&matrix(j), v.action(j, i)))?;
                }
                Ok(acc)
            })
            .collect()
    };
    let dots = induced(&|j| u.dot_matrix(j))?;
    let harpoons = induced(&|j| u.harpoon_matrix(j))?;
    PoissonModuleStructure::from_matrices(a.target().clone(), &dots, &harpoons)
}

/// Which left adjoint a presentation describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdjointKind {
    /// `𝒰(U, W)`, an `A`-module.
    U,
    /// `𝒱(V, W)`, a Poisson `P`-module.
    V,
}

impl fmt::Display for AdjointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdjointKind::U => "U",
            AdjointKind::V => "V",
        })
    }
}

/// The action a relation family comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActionFamily {
    Dot,
    Harpoon,
}

impl fmt::Display for ActionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionFamily::Dot => "dot",
            ActionFamily::Harpoon => "harpoon",
        })
    }
}

/// A formal operator applied to a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    Identity,
    /// `e_i ▸ −`
    Dot(usize),
    /// `e_i ⇀ −`
    Harpoon(usize),
}

/// `coefficient ◇ operator(generator)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalTerm {
    pub coefficient: Polynomial,
    pub operator: Operator,
    pub generator: usize,
}

/// One emitted relation, `Σ terms = 0`; `indices` are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRelation {
    pub family: ActionFamily,
    pub indices: [usize; 3],
    pub terms: Vec<FormalTerm>,
}

/// Generators, relations and the structure map of an adjoint module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    kind: AdjointKind,
    coefficients: PolyRing,
    generators: Vec<String>,
    algebra_labels: Vec<String>,
    generated: usize,
    relations: Vec<ModuleRelation>,
    structure_map: Vec<String>,
}

impl ModulePresentation {
    pub fn kind(&self) -> AdjointKind {
        self.kind
    }

    /// Ring of relation coefficients: `A` for `𝒰`, the base field (no variables) for `𝒱`.
    pub fn coefficient_ring(&self) -> &PolyRing {
        &self.coefficients
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// Relations produced before identically zero ones were dropped.
    pub fn generated(&self) -> usize {
        self.generated
    }

    pub fn relations(&self) -> &[ModuleRelation] {
        &self.relations
    }

    /// `ρ(v_r)` for `𝒰`, `η_W(w_r)` for `𝒱`, one string per basis vector of `W`.
    pub fn structure_map(&self) -> &[String] {
        &self.structure_map
    }

    fn operator_text(&self, op: Operator, g: usize) -> String {
        let name = &self.generators[g];
        match op {
            Operator::Identity => name.clone(),
            Operator::Dot(i) => format!("{}▸{name}", self.algebra_labels[i]),
            Operator::Harpoon(i) => format!("{}⇀{name}", self.algebra_labels[i]),
        }
    }

    /// Canonical text of a relation's left-hand side.
    pub fn relation_text(&self, r: &ModuleRelation) -> String {
        let mut out = String::new();
        for t in &r.terms {
            let body = self.operator_text(t.operator, t.generator);
            let c = &t.coefficient;
            let (neg, mag) = if c.len() == 1 && c.terms()[0].1.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag.is_constant() && mag.constant_coefficient().is_one() {
                out.push_str(&body);
            } else if mag.is_constant() {
                out.push_str(&format!("{}*{body}", mag.constant_coefficient()));
            } else if mag.len() == 1 {
                out.push_str(&format!("{mag}◇{body}"));
            } else {
                out.push_str(&format!("({mag})◇{body}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "presentation of {} with generators {}", self.kind, self.generators.join(", "))?;
        for r in &self.relations {
            let [a, b, c] = r.indices;
            writeln!(f, "  {}({},{},{}): {} = 0", r.family, a + 1, b + 1, c + 1, self.relation_text(r))?;
        }
        for line in &self.structure_map {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

fn pair_name(prefix: &str, a: usize, b: usize, da: usize, db: usize) -> String {
    if da < 10 && db < 10 {
        format!("{prefix}{}{}", a + 1, b + 1)
    } else {
        format!("{prefix}{}_{}", a + 1, b + 1)
    }
}

/// Collects terms with equal operator and generator, dropping zero coefficients. The two sides
/// of a relation are collected separately so the emitted form keeps their shape.
fn collect_terms(terms: Vec<FormalTerm>) -> Vec<FormalTerm> {
    let mut out: Vec<FormalTerm> = Vec::new();
    for t in terms {
        match out.iter_mut().find(|o| o.operator == t.operator && o.generator == t.generator) {
            Some(o) => o.coefficient = &o.coefficient + &t.coefficient,
            None => out.push(t),
        }
    }
    out.retain(|t| !t.coefficient.is_zero());
    out.sort_by_key(|t| (t.generator, t.operator));
    out
}

/// Presentation of `𝒰(U, W)`; builds `A = 𝒫(P, Q)` in degrevlex.
pub fn emit_u_presentation(u: &PoissonModuleStructure, w: &PoissonModuleStructure) -> Result<ModulePresentation> {
    let a = universal_algebra(u.algebra(), w.algebra(), false, TermOrder::DegRevLex)?;
    emit_u_presentation_in(&a, u, w)
}

/// As [`emit_u_presentation`] with a given `A`. Generators `Y_{sp}` (`s` over `U`, `p` over `W`)
/// and, for each `(s, i, j)`, `Σ_p σ_{j,i}^p Y_{sp} − Σ_{t,r} γ_{r,t}^s x_{rj} ◇ Y_{ti}` and the
/// analogue with `η` and `ω`.
pub fn emit_u_presentation_in(
    a: &UniversalPresentation,
    u: &PoissonModuleStructure,
    w: &PoissonModuleStructure,
) -> Result<ModulePresentation> {
    if u.algebra() != a.source() || w.algebra() != a.target() {
        return Err(Error::input("modules do not match the algebras of the presentation"));
    }
    require_verified(u, "U")?;
    require_verified(w, "W")?;
    let f = a.field();
    let ring = a.ring().clone();
    let (n, du, dw, dq) = (a.n(), u.dim(), w.dim(), a.m());
    let gen = |s: usize, p: usize| s * dw + p;
    let generators = (0..du)
        .flat_map(|s| (0..dw).map(move |p| pair_name("Y", s, p, du, dw)))
        .collect();

    let mut relations = Vec::new();
    let mut generated = 0;
    for s in 0..du {
        for i in 0..dw {
            for j in 0..dq {
                for family in [ActionFamily::Dot, ActionFamily::Harpoon] {
                    generated += 1;
                    let (wc, uc) = match family {
                        ActionFamily::Dot => (w.dot(), u.dot()),
                        ActionFamily::Harpoon => (w.harpoon(), u.harpoon()),
                    };
                    let mut lhs = Vec::new();
                    for p in 0..dw {
                        let c = wc.coefficient(f, j, i, p);
                        if !c.is_zero() {
                            lhs.push(FormalTerm {
                                coefficient: ring.constant(c),
                                operator: Operator::Identity,
                                generator: gen(s, p),
                            });
                        }
                    }
                    let mut rhs = Vec::new();
                    for t in 0..du {
                        let mut coeff = ring.zero();
                        for r in 0..n {
                            let c = uc.coefficient(f, r, t, s);
                            if !c.is_zero() {
                                coeff = &coeff - &a.generator(r, j).scale(&c);
                            }
                        }
                        rhs.push(FormalTerm {
                            coefficient: a.normal_form(&coeff)?,
                            operator: Operator::Identity,
                            generator: gen(t, i),
                        });
                    }
                    let mut terms = collect_terms(lhs);
                    terms.extend(collect_terms(rhs));
                    if !terms.is_empty() {
                        relations.push(ModuleRelation {
                            family,
                            indices: [s, i, j],
                            terms,
                        });
                    }
                }
            }
        }
    }
    let u_labels: Vec<String> = (0..du).map(|s| format!("u{}", s + 1)).collect();
    let structure_map = (0..dw)
        .map(|r| {
            let parts: Vec<String> = (0..du)
                .map(|s| format!("{}⊗{}", u_labels[s], pair_name("y", s, r, du, dw)))
                .collect();
            format!("ρ(w{}) = {}", r + 1, parts.join(" + "))
        })
        .collect();
    Ok(ModulePresentation {
        kind: AdjointKind::U,
        coefficients: ring,
        generators,
        algebra_labels: a.source().labels().to_vec(),
        generated,
        relations,
        structure_map,
    })
}

/// Presentation of `𝒱(V, W)`: generators `y_{ra}` (`r` over `W`, `a` over `V`) of a free Poisson
/// `P`-module and, for each `(j, r, a)`,
/// `Σ_t σ_{j,r}^t y_{ta} − Σ_{i,b} γ_{i,j,b}^a (e_i ▸ y_{rb})` and the analogue with `η` and `⇀`.
pub fn emit_v_presentation(v: &AModuleStructure, w: &PoissonModuleStructure) -> Result<ModulePresentation> {
    let a = &v.presentation;
    if w.algebra() != a.target() {
        return Err(Error::input("W must be a module over the second algebra of the presentation"));
    }
    require_verified(w, "W")?;
    let f = a.field();
    let scalars = PolyRing::new(f, Vec::new(), TermOrder::DegRevLex);
    let (n, dv, dw, dq) = (a.n(), v.dim, w.dim(), a.m());
    let gen = |r: usize, b: usize| r * dv + b;
    let generators = (0..dw)
        .flat_map(|r| (0..dv).map(move |b| pair_name("y", r, b, dw, dv)))
        .collect();

    let mut relations = Vec::new();
    let mut generated = 0;
    for j in 0..dq {
        for r in 0..dw {
            for av in 0..dv {
                for family in [ActionFamily::Dot, ActionFamily::Harpoon] {
                    generated += 1;
                    let wc = match family {
                        ActionFamily::Dot => w.dot(),
                        ActionFamily::Harpoon => w.harpoon(),
                    };
                    let mut lhs = Vec::new();
                    for t in 0..dw {
                        let c = wc.coefficient(f, j, r, t);
                        if !c.is_zero() {
                            lhs.push(FormalTerm {
                                coefficient: scalars.constant(c),
                                operator: Operator::Identity,
                                generator: gen(t, av),
                            });
                        }
                    }
                    let mut rhs = Vec::new();
                    for i in 0..n {
                        for b in 0..dv {
                            let c = v.constant(i, j, b, av);
                            if c.is_zero() {
                                continue;
                            }
                            rhs.push(FormalTerm {
                                coefficient: scalars.constant(-c),
                                operator: match family {
                                    ActionFamily::Dot => Operator::Dot(i),
                                    ActionFamily::Harpoon => Operator::Harpoon(i),
                                },
                                generator: gen(r, b),
                            });
                        }
                    }
                    let mut terms = collect_terms(lhs);
                    terms.extend(collect_terms(rhs));
                    if !terms.is_empty() {
                        relations.push(ModuleRelation {
                            family,
                            indices: [j, r, av],
                            terms,
                        });
                    }
                }
            }
        }
    }
    let structure_map = (0..dw)
        .map(|r| {
            let parts: Vec<String> = (0..dv)
                .map(|s| format!("{}⊗v{}", pair_name("y", r, s, dw, dv), s + 1))
                .collect();
            format!("η(w{}) = {}", r + 1, parts.join(" + "))
        })
        .collect();
    Ok(ModulePresentation {
        kind: AdjointKind::V,
        coefficients: scalars,
        generators,
        algebra_labels: a.source().labels().to_vec(),
        generated,
        relations,
        structure_map,
    })
}

/// `k^dim` with both actions zero, already verified.
pub fn trivial_module(algebra: &PoissonStructure, dim: usize) -> Result<PoissonModuleStructure> {
    PoissonModuleStructure::trivial(algebra.clone(), dim)?.into_verified()
}
