//! The universal coacting bialgebra `𝒫(P) = 𝒫(P, P)`: comultiplication and counit on generators,
//! symbolic checks of the bialgebra and comodule laws, group-likes and automorphism groups.

use std::fmt;

use crate::algebra::groebner::{buchberger, IdealBasis};
use crate::algebra::matrix::{inverse, ring_matrix_product, RingMatrix};
use crate::algebra::poly::{write_monomial, write_terms, Monomial, PolyRing, Polynomial, TermOrder};
use crate::algebra::scalar::{Field, Scalar};
use crate::error::{Error, Result};
use crate::poisson::{morphism_defects, LinearMapOverRing, PoissonStructure};
use crate::universal::{algebra_map_points, eta, universal_algebra, UniversalPresentation};

/// `k[x^{(1)}, …, x^{(copies)}]`: one copy of the generator variables per tensor factor.
pub fn tensor_power_ring(base: &PolyRing, copies: usize) -> PolyRing {
    let names = (1..=copies)
        .flat_map(|k| {
            base.variables()
                .iter()
                .map(move |v| format!("{v}{}", "'".repeat(k)))
        })
        .collect();
    PolyRing::new(base.field(), names, base.order())
}

/// Moves `p` into the tensor factor starting at variable `offset` of `target`.
pub fn embed(p: &Polynomial, target: &PolyRing, offset: usize) -> Polynomial {
    let nv = target.nvars();
    target.from_terms(p.terms().iter().map(|(m, c)| {
        let mut e = vec![0; nv];
        e[offset..offset + m.exponents().len()].copy_from_slice(m.exponents());
        (Monomial::from_exponents(e), c.clone())
    }))
}

/// `J^{(1)} + … + J^{(copies)}` in the tensor power ring.
pub fn tensor_power_ideal(u: &UniversalPresentation, copies: usize) -> Result<IdealBasis> {
    let ring = tensor_power_ring(u.ring(), copies);
    let width = u.ring().nvars();
    let gens: Vec<Polynomial> = (0..copies)
        .flat_map(|k| u.ideal().basis().iter().map(move |g| (k, g)))
        .map(|(k, g)| embed(g, &ring, k * width))
        .collect();
    buchberger(&ring, &gens)
}

/// Renders an element of the tensor power ring as `a⊗b` terms, with `width` variables per factor.
pub fn tensor_string(p: &Polynomial, base_names: &[String], width: usize) -> String {
    let copies = p.ring().nvars() / width;
    let mut out = String::new();
    write_terms(&mut out, p.terms().iter().map(|(m, c)| (m, c)), |s, m| {
        let factors: Vec<String> = (0..copies)
            .map(|k| {
                let part = Monomial::from_exponents(m.exponents()[k * width..(k + 1) * width].to_vec());
                let mut t = String::new();
                write_monomial(&mut t, &part, base_names)?;
                Ok(if t.is_empty() { "1".to_string() } else { t })
            })
            .collect::<std::result::Result<_, fmt::Error>>()?;
        s.push_str(&factors.join("⊗"));
        Ok(())
    })
    .expect("writing to a string");
    out
}

/// `Δ(x_{ij})` as elements of `k[x'] ⊗ k[x''] = k[x', x'']` and `ε(x_{ij})` as a scalar matrix.
#[derive(Clone, Debug)]
pub struct CoalgebraOnGenerators {
    n: usize,
    doubled: PolyRing,
    delta: Vec<Polynomial>,
    counit: RingMatrix<Scalar>,
}

impl CoalgebraOnGenerators {
    /// `Δ(x_{ij}) = Σ_s x_{is} ⊗ x_{sj}`, `ε(x_{ij}) = δ_{ij}`.
    pub fn standard(u: &UniversalPresentation) -> Result<Self> {
        let n = square_dim(u)?;
        let doubled = tensor_power_ring(u.ring(), 2);
        let nn = n * n;
        let delta = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let terms = (0..n).map(|s| &doubled.var(i * n + s) * &doubled.var(nn + s * n + j));
                terms.fold(doubled.zero(), |acc, t| &acc + &t)
            })
            .collect();
        let f = u.field();
        Ok(CoalgebraOnGenerators {
            n,
            doubled,
            delta,
            counit: RingMatrix::identity(&f, n),
        })
    }

    /// Arbitrary comultiplication and counit data on the generators, e.g. for mutation tests.
    pub fn with_data(
        u: &UniversalPresentation,
        delta: Vec<Polynomial>,
        counit: RingMatrix<Scalar>,
    ) -> Result<Self> {
        let n = square_dim(u)?;
        let doubled = tensor_power_ring(u.ring(), 2);
        if delta.len() != n * n || counit.rows() != n || counit.cols() != n {
            return Err(Error::dimension("one Δ and one ε value per generator"));
        }
        let delta = delta
            .into_iter()
            .map(|d| d.to_ring(&doubled))
            .collect::<Result<_>>()?;
        Ok(CoalgebraOnGenerators {
            n,
            doubled,
            delta,
            counit,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn doubled_ring(&self) -> &PolyRing {
        &self.doubled
    }

    /// `Δ(x_{ij})`, unreduced.
    pub fn delta(&self, i: usize, j: usize) -> &Polynomial {
        &self.delta[i * self.n + j]
    }

    pub fn deltas(&self) -> &[Polynomial] {
        &self.delta
    }

    pub fn counit(&self) -> &RingMatrix<Scalar> {
        &self.counit
    }
}

fn square_dim(u: &UniversalPresentation) -> Result<usize> {
    if u.source() != u.target() {
        return Err(Error::input("the bialgebra structure needs Q = P"));
    }
    Ok(u.n())
}

/// `𝒫(P)` with its standard comultiplication and counit (degrevlex basis).
pub fn universal_bialgebra(p: &PoissonStructure) -> Result<(UniversalPresentation, CoalgebraOnGenerators)> {
    universal_bialgebra_with_order(p, TermOrder::DegRevLex)
}

pub fn universal_bialgebra_with_order(
    p: &PoissonStructure,
    order: TermOrder,
) -> Result<(UniversalPresentation, CoalgebraOnGenerators)> {
    let u = universal_algebra(p, p, false, order)?;
    let c = CoalgebraOnGenerators::standard(&u)?;
    Ok((u, c))
}

/// Normal form of `Δ(x_{ij})` modulo `J ⊗ 1 + 1 ⊗ J`.
pub fn reduced_delta(u: &UniversalPresentation, c: &CoalgebraOnGenerators) -> Result<Vec<Polynomial>> {
    let ideal = tensor_power_ideal(u, 2)?;
    Ok(c.delta.iter().map(|d| ideal.reduce(d)).collect())
}

/// A bialgebra or comodule law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// `Δ(r) ∈ J ⊗ 1 + 1 ⊗ J` for every relation `r`.
    WellDefined,
    Coassociativity,
    Counit,
    /// `ε(r) = 0` for every relation `r`.
    CounitKillsJ,
    /// `(Id ⊗ Δ) ∘ η = (η ⊗ Id) ∘ η`.
    Coaction,
    /// `(Id ⊗ ε) ∘ η = Id`.
    CoactionCounit,
    /// `η` is a Poisson algebra map.
    CoactionMorphism,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::WellDefined => "well-definedness of comultiplication",
            Law::Coassociativity => "coassociativity",
            Law::Counit => "counit",
            Law::CounitKillsJ => "counit on relations",
            Law::Coaction => "coaction",
            Law::CoactionCounit => "coaction counit",
            Law::CoactionMorphism => "coaction is a Poisson map",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: Law,
    /// Generator, basis vector or relation at which the law fails.
    pub location: String,
    /// The nonzero remainder, as text.
    pub residue: String,
}

impl fmt::Display for LawFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}: {}", self.law, self.location, self.residue)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub failures: Vec<LawFailure>,
}

impl LawReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn laws(&self) -> Vec<Law> {
        let mut laws: Vec<Law> = self.failures.iter().map(|f| f.law).collect();
        laws.sort();
        laws.dedup();
        laws
    }

    fn push(&mut self, law: Law, location: String, residue: String) {
        self.failures.push(LawFailure { law, location, residue });
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for failure in &self.failures {
            writeln!(f, "{failure}")?;
        }
        Ok(())
    }
}

/// Checks well-definedness, coassociativity and the counit laws symbolically.
pub fn verify_bialgebra(u: &UniversalPresentation, c: &CoalgebraOnGenerators) -> Result<LawReport> {
    let n = square_dim(u)?;
    let width = n * n;
    let names = u.ring().variables().to_vec();
    let field = u.field();
    let mut report = LawReport::default();

    let doubled_ideal = tensor_power_ideal(u, 2)?;
    for r in u.all_relations() {
        let image = r.polynomial.evaluate(&c.doubled, &c.delta);
        let rem = doubled_ideal.reduce(&image);
        if !rem.is_zero() {
            report.push(Law::WellDefined, r.label(), tensor_string(&rem, &names, width));
        }
    }

    let tripled = tensor_power_ring(u.ring(), 3);
    let tripled_ideal = tensor_power_ideal(u, 3)?;
    let left: Vec<Polynomial> = c
        .delta
        .iter()
        .map(|d| embed(d, &tripled, 0))
        .chain((0..width).map(|k| tripled.var(2 * width + k)))
        .collect();
    let right: Vec<Polynomial> = (0..width)
        .map(|k| tripled.var(k))
        .chain(c.delta.iter().map(|d| embed(d, &tripled, width)))
        .collect();
    for (k, d) in c.delta.iter().enumerate() {
        let a = d.evaluate(&tripled, &left);
        let b = d.evaluate(&tripled, &right);
        let rem = tripled_ideal.reduce(&(&a - &b));
        if !rem.is_zero() {
            report.push(Law::Coassociativity, names[k].clone(), tensor_string(&rem, &names, width));
        }
    }

    let base = u.ring();
    let eps: Vec<Polynomial> = c.counit.entries().iter().map(|e| base.constant(e.clone())).collect();
    let gens: Vec<Polynomial> = (0..width).map(|k| base.var(k)).collect();
    let eps_left: Vec<Polynomial> = eps.iter().chain(&gens).cloned().collect();
    let eps_right: Vec<Polynomial> = gens.iter().chain(&eps).cloned().collect();
    for (k, d) in c.delta.iter().enumerate() {
        for values in [&eps_left, &eps_right] {
            let image = d.evaluate(base, values);
            let rem = u.ideal().reduce(&(&image - &gens[k]));
            if !rem.is_zero() {
                report.push(Law::Counit, names[k].clone(), rem.to_string());
                break;
            }
        }
    }

    for r in u.all_relations() {
        let v = r.polynomial.evaluate(&field, c.counit.entries());
        if !v.is_zero() {
            report.push(Law::CounitKillsJ, r.label(), v.to_string());
        }
    }
    Ok(report)
}

/// Checks that `e_i ↦ Σ_s e_s ⊗ η_{si}` makes `P` a `𝒫(P)`-comodule algebra.
pub fn verify_coaction(
    u: &UniversalPresentation,
    c: &CoalgebraOnGenerators,
    coaction: &RingMatrix<Polynomial>,
) -> Result<LawReport> {
    let n = square_dim(u)?;
    if coaction.rows() != n || coaction.cols() != n {
        return Err(Error::dimension("coaction matrix must be n x n"));
    }
    let width = n * n;
    let names = u.ring().variables().to_vec();
    let labels = u.source().labels();
    let field = u.field();
    let mut report = LawReport::default();

    let doubled_ideal = tensor_power_ideal(u, 2)?;
    for t in 0..n {
        for i in 0..n {
            let lhs = coaction.get(t, i).evaluate(&c.doubled, &c.delta);
            let rhs = (0..n).fold(c.doubled.zero(), |acc, s| {
                let l = embed(coaction.get(t, s), &c.doubled, 0);
                let r = embed(coaction.get(s, i), &c.doubled, width);
                &acc + &(&l * &r)
            });
            let rem = doubled_ideal.reduce(&(&lhs - &rhs));
            if !rem.is_zero() {
                report.push(
                    Law::Coaction,
                    format!("{} in the image of {}", labels[t], labels[i]),
                    tensor_string(&rem, &names, width),
                );
            }
        }
    }
    for s in 0..n {
        for i in 0..n {
            let v = coaction.get(s, i).evaluate(&field, c.counit.entries());
            let want = if s == i { field.one() } else { field.zero() };
            if v != want {
                report.push(
                    Law::CoactionCounit,
                    format!("{} in the image of {}", labels[s], labels[i]),
                    format!("{v} instead of {want}"),
                );
            }
        }
    }
    let map = LinearMapOverRing::new(coaction.clone());
    for d in morphism_defects(&map, u.source(), u.source(), &u.quotient(), false)? {
        report.push(
            Law::CoactionMorphism,
            format!("{}({},{},{})", d.kind, d.a + 1, d.i + 1, d.j + 1),
            "nonzero".into(),
        );
    }
    Ok(report)
}

/// [`verify_coaction`] for the canonical coaction `η_P`.
pub fn verify_comodule(u: &UniversalPresentation, c: &CoalgebraOnGenerators) -> Result<LawReport> {
    verify_coaction(u, c, eta(u).matrix())
}

/// An algebra map `𝒫(P) → k` given by `N_{si} = θ(x_{si})`, with its inverse when invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLike {
    matrix: RingMatrix<Scalar>,
    inverse: Option<RingMatrix<Scalar>>,
}

impl GroupLike {
    pub fn new(field: Field, matrix: RingMatrix<Scalar>) -> Self {
        let inverse = inverse(field, &matrix);
        GroupLike { matrix, inverse }
    }

    pub fn matrix(&self) -> &RingMatrix<Scalar> {
        &self.matrix
    }

    pub fn inverse(&self) -> Option<&RingMatrix<Scalar>> {
        self.inverse.as_ref()
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    /// Row-major residues; the canonical sort key.
    pub fn encoding(&self) -> Vec<u32> {
        encode(&self.matrix)
    }
}

pub fn encode(m: &RingMatrix<Scalar>) -> Vec<u32> {
    m.entries()
        .iter()
        .map(|c| c.residue().expect("finite-field matrix"))
        .collect()
}

/// `(θ₁ ⋆ θ₂)(x_{sj}) = Σ_t θ₁(x_{st}) θ₂(x_{tj})`, the matrix product.
pub fn convolution(field: Field, a: &RingMatrix<Scalar>, b: &RingMatrix<Scalar>) -> Result<RingMatrix<Scalar>> {
    ring_matrix_product(&field, a, b)
}

/// `γ̄(θ) = w` with `w(e_i) = Σ_s θ(x_{si}) e_s`.
pub fn gamma_bar(g: &GroupLike) -> LinearMapOverRing<Scalar> {
    LinearMapOverRing::new(g.matrix.clone())
}

fn presentation_over(u: &UniversalPresentation, field: Field) -> Result<UniversalPresentation> {
    square_dim(u)?;
    if u.field() == field {
        return Ok(u.clone());
    }
    let p = u.source().over_field(field)?;
    universal_algebra(&p, &p, u.is_unital(), u.order())
}

/// All group-likes of `𝒫(P)°` over `𝔽_p`, sorted by encoding.
pub fn group_likes(u: &UniversalPresentation, field: Field) -> Result<Vec<GroupLike>> {
    let u = presentation_over(u, field)?;
    let mut out: Vec<GroupLike> = algebra_map_points(&u)?
        .into_iter()
        .map(|m| GroupLike::new(field, m))
        .collect();
    out.sort_by_key(|g| g.encoding());
    Ok(out)
}

/// The invertible group-likes under convolution, with multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    field: Field,
    elements: Vec<GroupLike>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl AutomorphismGroup {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements sorted by encoding.
    pub fn elements(&self) -> &[GroupLike] {
        &self.elements
    }

    /// `table[a][b]` is the index of `elements[a] ⋆ elements[b]`.
    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, m: &RingMatrix<Scalar>) -> Option<usize> {
        let key = encode(m);
        self.elements.binary_search_by(|g| g.encoding().cmp(&key)).ok()
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("group element without inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// The automorphisms `γ̄(g)` of `P`, in element order.
    pub fn automorphisms(&self) -> Vec<LinearMapOverRing<Scalar>> {
        self.elements.iter().map(gamma_bar).collect()
    }
}

/// Builds the group from its elements (sorted by encoding); errors if not closed.
pub fn group_from_elements(field: Field, mut elements: Vec<GroupLike>) -> Result<AutomorphismGroup> {
    elements.sort_by_key(|g| g.encoding());
    let keys: Vec<Vec<u32>> = elements.iter().map(|g| g.encoding()).collect();
    let find = |m: &RingMatrix<Scalar>| keys.binary_search(&encode(m)).ok();
    let mut table = Vec::with_capacity(elements.len());
    for a in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in &elements {
            let ab = convolution(field, &a.matrix, &b.matrix)?;
            row.push(find(&ab).ok_or_else(|| {
                Error::Verification("group-likes not closed under convolution".into())
            })?);
        }
        table.push(row);
    }
    let n = elements.first().map_or(0, |g| g.matrix.rows());
    let identity = find(&RingMatrix::identity(&field, n))
        .ok_or_else(|| Error::Verification("identity is not a group-like".into()))?;
    Ok(AutomorphismGroup {
        field,
        elements,
        table,
        identity,
    })
}

/// `Aut_Poiss(P)` realized as invertible group-likes of `𝒫(P)°` over `𝔽_p`.
pub fn automorphism_group(p: &PoissonStructure, field: Field) -> Result<AutomorphismGroup> {
    let p = p.over_field(field)?;
    let u = universal_algebra(&p, &p, false, TermOrder::DegRevLex)?;
    let invertible: Vec<GroupLike> = group_likes(&u, field)?
        .into_iter()
        .filter(GroupLike::is_invertible)
        .collect();
    group_from_elements(field, invertible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::PoissonBuilder;

    fn three_dim(f: Field) -> PoissonStructure {
        PoissonBuilder::new(f, 3)
            .product(0, 0, 1, f.one())
            .bracket(0, 2, 2, f.one())
            .build()
            .unwrap()
    }

    #[test]
    fn one_dimensional_abelian_is_free_on_one_grouplike() {
        let f = Field::Rationals;
        let p = PoissonStructure::abelian(f, 1).unwrap();
        let (u, c) = universal_bialgebra(&p).unwrap();
        assert!(u.ideal().is_zero_ideal());
        assert_eq!(tensor_string(c.delta(0, 0), u.ring().variables(), 1), "x11⊗x11");
        assert!(c.counit().get(0, 0).is_one());
        let gl = group_likes(&u, Field::Prime(2)).unwrap();
        assert_eq!(gl.len(), 2);
        assert_eq!(gl.iter().filter(|g| g.is_invertible()).count(), 1);
    }

    #[test]
    fn laws_hold_for_the_three_dimensional_example() {
        let p = three_dim(Field::Rationals);
        let (u, c) = universal_bialgebra(&p).unwrap();
        assert!(verify_bialgebra(&u, &c).unwrap().is_empty());
        assert!(verify_comodule(&u, &c).unwrap().is_empty());
    }

    #[test]
    fn mutated_delta_is_caught() {
        let p = three_dim(Field::Rationals);
        let (u, c) = universal_bialgebra(&p).unwrap();
        let n = 3;
        let d = c.doubled_ring();
        let mut deltas = c.deltas().to_vec();
        // Δ(x12) := Σ_s x1s ⊗ x2s (second index swapped)
        deltas[1] = (0..n).fold(d.zero(), |acc, s| &acc + &(&d.var(s) * &d.var(9 + 3 + s)));
        let bad = CoalgebraOnGenerators::with_data(&u, deltas, c.counit().clone()).unwrap();
        let laws = verify_bialgebra(&u, &bad).unwrap().laws();
        assert!(laws.contains(&Law::Counit), "{laws:?}");
    }

    #[test]
    fn dropping_a_diagonal_coaction_term_is_caught() {
        let p = three_dim(Field::Rationals);
        let (u, c) = universal_bialgebra(&p).unwrap();
        let mut co = eta(&u).matrix().clone();
        co.set(0, 0, u.ring().zero());
        let laws = verify_coaction(&u, &c, &co).unwrap().laws();
        assert!(laws.contains(&Law::CoactionCounit), "{laws:?}");
    }

    #[test]
    fn abelian_plane_has_gl2_as_automorphisms() {
        let f = Field::Prime(2);
        let p = PoissonStructure::abelian(f, 2).unwrap();
        let g = automorphism_group(&p, f).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }
}
