//! The universal algebra `𝒫(P, Q) = k[x_{si}] / J`, its canonical map `η`, the bijection `γ`
//! with Poisson morphisms, and functoriality in `Q`.

use std::fmt;

use crate::algebra::groebner::{buchberger, IdealBasis};
use crate::algebra::matrix::{ring_matrix_product, RingMatrix};
use crate::algebra::poly::{PolyRing, Polynomial, TermOrder};
use crate::algebra::ring::{CommutativeRing, QuotientRing};
use crate::algebra::scalar::{Field, Scalar};
use crate::error::{Error, Result};
use crate::poisson::{
    check_poisson_morphism, compatibility, require_poisson, LinearMapOverRing, PoissonStructure,
    RelationKind,
};
use crate::search;

/// One defining relation with its zero-based index triple `(a, i, j)`.
///
/// Unit relations use `a = s` and `i = j = i₀(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub a: usize,
    pub i: usize,
    pub j: usize,
    pub polynomial: Polynomial,
}

impl Relation {
    /// One-based label such as `Gamma(1,2,1)`.
    pub fn label(&self) -> String {
        match self.kind {
            RelationKind::Unit => format!("Unit({},{})", self.a + 1, self.i + 1),
            _ => format!("{}({},{},{})", self.kind, self.a + 1, self.i + 1, self.j + 1),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label(), self.polynomial)
    }
}

/// Relations of `J`: `generated` counts every `(kind, a, i, j)` before zero polynomials are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub generated: usize,
    pub relations: Vec<Relation>,
}

impl RelationSet {
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.relations.iter().map(|r| r.polynomial.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

/// Name of the generator `x_{si}` (zero-based input, one-based name).
pub fn variable_name(s: usize, i: usize, n: usize, m: usize) -> String {
    if n < 10 && m < 10 {
        format!("x{}{}", s + 1, i + 1)
    } else {
        format!("x{}_{}", s + 1, i + 1)
    }
}

/// `k[x_{si}]` with variables in row-major order `(s, i)`, so `x_{11}` is the smallest.
pub fn generator_ring(field: Field, n: usize, m: usize, order: TermOrder) -> PolyRing {
    let names = (0..n)
        .flat_map(|s| (0..m).map(move |i| variable_name(s, i, n, m)))
        .collect();
    PolyRing::new(field, names, order)
}

fn same_field(p: &PoissonStructure, q: &PoissonStructure) -> Result<Field> {
    if p.field() != q.field() {
        return Err(Error::input(format!(
            "algebras over different fields ({} and {})",
            p.field(),
            q.field()
        )));
    }
    Ok(p.field())
}

/// All `Γ_{(a,i,j)}` and `Ω_{(a,i,j)}` in lexicographic `(a, i, j)` order, product before
/// bracket for each triple, zero polynomials dropped.
pub fn build_relations(p: &PoissonStructure, q: &PoissonStructure, ring: &PolyRing) -> Result<RelationSet> {
    same_field(p, q)?;
    require_poisson(p)?;
    require_poisson(q)?;
    let (n, m) = (p.dim(), q.dim());
    if ring.nvars() != n * m || ring.field() != p.field() {
        return Err(Error::input("generator ring does not match the algebras"));
    }
    let x = RingMatrix::from_fn(n, m, |s, i| ring.var(s * m + i));
    let mut relations = Vec::new();
    let mut generated = 0;
    for a in 0..n {
        for i in 0..m {
            for j in 0..m {
                for kind in [RelationKind::Product, RelationKind::Bracket] {
                    generated += 1;
                    let polynomial = compatibility(ring, kind, q, p, &x, (a, i, j));
                    if !polynomial.is_zero() {
                        relations.push(Relation { kind, a, i, j, polynomial });
                    }
                }
            }
        }
    }
    Ok(RelationSet { generated, relations })
}

/// `x_{s i₀(Q)} − δ_{s, i₀(P)}` for every `s`.
fn unit_relations(p: &PoissonStructure, q: &PoissonStructure, ring: &PolyRing) -> Result<Vec<Relation>> {
    let (Some(up), Some(uq)) = (p.unit(), q.unit()) else {
        return Err(Error::Precondition(
            "unital construction needs unit indices on both algebras".into(),
        ));
    };
    let m = q.dim();
    Ok((0..p.dim())
        .map(|s| {
            let mut poly = ring.var(s * m + uq);
            if s == up {
                poly = &poly - &ring.one();
            }
            Relation {
                kind: RelationKind::Unit,
                a: s,
                i: uq,
                j: uq,
                polynomial: poly,
            }
        })
        .collect())
}

/// `𝒫(P, Q)` (or `𝒫¹(P, Q)` when unital) as generators, relations and a reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct UniversalPresentation {
    p: PoissonStructure,
    q: PoissonStructure,
    unital: bool,
    relations: RelationSet,
    unit_relations: Vec<Relation>,
    ideal: IdealBasis,
}

/// Builds `𝒫(P, Q)`; with `unital` the unit relations are adjoined.
pub fn universal_algebra(
    p: &PoissonStructure,
    q: &PoissonStructure,
    unital: bool,
    order: TermOrder,
) -> Result<UniversalPresentation> {
    let field = same_field(p, q)?;
    let ring = generator_ring(field, p.dim(), q.dim(), order);
    let relations = build_relations(p, q, &ring)?;
    let unit_relations = if unital {
        unit_relations(p, q, &ring)?
    } else {
        Vec::new()
    };
    let gens: Vec<Polynomial> = relations
        .relations
        .iter()
        .chain(&unit_relations)
        .map(|r| r.polynomial.clone())
        .collect();
    let ideal = buchberger(&ring, &gens)?;
    Ok(UniversalPresentation {
        p: p.clone(),
        q: q.clone(),
        unital,
        relations,
        unit_relations,
        ideal,
    })
}

impl UniversalPresentation {
    pub fn source(&self) -> &PoissonStructure {
        &self.p
    }

    pub fn target(&self) -> &PoissonStructure {
        &self.q
    }

    pub fn field(&self) -> Field {
        self.p.field()
    }

    /// `dim P`, the row count of the generator grid.
    pub fn n(&self) -> usize {
        self.p.dim()
    }

    /// `dim Q`, the column count of the generator grid.
    pub fn m(&self) -> usize {
        self.q.dim()
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn ring(&self) -> &PolyRing {
        self.ideal.ring()
    }

    pub fn order(&self) -> TermOrder {
        self.ideal.order()
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn unit_relations(&self) -> &[Relation] {
        &self.unit_relations
    }

    /// Product, bracket and unit relations together.
    pub fn all_relations(&self) -> impl Iterator<Item = &Relation> {
        self.relations.relations.iter().chain(&self.unit_relations)
    }

    pub fn ideal(&self) -> &IdealBasis {
        &self.ideal
    }

    pub fn quotient(&self) -> QuotientRing {
        QuotientRing::new(self.ideal.clone())
    }

    pub fn var_index(&self, s: usize, i: usize) -> usize {
        s * self.m() + i
    }

    /// The generator `x_{si}` as a polynomial (not reduced).
    pub fn generator(&self, s: usize, i: usize) -> Polynomial {
        self.ring().var(self.var_index(s, i))
    }

    pub fn generator_name(&self, s: usize, i: usize) -> &str {
        &self.ring().variables()[self.var_index(s, i)]
    }

    pub fn normal_form(&self, poly: &Polynomial) -> Result<Polynomial> {
        crate::algebra::groebner::normal_form(poly, &self.ideal)
    }

    /// Generators that are their own normal form under the current term order.
    pub fn surviving_generators(&self) -> Vec<(usize, usize)> {
        let (n, m) = (self.n(), self.m());
        (0..n)
            .flat_map(|s| (0..m).map(move |i| (s, i)))
            .filter(|&(s, i)| {
                let g = self.generator(s, i);
                self.ideal.reduce(&g) == g
            })
            .collect()
    }

    /// The same presentation with the basis recomputed under another order.
    pub fn with_order(&self, order: TermOrder) -> Result<UniversalPresentation> {
        let ideal = self.ideal.with_order(order)?;
        let ring = ideal.ring().clone();
        let move_rel = |r: &Relation| -> Result<Relation> {
            Ok(Relation {
                polynomial: r.polynomial.to_ring(&ring)?,
                ..r.clone()
            })
        };
        Ok(UniversalPresentation {
            p: self.p.clone(),
            q: self.q.clone(),
            unital: self.unital,
            relations: RelationSet {
                generated: self.relations.generated,
                relations: self
                    .relations
                    .relations
                    .iter()
                    .map(move_rel)
                    .collect::<Result<_>>()?,
            },
            unit_relations: self.unit_relations.iter().map(move_rel).collect::<Result<_>>()?,
            ideal,
        })
    }

    /// Evaluates every relation at `theta` (entry `(s, i)` substituted for `x_{si}`) and returns
    /// the first one that does not vanish in `ring`.
    pub fn first_violated<R: CommutativeRing>(
        &self,
        theta: &RingMatrix<R::Element>,
        ring: &R,
    ) -> Result<Option<&Relation>> {
        if theta.rows() != self.n() || theta.cols() != self.m() {
            return Err(Error::dimension(format!(
                "assignment is {}x{} but the generator grid is {}x{}",
                theta.rows(),
                theta.cols(),
                self.n(),
                self.m()
            )));
        }
        let values = theta.entries();
        Ok(self
            .all_relations()
            .find(|r| !ring.is_zero(&r.polynomial.evaluate(ring, values))))
    }
}

/// `η_Q(f_i) = Σ_s e_s ⊗ x_{si}` with entries reduced in `𝒫(P, Q)`.
#[derive(Clone, Debug)]
pub struct EtaMap {
    map: LinearMapOverRing<Polynomial>,
    names: Vec<String>,
}

impl EtaMap {
    pub fn map(&self) -> &LinearMapOverRing<Polynomial> {
        &self.map
    }

    pub fn matrix(&self) -> &RingMatrix<Polynomial> {
        self.map.matrix()
    }

    /// `η(f_i)` as text, e.g. `e1⊗x11 + e2⊗x21`.
    pub fn image_string(&self, i: usize) -> String {
        tensor_string(&self.names, (0..self.map.target_dim()).map(|s| self.map.coefficient(s, i)))
    }
}

pub(crate) fn tensor_string<'a>(
    labels: &[String],
    coefficients: impl Iterator<Item = &'a Polynomial>,
) -> String {
    let parts: Vec<String> = coefficients
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| {
            if c.len() == 1 {
                format!("{}⊗{c}", labels[s])
            } else {
                format!("{}⊗({c})", labels[s])
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// The canonical Poisson map `η_Q: Q → P ⊗ 𝒫(P, Q)`.
pub fn eta(u: &UniversalPresentation) -> EtaMap {
    let m = RingMatrix::from_fn(u.n(), u.m(), |s, i| u.ideal.reduce(&u.generator(s, i)));
    let map = LinearMapOverRing::new(m);
    debug_assert!(check_poisson_morphism(&map, &u.q, &u.p, &u.quotient(), u.unital).unwrap());
    EtaMap {
        map,
        names: u.p.labels().to_vec(),
    }
}

/// `γ(θ)`: the Poisson map `Q → P ⊗ A`, `f_i ↦ Σ_s e_s ⊗ θ(x_{si})`, for an algebra map `θ`
/// given by its values on generators.
pub fn gamma<R: CommutativeRing>(
    theta: &RingMatrix<R::Element>,
    u: &UniversalPresentation,
    ring: &R,
) -> Result<LinearMapOverRing<R::Element>> {
    if let Some(r) = u.first_violated(theta, ring)? {
        return Err(Error::NotAlgebraMap { relation: r.label() });
    }
    Ok(LinearMapOverRing::new(theta.clone()))
}

/// All algebra maps `𝒫(P, Q) → 𝔽_p` as generator matrices, sorted by row-major encoding.
pub fn algebra_map_points(u: &UniversalPresentation) -> Result<Vec<RingMatrix<Scalar>>> {
    let field = u.field();
    let p = search::prime_of(field)?;
    let sols = search::solve_in_field(u.ideal.basis(), u.n() * u.m(), field)?;
    Ok(sols
        .into_iter()
        .map(|v| {
            RingMatrix::from_fn(u.n(), u.m(), |s, i| Scalar::Modular {
                value: v[s * u.m() + i],
                modulus: p,
            })
        })
        .collect())
}

/// All Poisson morphisms `Q → P` over `𝔽_p`, through the solutions of `J` and `γ`.
pub fn hom_poisson(
    q: &PoissonStructure,
    p: &PoissonStructure,
    field: Field,
) -> Result<Vec<LinearMapOverRing<Scalar>>> {
    search::prime_of(field)?;
    let (q, p) = (q.over_field(field)?, p.over_field(field)?);
    search::check_guard(search::saturating_pow(
        field.characteristic() as u128,
        p.dim() * q.dim(),
    ))?;
    let u = universal_algebra(&p, &q, false, TermOrder::DegRevLex)?;
    algebra_map_points(&u)?
        .iter()
        .map(|theta| gamma(theta, &u, &field))
        .collect()
}

/// Values of `𝒫(P, u)` on the generators of `𝒫(P, Q₁)`: `θ = X₂ · U`, where `U` is the matrix of
/// the Poisson map `u: Q₁ → Q₂` (`u(f_i) = Σ_k U_{ki} f'_k`). Entries are reduced in `𝒫(P, Q₂)`.
pub fn functorial_map(
    source: &UniversalPresentation,
    target: &UniversalPresentation,
    morphism: &RingMatrix<Scalar>,
) -> Result<RingMatrix<Polynomial>> {
    if source.p != target.p {
        return Err(Error::input("presentations must share the algebra P"));
    }
    let field = source.field();
    let g = LinearMapOverRing::new(morphism.clone());
    if !check_poisson_morphism(&g, &source.q, &target.q, &field, false)? {
        return Err(Error::Verification("the given map is not a Poisson morphism".into()));
    }
    let ring = target.ring();
    let x2 = RingMatrix::from_fn(target.n(), target.m(), |s, k| target.generator(s, k));
    let u = morphism.map(|c| ring.constant(c.clone()));
    let theta = ring_matrix_product(ring, &x2, &u)?;
    let quotient = target.quotient();
    let theta = theta.map(|e| quotient.reduce(e));
    gamma(&theta, source, &quotient)?;
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::groebner::ideal_equal;
    use crate::poisson::PoissonBuilder;

    fn three_dim(f: Field) -> PoissonStructure {
        PoissonBuilder::new(f, 3)
            .product(0, 0, 1, f.one())
            .bracket(0, 2, 2, f.one())
            .build()
            .unwrap()
    }

    #[test]
    fn abelian_pair_is_free() {
        let f = Field::Rationals;
        let p = PoissonStructure::abelian(f, 2).unwrap();
        let q = PoissonStructure::abelian(f, 3).unwrap();
        let u = universal_algebra(&p, &q, false, TermOrder::DegRevLex).unwrap();
        assert!(u.relations().is_empty());
        assert_eq!(u.relations().generated, 2 * 2 * 9);
        assert!(u.ideal().is_zero_ideal());
        assert_eq!(u.ring().nvars(), 6);
        assert_eq!(eta(&u).image_string(1), "e1⊗x12 + e2⊗x22");
    }

    #[test]
    fn base_field_as_p_gives_a_presentation_of_q() {
        // P = k with e1·e1 = e1: relations α x_u − x_i x_j and β x_u
        let f = Field::Rationals;
        let p = PoissonBuilder::new(f, 1).product(0, 0, 0, f.one()).build().unwrap();
        let q = PoissonBuilder::new(f, 2).bracket(0, 1, 1, f.one()).build().unwrap();
        let u = universal_algebra(&p, &q, false, TermOrder::DegRevLex).unwrap();
        let shown: Vec<String> = u.relations().relations.iter().map(|r| r.to_string()).collect();
        assert_eq!(
            shown,
            vec![
                "Gamma(1,1,1): -x11^2",
                "Gamma(1,1,2): -x11*x12",
                "Omega(1,1,2): x12",
                "Gamma(1,2,1): -x11*x12",
                "Omega(1,2,1): -x12",
                "Gamma(1,2,2): -x12^2",
            ]
        );
    }

    #[test]
    fn bracket_relations_vanish_on_the_diagonal() {
        let f = Field::Rationals;
        let p = three_dim(f);
        let u = universal_algebra(&p, &p, false, TermOrder::DegRevLex).unwrap();
        assert!(u
            .relations()
            .relations
            .iter()
            .all(|r| !(r.kind == RelationKind::Bracket && r.i == r.j)));
    }

    #[test]
    fn three_dimensional_example_ideal() {
        let f = Field::Rationals;
        let p = three_dim(f);
        let u = universal_algebra(&p, &p, false, TermOrder::DegRevLex).unwrap();
        assert_eq!(u.relations().generated, 54);
        let r = u.ring();
        let x = |s: usize, i: usize| r.var(s * 3 + i);
        let expected = [
            x(0, 1),
            x(0, 2),
            x(1, 2),
            x(2, 1),
            &x(1, 1) - &(&x(0, 0) * &x(0, 0)),
            &x(2, 2) - &(&x(0, 0) * &x(2, 2)),
        ];
        let want = buchberger(r, &expected).unwrap();
        assert!(ideal_equal(u.ideal(), &want).unwrap());
        // degrevlex keeps x22 and eliminates x11^2; lex eliminates x22
        assert!(u.surviving_generators().contains(&(1, 1)));
        let lex = u.with_order(TermOrder::Lex).unwrap();
        assert_eq!(lex.surviving_generators(), vec![(0, 0), (1, 0), (2, 0), (2, 2)]);
        let nf = u.normal_form(&(&x(1, 1) - &(&x(0, 0) * &x(0, 0)))).unwrap();
        assert!(nf.is_zero());
    }

    #[test]
    fn gamma_names_the_violated_relation() {
        let f = Field::Rationals;
        let p = three_dim(f);
        let u = universal_algebra(&p, &p, false, TermOrder::DegRevLex).unwrap();
        let id = RingMatrix::identity(&f, 3);
        assert!(gamma(&id, &u, &f).is_ok());
        let mut bad = id.clone();
        bad.set(0, 1, f.one());
        match gamma(&bad, &u, &f) {
            Err(Error::NotAlgebraMap { relation }) => assert!(relation.starts_with("Gamma(")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unital_mode_sends_unit_to_unit() {
        let f = Field::Rationals;
        let dual = PoissonBuilder::new(f, 2)
            .product(0, 0, 0, f.one())
            .product(0, 1, 1, f.one())
            .unit(0)
            .build()
            .unwrap();
        let u = universal_algebra(&dual, &dual, true, TermOrder::DegRevLex).unwrap();
        let e = eta(&u);
        assert_eq!(e.image_string(0), "e1⊗1");
        assert!(check_poisson_morphism(e.map(), &dual, &dual, &u.quotient(), true).unwrap());
        let plain = PoissonStructure::abelian(f, 2).unwrap();
        assert!(matches!(
            universal_algebra(&plain, &plain, true, TermOrder::DegRevLex),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn one_dimensional_abelian_endomorphisms_over_f2() {
        let f = Field::Prime(2);
        let p = PoissonStructure::abelian(f, 1).unwrap();
        assert_eq!(hom_poisson(&p, &p, f).unwrap().len(), 2);
    }

    #[test]
    fn functorial_identity_and_zero() {
        let f = Field::Rationals;
        let p = three_dim(f);
        let q = PoissonBuilder::new(f, 2).bracket(0, 1, 1, f.one()).build().unwrap();
        let u = universal_algebra(&p, &q, false, TermOrder::DegRevLex).unwrap();
        let theta = functorial_map(&u, &u, &RingMatrix::identity(&f, 2)).unwrap();
        let direct = RingMatrix::from_fn(3, 2, |s, i| u.ideal().reduce(&u.generator(s, i)));
        assert_eq!(theta, direct);
        let zero = functorial_map(&u, &u, &RingMatrix::filled(&f, 2, 2)).unwrap();
        assert!(zero.entries().iter().all(|e| e.is_zero()));
        let not_poisson = RingMatrix::from_rows(vec![
            vec![f.zero(), f.one()],
            vec![f.one(), f.zero()],
        ])
        .unwrap();
        assert!(functorial_map(&u, &u, &not_poisson).is_err());
    }
}
