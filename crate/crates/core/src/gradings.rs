//! Group gradings of a Poisson algebra, their correspondence with bialgebra maps `𝒫(P) → k[G]`,
//! and classification up to Poisson automorphisms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::algebra::group::{FiniteAbelianGroup, GroupAlgebra, GroupAlgebraElement, GroupElement};
use crate::algebra::matrix::{column_space, inverse, mat_vec, rank, ring_matrix_product, rref, RingMatrix};
use crate::algebra::poly::TermOrder;
use crate::algebra::ring::CommutativeRing;
use crate::algebra::scalar::{Field, Scalar};
use crate::bialgebra::{automorphism_group, encode, GroupLike};
use crate::error::{Error, Result};
use crate::poisson::{require_poisson, PoissonStructure};
use crate::search::{check_guard, prime_of, saturating_pow};
use crate::universal::{universal_algebra, UniversalPresentation};

/// `P = ⊕_σ P_σ`, each nonzero component stored as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    group: FiniteAbelianGroup,
    field: Field,
    dim: usize,
    components: BTreeMap<GroupElement, Vec<Vec<Scalar>>>,
}

impl Grading {
    /// Fails unless the components form a direct sum decomposition of `k^dim`.
    pub fn new(
        group: FiniteAbelianGroup,
        field: Field,
        dim: usize,
        components: impl IntoIterator<Item = (GroupElement, Vec<Vec<Scalar>>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut all = Vec::new();
        let mut total = 0;
        for (g, vectors) in components {
            if !group.contains(&g) {
                return Err(Error::input(format!("{g} is not an element of {group}")));
            }
            if vectors
                .iter()
                .any(|v| v.len() != dim || v.iter().any(|c| c.field() != field))
            {
                return Err(Error::input(format!("component {g} has malformed vectors")));
            }
            let basis = rref(&vectors).0;
            if basis.is_empty() {
                continue;
            }
            total += basis.len();
            all.extend(basis.iter().cloned());
            if map.insert(g.clone(), basis).is_some() {
                return Err(Error::input(format!("component {g} given twice")));
            }
        }
        if total != dim || rank(&all) != dim {
            return Err(Error::input("components do not form a direct sum of the whole space"));
        }
        Ok(Grading {
            group,
            field,
            dim,
            components: map,
        })
    }

    /// Everything in the neutral degree.
    pub fn trivial(group: FiniteAbelianGroup, field: Field, dim: usize) -> Self {
        let e = group.identity();
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        Grading::new(group, field, dim, [(e, basis)]).expect("standard basis")
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &BTreeMap<GroupElement, Vec<Vec<Scalar>>> {
        &self.components
    }

    pub fn component(&self, g: &GroupElement) -> &[Vec<Scalar>] {
        self.components.get(g).map_or(&[], |b| b.as_slice())
    }

    /// Canonical comparison key: every group element in order with its echelon basis.
    pub fn key(&self) -> Vec<(GroupElement, Vec<Vec<Scalar>>)> {
        self.group
            .elements()
            .into_iter()
            .map(|g| {
                let b = self.component(&g).to_vec();
                (g, b)
            })
            .collect()
    }

    /// Image under the linear map with matrix `w`.
    pub fn transform(&self, w: &RingMatrix<Scalar>) -> Result<Grading> {
        let comps = self.components.iter().map(|(g, basis)| {
            let images = basis.iter().map(|v| mat_vec(self.field, w, v)).collect();
            (g.clone(), images)
        });
        Grading::new(self.group.clone(), self.field, self.dim, comps.collect::<Vec<_>>())
    }
}

impl PartialOrd for Grading {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Grading {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(g, basis)| {
                let vs: Vec<String> = basis
                    .iter()
                    .map(|v| {
                        let cs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                        format!("({})", cs.join(","))
                    })
                    .collect();
                format!("{g}: span{{{}}}", vs.join(", "))
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// `M = Σ_σ M_σ σ` with `M_{si} = θ(x_{si})` for a bialgebra map `θ: 𝒫(P) → k[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraBialgebraMap {
    group: FiniteAbelianGroup,
    field: Field,
    dim: usize,
    parts: BTreeMap<GroupElement, RingMatrix<Scalar>>,
}

impl GroupAlgebraBialgebraMap {
    /// Zero parts are dropped; no law is checked here.
    pub fn from_parts(
        group: FiniteAbelianGroup,
        field: Field,
        dim: usize,
        parts: impl IntoIterator<Item = (GroupElement, RingMatrix<Scalar>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (g, m) in parts {
            if !group.contains(&g) {
                return Err(Error::input(format!("{g} is not an element of {group}")));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::dimension("component matrices must be n x n"));
            }
            if m.entries().iter().all(|c| c.is_zero()) {
                continue;
            }
            if map.insert(g.clone(), m).is_some() {
                return Err(Error::input(format!("component {g} given twice")));
            }
        }
        Ok(GroupAlgebraBialgebraMap {
            group,
            field,
            dim,
            parts: map,
        })
    }

    /// Splits a matrix over `k[G]` into its coefficient matrices.
    pub fn from_matrix(ka: &GroupAlgebra, m: &RingMatrix<GroupAlgebraElement>) -> Result<Self> {
        let n = m.rows();
        if m.cols() != n {
            return Err(Error::dimension("matrix over k[G] must be square"));
        }
        let field = ka.base_field();
        let parts = ka.group().elements().into_iter().map(|g| {
            let part = RingMatrix::from_fn(n, n, |r, c| {
                m.get(r, c).coefficient(&g).cloned().unwrap_or_else(|| field.zero())
            });
            (g, part)
        });
        Self::from_parts(ka.group().clone(), field, n, parts.collect::<Vec<_>>())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> &BTreeMap<GroupElement, RingMatrix<Scalar>> {
        &self.parts
    }

    pub fn part(&self, g: &GroupElement) -> RingMatrix<Scalar> {
        self.parts
            .get(g)
            .cloned()
            .unwrap_or_else(|| RingMatrix::filled(&self.field, self.dim, self.dim))
    }

    pub fn group_algebra(&self) -> GroupAlgebra {
        GroupAlgebra::new(self.group.clone(), self.field)
    }

    pub fn matrix(&self) -> RingMatrix<GroupAlgebraElement> {
        let ka = self.group_algebra();
        RingMatrix::from_fn(self.dim, self.dim, |r, c| {
            ka.from_terms(self.parts.iter().map(|(g, m)| (g.clone(), m.get(r, c).clone())))
        })
    }

    /// `Σ_σ M_σ = I` and `M_σ M_τ = δ_{στ} M_σ`.
    pub fn check_idempotents(&self) -> Result<()> {
        let f = self.field;
        let n = self.dim;
        let mut sum = RingMatrix::filled(&f, n, n);
        for m in self.parts.values() {
            sum = crate::algebra::matrix::matrix_sum(&f, &sum, m)?;
        }
        if sum != RingMatrix::identity(&f, n) {
            return Err(Error::Verification("components do not sum to the identity".into()));
        }
        for (g, a) in &self.parts {
            for (h, b) in &self.parts {
                let ab = ring_matrix_product(&f, a, b)?;
                let want = if g == h { a.clone() } else { RingMatrix::filled(&f, n, n) };
                if ab != want {
                    return Err(Error::Verification(format!(
                        "components {g} and {h} are not orthogonal idempotents"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every relation of `J` vanishes at `M` in `k[G]`.
    pub fn check_relations(&self, u: &UniversalPresentation) -> Result<()> {
        let ka = self.group_algebra();
        let m = self.matrix();
        if let Some(r) = u.first_violated(&m, &ka)? {
            return Err(Error::NotAlgebraMap { relation: r.label() });
        }
        Ok(())
    }

    /// Both the coalgebra and the algebra conditions for `P`.
    pub fn validate(&self, p: &PoissonStructure) -> Result<()> {
        if p.dim() != self.dim || p.field() != self.field {
            return Err(Error::input("map does not match the algebra"));
        }
        self.check_idempotents()?;
        let u = universal_algebra(p, p, false, TermOrder::DegRevLex)?;
        self.check_relations(&u)
    }

    /// `g ⋆ θ ⋆ g⁻¹`: each part becomes `N M_σ N⁻¹`.
    pub fn conjugate(&self, g: &GroupLike) -> Result<Self> {
        let inv = g
            .inverse()
            .ok_or_else(|| Error::input("conjugation needs an invertible group-like"))?;
        let f = self.field;
        let parts = self
            .parts
            .iter()
            .map(|(h, m)| {
                let nm = ring_matrix_product(&f, g.matrix(), m)?;
                Ok((h.clone(), ring_matrix_product(&f, &nm, inv)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(self.group.clone(), f, self.dim, parts)
    }

    fn key(&self) -> Vec<(GroupElement, Vec<u32>)> {
        self.parts.iter().map(|(g, m)| (g.clone(), encode(m))).collect()
    }
}

fn require_grading_input(p: &PoissonStructure, g: &Grading) -> Result<()> {
    if g.dim != p.dim() || g.field != p.field() {
        return Err(Error::input("grading does not match the algebra"));
    }
    Ok(())
}

/// Projection matrices onto each component along the others.
fn projections(g: &Grading) -> Result<BTreeMap<GroupElement, RingMatrix<Scalar>>> {
    let f = g.field;
    let n = g.dim;
    let columns: Vec<(GroupElement, Vec<Scalar>)> = g
        .components
        .iter()
        .flat_map(|(h, basis)| basis.iter().map(move |v| (h.clone(), v.clone())))
        .collect();
    let b = RingMatrix::from_fn(n, n, |r, c| columns[c].1[r].clone());
    let binv = inverse(f, &b).ok_or_else(|| Error::input("components are not independent"))?;
    let mut out = BTreeMap::new();
    for h in g.components.keys() {
        let d = RingMatrix::from_fn(n, n, |r, c| {
            if r == c && columns[c].0 == *h {
                f.one()
            } else {
                f.zero()
            }
        });
        let bd = ring_matrix_product(&f, &b, &d)?;
        out.insert(h.clone(), ring_matrix_product(&f, &bd, &binv)?);
    }
    Ok(out)
}

fn bilinear(table: &[Vec<Vec<Scalar>>], field: Field, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = x.len();
    let mut out = vec![field.zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let w = &x[i] * &y[j];
            for (s, c) in table[i][j].iter().enumerate() {
                if !c.is_zero() {
                    out[s] = &out[s] + &(&w * c);
                }
            }
        }
    }
    out
}

/// Whether `P_σ P_τ ⊆ P_{στ}` and `[P_σ, P_τ] ⊆ P_{στ}` for all `σ, τ`.
pub fn verify_grading(p: &PoissonStructure, g: &Grading) -> Result<bool> {
    require_grading_input(p, g)?;
    let f = p.field();
    let proj = projections(g)?;
    let t = p.product_table();
    let m = p.bracket_table();
    let zero = vec![f.zero(); p.dim()];
    for (a, va) in &g.components {
        for (b, vb) in &g.components {
            let ab = g.group.operate(a, b);
            for x in va {
                for y in vb {
                    for table in [&t, &m] {
                        let v = bilinear(table, f, x, y);
                        let inside = match proj.get(&ab) {
                            Some(pr) => mat_vec(f, pr, &v) == v,
                            None => v == zero,
                        };
                        if !inside {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `P_σ` = image of `M_σ`; validates the map first.
pub fn grading_from_theta(p: &PoissonStructure, m: &GroupAlgebraBialgebraMap) -> Result<Grading> {
    m.validate(p)?;
    let comps: Vec<(GroupElement, Vec<Vec<Scalar>>)> = m
        .parts
        .iter()
        .map(|(g, mat)| (g.clone(), column_space(mat)))
        .collect();
    Grading::new(m.group.clone(), m.field, m.dim, comps)
}

/// `M_σ` = projection onto `P_σ` along the other components.
pub fn theta_from_grading(p: &PoissonStructure, g: &Grading) -> Result<GroupAlgebraBialgebraMap> {
    if !verify_grading(p, g)? {
        return Err(Error::Verification("not a grading of the algebra".into()));
    }
    GroupAlgebraBialgebraMap::from_parts(g.group.clone(), g.field, g.dim, projections(g)?)
}

fn gl_order(q: u128, d: usize) -> u128 {
    let qd = saturating_pow(q, d);
    (0..d).fold(1u128, |acc, k| acc.saturating_mul(qd - saturating_pow(q, k)))
}

/// Number of ordered decompositions of `𝔽_q^n` into `parts` subspaces (zero allowed).
pub fn decomposition_count(q: u128, n: usize, parts: usize) -> u128 {
    fn go(q: u128, parts: usize, remaining: usize, denom: u128, total: &mut u128, gl_n: u128) {
        if parts == 1 {
            let d = denom.saturating_mul(gl_order(q, remaining));
            *total = total.saturating_add(gl_n / d);
            return;
        }
        for d in 0..=remaining {
            go(q, parts - 1, remaining - d, denom.saturating_mul(gl_order(q, d)), total, gl_n);
        }
    }
    if parts == 0 {
        return u128::from(n == 0);
    }
    let mut total = 0;
    go(q, parts, n, 1, &mut total, gl_order(q, n));
    total
}

/// All subspaces of `𝔽_p^n` of dimension `d`, as echelon bases.
pub fn subspaces(field: Field, n: usize, d: usize) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let elements = field
        .elements()
        .ok_or_else(|| Error::input("subspace enumeration needs a finite field"))?;
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    choose_pivots(n, d, 0, &mut pivots, &mut |piv: &[usize]| {
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| ((piv[r] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = saturating_pow(elements.len() as u128, free.len()) as usize;
        for code in 0..total {
            let mut rows: Vec<Vec<Scalar>> = vec![vec![field.zero(); n]; d];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = field.one();
            }
            let mut k = code;
            for &(r, c) in &free {
                rows[r][c] = elements[k % elements.len()].clone();
                k /= elements.len();
            }
            out.push(rows);
        }
    });
    out.sort();
    Ok(out)
}

fn choose_pivots(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == d {
        visit(cur);
        return;
    }
    for c in start..n {
        cur.push(c);
        choose_pivots(n, d, c + 1, cur, visit);
        cur.pop();
    }
}

/// All `G`-gradings of `P` over `𝔽_p`, via ordered direct-sum decompositions filtered by
/// [`verify_grading`]; sorted by [`Grading::key`].
pub fn enumerate_gradings(p: &PoissonStructure, group: &FiniteAbelianGroup, field: Field) -> Result<Vec<Grading>> {
    let q = prime_of(field)? as u128;
    let p = p.over_field(field)?;
    require_poisson(&p)?;
    let n = p.dim();
    let elems = group.elements();
    check_guard(decomposition_count(q, n, elems.len()))?;
    let by_dim: Vec<Vec<Vec<Vec<Scalar>>>> = (0..=n).map(|d| subspaces(field, n, d)).collect::<Result<_>>()?;

    // first component chosen outside the parallel section
    let firsts: Vec<&Vec<Vec<Scalar>>> = by_dim.iter().flatten().collect();
    let mut found: Vec<Grading> = firsts
        .par_iter()
        .flat_map_iter(|first| {
            let mut acc = Vec::new();
            let mut chosen = vec![(*first).clone()];
            extend(&p, group, &elems, &by_dim, &mut chosen, &mut acc);
            acc
        })
        .collect();
    found.sort();
    Ok(found)
}

fn extend(
    p: &PoissonStructure,
    group: &FiniteAbelianGroup,
    elems: &[GroupElement],
    by_dim: &[Vec<Vec<Vec<Scalar>>>],
    chosen: &mut Vec<Vec<Vec<Scalar>>>,
    acc: &mut Vec<Grading>,
) {
    let n = p.dim();
    let used: Vec<Vec<Scalar>> = chosen.iter().flatten().cloned().collect();
    if rank(&used) != used.len() {
        return;
    }
    let remaining = n - used.len();
    if chosen.len() == elems.len() {
        if remaining == 0 {
            let g = Grading::new(
                group.clone(),
                p.field(),
                n,
                elems.iter().cloned().zip(chosen.iter().cloned()).collect::<Vec<_>>(),
            )
            .expect("direct sum by construction");
            if verify_grading(p, &g).unwrap_or(false) {
                acc.push(g);
            }
        }
        return;
    }
    let last = chosen.len() + 1 == elems.len();
    let dims: Vec<usize> = if last { vec![remaining] } else { (0..=remaining).collect() };
    for d in dims {
        for v in &by_dim[d] {
            chosen.push(v.clone());
            extend(p, group, elems, by_dim, chosen, acc);
            chosen.pop();
        }
    }
}

/// All bialgebra maps `𝒫(P) → k[G]` over `𝔽_p`, found independently of subspace enumeration:
/// conjugate every degree assignment on the standard basis by every invertible matrix and keep
/// the idempotent systems that annihilate `J` in `k[G]`.
pub fn enumerate_bialgebra_maps(
    p: &PoissonStructure,
    group: &FiniteAbelianGroup,
    field: Field,
) -> Result<Vec<GroupAlgebraBialgebraMap>> {
    let q = prime_of(field)?;
    let p = p.over_field(field)?;
    let n = p.dim();
    let elems = group.elements();
    check_guard(
        saturating_pow(q as u128, n * n).saturating_mul(saturating_pow(elems.len() as u128, n)),
    )?;
    let u = universal_algebra(&p, &p, false, TermOrder::DegRevLex)?;
    let total = saturating_pow(q as u128, n * n) as u64;
    let assignments = saturating_pow(elems.len() as u128, n) as usize;

    let systems: BTreeSet<Vec<(GroupElement, Vec<u32>)>> = (0..total)
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, code| {
            let mut k = code;
            let b = RingMatrix::from_fn(n, n, |_, _| {
                let v = (k % q as u64) as u32;
                k /= q as u64;
                Scalar::Modular { value: v, modulus: q }
            });
            let Some(binv) = inverse(field, &b) else {
                return acc;
            };
            for a in 0..assignments {
                let mut degrees = Vec::with_capacity(n);
                let mut k = a;
                for _ in 0..n {
                    degrees.push(k % elems.len());
                    k /= elems.len();
                }
                let mut key = Vec::new();
                for (gi, g) in elems.iter().enumerate() {
                    if !degrees.contains(&gi) {
                        continue;
                    }
                    let d = RingMatrix::from_fn(n, n, |r, c| {
                        if r == c && degrees[c] == gi {
                            field.one()
                        } else {
                            field.zero()
                        }
                    });
                    let bd = ring_matrix_product(&field, &b, &d).expect("square");
                    let m = ring_matrix_product(&field, &bd, &binv).expect("square");
                    key.push((g.clone(), encode(&m)));
                }
                acc.insert(key);
            }
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });

    let mut out = Vec::new();
    for key in systems {
        let parts = key.into_iter().map(|(g, code)| {
            let m = RingMatrix::from_fn(n, n, |r, c| Scalar::Modular {
                value: code[r * n + c],
                modulus: q,
            });
            (g, m)
        });
        let map = GroupAlgebraBialgebraMap::from_parts(group.clone(), field, n, parts.collect::<Vec<_>>())?;
        if map.check_relations(&u).is_ok() {
            out.push(map);
        }
    }
    out.sort_by_key(|m| m.key());
    Ok(out)
}

/// One isomorphism class of gradings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingClass {
    /// The member with the smallest [`Grading::key`].
    pub representative: Grading,
    pub size: usize,
}

/// Orbit representatives of the `G`-gradings of `P` under `Aut_Poiss(P)`, sorted.
pub fn classify_gradings(p: &PoissonStructure, group: &FiniteAbelianGroup, field: Field) -> Result<Vec<GradingClass>> {
    let gradings = enumerate_gradings(p, group, field)?;
    let aut = automorphism_group(p, field)?;
    let autos: Vec<RingMatrix<Scalar>> = aut.elements().iter().map(|g| g.matrix().clone()).collect();
    orbits(&gradings, &autos)
}

/// Partition of `gradings` into orbits under the matrices `autos`.
pub fn orbits(gradings: &[Grading], autos: &[RingMatrix<Scalar>]) -> Result<Vec<GradingClass>> {
    let mut seen: BTreeSet<Grading> = BTreeSet::new();
    let mut classes = Vec::new();
    for g in gradings {
        if seen.contains(g) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for w in autos {
            orbit.insert(g.transform(w)?);
        }
        orbit.insert(g.clone());
        let representative = orbit.iter().next().cloned().expect("nonempty orbit");
        classes.push(GradingClass {
            representative,
            size: orbit.len(),
        });
        seen.extend(orbit);
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
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

    fn unit_vectors(f: Field, n: usize, which: &[usize]) -> Vec<Vec<Scalar>> {
        which
            .iter()
            .map(|&i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect()
    }

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2).unwrap()
    }

    #[test]
    fn trivial_grading_always_verifies() {
        let f = Field::Rationals;
        let p = three_dim(f);
        assert!(verify_grading(&p, &Grading::trivial(z2(), f, 3)).unwrap());
    }

    #[test]
    fn hand_checked_gradings_of_the_three_dimensional_example() {
        let f = Field::Rationals;
        let p = three_dim(f);
        let (g0, g1) = (GroupElement(vec![0]), GroupElement(vec![1]));
        let good = Grading::new(
            z2(),
            f,
            3,
            [(g0.clone(), unit_vectors(f, 3, &[0, 1])), (g1.clone(), unit_vectors(f, 3, &[2]))],
        )
        .unwrap();
        assert!(verify_grading(&p, &good).unwrap());
        let bad = Grading::new(
            z2(),
            f,
            3,
            [(g0.clone(), unit_vectors(f, 3, &[1, 2])), (g1.clone(), unit_vectors(f, 3, &[0]))],
        )
        .unwrap();
        assert!(!verify_grading(&p, &bad).unwrap());

        let m = theta_from_grading(&p, &good).unwrap();
        let diag = |d: [i64; 3]| RingMatrix::from_fn(3, 3, |r, c| if r == c { f.from_i64(d[r]) } else { f.zero() });
        assert_eq!(m.part(&g0), diag([1, 1, 0]));
        assert_eq!(m.part(&g1), diag([0, 0, 1]));
        assert_eq!(grading_from_theta(&p, &m).unwrap(), good);
    }

    #[test]
    fn non_direct_sums_are_rejected() {
        let f = Field::Rationals;
        let (g0, g1) = (GroupElement(vec![0]), GroupElement(vec![1]));
        let overlap = Grading::new(
            z2(),
            f,
            2,
            [(g0, unit_vectors(f, 2, &[0])), (g1, unit_vectors(f, 2, &[0]))],
        );
        assert!(overlap.is_err());
    }

    #[test]
    fn decomposition_counts() {
        // F_3^3 into two ordered parts: 1 + 117 + 117 + 1
        assert_eq!(decomposition_count(3, 3, 2), 236);
        assert_eq!(decomposition_count(2, 1, 2), 2);
        assert_eq!(subspaces(Field::Prime(3), 3, 1).unwrap().len(), 13);
        assert_eq!(subspaces(Field::Prime(2), 3, 2).unwrap().len(), 7);
    }

    #[test]
    fn one_dimensional_abelian_has_two_z2_gradings_in_two_classes() {
        let f = Field::Prime(2);
        let p = PoissonStructure::abelian(f, 1).unwrap();
        assert_eq!(enumerate_gradings(&p, &z2(), f).unwrap().len(), 2);
        assert_eq!(classify_gradings(&p, &z2(), f).unwrap().len(), 2);
    }
}
