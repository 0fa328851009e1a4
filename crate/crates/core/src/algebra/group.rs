//! Finite abelian groups as products of cyclic groups, and their group algebras.

use std::collections::BTreeMap;
use std::fmt;

use super::ring::CommutativeRing;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// `ℤ/m₁ × … × ℤ/m_r`, given by the cyclic factor orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
}

/// Residue tuple, one residue per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u32>);

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::input("cyclic factor of order zero"));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn cyclic(m: u32) -> Result<Self> {
        Self::new(vec![m])
    }

    /// Parses `Z2`, `Z2xZ3`, ... (the trivial group is `Z1`).
    pub fn parse(text: &str) -> Result<Self> {
        let orders = text
            .split(['x', 'X', '*'])
            .map(|part| {
                part.trim()
                    .strip_prefix('Z')
                    .and_then(|m| m.parse::<u32>().ok())
                    .ok_or_else(|| Error::input(format!("malformed group descriptor {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }

    pub fn factor_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&m| m as usize).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    pub fn operate(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, m)| (m - x) % m)
                .collect(),
        )
    }

    /// All elements in increasing residue-tuple order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![GroupElement(Vec::new())];
        for &m in &self.orders {
            out = out
                .into_iter()
                .flat_map(|g| {
                    (0..m).map(move |r| {
                        let mut v = g.0.clone();
                        v.push(r);
                        GroupElement(v)
                    })
                })
                .collect();
        }
        out
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(r, m)| r < m)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.orders.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Element of `k[G]`: a finitely supported map `G → k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    group: FiniteAbelianGroup,
    terms: BTreeMap<GroupElement, Scalar>,
}

impl GroupAlgebraElement {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, g: &GroupElement) -> Option<&Scalar> {
        self.terms.get(g)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("{c}*g{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The group algebra `k[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebra {
    group: FiniteAbelianGroup,
    field: Field,
}

impl GroupAlgebra {
    pub fn new(group: FiniteAbelianGroup, field: Field) -> Self {
        GroupAlgebra { group, field }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// `c·g`.
    pub fn monomial(&self, c: Scalar, g: GroupElement) -> GroupAlgebraElement {
        self.from_terms([(g, c)])
    }

    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (GroupElement, Scalar)>,
    ) -> GroupAlgebraElement {
        let mut acc: BTreeMap<GroupElement, Scalar> = BTreeMap::new();
        for (g, c) in terms {
            assert!(self.group.contains(&g), "element {g} outside {}", self.group);
            let entry = acc.entry(g).or_insert_with(|| self.field.zero());
            *entry = &*entry + &c;
        }
        acc.retain(|_, c| !c.is_zero());
        GroupAlgebraElement {
            group: self.group.clone(),
            terms: acc,
        }
    }
}

impl CommutativeRing for GroupAlgebra {
    type Element = GroupAlgebraElement;

    fn base_field(&self) -> Field {
        self.field
    }

    fn zero(&self) -> GroupAlgebraElement {
        self.from_terms([])
    }

    fn one(&self) -> GroupAlgebraElement {
        self.monomial(self.field.one(), self.group.identity())
    }

    fn add(&self, a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> GroupAlgebraElement {
        self.from_terms(a.terms.iter().chain(&b.terms).map(|(g, c)| (g.clone(), c.clone())))
    }

    fn neg(&self, a: &GroupAlgebraElement) -> GroupAlgebraElement {
        self.from_terms(a.terms.iter().map(|(g, c)| (g.clone(), -c)))
    }

    fn mul(&self, a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> GroupAlgebraElement {
        self.from_terms(a.terms.iter().flat_map(|(g, c)| {
            b.terms
                .iter()
                .map(move |(h, d)| (self.group.operate(g, h), c * d))
        }))
    }

    fn from_scalar(&self, c: &Scalar) -> GroupAlgebraElement {
        self.monomial(c.clone(), self.group.identity())
    }

    fn is_zero(&self, a: &GroupAlgebraElement) -> bool {
        a.terms.is_empty()
    }
}
