//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Monomial order. Variable `0` is the smallest variable under both orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl TermOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            TermOrder::DegRevLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {
                    for (x, y) in a.0.iter().zip(&b.0) {
                        match x.cmp(y) {
                            Ordering::Equal => continue,
                            other => return other.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                other => other,
            },
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::DegRevLex => write!(f, "degrevlex"),
            TermOrder::Lex => write!(f, "lex"),
        }
    }
}

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

struct RingData {
    field: Field,
    variables: Vec<String>,
    order: TermOrder,
}

/// A polynomial ring `k[v_0, ..., v_{N-1}]` with a fixed term order. Cheap to clone.
#[derive(Clone)]
pub struct PolyRing(Arc<RingData>);

impl PolyRing {
    pub fn new(field: Field, variables: Vec<String>, order: TermOrder) -> Self {
        PolyRing(Arc::new(RingData {
            field,
            variables,
            order,
        }))
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn order(&self) -> TermOrder {
        self.0.order
    }

    pub fn variables(&self) -> &[String] {
        &self.0.variables
    }

    pub fn nvars(&self) -> usize {
        self.0.variables.len()
    }

    pub fn with_order(&self, order: TermOrder) -> PolyRing {
        if order == self.order() {
            return self.clone();
        }
        PolyRing::new(self.field(), self.0.variables.clone(), order)
    }

    /// Same field and variable set, regardless of term order.
    pub fn compatible(&self, other: &PolyRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.field() == other.field() && self.variables() == other.variables())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field().one())
    }

    pub fn var(&self, index: usize) -> Polynomial {
        self.term(self.field().one(), Monomial::variable(self.nvars(), index))
    }

    pub fn term(&self, c: Scalar, m: Monomial) -> Polynomial {
        assert_eq!(m.0.len(), self.nvars(), "monomial length");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Polynomial {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), self.nvars(), "monomial length");
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other) && self.order() == other.order()
    }
}

impl Eq for PolyRing {}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}; {}]",
            self.field(),
            self.variables().join(", "),
            self.order()
        )
    }
}

/// Sparse polynomial; terms are kept sorted by decreasing monomial and never carry a zero coefficient.
#[derive(Clone)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
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

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant term (zero if absent).
    pub fn constant_coefficient(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Largest variable index that occurs, if any.
    pub fn max_variable(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|(m, _)| m.0.iter().rposition(|&e| e > 0))
            .max()
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`; the order is preserved because monomial multiplication is monotone.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Re-sorts into a compatible ring (typically the same variables under another order).
    pub fn to_ring(&self, ring: &PolyRing) -> Result<Polynomial> {
        if !self.ring.compatible(ring) {
            return Err(Error::input(format!(
                "polynomial over {:?} cannot be moved to {:?}",
                self.ring, ring
            )));
        }
        if self.ring == *ring {
            return Ok(self.clone());
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            self.ring == other.ring,
            "polynomial arithmetic across rings {:?} and {:?}",
            self.ring,
            other.ring
        );
    }

    fn combine(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        self.check_ring(other);
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &Scalar| if negate_other { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.compare(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), rhs(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + &rhs(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.compatible(&other.ring)
            && self.terms.len() == other.terms.len()
            && if self.ring.order() == other.ring.order() {
                self.terms == other.terms
            } else {
                other
                    .to_ring(&self.ring)
                    .map(|o| o.terms == self.terms)
                    .unwrap_or(false)
            }
    }
}

impl Eq for Polynomial {}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.ring.zero();
        }
        let products = self.terms.iter().flat_map(|(ma, ca)| {
            rhs.terms.iter().map(move |(mb, cb)| (ma.mul(mb), ca * cb))
        });
        self.ring.from_terms(products)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

pub(crate) fn write_monomial(
    f: &mut impl fmt::Write,
    m: &Monomial,
    names: &[String],
) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", names[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Writes `c*m` terms joined by `+`/`-`; `mono` renders a monomial.
pub(crate) fn write_terms<'a, F>(
    f: &mut impl fmt::Write,
    terms: impl Iterator<Item = (&'a Monomial, &'a Scalar)>,
    mut mono: F,
) -> fmt::Result
where
    F: FnMut(&mut String, &Monomial) -> fmt::Result,
{
    let mut first = true;
    for (m, c) in terms {
        let (neg, abs) = if c.is_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let mut body = String::new();
        mono(&mut body, m)?;
        if body.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{body}")?;
        } else {
            write!(f, "{abs}*{body}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.variables();
        write_terms(f, self.terms.iter().map(|(m, c)| (m, c)), |s, m| {
            write_monomial(s, m, names)
        })
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(order: TermOrder) -> PolyRing {
        PolyRing::new(
            Field::Rationals,
            vec!["x".into(), "y".into(), "z".into()],
            order,
        )
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn variable_zero_is_smallest() {
        for order in [TermOrder::Lex, TermOrder::DegRevLex] {
            assert_eq!(order.compare(&mono(&[1, 0, 0]), &mono(&[0, 1, 0])), Ordering::Less);
            assert_eq!(order.compare(&mono(&[0, 1, 0]), &mono(&[0, 0, 1])), Ordering::Less);
        }
    }

    #[test]
    fn degrevlex_ties_break_on_smallest_variable() {
        let o = TermOrder::DegRevLex;
        // y^2 > x*z: x has the larger exponent in x*z
        assert_eq!(o.compare(&mono(&[0, 2, 0]), &mono(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&mono(&[2, 0, 0]), &mono(&[0, 0, 1])), Ordering::Greater);
        assert_eq!(
            TermOrder::Lex.compare(&mono(&[2, 0, 0]), &mono(&[0, 0, 1])),
            Ordering::Less
        );
    }

    #[test]
    fn arithmetic_and_printing() {
        let r = ring(TermOrder::DegRevLex);
        let (x, y) = (r.var(0), r.var(1));
        let p = &(&x * &x) - &y;
        assert_eq!(p.to_string(), "x^2 - y");
        let q = &p * &p;
        assert_eq!(q.to_string(), "x^4 - 2*x^2*y + y^2");
        assert!((&q - &q).is_zero());
        let lex = q.to_ring(&r.with_order(TermOrder::Lex)).unwrap();
        assert_eq!(lex.to_string(), "y^2 - 2*x^2*y + x^4");
        assert_eq!(lex, q);
    }

    #[test]
    fn from_terms_combines_and_drops_zeros() {
        let r = ring(TermOrder::Lex);
        let one = Field::Rationals.one();
        let p = r.from_terms([
            (mono(&[1, 0, 0]), one.clone()),
            (mono(&[1, 0, 0]), -&one),
            (mono(&[0, 0, 0]), one.clone()),
        ]);
        assert_eq!(p.to_string(), "1");
        assert!(p.is_constant());
    }
}
