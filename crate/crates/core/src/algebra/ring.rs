//! Commutative rings used as coefficient domains for matrices and substitutions.

use std::fmt::Debug;

use super::groebner::IdealBasis;
use super::poly::{PolyRing, Polynomial};
use super::scalar::{Field, Scalar};

/// A commutative unital ring over one of the exact fields; elements are plain values
/// and all arithmetic goes through the ring object.
pub trait CommutativeRing {
    type Element: Clone + Debug + PartialEq;

    fn base_field(&self) -> Field;
    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn neg(&self, a: &Self::Element) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn from_scalar(&self, c: &Scalar) -> Self::Element;
    fn is_zero(&self, a: &Self::Element) -> bool;

    fn sub(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.add(a, &self.neg(b))
    }

    fn scale(&self, c: &Scalar, a: &Self::Element) -> Self::Element {
        self.mul(&self.from_scalar(c), a)
    }

    fn equal(&self, a: &Self::Element, b: &Self::Element) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn pow(&self, a: &Self::Element, e: u32) -> Self::Element {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn sum<I>(&self, items: I) -> Self::Element
    where
        I: IntoIterator<Item = Self::Element>,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, &x))
    }
}

impl CommutativeRing for Field {
    type Element = Scalar;

    fn base_field(&self) -> Field {
        *self
    }
    fn zero(&self) -> Scalar {
        Field::zero(self)
    }
    fn one(&self) -> Scalar {
        Field::one(self)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn from_scalar(&self, c: &Scalar) -> Scalar {
        c.clone()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
}

impl CommutativeRing for PolyRing {
    type Element = Polynomial;

    fn base_field(&self) -> Field {
        self.field()
    }
    fn zero(&self) -> Polynomial {
        PolyRing::zero(self)
    }
    fn one(&self) -> Polynomial {
        PolyRing::one(self)
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a + b
    }
    fn neg(&self, a: &Polynomial) -> Polynomial {
        -a
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a * b
    }
    fn from_scalar(&self, c: &Scalar) -> Polynomial {
        self.constant(c.clone())
    }
    fn is_zero(&self, a: &Polynomial) -> bool {
        a.is_zero()
    }
}

/// `k[x]/I`, elements stored as normal forms modulo the reduced basis.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ideal: IdealBasis,
}

impl QuotientRing {
    pub fn new(ideal: IdealBasis) -> Self {
        QuotientRing { ideal }
    }

    pub fn ideal(&self) -> &IdealBasis {
        &self.ideal
    }

    pub fn poly_ring(&self) -> &PolyRing {
        self.ideal.ring()
    }

    /// Class of a polynomial of the ambient ring.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.ideal.reduce(p)
    }

    pub fn generator(&self, index: usize) -> Polynomial {
        self.reduce(&self.poly_ring().var(index))
    }
}

impl CommutativeRing for QuotientRing {
    type Element = Polynomial;

    fn base_field(&self) -> Field {
        self.poly_ring().field()
    }
    fn zero(&self) -> Polynomial {
        self.poly_ring().zero()
    }
    fn one(&self) -> Polynomial {
        self.reduce(&self.poly_ring().one())
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&(a + b))
    }
    fn neg(&self, a: &Polynomial) -> Polynomial {
        -a
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&(a * b))
    }
    fn from_scalar(&self, c: &Scalar) -> Polynomial {
        self.reduce(&self.poly_ring().constant(c.clone()))
    }
    fn is_zero(&self, a: &Polynomial) -> bool {
        self.reduce(a).is_zero()
    }
}

impl Polynomial {
    /// Substitutes `values[i]` for variable `i` and evaluates in `ring`.
    pub fn evaluate<R: CommutativeRing>(&self, ring: &R, values: &[R::Element]) -> R::Element {
        assert_eq!(values.len(), self.ring().nvars(), "one value per variable");
        let mut acc = ring.zero();
        for (m, c) in self.terms() {
            let mut t = ring.from_scalar(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = ring.mul(&t, &ring.pow(&values[i], e));
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }
}
