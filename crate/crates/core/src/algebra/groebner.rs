//! Buchberger's algorithm, reduced Gröbner bases and quotient-ring normal forms.

use std::collections::BTreeSet;

use super::poly::{Monomial, PolyRing, Polynomial, TermOrder};
use crate::error::{Error, Result};

/// An ideal given by generators together with its reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
}

impl IdealBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }

    /// The same ideal with its basis recomputed under another order.
    pub fn with_order(&self, order: TermOrder) -> Result<IdealBasis> {
        if order == self.order() {
            return Ok(self.clone());
        }
        buchberger(&self.ring.with_order(order), &self.generators)
    }

    /// Normal form of an arbitrary polynomial of the same ring.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        reduce(p, &self.basis)
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens` in `ring`.
///
/// Generators may be given under any term order of the same variables and field;
/// they are re-sorted into `ring`'s order.
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> Result<IdealBasis> {
    let generators = gens
        .iter()
        .map(|g| g.to_ring(ring))
        .collect::<Result<Vec<_>>>()?;

    let mut basis: Vec<Polynomial> = Vec::new();
    for g in &generators {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.iter().any(|g| g.is_constant()) {
        return Ok(IdealBasis {
            ring: ring.clone(),
            generators,
            basis: vec![ring.one()],
        });
    }

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }

    while let Some(pair) = select_pair(&pairs, &basis, ring.order()) {
        pairs.remove(&pair);
        let (i, j) = pair;
        let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
        if li.is_coprime(lj) || chain_criterion(i, j, &basis, &pairs) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(IdealBasis {
                ring: ring.clone(),
                generators,
                basis: vec![ring.one()],
            });
        }
        let k = basis.len();
        basis.push(r.monic());
        for i in 0..k {
            pairs.insert((i, k));
        }
    }

    Ok(IdealBasis {
        ring: ring.clone(),
        generators,
        basis: interreduce(basis, ring.order()),
    })
}

/// Remainder of `p` on division by the reduced basis; zero iff `p` lies in the ideal.
pub fn normal_form(p: &Polynomial, ideal: &IdealBasis) -> Result<Polynomial> {
    if !p.ring().compatible(&ideal.ring) {
        return Err(Error::input(format!(
            "polynomial ring {:?} differs from ideal ring {:?}",
            p.ring(),
            ideal.ring
        )));
    }
    if p.ring().order() != ideal.order() {
        return Err(Error::input(format!(
            "polynomial uses term order {} but the basis was computed for {}",
            p.ring().order(),
            ideal.order()
        )));
    }
    Ok(reduce(p, &ideal.basis))
}

/// Whether two ideals of the same ring coincide, compared via reduced bases under `a`'s order.
pub fn ideal_equal(a: &IdealBasis, b: &IdealBasis) -> Result<bool> {
    if !a.ring.compatible(&b.ring) {
        return Err(Error::input("ideals live in different polynomial rings"));
    }
    let b = b.with_order(a.order())?;
    Ok(a.basis == b.basis)
}

fn lm(p: &Polynomial) -> &Monomial {
    p.leading_monomial().expect("nonzero basis element")
}

fn select_pair(
    pairs: &BTreeSet<(usize, usize)>,
    basis: &[Polynomial],
    order: TermOrder,
) -> Option<(usize, usize)> {
    // normal strategy: smallest lcm first; ties go to the earliest pair
    let mut best: Option<((usize, usize), Monomial)> = None;
    for &(i, j) in pairs {
        let l = lm(&basis[i]).lcm(lm(&basis[j]));
        let better = match &best {
            None => true,
            Some((_, b)) => order.compare(&l, b) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some(((i, j), l));
        }
    }
    best.map(|(p, _)| p)
}

fn chain_criterion(
    i: usize,
    j: usize,
    basis: &[Polynomial],
    pending: &BTreeSet<(usize, usize)>,
) -> bool {
    let l = lm(&basis[i]).lcm(lm(&basis[j]));
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && lm(&basis[k]).divides(&l)
            && !pending.contains(&key(i, k))
            && !pending.contains(&key(j, k))
    })
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (lm(f), lm(g));
    let l = lf.lcm(lg);
    let cf = f.leading_coefficient().unwrap().inv().unwrap();
    let cg = g.leading_coefficient().unwrap().inv().unwrap();
    &f.mul_term(&cf, &l.div(lf)) - &g.mul_term(&cg, &l.div(lg))
}

/// Full reduction of `p` by `divisors` (every term, not only the leading one).
pub(crate) fn reduce(p: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = p.ring().clone();
    let mut rest = p.clone();
    let mut remainder = Vec::new();
    while let Some(m) = rest.leading_monomial().cloned() {
        let c = rest.leading_coefficient().unwrap().clone();
        match divisors.iter().find(|d| lm(d).divides(&m)) {
            Some(d) => {
                let factor = &c * &d.leading_coefficient().unwrap().inv().unwrap();
                rest = &rest - &d.mul_term(&factor, &m.div(lm(d)));
            }
            None => {
                remainder.push((m.clone(), c.clone()));
                rest = &rest - &ring.term(c, m);
            }
        }
    }
    ring.from_terms(remainder)
}

fn interreduce(mut basis: Vec<Polynomial>, order: TermOrder) -> Vec<Polynomial> {
    basis.sort_by(|a, b| order.compare(lm(a), lm(b)));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| lm(h).divides(lm(&g))) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(reduce(&minimal[i], &others).monic());
    }
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Field;

    fn xy(order: TermOrder) -> (PolyRing, Polynomial, Polynomial) {
        let r = PolyRing::new(Field::Rationals, vec!["X".into(), "Y".into()], order);
        let (x, y) = (r.var(0), r.var(1));
        (r, x, y)
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let (r, _, _) = xy(TermOrder::DegRevLex);
        let gb = buchberger(&r, &[r.zero()]).unwrap();
        assert!(gb.basis().is_empty());
        assert!(buchberger(&r, &[]).unwrap().is_zero_ideal());
    }

    #[test]
    fn hand_reduced_lex_example() {
        let (r, x, y) = xy(TermOrder::Lex);
        let x2 = &x * &x;
        let xy = &x * &y;
        let gb = buchberger(&r, &[x2.clone(), xy.clone(), &x2 - &xy]).unwrap();
        let shown: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["X^2", "X*Y"]);
    }

    #[test]
    fn normal_forms() {
        let (r, x, y) = xy(TermOrder::DegRevLex);
        let x2 = &x * &x;
        let gb = buchberger(&r, &[x2.clone()]).unwrap();
        assert!(normal_form(&x2, &gb).unwrap().is_zero());
        let p = &(&x2 * &y) + &y;
        assert_eq!(normal_form(&p, &gb).unwrap(), y);
        let lex = p.to_ring(&r.with_order(TermOrder::Lex)).unwrap();
        assert!(normal_form(&lex, &gb).is_err());
    }

    #[test]
    fn ideal_equality() {
        let (r, x, _) = xy(TermOrder::DegRevLex);
        let x2 = &x * &x;
        let x3 = &x2 * &x;
        let a = buchberger(&r, &[x2.clone()]).unwrap();
        let b = buchberger(&r, &[x2.clone(), x3]).unwrap();
        assert!(ideal_equal(&a, &b).unwrap());
        let c = buchberger(&r, &[x.clone()]).unwrap();
        assert!(!ideal_equal(&c, &a).unwrap());
    }

    #[test]
    fn unit_ideal_collapses() {
        let (r, x, y) = xy(TermOrder::DegRevLex);
        let gb = buchberger(&r, &[&(&x * &y) - &r.one(), x.clone()]).unwrap();
        assert!(gb.is_unit_ideal());
    }

    #[test]
    fn twisted_cubic_is_nontrivial() {
        // (y - x^2, z - x^3) in lex with x smallest: basis is already reduced
        let r = PolyRing::new(
            Field::Rationals,
            vec!["x".into(), "y".into(), "z".into()],
            TermOrder::DegRevLex,
        );
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let gens = [&y - &(&x * &x), &z - &(&(&x * &x) * &x)];
        let gb = buchberger(&r, &gens).unwrap();
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
        let again = buchberger(&r, gb.basis()).unwrap();
        assert_eq!(again.basis(), gb.basis());
        // y^3 - z^2 lies in the ideal
        let w = &y.pow(3) - &z.pow(2);
        assert!(gb.contains(&w).unwrap());
        assert!(!gb.contains(&(&y - &z)).unwrap());
    }
}
