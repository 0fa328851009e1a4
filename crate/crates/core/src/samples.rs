//! Named example algebras and random generators of verified algebras and modules.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::matrix::{determinant, inverse, null_space, ring_matrix_product, RingMatrix};
use crate::algebra::scalar::{Field, Scalar};
use crate::error::{Error, Result};
use crate::modules::AModuleStructure;
use crate::poisson::{verify_poisson, verify_poisson_module, PoissonBuilder, PoissonModuleStructure, PoissonStructure};
use crate::universal::{algebra_map_points, UniversalPresentation};

/// `e1² = e2`, `[e1, e3] = e3`.
pub fn three_dim(f: Field) -> PoissonStructure {
    PoissonBuilder::new(f, 3)
        .product(0, 0, 1, f.one())
        .bracket(0, 2, 2, f.one())
        .build()
        .expect("valid constants")
}

/// `k[X]/(X²)` on the basis `1, X`, with zero bracket and unit `e1`.
pub fn dual_numbers(f: Field) -> PoissonStructure {
    PoissonBuilder::new(f, 2)
        .labels(vec!["e1".into(), "e2".into()])
        .product(0, 0, 0, f.one())
        .product(0, 1, 1, f.one())
        .unit(0)
        .build()
        .expect("valid constants")
}

/// The two-dimensional non-abelian Lie algebra `[f1, f2] = f2` with zero product.
pub fn aff2(f: Field) -> PoissonStructure {
    PoissonBuilder::new(f, 2)
        .labels(vec!["f1".into(), "f2".into()])
        .bracket(0, 1, 1, f.one())
        .build()
        .expect("valid constants")
}

/// `[e1, e2] = e3` with zero product.
pub fn heisenberg(f: Field) -> PoissonStructure {
    PoissonBuilder::new(f, 3)
        .bracket(0, 1, 2, f.one())
        .build()
        .expect("valid constants")
}

/// `k[X]/(X⁴)` without unit: `e1² = e2`, `e1 e2 = e3`, zero bracket.
pub fn truncated_polynomials(f: Field) -> PoissonStructure {
    PoissonBuilder::new(f, 3)
        .product(0, 0, 1, f.one())
        .product(0, 1, 2, f.one())
        .build()
        .expect("valid constants")
}

/// `k × k` with idempotents `e1`, `e2` and zero bracket.
pub fn split_pair(f: Field) -> PoissonStructure {
    PoissonBuilder::new(f, 2)
        .product(0, 0, 0, f.one())
        .product(1, 1, 1, f.one())
        .build()
        .expect("valid constants")
}

/// Hand-picked verified algebras of dimension `n`.
pub fn seeds(f: Field, n: usize) -> Vec<PoissonStructure> {
    let mut out = vec![PoissonStructure::abelian(f, n).expect("positive dimension")];
    match n {
        1 => out.push(
            PoissonBuilder::new(f, 1)
                .product(0, 0, 0, f.one())
                .build()
                .expect("valid constants"),
        ),
        2 => out.extend([dual_numbers(f), aff2(f), split_pair(f)]),
        3 => out.extend([three_dim(f), heisenberg(f), truncated_polynomials(f)]),
        _ => {}
    }
    out
}

/// A uniformly random residue over `𝔽_p`, or an integer in `[-2, 2]` over `ℚ`.
pub fn random_scalar<R: Rng + ?Sized>(f: Field, rng: &mut R) -> Scalar {
    match f {
        Field::Prime(p) => Scalar::Modular {
            value: rng.gen_range(0..p),
            modulus: p,
        },
        Field::Rationals => f.from_i64(rng.gen_range(-2..=2)),
    }
}

fn random_nonzero<R: Rng + ?Sized>(f: Field, rng: &mut R) -> Scalar {
    loop {
        let c = random_scalar(f, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random invertible matrix with entries from [`random_scalar`].
pub fn random_invertible<R: Rng + ?Sized>(f: Field, n: usize, rng: &mut R) -> RingMatrix<Scalar> {
    loop {
        let b = RingMatrix::from_fn(n, n, |_, _| random_scalar(f, rng));
        if !determinant(f, &b).is_zero() {
            return b;
        }
    }
}

/// A few random sparse constants, kept when the axioms hold; `None` after `attempts` rejections.
pub fn sparse_algebra<R: Rng + ?Sized>(f: Field, n: usize, attempts: usize, rng: &mut R) -> Option<PoissonStructure> {
    for _ in 0..attempts {
        let mut b = PoissonBuilder::new(f, n);
        for _ in 0..rng.gen_range(0..=2) {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(i..n);
            b = b.product(i, j, rng.gen_range(0..n), random_nonzero(f, rng));
        }
        if n > 1 {
            for _ in 0..rng.gen_range(0..=2) {
                let i = rng.gen_range(0..n - 1);
                let j = rng.gen_range(i + 1..n);
                b = b.bracket(i, j, rng.gen_range(0..n), random_nonzero(f, rng));
            }
        }
        let Ok(p) = b.build() else { continue };
        if verify_poisson(&p).is_empty() {
            return Some(p);
        }
    }
    None
}

/// A verified algebra of dimension `n`: sparse rejection sampling half of the time, otherwise a
/// seed algebra in a random basis.
pub fn random_algebra<R: Rng + ?Sized>(f: Field, n: usize, rng: &mut R) -> PoissonStructure {
    if rng.gen_bool(0.5) {
        if let Some(p) = sparse_algebra(f, n, 200, rng) {
            return p;
        }
    }
    let seed = seeds(f, n).choose(rng).cloned().expect("at least the abelian seed");
    let b = random_invertible(f, n, rng);
    let p = seed.change_basis(&b).expect("invertible basis change");
    debug_assert!(verify_poisson(&p).is_empty());
    p
}

fn require_finite(f: Field) -> Result<u32> {
    match f {
        Field::Prime(p) => Ok(p),
        Field::Rationals => Err(Error::input("module sampling needs a finite field")),
    }
}

fn all_vectors(f: Field, len: usize) -> Result<Vec<Vec<Scalar>>> {
    let elems = f.elements().ok_or_else(|| Error::input("needs a finite field"))?;
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    Ok(out)
}

fn module_from_blocks(
    p: &PoissonStructure,
    dot: &[RingMatrix<Scalar>],
    harpoon: &[RingMatrix<Scalar>],
) -> Result<Option<PoissonModuleStructure>> {
    let u = PoissonModuleStructure::from_matrices(p.clone(), dot, harpoon)?;
    Ok(verify_poisson_module(&u)?.is_empty().then_some(u))
}

/// Every one-dimensional Poisson module over `p` (finite fields only).
pub fn one_dim_modules(p: &PoissonStructure) -> Result<Vec<PoissonModuleStructure>> {
    let f = p.field();
    require_finite(f)?;
    let n = p.dim();
    let mut out = Vec::new();
    for v in all_vectors(f, 2 * n)? {
        let scalar = |c: &Scalar| RingMatrix::from_fn(1, 1, |_, _| c.clone());
        let dot: Vec<_> = v[..n].iter().map(scalar).collect();
        let harpoon: Vec<_> = v[n..].iter().map(scalar).collect();
        if let Some(u) = module_from_blocks(p, &dot, &harpoon)? {
            out.push(u);
        }
    }
    Ok(out)
}

/// A random verified Poisson module of dimension 1 or 2 over a finite field: a one-dimensional
/// module, or an upper triangular extension of two of them in a random basis.
pub fn random_poisson_module<R: Rng + ?Sized>(
    p: &PoissonStructure,
    dim: usize,
    rng: &mut R,
) -> Result<PoissonModuleStructure> {
    let f = p.field();
    let lines = one_dim_modules(p)?;
    let pick = |rng: &mut R| lines.choose(rng).cloned().expect("the zero module always exists");
    match dim {
        1 => pick(rng).into_verified(),
        2 => {
            let (a, b) = (pick(rng), pick(rng));
            let n = p.dim();
            let mut candidates = Vec::new();
            for off in all_vectors(f, 2 * n)? {
                let block = |x: &Scalar, y: &Scalar, c: &Scalar| {
                    RingMatrix::from_rows(vec![vec![x.clone(), c.clone()], vec![f.zero(), y.clone()]])
                        .expect("2x2")
                };
                let dot: Vec<_> = (0..n)
                    .map(|i| block(a.dot_matrix(i).get(0, 0), b.dot_matrix(i).get(0, 0), &off[i]))
                    .collect();
                let harpoon: Vec<_> = (0..n)
                    .map(|i| block(a.harpoon_matrix(i).get(0, 0), b.harpoon_matrix(i).get(0, 0), &off[n + i]))
                    .collect();
                if module_from_blocks(p, &dot, &harpoon)?.is_some() {
                    candidates.push((dot, harpoon));
                }
            }
            let (dot, harpoon) = candidates.choose(rng).cloned().expect("the split extension is valid");
            let g = random_invertible(f, 2, rng);
            let ginv = inverse(f, &g).expect("invertible");
            let conj = |m: &RingMatrix<Scalar>| -> Result<RingMatrix<Scalar>> {
                ring_matrix_product(&f, &ring_matrix_product(&f, &g, m)?, &ginv)
            };
            let dot = dot.iter().map(conj).collect::<Result<Vec<_>>>()?;
            let harpoon = harpoon.iter().map(conj).collect::<Result<Vec<_>>>()?;
            PoissonModuleStructure::from_matrices(p.clone(), &dot, &harpoon)?.into_verified()
        }
        _ => Err(Error::input("random modules are sampled in dimension 1 or 2 only")),
    }
}

/// Gradient of `poly` at the point `values`, as a row over the variables.
fn gradient(poly: &crate::algebra::poly::Polynomial, values: &[Scalar], f: Field) -> Vec<Scalar> {
    let mut row = vec![f.zero(); values.len()];
    for (mono, c) in poly.terms() {
        let e = mono.exponents();
        for k in 0..values.len() {
            if e[k] == 0 {
                continue;
            }
            let mut t = c * &f.from_i64(e[k] as i64);
            for (l, &el) in e.iter().enumerate() {
                let power = if l == k { el - 1 } else { el };
                t = &t * &values[l].pow(power);
            }
            row[k] = &row[k] + &t;
        }
    }
    row
}

/// A random `A`-module of dimension 1 or 2 over a finite field: a point of `A`, two points
/// stacked, or a point with a tangent vector; dimension-2 modules are put in a random basis.
pub fn random_a_module<R: Rng + ?Sized>(u: &UniversalPresentation, dim: usize, rng: &mut R) -> Result<AModuleStructure> {
    let f = u.field();
    require_finite(f)?;
    let points = algebra_map_points(u)?;
    if points.is_empty() {
        return Err(Error::input("the algebra has no points over this field"));
    }
    let theta = points.choose(rng).expect("nonempty").clone();
    match dim {
        1 => AModuleStructure::from_point(u.clone(), &theta),
        2 => {
            let vars = theta.entries().len();
            let (second, off): (Vec<Scalar>, Vec<Scalar>) = if rng.gen_bool(0.5) {
                let other = points.choose(rng).expect("nonempty");
                (other.entries().to_vec(), vec![f.zero(); vars])
            } else {
                let rows: Vec<Vec<Scalar>> = u
                    .all_relations()
                    .map(|r| gradient(&r.polynomial, theta.entries(), f))
                    .collect();
                let tangent = null_space(f, &rows, vars);
                let mut d = vec![f.zero(); vars];
                for t in &tangent {
                    let c = random_scalar(f, rng);
                    for (x, y) in d.iter_mut().zip(t) {
                        *x = &*x + &(&c * y);
                    }
                }
                (theta.entries().to_vec(), d)
            };
            let g = random_invertible(f, 2, rng);
            let ginv = inverse(f, &g).expect("invertible");
            let actions = (0..vars)
                .map(|k| {
                    let m = RingMatrix::from_rows(vec![
                        vec![theta.entries()[k].clone(), off[k].clone()],
                        vec![f.zero(), second[k].clone()],
                    ])?;
                    ring_matrix_product(&f, &ring_matrix_product(&f, &g, &m)?, &ginv)
                })
                .collect::<Result<Vec<_>>>()?;
            AModuleStructure::new(u.clone(), actions)
        }
        _ => Err(Error::input("random modules are sampled in dimension 1 or 2 only")),
    }
}
