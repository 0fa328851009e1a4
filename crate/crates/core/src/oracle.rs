//! Brute-force reference computations over `𝔽_p` on dense residue tables.
//!
//! Nothing here touches polynomials, Gröbner bases or presentations, so these routines serve as
//! independent checks of the universal constructions.

use crate::algebra::scalar::Field;
use crate::error::{Error, Result};
use crate::poisson::PoissonStructure;
use crate::search::{check_guard, prime_of, saturating_pow};

/// Structure constants of an algebra reduced to residues, indexed `[(i * n + j) * n + s]`.
#[derive(Clone, Debug)]
pub struct DenseAlgebra {
    pub p: u64,
    pub n: usize,
    pub product: Vec<u64>,
    pub bracket: Vec<u64>,
}

impl DenseAlgebra {
    pub fn new(alg: &PoissonStructure, field: Field) -> Result<Self> {
        let p = prime_of(field)? as u64;
        let alg = alg.over_field(field)?;
        let n = alg.dim();
        let mut product = vec![0; n * n * n];
        let mut bracket = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for s in 0..n {
                    let k = (i * n + j) * n + s;
                    product[k] = alg.tau(i, j, s).residue().unwrap_or(0) as u64;
                    bracket[k] = alg.mu(i, j, s).residue().unwrap_or(0) as u64;
                }
            }
        }
        Ok(DenseAlgebra { p, n, product, bracket })
    }

    fn at(table: &[u64], n: usize, i: usize, j: usize, s: usize) -> u64 {
        table[(i * n + j) * n + s]
    }
}

/// Whether the `target.n × source.n` matrix `d` (row-major, `f(e_i) = Σ_s d[s][i] e'_s`) preserves
/// product and bracket.
pub fn is_morphism(d: &[u64], source: &DenseAlgebra, target: &DenseAlgebra) -> bool {
    let (m, n, p) = (source.n, target.n, source.p);
    let col = |i: usize, s: usize| d[s * m + i];
    for (ts, tt) in [(&source.product, &target.product), (&source.bracket, &target.bracket)] {
        for i in 0..m {
            for j in 0..m {
                for a in 0..n {
                    // f(e_i e_j)_a
                    let mut lhs = 0;
                    for s in 0..m {
                        lhs = (lhs + DenseAlgebra::at(ts, m, i, j, s) * col(s, a)) % p;
                    }
                    // (f e_i)(f e_j)_a
                    let mut rhs = 0;
                    for s in 0..n {
                        let x = col(i, s);
                        if x == 0 {
                            continue;
                        }
                        for t in 0..n {
                            let y = col(j, t);
                            if y == 0 {
                                continue;
                            }
                            rhs = (rhs + x * y % p * DenseAlgebra::at(tt, n, s, t, a)) % p;
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every Poisson morphism `source → target` over `𝔽_p`, row-major, in increasing order.
pub fn morphisms(source: &PoissonStructure, target: &PoissonStructure, field: Field) -> Result<Vec<Vec<u64>>> {
    let (s, t) = (DenseAlgebra::new(source, field)?, DenseAlgebra::new(target, field)?);
    let cells = s.n * t.n;
    check_guard(saturating_pow(s.p as u128, cells))?;
    let total = saturating_pow(s.p as u128, cells) as u64;
    let mut out = Vec::new();
    let mut d = vec![0u64; cells];
    for code in 0..total {
        let mut k = code;
        // most significant digit first so that codes run in lexicographic order
        for c in (0..cells).rev() {
            d[c] = k % s.p;
            k /= s.p;
        }
        if is_morphism(&d, &s, &t) {
            out.push(d.clone());
        }
    }
    Ok(out)
}

/// Determinant of a square residue matrix by elimination mod `p`.
pub fn det_mod(d: &[u64], n: usize, p: u64) -> u64 {
    let mut a = d.to_vec();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else {
            return 0;
        };
        if piv != c {
            for k in 0..n {
                a.swap(piv * n + k, c * n + k);
            }
            det = (p - det) % p;
        }
        let pv = a[c * n + c];
        det = det * pv % p;
        let inv = pow_mod(pv, p - 2, p);
        for r in (c + 1)..n {
            let f = a[r * n + c] * inv % p;
            for k in c..n {
                a[r * n + k] = (a[r * n + k] + p - f * a[c * n + k] % p) % p;
            }
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Product of square residue matrices.
pub fn mat_mul(a: &[u64], b: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for k in 0..n {
            let x = a[r * n + k];
            if x == 0 {
                continue;
            }
            for c in 0..n {
                out[r * n + c] = (out[r * n + c] + x * b[k * n + c]) % p;
            }
        }
    }
    out
}

/// The invertible endomorphisms with their composition table (`table[a][b]` = index of `a∘b`).
pub fn automorphisms(alg: &PoissonStructure, field: Field) -> Result<(Vec<Vec<u64>>, Vec<Vec<usize>>)> {
    let n = alg.dim();
    let p = prime_of(field)? as u64;
    let elements: Vec<Vec<u64>> = morphisms(alg, alg, field)?
        .into_iter()
        .filter(|d| det_mod(d, n, p) != 0)
        .collect();
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let ab = mat_mul(a, b, n, p);
                    elements
                        .binary_search(&ab)
                        .map_err(|_| Error::Verification("automorphisms not closed".into()))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((elements, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_line_morphisms_are_all_scalars() {
        let f = Field::Prime(3);
        let p = PoissonStructure::abelian(f, 1).unwrap();
        assert_eq!(morphisms(&p, &p, f).unwrap().len(), 3);
        let (auts, table) = automorphisms(&p, f).unwrap();
        assert_eq!(auts, vec![vec![1], vec![2]]);
        assert_eq!(table, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn determinant_mod_p() {
        assert_eq!(det_mod(&[1, 2, 3, 4], 2, 5), 3); // -2
        assert_eq!(det_mod(&[1, 1, 1, 1], 2, 7), 0);
    }
}
