//! Exhaustive search over prime fields with an explicit size guard.

use rayon::prelude::*;

use crate::algebra::poly::Polynomial;
use crate::algebra::scalar::Field;
use crate::error::{Error, Result};

/// Default bound on the number of candidates an exhaustive search may visit.
pub const DEFAULT_LIMIT: u128 = 1 << 24;
/// Upper cap for the environment override.
pub const MAX_LIMIT: u128 = 1 << 28;
/// Environment variable overriding [`DEFAULT_LIMIT`]; values above [`MAX_LIMIT`] are capped.
pub const LIMIT_VAR: &str = "UNIPOISS_ENUM_LIMIT";

/// The active enumeration limit.
pub fn enumeration_limit() -> u128 {
    std::env::var(LIMIT_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .map_or(DEFAULT_LIMIT, |v| v.min(MAX_LIMIT))
}

/// Fails with [`Error::GuardExceeded`] when `required` exceeds the active limit.
pub fn check_guard(required: u128) -> Result<()> {
    let limit = enumeration_limit();
    if required > limit {
        return Err(Error::GuardExceeded { required, limit });
    }
    Ok(())
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

pub(crate) fn prime_of(field: Field) -> Result<u32> {
    match field {
        Field::Prime(p) => Ok(p),
        Field::Rationals => Err(Error::input(
            "exhaustive enumeration needs a finite field",
        )),
    }
}

struct Compiled {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl Compiled {
    fn new(poly: &Polynomial) -> Self {
        let terms = poly
            .terms()
            .iter()
            .map(|(m, c)| {
                let vars = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e))
                    .collect();
                (c.residue().expect("prime-field coefficient") as u64, vars)
            })
            .collect();
        Compiled { terms }
    }

    fn vanishes(&self, values: &[u32], p: u64) -> bool {
        let mut acc = 0u64;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &(i, e) in vars {
                for _ in 0..e {
                    t = t * values[i] as u64 % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc == 0
    }
}

/// All common zeros in `𝔽_p^{nvars}` of `polys`, as residue vectors in increasing
/// lexicographic order. Each polynomial is tested as soon as its largest variable is fixed.
pub fn solve_over_prime_field(polys: &[Polynomial], nvars: usize) -> Result<Vec<Vec<u32>>> {
    let field = match polys.first() {
        Some(p) => p.ring().field(),
        None => return Err(Error::input("an empty system needs an explicit field")),
    };
    solve_in_field(polys, nvars, field)
}

/// As [`solve_over_prime_field`], with the field given explicitly (for empty systems).
pub fn solve_in_field(polys: &[Polynomial], nvars: usize, field: Field) -> Result<Vec<Vec<u32>>> {
    let p = prime_of(field)?;
    check_guard(saturating_pow(p as u128, nvars))?;
    let mut levels: Vec<Vec<Compiled>> = (0..nvars).map(|_| Vec::new()).collect();
    for poly in polys {
        if poly.ring().field() != field || poly.ring().nvars() != nvars {
            return Err(Error::input("polynomial system over mismatched ring"));
        }
        match poly.max_variable() {
            None if poly.is_zero() => {}
            None => return Ok(Vec::new()),
            Some(v) => levels[v].push(Compiled::new(poly)),
        }
    }
    let p64 = p as u64;
    let ok_at = |level: usize, values: &[u32]| levels[level].iter().all(|c| c.vanishes(values, p64));

    // split the first few variables into independent work items
    let mut split = 0;
    let mut width = 1u64;
    while split < nvars && width < 256 {
        width *= p64;
        split += 1;
    }
    let mut prefixes: Vec<Vec<u32>> = vec![vec![0; nvars]];
    for level in 0..split {
        prefixes = prefixes
            .into_iter()
            .flat_map(|pre| {
                (0..p).map(move |v| {
                    let mut next = pre.clone();
                    next[level] = v;
                    next
                })
            })
            .filter(|vals| ok_at(level, vals))
            .collect();
    }
    let solutions: Vec<Vec<u32>> = prefixes
        .into_par_iter()
        .flat_map_iter(|mut values| {
            let mut found = Vec::new();
            descend(split, &mut values, nvars, p, &ok_at, &mut found);
            found
        })
        .collect();
    Ok(solutions)
}

fn descend(
    level: usize,
    values: &mut Vec<u32>,
    nvars: usize,
    p: u32,
    ok_at: &(dyn Fn(usize, &[u32]) -> bool + Sync),
    found: &mut Vec<Vec<u32>>,
) {
    if level == nvars {
        found.push(values.clone());
        return;
    }
    for v in 0..p {
        values[level] = v;
        if ok_at(level, values) {
            descend(level + 1, values, nvars, p, ok_at, found);
        }
    }
    values[level] = 0;
}
