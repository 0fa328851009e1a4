//! Poisson algebras and Poisson modules given by structure constants, their axiom checks,
//! and Poisson morphisms `Q → P ⊗ A` with coefficients in a commutative ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::matrix::RingMatrix;
use crate::algebra::ring::CommutativeRing;
use crate::algebra::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Sparse constants `c_{ij}^s`, keyed by zero-based `(i, j, s)`. Zero values are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureConstants {
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

impl StructureConstants {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from `(i, j, s, c)` entries; later entries for the same key are summed.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Self {
        let mut out = Self::new();
        for (i, j, s, c) in entries {
            let merged = match out.entries.remove(&(i, j, s)) {
                Some(old) => &old + &c,
                None => c,
            };
            out.insert(i, j, s, merged);
        }
        out
    }

    pub fn insert(&mut self, i: usize, j: usize, s: usize, c: Scalar) {
        if c.is_zero() {
            self.entries.remove(&(i, j, s));
        } else {
            self.entries.insert((i, j, s), c);
        }
    }

    pub fn get(&self, i: usize, j: usize, s: usize) -> Option<&Scalar> {
        self.entries.get(&(i, j, s))
    }

    pub fn coefficient(&self, field: Field, i: usize, j: usize, s: usize) -> Scalar {
        self.get(i, j, s).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), &Scalar)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dense table `t[i][j][s]` of shape `rows × cols × out`.
    pub fn dense(&self, field: Field, rows: usize, cols: usize, out: usize) -> Vec<Vec<Vec<Scalar>>> {
        let mut t = vec![vec![vec![field.zero(); out]; cols]; rows];
        for (&(i, j, s), c) in &self.entries {
            t[i][j][s] = c.clone();
        }
        t
    }

    fn max_indices(&self) -> (usize, usize, usize) {
        self.entries.keys().fold((0, 0, 0), |(a, b, c), &(i, j, s)| {
            (a.max(i + 1), b.max(j + 1), c.max(s + 1))
        })
    }

    fn over_field(&self, field: Field) -> Result<Self> {
        let mut out = Self::new();
        for (&(i, j, s), c) in &self.entries {
            out.insert(i, j, s, convert_scalar(c, field)?);
        }
        Ok(out)
    }

    fn check_field(&self, field: Field, what: &str) -> Result<()> {
        match self.entries.values().find(|c| c.field() != field) {
            Some(c) => Err(Error::input(format!(
                "{what} constant {c} lies in {} but the structure is over {field}",
                c.field()
            ))),
            None => Ok(()),
        }
    }
}

/// Maps a scalar into `field`: identity, or reduction of a rational modulo `p`.
pub fn convert_scalar(c: &Scalar, field: Field) -> Result<Scalar> {
    match (c, field) {
        (_, f) if c.field() == f => Ok(c.clone()),
        (Scalar::Rational(q), Field::Prime(_)) => field.from_rational(q),
        _ => Err(Error::input(format!(
            "cannot move {c} from {} to {field}",
            c.field()
        ))),
    }
}

/// A finite-dimensional Poisson algebra: `e_i e_j = Σ τ_{ij}^s e_s`, `[e_i, e_j] = Σ μ_{ij}^s e_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    product: StructureConstants,
    bracket: StructureConstants,
    unit: Option<usize>,
}

/// Collects one-sided input and completes it: products for `i ≤ j`, brackets for `i < j`.
#[derive(Clone, Debug)]
pub struct PoissonBuilder {
    field: Field,
    dim: usize,
    labels: Option<Vec<String>>,
    product: Vec<(usize, usize, usize, Scalar)>,
    bracket: Vec<(usize, usize, usize, Scalar)>,
    unit: Option<usize>,
}

impl PoissonBuilder {
    pub fn new(field: Field, dim: usize) -> Self {
        PoissonBuilder {
            field,
            dim,
            labels: None,
            product: Vec::new(),
            bracket: Vec::new(),
            unit: None,
        }
    }

    pub fn labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// `e_i e_j ∋ c·e_s` (zero-based, `i ≤ j`).
    pub fn product(mut self, i: usize, j: usize, s: usize, c: Scalar) -> Self {
        self.product.push((i, j, s, c));
        self
    }

    /// `[e_i, e_j] ∋ c·e_s` (zero-based, `i < j`).
    pub fn bracket(mut self, i: usize, j: usize, s: usize, c: Scalar) -> Self {
        self.bracket.push((i, j, s, c));
        self
    }

    pub fn unit(mut self, index: usize) -> Self {
        self.unit = Some(index);
        self
    }

    pub fn build(self) -> Result<PoissonStructure> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::input("dimension must be positive"));
        }
        let mut product = BTreeMap::new();
        for (i, j, s, c) in self.product {
            check_range(n, &[i, j, s], "product")?;
            if i > j {
                return Err(Error::input(format!(
                    "product entry ({}, {}) must be given with i <= j",
                    i + 1,
                    j + 1
                )));
            }
            insert_once(&mut product, (i, j, s), convert_scalar(&c, self.field)?, "product")?;
        }
        let mut bracket = BTreeMap::new();
        for (i, j, s, c) in self.bracket {
            check_range(n, &[i, j, s], "bracket")?;
            if i >= j {
                return Err(Error::input(format!(
                    "bracket entry ({}, {}) must be given with i < j",
                    i + 1,
                    j + 1
                )));
            }
            insert_once(&mut bracket, (i, j, s), convert_scalar(&c, self.field)?, "bracket")?;
        }
        let mut tau = StructureConstants::new();
        for ((i, j, s), c) in product {
            tau.insert(j, i, s, c.clone());
            tau.insert(i, j, s, c);
        }
        let mut mu = StructureConstants::new();
        for ((i, j, s), c) in bracket {
            mu.insert(j, i, s, -&c);
            mu.insert(i, j, s, c);
        }
        PoissonStructure::from_parts(self.field, n, self.labels, tau, mu, self.unit)
    }
}

fn check_range(n: usize, indices: &[usize], what: &str) -> Result<()> {
    if let Some(bad) = indices.iter().find(|&&k| k >= n) {
        return Err(Error::input(format!(
            "{what} index {} out of range 1..={n}",
            bad + 1
        )));
    }
    Ok(())
}

fn insert_once(
    map: &mut BTreeMap<(usize, usize, usize), Scalar>,
    key: (usize, usize, usize),
    c: Scalar,
    what: &str,
) -> Result<()> {
    match map.get(&key) {
        Some(old) if *old != c => Err(Error::input(format!(
            "inconsistent duplicate {what} entry ({}, {}, {}): {old} vs {c}",
            key.0 + 1,
            key.1 + 1,
            key.2 + 1
        ))),
        _ => {
            map.insert(key, c);
            Ok(())
        }
    }
}

impl PoissonStructure {
    /// Takes fully specified constants as given, without symmetrization.
    pub fn from_parts(
        field: Field,
        dim: usize,
        labels: Option<Vec<String>>,
        product: StructureConstants,
        bracket: StructureConstants,
        unit: Option<usize>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("dimension must be positive"));
        }
        let labels = labels.unwrap_or_else(|| (1..=dim).map(|i| format!("e{i}")).collect());
        if labels.len() != dim {
            return Err(Error::input(format!(
                "{} labels given for dimension {dim}",
                labels.len()
            )));
        }
        for (what, c) in [("product", &product), ("bracket", &bracket)] {
            let (a, b, s) = c.max_indices();
            if a.max(b).max(s) > dim {
                return Err(Error::input(format!("{what} index out of range 1..={dim}")));
            }
            c.check_field(field, what)?;
        }
        if let Some(u) = unit {
            check_range(dim, &[u], "unit")?;
        }
        Ok(PoissonStructure {
            field,
            dim,
            labels,
            product,
            bracket,
            unit,
        })
    }

    /// The abelian structure: zero product and zero bracket.
    pub fn abelian(field: Field, dim: usize) -> Result<Self> {
        PoissonBuilder::new(field, dim).build()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn product(&self) -> &StructureConstants {
        &self.product
    }

    pub fn bracket(&self) -> &StructureConstants {
        &self.bracket
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn without_unit(&self) -> Self {
        PoissonStructure {
            unit: None,
            ..self.clone()
        }
    }

    pub fn tau(&self, i: usize, j: usize, s: usize) -> Scalar {
        self.product.coefficient(self.field, i, j, s)
    }

    pub fn mu(&self, i: usize, j: usize, s: usize) -> Scalar {
        self.bracket.coefficient(self.field, i, j, s)
    }

    /// Same constants over another field; rationals are reduced modulo `p`.
    pub fn over_field(&self, field: Field) -> Result<Self> {
        if field == self.field {
            return Ok(self.clone());
        }
        Ok(PoissonStructure {
            field,
            product: self.product.over_field(field)?,
            bracket: self.bracket.over_field(field)?,
            ..self.clone()
        })
    }

    /// Structure transported along the basis change `e'_i = Σ_s b_{si} e_s`.
    pub fn change_basis(&self, b: &RingMatrix<Scalar>) -> Result<Self> {
        let n = self.dim;
        let f = self.field;
        let binv = crate::algebra::matrix::inverse(f, b)
            .ok_or_else(|| Error::input("basis change matrix is singular"))?;
        let t = self.product.dense(f, n, n, n);
        let m = self.bracket.dense(f, n, n, n);
        let transport = |table: &Vec<Vec<Vec<Scalar>>>| {
            let mut out = StructureConstants::new();
            for i in 0..n {
                for j in 0..n {
                    // e'_i e'_j in old coordinates, then back to the new basis
                    let mut v = vec![f.zero(); n];
                    for a in 0..n {
                        for c in 0..n {
                            let w = b.get(a, i) * b.get(c, j);
                            if w.is_zero() {
                                continue;
                            }
                            for s in 0..n {
                                v[s] = &v[s] + &(&w * &table[a][c][s]);
                            }
                        }
                    }
                    let v = crate::algebra::matrix::mat_vec(f, &binv, &v);
                    for (s, c) in v.into_iter().enumerate() {
                        out.insert(i, j, s, c);
                    }
                }
            }
            out
        };
        let unit = match self.unit {
            Some(u) => {
                let target: Vec<Scalar> =
                    (0..n).map(|s| if s == u { f.one() } else { f.zero() }).collect();
                let coords = crate::algebra::matrix::mat_vec(f, &binv, &target);
                let hits: Vec<usize> = (0..n).filter(|&k| !coords[k].is_zero()).collect();
                match hits.as_slice() {
                    [k] if coords[*k].is_one() => Some(*k),
                    _ => None,
                }
            }
            None => None,
        };
        PoissonStructure::from_parts(f, n, None, transport(&t), transport(&m), unit)
    }

    pub(crate) fn product_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        self.product.dense(self.field, self.dim, self.dim, self.dim)
    }

    pub(crate) fn bracket_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        self.bracket.dense(self.field, self.dim, self.dim, self.dim)
    }
}

impl fmt::Display for PoissonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Poisson algebra of dimension {} over {}", self.dim, self.field)?;
        for ((i, j, s), c) in self.product.iter().filter(|((i, j, _), _)| i <= j) {
            writeln!(f, "  {} * {} : {c} {}", self.labels[i], self.labels[j], self.labels[s])?;
        }
        for ((i, j, s), c) in self.bracket.iter().filter(|((i, j, _), _)| i < j) {
            writeln!(f, "  [{}, {}] : {c} {}", self.labels[i], self.labels[j], self.labels[s])?;
        }
        Ok(())
    }
}

/// Named axiom of a Poisson algebra or Poisson module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Commutativity,
    Associativity,
    AlternatingBracket,
    Antisymmetry,
    Jacobi,
    Leibniz,
    Unit,
    LeftModule,
    LieModule,
    Pmod1,
    Pmod2,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::AlternatingBracket => "alternating bracket",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Jacobi => "Jacobi",
            Axiom::Leibniz => "Leibniz",
            Axiom::Unit => "unit",
            Axiom::LeftModule => "left module",
            Axiom::LieModule => "Lie module",
            Axiom::Pmod1 => "Pmod1",
            Axiom::Pmod2 => "Pmod2",
        };
        f.write_str(name)
    }
}

/// One violated axiom instance: zero-based basis indices and the nonzero defect vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub defect: Vec<Scalar>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        let def: Vec<String> = self.defect.iter().map(|c| c.to_string()).collect();
        write!(f, "{} at ({}): defect [{}]", self.axiom, idx.join(","), def.join(", "))
    }
}

/// All failed axiom instances; empty iff every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn axioms(&self) -> Vec<Axiom> {
        let mut a: Vec<Axiom> = self.failures.iter().map(|f| f.axiom).collect();
        a.dedup();
        a
    }

    fn record(&mut self, axiom: Axiom, indices: &[usize], defect: Vec<Scalar>) {
        if defect.iter().any(|c| !c.is_zero()) {
            self.failures.push(AxiomFailure {
                axiom,
                indices: indices.to_vec(),
                defect,
            });
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for failure in &self.failures {
            writeln!(f, "{failure}")?;
        }
        Ok(())
    }
}

fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Bilinear extension of a basis table: `op(v, e_k)` for a coordinate vector `v`.
fn apply_left(table: &[Vec<Vec<Scalar>>], field: Field, v: &[Scalar], k: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); table[0][0].len()];
    for (i, c) in v.iter().enumerate() {
        add_scaled(&mut out, c, &table[i][k]);
    }
    out
}

fn apply_right(table: &[Vec<Vec<Scalar>>], field: Field, k: usize, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); table[0][0].len()];
    for (j, c) in v.iter().enumerate() {
        add_scaled(&mut out, c, &table[k][j]);
    }
    out
}

/// Checks every Poisson axiom on all basis pairs and triples.
pub fn verify_poisson(p: &PoissonStructure) -> AxiomReport {
    let n = p.dim;
    let f = p.field;
    let t = p.product_table();
    let m = p.bracket_table();
    let mut report = AxiomReport::default();

    for i in 0..n {
        for j in i + 1..n {
            report.record(Axiom::Commutativity, &[i, j], sub_vec(&t[i][j], &t[j][i]));
        }
    }
    for i in 0..n {
        report.record(Axiom::AlternatingBracket, &[i, i], m[i][i].clone());
        for j in i + 1..n {
            let sum: Vec<Scalar> = m[i][j].iter().zip(&m[j][i]).map(|(a, b)| a + b).collect();
            report.record(Axiom::Antisymmetry, &[i, j], sum);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // (e_i e_j) e_k − e_i (e_j e_k)
                let lhs = apply_left(&t, f, &t[i][j], k);
                let rhs = apply_right(&t, f, i, &t[j][k]);
                report.record(Axiom::Associativity, &[i, j, k], sub_vec(&lhs, &rhs));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = apply_right(&m, f, i, &m[j][k]);
                let b = apply_right(&m, f, j, &m[k][i]);
                let c = apply_right(&m, f, k, &m[i][j]);
                let sum: Vec<Scalar> = (0..n).map(|s| &(&a[s] + &b[s]) + &c[s]).collect();
                report.record(Axiom::Jacobi, &[i, j, k], sum);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // [e_i, e_j e_k] − [e_i, e_j] e_k − e_j [e_i, e_k]
                let lhs = apply_right(&m, f, i, &t[j][k]);
                let r1 = apply_left(&t, f, &m[i][j], k);
                let r2 = apply_right(&t, f, j, &m[i][k]);
                let d: Vec<Scalar> = (0..n).map(|s| &(&lhs[s] - &r1[s]) - &r2[s]).collect();
                report.record(Axiom::Leibniz, &[i, j, k], d);
            }
        }
    }
    if let Some(u) = p.unit {
        for j in 0..n {
            let mut d = t[u][j].clone();
            d[j] = &d[j] - &f.one();
            report.record(Axiom::Unit, &[u, j], d);
        }
    }
    report
}

/// Errors unless `p` satisfies every axiom.
pub fn require_poisson(p: &PoissonStructure) -> Result<()> {
    let report = verify_poisson(p);
    match report.failures.first() {
        None => Ok(()),
        Some(first) => Err(Error::Precondition(format!(
            "not a Poisson algebra ({} failures, first: {first})",
            report.failures.len()
        ))),
    }
}

/// A Poisson module `U` over `P`: `e_i ▷ u_j = Σ γ_{ij}^s u_s`, `e_i ⇀ u_j = Σ ω_{ij}^s u_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonModuleStructure {
    algebra: PoissonStructure,
    dim: usize,
    dot: StructureConstants,
    harpoon: StructureConstants,
    verified: bool,
}

impl PoissonModuleStructure {
    pub fn new(
        algebra: PoissonStructure,
        dim: usize,
        dot: StructureConstants,
        harpoon: StructureConstants,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("module dimension must be positive"));
        }
        let n = algebra.dim();
        for (what, c) in [("dot", &dot), ("harpoon", &harpoon)] {
            let (a, b, s) = c.max_indices();
            if a > n || b > dim || s > dim {
                return Err(Error::input(format!("{what} action index out of range")));
            }
            c.check_field(algebra.field(), what)?;
        }
        Ok(PoissonModuleStructure {
            algebra,
            dim,
            dot,
            harpoon,
            verified: false,
        })
    }

    /// Builds from action matrices: `dot[i]` and `harpoon[i]` act by `e_i` on column vectors.
    pub fn from_matrices(
        algebra: PoissonStructure,
        dot: &[RingMatrix<Scalar>],
        harpoon: &[RingMatrix<Scalar>],
    ) -> Result<Self> {
        let n = algebra.dim();
        if dot.len() != n || harpoon.len() != n {
            return Err(Error::dimension(format!("need {n} action matrices per operation")));
        }
        let d = dot[0].rows();
        let to_constants = |ms: &[RingMatrix<Scalar>]| -> Result<StructureConstants> {
            let mut c = StructureConstants::new();
            for (i, mat) in ms.iter().enumerate() {
                if mat.rows() != d || mat.cols() != d {
                    return Err(Error::dimension("action matrices must be square of one size"));
                }
                for s in 0..d {
                    for j in 0..d {
                        c.insert(i, j, s, mat.get(s, j).clone());
                    }
                }
            }
            Ok(c)
        };
        Self::new(algebra, d, to_constants(dot)?, to_constants(harpoon)?)
    }

    /// The module with both actions zero.
    pub fn trivial(algebra: PoissonStructure, dim: usize) -> Result<Self> {
        Self::new(algebra, dim, StructureConstants::new(), StructureConstants::new())
    }

    pub fn algebra(&self) -> &PoissonStructure {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dot(&self) -> &StructureConstants {
        &self.dot
    }

    pub fn harpoon(&self) -> &StructureConstants {
        &self.harpoon
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Runs the module axioms and marks the structure verified when they hold.
    pub fn into_verified(mut self) -> Result<Self> {
        let report = verify_poisson_module(&self)?;
        if let Some(first) = report.failures.first() {
            return Err(Error::Verification(format!("not a Poisson module: {first}")));
        }
        self.verified = true;
        Ok(self)
    }

    /// Matrix of `e_i ▷ −` on column vectors.
    pub fn dot_matrix(&self, i: usize) -> RingMatrix<Scalar> {
        action_matrix(&self.dot, self.field(), i, self.dim)
    }

    /// Matrix of `e_i ⇀ −` on column vectors.
    pub fn harpoon_matrix(&self, i: usize) -> RingMatrix<Scalar> {
        action_matrix(&self.harpoon, self.field(), i, self.dim)
    }
}

fn action_matrix(c: &StructureConstants, field: Field, i: usize, d: usize) -> RingMatrix<Scalar> {
    RingMatrix::from_fn(d, d, |s, j| c.coefficient(field, i, j, s))
}

/// Checks the left-module, Lie-module, Pmod1 and Pmod2 laws on all basis triples `(i, j, k)`,
/// with `i, j` indexing the algebra and `k` the module.
pub fn verify_poisson_module(u: &PoissonModuleStructure) -> Result<AxiomReport> {
    let p = &u.algebra;
    if !verify_poisson(p).is_empty() {
        return Err(Error::Precondition(
            "the base algebra does not satisfy the Poisson axioms".into(),
        ));
    }
    let (n, d, f) = (p.dim(), u.dim, p.field());
    let t = p.product_table();
    let m = p.bracket_table();
    let g = u.dot.dense(f, n, d, d);
    let w = u.harpoon.dense(f, n, d, d);
    // act(table, v, x): Σ_i v_i (e_i ∘ x) for an algebra vector v and module vector x
    let act = |table: &Vec<Vec<Vec<Scalar>>>, i: usize, x: &[Scalar]| -> Vec<Scalar> {
        apply_right(table, f, i, x)
    };
    let act_vec = |table: &Vec<Vec<Vec<Scalar>>>, v: &[Scalar], k: usize| -> Vec<Scalar> {
        apply_left(table, f, v, k)
    };
    let mut report = AxiomReport::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..d {
                let lhs = act_vec(&g, &t[i][j], k);
                let rhs = act(&g, i, &g[j][k]);
                report.record(Axiom::LeftModule, &[i, j, k], sub_vec(&lhs, &rhs));

                let lhs = act_vec(&w, &m[i][j], k);
                let rhs = sub_vec(&act(&w, i, &w[j][k]), &act(&w, j, &w[i][k]));
                report.record(Axiom::LieModule, &[i, j, k], sub_vec(&lhs, &rhs));

                let lhs = act_vec(&w, &t[i][j], k);
                let a = act(&g, i, &w[j][k]);
                let b = act(&g, j, &w[i][k]);
                let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                report.record(Axiom::Pmod1, &[i, j, k], sub_vec(&lhs, &rhs));

                let lhs = act_vec(&g, &m[i][j], k);
                let rhs = sub_vec(&act(&w, i, &g[j][k]), &act(&w, j, &g[i][k]));
                report.record(Axiom::Pmod2, &[i, j, k], sub_vec(&lhs, &rhs));
            }
        }
    }
    Ok(report)
}

/// A linear map `Q → P ⊗ A`, `f_i ↦ Σ_s e_s ⊗ d_{si}`; the matrix has `dim P` rows and `dim Q` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMapOverRing<E> {
    matrix: RingMatrix<E>,
}

impl<E: Clone> LinearMapOverRing<E> {
    pub fn new(matrix: RingMatrix<E>) -> Self {
        LinearMapOverRing { matrix }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RingMatrix<E> {
        &self.matrix
    }

    pub fn into_matrix(self) -> RingMatrix<E> {
        self.matrix
    }

    /// Coefficient `d_{si}` of `e_s` in the image of `f_i`.
    pub fn coefficient(&self, s: usize, i: usize) -> &E {
        self.matrix.get(s, i)
    }
}

/// Which compatibility a defect belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// `Σ_u α_{ij}^u x_{au} − Σ_{s,t} τ_{st}^a x_{si} x_{tj}`.
    Product,
    /// `Σ_u β_{ij}^u x_{au} − Σ_{s,t} μ_{st}^a x_{si} x_{tj}`.
    Bracket,
    /// `x_{s i₀} − δ_{s, i₀(P)}` for unital algebras.
    Unit,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Product => "Gamma",
            RelationKind::Bracket => "Omega",
            RelationKind::Unit => "Unit",
        })
    }
}

/// A compatibility `(kind, a, i, j)` that fails for a candidate morphism (zero-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDefect {
    pub kind: RelationKind,
    pub a: usize,
    pub i: usize,
    pub j: usize,
}

/// The compatibility value for `(a, i, j)`, computed in `ring` from the entries `d`.
pub(crate) fn compatibility<R: CommutativeRing>(
    ring: &R,
    kind: RelationKind,
    q: &PoissonStructure,
    p: &PoissonStructure,
    d: &RingMatrix<R::Element>,
    (a, i, j): (usize, usize, usize),
) -> R::Element {
    let (src, tgt) = match kind {
        RelationKind::Product => (&q.product, &p.product),
        RelationKind::Bracket => (&q.bracket, &p.bracket),
        RelationKind::Unit => unreachable!("unit relations are not compatibilities"),
    };
    let m = q.dim();
    let n = p.dim();
    let mut acc = ring.zero();
    for u in 0..m {
        if let Some(c) = src.get(i, j, u) {
            acc = ring.add(&acc, &ring.scale(c, d.get(a, u)));
        }
    }
    for s in 0..n {
        for t in 0..n {
            if let Some(c) = tgt.get(s, t, a) {
                let prod = ring.mul(d.get(s, i), d.get(t, j));
                acc = ring.sub(&acc, &ring.scale(c, &prod));
            }
        }
    }
    acc
}

/// Lists every failing compatibility of `g: Q → P ⊗ A`.
pub fn morphism_defects<R: CommutativeRing>(
    g: &LinearMapOverRing<R::Element>,
    q: &PoissonStructure,
    p: &PoissonStructure,
    ring: &R,
    unital: bool,
) -> Result<Vec<MorphismDefect>> {
    let (n, m) = (p.dim(), q.dim());
    if g.target_dim() != n || g.source_dim() != m {
        return Err(Error::dimension(format!(
            "map matrix is {}x{} but the algebras need {n}x{m}",
            g.target_dim(),
            g.source_dim()
        )));
    }
    let mut defects = Vec::new();
    for a in 0..n {
        for i in 0..m {
            for j in 0..m {
                for kind in [RelationKind::Product, RelationKind::Bracket] {
                    let v = compatibility(ring, kind, q, p, &g.matrix, (a, i, j));
                    if !ring.is_zero(&v) {
                        defects.push(MorphismDefect { kind, a, i, j });
                    }
                }
            }
        }
    }
    if unital {
        let (Some(uq), Some(up)) = (q.unit(), p.unit()) else {
            return Err(Error::Precondition(
                "unital check needs unit indices on both algebras".into(),
            ));
        };
        for s in 0..n {
            let want = if s == up { ring.one() } else { ring.zero() };
            if !ring.equal(g.coefficient(s, uq), &want) {
                defects.push(MorphismDefect {
                    kind: RelationKind::Unit,
                    a: s,
                    i: uq,
                    j: uq,
                });
            }
        }
    }
    Ok(defects)
}

/// Whether `g: Q → P ⊗ A` preserves product and bracket (and units when `unital`).
pub fn check_poisson_morphism<R: CommutativeRing>(
    g: &LinearMapOverRing<R::Element>,
    q: &PoissonStructure,
    p: &PoissonStructure,
    ring: &R,
    unital: bool,
) -> Result<bool> {
    Ok(morphism_defects(g, q, p, ring, unital)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_dim(f: Field) -> PoissonStructure {
        PoissonBuilder::new(f, 3)
            .product(0, 0, 1, f.one())
            .bracket(0, 2, 2, f.one())
            .build()
            .unwrap()
    }

    #[test]
    fn abelian_structure_passes() {
        let p = PoissonStructure::abelian(Field::Rationals, 3).unwrap();
        assert!(verify_poisson(&p).is_empty());
    }

    #[test]
    fn three_dimensional_example_passes() {
        for f in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
            assert!(verify_poisson(&three_dim(f)).is_empty(), "over {f}");
        }
    }

    #[test]
    fn forced_asymmetry_is_a_commutativity_failure() {
        let f = Field::Rationals;
        let tau = StructureConstants::from_entries([(0, 1, 0, f.one())]);
        let p = PoissonStructure::from_parts(f, 2, None, tau, StructureConstants::new(), None)
            .unwrap();
        let report = verify_poisson(&p);
        let comm: Vec<_> = report
            .failures
            .iter()
            .filter(|x| x.axiom == Axiom::Commutativity)
            .collect();
        assert_eq!(comm.len(), 1);
        assert_eq!(comm[0].indices, vec![0, 1]);
    }

    #[test]
    fn completion_antisymmetrizes() {
        let f = Field::Rationals;
        let p = PoissonBuilder::new(f, 2)
            .bracket(0, 1, 1, f.from_i64(3))
            .build()
            .unwrap();
        assert_eq!(p.mu(1, 0, 1), f.from_i64(-3));
        assert!(p.mu(0, 0, 1).is_zero());
    }

    #[test]
    fn builder_rejects_bad_input() {
        let f = Field::Rationals;
        assert!(PoissonBuilder::new(f, 0).build().is_err());
        assert!(PoissonBuilder::new(f, 3).product(0, 1, 4, f.one()).build().is_err());
        assert!(PoissonBuilder::new(f, 3).product(1, 0, 0, f.one()).build().is_err());
        assert!(PoissonBuilder::new(f, 3).bracket(1, 1, 0, f.one()).build().is_err());
        assert!(PoissonBuilder::new(f, 2)
            .product(0, 0, 0, f.one())
            .product(0, 0, 0, f.from_i64(2))
            .build()
            .is_err());
        assert!(PoissonBuilder::new(f, 2)
            .product(0, 0, 0, f.one())
            .product(0, 0, 0, f.one())
            .build()
            .is_ok());
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1 breaks Jacobi
        let f = Field::Rationals;
        let p = PoissonBuilder::new(f, 3)
            .bracket(0, 1, 2, f.one())
            .bracket(1, 2, 0, f.one())
            .bracket(0, 2, 0, f.one())
            .build()
            .unwrap();
        assert!(verify_poisson(&p).axioms().contains(&Axiom::Jacobi));
    }

    #[test]
    fn unit_law_is_checked() {
        let f = Field::Rationals;
        let good = PoissonBuilder::new(f, 2)
            .product(0, 0, 0, f.one())
            .product(0, 1, 1, f.one())
            .unit(0)
            .build()
            .unwrap();
        assert!(verify_poisson(&good).is_empty());
        let bad = PoissonBuilder::new(f, 2).unit(0).build().unwrap();
        assert!(verify_poisson(&bad).axioms().contains(&Axiom::Unit));
    }

    #[test]
    fn trivial_module_passes_and_perturbation_fails_pmod2() {
        let f = Field::Prime(3);
        let p = three_dim(f);
        let u = PoissonModuleStructure::trivial(p.clone(), 2).unwrap();
        assert!(verify_poisson_module(&u).unwrap().is_empty());
        // ▷ by e3 nonzero while [e1, e3] = e3 and ⇀ vanishes: Pmod2 breaks at (1, 3, ·)
        let dot = StructureConstants::from_entries([(2, 0, 0, f.one())]);
        let bad = PoissonModuleStructure::new(p, 2, dot, StructureConstants::new()).unwrap();
        let report = verify_poisson_module(&bad).unwrap();
        assert!(report
            .failures
            .iter()
            .any(|x| x.axiom == Axiom::Pmod2 && x.indices[..2] == [0, 2]));
    }

    #[test]
    fn module_over_non_poisson_base_is_a_precondition_error() {
        let f = Field::Rationals;
        let tau = StructureConstants::from_entries([(0, 1, 0, f.one())]);
        let p = PoissonStructure::from_parts(f, 2, None, tau, StructureConstants::new(), None)
            .unwrap();
        let u = PoissonModuleStructure::trivial(p, 1).unwrap();
        assert!(matches!(
            verify_poisson_module(&u),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn identity_is_a_morphism_and_zero_is_not_unital() {
        let f = Field::Rationals;
        let p = three_dim(f);
        let id = LinearMapOverRing::new(RingMatrix::identity(&f, 3));
        assert!(check_poisson_morphism(&id, &p, &p, &f, false).unwrap());
        let unital = PoissonBuilder::new(f, 1)
            .product(0, 0, 0, f.one())
            .unit(0)
            .build()
            .unwrap();
        let zero = LinearMapOverRing::new(RingMatrix::filled(&f, 1, 1));
        assert!(check_poisson_morphism(&zero, &unital, &unital, &f, false).unwrap());
        assert!(!check_poisson_morphism(&zero, &unital, &unital, &f, true).unwrap());
        let wrong = LinearMapOverRing::new(RingMatrix::filled(&f, 2, 3));
        assert!(check_poisson_morphism(&wrong, &p, &p, &f, false).is_err());
    }

    #[test]
    fn basis_change_preserves_the_axioms() {
        let f = Field::Prime(5);
        let p = three_dim(f);
        let b = RingMatrix::from_rows(vec![
            vec![f.from_i64(1), f.from_i64(2), f.zero()],
            vec![f.zero(), f.from_i64(1), f.from_i64(3)],
            vec![f.from_i64(1), f.zero(), f.from_i64(1)],
        ])
        .unwrap();
        let q = p.change_basis(&b).unwrap();
        assert!(verify_poisson(&q).is_empty());
        // b itself is an isomorphism q → p
        let g = LinearMapOverRing::new(b);
        assert!(check_poisson_morphism(&g, &q, &p, &f, false).unwrap());
    }
}
