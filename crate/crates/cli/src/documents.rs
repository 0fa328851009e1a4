//! JSON documents for algebras, Poisson modules and modules over `𝒫(P, Q)`.
//!
//! Indices are 1-based. Coefficients are written as strings (`"3"`, `"-1/2"`); integers are also
//! accepted on input.

use serde::{Deserialize, Serialize};

use unipoiss::algebra::{Field, RingMatrix, Scalar};
use unipoiss::modules::AModuleStructure;
use unipoiss::poisson::{verify_poisson, PoissonBuilder, PoissonModuleStructure, PoissonStructure, StructureConstants};
use unipoiss::universal::UniversalPresentation;

use crate::error::{CliError, CliResult};
use crate::report::failure_json;

/// `"Q"` or `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDescriptor {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u32,
    },
}

impl FieldDescriptor {
    pub fn to_field(&self) -> CliResult<Field> {
        match self {
            FieldDescriptor::Named(s) if s == "Q" => Ok(Field::Rationals),
            FieldDescriptor::Named(s) => Err(CliError::Usage(format!("unknown field {s:?}; use \"Q\" or {{\"Fp\": p}}"))),
            FieldDescriptor::Prime { fp } => Ok(Field::prime(*fp)?),
        }
    }

    pub fn from_field(f: Field) -> Self {
        match f {
            Field::Rationals => FieldDescriptor::Named("Q".into()),
            Field::Prime(p) => FieldDescriptor::Prime { fp: p },
        }
    }
}

/// An exact coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Integer(i64),
    Text(String),
}

impl Coefficient {
    pub fn to_scalar(&self, f: Field) -> CliResult<Scalar> {
        Ok(match self {
            Coefficient::Integer(v) => f.from_i64(*v),
            Coefficient::Text(t) => f.parse_scalar(t)?,
        })
    }

    pub fn from_scalar(c: &Scalar) -> Self {
        Coefficient::Text(c.to_string())
    }
}

/// `[i, j, s, c]`.
pub type Entry = (usize, usize, usize, Coefficient);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub field: FieldDescriptor,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// `e_i e_j = Σ c e_s`, listed for `i ≤ j`.
    #[serde(default)]
    pub product: Vec<Entry>,
    /// `[e_i, e_j] = Σ c e_s`, listed for `i < j`.
    #[serde(default)]
    pub bracket: Vec<Entry>,
}

fn check_index(what: &str, k: usize, bound: usize) -> CliResult<usize> {
    if k == 0 || k > bound {
        return Err(CliError::Usage(format!("{what} index {k} is out of range 1..={bound}")));
    }
    Ok(k - 1)
}

/// Completes the constants without checking the axioms.
pub fn parse_algebra_unchecked(doc: &AlgebraDocument) -> CliResult<PoissonStructure> {
    let f = doc.field.to_field()?;
    let n = doc.dim;
    if n == 0 {
        return Err(CliError::Usage("dim must be positive".into()));
    }
    let mut b = PoissonBuilder::new(f, n);
    if let Some(labels) = &doc.labels {
        if labels.len() != n {
            return Err(CliError::Usage(format!("expected {n} labels, got {}", labels.len())));
        }
        b = b.labels(labels.clone());
    }
    if let Some(u) = doc.unit {
        b = b.unit(check_index("unit", u, n)?);
    }
    for (i, j, s, c) in &doc.product {
        let (i, j, s) = (check_index("product", *i, n)?, check_index("product", *j, n)?, check_index("product", *s, n)?);
        if i > j {
            return Err(CliError::Usage(format!("product entry [{}, {}, ..] must have i <= j", i + 1, j + 1)));
        }
        b = b.product(i, j, s, c.to_scalar(f)?);
    }
    for (i, j, s, c) in &doc.bracket {
        let (i, j, s) = (check_index("bracket", *i, n)?, check_index("bracket", *j, n)?, check_index("bracket", *s, n)?);
        if i >= j {
            return Err(CliError::Usage(format!("bracket entry [{}, {}, ..] must have i < j", i + 1, j + 1)));
        }
        b = b.bracket(i, j, s, c.to_scalar(f)?);
    }
    Ok(b.build()?)
}

/// Completed and verified; a failed axiom is reported with every failing instance.
pub fn parse_algebra(doc: &AlgebraDocument) -> CliResult<PoissonStructure> {
    let p = parse_algebra_unchecked(doc)?;
    let report = verify_poisson(&p);
    if !report.is_empty() {
        return Err(CliError::Verification {
            message: format!("not a Poisson algebra: {}", report.failures[0]),
            details: report.failures.iter().map(failure_json).collect(),
        });
    }
    Ok(p)
}

fn entries(c: &StructureConstants, keep: impl Fn(usize, usize) -> bool) -> Vec<Entry> {
    c.iter()
        .filter(|((i, j, _), _)| keep(*i, *j))
        .map(|((i, j, s), v)| (i + 1, j + 1, s + 1, Coefficient::from_scalar(v)))
        .collect()
}

pub fn algebra_document(p: &PoissonStructure) -> AlgebraDocument {
    AlgebraDocument {
        field: FieldDescriptor::from_field(p.field()),
        dim: p.dim(),
        unit: p.unit().map(|u| u + 1),
        labels: Some(p.labels().to_vec()),
        product: entries(p.product(), |i, j| i <= j),
        bracket: entries(p.bracket(), |i, j| i < j),
    }
}

/// `e_i ▸ u_j = Σ c u_s` as `[i, j, s, c]`, and the same for `⇀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub dim: usize,
    #[serde(default)]
    pub dot: Vec<Entry>,
    #[serde(default)]
    pub harpoon: Vec<Entry>,
}

fn constants(list: &[Entry], f: Field, bounds: (usize, usize, usize), what: &str) -> CliResult<StructureConstants> {
    let mut out = StructureConstants::new();
    for (i, j, s, c) in list {
        let key = (
            check_index(what, *i, bounds.0)?,
            check_index(what, *j, bounds.1)?,
            check_index(what, *s, bounds.2)?,
        );
        let v = c.to_scalar(f)?;
        if let Some(prev) = out.get(key.0, key.1, key.2) {
            if *prev != v {
                return Err(CliError::Usage(format!("inconsistent duplicate {what} entry [{i}, {j}, {s}]")));
            }
        }
        out.insert(key.0, key.1, key.2, v);
    }
    Ok(out)
}

/// A Poisson module over `algebra`; the axioms are not checked here.
pub fn parse_module(doc: &ModuleDocument, algebra: &PoissonStructure) -> CliResult<PoissonModuleStructure> {
    let f = algebra.field();
    let bounds = (algebra.dim(), doc.dim, doc.dim);
    let dot = constants(&doc.dot, f, bounds, "dot")?;
    let harpoon = constants(&doc.harpoon, f, bounds, "harpoon")?;
    Ok(PoissonModuleStructure::new(algebra.clone(), doc.dim, dot, harpoon)?)
}

pub fn module_document(u: &PoissonModuleStructure) -> ModuleDocument {
    ModuleDocument {
        dim: u.dim(),
        dot: entries(u.dot(), |_, _| true),
        harpoon: entries(u.harpoon(), |_, _| true),
    }
}

/// `x_{si} · v_c = Σ_t coeff v_t` as `[s, i, c, t, coeff]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AModuleDocument {
    pub dim: usize,
    #[serde(default)]
    pub actions: Vec<(usize, usize, usize, usize, Coefficient)>,
}

/// An `A`-module; fails unless the actions commute and annihilate the relations.
pub fn parse_a_module(doc: &AModuleDocument, a: &UniversalPresentation) -> CliResult<AModuleStructure> {
    let f = a.field();
    let d = doc.dim;
    if d == 0 {
        return Err(CliError::Usage("dim must be positive".into()));
    }
    let mut mats: Vec<RingMatrix<Scalar>> = (0..a.n() * a.m()).map(|_| RingMatrix::filled(&f, d, d)).collect();
    let mut seen = std::collections::BTreeMap::new();
    for (s, i, c, t, coeff) in &doc.actions {
        let s0 = check_index("action", *s, a.n())?;
        let i0 = check_index("action", *i, a.m())?;
        let c0 = check_index("action", *c, d)?;
        let t0 = check_index("action", *t, d)?;
        let v = coeff.to_scalar(f)?;
        if let Some(prev) = seen.insert((s0, i0, c0, t0), v.clone()) {
            if prev != v {
                return Err(CliError::Usage(format!("inconsistent duplicate action entry [{s}, {i}, {c}, {t}]")));
            }
        }
        mats[a.var_index(s0, i0)].set(t0, c0, v);
    }
    Ok(AModuleStructure::new(a.clone(), mats)?)
}

pub fn a_module_document(v: &AModuleStructure) -> AModuleDocument {
    let a = v.presentation();
    let mut actions = Vec::new();
    for s in 0..a.n() {
        for i in 0..a.m() {
            let m = v.action(s, i);
            for c in 0..v.dim() {
                for t in 0..v.dim() {
                    let x = m.get(t, c);
                    if !x.is_zero() {
                        actions.push((s + 1, i + 1, c + 1, t + 1, Coefficient::from_scalar(x)));
                    }
                }
            }
        }
    }
    AModuleDocument { dim: v.dim(), actions }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_dim_doc() -> AlgebraDocument {
        serde_json::from_str(r#"{"field":"Q","dim":3,"product":[[1,1,2,1]],"bracket":[[1,3,3,"1"]]}"#).unwrap()
    }

    #[test]
    fn parses_the_three_dimensional_example() {
        let p = parse_algebra(&three_dim_doc()).unwrap();
        assert_eq!(p.dim(), 3);
        assert!(p.tau(0, 0, 1).is_one());
        assert_eq!(p.mu(2, 0, 2), Field::Rationals.from_i64(-1));
    }

    #[test]
    fn empty_lists_give_the_abelian_algebra() {
        let doc: AlgebraDocument = serde_json::from_str(r#"{"field":{"Fp":5},"dim":2}"#).unwrap();
        let p = parse_algebra(&doc).unwrap();
        assert_eq!(p, PoissonStructure::abelian(Field::Prime(5), 2).unwrap());
    }

    #[test]
    fn out_of_range_index_is_an_input_error() {
        let doc: AlgebraDocument = serde_json::from_str(r#"{"field":"Q","dim":3,"product":[[1,2,5,1]]}"#).unwrap();
        let err = parse_algebra(&doc).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn algebra_round_trip() {
        let p = parse_algebra(&three_dim_doc()).unwrap();
        let text = serde_json::to_string(&algebra_document(&p)).unwrap();
        let back: AlgebraDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(parse_algebra(&back).unwrap(), p);
    }

    #[test]
    fn rational_coefficients_are_exact() {
        let doc: AlgebraDocument =
            serde_json::from_str(r#"{"field":"Q","dim":2,"bracket":[[1,2,2,"-3/4"]]}"#).unwrap();
        let p = parse_algebra(&doc).unwrap();
        assert_eq!(p.mu(0, 1, 1).to_string(), "-3/4");
        let out = serde_json::to_string(&algebra_document(&p)).unwrap();
        assert!(out.contains("\"-3/4\""));
    }
}
