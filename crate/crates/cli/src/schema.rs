//! On-disk JSON documents.
//!
//! Scalars are always strings: `"3"`, `"-1/2"`. Algebra elements are arrays
//! of such strings, one per basis element (`1` first, then the generators in
//! order). Polynomials are arrays of terms `{"coeff": "2", "vars": {"x": 1}}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use rigidity_core::wpoly::Monomial;
use rigidity_core::{
    induced_map, monomial_square_zero_algebra, AlgebraElement, AlgebraMatrix, ArtinAlgebra,
    Assignment, ChainComplex, ComplexError, FDModule, FieldCtx, FreeResolution, PolyMatrix, Scalar,
    VarTable, WeightedPoly,
};

use crate::Failure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Prime { fp: u64 },
    Named(String),
}

impl FieldSpec {
    pub fn ctx(&self) -> Result<FieldCtx, Failure> {
        match self {
            FieldSpec::Named(s) if s == "q" => Ok(FieldCtx::rationals()),
            FieldSpec::Named(s) => Err(Failure::Input(format!("unknown field {s:?}"))),
            FieldSpec::Prime { fp } => {
                FieldCtx::prime(*fp).map_err(|e| Failure::Input(e.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub generators: Vec<String>,
    #[serde(rename = "type")]
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Quotient {
        quotient_of_free: usize,
        /// Each relation is an element of `A^r`: `r` coefficient vectors.
        relations: Vec<Vec<Vec<String>>>,
    },
    Free {
        free_rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub algebra: AlgebraSpec,
    pub module: ModuleSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarSpec {
    pub name: String,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    #[serde(default)]
    pub vars: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyMatrixSpec {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<TermSpec>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub algebra: AlgebraSpec,
    pub variables: Vec<VarSpec>,
    /// Leftmost map first: `0 -> R^{rows(m_0)} -> ... -> R^{cols(m_last)}`.
    pub matrices: Vec<PolyMatrixSpec>,
    pub assignment: BTreeMap<String, Vec<String>>,
    /// Rank of the last free module; required only when `matrices` is empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraMatrixSpec {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    /// Ranks of the powers of the base module, left to right.
    pub ranks: Vec<usize>,
    /// `maps[i]` goes from position `i` to position `i + 1`.
    pub maps: Vec<AlgebraMatrixSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub algebra: AlgebraSpec,
    pub module: ModuleSpec,
    pub complex: ComplexSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub algebra: AlgebraSpec,
}

/// Any of the accepted documents, recognized by its top-level keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputDocument {
    Algebra(AlgebraDoc),
    Module(ModuleDoc),
    Resolution(ResolutionDoc),
    Complex(ComplexDoc),
}

fn parse_err(what: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("malformed {what} document: {e}"))
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let value: Value = serde_json::from_str(text).map_err(|e| parse_err("JSON", e))?;
        let Some(obj) = value.as_object() else {
            return Err(Failure::Input("top level must be a JSON object".into()));
        };
        if obj.contains_key("matrices") {
            serde_json::from_value(value)
                .map(InputDocument::Resolution)
                .map_err(|e| parse_err("resolution", e))
        } else if obj.contains_key("complex") {
            serde_json::from_value(value)
                .map(InputDocument::Complex)
                .map_err(|e| parse_err("complex", e))
        } else if obj.contains_key("module") {
            serde_json::from_value(value)
                .map(InputDocument::Module)
                .map_err(|e| parse_err("module", e))
        } else if obj.contains_key("algebra") {
            serde_json::from_value(value)
                .map(InputDocument::Algebra)
                .map_err(|e| parse_err("algebra", e))
        } else {
            Err(Failure::Input(
                "unrecognized document: no algebra, module, complex or matrices key".into(),
            ))
        }
    }

    pub fn field(&self) -> Option<&FieldSpec> {
        match self {
            InputDocument::Algebra(d) => d.field.as_ref(),
            InputDocument::Module(d) => d.field.as_ref(),
            InputDocument::Resolution(d) => d.field.as_ref(),
            InputDocument::Complex(d) => d.field.as_ref(),
        }
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        match self {
            InputDocument::Algebra(d) => &d.algebra,
            InputDocument::Module(d) => &d.algebra,
            InputDocument::Resolution(d) => &d.algebra,
            InputDocument::Complex(d) => &d.algebra,
        }
    }
}

pub fn build_algebra(ctx: FieldCtx, spec: &AlgebraSpec) -> Result<Arc<ArtinAlgebra>, Failure> {
    if spec.kind != "square_zero" {
        return Err(Failure::Input(format!(
            "unsupported algebra type {:?}",
            spec.kind
        )));
    }
    let names: Vec<&str> = spec.generators.iter().map(String::as_str).collect();
    monomial_square_zero_algebra(ctx, &names).map_err(|e| Failure::Input(e.to_string()))
}

fn parse_scalar(ctx: FieldCtx, s: &str) -> Result<Scalar, Failure> {
    ctx.parse(s).map_err(|e| Failure::Input(e.to_string()))
}

pub fn parse_element(
    alg: &Arc<ArtinAlgebra>,
    coeffs: &[String],
) -> Result<AlgebraElement, Failure> {
    if coeffs.len() != alg.dim() {
        return Err(Failure::Input(format!(
            "algebra element needs {} coefficients, got {}",
            alg.dim(),
            coeffs.len()
        )));
    }
    let coords = coeffs
        .iter()
        .map(|c| parse_scalar(alg.ctx(), c))
        .collect::<Result<Vec<_>, _>>()?;
    AlgebraElement::new(alg, coords).map_err(|e| Failure::Input(e.to_string()))
}

pub fn build_module(alg: &Arc<ArtinAlgebra>, spec: &ModuleSpec) -> Result<FDModule, Failure> {
    match spec {
        ModuleSpec::Free { free_rank } => Ok(FDModule::free(alg, *free_rank)),
        ModuleSpec::Quotient {
            quotient_of_free,
            relations,
        } => {
            let free = FDModule::free(alg, *quotient_of_free);
            let mut gens = Vec::with_capacity(relations.len());
            for rel in relations {
                if rel.len() != *quotient_of_free {
                    return Err(Failure::Input(format!(
                        "relation has {} components, expected {quotient_of_free}",
                        rel.len()
                    )));
                }
                let mut v = Vec::with_capacity(free.dim());
                for component in rel {
                    v.extend(parse_element(alg, component)?.coords().iter().cloned());
                }
                gens.push(v);
            }
            let w = free
                .submodule_generated(&gens)
                .map_err(|e| Failure::Input(e.to_string()))?;
            Ok(free
                .quotient(&w)
                .map_err(|e| Failure::Input(e.to_string()))?
                .module)
        }
    }
}

fn check_rows<T>(rows: usize, cols: usize, entries: &[Vec<T>]) -> Result<(), Failure> {
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(Failure::Input(format!(
            "matrix entries do not match declared shape {rows}x{cols}"
        )));
    }
    Ok(())
}

pub fn build_algebra_matrix(
    alg: &Arc<ArtinAlgebra>,
    spec: &AlgebraMatrixSpec,
) -> Result<AlgebraMatrix, Failure> {
    check_rows(spec.rows, spec.cols, &spec.entries)?;
    let entries = spec
        .entries
        .iter()
        .flatten()
        .map(|e| parse_element(alg, e))
        .collect::<Result<Vec<_>, _>>()?;
    AlgebraMatrix::new(alg, spec.rows, spec.cols, entries)
        .map_err(|e| Failure::Input(e.to_string()))
}

/// A resolution ready for tensoring: its variables, maps and specialization.
pub struct BuiltResolution {
    pub table: VarTable,
    pub resolution: FreeResolution,
    pub assignment: Assignment,
}

pub fn build_resolution(
    alg: &Arc<ArtinAlgebra>,
    doc: &ResolutionDoc,
) -> Result<BuiltResolution, Failure> {
    let ctx = alg.ctx();
    let mut table = VarTable::new();
    for v in &doc.variables {
        table
            .push(&v.name, v.weight)
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    let mut matrices = Vec::with_capacity(doc.matrices.len());
    for m in &doc.matrices {
        check_rows(m.rows, m.cols, &m.entries)?;
        let mut polys = Vec::with_capacity(m.rows * m.cols);
        for terms in m.entries.iter().flatten() {
            let mut parsed = Vec::with_capacity(terms.len());
            for t in terms {
                let mut factors = Vec::with_capacity(t.vars.len());
                for (name, &e) in &t.vars {
                    let id = table
                        .lookup(name)
                        .ok_or_else(|| Failure::Input(format!("undeclared variable {name:?}")))?;
                    factors.push((id, e));
                }
                parsed.push((Monomial::from_pairs(factors), parse_scalar(ctx, &t.coeff)?));
            }
            polys.push(
                WeightedPoly::from_terms(ctx, parsed).map_err(|e| Failure::Input(e.to_string()))?,
            );
        }
        matrices.push(
            PolyMatrix::new(ctx, m.rows, m.cols, polys)
                .map_err(|e| Failure::Input(e.to_string()))?,
        );
    }
    let resolution = if matrices.is_empty() {
        FreeResolution::free(doc.tail_rank.unwrap_or(0))
    } else {
        let r = FreeResolution::new(matrices).map_err(|e| Failure::Input(e.to_string()))?;
        if let Some(t) = doc.tail_rank {
            if r.ranks()[0] != t {
                return Err(Failure::Input(format!(
                    "tail_rank {t} disagrees with the last matrix ({} columns)",
                    r.ranks()[0]
                )));
            }
        }
        r
    };
    let mut assignment = Assignment::new(alg);
    for (name, coeffs) in &doc.assignment {
        let id = table.lookup(name).ok_or_else(|| {
            Failure::Input(format!("assignment names undeclared variable {name:?}"))
        })?;
        assignment
            .set(id, parse_element(alg, coeffs)?)
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    for (id, name, _) in table.iter() {
        if assignment.get(id).is_none() {
            return Err(Failure::Input(format!(
                "variable {name:?} has no assigned image"
            )));
        }
    }
    Ok(BuiltResolution {
        table,
        resolution,
        assignment,
    })
}

/// Maps a complex error to an exit category: failing d∘d is a check failure,
/// anything else is bad input.
pub fn complex_failure(e: ComplexError) -> Failure {
    match e {
        ComplexError::NotAComplex { .. } => Failure::Check(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

/// The complex of the document, stored by degree with the rightmost
/// position as degree 0.
pub fn build_complex(
    alg: &Arc<ArtinAlgebra>,
    doc: &ComplexDoc,
) -> Result<Option<ChainComplex>, Failure> {
    let spec = &doc.complex;
    if spec.ranks.is_empty() {
        if !spec.maps.is_empty() {
            return Err(Failure::Input("maps given without ranks".into()));
        }
        return Ok(None);
    }
    if spec.maps.len() + 1 != spec.ranks.len() {
        return Err(Failure::Input(format!(
            "{} ranks need {} maps, got {}",
            spec.ranks.len(),
            spec.ranks.len() - 1,
            spec.maps.len()
        )));
    }
    let base = build_module(alg, &doc.module)?;
    let mut maps = Vec::with_capacity(spec.maps.len());
    for (i, m) in spec.maps.iter().enumerate() {
        if (m.rows, m.cols) != (spec.ranks[i], spec.ranks[i + 1]) {
            return Err(Failure::Input(format!(
                "map {i} is {}x{}, ranks require {}x{}",
                m.rows,
                m.cols,
                spec.ranks[i],
                spec.ranks[i + 1]
            )));
        }
        let a = build_algebra_matrix(alg, m)?;
        maps.push(induced_map(&a, &base).map_err(complex_failure)?);
    }
    maps.reverse();
    let bottom = base.direct_sum_power(*spec.ranks.last().expect("nonempty"));
    ChainComplex::new(maps, bottom)
        .map(Some)
        .map_err(complex_failure)
}
