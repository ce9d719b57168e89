//! JSON descriptions of fields and groups, and a type-erased group.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use crate::algfun::AlgebraicFunctionField;
use crate::error::{Error, Result};
use crate::finite::FiniteField;
use crate::group::GroupInput;
use crate::matrix::Matrix;
use crate::numfield::NumberField;
use crate::parse::{parse_scalar, Identifiers};
use crate::ratfun::RationalFunctionField;
use crate::rational::Rationals;

/// A field as written in group files.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldDescriptor {
    Rationals,
    NumberField {
        min_poly: Vec<Value>,
    },
    RationalFunction {
        base: Box<FieldDescriptor>,
        vars: Vec<String>,
    },
    AlgebraicFunction {
        base: Box<FieldDescriptor>,
        min_poly: Vec<Value>,
    },
    FiniteField {
        p: u64,
        #[serde(default)]
        l: Option<usize>,
        #[serde(default)]
        modulus: Option<Vec<u64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub field: FieldDescriptor,
    pub degree: usize,
    pub generators: Vec<Vec<Vec<Value>>>,
    #[serde(default)]
    pub label: Option<String>,
}

/// A single matrix, either bare or wrapped as `{"matrix": ...}`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ElementFile {
    Wrapped { matrix: Vec<Vec<Value>> },
    Bare(Vec<Vec<Value>>),
}

impl ElementFile {
    pub fn rows(&self) -> &[Vec<Value>] {
        match self {
            ElementFile::Wrapped { matrix } | ElementFile::Bare(matrix) => matrix,
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("malformed JSON at line {} column {}: {e}", e.line(), e.column()))
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}

impl ElementFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}

fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::InvalidInput(format!("expected a scalar, found {other}"))),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    let text = scalar_text(v)?;
    parse_scalar(&text, &Rationals)
}

fn with_context(e: Error, ctx: &str) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset,
            message: format!("{ctx}: {message}"),
        },
        other => other,
    }
}

/// Parses a matrix of scalar expressions.
pub fn parse_matrix<F: Identifiers>(field: &F, n: usize, rows: &[Vec<Value>], what: &str) -> Result<Matrix<F::Elem>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("{what} is not {n}x{n}")));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(n);
        for (j, v) in row.iter().enumerate() {
            let text = scalar_text(v)?;
            let ctx = format!("{what} entry ({},{})", i + 1, j + 1);
            r.push(parse_scalar(&text, field).map_err(|e| with_context(e, &ctx))?);
        }
        out.push(r);
    }
    Matrix::from_rows(out)
}

const RESERVED: [&str; 2] = ["a", "b"];

fn finite_field(p: u64, l: Option<usize>, modulus: &Option<Vec<u64>>) -> Result<FiniteField> {
    match modulus {
        Some(m) => {
            let k = FiniteField::new(p, m.clone())?;
            if let Some(l) = l {
                if k.degree() != l {
                    return Err(Error::InvalidField(format!(
                        "modulus has degree {} but l = {l}",
                        k.degree()
                    )));
                }
            }
            Ok(k)
        }
        None => FiniteField::standard(p, l.unwrap_or(1)),
    }
}

fn number_field(min_poly: &[Value]) -> Result<NumberField> {
    let coeffs = min_poly.iter().map(parse_rational).collect::<Result<Vec<_>>>()?;
    NumberField::new(&coeffs)
}

fn check_vars(vars: &[String]) -> Result<()> {
    if vars.is_empty() {
        return Err(Error::InvalidField("a rational function field needs at least one variable".into()));
    }
    for (i, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidField(format!("invalid variable name {v:?}")));
        }
        if RESERVED.contains(&v.as_str()) {
            return Err(Error::InvalidField(format!("variable name {v:?} is reserved")));
        }
        if vars[..i].contains(v) {
            return Err(Error::InvalidField(format!("variable {v:?} is declared twice")));
        }
    }
    Ok(())
}

/// Any supported field of definition.
#[derive(Clone, Debug)]
pub enum AnyField {
    Rationals(Rationals),
    NumberField(NumberField),
    RationalFunctionQ(RationalFunctionField<Rationals>),
    RationalFunctionNumber(RationalFunctionField<NumberField>),
    RationalFunctionFinite(RationalFunctionField<FiniteField>),
    AlgebraicFunctionQ(AlgebraicFunctionField<Rationals>),
    AlgebraicFunctionNumber(AlgebraicFunctionField<NumberField>),
    AlgebraicFunctionFinite(AlgebraicFunctionField<FiniteField>),
}

fn algebraic<B: Identifiers>(rf: RationalFunctionField<B>, min_poly: &[Value]) -> Result<AlgebraicFunctionField<B>> {
    let coeffs = min_poly
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let text = scalar_text(v)?;
            parse_scalar(&text, &rf).map_err(|e| with_context(e, &format!("minimal polynomial coefficient {i}")))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraicFunctionField::new(rf, coeffs)
}

impl FieldDescriptor {
    pub fn build(&self) -> Result<AnyField> {
        match self {
            FieldDescriptor::Rationals => Ok(AnyField::Rationals(Rationals)),
            FieldDescriptor::NumberField { min_poly } => Ok(AnyField::NumberField(number_field(min_poly)?)),
            FieldDescriptor::RationalFunction { base, vars } => {
                check_vars(vars)?;
                match base.as_ref() {
                    FieldDescriptor::Rationals => {
                        Ok(AnyField::RationalFunctionQ(RationalFunctionField::new(Rationals, vars.clone())))
                    }
                    FieldDescriptor::NumberField { min_poly } => Ok(AnyField::RationalFunctionNumber(
                        RationalFunctionField::new(number_field(min_poly)?, vars.clone()),
                    )),
                    FieldDescriptor::FiniteField { p, l, modulus } => Ok(AnyField::RationalFunctionFinite(
                        RationalFunctionField::new(finite_field(*p, *l, modulus)?.with_var("a"), vars.clone()),
                    )),
                    _ => Err(Error::InvalidField(
                        "the base of a rational function field must be rationals, a number field or a finite field".into(),
                    )),
                }
            }
            FieldDescriptor::AlgebraicFunction { base, min_poly } => {
                let FieldDescriptor::RationalFunction { base: inner, vars } = base.as_ref() else {
                    return Err(Error::InvalidField(
                        "the base of an algebraic function field must be a rational function field".into(),
                    ));
                };
                check_vars(vars)?;
                match inner.as_ref() {
                    FieldDescriptor::Rationals => Ok(AnyField::AlgebraicFunctionQ(algebraic(
                        RationalFunctionField::new(Rationals, vars.clone()),
                        min_poly,
                    )?)),
                    FieldDescriptor::NumberField { min_poly: m } => Ok(AnyField::AlgebraicFunctionNumber(algebraic(
                        RationalFunctionField::new(number_field(m)?.with_var("b"), vars.clone()),
                        min_poly,
                    )?)),
                    FieldDescriptor::FiniteField { p, l, modulus } => Ok(AnyField::AlgebraicFunctionFinite(algebraic(
                        RationalFunctionField::new(finite_field(*p, *l, modulus)?.with_var("b"), vars.clone()),
                        min_poly,
                    )?)),
                    _ => Err(Error::InvalidField("unsupported constant field".into())),
                }
            }
            FieldDescriptor::FiniteField { .. } => Err(Error::InvalidField(
                "finite fields are only allowed as constant fields of function fields".into(),
            )),
        }
    }
}

/// A group over any supported field.
#[derive(Clone, Debug)]
pub enum AnyGroup {
    Rationals(GroupInput<Rationals>),
    NumberField(GroupInput<NumberField>),
    RationalFunctionQ(GroupInput<RationalFunctionField<Rationals>>),
    RationalFunctionNumber(GroupInput<RationalFunctionField<NumberField>>),
    RationalFunctionFinite(GroupInput<RationalFunctionField<FiniteField>>),
    AlgebraicFunctionQ(GroupInput<AlgebraicFunctionField<Rationals>>),
    AlgebraicFunctionNumber(GroupInput<AlgebraicFunctionField<NumberField>>),
    AlgebraicFunctionFinite(GroupInput<AlgebraicFunctionField<FiniteField>>),
}

/// Runs `$body` with `$g` bound to the concrete `GroupInput` inside an
/// [`AnyGroup`].
#[macro_export]
macro_rules! with_group {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            $crate::descriptor::AnyGroup::Rationals($g) => $body,
            $crate::descriptor::AnyGroup::NumberField($g) => $body,
            $crate::descriptor::AnyGroup::RationalFunctionQ($g) => $body,
            $crate::descriptor::AnyGroup::RationalFunctionNumber($g) => $body,
            $crate::descriptor::AnyGroup::RationalFunctionFinite($g) => $body,
            $crate::descriptor::AnyGroup::AlgebraicFunctionQ($g) => $body,
            $crate::descriptor::AnyGroup::AlgebraicFunctionNumber($g) => $body,
            $crate::descriptor::AnyGroup::AlgebraicFunctionFinite($g) => $body,
        }
    };
}

fn group_over<F: crate::sw::SwField>(field: F, file: &GroupFile) -> Result<GroupInput<F>> {
    let gens = file
        .generators
        .iter()
        .enumerate()
        .map(|(i, rows)| parse_matrix(&field, file.degree, rows, &format!("generator {}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    GroupInput::new(field, file.degree, gens)
}

impl GroupFile {
    pub fn build(&self) -> Result<AnyGroup> {
        if self.degree == 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        Ok(match self.field.build()? {
            AnyField::Rationals(k) => AnyGroup::Rationals(group_over(k, self)?),
            AnyField::NumberField(k) => AnyGroup::NumberField(group_over(k, self)?),
            AnyField::RationalFunctionQ(k) => AnyGroup::RationalFunctionQ(group_over(k, self)?),
            AnyField::RationalFunctionNumber(k) => AnyGroup::RationalFunctionNumber(group_over(k, self)?),
            AnyField::RationalFunctionFinite(k) => AnyGroup::RationalFunctionFinite(group_over(k, self)?),
            AnyField::AlgebraicFunctionQ(k) => AnyGroup::AlgebraicFunctionQ(group_over(k, self)?),
            AnyField::AlgebraicFunctionNumber(k) => AnyGroup::AlgebraicFunctionNumber(group_over(k, self)?),
            AnyField::AlgebraicFunctionFinite(k) => AnyGroup::AlgebraicFunctionFinite(group_over(k, self)?),
        })
    }
}

/// Integer from a JSON value, for callers that accept numbers or strings.
pub fn parse_integer(v: &Value) -> Result<BigInt> {
    let r = parse_rational(v)?;
    if !r.is_integer() {
        return Err(Error::InvalidInput(format!("{r} is not an integer")));
    }
    Ok(r.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn descriptors_build() {
        let f: FieldDescriptor = serde_json::from_str(r#"{"kind":"number_field","min_poly":[1,0,1]}"#).unwrap();
        assert!(matches!(f.build().unwrap(), AnyField::NumberField(_)));
        let f: FieldDescriptor = serde_json::from_str(
            r#"{"kind":"algebraic_function","base":{"kind":"rational_function","base":{"kind":"number_field","min_poly":[1,0,1]},"vars":["x"]},"min_poly":["-x","0","1"]}"#,
        )
        .unwrap();
        let AnyField::AlgebraicFunctionNumber(k) = f.build().unwrap() else {
            panic!("wrong kind")
        };
        let b = parse_scalar("b", &k).unwrap();
        assert_eq!(k.mul(&b, &b), k.from_i64(-1));
        let f: FieldDescriptor = serde_json::from_str(
            r#"{"kind":"rational_function","base":{"kind":"finite_field","p":2,"l":2},"vars":["x"]}"#,
        )
        .unwrap();
        let AnyField::RationalFunctionFinite(k) = f.build().unwrap() else {
            panic!("wrong kind")
        };
        let a = parse_scalar("a", &k).unwrap();
        assert_eq!(k.add(&k.mul(&a, &a), &a), k.one());
        let bad: FieldDescriptor = serde_json::from_str(r#"{"kind":"finite_field","p":5}"#).unwrap();
        assert!(bad.build().is_err());
    }

    #[test]
    fn group_file_errors_carry_offsets() {
        let text = r#"{"field":{"kind":"rational_function","base":{"kind":"rationals"},"vars":["x"]},
            "degree":1,"generators":[[["x+"]]]}"#;
        let err = GroupFile::from_json(text).unwrap().build().unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 2, .. }), "{err}");
        let text = r#"{"field":{"kind":"rationals"},"degree":2,"generators":[[["0","-1"],["1","0"]]],"label":"rot90"}"#;
        assert!(matches!(GroupFile::from_json(text).unwrap().build().unwrap(), AnyGroup::Rationals(_)));
        let singular = r#"{"field":{"kind":"rationals"},"degree":1,"generators":[[["0"]]]}"#;
        assert!(GroupFile::from_json(singular).unwrap().build().is_err());
    }
}
