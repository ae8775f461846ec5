//! JSON file formats for functions. Every number is an exact scalar string.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pwl::{FiniteGroupFunction, PwlPeriodic};
use crate::scalar::{is_square_free, NumberField, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Sqrt { sqrt: u32 },
}

impl FieldJson {
    pub fn from_field(field: NumberField) -> Self {
        match field {
            NumberField::Rational => FieldJson::Named("rational".into()),
            NumberField::Sqrt(d) => FieldJson::Sqrt { sqrt: d },
        }
    }

    pub fn to_field(&self) -> Result<NumberField> {
        match self {
            FieldJson::Named(name) if name == "rational" => Ok(NumberField::Rational),
            FieldJson::Named(name) => Err(Error::parse(name, "field must be \"rational\" or {\"sqrt\": D}")),
            FieldJson::Sqrt { sqrt } if is_square_free(*sqrt) => Ok(NumberField::Sqrt(*sqrt)),
            FieldJson::Sqrt { sqrt } => Err(Error::parse(&sqrt.to_string(), "sqrt field needs a square-free D >= 2")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionJson {
    pub field: FieldJson,
    pub f: Scalar,
    pub breakpoints: Vec<Scalar>,
    pub values: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<Vec<(Scalar, Scalar)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteFunctionJson {
    pub field: FieldJson,
    pub denominator: u64,
    pub f: Scalar,
    pub values: Vec<Scalar>,
}

fn check_field<'a>(field: NumberField, named: &str, xs: impl IntoIterator<Item = &'a Scalar>) -> Result<()> {
    for (k, x) in xs.into_iter().enumerate() {
        if !field.contains(x) {
            return Err(Error::parse(&x.to_string(), &format!("{named}[{k}] is outside the declared field")));
        }
    }
    Ok(())
}

impl FunctionJson {
    pub fn from_function(pi: &PwlPeriodic) -> Self {
        FunctionJson {
            field: FieldJson::from_field(pi.field()),
            f: pi.f().clone(),
            breakpoints: pi.breakpoints().to_vec(),
            values: pi.values().to_vec(),
            limits: (!pi.is_continuous()).then(|| pi.limits().to_vec()),
        }
    }

    pub fn into_function(self) -> Result<PwlPeriodic> {
        let field = self.field.to_field()?;
        check_field(field, "f", [&self.f])?;
        check_field(field, "breakpoints", &self.breakpoints)?;
        check_field(field, "values", &self.values)?;
        if let Some(l) = &self.limits {
            check_field(field, "limits", l.iter().flat_map(|(a, b)| [a, b]))?;
        }
        PwlPeriodic::new(self.breakpoints, self.values, self.limits, self.f)
    }
}

impl FiniteFunctionJson {
    pub fn from_function(g: &FiniteGroupFunction) -> Self {
        let field = NumberField::of(g.values().iter().chain([g.f()])).unwrap_or(NumberField::Rational);
        FiniteFunctionJson {
            field: FieldJson::from_field(field),
            denominator: g.denominator(),
            f: g.f().clone(),
            values: g.values().to_vec(),
        }
    }

    pub fn into_function(self) -> Result<FiniteGroupFunction> {
        let field = self.field.to_field()?;
        check_field(field, "values", &self.values)?;
        FiniteGroupFunction::new(self.denominator, self.values, self.f)
    }
}

impl Serialize for PwlPeriodic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FunctionJson::from_function(self).serialize(s)
    }
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Parse { input: format!("line {}, column {}", e.line(), e.column()), reason: e.to_string() }
}

pub fn function_from_json(text: &str) -> Result<PwlPeriodic> {
    serde_json::from_str::<FunctionJson>(text).map_err(syntax)?.into_function()
}

pub fn function_to_json(pi: &PwlPeriodic) -> String {
    serde_json::to_string_pretty(&FunctionJson::from_function(pi)).expect("plain data serializes")
}

pub fn finite_from_json(text: &str) -> Result<FiniteGroupFunction> {
    serde_json::from_str::<FiniteFunctionJson>(text).map_err(syntax)?.into_function()
}

pub fn finite_to_json(g: &FiniteGroupFunction) -> String {
    serde_json::to_string_pretty(&FiniteFunctionJson::from_function(g)).expect("plain data serializes")
}
