//! Structured decisions with a certificate trail.
//!
//! Every decider returns a [`Verdict`]: the decision, an optional witness
//! vector, an optional second vector (for "no" answers of uniqueness tests,
//! a different solution of the same system) and the list of conditions that
//! were evaluated, each with the data it was decided on.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::tropical::TropVector;
use crate::NodeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Inconclusive,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }
}

/// A nonnegative scalar that may be `+∞`; serialized as a number or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ext(pub f64);

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Ext(v)),
            Raw::Text(t) if t == "inf" => Ok(Ext(f64::INFINITY)),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {t:?}"
            ))),
        }
    }
}

/// `serde(with = ...)` helper for `Vec<f64>` fields that may hold `+∞`.
pub mod ext_vec {
    use super::Ext;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let wrapped: Vec<Ext> = v.iter().map(|&x| Ext(x)).collect();
        wrapped.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Ok(Vec::<Ext>::deserialize(d)?.into_iter().map(|e| e.0).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Scalar(Ext),
    Vector(Vec<Ext>),
    Set(Vec<usize>),
    Sets(Vec<Vec<usize>>),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Datum {
    pub name: String,
    pub value: Value,
}

/// One evaluated condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub id: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub data: Vec<Datum>,
}

impl Condition {
    pub fn new(id: impl Into<String>, holds: bool) -> Self {
        Self {
            id: id.into(),
            holds,
            note: String::new(),
            data: Vec::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn scalar(mut self, name: &str, v: f64) -> Self {
        self.data.push(Datum {
            name: name.into(),
            value: Value::Scalar(Ext(v)),
        });
        self
    }

    pub fn vector(mut self, name: &str, v: &[f64]) -> Self {
        self.data.push(Datum {
            name: name.into(),
            value: Value::Vector(v.iter().map(|&x| Ext(x)).collect()),
        });
        self
    }

    pub fn set(mut self, name: &str, s: &NodeSet) -> Self {
        self.data.push(Datum {
            name: name.into(),
            value: Value::Set(s.iter().copied().collect()),
        });
        self
    }

    pub fn sets(mut self, name: &str, s: &[NodeSet]) -> Self {
        self.data.push(Datum {
            name: name.into(),
            value: Value::Sets(s.iter().map(|x| x.iter().copied().collect()).collect()),
        });
        self
    }

    pub fn text(mut self, name: &str, t: impl Into<String>) -> Self {
        self.data.push(Datum {
            name: name.into(),
            value: Value::Text(t.into()),
        });
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.data.iter().find(|d| d.name == name).map(|d| &d.value)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub question: String,
    pub decision: Decision,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<TropVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative: Option<TropVector>,
    pub certificate: Vec<Condition>,
}

impl Verdict {
    pub fn new(question: impl Into<String>, decision: Decision) -> Self {
        Self {
            question: question.into(),
            decision,
            witness: None,
            alternative: None,
            certificate: Vec::new(),
        }
    }

    pub fn with_witness(mut self, w: TropVector) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_alternative(mut self, w: TropVector) -> Self {
        self.alternative = Some(w);
        self
    }

    pub fn push(&mut self, c: Condition) {
        self.certificate.push(c);
    }

    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }

    pub fn is_no(&self) -> bool {
        self.decision == Decision::No
    }

    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.certificate.iter().find(|c| c.id == id)
    }
}
