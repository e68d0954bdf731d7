use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{HeckeElement, V};
use crate::error::{Error, Result};
use crate::exact_arith::MultiLaurent;
use crate::root_weyl::{load_datum, ElementJson, RootDatum};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeckeTermJson {
    pub lambda: Vec<i64>,
    #[serde(default)]
    pub word: Vec<usize>,
    pub coeff: MultiLaurent,
}

/// `{"datum": "SL2", "terms": [{"lambda": [..], "word": [..], "coeff": {..}}]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeckeJson {
    pub datum: String,
    pub terms: Vec<HeckeTermJson>,
}

impl HeckeElement {
    pub fn to_json(&self) -> HeckeJson {
        HeckeJson {
            datum: self.datum().name().to_string(),
            terms: self
                .terms()
                .map(|(x, c)| {
                    let e = self.datum().element_json(x);
                    HeckeTermJson { lambda: e.lambda, word: e.word, coeff: c.clone() }
                })
                .collect(),
        }
    }

    /// Parses against an already loaded datum, which must match by name.
    pub fn from_json_with(datum: &Arc<RootDatum>, j: &HeckeJson) -> Result<Self> {
        if j.datum != datum.name() {
            return Err(Error::RootDatumMismatch(j.datum.clone(), datum.name().to_string()));
        }
        let mut h = Self::zero(datum);
        for t in &j.terms {
            let x = datum.parse_element(&ElementJson { lambda: t.lambda.clone(), word: t.word.clone() })?;
            if t.coeff.vars().iter().any(|v| v != V) {
                return Err(Error::Parse(format!("coefficient variables {:?}, expected [\"v\"]", t.coeff.vars())));
            }
            h = h.add(&Self::monomial(datum, &x, t.coeff.clone()))?;
        }
        Ok(h)
    }

    pub fn from_json(j: &HeckeJson, data_dir: Option<&std::path::Path>) -> Result<Self> {
        let datum = load_datum(&j.datum, data_dir)?;
        Self::from_json_with(&datum, j)
    }
}
