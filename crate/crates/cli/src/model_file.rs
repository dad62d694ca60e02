//! The JSON model format read by `invariants`, `classify` and `mw`.
//!
//! ```json
//! { "p": 7, "a4": [1], "a6": [0, 1] }
//! ```
//!
//! Coefficient lists run in ascending powers of `t`. Entries are integers,
//! `"num/den"` strings, or names bound in `params`.

use std::collections::BTreeMap;

use genusone::catalog::parse_rational;
use genusone::exactalg::{Field, Poly};
use genusone::weierstrass::WeierstrassModel;
use genusone::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    /// Characteristic: 0 for `Q`, otherwise a prime.
    pub p: u64,
    #[serde(default)]
    pub a1: Vec<Coeff>,
    #[serde(default)]
    pub a2: Vec<Coeff>,
    #[serde(default)]
    pub a3: Vec<Coeff>,
    #[serde(default)]
    pub a4: Vec<Coeff>,
    #[serde(default)]
    pub a6: Vec<Coeff>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Coeff>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("model file: {}", e)))
    }

    fn value(&self, c: &Coeff, field: &Field, depth: usize) -> Result<genusone::exactalg::Elem> {
        match c {
            Coeff::Int(n) => Ok(field.from_i64(*n)),
            Coeff::Text(s) => {
                if let Some(bound) = self.params.get(s.trim()) {
                    if depth > 0 {
                        return Err(Error::Input(format!("parameter {} refers to another parameter", s)));
                    }
                    return self.value(bound, field, depth + 1);
                }
                let q = parse_rational(s)
                    .map_err(|_| Error::Input(format!("'{}' is neither a number nor a bound parameter", s)))?;
                field
                    .from_rational(&q)
                    .map_err(|_| Error::Input(format!("{} has no value in characteristic {}", s, field.characteristic())))
            }
        }
    }

    pub fn to_model(&self) -> Result<WeierstrassModel> {
        let field = Field::from_characteristic(self.p)
            .map_err(|_| Error::Input(format!("p = {} is neither 0 nor a prime", self.p)))?;
        let mut polys = Vec::with_capacity(5);
        for list in [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6] {
            let coeffs = list.iter().map(|c| self.value(c, &field, 0)).collect::<Result<Vec<_>>>()?;
            polys.push(Poly::from_coeffs(&field, coeffs));
        }
        WeierstrassModel::new(&field, polys.try_into().expect("five coefficients"))
    }
}
