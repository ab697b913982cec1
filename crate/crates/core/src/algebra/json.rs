//! Algebra file format:
//!
//! ```json
//! { "k": 3, "dims": [3, 1, 1], "beta": [[1,1,1],[1,1,1],[1,1,1]],
//!   "constants": [ {"lhs": "X0", "rhs": "X1", "value": [{"basis": "X2", "coeff": 1}]} ] }
//! ```
//!
//! Coefficients are JSON integers or strings holding exact rationals.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::grading::validate_commutation_factor;
use super::lie::ColorLieAlgebra;
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::scalar;

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraFile {
    k: u32,
    dims: Vec<usize>,
    beta: Vec<Vec<Value>>,
    #[serde(default)]
    constants: Vec<ConstantEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConstantEntry {
    lhs: String,
    rhs: String,
    value: Vec<Term>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Term {
    basis: String,
    coeff: Value,
}

impl ColorLieAlgebra {
    pub fn to_json(&self) -> Value {
        let file = AlgebraFile {
            k: self.grading().modulus(),
            dims: self.dims().to_vec(),
            beta: self
                .beta()
                .rows()
                .iter()
                .map(|row| row.iter().map(scalar::to_json).collect())
                .collect(),
            constants: self
                .constants()
                .map(|(i, j, v)| ConstantEntry {
                    lhs: self.label(i),
                    rhs: self.label(j),
                    value: v
                        .iter()
                        .map(|(s, c)| Term {
                            basis: self.label(s),
                            coeff: scalar::to_json(c),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(file).expect("algebra file serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("algebra file serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        if file.beta.len() != file.k as usize {
            return Err(Error::Parse(format!(
                "beta has {} rows but k = {}",
                file.beta.len(),
                file.k
            )));
        }
        let table = file
            .beta
            .iter()
            .map(|row| row.iter().map(scalar::from_json).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let beta = validate_commutation_factor(&table)?;
        let shell = ColorLieAlgebra::abelian(beta.clone(), file.dims.clone())?;
        let mut constants = Vec::with_capacity(file.constants.len());
        for entry in &file.constants {
            let lhs = shell.index_of_label(&entry.lhs)?;
            let rhs = shell.index_of_label(&entry.rhs)?;
            let mut value = Vector::zero();
            for term in &entry.value {
                value.add_term(shell.index_of_label(&term.basis)?, &scalar::from_json(&term.coeff)?);
            }
            constants.push((lhs, rhs, value));
        }
        ColorLieAlgebra::from_constants(beta, file.dims, constants)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_model;

    #[test]
    fn model_round_trips() {
        let alg = build_model(3, 2, 1).unwrap();
        let back = ColorLieAlgebra::from_json_str(&alg.to_json_string()).unwrap();
        assert_eq!(alg, back);
    }

    #[test]
    fn parses_rationals_and_reversed_pairs() {
        let text = r#"{"k": 3, "dims": [3, 1, 0], "beta": [[1,1,1],[1,1,1],[1,1,1]],
            "constants": [{"lhs": "X1", "rhs": "X0", "value": [{"basis": "X2", "coeff": "1/2"}]}]}"#;
        let alg = ColorLieAlgebra::from_json_str(text).unwrap();
        let (i, j, v) = alg.constants().next().unwrap();
        assert_eq!((i, j), (0, 1));
        assert_eq!(v.get(2), scalar::parse("-1/2").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let bad_beta = r#"{"k": 3, "dims": [2,1,1], "beta": [[1,1,1],[1,-1,1],[1,1,1]], "constants": []}"#;
        assert!(matches!(
            ColorLieAlgebra::from_json_str(bad_beta),
            Err(Error::AxiomViolation { .. })
        ));
        let bad_label = r#"{"k": 3, "dims": [2,1,1], "beta": [[1,1,1],[1,1,1],[1,1,1]],
            "constants": [{"lhs": "X0", "rhs": "X5", "value": []}]}"#;
        assert!(ColorLieAlgebra::from_json_str(bad_label).is_err());
        assert!(matches!(ColorLieAlgebra::from_json_str("{"), Err(Error::Json(_))));
    }
}
