//! JSON system files.
//!
//! ```json
//! {"kind": "linear", "k": 3, "rows": [[0, 1, 0], [0, 0, 1]]}
//! {"kind": "nonlinear", "k": 3, "degrees": [2, 3], "leading": [1, 1],
//!  "upsilons": [[{"coeff": 1, "exponents": [2]}], []]}
//! ```
//!
//! Row `j` of a linear file lists the coefficients of `σ_1..σ_k`. Upsilon
//! exponents are indexed by the complement `R` in increasing order.

use std::fs;
use std::path::Path;

use paucity_core::{Int, NonlinearSystem, SymmetricSystem, Term, Triangular, UpsilonPoly};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Linear,
    Nonlinear,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: Int,
    pub exponents: Vec<u32>,
}

/// On-disk form. Which optional fields are required depends on `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub kind: Kind,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading: Option<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upsilons: Option<Vec<Vec<TermRecord>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedSystem {
    Linear(SymmetricSystem),
    Nonlinear(NonlinearSystem),
}

impl LoadedSystem {
    pub fn k(&self) -> usize {
        match self {
            LoadedSystem::Linear(s) => s.k(),
            LoadedSystem::Nonlinear(s) => s.shape().k(),
        }
    }
}

impl SystemFile {
    pub fn linear(sys: &SymmetricSystem) -> Self {
        Self {
            kind: Kind::Linear,
            k: sys.k(),
            rows: Some(sys.rows().to_vec()),
            degrees: None,
            leading: None,
            upsilons: None,
        }
    }

    pub fn nonlinear(sys: &NonlinearSystem) -> Self {
        let shape = sys.shape();
        let upsilons = sys
            .upsilons()
            .iter()
            .map(|u| {
                u.terms
                    .iter()
                    .map(|t| TermRecord { coeff: t.coeff, exponents: t.exponents.clone() })
                    .collect()
            })
            .collect();
        Self {
            kind: Kind::Nonlinear,
            k: shape.k(),
            rows: None,
            degrees: Some(shape.degrees().to_vec()),
            leading: Some(shape.leading().to_vec()),
            upsilons: Some(upsilons),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("system files always serialize")
    }

    pub fn to_system(&self) -> Result<LoadedSystem> {
        match self.kind {
            Kind::Linear => {
                if self.degrees.is_some() || self.leading.is_some() || self.upsilons.is_some() {
                    return Err(CliError::Input("linear systems take only `rows`".into()));
                }
                let rows = self.rows.clone().ok_or_else(|| missing("rows"))?;
                Ok(LoadedSystem::Linear(SymmetricSystem::new(self.k, rows)?))
            }
            Kind::Nonlinear => {
                if self.rows.is_some() {
                    return Err(CliError::Input("nonlinear systems do not take `rows`".into()));
                }
                let degrees = self.degrees.clone().ok_or_else(|| missing("degrees"))?;
                let leading = self.leading.clone().ok_or_else(|| missing("leading"))?;
                let upsilons = self
                    .upsilons
                    .as_ref()
                    .ok_or_else(|| missing("upsilons"))?
                    .iter()
                    .map(|terms| {
                        UpsilonPoly::new(
                            terms
                                .iter()
                                .map(|t| Term { coeff: t.coeff, exponents: t.exponents.clone() })
                                .collect(),
                        )
                    })
                    .collect();
                Ok(LoadedSystem::Nonlinear(NonlinearSystem::new(self.k, degrees, leading, upsilons)?))
            }
        }
    }
}

fn missing(field: &str) -> CliError {
    CliError::Input(format!("missing field `{field}`"))
}

pub fn read_system(path: &Path) -> Result<LoadedSystem> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    SystemFile::parse(&text)?.to_system()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_round_trip() {
        let sys = SymmetricSystem::new(4, vec![vec![0, -1, 0, 1], vec![-1, 0, 1, 0]]).unwrap();
        let file = SystemFile::linear(&sys);
        let text = file.to_json();
        assert_eq!(text, r#"{"kind":"linear","k":4,"rows":[[0,-1,0,1],[-1,0,1,0]]}"#);
        assert_eq!(SystemFile::parse(&text).unwrap().to_system().unwrap(), LoadedSystem::Linear(sys));
    }

    #[test]
    fn nonlinear_round_trip() {
        let text = r#"{"kind":"nonlinear","k":3,"degrees":[2,3],"leading":[1,1],
            "upsilons":[[{"coeff":1,"exponents":[2]}],[]]}"#;
        let loaded = SystemFile::parse(text).unwrap().to_system().unwrap();
        let LoadedSystem::Nonlinear(sys) = &loaded else {
            panic!("expected a nonlinear system");
        };
        assert_eq!(sys.shape().complement(), &[1]);
        let again = SystemFile::parse(&SystemFile::nonlinear(sys).to_json()).unwrap();
        assert_eq!(again.to_system().unwrap(), loaded);
    }

    #[test]
    fn wide_integers_survive() {
        let big: Int = 1 << 100;
        let sys = SymmetricSystem::new(2, vec![vec![big, -big]]).unwrap();
        let text = SystemFile::linear(&sys).to_json();
        assert!(text.contains("1267650600228229401496703205376"));
        assert_eq!(SystemFile::parse(&text).unwrap().to_system().unwrap(), LoadedSystem::Linear(sys));
    }

    #[test]
    fn malformed_files_are_rejected() {
        for text in [
            r#"{"kind":"linear","k":2}"#,
            r#"{"kind":"cubic","k":2,"rows":[[1,0]]}"#,
            r#"{"kind":"linear","k":2,"rows":[[1,0]],"extra":1}"#,
            r#"{"kind":"linear","k":2,"rows":[[1.5,0]]}"#,
            r#"{"kind":"linear","k":2,"rows":[[1,0,0]]}"#,
            r#"{"kind":"nonlinear","k":2,"degrees":[2],"leading":[1]}"#,
        ] {
            assert!(SystemFile::parse(text).and_then(|f| f.to_system()).is_err(), "{text}");
        }
    }
}
