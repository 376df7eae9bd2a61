//! Catalog files: JSON lists of named permutation groups with the primes to analyze.
//!
//! ```json
//! [{"name":"C3","degree":3,"generators":[[2,3,1]],"primes":[3]}]
//! ```

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::group::{is_prime, Group, Permutation};

const BUNDLED: &str = include_str!("../data/catalog.json");

/// One catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub primes: Vec<u64>,
}

impl GroupSpec {
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| Permutation::from_images(g))
            .collect()
    }

    pub fn build(&self, max_order: usize) -> Result<Group> {
        Group::build(&self.permutations()?, max_order)
    }
}

/// Parses a catalog document, preserving declaration order.
pub fn parse_catalog(text: &str) -> Result<Vec<GroupSpec>> {
    let raw: Vec<&RawValue> = serde_json::from_str(text).map_err(json_error)?;
    let mut specs = Vec::with_capacity(raw.len());
    for entry in raw {
        let offset = entry.get().as_ptr() as usize - text.as_ptr() as usize;
        let (line, column) = position(text, offset);
        let at = |message: String| Error::Parse {
            line,
            column,
            message,
        };
        let spec: GroupSpec = serde_json::from_str(entry.get()).map_err(|e| at(e.to_string()))?;
        if spec.degree == 0 {
            return Err(at(format!("{}: degree must be positive", spec.name)));
        }
        for gen in &spec.generators {
            if gen.len() != spec.degree {
                return Err(Error::DegreeMismatch {
                    expected: spec.degree,
                    found: gen.len(),
                });
            }
            Permutation::from_images(gen).map_err(|e| at(format!("{}: {e}", spec.name)))?;
        }
        if let Some(&q) = spec.primes.iter().find(|&&q| !is_prime(q)) {
            return Err(at(format!("{}: {q} is not a prime", spec.name)));
        }
        specs.push(spec);
    }
    Ok(specs)
}

/// The catalog shipped with the crate.
pub fn bundled() -> Vec<GroupSpec> {
    parse_catalog(BUNDLED).expect("bundled catalog is valid")
}

pub fn bundled_text() -> &'static str {
    BUNDLED
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}
