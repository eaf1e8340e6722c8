//! JSON forms of Lie algebras and coefficient chains.
//!
//! Lie algebra:
//! ```json
//! {"dim": 3, "basis": ["H","E","F"], "brackets": [{"i":0,"j":1,"coeffs":{"1":"2"}}]}
//! ```
//! Chain (first factor is `f_0`, the rest the wedge tail):
//! ```json
//! {"n": 1, "algebra": "sl2.json", "terms": [{"coeff":"1","factors":[{"Y":"E","exp":[2]},{"Y":"F","exp":[-2]}]}]}
//! ```
//! `algebra` is `"scalar"`, `"witt"`, a built-in name (`sl2`, `heisenberg3`)
//! or a path. For vector fields `Y` is `"d1"` and `exp` is `s` in `t^s ∂_t`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cocycle::{phi_with, CocycleError, CocycleInput, Flavor, VectorFieldTerm};
use crate::laurent::{Exponent, GLaurent, LaurentPoly};
use crate::liealg::{LieAlgebra, LieElement, LieError};
use crate::opalg::Idempotents;
use crate::rational::{QStr, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("bracket entry ({i}, {j}) must have i < j")]
    BracketOrder { i: usize, j: usize },
    #[error("bad basis index {0:?}")]
    BadIndex(String),
    #[error("dim is {dim} but {names} basis names were given")]
    DimMismatch { dim: usize, names: usize },
    #[error("term {term}: expected {expected} factors, got {got}")]
    FactorCount { term: usize, expected: usize, got: usize },
    #[error("term {term}: exponent of length {got}, expected {expected}")]
    ExponentLength { term: usize, expected: usize, got: usize },
    #[error("term {term}: {message}")]
    BadFactor { term: usize, message: String },
    #[error("algebra {algebra:?} does not fit flavor {flavor:?}")]
    FlavorMismatch { algebra: String, flavor: Flavor },
    #[error("could not load algebra {0:?}: {1}")]
    Load(String, String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, QStr>,
}

pub fn lie_algebra_from_json(text: &str) -> Result<LieAlgebra, IoError> {
    let raw: LieAlgebraJson = serde_json::from_str(text)?;
    if raw.basis.len() != raw.dim {
        return Err(IoError::DimMismatch { dim: raw.dim, names: raw.basis.len() });
    }
    let mut entries = Vec::new();
    for b in raw.brackets {
        if b.i >= b.j {
            return Err(IoError::BracketOrder { i: b.i, j: b.j });
        }
        let mut coeffs = Vec::new();
        for (k, c) in b.coeffs {
            let k: usize = k.trim().parse().map_err(|_| IoError::BadIndex(k.clone()))?;
            coeffs.push((k, c.0));
        }
        entries.push((b.i, b.j, coeffs));
    }
    Ok(LieAlgebra::from_table(raw.basis, entries)?)
}

pub fn lie_algebra_to_json(alg: &LieAlgebra) -> LieAlgebraJson {
    let brackets = alg
        .structure()
        .map(|(&(i, j), v)| BracketJson {
            i,
            j,
            coeffs: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.to_string(), QStr(c.clone()))).collect(),
        })
        .collect();
    LieAlgebraJson { dim: alg.dim(), basis: alg.basis_names().to_vec(), brackets }
}

/// Built-in algebras by name.
pub fn builtin_algebra(name: &str) -> Option<LieAlgebra> {
    match name {
        "sl2" => Some(LieAlgebra::sl2()),
        "heisenberg3" => Some(LieAlgebra::heisenberg3()),
        _ => None,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainJson {
    pub n: usize,
    pub algebra: String,
    pub terms: Vec<ChainTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainTermJson {
    #[serde(default = "one")]
    pub coeff: QStr,
    pub factors: Vec<FactorJson>,
}

fn one() -> QStr {
    QStr(Q::one())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    pub exp: Vec<i64>,
}

/// A chain as a list of `(coefficient, f_0 ⊗ f_1 ∧ … ∧ f_n)` terms.
#[derive(Debug, Clone)]
pub struct CocycleChain {
    pub n: usize,
    pub flavor: Flavor,
    pub terms: Vec<(Q, CocycleInput)>,
}

impl CocycleChain {
    pub fn phi(&self) -> Result<Q, IoError> {
        let idem = Idempotents::standard(self.n);
        let mut total = Q::zero();
        for (c, inp) in &self.terms {
            total += phi_with(inp, &idem)? * c;
        }
        Ok(total)
    }
}

/// Parses a chain for the given flavor. `load` resolves algebra paths.
pub fn chain_from_json<F>(text: &str, flavor: Flavor, load: F) -> Result<CocycleChain, IoError>
where
    F: Fn(&str) -> Result<LieAlgebra, IoError>,
{
    let raw: ChainJson = serde_json::from_str(text)?;
    let n = raw.n;
    let algebra = match (flavor, raw.algebra.as_str()) {
        (Flavor::Scalar, "scalar") | (Flavor::VectorField, "scalar" | "witt") => None,
        (Flavor::Multiloop, "scalar" | "witt") | (Flavor::Scalar | Flavor::VectorField, _) => {
            return Err(IoError::FlavorMismatch { algebra: raw.algebra, flavor });
        }
        (Flavor::Multiloop, name) => Some(Arc::new(match builtin_algebra(name) {
            Some(a) => a,
            None => load(name)?,
        })),
    };
    let mut terms = Vec::new();
    for (t, term) in raw.terms.iter().enumerate() {
        if term.factors.len() != n + 1 {
            return Err(IoError::FactorCount { term: t, expected: n + 1, got: term.factors.len() });
        }
        for f in &term.factors {
            if f.exp.len() != n {
                return Err(IoError::ExponentLength { term: t, expected: n, got: f.exp.len() });
            }
        }
        let bad = |message: String| IoError::BadFactor { term: t, message };
        let inp = match flavor {
            Flavor::Multiloop => {
                let alg = algebra.as_ref().expect("multiloop has an algebra");
                let mut fs = Vec::new();
                for f in &term.factors {
                    let name = f.y.as_deref().ok_or_else(|| bad("missing Y".into()))?;
                    let y = LieElement::named(alg, name)?;
                    fs.push(GLaurent::monomial(&y, f.exp.clone()));
                }
                CocycleInput::Multiloop(fs)
            }
            Flavor::Scalar => {
                if let Some(y) = term.factors.iter().find_map(|f| f.y.as_ref()) {
                    return Err(bad(format!("scalar factors take no Y, got {y:?}")));
                }
                CocycleInput::Scalar(term.factors.iter().map(|f| LaurentPoly::monomial(f.exp.clone(), Q::one())).collect())
            }
            Flavor::VectorField => {
                let mut fs = Vec::new();
                for f in &term.factors {
                    let axis = match f.y.as_deref() {
                        Some(s) => s
                            .strip_prefix('d')
                            .and_then(|k| k.parse::<usize>().ok())
                            .filter(|&k| (1..=n).contains(&k))
                            .ok_or_else(|| bad(format!("vector field Y must be d1..d{n}, got {s:?}")))?,
                        None => return Err(bad("missing Y".into())),
                    };
                    fs.push(vec![VectorFieldTerm { coeff: Q::one(), s: Exponent(f.exp.clone()), axis: axis - 1 }]);
                }
                CocycleInput::VectorField(fs)
            }
        };
        terms.push((term.coeff.0.clone(), inp));
    }
    Ok(CocycleChain { n, flavor, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const SL2: &str = r#"{"dim":3,"basis":["H","E","F"],"brackets":[
        {"i":0,"j":1,"coeffs":{"1":"2"}},{"i":0,"j":2,"coeffs":{"2":"-2"}},{"i":1,"j":2,"coeffs":{"0":"1"}}]}"#;

    fn no_load(name: &str) -> Result<LieAlgebra, IoError> {
        Err(IoError::Load(name.into(), "no loader".into()))
    }

    #[test]
    fn sl2_round_trip() {
        let a = lie_algebra_from_json(SL2).unwrap();
        assert_eq!(a, LieAlgebra::sl2());
        let back = serde_json::to_string(&lie_algebra_to_json(&a)).unwrap();
        assert_eq!(lie_algebra_from_json(&back).unwrap(), a);
    }

    #[test]
    fn rejects_lower_triangle() {
        let bad = r#"{"dim":2,"basis":["a","b"],"brackets":[{"i":1,"j":0,"coeffs":{}}]}"#;
        assert_eq!(lie_algebra_from_json(bad), Err(IoError::BracketOrder { i: 1, j: 0 }));
        let bad = r#"{"dim":2,"basis":["a"],"brackets":[]}"#;
        assert!(matches!(lie_algebra_from_json(bad), Err(IoError::DimMismatch { .. })));
    }

    #[test]
    fn kac_moody_chain() {
        let text = r#"{"n":1,"algebra":"sl2","terms":[{"coeff":"1/2","factors":[{"Y":"E","exp":[2]},{"Y":"F","exp":[-2]}]}]}"#;
        let c = chain_from_json(text, Flavor::Multiloop, no_load).unwrap();
        assert_eq!(c.phi().unwrap(), q(4));
    }

    #[test]
    fn scalar_and_witt_chains() {
        let text = r#"{"n":1,"algebra":"scalar","terms":[{"factors":[{"exp":[-3]},{"exp":[3]}]}]}"#;
        assert_eq!(chain_from_json(text, Flavor::Scalar, no_load).unwrap().phi().unwrap(), q(-3));
        let text = r#"{"n":1,"algebra":"witt","terms":[{"factors":[{"Y":"d1","exp":[3]},{"Y":"d1","exp":[-1]}]}]}"#;
        assert_eq!(chain_from_json(text, Flavor::VectorField, no_load).unwrap().phi().unwrap(), q(-1));
    }

    #[test]
    fn chain_shape_errors() {
        let text = r#"{"n":2,"algebra":"scalar","terms":[{"factors":[{"exp":[1,0]},{"exp":[0,1]}]}]}"#;
        assert!(matches!(chain_from_json(text, Flavor::Scalar, no_load), Err(IoError::FactorCount { .. })));
        let text = r#"{"n":1,"algebra":"scalar","terms":[]}"#;
        assert!(matches!(chain_from_json(text, Flavor::Multiloop, no_load), Err(IoError::FlavorMismatch { .. })));
        let text = r#"{"n":1,"algebra":"other.json","terms":[]}"#;
        assert!(matches!(chain_from_json(text, Flavor::Multiloop, no_load), Err(IoError::Load(..))));
    }
}
