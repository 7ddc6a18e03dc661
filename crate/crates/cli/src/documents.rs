//! JSON input documents.
//!
//! Complex numbers are `[re, im]` pairs. A state is given either by its
//! covariance matrix or by its symplectic spectrum plus an optional basis of
//! normal modes; subsystems are lists of phase-space vectors, in canonical
//! coordinates or as coefficients over the state's eigenbasis
//! `(e_1, ..., e_N, e_1*, ..., e_N*)`.

use std::collections::BTreeMap;
use std::path::Path;

use gaussian_partners::phase_space::{PhaseVector, RMatrix, RVector, C64};
use gaussian_partners::state::{state_from_spectrum, symplectic_spectrum, GaussianState};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: field `{field}`: {message}")]
    Field {
        path: String,
        field: String,
        message: String,
    },
}

fn field(path: &str, field: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Field {
        path: path.to_string(),
        field: field.into(),
        message: message.into(),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(path: &str, text: &str) -> Result<T, DocumentError> {
    serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<String, DocumentError> {
    std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub n_modes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covariance: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

/// A loaded state together with the basis that eigenbasis coordinates refer to.
#[derive(Debug, Clone)]
pub struct LoadedState {
    pub state: GaussianState,
    pub eigenbasis: Vec<PhaseVector>,
}

fn complex_vector(
    path: &str,
    name: &str,
    entries: &[[f64; 2]],
    dim: usize,
) -> Result<PhaseVector, DocumentError> {
    if entries.len() != dim {
        return Err(field(
            path,
            name,
            format!("expected {dim} entries, found {}", entries.len()),
        ));
    }
    PhaseVector::from_components(entries.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .map_err(|e| field(path, name, e.to_string()))
}

fn pairs(v: &PhaseVector) -> Vec<[f64; 2]> {
    v.as_vector().iter().map(|z| [z.re, z.im]).collect()
}

impl StateDocument {
    pub fn load(path: &Path) -> Result<Self, DocumentError> {
        Self::from_json(&path.display().to_string(), &read(path)?)
    }

    pub fn from_json(path: &str, text: &str) -> Result<Self, DocumentError> {
        let doc: StateDocument = parse(path, text)?;
        doc.check(path)?;
        Ok(doc)
    }

    fn check(&self, path: &str) -> Result<(), DocumentError> {
        let dim = 2 * self.n_modes;
        if self.n_modes == 0 {
            return Err(field(path, "n_modes", "must be positive"));
        }
        match (&self.covariance, &self.nu) {
            (Some(_), Some(_)) => {
                return Err(field(
                    path,
                    "covariance",
                    "give either `covariance` or `nu`, not both",
                ))
            }
            (None, None) => {
                return Err(field(
                    path,
                    "covariance",
                    "one of `covariance` or `nu` is required",
                ))
            }
            _ => {}
        }
        if let Some(rows) = &self.covariance {
            if rows.len() != dim {
                return Err(field(
                    path,
                    "covariance",
                    format!("expected {dim} rows, found {}", rows.len()),
                ));
            }
            if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
                return Err(field(
                    path,
                    format!("covariance[{i}]"),
                    format!("expected {dim} entries, found {}", r.len()),
                ));
            }
            if self.basis.is_some() {
                return Err(field(path, "basis", "only allowed with `nu`"));
            }
        }
        if let Some(nu) = &self.nu {
            if nu.len() != self.n_modes {
                return Err(field(
                    path,
                    "nu",
                    format!("expected {} values, found {}", self.n_modes, nu.len()),
                ));
            }
            if let Some(basis) = &self.basis {
                if basis.len() != self.n_modes {
                    return Err(field(
                        path,
                        "basis",
                        format!("expected {} vectors, found {}", self.n_modes, basis.len()),
                    ));
                }
                for (k, v) in basis.iter().enumerate() {
                    if v.len() != dim {
                        return Err(field(
                            path,
                            format!("basis[{k}]"),
                            format!("expected {dim} entries, found {}", v.len()),
                        ));
                    }
                }
            }
        }
        if let Some(mean) = &self.mean {
            if mean.len() != dim {
                return Err(field(
                    path,
                    "mean",
                    format!("expected {dim} entries, found {}", mean.len()),
                ));
            }
        }
        Ok(())
    }

    /// Build the state. Errors from the numerical layer are returned as-is so
    /// the caller can map them to exit codes.
    pub fn to_state(&self, path: &str) -> Result<LoadedState, LoadError> {
        let dim = 2 * self.n_modes;
        let mean = RVector::from_vec(self.mean.clone().unwrap_or_else(|| vec![0.0; dim]));
        if let Some(rows) = &self.covariance {
            let sigma = RMatrix::from_fn(dim, dim, |i, j| rows[i][j]);
            let state = GaussianState::new(mean, sigma).map_err(LoadError::Numeric)?;
            // Eigenbasis coordinates refer to the computed normal modes.
            let eigenbasis = match symplectic_spectrum(&state.complex_structure()) {
                Ok(s) => s.modes(),
                Err(_) => Vec::new(),
            };
            return Ok(LoadedState { state, eigenbasis });
        }
        let nu = self.nu.as_ref().expect("checked");
        let basis = match &self.basis {
            Some(b) => Some(
                b.iter()
                    .enumerate()
                    .map(|(k, v)| complex_vector(path, &format!("basis[{k}]"), v, dim))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(LoadError::Document)?,
            ),
            None => None,
        };
        let centered = state_from_spectrum(nu, basis.as_deref()).map_err(LoadError::Numeric)?;
        let state =
            GaussianState::new(mean, centered.covariance().clone()).map_err(LoadError::Numeric)?;
        let eigenbasis = basis
            .unwrap_or_else(|| gaussian_partners::phase_space::annihilation_basis(self.n_modes));
        Ok(LoadedState { state, eigenbasis })
    }

    pub fn from_state(state: &GaussianState) -> Self {
        let sigma = state.covariance();
        StateDocument {
            n_modes: state.n_modes(),
            mean: Some(state.mean().iter().copied().collect()),
            covariance: Some(
                sigma
                    .row_iter()
                    .map(|r| r.iter().copied().collect())
                    .collect(),
            ),
            nu: None,
            basis: None,
            metadata: BTreeMap::new(),
        }
    }
}

#[derive(Debug)]
pub enum LoadError {
    Document(DocumentError),
    Numeric(gaussian_partners::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinates {
    Canonical,
    Eigenbasis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDocument {
    pub coordinates: Coordinates,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

impl SubspaceDocument {
    pub fn load(path: &Path) -> Result<Self, DocumentError> {
        Self::from_json(&path.display().to_string(), &read(path)?)
    }

    pub fn from_json(path: &str, text: &str) -> Result<Self, DocumentError> {
        let doc: SubspaceDocument = parse(path, text)?;
        if doc.vectors.is_empty() {
            return Err(field(path, "vectors", "at least one vector is required"));
        }
        Ok(doc)
    }

    /// Phase-space vectors in canonical coordinates.
    pub fn vectors(
        &self,
        path: &str,
        eigenbasis: &[PhaseVector],
        n_modes: usize,
    ) -> Result<Vec<PhaseVector>, DocumentError> {
        let dim = 2 * n_modes;
        let raw = self
            .vectors
            .iter()
            .enumerate()
            .map(|(k, v)| complex_vector(path, &format!("vectors[{k}]"), v, dim))
            .collect::<Result<Vec<_>, _>>()?;
        match self.coordinates {
            Coordinates::Canonical => Ok(raw),
            Coordinates::Eigenbasis => {
                if eigenbasis.len() != n_modes {
                    return Err(field(
                        path,
                        "coordinates",
                        "the state has no usable eigenbasis",
                    ));
                }
                Ok(raw.iter().map(|c| from_eigenbasis(c, eigenbasis)).collect())
            }
        }
    }

    pub fn canonical(vectors: &[PhaseVector]) -> Self {
        SubspaceDocument {
            coordinates: Coordinates::Canonical,
            vectors: vectors.iter().map(pairs).collect(),
        }
    }

    /// Same document with every component rounded for output.
    pub fn rounded(mut self) -> Self {
        for v in &mut self.vectors {
            for c in v.iter_mut() {
                *c = [crate::output::round(c[0]), crate::output::round(c[1])];
            }
        }
        self
    }

    /// Coefficients over `(e_1, ..., e_N, e_1*, ..., e_N*)`.
    pub fn in_eigenbasis(vectors: &[PhaseVector], eigenbasis: &[PhaseVector]) -> Self {
        let coords = vectors
            .iter()
            .map(|v| pairs(&to_eigenbasis(v, eigenbasis)))
            .collect();
        SubspaceDocument {
            coordinates: Coordinates::Eigenbasis,
            vectors: coords,
        }
    }
}

fn from_eigenbasis(c: &PhaseVector, e: &[PhaseVector]) -> PhaseVector {
    let n = e.len();
    let mut acc = PhaseVector::zeros(n);
    for (k, ek) in e.iter().enumerate() {
        acc = acc + ek.scale(c.as_vector()[k]) + ek.conj().scale(c.as_vector()[n + k]);
    }
    acc
}

/// `c_k = <e_k, v>`, `c_{N+k} = -<e_k*, v>`.
fn to_eigenbasis(v: &PhaseVector, e: &[PhaseVector]) -> PhaseVector {
    let n = e.len();
    let form = gaussian_partners::phase_space::symplectic_form(n).expect("positive mode count");
    let mut out = vec![C64::new(0.0, 0.0); 2 * n];
    for (k, ek) in e.iter().enumerate() {
        out[k] = form.product(ek, v).expect("matching dimensions");
        out[n + k] = -form.product(&ek.conj(), v).expect("matching dimensions");
    }
    PhaseVector::from_components(out).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use gaussian_partners::phase_space::annihilation_basis;

    const STATE: &str = r#"{
        "n_modes": 2,
        "mean": [0.1, -0.25, 1e-3, 0.0],
        "covariance": [[1.25, 0.1, 0.0, 0.3], [0.1, 1.5, 0.2, 0.0], [0.0, 0.2, 2.0, 0.0], [0.3, 0.0, 0.0, 1.75]],
        "metadata": {"origin": "hand-written"}
    }"#;

    #[test]
    fn state_round_trip_is_lossless() {
        let doc = StateDocument::from_json("s", STATE).unwrap();
        let loaded = doc.to_state("s").unwrap_or_else(|_| panic!("load"));
        let mut back = StateDocument::from_state(&loaded.state);
        back.metadata = doc.metadata.clone();
        assert_eq!(back, doc);
        let text = serde_json::to_string(&back).unwrap();
        assert_eq!(StateDocument::from_json("s", &text).unwrap(), doc);
    }

    #[test]
    fn subspace_round_trip_is_lossless() {
        let text = r#"{"coordinates": "canonical", "vectors": [[[0.1, 0.2], [0.3, -0.4], [1e-17, 0.0], [0.7071067811865476, 0.0]]]}"#;
        let doc = SubspaceDocument::from_json("a", text).unwrap();
        let v = doc.vectors("a", &[], 2).unwrap();
        assert_eq!(SubspaceDocument::canonical(&v), doc);
    }

    #[test]
    fn eigenbasis_coordinates_invert() {
        let e = annihilation_basis(2);
        let c = PhaseVector::from_components(vec![
            C64::new(2.0, 0.0),
            C64::new(0.0, 0.5),
            C64::new(-1.0, 0.0),
            C64::new(0.0, 0.0),
        ])
        .unwrap();
        let v = from_eigenbasis(&c, &e);
        let back = to_eigenbasis(&v, &e);
        assert!((back.as_vector() - c.as_vector()).norm() < 1e-14);
    }

    #[test]
    fn malformed_documents_name_the_field() {
        let err =
            StateDocument::from_json("s", r#"{"n_modes": 1, "covariance": [[1.0, 0.0], [0.0]]}"#)
                .unwrap_err();
        assert!(err.to_string().contains("covariance[1]"), "{err}");
        let err =
            StateDocument::from_json("s", "{\n  \"n_modes\": 1,\n  \"nu\": [1.0,]\n}").unwrap_err();
        assert!(err.to_string().starts_with("s:3:"), "{err}");
        let err = StateDocument::from_json(
            "s",
            r#"{"n_modes": 1, "nu": [1.0], "covariance": [[1.0, 0.0], [0.0, 1.0]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("not both"));
    }
}
