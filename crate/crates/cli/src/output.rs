//! JSON rendering of results, with every number rounded to 12 significant digits.

use gaussian_partners::entanglement::PTSpectrum;
use gaussian_partners::oracle::VerificationReport;
use gaussian_partners::phase_space::PhaseVector;
use gaussian_partners::state::{SymplecticSpectrum, ValidityReport};
use serde_json::{json, Map, Value};

pub fn round(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Finite numbers as JSON numbers; infinities and NaN as strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round(x))
    } else {
        json!(x.to_string())
    }
}

pub fn vector(v: &PhaseVector) -> Value {
    Value::Array(
        v.as_vector()
            .iter()
            .map(|z| json!([round(z.re), round(z.im)]))
            .collect(),
    )
}

pub fn validity(r: &ValidityReport) -> Value {
    json!({
        "is_symmetric": r.is_symmetric,
        "is_positive_definite": r.is_positive_definite,
        "min_symplectic_eigenvalue": num(r.min_symplectic_eigenvalue),
        "is_physical": r.is_physical,
        "is_pure": r.is_pure,
        "purity": r.purity.map(num),
    })
}

pub fn spectrum(s: &SymplecticSpectrum) -> Value {
    json!({
        "nu": s.values().into_iter().map(num).collect::<Vec<_>>(),
        "modes": s.pairs().iter().map(|p| vector(&p.mode)).collect::<Vec<_>>(),
    })
}

pub fn pt_spectrum(s: &PTSpectrum) -> Value {
    json!({
        "nu": s.values().into_iter().map(num).collect::<Vec<_>>(),
        "subunity": s.subunity_values().into_iter().map(num).collect::<Vec<_>>(),
    })
}

pub fn verification(r: &VerificationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "residual": num(c.residual), "tolerance": num(c.tolerance)}))
        .collect();
    json!({"passed": r.passed(), "checks": checks})
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
