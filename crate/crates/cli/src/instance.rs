//! Turning an instance argument (fixture name or JSON file) into an
//! arrangement over the right field.

use std::path::Path;

use idealis::arrangement::{build_named, Arrangement, Model, NAMES};
use idealis::containment::check_good_prime;
use idealis::{Field, Polynomial};

use crate::error::{CliError, Result};

#[derive(Clone, Debug)]
pub struct Instance {
    /// Fixture name, or the file path as given.
    pub name: String,
    pub model: Model,
    pub arrangement: Arrangement,
}

pub fn parse_model(s: Option<&str>) -> Result<Model> {
    s.map_or(Ok(Model::default()), |s| s.parse().map_err(CliError::Core))
}

/// Field a fixture is built over when none is requested.
pub fn default_field(name: &str, model: Model) -> Field {
    match (name, model) {
        ("dualHesse", _) => Field::Prime(7),
        ("triangle", _) | (_, Model::RationalTable1) => Field::Rational,
        _ => Field::Quadratic(3),
    }
}

fn read_file(path: &Path) -> Result<Arrangement> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let v = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Arrangement::from_json(&v)?)
}

fn unknown(spec: &str) -> CliError {
    CliError::Usage(format!("`{spec}` is neither a file nor a known arrangement ({})", NAMES.join(", ")))
}

/// Loads `spec` over `field`, or over its default field.
pub fn load(spec: &str, model: Model, field: Option<Field>) -> Result<Instance> {
    let arrangement = if NAMES.contains(&spec) {
        build_named(spec, model, field.unwrap_or_else(|| default_field(spec, model)))?
    } else if Path::new(spec).is_file() {
        let arr = read_file(Path::new(spec))?;
        match field {
            None => arr,
            Some(f) if f == arr.field() => arr,
            Some(Field::Prime(p)) => arr.specialize(p)?,
            Some(f) => {
                return Err(CliError::Usage(format!("cannot move a {} arrangement to {f}", arr.field())));
            }
        }
    } else {
        return Err(unknown(spec));
    };
    Ok(Instance {
        name: spec.to_string(),
        model,
        arrangement,
    })
}

/// Loads `spec` reduced mod p. When the instance has a characteristic-zero
/// model, p is first checked to be good for it and for `extra`.
pub fn load_mod_p(spec: &str, model: Model, p: u64, extra: &[&Polynomial]) -> Result<Instance> {
    let target = Field::prime(p)?;
    let zero_char = if NAMES.contains(&spec) {
        let f = default_field(spec, model);
        if f.characteristic() != 0 {
            return load(spec, model, Some(target));
        }
        build_named(spec, model, f)?
    } else if Path::new(spec).is_file() {
        let arr = read_file(Path::new(spec))?;
        match arr.field() {
            f if f == target => {
                return Ok(Instance {
                    name: spec.to_string(),
                    model,
                    arrangement: arr,
                })
            }
            f if f.characteristic() != 0 => {
                return Err(CliError::Usage(format!("{spec} is defined over {f}, not {target}")));
            }
            _ => arr,
        }
    } else {
        return Err(unknown(spec));
    };
    check_good_prime(p, &zero_char, extra)?;
    Ok(Instance {
        name: spec.to_string(),
        model,
        arrangement: zero_char.specialize(p)?,
    })
}
