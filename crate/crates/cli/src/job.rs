//! TOML job files: a self-contained description of one computation plus
//! reproducibility options.  Keys are kebab-case.  Command-line flags
//! override file options and defaults fill whatever remains, so a job file
//! only needs to pin what it cares about.

use std::path::Path;

use serde::Deserialize;

use dyndeg_core::intmat::IMat;
use dyndeg_core::parse::parse_polynomial;
use dyndeg_core::poly::Budget;
use dyndeg_core::ratmap::RationalMap;
use dyndeg_core::space::AmbientSpace;

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("cannot read job file: {0}")]
    Io(#[from] std::io::Error),
    #[error("job file syntax: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid job: {0}")]
    Invalid(String),
    #[error("computation failed: {0}")]
    Internal(String),
}

impl JobError {
    /// True for errors the caller caused (bad file, bad data), as opposed
    /// to failures inside the engine.
    pub fn is_input(&self) -> bool {
        !matches!(self, JobError::Internal(_))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum JobFile {
    #[serde(rename_all = "kebab-case")]
    Degrees {
        space: SpaceSpec,
        map: MapSpec,
        #[serde(default)]
        options: Options,
    },
    #[serde(rename_all = "kebab-case")]
    Monomial {
        exponents: Vec<Vec<i64>>,
        #[serde(default)]
        model: ModelKind,
        #[serde(default)]
        options: Options,
    },
    #[serde(rename_all = "kebab-case")]
    Lattice {
        #[serde(default)]
        blowup_points: Option<usize>,
        #[serde(default)]
        pairing: Option<Vec<Vec<i64>>>,
        #[serde(default)]
        polarization: Option<Vec<i64>>,
        #[serde(default)]
        effective: Option<Vec<Vec<i64>>>,
        action: ActionSpec,
        #[serde(default)]
        options: Options,
    },
    #[serde(rename_all = "kebab-case")]
    Relative {
        space: SpaceSpec,
        map: MapSpec,
        base_blocks: Vec<usize>,
        #[serde(default)]
        options: Options,
    },
    #[serde(rename_all = "kebab-case")]
    ProductFormula {
        exponents: Vec<Vec<i64>>,
        projection: Vec<Vec<i64>>,
        #[serde(default)]
        options: Options,
    },
    #[serde(rename_all = "kebab-case")]
    PropertySuite {
        suite: String,
        #[serde(default)]
        options: Options,
    },
}

impl JobFile {
    pub fn kind_name(&self) -> &'static str {
        match self {
            JobFile::Degrees { .. } => "degrees",
            JobFile::Monomial { .. } => "monomial",
            JobFile::Lattice { .. } => "lattice",
            JobFile::Relative { .. } => "relative",
            JobFile::ProductFormula { .. } => "product-formula",
            JobFile::PropertySuite { .. } => "property-suite",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct SpaceSpec {
    /// dimensions of the projective factors, e.g. `[2]` or `[1, 1]`
    pub factors: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct MapSpec {
    /// one coordinate tuple per factor, components as polynomial strings
    pub tuples: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    #[default]
    Projective,
    TorusProduct,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Projective => "projective",
            ModelKind::TorusProduct => "torus-product",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Rows(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Options {
    #[serde(default)]
    pub n_max: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub max_terms: Option<usize>,
    #[serde(default)]
    pub max_coeff_bits: Option<u64>,
}

impl Options {
    /// Field-wise preference for `self`, falling back to `other`.
    pub fn or(self, other: Options) -> Options {
        Options {
            n_max: self.n_max.or(other.n_max),
            tol: self.tol.or(other.tol),
            seed: self.seed.or(other.seed),
            max_terms: self.max_terms.or(other.max_terms),
            max_coeff_bits: self.max_coeff_bits.or(other.max_coeff_bits),
        }
    }

    pub fn resolve(self) -> Resolved {
        let base = Budget::default();
        Resolved {
            n_max: self.n_max.unwrap_or(8),
            tol: self.tol.unwrap_or(1e-9),
            seed: self.seed.unwrap_or(1),
            budget: Budget {
                max_terms: self.max_terms.unwrap_or(base.max_terms),
                max_coeff_bits: self.max_coeff_bits.unwrap_or(base.max_coeff_bits),
            },
        }
    }
}

/// Options with every default filled in.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub n_max: usize,
    pub tol: f64,
    pub seed: u64,
    pub budget: Budget,
}

pub fn load(path: &Path) -> Result<JobFile, JobError> {
    let text = std::fs::read_to_string(path)?;
    Ok(toml::from_str(&text)?)
}

pub fn build_space(spec: &SpaceSpec) -> Result<AmbientSpace, JobError> {
    AmbientSpace::product(&spec.factors).map_err(|e| JobError::Invalid(e.to_string()))
}

pub fn build_map(space: &AmbientSpace, spec: &MapSpec) -> Result<RationalMap, JobError> {
    let mut tuples = Vec::with_capacity(spec.tuples.len());
    for (b, strings) in spec.tuples.iter().enumerate() {
        let mut tuple = Vec::with_capacity(strings.len());
        for s in strings {
            tuple.push(
                parse_polynomial(space, s)
                    .map_err(|e| JobError::Invalid(format!("tuple {b}, component '{s}': {e}")))?,
            );
        }
        tuples.push(tuple);
    }
    RationalMap::self_map(space.clone(), tuples).map_err(|e| JobError::Invalid(e.to_string()))
}

pub fn int_matrix(rows: &[Vec<i64>], what: &str) -> Result<IMat, JobError> {
    if rows.is_empty() || rows[0].is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(JobError::Invalid(format!(
            "{what} must be a nonempty rectangular integer matrix"
        )));
    }
    Ok(IMat::from_rows(rows))
}
