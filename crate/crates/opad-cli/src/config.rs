//! Loading instance configs: Lie algebra specs or serialized instance documents.

use std::fmt;

use opad::cosim::{CosimplicialAlgebraInstance, InstanceDocument};
use opad::field::Field;
use opad::instances::{
    forgetful_complex, invariant_complex, tensor_bases, TensorBases, TruncatedUea,
};
use opad::lie::LieAlgebraSpec;
use serde_json::Value;

use crate::ComplexKind;

/// Bad arguments or a config that fails validation; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub enum Config {
    Lie(LieAlgebraSpec),
    Document(Box<InstanceDocument>),
}

pub struct Built<F> {
    pub instance: CosimplicialAlgebraInstance<F>,
    pub uea: Option<(TruncatedUea<F>, TensorBases)>,
}

impl Config {
    pub fn load(path: &str) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{path}: {e}")))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| UsageError(format!("{path}: invalid JSON: {e}")))?;
        if value.get("dims").is_some() {
            let doc: InstanceDocument = serde_path_to_error::deserialize(&value)
                .map_err(|e| UsageError(format!("{path}: $.{}: {}", e.path(), e.inner())))?;
            Ok(Config::Document(Box::new(doc)))
        } else {
            let spec = LieAlgebraSpec::from_value(&value)
                .map_err(|e| UsageError(format!("{path}: {e}")))?;
            Ok(Config::Lie(spec))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Config::Lie(s) => s.characteristic,
            Config::Document(d) => d.characteristic,
        }
    }

    pub fn spec(&self) -> Option<&LieAlgebraSpec> {
        match self {
            Config::Lie(s) => Some(s),
            Config::Document(_) => None,
        }
    }

    /// The forgetful or invariant complex of a Lie config; documents are used as given.
    pub fn build<F: Field>(&self, kind: ComplexKind) -> anyhow::Result<Built<F>> {
        match self {
            Config::Lie(s) => {
                let uea = TruncatedUea::<F>::new(s, s.truncation)?;
                let instance = match kind {
                    ComplexKind::Forgetful => forgetful_complex(&uea, s.max_degree)?,
                    ComplexKind::Invariant => invariant_complex(&uea, s.max_degree)?,
                };
                let bases = tensor_bases(&uea, s.max_degree);
                Ok(Built {
                    instance,
                    uea: Some((uea, bases)),
                })
            }
            Config::Document(d) => {
                let instance = CosimplicialAlgebraInstance::from_document(d)
                    .map_err(|e| UsageError(format!("$.{e}")))?;
                Ok(Built {
                    instance,
                    uea: None,
                })
            }
        }
    }
}
