use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::Mat;
use crate::ring::CIRing;

use super::Module;

/// On-disk module format: ring spec, dimension, row-major action matrices.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ModuleFile {
    pub ring: String,
    pub dim: usize,
    pub actions: Vec<Vec<u32>>,
}

impl ModuleFile {
    pub(crate) fn from_module(m: &Module) -> ModuleFile {
        ModuleFile {
            ring: m.ring().spec_string(),
            dim: m.dim(),
            actions: m.actions().iter().map(|a| a.data().to_vec()).collect(),
        }
    }

    pub(crate) fn into_module(self, validate: bool) -> Result<Module> {
        let ring = CIRing::parse(&self.ring)?;
        let f = ring.field();
        if self.actions.len() != ring.c() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, found {}",
                ring.c(),
                self.actions.len()
            )));
        }
        let mut mats = Vec::with_capacity(self.actions.len());
        for (i, data) in self.actions.into_iter().enumerate() {
            if data.len() != self.dim * self.dim {
                return Err(Error::InvalidModule(format!(
                    "action {} has {} entries, expected {}",
                    i,
                    data.len(),
                    self.dim * self.dim
                )));
            }
            if let Some(pos) = data.iter().position(|&x| x >= f.p()) {
                return Err(Error::InvalidModule(format!(
                    "action {} entry ({}, {}) = {} is not reduced mod {}",
                    i,
                    pos / self.dim,
                    pos % self.dim,
                    data[pos],
                    f.p()
                )));
            }
            mats.push(Mat::from_vec(f, self.dim, self.dim, data)?);
        }
        let m = Module::from_parts(ring, mats);
        if validate {
            m.validate()?;
        }
        Ok(m)
    }
}

impl Module {
    /// Canonical serialization: compact JSON followed by a newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string(&ModuleFile::from_module(self)).expect("module serializes");
        s.push('\n');
        s
    }

    /// Parses and validates a module file.
    pub fn from_json_str(s: &str) -> Result<Module> {
        let file: ModuleFile = serde_json::from_str(s)?;
        file.into_module(true)
    }
}

pub fn read_module_file(path: &Path) -> Result<Module> {
    Module::from_json_str(&std::fs::read_to_string(path)?)
}

pub fn write_module_file(path: &Path, m: &Module) -> Result<()> {
    std::fs::write(path, m.to_json_string())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::regular_module;

    #[test]
    fn round_trip_is_canonical() {
        let r = CIRing::new(5, &[2, 2]).unwrap();
        let a = regular_module(&r);
        let s = a.to_json_string();
        assert!(s.starts_with("{\"ring\":\"p=5;exps=2,2\",\"dim\":4,\"actions\":"));
        assert!(s.ends_with('\n'));
        let back = Module::from_json_str(&s).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json_string(), s);
        assert_eq!(back.content_hash(), a.content_hash());
    }

    #[test]
    fn rejects_bad_files() {
        let bad = r#"{"ring":"p=5;exps=2,2","dim":2,"actions":[[0,1,0,0],[0,0,1,0]]}"#;
        let err = Module::from_json_str(bad).unwrap_err();
        assert!(err.to_string().contains("do not commute"), "{err}");
        let short = r#"{"ring":"p=5;exps=2,2","dim":2,"actions":[[0,1,0],[0,0,0,0]]}"#;
        assert!(Module::from_json_str(short).unwrap_err().to_string().contains("3 entries"));
        let unreduced = r#"{"ring":"p=5;exps=2,2","dim":1,"actions":[[7],[0]]}"#;
        assert!(Module::from_json_str(unreduced).unwrap_err().to_string().contains("not reduced"));
        let extra = r#"{"ring":"p=5;exps=2,2","dim":1,"actions":[[0],[0]],"x":1}"#;
        assert!(Module::from_json_str(extra).is_err());
        let badring = r#"{"ring":"p=4;exps=2,2","dim":1,"actions":[[0],[0]]}"#;
        assert!(matches!(Module::from_json_str(badring), Err(Error::Parse { .. })));
    }
}
