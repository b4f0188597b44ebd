use crate::error::{Error, Result};
use crate::exactalg::{Mat, Subspace};

use super::Module;

/// An `A`-linear map. Construction checks `φ X_i = X_i φ` for every variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    src: Module,
    dst: Module,
    mat: Mat,
}

impl ModuleMap {
    pub fn new(src: Module, dst: Module, mat: Mat) -> Result<ModuleMap> {
        src.same_ring(&dst)?;
        if mat.rows() != dst.dim() || mat.cols() != src.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, modules have dimensions {} -> {}",
                mat.rows(),
                mat.cols(),
                src.dim(),
                dst.dim()
            )));
        }
        if mat.field() != src.ring().field() {
            return Err(Error::DimensionMismatch("map matrix is over the wrong field".into()));
        }
        for (i, (a, b)) in src.actions().iter().zip(dst.actions()).enumerate() {
            if mat.mul(a) != b.mul(&mat) {
                return Err(Error::NotIntertwining(i));
            }
        }
        Ok(ModuleMap { src, dst, mat })
    }

    pub fn zero(src: &Module, dst: &Module) -> Result<ModuleMap> {
        let f = src.ring().field();
        ModuleMap::new(src.clone(), dst.clone(), Mat::zeros(f, dst.dim(), src.dim()))
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap {
            src: m.clone(),
            dst: m.clone(),
            mat: Mat::identity(m.ring().field(), m.dim()),
        }
    }

    pub fn src(&self) -> &Module {
        &self.src
    }

    pub fn dst(&self) -> &Module {
        &self.dst
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ModuleMap) -> Result<ModuleMap> {
        if self.dst != next.src {
            return Err(Error::NonComposable(0, 1));
        }
        Ok(ModuleMap {
            src: self.src.clone(),
            dst: next.dst.clone(),
            mat: next.mat.mul(&self.mat),
        })
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.src.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.dst.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.src.dim() == self.dst.dim() && self.is_injective()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::kernel_of(&self.mat)
    }

    pub fn image(&self) -> Subspace {
        Subspace::span_of_columns(&self.mat)
    }
}
