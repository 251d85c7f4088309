//! Chain complexes of free abelian groups with cyclic group actions.

pub mod equivariant;
pub mod free;
pub mod graded;

pub use equivariant::{cyclic_tensor_power, EquivariantComplex};
pub use free::FreeComplex;
pub use graded::{GradedGroupWithAction, GroupWithAction};

use crate::exact::FgAbelianGroup;
use crate::Error;

pub fn tensor(c: &FreeComplex, d: &FreeComplex) -> FreeComplex {
    c.tensor(d)
}

pub fn homology(c: &FreeComplex) -> Result<Vec<(i64, FgAbelianGroup)>, Error> {
    c.homology()
}

pub fn coinvariants_graded(m: &GradedGroupWithAction) -> Vec<(i64, FgAbelianGroup)> {
    m.coinvariants()
}

pub fn invariants_graded(m: &GradedGroupWithAction) -> Vec<(i64, FgAbelianGroup)> {
    m.invariants()
}
