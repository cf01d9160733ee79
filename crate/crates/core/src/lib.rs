pub mod algebra;
pub mod darrow;
pub mod decide;
pub mod endoring;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod form;
pub mod io;
pub mod linalg;
pub mod module;

pub use algebra::{AlgElem, Group, InvAlgebra};
pub use error::{Error, Result};
pub use field::{Elem, Field, FieldDescriptor, FieldElem, FieldKind};
pub use linalg::{Matrix, Subspace, Vector};
pub use module::{DualModule, HomSpace, RightModule};
pub use form::{GBilinearForm, Gram, SesqForm, SesqSystem};
pub use darrow::{DAMorphism, DoubleArrow, Search};
pub use endoring::{EndoRing, HermClassSet};
pub use decide::{DecisionReport, Method, Verdict};
pub use io::Document;
