//! R-points, localization at R-points by jets, global sections, fairness and
//! the smooth Zariski predicates on the R-point part of the spectrum.

mod local;
mod points;
mod sections;
mod zariski;

pub use local::{localize, JetQuotient, LocalAlgebra, LocalElement};
pub use points::{find_rpoints, find_zeros, zero_set_surrogate, RPoint};
pub(crate) use sections::spread as spread_points;
pub use sections::{fairfication, fairfied, global_section, psi_kernel_test, FairficationEntry, FairficationReport, GlobalSection, PsiVerdict, SectionValue};
pub use zariski::{in_d, z_of};
