//! Real plane curve models: maximal-nest presentations, the Nori
//! abelianity predicate, and the ovals of the perturbed `X₉` singularity.

mod nest;
mod nori;
mod x9;

pub use nest::{
    hemisphere_relation, hemisphere_relators, nest_presentation, GeneticNestModel, HemisphereCut, NestConfig, NestError,
};
pub use nori::{nori_abelian_guaranteed, SingularityType};
pub use x9::{x9_ovals, x9_value, OvalComponent, OvalError, OvalReport, Window, MIN_RESOLUTION};
