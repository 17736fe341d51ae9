//! Chow rings of towers of projective bundles, split K-classes and
//! the varieties built from them.

mod elem;
mod kclass;
mod ring;
mod variety;

pub use elem::{ChowElem, ChowVec};
pub use kclass::KClass;
pub use ring::{ChowRing, Tower};
pub use variety::{
    c1_from_map, c1_to_map, cf_class, chern_number, evaluate_at, kclass_from_specs,
    kclass_to_specs, multiplicative, normal_p_class, p_series, segre_pushforward, ChowPoly,
    LineSpec, Variety, VarietyDescriptor,
};
