pub mod curve;
pub mod error;
pub mod field;
pub mod function_field;
pub mod ovoid;
pub mod par;
pub mod params;
pub mod report;
pub mod semigroup;
pub mod suite;
pub mod zeta;
