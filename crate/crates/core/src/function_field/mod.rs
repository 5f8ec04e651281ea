//! Function-field computations on curves in Artin-Schreier form.

pub mod expansion;
pub mod hasse;
pub mod invariants;
pub mod orders;
pub mod ring;
