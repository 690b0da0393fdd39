//! Exact certification of fundamental groups, Seiberg-Witten basic classes
//! and real oval topology for rim-surgered plane curves.

pub mod bigjson;
pub mod cli;
pub mod fpgroups;
pub mod intmat;
pub mod knots;
pub mod laurent;
pub mod lcurve;
pub mod swcalc;
