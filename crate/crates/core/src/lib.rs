pub mod cohomology;
pub mod error;
pub mod group;
pub mod linalg;
pub mod rep;
pub mod scalar;
pub mod stationarity;
pub mod subspace;
pub mod theorems;
pub mod induction;
pub mod sample;
