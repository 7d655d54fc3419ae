pub mod error;
pub mod linalg;
pub mod model;
pub mod perturb;
pub mod poly;
pub mod report;
pub mod secular;
pub mod spectra;
pub mod scalar;
pub mod sturmian;
pub mod verify;
