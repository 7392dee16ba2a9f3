pub mod bounds;
pub mod error;
pub mod families;
pub mod functionals;
pub mod output;
pub mod scalar;
pub mod schwarz;
pub mod series;
pub mod verify;
