pub mod dependence;
pub mod error;
pub mod existence;
pub mod foe;
pub mod mereology;
pub mod metrics;
pub mod schema;
pub mod tolerance;
