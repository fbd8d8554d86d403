pub mod baselines;
pub mod copula;
pub mod distribution;
pub mod error;
pub mod extremes;
pub mod majorization;
pub mod numerics;
pub mod orders;
pub mod theorems;
pub mod cli;
