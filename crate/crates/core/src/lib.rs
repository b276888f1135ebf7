pub mod algebra;
pub mod error;
pub mod gf2;
pub mod endo;
pub mod fpp;
pub mod sympow;
pub mod commands;
pub mod suite;
pub mod cli;
