pub mod analysis;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod operator;
pub mod scalar;
pub mod suite;
pub mod symbol;
pub mod window;
pub mod word_syntax;
