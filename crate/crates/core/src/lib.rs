pub mod cli;
pub mod dl;
pub mod eval;
pub mod hypernym;
pub mod qct;
pub mod text;
pub mod translate;
