pub mod asp;
pub mod frontend;
pub mod kb;
pub mod oracle;
pub mod program;
pub mod reasoner;
pub mod reductions;
pub mod translator;
