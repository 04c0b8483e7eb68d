pub mod builders;
pub mod cli;
pub mod opalg;
pub mod relations;
pub mod scalars;
pub mod states;
