pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod exactalg;
pub mod hodge;
pub mod random;
pub mod solvmodel;
pub mod specseq;
