pub mod backend;
pub mod cli;
pub mod codes;
pub mod dense;
pub mod error;
pub mod gate;
pub(crate) mod gf2;
pub mod pauli;
pub mod seal;
pub mod security;
pub mod tableau;
