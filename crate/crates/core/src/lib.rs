//! Order theory of commutative subalgebras of finite-dimensional *-algebras.

pub mod order;
pub mod ortho;
pub mod acceptance;
pub mod cantor;
pub mod partitions;
pub mod scatter;
pub mod staralg;
