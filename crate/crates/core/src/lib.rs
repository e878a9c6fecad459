pub mod field;
pub mod literal;
pub mod linalg;
pub mod algebra;
pub mod separator;
pub mod oracles;
