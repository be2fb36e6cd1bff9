mod arith;
pub mod error;
pub mod field;
pub mod tower;
pub mod poly;
pub mod cyclotomic;
pub mod sequence;
pub mod code;
pub mod catalog;
pub mod closed_forms;
