pub mod bitrade;
pub mod catalog;
pub mod cli;
pub mod enumerate;
pub mod geometry;
pub mod ingest;
pub mod render;
pub mod solver;
pub mod verify;
