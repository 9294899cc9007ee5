//! Library side of the `puro` command: subcommand logic, output rendering and
//! fixture-backed reproduction of worked examples.

pub mod commands;
pub mod render;
pub mod reproduce;
