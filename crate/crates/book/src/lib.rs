//! Every chapter of the guide is a module here, so `cargo test --doc` runs the
//! Rust listings in `book/src`. A failing doc-test names the chapter module.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/interferometer.md")]
pub mod interferometer {}

#[doc = include_str!("../../../book/src/ontological-models.md")]
pub mod ontological_models {}

#[doc = include_str!("../../../book/src/model-files.md")]
pub mod model_files {}

#[doc = include_str!("../../../book/src/feasibility.md")]
pub mod feasibility {}

#[doc = include_str!("../../../book/src/no-go-checks.md")]
pub mod no_go_checks {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
