//! The user guide in `book/`, compiled here so its snippets run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod chapter1 {}

#[doc = include_str!("../../../book/src/assemblies.md")]
pub mod chapter2 {}

#[doc = include_str!("../../../book/src/forces.md")]
pub mod chapter3 {}

#[doc = include_str!("../../../book/src/program.md")]
pub mod chapter4 {}

#[doc = include_str!("../../../book/src/scores.md")]
pub mod chapter5 {}

#[doc = include_str!("../../../book/src/files.md")]
pub mod chapter6 {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod chapter7 {}
