//! The guide's chapters, compiled as doc modules so that `cargo test` runs
//! every snippet in the book.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/problem.md")]
pub mod problem {}
#[doc = include_str!("../../../book/src/pick.md")]
pub mod pick {}
#[doc = include_str!("../../../book/src/interpolants.md")]
pub mod interpolants {}
#[doc = include_str!("../../../book/src/degree.md")]
pub mod degree {}
#[doc = include_str!("../../../book/src/reduction.md")]
pub mod reduction {}
#[doc = include_str!("../../../book/src/special.md")]
pub mod special {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
