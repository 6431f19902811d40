// Chapters of the guide in book/, compiled as doctests so their snippets stay in sync.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/state.md")]
mod state {}
#[doc = include_str!("../../../book/src/quadrature.md")]
mod quadrature {}
#[doc = include_str!("../../../book/src/fock.md")]
mod fock {}
#[doc = include_str!("../../../book/src/uncertainty.md")]
mod uncertainty {}
#[doc = include_str!("../../../book/src/energy.md")]
mod energy {}
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
#[doc = include_str!("../../../README.md")]
mod readme {}
