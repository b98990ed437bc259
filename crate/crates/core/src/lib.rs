//! Helium-like two-electron S states in correlated Hylleraas bases, and the
//! spatial entanglement of those states.

pub mod entropy;
pub mod hylleraas;
pub mod numerics;
pub mod oracle;
pub mod partialwave;
pub mod rdm;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/precision.md")]
    mod precision {}
    #[doc = include_str!("../../../book/src/hylleraas.md")]
    mod hylleraas {}
    #[doc = include_str!("../../../book/src/partial-waves.md")]
    mod partial_waves {}
    #[doc = include_str!("../../../book/src/occupancies.md")]
    mod occupancies {}
    #[doc = include_str!("../../../book/src/entropies.md")]
    mod entropies {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
