//! Invertible bimodules and relative Picard groups.

mod bass;
mod diag;
mod exact;
mod group;
mod morita;
mod relative;
mod sharp;

pub use bass::{bass_check, BassReport};
pub use diag::{pic_diag, twist_label, DiagonalPicard, TwistClass};
pub use exact::{verify_exact_sequence, ClassInfo, ExactSequenceReport, Junction};
pub use group::{FiniteGroup, PicardElement, PicardGroup, Provenance};
pub use morita::{is_invertible, morita_context, MoritaContext};
pub use relative::{inverse_in_q, pic_relative, q_as_bimodule, subbimodules, RelativePicard, SubbimoduleOfQ};
pub use sharp::{satisfies_q, t_sharp, u_sharp};
