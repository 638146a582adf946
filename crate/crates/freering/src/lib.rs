//! Exact computer algebra for group algebras `Q(F)` of finitely generated
//! free groups: reduced words, the Magnus embedding and its induced total
//! order, group-ring arithmetic with factorization certificates, Laurent
//! polynomial subring tests, marker-block sequence codecs, and Stallings
//! folding geometry.

pub mod cli;
pub mod codec;
pub mod expr;
pub mod geometry;
pub mod groupring;
pub mod jsonio;
pub mod laurent;
mod linalg;
pub mod magnus;
pub mod oracle;
pub mod words;

pub use groupring::GroupRingElem;
pub use laurent::LaurentPoly;
pub use magnus::{bergman_cmp, OrderVerdict, PowerSeries};
pub use words::Word;
