//! Exact arithmetic substrate: cyclotomic numbers, truncated p-adic
//! integers of unramified extensions, and finite fields.

pub mod arith;
pub mod cyclo;
pub mod ffield;
pub mod padic;
pub mod ring;
pub mod unram;

pub use cyclo::{cyclotomic, CycNum, CycRing, RootOfUnity, Scalar};
pub use ffield::{ResidueElem, ResidueField};
pub use padic::{PadicInt, Zpn};
pub use ring::{Field, Ring, UnitRing};
pub use unram::{LogValue, UnramInt, UnramRing};
