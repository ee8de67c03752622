//! Construction and exhaustive verification of two families of quadratic
//! APN-type functions over `GF(2^2m)`:
//!
//! * the trinomials `f_k(X) = X^(2^k+1) + Tr(X)^(2^k+1)` ([`trinomial`]);
//! * the Budaghyan-Carlet hexanomials `g_{C,k}` together with a complete
//!   characterization, enumeration and count of the admissible
//!   coefficients `C` ([`hexanomial`]).
//!
//! [`field`] and [`decomposition`] hold the arithmetic, [`vbf`] the generic
//! lookup-table analysis (differential uniformity, Walsh and hyperplane
//! spectra, bent components), and [`io`] the JSON/CSV file formats.

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod field;
pub mod hexanomial;
pub mod io;
pub mod lemmas;
pub mod linalg;
pub mod trinomial;
pub mod vbf;

pub use error::{Error, Result};
pub use field::{build_field, Elem, FieldCtx};
pub use vbf::{Spectrum, Vbf};

/// `count` items of `items` at evenly spaced positions `i * len / count`;
/// everything when `count >= len`.
pub fn sample_evenly<T: Copy>(items: &[T], count: usize) -> Vec<T> {
    if count >= items.len() {
        return items.to_vec();
    }
    (0..count).map(|i| items[i * items.len() / count]).collect()
}
