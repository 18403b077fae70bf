//! Shared input builders for the benchmark targets.

use wreath_core::groups::{cyclic, dihedral, symmetric, FiniteGroup};
use wreath_core::spectra::{spectrum, OrderSpectrum};

pub fn d4() -> FiniteGroup {
    dihedral(4).expect("catalog group")
}

pub fn s3() -> FiniteGroup {
    symmetric(3).expect("catalog group")
}

pub fn c(n: usize) -> FiniteGroup {
    cyclic(n).expect("catalog group")
}

pub fn spec(g: &FiniteGroup) -> OrderSpectrum {
    spectrum(g)
}
