use padic::{PadicNumber, Valuation};

/// Guaranteed lower bound on the valuation; exact zeros are unbeatable.
fn valuation_floor(x: &PadicNumber) -> i64 {
    match x.valuation() {
        Valuation::Finite(v) => v,
        Valuation::AtLeast(a) => a,
        Valuation::Infinite => i64::MAX,
    }
}

/// Orders defects by guaranteed norm, larger (worse) first.
pub(crate) fn worse(candidate: &PadicNumber, incumbent: &PadicNumber) -> bool {
    valuation_floor(candidate) < valuation_floor(incumbent)
}

/// The worst of two defects.
pub(crate) fn worst_of(a: PadicNumber, b: PadicNumber) -> PadicNumber {
    if worse(&b, &a) {
        b
    } else {
        a
    }
}
