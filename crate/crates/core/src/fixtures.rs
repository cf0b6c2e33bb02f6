//! The worked arrangements shipped under `fixtures/`.

use crate::arrangement::{parse_arrangement, Arrangement};

pub const EXAMPLE_B: &str = include_str!("../fixtures/example22-B.arr");
pub const EXAMPLE_B_PRIME: &str = include_str!("../fixtures/example22-Bprime.arr");
pub const THM32_BHAT: &str = include_str!("../fixtures/thm32-Bhat.arr");
pub const THM32_BHAT_COMPLEX: &str = include_str!("../fixtures/thm32-Bhat-complex.arr");

fn load(text: &str) -> Arrangement {
    parse_arrangement(text).expect("bundled fixture parses")
}

/// Four complex lines `w = 0, z = 0, z = w, z = 2w` in `C^2`.
pub fn example_b() -> Arrangement {
    load(EXAMPLE_B)
}

/// As [`example_b`], with the last member replaced by `z = 2 conj(w)`.
pub fn example_b_prime() -> Arrangement {
    load(EXAMPLE_B_PRIME)
}

/// Five generic four-dimensional subspaces of `R^6`, one conjugate-linear.
pub fn thm32_bhat() -> Arrangement {
    load(THM32_BHAT)
}

/// The fully complex counterpart of [`thm32_bhat`].
pub fn thm32_bhat_complex() -> Arrangement {
    load(THM32_BHAT_COMPLEX)
}

/// All bundled fixtures with their file names.
pub fn all() -> Vec<(&'static str, Arrangement)> {
    vec![
        ("example22-B.arr", example_b()),
        ("example22-Bprime.arr", example_b_prime()),
        ("thm32-Bhat.arr", thm32_bhat()),
        ("thm32-Bhat-complex.arr", thm32_bhat_complex()),
    ]
}
