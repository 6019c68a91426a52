#![allow(dead_code)]

use anef_core::configuration::{validate, ConfigDraft, SurfaceConfig};
use anef_core::lattice::PointRef;

pub fn p(chain: usize, slot: usize) -> PointRef {
    PointRef::new(chain, slot)
}

pub fn config(lengths: &[usize], lines: &[[PointRef; 3]]) -> SurfaceConfig {
    validate(&ConfigDraft::with_lengths(lengths, lines.to_vec())).expect("valid configuration")
}

pub fn gen5() -> SurfaceConfig {
    config(&[1, 1, 1, 1, 1], &[])
}

pub fn col3() -> SurfaceConfig {
    config(&[1, 1, 1, 1, 1], &[[p(1, 1), p(2, 1), p(3, 1)]])
}

pub fn ch3() -> SurfaceConfig {
    config(&[3, 1, 1], &[[p(1, 1), p(1, 2), p(1, 3)], [p(1, 1), p(2, 1), p(3, 1)]])
}

pub fn single_chain() -> SurfaceConfig {
    config(&[5], &[])
}
