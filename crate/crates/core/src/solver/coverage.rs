//! Coverage certificates for cubes too large to enumerate.

use crate::dnf::Conjunction;
use crate::error::{Error, Result};

/// A subcube: coordinates in `mask` are fixed to the bits of `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Cube {
    pub mask: u64,
    pub value: u64,
}

impl Cube {
    fn of(c: &Conjunction) -> Self {
        Cube {
            mask: c.support(),
            value: c.positive_mask(),
        }
    }

    fn meets(&self, other: &Cube) -> bool {
        (self.value ^ other.value) & self.mask & other.mask == 0
    }

    /// `self \ other` as pairwise disjoint cubes.
    fn subtract(&self, other: &Cube, out: &mut Vec<Cube>) {
        if !self.meets(other) {
            out.push(*self);
            return;
        }
        let mut fixed = *self;
        let mut free = other.mask & !self.mask;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free &= free - 1;
            out.push(Cube {
                mask: fixed.mask | bit,
                value: fixed.value | (!other.value & bit),
            });
            fixed.mask |= bit;
            fixed.value |= other.value & bit;
        }
    }
}

/// Points of the `n`-cube left uncovered by `faces`, as disjoint cubes.
/// Fails once more than `max_cubes` pieces are alive.
pub(crate) fn uncovered_cubes(faces: &[Conjunction], max_cubes: usize) -> Result<Vec<Cube>> {
    let mut faces: Vec<Cube> = faces.iter().map(Cube::of).collect();
    // Large faces first keeps the remainder small.
    faces.sort_by_key(|c| c.mask.count_ones());
    let mut remaining = vec![Cube { mask: 0, value: 0 }];
    for face in &faces {
        let mut next = Vec::with_capacity(remaining.len());
        for cube in &remaining {
            cube.subtract(face, &mut next);
        }
        if next.len() > max_cubes {
            return Err(Error::ResourceLimit(format!(
                "coverage check needs more than {max_cubes} cubes"
            )));
        }
        remaining = next;
    }
    Ok(remaining)
}
