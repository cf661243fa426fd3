use crate::error::GeomError;
use qadic_core::{pow_u64, QInterval};

/// A tiling family of dual parallelograms ("tubes") over the ambient box
/// B(0, q^ambient)^2 at unit-cell resolution.
///
/// A tube of the family in direction parameter a is
///   {(x, y): |x - s1 + 2a(y - s2)| <= q^width, |y - s2| <= q^height}.
/// Two cells share a tube iff their u = n0 + 2 a n1 agree mod q^(E - width)
/// and their n1 agree mod q^(E - height), which makes tube lookup O(1)
/// integer arithmetic; tubes are stored by index, never as cell sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TubeFamily {
    q: u32,
    ambient_exp: u32,
    width_exp: u32,
    height_exp: u32,
    direction: u64,
}

impl TubeFamily {
    /// The wave-packet family dual to a cap of length R^(-1/2), R = q^(2A):
    /// width q^A, height q^(2A), direction the cap residue.
    pub fn for_cap(ambient_exp: u32, cap: &QInterval) -> Result<Self, GeomError> {
        let a_exp = cap.level();
        Self::with_shape(cap.q(), ambient_exp, a_exp, 2 * a_exp, cap.residue())
    }

    pub fn with_shape(
        q: u32,
        ambient_exp: u32,
        width_exp: u32,
        height_exp: u32,
        direction: u64,
    ) -> Result<Self, GeomError> {
        if ambient_exp < width_exp || ambient_exp < height_exp {
            return Err(GeomError::AmbientTooSmall {
                ambient: ambient_exp,
                width: width_exp,
                height: height_exp,
            });
        }
        Ok(Self { q, ambient_exp, width_exp, height_exp, direction })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ambient_exp(&self) -> u32 {
        self.ambient_exp
    }

    pub fn direction(&self) -> u64 {
        self.direction
    }

    /// Number of u-classes and y-classes.
    pub fn class_counts(&self) -> (u64, u64) {
        (
            pow_u64(self.q, self.ambient_exp - self.width_exp),
            pow_u64(self.q, self.ambient_exp - self.height_exp),
        )
    }

    pub fn tube_count(&self) -> u64 {
        let (u, y) = self.class_counts();
        u * y
    }

    /// Haar measure of one tube, in unit cells (= its exact measure).
    pub fn tube_measure(&self) -> u64 {
        pow_u64(self.q, self.width_exp + self.height_exp)
    }

    #[inline]
    pub fn tube_of_cell(&self, n0: u64, n1: u64) -> u64 {
        let (u_classes, y_classes) = self.class_counts();
        let u = (n0 + 2 * self.direction * n1) % u_classes;
        let y = n1 % y_classes;
        u * y_classes + y
    }

    /// (u-class, y-class) of a tube index.
    pub fn split_index(&self, idx: u64) -> (u64, u64) {
        let (_, y_classes) = self.class_counts();
        (idx / y_classes, idx % y_classes)
    }

    pub fn index_of(&self, u_res: u64, y_res: u64) -> u64 {
        let (_, y_classes) = self.class_counts();
        u_res * y_classes + y_res
    }

    /// Canonical anchor: the least cell of the tube in (y, x) order, which
    /// identifies tubes uniquely (translates are equal or disjoint).
    pub fn anchor(&self, idx: u64) -> (u64, u64) {
        let (u_classes, _) = self.class_counts();
        let (u_res, y_res) = self.split_index(idx);
        let s2 = y_res;
        let shear = (2 * self.direction * s2) % u_classes;
        let s1 = (u_res + u_classes - shear) % u_classes;
        (s1, s2)
    }

    pub fn contains(&self, idx: u64, n0: u64, n1: u64) -> bool {
        self.tube_of_cell(n0, n1) == idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qadic_core::interval_partition;

    #[test]
    fn tiling_partitions_box_exactly() {
        // q = 3: R in {9, 81} with ambient one side-R square: R^(1/2) tubes
        // of R^(1/2) side-R^(1/2) squares each, pairwise disjoint, covering.
        for a_exp in [1u32, 2] {
            for cap in interval_partition(3, a_exp).unwrap() {
                let fam = TubeFamily::for_cap(2 * a_exp, &cap).unwrap();
                let side = pow_u64(3, 2 * a_exp);
                assert_eq!(fam.tube_count(), pow_u64(3, a_exp));
                let mut counts = vec![0u64; fam.tube_count() as usize];
                for n0 in 0..side {
                    for n1 in 0..side {
                        counts[fam.tube_of_cell(n0, n1) as usize] += 1;
                    }
                }
                for (idx, c) in counts.iter().enumerate() {
                    assert_eq!(*c, fam.tube_measure(), "tube {idx} has wrong cell count");
                }
            }
        }
    }

    #[test]
    fn tubes_are_unions_of_squares() {
        // Each tube is a union of R^(1/2) squares of side R^(1/2):
        // membership is constant on side-q^A squares.
        let cap = QInterval::new(3, 2, 5).unwrap();
        let fam = TubeFamily::for_cap(4, &cap).unwrap();
        let side = 81u64;
        let sq = 9u64; // squares of side q^2: same square iff indices agree mod q^(4-2)
        for n0 in 0..side {
            for n1 in 0..side {
                let t = fam.tube_of_cell(n0, n1);
                let t2 = fam.tube_of_cell(n0 % sq, n1 % sq);
                assert_eq!(t, t2, "tube not constant on its side-R^(1/2) square");
            }
        }
        // Distinct squares per tube: measure / square size.
        assert_eq!(fam.tube_measure() / (sq * sq) as u64, 9);
    }

    #[test]
    fn anchors_are_members_and_unique() {
        let cap = QInterval::new(3, 1, 2).unwrap();
        let fam = TubeFamily::for_cap(3, &cap).unwrap();
        let mut seen = std::collections::HashSet::new();
        for idx in 0..fam.tube_count() {
            let (s1, s2) = fam.anchor(idx);
            assert!(fam.contains(idx, s1, s2), "anchor not in its tube");
            assert!(seen.insert((s1, s2)));
        }
    }

    #[test]
    fn direction_representative_does_not_change_partition() {
        // Any representative of the cap gives the same partition into tubes
        // (labels may permute).
        let cap = QInterval::new(3, 1, 1).unwrap();
        let e = 4u32;
        let base = TubeFamily::for_cap(e, &cap).unwrap();
        for lift in 1..9u64 {
            let alt = TubeFamily::with_shape(3, e, 1, 2, cap.residue() + 3 * lift).unwrap();
            let side = pow_u64(3, e);
            let mut relabel = std::collections::HashMap::new();
            for n0 in 0..side {
                for n1 in 0..side {
                    let t0 = base.tube_of_cell(n0, n1);
                    let t1 = alt.tube_of_cell(n0, n1);
                    let prev = relabel.insert(t0, t1);
                    if let Some(p) = prev {
                        assert_eq!(p, t1, "partition changed with anchor lift {lift}");
                    }
                }
            }
        }
    }
}
