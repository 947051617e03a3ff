use std::fmt;

/// A permutation of the four vertex labels `{0, 1, 2, 3}` of a tetrahedron.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds the permutation sending `i` to `images[i]`, or `None` if the
    /// images are not a permutation of `0..4`.
    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        Perm4([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
            self.0[other.0[3] as usize],
        ])
    }

    pub fn transposition(a: usize, b: usize) -> Perm4 {
        let mut images = [0u8, 1, 2, 3];
        images.swap(a, b);
        Perm4(images)
    }

    /// All 24 permutations in lexicographic order of their image tuples.
    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..4u8).flat_map(|a| {
            (0..4u8).flat_map(move |b| {
                (0..4u8).flat_map(move |c| (0..4u8).filter_map(move |d| Perm4::new([a, b, c, d])))
            })
        })
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn there_are_24() {
        assert_eq!(Perm4::all().count(), 24);
    }

    #[test]
    fn inverse_and_compose() {
        for p in Perm4::all() {
            assert_eq!(p.compose(&p.inverse()), Perm4::IDENTITY);
            for q in Perm4::all() {
                let pq = p.compose(&q);
                for v in 0..4 {
                    assert_eq!(pq.apply(v), p.apply(q.apply(v)));
                }
            }
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
        assert!(Perm4::new([0, 1, 2, 4]).is_none());
    }
}
