//! Permutations of the four vertices of a model tetrahedron.

use std::fmt;

/// A bijection of `{0, 1, 2, 3}`, stored as the images of `0, 1, 2, 3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm([u8; 4]);

const ALL: [[u8; 4]; 24] = {
    let mut out = [[0u8; 4]; 24];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && a != c && b != c {
                    let d = 6 - a - b - c;
                    out[n] = [a as u8, b as u8, c as u8, d as u8];
                    n += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    /// Builds a permutation from its image, returning `None` unless every
    /// value in `0..4` appears exactly once.
    pub fn new(image: [u8; 4]) -> Option<Perm> {
        let mut seen = [false; 4];
        for &v in &image {
            if v > 3 || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm(image))
    }

    /// Transposition of `a` and `b`.
    pub fn swap(a: usize, b: usize) -> Perm {
        let mut img = [0, 1, 2, 3];
        img.swap(a, b);
        Perm(img)
    }

    /// All 24 permutations in lexicographic order of their images.
    pub fn all() -> impl Iterator<Item = Perm> {
        ALL.iter().map(|&p| Perm(p))
    }

    /// Position of this permutation in [`Perm::all`].
    pub fn index(self) -> usize {
        ALL.iter().position(|&p| p == self.0).unwrap()
    }

    pub fn from_index(i: usize) -> Perm {
        Perm(ALL[i])
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn image(self) -> [u8; 4] {
        self.0
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(self, other: Perm) -> Perm {
        Perm([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
            self.0[other.0[3] as usize],
        ])
    }

    pub fn inverse(self) -> Perm {
        let mut inv = [0u8; 4];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_odd(self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_four_distinct_with_twelve_odd() {
        let all: Vec<_> = Perm::all().collect();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.is_odd()).count(), 12);
        for (i, p) in all.iter().enumerate() {
            assert_eq!(p.index(), i);
            assert_eq!(Perm::from_index(i), *p);
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new([0, 0, 1, 2]).is_none());
        assert!(Perm::new([0, 1, 2, 4]).is_none());
        assert!(Perm::new([3, 2, 1, 0]).is_some());
    }

    #[test]
    fn inverse_and_compose() {
        for p in Perm::all() {
            assert_eq!(p.compose(p.inverse()), Perm::IDENTITY);
            for q in Perm::all() {
                assert_eq!(p.compose(q).is_odd(), p.is_odd() != q.is_odd());
            }
        }
    }
}
