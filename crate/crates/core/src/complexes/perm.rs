use serde::{Deserialize, Serialize};

/// A permutation of the four tetrahedron vertices, stored as images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn from_images(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || std::mem::replace(&mut seen[x as usize], true) {
                return None;
            }
        }
        Some(Perm4(images))
    }

    /// Extends a map of face `face`'s three vertices (listed in ascending
    /// source order) to a full permutation sending `face` to `to_face`.
    pub fn from_face_map(face: usize, to_face: usize, images: [u8; 3]) -> Option<Self> {
        let mut full = [0u8; 4];
        let mut it = images.iter();
        for (v, slot) in full.iter_mut().enumerate() {
            *slot = if v == face {
                to_face as u8
            } else {
                *it.next()?
            };
        }
        Self::from_images(full)
    }

    /// Images of the vertices of face `face`, in ascending source order.
    pub fn face_images(self, face: usize) -> [u8; 3] {
        let mut out = [0u8; 3];
        let mut k = 0;
        for v in 0..4 {
            if v != face {
                out[k] = self.0[v];
                k += 1;
            }
        }
        out
    }

    #[inline]
    pub fn apply(self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Self {
        let mut out = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm4(out)
    }

    /// `self ∘ other`.
    pub fn compose(self, other: Perm4) -> Self {
        Perm4(other.0.map(|x| self.0[x as usize]))
    }

    pub fn sign(self) -> i8 {
        let mut s = 1;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    s = -s;
                }
            }
        }
        s
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..256u32)
            .filter_map(|k| Perm4::from_images([0, 1, 2, 3].map(|i| ((k >> (2 * i)) & 3) as u8)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let all: Vec<_> = Perm4::all().collect();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.sign() == 1).count(), 12);
        for &p in &all {
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
            for &q in &all {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
        }
    }

    #[test]
    fn face_map_round_trip() {
        for p in Perm4::all() {
            for f in 0..4 {
                let imgs = p.face_images(f);
                assert_eq!(Perm4::from_face_map(f, p.apply(f), imgs), Some(p));
            }
        }
        assert_eq!(Perm4::from_face_map(0, 1, [1, 2, 3]), None);
        assert_eq!(Perm4::from_face_map(0, 0, [1, 1, 3]), None);
        assert_eq!(Perm4::from_face_map(0, 0, [1, 2, 4]), None);
    }
}
