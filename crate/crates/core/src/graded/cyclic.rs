use serde::{Deserialize, Serialize};

use super::sign::rotation_sign;

/// A homogeneous letter: an ordering key plus its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter<K> {
    pub key: K,
    pub degree: i32,
}

impl<K> Letter<K> {
    pub fn new(key: K, degree: i32) -> Self {
        Letter { key, degree }
    }
}

/// `sign · (α₀ ⊗ … ⊗ α_m)` read in the cyclic coinvariants, where
/// `(α₀ ⊗ … ⊗ α_m) = (-1)^(|α_m|(|α₀| + … + |α_{m-1}|)) (α_m ⊗ α₀ ⊗ … ⊗ α_{m-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedCyclicWord<K> {
    letters: Vec<Letter<K>>,
    sign: i8,
}

/// Result of [`SignedCyclicWord::normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized<K> {
    /// Lexicographically minimal rotation.
    pub word: SignedCyclicWord<K>,
    /// Number of last-to-front rotations that produced `word`.
    pub rotation: usize,
    /// Set when a nontrivial rotation maps the word to minus itself, so the
    /// class is zero in the coinvariants.
    pub vanishes: bool,
}

impl<K: Clone + Ord> SignedCyclicWord<K> {
    pub fn new(letters: Vec<Letter<K>>) -> Self {
        SignedCyclicWord { letters, sign: 1 }
    }

    pub fn with_sign(letters: Vec<Letter<K>>, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        SignedCyclicWord { letters, sign }
    }

    pub fn letters(&self) -> &[Letter<K>] {
        &self.letters
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.degree).collect()
    }

    pub fn total_degree(&self) -> i32 {
        self.letters.iter().map(|l| l.degree).sum()
    }

    /// Moves the last letter to the front, keeping the same coinvariant class.
    pub fn rotate(&self) -> Self {
        if self.letters.len() < 2 {
            return self.clone();
        }
        let sign = self.sign * rotation_sign(&self.degrees());
        let mut letters = self.letters.clone();
        letters.rotate_right(1);
        SignedCyclicWord { letters, sign }
    }

    pub fn rotate_by(&self, times: usize) -> Self {
        (0..times).fold(self.clone(), |w, _| w.rotate())
    }

    /// Canonical representative: minimal rotation by letter order, earliest rotation on ties.
    pub fn normalize(&self) -> Normalized<K> {
        let n = self.letters.len();
        if n < 2 {
            return Normalized { word: self.clone(), rotation: 0, vanishes: false };
        }
        let mut best = self.clone();
        let mut best_rot = 0;
        let mut current = self.clone();
        let mut vanishes = false;
        for r in 1..n {
            current = current.rotate();
            if current.letters == self.letters && current.sign != self.sign {
                vanishes = true;
            }
            if current.letters < best.letters {
                best = current.clone();
                best_rot = r;
            }
        }
        Normalized { word: best, rotation: best_rot, vanishes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(spec: &[(char, i32)]) -> SignedCyclicWord<char> {
        SignedCyclicWord::new(spec.iter().map(|&(k, d)| Letter::new(k, d)).collect())
    }

    #[test]
    fn examples() {
        let one = word(&[('a', 1)]);
        assert_eq!(one.normalize().word, one);

        let n = word(&[('b', 1), ('a', 1)]).normalize();
        assert_eq!(n.word.letters(), word(&[('a', 1), ('b', 1)]).letters());
        assert_eq!(n.word.sign(), -1);

        let even = word(&[('c', 0), ('a', 2), ('b', 0)]).normalize();
        assert_eq!(even.word.letters(), word(&[('a', 2), ('b', 0), ('c', 0)]).letters());
        assert_eq!(even.word.sign(), 1);
    }

    #[test]
    fn odd_square_vanishes() {
        assert!(word(&[('a', 1), ('a', 1)]).normalize().vanishes);
        assert!(!word(&[('a', 1), ('a', 1), ('a', 1)]).normalize().vanishes);
        assert!(!word(&[('a', 0), ('a', 0)]).normalize().vanishes);
    }

    fn arb_word() -> impl Strategy<Value = SignedCyclicWord<u8>> {
        proptest::collection::vec((0u8..3, 0i32..4), 1..=7)
            .prop_map(|v| SignedCyclicWord::new(v.into_iter().map(|(k, d)| Letter::new(k, d)).collect()))
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(w in arb_word()) {
            let once = w.normalize().word;
            let twice = once.normalize().word;
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn full_cycle_has_sign_one(w in arb_word()) {
            prop_assert_eq!(w.rotate_by(w.len()), w);
        }

        #[test]
        fn rotation_invariant_up_to_sign(w in arb_word(), r in 0usize..7) {
            let rotated = w.rotate_by(r % w.len());
            let a = w.normalize();
            let b = rotated.normalize();
            prop_assert_eq!(a.vanishes, b.vanishes);
            prop_assert_eq!(a.word.letters(), b.word.letters());
            if !a.vanishes {
                prop_assert_eq!(a.word.sign(), b.word.sign());
            }
        }
    }
}
