//! Words over a finite alphabet: the free monoid that underlies every
//! product case of the extension.
//!
//! Letters are dense indices `0..k`.  Words are immutable values with
//! structural equality, so they can key sets and maps throughout the
//! crate.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet mismatch: {0}-letter vs {1}-letter alphabet")]
    AlphabetMismatch(u32, u32),
    #[error("letter {letter} out of range for a {size}-letter alphabet")]
    LetterOutOfRange { letter: u32, size: u32 },
    #[error("alphabet needs at least one letter")]
    EmptyAlphabet,
}

/// A finite alphabet of `k` letters, identified by the indices `0..k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    size: u32,
}

impl Alphabet {
    pub fn new(size: u32) -> Result<Self, WordError> {
        if size == 0 {
            return Err(WordError::EmptyAlphabet);
        }
        Ok(Self { size })
    }

    pub fn size(self) -> u32 {
        self.size
    }

    pub fn empty_word(self) -> Word {
        Word {
            alphabet: self,
            letters: Vec::new(),
        }
    }

    /// The one-letter word on `index`.
    pub fn letter(self, index: u32) -> Result<Word, WordError> {
        self.word(&[index])
    }

    pub fn word(self, letters: &[u32]) -> Result<Word, WordError> {
        for &l in letters {
            if l >= self.size {
                return Err(WordError::LetterOutOfRange {
                    letter: l,
                    size: self.size,
                });
            }
        }
        Ok(Word {
            alphabet: self,
            letters: letters.to_vec(),
        })
    }

    /// All words of length at most `maxlen`: shortest first, lexicographic
    /// within a length.
    pub fn words_up_to(self, maxlen: usize) -> Vec<Word> {
        let mut out = vec![self.empty_word()];
        let mut level: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..maxlen {
            let mut next = Vec::with_capacity(level.len() * self.size as usize);
            for stem in &level {
                for l in 0..self.size {
                    let mut v = stem.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().map(|v| Word {
                alphabet: self,
                letters: v.clone(),
            }));
            level = next;
        }
        out
    }
}

/// An element of the free monoid: a finite sequence of letter indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u32>,
}

impl Word {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Result<Word, WordError> {
        if self.alphabet != rhs.alphabet {
            return Err(WordError::AlphabetMismatch(
                self.alphabet.size,
                rhs.alphabet.size,
            ));
        }
        let mut letters = Vec::with_capacity(self.letters.len() + rhs.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&rhs.letters);
        Ok(Word {
            alphabet: self.alphabet,
            letters,
        })
    }

    /// True when some `c` exists with `c·self = longer`.  The empty word
    /// and `longer` itself both qualify.  Words over distinct alphabets
    /// are never suffixes of one another.
    pub fn is_suffix_of(&self, longer: &Word) -> bool {
        self.alphabet == longer.alphabet
            && self.letters.len() <= longer.letters.len()
            && longer.letters[longer.letters.len() - self.letters.len()..] == self.letters[..]
    }

    /// The unique `u` with `self = u·suffix`, when `suffix` is a suffix of
    /// `self`; `None` otherwise.
    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        if !suffix.is_suffix_of(self) {
            return None;
        }
        Some(Word {
            alphabet: self.alphabet,
            letters: self.letters[..self.letters.len() - suffix.letters.len()].to_vec(),
        })
    }

    /// The unique `u` with `self = prefix·u`, when `prefix` is a prefix of
    /// `self`; `None` otherwise.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        if self.alphabet != prefix.alphabet
            || prefix.letters.len() > self.letters.len()
            || self.letters[..prefix.letters.len()] != prefix.letters[..]
        {
            return None;
        }
        Some(Word {
            alphabet: self.alphabet,
            letters: self.letters[prefix.letters.len()..].to_vec(),
        })
    }

    /// Every suffix, including the empty word and the word itself.
    pub fn suffixes(&self) -> BTreeSet<Word> {
        (0..=self.letters.len())
            .map(|i| Word {
                alphabet: self.alphabet,
                letters: self.letters[i..].to_vec(),
            })
            .collect()
    }

    /// Every suffix cut by a nonempty head; empty for the empty word.
    pub fn proper_suffixes(&self) -> BTreeSet<Word> {
        let mut s = self.suffixes();
        s.remove(self);
        s
    }
}

impl fmt::Display for Word {
    /// Bracketed text form: `[ab]`, with letters `a..z` for indices below
    /// 26 and dot-separated decimal indices otherwise; `[]` is the empty
    /// word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use fmt::Write;
        f.write_char('[')?;
        if self.letters.iter().all(|&l| l < 26) {
            for &l in &self.letters {
                f.write_char((b'a' + l as u8) as char)?;
            }
        } else {
            for (i, &l) in self.letters.iter().enumerate() {
                if i > 0 {
                    f.write_char('.')?;
                }
                write!(f, "{l}")?;
            }
        }
        f.write_char(']')
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn w(a: Alphabet, s: &str) -> Word {
        let letters: Vec<u32> = s.bytes().map(|b| (b - b'a') as u32).collect();
        a.word(&letters).unwrap()
    }

    #[test]
    fn concat_examples() {
        let a = k2();
        assert_eq!(a.empty_word().concat(&w(a, "ab")).unwrap(), w(a, "ab"));
        assert_eq!(w(a, "b").concat(&w(a, "a")).unwrap(), w(a, "ba"));
        assert_eq!(w(a, "ab").concat(&w(a, "ab")).unwrap(), w(a, "abab"));
    }

    #[test]
    fn concat_rejects_alphabet_mismatch() {
        let a = k2();
        let b = Alphabet::new(3).unwrap();
        assert_eq!(
            w(a, "a").concat(&w(b, "a")),
            Err(WordError::AlphabetMismatch(2, 3))
        );
    }

    #[test]
    fn suffix_examples() {
        let a = k2();
        assert!(w(a, "a").is_suffix_of(&w(a, "ba")));
        assert!(!w(a, "b").is_suffix_of(&w(a, "ba")));
        assert!(a.empty_word().is_suffix_of(&w(a, "abba")));
        assert!(a.empty_word().is_suffix_of(&a.empty_word()));
    }

    #[test]
    fn strip_suffix_examples() {
        let a = k2();
        assert_eq!(w(a, "ba").strip_suffix(&w(a, "a")), Some(w(a, "b")));
        assert_eq!(w(a, "a").strip_suffix(&w(a, "a")), Some(a.empty_word()));
        assert_eq!(w(a, "a").strip_suffix(&w(a, "b")), None);
    }

    #[test]
    fn strip_prefix_examples() {
        let a = k2();
        assert_eq!(w(a, "ba").strip_prefix(&w(a, "b")), Some(w(a, "a")));
        assert_eq!(w(a, "ba").strip_prefix(&w(a, "a")), None);
        assert_eq!(w(a, "ab").strip_prefix(&a.empty_word()), Some(w(a, "ab")));
    }

    #[test]
    fn suffix_sets() {
        let a = k2();
        let s = w(a, "ab").suffixes();
        assert_eq!(
            s,
            [w(a, "ab"), w(a, "b"), a.empty_word()]
                .into_iter()
                .collect()
        );
        let p = w(a, "ab").proper_suffixes();
        assert_eq!(p, [w(a, "b"), a.empty_word()].into_iter().collect());
        assert_eq!(
            a.empty_word().suffixes(),
            [a.empty_word()].into_iter().collect()
        );
        assert!(a.empty_word().proper_suffixes().is_empty());
    }

    #[test]
    fn enumeration_counts() {
        let a = k2();
        let upto1 = a.words_up_to(1);
        assert_eq!(upto1, vec![a.empty_word(), w(a, "a"), w(a, "b")]);
        assert_eq!(a.words_up_to(2).len(), 7);
        let one = Alphabet::new(1).unwrap();
        assert_eq!(
            one.words_up_to(3),
            vec![one.empty_word(), w(one, "a"), w(one, "aa"), w(one, "aaa")]
        );
    }

    #[test]
    fn display_forms() {
        let a = k2();
        assert_eq!(a.empty_word().to_string(), "[]");
        assert_eq!(w(a, "ab").to_string(), "[ab]");
        let wide = Alphabet::new(30).unwrap();
        assert_eq!(wide.word(&[0, 29]).unwrap().to_string(), "[0.29]");
    }

    #[test]
    fn letter_out_of_range() {
        let a = k2();
        assert_eq!(
            a.word(&[2]),
            Err(WordError::LetterOutOfRange { letter: 2, size: 2 })
        );
    }

    fn arb_word(k: u32, maxlen: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..k, 0..=maxlen)
            .prop_map(move |ls| Alphabet::new(k).unwrap().word(&ls).unwrap())
    }

    proptest! {
        #[test]
        fn concat_is_associative(a in arb_word(2, 5), b in arb_word(2, 5), c in arb_word(2, 5)) {
            let left = a.concat(&b).unwrap().concat(&c).unwrap();
            let right = a.concat(&b.concat(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn empty_word_is_identity(a in arb_word(3, 6)) {
            let e = a.alphabet().empty_word();
            prop_assert_eq!(e.concat(&a).unwrap(), a.clone());
            prop_assert_eq!(a.concat(&e).unwrap(), a.clone());
        }

        #[test]
        fn strip_suffix_matches_is_suffix(a in arb_word(2, 6), b in arb_word(2, 6)) {
            match a.strip_suffix(&b) {
                Some(head) => {
                    prop_assert!(b.is_suffix_of(&a));
                    prop_assert_eq!(head.concat(&b).unwrap(), a);
                }
                None => prop_assert!(!b.is_suffix_of(&a)),
            }
        }

        #[test]
        fn suffix_count_and_split(a in arb_word(3, 6)) {
            let s = a.suffixes();
            prop_assert_eq!(s.len(), a.len() + 1);
            let mut rebuilt = a.proper_suffixes();
            rebuilt.insert(a.clone());
            prop_assert_eq!(s, rebuilt);
        }

        #[test]
        fn mutual_suffixes_coincide(a in arb_word(2, 6), b in arb_word(2, 6)) {
            if a.is_suffix_of(&b) && b.is_suffix_of(&a) {
                prop_assert_eq!(&a, &b);
            }
            if a != b {
                // at most one strict direction
                prop_assert!(
                    !(a.proper_suffixes().contains(&b) && b.proper_suffixes().contains(&a))
                );
            }
        }
    }
}
