//! The polycyclic monoid on `k` generators, with zero, in reduced form.
//!
//! A nonzero element is a pair of words `(up, down)` standing for the
//! fraction `up^{-1}·down`; `(ε, ε)` is the identity.  Products cancel
//! through a shared suffix or collapse to the absorbing zero, which is
//! exactly the presentation `p_i·p_i^{-1} = 1`, `p_i·p_j^{-1} = 0` for
//! `i ≠ j` in reduced form.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::word::{Alphabet, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("zero operand not allowed here")]
    ZeroOperand,
    #[error("generator index {index} out of range for a {size}-letter alphabet")]
    GeneratorOutOfRange { index: u32, size: u32 },
}

/// Reduced nonzero element `up^{-1}·down`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PPair {
    up: Word,
    down: Word,
}

impl PPair {
    pub fn new(up: Word, down: Word) -> Result<Self, WordError> {
        if up.alphabet() != down.alphabet() {
            return Err(WordError::AlphabetMismatch(
                up.alphabet().size(),
                down.alphabet().size(),
            ));
        }
        Ok(Self { up, down })
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self {
            up: alphabet.empty_word(),
            down: alphabet.empty_word(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.up.alphabet()
    }

    pub fn up(&self) -> &Word {
        &self.up
    }

    pub fn down(&self) -> &Word {
        &self.down
    }

    pub fn is_one(&self) -> bool {
        self.up.is_empty() && self.down.is_empty()
    }

    /// `(up^{-1}·down)^{-1} = down^{-1}·up`.
    pub fn inverse(&self) -> PPair {
        PPair {
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.up == self.down
    }

    pub fn mul(&self, rhs: &PPair) -> Result<PElem, WordError> {
        if self.alphabet() != rhs.alphabet() {
            return Err(WordError::AlphabetMismatch(
                self.alphabet().size(),
                rhs.alphabet().size(),
            ));
        }
        Ok(mul_pairs(self, rhs))
    }
}

impl fmt::Display for PPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            write!(f, "{}^-1{}", self.up, self.down)
        }
    }
}

fn mul_pairs(x: &PPair, y: &PPair) -> PElem {
    if let Some(head) = y.up.strip_suffix(&x.down) {
        // y.up = head · x.down: cancel x.down, carry head up.
        let up = head.concat(&x.up).expect("same alphabet");
        PElem::Pair(PPair {
            up,
            down: y.down.clone(),
        })
    } else if let Some(head) = x.down.strip_suffix(&y.up) {
        // x.down = head · y.up: cancel y.up, carry head down.
        let down = head.concat(&y.down).expect("same alphabet");
        PElem::Pair(PPair {
            up: x.up.clone(),
            down,
        })
    } else {
        PElem::Zero(x.alphabet())
    }
}

/// An element of the polycyclic monoid: zero or a reduced pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PElem {
    Zero(Alphabet),
    Pair(PPair),
}

impl PElem {
    pub fn zero(alphabet: Alphabet) -> Self {
        PElem::Zero(alphabet)
    }

    pub fn one(alphabet: Alphabet) -> Self {
        PElem::Pair(PPair::one(alphabet))
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            PElem::Zero(a) => *a,
            PElem::Pair(p) => p.alphabet(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PElem::Zero(_))
    }

    pub fn as_pair(&self) -> Option<&PPair> {
        match self {
            PElem::Zero(_) => None,
            PElem::Pair(p) => Some(p),
        }
    }

    pub fn mul(&self, rhs: &PElem) -> Result<PElem, WordError> {
        if self.alphabet() != rhs.alphabet() {
            return Err(WordError::AlphabetMismatch(
                self.alphabet().size(),
                rhs.alphabet().size(),
            ));
        }
        Ok(match (self, rhs) {
            (PElem::Zero(a), _) | (_, PElem::Zero(a)) => PElem::Zero(*a),
            (PElem::Pair(x), PElem::Pair(y)) => mul_pairs(x, y),
        })
    }

    /// Zero maps to zero; a pair to its swapped pair.  This is the unique
    /// inverse: `x·x^{-1}·x = x` and `x^{-1}·x·x^{-1} = x^{-1}`.
    pub fn inverse(&self) -> PElem {
        match self {
            PElem::Zero(a) => PElem::Zero(*a),
            PElem::Pair(p) => PElem::Pair(p.inverse()),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            PElem::Zero(_) => true,
            PElem::Pair(p) => p.is_idempotent(),
        }
    }
}

impl fmt::Display for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PElem::Zero(_) => f.write_str("0"),
            PElem::Pair(p) => write!(f, "{p}"),
        }
    }
}

/// All `x` with `lhs·x = rhs`, for nonzero `lhs`, `rhs`.
///
/// The set is finite: at most one solution cancels all of `lhs.down` and
/// more, plus one per factorization of `lhs.down`, and those overlap when
/// both apply, so the size is bounded by `|lhs.down| + 1`.
pub fn solve_right(lhs: &PElem, rhs: &PElem) -> Result<BTreeSet<PElem>, PolyError> {
    if lhs.alphabet() != rhs.alphabet() {
        return Err(
            WordError::AlphabetMismatch(lhs.alphabet().size(), rhs.alphabet().size()).into(),
        );
    }
    let (alpha, beta) = match (lhs.as_pair(), rhs.as_pair()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(PolyError::ZeroOperand),
    };
    let mut out = BTreeSet::new();
    // Solutions whose up-word swallows alpha.down whole: the product's
    // up-word is head·alpha.up, so head is pinned by beta.up.
    if let Some(head) = beta.up.strip_suffix(&alpha.up) {
        let up = head.concat(&alpha.down).expect("same alphabet");
        out.insert(PElem::Pair(PPair {
            up,
            down: beta.down.clone(),
        }));
    }
    // Solutions cancelled inside alpha.down: one candidate per split
    // alpha.down = head·tail, valid when head heads beta.down.
    if alpha.up == beta.up {
        for tail in alpha.down.suffixes() {
            let head = alpha.down.strip_suffix(&tail).expect("tail is a suffix");
            if let Some(rest) = beta.down.strip_prefix(&head) {
                out.insert(PElem::Pair(PPair {
                    up: tail,
                    down: rest,
                }));
            }
        }
    }
    Ok(out)
}

/// All `x` with `x·lhs = rhs`, for nonzero `lhs`, `rhs`.  Solved through
/// the inversion anti-isomorphism: `x·lhs = rhs` iff
/// `lhs^{-1}·x^{-1} = rhs^{-1}`.
pub fn solve_left(lhs: &PElem, rhs: &PElem) -> Result<BTreeSet<PElem>, PolyError> {
    let mirrored = solve_right(&lhs.inverse(), &rhs.inverse())?;
    Ok(mirrored.iter().map(PElem::inverse).collect())
}

/// A generator token: `Gen(i)` is the generator `p_i = []^-1[letter i]`,
/// `Inv(i)` its inverse `q_i = [letter i]^-1[]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenToken {
    Gen(u32),
    Inv(u32),
}

/// Left-to-right product of generator tokens, reduced to a normal form or
/// zero.  The empty stream yields the identity.
pub fn eval_generators(alphabet: Alphabet, tokens: &[GenToken]) -> Result<PElem, PolyError> {
    let mut acc = PElem::one(alphabet);
    for tok in tokens {
        let index = match *tok {
            GenToken::Gen(i) | GenToken::Inv(i) => i,
        };
        if index >= alphabet.size() {
            return Err(PolyError::GeneratorOutOfRange {
                index,
                size: alphabet.size(),
            });
        }
        let factor = match *tok {
            GenToken::Gen(i) => PPair::new(alphabet.empty_word(), alphabet.letter(i)?)?,
            GenToken::Inv(i) => PPair::new(alphabet.letter(i)?, alphabet.empty_word())?,
        };
        acc = acc.mul(&PElem::Pair(factor))?;
    }
    Ok(acc)
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

    fn pp(a: Alphabet, up: &str, down: &str) -> PPair {
        PPair::new(w(a, up), w(a, down)).unwrap()
    }

    fn pe(a: Alphabet, up: &str, down: &str) -> PElem {
        PElem::Pair(pp(a, up, down))
    }

    #[test]
    fn defining_relations() {
        let a = k2();
        // p_a · p_a^{-1} = 1
        assert_eq!(pe(a, "", "a").mul(&pe(a, "a", "")).unwrap(), PElem::one(a));
        // p_a · p_b^{-1} = 0
        assert_eq!(pe(a, "", "a").mul(&pe(a, "b", "")).unwrap(), PElem::zero(a));
    }

    #[test]
    fn mul_carries_the_head_up() {
        let a = k2();
        assert_eq!(
            pe(a, "a", "").mul(&pe(a, "b", "b")).unwrap(),
            pe(a, "ba", "b")
        );
    }

    #[test]
    fn inverse_examples() {
        let a = k2();
        assert_eq!(pe(a, "a", "b").inverse(), pe(a, "b", "a"));
        assert_eq!(PElem::one(a).inverse(), PElem::one(a));
        assert_eq!(PElem::zero(a).inverse(), PElem::zero(a));
    }

    #[test]
    fn idempotent_examples() {
        let a = k2();
        assert!(pe(a, "ab", "ab").is_idempotent());
        assert!(!pe(a, "a", "b").is_idempotent());
        assert!(PElem::zero(a).is_idempotent());
    }

    #[test]
    fn generator_evaluation() {
        let a = k2();
        let run = |toks: &[GenToken]| eval_generators(a, toks).unwrap();
        assert_eq!(run(&[GenToken::Gen(0), GenToken::Inv(0)]), PElem::one(a));
        assert_eq!(run(&[GenToken::Gen(0), GenToken::Inv(1)]), PElem::zero(a));
        assert_eq!(run(&[GenToken::Inv(0), GenToken::Gen(1)]), pe(a, "a", "b"));
        assert_eq!(run(&[]), PElem::one(a));
        assert_eq!(
            eval_generators(a, &[GenToken::Gen(2)]),
            Err(PolyError::GeneratorOutOfRange { index: 2, size: 2 })
        );
    }

    #[test]
    fn solve_right_examples() {
        let a = k2();
        let sols = solve_right(&pe(a, "", "a"), &pe(a, "", "ab")).unwrap();
        assert_eq!(
            sols,
            [pe(a, "a", "ab"), pe(a, "", "b")].into_iter().collect()
        );

        let ident = solve_right(&PElem::one(a), &PElem::one(a)).unwrap();
        assert_eq!(ident, [PElem::one(a)].into_iter().collect());

        // p_a · x = p_b has the single solution q_a·p_b.
        let cross = solve_right(&pe(a, "", "a"), &pe(a, "", "b")).unwrap();
        assert_eq!(cross, [pe(a, "a", "b")].into_iter().collect());

        // Incompatible up-words leave nothing.
        let none = solve_right(&pe(a, "a", ""), &pe(a, "b", "")).unwrap();
        assert!(none.is_empty());

        assert_eq!(
            solve_right(&PElem::zero(a), &PElem::one(a)),
            Err(PolyError::ZeroOperand)
        );
    }

    #[test]
    fn solve_left_examples() {
        let a = k2();
        // x · p_a = p_b has no solution.
        let none = solve_left(&pe(a, "", "a"), &pe(a, "", "b")).unwrap();
        assert!(none.is_empty());

        let ident = solve_left(&PElem::one(a), &PElem::one(a)).unwrap();
        assert_eq!(ident, [PElem::one(a)].into_iter().collect());
    }

    fn fragment(a: Alphabet, maxlen: usize) -> Vec<PElem> {
        let words = a.words_up_to(maxlen);
        let mut out = vec![PElem::zero(a)];
        for up in &words {
            for down in &words {
                out.push(PElem::Pair(PPair::new(up.clone(), down.clone()).unwrap()));
            }
        }
        out
    }

    #[test]
    fn exhaustive_associativity_on_short_words() {
        let a = k2();
        let elems = fragment(a, 2);
        assert_eq!(elems.len(), 50); // zero + 49 pairs
        let mut triples = 0u64;
        for x in &elems {
            for y in &elems {
                let xy = x.mul(y).unwrap();
                for z in &elems {
                    let left = xy.mul(z).unwrap();
                    let right = x.mul(&y.mul(z).unwrap()).unwrap();
                    assert_eq!(left, right, "({x})({y})({z})");
                    triples += 1;
                }
            }
        }
        assert_eq!(triples, 125_000);
    }

    #[test]
    fn one_letter_alphabet_follows_the_min_formula() {
        let a = Alphabet::new(1).unwrap();
        let pow = |n: usize| {
            let mut v = a.empty_word();
            for _ in 0..n {
                v = v.concat(&a.letter(0).unwrap()).unwrap();
            }
            v
        };
        for i in 0..=4usize {
            for l in 0..=4usize {
                for m in 0..=4usize {
                    for n in 0..=4usize {
                        let x = PElem::Pair(PPair::new(pow(i), pow(l)).unwrap());
                        let y = PElem::Pair(PPair::new(pow(m), pow(n)).unwrap());
                        let got = x.mul(&y).unwrap();
                        let c = l.min(m);
                        let want = PElem::Pair(PPair::new(pow(i + m - c), pow(l + n - c)).unwrap());
                        assert_eq!(got, want, "i={i} l={l} m={m} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_are_unique_on_a_bounded_fragment() {
        let a = k2();
        let elems = fragment(a, 2);
        for x in &elems {
            let mut found = Vec::new();
            for y in &elems {
                let xyx = x.mul(y).unwrap().mul(x).unwrap();
                let yxy = y.mul(x).unwrap().mul(y).unwrap();
                if &xyx == x && &yxy == y {
                    found.push(y.clone());
                }
            }
            assert_eq!(found, vec![x.inverse()], "inverses of {x}");
        }
    }

    #[test]
    fn solvers_match_brute_force_on_a_bounded_fragment() {
        let a = k2();
        let small = fragment(a, 2);
        let search = fragment(a, 4);
        for alpha in small.iter().filter(|e| !e.is_zero()) {
            for beta in small.iter().filter(|e| !e.is_zero()) {
                let right = solve_right(alpha, beta).unwrap();
                let brute_right: BTreeSet<PElem> = search
                    .iter()
                    .filter(|x| &alpha.mul(x).unwrap() == beta)
                    .filter(|x| !x.is_zero())
                    .cloned()
                    .collect();
                assert_eq!(right, brute_right, "{alpha} · x = {beta}");
                assert!(right.len() <= alpha.as_pair().unwrap().down().len() + 1);

                let left = solve_left(alpha, beta).unwrap();
                let brute_left: BTreeSet<PElem> = search
                    .iter()
                    .filter(|x| &x.mul(alpha).unwrap() == beta)
                    .filter(|x| !x.is_zero())
                    .cloned()
                    .collect();
                assert_eq!(left, brute_left, "x · {alpha} = {beta}");
            }
        }
    }

    #[test]
    fn idempotents_commute() {
        let a = k2();
        for u in a.words_up_to(3) {
            for v in a.words_up_to(3) {
                let x = PElem::Pair(PPair::new(u.clone(), u.clone()).unwrap());
                let y = PElem::Pair(PPair::new(v.clone(), v.clone()).unwrap());
                assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            }
        }
    }

    fn arb_pelem(k: u32, maxlen: usize) -> impl Strategy<Value = PElem> {
        let word = prop::collection::vec(0..k, 0..=maxlen);
        (word.clone(), word, 0..20u32).prop_map(move |(u, v, z)| {
            let a = Alphabet::new(k).unwrap();
            if z == 0 {
                PElem::zero(a)
            } else {
                PElem::Pair(PPair::new(a.word(&u).unwrap(), a.word(&v).unwrap()).unwrap())
            }
        })
    }

    proptest! {
        #[test]
        fn random_triples_associate(
            x in arb_pelem(3, 4),
            y in arb_pelem(3, 4),
            z in arb_pelem(3, 4),
        ) {
            let left = x.mul(&y).unwrap().mul(&z).unwrap();
            let right = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inversion_is_an_involution_and_an_inverse(x in arb_pelem(3, 4)) {
            prop_assert_eq!(x.inverse().inverse(), x.clone());
            let xi = x.inverse();
            prop_assert_eq!(x.mul(&xi).unwrap().mul(&x).unwrap(), x.clone());
            prop_assert_eq!(xi.mul(&x).unwrap().mul(&xi).unwrap(), xi);
        }
    }
}
