//! The lambda-polycyclic Bruck-Reilly extension of a finite monoid.
//!
//! Elements are an absorbing zero plus pairs `(s, up^{-1}·down)` of a
//! monoid element and a nonzero polycyclic pair.  The product twists the
//! monoid coordinate through the iterated homomorphism while the
//! polycyclic coordinates cancel:
//!
//! - if `y.up = u·x.down` the result is
//!   `(theta^{|u|}(s)·t, (u·x.up)^{-1}·y.down)`;
//! - if `x.down = v·y.up` the result is
//!   `(s·theta^{|v|}(t), x.up^{-1}·(v·y.down))`;
//! - otherwise the product is zero.
//!
//! Alongside the product, this module carries one operation per
//! structural characterization: idempotence, inverses, Green's
//! relations, the zero-simplicity witness, the quotient onto the
//! polycyclic monoid, center and unit tests, division solvers, the two
//! embeddings, the conjugation bijection pair, and the slice metric.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::monoid::{FiniteMonoid, GreenRel, MonoidError, Theta};
use crate::polycyclic::{self, PElem, PPair, PolyError};
use crate::word::{Alphabet, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BrxError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("element does not belong to this context: {0}")]
    ContextMismatch(String),
    #[error("zero operand not allowed here")]
    ZeroOperand,
    #[error("element s{0} is not idempotent")]
    NotIdempotent(usize),
    #[error("base distance d(s{x}, s{y}) = {value} outside [0, 1]")]
    MetricOutOfBounds { x: usize, y: usize, value: f64 },
    #[error("base metric axiom fails: {0}")]
    MetricInvalid(String),
}

/// An extension element: the zero, or a monoid index paired with a
/// nonzero polycyclic pair.  The polycyclic zero is never stored; it is
/// identified with the extension zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BrxElem {
    Zero,
    Pair { s: usize, p: PPair },
}

impl BrxElem {
    pub fn pair(s: usize, p: PPair) -> Self {
        BrxElem::Pair { s, p }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BrxElem::Zero)
    }

    pub fn parts(&self) -> Option<(usize, &PPair)> {
        match self {
            BrxElem::Zero => None,
            BrxElem::Pair { s, p } => Some((*s, p)),
        }
    }
}

impl fmt::Display for BrxElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrxElem::Zero => f.write_str("0"),
            BrxElem::Pair { s, p } => write!(f, "(s{s},{p})"),
        }
    }
}

/// The extension context: a validated monoid, a homomorphism into its
/// unit group, and the alphabet.  Immutable; every operation is a pure
/// function of the context and its arguments.
#[derive(Debug, Clone)]
pub struct BrxContext {
    monoid: FiniteMonoid,
    theta: Theta,
    alphabet: Alphabet,
    label: String,
}

impl BrxContext {
    pub fn new(monoid: FiniteMonoid, theta: Theta, alphabet: Alphabet) -> Result<Self, BrxError> {
        if theta.len() != monoid.size() {
            return Err(MonoidError::ThetaLength {
                len: theta.len(),
                size: monoid.size(),
            }
            .into());
        }
        let label = format!("{}/{}/k{}", monoid.name(), theta.name(), alphabet.size());
        Ok(Self {
            monoid,
            theta,
            alphabet,
            label,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn theta(&self) -> &Theta {
        &self.theta
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn zero(&self) -> BrxElem {
        BrxElem::Zero
    }

    pub fn one(&self) -> BrxElem {
        BrxElem::pair(self.monoid.identity(), PPair::one(self.alphabet))
    }

    pub fn check(&self, x: &BrxElem) -> Result<(), BrxError> {
        if let BrxElem::Pair { s, p } = x {
            if *s >= self.monoid.size() {
                return Err(BrxError::ContextMismatch(format!(
                    "s{s} exceeds monoid size {}",
                    self.monoid.size()
                )));
            }
            if p.alphabet() != self.alphabet {
                return Err(BrxError::ContextMismatch(format!(
                    "{}-letter word in a {}-letter context",
                    p.alphabet().size(),
                    self.alphabet.size()
                )));
            }
        }
        Ok(())
    }

    pub fn mul(&self, x: &BrxElem, y: &BrxElem) -> Result<BrxElem, BrxError> {
        self.check(x)?;
        self.check(y)?;
        let ((s, xp), (t, yp)) = match (x.parts(), y.parts()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(BrxElem::Zero),
        };
        if let Some(head) = yp.up().strip_suffix(xp.down()) {
            let elem = self.monoid.mul(self.theta.pow(head.len(), s), t);
            let up = head.concat(xp.up())?;
            Ok(BrxElem::pair(elem, PPair::new(up, yp.down().clone())?))
        } else if let Some(head) = xp.down().strip_suffix(yp.up()) {
            let elem = self.monoid.mul(s, self.theta.pow(head.len(), t));
            let down = head.concat(yp.down())?;
            Ok(BrxElem::pair(elem, PPair::new(xp.up().clone(), down)?))
        } else {
            Ok(BrxElem::Zero)
        }
    }

    /// Zero, and the pairs with an idempotent monoid part over a diagonal
    /// polycyclic pair `w^{-1}·w`.
    pub fn is_idempotent(&self, x: &BrxElem) -> bool {
        match x {
            BrxElem::Zero => true,
            BrxElem::Pair { s, p } => self.monoid.is_idempotent(*s) && p.is_idempotent(),
        }
    }

    /// The inverse of `(s, up^{-1}·down)` is `(s', down^{-1}·up)` for an
    /// inverse `s'` of `s`; ties broken by least index, `None` when `s`
    /// has no inverse.  Zero inverts to zero.
    pub fn inverse_of(&self, x: &BrxElem) -> Option<BrxElem> {
        match x {
            BrxElem::Zero => Some(BrxElem::Zero),
            BrxElem::Pair { s, p } => self
                .monoid
                .inverses_of(*s)
                .first()
                .map(|&t| BrxElem::pair(t, p.inverse())),
        }
    }

    /// Green's relations.  Zero is related only to itself; nonzero pairs
    /// reduce to the monoid relation plus word equalities (the shared
    /// down-word for L, the shared up-word for R, both for H, nothing for
    /// D), and any two nonzero elements are J-related.
    pub fn green(&self, rel: GreenRel, x: &BrxElem, y: &BrxElem) -> bool {
        let ((s, xp), (t, yp)) = match (x.parts(), y.parts()) {
            (None, None) => return true,
            (Some(a), Some(b)) => (a, b),
            _ => return false,
        };
        match rel {
            GreenRel::L => self.monoid.green(GreenRel::L, s, t) && xp.down() == yp.down(),
            GreenRel::R => self.monoid.green(GreenRel::R, s, t) && xp.up() == yp.up(),
            GreenRel::H => self.green(GreenRel::L, x, y) && self.green(GreenRel::R, x, y),
            GreenRel::D => self.monoid.green(GreenRel::D, s, t),
            GreenRel::J => true,
        }
    }

    /// The pair `(x, y)` with `x·source·y = target`, for nonzero
    /// arguments: the two-sided translation that exhibits zero-simplicity.
    /// The connector is the fixed one-letter word on letter 0, so the
    /// output is deterministic; its monoid part inverts inside the unit
    /// group, where the homomorphism image always lives.
    pub fn zero_simple_witness(
        &self,
        target: &BrxElem,
        source: &BrxElem,
    ) -> Result<(BrxElem, BrxElem), BrxError> {
        self.check(target)?;
        self.check(source)?;
        let (s, ap) = target.parts().ok_or(BrxError::ZeroOperand)?;
        let (t, bp) = source.parts().ok_or(BrxError::ZeroOperand)?;
        let connector = self.alphabet.letter(0)?;
        let twisted = self.theta.pow(connector.len(), t);
        let untwist = self
            .monoid
            .unit_inverse(twisted)
            .expect("homomorphism image is a unit");
        let x = BrxElem::pair(
            untwist,
            PPair::new(ap.up().clone(), connector.concat(bp.up())?)?,
        );
        let y = BrxElem::pair(
            s,
            PPair::new(connector.concat(bp.down())?, ap.down().clone())?,
        );
        Ok((x, y))
    }

    /// The canonical homomorphism onto the polycyclic monoid: forget the
    /// monoid coordinate, send zero to zero.
    pub fn quotient_to_p(&self, x: &BrxElem) -> PElem {
        match x {
            BrxElem::Zero => PElem::zero(self.alphabet),
            BrxElem::Pair { p, .. } => PElem::Pair(p.clone()),
        }
    }

    /// Zero, and the pairs `(s, 1)` with `s` central and fixed by the
    /// homomorphism.
    pub fn is_in_center(&self, x: &BrxElem) -> bool {
        match x {
            BrxElem::Zero => true,
            BrxElem::Pair { s, p } => {
                p.is_one() && self.monoid.center().contains(s) && self.theta.apply(*s) == *s
            }
        }
    }

    /// The pairs `(s, 1)` with `s` a unit; zero is never a unit.
    pub fn is_unit(&self, x: &BrxElem) -> bool {
        match x {
            BrxElem::Zero => false,
            BrxElem::Pair { s, p } => p.is_one() && self.monoid.unit_inverse(*s).is_some(),
        }
    }

    /// The extension is an inverse 0-E-unitary semigroup exactly when the
    /// base monoid is inverse and E-unitary and the homomorphism fiber of
    /// the identity is the idempotent set.
    pub fn is_0_e_unitary(&self) -> bool {
        if !self.monoid.is_inverse() {
            return false;
        }
        if self.monoid.is_e_unitary() != Ok(true) {
            return false;
        }
        self.theta.fiber(self.monoid.identity()) == self.monoid.idempotents()
    }

    /// All `x` with `a·x = b`, for nonzero `a`, `b`: the polycyclic
    /// solver pins the possible pairs, then each pair's cancellation
    /// branch turns the monoid coordinate into a division-or-fiber
    /// problem, which finiteness makes enumerable.
    pub fn solve_right(&self, a: &BrxElem, b: &BrxElem) -> Result<BTreeSet<BrxElem>, BrxError> {
        self.check(a)?;
        self.check(b)?;
        let (s, ap) = a.parts().ok_or(BrxError::ZeroOperand)?;
        let (t, bp) = b.parts().ok_or(BrxError::ZeroOperand)?;
        let n = self.monoid.size();
        let mut out = BTreeSet::new();
        let alpha = PElem::Pair(ap.clone());
        let beta = PElem::Pair(bp.clone());
        for candidate in polycyclic::solve_right(&alpha, &beta)? {
            let cp = candidate.as_pair().expect("solutions are nonzero");
            if let Some(head) = cp.up().strip_suffix(ap.down()) {
                // Branch with theta on the left coordinate.
                let lhs = self.theta.pow(head.len(), s);
                for x in 0..n {
                    if self.monoid.mul(lhs, x) == t {
                        out.insert(BrxElem::pair(x, cp.clone()));
                    }
                }
            } else {
                let head = ap
                    .down()
                    .strip_suffix(cp.up())
                    .expect("polycyclic solutions cancel one way");
                for x in 0..n {
                    if self.monoid.mul(s, self.theta.pow(head.len(), x)) == t {
                        out.insert(BrxElem::pair(x, cp.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// All `x` with `x·a = b`, for nonzero `a`, `b`.
    pub fn solve_left(&self, a: &BrxElem, b: &BrxElem) -> Result<BTreeSet<BrxElem>, BrxError> {
        self.check(a)?;
        self.check(b)?;
        let (s, ap) = a.parts().ok_or(BrxError::ZeroOperand)?;
        let (t, bp) = b.parts().ok_or(BrxError::ZeroOperand)?;
        let n = self.monoid.size();
        let mut out = BTreeSet::new();
        let alpha = PElem::Pair(ap.clone());
        let beta = PElem::Pair(bp.clone());
        for candidate in polycyclic::solve_left(&alpha, &beta)? {
            let cp = candidate.as_pair().expect("solutions are nonzero");
            if let Some(head) = ap.up().strip_suffix(cp.down()) {
                // theta lands on the unknown coordinate.
                for x in 0..n {
                    if self.monoid.mul(self.theta.pow(head.len(), x), s) == t {
                        out.insert(BrxElem::pair(x, cp.clone()));
                    }
                }
            } else {
                let head = cp
                    .down()
                    .strip_suffix(ap.up())
                    .expect("polycyclic solutions cancel one way");
                let rhs = self.theta.pow(head.len(), s);
                for x in 0..n {
                    if self.monoid.mul(x, rhs) == t {
                        out.insert(BrxElem::pair(x, cp.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The monoid embedding onto the slice over `base^{-1}·base`.
    pub fn embed_monoid(&self, base: &Word, s: usize) -> Result<BrxElem, BrxError> {
        if s >= self.monoid.size() {
            return Err(MonoidError::ElementOutOfRange {
                index: s,
                size: self.monoid.size(),
            }
            .into());
        }
        let x = BrxElem::pair(s, PPair::new(base.clone(), base.clone())?);
        self.check(&x)?;
        Ok(x)
    }

    /// The polycyclic embedding over an idempotent `e`: pairs map to
    /// `(e, p)`, the polycyclic zero to the extension zero.  A
    /// non-idempotent anchor is rejected, since its copy would not even
    /// be closed under the product.
    pub fn embed_polycyclic(&self, e: usize, p: &PElem) -> Result<BrxElem, BrxError> {
        if e >= self.monoid.size() {
            return Err(MonoidError::ElementOutOfRange {
                index: e,
                size: self.monoid.size(),
            }
            .into());
        }
        if !self.monoid.is_idempotent(e) {
            return Err(BrxError::NotIdempotent(e));
        }
        let x = match p {
            PElem::Zero(_) => BrxElem::Zero,
            PElem::Pair(pair) => BrxElem::pair(e, pair.clone()),
        };
        self.check(&x)?;
        Ok(x)
    }

    /// The translation `x ↦ (1, u^{-1}·ε)·x·(1, ε^{-1}·v)`, a bijection of
    /// the whole extension onto the sub-copy of elements whose up-word
    /// ends in `u` and whose down-word ends in `v`.
    pub fn conjugate_embed(&self, u: &Word, v: &Word, x: &BrxElem) -> Result<BrxElem, BrxError> {
        let one = self.monoid.identity();
        let left = BrxElem::pair(one, PPair::new(u.clone(), self.alphabet.empty_word())?);
        let right = BrxElem::pair(one, PPair::new(self.alphabet.empty_word(), v.clone())?);
        let mid = self.mul(&left, x)?;
        self.mul(&mid, &right)
    }

    /// The inverse translation `y ↦ (1, ε^{-1}·u)·y·(1, v^{-1}·ε)`;
    /// composing after [`Self::conjugate_embed`] is the identity.
    pub fn conjugate_retract(&self, u: &Word, v: &Word, y: &BrxElem) -> Result<BrxElem, BrxError> {
        let one = self.monoid.identity();
        let left = BrxElem::pair(one, PPair::new(self.alphabet.empty_word(), u.clone())?);
        let right = BrxElem::pair(one, PPair::new(v.clone(), self.alphabet.empty_word())?);
        let mid = self.mul(&left, y)?;
        self.mul(&mid, &right)
    }

    /// Zero plus every pair whose two words are bounded by `maxlen`.
    /// Size `n·W(maxlen)^2 + 1`, deterministic order.
    pub fn fragment(&self, maxlen: usize) -> Fragment {
        let words = self.alphabet.words_up_to(maxlen);
        let mut elems = Vec::with_capacity(self.monoid.size() * words.len() * words.len() + 1);
        elems.push(BrxElem::Zero);
        for s in 0..self.monoid.size() {
            for up in &words {
                for down in &words {
                    elems.push(BrxElem::pair(
                        s,
                        PPair::new(up.clone(), down.clone()).expect("same alphabet"),
                    ));
                }
            }
        }
        Fragment { maxlen, elems }
    }
}

/// A materialized finite test universe: zero plus all pairs with both
/// words bounded in length.
#[derive(Debug, Clone)]
pub struct Fragment {
    maxlen: usize,
    elems: Vec<BrxElem>,
}

impl Fragment {
    pub fn maxlen(&self) -> usize {
        self.maxlen
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[BrxElem] {
        &self.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BrxElem> {
        self.elems.iter()
    }
}

impl<'a> IntoIterator for &'a Fragment {
    type Item = &'a BrxElem;
    type IntoIter = std::slice::Iter<'a, BrxElem>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// The extension of a base metric on the monoid: distance within a slice
/// is the base distance, everything else is at distance one.  The base
/// metric must stay within `[0, 1]`, otherwise the cross-slice triangle
/// inequality would fail; callers truncate first.
#[derive(Debug, Clone)]
pub struct SliceMetric {
    size: usize,
    table: Vec<f64>,
}

impl SliceMetric {
    pub fn new(monoid: &FiniteMonoid, base: Vec<Vec<f64>>) -> Result<Self, BrxError> {
        let n = monoid.size();
        if base.len() != n || base.iter().any(|row| row.len() != n) {
            return Err(BrxError::MetricInvalid(format!(
                "base table must be {n}x{n}"
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &base {
            table.extend_from_slice(row);
        }
        let at = |x: usize, y: usize| table[x * n + y];
        for x in 0..n {
            if at(x, x) != 0.0 {
                return Err(BrxError::MetricInvalid(format!("d(s{x}, s{x}) must be 0")));
            }
            for y in 0..n {
                let v = at(x, y);
                if !(0.0..=1.0).contains(&v) {
                    return Err(BrxError::MetricOutOfBounds { x, y, value: v });
                }
                if x != y && v == 0.0 {
                    return Err(BrxError::MetricInvalid(format!(
                        "d(s{x}, s{y}) must be positive"
                    )));
                }
                if at(x, y) != at(y, x) {
                    return Err(BrxError::MetricInvalid(format!(
                        "d(s{x}, s{y}) != d(s{y}, s{x})"
                    )));
                }
                for z in 0..n {
                    if at(x, z) > at(x, y) + at(y, z) + 1e-12 {
                        return Err(BrxError::MetricInvalid(format!(
                            "triangle fails at (s{x}, s{y}, s{z})"
                        )));
                    }
                }
            }
        }
        Ok(Self { size: n, table })
    }

    /// The 0/1 metric on the monoid.
    pub fn discrete(monoid: &FiniteMonoid) -> Self {
        let n = monoid.size();
        let base = (0..n)
            .map(|x| (0..n).map(|y| if x == y { 0.0 } else { 1.0 }).collect())
            .collect();
        Self::new(monoid, base).expect("discrete metric is admissible")
    }

    pub fn base(&self, x: usize, y: usize) -> f64 {
        self.table[x * self.size + y]
    }

    pub fn distance(&self, x: &BrxElem, y: &BrxElem) -> f64 {
        if x == y {
            return 0.0;
        }
        match (x, y) {
            (BrxElem::Pair { s, p }, BrxElem::Pair { s: t, p: q }) if p == q => self.base(*s, *t),
            _ => 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid;

    fn w(a: Alphabet, s: &str) -> Word {
        let letters: Vec<u32> = s.bytes().map(|b| (b - b'a') as u32).collect();
        a.word(&letters).unwrap()
    }

    fn el(ctx: &BrxContext, s: usize, up: &str, down: &str) -> BrxElem {
        let a = ctx.alphabet();
        BrxElem::pair(s, PPair::new(w(a, up), w(a, down)).unwrap())
    }

    fn c2_id() -> BrxContext {
        let m = monoid::builtin("C2").unwrap();
        let theta = Theta::identity(&m).unwrap();
        BrxContext::new(m, theta, Alphabet::new(2).unwrap()).unwrap()
    }

    fn c2_one() -> BrxContext {
        let m = monoid::builtin("C2").unwrap();
        let theta = Theta::constant_identity(&m);
        BrxContext::new(m, theta, Alphabet::new(2).unwrap()).unwrap()
    }

    #[test]
    fn product_examples() {
        let ctx = c2_id();
        // (g, 1) · (g, [a]^-1[]) twists g through theta once.
        let got = ctx
            .mul(&el(&ctx, 1, "", ""), &el(&ctx, 1, "a", ""))
            .unwrap();
        assert_eq!(got, el(&ctx, 0, "a", ""));

        let zero = ctx
            .mul(&el(&ctx, 1, "", "a"), &el(&ctx, 1, "b", ""))
            .unwrap();
        assert_eq!(zero, BrxElem::Zero);
    }

    #[test]
    fn identity_law() {
        let ctx = c2_id();
        let one = ctx.one();
        for x in ctx.fragment(2).iter() {
            assert_eq!(&ctx.mul(&one, x).unwrap(), x);
            assert_eq!(&ctx.mul(x, &one).unwrap(), x);
        }
    }

    #[test]
    fn zero_absorbs() {
        let ctx = c2_id();
        let x = el(&ctx, 1, "a", "b");
        assert_eq!(ctx.mul(&BrxElem::Zero, &x).unwrap(), BrxElem::Zero);
        assert_eq!(ctx.mul(&x, &BrxElem::Zero).unwrap(), BrxElem::Zero);
    }

    #[test]
    fn context_mismatch_is_reported() {
        let ctx = c2_id();
        let foreign = BrxElem::pair(0, PPair::one(Alphabet::new(3).unwrap()));
        assert!(matches!(
            ctx.mul(&foreign, &ctx.one()),
            Err(BrxError::ContextMismatch(_))
        ));
        let big = BrxElem::pair(9, PPair::one(ctx.alphabet()));
        assert!(matches!(
            ctx.mul(&big, &ctx.one()),
            Err(BrxError::ContextMismatch(_))
        ));
    }

    #[test]
    fn idempotent_examples() {
        let ctx = c2_id();
        assert!(ctx.is_idempotent(&el(&ctx, 0, "ab", "ab")));
        assert!(!ctx.is_idempotent(&el(&ctx, 1, "a", "a")));
        assert!(!ctx.is_idempotent(&el(&ctx, 0, "a", "b")));
        assert!(ctx.is_idempotent(&BrxElem::Zero));
    }

    #[test]
    fn inverse_examples() {
        let ctx = c2_id();
        assert_eq!(
            ctx.inverse_of(&el(&ctx, 1, "a", "b")),
            Some(el(&ctx, 1, "b", "a"))
        );
        assert_eq!(ctx.inverse_of(&BrxElem::Zero), Some(BrxElem::Zero));

        let m = monoid::builtin("lz2").unwrap();
        let lz = BrxContext::new(
            m,
            Theta::constant_identity(&monoid::builtin("lz2").unwrap()),
            Alphabet::new(2).unwrap(),
        )
        .unwrap();
        // x at index 1 has inverses {1, 2}; the least index wins.
        let inv = ctx_pair_inverse(&lz, 1);
        assert_eq!(inv, el(&lz, 1, "", ""));
        for cand in [el(&lz, 1, "", ""), el(&lz, 2, "", "")] {
            let x = el(&lz, 1, "", "");
            let xyx = lz.mul(&lz.mul(&x, &cand).unwrap(), &x).unwrap();
            let yxy = lz.mul(&lz.mul(&cand, &x).unwrap(), &cand).unwrap();
            assert_eq!(xyx, x);
            assert_eq!(yxy, cand);
        }
    }

    fn ctx_pair_inverse(ctx: &BrxContext, s: usize) -> BrxElem {
        ctx.inverse_of(&BrxElem::pair(s, PPair::one(ctx.alphabet())))
            .unwrap()
    }

    #[test]
    fn green_examples() {
        let ctx = c2_id();
        assert!(ctx.green(GreenRel::L, &el(&ctx, 0, "a", "b"), &el(&ctx, 1, "ba", "b")));
        assert!(!ctx.green(GreenRel::R, &el(&ctx, 0, "a", "b"), &el(&ctx, 1, "b", "b")));

        let m = monoid::trivial();
        let t = BrxContext::new(
            m.clone(),
            Theta::constant_identity(&m),
            Alphabet::new(2).unwrap(),
        )
        .unwrap();
        // Combinatorial base: H-classes are singletons.
        assert!(!t.green(GreenRel::H, &el(&t, 0, "a", "b"), &el(&t, 0, "b", "b")));
        assert!(t.green(GreenRel::H, &el(&t, 0, "a", "b"), &el(&t, 0, "a", "b")));

        assert!(ctx.green(GreenRel::J, &el(&ctx, 0, "a", "b"), &el(&ctx, 1, "", "")));
        assert!(!ctx.green(GreenRel::J, &BrxElem::Zero, &el(&ctx, 1, "", "")));
        assert!(ctx.green(GreenRel::D, &BrxElem::Zero, &BrxElem::Zero));
    }

    #[test]
    fn zero_simple_witness_example() {
        let ctx = c2_id();
        let target = el(&ctx, 1, "", "");
        let source = el(&ctx, 1, "a", "a");
        let (x, y) = ctx.zero_simple_witness(&target, &source).unwrap();
        assert_eq!(x, el(&ctx, 1, "", "aa"));
        assert_eq!(y, el(&ctx, 1, "aa", ""));
        let got = ctx.mul(&ctx.mul(&x, &source).unwrap(), &y).unwrap();
        assert_eq!(got, target);

        let one = ctx.one();
        let (x, y) = ctx.zero_simple_witness(&one, &one).unwrap();
        let got = ctx.mul(&ctx.mul(&x, &one).unwrap(), &y).unwrap();
        assert_eq!(got, one);
    }

    #[test]
    fn quotient_examples() {
        let ctx = c2_id();
        let a = ctx.alphabet();
        assert_eq!(
            ctx.quotient_to_p(&el(&ctx, 1, "a", "b")),
            PElem::Pair(PPair::new(w(a, "a"), w(a, "b")).unwrap())
        );
        assert_eq!(ctx.quotient_to_p(&BrxElem::Zero), PElem::zero(a));
    }

    #[test]
    fn center_and_unit_examples() {
        let id = c2_id();
        let g_one = el(&id, 1, "", "");
        assert!(id.is_in_center(&g_one));
        assert!(id.is_unit(&g_one));

        let one = c2_one();
        let g_one = el(&one, 1, "", "");
        assert!(!one.is_in_center(&g_one)); // theta moves g
        assert!(one.is_unit(&g_one));

        assert!(!id.is_in_center(&el(&id, 0, "a", "a")));
        assert!(!id.is_unit(&el(&id, 0, "a", "a")));
        assert!(id.is_in_center(&BrxElem::Zero));
        assert!(!id.is_unit(&BrxElem::Zero));
    }

    #[test]
    fn zero_e_unitary_examples() {
        let m = monoid::builtin("chain2").unwrap();
        let chain = BrxContext::new(
            m.clone(),
            Theta::constant_identity(&m),
            Alphabet::new(2).unwrap(),
        )
        .unwrap();
        assert!(chain.is_0_e_unitary());
        assert!(c2_id().is_0_e_unitary());

        let ctx = c2_one();
        assert!(!ctx.is_0_e_unitary());
        // The witnessing failure: (e, [a]^-1[a]) · (g, 1) is a nonzero
        // idempotent although (g, 1) is not.
        let e = el(&ctx, 0, "a", "a");
        let s = el(&ctx, 1, "", "");
        let prod = ctx.mul(&e, &s).unwrap();
        assert_eq!(prod, e);
        assert!(ctx.is_idempotent(&prod));
        assert!(!ctx.is_idempotent(&s));
    }

    #[test]
    fn solver_examples() {
        let ctx = c2_id();
        let sols = ctx
            .solve_right(&el(&ctx, 0, "", "a"), &el(&ctx, 0, "", "ab"))
            .unwrap();
        assert_eq!(
            sols,
            [el(&ctx, 0, "a", "ab"), el(&ctx, 0, "", "b")]
                .into_iter()
                .collect()
        );

        // a single cross solution on the right, none on the left
        let right = ctx
            .solve_right(&el(&ctx, 0, "", "a"), &el(&ctx, 0, "", "b"))
            .unwrap();
        assert_eq!(right, [el(&ctx, 0, "a", "b")].into_iter().collect());
        let left = ctx
            .solve_left(&el(&ctx, 0, "", "a"), &el(&ctx, 0, "", "b"))
            .unwrap();
        assert!(left.is_empty());

        assert_eq!(
            ctx.solve_right(&BrxElem::Zero, &ctx.one()),
            Err(BrxError::ZeroOperand)
        );

        let m = monoid::trivial();
        let t = BrxContext::new(
            m.clone(),
            Theta::constant_identity(&m),
            Alphabet::new(2).unwrap(),
        )
        .unwrap();
        let sols = t.solve_right(&t.one(), &t.one()).unwrap();
        assert_eq!(sols, [t.one()].into_iter().collect());
    }

    #[test]
    fn embedding_examples() {
        let ctx = c2_id();
        let a = ctx.alphabet();
        let e = a.empty_word();
        for s in 0..2 {
            for t in 0..2 {
                let lhs = ctx
                    .mul(
                        &ctx.embed_monoid(&e, s).unwrap(),
                        &ctx.embed_monoid(&e, t).unwrap(),
                    )
                    .unwrap();
                assert_eq!(lhs, ctx.embed_monoid(&e, ctx.monoid().mul(s, t)).unwrap());
            }
        }

        let p = PElem::Pair(PPair::new(e.clone(), w(a, "a")).unwrap());
        let q = PElem::Pair(PPair::new(w(a, "a"), e.clone()).unwrap());
        let lhs = ctx
            .mul(
                &ctx.embed_polycyclic(0, &p).unwrap(),
                &ctx.embed_polycyclic(0, &q).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, ctx.embed_polycyclic(0, &p.mul(&q).unwrap()).unwrap());

        assert_eq!(ctx.embed_polycyclic(1, &p), Err(BrxError::NotIdempotent(1)));
        // The non-idempotent copy escapes itself: (g,1)(g,1) = (e,1).
        let g = el(&ctx, 1, "", "");
        assert_eq!(ctx.mul(&g, &g).unwrap(), el(&ctx, 0, "", ""));
    }

    #[test]
    fn conjugation_examples() {
        let ctx = c2_id();
        let a = ctx.alphabet();
        let e = a.empty_word();
        for x in ctx.fragment(2).iter() {
            assert_eq!(&ctx.conjugate_embed(&e, &e, x).unwrap(), x);
        }
        let (u, v) = (w(a, "a"), w(a, "b"));
        for x in ctx.fragment(2).iter() {
            let image = ctx.conjugate_embed(&u, &v, x).unwrap();
            let back = ctx.conjugate_retract(&u, &v, &image).unwrap();
            assert_eq!(&back, x);
            if let Some((s, p)) = x.parts() {
                let (is, ip) = image.parts().expect("nonzero maps to nonzero");
                assert_eq!(is, s);
                assert_eq!(ip.up(), &p.up().concat(&u).unwrap());
                assert_eq!(ip.down(), &p.down().concat(&v).unwrap());
            } else {
                assert!(image.is_zero());
            }
        }
    }

    #[test]
    fn fragment_sizes() {
        let ctx = c2_id();
        assert_eq!(ctx.fragment(2).len(), 99);
        assert_eq!(ctx.fragment(0).len(), 3);
        let m = monoid::builtin("C2").unwrap();
        let k1 = BrxContext::new(
            m.clone(),
            Theta::identity(&m).unwrap(),
            Alphabet::new(1).unwrap(),
        )
        .unwrap();
        assert_eq!(k1.fragment(3).len(), 33);
    }

    #[test]
    fn metric_examples() {
        let ctx = c2_id();
        let d = SliceMetric::discrete(ctx.monoid());
        let x = el(&ctx, 0, "a", "a");
        assert_eq!(d.distance(&x, &x), 0.0);
        assert_eq!(d.distance(&x, &el(&ctx, 1, "a", "a")), 1.0);
        assert_eq!(d.distance(&x, &el(&ctx, 0, "b", "b")), 1.0);
        assert_eq!(d.distance(&BrxElem::Zero, &x), 1.0);
        assert_eq!(d.distance(&BrxElem::Zero, &BrxElem::Zero), 0.0);
    }

    #[test]
    fn metric_rejects_out_of_bounds_bases() {
        let m = monoid::builtin("C2").unwrap();
        let err = SliceMetric::new(&m, vec![vec![0.0, 1.5], vec![1.5, 0.0]]).unwrap_err();
        assert!(matches!(err, BrxError::MetricOutOfBounds { .. }));
        let err = SliceMetric::new(&m, vec![vec![0.0, 1.0], vec![0.5, 0.0]]).unwrap_err();
        assert!(matches!(err, BrxError::MetricInvalid(_)));
    }
}
