//! Finite monoids presented by Cayley tables.
//!
//! Construction validates the identity and associativity laws and
//! memoizes the derived structure every extension predicate delegates
//! to: idempotents, the unit group with inverses, the center, Green's
//! class partitions, and per-element inverse sets.  Homomorphisms into
//! the unit group are validated the same way.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("size must be positive")]
    EmptyMonoid,
    #[error("table must have {size} rows of {size} entries; row {row} has {len}")]
    RaggedTable { size: usize, row: usize, len: usize },
    #[error("table entry [{row}][{col}] = {value} out of range for size {size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("identity index {identity} out of range for size {size}")]
    IdentityOutOfRange { identity: usize, size: usize },
    #[error("identity law fails at element {elem} on the {side} side")]
    IdentityLaw { elem: usize, side: &'static str },
    #[error("associativity fails at triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("names list has length {len}, monoid has size {size}")]
    NamesLength { len: usize, size: usize },
    #[error("element index {index} out of range for size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("operation requires an inverse monoid")]
    NotInverse,
    #[error("natural order needs idempotent arguments or an inverse monoid")]
    NaturalOrderUndefined,
    #[error("homomorphism map has length {len}, monoid has size {size}")]
    ThetaLength { len: usize, size: usize },
    #[error("map is not multiplicative at the pair ({x}, {y})")]
    ThetaNotMultiplicative { x: usize, y: usize },
    #[error("map sends element {x} outside the unit group")]
    ThetaImageNotUnit { x: usize },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid monoid file: {0}")]
    Json(String),
}

/// Green's relations, decided from principal ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GreenRel {
    L,
    R,
    J,
    H,
    D,
}

impl GreenRel {
    pub fn from_name(s: &str) -> Option<GreenRel> {
        match s.to_ascii_uppercase().as_str() {
            "L" => Some(GreenRel::L),
            "R" => Some(GreenRel::R),
            "J" => Some(GreenRel::J),
            "H" => Some(GreenRel::H),
            "D" => Some(GreenRel::D),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GreenRel::L => "L",
            GreenRel::R => "R",
            GreenRel::J => "J",
            GreenRel::H => "H",
            GreenRel::D => "D",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FiniteMonoid {
    name: String,
    size: usize,
    identity: usize,
    table: Vec<usize>,
    names: Option<Vec<String>>,
    idempotents: Vec<usize>,
    units: Vec<usize>,
    unit_inverse: Vec<Option<usize>>,
    center: Vec<usize>,
    inverse_sets: Vec<Vec<usize>>,
    lclass: Vec<usize>,
    rclass: Vec<usize>,
    jclass: Vec<usize>,
    dclass: Vec<usize>,
}

impl FiniteMonoid {
    pub fn try_new(
        name: impl Into<String>,
        identity: usize,
        table: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, MonoidError> {
        let size = table.len();
        if size == 0 {
            return Err(MonoidError::EmptyMonoid);
        }
        let mut flat = Vec::with_capacity(size * size);
        for (row, r) in table.iter().enumerate() {
            if r.len() != size {
                return Err(MonoidError::RaggedTable {
                    size,
                    row,
                    len: r.len(),
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= size {
                    return Err(MonoidError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        size,
                    });
                }
                flat.push(value);
            }
        }
        if identity >= size {
            return Err(MonoidError::IdentityOutOfRange { identity, size });
        }
        if let Some(ns) = &names {
            if ns.len() != size {
                return Err(MonoidError::NamesLength {
                    len: ns.len(),
                    size,
                });
            }
        }
        let at = |i: usize, j: usize| flat[i * size + j];
        for x in 0..size {
            if at(identity, x) != x {
                return Err(MonoidError::IdentityLaw {
                    elem: x,
                    side: "left",
                });
            }
            if at(x, identity) != x {
                return Err(MonoidError::IdentityLaw {
                    elem: x,
                    side: "right",
                });
            }
        }
        for i in 0..size {
            for j in 0..size {
                for k in 0..size {
                    if at(at(i, j), k) != at(i, at(j, k)) {
                        return Err(MonoidError::NotAssociative { i, j, k });
                    }
                }
            }
        }

        let mut m = FiniteMonoid {
            name: name.into(),
            size,
            identity,
            table: flat,
            names,
            idempotents: Vec::new(),
            units: Vec::new(),
            unit_inverse: vec![None; size],
            center: Vec::new(),
            inverse_sets: vec![Vec::new(); size],
            lclass: vec![0; size],
            rclass: vec![0; size],
            jclass: vec![0; size],
            dclass: vec![0; size],
        };
        m.memoize();
        Ok(m)
    }

    fn memoize(&mut self) {
        let n = self.size;
        self.idempotents = (0..n).filter(|&x| self.mul(x, x) == x).collect();
        for x in 0..n {
            self.unit_inverse[x] = (0..n)
                .find(|&y| self.mul(x, y) == self.identity && self.mul(y, x) == self.identity);
        }
        self.units = (0..n).filter(|&x| self.unit_inverse[x].is_some()).collect();
        self.center = (0..n)
            .filter(|&x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect();
        for x in 0..n {
            self.inverse_sets[x] = (0..n)
                .filter(|&y| self.mul(self.mul(x, y), x) == x && self.mul(self.mul(y, x), y) == y)
                .collect();
        }

        // Principal ideals, canonicalized to class ids.
        let right: Vec<Vec<bool>> = (0..n)
            .map(|x| {
                let mut row = vec![false; n];
                for y in 0..n {
                    row[self.mul(x, y)] = true;
                }
                row
            })
            .collect();
        let left: Vec<Vec<bool>> = (0..n)
            .map(|x| {
                let mut col = vec![false; n];
                for y in 0..n {
                    col[self.mul(y, x)] = true;
                }
                col
            })
            .collect();
        let two: Vec<Vec<bool>> = (0..n)
            .map(|x| {
                let mut set = vec![false; n];
                for s in 0..n {
                    for t in 0..n {
                        set[self.mul(self.mul(s, x), t)] = true;
                    }
                }
                set
            })
            .collect();
        self.rclass = classify(&right);
        self.lclass = classify(&left);
        self.jclass = classify(&two);

        // D as the composite L then R; finiteness makes R then L agree.
        let d_one = |m: &Self, x: usize, y: usize| {
            (0..n).any(|c| m.lclass[x] == m.lclass[c] && m.rclass[c] == m.rclass[y])
        };
        let d_two = |m: &Self, x: usize, y: usize| {
            (0..n).any(|c| m.rclass[x] == m.rclass[c] && m.lclass[c] == m.lclass[y])
        };
        let mut dclass = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            debug_assert!((0..n).all(|y| d_one(self, x, y) == d_two(self, x, y)));
            if dclass[x] == usize::MAX {
                for (y, class) in dclass.iter_mut().enumerate() {
                    if d_one(self, x, y) {
                        *class = next;
                    }
                }
                next += 1;
            }
        }
        self.dclass = dclass;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn unit_group(&self) -> &[usize] {
        &self.units
    }

    /// The group inverse inside the unit group, when `x` is a unit.
    pub fn unit_inverse(&self, x: usize) -> Option<usize> {
        self.unit_inverse[x]
    }

    pub fn center(&self) -> &[usize] {
        &self.center
    }

    /// All `y` with `x·y·x = x` and `y·x·y = y`, in index order.
    pub fn inverses_of(&self, x: usize) -> &[usize] {
        &self.inverse_sets[x]
    }

    pub fn is_regular(&self) -> bool {
        self.inverse_sets.iter().all(|s| !s.is_empty())
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse_sets.iter().all(|s| s.len() == 1)
    }

    /// `e·s` idempotent forces `s` idempotent, quantified over all
    /// idempotents `e`.  Defined for inverse monoids.
    pub fn is_e_unitary(&self) -> Result<bool, MonoidError> {
        if !self.is_inverse() {
            return Err(MonoidError::NotInverse);
        }
        for &e in &self.idempotents {
            for s in 0..self.size {
                if self.is_idempotent(self.mul(e, s)) && !self.is_idempotent(s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Natural partial order: `x ≤ y`.  On idempotents this is
    /// `xy = yx = x`; on an inverse monoid, `x = e·y` for some idempotent
    /// `e`.  Anything else is rejected.
    pub fn nat_leq(&self, x: usize, y: usize) -> Result<bool, MonoidError> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        if self.is_idempotent(x) && self.is_idempotent(y) {
            return Ok(self.mul(x, y) == x && self.mul(y, x) == x);
        }
        if self.is_inverse() {
            return Ok(self.idempotents.iter().any(|&e| self.mul(e, y) == x));
        }
        Err(MonoidError::NaturalOrderUndefined)
    }

    pub fn green(&self, rel: GreenRel, x: usize, y: usize) -> bool {
        match rel {
            GreenRel::L => self.lclass[x] == self.lclass[y],
            GreenRel::R => self.rclass[x] == self.rclass[y],
            GreenRel::J => self.jclass[x] == self.jclass[y],
            GreenRel::H => self.lclass[x] == self.lclass[y] && self.rclass[x] == self.rclass[y],
            GreenRel::D => self.dclass[x] == self.dclass[y],
        }
    }

    /// All H-classes are singletons.
    pub fn is_combinatorial(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| (x + 1..n).all(|y| !self.green(GreenRel::H, x, y)))
    }

    /// Exactly one D-class.
    pub fn is_bisimple(&self) -> bool {
        self.dclass.iter().all(|&c| c == self.dclass[0])
    }

    pub fn d_class_count(&self) -> usize {
        self.dclass.iter().max().map_or(0, |&m| m + 1)
    }

    fn check_elem(&self, x: usize) -> Result<(), MonoidError> {
        if x >= self.size {
            return Err(MonoidError::ElementOutOfRange {
                index: x,
                size: self.size,
            });
        }
        Ok(())
    }

    pub fn from_json_str(input: &str) -> Result<(FiniteMonoid, Option<Theta>), MonoidError> {
        let file: MonoidFile =
            serde_json::from_str(input).map_err(|e| MonoidError::Json(e.to_string()))?;
        file.build()
    }

    pub fn from_json_file(path: &Path) -> Result<(FiniteMonoid, Option<Theta>), MonoidError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| MonoidError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }
}

fn classify(sets: &[Vec<bool>]) -> Vec<usize> {
    let mut ids: BTreeMap<&Vec<bool>, usize> = BTreeMap::new();
    sets.iter()
        .map(|s| {
            let next = ids.len();
            *ids.entry(s).or_insert(next)
        })
        .collect()
}

/// A homomorphism of the monoid into its own unit group, stored as an
/// image array and validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theta {
    name: String,
    map: Vec<usize>,
}

impl Theta {
    pub fn try_new(
        name: impl Into<String>,
        monoid: &FiniteMonoid,
        map: Vec<usize>,
    ) -> Result<Self, MonoidError> {
        let n = monoid.size();
        if map.len() != n {
            return Err(MonoidError::ThetaLength {
                len: map.len(),
                size: n,
            });
        }
        for (x, &fx) in map.iter().enumerate() {
            if fx >= n {
                return Err(MonoidError::ElementOutOfRange { index: fx, size: n });
            }
            if monoid.unit_inverse(fx).is_none() {
                return Err(MonoidError::ThetaImageNotUnit { x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if map[monoid.mul(x, y)] != monoid.mul(map[x], map[y]) {
                    return Err(MonoidError::ThetaNotMultiplicative { x, y });
                }
            }
        }
        debug_assert_eq!(map[monoid.identity()], monoid.identity());
        Ok(Self {
            name: name.into(),
            map,
        })
    }

    /// The identity map; admissible only when the monoid is a group.
    pub fn identity(monoid: &FiniteMonoid) -> Result<Self, MonoidError> {
        Self::try_new("id", monoid, (0..monoid.size()).collect())
    }

    /// The constant map onto the monoid identity; always admissible.
    pub fn constant_identity(monoid: &FiniteMonoid) -> Self {
        Self::try_new("one", monoid, vec![monoid.identity(); monoid.size()])
            .expect("constant map to the identity is a homomorphism")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `n`-fold iterate; zero iterations return the argument.
    pub fn pow(&self, n: usize, x: usize) -> usize {
        let mut v = x;
        for _ in 0..n {
            v = self.map[v];
        }
        v
    }

    /// Full preimage of `y`, in index order.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == y).collect()
    }
}

/// On-disk form of a Cayley-table monoid, 0-based indices throughout.
/// `theta` is required whenever the file is used to build an extension.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidFile {
    pub name: String,
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl MonoidFile {
    pub fn build(self) -> Result<(FiniteMonoid, Option<Theta>), MonoidError> {
        if self.table.len() != self.size {
            return Err(MonoidError::RaggedTable {
                size: self.size,
                row: self.table.len().min(self.size),
                len: self.table.len(),
            });
        }
        let monoid = FiniteMonoid::try_new(self.name, self.identity, self.table, self.names)?;
        let theta = match self.theta {
            Some(map) => Some(Theta::try_new("file", &monoid, map)?),
            None => None,
        };
        Ok((monoid, theta))
    }
}

/// The one-element monoid.
pub fn trivial() -> FiniteMonoid {
    cyclic(1, "trivial")
}

/// The cyclic group of order `n`.
pub fn cyclic(n: usize, name: &str) -> FiniteMonoid {
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteMonoid::try_new(name, 0, table, None).expect("cyclic table is a group")
}

/// The chain semilattice on `n` elements: product is the lower element,
/// index 0 on top as the identity.
pub fn chain_semilattice(n: usize, name: &str) -> FiniteMonoid {
    let table = (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect();
    FiniteMonoid::try_new(name, 0, table, None).expect("chain table is a semilattice")
}

/// The left-zero semigroup on `n` elements with an adjoined identity
/// (index 0): nonidentity elements satisfy `x·y = x`.
pub fn left_zero_with_identity(n: usize, name: &str) -> FiniteMonoid {
    let size = n + 1;
    let table = (0..size)
        .map(|i| (0..size).map(|j| if i == 0 { j } else { i }).collect())
        .collect();
    FiniteMonoid::try_new(name, 0, table, None).expect("left-zero table is a monoid")
}

/// The symmetric inverse monoid on two points: all seven partial
/// injections of `{0, 1}`, composed left to right.
pub fn symmetric_inverse_2() -> FiniteMonoid {
    type PartialMap = [Option<usize>; 2];
    let mut elems: Vec<PartialMap> = Vec::new();
    for img0 in [None, Some(0), Some(1)] {
        for img1 in [None, Some(0), Some(1)] {
            if let (Some(a), Some(b)) = (img0, img1) {
                if a == b {
                    continue;
                }
            }
            elems.push([img0, img1]);
        }
    }
    debug_assert_eq!(elems.len(), 7);
    let compose = |f: PartialMap, g: PartialMap| -> PartialMap {
        [f[0].and_then(|m| g[m]), f[1].and_then(|m| g[m])]
    };
    let index_of = |m: PartialMap| elems.iter().position(|&e| e == m).expect("closed");
    let identity = index_of([Some(0), Some(1)]);
    let table = elems
        .iter()
        .map(|&f| elems.iter().map(|&g| index_of(compose(f, g))).collect())
        .collect();
    FiniteMonoid::try_new("I2", identity, table, None).expect("partial injections compose")
}

/// Resolve one of the shipped fixtures by name.
pub fn builtin(name: &str) -> Option<FiniteMonoid> {
    match name.to_ascii_lowercase().as_str() {
        "trivial" => Some(trivial()),
        "c2" => Some(cyclic(2, "C2")),
        "c3" => Some(cyclic(3, "C3")),
        "chain2" => Some(chain_semilattice(2, "chain2")),
        "lz2" => Some(left_zero_with_identity(2, "lz2")),
        "i2" => Some(symmetric_inverse_2()),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 6] = ["trivial", "C2", "C3", "chain2", "lz2", "I2"];
