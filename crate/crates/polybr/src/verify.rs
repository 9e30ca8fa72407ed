//! Verification suites: every structural characterization replayed
//! against brute-force recomputation on bounded fragments.
//!
//! Each suite recomputes its expected values from the product alone
//! (or from exhaustive table scans), never from the operation it is
//! checking, and reports structured failures whose inputs re-parse
//! through the element grammar.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::brx::{BrxContext, BrxElem, BrxError, Fragment, SliceMetric};
use crate::monoid::{self, GreenRel, Theta};
use crate::polycyclic::{PElem, PPair};
use crate::word::{Alphabet, Word};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("suite {suite} needs a one-letter alphabet, context has k = {k}")]
    NeedsUnaryAlphabet { suite: &'static str, k: u32 },
    #[error(transparent)]
    Brx(#[from] BrxError),
}

/// The named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteId {
    Associativity,
    Idempotents,
    CommutingIdempotents,
    Inverses,
    Green,
    ZeroSimple,
    Quotient,
    EUnitary,
    CenterUnits,
    Solver,
    Metric,
    Embeddings,
    /// Extra cross-check for one-letter contexts; run by [`run_all`] on
    /// every `k = 1` context in addition to the named twelve.
    Bicyclic,
}

impl SuiteId {
    pub const NAMED: [SuiteId; 12] = [
        SuiteId::Associativity,
        SuiteId::Idempotents,
        SuiteId::CommutingIdempotents,
        SuiteId::Inverses,
        SuiteId::Green,
        SuiteId::ZeroSimple,
        SuiteId::Quotient,
        SuiteId::EUnitary,
        SuiteId::CenterUnits,
        SuiteId::Solver,
        SuiteId::Metric,
        SuiteId::Embeddings,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Associativity => "associativity",
            SuiteId::Idempotents => "idempotents",
            SuiteId::CommutingIdempotents => "commuting_idempotents",
            SuiteId::Inverses => "inverses",
            SuiteId::Green => "green",
            SuiteId::ZeroSimple => "zero_simple",
            SuiteId::Quotient => "quotient",
            SuiteId::EUnitary => "e_unitary",
            SuiteId::CenterUnits => "center_units",
            SuiteId::Solver => "solver",
            SuiteId::Metric => "metric",
            SuiteId::Embeddings => "embeddings",
            SuiteId::Bicyclic => "bicyclic",
        }
    }

    /// The law the suite checks, stated over elements `(s, u^-1 v)`.
    pub fn anchor(self) -> &'static str {
        match self {
            SuiteId::Associativity => "(x*y)*z = x*(y*z)",
            SuiteId::Idempotents => "x*x = x iff x = 0 or s in E(S) with u = v",
            SuiteId::CommutingIdempotents => {
                "idempotents commute iff the base idempotents commute"
            }
            SuiteId::Inverses => "inverses of (s,u^-1 v) are (s',v^-1 u) for base inverses s'",
            SuiteId::Green => {
                "L: s L t and same v; R: s R t and same u; H = L and R; D: s D t; J: all nonzero"
            }
            SuiteId::ZeroSimple => "each nonzero a is x*b*y for witnesses built from a and b",
            SuiteId::Quotient => "(s,p) -> p is a homomorphism onto the polycyclic monoid",
            SuiteId::EUnitary => {
                "0-E-unitary iff the base is inverse E-unitary and the fiber of 1 equals E(S)"
            }
            SuiteId::CenterUnits => {
                "center: s central and theta-fixed with p = 1; units: s a unit with p = 1"
            }
            SuiteId::Solver => "a*x = b and x*a = b have exactly enumerable finite solution sets",
            SuiteId::Metric => "d_S within a slice, 1 across slices and at zero, is a metric",
            SuiteId::Embeddings => {
                "the base embeds over w^-1 w, the polycyclic monoid over idempotents, and conjugation is a bijection"
            }
            SuiteId::Bicyclic => "one-letter products follow the min formula with no zeros",
        }
    }

    pub fn from_name(s: &str) -> Option<SuiteId> {
        let all = [
            SuiteId::Associativity,
            SuiteId::Idempotents,
            SuiteId::CommutingIdempotents,
            SuiteId::Inverses,
            SuiteId::Green,
            SuiteId::ZeroSimple,
            SuiteId::Quotient,
            SuiteId::EUnitary,
            SuiteId::CenterUnits,
            SuiteId::Solver,
            SuiteId::Metric,
            SuiteId::Embeddings,
            SuiteId::Bicyclic,
        ];
        all.into_iter().find(|id| id.name() == s)
    }
}

/// One failed check: the inputs re-parse through the element grammar, so
/// every failure can be replayed.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CaseFailure {
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub anchor: String,
    pub context: String,
    pub cases: u64,
    pub failures: Vec<CaseFailure>,
    pub ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    /// Overrides every suite's fragment bound when set; otherwise
    /// triple-exhaustive suites use 1 and pairwise suites use 2.
    pub bound: Option<usize>,
    pub seed: u64,
    pub negative_samples: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            bound: None,
            seed: 0,
            negative_samples: 200,
        }
    }
}

#[derive(Default)]
struct Rec {
    cases: u64,
    failures: Vec<CaseFailure>,
    verdict: Option<String>,
}

impl Rec {
    fn case(&mut self) {
        self.cases += 1;
    }

    fn fail(
        &mut self,
        inputs: Vec<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) {
        self.failures.push(CaseFailure {
            inputs,
            expected: expected.into(),
            actual: actual.into(),
        });
    }
}

fn mul(ctx: &BrxContext, x: &BrxElem, y: &BrxElem) -> BrxElem {
    ctx.mul(x, y).expect("fragment elements are context-valid")
}

fn mul3(ctx: &BrxContext, x: &BrxElem, y: &BrxElem, z: &BrxElem) -> BrxElem {
    mul(ctx, &mul(ctx, x, y), z)
}

fn render(xs: &[&BrxElem]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// Sanity of the suite catalog: twelve named suites, unique names, and
/// every name resolving back to its id.
fn validate_catalog() {
    let names: BTreeSet<&str> = SuiteId::NAMED.iter().map(|id| id.name()).collect();
    assert_eq!(names.len(), SuiteId::NAMED.len(), "duplicate suite names");
    for id in SuiteId::NAMED {
        assert_eq!(SuiteId::from_name(id.name()), Some(id));
        assert!(!id.anchor().is_empty());
    }
}

pub fn run_suite(
    ctx: &BrxContext,
    id: SuiteId,
    params: &SuiteParams,
) -> Result<SuiteReport, VerifyError> {
    validate_catalog();
    let start = Instant::now();
    let mut rec = Rec::default();
    match id {
        SuiteId::Associativity => suite_associativity(ctx, params, &mut rec),
        SuiteId::Idempotents => suite_idempotents(ctx, params, &mut rec),
        SuiteId::CommutingIdempotents => suite_commuting_idempotents(ctx, params, &mut rec),
        SuiteId::Inverses => suite_inverses(ctx, params, &mut rec),
        SuiteId::Green => suite_green(ctx, params, &mut rec),
        SuiteId::ZeroSimple => suite_zero_simple(ctx, params, &mut rec),
        SuiteId::Quotient => suite_quotient(ctx, params, &mut rec),
        SuiteId::EUnitary => suite_e_unitary(ctx, params, &mut rec),
        SuiteId::CenterUnits => suite_center_units(ctx, params, &mut rec),
        SuiteId::Solver => suite_solver(ctx, params, &mut rec),
        SuiteId::Metric => suite_metric(ctx, params, &mut rec),
        SuiteId::Embeddings => suite_embeddings(ctx, params, &mut rec),
        SuiteId::Bicyclic => {
            if ctx.alphabet().size() != 1 {
                return Err(VerifyError::NeedsUnaryAlphabet {
                    suite: id.name(),
                    k: ctx.alphabet().size(),
                });
            }
            suite_bicyclic(ctx, &mut rec);
        }
    }
    Ok(SuiteReport {
        suite: id.name().to_string(),
        anchor: id.anchor().to_string(),
        context: ctx.label().to_string(),
        cases: rec.cases,
        failures: rec.failures,
        ms: start.elapsed().as_millis() as u64,
        verdict: rec.verdict,
    })
}

/// The shipped fixture matrix: every built-in monoid under each of its
/// admissible named homomorphisms, over one- and two-letter alphabets.
pub fn builtin_contexts() -> Vec<BrxContext> {
    let fixtures: [(&str, &[&str]); 6] = [
        ("trivial", &["one"]),
        ("C2", &["id", "one"]),
        ("C3", &["id", "one"]),
        ("chain2", &["one"]),
        ("lz2", &["one"]),
        ("I2", &["one"]),
    ];
    let mut out = Vec::new();
    for (mname, thetas) in fixtures {
        for &tname in thetas {
            for k in [1u32, 2] {
                let m = monoid::builtin(mname).expect("fixture names resolve");
                let theta = match tname {
                    "id" => Theta::identity(&m).expect("group fixtures admit the identity map"),
                    _ => Theta::constant_identity(&m),
                };
                let alphabet = Alphabet::new(k).expect("k is positive");
                out.push(BrxContext::new(m, theta, alphabet).expect("fixtures validate"));
            }
        }
    }
    out
}

/// Every named suite on every built-in context, plus the bicyclic
/// cross-check on the one-letter contexts.  Reports come back in a fixed
/// order; the run passes only if every report does.
pub fn run_all(params: &SuiteParams) -> Vec<SuiteReport> {
    let mut out = Vec::new();
    for ctx in builtin_contexts() {
        for id in SuiteId::NAMED {
            out.push(run_suite(&ctx, id, params).expect("named suites run on any context"));
        }
        if ctx.alphabet().size() == 1 {
            out.push(run_suite(&ctx, SuiteId::Bicyclic, params).expect("unary context"));
        }
    }
    out
}

// ---------------------------------------------------------------------
// associativity

/// Classify which cancellation shapes a nonzero triple exercises.  For
/// each adjacent product the pair of words compares as: the left word is
/// a suffix of the right (`S1`), the right is a suffix of the left
/// (`S2`), or neither (`N`); equality sets both suffix flags.  The nine
/// combinations number the branches of the associativity case analysis.
fn product_cases(x: &BrxElem, y: &BrxElem, z: &BrxElem) -> Vec<u8> {
    let (Some((_, xp)), Some((_, yp)), Some((_, zp))) = (x.parts(), y.parts(), z.parts()) else {
        return Vec::new();
    };
    let tags = |down: &Word, up: &Word| -> Vec<u8> {
        let s1 = down.is_suffix_of(up);
        let s2 = up.is_suffix_of(down);
        let mut t = Vec::new();
        if s1 {
            t.push(0);
        }
        if s2 {
            t.push(1);
        }
        if t.is_empty() {
            t.push(2);
        }
        t
    };
    let table = [[1u8, 3, 5], [2, 4, 7], [6, 8, 9]];
    let mut out = Vec::new();
    for &a in &tags(xp.down(), yp.up()) {
        for &b in &tags(yp.down(), zp.up()) {
            out.push(table[a as usize][b as usize]);
        }
    }
    out
}

fn suite_associativity(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(1);
    let frag = ctx.fragment(bound);
    let mut covered: BTreeSet<u8> = BTreeSet::new();
    for x in &frag {
        for y in &frag {
            let xy = mul(ctx, x, y);
            for z in &frag {
                rec.case();
                let left = mul(ctx, &xy, z);
                let right = mul(ctx, x, &mul(ctx, y, z));
                if left != right {
                    rec.fail(
                        render(&[x, y, z]),
                        format!("(x*y)*z = {left}"),
                        format!("x*(y*z) = {right}"),
                    );
                }
                for c in product_cases(x, y, z) {
                    covered.insert(c);
                }
            }
        }
    }
    let expected: BTreeSet<u8> = if ctx.alphabet().size() >= 2 {
        (1..=9).collect()
    } else {
        // one-letter words always compare, so the incomparable branches
        // cannot occur
        (1..=4).collect()
    };
    if covered != expected {
        rec.fail(
            Vec::new(),
            format!("product case coverage {expected:?}"),
            format!("{covered:?}"),
        );
    }
    let listing: Vec<String> = covered.iter().map(u8::to_string).collect();
    rec.verdict = Some(format!("product cases covered: {}", listing.join(",")));
}

// ---------------------------------------------------------------------
// idempotents

fn suite_idempotents(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(2);
    for x in &ctx.fragment(bound) {
        rec.case();
        let oracle = &mul(ctx, x, x) == x;
        let actual = ctx.is_idempotent(x);
        if actual != oracle {
            rec.fail(
                render(&[x]),
                format!("x*x = x: {oracle}"),
                format!("characterization: {actual}"),
            );
        }
    }
}

// ---------------------------------------------------------------------
// commuting idempotents

fn suite_commuting_idempotents(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(2);
    let frag = ctx.fragment(bound);
    let m = ctx.monoid();
    let idems: Vec<&BrxElem> = frag.iter().filter(|x| &mul(ctx, x, x) == *x).collect();
    let base_commutes = m
        .idempotents()
        .iter()
        .all(|&e| m.idempotents().iter().all(|&f| m.mul(e, f) == m.mul(f, e)));

    let mut witness: Option<(BrxElem, BrxElem)> = None;
    for &e in &idems {
        for &f in &idems {
            rec.case();
            let ef = mul(ctx, e, f);
            let fe = mul(ctx, f, e);
            if ef != fe {
                if witness.is_none() {
                    witness = Some((e.clone(), f.clone()));
                }
                if base_commutes {
                    rec.fail(
                        render(&[e, f]),
                        "commuting product".to_string(),
                        format!("{ef} vs {fe}"),
                    );
                }
            }
        }
    }

    if base_commutes {
        rec.verdict = Some("all idempotent pairs commute".to_string());
    } else {
        match witness {
            None => rec.fail(
                Vec::new(),
                "a noncommuting idempotent pair (base idempotents do not commute)",
                "none found in the fragment",
            ),
            Some((e, f)) => {
                // the base failure must reproduce on the identity slice
                let (be, bf) = base_noncommuting_pair(m).expect("base does not commute");
                let one = PPair::one(ctx.alphabet());
                let le = BrxElem::pair(be, one.clone());
                let lf = BrxElem::pair(bf, one);
                rec.case();
                if mul(ctx, &le, &lf) == mul(ctx, &lf, &le) {
                    rec.fail(
                        render(&[&le, &lf]),
                        "noncommuting lift of the base pair",
                        "commuting product",
                    );
                }
                rec.verdict = Some(format!("noncommuting pair found: {e} and {f}"));
            }
        }
    }
}

fn base_noncommuting_pair(m: &monoid::FiniteMonoid) -> Option<(usize, usize)> {
    for &e in m.idempotents() {
        for &f in m.idempotents() {
            if m.mul(e, f) != m.mul(f, e) {
                return Some((e, f));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------
// inverses

fn suite_inverses(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(2);
    let frag = ctx.fragment(bound);
    let search = ctx.fragment(2 * bound);
    let m = ctx.monoid();
    let mut every_nonempty = true;
    let mut every_unique = true;
    for x in &frag {
        rec.case();
        let brute: BTreeSet<BrxElem> = search
            .iter()
            .filter(|y| &mul3(ctx, x, y, x) == x && &mul3(ctx, y, x, y) == *y)
            .cloned()
            .collect();
        let expected: BTreeSet<BrxElem> = match x.parts() {
            None => [BrxElem::Zero].into_iter().collect(),
            Some((s, p)) => m
                .inverses_of(s)
                .iter()
                .map(|&t| BrxElem::pair(t, p.inverse()))
                .collect(),
        };
        if brute != expected {
            rec.fail(
                render(&[x]),
                format!("inverses {}", render_set(&expected)),
                format!("brute force found {}", render_set(&brute)),
            );
        }
        every_nonempty &= !brute.is_empty();
        every_unique &= brute.len() == 1;
        // the operation returns the least brute-force inverse
        let actual = ctx.inverse_of(x);
        let least = brute.iter().next().cloned();
        if actual != least {
            rec.fail(
                render(&[x]),
                format!("least inverse {least:?}"),
                format!("{actual:?}"),
            );
        }
    }
    rec.case();
    if every_nonempty != m.is_regular() {
        rec.fail(
            Vec::new(),
            format!("regular base: {}", m.is_regular()),
            format!("fragment elements all invertible: {every_nonempty}"),
        );
    }
    rec.case();
    if every_unique != m.is_inverse() {
        rec.fail(
            Vec::new(),
            format!("inverse base: {}", m.is_inverse()),
            format!("fragment inverses all unique: {every_unique}"),
        );
    }
}

fn render_set(set: &BTreeSet<BrxElem>) -> String {
    let items: Vec<String> = set.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

// ---------------------------------------------------------------------
// Green's relations

fn suite_green(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(2);
    let frag = ctx.fragment(bound);
    let m = ctx.monoid();
    let n = m.size();

    for x in &frag {
        for y in &frag {
            let l = ctx.green(GreenRel::L, x, y);
            let r = ctx.green(GreenRel::R, x, y);
            let h = ctx.green(GreenRel::H, x, y);
            let d = ctx.green(GreenRel::D, x, y);
            let j = ctx.green(GreenRel::J, x, y);
            rec.cases += 5;
            if h != (l && r) {
                rec.fail(
                    render(&[x, y]),
                    format!("H = L and R = {}", l && r),
                    h.to_string(),
                );
            }
            match (x.parts(), y.parts()) {
                (None, None) => {
                    if !(l && r && h && d && j) {
                        rec.fail(render(&[x, y]), "zero related to itself", "not related");
                    }
                }
                (None, Some(_)) | (Some(_), None) => {
                    if l || r || h || d || j {
                        rec.fail(render(&[x, y]), "zero related only to itself", "related");
                    }
                }
                (Some((s, _)), Some((t, _))) => {
                    if l {
                        check_mutual_l(ctx, rec, x, y);
                    }
                    if r {
                        check_mutual_r(ctx, rec, x, y);
                    }
                    if d {
                        let (_, xp) = x.parts().expect("nonzero");
                        let (_, yp) = y.parts().expect("nonzero");
                        match (0..n)
                            .find(|&c| m.green(GreenRel::L, s, c) && m.green(GreenRel::R, c, t))
                        {
                            None => rec.fail(render(&[x, y]), "a base intermediary for D", "none"),
                            Some(c) => {
                                let mid = BrxElem::pair(
                                    c,
                                    PPair::new(yp.up().clone(), xp.down().clone())
                                        .expect("same alphabet"),
                                );
                                check_mutual_l(ctx, rec, x, &mid);
                                check_mutual_r(ctx, rec, &mid, y);
                            }
                        }
                    }
                    if j {
                        for (target, source) in [(x, y), (y, x)] {
                            let (wx, wy) = ctx
                                .zero_simple_witness(target, source)
                                .expect("nonzero arguments");
                            if &mul3(ctx, &wx, source, &wy) != target {
                                rec.fail(
                                    render(&[target, source]),
                                    "two-sided reachability",
                                    format!("{wx} * {source} * {wy} misses the target"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    // class-structure transfer: D-class count (zero aside) matches the
    // base, and H-classes are singletons exactly for a combinatorial base
    rec.case();
    let nonzero: Vec<&BrxElem> = frag.iter().filter(|x| !x.is_zero()).collect();
    let mut d_reps: Vec<&BrxElem> = Vec::new();
    for x in &nonzero {
        if !d_reps.iter().any(|rep| ctx.green(GreenRel::D, rep, x)) {
            d_reps.push(x);
        }
    }
    if d_reps.len() != m.d_class_count() {
        rec.fail(
            Vec::new(),
            format!("{} nonzero D-classes", m.d_class_count()),
            format!("{}", d_reps.len()),
        );
    }
    rec.case();
    let combinatorial = nonzero.iter().enumerate().all(|(i, x)| {
        nonzero[i + 1..]
            .iter()
            .all(|y| !ctx.green(GreenRel::H, x, y))
    });
    if combinatorial != m.is_combinatorial() {
        rec.fail(
            Vec::new(),
            format!("combinatorial base: {}", m.is_combinatorial()),
            format!("singleton H-classes: {combinatorial}"),
        );
    }

    // sampled negatives: the mutual translations must fail within the
    // witness bound.  D and J need no search: D has no single bounded
    // witness shape, and negative J pairs involve the zero, which no
    // two-sided product escapes.
    let gens = ctx.fragment(2 * bound);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < params.negative_samples && attempts < 100 * params.negative_samples {
        attempts += 1;
        let x = &frag.elems()[rng.gen_range(0..frag.len())];
        let y = &frag.elems()[rng.gen_range(0..frag.len())];
        let neg_l = !ctx.green(GreenRel::L, x, y);
        let neg_r = !ctx.green(GreenRel::R, x, y);
        let neg_h = !ctx.green(GreenRel::H, x, y);
        if !(neg_l || neg_r || neg_h) {
            continue;
        }
        checked += 1;
        rec.case();
        let lm_x = left_multiples(ctx, &gens, x);
        let lm_y = left_multiples(ctx, &gens, y);
        let rm_x = right_multiples(ctx, &gens, x);
        let rm_y = right_multiples(ctx, &gens, y);
        let mutual_l = lm_y.contains(x) && lm_x.contains(y);
        let mutual_r = rm_y.contains(x) && rm_x.contains(y);
        if neg_l && mutual_l {
            rec.fail(
                render(&[x, y]),
                "no bounded L witnesses",
                "both translations exist",
            );
        }
        if neg_r && mutual_r {
            rec.fail(
                render(&[x, y]),
                "no bounded R witnesses",
                "both translations exist",
            );
        }
        if neg_h && mutual_l && mutual_r {
            rec.fail(
                render(&[x, y]),
                "no bounded H witnesses",
                "all four translations exist",
            );
        }
    }
}

/// Mutual reconstruction for an L-positive pair: base translators `r`,
/// `q` with `r·t = s` and `q·s = t` lift over the up-words.
fn check_mutual_l(ctx: &BrxContext, rec: &mut Rec, x: &BrxElem, y: &BrxElem) {
    let m = ctx.monoid();
    let (s, _) = x.parts().expect("nonzero");
    let (t, _) = y.parts().expect("nonzero");
    for (from, to, a, b) in [(y, x, s, t), (x, y, t, s)] {
        let (_, fp) = from.parts().expect("nonzero");
        let (_, tp) = to.parts().expect("nonzero");
        match (0..m.size()).find(|&r| m.mul(r, b) == a) {
            None => rec.fail(
                render(&[x, y]),
                "a base left translator",
                "none although base L holds",
            ),
            Some(r) => {
                let w = BrxElem::pair(
                    r,
                    PPair::new(tp.up().clone(), fp.up().clone()).expect("same alphabet"),
                );
                if &mul(ctx, &w, from) != to {
                    rec.fail(
                        render(&[x, y]),
                        format!("{w} * {from} = {to}"),
                        mul(ctx, &w, from).to_string(),
                    );
                }
            }
        }
    }
}

/// Mutual reconstruction for an R-positive pair, mirrored over the
/// down-words.
fn check_mutual_r(ctx: &BrxContext, rec: &mut Rec, x: &BrxElem, y: &BrxElem) {
    let m = ctx.monoid();
    let (s, _) = x.parts().expect("nonzero");
    let (t, _) = y.parts().expect("nonzero");
    for (from, to, a, b) in [(y, x, s, t), (x, y, t, s)] {
        let (_, fp) = from.parts().expect("nonzero");
        let (_, tp) = to.parts().expect("nonzero");
        match (0..m.size()).find(|&r| m.mul(b, r) == a) {
            None => rec.fail(
                render(&[x, y]),
                "a base right translator",
                "none although base R holds",
            ),
            Some(r) => {
                let w = BrxElem::pair(
                    r,
                    PPair::new(fp.down().clone(), tp.down().clone()).expect("same alphabet"),
                );
                if &mul(ctx, from, &w) != to {
                    rec.fail(
                        render(&[x, y]),
                        format!("{from} * {w} = {to}"),
                        mul(ctx, from, &w).to_string(),
                    );
                }
            }
        }
    }
}

fn left_multiples(ctx: &BrxContext, gens: &Fragment, x: &BrxElem) -> HashSet<BrxElem> {
    gens.iter().map(|w| mul(ctx, w, x)).collect()
}

fn right_multiples(ctx: &BrxContext, gens: &Fragment, x: &BrxElem) -> HashSet<BrxElem> {
    gens.iter().map(|w| mul(ctx, x, w)).collect()
}

// ---------------------------------------------------------------------
// zero-simplicity

fn suite_zero_simple(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(2);
    let frag = ctx.fragment(bound);
    for target in frag.iter().filter(|x| !x.is_zero()) {
        for source in frag.iter().filter(|x| !x.is_zero()) {
            rec.case();
            let (x, y) = ctx
                .zero_simple_witness(target, source)
                .expect("nonzero arguments");
            let got = mul3(ctx, &x, source, &y);
            if &got != target {
                rec.fail(
                    render(&[target, source]),
                    format!("x*b*y = {target}"),
                    got.to_string(),
                );
            }
        }
    }
}

// ---------------------------------------------------------------------
// quotient

fn suite_quotient(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(2);
    let frag = ctx.fragment(bound);
    for x in &frag {
        for y in &frag {
            rec.case();
            let lhs = ctx.quotient_to_p(&mul(ctx, x, y));
            let rhs = ctx
                .quotient_to_p(x)
                .mul(&ctx.quotient_to_p(y))
                .expect("same alphabet");
            if lhs != rhs {
                rec.fail(render(&[x, y]), format!("pi(x*y) = {rhs}"), lhs.to_string());
            }
        }
    }
    rec.case();
    let image: BTreeSet<PElem> = frag.iter().map(|x| ctx.quotient_to_p(x)).collect();
    let words = ctx.alphabet().words_up_to(bound);
    let mut onto: BTreeSet<PElem> = [PElem::zero(ctx.alphabet())].into_iter().collect();
    for up in &words {
        for down in &words {
            onto.insert(PElem::Pair(
                PPair::new(up.clone(), down.clone()).expect("same alphabet"),
            ));
        }
    }
    if image != onto {
        rec.fail(
            Vec::new(),
            format!("surjective onto {} polycyclic elements", onto.len()),
            format!("{} in the image", image.len()),
        );
    }
    if ctx.monoid().size() > 1 {
        rec.case();
        let a = BrxElem::pair(0, PPair::one(ctx.alphabet()));
        let b = BrxElem::pair(1, PPair::one(ctx.alphabet()));
        if a == b || ctx.quotient_to_p(&a) != ctx.quotient_to_p(&b) {
            rec.fail(
                render(&[&a, &b]),
                "a nontrivially collapsed pair",
                "quotient separates the slice",
            );
        }
    }
}

// ---------------------------------------------------------------------
// 0-E-unitarity

fn suite_e_unitary(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(1);
    let frag = ctx.fragment(bound);
    let actual = ctx.is_0_e_unitary();
    let mut violation: Option<(BrxElem, BrxElem, BrxElem)> = None;
    'outer: for e in frag.iter() {
        if e.is_zero() || mul(ctx, e, e) != *e {
            continue;
        }
        for s in frag.iter() {
            rec.case();
            let prod = mul(ctx, e, s);
            if !prod.is_zero() && mul(ctx, &prod, &prod) == prod && mul(ctx, s, s) != *s {
                violation = Some((e.clone(), s.clone(), prod));
                break 'outer;
            }
        }
    }
    if ctx.monoid().is_inverse() {
        let expected = violation.is_none();
        if actual != expected {
            rec.fail(
                Vec::new(),
                format!("fragment violation search: 0-E-unitary = {expected}"),
                format!("characterization: {actual}"),
            );
        }
        rec.verdict = Some(match &violation {
            None => "0-E-unitary".to_string(),
            Some((e, s, prod)) => {
                format!("not 0-E-unitary: {e} * {s} = {prod} is a nonzero idempotent, {s} is not")
            }
        });
    } else {
        rec.case();
        if actual {
            rec.fail(
                Vec::new(),
                "false for a non-inverse base",
                "characterization returned true",
            );
        }
        rec.verdict = Some("base monoid is not inverse".to_string());
    }
}

// ---------------------------------------------------------------------
// center and units

fn suite_center_units(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(2);
    let frag = ctx.fragment(bound);
    let tiny = ctx.fragment(0);
    let one = ctx.one();
    for x in &frag {
        rec.case();
        let commutes = frag.iter().all(|y| mul(ctx, x, y) == mul(ctx, y, x));
        if ctx.is_in_center(x) != commutes {
            rec.fail(
                render(&[x]),
                format!("commutes with the fragment: {commutes}"),
                format!("characterization: {}", ctx.is_in_center(x)),
            );
        }
        rec.case();
        let invertible = tiny
            .iter()
            .any(|y| mul(ctx, x, y) == one && mul(ctx, y, x) == one);
        if ctx.is_unit(x) != invertible {
            rec.fail(
                render(&[x]),
                format!("two-sided inverse exists: {invertible}"),
                format!("characterization: {}", ctx.is_unit(x)),
            );
        }
    }
}

// ---------------------------------------------------------------------
// division solvers

fn suite_solver(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(1);
    let pairs = ctx.fragment(bound);
    let search = ctx.fragment(2 * bound + 1);
    for a in pairs.iter().filter(|x| !x.is_zero()) {
        for b in pairs.iter().filter(|x| !x.is_zero()) {
            let (_, ap) = a.parts().expect("nonzero");

            rec.case();
            let got = ctx.solve_right(a, b).expect("nonzero arguments");
            let brute: BTreeSet<BrxElem> = search
                .iter()
                .filter(|x| &mul(ctx, a, x) == b)
                .cloned()
                .collect();
            if got != brute {
                rec.fail(
                    render(&[a, b]),
                    format!("right solutions {}", render_set(&brute)),
                    render_set(&got),
                );
            }
            let slices: BTreeSet<&PPair> = got
                .iter()
                .filter_map(|x| x.parts().map(|(_, p)| p))
                .collect();
            if slices.len() > ap.down().len() + 1 {
                rec.fail(
                    render(&[a, b]),
                    format!("at most {} slices", ap.down().len() + 1),
                    format!("{}", slices.len()),
                );
            }

            rec.case();
            let got = ctx.solve_left(a, b).expect("nonzero arguments");
            let brute: BTreeSet<BrxElem> = search
                .iter()
                .filter(|x| &mul(ctx, x, a) == b)
                .cloned()
                .collect();
            if got != brute {
                rec.fail(
                    render(&[a, b]),
                    format!("left solutions {}", render_set(&brute)),
                    render_set(&got),
                );
            }
            let slices: BTreeSet<&PPair> = got
                .iter()
                .filter_map(|x| x.parts().map(|(_, p)| p))
                .collect();
            if slices.len() > ap.up().len() + 1 {
                rec.fail(
                    render(&[a, b]),
                    format!("at most {} slices", ap.up().len() + 1),
                    format!("{}", slices.len()),
                );
            }
        }
    }
}

// ---------------------------------------------------------------------
// the slice metric

fn suite_metric(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(2);
    let frag = ctx.fragment(bound);
    let metric = SliceMetric::discrete(ctx.monoid());
    for x in &frag {
        for y in &frag {
            rec.case();
            let d = metric.distance(x, y);
            if (d == 0.0) != (x == y) {
                rec.fail(render(&[x, y]), "d = 0 iff equal", format!("d = {d}"));
            }
            if d != metric.distance(y, x) {
                rec.fail(
                    render(&[x, y]),
                    "symmetry",
                    format!("{d} vs {}", metric.distance(y, x)),
                );
            }
            if d < 1.0 && x != y {
                let same_slice = match (x.parts(), y.parts()) {
                    (Some((_, p)), Some((_, q))) => p == q,
                    _ => false,
                };
                if !same_slice {
                    rec.fail(
                        render(&[x, y]),
                        "the open unit ball stays inside the slice",
                        format!("d = {d} across slices"),
                    );
                }
            }
            if x.is_zero() != y.is_zero() && d != 1.0 {
                rec.fail(render(&[x, y]), "zero at distance 1", format!("d = {d}"));
            }
        }
    }
    for x in &frag {
        for y in &frag {
            let dxy = metric.distance(x, y);
            for z in &frag {
                rec.case();
                if metric.distance(x, z) > dxy + metric.distance(y, z) + 1e-12 {
                    rec.fail(render(&[x, y, z]), "triangle inequality", "violated");
                }
            }
        }
    }
}

// ---------------------------------------------------------------------
// embeddings and conjugation

fn suite_embeddings(ctx: &BrxContext, params: &SuiteParams, rec: &mut Rec) {
    let bound = params.bound.unwrap_or(2);
    let m = ctx.monoid();
    let a = ctx.alphabet();
    let n = m.size();

    // the base monoid embeds over each diagonal pair
    for base in [a.empty_word(), a.letter(0).expect("k >= 1")] {
        for s in 0..n {
            for t in 0..n {
                rec.case();
                let lhs = mul(
                    ctx,
                    &ctx.embed_monoid(&base, s).expect("valid"),
                    &ctx.embed_monoid(&base, t).expect("valid"),
                );
                let rhs = ctx.embed_monoid(&base, m.mul(s, t)).expect("valid");
                if lhs != rhs {
                    rec.fail(
                        vec![format!("s{s}"), format!("s{t}"), base.to_string()],
                        rhs.to_string(),
                        lhs.to_string(),
                    );
                }
            }
        }
    }

    // the polycyclic monoid embeds over each idempotent
    let words = a.words_up_to(1);
    let mut pfrag: Vec<PElem> = vec![PElem::zero(a)];
    for up in &words {
        for down in &words {
            pfrag.push(PElem::Pair(
                PPair::new(up.clone(), down.clone()).expect("same alphabet"),
            ));
        }
    }
    for &e in m.idempotents() {
        for p in &pfrag {
            for q in &pfrag {
                rec.case();
                let lhs = mul(
                    ctx,
                    &ctx.embed_polycyclic(e, p).expect("idempotent anchor"),
                    &ctx.embed_polycyclic(e, q).expect("idempotent anchor"),
                );
                let rhs = ctx
                    .embed_polycyclic(e, &p.mul(q).expect("same alphabet"))
                    .expect("idempotent anchor");
                if lhs != rhs {
                    rec.fail(
                        vec![format!("s{e}"), p.to_string(), q.to_string()],
                        rhs.to_string(),
                        lhs.to_string(),
                    );
                }
            }
        }
    }

    // non-idempotent anchors are rejected, and their slice escapes itself
    for s in 0..n {
        if m.is_idempotent(s) {
            continue;
        }
        rec.case();
        if ctx.embed_polycyclic(s, &PElem::one(a)).is_ok() {
            rec.fail(
                vec![format!("s{s}")],
                "rejection of a non-idempotent anchor",
                "accepted",
            );
        }
        let x = BrxElem::pair(s, PPair::one(a));
        let sq = mul(ctx, &x, &x);
        if sq.parts().map(|(t, _)| t) == Some(s) {
            rec.fail(
                render(&[&x]),
                "the square leaves the anchored copy",
                sq.to_string(),
            );
        }
    }

    // an off-diagonal slice is never closed under the product
    rec.case();
    let skew = PPair::new(a.empty_word(), a.letter(0).expect("k >= 1")).expect("same alphabet");
    for s in 0..n {
        let x = BrxElem::pair(s, skew.clone());
        let sq = mul(ctx, &x, &x);
        if sq.parts().map(|(_, p)| p == &skew).unwrap_or(false) {
            rec.fail(
                render(&[&x]),
                "the square leaves the off-diagonal slice",
                sq.to_string(),
            );
        }
    }

    // conjugation embeds bijectively onto the anchored sub-copy
    let frag = ctx.fragment(bound);
    for (u, v) in conjugation_pairs(a) {
        for x in &frag {
            rec.case();
            let image = ctx.conjugate_embed(&u, &v, x).expect("valid words");
            let back = ctx.conjugate_retract(&u, &v, &image).expect("valid words");
            if &back != x {
                rec.fail(
                    vec![x.to_string(), u.to_string(), v.to_string()],
                    "retraction recovers the element",
                    back.to_string(),
                );
            }
            match (x.parts(), image.parts()) {
                (None, None) => {}
                (Some((s, p)), Some((is, ip))) => {
                    let structural = is == s
                        && ip.up() == &p.up().concat(&u).expect("same alphabet")
                        && ip.down() == &p.down().concat(&v).expect("same alphabet");
                    if !structural {
                        rec.fail(
                            vec![x.to_string(), u.to_string(), v.to_string()],
                            "image appends the anchor words",
                            image.to_string(),
                        );
                    }
                }
                _ => rec.fail(
                    vec![x.to_string(), u.to_string(), v.to_string()],
                    "zero maps to zero, pairs to pairs",
                    image.to_string(),
                ),
            }
        }
    }
}

fn conjugation_pairs(a: Alphabet) -> Vec<(Word, Word)> {
    let e = a.empty_word();
    let la = a.letter(0).expect("k >= 1");
    if a.size() >= 2 {
        let lb = a.letter(1).expect("k >= 2");
        let ab = la.concat(&lb).expect("same alphabet");
        vec![(e.clone(), e), (la.clone(), lb), (ab, la)]
    } else {
        let aa = la.concat(&la).expect("same alphabet");
        vec![(e.clone(), e), (la.clone(), la.clone()), (aa, la)]
    }
}

// ---------------------------------------------------------------------
// the one-letter cross-check

fn suite_bicyclic(ctx: &BrxContext, rec: &mut Rec) {
    let a = ctx.alphabet();
    let pow = |n: usize| {
        let mut v = a.empty_word();
        for _ in 0..n {
            v = v
                .concat(&a.letter(0).expect("k = 1"))
                .expect("same alphabet");
        }
        v
    };
    for i in 0..=4usize {
        for l in 0..=4usize {
            for m in 0..=4usize {
                for n in 0..=4usize {
                    rec.case();
                    let x = PElem::Pair(PPair::new(pow(i), pow(l)).expect("same alphabet"));
                    let y = PElem::Pair(PPair::new(pow(m), pow(n)).expect("same alphabet"));
                    let got = x.mul(&y).expect("same alphabet");
                    let c = l.min(m);
                    let want =
                        PElem::Pair(PPair::new(pow(i + m - c), pow(l + n - c)).expect("alphabet"));
                    if got != want {
                        rec.fail(
                            vec![x.to_string(), y.to_string()],
                            want.to_string(),
                            got.to_string(),
                        );
                    }
                }
            }
        }
    }
    rec.verdict = Some("all unary products follow the min formula".to_string());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find_ctx(label: &str) -> BrxContext {
        builtin_contexts()
            .into_iter()
            .find(|c| c.label() == label)
            .expect("label exists")
    }

    #[test]
    fn catalog_is_complete() {
        validate_catalog();
        assert_eq!(SuiteId::NAMED.len(), 12);
        assert_eq!(SuiteId::from_name("green"), Some(SuiteId::Green));
        assert_eq!(SuiteId::from_name("bicyclic"), Some(SuiteId::Bicyclic));
        assert_eq!(SuiteId::from_name("nonsense"), None);
    }

    #[test]
    fn matrix_shape() {
        let ctxs = builtin_contexts();
        assert_eq!(ctxs.len(), 16);
        assert!(ctxs.iter().any(|c| c.alphabet().size() == 1));
        assert!(ctxs.iter().any(|c| c.alphabet().size() == 2));
        let labels: BTreeSet<&str> = ctxs.iter().map(|c| c.label()).collect();
        assert_eq!(labels.len(), 16, "labels are unique");
        assert!(labels.contains("C2/id/k2"));
    }

    #[test]
    fn fragment_sizes_match_the_count_formula() {
        let ctx = find_ctx("C2/id/k2");
        assert_eq!(ctx.fragment(2).len(), 99);
        let trivial = find_ctx("trivial/one/k2");
        assert_eq!(trivial.fragment(1).len(), 10);
        let unary = find_ctx("C2/id/k1");
        assert_eq!(unary.fragment(3).len(), 33);
    }

    #[test]
    fn associativity_coverage_is_instrumented() {
        let ctx = find_ctx("C2/id/k2");
        let report = run_suite(&ctx, SuiteId::Associativity, &SuiteParams::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.cases, 19u64.pow(3));
        assert_eq!(
            report.verdict.as_deref(),
            Some("product cases covered: 1,2,3,4,5,6,7,8,9")
        );

        let unary = find_ctx("C2/id/k1");
        let report = run_suite(&unary, SuiteId::Associativity, &SuiteParams::default()).unwrap();
        assert!(report.passed());
        assert_eq!(
            report.verdict.as_deref(),
            Some("product cases covered: 1,2,3,4")
        );
    }

    #[test]
    fn bicyclic_requires_a_unary_alphabet() {
        let ctx = find_ctx("C2/id/k2");
        assert!(matches!(
            run_suite(&ctx, SuiteId::Bicyclic, &SuiteParams::default()),
            Err(VerifyError::NeedsUnaryAlphabet { .. })
        ));
        let unary = find_ctx("C2/id/k1");
        let report = run_suite(&unary, SuiteId::Bicyclic, &SuiteParams::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.cases, 625);
    }

    #[test]
    fn noncommuting_fixture_is_detected() {
        let ctx = find_ctx("lz2/one/k2");
        let report =
            run_suite(&ctx, SuiteId::CommutingIdempotents, &SuiteParams::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.verdict.as_deref().unwrap().contains("noncommuting"));
    }

    #[test]
    fn e_unitary_verdicts() {
        let yes = find_ctx("C2/id/k2");
        let report = run_suite(&yes, SuiteId::EUnitary, &SuiteParams::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.verdict.as_deref(), Some("0-E-unitary"));

        let no = find_ctx("C2/one/k2");
        let report = run_suite(&no, SuiteId::EUnitary, &SuiteParams::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report
            .verdict
            .as_deref()
            .unwrap()
            .contains("not 0-E-unitary"));
    }

    #[test]
    fn reports_are_deterministic() {
        let ctx = find_ctx("C2/one/k2");
        let params = SuiteParams::default();
        let mut a = run_suite(&ctx, SuiteId::Green, &params).unwrap();
        let mut b = run_suite(&ctx, SuiteId::Green, &params).unwrap();
        a.ms = 0;
        b.ms = 0;
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn failures_replay_through_the_grammar() {
        let ctx = find_ctx("C2/id/k2");
        let failure = CaseFailure {
            inputs: vec!["(s1,[a]^-1[b])".into(), "0".into()],
            expected: "x".into(),
            actual: "y".into(),
        };
        for input in &failure.inputs {
            crate::grammar::parse_elem(input, &ctx).unwrap();
        }
    }

    #[test]
    fn report_json_shape() {
        let ctx = find_ctx("trivial/one/k1");
        let report = run_suite(&ctx, SuiteId::Idempotents, &SuiteParams::default()).unwrap();
        let doc: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        for key in ["suite", "anchor", "context", "cases", "failures", "ms"] {
            assert!(doc.get(key).is_some(), "missing {key}");
        }
    }
}
