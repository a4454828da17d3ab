//! Elements of the group as finite context tables.
//!
//! An element `e` of radius `k` is stored as a map from every radius-`k` context
//! word occurring in the labelling to a *unit map* `g_w : [0, 1] -> R`. On the
//! unit `[n, n + 1]` the element acts by `x -> n + g_w(x - n)` where
//! `w = W(n, k)`. Operations that need the labelling live on [`Grho`]; elements
//! themselves are plain data.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dyadic::{Dyadic, Point};
use crate::error::{ElementError, ParseError};
use crate::labelling::{Letter, QPLabelling, Word};
use crate::plmap::{default_h_generators, FixedPiece, Interval, PlHomeo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Zeta,
    Chi,
}

/// One of the twelve generators `zeta_i^{+-1}`, `chi_i^{+-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub kind: GenKind,
    pub index: u8,
    pub inverse: bool,
}

impl Token {
    pub fn new(kind: GenKind, index: u8, inverse: bool) -> Token {
        assert!((1..=3).contains(&index));
        Token {
            kind,
            index,
            inverse,
        }
    }

    pub fn all() -> Vec<Token> {
        let mut out = Vec::with_capacity(12);
        for kind in [GenKind::Zeta, GenKind::Chi] {
            for index in 1..=3 {
                for inverse in [false, true] {
                    out.push(Token::new(kind, index, inverse));
                }
            }
        }
        out
    }

    pub fn inverse(self) -> Token {
        Token {
            inverse: !self.inverse,
            ..self
        }
    }

    fn slot(self) -> usize {
        let k = match self.kind {
            GenKind::Zeta => 0,
            GenKind::Chi => 1,
        };
        (k * 3 + self.index as usize - 1) * 2 + self.inverse as usize
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GenKind::Zeta => "zeta",
            GenKind::Chi => "chi",
        };
        write!(f, "{name}{}", self.index)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Token {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Token(s.to_string());
        let (body, inverse) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let (kind, rest) = if let Some(r) = body.strip_prefix("zeta") {
            (GenKind::Zeta, r)
        } else if let Some(r) = body.strip_prefix("chi") {
            (GenKind::Chi, r)
        } else {
            return Err(bad());
        };
        let index: u8 = rest.parse().map_err(|_| bad())?;
        if !(1..=3).contains(&index) {
            return Err(bad());
        }
        Ok(Token::new(kind, index, inverse))
    }
}

/// Parse a whitespace separated generator word such as `zeta1 chi2^-1`.
pub fn parse_gen_word(s: &str) -> Result<Vec<Token>, ParseError> {
    s.split_whitespace().map(str::parse).collect()
}

pub fn format_gen_word(w: &[Token]) -> String {
    w.iter().map(Token::to_string).collect::<Vec<_>>().join(" ")
}

pub fn invert_gen_word(w: &[Token]) -> Vec<Token> {
    w.iter().rev().map(|t| t.inverse()).collect()
}

/// A group element in table form. Construct through [`Grho`].
#[derive(Clone, PartialEq, Eq)]
pub struct GElement {
    k: usize,
    table: BTreeMap<Word, PlHomeo>,
    shift_bound: u64,
}

impl GElement {
    /// Build from raw data; completeness is checked by [`Grho::membership_check`].
    pub fn from_table(k: usize, table: BTreeMap<Word, PlHomeo>) -> Result<GElement, ElementError> {
        let mut shift_bound = 0i64;
        for (w, g) in &table {
            if w.len() != 2 * k + 1 {
                return Err(ElementError::OmegaLength {
                    len: w.len(),
                    radius: k,
                });
            }
            if g.domain() != Interval::unit() {
                return Err(ElementError::Pl(crate::error::PlError::NotUnitHomeo));
            }
            let r = g.range();
            shift_bound = shift_bound
                .max((-&r.lo).ceil_i64())
                .max((&r.hi - &Dyadic::one()).ceil_i64());
        }
        Ok(GElement {
            k,
            table,
            shift_bound: shift_bound as u64,
        })
    }

    pub fn radius(&self) -> usize {
        self.k
    }

    pub fn shift_bound(&self) -> u64 {
        self.shift_bound
    }

    pub fn table(&self) -> &BTreeMap<Word, PlHomeo> {
        &self.table
    }

    pub fn entry(&self, w: &Word) -> Option<&PlHomeo> {
        self.table.get(w)
    }

    pub fn is_identity(&self) -> bool {
        self.table.values().all(PlHomeo::is_identity)
    }

    /// Smallest radius at which entries sharing a central subword agree.
    pub fn reduced(&self) -> GElement {
        for r in 0..self.k {
            let mut grouped: HashMap<Word, &PlHomeo> = HashMap::new();
            let consistent = self.table.iter().all(|(w, g)| {
                let c = w.central(r);
                match grouped.get(&c) {
                    Some(prev) => *prev == g,
                    None => {
                        grouped.insert(c, g);
                        true
                    }
                }
            });
            if consistent {
                let table = grouped.into_iter().map(|(w, g)| (w, g.clone())).collect();
                return GElement {
                    k: r,
                    table,
                    shift_bound: self.shift_bound,
                };
            }
        }
        self.clone()
    }

    /// Per-context supports inside `[0, 1]`; empty for the identity.
    pub fn support_spec(&self) -> SupportSpec {
        SupportSpec {
            entries: self
                .table
                .iter()
                .filter_map(|(w, g)| {
                    let s = g.support();
                    (!s.is_empty()).then(|| (w.clone(), s))
                })
                .collect(),
        }
    }

    /// The unit map is the identity on some `[0, eps]`.
    fn fixes_right_of_zero(g: &PlHomeo) -> bool {
        let (x, y) = &g.nodes()[0];
        x == y && g.slopes()[0] == 0
    }

    /// The unit map is the identity on some `[1 - eps, 1]`.
    fn fixes_left_of_one(g: &PlHomeo) -> bool {
        let (x, y) = g.nodes().last().unwrap();
        x == y && *g.slopes().last().unwrap() == 0
    }
}

impl fmt::Debug for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GElement")
            .field("k", &self.k)
            .field("entries", &self.table.len())
            .field("shift_bound", &self.shift_bound)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    word: Word,
    map: PlHomeo,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    k: usize,
    entries: Vec<EntryJson>,
    shift_bound: u64,
}

impl Serialize for GElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ElementJson {
            k: self.k,
            entries: self
                .table
                .iter()
                .map(|(w, g)| EntryJson {
                    word: w.clone(),
                    map: g.clone(),
                })
                .collect(),
            shift_bound: self.shift_bound,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ElementJson::deserialize(deserializer)?;
        let table = raw.entries.into_iter().map(|e| (e.word, e.map)).collect();
        let e = GElement::from_table(raw.k, table).map_err(serde::de::Error::custom)?;
        if e.shift_bound != raw.shift_bound {
            return Err(serde::de::Error::custom(format!(
                "shift_bound {} does not match the entries ({})",
                raw.shift_bound, e.shift_bound
            )));
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSpec {
    pub entries: Vec<(Word, Vec<Interval>)>,
}

impl SupportSpec {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub ok: bool,
    pub radius: usize,
    pub witnessing_radius: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub budget: usize,
    pub seed: u64,
    pub restarts: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 20_000,
            seed: 0x5eed,
            restarts: 4,
        }
    }
}

/// The group attached to a labelling and a generating triple of `H`.
pub struct Grho {
    rho: Arc<QPLabelling>,
    nu: [PlHomeo; 3],
    gens: Vec<GElement>,
}

impl fmt::Debug for Grho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grho")
            .field("rho", &self.rho)
            .field("nu", &self.nu)
            .finish()
    }
}

impl Grho {
    pub fn new(rho: Arc<QPLabelling>, nu: [PlHomeo; 3]) -> Result<Grho, ElementError> {
        for v in &nu {
            if !v.classify()?.in_h {
                return Err(ElementError::NotInH);
            }
        }
        let mut g = Grho {
            rho,
            nu,
            gens: Vec::new(),
        };
        let mut gens = vec![None; 12];
        for t in Token::all() {
            let i = t.index as usize - 1;
            let base = match t.kind {
                GenKind::Zeta => g.zeta(i)?,
                GenKind::Chi => g.chi(i)?,
            };
            gens[t.slot()] = Some(if t.inverse { g.invert(&base)? } else { base });
        }
        g.gens = gens.into_iter().map(Option::unwrap).collect();
        Ok(g)
    }

    pub fn with_defaults() -> Grho {
        Grho::new(Arc::new(QPLabelling::new()), default_h_generators()).expect("default triple lies in H")
    }

    pub fn labelling(&self) -> &QPLabelling {
        &self.rho
    }

    pub fn labelling_arc(&self) -> Arc<QPLabelling> {
        self.rho.clone()
    }

    pub fn nu(&self) -> &[PlHomeo; 3] {
        &self.nu
    }

    pub fn generator(&self, t: Token) -> &GElement {
        &self.gens[t.slot()]
    }

    /// Tabulate an element of radius `k` from its action on representative units.
    ///
    /// `unit(n)` must return the element restricted to `[n, n + 1]`; it is called
    /// once per occurring context, at the occurrence nearest 0.
    pub fn tabulate(
        &self,
        k: usize,
        mut unit: impl FnMut(i64) -> Result<PlHomeo, ElementError>,
    ) -> Result<GElement, ElementError> {
        let occ = self.rho.occurring_contexts(k)?;
        let mut table = BTreeMap::new();
        for (w, n) in occ.iter() {
            let m = unit(*n)?;
            table.insert(w.clone(), m.shift(&Dyadic::from(-*n)));
        }
        Ok(GElement::from_table(k, table)?.reduced())
    }

    pub fn identity(&self) -> GElement {
        self.tabulate(0, |n| Ok(PlHomeo::identity(&unit_interval(n))))
            .expect("radius 0 contexts saturate")
    }

    fn zeta(&self, i: usize) -> Result<GElement, ElementError> {
        self.lambda_hom(&self.nu[i])
    }

    fn chi(&self, i: usize) -> Result<GElement, ElementError> {
        let nu = &self.nu[i];
        let half = Dyadic::frac(1, 1);
        let copy = |center: Letter, lo: Dyadic| -> Result<PlHomeo, ElementError> {
            let target = Interval::new(lo.clone(), &lo + &Dyadic::one())?;
            let orient = if center.is_positive() {
                crate::plmap::Orientation::Preserve
            } else {
                crate::plmap::Orientation::Reverse
            };
            Ok(nu.transport(&target, orient)?)
        };
        let occ = self.rho.occurring_contexts(1)?;
        let mut table = BTreeMap::new();
        for (w, _) in occ.iter() {
            let l = w.letters();
            let left = copy(l[0], -&half)?.restrict(&Dyadic::zero(), &half)?;
            let right = copy(l[2], half.clone())?.restrict(&half, &Dyadic::one())?;
            table.insert(w.clone(), left.concat(&right)?);
        }
        Ok(GElement::from_table(1, table)?.reduced())
    }

    /// The radius-0 element acting as `f` on `b`-units and as its flip on `B`-units.
    pub fn lambda_hom(&self, f: &PlHomeo) -> Result<GElement, ElementError> {
        if !f.classify()?.in_h {
            return Err(ElementError::NotInH);
        }
        self.tabulate(0, |n| {
            let w = self.rho.context_unit(n, 0);
            let g = if w.center().is_positive() { f.clone() } else { f.flip() };
            Ok(g.shift(&Dyadic::from(n)))
        })
    }

    /// The special element: `lambda(f)` on units whose radius-`l` context is `W` or its
    /// inverse, the identity elsewhere.
    pub fn special(&self, w: &Word, l: usize, f: &PlHomeo) -> Result<GElement, ElementError> {
        if w.len() != 2 * l + 1 {
            return Err(ElementError::OmegaLength { len: w.len(), radius: l });
        }
        if !f.classify()?.in_fprime {
            return Err(ElementError::NotInFPrime);
        }
        let winv = w.formal_inverse();
        let occ = self.rho.occurring_contexts(l)?;
        let mut table = BTreeMap::new();
        for (ctx, _) in occ.iter() {
            let g = if ctx == w || *ctx == winv {
                if ctx.center().is_positive() {
                    f.clone()
                } else {
                    f.flip()
                }
            } else {
                PlHomeo::unit_identity()
            };
            table.insert(ctx.clone(), g);
        }
        Ok(GElement::from_table(l, table)?.reduced())
    }

    /// The unit map of `e` at unit `n`, in unit coordinates.
    pub fn unit_map<'a>(&self, e: &'a GElement, n: i64) -> Result<&'a PlHomeo, ElementError> {
        let w = self.rho.context_unit(n, e.k);
        e.table
            .get(&w)
            .ok_or_else(|| ElementError::MissingContext(w.to_string()))
    }

    /// `e` restricted to `[n, n + 1]`.
    pub fn unit_on(&self, e: &GElement, n: i64) -> Result<PlHomeo, ElementError> {
        Ok(self.unit_map(e, n)?.shift(&Dyadic::from(n)))
    }

    /// `e` restricted to `[lo, hi]` for integers `lo < hi`.
    pub fn line_map(&self, e: &GElement, lo: i64, hi: i64) -> Result<PlHomeo, ElementError> {
        let pieces = (lo..hi)
            .map(|n| self.unit_on(e, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PlHomeo::concat_all(&pieces)?)
    }

    pub fn evaluate(&self, e: &GElement, x: &Dyadic) -> Result<Dyadic, ElementError> {
        let n = x.floor_i64();
        let g = self.unit_map(e, n)?;
        let nd = Dyadic::from(n);
        Ok(&g.evaluate(&(x - &nd))? + &nd)
    }

    pub fn evaluate_point(&self, e: &GElement, x: &Point) -> Result<Point, ElementError> {
        let n = x.floor().to_integer();
        let g = self.unit_map(e, n.to_i64().expect("unit index fits in i64"))?;
        let nr = Point::from_integer(n);
        Ok(g.evaluate_point(&(x - &nr))? + nr)
    }

    /// `x -> (x . e1) . e2`.
    pub fn then_compose(&self, e1: &GElement, e2: &GElement) -> Result<GElement, ElementError> {
        let d1 = e1.shift_bound as i64;
        let k = e1.k.max(e2.k + 2 * d1 as usize);
        self.tabulate(k, |n| {
            let m1 = self.unit_on(e1, n)?;
            let r = m1.range();
            let l2 = self.line_map(e2, n - d1, n + 1 + d1)?.restrict(&r.lo, &r.hi)?;
            Ok(m1.then(&l2)?)
        })
    }

    pub fn compose_all(&self, es: &[&GElement]) -> Result<GElement, ElementError> {
        let mut acc = self.identity();
        for e in es {
            acc = self.then_compose(&acc, e)?;
        }
        Ok(acc)
    }

    pub fn invert(&self, e: &GElement) -> Result<GElement, ElementError> {
        let d = e.shift_bound as i64;
        self.tabulate(e.k + 2 * d as usize, |n| {
            let l = self.line_map(e, n - d, n + 1 + d)?;
            Ok(l.inverse().restrict(&Dyadic::from(n), &Dyadic::from(n + 1))?)
        })
    }

    /// `h^-1 e h`, the conjugate `e^h` under right actions.
    pub fn conjugate(&self, e: &GElement, h: &GElement) -> Result<GElement, ElementError> {
        let hi = self.invert(h)?;
        self.compose_all(&[&hi, e, h])
    }

    /// The table of `e` re-expressed at a radius `k >= e.radius()`.
    pub fn lift(&self, e: &GElement, k: usize) -> Result<GElement, ElementError> {
        assert!(k >= e.k);
        let occ = self.rho.occurring_contexts(k)?;
        let mut table = BTreeMap::new();
        for (w, _) in occ.iter() {
            let c = w.central(e.k);
            let g = e
                .table
                .get(&c)
                .ok_or_else(|| ElementError::MissingContext(c.to_string()))?;
            table.insert(w.clone(), g.clone());
        }
        GElement::from_table(k, table)
    }

    /// Pointwise equality on the whole line.
    pub fn equals(&self, a: &GElement, b: &GElement) -> Result<bool, ElementError> {
        let k = a.k.max(b.k);
        Ok(self.lift(a, k)? == self.lift(b, k)?)
    }

    pub fn word_to_element(&self, word: &[Token]) -> Result<GElement, ElementError> {
        let mut acc = self.identity();
        for t in word {
            acc = self.then_compose(&acc, self.generator(*t))?;
        }
        Ok(acc)
    }

    pub fn parse_word(&self, s: &str) -> Result<GElement, ElementError> {
        self.word_to_element(&parse_gen_word(s)?)
    }

    /// Check completeness, the flip rule and continuity across unit boundaries.
    pub fn membership_check(&self, e: &GElement) -> Result<MembershipReport, ElementError> {
        let mut failures = Vec::new();
        let occ = self.rho.occurring_contexts(e.k)?;
        let occurring: HashSet<&Word> = occ.iter().map(|(w, _)| w).collect();
        for (w, _) in occ.iter() {
            if !e.table.contains_key(w) {
                failures.push(format!("missing entry for occurring context {w}"));
            }
        }
        for w in e.table.keys() {
            if !occurring.contains(w) {
                failures.push(format!("entry for non-occurring context {w}"));
            }
        }
        for (w, g) in &e.table {
            let wi = w.formal_inverse();
            if let Some(gi) = e.table.get(&wi) {
                if w < &wi && *gi != g.flip() {
                    failures.push(format!("flip rule fails for pair ({w}, {wi})"));
                }
            }
        }
        // neighbouring units n, n + 1 are both visible in radius k + 2 contexts
        let wide = self.rho.occurring_contexts(e.k + 2)?;
        for (w, _) in wide.iter() {
            let l = w.letters();
            // the radius-(k+2) word centred at unit n covers units n and n + 1 at radius k
            let center = e.k + 2;
            let left = Word(l[center - e.k..=center + e.k].to_vec());
            let right = Word(l[center + 2 - e.k..=center + 2 + e.k].to_vec());
            if let (Some(g), Some(h)) = (e.table.get(&left), e.table.get(&right)) {
                let gl = &g.range().hi - &Dyadic::one();
                if gl != h.range().lo {
                    failures.push(format!("discontinuity between contexts {left} and {right}"));
                }
            }
        }
        let witnessing_radius = e.reduced().k;
        Ok(MembershipReport {
            ok: failures.is_empty(),
            radius: e.k,
            witnessing_radius,
            failures,
        })
    }

    /// Scan units `0, 1, -1, 2, ...` for a fixed point; dyadic points win within a unit.
    pub fn find_fixed_point(&self, e: &GElement, search_radius: u64) -> Result<Point, ElementError> {
        let r = search_radius as i64;
        for n in std::iter::once(0).chain((1..=r).flat_map(|d| [d, -d])) {
            if let Some(p) = self.fixed_in_unit(e, n)?.into_iter().next() {
                return Ok(p);
            }
        }
        Err(ElementError::NoFixedPoint(search_radius))
    }

    /// Fixed points of `e` in `[n, n + 1]`, dyadic ones first.
    fn fixed_in_unit(&self, e: &GElement, n: i64) -> Result<Vec<Point>, ElementError> {
        let g = self.unit_map(e, n)?;
        let nr = Point::from_integer(n.into());
        let mut dyadic = Vec::new();
        let mut other = Vec::new();
        for piece in g.fixed_pieces() {
            match piece {
                FixedPiece::Segment(s) => dyadic.push(s.lo.to_rational() + &nr),
                FixedPiece::Point(p) => {
                    if Dyadic::from_rational(&p).is_some() {
                        dyadic.push(p + &nr)
                    } else {
                        other.push(p + &nr)
                    }
                }
            }
        }
        dyadic.extend(other);
        Ok(dyadic)
    }

    /// The fixed point of `e` closest to `target` within `search_radius` units.
    pub fn nearest_fixed_point(
        &self,
        e: &GElement,
        target: &Dyadic,
        search_radius: u64,
    ) -> Result<Point, ElementError> {
        let t = target.to_rational();
        let c = target.floor_i64();
        let mut best: Option<Point> = None;
        for d in 0..=search_radius as i64 {
            if let Some(b) = &best {
                // every point of units at distance d is at least d - 1 away
                if Point::from_integer((d - 1).into()) > (b - &t).abs() {
                    break;
                }
            }
            let units: Vec<i64> = if d == 0 { vec![c] } else { vec![c + d, c - d] };
            for n in units {
                let g = self.unit_map(e, n)?;
                let nr = Point::from_integer(n.into());
                for piece in g.fixed_pieces() {
                    let p = match piece {
                        FixedPiece::Point(p) => p + &nr,
                        FixedPiece::Segment(s) => {
                            let (lo, hi) = (s.lo.to_rational() + &nr, s.hi.to_rational() + &nr);
                            if t < lo {
                                lo
                            } else if t > hi {
                                hi
                            } else {
                                t.clone()
                            }
                        }
                    };
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            let (dp, db) = ((&p - &t).abs(), (b - &t).abs());
                            dp < db || (dp == db && p < *b)
                        }
                    };
                    if better {
                        best = Some(p);
                    }
                }
            }
        }
        best.ok_or(ElementError::NoFixedPoint(search_radius))
    }

    /// Apply a generator word to a dyadic point, one generator at a time.
    pub fn apply_word(&self, word: &[Token], x: &Dyadic) -> Result<Dyadic, ElementError> {
        let mut y = x.clone();
        for t in word {
            y = self.evaluate(self.generator(*t), &y)?;
        }
        Ok(y)
    }

    /// Best-first search for a word moving `i` into the open interval `j`.
    ///
    /// Only the two image endpoints are tracked. Nodes are scored by how far the
    /// image sticks out of `j`, then by its length. The budget counts expansions
    /// and is split between a search from the empty word and seeded restarts from
    /// short random prefixes.
    pub fn proximal_search(
        &self,
        i: &Interval,
        j: &Interval,
        cfg: &SearchConfig,
    ) -> Result<Vec<Token>, ElementError> {
        let inside = |lo: &Dyadic, hi: &Dyadic| &j.lo < lo && hi < &j.hi;
        if inside(&i.lo, &i.hi) {
            return Ok(Vec::new());
        }
        let tokens = Token::all();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let rounds = cfg.restarts + 1;
        let mut spent = 0usize;
        for round in 0..rounds {
            let share = (cfg.budget - spent) / (rounds - round);
            let mut prefix = Vec::new();
            if round > 0 {
                let len = rng.gen_range(1..=4);
                for _ in 0..len {
                    prefix.push(*tokens.choose(&mut rng).unwrap());
                }
            }
            let (found, used) = self.best_first(i, j, &prefix, share)?;
            spent += used;
            if let Some(word) = found {
                let lo = self.apply_word(&word, &i.lo)?;
                let hi = self.apply_word(&word, &i.hi)?;
                if inside(&lo, &hi) {
                    return Ok(word);
                }
            }
        }
        Err(ElementError::Inconclusive(spent))
    }

    fn best_first(
        &self,
        i: &Interval,
        j: &Interval,
        prefix: &[Token],
        budget: usize,
    ) -> Result<(Option<Vec<Token>>, usize), ElementError> {
        struct Node {
            lo: Dyadic,
            hi: Dyadic,
            parent: Option<usize>,
            token: Option<Token>,
        }
        let score = |lo: &Dyadic, hi: &Dyadic| {
            let zero = Dyadic::zero();
            let out = (&j.lo - lo).max(zero.clone()) + (hi - &j.hi).max(zero);
            (out, hi - lo)
        };
        let word_of = |nodes: &[Node], mut at: usize| {
            let mut w = Vec::new();
            while let Some(t) = nodes[at].token {
                w.push(t);
                at = nodes[at].parent.unwrap();
            }
            w.reverse();
            w
        };
        let start_lo = self.apply_word(prefix, &i.lo)?;
        let start_hi = self.apply_word(prefix, &i.hi)?;
        let mut nodes = vec![Node {
            lo: start_lo.clone(),
            hi: start_hi.clone(),
            parent: None,
            token: None,
        }];
        let mut seen: HashSet<(Dyadic, Dyadic)> = HashSet::new();
        seen.insert((start_lo.clone(), start_hi.clone()));
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((score(&start_lo, &start_hi), 0usize)));
        let mut used = 0;
        while let Some(Reverse((_, at))) = heap.pop() {
            if used >= budget {
                break;
            }
            used += 1;
            for t in Token::all() {
                if nodes[at].token == Some(t.inverse()) {
                    continue;
                }
                let g = self.generator(t);
                let lo = self.evaluate(g, &nodes[at].lo)?;
                let hi = self.evaluate(g, &nodes[at].hi)?;
                if !seen.insert((lo.clone(), hi.clone())) {
                    continue;
                }
                let done = j.lo < lo && hi < j.hi;
                let s = score(&lo, &hi);
                nodes.push(Node {
                    lo,
                    hi,
                    parent: Some(at),
                    token: Some(t),
                });
                let id = nodes.len() - 1;
                if done {
                    let mut w = prefix.to_vec();
                    w.extend(word_of(&nodes, id));
                    return Ok((Some(w), used));
                }
                heap.push(Reverse((s, id)));
            }
        }
        Ok((None, used))
    }

    /// Both one-sided neighbourhoods of the integer `n` are fixed pointwise.
    pub fn fixes_neighbourhood_of_integer(&self, e: &GElement, n: i64) -> Result<bool, ElementError> {
        Ok(GElement::fixes_right_of_zero(self.unit_map(e, n)?)
            && GElement::fixes_left_of_one(self.unit_map(e, n - 1)?))
    }

    /// Closure of the support of `e` inside `[lo, hi]`, as line intervals.
    pub fn support_between(&self, e: &GElement, lo: i64, hi: i64) -> Result<Vec<Interval>, ElementError> {
        let mut out: Vec<Interval> = Vec::new();
        for n in lo..hi {
            let nd = Dyadic::from(n);
            for s in self.unit_map(e, n)?.support() {
                let s = s.shift(&nd);
                match out.last_mut() {
                    Some(last) if last.hi == s.lo => last.hi = s.hi,
                    _ => out.push(s),
                }
            }
        }
        Ok(out)
    }

    /// Every unit index in `[-radius, radius)` whose unit map is not the identity.
    pub fn moved_units(&self, e: &GElement, radius: i64) -> Result<Vec<i64>, ElementError> {
        let mut out = Vec::new();
        for n in -radius..radius {
            if !self.unit_map(e, n)?.is_identity() {
                out.push(n);
            }
        }
        Ok(out)
    }

    /// A uniformly random generator word of the given length.
    pub fn random_word(rng: &mut impl Rng, len: usize) -> Vec<Token> {
        let all = Token::all();
        (0..len).map(|_| *all.choose(rng).unwrap()).collect()
    }

    /// Is `x` fixed by `e`?
    pub fn is_fixed(&self, e: &GElement, x: &Point) -> Result<bool, ElementError> {
        Ok(self.evaluate_point(e, x)? == *x)
    }

}

pub fn unit_interval(n: i64) -> Interval {
    Interval {
        lo: Dyadic::from(n),
        hi: Dyadic::from(n + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::HalfPos;
    use crate::plmap::thompson_x0;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn tok(s: &str) -> Token {
        s.parse().unwrap()
    }

    /// Direct evaluation of a generator from its defining formulas.
    fn oracle(g: &Grho, t: Token, x: &Dyadic) -> Dyadic {
        let rho = g.labelling();
        let nu = &g.nu()[t.index as usize - 1];
        let nu = if t.inverse { nu.inverse() } else { nu.clone() };
        match t.kind {
            GenKind::Zeta => {
                let n = Dyadic::from(x.floor_i64());
                let b = rho.letter(HalfPos(2 * x.floor_i64() + 1));
                let one = Dyadic::one();
                if b == Letter::B {
                    &n + &nu.evaluate(&(x - &n)).unwrap()
                } else {
                    &n + &one - nu.evaluate(&(&n + &one - x)).unwrap()
                }
            }
            GenKind::Chi => {
                let half = d("1/2");
                let n = (x + &half).floor_i64();
                let a = rho.letter(HalfPos(2 * n));
                let lo = Dyadic::from(n) - &half;
                let hi = Dyadic::from(n) + &half;
                if a == Letter::A {
                    &lo + &nu.evaluate(&(x - &lo)).unwrap()
                } else {
                    &hi - &nu.evaluate(&(&hi - x)).unwrap()
                }
            }
        }
    }

    #[test]
    fn generator_tables() {
        let g = Grho::with_defaults();
        let z1 = g.generator(tok("zeta1"));
        assert_eq!(z1.radius(), 0);
        assert_eq!(z1.table().len(), 2);
        assert_eq!(z1.shift_bound(), 0);
        for n in -5..5 {
            assert_eq!(g.evaluate(z1, &Dyadic::from(n)).unwrap(), Dyadic::from(n));
        }
        let c1 = g.generator(tok("chi1"));
        assert!(c1.shift_bound() <= 1);
        for n in -5..5 {
            let h = Dyadic::from(n) + d("1/2");
            assert_eq!(g.evaluate(c1, &h).unwrap(), h);
        }
        assert_eq!(g.lambda_hom(&g.nu()[0]).unwrap(), *z1);
        assert_eq!(g.invert(z1).unwrap(), *g.generator(tok("zeta1^-1")));
    }

    #[test]
    fn generators_match_oracle() {
        let g = Grho::with_defaults();
        let xs: Vec<Dyadic> = (-64..64).map(|i| Dyadic::frac(i * 3 + 1, 4)).collect();
        for t in Token::all() {
            for x in &xs {
                assert_eq!(g.evaluate(g.generator(t), x).unwrap(), oracle(&g, t, x), "{t} at {x}");
            }
        }
    }

    #[test]
    fn compose_and_invert() {
        let g = Grho::with_defaults();
        let id = g.identity();
        let e = g.parse_word("zeta1 chi2 zeta3^-1 chi1").unwrap();
        assert_eq!(g.then_compose(&e, &id).unwrap(), e);
        assert!(g.then_compose(&e, &g.invert(&e).unwrap()).unwrap().is_identity());
        assert_eq!(g.invert(&g.invert(&e).unwrap()).unwrap(), e);
        let xs: Vec<Dyadic> = (-40..40).map(|i| Dyadic::frac(i * 5 + 3, 3)).collect();
        let word = parse_gen_word("zeta1 chi2 zeta3^-1 chi1").unwrap();
        for x in &xs {
            let mut y = x.clone();
            for t in &word {
                y = oracle(&g, *t, &y);
            }
            assert_eq!(g.evaluate(&e, x).unwrap(), y);
        }
        assert!(g.parse_word("").unwrap().is_identity());
        assert!(g.parse_word("zeta1 zeta1^-1").unwrap().is_identity());
        assert!(g.parse_word("zeta4").is_err());
    }

    #[test]
    fn equality_and_reduction() {
        let g = Grho::with_defaults();
        let z1 = g.generator(tok("zeta1"));
        let z2 = g.generator(tok("zeta2"));
        assert!(g.equals(z1, z1).unwrap());
        assert!(!g.equals(z1, z2).unwrap());
        let lifted = g.lift(z1, 2).unwrap();
        assert_eq!(lifted.radius(), 2);
        assert!(g.equals(&lifted, z1).unwrap());
        assert_eq!(lifted.reduced(), *z1);
        assert_eq!(g.lift(&g.identity(), 3).unwrap().reduced().radius(), 0);
        assert_eq!(z1.reduced().reduced(), *z1);
    }

    #[test]
    fn lambda_rejects_outside_h() {
        let g = Grho::with_defaults();
        assert!(matches!(g.lambda_hom(&thompson_x0()), Err(ElementError::NotInH)));
        assert!(g.lambda_hom(&PlHomeo::unit_identity()).unwrap().is_identity());
        let [n1, n2, _] = default_h_generators();
        let prod = g.lambda_hom(&n1.then(&n2).unwrap()).unwrap();
        let comp = g.then_compose(g.generator(tok("zeta1")), g.generator(tok("zeta2"))).unwrap();
        assert!(g.equals(&prod, &comp).unwrap());
    }

    #[test]
    fn special_elements() {
        let g = Grho::with_defaults();
        let f = PlHomeo::from_strs(&[("0", "0"), ("1/4", "1/4"), ("3/8", "5/16"), ("7/16", "3/8"), ("1/2", "1/2"), ("1", "1")]);
        let w: Word = "babab".parse().unwrap();
        let s = g.special(&w, 2, &f).unwrap();
        let moved = g.moved_units(&s, 20).unwrap();
        assert!(moved.contains(&0) && moved.contains(&4));
        for n in &moved {
            assert_ne!(g.labelling().unit_class(*n, &w).unwrap(), crate::labelling::UnitClass::Neither);
        }
        assert!(g.special(&w, 2, &PlHomeo::unit_identity()).unwrap().is_identity());
        assert!(matches!(g.special(&w, 1, &f), Err(ElementError::OmegaLength { .. })));
        assert!(matches!(g.special(&w, 2, &thompson_x0()), Err(ElementError::NotInFPrime)));
        let absent: Word = "bababababab".parse().unwrap();
        let r = g.special(&absent, 5, &f).unwrap();
        assert!(g.membership_check(&r).unwrap().ok);
        assert!(g.membership_check(&s).unwrap().ok);
    }

    #[test]
    fn membership_negative_control() {
        let g = Grho::with_defaults();
        let z1 = g.generator(tok("zeta1"));
        assert!(g.membership_check(z1).unwrap().ok);
        let mut table = z1.table().clone();
        let b: Word = "B".parse().unwrap();
        table.insert(b, g.nu()[0].clone());
        let bad = GElement::from_table(0, table).unwrap();
        let report = g.membership_check(&bad).unwrap();
        assert!(!report.ok);
        assert!(report.failures.iter().any(|f| f.contains("(B, b)") || f.contains("(b, B)")));
    }

    #[test]
    fn fixed_points() {
        let g = Grho::with_defaults();
        assert_eq!(g.find_fixed_point(&g.identity(), 4).unwrap(), Point::from_integer(0.into()));
        let z1 = g.generator(tok("zeta1"));
        let p = g.find_fixed_point(z1, 4).unwrap();
        assert!(p.is_integer());
        let e = g.parse_word("chi1 zeta2 chi3^-1 zeta1 chi2 zeta3").unwrap();
        let p = g.find_fixed_point(&e, 200).unwrap();
        assert!(g.is_fixed(&e, &p).unwrap());
        let q = g.nearest_fixed_point(&e, &d("1/4"), 200).unwrap();
        assert!(g.is_fixed(&e, &q).unwrap());
    }

    #[test]
    fn proximal_trivial_cases() {
        let g = Grho::with_defaults();
        let cfg = SearchConfig::default();
        let i = Interval::of("1/4", "1/2");
        assert!(g.proximal_search(&i, &Interval::unit(), &cfg).unwrap().is_empty());
        let zero = SearchConfig { budget: 0, ..cfg };
        assert!(matches!(
            g.proximal_search(&Interval::of("0", "2"), &Interval::unit(), &zero),
            Err(ElementError::Inconclusive(0))
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = Grho::with_defaults();
        let e = g.parse_word("zeta1 chi2").unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.starts_with(r#"{"k":"#));
        let back: GElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn token_syntax() {
        assert_eq!(tok("chi2^-1").to_string(), "chi2^-1");
        assert_eq!(format_gen_word(&parse_gen_word("zeta1  chi3").unwrap()), "zeta1 chi3");
        assert!("zeta0".parse::<Token>().is_err());
        assert!("xi1".parse::<Token>().is_err());
    }
}
