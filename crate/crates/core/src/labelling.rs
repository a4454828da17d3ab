//! The quasi-periodic labelling of the half-integers.
//!
//! Positions are kept in doubled coordinates: the half-integer `p` is stored as
//! `d = 2p`, so even `d` carry `a`-letters and odd `d` carry `b`-letters.
//! The bi-infinite word is the limit of the level words
//! `W_{k+1} = W_k W_k X_k W_k W_k` with `X_k = a . inv(W_k) . b`. Every level
//! word is both prefix and suffix of the next one, so position `d >= 0` reads
//! `W_L[d]` and `d < 0` reads `W_L[|W_L| + d]` for any level long enough.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dyadic::Dyadic;
use crate::error::{LabellingError, ParseError};

/// Highest level consulted when enumerating occurring words.
pub const MAX_LEVEL: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn is_a_type(self) -> bool {
        matches!(self, Letter::A | Letter::AInv)
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Letter::A | Letter::B)
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c {
            'a' => Letter::A,
            'A' => Letter::AInv,
            'b' => Letter::B,
            'B' => Letter::BInv,
            _ => return None,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over the labelling alphabet; capitals denote inverses.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverse the word and invert every letter.
    pub fn formal_inverse(&self) -> Word {
        Word(formal_inverse(&self.0))
    }

    /// Radius `k` of a word of length `2k + 1`.
    pub fn radius(&self) -> Result<usize, LabellingError> {
        if self.0.len().is_multiple_of(2) {
            return Err(LabellingError::EvenLength(self.0.len()));
        }
        Ok(self.0.len() / 2)
    }

    pub fn center(&self) -> Letter {
        self.0[self.0.len() / 2]
    }

    /// The central subword of radius `r`.
    pub fn central(&self, r: usize) -> Word {
        let k = self.0.len() / 2;
        Word(self.0[k - r..=k + r].to_vec())
    }

    /// Letters alternate between `a`-type and `b`-type.
    pub fn alternates(&self) -> bool {
        self.0.windows(2).all(|w| w[0].is_a_type() != w[1].is_a_type())
    }
}

pub fn formal_inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = ParseError;

    /// Accepts `abaB` as well as space separated letters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(Letter::from_char)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| ParseError::Word(s.to_string()))?;
        let w = Word(letters);
        if !w.alternates() {
            return Err(ParseError::Word(s.to_string()));
        }
        Ok(w)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A position in `Z/2`, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPos(pub i64);

impl HalfPos {
    pub fn from_dyadic(p: &Dyadic) -> Option<HalfPos> {
        let d = p.mul_pow2(1);
        d.is_integer().then(|| HalfPos(d.floor_i64()))
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

/// How unit `n` relates to a context word `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitClass {
    Pos,
    Neg,
    Neither,
}

/// Any labelling that can be inspected through finite windows.
pub trait Labelling {
    fn letter_at(&self, doubled: i64) -> Letter;

    /// Letters at doubled positions `[-n, n)` for the window of the given level.
    fn window(&self, level: usize) -> Vec<Letter>;
}

struct Levels {
    index: usize,
    word: Arc<Vec<Letter>>,
}

type OccurrenceTable = Arc<Vec<(Word, i64)>>;

/// The labelling built from a seed by the level recursion.
pub struct QPLabelling {
    seed: Vec<Letter>,
    levels: RwLock<Levels>,
    occurring: Mutex<HashMap<usize, OccurrenceTable>>,
}

impl fmt::Debug for QPLabelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QPLabelling")
            .field("seed", &Word(self.seed.clone()))
            .field("cached_level", &self.cached_level())
            .finish()
    }
}

impl Default for QPLabelling {
    fn default() -> Self {
        QPLabelling::new()
    }
}

impl QPLabelling {
    pub fn new() -> Self {
        QPLabelling::with_seed(Word(vec![Letter::A, Letter::B])).expect("default seed")
    }

    pub fn with_seed(seed: Word) -> Result<Self, LabellingError> {
        let s = &seed.0;
        let ok = !s.is_empty()
            && s.len().is_multiple_of(2)
            && s[0].is_a_type()
            && !s[s.len() - 1].is_a_type()
            && seed.alternates();
        if !ok {
            return Err(LabellingError::BadSeed);
        }
        Ok(QPLabelling {
            seed: seed.0.clone(),
            levels: RwLock::new(Levels {
                index: 1,
                word: Arc::new(seed.0),
            }),
            occurring: Mutex::new(HashMap::new()),
        })
    }

    pub fn seed(&self) -> Word {
        Word(self.seed.clone())
    }

    pub fn cached_level(&self) -> usize {
        self.levels.read().unwrap().index
    }

    /// `|W_level|`.
    pub fn level_len(&self, level: usize) -> usize {
        let mut n = self.seed.len();
        for _ in 1..level {
            n = 5 * n + 2;
        }
        n
    }

    /// Smallest level whose word is longer than `len`.
    pub fn level_longer_than(&self, len: usize) -> usize {
        let mut level = 1;
        while self.level_len(level) <= len {
            level += 1;
        }
        level
    }

    /// The cached top-level word, grown to at least `level`.
    fn snapshot(&self, level: usize) -> Arc<Vec<Letter>> {
        {
            let lv = self.levels.read().unwrap();
            if lv.index >= level {
                return lv.word.clone();
            }
        }
        let mut lv = self.levels.write().unwrap();
        while lv.index < level {
            let w = &*lv.word;
            let mut x = Vec::with_capacity(w.len() + 2);
            x.push(Letter::A);
            x.extend(formal_inverse(w));
            x.push(Letter::B);
            let mut next = Vec::with_capacity(5 * w.len() + 2);
            next.extend_from_slice(w);
            next.extend_from_slice(w);
            next.extend_from_slice(&x);
            next.extend_from_slice(w);
            next.extend_from_slice(w);
            lv.word = Arc::new(next);
            lv.index += 1;
        }
        lv.word.clone()
    }

    /// The level word `W_level`.
    pub fn level_word(&self, level: usize) -> Word {
        let top = self.snapshot(level);
        Word(top[..self.level_len(level)].to_vec())
    }

    /// Read-only access to positions `[lo, hi]` (doubled, inclusive).
    fn with_range<R>(&self, lo: i64, hi: i64, f: impl FnOnce(&dyn Fn(i64) -> Letter) -> R) -> R {
        let need = lo.unsigned_abs().max(hi.unsigned_abs() + 1) as usize;
        let level = self.level_longer_than(need);
        let top = self.snapshot(level);
        let len = top.len() as i64;
        let get = |d: i64| {
            if d >= 0 {
                top[d as usize]
            } else {
                top[(len + d) as usize]
            }
        };
        f(&get)
    }

    pub fn letter(&self, p: HalfPos) -> Letter {
        self.letter_at(p.0)
    }

    /// Letters at doubled positions `lo..=hi`.
    pub fn word_between(&self, lo: i64, hi: i64) -> Word {
        self.with_range(lo, hi, |get| Word((lo..=hi).map(get).collect()))
    }

    /// `W(x, k)`: the `2k + 1` letters centred on the `b`-position of `x`'s unit.
    pub fn context_point(&self, x: &Dyadic, k: usize) -> Word {
        self.context_unit(x.floor_i64(), k)
    }

    /// `W([n, n + 1], k)`.
    pub fn context_unit(&self, n: i64, k: usize) -> Word {
        let c = 2 * n + 1;
        self.word_between(c - k as i64, c + k as i64)
    }

    /// `W(J, k)` for `J` with half-integer endpoints and length at least 1.
    pub fn context_interval(&self, lo: &Dyadic, hi: &Dyadic, k: usize) -> Result<Word, LabellingError> {
        let (a, b) = match (HalfPos::from_dyadic(lo), HalfPos::from_dyadic(hi)) {
            (Some(a), Some(b)) if b.0 - a.0 >= 2 => (a.0, b.0),
            _ => return Err(LabellingError::BadInterval),
        };
        Ok(self.word_between(a + 1 - k as i64, b - 1 + k as i64))
    }

    pub fn unit_class(&self, n: i64, w: &Word) -> Result<UnitClass, LabellingError> {
        let k = w.radius()?;
        let here = self.context_unit(n, k);
        Ok(if &here == w {
            UnitClass::Pos
        } else if here == w.formal_inverse() {
            UnitClass::Neg
        } else {
            UnitClass::Neither
        })
    }

    /// Nearest unit `m` (positive side first on ties) outside `exclude` whose context is `w`.
    pub fn find_unit_with_context(
        &self,
        w: &Word,
        exclude: &HashSet<i64>,
        search_radius: u64,
    ) -> Result<i64, LabellingError> {
        let k = w.radius()? as i64;
        let r = search_radius as i64;
        self.with_range(-2 * r - 1 - k, 2 * r + 1 + k, |get| {
            let matches = |m: i64| {
                let c = 2 * m + 1;
                w.0.iter().enumerate().all(|(i, l)| get(c - k + i as i64) == *l)
            };
            let order = std::iter::once(0).chain((1..=r).flat_map(|d| [d, -d]));
            for m in order {
                if !exclude.contains(&m) && matches(m) {
                    return Ok(m);
                }
            }
            Err(LabellingError::NotFound {
                word: w.to_string(),
                radius: search_radius,
            })
        })
    }

    /// Every context word of radius `k` (centred on a `b`-position) that occurs in the
    /// labelling, each with the occurrence unit nearest 0.
    ///
    /// Windows grow until one more level adds no new word.
    pub fn occurring_contexts(&self, k: usize) -> Result<OccurrenceTable, LabellingError> {
        if let Some(t) = self.occurring.lock().unwrap().get(&k) {
            return Ok(t.clone());
        }
        let len = 2 * k + 1;
        let mut level = self.level_longer_than(len) + 2;
        let mut current = self.contexts_in_window(k, level);
        loop {
            if level + 1 > MAX_LEVEL {
                return Err(LabellingError::Unsaturated { len, level });
            }
            let next = self.contexts_in_window(k, level + 1);
            if next.len() == current.len() {
                break;
            }
            current = next;
            level += 1;
        }
        let mut table: Vec<(Word, i64)> = current.into_iter().collect();
        table.sort_by_key(|(_, n)| (n.unsigned_abs(), *n < 0));
        let table = Arc::new(table);
        self.occurring.lock().unwrap().insert(k, table.clone());
        Ok(table)
    }

    fn contexts_in_window(&self, k: usize, level: usize) -> HashMap<Word, i64> {
        let n = self.level_len(level) as i64;
        let k = k as i64;
        // units whose whole context lies in [-n, n)
        let first = (-n + k - 1).div_euclid(2) + 1;
        let last = (n - 1 - k - 1).div_euclid(2);
        let mut units: Vec<i64> = (first..=last).collect();
        units.sort_by_key(|m| (m.unsigned_abs(), *m < 0));
        self.with_range(-n, n - 1, |get| {
            let mut seen: HashMap<Word, i64> = HashMap::new();
            for m in units {
                let c = 2 * m + 1;
                let w = Word((c - k..=c + k).map(get).collect());
                seen.entry(w).or_insert(m);
            }
            seen
        })
    }
}

impl Labelling for QPLabelling {
    fn letter_at(&self, doubled: i64) -> Letter {
        self.with_range(doubled, doubled, |get| get(doubled))
    }

    fn window(&self, level: usize) -> Vec<Letter> {
        let n = self.level_len(level) as i64;
        self.with_range(-n, n - 1, |get| (-n..n).map(get).collect())
    }
}

/// A periodic labelling, used as a negative control for the quasi-periodicity report.
#[derive(Clone, Debug)]
pub struct PeriodicLabelling {
    pub pattern: Vec<Letter>,
}

impl Labelling for PeriodicLabelling {
    fn letter_at(&self, doubled: i64) -> Letter {
        self.pattern[doubled.rem_euclid(self.pattern.len() as i64) as usize]
    }

    fn window(&self, level: usize) -> Vec<Letter> {
        let n = (self.pattern.len() << level) as i64;
        (-n..n).map(|d| self.letter_at(d)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPeriodicityReport {
    pub window_len: usize,
    /// Minimal `G` such that every stretch of `G` letters contains every factor of length `l`.
    pub recurrence_gaps: BTreeMap<usize, usize>,
    pub inverse_closure: bool,
    /// Smallest period of the window below half its length. The window is the
    /// square of a level word, so half its length is always a period.
    #[serde(rename = "min_nonperiod")]
    pub min_period: Option<usize>,
}

pub fn verify_quasi_periodicity(
    lab: &impl Labelling,
    max_len: usize,
    window_level: usize,
) -> QuasiPeriodicityReport {
    let w = lab.window(window_level);
    let n = w.len();
    let mut gaps = BTreeMap::new();
    let mut inverse_closure = true;
    for l in 1..=max_len.min(n) {
        // factor -> (first start, last start, widest internal need)
        let mut occ: HashMap<&[Letter], (usize, usize, usize)> = HashMap::new();
        for p in 0..=n - l {
            occ.entry(&w[p..p + l])
                .and_modify(|e| {
                    e.2 = e.2.max(p - e.1 - 1 + l);
                    e.1 = p;
                })
                .or_insert((p, p, 0));
        }
        let gap = occ
            .values()
            .map(|&(first, last, inner)| (first + l).max(inner).max(n - last))
            .max()
            .unwrap_or(0);
        gaps.insert(l, gap);
        if inverse_closure {
            inverse_closure = occ
                .keys()
                .all(|f| occ.contains_key(formal_inverse(f).as_slice()));
        }
    }
    let min_period = (1..n / 2).find(|&p| (0..n - p).all(|i| w[i] == w[i + p]));
    QuasiPeriodicityReport {
        window_len: n,
        recurrence_gaps: gaps,
        inverse_closure,
        min_period,
    }
}

/// The reflection `x -> 2n + 1 - x` of the unit `[n, n + 1)`.
pub fn iota(x: &Dyadic) -> Dyadic {
    let n = Dyadic::from(x.floor());
    &(&n + &n) + &Dyadic::one() - x
}
