//! Piecewise-linear homeomorphisms between compact dyadic intervals.
//!
//! A [`PlHomeo`] is stored as its list of nodes `(x, f(x))`. Every segment
//! has slope `2^j`, all nodes are dyadic, and collinear interior nodes are
//! removed, so two maps are equal exactly when their node lists are equal.
//! Composition follows the right-action convention: `f.then(&g)` first
//! applies `f`, then `g`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dyadic::{Dyadic, Point};
use crate::error::PlError;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self, PlError> {
        if lo >= hi {
            return Err(PlError::EmptyInterval(lo, hi));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval {
            lo: Dyadic::zero(),
            hi: Dyadic::one(),
        }
    }

    /// Panicking constructor for literals.
    pub fn of(lo: &str, hi: &str) -> Self {
        Interval::new(lo.parse().unwrap(), hi.parse().unwrap()).unwrap()
    }

    pub fn len(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_point(&self, x: &Point) -> bool {
        &self.lo.to_rational() <= x && x <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `other` sits in the open interior of `self`.
    pub fn contains_interval_strictly(&self, other: &Interval) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    pub fn pad(&self, by: &Dyadic) -> Interval {
        Interval {
            lo: &self.lo - by,
            hi: &self.hi + by,
        }
    }

    pub fn shift(&self, by: &Dyadic) -> Interval {
        Interval {
            lo: &self.lo + by,
            hi: &self.hi + by,
        }
    }

    /// Image under the reflection `s -> 1 - s` of the unit interval.
    pub fn unit_flip(&self) -> Interval {
        Interval {
            lo: Dyadic::one() - &self.hi,
            hi: Dyadic::one() - &self.lo,
        }
    }

    pub fn midpoint(&self) -> Dyadic {
        (&self.lo + &self.hi).half()
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserve,
    Reverse,
}

/// Membership flags for maps of `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub in_f: bool,
    pub in_h: bool,
    pub in_fprime: bool,
}

/// A connected piece of the fixed-point set of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPiece {
    Segment(Interval),
    Point(Point),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlHomeo {
    nodes: Vec<(Dyadic, Dyadic)>,
    // log2 slope of each segment, derived from `nodes`
    slopes: Vec<i64>,
}

impl PlHomeo {
    pub fn new(nodes: Vec<(Dyadic, Dyadic)>) -> Result<Self, PlError> {
        if nodes.len() < 2 {
            return Err(PlError::TooFewNodes);
        }
        let mut slopes = Vec::with_capacity(nodes.len() - 1);
        for (i, w) in nodes.windows(2).enumerate() {
            let dx = &w[1].0 - &w[0].0;
            let dy = &w[1].1 - &w[0].1;
            if !dx.is_positive() || !dy.is_positive() {
                return Err(PlError::NotIncreasing(i + 1));
            }
            slopes.push(Dyadic::log2_ratio(&dy, &dx).ok_or(PlError::SlopeNotPowerOfTwo(i))?);
        }
        Ok(Self::canonical(nodes, slopes))
    }

    /// Build from string literals; panics on malformed input.
    pub fn from_strs(nodes: &[(&str, &str)]) -> Self {
        PlHomeo::new(
            nodes
                .iter()
                .map(|(x, y)| (x.parse().unwrap(), y.parse().unwrap()))
                .collect(),
        )
        .unwrap()
    }

    fn canonical(nodes: Vec<(Dyadic, Dyadic)>, slopes: Vec<i64>) -> Self {
        let mut out_nodes = Vec::with_capacity(nodes.len());
        let mut out_slopes = Vec::with_capacity(slopes.len());
        let last = nodes.len() - 1;
        for (i, node) in nodes.into_iter().enumerate() {
            if i > 0 && i < last && slopes[i - 1] == slopes[i] {
                continue;
            }
            if i > 0 {
                out_slopes.push(slopes[i - 1]);
            }
            out_nodes.push(node);
        }
        PlHomeo {
            nodes: out_nodes,
            slopes: out_slopes,
        }
    }

    pub fn identity(domain: &Interval) -> Self {
        PlHomeo {
            nodes: vec![
                (domain.lo.clone(), domain.lo.clone()),
                (domain.hi.clone(), domain.hi.clone()),
            ],
            slopes: vec![0],
        }
    }

    pub fn unit_identity() -> Self {
        PlHomeo::identity(&Interval::unit())
    }

    /// The affine map `src -> dst`; the length ratio must be a power of 2.
    pub fn affine(src: &Interval, dst: &Interval) -> Result<Self, PlError> {
        PlHomeo::new(vec![
            (src.lo.clone(), dst.lo.clone()),
            (src.hi.clone(), dst.hi.clone()),
        ])
    }

    pub fn nodes(&self) -> &[(Dyadic, Dyadic)] {
        &self.nodes
    }

    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    pub fn domain(&self) -> Interval {
        Interval {
            lo: self.nodes[0].0.clone(),
            hi: self.nodes[self.nodes.len() - 1].0.clone(),
        }
    }

    pub fn range(&self) -> Interval {
        Interval {
            lo: self.nodes[0].1.clone(),
            hi: self.nodes[self.nodes.len() - 1].1.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.nodes.len() == 2 && self.slopes[0] == 0 && self.nodes[0].0 == self.nodes[0].1
    }

    /// Index of the segment containing `x`; nodes belong to the segment on their right,
    /// except the last node.
    fn segment_of(&self, x: &Dyadic) -> usize {
        let idx = self.nodes.partition_point(|(nx, _)| nx <= x);
        idx.saturating_sub(1).min(self.slopes.len() - 1)
    }

    fn check_domain(&self, x: &Dyadic) -> Result<(), PlError> {
        let dom = self.domain();
        if !dom.contains(x) {
            return Err(PlError::OutsideDomain {
                x: x.clone(),
                lo: dom.lo,
                hi: dom.hi,
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &Dyadic) -> Result<Dyadic, PlError> {
        self.check_domain(x)?;
        let i = self.segment_of(x);
        let (x0, y0) = &self.nodes[i];
        Ok(y0 + (x - x0).mul_pow2(self.slopes[i]))
    }

    /// Evaluate at an exact rational point.
    pub fn evaluate_point(&self, x: &Point) -> Result<Point, PlError> {
        let dom = self.domain();
        if !dom.contains_point(x) {
            return Err(PlError::OutsideDomain {
                x: Dyadic::floor_rational(x, 16),
                lo: dom.lo,
                hi: dom.hi,
            });
        }
        let idx = self.nodes.partition_point(|(nx, _)| &nx.to_rational() <= x);
        let i = idx.saturating_sub(1).min(self.slopes.len() - 1);
        let (x0, y0) = &self.nodes[i];
        let slope = Dyadic::pow2(self.slopes[i]).to_rational();
        Ok(y0.to_rational() + (x - x0.to_rational()) * slope)
    }

    /// Preimage of `y` (which must lie in the range).
    pub fn preimage(&self, y: &Dyadic) -> Result<Dyadic, PlError> {
        let rng = self.range();
        if !rng.contains(y) {
            return Err(PlError::OutsideDomain {
                x: y.clone(),
                lo: rng.lo,
                hi: rng.hi,
            });
        }
        let idx = self.nodes.partition_point(|(_, ny)| ny <= y);
        let i = idx.saturating_sub(1).min(self.slopes.len() - 1);
        let (x0, y0) = &self.nodes[i];
        Ok(x0 + (y - y0).mul_pow2(-self.slopes[i]))
    }

    /// `x -> (x . self) . g`.
    pub fn then(&self, g: &PlHomeo) -> Result<PlHomeo, PlError> {
        let r = self.range();
        let d = g.domain();
        if r != d {
            return Err(PlError::Mismatch {
                range: Box::new(r),
                domain: Box::new(d),
            });
        }
        // merge the y-values of self with the x-values of g
        let mut cuts: Vec<Dyadic> = Vec::with_capacity(self.nodes.len() + g.nodes.len());
        let (mut i, mut j) = (0, 0);
        while i < self.nodes.len() || j < g.nodes.len() {
            let next = match (self.nodes.get(i), g.nodes.get(j)) {
                (Some((_, a)), Some((b, _))) => {
                    if a < b {
                        i += 1;
                        a
                    } else if b < a {
                        j += 1;
                        b
                    } else {
                        i += 1;
                        j += 1;
                        a
                    }
                }
                (Some((_, a)), None) => {
                    i += 1;
                    a
                }
                (None, Some((b, _))) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            cuts.push(next.clone());
        }
        let nodes = cuts
            .iter()
            .map(|y| Ok((self.preimage(y)?, g.evaluate(y)?)))
            .collect::<Result<Vec<_>, PlError>>()?;
        PlHomeo::new(nodes)
    }

    pub fn inverse(&self) -> PlHomeo {
        PlHomeo {
            nodes: self.nodes.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
            slopes: self.slopes.iter().map(|s| -s).collect(),
        }
    }

    pub fn classify(&self) -> Result<Classification, PlError> {
        let unit = Interval::unit();
        if self.domain() != unit || self.range() != unit {
            return Err(PlError::NotUnitHomeo);
        }
        let first = self.slopes[0];
        let last = self.slopes[self.slopes.len() - 1];
        let in_h = first == last;
        // f(0) = 0 and slope 1 at both ends means f is the identity near 0 and 1
        let in_fprime = first == 0 && last == 0;
        Ok(Classification {
            in_f: true,
            in_h,
            in_fprime,
        })
    }

    /// Base-2 logarithms of the one-sided slopes at `x`.
    pub fn germ(&self, x: &Dyadic) -> Result<(Option<i64>, Option<i64>), PlError> {
        self.check_domain(x)?;
        match self.nodes.binary_search_by(|(nx, _)| nx.cmp(x)) {
            Ok(i) => {
                let left = (i > 0).then(|| self.slopes[i - 1]);
                let right = (i < self.slopes.len()).then(|| self.slopes[i]);
                Ok((left, right))
            }
            Err(idx) => {
                let s = self.slopes[idx - 1];
                Ok((Some(s), Some(s)))
            }
        }
    }

    /// Translate both coordinates by `by`.
    pub fn shift(&self, by: &Dyadic) -> PlHomeo {
        PlHomeo {
            nodes: self.nodes.iter().map(|(x, y)| (x + by, y + by)).collect(),
            slopes: self.slopes.clone(),
        }
    }

    /// Conjugate onto `target` by the orientation preserving or reversing isometry.
    pub fn transport(&self, target: &Interval, orientation: Orientation) -> Result<PlHomeo, PlError> {
        let src = self.domain();
        if src.len() != target.len() {
            return Err(PlError::LengthMismatch(src.len(), target.len()));
        }
        Ok(match orientation {
            Orientation::Preserve => self.shift(&(&target.lo - &src.lo)),
            Orientation::Reverse => {
                let c = &src.lo + &target.hi;
                PlHomeo {
                    nodes: self
                        .nodes
                        .iter()
                        .rev()
                        .map(|(x, y)| (&c - x, &c - y))
                        .collect(),
                    slopes: self.slopes.iter().rev().copied().collect(),
                }
            }
        })
    }

    /// Conjugate by the reflection of the domain onto itself; on unit maps this is
    /// `s -> 1 - g(1 - s)`.
    pub fn flip(&self) -> PlHomeo {
        self.transport(&self.domain(), Orientation::Reverse)
            .expect("same interval")
    }

    pub fn restrict(&self, lo: &Dyadic, hi: &Dyadic) -> Result<PlHomeo, PlError> {
        if lo >= hi {
            return Err(PlError::EmptyInterval(lo.clone(), hi.clone()));
        }
        self.check_domain(lo)?;
        self.check_domain(hi)?;
        let mut nodes = vec![(lo.clone(), self.evaluate(lo)?)];
        nodes.extend(
            self.nodes
                .iter()
                .filter(|(x, _)| lo < x && x < hi)
                .cloned(),
        );
        nodes.push((hi.clone(), self.evaluate(hi)?));
        PlHomeo::new(nodes)
    }

    /// Glue `self` on `[a, b]` to `next` on `[b, c]`; they must agree at `b`.
    pub fn concat(&self, next: &PlHomeo) -> Result<PlHomeo, PlError> {
        let (bx, by) = self.nodes.last().unwrap();
        let (cx, cy) = &next.nodes[0];
        if bx != cx {
            return Err(PlError::Disjoint(bx.clone(), cx.clone()));
        }
        if by != cy {
            return Err(PlError::Disjoint(by.clone(), cy.clone()));
        }
        let mut nodes = self.nodes.clone();
        nodes.extend(next.nodes[1..].iter().cloned());
        let mut slopes = self.slopes.clone();
        slopes.extend(next.slopes.iter().copied());
        Ok(Self::canonical(nodes, slopes))
    }

    pub fn concat_all(pieces: &[PlHomeo]) -> Result<PlHomeo, PlError> {
        let mut iter = pieces.iter();
        let mut acc = iter.next().ok_or(PlError::TooFewNodes)?.clone();
        for p in iter {
            acc = acc.concat(p)?;
        }
        Ok(acc)
    }

    /// Extend a map fixing its endpoints by the identity to `frame`.
    pub fn extend_by_identity(&self, frame: &Interval) -> Result<PlHomeo, PlError> {
        let dom = self.domain();
        if self.range() != dom {
            return Err(PlError::EndpointsMoved);
        }
        if !frame.contains_interval(&dom) {
            return Err(PlError::FrameContainment {
                lo: frame.lo.clone(),
                hi: frame.hi.clone(),
            });
        }
        let mut pieces = Vec::new();
        if frame.lo < dom.lo {
            pieces.push(PlHomeo::identity(&Interval::new(frame.lo.clone(), dom.lo.clone())?));
        }
        pieces.push(self.clone());
        if dom.hi < frame.hi {
            pieces.push(PlHomeo::identity(&Interval::new(dom.hi.clone(), frame.hi.clone())?));
        }
        PlHomeo::concat_all(&pieces)
    }

    /// Extend a partial map `[p, q] -> [p', q']` to a homeomorphism of `frame`
    /// fixing its endpoints, filling both gaps with [`dyadic_interpolate`].
    pub fn extend_to_homeo(&self, frame: &Interval) -> Result<PlHomeo, PlError> {
        let dom = self.domain();
        let rng = self.range();
        let strictly_inside = frame.lo < dom.lo
            && frame.lo < rng.lo
            && dom.hi < frame.hi
            && rng.hi < frame.hi;
        if !strictly_inside {
            return Err(PlError::FrameContainment {
                lo: frame.lo.clone(),
                hi: frame.hi.clone(),
            });
        }
        let left = dyadic_interpolate(
            &Interval::new(frame.lo.clone(), dom.lo.clone())?,
            &Interval::new(frame.lo.clone(), rng.lo.clone())?,
        );
        let right = dyadic_interpolate(
            &Interval::new(dom.hi.clone(), frame.hi.clone())?,
            &Interval::new(rng.hi.clone(), frame.hi.clone())?,
        );
        PlHomeo::concat_all(&[left, self.clone(), right])
    }

    /// Closure of `{x : f(x) != x}` as a sorted list of disjoint closed intervals.
    pub fn support(&self) -> Vec<Interval> {
        let mut out: Vec<Interval> = Vec::new();
        for (i, w) in self.nodes.windows(2).enumerate() {
            let identity_here = self.slopes[i] == 0 && w[0].0 == w[0].1;
            if identity_here {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.hi == w[0].0 => last.hi = w[1].0.clone(),
                _ => out.push(Interval {
                    lo: w[0].0.clone(),
                    hi: w[1].0.clone(),
                }),
            }
        }
        out
    }

    /// Connected pieces of the fixed-point set, left to right.
    pub fn fixed_pieces(&self) -> Vec<FixedPiece> {
        let mut out: Vec<FixedPiece> = Vec::new();
        let push_point = |out: &mut Vec<FixedPiece>, p: Point| {
            let dup = match out.last() {
                Some(FixedPiece::Point(q)) => *q == p,
                Some(FixedPiece::Segment(s)) => s.contains_point(&p),
                None => false,
            };
            if !dup {
                out.push(FixedPiece::Point(p));
            }
        };
        for (i, w) in self.nodes.windows(2).enumerate() {
            let (x0, y0) = &w[0];
            let (x1, _) = &w[1];
            let j = self.slopes[i];
            if j == 0 {
                if x0 == y0 {
                    let seg = Interval {
                        lo: x0.clone(),
                        hi: x1.clone(),
                    };
                    match out.last_mut() {
                        Some(FixedPiece::Segment(s)) if s.hi == seg.lo => s.hi = seg.hi,
                        Some(FixedPiece::Point(p)) if *p == seg.lo.to_rational() => {
                            *out.last_mut().unwrap() = FixedPiece::Segment(seg)
                        }
                        _ => out.push(FixedPiece::Segment(seg)),
                    }
                }
                continue;
            }
            // y0 + 2^j (s - x0) = s  =>  s - x0 = (x0 - y0) / (2^j - 1)
            let denom = Dyadic::pow2(j).to_rational() - BigRational::one();
            let offset = (x0 - y0).to_rational() / denom;
            if offset < BigRational::zero() {
                continue;
            }
            let s = x0.to_rational() + offset;
            if s <= x1.to_rational() {
                push_point(&mut out, s);
            }
        }
        out
    }
}

impl fmt::Debug for PlHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL[")?;
        for (i, (x, y)) in self.nodes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct PlJson {
    nodes: Vec<(Dyadic, Dyadic)>,
}

impl Serialize for PlHomeo {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PlJson {
            nodes: self.nodes.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PlHomeo {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PlJson::deserialize(deserializer)?;
        PlHomeo::new(raw.nodes).map_err(serde::de::Error::custom)
    }
}

/// A PL map `src -> dst` with power-of-2 slopes and dyadic breakpoints.
///
/// Both lengths are written as sums of distinct powers of two (their binary
/// expansions over a common unit). The side with fewer pieces halves its largest
/// piece until the counts agree; pieces are then paired largest to largest, so
/// every paired ratio is a power of two.
pub fn dyadic_interpolate(src: &Interval, dst: &Interval) -> PlHomeo {
    let e = [&src.lo, &src.hi, &dst.lo, &dst.hi]
        .iter()
        .map(|d| d.exponent())
        .max()
        .unwrap();
    let pieces_of = |len: Dyadic| -> Vec<i64> {
        let n = len.mul_pow2(e as i64);
        debug_assert!(n.is_integer());
        let n = n.mantissa().clone();
        let bits = n.bits();
        (0..bits)
            .rev()
            .filter(|&b| n.bit(b))
            .map(|b| b as i64 - e as i64)
            .collect()
    };
    let mut a = pieces_of(src.len());
    let mut b = pieces_of(dst.len());
    let split_to = |v: &mut Vec<i64>, count: usize| {
        while v.len() < count {
            // v stays sorted descending; the largest piece is at the front
            let top = v.remove(0);
            let at = v.partition_point(|&p| p > top - 1);
            v.insert(at, top - 1);
            v.insert(at, top - 1);
        }
    };
    let count = a.len().max(b.len());
    split_to(&mut a, count);
    split_to(&mut b, count);
    let mut nodes = Vec::with_capacity(count + 1);
    let (mut x, mut y) = (src.lo.clone(), dst.lo.clone());
    nodes.push((x.clone(), y.clone()));
    for (pa, pb) in a.iter().zip(&b) {
        x = &x + &Dyadic::pow2(*pa);
        y = &y + &Dyadic::pow2(*pb);
        nodes.push((x.clone(), y.clone()));
    }
    PlHomeo::new(nodes).expect("paired power-of-two pieces")
}

/// Thompson's generator `x_0`.
pub fn thompson_x0() -> PlHomeo {
    PlHomeo::from_strs(&[("0", "0"), ("1/2", "1/4"), ("3/4", "1/2"), ("1", "1")])
}

/// Thompson's generator `x_n`: identity on `[0, 1 - 2^-n]`, a scaled copy of `x_0` after.
pub fn thompson_x(n: u32) -> PlHomeo {
    if n == 0 {
        return thompson_x0();
    }
    let a = Dyadic::one() - Dyadic::pow2(-(n as i64));
    let scale = |t: &Dyadic| &a + &t.mul_pow2(-(n as i64));
    let mut nodes = vec![(Dyadic::zero(), Dyadic::zero())];
    nodes.extend(thompson_x0().nodes.iter().map(|(x, y)| (scale(x), scale(y))));
    PlHomeo::new(nodes).expect("valid generator")
}

/// Compose a list of maps left to right.
pub fn compose_all(maps: &[PlHomeo]) -> Result<PlHomeo, PlError> {
    let mut iter = maps.iter();
    let mut acc = iter.next().ok_or(PlError::TooFewNodes)?.clone();
    for m in iter {
        acc = acc.then(m)?;
    }
    Ok(acc)
}

/// Default generating triple of H: `x0 x1^-2`, `x1 x2^-1`, `x2 x3^-1`.
pub fn default_h_generators() -> [PlHomeo; 3] {
    let x = |n| thompson_x(n);
    let xi = |n| thompson_x(n).inverse();
    [
        compose_all(&[x(0), xi(1), xi(1)]).unwrap(),
        compose_all(&[x(1), xi(2)]).unwrap(),
        compose_all(&[x(2), xi(3)]).unwrap(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn evaluate_x0() {
        let x0 = thompson_x0();
        assert_eq!(x0.evaluate(&d("1/2")).unwrap(), d("1/4"));
        assert_eq!(x0.evaluate(&d("1")).unwrap(), d("1"));
        assert_eq!(x0.slopes(), &[-1, 0, 1]);
        assert!(matches!(x0.evaluate(&d("3/2")), Err(PlError::OutsideDomain { .. })));
        let id = PlHomeo::unit_identity();
        assert_eq!(id.evaluate(&d("1/2")).unwrap(), d("1/2"));
    }

    #[test]
    fn compose_examples() {
        let x0 = thompson_x0();
        let id = PlHomeo::unit_identity();
        assert_eq!(x0.then(&id).unwrap(), x0);
        assert_eq!(x0.then(&x0.inverse()).unwrap(), id);
        let sq = x0.then(&x0).unwrap();
        // (3/4) x0 = 1/2, (1/2) x0 = 1/4, and 1/4 lies on the slope-1/2 piece
        assert_eq!(sq.evaluate(&d("3/4")).unwrap(), d("1/4"));
        assert_eq!(sq.evaluate(&d("7/8")).unwrap(), x0.evaluate(&d("3/4")).unwrap());
    }

    #[test]
    fn invert_x0() {
        let inv = thompson_x0().inverse();
        assert_eq!(inv.slopes(), &[1, 0, -1]);
        assert_eq!(inv.inverse(), thompson_x0());
        assert_eq!(PlHomeo::unit_identity().inverse(), PlHomeo::unit_identity());
    }

    #[test]
    fn classify_examples() {
        let all = Classification {
            in_f: true,
            in_h: true,
            in_fprime: true,
        };
        assert_eq!(PlHomeo::unit_identity().classify().unwrap(), all);
        let c = thompson_x0().classify().unwrap();
        assert!(c.in_f && !c.in_h && !c.in_fprime);
        let [nu1, nu2, _] = default_h_generators();
        let c = nu1.classify().unwrap();
        assert!(c.in_f && c.in_h && !c.in_fprime);
        assert_eq!(nu1.germ(&d("0")).unwrap().1, Some(-1));
        assert_eq!(nu1.germ(&d("1")).unwrap().0, Some(-1));
        assert!(nu2.classify().unwrap().in_h);
    }

    #[test]
    fn germ_examples() {
        assert_eq!(PlHomeo::unit_identity().germ(&d("1/2")).unwrap(), (Some(0), Some(0)));
        assert_eq!(thompson_x0().germ(&d("0")).unwrap(), (None, Some(-1)));
        assert_eq!(thompson_x0().germ(&d("1/2")).unwrap(), (Some(-1), Some(0)));
    }

    #[test]
    fn transport_examples() {
        let id = PlHomeo::unit_identity();
        let j = Interval::of("3", "4");
        assert_eq!(id.transport(&j, Orientation::Preserve).unwrap(), PlHomeo::identity(&j));
        let x0 = thompson_x0();
        assert_eq!(x0.transport(&Interval::unit(), Orientation::Preserve).unwrap(), x0);
        let g = x0.transport(&Interval::unit(), Orientation::Reverse).unwrap();
        assert_eq!(g.evaluate(&d("1/4")).unwrap(), d("1/2"));
        assert!(x0.transport(&Interval::of("0", "2"), Orientation::Preserve).is_err());
    }

    #[test]
    fn interpolate_examples() {
        assert_eq!(
            dyadic_interpolate(&Interval::unit(), &Interval::unit()),
            PlHomeo::unit_identity()
        );
        let one = dyadic_interpolate(&Interval::of("0", "1/4"), &Interval::of("0", "1/2"));
        assert_eq!(one.slopes(), &[1]);
        let two = dyadic_interpolate(&Interval::of("0", "3/8"), &Interval::of("0", "1/4"));
        assert_eq!(
            two,
            PlHomeo::from_strs(&[("0", "0"), ("1/4", "1/8"), ("3/8", "1/4")])
        );
    }

    #[test]
    fn extend_examples() {
        let id = PlHomeo::identity(&Interval::of("1/4", "1/2"));
        assert_eq!(
            id.extend_to_homeo(&Interval::unit()).unwrap(),
            PlHomeo::unit_identity()
        );
        let partial = PlHomeo::from_strs(&[("1/4", "1/4"), ("3/8", "1/2")]);
        let ext = partial.extend_to_homeo(&Interval::unit()).unwrap();
        assert_eq!(ext.evaluate(&d("0")).unwrap(), d("0"));
        assert_eq!(ext.evaluate(&d("1")).unwrap(), d("1"));
        for x in ["1/4", "5/16", "3/8"] {
            assert_eq!(ext.evaluate(&d(x)).unwrap(), partial.evaluate(&d(x)).unwrap());
        }
        assert!(ext.classify().unwrap().in_f);
        assert!(partial.extend_to_homeo(&Interval::of("1/4", "1")).is_err());
    }

    #[test]
    fn support_and_fixed_pieces() {
        let nu1 = &default_h_generators()[0];
        assert_eq!(nu1.support(), vec![Interval::unit()]);
        assert!(PlHomeo::unit_identity().support().is_empty());
        let pieces = thompson_x0().fixed_pieces();
        assert_eq!(
            pieces,
            vec![
                FixedPiece::Point(BigRational::zero()),
                FixedPiece::Point(BigRational::one())
            ]
        );
        // slope 4 from (1/4, 1/8) crosses the diagonal at 7/24
        let m = PlHomeo::from_strs(&[("0", "0"), ("1/4", "1/8"), ("3/8", "5/8")]);
        assert_eq!(
            m.fixed_pieces(),
            vec![
                FixedPiece::Point(BigRational::zero()),
                FixedPiece::Point(BigRational::new(7.into(), 24.into()))
            ]
        );
    }

    #[test]
    fn json_round_trip() {
        let x0 = thompson_x0();
        let s = serde_json::to_string(&x0).unwrap();
        assert!(s.starts_with(r#"{"nodes":[[{"m":0,"e":0},{"m":0,"e":0}]"#));
        let back: PlHomeo = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x0);
        assert!(serde_json::from_str::<PlHomeo>(r#"{"nodes":[[{"m":0,"e":0},{"m":0,"e":0}],[{"m":1,"e":0},{"m":3,"e":0}]]}"#).is_err());
    }
}
