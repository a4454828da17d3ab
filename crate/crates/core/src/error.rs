use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::plmap::Interval;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("not a dyadic rational: {0:?}")]
    Dyadic(String),
    #[error("not a labelling word: {0:?}")]
    Word(String),
    #[error("unknown generator token {0:?} (expected zeta1..3 or chi1..3, optionally ^-1)")]
    Token(String),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PlError {
    #[error("a PL map needs at least two nodes")]
    TooFewNodes,
    #[error("nodes must be strictly increasing in both coordinates (at node {0})")]
    NotIncreasing(usize),
    #[error("segment {0} has a slope that is not a power of 2")]
    SlopeNotPowerOfTwo(usize),
    #[error("{x} lies outside the domain [{lo}, {hi}]")]
    OutsideDomain { x: Dyadic, lo: Dyadic, hi: Dyadic },
    #[error("range {range} does not match domain {domain}")]
    Mismatch { range: Box<Interval>, domain: Box<Interval> },
    #[error("interval lengths differ: {0} vs {1}")]
    LengthMismatch(Dyadic, Dyadic),
    #[error("empty interval [{0}, {1}]")]
    EmptyInterval(Dyadic, Dyadic),
    #[error("frame [{lo}, {hi}] does not strictly contain the partial map's domain and range")]
    FrameContainment { lo: Dyadic, hi: Dyadic },
    #[error("expected a homeomorphism of [0, 1]")]
    NotUnitHomeo,
    #[error("map does not fix the endpoints of its domain")]
    EndpointsMoved,
    #[error("pieces do not join: {0} vs {1}")]
    Disjoint(Dyadic, Dyadic),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LabellingError {
    #[error("word has even length {0}; contexts have odd length")]
    EvenLength(usize),
    #[error("interval endpoints must be half-integers with length at least 1")]
    BadInterval,
    #[error("no unit with context {word} within radius {radius}")]
    NotFound { word: String, radius: u64 },
    #[error("occurring words of length {len} did not saturate by level {level}")]
    Unsaturated { len: usize, level: usize },
    #[error("seed must alternate a/b letters, start with an a-letter and end with a b-letter")]
    BadSeed,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ElementError {
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error(transparent)]
    Labelling(#[from] LabellingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("map is not in H: boundary slopes differ")]
    NotInH,
    #[error("map is not in F': support touches the boundary")]
    NotInFPrime,
    #[error("context word length {len} does not match radius {radius}")]
    OmegaLength { len: usize, radius: usize },
    #[error("table has no entry for occurring context {0}")]
    MissingContext(String),
    #[error("no fixed point within {0} units")]
    NoFixedPoint(u64),
    #[error("{0} is not fixed by the element")]
    NotFixed(String),
    #[error("search budget exhausted after {0} expansions")]
    Inconclusive(usize),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error("elements do not fix a neighbourhood of 0 pointwise")]
    NotFixingZero,
    #[error("no open interval is fixed by both elements within the window")]
    NoCommonFixedInterval,
    #[error("no anchor within {0} units of unit {1}")]
    AnchorGap(i64, i64),
    #[error("atom [{0}, {1}] belongs to a class not seen in the window")]
    UnknownClass(i64, i64),
    #[error("atoms [{0}, {1}] and [{2}, {3}] share a class but their restrictions differ")]
    ClassUnsound(i64, i64, i64, i64),
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error("triple does not multiply to the identity")]
    NotIdentityProduct,
    #[error("fixed-point search inconclusive: {0}")]
    FixedPointSearch(String),
    #[error("h-search inconclusive: {0}")]
    Inconclusive(String),
    #[error("containment violated: {0}")]
    Containment(String),
    #[error("claim {claim} failed: {detail}")]
    Claim { claim: String, detail: String },
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("product {0} * {1} leaves the universe")]
    Closure(String, String),
    #[error("cochain is not a normalized 2-cocycle")]
    NotNormalizedCocycle,
    #[error("section is not normalized: sigma(id) != id")]
    SectionNotNormalized,
    #[error("section value for {0} does not project to it")]
    NotASection(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("cochain degree {0} does not fit this operation")]
    Degree(usize),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("step {step}: fact {fact} failed to re-verify: {reason}")]
    Fact {
        step: usize,
        fact: usize,
        reason: String,
    },
    #[error("step {step}: rule {rule} cannot use a {kind} licence")]
    Licence {
        step: usize,
        rule: String,
        kind: String,
    },
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: String },
    #[error("step {step}: unknown fact id {fact}")]
    UnknownFact { step: usize, fact: usize },
    #[error("non-empty residue after replay: {0:?}")]
    Residue(Vec<String>),
    #[error("unknown element {0:?} in certificate")]
    UnknownElement(String),
}
