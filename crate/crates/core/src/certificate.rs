//! Rewriting certificates for products of section values `σ(x)` in a central
//! extension, and their replay against exact dynamical evidence.
//!
//! A certificate starts from a token sequence and must rewrite it to the empty
//! product. Every rewrite is licensed by a [`Fact`] that the replayer re-checks
//! on the evidence elements before using it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dyadic::{parse_point, Point};
use crate::element::{GElement, Grho};
use crate::error::CertificateError;

pub const CERTIFICATE_VERSION: u32 = 1;

/// `σ(name)` or `σ(name)^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaToken {
    pub name: String,
    pub inverse: bool,
}

impl SigmaToken {
    pub fn pos(name: &str) -> SigmaToken {
        SigmaToken {
            name: name.to_string(),
            inverse: false,
        }
    }

    pub fn neg(name: &str) -> SigmaToken {
        SigmaToken {
            name: name.to_string(),
            inverse: true,
        }
    }
}

impl fmt::Display for SigmaToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

impl FromStr for SigmaToken {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, inverse) = match s.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (s, false),
        };
        if name.is_empty() || name.contains('^') {
            return Err(format!("bad token {s:?}"));
        }
        Ok(SigmaToken {
            name: name.to_string(),
            inverse,
        })
    }
}

impl Serialize for SigmaToken {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SigmaToken {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FactKind {
    /// Every member fixes `point`; `σ` is a homomorphism on the subgroup they generate.
    FixpointSubgroup { members: Vec<String>, point: String },
    /// `x` and `y` commute.
    AbelianPair { x: String, y: String },
    /// `σ` is a homomorphism on the cyclic group generated by `x`.
    CyclicPower { x: String },
    /// The products `lhs` and `rhs` are equal in the group.
    GroupIdentity { lhs: Vec<String>, rhs: Vec<String> },
}

impl FactKind {
    pub fn name(&self) -> &'static str {
        match self {
            FactKind::FixpointSubgroup { .. } => "FixpointSubgroup",
            FactKind::AbelianPair { .. } => "AbelianPair",
            FactKind::CyclicPower { .. } => "CyclicPower",
            FactKind::GroupIdentity { .. } => "GroupIdentity",
        }
    }

    fn names(&self) -> Vec<&String> {
        match self {
            FactKind::FixpointSubgroup { members, .. } => members.iter().collect(),
            FactKind::AbelianPair { x, y } => vec![x, y],
            FactKind::CyclicPower { x } => vec![x],
            FactKind::GroupIdentity { lhs, rhs } => lhs.iter().chain(rhs).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub id: usize,
    #[serde(flatten)]
    pub kind: FactKind,
    /// sha256 of the fact and the serialized evidence elements it mentions.
    pub evidence: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    /// `σ(x)σ(y) -> σ(xy)`.
    Merge,
    /// `σ(xy) -> σ(x)σ(y)`.
    Split,
    /// `σ(x)σ(y) -> σ(y)σ(x)`.
    Swap,
    /// `σ(x) -> σ(y)` for `x = y` in the group.
    Rewrite,
    /// `σ(x)σ(x)^-1 -> ()`, and the mirror image.
    CancelTail,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Merge => "MERGE",
            Rule::Split => "SPLIT",
            Rule::Swap => "SWAP",
            Rule::Rewrite => "REWRITE",
            Rule::CancelTail => "CANCEL_TAIL",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    pub at: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fact: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub into: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    /// Standing hypotheses not checked by replay.
    pub assumptions: Vec<String>,
    /// Each name is a product of evidence elements, left to right.
    pub elements: BTreeMap<String, Vec<String>>,
    pub tokens: Vec<SigmaToken>,
    pub facts: Vec<Fact>,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub accepted: bool,
    pub steps: usize,
    pub facts_verified: usize,
    /// The token sequence before the first step and after each step.
    pub trace: Vec<String>,
}

/// Hash binding a fact to the exact evidence elements it talks about.
pub fn evidence_hash(
    kind: &FactKind,
    elements: &BTreeMap<String, Vec<String>>,
    evidence: &BTreeMap<String, GElement>,
) -> Result<String, CertificateError> {
    let mut base: Vec<&String> = Vec::new();
    for n in kind.names() {
        base.extend(expand(elements, n)?);
    }
    base.sort();
    base.dedup();
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(kind).expect("fact serializes"));
    for b in base {
        let e = evidence
            .get(b)
            .ok_or_else(|| CertificateError::UnknownElement(b.clone()))?;
        h.update(b.as_bytes());
        h.update(serde_json::to_vec(e).expect("element serializes"));
    }
    Ok(hex::encode(h.finalize()))
}

fn expand<'a>(
    elements: &'a BTreeMap<String, Vec<String>>,
    name: &str,
) -> Result<&'a Vec<String>, CertificateError> {
    elements
        .get(name)
        .ok_or_else(|| CertificateError::UnknownElement(name.to_string()))
}

/// Can `word` be cut into consecutive pieces, each one of `parts`?
fn segments_into(word: &[String], parts: &[&Vec<String>]) -> bool {
    let mut reach = vec![false; word.len() + 1];
    reach[0] = true;
    for i in 0..word.len() {
        if !reach[i] {
            continue;
        }
        for p in parts {
            if !p.is_empty() && word[i..].starts_with(p) {
                reach[i + p.len()] = true;
            }
        }
    }
    reach[word.len()]
}

struct Replayer<'a> {
    g: &'a Grho,
    cert: &'a Certificate,
    evidence: &'a BTreeMap<String, GElement>,
    products: HashMap<Vec<String>, GElement>,
    verified: Vec<bool>,
}

impl Replayer<'_> {
    fn product(&mut self, word: &[String]) -> Result<GElement, String> {
        if let Some(e) = self.products.get(word) {
            return Ok(e.clone());
        }
        let parts = word
            .iter()
            .map(|b| self.evidence.get(b).ok_or_else(|| format!("no evidence for {b}")))
            .collect::<Result<Vec<_>, _>>()?;
        let e = self.g.compose_all(&parts).map_err(|e| e.to_string())?;
        self.products.insert(word.to_vec(), e.clone());
        Ok(e)
    }

    fn expand_all(&self, names: &[String]) -> Result<Vec<String>, String> {
        let mut out = Vec::new();
        for n in names {
            out.extend(expand(&self.cert.elements, n).map_err(|e| e.to_string())?.iter().cloned());
        }
        Ok(out)
    }

    fn check_fact(&mut self, fact: &Fact) -> Result<(), String> {
        let hash = evidence_hash(&fact.kind, &self.cert.elements, self.evidence)
            .map_err(|e| e.to_string())?;
        if hash != fact.evidence {
            return Err("evidence hash mismatch".into());
        }
        match &fact.kind {
            FactKind::FixpointSubgroup { members, point } => {
                let p: Point = parse_point(point).map_err(|e| e.to_string())?;
                for m in members {
                    let e = self.product(&self.expand_all(std::slice::from_ref(m))?)?;
                    let q = self.g.evaluate_point(&e, &p).map_err(|e| e.to_string())?;
                    if q != p {
                        return Err(format!("{m} does not fix {point}"));
                    }
                }
                Ok(())
            }
            FactKind::AbelianPair { x, y } => {
                let xy = self.product(&self.expand_all(&[x.clone(), y.clone()])?)?;
                let yx = self.product(&self.expand_all(&[y.clone(), x.clone()])?)?;
                if self.g.equals(&xy, &yx).map_err(|e| e.to_string())? {
                    Ok(())
                } else {
                    Err(format!("{x} and {y} do not commute"))
                }
            }
            FactKind::CyclicPower { x } => self.product(&self.expand_all(std::slice::from_ref(x))?).map(drop),
            FactKind::GroupIdentity { lhs, rhs } => {
                let l = self.product(&self.expand_all(lhs)?)?;
                let r = self.product(&self.expand_all(rhs)?)?;
                if self.g.equals(&l, &r).map_err(|e| e.to_string())? {
                    Ok(())
                } else {
                    Err("the two products differ".into())
                }
            }
        }
    }

    fn fact(&mut self, step: usize, id: usize) -> Result<&'_ Fact, CertificateError> {
        let cert = self.cert;
        let fact = cert
            .facts
            .iter()
            .find(|f| f.id == id)
            .ok_or(CertificateError::UnknownFact { step, fact: id })?;
        let slot = cert.facts.iter().position(|f| f.id == id).unwrap();
        if !self.verified[slot] {
            self.check_fact(fact).map_err(|reason| CertificateError::Fact {
                step,
                fact: id,
                reason,
            })?;
            self.verified[slot] = true;
        }
        Ok(fact)
    }

    /// Does the fact license `σ` being multiplicative on the two names?
    fn licenses_product(&self, fact: &Fact, x: &str, y: &str) -> Result<bool, CertificateError> {
        let el = &self.cert.elements;
        let (dx, dy) = (expand(el, x)?, expand(el, y)?);
        Ok(match &fact.kind {
            FactKind::FixpointSubgroup { members, .. } => {
                let parts = members.iter().map(|m| expand(el, m)).collect::<Result<Vec<_>, _>>()?;
                segments_into(dx, &parts) && segments_into(dy, &parts)
            }
            FactKind::AbelianPair { x: a, y: b } => {
                let (da, db) = (expand(el, a)?, expand(el, b)?);
                (dx == da && dy == db) || (dx == db && dy == da)
            }
            FactKind::CyclicPower { x: a } => {
                let da = expand(el, a)?;
                segments_into(dx, &[da]) && segments_into(dy, &[da])
            }
            FactKind::GroupIdentity { .. } => false,
        })
    }
}

fn licence_err(step: usize, rule: Rule, fact: &Fact) -> CertificateError {
    CertificateError::Licence {
        step,
        rule: rule.to_string(),
        kind: fact.kind.name().to_string(),
    }
}

fn step_err(step: usize, reason: impl Into<String>) -> CertificateError {
    CertificateError::Step {
        step,
        reason: reason.into(),
    }
}

fn format_tokens(t: &[SigmaToken]) -> String {
    if t.is_empty() {
        "()".into()
    } else {
        t.iter().map(|x| format!("σ({x})")).collect::<Vec<_>>().join(" ")
    }
}

/// Replay a certificate. Facts are re-verified on first use; unused facts are
/// verified after the last step and reported against index `steps.len()`.
pub fn replay(
    g: &Grho,
    cert: &Certificate,
    evidence: &BTreeMap<String, GElement>,
) -> Result<ReplayReport, CertificateError> {
    for (name, def) in &cert.elements {
        for b in def {
            if !evidence.contains_key(b) {
                return Err(CertificateError::UnknownElement(format!("{name}: {b}")));
            }
        }
    }
    let mut r = Replayer {
        g,
        cert,
        evidence,
        products: HashMap::new(),
        verified: vec![false; cert.facts.len()],
    };
    let mut tokens = cert.tokens.clone();
    for t in &tokens {
        expand(&cert.elements, &t.name)?;
    }
    let mut trace = vec![format_tokens(&tokens)];
    for (i, st) in cert.steps.iter().enumerate() {
        let fact = match st.fact {
            Some(id) => Some(r.fact(i, id)?.clone()),
            None => None,
        };
        let need = |n: usize| {
            if st.at + n > tokens.len() {
                Err(step_err(i, format!("position {} out of range", st.at)))
            } else {
                Ok(())
            }
        };
        let positive = |t: &SigmaToken| {
            if t.inverse {
                Err(step_err(i, format!("{} rewrites only positive tokens", st.rule)))
            } else {
                Ok(())
            }
        };
        let licensed_fact = |rule: Rule| fact.clone().ok_or_else(|| step_err(i, format!("{rule} needs a fact")));
        match st.rule {
            Rule::Merge => {
                need(2)?;
                let (a, b) = (&tokens[st.at], &tokens[st.at + 1]);
                positive(a)?;
                positive(b)?;
                let f = licensed_fact(st.rule)?;
                let [z] = st.into.as_slice() else {
                    return Err(step_err(i, "MERGE produces exactly one token"));
                };
                let mut joined = expand(&cert.elements, &a.name)?.clone();
                joined.extend(expand(&cert.elements, &b.name)?.iter().cloned());
                if *expand(&cert.elements, z)? != joined {
                    return Err(step_err(i, format!("{z} is not {} {}", a.name, b.name)));
                }
                if !r.licenses_product(&f, &a.name, &b.name)? {
                    return Err(licence_err(i, st.rule, &f));
                }
                tokens.splice(st.at..st.at + 2, [SigmaToken::pos(z)]);
            }
            Rule::Split => {
                need(1)?;
                let z = &tokens[st.at];
                positive(z)?;
                let f = licensed_fact(st.rule)?;
                let [a, b] = st.into.as_slice() else {
                    return Err(step_err(i, "SPLIT produces exactly two tokens"));
                };
                let mut joined = expand(&cert.elements, a)?.clone();
                joined.extend(expand(&cert.elements, b)?.iter().cloned());
                if *expand(&cert.elements, &z.name)? != joined {
                    return Err(step_err(i, format!("{} is not {a} {b}", z.name)));
                }
                if !r.licenses_product(&f, a, b)? {
                    return Err(licence_err(i, st.rule, &f));
                }
                tokens.splice(st.at..st.at + 1, [SigmaToken::pos(a), SigmaToken::pos(b)]);
            }
            Rule::Swap => {
                need(2)?;
                let (a, b) = (&tokens[st.at], &tokens[st.at + 1]);
                positive(a)?;
                positive(b)?;
                let f = licensed_fact(st.rule)?;
                if !matches!(f.kind, FactKind::AbelianPair { .. }) || !r.licenses_product(&f, &a.name, &b.name)? {
                    return Err(licence_err(i, st.rule, &f));
                }
                tokens.swap(st.at, st.at + 1);
            }
            Rule::Rewrite => {
                need(1)?;
                let x = tokens[st.at].clone();
                positive(&x)?;
                let f = licensed_fact(st.rule)?;
                let FactKind::GroupIdentity { lhs, rhs } = &f.kind else {
                    return Err(licence_err(i, st.rule, &f));
                };
                let [y] = st.into.as_slice() else {
                    return Err(step_err(i, "REWRITE produces exactly one token"));
                };
                let dl = r.expand_all(lhs).map_err(|e| step_err(i, e))?;
                let dr = r.expand_all(rhs).map_err(|e| step_err(i, e))?;
                let (dx, dy) = (expand(&cert.elements, &x.name)?, expand(&cert.elements, y)?);
                if !((*dx == dl && *dy == dr) || (*dx == dr && *dy == dl)) {
                    return Err(step_err(i, format!("fact does not equate {} with {y}", x.name)));
                }
                tokens[st.at] = SigmaToken::pos(y);
            }
            Rule::CancelTail => {
                if let Some(f) = &fact {
                    return Err(licence_err(i, st.rule, f));
                }
                need(2)?;
                let (a, b) = (&tokens[st.at], &tokens[st.at + 1]);
                let cancels = a.inverse != b.inverse
                    && expand(&cert.elements, &a.name)? == expand(&cert.elements, &b.name)?;
                if !cancels {
                    return Err(step_err(i, format!("σ({a}) and σ({b}) do not cancel")));
                }
                tokens.drain(st.at..st.at + 2);
            }
        }
        trace.push(format_tokens(&tokens));
    }
    let end = cert.steps.len();
    for f in &cert.facts {
        r.fact(end, f.id)?;
    }
    if !tokens.is_empty() {
        return Err(CertificateError::Residue(tokens.iter().map(ToString::to_string).collect()));
    }
    Ok(ReplayReport {
        accepted: true,
        steps: cert.steps.len(),
        facts_verified: cert.facts.len(),
        trace,
    })
}

/// The first step citing fact `id`, or `steps.len()` if none does.
pub fn first_citation(cert: &Certificate, id: usize) -> usize {
    cert.steps
        .iter()
        .position(|s| s.fact == Some(id))
        .unwrap_or(cert.steps.len())
}

/// Incremental construction of a certificate with hashed facts.
pub struct CertificateBuilder<'a> {
    evidence: &'a BTreeMap<String, GElement>,
    cert: Certificate,
}

impl<'a> CertificateBuilder<'a> {
    /// Every evidence element is registered under its own name.
    pub fn new(evidence: &'a BTreeMap<String, GElement>) -> Self {
        let elements = evidence.keys().map(|k| (k.clone(), vec![k.clone()])).collect();
        CertificateBuilder {
            evidence,
            cert: Certificate {
                version: CERTIFICATE_VERSION,
                assumptions: Vec::new(),
                elements,
                tokens: Vec::new(),
                facts: Vec::new(),
                steps: Vec::new(),
            },
        }
    }

    pub fn assume(&mut self, s: &str) -> &mut Self {
        self.cert.assumptions.push(s.to_string());
        self
    }

    /// Name the product of `parts` (names already defined), left to right.
    pub fn define(&mut self, name: &str, parts: &[&str]) -> Result<&mut Self, CertificateError> {
        let mut def = Vec::new();
        for p in parts {
            def.extend(expand(&self.cert.elements, p)?.iter().cloned());
        }
        self.cert.elements.insert(name.to_string(), def);
        Ok(self)
    }

    pub fn tokens(&mut self, t: Vec<SigmaToken>) -> &mut Self {
        self.cert.tokens = t;
        self
    }

    pub fn fact(&mut self, kind: FactKind) -> Result<usize, CertificateError> {
        let id = self.cert.facts.len();
        let evidence = evidence_hash(&kind, &self.cert.elements, self.evidence)?;
        self.cert.facts.push(Fact { id, kind, evidence });
        Ok(id)
    }

    pub fn step(&mut self, rule: Rule, at: usize, fact: Option<usize>, into: &[&str]) -> &mut Self {
        self.cert.steps.push(Step {
            rule,
            at,
            fact,
            into: into.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn finish(self) -> Certificate {
        self.cert
    }
}

/// Recompute the evidence hash of fact `id` after editing it by hand.
pub fn rehash(
    cert: &mut Certificate,
    id: usize,
    evidence: &BTreeMap<String, GElement>,
) -> Result<(), CertificateError> {
    let slot = cert
        .facts
        .iter()
        .position(|f| f.id == id)
        .ok_or(CertificateError::UnknownFact { step: 0, fact: id })?;
    cert.facts[slot].evidence = evidence_hash(&cert.facts[slot].kind, &cert.elements, evidence)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plmap::PlHomeo;

    fn setup() -> (Grho, BTreeMap<String, GElement>) {
        let g = Grho::with_defaults();
        let left = PlHomeo::from_strs(&[
            ("0", "0"),
            ("1/4", "1/4"),
            ("3/8", "5/16"),
            ("7/16", "3/8"),
            ("1/2", "1/2"),
            ("1", "1"),
        ]);
        let right = PlHomeo::from_strs(&[
            ("0", "0"),
            ("1/2", "1/2"),
            ("9/16", "5/8"),
            ("5/8", "11/16"),
            ("3/4", "3/4"),
            ("1", "1"),
        ]);
        let mut ev = BTreeMap::new();
        ev.insert("x".to_string(), g.lambda_hom(&left).unwrap());
        ev.insert("y".to_string(), g.lambda_hom(&right).unwrap());
        ev.insert("z".to_string(), g.parse_word("zeta1").unwrap());
        (g, ev)
    }

    fn commuting_script(ev: &BTreeMap<String, GElement>, pair: (&str, &str)) -> Certificate {
        let mut b = CertificateBuilder::new(ev);
        b.define("xy", &["x", "y"]).unwrap();
        b.define("yx", &["y", "x"]).unwrap();
        let f = b
            .fact(FactKind::AbelianPair {
                x: pair.0.into(),
                y: pair.1.into(),
            })
            .unwrap();
        b.tokens(vec![SigmaToken::pos("y"), SigmaToken::pos("x"), SigmaToken::neg("xy")])
            .step(Rule::Swap, 0, Some(f), &[])
            .step(Rule::Merge, 0, Some(f), &["xy"])
            .step(Rule::CancelTail, 0, None, &[]);
        b.finish()
    }

    #[test]
    fn empty_script_is_accepted() {
        let (g, ev) = setup();
        let cert = CertificateBuilder::new(&ev).finish();
        assert!(replay(&g, &cert, &ev).unwrap().accepted);
    }

    #[test]
    fn disjointly_supported_pair_replays() {
        let (g, ev) = setup();
        let cert = commuting_script(&ev, ("x", "y"));
        let rep = replay(&g, &cert, &ev).unwrap();
        assert_eq!(rep.trace.last().unwrap(), "()");
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn swap_on_non_commuting_pair_is_rejected_at_that_step() {
        let (g, mut ev) = setup();
        // zeta1 moves 0; the bump fixes it, and they do not commute
        ev.insert("y".to_string(), ev["z"].clone());
        let cert = commuting_script(&ev, ("x", "y"));
        match replay(&g, &cert, &ev) {
            Err(CertificateError::Fact { step: 0, fact: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tampered_hash_and_wrong_licence_are_named() {
        let (g, ev) = setup();
        let mut cert = commuting_script(&ev, ("x", "y"));
        cert.facts[0].evidence.replace_range(0..1, "z");
        assert!(matches!(
            replay(&g, &cert, &ev),
            Err(CertificateError::Fact { step: 0, .. })
        ));
        let mut b = CertificateBuilder::new(&ev);
        let f = b
            .fact(FactKind::FixpointSubgroup {
                members: vec!["x".into(), "y".into()],
                point: "0".into(),
            })
            .unwrap();
        b.tokens(vec![SigmaToken::pos("x"), SigmaToken::pos("y")])
            .step(Rule::Swap, 0, Some(f), &[]);
        let cert = b.finish();
        assert_eq!(
            replay(&g, &cert, &ev).unwrap_err(),
            CertificateError::Licence {
                step: 0,
                rule: "SWAP".into(),
                kind: "FixpointSubgroup".into()
            }
        );
    }

    #[test]
    fn residue_is_reported() {
        let (g, ev) = setup();
        let mut cert = commuting_script(&ev, ("x", "y"));
        cert.steps.pop();
        assert!(matches!(replay(&g, &cert, &ev), Err(CertificateError::Residue(r)) if r.len() == 2));
    }

    #[test]
    fn token_round_trip() {
        for s in ["f1", "f3g3^-1"] {
            assert_eq!(s.parse::<SigmaToken>().unwrap().to_string(), s);
        }
        assert!("^-1".parse::<SigmaToken>().is_err());
    }
}
