//! The witness pipeline: from a triple `a1 a2 a3 = id`, build the conjugator `h`,
//! the correctors `g_i` and the interval system, verify every claim exactly and
//! emit the rewriting certificate for `σ(f1)σ(f2)σ(f3) = id`.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::certificate::{replay, Certificate, CertificateBuilder, FactKind, ReplayReport, Rule, SigmaToken};
use crate::dyadic::{format_point, point, Dyadic, Point};
use crate::element::{format_gen_word, parse_gen_word, GElement, Grho, SearchConfig, Token};
use crate::error::{ElementError, WitnessError};
use crate::labelling::Word;
use crate::plmap::{Interval, PlHomeo};

/// Three elements whose product is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub a: [GElement; 3],
}

impl Triple {
    pub fn new(g: &Grho, a: [GElement; 3]) -> Result<Triple, WitnessError> {
        let p = g.compose_all(&[&a[0], &a[1], &a[2]])?;
        if !p.is_identity() {
            return Err(WitnessError::NotIdentityProduct);
        }
        Ok(Triple { a })
    }

    /// `a1 = x`, `a2 = y`, `a3 = (x y)^-1`.
    pub fn closing(g: &Grho, x: GElement, y: GElement) -> Result<Triple, WitnessError> {
        let z = g.invert(&g.then_compose(&x, &y)?)?;
        Triple::new(g, [x, y, z])
    }

    pub fn identity(g: &Grho) -> Triple {
        let e = g.identity();
        Triple {
            a: [e.clone(), e.clone(), e],
        }
    }
}

/// A triple entry on disk: a generator word or a full element dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TripleEntry {
    Word(String),
    Element(GElement),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleFile {
    pub a1: TripleEntry,
    pub a2: TripleEntry,
    pub a3: TripleEntry,
}

impl TripleFile {
    pub fn resolve(&self, g: &Grho) -> Result<Triple, WitnessError> {
        let get = |e: &TripleEntry| -> Result<GElement, WitnessError> {
            Ok(match e {
                TripleEntry::Word(w) => g.parse_word(w)?,
                TripleEntry::Element(x) => x.clone(),
            })
        };
        Triple::new(g, [get(&self.a1)?, get(&self.a2)?, get(&self.a3)?])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessConfig {
    /// Fixed points are chosen nearest to this point.
    pub target: Dyadic,
    /// Padding of the `J` intervals; its exponent also sets the hull grid.
    pub pad: Dyadic,
    pub fixed_point_radius: u64,
    pub context_search_radius: u64,
    pub search: SearchConfig,
    /// A recorded word for `h`, checked instead of searching.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_word: Option<String>,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            target: Dyadic::zero(),
            pad: Dyadic::frac(1, 3),
            fixed_point_radius: 64,
            context_search_radius: 1 << 12,
            search: SearchConfig::default(),
            h_word: None,
        }
    }
}

/// The interval system `I_i = (T_i + N1) ∪ (T_i ι + N2)`, kept symbolic:
/// `N1` are the units with context `w` at radius `l`, `N2` those with `w^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ISystem {
    pub t: Vec<Interval>,
    pub w: Word,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBundle {
    pub j: Vec<Interval>,
    /// `p_i`, a fixed point of `a_i` in `J1`.
    pub fixed_points: Vec<String>,
    pub h: GElement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_word: Option<String>,
    pub f: Vec<GElement>,
    pub k: usize,
    pub m: i64,
    pub l: usize,
    pub w: Word,
    pub t: Vec<Interval>,
    /// `x_i = p_i h`, fixed by `f_i` in `T1`.
    pub x: Vec<String>,
    pub alpha: Vec<PlHomeo>,
    pub g: Vec<GElement>,
    pub i_system: ISystem,
}

impl WitnessBundle {
    /// The elements a certificate may refer to: `f1..f3`, `g1..g3`.
    pub fn evidence(&self) -> BTreeMap<String, GElement> {
        let mut out = BTreeMap::new();
        for i in 0..3 {
            out.insert(format!("f{}", i + 1), self.f[i].clone());
            out.insert(format!("g{}", i + 1), self.g[i].clone());
        }
        out
    }

    fn x_point(&self, i: usize) -> Point {
        crate::dyadic::parse_point(&self.x[i]).expect("bundle stores exact points")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub checks: Vec<ClaimCheck>,
}

impl ClaimReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }

    fn push(&mut self, claim: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(ClaimCheck {
            claim: claim.to_string(),
            ok,
            detail: detail.into(),
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub k: usize,
    pub m: i64,
    pub l: usize,
    pub w: Word,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub bundle: WitnessBundle,
    pub claims: ClaimReport,
    pub certificate: Certificate,
    pub replay: ReplayReport,
}

fn image(g: &Grho, e: &GElement, j: &Interval) -> Result<Interval, WitnessError> {
    Ok(Interval::new(g.evaluate(e, &j.lo)?, g.evaluate(e, &j.hi)?)?)
}

fn containment(what: String) -> WitnessError {
    WitnessError::Containment(what)
}

/// `J1..J4`, with `p_i` the fixed point of `a_i` nearest the target.
pub fn initial_intervals(
    g: &Grho,
    t: &Triple,
    cfg: &WitnessConfig,
) -> Result<(Vec<Interval>, Vec<Point>), WitnessError> {
    let mut p = Vec::new();
    for a in &t.a {
        let q = g
            .nearest_fixed_point(a, &cfg.target, cfg.fixed_point_radius)
            .map_err(|e| WitnessError::FixedPointSearch(e.to_string()))?;
        p.push(q);
    }
    let e = cfg.pad.exponent();
    let lo = p.iter().min().unwrap();
    let hi = p.iter().max().unwrap();
    let j1 = Interval::new(
        &Dyadic::floor_rational(lo, e) - &cfg.pad,
        &Dyadic::ceil_rational(hi, e) + &cfg.pad,
    )?;
    let mut j = vec![j1];
    for a in &t.a {
        let cur = j.last().unwrap().clone();
        let next = cur.hull(&image(g, a, &cur)?).pad(&cfg.pad);
        j.push(next);
    }
    Ok((j, p))
}

/// A conjugator moving `J4` into `(0, 1)`, and the word it came from.
pub fn find_h(
    g: &Grho,
    j4: &Interval,
    cfg: &WitnessConfig,
) -> Result<(GElement, Option<Vec<Token>>), WitnessError> {
    let unit = Interval::unit();
    if unit.contains_interval_strictly(j4) {
        return Ok((g.identity(), None));
    }
    let word = match &cfg.h_word {
        Some(w) => parse_gen_word(w).map_err(ElementError::from)?,
        None => g.proximal_search(j4, &unit, &cfg.search).map_err(|e| match e {
            ElementError::Inconclusive(n) => {
                WitnessError::Inconclusive(format!("no word moves {j4:?} into (0, 1) after {n} expansions"))
            }
            other => other.into(),
        })?,
    };
    let h = g.word_to_element(&word)?;
    let im = image(g, &h, j4)?;
    if !unit.contains_interval_strictly(&im) {
        return Err(containment(format!("h = {} maps J4 to {im:?}", format_gen_word(&word))));
    }
    Ok((h, Some(word)))
}

/// `k`, `m`, `l` and `W = W([0, 1], l)`.
pub fn choose_parameters(g: &Grho, f: &[GElement], search_radius: u64) -> Result<Parameters, WitnessError> {
    let rho = g.labelling();
    let k = f.iter().map(GElement::radius).max().unwrap_or(0) + 1;
    let ctx = rho.context_unit(0, k);
    let m = rho
        .find_unit_with_context(&ctx, &HashSet::from([0]), search_radius)
        .map_err(ElementError::from)?;
    // terminates: otherwise the labelling would be m-periodic
    let mut l = k + 1;
    while rho.context_unit(0, l) == rho.context_unit(m, l) {
        l += 1;
    }
    let w = rho.context_unit(0, l);
    if w == rho.context_unit(m, l).formal_inverse() {
        return Err(WitnessError::Claim {
            claim: "parameters".into(),
            detail: format!("W({m}, {l}) is the formal inverse of W"),
        });
    }
    Ok(Parameters { k, m, l, w })
}

/// `α_i`: `f_i^-1` on `T_i f_i`, extended to a homeomorphism of `T_{i+1}`, then by
/// the identity to `[0, 1]`.
pub fn corrector_map(g: &Grho, f: &GElement, ti: &Interval, tnext: &Interval) -> Result<PlHomeo, WitnessError> {
    let piece = g.unit_on(f, 0)?.restrict(&ti.lo, &ti.hi)?.inverse();
    let alpha = piece
        .extend_to_homeo(tnext)?
        .extend_by_identity(&Interval::unit())?;
    if !alpha.classify()?.in_fprime {
        return Err(containment(format!("corrector for T = {ti:?} is not compactly supported")));
    }
    Ok(alpha)
}

/// Build the full bundle; the claims are checked separately.
pub fn build_bundle(g: &Grho, t: &Triple, cfg: &WitnessConfig) -> Result<WitnessBundle, WitnessError> {
    let (j, p) = initial_intervals(g, t, cfg)?;
    let (h, word) = find_h(g, &j[3], cfg)?;
    let f = t
        .a
        .iter()
        .map(|a| g.conjugate(a, &h))
        .collect::<Result<Vec<_>, _>>()?;
    if !g.compose_all(&[&f[0], &f[1], &f[2]])?.is_identity() {
        return Err(WitnessError::NotIdentityProduct);
    }
    let tt = j.iter().map(|ji| image(g, &h, ji)).collect::<Result<Vec<_>, _>>()?;
    let x = p
        .iter()
        .map(|pi| g.evaluate_point(&h, pi))
        .collect::<Result<Vec<_>, _>>()?;
    let params = choose_parameters(g, &f, cfg.context_search_radius)?;
    let mut alpha = Vec::new();
    let mut gs = Vec::new();
    for i in 0..3 {
        let a = corrector_map(g, &f[i], &tt[i], &tt[i + 1])?;
        gs.push(g.special(&params.w, params.l, &a)?);
        alpha.push(a);
    }
    Ok(WitnessBundle {
        j,
        fixed_points: p.iter().map(format_point).collect(),
        h,
        h_word: word.map(|w| format_gen_word(&w)),
        f,
        k: params.k,
        m: params.m,
        l: params.l,
        w: params.w.clone(),
        t: tt.clone(),
        x: x.iter().map(format_point).collect(),
        alpha,
        g: gs,
        i_system: ISystem {
            t: tt,
            w: params.w,
            l: params.l,
        },
    })
}

/// Which part of the interval system a context of radius at least `l` sits in.
fn side(ctx: &Word, w: &Word, wi: &Word, l: usize) -> Option<bool> {
    let c = ctx.central(l);
    if &c == w {
        Some(true)
    } else if &c == wi {
        Some(false)
    } else {
        None
    }
}

/// Check the bundle invariants and claims 1-6. Every check is run; failures are
/// collected rather than short-circuited.
pub fn verify_claims(g: &Grho, t: &Triple, b: &WitnessBundle) -> Result<ClaimReport, WitnessError> {
    let mut r = ClaimReport { checks: Vec::new() };
    let rho = g.labelling();
    let unit = Interval::unit();
    let (w, l) = (&b.w, b.l);
    let wi = w.formal_inverse();

    // bundle invariants
    for i in 0..3 {
        let im = image(g, &t.a[i], &b.j[i])?;
        let ok = b.j[i + 1].contains_interval_strictly(&b.j[i].hull(&im));
        r.push("bundle", ok, format!("J{} and its image under a{} inside J{}", i + 1, i + 1, i + 2));
    }
    r.push("bundle", unit.contains_interval_strictly(&b.t[3]), format!("J4 h = {:?} inside (0, 1)", b.t[3]));
    for i in 0..3 {
        let im = image(g, &b.f[i], &b.t[i])?;
        r.push(
            "bundle",
            b.t[i + 1].contains_interval_strictly(&im),
            format!("T{} f{} = {im:?} inside T{}", i + 1, i + 1, i + 2),
        );
    }
    let params_ok = b.m != 0
        && b.l > b.k
        && w.len() == 2 * l + 1
        && rho.context_unit(0, b.k) == rho.context_unit(b.m, b.k)
        && *w == rho.context_unit(0, l)
        && rho.context_unit(b.m, l) != *w
        && rho.context_unit(b.m, l) != wi
        && b.f.iter().all(|f| f.radius() < b.k);
    r.push("bundle", params_ok, format!("k = {}, m = {}, l = {}, W = {w}", b.k, b.m, l));

    // 1: Supp(g_i) inside I_{i+1}
    for i in 0..3 {
        let gi = g.lift(&b.g[i], b.g[i].radius().max(l))?;
        let (ti, fl) = (&b.t[i + 1], b.t[i + 1].unit_flip());
        let mut bad = Vec::new();
        for (ctx, map) in gi.table() {
            let ok = match side(ctx, w, &wi, l) {
                Some(true) => map.support().iter().all(|s| ti.contains_interval(s)),
                Some(false) => map.support().iter().all(|s| fl.contains_interval(s)),
                None => map.is_identity(),
            };
            if !ok {
                bad.push(ctx.to_string());
            }
        }
        let nested = b.t[3].contains_interval(ti);
        r.push(
            "1:support",
            bad.is_empty() && nested,
            format!("g{} supported in I{}; offending contexts {bad:?}", i + 1, i + 2),
        );
    }

    // 2: <g1, g2, g3> fixes every integer (and everything outside I_4)
    let ends_fixed = b.g.iter().all(|gi| {
        gi.table().values().all(|m| {
            let n = m.nodes();
            n.first().map(|p| p.0 == p.1).unwrap_or(false) && n.last().map(|p| p.0 == p.1).unwrap_or(false)
        })
    });
    let zero = Point::default();
    let zero_fixed = b.g.iter().map(|gi| g.is_fixed(gi, &zero)).collect::<Result<Vec<_>, _>>()?;
    r.push(
        "2:g-fixpoint",
        ends_fixed && zero_fixed.iter().all(|&x| x),
        "every g_i fixes every integer",
    );

    // 3: <f_i, g_i> fixes m + x_i
    for i in 0..3 {
        let q = b.x_point(i) + Point::from_integer(b.m.into());
        let ok = b.t[0].contains_point(&b.x_point(i)) && g.is_fixed(&b.f[i], &q)? && g.is_fixed(&b.g[i], &q)?;
        r.push("3:fg-fixpoint", ok, format!("f{0} and g{0} fix {1}", i + 1, format_point(&q)));
    }

    // 4: f_i g_i fixes I_i pointwise
    let fg = (0..3)
        .map(|i| g.then_compose(&b.f[i], &b.g[i]))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, fgi) in fg.iter().enumerate() {
        let lifted = g.lift(fgi, fgi.radius().max(l))?;
        let (ti, fl) = (&b.t[i], b.t[i].unit_flip());
        let mut bad = Vec::new();
        for (ctx, map) in lifted.table() {
            let on = match side(ctx, w, &wi, l) {
                Some(true) => ti,
                Some(false) => &fl,
                None => continue,
            };
            if !map.restrict(&on.lo, &on.hi)?.is_identity() {
                bad.push(ctx.to_string());
            }
        }
        r.push(
            "4:fg-fixes-I",
            bad.is_empty(),
            format!("f{0}g{0} is the identity on I{0}; offending contexts {bad:?}", i + 1),
        );
    }

    // 5: commutations
    for (x, y) in [(2usize, 1usize), (2, 0), (1, 0)] {
        let a = g.then_compose(&fg[x], &b.g[y])?;
        let c = g.then_compose(&b.g[y], &fg[x])?;
        r.push(
            "5:commutation",
            g.equals(&a, &c)?,
            format!("[f{0}g{0}, g{1}] = id", x + 1, y + 1),
        );
    }

    // 6: f1g1 f2g2 f3g3 = g3 g2 g1
    let lhs = g.compose_all(&[&fg[0], &fg[1], &fg[2]])?;
    let rhs = g.compose_all(&[&b.g[2], &b.g[1], &b.g[0]])?;
    r.push("6:identity", g.equals(&lhs, &rhs)?, "f1g1 f2g2 f3g3 = g3 g2 g1");
    Ok(r)
}

/// The rewriting chain turning `σ(f1)σ(f2)σ(f3)` into the empty product.
///
/// The tokens are `σ(f1)σ(f2)σ(f3)σ(g3)σ(g2)σ(g1)` followed by the inverse of
/// `σ(g3)σ(g2)σ(g1)`; the head is rewritten to `σ(g3)σ(g2)σ(g1)` and cancelled.
pub fn theorem_certificate(b: &WitnessBundle) -> Result<Certificate, WitnessError> {
    let ev = b.evidence();
    let mut c = CertificateBuilder::new(&ev);
    c.assume("sigma is a normalized section of the extension of a homogeneous 2-cocycle");
    if b.f.iter().all(GElement::is_identity) {
        c.assume("f1 = f2 = f3 = id, so sigma(f_i) = id by normalization");
        return Ok(c.finish());
    }
    for (name, parts) in [
        ("f1g1", &["f1", "g1"][..]),
        ("f2g2", &["f2", "g2"]),
        ("f3g3", &["f3", "g3"]),
        ("f1g1f2g2", &["f1g1", "f2g2"]),
        ("f1g1f2g2f3g3", &["f1g1f2g2", "f3g3"]),
        ("g2g1", &["g2", "g1"]),
        ("g3g2g1", &["g3", "g2g1"]),
    ] {
        c.define(name, parts)?;
    }
    let s = |x: &str| x.to_string();
    let m = Point::from_integer(b.m.into());
    let mut fix = Vec::new();
    for i in 0..3 {
        fix.push(c.fact(FactKind::FixpointSubgroup {
            members: vec![format!("f{}", i + 1), format!("g{}", i + 1)],
            point: format_point(&(b.x_point(i) + &m)),
        })?);
    }
    let ab32 = c.fact(FactKind::AbelianPair { x: s("f3g3"), y: s("g2") })?;
    let ab31 = c.fact(FactKind::AbelianPair { x: s("f3g3"), y: s("g1") })?;
    let ab21 = c.fact(FactKind::AbelianPair { x: s("f2g2"), y: s("g1") })?;
    let fg_fix = c.fact(FactKind::FixpointSubgroup {
        members: vec![s("f1g1"), s("f2g2"), s("f3g3")],
        point: format_point(&point(&b.t[0].midpoint())),
    })?;
    let ident = c.fact(FactKind::GroupIdentity {
        lhs: vec![s("f1g1f2g2f3g3")],
        rhs: vec![s("g3g2g1")],
    })?;
    let g_fix = c.fact(FactKind::FixpointSubgroup {
        members: vec![s("g1"), s("g2"), s("g3")],
        point: s("0"),
    })?;
    let p = SigmaToken::pos;
    let n = SigmaToken::neg;
    c.tokens(vec![
        p("f1"),
        p("f2"),
        p("f3"),
        p("g3"),
        p("g2"),
        p("g1"),
        n("g1"),
        n("g2"),
        n("g3"),
    ])
    .step(Rule::Merge, 2, Some(fix[2]), &["f3g3"])
    .step(Rule::Swap, 2, Some(ab32), &[])
    .step(Rule::Swap, 3, Some(ab31), &[])
    .step(Rule::Merge, 1, Some(fix[1]), &["f2g2"])
    .step(Rule::Swap, 1, Some(ab21), &[])
    .step(Rule::Merge, 0, Some(fix[0]), &["f1g1"])
    .step(Rule::Merge, 0, Some(fg_fix), &["f1g1f2g2"])
    .step(Rule::Merge, 0, Some(fg_fix), &["f1g1f2g2f3g3"])
    .step(Rule::Rewrite, 0, Some(ident), &["g3g2g1"])
    .step(Rule::Split, 0, Some(g_fix), &["g3", "g2g1"])
    .step(Rule::Split, 1, Some(g_fix), &["g2", "g1"])
    .step(Rule::CancelTail, 2, None, &[])
    .step(Rule::CancelTail, 1, None, &[])
    .step(Rule::CancelTail, 0, None, &[]);
    Ok(c.finish())
}

/// Build, verify and certify. A failed claim aborts with the first failure named.
pub fn run_pipeline(g: &Grho, t: &Triple, cfg: &WitnessConfig) -> Result<PipelineOutput, WitnessError> {
    let bundle = build_bundle(g, t, cfg)?;
    let claims = verify_claims(g, t, &bundle)?;
    if let Some(c) = claims.failures().next() {
        return Err(WitnessError::Claim {
            claim: c.claim.clone(),
            detail: c.detail.clone(),
        });
    }
    let certificate = theorem_certificate(&bundle)?;
    let replay = replay(g, &certificate, &bundle.evidence())?;
    Ok(PipelineOutput {
        bundle,
        claims,
        certificate,
        replay,
    })
}

/// Recorded fixtures: triples of products of lambda-images and special elements.
pub mod fixtures {
    use super::*;

    fn map(nodes: &[(&str, &str)]) -> PlHomeo {
        PlHomeo::from_strs(nodes)
    }

    /// A bump on `(1/4, 1/2)` fixing `1/4`.
    pub fn bump_left() -> PlHomeo {
        map(&[("0", "0"), ("1/4", "1/4"), ("5/16", "3/8"), ("3/8", "7/16"), ("1/2", "1/2"), ("1", "1")])
    }

    /// A bump on `(5/16, 5/8)`.
    pub fn bump_right() -> PlHomeo {
        map(&[("0", "0"), ("5/16", "5/16"), ("7/16", "3/8"), ("9/16", "1/2"), ("5/8", "5/8"), ("1", "1")])
    }

    /// A bump on `(1/2, 3/4)`.
    pub fn bump_high() -> PlHomeo {
        map(&[("0", "0"), ("1/2", "1/2"), ("9/16", "5/8"), ("5/8", "11/16"), ("3/4", "3/4"), ("1", "1")])
    }

    /// A bump on `(1/8, 3/4)`.
    pub fn bump_wide() -> PlHomeo {
        map(&[("0", "0"), ("1/8", "1/8"), ("3/8", "3/16"), ("1/2", "1/4"), ("5/8", "1/2"), ("3/4", "3/4"), ("1", "1")])
    }

    /// A bump on `(3/4, 15/16)`, next to the right end of the unit.
    pub fn bump_edge() -> PlHomeo {
        map(&[("0", "0"), ("3/4", "3/4"), ("13/16", "7/8"), ("7/8", "29/32"), ("15/16", "15/16"), ("1", "1")])
    }

    /// Lambda-images fixing `1/4`; `h` is the identity.
    pub fn triple_a1(g: &Grho) -> Result<(Triple, WitnessConfig), WitnessError> {
        let x = g.lambda_hom(&bump_left())?;
        let y = g.lambda_hom(&bump_right())?;
        Ok((Triple::closing(g, x, y)?, config_at("1/4")))
    }

    /// A special element against a lambda-image; `h` is the identity.
    pub fn triple_a2(g: &Grho) -> Result<(Triple, WitnessConfig), WitnessError> {
        let w = g.labelling().context_unit(0, 2);
        let x = g.special(&w, 2, &bump_high())?;
        let y = g.lambda_hom(&bump_left())?;
        Ok((Triple::closing(g, x, y)?, config_at("1/4")))
    }

    /// Lambda-images fixing `15/16`: `J4` straddles `1` and `h` is a recorded
    /// generator word.
    pub fn triple_b(g: &Grho) -> Result<(Triple, WitnessConfig), WitnessError> {
        let x = g.lambda_hom(&bump_edge())?;
        let y = g.lambda_hom(&bump_left())?;
        let mut cfg = config_at("15/16");
        cfg.h_word = Some(TRIPLE_B_H.to_string());
        Ok((Triple::closing(g, x, y)?, cfg))
    }

    /// Found by `proximal_search` with the default search configuration.
    pub const TRIPLE_B_H: &str = "chi1";

    pub fn config_at(target: &str) -> WitnessConfig {
        WitnessConfig {
            target: target.parse().expect("fixture target"),
            pad: Dyadic::frac(1, 5),
            ..WitnessConfig::default()
        }
    }

    pub fn all(g: &Grho) -> Result<Vec<(&'static str, Triple, WitnessConfig)>, WitnessError> {
        let (a1, c1) = triple_a1(g)?;
        let (a2, c2) = triple_a2(g)?;
        let (b, cb) = triple_b(g)?;
        Ok(vec![("A1", a1, c1), ("A2", a2, c2), ("B", b, cb)])
    }
}
