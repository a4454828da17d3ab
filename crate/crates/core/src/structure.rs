//! Cellular decompositions of pairs of elements that fix a neighbourhood of 0.
//!
//! Anchors are the integers whose context matches the context of 0 at a radius
//! large enough that both elements fix a two-sided neighbourhood of every anchor.
//! Consecutive anchors bound atoms; atoms are grouped into classes by their
//! decorated context word up to formal inversion. Each class contributes one
//! coordinate of an embedded direct sum of copies of `F'`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::element::{GElement, Grho};
use crate::error::{ElementError, StructureError};
use crate::labelling::Word;
use crate::plmap::{dyadic_interpolate, Interval, Orientation, PlHomeo};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedAtom {
    pub lo: i64,
    pub hi: i64,
    pub decoration: usize,
    pub word: Word,
}

impl DecoratedAtom {
    pub fn len(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomClass {
    /// The lexicographically smaller of the two words seen in the class.
    pub word: Word,
    pub length: i64,
    /// An atom of the class, preferring one whose word is `word` itself.
    pub representative: (i64, i64),
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellularDecomposition {
    pub anchor_radius: usize,
    pub anchor_word: Word,
    pub max_atom_len: i64,
    pub decoration: usize,
    pub window: (i64, i64),
    pub atoms: Vec<DecoratedAtom>,
    pub classes: Vec<AtomClass>,
}

impl CellularDecomposition {
    /// Radius at which the class of a unit's atom is visible from the unit itself.
    pub fn table_radius(&self) -> usize {
        3 * self.max_atom_len as usize + self.anchor_radius
    }

    pub fn class_index(&self, w: &Word) -> Option<(usize, Orientation)> {
        let (canon, orient) = canonical(w);
        self.classes
            .iter()
            .position(|c| c.word == canon)
            .map(|i| (i, orient))
    }
}

/// A decomposition together with the class components of both elements.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub cells: CellularDecomposition,
    pub f_components: Vec<GElement>,
    pub g_components: Vec<GElement>,
    /// The `F'` coordinate of each component, read off the representative atom.
    pub f_coords: Vec<PlHomeo>,
    pub g_coords: Vec<PlHomeo>,
}

fn canonical(w: &Word) -> (Word, Orientation) {
    let wi = w.formal_inverse();
    if *w <= wi {
        (w.clone(), Orientation::Preserve)
    } else {
        (wi, Orientation::Reverse)
    }
}

/// Units covered by a window level: `[-n, n)` with `n = |W_level| / 2`.
pub fn window_units(g: &Grho, level: usize) -> (i64, i64) {
    let n = (g.labelling().level_len(level) / 2) as i64;
    (-n, n)
}

/// Closed line intervals of `[lo, hi]` fixed pointwise by `e`, merged.
fn fixed_segments(g: &Grho, e: &GElement, lo: i64, hi: i64) -> Result<Vec<Interval>, ElementError> {
    let mut out: Vec<Interval> = Vec::new();
    for n in lo..hi {
        let nd = Dyadic::from(n);
        for piece in g.unit_map(e, n)?.fixed_pieces() {
            if let crate::plmap::FixedPiece::Segment(s) = piece {
                let s = s.shift(&nd);
                match out.last_mut() {
                    Some(last) if last.hi == s.lo => last.hi = s.hi,
                    _ => out.push(s),
                }
            }
        }
    }
    Ok(out)
}

/// The maximal interval fixed pointwise by both elements nearest 0 within the window.
pub fn common_fixed_interval(
    g: &Grho,
    f: &GElement,
    h: &GElement,
    level: usize,
) -> Result<Interval, StructureError> {
    let (lo, hi) = window_units(g, level);
    let a = fixed_segments(g, f, lo, hi)?;
    let b = fixed_segments(g, h, lo, hi)?;
    let mut common = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let l = (&a[i].lo).max(&b[j].lo).clone();
        let r = (&a[i].hi).min(&b[j].hi).clone();
        if l < r {
            common.push(Interval { lo: l, hi: r });
        }
        if a[i].hi < b[j].hi {
            i += 1;
        } else {
            j += 1;
        }
    }
    let zero = Dyadic::zero();
    let dist = |s: &Interval| {
        if s.contains(&zero) {
            Dyadic::zero()
        } else if s.lo > zero {
            s.lo.clone()
        } else {
            -&s.hi
        }
    };
    common
        .into_iter()
        .min_by(|x, y| dist(x).cmp(&dist(y)).then(y.len().cmp(&x.len())))
        .ok_or(StructureError::NoCommonFixedInterval)
}

fn check_zero(g: &Grho, f: &GElement, h: &GElement) -> Result<(), StructureError> {
    if g.fixes_neighbourhood_of_integer(f, 0)? && g.fixes_neighbourhood_of_integer(h, 0)? {
        Ok(())
    } else {
        Err(StructureError::NotFixingZero)
    }
}

/// Radius of the anchor words. Anchor words are centred on the integer itself, so
/// one more than either element's radius covers the contexts of both adjacent units.
pub fn anchor_radius(f: &GElement, h: &GElement) -> usize {
    f.radius().max(h.radius()) + 1
}

/// The word of radius `k` centred on the integer `n`.
fn integer_word(g: &Grho, n: i64, k: usize) -> Word {
    g.labelling().word_between(2 * n - k as i64, 2 * n + k as i64)
}

/// `n` is an anchor when the word around it equals the word around 0 or its inverse.
/// Accepting both keeps the anchor set symmetric under reflection.
fn is_anchor(g: &Grho, cells_word: &Word, cells_word_inv: &Word, n: i64, k: usize) -> bool {
    let w = integer_word(g, n, k);
    w == *cells_word || w == *cells_word_inv
}

pub fn anchor_set(g: &Grho, f: &GElement, h: &GElement, level: usize) -> Result<Vec<i64>, StructureError> {
    check_zero(g, f, h)?;
    let k = anchor_radius(f, h);
    let (lo, hi) = window_units(g, level);
    let w0 = integer_word(g, 0, k);
    let w0i = w0.formal_inverse();
    let mut anchors = Vec::new();
    for n in lo..hi {
        if is_anchor(g, &w0, &w0i, n, k) {
            if !(g.fixes_neighbourhood_of_integer(f, n)? && g.fixes_neighbourhood_of_integer(h, n)?) {
                return Err(StructureError::NotFixingZero);
            }
            anchors.push(n);
        }
    }
    Ok(anchors)
}

/// Atoms, classes and decoration for the pair, read off the window.
pub fn cellular_decomposition(
    g: &Grho,
    f: &GElement,
    h: &GElement,
    level: usize,
) -> Result<CellularDecomposition, StructureError> {
    let k = anchor_radius(f, h);
    let rho = g.labelling();
    // grow the window until it holds the atoms of every unit used in tabulation
    let mut level = level;
    let (anchors, max_len) = loop {
        let anchors = anchor_set(g, f, h, level)?;
        let max_len = anchors
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .ok_or(StructureError::AnchorGap(0, 0))?;
        let reach = rho
            .occurring_contexts(3 * max_len as usize + k)
            .map_err(ElementError::from)?
            .iter()
            .map(|(_, n)| n.abs())
            .max()
            .unwrap_or(0)
            + max_len
            + 1;
        if reach < window_units(g, level).1 || level >= crate::labelling::MAX_LEVEL {
            break (anchors, max_len);
        }
        level += 1;
    };
    let l = k + max_len as usize;
    let mut atoms = Vec::new();
    let mut classes: BTreeMap<Word, AtomClass> = BTreeMap::new();
    let mut rep_preserves: HashMap<Word, bool> = HashMap::new();
    for w in anchors.windows(2) {
        let word = atom_word(g, w[0], w[1], l);
        let (canon, orient) = canonical(&word);
        let preserves = orient == Orientation::Preserve;
        let entry = classes.entry(canon.clone()).or_insert_with(|| AtomClass {
            word: canon.clone(),
            length: w[1] - w[0],
            representative: (w[0], w[1]),
            count: 0,
        });
        entry.count += 1;
        let had = rep_preserves.entry(canon).or_insert(preserves);
        if preserves && !*had {
            entry.representative = (w[0], w[1]);
            *had = true;
        }
        atoms.push(DecoratedAtom {
            lo: w[0],
            hi: w[1],
            decoration: l,
            word,
        });
    }
    let cells = CellularDecomposition {
        anchor_radius: k,
        anchor_word: integer_word(g, 0, k),
        max_atom_len: max_len,
        decoration: l,
        window: window_units(g, level),
        atoms,
        classes: classes.into_values().collect(),
    };
    verify_classes(g, f, &cells)?;
    verify_classes(g, h, &cells)?;
    Ok(cells)
}

fn atom_word(g: &Grho, lo: i64, hi: i64, l: usize) -> Word {
    g.labelling()
        .context_interval(&Dyadic::from(lo), &Dyadic::from(hi), l)
        .expect("integer endpoints")
}

/// `e` on `[lo, hi]`, moved to `[0, hi - lo]` and turned to the class orientation.
fn atom_restriction(
    g: &Grho,
    e: &GElement,
    lo: i64,
    hi: i64,
    orient: Orientation,
) -> Result<PlHomeo, ElementError> {
    let m = g.line_map(e, lo, hi)?;
    let target = Interval {
        lo: Dyadic::zero(),
        hi: Dyadic::from(hi - lo),
    };
    Ok(m.transport(&target, orient)?)
}

/// Atoms sharing a class are conjugate or flip-conjugate, exactly.
fn verify_classes(g: &Grho, e: &GElement, cells: &CellularDecomposition) -> Result<(), StructureError> {
    let mut seen: HashMap<usize, (PlHomeo, i64, i64)> = HashMap::new();
    for a in &cells.atoms {
        let (i, orient) = cells.class_index(&a.word).expect("classes cover atoms");
        let r = atom_restriction(g, e, a.lo, a.hi, orient)?;
        match seen.get(&i) {
            Some((prev, plo, phi)) => {
                if *prev != r {
                    return Err(StructureError::ClassUnsound(*plo, *phi, a.lo, a.hi));
                }
            }
            None => {
                seen.insert(i, (r, a.lo, a.hi));
            }
        }
    }
    Ok(())
}

/// The atom containing unit `n` and its class.
struct UnitAtom {
    lo: i64,
    hi: i64,
    class: usize,
    orient: Orientation,
}

fn locate(g: &Grho, cells: &CellularDecomposition, n: i64) -> Result<UnitAtom, StructureError> {
    let m = cells.max_atom_len;
    let wi = cells.anchor_word.formal_inverse();
    let is_anchor = |x: i64| is_anchor(g, &cells.anchor_word, &wi, x, cells.anchor_radius);
    let lo = (0..m)
        .map(|d| n - d)
        .find(|&x| is_anchor(x))
        .ok_or(StructureError::AnchorGap(m, n))?;
    let hi = (1..=m)
        .map(|d| lo + d)
        .find(|&x| is_anchor(x))
        .ok_or(StructureError::AnchorGap(m, n))?;
    let word = atom_word(g, lo, hi, cells.decoration);
    let (class, orient) = cells
        .class_index(&word)
        .ok_or(StructureError::UnknownClass(lo, hi))?;
    Ok(UnitAtom {
        lo,
        hi,
        class,
        orient,
    })
}

/// The atom of the representative unit of every context used in tabulation.
fn unit_atoms(g: &Grho, cells: &CellularDecomposition) -> Result<Vec<(Word, i64, UnitAtom)>, StructureError> {
    let occ = g
        .labelling()
        .occurring_contexts(cells.table_radius())
        .map_err(ElementError::from)?;
    occ.iter()
        .map(|(w, n)| Ok((w.clone(), *n, locate(g, cells, *n)?)))
        .collect()
}

/// Tabulate an element unit by unit from the atom containing each unit.
fn tabulate_by_atoms(
    cells: &CellularDecomposition,
    atoms: &[(Word, i64, UnitAtom)],
    mut unit: impl FnMut(&UnitAtom, i64) -> Result<PlHomeo, StructureError>,
) -> Result<GElement, StructureError> {
    let mut table = BTreeMap::new();
    for (w, n, a) in atoms {
        let m = unit(a, *n)?;
        table.insert(w.clone(), m.shift(&Dyadic::from(-*n)));
    }
    Ok(GElement::from_table(cells.table_radius(), table)?.reduced())
}

/// `psi : [0, L] -> [0, 1]`, the dyadic rescaling used for class coordinates.
fn psi(len: i64) -> PlHomeo {
    dyadic_interpolate(
        &Interval {
            lo: Dyadic::zero(),
            hi: Dyadic::from(len),
        },
        &Interval::unit(),
    )
}

/// `phi_i(u) = psi u psi^-1` on `[0, L_i]`.
pub fn phi_coordinate(len: i64, u: &PlHomeo) -> Result<PlHomeo, StructureError> {
    let p = psi(len);
    Ok(p.then(u).map_err(ElementError::from)?.then(&p.inverse()).map_err(ElementError::from)?)
}

/// The inverse of [`phi_coordinate`].
pub fn project_coordinate(len: i64, m: &PlHomeo) -> Result<PlHomeo, StructureError> {
    let p = psi(len);
    Ok(p.inverse().then(m).map_err(ElementError::from)?.then(&p).map_err(ElementError::from)?)
}

/// Split `f` and `h` into one component per class, with their `F'` coordinates.
pub fn cellular_decompose(g: &Grho, f: &GElement, h: &GElement, level: usize) -> Result<Decomposition, StructureError> {
    let cells = cellular_decomposition(g, f, h, level)?;
    let (f_components, f_coords) = components(g, f, &cells)?;
    let (g_components, g_coords) = components(g, h, &cells)?;
    Ok(Decomposition {
        cells,
        f_components,
        g_components,
        f_coords,
        g_coords,
    })
}

fn components(
    g: &Grho,
    e: &GElement,
    cells: &CellularDecomposition,
) -> Result<(Vec<GElement>, Vec<PlHomeo>), StructureError> {
    let atoms = unit_atoms(g, cells)?;
    let mut comps = Vec::with_capacity(cells.classes.len());
    for ci in 0..cells.classes.len() {
        let c = tabulate_by_atoms(cells, &atoms, |a, n| {
            if a.class == ci {
                Ok(g.unit_on(e, n)?)
            } else {
                Ok(PlHomeo::identity(&crate::element::unit_interval(n)))
            }
        })?;
        comps.push(c);
    }
    let coords = cells
        .classes
        .iter()
        .map(|c| {
            let (lo, hi) = c.representative;
            let word = atom_word(g, lo, hi, cells.decoration);
            let (_, orient) = canonical(&word);
            let m = atom_restriction(g, e, lo, hi, orient)?;
            project_coordinate(c.length, &m)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((comps, coords))
}

/// Assemble the element with coordinate `tuple[i]` on every atom of class `i`.
pub fn phi_embed(g: &Grho, cells: &CellularDecomposition, tuple: &[PlHomeo]) -> Result<GElement, StructureError> {
    if tuple.len() != cells.classes.len() {
        return Err(StructureError::Arity {
            expected: cells.classes.len(),
            got: tuple.len(),
        });
    }
    let mut placed = Vec::with_capacity(tuple.len());
    for (u, c) in tuple.iter().zip(&cells.classes) {
        if !u.classify().map_err(ElementError::from)?.in_fprime {
            return Err(ElementError::NotInFPrime.into());
        }
        placed.push(phi_coordinate(c.length, u)?);
    }
    let atoms = unit_atoms(g, cells)?;
    tabulate_by_atoms(cells, &atoms, |a, n| {
        let atom = Interval {
            lo: Dyadic::from(a.lo),
            hi: Dyadic::from(a.hi),
        };
        let m = placed[a.class]
            .transport(&atom, a.orient)
            .map_err(ElementError::from)?;
        Ok(m.restrict(&Dyadic::from(n), &Dyadic::from(n + 1))
            .map_err(ElementError::from)?)
    })
}

/// Base-2 logarithms of the left and right slopes of `e` at a fixed point `x`.
pub fn germ_pair(g: &Grho, e: &GElement, x: &Dyadic) -> Result<(i64, i64), StructureError> {
    if g.evaluate(e, x)? != *x {
        return Err(ElementError::NotFixed(x.to_string()).into());
    }
    let n = x.floor_i64();
    let t = x - &Dyadic::from(n);
    let here = g.unit_map(e, n)?;
    if t.is_zero() {
        let left = g.unit_map(e, n - 1)?;
        let l = *left.slopes().last().unwrap();
        let r = here.slopes()[0];
        Ok((l, r))
    } else {
        let (l, r) = here.germ(&t).map_err(ElementError::from)?;
        Ok((l.unwrap(), r.unwrap()))
    }
}

/// JSON summary of a decomposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub anchor_radius: usize,
    pub decoration: usize,
    pub max_atom_len: i64,
    pub atoms_in_window: usize,
    pub classes: Vec<AtomClass>,
    pub nontrivial_classes: Vec<usize>,
    pub recomposition_f: bool,
    pub recomposition_g: bool,
}

impl Decomposition {
    pub fn report(&self, g: &Grho, f: &GElement, h: &GElement) -> Result<DecompositionReport, StructureError> {
        let nontrivial = (0..self.cells.classes.len())
            .filter(|&i| !self.f_components[i].is_identity() || !self.g_components[i].is_identity())
            .collect();
        let rf = g.compose_all(&self.f_components.iter().collect::<Vec<_>>())?;
        let rg = g.compose_all(&self.g_components.iter().collect::<Vec<_>>())?;
        Ok(DecompositionReport {
            anchor_radius: self.cells.anchor_radius,
            decoration: self.cells.decoration,
            max_atom_len: self.cells.max_atom_len,
            atoms_in_window: self.cells.atoms.len(),
            classes: self.cells.classes.clone(),
            nontrivial_classes: nontrivial,
            recomposition_f: g.equals(&rf, f)?,
            recomposition_g: g.equals(&rg, h)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump() -> PlHomeo {
        PlHomeo::from_strs(&[("0", "0"), ("1/4", "1/4"), ("3/8", "5/16"), ("7/16", "3/8"), ("1/2", "1/2"), ("1", "1")])
    }

    fn bump2() -> PlHomeo {
        PlHomeo::from_strs(&[("0", "0"), ("1/2", "1/2"), ("9/16", "5/8"), ("5/8", "11/16"), ("3/4", "3/4"), ("1", "1")])
    }

    #[test]
    fn identity_pair() {
        let g = Grho::with_defaults();
        let id = g.identity();
        let anchors = anchor_set(&g, &id, &id, 4).unwrap();
        assert!(anchors.contains(&0));
        let d = cellular_decompose(&g, &id, &id, 4).unwrap();
        assert!(d.f_components.iter().all(GElement::is_identity));
        let r = d.report(&g, &id, &id).unwrap();
        assert!(r.recomposition_f && r.nontrivial_classes.is_empty());
        let c = common_fixed_interval(&g, &id, &id, 3).unwrap();
        assert_eq!(c, Interval { lo: Dyadic::from(-31), hi: Dyadic::from(31) });
    }

    #[test]
    fn lambda_and_special_pair() {
        let g = Grho::with_defaults();
        let f = g.lambda_hom(&bump()).unwrap();
        let w = g.labelling().context_unit(0, 2);
        let h = g.special(&w, 2, &bump2()).unwrap();
        let d = cellular_decompose(&g, &f, &h, 4).unwrap();
        let r = d.report(&g, &f, &h).unwrap();
        assert!(r.recomposition_f && r.recomposition_g);
        assert!(!r.nontrivial_classes.is_empty());
        // every coordinate is in F' and the embedding reproduces the components
        for (i, c) in d.f_coords.iter().enumerate() {
            assert!(c.classify().unwrap().in_fprime, "{i} {c:?} {:?}", d.cells.classes[i]);
            let mut tuple = vec![PlHomeo::unit_identity(); d.cells.classes.len()];
            tuple[i] = c.clone();
            let e = phi_embed(&g, &d.cells, &tuple).unwrap();
            assert!(g.equals(&e, &d.f_components[i]).unwrap());
            let m = g.membership_check(&e).unwrap();
            assert!(m.ok, "{:?}", m.failures);
            // the class of a unit's atom is only visible from 2M + l away
            assert!(m.witnessing_radius <= d.cells.table_radius());
        }
        let whole = phi_embed(&g, &d.cells, &d.f_coords).unwrap();
        assert!(g.equals(&whole, &f).unwrap());
        assert!(matches!(phi_embed(&g, &d.cells, &[]), Err(StructureError::Arity { .. })));
    }

    #[test]
    fn rejects_moving_zero() {
        let g = Grho::with_defaults();
        let z = g.generator("zeta1".parse().unwrap()).clone();
        assert!(matches!(anchor_set(&g, &z, &z, 3), Err(StructureError::NotFixingZero)));
    }

    #[test]
    fn germs() {
        let g = Grho::with_defaults();
        assert_eq!(germ_pair(&g, &g.identity(), &Dyadic::from(3)).unwrap(), (0, 0));
        let z = g.generator("zeta1".parse().unwrap());
        // unit 0 carries b, unit -1 carries b as well: both sides see nu1 (slopes 1/2 at both ends)
        assert_eq!(germ_pair(&g, z, &Dyadic::zero()).unwrap(), (-1, -1));
        assert!(germ_pair(&g, z, &"1/4".parse().unwrap()).is_err());
    }
}
