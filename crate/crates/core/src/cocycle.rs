//! Bounded-cohomology plumbing at desk scale: cochains over finite (or partial)
//! group universes, the coboundary, cocycle flags, and central extensions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::CocycleError;

/// Scalars of cochains and extensions.
pub type Scalar = BigRational;

/// A finite universe of group elements, indexed `0..order()`.
///
/// Products may leave the universe, in which case `mul` returns `None`.
pub trait GroupOracle {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> Option<usize>;
    fn inv(&self, a: usize) -> Option<usize>;
    fn label(&self, a: usize) -> String {
        a.to_string()
    }

    fn mul_or_err(&self, a: usize, b: usize) -> Result<usize, CocycleError> {
        self.mul(a, b)
            .ok_or_else(|| CocycleError::Closure(self.label(a), self.label(b)))
    }

    /// The powers `g^i` that stay inside the universe, with their exponents.
    fn powers(&self, g: usize) -> Vec<(i64, usize)> {
        let mut out = vec![(0, self.identity())];
        for (step, sign) in [(Some(g), 1i64), (self.inv(g), -1)] {
            let Some(s) = step else { continue };
            let mut cur = self.identity();
            let mut i = 0;
            while let Some(next) = self.mul(cur, s) {
                if next == self.identity() {
                    break;
                }
                i += sign;
                out.push((i, next));
                cur = next;
                if i.unsigned_abs() as usize > self.order() {
                    break;
                }
            }
        }
        out
    }
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl TableGroup {
    /// Build from a multiplication table with identity `0`, checking the group axioms.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<TableGroup, CocycleError> {
        let n = table.len();
        let bad = |why: &str| CocycleError::NotAGroup(format!("{name}: {why}"));
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(bad("table is not square over 0..n"));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(bad("0 is not the identity"));
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == 0)
                .ok_or_else(|| bad("missing inverse"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        Ok(TableGroup {
            name: name.to_string(),
            table,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cyclic(n: usize) -> TableGroup {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        TableGroup::from_table(&format!("Z/{n}"), table).expect("cyclic table")
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn product(g: &TableGroup, h: &TableGroup) -> TableGroup {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| g.table[x / m][y / m] * m + h.table[x % m][y % m])
                    .collect()
            })
            .collect();
        TableGroup::from_table(&format!("{}x{}", g.name, h.name), table).expect("product table")
    }

    /// The dihedral group of order `2n`: `r^i` is `i`, `s r^i` is `n + i`.
    pub fn dihedral(n: usize) -> TableGroup {
        let enc = |flip: bool, i: usize| if flip { n + i % n } else { i % n };
        let table = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let (fx, ix) = (x >= n, x % n);
                        let (fy, iy) = (y >= n, y % n);
                        // r^i s = s r^-i
                        let i = if fy { n - ix + iy } else { ix + iy };
                        enc(fx ^ fy, i)
                    })
                    .collect()
            })
            .collect();
        TableGroup::from_table(&format!("D{n}"), table).expect("dihedral table")
    }

    /// The quaternion group; index `2u + s` is `(-1)^s` times the unit `u` of `1, i, j, k`.
    pub fn quaternion() -> TableGroup {
        let unit = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let idx = |u: usize, neg: bool| if neg { u * 2 + 1 } else { u * 2 };
        let table = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (ux, sx) = (x / 2, x % 2 == 1);
                        let (uy, sy) = (y / 2, y % 2 == 1);
                        let (u, s) = unit[ux][uy];
                        idx(u, s ^ sx ^ sy)
                    })
                    .collect()
            })
            .collect();
        TableGroup::from_table("Q8", table).expect("quaternion table")
    }

    /// One group of every isomorphism type of order at most 8.
    pub fn small_groups() -> Vec<TableGroup> {
        let z = TableGroup::cyclic;
        vec![
            z(1),
            z(2),
            z(3),
            z(4),
            TableGroup::product(&z(2), &z(2)),
            z(5),
            z(6),
            TableGroup::dihedral(3),
            z(7),
            z(8),
            TableGroup::product(&z(4), &z(2)),
            TableGroup::product(&TableGroup::product(&z(2), &z(2)), &z(2)),
            TableGroup::dihedral(4),
            TableGroup::quaternion(),
        ]
    }
}

impl GroupOracle for TableGroup {
    fn order(&self) -> usize {
        self.table.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.table[a][b])
    }

    fn inv(&self, a: usize) -> Option<usize> {
        Some(self.inverse[a])
    }
}

/// The integers `-r..=r` under addition, a partial universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerRange {
    pub radius: i64,
}

impl IntegerRange {
    pub fn value(&self, a: usize) -> i64 {
        a as i64 - self.radius
    }

    pub fn index(&self, v: i64) -> Option<usize> {
        (v.abs() <= self.radius).then(|| (v + self.radius) as usize)
    }
}

impl GroupOracle for IntegerRange {
    fn order(&self) -> usize {
        2 * self.radius as usize + 1
    }

    fn identity(&self) -> usize {
        self.radius as usize
    }

    fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.index(self.value(a) + self.value(b))
    }

    fn inv(&self, a: usize) -> Option<usize> {
        self.index(-self.value(a))
    }

    fn label(&self, a: usize) -> String {
        self.value(a).to_string()
    }
}

/// A real-valued (here: rational) function on `G^n`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    order: usize,
    values: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(degree: usize, order: usize) -> Cochain {
        Cochain {
            degree,
            order,
            values: vec![Scalar::zero(); order.pow(degree as u32)],
        }
    }

    pub fn from_fn(degree: usize, order: usize, mut f: impl FnMut(&[usize]) -> Scalar) -> Cochain {
        let mut c = Cochain::zero(degree, order);
        let mut tuple = vec![0; degree];
        for slot in 0..c.values.len() {
            c.decode(slot, &mut tuple);
            c.values[slot] = f(&tuple);
        }
        c
    }

    /// Uniformly random values `p / 2^e` with `|p| <= 2^(e+2)`.
    pub fn random(degree: usize, order: usize, rng: &mut impl Rng) -> Cochain {
        Cochain::from_fn(degree, order, |_| random_scalar(rng))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, tuple: &[usize]) -> &Scalar {
        &self.values[self.encode(tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], v: Scalar) {
        let slot = self.encode(tuple);
        self.values[slot] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.values.len()).map(move |slot| {
            let mut t = vec![0; self.degree];
            self.decode(slot, &mut t);
            t
        })
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.order), (other.degree, other.order));
        Cochain {
            degree: self.degree,
            order: self.order,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }

    fn encode(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.degree, "tuple arity");
        tuple.iter().fold(0, |acc, &g| acc * self.order + g)
    }

    fn decode(&self, mut slot: usize, out: &mut [usize]) {
        for x in out.iter_mut().rev() {
            *x = slot % self.order;
            slot /= self.order;
        }
    }
}

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let e = rng.gen_range(0..4u32);
    let bound = 1i64 << (e + 2);
    BigRational::new(BigInt::from(rng.gen_range(-bound..=bound)), BigInt::from(1i64 << e))
}

/// The coboundary `δ^n`. Tuples whose products leave a partial universe fail.
pub fn delta(c: &Cochain, g: &impl GroupOracle) -> Result<Cochain, CocycleError> {
    let n = c.degree;
    let mut out = Cochain::zero(n + 1, c.order);
    let mut tuple = vec![0; n + 1];
    let mut face = vec![0; n];
    for slot in 0..out.values.len() {
        out.decode(slot, &mut tuple);
        out.values[slot] = delta_at(c, g, &tuple, &mut face)?;
    }
    Ok(out)
}

fn delta_at(
    c: &Cochain,
    g: &impl GroupOracle,
    tuple: &[usize],
    face: &mut [usize],
) -> Result<Scalar, CocycleError> {
    let n = c.degree;
    let mut acc = c.get(&tuple[1..]).clone();
    for i in 1..=n {
        face[..i - 1].copy_from_slice(&tuple[..i - 1]);
        face[i - 1] = g.mul_or_err(tuple[i - 1], tuple[i])?;
        face[i..].copy_from_slice(&tuple[i + 1..]);
        if i % 2 == 1 {
            acc -= c.get(face);
        } else {
            acc += c.get(face);
        }
    }
    if n.is_multiple_of(2) {
        acc -= c.get(&tuple[..n]);
    } else {
        acc += c.get(&tuple[..n]);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleFlags {
    pub cocycle: bool,
    pub normalized: bool,
    pub homogeneous: bool,
    /// `(g, i, j)` with `ω(g^i, g^j) != 0`, as labels and exponents.
    pub homogeneity_witness: Option<(String, i64, i64)>,
    /// Triples skipped by the cocycle check because a product left the universe.
    pub skipped_triples: usize,
}

/// Exhaustive cocycle, normalization and homogeneity checks for a 2-cochain.
pub fn classify(w: &Cochain, g: &impl GroupOracle) -> Result<CocycleFlags, CocycleError> {
    if w.degree != 2 {
        return Err(CocycleError::Degree(w.degree));
    }
    let n = w.order;
    let mut cocycle = true;
    let mut skipped = 0;
    let mut face = vec![0; 2];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                match delta_at(w, g, &[a, b, c], &mut face) {
                    Ok(v) => cocycle &= v.is_zero(),
                    Err(CocycleError::Closure(..)) => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let e = g.identity();
    let normalized = (0..n).all(|f| w.get(&[f, e]).is_zero() && w.get(&[e, f]).is_zero());
    let homogeneity_witness = homogeneity_failure(w, g);
    Ok(CocycleFlags {
        cocycle,
        normalized,
        homogeneous: homogeneity_witness.is_none(),
        homogeneity_witness,
        skipped_triples: skipped,
    })
}

/// The first `(g, i, j)` with `ω(g^i, g^j) != 0`, over the powers inside the universe.
pub fn homogeneity_failure(w: &Cochain, g: &impl GroupOracle) -> Option<(String, i64, i64)> {
    for x in 0..w.order {
        let pw = g.powers(x);
        for (i, a) in &pw {
            for (j, b) in &pw {
                if !w.get(&[*a, *b]).is_zero() {
                    return Some((g.label(x), *i, *j));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationReport {
    pub homogeneous: bool,
    pub homogeneity_witness: Option<(String, i64, i64)>,
    pub checked: usize,
    /// Samples `(f, g, h)` with `ω(f^h, g^h) != ω(f, g)`.
    pub failures: Vec<(String, String, String)>,
}

impl ConjugationReport {
    pub fn ok(&self) -> bool {
        self.homogeneous && self.failures.is_empty()
    }
}

/// Check `ω(f^h, g^h) = ω(f, g)` with `g^h = h^-1 g h` on the given samples.
pub fn check_conjugation_invariance(
    w: &Cochain,
    g: &impl GroupOracle,
    samples: &[(usize, usize, usize)],
) -> ConjugationReport {
    if let Some(wit) = homogeneity_failure(w, g) {
        return ConjugationReport {
            homogeneous: false,
            homogeneity_witness: Some(wit),
            checked: 0,
            failures: Vec::new(),
        };
    }
    let conj = |x: usize, h: usize| {
        let hi = g.inv(h)?;
        g.mul(g.mul(hi, x)?, h)
    };
    let mut checked = 0;
    let mut failures = Vec::new();
    for &(f, x, h) in samples {
        let (Some(fh), Some(xh)) = (conj(f, h), conj(x, h)) else { continue };
        checked += 1;
        if w.get(&[fh, xh]) != w.get(&[f, x]) {
            failures.push((g.label(f), g.label(x), g.label(h)));
        }
    }
    ConjugationReport {
        homogeneous: true,
        homogeneity_witness: None,
        checked,
        failures,
    }
}

/// An element `(λ, g)` of a central extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtensionElement {
    pub scalar: Scalar,
    pub g: usize,
}

impl ExtensionElement {
    pub fn new(scalar: Scalar, g: usize) -> ExtensionElement {
        ExtensionElement { scalar, g }
    }
}

/// The central extension of a finite group by the scalars twisted by `ω`.
#[derive(Debug, Clone)]
pub struct ExtensionGroup<'a, G: GroupOracle> {
    group: &'a G,
    omega: Cochain,
}

impl<'a, G: GroupOracle> ExtensionGroup<'a, G> {
    /// Rejects anything but a normalized 2-cocycle on a closed universe.
    pub fn new(group: &'a G, omega: Cochain) -> Result<Self, CocycleError> {
        let f = classify(&omega, group)?;
        if !f.cocycle || !f.normalized || f.skipped_triples > 0 {
            return Err(CocycleError::NotNormalizedCocycle);
        }
        Ok(ExtensionGroup { group, omega })
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    pub fn identity(&self) -> ExtensionElement {
        ExtensionElement::new(Scalar::zero(), self.group.identity())
    }

    /// `(λ, f)(μ, g) = (λ + μ + ω(f, g), fg)`.
    pub fn mul(&self, x: &ExtensionElement, y: &ExtensionElement) -> Result<ExtensionElement, CocycleError> {
        let fg = self.group.mul_or_err(x.g, y.g)?;
        Ok(ExtensionElement::new(
            &x.scalar + &y.scalar + self.omega.get(&[x.g, y.g]),
            fg,
        ))
    }

    pub fn inv(&self, x: &ExtensionElement) -> Result<ExtensionElement, CocycleError> {
        let gi = self
            .group
            .inv(x.g)
            .ok_or_else(|| CocycleError::Closure(self.group.label(x.g), "^-1".into()))?;
        Ok(ExtensionElement::new(-&x.scalar - self.omega.get(&[x.g, gi]), gi))
    }

    /// The set-theoretic section `g -> (0, g)`.
    pub fn canonical_section(&self) -> Vec<ExtensionElement> {
        (0..self.group.order())
            .map(|g| ExtensionElement::new(Scalar::zero(), g))
            .collect()
    }

    /// `ω_σ(f, g)`: the scalar of `σ(f)σ(g)σ(fg)^-1`.
    pub fn section_to_cocycle(&self, sigma: &[ExtensionElement]) -> Result<Cochain, CocycleError> {
        let n = self.group.order();
        let e = self.group.identity();
        if sigma[e] != self.identity() {
            return Err(CocycleError::SectionNotNormalized);
        }
        for (g, s) in sigma.iter().enumerate() {
            if s.g != g {
                return Err(CocycleError::NotASection(self.group.label(g)));
            }
        }
        let mut out = Cochain::zero(2, n);
        for f in 0..n {
            for g in 0..n {
                let fg = self.group.mul_or_err(f, g)?;
                let p = self.mul(&self.mul(&sigma[f], &sigma[g])?, &self.inv(&sigma[fg])?)?;
                debug_assert_eq!(p.g, e);
                out.set(&[f, g], p.scalar);
            }
        }
        Ok(out)
    }
}

/// `δφ` for a 1-cochain `φ`; normalized exactly when `φ(id) = 0`.
pub fn coboundary_of(phi: &Cochain, g: &impl GroupOracle) -> Result<Cochain, CocycleError> {
    if phi.degree != 1 {
        return Err(CocycleError::Degree(phi.degree));
    }
    delta(phi, g)
}

/// A random normalized 2-cocycle: the coboundary of a potential vanishing at the identity.
pub fn random_normalized_cocycle(g: &impl GroupOracle, rng: &mut impl Rng) -> Cochain {
    let e = g.identity();
    let phi = Cochain::from_fn(1, g.order(), |t| {
        if t[0] == e {
            Scalar::zero()
        } else {
            random_scalar(rng)
        }
    });
    coboundary_of(&phi, g).expect("closed universe")
}

/// `ω(m, n) = m n` on an integer range: a cocycle that is not homogeneous.
pub fn multiplicative_cochain(z: &IntegerRange) -> Cochain {
    Cochain::from_fn(2, z.order(), |t| {
        BigRational::from_integer(BigInt::from(z.value(t[0]) * z.value(t[1])))
    })
}

/// Human-readable dump of a 2-cochain, for reports.
pub fn cochain_table(w: &Cochain, g: &impl GroupOracle) -> BTreeMap<String, String> {
    w.tuples()
        .filter(|t| !w.get(t).is_zero())
        .map(|t| {
            let key = t.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(",");
            (key, w.get(&t).to_string())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    #[test]
    fn small_groups_have_expected_orders() {
        let orders: Vec<usize> = TableGroup::small_groups().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
        let d4 = TableGroup::dihedral(4);
        let q8 = TableGroup::quaternion();
        // D4 has five involutions, Q8 only -1
        let involutions = |g: &TableGroup| (1..8).filter(|&a| g.mul(a, a) == Some(0)).count();
        assert_eq!(involutions(&d4), 5);
        assert_eq!(involutions(&q8), 1);
    }

    #[test]
    fn homomorphism_has_zero_coboundary() {
        let z4 = TableGroup::cyclic(4);
        let hom = Cochain::zero(1, 4);
        assert!(delta(&hom, &z4).unwrap().is_zero());
        // constant 0-cochain
        let c = Cochain::from_fn(0, 4, |_| q(7));
        assert!(delta(&c, &z4).unwrap().is_zero());
        // Z -> Q, n -> 3n restricted to a closed check on the integer range
        let z = IntegerRange { radius: 3 };
        let f = Cochain::from_fn(1, z.order(), |t| q(3 * z.value(t[0])));
        let d = Cochain::from_fn(2, z.order(), |t| {
            let (a, b) = (z.value(t[0]), z.value(t[1]));
            if (a + b).abs() <= 3 {
                q(3 * b - 3 * (a + b) + 3 * a)
            } else {
                q(0)
            }
        });
        assert!(d.is_zero());
        assert!(delta(&f, &z).is_err());
    }

    #[test]
    fn delta_squared_vanishes_on_z4() {
        let z4 = TableGroup::cyclic(4);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for deg in 0..3 {
            let c = Cochain::random(deg, 4, &mut rng);
            let dd = delta(&delta(&c, &z4).unwrap(), &z4).unwrap();
            assert!(dd.is_zero(), "degree {deg}");
        }
    }

    #[test]
    fn coboundary_normalized_iff_potential_is() {
        let z4 = TableGroup::cyclic(4);
        let phi = Cochain::from_fn(1, 4, |t| q([2, 1, 5, -1][t[0]]));
        let f = classify(&delta(&phi, &z4).unwrap(), &z4).unwrap();
        assert!(f.cocycle && !f.normalized);
        let phi0 = Cochain::from_fn(1, 4, |t| q([0, 1, 5, -1][t[0]]));
        let f0 = classify(&delta(&phi0, &z4).unwrap(), &z4).unwrap();
        assert!(f0.cocycle && f0.normalized);
    }

    #[test]
    fn zero_cochain_has_every_flag() {
        let g = TableGroup::dihedral(3);
        let f = classify(&Cochain::zero(2, 6), &g).unwrap();
        assert!(f.cocycle && f.normalized && f.homogeneous);
        assert!(check_conjugation_invariance(&Cochain::zero(2, 6), &g, &[(1, 3, 4)]).ok());
    }

    #[test]
    fn extension_is_associative_with_neutral_identity() {
        let z2 = TableGroup::cyclic(2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let w = random_normalized_cocycle(&z2, &mut rng);
        let ext = ExtensionGroup::new(&z2, w).unwrap();
        let elems: Vec<ExtensionElement> = (0..2)
            .flat_map(|g| [q(0), q(1), q(-3)].map(|s| ExtensionElement::new(s, g)))
            .collect();
        for x in &elems {
            assert_eq!(&ext.mul(x, &ext.identity()).unwrap(), x);
            assert_eq!(&ext.mul(&ext.identity(), x).unwrap(), x);
            assert_eq!(ext.mul(x, &ext.inv(x).unwrap()).unwrap(), ext.identity());
            for y in &elems {
                for z in &elems {
                    let l = ext.mul(&ext.mul(x, y).unwrap(), z).unwrap();
                    let r = ext.mul(x, &ext.mul(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn canonical_section_returns_omega() {
        let g = TableGroup::quaternion();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let w = random_normalized_cocycle(&g, &mut rng);
        let ext = ExtensionGroup::new(&g, w.clone()).unwrap();
        assert_eq!(ext.section_to_cocycle(&ext.canonical_section()).unwrap(), w);
    }

    #[test]
    fn perturbed_section_differs_by_a_coboundary() {
        let g = TableGroup::cyclic(4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = random_normalized_cocycle(&g, &mut rng);
        let ext = ExtensionGroup::new(&g, w.clone()).unwrap();
        let beta = Cochain::from_fn(1, 4, |t| q([0, 3, -2, 5][t[0]]));
        let sigma: Vec<_> = (0..4).map(|x| ExtensionElement::new(beta.get(&[x]).clone(), x)).collect();
        let w2 = ext.section_to_cocycle(&sigma).unwrap();
        assert_eq!(w2.sub(&w), delta(&beta, &g).unwrap());
    }

    #[test]
    fn rejects_non_cocycles_and_bad_sections() {
        let g = TableGroup::cyclic(3);
        let mut w = Cochain::zero(2, 3);
        w.set(&[1, 1], q(1));
        assert_eq!(ExtensionGroup::new(&g, w).unwrap_err(), CocycleError::NotNormalizedCocycle);
        let ext = ExtensionGroup::new(&g, Cochain::zero(2, 3)).unwrap();
        let mut s = ext.canonical_section();
        s[0].scalar = q(1);
        assert_eq!(ext.section_to_cocycle(&s).unwrap_err(), CocycleError::SectionNotNormalized);
    }

    #[test]
    fn multiplicative_cochain_fails_homogeneity_at_a_square() {
        let z = IntegerRange { radius: 4 };
        let w = multiplicative_cochain(&z);
        let f = classify(&w, &z).unwrap();
        assert!(f.cocycle, "m n is a cocycle wherever defined");
        assert!(!f.normalized || !f.homogeneous);
        assert!(f.skipped_triples > 0);
        let (g, i, j) = f.homogeneity_witness.unwrap();
        let gv: i64 = g.parse().unwrap();
        assert_ne!(gv * i * gv * j, 0);
        let r = check_conjugation_invariance(&w, &z, &[(5, 6, 7)]);
        assert!(!r.ok() && r.checked == 0);
    }
}
