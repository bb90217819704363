//! The calculus of pointed finite sets: morphism taxonomy, the unique
//! strongly-inert/active factorization of tagged edges, wedge bookkeeping,
//! and truncated nerves of the category of pointed sets.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::nerve::{nerve, ArrId, CatBuilder, FinCategory, Nerve, ObjId};
use crate::simplicial::{product_truncated, FiniteSimplicialSet, PairedSset};
use crate::Limits;

/// A morphism `⟨m⟩ -> ⟨n⟩` of pointed finite sets, stored as the value
/// array on `{1,..,m}` with 0 the basepoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedMap {
    target: usize,
    values: Vec<usize>,
}

impl PointedMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        for &v in &values {
            if v > target {
                return Err(Error::InvalidTable(format!(
                    "value {v} out of range for target ⟨{target}⟩"
                )));
            }
        }
        Ok(PointedMap { target, values })
    }

    pub fn identity(n: usize) -> Self {
        PointedMap { target: n, values: (1..=n).collect() }
    }

    /// The unique map into `⟨0⟩`.
    pub fn to_zero(m: usize) -> Self {
        PointedMap { target: 0, values: alloc::vec![0; m] }
    }

    /// The inert map `ρ^i: ⟨n⟩ -> ⟨1⟩` picking out the i-th element.
    pub fn rho(n: usize, i: usize) -> Self {
        PointedMap {
            target: 1,
            values: (1..=n).map(|j| if j == i { 1 } else { 0 }).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.values.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Image of a non-basepoint element `1 <= j <= m`.
    pub fn value(&self, j: usize) -> usize {
        self.values[j - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Composition is array substitution.
    pub fn then(&self, g: &PointedMap) -> Result<PointedMap> {
        if self.target != g.source() {
            return Err(Error::InvalidTable(format!(
                "cannot compose ⟨{}⟩→⟨{}⟩ with ⟨{}⟩→⟨{}⟩",
                self.source(),
                self.target,
                g.source(),
                g.target
            )));
        }
        Ok(PointedMap {
            target: g.target,
            values: self
                .values
                .iter()
                .map(|&v| if v == 0 { 0 } else { g.value(v) })
                .collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source() && self.values.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Inert: every non-basepoint target element has exactly one preimage.
    pub fn is_inert(&self) -> bool {
        let mut count = alloc::vec![0usize; self.target + 1];
        for &v in &self.values {
            count[v] += 1;
        }
        (1..=self.target).all(|i| count[i] == 1)
    }

    /// Active: no non-basepoint element maps to the basepoint.
    pub fn is_active(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }

    /// For an inert map, the section `⟨n⟩° -> ⟨m⟩°` sending each target
    /// element to its unique preimage.
    pub fn inert_section(&self) -> Option<Vec<usize>> {
        if !self.is_inert() {
            return None;
        }
        let mut sec = alloc::vec![0usize; self.target];
        for (k, &v) in self.values.iter().enumerate() {
            if v > 0 {
                sec[v - 1] = k + 1;
            }
        }
        Some(sec)
    }

    /// Inert with order-preserving section.
    pub fn is_order_inert(&self) -> bool {
        match self.inert_section() {
            None => false,
            Some(sec) => sec.windows(2).all(|w| w[0] < w[1]),
        }
    }

    /// Preimage of a non-basepoint element, in increasing order.
    pub fn preimage(&self, i: usize) -> Vec<usize> {
        (1..=self.source()).filter(|&j| self.value(j) == i).collect()
    }

    /// All pointed maps `⟨m⟩ -> ⟨n⟩`, enumerated in lexicographic order of
    /// their value arrays.
    pub fn enumerate(m: usize, n: usize) -> Vec<PointedMap> {
        let mut out = Vec::new();
        let mut values = alloc::vec![0usize; m];
        loop {
            out.push(PointedMap { target: n, values: values.clone() });
            // increment the array in base n+1
            let mut pos = m;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if values[pos] < n {
                    values[pos] += 1;
                    for v in values[pos + 1..].iter_mut() {
                        *v = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Textual form `m>n:[v1,..,vm]`.
    pub fn display(&self) -> String {
        let mut s = format!("{}>{}:[", self.source(), self.target);
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&v.to_string());
        }
        s.push(']');
        s
    }

    /// Parses the textual form produced by [`PointedMap::display`].
    pub fn parse(text: &str) -> Result<PointedMap> {
        let err = || Error::InvalidTable(format!("malformed pointed map: {text}"));
        let (header, rest) = text.split_once(':').ok_or_else(err)?;
        let (m, n) = header.split_once('>').ok_or_else(err)?;
        let m: usize = m.trim().parse().map_err(|_| err())?;
        let n: usize = n.trim().parse().map_err(|_| err())?;
        let body = rest.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(err)?;
        let values: Vec<usize> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|v| v.trim().parse().map_err(|_| err()))
                .collect::<Result<_>>()?
        };
        if values.len() != m {
            return Err(err());
        }
        PointedMap::new(n, values)
    }
}

/// Classification of a bare pointed map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapClass {
    pub inert: bool,
    pub active: bool,
}

pub fn classify(alpha: &PointedMap) -> MapClass {
    MapClass { inert: alpha.is_inert(), active: alpha.is_active() }
}

/// An edge of `N(Fin_*) × Δ^{{1,..,n}}`: a pointed map together with an
/// ordered pair of vertices of the simplex factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TaggedEdge {
    pub map: PointedMap,
    pub e0: usize,
    pub e1: usize,
}

impl TaggedEdge {
    pub fn new(map: PointedMap, e0: usize, e1: usize) -> Result<Self> {
        if e0 == 0 || e0 > e1 {
            return Err(Error::InvalidTable(format!("bad simplex edge ({e0},{e1})")));
        }
        Ok(TaggedEdge { map, e0, e1 })
    }

    pub fn display(&self) -> String {
        format!("{}@({},{})", self.map.display(), self.e0, self.e1)
    }

    pub fn is_active(&self) -> bool {
        self.map.is_active()
    }

    /// Strongly inert: inert map with order-preserving section, and a
    /// degenerate simplex component.
    pub fn is_strongly_inert(&self) -> bool {
        self.map.is_order_inert() && self.e0 == self.e1
    }

    pub fn is_neutral(&self) -> bool {
        !self.is_active() && !self.is_strongly_inert()
    }
}

/// The canonical factorization of a tagged edge as a strongly inert edge
/// followed by an active edge. The strongly inert part is the
/// order-preserving collapse onto the support.
pub fn inert_active_factorize(e: &TaggedEdge) -> (TaggedEdge, TaggedEdge) {
    let support: Vec<usize> = (1..=e.map.source()).filter(|&j| e.map.value(j) != 0).collect();
    let k = support.len();
    let inert_part = PointedMap {
        target: k,
        values: (1..=e.map.source())
            .map(|j| support.iter().position(|&s| s == j).map(|p| p + 1).unwrap_or(0))
            .collect(),
    };
    let active_part = PointedMap {
        target: e.map.target(),
        values: support.iter().map(|&j| e.map.value(j)).collect(),
    };
    (
        TaggedEdge { map: inert_part, e0: e.e0, e1: e.e0 },
        TaggedEdge { map: active_part, e0: e.e0, e1: e.e1 },
    )
}

/// `wedge_inclusion(sizes, i, k)`: the index of element `k` of block `i`
/// inside the wedge `⟨m_1 + .. + m_n⟩`; blocks are 1-based.
pub fn wedge_inclusion(sizes: &[usize], i: usize, k: usize) -> Result<usize> {
    if i == 0 || i > sizes.len() {
        return Err(Error::InvalidTable(format!("block {i} out of range")));
    }
    if k == 0 || k > sizes[i - 1] {
        return Err(Error::InvalidTable(format!("element {k} out of range for block {i}")));
    }
    Ok(sizes[..i - 1].iter().sum::<usize>() + k)
}

pub fn wedge_total(sizes: &[usize]) -> usize {
    sizes.iter().sum()
}

/// The inert collapse `⟨Σ m_j⟩ -> ⟨m_i⟩` of every block except block `i`,
/// which maps by the inverse of the wedge inclusion.
pub fn h_component(sizes: &[usize], i: usize) -> Result<PointedMap> {
    if i == 0 || i > sizes.len() {
        return Err(Error::InvalidTable(format!("block {i} out of range")));
    }
    let before: usize = sizes[..i - 1].iter().sum();
    let mi = sizes[i - 1];
    let total = wedge_total(sizes);
    Ok(PointedMap {
        target: mi,
        values: (1..=total)
            .map(|j| if j > before && j <= before + mi { j - before } else { 0 })
            .collect(),
    })
}

/// Size of `α⁻¹(i)` together with the order-preserving relabeling onto
/// `⟨k⟩°`, as the list of preimages in increasing order.
pub fn preimage_object(alpha: &PointedMap, i: usize) -> Result<(usize, Vec<usize>)> {
    if i == 0 || i > alpha.target() {
        return Err(Error::InvalidTable(format!("element {i} out of range")));
    }
    let pre = alpha.preimage(i);
    Ok((pre.len(), pre))
}

/// The full subcategory of pointed finite sets on `⟨0⟩,..,⟨K⟩`, with arrows
/// in enumeration order.
pub struct FinStarCat {
    pub cat: FinCategory,
    pub maps: Vec<PointedMap>,
    pub object_sizes: Vec<usize>,
}

impl FinStarCat {
    pub fn arrow_of(&self, alpha: &PointedMap) -> Option<ArrId> {
        self.maps.iter().position(|m| m == alpha)
    }

    pub fn map_of(&self, f: ArrId) -> &PointedMap {
        &self.maps[f]
    }

    pub fn object_of_size(&self, k: usize) -> ObjId {
        k
    }
}

pub fn finstar_category(k_max: usize) -> FinStarCat {
    let mut b = CatBuilder::new();
    for k in 0..=k_max {
        b.add_object(&format!("<{k}>"));
    }
    // identity arrows were created by the builder; register the rest in
    // enumeration order, skipping identities
    let mut maps: Vec<PointedMap> = Vec::new();
    for k in 0..=k_max {
        maps.push(PointedMap::identity(k));
    }
    let mut extra: Vec<(usize, usize, PointedMap)> = Vec::new();
    for m in 0..=k_max {
        for n in 0..=k_max {
            for alpha in PointedMap::enumerate(m, n) {
                if alpha.is_identity() {
                    continue;
                }
                extra.push((m, n, alpha));
            }
        }
    }
    for (m, n, alpha) in &extra {
        b.add_arrow(&alpha.display(), *m, *n);
    }
    let mut all_maps = maps;
    all_maps.extend(extra.into_iter().map(|(_, _, a)| a));
    let index: alloc::collections::BTreeMap<(usize, usize, &[usize]), usize> = all_maps
        .iter()
        .enumerate()
        .map(|(i, m)| ((m.source(), m.target(), m.values()), i))
        .collect();
    let cat = b.compose_by(|_cat, g, f| {
        let composite = all_maps[f].then(&all_maps[g]).expect("composable");
        *index
            .get(&(composite.source(), composite.target(), composite.values()))
            .unwrap_or_else(|| panic!("composite not registered: {}", composite.display()))
    });
    let object_sizes = (0..=k_max).collect();
    FinStarCat { cat, maps: all_maps, object_sizes }
}

/// The truncated ambient simplicial set `N(Fin_*^{≤K}) × Δ^{{1,..,n}}`,
/// with the nerve data and the product structure.
pub struct FinStarAmbient {
    pub fin: FinStarCat,
    pub fin_nerve: Nerve,
    pub delta: FiniteSimplicialSet,
    pub pair: PairedSset,
    pub n_delta: usize,
}

impl FinStarAmbient {
    pub fn sset(&self) -> &FiniteSimplicialSet {
        &self.pair.sset
    }
}

/// `nerve_finstar(K, n_delta, D)`: nerve of `Fin_*^{≤K}` producted with the
/// simplex on vertices `{1,..,n_delta}`, truncated at dimension `D`. The
/// whole product lies over vertex 1 of the interval.
pub fn nerve_finstar(k_max: usize, n_delta: usize, dim: usize, limits: &Limits) -> Result<FinStarAmbient> {
    if n_delta == 0 {
        return Err(Error::InvalidTable("the simplex factor needs at least one vertex".to_string()));
    }
    let fin = finstar_category(k_max);
    let fin_nerve = nerve(&fin.cat, dim, limits)?;
    let delta = crate::simplicial::standard_simplex(n_delta - 1);
    // the product is truncated to D, since everything downstream works at
    // bounded dimension
    let pair = product_truncated(&fin_nerve.sset, &delta, dim, limits)?;
    Ok(FinStarAmbient { fin, fin_nerve, delta, pair, n_delta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_is_inert_not_active() {
        let rho2 = PointedMap::rho(3, 2);
        assert_eq!(rho2.values(), &[0, 1, 0]);
        let c = classify(&rho2);
        assert!(c.inert && !c.active);
    }

    #[test]
    fn identity_is_both() {
        for n in 0..4 {
            let c = classify(&PointedMap::identity(n));
            assert!(c.inert && c.active);
        }
    }

    /// Exhaustive enumeration of the four maps ⟨2⟩ -> ⟨1⟩.
    #[test]
    fn maps_2_to_1() {
        let all = PointedMap::enumerate(2, 1);
        assert_eq!(all.len(), 4);
        assert_eq!(all.iter().filter(|a| a.is_active()).count(), 1);
        assert_eq!(all.iter().filter(|a| a.is_inert()).count(), 2);
    }

    #[test]
    fn zero_object_conventions() {
        // ⟨m⟩ -> ⟨0⟩ is active iff m = 0; always inert (nothing to check)
        assert!(PointedMap::to_zero(0).is_active());
        assert!(!PointedMap::to_zero(2).is_active());
        assert!(PointedMap::to_zero(2).is_inert());
        // ⟨0⟩ -> ⟨n⟩ is active; inert only for n = 0
        let from_zero = PointedMap::new(3, Vec::new()).unwrap();
        assert!(from_zero.is_active());
        assert!(!from_zero.is_inert());
    }

    #[test]
    fn strongly_inert_examples() {
        let rho1 = TaggedEdge::new(PointedMap::rho(2, 1), 1, 1).unwrap();
        assert!(rho1.is_strongly_inert());
        // nondegenerate simplex edge: active, not strongly inert
        let idd = TaggedEdge::new(PointedMap::identity(1), 1, 2).unwrap();
        assert!(idd.is_active() && !idd.is_strongly_inert());
        // inert but with a non-order-preserving section: neutral
        let twist = TaggedEdge::new(PointedMap::new(2, alloc::vec![2, 1, 0]).unwrap(), 1, 1).unwrap();
        assert!(twist.map.is_inert());
        assert!(!twist.is_strongly_inert());
        assert!(twist.is_neutral());
    }

    /// Factorization uniqueness oracle: exhaustive search over candidate
    /// factorizations with an order-preserving inert part.
    #[test]
    fn factorization_exists_uniquely() {
        for m in 0..=4usize {
            for n in 0..=3usize {
                for alpha in PointedMap::enumerate(m, n) {
                    for (e0, e1) in [(1, 1), (1, 2)] {
                        let e = TaggedEdge::new(alpha.clone(), e0, e1).unwrap();
                        let (b, c) = inert_active_factorize(&e);
                        assert!(b.is_strongly_inert(), "{}", b.display());
                        assert!(c.is_active(), "{}", c.display());
                        assert_eq!(b.map.then(&c.map).unwrap(), alpha);
                        assert_eq!((b.e0, b.e1), (e0, e0));
                        assert_eq!((c.e0, c.e1), (e0, e1));
                        // uniqueness: over all intermediate sizes, only one
                        // strongly inert/active pair composes to alpha
                        let mut found = 0;
                        for t in 0..=m {
                            for beta in PointedMap::enumerate(m, t) {
                                let edge_b = TaggedEdge { map: beta.clone(), e0, e1: e0 };
                                if !edge_b.is_strongly_inert() {
                                    continue;
                                }
                                for gamma in PointedMap::enumerate(t, n) {
                                    if !gamma.is_active() {
                                        continue;
                                    }
                                    if beta.then(&gamma).unwrap() == alpha {
                                        found += 1;
                                    }
                                }
                            }
                        }
                        assert_eq!(found, 1, "alpha = {}", alpha.display());
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_of_spec_example() {
        let alpha = PointedMap::new(2, alloc::vec![1, 0, 2, 2]).unwrap();
        let e = TaggedEdge::new(alpha, 1, 1).unwrap();
        let (b, c) = inert_active_factorize(&e);
        assert_eq!(b.map.values(), &[1, 0, 2, 3]);
        assert_eq!(c.map.values(), &[1, 2, 2]);
    }

    #[test]
    fn trivial_factorizations() {
        let active = TaggedEdge::new(PointedMap::new(1, alloc::vec![1, 1]).unwrap(), 1, 2).unwrap();
        let (b, c) = inert_active_factorize(&active);
        assert!(b.map.is_identity());
        assert_eq!(c.map, active.map);
        let si = TaggedEdge::new(PointedMap::rho(2, 1), 1, 1).unwrap();
        let (b, c) = inert_active_factorize(&si);
        assert_eq!(b.map, si.map);
        assert!(c.map.is_identity());
    }

    #[test]
    fn wedge_formulas() {
        assert_eq!(wedge_inclusion(&[2, 3], 2, 2).unwrap(), 4);
        assert_eq!(wedge_inclusion(&[2, 3], 1, 1).unwrap(), 1);
        assert_eq!(wedge_inclusion(&[0, 5], 2, 5).unwrap(), 5);
        assert!(wedge_inclusion(&[2, 3], 1, 3).is_err());
        assert_eq!(wedge_total(&[2, 3]), 5);
    }

    #[test]
    fn h_component_formulas() {
        let h1 = h_component(&[2, 3], 1).unwrap();
        assert_eq!(h1.values(), &[1, 2, 0, 0, 0]);
        assert!(h1.is_inert());
        let h2 = h_component(&[2, 3], 2).unwrap();
        assert_eq!(h2.values(), &[0, 0, 1, 2, 3]);
        assert!(h2.is_inert());
        let h = h_component(&[1], 1).unwrap();
        assert!(h.is_identity());
        // h_i composed with the wedge inclusion of block i is the identity
        for i in 1..=2usize {
            let sizes = [2usize, 3];
            let h = h_component(&sizes, i).unwrap();
            for k in 1..=sizes[i - 1] {
                assert_eq!(h.value(wedge_inclusion(&sizes, i, k).unwrap()), k);
            }
        }
    }

    #[test]
    fn preimage_examples() {
        let alpha = PointedMap::new(2, alloc::vec![1, 2, 2]).unwrap();
        let (k, relabel) = preimage_object(&alpha, 2).unwrap();
        assert_eq!(k, 2);
        assert_eq!(relabel, alloc::vec![2, 3]);
        // inert: always a singleton
        let rho = PointedMap::rho(3, 2);
        assert_eq!(preimage_object(&rho, 1).unwrap().0, 1);
        // constant basepoint: empty
        let z = PointedMap::new(2, alloc::vec![0, 0, 0]).unwrap();
        assert_eq!(preimage_object(&z, 1).unwrap().0, 0);
    }

    #[test]
    fn finstar_category_validates() {
        let fs = finstar_category(2);
        fs.cat.validate().unwrap();
        // morphism counts: sum over m,n of (n+1)^m
        let count: usize = (0..=2)
            .flat_map(|m| (0..=2).map(move |n| (n + 1usize).pow(m as u32)))
            .sum();
        assert_eq!(fs.cat.arrows.len(), count);
    }

    #[test]
    fn nerve_finstar_small() {
        // K=1, D=1: three non-identity maps among ⟨0⟩, ⟨1⟩, counted by
        // enumeration: ⟨0⟩→⟨1⟩, ⟨1⟩→⟨0⟩, and the null map ⟨1⟩→⟨1⟩
        let amb = nerve_finstar(1, 1, 1, &Limits::default()).unwrap();
        assert_eq!(amb.fin_nerve.sset.gen_count(1), 3);
        let enumerated = PointedMap::enumerate(0, 1)
            .into_iter()
            .chain(PointedMap::enumerate(1, 0))
            .chain(PointedMap::enumerate(0, 0))
            .chain(PointedMap::enumerate(1, 1))
            .filter(|a| !a.is_identity())
            .count();
        assert_eq!(enumerated, 3);
        // second factor is a point, so the product is the nerve itself
        assert_eq!(amb.sset().gen_counts(), amb.fin_nerve.sset.gen_counts());
        // K=0: single object
        let amb0 = nerve_finstar(0, 2, 1, &Limits::default()).unwrap();
        assert_eq!(amb0.fin_nerve.sset.gen_counts(), alloc::vec![1, 0]);
        // so the ambient is Δ⁰ × Δ^{{1,2}}
        assert_eq!(amb0.sset().gen_counts(), alloc::vec![2, 1]);
    }

    #[test]
    fn pointed_map_text_round_trip() {
        for m in 0..=3usize {
            for alpha in PointedMap::enumerate(m, 2) {
                let text = alpha.display();
                assert_eq!(PointedMap::parse(&text).unwrap(), alpha);
            }
        }
        assert!(PointedMap::parse("2>1:[9,0]").is_err());
        assert!(PointedMap::parse("junk").is_err());
    }
}
