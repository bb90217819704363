//! Finite categories presented by tables, and their nerves.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::simplicial::{FiniteSimplicialSet, GenId, Simplex, SimplicialMap, SsetBuilder};
use crate::Limits;

pub type ObjId = usize;
pub type ArrId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowData {
    pub src: ObjId,
    pub dst: ObjId,
    pub name: String,
}

/// A finite category: objects, arrows (identities included), and a total
/// composition table for composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowData>,
    /// Identity arrow per object.
    pub identity: Vec<ArrId>,
    /// `compose[(g, f)] = g ∘ f` for composable `f: a -> b`, `g: b -> c`.
    pub compose: BTreeMap<(ArrId, ArrId), ArrId>,
}

impl FinCategory {
    pub fn src(&self, f: ArrId) -> ObjId {
        self.arrows[f].src
    }

    pub fn dst(&self, f: ArrId) -> ObjId {
        self.arrows[f].dst
    }

    pub fn is_identity(&self, f: ArrId) -> bool {
        self.identity[self.arrows[f].src] == f && self.arrows[f].src == self.arrows[f].dst
    }

    pub fn comp(&self, g: ArrId, f: ArrId) -> Result<ArrId> {
        self.compose
            .get(&(g, f))
            .copied()
            .ok_or_else(|| Error::InvalidTable(format!("missing composite {g} ∘ {f}")))
    }

    pub fn arrows_from(&self, a: ObjId) -> impl Iterator<Item = ArrId> + '_ {
        (0..self.arrows.len()).filter(move |&f| self.arrows[f].src == a)
    }

    pub fn arrows_between(&self, a: ObjId, b: ObjId) -> impl Iterator<Item = ArrId> + '_ {
        (0..self.arrows.len())
            .filter(move |&f| self.arrows[f].src == a && self.arrows[f].dst == b)
    }

    /// Checks endpoints, identities, totality of composition on composable
    /// pairs, unit laws, and associativity.
    pub fn validate(&self) -> Result<()> {
        if self.identity.len() != self.objects.len() {
            return Err(Error::InvalidTable("one identity per object required".to_string()));
        }
        for (o, &idf) in self.identity.iter().enumerate() {
            let a = &self.arrows[idf];
            if a.src != o || a.dst != o {
                return Err(Error::InvalidTable(format!("identity of object {o} has wrong endpoints")));
            }
        }
        for f in 0..self.arrows.len() {
            for g in 0..self.arrows.len() {
                let composable = self.arrows[f].dst == self.arrows[g].src;
                match self.compose.get(&(g, f)) {
                    None if composable => {
                        return Err(Error::InvalidTable(format!(
                            "composite {} ∘ {} missing",
                            self.arrows[g].name, self.arrows[f].name
                        )))
                    }
                    Some(&h) => {
                        if !composable {
                            return Err(Error::InvalidTable(format!(
                                "composite of non-composable pair ({}, {})",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                        if self.arrows[h].src != self.arrows[f].src
                            || self.arrows[h].dst != self.arrows[g].dst
                        {
                            return Err(Error::InvalidTable(format!(
                                "composite {} ∘ {} has wrong endpoints",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                    }
                    None => {}
                }
            }
        }
        for f in 0..self.arrows.len() {
            let a = &self.arrows[f];
            if self.comp(f, self.identity[a.src])? != f || self.comp(self.identity[a.dst], f)? != f {
                return Err(Error::InvalidTable(format!("unit law fails at {}", a.name)));
            }
        }
        for f in 0..self.arrows.len() {
            for g in 0..self.arrows.len() {
                if self.arrows[f].dst != self.arrows[g].src {
                    continue;
                }
                for h in 0..self.arrows.len() {
                    if self.arrows[g].dst != self.arrows[h].src {
                        continue;
                    }
                    let left = self.comp(h, self.comp(g, f)?)?;
                    let right = self.comp(self.comp(h, g)?, f)?;
                    if left != right {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails on ({}, {}, {})",
                            self.arrows[f].name, self.arrows[g].name, self.arrows[h].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The poset category `0 < 1 < ... < n`.
    pub fn poset_chain(n: usize) -> FinCategory {
        let mut b = CatBuilder::new();
        for i in 0..=n {
            b.add_object(&format!("{i}"));
        }
        for i in 0..=n {
            for j in i..=n {
                if i != j {
                    b.add_arrow(&format!("{i}<{j}"), i, j);
                }
            }
        }
        b.compose_by(|cat, g, f| {
            let (a, c) = (cat.arrows[f].src, cat.arrows[g].dst);
            if a == c {
                cat.identity[a]
            } else {
                cat.arrows
                    .iter()
                    .position(|x| x.src == a && x.dst == c && !x.name.is_empty())
                    .unwrap()
            }
        })
    }
}

/// Convenience builder that fills in identities and lets composition be
/// given by a closure over the partially built category.
pub struct CatBuilder {
    objects: Vec<String>,
    arrows: Vec<ArrowData>,
    identity: Vec<ArrId>,
}

impl CatBuilder {
    pub fn new() -> Self {
        CatBuilder { objects: Vec::new(), arrows: Vec::new(), identity: Vec::new() }
    }

    pub fn add_object(&mut self, name: &str) -> ObjId {
        let o = self.objects.len();
        self.objects.push(name.to_string());
        let idf = self.arrows.len();
        self.arrows.push(ArrowData { src: o, dst: o, name: format!("id_{name}") });
        self.identity.push(idf);
        o
    }

    pub fn add_arrow(&mut self, name: &str, src: ObjId, dst: ObjId) -> ArrId {
        let f = self.arrows.len();
        self.arrows.push(ArrowData { src, dst, name: name.to_string() });
        f
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// Finishes with composition computed by the closure on composable pairs.
    pub fn compose_by(self, rule: impl Fn(&FinCategory, ArrId, ArrId) -> ArrId) -> FinCategory {
        let mut cat = FinCategory {
            objects: self.objects,
            arrows: self.arrows,
            identity: self.identity,
            compose: BTreeMap::new(),
        };
        let mut table = BTreeMap::new();
        for f in 0..cat.arrows.len() {
            for g in 0..cat.arrows.len() {
                if cat.arrows[f].dst == cat.arrows[g].src {
                    let h = if cat.is_identity(f) {
                        g
                    } else if cat.is_identity(g) {
                        f
                    } else {
                        rule(&cat, g, f)
                    };
                    table.insert((g, f), h);
                }
            }
        }
        cat.compose = table;
        cat
    }
}

impl Default for CatBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// A nerve, keeping the chain presentation of each generator.
pub struct Nerve {
    pub sset: FiniteSimplicialSet,
    /// Per level, per generator: the chain of non-identity arrows.
    pub chains: Vec<Vec<Vec<ArrId>>>,
    index: BTreeMap<Vec<ArrId>, GenId>,
}

impl Nerve {
    /// The simplex of the nerve presented by an arbitrary composable chain
    /// (identities allowed). Identity entries become degeneracies.
    pub fn chain_simplex(&self, cat: &FinCategory, chain: &[ArrId]) -> Simplex {
        let reduced: Vec<ArrId> = chain.iter().copied().filter(|&f| !cat.is_identity(f)).collect();
        let g = if reduced.is_empty() {
            GenId::new(0, cat.src(chain[0]))
        } else {
            *self
                .index
                .get(&reduced)
                .expect("reduced chain is a nerve generator")
        };
        let mut x = Simplex::of_gen(g);
        // identity at 1-based position p contributes s_{p-1}, applied from
        // the innermost (leftmost identity) outwards
        let mut positions = Vec::new();
        for (pos, &f) in chain.iter().enumerate() {
            if cat.is_identity(f) {
                positions.push(pos);
            }
        }
        for &p in positions.iter() {
            x = x.degenerate(p).expect("valid degeneracy index");
        }
        x
    }

    /// Generator id of a nonempty reduced chain.
    pub fn gen_of_chain(&self, chain: &[ArrId]) -> Option<GenId> {
        self.index.get(chain).copied()
    }

    /// The chain of vertices (objects) of a generator, length level + 1.
    pub fn objects_of_gen(&self, cat: &FinCategory, g: GenId) -> Vec<ObjId> {
        let chain = &self.chains[g.level][g.index];
        let mut out = Vec::with_capacity(g.level + 1);
        if g.level == 0 {
            out.push(g.index);
            return out;
        }
        out.push(cat.src(chain[0]));
        for &f in chain {
            out.push(cat.dst(f));
        }
        out
    }
}

/// The nerve of a finite category, truncated at dimension `bound`:
/// generators at level n are the composable chains of n non-identity arrows.
///
/// The category is assumed valid; ingested tables are validated at parse
/// time and internally built ones by their constructors' tests.
pub fn nerve(cat: &FinCategory, bound: usize, limits: &Limits) -> Result<Nerve> {
    let mut builder = SsetBuilder::new(bound);
    let mut chains: Vec<Vec<Vec<ArrId>>> = Vec::new();
    let mut index: BTreeMap<Vec<ArrId>, GenId> = BTreeMap::new();
    let mut used = 0usize;

    // level 0: objects; the empty chain indexes the vertex of object 0 only,
    // so vertices are registered by object id instead
    chains.push(Vec::new());
    for (o, name) in cat.objects.iter().enumerate() {
        limits.charge(&mut used, 1)?;
        let g = builder.add_generator(0, name, Vec::new())?;
        debug_assert_eq!(g.index, o);
        chains[0].push(Vec::new());
    }

    let shell_index = |index: &BTreeMap<Vec<ArrId>, GenId>, chain: &[ArrId], cat: &FinCategory| -> GenId {
        if chain.is_empty() {
            unreachable!("vertex chains are resolved by object id");
        }
        *index.get(chain).unwrap_or_else(|| panic!("chain not registered: {chain:?} in {}", cat.objects.len()))
    };

    for level in 1..=bound {
        chains.push(Vec::new());
        // enumerate chains of `level` composable non-identity arrows
        let mut stack: Vec<Vec<ArrId>> = alloc::vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == level {
                limits.charge(&mut used, 1)?;
                let name = {
                    let mut n = String::new();
                    for (k, &f) in cur.iter().enumerate() {
                        if k > 0 {
                            n.push('|');
                        }
                        n.push_str(&cat.arrows[f].name);
                    }
                    n
                };
                let faces = (0..=level)
                    .map(|i| -> Result<Simplex> {
                        if level == 1 {
                            // endpoints
                            let o = if i == 0 { cat.dst(cur[0]) } else { cat.src(cur[0]) };
                            return Ok(Simplex::of_gen(GenId::new(0, o)));
                        }
                        let sub: Vec<ArrId> = if i == 0 {
                            cur[1..].to_vec()
                        } else if i == level {
                            cur[..level - 1].to_vec()
                        } else {
                            let mut s = cur[..i - 1].to_vec();
                            s.push(cat.comp(cur[i], cur[i - 1])?);
                            s.extend_from_slice(&cur[i + 1..]);
                            s
                        };
                        // the composite may be an identity: strip it
                        let mut reduced = Vec::new();
                        let mut degen_pos = None;
                        for (pos, &f) in sub.iter().enumerate() {
                            if cat.is_identity(f) {
                                degen_pos = Some(pos);
                            } else {
                                reduced.push(f);
                            }
                        }
                        let g = if reduced.is_empty() {
                            // a vertex
                            let o = if let Some(&f) = sub.first() { cat.src(f) } else { unreachable!() };
                            GenId::new(0, o)
                        } else {
                            shell_index(&index, &reduced, cat)
                        };
                        let mut x = Simplex::of_gen(g);
                        if let Some(p) = degen_pos {
                            x = x.degenerate(p).expect("valid degeneracy");
                        }
                        Ok(x)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let g = builder.add_generator(level, &name, faces)?;
                index.insert(cur.clone(), g);
                chains[level].push(cur);
                continue;
            }
            // extend the chain by one arrow
            let next_srcs: Vec<ArrId> = match cur.last() {
                None => (0..cat.arrows.len()).filter(|&f| !cat.is_identity(f)).collect(),
                Some(&last) => cat
                    .arrows_from(cat.dst(last))
                    .filter(|&f| !cat.is_identity(f))
                    .collect(),
            };
            // depth-first, pushing in reverse so enumeration is in arrow order
            for &f in next_srcs.iter().rev() {
                let mut ext = cur.clone();
                ext.push(f);
                stack.push(ext);
            }
        }
    }

    Ok(Nerve { sset: builder.build_unchecked(), chains, index })
}

/// The nerve of a functor between finite categories, as a simplicial map on
/// truncated nerves. `ob` and `arr` give the object and arrow assignments.
pub fn nerve_map(
    src: &Nerve,
    _src_cat: &FinCategory,
    tgt: &Nerve,
    tgt_cat: &FinCategory,
    ob: &dyn Fn(ObjId) -> ObjId,
    arr: &dyn Fn(ArrId) -> ArrId,
) -> SimplicialMap {
    let mut images: Vec<Vec<Simplex>> = Vec::new();
    images.push((0..src.sset.gen_count(0)).map(|o| Simplex::of_gen(GenId::new(0, ob(o)))).collect());
    for level in 1..src.sset.num_levels() {
        images.push(
            src.chains[level]
                .iter()
                .map(|chain| {
                    let mapped: Vec<ArrId> = chain.iter().map(|&f| arr(f)).collect();
                    tgt.chain_simplex(tgt_cat, &mapped)
                })
                .collect(),
        );
    }
    SimplicialMap::new(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard_simplex;

    #[test]
    fn nerve_of_interval_is_delta1() {
        let cat = FinCategory::poset_chain(1);
        cat.validate().unwrap();
        let n = nerve(&cat, 2, &Limits::default()).unwrap();
        n.sset.validate().unwrap();
        assert_eq!(n.sset.gen_counts(), alloc::vec![2, 1, 0]);
    }

    #[test]
    fn nerve_of_poset_chain_is_simplex() {
        let cat = FinCategory::poset_chain(2);
        let n = nerve(&cat, 3, &Limits::default()).unwrap();
        n.sset.validate().unwrap();
        assert_eq!(n.sset.gen_counts(), alloc::vec![3, 3, 1, 0]);
        let d2 = standard_simplex(2);
        assert_eq!(n.sset.gen_counts()[..3], d2.gen_counts()[..]);
    }

    /// Chain enumeration oracle: the number of n-generators equals the
    /// number of composable chains of non-identity arrows, counted directly.
    #[test]
    fn chain_counts_against_direct_enumeration() {
        let cat = FinCategory::poset_chain(3);
        let n = nerve(&cat, 3, &Limits::default()).unwrap();
        let mut count2 = 0usize;
        for f in 0..cat.arrows.len() {
            for g in 0..cat.arrows.len() {
                if !cat.is_identity(f)
                    && !cat.is_identity(g)
                    && cat.arrows[f].dst == cat.arrows[g].src
                {
                    count2 += 1;
                }
            }
        }
        assert_eq!(n.sset.gen_count(2), count2);
    }

    #[test]
    fn chain_simplex_strips_identities() {
        let cat = FinCategory::poset_chain(1);
        let n = nerve(&cat, 3, &Limits::default()).unwrap();
        let e = cat
            .arrows
            .iter()
            .position(|a| a.name == "0<1")
            .unwrap();
        let id0 = cat.identity[0];
        let id1 = cat.identity[1];
        // (id, e): s_0 of the edge
        let x = n.chain_simplex(&cat, &[id0, e]);
        assert_eq!(x.word(), &[0]);
        // (e, id): s_1 of the edge
        let y = n.chain_simplex(&cat, &[e, id1]);
        assert_eq!(y.word(), &[1]);
        // (id, id) at 0: s_1 s_0 of the vertex
        let z = n.chain_simplex(&cat, &[id0, id0]);
        assert_eq!(z.word(), &[1, 0]);
        assert_eq!(z.gen(), GenId::new(0, 0));
        // (id, e, id)
        let w = n.chain_simplex(&cat, &[id0, e, id1]);
        assert_eq!(w.word(), &[2, 0]);
    }
}
