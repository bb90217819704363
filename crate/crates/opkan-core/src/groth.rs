//! The simplicial Grothendieck construction: finite simplicially enriched
//! categories with tabulated composition, rigidified simplices with cube
//! homs, the relative nerve, and the explicit simplex-level comparison maps
//! in both directions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::nerve::{ArrId, FinCategory, ObjId};
use crate::simplicial::{
    product, FiniteSimplicialSet, GenId, PairedSset, Simplex, SimplicialMap, SsetBuilder,
};
use crate::Limits;

/// Composition data for one triple of objects: the materialized product of
/// hom simplicial sets together with the composition map out of it.
pub struct CompData {
    pub prod: PairedSset,
    pub map: SimplicialMap,
}

/// A finite simplicial category with tabulated composition.
///
/// `comp[x][y][z]` composes `hom(y,z) × hom(x,y) -> hom(x,z)`.
pub struct TabCat {
    pub objects: Vec<String>,
    pub homs: Vec<Vec<FiniteSimplicialSet>>,
    pub identities: Vec<Simplex>,
    pub comp: Vec<Vec<Vec<CompData>>>,
}

impl TabCat {
    pub fn hom(&self, x: ObjId, y: ObjId) -> &FiniteSimplicialSet {
        &self.homs[x][y]
    }

    /// Composes same-level simplices `f ∈ hom(y,z)`, `g ∈ hom(x,y)`.
    pub fn compose(&self, x: ObjId, y: ObjId, z: ObjId, f: &Simplex, g: &Simplex) -> Simplex {
        let data = &self.comp[x][y][z];
        let pair = data
            .prod
            .pair_to_simplex(f, g)
            .expect("composable simplices form a product simplex");
        data.map.apply(&pair)
    }

    /// The identity vertex degenerated up to a level.
    pub fn identity_at(&self, x: ObjId, level: usize) -> Simplex {
        let mut id = self.identities[x].clone();
        for _ in 0..level {
            id = id.degenerate(0).expect("degeneracy of the identity vertex");
        }
        id
    }

    /// Checks hom validity, unit laws, and associativity on all simplices up
    /// to the ambient dimension bound.
    pub fn validate(&self, level_cap: usize) -> Result<()> {
        let n = self.objects.len();
        for x in 0..n {
            for y in 0..n {
                self.homs[x][y].validate()?;
            }
        }
        for x in 0..n {
            if self.identities[x].level() != 0 {
                return Err(Error::InvalidTable(format!("identity of {} is not a vertex", self.objects[x])));
            }
            self.homs[x][x].check_simplex(&self.identities[x])?;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let data = &self.comp[x][y][z];
                    data.map.validate(&data.prod.sset, &self.homs[x][z])?;
                }
            }
        }
        // unit laws
        for x in 0..n {
            for y in 0..n {
                for level in 0..=level_cap {
                    for f in self.homs[x][y].simplices_at(level) {
                        let left = self.compose(x, x, y, &f, &self.identity_at(x, level));
                        let right = self.compose(x, y, y, &self.identity_at(y, level), &f);
                        if left != f || right != f {
                            return Err(Error::InvalidTable(format!(
                                "unit law fails in hom({}, {})",
                                self.objects[x], self.objects[y]
                            )));
                        }
                    }
                }
            }
        }
        // associativity
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        for level in 0..=level_cap {
                            for f in self.homs[z][w].simplices_at(level) {
                                for g in self.homs[y][z].simplices_at(level) {
                                    let fg = self.compose(y, z, w, &f, &g);
                                    for h in self.homs[x][y].simplices_at(level) {
                                        let gh = self.compose(x, y, z, &g, &h);
                                        if self.compose(x, y, w, &fg, &h)
                                            != self.compose(x, z, w, &f, &gh)
                                        {
                                            return Err(Error::InvalidTable(
                                                "associativity fails".to_string(),
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// An ordinary category as a simplicial category with discrete homs.
    /// Hom vertices are indexed by the arrow list order.
    pub fn from_category(cat: &FinCategory, limits: &Limits) -> Result<(TabCat, Vec<Vec<Vec<ArrId>>>)> {
        let n = cat.objects.len();
        let mut arrow_lists: Vec<Vec<Vec<ArrId>>> = alloc::vec![alloc::vec![Vec::new(); n]; n];
        for f in 0..cat.arrows.len() {
            arrow_lists[cat.src(f)][cat.dst(f)].push(f);
        }
        let mut homs: Vec<Vec<FiniteSimplicialSet>> = Vec::new();
        for x in 0..n {
            let mut row = Vec::new();
            for y in 0..n {
                let mut b = SsetBuilder::new(0);
                for &f in &arrow_lists[x][y] {
                    b.add_generator(0, &cat.arrows[f].name, Vec::new())?;
                }
                row.push(b.build_unchecked());
            }
            homs.push(row);
        }
        let identities = (0..n)
            .map(|x| {
                let pos = arrow_lists[x][x]
                    .iter()
                    .position(|&f| f == cat.identity[x])
                    .expect("identity is an arrow");
                Simplex::of_gen(GenId::new(0, pos))
            })
            .collect();
        let mut comp: Vec<Vec<Vec<CompData>>> = Vec::new();
        for x in 0..n {
            let mut plane = Vec::new();
            for y in 0..n {
                let mut row = Vec::new();
                for z in 0..n {
                    let prod = product(&homs[y][z], &homs[x][y], limits)?;
                    let mut images: Vec<Vec<Simplex>> = Vec::new();
                    for level in 0..prod.sset.num_levels() {
                        images.push(
                            prod.components[level]
                                .iter()
                                .map(|(f, g)| {
                                    // discrete homs: components are vertices
                                    let ff = arrow_lists[y][z][f.gen().index];
                                    let gg = arrow_lists[x][y][g.gen().index];
                                    let h = cat.comp(ff, gg).expect("composable");
                                    let pos = arrow_lists[x][z]
                                        .iter()
                                        .position(|&a| a == h)
                                        .expect("composite registered");
                                    Simplex::of_gen(GenId::new(0, pos))
                                })
                                .collect(),
                        );
                    }
                    let map = SimplicialMap::new(images);
                    row.push(CompData { prod, map });
                }
                plane.push(row);
            }
            comp.push(plane);
        }
        Ok((
            TabCat { objects: cat.objects.clone(), homs, identities, comp },
            arrow_lists,
        ))
    }
}

/// A rigidified simplex on an ordered list of vertex labels: objects are
/// the labels; `hom(a,b)` is the nerve of the poset of label subsets
/// between the endpoints that contain both, ordered by inclusion.
/// A chain of label subsets, outer index the chain position.
pub type SubsetChain = Vec<Vec<usize>>;
/// Chains per level per generator of one hom.
pub type HomChains = Vec<Vec<SubsetChain>>;

pub struct RigidCat {
    pub tab: TabCat,
    pub labels: Vec<usize>,
    /// Per (a, b): the strict subset chain presenting each hom generator.
    pub chains: Vec<Vec<HomChains>>,
}

impl RigidCat {
    pub fn top(&self) -> usize {
        self.labels.len() - 1
    }

    /// Looks up the hom simplex presented by a weak chain of subsets:
    /// repeats become degeneracies.
    pub fn simplex_of_chain(&self, a: usize, b: usize, chain: &[Vec<usize>]) -> Simplex {
        let mut strict: SubsetChain = Vec::new();
        let mut dup_positions: Vec<usize> = Vec::new();
        for (pos, s) in chain.iter().enumerate() {
            if pos > 0 && chain[pos - 1] == *s {
                dup_positions.push(pos - 1);
            } else {
                strict.push(s.clone());
            }
        }
        let level = strict.len() - 1;
        let idx = self.chains[a][b][level]
            .iter()
            .position(|c| *c == strict)
            .expect("strict chain is a hom generator");
        let mut x = Simplex::of_gen(GenId::new(level, idx));
        for &p in dup_positions.iter() {
            x = x.degenerate(p).expect("valid degeneracy");
        }
        x
    }
}

/// Builds the rigidified simplex on the given strictly increasing labels.
pub fn rigid_on(labels: &[usize]) -> RigidCat {
    let m = labels.len();
    let mut homs: Vec<Vec<FiniteSimplicialSet>> = Vec::new();
    let mut chains: Vec<Vec<HomChains>> = Vec::new();
    for a in 0..m {
        let mut hom_row = Vec::new();
        let mut chain_row = Vec::new();
        for b in 0..m {
            if a > b {
                hom_row.push(FiniteSimplicialSet::empty());
                chain_row.push(Vec::new());
                continue;
            }
            // subsets of labels[a..=b] containing both endpoints
            let mid: Vec<usize> = if a + 1 >= b { Vec::new() } else { labels[a + 1..b].to_vec() };
            let mut elems: Vec<Vec<usize>> = Vec::new();
            for mask in 0..(1u32 << mid.len()) {
                let mut s = alloc::vec![labels[a]];
                for (k, &v) in mid.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        s.push(v);
                    }
                }
                if a != b {
                    s.push(labels[b]);
                }
                elems.push(s);
            }
            elems.sort();
            elems.dedup();
            // nerve of the inclusion poset: generators at level l are the
            // strict chains of length l+1
            let max_chain = elems.iter().map(|s| s.len()).max().unwrap_or(1)
                - elems.iter().map(|s| s.len()).min().unwrap_or(1);
            let mut per_level: HomChains = Vec::new();
            let mut cur: Vec<SubsetChain> = elems.iter().map(|s| alloc::vec![s.clone()]).collect();
            per_level.push(cur.clone());
            for _ in 0..max_chain {
                let mut next: Vec<SubsetChain> = Vec::new();
                for c in &cur {
                    let last = c.last().unwrap();
                    for s in &elems {
                        if s.len() > last.len() && last.iter().all(|v| s.contains(v)) {
                            let mut c2 = c.clone();
                            c2.push(s.clone());
                            next.push(c2);
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                per_level.push(next.clone());
                cur = next;
            }
            let mut builder = SsetBuilder::new(per_level.len() - 1);
            for (level, chs) in per_level.iter().enumerate() {
                for c in chs {
                    let name = chain_name(c);
                    let faces = if level == 0 {
                        Vec::new()
                    } else {
                        (0..=level)
                            .map(|i| {
                                let mut sub = c.clone();
                                sub.remove(i);
                                let idx = per_level[level - 1]
                                    .iter()
                                    .position(|d| *d == sub)
                                    .expect("subchain registered");
                                Simplex::of_gen(GenId::new(level - 1, idx))
                            })
                            .collect()
                    };
                    builder.add_generator(level, &name, faces).expect("chain names unique");
                }
            }
            hom_row.push(builder.build_unchecked());
            chain_row.push(per_level);
        }
        homs.push(hom_row);
        chains.push(chain_row);
    }

    let identities = (0..m).map(|_| Simplex::of_gen(GenId::new(0, 0))).collect();
    let shell = RigidCat {
        tab: TabCat {
            objects: labels.iter().map(|l| l.to_string()).collect(),
            homs,
            identities,
            comp: Vec::new(),
        },
        labels: labels.to_vec(),
        chains,
    };

    // composition: pointwise union of chains
    let limits = Limits::default();
    let mut comp: Vec<Vec<Vec<CompData>>> = Vec::new();
    for x in 0..m {
        let mut plane = Vec::new();
        for y in 0..m {
            let mut row = Vec::new();
            for z in 0..m {
                let prod = product(&shell.tab.homs[y][z], &shell.tab.homs[x][y], &limits)
                    .expect("hom product within limits");
                let mut images: Vec<Vec<Simplex>> = Vec::new();
                for level in 0..prod.sset.num_levels() {
                    images.push(
                        prod.components[level]
                            .iter()
                            .map(|(f, g)| {
                                let fc = shell.chain_of_simplex(y, z, f);
                                let gc = shell.chain_of_simplex(x, y, g);
                                let united: Vec<Vec<usize>> = fc
                                    .iter()
                                    .zip(&gc)
                                    .map(|(s, t)| {
                                        let mut u: Vec<usize> =
                                            s.iter().chain(t.iter()).copied().collect();
                                        u.sort();
                                        u.dedup();
                                        u
                                    })
                                    .collect();
                                shell.simplex_of_chain(x, z, &united)
                            })
                            .collect(),
                    );
                }
                let map = SimplicialMap::new(images);
                row.push(CompData { prod, map });
            }
            plane.push(row);
        }
        comp.push(plane);
    }
    let mut rigid = shell;
    rigid.tab.comp = comp;
    rigid
}

impl RigidCat {
    /// The weak chain of subsets presented by an arbitrary hom simplex.
    pub fn chain_of_simplex(&self, a: usize, b: usize, x: &Simplex) -> SubsetChain {
        let g = x.gen();
        let strict = &self.chains[a][b][g.level][g.index];
        // degeneracies repeat entries
        let mut weak: SubsetChain = strict.clone();
        let mut word: Vec<usize> = x.word().to_vec();
        word.reverse();
        for &j in &word {
            let entry = weak[j].clone();
            weak.insert(j, entry);
        }
        weak
    }
}

fn chain_name(c: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for (k, s) in c.iter().enumerate() {
        if k > 0 {
            out.push('<');
        }
        out.push('{');
        for (t, v) in s.iter().enumerate() {
            if t > 0 {
                out.push(',');
            }
            out.push_str(&v.to_string());
        }
        out.push('}');
    }
    out
}

/// A simplicial functor between tabulated simplicial categories, stored by
/// object images and hom-component maps.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpFunctor {
    pub ob: Vec<ObjId>,
    pub hom_maps: Vec<Vec<SimplicialMap>>,
}

impl SimpFunctor {
    pub fn apply_hom(&self, x: ObjId, y: ObjId, f: &Simplex) -> Simplex {
        self.hom_maps[x][y].apply(f)
    }

    /// Validates the functor: hom maps are simplicial, identities map to
    /// identities, and composition is preserved on product generators.
    pub fn validate(&self, src: &TabCat, tgt: &TabCat, level_cap: usize) -> Result<()> {
        let n = src.objects.len();
        if self.ob.len() != n {
            return Err(Error::InvalidTable("object table has wrong length".to_string()));
        }
        for x in 0..n {
            for y in 0..n {
                self.hom_maps[x][y].validate(&src.homs[x][y], &tgt.homs[self.ob[x]][self.ob[y]])?;
            }
        }
        for x in 0..n {
            if self.apply_hom(x, x, &src.identities[x]) != tgt.identities[self.ob[x]] {
                return Err(Error::InvalidTable(format!(
                    "identity of {} is not preserved",
                    src.objects[x]
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for level in 0..=level_cap {
                        for f in src.homs[y][z].simplices_at(level) {
                            for g in src.homs[x][y].simplices_at(level) {
                                let lhs = self.apply_hom(x, z, &src.compose(x, y, z, &f, &g));
                                let rhs = tgt.compose(
                                    self.ob[x],
                                    self.ob[y],
                                    self.ob[z],
                                    &self.apply_hom(y, z, &f),
                                    &self.apply_hom(x, y, &g),
                                );
                                if lhs != rhs {
                                    return Err(Error::InvalidTable(format!(
                                        "composition not preserved on hom({},{})×hom(...)",
                                        src.objects[y], src.objects[z]
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The functor of rigid simplices induced by a monotone map of labels.
pub fn rigid_functor(
    src: &RigidCat,
    tgt: &RigidCat,
    label_map: &dyn Fn(usize) -> usize,
) -> SimpFunctor {
    let m = src.labels.len();
    let ob: Vec<ObjId> = src
        .labels
        .iter()
        .map(|&l| {
            let target_label = label_map(l);
            tgt.labels
                .iter()
                .position(|&t| t == target_label)
                .expect("label lands in the target")
        })
        .collect();
    let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for a in 0..m {
        let mut row = Vec::new();
        for b in 0..m {
            if a > b {
                row.push(SimplicialMap::new(Vec::new()));
                continue;
            }
            let hom = &src.tab.homs[a][b];
            let mut images: Vec<Vec<Simplex>> = Vec::new();
            for level in 0..hom.num_levels() {
                images.push(
                    (0..hom.gen_count(level))
                        .map(|gi| {
                            let chain = &src.chains[a][b][level][gi];
                            let mapped: Vec<Vec<usize>> = chain
                                .iter()
                                .map(|s| {
                                    let mut t: Vec<usize> = s.iter().map(|&v| label_map(v)).collect();
                                    t.sort();
                                    t.dedup();
                                    t
                                })
                                .collect();
                            tgt.simplex_of_chain(ob[a], ob[b], &mapped)
                        })
                        .collect(),
                );
            }
            row.push(SimplicialMap::new(images));
        }
        hom_maps.push(row);
    }
    SimpFunctor { ob, hom_maps }
}

/// The diagram data for the Grothendieck construction: values on objects
/// and strictly functorial transitions on arrows.
pub struct GrDiagram {
    pub base: FinCategory,
    pub values: Vec<TabCat>,
    /// Per arrow of the base, a simplicial functor between the values.
    pub transitions: Vec<SimpFunctor>,
}

impl GrDiagram {
    pub fn validate(&self, level_cap: usize) -> Result<()> {
        self.base.validate()?;
        for (c, v) in self.values.iter().enumerate() {
            v.validate(level_cap).map_err(|e| {
                Error::InvalidTable(format!("value at {}: {e}", self.base.objects[c]))
            })?;
        }
        for f in 0..self.base.arrows.len() {
            let t = &self.transitions[f];
            t.validate(
                &self.values[self.base.src(f)],
                &self.values[self.base.dst(f)],
                level_cap,
            )?;
            if self.base.is_identity(f) {
                let n = self.values[self.base.src(f)].objects.len();
                if t.ob != (0..n).collect::<Vec<_>>() {
                    return Err(Error::InvalidTable("identity transition must be the identity".to_string()));
                }
            }
        }
        // strict functoriality on composable pairs
        for f in 0..self.base.arrows.len() {
            for g in 0..self.base.arrows.len() {
                if self.base.arrows[f].dst != self.base.arrows[g].src {
                    continue;
                }
                let h = self.base.comp(g, f)?;
                let lhs = &self.transitions[h];
                let tf = &self.transitions[f];
                let tg = &self.transitions[g];
                // compare on objects and hom generators
                let src_cat = &self.values[self.base.src(f)];
                for x in 0..src_cat.objects.len() {
                    if lhs.ob[x] != tg.ob[tf.ob[x]] {
                        return Err(Error::InvalidTable(format!(
                            "transitions fail functoriality on {} ∘ {}",
                            self.base.arrows[g].name, self.base.arrows[f].name
                        )));
                    }
                }
                for x in 0..src_cat.objects.len() {
                    for y in 0..src_cat.objects.len() {
                        for level in 0..src_cat.homs[x][y].num_levels() {
                            for gi in 0..src_cat.homs[x][y].gen_count(level) {
                                let gen = Simplex::of_gen(GenId::new(level, gi));
                                let a = lhs.apply_hom(x, y, &gen);
                                let b = tg.apply_hom(tf.ob[x], tf.ob[y], &tf.apply_hom(x, y, &gen));
                                if a != b {
                                    return Err(Error::InvalidTable(format!(
                                        "transitions fail functoriality on {} ∘ {}",
                                        self.base.arrows[g].name, self.base.arrows[f].name
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Diagram with every value an ordinary category. Returns the diagram
    /// and the per-object arrow lists of the discrete homs.
    pub fn from_categories(
        base: FinCategory,
        values: Vec<FinCategory>,
        // per base arrow: (object map, arrow map)
        transitions: Vec<(Vec<ObjId>, Vec<ArrId>)>,
        limits: &Limits,
    ) -> Result<(GrDiagram, Vec<Vec<Vec<Vec<ArrId>>>>)> {
        let mut tabs = Vec::new();
        let mut lists = Vec::new();
        for v in &values {
            v.validate()?;
            let (tab, list) = TabCat::from_category(v, limits)?;
            tabs.push(tab);
            lists.push(list);
        }
        let mut simp_transitions = Vec::new();
        for (f, (ob, arr)) in transitions.iter().enumerate() {
            let srcv = &values[base.src(f)];
            let src_lists = &lists[base.src(f)];
            let dst_lists = &lists[base.dst(f)];
            let n = srcv.objects.len();
            let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
            for x in 0..n {
                let mut row = Vec::new();
                for y in 0..n {
                    let images: Vec<Simplex> = src_lists[x][y]
                        .iter()
                        .map(|&a| {
                            let img = arr[a];
                            let pos = dst_lists[ob[x]][ob[y]]
                                .iter()
                                .position(|&b| b == img)
                                .ok_or_else(|| {
                                    Error::InvalidTable(format!(
                                        "transition image of {} has wrong endpoints",
                                        srcv.arrows[a].name
                                    ))
                                })?;
                            Ok(Simplex::of_gen(GenId::new(0, pos)))
                        })
                        .collect::<Result<_>>()?;
                    row.push(SimplicialMap::new(alloc::vec![images]));
                }
                hom_maps.push(row);
            }
            simp_transitions.push(SimpFunctor { ob: ob.clone(), hom_maps });
        }
        Ok((
            GrDiagram { base, values: tabs, transitions: simp_transitions },
            lists,
        ))
    }
}

/// The total simplicial category of a diagram, with provenance per object
/// and per hom generator.
pub struct GrothendieckTotal {
    pub cat: TabCat,
    pub diagram_objects: Vec<(ObjId, ObjId)>,
    /// `hom_prov[x][y]`: per level, per generator of the total hom, the
    /// base arrow and the fiber simplex it came from.
    pub hom_prov: Vec<Vec<Vec<Vec<(ArrId, Simplex)>>>>,
}

impl GrothendieckTotal {
    pub fn object_of(&self, base_obj: ObjId, fiber_obj: ObjId) -> ObjId {
        self.diagram_objects
            .iter()
            .position(|&(c, x)| c == base_obj && x == fiber_obj)
            .expect("object of the total category")
    }

    /// The provenance of an arbitrary hom simplex: the base arrow and the
    /// fiber simplex with the degeneracy word applied.
    pub fn prov_of(&self, x: ObjId, y: ObjId, s: &Simplex) -> (ArrId, Simplex) {
        let g = s.gen();
        let (f, inner) = &self.hom_prov[x][y][g.level][g.index];
        (*f, inner.under_word(s.word()))
    }

    /// The hom simplex corresponding to a base arrow and fiber simplex.
    pub fn hom_simplex(&self, x: ObjId, y: ObjId, f: ArrId, inner: &Simplex) -> Simplex {
        let level = inner.gen().level;
        let idx = self.hom_prov[x][y][level]
            .iter()
            .position(|(ff, s)| *ff == f && s.gen() == inner.gen())
            .expect("summand generator registered");
        Simplex::of_gen(GenId::new(level, idx)).under_word(inner.word())
    }
}

/// Builds the total category: objects are pairs, homs are the disjoint
/// unions over base arrows, composition by transition-then-compose.
pub fn grothendieck_construct(diagram: &GrDiagram, limits: &Limits) -> Result<GrothendieckTotal> {
    let base = &diagram.base;
    let mut diagram_objects: Vec<(ObjId, ObjId)> = Vec::new();
    for c in 0..base.objects.len() {
        for x in 0..diagram.values[c].objects.len() {
            diagram_objects.push((c, x));
        }
    }
    let n = diagram_objects.len();
    let names: Vec<String> = diagram_objects
        .iter()
        .map(|&(c, x)| format!("({},{})", base.objects[c], diagram.values[c].objects[x]))
        .collect();

    // homs: disjoint unions over base arrows
    let mut homs: Vec<Vec<FiniteSimplicialSet>> = Vec::new();
    let mut hom_prov: Vec<Vec<Vec<Vec<(ArrId, Simplex)>>>> = Vec::new();
    for &(c, x) in &diagram_objects {
        let mut hom_row = Vec::new();
        let mut prov_row = Vec::new();
        for &(c2, x2) in &diagram_objects {
            let mut parts: Vec<(ArrId, &TabCat, ObjId)> = Vec::new();
            for f in base.arrows_between(c, c2) {
                // summand F(C')(Ff x, x2)
                let fx = diagram.transitions[f].ob[x];
                parts.push((f, &diagram.values[c2], fx));
            }
            // dimension bound: max of the summand bounds
            let dim = parts
                .iter()
                .map(|(_, v, fx)| v.homs[*fx][x2].num_levels())
                .max()
                .unwrap_or(0)
                .max(1)
                - 1;
            let mut builder = SsetBuilder::new(dim);
            let mut prov: Vec<Vec<(ArrId, Simplex)>> = alloc::vec![Vec::new(); dim + 1];
            let mut offsets: BTreeMap<(ArrId, usize), usize> = BTreeMap::new();
            for (f, v, fx) in &parts {
                let summand = &v.homs[*fx][x2];
                for level in 0..summand.num_levels() {
                    offsets.insert((*f, level), prov[level].len());
                    for gi in 0..summand.gen_count(level) {
                        let g = GenId::new(level, gi);
                        let name = format!("{}:{}", base.arrows[*f].name, summand.gen_name(g));
                        let faces = if level == 0 {
                            Vec::new()
                        } else {
                            (0..=level)
                                .map(|i| {
                                    let fc = summand
                                        .face(&Simplex::of_gen(g), i)
                                        .expect("valid face");
                                    let off = offsets[&(*f, fc.gen().level)];
                                    Ok(Simplex::new(
                                        GenId::new(fc.gen().level, off + fc.gen().index),
                                        fc.word().to_vec(),
                                    )?)
                                })
                                .collect::<Result<Vec<_>>>()?
                        };
                        builder.add_generator(level, &name, faces)?;
                        prov[level].push((*f, Simplex::of_gen(g)));
                    }
                }
            }
            hom_row.push(builder.build_unchecked());
            prov_row.push(prov);
        }
        homs.push(hom_row);
        hom_prov.push(prov_row);
    }

    let identities: Vec<Simplex> = (0..n)
        .map(|i| {
            let (c, x) = diagram_objects[i];
            let idf = base.identity[c];
            let inner_id = &diagram.values[c].identities[x];
            let pos = hom_prov[i][i][0]
                .iter()
                .position(|(f, s)| *f == idf && s.gen() == inner_id.gen())
                .expect("identity registered");
            Simplex::of_gen(GenId::new(0, pos))
        })
        .collect();

    let shell = GrothendieckTotal {
        cat: TabCat { objects: names, homs, identities, comp: Vec::new() },
        diagram_objects,
        hom_prov,
    };

    // composition tables
    let mut comp: Vec<Vec<Vec<CompData>>> = Vec::new();
    for i in 0..n {
        let mut plane = Vec::new();
        for j in 0..n {
            let mut row = Vec::new();
            for k in 0..n {
                let prod = product(&shell.cat.homs[j][k], &shell.cat.homs[i][j], limits)?;
                let mut images: Vec<Vec<Simplex>> = Vec::new();
                for level in 0..prod.sset.num_levels() {
                    images.push(
                        prod.components[level]
                            .iter()
                            .map(|(bf, af)| {
                                let (g_arr, beta) = shell.prov_of(j, k, bf);
                                let (f_arr, alpha) = shell.prov_of(i, j, af);
                                let h = base.comp(g_arr, f_arr).expect("composable");
                                // β ∘ F(g)(α) in F(C'')
                                let (cj, xj) = shell.diagram_objects[j];
                                let (ck, _) = shell.diagram_objects[k];
                                let (ci, xi) = shell.diagram_objects[i];
                                let _ = (cj, ci);
                                let tg = &diagram.transitions[g_arr];
                                let tf = &diagram.transitions[f_arr];
                                let moved = tg.apply_hom(tf.ob[xi], xj, &alpha);
                                let value = &diagram.values[ck];
                                let (_, xk) = shell.diagram_objects[k];
                                let composed = value.compose(
                                    tg.ob[tf.ob[xi]],
                                    tg.ob[xj],
                                    xk,
                                    &beta,
                                    &moved,
                                );
                                shell.hom_simplex(i, k, h, &composed)
                            })
                            .collect(),
                    );
                }
                let map = SimplicialMap::new(images);
                row.push(CompData { prod, map });
            }
            plane.push(row);
        }
        comp.push(plane);
    }
    let mut total = shell;
    total.cat.comp = comp;
    Ok(total)
}

/// An n-simplex of the relative nerve: a chain in the base together with a
/// compatible family of simplicial functors out of the rigid subsimplices.
#[derive(Clone, PartialEq, Eq)]
pub struct RelNerveSimplex {
    /// Composable chain of base arrows, identities allowed; length n.
    pub chain: Vec<ArrId>,
    /// `φ_I` for every nonempty `I ⊆ [n]`, keyed by the sorted vertex list.
    pub phis: BTreeMap<Vec<usize>, SimpFunctor>,
}

impl RelNerveSimplex {
    pub fn dim(&self) -> usize {
        self.chain.len()
    }
}

/// Objects of the chain: vertex `i` of the base simplex.
fn chain_objects(base: &FinCategory, chain: &[ArrId], base_vertex: ObjId) -> Vec<ObjId> {
    let mut out = Vec::with_capacity(chain.len() + 1);
    if chain.is_empty() {
        out.push(base_vertex);
        return out;
    }
    out.push(base.src(chain[0]));
    for &f in chain {
        out.push(base.dst(f));
    }
    out
}

/// The composite base arrow `f_{ij}` of a chain.
fn chain_composite(base: &FinCategory, chain: &[ArrId], objects: &[ObjId], i: usize, j: usize) -> ArrId {
    let mut f = base.identity[objects[i]];
    for &g in &chain[i..j] {
        f = base.comp(g, f).expect("composable chain");
    }
    f
}

/// All nonempty subsets of `{0,..,n}` as sorted lists.
fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << (n + 1)) {
        let mut s = Vec::new();
        for v in 0..=n {
            if mask & (1 << v) != 0 {
                s.push(v);
            }
        }
        out.push(s);
    }
    out.sort();
    out
}

/// Validates a relative-nerve simplex against a diagram: every `φ_I` is a
/// functor into the right value, and restriction along `I ⊆ J` commutes
/// with the transition to the larger endpoint.
pub fn validate_rel_nerve(
    diagram: &GrDiagram,
    x: &RelNerveSimplex,
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    level_cap: usize,
) -> Result<()> {
    let n = x.dim();
    let objects = chain_objects(&diagram.base, &x.chain, usize::MAX);
    for subset in nonempty_subsets(n) {
        let phi = x
            .phis
            .get(&subset)
            .ok_or_else(|| Error::InvalidTable(format!("missing φ for {subset:?}")))?;
        let rigid = &rigids[&subset];
        let target = &diagram.values[objects[*subset.last().unwrap()]];
        phi.validate(&rigid.tab, target, level_cap)?;
    }
    for subset_i in nonempty_subsets(n) {
        for subset_j in nonempty_subsets(n) {
            if !subset_i.iter().all(|v| subset_j.contains(v)) || subset_i == subset_j {
                continue;
            }
            let (mi, mj) = (*subset_i.last().unwrap(), *subset_j.last().unwrap());
            let fij = chain_composite(&diagram.base, &x.chain, &objects, mi, mj);
            let t = &diagram.transitions[fij];
            let phi_i = &x.phis[&subset_i];
            let phi_j = &x.phis[&subset_j];
            let incl = rigid_functor(&rigids[&subset_i], &rigids[&subset_j], &|v| v);
            // F(f_{mi,mj}) ∘ φ_I must equal φ_J restricted along the inclusion
            for (a_pos, _) in subset_i.iter().enumerate() {
                if t.ob[phi_i.ob[a_pos]] != phi_j.ob[incl.ob[a_pos]] {
                    return Err(Error::InvalidTable(format!(
                        "φ compatibility fails on objects for {subset_i:?} ⊆ {subset_j:?}"
                    )));
                }
            }
            for a in 0..subset_i.len() {
                for b in a..subset_i.len() {
                    let hom = &rigids[&subset_i].tab.homs[a][b];
                    for level in 0..hom.num_levels() {
                        for gi in 0..hom.gen_count(level) {
                            let gen = Simplex::of_gen(GenId::new(level, gi));
                            let lhs = t.apply_hom(phi_i.ob[a], phi_i.ob[b], &phi_i.apply_hom(a, b, &gen));
                            let moved = incl.apply_hom(a, b, &gen);
                            let rhs = phi_j.apply_hom(incl.ob[a], incl.ob[b], &moved);
                            if lhs != rhs {
                                return Err(Error::InvalidTable(format!(
                                    "φ compatibility fails on homs for {subset_i:?} ⊆ {subset_j:?}"
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The forward comparison: a relative-nerve simplex to a simplicial functor
/// from the rigid n-simplex into the total category.
pub fn phi_forward(
    diagram: &GrDiagram,
    total: &GrothendieckTotal,
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    x: &RelNerveSimplex,
) -> SimpFunctor {
    let n = x.dim();
    let base = &diagram.base;
    let objects = chain_objects(base, &x.chain, usize::MAX);
    let full: Vec<usize> = (0..=n).collect();
    let rigid_n = &rigids[&full];

    // φ(i) = φ_{[i]}(i), an object of F(C_i)
    let fiber_obj: Vec<ObjId> = (0..=n)
        .map(|i| {
            let interval: Vec<usize> = (0..=i).collect();
            x.phis[&interval].ob[i]
        })
        .collect();
    let ob: Vec<ObjId> = (0..=n)
        .map(|i| total.object_of(objects[i], fiber_obj[i]))
        .collect();

    let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for i in 0..=n {
        let mut row = Vec::new();
        for j in 0..=n {
            if i > j {
                row.push(SimplicialMap::new(Vec::new()));
                continue;
            }
            let interval_j: Vec<usize> = (0..=j).collect();
            let phi_j = &x.phis[&interval_j];
            let fij = chain_composite(base, &x.chain, &objects, i, j);
            let hom = &rigid_n.tab.homs[i][j];
            let mut images: Vec<Vec<Simplex>> = Vec::new();
            for level in 0..hom.num_levels() {
                images.push(
                    (0..hom.gen_count(level))
                        .map(|gi| {
                            let gen = Simplex::of_gen(GenId::new(level, gi));
                            // the hom cubes of the full rigid simplex and of
                            // the interval agree generator for generator
                            let inner = phi_j.apply_hom(i, j, &gen);
                            total.hom_simplex(ob[i], ob[j], fij, &inner)
                        })
                        .collect(),
                );
            }
            row.push(SimplicialMap::new(images));
        }
        hom_maps.push(row);
    }
    SimpFunctor { ob, hom_maps }
}

/// The inverse comparison: a simplicial functor from the rigid n-simplex
/// into the total category back to a relative-nerve simplex.
pub fn phi_inverse(
    diagram: &GrDiagram,
    total: &GrothendieckTotal,
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    n: usize,
    phi: &SimpFunctor,
) -> RelNerveSimplex {
    let base = &diagram.base;
    // project to the base chain: the edge components are constant over one
    // base arrow each
    let mut chain: Vec<ArrId> = Vec::new();
    for i in 0..n {
        let edge_gen = Simplex::of_gen(GenId::new(0, 0));
        let (ci, _) = total.diagram_objects[phi.ob[i]];
        let _ = ci;
        let img = phi.hom_maps[i][i + 1].apply(&edge_gen);
        let (f, _) = total.prov_of(phi.ob[i], phi.ob[i + 1], &img);
        chain.push(f);
    }
    let objects = chain_objects(base, &chain, total.diagram_objects[phi.ob[0]].0);
    let full: Vec<usize> = (0..=n).collect();
    let rigid_n = &rigids[&full];

    let fiber_obj: Vec<ObjId> = (0..=n).map(|i| total.diagram_objects[phi.ob[i]].1).collect();

    let mut phis: BTreeMap<Vec<usize>, SimpFunctor> = BTreeMap::new();
    // subintervals first
    for lo in 0..=n {
        for hi in lo..=n {
            let subset: Vec<usize> = (lo..=hi).collect();
            let rigid_i = &rigids[&subset];
            let c_max = objects[hi];
            let value = &diagram.values[c_max];
            let ob: Vec<ObjId> = (lo..=hi)
                .map(|i| {
                    let f_to_max = chain_composite(base, &chain, &objects, i, hi);
                    diagram.transitions[f_to_max].ob[fiber_obj[i]]
                })
                .collect();
            let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
            for a in 0..subset.len() {
                let mut row = Vec::new();
                for b in 0..subset.len() {
                    if a > b {
                        row.push(SimplicialMap::new(Vec::new()));
                        continue;
                    }
                    let (i, j) = (subset[a], subset[b]);
                    let f_j_max = chain_composite(base, &chain, &objects, j, hi);
                    let t = &diagram.transitions[f_j_max];
                    let hom = &rigid_i.tab.homs[a][b];
                    let mut images: Vec<Vec<Simplex>> = Vec::new();
                    for level in 0..hom.num_levels() {
                        images.push(
                            (0..hom.gen_count(level))
                                .map(|gi| {
                                    // the interval cube agrees with the full one
                                    let gen = Simplex::of_gen(GenId::new(level, gi));
                                    let img = phi.hom_maps[i][j].apply(&gen);
                                    let (_, inner) = total.prov_of(phi.ob[i], phi.ob[j], &img);
                                    t.apply_hom(
                                        diagram.transitions
                                            [chain_composite(base, &chain, &objects, i, j)]
                                        .ob[fiber_obj[i]],
                                        fiber_obj[j],
                                        &inner,
                                    )
                                })
                                .collect(),
                        );
                    }
                    row.push(SimplicialMap::new(images));
                }
                hom_maps.push(row);
            }
            phis.insert(subset, SimpFunctor { ob, hom_maps });
            let _ = value;
        }
    }
    // arbitrary subsets restrict the interval up to their maximum
    for subset in nonempty_subsets(n) {
        if phis.contains_key(&subset) {
            continue;
        }
        let hi = *subset.last().unwrap();
        let lo_interval: Vec<usize> = (0..=hi).collect();
        let phi_interval = phis[&lo_interval].clone();
        let incl = rigid_functor(&rigids[&subset], &rigids[&lo_interval], &|v| v);
        let ob: Vec<ObjId> = (0..subset.len()).map(|a| phi_interval.ob[incl.ob[a]]).collect();
        let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
        for a in 0..subset.len() {
            let mut row = Vec::new();
            for b in 0..subset.len() {
                if a > b {
                    row.push(SimplicialMap::new(Vec::new()));
                    continue;
                }
                let hom = &rigids[&subset].tab.homs[a][b];
                let mut images: Vec<Vec<Simplex>> = Vec::new();
                for level in 0..hom.num_levels() {
                    images.push(
                        (0..hom.gen_count(level))
                            .map(|gi| {
                                let gen = Simplex::of_gen(GenId::new(level, gi));
                                let moved = incl.apply_hom(a, b, &gen);
                                phi_interval.apply_hom(incl.ob[a], incl.ob[b], &moved)
                            })
                            .collect(),
                    );
                }
                row.push(SimplicialMap::new(images));
            }
            hom_maps.push(row);
        }
        phis.insert(subset, SimpFunctor { ob, hom_maps });
    }
    let _ = rigid_n;
    RelNerveSimplex { chain, phis }
}

/// Enumerates the relative-nerve simplices of a discrete-valued diagram at
/// dimension n: base chains with compatible families given by chains in the
/// fiber nerves.
pub fn enumerate_rel_nerve_discrete(
    diagram: &GrDiagram,
    fiber_cats: &[FinCategory],
    fiber_lists: &[Vec<Vec<Vec<ArrId>>>],
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    n: usize,
) -> Vec<RelNerveSimplex> {
    let base = &diagram.base;
    let mut out = Vec::new();
    // chains of length n with identities allowed
    let mut chains: Vec<Vec<ArrId>> = alloc::vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for c in &chains {
            let from: Vec<ArrId> = match c.last() {
                None => (0..base.arrows.len()).collect(),
                Some(&last) => base.arrows_from(base.dst(last)).collect(),
            };
            for f in from {
                let mut c2 = c.clone();
                c2.push(f);
                next.push(c2);
            }
        }
        chains = next;
    }
    if n == 0 {
        chains = alloc::vec![Vec::new()];
    }
    let base_vertices: Vec<ObjId> = (0..base.objects.len()).collect();
    for chain in chains {
        let object_lists: Vec<Vec<ObjId>> = if chain.is_empty() {
            base_vertices.iter().map(|&v| alloc::vec![v]).collect()
        } else {
            alloc::vec![chain_objects(base, &chain, usize::MAX)]
        };
        for objects in object_lists {
            // a compatible family for a discrete-valued diagram amounts to a
            // fiber chain: objects x_i in F(C_i) and arrows
            // ξ_i: F(f_i)(x_{i-1}) -> x_i
            let mut partial: Vec<(Vec<ObjId>, Vec<ArrId>)> = Vec::new();
            for x0 in 0..diagram.values[objects[0]].objects.len() {
                partial.push((alloc::vec![x0], Vec::new()));
            }
            for i in 1..=n {
                let f = chain[i - 1];
                let t = &diagram.transitions[f];
                let value = &fiber_cats[objects[i]];
                let mut next = Vec::new();
                for (obs, arrs) in &partial {
                    let moved = t.ob[obs[i - 1]];
                    for xi in 0..diagram.values[objects[i]].objects.len() {
                        for xi_arr in value.arrows_between(moved, xi) {
                            let mut obs2 = obs.clone();
                            obs2.push(xi);
                            let mut arrs2 = arrs.clone();
                            arrs2.push(xi_arr);
                            next.push((obs2, arrs2));
                        }
                    }
                }
                partial = next;
            }
            for (obs, arrs) in partial {
                out.push(rel_nerve_of_fiber_chain(
                    diagram,
                    fiber_cats,
                    fiber_lists,
                    rigids,
                    &chain,
                    &objects,
                    &obs,
                    &arrs,
                ));
            }
        }
    }
    out
}

/// Assembles the φ-family of a discrete fiber chain: every hom cube maps
/// constantly onto the relevant composite arrow.
#[allow(clippy::too_many_arguments)]
pub fn rel_nerve_of_fiber_chain(
    diagram: &GrDiagram,
    fiber_cats: &[FinCategory],
    fiber_lists: &[Vec<Vec<Vec<ArrId>>>],
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    chain: &[ArrId],
    objects: &[ObjId],
    fiber_obs: &[ObjId],
    fiber_arrs: &[ArrId],
) -> RelNerveSimplex {
    let base = &diagram.base;
    let n = chain.len();
    let mut phis = BTreeMap::new();
    for subset in nonempty_subsets(n) {
        let hi = *subset.last().unwrap();
        let c_max = objects[hi];
        let value_cat = &fiber_cats[c_max];
        let lists = &fiber_lists[c_max];
        // objects of φ_I: transitions of the fiber objects to F(C_max)
        let ob: Vec<ObjId> = subset
            .iter()
            .map(|&i| {
                let f = chain_composite(base, chain, objects, i, hi);
                diagram.transitions[f].ob[fiber_obs[i]]
            })
            .collect();
        // arrows of the fiber chain pushed to C_max: ζ_i = F(f_{i,hi})(ξ_i)
        // with ξ_i: F(f_i)(x_{i-1}) -> x_i; the composite from a to b is
        // ζ_b ∘ ... ∘ ζ_{a+1} evaluated in F(C_max)
        let pushed: Vec<ArrId> = (1..=hi)
            .map(|i| {
                let f = chain_composite(base, chain, objects, i, hi);
                map_arrow(diagram, fiber_cats, objects[i], c_max, f, fiber_arrs[i - 1])
            })
            .collect();
        let rigid = &rigids[&subset];
        let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
        for a in 0..subset.len() {
            let mut row = Vec::new();
            for b in 0..subset.len() {
                if a > b {
                    row.push(SimplicialMap::new(Vec::new()));
                    continue;
                }
                // composite arrow from ob[a] to ob[b] in F(C_max)
                let mut arrow = value_cat.identity[ob[a]];
                for i in subset[a]..subset[b] {
                    arrow = value_cat.comp(pushed[i], arrow).expect("composable");
                }
                let pos = lists[ob[a]][ob[b]]
                    .iter()
                    .position(|&g| g == arrow)
                    .expect("arrow in the hom list");
                let target_vertex = Simplex::of_gen(GenId::new(0, pos));
                let hom = &rigid.tab.homs[a][b];
                let mut images: Vec<Vec<Simplex>> = Vec::new();
                for level in 0..hom.num_levels() {
                    images.push(
                        (0..hom.gen_count(level))
                            .map(|_| target_vertex.clone().under_word(&full_word(level)))
                            .collect(),
                    );
                }
                row.push(SimplicialMap::new(images));
            }
            hom_maps.push(row);
        }
        phis.insert(subset, SimpFunctor { ob, hom_maps });
    }
    RelNerveSimplex { chain: chain.to_vec(), phis }
}

/// The degeneracy word collapsing a level to a vertex: `[l-1, .., 1, 0]`.
fn full_word(level: usize) -> Vec<usize> {
    (0..level).rev().collect()
}

/// Transports an arrow of a discrete fiber along a transition functor.
fn map_arrow(
    diagram: &GrDiagram,
    fiber_cats: &[FinCategory],
    from_c: ObjId,
    _to_c: ObjId,
    f: ArrId,
    arrow: ArrId,
) -> ArrId {
    let t = &diagram.transitions[f];
    let src_cat = &fiber_cats[from_c];
    let (x, y) = (src_cat.src(arrow), src_cat.dst(arrow));
    // recover the arrow id from the hom map on the discrete nerve
    let src_lists = fiber_hom_position(src_cat, arrow);
    let img = t.hom_maps[x][y].apply(&Simplex::of_gen(GenId::new(0, src_lists)));
    // decode: position within the target hom list
    let tgt_cat = &fiber_cats[diagram.base.dst(f)];
    let mut count = 0;
    for g in 0..tgt_cat.arrows.len() {
        if tgt_cat.src(g) == t.ob[x] && tgt_cat.dst(g) == t.ob[y] {
            if count == img.gen().index {
                return g;
            }
            count += 1;
        }
    }
    unreachable!("image arrow exists");
}

fn fiber_hom_position(cat: &FinCategory, arrow: ArrId) -> usize {
    let (x, y) = (cat.src(arrow), cat.dst(arrow));
    let mut pos = 0;
    for g in 0..cat.arrows.len() {
        if cat.src(g) == x && cat.dst(g) == y {
            if g == arrow {
                return pos;
            }
            pos += 1;
        }
    }
    unreachable!("arrow is in its own hom set");
}

/// Face of a relative-nerve simplex in the i-th direction.
pub fn rel_nerve_face(
    diagram: &GrDiagram,
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    x: &RelNerveSimplex,
    i: usize,
) -> RelNerveSimplex {
    let base = &diagram.base;
    let n = x.dim();
    let chain = {
        let objects = chain_objects(base, &x.chain, usize::MAX);
        let mut c = Vec::new();
        if n > 0 {
            if i == 0 {
                c = x.chain[1..].to_vec();
            } else if i == n {
                c = x.chain[..n - 1].to_vec();
            } else {
                c = x.chain[..i - 1].to_vec();
                c.push(base.comp(x.chain[i], x.chain[i - 1]).expect("composable"));
                c.extend_from_slice(&x.chain[i + 1..]);
            }
        }
        let _ = objects;
        c
    };
    // δ_i: [n-1] -> [n]
    let delta = move |v: usize| if v < i { v } else { v + 1 };
    let mut phis = BTreeMap::new();
    for subset in nonempty_subsets(n - 1) {
        let image: Vec<usize> = subset.iter().map(|&v| delta(v)).collect();
        let phi_img = &x.phis[&image];
        let relabel = rigid_functor(&rigids[&subset], &rigids[&image], &delta);
        phis.insert(subset.clone(), precompose(phi_img, &relabel, &rigids[&subset], &rigids[&image]));
    }
    RelNerveSimplex { chain, phis }
}

/// Degeneracy of a relative-nerve simplex in the i-th direction.
pub fn rel_nerve_degeneracy(
    diagram: &GrDiagram,
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    x: &RelNerveSimplex,
    i: usize,
) -> RelNerveSimplex {
    let base = &diagram.base;
    let n = x.dim();
    let objects = chain_objects(base, &x.chain, usize::MAX);
    let mut chain = x.chain[..i].to_vec();
    chain.push(base.identity[objects[i]]);
    chain.extend_from_slice(&x.chain[i..]);
    // σ_i: [n+1] -> [n]
    let sigma = move |v: usize| if v <= i { v } else { v - 1 };
    let mut phis = BTreeMap::new();
    for subset in nonempty_subsets(n + 1) {
        let image: Vec<usize> = {
            let mut s: Vec<usize> = subset.iter().map(|&v| sigma(v)).collect();
            s.dedup();
            s
        };
        let phi_img = &x.phis[&image];
        let relabel = rigid_functor(&rigids[&subset], &rigids[&image], &sigma);
        phis.insert(subset.clone(), precompose(phi_img, &relabel, &rigids[&subset], &rigids[&image]));
    }
    RelNerveSimplex { chain, phis }
}

/// Precomposition of a simplicial functor with a rigid relabeling.
fn precompose(
    phi: &SimpFunctor,
    relabel: &SimpFunctor,
    src: &RigidCat,
    _mid: &RigidCat,
) -> SimpFunctor {
    let m = src.labels.len();
    let ob: Vec<ObjId> = (0..m).map(|a| phi.ob[relabel.ob[a]]).collect();
    let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for a in 0..m {
        let mut row = Vec::new();
        for b in 0..m {
            if a > b {
                row.push(SimplicialMap::new(Vec::new()));
                continue;
            }
            let hom = &src.tab.homs[a][b];
            let mut images: Vec<Vec<Simplex>> = Vec::new();
            for level in 0..hom.num_levels() {
                images.push(
                    (0..hom.gen_count(level))
                        .map(|gi| {
                            let gen = Simplex::of_gen(GenId::new(level, gi));
                            let moved = relabel.apply_hom(a, b, &gen);
                            phi.apply_hom(relabel.ob[a], relabel.ob[b], &moved)
                        })
                        .collect(),
                );
            }
            row.push(SimplicialMap::new(images));
        }
        hom_maps.push(row);
    }
    SimpFunctor { ob, hom_maps }
}

/// Precomposition of a functor out of the rigid n-simplex with `𝔠[u]` for a
/// monotone vertex map `u`, giving the simplicial structure of the
/// coherent-nerve side.
pub fn functor_face(
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    phi: &SimpFunctor,
    n: usize,
    i: usize,
) -> SimpFunctor {
    let delta = move |v: usize| if v < i { v } else { v + 1 };
    let src: Vec<usize> = (0..n).collect();
    let tgt: Vec<usize> = (0..=n).collect();
    let relabel = rigid_functor(&rigids[&src], &rigids[&tgt], &delta);
    precompose(phi, &relabel, &rigids[&src], &rigids[&tgt])
}

pub fn functor_degeneracy(
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    phi: &SimpFunctor,
    n: usize,
    i: usize,
) -> SimpFunctor {
    let sigma = move |v: usize| if v <= i { v } else { v - 1 };
    let src: Vec<usize> = (0..=n + 1).collect();
    let tgt: Vec<usize> = (0..=n).collect();
    let relabel = rigid_functor(&rigids[&src], &rigids[&tgt], &sigma);
    precompose(phi, &relabel, &rigids[&src], &rigids[&tgt])
}

/// Rigid simplices for every nonempty subset of `{0,..,n}`.
pub fn rigid_family(n: usize) -> BTreeMap<Vec<usize>, RigidCat> {
    let mut out = BTreeMap::new();
    for subset in nonempty_subsets(n) {
        out.insert(subset.clone(), rigid_on(&subset));
    }
    out
}

/// Composition of simplicial functors.
pub fn compose_functors(first: &SimpFunctor, second: &SimpFunctor) -> SimpFunctor {
    let n = first.ob.len();
    let ob: Vec<ObjId> = first.ob.iter().map(|&x| second.ob[x]).collect();
    let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for a in 0..n {
        let mut row = Vec::new();
        for b in 0..n {
            let inner = &first.hom_maps[a][b];
            if inner.num_rows() == 0 {
                row.push(SimplicialMap::new(Vec::new()));
                continue;
            }
            let images: Vec<Vec<Simplex>> = inner
                .rows()
                .map(|level_row| {
                    level_row
                        .iter()
                        .map(|img| second.apply_hom(first.ob[a], first.ob[b], img))
                        .collect()
                })
                .collect();
            row.push(SimplicialMap::new(images));
        }
        hom_maps.push(row);
    }
    SimpFunctor { ob, hom_maps }
}

/// The functor of total categories induced by a pointwise natural map of
/// diagrams: per base object a simplicial functor of values commuting with
/// the transitions.
pub fn gr_map_of_diagrams(
    src_diagram: &GrDiagram,
    src_total: &GrothendieckTotal,
    dst_total: &GrothendieckTotal,
    eta: &[SimpFunctor],
) -> SimpFunctor {
    let n = src_total.diagram_objects.len();
    let ob: Vec<ObjId> = (0..n)
        .map(|i| {
            let (c, x) = src_total.diagram_objects[i];
            dst_total.object_of(c, eta[c].ob[x])
        })
        .collect();
    let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for i in 0..n {
        let mut row = Vec::new();
        for j in 0..n {
            let hom = &src_total.cat.homs[i][j];
            let (cj, _) = src_total.diagram_objects[j];
            let (_, xi) = src_total.diagram_objects[i];
            let mut images: Vec<Vec<Simplex>> = Vec::new();
            for level in 0..hom.num_levels() {
                images.push(
                    (0..hom.gen_count(level))
                        .map(|gi| {
                            let (f, inner) = &src_total.hom_prov[i][j][level][gi];
                            let moved_src = src_diagram.transitions[*f].ob[xi];
                            let (_, xj) = src_total.diagram_objects[j];
                            let mapped = eta[cj].apply_hom(moved_src, xj, inner);
                            dst_total.hom_simplex(ob[i], ob[j], *f, &mapped)
                        })
                        .collect(),
                );
            }
            row.push(SimplicialMap::new(images));
        }
        hom_maps.push(row);
    }
    SimpFunctor { ob, hom_maps }
}

/// Maps a relative-nerve simplex along a pointwise natural map of diagrams.
pub fn rel_nerve_map_of_diagrams(x: &RelNerveSimplex, eta: &[SimpFunctor], objects: &[ObjId]) -> RelNerveSimplex {
    let mut phis = BTreeMap::new();
    for (subset, phi) in &x.phis {
        let hi = *subset.last().unwrap();
        let c_max = objects[hi];
        phis.insert(subset.clone(), compose_functors(phi, &eta[c_max]));
    }
    RelNerveSimplex { chain: x.chain.clone(), phis }
}

/// Whether an edge of the total category is cocartesian for the projection
/// to the base: its fiber component must be an isomorphism. Decidable for
/// discrete fibers.
pub fn is_cocartesian_gr(
    diagram: &GrDiagram,
    fiber_cats: &[FinCategory],
    fiber_lists: &[Vec<Vec<Vec<ArrId>>>],
    total: &GrothendieckTotal,
    x: ObjId,
    y: ObjId,
    edge: &Simplex,
) -> Result<bool> {
    if edge.level() != 0 {
        return Err(Error::InvalidTable("an edge datum is a hom vertex".to_string()));
    }
    let (f, inner) = total.prov_of(x, y, edge);
    let (cy, yfib) = total.diagram_objects[y];
    let (_, xfib) = total.diagram_objects[x];
    let moved = diagram.transitions[f].ob[xfib];
    let g = fiber_lists[cy][moved][yfib][inner.gen().index];
    Ok(is_iso_arrow(&fiber_cats[cy], g))
}

pub fn is_iso_arrow(cat: &FinCategory, g: ArrId) -> bool {
    let (a, b) = (cat.src(g), cat.dst(g));
    cat.arrows_between(b, a).any(|h| {
        cat.comp(h, g).map(|c| cat.is_identity(c)).unwrap_or(false)
            && cat.comp(g, h).map(|c| cat.is_identity(c)).unwrap_or(false)
    })
}

/// Direct universal-property check of an edge of the total category: for
/// every arrow out of the source and every base factorization, exactly one
/// filler exists. Used as the oracle against [`is_cocartesian_gr`].
pub fn cocartesian_gr_oracle(
    diagram: &GrDiagram,
    total: &GrothendieckTotal,
    x: ObjId,
    y: ObjId,
    edge: &Simplex,
) -> bool {
    let base = &diagram.base;
    let n = total.diagram_objects.len();
    let (pf, _) = total.prov_of(x, y, edge);
    for z in 0..n {
        for h_level in [0usize] {
            let _ = h_level;
            let homs_xz = &total.cat.homs[x][z];
            for hv in 0..homs_xz.gen_count(0) {
                let h = Simplex::of_gen(GenId::new(0, hv));
                let (ph, _) = total.prov_of(x, z, &h);
                // base factorizations: arrows ψ with ψ ∘ pf = ph
                for psi in base.arrows_between(base.dst(pf), total.diagram_objects[z].0) {
                    if base.comp(psi, pf).expect("composable") != ph {
                        continue;
                    }
                    let mut count = 0;
                    for gv in 0..total.cat.homs[y][z].gen_count(0) {
                        let g = Simplex::of_gen(GenId::new(0, gv));
                        let (pg, _) = total.prov_of(y, z, &g);
                        if pg != psi {
                            continue;
                        }
                        if total.cat.compose(x, y, z, &g, edge) == h {
                            count += 1;
                        }
                    }
                    if count != 1 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Verifies that the transformation with identity components exhibits the
/// transition functor: every component is cocartesian and the functor
/// induced by the universal property agrees with the transition on objects
/// and arrows.
pub fn induced_functor_check(
    diagram: &GrDiagram,
    fiber_cats: &[FinCategory],
    fiber_lists: &[Vec<Vec<Vec<ArrId>>>],
    total: &GrothendieckTotal,
    f: ArrId,
) -> Result<bool> {
    let base = &diagram.base;
    let (c, c2) = (base.src(f), base.dst(f));
    let t = &diagram.transitions[f];
    let value2 = &fiber_cats[c2];
    for x in 0..fiber_cats[c].objects.len() {
        let moved = t.ob[x];
        let xt = total.object_of(c, x);
        let yt = total.object_of(c2, moved);
        let id_pos = fiber_lists[c2][moved][moved]
            .iter()
            .position(|&a| a == value2.identity[moved])
            .expect("identity in hom list");
        let lift = total.hom_simplex(xt, yt, f, &Simplex::of_gen(GenId::new(0, id_pos)));
        if !is_cocartesian_gr(diagram, fiber_cats, fiber_lists, total, xt, yt, &lift)? {
            return Ok(false);
        }
        // the endpoint functor on arrows: the unique filler over the
        // identity of c2 equals the transition image
        for y in 0..fiber_cats[c].objects.len() {
            let y_moved = t.ob[y];
            let yt2 = total.object_of(c2, y_moved);
            for (a_pos, &a) in fiber_lists[c][x][y].iter().enumerate() {
                let _ = a;
                // h = (f, F f a): the composite (f,id) then the image
                let a_vertex = Simplex::of_gen(GenId::new(0, a_pos));
                let fa = t.hom_maps[x][y].apply(&a_vertex);
                let h = total.hom_simplex(xt, yt2, f, &fa);
                let mut matches = Vec::new();
                for bv in 0..total.cat.homs[yt][yt2].gen_count(0) {
                    let b = Simplex::of_gen(GenId::new(0, bv));
                    let (pb, _) = total.prov_of(yt, yt2, &b);
                    if pb != base.identity[c2] {
                        continue;
                    }
                    if total.cat.compose(xt, yt, yt2, &b, &lift) == h {
                        matches.push(bv);
                    }
                }
                if matches.len() != 1 {
                    return Ok(false);
                }
                let (_, b_inner) = total.prov_of(yt, yt2, &Simplex::of_gen(GenId::new(0, matches[0])));
                let b_arrow = fiber_lists[c2][moved][y_moved][b_inner.gen().index];
                let fa_arrow = fiber_lists[c2][moved][y_moved][fa.gen().index];
                if b_arrow != fa_arrow {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The underlying ordinary category of a discrete-enriched tabulated
/// category: arrows are the hom vertices. Returns the category and the
/// arrow id per (source, target, vertex index).
pub fn underlying_category(tab: &TabCat) -> (FinCategory, Vec<Vec<Vec<ArrId>>>) {
    let n = tab.objects.len();
    let mut arrows: Vec<crate::nerve::ArrowData> = Vec::new();
    let mut identity = alloc::vec![0usize; n];
    let mut lists: Vec<Vec<Vec<ArrId>>> = alloc::vec![alloc::vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            for gi in 0..tab.homs[x][y].gen_count(0) {
                let id = arrows.len();
                lists[x][y].push(id);
                let g = GenId::new(0, gi);
                arrows.push(crate::nerve::ArrowData {
                    src: x,
                    dst: y,
                    name: format!("{}:{}", x, tab.homs[x][y].gen_name(g)),
                });
                if x == y && tab.identities[x].gen() == g {
                    identity[x] = id;
                }
            }
        }
    }
    let mut compose = BTreeMap::new();
    for f in 0..arrows.len() {
        for g in 0..arrows.len() {
            if arrows[f].dst != arrows[g].src {
                continue;
            }
            let (x, y, z) = (arrows[f].src, arrows[f].dst, arrows[g].dst);
            let fv = Simplex::of_gen(GenId::new(0, lists[x][y].iter().position(|&a| a == f).unwrap()));
            let gv = Simplex::of_gen(GenId::new(0, lists[y][z].iter().position(|&a| a == g).unwrap()));
            let h = tab.compose(x, y, z, &gv, &fv);
            compose.insert((g, f), lists[x][z][h.gen().index]);
        }
    }
    (
        FinCategory { objects: tab.objects.clone(), arrows, identity, compose },
        lists,
    )
}

/// The simplicial functor out of the rigid n-simplex presented by a chain
/// of the underlying category of a discrete-enriched target.
pub fn functor_of_chain(
    _tab: &TabCat,
    underlying: &FinCategory,
    lists: &[Vec<Vec<ArrId>>],
    rigids: &BTreeMap<Vec<usize>, RigidCat>,
    chain: &[ArrId],
    base_vertex: ObjId,
) -> SimpFunctor {
    let n = chain.len();
    let objects = chain_objects(underlying, chain, base_vertex);
    let full: Vec<usize> = (0..=n).collect();
    let rigid = &rigids[&full];
    let mut hom_maps: Vec<Vec<SimplicialMap>> = Vec::new();
    for i in 0..=n {
        let mut row = Vec::new();
        for j in 0..=n {
            if i > j {
                row.push(SimplicialMap::new(Vec::new()));
                continue;
            }
            let arrow = chain_composite(underlying, chain, &objects, i, j);
            let pos = lists[objects[i]][objects[j]]
                .iter()
                .position(|&a| a == arrow)
                .expect("composite vertex exists");
            let vertex = Simplex::of_gen(GenId::new(0, pos));
            let hom = &rigid.tab.homs[i][j];
            let mut images: Vec<Vec<Simplex>> = Vec::new();
            for level in 0..hom.num_levels() {
                images.push(
                    (0..hom.gen_count(level))
                        .map(|_| vertex.clone().under_word(&full_word(level)))
                        .collect(),
                );
            }
            row.push(SimplicialMap::new(images));
        }
        hom_maps.push(row);
    }
    SimpFunctor { ob: objects, hom_maps }
}

/// All chains of a given length in a category, identities allowed.
pub fn all_chains(cat: &FinCategory, n: usize) -> Vec<(ObjId, Vec<ArrId>)> {
    if n == 0 {
        return (0..cat.objects.len()).map(|o| (o, Vec::new())).collect();
    }
    let mut chains: Vec<Vec<ArrId>> = (0..cat.arrows.len()).map(|f| alloc::vec![f]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for c in &chains {
            for f in cat.arrows_from(cat.dst(*c.last().unwrap())) {
                let mut c2 = c.clone();
                c2.push(f);
                next.push(c2);
            }
        }
        chains = next;
    }
    chains.into_iter().map(|c| (cat.src(c[0]), c)).collect()
}

/// A bundled test instance: a discrete-valued diagram with its fibers,
/// total category, and underlying data.
pub struct GrInstance {
    pub name: String,
    pub diagram: GrDiagram,
    pub fiber_cats: Vec<FinCategory>,
    pub fiber_lists: Vec<Vec<Vec<Vec<ArrId>>>>,
    pub total: GrothendieckTotal,
    pub underlying: FinCategory,
    pub underlying_lists: Vec<Vec<Vec<ArrId>>>,
}

pub fn make_instance(
    name: &str,
    base: FinCategory,
    values: Vec<FinCategory>,
    transitions: Vec<(Vec<ObjId>, Vec<ArrId>)>,
    limits: &Limits,
) -> Result<GrInstance> {
    let (diagram, fiber_lists) =
        GrDiagram::from_categories(base, values.clone(), transitions, limits)?;
    diagram.validate(2)?;
    let total = grothendieck_construct(&diagram, limits)?;
    let (underlying, underlying_lists) = underlying_category(&total.cat);
    underlying.validate()?;
    Ok(GrInstance {
        name: name.to_string(),
        diagram,
        fiber_cats: values,
        fiber_lists,
        total,
        underlying,
        underlying_lists,
    })
}

/// The walking arrow category `a -> b`.
pub fn walking_arrow() -> FinCategory {
    FinCategory::poset_chain(1)
}

/// The terminal category.
pub fn terminal_category() -> FinCategory {
    FinCategory::poset_chain(0)
}

/// Constant diagram at the walking arrow over the interval base.
pub fn instance_constant(limits: &Limits) -> Result<GrInstance> {
    let base = FinCategory::poset_chain(1);
    let d = walking_arrow();
    let idt = (
        (0..d.objects.len()).collect::<Vec<_>>(),
        (0..d.arrows.len()).collect::<Vec<_>>(),
    );
    let transitions = alloc::vec![idt.clone(), idt.clone(), idt];
    // arrows of poset_chain(1): id_0, id_1, 0<1 in builder order
    make_instance("constant", base, alloc::vec![d.clone(), d], transitions, limits)
}

/// The arrow example: the base is the interval, the fiber at 0 is terminal,
/// the fiber at 1 is the walking arrow, and the transition picks the source.
pub fn instance_arrow(limits: &Limits) -> Result<GrInstance> {
    let base = FinCategory::poset_chain(1);
    let term = terminal_category();
    let arrow = walking_arrow();
    // transitions for id_0, id_1, 0<1
    let t_id0 = (alloc::vec![0], alloc::vec![0]);
    let t_id1 = (
        (0..arrow.objects.len()).collect::<Vec<_>>(),
        (0..arrow.arrows.len()).collect::<Vec<_>>(),
    );
    // the unique object of the terminal category goes to a = object 0; its
    // identity to id_a
    let t_f = (alloc::vec![0], alloc::vec![arrow.identity[0]]);
    make_instance(
        "arrow",
        base,
        alloc::vec![term, arrow],
        alloc::vec![t_id0, t_id1, t_f],
        limits,
    )
}

/// A poset-valued diagram on the three-object chain base.
pub fn instance_poset(limits: &Limits) -> Result<GrInstance> {
    let base = FinCategory::poset_chain(2);
    let v0 = FinCategory::poset_chain(1);
    let v1 = FinCategory::poset_chain(1);
    let v2 = FinCategory::poset_chain(2);
    // arrows of poset_chain(n) in builder order: identities then i<j pairs
    // transitions: F(0<1) = identity on the interval; F(1<2) includes the
    // interval as 0<2 inside the chain; F(0<2) the composite
    let id_interval = (alloc::vec![0, 1], alloc::vec![0, 1, 2]);
    // v2 arrows: id_0, id_1, id_2, 0<1, 0<2, 1<2
    let arrow_0_2_in_v2 = 4usize;
    let incl_0_2 = (alloc::vec![0usize, 2], alloc::vec![0usize, 2, arrow_0_2_in_v2]);
    let transitions = alloc::vec![
        (alloc::vec![0, 1], alloc::vec![0, 1, 2]), // id_0 on v0
        (alloc::vec![0, 1], alloc::vec![0, 1, 2]), // id_1 on v1
        (alloc::vec![0, 1, 2], alloc::vec![0, 1, 2, 3, 4, 5]), // id_2 on v2
        id_interval,                               // 0<1
        incl_0_2.clone(),                          // 0<2  (composite)
        incl_0_2,                                  // 1<2
    ];
    make_instance("poset", base, alloc::vec![v0, v1, v2], transitions, limits)
}

/// Outcome of the comparison sweep at one dimension.
pub struct RoundTripOutcome {
    pub rel_nerve_count: usize,
    pub functor_count: usize,
    pub forward_injective: bool,
    pub round_trips: bool,
    pub simplicial: bool,
}

/// Runs the full comparison at dimension `n`: enumerates both sides,
/// round-trips every simplex, and checks compatibility with faces and
/// degeneracies.
pub fn round_trip_sweep(inst: &GrInstance, n: usize, check_ops: bool) -> Result<RoundTripOutcome> {
    let rigids = rigid_family(n + 1);
    let rel = enumerate_rel_nerve_discrete(
        &inst.diagram,
        &inst.fiber_cats,
        &inst.fiber_lists,
        &rigids,
        n,
    );
    for x in &rel {
        validate_rel_nerve(&inst.diagram, x, &rigids, 2)?;
    }
    let chains = all_chains(&inst.underlying, n);
    let functors: Vec<SimpFunctor> = chains
        .iter()
        .map(|(v, c)| {
            functor_of_chain(
                &inst.total.cat,
                &inst.underlying,
                &inst.underlying_lists,
                &rigids,
                c,
                *v,
            )
        })
        .collect();
    // forward images, injectivity, and the inverse round trip
    let mut images: Vec<SimpFunctor> = Vec::new();
    let mut forward_injective = true;
    let mut round_trips = true;
    for x in &rel {
        let phi = phi_forward(&inst.diagram, &inst.total, &rigids, x);
        phi.validate(&rigids[&(0..=n).collect::<Vec<_>>()].tab, &inst.total.cat, 2)?;
        if images.contains(&phi) {
            forward_injective = false;
        }
        let back = phi_inverse(&inst.diagram, &inst.total, &rigids, n, &phi);
        if back.chain != x.chain || back.phis != x.phis {
            round_trips = false;
        }
        images.push(phi);
    }
    // the functor side round trip
    for phi in &functors {
        let x = phi_inverse(&inst.diagram, &inst.total, &rigids, n, phi);
        validate_rel_nerve(&inst.diagram, &x, &rigids, 2)?;
        let again = phi_forward(&inst.diagram, &inst.total, &rigids, &x);
        if again != *phi {
            round_trips = false;
        }
    }
    // the comparison commutes with faces and degeneracies
    let mut simplicial = true;
    if check_ops && n >= 1 {
        for x in &rel {
            let phi = phi_forward(&inst.diagram, &inst.total, &rigids, x);
            for i in 0..=n {
                let lhs = phi_forward(
                    &inst.diagram,
                    &inst.total,
                    &rigids,
                    &rel_nerve_face(&inst.diagram, &rigids, x, i),
                );
                let rhs = functor_face(&rigids, &phi, n, i);
                if lhs != rhs {
                    simplicial = false;
                }
            }
        }
    }
    if check_ops {
        for x in &rel {
            let phi = phi_forward(&inst.diagram, &inst.total, &rigids, x);
            for i in 0..=n {
                let lhs = phi_forward(
                    &inst.diagram,
                    &inst.total,
                    &rigids,
                    &rel_nerve_degeneracy(&inst.diagram, &rigids, x, i),
                );
                let rhs = functor_degeneracy(&rigids, &phi, n, i);
                if lhs != rhs {
                    simplicial = false;
                }
            }
        }
    }
    Ok(RoundTripOutcome {
        rel_nerve_count: rel.len(),
        functor_count: functors.len(),
        forward_injective,
        round_trips,
        simplicial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rigid_cube_counts() {
        // hom(i,j) has 2^{max(j-i-1,0)} vertices
        let full: Vec<usize> = (0..=3).collect();
        let r = rigid_on(&full);
        for i in 0..=3usize {
            for j in i..=3usize {
                let expect = 1usize << (j.saturating_sub(i + 1));
                assert_eq!(r.tab.homs[i][j].gen_count(0), expect, "hom({i},{j})");
            }
        }
        // hom(0,3) is the square: 4 vertices, 5 edges wait, the nerve of the
        // inclusion poset of {0,3} ⊆ S ⊆ {0,1,2,3}: a 2-cube
        assert_eq!(r.tab.homs[0][3].gen_counts(), alloc::vec![4, 5, 2]);
    }

    #[test]
    fn rigid_category_laws() {
        let full: Vec<usize> = (0..=2).collect();
        let r = rigid_on(&full);
        r.tab.validate(2).unwrap();
    }

    #[test]
    fn rigid_functor_collapse() {
        let src: Vec<usize> = (0..=2).collect();
        let tgt: Vec<usize> = (0..=1).collect();
        let r2 = rigid_on(&src);
        let r1 = rigid_on(&tgt);
        // σ_0: 0,1 -> 0; 2 -> 1
        let f = rigid_functor(&r2, &r1, &|v| if v <= 1 { 0 } else { 1 });
        f.validate(&r2.tab, &r1.tab, 2).unwrap();
    }
}
