//! Comparison sweeps for the total-category nerve: both directions of the
//! simplex-level identification, checked exhaustively at low dimension on
//! three diagram instances.

use opkan_core::groth::*;
use opkan_core::simplicial::{GenId, Simplex};
use opkan_core::Limits;

fn instances() -> Vec<GrInstance> {
    let limits = Limits::default();
    vec![
        instance_constant(&limits).unwrap(),
        instance_arrow(&limits).unwrap(),
        instance_poset(&limits).unwrap(),
    ]
}

#[test]
fn arrow_instance_shape() {
    let limits = Limits::default();
    let inst = instance_arrow(&limits).unwrap();
    // three objects and three non-identity arrows
    assert_eq!(inst.total.cat.objects.len(), 3);
    let non_id = (0..inst.underlying.arrows.len())
        .filter(|&f| !inst.underlying.is_identity(f))
        .count();
    assert_eq!(non_id, 3);
    // nerve of the total: 1 nondegenerate 2-simplex, counted by chain
    // enumeration
    let chains2: Vec<_> = all_chains(&inst.underlying, 2)
        .into_iter()
        .filter(|(_, c)| c.iter().all(|&f| !inst.underlying.is_identity(f)))
        .collect();
    assert_eq!(chains2.len(), 1);
}

#[test]
fn constant_at_terminal_recovers_base() {
    let limits = Limits::default();
    let base = opkan_core::nerve::FinCategory::poset_chain(1);
    let term = terminal_category();
    let idt = (vec![0], vec![0]);
    let inst = make_instance(
        "constant-terminal",
        base.clone(),
        vec![term.clone(), term],
        vec![idt.clone(), idt.clone(), idt],
        &limits,
    )
    .unwrap();
    assert_eq!(inst.total.cat.objects.len(), base.objects.len());
    assert_eq!(inst.underlying.arrows.len(), base.arrows.len());
}

#[test]
fn constant_diagram_is_a_product() {
    let limits = Limits::default();
    let inst = instance_constant(&limits).unwrap();
    let d = walking_arrow();
    let base = opkan_core::nerve::FinCategory::poset_chain(1);
    assert_eq!(inst.total.cat.objects.len(), base.objects.len() * d.objects.len());
    // homs: |C(c,c')| × |D(x,x')| on every pair
    for i in 0..inst.total.cat.objects.len() {
        for j in 0..inst.total.cat.objects.len() {
            let (c, x) = inst.total.diagram_objects[i];
            let (c2, y) = inst.total.diagram_objects[j];
            let expect =
                base.arrows_between(c, c2).count() * d.arrows_between(x, y).count();
            assert_eq!(inst.total.cat.homs[i][j].gen_count(0), expect);
        }
    }
}

#[test]
fn totals_validate_as_simplicial_categories() {
    for inst in instances() {
        inst.total.cat.validate(2).unwrap();
    }
}

#[test]
fn relative_nerve_dimension_zero() {
    let limits = Limits::default();
    let inst = instance_arrow(&limits).unwrap();
    let rigids = rigid_family(1);
    let rel = enumerate_rel_nerve_discrete(
        &inst.diagram,
        &inst.fiber_cats,
        &inst.fiber_lists,
        &rigids,
        0,
    );
    // pairs (object of the base, vertex of the fiber): 1 + 2
    assert_eq!(rel.len(), 3);
}

#[test]
fn both_sides_counts_agree_at_dimension_one() {
    let limits = Limits::default();
    let inst = instance_arrow(&limits).unwrap();
    let outcome = round_trip_sweep(&inst, 1, true).unwrap();
    assert_eq!(outcome.rel_nerve_count, outcome.functor_count);
    assert!(outcome.forward_injective);
    assert!(outcome.round_trips);
    assert!(outcome.simplicial);
}

#[test]
fn round_trip_up_to_dimension_three() {
    for inst in instances() {
        for n in 0..=3usize {
            let check_ops = n < 3;
            let outcome = round_trip_sweep(&inst, n, check_ops).unwrap();
            assert_eq!(
                outcome.rel_nerve_count, outcome.functor_count,
                "{} at n={n}",
                inst.name
            );
            assert!(outcome.forward_injective, "{} at n={n}", inst.name);
            assert!(outcome.round_trips, "{} at n={n}", inst.name);
            assert!(outcome.simplicial, "{} at n={n}", inst.name);
        }
    }
}

#[test]
fn projection_of_forward_image_is_the_chain() {
    let limits = Limits::default();
    let inst = instance_arrow(&limits).unwrap();
    let rigids = rigid_family(2);
    let rel = enumerate_rel_nerve_discrete(
        &inst.diagram,
        &inst.fiber_cats,
        &inst.fiber_lists,
        &rigids,
        1,
    );
    for x in &rel {
        let phi = phi_forward(&inst.diagram, &inst.total, &rigids, x);
        for (i, &ob) in phi.ob.iter().enumerate() {
            let (c, _) = inst.total.diagram_objects[ob];
            let objects = if x.chain.is_empty() {
                vec![c]
            } else {
                let mut v = vec![inst.diagram.base.src(x.chain[0])];
                for &f in &x.chain {
                    v.push(inst.diagram.base.dst(f));
                }
                v
            };
            assert_eq!(c, objects[i]);
        }
    }
}

#[test]
fn cocartesian_edges_match_oracle() {
    let limits = Limits::default();
    let _ = limits;
    for inst in instances() {
        for x in 0..inst.total.cat.objects.len() {
            for y in 0..inst.total.cat.objects.len() {
                for gi in 0..inst.total.cat.homs[x][y].gen_count(0) {
                    let edge = Simplex::of_gen(GenId::new(0, gi));
                    let fast = is_cocartesian_gr(
                        &inst.diagram,
                        &inst.fiber_cats,
                        &inst.fiber_lists,
                        &inst.total,
                        x,
                        y,
                        &edge,
                    )
                    .unwrap();
                    let slow = cocartesian_gr_oracle(&inst.diagram, &inst.total, x, y, &edge);
                    assert_eq!(fast, slow, "{} edge {x}->{y}:{gi}", inst.name);
                }
            }
        }
    }
}

#[test]
fn cocartesian_lift_exists_over_every_arrow_and_object() {
    for inst in instances() {
        let base = &inst.diagram.base;
        for f in 0..base.arrows.len() {
            let c = base.src(f);
            for xf in 0..inst.fiber_cats[c].objects.len() {
                let xt = inst.total.object_of(c, xf);
                let mut found = false;
                for y in 0..inst.total.cat.objects.len() {
                    for gi in 0..inst.total.cat.homs[xt][y].gen_count(0) {
                        let edge = Simplex::of_gen(GenId::new(0, gi));
                        let (pf, _) = inst.total.prov_of(xt, y, &edge);
                        if pf != f {
                            continue;
                        }
                        if is_cocartesian_gr(
                            &inst.diagram,
                            &inst.fiber_cats,
                            &inst.fiber_lists,
                            &inst.total,
                            xt,
                            y,
                            &edge,
                        )
                        .unwrap()
                        {
                            found = true;
                        }
                    }
                }
                assert!(found, "{}: no cocartesian lift of {f} at {xf}", inst.name);
            }
        }
    }
}

#[test]
fn induced_functors_match_transitions() {
    for inst in instances() {
        let base = &inst.diagram.base;
        for f in 0..base.arrows.len() {
            assert!(
                induced_functor_check(
                    &inst.diagram,
                    &inst.fiber_cats,
                    &inst.fiber_lists,
                    &inst.total,
                    f
                )
                .unwrap(),
                "{} arrow {f}",
                inst.name
            );
        }
    }
}

/// Naturality of the comparison in the diagram: a nonidentity pointwise map
/// between constant diagrams induces a commuting square of simplex maps.
#[test]
fn comparison_is_natural() {
    let limits = Limits::default();
    let base = opkan_core::nerve::FinCategory::poset_chain(1);
    let arrow = walking_arrow();
    let term = terminal_category();
    let idt_arrow = (
        (0..arrow.objects.len()).collect::<Vec<_>>(),
        (0..arrow.arrows.len()).collect::<Vec<_>>(),
    );
    let idt_term = (vec![0], vec![0]);
    let f_inst = make_instance(
        "nat-src",
        base.clone(),
        vec![arrow.clone(), arrow.clone()],
        vec![idt_arrow.clone(), idt_arrow.clone(), idt_arrow],
        &limits,
    )
    .unwrap();
    let g_inst = make_instance(
        "nat-dst",
        base,
        vec![term.clone(), term.clone()],
        vec![idt_term.clone(), idt_term.clone(), idt_term],
        &limits,
    )
    .unwrap();
    // η: walking arrow -> terminal, collapsing everything
    let eta_component = {
        let (tab_src, _) = TabCat::from_category(&arrow, &limits).unwrap();
        let (tab_dst, _) = TabCat::from_category(&term, &limits).unwrap();
        let ob = vec![0usize, 0];
        let mut hom_maps = Vec::new();
        for x in 0..2usize {
            let mut row = Vec::new();
            for y in 0..2usize {
                let images: Vec<Simplex> = (0..tab_src.homs[x][y].gen_count(0))
                    .map(|_| Simplex::of_gen(GenId::new(0, 0)))
                    .collect();
                row.push(opkan_core::simplicial::SimplicialMap::new(vec![images]));
            }
            hom_maps.push(row);
        }
        let f = SimpFunctor { ob, hom_maps };
        f.validate(&tab_src, &tab_dst, 1).unwrap();
        f
    };
    let eta = vec![eta_component.clone(), eta_component];
    let n = 2usize;
    let rigids = rigid_family(n);
    let rel = enumerate_rel_nerve_discrete(
        &f_inst.diagram,
        &f_inst.fiber_cats,
        &f_inst.fiber_lists,
        &rigids,
        n,
    );
    let gr_map = gr_map_of_diagrams(&f_inst.diagram, &f_inst.total, &g_inst.total, &eta);
    for x in &rel {
        let objects = {
            let mut v = vec![f_inst.diagram.base.src(x.chain[0])];
            for &f in &x.chain {
                v.push(f_inst.diagram.base.dst(f));
            }
            v
        };
        let top = phi_forward(&f_inst.diagram, &f_inst.total, &rigids, x);
        let then_map = compose_functors(&top, &gr_map);
        let mapped = rel_nerve_map_of_diagrams(x, &eta, &objects);
        let other = phi_forward(&g_inst.diagram, &g_inst.total, &rigids, &mapped);
        assert!(then_map == other, "naturality square fails");
    }
}
