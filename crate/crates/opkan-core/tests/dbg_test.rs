use opkan_core::groth::*;
use opkan_core::Limits;

#[test]
fn dbg_functor_side() {
    let limits = Limits::default();
    let inst = instance_arrow(&limits).unwrap();
    let n = 1;
    let rigids = rigid_family(n + 1);
    let chains = all_chains(&inst.underlying, n);
    println!("chains: {:?}", chains);
    println!("underlying arrows: {:?}", inst.underlying.arrows.iter().map(|a| (&a.name, a.src, a.dst)).collect::<Vec<_>>());
    println!("diagram_objects: {:?}", inst.total.diagram_objects);
    for (v, c) in &chains {
        println!("chain {:?} from {v}", c);
        let phi = functor_of_chain(&inst.total.cat, &inst.underlying, &inst.underlying_lists, &rigids, c, *v);
        println!("  phi ob {:?}", phi.ob);
        let x = phi_inverse(&inst.diagram, &inst.total, &rigids, n, &phi);
        println!("  back chain {:?}", x.chain);
        for (s, p) in &x.phis { println!("    phi_{s:?} ob {:?}", p.ob); }
        validate_rel_nerve(&inst.diagram, &x, &rigids, 2).unwrap();
        let again = phi_forward(&inst.diagram, &inst.total, &rigids, &x);
        println!("  again ob {:?}", again.ob);
        assert!(again == phi, "round trip failed for {:?}", c);
    }
}
