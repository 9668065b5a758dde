use voxbot_core::*;
fn main() {
    let sp = SimParams::default();
    let mp = MaterialParams::default();
    let mut state = build_lattice(&DesignGenome::parse("10000000").unwrap(), &sp, &mp);
    let penetration = 1e-7;
    state.nodes[0].position.z = state.node_edge() * 0.5 - penetration;
    let normal = 1e5_f64 * penetration;
    let load = Vec3::new(1.5 * mp.static_friction * normal, 0.0, 0.0);
    let forces = physics::ground_contact(&state, &mp, &[load]);
    println!("force = {:?}", forces[0]);
    println!("expected x = {}", -mp.kinetic_friction * normal);
    println!("contact_k path: edge {}", state.node_edge());
}
