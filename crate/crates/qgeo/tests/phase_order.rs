//! Deviation between the autoparallel and Hamiltonian integrators scales
//! at the common RK4 order under step halving (checked on a quartic
//! Hamiltonian, where the two flows genuinely differ at finite dt).

use qgeo::ncalg::NumericBindings;
use qgeo::phase::{geodesic_integrate, hamilton_integrate, max_deviation, PhaseSpec, Poly};
use qgeo::scalar::Coefficient;

#[test]
fn integrator_deviation_is_fourth_order() {
    let vars = 2;
    let x = Poly::var(vars, 0);
    let p = Poly::var(vars, 1);
    let h = (&p * &p).scale(&Coefficient::from_ratio(1, 2))
        + x.pow(4).scale(&Coefficient::from_ratio(1, 4));
    let spec = PhaseSpec::canonical(1, h);
    let bind = NumericBindings::default();
    let x0 = [1.0, 0.3];
    let dev = |dt: f64| {
        let geo = geodesic_integrate(&spec, &bind, &x0, 4.0, dt).unwrap();
        let ham = hamilton_integrate(&spec, &bind, &x0, 4.0, dt).unwrap();
        max_deviation(&geo, &ham)
    };
    let d1 = dev(4e-2);
    let d2 = dev(2e-2);
    let d3 = dev(1e-2);
    let o1 = (d1 / d2).log2();
    let o2 = (d2 / d3).log2();
    assert!(o1 >= 3.5 && o2 >= 3.5, "orders {} {} ({:e} {:e} {:e})", o1, o2, d1, d2, d3);
}
