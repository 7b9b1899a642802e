use pentagrid::geometry::{dist, mdot, line_through};
use pentagrid::pentagon::{constants, Pentagon};
fn defect_parts(p: &Pentagon) -> (f64, f64) {
    let a = constants().side;
    let mut len_d: f64 = 0.0;
    let mut ang_d: f64 = 0.0;
    for i in 0..5 {
        let v0 = p.vertex(i);
        let v1 = p.vertex((i + 1) % 5);
        len_d = len_d.max((dist(v0, v1) - a).abs());
        let l0 = p.side_line(i + 1);
        let l1 = p.side_line((i % 5) + 1);
        let _ = (l0, l1);
    }
    for i in 0..5 {
        let c = mdot(&p.side_line(i + 1).pole(), &p.side_line((i + 1) % 5 + 1).pole());
        ang_d = ang_d.max(c.abs());
    }
    (len_d, ang_d)
}
fn main() {
    let mut p = Pentagon::base();
    for step in 0..6 {
        let (l, a) = defect_parts(&p);
        let x0max = p.vertices().iter().map(|v| v.coords()[0]).fold(0.0f64, f64::max);
        // recompute side lines fresh from vertices, compare angle defect
        let mut fresh_ang: f64 = 0.0;
        for i in 0..5 {
            let li = line_through(p.vertex(i), p.vertex((i + 1) % 5)).unwrap();
            let lj = line_through(p.vertex((i + 1) % 5), p.vertex((i + 2) % 5)).unwrap();
            fresh_ang = fresh_ang.max(mdot(&li.pole(), &lj.pole()).abs());
        }
        println!("step {step}: len_defect {l:.3e} angle_defect {a:.3e} fresh_angle {fresh_ang:.3e} x0max {x0max:.2}");
        p = p.region_head_over_side2();
    }
}
