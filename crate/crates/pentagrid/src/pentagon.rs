//! The right-angled regular pentagon of the {5,4} tessellation.
//!
//! Vertices are stored counter-clockwise and numbered 0..5 in the roles
//! A, B, C, D, E: vertex A joins sides 5 and 1, vertex E joins sides 4 and 5.
//! Side `i` (1-based) runs from vertex `i-1` to vertex `i mod 5`, so side 1
//! is A-B and side 5 is E-A. Every side line is oriented with the pentagon
//! on its positive side. Sides 1 and 4 are opposite, and the side-5 line is
//! their common perpendicular.
//!
//! Internally every tile is an isometry image of one fixed base tile, and
//! all neighbour operations compose a fixed near-origin step matrix onto
//! that frame. Reflecting far-away vertices in far-away lines would lose a
//! couple of digits per generation to cancellation; composing small right
//! factors keeps the drift near machine precision at any depth.

use crate::geometry::{
    dist, frame_at, mdot, point_on_line_at, reflect_in, GeometryError, Isometry, MLine, MPoint,
    EPS_GEO,
};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PentagonError {
    #[error("vertices do not close up into a right-angled pentagon: {0}")]
    NotRegular(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Metric constants of the tessellation, all derived from the golden ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentagridConstants {
    /// Side length `a = arccosh(phi)`.
    pub side: f64,
    /// Distance from the center to the midpoint of a side.
    pub in_radius: f64,
    /// Distance from the center to a vertex.
    pub circumradius: f64,
    /// Distance from a vertex to the midpoint of the opposite side;
    /// satisfies `a < b < 2.5 a`.
    pub diameter_b: f64,
}

/// Golden ratio `(1 + sqrt 5)/2 = cosh(side)`.
pub fn golden_ratio() -> f64 {
    (1.0 + 5.0_f64.sqrt()) / 2.0
}

pub fn constants() -> PentagridConstants {
    let fifth = std::f64::consts::PI / 5.0;
    let quarter = std::f64::consts::FRAC_PI_4;
    let side = golden_ratio().acosh();
    let in_radius = (quarter.cos() / fifth.sin()).acosh();
    let circumradius = (1.0 / fifth.tan()).acosh();
    PentagridConstants { side, in_radius, circumradius, diameter_b: circumradius + in_radius }
}

struct BaseData {
    vertices: [MPoint; 5],
    sides: [MLine; 5],
    center: MPoint,
    /// `steps[i-1][o]` = reflection in base side `i` composed with the base
    /// symmetry sending vertex `k` to vertex `(o - k) mod 5`; right-composing
    /// it onto a frame realizes "reflect the tile in its side `i` and
    /// relabel with offset `o`".
    steps: [[Isometry; 5]; 5],
}

fn base_data() -> &'static BaseData {
    static BASE: OnceLock<BaseData> = OnceLock::new();
    BASE.get_or_init(|| {
        let a = constants().side;
        let (ch, sh) = (a.cosh(), a.sinh());
        let vertices = [
            MPoint([ch, sh, 0.0]),
            MPoint([ch * ch, sh * ch, sh]),
            MPoint([ch * ch, sh, sh * ch]),
            MPoint([ch, 0.0, sh]),
            MPoint([1.0, 0.0, 0.0]),
        ];
        let mut sides = [MLine([0.0, 0.0, 1.0]); 5];
        for i in 0..5 {
            sides[i] = crate::geometry::line_through(&vertices[i], &vertices[(i + 1) % 5])
                .expect("base tile sides");
        }
        let mut sum = [0.0; 3];
        for v in &vertices {
            for (acc, c) in sum.iter_mut().zip(v.coords()) {
                *acc += c;
            }
        }
        let center = MPoint::new(sum).expect("base tile center");
        let id = Isometry::identity();
        let mut steps = [[id; 5]; 5];
        for (i, row) in steps.iter_mut().enumerate() {
            let rho = reflect_in(&sides[i]);
            for (o, slot) in row.iter_mut().enumerate() {
                // axis through the vertex fixed by k -> (o - k) mod 5
                let fixed = (3 * o) % 5;
                let axis = crate::geometry::line_through(&vertices[fixed], &center)
                    .expect("dihedral axis");
                let sigma = reflect_in(&axis);
                *slot = rho.compose(&sigma);
            }
        }
        BaseData { vertices, sides, center, steps }
    })
}

/// A labelled tile of the tessellation, carried as an isometry of the base tile.
#[derive(Debug, Clone, PartialEq)]
pub struct Pentagon {
    frame: Isometry,
    vertices: [MPoint; 5],
    sides: [MLine; 5],
}

impl Pentagon {
    fn from_frame(frame: Isometry) -> Pentagon {
        let base = base_data();
        let mut vertices = [MPoint([1.0, 0.0, 0.0]); 5];
        for (slot, v) in vertices.iter_mut().zip(&base.vertices) {
            *slot = frame.apply_point(v);
        }
        let mut sides = [MLine([0.0, 0.0, 1.0]); 5];
        for (slot, l) in sides.iter_mut().zip(&base.sides) {
            *slot = frame.apply_line(l);
        }
        Pentagon { frame, vertices, sides }
    }

    /// Builds the tile whose E vertex is `anchor` and whose A vertex is
    /// `toward_a`, then checks the remaining vertices against `expect`.
    pub fn from_vertices(expect: [MPoint; 5]) -> Result<Self, PentagonError> {
        let g_target = frame_at(&expect[4], &expect[0])?;
        let base = base_data();
        let g_base = frame_at(&base.vertices[4], &base.vertices[0])?;
        let p = Pentagon::from_frame(g_target.compose(&g_base.inverse()));
        for (i, want) in expect.iter().enumerate() {
            if !p.vertices[i].approx_eq(want, 1e-7) {
                return Err(PentagonError::NotRegular(format!(
                    "vertex {i} does not sit where a tile corner can be"
                )));
            }
        }
        Ok(p)
    }

    /// The tile with its E vertex at the hyperboloid origin, side 5 on the
    /// x-axis geodesic and side 4 on the y-axis geodesic. This is the head of
    /// the base quarter.
    pub fn base() -> Pentagon {
        Pentagon::from_frame(Isometry::identity())
    }

    /// The isometry carrying the base tile onto this one, labels included.
    pub fn frame(&self) -> &Isometry {
        &self.frame
    }

    pub fn vertices(&self) -> &[MPoint; 5] {
        &self.vertices
    }

    /// Vertex in position `i` of the counter-clockwise labelling (0 = A, 4 = E).
    pub fn vertex(&self, i: usize) -> &MPoint {
        &self.vertices[i]
    }

    /// Supporting line of side `i` (1-based), pentagon on the positive side.
    pub fn side_line(&self, i: usize) -> &MLine {
        debug_assert!((1..=5).contains(&i));
        &self.sides[i - 1]
    }

    /// Both endpoints of side `i` (1-based).
    pub fn side_endpoints(&self, i: usize) -> (&MPoint, &MPoint) {
        debug_assert!((1..=5).contains(&i));
        (&self.vertices[i - 1], &self.vertices[i % 5])
    }

    /// Center of the tile.
    pub fn center(&self) -> MPoint {
        self.frame.apply_point(&base_data().center)
    }

    /// Closed membership test against all five side half-planes.
    pub fn contains(&self, p: &MPoint, eps: f64) -> bool {
        self.sides.iter().all(|l| l.side(&p.coords()) >= -eps)
    }

    /// Strict membership with margin.
    pub fn contains_strictly(&self, p: &MPoint, margin: f64) -> bool {
        self.sides.iter().all(|l| l.side(&p.coords()) > margin)
    }

    pub fn validate(&self) -> Result<(), PentagonError> {
        if self.regularity_defect() > 1e-7 {
            return Err(PentagonError::NotRegular("defect above 1e-7".into()));
        }
        if !self.contains_strictly(&self.center(), EPS_GEO) {
            return Err(PentagonError::NotRegular("center outside, winding reversed".into()));
        }
        Ok(())
    }

    /// Worst deviation from the right-angle and side-length contracts;
    /// used by the acceptance checks.
    pub fn regularity_defect(&self) -> f64 {
        let a = constants().side;
        let mut worst: f64 = 0.0;
        for i in 0..5 {
            let len = dist(&self.vertices[i], &self.vertices[(i + 1) % 5]);
            worst = worst.max((len - a).abs());
            let cosangle = mdot(&self.sides[i].pole(), &self.sides[(i + 1) % 5].pole());
            worst = worst.max(cosangle.abs());
        }
        worst
    }

    /// Reflects the tile in the line of side `mirror_side` and relabels the
    /// image so that `new[i] = reflected(old[(offset - i) mod 5])`. All
    /// neighbour relations of the tessellation are instances of this; it
    /// costs one composition with a fixed near-origin matrix.
    pub(crate) fn reflect_relabel(&self, mirror_side: usize, offset: usize) -> Pentagon {
        let step = &base_data().steps[mirror_side - 1][offset];
        Pentagon::from_frame(self.frame.compose(step))
    }

    /// Applies an isometry to every vertex, keeping labels.
    pub fn mapped(&self, iso: &Isometry) -> Pentagon {
        Pentagon::from_frame(iso.compose(&self.frame))
    }

    /// Next tile of a cornucopia: the neighbour across side 1, relabelled so
    /// the shared line carries its side 4 and side 5 stays on the same
    /// border line.
    pub fn cornucopia_next(&self) -> Pentagon {
        self.reflect_relabel(1, 4)
    }

    /// Head of the region sitting over side 3: the neighbour across side 3,
    /// with its side 5 on the old side-3 line and side 4 still on the old
    /// side-4 line. Equals the shift of the tile along its side-4 line.
    pub fn region_head_over_side3(&self) -> Pentagon {
        self.reflect_relabel(3, 2)
    }

    /// Head of the region sitting over side 2: the neighbour across side 2,
    /// with its side 5 on the old side-2 line, side 4 on the old side-3 line
    /// and side 1 on the old side-1 line. Equals the shift of the tile along
    /// its side-1 line.
    pub fn region_head_over_side2(&self) -> Pentagon {
        self.reflect_relabel(2, 1)
    }

    /// Shift image of the tile along the line of side `i` by one side length,
    /// in the direction from vertex `i-1` to vertex `i mod 5` (the side's own
    /// orientation) when `forward`, else the opposite. Labels are preserved.
    pub fn shifted_along_side(&self, i: usize, forward: bool) -> Pentagon {
        let a = constants().side;
        let t = if forward { a } else { -a };
        let tau = crate::geometry::translate_along(self.side_line(i), t);
        self.mapped(&tau)
    }

    /// True when the two tiles cover the same region, regardless of labels.
    pub fn same_tile(&self, other: &Pentagon, tol: f64) -> bool {
        self.center().approx_eq(&other.center(), tol)
    }

    /// Returns the 1-based side index of `self` and of `other` supporting a
    /// common edge, when the tiles are distinct edge-neighbours.
    pub fn shared_side_with(&self, other: &Pentagon, tol: f64) -> Option<(usize, usize)> {
        if self.same_tile(other, tol) {
            return None;
        }
        for i in 1..=5 {
            let (p1, q1) = self.side_endpoints(i);
            for j in 1..=5 {
                let (p2, q2) = other.side_endpoints(j);
                let direct = p1.approx_eq(p2, tol) && q1.approx_eq(q2, tol);
                let swapped = p1.approx_eq(q2, tol) && q1.approx_eq(p2, tol);
                if direct || swapped {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Midpoint of side `i` of a tile.
pub fn side_midpoint(p: &Pentagon, i: usize) -> MPoint {
    let (u, v) = p.side_endpoints(i);
    crate::geometry::midpoint(u, v)
}

/// A point of the side-`i` line at signed arc length `s` from vertex `i-1`.
pub fn point_on_side_line(p: &Pentagon, i: usize, s: f64) -> MPoint {
    point_on_line_at(p.side_line(i), p.vertex(i - 1), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{line_relation, LineRelation};

    fn close(a: f64, b: f64, eps: f64) {
        assert!((a - b).abs() < eps, "{a} vs {b}");
    }

    #[test]
    fn constants_derive_from_golden_ratio() {
        let c = constants();
        close(c.side.cosh(), golden_ratio(), 1e-12);
        close(c.side, 1.0612751, 1e-6);
        assert!(c.side < c.diameter_b && c.diameter_b < 2.5 * c.side);
        close(c.in_radius, 0.626870, 1e-5);
        close(c.circumradius, 0.842481, 1e-5);
        close(c.diameter_b, 1.469351, 1e-5);
    }

    #[test]
    fn base_tile_is_right_angled_with_unit_sides() {
        let p = Pentagon::base();
        p.validate().unwrap();
        assert!(p.regularity_defect() < 1e-12);
        // E at the origin, side 5 on the x-axis, side 4 on the y-axis
        assert!(p.vertex(4).approx_eq(&MPoint::origin(), 1e-14));
        assert!(p.side_line(5).pole()[0].abs() < 1e-12);
        assert!(p.side_line(5).pole()[1].abs() < 1e-12);
        assert!(p.side_line(4).pole()[0].abs() < 1e-12);
        assert!(p.side_line(4).pole()[2].abs() < 1e-12);
    }

    #[test]
    fn deep_reflection_chains_stay_regular() {
        let mut p = Pentagon::base();
        for _ in 0..40 {
            p = p.region_head_over_side2();
        }
        assert!(
            p.regularity_defect() < 1e-9,
            "defect {} after 40 steps",
            p.regularity_defect()
        );
    }

    #[test]
    fn diameter_matches_vertex_to_opposite_midpoint() {
        let p = Pentagon::base();
        let m5 = side_midpoint(&p, 5);
        let b = dist(p.vertex(2), &m5);
        close(b, constants().diameter_b, 1e-9);
    }

    #[test]
    fn opposite_sides_are_ultraparallel_at_gap_side() {
        let p = Pentagon::base();
        match line_relation(p.side_line(1), p.side_line(4)).unwrap() {
            LineRelation::Ultraparallel(g) => close(g, constants().side, 1e-12),
            rel => panic!("expected ultraparallel, got {rel:?}"),
        }
        // and side 5 is their common perpendicular
        let perp = crate::geometry::common_perpendicular(p.side_line(1), p.side_line(4)).unwrap();
        assert!(perp.projectively_eq(p.side_line(5), 1e-9));
    }

    #[test]
    fn relabelled_reflections_agree_with_shifts() {
        let p = Pentagon::base();
        // region head over side 3 = shift along side 4 mapping E to D,
        // i.e. against the D->E orientation of the side-4 line
        let over3 = p.region_head_over_side3();
        let shifted = p.shifted_along_side(4, false);
        for i in 0..5 {
            assert!(over3.vertex(i).approx_eq(shifted.vertex(i), 1e-9));
        }
        // region head over side 2 = shift along side 1 mapping A to B
        let over2 = p.region_head_over_side2();
        let shifted = p.shifted_along_side(1, true);
        for i in 0..5 {
            assert!(over2.vertex(i).approx_eq(shifted.vertex(i), 1e-9));
        }
        // next cornucopia tile = shift along side 5 mapping E to A
        let next = p.cornucopia_next();
        let shifted = p.shifted_along_side(5, true);
        for i in 0..5 {
            assert!(next.vertex(i).approx_eq(shifted.vertex(i), 1e-9));
        }
    }

    #[test]
    fn from_vertices_roundtrip_and_rejects_junk() {
        let p = Pentagon::base().region_head_over_side2().cornucopia_next();
        let rebuilt = Pentagon::from_vertices(*p.vertices()).unwrap();
        for i in 0..5 {
            assert!(rebuilt.vertex(i).approx_eq(p.vertex(i), 1e-9));
        }
        let mut bad = *p.vertices();
        bad.swap(1, 2);
        assert!(Pentagon::from_vertices(bad).is_err());
    }

    #[test]
    fn shared_side_detection() {
        let p = Pentagon::base();
        let next = p.cornucopia_next();
        assert_eq!(p.shared_side_with(&next, 1e-7), Some((1, 4)));
        assert_eq!(p.shared_side_with(&p.clone(), 1e-7), None);
        let over2 = p.region_head_over_side2();
        assert_eq!(p.shared_side_with(&over2, 1e-7), Some((2, 5)));
        let over3 = p.region_head_over_side3();
        assert_eq!(p.shared_side_with(&over3, 1e-7), Some((3, 5)));
    }
}
