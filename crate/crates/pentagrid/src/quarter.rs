//! Quarters of the pentagrid and the one-step operations on them.
//!
//! A quarter is the intersection of two closed half-planes whose boundary
//! lines support consecutive edges of a tile, its head. The hat `a-s-b`
//! identifies the quarter: `s` is the vertex where the borders cross, `a`
//! and `b` are the head vertices adjacent to `s`, listed so that a, s, b is
//! counter-clockwise around the head. In the head's own labelling `s = E`,
//! `a = D` (side 4 runs s-a) and `b = A` (side 5 runs s-b).

use crate::geometry::{
    end_toward, GeometryError, HalfPlane, IdealPoint, MLine, MPoint, Ray, EPS_GEO,
};
use crate::pentagon::{constants, Pentagon, PentagonError};
use serde::{Deserialize, Serialize};

/// Identifying vertex triple of a quarter, counter-clockwise around the head.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hat {
    pub a: MPoint,
    pub s: MPoint,
    pub b: MPoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quarter {
    head: Pentagon,
    /// Border half-plane along the s-a edge, head on the positive side.
    border_a: HalfPlane,
    /// Border half-plane along the s-b edge, head on the positive side.
    border_b: HalfPlane,
}

impl Quarter {
    /// The quarter anchored at the origin: vertex at O, borders along the
    /// x-axis and y-axis geodesics, head = the base tile.
    pub fn base() -> Quarter {
        Quarter::from_head(Pentagon::base())
    }

    /// Quarter whose vertex is the E vertex of the given labelled head.
    pub fn from_head(head: Pentagon) -> Quarter {
        let center = head.center();
        let border_a = HalfPlane::closed(head.side_line(4).oriented_towards(&center.coords()));
        let border_b = HalfPlane::closed(head.side_line(5).oriented_towards(&center.coords()));
        Quarter { head, border_a, border_b }
    }

    /// Rebuilds the head from a hat alone; fails when the triple is not a
    /// vertex-with-adjacent-corners triple of a tile.
    pub fn from_hat(hat: &Hat) -> Result<Quarter, PentagonError> {
        let a_len = constants().side;
        let la = crate::geometry::line_through(&hat.s, &hat.a)?;
        let lb = crate::geometry::line_through(&hat.s, &hat.b)?;
        // the pole of an oriented line is the unit normal on its positive
        // side at every point of the line
        let la = la.oriented_towards(&hat.b.coords());
        let lb = lb.oriented_towards(&hat.a.coords());
        let lift = |p: &MPoint, l: &MLine| -> MPoint {
            let mut raw = [0.0; 3];
            for (i, slot) in raw.iter_mut().enumerate() {
                *slot = p.coords()[i] * a_len.cosh() + l.pole()[i] * a_len.sinh();
            }
            MPoint::new(raw).expect("lift of a vertex stays on the sheet")
        };
        let vb = lift(&hat.b, &lb);
        let vc = lift(&hat.a, &la);
        let head = Pentagon::from_vertices([hat.b, vb, vc, hat.a, hat.s])?;
        Ok(Quarter::from_head(head))
    }

    pub fn into_head(self) -> Pentagon {
        self.head
    }

    pub fn head(&self) -> &Pentagon {
        &self.head
    }

    pub fn hat(&self) -> Hat {
        Hat { a: *self.head.vertex(3), s: *self.head.vertex(4), b: *self.head.vertex(0) }
    }

    pub fn vertex(&self) -> &MPoint {
        self.head.vertex(4)
    }

    /// Border half-planes `(along s-a, along s-b)`, each containing the quarter.
    pub fn half_planes(&self) -> (HalfPlane, HalfPlane) {
        (self.border_a, self.border_b)
    }

    /// Border rays issued from the vertex through `a` and through `b`.
    pub fn border_rays(&self) -> Result<(Ray, Ray), GeometryError> {
        let hat = self.hat();
        let (ea, eb) = self.ideal_corners()?;
        Ok((Ray { origin: hat.s, direction: ea }, Ray { origin: hat.s, direction: eb }))
    }

    /// Ends of the two border rays, `(towards a, towards b)`.
    pub fn ideal_corners(&self) -> Result<(IdealPoint, IdealPoint), GeometryError> {
        let hat = self.hat();
        Ok((end_toward(&hat.s, &hat.a)?, end_toward(&hat.s, &hat.b)?))
    }

    pub fn contains(&self, p: &MPoint, eps: f64) -> bool {
        self.border_a.boundary.side(&p.coords()) >= -eps
            && self.border_b.boundary.side(&p.coords()) >= -eps
    }

    pub fn approx_eq(&self, other: &Quarter, tol: f64) -> bool {
        let h1 = self.hat();
        let h2 = other.hat();
        h1.s.approx_eq(&h2.s, tol) && h1.a.approx_eq(&h2.a, tol) && h1.b.approx_eq(&h2.b, tol)
    }

    /// Non-strict one-step parent reflecting the head across the s-a edge.
    /// The vertex slides one side length along the s-b border line, so a run
    /// of these marches straight along that line.
    pub fn nonstrict_parent_a(&self) -> Quarter {
        Quarter::from_head(self.head.reflect_relabel(4, 4))
    }

    /// Non-strict one-step parent reflecting the head across the s-b edge.
    /// The vertex moves onto the continuation of the s-a border line; a run
    /// of these marches straight along that line.
    pub fn nonstrict_parent_b(&self) -> Quarter {
        Quarter::from_head(self.head.reflect_relabel(5, 2))
    }

    /// Strict one-step parent across the s-a edge: the new vertex is the
    /// mirror image of the head corner opposite that edge, so the whole old
    /// quarter lands strictly inside.
    pub fn strict_parent_a(&self) -> Quarter {
        Quarter::from_head(self.head.reflect_relabel(4, 0))
    }

    /// Strict one-step parent across the s-b edge.
    pub fn strict_parent_b(&self) -> Quarter {
        Quarter::from_head(self.head.reflect_relabel(5, 1))
    }

    /// The region quarter sitting over side 3 of this quarter's head; shares
    /// the s-a border line. First of the two region children.
    pub fn region_child_low(&self) -> Quarter {
        Quarter::from_head(self.head.region_head_over_side3())
    }

    /// The region quarter over side 2 of the head, strictly inside. Second
    /// region child.
    pub fn region_child_high(&self) -> Quarter {
        Quarter::from_head(self.head.region_head_over_side2())
    }

    /// The sub-quarter whose head is the next cornucopia tile; shares the
    /// s-b border line.
    pub fn cornucopia_child(&self) -> Quarter {
        Quarter::from_head(self.head.cornucopia_next())
    }
}

/// Signed distances from a point to both borders, for diagnostics.
pub fn border_signs(q: &Quarter, p: &MPoint) -> (f64, f64) {
    let (ha, hb) = q.half_planes();
    (ha.boundary.side(&p.coords()), hb.boundary.side(&p.coords()))
}

/// Convenience check used throughout the tests: the borders are
/// perpendicular at the vertex.
pub fn borders_perpendicular(q: &Quarter) -> bool {
    let (ha, hb) = q.half_planes();
    crate::geometry::mdot(&ha.boundary.pole(), &hb.boundary.pole()).abs() < EPS_GEO
}
