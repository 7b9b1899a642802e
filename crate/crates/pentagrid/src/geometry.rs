//! Hyperboloid-model arithmetic for the hyperbolic plane.
//!
//! Points live on the upper sheet of `<x,x> = -1` in Minkowski 3-space with
//! the bilinear form `<u,v> = -u0*v0 + u1*v1 + u2*v2`. Geodesics are encoded
//! by their spacelike pole vector (`<l,l> = +1`); the sign of `<x,l>` decides
//! on which side of the line a point lies. All isometries are linear maps
//! preserving the form, so deep compositions stay numerically tame as long as
//! results are renormalized, which every constructor here does.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Unit-norm tolerance enforced right after construction.
pub const EPS_NORM: f64 = 1e-12;
/// Tolerance for geometric predicates: incidence, perpendicularity, classification.
pub const EPS_GEO: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("degenerate input: the two points coincide projectively")]
    DegenerateInput,
    #[error("the two lines are projectively equal")]
    SameLine,
    #[error("lines are not ultraparallel, no common perpendicular exists")]
    NotUltraparallel,
    #[error("distance must be nonnegative")]
    NegativeDistance,
    #[error("coordinates do not describe an ordinary point of the plane")]
    NotAPoint,
}

/// Minkowski bilinear form `-u0*v0 + u1*v1 + u2*v2`.
#[inline]
pub fn mdot(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Euclidean cross product with the 0-component flipped, so that
/// `mdot(mcross(u, v), u) = mdot(mcross(u, v), v) = 0`.
#[inline]
fn mcross(u: &[f64; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        -(u[1] * v[2] - u[2] * v[1]),
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

#[inline]
fn add(u: &[f64; 3], v: &[f64; 3]) -> [f64; 3] {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

#[inline]
fn scale(u: &[f64; 3], c: f64) -> [f64; 3] {
    [u[0] * c, u[1] * c, u[2] * c]
}

/// An ordinary point: `<x,x> = -1`, `x0 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MPoint(pub [f64; 3]);

/// An oriented geodesic, stored as its spacelike pole (`<l,l> = +1`).
/// The positive half-plane is `{x : <x,l> >= 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MLine(pub [f64; 3]);

/// An end of the plane: a null vector normalized so `u0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdealPoint(pub [f64; 3]);

/// One side of a line, open or closed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub boundary: MLine,
    pub closed: bool,
}

/// A ray: an origin point together with the end it points to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: MPoint,
    pub direction: IdealPoint,
}

impl MPoint {
    /// Renormalizes raw coordinates onto the upper sheet.
    pub fn new(raw: [f64; 3]) -> Result<Self, GeometryError> {
        let n = mdot(&raw, &raw);
        if n >= 0.0 || raw[0] <= 0.0 {
            return Err(GeometryError::NotAPoint);
        }
        let s = 1.0 / (-n).sqrt();
        Ok(MPoint(scale(&raw, s)))
    }

    /// Same as [`MPoint::new`] but panics on invalid input; for internal use
    /// where the argument is an isometry image of a valid point.
    pub(crate) fn renormalized(raw: [f64; 3]) -> Self {
        Self::new(raw).expect("renormalization of an isometry image cannot fail")
    }

    pub fn origin() -> Self {
        MPoint([1.0, 0.0, 0.0])
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    /// Coordinate-wise comparison scaled by the point's magnitude. Distance
    /// itself is useless for near-equality checks: acosh near 1 turns 1e-16
    /// of rounding into 1e-8 of reported distance.
    pub fn approx_eq(&self, other: &MPoint, tol: f64) -> bool {
        let scale = self.0[0].max(1.0);
        (0..3).all(|i| (self.0[i] - other.0[i]).abs() < tol * scale)
    }
}

impl MLine {
    pub fn new(raw: [f64; 3]) -> Result<Self, GeometryError> {
        let n = mdot(&raw, &raw);
        if n <= 0.0 {
            return Err(GeometryError::DegenerateInput);
        }
        Ok(MLine(scale(&raw, 1.0 / n.sqrt())))
    }

    pub fn pole(&self) -> [f64; 3] {
        self.0
    }

    /// Signed side of the line: positive on the positive half-plane,
    /// zero on the line. Works for points and ideal points alike.
    #[inline]
    pub fn side(&self, x: &[f64; 3]) -> f64 {
        mdot(&self.0, x)
    }

    /// Same geodesic, opposite orientation.
    pub fn flipped(&self) -> MLine {
        MLine(scale(&self.0, -1.0))
    }

    /// Orients the line so the given witness coordinates land on the
    /// positive side.
    pub fn oriented_towards(&self, witness: &[f64; 3]) -> MLine {
        if self.side(witness) < 0.0 {
            self.flipped()
        } else {
            *self
        }
    }

    pub fn projectively_eq(&self, other: &MLine, tol: f64) -> bool {
        let d_same: f64 = (0..3).map(|i| (self.0[i] - other.0[i]).abs()).sum();
        let d_flip: f64 = (0..3).map(|i| (self.0[i] + other.0[i]).abs()).sum();
        d_same < tol || d_flip < tol
    }
}

impl IdealPoint {
    pub fn new(raw: [f64; 3]) -> Result<Self, GeometryError> {
        if raw[0].abs() < EPS_NORM {
            return Err(GeometryError::DegenerateInput);
        }
        let u = scale(&raw, 1.0 / raw[0]);
        // Re-scale the spatial part onto the null cone exactly.
        let r = (u[1] * u[1] + u[2] * u[2]).sqrt();
        if r < EPS_NORM {
            return Err(GeometryError::DegenerateInput);
        }
        Ok(IdealPoint([1.0, u[1] / r, u[2] / r]))
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    pub fn approx_eq(&self, other: &IdealPoint, tol: f64) -> bool {
        (self.0[1] - other.0[1]).abs() < tol && (self.0[2] - other.0[2]).abs() < tol
    }
}

impl HalfPlane {
    pub fn closed(boundary: MLine) -> Self {
        HalfPlane { boundary, closed: true }
    }

    pub fn complement(&self) -> HalfPlane {
        HalfPlane { boundary: self.boundary.flipped(), closed: !self.closed }
    }

    pub fn contains_point(&self, p: &MPoint, eps: f64) -> bool {
        let s = self.boundary.side(&p.0);
        if self.closed { s >= -eps } else { s > eps }
    }
}

/// Hyperbolic distance, `cosh d = -<p,q>`.
pub fn dist(p: &MPoint, q: &MPoint) -> f64 {
    let c = -mdot(&p.0, &q.0);
    c.max(1.0).acosh()
}

/// Oriented geodesic through two distinct points; the positive half-plane
/// lies to the left when traversing p -> q.
pub fn line_through(p: &MPoint, q: &MPoint) -> Result<MLine, GeometryError> {
    let raw = mcross(&p.0, &q.0);
    MLine::new(raw).map_err(|_| GeometryError::DegenerateInput)
}

/// Orthogonal projection of a point on a line. A point on the line projects
/// to itself; `sinh dist(m, l) = |<m,l>|`.
pub fn project(m: &MPoint, l: &MLine) -> MPoint {
    let s = mdot(&m.0, &l.0);
    MPoint::renormalized(add(&m.0, &scale(&l.0, -s)))
}

/// Distance from a point to a line.
pub fn dist_to_line(m: &MPoint, l: &MLine) -> f64 {
    mdot(&m.0, &l.0).abs().asinh()
}

/// Lobachevsky's angle of parallelism `Pi(d) = 2*atan(e^(-d))`.
pub fn angle_of_parallelism(d: f64) -> Result<f64, GeometryError> {
    if d < 0.0 {
        return Err(GeometryError::NegativeDistance);
    }
    Ok(2.0 * (-d).exp().atan())
}

/// Mutual position of two distinct geodesics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineRelation {
    /// They cross at an ordinary point; carries the crossing angle in (0, pi/2].
    Intersecting(f64),
    /// They share exactly one end.
    Parallel(IdealPoint),
    /// No common point, ordinary or ideal; carries the length of the common
    /// perpendicular segment.
    Ultraparallel(f64),
}

pub fn line_relation(l: &MLine, m: &MLine) -> Result<LineRelation, GeometryError> {
    if l.projectively_eq(m, EPS_GEO) {
        return Err(GeometryError::SameLine);
    }
    let k = mdot(&l.0, &m.0).abs();
    if (1.0 - k).abs() < EPS_GEO {
        let raw = mcross(&l.0, &m.0);
        let u = IdealPoint::new(raw).map_err(|_| GeometryError::SameLine)?;
        Ok(LineRelation::Parallel(u))
    } else if k < 1.0 {
        Ok(LineRelation::Intersecting(k.acos()))
    } else {
        Ok(LineRelation::Ultraparallel(k.acosh()))
    }
}

/// The unique common perpendicular of two ultraparallel lines.
pub fn common_perpendicular(l: &MLine, m: &MLine) -> Result<MLine, GeometryError> {
    match line_relation(l, m)? {
        LineRelation::Ultraparallel(_) => {}
        _ => return Err(GeometryError::NotUltraparallel),
    }
    MLine::new(mcross(&l.0, &m.0)).map_err(|_| GeometryError::NotUltraparallel)
}

/// A direct isometry or a reflection of the plane: a linear map with
/// `m^T eta m = eta` preserving the upper sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: [[f64; 3]; 3],
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry { m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }

    fn from_matrix(m: [[f64; 3]; 3]) -> Self {
        let mut iso = Isometry { m };
        iso.renormalize();
        iso
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Isometry::from_matrix(m)
    }

    /// Inverse via the form: `eta m^T eta`.
    pub fn inverse(&self) -> Isometry {
        let eta = [-1.0, 1.0, 1.0];
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = eta[i] * self.m[j][i] * eta[j];
            }
        }
        Isometry::from_matrix(m)
    }

    pub fn apply_point(&self, p: &MPoint) -> MPoint {
        MPoint::renormalized(self.apply_raw(&p.0))
    }

    pub fn apply_line(&self, l: &MLine) -> MLine {
        MLine::new(self.apply_raw(&l.0)).expect("isometry image of a line is a line")
    }

    pub fn apply_ideal(&self, u: &IdealPoint) -> IdealPoint {
        IdealPoint::new(self.apply_raw(&u.0)).expect("isometry image of an end is an end")
    }

    fn apply_raw(&self, x: &[f64; 3]) -> [f64; 3] {
        let mut y = [0.0; 3];
        for (i, row) in self.m.iter().enumerate() {
            y[i] = row[0] * x[0] + row[1] * x[1] + row[2] * x[2];
        }
        y
    }

    fn column(&self, j: usize) -> [f64; 3] {
        [self.m[0][j], self.m[1][j], self.m[2][j]]
    }

    fn set_column(&mut self, j: usize, c: [f64; 3]) {
        for i in 0..3 {
            self.m[i][j] = c[i];
        }
    }

    /// Gram-Schmidt against the form: keeps `m^T eta m = eta` across deep
    /// composition chains.
    fn renormalize(&mut self) {
        let mut c0 = self.column(0);
        let n0 = mdot(&c0, &c0);
        c0 = scale(&c0, 1.0 / (-n0).sqrt());
        if c0[0] < 0.0 {
            c0 = scale(&c0, -1.0);
        }
        let mut c1 = self.column(1);
        c1 = add(&c1, &scale(&c0, mdot(&c1, &c0)));
        c1 = scale(&c1, 1.0 / mdot(&c1, &c1).sqrt());
        let mut c2 = self.column(2);
        c2 = add(&c2, &scale(&c0, mdot(&c2, &c0)));
        c2 = add(&c2, &scale(&c1, -mdot(&c2, &c1)));
        c2 = scale(&c2, 1.0 / mdot(&c2, &c2).sqrt());
        self.set_column(0, c0);
        self.set_column(1, c1);
        self.set_column(2, c2);
    }

    /// Max deviation of `m^T eta m` from `eta`; diagnostic for tests.
    pub fn orthonormality_defect(&self) -> f64 {
        let eta = [-1.0, 1.0, 1.0];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let g: f64 = (0..3).map(|k| eta[k] * self.m[k][i] * self.m[k][j]).sum();
                let want = if i == j { eta[i] } else { 0.0 };
                worst = worst.max((g - want).abs());
            }
        }
        worst
    }
}

/// Orthonormal frame at a point: columns are the point, the unit tangent
/// towards `toward`, and the second tangent completing the triad. Maps the
/// standard frame at the origin to the frame at `p`, so
/// `frame_at(q, y).compose(&frame_at(p, x).inverse())` carries `(p, x)`
/// to `(q, y)`.
pub fn frame_at(p: &MPoint, toward: &MPoint) -> Result<Isometry, GeometryError> {
    let t = unit_tangent(p, toward)?;
    let n = mcross(&p.0, &t);
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        m[i][0] = p.0[i];
        m[i][1] = t[i];
        m[i][2] = n[i];
    }
    Ok(Isometry::from_matrix(m))
}

/// Reflection in a line: `x -> x - 2<x,l>l`.
pub fn reflect_in(l: &MLine) -> Isometry {
    let mut m = [[0.0; 3]; 3];
    let eta = [-1.0, 1.0, 1.0];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            *cell = delta - 2.0 * l.0[i] * eta[j] * l.0[j];
        }
    }
    Isometry::from_matrix(m)
}

/// Half-turn about a point: fixes `p`, negates its tangent plane.
pub fn point_reflection(p: &MPoint) -> Isometry {
    let mut m = [[0.0; 3]; 3];
    let eta = [-1.0, 1.0, 1.0];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            *cell = -delta - 2.0 * p.0[i] * eta[j] * p.0[j];
        }
    }
    Isometry::from_matrix(m)
}

/// Unit tangent vector at `from` pointing towards `toward`.
fn unit_tangent(from: &MPoint, toward: &MPoint) -> Result<[f64; 3], GeometryError> {
    let c = mdot(&from.0, &toward.0); // -cosh d
    let v = add(&toward.0, &scale(&from.0, c));
    let n = mdot(&v, &v);
    if n <= EPS_NORM {
        return Err(GeometryError::DegenerateInput);
    }
    Ok(scale(&v, 1.0 / n.sqrt()))
}

/// The end reached by the ray from `from` through `toward`.
pub fn end_toward(from: &MPoint, toward: &MPoint) -> Result<IdealPoint, GeometryError> {
    let v = unit_tangent(from, toward)?;
    IdealPoint::new(add(&from.0, &v))
}

/// Tangent direction of the line `l` at a point `foot` lying on it, following
/// the line's orientation.
fn line_tangent_at(l: &MLine, foot: &MPoint) -> [f64; 3] {
    let v = mcross(&l.0, &foot.0);
    let n = mdot(&v, &v).sqrt();
    scale(&v, 1.0 / n)
}

/// Point of `l` at signed arc length `s` from `foot` (which must lie on `l`).
pub fn point_on_line_at(l: &MLine, foot: &MPoint, s: f64) -> MPoint {
    let v = line_tangent_at(l, foot);
    MPoint::renormalized(add(&scale(&foot.0, s.cosh()), &scale(&v, s.sinh())))
}

/// The line through `foot` perpendicular to `l`; `foot` must lie on `l`.
/// Its positive side is the one the orientation of `l` runs into.
pub fn perpendicular_at(l: &MLine, foot: &MPoint) -> MLine {
    MLine(line_tangent_at(l, foot))
}

/// Both ends of a line, the first one in the direction of its orientation.
pub fn ideal_points_of(l: &MLine) -> (IdealPoint, IdealPoint) {
    let foot = project(&MPoint::origin(), l);
    let v = line_tangent_at(l, &foot);
    let fwd = IdealPoint::new(add(&foot.0, &v)).expect("end of a line");
    let bwd = IdealPoint::new(add(&foot.0, &scale(&v, -1.0))).expect("end of a line");
    (fwd, bwd)
}

/// Shift along `l` by signed amplitude `t` (positive towards the line's
/// forward end), realized as a product of reflections in two perpendiculars
/// at gap `t/2`.
pub fn translate_along(l: &MLine, t: f64) -> Isometry {
    let f0 = project(&MPoint::origin(), l);
    let f1 = point_on_line_at(l, &f0, t / 2.0);
    let r0 = reflect_in(&perpendicular_at(l, &f0));
    let r1 = reflect_in(&perpendicular_at(l, &f1));
    r1.compose(&r0)
}

/// Whether the half-plane touches the end: every neighbourhood of the end
/// meets the half-plane's interior or the end lies on the boundary.
pub fn halfplane_touches(h: &HalfPlane, alpha: &IdealPoint) -> bool {
    let s = h.boundary.side(&alpha.0);
    if s.abs() <= EPS_GEO { h.closed } else { s > 0.0 }
}

/// Poincare disc image of an ordinary point.
pub fn to_disc(p: &MPoint) -> (f64, f64) {
    let d = 1.0 + p.0[0];
    (p.0[1] / d, p.0[2] / d)
}

/// Disc image of an end: lands exactly on the unit circle.
pub fn to_disc_ideal(u: &IdealPoint) -> (f64, f64) {
    let r = (u.0[1] * u.0[1] + u.0[2] * u.0[2]).sqrt();
    (u.0[1] / r, u.0[2] / r)
}

/// Inverse of [`to_disc`]; fails outside the open unit disc.
pub fn disc_to_point(x: f64, y: f64) -> Result<MPoint, GeometryError> {
    let r2 = x * x + y * y;
    if r2 >= 1.0 {
        return Err(GeometryError::NotAPoint);
    }
    let d = 1.0 - r2;
    MPoint::new([(1.0 + r2) / d, 2.0 * x / d, 2.0 * y / d])
}

/// Geodesic midpoint of two points.
pub fn midpoint(p: &MPoint, q: &MPoint) -> MPoint {
    MPoint::renormalized(add(&p.0, &q.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A_SIDE: f64 = 1.061_275_061_905_035_7; // arccosh(golden ratio)

    fn close(a: f64, b: f64, eps: f64) {
        assert!((a - b).abs() < eps, "{a} vs {b}");
    }

    #[test]
    fn mdot_signature_cases() {
        close(mdot(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]), -1.0, 1e-15);
        close(mdot(&[0.0, 1.0, 0.0], &[0.0, 1.0, 0.0]), 1.0, 1e-15);
        close(mdot(&[1.0, 1.0, 0.0], &[1.0, 1.0, 0.0]), 0.0, 1e-15);
    }

    #[test]
    fn dist_zero_and_translated() {
        let o = MPoint::origin();
        close(dist(&o, &o), 0.0, 1e-15);
        let x_axis = MLine([0.0, 0.0, 1.0]);
        let t = translate_along(&x_axis, A_SIDE);
        let p = t.apply_point(&o);
        close(dist(&o, &p), A_SIDE, 1e-12);
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        close(dist(&o, &p).cosh(), phi, 1e-12);
    }

    #[test]
    fn line_through_x_axis() {
        let o = MPoint::origin();
        let p = MPoint::new([1.0_f64.cosh(), 1.0_f64.sinh(), 0.0]).unwrap();
        let l = line_through(&o, &p).unwrap();
        assert!(l.pole()[2].abs() > 0.999_999);
        close(l.side(&o.0), 0.0, 1e-12);
        let rev = line_through(&p, &o).unwrap();
        close(rev.pole()[2] + l.pole()[2], 0.0, 1e-12);
        assert!(line_through(&o, &o).is_err());
    }

    #[test]
    fn projection_foot_properties() {
        let l = MLine([0.0, 0.0, 1.0]);
        let m = MPoint::new([2.0, 0.7, 1.2]).unwrap();
        let k = project(&m, &l);
        close(l.side(&k.0), 0.0, 1e-12);
        close(dist(&m, &k), mdot(&m.0, &l.0).abs().asinh(), 1e-12);
        let on = project(&k, &l);
        assert!(on.approx_eq(&k, 1e-12));
        // foot beats nearby points of the line
        for s in [-0.3, -0.01, 0.01, 0.3] {
            let other = point_on_line_at(&l, &k, s);
            assert!(dist(&m, &other) > dist(&m, &k));
        }
    }

    #[test]
    fn parallelism_angle_values() {
        close(angle_of_parallelism(0.0).unwrap(), std::f64::consts::FRAC_PI_2, 1e-15);
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        close(angle_of_parallelism(A_SIDE).unwrap(), (1.0 / phi).asin(), 1e-12);
        let mut prev = f64::INFINITY;
        for d in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let v = angle_of_parallelism(d).unwrap();
            assert!(v < prev);
            prev = v;
        }
        assert!(angle_of_parallelism(-0.1).is_err());
    }

    #[test]
    fn relation_trichotomy() {
        let x_axis = MLine([0.0, 0.0, 1.0]);
        let y_axis = MLine([0.0, -1.0, 0.0]);
        match line_relation(&x_axis, &y_axis).unwrap() {
            LineRelation::Intersecting(theta) => close(theta, std::f64::consts::FRAC_PI_2, 1e-12),
            other => panic!("expected intersecting, got {other:?}"),
        }
        // reflect x-axis in a point at distance d above it: gap 2d
        let p = MPoint::new([0.8_f64.cosh(), 0.0, 0.8_f64.sinh()]).unwrap();
        let moved = point_reflection(&p).apply_line(&x_axis);
        match line_relation(&x_axis, &moved).unwrap() {
            LineRelation::Ultraparallel(g) => close(g, 1.6, 1e-12),
            other => panic!("expected ultraparallel, got {other:?}"),
        }
        assert_eq!(line_relation(&x_axis, &x_axis), Err(GeometryError::SameLine));
        assert_eq!(
            line_relation(&x_axis, &x_axis.flipped()),
            Err(GeometryError::SameLine)
        );
    }

    #[test]
    fn common_perpendicular_is_perpendicular() {
        let x_axis = MLine([0.0, 0.0, 1.0]);
        let p = MPoint::new([0.6_f64.cosh(), 0.3, 0.6_f64.sinh()]).unwrap();
        let other = point_reflection(&p).apply_line(&x_axis);
        let perp = common_perpendicular(&x_axis, &other).unwrap();
        for l in [&x_axis, &other] {
            match line_relation(&perp, l).unwrap() {
                LineRelation::Intersecting(theta) => {
                    close(theta, std::f64::consts::FRAC_PI_2, 1e-9)
                }
                rel => panic!("expected right-angle crossing, got {rel:?}"),
            }
        }
        let sym = common_perpendicular(&other, &x_axis).unwrap();
        assert!(perp.projectively_eq(&sym, 1e-9));
        let y_axis = MLine([0.0, -1.0, 0.0]);
        assert_eq!(
            common_perpendicular(&x_axis, &y_axis),
            Err(GeometryError::NotUltraparallel)
        );
    }

    #[test]
    fn reflection_is_involutive_and_fixes_ends() {
        let l = MLine::new([0.3, 0.2, 1.1]).unwrap();
        let r = reflect_in(&l);
        let rr = r.compose(&r);
        let p = MPoint::new([1.5, 0.4, 1.0]).unwrap();
        assert!(rr.apply_point(&p).approx_eq(&p, 1e-12));
        let (u, v) = ideal_points_of(&l);
        assert!(r.apply_ideal(&u).approx_eq(&u, 1e-12));
        assert!(r.apply_ideal(&v).approx_eq(&v, 1e-12));
        // sign of <x,l> flips
        let s_before = l.side(&p.0);
        let s_after = l.side(&r.apply_point(&p).0);
        close(s_before + s_after, 0.0, 1e-12);
    }

    #[test]
    fn translation_group_law() {
        let l = MLine::new([0.1, 0.4, 1.0]).unwrap();
        let id = translate_along(&l, 0.0);
        let p = MPoint::new([1.2, 0.1, 0.6]).unwrap();
        assert!(id.apply_point(&p).approx_eq(&p, 1e-12));
        let t1 = translate_along(&l, 0.7);
        let t2 = t1.compose(&t1);
        let t_twice = translate_along(&l, 1.4);
        let q = project(&p, &l);
        assert!(t2.apply_point(&q).approx_eq(&t_twice.apply_point(&q), 1e-10));
        close(dist(&q, &t1.apply_point(&q)), 0.7, 1e-12);
    }

    #[test]
    fn ends_of_x_axis() {
        let x_axis = MLine([0.0, 0.0, 1.0]);
        let (u, v) = ideal_points_of(&x_axis);
        assert!(u.approx_eq(&IdealPoint([1.0, 1.0, 0.0]), 1e-12));
        assert!(v.approx_eq(&IdealPoint([1.0, -1.0, 0.0]), 1e-12));
        close(mdot(&u.0, &x_axis.0), 0.0, 1e-12);
    }

    #[test]
    fn touching_dichotomy() {
        let l = MLine([0.0, 0.0, 1.0]);
        let h = HalfPlane::closed(l);
        let (u, _) = ideal_points_of(&l);
        assert!(halfplane_touches(&h, &u));
        let above = IdealPoint::new([1.0, 0.3, 0.9]).unwrap();
        let below = IdealPoint::new([1.0, 0.3, -0.9]).unwrap();
        assert!(halfplane_touches(&h, &above));
        assert!(!halfplane_touches(&h, &below));
        assert!(halfplane_touches(&h.complement(), &below));
        assert!(halfplane_touches(&h, &above) ^ halfplane_touches(&h.complement(), &above));
    }

    #[test]
    fn disc_mapping() {
        let o = MPoint::origin();
        assert_eq!(to_disc(&o), (0.0, 0.0));
        let (x, y) = to_disc_ideal(&IdealPoint([1.0, 1.0, 0.0]));
        close(x, 1.0, 1e-15);
        close(y, 0.0, 1e-15);
        let p = MPoint::new([2.0, 1.0, 1.2]).unwrap();
        let (dx, dy) = to_disc(&p);
        assert!(dx * dx + dy * dy < 1.0);
        let back = disc_to_point(dx, dy).unwrap();
        assert!(back.approx_eq(&p, 1e-12));
        assert!(disc_to_point(1.0, 0.0).is_err());
    }

    #[test]
    fn composition_keeps_form_after_64_steps() {
        let mut iso = Isometry::identity();
        for i in 0..64 {
            let l = MLine::new([0.1 * (i as f64).sin(), 0.9, 0.5 + 0.01 * i as f64]).unwrap();
            iso = reflect_in(&l).compose(&iso);
        }
        assert!(iso.orthonormality_defect() < 1e-9);
    }
}
