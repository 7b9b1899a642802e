//! Cornucopia decomposition of a quarter and the Fibonacci tree it induces.
//!
//! A quarter splits into its cornucopia (the row of tiles along the s-b
//! border) plus a sequence of child regions, and the splitting recurses
//! inside every region. Reading the recursion as a tree gives the rules
//! `W -> B W W` and `B -> B W`: region heads are the W nodes, the other
//! cornucopia tiles are the B nodes, and level `d` holds `f(2d+1)` nodes
//! for the Fibonacci sequence with `f(0) = f(1) = 1`.
//!
//! Child ordering is fixed once and for all so tests are deterministic:
//! index 0 is always the next cornucopia tile (the leftmost branch), then
//! the region over side 3 of the head, then the region over side 2. At a B
//! node index 1 is the region over side 2 of that tile.

use crate::geometry::{dist, project, HalfPlane, MPoint, EPS_GEO};
use crate::pentagon::{constants, Pentagon};
use crate::quarter::Quarter;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("child index {index} out of range for a {arity}-son node at step {step}")]
    InvalidPath { step: usize, index: u8, arity: u8 },
}

/// Node colour of the Fibonacci tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Color {
    W,
    B,
}

impl Color {
    pub fn arity(self) -> u8 {
        match self {
            Color::W => 3,
            Color::B => 2,
        }
    }
}

/// Position of a tile in the tree: the list of child indices from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TreePath(pub Vec<u8>);

impl TreePath {
    pub fn root() -> Self {
        TreePath(Vec::new())
    }

    pub fn child(&self, index: u8) -> TreePath {
        let mut steps = self.0.clone();
        steps.push(index);
        TreePath(steps)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Colour of the node the path leads to. The root is white; a node is
    /// white exactly when it was entered by a region descent, i.e. when the
    /// last index is nonzero.
    pub fn color(&self) -> Color {
        match self.0.last() {
            None => Color::W,
            Some(0) => Color::B,
            Some(_) => Color::W,
        }
    }

    /// Number of region descents, i.e. the generation of the region that
    /// owns this node's cornucopia.
    pub fn generation(&self) -> usize {
        self.0.iter().filter(|&&i| i != 0).count()
    }
}

impl std::fmt::Display for TreePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// A tile of the decomposition together with its tree coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub pentagon: Pentagon,
    pub path: TreePath,
    pub color: Color,
}

/// A quarter of the decomposition carrying its generation index.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub quarter: Quarter,
    pub generation: usize,
    pub path: TreePath,
}

/// The lower strip of a labelled tile: inside the side-1 and side-4
/// half-planes but on the far side of the side-5 line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerStrip {
    pub h1: HalfPlane,
    pub h4: HalfPlane,
    pub not_h5: HalfPlane,
}

impl LowerStrip {
    pub fn contains(&self, p: &MPoint, eps: f64) -> bool {
        self.h1.contains_point(p, eps)
            && self.h4.contains_point(p, eps)
            && self.not_h5.contains_point(p, eps)
    }
}

pub fn lower_strip(p: &Pentagon) -> LowerStrip {
    let c = p.center().coords();
    LowerStrip {
        h1: HalfPlane::closed(p.side_line(1).oriented_towards(&c)),
        h4: HalfPlane::closed(p.side_line(4).oriented_towards(&c)),
        not_h5: HalfPlane::closed(p.side_line(5).oriented_towards(&c)).complement(),
    }
}

/// First `n+1` tiles of the cornucopia of a quarter, built by the shift of
/// amplitude one side length along the s-b border. Consecutive tiles share
/// an edge: side 1 of each is side 4 of the next.
pub fn cornucopia(q: &Quarter, n: usize) -> Vec<Pentagon> {
    let mut out = Vec::with_capacity(n + 1);
    let tau = crate::geometry::translate_along(q.head().side_line(5), constants().side);
    let mut p = q.head().clone();
    out.push(p.clone());
    for _ in 0..n {
        p = p.mapped(&tau);
        out.push(p.clone());
    }
    out
}

/// First `n+1` child regions of a region, generation one deeper. Region 0
/// hangs over side 3 of the head; region `i+1` hangs over side 2 of the
/// `i`-th cornucopia tile.
pub fn child_regions(region: &Region, n: usize) -> Vec<Region> {
    let mut out = Vec::with_capacity(n + 1);
    let generation = region.generation + 1;
    out.push(Region {
        quarter: region.quarter.region_child_low(),
        generation,
        path: region.path.child(1),
    });
    let mut cornu = region.quarter.head().clone();
    let mut cornu_path = region.path.clone();
    for i in 0..n {
        let quarter = Quarter::from_head(cornu.region_head_over_side2());
        let path = if i == 0 { region.path.child(2) } else { cornu_path.child(1) };
        out.push(Region { quarter, generation, path });
        cornu = cornu.cornucopia_next();
        cornu_path = cornu_path.child(0);
    }
    out
}

/// All tiles at tree distance at most `depth` from the root of the quarter,
/// breadth-first and left-to-right, so the output order is deterministic.
pub fn decompose(root: &Quarter, depth: usize) -> Vec<Tile> {
    let mut out = Vec::new();
    let mut level = vec![Tile {
        pentagon: root.head().clone(),
        path: TreePath::root(),
        color: Color::W,
    }];
    out.extend(level.iter().cloned());
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * 3);
        for tile in &level {
            next.push(Tile {
                pentagon: tile.pentagon.cornucopia_next(),
                path: tile.path.child(0),
                color: Color::B,
            });
            if tile.color == Color::W {
                next.push(Tile {
                    pentagon: tile.pentagon.region_head_over_side3(),
                    path: tile.path.child(1),
                    color: Color::W,
                });
                next.push(Tile {
                    pentagon: tile.pentagon.region_head_over_side2(),
                    path: tile.path.child(2),
                    color: Color::W,
                });
            } else {
                next.push(Tile {
                    pentagon: tile.pentagon.region_head_over_side2(),
                    path: tile.path.child(1),
                    color: Color::W,
                });
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// All region quarters (W nodes) of the depth-`depth` decomposition, root
/// included as the generation-0 region.
pub fn regions_of_decomposition(root: &Quarter, depth: usize) -> Vec<Region> {
    decompose(root, depth)
        .into_iter()
        .filter(|t| t.color == Color::W)
        .map(|t| Region {
            quarter: Quarter::from_head(t.pentagon),
            generation: t.path.generation(),
            path: t.path,
        })
        .collect()
}

/// Distance from the root vertex to a region, measured at the orthogonal
/// projection of the vertex on the side-5 line of the region's head and
/// clamped to that side. The projection of the root vertex on a region
/// falls on the side 5 of its head, so this is the true set distance.
pub fn region_distance_from(o: &MPoint, region: &Region) -> f64 {
    let head = region.quarter.head();
    let l5 = head.side_line(5);
    let foot = project(o, l5);
    let (e, a) = head.side_endpoints(5);
    let side = constants().side;
    if dist(e, &foot) <= side + EPS_GEO && dist(a, &foot) <= side + EPS_GEO {
        dist(o, &foot)
    } else {
        dist(o, e).min(dist(o, a))
    }
}

/// Symbolic Fibonacci tree node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibNode {
    pub color: Color,
    pub children: Vec<FibNode>,
}

/// The colour tree of depth `depth` grown from a white root under
/// `W -> B W W`, `B -> B W`.
pub fn fib_tree(depth: usize) -> FibNode {
    fn grow(color: Color, depth: usize) -> FibNode {
        if depth == 0 {
            return FibNode { color, children: Vec::new() };
        }
        let children = match color {
            Color::W => vec![
                grow(Color::B, depth - 1),
                grow(Color::W, depth - 1),
                grow(Color::W, depth - 1),
            ],
            Color::B => vec![grow(Color::B, depth - 1), grow(Color::W, depth - 1)],
        };
        FibNode { color, children }
    }
    grow(Color::W, depth)
}

/// Node counts per level of [`fib_tree`]: `1, 3, 8, 21, 55, ...`.
pub fn fib_level_counts(depth: usize) -> Vec<usize> {
    let mut counts = Vec::with_capacity(depth + 1);
    let (mut w, mut b) = (1usize, 0usize);
    counts.push(w + b);
    for _ in 0..depth {
        let nw = 2 * w + b;
        let nb = w + b;
        w = nw;
        b = nb;
        counts.push(w + b);
    }
    counts
}

/// Colour of the symbolic node a path leads to, checking arities.
pub fn fib_color_at(path: &TreePath) -> Result<Color, PathError> {
    let mut color = Color::W;
    for (step, &idx) in path.0.iter().enumerate() {
        let arity = color.arity();
        if idx >= arity {
            return Err(PathError::InvalidPath { step, index: idx, arity });
        }
        color = match (color, idx) {
            (_, 0) => Color::B,
            _ => Color::W,
        };
    }
    Ok(color)
}

/// Numeric confirmation of the strip inclusions driving the decomposition,
/// over every tile of the depth-`depth` tiling.
#[derive(Debug, Clone, Default)]
pub struct StripReport {
    pub tiles_checked: usize,
    pub samples_per_tile: usize,
    /// Inclusion checks of the strip into its two reflected strips.
    pub inclusion_failures: usize,
    /// Sampled interior strip points that leaked into the strip of the
    /// shifted tile's side-3 reflection, which must meet the strip only on
    /// the side-4 line.
    pub exclusion_failures: usize,
    /// Region heads whose side-5 half-plane captured the root vertex.
    pub visibility_failures: usize,
}

impl StripReport {
    pub fn all_passed(&self) -> bool {
        self.inclusion_failures == 0
            && self.exclusion_failures == 0
            && self.visibility_failures == 0
    }
}

/// Checks, for every tile at distance below `depth`:
/// on sampled points, the lower strip is contained in the lower strips of
/// the side-2 and side-3 reflections, and in the strip of the side-2
/// reflection of the shifted tile, while the strip of the side-3 reflection
/// of the shifted tile stays clear of it; and the root vertex lies outside
/// the side-5 half-plane of every region head.
pub fn verify_strip_lemmas(depth: usize, samples: usize, seed: u64) -> StripReport {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let root = Quarter::base();
    let tiles = decompose(&root, depth.saturating_sub(1));
    let mut report = StripReport {
        tiles_checked: tiles.len(),
        samples_per_tile: samples,
        ..Default::default()
    };
    for tile in &tiles {
        let p = &tile.pentagon;
        let strip = lower_strip(p);
        let into_strip = crate::geometry::reflect_in(p.side_line(5));
        let strips_containing = [
            lower_strip(&p.region_head_over_side2()),
            lower_strip(&p.region_head_over_side3()),
            lower_strip(&p.cornucopia_next().region_head_over_side2()),
        ];
        let excluded = lower_strip(&p.cornucopia_next().region_head_over_side3());
        for _ in 0..samples {
            let point = into_strip.apply_point(&sample_interior(p, &mut rng));
            debug_assert!(strip.contains(&point, EPS_GEO));
            for s in &strips_containing {
                if !s.contains(&point, EPS_GEO) {
                    report.inclusion_failures += 1;
                }
            }
            if excluded.contains(&point, -EPS_GEO) {
                report.exclusion_failures += 1;
            }
        }
        if tile.color == Color::W && !tile.path.0.is_empty() {
            let c = p.center().coords();
            let h5 = p.side_line(5).oriented_towards(&c);
            if h5.side(&MPoint::origin().coords()) > -EPS_GEO {
                report.visibility_failures += 1;
            }
        }
    }
    report
}

/// Seeded interior point of a tile: a random positive combination of the
/// vertices and the center, renormalized.
pub fn sample_interior<R: rand::Rng>(p: &Pentagon, rng: &mut R) -> MPoint {
    let mut raw = [0.0; 3];
    for v in p.vertices() {
        let w: f64 = rng.gen_range(0.05..1.0);
        for (acc, c) in raw.iter_mut().zip(v.coords()) {
            *acc += w * c;
        }
    }
    let wc: f64 = rng.gen_range(0.5..2.0);
    for (acc, c) in raw.iter_mut().zip(p.center().coords()) {
        *acc += wc * c;
    }
    MPoint::new(raw).expect("positive combinations stay on the upper sheet")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fib_counts_match_every_other_fibonacci() {
        assert_eq!(fib_level_counts(4), vec![1, 3, 8, 21, 55]);
        let tree = fib_tree(2);
        assert_eq!(tree.children.len(), 3);
        assert_eq!(
            tree.children.iter().map(|c| c.color).collect::<Vec<_>>(),
            vec![Color::B, Color::W, Color::W]
        );
        assert_eq!(tree.children[0].children.len(), 2);
        let level2: usize = tree
            .children
            .iter()
            .map(|c| c.children.len())
            .sum();
        assert_eq!(level2, 8);
    }

    #[test]
    fn decompose_counts_and_validity() {
        let tiles = decompose(&Quarter::base(), 3);
        assert_eq!(tiles.len(), 1 + 3 + 8 + 21);
        for t in &tiles {
            assert!(t.pentagon.regularity_defect() < 1e-9, "tile {} degraded", t.path);
            assert_eq!(t.color, t.path.color());
            assert_eq!(fib_color_at(&t.path).unwrap(), t.color);
        }
        // depth-0 root
        assert_eq!(decompose(&Quarter::base(), 0).len(), 1);
        assert_eq!(tiles[0].color, Color::W);
    }

    #[test]
    fn cornucopia_tiles_share_edges_on_the_border() {
        let q = Quarter::base();
        let row = cornucopia(&q, 3);
        assert_eq!(row.len(), 4);
        let a = constants().side;
        for w in row.windows(2) {
            assert_eq!(w[0].shared_side_with(&w[1], 1e-7), Some((1, 4)));
            let (e1, a1) = w[0].side_endpoints(1);
            assert!((dist(e1, a1) - a).abs() < 1e-9);
        }
        // every tile keeps an edge on the s-b border line
        let border = q.head().side_line(5);
        for p in &row {
            let (e, aa) = p.side_endpoints(5);
            assert!(border.side(&e.coords()).abs() < 1e-9);
            assert!(border.side(&aa.coords()).abs() < 1e-9);
        }
        // and agrees with repeated reflection-relabelling
        let by_reflection = q.head().cornucopia_next();
        for i in 0..5 {
            assert!(row[1].vertex(i).approx_eq(by_reflection.vertex(i), 1e-9));
        }
    }

    #[test]
    fn child_region_heads_follow_the_side_table() {
        let root = Region { quarter: Quarter::base(), generation: 0, path: TreePath::root() };
        let kids = child_regions(&root, 2);
        assert_eq!(kids.len(), 3);
        let p0 = root.quarter.head();
        // region 0's head has its side 5 on the side-3 line of the head
        let r0_head = kids[0].quarter.head();
        assert!(r0_head.side_line(5).projectively_eq(p0.side_line(3), 1e-9));
        // region 1's head has its side 5 on the side-2 line of the head
        let r1_head = kids[1].quarter.head();
        assert!(r1_head.side_line(5).projectively_eq(p0.side_line(2), 1e-9));
        // region 2 hangs over side 2 of the next cornucopia tile
        let p1 = p0.cornucopia_next();
        let r2_head = kids[2].quarter.head();
        assert!(r2_head.side_line(5).projectively_eq(p1.side_line(2), 1e-9));
        for k in &kids {
            assert_eq!(k.generation, 1);
            assert!(crate::quarter::borders_perpendicular(&k.quarter));
        }
        assert_eq!(kids[0].path, TreePath(vec![1]));
        assert_eq!(kids[1].path, TreePath(vec![2]));
        assert_eq!(kids[2].path, TreePath(vec![0, 1]));
    }

    #[test]
    fn strip_membership_basics() {
        let p = Pentagon::base();
        let strip = lower_strip(&p);
        assert!(!strip.contains(&p.center(), EPS_GEO));
        let mirrored = crate::geometry::reflect_in(p.side_line(5)).apply_point(&p.center());
        assert!(strip.contains(&mirrored, EPS_GEO));
    }

    #[test]
    fn strip_lemmas_hold_at_depth_three() {
        let report = verify_strip_lemmas(3, 60, 7);
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn root_vertex_sits_in_every_region_head_strip() {
        let o = MPoint::origin();
        for region in regions_of_decomposition(&Quarter::base(), 3) {
            let strip = lower_strip(region.quarter.head());
            if region.path.0.is_empty() {
                continue;
            }
            assert!(
                strip.contains(&o, EPS_GEO),
                "root vertex escaped the strip of region {}",
                region.path
            );
        }
    }

    #[test]
    fn region_distance_grows_with_generation() {
        let o = MPoint::origin();
        let a = constants().side;
        for region in regions_of_decomposition(&Quarter::base(), 4) {
            let d = region_distance_from(&o, &region);
            assert!(
                d >= region.generation as f64 * a - 1e-9,
                "region {} generation {} at distance {d}",
                region.path,
                region.generation
            );
        }
    }
}
