//! Direct face enumeration.
//!
//! The arrangement is clipped to an axis-aligned box that strictly contains
//! every curve vertex and intersection point; outside the box each curve is
//! a single straight ray and no two curves meet, so every region of the
//! arrangement meets the box in exactly one face of the clipped planar
//! graph. Faces are traced with a half-edge structure.
//!
//! [`grid_flood_fill_oracle`] is an independent, approximate check that only
//! shares the geometric kernel with the rest of this module.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::arrangement::{build_arrangement, Arrangement, PairClass, UnknownId};
use crate::geom::{angle_cmp, ClipBox, Piece, PieceKind, Point};
use crate::model::{CurveIntersection, LineId};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// Index of the line in the arrangement.
    Curve(usize),
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubEdge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Half-edges of the boundary walk, face on the left. Half-edge `h`
    /// runs along edge `h / 2`, forwards when `h` is even.
    pub boundary: Vec<usize>,
    /// The face touches the clip box boundary, i.e. the region is unbounded.
    pub unbounded: bool,
    /// The face outside the clip box.
    pub outer: bool,
}

#[derive(Clone, Debug)]
pub struct PlanarSubdivision<T> {
    pub clip_box: ClipBox<T>,
    pub vertices: Vec<Point<T>>,
    pub edges: Vec<SubEdge>,
    pub faces: Vec<Face>,
    twice_areas: Vec<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceCensus {
    pub regions: u64,
    pub edges_1faces: u64,
    pub vertices_0faces: u64,
}

impl<T: Scalar> PlanarSubdivision<T> {
    pub fn half_edge_origin(&self, h: usize) -> usize {
        let e = &self.edges[h / 2];
        if h.is_multiple_of(2) {
            e.from
        } else {
            e.to
        }
    }

    pub fn half_edge_label(&self, h: usize) -> EdgeLabel {
        self.edges[h / 2].label
    }

    pub fn interior_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.outer)
    }

    /// `V - E + F`, which is 2 for a connected plane graph.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Twice the signed area enclosed by each face's boundary walk.
    pub fn twice_signed_areas(&self) -> &[T] {
        &self.twice_areas
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Polygon of a face's boundary walk.
    pub fn face_polygon(&self, face: &Face) -> Vec<Point<T>> {
        face.boundary
            .iter()
            .map(|&h| self.vertices[self.half_edge_origin(h)].clone())
            .collect()
    }
}

/// The clip box used by [`build_subdivision`]: the bounding box of all
/// features grown by one unit.
pub fn default_clip_box<T: Scalar>(arr: &Arrangement<T>) -> ClipBox<T> {
    ClipBox::around(arr.feature_points().iter(), &T::one())
}

pub fn build_subdivision<T: Scalar>(arr: &Arrangement<T>) -> PlanarSubdivision<T> {
    subdivision_in(arr, default_clip_box(arr))
}

/// Build the subdivision inside a caller-chosen box, which must strictly
/// contain every feature point.
pub fn subdivision_in<T: Scalar>(arr: &Arrangement<T>, clip_box: ClipBox<T>) -> PlanarSubdivision<T> {
    assert!(
        arr.feature_points().iter().all(|p| clip_box.strictly_contains(p)),
        "clip box must strictly contain all vertices and intersection points"
    );
    let mut vindex: BTreeMap<Point<T>, usize> = BTreeMap::new();
    let mut vertices: Vec<Point<T>> = Vec::new();
    let mut vid = |p: &Point<T>, vertices: &mut Vec<Point<T>>| -> usize {
        if let Some(&i) = vindex.get(p) {
            return i;
        }
        vertices.push(p.clone());
        vindex.insert(p.clone(), vertices.len() - 1);
        vertices.len() - 1
    };

    let mut edges = Vec::new();
    let mut exits = Vec::new();
    for (li, line) in arr.lines().iter().enumerate() {
        let on_line: Vec<&Point<T>> = arr
            .points()
            .iter()
            .filter(|p| p.contains_line(&line.id))
            .map(|p| &p.location)
            .collect();
        for piece in line.pieces() {
            let far = match piece.kind {
                PieceKind::Segment => piece.end().expect("segment end"),
                PieceKind::Ray => {
                    let e = clip_box.ray_exit(&piece.origin, &piece.dir);
                    exits.push(e.clone());
                    e
                }
            };
            let clipped = Piece::segment(piece.origin.clone(), &far);
            let mut stops: Vec<(T, &Point<T>)> = vec![(T::zero(), &piece.origin), (T::one(), &far)];
            for p in &on_line {
                if let Some(t) = clipped.param_of(p) {
                    stops.push((t, p));
                }
            }
            stops.sort_by(|a, b| a.0.cmp(&b.0));
            stops.dedup_by(|a, b| a.0 == b.0);
            for w in stops.windows(2) {
                let from = vid(w[0].1, &mut vertices);
                let to = vid(w[1].1, &mut vertices);
                edges.push(SubEdge {
                    from,
                    to,
                    label: EdgeLabel::Curve(li),
                });
            }
        }
    }

    let mut ring: Vec<(T, Point<T>)> = clip_box
        .corners()
        .into_iter()
        .chain(exits)
        .map(|p| (clip_box.perimeter_param(&p), p))
        .collect();
    ring.sort_by(|a, b| a.0.cmp(&b.0));
    ring.dedup_by(|a, b| a.0 == b.0);
    for i in 0..ring.len() {
        let from = vid(&ring[i].1, &mut vertices);
        let to = vid(&ring[(i + 1) % ring.len()].1, &mut vertices);
        edges.push(SubEdge {
            from,
            to,
            label: EdgeLabel::Boundary,
        });
    }

    // Outgoing half-edges around each vertex in counterclockwise order.
    let nh = 2 * edges.len();
    let origin = |h: usize| {
        if h.is_multiple_of(2) {
            edges[h / 2].from
        } else {
            edges[h / 2].to
        }
    };
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for h in 0..nh {
        around[origin(h)].push(h);
    }
    let dir_of = |h: usize| vertices[origin(h ^ 1)].sub(&vertices[origin(h)]);
    let mut slot = vec![0usize; nh];
    for list in &mut around {
        list.sort_by(|&a, &b| angle_cmp(&dir_of(a), &dir_of(b)));
        for (i, &h) in list.iter().enumerate() {
            slot[h] = i;
        }
    }
    let next = |h: usize| {
        let twin = h ^ 1;
        let list = &around[origin(twin)];
        list[(slot[twin] + list.len() - 1) % list.len()]
    };

    let mut faces = Vec::new();
    let mut areas = Vec::new();
    let mut visited = vec![false; nh];
    for start in 0..nh {
        if visited[start] {
            continue;
        }
        let mut boundary = Vec::new();
        let mut h = start;
        while !visited[h] {
            visited[h] = true;
            boundary.push(h);
            h = next(h);
        }
        let mut twice_area = T::zero();
        for &h in &boundary {
            let a = &vertices[origin(h)];
            let b = &vertices[origin(h ^ 1)];
            twice_area = twice_area + (a.x.clone() * &b.y - a.y.clone() * &b.x);
        }
        let unbounded = boundary.iter().any(|&h| edges[h / 2].label == EdgeLabel::Boundary);
        faces.push(Face {
            boundary,
            unbounded,
            outer: twice_area.is_negative(),
        });
        areas.push(twice_area);
    }

    PlanarSubdivision {
        clip_box,
        vertices,
        edges,
        faces,
        twice_areas: areas,
    }
}

pub fn direct_region_count<T: Scalar>(arr: &Arrangement<T>) -> FaceCensus {
    let sub = build_subdivision(arr);
    let regions = sub.interior_faces().count() as u64;
    let edges_1faces = arr
        .lines()
        .iter()
        .map(|l| 1 + arr.points().iter().filter(|p| p.contains_line(&l.id)).count() as u64)
        .sum();
    FaceCensus {
        regions,
        edges_1faces,
        vertices_0faces: arr.points().len() as u64,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspectFace {
    /// Index into [`PlanarSubdivision::faces`].
    pub face: usize,
    pub reason: String,
}

/// Report faces that may fail to be open cells.
///
/// In a connected plane graph every bounded face has a single boundary walk
/// enclosing positive area and there is exactly one outer walk, and each
/// region is such a face with unbounded sectors glued along box arcs. Any
/// departure from that shape is reported rather than repaired.
pub fn face_cell_check<T: Scalar>(arr: &Arrangement<T>) -> Result<(), Vec<SuspectFace>> {
    let sub = build_subdivision(arr);
    let mut suspects = Vec::new();
    if !sub.is_connected() {
        for (i, f) in sub.faces.iter().enumerate() {
            if !f.outer {
                suspects.push(SuspectFace {
                    face: i,
                    reason: "subdivision is disconnected; boundary may have several cycles".into(),
                });
            }
        }
    }
    let outers = sub.faces.iter().filter(|f| f.outer).count();
    for (i, f) in sub.faces.iter().enumerate() {
        if !f.outer && !sub.twice_areas[i].is_positive() {
            suspects.push(SuspectFace {
                face: i,
                reason: "boundary walk encloses no area".into(),
            });
        }
        if f.outer && outers != 1 {
            suspects.push(SuspectFace {
                face: i,
                reason: format!("{outers} outer boundary walks"),
            });
        }
        let mut seen = BTreeSet::new();
        for &h in &f.boundary {
            if !seen.insert(sub.half_edge_origin(h)) && !f.outer {
                suspects.push(SuspectFace {
                    face: i,
                    reason: "boundary walk revisits a vertex".into(),
                });
                break;
            }
        }
    }
    if sub.euler_characteristic() != 2 {
        suspects.push(SuspectFace {
            face: 0,
            reason: format!("Euler characteristic {}", sub.euler_characteristic()),
        });
    }
    if suspects.is_empty() {
        Ok(())
    } else {
        Err(suspects)
    }
}

/// Classify a pair by looking at the four regions the two lines cut the
/// plane into: they cross iff the boundary of every region meets both
/// `a - b` and `b - a`.
pub fn classify_pair_via_regions<T: Scalar>(
    arr: &Arrangement<T>,
    a: &LineId,
    b: &LineId,
) -> Result<PairClass, UnknownId> {
    let la = arr.line(a)?.clone();
    let lb = arr.line(b)?.clone();
    if matches!(crate::model::curve_intersection(&la, &lb), CurveIntersection::Empty) {
        return Ok(PairClass::Disjoint);
    }
    let pair = build_arrangement(vec![la, lb]).expect("pairs of a valid arrangement are valid");
    let sub = build_subdivision(&pair);
    let mut regions = 0;
    for f in sub.interior_faces() {
        regions += 1;
        let labels: BTreeSet<EdgeLabel> = f.boundary.iter().map(|&h| sub.half_edge_label(h)).collect();
        if !(labels.contains(&EdgeLabel::Curve(0)) && labels.contains(&EdgeLabel::Curve(1))) {
            return Ok(PairClass::Touching);
        }
    }
    debug_assert_eq!(regions, 4);
    Ok(PairClass::Crossing)
}

impl PartialOrd for EdgeLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |l: &EdgeLabel| match l {
            EdgeLabel::Curve(i) => (0, *i),
            EdgeLabel::Boundary => (1, 0),
        };
        key(self).cmp(&key(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("resolution {given} is below the safe bound {minimum} for this arrangement")]
    ResolutionTooLow { given: u64, minimum: u64 },
    #[error("a grid of {cells} cells exceeds the limit of {MAX_ORACLE_CELLS}")]
    GridTooLarge { cells: String },
}

/// Largest grid the oracle will allocate.
pub const MAX_ORACLE_CELLS: u64 = 1 << 27;

/// Number of cells of the oracle grid, if it fits in a `u64`.
pub fn oracle_grid_cells<T: Scalar>(setup: &OracleSetup<T>, resolution: u64) -> Option<u64> {
    let res = T::from_int(i64::try_from(resolution).ok()?);
    let nx = (setup.bounds.width() * &res).to_i64_exact()?;
    let ny = (setup.bounds.height() * &res).to_i64_exact()?;
    (nx as u64).checked_mul(ny as u64)
}

/// Geometry of the flood-fill grid for one arrangement.
#[derive(Clone, Debug)]
pub struct OracleSetup<T> {
    /// Twice the feature bounding box, snapped outward to the grid.
    pub bounds: ClipBox<T>,
    /// Curves clipped to `bounds`.
    pub segments: Vec<Piece<T>>,
    /// Squared minimum feature separation.
    pub min_separation2: T,
    /// Feature points with the sine of half the narrowest angle between
    /// pieces meeting there (box edges included).
    pub corners: Vec<(Point<T>, f64)>,
}

/// Box and clipped curves for the oracle at a given resolution (cells per
/// unit length).
pub fn oracle_setup<T: Scalar>(arr: &Arrangement<T>, resolution: u64) -> OracleSetup<T> {
    let feats = arr.feature_points();
    let lo_hi = |f: fn(&Point<T>) -> &T| {
        let lo = feats.iter().map(f).min().cloned().unwrap_or_else(T::zero);
        let hi = feats.iter().map(f).max().cloned().unwrap_or_else(T::zero);
        (lo, hi)
    };
    let (x0, x1) = lo_hi(|p| &p.x);
    let (y0, y1) = lo_hi(|p| &p.y);
    let two = T::from_int(2);
    let cx = (x0.clone() + &x1) / &two;
    let cy = (y0.clone() + &y1) / &two;
    let w = (x1 - x0).max(T::one());
    let h = (y1 - y0).max(T::one());
    let res = T::from_int(resolution as i64);
    let snap_lo = |v: T| (v * &res).floor_val() / &res;
    let snap_hi = |v: T| (v * &res).ceil_val() / &res;
    let bounds = ClipBox::new(
        Point::new(snap_lo(cx.clone() - &w), snap_lo(cy.clone() - &h)),
        Point::new(snap_hi(cx + &w), snap_hi(cy + &h)),
    );

    let mut segments = Vec::new();
    for line in arr.lines() {
        for piece in line.pieces() {
            let far = match piece.kind {
                PieceKind::Segment => piece.end().expect("segment end"),
                PieceKind::Ray => bounds.ray_exit(&piece.origin, &piece.dir),
            };
            segments.push(Piece::segment(piece.origin.clone(), &far));
        }
    }

    let mut points: Vec<Point<T>> = segments
        .iter()
        .flat_map(|s| [s.origin.clone(), s.end().expect("segment")])
        .chain(arr.points().iter().map(|p| p.location.clone()))
        .chain(bounds.corners())
        .collect();
    points.sort();
    points.dedup();
    let box_edges = bounds.edges();
    let all: Vec<&Piece<T>> = segments.iter().chain(box_edges.iter()).collect();
    let mut best: Option<T> = None;
    let mut consider = |d: T| {
        if d.is_positive() && best.as_ref().is_none_or(|b| d < *b) {
            best = Some(d);
        }
    };
    let mut corners = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            consider(p.dist2(q));
        }
        let mut angles = Vec::new();
        for s in &all {
            if !s.contains(p) {
                consider(s.dist2_to(p));
                continue;
            }
            let e = s.end().expect("segment");
            for other in [&s.origin, &e] {
                if other != p {
                    let v = other.sub(p);
                    angles.push(v.y.to_f64_lossy().atan2(v.x.to_f64_lossy()));
                }
            }
        }
        if angles.len() >= 2 {
            angles.sort_by(f64::total_cmp);
            let mut gap = std::f64::consts::TAU + angles[0] - angles[angles.len() - 1];
            for w in angles.windows(2) {
                gap = gap.min(w[1] - w[0]);
            }
            let half = (gap.min(std::f64::consts::PI) / 2.0).max(1e-9);
            corners.push((p.clone(), half.sin()));
        }
    }
    OracleSetup {
        bounds,
        segments,
        min_separation2: best.expect("a box has distinct corners"),
        corners,
    }
}

/// Radius, in cells, of the disk dropped around a feature point: there the
/// wedge between two pieces is about four cells wide.
fn exclusion_radius(sin_half: f64) -> f64 {
    2.0 / sin_half
}

/// Resolution needed so that the dropped disks plus two cells stay below a
/// third of the feature separation.
fn min_res_for<T: Scalar>(setup: &OracleSetup<T>) -> u64 {
    let sep = setup.min_separation2.to_f64_lossy().sqrt();
    let widest = setup
        .corners
        .iter()
        .map(|(_, s)| exclusion_radius(*s))
        .fold(0.0, f64::max);
    // pitch * (widest + 2) < sep / 3
    ((3.0 * (widest + 2.0) / sep).floor() as u64).saturating_add(1)
}

/// Smallest resolution the oracle accepts for this arrangement.
pub fn oracle_min_resolution<T: Scalar>(arr: &Arrangement<T>) -> u64 {
    // The snapped box moves slightly with the resolution; iterate to a
    // self-consistent bound.
    let mut res = 1u64;
    for _ in 0..32 {
        if res > i64::MAX as u64 {
            return u64::MAX;
        }
        let need = min_res_for(&oracle_setup(arr, res));
        if need <= res {
            return res;
        }
        res = need;
    }
    res
}

/// Count connected components of grid cells that no curve touches.
///
/// The grid covers twice the feature bounding box with square cells of side
/// `1 / resolution`. Cells are closed; two free cells are adjacent when they
/// share an edge or a corner (a shared corner of two free cells is itself
/// off every curve). Cells whose centre lies near a feature point are
/// dropped, since narrow wedges there can hold isolated free cells. Refuses
/// resolutions at which a region might lose all its free cells.
pub fn grid_flood_fill_oracle<T: Scalar>(arr: &Arrangement<T>, resolution: u64) -> Result<u64, OracleError> {
    let setup = oracle_setup(arr, resolution.clamp(1, i64::MAX as u64));
    if resolution < min_res_for(&setup) {
        return Err(OracleError::ResolutionTooLow {
            given: resolution,
            minimum: oracle_min_resolution(arr),
        });
    }
    match oracle_grid_cells(&setup, resolution) {
        Some(c) if c <= MAX_ORACLE_CELLS => Ok(flood_fill(&setup, resolution)),
        c => Err(OracleError::GridTooLarge {
            cells: c.map_or_else(|| "more than 2^64".to_string(), |c| c.to_string()),
        }),
    }
}

fn flood_fill<T: Scalar>(setup: &OracleSetup<T>, resolution: u64) -> u64 {
    let res = T::from_int(resolution as i64);
    let b = &setup.bounds;
    let nx = (b.width() * &res).to_i64_exact().expect("snapped box") as usize;
    let ny = (b.height() * &res).to_i64_exact().expect("snapped box") as usize;
    let mut blocked = vec![false; nx * ny];

    // Cells i with [i, i + 1] meeting the closed interval [lo, hi], both in
    // grid units.
    let range = |lo: &T, hi: &T, n: usize| -> Option<(usize, usize)> {
        let a = lo.ceil_val().to_i64_exact().expect("integral") - 1;
        let z = hi.floor_val().to_i64_exact().expect("integral");
        let a = a.max(0);
        let z = z.min(n as i64 - 1);
        (a <= z).then_some((a as usize, z as usize))
    };
    let gx = |x: &T| (x.clone() - &b.min.x) * &res;
    let gy = |y: &T| (y.clone() - &b.min.y) * &res;

    for s in &setup.segments {
        let p = &s.origin;
        let q = s.end().expect("segment");
        let (p, q) = if p.x <= q.x { (p.clone(), q) } else { (q, p.clone()) };
        let (px, qx) = (gx(&p.x), gx(&q.x));
        let (py, qy) = (gy(&p.y), gy(&q.y));
        let Some((c0, c1)) = range(&px, &qx, nx) else { continue };
        for i in c0..=c1 {
            let (ylo, yhi) = if px == qx {
                (py.clone().min(qy.clone()), py.clone().max(qy.clone()))
            } else {
                let x0 = T::from_int(i as i64).max(px.clone());
                let x1 = T::from_int(i as i64 + 1).min(qx.clone());
                let slope = (qy.clone() - &py) / (qx.clone() - &px);
                let y0 = py.clone() + slope.clone() * (x0 - &px);
                let y1 = py.clone() + slope * (x1 - &px);
                (y0.clone().min(y1.clone()), y0.max(y1))
            };
            if let Some((r0, r1)) = range(&ylo, &yhi, ny) {
                for j in r0..=r1 {
                    blocked[j * nx + i] = true;
                }
            }
        }
    }

    for (p, sin_half) in &setup.corners {
        let r = exclusion_radius(*sin_half);
        let r2 = T::from_int((r * r * 1024.0).ceil() as i64) / T::from_int(1024);
        let (px, py) = (gx(&p.x), gy(&p.y));
        let span = r.ceil() as i64 + 1;
        let (ci, cj) = (
            px.floor_val().to_i64_exact().expect("integral"),
            py.floor_val().to_i64_exact().expect("integral"),
        );
        let half = T::half();
        for i in (ci - span).max(0)..=(ci + span).min(nx as i64 - 1) {
            for j in (cj - span).max(0)..=(cj + span).min(ny as i64 - 1) {
                let dx = T::from_int(i) + &half - &px;
                let dy = T::from_int(j) + &half - &py;
                if dx.clone() * &dx + dy.clone() * &dy <= r2 {
                    blocked[j as usize * nx + i as usize] = true;
                }
            }
        }
    }

    let mut label = vec![false; nx * ny];
    let mut components = 0u64;
    let mut queue = VecDeque::new();
    for start in 0..nx * ny {
        if blocked[start] || label[start] {
            continue;
        }
        components += 1;
        label[start] = true;
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            let (i, j) = ((c % nx) as i64, (c / nx) as i64);
            for di in -1..=1i64 {
                for dj in -1..=1i64 {
                    let (a, bj) = (i + di, j + dj);
                    if (di, dj) == (0, 0) || a < 0 || bj < 0 || a >= nx as i64 || bj >= ny as i64 {
                        continue;
                    }
                    let n = bj as usize * nx + a as usize;
                    if !blocked[n] && !label[n] {
                        label[n] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Dir;
    use crate::model::Topoline;
    use num_rational::BigRational;

    type Q = BigRational;
    type P = Point<Q>;
    type L = Topoline<Q>;

    fn straight(id: &str, x: i64, y: i64, dx: i64, dy: i64) -> L {
        L::straight(id, P::from_ints(x, y), Dir::from_ints(dx, dy))
    }

    fn bent(id: &str, x: i64, y: i64, s: (i64, i64), e: (i64, i64)) -> L {
        L::new(
            id,
            Dir::from_ints(s.0, s.1),
            vec![P::from_ints(x, y)],
            Dir::from_ints(e.0, e.1),
        )
    }

    fn arr(lines: Vec<L>) -> Arrangement<Q> {
        build_arrangement(lines).unwrap()
    }

    fn noproj2() -> Arrangement<Q> {
        arr(vec![
            straight("xm1", -1, 0, 0, 1),
            straight("xp1", 1, 0, 0, 1),
            straight("y1", 0, 1, 1, 0),
            bent("gplus", 0, 0, (1, 0), (0, 1)),
        ])
    }

    #[test]
    fn single_line_in_a_fixed_box() {
        let a = arr(vec![straight("x", 0, 0, 1, 0)]);
        let sub = subdivision_in(&a, ClipBox::centered(Q::from_int(10)));
        assert_eq!(sub.interior_faces().count(), 2);
        assert_eq!(sub.euler_characteristic(), 2);
    }

    #[test]
    fn axes_give_four_faces() {
        let a = arr(vec![straight("x", 0, 0, 1, 0), straight("y", 0, 0, 0, 1)]);
        let sub = build_subdivision(&a);
        assert_eq!(sub.interior_faces().count(), 4);
        assert!(sub.interior_faces().all(|f| f.unbounded));
    }

    #[test]
    fn parallel_strip_is_one_region() {
        let a = arr(vec![straight("a", 0, 0, 0, 1), straight("b", 2, 0, 0, 1)]);
        let census = direct_region_count(&a);
        assert_eq!(census.regions, 3);
        assert_eq!(census.vertices_0faces, 0);
        assert_eq!(census.edges_1faces, 2);
        let sub = build_subdivision(&a);
        // The strip touches the box along two arcs but is a single face.
        let strip = sub
            .interior_faces()
            .filter(|f| {
                let labels: BTreeSet<_> = f.boundary.iter().map(|&h| sub.half_edge_label(h)).collect();
                labels.contains(&EdgeLabel::Curve(0)) && labels.contains(&EdgeLabel::Curve(1))
            })
            .count();
        assert_eq!(strip, 1);
    }

    #[test]
    fn counts() {
        assert_eq!(direct_region_count(&noproj2()).regions, 9);
        let census = direct_region_count(&noproj2());
        assert_eq!(census.vertices_0faces, 4);
        // xm1: 1 point, xp1: 2, y1: 3, gplus: 2 -> (1+1)+(2+1)+(3+1)+(2+1)
        assert_eq!(census.edges_1faces, 12);
        assert_eq!(direct_region_count(&Arrangement::<Q>::empty()).regions, 1);
        let general = arr(vec![
            straight("a", 0, 0, 1, 0),
            straight("b", 0, 1, 1, 2),
            straight("c", 3, 0, -1, 3),
            straight("d", 0, 6, 2, -1),
        ]);
        assert_eq!(general.points().len(), 6);
        assert_eq!(direct_region_count(&general).regions, 11);
    }

    #[test]
    fn cells() {
        assert_eq!(face_cell_check(&noproj2()), Ok(()));
        let touching = arr(vec![
            bent("gp", 0, 0, (1, 0), (0, 1)),
            bent("gm", 0, 0, (-1, 0), (0, -1)),
        ]);
        assert_eq!(face_cell_check(&touching), Ok(()));
        assert_eq!(direct_region_count(&touching).regions, 4);
    }

    #[test]
    fn region_classification() {
        let id = |s: &str| LineId::from(s);
        let axes = arr(vec![straight("x", 0, 0, 1, 0), straight("y", 0, 0, 0, 1)]);
        assert_eq!(
            classify_pair_via_regions(&axes, &id("x"), &id("y")),
            Ok(PairClass::Crossing)
        );
        let touching = arr(vec![
            bent("gp", 0, 0, (1, 0), (0, 1)),
            bent("gm", 0, 0, (-1, 0), (0, -1)),
        ]);
        assert_eq!(
            classify_pair_via_regions(&touching, &id("gp"), &id("gm")),
            Ok(PairClass::Touching)
        );
        let n = noproj2();
        assert_eq!(
            classify_pair_via_regions(&n, &id("xp1"), &id("gplus")),
            Ok(PairClass::Crossing)
        );
        assert_eq!(
            classify_pair_via_regions(&n, &id("xm1"), &id("gplus")),
            Ok(PairClass::Disjoint)
        );
    }

    #[test]
    fn oracle_examples() {
        let one = arr(vec![straight("x", 0, 0, 1, 0)]);
        let r = oracle_min_resolution(&one);
        assert_eq!(grid_flood_fill_oracle(&one, r), Ok(2));
        let n = noproj2();
        let r = oracle_min_resolution(&n);
        assert!(matches!(
            grid_flood_fill_oracle(&n, 8),
            Err(OracleError::ResolutionTooLow { given: 8, .. })
        ));
        assert_eq!(grid_flood_fill_oracle(&n, r), Ok(9));
        assert_eq!(grid_flood_fill_oracle(&n, 2 * r), Ok(9));
        let three = arr(vec![
            straight("x", 0, 0, 1, 0),
            straight("y", 0, 0, 0, 1),
            straight("d", 0, 0, 1, 1),
        ]);
        let r = oracle_min_resolution(&three);
        assert_eq!(grid_flood_fill_oracle(&three, r), Ok(6));
    }

    #[test]
    fn oracle_refuses_coarse_grids() {
        let close = arr(vec![
            straight("a", 0, 0, 1, 0),
            L::straight(
                "b",
                P::new(Q::from_int(0), Q::new(1.into(), 10.into())),
                Dir::from_ints(1, 0),
            ),
        ]);
        let min = oracle_min_resolution(&close);
        assert!(min > 10);
        assert_eq!(
            grid_flood_fill_oracle(&close, 2),
            Err(OracleError::ResolutionTooLow { given: 2, minimum: min })
        );
        assert_eq!(grid_flood_fill_oracle(&close, min), Ok(3));
    }
}
