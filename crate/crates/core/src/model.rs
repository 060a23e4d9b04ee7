//! Piecewise-linear topological lines.
//!
//! A [`Topoline`] is a start ray, a chain of segments and an end ray. The ray
//! directions point away from the curve, so the curve is traversed by coming
//! in from infinity along `start_ray`, walking the vertices in order, and
//! leaving along `end_ray`.

use std::cmp::Ordering;
use std::fmt;

use crate::geom::{strictly_ccw_between, Dir, Piece, PieceHit, Point, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId(pub String);

impl LineId {
    pub fn new(s: impl Into<String>) -> Self {
        LineId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for LineId {
    fn from(s: &str) -> Self {
        LineId(s.to_owned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Topoline<T> {
    pub id: LineId,
    pub start_ray: Dir<T>,
    pub vertices: Vec<Point<T>>,
    pub end_ray: Dir<T>,
}

/// Why a curve is not a topoline. Piece indices follow [`Topoline::pieces`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TopolineViolation {
    #[error("no vertices")]
    NoVertices,
    #[error("zero-length segment at piece {piece}")]
    ZeroLengthSegment { piece: usize },
    #[error("piece {next} doubles back over piece {piece}")]
    DoublesBack { piece: usize, next: usize },
    #[error("pieces {first} and {second} meet at {at}")]
    SelfIntersection { first: usize, second: usize, at: String },
}

/// Exact intersection of two curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveIntersection<T> {
    Empty,
    /// Sorted, without duplicates.
    Points(Vec<Point<T>>),
    Overlap,
}

/// Position along a curve, totally ordered from the start end to the end
/// end. Use [`Topoline::locate`] to obtain one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePos<T> {
    pub piece: usize,
    key: T,
}

impl<T: Scalar> PartialOrd for CurvePos<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for CurvePos<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.piece.cmp(&other.piece).then_with(|| self.key.cmp(&other.key))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One of the two components of a curve minus a point on it: `Plus` runs
/// toward the end ray, `Minus` toward the start ray.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Half {
    Plus,
    Minus,
}

impl Half {
    pub fn sign(self) -> char {
        match self {
            Half::Plus => '+',
            Half::Minus => '-',
        }
    }

    pub fn opposite(self) -> Half {
        match self {
            Half::Plus => Half::Minus,
            Half::Minus => Half::Plus,
        }
    }
}

/// The part of a curve on one side of a point, listed outward from the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfCurve<T> {
    /// Vertices strictly beyond the splitting point, nearest first.
    pub vertices: Vec<Point<T>>,
    /// Direction of the final ray.
    pub ray: Dir<T>,
}

impl<T: Scalar> Topoline<T> {
    pub fn new(id: impl Into<LineId>, start_ray: Dir<T>, vertices: Vec<Point<T>>, end_ray: Dir<T>) -> Self {
        Topoline {
            id: id.into(),
            start_ray,
            vertices,
            end_ray,
        }
    }

    /// The straight line through `p` with direction `d`, oriented along `d`.
    pub fn straight(id: impl Into<LineId>, p: Point<T>, d: Dir<T>) -> Self {
        Topoline::new(id, d.reversed(), vec![p], d)
    }

    /// Pieces in traversal order: start ray (parametrised away from the first
    /// vertex), the segments, then the end ray.
    pub fn pieces(&self) -> Vec<Piece<T>> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n + 1);
        out.push(Piece::ray(self.vertices[0].clone(), self.start_ray.vector()));
        for w in self.vertices.windows(2) {
            out.push(Piece::segment(w[0].clone(), &w[1]));
        }
        out.push(Piece::ray(self.vertices[n - 1].clone(), self.end_ray.vector()));
        out
    }

    /// Direction of travel along piece `i`.
    fn travel(&self, pieces: &[Piece<T>], i: usize) -> Vector<T> {
        if i == 0 {
            pieces[0].dir.neg()
        } else {
            pieces[i].dir.clone()
        }
    }

    pub fn is_valid(&self) -> bool {
        validate_topoline(self).is_ok()
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        point_on_curve(self, p)
    }

    /// Position of `p` along the curve, or `None` if `p` is not on it.
    pub fn locate(&self, p: &Point<T>) -> Option<CurvePos<T>> {
        self.pieces().iter().enumerate().find_map(|(i, piece)| {
            piece.param_of(p).map(|t| CurvePos {
                piece: i,
                key: if i == 0 { -t } else { t },
            })
        })
    }

    /// Index of `p` among the vertices, if it is one.
    pub fn vertex_index(&self, p: &Point<T>) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    /// Outgoing directions at a point on the curve: toward the end ray, then
    /// toward the start ray.
    pub fn directions_at(&self, p: &Point<T>) -> Option<(Dir<T>, Dir<T>)> {
        let n = self.vertices.len();
        if let Some(i) = self.vertex_index(p) {
            let back = if i == 0 {
                self.start_ray.clone()
            } else {
                Dir::from_vector(&self.vertices[i - 1].sub(p))?
            };
            let fwd = if i + 1 == n {
                self.end_ray.clone()
            } else {
                Dir::from_vector(&self.vertices[i + 1].sub(p))?
            };
            return Some((fwd, back));
        }
        let pieces = self.pieces();
        let pos = self.locate(p)?;
        let fwd = Dir::from_vector(&self.travel(&pieces, pos.piece))?;
        let back = fwd.reversed();
        Some((fwd, back))
    }

    /// The half of the curve beyond `p` in the given direction.
    pub fn half_from(&self, p: &Point<T>, half: Half) -> Option<HalfCurve<T>> {
        let pos = self.locate(p)?;
        let n = self.vertices.len();
        // Vertex i sits at the junction of piece i and piece i + 1.
        let on_vertex = self.vertex_index(p);
        match half {
            Half::Plus => {
                let first = match on_vertex {
                    Some(i) => i + 1,
                    None => pos.piece,
                };
                Some(HalfCurve {
                    vertices: self.vertices[first.min(n)..].to_vec(),
                    ray: self.end_ray.clone(),
                })
            }
            Half::Minus => {
                let upto = match on_vertex {
                    Some(i) => i,
                    None => pos.piece,
                };
                let mut vs = self.vertices[..upto].to_vec();
                vs.reverse();
                Some(HalfCurve {
                    vertices: vs,
                    ray: self.start_ray.clone(),
                })
            }
        }
    }

    /// A point of the open half-curve near `p`, useful as a probe.
    pub fn probe_point(&self, p: &Point<T>, half: Half) -> Option<Point<T>> {
        let h = self.half_from(p, half)?;
        Some(match h.vertices.first() {
            Some(v) => p.midpoint(v),
            None => p.add(&h.ray.vector()),
        })
    }

    /// Which side of this curve `p` lies on; `None` when `p` is on the curve.
    ///
    /// Left is the side on the left when walking from the start ray to the end
    /// ray. Decided by exact ray casting: the probe ray avoids every vertex and
    /// is parallel to no piece, and the side of the far end of the probe ray is
    /// read off the asymptotic directions of the two curve rays.
    pub fn side_of(&self, p: &Point<T>) -> Option<Side> {
        if self.contains(p) {
            return None;
        }
        let pieces = self.pieces();
        let probe = probe_directions::<T>()
            .find(|r| {
                pieces.iter().all(|pc| !pc.dir.cross(r).is_zero())
                    && self.vertices.iter().all(|v| {
                        let w = v.sub(p);
                        !(w.cross(r).is_zero() && w.dot(r).is_positive())
                    })
            })
            .expect("probe directions are unbounded");
        let probe_ray = Piece::ray(p.clone(), probe.clone());
        let crossings = pieces
            .iter()
            .filter(|pc| matches!(probe_ray.intersect(pc), PieceHit::Point(_)))
            .count();
        let far_left = strictly_ccw_between(&self.end_ray.vector(), &probe, &self.start_ray.vector());
        let left = far_left ^ (crossings % 2 == 1);
        Some(if left { Side::Left } else { Side::Right })
    }

    /// Apply `p -> m * p + t` to the curve. `m` must be invertible.
    pub fn map_affine(&self, m: [[T; 2]; 2], t: &Vector<T>) -> Topoline<T> {
        let lin = |v: &Vector<T>| {
            Vector::new(
                m[0][0].clone() * &v.x + m[0][1].clone() * &v.y,
                m[1][0].clone() * &v.x + m[1][1].clone() * &v.y,
            )
        };
        let pt = |p: &Point<T>| Point::origin().add(&lin(&p.sub(&Point::origin()))).add(t);
        let dir = |d: &Dir<T>| Dir::from_vector(&lin(&d.vector())).expect("singular map");
        Topoline {
            id: self.id.clone(),
            start_ray: dir(&self.start_ray),
            vertices: self.vertices.iter().map(pt).collect(),
            end_ray: dir(&self.end_ray),
        }
    }

    /// Drop vertices where the curve continues straight on, keeping at least
    /// one vertex.
    pub fn simplified(&self) -> Topoline<T> {
        let mut vs = self.vertices.clone();
        let mut i = 0;
        while i < vs.len() && vs.len() > 1 {
            let before = if i == 0 {
                self.start_ray.vector().neg()
            } else {
                vs[i].sub(&vs[i - 1])
            };
            let after = if i + 1 == vs.len() {
                self.end_ray.vector()
            } else {
                vs[i + 1].sub(&vs[i])
            };
            if before.same_direction(&after) {
                vs.remove(i);
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
        Topoline {
            id: self.id.clone(),
            start_ray: self.start_ray.clone(),
            vertices: vs,
            end_ray: self.end_ray.clone(),
        }
    }
}

/// Directions `(1, k)` and `(k, 1)`, `(-1, k)`, ... for `k = 1, 2, ...`;
/// infinitely many pairwise non-parallel rational directions.
fn probe_directions<T: Scalar>() -> impl Iterator<Item = Vector<T>> {
    (1i64..).flat_map(|k| {
        [
            Vector::from_ints(1, k),
            Vector::from_ints(k + 1, 1),
            Vector::from_ints(-1, k),
            Vector::from_ints(k + 1, -1),
        ]
    })
}

/// Check that a curve is a proper simple PL curve with both ends at infinity.
pub fn validate_topoline<T: Scalar>(t: &Topoline<T>) -> Result<(), TopolineViolation> {
    if t.vertices.is_empty() {
        return Err(TopolineViolation::NoVertices);
    }
    let pieces = t.pieces();
    for (i, pc) in pieces.iter().enumerate() {
        if pc.dir.is_zero() {
            return Err(TopolineViolation::ZeroLengthSegment { piece: i });
        }
    }
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let hit = pieces[i].intersect(&pieces[j]);
            if j == i + 1 {
                if hit == PieceHit::Overlap {
                    return Err(TopolineViolation::DoublesBack { piece: i, next: j });
                }
            } else if let PieceHit::Point(p) = hit {
                return Err(TopolineViolation::SelfIntersection {
                    first: i,
                    second: j,
                    at: p.to_string(),
                });
            } else if hit == PieceHit::Overlap {
                return Err(TopolineViolation::SelfIntersection {
                    first: i,
                    second: j,
                    at: "a shared sub-piece".into(),
                });
            }
        }
    }
    Ok(())
}

pub fn curve_intersection<T: Scalar>(a: &Topoline<T>, b: &Topoline<T>) -> CurveIntersection<T> {
    let pa = a.pieces();
    let pb = b.pieces();
    let mut pts = Vec::new();
    for x in &pa {
        for y in &pb {
            match x.intersect(y) {
                PieceHit::None => {}
                PieceHit::Point(p) => pts.push(p),
                PieceHit::Overlap => return CurveIntersection::Overlap,
            }
        }
    }
    if pts.is_empty() {
        return CurveIntersection::Empty;
    }
    pts.sort();
    pts.dedup();
    CurveIntersection::Points(pts)
}

pub fn point_on_curve<T: Scalar>(t: &Topoline<T>, p: &Point<T>) -> bool {
    t.pieces().iter().any(|pc| pc.contains(p))
}
