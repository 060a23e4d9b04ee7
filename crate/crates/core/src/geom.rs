//! Exact planar primitives: points, vectors, oriented directions and the
//! straight pieces (segments and rays) that topolines are made of.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(T::from_int(x), T::from_int(y))
    }

    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    pub fn sub(&self, other: &Point<T>) -> Vector<T> {
        Vector {
            x: self.x.clone() - &other.x,
            y: self.y.clone() - &other.y,
        }
    }

    pub fn add(&self, v: &Vector<T>) -> Point<T> {
        Point::new(self.x.clone() + &v.x, self.y.clone() + &v.y)
    }

    /// `self + t * v`
    pub fn offset(&self, v: &Vector<T>, t: &T) -> Point<T> {
        Point::new(self.x.clone() + v.x.clone() * t, self.y.clone() + v.y.clone() * t)
    }

    pub fn midpoint(&self, other: &Point<T>) -> Point<T> {
        let h = T::half();
        Point::new((self.x.clone() + &other.x) * &h, (self.y.clone() + &other.y) * &h)
    }

    pub fn dist2(&self, other: &Point<T>) -> T {
        self.sub(other).norm2()
    }
}

impl<T: Scalar> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<T: Scalar> Vector<T> {
    pub fn new(x: T, y: T) -> Self {
        Vector { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vector::new(T::from_int(x), T::from_int(y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn neg(&self) -> Vector<T> {
        Vector::new(-self.x.clone(), -self.y.clone())
    }

    pub fn scale(&self, t: &T) -> Vector<T> {
        Vector::new(self.x.clone() * t, self.y.clone() * t)
    }

    pub fn cross(&self, other: &Vector<T>) -> T {
        self.x.clone() * &other.y - self.y.clone() * &other.x
    }

    pub fn dot(&self, other: &Vector<T>) -> T {
        self.x.clone() * &other.x + self.y.clone() * &other.y
    }

    pub fn norm2(&self) -> T {
        self.dot(self)
    }

    /// True if `other` is a positive multiple of `self`.
    pub fn same_direction(&self, other: &Vector<T>) -> bool {
        self.cross(other).is_zero() && self.dot(other).is_positive()
    }
}

/// 0 for directions in the half-open upper half plane `[0, pi)`, 1 otherwise.
fn half_plane<T: Scalar>(v: &Vector<T>) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Compare two nonzero vectors by counterclockwise angle measured from the
/// positive x axis, in `[0, 2pi)`.
pub fn angle_cmp<T: Scalar>(a: &Vector<T>, b: &Vector<T>) -> Ordering {
    half_plane(a).cmp(&half_plane(b)).then_with(|| {
        let c = a.cross(b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Compare `a` and `b` by counterclockwise angle measured from `base`; the
/// direction of `base` itself counts as angle zero.
pub fn angle_cmp_from<T: Scalar>(base: &Vector<T>, a: &Vector<T>, b: &Vector<T>) -> Ordering {
    // Rotate so that base lies on the positive x axis: multiply by conj(base).
    let rot = |v: &Vector<T>| Vector::new(v.dot(base), base.cross(v));
    angle_cmp(&rot(a), &rot(b))
}

/// True if `x` lies strictly inside the counterclockwise arc from `from` to
/// `to`. The arc is empty when `from` and `to` point the same way.
pub fn strictly_ccw_between<T: Scalar>(from: &Vector<T>, x: &Vector<T>, to: &Vector<T>) -> bool {
    if from.same_direction(x) {
        return false;
    }
    angle_cmp_from(from, x, to) == Ordering::Less
}

/// An oriented direction, stored as a coprime integer pair so that equality
/// of `Dir`s is equality of directions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dir<T> {
    dx: T,
    dy: T,
}

impl<T: Scalar> Dir<T> {
    pub fn new(dx: T, dy: T) -> Option<Self> {
        if dx.is_zero() && dy.is_zero() {
            return None;
        }
        let (dx, dy) = T::primitive_pair(&dx, &dy);
        Some(Dir { dx, dy })
    }

    pub fn from_ints(dx: i64, dy: i64) -> Self {
        Dir::new(T::from_int(dx), T::from_int(dy)).expect("zero direction")
    }

    pub fn from_vector(v: &Vector<T>) -> Option<Self> {
        Dir::new(v.x.clone(), v.y.clone())
    }

    pub fn dx(&self) -> &T {
        &self.dx
    }

    pub fn dy(&self) -> &T {
        &self.dy
    }

    pub fn vector(&self) -> Vector<T> {
        Vector::new(self.dx.clone(), self.dy.clone())
    }

    pub fn reversed(&self) -> Dir<T> {
        Dir {
            dx: -self.dx.clone(),
            dy: -self.dy.clone(),
        }
    }
}

impl<T: Scalar> fmt::Display for Dir<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.dx, self.dy)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceKind {
    /// `origin + t * dir` for `t` in `[0, 1]`.
    Segment,
    /// `origin + t * dir` for `t >= 0`.
    Ray,
}

/// A closed straight piece of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece<T> {
    pub origin: Point<T>,
    pub dir: Vector<T>,
    pub kind: PieceKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PieceHit<T> {
    None,
    Point(Point<T>),
    /// The pieces share a sub-piece of positive length.
    Overlap,
}

impl<T: Scalar> Piece<T> {
    pub fn segment(a: Point<T>, b: &Point<T>) -> Self {
        let dir = b.sub(&a);
        Piece {
            origin: a,
            dir,
            kind: PieceKind::Segment,
        }
    }

    pub fn ray(origin: Point<T>, dir: Vector<T>) -> Self {
        Piece {
            origin,
            dir,
            kind: PieceKind::Ray,
        }
    }

    fn upper(&self) -> Option<T> {
        match self.kind {
            PieceKind::Segment => Some(T::one()),
            PieceKind::Ray => None,
        }
    }

    fn in_range(&self, t: &T) -> bool {
        !t.is_negative() && self.upper().is_none_or(|u| *t <= u)
    }

    pub fn at(&self, t: &T) -> Point<T> {
        self.origin.offset(&self.dir, t)
    }

    pub fn end(&self) -> Option<Point<T>> {
        self.upper().map(|u| self.at(&u))
    }

    /// Parameter of `p` on this piece, if `p` lies on it.
    pub fn param_of(&self, p: &Point<T>) -> Option<T> {
        let w = p.sub(&self.origin);
        if !self.dir.cross(&w).is_zero() {
            return None;
        }
        let t = self.dir.dot(&w) / self.dir.norm2();
        self.in_range(&t).then_some(t)
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        self.param_of(p).is_some()
    }

    pub fn intersect(&self, other: &Piece<T>) -> PieceHit<T> {
        let u = &self.dir;
        let v = &other.dir;
        let w = other.origin.sub(&self.origin);
        let det = u.cross(v);
        if !det.is_zero() {
            let s = w.cross(v) / &det;
            let t = w.cross(u) / &det;
            if self.in_range(&s) && other.in_range(&t) {
                return PieceHit::Point(self.at(&s));
            }
            return PieceHit::None;
        }
        if !u.cross(&w).is_zero() {
            return PieceHit::None;
        }
        // Collinear: map the other piece's parameter range onto ours.
        let uu = u.norm2();
        let s0 = u.dot(&w) / &uu;
        let slope = u.dot(v) / &uu;
        let (lo, hi) = match other.upper() {
            Some(up) => {
                let s1 = s0.clone() + slope * &up;
                if s0 <= s1 {
                    (Some(s0), Some(s1))
                } else {
                    (Some(s1), Some(s0))
                }
            }
            None if slope.is_positive() => (Some(s0), None),
            None => (None, Some(s0)),
        };
        // Intersect [lo, hi] with [0, self.upper()].
        let lo = match lo {
            Some(l) if l.is_positive() => l,
            _ => T::zero(),
        };
        let hi = match (hi, self.upper()) {
            (Some(h), Some(u)) => Some(if h < u { h } else { u }),
            (Some(h), None) => Some(h),
            (None, u) => u,
        };
        match hi {
            Some(h) if h < lo => PieceHit::None,
            Some(h) if h == lo => PieceHit::Point(self.at(&lo)),
            _ => PieceHit::Overlap,
        }
    }

    /// Squared distance from `p` to the closed piece.
    pub fn dist2_to(&self, p: &Point<T>) -> T {
        let w = p.sub(&self.origin);
        let t = self.dir.dot(&w) / self.dir.norm2();
        let t = if t.is_negative() {
            T::zero()
        } else {
            match self.upper() {
                Some(u) if t > u => u,
                _ => t,
            }
        };
        self.at(&t).dist2(p)
    }
}

/// Closed axis-aligned box.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClipBox<T> {
    pub min: Point<T>,
    pub max: Point<T>,
}

impl<T: Scalar> ClipBox<T> {
    pub fn new(min: Point<T>, max: Point<T>) -> Self {
        assert!(min.x < max.x && min.y < max.y, "degenerate box");
        ClipBox { min, max }
    }

    /// Centered square `[-r, r]^2`.
    pub fn centered(r: T) -> Self {
        ClipBox::new(Point::new(-r.clone(), -r.clone()), Point::new(r.clone(), r))
    }

    /// Smallest box containing `points`, grown by `margin` on every side.
    /// Falls back to `[-margin, margin]^2` for an empty input.
    pub fn around<'a, I>(points: I, margin: &T) -> Self
    where
        I: IntoIterator<Item = &'a Point<T>>,
    {
        let mut it = points.into_iter();
        let Some(first) = it.next() else {
            return ClipBox::centered(margin.clone());
        };
        let (mut x0, mut y0, mut x1, mut y1) = (first.x.clone(), first.y.clone(), first.x.clone(), first.y.clone());
        for p in it {
            if p.x < x0 {
                x0 = p.x.clone();
            }
            if p.x > x1 {
                x1 = p.x.clone();
            }
            if p.y < y0 {
                y0 = p.y.clone();
            }
            if p.y > y1 {
                y1 = p.y.clone();
            }
        }
        ClipBox::new(
            Point::new(x0 - margin, y0 - margin),
            Point::new(x1 + margin, y1 + margin),
        )
    }

    pub fn width(&self) -> T {
        self.max.x.clone() - &self.min.x
    }

    pub fn height(&self) -> T {
        self.max.y.clone() - &self.min.y
    }

    pub fn strictly_contains(&self, p: &Point<T>) -> bool {
        self.min.x < p.x && p.x < self.max.x && self.min.y < p.y && p.y < self.max.y
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    pub fn on_boundary(&self, p: &Point<T>) -> bool {
        self.contains(p) && !self.strictly_contains(p)
    }

    /// Corners in counterclockwise order starting from `min`.
    pub fn corners(&self) -> [Point<T>; 4] {
        [
            self.min.clone(),
            Point::new(self.max.x.clone(), self.min.y.clone()),
            self.max.clone(),
            Point::new(self.min.x.clone(), self.max.y.clone()),
        ]
    }

    pub fn edges(&self) -> Vec<Piece<T>> {
        let c = self.corners();
        (0..4).map(|i| Piece::segment(c[i].clone(), &c[(i + 1) % 4])).collect()
    }

    /// Where a ray starting strictly inside the box leaves it.
    pub fn ray_exit(&self, origin: &Point<T>, dir: &Vector<T>) -> Point<T> {
        debug_assert!(self.strictly_contains(origin));
        let mut best: Option<T> = None;
        let mut consider = |t: T| {
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        };
        if dir.x.is_positive() {
            consider((self.max.x.clone() - &origin.x) / &dir.x);
        } else if dir.x.is_negative() {
            consider((self.min.x.clone() - &origin.x) / &dir.x);
        }
        if dir.y.is_positive() {
            consider((self.max.y.clone() - &origin.y) / &dir.y);
        } else if dir.y.is_negative() {
            consider((self.min.y.clone() - &origin.y) / &dir.y);
        }
        origin.offset(dir, &best.expect("zero ray direction"))
    }

    /// Counterclockwise perimeter position of a boundary point, starting at
    /// `min`, in `[0, perimeter)`.
    pub fn perimeter_param(&self, p: &Point<T>) -> T {
        debug_assert!(self.on_boundary(p));
        let w = self.width();
        let h = self.height();
        if p.y == self.min.y && p.x < self.max.x {
            p.x.clone() - &self.min.x
        } else if p.x == self.max.x && p.y < self.max.y {
            w + (p.y.clone() - &self.min.y)
        } else if p.y == self.max.y && p.x > self.min.x {
            w + h + (self.max.x.clone() - &p.x)
        } else {
            w.clone() + w + h + (self.max.y.clone() - &p.y)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Point<BigRational>;
    type V = Vector<BigRational>;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn dir_canonical_form() {
        let d = Dir::new(r(2, 3), r(-4, 3)).unwrap();
        assert_eq!(d, Dir::from_ints(1, -2));
        assert!(Dir::new(r(0, 1), r(0, 1)).is_none());
        assert_ne!(Dir::<BigRational>::from_ints(1, 0), Dir::from_ints(-1, 0));
    }

    #[test]
    fn angular_order() {
        let dirs: Vec<V> = [(0, -1), (1, 0), (-1, 0), (1, 1), (0, 1), (1, -1)]
            .iter()
            .map(|&(x, y)| V::from_ints(x, y))
            .collect();
        let mut sorted = dirs.clone();
        sorted.sort_by(angle_cmp);
        let want: Vec<V> = [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1), (1, -1)]
            .iter()
            .map(|&(x, y)| V::from_ints(x, y))
            .collect();
        assert_eq!(sorted, want);
    }

    #[test]
    fn ccw_arc() {
        let e = V::from_ints(1, 0);
        let s = V::from_ints(-1, 0);
        assert!(strictly_ccw_between(&e, &V::from_ints(0, 1), &s));
        assert!(!strictly_ccw_between(&e, &V::from_ints(0, -1), &s));
        // Degenerate arc is empty.
        assert!(!strictly_ccw_between(&e, &V::from_ints(0, 1), &e));
    }

    #[test]
    fn crossing_segments() {
        let a = Piece::segment(P::from_ints(0, 0), &P::from_ints(2, 2));
        let b = Piece::segment(P::from_ints(0, 2), &P::from_ints(2, 0));
        assert_eq!(a.intersect(&b), PieceHit::Point(P::from_ints(1, 1)));
    }

    #[test]
    fn collinear_cases() {
        let a = Piece::segment(P::from_ints(0, 0), &P::from_ints(2, 0));
        let touching = Piece::segment(P::from_ints(2, 0), &P::from_ints(5, 0));
        let overlap = Piece::ray(P::from_ints(1, 0), V::from_ints(-1, 0));
        let apart = Piece::ray(P::from_ints(3, 0), V::from_ints(1, 0));
        assert_eq!(a.intersect(&touching), PieceHit::Point(P::from_ints(2, 0)));
        assert_eq!(a.intersect(&overlap), PieceHit::Overlap);
        assert_eq!(a.intersect(&apart), PieceHit::None);
        let opposite = Piece::ray(P::from_ints(0, 0), V::from_ints(-1, 0));
        assert_eq!(a.intersect(&opposite), PieceHit::Point(P::from_ints(0, 0)));
        let ray_a = Piece::ray(P::from_ints(0, 0), V::from_ints(1, 0));
        let ray_b = Piece::ray(P::from_ints(3, 0), V::from_ints(-1, 0));
        assert_eq!(ray_a.intersect(&ray_b), PieceHit::Overlap);
    }

    #[test]
    fn parallel_disjoint() {
        let a = Piece::ray(P::from_ints(0, 0), V::from_ints(1, 0));
        let b = Piece::ray(P::from_ints(0, 1), V::from_ints(1, 0));
        assert_eq!(a.intersect(&b), PieceHit::None);
    }

    #[test]
    fn distances() {
        let s = Piece::segment(P::from_ints(0, 0), &P::from_ints(4, 0));
        assert_eq!(s.dist2_to(&P::from_ints(2, 3)), r(9, 1));
        assert_eq!(s.dist2_to(&P::from_ints(7, 4)), r(25, 1));
    }

    #[test]
    fn box_exit_and_perimeter() {
        let b = ClipBox::centered(r(2, 1));
        let e = b.ray_exit(&P::from_ints(0, 0), &V::from_ints(1, 2));
        assert_eq!(e, P::new(r(1, 1), r(2, 1)));
        assert_eq!(b.perimeter_param(&P::from_ints(-2, -2)), r(0, 1));
        assert_eq!(b.perimeter_param(&P::from_ints(2, 0)), r(6, 1));
        assert_eq!(b.perimeter_param(&e), r(9, 1));
        assert_eq!(b.perimeter_param(&P::from_ints(-2, 0)), r(14, 1));
    }
}
