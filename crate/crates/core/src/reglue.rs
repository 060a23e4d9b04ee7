//! Reglueing: turn any planar topoline arrangement into an affine one with
//! the same union of curves and the same faces.
//!
//! At a point where some pair of lines touches, the `2k` branches leaving the
//! point are listed counterclockwise and branch `i` is glued to branch
//! `i + k`. Every pair of the new lines then alternates around the point, so
//! the number of touching pairs drops.

use std::collections::BTreeSet;

use crate::arrangement::{build_arrangement, Arrangement, ArrangementViolation, IntersectionPoint};
use crate::geom::{Dir, Point};
use crate::model::{LineId, Topoline};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReglueStep<T> {
    pub point: IntersectionPoint<T>,
    /// Ids of the lines through the point, sorted.
    pub old_ids: Vec<LineId>,
    /// The reassembled lines; line `i` joins branches `i` and `i + k` of the
    /// cycle and takes the id `old_ids[i]`.
    pub new_lines: Vec<Topoline<T>>,
    pub noncrossing_before: usize,
    pub noncrossing_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReglueError {
    #[error("no touching pair meets at {0}")]
    NothingToReglue(String),
    #[error("no intersection point at {0}")]
    NotAnIntersection(String),
    #[error("internal error: reglued arrangement is invalid: {0}")]
    Internal(ArrangementViolation),
    #[error("internal error: touching pairs went from {before} to {after}")]
    NoDescent { before: usize, after: usize },
}

/// The intersection point of the lexicographically smallest touching pair.
pub fn find_noncrossing_point<T: Scalar>(arr: &Arrangement<T>) -> Option<&IntersectionPoint<T>> {
    let (a, b) = arr.touching_pairs().into_iter().min()?;
    arr.points().iter().find(|p| p.contains_line(&a) && p.contains_line(&b))
}

pub fn reglue_at<T: Scalar>(
    arr: &Arrangement<T>,
    location: &Point<T>,
) -> Result<(Arrangement<T>, ReglueStep<T>), ReglueError> {
    let point = arr
        .point_at(location)
        .ok_or_else(|| ReglueError::NotAnIntersection(location.to_string()))?
        .clone();
    let before = arr.touching_pairs().len();
    let touching_here = arr
        .touching_pairs()
        .iter()
        .any(|(a, b)| point.contains_line(a) && point.contains_line(b));
    if !touching_here {
        return Err(ReglueError::NothingToReglue(location.to_string()));
    }

    let halves: Vec<_> = point
        .branch_cycle
        .iter()
        .map(|b| {
            arr.line(&b.line_id)
                .expect("branch of a known line")
                .half_from(location, b.half)
                .expect("point lies on its lines")
        })
        .collect();
    let k = point.lines.len();
    let old_ids = point.lines.clone();
    let new_lines: Vec<Topoline<T>> = (0..k)
        .map(|i| {
            let (first, second) = (&halves[i], &halves[i + k]);
            let mut vertices: Vec<Point<T>> = first.vertices.iter().rev().cloned().collect();
            vertices.push(location.clone());
            vertices.extend(second.vertices.iter().cloned());
            Topoline::new(old_ids[i].clone(), first.ray.clone(), vertices, second.ray.clone()).simplified()
        })
        .collect();

    let mut slots: Vec<usize> = old_ids.iter().map(|id| arr.position(id).expect("known line")).collect();
    slots.sort_unstable();
    let mut lines = arr.lines().to_vec();
    for (slot, line) in slots.iter().zip(&new_lines) {
        lines[*slot] = line.clone();
    }
    let next = build_arrangement(lines).map_err(ReglueError::Internal)?;
    let after = next.touching_pairs().len();
    if after >= before {
        return Err(ReglueError::NoDescent { before, after });
    }
    Ok((
        next,
        ReglueStep {
            point,
            old_ids,
            new_lines,
            noncrossing_before: before,
            noncrossing_after: after,
        },
    ))
}

/// Reglue until no pair touches.
pub fn make_affine<T: Scalar>(arr: &Arrangement<T>) -> Result<(Arrangement<T>, Vec<ReglueStep<T>>), ReglueError> {
    let mut current = arr.clone();
    let mut steps = Vec::new();
    while let Some(p) = find_noncrossing_point(&current) {
        let location = p.location.clone();
        let (next, step) = reglue_at(&current, &location)?;
        current = next;
        steps.push(step);
    }
    Ok((current, steps))
}

/// One maximal straight piece of the union of curves, cut at intersection
/// points and at bends.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SkeletonPiece<T> {
    /// Endpoints in increasing order.
    Segment(Point<T>, Point<T>),
    Ray(Point<T>, Dir<T>),
    /// `a x + b y = c` with `(a, b)` primitive and its first nonzero entry
    /// positive.
    Line(T, T, T),
}

/// Canonical decomposition of the union of the curves into straight pieces.
/// Two arrangements with the same skeleton have the same union as point
/// sets and the same intersection points.
pub fn skeleton<T: Scalar>(arr: &Arrangement<T>) -> Vec<SkeletonPiece<T>> {
    let mut out = Vec::new();
    for line in arr.lines() {
        let simple = line.simplified();
        let mut stops: BTreeSet<(crate::model::CurvePos<T>, Point<T>)> = BTreeSet::new();
        for (i, v) in simple.vertices.iter().enumerate() {
            let before = if i == 0 {
                simple.start_ray.vector().neg()
            } else {
                v.sub(&simple.vertices[i - 1])
            };
            let after = if i + 1 == simple.vertices.len() {
                simple.end_ray.vector()
            } else {
                simple.vertices[i + 1].sub(v)
            };
            if !before.same_direction(&after) {
                stops.insert((simple.locate(v).expect("own vertex"), v.clone()));
            }
        }
        for p in arr.points().iter().filter(|p| p.contains_line(&line.id)) {
            stops.insert((simple.locate(&p.location).expect("on line"), p.location.clone()));
        }
        let stops: Vec<Point<T>> = stops.into_iter().map(|(_, p)| p).collect();
        match (stops.first(), stops.last()) {
            (Some(first), Some(last)) => {
                out.push(SkeletonPiece::Ray(first.clone(), simple.start_ray.clone()));
                for w in stops.windows(2) {
                    let (a, b) = (w[0].clone(), w[1].clone());
                    out.push(if a <= b {
                        SkeletonPiece::Segment(a, b)
                    } else {
                        SkeletonPiece::Segment(b, a)
                    });
                }
                out.push(SkeletonPiece::Ray(last.clone(), simple.end_ray.clone()));
            }
            _ => {
                let d = simple.end_ray.vector();
                let (mut a, mut b) = T::primitive_pair(&d.y, &(-d.x.clone()));
                if a.is_negative() || (a.is_zero() && b.is_negative()) {
                    a = -a;
                    b = -b;
                }
                let q = &simple.vertices[0];
                let c = a.clone() * &q.x + b.clone() * &q.y;
                out.push(SkeletonPiece::Line(a, b, c));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::PairClass;
    use crate::faces::direct_region_count;
    use num_rational::BigRational;

    type Q = BigRational;
    type P = Point<Q>;
    type L = Topoline<Q>;

    fn straight(id: &str, x: i64, y: i64, dx: i64, dy: i64) -> L {
        L::straight(id, P::from_ints(x, y), Dir::from_ints(dx, dy))
    }

    fn bent(id: &str, s: (i64, i64), e: (i64, i64)) -> L {
        L::new(
            id,
            Dir::from_ints(s.0, s.1),
            vec![P::from_ints(0, 0)],
            Dir::from_ints(e.0, e.1),
        )
    }

    fn gpm() -> Arrangement<Q> {
        build_arrangement(vec![bent("gm", (-1, 0), (0, -1)), bent("gp", (1, 0), (0, 1))]).unwrap()
    }

    fn k3() -> Arrangement<Q> {
        build_arrangement(vec![
            straight("l1", 0, 0, 1, 0),
            straight("l2", 0, 0, 0, 1),
            bent("l3", (2, 1), (1, 2)),
        ])
        .unwrap()
    }

    #[test]
    fn finds_touching_points() {
        assert_eq!(find_noncrossing_point(&gpm()).unwrap().location, P::from_ints(0, 0));
        assert!(find_noncrossing_point(&Arrangement::<Q>::empty()).is_none());
        let axes = build_arrangement(vec![straight("x", 0, 0, 1, 0), straight("y", 0, 0, 0, 1)]).unwrap();
        assert!(find_noncrossing_point(&axes).is_none());
        assert_eq!(
            reglue_at(&axes, &P::from_ints(0, 0)).unwrap_err(),
            ReglueError::NothingToReglue("(0, 0)".into())
        );
    }

    #[test]
    fn touching_pair_becomes_the_axes() {
        let before = gpm();
        let (after, steps) = make_affine(&before).unwrap();
        assert_eq!(steps.len(), 1);
        assert!(after.is_affine());
        assert_eq!(skeleton(&before), skeleton(&after));
        let axes = build_arrangement(vec![straight("x", 0, 0, 1, 0), straight("y", 0, 0, 0, 1)]).unwrap();
        assert_eq!(skeleton(&after), skeleton(&axes));
        // Both new lines are straight.
        for l in after.lines() {
            assert_eq!(l.start_ray, l.end_ray.reversed());
        }
    }

    #[test]
    fn three_lines_at_a_point() {
        let before = k3();
        assert_eq!(before.touching_pairs().len(), 2);
        let (after, steps) = make_affine(&before).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!((steps[0].noncrossing_before, steps[0].noncrossing_after), (2, 0));
        let dirs: Vec<(Dir<Q>, Dir<Q>)> = steps[0]
            .new_lines
            .iter()
            .map(|l| (l.start_ray.clone(), l.end_ray.clone()))
            .collect();
        assert_eq!(
            dirs,
            vec![
                (Dir::from_ints(1, 0), Dir::from_ints(0, 1)),
                (Dir::from_ints(2, 1), Dir::from_ints(-1, 0)),
                (Dir::from_ints(1, 2), Dir::from_ints(0, -1)),
            ]
        );
        assert!(after.pair_table().values().all(|c| *c == PairClass::Crossing));
        assert_eq!(skeleton(&before), skeleton(&after));
        assert_eq!(direct_region_count(&before), direct_region_count(&after));
    }

    #[test]
    fn affine_input_is_untouched() {
        let a = build_arrangement(vec![straight("x", 0, 0, 1, 0), straight("y", 3, 1, 1, 1)]).unwrap();
        let (b, steps) = make_affine(&a).unwrap();
        assert!(steps.is_empty());
        assert_eq!(a.lines(), b.lines());
    }

    #[test]
    fn skeleton_of_a_lone_line() {
        let a = build_arrangement(vec![straight("x", 5, 2, 2, 4)]).unwrap();
        let b = build_arrangement(vec![straight("x", 6, 4, -1, -2)]).unwrap();
        assert_eq!(skeleton(&a), skeleton(&b));
        assert_eq!(
            skeleton(&a),
            vec![SkeletonPiece::Line(Q::from_int(2), Q::from_int(-1), Q::from_int(8))]
        );
    }
}
