//! Validated arrangements: intersection points, cyclic branch orders and the
//! crossing/touching classification of every pair of topolines.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::geom::{angle_cmp, Dir, Point};
use crate::model::{
    curve_intersection, validate_topoline, CurveIntersection, Half, LineId, Topoline, TopolineViolation,
};
use crate::scalar::Scalar;

/// One of the two halves of a line leaving an intersection point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch<T> {
    pub line_id: LineId,
    pub half: Half,
    pub outgoing_dir: Dir<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint<T> {
    pub location: Point<T>,
    /// Ids of the lines through the point, sorted.
    pub lines: Vec<LineId>,
    /// All `2k` branches in counterclockwise order, starting from the
    /// direction of the positive x axis.
    pub branch_cycle: Vec<Branch<T>>,
}

impl<T: Scalar> IntersectionPoint<T> {
    /// The cycle restricted to the given lines.
    pub fn restricted_cycle(&self, ids: &[&LineId]) -> Vec<&Branch<T>> {
        self.branch_cycle.iter().filter(|b| ids.contains(&&b.line_id)).collect()
    }

    pub fn contains_line(&self, id: &LineId) -> bool {
        self.lines.binary_search(id).is_ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairClass {
    Disjoint,
    Crossing,
    Touching,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementViolation {
    #[error("line {id} is not a topoline: {violation}")]
    InvalidLine { id: LineId, violation: TopolineViolation },
    #[error("duplicate line id {0}")]
    DuplicateId(LineId),
    #[error("lines {a} and {b} meet in {} points: {}", .points.len(), .points.join(", "))]
    MultipleIntersections { a: LineId, b: LineId, points: Vec<String> },
    #[error("lines {a} and {b} share a piece of positive length")]
    Overlap { a: LineId, b: LineId },
    #[error("lines {a} and {b} coincide")]
    Coincident { a: LineId, b: LineId },
    #[error("branches of {a} and {b} leave {at} in the same direction")]
    BranchCollision { a: LineId, b: LineId, at: String },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown line id {0}")]
pub struct UnknownId(pub LineId);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement<T> {
    lines: Vec<Topoline<T>>,
    points: Vec<IntersectionPoint<T>>,
    pair_table: BTreeMap<(LineId, LineId), PairClass>,
    index: HashMap<LineId, usize>,
}

fn pair_key(a: &LineId, b: &LineId) -> (LineId, LineId) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Whether two lines alternate in a cyclic sequence of four branches.
fn alternates<T>(cycle: &[&Branch<T>]) -> bool {
    debug_assert_eq!(cycle.len(), 4);
    cycle[0].line_id != cycle[1].line_id && cycle[1].line_id != cycle[2].line_id && cycle[2].line_id != cycle[3].line_id
}

pub fn build_arrangement<T: Scalar>(lines: Vec<Topoline<T>>) -> Result<Arrangement<T>, ArrangementViolation> {
    let mut index = HashMap::new();
    for (i, l) in lines.iter().enumerate() {
        if let Err(violation) = validate_topoline(l) {
            return Err(ArrangementViolation::InvalidLine {
                id: l.id.clone(),
                violation,
            });
        }
        if index.insert(l.id.clone(), i).is_some() {
            return Err(ArrangementViolation::DuplicateId(l.id.clone()));
        }
    }

    let mut meets: BTreeMap<Point<T>, BTreeSet<usize>> = BTreeMap::new();
    let mut disjoint = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            match curve_intersection(&lines[i], &lines[j]) {
                CurveIntersection::Empty => disjoint.push((i, j)),
                CurveIntersection::Points(pts) if pts.len() == 1 => {
                    let e = meets.entry(pts[0].clone()).or_default();
                    e.insert(i);
                    e.insert(j);
                }
                CurveIntersection::Points(pts) => {
                    return Err(ArrangementViolation::MultipleIntersections {
                        a: lines[i].id.clone(),
                        b: lines[j].id.clone(),
                        points: pts.iter().map(|p| p.to_string()).collect(),
                    })
                }
                CurveIntersection::Overlap => {
                    let a = lines[i].id.clone();
                    let b = lines[j].id.clone();
                    return Err(if same_point_set(&lines[i], &lines[j]) {
                        ArrangementViolation::Coincident { a, b }
                    } else {
                        ArrangementViolation::Overlap { a, b }
                    });
                }
            }
        }
    }

    let mut pair_table = BTreeMap::new();
    for (i, j) in disjoint {
        pair_table.insert(pair_key(&lines[i].id, &lines[j].id), PairClass::Disjoint);
    }

    let mut points = Vec::with_capacity(meets.len());
    for (location, members) in meets {
        let mut branch_cycle = Vec::with_capacity(2 * members.len());
        for &i in &members {
            let (fwd, back) = lines[i]
                .directions_at(&location)
                .expect("intersection point lies on its lines");
            branch_cycle.push(Branch {
                line_id: lines[i].id.clone(),
                half: Half::Plus,
                outgoing_dir: fwd,
            });
            branch_cycle.push(Branch {
                line_id: lines[i].id.clone(),
                half: Half::Minus,
                outgoing_dir: back,
            });
        }
        branch_cycle.sort_by(|a, b| angle_cmp(&a.outgoing_dir.vector(), &b.outgoing_dir.vector()));
        for w in 0..branch_cycle.len() {
            let a = &branch_cycle[w];
            let b = &branch_cycle[(w + 1) % branch_cycle.len()];
            if a.outgoing_dir == b.outgoing_dir {
                return Err(ArrangementViolation::BranchCollision {
                    a: a.line_id.clone(),
                    b: b.line_id.clone(),
                    at: location.to_string(),
                });
            }
        }
        let mut ids: Vec<LineId> = members.iter().map(|&i| lines[i].id.clone()).collect();
        ids.sort();
        let pt = IntersectionPoint {
            location,
            lines: ids,
            branch_cycle,
        };
        for (x, a) in pt.lines.iter().enumerate() {
            for b in &pt.lines[x + 1..] {
                let class = if alternates(&pt.restricted_cycle(&[a, b])) {
                    PairClass::Crossing
                } else {
                    PairClass::Touching
                };
                pair_table.insert(pair_key(a, b), class);
            }
        }
        points.push(pt);
    }

    Ok(Arrangement {
        lines,
        points,
        pair_table,
        index,
    })
}

/// Point-set equality of two valid curves that are already known to overlap;
/// only used to word the violation report.
fn same_point_set<T: Scalar>(a: &Topoline<T>, b: &Topoline<T>) -> bool {
    let covered = |x: &Topoline<T>, y: &Topoline<T>| {
        x.vertices.iter().all(|v| y.contains(v))
            && x.pieces().iter().all(|pc| {
                let probe = match pc.end() {
                    Some(e) => pc.origin.midpoint(&e),
                    None => pc.origin.add(&pc.dir),
                };
                y.contains(&probe)
            })
    };
    let (xs, xe) = (&a.start_ray, &a.end_ray);
    let (ys, ye) = (&b.start_ray, &b.end_ray);
    let rays_match = (xs == ys && xe == ye) || (xs == ye && xe == ys);
    rays_match && covered(a, b) && covered(b, a)
}

impl<T: Scalar> Arrangement<T> {
    pub fn empty() -> Self {
        build_arrangement(Vec::new()).expect("empty arrangement is valid")
    }

    pub fn lines(&self) -> &[Topoline<T>] {
        &self.lines
    }

    pub fn into_lines(self) -> Vec<Topoline<T>> {
        self.lines
    }

    pub fn points(&self) -> &[IntersectionPoint<T>] {
        &self.points
    }

    pub fn line(&self, id: &LineId) -> Result<&Topoline<T>, UnknownId> {
        self.index
            .get(id)
            .map(|&i| &self.lines[i])
            .ok_or_else(|| UnknownId(id.clone()))
    }

    pub fn position(&self, id: &LineId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = &LineId> {
        self.lines.iter().map(|l| &l.id)
    }

    /// All unordered pairs with their classification, keyed `(smaller, larger)`.
    pub fn pair_table(&self) -> &BTreeMap<(LineId, LineId), PairClass> {
        &self.pair_table
    }

    pub fn classify_pair(&self, a: &LineId, b: &LineId) -> Result<PairClass, UnknownId> {
        self.line(a)?;
        self.line(b)?;
        assert_ne!(a, b, "a pair needs two distinct lines");
        Ok(self.pair_table[&pair_key(a, b)])
    }

    pub fn is_affine(&self) -> bool {
        self.pair_table.values().all(|c| *c != PairClass::Touching)
    }

    pub fn touching_pairs(&self) -> Vec<(LineId, LineId)> {
        self.pair_table
            .iter()
            .filter(|(_, c)| **c == PairClass::Touching)
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn point_at(&self, location: &Point<T>) -> Option<&IntersectionPoint<T>> {
        self.points
            .binary_search_by(|p| p.location.cmp(location))
            .ok()
            .map(|i| &self.points[i])
    }

    /// Intersection points on a line, in order along the curve.
    pub fn flats_on_line(&self, id: &LineId) -> Result<Vec<&IntersectionPoint<T>>, UnknownId> {
        let line = self.line(id)?;
        let mut pts: Vec<_> = self
            .points
            .iter()
            .filter(|p| p.contains_line(id))
            .map(|p| (line.locate(&p.location).expect("point on its line"), p))
            .collect();
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(pts.into_iter().map(|(_, p)| p).collect())
    }

    /// Every curve vertex and intersection point.
    pub fn feature_points(&self) -> Vec<Point<T>> {
        let mut out: Vec<Point<T>> = self
            .lines
            .iter()
            .flat_map(|l| l.vertices.iter().cloned())
            .chain(self.points.iter().map(|p| p.location.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The arrangement formed by a subset of the lines.
    pub fn restricted(&self, ids: &[&LineId]) -> Result<Arrangement<T>, UnknownId> {
        let mut lines = Vec::new();
        for id in ids {
            lines.push(self.line(id)?.clone());
        }
        Ok(build_arrangement(lines).expect("subarrangements of valid arrangements are valid"))
    }

    /// Apply an invertible affine map to every curve.
    pub fn map_affine(
        &self,
        m: [[T; 2]; 2],
        t: &crate::geom::Vector<T>,
    ) -> Result<Arrangement<T>, ArrangementViolation> {
        build_arrangement(self.lines.iter().map(|l| l.map_affine(m.clone(), t)).collect())
    }
}

pub fn classify_pair<T: Scalar>(arr: &Arrangement<T>, a: &LineId, b: &LineId) -> Result<PairClass, UnknownId> {
    arr.classify_pair(a, b)
}

pub fn is_affine<T: Scalar>(arr: &Arrangement<T>) -> bool {
    arr.is_affine()
}

pub fn flats_on_line<'a, T: Scalar>(
    arr: &'a Arrangement<T>,
    a: &LineId,
) -> Result<Vec<&'a IntersectionPoint<T>>, UnknownId> {
    arr.flats_on_line(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Side;
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

    fn noproj2() -> Vec<L> {
        vec![
            straight("xm1", -1, 0, 0, 1),
            straight("xp1", 1, 0, 0, 1),
            straight("y1", 0, 1, 1, 0),
            bent("gplus", 0, 0, (1, 0), (0, 1)),
        ]
    }

    fn id(s: &str) -> LineId {
        LineId::from(s)
    }

    #[test]
    fn axes_cross() {
        let arr = build_arrangement(vec![straight("x", 0, 0, 1, 0), straight("y", 0, 0, 0, 1)]).unwrap();
        assert_eq!(arr.points().len(), 1);
        assert_eq!(arr.points()[0].location, P::from_ints(0, 0));
        assert_eq!(arr.classify_pair(&id("x"), &id("y")), Ok(PairClass::Crossing));
        let cycle: Vec<_> = arr.points()[0]
            .branch_cycle
            .iter()
            .map(|b| (b.line_id.as_str().to_owned(), b.half))
            .collect();
        assert_eq!(
            cycle,
            vec![
                ("x".into(), Half::Plus),
                ("y".into(), Half::Plus),
                ("x".into(), Half::Minus),
                ("y".into(), Half::Minus)
            ]
        );
    }

    #[test]
    fn noproj2_structure() {
        let arr = build_arrangement(noproj2()).unwrap();
        let locs: Vec<P> = arr.points().iter().map(|p| p.location.clone()).collect();
        let mut want = vec![
            P::from_ints(-1, 1),
            P::from_ints(1, 1),
            P::from_ints(1, 0),
            P::from_ints(0, 1),
        ];
        want.sort();
        assert_eq!(locs, want);
        let classes: Vec<PairClass> = arr.pair_table().values().copied().collect();
        assert_eq!(classes.iter().filter(|c| **c == PairClass::Crossing).count(), 4);
        assert_eq!(classes.iter().filter(|c| **c == PairClass::Disjoint).count(), 2);
        assert!(arr.is_affine());
        assert_eq!(arr.classify_pair(&id("xp1"), &id("gplus")), Ok(PairClass::Crossing));
        assert_eq!(arr.classify_pair(&id("xm1"), &id("gplus")), Ok(PairClass::Disjoint));
        assert!(arr.classify_pair(&id("nope"), &id("gplus")).is_err());
    }

    #[test]
    fn zigzag_is_rejected() {
        let zig = L::new(
            "z",
            Dir::from_ints(-1, 0),
            vec![P::from_ints(-1, 1), P::from_ints(0, -1), P::from_ints(1, 1)],
            Dir::from_ints(1, 0),
        );
        match build_arrangement(vec![straight("x", 0, 0, 1, 0), zig]) {
            Err(ArrangementViolation::MultipleIntersections { points, .. }) => assert_eq!(points.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn coincident_and_overlapping_lines() {
        let a = straight("a", 0, 0, 1, 0);
        let b = straight("b", 3, 0, -1, 0);
        assert!(matches!(
            build_arrangement(vec![a.clone(), b]),
            Err(ArrangementViolation::Coincident { .. })
        ));
        let c = bent("c", 0, 0, (1, 0), (0, 1));
        assert!(matches!(
            build_arrangement(vec![a.clone(), c]),
            Err(ArrangementViolation::Overlap { .. })
        ));
        assert!(matches!(
            build_arrangement(vec![a.clone(), a]),
            Err(ArrangementViolation::DuplicateId(_))
        ));
    }

    #[test]
    fn gplus_gminus_touch() {
        let arr = build_arrangement(vec![
            bent("gplus", 0, 0, (1, 0), (0, 1)),
            bent("gminus", 0, 0, (-1, 0), (0, -1)),
        ])
        .unwrap();
        assert_eq!(arr.classify_pair(&id("gplus"), &id("gminus")), Ok(PairClass::Touching));
        assert!(!arr.is_affine());
        assert_eq!(arr.touching_pairs(), vec![(id("gminus"), id("gplus"))]);
    }

    #[test]
    fn vertical_line_crosses_gplus() {
        let arr = build_arrangement(vec![straight("xp1", 1, 0, 0, 1), bent("gplus", 0, 0, (1, 0), (0, 1))]).unwrap();
        assert_eq!(arr.points()[0].location, P::from_ints(1, 0));
        assert_eq!(arr.classify_pair(&id("xp1"), &id("gplus")), Ok(PairClass::Crossing));
    }

    #[test]
    fn flats_along_a_line() {
        let arr = build_arrangement(noproj2()).unwrap();
        let locs: Vec<P> = arr
            .flats_on_line(&id("y1"))
            .unwrap()
            .iter()
            .map(|p| p.location.clone())
            .collect();
        assert_eq!(locs, vec![P::from_ints(-1, 1), P::from_ints(0, 1), P::from_ints(1, 1)]);
        let lone = build_arrangement(vec![straight("a", 0, 0, 1, 0)]).unwrap();
        assert!(lone.flats_on_line(&id("a")).unwrap().is_empty());
        // Reversed orientation reverses the order.
        let mut lines = noproj2();
        lines[2] = straight("y1", 0, 1, -1, 0);
        let arr = build_arrangement(lines).unwrap();
        let locs: Vec<P> = arr
            .flats_on_line(&id("y1"))
            .unwrap()
            .iter()
            .map(|p| p.location.clone())
            .collect();
        assert_eq!(locs, vec![P::from_ints(1, 1), P::from_ints(0, 1), P::from_ints(-1, 1)]);
    }

    #[test]
    fn empty_is_affine() {
        assert!(Arrangement::<Q>::empty().is_affine());
    }

    #[test]
    fn touching_halves_share_a_side() {
        let arr = build_arrangement(vec![
            bent("gplus", 0, 0, (1, 0), (0, 1)),
            bent("gminus", 0, 0, (-1, 0), (0, -1)),
        ])
        .unwrap();
        let gp = arr.line(&id("gplus")).unwrap();
        let gm = arr.line(&id("gminus")).unwrap();
        let o = P::from_ints(0, 0);
        let s1 = gp.side_of(&gm.probe_point(&o, Half::Plus).unwrap());
        let s2 = gp.side_of(&gm.probe_point(&o, Half::Minus).unwrap());
        assert_eq!(s1, s2);
        assert_eq!(s1, Some(Side::Left));
    }

    #[test]
    fn three_lines_through_one_point() {
        let arr = build_arrangement(vec![
            straight("a", 0, 0, 1, 0),
            straight("b", 0, 0, 0, 1),
            straight("c", 0, 0, 1, 1),
        ])
        .unwrap();
        assert_eq!(arr.points().len(), 1);
        assert_eq!(arr.points()[0].lines.len(), 3);
        assert_eq!(arr.points()[0].branch_cycle.len(), 6);
        assert!(arr.is_affine());
    }
}
