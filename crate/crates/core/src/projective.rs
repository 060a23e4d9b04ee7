//! Parallelism and projectivization of planar arrangements.
//!
//! Two lines are parallel when they are disjoint. An affine arrangement can be
//! completed by a line at infinity exactly when parallelism is transitive; the
//! completion is built by rerouting every tail outside a box `C` so that the
//! tails of one parallel class leave a larger box `C'` as parallel rays, with
//! the opposite tails leaving in the opposite direction.
//!
//! Boundary positions on both boxes are measured by `theta` in `[0, 1)`,
//! counterclockwise from the lower left corner, so that `theta + 1/2` is the
//! antipodal point. A tail leaving `C` at `theta = w` is joined to its new
//! start `V` on `C'` by a path that is straight in `(rho, theta)` coordinates,
//! replaced by chords between the crossings of the box diagonals. Paths with
//! the same cyclic order at both ends never meet.

use std::collections::{BTreeMap, BTreeSet};

use crate::arrangement::{build_arrangement, Arrangement, PairClass};
use crate::faces::direct_region_count;
use crate::geom::{ClipBox, Dir, Point, Vector};
use crate::model::{Half, LineId, Topoline};
use crate::scalar::Scalar;
use crate::semilattice::semilattice_of;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelClassification {
    /// Disjoint pairs, each ordered.
    pub relation: BTreeSet<(LineId, LineId)>,
    /// Parallel classes when the relation is transitive, each sorted, ordered
    /// by first member.
    pub classes: Option<Vec<Vec<LineId>>>,
    /// Smallest `(a, b, c)` with `a` parallel to `b`, `b` parallel to `c` and
    /// `a` meeting `c`.
    pub witness: Option<(LineId, LineId, LineId)>,
}

pub fn parallel_classes<T: Scalar>(arr: &Arrangement<T>) -> ParallelClassification {
    let relation: BTreeSet<(LineId, LineId)> = arr
        .pair_table()
        .iter()
        .filter(|(_, c)| **c == PairClass::Disjoint)
        .map(|(k, _)| k.clone())
        .collect();
    let par = |a: &LineId, b: &LineId| {
        a == b || relation.contains(&(a.clone(), b.clone())) || relation.contains(&(b.clone(), a.clone()))
    };
    let mut ids: Vec<LineId> = arr.ids().cloned().collect();
    ids.sort();
    let mut witness = None;
    'search: for a in &ids {
        for b in ids.iter().filter(|b| *b != a && par(a, b)) {
            for c in ids.iter().filter(|c| *c != a && *c != b && par(b, c)) {
                if !par(a, c) {
                    witness = Some((a.clone(), b.clone(), c.clone()));
                    break 'search;
                }
            }
        }
    }
    let classes = witness.is_none().then(|| {
        let mut classes: Vec<Vec<LineId>> = Vec::new();
        for id in &ids {
            match classes.iter_mut().find(|c| par(&c[0], id)) {
                Some(c) => c.push(id.clone()),
                None => classes.push(vec![id.clone()]),
            }
        }
        classes
    });
    ParallelClassification {
        relation,
        classes,
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NotProjectivizable {
    #[error("not affine: {a} and {b} touch")]
    NotAffine { a: LineId, b: LineId },
    #[error("parallelism is not transitive: {a} || {b} and {b} || {c}, but {a} meets {c}")]
    NotTransitive { a: LineId, b: LineId, c: LineId },
}

/// The parallel classes when the arrangement is projectivizable.
pub fn is_projectivizable<T: Scalar>(arr: &Arrangement<T>) -> Result<Vec<Vec<LineId>>, NotProjectivizable> {
    if let Some((a, b)) = arr.touching_pairs().into_iter().min() {
        return Err(NotProjectivizable::NotAffine { a, b });
    }
    let pc = parallel_classes(arr);
    match (pc.classes, pc.witness) {
        (Some(classes), _) => Ok(classes),
        (None, Some((a, b, c))) => Err(NotProjectivizable::NotTransitive { a, b, c }),
        (None, None) => unreachable!("classes are missing only when a witness exists"),
    }
}

/// Where a tail of a line leaves the inner box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPoint<T> {
    pub line: LineId,
    /// `Plus` for the end ray, `Minus` for the start ray.
    pub end: Half,
    pub point: Point<T>,
    pub theta: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailOrder<T> {
    /// `[-a, a]^2`, containing every vertex and intersection point.
    pub inner: ClipBox<T>,
    pub half_width: T,
    /// Sorted by `theta`.
    pub w_points: Vec<WPoint<T>>,
}

/// A maximal run of W-points of one parallel class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailGroup {
    pub class: usize,
    /// Indices into `w_points`, in cyclic order.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("tail grouping fails: {0}")]
pub struct GroupingFailure(pub String);

pub fn tail_order<T: Scalar>(arr: &Arrangement<T>) -> TailOrder<T> {
    let a = arr
        .feature_points()
        .iter()
        .flat_map(|p| [p.x.abs(), p.y.abs()])
        .max()
        .unwrap_or_else(T::zero)
        + T::one();
    let inner = ClipBox::centered(a.clone());
    let eight_a = T::from_int(8) * &a;
    let mut w_points = Vec::new();
    for line in arr.lines() {
        let first = &line.vertices[0];
        let last = line.vertices.last().expect("at least one vertex");
        for (end, origin, dir) in [(Half::Minus, first, &line.start_ray), (Half::Plus, last, &line.end_ray)] {
            let point = inner.ray_exit(origin, &dir.vector());
            let theta = inner.perimeter_param(&point) / &eight_a;
            w_points.push(WPoint {
                line: line.id.clone(),
                end,
                point,
                theta,
            });
        }
    }
    w_points.sort_by(|x, y| x.theta.cmp(&y.theta));
    TailOrder {
        inner,
        half_width: a,
        w_points,
    }
}

impl<T: Scalar> TailOrder<T> {
    /// Split the W-points into `2m` runs, one pair of antipodal runs per
    /// class: run `j` and run `j + m` hold the same class, each holds one end
    /// of every line of it, and the second lists the lines in reverse.
    pub fn groups(&self, classes: &[Vec<LineId>]) -> Result<Vec<TailGroup>, GroupingFailure> {
        let n = self.w_points.len();
        let m = classes.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let class_of: BTreeMap<&LineId, usize> = classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |id| (id, i)))
            .collect();
        let label = |i: usize| class_of[&self.w_points[i % n].line];
        let runs: Vec<Vec<usize>> = if m == 1 {
            let s = n / 2;
            let fits = |r: usize| {
                let arc =
                    |from: usize| -> Vec<&LineId> { (from..from + s).map(|i| &self.w_points[i % n].line).collect() };
                let (one, mut two) = (arc(r), arc(r + s));
                two.reverse();
                one == two && one.iter().collect::<BTreeSet<_>>().len() == s
            };
            let r = (0..n)
                .find(|&r| fits(r))
                .ok_or_else(|| GroupingFailure("single class does not split into two mirrored runs".into()))?;
            vec![
                (r..r + s).map(|i| i % n).collect(),
                (r + s..r + n).map(|i| i % n).collect(),
            ]
        } else {
            let r0 = (0..n)
                .find(|&i| label(i) != label(i + n - 1))
                .ok_or_else(|| GroupingFailure("one class fills the whole boundary".into()))?;
            let mut runs: Vec<Vec<usize>> = Vec::new();
            for i in r0..r0 + n {
                match runs.last_mut() {
                    Some(run) if label(run[0]) == label(i) => run.push(i % n),
                    _ => runs.push(vec![i % n]),
                }
            }
            runs
        };
        if runs.len() != 2 * m {
            return Err(GroupingFailure(format!("{} runs for {} classes", runs.len(), m)));
        }
        let lines_of = |run: &[usize]| -> Vec<&LineId> { run.iter().map(|&i| &self.w_points[i].line).collect() };
        for j in 0..m {
            let (one, two) = (&runs[j], &runs[j + m]);
            let class = label(one[0]);
            if label(two[0]) != class {
                return Err(GroupingFailure(format!(
                    "runs {j} and {} hold different classes",
                    j + m
                )));
            }
            let mut back = lines_of(two);
            back.reverse();
            let forth = lines_of(one);
            if forth != back || forth.len() != classes[class].len() {
                return Err(GroupingFailure(format!("runs {j} and {} are not mirror images", j + m)));
            }
        }
        Ok(runs
            .into_iter()
            .map(|members| TailGroup {
                class: label(members[0]),
                members,
            })
            .collect())
    }
}

/// Point of the boundary of `[-1, 1]^2` at `theta` (taken mod 1).
pub fn unit_square_point<T: Scalar>(theta: &T) -> Vector<T> {
    let s = (theta.clone() - theta.floor_val()) * T::from_int(8);
    let one = T::one();
    let (side, off) = {
        let side = s.floor_val().to_i64_exact().expect("integral") / 2;
        let off = s - T::from_int(2 * side);
        (side, off)
    };
    match side {
        0 => Vector::new(off - &one, -one),
        1 => Vector::new(one.clone(), off - &one),
        2 => Vector::new(one.clone() - off, one),
        _ => Vector::new(-one.clone(), one - off),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPoint<T> {
    pub lines: Vec<LineId>,
    /// Direction of the tails in the first of the class's two groups; the
    /// other group uses the negation.
    pub direction: Dir<T>,
}

#[derive(Clone, Debug)]
pub struct ProjectiveStructure<T> {
    /// One per parallel class, in their cyclic order on the line at infinity.
    pub ideal_points: Vec<IdealPoint<T>>,
    /// Line id to index into `ideal_points`.
    pub incidences: BTreeMap<LineId, usize>,
    pub rerouted: Arrangement<T>,
    pub tail_order: TailOrder<T>,
    /// `[-2a, 2a]^2`, where the new rays start.
    pub outer: ClipBox<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProjectiveError {
    #[error(transparent)]
    NotProjectivizable(#[from] NotProjectivizable),
    #[error("internal error: {0}")]
    Grouping(#[from] GroupingFailure),
    #[error("internal error: rerouted tails fail the {0} audit")]
    Audit(AuditFailure),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{audit}: {detail}")]
pub struct AuditFailure {
    pub audit: &'static str,
    pub detail: String,
}

const ATTEMPTS: u32 = 8;

pub fn projectivize<T: Scalar>(arr: &Arrangement<T>) -> Result<ProjectiveStructure<T>, ProjectiveError> {
    let classes = is_projectivizable(arr)?;
    if arr.lines().is_empty() {
        return Ok(ProjectiveStructure {
            ideal_points: Vec::new(),
            incidences: BTreeMap::new(),
            rerouted: arr.clone(),
            tail_order: tail_order(arr),
            outer: ClipBox::centered(T::from_int(2)),
        });
    }
    let order = tail_order(arr);
    let groups = order.groups(&classes)?;
    let mut last = None;
    for attempt in 0..ATTEMPTS {
        let structure = reroute(arr, &classes, &order, &groups, attempt);
        match structure.and_then(|s| audit_projective(arr, &s).map(|_| s)) {
            Ok(s) => return Ok(s),
            Err(e) => last = Some(e),
        }
    }
    Err(ProjectiveError::Audit(last.expect("at least one attempt")))
}

fn reroute<T: Scalar>(
    arr: &Arrangement<T>,
    classes: &[Vec<LineId>],
    order: &TailOrder<T>,
    groups: &[TailGroup],
    attempt: u32,
) -> Result<ProjectiveStructure<T>, AuditFailure> {
    let m = groups.len() / 2;
    let a = &order.half_width;
    let two_a = T::from_int(2) * a;
    let widest = groups.iter().map(|g| g.members.len()).max().unwrap_or(1);
    let sigma = T::one() / T::from_int((16 * m * widest) as i64 * (1i64 << attempt));
    let half = T::half();

    // Lift the W parameters so they increase strictly along the group order.
    let mut lifted: Vec<T> = Vec::new();
    for g in groups {
        for &i in &g.members {
            let mut w = order.w_points[i].theta.clone();
            if let Some(prev) = lifted.last() {
                while w <= *prev {
                    w = w + T::one();
                }
            }
            lifted.push(w);
        }
    }
    let spread = |k: usize, r: usize| (T::from_int(r as i64) - T::from_int(k as i64 - 1) * &half) * &sigma;
    let phase = lifted[0].clone() + T::from_int(groups[0].members.len() as i64 - 1) * &half * &sigma;
    let centre = |j: usize| phase.clone() + T::from_int(j as i64) / T::from_int(2 * m as i64);
    let dirs: Vec<Dir<T>> = (0..2 * m)
        .map(|j| Dir::from_vector(&unit_square_point(&centre(j))).expect("nonzero"))
        .collect();

    let mut lines: BTreeMap<LineId, Topoline<T>> = arr.lines().iter().map(|l| (l.id.clone(), l.clone())).collect();
    let mut idx = 0;
    for (j, g) in groups.iter().enumerate() {
        for (r, &i) in g.members.iter().enumerate() {
            let wp = &order.w_points[i];
            let w = lifted[idx].clone();
            idx += 1;
            let v = centre(j) + spread(g.members.len(), r);
            let path = connector(a, &two_a, &wp.point, &w, &v);
            let line = lines.get_mut(&wp.line).expect("known line");
            match wp.end {
                Half::Plus => {
                    line.vertices.extend(path);
                    line.end_ray = dirs[j].clone();
                }
                Half::Minus => {
                    let mut vs: Vec<Point<T>> = path.into_iter().rev().collect();
                    vs.append(&mut line.vertices);
                    line.vertices = vs;
                    line.start_ray = dirs[j].clone();
                }
            }
        }
    }
    let new_lines: Vec<Topoline<T>> = arr.lines().iter().map(|l| lines[&l.id].simplified()).collect();
    let rerouted = build_arrangement(new_lines).map_err(|e| AuditFailure {
        audit: "validity",
        detail: e.to_string(),
    })?;

    let mut incidences = BTreeMap::new();
    let ideal_points = (0..m)
        .map(|j| {
            let class = &classes[groups[j].class];
            for id in class {
                incidences.insert(id.clone(), j);
            }
            IdealPoint {
                lines: class.clone(),
                direction: dirs[j].clone(),
            }
        })
        .collect();
    Ok(ProjectiveStructure {
        ideal_points,
        incidences,
        rerouted,
        tail_order: order.clone(),
        outer: ClipBox::centered(two_a),
    })
}

/// Path from `start = a * u(w)` to `2a * u(v)`, straight in `(rho, theta)`,
/// with a vertex wherever it crosses a box diagonal.
fn connector<T: Scalar>(a: &T, two_a: &T, start: &Point<T>, w: &T, v: &T) -> Vec<Point<T>> {
    let at = |rho: &T, theta: &T| Point::origin().add(&unit_square_point(theta).scale(rho));
    let mut out = vec![start.clone()];
    if w != v {
        let four = T::from_int(4);
        let (lo, hi) = if w < v { (w, v) } else { (v, w) };
        let mut ks: Vec<i64> = {
            let first = (lo.clone() * &four).floor_val().to_i64_exact().expect("integral") + 1;
            let last = (hi.clone() * &four).ceil_val().to_i64_exact().expect("integral") - 1;
            (first..=last).collect()
        };
        if w > v {
            ks.reverse();
        }
        for k in ks {
            let theta = T::from_int(k) / &four;
            let t = (theta.clone() - w) / (v.clone() - w);
            let rho = a.clone() + t * a;
            out.push(at(&rho, &theta));
        }
    }
    out.push(at(two_a, v));
    out
}

/// Check a projectivization against the original arrangement.
pub fn audit_projective<T: Scalar>(original: &Arrangement<T>, s: &ProjectiveStructure<T>) -> Result<(), AuditFailure> {
    let fail = |audit: &'static str, detail: String| Err(AuditFailure { audit, detail });
    let r = build_arrangement(s.rerouted.lines().to_vec()).map_err(|e| AuditFailure {
        audit: "validity",
        detail: e.to_string(),
    })?;
    if !r.is_affine() {
        return fail("validity", "rerouted arrangement is not affine".into());
    }
    for l in r.lines() {
        if l.start_ray != l.end_ray.reversed() {
            return fail(
                "antipodal tails",
                format!("{} has tails {} and {}", l.id, l.start_ray, l.end_ray),
            );
        }
    }
    for (j, ip) in s.ideal_points.iter().enumerate() {
        let allowed = [ip.direction.clone(), ip.direction.reversed()];
        for id in &ip.lines {
            let l = r.line(id).map_err(|e| AuditFailure {
                audit: "shared class directions",
                detail: format!("ideal point {j} names unknown line {}", e.0),
            })?;
            if !allowed.contains(&l.end_ray) {
                return fail("shared class directions", format!("{id} leaves along {}", l.end_ray));
            }
        }
    }
    if !semilattice_of(&r).same_with_fixed_points(&semilattice_of(original)) {
        return fail("semilattice", "intersection pattern changed".into());
    }
    let (before, after) = (direct_region_count(original), direct_region_count(&r));
    if before != after {
        return fail("face census", format!("{before:?} became {after:?}"));
    }
    for ((a, b), class) in r.pair_table() {
        let same = s.incidences.get(a) == s.incidences.get(b);
        if (*class == PairClass::Disjoint) != same {
            return fail("disjoint iff same ideal point", format!("{a} and {b}"));
        }
    }
    Ok(())
}
