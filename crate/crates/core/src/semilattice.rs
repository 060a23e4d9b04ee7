//! Intersection semilattices: flats ordered by reverse inclusion, the Möbius
//! function from the ambient space, the region-count formula, and a checker
//! for the geometric-lattice property of intervals.
//!
//! A flat is identified with the set of topoplanes containing it, so the
//! order is inclusion of member sets. This is faithful for intersection
//! semilattices; abstract inputs with two flats on the same member set are
//! rejected.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arrangement::Arrangement;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    pub name: String,
    pub codim: usize,
    pub members: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semilattice {
    /// Sorted by codimension, then name. Index 0 is the ambient space.
    flats: Vec<Flat>,
    /// `leq[i][j]` iff flat i <= flat j.
    leq: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemilatticeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no flat of codimension 0 with empty member set")]
    MissingZero,
    #[error("more than one flat with empty member set or codimension 0: {0} and {1}")]
    MultipleZeros(String, String),
    #[error("flats {0} and {1} have the same member set")]
    DuplicateMembers(String, String),
    #[error("duplicate flat name {0}")]
    DuplicateName(String),
    #[error("{lower} < {upper} but codimension does not increase ({lower_codim} vs {upper_codim})")]
    CodimNotIncreasing {
        lower: String,
        upper: String,
        lower_codim: usize,
        upper_codim: usize,
    },
    #[error("flats {0} and {1} have no unique meet")]
    MissingMeet(String, String),
}

pub type MobiusTable = BTreeMap<String, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalFailure {
    /// The interval has two minimal upper bounds for a pair.
    NotALattice,
    NotSemimodular,
    NotAtomic,
    /// A cover relation whose codimensions differ by more than one.
    RankMismatch,
}

/// The interval `[bottom, top]`, the offending pair `u`, `v` and what broke.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCounterexample {
    pub bottom: String,
    pub top: String,
    pub u: String,
    pub v: String,
    pub failure: IntervalFailure,
}

impl fmt::Display for IntervalCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} in [{}, {}] at ({}, {})",
            self.failure, self.bottom, self.top, self.u, self.v
        )
    }
}

impl Semilattice {
    pub fn new(mut flats: Vec<Flat>) -> Result<Self, SemilatticeError> {
        flats.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.name.cmp(&b.name)));
        let zeros: Vec<&Flat> = flats.iter().filter(|f| f.codim == 0 || f.members.is_empty()).collect();
        match zeros.as_slice() {
            [] => return Err(SemilatticeError::MissingZero),
            [z] if z.codim == 0 && z.members.is_empty() => {}
            [_] => return Err(SemilatticeError::MissingZero),
            [a, b, ..] => return Err(SemilatticeError::MultipleZeros(a.name.clone(), b.name.clone())),
        }
        let mut names = BTreeSet::new();
        let mut by_members: BTreeMap<&BTreeSet<String>, &str> = BTreeMap::new();
        for f in &flats {
            if !names.insert(f.name.as_str()) {
                return Err(SemilatticeError::DuplicateName(f.name.clone()));
            }
            if let Some(prev) = by_members.insert(&f.members, &f.name) {
                return Err(SemilatticeError::DuplicateMembers(prev.into(), f.name.clone()));
            }
        }
        let n = flats.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| flats[i].members.is_subset(&flats[j].members)).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && flats[i].codim >= flats[j].codim {
                    return Err(SemilatticeError::CodimNotIncreasing {
                        lower: flats[i].name.clone(),
                        upper: flats[j].name.clone(),
                        lower_codim: flats[i].codim,
                        upper_codim: flats[j].codim,
                    });
                }
            }
        }
        let sl = Semilattice { flats, leq };
        for i in 0..n {
            for j in i + 1..n {
                let lower: Vec<usize> = (0..n).filter(|&k| sl.leq[k][i] && sl.leq[k][j]).collect();
                if sl.maximal(&lower).len() != 1 {
                    return Err(SemilatticeError::MissingMeet(
                        sl.flats[i].name.clone(),
                        sl.flats[j].name.clone(),
                    ));
                }
            }
        }
        Ok(sl)
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.flats.iter().position(|f| f.name == name)
    }

    fn maximal(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&a| !set.iter().any(|&b| b != a && self.leq[a][b]))
            .collect()
    }

    fn minimal(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&a| !set.iter().any(|&b| b != a && self.leq[b][a]))
            .collect()
    }

    /// Möbius values `mu(0, Y)` aligned with [`Semilattice::flats`].
    pub fn mobius_values(&self) -> Vec<i64> {
        let n = self.flats.len();
        let mut mu = vec![0i64; n];
        // Flats are sorted by codim, and codim strictly increases along the
        // order, so every Z < Y precedes Y.
        for y in 0..n {
            if y == 0 {
                mu[y] = 1;
                continue;
            }
            let below: i64 = (0..y).filter(|&z| self.leq[z][y]).map(|z| mu[z]).sum();
            mu[y] = -below;
        }
        mu
    }

    pub fn mobius(&self) -> MobiusTable {
        self.flats
            .iter()
            .zip(self.mobius_values())
            .map(|(f, m)| (f.name.clone(), m))
            .collect()
    }

    pub fn region_count(&self) -> u64 {
        self.mobius_values().iter().map(|m| m.unsigned_abs()).sum()
    }

    /// Check that every interval `[Z, Y]` is a geometric lattice ranked by
    /// `codim - codim(Z)`.
    pub fn check_geometric_intervals(&self) -> Result<(), IntervalCounterexample> {
        let n = self.flats.len();
        for z in 0..n {
            for y in 0..n {
                if self.leq[z][y] {
                    self.check_interval(z, y)?;
                }
            }
        }
        Ok(())
    }

    fn check_interval(&self, z: usize, y: usize) -> Result<(), IntervalCounterexample> {
        let elems: Vec<usize> = (0..self.flats.len())
            .filter(|&u| self.leq[z][u] && self.leq[u][y])
            .collect();
        let rank = |u: usize| self.flats[u].codim as i64 - self.flats[z].codim as i64;
        let fail = |u: usize, v: usize, failure| IntervalCounterexample {
            bottom: self.flats[z].name.clone(),
            top: self.flats[y].name.clone(),
            u: self.flats[u].name.clone(),
            v: self.flats[v].name.clone(),
            failure,
        };
        let join = |u: usize, v: usize| -> Option<usize> {
            let ub: Vec<usize> = elems
                .iter()
                .copied()
                .filter(|&w| self.leq[u][w] && self.leq[v][w])
                .collect();
            match self.minimal(&ub).as_slice() {
                [j] => Some(*j),
                _ => None,
            }
        };
        let meet = |u: usize, v: usize| -> usize {
            let lb: Vec<usize> = elems
                .iter()
                .copied()
                .filter(|&w| self.leq[w][u] && self.leq[w][v])
                .collect();
            self.maximal(&lb)[0]
        };
        for (a, &u) in elems.iter().enumerate() {
            for &v in &elems[a + 1..] {
                let Some(j) = join(u, v) else {
                    return Err(fail(u, v, IntervalFailure::NotALattice));
                };
                let m = meet(u, v);
                if rank(j) + rank(m) > rank(u) + rank(v) {
                    return Err(fail(u, v, IntervalFailure::NotSemimodular));
                }
            }
        }
        let atoms: Vec<usize> = self.minimal(&elems.iter().copied().filter(|&u| u != z).collect::<Vec<_>>());
        for &u in &elems {
            if u == z {
                continue;
            }
            let below: Vec<usize> = atoms.iter().copied().filter(|&a| self.leq[a][u]).collect();
            let mut acc = below[0];
            for &a in &below[1..] {
                acc = join(acc, a).expect("joins exist once the lattice check passed");
            }
            if acc != u {
                return Err(fail(u, acc, IntervalFailure::NotAtomic));
            }
        }
        for &u in &elems {
            for &v in &elems {
                let covers = u != v
                    && self.leq[u][v]
                    && !elems
                        .iter()
                        .any(|&w| w != u && w != v && self.leq[u][w] && self.leq[w][v]);
                if covers && rank(v) != rank(u) + 1 {
                    return Err(fail(u, v, IntervalFailure::RankMismatch));
                }
            }
        }
        Ok(())
    }

    /// Compare two planar arrangement semilattices whose point flats are
    /// named by location: equal iff they have the same point flats and the
    /// same multiset of point sets on lines.
    pub fn same_with_fixed_points(&self, other: &Semilattice) -> bool {
        type Sig<'a> = (BTreeSet<&'a str>, Vec<BTreeSet<&'a str>>, Vec<usize>);
        fn sig(s: &Semilattice) -> Sig<'_> {
            let points: BTreeSet<&str> = s
                .flats
                .iter()
                .filter(|f| f.codim == 2)
                .map(|f| f.name.as_str())
                .collect();
            let mut lines: Vec<BTreeSet<&str>> = s
                .flats
                .iter()
                .enumerate()
                .filter(|(_, f)| f.codim == 1)
                .map(|(i, _)| {
                    (0..s.flats.len())
                        .filter(|&j| s.flats[j].codim == 2 && s.leq[i][j])
                        .map(|j| s.flats[j].name.as_str())
                        .collect()
                })
                .collect();
            lines.sort();
            let codims: Vec<usize> = s.flats.iter().map(|f| f.codim).collect();
            (points, lines, codims)
        }
        sig(self) == sig(other)
    }

    /// Same number of lines and the same point flats, each on the same
    /// number of lines. Weaker than [`Semilattice::same_with_fixed_points`]:
    /// which line passes through which point may differ.
    pub fn same_point_profile(&self, other: &Semilattice) -> bool {
        fn profile(s: &Semilattice) -> (usize, BTreeMap<&str, usize>) {
            let lines = s.flats.iter().filter(|f| f.codim == 1).count();
            let points = s
                .flats
                .iter()
                .filter(|f| f.codim == 2)
                .map(|f| (f.name.as_str(), f.members.len()))
                .collect();
            (lines, points)
        }
        profile(self) == profile(other)
    }
}

/// Name of the ambient-space flat in arrangement semilattices.
pub const AMBIENT: &str = "X";

pub fn semilattice_of<T: Scalar>(arr: &Arrangement<T>) -> Semilattice {
    let mut flats = vec![Flat {
        name: AMBIENT.into(),
        codim: 0,
        members: BTreeSet::new(),
    }];
    for l in arr.lines() {
        flats.push(Flat {
            name: l.id.to_string(),
            codim: 1,
            members: [l.id.to_string()].into(),
        });
    }
    for p in arr.points() {
        flats.push(Flat {
            name: p.location.to_string(),
            codim: 2,
            members: p.lines.iter().map(|l| l.to_string()).collect(),
        });
    }
    Semilattice::new(flats).expect("arrangement semilattices are well formed")
}

/// Parse the text format: one flat per line, `name codim {a,b,...}`, the
/// ambient space written with `{}`. Blank lines and `#` comments are skipped.
pub fn parse_abstract(text: &str) -> Result<Semilattice, SemilatticeError> {
    let mut flats = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| SemilatticeError::Parse { line, msg };
        let open = content
            .find('{')
            .ok_or_else(|| err("expected `{` starting the member set".into()))?;
        if !content.ends_with('}') {
            return Err(err("expected `}` at end of line".into()));
        }
        let mut head = content[..open].split_whitespace();
        let name = head.next().ok_or_else(|| err("missing flat name".into()))?;
        let codim = head
            .next()
            .ok_or_else(|| err(format!("missing codimension for flat {name}")))?;
        let codim: usize = codim
            .parse()
            .map_err(|_| err(format!("codimension `{codim}` is not a nonnegative integer")))?;
        if let Some(extra) = head.next() {
            return Err(err(format!("unexpected token `{extra}` before member set")));
        }
        let inner = &content[open + 1..content.len() - 1];
        if inner.contains('{') || inner.contains('}') {
            return Err(err("nested braces in member set".into()));
        }
        let mut members = BTreeSet::new();
        for m in inner.split(',').map(str::trim).filter(|m| !m.is_empty()) {
            if m.contains(char::is_whitespace) {
                return Err(err(format!("member `{m}` contains whitespace")));
            }
            if !members.insert(m.to_owned()) {
                return Err(err(format!("member `{m}` repeated")));
            }
        }
        flats.push(Flat {
            name: name.to_owned(),
            codim,
            members,
        });
    }
    Semilattice::new(flats)
}

/// Emit the text format; `parse_abstract` reads it back.
pub fn emit_abstract(sl: &Semilattice) -> String {
    let mut out = String::new();
    for f in sl.flats() {
        let members: Vec<&str> = f.members.iter().map(String::as_str).collect();
        out.push_str(&format!("{} {} {{{}}}\n", f.name, f.codim, members.join(",")));
    }
    out
}

pub fn mobius(sl: &Semilattice) -> MobiusTable {
    sl.mobius()
}

pub fn region_count_formula(sl: &Semilattice) -> u64 {
    sl.region_count()
}

pub fn check_geometric_intervals(sl: &Semilattice) -> Result<(), IntervalCounterexample> {
    sl.check_geometric_intervals()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const X3: &str = "\
# five topoplanes in R^3
X 0 {}
H1 1 {1}
H2 1 {2}
H3 1 {3}
H4 1 {4}
H5 1 {5}
Z 2 {1,2,3}
Y 2 {2,4,5}
L14 2 {1,4}
L15 2 {1,5}
L34 2 {3,4}
L35 2 {3,5}
O 3 {1,2,3,4,5}
";

    fn flat(name: &str, codim: usize, members: &[&str]) -> Flat {
        Flat {
            name: name.into(),
            codim,
            members: members.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Möbius values by the defining recursion over an explicit list of
    /// (name, codim, members) written out by hand, independent of the
    /// `Semilattice` type.
    fn hand_mobius(flats: &[(&str, usize, &[&str])]) -> BTreeMap<String, i64> {
        let mut order: Vec<_> = flats.to_vec();
        order.sort_by_key(|f| f.1);
        let mut mu: BTreeMap<String, i64> = BTreeMap::new();
        for (name, _, members) in &order {
            let s: i64 = order
                .iter()
                .filter(|(n2, _, m2)| n2 != name && m2.iter().all(|m| members.contains(m)))
                .map(|(n2, _, _)| mu[*n2])
                .sum();
            mu.insert(name.to_string(), if members.is_empty() { 1 } else { -s });
        }
        mu
    }

    #[test]
    fn single_line() {
        let sl = Semilattice::new(vec![flat("X", 0, &[]), flat("a", 1, &["a"])]).unwrap();
        let mu = sl.mobius();
        assert_eq!(mu["X"], 1);
        assert_eq!(mu["a"], -1);
        assert_eq!(sl.region_count(), 2);
    }

    #[test]
    fn double_point() {
        let sl = Semilattice::new(vec![
            flat("X", 0, &[]),
            flat("a", 1, &["a"]),
            flat("b", 1, &["b"]),
            flat("p", 2, &["a", "b"]),
        ])
        .unwrap();
        assert_eq!(sl.mobius()["p"], 1);
        assert_eq!(sl.region_count(), 4);
    }

    #[test]
    fn x3_example() {
        let sl = parse_abstract(X3).unwrap();
        assert_eq!(sl.len(), 13);
        let mu = sl.mobius();
        let hand = hand_mobius(&[
            ("X", 0, &[]),
            ("H1", 1, &["1"]),
            ("H2", 1, &["2"]),
            ("H3", 1, &["3"]),
            ("H4", 1, &["4"]),
            ("H5", 1, &["5"]),
            ("Z", 2, &["1", "2", "3"]),
            ("Y", 2, &["2", "4", "5"]),
            ("L14", 2, &["1", "4"]),
            ("L15", 2, &["1", "5"]),
            ("L34", 2, &["3", "4"]),
            ("L35", 2, &["3", "5"]),
            ("O", 3, &["1", "2", "3", "4", "5"]),
        ]);
        assert_eq!(mu, hand);
        assert_eq!(mu["Z"], 2);
        assert_eq!(mu["Y"], 2);
        for l in ["L14", "L15", "L34", "L35"] {
            assert_eq!(mu[l], 1);
        }
        // -(1 - 5 + 8) = -4
        assert_eq!(mu["O"], -4);
        assert_eq!(sl.region_count(), 18);
        assert_eq!(sl.check_geometric_intervals(), Ok(()));
    }

    #[test]
    fn parse_rejections() {
        assert_eq!(
            parse_abstract("X 0 {}\na 1 {a}\nb 1 {a}\n"),
            Err(SemilatticeError::DuplicateMembers("a".into(), "b".into()))
        );
        assert_eq!(parse_abstract("a 1 {a}\n"), Err(SemilatticeError::MissingZero));
        assert!(matches!(
            parse_abstract("X 0 {}\na one {a}\n"),
            Err(SemilatticeError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_abstract("X 0 {}\na 1 a\n"),
            Err(SemilatticeError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_abstract("X 0 {}\na 2 {a}\np 1 {a,b}\n"),
            Err(SemilatticeError::CodimNotIncreasing { .. })
        ));
        // Two atoms sharing two distinct maximal lower bounds.
        assert!(matches!(
            parse_abstract("X 0 {}\na 1 {a}\nb 1 {b}\np 2 {a,b,c}\nq 2 {a,b,d}\n"),
            Err(SemilatticeError::MissingMeet(_, _))
        ));
    }

    #[test]
    fn round_trip_text() {
        let sl = parse_abstract(X3).unwrap();
        assert_eq!(parse_abstract(&emit_abstract(&sl)).unwrap(), sl);
    }

    #[test]
    fn codim_jump_breaks_semimodularity() {
        let sl = Semilattice::new(vec![
            flat("X", 0, &[]),
            flat("a", 1, &["a"]),
            flat("b", 1, &["b"]),
            flat("p", 3, &["a", "b"]),
        ])
        .unwrap();
        let cx = sl.check_geometric_intervals().unwrap_err();
        assert_eq!(cx.failure, IntervalFailure::NotSemimodular);
        assert_eq!((cx.u.as_str(), cx.v.as_str()), ("a", "b"));
    }

    #[test]
    fn lone_jumps() {
        let sl = Semilattice::new(vec![flat("X", 0, &[]), flat("a", 2, &["a"])]).unwrap();
        let cx = sl.check_geometric_intervals().unwrap_err();
        assert_eq!(cx.failure, IntervalFailure::RankMismatch);
        let sl = Semilattice::new(vec![flat("X", 0, &[]), flat("a", 1, &["a"]), flat("p", 3, &["a", "q"])]).unwrap();
        let cx = sl.check_geometric_intervals().unwrap_err();
        assert_eq!(cx.failure, IntervalFailure::NotAtomic);
    }

    #[test]
    fn relabeling_preserves_mobius() {
        let sl = parse_abstract(X3).unwrap();
        let perm = |m: &String| match m.as_str() {
            "1" => "e".to_string(),
            "2" => "a".to_string(),
            "3" => "d".to_string(),
            "4" => "c".to_string(),
            _ => "b".to_string(),
        };
        let relabeled: Vec<Flat> = sl
            .flats()
            .iter()
            .map(|f| Flat {
                name: f.name.clone(),
                codim: f.codim,
                members: f.members.iter().map(perm).collect(),
            })
            .collect();
        let other = Semilattice::new(relabeled).unwrap();
        assert_eq!(sl.mobius(), other.mobius());
    }
}
