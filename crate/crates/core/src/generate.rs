//! Seeded random arrangements for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::build_arrangement;
use crate::geom::{strictly_ccw_between, Dir, Point, Vector};
use crate::model::Topoline;
use crate::scalar::Scalar;

pub const MAX_LINES: usize = 12;
pub const MAX_VERTICES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("at most {MAX_LINES} lines, got {0}")]
    TooManyLines(usize),
    #[error("between 1 and {MAX_VERTICES} vertices per line, got {0}")]
    BadVertexCount(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Straight,
    Bumpy,
    Bent,
    Parallel,
    Touching,
}

const KINDS: [Kind; 5] = [Kind::Straight, Kind::Bumpy, Kind::Bent, Kind::Parallel, Kind::Touching];

/// Attempts per line before falling back to straight lines only.
const TRIES: usize = 40;

/// A valid arrangement of `n_lines` lines named `l0, l1, ...`, each with at
/// most `max_vertices` vertices. Equal seeds give equal output.
pub fn generate_random_arrangement<T: Scalar>(
    seed: u64,
    n_lines: usize,
    max_vertices: usize,
) -> Result<Vec<Topoline<T>>, GenerateError> {
    if n_lines > MAX_LINES {
        return Err(GenerateError::TooManyLines(n_lines));
    }
    if max_vertices == 0 || max_vertices > MAX_VERTICES {
        return Err(GenerateError::BadVertexCount(max_vertices));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<Topoline<T>> = Vec::with_capacity(n_lines);
    for i in 0..n_lines {
        let id = format!("l{i}");
        let mut attempt = 0;
        loop {
            let kind = if attempt < TRIES {
                *KINDS.choose(&mut rng).expect("nonempty")
            } else {
                Kind::Straight
            };
            attempt += 1;
            let Some(line) = candidate(&mut rng, kind, &id, &lines, max_vertices) else {
                continue;
            };
            let mut trial = lines.clone();
            trial.push(line);
            if build_arrangement(trial.clone()).is_ok() {
                lines = trial;
                break;
            }
        }
    }
    Ok(lines)
}

fn coord<T: Scalar>(rng: &mut ChaCha8Rng) -> T {
    T::from_int(rng.gen_range(-16..=16)) / T::from_int(2)
}

fn point<T: Scalar>(rng: &mut ChaCha8Rng) -> Point<T> {
    Point::new(coord(rng), coord(rng))
}

fn dir<T: Scalar>(rng: &mut ChaCha8Rng) -> Dir<T> {
    loop {
        let (x, y) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        if (x, y) != (0, 0) {
            return Dir::from_ints(x, y);
        }
    }
}

fn candidate<T: Scalar>(
    rng: &mut ChaCha8Rng,
    kind: Kind,
    id: &str,
    existing: &[Topoline<T>],
    max_vertices: usize,
) -> Option<Topoline<T>> {
    match kind {
        Kind::Straight => Some(Topoline::straight(id, point(rng), dir(rng))),
        Kind::Bumpy => {
            if max_vertices < 2 {
                return None;
            }
            let count = rng.gen_range(2..=max_vertices);
            let base = point::<T>(rng);
            let d = dir::<T>(rng);
            let along = d.vector();
            let normal = Vector::new(-along.y.clone(), along.x.clone());
            let mut t = 0i64;
            let vertices = (0..count)
                .map(|_| {
                    t += rng.gen_range(1..=2);
                    let e = T::from_int(rng.gen_range(-1..=1)) / T::from_int(2);
                    base.offset(&along, &T::from_int(t)).offset(&normal, &e)
                })
                .collect();
            Some(Topoline::new(id, d.reversed(), vertices, d))
        }
        Kind::Bent => {
            let (s, e) = (dir::<T>(rng), dir::<T>(rng));
            (s != e).then(|| Topoline::new(id, s, vec![point(rng)], e))
        }
        Kind::Parallel => {
            let base = existing.choose(rng)?;
            let shift = Vector::new(coord::<T>(rng), coord::<T>(rng));
            let mut l = base.map_affine([[T::one(), T::zero()], [T::zero(), T::one()]], &shift);
            l.id = id.into();
            Some(l)
        }
        Kind::Touching => {
            let base = existing.choose(rng)?;
            let v = base.vertices.choose(rng)?.clone();
            let at = match rng.gen_range(0..3) {
                0 => v,
                1 => v.add(&base.end_ray.vector()),
                _ => v.add(&base.start_ray.vector()),
            };
            let (fwd, back) = base.directions_at(&at)?;
            let (f, b) = (fwd.vector(), back.vector());
            let side: Vec<Dir<T>> = (0..60)
                .map(|_| dir::<T>(rng))
                .filter(|d| strictly_ccw_between(&f, &d.vector(), &b))
                .take(2)
                .collect();
            if side.len() < 2 || side[0] == side[1] {
                return None;
            }
            Some(Topoline::new(id, side[0].clone(), vec![at], side[1].clone()))
        }
    }
}
