//! The five-surface example in R^3, counted two independent ways: Möbius
//! values of its abstract semilattice, and a flood fill over lattice points
//! of the complement of the actual surfaces.

use std::collections::VecDeque;

use topoline_core::semilattice::parse_abstract;

const X3: &str = include_str!("../../../fixtures/x3.slat");

/// Signs of x1, x2, x2 - |x1|, x3, x2 + x3; `None` on a surface.
fn signs(p: [i64; 3]) -> Option<[i8; 5]> {
    let [a, b, c] = p;
    let f = [a, b, b - a.abs(), c, b + c];
    let mut out = [0i8; 5];
    for (o, v) in out.iter_mut().zip(f) {
        if v == 0 {
            return None;
        }
        *o = v.signum() as i8;
    }
    Some(out)
}

/// Components of off-surface lattice points in `[-n, n]^3`, joined along
/// unit steps that keep every sign. Every surface is a cone from the origin,
/// so the cube meets every region.
fn lattice_components(n: i64) -> usize {
    let side = (2 * n + 1) as usize;
    let idx = |p: [i64; 3]| ((p[0] + n) as usize * side + (p[1] + n) as usize) * side + (p[2] + n) as usize;
    let mut seen = vec![false; side * side * side];
    let mut count = 0;
    for x in -n..=n {
        for y in -n..=n {
            for z in -n..=n {
                let start = [x, y, z];
                let Some(sig) = signs(start) else { continue };
                if seen[idx(start)] {
                    continue;
                }
                count += 1;
                seen[idx(start)] = true;
                let mut queue = VecDeque::from([start]);
                while let Some(p) = queue.pop_front() {
                    for axis in 0..3 {
                        for step in [-1, 1] {
                            let mut q = p;
                            q[axis] += step;
                            if q[axis].abs() > n || seen[idx(q)] || signs(q) != Some(sig) {
                                continue;
                            }
                            seen[idx(q)] = true;
                            queue.push_back(q);
                        }
                    }
                }
            }
        }
    }
    count
}

#[test]
fn region_count_is_eighteen() {
    let sl = parse_abstract(X3).unwrap();
    assert_eq!(sl.region_count(), 18);
    assert_eq!(sl.check_geometric_intervals(), Ok(()));
    assert_eq!(lattice_components(6), 18);
    assert_eq!(lattice_components(11), 18);
}

#[test]
fn mobius_signs_alternate() {
    let sl = parse_abstract(X3).unwrap();
    for (f, mu) in sl.flats().iter().zip(sl.mobius_values()) {
        let sign = if f.codim % 2 == 0 { 1 } else { -1 };
        assert_eq!(mu.signum(), sign, "{}", f.name);
    }
}
