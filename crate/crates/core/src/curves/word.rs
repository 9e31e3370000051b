//! Word-based oracle for curves on a punctured sphere.
//!
//! Finite punctures `1..=n` sit on the real line and the last puncture is at
//! infinity. The line is cut into segments `s_0 = (-inf, 1)`, `s_k = (k, k+1)`
//! and `s_n = (n, inf)`. The free group on `x_1..x_n` is the fundamental group
//! based in the upper half-plane, `x_i` dipping down through `s_{i-1}` and
//! coming back up through `s_i`. A closed curve is recorded by its cyclic
//! sequence of segment crossings, alternately downward and upward.

use super::triangulation::SphereTriangulation;

/// Letter `+i` is `x_i`, `-i` is its inverse.
pub type Letter = i8;

/// A half twist, or its inverse, exchanging punctures `index` and `index + 1`;
/// `index = n` exchanges puncture `n` with the puncture at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct HalfTwist {
    pub index: u8,
    pub inverse: bool,
}

impl HalfTwist {
    pub const fn new(index: u8, inverse: bool) -> Self {
        HalfTwist { index, inverse }
    }

    pub fn inv(self) -> Self {
        HalfTwist { index: self.index, inverse: !self.inverse }
    }

    /// All generators and inverses for `n` finite punctures.
    pub fn all(n: usize) -> Vec<HalfTwist> {
        (1..=n as u8).flat_map(|i| [HalfTwist::new(i, false), HalfTwist::new(i, true)]).collect()
    }
}

/// Inverse of a word of half twists.
pub fn inverse_word(w: &[HalfTwist]) -> Vec<HalfTwist> {
    w.iter().rev().map(|g| g.inv()).collect()
}

/// Free reduction.
pub fn reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut w = reduce(word);
    let mut start = 0;
    let mut end = w.len();
    while end - start >= 2 && w[start] == -w[end - 1] {
        start += 1;
        end -= 1;
    }
    w.truncate(end);
    w.drain(..start);
    w
}

fn inv_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| -l).collect()
}

/// Image of the letter `x_j` under a generator, for `n` finite punctures.
fn image_of_generator(n: usize, g: HalfTwist, j: i8) -> Vec<Letter> {
    let i = g.index as i8;
    let n8 = n as i8;
    if i < n8 {
        match (g.inverse, j) {
            (false, j) if j == i => vec![i, i + 1, -i],
            (false, j) if j == i + 1 => vec![i],
            (true, j) if j == i => vec![i + 1],
            (true, j) if j == i + 1 => vec![-(i + 1), i, i + 1],
            _ => vec![j],
        }
    } else if j != n8 {
        vec![j]
    } else {
        // With p = x_1 ... x_{n-1}: x_n -> p^-1 x_n^-1, inverse x_n -> x_n^-1 p^-1.
        let p_inv: Vec<Letter> = (1..n8).rev().map(|k| -k).collect();
        if g.inverse {
            let mut w = vec![-n8];
            w.extend(p_inv);
            w
        } else {
            let mut w = p_inv;
            w.push(-n8);
            w
        }
    }
}

/// Applies one generator to a word.
pub fn apply_generator(n: usize, g: HalfTwist, word: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(word.len() * 2);
    for &l in word {
        let img = image_of_generator(n, g, l.abs());
        if l > 0 {
            out.extend(img);
        } else {
            out.extend(inv_letters(&img));
        }
    }
    reduce(&out)
}

/// Applies a word of generators, leftmost acting last: `w = g1 g2 ... gk`
/// sends `c` to `g1(g2(...gk(c)))`.
pub fn apply_word(n: usize, w: &[HalfTwist], word: &[Letter]) -> Vec<Letter> {
    w.iter().rev().fold(word.to_vec(), |acc, &g| apply_generator(n, g, &acc))
}

/// Word of the round curve enclosing the two punctures at the ends of segment `j`.
pub fn round_curve_word(n: usize, j: usize) -> Vec<Letter> {
    let n8 = n as i8;
    match j {
        0 => (2..=n8).collect(),
        j if j == n => (1..n8).collect(),
        j => vec![j as i8, j as i8 + 1],
    }
}

/// Cyclically reduced crossing sequence, starting with a downward crossing.
pub fn crossing_sequence(word: &[Letter]) -> Vec<u8> {
    let mut seq: Vec<u8> = Vec::with_capacity(word.len() * 2);
    for &l in word {
        let i = l.unsigned_abs();
        let (down, up) = if l > 0 { (i - 1, i) } else { (i, i - 1) };
        for s in [down, up] {
            if seq.last() == Some(&s) {
                seq.pop();
            } else {
                seq.push(s);
            }
        }
    }
    loop {
        if seq.len() >= 2 && seq[0] == seq[seq.len() - 1] {
            seq.pop();
            seq.remove(0);
            // Restore the down-first convention.
            let first = seq.remove(0);
            seq.push(first);
            // The moved entry may now cancel with its new neighbour.
            let k = seq.len();
            if k >= 2 && seq[k - 1] == seq[k - 2] {
                seq.truncate(k - 2);
            }
        } else {
            break;
        }
    }
    seq
}

/// Normal coordinates on the standard triangulation, read off a crossing sequence.
pub fn coords_from_sequence(tri: &SphereTriangulation, seq: &[u8]) -> Vec<i64> {
    let n = tri.finite_punctures();
    let mut w = vec![0i64; tri.edge_count()];
    let len = seq.len();
    for (k, &a) in seq.iter().enumerate() {
        w[a as usize] += 1;
        let b = seq[(k + 1) % len];
        let upper = k % 2 == 1;
        let (lo, hi) = (a.min(b) as usize, a.max(b) as usize);
        for j in (lo + 1)..=hi {
            if (2..n).contains(&j) {
                w[tri.ray(j, upper)] += 1;
            }
        }
    }
    w
}

/// Intersection number with the round curve around segment `j`, by scanning
/// the excursions between consecutive crossings of `s_j`.
///
/// An excursion that only visits the segment(s) adjacent to `s_j` bounds a
/// disk together with the round curve and is removable.
pub fn round_intersection_from_sequence(n: usize, seq: &[u8], j: usize) -> u64 {
    let m = n + 1;
    let j8 = j as u8;
    let left = ((j + m - 1) % m) as u8;
    let right = ((j + 1) % m) as u8;
    let hits: Vec<usize> = seq.iter().enumerate().filter(|(_, &s)| s == j8).map(|(k, _)| k).collect();
    if hits.is_empty() {
        return 0;
    }
    let len = seq.len();
    let mut removable = 0;
    for (t, &k) in hits.iter().enumerate() {
        let next = hits[(t + 1) % hits.len()];
        let gap = (next + len - k) % len;
        let gap = if gap == 0 { len } else { gap };
        let content: Vec<u8> = (1..gap).map(|d| seq[(k + d) % len]).collect();
        let inessential = matches!(content.as_slice(), [x] if *x == left || *x == right)
            || matches!(content.as_slice(), [x, y] if (*x == left && *y == right) || (*x == right && *y == left));
        if inessential {
            removable += 1;
        }
    }
    2 * (hits.len() as u64 - removable)
}

/// Rotation-invariant form of a crossing sequence (even rotations only).
pub fn canonical_sequence(seq: &[u8]) -> Vec<u8> {
    let len = seq.len();
    (0..len)
        .step_by(2)
        .map(|r| seq[r..].iter().chain(&seq[..r]).copied().collect::<Vec<u8>>())
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_invert() {
        let n = 4;
        let w: Vec<Letter> = vec![1, 2, -3, 4, 4, -1, 2];
        for g in HalfTwist::all(n) {
            let there = apply_generator(n, g, &w);
            let back = apply_generator(n, g.inv(), &there);
            assert_eq!(back, reduce(&w), "{g:?}");
        }
    }

    #[test]
    fn generators_fix_the_boundary_word() {
        // The loop around all finite punctures is the loop around infinity.
        for n in [3usize, 4] {
            let total: Vec<Letter> = (1..=n as i8).collect();
            for g in HalfTwist::all(n).into_iter().filter(|g| (g.index as usize) < n) {
                assert_eq!(apply_generator(n, g, &total), total);
            }
        }
    }

    #[test]
    fn braid_relations_hold_on_curves() {
        let n = 4;
        let probes: Vec<Vec<Letter>> = (0..=n).map(|j| round_curve_word(n, j)).collect();
        let s = |i: u8| HalfTwist::new(i, false);
        for p in &probes {
            for i in 1..n as u8 {
                let k = i + 1;
                let lhs = apply_word(n, &[s(i), s(k), s(i)], p);
                let rhs = apply_word(n, &[s(k), s(i), s(k)], p);
                assert_eq!(
                    canonical_sequence(&crossing_sequence(&cyclic_reduce(&lhs))),
                    canonical_sequence(&crossing_sequence(&cyclic_reduce(&rhs)))
                );
            }
            // Far-apart half twists commute.
            let lhs = apply_word(n, &[s(1), s(n as u8)], p);
            let rhs = apply_word(n, &[s(n as u8), s(1)], p);
            assert_eq!(
                canonical_sequence(&crossing_sequence(&cyclic_reduce(&lhs))),
                canonical_sequence(&crossing_sequence(&cyclic_reduce(&rhs)))
            );
        }
    }

    #[test]
    fn adjacent_round_curves_meet_twice() {
        let n = 4;
        for j in 0..=n {
            let a = round_curve_word(n, j);
            let seq = crossing_sequence(&a);
            assert_eq!(round_intersection_from_sequence(n, &seq, j), 0);
            let k = (j + 1) % (n + 1);
            assert_eq!(round_intersection_from_sequence(n, &seq, k), 2);
            let far = (j + 2) % (n + 1);
            assert_eq!(round_intersection_from_sequence(n, &seq, far), 0);
        }
    }
}
