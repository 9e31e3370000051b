//! Intersection with round curves, read off the chord diagrams that a normal
//! curve cuts out of the two half-planes.
//!
//! Crossings of the segment `s_a` are numbered left to right. In each
//! half-plane the strands are disjoint chords between segments; chords
//! joining the same pair of segments are parallel, so each half-plane is a
//! short list of blocks, each pairing an index range on one segment with a
//! reversed index range on another.

use super::triangulation::SphereTriangulation;

/// `len` parallel chords: `(seg_a, a + t)` joined to `(seg_b, b + len - 1 - t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChordBlock {
    pub seg_a: usize,
    pub a: i64,
    pub seg_b: usize,
    pub b: i64,
    pub len: i64,
}

/// Chord blocks of one half-plane.
pub fn chord_blocks(tri: &SphereTriangulation, w: &[i64], upper: bool) -> Vec<ChordBlock> {
    let n = tri.finite_punctures();
    let side = |k: usize| -> usize {
        // Edge from puncture k to infinity in this half-plane.
        if k == 1 {
            0
        } else if k == n {
            n
        } else {
            tri.ray(k, upper)
        }
    };
    let mut blocks = Vec::new();
    // Open runs: (segment, start, count), topmost last.
    let mut stack: Vec<(usize, i64, i64)> = vec![(0, 0, w[0])];
    let mut close = |stack: &mut Vec<(usize, i64, i64)>, seg: usize, mut count: i64| {
        let mut at = 0;
        while count > 0 {
            let Some(top) = stack.last_mut() else { break };
            let take = top.2.min(count);
            // Closing points at..at+take pair with the last `take` opens, reversed.
            blocks.push(ChordBlock { seg_a: seg, a: at, seg_b: top.0, b: top.1 + top.2 - take, len: take });
            top.2 -= take;
            if top.2 == 0 {
                stack.pop();
            }
            at += take;
            count -= take;
        }
    };
    for a in 1..n {
        let (left, right) = (side(a), side(a + 1));
        let closes = (w[a] + w[left] - w[right]) / 2;
        close(&mut stack, a, closes);
        let opens = w[a] - closes;
        if opens > 0 {
            stack.push((a, closes, opens));
        }
    }
    close(&mut stack, n, w[n]);
    blocks.retain(|b| b.len > 0);
    blocks
}

/// Half-open integer intervals.
type Span = (i64, i64);

fn overlap(x: Span, y: Span) -> i64 {
    (x.1.min(y.1) - x.0.max(y.0)).max(0)
}

/// Ranges of crossings on `seg` whose chord partner lies on `other`.
fn partner_spans(blocks: &[ChordBlock], seg: usize, other: usize) -> Vec<Span> {
    blocks
        .iter()
        .filter_map(|b| {
            if b.seg_a == seg && b.seg_b == other {
                Some((b.a, b.a + b.len))
            } else if b.seg_b == seg && b.seg_a == other {
                Some((b.b, b.b + b.len))
            } else {
                None
            }
        })
        .collect()
}

fn count_common(xs: &[Span], ys: &[Span]) -> i64 {
    xs.iter().map(|&x| ys.iter().map(|&y| overlap(x, y)).sum::<i64>()).sum()
}

/// Geometric intersection number with the round curve around segment `j`.
pub fn round_intersection(tri: &SphereTriangulation, w: &[i64], j: usize) -> u64 {
    let n = tri.finite_punctures();
    let m = n + 1;
    let halves = [chord_blocks(tri, w, true), chord_blocks(tri, w, false)];
    let left = (j + m - 1) % m;
    let right = (j + 1) % m;
    let mut removable = 0;
    // Excursions visiting one neighbouring segment.
    for nb in [left, right] {
        let up = partner_spans(&halves[0], nb, j);
        let down = partner_spans(&halves[1], nb, j);
        removable += count_common(&up, &down);
    }
    // Excursions hugging the round curve: a chord from left to right in one
    // half-plane whose ends both return to s_j through the other half-plane.
    for h in 0..2 {
        let other = &halves[1 - h];
        let back_left = partner_spans(other, left, j);
        let back_right = partner_spans(other, right, j);
        for b in &halves[h] {
            let (p0, q0) = if b.seg_a == left && b.seg_b == right {
                (b.a, b.b)
            } else if b.seg_a == right && b.seg_b == left {
                (b.b, b.a)
            } else {
                continue;
            };
            // Chord t joins left point p0 + t to right point q0 + len - 1 - t.
            let ts_left: Vec<Span> = back_left.iter().map(|&(s, e)| (s - p0, e - p0)).collect();
            let ts_right: Vec<Span> = back_right.iter().map(|&(s, e)| (q0 + b.len - e, q0 + b.len - s)).collect();
            let ts_left: Vec<Span> = ts_left.iter().map(|&(s, e)| (s.max(0), e.min(b.len))).collect();
            removable += count_common(&ts_left, &ts_right);
        }
    }
    (2 * (w[j] - removable)).max(0) as u64
}
