//! Dot structures: black/white dots on `1, 1', 2, 2', .., n, n'`.

use std::fmt;

use serde::Serialize;

use super::halfperm::{for_each_subset, Anchor, CircularHalfPerm};
use super::{DiagramError, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Dot {
    Black,
    White,
}

impl Dot {
    pub fn flip(self) -> Dot {
        match self {
            Dot::Black => Dot::White,
            Dot::White => Dot::Black,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DotStructure {
    pub unprimed: Vec<Dot>,
    pub primed: Vec<Dot>,
}

impl DotStructure {
    pub fn n(&self) -> usize {
        self.unprimed.len()
    }

    /// `(j, k)`: black primed count and white unprimed excess, if well formed.
    pub fn class(&self) -> Result<(usize, usize), DiagramError> {
        if self.primed.len() != self.unprimed.len() || self.unprimed.is_empty() {
            return Err(DiagramError::Malformed("length mismatch".into()));
        }
        let j = self.primed.iter().filter(|&&d| d == Dot::Black).count();
        let w = self.unprimed.iter().filter(|&&d| d == Dot::White).count();
        if w < j {
            return Err(DiagramError::Malformed(format!("{w} white unprimed dots but {j} black primed")));
        }
        Ok((j, w - j))
    }

    pub fn flipped(&self) -> DotStructure {
        DotStructure {
            unprimed: self.unprimed.iter().map(|d| d.flip()).collect(),
            primed: self.primed.iter().map(|d| d.flip()).collect(),
        }
    }

    /// Drops the last point and its prime.
    pub fn truncate_last(&self) -> DotStructure {
        let n = self.n();
        DotStructure { unprimed: self.unprimed[..n - 1].to_vec(), primed: self.primed[..n - 1].to_vec() }
    }

    pub fn push(&self, u: Dot, p: Dot) -> DotStructure {
        let mut d = self.clone();
        d.unprimed.push(u);
        d.primed.push(p);
        d
    }
}

impl fmt::Display for DotStructure {
    /// `o` white, `x` black, in clockwise order `1 1' 2 2' ..`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |d: Dot| if d == Dot::White { 'o' } else { 'x' };
        for i in 0..self.n() {
            write!(f, "{}{}", c(self.unprimed[i]), c(self.primed[i]))?;
            if i + 1 < self.n() {
                write!(f, " ")?;
            }
        }
        Ok(())
    }
}

/// Unprimed: white on the initial point of every block (the designated block
/// excepted), black elsewhere. Primed: black on the final point of every
/// closed block, white elsewhere.
pub fn dot_encode(h: &CircularHalfPerm) -> DotStructure {
    let n = h.n();
    let lab = h.perm().block_of();
    let inv = h.perm().inverse();
    let init = h.initial_points();
    let designated = match h.anchor() {
        Anchor::Designated(b) => Some(b as usize),
        Anchor::Complement(_) => None,
    };
    let mut unprimed = vec![Dot::Black; n];
    let mut primed = vec![Dot::White; n];
    for (b, ip) in init.iter().enumerate() {
        let Some(i) = *ip else { continue };
        if Some(b) == designated {
            continue;
        }
        unprimed[i] = Dot::White;
        if !h.is_open_point(&lab, i) {
            primed[inv.apply(i)] = Dot::Black;
        }
    }
    DotStructure { unprimed, primed }
}

/// Cyclic "first available" matching: `open` dots are matched by the next
/// `close` dot clockwise. Positions are `2i` (unprimed) and `2i+1` (primed).
/// Returns matched `(open_pos, close_pos)` pairs and the unmatched positions.
fn cyclic_match(seq: &[(usize, i8)]) -> (Vec<(usize, usize)>, Vec<usize>) {
    let len = seq.len();
    if len == 0 {
        return (Vec::new(), Vec::new());
    }
    // start right after the last global minimum of the prefix walk
    let mut sum = 0i32;
    let mut min = 0i32;
    let mut start = 0usize;
    for (t, &(_, v)) in seq.iter().enumerate() {
        sum += v as i32;
        if sum <= min {
            min = sum;
            start = t + 1;
        }
    }
    let mut stack: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    let mut leftover = Vec::new();
    for s in 0..len {
        let (pos, v) = seq[(start + s) % len];
        if v > 0 {
            stack.push(pos);
        } else if let Some(o) = stack.pop() {
            pairs.push((o, pos));
        } else {
            leftover.push(pos);
        }
    }
    leftover.extend(stack);
    leftover.sort_unstable();
    (pairs, leftover)
}

pub fn dot_decode(d: &DotStructure) -> Result<CircularHalfPerm, DiagramError> {
    let (_j, k) = d.class()?;
    let n = d.n();
    let dot_at = |pos: usize| if pos % 2 == 0 { d.unprimed[pos / 2] } else { d.primed[pos / 2] };
    let seq: Vec<(usize, i8)> = (0..2 * n).map(|p| (p, if dot_at(p) == Dot::White { 1 } else { -1 })).collect();
    let (pairs, left) = cyclic_match(&seq);
    let mut image = vec![usize::MAX; n];
    let mut link = |a: usize, b: usize| -> Result<(), DiagramError> {
        let (u, v) = if a % 2 == 0 { (a, b) } else { (b, a) };
        if u % 2 != 0 || v % 2 != 1 {
            return Err(DiagramError::Malformed("chord joins two points of the same kind".into()));
        }
        // chord (u, v') means pi(v) = u
        image[v / 2] = u / 2;
        Ok(())
    };
    for &(a, b) in &pairs {
        link(a, b)?;
    }
    // second stage: leftover whites, primed ones close onto unprimed ones
    if left.iter().any(|&p| dot_at(p) == Dot::Black) {
        return Err(DiagramError::Malformed("unmatched black dot".into()));
    }
    let seq2: Vec<(usize, i8)> = left.iter().map(|&p| (p, if p % 2 == 0 { 1 } else { -1 })).collect();
    let (pairs2, left2) = cyclic_match(&seq2);
    if !left2.is_empty() {
        return Err(DiagramError::Malformed("unbalanced open chords".into()));
    }
    for &(a, b) in &pairs2 {
        link(a, b)?;
    }
    let open_initials: Vec<usize> = pairs2.iter().map(|&(a, b)| if a % 2 == 0 { a / 2 } else { b / 2 }).collect();
    let perm = Perm::from_images(image).map_err(|e| DiagramError::Malformed(e.to_string()))?;
    if !perm.is_noncrossing() {
        return Err(DiagramError::Malformed(format!("decoded {perm} crosses")));
    }
    let comp = perm.kreweras_unchecked_pub();
    let clab = comp.block_of();
    let anchor = if k > 0 {
        Anchor::Complement(clab[open_initials[0]] as u8)
    } else {
        let lab = perm.block_of();
        let has_white: Vec<bool> = {
            let mut v = vec![false; n];
            for i in 0..n {
                if d.unprimed[i] == Dot::White {
                    v[lab[i]] = true;
                }
            }
            v
        };
        match (0..n).find(|&b| lab[b] == b && !has_white[b]) {
            Some(b) => Anchor::Designated(b as u8),
            None => {
                // points whose clockwise walk from the unprime never dips below zero
                let walk_ok = |i: usize| {
                    let mut s = 0i32;
                    for t in 0..2 * n {
                        s += seq[(2 * i + t) % (2 * n)].1 as i32;
                        if s < 0 {
                            return false;
                        }
                    }
                    true
                };
                let pts: Vec<usize> = (0..n).filter(|&i| walk_ok(i)).collect();
                let first = *pts.first().ok_or_else(|| DiagramError::Malformed("no complement block".into()))?;
                if pts.iter().any(|&i| clab[i] != clab[first]) || (0..n).filter(|&i| clab[i] == clab[first]).count() != pts.len() {
                    return Err(DiagramError::Malformed("walk test does not give a complement block".into()));
                }
                Anchor::Complement(clab[first] as u8)
            }
        }
    };
    CircularHalfPerm::new(perm, anchor, open_initials)
}

/// All of `D_{j,k,n}`.
pub fn enum_dots(n: usize, j: usize, k: usize) -> Vec<DotStructure> {
    let mut out = Vec::new();
    if j + k > n {
        return out;
    }
    let pts: Vec<usize> = (0..n).collect();
    for_each_subset(&pts, j, |bp| {
        for_each_subset(&pts, j + k, |wu| {
            let mut primed = vec![Dot::White; n];
            for &x in bp {
                primed[x] = Dot::Black;
            }
            let mut unprimed = vec![Dot::Black; n];
            for &x in wu {
                unprimed[x] = Dot::White;
            }
            out.push(DotStructure { unprimed, primed });
        });
    });
    out
}

/// Which of the four dot patterns sits on the last point.
pub fn last_pattern(d: &DotStructure) -> usize {
    let n = d.n();
    match (d.unprimed[n - 1], d.primed[n - 1]) {
        (Dot::White, Dot::White) => 1,
        (Dot::Black, Dot::White) => 2,
        (Dot::White, Dot::Black) => 3,
        (Dot::Black, Dot::Black) => 4,
    }
}

/// The recursion maps on `NCC(n+1)_k`: delete the last point, flipping all
/// colours in the one case where deletion would leave too few whites.
/// Returns `(case, image)`.
pub fn gbar_step(h: &CircularHalfPerm) -> Result<(usize, CircularHalfPerm), DiagramError> {
    let d = dot_encode(h);
    let case = last_pattern(&d);
    let mut t = d.truncate_last();
    if h.k() == 0 && case == 1 {
        t = t.flipped();
    }
    Ok((case, dot_decode(&t)?))
}

/// Inverse of [`gbar_step`] for a given case and target `k` of the source.
pub fn gbar_unstep(case: usize, k: usize, h: &CircularHalfPerm) -> Result<CircularHalfPerm, DiagramError> {
    let mut d = dot_encode(h);
    if k == 0 && case == 1 {
        d = d.flipped();
    }
    let (u, p) = match case {
        1 => (Dot::White, Dot::White),
        2 => (Dot::Black, Dot::White),
        3 => (Dot::White, Dot::Black),
        4 => (Dot::Black, Dot::Black),
        _ => return Err(DiagramError::Invalid(format!("no case {case}"))),
    };
    dot_decode(&d.push(u, p))
}
