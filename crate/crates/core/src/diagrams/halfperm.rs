//! Circular and linear half-permutations.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{check_cap, nc::for_each_nc_rgs, nc::perm_from_rgs, DiagramError, Perm, DEFAULT_CAP};

/// The block everything is measured from. Blocks are named by their smallest point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Anchor {
    /// A cycle of the Kreweras complement.
    Complement(u8),
    /// With no open blocks: a designated cycle of the permutation itself.
    Designated(u8),
}

/// `(pi, anchor, open blocks)`. Open blocks are stored by their initial point,
/// ascending, which is their cyclic order starting from the smallest one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularHalfPerm {
    perm: Perm,
    anchor: Anchor,
    open: Vec<u8>,
}

fn block_containing(p: &Perm, x: usize) -> Vec<usize> {
    let mut b = vec![x];
    let mut y = p.apply(x);
    while y != x {
        b.push(y);
        y = p.apply(y);
    }
    b.sort_unstable();
    b
}

impl CircularHalfPerm {
    /// `open_initials` are the initial points of the open blocks (any order).
    pub fn new(perm: Perm, anchor: Anchor, open_initials: Vec<usize>) -> Result<Self, DiagramError> {
        let mut open: Vec<u8> = open_initials.iter().map(|&x| x as u8).collect();
        open.sort_unstable();
        let h = CircularHalfPerm { perm, anchor, open };
        h.validate()?;
        Ok(h)
    }

    /// Open blocks named by member points; the anchor is the complement cycle
    /// through `bar_point`.
    pub fn with_open_blocks(perm: Perm, bar_point: usize, blocks: &[usize]) -> Result<Self, DiagramError> {
        let comp = perm.kreweras()?;
        let bar = block_containing(&comp, bar_point);
        let mut initials = Vec::new();
        for &b in blocks {
            let blk = block_containing(&perm, b);
            match blk.iter().find(|x| bar.contains(x)) {
                Some(&x) => initials.push(x),
                None => return Err(DiagramError::Invalid(format!("block of {} misses the complement cycle", b + 1))),
            }
        }
        Self::new(perm, Anchor::Complement(bar[0] as u8), initials)
    }

    pub(crate) fn from_parts_unchecked(perm: Perm, anchor: Anchor, open: Vec<u8>) -> Self {
        CircularHalfPerm { perm, anchor, open }
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let bad = |s: String| Err(DiagramError::Invalid(s));
        if !self.perm.is_noncrossing() {
            return Err(DiagramError::NotNoncrossing(self.perm.to_string()));
        }
        let n = self.perm.n();
        match self.anchor {
            Anchor::Designated(b) => {
                if !self.open.is_empty() {
                    return bad("designated block with open blocks".into());
                }
                if b as usize >= n || self.perm.block_of()[b as usize] != b as usize {
                    return bad(format!("designated block {} is not named by its minimum", b + 1));
                }
            }
            Anchor::Complement(b) => {
                let comp = self.perm.kreweras_unchecked_pub();
                if b as usize >= n || comp.block_of()[b as usize] != b as usize {
                    return bad(format!("complement block {} is not named by its minimum", b + 1));
                }
                let bar = block_containing(&comp, b as usize);
                let lab = self.perm.block_of();
                let mut seen = Vec::new();
                for w in self.open.windows(2) {
                    if w[0] >= w[1] {
                        return bad("open blocks not strictly ordered".into());
                    }
                }
                for &x in &self.open {
                    if !bar.contains(&(x as usize)) {
                        return bad(format!("open initial point {} not on the complement cycle", x + 1));
                    }
                    if seen.contains(&lab[x as usize]) {
                        return bad("open block listed twice".into());
                    }
                    seen.push(lab[x as usize]);
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn anchor(&self) -> Anchor {
        self.anchor
    }

    pub fn k(&self) -> usize {
        self.open.len()
    }

    /// Initial points of open blocks in cyclic order.
    pub fn open_initials(&self) -> Vec<usize> {
        self.open.iter().map(|&x| x as usize).collect()
    }

    /// Open blocks as sorted point sets, in cyclic order.
    pub fn open_blocks(&self) -> Vec<Vec<usize>> {
        self.open.iter().map(|&x| block_containing(&self.perm, x as usize)).collect()
    }

    pub fn is_open_point(&self, lab: &[usize], x: usize) -> bool {
        self.open.iter().any(|&o| lab[o as usize] == lab[x])
    }

    /// Sorted points of the anchor block (complement or designated).
    pub fn anchor_block(&self) -> Vec<usize> {
        match self.anchor {
            Anchor::Complement(b) => block_containing(&self.perm.kreweras_unchecked_pub(), b as usize),
            Anchor::Designated(b) => block_containing(&self.perm, b as usize),
        }
    }

    pub fn num_closed(&self) -> usize {
        self.perm.num_cycles() - self.k() - matches!(self.anchor, Anchor::Designated(_)) as usize
    }

    /// Exponent of `c` in the weight: closed blocks, where a designated block
    /// of the permutation is not counted.
    pub fn weight_exponent(&self) -> usize {
        self.num_closed()
    }

    /// Initial point of every block, keyed by the block's minimum; the
    /// designated block maps to `None`.
    pub fn initial_points(&self) -> Vec<Option<usize>> {
        let n = self.n();
        let lab = self.perm.block_of();
        let mut out = vec![None; n];
        let g = |x: usize| (x + 1) % n;
        match self.anchor {
            Anchor::Complement(_) => {
                let bar = self.anchor_block();
                let j = bar[0];
                // first point of each block met walking clockwise from j
                let mut x = j;
                for _ in 0..n {
                    if out[lab[x]].is_none() {
                        out[lab[x]] = Some(x);
                    }
                    x = g(x);
                }
            }
            Anchor::Designated(b) => {
                let b = b as usize;
                let mut x = g(b);
                for _ in 0..n {
                    if lab[x] != b && out[lab[x]].is_none() {
                        out[lab[x]] = Some(x);
                    }
                    x = g(x);
                }
            }
        }
        out
    }

    /// Closed-block count and `k` tuple used for weights.
    pub fn profile(&self) -> (usize, usize) {
        (self.num_closed(), self.k())
    }

    /// The rotation by `r` steps clockwise.
    pub fn rotate(&self, r: usize) -> CircularHalfPerm {
        let n = self.n();
        let sh = |x: usize| (x + r) % n;
        let mut map = vec![0usize; n];
        for i in 0..n {
            map[sh(i)] = sh(self.perm.apply(i));
        }
        let perm = Perm::from_images(map).unwrap();
        let anchor_pt = sh(self.anchor_block()[0]);
        let anchor = match self.anchor {
            Anchor::Complement(_) => Anchor::Complement(perm.kreweras_unchecked_pub().block_of()[anchor_pt] as u8),
            Anchor::Designated(_) => Anchor::Designated(perm.block_of()[anchor_pt] as u8),
        };
        let mut open: Vec<u8> = self.open.iter().map(|&x| sh(x as usize) as u8).collect();
        open.sort_unstable();
        CircularHalfPerm { perm, anchor, open }
    }
}

impl Perm {
    pub(crate) fn kreweras_unchecked_pub(&self) -> Perm {
        Perm::long_cycle(self.n()).compose(&self.inverse())
    }
}

impl fmt::Display for CircularHalfPerm {
    /// `(1,2,3)(4)(5,6,7)(8) open[(1,2,3),(4)] bar(1,4,5,8)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |b: &[usize]| b.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}", self.perm)?;
        if !self.open.is_empty() {
            let parts: Vec<String> = self.open_blocks().iter().map(|b| format!("({})", one(b))).collect();
            write!(f, " open[{}]", parts.join(","))?;
        }
        match self.anchor {
            Anchor::Complement(_) => write!(f, " bar({})", one(&self.anchor_block())),
            Anchor::Designated(_) => write!(f, " designated({})", one(&self.anchor_block())),
        }
    }
}

impl fmt::Debug for CircularHalfPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CircularHalfPerm[{self}]")
    }
}

#[derive(Serialize)]
struct HalfJson {
    n: usize,
    cycles: Perm,
    open: Vec<Vec<usize>>,
    designated: Option<Designation>,
}

#[derive(Serialize)]
struct Designation {
    kind: &'static str,
    block: Vec<usize>,
}

impl Serialize for CircularHalfPerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let plus = |b: Vec<usize>| b.into_iter().map(|x| x + 1).collect::<Vec<_>>();
        let kind = match self.anchor {
            Anchor::Complement(_) => "complement",
            Anchor::Designated(_) => "block",
        };
        HalfJson {
            n: self.n(),
            cycles: self.perm.clone(),
            open: self.open_blocks().into_iter().map(plus).collect(),
            designated: Some(Designation { kind, block: plus(self.anchor_block()) }),
        }
        .serialize(s)
    }
}

/// `NCC(n)_k`, sorted. For `k = 0` both kinds of designated block appear.
pub fn enum_ncc(n: usize, k: usize) -> Result<Vec<CircularHalfPerm>, DiagramError> {
    enum_ncc_capped(n, k, DEFAULT_CAP)
}

pub fn enum_ncc_capped(n: usize, k: usize, cap: usize) -> Result<Vec<CircularHalfPerm>, DiagramError> {
    check_cap("n", n, cap)?;
    if k > n || n == 0 {
        return Err(DiagramError::Invalid(format!("need 0 <= k <= n and n >= 1, got n={n} k={k}")));
    }
    let mut out = Vec::new();
    for_each_nc_rgs(n, |rgs| {
        let p = perm_from_rgs(rgs);
        let comp = p.kreweras_unchecked_pub();
        let lab = p.block_of();
        if k == 0 {
            for cyc in comp.cycles() {
                out.push(CircularHalfPerm::from_parts_unchecked(p.clone(), Anchor::Complement(cyc[0] as u8), vec![]));
            }
            for cyc in p.cycles() {
                out.push(CircularHalfPerm::from_parts_unchecked(p.clone(), Anchor::Designated(cyc[0] as u8), vec![]));
            }
            return;
        }
        for bar in comp.cycles() {
            // each point of bar is the initial point of a distinct block
            let mut pts = bar.clone();
            pts.sort_unstable();
            debug_assert!({
                let mut l: Vec<usize> = pts.iter().map(|&x| lab[x]).collect();
                l.sort_unstable();
                l.dedup();
                l.len() == pts.len()
            });
            for_each_subset(&pts, k, |sub| {
                out.push(CircularHalfPerm::from_parts_unchecked(
                    p.clone(),
                    Anchor::Complement(pts[0] as u8),
                    sub.iter().map(|&x| x as u8).collect(),
                ));
            });
        }
    });
    out.sort();
    Ok(out)
}

/// `k`-subsets of a sorted slice, in lexicographic order.
pub fn for_each_subset(items: &[usize], k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(items, k, 0, &mut cur, &mut f);
}

/// A circular half-permutation whose complement anchor contains the point 1
/// (0 internally). With no open blocks it is a plain non-crossing partition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearHalfPerm {
    inner: CircularHalfPerm,
}

impl LinearHalfPerm {
    pub fn new(inner: CircularHalfPerm) -> Result<Self, DiagramError> {
        if inner.anchor() != Anchor::Complement(0) {
            return Err(DiagramError::Invalid(format!("{inner} is not linear")));
        }
        Ok(LinearHalfPerm { inner })
    }

    /// From sorted blocks and the list of open blocks given by any member point.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>], open_members: &[usize]) -> Result<Self, DiagramError> {
        let perm = Perm::from_blocks(n, blocks)?;
        Self::new(CircularHalfPerm::with_open_blocks(perm, 0, open_members)?)
    }

    pub fn circular(&self) -> &CircularHalfPerm {
        &self.inner
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn k(&self) -> usize {
        self.inner.k()
    }

    pub fn perm(&self) -> &Perm {
        self.inner.perm()
    }

    pub fn num_closed(&self) -> usize {
        self.inner.num_closed()
    }

    /// Blocks as sorted sets ordered by minimum, with an open flag.
    pub fn blocks(&self) -> Vec<(Vec<usize>, bool)> {
        let lab = self.perm().block_of();
        self.perm()
            .cycles()
            .into_iter()
            .map(|c| {
                let open = self.inner.is_open_point(&lab, c[0]);
                (c, open)
            })
            .collect()
    }

    /// Open blocks ordered by smallest element.
    pub fn open_blocks(&self) -> Vec<Vec<usize>> {
        self.inner.open_blocks()
    }
}

impl fmt::Display for LinearHalfPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|(b, open)| {
                let s = b.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",");
                if *open { format!("({s})*") } else { format!("({s})") }
            })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

impl fmt::Debug for LinearHalfPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearHalfPerm[{self}]")
    }
}

impl Serialize for LinearHalfPerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.inner.serialize(s)
    }
}

/// `NCL(n)_k`, sorted.
pub fn enum_ncl(n: usize, k: usize) -> Result<Vec<LinearHalfPerm>, DiagramError> {
    enum_ncl_capped(n, k, DEFAULT_CAP)
}

pub fn enum_ncl_capped(n: usize, k: usize, cap: usize) -> Result<Vec<LinearHalfPerm>, DiagramError> {
    check_cap("n", n, cap)?;
    if k > n || n == 0 {
        return Err(DiagramError::Invalid(format!("need 0 <= k <= n and n >= 1, got n={n} k={k}")));
    }
    let mut out = Vec::new();
    for_each_nc_rgs(n, |rgs| {
        let p = perm_from_rgs(rgs);
        // outer blocks meet the complement cycle through 0 at their minimum
        let comp = p.kreweras_unchecked_pub();
        let mut bar = vec![0usize];
        let mut x = comp.apply(0);
        while x != 0 {
            bar.push(x);
            x = comp.apply(x);
        }
        bar.sort_unstable();
        for_each_subset(&bar, k, |sub| {
            out.push(LinearHalfPerm {
                inner: CircularHalfPerm::from_parts_unchecked(p.clone(), Anchor::Complement(0), sub.iter().map(|&x| x as u8).collect()),
            });
        });
    });
    out.sort();
    Ok(out)
}

/// Histogram of closed-block counts.
pub fn closed_histogram<'a>(items: impl IntoIterator<Item = &'a CircularHalfPerm>) -> Vec<u64> {
    let mut h = Vec::new();
    for x in items {
        let j = x.weight_exponent();
        if h.len() <= j {
            h.resize(j + 1, 0);
        }
        h[j] += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::PolyC;

    fn weight(items: &[CircularHalfPerm]) -> PolyC {
        PolyC::from_counts(&closed_histogram(items))
    }

    #[test]
    fn small_ncc() {
        assert_eq!(enum_ncc(2, 2).unwrap().len(), 1);
        let x = enum_ncc(2, 1).unwrap();
        assert_eq!(x.len(), 4);
        assert_eq!(weight(&x), PolyC::from_ints(&[2, 2]));
        assert_eq!(weight(&enum_ncc(1, 0).unwrap()), PolyC::from_ints(&[1, 1]));
        assert_eq!(weight(&enum_ncc(2, 0).unwrap()), PolyC::from_ints(&[1, 4, 1]));
    }

    #[test]
    fn small_ncl() {
        let w = |n, k| {
            let v: Vec<CircularHalfPerm> = enum_ncl(n, k).unwrap().into_iter().map(|l| l.inner).collect();
            weight(&v)
        };
        assert_eq!(w(1, 1), PolyC::one());
        assert_eq!(w(1, 0), PolyC::c());
        assert_eq!(w(2, 1), PolyC::from_ints(&[1, 2]));
    }

    #[test]
    fn blocks_meet_complement_once() {
        for n in 1..=7 {
            for p in crate::diagrams::enum_nc(n).unwrap() {
                let comp = p.kreweras().unwrap();
                for b in p.cycles() {
                    for bb in comp.cycles() {
                        assert!(b.iter().filter(|x| bb.contains(x)).count() <= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn initial_point_independent_of_start() {
        // walking from any point of the anchor gives the same first points
        for n in 1..=7 {
            for h in enum_ncc(n, 1).unwrap() {
                let lab = h.perm().block_of();
                let bar = h.anchor_block();
                let want = h.initial_points();
                for &j in &bar {
                    let mut got = vec![None; n];
                    let mut x = j;
                    for _ in 0..n {
                        if got[lab[x]].is_none() {
                            got[lab[x]] = Some(x);
                        }
                        x = (x + 1) % n;
                    }
                    assert_eq!(got, want, "{h}");
                }
                for &o in &h.open_initials() {
                    assert_eq!(want[lab[o]], Some(o));
                }
            }
        }
    }

    #[test]
    fn validation_rejects_bad_open_block() {
        let q: Perm = "(1,4)(2,3)".parse().unwrap();
        // (2,3) is nested inside (1,4), away from the complement cycle (1)
        assert!(CircularHalfPerm::with_open_blocks(q, 0, &[1]).is_err());
        let p: Perm = "(1,2,3)(4)(5,6,7)(8)".parse().unwrap();
        let h = CircularHalfPerm::with_open_blocks(p, 0, &[0, 3]).unwrap();
        assert_eq!(h.to_string(), "(1,2,3)(4)(5,6,7)(8) open[(1,2,3),(4)] bar(1,4,5,8)");
        assert_eq!(h.num_closed(), 2);
    }
}
