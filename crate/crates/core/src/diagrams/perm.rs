//! Permutations of small sets, stored as 0-based image arrays.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::DiagramError;

/// Bijection of `{0, .., n-1}`. Displayed 1-based in cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    map: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { map: (0..n as u8).collect() }
    }

    /// The long cycle `(1, 2, .., n)`.
    pub fn long_cycle(n: usize) -> Self {
        Perm { map: (0..n).map(|i| ((i + 1) % n) as u8).collect() }
    }

    /// `(1..m)(m+1..m+n)`.
    pub fn annular_gamma(m: usize, n: usize) -> Self {
        let mut map: Vec<u8> = (0..m).map(|i| ((i + 1) % m) as u8).collect();
        map.extend((0..n).map(|i| (m + (i + 1) % n) as u8));
        Perm { map }
    }

    pub fn from_images(map: Vec<usize>) -> Result<Self, DiagramError> {
        let n = map.len();
        if n > u8::MAX as usize {
            return Err(DiagramError::Invalid(format!("size {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || seen[x] {
                return Err(DiagramError::Invalid(format!("not a bijection: {map:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { map: map.into_iter().map(|x| x as u8).collect() })
    }

    pub(crate) fn from_raw(map: Vec<u8>) -> Self {
        debug_assert!(Self::from_images(map.iter().map(|&x| x as usize).collect()).is_ok());
        Perm { map }
    }

    /// Cycles given with 0-based points; missing points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, DiagramError> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= n || seen[x] {
                    return Err(DiagramError::Invalid(format!("bad cycle {cyc:?}")));
                }
                seen[x] = true;
                map[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        Self::from_images(map)
    }

    /// A block given as a set, visited in increasing order.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, DiagramError> {
        let sorted: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        Self::from_cycles(n, &sorted)
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&x| x as usize).collect()
    }

    pub fn raw(&self) -> &[u8] {
        &self.map
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { map: inv }
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm { map: other.map.iter().map(|&x| self.map[x as usize]).collect() }
    }

    /// Cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        let n = self.n();
        let mut seen = [false; 256];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.map[x] as usize;
            }
        }
        count
    }

    /// Block label of every point: the smallest point of its cycle.
    pub fn block_of(&self) -> Vec<usize> {
        let mut lab = vec![usize::MAX; self.n()];
        for cyc in self.cycles() {
            for &x in &cyc {
                lab[x] = cyc[0];
            }
        }
        lab
    }

    /// `#(pi) + #(gamma pi^-1) = n + 1`.
    pub fn is_noncrossing(&self) -> bool {
        let n = self.n();
        n == 0 || self.num_cycles() + self.kreweras_unchecked().num_cycles() == n + 1
    }

    fn kreweras_unchecked(&self) -> Perm {
        Perm::long_cycle(self.n()).compose(&self.inverse())
    }

    /// Kreweras complement `gamma pi^-1`.
    pub fn kreweras(&self) -> Result<Perm, DiagramError> {
        if !self.is_noncrossing() {
            return Err(DiagramError::NotNoncrossing(self.to_string()));
        }
        Ok(self.kreweras_unchecked())
    }

    /// Induced permutation on the points where `keep` holds: follow `self`
    /// until the orbit re-enters the set.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> Vec<Option<usize>> {
        (0..self.n())
            .map(|i| {
                if !keep(i) {
                    return None;
                }
                let mut x = self.apply(i);
                while !keep(x) {
                    x = self.apply(x);
                }
                Some(x)
            })
            .collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() == 0 {
            return write!(f, "()");
        }
        for cyc in self.cycles() {
            let parts: Vec<String> = cyc.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

impl FromStr for Perm {
    type Err = DiagramError;

    /// Cycle notation with 1-based points; the size is the largest point.
    fn from_str(s: &str) -> Result<Self, DiagramError> {
        let bad = || DiagramError::Parse(s.to_string());
        let mut cycles = Vec::new();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let end = body.find(')').ok_or_else(bad)?;
            let cyc = body[..end]
                .split(',')
                .map(|t| t.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            cycles.push(cyc);
            rest = &body[end + 1..];
        }
        let n = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        Perm::from_cycles(n, &cycles)
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let cycles: Vec<Vec<usize>> =
            self.cycles().into_iter().map(|c| c.into_iter().map(|x| x + 1).collect()).collect();
        cycles.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let cycles: Vec<Vec<usize>> = Vec::deserialize(d)?;
        let n = cycles.iter().flatten().copied().max().unwrap_or(0);
        let zero: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| c.iter().map(|&x| x.saturating_sub(1)).collect())
            .collect();
        Perm::from_cycles(n, &zero).map_err(serde::de::Error::custom)
    }
}

/// Restricted growth strings of length `n`: `a[0] = 0`, `a[i] <= 1 + max(a[..i])`.
pub struct RgsIter {
    a: Vec<u8>,
    max: Vec<u8>,
    done: bool,
}

impl RgsIter {
    pub fn new(n: usize) -> Self {
        RgsIter { a: vec![0; n], max: vec![0; n], done: false }
    }
}

impl Iterator for RgsIter {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let n = self.a.len();
        let out = self.a.clone();
        // advance: rightmost position that can still grow
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.a[i] <= self.max[i - 1] {
                self.a[i] += 1;
                self.max[i] = self.max[i - 1].max(self.a[i]);
                for j in i + 1..n {
                    self.a[j] = 0;
                    self.max[j] = self.max[j - 1];
                }
                break;
            }
        }
        if n == 0 {
            self.done = true;
        }
        Some(out)
    }
}

/// Blocks of an RGS, each sorted.
pub fn rgs_blocks(rgs: &[u8]) -> Vec<Vec<usize>> {
    let nb = rgs.iter().map(|&x| x as usize + 1).max().unwrap_or(0);
    let mut blocks = vec![Vec::new(); nb];
    for (i, &b) in rgs.iter().enumerate() {
        blocks[b as usize].push(i);
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig7_complement() {
        let p: Perm = "(1,2,3)(4)(5)".parse().unwrap();
        assert_eq!(p.kreweras().unwrap().to_string(), "(1,4,5)(2)(3)");
    }

    #[test]
    fn identity_complement_is_long_cycle() {
        for n in 1..8 {
            assert_eq!(Perm::identity(n).kreweras().unwrap(), Perm::long_cycle(n));
        }
    }

    #[test]
    fn compose_right_to_left() {
        let s: Perm = "(1,2)(3)".parse().unwrap();
        let t: Perm = "(1)(2,3)".parse().unwrap();
        // t first: 1 -> 1 -> 2
        assert_eq!(s.compose(&t).apply(0), 1);
        assert_eq!(s.compose(&t).to_string(), "(1,2,3)");
    }

    #[test]
    fn bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate().skip(1) {
            assert_eq!(RgsIter::new(n).count(), b);
        }
    }

    #[test]
    fn parse_display_round_trip() {
        let p: Perm = "(1,2,3,12)(4,9)(5,6,7)(8)(10,11)".parse().unwrap();
        assert_eq!(p.to_string(), "(1,2,3,12)(4,9)(5,6,7)(8)(10,11)");
        assert!("(1,2".parse::<Perm>().is_err());
        assert!("(1,1)".parse::<Perm>().is_err());
    }

    #[test]
    fn induced_skips_outside() {
        let p: Perm = "(1,5,2)(3,4)".parse().unwrap();
        let ind = p.induced(|i| i < 3);
        assert_eq!(ind[0], Some(1));
        assert_eq!(ind[1], Some(0));
        assert_eq!(ind[2], Some(2));
        assert_eq!(ind[3], None);
    }
}
