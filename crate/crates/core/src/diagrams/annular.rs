//! Non-crossing annular permutations of the `(m, n)`-annulus.

use serde::{Deserialize, Serialize};

use super::{check_cap, DiagramError, Perm, DEFAULT_CAP};

/// Points `0..m` sit on the outer circle, `m..m+n` on the inner one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnnularPerm {
    pub m: usize,
    pub n: usize,
    pub perm: Perm,
}

impl AnnularPerm {
    pub fn new(m: usize, n: usize, perm: Perm) -> Result<Self, DiagramError> {
        let a = AnnularPerm { m, n, perm };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        if self.perm.n() != self.m + self.n || self.m == 0 || self.n == 0 {
            return Err(DiagramError::Invalid(format!("size mismatch for {self:?}")));
        }
        if !is_annular_noncrossing(self.m, self.n, &self.perm) {
            return Err(DiagramError::Invalid(format!("{} is not non-crossing on the ({},{})-annulus", self.perm, self.m, self.n)));
        }
        Ok(())
    }

    pub fn is_outer(&self, i: usize) -> bool {
        i < self.m
    }

    /// `gamma_{m,n} pi^-1`.
    pub fn complement(&self) -> Perm {
        Perm::annular_gamma(self.m, self.n).compose(&self.perm.inverse())
    }

    pub fn num_blocks(&self) -> usize {
        self.perm.num_cycles()
    }

    /// Cycles meeting both circles.
    pub fn through_blocks(&self) -> Vec<Vec<usize>> {
        through(self.m, &self.perm)
    }
}

pub(crate) fn through(m: usize, p: &Perm) -> Vec<Vec<usize>> {
    p.cycles()
        .into_iter()
        .filter(|c| c.iter().any(|&x| x < m) && c.iter().any(|&x| x >= m))
        .collect()
}

/// Connects the circles and `#(pi) + #(gamma_{m,n} pi^-1) = m + n`.
pub fn is_annular_noncrossing(m: usize, n: usize, p: &Perm) -> bool {
    let connects = (0..m).any(|i| {
        let mut x = p.apply(i);
        while x != i {
            if x >= m {
                return true;
            }
            x = p.apply(x);
        }
        false
    });
    connects && p.num_cycles() + Perm::annular_gamma(m, n).compose(&p.inverse()).num_cycles() == m + n
}

/// Visits set partitions of `m + n` points whose restrictions to both
/// circles are non-crossing, as restricted growth strings.
pub fn for_each_circlewise_nc(m: usize, n: usize, mut f: impl FnMut(&[u8])) {
    const UNSEEN: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;
    struct St {
        m: usize,
        total: usize,
        rgs: Vec<u8>,
        state: [[u8; 2]; 256],
        stacks: [Vec<u8>; 2],
    }
    fn rec(st: &mut St, i: usize, nb: u8, f: &mut impl FnMut(&[u8])) {
        if i == st.total {
            f(&st.rgs);
            return;
        }
        let side = (i >= st.m) as usize;
        for b in 0..=nb {
            let fresh = b == nb;
            let s = if fresh { UNSEEN } else { st.state[b as usize][side] };
            match s {
                DONE => continue,
                ACTIVE => {
                    let pos = st.stacks[side].iter().position(|&x| x == b).unwrap();
                    let closed: Vec<u8> = st.stacks[side].drain(pos + 1..).collect();
                    for &c in &closed {
                        st.state[c as usize][side] = DONE;
                    }
                    st.rgs.push(b);
                    rec(st, i + 1, nb, f);
                    st.rgs.pop();
                    for &c in &closed {
                        st.state[c as usize][side] = ACTIVE;
                    }
                    st.stacks[side].extend(closed);
                }
                _ => {
                    // unseen on this side: opens here
                    st.state[b as usize][side] = ACTIVE;
                    st.stacks[side].push(b);
                    st.rgs.push(b);
                    rec(st, i + 1, if fresh { nb + 1 } else { nb }, f);
                    st.rgs.pop();
                    st.stacks[side].pop();
                    st.state[b as usize][side] = UNSEEN;
                }
            }
        }
    }
    let mut st = St {
        m,
        total: m + n,
        rgs: Vec::with_capacity(m + n),
        state: [[UNSEEN; 2]; 256],
        stacks: [Vec::new(), Vec::new()],
    };
    rec(&mut st, 0, 0, &mut f);
}

/// All of `S_NC(m, n)`, sorted by image array.
pub fn enum_snc(m: usize, n: usize) -> Result<Vec<AnnularPerm>, DiagramError> {
    enum_snc_capped(m, n, DEFAULT_CAP)
}

pub fn enum_snc_capped(m: usize, n: usize, cap: usize) -> Result<Vec<AnnularPerm>, DiagramError> {
    check_cap("m + n", m + n, cap)?;
    if m == 0 || n == 0 {
        return Err(DiagramError::Invalid("both circles need points".into()));
    }
    let mut out = Vec::new();
    let gamma = Perm::annular_gamma(m, n);
    let total = m + n;
    for_each_circlewise_nc(m, n, |rgs| {
        let nb = rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); nb];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b as usize].push(i);
        }
        let thr: Vec<usize> = (0..nb)
            .filter(|&b| blocks[b][0] < m && *blocks[b].last().unwrap() >= m)
            .collect();
        if thr.is_empty() {
            return;
        }
        let mut base = vec![0u8; total];
        for (b, blk) in blocks.iter().enumerate() {
            if thr.contains(&b) {
                continue;
            }
            for (j, &x) in blk.iter().enumerate() {
                base[x] = blk[(j + 1) % blk.len()] as u8;
            }
        }
        // a through-cycle is an outer run followed by an inner run, each in
        // circle order; try every pair of starting points
        let splits: Vec<(Vec<usize>, Vec<usize>)> = thr
            .iter()
            .map(|&b| {
                let o: Vec<usize> = blocks[b].iter().copied().filter(|&x| x < m).collect();
                let i: Vec<usize> = blocks[b].iter().copied().filter(|&x| x >= m).collect();
                (o, i)
            })
            .collect();
        let radices: Vec<usize> = splits.iter().map(|(o, i)| o.len() * i.len()).collect();
        let mut choice = vec![0usize; splits.len()];
        loop {
            let mut map = base.clone();
            for (t, (o, inn)) in splits.iter().enumerate() {
                let (so, si) = (choice[t] / inn.len(), choice[t] % inn.len());
                let cyc: Vec<usize> = (0..o.len())
                    .map(|j| o[(so + j) % o.len()])
                    .chain((0..inn.len()).map(|j| inn[(si + j) % inn.len()]))
                    .collect();
                for (j, &x) in cyc.iter().enumerate() {
                    map[x] = cyc[(j + 1) % cyc.len()] as u8;
                }
            }
            let p = Perm::from_raw(map);
            if p.num_cycles() + gamma.compose(&p.inverse()).num_cycles() == total {
                out.push(AnnularPerm { m, n, perm: p });
            }
            // odometer
            let mut t = 0;
            while t < choice.len() {
                choice[t] += 1;
                if choice[t] < radices[t] {
                    break;
                }
                choice[t] = 0;
                t += 1;
            }
            if t == choice.len() {
                break;
            }
        }
    });
    out.sort();
    Ok(out)
}

/// Block-count histogram: `counts[j]` diagrams with `j` cycles.
pub fn block_histogram(items: &[AnnularPerm]) -> Vec<u64> {
    let mut h = Vec::new();
    for a in items {
        let j = a.num_blocks();
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
    use crate::diagrams::perm::RgsIter;

    #[test]
    fn spoke_one_one() {
        let all = enum_snc(1, 1).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].perm.to_string(), "(1,2)");
    }

    #[test]
    fn fig8_member() {
        let p: Perm = "(1,2,3,12)(4,9)(5,6,7)(8)(10,11)".parse().unwrap();
        let a = AnnularPerm::new(8, 4, p.clone()).unwrap();
        // the printed caption drops the fixed point 11; 5 + 7 blocks need it
        assert_eq!(a.complement().to_string(), "(1,9,5,8)(2)(3)(4,10,12)(6)(7)(11)");
        assert!(enum_snc(8, 4).unwrap().iter().any(|x| x.perm == p));
    }

    #[test]
    fn circlewise_filter_matches_bruteforce() {
        use crate::diagrams::nc::rgs_is_noncrossing;
        for (m, n) in [(2, 3), (3, 3), (4, 2)] {
            let mut a = Vec::new();
            for_each_circlewise_nc(m, n, |r| a.push(r.to_vec()));
            let b: Vec<Vec<u8>> = RgsIter::new(m + n)
                .filter(|r| {
                    let restrict = |lo: usize, hi: usize| {
                        let mut lab = Vec::new();
                        let mut rel = Vec::new();
                        for &x in &r[lo..hi] {
                            let p = lab.iter().position(|&y| y == x).unwrap_or_else(|| {
                                lab.push(x);
                                lab.len() - 1
                            });
                            rel.push(p as u8);
                        }
                        rgs_is_noncrossing(&rel)
                    };
                    restrict(0, m) && restrict(m, m + n)
                })
                .collect();
            assert_eq!(a, b);
        }
    }
}
