//! Non-crossing partitions of a disc.

use super::{check_cap, DiagramError, Perm, DEFAULT_CAP};

/// Visits every non-crossing partition of `n` points as a restricted growth
/// string, in lexicographic order. Blocks above the chosen one on the stack of
/// open blocks are closed for good, which is exactly the crossing test.
pub fn for_each_nc_rgs(n: usize, mut f: impl FnMut(&[u8])) {
    fn rec(i: usize, n: usize, rgs: &mut Vec<u8>, stack: &mut Vec<u8>, nb: u8, f: &mut impl FnMut(&[u8])) {
        if i == n {
            f(rgs);
            return;
        }
        for depth in 0..stack.len() {
            let b = stack[depth];
            let saved: Vec<u8> = stack.drain(depth + 1..).collect();
            rgs.push(b);
            rec(i + 1, n, rgs, stack, nb, f);
            rgs.pop();
            stack.extend(saved);
        }
        stack.push(nb);
        rgs.push(nb);
        rec(i + 1, n, rgs, stack, nb + 1, f);
        rgs.pop();
        stack.pop();
    }
    if n == 0 {
        f(&[]);
        return;
    }
    let mut rgs = Vec::with_capacity(n);
    let mut stack = Vec::new();
    rec(0, n, &mut rgs, &mut stack, 0, &mut f);
}

/// Permutation whose cycles are the RGS blocks in increasing order.
pub fn perm_from_rgs(rgs: &[u8]) -> Perm {
    let n = rgs.len();
    let mut map = vec![0u8; n];
    let mut first = [u8::MAX; 256];
    let mut last = [u8::MAX; 256];
    for (i, &b) in rgs.iter().enumerate() {
        let b = b as usize;
        if first[b] == u8::MAX {
            first[b] = i as u8;
        } else {
            map[last[b] as usize] = i as u8;
        }
        last[b] = i as u8;
    }
    for (b, &l) in last.iter().enumerate() {
        if l != u8::MAX {
            map[l as usize] = first[b];
        }
    }
    Perm::from_raw(map)
}

/// All non-crossing permutations of `n` points, cycles increasing.
pub fn enum_nc(n: usize) -> Result<Vec<Perm>, DiagramError> {
    enum_nc_capped(n, DEFAULT_CAP)
}

pub fn enum_nc_capped(n: usize, cap: usize) -> Result<Vec<Perm>, DiagramError> {
    check_cap("n", n, cap)?;
    let mut out = Vec::new();
    for_each_nc_rgs(n, |rgs| out.push(perm_from_rgs(rgs)));
    Ok(out)
}

/// Stack test for a partition given as an RGS.
pub fn rgs_is_noncrossing(rgs: &[u8]) -> bool {
    let n = rgs.len();
    let mut last = [0usize; 256];
    for (i, &b) in rgs.iter().enumerate() {
        last[b as usize] = i;
    }
    let mut seen = [false; 256];
    let mut stack: Vec<u8> = Vec::new();
    for (i, &b) in rgs.iter().enumerate().take(n) {
        if seen[b as usize] {
            if stack.last() != Some(&b) {
                return false;
            }
        } else {
            seen[b as usize] = true;
            stack.push(b);
        }
        if last[b as usize] == i {
            stack.pop();
        }
    }
    true
}
