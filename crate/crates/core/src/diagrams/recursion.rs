//! Recursions on half-permutations, realised as maps on diagrams, and the
//! enumeration-side identity suites.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_integer::binomial;

use super::{
    cut, dot_decode, dot_encode, enum_dots, enum_nc_capped, enum_ncc_capped, enum_ncl_capped, enum_snc_capped, gbar_step,
    gbar_unstep, reassemble, weighted_count, AnnularPerm, CircularHalfPerm, DiagramError, LinearHalfPerm, Weight,
};
use crate::check::CheckReport;
use crate::polyalg::{family_table, Family, PolyC};

/// Exponent of `c` for a half-permutation: its closed blocks.
fn closed(h: &CircularHalfPerm) -> usize {
    h.weight_exponent()
}

/// `(k, j)` of the image predicted for each case of [`gbar_step`], given the
/// source in `NCC(n+1)_k` with `j` closed blocks.
pub fn gbar_target(case: usize, n: usize, k: usize, j: usize) -> Option<(usize, usize)> {
    match (k, case) {
        (0, 1) => Some((1, n.checked_sub(j)?)),
        (0, 2) => Some((0, j)),
        (0, 3) => Some((0, j.checked_sub(1)?)),
        (0, 4) => Some((1, j.checked_sub(1)?)),
        (_, 1) => Some((k - 1, j)),
        (_, 2) => Some((k, j)),
        (_, 3) => Some((k, j.checked_sub(1)?)),
        (_, 4) => Some((k + 1, j.checked_sub(1)?)),
        _ => None,
    }
}

/// Weighted count of `NCC(n)_k` by closed blocks.
pub fn gbar(n: usize, k: usize, cap: usize) -> Result<PolyC, DiagramError> {
    Ok(weighted_count(&enum_ncc_capped(n, k, cap)?, Weight::ClosedBlocks))
}

/// Weighted count of `NCL(n)_k` by closed blocks.
pub fn pbar(n: usize, k: usize, cap: usize) -> Result<PolyC, DiagramError> {
    Ok(weighted_count(&enum_ncl_capped(n, k, cap)?, Weight::ClosedBlocks))
}

/// The four-way split of `NCC(n+1)_k` by the dot pattern on the last point,
/// checked element by element, plus the resulting recursions for the
/// weighted counts.
pub fn gbar_suite(max_n: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("gbar");
    let mut g: BTreeMap<(usize, usize), PolyC> = BTreeMap::new();
    for n in 1..=max_n {
        for k in 0..=n {
            g.insert((n, k), gbar(n, k, cap)?);
        }
    }
    let gk = |n: usize, k: usize| g.get(&(n, k)).cloned().unwrap_or_else(PolyC::zero);
    for n1 in 2..=max_n {
        let n = n1 - 1;
        for k in 0..=n1 {
            let mut images: BTreeMap<usize, Vec<CircularHalfPerm>> = BTreeMap::new();
            let mut bookkeeping_ok = true;
            let mut inverse_ok = true;
            for h in enum_ncc_capped(n1, k, cap)? {
                let (case, img) = gbar_step(&h)?;
                let want = gbar_target(case, n, k, closed(&h));
                if want != Some((img.k(), closed(&img))) {
                    bookkeeping_ok = false;
                }
                if gbar_unstep(case, k, &img)? != h {
                    inverse_ok = false;
                }
                images.entry(case).or_default().push(img);
            }
            let inst = format!("n+1={n1} k={k}");
            rep.record("gbar-bookkeeping", inst.clone(), bookkeeping_ok);
            rep.record("gbar-inverse", inst.clone(), inverse_ok);
            for (case, mut imgs) in images {
                let tk = gbar_target(case, n, k, n).map(|t| t.0).unwrap_or(usize::MAX);
                imgs.sort();
                let before = imgs.len();
                imgs.dedup();
                let target = if tk <= n { enum_ncc_capped(n, tk, cap)? } else { Vec::new() };
                rep.record("gbar-bijection", format!("{inst} case={case}"), before == imgs.len() && imgs == target);
            }
            let lhs = gk(n1, k);
            let rhs = if k == 0 {
                (PolyC::one() + PolyC::c()) * gk(n, 0) + PolyC::from_int(2) * PolyC::c() * gk(n, 1)
            } else {
                let prev = if k >= 1 { gk(n, k - 1) } else { PolyC::zero() };
                prev + (PolyC::one() + PolyC::c()) * gk(n, k) + PolyC::c() * gk(n, k + 1)
            };
            rep.eq(if k == 0 { "gbar2" } else { "gbar1" }, inst, &lhs, &rhs);
        }
    }
    Ok(rep)
}

/// Weighted `NCC(n)_k` against the inverse of the `Gt` matrix.
pub fn ncc_oracle(max_n: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("ncc-oracle");
    let inv = family_table(Family::GammaTilde, true, max_n + 1);
    for n in 1..=max_n {
        for k in 0..=n {
            rep.eq("gbar=g", format!("n={n} k={k}"), &gbar(n, k, cap)?, inv.entry(n, k));
        }
    }
    Ok(rep)
}

/// Weighted `NCL(n)_k` against the inverse of the `Pi` matrix.
pub fn ncl_oracle(max_n: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("ncl-oracle");
    let inv = family_table(Family::Pi, true, max_n + 1);
    for n in 1..=max_n {
        for k in 0..=n {
            rep.eq("pbar=p", format!("n={n} k={k}"), &pbar(n, k, cap)?, inv.entry(n, k));
        }
    }
    Ok(rep)
}

/// Removes the last point of a linear half-permutation on `n+1` points.
/// Cases: 1 open singleton, 2 open block with more points, 3 closed
/// singleton, 4 closed block with more points (which becomes open).
pub fn ncl_split(h: &LinearHalfPerm) -> Result<(usize, LinearHalfPerm), DiagramError> {
    let n1 = h.n();
    if n1 < 2 {
        return Err(DiagramError::Invalid("need at least two points".into()));
    }
    let last = n1 - 1;
    let mut blocks = Vec::new();
    let mut open = Vec::new();
    let mut case = 0;
    for (b, is_open) in h.blocks() {
        let has_last = b.contains(&last);
        let rest: Vec<usize> = b.iter().copied().filter(|&x| x != last).collect();
        if has_last {
            case = match (is_open, rest.is_empty()) {
                (true, true) => 1,
                (true, false) => 2,
                (false, true) => 3,
                (false, false) => 4,
            };
            if rest.is_empty() {
                continue;
            }
            if is_open || case == 4 {
                open.push(rest[0]);
            }
        } else if is_open {
            open.push(rest[0]);
        }
        blocks.push(rest);
    }
    Ok((case, LinearHalfPerm::from_blocks(n1 - 1, &blocks, &open)?))
}

/// Inverse of [`ncl_split`]: cases 2 and 4 add the new point to the open
/// block with the largest initial point, case 4 then closes it.
pub fn ncl_unsplit(case: usize, h: &LinearHalfPerm) -> Result<LinearHalfPerm, DiagramError> {
    let n = h.n();
    let mut blocks: Vec<(Vec<usize>, bool)> = h.blocks();
    match case {
        1 => blocks.push((vec![n], true)),
        3 => blocks.push((vec![n], false)),
        2 | 4 => {
            let right = blocks
                .iter_mut()
                .filter(|(_, o)| *o)
                .max_by_key(|(b, _)| b[0])
                .ok_or_else(|| DiagramError::Invalid(format!("{h} has no open block")))?;
            right.0.push(n);
            if case == 4 {
                right.1 = false;
            }
        }
        _ => return Err(DiagramError::Invalid(format!("no case {case}"))),
    }
    let open: Vec<usize> = blocks.iter().filter(|(_, o)| *o).map(|(b, _)| b[0]).collect();
    let plain: Vec<Vec<usize>> = blocks.into_iter().map(|(b, _)| b).collect();
    LinearHalfPerm::from_blocks(n + 1, &plain, &open)
}

/// `(k, closed)` of the image of each case, for a source with `k` open and
/// `j` closed blocks.
pub fn ncl_target(case: usize, k: usize, j: usize) -> Option<(usize, usize)> {
    match case {
        1 => Some((k.checked_sub(1)?, j)),
        2 => Some((k, j)),
        3 => Some((k, j.checked_sub(1)?)),
        4 => Some((k + 1, j.checked_sub(1)?)),
        _ => None,
    }
}

/// The split of `NCL(n+1)_k` checked element by element, plus the recursion
/// for the weighted counts.
pub fn ncl_suite(max_n: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("pbar");
    for n1 in 2..=max_n {
        let n = n1 - 1;
        for k in 0..=n1 {
            let mut images: BTreeMap<usize, Vec<LinearHalfPerm>> = BTreeMap::new();
            let (mut book, mut inv) = (true, true);
            for h in enum_ncl_capped(n1, k, cap)? {
                let (case, img) = ncl_split(&h)?;
                if ncl_target(case, k, h.num_closed()) != Some((img.k(), img.num_closed())) {
                    book = false;
                }
                if ncl_unsplit(case, &img)? != h {
                    inv = false;
                }
                images.entry(case).or_default().push(img);
            }
            let inst = format!("n+1={n1} k={k}");
            rep.record("phi-bookkeeping", inst.clone(), book);
            rep.record("phi-inverse", inst.clone(), inv);
            for (case, mut imgs) in images {
                let tk = ncl_target(case, k, n1).map(|t| t.0).unwrap_or(usize::MAX);
                let before = imgs.len();
                imgs.sort();
                imgs.dedup();
                let target = if tk <= n { enum_ncl_capped(n, tk, cap)? } else { Vec::new() };
                rep.record("phi-bijection", format!("{inst} case={case}"), before == imgs.len() && imgs == target);
            }
            let p = |n: usize, k: usize| pbar(n, k, cap);
            let lhs = p(n1, k)?;
            let rhs = if k == 0 {
                PolyC::c() * p(n, 0)? + PolyC::c() * p(n, 1)?
            } else {
                let up = if k < n { p(n, k + 1)? } else { PolyC::zero() };
                let same = if k <= n { p(n, k)? } else { PolyC::zero() };
                p(n, k - 1)? + (PolyC::one() + PolyC::c()) * same + PolyC::c() * up
            };
            rep.eq("linearrecursion", inst, &lhs, &rhs);
        }
    }
    Ok(rep)
}

/// `(sum_k c^k p_{n,2k+1}, sum over NC(n) of #(pi) c^(#(pi)-1))`.
pub fn lineardecomp_check(n: usize, cap: usize) -> Result<(PolyC, PolyC), DiagramError> {
    let inv = family_table(Family::Pi, true, n + 1);
    let mut lhs = PolyC::zero();
    let mut k = 0;
    while 2 * k < n {
        lhs += inv.entry(n, 2 * k + 1).shift(k);
        k += 1;
    }
    let mut rhs = PolyC::zero();
    for p in enum_nc_capped(n, cap)? {
        let b = p.num_cycles();
        rhs += PolyC::monomial(b as i64, b - 1);
    }
    Ok((lhs, rhs))
}

pub fn lineardecomp_suite(max_n: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("lineardecomp");
    for n in 1..=max_n {
        let (l, r) = lineardecomp_check(n, cap)?;
        rep.eq("lineardecomp", format!("n={n}"), &l, &r);
    }
    Ok(rep)
}

/// Dot structures: closed-block counts `C(n,j) C(n,j+k)` and both round trips.
pub fn dots_suite(max_n: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("dots");
    for n in 1..=max_n {
        for k in 0..=n {
            let all = enum_ncc_capped(n, k, cap)?;
            let mut by_j: BTreeMap<usize, u64> = BTreeMap::new();
            let mut round = true;
            let mut class_ok = true;
            let mut encoded = HashSet::new();
            for h in &all {
                let d = dot_encode(h);
                if d.class().ok() != Some((closed(h), k)) {
                    class_ok = false;
                }
                if dot_decode(&d).as_ref() != Ok(h) {
                    round = false;
                }
                encoded.insert(d);
                *by_j.entry(closed(h)).or_default() += 1;
            }
            let inst = format!("n={n} k={k}");
            rep.record("encode-class", inst.clone(), class_ok);
            rep.record("decode-encode", inst.clone(), round);
            rep.record("encode-injective", inst.clone(), encoded.len() == all.len());
            if k >= 1 {
                for j in 0..=n - k {
                    let want = binomial(n as u64, j as u64) * binomial(n as u64, (j + k) as u64);
                    let got = by_j.get(&j).copied().unwrap_or(0);
                    rep.eq("dot-count", format!("{inst} j={j}"), &got, &want);
                    let mut back = true;
                    for d in enum_dots(n, j, k) {
                        match dot_decode(&d) {
                            Ok(h) if dot_encode(&h) == d => {}
                            _ => back = false,
                        }
                    }
                    rep.record("encode-decode", format!("{inst} j={j}"), back);
                }
            }
        }
    }
    Ok(rep)
}

/// Cutting every annular permutation and gluing every pair of halves back.
pub fn cut_suite(max_total: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("cut-reassemble");
    for total in 2..=max_total {
        for m in 1..total {
            let n = total - m;
            let snc = enum_snc_capped(m, n, cap)?;
            let inst = format!("m={m} n={n}");
            let mut cut_ok = true;
            let mut recover_ok = true;
            for a in &snc {
                let (h1, h2) = cut(a);
                if h1.k() != h2.k() || h1.k() != a.through_blocks().len() || h1.validate().is_err() || h2.validate().is_err() {
                    cut_ok = false;
                    continue;
                }
                let hits = (1..=h1.k()).filter(|&s| reassemble(&h1, &h2, s).as_ref() == Ok(a)).count();
                if hits != 1 {
                    recover_ok = false;
                }
            }
            rep.record("cut-halves", inst.clone(), cut_ok);
            rep.record("cut-then-glue", inst.clone(), recover_ok);

            let target: BTreeSet<&AnnularPerm> = snc.iter().collect();
            let mut seen: BTreeSet<AnnularPerm> = BTreeSet::new();
            let (mut glued, mut k_each, mut round) = (0usize, true, true);
            let mut weight = PolyC::zero();
            for k in 1..=m.min(n) {
                let outer = enum_ncc_capped(m, k, cap)?;
                let inner = enum_ncc_capped(n, k, cap)?;
                weight += PolyC::monomial(k as i64, k)
                    * weighted_count(&outer, Weight::ClosedBlocks)
                    * weighted_count(&inner, Weight::ClosedBlocks);
                for h1 in &outer {
                    for h2 in &inner {
                        let mut mine = BTreeSet::new();
                        for s in 1..=k {
                            match reassemble(h1, h2, s) {
                                Ok(a) => {
                                    if cut(&a) != (h1.clone(), h2.clone()) {
                                        round = false;
                                    }
                                    mine.insert(a);
                                }
                                Err(_) => round = false,
                            }
                        }
                        if mine.len() != k {
                            k_each = false;
                        }
                        glued += k;
                        seen.extend(mine);
                    }
                }
            }
            let exact = glued == snc.len() && seen.len() == snc.len() && seen.iter().all(|a| target.contains(a));
            rep.record("glue-then-cut", inst.clone(), round);
            rep.record("k-gluings-distinct", inst.clone(), k_each);
            rep.record("glue-covers-once", inst.clone(), exact);
            rep.eq("annular-weight", inst, &weighted_count(&snc, Weight::AllBlocks), &weight);
        }
    }
    Ok(rep)
}

/// Kreweras block-count identity on every non-crossing permutation.
pub fn kreweras_suite(max_n: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("kreweras");
    for n in 1..=max_n {
        let ok = enum_nc_capped(n, cap)?.iter().all(|p| match p.kreweras() {
            Ok(q) => p.num_cycles() + q.num_cycles() == n + 1 && q.is_noncrossing(),
            Err(_) => false,
        });
        rep.record("complement-blocks", format!("n={n}"), ok);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::DEFAULT_CAP;

    #[test]
    fn gbar_maps_small() {
        let rep = gbar_suite(6, DEFAULT_CAP).unwrap();
        assert!(rep.all_pass(), "{}", rep.summary());
    }

    #[test]
    fn ncl_maps_small() {
        let rep = ncl_suite(7, DEFAULT_CAP).unwrap();
        assert!(rep.all_pass(), "{}", rep.summary());
    }

    #[test]
    fn oracles_small() {
        let mut rep = ncc_oracle(6, DEFAULT_CAP).unwrap();
        rep.extend(ncl_oracle(7, DEFAULT_CAP).unwrap());
        assert!(rep.all_pass(), "{}", rep.summary());
    }

    #[test]
    fn lineardecomp_small() {
        assert_eq!(lineardecomp_check(1, 12).unwrap(), (PolyC::one(), PolyC::one()));
        let (l, r) = lineardecomp_check(2, 12).unwrap();
        assert_eq!(l, PolyC::from_ints(&[1, 2]));
        assert_eq!(r, l);
        assert!(lineardecomp_suite(8, 12).unwrap().all_pass());
    }

    #[test]
    fn dots_small() {
        let rep = dots_suite(6, DEFAULT_CAP).unwrap();
        assert!(rep.all_pass(), "{}", rep.summary());
    }

    #[test]
    fn cut_small() {
        let rep = cut_suite(7, DEFAULT_CAP).unwrap();
        assert!(rep.all_pass(), "{}", rep.summary());
    }
}
