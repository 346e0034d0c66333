//! Coloured annular sets: points on each circle come in intervals of one
//! colour, and only points of the same colour may share a cycle.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{
    check_cap, enum_nc_capped, enum_ncc_capped, enum_ncl_capped, enum_snc_capped, weighted_count, weighted_count_by,
    AnnularPerm, DiagramError, LinearHalfPerm, Perm, Weight,
};
use crate::check::CheckReport;
use crate::fixtures::{FIG_XXY_INNER, FIG_XXY_OUTER, FIG_X_SQUARED};
use crate::polyalg::{family_table, transition_matrix, Family, PolyC, TransitionMatrix};

/// Interval lengths and colours on both circles, with optional per-interval
/// through-block counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredAnnularSpec {
    pub u: Vec<usize>,
    pub i: Vec<u8>,
    pub v: Vec<usize>,
    pub j: Vec<u8>,
    #[serde(default)]
    pub x: Option<Vec<usize>>,
    #[serde(default)]
    pub y: Option<Vec<usize>>,
}

fn alternates(c: &[u8]) -> bool {
    c.len() < 2 || (0..c.len()).all(|r| c[r] != c[(r + 1) % c.len()])
}

fn paint(len: &[usize], col: &[u8]) -> (Vec<u8>, Vec<usize>) {
    let mut colour = Vec::new();
    let mut interval = Vec::new();
    for (r, (&l, &c)) in len.iter().zip(col).enumerate() {
        colour.extend(std::iter::repeat_n(c, l));
        interval.extend(std::iter::repeat_n(r, l));
    }
    (colour, interval)
}

impl ColoredAnnularSpec {
    pub fn new(u: Vec<usize>, i: Vec<u8>, v: Vec<usize>, j: Vec<u8>) -> Result<Self, DiagramError> {
        let s = ColoredAnnularSpec { u, i, v, j, x: None, y: None };
        s.validate()?;
        Ok(s)
    }

    pub fn with_filter(mut self, x: Vec<usize>, y: Vec<usize>) -> Result<Self, DiagramError> {
        self.x = Some(x);
        self.y = Some(y);
        self.validate()?;
        Ok(self)
    }

    /// Every interval filtered to be all through-blocks.
    pub fn spokes(self) -> Self {
        let (x, y) = (self.u.clone(), self.v.clone());
        ColoredAnnularSpec { x: Some(x), y: Some(y), ..self }
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let bad = |s: &str| Err(DiagramError::Invalid(s.to_string()));
        if self.u.len() != self.i.len() || self.v.len() != self.j.len() || self.u.is_empty() || self.v.is_empty() {
            return bad("lengths and colours must pair up");
        }
        if self.u.iter().chain(&self.v).any(|&l| l == 0) {
            return bad("interval lengths must be positive");
        }
        if !alternates(&self.i) || !alternates(&self.j) {
            return bad("colours must alternate cyclically");
        }
        if self.x.as_ref().is_some_and(|x| x.len() != self.u.len()) || self.y.as_ref().is_some_and(|y| y.len() != self.v.len()) {
            return bad("through-block filter has the wrong length");
        }
        Ok(())
    }

    pub fn outer_points(&self) -> usize {
        self.u.iter().sum()
    }

    pub fn inner_points(&self) -> usize {
        self.v.iter().sum()
    }
}

/// Enumerates annular permutations for coloured points, caching the
/// uncoloured sets. Zero-length intervals are allowed and contribute no points.
pub struct ColoredCounter {
    cap: usize,
    cache: HashMap<(usize, usize), Vec<AnnularPerm>>,
}

impl ColoredCounter {
    pub fn new(cap: usize) -> Self {
        ColoredCounter { cap, cache: HashMap::new() }
    }

    /// `|S_NC(outer; inner)|_c` for words given as `(length, colour)` pairs.
    pub fn weight(&mut self, outer: &[(usize, u8)], inner: &[(usize, u8)]) -> Result<PolyC, DiagramError> {
        let spec = ColoredAnnularSpec {
            u: outer.iter().map(|w| w.0).collect(),
            i: outer.iter().map(|w| w.1).collect(),
            v: inner.iter().map(|w| w.0).collect(),
            j: inner.iter().map(|w| w.1).collect(),
            x: None,
            y: None,
        };
        Ok(weighted_count(&self.run(&spec)?, Weight::AllBlocks))
    }

    pub fn run(&mut self, s: &ColoredAnnularSpec) -> Result<Vec<AnnularPerm>, DiagramError> {
        let (m, n) = (s.outer_points(), s.inner_points());
        if m == 0 || n == 0 {
            return Ok(Vec::new());
        }
        check_cap("total points", m + n, self.cap)?;
        let (mut colour, mut interval) = paint(&s.u, &s.i);
        let (c2, i2) = paint(&s.v, &s.j);
        colour.extend(c2);
        interval.extend(i2.into_iter().map(|r| r + s.u.len()));
        let cap = self.cap;
        let all = match self.cache.entry((m, n)) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => e.insert(enum_snc_capped(m, n, cap)?),
        };
        let want: Option<Vec<usize>> = match (&s.x, &s.y) {
            (None, None) => None,
            (x, y) => {
                let mut w = x.clone().unwrap_or_else(|| vec![usize::MAX; s.u.len()]);
                w.extend(y.clone().unwrap_or_else(|| vec![usize::MAX; s.v.len()]));
                Some(w)
            }
        };
        let mut out = Vec::new();
        for a in all.iter() {
            if (0..m + n).any(|p| colour[a.perm.apply(p)] != colour[p]) {
                continue;
            }
            if let Some(w) = &want {
                let mut got = vec![0usize; w.len()];
                for b in a.through_blocks() {
                    let mut hit: Vec<usize> = b.iter().map(|&p| interval[p]).collect();
                    hit.sort_unstable();
                    hit.dedup();
                    for r in hit {
                        got[r] += 1;
                    }
                }
                if got.iter().zip(w).any(|(g, w)| *w != usize::MAX && g != w) {
                    continue;
                }
            }
            out.push(a.clone());
        }
        Ok(out)
    }
}

/// `S_NC(u, v)` for the spec, filtered by through-block counts if given.
pub fn enum_colored_snc(spec: &ColoredAnnularSpec, cap: usize) -> Result<Vec<AnnularPerm>, DiagramError> {
    spec.validate()?;
    ColoredCounter::new(cap).run(spec)
}

fn odometer(limits: &[usize], mut f: impl FnMut(&[usize]) -> Result<(), DiagramError>) -> Result<(), DiagramError> {
    let mut cur = vec![0usize; limits.len()];
    loop {
        f(&cur)?;
        let mut r = 0;
        loop {
            if r == cur.len() {
                return Ok(());
            }
            if cur[r] < limits[r] {
                cur[r] += 1;
                break;
            }
            cur[r] = 0;
            r += 1;
        }
    }
}

/// `sum over u <= m, v <= n` of `prod A[m_r][u_r] prod B[n_s][v_s] |S_NC(u over x; v over y)|_c`.
#[allow(clippy::too_many_arguments)]
fn contracted(
    en: &mut ColoredCounter,
    m: &[usize],
    i: &[u8],
    a: &TransitionMatrix,
    n: &[usize],
    j: &[u8],
    b: &TransitionMatrix,
    x: Option<&[usize]>,
    y: Option<&[usize]>,
) -> Result<PolyC, DiagramError> {
    let mut total = PolyC::zero();
    odometer(m, |u| {
        odometer(n, |v| {
            let mut coef = PolyC::one();
            for (r, &ur) in u.iter().enumerate() {
                coef = coef * a.get(m[r], ur);
            }
            for (s, &vs) in v.iter().enumerate() {
                coef = coef * b.get(n[s], vs);
            }
            if coef.is_zero() {
                return Ok(());
            }
            let spec = ColoredAnnularSpec {
                u: u.to_vec(),
                i: i.to_vec(),
                v: v.to_vec(),
                j: j.to_vec(),
                x: x.map(|x| x.to_vec()),
                y: y.map(|y| y.to_vec()),
            };
            let w = weighted_count(&en.run(&spec)?, Weight::AllBlocks);
            total += coef * w;
            Ok(())
        })
    })?;
    Ok(total)
}

/// A coloured word: interval lengths with colours.
pub type Word = (Vec<usize>, Vec<u8>);

fn word_name(w: &Word) -> String {
    let parts: Vec<String> = w.0.iter().zip(&w.1).map(|(l, c)| format!("{l}@{c}")).collect();
    format!("({})", parts.join(","))
}

fn default_pairs() -> Vec<(Word, Word)> {
    vec![
        ((vec![1, 1], vec![0, 1]), (vec![1, 1], vec![0, 1])),
        ((vec![2, 1], vec![0, 1]), (vec![1, 1], vec![0, 1])),
        ((vec![2, 1], vec![0, 1]), (vec![2, 1], vec![0, 1])),
        ((vec![2, 1], vec![0, 1]), (vec![1, 2], vec![0, 1])),
        ((vec![1, 1, 1], vec![0, 1, 2]), (vec![1, 1, 1], vec![0, 1, 2])),
        ((vec![1, 1, 1], vec![0, 1, 2]), (vec![1, 1, 1], vec![0, 2, 1])),
        ((vec![1, 1], vec![0, 1]), (vec![2], vec![0])),
    ]
}

/// Contracting a filtered set with the `Pi` coefficients on every interval
/// gives zero as soon as one interval has no through-block.
pub fn lemma18_suite(cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("lemma18");
    let mut en = ColoredCounter::new(cap);
    let pp = transition_matrix(Family::Pi, 4);
    for (o, inn) in default_pairs() {
        odometer(&o.0, |x| {
            odometer(&inn.0, |y| {
                if x.iter().chain(y).all(|&t| t > 0) {
                    return Ok(());
                }
                let s = contracted(&mut en, &o.0, &o.1, &pp, &inn.0, &inn.1, &pp, Some(x), Some(y))?;
                rep.eq("lemma18", format!("{} {} x={x:?} y={y:?}", word_name(&o), word_name(&inn)), &s, &PolyC::zero());
                Ok(())
            })
        })?;
    }
    Ok(rep)
}

/// Full contraction with `Pi` coefficients equals the spoke count.
pub fn bigprop_suite(cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("bigprop");
    let mut en = ColoredCounter::new(cap);
    let pp = transition_matrix(Family::Pi, 4);
    for (o, inn) in default_pairs() {
        let lhs = contracted(&mut en, &o.0, &o.1, &pp, &inn.0, &inn.1, &pp, None, None)?;
        let spokes = ColoredAnnularSpec::new(o.0.clone(), o.1.clone(), inn.0.clone(), inn.1.clone())?.spokes();
        let rhs = weighted_count(&en.run(&spokes)?, Weight::AllBlocks);
        rep.eq("bigprop", format!("{} {}", word_name(&o), word_name(&inn)), &lhs, &rhs);
    }
    Ok(rep)
}

/// `Pi` products on several colours against a `Gamma` trace of one colour.
pub fn gsindep_suite(cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("gsindep");
    let mut en = ColoredCounter::new(cap);
    let pp = transition_matrix(Family::Pi, 4);
    let qq = transition_matrix(Family::Gamma, 5);
    let words: Vec<Word> = vec![(vec![1, 1], vec![0, 1]), (vec![2, 1], vec![0, 1]), (vec![1, 1, 1], vec![0, 1, 2])];
    for w in &words {
        for n in 1..=3 {
            for colour in 0..=1u8 {
                let s = contracted(&mut en, &w.0, &w.1, &pp, &[n], &[colour], &qq, None, None)?;
                rep.eq("gsindep", format!("{} n={n} colour={colour}", word_name(w)), &s, &PolyC::zero());
            }
        }
    }
    Ok(rep)
}

/// `Gamma` traces of one matrix: the contraction and the spoke count both
/// give `delta_{m,n} m c^m`.
pub fn ggindep_suite(max: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("ggindep");
    let mut en = ColoredCounter::new(cap);
    let qq = transition_matrix(Family::Gamma, max + 1);
    for m in 1..=max {
        for n in 1..=max {
            let want = if m == n { PolyC::monomial(m as i64, m) } else { PolyC::zero() };
            let spoke = ColoredAnnularSpec::new(vec![m], vec![0], vec![n], vec![0])?.spokes();
            let got = weighted_count(&en.run(&spoke)?, Weight::AllBlocks);
            rep.eq("spoke-count", format!("m={m} n={n}"), &got, &want);
            if m + n <= cap.min(8) {
                let s = contracted(&mut en, &[m], &[0], &qq, &[n], &[0], &qq, None, None)?;
                rep.eq("ggindep", format!("m={m} n={n}"), &s, &want);
            }
        }
    }
    Ok(rep)
}

/// Colour-respecting non-crossing partitions of consecutive intervals.
fn colored_nc(len: &[usize], col: &[u8], cap: usize) -> Result<Vec<Perm>, DiagramError> {
    let (colour, _) = paint(len, col);
    Ok(enum_nc_capped(colour.len(), cap)?
        .into_iter()
        .filter(|p| (0..colour.len()).all(|x| colour[p.apply(x)] == colour[x]))
        .collect())
}

/// Weighted colour-respecting partitions split by which intervals they join.
pub fn lemma17_check(len: &[usize], col: &[u8], cap: usize) -> Result<(PolyC, PolyC), DiagramError> {
    let lhs = weighted_count(&colored_nc(len, col, cap)?, Weight::AllBlocks);
    let q = len.len();
    let mut rhs = PolyC::zero();
    for tau in enum_nc_capped(q, cap)? {
        if (0..q).any(|r| col[tau.apply(r)] != col[r]) {
            continue;
        }
        let mut term = PolyC::one();
        for b in tau.cycles() {
            let sub_len: Vec<usize> = b.iter().map(|&r| len[r]).collect();
            let sub_col: Vec<u8> = b.iter().map(|&r| col[r]).collect();
            let (_, interval) = paint(&sub_len, &sub_col);
            let joined = colored_nc(&sub_len, &sub_col, cap)?.into_iter().filter(|p| {
                // every interval reachable from the first through shared blocks
                let lab = p.block_of();
                let mut reach = vec![false; b.len()];
                reach[0] = true;
                let mut grew = true;
                while grew {
                    grew = false;
                    for x in 0..interval.len() {
                        for y in 0..interval.len() {
                            if lab[x] == lab[y] && reach[interval[x]] && !reach[interval[y]] {
                                reach[interval[y]] = true;
                                grew = true;
                            }
                        }
                    }
                }
                reach.iter().all(|&r| r)
            });
            let pb: Vec<Perm> = joined.collect();
            term = term * weighted_count(&pb, Weight::AllBlocks);
        }
        rhs += term;
    }
    Ok((lhs, rhs))
}

pub fn lemma17_suite(cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("lemma17");
    let patterns: Vec<Vec<u8>> = vec![vec![0], vec![0, 1], vec![0, 1, 0], vec![0, 1, 2]];
    for col in patterns {
        let limits = vec![2; col.len()];
        odometer(&limits, |l| {
            let len: Vec<usize> = l.iter().map(|x| x + 1).collect();
            let (lhs, rhs) = lemma17_check(&len, &col, cap)?;
            rep.eq("lemma17", word_name(&(len.clone(), col.clone())), &lhs, &rhs);
            Ok(())
        })?;
    }
    Ok(rep)
}

/// Circular half-permutations of a coloured circle in which every interval
/// meets an open block, each split into one linear half-permutation per
/// interval. Returns them grouped by the per-interval open-block counts.
pub fn decompose_colored(
    len: &[usize],
    col: &[u8],
    cap: usize,
) -> Result<HashMap<Vec<usize>, Vec<Vec<LinearHalfPerm>>>, DiagramError> {
    let (colour, interval) = paint(len, col);
    let total = colour.len();
    let starts: Vec<usize> = len.iter().scan(0, |s, &l| {
        let a = *s;
        *s += l;
        Some(a)
    }).collect();
    let mut out: HashMap<Vec<usize>, Vec<Vec<LinearHalfPerm>>> = HashMap::new();
    for k in 1..=total {
        for h in enum_ncc_capped(total, k, cap)? {
            let p = h.perm();
            if (0..total).any(|x| colour[p.apply(x)] != colour[x]) {
                continue;
            }
            let open = h.open_blocks();
            let mut per = vec![0usize; len.len()];
            for b in &open {
                let mut hit: Vec<usize> = b.iter().map(|&x| interval[x]).collect();
                hit.sort_unstable();
                hit.dedup();
                for r in hit {
                    per[r] += 1;
                }
            }
            if per.contains(&0) {
                continue;
            }
            let cycles = p.cycles();
            if cycles.iter().any(|c| c.iter().any(|&x| interval[x] != interval[c[0]])) {
                return Err(DiagramError::Invalid(format!("{h} joins two intervals")));
            }
            let mut parts = Vec::new();
            for r in 0..len.len() {
                let blocks: Vec<Vec<usize>> =
                    cycles.iter().filter(|c| interval[c[0]] == r).map(|c| c.iter().map(|x| x - starts[r]).collect()).collect();
                let members: Vec<usize> = open.iter().filter(|b| interval[b[0]] == r).map(|b| b[0] - starts[r]).collect();
                parts.push(LinearHalfPerm::from_blocks(len[r], &blocks, &members)?);
            }
            out.entry(per).or_default().push(parts);
        }
    }
    Ok(out)
}

/// Every restriction is linear, and the weights factor as `prod p_{u_r, x_r}`.
pub fn decomposition_suite(max_total: usize, cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("decomposition");
    let pinv = family_table(Family::Pi, true, max_total + 1);
    let patterns: Vec<Vec<u8>> = vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 0, 1]];
    for col in patterns {
        let limits = vec![2; col.len()];
        odometer(&limits, |l| {
            let len: Vec<usize> = l.iter().map(|x| x + 1).collect();
            if len.iter().sum::<usize>() > max_total {
                return Ok(());
            }
            let name = word_name(&(len.clone(), col.clone()));
            match decompose_colored(&len, &col, cap) {
                Ok(groups) => {
                    rep.record("restrictions-linear", name.clone(), true);
                    for (x, items) in groups {
                        let got = weighted_count_by(&items, |parts| parts.iter().map(|q| q.num_closed()).sum());
                        let want = x.iter().enumerate().fold(PolyC::one(), |acc, (r, &xr)| acc * pinv.get(len[r], xr));
                        rep.eq("weights-factor", format!("{name} x={x:?}"), &got, &want);
                    }
                }
                Err(e) => {
                    rep.checks.push(crate::check::Check {
                        identity: "restrictions-linear".into(),
                        instance: name,
                        pass: false,
                        detail: Some(e.to_string()),
                        max_residual: None,
                    });
                }
            }
            Ok(())
        })?;
    }
    Ok(rep)
}

/// The two pictured decompositions: `x^2` over the `Gamma` family and `x^2 y`
/// over products of `Pi`s.
pub fn figure_suite(cap: usize) -> Result<CheckReport, DiagramError> {
    let mut rep = CheckReport::new("figures");
    let parse = |s: &str| s.parse::<PolyC>().expect("fixture parses");
    // x^2: open blocks k = 2, 1 from NCC(2)_k, and the Gamma_0 term from NC(2)
    for k in 1..=2 {
        let got = weighted_count(&enum_ncc_capped(2, k, cap)?, Weight::ClosedBlocks);
        rep.eq("fig-x-squared", format!("Gamma_{k}"), &got, &parse(FIG_X_SQUARED[2 - k]));
    }
    let got0 = weighted_count(&enum_nc_capped(2, cap)?, Weight::AllBlocks);
    rep.eq("fig-x-squared", "Gamma_0", &got0, &parse(FIG_X_SQUARED[2]));
    let qinv = family_table(Family::Gamma, true, 3);
    for k in 0..=2 {
        rep.eq("fig-x-squared-table", format!("Gamma_{k}"), qinv.entry(2, k), &parse(FIG_X_SQUARED[2 - k]));
    }
    // x^2 y: pictured circular half-permutations on {X, X, Y}
    let groups = decompose_colored(&[2, 1], &[0, 1], cap)?;
    let mut pictured = 0;
    for k1 in 1..=2 {
        for k2 in 1..=1 {
            let items = groups.get(&vec![k1, k2]).cloned().unwrap_or_default();
            pictured += items.len();
            let got = weighted_count_by(&items, |parts| parts.iter().map(|q| q.num_closed()).sum());
            let want = parse(FIG_XXY_OUTER[2 - k1]) * parse(FIG_XXY_INNER[1 - k2]);
            rep.eq("fig-xxy", format!("Pi_{k1}(X) Pi_{k2}(Y)"), &got, &want);
        }
    }
    rep.eq("fig-xxy-count", "pictured diagrams", &pictured, &4);
    // the full coefficient lists come from linear half-permutations
    for (n, fixture) in [(2usize, &FIG_XXY_OUTER[..]), (1, &FIG_XXY_INNER[..])] {
        for k in 0..=n {
            let got = weighted_count(&enum_ncl_capped(n, k, cap)?, Weight::ClosedBlocks);
            rep.eq("fig-xxy-factor", format!("x^{n} Pi_{k}"), &got, &parse(fixture[n - k]));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::DEFAULT_CAP;

    #[test]
    fn spec_validation() {
        assert!(ColoredAnnularSpec::new(vec![1, 1], vec![0, 0], vec![1], vec![0]).is_err());
        assert!(ColoredAnnularSpec::new(vec![1, 0], vec![0, 1], vec![1], vec![0]).is_err());
        assert!(ColoredAnnularSpec::new(vec![2, 1], vec![0, 1], vec![1], vec![0]).is_ok());
    }

    #[test]
    fn single_colour_is_plain_annular() {
        let s = ColoredAnnularSpec::new(vec![2], vec![0], vec![2], vec![0]).unwrap();
        assert_eq!(enum_colored_snc(&s, DEFAULT_CAP).unwrap().len(), enum_snc_capped(2, 2, DEFAULT_CAP).unwrap().len());
    }

    #[test]
    fn fig5_filter_instance() {
        // XX outside, one X inside, one through-block on each side
        let s = ColoredAnnularSpec::new(vec![2], vec![0], vec![1], vec![0]).unwrap().with_filter(vec![1], vec![1]).unwrap();
        let w = weighted_count(&enum_colored_snc(&s, DEFAULT_CAP).unwrap(), Weight::AllBlocks);
        assert_eq!(w, "2*c + 2*c^2".parse().unwrap());
    }

    #[test]
    fn inner_circle_runs_backwards() {
        // three colours: spokes need the inner word reversed
        let mut en = ColoredCounter::new(DEFAULT_CAP);
        let s_rev = ColoredAnnularSpec::new(vec![1, 1, 1], vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 0]).unwrap().spokes();
        let s_same = ColoredAnnularSpec::new(vec![1, 1, 1], vec![0, 1, 2], vec![1, 1, 1], vec![0, 1, 2]).unwrap().spokes();
        assert_eq!(weighted_count(&en.run(&s_rev).unwrap(), Weight::AllBlocks), PolyC::monomial(1, 3));
        assert!(en.run(&s_same).unwrap().is_empty());
    }

    #[test]
    fn suites_pass() {
        for rep in [
            lemma17_suite(DEFAULT_CAP).unwrap(),
            lemma18_suite(DEFAULT_CAP).unwrap(),
            bigprop_suite(DEFAULT_CAP).unwrap(),
            gsindep_suite(DEFAULT_CAP).unwrap(),
            ggindep_suite(4, DEFAULT_CAP).unwrap(),
            decomposition_suite(7, DEFAULT_CAP).unwrap(),
            figure_suite(DEFAULT_CAP).unwrap(),
        ] {
            assert!(rep.all_pass(), "{}\n{}", rep.suite, rep.summary());
        }
    }
}
