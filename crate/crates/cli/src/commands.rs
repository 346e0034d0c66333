use anyhow::{bail, Context};
use serde::Serialize;
use serde_json::json;

use annulus::diagrams::{
    colored, enum_nc_capped, enum_ncc_capped, enum_ncl_capped, enum_snc_capped, recursion, weighted_count_by,
    Weighted,
};
use annulus::fixtures::{compare_golden, golden};
use annulus::polyalg::{family_table, identities, Family, DEFAULT_TABLE_SIZE};
use annulus::rmt::{experiment_convergence, experiment_diagonalization, experiment_raw_covariance, EnsembleConfig, TraceStatistic};
use annulus::wick::{combinatorics_suite, figure_product, wick_suite, TracialAlgebra};
use annulus::{CheckReport, TransitionMatrix};

use crate::render::csv_rows;
use crate::{DiagramKind, EnumerateArgs, Experiment, McArgs, Outcome, Suite, TableName, TablesArgs, VerifyArgs};

fn split(t: TableName) -> (Family, bool) {
    match t {
        TableName::GammaTilde => (Family::GammaTilde, false),
        TableName::GammaTildeInverse => (Family::GammaTilde, true),
        TableName::Gamma => (Family::Gamma, false),
        TableName::GammaInverse => (Family::Gamma, true),
        TableName::Pi => (Family::Pi, false),
        TableName::PiInverse => (Family::Pi, true),
    }
}

#[derive(Serialize)]
struct Mismatch {
    n: usize,
    k: usize,
    computed: String,
    expected: String,
}

pub fn tables(a: &TablesArgs) -> anyhow::Result<Outcome> {
    if a.rows == 0 || a.rows > DEFAULT_TABLE_SIZE {
        bail!("--rows must be between 1 and {DEFAULT_TABLE_SIZE}");
    }
    let (family, inverse) = split(a.family);
    let name = format!("{}{}", family.name(), if inverse { "-inverse" } else { "" });
    let matrix = family_table(family, inverse, a.rows);
    let mut text = format!("{name}, rows 0..{}\n{}", a.rows - 1, matrix.to_text());
    let mut json = json!({ "table": name, "rows": a.rows, "matrix": matrix.to_json() });
    let mut pass = true;
    if a.check {
        let bad: Vec<Mismatch> = if inverse {
            compare_golden(family, 5)
                .into_iter()
                .map(|(n, k, c, e)| Mismatch { n, k, computed: c.to_string(), expected: e.to_string() })
                .collect()
        } else {
            // the forward table times the printed inverse is the identity
            let gold = TransitionMatrix::from_rows(golden(family))?;
            let prod = family_table(family, false, 5).mul(&gold)?;
            let id = TransitionMatrix::identity(5);
            let mut bad = Vec::new();
            for n in 0..5 {
                for k in 0..=n {
                    if prod.entry(n, k) != id.entry(n, k) {
                        bad.push(Mismatch { n, k, computed: prod.entry(n, k).to_string(), expected: id.entry(n, k).to_string() });
                    }
                }
            }
            bad
        };
        pass = bad.is_empty();
        text += &format!("check against the printed rows 0..4: {}\n", if pass { "PASS" } else { "FAIL" });
        for m in &bad {
            text += &format!("  ({},{}) computed {} expected {}\n", m.n, m.k, m.computed, m.expected);
        }
        json["check"] = json!({ "pass": pass, "mismatches": bad });
    }
    json["pass"] = pass.into();
    Ok(Outcome { pass, text, json, csv: matrix.to_csv() })
}

#[derive(Serialize)]
struct Listed {
    index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    diagram: String,
    exponent: usize,
}

pub fn enumerate(a: &EnumerateArgs) -> anyhow::Result<Outcome> {
    let ks: Vec<usize> = match a.k {
        Some(k) => vec![k],
        None => (0..=a.n).collect(),
    };
    let mut listed = Vec::new();
    let mut push = |k: Option<usize>, diagram: String, exponent: usize| {
        listed.push(Listed { index: listed.len() + 1, k, diagram, exponent });
    };
    let weight = match a.kind {
        DiagramKind::Nc => {
            for p in enum_nc_capped(a.n, a.cap)? {
                push(None, p.to_string(), p.all_blocks());
            }
            "c^(blocks)"
        }
        DiagramKind::Snc => {
            for p in enum_snc_capped(a.m, a.n, a.cap)? {
                push(None, p.perm.to_string(), p.all_blocks());
            }
            "c^(blocks)"
        }
        DiagramKind::Ncc => {
            for &k in &ks {
                for h in enum_ncc_capped(a.n, k, a.cap)? {
                    push(Some(k), h.to_string(), h.closed_blocks());
                }
            }
            "c^(closed blocks)"
        }
        DiagramKind::Ncl => {
            for &k in &ks {
                for h in enum_ncl_capped(a.n, k, a.cap)? {
                    push(Some(k), h.to_string(), h.closed_blocks());
                }
            }
            "c^(closed blocks)"
        }
    };
    let count = weighted_count_by(listed.iter(), |l| l.exponent);
    let kind = serde_json::to_value(a.kind)?;
    let kind = kind.as_str().unwrap_or_default();
    let mut text = String::new();
    for l in &listed {
        match l.k {
            Some(k) => text += &format!("{:>5}  k={k}  {}  c^{}\n", l.index, l.diagram, l.exponent),
            None => text += &format!("{:>5}  {}  c^{}\n", l.index, l.diagram, l.exponent),
        }
    }
    text += &format!("{} diagrams, weighted count {count} (weight {weight})\n", listed.len());
    let csv = csv_rows(&listed)?;
    let json = json!({
        "kind": kind,
        "n": a.n,
        "m": (a.kind == DiagramKind::Snc).then_some(a.m),
        "k": a.k,
        "weight": weight,
        "count": listed.len(),
        "weighted_count": count.to_string(),
        "diagrams": listed,
        "pass": true,
    });
    Ok(Outcome { pass: true, text, json, csv })
}

fn suite_report(a: &VerifyArgs, suite: Suite) -> anyhow::Result<CheckReport> {
    let (n, cap) = (a.max_n, a.cap);
    let size = n + 1;
    let mut r = CheckReport::new(serde_json::to_value(suite)?.as_str().unwrap_or_default());
    match suite {
        Suite::Recursions => {
            r.extend(identities::check_geq12(size));
            r.extend(identities::check_geq34(size));
            r.extend(identities::check_prec12(size));
            r.extend(identities::check_firstsecond(size));
            r.extend(identities::check_series_recursions(a.order));
            r.extend(recursion::gbar_suite(n, cap)?);
            r.extend(recursion::ncl_suite(n, cap)?);
        }
        Suite::Bijections => {
            r.extend(recursion::dots_suite(n, cap)?);
            r.extend(recursion::kreweras_suite(n, cap)?);
            r.extend(combinatorics_suite(n)?);
        }
        Suite::CutReassemble => r.extend(recursion::cut_suite(n, cap)?),
        Suite::Lineardecomp => r.extend(recursion::lineardecomp_suite(n, cap)?),
        Suite::Series => {
            r.extend(identities::check_series_recursions(a.order));
            r.extend(identities::check_series_vs_matrices(a.order));
            r.extend(identities::check_moments(size));
            r.extend(identities::check_matrices(size));
        }
        Suite::Wick => {
            if a.depth < 2 {
                bail!("--depth must be at least 2");
            }
            r.extend(wick_suite(&TracialAlgebra::standard(), a.depth, a.max_len, a.seed)?);
            r.extend(figure_product(&TracialAlgebra::matrices(2), a.depth.max(5), a.seed)?);
        }
        Suite::Oracles => {
            r.extend(recursion::ncc_oracle(n, cap)?);
            r.extend(recursion::ncl_oracle(n, cap)?);
        }
        Suite::Colored => {
            r.extend(colored::lemma18_suite(cap)?);
            r.extend(colored::bigprop_suite(cap)?);
            r.extend(colored::gsindep_suite(cap)?);
            r.extend(colored::ggindep_suite(n.min(5), cap)?);
            r.extend(colored::lemma17_suite(cap)?);
            r.extend(colored::decomposition_suite(n, cap)?);
        }
        Suite::Figures => r.extend(colored::figure_suite(cap)?),
        Suite::All => {
            for s in [
                Suite::Recursions,
                Suite::Bijections,
                Suite::CutReassemble,
                Suite::Lineardecomp,
                Suite::Series,
                Suite::Wick,
                Suite::Oracles,
                Suite::Colored,
                Suite::Figures,
            ] {
                r.extend(suite_report(a, s)?);
            }
        }
    }
    Ok(r)
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: &'a str,
    identity: &'a str,
    instance: &'a str,
    pass: bool,
    max_residual: Option<f64>,
    detail: Option<&'a str>,
}

pub fn verify(a: &VerifyArgs) -> anyhow::Result<Outcome> {
    let r = suite_report(a, a.suite)?;
    let pass = r.all_pass();
    let failed = r.failures().count();
    let mut text = r.summary();
    text += &format!("{}: {}/{} checks pass, {}\n", r.suite, r.len() - failed, r.len(), if pass { "PASS" } else { "FAIL" });
    let csv = csv_rows(r.checks.iter().map(|c| CheckRow {
        suite: &r.suite,
        identity: &c.identity,
        instance: &c.instance,
        pass: c.pass,
        max_residual: c.max_residual,
        detail: c.detail.as_deref(),
    }))?;
    let json = json!({
        "suite": r.suite,
        "pass": pass,
        "total": r.len(),
        "failed": failed,
        "checks": r.checks,
    });
    Ok(Outcome { pass, text, json, csv })
}

/// `"1,1:1,2"`, matrix indices 1-based.
fn parse_mixed(s: &str) -> anyhow::Result<TraceStatistic> {
    let (m, i) = s.split_once(':').with_context(|| format!("mixed trace {s:?} needs the form m1,m2:i1,i2"))?;
    let list = |t: &str| -> anyhow::Result<Vec<usize>> {
        t.split(',').map(|x| x.trim().parse::<usize>().with_context(|| format!("bad number {x:?} in {s:?}"))).collect()
    };
    let i = list(i)?;
    if i.contains(&0) {
        bail!("matrix indices in {s:?} are 1-based");
    }
    Ok(TraceStatistic::mixed(list(m)?, i.into_iter().map(|x| x - 1).collect())?)
}

fn ensemble(a: &McArgs, p: usize) -> anyhow::Result<EnsembleConfig> {
    let mut cfg = match a.big_m {
        Some(m) => EnsembleConfig::from_m(a.big_n, m, p, a.samples, a.seed)?,
        None => EnsembleConfig::from_c(a.big_n, a.c, p, a.samples, a.seed)?,
    };
    cfg.threads = a.threads;
    Ok(cfg)
}

pub fn mc(a: &McArgs) -> anyhow::Result<Outcome> {
    let report = match a.experiment {
        Experiment::Diagonalize => {
            let cfg = ensemble(a, a.p)?;
            let mixed = if a.mixed.is_empty() {
                None
            } else {
                let m = a.mixed.iter().map(|s| parse_mixed(s)).collect::<anyhow::Result<Vec<_>>>()?;
                if let Some(bad) = m.iter().flat_map(|s| s.matrices()).find(|&i| i >= cfg.p) {
                    bail!("mixed trace uses matrix {} but --p is {}", bad + 1, cfg.p);
                }
                Some(m)
            };
            experiment_diagonalization(&cfg, a.max_degree, mixed)?
        }
        // only the first matrix enters
        Experiment::RawCov => experiment_raw_covariance(&ensemble(a, 1)?, a.m, a.n)?,
        Experiment::Convergence => return convergence(a),
    };
    let pass = report.all_pass();
    let mut text = report.to_text();
    text += &format!("{}\n", if pass { "PASS" } else { "FAIL" });
    for f in report.failures() {
        text += &format!("  outside the band: {f}\n");
    }
    let mut json = serde_json::to_value(&report)?;
    json["pass"] = pass.into();
    Ok(Outcome { pass, text, json, csv: report.to_csv()? })
}

#[derive(Serialize)]
struct ConvRow {
    #[serde(rename = "N")]
    n: usize,
    samples: usize,
    estimate: f64,
    se: f64,
    predicted: f64,
    gap: f64,
    band: f64,
    pass: bool,
}

fn convergence(a: &McArgs) -> anyhow::Result<Outcome> {
    if a.big_m.is_some() {
        bail!("convergence scales M with N; give --c instead of --M");
    }
    let rows: Vec<ConvRow> = experiment_convergence(a.c, &a.dims, a.samples_per_n, a.seed, a.m, a.n)?
        .into_iter()
        .map(|r| ConvRow {
            n: r.n,
            samples: r.samples,
            estimate: r.estimate,
            se: r.se,
            predicted: r.predicted,
            gap: r.gap,
            band: r.band,
            pass: r.gap <= r.band,
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    let mut text = format!("kappa_2(tr[X1^{}], tr[X1^{}]) at c = {}\n", a.m, a.n, a.c);
    text += &format!("{:>6} {:>8} {:>22} {:>22} {:>22} {:>22}  pass\n", "N", "samples", "estimate", "se", "predicted", "gap");
    for r in &rows {
        text += &format!("{:>6} {:>8} {:>22} {:>22} {:>22} {:>22}  {}\n", r.n, r.samples, r.estimate, r.se, r.predicted, r.gap, r.pass);
    }
    text += &format!("{}\n", if pass { "PASS" } else { "FAIL" });
    let csv = csv_rows(&rows)?;
    let json = json!({ "experiment": "convergence", "c": a.c, "m": a.m, "n": a.n, "rows": rows, "pass": pass });
    Ok(Outcome { pass, text, json, csv })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_parsing() {
        let s = parse_mixed("1,1:1,2").unwrap();
        assert_eq!(s.key(), "S[1,1:1,2]");
        assert!(parse_mixed("1,1:0,1").is_err());
        assert!(parse_mixed("1,1:1,1").is_err());
        assert!(parse_mixed("1,1").is_err());
    }

    #[test]
    fn cap_error_names_the_flag() {
        let a = EnumerateArgs { kind: DiagramKind::Nc, n: 9, m: 1, k: None, cap: 8 };
        let e = enumerate(&a).err().unwrap().to_string();
        assert!(e.contains("--cap"), "{e}");
    }
}

