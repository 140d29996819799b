use clap::ValueEnum;
use serde_json::json;

use qschubert::braid::{reduced_word_independence, verify_lemma};
use qschubert::coinv::{coinv_suite, convolution_inverse_check, smash_iso_check, Coinv};
use qschubert::isomaps::{build_map, composition_check, verify_hom, MapKind};
use qschubert::nilrad::{ls_straighten_check, verify_theorem_relations, Nilrad};
use qschubert::oracle::Oracle;
use qschubert::report::{Report, ReportEntry, Status};
use qschubert::scalars::Param;
use qschubert::weyl::{is_reduced, roots_along, ParabolicData};
use qschubert::Result;

use crate::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Weyl,
    Lemmas,
    Theorem,
    Coinv,
    Iso,
    Smash,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Weyl, Suite::Lemmas, Suite::Theorem, Suite::Coinv, Suite::Iso, Suite::Smash];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weyl => "weyl",
            Suite::Lemmas => "lemmas",
            Suite::Theorem => "theorem",
            Suite::Coinv => "coinv",
            Suite::Iso => "iso",
            Suite::Smash => "smash",
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Errors that are not budget overruns become failing entries, so a single
/// bad instance never aborts the run.
fn guard(suite: &str, pd: &ParabolicData, r: Result<Report>) -> Report {
    match r {
        Ok(r) => r,
        Err(e) => Report::new(vec![ReportEntry::run(suite, json!({"n": pd.n, "J": pd.j}), || Err(e))]),
    }
}

fn weyl_suite(pd: &ParabolicData, o: &Oracle) -> Report {
    let inst = json!({"n": pd.n, "J": pd.j});
    let mut r = Report::new(vec![
        ReportEntry::run("wj_reduced", inst.clone(), || {
            Ok((!is_reduced(pd.n, &pd.wj_word)?).then(|| format!("{:?} is not reduced", pd.wj_word)))
        }),
        ReportEntry::run("wj_length", inst.clone(), || {
            Ok((pd.wj.length() != pd.phi.len()).then(|| format!("l(w_J) = {}, |Phi_J| = {}", pd.wj.length(), pd.phi.len())))
        }),
        ReportEntry::run("w0_factorization", inst.clone(), || {
            Ok((pd.w0j.compose(&pd.wj) != pd.w0).then(|| "w0 != w0^J w_J".to_string()))
        }),
        ReportEntry::run("convex_order", inst, || {
            let roots = roots_along(pd.n, &pd.wj_word)?;
            Ok((roots != pd.phi).then(|| format!("roots along the word {roots:?} differ from Phi_J")))
        }),
    ]);
    r.extend(guard("reduced_word_independence", pd, reduced_word_independence(pd, o)));
    r
}

const TE_EE: [&str; 15] = [
    "prop_braid", "TE_1", "TE_2", "TE_3", "TE_4", "TE_5", "TE_6", "EE_1", "EE_2", "EE_3", "EE_4", "EE_5", "EE_6",
    "EE_7", "EE_8",
];

fn lemma_suite(pd: &ParabolicData, o: &Oracle) -> Report {
    let mut r = Report::default();
    for id in TE_EE {
        r.extend(guard(id, pd, verify_lemma(id, pd.n, &[], o)));
    }
    for id in ["TX_1", "TX_2", "TX_3", "lemma1"] {
        r.extend(guard(id, pd, verify_lemma(id, pd.n, &pd.j, o)));
    }
    r
}

fn theorem_suite(pd: &ParabolicData, o: &Oracle) -> Report {
    let mut r = guard("theorem_relations", pd, verify_theorem_relations(pd, o));
    r.extend(ls_straighten_check(&Nilrad::new(pd, Param::Q)));
    r
}

fn iso_suite(pd: &ParabolicData, cap: usize) -> Report {
    let mut r = Report::default();
    for kind in MapKind::ALL {
        r.extend(guard(kind.tag(), pd, build_map(kind, pd).and_then(|m| verify_hom(&m, cap))));
    }
    r.extend(guard("psi_composition", pd, composition_check(pd)));
    r
}

fn smash_suite(pd: &ParabolicData, cap: usize) -> Report {
    match Coinv::new(pd, Param::Q, cap) {
        Ok(co) => {
            let mut r = smash_iso_check(&co);
            r.extend(convolution_inverse_check(&co));
            r
        }
        Err(e) => guard("smash", pd, Err(e)),
    }
}

/// Runs the selected suites. Entries are sorted so the report does not
/// depend on scheduling.
pub fn run(cfg: &RunConfig) -> Report {
    let pd = &cfg.pd;
    let o = Oracle::new(cfg.oracle_cap);
    let mut out = Report::default();
    for &s in &cfg.suites {
        let mut r = match s {
            Suite::Weyl => weyl_suite(pd, &o),
            Suite::Lemmas => lemma_suite(pd, &o),
            Suite::Theorem => theorem_suite(pd, &o),
            Suite::Coinv => guard("coinv", pd, coinv_suite(pd, cfg.oracle_cap)),
            Suite::Iso => iso_suite(pd, cfg.oracle_cap),
            Suite::Smash => smash_suite(pd, cfg.oracle_cap),
        };
        r.entries.sort_by_cached_key(|e| (e.lemma.clone(), e.instance.to_string()));
        out.extend(r);
    }
    out
}

pub fn exit_code(r: &Report, strict: bool) -> u8 {
    if r.count(Status::Fail) > 0 {
        1
    } else if strict && r.count(Status::Skipped) > 0 {
        3
    } else {
        0
    }
}
