use serde_json::{json, Value};

use qschubert::braid::root_vectors;
use qschubert::coinv::coinv_presentation;
use qschubert::nilrad::presentation;
use qschubert::oracle::Oracle;
use qschubert::report::{Report, Status};
use qschubert::scalars::{Param, RatFunc};
use qschubert::weyl::ParabolicData;

use crate::RunConfig;

pub fn presentation_json(pd: &ParabolicData) -> Value {
    let mut v = presentation(pd, Param::Q).expect("classification is total");
    v["coinvariants"] = coinv_presentation(pd, Param::Q);
    v
}

fn pair(v: &Value, letter: char) -> String {
    format!("{letter}{}{}", v[0], v[1])
}

fn monomial(m: &Value, letter: char) -> String {
    let parts: Vec<String> = m.as_array().unwrap().iter().map(|p| pair(p, letter)).collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn relation_line(r: &Value, letter: char) -> String {
    let rhs: Vec<String> = r["rhs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| format!("({})*{}", t["coeff"].as_str().unwrap(), monomial(&t["monomial"], letter)))
        .collect();
    format!("{} = {}    [{}]", monomial(&r["lhs"], letter), rhs.join(" + "), r["case"].as_str().unwrap())
}

/// Replaces every power of `q` in a rendered coefficient by 1, as text, and
/// reads the result back as a constant.
pub fn at_q_one(coeff: &str) -> RatFunc {
    let b = coeff.as_bytes();
    let mut out = String::new();
    let mut k = 0;
    while k < b.len() {
        if b[k] == b'q' {
            k += 1;
            if k < b.len() && b[k] == b'^' {
                k += 1;
                if k < b.len() && b[k] == b'-' {
                    k += 1;
                }
                while k < b.len() && b[k].is_ascii_digit() {
                    k += 1;
                }
            }
            if out.ends_with('*') {
                out.pop();
            } else {
                out.push('1');
            }
        } else {
            out.push(b[k] as char);
            k += 1;
        }
    }
    out.parse().expect("substituted coefficient parses")
}

fn classical_line(r: &Value, letter: char) -> String {
    let rhs: Vec<String> = r["rhs"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|t| {
            let c = at_q_one(t["coeff"].as_str().unwrap());
            let m = monomial(&t["monomial"], letter);
            if c.is_zero() {
                None
            } else if c.is_one() {
                Some(m)
            } else {
                Some(format!("({c})*{m}"))
            }
        })
        .collect();
    let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
    format!("{} = {}", monomial(&r["lhs"], letter), rhs)
}

pub fn presentation_text(pd: &ParabolicData) -> String {
    let v = presentation_json(pd);
    let gens = |v: &Value, letter| v["generators"].as_array().unwrap().iter().map(|g| pair(g, letter)).collect::<Vec<_>>();
    let mut out = format!("n = {}, J = {:?}\n\nnilradical U_q(n_J)\n", pd.n, pd.j);
    let x = gens(&v, 'X');
    out.push_str(&format!("{} generators: {}\n", x.len(), x.join(", ")));
    let rels = v["relations"].as_array().unwrap();
    out.push_str(&format!("{} relations:\n", rels.len()));
    for r in rels {
        out.push_str(&format!("  {}\n", relation_line(r, 'X')));
    }
    let c = &v["coinvariants"];
    let u = gens(c, 'u');
    out.push_str(&format!("\ncoinvariants O_q(P_J)^co\n{} generators: {}\n", u.len(), u.join(", ")));
    let crels = c["relations"].as_array().unwrap();
    out.push_str(&format!("{} relations:\n", crels.len()));
    for r in crels {
        out.push_str(&format!("  {}\n", relation_line(r, 'u')));
    }
    out.push_str("\nat q = 1 (textual substitution):\n");
    for r in rels {
        out.push_str(&format!("  {}\n", classical_line(r, 'X')));
    }
    for r in crels {
        out.push_str(&format!("  {}\n", classical_line(r, 'u')));
    }
    out
}

pub fn rootvectors_json(cfg: &RunConfig) -> Value {
    let pd = &cfg.pd;
    let table = root_vectors(pd, &Oracle::new(cfg.oracle_cap)).expect("root vectors are pure E");
    let vectors: Vec<Value> = table
        .order
        .iter()
        .map(|&(i, j)| {
            let x = table.get(i, j).unwrap();
            let terms: Vec<Value> = x
                .lin()
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| json!({"word": w, "coeff": c.to_string()}))
                .collect();
            json!({"root": [i, j], "terms": terms})
        })
        .collect();
    json!({"n": pd.n, "J": pd.j, "word": pd.wj_word, "rootvectors": vectors})
}

fn summary(r: &Report) -> Value {
    json!({
        "total": r.entries.len(),
        "pass": r.count(Status::Pass),
        "fail": r.count(Status::Fail),
        "skipped": r.count(Status::Skipped),
    })
}

pub fn report_json(cfg: &RunConfig, r: &Report) -> Value {
    json!({
        "n": cfg.pd.n,
        "J": cfg.pd.j,
        "oracle_cap": cfg.oracle_cap,
        "suites": cfg.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "summary": summary(r),
        "entries": r.to_json(),
    })
}

pub fn report_text(cfg: &RunConfig, r: &Report) -> String {
    let names: Vec<&str> = cfg.suites.iter().map(|s| s.name()).collect();
    format!("n = {}, J = {:?}, suites = {}, oracle cap = {}\n{}", cfg.pd.n, cfg.pd.j, names.join(","), cfg.oracle_cap, r.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_one_substitution() {
        assert!(at_q_one("q - q^-1").is_zero());
        assert_eq!(at_q_one("-q^2 + 1 - q^-2"), RatFunc::from_int(-1));
        assert_eq!(at_q_one("2*q^3 + 1/2*q"), "5/2".parse().unwrap());
        assert!(at_q_one("q").is_one());
    }
}
