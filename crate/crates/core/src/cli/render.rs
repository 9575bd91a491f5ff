use std::fmt;

use serde::Serialize;

use super::Format;
use crate::codes::{ClassificationReport, SweepRow, TableReport};

/// Run-length encoding of a coefficient vector as `(value, run)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Rle(Vec<(u32, usize)>);

impl Rle {
    pub fn encode(values: &[u32]) -> Self {
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &v in values {
            match runs.last_mut() {
                Some((last, n)) if *last == v => *n += 1,
                _ => runs.push((v, 1)),
            }
        }
        Rle(runs)
    }
}

impl fmt::Display for Rle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, n)| format!("{v}*{n}")).collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn join_list<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        return "1".to_string();
    }
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Markdown table with columns padded to equal width.
pub fn md_table(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len().max(3)).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut s = line(headers.iter().map(|h| h.to_string()).collect());
    s += &line(widths.iter().map(|&w| "-".repeat(w)).collect());
    for row in rows {
        s += &line(row);
    }
    s
}

pub fn write_csv<I>(headers: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn weight_cell(value: usize, exact: bool) -> String {
    if exact {
        value.to_string()
    } else {
        format!("<={value}")
    }
}

pub fn classification(r: &ClassificationReport, format: Format) -> String {
    let class_of = |label: &str| {
        r.classes
            .iter()
            .position(|c| c.members.iter().any(|m| m == label))
            .expect("classes partition the codes")
    };
    let with_dist = r.codes.iter().any(|c| c.distribution.is_some());
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut headers = vec![
                "idempotent_ref",
                "phi_subgroup",
                "dimension",
                "min_weight",
                "min_weight_exact",
                "class",
                "class_representative",
            ];
            if with_dist {
                headers.push("distribution");
            }
            write_csv(
                &headers,
                r.codes.iter().map(|c| {
                    let k = class_of(&c.idempotent_ref);
                    let mut row = vec![
                        c.idempotent_ref.clone(),
                        c.phi_subgroup.clone(),
                        c.dimension.to_string(),
                        c.min_weight.to_string(),
                        c.min_weight_exact.to_string(),
                        k.to_string(),
                        r.classes[k].representative.clone(),
                    ];
                    if let Some(d) = &c.distribution {
                        row.push(d.to_string());
                    }
                    row
                }),
            )
        }
        Format::Md => {
            let mut s = format!(
                "# Minimal codes of F_{}[{}]\n\n{} codes, {} classes; divisors of the exponent: {}; homocyclic: {}; counts agree: {}\n\n## Classes\n\n",
                r.field,
                r.group,
                r.codes.len(),
                r.class_count,
                r.tau,
                yes_no(r.homocyclic),
                yes_no(r.tau_match),
            );
            let mut headers = vec![
                "class",
                "representative",
                "subgroup",
                "size",
                "dim",
                "min wt",
            ];
            if with_dist {
                headers.push("distribution");
            }
            s += &md_table(
                &headers,
                r.classes
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let mut row = vec![
                            k.to_string(),
                            c.representative.clone(),
                            c.subgroup.clone(),
                            c.size.to_string(),
                            c.dimension.to_string(),
                            weight_cell(c.min_weight, c.min_weight_exact),
                        ];
                        if let Some(d) = &c.distribution {
                            row.push(d.to_string());
                        }
                        row
                    })
                    .collect(),
            );
            s += "\n## Codes\n\n";
            s += &md_table(
                &["code", "subgroup", "dim", "min wt", "class"],
                r.codes
                    .iter()
                    .map(|c| {
                        vec![
                            c.idempotent_ref.clone(),
                            c.phi_subgroup.clone(),
                            c.dimension.to_string(),
                            weight_cell(c.min_weight, c.min_weight_exact),
                            class_of(&c.idempotent_ref).to_string(),
                        ]
                    })
                    .collect(),
            );
            s
        }
    }
}

pub fn sweep(rows: &[SweepRow], format: Format) -> String {
    let cells = |r: &SweepRow| {
        vec![
            r.group.clone(),
            r.class_count.to_string(),
            r.tau.to_string(),
            r.homocyclic.to_string(),
            r.tau_match.to_string(),
        ]
    };
    match format {
        Format::Json => json(&rows),
        Format::Csv => write_csv(
            &["group", "class_count", "tau", "homocyclic", "tau_match"],
            rows.iter().map(cells),
        ),
        Format::Md => {
            let mismatches = rows.iter().filter(|r| r.tau_match != r.homocyclic).count();
            let mut s = format!(
                "# Class counts against divisors of the exponent\n\n{} groups; {} where agreement differs from homocyclicity\n\n",
                rows.len(),
                mismatches
            );
            s += &md_table(
                &["group", "classes", "divisors", "homocyclic", "agree"],
                rows.iter().map(cells).collect(),
            );
            s
        }
    }
}

pub fn table_report(r: &TableReport, format: Format) -> String {
    let cells = |row: &crate::codes::TableRow| {
        vec![
            row.label.clone(),
            row.description.clone(),
            row.expected.clone(),
            row.observed.clone(),
            if row.pass { "PASS" } else { "FAIL" }.to_string(),
        ]
    };
    match format {
        Format::Json => json(r),
        Format::Csv => write_csv(
            &["label", "description", "expected", "observed", "pass"],
            r.rows.iter().map(cells),
        ),
        Format::Md => {
            let mut s = format!(
                "# Table {} for F_{}[{}]\n\nhypothesis: {}\n\n",
                r.table, r.field, r.group, r.hypothesis
            );
            s += &md_table(
                &["row", "description", "expected", "observed", "result"],
                r.rows.iter().map(cells).collect(),
            );
            s += &format!(
                "\n{}\n",
                if r.passed {
                    "all rows pass"
                } else {
                    "some rows FAIL"
                }
            );
            s
        }
    }
}
