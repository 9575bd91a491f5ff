//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on a domain error (or a failed `verify`
//! row), 2 on a usage error. Errors are reported as a JSON record
//! `{error_code, message, context}` on standard error.

mod render;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::abelian_group::{
    abelian_groups_up_to, all_subgroups, quotient_type, subgroup_orbits, AbelianGroup, Group,
};
use crate::codes::{classify, tau_sweep, verify_table, ClassifyOptions, CodeError, TableKind};
use crate::finite_field::{field_make, Field};
use crate::group_algebra::{primitive_idempotents, GroupAlgebra};

use render::{md_table, write_csv, Rle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Cp2cp,
    Cpncp,
    CpncpSubgroups,
    Homocyclic,
}

#[derive(Debug, Parser)]
#[command(
    name = "abcodes",
    version,
    about = "Minimal codes in semisimple abelian group algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the subgroups of a group with their quotient types and Aut(G)-orbits.
    Subgroups {
        /// Cyclic factor orders, e.g. `9,3`; `1` for the trivial group.
        #[arg(long, value_parser = parse_group)]
        group: GroupSpec,
        #[command(flatten)]
        common: Common,
    },
    /// Dump the primitive idempotents of F_q G.
    Idempotents {
        #[arg(long, value_parser = parse_group)]
        group: GroupSpec,
        /// Field order as `p` or `p^m`.
        #[arg(long, value_parser = parse_field)]
        field: (u64, usize),
        #[command(flatten)]
        common: Common,
    },
    /// Classify the minimal codes of F_q G up to equivalence.
    Classify {
        #[arg(long, value_parser = parse_group)]
        group: GroupSpec,
        #[arg(long, value_parser = parse_field)]
        field: (u64, usize),
        /// Include full weight distributions.
        #[arg(long)]
        with_distributions: bool,
        /// Largest log2 of the codeword count enumerated exhaustively.
        #[arg(long, default_value_t = crate::codes::DEFAULT_DIMENSION_CAP)]
        dimension_cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compare class counts with the number of divisors of the exponent.
    Sweep {
        /// Largest group order considered.
        #[arg(long)]
        max_order: u64,
        #[arg(long, value_parser = parse_field)]
        field: (u64, usize),
        #[command(flatten)]
        common: Common,
    },
    /// Rebuild a reference table of binary codes and check every row.
    Verify {
        #[arg(long, value_enum)]
        table: Table,
        /// Must be 2 if given; the tables are binary.
        #[arg(long, value_parser = parse_field)]
        field: Option<(u64, usize)>,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = crate::codes::DEFAULT_DIMENSION_CAP)]
        dimension_cap: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Cyclic factor orders as given on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec(pub Vec<u64>);

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    let s = s.trim();
    if s == "1" {
        return Ok(GroupSpec(Vec::new()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("invalid factor '{t}'"))
        })
        .collect::<Result<_, _>>()
        .map(GroupSpec)
}

fn parse_field(s: &str) -> Result<(u64, usize), String> {
    let bad = || format!("invalid field '{s}', expected p or p^m");
    match s.trim().split_once('^') {
        None => Ok((s.trim().parse().map_err(|_| bad())?, 1)),
        Some((p, m)) => Ok((p.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?)),
    }
}

/// A domain error ready to be reported.
#[derive(Debug, Serialize)]
struct Failure {
    error_code: &'static str,
    message: String,
    context: serde_json::Value,
}

impl Failure {
    fn new(code: &'static str, message: impl ToString, context: serde_json::Value) -> Self {
        Self {
            error_code: code,
            message: message.to_string(),
            context,
        }
    }
}

macro_rules! domain {
    ($e:expr, $ctx:expr) => {
        $e.map_err(|e| Failure::new(e.code(), &e, $ctx.clone()))?
    };
}

/// Runs the tool on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let record = Failure::new("UsageError", e.to_string().trim_end(), json!({}));
                let _ = writeln!(
                    err,
                    "{}",
                    serde_json::to_string(&record).expect("serializable")
                );
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", serde_json::to_string(&f).expect("serializable"));
            1
        }
    }
}

fn make_group(spec: &GroupSpec) -> Result<Group, Failure> {
    let ctx = json!({ "group": spec.0 });
    Ok(domain!(AbelianGroup::new(&spec.0), ctx))
}

fn make_field(spec: (u64, usize)) -> Result<Field, Failure> {
    let ctx = json!({ "p": spec.0, "m": spec.1 });
    Ok(domain!(field_make(spec.0, spec.1, None), ctx))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::new("IoError", e, json!({})))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Subgroups { group, common } => {
            let g = make_group(&group)?;
            emit(out, &subgroups_report(&g, common.format)?)?;
            Ok(0)
        }
        Command::Idempotents {
            group,
            field,
            common,
        } => {
            let g = make_group(&group)?;
            let f = make_field(field)?;
            emit(out, &idempotents_report(&g, &f, common.format)?)?;
            Ok(0)
        }
        Command::Classify {
            group,
            field,
            with_distributions,
            dimension_cap,
            common,
        } => {
            let g = make_group(&group)?;
            let f = make_field(field)?;
            let ctx = json!({ "group": g.spec_string(), "field": f.spec_string() });
            let opts = ClassifyOptions {
                with_distributions,
                dimension_cap,
            };
            let report = domain!(classify(&g, &f, opts), ctx);
            emit(out, &render::classification(&report, common.format))?;
            Ok(0)
        }
        Command::Sweep {
            max_order,
            field,
            common,
        } => {
            let f = make_field(field)?;
            let p = f.characteristic();
            let groups: Vec<Group> = abelian_groups_up_to(max_order)
                .into_iter()
                .filter(|g| !(g.order() as u64).is_multiple_of(p))
                .collect();
            let ctx = json!({ "max_order": max_order, "field": f.spec_string() });
            let rows = domain!(tau_sweep(&groups, &f), ctx);
            emit(out, &render::sweep(&rows, common.format))?;
            Ok(0)
        }
        Command::Verify {
            table,
            field,
            p,
            n,
            r,
            m,
            dimension_cap,
            common,
        } => {
            if let Some(spec) = field {
                if spec != (2, 1) {
                    return Err(Failure::new(
                        "UnsupportedField",
                        "reference tables are defined over GF(2) only",
                        json!({ "p": spec.0, "m": spec.1 }),
                    ));
                }
            }
            let kind = match table {
                Table::Cp2cp => TableKind::SquareByPrime { p },
                Table::Cpncp => TableKind::PowerByPrime { p, n },
                Table::CpncpSubgroups => TableKind::SubgroupCorrespondence { p, n },
                Table::Homocyclic => TableKind::Homocyclic { p, r, m },
            };
            let ctx = json!({ "table": kind.name(), "p": p, "n": n, "r": r, "m": m });
            let report = verify_table(kind, dimension_cap)
                .map_err(|e: CodeError| Failure::new(e.code(), &e, ctx.clone()))?;
            emit(out, &render::table_report(&report, common.format))?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn subgroups_report(g: &Group, format: Format) -> Result<String, Failure> {
    let ctx = json!({ "group": g.spec_string() });
    let subs = domain!(all_subgroups(g), ctx);
    let orbits = domain!(subgroup_orbits(g, &subs), ctx);
    #[derive(Serialize)]
    struct Row {
        order: usize,
        generators: String,
        quotient_type: Vec<u64>,
        cocyclic: bool,
        orbit: usize,
    }
    let mut rows = Vec::with_capacity(subs.len());
    for h in &subs {
        let qt = domain!(quotient_type(g, h), ctx);
        let orbit = orbits
            .iter()
            .position(|o| o.members.contains(h))
            .expect("orbits cover the input");
        rows.push(Row {
            order: h.order(),
            generators: h.describe(),
            cocyclic: qt.len() == 1,
            quotient_type: qt,
            orbit,
        });
    }
    Ok(match format {
        Format::Json => {
            let v = json!({
                "group": g.spec_string(),
                "subgroup_count": rows.len(),
                "orbit_count": orbits.len(),
                "subgroups": rows,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => write_csv(
            &["order", "generators", "quotient_type", "cocyclic", "orbit"],
            rows.iter().map(|r| {
                vec![
                    r.order.to_string(),
                    r.generators.clone(),
                    render::join_list(&r.quotient_type),
                    r.cocyclic.to_string(),
                    r.orbit.to_string(),
                ]
            }),
        ),
        Format::Md => {
            let mut s = format!(
                "# Subgroups of {}\n\n{} subgroups in {} orbits\n\n",
                g.spec_string(),
                rows.len(),
                orbits.len()
            );
            s += &md_table(
                &["order", "generators", "G/H", "co-cyclic", "orbit"],
                rows.iter()
                    .map(|r| {
                        vec![
                            r.order.to_string(),
                            r.generators.clone(),
                            render::join_list(&r.quotient_type),
                            if r.cocyclic { "yes" } else { "no" }.to_string(),
                            r.orbit.to_string(),
                        ]
                    })
                    .collect(),
            );
            s
        }
    })
}

fn idempotents_report(g: &Group, f: &Field, format: Format) -> Result<String, Failure> {
    let ctx = json!({ "group": g.spec_string(), "field": f.spec_string() });
    let alg = domain!(GroupAlgebra::new(g, f), ctx);
    let prims = domain!(primitive_idempotents(&alg), ctx);
    #[derive(Serialize)]
    struct Record {
        orbit_rep: String,
        phi_subgroup: Vec<String>,
        support_size: usize,
        dimension: usize,
        coeffs: Rle,
    }
    let records: Vec<Record> = prims
        .iter()
        .map(|e| Record {
            orbit_rep: g.format_element(e.orbit_rep),
            phi_subgroup: e
                .phi_subgroup
                .generators()
                .iter()
                .map(|&x| g.format_element(x))
                .collect(),
            support_size: e.element.weight(),
            dimension: e.orbit_size,
            coeffs: Rle::encode(e.element.codes()),
        })
        .collect();
    Ok(match format {
        Format::Json => {
            let v = json!({
                "group": g.spec_string(),
                "field": f.spec_string(),
                "idempotents": records,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => write_csv(
            &[
                "orbit_rep",
                "phi_subgroup",
                "support_size",
                "dimension",
                "coeffs",
            ],
            records.iter().map(|r| {
                vec![
                    r.orbit_rep.clone(),
                    format!("<{}>", r.phi_subgroup.join(",")),
                    r.support_size.to_string(),
                    r.dimension.to_string(),
                    r.coeffs.to_string(),
                ]
            }),
        ),
        Format::Md => {
            let mut s = format!(
                "# Primitive idempotents of F_{}[{}]\n\n{} idempotents\n\n",
                f.spec_string(),
                g.spec_string(),
                records.len()
            );
            s += &md_table(
                &[
                    "orbit rep",
                    "subgroup",
                    "support",
                    "dim",
                    "coefficients (value*run)",
                ],
                records
                    .iter()
                    .map(|r| {
                        vec![
                            r.orbit_rep.clone(),
                            format!("<{}>", r.phi_subgroup.join(",")),
                            r.support_size.to_string(),
                            r.dimension.to_string(),
                            r.coeffs.to_string(),
                        ]
                    })
                    .collect(),
            );
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["abcodes"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_group("9,3").unwrap().0, vec![9, 3]);
        assert!(parse_group("1").unwrap().0.is_empty());
        assert!(parse_group("9,x").is_err());
        assert_eq!(parse_field("2").unwrap(), (2, 1));
        assert_eq!(parse_field("2^6").unwrap(), (2, 6));
        assert!(parse_field("2^").is_err());
    }

    #[test]
    fn exit_codes() {
        let (code, out, _) = run_capture(&["classify", "--group", "9,3", "--field", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("4 classes"));
        let (code, _, err) = run_capture(&["classify", "--group", "6", "--field", "2"]);
        assert_eq!(code, 1);
        let rec: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(rec["error_code"], "CharDividesOrder");
        let (code, _, err) = run_capture(&["classify", "--group", "9,3"]);
        assert_eq!(code, 2);
        assert!(err.contains("UsageError"));
        let (code, _, _) = run_capture(&[
            "classify", "--group", "9,3", "--field", "4", "--format", "xml",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn deterministic_output() {
        let args = [
            "classify", "--group", "3,3", "--field", "2", "--format", "json",
        ];
        assert_eq!(run_capture(&args).1, run_capture(&args).1);
    }
}
