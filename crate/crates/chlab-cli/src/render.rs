//! Markdown, JSON and CSV rendering of orbit tables, homology ranks, Morse
//! data and verification reports.
//!
//! Every JSON document carries `schema_version`; field order is fixed by the
//! row structs below.

use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;

use chlab_core::morse::{
    build_invariant_morse, find_critical_points, orbifold_complex, CriticalPoint, FlowCount,
};
use chlab_core::scalar::format_rational;
use chlab_core::verify::VerifyOptions;
use chlab_core::{
    build_complex, closed_form, enumerate_orbits, homology_ranks, GroupSpec, ReebOrbit, Result,
    VerificationReport,
};

/// Version of every JSON document emitted.
pub const SCHEMA_VERSION: u32 = 1;

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable tables.
    Markdown,
    /// One JSON document.
    Json,
    /// Comma-separated rows with a header.
    Csv,
}

/// One orbit listing row. Actions are in units of π.
#[derive(Debug, Serialize)]
struct OrbitRow {
    #[serde(skip)]
    action: String,
    base: String,
    k: u32,
    action_a: String,
    action_b: String,
    cz: i64,
    grading: i64,
    #[serde(rename = "type")]
    orbit_type: String,
    good: bool,
    class: String,
    contractible: bool,
}

impl From<&ReebOrbit> for OrbitRow {
    fn from(o: &ReebOrbit) -> Self {
        Self {
            action: o.action.to_string(),
            base: o.base.kind.symbol().to_string(),
            k: o.k,
            action_a: format_rational(&o.action.a),
            action_b: format_rational(&o.action.b),
            cz: o.cz,
            grading: o.grading,
            orbit_type: o.orbit_type.name().to_string(),
            good: o.good,
            class: o.class_label.clone(),
            contractible: o.contractible,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("rendering to a string cannot fail");
    s.push('\n');
    s
}

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("rendering to a buffer cannot fail");
    }
    let bytes = w.into_inner().expect("flushing a buffer cannot fail");
    String::from_utf8(bytes).expect("csv output is UTF-8")
}

fn markdown_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n", header.join(" | "));
    out += &format!("|{}\n", "---|".repeat(header.len()));
    for r in rows {
        out += &format!("| {} |\n", r.join(" | "));
    }
    out
}

/// The orbits below `L_N`, sorted by grading, then base, then multiplicity.
pub fn orbits(spec: &GroupSpec, n_level: u32, format: Format) -> Result<String> {
    let mut orbits = enumerate_orbits(spec, n_level)?;
    orbits.sort_by_key(|o| (o.grading, o.base.kind, o.k));
    let rows: Vec<OrbitRow> = orbits.iter().map(OrbitRow::from).collect();
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema_version: u32,
                spec: String,
                #[serde(rename = "N")]
                n: u32,
                orbits: &'a [OrbitRow],
            }
            to_json(&Doc {
                schema_version: SCHEMA_VERSION,
                spec: spec.to_string(),
                n: n_level,
                orbits: &rows,
            })
        }
        Format::Csv => to_csv(&rows),
        Format::Markdown => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        format!("{}^{}", r.base, r.k),
                        format!("({})π", r.action),
                        r.cz.to_string(),
                        r.grading.to_string(),
                        r.orbit_type.clone(),
                        r.good.to_string(),
                        r.class.clone(),
                        r.contractible.to_string(),
                    ]
                })
                .collect();
            format!("## Reeb orbits of {spec} below L_{n_level}\n\n")
                + &markdown_table(
                    &[
                        "orbit",
                        "action",
                        "cz",
                        "grading",
                        "type",
                        "good",
                        "class",
                        "contractible",
                    ],
                    &body,
                )
        }
    })
}

/// Homology ranks against the closed form; the flag is the comparison.
pub fn homology(spec: &GroupSpec, n_level: u32, format: Format) -> Result<(String, bool)> {
    let complex = build_complex(spec, n_level)?;
    let ranks = homology_ranks(&complex);
    let expected = closed_form(spec, n_level)?;
    let matched = ranks == expected;
    let out = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Generator {
                name: String,
                grading: i64,
            }
            #[derive(Serialize)]
            struct Doc {
                schema_version: u32,
                spec: String,
                #[serde(rename = "N")]
                n: u32,
                generators: Vec<Generator>,
                ranks: BTreeMap<i64, usize>,
                closed_form: BTreeMap<i64, usize>,
                #[serde(rename = "match")]
                matched: bool,
            }
            to_json(&Doc {
                schema_version: SCHEMA_VERSION,
                spec: spec.to_string(),
                n: n_level,
                generators: complex
                    .all_generators()
                    .map(|o| Generator {
                        name: o.name(),
                        grading: o.grading,
                    })
                    .collect(),
                ranks: ranks.ranks.clone(),
                closed_form: expected.ranks.clone(),
                matched,
            })
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                degree: i64,
                rank: usize,
                closed_form: usize,
            }
            let degrees: std::collections::BTreeSet<i64> = ranks
                .ranks
                .keys()
                .chain(expected.ranks.keys())
                .copied()
                .collect();
            to_csv(degrees.into_iter().map(|d| Row {
                degree: d,
                rank: ranks.rank(d),
                closed_form: expected.rank(d),
            }))
        }
        Format::Markdown => {
            let degrees: std::collections::BTreeSet<i64> = ranks
                .ranks
                .keys()
                .chain(expected.ranks.keys())
                .copied()
                .collect();
            let body: Vec<Vec<String>> = degrees
                .into_iter()
                .map(|d| {
                    vec![
                        d.to_string(),
                        ranks.rank(d).to_string(),
                        expected.rank(d).to_string(),
                    ]
                })
                .collect();
            format!("## Filtered homology of {spec} below L_{n_level}\n\n")
                + &markdown_table(&["degree", "rank", "closed form"], &body)
                + &format!("\nmatch: {matched}\n")
        }
    };
    Ok((out, matched))
}

/// Critical points and flow counts of the invariant Morse function.
pub fn morse(spec: &GroupSpec, trajectories: bool, format: Format) -> Result<String> {
    let f = build_invariant_morse(spec)?;
    let mut crit = find_critical_points(&f)?;
    crit.sort_by_key(|c| (c.index, c.kind));
    let mut complex = orbifold_complex(spec)?;
    if !trajectories {
        for flow in &mut complex.flows {
            flow.trajectories.clear();
        }
    }
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema_version: u32,
                spec: String,
                critical_points: &'a [CriticalPoint],
                flows: &'a [FlowCount],
                ranks: [usize; 3],
            }
            to_json(&Doc {
                schema_version: SCHEMA_VERSION,
                spec: spec.to_string(),
                critical_points: &crit,
                flows: &complex.flows,
                ranks: complex.ranks,
            })
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                kind: String,
                index: u32,
                isotropy: u32,
                orientable: bool,
                value: String,
                x: String,
                y: String,
                z: String,
            }
            to_csv(crit.iter().map(|c| Row {
                kind: c.kind.symbol().to_string(),
                index: c.index,
                isotropy: c.isotropy,
                orientable: c.orientable,
                value: format!("{:.6}", c.value),
                x: format!("{:.6}", c.location[0]),
                y: format!("{:.6}", c.location[1]),
                z: format!("{:.6}", c.location[2]),
            }))
        }
        Format::Markdown => {
            let mut kinds: BTreeMap<(u32, String), (usize, u32, bool)> = BTreeMap::new();
            for c in &crit {
                let e = kinds
                    .entry((c.index, c.kind.symbol().to_string()))
                    .or_insert((0, c.isotropy, c.orientable));
                e.0 += 1;
            }
            let points: Vec<Vec<String>> = kinds
                .into_iter()
                .map(|((index, kind), (count, iso, orientable))| {
                    vec![
                        kind,
                        index.to_string(),
                        count.to_string(),
                        iso.to_string(),
                        orientable.to_string(),
                    ]
                })
                .collect();
            let flows: Vec<Vec<String>> = complex
                .flows
                .iter()
                .map(|fl| {
                    vec![
                        format!("{} -> {}", fl.from.symbol(), fl.to.symbol()),
                        fl.upstairs.to_string(),
                        fl.downstairs.to_string(),
                        format!("{:?}", fl.weights),
                    ]
                })
                .collect();
            let [r0, r1, r2] = complex.ranks;
            format!("## Invariant Morse function for {spec}\n\n")
                + &markdown_table(
                    &["point", "index", "count", "isotropy", "orientable"],
                    &points,
                )
                + "\n"
                + &markdown_table(&["flow", "upstairs", "downstairs", "weights"], &flows)
                + &format!("\nranks: ({r0}, {r1}, {r2})\n")
        }
    })
}

/// Verification reports with one summary line per check.
pub fn reports(reports: &[VerificationReport], opts: &VerifyOptions, format: Format) -> String {
    let passed = reports.iter().all(VerificationReport::passed);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema_version: u32,
                options: &'a VerifyOptions,
                reports: &'a [VerificationReport],
                passed: bool,
            }
            to_json(&Doc {
                schema_version: SCHEMA_VERSION,
                options: opts,
                reports,
                passed,
            })
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                check: &'a str,
                instances: usize,
                failures: usize,
                max_residual: String,
                passed: bool,
            }
            to_csv(reports.iter().map(|r| Row {
                check: &r.check,
                instances: r.instances,
                failures: r.failures.len(),
                max_residual: format!("{:.3e}", r.max_residual),
                passed: r.passed(),
            }))
        }
        Format::Markdown => {
            let mut out = String::new();
            for r in reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                out += &format!(
                    "{status} {}: {} instances, {} failures, max residual {:.3e}\n",
                    r.check,
                    r.instances,
                    r.failures.len(),
                    r.max_residual
                );
                for label in &r.failures {
                    out += &format!("  failed: {label}\n");
                }
            }
            out
        }
    }
}
