// SPDX-License-Identifier: Apache-2.0

//! The `ptower` command line: argument parsing, dispatch to the library,
//! and rendering of results as single-line JSON or, with `--pretty`, text.
//!
//! Exit codes: 0 on success, 1 on domain errors (reported as
//! `{"error": <kind>, "message": <text>}` on stderr), 2 on usage errors.

pub mod format;
pub mod input;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use ptower_core::groupcore::{self, GroupError};
use ptower_core::gsineq::{self, ZassenhausPolynomial};
use ptower_core::magnus::{self, Level, MagnusError, Word};
use ptower_core::quadforms::{self, ClassGroup};
use ptower_core::towerdecide::{self, TowerInput};
use ptower_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

pub use format::to_json;

/// Groups at most this large are also filtered through the group ring.
pub const ORACLE_ORDER_LIMIT: usize = 256;

#[derive(Debug, Parser)]
#[command(name = "ptower", version, about = "p-class field tower computations")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

/// An imaginary quadratic field, by discriminant or by radicand.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct FieldArgs {
    /// Negative discriminant D ≡ 0, 1 (mod 4).
    #[arg(short = 'D', allow_hyphen_values = true, value_name = "INT")]
    discriminant: Option<String>,
    /// Negative squarefree m; the field is Q(sqrt(m)).
    #[arg(short = 'm', allow_hyphen_values = true, value_name = "INT")]
    radicand: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Class group of an imaginary quadratic order.
    Classgroup {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// p-rank of the class group.
    Prank {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'p')]
        p: u64,
    },
    /// Decide the length of the p-class field tower.
    Decide {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short = 'p')]
        p: u64,
        /// Two relation words, inline or as a file path.
        #[arg(long, value_name = "FILE|WORDS")]
        relations: Option<String>,
        /// dim G3/G4 of the tower group.
        #[arg(long = "dim-g3g4", value_name = "INT")]
        dim_g3g4: Option<u32>,
        /// Take dim G3/G4 from a finite quotient of the tower group.
        #[arg(long = "g4-group", value_name = "NAME|FILE", conflicts_with = "dim_g3g4")]
        g4_group: Option<String>,
        /// Allow conclusions conditional on the (3,3) conjecture.
        #[arg(long = "assume-33")]
        assume_33: bool,
    },
    /// Golod–Shafarevich positivity check of a Zassenhaus polynomial.
    GsCheck {
        /// Generator rank d.
        #[arg(short = 'd')]
        d: u64,
        /// Relation levels as `k` or `k:count`, comma separated.
        #[arg(long, value_name = "LIST")]
        levels: String,
        /// Also evaluate the polynomial at this rational point.
        #[arg(long, value_name = "RATIONAL")]
        at: Option<String>,
    },
    /// Level pairs compatible with positivity, for d = 2.
    GsAdmissible {
        #[arg(short = 'd')]
        d: u64,
        #[arg(long = "max-level", default_value_t = 15)]
        max_level: u32,
    },
    /// Dimension-subgroup filtration of a finite p-group.
    Filtration {
        /// Builtin name or JSON table file.
        #[arg(long, value_name = "NAME|FILE")]
        group: String,
    },
    /// Levels of relation words in the Magnus expansion.
    MagnusLevel {
        /// Words to examine.
        #[arg(value_name = "WORD")]
        words: Vec<String>,
        /// Further words, inline or as a file path.
        #[arg(long, value_name = "FILE|WORDS")]
        relations: Option<String>,
        #[arg(short = 'p')]
        p: u32,
        #[arg(long, default_value_t = magnus::DEFAULT_TRUNCATION)]
        truncation: usize,
    },
    /// Degree-3 coefficient matrix of two relations.
    MasseyMatrix {
        #[arg(long, value_name = "FILE|WORDS")]
        relations: String,
        #[arg(short = 'p')]
        p: u32,
    },
}

/// What a finished invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `ptower` on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(Report { json, pretty }) => {
            let mut stdout = if cli.pretty { pretty } else { to_json(&json) };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(message)) => {
            Outcome { code: 2, stdout: String::new(), stderr: format!("error: {message}\n") }
        }
        Err(Failure::Domain(e)) => {
            let body = json!({ "error": e.name(), "message": e.to_string() });
            Outcome { code: 1, stdout: String::new(), stderr: format!("{}\n", to_json(&body)) }
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.into())
    }
}

struct Report {
    json: Value,
    pretty: String,
}

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

/// Integers that fit in `i64` as numbers, larger ones as strings.
fn big_value(n: &BigInt) -> Value {
    i64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

fn discriminant(field: &FieldArgs) -> Result<BigInt, Failure> {
    match (&field.discriminant, &field.radicand) {
        (Some(d), _) => input::parse_bigint(d).map_err(|m| Failure::Usage(format!("-D: {m}"))),
        (None, Some(m)) => {
            let m = input::parse_bigint(m).map_err(|e| Failure::Usage(format!("-m: {e}")))?;
            Ok(quadforms::fundamental_discriminant(&m)?.discriminant)
        }
        (None, None) => Err(Failure::Usage("one of -D or -m is required".into())),
    }
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Classgroup { field } => classgroup(&discriminant(field)?),
        Command::Prank { field, p } => prank(&discriminant(field)?, *p),
        Command::Decide { field, p, relations, dim_g3g4, g4_group, assume_33 } => {
            let mut input = TowerInput::new(discriminant(field)?, *p);
            input.assume_33 = *assume_33;
            input.dim_g3_g4 = *dim_g3g4;
            if let Some(spec) = g4_group {
                input.dim_g3_g4 = Some(groupcore::dim_g3_mod_g4(&input::load_group(spec)?)?);
            }
            if let Some(arg) = relations {
                input.relations = Some(relation_pair(arg)?);
            }
            decide(&input)
        }
        Command::GsCheck { d, levels, at } => gs_check(*d, levels, at.as_deref()),
        Command::GsAdmissible { d, max_level } => gs_admissible(*d, *max_level),
        Command::Filtration { group } => filtration(group),
        Command::MagnusLevel { words, relations, p, truncation } => {
            let mut all = Vec::new();
            for (i, text) in words.iter().enumerate() {
                all.push(magnus::parse_word(text).map_err(|e| with_word_index(e, i + 1))?);
            }
            if let Some(arg) = relations {
                all.extend(input::read_relations(arg)?);
            }
            if all.is_empty() {
                return Err(Failure::Usage("give words as arguments or with --relations".into()));
            }
            magnus_level(&all, *p, *truncation)
        }
        Command::MasseyMatrix { relations, p } => {
            let (r1, r2) = relation_pair(relations)?;
            massey_matrix(&r1, &r2, *p)
        }
    }
}

/// For positional words the "line" of a syntax error is the word's position.
fn with_word_index(e: MagnusError, index: usize) -> MagnusError {
    match e {
        MagnusError::Syntax { column, message, .. } => {
            MagnusError::Syntax { line: index, column, message }
        }
        other => other,
    }
}

fn relation_pair(arg: &str) -> Result<(Word, Word), Failure> {
    let mut words = input::read_relations(arg)?;
    if words.len() != 2 {
        return Err(Failure::Usage(format!(
            "--relations: expected exactly two relations, found {}",
            words.len()
        )));
    }
    let r2 = words.pop().unwrap();
    let r1 = words.pop().unwrap();
    Ok((r1, r2))
}

fn classgroup(d: &BigInt) -> Result<Report, Failure> {
    let group = ClassGroup::new(d)?;
    let structure = group.structure()?;
    let json = json!({
        "discriminant": big_value(d),
        "class_number": group.order(),
        "structure": structure.elementary_divisors,
        "forms": value(&group.forms()),
    });
    let mut pretty = format!("discriminant {d}\nclass number {}\n", group.order());
    let divisors: Vec<String> =
        structure.elementary_divisors.iter().map(|e| format!("C{e}")).collect();
    let shape = if divisors.is_empty() { "trivial".to_string() } else { divisors.join(" x ") };
    writeln!(pretty, "structure {shape}").unwrap();
    writeln!(pretty, "reduced forms:").unwrap();
    for f in group.forms() {
        writeln!(pretty, "  {f}").unwrap();
    }
    Ok(Report { json, pretty })
}

fn prank(d: &BigInt, p: u64) -> Result<Report, Failure> {
    let rank = quadforms::p_rank(d, p)?;
    Ok(Report {
        json: json!({ "p_rank": rank }),
        pretty: format!("{p}-rank of the class group of discriminant {d}: {rank}\n"),
    })
}

fn decide(input: &TowerInput) -> Result<Report, Failure> {
    let verdict = towerdecide::decide(input)?;
    let mut pretty =
        format!("p = {}, discriminant {}: {}\n", input.p, input.discriminant, verdict.status);
    for (heading, lines) in [
        ("because", &verdict.justification),
        ("assuming", &verdict.assumptions),
        ("notes", &verdict.notes),
    ] {
        if !lines.is_empty() {
            writeln!(pretty, "{heading}:").unwrap();
            for line in lines {
                writeln!(pretty, "  - {line}").unwrap();
            }
        }
    }
    Ok(Report { json: value(&verdict), pretty })
}

fn parse_levels(text: &str) -> Result<BTreeMap<u32, u64>, Failure> {
    let bad = |item: &str| Failure::Usage(format!("--levels: cannot read {item:?}"));
    let mut levels = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, count) = match item.split_once(':') {
            Some((k, c)) => (k.trim(), c.trim().parse::<u64>().map_err(|_| bad(item))?),
            None => (item, 1),
        };
        let k = k.parse::<u32>().map_err(|_| bad(item))?;
        *levels.entry(k).or_insert(0) += count;
    }
    Ok(levels)
}

fn gs_check(d: u64, levels: &str, at: Option<&str>) -> Result<Report, Failure> {
    let z = ZassenhausPolynomial::new(d, parse_levels(levels)?)?;
    let report = gsineq::gs_contradiction(&z);
    let mut json = json!({
        "polynomial": z.to_string(),
        "contradiction": report.has_nonpositive_point,
        "witness": value(&report)["witness"],
        "roots_in_unit_interval": report.roots_in_unit_interval,
    });
    let mut pretty = format!("Z(t) = {z}\n");
    if report.has_nonpositive_point {
        write!(pretty, "Z(t) <= 0 somewhere in (0, 1): no such pro-p group").unwrap();
        match &report.witness {
            Some(w) => writeln!(pretty, " (t = {})", gsineq::format_rational(w)).unwrap(),
            None => pretty.push('\n'),
        }
    } else {
        writeln!(pretty, "Z(t) > 0 on (0, 1): no contradiction").unwrap();
    }
    if let Some(text) = at {
        let t = gsineq::parse_rational(text)?;
        let v = gsineq::evaluate(&z, &t);
        json["at"] =
            json!({ "t": gsineq::format_rational(&t), "value": gsineq::format_rational(&v) });
        writeln!(pretty, "Z({}) = {}", gsineq::format_rational(&t), gsineq::format_rational(&v))
            .unwrap();
    }
    Ok(Report { json, pretty })
}

fn gs_admissible(d: u64, max_level: u32) -> Result<Report, Failure> {
    let adm = gsineq::admissible_types(d, max_level)?;
    let types: Vec<[u32; 2]> = adm.types.iter().map(|&(i, j)| [i, j]).collect();
    let mut pretty = format!("admissible level pairs for d = {d}, levels up to {max_level}:\n");
    for (i, j) in &adm.types {
        writeln!(pretty, "  ({i}, {j})").unwrap();
    }
    if adm.tail_excluded {
        writeln!(pretty, "every pair with a level above {max_level} is excluded").unwrap();
    }
    Ok(Report { json: json!({ "types": types }), pretty })
}

fn filtration(spec: &str) -> Result<Report, Failure> {
    let group = input::load_group(spec)?;
    let factors = groupcore::dimension_factors(&group)?;
    let orders: Vec<usize> = (1..=factors.len() + 1)
        .map(|n| groupcore::dimension_subgroup_lazard(&group, n).order())
        .collect();
    let oracle_agrees = if group.order() <= ORACLE_ORDER_LIMIT {
        let oracle = groupcore::dimension_subgroups_oracle(&group);
        let agrees = oracle.len() == orders.len()
            && oracle
                .iter()
                .enumerate()
                .all(|(i, h)| *h == groupcore::dimension_subgroup_lazard(&group, i + 1));
        if !agrees {
            return Err(
                GroupError::Internal("group-ring and Lazard filtrations disagree".into()).into()
            );
        }
        Some(true)
    } else {
        None
    };
    let json = json!({
        "group": spec,
        "p": group.p(),
        "order": group.order(),
        "subgroup_orders": orders,
        "dimension_factors": factors,
        "oracle_checked": oracle_agrees.is_some(),
    });
    let mut pretty = format!("{spec}: order {}, p = {}\n", group.order(), group.p());
    for (n, order) in orders.iter().enumerate() {
        writeln!(pretty, "  |G_{}| = {order}", n + 1).unwrap();
    }
    writeln!(pretty, "dim G_n/G_(n+1): {factors:?}").unwrap();
    if oracle_agrees.is_some() {
        writeln!(pretty, "checked against the group-ring filtration").unwrap();
    }
    Ok(Report { json, pretty })
}

fn magnus_level(words: &[Word], p: u32, truncation: usize) -> Result<Report, Failure> {
    let levels: Vec<Level> =
        words.iter().map(|w| magnus::level(w, p, truncation)).collect::<Result<_, _>>()?;
    let profile = magnus::level_profile(words, p, truncation)?;
    let violations = magnus::koch_venkov_violations(&profile);
    let entries: Vec<Value> = words
        .iter()
        .zip(&levels)
        .map(|(w, l)| json!({ "word": w.to_string(), "level": value(l) }))
        .collect();
    let json = json!({
        "p": p,
        "truncation": truncation,
        "words": entries,
        "profile": value(&profile),
        "even_level_relations": violations,
    });
    let mut pretty = format!("p = {p}, truncation {truncation}\n");
    for (w, l) in words.iter().zip(&levels) {
        writeln!(pretty, "  {w}: level {l}").unwrap();
    }
    let counts: Vec<String> = profile.counts.iter().map(|(k, r)| format!("r_{k} = {r}")).collect();
    writeln!(pretty, "profile: {}", counts.join(", ")).unwrap();
    if profile.unresolved > 0 {
        writeln!(pretty, "  {} relation(s) beyond the truncation", profile.unresolved).unwrap();
    }
    if profile.approximate {
        writeln!(pretty, "  (approximate)").unwrap();
    }
    if !violations.is_empty() {
        writeln!(pretty, "relations at even levels: {violations:?}").unwrap();
    }
    Ok(Report { json, pretty })
}

fn massey_matrix(r1: &Word, r2: &Word, p: u32) -> Result<Report, Failure> {
    let m = magnus::massey_trace_matrix(r1, r2, p)?;
    let mut json = value(&m);
    json["determinant"] = json!(m.determinant());
    json["invertible"] = json!(m.is_invertible());
    let [[a1, b1], [a2, b2]] = m.matrix;
    let mut pretty = format!("p = {p}\n  [{a1} {b1}]\n  [{a2} {b2}]\n");
    writeln!(
        pretty,
        "determinant {} ({})",
        m.determinant(),
        if m.is_invertible() { "invertible" } else { "singular" }
    )
    .unwrap();
    if let Some([[e11, e21], [e12, e22]]) = m.powers {
        writeln!(pretty, "cube coordinates: [{e11} {e21}] [{e12} {e22}]").unwrap();
    }
    Ok(Report { json, pretty })
}
