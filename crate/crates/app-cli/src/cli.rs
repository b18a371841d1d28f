//! Argument grammar and command dispatch for the qt binary.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use exact_math::{parse_rat, AbelianInvariants, BigInt};
use genus2_family::{certify_torsion, family_igusa, family_j, rational_model_checks, GenusTwoCurve, Verdict};
use newform_check::{
    builtin_records, load_record, load_records, lp_at_one, pqm_criterion, torsion_divisor_bound, twist_checks,
    NewformRecord, TwistStatus,
};
use serde_json::{json, Value};
use weil_engine::{
    enumerate_surfaces, format_label, honda_tate_admissible, parse_label, point_count_is_square, torsion_gcd_scan,
    DEFAULT_NMAX,
};

use crate::report::{emit_report, Format, Report};
use crate::suites::{self, family_report};
use crate::{CliError, LmfdbClient, QueryConfig, Result};

#[derive(Debug, Parser)]
#[command(name = "qt", version, about = "Torsion and quaternionic multiplication checks for abelian surfaces")]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, global = true, default_value_t = OutFormat::Text)]
    pub format: OutFormat,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fixed points of dihedral actions on quaternion orders.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Isogeny classes of abelian surfaces over finite fields.
    #[command(subcommand)]
    Weil(WeilCmd),
    /// Screening of weight-2 newforms.
    #[command(subcommand)]
    Newform(NewformCmd),
    /// The one-parameter family of Igusa invariants.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Explicit genus-2 curves.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Download LMFDB data into the cache and print it normalized.
    #[command(subcommand)]
    Fetch(FetchCmd),
    /// Run a named verification suite.
    Suite {
        /// One of fixed-points, mod4, weil-bounds, newform, family, table2, properties.
        name: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Fixed points of each dihedral action on the order mod each modulus.
    FixedPoints {
        #[arg(long, default_value_t = 6)]
        disc: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 5])]
        modulus: Vec<i64>,
    },
    /// Search for anticommuting pairs mod 4 up to a coefficient height.
    Mod4 {
        #[arg(long, default_value_t = 6)]
        disc: u64,
        #[arg(long, default_value_t = suites::SEARCH_HEIGHT)]
        height: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum WeilCmd {
    /// List the isogeny classes of surfaces over F_q.
    Enum {
        #[arg(long)]
        q: u64,
        /// Keep classes with this divisor of f(1).
        #[arg(long)]
        divides: Option<u64>,
        /// Keep classes that become a square of an elliptic curve class over an extension.
        #[arg(long)]
        geom_square: bool,
    },
    /// Largest ell-power dividing f(1) over all classes.
    Gcd {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        geom_square: bool,
    },
    /// Decode a class label and report its invariants.
    Label { label: String },
}

#[derive(Debug, Subcommand)]
pub enum NewformCmd {
    /// Screen a newform for quaternionic multiplication.
    Check {
        /// A newform label, or a JSON file with one record or a list of records.
        target: String,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// Igusa invariants and model data at one t.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Check every t in a file.
    Check {
        /// One rational t per line.
        #[arg(long)]
        t_list: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CurveCmd {
    /// Certify the torsion of a curve y^2 = f(x) by reductions.
    Certify {
        /// Inline polynomial or JSON {"f": [c0, ..., c6]}.
        #[arg(long)]
        f: String,
        /// Claimed torsion invariants, e.g. "2,2".
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = 200)]
        pmax: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FetchCmd {
    /// Isogeny classes of surfaces over F_q.
    Av {
        #[arg(long)]
        q: u64,
    },
    /// One newform with its Hecke eigenvalues.
    Newform { label: String },
}

/// What a command produced: a report, or raw JSON for fetch commands.
pub enum Output {
    Report(Report),
    Json(Value),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn check_err(e: impl std::fmt::Display) -> CliError {
    CliError::Check(e.to_string())
}

pub fn run(cli: &Cli) -> Result<Output> {
    Ok(Output::Report(match &cli.cmd {
        Command::Verify(VerifyCmd::FixedPoints { disc, modulus }) => suites::fixed_points(*disc, modulus)?,
        Command::Verify(VerifyCmd::Mod4 { disc, height }) => suites::mod4(&[*disc], *height)?,
        Command::Weil(w) => weil(w)?,
        Command::Newform(NewformCmd::Check { target, primes }) => newform_check(target, primes.as_deref())?,
        Command::Family(FamilyCmd::Eval { t }) => family_eval(t)?,
        Command::Family(FamilyCmd::Check { t_list }) => family_check(t_list)?,
        Command::Curve(CurveCmd::Certify { f, claim, pmax }) => certify(f, claim, *pmax)?,
        Command::Fetch(f) => return fetch(f),
        Command::Suite { name } => suites::run_suite(name)?,
    }))
}

fn weil(cmd: &WeilCmd) -> Result<Report> {
    match cmd {
        WeilCmd::Enum { q, divides, geom_square } => {
            let mut r = Report::new("weil enum");
            let classes = enumerate_surfaces(*q).map_err(usage)?;
            let mut rows = Vec::new();
            for c in classes {
                let n = c.weil.point_count();
                if divides.is_some_and(|d| (&n % BigInt::from(d)) != BigInt::from(0)) {
                    continue;
                }
                let split = c.weil.geometric_split_analysis(DEFAULT_NMAX);
                if *geom_square && split.is_none() {
                    continue;
                }
                rows.push(json!({"label": c.label(), "a1": c.weil.a1.to_string(), "a2": c.weil.a2.to_string(),
                                 "f1": n.to_string(), "admissible": c.admissible,
                                 "split_degree": split.map(|(n, _)| n)}));
            }
            r.data("count", rows.len());
            r.data("classes", rows);
            Ok(r)
        }
        WeilCmd::Gcd { q, ell, geom_square } => {
            let mut r = Report::new("weil gcd");
            let s = torsion_gcd_scan(*q, *ell, *geom_square).map_err(usage)?;
            r.data("max_gcd", s.max_gcd.to_string());
            r.data("attaining", s.attaining.iter().map(format_label).collect::<Vec<_>>());
            Ok(r)
        }
        WeilCmd::Label { label } => {
            let mut r = Report::new("weil label");
            let w = parse_label(label).map_err(usage)?;
            r.check("Weil polynomial", w.is_valid(), w.to_string());
            let adm = honda_tate_admissible(&w).map_err(check_err)?;
            r.check("Honda-Tate admissible", adm, "");
            r.data("a1", w.a1.to_string());
            r.data("a2", w.a2.to_string());
            r.data("f1", w.point_count().to_string());
            r.data("f1_is_square_class", point_count_is_square(&w));
            r.data("split", w.geometric_split_analysis(DEFAULT_NMAX).map(|(n, g)| json!({"n": n, "a": g.a.to_string()})));
            Ok(r)
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn resolve_newforms(target: &str) -> Result<Vec<NewformRecord>> {
    let path = Path::new(target);
    if path.exists() {
        let text = read_file(path)?;
        let v: Value = serde_json::from_str(&text).map_err(usage)?;
        return if v.is_array() {
            load_records(&text).map_err(usage)
        } else {
            Ok(vec![load_record(&v).map_err(usage)?])
        };
    }
    if let Some(r) = builtin_records().into_iter().find(|r| r.label == target) {
        return Ok(vec![r]);
    }
    let client = LmfdbClient::new(QueryConfig::from_env())?;
    Ok(vec![client.fetch_newform(target)?])
}

fn newform_check(target: &str, primes: Option<&[u64]>) -> Result<Report> {
    let mut r = Report::new("newform check");
    for rec in resolve_newforms(target)? {
        let tag = &rec.label;
        let good: Vec<u64> = match primes {
            Some(ps) => ps.to_vec(),
            None => rec.ap.keys().copied().filter(|p| rec.level % p != 0).collect(),
        };
        let lp: Vec<Value> = good
            .iter()
            .map(|&p| Ok(json!([p, lp_at_one(&rec, p).map_err(usage)?.to_string()])))
            .collect::<Result<_>>()?;
        let bound = torsion_divisor_bound(&rec, &good).map_err(usage)?;
        let t = twist_checks(&rec);
        let conclusive = t.status == TwistStatus::Conclusive;
        r.check(&format!("{tag}: twist relations conclusive"), conclusive, format!("a_p known up to {}", t.bound));
        let mut entry = json!({"level": rec.level, "m": rec.m, "lp_at_one": lp, "torsion_bound": bound.to_string(),
                               "inner_twists": t.inner_twists, "self_twist": t.self_twist,
                               "self_twist_source": format!("{:?}", t.self_twist_source)});
        if conclusive {
            let v = pqm_criterion(&rec).map_err(check_err)?;
            entry["pqm"] = json!(v.is_pqm);
            entry["quaternion_disc"] = json!(v.quaternion_disc.to_string());
            entry["twist_disc"] = json!(v.twist_disc);
        }
        r.data(tag, entry);
    }
    Ok(r)
}

fn family_eval(t: &str) -> Result<Report> {
    let t = parse_rat(t).map_err(usage)?;
    let mut r = Report::new("family eval");
    let j = family_j(&t).map_err(check_err)?;
    let ig = family_igusa(&t).map_err(check_err)?;
    let m = rational_model_checks(&t).map_err(check_err)?;
    r.check("J8 identity", ig.j8_identity_holds(), "");
    r.check("field of moduli is Q", m.field_of_moduli_ok, "");
    r.check("Mestre conic splits", m.mestre_splits, "");
    r.data("t", t.to_string());
    r.data("j", j.to_string());
    r.data("igusa", [&ig.j2, &ig.j4, &ig.j6, &ig.j8, &ig.j10].map(|x| x.to_string()));
    Ok(r)
}

fn family_check(path: &Path) -> Result<Report> {
    let text = read_file(path)?;
    let ts = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_rat(l).map_err(usage))
        .collect::<Result<Vec<_>>>()?;
    Ok(family_report(&ts))
}

fn parse_curve(f: &str) -> Result<GenusTwoCurve> {
    let f = f.trim();
    if f.starts_with('{') {
        GenusTwoCurve::from_json(f).map_err(usage)
    } else {
        GenusTwoCurve::parse(f).map_err(usage)
    }
}

fn certify(f: &str, claim: &str, pmax: u64) -> Result<Report> {
    let c = parse_curve(f)?;
    let ds = claim
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|e| usage(format!("claim {claim:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let claimed = AbelianInvariants::from_divisors(&ds);
    let rep = certify_torsion(&c, &claimed, pmax).map_err(usage)?;
    let mut r = Report::new("curve certify");
    r.check("claimed order divides #J(F_p)", rep.failures.is_empty(), format!("failures {:?}", rep.failures));
    r.check(
        "2-torsion compatible with the factorization of f",
        rep.claimed_two_torsion <= rep.two_torsion_lower,
        format!("claimed {} visible {}", rep.claimed_two_torsion, rep.two_torsion_lower),
    );
    r.check("verdict CONSISTENT", rep.verdict == Verdict::Consistent, format!("gcd {}", rep.gcd));
    r.data("claim", claimed.to_string());
    r.data("primes", rep.orders.len());
    r.data("gcd", rep.gcd.to_string());
    r.data("factor_degrees", &rep.factor_degrees);
    r.data("orders", &rep.orders);
    Ok(r)
}

fn fetch(cmd: &FetchCmd) -> Result<Output> {
    let client = LmfdbClient::new(QueryConfig::from_env())?;
    Ok(Output::Json(match cmd {
        FetchCmd::Av { q } => serde_json::to_value(client.fetch_av_classes(*q)?).expect("serializable"),
        FetchCmd::Newform { label } => client.fetch_newform(label)?.to_json(),
    }))
}

/// Run and print; the process exit code.
pub fn main_with(cli: &Cli) -> i32 {
    let format = match cli.format {
        OutFormat::Json => Format::Json,
        OutFormat::Text => Format::Text,
    };
    match run(cli) {
        Ok(Output::Report(r)) => {
            print!("{}", emit_report(&r, format));
            i32::from(!r.passed())
        }
        Ok(Output::Json(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            0
        }
        Err(e) => {
            eprintln!("qt: {e}");
            e.exit_code()
        }
    }
}
