//! Command-line front end: object resolution, command dispatch and reports.

pub mod report;
pub mod spec;

use clap::{Parser, Subcommand, ValueEnum};
use nil2::amalgam::{check_strong, check_weak_with, embeddability_filter_generator, Embedding, QMode};
use nil2::bases::{is_special_base, is_strong_base};
use nil2::catalog::{catalog, default_params, Claim, Params, NAMES};
use nil2::coproduct::{oracle_dominion, oracle_strong, oracle_weak};
use nil2::dominion::dominion;
use nil2::roots::{can_adjoin_root, can_adjoin_two_roots, RootVerdict};
use nil2::{Amalgam, Error, Group, Subgroup, Variety};
use report::{CrossCheck, Report};
use spec::{eval_word, SpecError, SpecObjects};
use std::path::PathBuf;
use std::time::Instant;

/// Spec files compiled into the binary; user files take precedence on name clashes.
const BUILTIN_SPECS: &[&str] = &[include_str!("../specs/guidingex.spec")];

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "nil2", version, about = "Amalgams, dominions and bases in varieties of class-two nilpotent groups")]
pub struct Cli {
    /// Group and amalgam specification file (repeatable).
    #[arg(long, global = true)]
    pub spec: Vec<PathBuf>,
    /// Load a catalog entry: its group as `G`, overgroup as `K` with subgroup
    /// `G`, and its amalgam under the entry name.
    #[arg(long, global = true)]
    pub catalog: Option<String>,
    /// Catalog parameters as `p=2,a=1,b=1,n=0`; omitted keys take the entry defaults.
    #[arg(long, global = true)]
    pub params: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest group any enumeration may build.
    #[arg(long, global = true, env = "NIL2_MAX_ELEMENTS")]
    pub max_elements: Option<u64>,
    /// Also run the independent oracle and exit with status 4 on disagreement.
    #[arg(long, global = true)]
    pub cross_check: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Weak,
    Strong,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Strong embeddability of an amalgam.
    CheckStrong {
        amalgam: String,
        #[arg(long)]
        variety: String,
    },
    /// Weak embeddability of an amalgam.
    CheckWeak {
        amalgam: String,
        #[arg(long)]
        variety: String,
        /// Quantify the divisor condition over prime powers only.
        #[arg(long)]
        prime_powers: bool,
    },
    /// Dominion of a subgroup.
    Dominion {
        #[arg(long)]
        group: String,
        /// A named subgroup, or generator words separated by commas.
        #[arg(long)]
        sub: String,
        #[arg(long)]
        variety: String,
    },
    /// Whether an element can acquire a q-th root modulo commutators in an overgroup.
    AdjoinRoot {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        variety: String,
    },
    /// The same for two elements at once.
    AdjoinRoots2 {
        #[arg(long)]
        group: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        variety: String,
    },
    /// Whether a group is a strong amalgamation base.
    BaseStrong {
        #[arg(long)]
        group: String,
        #[arg(long)]
        variety: String,
    },
    /// Whether a group is a special amalgamation base.
    BaseSpecial {
        #[arg(long)]
        group: String,
        #[arg(long)]
        variety: String,
    },
    /// The least variety in which the amalgam embeds; it then embeds in every larger one.
    FilterGenerator {
        amalgam: String,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Weak embeddability read off the amalgamated coproduct.
    OracleWeak {
        amalgam: String,
        #[arg(long)]
        variety: String,
    },
    /// Strong embeddability read off the amalgamated coproduct.
    OracleStrong {
        amalgam: String,
        #[arg(long)]
        variety: String,
    },
    /// Dominion read off the amalgamated coproduct of two copies of the group.
    OracleDominion {
        #[arg(long)]
        group: String,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        variety: String,
    },
    /// Evaluate every claim of a catalog entry, or list the entries.
    Catalog { name: Option<String> },
    /// List the loaded groups and amalgams.
    Objects,
}

/// Failures before or during a run, each with its exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Budget(m) => write!(f, "budget exceeded: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

/// Everything a command can refer to by name.
#[derive(Default)]
pub struct Objects {
    pub spec: SpecObjects,
    pub subgroups: Vec<(String, Subgroup)>,
}

impl Objects {
    pub fn load(cli: &Cli) -> Result<Objects, CliError> {
        let mut spec = SpecObjects::default();
        for path in &cli.spec {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            spec::parse_into(&text, &mut spec).map_err(|e: SpecError| usage(format!("{}: {e}", path.display())))?;
        }
        for text in BUILTIN_SPECS {
            let builtin = spec::parse(text).expect("shipped specs parse");
            for (k, g) in builtin.groups {
                spec.groups.entry(k).or_insert(g);
            }
            for (k, a) in builtin.amalgams {
                spec.amalgams.entry(k).or_insert(a);
            }
        }
        let mut objs = Objects { spec, subgroups: Vec::new() };
        if let Some(name) = &cli.catalog {
            let entry = catalog(name, parse_params(name, cli.params.as_deref())?)?;
            if let Some(g) = entry.group {
                objs.spec.groups.insert("G".into(), g);
            }
            if let Some((k, h)) = entry.overgroup {
                objs.spec.groups.insert("K".into(), k);
                objs.subgroups.push(("G".into(), h));
            }
            if let Some(am) = entry.amalgam {
                objs.spec.amalgams.insert(name.clone(), am);
            }
        }
        Ok(objs)
    }

    fn group(&self, name: &str) -> Result<&Group, CliError> {
        self.spec.groups.get(name).ok_or_else(|| usage(format!("unknown group `{name}`")))
    }

    fn amalgam(&self, name: &str) -> Result<&Amalgam, CliError> {
        self.spec.amalgams.get(name).ok_or_else(|| usage(format!("unknown amalgam `{name}`")))
    }

    /// A named subgroup of `g`, or the subgroup generated by comma-separated words.
    fn subgroup(&self, g: &Group, text: &str) -> Result<Subgroup, CliError> {
        if let Some((_, h)) = self.subgroups.iter().find(|(n, h)| n == text && h.group().same(g)) {
            return Ok(h.clone());
        }
        let gens = text
            .split(',')
            .map(|w| eval_word(g, w).map_err(|m| usage(format!("subgroup `{text}`: {m}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subgroup::generate(g, &gens)?)
    }
}

/// `key=value` pairs over the entry defaults at the chosen prime (2 unless given).
pub fn parse_params(name: &str, text: Option<&str>) -> Result<Params, CliError> {
    let pairs: Vec<(&str, &str)> = match text {
        None => Vec::new(),
        Some(t) => t
            .split(',')
            .map(|kv| kv.trim().split_once('=').ok_or_else(|| usage(format!("bad parameter `{kv}`, expected key=value"))))
            .collect::<Result<_, _>>()?,
    };
    let num = |v: &str| v.trim().parse::<u64>().map_err(|_| usage(format!("bad parameter value `{v}`")));
    let mut p = 2;
    for (k, v) in &pairs {
        if k.trim() == "p" {
            p = num(v)?;
        }
    }
    let mut params = default_params(name, p).unwrap_or(Params { p, ..Params::default() });
    for (k, v) in pairs {
        match k.trim() {
            "p" => {}
            "a" => params.a = u32::try_from(num(v)?).map_err(|_| usage("a is too large"))?,
            "b" => params.b = u32::try_from(num(v)?).map_err(|_| usage("b is too large"))?,
            "n" => params.n = num(v)?,
            other => return Err(usage(format!("unknown parameter `{other}`"))),
        }
    }
    Ok(params)
}

/// `m,n` or `(m,n)`.
pub fn parse_variety(text: &str) -> Result<Variety, CliError> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    let (m, n) = t.split_once(',').ok_or_else(|| usage(format!("variety `{text}` should be m,n")))?;
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| usage(format!("variety `{text}` should be m,n")));
    Ok(Variety::new(num(m)?, num(n)?)?)
}

fn describe(h: &Subgroup) -> String {
    let g = h.group();
    let elems: Vec<String> = h.elements().iter().map(|&x| g.format(x)).collect();
    elems.join(", ")
}

fn generators(h: &Subgroup) -> String {
    let g = h.group();
    let gens: Vec<String> = h.generators().iter().map(|&x| g.format(x)).collect();
    if gens.is_empty() {
        "e".into()
    } else {
        gens.join(", ")
    }
}

fn cross(oracle: &str, agrees: bool, detail: impl Into<String>) -> Option<CrossCheck> {
    Some(CrossCheck { oracle: oracle.into(), agrees, detail: detail.into() })
}

fn root_report(r: &mut Report, v: RootVerdict) {
    r.verdict = Some(v.verdict.value);
    r.witness = v.verdict.witness.as_ref().map(Into::into);
    if v.verdict.value {
        r.detail("exact roots", v.exact_roots.to_string());
    }
}

fn subgroup_report(r: &mut Report, h: &Subgroup, d: &Subgroup) {
    r.detail("subgroup", format!("order {}, generated by {}", h.order(), generators(h)));
    r.detail("dominion order", d.order().to_string());
    r.detail("dominion generators", generators(d));
    r.detail("dominion elements", describe(d));
    r.detail("closed", (d == h).to_string());
}

/// Runs one command and returns its report.
pub fn run(cli: &Cli, objs: &Objects, argv: Vec<String>) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut r = Report::new(argv);
    let variety = |text: &str, r: &mut Report| -> Result<Variety, CliError> {
        let v = parse_variety(text)?;
        r.variety = Some(v.to_string());
        Ok(v)
    };
    match &cli.command {
        Command::CheckStrong { amalgam, variety: vt } => {
            let v = variety(vt, &mut r)?;
            let am = objs.amalgam(amalgam)?;
            let verdict = check_strong(am, &v)?;
            r.verdict = Some(verdict.value);
            r.witness = verdict.witness.as_ref().map(Into::into);
            if cli.cross_check {
                let o = oracle_strong(am, &v)?;
                r.cross_check = cross("amalgamated coproduct", o == verdict.value, format!("oracle says {o}"));
            }
        }
        Command::CheckWeak { amalgam, variety: vt, prime_powers } => {
            let v = variety(vt, &mut r)?;
            let am = objs.amalgam(amalgam)?;
            let mode = if *prime_powers { QMode::PrimePowers } else { QMode::AllDivisors };
            let verdict = check_weak_with(am, &v, mode)?;
            r.verdict = Some(verdict.value);
            r.witness = verdict.witness.as_ref().map(Into::into);
            if cli.cross_check {
                let o = oracle_weak(am, &v)?;
                r.cross_check = cross("amalgamated coproduct", o == verdict.value, format!("oracle says {o}"));
            }
        }
        Command::OracleStrong { amalgam, variety: vt } | Command::OracleWeak { amalgam, variety: vt } => {
            let v = variety(vt, &mut r)?;
            let am = objs.amalgam(amalgam)?;
            let strong = matches!(cli.command, Command::OracleStrong { .. });
            let o = if strong { oracle_strong(am, &v)? } else { oracle_weak(am, &v)? };
            r.verdict = Some(o);
            if cli.cross_check {
                let c = if strong { check_strong(am, &v)? } else { check_weak_with(am, &v, QMode::AllDivisors)? };
                r.cross_check = cross("criterion", c.value == o, format!("criterion says {}", c.value));
            }
        }
        Command::Dominion { group, sub, variety: vt } | Command::OracleDominion { group, sub, variety: vt } => {
            let v = variety(vt, &mut r)?;
            let g = objs.group(group)?;
            let h = objs.subgroup(g, sub)?;
            let use_oracle = matches!(cli.command, Command::OracleDominion { .. });
            let d = if use_oracle { oracle_dominion(&h, &v)? } else { dominion(&h, &v)? };
            subgroup_report(&mut r, &h, &d);
            if cli.cross_check {
                let (name, other) =
                    if use_oracle { ("formula", dominion(&h, &v)?) } else { ("amalgamated coproduct", oracle_dominion(&h, &v)?) };
                r.cross_check = cross(name, other == d, format!("{name} gives order {}", other.order()));
            }
        }
        Command::AdjoinRoot { group, element, q, variety: vt } => {
            let v = variety(vt, &mut r)?;
            let g = objs.group(group)?;
            let x = eval_word(g, element).map_err(usage)?;
            root_report(&mut r, can_adjoin_root(g, x, *q, &v)?);
        }
        Command::AdjoinRoots2 { group, x, y, q, variety: vt } => {
            let v = variety(vt, &mut r)?;
            let g = objs.group(group)?;
            let (xe, ye) = (eval_word(g, x).map_err(usage)?, eval_word(g, y).map_err(usage)?);
            root_report(&mut r, can_adjoin_two_roots(g, xe, ye, *q, &v)?);
        }
        Command::BaseStrong { group, variety: vt } | Command::BaseSpecial { group, variety: vt } => {
            let v = variety(vt, &mut r)?;
            let g = objs.group(group)?;
            let verdict =
                if matches!(cli.command, Command::BaseStrong { .. }) { is_strong_base(g, &v)? } else { is_special_base(g, &v)? };
            r.verdict = Some(verdict.value);
            r.witness = verdict.witness.as_ref().map(Into::into);
        }
        Command::FilterGenerator { amalgam, kind } => {
            let am = objs.amalgam(amalgam)?;
            let kind = match kind {
                Kind::Weak => Embedding::Weak,
                Kind::Strong => Embedding::Strong,
            };
            match embeddability_filter_generator(am, kind)? {
                Some(v) => r.detail("generator", v.to_string()),
                None => r.detail("generator", "none: no variety containing the amalgam embeds it"),
            }
        }
        Command::Catalog { name: None } => {
            for name in NAMES {
                let primes: Vec<String> =
                    [2u64, 3].iter().filter(|&&p| default_params(name, p).is_ok()).map(|p| format!("p={p}")).collect();
                r.detail(name, format!("defaults at {}", primes.join(", ")));
            }
        }
        Command::Catalog { name: Some(name) } => {
            let params = parse_params(name, cli.params.as_deref())?;
            let entry = catalog(name, params)?;
            r.detail("parameters", params.to_string());
            let mut all = true;
            let mut disagreements = 0;
            let mut oracle_runs = 0;
            let mut over_budget = 0;
            for c in &entry.claims {
                let ok = entry.check(c)?;
                all &= ok;
                let text = match (c, &entry.overgroup) {
                    (Claim::DominionGrows(v, x), Some((k, h))) => format!(
                        "dominion of the subgroup generated by {} in {v} contains {}",
                        generators(h),
                        k.format(*x)
                    ),
                    _ => c.to_string(),
                };
                r.detail("claim", format!("{text}: {}", if ok { "holds" } else { "FAILS" }));
                if cli.cross_check {
                    let oracle = match c {
                        Claim::WeakEmbedding(v, e) => Some(oracle_weak(entry.amalgam.as_ref().unwrap(), v).map(|o| o == *e)),
                        Claim::StrongEmbedding(v, e) => {
                            Some(oracle_strong(entry.amalgam.as_ref().unwrap(), v).map(|o| o == *e))
                        }
                        Claim::DominionGrows(v, x) => {
                            let (_, h) = entry.overgroup.as_ref().unwrap();
                            Some(oracle_dominion(h, v).map(|d| d.contains(*x) && !h.contains(*x)))
                        }
                        _ => None,
                    };
                    match oracle {
                        Some(Ok(o)) => {
                            oracle_runs += 1;
                            disagreements += (o != ok) as usize;
                        }
                        Some(Err(Error::Budget { .. })) => over_budget += 1,
                        Some(Err(e)) => return Err(e.into()),
                        None => {}
                    }
                }
            }
            r.verdict = Some(all);
            if cli.cross_check {
                r.cross_check = cross(
                    "amalgamated coproduct",
                    disagreements == 0,
                    format!("{oracle_runs} claims re-derived, {over_budget} over budget, {disagreements} disagreements"),
                );
            }
        }
        Command::Objects => {
            for (name, g) in &objs.spec.groups {
                r.detail("group", format!("{name} of order {}", g.order()));
            }
            for (name, am) in &objs.spec.amalgams {
                r.detail(
                    "amalgam",
                    format!("{name}: |A| = {}, |B| = {}, |D| = {}", am.a().order(), am.b().order(), am.d().order()),
                );
            }
        }
    }
    if cli.cross_check && r.cross_check.is_none() {
        r.detail("cross-check", "no independent oracle for this command");
    }
    r.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(r)
}

/// The exit status for a finished report.
pub fn exit_code(r: &Report) -> i32 {
    if r.cross_check.as_ref().is_some_and(|c| !c.agrees) {
        EXIT_DISAGREE
    } else if r.verdict == Some(false) {
        EXIT_FALSE
    } else {
        EXIT_TRUE
    }
}
