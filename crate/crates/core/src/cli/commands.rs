use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::report::Report;
use super::selfcheck::{corpus_suite, random_suite, SuiteReport};
use super::{parse_description, parse_model, write_description, ModelFileError};
use crate::algebra::{Bicomplex, ModelSpec, TotDifferential};
use crate::corpus::{corpus_get, corpus_list, corpus_run, CorpusError};
use crate::exactalg::Scalar;
use crate::hodge::{cohomology, cohomology_by_rank, HodgeError};
use crate::solvmodel::{
    betti_numbers, build_full, dolbeault_dims, euler_checks, manifold_bicomplex, pipeline_cos, pipeline_sps,
    resolve_characters, SolvError,
};
use crate::specseq::{
    check_page_invariants, frolicher_check, pages_direct_with, pages_iterative, PageStack, SpecSeqError,
};

#[derive(Parser, Debug)]
#[command(name = "frolicher", version, about = "Exact Dolbeault, de Rham and Frölicher computations on finite models")]
pub struct Cli {
    /// Model file.
    #[arg(long, global = true, conflicts_with = "corpus")]
    pub model: Option<PathBuf>,
    /// Use a bundled corpus model instead of a file.
    #[arg(long, global = true)]
    pub corpus: Option<String>,
    /// key=value records instead of tables.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Include representatives.
    #[arg(long, global = true)]
    pub reps: bool,
    /// Last page to compute.
    #[arg(long, global = true)]
    pub rmax: Option<usize>,
    /// Seed for selfcheck.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random bicomplexes in selfcheck.
    #[arg(long, global = true, default_value_t = 100)]
    pub count: usize,
    /// Evaluate page cells concurrently.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Parse, build and check a model.
    Validate,
    /// de Rham cohomology of Tot of the model bicomplex.
    Cohomology,
    /// Dolbeault cohomology h^{p,q}.
    Dolbeault,
    /// Frölicher pages and d_r ranks.
    Pages,
    /// Degeneracy step with the d_r evidence.
    Rstep,
    /// Degeneracy pipeline for complex parallelizable models.
    PipelineCos,
    /// Degeneracy pipeline for semi-direct product models.
    PipelineSps,
    /// Euler characteristic and duality verdicts.
    Euler,
    /// Bundled models.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Invariant suite on seeded random instances and the corpus.
    Selfcheck,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum CorpusCommand {
    List,
    /// Recompute an entry (or `all`) and diff against the expected numbers.
    Run {
        name: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Parse(#[from] ModelFileError),
    #[error(transparent)]
    Solv(#[from] SolvError),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Solv(_) => "model",
            CliError::SpecSeq(_) | CliError::Hodge(_) => "internal",
            CliError::Corpus(_) => "corpus",
        }
    }
}

pub struct Options {
    pub reps: bool,
    pub rmax: Option<usize>,
    pub seed: u64,
    pub count: usize,
    pub parallel: bool,
}

/// Where a model comes from; the text is kept for the round-trip check.
pub struct Source {
    pub label: String,
    pub text: String,
}

impl Source {
    pub fn load(path: Option<&PathBuf>, corpus: Option<&str>) -> Result<Source, CliError> {
        match (path, corpus) {
            (Some(p), _) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Io { path: p.display().to_string(), message: e.to_string() })?;
                Ok(Source { label: p.display().to_string(), text })
            }
            (None, Some(name)) => {
                let entry = corpus_get(name)?;
                Ok(Source { label: format!("corpus:{}", entry.name), text: entry.text.to_string() })
            }
            (None, None) => Err(CliError::Usage("this command needs --model <path> or --corpus <name>".into())),
        }
    }
}

fn vector_label(b: &Bicomplex, k: usize, v: &[Scalar]) -> String {
    let mut terms = Vec::new();
    for (p, off, n) in b.tot_layout(k) {
        let labels = b.labels(p, k - p);
        for i in 0..n {
            let c = &v[off + i];
            if !c.is_zero() {
                terms.push(if c.is_one() { labels[i].clone() } else { format!("({c})*{}", labels[i]) });
            }
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn cell_vector_label(b: &Bicomplex, p: usize, q: usize, v: &[Scalar]) -> String {
    let labels = b.labels(p, q);
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| if c.is_one() { labels[i].clone() } else { format!("({c})*{}", labels[i]) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn model_header(r: &mut Report, source: &Source, model: &ModelSpec) {
    r.field("source", &source.label);
    r.field("model", &model.name);
}

fn validate(source: &Source, model: &ModelSpec) -> Result<Report, CliError> {
    let mut r = Report::new("validate");
    model_header(&mut r, source, model);
    let declared = model.declared().count();
    r.field("generators", declared);
    r.field("conjugates", model.n_generators() - declared);
    r.field("base_characters", model.n_chars());
    let (pmax, qmax) = model.shape();
    r.field("grid", format!("{pmax}x{qmax}"));
    r.field("complex_parallelizable", model.flags.complex_parallelizable);
    r.field("assumption12", model.flags.assumption12);
    let round = parse_description(&source.text)
        .ok()
        .map(|d| write_description(&d))
        .and_then(|t| parse_model(&t).ok())
        .is_some_and(|m| &m == model);
    r.verdict("roundtrip", round, "parse, write and parse give the same model");
    let full = build_full(model).and_then(|b| b.verify_axioms().map(|_| b).map_err(SolvError::from));
    r.verdict("d_squared_zero", full.is_ok(), full.as_ref().err().map_or(String::new(), |e| e.to_string()));
    if model.n_chars() > 0 {
        match resolve_characters(model) {
            Ok(res) => {
                let names = model.names();
                for g in &res.generators {
                    let gen = &model.generators[g.generator].name;
                    r.field(format!("beta.{gen}"), g.beta.display(&names.characters));
                    r.field(format!("gamma.{gen}"), g.gamma.display(&names.characters));
                }
                r.verdict("characters_resolved", true, "");
            }
            Err(e) => r.verdict("characters_resolved", false, e.to_string()),
        }
    }
    match manifold_bicomplex(model) {
        Ok((c, b)) => {
            r.field("construction", c.as_str());
            r.grid("dim B", &b.cells().map(|(p, q)| ((p, q), b.dim(p, q))).collect());
            r.verdict("model_bicomplex", b.verify_axioms().is_ok(), "");
        }
        Err(e) => r.verdict("model_bicomplex", false, e.to_string()),
    }
    Ok(r)
}

fn with_bicomplex(name: &str, source: &Source, model: &ModelSpec) -> Result<(Report, Bicomplex), CliError> {
    let mut r = Report::new(name);
    model_header(&mut r, source, model);
    let (c, b) = manifold_bicomplex(model)?;
    r.field("construction", c.as_str());
    Ok((r, b))
}

fn run_cohomology(source: &Source, model: &ModelSpec, o: &Options) -> Result<Report, CliError> {
    let (mut r, b) = with_bicomplex("cohomology", source, model)?;
    let tot = b.tot(TotDifferential::Full);
    let h = cohomology(&tot)?;
    r.degrees("dim Tot", &(0..=tot.top()).map(|k| tot.dim(k)).collect::<Vec<_>>());
    r.degrees("betti", &h.dims);
    r.field("harmonic_representatives", yes(h.harmonic));
    if let Some(pd) = h.pd_of_cohomology {
        r.verdict("cohomology_pd", pd, "H^k × H^{n-k} → H^n nondegenerate");
    }
    if o.reps {
        for (k, reps) in h.representatives.iter().enumerate() {
            for (i, v) in reps.iter().enumerate() {
                r.field(format!("rep.{k}.{i}"), vector_label(&b, k, v));
            }
        }
    }
    Ok(r)
}

fn run_dolbeault(source: &Source, model: &ModelSpec, o: &Options) -> Result<Report, CliError> {
    let (mut r, b) = with_bicomplex("dolbeault", source, model)?;
    let h = dolbeault_dims(&b);
    r.grid("h^{p,q}", &h);
    let stack = pages_direct_with(&b, Some(1), o.parallel)?;
    r.verdict("e1_matches", stack.page(1).dims() == h, "column cohomology equals E_1");
    if o.reps {
        let (pmax, _) = b.shape();
        for p in 0..=pmax {
            for (q, cls) in cohomology_by_rank(&b.column(p)).iter().enumerate() {
                for (i, v) in cls.representatives().iter().enumerate() {
                    r.field(format!("rep.{p}.{q}.{i}"), cell_vector_label(&b, p, q, v));
                }
            }
        }
    }
    Ok(r)
}

fn page_tables(r: &mut Report, stack: &PageStack) {
    for page in &stack.pages {
        r.grid(format!("E{}", page.r), &page.dims());
        let ranks: BTreeMap<(usize, usize), usize> =
            page.dr.keys().map(|&(p, q)| ((p, q), page.dr_rank(p, q))).collect();
        r.grid(format!("rank d{}", page.r), &ranks);
    }
}

fn agree(a: &PageStack, b: &PageStack) -> bool {
    let n = a.pages.len().min(b.pages.len());
    (0..n).all(|r| a.pages[r].dims() == b.pages[r].dims())
}

fn run_pages(source: &Source, model: &ModelSpec, o: &Options) -> Result<Report, CliError> {
    let (mut r, b) = with_bicomplex("pages", source, model)?;
    let direct = pages_direct_with(&b, o.rmax, o.parallel)?;
    let iterative = pages_iterative(&b)?;
    page_tables(&mut r, &direct);
    r.verdict("algorithms_agree", agree(&direct, &iterative), "direct and zig-zag pages");
    r.verdict("page_invariants", check_page_invariants(&direct).is_ok(), "d_r∘d_r = 0 and E_{r+1} = H(E_r)");
    if o.rmax.is_none() {
        r.field("r", direct.degeneracy_step);
        let v = frolicher_check(&direct, &betti_numbers(&b));
        r.verdict("frolicher_identity", v.ok, "sum dim E_inf^{p,q} = b_k");
    }
    Ok(r)
}

fn run_rstep(source: &Source, model: &ModelSpec, o: &Options) -> Result<Report, CliError> {
    let (mut r, b) = with_bicomplex("rstep", source, model)?;
    let direct = pages_direct_with(&b, None, o.parallel)?;
    let iterative = pages_iterative(&b)?;
    r.field("r", direct.degeneracy_step);
    let evidence: Vec<(String, Vec<String>)> = direct
        .pages
        .iter()
        .filter(|p| p.r >= 1)
        .map(|p| (format!("d{}", p.r), vec![p.total_dr_rank().to_string(), yes(p.dr_is_zero()).to_string()]))
        .collect();
    r.table("evidence", vec!["rank".into(), "zero".into()], evidence);
    r.verdict(
        "algorithms_agree",
        direct.degeneracy_step == iterative.degeneracy_step && agree(&direct, &iterative),
        "direct and zig-zag pages",
    );
    Ok(r)
}

fn run_pipeline_cos(source: &Source, model: &ModelSpec, o: &Options) -> Result<Report, CliError> {
    let mut r = Report::new("pipeline-cos");
    model_header(&mut r, source, model);
    let rep = pipeline_cos(model, o.parallel)?;
    let names = model.names();
    r.field("r", rep.r);
    let rows = rep
        .blocks
        .iter()
        .map(|b| {
            let fmt = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            (
                b.anti_char.display(&names.characters).to_string(),
                vec![fmt(&b.del_cohomology), fmt(&b.delbar_cohomology), yes(b.kunneth_ok).into(), yes(b.e2_ok).into()],
            )
        })
        .collect();
    r.table("blocks", vec!["H_del".into(), "H_delbar".into(), "kunneth".into(), "e2".into()], rows);
    r.grid("E2 expected", &rep.e2_expected);
    r.grid("E2", &rep.stack.page(2).dims());
    r.verdict("r_at_most_2", rep.r_ok, format!("r = {}", rep.r));
    r.verdict("splitting", rep.splitting_ok, "B is the sum of the block tensor products");
    r.verdict("e2_formula", rep.e2_formula_ok, "E2 equals the block formula cell by cell");
    r.verdict("blocks", rep.blocks.iter().all(|b| b.kunneth_ok && b.e2_ok), "Künneth and E2 per block");
    Ok(r)
}

fn run_pipeline_sps(source: &Source, model: &ModelSpec, o: &Options) -> Result<Report, CliError> {
    let mut r = Report::new("pipeline-sps");
    model_header(&mut r, source, model);
    let rep = pipeline_sps(model, o.parallel)?;
    let s = &rep.split;
    r.field("r_nil", rep.r_nil);
    r.field("r_g", rep.r_g);
    r.grid("dim C", &s.c.cells().map(|(p, q)| ((p, q), s.c.dim(p, q))).collect());
    r.grid("dim D", &s.d.cells().map(|(p, q)| ((p, q), s.d.dim(p, q))).collect());
    r.grid("E2(B)", &s.stack_b.page(2).dims());
    let names = model.names();
    let rows = s
        .koszul
        .iter()
        .map(|k| {
            let h = k
                .cohomology
                .as_ref()
                .map_or("-".to_string(), |h| h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            (
                k.weight.display(&names.characters).to_string(),
                vec![k.prefactor.display(&names.characters).to_string(), h],
            )
        })
        .collect();
    r.table("koszul", vec!["prefactor".into(), "cohomology".into()], rows);
    r.verdict("bound", rep.bound_ok, format!("r_g = {} <= max(2, r_nil = {})", rep.r_g, rep.r_nil));
    r.verdict("dims_add_up", s.dims_add_up, "dim B = dim C + dim D");
    r.verdict("c_untwisted", s.c_untwisted, "");
    r.verdict("e2_d_zero", s.e2_d_zero, "E2(D) = 0");
    r.verdict("e2_b_equals_c", s.e2_b_equals_c, "E2(B) = E2(C)");
    r.verdict("koszul_exact", s.koszul.iter().all(|k| k.exact), "twisted blocks");
    r.verdict("page_injective", !rep.injective.is_empty() && rep.injective.iter().all(|&x| x), "E_r(C) → E_r(ambient)");
    r.verdict("c_pd_type", rep.c_pd_type, "");
    Ok(r)
}

fn run_euler(source: &Source, model: &ModelSpec) -> Result<Report, CliError> {
    let (mut r, b) = with_bicomplex("euler", source, model)?;
    let h = dolbeault_dims(&b);
    let betti = betti_numbers(&b);
    let n = b.shape().0;
    let e = euler_checks(&h, &betti, n);
    r.grid("h^{p,q}", &h);
    r.degrees("betti", &betti);
    r.field("chi", e.chi);
    r.field("column_sums", e.column_sums.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    r.verdict("chi_zero", e.chi_zero, "");
    r.verdict("columns_zero", e.columns_zero, "sum_q (-1)^q h^{p,q} = 0");
    r.verdict("poincare", e.poincare, "b_k = b_{2n-k}");
    r.verdict("serre", e.serre, "h^{p,q} = h^{n-p,n-q}");
    Ok(r)
}

fn run_corpus(cmd: &CorpusCommand, o: &Options) -> Result<Report, CliError> {
    match cmd {
        CorpusCommand::List => {
            let mut r = Report::new("corpus list");
            let rows = corpus_list()
                .into_iter()
                .map(|n| {
                    let e = corpus_get(n).expect("corpus entries parse");
                    let m = e.model();
                    (n.to_string(), vec![m.declared().count().to_string(), e.expected.len().to_string()])
                })
                .collect();
            r.table("entries", vec!["generators".into(), "expected".into()], rows);
            Ok(r)
        }
        CorpusCommand::Run { name } => {
            let names = if name == "all" { corpus_list() } else { vec![corpus_get(name)?.name] };
            let mut r = Report::new(format!("corpus run {name}"));
            for n in names {
                let run = corpus_run(n, o.parallel)?;
                let rows = run
                    .rows
                    .iter()
                    .map(|d| {
                        (
                            d.expected.quantity.to_string(),
                            vec![
                                d.expected.value.to_string(),
                                d.computed.to_string(),
                                if d.ok { "ok".into() } else { "DIFF".into() },
                                d.expected.origin.kind().into(),
                                d.expected.origin.note().into(),
                            ],
                        )
                    })
                    .collect();
                r.table(
                    n,
                    vec!["expected".into(), "computed".into(), "status".into(), "origin".into(), "note".into()],
                    rows,
                );
                let diffs = run.diffs().count();
                r.field(format!("{n}.diffs"), diffs);
                r.verdict(n, diffs == 0, format!("{diffs} diffs"));
            }
            Ok(r)
        }
    }
}

fn suite_rows(r: &mut Report, prefix: &str, s: &SuiteReport) {
    let rows =
        s.tallies.iter().map(|t| (t.name.to_string(), vec![t.passed.to_string(), t.total.to_string()])).collect();
    r.table(prefix, vec!["passed".into(), "total".into()], rows);
    for t in &s.tallies {
        r.verdict(format!("{prefix}.{}", t.name), t.ok(), t.first_failure.clone().unwrap_or_default());
    }
}

fn run_selfcheck(o: &Options) -> Report {
    let mut r = Report::new("selfcheck");
    r.field("seed", o.seed);
    r.field("count", o.count);
    suite_rows(&mut r, "random", &random_suite(o.seed, o.count, o.parallel));
    suite_rows(&mut r, "corpus", &corpus_suite(o.parallel));
    r
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let o = Options { reps: cli.reps, rmax: cli.rmax, seed: cli.seed, count: cli.count, parallel: cli.parallel };
    match &cli.command {
        Command::Corpus(c) => return run_corpus(c, &o),
        Command::Selfcheck => return Ok(run_selfcheck(&o)),
        _ => {}
    }
    let source = Source::load(cli.model.as_ref(), cli.corpus.as_deref())?;
    let model = parse_model(&source.text)?;
    match &cli.command {
        Command::Validate => validate(&source, &model),
        Command::Cohomology => run_cohomology(&source, &model, &o),
        Command::Dolbeault => run_dolbeault(&source, &model, &o),
        Command::Pages => run_pages(&source, &model, &o),
        Command::Rstep => run_rstep(&source, &model, &o),
        Command::PipelineCos => run_pipeline_cos(&source, &model, &o),
        Command::PipelineSps => run_pipeline_sps(&source, &model, &o),
        Command::Euler => run_euler(&source, &model),
        Command::Corpus(_) | Command::Selfcheck => unreachable!("handled above"),
    }
}

/// Full front end: arguments in, rendered output and exit code out.
/// Exit codes: 0 every verdict passed, 1 some verdict failed, 2 usage,
/// parse or model error.
pub fn main_with_args<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let code = if report.passed() { 0 } else { 1 };
            (report.render(cli.machine), code)
        }
        Err(e) => {
            let text = if cli.machine {
                format!("error.kind={}\nerror.message={}\nstatus=error\n", e.kind(), e.to_string().replace('\n', " "))
            } else {
                format!("error ({}): {e}\n", e.kind())
            };
            (text, 2)
        }
    }
}
