//! The `connecta` command line: reads JSON files, runs one analysis and
//! prints a text or JSON report.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 parse
//! error, 3 validation error, 4 size guard.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use connecta::format::{document_to_json, read_document, Document, PosetFile, TopologyFile};
use connecta::sheaf::{is_sheaf, Site};
use connecta::sieve::{covering_sieves, verify_topology_axioms, DEFAULT_SIEVE_CAP};
use connecta::translate::{
    distinguishing_invariant, morita_equivalent, sobrification, sobrification_map, MoritaObject,
};
use connecta::{
    down_set_space, down_set_topology, irreducible_open_poset, irreducible_poset,
    ConnectivitySpace, Error, FiniteTopology, Poset,
};

pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_MAX_POINTS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "connecta",
    version,
    about = "Finite connectivity spaces, topologies and posets up to Morita equivalence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarise a space, topology or poset file.
    Analyze {
        file: PathBuf,
        /// Also write the Hasse diagram of the canonical poset.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Translate between spaces, topologies and posets.
    Convert {
        #[command(flatten)]
        translation: Translation,
        input: PathBuf,
        output: PathBuf,
    },
    /// Decide whether two files have equivalent sheaf topoi.
    Morita {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check the sheaf condition for a presheaf on a space.
    SheafCheck {
        space: PathBuf,
        presheaf: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check the Grothendieck topology axioms on every sieve of a space.
    Axioms {
        space: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Write the sober topology with the same sheaf topos.
    Sobrify { topology: PathBuf, output: PathBuf },
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long)]
    pub json: bool,
    /// Largest ground set for which sieves are enumerated.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_POINTS)]
    pub max_points: usize,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("translation").required(true).args(["g", "z", "h", "e"])))]
pub struct Translation {
    /// Space to its poset of irreducible connected sets.
    #[arg(long)]
    pub g: bool,
    /// Poset to the space of its down-sets.
    #[arg(long)]
    pub z: bool,
    /// Topology to its poset of irreducible opens.
    #[arg(long)]
    pub h: bool,
    /// Poset to the topology of its down-sets.
    #[arg(long)]
    pub e: bool,
}

/// What a command prints and the status it exits with.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::TooLarge { .. } => 4,
        _ => 3,
    }
}

pub fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Analyze { file, dot, output } => analyze(&file, dot.as_deref(), &output),
        Command::Convert {
            translation,
            input,
            output,
        } => convert(&translation, &input, &output),
        Command::Morita { left, right, json } => morita(&left, &right, json),
        Command::SheafCheck {
            space,
            presheaf,
            json,
        } => sheaf_check(&space, &presheaf, json),
        Command::Axioms { space, output } => axioms(&space, &output),
        Command::Sobrify { topology, output } => sobrify(&topology, &output),
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    read_document(path).map_err(|e| Failure {
        code: exit_code(&e),
        message: format!("{}: {e}", path.display()),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure {
        code: 2,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn mismatch(expected: &str, found: &Document) -> Failure {
    Error::KindMismatch {
        expected: expected.into(),
        found: found.kind().into(),
    }
    .into()
}

fn morita_object(doc: Document) -> Result<MoritaObject, Failure> {
    match doc {
        Document::Space(s) => Ok(MoritaObject::Space(s)),
        Document::Topology(t) => Ok(MoritaObject::Topology(t)),
        Document::Poset(p) => Ok(MoritaObject::Poset(p)),
        other => Err(mismatch("connectivity-space, topology or poset", &other)),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    connecta::format::to_json_string(value)
}

fn ok(stdout: String) -> Result<Outcome, Failure> {
    Ok(Outcome { stdout, code: 0 })
}

#[derive(Debug, Serialize)]
pub struct SieveCount {
    pub object: String,
    pub covering: usize,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub format: u32,
    pub kind: String,
    pub points: Vec<String>,
    /// Connected sets of a space, open sets of a topology, empty for a poset.
    pub family: Vec<String>,
    /// Irreducible connected sets or irreducible opens.
    pub irreducibles: Vec<String>,
    /// Covering sieves on each connected set; absent when not enumerated.
    pub covering_sieves: Option<Vec<SieveCount>>,
    pub canonical_poset: PosetFile,
    pub degenerate: bool,
    pub integral: Option<bool>,
    pub sober: Option<bool>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let family = match self.kind.as_str() {
            "connectivity-space" => "connected sets",
            "topology" => "open sets",
            _ => "",
        };
        writeln!(out, "{}: {}", self.kind, count(self.points.len(), "point")).unwrap();
        if !self.points.is_empty() {
            writeln!(out, "  {}", self.points.join(" ")).unwrap();
        }
        if !family.is_empty() {
            writeln!(out, "{family}: {}", self.family.len()).unwrap();
            for s in &self.family {
                writeln!(out, "  {s}").unwrap();
            }
            writeln!(out, "irreducibles: {}", self.irreducibles.len()).unwrap();
            for s in &self.irreducibles {
                writeln!(out, "  {s}").unwrap();
            }
        }
        if let Some(counts) = &self.covering_sieves {
            writeln!(out, "covering sieves:").unwrap();
            for c in counts {
                writeln!(out, "  {}: {}", c.object, c.covering).unwrap();
            }
        }
        if let Some(i) = self.integral {
            writeln!(out, "integral: {}", yes_no(i)).unwrap();
        }
        if let Some(s) = self.sober {
            writeln!(out, "sober: {}", yes_no(s)).unwrap();
        }
        let p = &self.canonical_poset;
        if self.degenerate {
            writeln!(out, "canonical poset: empty (degenerate topos; 1 sheaf)").unwrap();
        } else {
            writeln!(
                out,
                "canonical poset: {}",
                count(p.elements.len(), "element")
            )
            .unwrap();
            for e in &p.elements {
                writeln!(out, "  {e}").unwrap();
            }
            for (a, b) in &p.leq {
                writeln!(out, "  {a} < {b}").unwrap();
            }
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }
}

fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Only cover relations, in the order the poset lists them.
fn hasse(p: &Poset) -> PosetFile {
    PosetFile {
        elements: p.labels().to_vec(),
        leq: p
            .covers()
            .into_iter()
            .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
            .collect(),
    }
}

fn empty_label(s: String) -> String {
    if s.is_empty() {
        "{}".into()
    } else {
        s
    }
}

pub fn analysis(doc: &Document, max_points: usize) -> Result<(AnalysisReport, Poset), Error> {
    let mut warnings = Vec::new();
    let (kind, points, family, irreducibles, covering, integral, sober, canonical) = match doc {
        Document::Space(s) => {
            let covering = space_sieve_counts(s, max_points, &mut warnings)?;
            (
                "connectivity-space",
                s.ground().names().to_vec(),
                rendered(s.connecteds().iter().map(|a| s.render(a))),
                rendered(s.irreducibles().iter().map(|a| s.render(a))),
                covering,
                Some(s.is_integral()),
                None,
                irreducible_poset(s),
            )
        }
        Document::Topology(t) => (
            "topology",
            t.ground().names().to_vec(),
            rendered(t.opens().iter().map(|u| t.render(u))),
            rendered(t.irreducible_opens().iter().map(|u| t.render(u))),
            None,
            None,
            Some(t.is_sober()),
            irreducible_open_poset(t),
        ),
        Document::Poset(p) => (
            "poset",
            p.labels().to_vec(),
            Vec::new(),
            Vec::new(),
            None,
            None,
            None,
            p.clone(),
        ),
        Document::Presheaf(_) => {
            return Err(Error::KindMismatch {
                expected: "connectivity-space, topology or poset".into(),
                found: doc.kind().into(),
            })
        }
    };
    let report = AnalysisReport {
        format: FORMAT_VERSION,
        kind: kind.into(),
        points,
        family,
        irreducibles,
        covering_sieves: covering,
        canonical_poset: hasse(&canonical),
        degenerate: canonical.is_empty(),
        integral,
        sober,
        warnings,
    };
    Ok((report, canonical))
}

fn rendered(items: impl Iterator<Item = String>) -> Vec<String> {
    items.map(empty_label).collect()
}

fn space_sieve_counts(
    s: &ConnectivitySpace,
    max_points: usize,
    warnings: &mut Vec<String>,
) -> Result<Option<Vec<SieveCount>>, Error> {
    if s.ground().len() > max_points {
        warnings.push(format!(
            "covering sieves not enumerated: {} points exceeds --max-points {max_points}",
            s.ground().len()
        ));
        return Ok(None);
    }
    let mut counts = Vec::new();
    for a in s.connecteds().iter() {
        match covering_sieves(s, a) {
            Ok(sieves) => counts.push(SieveCount {
                object: empty_label(s.render(a)),
                covering: sieves.len(),
            }),
            Err(e @ Error::TooLarge { .. }) => {
                warnings.push(format!("covering sieves not enumerated: {e}"));
                return Ok(None);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Some(counts))
}

fn analyze(file: &Path, dot: Option<&Path>, output: &Output) -> Result<Outcome, Failure> {
    let doc = load(file)?;
    let (report, canonical) = analysis(&doc, output.max_points)?;
    if let Some(path) = dot {
        write_file(path, &canonical.to_dot("canonical"))?;
    }
    ok(if output.json {
        json(&report)
    } else {
        report.text()
    })
}

fn convert(t: &Translation, input: &Path, output: &Path) -> Result<Outcome, Failure> {
    let doc = load(input)?;
    let converted = match (t.g, t.z, t.h, t.e, doc) {
        (true, _, _, _, Document::Space(s)) => Document::Poset(irreducible_poset(&s)),
        (true, _, _, _, d) => return Err(mismatch("connectivity-space", &d)),
        (_, true, _, _, Document::Poset(p)) => Document::Space(down_set_space(&p)),
        (_, _, true, _, Document::Topology(t)) => Document::Poset(irreducible_open_poset(&t)),
        (_, _, true, _, d) => return Err(mismatch("topology", &d)),
        (_, _, _, true, Document::Poset(p)) => Document::Topology(down_set_topology(&p)?),
        (_, _, _, _, d) => return Err(mismatch("poset", &d)),
    };
    write_file(output, &document_to_json(&converted))?;
    ok(format!(
        "wrote {} to {}\n",
        converted.kind(),
        output.display()
    ))
}

#[derive(Serialize)]
struct MoritaReport {
    format: u32,
    verdict: &'static str,
    left: String,
    right: String,
    bijection: Option<Vec<(String, String)>>,
    invariant: Option<String>,
}

fn morita(left: &Path, right: &Path, as_json: bool) -> Result<Outcome, Failure> {
    let a = morita_object(load(left)?)?;
    let b = morita_object(load(right)?)?;
    let mut report = MoritaReport {
        format: FORMAT_VERSION,
        verdict: "EQUIVALENT",
        left: a.kind().into(),
        right: b.kind().into(),
        bijection: None,
        invariant: None,
    };
    match morita_equivalent(&a, &b) {
        Some(w) => report.bijection = Some(w.pairs),
        None => {
            report.verdict = "NOT-EQUIVALENT";
            report.invariant = Some(distinguishing_invariant(
                &a.canonical_poset(),
                &b.canonical_poset(),
            ));
        }
    }
    let code = if report.bijection.is_some() { 0 } else { 1 };
    let stdout = if as_json {
        json(&report)
    } else {
        let mut out = format!("{}\n", report.verdict);
        for (x, y) in report.bijection.iter().flatten() {
            writeln!(out, "  {x} <-> {y}").unwrap();
        }
        if let Some(i) = &report.invariant {
            writeln!(out, "  {i}").unwrap();
        }
        out
    };
    Ok(Outcome { stdout, code })
}

#[derive(Serialize)]
struct SheafReport {
    format: u32,
    verdict: &'static str,
    sieves_checked: usize,
    witness: Option<String>,
    detail: Option<String>,
}

fn sheaf_check(space: &Path, presheaf: &Path, as_json: bool) -> Result<Outcome, Failure> {
    let space = match load(space)? {
        Document::Space(s) => s,
        d => return Err(mismatch("connectivity-space", &d)),
    };
    let f = match load(presheaf)? {
        Document::Presheaf(f) => f,
        d => return Err(mismatch("presheaf", &d)),
    };
    if *f.site() != Site::of_space(&space)? {
        return Err(Failure {
            code: 3,
            message: format!(
                "{}: presheaf is not defined over this space",
                presheaf.display()
            ),
        });
    }
    let check = is_sheaf(&f)?;
    let report = SheafReport {
        format: FORMAT_VERSION,
        verdict: if check.is_sheaf() {
            "SHEAF"
        } else {
            "NOT-SHEAF"
        },
        sieves_checked: check.sieves_checked,
        witness: check.failure.as_ref().map(|x| x.witness.clone()),
        detail: check.failure.as_ref().map(|x| x.describe()),
    };
    let stdout = if as_json {
        json(&report)
    } else {
        let mut out = format!("{}\n", report.verdict);
        match (&report.witness, &report.detail) {
            (Some(w), Some(d)) => {
                writeln!(out, "witness: {w}").unwrap();
                writeln!(out, "detail: {d}").unwrap();
            }
            _ => writeln!(out, "sieves checked: {}", report.sieves_checked).unwrap(),
        }
        out
    };
    Ok(Outcome {
        stdout,
        code: if check.is_sheaf() { 0 } else { 1 },
    })
}

#[derive(Serialize)]
struct AxiomsReport {
    format: u32,
    verdict: &'static str,
    targets_checked: usize,
    sieves_checked: usize,
    axiom: Option<u8>,
    sieve: Option<String>,
    detail: Option<String>,
}

fn axioms(space: &Path, output: &Output) -> Result<Outcome, Failure> {
    let s = match load(space)? {
        Document::Space(s) => s,
        d => return Err(mismatch("connectivity-space", &d)),
    };
    if s.ground().len() > output.max_points {
        return Err(Error::TooLarge {
            what: "ground set (--max-points)".into(),
            size: s.ground().len(),
            limit: output.max_points,
        }
        .into());
    }
    let r = verify_topology_axioms(&s, DEFAULT_SIEVE_CAP)?;
    let report = AxiomsReport {
        format: FORMAT_VERSION,
        verdict: if r.passed() { "PASS" } else { "FAIL" },
        targets_checked: r.targets_checked,
        sieves_checked: r.sieves_checked,
        axiom: r.failure.as_ref().map(|f| f.axiom),
        sieve: r.failure.as_ref().map(|f| f.sieve.describe(&s)),
        detail: r.failure.as_ref().map(|f| f.detail.clone()),
    };
    let stdout = if output.json {
        json(&report)
    } else {
        let mut out = format!(
            "{}\n{} connected sets, {} sieves checked\n",
            report.verdict, report.targets_checked, report.sieves_checked
        );
        if let (Some(a), Some(sv), Some(d)) = (report.axiom, &report.sieve, &report.detail) {
            writeln!(out, "axiom {a} fails on {sv}: {d}").unwrap();
        }
        out
    };
    Ok(Outcome {
        stdout,
        code: if r.passed() { 0 } else { 1 },
    })
}

fn sobrify(topology: &Path, output: &Path) -> Result<Outcome, Failure> {
    let t: FiniteTopology = match load(topology)? {
        Document::Topology(t) => t,
        d => return Err(mismatch("topology", &d)),
    };
    let sober = sobrification(&t)?;
    write_file(output, &json(&TopologyFile::of(&sober)))?;
    let map = sobrification_map(&t);
    let mut out = format!("wrote topology to {}\n", output.display());
    for (x, y) in map.to_label_pairs(t.ground(), sober.ground()) {
        writeln!(out, "  {x} -> {y}").unwrap();
    }
    ok(out)
}
