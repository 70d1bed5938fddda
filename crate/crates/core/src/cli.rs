//! The `lagplabic` command line. Every payload is JSON, read from a file, from
//! an inline argument, or from stdin. Exit codes: 0 success, 1 a verification
//! failed, 2 bad input.

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::affine::{affine_bruhat_leq, enumerate_bd, enumerate_bdc, BoundedAffinePermutation, DecoratedPermutation};
use crate::coxeter::{enumerate_q, enumerate_qc, Permutation};
use crate::error::{invalid, Error, Result};
use crate::linalg::{
    is_lagrangian_matrix, isotropy_defect, lagrangian_relations_check, minors_pluecker, random_full_rank_matrix,
    random_lagrangian_matrix, reflect_set, LagrangianMode, Matrix,
};
use crate::measurement::{
    boundary_measurement, canonical_weighting, random_positive_weighting, random_symmetric_weighting,
    weighting_from_json, PlueckerVector, Weighting,
};
use crate::plabic::{bridge_graph, BridgeGroup, GraphDocument, PlabicGraph};
use crate::poly::Poly;
use crate::positroid::{
    enumerate_le, enumerate_necklaces, is_type_c_necklace, is_type_c_positroid, necklace_from_bounded_affine,
    positroid_from_necklace, GrassmannNecklace, LeDiagram, LeKind, Positroid,
};
use crate::symmetric::{symmetric_bridge_graph, SymmetricPlabicGraph};

#[derive(Parser, Debug)]
#[command(name = "lagplabic", version, about = "Positroid and Lagrangian positroid cell toolkit")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Io {
    /// JSON payload: a file path, inline JSON, or `-` for stdin (the default).
    input: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert between the objects indexing a cell.
    Convert {
        #[arg(long)]
        from: Kind,
        #[arg(long)]
        to: Kind,
        #[command(flatten)]
        io: Io,
    },
    /// List every object of a kind with its count.
    Enumerate {
        kind: EnumKind,
        #[arg(long)]
        n: usize,
        /// Required for the type A kinds.
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Boundary measurement of a graph.
    Measure {
        #[command(flatten)]
        io: Io,
        /// Weighting JSON (file or inline). Without it every edge weighs 1.
        #[arg(long, conflicts_with = "canonical")]
        weights: Option<String>,
        /// One variable per bridge group of a bridge graph. Implies --symbolic.
        #[arg(long)]
        canonical: bool,
        /// Allow variables in the weights.
        #[arg(long)]
        symbolic: bool,
    },
    /// Check a property and report the first witness against it.
    Verify {
        what: Check,
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = Mode::Cutout)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Half the number of columns, for `cutout-random`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Graphviz text for a graph.
    Emit {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Cover relations of Bd(k, n) or of Bd^C(2n).
    Poset {
        kind: PosetKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Pair,
    BoundedAffine,
    Decorated,
    Necklace,
    Positroid,
    /// Type A Le-diagram; as input either type is accepted.
    LeDiagram,
    /// Type B Le-diagram (type C cells only).
    LeDiagramB,
    PlabicGraph,
    /// Symmetric bridge graph (type C cells only).
    SymmetricGraph,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EnumKind {
    /// Canonical pairs of Q(k, n).
    Q,
    /// Canonical pairs of Q^C(2n).
    Qc,
    Bd,
    /// Bd^C(2n).
    Bdc,
    Necklace,
    /// Type A Le-diagrams.
    Le,
    /// Type B Le-diagrams of rank n.
    LeB,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PosetKind {
    Bd,
    Bdc,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Check {
    LagrangianMatrix,
    LagrangianPluecker,
    Reduced,
    Symmetric,
    #[value(name = "necklace-typeC")]
    NecklaceTypeC,
    #[value(name = "positroid-typeC")]
    PositroidTypeC,
    /// Random full-rank matrices: isotropy agrees with the Pluecker relations.
    CutoutRandom,
    /// Random positive weights: coordinates are nonnegative and the support is the positroid.
    Positivity,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Cutout,
    Lemma,
}

impl From<Mode> for LagrangianMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Cutout => LagrangianMode::Cutout,
            Mode::Lemma => LagrangianMode::Lemma,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Dot,
}

enum Outcome {
    Done(String),
    Failed(String),
}

/// Parses the process arguments, runs, and exits with the documented code.
pub fn run() -> std::process::ExitCode {
    let stdin = std::io::stdin();
    let code = run_with(std::env::args_os(), &mut stdin.lock(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::ExitCode::from(code)
}

/// [`run`] with explicit streams; returns the exit code.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let _ = write!(stderr, "{}", e.render());
            return 2;
        }
    };
    let output = match &cli.command {
        Command::Convert { io, .. } | Command::Measure { io, .. } | Command::Verify { io, .. } | Command::Emit { io, .. } => {
            io.output.clone()
        }
        Command::Enumerate { output, .. } | Command::Poset { output, .. } => output.clone(),
    };
    let (text, code) = match execute(&cli.command, stdin) {
        Ok(Outcome::Done(t)) => (t, 0),
        Ok(Outcome::Failed(t)) => (t, 1),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text + "\n") {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = writeln!(stdout, "{text}");
        }
    }
    code
}

fn execute(cmd: &Command, stdin: &mut dyn Read) -> Result<Outcome> {
    match cmd {
        Command::Convert { from, to, io } => {
            let v = read_payload(io.input.as_deref(), stdin)?;
            let f = to_bounded_affine(*from, &v)?;
            Ok(Outcome::Done(pretty(&from_bounded_affine(*to, &f)?)))
        }
        Command::Enumerate { kind, n, k, output: _ } => Ok(Outcome::Done(pretty(&enumerate(*kind, *n, *k)?))),
        Command::Measure { io, weights, canonical, symbolic } => {
            let v = read_payload(io.input.as_deref(), stdin)?;
            let weights = weights.as_deref().map(|w| read_payload(Some(w), &mut std::io::empty())).transpose()?;
            Ok(Outcome::Done(pretty(&measure(&v, weights.as_ref(), *canonical, *symbolic)?)))
        }
        Command::Verify { what, io, mode, seed, samples, n } => {
            let v = match what {
                Check::CutoutRandom => Value::Null,
                _ => read_payload(io.input.as_deref(), stdin)?,
            };
            let report = verify(*what, &v, (*mode).into(), *seed, *samples, *n)?;
            let text = pretty(&report);
            Ok(if report["pass"] == json!(true) { Outcome::Done(text) } else { Outcome::Failed(text) })
        }
        Command::Emit { io, format: Format::Dot } => {
            let v = read_payload(io.input.as_deref(), stdin)?;
            let doc = parse_doc(&v)?;
            let g = doc.graph()?;
            Ok(Outcome::Done(match doc.symmetry() {
                Some(m) => SymmetricPlabicGraph::new(g, m.clone())?.to_dot(),
                None => g.to_dot(None),
            }))
        }
        Command::Poset { kind, n, k, output: _ } => Ok(Outcome::Done(pretty(&poset(*kind, *n, *k)?))),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

/// Inline JSON, a path, or stdin when absent or `-`.
fn read_payload(arg: Option<&str>, stdin: &mut dyn Read) -> Result<Value> {
    let text = match arg {
        None | Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::Invalid(format!("reading stdin: {e}")))?;
            s
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => s.to_string(),
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("reading {path}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("not a {what}: {e}")))
}

fn parse_doc(v: &Value) -> Result<GraphDocument> {
    from_value(v, "graph document")
}

// ---------------------------------------------------------------------------
// convert

fn to_bounded_affine(kind: Kind, v: &Value) -> Result<BoundedAffinePermutation> {
    match kind {
        Kind::Pair => {
            let u: Permutation = from_value(&v["u"], "permutation u")?;
            let w: Permutation = from_value(&v["w"], "permutation w")?;
            let k = v["k"].as_u64().ok_or_else(|| Error::Invalid("a pair needs an integer k".into()))?;
            BoundedAffinePermutation::from_pair(&u, &w, k as usize)
        }
        Kind::BoundedAffine => from_value(v, "bounded affine permutation"),
        Kind::Decorated => {
            let d: DecoratedPermutation = from_value(v, "decorated permutation")?;
            let d = DecoratedPermutation::new(d.perm, d.white, d.black)?;
            BoundedAffinePermutation::from_decorated(&d)
        }
        Kind::Necklace => {
            let nk: GrassmannNecklace = from_value(v, "Grassmann necklace")?;
            BoundedAffinePermutation::from_decorated(&nk.to_decorated())
        }
        Kind::Positroid => BoundedAffinePermutation::from_decorated(&parse_positroid(v)?.necklace().to_decorated()),
        Kind::LeDiagram | Kind::LeDiagramB => {
            let d = LeDiagram::from_json(v)?;
            if kind == Kind::LeDiagramB && !matches!(d.kind, LeKind::B { .. }) {
                return invalid("expected a type B Le-diagram");
            }
            d.to_bounded_affine()
        }
        Kind::PlabicGraph => parse_doc(v)?.graph()?.bounded_affine(),
        Kind::SymmetricGraph => symmetric_from_doc(&parse_doc(v)?)?.bounded_affine(),
    }
}

fn from_bounded_affine(kind: Kind, f: &BoundedAffinePermutation) -> Result<Value> {
    let needs_c = || -> Result<()> {
        if f.is_type_c() {
            Ok(())
        } else {
            Err(Error::NotTypeC(format!("{f} is not a type C bounded affine permutation")))
        }
    };
    Ok(match kind {
        Kind::Pair => {
            let (u, w) = f.to_pair();
            json!({"u": u, "w": w, "k": f.k()})
        }
        Kind::BoundedAffine => to_value(f),
        Kind::Decorated => to_value(&f.to_decorated()),
        Kind::Necklace => to_value(&necklace_from_bounded_affine(f)),
        Kind::Positroid => positroid_json(&positroid_from_necklace(&necklace_from_bounded_affine(f))),
        Kind::LeDiagram => LeDiagram::from_bounded_affine(LeKind::A { k: f.k(), n: f.n() }, f)?.to_json(),
        Kind::LeDiagramB => {
            needs_c()?;
            LeDiagram::from_bounded_affine(LeKind::B { n: f.n() / 2 }, f)?.to_json()
        }
        Kind::PlabicGraph => {
            let (u, w) = f.to_pair();
            let (g, groups) = bridge_graph(&u, &w, f.k(), None)?;
            to_value(&GraphDocument::new(&g, None, Some(&groups)))
        }
        Kind::SymmetricGraph => {
            needs_c()?;
            let (s, groups) = symmetric_bridge_graph(f)?;
            to_value(&GraphDocument::new(s.graph(), Some(s.mirror()), Some(&groups)))
        }
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types always serialize")
}

fn positroid_json(m: &Positroid) -> Value {
    json!({"k": m.k(), "n": m.n(), "bases": m.bases()})
}

fn parse_positroid(v: &Value) -> Result<Positroid> {
    let k = v["k"].as_u64().ok_or_else(|| Error::Invalid("a positroid needs k".into()))?;
    let n = v["n"].as_u64().ok_or_else(|| Error::Invalid("a positroid needs n".into()))?;
    let bases: BTreeSet<Vec<usize>> = from_value(&v["bases"], "list of bases")?;
    let bases = bases
        .into_iter()
        .map(|mut b| {
            b.sort_unstable();
            b
        })
        .collect();
    Positroid::new(k as usize, n as usize, bases)
}

fn symmetric_from_doc(doc: &GraphDocument) -> Result<SymmetricPlabicGraph> {
    let g = doc.graph()?;
    match doc.symmetry() {
        Some(m) => SymmetricPlabicGraph::new(g, m.clone()),
        None => SymmetricPlabicGraph::from_graph(g),
    }
}

// ---------------------------------------------------------------------------
// enumerate and poset

fn need_k(k: Option<usize>, n: usize) -> Result<usize> {
    match k {
        Some(k) if k <= n => Ok(k),
        Some(k) => invalid(format!("k = {k} exceeds n = {n}")),
        None => invalid("this kind needs --k"),
    }
}

fn enumerate(kind: EnumKind, n: usize, k: Option<usize>) -> Result<Value> {
    let items: Vec<Value> = match kind {
        EnumKind::Q => {
            let k = need_k(k, n)?;
            enumerate_q(k, n).into_iter().map(|(u, w)| json!({"u": u, "w": w, "k": k})).collect()
        }
        EnumKind::Qc => enumerate_qc(n).into_iter().map(|(u, w)| json!({"u": u.embed(), "w": w.embed()})).collect(),
        EnumKind::Bd => enumerate_bd(need_k(k, n)?, n).iter().map(|f| json!(f)).collect(),
        EnumKind::Bdc => enumerate_bdc(n).iter().map(|f| json!(f)).collect(),
        EnumKind::Necklace => enumerate_necklaces(need_k(k, n)?, n).iter().map(|nk| json!(nk)).collect(),
        EnumKind::Le => enumerate_le(LeKind::A { k: need_k(k, n)?, n }).iter().map(LeDiagram::to_json).collect(),
        EnumKind::LeB => enumerate_le(LeKind::B { n }).iter().map(LeDiagram::to_json).collect(),
    };
    Ok(json!({"count": items.len(), "items": items}))
}

fn poset(kind: PosetKind, n: usize, k: Option<usize>) -> Result<Value> {
    let (elements, lengths): (Vec<BoundedAffinePermutation>, Vec<usize>) = match kind {
        PosetKind::Bd => {
            let els = enumerate_bd(need_k(k, n)?, n);
            let ls = els.iter().map(|f| f.length_a()).collect();
            (els, ls)
        }
        PosetKind::Bdc => {
            let els = enumerate_bdc(n);
            let ls = els.iter().map(|f| f.length_c()).collect::<Result<_>>()?;
            (els, ls)
        }
    };
    // graded poset: covers are the relations between adjacent ranks
    let mut covers = Vec::new();
    for (i, g) in elements.iter().enumerate() {
        for (j, f) in elements.iter().enumerate() {
            if lengths[j] == lengths[i] + 1 && affine_bruhat_leq(g, f)? {
                covers.push((i, j));
            }
        }
    }
    let items: Vec<Value> = elements
        .iter()
        .zip(&lengths)
        .enumerate()
        .map(|(i, (f, l))| json!({"id": i, "window": f.window(), "length": l}))
        .collect();
    Ok(json!({"elements": items, "covers": covers}))
}

// ---------------------------------------------------------------------------
// measure

fn measure(v: &Value, weights: Option<&Value>, canonical: bool, symbolic: bool) -> Result<Value> {
    let doc = parse_doc(v)?;
    let g = doc.graph()?;
    if doc.symmetry().is_some() {
        symmetric_from_doc(&doc)?;
    }
    let w: Weighting<Poly> = if canonical {
        let groups: Vec<BridgeGroup> =
            doc.bridges().ok_or_else(|| Error::Invalid("--canonical needs a graph with bridge groups".into()))?;
        canonical_weighting(&g, &groups)
    } else if let Some(wv) = weights {
        let w = weighting_from_json(wv)?;
        if !symbolic && w.values().any(|p| p.as_constant().is_none()) {
            return invalid("the weighting has variables; pass --symbolic");
        }
        w
    } else {
        g.edges().keys().map(|&e| (e, Poly::int(1))).collect()
    };
    Ok(boundary_measurement(&g, &w)?.to_json())
}

// ---------------------------------------------------------------------------
// verify

fn report(what: &str, pass: bool, witness: Option<String>, extra: Value) -> Value {
    let mut r = json!({"check": what, "pass": pass, "witness": witness});
    if let (Some(obj), Value::Object(more)) = (r.as_object_mut(), extra) {
        obj.extend(more);
    }
    r
}

fn verify(what: Check, v: &Value, mode: LagrangianMode, seed: u64, samples: usize, n: Option<usize>) -> Result<Value> {
    match what {
        Check::LagrangianMatrix => {
            let m = Matrix::<Poly>::from_json(v)?;
            if 2 * m.nrows() != m.ncols() {
                return invalid(format!("expected an n x 2n matrix, got {} x {}", m.nrows(), m.ncols()));
            }
            let defect = isotropy_defect(&m)?;
            let relations = lagrangian_relations_check(&minors_pluecker(&m)?, mode)?;
            let witness = match (&relations, &defect) {
                (Some(w), _) => Some(w.to_string()),
                (None, Some((i, j, x))) => Some(format!("rows {i} and {j} pair to {x}")),
                (None, None) => None,
            };
            Ok(report(
                "lagrangian-matrix",
                witness.is_none(),
                witness,
                json!({"isotropic": defect.is_none(), "relations": relations.is_none()}),
            ))
        }
        Check::LagrangianPluecker => {
            let p = PlueckerVector::<Poly>::from_json(v)?;
            if p.n != 2 * p.k {
                return invalid(format!("expected a point of Gr(n, 2n), got Gr({}, {})", p.k, p.n));
            }
            let w = lagrangian_relations_check(&p, mode)?;
            Ok(report("lagrangian-pluecker", w.is_none(), w.map(|w| w.to_string()), json!({})))
        }
        Check::Reduced => {
            let g = parse_doc(v)?.graph()?;
            let w = g.reducedness_witness()?;
            Ok(report("reduced", w.is_none(), w, json!({})))
        }
        Check::Symmetric => {
            let doc = parse_doc(v)?;
            doc.graph()?;
            Ok(match symmetric_from_doc(&doc) {
                Err(e) => report("symmetric", false, Some(e.to_string()), json!({})),
                Ok(s) => {
                    let f = s.bounded_affine()?;
                    let witness = (!f.is_type_c()).then(|| format!("trip permutation {f} is not type C"));
                    report("symmetric", witness.is_none(), witness, json!({"bounded_affine": f}))
                }
            })
        }
        Check::NecklaceTypeC => {
            let nk: GrassmannNecklace = from_value(v, "Grassmann necklace")?;
            let pass = is_type_c_necklace(&nk)?;
            let witness = (!pass).then(|| necklace_type_c_witness(&nk));
            Ok(report("necklace-typeC", pass, witness, json!({})))
        }
        Check::PositroidTypeC => {
            let m = parse_positroid(v)?;
            let pass = is_type_c_positroid(&m)?;
            let witness = m.bases().iter().find_map(|b| {
                let r: Vec<usize> = reflect_set(&b.iter().copied().collect(), m.n()).into_iter().collect();
                (!m.bases().contains(&r)).then(|| format!("{b:?} is a basis but {r:?} is not"))
            });
            Ok(report("positroid-typeC", pass, if pass { None } else { witness }, json!({})))
        }
        Check::CutoutRandom => {
            let n = n.ok_or_else(|| Error::Invalid("cutout-random needs --n".into()))?;
            if n == 0 {
                return invalid("--n must be positive");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut lagrangian, mut witness) = (0, None);
            for i in 0..samples {
                let sparse = i % 4 >= 2;
                let m = if i % 2 == 0 {
                    random_lagrangian_matrix(n, sparse, &mut rng)
                } else {
                    random_full_rank_matrix(n, 2 * n, sparse, &mut rng)
                };
                let iso = is_lagrangian_matrix(&m)?;
                let rel = lagrangian_relations_check(&minors_pluecker(&m)?, mode)?.is_none();
                lagrangian += usize::from(iso);
                if iso != rel && witness.is_none() {
                    witness = Some(format!("sample {i}: isotropic = {iso}, relations = {rel}, matrix {}", m.to_json()));
                }
            }
            Ok(report(
                "cutout-random",
                witness.is_none(),
                witness,
                json!({"samples": samples, "seed": seed, "lagrangian": lagrangian}),
            ))
        }
        Check::Positivity => positivity(v, mode, seed, samples),
    }
}

fn necklace_type_c_witness(nk: &GrassmannNecklace) -> String {
    let two_n = nk.n();
    for i in 1..=two_n {
        let j = (two_n + 1 - i) % two_n + 1;
        let r = reflect_set(nk.get(j), two_n);
        if nk.get(i) != &r {
            return format!("I_{i} = {:?} but R(I_{j}) = {:?}", nk.get(i), r);
        }
    }
    "n is odd".into()
}

fn positivity(v: &Value, mode: LagrangianMode, seed: u64, samples: usize) -> Result<Value> {
    let doc = parse_doc(v)?;
    let sym = match doc.symmetry() {
        Some(_) => Some(symmetric_from_doc(&doc)?),
        None => None,
    };
    let g: PlabicGraph = doc.graph()?;
    if !g.is_reduced()? {
        return invalid("positivity is checked on reduced graphs only");
    }
    let f = g.bounded_affine()?;
    let want = positroid_from_necklace(&necklace_from_bounded_affine(&f));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness = None;
    for i in 0..samples {
        let w = match &sym {
            Some(s) => random_symmetric_weighting(s, &mut rng),
            None => random_positive_weighting(&g, &mut rng),
        };
        let p = boundary_measurement(&g, &w)?;
        let problem = if p.coords.values().any(|x| *x < crate::poly::rat(0)) {
            Some("a negative coordinate".to_string())
        } else if &p.support() != want.bases() {
            Some("support differs from the positroid of the necklace".to_string())
        } else if sym.is_some() {
            lagrangian_relations_check(&p, mode)?.map(|w| w.to_string())
        } else {
            None
        };
        if let Some(msg) = problem {
            witness = Some(format!("sample {i}: {msg}"));
            break;
        }
    }
    Ok(report("positivity", witness.is_none(), witness, json!({"samples": samples, "seed": seed, "bases": want.bases().len()})))
}
