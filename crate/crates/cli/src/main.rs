use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use okada::algebra::TriangularFactorization;
use okada::cellular::{gram_matrix, GramMatrix};
use okada::fibonacci::{enumerate_yfs, saturated_chains};
use okada::half::{enumerate_diagrams, enumerate_half, for_each_diagram};
use okada::monoid::{census_row, idempotent_count, GreenClasses, MonoidElement};
use okada::render::{render_diagram, render_half, render_permutation, Format, Hasse};
use okada::rewrite::normalize_with;
use okada::{
    diagram_to_perm, evaluate_word, free_involution, normalize, perm_to_diagram, rs, rs_inverse,
    triangular_factorization, ArcDiagram, Permutation, Polynomial, Word,
};

mod input;
mod selftest;

use input::Operand;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Validation(String),
    Invariant(String),
    /// The reader went away; not an error.
    ClosedPipe,
}

impl From<okada::Error> for Failure {
    fn from(e: okada::Error) -> Self {
        if e.is_invariant() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::ClosedPipe
        } else {
            Failure::Validation(format!("i/o error: {e}"))
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        match e.io_error_kind() {
            Some(io::ErrorKind::BrokenPipe) => Failure::ClosedPipe,
            _ => Failure::Validation(format!("json error: {e}")),
        }
    }
}

type Outcome = Result<(), Failure>;

#[derive(Parser)]
#[command(name = "okada", version, about = "Okada algebras, monoids and arc diagrams")]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true, env = "OKADA_THREADS")]
    threads: Option<usize>,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Yfs,
    Diagrams,
    Half,
    Chains,
    Idempotents,
}

impl Kind {
    fn limit(self) -> usize {
        match self {
            Kind::Yfs => 30,
            Kind::Diagrams | Kind::Idempotents => 10,
            Kind::Half | Kind::Chains => 16,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Generic,
    Y1,
    Monoid,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Report {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Svg,
    Tikz,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Svg => Format::Svg,
            FormatArg::Tikz => Format::Tikz,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RenderKind {
    /// Arc diagram given as JSON.
    Diagram,
    /// Half arc diagram given as JSON.
    Half,
    /// Permutation, drawn as its arc diagram.
    Perm,
    /// Generator word (with --n), drawn as its product.
    Word,
    /// Identity diagram of rank --n.
    Identity,
    /// Young-Fibonacci lattice up to rank --n.
    Yf,
    /// Dominance lattice of rank --n.
    Dominance,
}

#[derive(Subcommand)]
enum Command {
    /// Stream canonical records as JSON lines; the count goes to stderr.
    Enumerate {
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Restrict half diagrams or chains to this propagating set.
        #[arg(long)]
        set: Option<String>,
        /// Print only the count.
        #[arg(long)]
        count_only: bool,
    },
    /// Multiply two elements: words, permutations, diagram or element JSON.
    Multiply {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = Mode::Generic)]
        mode: Mode,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Normal form of a generator word.
    Normalize {
        word: String,
        #[arg(long)]
        n: Option<usize>,
        /// Choose commutations and redexes at random (see --seed).
        #[arg(long)]
        random: bool,
    },
    /// The pair of chains of a permutation.
    Rs { perm: String },
    /// The permutation of a chain pair: either two chain arrays or one
    /// document with fields p and q.
    RsInverse {
        p: String,
        q: Option<String>,
    },
    /// Green's classes of the monoid of rank n.
    Green {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Report::Json)]
        format: Report,
    },
    /// Per-rank counts: elements, idempotents, involutions, aperiodicity.
    Census {
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 0)]
        min: usize,
        #[arg(long, value_enum, default_value_t = Report::Json)]
        format: Report,
    },
    /// Gram matrix of the cell module of a Fibonacci set.
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        set: String,
        /// Skip the symbolic determinant.
        #[arg(long)]
        no_det: bool,
    },
    /// The factorization σ = ρ·E_S·τ.
    Factorize { perm: String },
    /// Draw an object as SVG or TikZ.
    Render {
        kind: RenderKind,
        input: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Svg)]
        format: FormatArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Quick consistency checks, one line per check.
    Selftest {
        /// Largest rank to check.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

fn with_schema(schema: &str, value: impl Serialize) -> Result<Value, Failure> {
    let mut v = serde_json::to_value(value)?;
    match v.as_object_mut() {
        Some(obj) => {
            obj.insert("schema".into(), Value::String(schema.into()));
            Ok(v)
        }
        None => Ok(json!({ "schema": schema, "value": v })),
    }
}

fn print_doc(schema: &str, value: impl Serialize) -> Outcome {
    let v = with_schema(schema, value)?;
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, &v)?;
    writeln!(out)?;
    Ok(())
}

fn need_n(n: Option<usize>, what: &str) -> Result<usize, Failure> {
    n.ok_or_else(|| Failure::Usage(format!("{what} needs --n")))
}

fn enumerate(kind: Kind, n: usize, set: Option<String>, count_only: bool) -> Outcome {
    if n > kind.limit() {
        return Err(Failure::Usage(format!(
            "enumerate {kind:?} supports n <= {}, got {n}",
            kind.limit()
        )));
    }
    let set = set.map(|s| input::fibonacci_set(n, &s)).transpose()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut line = |v: Value| -> Outcome {
        serde_json::to_writer(&mut out, &v)?;
        writeln!(out)?;
        Ok(())
    };
    let count: u64 = match kind {
        Kind::Yfs => {
            let sets = enumerate_yfs(n);
            if !count_only {
                for s in &sets {
                    line(json!({"schema": "okada.yfs/1", "set": s, "word": s.to_word()}))?;
                }
            }
            sets.len() as u64
        }
        Kind::Diagrams => {
            if count_only {
                let c = std::sync::atomic::AtomicU64::new(0);
                for_each_diagram(n, |_| {
                    c.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                });
                c.into_inner()
            } else {
                let ds = enumerate_diagrams(n);
                for d in &ds {
                    line(json!({"schema": "okada.diagram/1", "diagram": d}))?;
                }
                ds.len() as u64
            }
        }
        Kind::Half => {
            let hs = enumerate_half(n, set.as_ref())?;
            if !count_only {
                for h in &hs {
                    line(json!({"schema": "okada.half/1", "half": h, "prop_lab": h.prop_lab()}))?;
                }
            }
            hs.len() as u64
        }
        Kind::Chains => {
            let targets = match &set {
                Some(s) => vec![s.clone()],
                None => enumerate_yfs(n),
            };
            let mut c = 0;
            for t in &targets {
                for ch in saturated_chains(t) {
                    c += 1;
                    if !count_only {
                        line(json!({"schema": "okada.chain/1", "chain": ch}))?;
                    }
                }
            }
            c
        }
        Kind::Idempotents => {
            if count_only {
                idempotent_count(n)
            } else {
                let ds: Vec<ArcDiagram> = enumerate_diagrams(n)
                    .into_iter()
                    .filter(|d| MonoidElement(d.clone()).is_idempotent())
                    .collect();
                for d in &ds {
                    line(json!({"schema": "okada.diagram/1", "diagram": d}))?;
                }
                ds.len() as u64
            }
        }
    };
    if count_only {
        writeln!(out, "{count}")?;
    } else {
        eprintln!("count {count}");
    }
    out.flush()?;
    Ok(())
}

fn poly_of(m: okada::Monomial) -> Polynomial {
    m.into()
}

fn multiply(left: &str, right: &str, mode: Mode, n: Option<usize>) -> Outcome {
    let a = Operand::parse(left)?;
    let b = Operand::parse(right)?;
    let rank = input::common_rank(&a, &b, n)?;
    match mode {
        Mode::Generic => {
            let ea = a.to_element(rank)?;
            let eb = b.to_element(rank)?;
            let p = ea.multiply(&eb)?;
            let mut doc = json!({ "mode": "generic", "rank": rank, "element": p });
            if p.len() == 1 {
                let (sigma, c) = p.terms().next().expect("one term");
                doc["coeff"] = serde_json::to_value(c)?;
                doc["perm"] = serde_json::to_value(sigma)?;
                doc["word"] = Value::String(Word::code_word(sigma).to_string());
            }
            print_doc("okada.product/1", doc)
        }
        Mode::Y1 | Mode::Monoid => {
            let as_diagram = |o: &Operand| -> Result<(Polynomial, ArcDiagram), Failure> {
                Ok(match o {
                    Operand::Word(_) => {
                        let (m, d) = evaluate_word(&o.to_word(rank)?.expect("word operand"))?;
                        (poly_of(m), d)
                    }
                    Operand::Perm(p) => (Polynomial::one(), perm_to_diagram(p)?),
                    Operand::Diagram(d) => (Polynomial::one(), d.clone()),
                    Operand::Element(_) => {
                        return Err(Failure::Validation(
                            "element operands are only supported in generic mode".into(),
                        ))
                    }
                })
            };
            let (ca, da) = as_diagram(&a)?;
            let (cb, db) = as_diagram(&b)?;
            if let Mode::Monoid = mode {
                let d = da.monoid_product(&db)?;
                let perm = diagram_to_perm(&d)?;
                print_doc(
                    "okada.product/1",
                    json!({"mode": "monoid", "rank": rank, "diagram": d, "perm": perm}),
                )
            } else {
                let (m, d) = da.product_y1(&db)?;
                let c = &(&ca * &cb) * &poly_of(m);
                let perm = diagram_to_perm(&d)?;
                print_doc(
                    "okada.product/1",
                    json!({"mode": "y1", "rank": rank, "coeff": c, "diagram": d, "perm": perm}),
                )
            }
        }
    }
}

fn normalize_cmd(word: &str, n: Option<usize>, random: bool, seed: u64) -> Outcome {
    let w = match n {
        Some(n) => Word::parse(n, word)?,
        None => word.parse::<Word>()?,
    };
    let r = if random {
        normalize_with(&w, &mut ChaCha8Rng::seed_from_u64(seed))?
    } else {
        normalize(&w)?
    };
    let mut doc = serde_json::to_value(&r)?;
    doc["coeff"] = serde_json::to_value(poly_of(r.coefficient.clone()))?;
    doc["word"] = Value::String(r.normal_word.to_string());
    doc["rank"] = json!(w.rank());
    print_doc("okada.normal/1", doc)
}

fn rs_inverse_cmd(p: &str, q: Option<&str>) -> Outcome {
    let (p, q) = match q {
        Some(q) => (input::chain(p)?, input::chain(q)?),
        None => {
            #[derive(serde::Deserialize)]
            struct Doc {
                p: okada::Chain,
                q: okada::Chain,
            }
            let d: Doc = input::json("chain pair", p)?;
            (d.p, d.q)
        }
    };
    let sigma = rs_inverse(&p, &q)?;
    print_doc("okada.perm/1", json!({ "perm": sigma }))
}

fn green(n: usize, format: Report) -> Outcome {
    if n > 8 {
        return Err(Failure::Usage(format!("green supports n <= 8, got {n}")));
    }
    let g = GreenClasses::new(n)?;
    let mut reps = Vec::new();
    for (k, class) in g.j_classes().iter().enumerate() {
        let s = class[0].prop_lab();
        let free = free_involution(&s);
        let r_classes = {
            let mut rs: Vec<usize> = class.iter().map(|d| g.r_class_of(d)).collect::<Result<_, _>>()?;
            rs.sort_unstable();
            rs.dedup();
            rs.len()
        };
        reps.push(json!({
            "j_class": k,
            "prop_lab": s,
            "free_element": free,
            "size": class.len(),
            "r_classes": r_classes,
        }));
    }
    match format {
        Report::Json => print_doc(
            "okada.green/1",
            json!({
                "n": n,
                "elements": g.elements().len(),
                "r_classes": g.r_classes().len(),
                "l_classes": g.l_classes().len(),
                "j_classes": g.j_class_count(),
                "j_representatives": reps,
            }),
        ),
        Report::Csv => {
            let mut out = io::stdout().lock();
            writeln!(out, "j_class,prop_lab,free_element,size,r_classes")?;
            for r in reps {
                let s: okada::FibonacciSet = serde_json::from_value(r["prop_lab"].clone())?;
                let f: Permutation = serde_json::from_value(r["free_element"].clone())?;
                writeln!(
                    out,
                    "{},\"{}\",\"{}\",{},{}",
                    r["j_class"], s, f, r["size"], r["r_classes"]
                )?;
            }
            Ok(())
        }
    }
}

fn census(min: usize, max: usize, format: Report) -> Outcome {
    if max > 10 {
        return Err(Failure::Usage(format!("census supports n <= 10, got {max}")));
    }
    let mut out = io::stdout().lock();
    if let Report::Csv = format {
        writeln!(out, "n,elements,idempotents,involutions,max_aperiodicity")?;
    }
    for n in min..=max {
        let row = census_row(n)?;
        match format {
            Report::Json => {
                serde_json::to_writer(&mut out, &with_schema("okada.census/1", &row)?)?;
                writeln!(out)?;
            }
            Report::Csv => writeln!(
                out,
                "{},{},{},{},{}",
                row.n, row.elements, row.idempotents, row.involutions, row.max_aperiodicity
            )?,
        }
        out.flush()?;
    }
    Ok(())
}

fn gram(n: usize, set: &str, no_det: bool, seed: u64) -> Outcome {
    if n > 7 {
        return Err(Failure::Usage(format!("gram supports n <= 7, got {n}")));
    }
    let s = input::fibonacci_set(n, set)?;
    let g: GramMatrix = gram_matrix(&s)?;
    let mut doc = serde_json::to_value(&g)?;
    if !no_det && n <= 5 {
        doc["determinant"] = serde_json::to_value(g.determinant()?)?;
    }
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<i64> = (0..n).map(|_| rng.gen_range(2..1000)).collect();
    let ys: Vec<i64> = (0..n).map(|_| rng.gen_range(2..1000)).collect();
    let det = g.determinant_at(okada::cellular::assignment(&xs, &ys));
    doc["specialization"] = json!({ "x": xs, "y": ys, "determinant": det.to_string() });
    print_doc("okada.gram/1", doc)
}

fn factorize(perm: &str) -> Outcome {
    let sigma = input::permutation(perm)?;
    let f: TriangularFactorization = triangular_factorization(&sigma)?;
    let mut doc = serde_json::to_value(&f)?;
    doc["perm"] = serde_json::to_value(&sigma)?;
    print_doc("okada.factorization/1", doc)
}

fn render(kind: RenderKind, input: Option<&str>, format: Format, n: Option<usize>) -> Outcome {
    let need_input = || input.ok_or_else(|| Failure::Usage(format!("render {kind:?} needs an input")));
    let text = match kind {
        RenderKind::Diagram => render_diagram(&input::diagram(need_input()?)?, format),
        RenderKind::Half => render_half(&input::half(need_input()?)?, format),
        RenderKind::Perm => render_permutation(&input::permutation(need_input()?)?, format)?,
        RenderKind::Word => {
            let w = Word::parse(need_n(n, "render word")?, need_input()?)?;
            render_diagram(&evaluate_word(&w)?.1, format)
        }
        RenderKind::Identity => render_diagram(&ArcDiagram::identity(need_n(n, "render identity")?), format),
        RenderKind::Yf => Hasse::young_fibonacci(need_n(n, "render yf")?).render(format),
        RenderKind::Dominance => Hasse::dominance(need_n(n, "render dominance")?)?.render(format),
    };
    io::stdout().lock().write_all(text.as_bytes())?;
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Enumerate { kind, n, set, count_only } => enumerate(kind, n, set, count_only),
        Command::Multiply { left, right, mode, n } => multiply(&left, &right, mode, n),
        Command::Normalize { word, n, random } => normalize_cmd(&word, n, random, cli.seed),
        Command::Rs { perm } => {
            let (p, q) = rs(&input::permutation(&perm)?)?;
            print_doc("okada.rs/1", json!({ "p": p, "q": q }))
        }
        Command::RsInverse { p, q } => rs_inverse_cmd(&p, q.as_deref()),
        Command::Green { n, format } => green(n, format),
        Command::Census { min, max, format } => census(min, max, format),
        Command::Gram { n, set, no_det } => gram(n, &set, no_det, cli.seed),
        Command::Factorize { perm } => factorize(&perm),
        Command::Render { kind, input, format, n } => render(kind, input.as_deref(), format.into(), n),
        Command::Selftest { max_n } => selftest::run(max_n, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("okada: cannot configure threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) | Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("okada: usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Validation(m)) => {
            eprintln!("okada: invalid input: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("okada: internal invariant violated: {m}");
            ExitCode::from(4)
        }
    }
}
