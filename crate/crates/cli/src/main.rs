use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use uqminus::canbasis::{CanonicalContext, Strategy};
use uqminus::pbw::{PbwContext, Sign};
use uqminus::rootdata::{word_roots, RootDatum, Weight};
use uqminus::verify::{self, vertex_label, Theorem, VerifyReport};
use uqminus::Error;

#[derive(Parser)]
#[command(name = "uqminus", version, about = "Canonical bases, crystals and PBW bases of U_q⁻")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical and dual canonical basis tables.
    Basis {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = StrategyArg::Induction)]
        strategy: StrategyArg,
    },
    /// PBW monomials, crystal labels, norms and the dual PBW transition matrix.
    Pbw {
        #[command(flatten)]
        common: Common,
    },
    /// Crystal vertices with string data and Kashiwara operators.
    Crystal {
        #[command(flatten)]
        common: Common,
    },
    /// Run theorem checks and emit a report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// factorization, factorization-opposite, multiplicity-free, omega,
        /// truncated-products, triple-intersection, or all.
        #[arg(long, default_value = "all")]
        check: String,
        /// Split position p for truncated-products and triple-intersection.
        #[arg(long)]
        split: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long = "type", conflicts_with = "gcm")]
    type_name: Option<String>,
    /// JSON file with "gcm", "d" and optional "labels".
    #[arg(long)]
    gcm: Option<PathBuf>,
    #[arg(long, default_value_t = 6)]
    max_height: u32,
    /// Comma-separated index labels.
    #[arg(long)]
    word: Option<String>,
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    epsilon: String,
    /// Restrict to one weight, given as comma-separated coordinates.
    #[arg(long)]
    weight: Option<String>,
    /// Longest accepted word outside finite type.
    #[arg(long, default_value_t = 6)]
    max_word_length: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Induction,
    PbwSolve,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(m) => Failure::Usage(m),
            Error::InvalidDatum(_) | Error::NonReducedWord { .. } | Error::UnknownLabel(_) | Error::HeightExceeded { .. } | Error::Json(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{flag}: {e}"))
}

struct Setup {
    canon: CanonicalContext,
    word: Option<Vec<usize>>,
    epsilon: Sign,
    weights: Vec<Weight>,
}

fn setup(c: &Common) -> Result<Setup, Failure> {
    let datum = match (&c.type_name, &c.gcm) {
        (Some(t), None) => RootDatum::named(t)?,
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| usage("--gcm", e))?;
            RootDatum::from_json(&text).map_err(|e| usage("--gcm", e))?
        }
        _ => return Err(Failure::Usage("one of --type or --gcm is required".into())),
    };
    let epsilon = Sign::parse(&c.epsilon)?;
    let word = match &c.word {
        None => None,
        Some(s) => {
            let w = datum.parse_word(s).map_err(|e| usage("--word", e))?;
            word_roots(&datum, &w).map_err(|e| usage("--word", e))?;
            if !datum.is_finite_type() && w.len() > c.max_word_length {
                return Err(usage("--word", format!("length {} exceeds --max-word-length {}", w.len(), c.max_word_length)));
            }
            Some(w)
        }
    };
    let rank = datum.rank();
    let weights = match &c.weight {
        None => Weight::all_up_to_height(rank, c.max_height),
        Some(s) => {
            let v: Vec<u32> = s.split(',').map(|x| x.trim().parse::<u32>()).collect::<Result<_, _>>().map_err(|e| usage("--weight", e))?;
            if v.len() != rank {
                return Err(usage("--weight", format!("expected {rank} coordinates, got {}", v.len())));
            }
            let w = Weight(v);
            if w.height() > c.max_height {
                return Err(usage("--weight", format!("height {} exceeds --max-height {}", w.height(), c.max_height)));
            }
            vec![w]
        }
    };
    Ok(Setup { canon: CanonicalContext::new(datum, c.max_height), word, epsilon, weights })
}

fn emit(c: &Common, json: &Value, csv: impl FnOnce() -> String) -> Result<(), Failure> {
    let text = match c.format {
        Format::Json => serde_json::to_string_pretty(json).expect("serializable") + "\n",
        Format::Csv => csv(),
    };
    match &c.out {
        Some(p) => fs::write(p, text).map_err(|e| usage("--out", e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn run_basis(c: &Common, strategy: StrategyArg) -> Result<bool, Failure> {
    let s = setup(c)?;
    let canon = &s.canon;
    let alg = canon.algebra();
    let strategy = match strategy {
        StrategyArg::Induction => Strategy::Induction,
        StrategyArg::PbwSolve => Strategy::PbwSolve,
    };
    let mut weights = Vec::new();
    let mut csv = String::from("weight,vertex,kind,word,value\n");
    for nu in &s.weights {
        let t = canon.canonical_table(nu, strategy)?;
        let mut cols = Vec::new();
        for (k, b) in t.vertices().iter().enumerate() {
            let name = vertex_label(canon, b);
            for (kind, x) in [("low", t.low(k)), ("up", t.up(k))] {
                let sp = alg.weight_space(nu)?;
                for (a, coef) in x.coords().iter().enumerate() {
                    if !coef.is_zero() {
                        let key = canon.datum().word_key(sp.pivot_word(a));
                        csv += &format!("{},{},{kind},{},{}\n", csv_field(&nu.to_string()), csv_field(&name), csv_field(&key), csv_field(&coef.to_string()));
                    }
                }
            }
            cols.push(json!({
                "label": name,
                "coords": b.coords(),
                "low": alg.to_json(t.low(k))?,
                "up": alg.to_json(t.up(k))?,
                "low_text": alg.describe(t.low(k)),
                "up_text": alg.describe(t.up(k)),
            }));
        }
        weights.push(json!({"weight": nu, "dim": t.len(), "columns": cols}));
    }
    let out = json!({"type": canon.datum().name(), "max_height": alg.max_height(), "weights": weights});
    emit(c, &out, || csv)?;
    Ok(true)
}

fn run_crystal(c: &Common) -> Result<bool, Failure> {
    let s = setup(c)?;
    let canon = &s.canon;
    let cr = canon.crystal();
    let datum = canon.datum();
    let pbw = match &s.word {
        Some(w) => Some(PbwContext::new(canon, w, s.epsilon)?),
        None => None,
    };
    let mut weights = Vec::new();
    let mut csv = String::from("weight,vertex,index,eps,phi,eps_star,phi_star,f,e,f_star,e_star\n");
    for nu in &s.weights {
        let mut verts = Vec::new();
        for b in cr.vertices(nu).iter() {
            let name = vertex_label(canon, b);
            let mut per = Vec::new();
            for i in 0..datum.rank() {
                let lab = |v: Option<uqminus::canbasis::Vertex>| v.map(|v| vertex_label(canon, &v));
                let e = lab(cr.e(b, i));
                let es = lab(cr.e_star(b, i));
                let f = vertex_label(canon, &cr.f(b, i));
                let fs = vertex_label(canon, &cr.f_star(b, i));
                csv += &format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    csv_field(&nu.to_string()),
                    csv_field(&name),
                    datum.label(i),
                    cr.eps(b, i),
                    cr.phi(b, i),
                    cr.eps_star(b, i),
                    cr.phi_star(b, i),
                    csv_field(&f),
                    csv_field(e.as_deref().unwrap_or("")),
                    csv_field(&fs),
                    csv_field(es.as_deref().unwrap_or(""))
                );
                per.push(json!({
                    "index": datum.label(i),
                    "eps": cr.eps(b, i),
                    "phi": cr.phi(b, i),
                    "eps_star": cr.eps_star(b, i),
                    "phi_star": cr.phi_star(b, i),
                    "f": f,
                    "e": e,
                    "f_star": fs,
                    "e_star": es,
                }));
            }
            let mut v = json!({"label": name, "coords": b.coords(), "star": vertex_label(canon, &cr.star(b)), "indices": per});
            if let Some(p) = &pbw {
                v["lusztig"] = json!(p.lusztig_datum(b).tuple);
            }
            verts.push(v);
        }
        weights.push(json!({"weight": nu, "count": verts.len(), "vertices": verts}));
    }
    let mut out = json!({"type": datum.name(), "max_height": canon.algebra().max_height(), "weights": weights});
    if let Some(w) = &s.word {
        out["word"] = json!(datum.word_labels(w));
        out["epsilon"] = json!(s.epsilon.as_int());
    }
    emit(c, &out, || csv)?;
    Ok(true)
}

fn run_pbw(c: &Common) -> Result<bool, Failure> {
    let s = setup(c)?;
    let canon = &s.canon;
    let alg = canon.algebra();
    let word = s.word.clone().ok_or_else(|| Failure::Usage("--word is required for pbw".into()))?;
    let p = PbwContext::new(canon, &word, s.epsilon)?;
    let mut pass = true;
    let mut weights = Vec::new();
    let mut csv = String::from("weight,row,column,value\n");
    for nu in &s.weights {
        let mut mons = Vec::new();
        for t in p.tuples(nu) {
            let label = p.pbw_crystal_label(&t)?;
            mons.push(json!({
                "c": t,
                "label": vertex_label(canon, &label),
                "monomial": alg.to_json(&p.pbw_monomial(&t)?)?,
                "dual": alg.to_json(&p.dual_pbw_monomial(&t)?)?,
                "norm": p.norm(&t)?.to_string(),
            }));
        }
        let m = p.transition_matrix(nu)?;
        pass &= m.unitriangular;
        let rows: Vec<String> = m.tuples.iter().map(|t| format!("{t:?}")).collect();
        let cols: Vec<String> = m.labels.iter().map(|b| vertex_label(canon, b)).collect();
        for (i, r) in m.entries.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                csv += &format!("{},{},{},{}\n", csv_field(&nu.to_string()), csv_field(&rows[i]), csv_field(&cols[j]), csv_field(&x.to_string()));
            }
        }
        weights.push(json!({
            "weight": nu,
            "monomials": mons,
            "transition": {
                "rows": m.tuples,
                "columns": cols,
                "matrix": m.entries.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "unitriangular": m.unitriangular,
                "positive": m.positive,
                "witness": m.witness,
            },
        }));
    }
    let out = json!({
        "type": canon.datum().name(),
        "word": canon.datum().word_labels(&word),
        "epsilon": s.epsilon.as_int(),
        "weights": weights,
        "pass": pass,
    });
    emit(c, &out, || csv)?;
    Ok(pass)
}

fn run_verify(c: &Common, check: &str, split: Option<usize>) -> Result<bool, Failure> {
    if c.weight.is_some() {
        return Err(Failure::Usage("--weight: verify always sweeps every weight up to --max-height".into()));
    }
    let s = setup(c)?;
    let canon = &s.canon;
    let word = s.word.clone().ok_or_else(|| Failure::Usage("--word is required for verify".into()))?;
    let checks: Vec<Theorem> = if check == "all" {
        let mut v = vec![Theorem::Factorization, Theorem::FactorizationOpposite, Theorem::MultiplicityFree, Theorem::Omega];
        if split.is_some() {
            v.extend([Theorem::TruncatedProducts, Theorem::TripleIntersection]);
        }
        v
    } else {
        vec![Theorem::from_tag(check).ok_or_else(|| usage("--check", format!("unknown check {check:?}")))?]
    };
    let need_split = || split.ok_or_else(|| Failure::Usage("--split is required for this check".into()));
    let mut reports: Vec<VerifyReport> = Vec::new();
    for t in checks {
        let r = match t {
            Theorem::Factorization => verify::check_factorization(canon, &word, s.epsilon, false)?,
            Theorem::FactorizationOpposite => verify::check_factorization(canon, &word, s.epsilon, true)?,
            Theorem::MultiplicityFree => verify::check_multiplicity_free(canon, &word, s.epsilon)?,
            Theorem::Omega => verify::check_omega(canon, &word, s.epsilon)?,
            Theorem::TruncatedProducts => verify::check_truncated_products(canon, &word, s.epsilon, need_split()?)?,
            Theorem::TripleIntersection => verify::check_triple_intersection(canon, &word, need_split()?)?,
        };
        for f in r.failures() {
            let msg = f.witness.as_ref().map(|w| w.message.as_str()).unwrap_or("");
            eprintln!("{} failed at {}: {msg}", r.theorem.tag(), f.weight);
        }
        reports.push(r);
    }
    let pass = reports.iter().all(VerifyReport::pass);
    let json = if reports.len() == 1 { reports[0].to_json() } else { json!({"reports": reports.iter().map(VerifyReport::to_json).collect::<Vec<_>>(), "pass": pass}) };
    emit(c, &json, || {
        let mut out = String::new();
        for (k, r) in reports.iter().enumerate() {
            let body = r.to_csv();
            out += if k == 0 { &body } else { body.split_once('\n').map_or("", |x| x.1) };
        }
        out
    })?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Basis { common, strategy } => run_basis(common, *strategy),
        Command::Pbw { common } => run_pbw(common),
        Command::Crystal { common } => run_crystal(common),
        Command::Verify { common, check, split } => run_verify(common, check, *split),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
