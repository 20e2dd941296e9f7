mod report;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use strongpoly_core::alexander::{
    blanchfield_self_link_witness, braid_alexander, braid_to_presentation, divisorial_hull, elementary_ideal,
    parse_braid, style_for, torsion_alexander_poly, verify_ribbon_presentation, LaurentIdeal, ModulePresentation,
};
use strongpoly_core::factor::{self, Mode};
use strongpoly_core::families::{self, build_family_poly, enumerate_family, Family, FamilySpec};
use strongpoly_core::localize::{reduce_localized_ideal, verify_principality, LocalizedIdeal};
use strongpoly_core::parse::{parse_polynomial, parse_polynomial_list, ParseOptions};
use strongpoly_core::strongcheck::{self, PolyVector, StrongOptions};
use strongpoly_core::{Error, LaurentPoly, Result};

use report::Outcome;

#[derive(Parser)]
#[command(name = "strongpoly", version, about = "Strong irreducibility and Alexander-module computations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Allow negative exponents in polynomial input.
    #[arg(long, global = true)]
    laurent: bool,
    /// Read the matrix JSON from standard input.
    #[arg(long, global = true)]
    stdin: bool,
    /// Total degree allowed in a Kronecker reduction.
    #[arg(long, global = true)]
    max_degree: Option<i64>,
    /// Largest entry of a substitution vector in refutation searches.
    #[arg(long, global = true)]
    max_k: Option<i64>,
    /// Largest uniform power in refutation searches.
    #[arg(long, global = true)]
    max_uniform: Option<i64>,
    /// S-pairs reduced before a Groebner computation gives up.
    #[arg(long, global = true)]
    gb_steps: Option<usize>,
    /// Worker threads for parallel sampling.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducibility of one polynomial.
    CheckIrred { #[arg(allow_hyphen_values = true)] poly: String },
    /// Strong irreducibility of one polynomial.
    CheckStrongIrred { #[arg(allow_hyphen_values = true)] poly: String },
    /// Strong coprimality of two polynomials.
    CheckCoprime {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Strong coprimality of two vectors given as `;`-separated lists.
    CheckVectorCoprime {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Family members, either from `--k` or by enumeration.
    GenFamily {
        #[arg(long)]
        family: Family,
        /// Comma-separated coefficients.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// `p · p̄` for a polynomial or a family member.
    SlicePoly {
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        family: Option<Family>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Generators of `E_k` of a presentation matrix.
    ElementaryIdeal {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        matrix: MatrixInput,
    },
    /// Divisorial hull of `E_k` of a matrix, or of listed generators.
    DivisorialHull {
        /// `;`-separated ideal generators.
        #[arg(long, allow_hyphen_values = true)]
        gens: Option<String>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[command(flatten)]
        matrix: MatrixInput,
    },
    /// Torsion Alexander polynomial of a matrix or braid closure.
    TorsionAlex {
        #[arg(long)]
        braid: Option<String>,
        #[arg(long)]
        strands: Option<usize>,
        /// One variable per component instead of a single `t`.
        #[arg(long)]
        multivariable: bool,
        #[command(flatten)]
        matrix: MatrixInput,
    },
    /// Fox-calculus presentation and Alexander polynomial of a braid closure.
    BraidAlex {
        #[arg(long)]
        braid: String,
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        multivariable: bool,
    },
    /// Certify `TH_1 = Λ/<p·p̄>` for the ribbon construction on `p`.
    VerifyRibbon { #[arg(allow_hyphen_values = true)] poly: String },
    /// Nonzero certificate for the self-linking of `e1 + e2`.
    BlanchfieldWitness {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Single generator of `<p^s q^t>` after localization.
    ReduceIdeal {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Exponent pairs such as `1,3;2,1`.
        #[arg(long)]
        gens: String,
    },
    /// Fraction of random homogeneous polynomials passing the criterion.
    Genericity {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        coeff_box: i64,
    },
}

#[derive(Args)]
struct MatrixInput {
    /// Path to a presentation JSON file `{"vars": n, "matrix": [[..]]}`.
    #[arg(long)]
    matrix: Option<String>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckIrred { .. } => "check-irred",
            Command::CheckStrongIrred { .. } => "check-strong-irred",
            Command::CheckCoprime { .. } => "check-coprime",
            Command::CheckVectorCoprime { .. } => "check-vector-coprime",
            Command::GenFamily { .. } => "gen-family",
            Command::SlicePoly { .. } => "slice-poly",
            Command::ElementaryIdeal { .. } => "elementary-ideal",
            Command::DivisorialHull { .. } => "divisorial-hull",
            Command::TorsionAlex { .. } => "torsion-alex",
            Command::BraidAlex { .. } => "braid-alex",
            Command::VerifyRibbon { .. } => "verify-ribbon",
            Command::BlanchfieldWitness { .. } => "blanchfield-witness",
            Command::ReduceIdeal { .. } => "reduce-ideal",
            Command::Genericity { .. } => "genericity",
        }
    }
}

impl Global {
    fn poly(&self, text: &str) -> Result<LaurentPoly> {
        parse_polynomial(text, &ParseOptions { laurent: self.laurent, ..Default::default() })
    }

    fn options(&self) -> StrongOptions {
        let mut o = StrongOptions::default();
        if let Some(d) = self.max_degree {
            o.factor.max_total_degree = d;
        }
        if let Some(k) = self.max_k {
            o.max_k = k;
        }
        if let Some(k) = self.max_uniform {
            o.max_uniform = k;
        }
        if let Some(s) = self.gb_steps {
            o.gb.max_pairs = s;
        }
        o
    }

    fn presentation(&self, input: &MatrixInput) -> Result<ModulePresentation> {
        let text = match (&input.matrix, self.stdin) {
            (_, true) => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::InvalidArgument(format!("reading stdin: {e}")))?;
                s
            }
            (Some(path), false) => std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("reading {path}: {e}")))?,
            (None, false) => return Err(Error::InvalidArgument("no matrix given; use --matrix or --stdin".into())),
        };
        ModulePresentation::from_json(&text)
    }
}

fn parse_ints(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::InvalidArgument(format!("not an integer: {s:?}"))))
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<(u32, u32)>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let v: Vec<u32> = pair
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad exponent pair {pair:?}"))))
                .collect::<Result<_>>()?;
            match v[..] {
                [s, t] => Ok((s, t)),
                _ => Err(Error::InvalidArgument(format!("bad exponent pair {pair:?}"))),
            }
        })
        .collect()
}

fn render(p: &LaurentPoly) -> String {
    p.render(&style_for(p.ring()))
}

fn member_json(spec: &FamilySpec) -> Result<Value> {
    let p = build_family_poly(spec)?;
    Ok(json!({ "family": spec.family, "k": spec.k, "polynomial": p }))
}

fn run(cmd: &Command, g: &Global) -> Result<Outcome> {
    let opts = g.options();
    Ok(match cmd {
        Command::CheckIrred { poly } => {
            let p = g.poly(poly)?;
            let mode = if g.laurent { Mode::Laurent } else { Mode::Ordinary };
            let v = factor::is_irreducible_with_budget(&p, mode, &opts.factor)?;
            Outcome::verdict(&v, json!({ "input": p, "mode": mode }))
        }
        Command::CheckStrongIrred { poly } => {
            let p = g.poly(poly)?;
            let v = strongcheck::check_strongly_irreducible_with(&p, &opts)?;
            Outcome::verdict(&v, json!({ "input": p }))
        }
        Command::CheckCoprime { p, q } => {
            let (p, q) = (g.poly(p)?, g.poly(q)?);
            let n = p.nvars().max(q.nvars());
            let (p, q) = (p.with_nvars(n)?, q.with_nvars(n)?);
            let v = strongcheck::check_strongly_coprime_with(&p, &q, &opts)?;
            Outcome::verdict(&v, json!({ "p": p, "q": q }))
        }
        Command::CheckVectorCoprime { p, q } => {
            let popts = ParseOptions { laurent: g.laurent, ..Default::default() };
            let (p, q) = (parse_polynomial_list(p, &popts)?, parse_polynomial_list(q, &popts)?);
            let n = p.iter().chain(&q).map(|x| x.nvars()).max().unwrap_or(0);
            let widen = |v: Vec<LaurentPoly>| v.iter().map(|x| x.with_nvars(n)).collect::<Result<Vec<_>>>();
            let (p, q) = (PolyVector::new(widen(p)?)?, PolyVector::new(widen(q)?)?);
            let v = strongcheck::check_vector_coprime_with(&p, &q, &opts)?;
            Outcome::verdict(&v, json!({ "p": p.entries(), "q": q.entries() }))
        }
        Command::GenFamily { family, k, n, bound, limit } => {
            let specs = match k {
                Some(k) => vec![FamilySpec::new(*family, parse_ints(k)?)?],
                None => enumerate_family(*family, *n, *bound, *limit)?,
            };
            let members = specs.iter().map(member_json).collect::<Result<Vec<_>>>()?;
            Outcome::success(json!({ "count": members.len(), "members": members }))
        }
        Command::SlicePoly { poly, family, k } => {
            let p = match (poly, family, k) {
                (Some(text), None, None) => g.poly(text)?.to_laurent(),
                (None, Some(f), Some(k)) => build_family_poly(&FamilySpec::new(*f, parse_ints(k)?)?)?,
                _ => return Err(Error::InvalidArgument("give a polynomial or both --family and --k".into())),
            };
            let s = families::slice_polynomial(&p)?;
            Outcome::success(json!({
                "p": p,
                "p_bar": p.bar(),
                "slice": s,
                "eval_at_ones": families::eval_at_ones(&p).to_string(),
                "bar_coprime": families::bar_coprime(&p)?,
            }))
        }
        Command::ElementaryIdeal { k, matrix } => {
            let m = g.presentation(matrix)?;
            let e = elementary_ideal(&m, *k);
            Outcome::success(json!({
                "k": k,
                "generators": e.generators.iter().map(render).collect::<Vec<_>>(),
                "zero": e.is_zero(),
                "unit": e.is_unit(),
            }))
        }
        Command::DivisorialHull { gens, k, matrix } => {
            let ideal = match gens {
                Some(text) => {
                    let gens = parse_polynomial_list(text, &ParseOptions::laurent())?;
                    let n = gens.iter().map(|x| x.nvars()).max().unwrap_or(1).max(1);
                    let ring = strongpoly_core::alexander::laurent_ring(n);
                    let generators = gens.iter().map(|x| x.to_ring(ring)).collect::<Result<Vec<_>>>()?;
                    LaurentIdeal { ring, generators: generators.into_iter().filter(|x| !x.is_zero()).collect() }
                }
                None => elementary_ideal(&g.presentation(matrix)?, *k),
            };
            Outcome::success(json!({ "generator": render(&divisorial_hull(&ideal)?) }))
        }
        Command::TorsionAlex { braid, strands, multivariable, matrix } => {
            let m = match (braid, strands) {
                (Some(b), Some(s)) => braid_to_presentation(&parse_braid(b, *s)?, !multivariable)?,
                (Some(_), None) => return Err(Error::InvalidArgument("--braid needs --strands".into())),
                _ => g.presentation(matrix)?,
            };
            let t = torsion_alexander_poly(&m)?;
            Outcome::success(json!({ "delta": render(&t.delta), "free_rank": t.free_rank, "rank": t.rank }))
        }
        Command::BraidAlex { braid, strands, multivariable } => {
            let b = braid_alexander(&parse_braid(braid, *strands)?, !multivariable)?;
            Outcome::success(json!({
                "delta": render(&b.delta),
                "components": b.components,
                "free_rank": b.free_rank,
                "presentation": b.presentation,
            }))
        }
        Command::VerifyRibbon { poly } => {
            let r = verify_ribbon_presentation(&g.poly(poly)?)?;
            Outcome::checked(r.certified, serde_json::to_value(&r).expect("reports serialize"))
        }
        Command::BlanchfieldWitness { p, f } => {
            let w = blanchfield_self_link_witness(&g.poly(p)?, &g.poly(f)?)?;
            let value = &w.value;
            Outcome::checked(
                w.nonzero,
                json!({
                    "p": value.p,
                    "numerator": value.numerator,
                    "denominator": value.denominator_poly(),
                    "nonzero": w.nonzero,
                }),
            )
        }
        Command::ReduceIdeal { p, q, gens } => {
            let (p, q) = (g.poly(p)?, g.poly(q)?);
            let ideal = LocalizedIdeal::new(&p, &q, &parse_pairs(gens)?)?;
            let r = reduce_localized_ideal(&ideal)?;
            let verified = verify_principality(&ideal, &r.generator, &r.steps)?;
            Outcome::checked(
                verified,
                json!({
                    "p": ideal.primes[0],
                    "q": ideal.primes[1],
                    "generators": ideal.generators,
                    "generator": r.generator,
                    "steps": r.steps,
                    "verified": verified,
                }),
            )
        }
        Command::Genericity { vars, degree, trials, seed, coeff_box } => {
            let r = strongcheck::genericity_sample(*vars, *degree, *trials, *coeff_box, *seed)?;
            Outcome::success(serde_json::to_value(&r).expect("reports serialize"))
        }
    })
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let json = std::env::args().any(|a| a == "--json");
            let o = Outcome::usage(e.to_string().trim_end().to_string());
            if json {
                println!("{}", report::to_json("usage", &o, start.elapsed().as_secs_f64() * 1000.0));
            } else {
                eprint!("{e}");
            }
            return ExitCode::from(o.exit_code as u8);
        }
    };
    if let Some(n) = cli.global.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let name = cli.command.name();
    let outcome = run(&cli.command, &cli.global).unwrap_or_else(|e| Outcome::error(&e));
    if cli.global.json {
        println!("{}", report::to_json(name, &outcome, start.elapsed().as_secs_f64() * 1000.0));
    } else if outcome.exit_code == 3 || outcome.status == "RESOURCE_EXHAUSTED" {
        eprint!("{}", report::to_text(name, &outcome));
    } else {
        print!("{}", report::to_text(name, &outcome));
    }
    ExitCode::from(outcome.exit_code as u8)
}
