//! Command-line front-end: every subsystem of the library behind one
//! binary with machine-readable output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nambu_core::poly::{Poly, Rat};
use nambu_core::ratfn::RatFn;
use nambu_core::*;
use std::result::Result;

use nambu_cli::expr::{parse_poly, parse_ratfn, print_poly, print_ratfn, ParseMode};
use nambu_cli::output::{Output, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for nambu_cli::Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => nambu_cli::Format::Json,
            FormatArg::Text => nambu_cli::Format::Text,
        }
    }
}

#[derive(Parser)]
#[command(name = "nambu", version, about = "Exact Nambu-Poisson computations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: FormatArg,
    #[command(subcommand)]
    command: Commands,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// The full polynomial ring.
    Full,
    /// Quotient by the potential.
    Quotient,
    /// Quotient by potential minus a scalar.
    Shifted,
}

#[derive(Args, Debug, Clone)]
struct AlgebraArgs {
    /// Bracket arity n (the potential ring has n+1 variables).
    #[arg(long)]
    n: Option<usize>,
    /// Potential polynomial, e.g. "t1*t2*t3*t4".
    #[arg(long)]
    potential: Option<String>,
    #[arg(long, value_enum, default_value = "full")]
    kind: KindArg,
    /// Shift scalar for the shifted quotient, e.g. "1" or "3/2".
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    /// Torus scalar q (switches to the torus family).
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Torus exponent vector, comma-separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    kappa: Option<Vec<i64>>,
    /// JSON descriptor file; inline flags override its fields.
    #[arg(long)]
    descriptor: Option<std::path::PathBuf>,
}

impl AlgebraArgs {
    fn load_descriptor(&self) -> Result<AlgebraArgs, String> {
        let Some(path) = &self.descriptor else {
            return Ok(self.clone());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| format!("{} is not valid JSON: {e}", path.display()))?;
        let obj = v.as_object().ok_or("descriptor must be a JSON object")?;
        let mut merged = self.clone();
        if merged.n.is_none() {
            if let Some(n) = obj.get("n").and_then(Value::as_u64) {
                merged.n = Some(n as usize);
            }
        }
        if merged.potential.is_none() {
            if let Some(p) = obj.get("potential").and_then(Value::as_str) {
                merged.potential = Some(p.to_string());
            }
        }
        if let Some(kind) = obj.get("kind").and_then(Value::as_str) {
            merged.kind = match kind {
                "full" => KindArg::Full,
                "quotient" => KindArg::Quotient,
                "shifted" => KindArg::Shifted,
                other => return Err(format!("unknown kind '{other}' in descriptor")),
            };
        }
        if merged.xi.is_none() {
            if let Some(xi) = obj.get("xi").and_then(Value::as_str) {
                merged.xi = Some(xi.to_string());
            }
        }
        if merged.q.is_none() {
            if let Some(q) = obj.get("q").and_then(Value::as_str) {
                merged.q = Some(q.to_string());
            }
        }
        if merged.kappa.is_none() {
            if let Some(kappa) = obj.get("kappa").and_then(Value::as_array) {
                let parsed: Option<Vec<i64>> = kappa.iter().map(Value::as_i64).collect();
                merged.kappa = Some(parsed.ok_or("kappa entries must be integers")?);
            }
        }
        Ok(merged)
    }

    fn build(&self) -> Result<AlgebraDescriptor, String> {
        let merged = self.load_descriptor()?;
        let this = &merged;
        if let Some(q) = &this.q {
            let q = parse_rational(q)?;
            let n = this
                .n
                .or_else(|| this.kappa.as_ref().map(|k| k.len()))
                .ok_or("torus algebras need --n or --kappa")?;
            let kappa = this.kappa.clone().unwrap_or_else(|| vec![0; n]);
            return AlgebraDescriptor::torus(n, q, kappa).map_err(|e| e.to_string());
        }
        let text = this.potential.as_ref().ok_or("need --potential or --q")?;
        let nvars = this.n.map(|n| n + 1);
        let omega = parse_poly(text, ParseMode::Poly, nvars).map_err(|e| e.to_string())?;
        let n = this.n.unwrap_or_else(|| omega.nvars().saturating_sub(1));
        let (kind, xi) = match this.kind {
            KindArg::Full => (PotentialKind::FullPolynomial, rat(0)),
            KindArg::Quotient => (PotentialKind::Quotient, rat(0)),
            KindArg::Shifted => {
                let xi = parse_rational(this.xi.as_deref().unwrap_or("1"))?;
                (PotentialKind::ShiftedQuotient, xi)
            }
        };
        AlgebraDescriptor::potential_kind(n, omega, kind, xi).map_err(|e| e.to_string())
    }

    fn parse_args_for(
        &self,
        alg: &AlgebraDescriptor,
        exprs: &[String],
    ) -> Result<Vec<RatFn>, String> {
        exprs.iter().map(|s| parse_algebra_element(alg, s)).collect()
    }
}

fn parse_algebra_element(alg: &AlgebraDescriptor, text: &str) -> Result<RatFn, String> {
    let nvars = alg.nvars();
    if alg.is_torus() {
        let p = parse_poly(text, ParseMode::Laurent, Some(nvars)).map_err(|e| e.to_string())?;
        Ok(RatFn::from_poly(p))
    } else {
        parse_ratfn(text, Some(nvars)).map_err(|e| e.to_string())
    }
}

fn parse_rational(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let mut parts = body.splitn(2, '/');
    let num: num::BigInt = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a rational"))?;
    let den: num::BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| format!("'{s}' is not a rational"))?,
        None => 1.into(),
    };
    if den == 0.into() {
        return Err("zero denominator".into());
    }
    let r = Rat::new(num, den);
    Ok(if neg { -r } else { r })
}

#[derive(Subcommand)]
enum Commands {
    /// Evaluate the n-ary bracket on explicit arguments.
    Bracket {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Bracket arguments, one expression per slot.
        #[arg(long = "args", num_args = 1.., required = true)]
        args: Vec<String>,
    },
    /// Sampled verification of the bracket axioms.
    Verify {
        #[command(subcommand)]
        sub: VerifyCmd,
    },
    /// Test membership in the Nambu-Poisson center.
    Center {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Element to test.
        #[arg(long)]
        f: String,
    },
    /// Isolated-singularity test for a potential.
    Singularity {
        #[arg(long)]
        potential: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Weight-valuation operations.
    Valuation {
        #[command(subcommand)]
        sub: ValuationCmd,
    },
    /// Torus invariants and deciders.
    Torus {
        #[command(subcommand)]
        sub: TorusCmd,
    },
    /// Classify the cap of a field at a given w.
    Gamma {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
    },
    /// Depth and width lookup for a classified field.
    #[command(name = "depth-width")]
    DepthWidth {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Automorphism-group structure and membership checks.
    Aut {
        #[command(subcommand)]
        sub: AutCmd,
    },
    /// Solution-group enumeration.
    Groups {
        #[command(subcommand)]
        sub: GroupsCmd,
    },
    /// Separable Jacobian-equation decisions.
    Pde {
        #[command(subcommand)]
        sub: PdeCmd,
    },
    /// Bracket-scaling constant of a polynomial endomorphism.
    #[command(name = "epsilon-morphism")]
    EpsilonMorphism {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Generator images, one per variable.
        #[arg(long = "images", num_args = 1.., required = true)]
        images: Vec<String>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check alternating, fundamental identity, and Leibniz on samples.
    Axioms {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value = "25")]
        samples: usize,
        /// Maximum total degree of the sampled polynomials.
        #[arg(long, default_value = "2")]
        degree: i64,
        /// Coefficients are drawn from [-bound, bound].
        #[arg(long = "coeff-bound", default_value = "3")]
        coeff_bound: i64,
        #[arg(long, default_value = "1")]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ValuationCmd {
    /// Does the weight assignment induce a w-valuation?
    Check {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        /// Also report whether the inequality is strict everywhere.
        #[arg(long)]
        classical: bool,
    },
    /// Value of an element.
    Value {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
        #[arg(long)]
        f: String,
    },
    /// Bracket in the associated graded algebra.
    Gr {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[arg(long = "args", num_args = 1.., required = true)]
        args: Vec<String>,
    },
}

#[derive(Subcommand)]
enum TorusCmd {
    /// Normal form with a unimodular witness.
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        kappa: Vec<i64>,
    },
    /// Isomorphism decision between two torus data.
    Iso {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        kappa: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        q2: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        kappa2: Vec<i64>,
    },
    /// Embedding decision between torus-type fields.
    Embed {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "from-q", allow_hyphen_values = true)]
        from_q: Option<String>,
        #[arg(long = "to-q", allow_hyphen_values = true)]
        to_q: Option<String>,
        #[arg(long = "from-k")]
        from_k: Option<u64>,
        #[arg(long = "to-k")]
        to_k: Option<u64>,
    },
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    #[arg(long)]
    n: Option<usize>,
    /// q-skew field parameter.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Positive-invariant family parameter.
    #[arg(long)]
    k: Option<u64>,
    /// The unit-bracket field.
    #[arg(long)]
    weyl: bool,
    /// Fraction field of a potential algebra.
    #[arg(long)]
    potential: Option<String>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    /// Shorthand: power-sum potential with this homogeneity defect.
    #[arg(long = "d0", allow_hyphen_values = true)]
    d0: Option<i64>,
}

impl FieldArgs {
    fn build(&self) -> Result<FieldDescriptor, String> {
        let n = self.n.unwrap_or(3);
        if let Some(k) = self.k {
            if k == 0 {
                return Err("--k must be positive".into());
            }
            return Ok(FieldDescriptor::Nk { n, k });
        }
        if self.weyl {
            return Ok(FieldDescriptor::Weyl { n });
        }
        if let Some(d0) = self.d0 {
            let nvars = n + 1;
            let degree = n as i64 + 1 + d0;
            if degree < 1 {
                return Err("defect makes the degree nonpositive".into());
            }
            let mut omega = Poly::zero(nvars);
            for i in 0..nvars {
                let mut e = vec![0i64; nvars];
                e[i] = degree;
                omega = &omega + &Poly::from_term(nvars, e, rat(1));
            }
            let xi = parse_rational(self.xi.as_deref().unwrap_or("0"))?;
            let kind = if xi == rat(0) {
                PotentialKind::Quotient
            } else {
                PotentialKind::ShiftedQuotient
            };
            let alg = AlgebraDescriptor::potential_kind(n, omega, kind, xi)
                .map_err(|e| e.to_string())?;
            return Ok(FieldDescriptor::PotentialField { alg });
        }
        if let Some(text) = &self.potential {
            let omega =
                parse_poly(text, ParseMode::Poly, Some(n + 1)).map_err(|e| e.to_string())?;
            let xi = parse_rational(self.xi.as_deref().unwrap_or("0"))?;
            let kind = match self.kind {
                Some(KindArg::Full) | None => PotentialKind::FullPolynomial,
                Some(KindArg::Quotient) => PotentialKind::Quotient,
                Some(KindArg::Shifted) => PotentialKind::ShiftedQuotient,
            };
            let alg = AlgebraDescriptor::potential_kind(n, omega, kind, xi)
                .map_err(|e| e.to_string())?;
            return Ok(FieldDescriptor::PotentialField { alg });
        }
        if let Some(q) = &self.q {
            return Ok(FieldDescriptor::QSkew { n, q: parse_rational(q)? });
        }
        Err("select a field with --q, --k, --weyl, --d0, or --potential".into())
    }
}

#[derive(Subcommand)]
enum AutCmd {
    /// Structure of the automorphism group of a power-sum quotient.
    Fermat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d0: u64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        budget: Option<u128>,
        /// Use the fixed-potential variant instead.
        #[arg(long)]
        fixed_potential: bool,
    },
    /// Check one monomial-permutation automorphism candidate.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d0: u64,
        /// Permutation of 1..=n+1, comma-separated images.
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
        /// Exponent tuple modulo the modulus.
        #[arg(long, value_delimiter = ',', required = true)]
        e: Vec<u64>,
        #[arg(long)]
        modulus: u64,
        /// Require the product condition of the shifted quotient.
        #[arg(long)]
        shifted: bool,
    },
}

#[derive(Subcommand)]
enum GroupsCmd {
    Enumerate {
        #[arg(long, value_enum)]
        label: LabelArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d0: u64,
        #[arg(long)]
        budget: Option<u128>,
        /// Also list the elements (can be large).
        #[arg(long)]
        elements: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LabelArg {
    G0,
    G1,
    G2,
    G3,
}

impl From<LabelArg> for GroupLabel {
    fn from(l: LabelArg) -> GroupLabel {
        match l {
            LabelArg::G0 => GroupLabel::G0,
            LabelArg::G1 => GroupLabel::G1,
            LabelArg::G2 => GroupLabel::G2,
            LabelArg::G3 => GroupLabel::G3,
        }
    }
}

#[derive(Subcommand)]
enum PdeCmd {
    /// Decide solvability of Jac(y) = b(y) / a(t).
    Decide {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Verify a candidate solution exactly.
    Verify {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long = "y", num_args = 1.., required = true)]
        y: Vec<String>,
    },
    /// Compose two solvable facts along a shared middle side.
    Compose {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        /// Witness for the (a, b) fact.
        #[arg(long = "y", num_args = 1.., required = true)]
        y: Vec<String>,
        /// Witness for the (b, c) fact.
        #[arg(long = "z", num_args = 1.., required = true)]
        z: Vec<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let format = cli.format.into();
    let out = run(cli.command);
    std::process::exit(out.emit(format));
}

fn run(cmd: Commands) -> Output {
    match cmd {
        Commands::Bracket { alg, args } => cmd_bracket(alg, args),
        Commands::Verify { sub } => match sub {
            VerifyCmd::Axioms { alg, samples, degree, coeff_bound, seed } => {
                cmd_verify_axioms(alg, samples, degree, coeff_bound, seed)
            }
        },
        Commands::Center { alg, f } => cmd_center(alg, f),
        Commands::Singularity { potential, n } => cmd_singularity(potential, n),
        Commands::Valuation { sub } => match sub {
            ValuationCmd::Check { alg, weights, w, classical } => {
                cmd_valuation_check(alg, weights, w, classical)
            }
            ValuationCmd::Value { alg, weights, f } => cmd_valuation_value(alg, weights, f),
            ValuationCmd::Gr { alg, weights, w, args } => cmd_valuation_gr(alg, weights, w, args),
        },
        Commands::Torus { sub } => match sub {
            TorusCmd::Normalize { q, kappa } => cmd_torus_normalize(q, kappa),
            TorusCmd::Iso { q, kappa, q2, kappa2 } => cmd_torus_iso(q, kappa, q2, kappa2),
            TorusCmd::Embed { n, from_q, to_q, from_k, to_k } => {
                cmd_torus_embed(n, from_q, to_q, from_k, to_k)
            }
        },
        Commands::Gamma { field, w } => cmd_gamma(field, w),
        Commands::DepthWidth { field } => cmd_depth_width(field),
        Commands::Aut { sub } => match sub {
            AutCmd::Fermat { n, d0, xi, budget, fixed_potential } => {
                cmd_aut_fermat(n, d0, xi, budget, fixed_potential)
            }
            AutCmd::Verify { n, d0, sigma, e, modulus, shifted } => {
                cmd_aut_verify(n, d0, sigma, e, modulus, shifted)
            }
        },
        Commands::Groups { sub } => match sub {
            GroupsCmd::Enumerate { label, n, d0, budget, elements } => {
                cmd_groups_enumerate(label, n, d0, budget, elements)
            }
        },
        Commands::Pde { sub } => match sub {
            PdeCmd::Decide { a, b, n } => cmd_pde_decide(a, b, n),
            PdeCmd::Verify { a, b, y } => cmd_pde_verify(a, b, y),
            PdeCmd::Compose { a, b, c, y, z } => cmd_pde_compose(a, b, c, y, z),
        },
        Commands::EpsilonMorphism { alg, images } => cmd_epsilon(alg, images),
    }
}

fn err_out(command: &str, message: String) -> Output {
    Output::error(command, message)
}

fn print_rf(r: &RatFn) -> String {
    print_ratfn(r)
}

fn cmd_bracket(alg_args: AlgebraArgs, args: Vec<String>) -> Output {
    let command = "bracket";
    let alg = match alg_args.build() {
        Ok(a) => a,
        Err(m) => return err_out(command, m),
    };
    let parsed = match alg_args.parse_args_for(&alg, &args) {
        Ok(p) => p,
        Err(m) => return err_out(command, m),
    };
    match bracket(&alg, &parsed) {
        Ok(b) => Output::new(Status::Ok, command, json!(print_rf(&b))),
        Err(e) => err_out(command, e.to_string()),
    }
}

fn random_sample_poly(
    rng: &mut impl rand::Rng,
    nvars: usize,
    degree: i64,
    coeff_bound: i64,
    laurent: bool,
) -> Poly {
    let bound = coeff_bound.max(1);
    let nterms = rng.gen_range(1..=3);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let mut e = vec![0i64; nvars];
        let d = rng.gen_range(0..=degree.max(0));
        for _ in 0..d {
            let i = rng.gen_range(0..nvars);
            if laurent && rng.gen_bool(0.3) {
                e[i] -= 1;
            } else {
                e[i] += 1;
            }
        }
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-bound..=bound);
        }
        terms.push((e, rat(c)));
    }
    Poly::from_terms(nvars, laurent, terms).expect("sampled terms are valid")
}

fn cmd_verify_axioms(
    alg_args: AlgebraArgs,
    samples: usize,
    degree: i64,
    coeff_bound: i64,
    seed: u64,
) -> Output {
    use rand::{Rng, SeedableRng};
    let command = "verify axioms";
    let alg = match alg_args.build() {
        Ok(a) => a,
        Err(m) => return err_out(command, m),
    };
    let n = alg.arity();
    let nvars = alg.nvars();
    let laurent = alg.is_torus();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let gen = |rng: &mut rand_chacha::ChaCha8Rng, count: usize| -> Vec<Vec<Poly>> {
        (0..samples)
            .map(|_| {
                (0..count)
                    .map(|_| random_sample_poly(rng, nvars, degree, coeff_bound, laurent))
                    .collect()
            })
            .collect()
    };
    let alt_samples = gen(&mut rng, n);
    let alt = match verify_alternating(&alg, &alt_samples) {
        Ok(r) => r,
        Err(e) => return err_out(command, e.to_string()),
    };
    let fi_samples = gen(&mut rng, 2 * n - 1);
    let fi = match verify_fundamental_identity(&alg, &fi_samples) {
        Ok(r) => r,
        Err(e) => return err_out(command, e.to_string()),
    };
    let leib_samples: Vec<LeibnizSample> = (0..samples)
        .map(|_| LeibnizSample {
            slot: rng.gen_range(0..n),
            a: random_sample_poly(&mut rng, nvars, degree, coeff_bound, laurent),
            b: random_sample_poly(&mut rng, nvars, degree, coeff_bound, laurent),
            rest: (0..n - 1)
                .map(|_| random_sample_poly(&mut rng, nvars, degree, coeff_bound, laurent))
                .collect(),
        })
        .collect();
    let leib = match verify_leibniz(&alg, &leib_samples) {
        Ok(r) => r,
        Err(e) => return err_out(command, e.to_string()),
    };
    let all_ok = alt.all_passed() && fi.all_passed() && leib.all_passed();
    let status = if all_ok { Status::Ok } else { Status::No };
    Output::new(
        status,
        command,
        json!({
            "alternating": { "checked": alt.checked, "failures": alt.failures.len() },
            "fundamental_identity": { "checked": fi.checked, "failures": fi.failures.len() },
            "leibniz": { "checked": leib.checked, "failures": leib.failures.len() },
        }),
    )
}

fn cmd_center(alg_args: AlgebraArgs, f: String) -> Output {
    let command = "center";
    let alg = match alg_args.build() {
        Ok(a) => a,
        Err(m) => return err_out(command, m),
    };
    let elem = match parse_algebra_element(&alg, &f) {
        Ok(e) => e,
        Err(m) => return err_out(command, m),
    };
    let poly = match elem.as_poly() {
        Some(p) => p,
        None => return err_out(command, "center test takes a polynomial element".into()),
    };
    match center_test(&alg, &poly) {
        Ok(true) => Output::new(Status::Ok, command, json!(true)),
        Ok(false) => Output::new(Status::No, command, json!(false)),
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_singularity(potential: String, n: Option<usize>) -> Output {
    let command = "singularity";
    let omega = match parse_poly(&potential, ParseMode::Poly, n.map(|n| n + 1)) {
        Ok(p) => p,
        Err(e) => return err_out(command, e.to_string()),
    };
    match is_isolated_singularity(&omega) {
        Ok(report) => {
            let dim = match report.dimension {
                QuotientDim::Finite(d) => json!(d),
                QuotientDim::Infinite => json!("infinite"),
            };
            let status = if report.isolated { Status::Ok } else { Status::No };
            Output::new(
                status,
                command,
                json!({
                    "isolated": report.isolated,
                    "dimension": dim,
                    "degenerate_degree": report.degenerate_degree,
                }),
            )
        }
        Err(e) => err_out(command, e.to_string()),
    }
}

fn build_weight_valuation(
    alg: &AlgebraDescriptor,
    weights: &[i64],
) -> Result<WeightValuation, String> {
    WeightValuation::scalar(alg.clone(), weights).map_err(|e| e.to_string())
}

fn ordered_value_json(v: &OrderedValue) -> Value {
    match v {
        OrderedValue::Finite(coords) if coords.len() == 1 => json!(coords[0]),
        OrderedValue::Finite(coords) => json!(coords),
        OrderedValue::Infinity => json!("infinity"),
    }
}

fn cmd_valuation_check(
    alg_args: AlgebraArgs,
    weights: Vec<i64>,
    w: i64,
    classical: bool,
) -> Output {
    let command = "valuation check";
    let alg = match alg_args.build() {
        Ok(a) => a,
        Err(m) => return err_out(command, m),
    };
    let v = match build_weight_valuation(&alg, &weights) {
        Ok(v) => v,
        Err(m) => return err_out(command, m),
    };
    let wv = OrderedValue::scalar(w);
    let rho = ordered_value_json(&v.rho());
    match v.check_w_valuation(&wv) {
        Ok(true) => {
            let mut result = json!({ "w_valuation": true, "rho": rho });
            if classical {
                match v.is_classical(&wv) {
                    Ok(c) => result["classical"] = json!(c),
                    Err(e) => return err_out(command, e.to_string()),
                }
            }
            Output::new(Status::Ok, command, result)
        }
        Ok(false) => {
            Output::new(Status::No, command, json!({ "w_valuation": false, "rho": rho }))
        }
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_valuation_value(alg_args: AlgebraArgs, weights: Vec<i64>, f: String) -> Output {
    let command = "valuation value";
    let alg = match alg_args.build() {
        Ok(a) => a,
        Err(m) => return err_out(command, m),
    };
    let v = match build_weight_valuation(&alg, &weights) {
        Ok(v) => v,
        Err(m) => return err_out(command, m),
    };
    let elem = match parse_algebra_element(&alg, &f) {
        Ok(e) => e,
        Err(m) => return err_out(command, m),
    };
    match v.rf_value(&elem) {
        Ok(val) => Output::new(Status::Ok, command, ordered_value_json(&val)),
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_valuation_gr(
    alg_args: AlgebraArgs,
    weights: Vec<i64>,
    w: i64,
    args: Vec<String>,
) -> Output {
    let command = "valuation gr";
    let alg = match alg_args.build() {
        Ok(a) => a,
        Err(m) => return err_out(command, m),
    };
    let v = match build_weight_valuation(&alg, &weights) {
        Ok(v) => v,
        Err(m) => return err_out(command, m),
    };
    let mut polys = Vec::new();
    for s in &args {
        match parse_algebra_element(&alg, s).and_then(|r| {
            r.as_poly().ok_or_else(|| "graded bracket takes polynomial arguments".to_string())
        }) {
            Ok(p) => polys.push(p),
            Err(m) => return err_out(command, m),
        }
    }
    match v.graded_bracket(&OrderedValue::scalar(w), &polys) {
        Ok(p) => Output::new(Status::Ok, command, json!(print_poly(&p))),
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_torus_normalize(q: String, kappa: Vec<i64>) -> Output {
    let command = "torus normalize";
    let q = match parse_rational(&q) {
        Ok(q) => q,
        Err(m) => return err_out(command, m),
    };
    match torus_normal_form(&q, &kappa) {
        Ok(nf) => {
            let rows: Vec<Vec<i64>> =
                (0..nf.witness.rows).map(|r| nf.witness.row(r).to_vec()).collect();
            Output::new(Status::Ok, command, json!({ "q": nf.q.to_string(), "kappa": nf.kappa }))
                .with_witness(json!(rows))
        }
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_torus_iso(q: String, kappa: Vec<i64>, q2: String, kappa2: Vec<i64>) -> Output {
    let command = "torus iso";
    let (q, q2) = match (parse_rational(&q), parse_rational(&q2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(m), _) | (_, Err(m)) => return err_out(command, m),
    };
    let iso = torus_iso_decide(&q, &kappa, &q2, &kappa2);
    let status = if iso { Status::Ok } else { Status::No };
    Output::new(status, command, json!({ "isomorphic": iso }))
}

fn cmd_torus_embed(
    n: Option<usize>,
    from_q: Option<String>,
    to_q: Option<String>,
    from_k: Option<u64>,
    to_k: Option<u64>,
) -> Output {
    let command = "torus embed";
    let n = n.unwrap_or(3);
    let parse_one = |q: &Option<String>, k: &Option<u64>| -> Result<FieldDescriptor, String> {
        match (q, k) {
            (Some(q), None) => Ok(FieldDescriptor::QSkew { n, q: parse_rational(q)? }),
            (None, Some(k)) if *k >= 1 => Ok(FieldDescriptor::Nk { n, k: *k }),
            (None, Some(_)) => Err("--from-k/--to-k must be positive".into()),
            _ => Err("give exactly one of a q parameter or a k parameter per side".into()),
        }
    };
    let source = match parse_one(&from_q, &from_k) {
        Ok(s) => s,
        Err(m) => return err_out(command, m),
    };
    let target = match parse_one(&to_q, &to_k) {
        Ok(s) => s,
        Err(m) => return err_out(command, m),
    };
    match torus_embed_decide(&source, &target) {
        Ok(EmbedDecision::Yes(witness)) => {
            let w = match witness {
                EmbedWitness::PowerMap { images } => json!({
                    "kind": "power-map",
                    "images": images.iter().map(print_rf).collect::<Vec<_>>(),
                }),
                EmbedWitness::SubtorusMap { images, scalar, k } => json!({
                    "kind": "subtorus",
                    "images": images.iter().map(print_rf).collect::<Vec<_>>(),
                    "bracket_scalar": scalar.to_string(),
                    "k": k,
                }),
            };
            Output::new(Status::Ok, command, json!({ "embeds": true })).with_witness(w)
        }
        Ok(EmbedDecision::No { citation }) => {
            Output::new(Status::No, command, json!({ "embeds": false })).with_citation(citation)
        }
        Ok(EmbedDecision::Unknown) => {
            Output::new(Status::Unknown, command, json!({ "embeds": "unknown" }))
        }
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_gamma(field_args: FieldArgs, w: i64) -> Output {
    let command = "gamma";
    let field = match field_args.build() {
        Ok(f) => f,
        Err(m) => return err_out(command, m),
    };
    match gamma_cap_classify(&field, w) {
        Ok(GammaCapOutcome::Classified { cap, witness }) => {
            let cap_name = match cap {
                GammaCap::WholeField => "whole-field",
                GammaCap::SubalgebraB => "subalgebra-B",
                GammaCap::SubalgebraX1 => "subalgebra-x1",
                GammaCap::GroundField => "ground-field",
            };
            let mut out = Output::new(Status::Ok, command, json!({ "cap": cap_name }));
            if let Some(v) = witness {
                let ws: Vec<Value> = v.weights.iter().map(ordered_value_json).collect();
                out = out.with_witness(json!({ "weights": ws }));
            }
            out
        }
        Ok(GammaCapOutcome::Uncovered) => {
            Output::new(Status::Unknown, command, json!({ "cap": "uncovered" }))
        }
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_depth_width(field_args: FieldArgs) -> Output {
    let command = "depth-width";
    let field = match field_args.build() {
        Ok(f) => f,
        Err(m) => return err_out(command, m),
    };
    match depth_width_lookup(&field) {
        Ok(DepthWidth::Known { depth, width }) => {
            Output::new(Status::Ok, command, json!({ "depth": depth, "width": width }))
        }
        Ok(DepthWidth::Uncovered) => Output::new(Status::Unknown, command, json!("uncovered")),
        Err(e) => err_out(command, e.to_string()),
    }
}

fn aut_structure_json(s: &AutStructure) -> Value {
    let quotient = match s.quotient {
        QuotientGroup::Symmetric => format!("S{}", s.n + 1),
        QuotientGroup::Alternating => format!("A{}", s.n + 1),
    };
    let split = match s.split {
        SplitStatus::Split => json!(true),
        SplitStatus::NonSplit => json!(false),
        SplitStatus::Unstated => json!("unstated"),
    };
    json!({
        "kernel": { "label": format!("{:?}", s.kernel.label), "order": s.kernel.order() },
        "quotient": quotient,
        "semidirect": split,
        "order": s.order.to_string(),
    })
}

fn cmd_aut_fermat(
    n: usize,
    d0: u64,
    xi: String,
    budget: Option<u128>,
    fixed_potential: bool,
) -> Output {
    let command = "aut fermat";
    let xi = match parse_rational(&xi) {
        Ok(x) => x,
        Err(m) => return err_out(command, m),
    };
    let result = if fixed_potential {
        fixed_potential_structure(n, d0, budget)
    } else {
        fermat_aut_structure(n, d0, xi == rat(0), budget)
    };
    match result {
        Ok(s) => Output::new(Status::Ok, command, aut_structure_json(&s)),
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_aut_verify(
    n: usize,
    d0: u64,
    sigma: Vec<usize>,
    e: Vec<u64>,
    modulus: u64,
    shifted: bool,
) -> Output {
    let command = "aut verify";
    // the permutation arrives as 1-based images
    if sigma.contains(&0) {
        return err_out(command, "permutation entries are 1-based".into());
    }
    let sigma0: Vec<usize> = sigma.iter().map(|&s| s - 1).collect();
    match verify_monomial_automorphism(n, d0, &sigma0, &e, modulus, shifted) {
        Ok(true) => Output::new(Status::Ok, command, json!(true)),
        Ok(false) => Output::new(Status::No, command, json!(false)),
        Err(err) => err_out(command, err.to_string()),
    }
}

fn cmd_groups_enumerate(
    label: LabelArg,
    n: usize,
    d0: u64,
    budget: Option<u128>,
    elements: bool,
) -> Output {
    let command = "groups enumerate";
    match enumerate_group(label.into(), n, d0, budget) {
        Ok(g) => {
            let mut result = json!({
                "label": format!("{:?}", g.label),
                "modulus": g.modulus,
                "order": g.order(),
            });
            if elements {
                result["elements"] = json!(g.elements);
            }
            Output::new(Status::Ok, command, result)
        }
        Err(e) => err_out(command, e.to_string()),
    }
}

fn parse_side(text: &str, n: Option<usize>) -> Result<PdeSide, String> {
    let f = parse_ratfn(text, n).map_err(|e| e.to_string())?;
    Ok(PdeSide::classify(&f))
}

fn cmd_pde_decide(a: String, b: String, n: Option<usize>) -> Output {
    let command = "pde decide";
    // infer a common variable count across both sides
    let n = match n {
        Some(n) => n,
        None => {
            let fa = parse_ratfn(&a, None).map(|f| f.nvars()).unwrap_or(1);
            let fb = parse_ratfn(&b, None).map(|f| f.nvars()).unwrap_or(1);
            fa.max(fb)
        }
    };
    let (sa, sb) = match (parse_side(&a, Some(n)), parse_side(&b, Some(n))) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(m), _) | (_, Err(m)) => return err_out(command, m),
    };
    match pde_decide(&sa, &sb) {
        Ok(PdeVerdict::Solvable { witness }) => {
            let w: Vec<String> = witness.iter().map(print_rf).collect();
            Output::new(Status::Ok, command, json!({ "solvable": true })).with_witness(json!(w))
        }
        Ok(PdeVerdict::Unsolvable { citation }) => {
            Output::new(Status::Unsolvable, command, json!({ "solvable": false }))
                .with_citation(citation)
        }
        Ok(PdeVerdict::Unknown) => {
            Output::new(Status::Unknown, command, json!({ "solvable": "unknown" }))
        }
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_pde_verify(a: String, b: String, y: Vec<String>) -> Output {
    let command = "pde verify";
    let n = y.len();
    let (sa, sb) = match (parse_side(&a, Some(n)), parse_side(&b, Some(n))) {
        (Ok(x), Ok(yv)) => (x, yv),
        (Err(m), _) | (_, Err(m)) => return err_out(command, m),
    };
    let images: Result<Vec<RatFn>, String> = y
        .iter()
        .map(|s| parse_ratfn(s, Some(n)).map_err(|e| e.to_string()))
        .collect();
    let images = match images {
        Ok(i) => i,
        Err(m) => return err_out(command, m),
    };
    match verify_pde_solution(&sa, &sb, &images) {
        Ok(true) => Output::new(Status::Ok, command, json!(true)),
        Ok(false) => Output::new(Status::No, command, json!(false)),
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_pde_compose(a: String, b: String, c: String, y: Vec<String>, z: Vec<String>) -> Output {
    let command = "pde compose";
    let n = y.len().max(z.len());
    let parse_many = |texts: &[String]| -> Result<Vec<RatFn>, String> {
        texts
            .iter()
            .map(|s| parse_ratfn(s, Some(n)).map_err(|e| e.to_string()))
            .collect()
    };
    let (sa, sb, sc) = match (
        parse_side(&a, Some(n)),
        parse_side(&b, Some(n)),
        parse_side(&c, Some(n)),
    ) {
        (Ok(x), Ok(yv), Ok(zv)) => (x, yv, zv),
        (Err(m), _, _) | (_, Err(m), _) | (_, _, Err(m)) => return err_out(command, m),
    };
    let (wy, wz) = match (parse_many(&y), parse_many(&z)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(m), _) | (_, Err(m)) => return err_out(command, m),
    };
    let check = |sa: &PdeSide, sb: &PdeSide, w: &[RatFn]| -> Result<(), String> {
        match verify_pde_solution(sa, sb, w) {
            Ok(true) => Ok(()),
            Ok(false) => Err("a supplied witness fails verification".into()),
            Err(e) => Err(e.to_string()),
        }
    };
    if let Err(m) = check(&sa, &sb, &wy) {
        return err_out(command, m);
    }
    if let Err(m) = check(&sb, &sc, &wz) {
        return err_out(command, m);
    }
    let f1 = SolvableFact { a: sa, b: sb.clone(), witness: wy };
    let f2 = SolvableFact { a: sb, b: sc, witness: wz };
    match pde_compose(&f1, &f2) {
        Ok(fact) => {
            let w: Vec<String> = fact.witness.iter().map(print_rf).collect();
            Output::new(Status::Ok, command, json!({ "composed": true })).with_witness(json!(w))
        }
        Err(e) => err_out(command, e.to_string()),
    }
}

fn cmd_epsilon(alg_args: AlgebraArgs, images: Vec<String>) -> Output {
    let command = "epsilon-morphism";
    let alg = match alg_args.build() {
        Ok(a) => a,
        Err(m) => return err_out(command, m),
    };
    let nvars = alg.nvars();
    let parsed: Result<Vec<Poly>, String> = images
        .iter()
        .map(|s| parse_poly(s, ParseMode::Poly, Some(nvars)).map_err(|e| e.to_string()))
        .collect();
    let parsed = match parsed {
        Ok(p) => p,
        Err(m) => return err_out(command, m),
    };
    match epsilon_morphism_scalar(&alg, &parsed) {
        Ok(Ok(e)) => Output::new(Status::Ok, command, json!({ "e": e.to_string() })),
        Ok(Err(failure)) => {
            let reason = match failure {
                EpsilonFailure::ImageNotAffineInPotential => {
                    "the potential's image is not an affine multiple of the potential"
                }
                EpsilonFailure::JacobianZero => "the Jacobian determinant vanishes",
                EpsilonFailure::JacobianNotConstant => "the Jacobian determinant is not constant",
            };
            Output::new(Status::No, command, json!({ "reason": reason }))
        }
        Err(e) => err_out(command, e.to_string()),
    }
}
