//! Command-line front end: every public operation behind a subcommand, JSON
//! on standard output. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num::{BigRational, FromPrimitive};
use serde_json::{json, Value};

use crate::codec;
use crate::expr::{self, ExprError};
use crate::geometry::{self, ProbeOutcome};
use crate::groupring::{
    centralizer_root, divide_exact, field_unit_predicate,
    irreducibility_certificate, is_trivial_unit, rigidity_certificate, Certificate,
    DivisionVerdict, GroupRingElem, Side,
};
use crate::jsonio::*;
use crate::laurent::{self, PsiOutcome};
use crate::magnus::{bergman_cmp, OrderVerdict};
use crate::words::Word;

#[derive(Parser)]
#[command(name = "freering", version, about = "Exact computer algebra for free group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression to a group-ring element
    Eval {
        #[arg(long)]
        rank: u32,
        expr: String,
    },
    /// Exact left division: find q with d*q = w
    Divl {
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
        w: String,
        d: String,
    },
    /// Exact right division: find q with q*d = w
    Divr {
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
        w: String,
        d: String,
    },
    /// Trivial-unit detection
    Unit {
        #[arg(long)]
        rank: u32,
        expr: String,
    },
    /// Irreducibility certificate for elements of the shape 1 - h
    Irred {
        #[arg(long)]
        rank: u32,
        expr: String,
    },
    /// Rigidity certificate for a factor list (JSON list of words)
    Rigid {
        #[arg(long)]
        rank: u32,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Primitive centralizer root of a word
    Centralizer {
        #[arg(long)]
        rank: u32,
        word: String,
    },
    /// Bergman order comparison of two words
    OrderCmp {
        #[arg(long)]
        rank: u32,
        u: String,
        v: String,
    },
    /// Encode a reduced letter tuple as a word code
    EncodeWord {
        #[arg(long)]
        rank: u32,
        tuple: String,
        /// Emit the fully expanded product (small tuples only)
        #[arg(long)]
        expanded: bool,
    },
    /// Decode a word code back to its letter tuple
    DecodeWord {
        #[arg(long)]
        rank: u32,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Pack a group-ring element into its element code
    PackFq {
        #[arg(long)]
        rank: u32,
        expr: String,
        #[arg(long)]
        expanded: bool,
    },
    /// Check an element code against an expression
    CheckFq {
        #[arg(long)]
        rank: u32,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        expr: String,
    },
    /// Build the (a_m, m) chain, or verify one with --verify
    AmChain {
        #[arg(long)]
        rank: u32,
        /// Chain length to build (ignored with --verify)
        m: usize,
        /// Verify the chain read from --in against this m
        #[arg(long)]
        verify: bool,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Encode a rational tuple as a polynomial pair
    TupleEncode {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Decode a polynomial pair back to the tuple
    TupleDecode {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Transport a tuple code to a new base
    Nu {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Sampled psi-formula check
    PsiCheck {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Membership of Q in K[P]
    InKp {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Word metric between two words
    Metric {
        #[arg(long)]
        rank: u32,
        u: String,
        v: String,
    },
    /// Geodesic letter sequence between two words
    Geodesic {
        #[arg(long)]
        rank: u32,
        u: String,
        v: String,
    },
    /// Stallings folding of a generator list
    Fold {
        #[arg(long)]
        rank: u32,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Subgroup membership via folding
    Member {
        #[arg(long)]
        rank: u32,
        word: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Free-basis test
    IsBasis {
        #[arg(long)]
        rank: u32,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Bounded quasiconvexity probe
    QcProbe {
        #[arg(long)]
        rank: u32,
        #[arg(short)]
        k: usize,
        #[arg(short = 'R', long = "radius")]
        radius: usize,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Bounded malnormality probe
    MalProbe {
        #[arg(long)]
        rank: u32,
        #[arg(short = 'R', long = "radius")]
        radius: usize,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub detail: String,
}

impl CliError {
    fn new(kind: &str, detail: impl ToString) -> Self {
        CliError {
            kind: kind.to_string(),
            detail: detail.to_string(),
        }
    }
}

macro_rules! impl_from_error {
    ($ty:ty, $kindfn:expr) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::new($kindfn(&e), e)
            }
        }
    };
}

fn expr_kind(e: &ExprError) -> &'static str {
    match e {
        ExprError::Syntax { .. } => "expr.syntax",
        ExprError::GeneratorOutOfRange { .. } => "expr.generator-out-of-range",
        ExprError::NonUnitNegativePower => "expr.non-unit-negative-power",
        ExprError::ZeroDenominator(_) => "expr.zero-denominator",
        ExprError::ExponentTooLarge => "expr.exponent-too-large",
    }
}

fn word_kind(e: &crate::words::WordError) -> &'static str {
    match e {
        crate::words::WordError::ZeroLetter(_) => "word.zero-letter",
        crate::words::WordError::LetterOutOfRange { .. } => "word.letter-out-of-range",
        crate::words::WordError::RankMismatch(_, _) => "word.rank-mismatch",
        crate::words::WordError::IdentityInput => "word.identity-input",
    }
}

fn ring_kind(e: &crate::groupring::RingError) -> &'static str {
    match e {
        crate::groupring::RingError::RankMismatch(_, _) => "ring.rank-mismatch",
        crate::groupring::RingError::ZeroDivisor => "ring.zero-divisor",
        crate::groupring::RingError::BadVectorLength(_, _) => "ring.bad-vector-length",
        crate::groupring::RingError::Word(w) => word_kind(w),
    }
}

fn laurent_kind(e: &laurent::LaurentError) -> &'static str {
    match e {
        laurent::LaurentError::NvarsMismatch(_, _) => "laurent.nvars-mismatch",
        laurent::LaurentError::ZeroDivisor => "laurent.zero-divisor",
        laurent::LaurentError::InvalidP(_) => "laurent.invalid-p",
        laurent::LaurentError::ZeroVector => "laurent.zero-vector",
        laurent::LaurentError::NotMonomial => "laurent.not-monomial",
        laurent::LaurentError::EmptyTuple => "laurent.empty-tuple",
        laurent::LaurentError::MarkerNotPower => "laurent.marker-not-power",
        laurent::LaurentError::NotInKP => "laurent.not-in-kp",
        laurent::LaurentError::ValueExceedsMarker => "laurent.value-exceeds-marker",
        laurent::LaurentError::BothZero => "laurent.both-zero",
    }
}

fn codec_kind(e: &codec::CodecError) -> &'static str {
    use codec::CodecError::*;
    match e {
        RankTooSmall => "codec.rank-too-small",
        BadMarkerFamily(_) => "codec.bad-marker-family",
        EmptyTuple => "codec.empty-tuple",
        Unreduced(_) => "codec.unreduced-tuple",
        ChainTooShort => "codec.chain-too-short",
        ZeroElement => "codec.zero-element",
        IdentityInSupport => "codec.identity-in-support",
        Malformed(_) => "codec.malformed",
        NoCandidate(_) => "codec.no-candidate",
        AmbiguousCandidate(_) => "codec.ambiguous-candidate",
        ScalarMismatch => "codec.scalar-mismatch",
        ExpansionTooLarge => "codec.expansion-too-large",
        MultiplePreimages => "codec.multiple-preimages",
        Word(w) => word_kind(w),
        Ring(r) => ring_kind(r),
    }
}

fn geometry_kind(e: &geometry::GeometryError) -> &'static str {
    match e {
        geometry::GeometryError::Word(w) => word_kind(w),
        geometry::GeometryError::RankMismatch(_, _) => "geometry.rank-mismatch",
    }
}

fn json_kind(e: &JsonError) -> &'static str {
    match e {
        JsonError::CoefficientOverflow => "json.coefficient-overflow",
        JsonError::ZeroDenominator => "json.zero-denominator",
        JsonError::ZeroCoefficient => "json.zero-coefficient",
        JsonError::BadWord(_) => "json.bad-word",
        JsonError::BadExponents => "json.bad-exponents",
    }
}

impl_from_error!(ExprError, expr_kind);
impl_from_error!(crate::words::WordError, word_kind);
impl_from_error!(crate::groupring::RingError, ring_kind);
impl_from_error!(laurent::LaurentError, laurent_kind);
impl_from_error!(codec::CodecError, codec_kind);
impl_from_error!(geometry::GeometryError, geometry_kind);
impl_from_error!(JsonError, json_kind);

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::new("json.parse", e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new("io", e)
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn parse_letters(text: &str) -> Result<Vec<i32>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::new("json.letters", e))
}

fn parse_word_arg(rank: u32, text: &str) -> Result<Word, CliError> {
    let letters = parse_letters(text)?;
    Ok(parse_word(rank, &letters)?)
}

fn parse_word_list(rank: u32, text: &str) -> Result<Vec<Word>, CliError> {
    let lists: Vec<Vec<i32>> = serde_json::from_str(text).map_err(|e| CliError::new("json.words", e))?;
    lists
        .iter()
        .map(|l| parse_word(rank, l).map_err(CliError::from))
        .collect()
}

fn elem_json(f: &GroupRingElem) -> Result<Value, CliError> {
    Ok(serde_json::to_value(GroupRingElemJson::from_elem(f)?)?)
}

fn rational_json(c: &BigRational) -> Result<Value, CliError> {
    Ok(serde_json::to_value(RationalJson::from_rational(c)?)?)
}

fn division_json(verdict: DivisionVerdict) -> Result<Value, CliError> {
    Ok(match verdict {
        DivisionVerdict::Quotient(q) => json!({
            "verdict": "Quotient",
            "quotient": elem_json(&q)?,
        }),
        DivisionVerdict::NotDivisible => json!({"verdict": "NotDivisible"}),
        DivisionVerdict::Indeterminate => json!({"verdict": "Indeterminate"}),
    })
}

fn probe_json(outcome: ProbeOutcome) -> Value {
    match outcome {
        ProbeOutcome::Satisfied => json!({"verdict": "Satisfied"}),
        ProbeOutcome::ViolatedAt(w) => json!({
            "verdict": "ViolatedAt",
            "witness": w.letters(),
        }),
        ProbeOutcome::Inconclusive => json!({"verdict": "Inconclusive"}),
    }
}

fn psi_samples(count: usize, seed: Option<u64>) -> Vec<BigRational> {
    match seed {
        None => (1..=count as i64)
            .map(|n| BigRational::from_i64(n).unwrap())
            .collect(),
        Some(s) => {
            // splitmix64 over small nonzero integers, deterministic in the seed
            let mut state = s;
            let mut next = || {
                state = state.wrapping_add(0x9E3779B97F4A7C15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
                z ^ (z >> 31)
            };
            (0..count)
                .map(|_| {
                    let v = (next() % 1_000_000) as i64 + 1;
                    BigRational::from_i64(v).unwrap()
                })
                .collect()
        }
    }
}

fn dispatch(cmd: Command) -> Result<Value, CliError> {
    match cmd {
        Command::Eval { rank, expr: text } => {
            let f = expr::eval_str(&text, rank)?;
            elem_json(&f)
        }
        Command::Divl { rank, budget, w, d } => {
            let we = expr::eval_str(&w, rank)?;
            let de = expr::eval_str(&d, rank)?;
            division_json(divide_exact(&we, &de, Side::Left, budget)?)
        }
        Command::Divr { rank, budget, w, d } => {
            let we = expr::eval_str(&w, rank)?;
            let de = expr::eval_str(&d, rank)?;
            division_json(divide_exact(&we, &de, Side::Right, budget)?)
        }
        Command::Unit { rank, expr: text } => {
            let f = expr::eval_str(&text, rank)?;
            match is_trivial_unit(&f) {
                Some((alpha, g)) => Ok(json!({
                    "unit": true,
                    "alpha": rational_json(&alpha)?,
                    "word": g.letters(),
                    "field_unit": field_unit_predicate(&f),
                })),
                None => Ok(json!({"unit": false, "field_unit": field_unit_predicate(&f)})),
            }
        }
        Command::Irred { rank, expr: text } => {
            let f = expr::eval_str(&text, rank)?;
            match irreducibility_certificate(&f) {
                Certificate::Irreducible => Ok(json!({"verdict": "Irreducible"})),
                Certificate::Reducible { left, right } => Ok(json!({
                    "verdict": "Reducible",
                    "witness": {"left": elem_json(&left)?, "right": elem_json(&right)?},
                })),
                Certificate::Unknown => Ok(json!({"verdict": "Unknown"})),
            }
        }
        Command::Rigid { rank, input } => {
            let words = parse_word_list(rank, &read_input(&input)?)?;
            Ok(json!({"rigid": rigidity_certificate(&words)}))
        }
        Command::Centralizer { rank, word } => {
            let g = parse_word_arg(rank, &word)?;
            let (root, exponent) = centralizer_root(&g)?;
            Ok(json!({"root": root.letters(), "exponent": exponent}))
        }
        Command::OrderCmp { rank, u, v } => {
            let uw = parse_word_arg(rank, &u)?;
            let vw = parse_word_arg(rank, &v)?;
            let verdict = bergman_cmp(&uw, &vw).map_err(|e| CliError::new("order.internal", e))?;
            Ok(match verdict {
                OrderVerdict::Less(d) => json!({"verdict": "Less", "degree": d}),
                OrderVerdict::Equal => json!({"verdict": "Equal"}),
                OrderVerdict::Greater(d) => json!({"verdict": "Greater", "degree": d}),
            })
        }
        Command::EncodeWord {
            rank,
            tuple,
            expanded,
        } => {
            let letters = parse_letters(&tuple)?;
            let code = codec::encode_word(rank, &letters)?;
            let j = if expanded {
                let w = code.expand()?;
                WordCodeJson::from_code_expanded(&code, &w)?
            } else {
                WordCodeJson::from_code(&code)?
            };
            Ok(serde_json::to_value(j)?)
        }
        Command::DecodeWord { rank, input } => {
            let j: WordCodeJson = serde_json::from_str(&read_input(&input)?)?;
            if j.rank != rank {
                return Err(CliError::new("word.rank-mismatch", "code rank differs from --rank"));
            }
            let letters = match j.to_code()? {
                Some(code) => codec::decode_word(&code)?,
                None => {
                    let w = j
                        .w
                        .as_ref()
                        .ok_or_else(|| CliError::new("codec.malformed", "neither stages nor w present"))?
                        .to_elem()?;
                    codec::decode_word_expanded(&w, j.m)?
                }
            };
            Ok(json!({"tuple": letters}))
        }
        Command::PackFq {
            rank,
            expr: text,
            expanded,
        } => {
            let f = expr::eval_str(&text, rank)?;
            let constant = f.constant_coeff();
            let stripped = f
                .sub(&GroupRingElem::scalar(rank, constant.clone()))
                .expect("same rank");
            let code = codec::pack_fq(&stripped)?;
            let mut j = FqCodeJson::from_code(&code, &constant)?;
            if expanded {
                let w = code.expand()?;
                j.stages = None;
                j.w = Some(GroupRingElemJson::from_elem(&w)?);
            }
            Ok(serde_json::to_value(j)?)
        }
        Command::CheckFq {
            rank,
            input,
            expr: text,
        } => {
            let j: FqCodeJson = serde_json::from_str(&read_input(&input)?)?;
            let f = expr::eval_str(&text, rank)?;
            let constant = j.constant.to_rational()?;
            let stripped = f
                .sub(&GroupRingElem::scalar(rank, constant))
                .expect("same rank");
            let ok = match j.to_code()? {
                Some(code) => codec::check_fq(&code, &stripped),
                None => return Err(CliError::new("codec.malformed", "check-fq needs staged codes")),
            };
            Ok(json!({"ok": ok}))
        }
        Command::AmChain {
            rank,
            m,
            verify,
            input,
        } => {
            if verify {
                let j: ChainCodeJson = serde_json::from_str(&read_input(&input)?)?;
                let chain = j.to_code()?;
                let ok = codec::am_chain_verify(&chain, m)?;
                Ok(json!({"ok": ok}))
            } else {
                let chain = codec::am_chain(rank, m)?;
                Ok(serde_json::to_value(ChainCodeJson::from_code(&chain)?)?)
            }
        }
        Command::TupleEncode { input } => {
            #[derive(serde::Deserialize)]
            struct In {
                tuple: Vec<RationalJson>,
                base: LaurentPolyJson,
            }
            let parsed: In = serde_json::from_str(&read_input(&input)?)?;
            let tuple: Vec<BigRational> = parsed
                .tuple
                .iter()
                .map(|r| r.to_rational())
                .collect::<Result<_, _>>()?;
            let base = parsed.base.to_poly()?;
            let code = laurent::tuple_encode(&tuple, &base)?;
            Ok(serde_json::to_value(TupleCodeJson::from_code(&code)?)?)
        }
        Command::TupleDecode { input } => {
            let j: TupleCodeJson = serde_json::from_str(&read_input(&input)?)?;
            let code = j.to_code()?;
            let tuple = laurent::tuple_decode(&code)?;
            let out: Vec<Value> = tuple
                .iter()
                .map(rational_json)
                .collect::<Result<_, _>>()?;
            Ok(json!({"tuple": out}))
        }
        Command::Nu { input } => {
            #[derive(serde::Deserialize)]
            struct In {
                code: TupleCodeJson,
                target: LaurentPolyJson,
            }
            let parsed: In = serde_json::from_str(&read_input(&input)?)?;
            let code = parsed.code.to_code()?;
            let target = parsed.target.to_poly()?;
            let moved = laurent::nu_transport(&code, &target)?;
            Ok(serde_json::to_value(TupleCodeJson::from_code(&moved)?)?)
        }
        Command::PsiCheck {
            input,
            samples,
            seed,
        } => {
            #[derive(serde::Deserialize)]
            struct In {
                q: LaurentPolyJson,
                p: LaurentPolyJson,
            }
            let parsed: In = serde_json::from_str(&read_input(&input)?)?;
            let qq = parsed.q.to_poly()?;
            let pp = parsed.p.to_poly()?;
            let sample_values = psi_samples(samples, seed);
            match laurent::psi_check(&qq, &pp, &sample_values)? {
                PsiOutcome::Pass => Ok(json!({"verdict": "Pass"})),
                PsiOutcome::Fail { witness } => Ok(json!({
                    "verdict": "Fail",
                    "witness": rational_json(&witness)?,
                })),
            }
        }
        Command::InKp { input } => {
            #[derive(serde::Deserialize)]
            struct In {
                q: LaurentPolyJson,
                p: LaurentPolyJson,
            }
            let parsed: In = serde_json::from_str(&read_input(&input)?)?;
            let qq = parsed.q.to_poly()?;
            let pp = parsed.p.to_poly()?;
            match laurent::in_kp(&qq, &pp)? {
                Some(coeffs) => {
                    let out: Vec<Value> = coeffs
                        .iter()
                        .map(rational_json)
                        .collect::<Result<_, _>>()?;
                    Ok(json!({"member": true, "coeffs": out}))
                }
                None => Ok(json!({"member": false})),
            }
        }
        Command::Metric { rank, u, v } => {
            let uw = parse_word_arg(rank, &u)?;
            let vw = parse_word_arg(rank, &v)?;
            Ok(json!({"distance": geometry::word_metric(&uw, &vw)?}))
        }
        Command::Geodesic { rank, u, v } => {
            let uw = parse_word_arg(rank, &u)?;
            let vw = parse_word_arg(rank, &v)?;
            Ok(json!({"letters": geometry::geodesic(&uw, &vw)?}))
        }
        Command::Fold { rank, input } => {
            let gens = parse_word_list(rank, &read_input(&input)?)?;
            let graph = geometry::fold(rank, &gens)?;
            Ok(serde_json::to_value(CoreGraphJson::from_graph(&graph))?)
        }
        Command::Member { rank, word, input } => {
            let h = parse_word_arg(rank, &word)?;
            let gens = parse_word_list(rank, &read_input(&input)?)?;
            Ok(json!({"member": geometry::member(&h, &gens)?}))
        }
        Command::IsBasis { rank, input } => {
            let gens = parse_word_list(rank, &read_input(&input)?)?;
            Ok(json!({"basis": geometry::is_free_basis(rank, &gens)?}))
        }
        Command::QcProbe {
            rank,
            k,
            radius,
            input,
        } => {
            let gens = parse_word_list(rank, &read_input(&input)?)?;
            Ok(probe_json(geometry::quasiconvexity_probe(
                rank, &gens, k, radius,
            )?))
        }
        Command::MalProbe { rank, radius, input } => {
            let gens = parse_word_list(rank, &read_input(&input)?)?;
            Ok(probe_json(geometry::malnormality_probe(rank, &gens, radius)?))
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(value) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
            0
        }
        Err(e) => {
            let doc = json!({"error": {"kind": e.kind, "detail": e.detail}});
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            1
        }
    }
}
