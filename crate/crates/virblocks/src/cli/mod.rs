//! Command-line front end. Every command prints one JSON document (or a
//! plain-text rendering with `--format text`). Exit codes: 0 success, 1 bad
//! input data (selection rules, domains), 2 usage errors.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::assoc::{assoc_check_arith, descendant_assoc_check, Arith, AssocReport, CheckParams, CplxJson, Insertion};
use crate::qgroup::{cg_embed, cg_project, highest_weight_space, sixj_table, LinearMap, QGVector};
use crate::scalars::config::{default_kappa, CONFIG};
use crate::scalars::RatFunc;
use crate::series::compose_blocks;
use crate::virasoro::{fusion_set, singular_vector, GammaProductJson};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "virblocks", version, about = "Exact U_q(sl2) and Virasoro data for conformal blocks")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Allowed ν in the first-row fusion of λ and μ.
    Fusion {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        m: u32,
    },
    /// Clebsch–Gordan embedding M_σ → M_λ⊗M_μ, or its projection with --project.
    Cg {
        #[arg(long)]
        sigma: u32,
        #[arg(long)]
        lambda: u32,
        #[arg(long)]
        mu: u32,
        #[arg(long)]
        project: bool,
    },
    /// All 6j symbols for (σ, λ3, λ2, λ1), keyed by (κ, ν).
    Sixj {
        #[arg(long)]
        sigma: u32,
        #[arg(long)]
        l3: u32,
        #[arg(long)]
        l2: u32,
        #[arg(long)]
        l1: u32,
    },
    /// PBW expansion of the singular vector S_λ.
    Singular {
        #[arg(long)]
        lambda: u32,
    },
    /// Normalized block series, optionally evaluated.
    Block {
        #[arg(long, value_delimiter = ',', required = true)]
        lambdas: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        sigmas: Vec<u32>,
        #[arg(long, default_value_t = 12)]
        trunc: i64,
        /// Points 0 < x_1 < … < x_N.
        #[arg(long, value_delimiter = ',')]
        eval: Option<Vec<f64>>,
        #[arg(long)]
        kappa: Option<f64>,
    },
    /// Compare the two expansion regimes of the N=2 block.
    AssocCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<u32>,
        #[arg(long)]
        sigma: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [0.8, 1.0])]
        point: Vec<f64>,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long, default_value_t = CONFIG.assoc_trunc as i64)]
        trunc: i64,
        #[arg(long, default_value_t = CONFIG.assoc_tol)]
        tol: f64,
        /// Descendant word as slot:partition, e.g. bra:2 or w0:1,1; repeatable.
        #[arg(long = "insert")]
        insert: Vec<String>,
        #[arg(long, value_enum, default_value = "exact")]
        arith: ArithArg,
    },
    /// Basis of the highest-weight vectors of weight σ in a tensor product.
    HwSpace {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<u32>,
        #[arg(long)]
        sigma: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArithArg {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionJson {
    pub allowed: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub index: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub labels: Vec<u32>,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularTermJson {
    pub partition: Vec<u32>,
    pub coef_num: String,
    pub coef_den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: String,
    pub den: String,
}

impl From<&RatFunc> for RatFuncJson {
    fn from(r: &RatFunc) -> Self {
        RatFuncJson { num: r.num().to_string(), den: r.den().to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub offset: Vec<i64>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockJson {
    pub delta: Vec<RatFuncJson>,
    pub coeffs: Vec<CoeffJson>,
    pub prefactor_gammas: Vec<GammaProductJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<CplxJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HwSpaceJson {
    pub shape: Vec<u32>,
    pub sigma: u32,
    pub dim: usize,
    pub basis: Vec<Vec<EntryJson>>,
}

fn entries_of(v: &QGVector, prefix: &[u32]) -> Vec<EntryJson> {
    v.entries()
        .iter()
        .map(|(i, c)| {
            let mut index = prefix.to_vec();
            index.extend(i);
            EntryJson { index, num: c.num().to_string(), den: c.den().to_string() }
        })
        .collect()
}

fn map_table(m: &LinearMap) -> TableJson {
    let mut labels = m.domain.clone();
    labels.extend(&m.codomain);
    let mut entries = Vec::new();
    for (idx, img) in QGVector::all_indices(&m.domain).iter().zip(&m.images) {
        entries.extend(entries_of(img, idx));
    }
    TableJson { labels, entries }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn kappa_or_default(k: Option<f64>) -> Result<f64> {
    let k = k.unwrap_or_else(default_kappa);
    if !(k.is_finite() && k > 0.0) {
        return Err(usage(format!("κ must be positive and finite, got {k}")));
    }
    Ok(k)
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable output"),
        Format::Text => text(),
    }
}

fn table_text(t: &TableJson) -> String {
    let mut s = format!("labels {:?}\n", t.labels);
    for e in &t.entries {
        s.push_str(&format!("{:?}: ({}) / ({})\n", e.index, e.num, e.den));
    }
    s
}

fn report_text(r: &AssocReport) -> String {
    let mut s = format!("labels {:?} sigma {} point {:?} kappa {} trunc {:?}\n", r.labels, r.sigma, r.point, r.kappa0, r.trunc);
    if !r.insertions.is_empty() {
        s.push_str(&format!("insertions {}\n", r.insertions.join(" ")));
    }
    s.push_str(&format!("A = {:.15e}{:+.3e}i\nB = {:.15e}{:+.3e}i\n", r.value_a.re, r.value_a.im, r.value_b.re, r.value_b.im));
    s.push_str(&format!("rel_diff {:.3e} (tol {:.1e}) tails {:.2e} {:.2e}\n", r.rel_diff, r.tolerance, r.tail_estimate[0], r.tail_estimate[1]));
    s.push_str(&format!("verdict {}\n", if r.verdict { "pass" } else { "fail" }));
    s
}

/// Executes one parsed command and returns its rendered output.
pub fn execute(cli: &Cli) -> Result<String> {
    let f = cli.format;
    Ok(match &cli.command {
        Command::Fusion { l, m } => {
            let out = FusionJson { allowed: fusion_set(*l, *m) };
            emit(f, &out, || format!("{}\n", out.allowed.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")))
        }
        Command::Cg { sigma, lambda, mu, project } => {
            let m = if *project { cg_project(*lambda, *mu, *sigma)? } else { cg_embed(*sigma, *lambda, *mu)? };
            let t = map_table(&m);
            emit(f, &t, || table_text(&t))
        }
        Command::Sixj { sigma, l3, l2, l1 } => {
            let tab = sixj_table(*sigma, *l3, *l2, *l1)?;
            let entries = tab
                .entries
                .iter()
                .map(|(k, c)| EntryJson { index: vec![k.4, k.5], num: c.num().to_string(), den: c.den().to_string() })
                .collect();
            let t = TableJson { labels: vec![*sigma, *l3, *l2, *l1], entries };
            emit(f, &t, || table_text(&t))
        }
        Command::Singular { lambda } => {
            let v = singular_vector(*lambda);
            let out: Vec<SingularTermJson> = v
                .entries
                .iter()
                .rev()
                .map(|(p, c)| SingularTermJson { partition: p.parts().to_vec(), coef_num: c.num().to_string(), coef_den: c.den().to_string() })
                .collect();
            emit(f, &out, || out.iter().map(|t| format!("{:?}: ({}) / ({})\n", t.partition, t.coef_num, t.coef_den)).collect())
        }
        Command::Block { lambdas, sigmas, trunc, eval, kappa } => {
            let s = compose_blocks(lambdas, sigmas, *trunc)?;
            let value = match eval {
                Some(points) => Some(CplxJson::from(s.eval(kappa_or_default(*kappa)?, points)?.value)),
                None => None,
            };
            let out = BlockJson {
                delta: s.exponent_base().iter().map(RatFuncJson::from).collect(),
                coeffs: s
                    .coeffs()
                    .iter()
                    .map(|(o, c)| CoeffJson { offset: o.clone(), num: c.num().to_string(), den: c.den().to_string() })
                    .collect(),
                prefactor_gammas: s.prefactor.iter().map(|b| b.to_json()).collect(),
                value,
            };
            emit(f, &out, || {
                let mut t = String::new();
                for (i, d) in out.delta.iter().enumerate() {
                    t.push_str(&format!("delta_{} = ({}) / ({})\n", i + 1, d.num, d.den));
                }
                for c in &out.coeffs {
                    t.push_str(&format!("{:?}: ({}) / ({})\n", c.offset, c.num, c.den));
                }
                if let Some(v) = &out.value {
                    t.push_str(&format!("value {:.15e}{:+.3e}i\n", v.re, v.im));
                }
                t
            })
        }
        Command::AssocCheck { labels, sigma, point, kappa, trunc, tol, insert, arith } => {
            let labels: [u32; 4] = labels.as_slice().try_into().map_err(|_| usage("--labels needs four values"))?;
            let point: [f64; 2] = point.as_slice().try_into().map_err(|_| usage("--point needs two values"))?;
            if tol.is_nan() || *tol <= 0.0 {
                return Err(usage("--tol must be positive"));
            }
            let arith = match arith {
                ArithArg::Exact => Arith::Exact,
                ArithArg::Float => Arith::Float,
            };
            let kappa0 = kappa_or_default(*kappa)?;
            let report = if insert.is_empty() {
                assoc_check_arith(labels, *sigma, point, kappa0, *trunc, *tol, arith)?
            } else {
                let ins: Vec<Insertion> = insert.iter().map(|s| s.parse()).collect::<Result<_>>()?;
                descendant_assoc_check(labels, *sigma, &ins, &CheckParams { point, kappa0, trunc: *trunc, tol: *tol, arith })?
            };
            emit(f, &report, || report_text(&report))
        }
        Command::HwSpace { shape, sigma } => {
            if shape.is_empty() {
                return Err(usage("--shape needs at least one label"));
            }
            let basis = highest_weight_space(shape, *sigma);
            let out = HwSpaceJson {
                shape: shape.clone(),
                sigma: *sigma,
                dim: basis.len(),
                basis: basis.iter().map(|v| entries_of(v, &[])).collect(),
            };
            emit(f, &out, || {
                let mut t = format!("dim {}\n", out.dim);
                for (k, v) in out.basis.iter().enumerate() {
                    for e in v {
                        t.push_str(&format!("v{k} {:?}: ({}) / ({})\n", e.index, e.num, e.den));
                    }
                }
                t
            })
        }
    })
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = writeln!(out, "{}", text.trim_end());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_domain() {
                1
            } else {
                2
            }
        }
    }
}
