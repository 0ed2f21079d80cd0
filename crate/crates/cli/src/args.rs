//! Command-line grammar and the canonical form of a request.

use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use takiff_core::rootsys::{RootDatum, Series, Weight};
use takiff_core::takiff::SuperWeight;

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(name = "takiff", version, about = "Exact invariants of Takiff superalgebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CategoryArg {
    F,
    O,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineArg {
    Closed,
    Oracle,
    Auto,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuiverArg {
    F,
    C,
    Compare,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraArg {
    G,
    Gl,
}

/// A root system type and rank.
#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct DatumArgs {
    /// Series letter A–G.
    #[arg(long = "type", value_parser = parse_series)]
    pub series: Series,
    #[arg(long)]
    pub rank: usize,
}

impl DatumArgs {
    pub fn datum(&self) -> takiff_core::Result<RootDatum> {
        RootDatum::new(self.series, self.rank)
    }

    fn push(&self, out: &mut Vec<String>) {
        push_opt(out, "type", self.series.letter());
        push_opt(out, "rank", self.rank);
    }
}

/// A window of dominant super weights.
#[derive(Args, Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowArgs {
    #[arg(long, default_value_t = 2)]
    pub max_coord: i64,
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    pub min_a: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub max_a: i64,
}

impl WindowArgs {
    fn push(&self, out: &mut Vec<String>) {
        push_opt(out, "max-coord", self.max_coord);
        push_opt(out, "min-a", self.min_a);
        push_opt(out, "max-a", self.max_a);
    }
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Cartan matrix, roots and Coxeter data.
    RootDatum(DatumArgs),
    /// Minuscule weights, or the minuscule representative of `--weight`.
    Minuscule {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<WeightArg>,
    },
    /// Number of blocks; `--labels` lists them.
    Blocks {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_enum, default_value_t = CategoryArg::F)]
        category: CategoryArg,
        #[arg(long)]
        labels: bool,
    },
    /// Block label of a simple module.
    BlockLabel {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        weight: SuperWeightArg,
        #[arg(long, value_enum, default_value_t = CategoryArg::F)]
        category: CategoryArg,
    },
    /// Chain of nonzero standard multiplicities from `--weight` to its block label.
    Linkage {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        weight: SuperWeightArg,
    },
    /// `[Δ(x) : L(y)]`, or all factors of `Δ(x)` without `--y`.
    DeltaMult {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: SuperWeightArg,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<SuperWeightArg>,
    },
    /// `[P(x) : L(y)]`.
    ProjMult {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: SuperWeightArg,
        #[arg(long, allow_hyphen_values = true)]
        y: SuperWeightArg,
    },
    /// Highest weight of the dual simple module.
    Dual {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        weight: SuperWeightArg,
    },
    /// `dim Ext^i(L(source), L(target))`.
    Ext {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long = "i")]
        i: usize,
        #[arg(long, allow_hyphen_values = true)]
        source: SuperWeightArg,
        #[arg(long, allow_hyphen_values = true)]
        target: SuperWeightArg,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Also report the engine used.
        #[arg(long)]
        detail: bool,
    },
    /// `dim Ext¹` in the finite-dimensional category.
    Ext1 {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        source: SuperWeightArg,
        #[arg(long, allow_hyphen_values = true)]
        target: SuperWeightArg,
    },
    /// `dim Ext¹` between the matching finite conformal modules.
    Ext1Conformal {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        source: SuperWeightArg,
        #[arg(long, allow_hyphen_values = true)]
        target: SuperWeightArg,
    },
    /// Ext¹ quiver of the block containing `--block` inside a window.
    Quiver {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        block: SuperWeightArg,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_enum, default_value_t = QuiverArg::F)]
        kind: QuiverArg,
    },
    /// Off-diagonal Ext check on sampled pairs of a block.
    KoszulCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        block: SuperWeightArg,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 3)]
        imax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run on the principal block or in rank one as well.
        #[arg(long)]
        any_block: bool,
    },
    /// Ad-nilpotent ideals of the Borel subalgebra.
    Ideals(DatumArgs),
    /// Number of conjugacy classes of Borel subalgebras.
    BorelCount {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        detail: bool,
    },
    /// Every Borel subalgebra with even part `b ⊕ Cξ∂_ξ`.
    BorelClassify(DatumArgs),
    /// A point `h` whose positive roots are exactly the ideal.
    ShiWitness {
        #[command(flatten)]
        datum: DatumArgs,
        /// Positive-root indices, comma separated; empty for the zero ideal.
        #[arg(long, default_value = "", value_parser = parse_index_list)]
        ideal: IndexList,
    },
    /// Dimension of the commutant of `g` or `gl(n|n)` on `V^{⊗r}`.
    Commutant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = AlgebraArg::G)]
        algebra: AlgebraArg,
    },
    /// Rank of the symmetric group action on `V^{⊗r}`.
    PhiImage {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Injectivity and surjectivity of `C S_r → End_g(V^{⊗r})`.
    #[command(name = "thmIT")]
    Verdict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Criterion numbers to run, comma separated.
        #[arg(long, value_parser = parse_index_list)]
        only: Option<IndexList>,
    },
}

/// A plain weight `c1,…,cr`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightArg(pub Vec<i64>);

impl WeightArg {
    pub fn weight(&self, rank: usize) -> takiff_core::Result<Weight> {
        check_len(self.0.len(), rank)?;
        Ok(Weight(self.0.clone()))
    }
}

impl FromStr for WeightArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_ints(s).map(WeightArg)
    }
}

impl fmt::Display for WeightArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Weight(self.0.clone()))
    }
}

/// A super weight `c1,…,cr;a`. The form `c1,…,cr,a` is accepted as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperWeightArg {
    pub coords: Vec<i64>,
    pub a: i64,
}

impl SuperWeightArg {
    pub fn super_weight(&self, rank: usize) -> takiff_core::Result<SuperWeight> {
        check_len(self.coords.len(), rank)?;
        Ok(SuperWeight::new(Weight(self.coords.clone()), self.a))
    }
}

impl FromStr for SuperWeightArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (coords, a) = match s.split_once(';') {
            Some((c, a)) => (
                parse_ints(c)?,
                a.trim().parse().map_err(|_| format!("malformed δ coefficient {a:?} in {s:?}"))?,
            ),
            None => {
                let mut v = parse_ints(s)?;
                let a = v.pop().ok_or_else(|| format!("malformed super weight {s:?}"))?;
                (v, a)
            }
        };
        if coords.is_empty() {
            return Err(format!("super weight {s:?} has no weight coordinates; expected c1,…,cr;a"));
        }
        Ok(SuperWeightArg { coords, a })
    }
}

impl fmt::Display for SuperWeightArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", Weight(self.coords.clone()), self.a)
    }
}

/// Comma-separated nonnegative integers; may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexList(pub Vec<usize>);

impl fmt::Display for IndexList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

fn parse_index_list(s: &str) -> Result<IndexList, String> {
    if s.trim().is_empty() {
        return Ok(IndexList::default());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("malformed index {t:?} in {s:?}")))
        .collect::<Result<_, _>>()
        .map(IndexList)
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("malformed weight coordinate {t:?} in {s:?}; expected c1,…,cr;a"))
        })
        .collect()
}

fn parse_series(s: &str) -> Result<Series, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Series::from_letter(c).ok_or_else(|| format!("unknown type {s:?}; use one of A B C D E F G")),
        _ => Err(format!("unknown type {s:?}; use one of A B C D E F G")),
    }
}

fn check_len(got: usize, expected: usize) -> takiff_core::Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(takiff_core::Error::WrongRank { expected, got })
    }
}

fn push_opt(out: &mut Vec<String>, name: &str, value: impl fmt::Display) {
    out.push(format!("--{name}"));
    out.push(value.to_string());
}

fn push_flag(out: &mut Vec<String>, name: &str, on: bool) {
    if on {
        out.push(format!("--{name}"));
    }
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

impl Cli {
    /// Canonical argument list: every option spelled out, weights as
    /// `c1,…,cr;a`. Parsing it yields an equal `Cli`.
    pub fn canonical_args(&self) -> Vec<String> {
        let mut out = vec!["takiff".to_string()];
        push_opt(&mut out, "format", value_name(&self.format));
        let name = self.command_name();
        out.push(name.to_string());
        match &self.command {
            Command::RootDatum(d) | Command::Ideals(d) | Command::BorelClassify(d) => d.push(&mut out),
            Command::Minuscule { datum, weight } => {
                datum.push(&mut out);
                if let Some(w) = weight {
                    push_opt(&mut out, "weight", w);
                }
            }
            Command::Blocks { datum, category, labels } => {
                datum.push(&mut out);
                push_opt(&mut out, "category", value_name(category));
                push_flag(&mut out, "labels", *labels);
            }
            Command::BlockLabel { datum, weight, category } => {
                datum.push(&mut out);
                push_opt(&mut out, "weight", weight);
                push_opt(&mut out, "category", value_name(category));
            }
            Command::Linkage { datum, weight } | Command::Dual { datum, weight } => {
                datum.push(&mut out);
                push_opt(&mut out, "weight", weight);
            }
            Command::DeltaMult { datum, x, y } => {
                datum.push(&mut out);
                push_opt(&mut out, "x", x);
                if let Some(y) = y {
                    push_opt(&mut out, "y", y);
                }
            }
            Command::ProjMult { datum, x, y } => {
                datum.push(&mut out);
                push_opt(&mut out, "x", x);
                push_opt(&mut out, "y", y);
            }
            Command::Ext { datum, i, source, target, engine, detail } => {
                datum.push(&mut out);
                push_opt(&mut out, "i", i);
                push_opt(&mut out, "source", source);
                push_opt(&mut out, "target", target);
                push_opt(&mut out, "engine", value_name(engine));
                push_flag(&mut out, "detail", *detail);
            }
            Command::Ext1 { datum, source, target } | Command::Ext1Conformal { datum, source, target } => {
                datum.push(&mut out);
                push_opt(&mut out, "source", source);
                push_opt(&mut out, "target", target);
            }
            Command::Quiver { datum, block, window, kind } => {
                datum.push(&mut out);
                push_opt(&mut out, "block", block);
                window.push(&mut out);
                push_opt(&mut out, "kind", value_name(kind));
            }
            Command::KoszulCheck { datum, block, window, pairs, imax, seed, any_block } => {
                datum.push(&mut out);
                push_opt(&mut out, "block", block);
                window.push(&mut out);
                push_opt(&mut out, "pairs", pairs);
                push_opt(&mut out, "imax", imax);
                push_opt(&mut out, "seed", seed);
                push_flag(&mut out, "any-block", *any_block);
            }
            Command::BorelCount { datum, detail } => {
                datum.push(&mut out);
                push_flag(&mut out, "detail", *detail);
            }
            Command::ShiWitness { datum, ideal } => {
                datum.push(&mut out);
                out.push(format!("--ideal={ideal}"));
            }
            Command::Commutant { n, r, algebra } => {
                push_opt(&mut out, "n", n);
                push_opt(&mut out, "r", r);
                push_opt(&mut out, "algebra", value_name(algebra));
            }
            Command::PhiImage { n, r } | Command::Verdict { n, r } => {
                push_opt(&mut out, "n", n);
                push_opt(&mut out, "r", r);
            }
            Command::Selftest { only } => {
                if let Some(o) = only {
                    out.push(format!("--only={o}"));
                }
            }
        }
        out
    }

    /// The canonical arguments joined by spaces.
    pub fn canonical(&self) -> String {
        self.canonical_args()[1..].join(" ")
    }

    pub fn command_name(&self) -> &'static str {
        match &self.command {
            Command::RootDatum(_) => "root-datum",
            Command::Minuscule { .. } => "minuscule",
            Command::Blocks { .. } => "blocks",
            Command::BlockLabel { .. } => "block-label",
            Command::Linkage { .. } => "linkage",
            Command::DeltaMult { .. } => "delta-mult",
            Command::ProjMult { .. } => "proj-mult",
            Command::Dual { .. } => "dual",
            Command::Ext { .. } => "ext",
            Command::Ext1 { .. } => "ext1",
            Command::Ext1Conformal { .. } => "ext1-conformal",
            Command::Quiver { .. } => "quiver",
            Command::KoszulCheck { .. } => "koszul-check",
            Command::Ideals(_) => "ideals",
            Command::BorelCount { .. } => "borel-count",
            Command::BorelClassify(_) => "borel-classify",
            Command::ShiWitness { .. } => "shi-witness",
            Command::Commutant { .. } => "commutant",
            Command::PhiImage { .. } => "phi-image",
            Command::Verdict { .. } => "thmIT",
            Command::Selftest { .. } => "selftest",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn super_weight_forms() {
        let a: SuperWeightArg = "1,0;-2".parse().unwrap();
        assert_eq!(a, SuperWeightArg { coords: vec![1, 0], a: -2 });
        let b: SuperWeightArg = "1,0,-2".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1,0;-2");
        assert!("3".parse::<SuperWeightArg>().is_err());
        assert!("1,x;2".parse::<SuperWeightArg>().is_err());
        assert!("1;".parse::<SuperWeightArg>().is_err());
        assert!(a.super_weight(3).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let argv = ["takiff", "ext", "--type", "a", "--rank", "1", "--i", "1", "--source", "0,0", "--target", "0,1"];
        let cli = Cli::try_parse_from(argv).unwrap();
        assert_eq!(
            cli.canonical(),
            "--format json ext --type A --rank 1 --i 1 --source 0;0 --target 0;1 --engine auto"
        );
        let again = Cli::try_parse_from(cli.canonical_args()).unwrap();
        assert_eq!(again, cli);
    }
}
