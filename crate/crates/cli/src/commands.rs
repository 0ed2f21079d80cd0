//! Subcommand implementations. Each returns the records to print.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use takiff_core::blocks::{self, Category};
use takiff_core::ext::{self, Engine, ExtEngine, ExtQuery, QuiverKind, Window};
use takiff_core::ideals::{self, BorelKind, RootIdeal};
use takiff_core::invariants::{self, Algebra};
use takiff_core::rootsys::RootDatum;
use takiff_core::takiff::{SuperWeight, Takiff};
use takiff_core::{Error, Limits};

use crate::acceptance;
use crate::args::{AlgebraArg, CategoryArg, Command, EngineArg, QuiverArg, WindowArgs};
use crate::output::{big, rational, Record};
use crate::CliError;

fn record(v: Value) -> Record {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("records are objects"),
    }
}

fn category(c: CategoryArg) -> Category {
    match c {
        CategoryArg::F => Category::F,
        CategoryArg::O => Category::O,
    }
}

fn window(w: &WindowArgs) -> Window {
    Window { max_coord: w.max_coord, min_a: w.min_a, max_a: w.max_a }
}

fn labels_json(rd: &RootDatum) -> Vec<Value> {
    blocks::block_labels(rd).iter().map(|l| Value::from(l.to_string())).collect()
}

/// Up to `count` pairs `(x, y)` of vertices with `−1 ≤ a(x) − a(y) ≤ imax + 1`,
/// drawn without replacement by a seeded generator and kept in vertex order.
pub fn sample_pairs(vertices: &[SuperWeight], count: usize, imax: usize, seed: u64) -> Vec<(SuperWeight, SuperWeight)> {
    let mut candidates = Vec::new();
    for x in vertices {
        for y in vertices {
            let d = x.a - y.a;
            if (-1..=imax as i64 + 1).contains(&d) {
                candidates.push((x.clone(), y.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, candidates.len(), count.min(candidates.len())).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| candidates[i].clone()).collect()
}

pub fn execute(command: &Command, limits: &Limits) -> Result<Vec<Record>, CliError> {
    Ok(match command {
        Command::RootDatum(d) => {
            let rd = d.datum()?;
            vec![record(json!({
                "type": rd.name(),
                "rank": rd.rank(),
                "cartan": rd.cartan(),
                "det": big(&rd.cartan_determinant()),
                "num_positive_roots": rd.num_positive_roots(),
                "dim": 2 * rd.num_positive_roots() + rd.rank(),
                "positive_roots": rd.positive_roots(),
                "coxeter_number": rd.coxeter_number(),
                "exponents": rd.exponents(),
                "weyl_group_order": big(&BigInt::from(rd.weyl_group_order())),
                "theta": rd.theta().to_string(),
                "rho": rd.rho().to_string(),
            }))]
        }
        Command::Minuscule { datum, weight } => {
            let rd = datum.datum()?;
            match weight {
                None => rd
                    .minuscule_weights()
                    .iter()
                    .map(|w| record(json!({ "weight": w.to_string() })))
                    .collect(),
                Some(w) => {
                    let w = w.weight(rd.rank())?;
                    vec![record(json!({
                        "weight": w.to_string(),
                        "representative": rd.minuscule_representative(&w).to_string(),
                    }))]
                }
            }
        }
        Command::Blocks { datum, category: c, labels } => {
            let rd = datum.datum()?;
            if *labels {
                labels_json(&rd).into_iter().map(|l| record(json!({ "label": l }))).collect()
            } else {
                vec![record(json!({ "num_blocks": blocks::num_blocks(&rd, category(*c)) }))]
            }
        }
        Command::BlockLabel { datum, weight, category: c } => {
            let rd = datum.datum()?;
            let x = weight.super_weight(rd.rank())?;
            let label = match c {
                CategoryArg::F => blocks::block_label_f(&rd, &x)?,
                CategoryArg::O => blocks::block_label_o(&rd, &x)?,
            };
            vec![record(json!({ "weight": x.to_string(), "label": label.to_string() }))]
        }
        Command::Linkage { datum, weight } => {
            let rd = datum.datum()?;
            let x = weight.super_weight(rd.rank())?;
            let tk = Takiff::new(&rd);
            blocks::linkage_chain(&tk, &x, limits)?
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    record(json!({
                        "step": k,
                        "from": s.from.to_string(),
                        "to": s.to.to_string(),
                        "rule": s.rule.name(),
                        "standard": s.standard.to_string(),
                        "simple": s.simple.to_string(),
                        "multiplicity": big(&s.multiplicity),
                    }))
                })
                .collect()
        }
        Command::DeltaMult { datum, x, y } => {
            let rd = datum.datum()?;
            let tk = Takiff::new(&rd);
            let x = x.super_weight(rd.rank())?;
            let pairs = match y {
                Some(y) => {
                    let y = y.super_weight(rd.rank())?;
                    let m = tk.delta_mult(&x, &y)?;
                    vec![(y, m)]
                }
                None => tk.delta_factors(&x)?,
            };
            pairs
                .iter()
                .map(|(y, m)| record(json!({ "x": x.to_string(), "y": y.to_string(), "multiplicity": big(m) })))
                .collect()
        }
        Command::ProjMult { datum, x, y } => {
            let rd = datum.datum()?;
            let tk = Takiff::new(&rd);
            let (x, y) = (x.super_weight(rd.rank())?, y.super_weight(rd.rank())?);
            let m = tk.proj_mult(&x, &y)?;
            vec![record(json!({ "x": x.to_string(), "y": y.to_string(), "multiplicity": big(&m) }))]
        }
        Command::Dual { datum, weight } => {
            let rd = datum.datum()?;
            let tk = Takiff::new(&rd);
            let x = weight.super_weight(rd.rank())?;
            vec![record(json!({ "weight": x.to_string(), "dual": tk.dual_simple(&x)?.to_string() }))]
        }
        Command::Ext { datum, i, source, target, engine, detail } => {
            let rd = datum.datum()?;
            let e = ExtEngine::new(&rd, *limits);
            let q = ExtQuery {
                i: *i,
                source: source.super_weight(rd.rank())?,
                target: target.super_weight(rd.rank())?,
                engine: match engine {
                    EngineArg::Closed => Engine::Closed,
                    EngineArg::Oracle => Engine::Oracle,
                    EngineArg::Auto => Engine::Auto,
                },
            };
            let v = e.ext_dim(&q)?;
            let mut r = record(json!({ "dim": big(&v.dim) }));
            if *detail {
                r.insert("engine".into(), v.engine.name().into());
                r.insert("i".into(), (*i).into());
                r.insert("source".into(), q.source.to_string().into());
                r.insert("target".into(), q.target.to_string().into());
            }
            vec![r]
        }
        Command::Ext1 { datum, source, target } | Command::Ext1Conformal { datum, source, target } => {
            let rd = datum.datum()?;
            let e = ExtEngine::new(&rd, *limits);
            let (x, y) = (source.super_weight(rd.rank())?, target.super_weight(rd.rank())?);
            let d = if matches!(command, Command::Ext1 { .. }) {
                e.ext1_closed(&x, &y)?
            } else {
                e.ext1_conformal(&x, &y)?
            };
            vec![record(json!({ "dim": big(&d) }))]
        }
        Command::Quiver { datum, block, window: w, kind } => {
            let rd = datum.datum()?;
            let e = ExtEngine::new(&rd, *limits);
            let label = blocks::block_label_f(&rd, &block.super_weight(rd.rank())?)?;
            let win = window(w);
            let edges = |g: &ext::QuiverGraph| -> Vec<Record> {
                g.edges
                    .iter()
                    .map(|(i, j, d)| {
                        record(json!({
                            "from": g.vertices[*i].to_string(),
                            "to": g.vertices[*j].to_string(),
                            "dim": big(d),
                        }))
                    })
                    .collect()
            };
            match kind {
                QuiverArg::F => edges(&ext::build_quiver(&e, &label, &win, QuiverKind::F)?),
                QuiverArg::C => edges(&ext::build_quiver(&e, &label, &win, QuiverKind::C)?),
                QuiverArg::Compare => {
                    let qf = ext::build_quiver(&e, &label, &win, QuiverKind::F)?;
                    let qc = ext::build_quiver(&e, &label, &win, QuiverKind::C)?;
                    let diffs: Vec<Value> = ext::quiver_differences(&rd, &qf, &qc)?
                        .iter()
                        .map(|(x, y, f, c)| json!({ "from": x.to_string(), "to": y.to_string(), "f": big(f), "c": big(c) }))
                        .collect();
                    vec![record(json!({
                        "label": label.to_string(),
                        "vertices": qf.vertices.len(),
                        "interior_vertices": ext::interior_vertices(&rd, &qf)?.len(),
                        "agree": diffs.is_empty(),
                        "differences": diffs,
                    }))]
                }
            }
        }
        Command::KoszulCheck { datum, block, window: w, pairs, imax, seed, any_block } => {
            let rd = datum.datum()?;
            let e = ExtEngine::new(&rd, *limits);
            let label = blocks::block_label_f(&rd, &block.super_weight(rd.rank())?)?;
            let vertices = ext::block_vertices(&rd, &label, &window(w))?;
            let sample = sample_pairs(&vertices, *pairs, *imax, *seed);
            let report = if *any_block {
                ext::koszul_report(&e, &label, &sample, *imax)?
            } else {
                ext::koszul_diagonal_check(&e, &label, &sample, *imax)?
            };
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({ "i": v.i, "source": v.source.to_string(), "target": v.target.to_string(), "dim": big(&v.dim) }))
                .collect();
            let diagonal = violations.is_empty();
            let out = vec![record(json!({
                "label": report.label.to_string(),
                "pairs_checked": report.pairs_checked,
                "queries": report.queries,
                "diagonal": diagonal,
                "violations": violations,
            }))];
            if !diagonal && !*any_block {
                return Err(CliError::Partial(out, format!("off-diagonal Ext found in block {}", report.label)));
            }
            out
        }
        Command::Ideals(d) => {
            let rd = d.datum()?;
            ideals::enumerate_ideals(&rd)?
                .iter()
                .enumerate()
                .map(|(k, id)| {
                    record(json!({
                        "index": k,
                        "ideal": id.to_string(),
                        "members": id.members(),
                        "size": id.len(),
                    }))
                })
                .collect()
        }
        Command::BorelCount { datum, detail } => {
            let rd = datum.datum()?;
            let c = ideals::count_borel_classes(&rd)?;
            let mut r = record(json!({ "classes": big(&BigInt::from(c.classes())) }));
            if *detail {
                r.insert("type".into(), rd.name().into());
                r.insert("closed_form".into(), big(&BigInt::from(c.closed_form)));
                r.insert("enumerated".into(), c.enumerated.map(|e| big(&BigInt::from(e))).into());
            }
            vec![r]
        }
        Command::BorelClassify(d) => {
            let rd = d.datum()?;
            ideals::classify_borels(&rd)?
                .iter()
                .map(|b| {
                    record(json!({
                        "kind": match b.kind {
                            BorelKind::ContainsBorel => "contains_borel",
                            BorelKind::InsideNilradical => "inside_nilradical",
                        },
                        "ideal": b.ideal.to_string(),
                        "complement": b.complement.map(|c| c.negatives.to_string()),
                        "includes_del_xi": b.includes_del_xi,
                        "h": b.h.iter().map(rational).collect::<Vec<_>>(),
                        "xi_coefficient": b.xi_coefficient,
                        "odd_dim": b.odd_dim,
                    }))
                })
                .collect()
        }
        Command::ShiWitness { datum, ideal } => {
            let rd = datum.datum()?;
            let np = rd.num_positive_roots();
            if let Some(&k) = ideal.0.iter().find(|&&k| k >= np) {
                return Err(CliError::User(format!("root index {k} out of range; {} has {np} positive roots", rd.name())));
            }
            if np > 64 {
                return Err(Error::DimensionCap { needed: np as u128, cap: 64 }.into());
            }
            let id = RootIdeal::from_members(&ideal.0);
            let h = ideals::shi_witness(&rd, &id)?;
            vec![record(json!({ "ideal": id.to_string(), "h": h.iter().map(rational).collect::<Vec<_>>() }))]
        }
        Command::Commutant { n, r, algebra } => {
            let alg = match algebra {
                AlgebraArg::G => Algebra::G,
                AlgebraArg::Gl => Algebra::Gl,
            };
            let c = invariants::commutant_dim(*n, *r, alg, limits)?;
            vec![record(json!({
                "n": n, "r": r, "algebra": alg.name(),
                "even": c.even, "odd": c.odd, "total": c.total(),
            }))]
        }
        Command::PhiImage { n, r } => {
            let image = invariants::phi_image_dim(*n, *r, limits)?;
            vec![record(json!({ "n": n, "r": r, "image": image }))]
        }
        Command::Verdict { n, r } => {
            let v = invariants::it_verdict(*n, *r, limits)?;
            let rec = record(json!({
                "n": n,
                "r": r,
                "injective": v.injective,
                "surjective": v.surjective,
                "commutant": v.commutant.total(),
                "commutant_even": v.commutant.even,
                "commutant_odd": v.commutant.odd,
                "image": v.image,
                "group_order": big(&v.group_order),
                "violations": v.violations,
            }));
            if !v.violations.is_empty() {
                return Err(CliError::Partial(
                    vec![rec],
                    format!("computed data contradict known results: {}", v.violations.join("; ")),
                ));
            }
            vec![rec]
        }
        Command::Selftest { only } => {
            let outcomes = acceptance::run(only.as_ref().map(|o| o.0.as_slice()), limits);
            let records: Vec<Record> = outcomes
                .iter()
                .map(|o| record(json!({ "criterion": o.id, "name": o.name, "passed": o.passed, "detail": o.detail })))
                .collect();
            let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.to_string()).collect();
            if !failed.is_empty() {
                return Err(CliError::Partial(records, format!("acceptance criteria failed: {}", failed.join(","))));
            }
            records
        }
    })
}
