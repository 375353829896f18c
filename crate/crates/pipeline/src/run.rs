//! End-to-end run: generate, validate, label, verify, cover, walls, certify,
//! explore.

use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use sclab_core::covers::{
    fiber_walls, lacunary_check, properness_check, separation_profile, z2_cover, CoveringMap, RelatorWalling, Scope,
    WallSides, WallSystem, WallingParams,
};
use sclab_core::graph::io::{parse_graph, write_graph};
use sclab_core::graph::{metrics, random_regular, validate_family, FamilySpec, Graph, DEFAULT_RETRY_BUDGET};
use sclab_core::labeling::io::{parse_labeled, write_labeled};
use sclab_core::labeling::{constants, product, Labeling};
use sclab_core::lll::{graph_seed, label_intergraph, label_intragraph, write_trace, IntragraphParams, RunLimits};
use sclab_core::presentation::{cayley_patch, embedding_check, GraphicalPresentation};
use sclab_core::ratio::{self, int, Rational};
use sclab_core::verify::{check_cprime, piece_bound, verify_family, CPrimeStatus, PieceOptions, Quotient, Relator};

use crate::artifacts::ArtifactStore;
use crate::config::{FamilySource, PipelineConfig};
use crate::report::{RunReport, StageRecord, StageStatus, SCHEMA};
use crate::spectral::second_eigenvalue;

pub const STAGES: [&str; 8] = ["generate", "validate", "label", "verify", "cover", "walls", "certify", "explore"];

/// Intra-graph labellings draw from a stream disjoint from the inter-graph one.
pub fn intragraph_seed(seed: u64, index: usize) -> u64 {
    graph_seed(!seed, index)
}

#[derive(Default)]
struct State {
    graphs: Vec<Graph>,
    diameter_ratio: Option<Rational>,
    labelings: Vec<Labeling>,
    /// Labellings read from input files instead of constructed.
    provided: Vec<Labeling>,
    covers: Vec<CoveringMap>,
    walls: Vec<(WallSystem, WallSides)>,
}

type StageResult = Result<Value, String>;

fn io(e: std::io::Error) -> String {
    format!("i/o: {e}")
}

fn file_name(i: usize, g: &Graph, ext: &str) -> String {
    format!("{i:02}-{}.{ext}", g.name())
}

fn generate(cfg: &PipelineConfig, st: &mut State, store: &ArtifactStore) -> StageResult {
    st.graphs = match &cfg.family {
        FamilySource::Cycles(ns) => ns.iter().map(|&n| Graph::cycle(n).with_name(format!("C{n}"))).collect(),
        FamilySource::Random(ns) => ns
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                random_regular(n, cfg.degree, graph_seed(cfg.seed, i), cfg.min_girth, DEFAULT_RETRY_BUDGET)
                    .map(|g| g.with_name(format!("rr{}d{}s{}", n, cfg.degree, cfg.seed)))
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?,
        FamilySource::Files(paths) => {
            let mut graphs = Vec::new();
            for p in paths {
                let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
                if text.trim_start().starts_with("LGRAPH") {
                    let (g, l) = parse_labeled(&text).map_err(|e| format!("{}: {e}", p.display()))?;
                    graphs.push(g);
                    st.provided.push(l);
                } else {
                    graphs.push(parse_graph(&text).map_err(|e| format!("{}: {e}", p.display()))?);
                }
            }
            if !st.provided.is_empty() && st.provided.len() != graphs.len() {
                return Err("mix of labeled and unlabeled inputs".into());
            }
            graphs
        }
    };
    for (i, g) in st.graphs.iter().enumerate() {
        store.write(&format!("graphs/{}", file_name(i, g, "graph")), &write_graph(g)).map_err(io)?;
    }
    let sizes: Vec<Value> = st.graphs.iter().map(|g| json!({"name": g.name(), "V": g.vertex_count(), "E": g.edge_count()})).collect();
    Ok(json!({ "graphs": sizes }))
}

fn validate(cfg: &PipelineConfig, st: &mut State, store: &ArtifactStore) -> StageResult {
    let spec = FamilySpec {
        graphs: st.graphs.clone(),
        degree_bound: cfg.degree,
        diameter_ratio: cfg.diameter_ratio,
        lambda: cfg.lambda,
    };
    let rep = validate_family(&spec);
    let doc = serde_json::to_string_pretty(&rep).expect("family report serializes") + "\n";
    store.write("family.json", &doc).map_err(io)?;
    if !rep.ok {
        return Err(format!("family rejected: {}", serde_json::to_string(&rep.witnesses).unwrap_or_default()));
    }
    if rep.subsequence.len() != st.graphs.len() {
        return Err(format!("family needs repair; keepable members {:?}", rep.subsequence));
    }
    let a = cfg.diameter_ratio.or(rep.measured_ratio.map(|q| q.0)).unwrap_or_else(|| ratio::rat(1, 2));
    let a = a.max(ratio::rat(1, 2));
    st.diameter_ratio = Some(a);
    let girths: Vec<u64> = rep.girths.iter().filter_map(|g| g.finite()).map(|g| g as u64).collect();
    let consts = constants(cfg.degree.max(2) as u64, a, cfg.lambda, &girths).map_err(|e| e.to_string())?;
    let consts_doc = serde_json::to_string_pretty(&consts).expect("constants serialize") + "\n";
    store.write("constants.json", &consts_doc).map_err(io)?;
    Ok(json!({
            "girths": girths,
            "diameter_ratio": ratio::format(&a),
            "certified_alphabet_digits": {"L": consts.l.value.to_string().len(), "Lbar": consts.lbar.value.to_string().len()},
        }))
}

fn label(cfg: &PipelineConfig, st: &mut State, store: &ArtifactStore) -> StageResult {
    if !st.provided.is_empty() {
        st.labelings = st.provided.clone();
        for (i, (g, lab)) in st.graphs.iter().zip(&st.labelings).enumerate() {
            lab.is_reduced(g).map_err(|w| format!("{}: provided labeling folds: {w:?}", g.name()))?;
            store.write(&format!("labeled/{}", file_name(i, g, "lgraph")), &write_labeled(g, lab)).map_err(io)?;
        }
        return Ok(json!({ "provided": true }));
    }
    let a = st.diameter_ratio.expect("validated");
    let limits = RunLimits::new(cfg.max_rounds);
    let mut intra = Vec::new();
    let mut rounds = Vec::new();
    let mut girths = Vec::new();
    for (i, g) in st.graphs.iter().enumerate() {
        let girth = metrics(g).map_err(|e| e.to_string())?.girth.finite().ok_or("acyclic member")?;
        girths.push(girth);
        let params = IntragraphParams::new(cfg.lambda, a, girth);
        let run = label_intragraph(g, &params, cfg.intra_alphabet, intragraph_seed(cfg.seed, i), limits)
            .map_err(|e| format!("{}: intra-graph {e}", g.name()))?;
        store.write(&format!("traces/{}", file_name(i, g, "intra.trace")), &write_trace(&run.trace)).map_err(io)?;
        rounds.push(run.trace.rounds.len());
        intra.push(run.labeling);
    }
    let gammas: Vec<usize> = girths.iter().map(|&g| ratio::floor(&(cfg.lambda * int(g as i128))) as usize).collect();
    let inter = label_intergraph(&st.graphs, &gammas, cfg.inter_alphabet, cfg.seed, limits)
        .map_err(|e| format!("inter-graph {e}"))?;
    let mut inter_rounds = Vec::new();
    for (i, (g, t)) in st.graphs.iter().zip(&inter.traces).enumerate() {
        store.write(&format!("traces/{}", file_name(i, g, "inter.trace")), &write_trace(t)).map_err(io)?;
        inter_rounds.push(t.rounds.len());
    }
    st.labelings.clear();
    for (i, g) in st.graphs.iter().enumerate() {
        let lab = product(g, &inter.labelings[i], &intra[i]).map_err(|e| e.to_string())?;
        store.write(&format!("labeled/{}", file_name(i, g, "lgraph")), &write_labeled(g, &lab)).map_err(io)?;
        st.labelings.push(lab);
    }
    Ok(json!({
            "intra_rounds": rounds,
            "inter_rounds": inter_rounds,
            "gammas": gammas,
            "product_alphabet": st.labelings.first().map(|l| l.alphabet().size),
        }))
}

fn verify(cfg: &PipelineConfig, st: &mut State, store: &ArtifactStore) -> StageResult {
    let rels: Vec<Relator<'_>> = st.graphs.iter().zip(&st.labelings).map(|(g, l)| Relator::plain(g, l)).collect();
    let opts = PieceOptions { edge_cap: cfg.piece_edge_cap, budget: cfg.piece_budget };
    let rep = verify_family(&rels, cfg.lambda, opts);
    store.write("verification.json", &(rep.to_json() + "\n")).map_err(io)?;
    let reduced = rep.graphs.iter().all(|g| g.reduced);
    if !reduced || !rep.repeats_below_lambda_girth || rep.cprime != CPrimeStatus::Holds {
        return Err(format!(
            "labeling not certified: reduced {reduced}, repeats below lambda*girth {}, C' {:?}",
            rep.repeats_below_lambda_girth, rep.cprime
        ));
    }
    let summary = serde_json::to_value(&rep).expect("serializes");
    Ok(summary)
}

fn cover(_: &PipelineConfig, st: &mut State, store: &ArtifactStore) -> StageResult {
    st.covers.clear();
    let mut ranks = Vec::new();
    for (i, (g, l)) in st.graphs.iter().zip(&st.labelings).enumerate() {
        let cm = z2_cover(g, Some(l)).map_err(|e| format!("{}: {e}", g.name()))?;
        cm.check().map_err(|e| format!("{}: {e:?}", g.name()))?;
        let lab = cm.cover_labeling.as_ref().expect("labeled cover");
        store.write(&format!("covers/{}", file_name(i, &cm.cover, "lgraph")), &write_labeled(&cm.cover, lab)).map_err(io)?;
        ranks.push(cm.rank());
        st.covers.push(cm);
    }
    Ok(json!({ "ranks": ranks }))
}

fn walls(_: &PipelineConfig, st: &mut State, store: &ArtifactStore) -> StageResult {
    st.walls.clear();
    let mut counts = Vec::new();
    for (i, cm) in st.covers.iter().enumerate() {
        let (ws, _) = fiber_walls(cm).map_err(|e| format!("{}: {e}", cm.cover.name()))?;
        let text = ws.write();
        // reload what was written and revalidate it
        let reread = WallSystem::parse(&text).map_err(|e| e.to_string())?;
        let sides = reread.validate(&cm.cover).map_err(|e| format!("{}: {e}", cm.cover.name()))?;
        store.write(&format!("walls/{}", file_name(i, &cm.cover, "walls")), &text).map_err(io)?;
        counts.push(sides.wall_count());
        st.walls.push((reread, sides));
    }
    Ok(json!({ "walls": counts }))
}

fn certify(cfg: &PipelineConfig, st: &mut State, store: &ArtifactStore) -> StageResult {
    let labs: Vec<&Labeling> = st.covers.iter().map(|c| c.cover_labeling.as_ref().expect("labeled cover")).collect();
    let rels: Vec<Relator<'_>> = st
        .covers
        .iter()
        .zip(&labs)
        .map(|(cm, l)| Relator {
            graph: &cm.cover,
            labeling: l,
            quotient: Some(Quotient {
                vertex: &cm.vertex_projection,
                dart: &cm.dart_projection,
                base_vertices: cm.base.vertex_count(),
            }),
        })
        .collect();
    let pieces = piece_bound(&rels, PieceOptions { edge_cap: cfg.piece_edge_cap, budget: cfg.piece_budget });
    let cprime = check_cprime(&rels, cfg.lambda, usize::MAX);
    let mut walled = Vec::new();
    let mut proper = Vec::new();
    for (i, cm) in st.covers.iter().enumerate() {
        let m = metrics(&cm.cover).map_err(|e| e.to_string())?;
        let girth = m.girth.finite().ok_or("acyclic cover")?;
        let (ws, sides) = &st.walls[i];
        let scope = Scope { sources: cm.base.vertex_count(), work_cap: usize::MAX };
        let profile = separation_profile(&cm.cover, ws, sides, &cfg.beta, girth, cfg.phi.as_ref(), scope);
        walled.push(RelatorWalling {
            name: cm.cover.name().to_string(),
            girth,
            diameter: m.diameter,
            max_degree: cm.cover.max_degree(),
            pieces: pieces[i].upper,
            cprime: cprime.per_relator[i].ok,
            profile,
        });
        proper.push(properness_check(&cm.cover, sides, &cfg.omega, &cfg.delta, cm.base.vertex_count()));
    }
    let params = WallingParams {
        degree: cfg.degree as u64,
        lambda: cfg.lambda,
        beta: cfg.beta,
        phi: cfg.phi.clone(),
        omega: cfg.omega.clone(),
        delta: cfg.delta.clone(),
    };
    let cert = lacunary_check(&walled, &params);
    let doc = json!({ "certificate": cert, "properness": proper });
    store.write("certificate.json", &(serde_json::to_string_pretty(&doc).unwrap() + "\n")).map_err(io)?;
    let proper_ok = proper.iter().all(|p| p.ok);
    if !cert.pass || !proper_ok {
        let failing: Vec<&str> = cert.relators.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
        return Err(format!(
            "certificate fails (parameters ok {}, failing relators {failing:?}, properness {proper_ok})",
            cert.parameters_ok
        ));
    }
    Ok(doc)
}

fn explore(cfg: &PipelineConfig, st: &mut State, store: &ArtifactStore) -> Result<Option<Value>, String> {
    let mut summary = serde_json::Map::new();
    if cfg.spectral {
        let est: Vec<Value> = st
            .graphs
            .iter()
            .map(|g| json!({"name": g.name(), "spectral": second_eigenvalue(g, cfg.seed, 300)}))
            .collect();
        summary.insert("spectral".into(), Value::Array(est));
    }
    if cfg.radius_cap > 0 {
        let size = st.labelings[0].alphabet().size;
        let pres = GraphicalPresentation::new(size, st.graphs.iter().cloned().zip(st.labelings.iter().cloned()).collect())
            .map_err(|e| e.to_string())?;
        let patch = cayley_patch(&pres, cfg.radius_cap, cfg.vertex_cap);
        store.write("cayley.patch", &patch.dump()).map_err(io)?;
        let checks: Vec<_> =
            (0..pres.relators.len()).map(|i| embedding_check(&pres, i, cfg.radius_cap, cfg.vertex_cap)).collect();
        summary.insert("certified_1_24".into(), json!(pres.certified()));
        summary.insert("patch_vertices".into(), json!(patch.vertices.len()));
        summary.insert("patch_exact".into(), json!(patch.exact));
        summary.insert("embedding".into(), serde_json::to_value(&checks).unwrap());
        if checks.iter().any(|c| c.ok == Some(false) && !c.advisory) {
            return Err("certified relator fails to embed".into());
        }
    }
    if summary.is_empty() {
        return Ok(None);
    }
    Ok(Some(Value::Object(summary)))
}

/// Runs every stage in order into `out`; the first failure halts the run.
/// Writes `report.json`, `report.txt`, `timings.json` and `config.txt`.
pub fn run(cfg: &PipelineConfig, out: &Path) -> std::io::Result<RunReport> {
    run_through(cfg, out, "explore")
}

/// Like [`run`], stopping after stage `last`.
pub fn run_through(cfg: &PipelineConfig, out: &Path, last: &str) -> std::io::Result<RunReport> {
    assert!(STAGES.contains(&last), "unknown stage {last}");
    let store = ArtifactStore::create(out)?;
    let config_text = cfg.render();
    store.write("config.txt", &config_text)?;
    store.take_written();
    let mut st = State::default();
    let mut report = RunReport {
        schema: SCHEMA.into(),
        config: config_text,
        seed: cfg.seed,
        green: true,
        halted_at: None,
        stages: Vec::new(),
    };
    let mut timings = serde_json::Map::new();
    type Stage = fn(&PipelineConfig, &mut State, &ArtifactStore) -> StageResult;
    let stages: [(&str, Stage); 7] = [
        ("generate", generate),
        ("validate", validate),
        ("label", label),
        ("verify", verify),
        ("cover", cover),
        ("walls", walls),
        ("certify", certify),
    ];
    let wanted = |name: &str| STAGES.iter().position(|s| *s == name) <= STAGES.iter().position(|s| *s == last);
    for (name, f) in stages {
        if !wanted(name) {
            continue;
        }
        if !report.green {
            report.stages.push(skipped(name));
            continue;
        }
        let t = Instant::now();
        let res = f(cfg, &mut st, &store);
        timings.insert(name.into(), json!(t.elapsed().as_millis() as u64));
        report.stages.push(record(name, res, &store, &mut report.green, &mut report.halted_at));
    }
    if wanted("explore") && report.green {
        let t = Instant::now();
        let res = explore(cfg, &mut st, &store);
        timings.insert("explore".into(), json!(t.elapsed().as_millis() as u64));
        report.stages.push(match res {
            Ok(None) => skipped("explore"),
            Ok(Some(v)) => record("explore", Ok(v), &store, &mut report.green, &mut report.halted_at),
            Err(e) => record("explore", Err(e), &store, &mut report.green, &mut report.halted_at),
        });
    } else if wanted("explore") {
        report.stages.push(skipped("explore"));
    }
    store.write("report.json", &report.to_json())?;
    store.write("report.txt", &report.human())?;
    store.write("timings.json", &(serde_json::to_string_pretty(&Value::Object(timings)).unwrap() + "\n"))?;
    Ok(report)
}

fn skipped(name: &str) -> StageRecord {
    StageRecord { name: name.into(), status: StageStatus::Skipped, error: None, artifacts: Vec::new(), summary: Value::Null }
}

fn record(name: &str, res: StageResult, store: &ArtifactStore, green: &mut bool, halted: &mut Option<String>) -> StageRecord {
    let artifacts = store.take_written();
    match res {
        Ok(summary) => StageRecord { name: name.into(), status: StageStatus::Ok, error: None, artifacts, summary },
        Err(e) => {
            *green = false;
            *halted = Some(name.into());
            StageRecord {
                name: name.into(),
                status: StageStatus::Failed,
                error: Some(format!("[{name}] {e}")),
                artifacts,
                summary: Value::Null,
            }
        }
    }
}
