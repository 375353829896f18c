use serde::Serialize;

use super::cprime::{check_cprime, CPrimeStatus};
use super::pieces::{piece_bound, PieceOptions};
use super::repeats::longest_repeated_path;
use super::Relator;
use crate::graph::metrics;
use crate::ratio::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphVerification {
    pub name: String,
    pub girth: Option<usize>,
    pub diameter: usize,
    #[serde(with = "ratio::serde_pq")]
    pub lambda_girth: Rational,
    pub longest_repeat: usize,
    pub longest_simple_repeat: usize,
    #[serde(rename = "P")]
    pub p: usize,
    pub p_upper: usize,
    pub p_exact: bool,
    pub reduced: bool,
    pub cprime_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    #[serde(with = "ratio::serde_pq")]
    pub lambda: Rational,
    pub cprime: CPrimeStatus,
    /// Every member's longest repeat is below `λ·girth`.
    pub repeats_below_lambda_girth: bool,
    pub graphs: Vec<GraphVerification>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn human(&self) -> String {
        let mut s = format!(
            "lambda {}  C' {:?}  repeats below lambda*girth: {}\n",
            ratio::format(&self.lambda),
            self.cprime,
            self.repeats_below_lambda_girth
        );
        for g in &self.graphs {
            let girth = g.girth.map_or("inf".to_string(), |x| x.to_string());
            let p = if g.p_exact { g.p.to_string() } else { format!("{}..{}", g.p, g.p_upper) };
            s.push_str(&format!(
                "{:<16} girth {:>4} diam {:>4} lambda*girth {:>6} repeat {:>3} (simple {:>3}) P {:>6} reduced {} ok {}\n",
                g.name,
                girth,
                g.diameter,
                ratio::format(&g.lambda_girth),
                g.longest_repeat,
                g.longest_simple_repeat,
                p,
                g.reduced,
                g.cprime_ok.map_or("unknown".to_string(), |b| b.to_string()),
            ));
        }
        s
    }
}

/// Runs every check on a labeled family.
pub fn verify_family(relators: &[Relator<'_>], lambda: Rational, pieces: PieceOptions) -> VerificationReport {
    let rep = longest_repeated_path(relators);
    let bounds = piece_bound(relators, pieces);
    let cp = check_cprime(relators, lambda, usize::MAX);
    let mut graphs = Vec::new();
    let mut below = true;
    for (i, r) in relators.iter().enumerate() {
        let m = metrics(r.graph).ok();
        let girth = m.as_ref().and_then(|m| m.girth.finite());
        let lambda_girth = girth.map_or(ratio::int(0), |g| lambda * ratio::int(g as i128));
        if girth.is_some() {
            below &= ratio::int(rep.per_graph[i] as i128) < lambda_girth && !rep.capped;
        }
        graphs.push(GraphVerification {
            name: r.graph.name().to_string(),
            girth,
            diameter: m.as_ref().map_or(0, |m| m.diameter),
            lambda_girth,
            longest_repeat: rep.per_graph[i],
            longest_simple_repeat: rep.per_graph_simple[i],
            p: bounds[i].lower,
            p_upper: bounds[i].upper,
            p_exact: bounds[i].exact,
            reduced: r.labeling.is_reduced(r.graph).is_ok(),
            cprime_ok: cp.per_relator[i].ok,
        });
    }
    VerificationReport { lambda, cprime: cp.status, repeats_below_lambda_girth: below, graphs }
}
