use serde::Serialize;

use super::functions::Monotone;
use super::walls::{option_pq, SeparationProfile};
use crate::ratio::{self, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bullet {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BulletResult {
    pub status: Bullet,
    #[serde(with = "option_pq")]
    pub margin: Option<Rational>,
}

impl BulletResult {
    fn from_margin(margin: Option<Rational>) -> BulletResult {
        let status = match &margin {
            Some(m) if *m >= int(0) => Bullet::Pass,
            Some(_) => Bullet::Fail,
            None => Bullet::Unknown,
        };
        BulletResult { status, margin }
    }

    fn flag(ok: Option<bool>) -> BulletResult {
        let status = match ok {
            Some(true) => Bullet::Pass,
            Some(false) => Bullet::Fail,
            None => Bullet::Unknown,
        };
        BulletResult { status, margin: None }
    }
}

#[derive(Debug, Clone)]
pub struct WallingParams {
    pub degree: u64,
    pub lambda: Rational,
    pub beta: Rational,
    /// `None` uses each relator's measured table.
    pub phi: Option<Monotone>,
    pub omega: Monotone,
    pub delta: Monotone,
}

/// Everything known about one walled relator.
#[derive(Debug, Clone)]
pub struct RelatorWalling {
    pub name: String,
    pub girth: usize,
    pub diameter: usize,
    pub max_degree: usize,
    /// Largest piece edge count.
    pub pieces: usize,
    pub cprime: Option<bool>,
    pub profile: SeparationProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorCertificate {
    pub name: String,
    pub girth: usize,
    pub diameter: usize,
    #[serde(rename = "P")]
    pub pieces: usize,
    pub phi: Monotone,
    pub degree: BulletResult,
    pub small_cancellation: BulletResult,
    pub separation: BulletResult,
    pub lacunarity: BulletResult,
    pub large_girth: BulletResult,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallingCertificate {
    #[serde(rename = "D")]
    pub degree: u64,
    #[serde(with = "ratio::serde_pq")]
    pub lambda: Rational,
    #[serde(with = "ratio::serde_pq")]
    pub beta: Rational,
    #[serde(rename = "Omega")]
    pub omega: Monotone,
    #[serde(rename = "Delta")]
    pub delta: Monotone,
    /// `0 < λ < β/2`, `β ≤ 1/2`, `D > 1`.
    pub parameters_ok: bool,
    pub relators: Vec<RelatorCertificate>,
    pub pass: bool,
}

impl WallingCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Greatest nondecreasing function below the measured table.
pub fn measured_phi(profile: &SeparationProfile) -> Option<Monotone> {
    let mut pts: Vec<(Rational, Rational)> = Vec::new();
    let mut floor = usize::MAX;
    for (&t, &c) in profile.phi_table.iter().rev() {
        floor = floor.min(c);
        pts.push((int(t as i128), int(floor as i128)));
    }
    pts.reverse();
    Monotone::table(pts).ok()
}

/// Evaluates the five conditions per relator with exact arithmetic.
pub fn lacunary_check(relators: &[RelatorWalling], params: &WallingParams) -> WallingCertificate {
    let (lambda, beta) = (params.lambda, params.beta);
    let parameters_ok =
        params.degree > 1 && beta > int(0) && beta <= Rational::new(1, 2) && lambda > int(0) && lambda * int(2) < beta;
    let mut certs = Vec::new();
    for r in relators {
        let girth = int(r.girth as i128);
        let measured = measured_phi(&r.profile);
        let phi = params.phi.clone().or_else(|| measured.clone());
        let degree = BulletResult::from_margin(Some(int(params.degree as i128) - int(r.max_degree as i128)));
        let small_cancellation = BulletResult::flag(r.cprime);
        let phi_ok = if params.phi.is_some() { r.profile.phi_ok } else { r.profile.complete.then_some(true) };
        let beta_margin = r.profile.beta_margin.map_or(Some(int(0)), |m| Some(m - beta));
        let separation = match (BulletResult::from_margin(beta_margin), phi_ok) {
            (b, Some(true)) => b,
            (b, Some(false)) if b.status != Bullet::Unknown => BulletResult { status: Bullet::Fail, margin: b.margin },
            (b, _) => BulletResult { status: if b.status == Bullet::Fail { Bullet::Fail } else { Bullet::Unknown }, margin: b.margin },
        };
        let lacunarity = BulletResult::from_margin(phi.as_ref().and_then(|f| {
            let left = f.eval(&((beta - lambda) * girth))?;
            let right = params.omega.eval(&girth)?;
            Some(left - int(6 * r.pieces as i128) - right)
        }));
        let large_girth =
            BulletResult::from_margin(params.delta.eval(&int(r.diameter as i128)).map(|d| girth - d));
        let pass = parameters_ok
            && [&degree, &small_cancellation, &separation, &lacunarity, &large_girth]
                .iter()
                .all(|b| b.status == Bullet::Pass);
        certs.push(RelatorCertificate {
            name: r.name.clone(),
            girth: r.girth,
            diameter: r.diameter,
            pieces: r.pieces,
            phi: phi.unwrap_or(Monotone::Table(Vec::new())),
            degree,
            small_cancellation,
            separation,
            lacunarity,
            large_girth,
            pass,
        });
    }
    let pass = parameters_ok && certs.iter().all(|c| c.pass);
    WallingCertificate {
        degree: params.degree,
        lambda,
        beta,
        omega: params.omega.clone(),
        delta: params.delta.clone(),
        parameters_ok,
        relators: certs,
        pass,
    }
}
