//! `ipsim ldp`: rate-function curves for the maximum occupation number,
//! closed form next to the exact finite-size estimate.

use super::{CommonOpts, COMMON_KEYS};
use crate::output::{cell, cell_opt, Meta, Table};
use crate::CliError;
use clap::Args;
use ipsim_core::ldp::{empirical_rate, rate_complete, rate_fluid, rate_intermediate, RateSpeed};

#[derive(Args, Debug, Clone)]
pub struct LdpArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Scaling regime: fluid, intermediate or complete
    #[arg(long)]
    pub regime: Option<String>,
    /// Rate speed: l, dl or logl (defaults to the regime's natural speed)
    #[arg(long)]
    pub speed: Option<String>,
    /// Exponent for the complete regime, d = L^(-gamma)
    #[arg(long)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    Fluid,
    Intermediate,
    Complete,
}

impl Regime {
    fn natural_speed(self) -> RateSpeed {
        match self {
            Regime::Fluid => RateSpeed::SitesL,
            Regime::Intermediate => RateSpeed::DiffusionDl,
            Regime::Complete => RateSpeed::LogL,
        }
    }
}

pub fn run(mut args: LdpArgs) -> Result<(), CliError> {
    let keys: Vec<&str> = COMMON_KEYS
        .iter()
        .chain(["regime", "speed", "gamma"].iter())
        .copied()
        .collect();
    let file = args.common.load_config(&keys)?;
    args.common.merge(&file)?;
    file.fill(&mut args.regime, "regime")?;
    file.fill(&mut args.speed, "speed")?;
    file.fill(&mut args.gamma, "gamma")?;

    let p = args.common.model()?;
    let regime = match args.regime.as_deref() {
        Some("fluid") => Regime::Fluid,
        Some("intermediate") => Regime::Intermediate,
        Some("complete") => Regime::Complete,
        Some(other) => {
            return Err(CliError::Config(format!(
                "unknown regime '{other}' (expected fluid, intermediate or complete)"
            )))
        }
        None => return Err(CliError::Config("missing --regime".into())),
    };
    let speed = match args.speed.as_deref() {
        None => regime.natural_speed(),
        Some("l") => RateSpeed::SitesL,
        Some("dl") => RateSpeed::DiffusionDl,
        Some("logl") => RateSpeed::LogL,
        Some(other) => {
            return Err(CliError::Config(format!(
                "unknown speed '{other}' (expected l, dl or logl)"
            )))
        }
    };
    if speed != regime.natural_speed() {
        return Err(CliError::Config(format!(
            "speed {} does not match the {} regime (its rate lives at speed {})",
            speed.label(),
            match regime {
                Regime::Fluid => "fluid",
                Regime::Intermediate => "intermediate",
                Regime::Complete => "complete",
            },
            regime.natural_speed().label()
        )));
    }
    let gamma = match (regime, args.gamma) {
        (Regime::Complete, Some(g)) => Some(g),
        (Regime::Complete, None) => {
            // infer from d = L^(-gamma)
            Some(-p.diffusion.ln() / f64::from(p.sites).ln())
        }
        (_, Some(_)) => {
            return Err(CliError::Config(
                "--gamma only applies to the complete regime".into(),
            ))
        }
        (_, None) => None,
    };

    let rho = p.rho();
    let mut meta = Meta::new("ldp");
    args.common.echo_model(&mut meta, &p);
    meta.push(
        "regime",
        match regime {
            Regime::Fluid => "fluid",
            Regime::Intermediate => "intermediate",
            Regime::Complete => "complete",
        },
    );
    meta.push("speed", speed.label());
    meta.push("speed-value", speed.value(&p));
    if let Some(g) = gamma {
        meta.push("gamma", g);
    }

    let points = empirical_rate(&p, speed)?;
    let mut table = Table::new(vec!["m", "x", "M", "closed_form", "finite_size_estimate"]);
    for point in points {
        let closed = match regime {
            Regime::Fluid => rate_fluid(rho, point.m, p.diffusion).ok(),
            Regime::Intermediate => rate_intermediate(rho, point.m).ok(),
            Regime::Complete => rate_complete(rho, point.m, gamma.unwrap()).ok(),
        };
        table.push_row(vec![
            cell(point.m),
            cell(point.mass_fraction),
            cell(point.occupation),
            cell_opt(closed),
            cell_opt(point.rate),
        ]);
    }
    args.common.target()?.write(&meta, &table)
}
