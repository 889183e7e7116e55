use qmerge_core::applications::{compression_region, eoa as eoa_of, mac_region, side_info_rates, EpParams, RateRegion};
use qmerge_core::merging::{
    monte_carlo_merge, plan_merge, run_trials, trial_stream, MergeBasis, MergeOutcome, MergePlan, MergeSetup,
    Roles, SweepConfig,
};
use qmerge_core::random::stream_rng;
use qmerge_core::{conditional_entropy, subset_entropy, Caps, EntropyReport, QuantumState};
use serde::Serialize;

use crate::input::{parse_channel, parse_state, State};
use crate::output::{joined, json, num, opt_num, signed, Format, Table};
use crate::{CliError, EntropyArgs, EoaArgs, MergeArgs, RegionArgs, ReportArgs, SideinfoArgs, BasisArg};

fn load(spec: &str, caps: &Caps) -> Result<State, CliError> {
    let state = parse_state(spec)?;
    match &state {
        State::Pure(p) => caps.check_pure(p.dim())?,
        State::Mixed(m) => caps.check_density(m.dim())?,
    }
    Ok(state)
}

macro_rules! with_state {
    ($state:expr, $s:ident => $body:expr) => {
        match $state {
            State::Pure($s) => $body,
            State::Mixed($s) => $body,
        }
    };
}

fn note(msg: &str) {
    eprintln!("note: {msg}");
}

#[derive(Serialize)]
struct EntropyDoc<'a> {
    of: &'a [String],
    given: &'a [String],
    bits: f64,
}

pub fn entropy(a: &EntropyArgs, format: Option<Format>, caps: &Caps) -> Result<String, CliError> {
    let state = load(&a.state, caps)?;
    let bits = with_state!(&state, s => if a.given.is_empty() {
        subset_entropy(s, &a.of)?
    } else {
        conditional_entropy(s, &a.of, &a.given)?
    });
    match format {
        None => Ok(format!("{}\n", signed(bits))),
        Some(Format::Json) => json(&EntropyDoc {
            of: &a.of,
            given: &a.given,
            bits,
        }),
        Some(Format::Csv) => {
            let mut t = Table::new(&["of", "given", "bits"]);
            t.push(vec![joined(&a.of), joined(&a.given), num(bits)]);
            t.render()
        }
    }
}

pub fn report(a: &ReportArgs, format: Option<Format>, caps: &Caps) -> Result<String, CliError> {
    let state = load(&a.state, caps)?;
    let max = a.max_size.unwrap_or(state.layout().len());
    let r = with_state!(&state, s => EntropyReport::build(s, max)?);
    match format.unwrap_or(Format::Json) {
        Format::Json => json(&r),
        Format::Csv => {
            let mut t = Table::new(&["quantity", "a", "b", "bits"]);
            for e in &r.entropies {
                t.push(vec!["entropy".into(), joined(&e.subset), String::new(), num(e.bits)]);
            }
            for p in &r.pairs {
                for (q, v) in [
                    ("conditional_entropy", p.conditional_entropy),
                    ("mutual_information", p.mutual_information),
                    ("coherent_information", p.coherent_information),
                ] {
                    t.push(vec![q.into(), p.a.clone(), p.b.clone(), num(v)]);
                }
            }
            t.render()
        }
    }
}

#[derive(Serialize)]
struct MergeSummary {
    outcomes: usize,
    min_achieved_fidelity: f64,
    mean_achieved_fidelity: f64,
    max_decoupling_error: f64,
}

#[derive(Serialize)]
struct MergeDoc<'a> {
    seed: u64,
    basis: &'a str,
    exhaustive: bool,
    plan: MergePlan,
    summary: MergeSummary,
    outcomes: Vec<MergeOutcome>,
}

#[derive(Serialize)]
struct CurveDoc<'a> {
    seed: u64,
    basis: &'a str,
    slack_bits: f64,
    trials: usize,
    curve: Vec<qmerge_core::merging::CurveRow>,
}

const OUTCOME_HEADER: &[&str] = &[
    "copies",
    "trial",
    "outcome_index",
    "probability",
    "decoupling_error",
    "uhlmann_fidelity",
    "achieved_fidelity",
    "epr_net_bits",
    "cbits",
];

const CURVE_HEADER: &[&str] = &[
    "copies",
    "skipped",
    "block",
    "outcomes",
    "epr_boost",
    "epr_net_bits",
    "cbits",
    "trials",
    "decoupling_mean",
    "decoupling_median",
    "decoupling_min",
    "fidelity_mean",
    "fidelity_median",
    "fidelity_min",
];

fn parse_range(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("expected --curve n1..n2, got `{s}`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 {
        return Err(CliError::Usage("copy counts start at 1".into()));
    }
    Ok((lo..=hi).collect())
}

pub fn merge(a: &MergeArgs, format: Option<Format>, caps: &Caps) -> Result<String, CliError> {
    if !a.slack.is_finite() || a.slack < 0.0 {
        return Err(CliError::Usage("--slack must be a nonnegative number".into()));
    }
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let state = load(&a.state, caps)?;
    let (psi, added) = state.purified()?;
    if let Some(l) = added {
        note(&format!("mixed input purified onto reference `{l}`"));
    }
    let roles = Roles {
        alice: a.alice.clone(),
        bob: a.bob.clone(),
    };
    let (basis, basis_name) = match a.basis {
        BasisArg::Haar => (MergeBasis::Haar, "haar"),
        BasisArg::Fourier => (MergeBasis::Fourier, "fourier"),
    };
    let format = format.unwrap_or(Format::Json);

    if let Some(range) = &a.curve {
        if a.exhaustive {
            return Err(CliError::Usage("--exhaustive cannot be combined with --curve".into()));
        }
        let config = SweepConfig {
            copies: parse_range(range)?,
            trials: a.trials,
            slack_bits: a.slack,
            seed: a.seed,
            basis,
            caps: *caps,
        };
        let (rows, _) = monte_carlo_merge(&psi, &roles, &config)?;
        for r in rows.iter().filter(|r| r.skipped) {
            note(&format!("n = {} exceeds the dimension cap, skipped", r.copies));
        }
        return match format {
            Format::Json => json(&CurveDoc {
                seed: a.seed,
                basis: basis_name,
                slack_bits: a.slack,
                trials: a.trials,
                curve: rows,
            }),
            Format::Csv => {
                let mut t = Table::new(CURVE_HEADER);
                for r in &rows {
                    t.push(vec![
                        r.copies.to_string(),
                        r.skipped.to_string(),
                        r.block.to_string(),
                        r.outcomes.to_string(),
                        r.epr_boost.to_string(),
                        num(r.epr_net_bits),
                        num(r.cbits),
                        r.trials.to_string(),
                        opt_num(r.decoupling_mean),
                        opt_num(r.decoupling_median),
                        opt_num(r.decoupling_min),
                        opt_num(r.fidelity_mean),
                        opt_num(r.fidelity_median),
                        opt_num(r.fidelity_min),
                    ]);
                }
                t.render()
            }
        };
    }

    let n = a.copies.expect("clap requires -n without --curve");
    if n == 0 {
        return Err(CliError::Usage("-n must be at least 1".into()));
    }
    let plan = plan_merge(&psi, &roles, n, a.slack)?;
    if plan.below_budget {
        note("no block size fits the rate budget; using L = 1");
    }
    let setup = MergeSetup::new(&psi, &roles, &plan, caps)?;
    let (outcomes, mean) = if a.exhaustive {
        let mut all = Vec::new();
        let mut weighted = 0.0;
        for t in 0..a.trials {
            let mut rng = stream_rng(a.seed, trial_stream(n, t));
            let w = setup.unitary(&basis, &mut rng)?;
            let outs = setup.exhaustive(&w, t)?;
            weighted += outs.iter().map(|o| o.probability * o.achieved_fidelity).sum::<f64>();
            all.extend(outs);
        }
        (all, weighted / a.trials as f64)
    } else {
        let outs = run_trials(&setup, &basis, a.seed, a.trials)?;
        let mean = outs.iter().map(|o| o.achieved_fidelity).sum::<f64>() / outs.len() as f64;
        (outs, mean)
    };
    let summary = MergeSummary {
        outcomes: outcomes.len(),
        min_achieved_fidelity: outcomes.iter().map(|o| o.achieved_fidelity).fold(f64::INFINITY, f64::min),
        mean_achieved_fidelity: mean,
        max_decoupling_error: outcomes.iter().map(|o| o.decoupling_error).fold(0.0, f64::max),
    };
    match format {
        Format::Json => json(&MergeDoc {
            seed: a.seed,
            basis: basis_name,
            exhaustive: a.exhaustive,
            plan,
            summary,
            outcomes,
        }),
        Format::Csv => {
            let mut t = Table::new(OUTCOME_HEADER);
            for o in &outcomes {
                t.push(vec![
                    o.copies.to_string(),
                    o.trial.to_string(),
                    o.outcome_index.to_string(),
                    num(o.probability),
                    num(o.decoupling_error),
                    num(o.uhlmann_fidelity),
                    num(o.achieved_fidelity),
                    num(o.epr_net_bits),
                    num(o.cbits),
                ]);
            }
            t.render()
        }
    }
}

#[derive(Serialize)]
struct RegionDoc {
    #[serde(flatten)]
    region: RateRegion,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    membership: Option<qmerge_core::applications::Membership>,
}

pub fn region(a: &RegionArgs, format: Option<Format>, caps: &Caps) -> Result<String, CliError> {
    let state = load(&a.state, caps)?;
    let region = if a.mac {
        let receiver: Vec<String> = if a.receiver.is_empty() {
            state
                .layout()
                .labels()
                .filter(|l| !a.sender_a.iter().any(|x| x == l) && !a.sender_b.iter().any(|x| x == l))
                .map(str::to_string)
                .collect()
        } else {
            a.receiver.clone()
        };
        with_state!(&state, s => mac_region(s, &a.sender_a, &a.sender_b, &receiver)?)
    } else if a.parties.is_empty() {
        with_state!(&state, s => compression_region(s)?)
    } else {
        let reduced = with_state!(&state, s => s.reduced(&a.parties)?);
        // keep the caller's party order
        compression_region(&reduced.permute(&a.parties)?)?
    };
    let membership = match &a.point {
        Some(p) => Some(region.contains(p)?),
        None => None,
    };
    match format.unwrap_or(Format::Json) {
        Format::Json => json(&RegionDoc {
            region,
            point: a.point.clone(),
            membership,
        }),
        Format::Csv => {
            let mut t = Table::new(&["subset", "bound", "satisfied"]);
            for c in &region.constraints {
                let sat = membership
                    .as_ref()
                    .map(|m| (!m.violated.contains(&c.subset)).to_string())
                    .unwrap_or_default();
                t.push(vec![joined(&c.subset), num(c.bound), sat]);
            }
            t.render()
        }
    }
}

pub fn eoa(a: &EoaArgs, format: Option<Format>, caps: &Caps) -> Result<String, CliError> {
    let State::Pure(psi) = load(&a.state, caps)? else {
        return Err(CliError::Usage("eoa needs a pure state".into()));
    };
    let r = eoa_of(&psi, &a.alice, &a.bob)?;
    match format.unwrap_or(Format::Json) {
        Format::Json => json(&r),
        Format::Csv => {
            let mut t = Table::new(&["with_alice", "alice_side", "bob_side", "value", "argmin"]);
            for c in &r.cuts {
                t.push(vec![
                    joined(&c.with_alice),
                    num(c.alice_side),
                    num(c.bob_side),
                    num(c.value),
                    (c.with_alice == r.argmin).to_string(),
                ]);
            }
            t.render()
        }
    }
}

pub fn sideinfo(a: &SideinfoArgs, format: Option<Format>, caps: &Caps) -> Result<String, CliError> {
    if a.restarts == 0 {
        return Err(CliError::Usage("--restarts must be at least 1".into()));
    }
    let state = load(&a.state, caps)?;
    let (psi, added) = state.purified()?;
    if let Some(l) = added {
        note(&format!("mixed input purified onto reference `{l}`"));
    }
    let ch = parse_channel(&a.channel)?;
    let params = EpParams {
        out_cap: a.out_cap,
        env_cap: a.env_cap,
        restarts: a.restarts,
        max_iters: a.max_iters,
        seed: a.seed,
    };
    let r = side_info_rates(&psi, &a.alice, &ch, &params)?;
    if !r.entanglement_of_purification.converged {
        note("best restart hit the iteration limit before stalling");
    }
    match format.unwrap_or(Format::Json) {
        Format::Json => json(&r),
        Format::Csv => {
            let ep = &r.entanglement_of_purification;
            let mut t = Table::new(&["r_a", "r_b", "entanglement_of_purification", "restarts", "converged"]);
            t.push(vec![
                num(r.r_a),
                num(r.r_b),
                num(ep.value),
                ep.restarts.to_string(),
                ep.converged.to_string(),
            ]);
            t.render()
        }
    }
}
