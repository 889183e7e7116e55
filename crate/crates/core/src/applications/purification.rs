//! Upper-bounding the entanglement of purification by local search over
//! Stinespring isometries.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::channel::{apply_channel, ChannelSpec};
use crate::entropy::{conditional_entropy, von_neumann_entropy};
use crate::error::{QError, Result};
use crate::layout::SubsystemLayout;
use crate::linalg::{c, exp_i_hermitian, CMatrix};
use crate::random::stream_rng;
use crate::state::{DensityOperator, PureState, QuantumState};

/// A restart stops once its best value improved by less than this over
/// [`STALL_WINDOW`] iterations.
pub const STALL_TOL: f64 = 1e-7;
pub const STALL_WINDOW: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpParams {
    /// Output dimension of the searched channels (default: input dimension).
    pub out_cap: Option<usize>,
    /// Environment dimension (default: input dimension).
    pub env_cap: Option<usize>,
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for EpParams {
    fn default() -> Self {
        Self {
            out_cap: None,
            env_cap: None,
            restarts: 4,
            max_iters: 2000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpEstimate {
    /// Best `S(A Λ(U))` found; an upper bound on the true minimum.
    pub value: f64,
    pub channel: ChannelSpec,
    pub restarts: usize,
    /// Whether the restart that produced `value` met the stall criterion.
    pub converged: bool,
    /// Best value after each restart (running minimum).
    pub history: Vec<f64>,
}

struct Search<'a> {
    rho: &'a DensityOperator,
    u: &'a str,
    d_u: usize,
    out: usize,
    env: usize,
    embed: CMatrix,
}

impl Search<'_> {
    fn dim(&self) -> usize {
        self.out * self.env
    }

    fn n_params(&self) -> usize {
        self.dim() * self.dim()
    }

    /// `exp(i H(θ)) E`, with `H` spanned by the real diagonal and the real and
    /// imaginary off-diagonal Hermitian generators.
    fn isometry(&self, theta: &[f64]) -> CMatrix {
        let m = self.dim();
        let mut h = CMatrix::zeros(m, m);
        let mut it = theta.iter();
        for j in 0..m {
            h[(j, j)] = c(*it.next().expect("sized"), 0.0);
        }
        for j in 0..m {
            for k in j + 1..m {
                let z = c(*it.next().expect("sized"), *it.next().expect("sized"));
                h[(j, k)] = z;
                h[(k, j)] = z.conj();
            }
        }
        exp_i_hermitian(&h) * &self.embed
    }

    fn channel(&self, iso: CMatrix) -> Result<ChannelSpec> {
        ChannelSpec::new(self.u, self.u, self.out, self.env, iso)
    }

    fn objective(&self, ch: &ChannelSpec) -> Result<f64> {
        Ok(von_neumann_entropy(&apply_channel(self.rho, ch)?))
    }

    fn eval(&self, theta: &[f64]) -> Result<(f64, CMatrix)> {
        let iso = self.isometry(theta);
        let v = self.objective(&self.channel(iso.clone())?)?;
        Ok((v, iso))
    }
}

/// Minimises `S(A Λ(U))` over channels on `u` (every other label of `rho` is
/// `A`) with a (1+1) evolution strategy on the isometry parameters.
///
/// Restart 0 starts from the identity channel, so the result never exceeds
/// `S(AU)` when the output cap admits it. Restart `r` draws from stream `r`
/// of `params.seed`, so adding restarts never worsens the estimate.
pub fn entanglement_of_purification(rho: &DensityOperator, u: &str, params: &EpParams) -> Result<EpEstimate> {
    if params.restarts == 0 {
        return Err(QError::InvalidArgument("restarts must be >= 1".into()));
    }
    let d_u = rho.layout().dim_of(u)?;
    let out = params.out_cap.unwrap_or(d_u);
    let env = params.env_cap.unwrap_or(d_u);
    if out == 0 || env == 0 {
        return Err(QError::InvalidArgument("caps must be >= 1".into()));
    }
    if out * env < d_u {
        return Err(QError::InvalidArgument(format!(
            "output x environment dimension {} cannot hold input dimension {d_u}",
            out * env
        )));
    }
    // |u> -> |u>_out |0>_env when the output fits, else a plain embedding.
    let embed = CMatrix::from_fn(out * env, d_u, |r, col| {
        let row = if out >= d_u { col * env } else { col };
        if r == row {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    let search = Search {
        rho,
        u,
        d_u,
        out,
        env,
        embed,
    };

    let mut best_value = f64::INFINITY;
    let mut best_iso = CMatrix::zeros(0, 0);
    let mut best_converged = false;
    let mut history = Vec::with_capacity(params.restarts);

    if env >= d_u {
        // discard-and-replace channel |u> -> |0>_out |u>_env
        let discard = CMatrix::from_fn(out * env, d_u, |r, col| if r == col { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let v = search.objective(&search.channel(discard.clone())?)?;
        best_value = v;
        best_iso = discard;
        best_converged = true;
    }

    for r in 0..params.restarts {
        let mut rng = stream_rng(params.seed, r as u64);
        let mut theta: Vec<f64> = if r == 0 {
            vec![0.0; search.n_params()]
        } else {
            (0..search.n_params())
                .map(|_| rng.sample::<f64, _>(StandardNormal) * std::f64::consts::FRAC_PI_2)
                .collect()
        };
        let (mut f, mut iso) = search.eval(&theta)?;
        let mut sigma = 0.3;
        let mut trace = vec![f];
        let mut converged = false;
        for _ in 0..params.max_iters {
            let cand: Vec<f64> = theta
                .iter()
                .map(|t| t + sigma * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let (fc, ic) = search.eval(&cand)?;
            if fc < f {
                theta = cand;
                f = fc;
                iso = ic;
                sigma *= 1.5;
            } else {
                sigma *= 1.5f64.powf(-0.25);
            }
            trace.push(f);
            let n = trace.len();
            if n > STALL_WINDOW && trace[n - 1 - STALL_WINDOW] - f < STALL_TOL {
                converged = true;
                break;
            }
            if sigma < 1e-10 {
                converged = true;
                break;
            }
        }
        if f < best_value {
            best_value = f;
            best_iso = iso;
            best_converged = converged;
        }
        history.push(best_value);
    }
    debug_assert_eq!(best_iso.ncols(), search.d_u);
    Ok(EpEstimate {
        value: best_value,
        channel: search.channel(best_iso)?,
        restarts: params.restarts,
        converged: best_converged,
        history,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideInfoRates {
    /// `R_a = S(A|U)`
    pub r_a: f64,
    /// `R_b = E_p(AU:R) - S(A|U)` with the estimated `E_p`
    pub r_b: f64,
    pub entanglement_of_purification: EpEstimate,
}

/// Achievable corner for coding `A` with side information `U = ch(B)`.
///
/// `alice` names Alice's subsystems; the channel's input must be outside
/// them. A channel with output dimension 1 leaves a trivial `U`.
pub fn side_info_rates<S: AsRef<str>>(
    psi: &PureState,
    alice: &[S],
    ch: &ChannelSpec,
    params: &EpParams,
) -> Result<SideInfoRates> {
    if alice.is_empty() {
        return Err(QError::EmptySelection);
    }
    if alice.iter().any(|a| a.as_ref() == ch.input()) {
        return Err(QError::OverlappingSets(ch.input().to_string()));
    }
    psi.layout().positions(alice)?;
    let rho = apply_channel(&psi.to_density(), ch)?;
    let u = ch.output().to_string();
    let mut keep: Vec<String> = alice.iter().map(|a| a.as_ref().to_string()).collect();
    let rho_au = if ch.out_dim() == 1 {
        let trivial = PureState::basis(SubsystemLayout::new([(u.as_str(), 1)])?, &[0])?.to_density();
        rho.partial_trace(&keep)?.tensor(&trivial)?
    } else {
        keep.push(u.clone());
        rho.partial_trace(&keep)?
    };
    let r_a = conditional_entropy(&rho_au, &keep[..alice.len()], &[u.as_str()])?;
    let ep = entanglement_of_purification(&rho_au, &u, params)?;
    Ok(SideInfoRates {
        r_a,
        r_b: ep.value - r_a,
        entanglement_of_purification: ep,
    })
}
