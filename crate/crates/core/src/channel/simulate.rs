use crate::flags::{Flag, StutteringFlag, Subspace};
use crate::gfq::{Field, Matrix};
use crate::rng::XorShift64Star;

use super::{error_count, ChannelError, NetworkTopology};

/// How erasures and errors enter a transmission.
#[derive(Debug, Clone, PartialEq)]
pub enum Injection {
    /// Lossless, error-free links; only the random mixing can lose rank.
    None,
    /// Each edge drops its packet with probability `loss_probability`, and
    /// `errors_per_step` distinct edges per step carry a uniformly random
    /// payload instead of their packet.
    Random { loss_probability: f64, errors_per_step: usize },
    /// The received chain is built directly with the requested `(ρ_i, f_i)`
    /// at every step.
    Targeted { counts: Vec<(usize, usize)> },
    /// Like `Targeted`, with `total` units of corruption spread uniformly
    /// over steps and over erasure/error, redrawn until realizable.
    TargetedTotal { total: usize },
}

/// Whether intermediate nodes keep packets from earlier steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Buffering {
    Cumulative,
    PerStep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionConfig {
    pub seed: u64,
    pub injection: Injection,
    pub buffering: Buffering,
    /// Redraw a step until the mixing alone (ignoring loss and errors)
    /// delivers all of `V_i` to the receiver.
    pub enforce_rank: bool,
    /// Attempts per step for `enforce_rank` and per transmission for the
    /// targeted samplers.
    pub retry_limit: usize,
    /// Receiver whose view is recorded; defaults to the first receiver.
    pub receiver: Option<String>,
}

impl Default for TransmissionConfig {
    fn default() -> Self {
        TransmissionConfig {
            seed: 0,
            injection: Injection::None,
            buffering: Buffering::Cumulative,
            enforce_rank: false,
            retry_limit: 1000,
            receiver: None,
        }
    }
}

impl TransmissionConfig {
    pub fn validate(&self, steps: usize) -> Result<(), ChannelError> {
        match &self.injection {
            Injection::Random { loss_probability, .. } if !(0.0..=1.0).contains(loss_probability) => Err(
                ChannelError::InvalidConfig(format!("loss probability {loss_probability} outside [0, 1]")),
            ),
            Injection::Targeted { counts } if counts.len() != steps => Err(ChannelError::InvalidConfig(format!(
                "{} targeted steps for a flag with {steps} members",
                counts.len()
            ))),
            _ if self.retry_limit == 0 => Err(ChannelError::InvalidConfig("retry limit must be positive".into())),
            _ => Ok(()),
        }
    }
}

/// What one receiver saw while a flag was transmitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransmissionRecord {
    pub sent: Flag,
    pub received: StutteringFlag,
    /// Rows received at each step.
    pub packets: Vec<Matrix>,
    pub rho: Vec<usize>,
    pub f: Vec<usize>,
    pub error_count: usize,
}

#[derive(Clone)]
struct Packet {
    payload: Vec<u32>,
    clean: Vec<u32>,
}

fn random_vector(field: &Field, n: usize, rng: &mut XorShift64Star) -> Vec<u32> {
    (0..n).map(|_| rng.below(field.order() as u64) as u32).collect()
}

fn random_in(space: &Subspace, rng: &mut XorShift64Star) -> Vec<u32> {
    let coeffs = random_vector(space.field(), space.dim(), rng);
    space.basis().vec_mul(&coeffs).expect("coefficient count matches dimension")
}

fn combine(field: &Field, n: usize, coeffs: &[u32], rows: &[&[u32]]) -> Vec<u32> {
    let mut out = vec![0; n];
    for (&c, row) in coeffs.iter().zip(rows) {
        if c != 0 {
            for (o, &v) in out.iter_mut().zip(row.iter()) {
                *o = field.add(*o, field.mul(c, v));
            }
        }
    }
    out
}

fn span_with(space: &Subspace, rows: &[Vec<u32>]) -> Subspace {
    let field = space.field();
    let n = space.ambient();
    let extra = Matrix::from_vec(field, rows.len(), n, rows.concat()).expect("row width n");
    space.sum(&Subspace::from_rows(&extra)).expect("same ambient")
}

fn receiver_index(net: &NetworkTopology, cfg: &TransmissionConfig) -> Result<usize, ChannelError> {
    match &cfg.receiver {
        Some(name) => {
            let node = net.node(name).ok_or_else(|| ChannelError::UnknownNode(name.clone()))?;
            if net.role(node) != super::NodeRole::Receiver {
                return Err(ChannelError::InvalidConfig(format!("{name:?} is not a receiver")));
            }
            Ok(node)
        }
        None => Ok(net.receivers().next().expect("validated topology has a receiver")),
    }
}

/// Every increment `k_i = d_i − d_{i−1}` must fit through the min-cut to
/// every receiver.
pub fn check_capacity(net: &NetworkTopology, codeword: &Flag) -> Result<(), ChannelError> {
    let mut previous = 0;
    for (step, &d) in codeword.flag_type().dims().iter().enumerate() {
        let increment = d - previous;
        previous = d;
        for r in net.receivers() {
            let cut = net.min_cut(r);
            if increment > cut {
                return Err(ChannelError::CapacityExceeded {
                    receiver: net.name(r).to_string(),
                    step: step + 1,
                    increment,
                    min_cut: cut,
                });
            }
        }
    }
    Ok(())
}

/// Sends `codeword` through `net` with a generator seeded from `cfg.seed`.
pub fn simulate_transfer(
    net: &NetworkTopology,
    codeword: &Flag,
    cfg: &TransmissionConfig,
) -> Result<TransmissionRecord, ChannelError> {
    let mut rng = XorShift64Star::new(cfg.seed);
    simulate_with_rng(net, codeword, cfg, &mut rng)
}

/// [`simulate_transfer`] drawing from a caller-owned generator.
pub fn simulate_with_rng(
    net: &NetworkTopology,
    codeword: &Flag,
    cfg: &TransmissionConfig,
    rng: &mut XorShift64Star,
) -> Result<TransmissionRecord, ChannelError> {
    let steps = codeword.flag_type().len();
    cfg.validate(steps)?;
    check_capacity(net, codeword)?;
    let (received, packets) = match &cfg.injection {
        Injection::Targeted { counts } => targeted_chain(codeword, counts, cfg.retry_limit, rng)?,
        Injection::TargetedTotal { total } => targeted_total_chain(codeword, *total, cfg.retry_limit, rng)?,
        Injection::None => propagate(net, codeword, cfg, 0.0, 0, rng)?,
        Injection::Random {
            loss_probability,
            errors_per_step,
        } => propagate(net, codeword, cfg, *loss_probability, *errors_per_step, rng)?,
    };
    let count = error_count(codeword, &received)?;
    Ok(TransmissionRecord {
        sent: codeword.clone(),
        received,
        packets,
        rho: count.rho,
        f: count.f,
        error_count: count.total,
    })
}

/// Random linear network coding through the DAG. Per step the draw order
/// is: the error edges (a partial Fisher–Yates shuffle of the edge list),
/// then for each node in topological order and each of its out-edges the
/// mixing coefficients, one loss draw, and the error payload if the edge
/// was selected.
fn propagate(
    net: &NetworkTopology,
    codeword: &Flag,
    cfg: &TransmissionConfig,
    loss_probability: f64,
    errors_per_step: usize,
    rng: &mut XorShift64Star,
) -> Result<(StutteringFlag, Vec<Matrix>), ChannelError> {
    let field = codeword.field().clone();
    let n = codeword.ambient();
    let receiver = receiver_index(net, cfg)?;
    let edge_count = net.edges().len();
    if errors_per_step > edge_count {
        return Err(ChannelError::InvalidConfig(format!(
            "{errors_per_step} error packets per step on {edge_count} edges"
        )));
    }
    let basis = codeword.adapted_basis();
    let mut buffers: Vec<Vec<Packet>> = vec![Vec::new(); net.node_count()];
    let mut received = Subspace::zero(&field, n);
    let mut clean_received = Subspace::zero(&field, n);
    let mut members = Vec::with_capacity(codeword.members().len());
    let mut packets = Vec::with_capacity(members.capacity());

    for v in codeword.members() {
        let d = v.dim();
        let mut attempt = 0;
        let (next_buffers, rows, clean_rows) = loop {
            attempt += 1;
            let mut bufs = if cfg.buffering == Buffering::Cumulative {
                buffers.clone()
            } else {
                vec![Vec::new(); net.node_count()]
            };
            bufs[net.source()] = (0..d)
                .map(|r| Packet {
                    payload: basis.row(r).to_vec(),
                    clean: basis.row(r).to_vec(),
                })
                .collect();

            let mut edge_pool: Vec<usize> = (0..edge_count).collect();
            let mut is_error = vec![false; edge_count];
            for e in 0..errors_per_step {
                let pick = e + rng.below((edge_count - e) as u64) as usize;
                edge_pool.swap(e, pick);
                is_error[edge_pool[e]] = true;
            }

            let mut rows = Vec::new();
            let mut clean_rows = Vec::new();
            for &node in net.topological_order() {
                let out: Vec<usize> = net.out_edges(node).collect();
                if out.is_empty() {
                    continue;
                }
                let payloads: Vec<&[u32]> = bufs[node].iter().map(|p| p.payload.as_slice()).collect();
                let cleans: Vec<&[u32]> = bufs[node].iter().map(|p| p.clean.as_slice()).collect();
                let mut sent = Vec::with_capacity(out.len());
                for e in out {
                    let coeffs = random_vector(&field, payloads.len(), rng);
                    let mut packet = Packet {
                        payload: combine(&field, n, &coeffs, &payloads),
                        clean: combine(&field, n, &coeffs, &cleans),
                    };
                    if rng.unit_f64() < loss_probability {
                        packet.payload = vec![0; n];
                    }
                    if is_error[e] {
                        packet.payload = random_vector(&field, n, rng);
                    }
                    sent.push((net.edges()[e].1, packet));
                }
                for (target, packet) in sent {
                    if target == receiver {
                        rows.push(packet.payload.clone());
                        clean_rows.push(packet.clean.clone());
                    }
                    bufs[target].push(packet);
                }
            }
            if !cfg.enforce_rank || span_with(&clean_received, &clean_rows) == *v {
                break (bufs, rows, clean_rows);
            }
            if attempt >= cfg.retry_limit {
                return Err(ChannelError::RetryLimitExceeded { attempts: cfg.retry_limit });
            }
        };
        buffers = next_buffers;
        clean_received = span_with(&clean_received, &clean_rows);
        received = span_with(&received, &rows);
        members.push(received.clone());
        packets.push(Matrix::from_vec(&field, rows.len(), n, rows.concat())?);
    }
    Ok((StutteringFlag::new(members)?, packets))
}

/// One attempt at a chain with exactly the requested counts; `None` when
/// the draws made the request infeasible.
fn try_targeted(codeword: &Flag, counts: &[(usize, usize)], rng: &mut XorShift64Star) -> Option<Vec<Subspace>> {
    let field = codeword.field();
    let n = codeword.ambient();
    let mut w = Subspace::zero(field, n);
    let mut members = Vec::with_capacity(counts.len());
    for (v, &(rho, f)) in codeword.members().iter().zip(counts) {
        let keep = v.dim().checked_sub(rho)?;
        let mut s = w.intersection(v).expect("same ambient");
        if s.dim() > keep {
            return None;
        }
        while s.dim() < keep {
            s = span_with(&s, &[random_in(v, rng)]);
        }
        w = w.sum(&s).expect("same ambient");
        let mut errors = w.dim() - keep;
        if errors > f {
            return None;
        }
        let mut outside = v.sum(&w).expect("same ambient");
        if f - errors > n - outside.dim() {
            return None;
        }
        while errors < f {
            let x = random_vector(field, n, rng);
            let grown = span_with(&outside, &[x.clone()]);
            if grown.dim() > outside.dim() {
                outside = grown;
                w = span_with(&w, &[x]);
                errors += 1;
            }
        }
        members.push(w.clone());
    }
    Some(members)
}

fn chain_packets(members: &[Subspace]) -> Vec<Matrix> {
    members.iter().map(|w| w.basis().clone()).collect()
}

fn targeted_chain(
    codeword: &Flag,
    counts: &[(usize, usize)],
    retry_limit: usize,
    rng: &mut XorShift64Star,
) -> Result<(StutteringFlag, Vec<Matrix>), ChannelError> {
    for _ in 0..retry_limit {
        if let Some(members) = try_targeted(codeword, counts, rng) {
            let packets = chain_packets(&members);
            return Ok((StutteringFlag::new(members)?, packets));
        }
    }
    Err(ChannelError::RetryLimitExceeded { attempts: retry_limit })
}

fn targeted_total_chain(
    codeword: &Flag,
    total: usize,
    retry_limit: usize,
    rng: &mut XorShift64Star,
) -> Result<(StutteringFlag, Vec<Matrix>), ChannelError> {
    let steps = codeword.members().len();
    for _ in 0..retry_limit {
        let mut counts = vec![(0, 0); steps];
        for _ in 0..total {
            let step = rng.below(steps as u64) as usize;
            if rng.below(2) == 0 {
                counts[step].0 += 1;
            } else {
                counts[step].1 += 1;
            }
        }
        if let Some(members) = try_targeted(codeword, &counts, rng) {
            let packets = chain_packets(&members);
            return Ok((StutteringFlag::new(members)?, packets));
        }
    }
    Err(ChannelError::RetryLimitExceeded { attempts: retry_limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::{flag_from_matrix, FlagType};

    fn random_flag(field: &Field, t: &FlagType, rng: &mut XorShift64Star) -> Flag {
        let n = t.ambient();
        loop {
            let m = Matrix::from_vec(field, n, n, random_vector(field, n * n, rng)).unwrap();
            if m.rank() == n {
                return flag_from_matrix(&m, t).unwrap();
            }
        }
    }

    #[test]
    fn clean_butterfly_delivers_the_flag() {
        let f = Field::prime(2).unwrap();
        let t = FlagType::full(4);
        let net = NetworkTopology::butterfly();
        let mut rng = XorShift64Star::new(5);
        for seed in 0..100 {
            let flag = random_flag(&f, &t, &mut rng);
            let cfg = TransmissionConfig {
                seed,
                enforce_rank: true,
                ..Default::default()
            };
            let rec = simulate_transfer(&net, &flag, &cfg).unwrap();
            assert_eq!(rec.received.to_flag(), Some(flag.clone()));
            assert_eq!(rec.error_count, 0);
        }
    }

    #[test]
    fn records_are_nested_and_balanced() {
        let f = Field::prime(3).unwrap();
        let t = FlagType::new(4, vec![1, 3]).unwrap();
        let net = NetworkTopology::butterfly();
        let mut rng = XorShift64Star::new(6);
        for (seed, buffering) in (0..60).zip([Buffering::Cumulative, Buffering::PerStep].iter().cycle()) {
            let flag = random_flag(&f, &t, &mut rng);
            let cfg = TransmissionConfig {
                seed,
                injection: Injection::Random {
                    loss_probability: 0.2,
                    errors_per_step: (seed % 3) as usize,
                },
                buffering: *buffering,
                ..Default::default()
            };
            let rec = simulate_transfer(&net, &flag, &cfg).unwrap();
            let m = rec.received.members();
            assert!(m.windows(2).all(|w| w[0].is_subspace_of(&w[1])));
            assert_eq!(rec.error_count, rec.rho.iter().sum::<usize>() + rec.f.iter().sum::<usize>());
            assert_eq!(simulate_transfer(&net, &flag, &cfg).unwrap(), rec);
        }
    }

    #[test]
    fn targeted_counts_are_exact() {
        let f = Field::prime(2).unwrap();
        let t = FlagType::full(4);
        let net = NetworkTopology::butterfly();
        let mut rng = XorShift64Star::new(7);
        for step in 0..3 {
            let flag = random_flag(&f, &t, &mut rng);
            let mut counts = vec![(0, 0); 3];
            counts[step] = (1, 0);
            let cfg = TransmissionConfig {
                seed: step as u64,
                injection: Injection::Targeted { counts: counts.clone() },
                ..Default::default()
            };
            let rec = simulate_transfer(&net, &flag, &cfg).unwrap();
            assert_eq!(rec.error_count, 1);
            assert_eq!(rec.rho.iter().zip(&rec.f).map(|(&r, &e)| (r, e)).collect::<Vec<_>>(), counts);
        }
        let flag = random_flag(&f, &t, &mut rng);
        let cfg = TransmissionConfig {
            injection: Injection::Targeted {
                counts: vec![(0, 1), (1, 1), (0, 0)],
            },
            ..Default::default()
        };
        // an error direction can only vanish by falling into a later V_i
        match simulate_transfer(&net, &flag, &cfg) {
            Ok(rec) => assert_eq!((rec.rho, rec.f), (vec![0, 1, 0], vec![1, 1, 0])),
            Err(e) => assert!(matches!(e, ChannelError::RetryLimitExceeded { .. })),
        }
        for total in 0..4 {
            let cfg = TransmissionConfig {
                seed: total as u64,
                injection: Injection::TargetedTotal { total },
                ..Default::default()
            };
            assert_eq!(simulate_transfer(&net, &flag, &cfg).unwrap().error_count, total);
        }
    }

    #[test]
    fn infeasible_requests() {
        let f = Field::prime(2).unwrap();
        let flag = random_flag(&f, &FlagType::full(3), &mut XorShift64Star::new(8));
        let net = NetworkTopology::butterfly();
        let cfg = TransmissionConfig {
            injection: Injection::Targeted {
                counts: vec![(2, 0), (0, 0)],
            },
            retry_limit: 5,
            ..Default::default()
        };
        assert!(matches!(
            simulate_transfer(&net, &flag, &cfg),
            Err(ChannelError::RetryLimitExceeded { .. })
        ));
        let cfg = TransmissionConfig {
            injection: Injection::Targeted { counts: vec![(0, 0)] },
            ..Default::default()
        };
        assert!(matches!(simulate_transfer(&net, &flag, &cfg), Err(ChannelError::InvalidConfig(_))));
        let cfg = TransmissionConfig {
            injection: Injection::Random {
                loss_probability: 1.5,
                errors_per_step: 0,
            },
            ..Default::default()
        };
        assert!(matches!(simulate_transfer(&net, &flag, &cfg), Err(ChannelError::InvalidConfig(_))));
    }

    #[test]
    fn capacity_is_checked() {
        let f = Field::prime(2).unwrap();
        let net: NetworkTopology = "node s source\nnode r receiver\nedge s r\n".parse().unwrap();
        let flag = random_flag(&f, &FlagType::new(4, vec![1, 3]).unwrap(), &mut XorShift64Star::new(9));
        assert!(matches!(
            simulate_transfer(&net, &flag, &TransmissionConfig::default()),
            Err(ChannelError::CapacityExceeded { increment: 2, min_cut: 1, .. })
        ));
        let full = random_flag(&f, &FlagType::full(4), &mut XorShift64Star::new(9));
        let rec = simulate_transfer(&net, &full, &TransmissionConfig { enforce_rank: true, ..Default::default() }).unwrap();
        assert_eq!(rec.error_count, 0);
    }
}
