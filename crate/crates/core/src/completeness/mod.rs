//! Cauchy sequences, nets and covers on finite samples, transport of total
//! boundedness, and the uniform-tail criterion for `l^p` families.

mod cover;
mod lp;
mod sequence;
mod transport;

pub use cover::{
    greedy_net, heine_borel_report, split_radius, two_sided_cells, two_sided_cover_from_onesided, CellFailure,
    CellReport, CoverResult, HeineBorelEntry, HeineBorelReport,
};
pub use lp::{lp_tail_criterion, lp_two_eps_net, LpNet, LpTailReport, TailWitness, TruncatedSequenceFamily};
pub use sequence::{classify_cauchy, converges_to, CauchyClass, CauchyKind, Convergence, SampledSequence};
pub use transport::{transport_total_boundedness, TransportResult};
