//! End-to-end campaigns over enumerated or sampled hypergraphs, plus the two
//! closed-form audits.

mod audit;
mod campaign;

pub use audit::{crossover_audit, edge_addition_sigma2_audit, CrossoverReport, CrossoverRow, Sigma2AuditReport};
pub use campaign::{
    parse_counterexamples, reverify, run_campaign, theorem_check, CampaignMode, CampaignReport, CampaignSpec,
    Classification, CounterexampleRecord, TheoremKind, TheoremOutcome, REPORT_HEADER,
};
