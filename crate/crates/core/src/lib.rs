//! Claim verification, scoring, response integrity signals and ROI analytics
//! for candidate screening campaigns.

pub mod claimex;
pub mod corpus;
pub mod integrity;
pub mod pipeline;
pub mod qgen;
pub mod roi;
pub mod score;
pub mod text;

pub use claimex::{Claim, ClaimExtractor, ClaimKind, Gazetteer, Quantity, QuantityUnit};
pub use corpus::{
    ApplicationRecord, Campaign, CampaignLedger, JobDomain, JobSpec, Rate, ResponseRecord,
};
pub use integrity::{
    FlagCategory, IntegrityFlag, IntegrityMetrics, Severity, ThresholdProfile,
};
pub use pipeline::{
    CampaignReport, CampaignRun, CapabilityLevel, ErrorKind, PipelineConfig, PipelineError,
};
pub use qgen::{TemplatePack, VerificationQuestion};
pub use roi::{RoiParams, RoiResult, RoiRow, RoundingMode, Speedup};
pub use score::{CrossValidationMatrix, DomainStats, ScoreCard};
