//! Performance estimation for classifiers trained and evaluated on
//! positive-unlabeled data.
//!
//! A classifier scored on labeled-vs-unlabeled data gives biased ROC and PR
//! curves. Given the positive fraction of the unlabeled data (`alpha`) and
//! of the labeled data (`beta`), [`correction`] recovers the
//! positive-vs-negative curves and areas, either point by point (indirect)
//! or directly from the AUC. [`simulate`] and [`evaluate`] provide a
//! synthetic harness for measuring how well that works.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod correction;
pub mod domain;
pub mod error;
pub mod evaluate;
pub mod io;
pub mod metrics;
pub mod simulate;

pub use domain::{
    validate_dataset, CorrectionMethod, CorrectionReport, Curve, CurveKind, DatasetSummary,
    MixtureParams, OperatingPoint, PuDataset, PuLabel, PuSample, Truth,
};
pub use error::{Error, Result};
pub use metrics::{AreaMode, RatePair};
