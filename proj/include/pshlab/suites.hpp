#pragma once

#include <string>

#include "pshlab/config.hpp"
#include "pshlab/report.hpp"

namespace pshlab {

/// Eigenstructure sweeps, the product-rule identity, and the
/// degenerate/strict split of the product Levi form.
VerificationReport run_lemmas_suite(const RunConfig& cfg);

/// The failing cutoff model: negative Levi eigenvalue and negative
/// deficiency for exp(-1/t), plus an exploratory scan of the interpolation
/// cutoff.
VerificationReport run_counterexample_suite(const RunConfig& cfg);

/// D and C0 searches, the scaling identity, and the five conditions on h
/// at (D*/2, 2 C0*).
VerificationReport run_construction_suite(const RunConfig& cfg);

/// Constant tables over the radius sweep, r-independence ratios, baseline
/// comparison, and grid-refinement stability.
VerificationReport run_constants_suite(const RunConfig& cfg);

struct CurvesOutput {
  VerificationReport report;
  std::string csv;
};

/// Curve validation, quadrature oracles, the K table, and the area-ratio
/// monotonicity sweep.
CurvesOutput run_curves_suite(const RunConfig& cfg);

}  // namespace pshlab
