#pragma once

#include <vector>

#include "spinboson/spin_core.hpp"

namespace spinboson {

struct DenseOracleOptions {
  unsigned site_cap = 14;
  int digits = 12;
};

/// Independent reference for normalized_trace: builds the collective
/// operators on the full 2^N product basis as sums of single-site Pauli
/// matrices and traces the polynomial directly. Cost grows like 4^N.
TraceResult dense_oracle_trace(unsigned sites, const SpinPolynomial& poly,
                               const DenseOracleOptions& options = {});

/// tr(P_j Q_m W) over the product space, where Q_m projects onto total
/// magnetization m and P_j onto total spin j (built as a Lagrange polynomial
/// in S^2). Letters carry the usual 1/sqrt(N) scale; traces are not divided
/// by 2^N. One entry per admissible (twice_j, twice_m) pair.
struct ProjectedTrace {
  int twice_j = 0;
  int twice_m = 0;
  ExactTrace trace;
};

std::vector<ProjectedTrace> dense_projected_traces(unsigned sites, const SpinPolynomial& poly,
                                                   unsigned site_cap = 12);

}  // namespace spinboson
