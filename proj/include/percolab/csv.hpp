#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "percolab/bounds.hpp"

namespace percolab {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const char* cluster_csv_header() { return "seed,covered,N,D,M,boundary_hit,trunc_err"; }

inline void write_cluster_row(std::ostream& os, const ClusterSample& row) {
  os << row.seed << ',' << (row.summary.covered ? 1 : 0) << ',' << row.summary.ball_count << ','
     << fmt17(row.summary.diameter) << ',' << fmt17(row.summary.reach) << ','
     << (row.summary.boundary_hit ? 1 : 0) << ',' << fmt17(row.truncation_error) << '\n';
}

inline const char* estimate_csv_header() {
  return "kind,alpha_or_t,lambda,d,law,n,successes,p_hat,ci_low,ci_high,censored_fraction,"
         "trunc_bias,master_seed";
}

inline void write_estimate_row(std::ostream& os, const std::string& kind, double alpha_or_t,
                               const ModelParams& params, const Estimate& est) {
  os << kind << ',' << fmt17(alpha_or_t) << ',' << fmt17(params.intensity) << ','
     << params.dimension << ',' << params.law.to_spec() << ',' << est.trials << ','
     << est.successes << ',' << fmt17(est.p_hat) << ',' << fmt17(est.ci_low) << ','
     << fmt17(est.ci_high) << ',' << fmt17(est.censored_fraction) << ','
     << fmt17(est.trunc_bias_bound) << ',' << est.master_seed << '\n';
}

}  // namespace percolab
