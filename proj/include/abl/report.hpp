#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace abl {

enum class EvalMode { exact_rational, log_space };

// Per-integer verdict with a signed margin (rhs - lhs in the criterion's
// natural scale). In log_space mode `error_bound` is a certified bound on the
// margin's evaluation error; |margin| <= error_bound means indeterminate.
struct CriterionReport {
  std::string n_descriptor;
  std::uint64_t n = 0;  // 0 when the descriptor is a huge factored value
  std::string criterion;
  bool holds = false;
  double margin = 0;
  EvalMode mode = EvalMode::exact_rational;
  double error_bound = 0;
  bool indeterminate = false;
  std::string note;
};

// One Mertens-type comparison point: empirical sum/product vs predicted main
// term, with the residual measured against an explicit envelope.
struct RemainderSample {
  double x = 0;
  double empirical = 0;
  double main_term = 0;
  double residual = 0;  // empirical - main_term
  double envelope = 0;
  bool within = false;

  static RemainderSample make(double x, double empirical, double main_term,
                              double envelope) {
    RemainderSample s;
    s.x = x;
    s.empirical = empirical;
    s.main_term = main_term;
    s.residual = empirical - main_term;
    s.envelope = envelope;
    s.within = std::abs(s.residual) <= envelope;
    return s;
  }
};

struct ConstantEstimate {
  std::string name;          // gamma, B, B_aq, gamma_aq, A_plus, A_minus
  double value = 0;
  double reference = 0;      // paper decimal when available
  bool has_reference = false;
  double abs_error = 0;      // |value - reference| when reference present
  std::string note;
};

}  // namespace abl
