#include "cusplab/error.hpp"

namespace cusplab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::presentation_mismatch: return "presentation-mismatch";
    case ErrorKind::unsupported_peripheral: return "unsupported-peripheral";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::invalid_depth: return "invalid-depth";
    case ErrorKind::invalid_metric: return "invalid-metric";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::sampling_starved: return "sampling-starved";
    case ErrorKind::undefined_tuple: return "undefined-tuple";
    case ErrorKind::invalid_proxy: return "invalid-proxy";
    case ErrorKind::degenerate_pair: return "degenerate-pair";
    case ErrorKind::extension: return "extension";
    case ErrorKind::correspondence: return "correspondence";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::coverage_gap: return "coverage-gap";
    case ErrorKind::invariant_violation: return "invariant-violation";
    case ErrorKind::parse: return "parse";
    case ErrorKind::kind_mismatch: return "kind-mismatch";
    case ErrorKind::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace cusplab
