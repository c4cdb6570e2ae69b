#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <vector>

#include "qcoh/rng.hpp"

namespace qcoh {

enum class Execution { serial, parallel };

// Runs `trials` independent Monte-Carlo trials. Each trial owns the RNG
// stream derived from (seed, index), so the parallel path produces exactly
// the results of the serial reference path, merged in trial order. The
// serial path is kept as the comparison baseline for tests and benchmarks.
//
// Exceptions thrown by a trial are captured and rethrown after the loop,
// lowest trial index first.
template <typename Result>
std::vector<Result> run_trials(std::size_t trials,
                               const std::function<Result(std::size_t, Rng&)>& body,
                               std::uint64_t seed,
                               Execution mode = Execution::parallel) {
  std::vector<Result> results(trials);
  std::vector<std::exception_ptr> errors(trials);

  if (mode == Execution::serial) {
    for (std::size_t i = 0; i < trials; ++i) {
      Rng rng = Rng::stream(seed, i);
      results[i] = body(i, rng);
    }
    return results;
  }

#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(trials); ++i) {
    try {
      Rng rng = Rng::stream(seed, static_cast<std::size_t>(i));
      results[static_cast<std::size_t>(i)] = body(static_cast<std::size_t>(i), rng);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return results;
}

}  // namespace qcoh
