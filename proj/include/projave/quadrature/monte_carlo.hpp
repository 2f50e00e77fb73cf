#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "projave/geometry/haar.hpp"

namespace projave::quadrature {

/// Running mean and co-moment matrix of a fixed number of jointly sampled
/// outputs (Welford updates, Chan merge).
class SampleStatistics {
 public:
  explicit SampleStatistics(std::size_t outputs = 1);

  void add(std::span<const double> sample);
  void merge(const SampleStatistics& other);

  std::size_t outputs() const { return mean_.size(); }
  std::size_t count() const { return count_; }
  double mean(std::size_t k) const { return mean_[k]; }
  double covariance(std::size_t a, std::size_t b) const;

  /// Standard error of the k-th sample mean.
  double std_error(std::size_t k) const;

  /// Standard error of sum_k weights[k] * mean(k); the co-moments make this
  /// the paired error when outputs share random numbers.
  double std_error_of(std::span<const double> weights) const;

 private:
  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> comoment_;  // row-major outputs x outputs
  std::vector<double> scratch_;
};

/// Fills `out` with one joint sample using the supplied generator.
using SampleFn = std::function<void(geometry::Rng& rng, std::span<double> out)>;

/// Factory producing per-worker sample functions; each worker owns its
/// scratch state, so the returned callable need not be thread-safe.
using SampleFnFactory = std::function<SampleFn()>;

inline constexpr std::size_t kBatchSize = 4096;

/// Draws `samples` joint samples. Batch b uses the generator seeded with
/// derive_seed(seed, b); batches may run on several threads but are merged
/// in batch order, so the result is independent of the thread count.
SampleStatistics run_monte_carlo(std::size_t samples, std::uint64_t seed, std::size_t outputs,
                                 const SampleFnFactory& factory);

}  // namespace projave::quadrature
