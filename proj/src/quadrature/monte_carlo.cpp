#include "projave/quadrature/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "projave/errors.hpp"

namespace projave::quadrature {

SampleStatistics::SampleStatistics(std::size_t outputs)
    : mean_(outputs, 0.0), comoment_(outputs * outputs, 0.0), scratch_(outputs, 0.0) {}

void SampleStatistics::add(std::span<const double> sample) {
  const std::size_t k = outputs();
  ++count_;
  const double inv = 1.0 / static_cast<double>(count_);
  std::vector<double>& delta = scratch_;
  delta.resize(k);
  for (std::size_t a = 0; a < k; ++a) {
    delta[a] = sample[a] - mean_[a];
    mean_[a] += delta[a] * inv;
  }
  for (std::size_t a = 0; a < k; ++a) {
    const double after = sample[a] - mean_[a];
    for (std::size_t b = 0; b < k; ++b) {
      comoment_[a * k + b] += after * delta[b];
    }
  }
}

void SampleStatistics::merge(const SampleStatistics& other) {
  if (other.count_ == 0) {
    return;
  }
  if (count_ == 0) {
    *this = other;
    return;
  }
  const std::size_t k = outputs();
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  std::vector<double> delta(k);
  for (std::size_t a = 0; a < k; ++a) {
    delta[a] = other.mean_[a] - mean_[a];
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      comoment_[a * k + b] += other.comoment_[a * k + b] + delta[a] * delta[b] * na * nb / n;
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    mean_[a] += delta[a] * nb / n;
  }
  count_ += other.count_;
}

double SampleStatistics::covariance(std::size_t a, std::size_t b) const {
  if (count_ < 2) {
    return 0.0;
  }
  return comoment_[a * outputs() + b] / static_cast<double>(count_ - 1);
}

double SampleStatistics::std_error(std::size_t k) const {
  if (count_ < 2) {
    return 0.0;
  }
  return std::sqrt(std::max(0.0, covariance(k, k)) / static_cast<double>(count_));
}

double SampleStatistics::std_error_of(std::span<const double> weights) const {
  if (count_ < 2) {
    return 0.0;
  }
  double var = 0.0;
  for (std::size_t a = 0; a < outputs(); ++a) {
    for (std::size_t b = 0; b < outputs(); ++b) {
      var += weights[a] * weights[b] * covariance(a, b);
    }
  }
  return std::sqrt(std::max(0.0, var) / static_cast<double>(count_));
}

SampleStatistics run_monte_carlo(std::size_t samples, std::uint64_t seed, std::size_t outputs,
                                 const SampleFnFactory& factory) {
  if (samples == 0) {
    throw ConfigError("run_monte_carlo: sample count must be >= 1");
  }
  const std::size_t batches = (samples + kBatchSize - 1) / kBatchSize;
  std::vector<SampleStatistics> partial(batches, SampleStatistics(outputs));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      SampleFn fn = factory();
      std::vector<double> out(outputs);
      for (std::size_t b = next++; b < batches; b = next++) {
        geometry::Rng rng(geometry::derive_seed(seed, b));
        const std::size_t begin = b * kBatchSize;
        const std::size_t end = std::min(samples, begin + kBatchSize);
        for (std::size_t s = begin; s < end; ++s) {
          fn(rng, out);
          partial[b].add(out);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
      next = batches;
    }
  };

  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t threads = std::min(hw, batches);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  SampleStatistics total(outputs);
  for (const auto& p : partial) {
    total.merge(p);
  }
  return total;
}

}  // namespace projave::quadrature
