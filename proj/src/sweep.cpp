#include "cmcrad/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <random>
#include <thread>

#include "cmcrad/traceless.hpp"

namespace cmcrad {

std::vector<CapCaseKey> standard_cap_grid(int delta_count, int h_count) {
  static constexpr std::array<double, 6> kHOffsets{0.1, 0.5, 1.0, 2.0, 4.0, 8.0};
  std::vector<CapCaseKey> cases;
  for (int n = 2; n <= 4; ++n) {
    const double top = 0.95 * delta_threshold_value(n);
    for (double kappa : {-1.0, 0.0}) {
      const double h0 = mean_curvature_threshold(kappa);
      for (int i = 0; i < delta_count; ++i) {
        const double delta = delta_count > 1 ? top * i / (delta_count - 1) : 0.0;
        for (int j = 0; j < h_count; ++j) {
          const double offset = j < static_cast<int>(kHOffsets.size()) ? kHOffsets[j] : 8.0 * (j - 4);
          cases.push_back({n, kappa, delta, h0 + offset});
        }
      }
    }
  }
  std::sort(cases.begin(), cases.end());
  return cases;
}

std::vector<CapCaseKey> cap_grid(std::span<const int> n, std::span<const double> kappa,
                                 std::span<const double> delta, std::span<const double> H) {
  std::vector<CapCaseKey> cases;
  for (int nn : n)
    for (double k : kappa)
      for (double d : delta)
        for (double h : H) cases.push_back({nn, k, d, h});
  std::sort(cases.begin(), cases.end());
  return cases;
}

std::vector<CapOutcome> run_cap_sweep(std::span<const CapCaseKey> cases, int jobs, double tol) {
  std::vector<CapOutcome> out(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      const CapCaseKey& key = cases[i];
      out[i].key = key;
      try {
        out[i].record = verify_cap_bound(key.n, key.kappa, key.H, key.delta, tol);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };

  int threads = jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::max(1, std::min<int>(threads, static_cast<int>(cases.size())));
  std::vector<std::jthread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::stable_sort(out.begin(), out.end(), [](const CapOutcome& a, const CapOutcome& b) { return a.key < b.key; });
  return out;
}

PropertyCheckSummary run_property_checks(int samples_per_n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PropertyCheckSummary s;
  s.min_crude_slack = std::numeric_limits<double>::infinity();
  s.min_remainder = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= 4; ++n) {
    const double delta_top = delta_threshold_value(n);
    for (int i = 0; i < samples_per_n; ++i) {
      const TracelessMatrix phi = TracelessMatrix::random(n, rng);
      const InequalitySlack crude = check_traceless_crude(phi);
      s.min_crude_slack = std::min(s.min_crude_slack, crude.slack);
      if (crude.slack < -1e-12) ++s.crude_violations;

      const double delta = 0.999 * delta_top * unit(rng);
      const KInterval iv = k_interval(n, delta);
      const double k = iv.lo + (0.001 + 0.998 * unit(rng)) * iv.width();
      const double rem = check_potential_remainder(phi, k, delta);
      s.min_remainder = std::min(s.min_remainder, rem);
      if (rem < -1e-12) ++s.remainder_violations;
      ++s.samples;
    }
  }
  return s;
}

}  // namespace cmcrad
