#include "kpl/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <thread>

#include "kpl/cost.hpp"
#include "kpl/profile.hpp"

namespace kpl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct ShardStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t proposals = 0;
  double max_density = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  // Chan et al. pairwise combination of (count, mean, M2).
  void merge(const ShardStats& o) {
    if (o.count == 0) return;
    const double n = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / n;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
    proposals += o.proposals;
    max_density = std::max(max_density, o.max_density);
  }
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void SimConfig::validate() const {
  if (samples == 0) throw InvalidArgument("simulate: samples must be >= 1");
  if (!std::isfinite(true_phase)) throw InvalidArgument("simulate: true phase must be finite");
}

double SimConfig::wrapped_phase() const {
  double p = std::fmod(true_phase, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  return p >= kTwoPi ? 0.0 : p;
}

OutcomeDensity::OutcomeDensity(const PhaseProfile& profile)
    : envelope_(static_cast<double>(profile.n_total() + 1) / kTwoPi) {
  const int m = static_cast<int>(profile.m_count());
  amplitudes_.reserve(profile.counts().size());
  for (const auto& c : profile.counts()) {
    amplitudes_.push_back(std::sqrt(std::ldexp(c.convert_to<double>(), -m)));
  }
}

double OutcomeDensity::operator()(double theta) const {
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> phase = 1.0;
  std::complex<double> sum = 0.0;
  for (double a : amplitudes_) {
    if (a != 0.0) sum += a * phase;
    phase *= step;
  }
  return std::norm(sum) / kTwoPi;
}

double outcome_density(const PhaseProfile& profile, double theta) {
  return OutcomeDensity(profile)(theta);
}

SimResult simulate_cost(const SimConfig& cfg) {
  cfg.validate();
  const OutcomeDensity density(compute_profile(cfg.vector));
  const double phase = cfg.wrapped_phase();
  const double envelope = density.envelope();
  const std::uint64_t proposal_cap = 64 * (cfg.vector.n_total() + 1) + 1024;

  const std::uint64_t shards = (cfg.samples + kShardSize - 1) / kShardSize;
  std::vector<ShardStats> stats(shards);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> envelope_broken{false};
  std::atomic<bool> cap_hit{false};

  auto work = [&] {
    for (std::uint64_t s; (s = next.fetch_add(1)) < shards;) {
      std::mt19937_64 rng(splitmix64(cfg.rng_seed + s * 0x9E3779B97F4A7C15ULL));
      const std::uint64_t n = std::min(kShardSize, cfg.samples - s * kShardSize);
      auto& st = stats[s];
      for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t tries = 0;
        while (true) {
          if (++tries > proposal_cap) {
            cap_hit = true;
            return;
          }
          const double estimate = kTwoPi * uniform01(rng);
          const double u = envelope * uniform01(rng);
          const double f = density(estimate - phase);
          st.max_density = std::max(st.max_density, f);
          if (f > envelope + 1e-12) envelope_broken = true;
          if (u < f) {
            st.add(phase_cost(estimate - phase));
            break;
          }
        }
        st.proposals += tries;
      }
    }
  };

  const unsigned hw = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(hw, shards));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }

  if (cap_hit) {
    throw Error("simulate: rejection sampling exceeded " + std::to_string(proposal_cap) +
                " proposals for one sample; the envelope is inconsistent with the density");
  }
  if (envelope_broken) throw Error("simulate: density exceeded the (N+1)/2pi envelope");

  ShardStats total;
  for (const auto& st : stats) total.merge(st);
  SimResult out;
  out.samples = total.count;
  out.mean_cost = total.mean;
  out.std_error =
      total.count > 1 ? std::sqrt(total.m2 / static_cast<double>(total.count - 1) /
                                  static_cast<double>(total.count))
                      : 0.0;
  out.proposals = total.proposals;
  out.max_density_seen = total.max_density;
  return out;
}

}  // namespace kpl
