// Copyright 2026 The swipt-capacity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "swipt/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "swipt/errors.hpp"

namespace swipt {
namespace {

struct Sum {
  long double s = 0.0L;
  long double s2 = 0.0L;
};

// Uniform on (0, 1] from the top 53 bits.
double uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Cumulative weights for inverse-CDF draws over a discrete law.
struct Discrete {
  std::vector<double> cum;

  explicit Discrete(const std::vector<double>& w) {
    double total = 0.0;
    for (double v : w) cum.push_back(total += v);
    for (double& c : cum) c /= total;
  }
  std::size_t draw(std::mt19937_64& rng) const {
    const double u = uniform(rng);
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    return std::min(static_cast<std::size_t>(it - cum.begin()), cum.size() - 1);
  }
};

// Runs body(rng, begin, end) over every chunk; chunks are spread over the
// threads and body writes only to its own range.
template <typename Body>
void for_chunks(const SimConfig& cfg, Body body) {
  const std::int64_t chunks = (cfg.n + SimConfig::kChunk - 1) / SimConfig::kChunk;
  auto run = [&](std::int64_t k) {
    std::mt19937_64 rng(splitmix64(cfg.seed + static_cast<std::uint64_t>(k)));
    const std::int64_t begin = k * SimConfig::kChunk;
    body(rng, static_cast<std::size_t>(k), begin, std::min(cfg.n, begin + SimConfig::kChunk));
  };
  const auto threads = static_cast<std::int64_t>(std::clamp<std::int64_t>(cfg.threads, 1, chunks));
  if (threads <= 1) {
    for (std::int64_t k = 0; k < chunks; ++k) run(k);
    return;
  }
  std::vector<std::thread> pool;
  for (std::int64_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::int64_t k = t; k < chunks; k += threads) run(k);
    });
  }
  for (auto& th : pool) th.join();
}

// Mean and standard error of per-sample values; chunk sums are reduced in
// chunk order. make() builds one sampler per chunk so scratch state is not
// shared between threads.
template <typename Make>
Estimate estimate(const SimConfig& cfg, Make make) {
  const std::int64_t chunks = (cfg.n + SimConfig::kChunk - 1) / SimConfig::kChunk;
  std::vector<Sum> sums(static_cast<std::size_t>(chunks));
  for_chunks(cfg, [&](std::mt19937_64& rng, std::size_t k, std::int64_t b, std::int64_t e) {
    Sum s;
    auto draw = make();
    for (std::int64_t i = b; i < e; ++i) {
      const long double v = draw(rng);
      s.s += v;
      s.s2 += v * v;
    }
    sums[k] = s;
  });
  Sum t;
  for (const auto& s : sums) {
    t.s += s.s;
    t.s2 += s.s2;
  }
  const auto n = static_cast<long double>(cfg.n);
  const long double mean = t.s / n;
  const long double var = cfg.n > 1 ? std::max(0.0L, (t.s2 - n * mean * mean) / (n - 1.0L)) : 0.0L;
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / n)), cfg.n};
}

double scale_of(double x, const SimConfig& cfg) {
  const double xh = hpa_distort(x, cfg.hpa);
  return cfg.channel.sigma1_sq + xh * xh;
}

double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double a : v) s += std::exp(a - m);
  return m + std::log(s);
}

void check(const SimConfig& cfg, const MassPointDistribution& dist) {
  cfg.validate();
  dist.validate();
}

void check(const SimConfig& cfg, const ExtendedDistribution& dist) {
  cfg.validate();
  dist.validate();
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void SimConfig::validate() const {
  if (n < 1) throw ContractError("SimConfig: sample count must be positive");
  if (threads < 1) throw ContractError("SimConfig: thread count must be positive");
  hpa.validate();
  eh.validate();
  channel.validate();
}

std::vector<double> sample_symbols(const MassPointDistribution& dist, const SimConfig& cfg) {
  check(cfg, dist);
  const Discrete pick(dist.weights());
  std::vector<double> out(static_cast<std::size_t>(cfg.n));
  for_chunks(cfg, [&](std::mt19937_64& rng, std::size_t, std::int64_t b, std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      out[static_cast<std::size_t>(i)] = dist.points[pick.draw(rng)].x;
    }
  });
  return out;
}

std::vector<double> sample_outputs(const MassPointDistribution& dist, const SimConfig& cfg) {
  check(cfg, dist);
  const Discrete pick(dist.weights());
  std::vector<double> scale;
  for (const auto& p : dist.points) scale.push_back(scale_of(p.x, cfg));
  std::vector<double> out(static_cast<std::size_t>(cfg.n));
  for_chunks(cfg, [&](std::mt19937_64& rng, std::size_t, std::int64_t b, std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      const double s = scale[pick.draw(rng)];
      out[static_cast<std::size_t>(i)] = -s * std::log(uniform(rng));
    }
  });
  return out;
}

Estimate empirical_energy(const MassPointDistribution& dist, const SimConfig& cfg) {
  check(cfg, dist);
  const Discrete pick(dist.weights());
  std::vector<double> e;
  for (const auto& p : dist.points) e.push_back(harvested_energy(p.x, cfg.hpa, cfg.eh));
  return estimate(cfg, [&] { return [&](std::mt19937_64& rng) { return e[pick.draw(rng)]; }; });
}

Estimate empirical_energy(const ExtendedDistribution& dist, const SimConfig& cfg) {
  check(cfg, dist);
  std::vector<double> w, sp;
  for (const auto& p : dist.points) w.push_back(p.q);
  for (const auto& s : dist.states) sp.push_back(s.prob);
  const Discrete pick(w), state(sp);
  std::vector<std::vector<double>> e;
  for (const auto& p : dist.points) {
    e.emplace_back();
    for (double x : p.x) e.back().push_back(harvested_energy(x, cfg.hpa, cfg.eh));
  }
  return estimate(cfg, [&] {
    return [&](std::mt19937_64& rng) {
      const auto j = pick.draw(rng);
      return e[j][state.draw(rng)];
    };
  });
}

Estimate empirical_mi(const MassPointDistribution& dist, const SimConfig& cfg) {
  check(cfg, dist);
  const Discrete pick(dist.weights());
  std::vector<double> scale, logw;
  for (const auto& p : dist.points) {
    scale.push_back(scale_of(p.x, cfg));
    logw.push_back(p.q > 0.0 ? std::log(p.q) : -INFINITY);
  }
  return estimate(cfg, [&] {
    return [&, terms = std::vector<double>(scale.size())](std::mt19937_64& rng) mutable {
      const double s = scale[pick.draw(rng)];
      const double y = -s * std::log(uniform(rng));
      for (std::size_t i = 0; i < scale.size(); ++i) {
        terms[i] = logw[i] - std::log(scale[i]) - y / scale[i];
      }
      return -std::log(s) - y / s - log_sum_exp(terms);
    };
  });
}

Estimate empirical_mi(const ExtendedDistribution& dist, const SimConfig& cfg) {
  check(cfg, dist);
  std::vector<double> w, sp;
  for (const auto& p : dist.points) w.push_back(p.q);
  for (const auto& s : dist.states) sp.push_back(s.prob);
  const Discrete pick(w), state(sp);
  const std::size_t m = dist.states.size();
  std::vector<std::vector<double>> scale;
  for (const auto& p : dist.points) {
    scale.emplace_back();
    for (double x : p.x) scale.back().push_back(scale_of(x, cfg));
  }
  auto log_cond = [&](std::vector<double>& inner, std::size_t j, double y) {
    for (std::size_t k = 0; k < m; ++k) {
      inner[k] = (sp[k] > 0.0 ? std::log(sp[k]) : -INFINITY) - std::log(scale[j][k]) -
                 y / scale[j][k];
    }
    return log_sum_exp(inner);
  };
  return estimate(cfg, [&] {
    return [&, inner = std::vector<double>(m),
            outer = std::vector<double>(dist.points.size())](std::mt19937_64& rng) mutable {
      const auto j = pick.draw(rng);
      const double s = scale[j][state.draw(rng)];
      const double y = -s * std::log(uniform(rng));
      for (std::size_t i = 0; i < outer.size(); ++i) {
        outer[i] = (w[i] > 0.0 ? std::log(w[i]) : -INFINITY) + log_cond(inner, i, y);
      }
      return log_cond(inner, j, y) - log_sum_exp(outer);
    };
  });
}

double output_cdf(double y, const MassPointDistribution& dist, const SimConfig& cfg) {
  if (!(y > 0.0)) return 0.0;
  double tail = 0.0;
  for (const auto& p : dist.points) tail += p.q * std::exp(-y / scale_of(p.x, cfg));
  return 1.0 - tail;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ContractError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical(std::int64_t n, double alpha) {
  if (n < 1) throw ContractError("ks_critical: n must be positive");
  double c = 0.0;
  if (alpha == 0.01) {
    c = 1.6276;
  } else if (alpha == 0.05) {
    c = 1.3581;
  } else {
    throw ContractError("ks_critical: alpha must be 0.01 or 0.05");
  }
  return c / std::sqrt(static_cast<double>(n));
}

}  // namespace swipt
