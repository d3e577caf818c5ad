#include "smcmix/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smcmix/dists.hpp"
#include "smcmix/errors.hpp"

namespace smcmix {

Tmrca PathSample::value_at(GeneticDistance ell) const {
  auto it = std::upper_bound(jump_locations.begin(), jump_locations.end(), ell);
  const auto idx = static_cast<std::size_t>(it - jump_locations.begin());
  return states[idx == 0 ? 0 : idx - 1];
}

std::vector<Tmrca> sample_jump_chain(ChainId chain, Tmrca x0, int n,
                                     RngStream& rng) {
  require_positive(x0, "x0");
  if (n < 1) throw std::domain_error("n must be >= 1");
  std::vector<Tmrca> chain_out;
  chain_out.reserve(n + 1);
  chain_out.push_back(x0);
  Tmrca x = x0;
  for (int i = 0; i < n; ++i) {
    if (chain == ChainId::kSmc) {
      const double u = rng.uniform01();
      const double z = rng.exponential();
      x = u * x + z;
    } else {
      x = smc_prime_quantile(x, rng.uniform01());
    }
    chain_out.push_back(x);
  }
  return chain_out;
}

std::vector<Tmrca> sample_smc_jump_chain_zero_uniform(Tmrca x0, int n,
                                                      RngStream& rng) {
  require_positive(x0, "x0");
  if (n < 1) throw std::domain_error("n must be >= 1");
  std::vector<Tmrca> chain_out;
  chain_out.reserve(n + 1);
  chain_out.push_back(x0);
  for (int i = 0; i < n; ++i) {
    (void)rng.uniform01();  // keep the draw order of sample_jump_chain
    chain_out.push_back(rng.exponential());
  }
  return chain_out;
}

PathSample sample_path(ChainId chain, Tmrca x0, GeneticDistance horizon,
                       RngStream& rng) {
  require_positive(x0, "x0");
  require_nonnegative(horizon, "horizon");
  PathSample path;
  path.horizon = horizon;
  path.jump_locations.push_back(0.0);
  path.states.push_back(x0);
  Tmrca cur = x0;
  GeneticDistance pos = 0.0;
  while (true) {
    const double rate =
        chain == ChainId::kSmc ? cur : visible_jump_rate(cur);
    pos += rng.exponential(rate);
    if (!(pos < horizon)) break;
    cur = chain == ChainId::kSmc
              ? rng.uniform01() * cur + rng.exponential()
              : smc_prime_quantile(cur, rng.uniform01());
    path.jump_locations.push_back(pos);
    path.states.push_back(cur);
  }
  return path;
}

std::vector<Tmrca> sample_stationary(StationaryLawId law, int count,
                                     RngStream& rng) {
  if (count < 1) throw std::domain_error("count must be >= 1");
  std::vector<Tmrca> draws(count);
  for (auto& d : draws) {
    switch (law) {
      case StationaryLawId::kPi:
        d = rng.exponential();
        break;
      case StationaryLawId::kMu:
        d = rng.exponential() + rng.exponential();
        break;
      default:
        d = stationary_quantile(StationaryLawId::kMuPrime, rng.uniform01());
        break;
    }
  }
  return draws;
}

CoupledTrace sample_coupled_chains(ChainId chain, Tmrca x0,
                                   std::optional<Tmrca> y0, int n,
                                   RngStream& rng) {
  require_positive(x0, "x0");
  if (n < 1) throw std::domain_error("n must be >= 1");
  Tmrca y = y0 ? *y0 : sample_stationary(stationary_law(chain), 1, rng)[0];
  require_positive(y, "y0");
  CoupledTrace trace;
  trace.xs.reserve(n + 1);
  trace.ys.reserve(n + 1);
  trace.abs_gaps.reserve(n + 1);
  Tmrca x = x0;
  trace.xs.push_back(x);
  trace.ys.push_back(y);
  trace.abs_gaps.push_back(std::fabs(x - y));
  for (int i = 0; i < n; ++i) {
    if (chain == ChainId::kSmc) {
      const double u = rng.uniform01();
      const double z = rng.exponential();
      x = u * x + z;
      y = u * y + z;
    } else {
      const double u = rng.uniform01();
      x = smc_prime_quantile(x, u);
      y = smc_prime_quantile(y, u);
    }
    trace.xs.push_back(x);
    trace.ys.push_back(y);
    trace.abs_gaps.push_back(std::fabs(x - y));
  }
  return trace;
}

PathSample sample_subordinated_path(Tmrca x0, GeneticDistance horizon,
                                    RngStream& rng) {
  require_positive(x0, "x0");
  require_nonnegative(horizon, "horizon");

  // Rate-1/4 Poisson event positions in (0, horizon]; fixing them first
  // pins the internal horizon C_horizon = horizon/2 + 2 * N_horizon exactly.
  std::vector<GeneticDistance> poisson_events;
  for (GeneticDistance p = 4.0 * rng.exponential(); p <= horizon;
       p += 4.0 * rng.exponential()) {
    poisson_events.push_back(p);
  }
  const double c_end = 0.5 * horizon + 2.0 * poisson_events.size();

  // Inner SMC path on the internal clock [0, c_end].
  std::vector<double> taus{0.0};
  std::vector<Tmrca> inner_states{x0};
  {
    Tmrca cur = x0;
    double t = 0.0;
    while (true) {
      t += rng.exponential(cur);
      if (!(t <= c_end)) break;
      cur = rng.uniform01() * cur + rng.exponential();
      taus.push_back(t);
      inner_states.push_back(cur);
    }
  }

  PathSample path;
  path.horizon = horizon;
  path.jump_locations.push_back(0.0);
  path.states.push_back(x0);

  const double inf = std::numeric_limits<double>::infinity();
  std::size_t ip = 0;  // next Poisson event
  std::size_t js = 1;  // next inner jump
  GeneticDistance ell = 0.0;
  double c = 0.0;  // internal time C_ell
  Tmrca state = x0;
  while (true) {
    const double next_event = ip < poisson_events.size() ? poisson_events[ip] : inf;
    const double next_tau = js < taus.size() ? taus[js] : inf;
    // genome distance at which the slope-1/2 drift reaches the next inner jump
    const double ell_tau = ell + 2.0 * (next_tau - c);
    if (ell_tau <= next_event) {
      if (!(ell_tau < horizon)) break;
      ell = ell_tau;
      c = next_tau;
      state = inner_states[js++];
      path.jump_locations.push_back(ell);
      path.states.push_back(state);
    } else {
      if (!(next_event < horizon)) break;
      // drift to the event, then the clock skips an internal window of width 2
      c += 0.5 * (next_event - ell) + 2.0;
      ell = next_event;
      ++ip;
      while (js < taus.size() && taus[js] <= c) state = inner_states[js++];
      // states are reused by value; equality means no inner jump was skipped
      if (state != path.states.back()) {
        path.jump_locations.push_back(ell);
        path.states.push_back(state);
      }
    }
  }
  return path;
}

}  // namespace smcmix
