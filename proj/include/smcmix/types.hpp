#pragma once

#include <cstdint>

namespace smcmix {

// State variable of both processes: pairwise TMRCA in coalescent units
// (time scaled by 2N generations). Always > 0.
using Tmrca = double;

// Position / distance along the chromosome in scaled genetic-distance units
// (recombination rate absorbed). Always >= 0.
using GeneticDistance = double;

// Selects between the two jump-chain / continuous-process families.
enum class ChainId : std::uint8_t { kSmc, kSmcPrime };

// The three stationary laws appearing in the theory:
//   kMu      — SMC jump chain,  t e^{-t}
//   kMuPrime — SMC' jump chain, (3/8)(2t + 1 - e^{-2t}) e^{-t}
//   kPi      — both continuous processes, Exp(1)
enum class StationaryLawId : std::uint8_t { kMu, kMuPrime, kPi };

inline const char* to_string(ChainId c) {
  return c == ChainId::kSmc ? "smc" : "smc-prime";
}

inline const char* to_string(StationaryLawId law) {
  switch (law) {
    case StationaryLawId::kMu:
      return "mu";
    case StationaryLawId::kMuPrime:
      return "mu-prime";
    default:
      return "pi";
  }
}

}  // namespace smcmix
