#pragma once

// The fixed test corpus of rotation numbers and the invariant sweep run by
// check-bounds.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "latdisc/alpha.hpp"

namespace latdisc {

struct CorpusEntry {
  std::string label;
  Alpha alpha;
};

enum class CorpusSize { Small, Full };

/// Named irrationals, random rationals with q <= 500 and random 256-bit reals.
std::vector<CorpusEntry> corpus_alphas(CorpusSize size, std::uint64_t seed = 1);

/// {q_{K-1}, q_{K-1}+1, midpoint, q_K} for K = 1..K_max with q_K <= cap,
/// ascending without repeats.
std::vector<std::uint64_t> corpus_N(const Alpha& alpha, std::size_t K_max, std::uint64_t cap);

struct BoundsReport {
  std::size_t checks = 0;
  std::size_t enclosure_checks = 0;  // (alpha, N, variant) triples
  std::size_t period_checks = 0;
  std::size_t aux_checks = 0;
  std::size_t tail_checks = 0;
  std::vector<std::string> violations;  // each prefixed by its kind
};

/// Enclosure containment for S and L, the full-period sum against the
/// partial quotients, the three auxiliary inequalities and the tail counts.
BoundsReport check_bounds(CorpusSize size, unsigned threads = 1, std::uint64_t seed = 1);

}  // namespace latdisc
