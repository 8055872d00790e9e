#pragma once

#include <cstdint>
#include <random>

namespace thermint {

using RandomStream = std::mt19937_64;

/// Independent stream for realization `index` of an ensemble seeded by
/// `master_seed`. Streams depend only on (master_seed, index), so the
/// ensemble is identical no matter how realizations are spread over workers.
RandomStream substream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace thermint
