#include "thermint/rng.hpp"

namespace thermint {

namespace {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RandomStream substream(std::uint64_t master_seed, std::uint64_t index) {
    const std::uint64_t a = mix64(master_seed + 0x9e3779b97f4a7c15ULL);
    const std::uint64_t b = mix64(a ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
    return RandomStream(b);
}

}  // namespace thermint
