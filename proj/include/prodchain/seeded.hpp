#pragma once

#include <cstdint>
#include <random>

#include "prodchain/bytes.hpp"

namespace prodchain {

/// Engine seeded from an arbitrary byte string. std::seed_seq and mt19937_64
/// are fully specified by the standard, so the stream is portable.
std::mt19937_64 seeded_engine(ByteView seed);

/// Uniform integer in [0, bound) by rejection; portable unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform_unit(std::mt19937_64& engine);

}  // namespace prodchain
