#pragma once

#include "ptmatch/words.hpp"

#include <cstdint>

namespace ptmatch {

/// Deterministic benchmark words. Inter-event gaps come from a fixed
/// 32-bit linear congruential generator, so identical (events, seed) pairs
/// produce byte-identical words on every platform.

/// Alternating a, b, a, b, ... ; events must be even and >= 2.
TimedWord generate_blowup_word(std::size_t events, std::uint32_t seed);

/// A gear trace: a +/-1 random walk over g1..g4 starting at g1.
TimedWord generate_gear_word(std::size_t events, std::uint32_t seed);

} // namespace ptmatch
