#include "ptmatch/wordgen.hpp"

#include "ptmatch/errors.hpp"

namespace ptmatch {

namespace {

struct Lcg {
    std::uint32_t state;
    std::uint32_t next() {
        state = 1664525u * state + 1013904223u;
        return state;
    }
};

/// Gaps in [0.05, 0.95) s with millisecond resolution.
Rational next_gap(Lcg& rng) {
    return rational(static_cast<long>(rng.next() % 900u) + 50, 1000);
}

} // namespace

TimedWord generate_blowup_word(std::size_t events, std::uint32_t seed) {
    if (events < 2 || events % 2 != 0) {
        throw DomainError("alternating words need an even event count >= 2");
    }
    Lcg rng{seed};
    std::vector<Event> out;
    out.reserve(events);
    Rational now = 0;
    for (std::size_t k = 0; k < events; ++k) {
        now += next_gap(rng);
        out.push_back({k % 2 == 0 ? "a" : "b", now});
    }
    return TimedWord(std::move(out));
}

TimedWord generate_gear_word(std::size_t events, std::uint32_t seed) {
    Lcg rng{seed};
    std::vector<Event> out;
    out.reserve(events);
    Rational now = 0;
    int gear = 1;
    for (std::size_t k = 0; k < events; ++k) {
        now += next_gap(rng);
        out.push_back({"g" + std::to_string(gear), now});
        // the low LCG bits are nearly periodic; sample a high one
        if ((rng.next() >> 16) & 1u) {
            if (gear < 4) ++gear;
        } else {
            if (gear > 1) --gear;
        }
    }
    return TimedWord(std::move(out));
}

} // namespace ptmatch
