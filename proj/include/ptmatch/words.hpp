#pragma once

#include "ptmatch/rational.hpp"

#include <set>
#include <string>
#include <vector>

namespace ptmatch {

/// Reserved action names. "$" terminates a segment; "start" is injected by
/// the symbolic-pattern construction. Neither may appear in a timed word.
inline const std::string kTerminalAction = "$";
inline const std::string kStartAction = "start";

struct Event {
    std::string action;
    Rational time;

    bool operator==(const Event& other) const {
        return action == other.action && time == other.time;
    }
};

/// A finite log: (action, timestamp) pairs with strictly increasing,
/// strictly positive timestamps. Immutable after construction.
class TimedWord {
public:
    TimedWord() = default;
    explicit TimedWord(std::vector<Event> events);

    std::size_t size() const { return events_.size(); }
    bool empty() const { return events_.empty(); }
    const std::vector<Event>& events() const { return events_; }

    /// 1-based access, following the usual word-indexing convention.
    const Event& event(std::size_t i) const;

    /// Distinct actions occurring in the word.
    std::set<std::string> alphabet() const;

private:
    std::vector<Event> events_;
};

/// A window of a log shifted to start at time zero and closed by a single
/// trailing "$" event. The "$" may share the timestamp of the event before
/// it; the first event may sit at time zero (window opening exactly on it).
class Segment {
public:
    explicit Segment(std::vector<Event> events);

    std::size_t size() const { return events_.size(); }
    const std::vector<Event>& events() const { return events_; }

    /// Timestamp of the terminal "$": the length t' - t of the window.
    const Rational& duration() const { return events_.back().time; }

private:
    std::vector<Event> events_;
};

/// Shifts every timestamp by t (t may be negative as long as all timestamps
/// stay positive). Throws DomainError otherwise.
TimedWord word_shift(const TimedWord& w, const Rational& t);

/// Events i..j inclusive, 1-based. Throws DomainError on an invalid range.
TimedWord word_slice(const TimedWord& w, std::size_t i, std::size_t j);

/// Absorbing concatenation: plain juxtaposition, no shifting. Validity of
/// the result is the caller's concern.
std::vector<Event> concat_absorb(const std::vector<Event>& a, const std::vector<Event>& b);

/// The segment w|(t,t'): events of w in (t, t'] shifted by -t, closed by
/// ($, t'-t). Window boundaries are closed: an event at exactly t or t' is
/// included. Requires 0 <= t < t'.
Segment word_segment(const TimedWord& w, const Rational& t, const Rational& t_prime);

} // namespace ptmatch
