#include "ptmatch/words.hpp"

#include "ptmatch/errors.hpp"

namespace ptmatch {

TimedWord::TimedWord(std::vector<Event> events) : events_(std::move(events)) {
    const Rational* prev = nullptr;
    for (const Event& e : events_) {
        if (e.action == kTerminalAction || e.action == kStartAction) {
            throw DomainError("reserved action '" + e.action + "' in timed word");
        }
        if (e.time <= 0) throw DomainError("timed word timestamps must be positive");
        if (prev && !(*prev < e.time)) {
            throw DomainError("timed word timestamps must strictly increase");
        }
        prev = &e.time;
    }
}

const Event& TimedWord::event(std::size_t i) const {
    if (i < 1 || i > events_.size()) throw DomainError("word index out of range");
    return events_[i - 1];
}

std::set<std::string> TimedWord::alphabet() const {
    std::set<std::string> actions;
    for (const Event& e : events_) actions.insert(e.action);
    return actions;
}

Segment::Segment(std::vector<Event> events) : events_(std::move(events)) {
    if (events_.empty() || events_.back().action != kTerminalAction) {
        throw DomainError("segment must end with the terminal '$' event");
    }
    for (std::size_t k = 0; k + 1 < events_.size(); ++k) {
        if (events_[k].action == kTerminalAction) {
            throw DomainError("segment may contain only one '$' event");
        }
        if (events_[k].action == kStartAction) {
            throw DomainError("reserved action 'start' in segment");
        }
    }
    for (std::size_t k = 0; k < events_.size(); ++k) {
        if (events_[k].time < 0) throw DomainError("segment timestamps must be non-negative");
        if (k + 1 < events_.size()) {
            bool last_pair = (k + 2 == events_.size());
            // only the terminal "$" may share the preceding timestamp
            if (last_pair ? events_[k].time > events_[k + 1].time
                          : events_[k].time >= events_[k + 1].time) {
                throw DomainError("segment timestamps must be ordered");
            }
        }
    }
}

TimedWord word_shift(const TimedWord& w, const Rational& t) {
    std::vector<Event> shifted;
    shifted.reserve(w.size());
    for (const Event& e : w.events()) {
        Rational moved = e.time + t;
        if (moved <= 0) throw DomainError("shift would make a timestamp non-positive");
        shifted.push_back({e.action, moved});
    }
    return TimedWord(std::move(shifted));
}

TimedWord word_slice(const TimedWord& w, std::size_t i, std::size_t j) {
    if (i < 1 || j < i || j > w.size()) throw DomainError("invalid slice range");
    std::vector<Event> part(w.events().begin() + static_cast<std::ptrdiff_t>(i - 1),
                            w.events().begin() + static_cast<std::ptrdiff_t>(j));
    return TimedWord(std::move(part));
}

std::vector<Event> concat_absorb(const std::vector<Event>& a, const std::vector<Event>& b) {
    std::vector<Event> joined = a;
    joined.insert(joined.end(), b.begin(), b.end());
    return joined;
}

Segment word_segment(const TimedWord& w, const Rational& t, const Rational& t_prime) {
    if (t < 0) throw DomainError("segment start must be non-negative");
    if (!(t < t_prime)) throw DomainError("segment requires t < t'");

    std::vector<Event> inside;
    for (const Event& e : w.events()) {
        if (e.time >= t && e.time <= t_prime) {
            inside.push_back({e.action, e.time - t});
        }
    }
    inside.push_back({kTerminalAction, t_prime - t});
    return Segment(std::move(inside));
}

} // namespace ptmatch
