#pragma once

#include <cstdint>

namespace chv {

/// Thread-local counters bumped by the Groebner engine; the solver installs
/// a collector around each step to attribute work to stats events.
struct EngineCounters {
    std::uint64_t gb_calls = 0;
    std::uint64_t spairs_reduced = 0;
    std::uint64_t max_basis_size = 0;
};

inline EngineCounters*& active_counters()
{
    thread_local EngineCounters* active = nullptr;
    return active;
}

struct CounterScope {
    explicit CounterScope(EngineCounters& c)
    {
        prev_ = active_counters();
        active_counters() = &c;
    }
    ~CounterScope() { active_counters() = prev_; }
    EngineCounters* prev_;
};

} // namespace chv
