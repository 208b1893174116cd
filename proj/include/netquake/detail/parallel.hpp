#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace netquake::detail {

// Runs produce(i, slot) for i in [0, count) on up to `threads` workers, and
// calls consume(i, slot) strictly in ascending i on the calling thread. The
// consumption order does not depend on the thread count, so floating-point
// reductions done in consume are bit-identical for any `threads`.
template <class Slot, class MakeSlot, class Produce, class Consume>
void ordered_parallel(std::size_t count, unsigned threads, MakeSlot make_slot, Produce produce,
                      Consume consume) {
    threads = std::max(1u, threads);
    const std::size_t width = std::min<std::size_t>(threads, std::max<std::size_t>(count, 1));
    std::vector<Slot> slots;
    slots.reserve(width);
    for (std::size_t t = 0; t < width; ++t)
        slots.push_back(make_slot());

    if (width == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            produce(i, slots[0]);
            consume(i, slots[0]);
        }
        return;
    }
    for (std::size_t base = 0; base < count; base += width) {
        const std::size_t wave = std::min(width, count - base);
        {
            std::vector<std::jthread> workers;
            workers.reserve(wave - 1);
            for (std::size_t t = 1; t < wave; ++t)
                workers.emplace_back([&, t] { produce(base + t, slots[t]); });
            produce(base, slots[0]);
        }
        for (std::size_t t = 0; t < wave; ++t)
            consume(base + t, slots[t]);
    }
}

// Thread count from NETQUAKE_THREADS, or `fallback` when unset or invalid.
inline unsigned threads_from_env(unsigned fallback = 1) {
    if (const char* env = std::getenv("NETQUAKE_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return fallback;
}

}  // namespace netquake::detail
