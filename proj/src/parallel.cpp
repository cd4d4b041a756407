#include "fgap/parallel.hpp"

namespace fgap {

namespace {
std::atomic<unsigned> g_threads{0};
}

unsigned default_threads() {
    const unsigned t = g_threads.load();
    if (t) return t;
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_threads(unsigned n) { g_threads = n; }

}  // namespace fgap
