#include "bosegas/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace bosegas {

namespace {
std::atomic<int> g_override{0};

int from_environment() {
    const char* env = std::getenv("BOSEGAS_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    try {
        const int v = std::stoi(env);
        return v > 0 ? v : 0;
    } catch (...) {
        return 0;
    }
}
}  // namespace

int worker_threads() {
    if (const int o = g_override.load(); o > 0) return o;
    if (const int e = from_environment(); e > 0) return e;
    return omp_get_max_threads();
}

void set_worker_threads(int threads) { g_override.store(threads > 0 ? threads : 0); }

}  // namespace bosegas
