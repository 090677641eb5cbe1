#include "ghz/parallel.h"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace ghz {

int worker_count(size_t jobs) {
    long requested = 0;
    if (const char *env = std::getenv("GHZ_TELEPORT_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            requested = v;
        }
    }
    if (requested == 0) {
        requested = std::max(1u, std::thread::hardware_concurrency());
    }
    return static_cast<int>(std::clamp<long>(requested, 1, std::max<long>(1, static_cast<long>(jobs))));
}

}  // namespace ghz
