#include "sphsusy/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sphsusy {

unsigned default_thread_count() {
    if (const char* env = std::getenv("SPHESUSY_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
            // fall through to the hardware default on unparsable values
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace sphsusy
