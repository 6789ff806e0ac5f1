// tolerances.cpp — environment-tunable size cap
#include "corrproj/tolerances.hpp"

#include <cstdlib>
#include <string>

namespace corrproj::tol {

std::size_t size_cap() {
    const char* env = std::getenv("CORRPROJ_SIZE_CAP");
    if (env == nullptr) return default_size_cap;
    try {
        const long long v = std::stoll(env);
        if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        // unparseable -> fall through to the default
    }
    return default_size_cap;
}

} // namespace corrproj::tol
