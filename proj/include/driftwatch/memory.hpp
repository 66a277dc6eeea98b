#ifndef DRIFTWATCH_MEMORY_HPP
#define DRIFTWATCH_MEMORY_HPP

#include <cstdint>

namespace driftwatch {

/// Peak resident set size of the process so far, in bytes (0 if the
/// platform offers no measurement). Process-wide, so only useful for trends.
std::uint64_t peak_memory_bytes();

}  // namespace driftwatch

#endif
