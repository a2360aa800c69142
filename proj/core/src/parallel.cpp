#include "holeprobe/parallel.hpp"

#include <cstdlib>
#include <string>

namespace holeprobe {

unsigned resolve_workers(unsigned requested) {
  unsigned cap = 0;
  if (const char* env = std::getenv("HOLEPROBE_WORKERS"); env != nullptr && *env != '\0') {
    try {
      const long value = std::stol(env);
      if (value > 0) cap = static_cast<unsigned>(value);
    } catch (const std::exception&) {
      // unparsable value: ignore it
    }
  }
  unsigned n = requested;
  if (n == 0) n = cap != 0 ? cap : std::max(1u, std::thread::hardware_concurrency());
  if (cap != 0) n = std::min(n, cap);
  return std::max(1u, n);
}

}  // namespace holeprobe
