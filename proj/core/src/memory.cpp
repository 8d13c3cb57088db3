#include "fracns/memory.hpp"

#if __has_include(<malloc.h>)
#include <malloc.h>
#endif

namespace fracns {

void retain_large_allocations() {
#if defined(__GLIBC__) && defined(M_MMAP_THRESHOLD)
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
}

}  // namespace fracns
