#pragma once

namespace fracns {

/// Asks the C allocator to keep freed field buffers for reuse instead of
/// returning them to the OS. At n = 128 a vector field is 48 MB, above
/// glibc's largest dynamic mmap threshold, so without this every temporary
/// is a fresh mapping that page-faults on first touch. Process-wide; call
/// once from main(). No-op outside glibc.
void retain_large_allocations();

}  // namespace fracns
