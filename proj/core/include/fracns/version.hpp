#pragma once

#include <string>

namespace fracns {

std::string library_version();
/// Version string reported by the linked FFTW.
std::string fft_library_version();

}  // namespace fracns
