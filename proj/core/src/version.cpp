#include "fracns/version.hpp"

#include <fftw3.h>

namespace fracns {

std::string library_version() { return FRACNS_VERSION; }

std::string fft_library_version() { return fftw_version; }

}  // namespace fracns
