#include "fracns/transform.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "fracns/error.hpp"

namespace fracns {

namespace {

// Plans are created once per resolution with FFTW_ESTIMATE, which picks the
// same algorithm on every run and keeps outputs bit-reproducible. Execution
// goes through the new-array interface and is safe from several threads.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.inverse);
    }
  }

  const PlanPair& get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
    const std::size_t complex_size = static_cast<std::size_t>(n / 2 + 1) * n * n;
    AlignedVector<double> real(real_size);
    AlignedVector<Complex> spec(complex_size);
    auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());

    // FFTW is row-major (last index fastest), so the x axis goes last.
    PlanPair plans;
    plans.forward = fftw_plan_dft_r2c_3d(n, n, n, real.data(), cplx, FFTW_ESTIMATE);
    plans.inverse = fftw_plan_dft_c2r_3d(n, n, n, cplx, real.data(), FFTW_ESTIMATE);
    if (plans.forward == nullptr || plans.inverse == nullptr) {
      throw std::runtime_error("transform: FFTW plan creation failed for n=" + std::to_string(n));
    }
    return plans_.emplace(n, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

namespace detail {

void forward_component(const Grid& grid, std::span<const double> in, std::span<Complex> out) {
  const auto& plans = plan_cache().get(grid.n());
  // r2c leaves its input untouched; FFTW's signature is just not const.
  fftw_execute_dft_r2c(plans.forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(grid.points());
  for (auto& c : out) c *= scale;
}

void inverse_component(const Grid& grid, std::span<const Complex> in, std::span<double> out) {
  const auto& plans = plan_cache().get(grid.n());
  // c2r overwrites its input, so work on a copy. The buffer is reused to
  // avoid paging in a fresh allocation on every call.
  thread_local AlignedVector<Complex> scratch;
  scratch.assign(in.begin(), in.end());
  fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

void inverse_component_destructive(const Grid& grid, std::span<Complex> in, std::span<double> out) {
  const auto& plans = plan_cache().get(grid.n());
  fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

}  // namespace detail

SpectralField transform_forward(const PhysicalField& f) {
  if (const int bad = f.first_nonfinite_component(); bad >= 0) {
    throw PreconditionError("transform_forward: non-finite sample in component " +
                            std::to_string(bad));
  }
  SpectralField out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    detail::forward_component(f.grid(), f.component(c), out.component(c));
  }
  return out;
}

PhysicalField transform_inverse(const SpectralField& v) {
  PhysicalField out(v.grid(), v.components());
  for (int c = 0; c < v.components(); ++c) {
    detail::inverse_component(v.grid(), v.component(c), out.component(c));
  }
  return out;
}

}  // namespace fracns
