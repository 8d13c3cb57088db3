#include "fracns/regularity.hpp"

#include <cmath>

#include "fracns/error.hpp"
#include "fracns/spectral.hpp"
#include "lattice.hpp"

namespace fracns {

BootstrapMode parse_bootstrap_mode(const std::string& name) {
  if (name == "subcritical") return BootstrapMode::subcritical;
  if (name == "bounded_hypothesis") return BootstrapMode::bounded_hypothesis;
  throw PreconditionError("bootstrap.mode: expected subcritical or bounded_hypothesis, got '" + name + "'");
}

std::string to_string(BootstrapMode mode) {
  return mode == BootstrapMode::subcritical ? "subcritical" : "bounded_hypothesis";
}

std::string to_string(TailVerdict verdict) {
  switch (verdict) {
    case TailVerdict::finite: return "finite";
    case TailVerdict::not_finite: return "not_finite";
    case TailVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

double bootstrap_exponent(double alpha, BootstrapMode mode) {
  double sigma;
  if (mode == BootstrapMode::subcritical) {
    if (!(alpha > 5.0 / 3.0 && alpha < 2.0)) {
      throw PreconditionError("bootstrap_exponent: subcritical mode needs 5/3 < alpha < 2");
    }
    sigma = 2.0 * alpha - 2.5;
  } else {
    if (!(alpha > 1.0 && alpha <= 5.0 / 3.0)) {
      throw PreconditionError("bootstrap_exponent: bounded_hypothesis mode needs 1 < alpha <= 5/3");
    }
    sigma = 1.5 * alpha - 1.0;
  }
  if (!(sigma > 0.5 * alpha)) {
    throw PreconditionError("bootstrap_exponent: no gain, sigma <= alpha/2");
  }
  return sigma;
}

std::vector<double> iterate_bootstrap(double alpha, BootstrapMode mode, double target_order) {
  if (!std::isfinite(target_order)) throw PreconditionError("bootstrap.target must be finite");
  const double first = bootstrap_exponent(alpha, mode);
  const double increment = first - 0.5 * alpha;
  constexpr std::size_t kMaxTerms = 100000;
  std::vector<double> seq{first};
  while (seq.back() < target_order) {
    if (seq.size() >= kMaxTerms) {
      throw PreconditionError("iterate_bootstrap: increment too small to reach the target order");
    }
    seq.push_back(first + static_cast<double>(seq.size()) * increment);
  }
  return seq;
}

std::vector<double> shell_spectrum(const SpectralField& u) {
  const Grid& g = u.grid();
  const int top = g.n() / 2;
  std::vector<double> shells(static_cast<std::size_t>(top) + 1, 0.0);
  detail::for_each_mode(g, [&](const detail::Mode& m) {
    const double radius = std::sqrt(double(m.mx * m.mx + m.my * m.my + m.mz * m.mz));
    const auto b = static_cast<std::size_t>(std::floor(radius + 0.5));
    if (b >= shells.size()) return;
    double e = 0.0;
    for (int c = 0; c < u.components(); ++c) e += std::norm(u.component(c)[m.index]);
    shells[b] += m.weight(g.n()) * e * g.volume();
  });
  return shells;
}

TailFit spectral_tail_fit(const SpectralField& u, double s_probe) {
  if (!std::isfinite(s_probe)) throw PreconditionError("spectral_tail_fit: order must be finite");
  if (!is_mean_free(u)) throw PreconditionError("spectral_tail_fit: field must be mean-free");
  const Grid& g = u.grid();
  const std::vector<double> shells = shell_spectrum(u);
  const std::size_t last = shells.size() - 1;

  TailFit fit;
  double total = 0.0, weighted = 0.0;
  for (std::size_t b = 1; b < shells.size(); ++b) {
    total += shells[b];
    weighted += std::pow(g.wavenumber(static_cast<int>(b)), 2.0 * s_probe) * shells[b];
  }
  if (total == 0.0) {
    fit.verdict = TailVerdict::finite;
    return fit;
  }
  fit.last_shell_fraction = shells[last] / total;
  fit.last_increment = std::pow(g.wavenumber(static_cast<int>(last)), 2.0 * s_probe) * shells[last] / weighted;

  std::vector<double> xs, ys;
  for (std::size_t b = std::max<std::size_t>(1, last / 2); b <= last; ++b) {
    if (!(shells[b] > 0.0)) continue;
    xs.push_back(std::log(g.wavenumber(static_cast<int>(b))));
    ys.push_back(std::log(shells[b]));
  }
  if (xs.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.tail_slope = sxy / sxx;
  }

  if (fit.last_shell_fraction > kTailResolvedFraction) {
    fit.verdict = TailVerdict::inconclusive;
  } else if (fit.last_increment < kTailIncrement) {
    fit.verdict = TailVerdict::finite;
  } else {
    fit.verdict = TailVerdict::not_finite;
  }
  return fit;
}

}  // namespace fracns
