#include "fracns/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracns/csv.hpp"
#include "fracns/error.hpp"
#include "fracns/random.hpp"
#include "fracns/spectral.hpp"
#include "fracns/transform.hpp"
#include "lattice.hpp"

namespace fracns {

using detail::for_each_mode;
using detail::Mode;

namespace {

std::vector<double> magnitude(const PhysicalField& f) {
  std::vector<double> mag(f.grid().points(), 0.0);
  for (int c = 0; c < f.components(); ++c) {
    const auto comp = f.component(c);
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += comp[i] * comp[i];
  }
  for (auto& m : mag) m = std::sqrt(m);
  return mag;
}

// lhs/rhs with 0/0 read as 0.
double safe_ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  if (lhs <= 1e-300) return 0.0;
  return std::numeric_limits<double>::infinity();
}

SpectralField product(const SpectralField& f, const SpectralField& g) {
  return dealiased_product(transform_inverse(f), 0, transform_inverse(g), 0);
}

std::string params_text(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ';';
    out += k;
    out += '=';
    out += format_double(v);
  }
  return out;
}

}  // namespace

double lebesgue_norm(const PhysicalField& f, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw PreconditionError("lebesgue_norm: q must be >= 1");
  const auto mag = magnitude(f);
  const double top = *std::max_element(mag.begin(), mag.end());
  if (top == 0.0) return 0.0;
  double sum = 0.0;
  if (q == std::floor(q) && q <= 8.0) {
    const int power = static_cast<int>(q);
    for (double m : mag) {
      const double x = m / top;
      double term = x;
      for (int i = 1; i < power; ++i) term *= x;
      sum += term;
    }
  } else {
    for (double m : mag) sum += std::pow(m / top, q);
  }
  return top * std::pow(sum * f.grid().cell_volume(), 1.0 / q);
}

double sobolev_norm(const SpectralField& f, double s) {
  if (!std::isfinite(s)) throw PreconditionError("sobolev_norm: order must be finite");
  if (s < 0.0 && !is_mean_free(f)) {
    throw PreconditionError("sobolev_norm: negative order needs a mean-free field");
  }
  const Grid& g = f.grid();
  double sum = 0.0;
  for_each_mode(g, [&](const Mode& m) {
    double weight;
    if (m.is_zero()) {
      if (s != 0.0) return;
      weight = 1.0;
    } else {
      weight = s == 0.0 ? 1.0 : std::pow(m.k2(), s);
    }
    weight *= m.weight(g.n());
    for (int c = 0; c < f.components(); ++c) sum += weight * std::norm(f.component(c)[m.index]);
  });
  return std::sqrt(sum * g.volume());
}

double spectral_inner(const SpectralField& a, const SpectralField& b) {
  require_same_shape(a, b, "spectral_inner");
  const Grid& g = a.grid();
  double sum = 0.0;
  for_each_mode(g, [&](const Mode& m) {
    const double w = m.weight(g.n());
    for (int c = 0; c < a.components(); ++c) {
      const Complex x = a.component(c)[m.index];
      const Complex y = b.component(c)[m.index];
      sum += w * (x.real() * y.real() + x.imag() * y.imag());
    }
  });
  return sum * g.volume();
}

CheckerResult check_product_rule(const SpectralField& f, const SpectralField& g, double s,
                                 double delta) {
  require_scalar(f.components(), "check_product_rule");
  require_same_shape(f, g, "check_product_rule");
  if (!(s >= 0.0)) throw PreconditionError("check_product_rule: s must be >= 0");
  if (!(delta > 0.0 && delta < 1.5)) {
    throw PreconditionError("check_product_rule: delta must lie in (0, 3/2)");
  }
  SpectralField fg = product(f, g);
  fg.zero_mode(0) = Complex{};
  CheckerResult r;
  r.lhs = sobolev_norm(fg, s + delta - 1.5);
  r.rhs = sobolev_norm(f, delta) * sobolev_norm(g, s) + sobolev_norm(g, delta) * sobolev_norm(f, s);
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

CheckerResult check_fractional_leibniz(const SpectralField& f, const SpectralField& g,
                                       const LeibnizExponents& e) {
  require_scalar(f.components(), "check_fractional_leibniz");
  require_same_shape(f, g, "check_fractional_leibniz");
  const auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (!in_unit(e.s) || !in_unit(e.s1) || !in_unit(e.s2)) {
    throw PreconditionError("check_fractional_leibniz: s, s1, s2 must lie in (0, 1)");
  }
  if (std::abs(e.s - e.s1 - e.s2) > 1e-12) {
    throw PreconditionError("check_fractional_leibniz: s must equal s1 + s2");
  }
  const auto open_p = [](double p) { return p > 1.0 && std::isfinite(p); };
  if (!open_p(e.p) || !open_p(e.p1) || !open_p(e.p2)) {
    throw PreconditionError("check_fractional_leibniz: exponents p, p1, p2 must lie in (1, inf)");
  }
  if (std::abs(1.0 / e.p - 1.0 / e.p1 - 1.0 / e.p2) > 1e-12) {
    throw PreconditionError("check_fractional_leibniz: need 1/p = 1/p1 + 1/p2");
  }

  const PhysicalField fx = transform_inverse(f);
  const PhysicalField gx = transform_inverse(g);
  const PhysicalField lf = transform_inverse(fractional_laplacian(f, e.s));
  const PhysicalField lg = transform_inverse(fractional_laplacian(g, e.s));

  SpectralField commutator = fractional_laplacian(dealiased_product(fx, 0, gx, 0), e.s);
  commutator -= dealiased_product(lf, 0, gx, 0);
  commutator -= dealiased_product(lg, 0, fx, 0);

  CheckerResult r;
  r.lhs = lebesgue_norm(transform_inverse(commutator), e.p);
  r.rhs = lebesgue_norm(transform_inverse(fractional_laplacian(f, e.s1)), e.p1) *
          lebesgue_norm(transform_inverse(fractional_laplacian(g, e.s2)), e.p2);
  // A vanishing right side (constant factor) makes the commutator vanish too;
  // only rounding is left on the left side.
  if (r.rhs == 0.0 && r.lhs <= 1e-12 * (lebesgue_norm(fx, e.p) + lebesgue_norm(gx, e.p) + 1.0)) {
    r.ratio = 0.0;
  } else {
    r.ratio = safe_ratio(r.lhs, r.rhs);
  }
  return r;
}

CheckerResult check_sobolev_embedding(const SpectralField& f, double s, double q) {
  if (!(s > 0.0 && s < 1.5)) throw PreconditionError("check_sobolev_embedding: need 0 < s < 3/2");
  const double expected = 6.0 / (3.0 - 2.0 * s);
  if (!(std::abs(q - expected) <= 1e-12 * expected)) {
    throw PreconditionError("check_sobolev_embedding: need q = 6/(3 - 2s)");
  }
  CheckerResult r;
  r.lhs = lebesgue_norm(transform_inverse(f), q);
  r.rhs = sobolev_norm(f, s);
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

std::vector<CheckerRow> product_rule_suite(const Grid& grid, double s, double delta,
                                           const SuiteOptions& opt) {
  std::vector<CheckerRow> rows;
  const std::string params = params_text({{"s", s}, {"delta", delta}});
  for (int t = 0; t < opt.trials; ++t) {
    const auto seed = trial_seed(opt.seed, static_cast<std::uint64_t>(t));
    Rng rng(seed);
    const auto f = random_band_field(grid, 1, opt.band_lo, opt.band_hi, rng);
    const auto g = random_band_field(grid, 1, opt.band_lo, opt.band_hi, rng);
    rows.push_back({"product_rule", params, seed, check_product_rule(f, g, s, delta)});
  }
  return rows;
}

std::vector<CheckerRow> fractional_leibniz_suite(const Grid& grid, const LeibnizExponents& e,
                                                 const SuiteOptions& opt) {
  std::vector<CheckerRow> rows;
  const std::string params = params_text(
      {{"s", e.s}, {"s1", e.s1}, {"s2", e.s2}, {"p", e.p}, {"p1", e.p1}, {"p2", e.p2}});
  for (int t = 0; t < opt.trials; ++t) {
    const auto seed = trial_seed(opt.seed, static_cast<std::uint64_t>(t));
    Rng rng(seed);
    const auto f = random_band_field(grid, 1, opt.band_lo, opt.band_hi, rng);
    const auto g = random_band_field(grid, 1, opt.band_lo, opt.band_hi, rng);
    rows.push_back({"fractional_leibniz", params, seed, check_fractional_leibniz(f, g, e)});
  }
  return rows;
}

std::vector<CheckerRow> sobolev_embedding_suite(const Grid& grid, double s,
                                                const SuiteOptions& opt) {
  std::vector<CheckerRow> rows;
  const double q = 6.0 / (3.0 - 2.0 * s);
  const std::string params = params_text({{"s", s}, {"q", q}});
  for (int t = 0; t < opt.trials; ++t) {
    const auto seed = trial_seed(opt.seed, static_cast<std::uint64_t>(t));
    Rng rng(seed);
    const auto f = random_band_field(grid, 1, opt.band_lo, opt.band_hi, rng);
    rows.push_back({"sobolev_embedding", params, seed, check_sobolev_embedding(f, s, q)});
  }
  return rows;
}

SuiteSummary summarize(const std::vector<CheckerRow>& rows) {
  SuiteSummary out;
  std::vector<double> ratios;
  for (const auto& row : rows) {
    if (!std::isfinite(row.result.ratio)) out.all_finite = false;
    ratios.push_back(row.result.ratio);
  }
  if (ratios.empty()) return out;
  std::sort(ratios.begin(), ratios.end());
  out.max_ratio = ratios.back();
  const std::size_t mid = ratios.size() / 2;
  out.median_ratio = ratios.size() % 2 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
  out.stable = out.all_finite && out.max_ratio <= 10.0 * out.median_ratio;
  return out;
}

std::string checker_csv(const std::vector<CheckerRow>& rows) {
  std::ostringstream out;
  CsvWriter csv(out, {"checker", "params", "trial_seed", "lhs", "rhs", "ratio"});
  for (const auto& row : rows) {
    csv.row({row.checker, row.params, std::to_string(row.trial_seed),
             format_double(row.result.lhs), format_double(row.result.rhs),
             format_double(row.result.ratio)});
  }
  return out.str();
}

}  // namespace fracns
