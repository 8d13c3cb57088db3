#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracns/field.hpp"

namespace fracns {

/// Rectangle-rule L^q norm, (sum |f(x_i)|^q dx^3)^{1/q}; vector fields use the
/// pointwise Euclidean magnitude. Requires q >= 1.
double lebesgue_norm(const PhysicalField& f, double q);

/// Homogeneous Sobolev norm (V * sum_k |k|^{2s} |c(k)|^2)^{1/2} over the full
/// lattice. s < 0 requires a mean-free field.
double sobolev_norm(const SpectralField& f, double s);

/// L^2 pairing of two fields, V * sum_k c_a(k) conj(c_b(k)) (real part),
/// summed over components.
double spectral_inner(const SpectralField& a, const SpectralField& b);

struct CheckerResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// ||fg - mean(fg)||_{H^{s+delta-3/2}} against
/// ||f||_{H^delta} ||g||_{H^s} + ||g||_{H^delta} ||f||_{H^s}. The product is
/// formed pseudo-spectrally with dealiasing. Scalar f, g; 0 <= s and
/// 0 < delta < 3/2.
CheckerResult check_product_rule(const SpectralField& f, const SpectralField& g, double s,
                                 double delta);

struct LeibnizExponents {
  double s = 0.5, s1 = 0.25, s2 = 0.25;
  double p = 2.0, p1 = 4.0, p2 = 4.0;
};

/// ||L^s(fg) - L^s(f) g - L^s(g) f||_{L^p} against
/// ||L^{s1} f||_{L^{p1}} ||L^{s2} g||_{L^{p2}}, L^s = (-Delta)^{s/2}.
/// Requires 0 < s, s1, s2 < 1, s = s1 + s2, 1/p = 1/p1 + 1/p2, all p in (1, inf).
CheckerResult check_fractional_leibniz(const SpectralField& f, const SpectralField& g,
                                       const LeibnizExponents& e);

/// ||f||_{L^q} / ||f||_{H^s} with q = 6/(3 - 2s) and 0 < s < 3/2.
CheckerResult check_sobolev_embedding(const SpectralField& f, double s, double q);

/// One line of a checker report.
struct CheckerRow {
  std::string checker;
  std::string params;
  std::uint64_t trial_seed = 0;
  CheckerResult result;
};

struct SuiteOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  double band_lo = 1.0;
  double band_hi = 4.0;
};

/// Randomized suites over scalar band-limited fields, one row per trial.
std::vector<CheckerRow> product_rule_suite(const Grid& grid, double s, double delta,
                                           const SuiteOptions& opt);
std::vector<CheckerRow> fractional_leibniz_suite(const Grid& grid, const LeibnizExponents& e,
                                                 const SuiteOptions& opt);
std::vector<CheckerRow> sobolev_embedding_suite(const Grid& grid, double s,
                                                const SuiteOptions& opt);

struct SuiteSummary {
  bool all_finite = true;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  /// max <= 10 * median.
  bool stable = true;
};
SuiteSummary summarize(const std::vector<CheckerRow>& rows);

/// CSV with columns checker,params,trial_seed,lhs,rhs,ratio.
std::string checker_csv(const std::vector<CheckerRow>& rows);

}  // namespace fracns
