#include "dramcell/profiles.hpp"

#include <cmath>

#include "dramcell/rng.hpp"

namespace dramcell {

namespace {

DeviceProfile retention_profile(const char* dimm, double rs_lo, double rs_hi,
                                double rsn_lo, double rsn_hi) {
  DeviceProfile p;
  p.dimm = dimm;
  p.mechanism = Mechanism::Retention;
  p.r_s_range = {rs_lo * 1e13, rs_hi * 1e13};
  p.r_s_noise_range = std::make_pair(rsn_lo * 1e13, rsn_hi * 1e13);
  return p;
}

DeviceProfile disturbance_profile(const char* dimm, Mechanism mech,
                                  double rs_lo, double rs_hi, double rb_lo,
                                  double rb_hi) {
  DeviceProfile p;
  p.dimm = dimm;
  p.mechanism = mech;
  p.r_s_range = {rs_lo * 1e10, rs_hi * 1e10};
  p.r_b_range = std::make_pair(rb_lo * 1e8, rb_hi * 1e8);
  return p;
}

void set_metadata(std::vector<DeviceProfile>& v, const char* dimm,
                  const char* vendor, const char* density, int speed,
                  int year) {
  for (auto& p : v) {
    if (p.dimm == dimm) {
      p.vendor = vendor;
      p.density = density;
      p.speed_mt_s = speed;
      p.year = year;
    }
  }
}

std::vector<DeviceProfile> make_builtin_profiles() {
  using M = Mechanism;
  std::vector<DeviceProfile> v;
  // Volatility columns are in 1e13 ohm, disturbance R_S in 1e10 ohm and R_B
  // in 1e8 ohm.
  v.push_back(retention_profile("D1", 10.6, 5530.0, 9.01, 5244.0));
  v.push_back(retention_profile("D2", 9.2, 4988.0, 7.7, 4620.0));
  v.push_back(retention_profile("D3", 13.2, 6720.0, 11.4, 5420.0));
  v.push_back(retention_profile("D4", 8.50, 8960.0, 7.2, 6980.0));
  v.push_back(retention_profile("D5", 6.5, 7350.0, 5.5, 6321.0));
  v.push_back(retention_profile("D6", 14.4, 5620.0, 10.8, 4770.0));
  v.push_back(retention_profile("D7", 15.6, 6820.0, 13.2, 5183.0));

  v.push_back(disturbance_profile("D1", M::Rowhammer, 4.78, 305.0, 57.9, 909.0));
  v.push_back(disturbance_profile("D2", M::Rowhammer, 5.31, 306.0, 37.2, 905.0));
  v.push_back(disturbance_profile("D3", M::Rowhammer, 5.31, 240.0, 76.7, 829.0));
  v.push_back(disturbance_profile("D4", M::Rowhammer, 4.54, 31880.0, 29.5, 6470.0));
  v.push_back(disturbance_profile("D5", M::Rowhammer, 5.21, 46300.0, 36.2, 8410.0));
  v.push_back(disturbance_profile("D6", M::Rowhammer, 8.77, 442.0, 44.3, 486.0));
  v.push_back(disturbance_profile("D7", M::Rowhammer, 4.31, 85.0, 37.8, 643.0));

  v.push_back(disturbance_profile("D1", M::Rowpress, 36.1, 1050.0, 38.5, 362.0));
  v.push_back(disturbance_profile("D2", M::Rowpress, 25.5, 2125.0, 25.7, 584.0));
  v.push_back(disturbance_profile("D3", M::Rowpress, 55.3, 1830.0, 44.4, 258.0));
  v.push_back(disturbance_profile("D4", M::Rowpress, 102.0, 638000.0, 24.3, 1170.0));
  v.push_back(disturbance_profile("D5", M::Rowpress, 512.0, 826000.0, 15.6, 2230.0));
  v.push_back(disturbance_profile("D6", M::Rowpress, 25.5, 1620.0, 9.45, 312.0));
  v.push_back(disturbance_profile("D7", M::Rowpress, 31.9, 424.0, 26.7, 393.0));

  set_metadata(v, "D1", "Micron", "16GB", 2400, 2021);
  set_metadata(v, "D2", "Micron", "16GB", 2400, 2021);
  set_metadata(v, "D3", "Micron", "16GB", 2400, 2021);
  set_metadata(v, "D4", "Lenovo", "8GB", 2666, 2018);
  set_metadata(v, "D5", "Lenovo", "8GB", 2666, 2018);
  set_metadata(v, "D6", "Innodisk", "8GB", 2400, 2019);
  set_metadata(v, "D7", "ADATA", "4GB", 2400, 2018);
  return v;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double from_quantile(double u, double lo, double hi) {
  const double v = lo * std::exp(u * std::log(hi / lo));
  return std::min(std::max(v, lo), hi);
}

// Clipped log-normal centered on the band: mu at the geometric mean, sigma a
// quarter of the log-width.
double from_gaussian(double z, double lo, double hi) {
  const double mu = 0.5 * (std::log(lo) + std::log(hi));
  const double sigma = 0.25 * (std::log(hi) - std::log(lo));
  const double v = std::exp(mu + sigma * z);
  return std::min(std::max(v, lo), hi);
}

}  // namespace

const std::vector<DeviceProfile>& builtin_profiles() {
  static const std::vector<DeviceProfile> profiles = make_builtin_profiles();
  return profiles;
}

std::optional<DeviceProfile> find_profile(const std::string& dimm,
                                          Mechanism mechanism) {
  for (const auto& p : builtin_profiles())
    if (p.dimm == dimm && p.mechanism == mechanism) return p;
  return std::nullopt;
}

SampledPopulation sample_population(const DeviceProfile& profile,
                                    std::size_t n, std::uint64_t seed,
                                    const DeviceConstants& dc,
                                    const SamplingOptions& opts) {
  validate(dc);
  if (!(profile.r_s_range.first > 0.0) ||
      profile.r_s_range.second < profile.r_s_range.first)
    throw InvalidParameter("profile R_S range must be positive and ordered");
  if (is_disturbance(profile.mechanism) && !profile.r_b_range)
    throw InvalidParameter("disturbance profile requires an R_B range");
  if (!(opts.c_s > 0.0)) throw InvalidParameter("c_s must be positive");
  if (!(opts.rho >= -1.0 && opts.rho <= 1.0))
    throw InvalidParameter("rho must lie in [-1, 1]");
  if (opts.noise_lo_v > opts.noise_hi_v || opts.noise_hi_v > 0.0)
    throw InvalidParameter("noise band must satisfy lo <= hi <= 0");

  SampledPopulation pop;
  pop.dimm = profile.dimm;
  pop.mechanism = profile.mechanism;
  pop.seed = seed;
  pop.cells.reserve(n);

  Rng rng(seed);
  const bool disturbance = is_disturbance(profile.mechanism);
  // Pattern-noise applies only to adverse-neighbor retention runs; the
  // disturbance tables already fold the pattern effect into R_B.
  const bool draw_noise = profile.mechanism == Mechanism::Retention &&
                          bitline_branch_enabled(opts.pattern);
  const bool copula =
      opts.rho != 0.0 || opts.distribution == RangeDistribution::LogNormalClipped;

  for (std::size_t i = 0; i < n; ++i) {
    CellParams cell;
    cell.c_s = opts.c_s;
    double r_b = std::numeric_limits<double>::infinity();
    if (copula) {
      const double z1 = rng.gaussian();
      const double z2 =
          opts.rho * z1 + std::sqrt(1.0 - opts.rho * opts.rho) * rng.gaussian();
      if (opts.distribution == RangeDistribution::LogNormalClipped) {
        cell.r_s = from_gaussian(z1, profile.r_s_range.first,
                                 profile.r_s_range.second);
        if (disturbance)
          r_b = from_gaussian(z2, profile.r_b_range->first,
                              profile.r_b_range->second);
      } else {
        cell.r_s = from_quantile(normal_cdf(z1), profile.r_s_range.first,
                                 profile.r_s_range.second);
        if (disturbance)
          r_b = from_quantile(normal_cdf(z2), profile.r_b_range->first,
                              profile.r_b_range->second);
      }
    } else {
      cell.r_s =
          rng.log_uniform(profile.r_s_range.first, profile.r_s_range.second);
      const double u_rb = rng.uniform01();
      if (disturbance)
        r_b = from_quantile(u_rb, profile.r_b_range->first,
                            profile.r_b_range->second);
    }
    cell.a = factor_from_r_b(r_b, dc);
    const double u_noise = rng.uniform01();
    cell.n_noise =
        draw_noise ? opts.noise_lo_v + (opts.noise_hi_v - opts.noise_lo_v) * u_noise
                   : 0.0;
    pop.cells.push_back(cell);
  }
  return pop;
}

}  // namespace dramcell
