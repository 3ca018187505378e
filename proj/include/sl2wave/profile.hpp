#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sl2wave/algebra.hpp"

namespace sl2wave {

// One modulation channel as an analytic descriptor evaluated at arbitrary x.
class ProfileChannel {
 public:
  enum class Kind { Constant, Linear, Bump, Table, Steps };

  ProfileChannel() = default;

  static ProfileChannel constant(double value);
  static ProfileChannel linear(double value_at_zero, double slope);
  // raised-cosine bump of given full width on top of a baseline
  static ProfileChannel bump(double center, double width, double amplitude,
                             double baseline = 0.0);
  static ProfileChannel table(std::vector<double> xs, std::vector<double> vs);
  static ProfileChannel steps(std::vector<double> xs, std::vector<double> vs);

  double eval(double x) const;
  Kind kind() const { return kind_; }

  // inclusive evaluation range; tables are the only bounded descriptor
  double domain_min() const;
  double domain_max() const;

 private:
  Kind kind_{Kind::Constant};
  double p0_{0.0}, p1_{0.0}, p2_{0.0}, p3_{0.0};
  std::vector<double> xs_, vs_;
};

// Smooth coordinate deviation xi(x) with an analytic derivative.
class GaugeMap {
 public:
  enum class Kind { Constant, Step, Linear, Table };
  enum class StepShape { Cubic, Quintic, Cosine };

  GaugeMap() = default;

  static GaugeMap constant(double value);
  // plateau `from` for x <= start, plateau `to` for x >= end,
  // smooth interpolation in between
  static GaugeMap step(double start, double end, double from, double to,
                       StepShape shape = StepShape::Quintic);
  static GaugeMap linear(double slope);
  static GaugeMap table(std::vector<double> xs, std::vector<double> vs);

  double xi(double x) const;
  double dxi(double x) const;
  Kind kind() const { return kind_; }

  // x values where dxi is not smooth (quadrature split points)
  std::vector<double> breakpoints() const;

 private:
  Kind kind_{Kind::Constant};
  StepShape shape_{StepShape::Quintic};
  double p0_{0.0}, p1_{0.0}, p2_{0.0}, p3_{0.0};
  std::vector<double> xs_, vs_;
};

// Medium description: carrier wavenumber plus the three modulation
// channels (dc, cos 2kx, sin 2kx). An attached gauge map rotates the
// coupling channels and shifts the dc channel; see gauge.hpp.
struct PotentialProfile {
  double k{1.0};
  ProfileChannel eps0, epsc, epss;
  double svea_limit{0.1};
  std::optional<GaugeMap> gauge;

  // (eps0, epsc, epss) at x with any gauge attachment applied
  std::array<double, 3> channels(double x) const;

  double domain_min() const;
  double domain_max() const;
  bool within_svea(double x) const;
};

PotentialProfile constant_profile(double k, double eps0, double epsc,
                                  double epss);

// modulation vector (-epss, epsc, eps0) at x
ThreeVector epsilon_vector(const PotentialProfile& profile, double x);

}  // namespace sl2wave
