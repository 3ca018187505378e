#include "sl2wave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sl2wave {

namespace {

void check_table(const std::vector<double>& xs, const std::vector<double>& vs) {
  if (xs.size() != vs.size() || xs.size() < 2)
    throw std::invalid_argument("table descriptor needs matching x/v lists with at least two entries");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      throw std::invalid_argument("table descriptor x values must be strictly increasing");
}

double interp_linear(const std::vector<double>& xs, const std::vector<double>& vs,
                     double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  if (hi == 0 || hi == xs.size()) {
    if (x == xs.front()) return vs.front();
    if (x == xs.back()) return vs.back();
    throw std::out_of_range("profile table evaluated outside its domain");
  }
  const double t = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
  return vs[hi - 1] + t * (vs[hi] - vs[hi - 1]);
}

}  // namespace

ProfileChannel ProfileChannel::constant(double value) {
  ProfileChannel c;
  c.kind_ = Kind::Constant;
  c.p0_ = value;
  return c;
}

ProfileChannel ProfileChannel::linear(double value_at_zero, double slope) {
  ProfileChannel c;
  c.kind_ = Kind::Linear;
  c.p0_ = value_at_zero;
  c.p1_ = slope;
  return c;
}

ProfileChannel ProfileChannel::bump(double center, double width, double amplitude,
                                    double baseline) {
  if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
  ProfileChannel c;
  c.kind_ = Kind::Bump;
  c.p0_ = center;
  c.p1_ = width;
  c.p2_ = amplitude;
  c.p3_ = baseline;
  return c;
}

ProfileChannel ProfileChannel::table(std::vector<double> xs, std::vector<double> vs) {
  check_table(xs, vs);
  ProfileChannel c;
  c.kind_ = Kind::Table;
  c.xs_ = std::move(xs);
  c.vs_ = std::move(vs);
  return c;
}

ProfileChannel ProfileChannel::steps(std::vector<double> xs, std::vector<double> vs) {
  check_table(xs, vs);
  ProfileChannel c;
  c.kind_ = Kind::Steps;
  c.xs_ = std::move(xs);
  c.vs_ = std::move(vs);
  return c;
}

double ProfileChannel::eval(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return p0_;
    case Kind::Linear:
      return p0_ + p1_ * x;
    case Kind::Bump: {
      const double u = (x - p0_) / p1_;
      if (std::abs(u) >= 0.5) return p3_;
      return p3_ + p2_ * 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * u));
    }
    case Kind::Table:
      return interp_linear(xs_, vs_, x);
    case Kind::Steps: {
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      if (it == xs_.begin()) return vs_.front();
      return vs_[static_cast<std::size_t>(it - xs_.begin()) - 1];
    }
  }
  return 0.0;
}

double ProfileChannel::domain_min() const {
  return kind_ == Kind::Table ? xs_.front() : -std::numeric_limits<double>::infinity();
}

double ProfileChannel::domain_max() const {
  return kind_ == Kind::Table ? xs_.back() : std::numeric_limits<double>::infinity();
}

GaugeMap GaugeMap::constant(double value) {
  GaugeMap g;
  g.kind_ = Kind::Constant;
  g.p0_ = value;
  return g;
}

GaugeMap GaugeMap::step(double start, double end, double from, double to,
                        StepShape shape) {
  if (!(end > start)) throw std::invalid_argument("gauge step needs end > start");
  GaugeMap g;
  g.kind_ = Kind::Step;
  g.shape_ = shape;
  g.p0_ = start;
  g.p1_ = end;
  g.p2_ = from;
  g.p3_ = to;
  return g;
}

GaugeMap GaugeMap::linear(double slope) {
  GaugeMap g;
  g.kind_ = Kind::Linear;
  g.p0_ = slope;
  return g;
}

GaugeMap GaugeMap::table(std::vector<double> xs, std::vector<double> vs) {
  check_table(xs, vs);
  GaugeMap g;
  g.kind_ = Kind::Table;
  g.xs_ = std::move(xs);
  g.vs_ = std::move(vs);
  return g;
}

double GaugeMap::xi(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return p0_;
    case Kind::Linear:
      return p0_ * x;
    case Kind::Step: {
      double t = (x - p0_) / (p1_ - p0_);
      t = std::clamp(t, 0.0, 1.0);
      double s = 0.0;
      switch (shape_) {
        case StepShape::Cubic:
          s = t * t * (3.0 - 2.0 * t);
          break;
        case StepShape::Quintic:
          s = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
          break;
        case StepShape::Cosine:
          s = 0.5 * (1.0 - std::cos(std::numbers::pi * t));
          break;
      }
      return p2_ + (p3_ - p2_) * s;
    }
    case Kind::Table: {
      if (x <= xs_.front()) return vs_.front();
      if (x >= xs_.back()) return vs_.back();
      return interp_linear(xs_, vs_, x);
    }
  }
  return 0.0;
}

double GaugeMap::dxi(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Linear:
      return p0_;
    case Kind::Step: {
      const double w = p1_ - p0_;
      const double t = (x - p0_) / w;
      if (t <= 0.0 || t >= 1.0) return 0.0;
      double ds = 0.0;
      switch (shape_) {
        case StepShape::Cubic:
          ds = 6.0 * t * (1.0 - t);
          break;
        case StepShape::Quintic:
          ds = 30.0 * t * t * (1.0 - t) * (1.0 - t);
          break;
        case StepShape::Cosine:
          ds = 0.5 * std::numbers::pi * std::sin(std::numbers::pi * t);
          break;
      }
      return (p3_ - p2_) * ds / w;
    }
    case Kind::Table: {
      if (x <= xs_.front() || x >= xs_.back()) return 0.0;
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
      return (vs_[hi] - vs_[hi - 1]) / (xs_[hi] - xs_[hi - 1]);
    }
  }
  return 0.0;
}

std::vector<double> GaugeMap::breakpoints() const {
  switch (kind_) {
    case Kind::Step:
      return {p0_, p1_};
    case Kind::Table:
      return xs_;
    default:
      return {};
  }
}

std::array<double, 3> PotentialProfile::channels(double x) const {
  double e0 = eps0.eval(x);
  double ec = epsc.eval(x);
  double es = epss.eval(x);
  if (gauge) {
    // coupling rotated by -2 k xi, dc channel picks up the gauge field
    const double xi = gauge->xi(x);
    const double c = std::cos(2.0 * k * xi);
    const double s = std::sin(2.0 * k * xi);
    const double ec2 = ec * c + es * s;
    const double es2 = es * c - ec * s;
    e0 += 2.0 * gauge->dxi(x);
    ec = ec2;
    es = es2;
  }
  return {e0, ec, es};
}

double PotentialProfile::domain_min() const {
  return std::max({eps0.domain_min(), epsc.domain_min(), epss.domain_min()});
}

double PotentialProfile::domain_max() const {
  return std::min({eps0.domain_max(), epsc.domain_max(), epss.domain_max()});
}

bool PotentialProfile::within_svea(double x) const {
  const auto [e0, ec, es] = channels(x);
  return std::abs(e0) <= svea_limit && std::abs(ec) <= svea_limit &&
         std::abs(es) <= svea_limit;
}

PotentialProfile constant_profile(double k, double eps0, double epsc, double epss) {
  if (!(k > 0.0)) throw std::invalid_argument("carrier wavenumber must be positive");
  PotentialProfile p;
  p.k = k;
  p.eps0 = ProfileChannel::constant(eps0);
  p.epsc = ProfileChannel::constant(epsc);
  p.epss = ProfileChannel::constant(epss);
  return p;
}

ThreeVector epsilon_vector(const PotentialProfile& profile, double x) {
  const auto [e0, ec, es] = profile.channels(x);
  return {-es, ec, e0};
}

}  // namespace sl2wave
