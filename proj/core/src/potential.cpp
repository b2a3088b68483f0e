#include "relwig/potential.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace relwig {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_component(int mu) {
  if (mu < 0 || mu > 3) throw std::invalid_argument("potential component must be 0..3, got " + std::to_string(mu));
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double horner_derivative(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t n = c.size(); n-- > 1;) acc = acc * x + static_cast<double>(n) * c[n];
  return acc;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// (x+h)^n - (x-h)^n summed over odd powers of h only.
double odd_difference(const std::vector<double>& c, double x, double h) {
  double total = 0.0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    const int nn = static_cast<int>(n);
    double s = 0.0;
    for (int j = 1; j <= nn; j += 2) s += binomial(nn, j) * std::pow(x, nn - j) * std::pow(h, j);
    total += c[n] * 2.0 * s;
  }
  return total;
}

}  // namespace

PotentialSpec::PotentialSpec(Variant v) : v_(std::move(v)) {
  if (const auto* s = std::get_if<SineA>(&v_)) check_component(s->component);
}

PotentialSpec PotentialSpec::sine(double amplitude, double wavenumber, int component) {
  return PotentialSpec(SineA{amplitude, wavenumber, component});
}

PotentialSpec PotentialSpec::polynomial(int component, std::vector<double> coeffs) {
  check_component(component);
  PolynomialA p;
  p.coefficients[static_cast<std::size_t>(component)] = std::move(coeffs);
  return PotentialSpec(p);
}

bool PotentialSpec::is_zero() const {
  return std::visit(overloaded{[](const PolynomialA& p) {
                                 for (const auto& c : p.coefficients)
                                   for (double v : c)
                                     if (v != 0.0) return false;
                                 return true;
                               },
                               [](const ConstantE& e) { return e.strength == 0.0; },
                               [](const ConstantB& b) { return b.strength == 0.0; },
                               [](const SineA& s) { return s.amplitude == 0.0; }},
                    v_);
}

PotentialComponents PotentialSpec::at_x1(double x) const {
  PotentialComponents a{0.0, 0.0, 0.0, 0.0};
  std::visit(overloaded{[&](const PolynomialA& p) {
                          for (std::size_t mu = 0; mu < 4; ++mu) a[mu] = horner(p.coefficients[mu], x);
                        },
                        [&](const ConstantE& e) { a[0] = -e.strength * x; },
                        [&](const ConstantB& b) { a[2] = b.strength * x; },
                        [&](const SineA& s) {
                          a[static_cast<std::size_t>(s.component)] = s.amplitude * std::sin(s.wavenumber * x);
                        }},
             v_);
  return a;
}

PotentialComponents PotentialSpec::derivative_x1(double x) const {
  PotentialComponents d{0.0, 0.0, 0.0, 0.0};
  std::visit(overloaded{[&](const PolynomialA& p) {
                          for (std::size_t mu = 0; mu < 4; ++mu) d[mu] = horner_derivative(p.coefficients[mu], x);
                        },
                        [&](const ConstantE& e) { d[0] = -e.strength; },
                        [&](const ConstantB& b) { d[2] = b.strength; },
                        [&](const SineA& s) {
                          d[static_cast<std::size_t>(s.component)] =
                              s.amplitude * s.wavenumber * std::cos(s.wavenumber * x);
                        }},
             v_);
  return d;
}

Eigen::Matrix4d PotentialSpec::gradient(const FourVector& x) const {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  const auto d = derivative_x1(x.raised()[1]);
  for (int mu = 0; mu < 4; ++mu) g(1, mu) = d[static_cast<std::size_t>(mu)];
  return g;
}

PotentialComponents PotentialSpec::symmetric_difference(double x, double h) const {
  PotentialComponents d{0.0, 0.0, 0.0, 0.0};
  std::visit(overloaded{[&](const PolynomialA& p) {
                          for (std::size_t mu = 0; mu < 4; ++mu) d[mu] = odd_difference(p.coefficients[mu], x, h);
                        },
                        [&](const ConstantE& e) { d[0] = -2.0 * e.strength * h; },
                        [&](const ConstantB& b) { d[2] = 2.0 * b.strength * h; },
                        [&](const SineA& s) {
                          d[static_cast<std::size_t>(s.component)] =
                              2.0 * s.amplitude * std::cos(s.wavenumber * x) * std::sin(s.wavenumber * h);
                        }},
             v_);
  return d;
}

std::string PotentialSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{[&](const PolynomialA& p) {
                          os << "polynomial";
                          for (std::size_t mu = 0; mu < 4; ++mu) {
                            if (p.coefficients[mu].empty()) continue;
                            os << " A" << mu << "=[";
                            for (std::size_t n = 0; n < p.coefficients[mu].size(); ++n)
                              os << (n ? "," : "") << p.coefficients[mu][n];
                            os << "]";
                          }
                        },
                        [&](const ConstantE& e) { os << "constant_e E0=" << e.strength; },
                        [&](const ConstantB& b) { os << "constant_b B0=" << b.strength; },
                        [&](const SineA& s) {
                          os << "sine a=" << s.amplitude << " b=" << s.wavenumber << " component=" << s.component;
                        }},
             v_);
  return os.str();
}

}  // namespace relwig
