#include "rieffel/phase.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rieffel {

Phase::Phase(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("phase denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Phase Phase::conj() const { return Phase(-num_, den_); }

Phase Phase::pow(std::int64_t k) const {
  // reduce k first so num*k stays small
  k %= den_;
  return Phase(num_ * k, den_);
}

Phase Phase::root(std::int64_t n) const {
  if (n <= 0) throw std::invalid_argument("root order must be positive");
  return Phase(num_, den_ * n);
}

cplx Phase::value() const {
  // exact values for the quarter turns keep small tables free of rounding noise
  if (num_ == 0) return {1.0, 0.0};
  if (den_ == 2) return {-1.0, 0.0};
  if (den_ == 4) return num_ == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  const double t = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
  return {std::cos(t), std::sin(t)};
}

Phase operator*(const Phase& a, const Phase& b) {
  const std::int64_t l = std::lcm(a.den_, b.den_);
  return Phase(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

std::ostream& operator<<(std::ostream& os, const Phase& p) {
  return os << "e(" << p.num() << "/" << p.den() << ")";
}

}  // namespace rieffel
