#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>

namespace rieffel {

using cplx = std::complex<double>;

/// Unit complex number exp(2*pi*i * num/den) kept as an exact reduced fraction
/// in [0, 1). All cocycle identities are checked in this arithmetic.
class Phase {
 public:
  constexpr Phase() = default;
  Phase(std::int64_t num, std::int64_t den);

  static Phase one() { return Phase(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_one() const { return num_ == 0; }

  Phase conj() const;
  Phase pow(std::int64_t k) const;

  /// One of the n-th roots: exp(2*pi*i * num/(den*n)).
  Phase root(std::int64_t n) const;

  cplx value() const;

  friend Phase operator*(const Phase& a, const Phase& b);
  friend Phase operator/(const Phase& a, const Phase& b) { return a * b.conj(); }
  Phase& operator*=(const Phase& o) { return *this = *this * o; }
  friend bool operator==(const Phase& a, const Phase& b) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Phase& p);

}  // namespace rieffel
