#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rieffel/groups.hpp"
#include "rieffel/phase.hpp"

namespace rieffel {

/// |X| x |X| table of exact phases on a finite abelian group X.
class PhaseTable {
 public:
  PhaseTable() = default;
  PhaseTable(FiniteAbelianGroup group, std::vector<Phase> entries);

  const FiniteAbelianGroup& group() const { return group_; }
  int size() const { return group_.order(); }
  const Phase& operator()(int x, int y) const { return entries_[static_cast<std::size_t>(x) * size() + y]; }
  const std::vector<Phase>& entries() const { return entries_; }

  Eigen::MatrixXcd values() const;

  friend bool operator==(const PhaseTable& a, const PhaseTable& b) {
    return a.group_ == b.group_ && a.entries_ == b.entries_;
  }

 protected:
  FiniteAbelianGroup group_;
  std::vector<Phase> entries_;
};

struct CocycleReport {
  bool pass = true;
  bool normalized = true;
  /// First violating triple (x, y, z) of the cocycle identity, or the
  /// offending normalization pair in the first two slots.
  std::optional<std::array<int, 3>> witness;
  std::string message;
};

/// Exhaustive exact check of normalization and the 2-cocycle identity.
CocycleReport verify_cocycle(const PhaseTable& t);

/// A verified normalized 2-cocycle on a dual group.
class TwoCocycle : public PhaseTable {
 public:
  /// Validates; throws ValidationError with the witness on failure.
  TwoCocycle(FiniteAbelianGroup dual_group, std::vector<Phase> entries);
  explicit TwoCocycle(const PhaseTable& t) : TwoCocycle(t.group(), t.entries()) {}

  static TwoCocycle trivial(const FiniteAbelianGroup& g);
  /// Psi(x, y) = exp(2 pi i sum_ij x_i B_ij y_j / N). Rejects matrices that
  /// are not well defined on the factor residues.
  static TwoCocycle bicharacter(const FiniteAbelianGroup& g, const std::vector<std::vector<long>>& b,
                                long modulus);
  /// Entry (x, y) is exp(2 pi i num[x][y] / den).
  static TwoCocycle from_table(const FiniteAbelianGroup& g, const std::vector<std::vector<long>>& num,
                               long den);

  TwoCocycle conj() const;
  /// Psi~(x, y) = conj Psi(-x, -y)
  TwoCocycle tilde() const;
  /// Psi^Sigma(x, y) = Psi(y, x)
  TwoCocycle flip() const;
  /// Psi*(x, y) = conj Psi(x, -x - y); not a cocycle in general.
  PhaseTable star() const;
  /// u(x) = Psi(-x, x)
  std::vector<Phase> u_element() const;
  /// The column function x -> Psi(x, chi), used to build U_chi.
  std::vector<Phase> column(int chi) const;

  TwoCocycle multiply(const TwoCocycle& other) const;
  /// Cocycle on X x Y given by (x1,y1),(x2,y2) -> Psi1(x1,x2) Psi2(y1,y2).
  TwoCocycle tensor(const TwoCocycle& other) const;

  /// Alternating bicharacter beta(x, y) = Psi(x, y) / Psi(y, x).
  PhaseTable antisymmetrization() const;

 private:
  struct Unchecked {};
  TwoCocycle(Unchecked, FiniteAbelianGroup g, std::vector<Phase> e) : PhaseTable(std::move(g), std::move(e)) {}
};

/// d f (x, y) = f(x + y) / (f(x) f(y)); requires f(0) = 1.
TwoCocycle coboundary(const FiniteAbelianGroup& g, const std::vector<Phase>& f);

struct CohomologyResult {
  bool cohomologous = false;
  /// f with Psi2 * conj(Psi1) = d f, when found.
  std::optional<std::vector<Phase>> witness;
  /// (x, y) with beta(x, y) != 1 when not cohomologous.
  std::optional<std::array<int, 2>> obstruction;
};

/// Decides cohomology through the antisymmetrization of Psi2 conj(Psi1); a
/// coboundary witness is constructed for groups of order up to 4096.
CohomologyResult cohomologous(const TwoCocycle& a, const TwoCocycle& b);

/// Exhaustive exact check of conj Psi(x,y) Psi*(x+y,z) = Psi*(x,z) Psi*(y,x+z).
/// Returns the first violating triple.
std::optional<std::array<int, 3>> check_star_identity(const TwoCocycle& psi);

/// Exact check of Psi(x, a+b) = conj Psi(a,b) Psi(x,a) Psi(x+a,b) for all x,a,b:
/// the function-level form of U_{a+b} = conj Psi(a,b) U_a rhohat_a(U_b).
std::optional<std::array<int, 3>> check_u_cocycle_identity(const TwoCocycle& psi);

}  // namespace rieffel
