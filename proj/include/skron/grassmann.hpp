#pragma once

// Exterior algebra on six ordered odd generators
//
//   zeta1 < zeta2 < zeta3 < mu1 < mu2 < omega
//
// with coefficients in a ring that commutes with the generators: complex
// scalars, dense complex matrices, or linear forms over derivatives of the
// Kronecker function (see diff_form.hpp). Monomials are 6-bit masks; a
// product of two monomials picks up (-1)^(inversions) when the
// concatenated generator sequence is sorted into canonical order.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <type_traits>
#include <utility>

#include <Eigen/Dense>

#include "skron/errors.hpp"

namespace skron {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class Generator : std::uint8_t { zeta1 = 0, zeta2, zeta3, mu1, mu2, omega };

inline constexpr int kGeneratorCount = 6;

/// zeta generator bound to tensor slot k (1-based).
inline Generator zeta_for_slot(int slot) {
  return static_cast<Generator>(slot - 1);
}

std::string to_string(Generator g);

class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint8_t mask) : mask_(mask) {}
  Monomial(std::initializer_list<Generator> gens) {
    for (Generator g : gens) {
      const auto bit = static_cast<std::uint8_t>(1u << static_cast<unsigned>(g));
      if (mask_ & bit) throw std::invalid_argument("Monomial: repeated generator");
      mask_ |= bit;
    }
  }

  constexpr std::uint8_t mask() const { return mask_; }
  int degree() const { return std::popcount(static_cast<unsigned>(mask_)); }
  bool contains(Generator g) const {
    return (mask_ >> static_cast<unsigned>(g)) & 1u;
  }

  friend constexpr auto operator<=>(Monomial, Monomial) = default;

 private:
  std::uint8_t mask_ = 0;
};

std::string to_string(Monomial m);

/// Koszul sign of a * b for disjoint masks: number of pairs (i in a, j in b)
/// with i > j.
inline int merge_sign(std::uint8_t a, std::uint8_t b) {
  int inversions = 0;
  for (unsigned j = 0; j < kGeneratorCount; ++j) {
    if (!((b >> j) & 1u)) continue;
    inversions += std::popcount(static_cast<unsigned>(a >> (j + 1)));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

enum class Parity { Even, Odd, Mixed };

// ---------------------------------------------------------------------------
// Coefficient rings.

template <class C>
struct RingTraits;

template <>
struct RingTraits<cplx> {
  static double magnitude(const cplx& c) { return std::abs(c); }
  static std::size_t dim(const cplx&) { return 0; }
  static cplx zero(std::size_t) { return cplx{}; }
  static cplx one(std::size_t) { return cplx{1.0, 0.0}; }
};

template <>
struct RingTraits<Matrix> {
  static double magnitude(const Matrix& c) {
    return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
  }
  static std::size_t dim(const Matrix& c) { return static_cast<std::size_t>(c.rows()); }
  static Matrix zero(std::size_t n) {
    return Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  }
  static Matrix one(std::size_t n) {
    return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  }
};

inline cplx ring_mul(const cplx& a, const cplx& b) { return a * b; }
inline Matrix ring_mul(const Matrix& a, const Matrix& b) { return a * b; }
inline Matrix ring_mul(const cplx& a, const Matrix& b) { return a * b; }
inline Matrix ring_mul(const Matrix& a, const cplx& b) { return a * b; }

// ---------------------------------------------------------------------------

template <class C>
class GrassmannElement {
 public:
  using Coeff = C;
  using Traits = RingTraits<C>;
  using Terms = std::map<Monomial, C>;

  static constexpr double kPruneRelative = 1e-14;

  /// Zero element of the ring of dimension `dim` (0 for scalar rings).
  explicit GrassmannElement(std::size_t dim = 0) : dim_(dim) {}

  static GrassmannElement constant(const C& c) {
    GrassmannElement e(Traits::dim(c));
    e.terms_.emplace(Monomial{}, c);
    e.prune();
    return e;
  }
  static GrassmannElement monomial(Monomial m, const C& c) {
    GrassmannElement e(Traits::dim(c));
    e.terms_.emplace(m, c);
    e.prune();
    return e;
  }
  static GrassmannElement generator(Generator g, std::size_t dim = 0) {
    return monomial(Monomial{g}, Traits::one(dim));
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient at m, zero of the ring if absent.
  C coeff(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Traits::zero(dim_) : it->second;
  }

  /// Adds c at m without pruning; call prune() when done.
  void accumulate(Monomial m, const C& c) {
    check_dim(Traits::dim(c));
    auto it = terms_.find(m);
    if (it == terms_.end())
      terms_.emplace(m, c);
    else
      it->second += c;
  }

  /// Largest coefficient magnitude over all monomials.
  double max_magnitude() const {
    double best = 0.0;
    for (const auto& [m, c] : terms_) best = std::max(best, Traits::magnitude(c));
    return best;
  }

  /// Drops coefficients below kPruneRelative times the element maximum.
  void prune() {
    const double cut = kPruneRelative * max_magnitude();
    for (auto it = terms_.begin(); it != terms_.end();) {
      const double mag = Traits::magnitude(it->second);
      if (mag == 0.0 || mag <= cut)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  Parity parity() const {
    bool even = false;
    bool odd = false;
    for (const auto& [m, c] : terms_) (m.degree() % 2 == 0 ? even : odd) = true;
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
  }

  GrassmannElement& operator+=(const GrassmannElement& o) {
    check_dim(o.dim_);
    for (const auto& [m, c] : o.terms_) accumulate(m, c);
    prune();
    return *this;
  }
  GrassmannElement& operator-=(const GrassmannElement& o) {
    check_dim(o.dim_);
    for (const auto& [m, c] : o.terms_) accumulate(m, -c);
    prune();
    return *this;
  }
  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) {
    return a += b;
  }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) {
    return a -= b;
  }
  friend GrassmannElement operator-(GrassmannElement a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }

  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    return true;
  }

  // Dimension of a matrix ring is fixed by the first nonzero-sized operand.
  void check_dim(std::size_t other) {
    if (other == dim_) return;
    if (terms_.empty() && dim_ == 0) {
      dim_ = other;
      return;
    }
    if (other == 0 && std::is_same_v<C, cplx>) return;
    throw RingMismatch("Grassmann coefficient rings differ: dimension " +
                       std::to_string(dim_) + " vs " + std::to_string(other));
  }

 private:
  std::size_t dim_;
  Terms terms_;
};

using ScalarElement = GrassmannElement<cplx>;
using MatrixElement = GrassmannElement<Matrix>;

namespace detail {
template <class L, class R>
using ProductCoeff = decltype(ring_mul(std::declval<const L&>(), std::declval<const R&>()));
}  // namespace detail

/// Graded product. Ring coefficients multiply in operand order.
template <class L, class R>
GrassmannElement<detail::ProductCoeff<L, R>> gmul(const GrassmannElement<L>& a,
                                                  const GrassmannElement<R>& b) {
  using P = detail::ProductCoeff<L, R>;
  if constexpr (std::is_same_v<L, R> && !std::is_same_v<L, cplx>) {
    if (a.dim() != b.dim() && !a.is_zero() && !b.is_zero())
      throw RingMismatch("gmul: coefficient rings differ");
  }
  GrassmannElement<P> out(std::max(a.dim(), b.dim()));
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma.mask() & mb.mask()) continue;
      const int s = merge_sign(ma.mask(), mb.mask());
      P prod = ring_mul(ca, cb);
      if (s < 0) prod = -prod;
      out.accumulate(Monomial(static_cast<std::uint8_t>(ma.mask() | mb.mask())), prod);
    }
  out.prune();
  return out;
}

template <class L, class R>
auto operator*(const GrassmannElement<L>& a, const GrassmannElement<R>& b) {
  return gmul(a, b);
}

template <class C>
GrassmannElement<C> gadd(const GrassmannElement<C>& a, const GrassmannElement<C>& b) {
  return a + b;
}

/// Left multiplication of every coefficient by c.
template <class S, class C>
auto gscale(const S& c, const GrassmannElement<C>& a) {
  using P = detail::ProductCoeff<S, C>;
  GrassmannElement<P> out(a.dim());
  for (const auto& [m, v] : a.terms()) out.accumulate(m, ring_mul(c, v));
  out.prune();
  return out;
}

/// Left derivative with respect to g.
template <class C>
GrassmannElement<C> gderiv(const GrassmannElement<C>& a, Generator g) {
  GrassmannElement<C> out(a.dim());
  const unsigned bit = static_cast<unsigned>(g);
  for (const auto& [m, c] : a.terms()) {
    if (!m.contains(g)) continue;
    const int before = std::popcount(static_cast<unsigned>(m.mask()) & ((1u << bit) - 1u));
    const Monomial rest(static_cast<std::uint8_t>(m.mask() & ~(1u << bit)));
    out.accumulate(rest, before % 2 == 0 ? c : C(-c));
  }
  out.prune();
  return out;
}

template <class C>
C gcoeff(const GrassmannElement<C>& a, Monomial m) {
  return a.coeff(m);
}

template <class C>
Parity parity(const GrassmannElement<C>& a) {
  return a.parity();
}

/// Exponential of a scalar-ring element whose nilpotent part is even.
ScalarElement gexp(const ScalarElement& a);

}  // namespace skron
