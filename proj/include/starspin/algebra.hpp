#ifndef STARSPIN_ALGEBRA_HPP
#define STARSPIN_ALGEBRA_HPP

// Exterior (Grassmann) algebra over up to 24 anticommuting generators with
// complex coefficients, plus the structural plumbing shared by every other
// layer: signatures with a diagonal metric, sparse blade storage keyed by
// bitmask, grade bookkeeping, the two one-sided derivatives, and linear
// substitution of generators. Blades are stored in ascending generator order;
// the permutation sign of any other ordering is absorbed into the coefficient.

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starspin/errors.hpp"
#include "starspin/kernels.hpp"

namespace starspin {

using Complex = std::complex<double>;

/// Coefficients below this magnitude are dropped after arithmetic.
inline constexpr double kPruneEps = 1e-14;

/// Default per-coefficient tolerance for approximate comparison.
inline constexpr double kDefaultTol = 1e-10;

class AlgebraSignature;
using SigPtr = std::shared_ptr<const AlgebraSignature>;

/// Ordered list of generator indices. Order is meaningful: it fixes the
/// integration order of iterated Berezin integrals and the component pairing
/// of transforms and substitutions.
using GeneratorSet = std::vector<int>;

/// Immutable list of generator labels with a diagonal metric entry per
/// generator. Metric 0 marks an inert replica generator: it anticommutes like
/// any other but never contracts in a star product.
class AlgebraSignature {
 public:
  static constexpr int kMaxGenerators = 24;

  AlgebraSignature(std::vector<std::string> labels, std::vector<double> metric)
      : labels_(std::move(labels)), metric_(std::move(metric)) {
    if (labels_.size() != metric_.size())
      throw DomainError("signature label/metric size mismatch");
    if (labels_.size() > kMaxGenerators)
      throw CapacityExceeded("signature exceeds " + std::to_string(kMaxGenerators) +
                             " generators");
    for (size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw DomainError("empty generator label");
      auto [it, fresh] = index_.emplace(labels_[i], static_cast<int>(i));
      if (!fresh) throw DomainError("duplicate generator label " + labels_[i]);
      if (metric_[i] != 0.0) active_mask_ |= uint32_t{1} << i;
    }
  }

  static SigPtr make(std::vector<std::string> labels, std::vector<double> metric) {
    return std::make_shared<AlgebraSignature>(std::move(labels), std::move(metric));
  }

  /// n generators s1..sn, metric 1 each.
  static SigPtr euclidean(int n) {
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back("s" + std::to_string(i));
    return make(std::move(labels), std::vector<double>(n, 1.0));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_.at(i); }
  double metric(int i) const { return metric_.at(i); }
  uint32_t active_mask() const { return active_mask_; }
  uint32_t full_mask() const {
    return size() == 32 ? ~uint32_t{0} : (uint32_t{1} << size()) - 1;
  }

  int index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw UnknownGenerator("unknown generator " + label);
    return it->second;
  }
  bool has(const std::string& label) const { return index_.count(label) != 0; }

  bool same_as(const AlgebraSignature& other) const {
    return labels_ == other.labels_ && metric_ == other.metric_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<double> metric_;
  std::map<std::string, int> index_;
  uint32_t active_mask_ = 0;
};

inline int blade_grade(uint32_t mask) { return std::popcount(mask); }

/// Coefficient ring adapter. The algebra template is instantiated with plain
/// complex numbers and (in the phase-space layer) with polynomials.
template <class C>
struct CoeffOps;

template <>
struct CoeffOps<Complex> {
  static Complex zero() { return Complex{0.0, 0.0}; }
  static Complex one() { return Complex{1.0, 0.0}; }
  static Complex mul(const Complex& a, const Complex& b) { return a * b; }
  static Complex scale(const Complex& c, const Complex& s) { return c * s; }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static double norm(const Complex& c) { return std::abs(c); }
  static double dist(const Complex& a, const Complex& b) { return std::abs(a - b); }
  static bool negligible(const Complex& c, double eps) { return std::abs(c) < eps; }
};

/// Sparse multivector: blade bitmask -> coefficient, no negligible entries.
template <class C>
class MultivectorT {
 public:
  explicit MultivectorT(SigPtr sig) : sig_(std::move(sig)) {
    if (!sig_) throw DomainError("multivector needs a signature");
  }

  static MultivectorT zero(SigPtr sig) { return MultivectorT(std::move(sig)); }

  static MultivectorT scalar(SigPtr sig, const C& c) {
    MultivectorT r(std::move(sig));
    r.add_term(0, c);
    return r;
  }

  static MultivectorT generator(SigPtr sig, int i) {
    MultivectorT r(std::move(sig));
    r.check_index(i);
    r.add_term(uint32_t{1} << i, CoeffOps<C>::one());
    return r;
  }

  static MultivectorT blade(SigPtr sig, uint32_t mask, const C& c) {
    MultivectorT r(std::move(sig));
    r.check_mask(mask);
    r.add_term(mask, c);
    return r;
  }

  const SigPtr& sig() const { return sig_; }
  const std::map<uint32_t, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coefficient(uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? CoeffOps<C>::zero() : it->second;
  }

  /// Accumulate into one blade, dropping the entry if it lands below the
  /// prune threshold.
  void add_term(uint32_t mask, const C& c) {
    check_mask(mask);
    auto [it, fresh] = terms_.try_emplace(mask, c);
    if (!fresh) it->second += c;
    if (CoeffOps<C>::negligible(it->second, kPruneEps)) terms_.erase(it);
  }

  void check_mask(uint32_t mask) const {
    if ((mask & ~sig_->full_mask()) != 0)
      throw UnknownGenerator("blade mask outside signature");
  }
  void check_index(int i) const {
    if (i < 0 || i >= sig_->size())
      throw UnknownGenerator("generator index " + std::to_string(i) +
                             " outside signature");
  }

 private:
  SigPtr sig_;
  std::map<uint32_t, C> terms_;
};

using Multivector = MultivectorT<Complex>;

template <class C>
void check_same_sig(const MultivectorT<C>& a, const MultivectorT<C>& b) {
  if (a.sig().get() == b.sig().get()) return;
  if (!a.sig()->same_as(*b.sig()))
    throw SignatureMismatch("operands live on different signatures");
}

template <class C>
MultivectorT<C> operator+(const MultivectorT<C>& a, const MultivectorT<C>& b) {
  check_same_sig(a, b);
  MultivectorT<C> r = a;
  for (const auto& [mask, c] : b.terms()) r.add_term(mask, c);
  return r;
}

template <class C>
MultivectorT<C> operator-(const MultivectorT<C>& a) {
  MultivectorT<C> r(a.sig());
  for (const auto& [mask, c] : a.terms()) r.add_term(mask, -c);
  return r;
}

template <class C>
MultivectorT<C> operator-(const MultivectorT<C>& a, const MultivectorT<C>& b) {
  return a + (-b);
}

/// Multiply every coefficient by the complex scalar s.
template <class C>
MultivectorT<C> scaled(const MultivectorT<C>& a, const Complex& s) {
  MultivectorT<C> r(a.sig());
  for (const auto& [mask, c] : a.terms()) r.add_term(mask, CoeffOps<C>::scale(c, s));
  return r;
}

template <class C>
MultivectorT<C> operator*(const Complex& s, const MultivectorT<C>& a) {
  return scaled(a, s);
}

template <class C>
TermList<C> to_term_list(const MultivectorT<C>& a) {
  TermList<C> list;
  list.reserve(a.terms().size());
  for (const auto& [mask, c] : a.terms()) list.emplace_back(mask, c);
  return list;
}

/// Exterior product with an explicit coefficient multiplication, so the
/// phase-space layer can route coefficient products through the Moyal star.
/// Operand order is preserved: mul(left coefficient, right coefficient).
template <class C, class Mul>
MultivectorT<C> wedge_with(const MultivectorT<C>& a, const MultivectorT<C>& b, Mul&& mul,
                           Exec exec = Exec::Auto) {
  check_same_sig(a, b);
  MultivectorT<C> r(a.sig());
  std::map<uint32_t, C> acc;
  wedge_accumulate(to_term_list(a), to_term_list(b), mul, acc, exec);
  for (auto& [mask, c] : acc)
    if (!CoeffOps<C>::negligible(c, kPruneEps)) r.add_term(mask, c);
  return r;
}

template <class C>
MultivectorT<C> wedge(const MultivectorT<C>& a, const MultivectorT<C>& b,
                      Exec exec = Exec::Auto) {
  return wedge_with(a, b, [](const C& x, const C& y) { return CoeffOps<C>::mul(x, y); },
                    exec);
}

/// Derivative from the left: the generator is anticommuted to the front of
/// each blade and removed. Blades without it are annihilated.
template <class C>
MultivectorT<C> left_derivative(const MultivectorT<C>& a, int i) {
  a.check_index(i);
  const uint32_t bit = uint32_t{1} << i;
  MultivectorT<C> r(a.sig());
  for (const auto& [mask, c] : a.terms()) {
    if (!(mask & bit)) continue;
    const int below = std::popcount(mask & (bit - 1));
    r.add_term(mask & ~bit, (below & 1) ? -c : c);
  }
  return r;
}

/// Derivative from the right: the generator is anticommuted to the back.
template <class C>
MultivectorT<C> right_derivative(const MultivectorT<C>& a, int i) {
  a.check_index(i);
  const uint32_t bit = uint32_t{1} << i;
  MultivectorT<C> r(a.sig());
  for (const auto& [mask, c] : a.terms()) {
    if (!(mask & bit)) continue;
    const int above = std::popcount(mask >> (i + 1));
    r.add_term(mask & ~bit, (above & 1) ? -c : c);
  }
  return r;
}

template <class C>
MultivectorT<C> grade_project(const MultivectorT<C>& a, int k) {
  MultivectorT<C> r(a.sig());
  for (const auto& [mask, c] : a.terms())
    if (blade_grade(mask) == k) r.add_term(mask, c);
  return r;
}

/// Grade if every blade has the same one; nullopt for mixed grades. The zero
/// multivector reports grade 0.
template <class C>
std::optional<int> homogeneous_grade(const MultivectorT<C>& a) {
  std::optional<int> g;
  for (const auto& [mask, c] : a.terms()) {
    const int k = blade_grade(mask);
    if (g && *g != k) return std::nullopt;
    g = k;
  }
  return g ? g : std::optional<int>(0);
}

/// Reversion ("bar"): reverse each blade's generator order, which contributes
/// (-1)^(k(k-1)/2) on grade k, and conjugate the coefficient.
template <class C>
MultivectorT<C> reversion(const MultivectorT<C>& a) {
  MultivectorT<C> r(a.sig());
  for (const auto& [mask, c] : a.terms()) {
    const C cc = CoeffOps<C>::conj(c);
    r.add_term(mask, (blade_grade(mask) & 2) ? -cc : cc);
  }
  return r;
}

template <class C>
double max_abs_diff(const MultivectorT<C>& a, const MultivectorT<C>& b) {
  check_same_sig(a, b);
  double worst = 0.0;
  for (const auto& [mask, c] : a.terms())
    worst = std::max(worst, CoeffOps<C>::dist(c, b.coefficient(mask)));
  for (const auto& [mask, c] : b.terms())
    worst = std::max(worst, CoeffOps<C>::dist(a.coefficient(mask), c));
  return worst;
}

template <class C>
bool approx_equal(const MultivectorT<C>& a, const MultivectorT<C>& b,
                  double tol = kDefaultTol) {
  return max_abs_diff(a, b) <= tol;
}

/// Fixed point of reversion within tol.
template <class C>
bool is_real(const MultivectorT<C>& a, double tol = kDefaultTol) {
  return max_abs_diff(a, reversion(a)) <= tol;
}

template <class C>
double max_norm(const MultivectorT<C>& a) {
  double worst = 0.0;
  for (const auto& [mask, c] : a.terms())
    worst = std::max(worst, CoeffOps<C>::norm(c));
  return worst;
}

template <class C>
uint32_t union_mask(const MultivectorT<C>& a) {
  uint32_t u = 0;
  for (const auto& [mask, c] : a.terms()) u |= mask;
  return u;
}

/// Replace generator i of A's signature by images[i] (any multivector on the
/// target signature; grade-1 images give a linear substitution). Each blade
/// maps to the wedge of its generators' images in ascending order.
Multivector substitute(const Multivector& a, const SigPtr& target,
                       const std::vector<Multivector>& images);

/// Copy A onto a signature whose block [offset, offset+n) mirrors A's
/// generators in the same ascending order; the mask shift carries no sign.
Multivector embed_shift(const Multivector& a, const SigPtr& target, int offset);

/// Inverse of embed_shift: every blade must lie inside the block.
Multivector project_shift(const Multivector& a, const SigPtr& base, int offset);

}  // namespace starspin

#endif
