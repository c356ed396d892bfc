#include "starspin/algebra.hpp"

namespace starspin {

Multivector substitute(const Multivector& a, const SigPtr& target,
                       const std::vector<Multivector>& images) {
  if (static_cast<int>(images.size()) != a.sig()->size())
    throw DomainError("substitute needs one image per generator");
  for (const auto& img : images)
    if (!img.sig()->same_as(*target))
      throw SignatureMismatch("substitution image on wrong signature");

  Multivector r(target);
  for (const auto& [mask, c] : a.terms()) {
    Multivector piece = Multivector::scalar(target, 1.0);
    for (uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      piece = wedge(piece, images[i]);
      if (piece.is_zero()) break;
    }
    r = r + scaled(piece, c);
  }
  return r;
}

Multivector embed_shift(const Multivector& a, const SigPtr& target, int offset) {
  const int n = a.sig()->size();
  if (offset < 0 || offset + n > target->size())
    throw DomainError("embed block outside target signature");
  Multivector r(target);
  for (const auto& [mask, c] : a.terms()) r.add_term(mask << offset, c);
  return r;
}

Multivector project_shift(const Multivector& a, const SigPtr& base, int offset) {
  const int n = base->size();
  const uint32_t block = (n == 32 ? ~uint32_t{0} : (uint32_t{1} << n) - 1) << offset;
  Multivector r(base);
  for (const auto& [mask, c] : a.terms()) {
    if ((mask & ~block) != 0)
      throw DomainError("blade reaches outside the projected block");
    r.add_term(mask >> offset, c);
  }
  return r;
}

}  // namespace starspin
