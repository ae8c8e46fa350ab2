#include "nilcover/collect.hpp"

#include <cstdlib>

namespace nilcover {

namespace {

std::size_t first_nonzero_after(const Exponents& a, std::size_t p) {
  for (std::size_t q = p + 1; q < a.size(); ++q)
    if (a[q] != 0) return q;
  return a.size();
}

void require_same_context(const NilElement& a, const NilElement& b) {
  if (a.context() != b.context())
    throw std::invalid_argument("elements belong to different contexts");
}

}  // namespace

NilContextPtr NilContext::create(int rank, int cls) {
  if (rank < 1 || cls < 1)
    throw std::invalid_argument("rank and class must be positive");
  if (rank > kMaxRank)
    throw BoundsError("rank " + std::to_string(rank) + " exceeds the bound " +
                      std::to_string(kMaxRank));
  if (cls > kMaxClass)
    throw BoundsError("class " + std::to_string(cls) + " exceeds the bound " +
                      std::to_string(kMaxClass));
  const Int total = basis_size(rank, cls);
  if (total > static_cast<unsigned long>(kMaxBasisSize))
    throw BoundsError("Hall basis of rank " + std::to_string(rank) +
                      " and class " + std::to_string(cls) + " has " +
                      total.get_str() + " elements, above the bound " +
                      std::to_string(kMaxBasisSize));
  return NilContextPtr(new NilContext(rank, cls));
}

NilContext::NilContext(int rank, int cls)
    : basis_(rank, cls),
      comm_cache_(basis_.size() * basis_.size()),
      conj_cache_(basis_.size() * basis_.size()) {}

NilElement NilContext::identity() const {
  return NilElement(shared_from_this(), Exponents(size()));
}

NilElement NilContext::generator(int g) const {
  if (g < 1 || g > rank())
    throw std::invalid_argument("generator index " + std::to_string(g) +
                                " out of range 1.." + std::to_string(rank()));
  return basis_element(static_cast<std::size_t>(g - 1));
}

NilElement NilContext::basis_element(std::size_t i) const {
  Exponents e(size());
  e.at(i) = 1;
  return NilElement(shared_from_this(), std::move(e));
}

NilElement NilContext::element(Exponents exps) const {
  return NilElement(shared_from_this(), std::move(exps));
}

NilElement NilContext::basis_commutator(std::size_t j, std::size_t i) const {
  if (!(j > i && j < size()))
    throw std::invalid_argument("basis_commutator needs j > i");
  return element(dense(comm(j, i)));
}

Exponents NilContext::dense(const Sparse& s) const {
  Exponents e(size());
  for (const auto& [q, v] : s) e[q] = v;
  return e;
}

NilContext::Sparse NilContext::sparse(const Exponents& a) {
  Sparse s;
  for (std::size_t q = 0; q < a.size(); ++q)
    if (a[q] != 0) s.emplace_back(q, a[q]);
  return s;
}

const NilContext::Sparse& NilContext::comm(std::size_t j, std::size_t i) const {
  auto& slot = comm_cache_[j * size() + i];
  {
    std::lock_guard lock(cache_mutex_);
    if (slot) return *slot;
  }
  Sparse value = compute_comm(j, i);
  std::lock_guard lock(cache_mutex_);
  if (!slot) slot = std::move(value);
  return *slot;
}

const NilContext::ConjugationPolynomial& NilContext::conj_poly(
    std::size_t q, std::size_t p) const {
  auto& slot = conj_cache_[q * size() + p];
  {
    std::lock_guard lock(cache_mutex_);
    if (slot) return *slot;
  }
  ConjugationPolynomial value = compute_conj_poly(q, p);
  std::lock_guard lock(cache_mutex_);
  if (!slot) slot = std::move(value);
  return *slot;
}

bool NilContext::letter_commutes(std::size_t q, std::size_t p) const {
  return basis_.weight(q) + basis_.weight(p) > cls();
}

NilContext::Sparse NilContext::compute_comm(std::size_t j,
                                            std::size_t i) const {
  if (letter_commutes(j, i)) return {};
  if (auto idx = basis_.find_pair(j, i)) return {{*idx, Int(1)}};

  // b_j = [u, v] with v > b_i, otherwise [b_j, b_i] would be basic.
  const auto& bj = basis_[j];
  const Exponents u_conj = letter_image(bj.left, i);
  const Exponents v_conj = letter_image(bj.right, i);
  Exponents result(size());
  result[j] = -1;
  result = multiply(result, commutator(u_conj, v_conj));
  return sparse(result);
}

NilContext::ConjugationPolynomial NilContext::compute_conj_poly(
    std::size_t q, std::size_t p) const {
  ConjugationPolynomial poly;
  poly.deg_g = cls() / basis_.weight(q);
  poly.deg_e = cls() / basis_.weight(p);
  const int rows = poly.deg_g + 1, cols = poly.deg_e + 1;

  std::vector<Exponents> images(size());
  for (std::size_t s = q; s < size(); ++s)
    if (!letter_commutes(s, p)) images[s] = letter_image(s, p);

  // grid[a * cols + t] = b_p^-t b_q^a b_p^t
  std::vector<Exponents> grid(static_cast<std::size_t>(rows * cols));
  for (int a = 0; a < rows; ++a) {
    Exponents x(size());
    x[q] = a;
    for (int t = 0; t < cols; ++t) {
      if (t > 0) x = apply_images(x, p, images);
      grid[a * cols + t] = x;
    }
  }

  // Forward differences in both directions give the coefficients in the
  // binomial basis; they are integers because the grid values are.
  for (std::size_t r = q; r < size(); ++r) {
    std::vector<Int> c(static_cast<std::size_t>(rows * cols));
    bool nonzero = false;
    for (int i = 0; i < rows * cols; ++i) c[i] = grid[i][r];
    for (int a = 0; a < rows; ++a)
      for (int level = 1; level < cols; ++level)
        for (int t = cols - 1; t >= level; --t)
          c[a * cols + t] -= c[a * cols + t - 1];
    for (int t = 0; t < cols; ++t)
      for (int level = 1; level < rows; ++level)
        for (int a = rows - 1; a >= level; --a)
          c[a * cols + t] -= c[(a - 1) * cols + t];
    for (const Int& v : c) nonzero = nonzero || v != 0;
    if (nonzero) poly.coords.emplace_back(r, std::move(c));
  }
  return poly;
}

Exponents NilContext::letter_image(std::size_t q, std::size_t p) const {
  Exponents e = dense(comm(q, p));
  e[q] = 1;
  return e;
}

Exponents NilContext::apply_images(const Exponents& g, std::size_t p,
                                   const std::vector<Exponents>& images) const {
  Exponents result(size());
  for (std::size_t q = p + 1; q < size(); ++q) {
    if (g[q] == 0) continue;
    if (images[q].empty()) {
      multiply_letter(result, q, g[q]);
    } else {
      result = multiply(result, power(images[q], g[q]));
    }
  }
  return result;
}

Exponents NilContext::conjugate(const Exponents& g, std::size_t p,
                                const Int& e) const {
  Exponents result(size());
  std::vector<Int> bin_g, bin_e;
  Exponents image(size());
  for (std::size_t q = p + 1; q < size(); ++q) {
    if (g[q] == 0) continue;
    if (letter_commutes(q, p)) {
      multiply_letter(result, q, g[q]);
      continue;
    }
    const ConjugationPolynomial& poly = conj_poly(q, p);
    bin_g.resize(poly.deg_g + 1);
    bin_e.resize(poly.deg_e + 1);
    for (int a = 0; a <= poly.deg_g; ++a)
      mpz_bin_ui(bin_g[a].get_mpz_t(), g[q].get_mpz_t(), a);
    for (int t = 0; t <= poly.deg_e; ++t)
      mpz_bin_ui(bin_e[t].get_mpz_t(), e.get_mpz_t(), t);
    const int cols = poly.deg_e + 1;
    for (auto& v : image) v = 0;
    Int term;
    for (const auto& [r, c] : poly.coords) {
      Int& v = image[r];
      for (int a = 0; a <= poly.deg_g; ++a) {
        if (bin_g[a] == 0) continue;
        Int row = 0;
        for (int t = 0; t < cols; ++t)
          if (c[a * cols + t] != 0) row += c[a * cols + t] * bin_e[t];
        v += row * bin_g[a];
      }
    }
    result = multiply(result, image);
  }
  return result;
}

void NilContext::multiply_letter(Exponents& a, std::size_t p,
                                 const Int& e) const {
  if (e == 0) return;
  const std::size_t first = first_nonzero_after(a, p);
  // Letters after p either all commute with b_p (weights are sorted) or the
  // tail must be conjugated past b_p^e.
  if (first == a.size() || letter_commutes(first, p)) {
    a[p] += e;
    return;
  }
  Exponents tail(size());
  for (std::size_t q = first; q < size(); ++q) std::swap(tail[q], a[q]);
  a[p] += e;
  tail = conjugate(tail, p, e);
  for (std::size_t q = p + 1; q < size(); ++q) a[q] = std::move(tail[q]);
}

Exponents NilContext::multiply(const Exponents& a, const Exponents& b) const {
  Exponents r = a;
  for (std::size_t q = 0; q < size(); ++q)
    if (b[q] != 0) multiply_letter(r, q, b[q]);
  return r;
}

Exponents NilContext::inverse(const Exponents& a) const {
  Exponents r(size());
  for (std::size_t q = size(); q-- > 0;)
    if (a[q] != 0) multiply_letter(r, q, -a[q]);
  return r;
}

Exponents NilContext::power(const Exponents& a, Int n) const {
  Exponents base = n < 0 ? inverse(a) : a;
  if (n < 0) n = -n;
  Exponents result(size());
  while (n != 0) {
    if (mpz_odd_p(n.get_mpz_t())) result = multiply(result, base);
    n >>= 1;
    if (n != 0) base = multiply(base, base);
  }
  return result;
}

Exponents NilContext::commutator(const Exponents& a,
                                 const Exponents& b) const {
  return multiply(inverse(multiply(b, a)), multiply(a, b));
}

NilElement::NilElement(NilContextPtr ctx, Exponents exps)
    : ctx_(std::move(ctx)), exps_(std::move(exps)) {
  if (!ctx_) throw std::invalid_argument("NilElement needs a context");
  if (exps_.size() != ctx_->size())
    throw std::invalid_argument("exponent vector length does not match basis");
}

bool NilElement::is_identity() const { return !leading_index().has_value(); }

std::optional<std::size_t> NilElement::leading_index() const {
  for (std::size_t q = 0; q < exps_.size(); ++q)
    if (exps_[q] != 0) return q;
  return std::nullopt;
}

NilElement normal_form(const Word& w, const NilContextPtr& ctx) {
  Exponents r(ctx->size());
  for (const auto& letter : w) {
    if (letter.generator < 1 || letter.generator > ctx->rank())
      throw std::invalid_argument("generator index " +
                                  std::to_string(letter.generator) +
                                  " out of range 1.." +
                                  std::to_string(ctx->rank()));
    ctx->multiply_letter(r, static_cast<std::size_t>(letter.generator - 1),
                         letter.exponent);
  }
  return NilElement(ctx, std::move(r));
}

NilElement multiply(const NilElement& a, const NilElement& b) {
  require_same_context(a, b);
  return NilElement(a.context(),
                    a.context()->multiply(a.exponents(), b.exponents()));
}

NilElement inverse(const NilElement& a) {
  return NilElement(a.context(), a.context()->inverse(a.exponents()));
}

NilElement power(const NilElement& a, const Int& n) {
  return NilElement(a.context(), a.context()->power(a.exponents(), n));
}

NilElement commutator(const NilElement& a, const NilElement& b) {
  require_same_context(a, b);
  return NilElement(a.context(),
                    a.context()->commutator(a.exponents(), b.exponents()));
}

NilElement iterated_commutator(const NilElement& a,
                               std::span<const NilElement> ys) {
  NilElement r = a;
  for (const auto& y : ys) r = commutator(r, y);
  return r;
}

int leading_weight(const NilElement& a) {
  auto idx = a.leading_index();
  if (!idx) return kInfiniteWeight;
  return a.context()->basis().weight(*idx);
}

namespace {

Word invert_word(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.push_back({it->generator, -it->exponent});
  return r;
}

void append(Word& dst, const Word& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

Word expand_basis_element(const HallBasis& basis, std::size_t i) {
  const auto& b = basis[i];
  if (b.is_generator()) return {{b.generator + 1, Int(1)}};
  const Word u = expand_basis_element(basis, b.left);
  const Word v = expand_basis_element(basis, b.right);
  Word w = invert_word(u);
  append(w, invert_word(v));
  append(w, u);
  append(w, v);
  return w;
}

Word render(const NilElement& a) {
  const auto& basis = a.context()->basis();
  Word w;
  for (std::size_t q = 0; q < a.size(); ++q) {
    const Int& e = a[q];
    if (e == 0) continue;
    if (basis[q].is_generator()) {
      w.push_back({basis[q].generator + 1, e});
      continue;
    }
    const Word b = expand_basis_element(basis, q);
    const Word piece = e > 0 ? b : invert_word(b);
    for (Int k = abs(e); k > 0; --k) append(w, piece);
  }
  return w;
}

NilElement truncate(const NilElement& a, const NilContextPtr& target) {
  const auto& src = a.context();
  if (target->rank() != src->rank() || target->cls() > src->cls())
    throw std::invalid_argument(
        "truncate needs the same rank and a class not above the source");
  Exponents e(a.exponents().begin(),
              a.exponents().begin() +
                  static_cast<std::ptrdiff_t>(target->size()));
  return NilElement(target, std::move(e));
}

}  // namespace nilcover
