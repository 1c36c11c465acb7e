#include <numeric>

#include "eqloc/errors.hpp"
#include "eqloc/grass.hpp"
#include "eqloc/symfunc.hpp"

namespace eqloc {

// Res_{z=inf} z^k / prod_i (t_i - z) = -(-1)^n h_{k-n+1}(t), so each residue
// is a contraction of the z-expansion against complete symmetric functions.
MultiPoly residue_integral(const MultiPoly& W, std::size_t m, std::size_t n) {
  if (m == 0 || m >= n) throw InvalidArgument("residue: need 0 < m < n");
  if (W.nvars() != m) throw ArityMismatch("template must have m variables");
  std::vector<std::size_t> slots(m);
  std::iota(slots.begin(), slots.end(), 0);
  require_symmetric(W, slots);

  const std::size_t N = n + m;
  std::vector<std::size_t> zvars(m), tvars(n);
  std::iota(zvars.begin(), zvars.end(), n);
  std::iota(tvars.begin(), tvars.end(), 0);

  MultiPoly A = rename_variables(W, zvars, N);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) A = mul_linear(A, LinearForm::difference(N, n + i, n + j));

  const int outer_sign = n % 2 == 0 ? -1 : 1;
  for (std::size_t jj = m; jj-- > 0;) {
    const std::size_t z = n + jj;
    std::vector<std::vector<MultiPoly::Term>> slices;
    for (const auto& t : A.terms()) {
      const unsigned k = t.mono.exponent(z);
      if (slices.size() <= k) slices.resize(k + 1);
      slices[k].push_back({t.mono.with_exponent(z, 0), t.coef});
    }
    MultiPoly next(N);
    for (std::size_t k = n - 1; k < slices.size(); ++k) {
      if (slices[k].empty()) continue;
      const MultiPoly coeff = MultiPoly::from_terms(N, std::move(slices[k]));
      next += coeff * schur(Partition{static_cast<unsigned>(k - n + 1)}, tvars, N);
    }
    A = outer_sign > 0 ? next : -next;
  }

  std::vector<std::size_t> targets(N, 0);
  std::iota(targets.begin(), targets.begin() + static_cast<long>(n), 0);
  MultiPoly result = rename_variables(A, targets, n);
  result *= Rational(1, 1) / Rational(factorial(static_cast<unsigned>(m)));
  return result;
}

}  // namespace eqloc
