#include "eqloc/linear_form.hpp"

#include <numeric>

#include "eqloc/errors.hpp"
#include "eqloc/poly.hpp"

namespace eqloc {

LinearForm::LinearForm(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  bool nonzero = false;
  for (auto c : coeffs_) nonzero = nonzero || c != 0;
  if (!nonzero) throw InvalidArgument("linear form must be nonzero");
  if (coeffs_.size() > kMaxVars) throw InvalidArgument("linear form has too many variables");
}

LinearForm LinearForm::difference(std::size_t nvars, std::size_t plus, std::size_t minus) {
  if (plus >= nvars || minus >= nvars || plus == minus) {
    throw InvalidArgument("bad variable indices for a difference form");
  }
  std::vector<std::int64_t> c(nvars, 0);
  c[plus] = 1;
  c[minus] = -1;
  return LinearForm(std::move(c));
}

LinearForm LinearForm::variable(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw InvalidArgument("variable index out of range");
  std::vector<std::int64_t> c(nvars, 0);
  c[var] = 1;
  return LinearForm(std::move(c));
}

std::size_t LinearForm::leading_variable() const {
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] != 0) return i;
  }
  throw InvalidArgument("empty linear form");
}

bool LinearForm::is_normalized() const {
  for (auto c : coeffs_) {
    if (c != 0) return c > 0;
  }
  return false;
}

std::pair<int, LinearForm> LinearForm::normalized() const {
  if (is_normalized()) return {1, *this};
  return {-1, -*this};
}

LinearForm LinearForm::operator-() const {
  std::vector<std::int64_t> c(coeffs_);
  for (auto& x : c) x = -x;
  return LinearForm(std::move(c));
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
  if (o.nvars() != nvars()) throw ArityMismatch("linear forms over different rings");
  std::vector<std::int64_t> c(coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return LinearForm(std::move(c));
}

LinearForm LinearForm::operator-(const LinearForm& o) const { return *this + (-o); }

MultiPoly LinearForm::to_poly() const {
  std::vector<MultiPoly::Term> terms;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) {
      terms.push_back({Monomial::variable(i), Rational(static_cast<long>(coeffs_[i]))});
    }
  }
  return MultiPoly::from_terms(nvars(), std::move(terms));
}

std::int64_t LinearForm::coefficient_sum() const {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), std::int64_t{0});
}

}  // namespace eqloc
