#include "ssnmf/divergence.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace ssnmf {

std::string ModelVariant::code() const {
  std::string c;
  c += reconstruction == ErrorKind::frobenius ? 'F' : 'D';
  c += supervision == ErrorKind::frobenius ? 'F' : 'D';
  return c;
}

std::string ModelVariant::name() const {
  auto part = [](ErrorKind k) { return k == ErrorKind::frobenius ? "Fro" : "Div"; };
  return std::string("(") + part(reconstruction) + ", " + part(supervision) + ")";
}

int ModelVariant::objective_index() const noexcept {
  return 1 + (reconstruction == ErrorKind::divergence ? 2 : 0) +
         (supervision == ErrorKind::divergence ? 1 : 0);
}

std::optional<ModelVariant> ModelVariant::parse(std::string_view text) {
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '4')
    return kAllVariants[static_cast<std::size_t>(text[0] - '1')];
  if (text.size() != 2) return std::nullopt;
  auto kind = [](char c) -> std::optional<ErrorKind> {
    switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'F': return ErrorKind::frobenius;
    case 'D': return ErrorKind::divergence;
    default: return std::nullopt;
    }
  };
  auto r = kind(text[0]);
  auto s = kind(text[1]);
  if (!r || !s) return std::nullopt;
  return ModelVariant{*r, *s};
}

double frobenius_sq(const DenseMatrix& x, const DenseMatrix& z, const DenseMatrix& mask) {
  require_same_shape(x, z, "frobenius_sq");
  require_same_shape(x, mask, "frobenius_sq (mask)");
  auto xv = x.values();
  auto zv = z.values();
  auto mv = mask.values();
  double total = 0.0;
  for (std::size_t i = 0; i < xv.size(); ++i) {
    const double d = mv[i] * (xv[i] - zv[i]);
    total += d * d;
  }
  return total;
}

double i_divergence(const DenseMatrix& x, const DenseMatrix& z, const DenseMatrix& mask,
                    double eps) {
  require_same_shape(x, z, "i_divergence");
  require_same_shape(x, mask, "i_divergence (mask)");
  auto xv = x.values();
  auto zv = z.values();
  auto mv = mask.values();
  double total = 0.0;
  for (std::size_t i = 0; i < xv.size(); ++i) {
    const double a = mv[i] * xv[i];
    const double b = mv[i] * zv[i];
    if (a == 0.0) {
      total += b;
    } else if (b + eps == 0.0) {
      return std::numeric_limits<double>::infinity();
    } else {
      total += a * std::log(a / (b + eps)) - a + b;
    }
  }
  return total;
}

double error_term(ErrorKind kind, const DenseMatrix& x, const DenseMatrix& z,
                  const DenseMatrix& mask, double eps) {
  return kind == ErrorKind::frobenius ? frobenius_sq(x, z, mask)
                                      : i_divergence(x, z, mask, eps);
}

ObjectiveTerms objective_terms(const ObjectiveSpec& spec, const DenseMatrix& a,
                               const DenseMatrix& b, const DenseMatrix& s,
                               const DenseMatrix& x, const DenseMatrix& y,
                               const DenseMatrix& w, const DenseMatrix& l) {
  if (spec.lambda < 0.0) throw ConfigError("objective: lambda must be nonnegative");
  if (spec.log_eps < 0.0) throw ConfigError("objective: log_eps must be nonnegative");
  if (a.cols() != s.rows() || b.cols() != s.rows()) {
    throw DimensionError("objective: factor ranks differ (A " + shape_string(a) +
                         ", B " + shape_string(b) + ", S " + shape_string(s) + ")");
  }
  ObjectiveTerms terms;
  terms.lambda = spec.lambda;
  terms.reconstruction = error_term(spec.variant.reconstruction, x, matmul(a, s), w,
                                    spec.log_eps);
  terms.supervision = error_term(spec.variant.supervision, y, matmul(b, s), l, spec.log_eps);
  return terms;
}

double objective(const ObjectiveSpec& spec, const DenseMatrix& a, const DenseMatrix& b,
                 const DenseMatrix& s, const DenseMatrix& x, const DenseMatrix& y,
                 const DenseMatrix& w, const DenseMatrix& l) {
  return objective_terms(spec, a, b, s, x, y, w, l).total();
}

} // namespace ssnmf
