#include "ssnmf/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ssnmf/fpenv.hpp"
#include "ssnmf/rng.hpp"

namespace ssnmf {

namespace {

void require_nonnegative(const DenseMatrix& m, const char* name) {
  if (!is_nonnegative(m))
    throw ConfigError(std::string(name) + " has negative or NaN entries");
}

// Weight of each term in the S update: the Frobenius gradient carries a
// factor 2 that the divergence gradient does not.
double term_weight(ErrorKind kind) { return kind == ErrorKind::frobenius ? 2.0 : 1.0; }

// Holds the constant masked data and all scratch buffers so a sweep does not
// allocate.
class MuSweep {
public:
  MuSweep(ModelVariant variant, const SsnmfData& data, std::size_t rank, double lambda,
          double eps)
      : variant_(variant), data_(data), lambda_(lambda), eps_(eps),
        wx_(hadamard(data.w, data.x)), ly_(hadamard(data.l, data.y)),
        n1n2_(data.x.rows(), data.x.cols()), kn2_(data.y.rows(), data.y.cols()),
        num_n1r_(data.x.rows(), rank), den_n1r_(data.x.rows(), rank),
        num_kr_(data.y.rows(), rank), den_kr_(data.y.rows(), rank),
        num_rn2_(rank, data.x.cols()), den_rn2_(rank, data.x.cols()),
        sup_num_(rank, data.x.cols()), sup_den_(rank, data.x.cols()) {
    if (variant_.reconstruction == ErrorKind::frobenius &&
        variant_.supervision == ErrorKind::frobenius) {
      coef_r_ = coef_s_ = 1.0;
    } else {
      coef_r_ = term_weight(variant_.reconstruction);
      coef_s_ = term_weight(variant_.supervision);
    }
  }

  void sweep(FactorState& st) {
    update_dictionary(variant_.reconstruction, st.a, st.s, data_.w, wx_, n1n2_, num_n1r_,
                      den_n1r_);
    update_dictionary(variant_.supervision, st.b, st.s, data_.l, ly_, kn2_, num_kr_,
                      den_kr_);
    update_representation(st);
  }

  double objective(const FactorState& st) {
    kernels::matmul(st.a, st.s, n1n2_);
    const double rec = error_term(variant_.reconstruction, data_.x, n1n2_, data_.w);
    if (lambda_ == 0.0) return rec;
    kernels::matmul(st.b, st.s, kn2_);
    return rec + lambda_ * error_term(variant_.supervision, data_.y, kn2_, data_.l);
  }

private:
  // After this call `z` holds the S-side numerator matrix of the term:
  // Frobenius: mask⊙(dict·S); divergence: (mask⊙data)/(mask⊙dict·S) ⊙ mask.
  void masked_ratio(ErrorKind kind, const DenseMatrix& dict, const DenseMatrix& s,
                    const DenseMatrix& mask, const DenseMatrix& masked_data,
                    DenseMatrix& z) const {
    kernels::matmul(dict, s, z);
    auto zv = z.values();
    auto mv = mask.values();
    auto dv = masked_data.values();
    if (kind == ErrorKind::frobenius) {
      for (std::size_t i = 0; i < zv.size(); ++i) zv[i] *= mv[i];
    } else {
      for (std::size_t i = 0; i < zv.size(); ++i)
        zv[i] = dv[i] / (mv[i] * zv[i] + eps_) * mv[i];
    }
  }

  // Updates A against (X, W) or B against (Y, L).
  void update_dictionary(ErrorKind kind, DenseMatrix& dict, const DenseMatrix& s,
                         const DenseMatrix& mask, const DenseMatrix& masked_data,
                         DenseMatrix& z, DenseMatrix& num, DenseMatrix& den) {
    masked_ratio(kind, dict, s, mask, masked_data, z);
    if (kind == ErrorKind::frobenius) {
      // dict ⊙ (M⊙D)Sᵀ / (M⊙dict·S)Sᵀ
      kernels::matmul_nt(masked_data, s, num);
      kernels::matmul_nt(z, s, den);
    } else {
      // dict / (M Sᵀ) ⊙ [(M⊙D)/(M⊙dict·S) ⊙ M] Sᵀ
      kernels::matmul_nt(z, s, num);
      kernels::matmul_nt(mask, s, den);
    }
    apply_ratio(dict, num, den);
  }

  void update_representation(FactorState& st) {
    representation_terms(variant_.reconstruction, st.a, st.s, data_.w, wx_, n1n2_,
                         num_rn2_, den_rn2_);
    if (lambda_ != 0.0) {
      representation_terms(variant_.supervision, st.b, st.s, data_.l, ly_, kn2_,
                           sup_num_, sup_den_);
      auto n = num_rn2_.values();
      auto d = den_rn2_.values();
      auto sn = sup_num_.values();
      auto sd = sup_den_.values();
      const double wr = coef_r_;
      const double ws = lambda_ * coef_s_;
      for (std::size_t i = 0; i < n.size(); ++i) {
        n[i] = wr * n[i] + ws * sn[i];
        d[i] = wr * d[i] + ws * sd[i];
      }
    }
    apply_ratio(st.s, num_rn2_, den_rn2_);
  }

  // Numerator and denominator contributions of one term to the S update.
  void representation_terms(ErrorKind kind, const DenseMatrix& dict, const DenseMatrix& s,
                            const DenseMatrix& mask, const DenseMatrix& masked_data,
                            DenseMatrix& z, DenseMatrix& num, DenseMatrix& den) const {
    masked_ratio(kind, dict, s, mask, masked_data, z);
    if (kind == ErrorKind::frobenius) {
      kernels::matmul_tn(dict, masked_data, num);
      kernels::matmul_tn(dict, z, den);
    } else {
      kernels::matmul_tn(dict, z, num);
      kernels::matmul_tn(dict, mask, den);
    }
  }

  void apply_ratio(DenseMatrix& factor, const DenseMatrix& num, const DenseMatrix& den) const {
    auto f = factor.values();
    auto n = num.values();
    auto d = den.values();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= detail::mu_ratio(n[i], d[i], eps_);
  }

  ModelVariant variant_;
  const SsnmfData& data_;
  double lambda_;
  double eps_;
  double coef_r_ = 1.0;
  double coef_s_ = 1.0;
  DenseMatrix wx_, ly_;
  DenseMatrix n1n2_, kn2_;
  DenseMatrix num_n1r_, den_n1r_, num_kr_, den_kr_;
  DenseMatrix num_rn2_, den_rn2_, sup_num_, sup_den_;
};

void validate_state(const FactorState& st, const Shape& shape) {
  auto expect = [](const DenseMatrix& m, std::size_t r, std::size_t c, const char* name) {
    if (m.rows() != r || m.cols() != c) {
      throw DimensionError(std::string("factor ") + name + " is " + shape_string(m) +
                           ", expected " + std::to_string(r) + "x" + std::to_string(c));
    }
  };
  expect(st.a, shape.n1, shape.r, "A");
  expect(st.b, shape.k, shape.r, "B");
  expect(st.s, shape.r, shape.n2, "S");
  require_nonnegative(st.a, "factor A");
  require_nonnegative(st.b, "factor B");
  require_nonnegative(st.s, "factor S");
}

void check_lambda_eps(double lambda, double eps) {
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
}

std::size_t state_rank(const FactorState& st) { return st.s.rows(); }

} // namespace

void Shape::validate() const {
  if (n1 == 0 || n2 == 0 || k == 0 || r == 0)
    throw ConfigError("shape dimensions n1, n2, k, r must all be at least 1");
}

void SsnmfConfig::validate() const {
  if (rank == 0) throw ConfigError("rank must be at least 1");
  if (max_iters == 0) throw ConfigError("max_iters must be at least 1");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  if (!(tol >= 0.0)) throw ConfigError("tol must be nonnegative");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
}

void SsnmfData::validate() const {
  require_same_shape(x, w, "data X vs mask W");
  require_same_shape(y, l, "labels Y vs mask L");
  if (x.cols() != y.cols()) {
    throw DimensionError("X has " + std::to_string(x.cols()) + " samples but Y has " +
                         std::to_string(y.cols()));
  }
  require_nonnegative(x, "X");
  require_nonnegative(y, "Y");
  require_nonnegative(w, "W");
  require_nonnegative(l, "L");
}

Shape SsnmfData::shape(std::size_t rank) const {
  return Shape{x.rows(), x.cols(), y.rows(), rank};
}

FactorState initialize(const Shape& shape, std::uint64_t seed) {
  shape.validate();
  Engine engine = make_engine(seed, "init");
  FactorState st{DenseMatrix(shape.n1, shape.r), DenseMatrix(shape.k, shape.r),
                 DenseMatrix(shape.r, shape.n2)};
  for (DenseMatrix* m : {&st.a, &st.b, &st.s})
    for (double& v : m->values()) v = uniform(engine, 0.01, 1.01);
  return st;
}

FactorState mu_step(ModelVariant variant, FactorState state, const SsnmfData& data,
                    double lambda, double eps) {
  data.validate();
  check_lambda_eps(lambda, eps);
  validate_state(state, data.shape(state_rank(state)));
  FlushSubnormalsScope ftz;
  MuSweep sweep(variant, data, state_rank(state), lambda, eps);
  sweep.sweep(state);
  return state;
}

double relative_error(const std::vector<double>& trace) {
  if (trace.empty() || trace.front() == 0.0) return 0.0;
  return trace.back() / trace.front();
}

FitResult fit(ModelVariant variant, const SsnmfData& data, const SsnmfConfig& config,
              std::optional<FactorState> init) {
  config.validate();
  data.validate();
  const Shape shape = data.shape(config.rank);
  FitResult result;
  result.state = init ? std::move(*init) : initialize(shape, config.seed);
  validate_state(result.state, shape);

  FlushSubnormalsScope ftz;
  MuSweep sweep(variant, data, config.rank, config.lambda, config.eps);
  const double initial = sweep.objective(result.state);
  if (!std::isfinite(initial)) {
    std::ostringstream msg;
    msg << variant.name() << " objective is " << initial
        << " at initialization; a divergence term has a positive data entry where "
           "the masked initial product is zero";
    throw FitError(msg.str());
  }
  result.objective_trace.push_back(initial);

  const bool per_step = config.record_trace || config.tol > 0.0;
  for (std::size_t it = 0; it < config.max_iters; ++it) {
    sweep.sweep(result.state);
    ++result.iterations_run;
    if (!per_step) continue;
    result.objective_trace.push_back(sweep.objective(result.state));
    if (config.tol > 0.0 && relative_error(result.objective_trace) < config.tol) break;
  }
  if (!per_step) result.objective_trace.push_back(sweep.objective(result.state));
  result.relative_error = relative_error(result.objective_trace);
  return result;
}

Gradients gradient(ModelVariant variant, const FactorState& state, const SsnmfData& data,
                   double lambda, double eps) {
  data.validate();
  check_lambda_eps(lambda, eps);
  validate_state(state, data.shape(state_rank(state)));

  // Derivative of a term with respect to the product Z it compares against.
  auto d_dz = [eps](ErrorKind kind, const DenseMatrix& target, const DenseMatrix& z,
                    const DenseMatrix& mask) {
    DenseMatrix g(z.rows(), z.cols());
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double m = mask.values()[i];
      const double t = target.values()[i];
      const double p = z.values()[i];
      g.values()[i] = kind == ErrorKind::frobenius
                          ? -2.0 * m * m * (t - p)
                          : m - (m * t) / (m * p + eps) * m;
    }
    return g;
  };

  const DenseMatrix g_rec =
      d_dz(variant.reconstruction, data.x, matmul(state.a, state.s), data.w);
  DenseMatrix g_sup = d_dz(variant.supervision, data.y, matmul(state.b, state.s), data.l);
  for (double& v : g_sup.values()) v *= lambda;

  Gradients g;
  g.a = matmul_nt(g_rec, state.s);
  g.b = matmul_nt(g_sup, state.s);
  g.s = matmul_tn(state.a, g_rec);
  const DenseMatrix sup_s = matmul_tn(state.b, g_sup);
  for (std::size_t i = 0; i < g.s.size(); ++i) g.s.values()[i] += sup_s.values()[i];
  return g;
}

Gradients step_sizes(ModelVariant variant, const FactorState& state, const SsnmfData& data,
                     double lambda) {
  data.validate();
  validate_state(state, data.shape(state_rank(state)));

  // Denominator of a dictionary update, scaled by the term's gradient weight.
  auto dict_den = [](ErrorKind kind, const DenseMatrix& dict, const DenseMatrix& s,
                     const DenseMatrix& mask, double weight) {
    DenseMatrix den = kind == ErrorKind::frobenius
                          ? matmul_nt(hadamard(mask, matmul(dict, s)), s)
                          : matmul_nt(mask, s);
    const double w = weight * term_weight(kind);
    for (double& v : den.values()) v *= w;
    return den;
  };
  auto rep_den = [](ErrorKind kind, const DenseMatrix& dict, const DenseMatrix& s,
                    const DenseMatrix& mask) {
    return kind == ErrorKind::frobenius ? matmul_tn(dict, hadamard(mask, matmul(dict, s)))
                                        : matmul_tn(dict, mask);
  };
  auto divide = [](const DenseMatrix& f, const DenseMatrix& den) {
    DenseMatrix out(f.rows(), f.cols());
    for (std::size_t i = 0; i < f.size(); ++i) out.values()[i] = f.values()[i] / den.values()[i];
    return out;
  };

  Gradients gamma;
  gamma.a = divide(state.a, dict_den(variant.reconstruction, state.a, state.s, data.w, 1.0));
  gamma.b = divide(state.b, dict_den(variant.supervision, state.b, state.s, data.l, lambda));

  DenseMatrix den = rep_den(variant.reconstruction, state.a, state.s, data.w);
  const DenseMatrix sup = rep_den(variant.supervision, state.b, state.s, data.l);
  const double wr = term_weight(variant.reconstruction);
  const double ws = lambda * term_weight(variant.supervision);
  for (std::size_t i = 0; i < den.size(); ++i)
    den.values()[i] = wr * den.values()[i] + ws * sup.values()[i];
  gamma.s = divide(state.s, den);
  return gamma;
}

} // namespace ssnmf
