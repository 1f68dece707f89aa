#include "twistor/harmonic.hpp"

#include <algorithm>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "twistor/errors.hpp"
#include "twistor/numerics.hpp"

namespace twistor {

using boost::multiprecision::cpp_rational;

std::vector<HarmonicMonomial> monomials_of(int degree, int charge) {
  std::vector<HarmonicMonomial> out;
  if (degree < 0 || (degree + charge) % 2 != 0 || std::abs(charge) > degree) return out;
  const int plus = (degree + charge) / 2;
  const int minus = (degree - charge) / 2;
  for (int p1 = 0; p1 <= plus; ++p1)
    for (int q1 = 0; q1 <= minus; ++q1) out.push_back(HarmonicMonomial::of(p1, plus - p1, q1, minus - q1));
  return out;
}

HarmonicPolynomial::HarmonicPolynomial(int rank) : rank_(rank) {
  if (rank < 1) throw std::invalid_argument("HarmonicPolynomial: rank must be positive");
}

HarmonicPolynomial HarmonicPolynomial::constant(const Matrix& c) {
  if (c.rows() != c.cols()) throw std::invalid_argument("HarmonicPolynomial: coefficient must be square");
  HarmonicPolynomial p(static_cast<int>(c.rows()));
  p.add(HarmonicMonomial{}, c);
  return p;
}

HarmonicPolynomial HarmonicPolynomial::identity(int rank, cdouble value) {
  return constant(Matrix::Identity(rank, rank) * value);
}

HarmonicPolynomial HarmonicPolynomial::monomial(const HarmonicMonomial& m, const Matrix& c) {
  HarmonicPolynomial p(static_cast<int>(c.rows()));
  p.add(m, c);
  return p;
}

HarmonicPolynomial HarmonicPolynomial::monomial(const HarmonicMonomial& m, cdouble c, int rank) {
  return monomial(m, Matrix::Identity(rank, rank) * c);
}

HarmonicPolynomial HarmonicPolynomial::generator(int index, int rank) {
  if (index < 0 || index > 3) throw std::out_of_range("HarmonicPolynomial::generator");
  HarmonicMonomial m;
  m.powers[static_cast<std::size_t>(index)] = 1;
  return monomial(m, 1.0, rank);
}

void HarmonicPolynomial::add(const HarmonicMonomial& m, const Matrix& c) {
  if (c.rows() != rank_ || c.cols() != rank_) throw std::invalid_argument("HarmonicPolynomial: rank mismatch");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.isZero(0.0)) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.isZero(0.0)) terms_.erase(it);
}

std::optional<int> HarmonicPolynomial::charge() const {
  if (terms_.empty()) return std::nullopt;
  const int q = terms_.begin()->first.charge();
  for (const auto& [m, c] : terms_)
    if (m.charge() != q) return std::nullopt;
  return q;
}

bool HarmonicPolynomial::is_homogeneous() const { return terms_.empty() || charge().has_value(); }

int HarmonicPolynomial::max_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

HarmonicPolynomial HarmonicPolynomial::charge_part(int q) const {
  HarmonicPolynomial p(rank_);
  for (const auto& [m, c] : terms_)
    if (m.charge() == q) p.terms_.emplace(m, c);
  return p;
}

HarmonicPolynomial& HarmonicPolynomial::operator+=(const HarmonicPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

HarmonicPolynomial& HarmonicPolynomial::operator-=(const HarmonicPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

HarmonicPolynomial& HarmonicPolynomial::operator*=(cdouble s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

HarmonicPolynomial operator*(const HarmonicPolynomial& a, const HarmonicPolynomial& b) {
  // A scalar factor acts as a multiple of the identity.
  if (a.rank_ != b.rank_ && a.rank_ != 1 && b.rank_ != 1)
    throw std::invalid_argument("HarmonicPolynomial: rank mismatch in product");
  HarmonicPolynomial p(std::max(a.rank_, b.rank_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (a.rank_ == b.rank_) {
        p.add(ma * mb, ca * cb);
      } else if (a.rank_ == 1) {
        p.add(ma * mb, ca(0, 0) * cb);
      } else {
        p.add(ma * mb, ca * cb(0, 0));
      }
    }
  }
  return p;
}

HarmonicPolynomial HarmonicPolynomial::left_multiply(const Matrix& m) const {
  HarmonicPolynomial p(rank_);
  for (const auto& [mono, c] : terms_) p.add(mono, m * c);
  return p;
}

HarmonicPolynomial HarmonicPolynomial::right_multiply(const Matrix& m) const {
  HarmonicPolynomial p(rank_);
  for (const auto& [mono, c] : terms_) p.add(mono, c * m);
  return p;
}

HarmonicPolynomial HarmonicPolynomial::trace() const {
  HarmonicPolynomial p(1);
  for (const auto& [m, c] : terms_) p.add(m, Matrix::Constant(1, 1, c.trace()));
  return p;
}

HarmonicPolynomial HarmonicPolynomial::as_rank(int rank) const {
  if (rank_ == rank) return *this;
  if (rank_ != 1) throw std::invalid_argument("as_rank: only scalar polynomials can be embedded");
  HarmonicPolynomial p(rank);
  for (const auto& [m, c] : terms_) p.add(m, Matrix::Identity(rank, rank) * c(0, 0));
  return p;
}

HarmonicPolynomial::Matrix HarmonicPolynomial::evaluate(const HarmonicFrame& u) const {
  Matrix out = Matrix::Zero(rank_, rank_);
  const std::array<cdouble, 4> g{u.generator(0), u.generator(1), u.generator(2), u.generator(3)};
  for (const auto& [m, c] : terms_) {
    cdouble v = 1.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (int k = 0; k < m.powers[i]; ++k) v *= g[i];
    out += v * c;
  }
  return out;
}

HarmonicPolynomial HarmonicPolynomial::canonical() const {
  // u^{+1}u^{-2} = u^{+2}u^{-1} - 1, applied min(p1, q2) times at once.
  HarmonicPolynomial p(rank_);
  for (const auto& [m, c] : terms_) {
    const int k = std::min(m.powers[0], m.powers[3]);
    if (k == 0) {
      p.add(m, c);
      continue;
    }
    for (int j = 0; j <= k; ++j) {
      const double binom = boost::math::binomial_coefficient<double>(static_cast<unsigned>(k),
                                                                     static_cast<unsigned>(j));
      const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
      p.add(HarmonicMonomial::of(m.powers[0] - k, m.powers[1] + j, m.powers[2] + j, m.powers[3] - k),
            (sign * binom) * c);
    }
  }
  return p;
}

HarmonicPolynomial HarmonicPolynomial::pruned(double tol) const {
  const double scale = coefficient_norm();
  HarmonicPolynomial p(rank_);
  for (const auto& [m, c] : terms_)
    if (c.norm() > tol * scale) p.terms_.emplace(m, c);
  return p;
}

double HarmonicPolynomial::coefficient_norm() const {
  double n = 0.0;
  for (const auto& [m, c] : terms_) n = std::max(n, c.norm());
  return n;
}

HarmonicPolynomial commutator(const HarmonicPolynomial& a, const HarmonicPolynomial& b) {
  return a * b - b * a;
}

HarmonicPolynomial apply_D(HarmonicOperator op, const HarmonicPolynomial& f) {
  HarmonicPolynomial out(f.rank());
  for (const auto& [m, c] : f.terms()) {
    if (op == HarmonicOperator::D0) {
      out.add(m, static_cast<double>(m.charge()) * c);
      continue;
    }
    // D⁺⁺ trades u^{-a} for u^{+a}; D⁻⁻ the reverse.
    const int from_offset = op == HarmonicOperator::Dpp ? 2 : 0;
    const int to_offset = op == HarmonicOperator::Dpp ? 0 : 2;
    for (int a = 0; a < 2; ++a) {
      const auto from = static_cast<std::size_t>(from_offset + a);
      const auto to = static_cast<std::size_t>(to_offset + a);
      const int n = m.powers[from];
      if (n == 0) continue;
      HarmonicMonomial r = m;
      r.powers[from] -= 1;
      r.powers[to] += 1;
      out.add(r, static_cast<double>(n) * c);
    }
  }
  return out;
}

namespace {

// ε^{ab} on the dotted generator labels.
constexpr int kEpsUpper[2][2] = {{0, -1}, {1, 0}};

std::mutex& integral_cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<HarmonicMonomial, cpp_rational>& integral_cache() {
  static std::map<HarmonicMonomial, cpp_rational> cache;
  return cache;
}

// Iterated contraction: one u^{+a} is paired with every u^{-b} in turn.
// The invariant part of a pair is ½ε^{ab} times the rest, generalized to
// 1/(n+1) for n pairs (the totally symmetrized remainder integrates to zero).
cpp_rational monomial_integral_exact(const HarmonicMonomial& m);

cpp_rational monomial_integral_exact_uncached(const HarmonicMonomial& m) {
  if (m.charge() != 0) return cpp_rational(0);
  const int n = m.plus_degree();
  if (n == 0) return cpp_rational(1);
  const int a = m.powers[0] > 0 ? 0 : 1;
  cpp_rational sum(0);
  for (int b = 0; b < 2; ++b) {
    const int qb = m.powers[static_cast<std::size_t>(2 + b)];
    if (qb == 0 || kEpsUpper[a][b] == 0) continue;
    HarmonicMonomial r = m;
    r.powers[static_cast<std::size_t>(a)] -= 1;
    r.powers[static_cast<std::size_t>(2 + b)] -= 1;
    sum += cpp_rational(qb * kEpsUpper[a][b]) * monomial_integral_exact(r);
  }
  return sum / cpp_rational(n + 1);
}

cpp_rational monomial_integral_exact(const HarmonicMonomial& m) {
  {
    std::lock_guard<std::mutex> lock(integral_cache_mutex());
    auto it = integral_cache().find(m);
    if (it != integral_cache().end()) return it->second;
  }
  cpp_rational v = monomial_integral_exact_uncached(m);
  std::lock_guard<std::mutex> lock(integral_cache_mutex());
  integral_cache().emplace(m, v);
  return v;
}

cpp_rational exact(double v) {
  // Binary doubles are dyadic rationals; frexp gives the exact split.
  if (v == 0.0) return cpp_rational(0);
  int e = 0;
  const double mant = std::frexp(v, &e);
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  cpp_rational r(scaled);
  const int shift = e - 53;
  boost::multiprecision::cpp_int two_pow = 1;
  two_pow <<= std::abs(shift);
  return shift >= 0 ? r * cpp_rational(two_pow) : r / cpp_rational(two_pow);
}

}  // namespace

double monomial_integral(const HarmonicMonomial& m) {
  if (m.charge() != 0) return 0.0;
  return static_cast<double>(monomial_integral_exact(m));
}

Eigen::MatrixXcd integrate(const HarmonicPolynomial& f) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(f.rank(), f.rank());
  for (const auto& [m, c] : f.terms()) {
    if (m.charge() != 0) continue;
    out += monomial_integral(m) * c;
  }
  return out;
}

double integrate_total_derivative_check(const HarmonicPolynomial& f) {
  if (!f.empty() && f.charge() != -2) throw ChargeMismatch("integrate_total_derivative_check: f must have charge -2");
  // D⁺⁺ is applied term by term here, not through apply_D, so that no two
  // contributions are ever summed in floating point.
  double worst = 0.0;
  for (int i = 0; i < f.rank(); ++i) {
    for (int j = 0; j < f.rank(); ++j) {
      cpp_rational re(0), im(0);
      for (const auto& [m, c] : f.terms()) {
        for (int a = 0; a < 2; ++a) {
          const int n = m.powers[2 + a];
          if (n == 0) continue;
          HarmonicMonomial r = m;
          r.powers[2 + a] -= 1;
          r.powers[a] += 1;
          const cpp_rational w = n * monomial_integral_exact(r);
          if (w == 0) continue;
          re += w * exact(c(i, j).real());
          im += w * exact(c(i, j).imag());
        }
      }
      worst = std::max(worst, std::hypot(static_cast<double>(re), static_cast<double>(im)));
    }
  }
  return worst;
}

BracketCheck commutator_check(int max_degree) {
  BracketCheck report;
  report.max_degree = max_degree;
  using Op = HarmonicOperator;
  auto D = [](Op op, const HarmonicPolynomial& f) { return apply_D(op, f); };
  for (int n = 0; n <= max_degree; ++n) {
    for (int q = -n; q <= n; q += 2) {
      for (const auto& m : monomials_of(n, q)) {
        const auto f = HarmonicPolynomial::monomial(m);
        const HarmonicPolynomial r1 = D(Op::Dpp, D(Op::Dmm, f)) - D(Op::Dmm, D(Op::Dpp, f)) - D(Op::D0, f);
        const HarmonicPolynomial r2 =
            D(Op::D0, D(Op::Dpp, f)) - D(Op::Dpp, D(Op::D0, f)) - 2.0 * D(Op::Dpp, f);
        const HarmonicPolynomial r3 =
            D(Op::D0, D(Op::Dmm, f)) - D(Op::Dmm, D(Op::D0, f)) + 2.0 * D(Op::Dmm, f);
        const double res = std::max({r1.coefficient_norm(), r2.coefficient_norm(), r3.coefficient_norm()});
        ++report.monomials;
        if (res != 0.0) ++report.failures;
        report.max_residual = std::max(report.max_residual, res);
      }
    }
  }
  return report;
}

namespace {

Eigen::MatrixXcd dpp_matrix(const std::vector<HarmonicMonomial>& source,
                            const std::vector<HarmonicMonomial>& target) {
  std::map<HarmonicMonomial, Eigen::Index> row;
  for (std::size_t i = 0; i < target.size(); ++i) row[target[i]] = static_cast<Eigen::Index>(i);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(target.size()),
                                              static_cast<Eigen::Index>(source.size()));
  for (std::size_t j = 0; j < source.size(); ++j) {
    const auto image = apply_D(HarmonicOperator::Dpp, HarmonicPolynomial::monomial(source[j]));
    for (const auto& [m, c] : image.terms()) a(row.at(m), static_cast<Eigen::Index>(j)) = c(0, 0);
  }
  return a;
}

}  // namespace

HarmonicPolynomial invert_Dpp(const HarmonicPolynomial& y, int max_degree) {
  HarmonicPolynomial x(y.rank());
  if (y.empty()) return x;
  const auto q = y.charge();
  if (!q) throw ChargeMismatch("invert_Dpp: right-hand side has mixed charge");
  if (y.max_degree() > max_degree)
    throw NotInImage("invert_Dpp: right-hand side exceeds the truncation degree " + std::to_string(max_degree));

  const int r = y.rank();
  for (int n = 0; n <= y.max_degree(); ++n) {
    const auto target = monomials_of(n, *q);
    std::map<HarmonicMonomial, Eigen::Index> row;
    for (std::size_t i = 0; i < target.size(); ++i) row[target[i]] = static_cast<Eigen::Index>(i);

    // One right-hand side column per coefficient entry.
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(target.size()), r * r);
    bool any = false;
    for (const auto& [m, c] : y.terms()) {
      if (m.degree() != n) continue;
      any = true;
      rhs.row(row.at(m)) = Eigen::Map<const Eigen::RowVectorXcd>(c.data(), r * r);
    }
    if (!any) continue;

    const auto source = monomials_of(n, *q - 2);
    if (source.empty()) throw NotInImage("invert_Dpp: no monomials of charge " + std::to_string(*q - 2));
    const Eigen::MatrixXcd a = dpp_matrix(source, target);
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(a);
    const Eigen::MatrixXcd sol = cod.solve(rhs);
    const double residual = (a * sol - rhs).norm();
    if (residual > 1e-10 * std::max(1.0, rhs.norm()))
      throw NotInImage("invert_Dpp: degree-" + std::to_string(n) + " block is not in the image of D++");

    for (std::size_t j = 0; j < source.size(); ++j) {
      Eigen::MatrixXcd coeff(r, r);
      Eigen::Map<Eigen::RowVectorXcd>(coeff.data(), r * r) = sol.row(static_cast<Eigen::Index>(j));
      x.add(source[j], coeff);
    }
  }
  return x;
}

std::vector<HarmonicPolynomial> dpp_kernel_basis(int charge, int max_degree) {
  std::vector<HarmonicPolynomial> basis;
  for (int n = 0; n <= max_degree; ++n) {
    const auto source = monomials_of(n, charge);
    if (source.empty()) continue;
    const auto target = monomials_of(n, charge + 2);
    Eigen::MatrixXd kernel;
    if (target.empty()) {
      kernel = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(source.size()),
                                         static_cast<Eigen::Index>(source.size()));
    } else {
      const Eigen::MatrixXd a = dpp_matrix(source, target).real();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() == a.cols()) continue;
      kernel = lu.kernel();
    }
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
      HarmonicPolynomial p(1);
      for (std::size_t j = 0; j < source.size(); ++j) {
        const double v = kernel(static_cast<Eigen::Index>(j), k);
        if (std::abs(v) > 1e-14) p.add(source[j], Eigen::MatrixXcd::Constant(1, 1, v));
      }
      basis.push_back(p);
    }
  }
  return basis;
}

Eigen::MatrixXcd sphere_average(const HarmonicPolynomial& f, int s_nodes) {
  const int deg = f.max_degree();
  // Chart: s = cos²θ is Haar-uniform on [0,1]; phases are uniform.
  if (s_nodes <= 0) s_nodes = deg / 2 + 2;
  const int phi_nodes = deg + 2;
  const auto rule = numerics::gauss_legendre(s_nodes, 0.0, 1.0);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(f.rank(), f.rank());
  const double dphi = 2.0 * std::numbers::pi / phi_nodes;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double theta = std::acos(std::sqrt(rule.nodes[i]));
    for (int j = 0; j < phi_nodes; ++j)
      for (int k = 0; k < phi_nodes; ++k)
        sum += rule.weights[i] * f.evaluate(HarmonicFrame::from_angles(theta, j * dphi, k * dphi));
  }
  return sum / static_cast<double>(phi_nodes * phi_nodes);
}

}  // namespace twistor
