#include "funcord/star_algebra.hpp"

#include <cctype>
#include <string_view>

#include "funcord/error.hpp"

namespace funcord {

namespace {

std::size_t flat(int dim, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * dim + j) * dim + k;
}

AlgebraPtr checked(AlgebraPtr algebra) {
  ValidationReport report = validate_structure(*algebra);
  if (!report.ok())
    throw Error(ErrorKind::Construction,
                "constructed algebra " + algebra->label() + " violates " +
                    report.violations.front().invariant);
  return algebra;
}

}  // namespace

StarAlgebra::StarAlgebra(std::string label, int dim,
                         std::vector<Complex> structure, Matrix involution,
                         std::optional<Vector> unit, AlgebraKind kind,
                         int matrix_order)
    : label_(std::move(label)),
      dim_(dim),
      structure_(std::move(structure)),
      involution_(std::move(involution)),
      unit_(std::move(unit)),
      kind_(kind),
      matrix_order_(matrix_order) {
  if (dim_ < 1)
    throw Error(ErrorKind::Construction, "algebra dimension must be >= 1");
  const auto d = static_cast<std::size_t>(dim_);
  if (structure_.size() != d * d * d)
    throw Error(ErrorKind::Construction,
                "structure tensor must hold dim^3 = " +
                    std::to_string(d * d * d) + " entries");
  if (involution_.rows() != dim_ || involution_.cols() != dim_)
    throw Error(ErrorKind::Construction, "involution must be dim x dim");
  if (unit_ && unit_->size() != dim_)
    throw Error(ErrorKind::Construction, "unit must have dim coefficients");

  left_.assign(d, Matrix::Zero(dim_, dim_));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        const Complex v = structure_[flat(dim_, i, j, k)];
        left_[i](k, j) = v;
        structure_scale_ = std::max(structure_scale_, std::abs(v));
      }
}

bool StarAlgebra::same_as(const StarAlgebra& other) const {
  if (this == &other) return true;
  return label_ == other.label_ && dim_ == other.dim_ &&
         structure_ == other.structure_ && involution_ == other.involution_;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

AlgebraPtr matrix_algebra(int n) {
  if (n < 1) throw Error(ErrorKind::Construction, "matrix(n) needs n >= 1");
  const int d = n * n;
  std::vector<Complex> c(static_cast<std::size_t>(d) * d * d);
  Matrix s = Matrix::Zero(d, d);
  Vector unit = Vector::Zero(d);
  // e_{pq} e_{rs} = delta_{qr} e_{ps}
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      s(p * n + q, q * n + p) = 1.0;
      for (int t = 0; t < n; ++t) c[flat(d, p * n + q, q * n + t, p * n + t)] = 1.0;
    }
  for (int p = 0; p < n; ++p) unit(p * n + p) = 1.0;
  return checked(std::make_shared<StarAlgebra>(
      "matrix(" + std::to_string(n) + ")", d, std::move(c), std::move(s),
      std::move(unit), AlgebraKind::Matrix, n));
}

AlgebraPtr function_algebra(int m) {
  if (m < 1) throw Error(ErrorKind::Construction, "functions(m) needs m >= 1");
  std::vector<Complex> c(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i) c[flat(m, i, i, i)] = 1.0;
  return checked(std::make_shared<StarAlgebra>(
      "functions(" + std::to_string(m) + ")", m, std::move(c),
      Matrix::Identity(m, m), Vector::Ones(m), AlgebraKind::Functions));
}

AlgebraPtr zero_product_algebra(int n) {
  if (n < 1)
    throw Error(ErrorKind::Construction, "zero_product(n) needs n >= 1");
  return checked(std::make_shared<StarAlgebra>(
      "zero_product(" + std::to_string(n) + ")", n,
      std::vector<Complex>(static_cast<std::size_t>(n) * n * n),
      Matrix::Identity(n, n), std::nullopt, AlgebraKind::ZeroProduct));
}

AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a || !b) throw Error(ErrorKind::Construction, "direct_sum of null");
  ValidationReport ra = validate_structure(*a);
  ValidationReport rb = validate_structure(*b);
  if (!ra.ok() || !rb.ok())
    throw Error(ErrorKind::Construction, "direct_sum operands must be valid");
  const int da = a->dim();
  const int d = da + b->dim();
  std::vector<Complex> c(static_cast<std::size_t>(d) * d * d);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < da; ++k) c[flat(d, i, j, k)] = a->c(i, j, k);
  for (int i = 0; i < b->dim(); ++i)
    for (int j = 0; j < b->dim(); ++j)
      for (int k = 0; k < b->dim(); ++k)
        c[flat(d, da + i, da + j, da + k)] = b->c(i, j, k);
  Matrix s = Matrix::Zero(d, d);
  s.topLeftCorner(da, da) = a->involution();
  s.bottomRightCorner(b->dim(), b->dim()) = b->involution();
  std::optional<Vector> unit;
  if (a->unit() && b->unit()) {
    Vector u(d);
    u << *a->unit(), *b->unit();
    unit = std::move(u);
  }
  auto out = std::make_shared<StarAlgebra>(
      "direct_sum(" + a->label() + "," + b->label() + ")", d, std::move(c),
      std::move(s), std::move(unit), AlgebraKind::DirectSum);
  out->set_summands({a, b});
  return checked(std::move(out));
}

namespace {

class LabelParser {
 public:
  explicit LabelParser(std::string_view text) : text_(text) {}

  AlgebraPtr parse() {
    AlgebraPtr out = algebra();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return out;
  }

 private:
  AlgebraPtr algebra() {
    skip_space();
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      name += text_[pos_++];
    expect('(');
    AlgebraPtr out;
    if (name == "direct_sum") {
      AlgebraPtr lhs = algebra();
      expect(',');
      AlgebraPtr rhs = algebra();
      out = direct_sum(lhs, rhs);
    } else {
      const int n = integer();
      if (name == "matrix") out = matrix_algebra(n);
      else if (name == "functions") out = function_algebra(n);
      else if (name == "zero_product") out = zero_product_algebra(n);
      else fail("unknown algebra kind '" + name + "'");
    }
    expect(')');
    return out;
  }

  int integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(char ch) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ch)
      fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Construction,
                "bad algebra label '" + std::string(text_) + "': " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraPtr algebra_from_label(const std::string& label) {
  return LabelParser(label).parse();
}

AlgebraElement::AlgebraElement(AlgebraPtr algebra, Vector coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (!algebra_) throw Error(ErrorKind::Construction, "element without algebra");
  if (coeffs_.size() != algebra_->dim())
    throw Error(ErrorKind::SizeMismatch,
                "element has " + std::to_string(coeffs_.size()) +
                    " coefficients, algebra dimension is " +
                    std::to_string(algebra_->dim()));
}

AlgebraElement AlgebraElement::zero(const AlgebraPtr& algebra) {
  return {algebra, Vector::Zero(algebra->dim())};
}

AlgebraElement AlgebraElement::basis(const AlgebraPtr& algebra, int i) {
  Vector v = Vector::Zero(algebra->dim());
  v(i) = 1.0;
  return {algebra, std::move(v)};
}

namespace {
void require_same(const AlgebraElement& x, const AlgebraElement& y) {
  if (!same_algebra(x.algebra(), y.algebra()))
    throw Error(ErrorKind::AlgebraMismatch,
                "elements of " + x.algebra()->label() + " and " +
                    y.algebra()->label());
}
}  // namespace

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
  require_same(*this, other);
  return {algebra_, coeffs_ + other.coeffs_};
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const {
  require_same(*this, other);
  return {algebra_, coeffs_ - other.coeffs_};
}

AlgebraElement AlgebraElement::operator*(Complex scalar) const {
  return {algebra_, coeffs_ * scalar};
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x, y);
  const StarAlgebra& alg = *x.algebra();
  Vector out = Vector::Zero(alg.dim());
  for (int i = 0; i < alg.dim(); ++i)
    if (x.coeffs()(i) != Complex{}) out += x.coeffs()(i) * (alg.left_multiplication(i) * y.coeffs());
  return {x.algebra(), std::move(out)};
}

AlgebraElement involute(const AlgebraElement& x) {
  return {x.algebra(),
          x.algebra()->involution().transpose() * x.coeffs().conjugate()};
}

ValidationReport validate_structure(const StarAlgebra& alg) {
  const int d = alg.dim();
  ValidationReport report;
  report.tolerance = 1e-9 * (1.0 + alg.structure_scale());
  const Matrix& s = alg.involution();

  auto record = [&](const char* name, std::array<int, 3> index,
                    double residual) {
    if (residual > report.tolerance)
      report.violations.push_back({name, index, residual});
  };

  // (b_i b_j) b_k = b_i (b_j b_k)  <=>  sum_p c(i,j,p) L_p = L_i L_j
  {
    double worst = 0.0;
    std::array<int, 3> at{-1, -1, -1};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Matrix lhs = Matrix::Zero(d, d);
        for (int p = 0; p < d; ++p)
          if (alg.c(i, j, p) != Complex{})
            lhs += alg.c(i, j, p) * alg.left_multiplication(p);
        Matrix diff =
            lhs - alg.left_multiplication(i) * alg.left_multiplication(j);
        Eigen::Index row = 0, col = 0;
        const double r = d ? diff.cwiseAbs().maxCoeff(&row, &col) : 0.0;
        if (r > worst) {
          worst = r;
          at = {i, j, static_cast<int>(col)};
        }
      }
    record("associativity", at, worst);
  }

  // conj(s) s = I
  {
    Matrix diff = s.conjugate() * s - Matrix::Identity(d, d);
    Eigen::Index row = 0, col = 0;
    const double r = diff.cwiseAbs().maxCoeff(&row, &col);
    record("involutive", {static_cast<int>(row), static_cast<int>(col), -1}, r);
  }

  // (b_i b_j)^* = b_j^* b_i^*
  {
    double worst = 0.0;
    std::array<int, 3> at{-1, -1, -1};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Vector prod(d);
        for (int k = 0; k < d; ++k) prod(k) = alg.c(i, j, k);
        Vector lhs = s.transpose() * prod.conjugate();
        Vector rhs = Vector::Zero(d);
        for (int p = 0; p < d; ++p) {
          if (s(j, p) == Complex{}) continue;
          rhs += s(j, p) * (alg.left_multiplication(p) *
                            s.row(i).transpose());
        }
        const double r = (lhs - rhs).cwiseAbs().maxCoeff();
        if (r > worst) {
          worst = r;
          at = {i, j, -1};
        }
      }
    record("anti-multiplicative", at, worst);
  }

  if (alg.unit()) {
    const Vector& u = *alg.unit();
    double worst = 0.0;
    int at = -1;
    Matrix right = Matrix::Zero(d, d);  // x -> x u
    for (int i = 0; i < d; ++i) right.col(i) = alg.left_multiplication(i) * u;
    Matrix left = Matrix::Zero(d, d);  // x -> u x
    for (int i = 0; i < d; ++i)
      if (u(i) != Complex{}) left += u(i) * alg.left_multiplication(i);
    for (int i = 0; i < d; ++i) {
      Vector e = Vector::Zero(d);
      e(i) = 1.0;
      const double r = std::max((left.col(i) - e).cwiseAbs().maxCoeff(),
                                (right.col(i) - e).cwiseAbs().maxCoeff());
      if (r > worst) {
        worst = r;
        at = i;
      }
    }
    record("unit", {at, -1, -1}, worst);
  }
  return report;
}

}  // namespace funcord
