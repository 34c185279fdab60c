#include "tmscatter/block_operator.hpp"

namespace tmscatter {

BlockOperator BlockOperator::identity(int n, int n_osc, double k,
                                      bool osc_only) {
  BlockOperator m;
  m.n = n;
  m.n_osc = n_osc;
  m.k = k;
  m.osc_only = osc_only;
  m.b[0][0] = MatrixXcd::Identity(n, n);
  m.b[0][1] = MatrixXcd::Zero(n, n);
  m.b[1][0] = MatrixXcd::Zero(n, n);
  m.b[1][1] = MatrixXcd::Identity(n, n);
  return m;
}

BlockOperator BlockOperator::zero(int n, int n_osc, double k, bool osc_only) {
  BlockOperator m = identity(n, n_osc, k, osc_only);
  m.b[0][0].setZero();
  m.b[1][1].setZero();
  return m;
}

namespace {
void check_compatible(const BlockOperator& a, const BlockOperator& b) {
  if (a.n != b.n || a.osc_only != b.osc_only || a.k != b.k)
    throw ConfigError("BlockOperator: grid mismatch");
}
}  // namespace

BlockOperator BlockOperator::operator*(const BlockOperator& rhs) const {
  check_compatible(*this, rhs);
  BlockOperator out = *this;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.b[i][j] = b[i][0] * rhs.b[0][j] + b[i][1] * rhs.b[1][j];
  return out;
}

BlockOperator BlockOperator::operator+(const BlockOperator& rhs) const {
  check_compatible(*this, rhs);
  BlockOperator out = *this;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.b[i][j] = b[i][j] + rhs.b[i][j];
  return out;
}

BlockOperator BlockOperator::operator-(const BlockOperator& rhs) const {
  check_compatible(*this, rhs);
  BlockOperator out = *this;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.b[i][j] = b[i][j] - rhs.b[i][j];
  return out;
}

BlockOperator BlockOperator::scaled(Complex c) const {
  BlockOperator out = *this;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.b[i][j] = c * b[i][j];
  return out;
}

double BlockOperator::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m = std::max(m, b[i][j].cwiseAbs().maxCoeff());
  return m;
}

BlockOperator BlockOperator::osc_restriction() const {
  if (osc_only) return *this;
  BlockOperator out;
  out.n = n_osc;
  out.n_osc = n_osc;
  out.k = k;
  out.osc_only = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.b[i][j] = b[i][j].topLeftCorner(n_osc, n_osc);
  return out;
}

MatrixXcd BlockOperator::assemble() const {
  MatrixXcd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = b[0][0];
  m.topRightCorner(n, n) = b[0][1];
  m.bottomLeftCorner(n, n) = b[1][0];
  m.bottomRightCorner(n, n) = b[1][1];
  return m;
}

BlockOperator BlockOperator::from_assembled(const MatrixXcd& m, int n_osc,
                                            double k, bool osc_only) {
  const int n = static_cast<int>(m.rows()) / 2;
  BlockOperator out;
  out.n = n;
  out.n_osc = n_osc;
  out.k = k;
  out.osc_only = osc_only;
  out.b[0][0] = m.topLeftCorner(n, n);
  out.b[0][1] = m.topRightCorner(n, n);
  out.b[1][0] = m.bottomLeftCorner(n, n);
  out.b[1][1] = m.bottomRightCorner(n, n);
  return out;
}

StateVector BlockOperator::apply(const StateVector& v) const {
  StateVector out = v;
  out.upper = b[0][0] * v.upper + b[0][1] * v.lower;
  out.lower = b[1][0] * v.upper + b[1][1] * v.lower;
  return out;
}

BlockOperator compose(std::span<const BlockOperator> tms) {
  if (tms.empty()) throw ConfigError("compose: empty slice list");
  BlockOperator acc = tms[0];
  for (size_t j = 1; j < tms.size(); ++j) acc = tms[j] * acc;
  return acc;
}

}  // namespace tmscatter
