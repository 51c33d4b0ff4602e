#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <optional>
#include <string>
#include <vector>

#include "bethe/polynomial.hpp"
#include "bethe/scalar.hpp"

namespace bethe {

using ExactMatrix = Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;
using ExactVector = Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1>;

inline ExactMatrix exact_identity(Eigen::Index n) {
  ExactMatrix m = ExactMatrix::Constant(n, n, GaussianRational(0));
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = GaussianRational(1);
  return m;
}

inline ExactMatrix exact_zero(Eigen::Index r, Eigen::Index c) {
  return ExactMatrix::Constant(r, c, GaussianRational(0));
}

inline ExactMatrix unitmat(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ExactMatrix m = exact_zero(n, n);
  m(i, j) = GaussianRational(1);
  return m;
}

// Eigen's adjoint() would use the trivial conj of our scalar; spell it out.
inline ExactMatrix conj_transpose(const ExactMatrix& m) {
  ExactMatrix r = exact_zero(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(j, i) = m(i, j).conj();
  return r;
}

inline bool is_zero_matrix(const ExactMatrix& m) { return coeff_is_zero(m); }

inline ExactVector vectorize(const ExactMatrix& m) {
  ExactVector v(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v(k++) = m(i, j);
  return v;
}

// Incremental reduced row echelon form over the Gaussian rationals; the basis
// holder behind ranks, spans and membership tests.
class RowEchelon {
 public:
  explicit RowEchelon(Eigen::Index width) : width_(width) {}

  Eigen::Index width() const { return width_; }
  long rank() const { return static_cast<long>(rows_.size()); }

  // Reduces v against the current rows (in place), returns the residual.
  ExactVector residual(ExactVector v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const GaussianRational& x = v(pivots_[r]);
      if (!x.is_zero()) v -= rows_[r] * x;
    }
    return v;
  }

  bool contains(const ExactVector& v) const { return coeff_is_zero(residual(v)); }

  // Returns true if v extended the span.
  bool insert(const ExactVector& v) {
    ExactVector w = residual(v);
    Eigen::Index p = -1;
    for (Eigen::Index k = 0; k < w.size(); ++k)
      if (!w(k).is_zero()) {
        p = k;
        break;
      }
    if (p < 0) return false;
    w *= w(p).inverse();
    for (size_t r = 0; r < rows_.size(); ++r) {
      const GaussianRational& x = rows_[r](p);
      if (!x.is_zero()) rows_[r] -= w * x;
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    // keep rows sorted by pivot for determinism
    for (size_t r = rows_.size() - 1; r > 0 && pivots_[r] < pivots_[r - 1]; --r) {
      std::swap(pivots_[r], pivots_[r - 1]);
      std::swap(rows_[r], rows_[r - 1]);
    }
    return true;
  }

  const std::vector<ExactVector>& rows() const { return rows_; }

 private:
  Eigen::Index width_;
  std::vector<ExactVector> rows_;
  std::vector<Eigen::Index> pivots_;
};

inline long rank(const ExactMatrix& m) {
  RowEchelon e(m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) e.insert(m.row(i).transpose());
  return e.rank();
}

// Basis of the right nullspace of m.
inline std::vector<ExactVector> nullspace(const ExactMatrix& m) {
  Eigen::Index n = m.cols();
  RowEchelon e(n);
  for (Eigen::Index i = 0; i < m.rows(); ++i) e.insert(m.row(i).transpose());
  std::vector<bool> is_pivot(n, false);
  std::vector<Eigen::Index> pivot_of_row;
  // recover pivot columns from the echelon rows
  for (const auto& row : e.rows()) {
    Eigen::Index p = 0;
    while (row(p).is_zero()) ++p;
    is_pivot[p] = true;
    pivot_of_row.push_back(p);
  }
  std::vector<ExactVector> basis;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    ExactVector v = ExactVector::Constant(n, GaussianRational(0));
    v(free) = GaussianRational(1);
    for (size_t r = 0; r < e.rows().size(); ++r) v(pivot_of_row[r]) = -e.rows()[r](free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Gauss-Jordan inverse together with the determinant; throws on singularity.
inline ExactMatrix exact_inverse(const ExactMatrix& a, GaussianRational* det_out = nullptr) {
  Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  ExactMatrix m = a, inv = exact_identity(n);
  GaussianRational det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("singular matrix in exact_inverse");
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      inv.row(piv).swap(inv.row(col));
      det = -det;
    }
    GaussianRational f = m(col, col).inverse();
    det *= m(col, col);
    m.row(col) *= f;
    inv.row(col) *= f;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      GaussianRational x = m(r, col);
      m.row(r) -= m.row(col) * x;
      inv.row(r) -= inv.row(col) * x;
    }
  }
  if (det_out) *det_out = det;
  return inv;
}

inline GaussianRational exact_det(const ExactMatrix& a) {
  try {
    GaussianRational d;
    exact_inverse(a, &d);
    return d;
  } catch (const std::domain_error&) {
    return GaussianRational(0);
  }
}

// Solve a*x = b for possibly many right-hand sides; throws if inconsistent.
inline ExactMatrix exact_solve(const ExactMatrix& a, const ExactMatrix& b) {
  Eigen::Index rows = a.rows(), cols = a.cols();
  ExactMatrix aug(rows, cols + b.cols());
  aug.block(0, 0, rows, cols) = a;
  aug.block(0, cols, rows, b.cols()) = b;
  // forward elimination with column pivots
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index k = r; k < rows; ++k)
      if (!aug(k, c).is_zero()) {
        piv = k;
        break;
      }
    if (piv < 0) continue;
    aug.row(piv).swap(aug.row(r));
    aug.row(r) *= aug(r, c).inverse();
    for (Eigen::Index k = 0; k < rows; ++k) {
      if (k == r || aug(k, c).is_zero()) continue;
      GaussianRational x = aug(k, c);
      aug.row(k) -= aug.row(r) * x;
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (Eigen::Index k = r; k < rows; ++k)
    for (Eigen::Index j = cols; j < aug.cols(); ++j)
      if (!aug(k, j).is_zero()) throw std::domain_error("inconsistent linear system");
  ExactMatrix x = exact_zero(cols, b.cols());
  for (Eigen::Index i = 0; i < r; ++i) x.row(pivot_col[i]) = aug.block(i, cols, 1, b.cols());
  return x;
}

// Characteristic polynomial det(uI - m) by the Faddeev-LeVerrier recurrence.
inline Poly charpoly(const ExactMatrix& m) {
  Eigen::Index n = m.rows();
  std::vector<GaussianRational> c(n + 1, GaussianRational(0));
  c[n] = GaussianRational(1);
  ExactMatrix mk = exact_identity(n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk;
    GaussianRational tr(0);
    for (Eigen::Index i = 0; i < n; ++i) tr += mk(i, i);
    GaussianRational ck = -tr / GaussianRational(static_cast<long>(k));
    c[n - k] = ck;
    for (Eigen::Index i = 0; i < n; ++i) mk(i, i) += ck;
  }
  return Poly(std::move(c));
}

inline bool squarefree_charpoly_certificate(const ExactMatrix& m) {
  Poly p = charpoly(m);
  return poly_gcd(p, p.derivative()).degree() == 0;
}

// Linear span of operators (or plain vectors) with exact membership tests.
class OperatorSpan {
 public:
  OperatorSpan(Eigen::Index rows, Eigen::Index cols)
      : rows_(rows), cols_(cols), echelon_(rows * cols) {}
  explicit OperatorSpan(Eigen::Index ambient_dim) : OperatorSpan(ambient_dim, ambient_dim) {}

  Eigen::Index ambient_rows() const { return rows_; }
  Eigen::Index ambient_cols() const { return cols_; }
  long dim() const { return echelon_.rank(); }

  bool add(const ExactMatrix& op, std::string label = {}) {
    if (op.rows() != rows_ || op.cols() != cols_) throw std::invalid_argument("span dim mismatch");
    if (!echelon_.insert(vectorize(op))) return false;
    basis_.push_back(op);
    labels_.push_back(std::move(label));
    return true;
  }

  bool contains(const ExactMatrix& op) const { return echelon_.contains(vectorize(op)); }
  bool contains_span(const OperatorSpan& other) const {
    for (const auto& b : other.basis_)
      if (!contains(b)) return false;
    return true;
  }

  const std::vector<ExactMatrix>& basis() const { return basis_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Extends the span to the algebra generated by it (unital closure under
  // products); optional, see the subalgebra image semantics.
  void close_under_products() {
    bool grew = true;
    while (grew) {
      grew = false;
      size_t n = basis_.size();
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
          if (add(basis_[a] * basis_[b], labels_[a] + "*" + labels_[b])) grew = true;
    }
  }

 private:
  Eigen::Index rows_, cols_;
  RowEchelon echelon_;
  std::vector<ExactMatrix> basis_;
  std::vector<std::string> labels_;
};

inline bool span_equal(const OperatorSpan& a, const OperatorSpan& b) {
  return a.dim() == b.dim() && a.contains_span(b);
}

struct KrylovResult {
  long dim = 0;
  bool stabilized = false;
  std::vector<ExactVector> basis;
};

// Smallest subspace containing v and closed under every generator.
inline KrylovResult krylov_span(const std::vector<ExactMatrix>& generators, const ExactVector& v,
                                long cap) {
  KrylovResult res;
  RowEchelon e(v.size());
  std::vector<ExactVector> queue;
  if (e.insert(v)) {
    res.basis.push_back(v);
    queue.push_back(v);
  }
  while (!queue.empty()) {
    if (e.rank() > cap) {
      res.dim = e.rank();
      return res;  // inconclusive: cap exceeded
    }
    std::vector<ExactVector> next;
    for (const auto& w : queue)
      for (const auto& g : generators) {
        ExactVector gw = g * w;
        if (e.insert(gw)) {
          res.basis.push_back(gw);
          next.push_back(std::move(gw));
          if (e.rank() > cap) {
            res.dim = e.rank();
            return res;
          }
        }
      }
    queue = std::move(next);
  }
  res.dim = e.rank();
  res.stabilized = true;
  return res;
}

// Principal angles between two operator spans under the Frobenius pairing
// (approximate path). Throws if a basis is numerically rank-deficient.
inline std::vector<double> principal_angles(const OperatorSpan& a, const OperatorSpan& b) {
  if (a.ambient_rows() != b.ambient_rows() || a.ambient_cols() != b.ambient_cols())
    throw std::invalid_argument("principal_angles: ambient dimension mismatch");
  auto to_cols = [](const OperatorSpan& s) {
    Eigen::MatrixXcd m(s.ambient_rows() * s.ambient_cols(), s.basis().size());
    for (size_t k = 0; k < s.basis().size(); ++k) {
      Eigen::Index idx = 0;
      const ExactMatrix& op = s.basis()[k];
      for (Eigen::Index j = 0; j < op.cols(); ++j)
        for (Eigen::Index i = 0; i < op.rows(); ++i) m(idx++, k) = op(i, j).to_complex();
    }
    return m;
  };
  auto orthonormalize = [](const Eigen::MatrixXcd& m, const OperatorSpan& s) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    double scale = m.norm();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      if (std::abs(r(k, k)) < 1e-12 * (scale > 0 ? scale : 1.0))
        throw std::domain_error("principal_angles: dependent basis element '" + s.labels()[k] + "'");
    Eigen::MatrixXcd q = qr.householderQ();
    return Eigen::MatrixXcd(q.leftCols(m.cols()));
  };
  if (a.basis().empty() || b.basis().empty()) {
    // angles against a trivial span: pi/2 per excess dimension
    size_t excess = std::max(a.basis().size(), b.basis().size());
    return std::vector<double>(excess, std::acos(0.0));
  }
  Eigen::MatrixXcd qa = orthonormalize(to_cols(a), a);
  Eigen::MatrixXcd qb = orthonormalize(to_cols(b), b);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(qa.adjoint() * qb);
  Eigen::VectorXd s = svd.singularValues();
  std::vector<double> angles;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    angles.push_back(std::acos(std::min(1.0, std::max(0.0, s(k)))));
  std::sort(angles.begin(), angles.end());
  // dimension mismatch shows up as right angles so that "all zero" iff equal
  size_t excess = std::max(qa.cols(), qb.cols()) - std::min(qa.cols(), qb.cols());
  angles.insert(angles.end(), excess, std::acos(0.0));
  return angles;
}

}  // namespace bethe
