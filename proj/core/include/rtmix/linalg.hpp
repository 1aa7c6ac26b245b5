#pragma once

#include <Eigen/Dense>

namespace rtmix {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
struct SymEigen {
  Vec values;
  Mat vectors;  // column k pairs with values[k]

  double max() const { return values[values.size() - 1]; }
  double min() const { return values[0]; }
};

bool is_symmetric(const Mat& s, double rel_tol = 1e-12);

/// Closed form for n = 2, cyclic Jacobi for n >= 3.
SymEigen sym_eigen(const Mat& s);

double lambda_max(const Mat& s);

/// S - tr(S)/n * id. Throws std::invalid_argument when S is not symmetric.
Mat trace_free_part(const Mat& s);

Mat outer(const Vec& a, const Vec& b);

/// a (x) b + b (x) a
Mat sym_outer(const Vec& a, const Vec& b);

Vec unit(int n, int k);

/// Orthonormal basis (columns) of the complement of a nonzero vector.
Mat orthogonal_complement(const Vec& v);

}  // namespace rtmix
