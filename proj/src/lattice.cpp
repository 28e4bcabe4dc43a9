#include "vorlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vorlat/errors.hpp"

namespace vorlat {

bool coeffs_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

Basis Basis::from_columns(const Eigen::MatrixXd& columns) {
  if (columns.rows() != columns.cols())
    throw DimensionMismatch("basis must be square, got " + std::to_string(columns.rows()) + "x" +
                            std::to_string(columns.cols()));
  if (columns.rows() < 1) throw DimensionMismatch("basis must have dimension >= 1");
  const int n = static_cast<int>(columns.cols());

  double col_norm_prod = 1.0;
  for (int i = 0; i < n; ++i) col_norm_prod *= columns.col(i).norm();

  Basis b;
  b.mat_ = columns;
  b.lu_ = Eigen::PartialPivLU<Eigen::MatrixXd>(columns);
  b.det_abs_ = std::fabs(b.lu_.determinant());
  if (!(b.det_abs_ >= 1e-10 * col_norm_prod))
    throw SingularBasis("basis is singular or nearly so (|det| = " +
                        std::to_string(b.det_abs_) + ")");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns);
  const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
  if (!(cond <= 1e8))
    throw SingularBasis("basis condition number " + std::to_string(cond) + " exceeds 1e8");
  b.gram_ = columns.transpose() * columns;
  return b;
}

Eigen::VectorXd Basis::coords_of(const Eigen::VectorXi& z) const {
  if (z.size() != mat_.cols()) throw DimensionMismatch("coefficient vector has wrong dimension");
  return mat_ * z.cast<double>();
}

Eigen::VectorXd Basis::solve(const Eigen::VectorXd& x) const {
  if (x.size() != mat_.rows()) throw DimensionMismatch("point has wrong dimension");
  return lu_.solve(x);
}

namespace {

double euclidean_cover_radius(const NormSpec& norm, double radius, int n) {
  // Smallest r2 with {||y||_norm <= radius} contained in {||y||_2 <= r2}.
  if (norm.is_inf) return radius * std::sqrt(static_cast<double>(n));
  if (norm.p >= 2.0) return radius * std::pow(static_cast<double>(n), 0.5 - 1.0 / norm.p);
  return radius;
}

struct EnumState {
  const Eigen::MatrixXd* L = nullptr;  // lower-triangular Cholesky factor of the Gram matrix
  Eigen::VectorXd y;                   // real solution B y = center
  double r2sq = 0.0;                   // squared euclidean ellipsoid radius
  std::int64_t budget = 0;
  std::int64_t visited = 0;
  Eigen::VectorXi z;
  // partial[i] = sum over levels above i of w_k^2
  Eigen::VectorXd partial;
  // shift[i] = sum_{j>i} L(j,i)*(z_j - y_j), accumulated per level
  std::vector<Eigen::VectorXd> shifts;
  std::vector<Eigen::VectorXi>* out = nullptr;
};

// Depth-first Fincke-Pohst over levels n-1 .. 0.  w_i = L(i,i)*(z_i - c_i)
// with c_i = y_i - shift_i/L(i,i); feasible z_i satisfy
// partial + w_i^2 <= r2sq.
void enum_level(EnumState& st, int i, double partial_sq) {
  const Eigen::MatrixXd& L = *st.L;
  const int n = static_cast<int>(st.y.size());
  const double lii = L(i, i);
  const double shift = st.shifts[static_cast<std::size_t>(i)](i);
  const double ci = st.y(i) - shift / lii;
  const double rem = st.r2sq - partial_sq;
  if (rem < 0.0) return;
  const double half_width = std::sqrt(rem) / lii;
  const double lo_f = std::ceil(ci - half_width - 1e-12);
  const double hi_f = std::floor(ci + half_width + 1e-12);
  if (lo_f > hi_f) return;
  const long lo = static_cast<long>(lo_f);
  const long hi = static_cast<long>(hi_f);
  for (long zi = lo; zi <= hi; ++zi) {
    if (++st.visited > st.budget)
      throw BudgetExceeded("enumeration budget of " + std::to_string(st.budget) +
                           " candidates exceeded");
    st.z(i) = static_cast<int>(zi);
    const double wi = lii * (static_cast<double>(zi) - ci);
    const double next_sq = partial_sq + wi * wi;
    if (next_sq > st.r2sq) continue;
    if (i == 0) {
      st.out->push_back(st.z);
    } else {
      // Update shifts for level i-1 .. 0 contribution of z_i.
      Eigen::VectorXd& below = st.shifts[static_cast<std::size_t>(i - 1)];
      below = st.shifts[static_cast<std::size_t>(i)];
      const double dz = static_cast<double>(zi) - st.y(i);
      for (int r = 0; r < i; ++r) below(r) += L(i, r) * dz;
      enum_level(st, i - 1, next_sq);
    }
  }
}

}  // namespace

std::vector<LatticeVector> enumerate_in_ball(const Basis& basis, const NormSpec& norm,
                                             const Eigen::VectorXd& center, double radius,
                                             std::int64_t budget) {
  if (center.size() != basis.dim()) throw DimensionMismatch("center has wrong dimension");
  if (!(radius >= 0.0)) throw InputError("enumeration radius must be nonnegative");
  const int n = basis.dim();

  const double r_filter = radius + 1e-9;
  const double r2 = euclidean_cover_radius(norm, r_filter, n) + 1e-9;

  Eigen::LLT<Eigen::MatrixXd> llt(basis.gram());
  if (llt.info() != Eigen::Success)
    throw SingularBasis("gram matrix is not positive definite");
  const Eigen::MatrixXd L = llt.matrixL();

  EnumState st;
  st.L = &L;
  st.y = basis.solve(center);
  st.r2sq = r2 * r2;
  st.budget = budget;
  st.z = Eigen::VectorXi::Zero(n);
  st.shifts.assign(static_cast<std::size_t>(n), Eigen::VectorXd::Zero(n));
  std::vector<Eigen::VectorXi> raw;
  st.out = &raw;
  enum_level(st, n - 1, 0.0);

  // Exact lp filter on coordinates.
  std::vector<LatticeVector> out;
  out.reserve(raw.size());
  const auto pk = norm.pkind();
  for (const auto& z : raw) {
    Eigen::VectorXd coords = basis.coords_of(z);
    Eigen::VectorXd diff = coords - center;
    const double d = power_sum_root(
        norm, kernels::power_sum(pk, diff.data(), static_cast<std::size_t>(n)));
    if (d <= r_filter) out.push_back(LatticeVector{z, std::move(coords)});
  }
  std::sort(out.begin(), out.end(),
            [](const LatticeVector& a, const LatticeVector& b) {
              return coeffs_less(a.coeffs, b.coeffs);
            });
  return out;
}

FirstMinimum first_minimum(const Basis& basis, const NormSpec& norm, std::int64_t budget) {
  const int n = basis.dim();
  double radius = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd col = basis.matrix().col(i);
    radius = std::min(radius, norm_eval(norm, col));
  }
  const auto pts = enumerate_in_ball(basis, norm, Eigen::VectorXd::Zero(n), radius, budget);

  FirstMinimum fm;
  fm.value = std::numeric_limits<double>::infinity();
  std::vector<const LatticeVector*> winners;
  for (const auto& v : pts) {
    if (v.coeffs.isZero()) continue;
    const double val = norm_eval(norm, v.coords);
    if (val < fm.value - 1e-12 * std::max(1.0, fm.value)) {
      fm.value = val;
      winners.clear();
      winners.push_back(&v);
    } else if (val <= fm.value + 1e-12 * std::max(1.0, fm.value)) {
      fm.value = std::min(fm.value, val);
      winners.push_back(&v);
    }
  }
  if (winners.empty()) throw Error("first_minimum: no nonzero vector found (internal)");

  // Canonical witness: flip sign so the first nonzero coefficient is
  // positive, then take the lexicographically smallest.
  auto canonical = [](const LatticeVector& v) {
    for (int i = 0; i < v.coeffs.size(); ++i) {
      if (v.coeffs(i) != 0) {
        if (v.coeffs(i) < 0) return LatticeVector{-v.coeffs, -v.coords};
        break;
      }
    }
    return v;
  };
  LatticeVector best = canonical(*winners.front());
  for (std::size_t i = 1; i < winners.size(); ++i) {
    LatticeVector c = canonical(*winners[i]);
    if (coeffs_less(c.coeffs, best.coeffs)) best = std::move(c);
  }
  fm.witness = std::move(best);
  return fm;
}

double covering_radius_upper(const Basis& basis, const NormSpec& norm) {
  double sum = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    Eigen::VectorXd col = basis.matrix().col(i);
    sum += norm_eval(norm, col);
  }
  return 0.5 * sum;
}

LatticeParams compute_params(const Basis& basis, const NormSpec& norm, std::int64_t budget) {
  LatticeParams p;
  FirstMinimum fm = first_minimum(basis, norm, budget);
  p.lambda1 = fm.value;
  p.lambda1_witness = std::move(fm.witness);
  p.mu_upper = covering_radius_upper(basis, norm);
  return p;
}

}  // namespace vorlat
