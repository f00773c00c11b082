#include "gkz/lp.hpp"

namespace gkz {

std::optional<RatVec> feasible_point(const RatMatrix& ineq, const RatVec& ineq_rhs, const RatMatrix& eq,
                                     const RatVec& eq_rhs) {
  const std::size_t n = ineq.rows() > 0 ? ineq.cols() : eq.cols();
  const std::size_t mi = ineq.rows(), me = eq.rows();
  if (ineq_rhs.size() != mi || eq_rhs.size() != me) throw InputError("feasible_point: right-hand side size mismatch");
  if ((mi > 0 && ineq.cols() != n) || (me > 0 && eq.cols() != n)) throw InputError("feasible_point: column mismatch");
  const std::size_t m = mi + me;
  if (m == 0) return RatVec(n);

  // Columns: x+ (n), x- (n), surplus (mi), artificial (m), rhs.
  const std::size_t art = 2 * n + mi;
  const std::size_t ncols = art + m;
  RatMatrix t(m + 1, ncols + 1);
  for (std::size_t r = 0; r < m; ++r) {
    const bool is_ineq = r < mi;
    for (std::size_t c = 0; c < n; ++c) {
      Rat a = is_ineq ? ineq(r, c) : eq(r - mi, c);
      t(r, c) = a;
      t(r, n + c) = -a;
    }
    if (is_ineq) t(r, 2 * n + r) = -1;
    t(r, ncols) = is_ineq ? ineq_rhs[r] : eq_rhs[r - mi];
    if (t(r, ncols) < 0)
      for (std::size_t c = 0; c <= ncols; ++c) t(r, c) = -t(r, c);
    t(r, art + r) = 1;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = art + r;
  for (std::size_t c = 0; c <= ncols; ++c) {
    if (c >= art && c < ncols) continue;
    Rat s = 0;
    for (std::size_t r = 0; r < m; ++r) s += t(r, c);
    t(m, c) = -s;
  }

  for (;;) {
    std::size_t enter = ncols;
    for (std::size_t c = 0; c < ncols; ++c)
      if (t(m, c) < 0) {
        enter = c;
        break;
      }
    if (enter == ncols) break;
    std::size_t leave = m;
    Rat best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t(r, enter) <= 0) continue;
      Rat ratio = t(r, ncols) / t(r, enter);
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot occur for the auxiliary objective
    Rat piv = t(leave, enter);
    for (std::size_t c = 0; c <= ncols; ++c) t(leave, c) /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave || t(r, enter) == 0) continue;
      Rat f = t(r, enter);
      for (std::size_t c = 0; c <= ncols; ++c) t(r, c) -= f * t(leave, c);
    }
    basis[leave] = enter;
  }
  if (t(m, ncols) != 0) return std::nullopt;

  RatVec y(ncols);
  for (std::size_t r = 0; r < m; ++r) y[basis[r]] = t(r, ncols);
  RatVec x(n);
  for (std::size_t c = 0; c < n; ++c) x[c] = y[c] - y[n + c];
  return x;
}

}  // namespace gkz
