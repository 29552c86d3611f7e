#include "opf/linsolve.hpp"

namespace opf {

std::optional<LinearSolution> solveLinear(RatMatrix A, std::vector<Rat> b) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  std::vector<std::size_t> pivotCol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && A[p][c].isZero()) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    std::swap(b[p], b[r]);
    const Rat inv = Rat(1) / A[r][c];
    for (auto& e : A[r]) e *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c].isZero()) continue;
      const Rat f = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivotCol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].isZero()) return std::nullopt;

  LinearSolution sol;
  sol.particular.assign(cols, Rat(0));
  std::vector<bool> isPivot(cols, false);
  for (std::size_t i = 0; i < r; ++i) {
    sol.particular[pivotCol[i]] = b[i];
    isPivot[pivotCol[i]] = true;
  }
  for (std::size_t f = 0; f < cols; ++f) {
    if (isPivot[f]) continue;
    std::vector<Rat> vec(cols, Rat(0));
    vec[f] = Rat(1);
    for (std::size_t i = 0; i < r; ++i) vec[pivotCol[i]] = -A[i][f];
    Rat lead;
    for (const auto& e : vec)
      if (!e.isZero()) {
        lead = e;
        break;
      }
    for (auto& e : vec) e /= lead;
    sol.nullspace.push_back(std::move(vec));
  }
  return sol;
}

}  // namespace opf
