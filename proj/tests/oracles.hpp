// Independent reference computations with frozen expected values; they share
// no code with the library beyond GMP rationals.
#pragma once

#include <gmpxx.h>

#include <array>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<mpq_class>>;

inline int rank(Mat m) {
  int r = 0;
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (int i = 0; i < rows; ++i)
      if (i != r && m[i][c] != 0) {
        mpq_class f = m[i][c] / m[r][c];
        for (int k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
      }
    ++r;
  }
  return r;
}

// Projective line, O(d), internal degree n: two-chart Cech complex.
// Chart 0 holds x^n (n >= 0); chart infinity holds y^m e with m = d - n >= 0;
// both map to x^n on the overlap, with a sign on the first.
inline std::array<int, 2> p1_twist(int d, int n) {
  std::vector<mpq_class> row;
  if (n >= 0) row.push_back(-1);
  if (d - n >= 0) row.push_back(1);
  int c0 = static_cast<int>(row.size());
  int r = c0 ? rank(Mat{row}) : 0;
  return {c0 - r, 1 - r};
}

// Projective plane, O(d), torus weight (a, b): three-chart Cech complex on the
// monomial X0^(d-a-b) X1^a X2^b.
inline std::array<int, 3> p2_twist(int d, int a, int b) {
  std::array<int, 3> e{d - a - b, a, b};
  auto on = [&](std::vector<int> charts) {
    for (int k = 0; k < 3; ++k) {
      bool inverted = false;
      for (int c : charts) inverted |= c == k;
      if (!inverted && e[k] < 0) return false;
    }
    return true;
  };
  std::vector<std::vector<int>> c0, c1, c2;
  for (int i = 0; i < 3; ++i)
    if (on({i})) c0.push_back({i});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (on({i, j})) c1.push_back({i, j});
  c2.push_back({0, 1, 2});
  auto boundary = [](const std::vector<std::vector<int>>& src, const std::vector<std::vector<int>>& tgt) {
    Mat m(tgt.size(), std::vector<mpq_class>(src.size(), 0));
    for (size_t t = 0; t < tgt.size(); ++t)
      for (size_t s = 0; s < src.size(); ++s)
        for (size_t drop = 0; drop < tgt[t].size(); ++drop) {
          std::vector<int> face = tgt[t];
          face.erase(face.begin() + drop);
          if (face == src[s]) m[t][s] += (drop % 2 == 0) ? 1 : -1;
        }
    return m;
  };
  int r0 = c0.empty() || c1.empty() ? 0 : rank(boundary(c0, c1));
  int r1 = c1.empty() ? 0 : rank(boundary(c1, c2));
  int n0 = static_cast<int>(c0.size()), n1 = static_cast<int>(c1.size());
  return {n0 - r0, n1 - r0 - r1, 1 - r1};
}

// Line with a doubled origin, structure sheaf, degree n: k[x] + k[x] -> k[x,1/x].
inline std::array<int, 2> doubled_line(int n) {
  Mat m{{}};
  if (n >= 0) m[0] = {1, -1};
  int c0 = static_cast<int>(m[0].size());
  int r = c0 ? rank(m) : 0;
  return {c0 - r, 1 - r};
}

// Pseudo-circle a, b < c, d with constant stalks: 4 points, 4 edges.
inline std::array<int, 2> pseudo_circle() {
  // Columns a, b, c, d; rows a<c, a<d, b<c, b<d; (dv)_{x<y} = v_y - v_x.
  Mat m{{-1, 0, 1, 0}, {-1, 0, 0, 1}, {0, -1, 1, 0}, {0, -1, 0, 1}};
  int r = rank(m);
  return {4 - r, 4 - r};
}

}  // namespace oracle
