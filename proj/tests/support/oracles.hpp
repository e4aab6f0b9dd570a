#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dp7/sections.hpp"

namespace dp7::testsupport {

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Independent enumeration by plain nested loops, sorted with the tuple
// ordering. The production enumceration must agree element for element.
inline std::vector<ExponentTuple> brute_force_basis(int N) {
  std::vector<ExponentTuple> out;
  for (int j0 = N; j0 >= 0; --j0)
    for (int k0 = N; k0 >= 0; --k0)
      for (int i0 = 0; i0 <= N; ++i0)
        for (int i1 = 0; i0 + i1 <= N; ++i1) {
          ExponentTuple t;
          t.N = N;
          t.i0 = i0;
          t.i1 = i1;
          t.i2 = N - i0 - i1;
          t.j0 = j0;
          t.j1 = N - j0;
          t.k0 = k0;
          t.k2 = N - k0;
          out.push_back(t);
        }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dp7::testsupport
