#pragma once
//
// Double Butcher tableau of an IMEX Runge-Kutta scheme. The shipped scheme is
// BPR(3,4,3): globally stiffly accurate, type CK (first implicit row zero).
//

#include <cmath>
#include <string>
#include <vector>

#include "hemo1d/error.hpp"

namespace hemo {

struct ImexTableau {
  std::string name;
  int s = 0;
  std::vector<std::vector<double>> At, Ai;  // explicit (strictly lower), implicit (lower)
  std::vector<double> bt, b, ct, c;

  static ImexTableau bpr343() {
    ImexTableau t;
    t.name = "BPR(3,4,3)";
    t.s = 5;
    t.At = {{0, 0, 0, 0, 0},
            {1, 0, 0, 0, 0},
            {4.0 / 9, 2.0 / 9, 0, 0, 0},
            {1.0 / 4, 0, 3.0 / 4, 0, 0},
            {1.0 / 4, 0, 3.0 / 4, 0, 0}};
    t.Ai = {{0, 0, 0, 0, 0},
            {1.0 / 2, 1.0 / 2, 0, 0, 0},
            {5.0 / 18, -1.0 / 9, 1.0 / 2, 0, 0},
            {1.0 / 2, 0, 0, 1.0 / 2, 0},
            {1.0 / 4, 0, 3.0 / 4, -1.0 / 2, 1.0 / 2}};
    t.bt = {1.0 / 4, 0, 3.0 / 4, 0, 0};
    t.b = t.Ai.back();
    t.ct = {0, 1, 2.0 / 3, 1, 1};
    t.c = {0, 1, 2.0 / 3, 1, 1};
    t.validate();
    return t;
  }

  /// Last rows reproduce the weights.
  bool is_gsa(double tol = 1e-15) const {
    for (int j = 0; j < s; ++j) {
      if (std::abs(Ai[s - 1][j] - b[j]) > tol) return false;
      if (j < s - 1 && std::abs(At[s - 1][j] - bt[j]) > tol) return false;
    }
    return true;
  }

  /// First implicit row vanishes and the remaining diagonal is non-zero.
  bool is_ck() const {
    for (double v : Ai[0])
      if (v != 0.0) return false;
    for (int k = 1; k < s; ++k)
      if (Ai[k][k] == 0.0) return false;
    return true;
  }

  void validate(double tol = 1e-14) const {
    auto bad = [](const std::string& m) { throw ParameterError("ImexTableau: " + m); };
    if (s < 1 || static_cast<int>(At.size()) != s || static_cast<int>(Ai.size()) != s ||
        static_cast<int>(bt.size()) != s || static_cast<int>(b.size()) != s ||
        static_cast<int>(ct.size()) != s || static_cast<int>(c.size()) != s)
      bad("inconsistent sizes");
    for (int k = 0; k < s; ++k) {
      double se = 0.0, si = 0.0;
      for (int j = 0; j < s; ++j) {
        if (j >= k && At[k][j] != 0.0) bad("explicit part must be strictly lower triangular");
        if (j > k && Ai[k][j] != 0.0) bad("implicit part must be lower triangular");
        se += At[k][j];
        si += Ai[k][j];
      }
      if (std::abs(se - ct[k]) > tol) bad("explicit row sums differ from c~");
      if (std::abs(si - c[k]) > tol) bad("implicit row sums differ from c");
    }
  }
};

}  // namespace hemo
