#include <gtest/gtest.h>

#include <vector>

#include "hemo1d/tableau.hpp"

using namespace hemo;

namespace {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec mul(const Mat& A, const Vec& v) {
  Vec r(A.size(), 0.0);
  for (std::size_t i = 0; i < A.size(); ++i) r[i] = dot(A[i], v);
  return r;
}

Vec hadamard(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

}  // namespace

TEST(Bpr343, ShapeAndStructure) {
  const ImexTableau t = ImexTableau::bpr343();
  EXPECT_EQ(t.s, 5);
  EXPECT_TRUE(t.is_gsa());
  EXPECT_TRUE(t.is_ck());
  EXPECT_NO_THROW(t.validate());
  for (int k = 0; k < t.s; ++k) EXPECT_EQ(t.Ai[k][k], k == 0 ? 0.0 : 0.5);
}

TEST(Bpr343, ThirdOrderConditionsIncludingCoupling) {
  const ImexTableau t = ImexTableau::bpr343();
  const double tol = 1e-14;
  const std::vector<const Vec*> weights{&t.bt, &t.b};
  const std::vector<const Vec*> nodes{&t.ct, &t.c};
  const std::vector<const Mat*> mats{&t.At, &t.Ai};
  for (const Vec* b : weights) {
    EXPECT_NEAR(dot(*b, Vec(t.s, 1.0)), 1.0, tol);
    for (const Vec* c : nodes) {
      EXPECT_NEAR(dot(*b, *c), 0.5, tol);
      for (const Vec* d : nodes) EXPECT_NEAR(dot(*b, hadamard(*c, *d)), 1.0 / 3.0, tol);
      for (const Mat* A : mats) EXPECT_NEAR(dot(*b, mul(*A, *c)), 1.0 / 6.0, tol);
    }
  }
}

TEST(Bpr343, FourthOrderFailsSoTheOrderIsExactlyThree) {
  const ImexTableau t = ImexTableau::bpr343();
  const double c3 = dot(t.b, hadamard(t.c, hadamard(t.c, t.c)));
  EXPECT_GT(std::abs(c3 - 0.25) + std::abs(dot(t.b, mul(t.Ai, mul(t.Ai, t.c))) - 1.0 / 24.0), 1e-6);
}

TEST(ImexTableau, ValidationRejectsBrokenTables) {
  ImexTableau t = ImexTableau::bpr343();
  t.At[1][1] = 0.5;
  EXPECT_THROW(t.validate(), ParameterError);
  t = ImexTableau::bpr343();
  t.Ai[1][2] = 0.1;
  EXPECT_THROW(t.validate(), ParameterError);
  t = ImexTableau::bpr343();
  t.c[2] = 0.5;
  EXPECT_THROW(t.validate(), ParameterError);
  t = ImexTableau::bpr343();
  t.bt.pop_back();
  EXPECT_THROW(t.validate(), ParameterError);
  t = ImexTableau::bpr343();
  t.b[4] = 0.4;
  EXPECT_FALSE(t.is_gsa());
  t = ImexTableau::bpr343();
  t.Ai[0][0] = 0.1;
  EXPECT_FALSE(t.is_ck());
}
