// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Weak submodularity: the submodularity ratio, R^2 subset selection for
// linear regression and spectral bounds on the ratio.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "submod/errors.hpp"
#include "submod/maximize.hpp"
#include "submod/objectives.hpp"
#include "submod/oracle.hpp"
#include "submod/random.hpp"
#include "submod/subset.hpp"

namespace submod {

// Binomial coefficient as a double; exact for the ranges used in guards.
inline double Binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

// Calls fn on every subset of `pool` with at most `max_size` elements, in
// lexicographic order of the sorted pool (the empty set first).
inline void ForEachSubsetUpTo(const std::vector<int>& pool, int universe, int max_size,
                              const std::function<void(const Subset&)>& fn) {
  Subset cur(universe);
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    fn(cur);
    if (cur.Count() == max_size) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      cur.Insert(pool[i]);
      rec(i + 1);
      cur.Erase(pool[i]);
    }
  };
  rec(0);
}

struct RatioReport {
  int r = 0;
  double gamma = 1.0;
  // Minimizing pair: conditioning set L and the added set D = S \ L.
  Subset l;
  Subset d;
  double guarantee() const { return 1.0 - std::exp(-gamma); }
};

inline constexpr double kRatioMaxCombinations = 1e7;

// gamma_r = min over disjoint (L, D), |L| <= r, 1 <= |D| <= r, of
//   sum_{j in D} f(j | L) / f(D | L),
// with 0/0 = 1. Pairs with a zero denominator and a positive numerator are
// unbounded and skipped; a negative denominator raises NegativeDenominator.
inline RatioReport SubmodularityRatio(const SetFunctionOracle& f, int r,
                                      double max_combinations = kRatioMaxCombinations) {
  const int n = f.size();
  if (r < 1) Fail(ErrorCode::kBadParams, "ratio order r must be >= 1");
  double combos = 0.0;
  for (int l = 0; l <= std::min(r, n); ++l) {
    double inner = 0.0;
    for (int d = 1; d <= std::min(r, n - l); ++d) inner += Binomial(n - l, d);
    combos += Binomial(n, l) * inner;
  }
  if (combos > max_combinations) {
    Fail(ErrorCode::kTooLarge, "submodularity ratio needs " + std::to_string(combos) +
                                   " pairs, above the guard");
  }

  RatioReport report;
  report.r = r;
  report.l = Subset(n);
  report.d = Subset(n);
  bool have = false;
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[i] = i;

  ForEachSubsetUpTo(all, n, r, [&](const Subset& l) {
    const double fl = f(l);
    const std::vector<int> rest = l.Complement().Elements();
    ForEachSubsetUpTo(rest, n, r, [&](const Subset& d) {
      if (d.Empty()) return;
      double num = 0.0;
      d.ForEach([&](int j) { num += f(l.With(j)) - fl; });
      const double fld = f(l.Union(d));
      const double den = fld - fl;
      const double tol = Tolerance(fld, fl);
      double ratio;
      if (std::abs(den) <= tol) {
        if (std::abs(num) <= tol * d.Count()) {
          ratio = 1.0;
        } else if (num > 0) {
          return;
        } else {
          ratio = -std::numeric_limits<double>::infinity();
        }
      } else if (den < 0) {
        Fail(ErrorCode::kNegativeDenominator,
             "f(D|L) < 0 for L=" + l.ToString() + ", D=" + d.ToString());
      } else {
        ratio = num / den;
      }
      if (!have || ratio < report.gamma) {
        have = true;
        report.gamma = ratio;
        report.l = l;
        report.d = d;
      }
    });
  });
  return report;
}

// Covariance C of the observations and covariances b with the predictor.
struct RegressionInstance {
  Eigen::MatrixXd c;
  Eigen::VectorXd b;
  // Unit diagonal, so R^2 lies in [0, 1].
  bool normalized = false;

  int size() const { return static_cast<int>(b.size()); }

  void Validate() const {
    const auto n = b.size();
    if (n < 1 || c.rows() != n || c.cols() != n) {
      Fail(ErrorCode::kBadParams, "inconsistent regression instance dimensions");
    }
    if (!c.isApprox(c.transpose(), 1e-12)) Fail(ErrorCode::kBadParams, "C must be symmetric");
    if (c.llt().info() != Eigen::Success) {
      Fail(ErrorCode::kSingularSubmatrix, "C must be positive definite");
    }
    if (normalized) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(c(i, i) - 1.0) > 1e-12) Fail(ErrorCode::kBadParams, "normalized C needs unit diagonal");
      }
    }
  }
};

// R^2(S) = b_S' C_S^-1 b_S; zero for the empty set.
inline double RSquared(const RegressionInstance& inst, const Subset& s) {
  if (s.universe_size() != inst.size()) Fail(ErrorCode::kOutOfRange, "subset is not over the regressors");
  const std::vector<int> idx = s.Elements();
  if (idx.empty()) return 0.0;
  const Eigen::LLT<Eigen::MatrixXd> chol(PrincipalSubmatrix(inst.c, idx));
  if (chol.info() != Eigen::Success) {
    Fail(ErrorCode::kSingularSubmatrix, "C_S not positive definite for S=" + s.ToString());
  }
  const Eigen::VectorXd bs = SubVector(inst.b, idx);
  return bs.dot(chol.solve(bs));
}

inline SetFunctionOracle MakeRSquaredOracle(const RegressionInstance& inst, bool memoize = true) {
  inst.Validate();
  auto shared = std::make_shared<const RegressionInstance>(inst);
  return SetFunctionOracle(
      inst.size(), [shared](const Subset& s) { return RSquared(*shared, s); }, memoize);
}

struct RegressionParams {
  int n = 8;
  int factors = 3;
  // R^2 of the full model.
  double r2_full = 0.8;
};

// C from a factor model F F' + D rescaled to unit diagonal; b = C beta with
// beta Gaussian, scaled so that R^2 of the full set equals r2_full.
inline RegressionInstance GenerateRegression(const RegressionParams& p, uint64_t seed) {
  if (p.n < 1 || p.factors < 0 || !(p.r2_full > 0 && p.r2_full <= 1)) {
    Fail(ErrorCode::kBadParams, "regression generator needs n >= 1, factors >= 0, 0 < r2 <= 1");
  }
  Rng rng(seed);
  Eigen::MatrixXd f(p.n, std::max(p.factors, 1));
  f.setZero();
  for (int i = 0; i < p.n; ++i) {
    for (int j = 0; j < p.factors; ++j) f(i, j) = rng.Normal();
  }
  Eigen::MatrixXd c = f * f.transpose();
  for (int i = 0; i < p.n; ++i) c(i, i) += rng.Uniform(0.2, 1.0);
  Eigen::VectorXd scale = c.diagonal().cwiseSqrt().cwiseInverse();
  c = scale.asDiagonal() * c * scale.asDiagonal();
  for (int i = 0; i < p.n; ++i) c(i, i) = 1.0;
  c = 0.5 * (c + c.transpose());

  Eigen::VectorXd beta(p.n);
  for (int i = 0; i < p.n; ++i) beta(i) = rng.Normal();
  const double explained = beta.dot(c * beta);
  beta *= std::sqrt(p.r2_full / explained);
  RegressionInstance inst{c, c * beta, true};
  return inst;
}

enum class RegressionMethod { kForward, kOmp, kOblivious };

inline const char* RegressionMethodName(RegressionMethod m) {
  switch (m) {
    case RegressionMethod::kForward: return "fs";
    case RegressionMethod::kOmp: return "omp";
    case RegressionMethod::kOblivious: return "obl";
  }
  return "?";
}

// Residual correlations b_i - C_{i,S} C_S^-1 b_S for every i.
inline Eigen::VectorXd ResidualCorrelation(const RegressionInstance& inst, const Subset& s) {
  const std::vector<int> idx = s.Elements();
  if (idx.empty()) return inst.b;
  const Eigen::LLT<Eigen::MatrixXd> chol(PrincipalSubmatrix(inst.c, idx));
  const Eigen::VectorXd coef = chol.solve(SubVector(inst.b, idx));
  Eigen::VectorXd out = inst.b;
  for (int i = 0; i < inst.size(); ++i) {
    for (std::size_t a = 0; a < idx.size(); ++a) out(i) -= inst.c(i, idx[a]) * coef(static_cast<Eigen::Index>(a));
  }
  return out;
}

// FS adds argmax R^2(S + e); OMP adds argmax of the squared residual
// correlation; OBL takes the k largest |b_i| with no refit. Ties go to the
// lowest index. The guarantee field is left at 0 since it depends on the
// instance's ratio.
inline SolveResult SelectSubset(const RegressionInstance& inst, int k, RegressionMethod method) {
  const int n = inst.size();
  if (k < 1 || k > n) Fail(ErrorCode::kBadK, "k must lie in [1, N]");
  SolveResult result;
  result.solver = RegressionMethodName(method);
  Subset s(n);
  double current = 0.0;

  if (method == RegressionMethod::kOblivious) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(inst.b(a)) > std::abs(inst.b(b)); });
    for (int i = 0; i < k; ++i) {
      s.Insert(order[i]);
      const double next = RSquared(inst, s);
      result.trace.push_back({order[i], next - current});
      current = next;
    }
  } else {
    for (int step = 0; step < k; ++step) {
      int best = -1;
      double best_score = 0.0;
      const Eigen::VectorXd resid =
          method == RegressionMethod::kOmp ? ResidualCorrelation(inst, s) : Eigen::VectorXd();
      for (int e = 0; e < n; ++e) {
        if (s.Contains(e)) continue;
        const double score =
            method == RegressionMethod::kForward ? RSquared(inst, s.With(e)) : resid(e) * resid(e);
        if (best < 0 || score > best_score) {
          best = e;
          best_score = score;
        }
      }
      s.Insert(best);
      const double next = RSquared(inst, s);
      result.trace.push_back({best, next - current});
      current = next;
    }
  }
  result.value = current;
  result.selected = std::move(s);
  return result;
}

struct MinEigenResult {
  double lambda = 0.0;
  Subset argmin;
};

inline constexpr double kSpectralMaxSubsets = 1e6;

// lambda(C, k) = min over |S| = k of lambda_min(C_S).
inline MinEigenResult MinEigenOverSubsets(const Eigen::MatrixXd& c, int k) {
  const int n = static_cast<int>(c.rows());
  if (k < 1 || k > n) Fail(ErrorCode::kBadK, "subset size must lie in [1, N]");
  if (Binomial(n, k) > kSpectralMaxSubsets) Fail(ErrorCode::kTooLarge, "too many principal submatrices");
  MinEigenResult out;
  bool have = false;
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[i] = i;
  ForEachSubsetUpTo(all, n, k, [&](const Subset& s) {
    if (s.Count() != k) return;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(PrincipalSubmatrix(c, s.Elements()),
                                                             Eigen::EigenvaluesOnly);
    const double lam = es.eigenvalues()(0);
    if (!have || lam < out.lambda) {
      have = true;
      out.lambda = lam;
      out.argmin = s;
    }
  });
  return out;
}

struct SpectralBounds {
  int k = 0;
  double lambda_k = 0.0;
  // lambda(C, 2k); NaN when 2k > N.
  double lambda_2k = std::numeric_limits<double>::quiet_NaN();
  // lambda(4C, 2k) = 4 lambda(C, 2k), the forward-selection ratio as printed.
  double gamma_fs_printed = std::numeric_limits<double>::quiet_NaN();
  // lambda(C, 2k) itself, the unscaled reading.
  double gamma_fs_unscaled = std::numeric_limits<double>::quiet_NaN();
  // lambda(C, 2k)^2 for OMP.
  double gamma_omp = std::numeric_limits<double>::quiet_NaN();
};

inline SpectralBounds SpectralGammaBounds(const RegressionInstance& inst, int k) {
  const int n = inst.size();
  if (k < 1 || k > n) Fail(ErrorCode::kBadK, "k must lie in [1, N]");
  if (2 * k <= n && Binomial(n, 2 * k) > kSpectralMaxSubsets) {
    Fail(ErrorCode::kTooLarge, "too many size-2k principal submatrices");
  }
  SpectralBounds out;
  out.k = k;
  out.lambda_k = MinEigenOverSubsets(inst.c, k).lambda;
  if (2 * k <= n) {
    out.lambda_2k = MinEigenOverSubsets(inst.c, 2 * k).lambda;
    out.gamma_fs_printed = 4.0 * out.lambda_2k;
    out.gamma_fs_unscaled = out.lambda_2k;
    out.gamma_omp = out.lambda_2k * out.lambda_2k;
  }
  return out;
}

}  // namespace submod
