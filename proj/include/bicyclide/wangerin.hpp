#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "bicyclide/elliptic.hpp"

namespace bicyclide {

struct EdgeValue {
  double w;
  double wprime;
};

/// One Lame-Wangerin eigenpair W_nu^n(s,k) with eigenvalue Lambda.
///
/// The interior function is stored as W(s) = cos^{nu+1}(omega s) Y(sin(omega s)),
/// Y expanded in Gegenbauer polynomials orthonormal for (1-u^2)^{nu+1/2}.
/// Normalization: unit L^2 norm on (-K,K) and c_0 > 0. The edge profile w(r)
/// satisfies W(K+ir) = C w(r) with d_0 = 1.
class EigenSolution {
 public:
  /// Rebuilds the derived data (series, profile checkpoints) from a stored
  /// eigenvalue and coefficient vector.
  EigenSolution(double nu, int n, const Modulus& modulus, double lambda,
                std::vector<double> gegenbauer);

  double nu() const { return nu_; }
  int n() const { return n_; }
  const Modulus& modulus() const { return modulus_; }
  double lambda() const { return lambda_; }
  const std::vector<double>& gegenbauer() const { return gegenbauer_; }
  const std::vector<double>& frobenius_c() const { return frobenius_c_; }
  const std::vector<double>& edge_profile_d() const { return edge_d_; }

  /// Start of the numerically integrated part of the edge profile.
  double series_radius() const { return r0_; }

  struct Checkpoint {
    double r, w, wprime;
  };
  const std::vector<Checkpoint>& checkpoints() const { return checkpoints_; }

 private:
  double nu_;
  int n_;
  Modulus modulus_;
  double lambda_;
  std::vector<double> gegenbauer_;
  std::vector<double> frobenius_c_;
  std::vector<double> edge_d_;
  double r0_;
  std::vector<Checkpoint> checkpoints_;
};

using EigenSolutionPtr = std::shared_ptr<const EigenSolution>;

/// Laurent coefficients of ns^2(x,k) = x^-2 + sum_{j>=0} e_j x^{2j}.
std::vector<double> ns2_laurent(double k, int count);

/// Solves for W_nu^0 ... W_nu^{n_max} in one Galerkin pass.
std::vector<EigenSolutionPtr> solve_family(double nu, int n_max, const Modulus& modulus,
                                           double tol = 1e-12);

EigenSolutionPtr solve_eigen(double nu, int n, const Modulus& modulus, double tol = 1e-12);

double eval_interior(const EigenSolution& sol, double s);

EdgeValue eval_edge_profile(const EigenSolution& sol, double r);

/// w(K'-t) w'(K'+t) + w'(K'-t) w(K'+t); independent of t.
double wronskian_at(const EigenSolution& sol, double t);

/// The Wronskian w_{m,n} = 2 w(K') w'(K') of the degree |m|-1/2 solution.
double wronskian_w(int m, int n, const Modulus& modulus);

/// Thread-safe cache of eigen-solutions keyed on (nu, n, k) rounded to 1e-12.
/// When a directory is configured, records are also persisted as JSON.
class EigenCache {
 public:
  explicit EigenCache(std::string directory = {});

  EigenSolutionPtr get(double nu, int n, const Modulus& modulus);
  std::size_t size() const;
  void clear();
  const std::string& directory() const { return directory_; }

  /// Process-wide cache; directory taken from BICYCLIDE_CACHE_DIR.
  static EigenCache& global();

 private:
  using Key = std::tuple<std::int64_t, int, std::int64_t>;
  static Key make_key(double nu, int n, double k);
  EigenSolutionPtr load(double nu, int n, const Modulus& modulus) const;
  void store(const EigenSolution& sol) const;
  std::string record_path(double nu, int n, double k) const;

  mutable std::shared_mutex mutex_;
  std::map<Key, EigenSolutionPtr> entries_;
  std::string directory_;
};

/// Serialized record (nu, n, k, lambda, coefficient arrays).
std::string to_json_record(const EigenSolution& sol);
EigenSolution from_json_record(const std::string& text, const Modulus& modulus);

/// Cached W_nu^n via the global cache.
EigenSolutionPtr eigen(double nu, int n, const Modulus& modulus);

}  // namespace bicyclide
