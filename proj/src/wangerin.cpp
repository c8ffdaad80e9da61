#include "bicyclide/wangerin.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "bicyclide/errors.hpp"
#include "bicyclide/quadrature.hpp"

namespace bicyclide {

namespace {

constexpr int kMaxSeriesTerms = 200;
constexpr int kMaxBasis = 1600;

void check_nu(double nu) {
  if (!(nu >= -0.5)) {
    throw DomainError("Lame-Wangerin degree requires nu >= -1/2, got " + std::to_string(nu));
  }
}

// Orthonormal Gegenbauer polynomials for the weight (1-u^2)^{lam-1/2}.
struct GegenbauerBasis {
  double p0;
  std::vector<double> b;  // b[j], j >= 1: three-term coefficients

  GegenbauerBasis(double lam, int size) : b(size + 1, 0.0) {
    p0 = 1.0 / std::sqrt(std::exp(0.5 * std::log(std::numbers::pi) +
                                  std::lgamma(lam + 0.5) - std::lgamma(lam + 1.0)));
    for (int j = 1; j <= size; ++j) {
      b[j] = std::sqrt(j * (j + 2.0 * lam - 1.0) / (4.0 * (j + lam) * (j + lam - 1.0)));
    }
  }

  // Values p_0(u) ... p_{size-1}(u).
  void values(double u, int size, double* out) const {
    double prev = 0.0, cur = p0;
    for (int j = 0; j < size; ++j) {
      out[j] = cur;
      const double next = (u * cur - b[j] * prev) / b[j + 1];
      prev = cur;
      cur = next;
    }
  }

  double sum(const std::vector<double>& a, double u) const {
    double prev = 0.0, cur = p0, total = 0.0;
    const int size = static_cast<int>(a.size());
    for (int j = 0; j < size; ++j) {
      total += a[j] * cur;
      const double next = (u * cur - b[j] * prev) / b[j + 1];
      prev = cur;
      cur = next;
    }
    return total;
  }
};

// g = omega^2 tan^2(omega s) - dc^2(s,k) as a function of x = K - |s|.
double potential_g(double x, const Modulus& m) {
  const double w = m.omega(), k = m.k();
  const double k2 = k * k;
  const double wcot = w / std::tan(w * x);
  const double ns = 1.0 / jacobi(x, k).sn;
  if (x < 2e-3) {
    const double x2 = x * x;
    const double diff = -x * (w * w / 3.0 + (1.0 + k2) / 6.0) -
                        x * x2 * (w * w * w * w / 45.0 + (7.0 - 22.0 * k2 + 7.0 * k2 * k2) / 360.0);
    return diff * (wcot + ns);
  }
  return wcot * wcot - ns * ns;
}

struct GalerkinResult {
  std::vector<double> eigenvalues;              // sorted, index = n
  std::vector<std::vector<double>> vectors;     // full coefficient vectors
};

GalerkinResult galerkin(double nu, int size, int n_max, const Modulus& m) {
  const double alpha = nu + 1.0;
  const double w2 = m.omega() * m.omega();
  const double nn1 = nu * (nu + 1.0);
  const int nq = size + 40;
  const QuadratureRule rule = gauss_jacobi(nq, alpha - 0.5, alpha - 0.5);
  const GegenbauerBasis basis(alpha, size);

  Eigen::MatrixXd P(nq, size);
  Eigen::VectorXd wv(nq);
  std::vector<double> row(size);
  for (int q = 0; q < nq; ++q) {
    const double u = rule.nodes[q];
    const double x = std::acos(std::min(std::abs(u), 1.0)) / m.omega();
    wv(q) = rule.weights[q] * (nn1 * potential_g(x, m) - alpha * w2);
    basis.values(u, size, row.data());
    for (int j = 0; j < size; ++j) P(q, j) = row[j];
  }

  GalerkinResult result;
  std::vector<std::pair<double, std::vector<double>>> all;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> idx;
    for (int j = parity; j < size; j += 2) idx.push_back(j);
    const int nb = static_cast<int>(idx.size());
    Eigen::MatrixXd Pb(nq, nb);
    for (int a = 0; a < nb; ++a) Pb.col(a) = P.col(idx[a]);
    Eigen::MatrixXd H = -(Pb.transpose() * wv.asDiagonal() * Pb);
    for (int a = 0; a < nb; ++a) {
      const double j = idx[a];
      H(a, a) += w2 * j * (j + 2.0 * alpha);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw NumericError("Galerkin eigen-decomposition failed");
    const int keep = std::min(nb, n_max / 2 + 2);
    for (int e = 0; e < keep; ++e) {
      std::vector<double> full(size, 0.0);
      for (int a = 0; a < nb; ++a) full[idx[a]] = es.eigenvectors()(a, e);
      all.emplace_back(es.eigenvalues()(e), std::move(full));
    }
  }
  std::sort(all.begin(), all.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  for (int n = 0; n <= n_max && n < static_cast<int>(all.size()); ++n) {
    // Sturm-Liouville ordering alternates parity.
    const auto& v = all[n].second;
    const int parity = n % 2;
    double off = 0.0;
    for (int j = 1 - parity; j < size; j += 2) off = std::max(off, std::abs(v[j]));
    if (off != 0.0) throw NumericError("Galerkin eigenvalue ordering broke parity alternation");
    result.eigenvalues.push_back(all[n].first);
    result.vectors.push_back(v);
  }
  return result;
}

double tail_size(const std::vector<double>& v) {
  double t = 0.0;
  const int size = static_cast<int>(v.size());
  for (int j = std::max(0, size - 8); j < size; ++j) t = std::max(t, std::abs(v[j]));
  return t;
}

// Series sum_{l} coef[l] r^{alpha+2l} and its derivative.
EdgeValue power_series(const std::vector<double>& coef, double alpha, double r) {
  const double r2 = r * r;
  double w = 0.0, dw = 0.0, pw = 1.0;
  for (std::size_t l = 0; l < coef.size(); ++l) {
    w += coef[l] * pw;
    dw += coef[l] * (alpha + 2.0 * l) * pw;
    pw *= r2;
  }
  const double ra = std::pow(r, alpha);
  return {w * ra, dw * ra / r};
}

// Frobenius coefficients of y'' = (nn1 (x^-2 + sum e_j x^2j) + shift) y with
// exponent nu+1, leading coefficient `lead`, stopping when terms at `radius`
// fall below 1e-18 relative.
std::vector<double> frobenius(double nu, double shift, const std::vector<double>& e,
                              double lead, double radius) {
  const double nn1 = nu * (nu + 1.0);
  std::vector<double> c{lead};
  const double r2 = radius * radius;
  double pw = 1.0;
  int small = 0;
  for (int L = 1; L < kMaxSeriesTerms; ++L) {
    double acc = shift * c[L - 1];
    for (int j = 0; j < L; ++j) acc += nn1 * e[j] * c[L - 1 - j];
    c.push_back(acc / (2.0 * L * (2.0 * L + 2.0 * nu + 1.0)));
    pw *= r2;
    small = std::abs(c[L]) * pw < 1e-18 * std::abs(lead) ? small + 1 : 0;
    if (small >= 2) return c;
  }
  throw NumericError("Frobenius series did not converge within " +
                     std::to_string(kMaxSeriesTerms) + " terms");
}

using State = std::array<double, 2>;

void integrate_profile(double nu, double lambda, double kp, State& y, double from,
                       double to) {
  if (to == from) return;
  namespace odeint = boost::numeric::odeint;
  const double nn1 = nu * (nu + 1.0);
  auto rhs = [&](const State& v, State& dv, double r) {
    const JacobiValues j = jacobi(r, kp);
    const double cs = j.cn / j.sn;
    dv[0] = v[1];
    dv[1] = (lambda + nn1 * cs * cs) * v[0];
  };
  auto stepper = odeint::make_controlled(1e-300, 1e-14,
                                         odeint::runge_kutta_fehlberg78<State>());
  const double dt = 0.01 * (to - from);
  odeint::integrate_adaptive(stepper, rhs, y, from, to, dt);
}

}  // namespace

std::vector<double> ns2_laurent(double k, int count) {
  const double k2 = k * k;
  const double e1 = (2.0 - k2) / 3.0, e2 = (2.0 * k2 - 1.0) / 3.0, e3 = -(1.0 + k2) / 3.0;
  const double g2 = 2.0 * (e1 * e1 + e2 * e2 + e3 * e3);
  const double g3 = 4.0 * e1 * e2 * e3;
  // Weierstrass coefficients: wp(x) = x^-2 + sum_{j>=2} c_j x^{2j-2}.
  std::vector<double> c(count + 2, 0.0);
  if (count + 1 >= 2) c[2] = g2 / 20.0;
  if (count + 1 >= 3) c[3] = g3 / 28.0;
  for (int j = 4; j <= count; ++j) {
    double acc = 0.0;
    for (int i = 2; i <= j - 2; ++i) acc += c[i] * c[j - i];
    c[j] = 3.0 / ((2.0 * j + 1.0) * (j - 3.0)) * acc;
  }
  std::vector<double> e(count, 0.0);
  if (count > 0) e[0] = (1.0 + k2) / 3.0;
  for (int j = 1; j < count; ++j) e[j] = c[j + 1];
  return e;
}

EigenSolution::EigenSolution(double nu, int n, const Modulus& modulus, double lambda,
                             std::vector<double> gegenbauer)
    : nu_(nu), n_(n), modulus_(modulus), lambda_(lambda), gegenbauer_(std::move(gegenbauer)) {
  const double alpha = nu + 1.0;
  const double K = modulus.bigK(), Kp = modulus.bigKprime();
  r0_ = 0.25 * std::min(K, Kp);

  const GegenbauerBasis basis(alpha, static_cast<int>(gegenbauer_.size()));
  const double c0 = std::pow(modulus.omega(), alpha) * basis.sum(gegenbauer_, 1.0);
  const std::vector<double> e_int = ns2_laurent(modulus.k(), kMaxSeriesTerms);
  frobenius_c_ = frobenius(nu, -lambda, e_int, c0, r0_);

  std::vector<double> e_edge = ns2_laurent(modulus.kprime(), kMaxSeriesTerms);
  e_edge[0] -= 1.0;  // cs^2 = ns^2 - 1
  edge_d_ = frobenius(nu, lambda, e_edge, 1.0, r0_);

  const EdgeValue start = power_series(edge_d_, alpha, r0_);
  State y{start.w, start.wprime};
  const double h = Kp / 8.0;
  double r = r0_;
  checkpoints_.push_back({r, y[0], y[1]});
  while (r + h < 2.0 * Kp - h) {
    integrate_profile(nu, lambda, modulus.kprime(), y, r, r + h);
    r += h;
    checkpoints_.push_back({r, y[0], y[1]});
  }
}

std::vector<EigenSolutionPtr> solve_family(double nu, int n_max, const Modulus& m,
                                           double tol) {
  check_nu(nu);
  if (n_max < 0) throw DomainError("eigen index n must be >= 0");
  if (!(tol >= 1e-12)) throw DomainError("eigen tolerance must be >= 1e-12");
  const double ratio = m.bigK() / m.bigKprime();
  int size = n_max + 24 + static_cast<int>(std::ceil(40.0 * ratio / std::numbers::pi));
  size += size % 2;

  GalerkinResult prev = galerkin(nu, size, n_max, m);
  std::vector<int> tried{size};
  while (true) {
    const int next_size = size + std::max(24, size / 4);
    if (next_size > kMaxBasis) break;
    GalerkinResult cur = galerkin(nu, next_size, n_max, m);
    tried.push_back(next_size);
    bool ok = static_cast<int>(cur.eigenvalues.size()) == n_max + 1 &&
              static_cast<int>(prev.eigenvalues.size()) == n_max + 1;
    // Rounding in the Galerkin matrix grows with its size.
    const double lam_tol = std::max(tol, 2e-14 * next_size);
    for (int n = 0; ok && n <= n_max; ++n) {
      const double lam = cur.eigenvalues[n];
      ok = std::abs(lam - prev.eigenvalues[n]) <= lam_tol * std::max(1.0, std::abs(lam)) &&
           tail_size(prev.vectors[n]) < 1e-13;
    }
    if (ok) {
      std::vector<EigenSolutionPtr> out;
      const double scale = std::sqrt(m.omega());
      const GegenbauerBasis basis(nu + 1.0, size);
      for (int n = 0; n <= n_max; ++n) {
        std::vector<double> a = prev.vectors[n];
        const double sign = basis.sum(a, 1.0) < 0.0 ? -scale : scale;
        for (double& v : a) v *= sign;
        while (a.size() > 1 && a.back() == 0.0) a.pop_back();
        out.push_back(std::make_shared<const EigenSolution>(nu, n, m, prev.eigenvalues[n],
                                                            std::move(a)));
      }
      return out;
    }
    prev = std::move(cur);
    size = next_size;
  }
  std::ostringstream os;
  os << "Lame-Wangerin eigenvalue not isolated for nu=" << nu << ", n<=" << n_max
     << ", k=" << m.k() << "; basis sizes scanned:";
  for (int t : tried) os << ' ' << t;
  throw NumericError(os.str());
}

EigenSolutionPtr solve_eigen(double nu, int n, const Modulus& modulus, double tol) {
  return solve_family(nu, n, modulus, tol)[n];
}

double eval_interior(const EigenSolution& sol, double s) {
  const Modulus& m = sol.modulus();
  const double K = m.bigK();
  if (!(std::abs(s) < K)) {
    throw DomainError("eval_interior requires s in (-K,K), got s=" + std::to_string(s));
  }
  const double alpha = sol.nu() + 1.0;
  const double x = K - std::abs(s);
  const double cosv = std::sin(m.omega() * x);
  const double u = std::abs(s) < 0.5 * K ? std::sin(m.omega() * s)
                                         : std::copysign(std::cos(m.omega() * x), s);
  const GegenbauerBasis basis(alpha, static_cast<int>(sol.gegenbauer().size()));
  return std::pow(cosv, alpha) * basis.sum(sol.gegenbauer(), u);
}

EdgeValue eval_edge_profile(const EigenSolution& sol, double r) {
  const double Kp = sol.modulus().bigKprime();
  if (!(r > 0.0 && r < 2.0 * Kp)) {
    throw DomainError("eval_edge_profile requires r in (0, 2K'), got r=" + std::to_string(r));
  }
  const double alpha = sol.nu() + 1.0;
  if (r <= sol.series_radius()) return power_series(sol.edge_profile_d(), alpha, r);
  const auto& cps = sol.checkpoints();
  auto it = std::upper_bound(cps.begin(), cps.end(), r,
                             [](double v, const EigenSolution::Checkpoint& c) { return v < c.r; });
  const EigenSolution::Checkpoint& cp = *(it - 1);
  State y{cp.w, cp.wprime};
  integrate_profile(sol.nu(), sol.lambda(), sol.modulus().kprime(), y, cp.r, r);
  return {y[0], y[1]};
}

double wronskian_at(const EigenSolution& sol, double t) {
  const double Kp = sol.modulus().bigKprime();
  const EdgeValue a = eval_edge_profile(sol, Kp - t);
  const EdgeValue b = eval_edge_profile(sol, Kp + t);
  return a.w * b.wprime + a.wprime * b.w;
}

double wronskian_w(int m, int n, const Modulus& modulus) {
  const EigenSolutionPtr sol = eigen(std::abs(m) - 0.5, n, modulus);
  const EdgeValue v = eval_edge_profile(*sol, modulus.bigKprime());
  return 2.0 * v.w * v.wprime;
}

std::string to_json_record(const EigenSolution& sol) {
  nlohmann::json j;
  j["nu"] = sol.nu();
  j["n"] = sol.n();
  j["k"] = sol.modulus().k();
  j["lambda"] = sol.lambda();
  j["gegenbauer"] = sol.gegenbauer();
  j["frobenius_c"] = sol.frobenius_c();
  j["edge_profile_d"] = sol.edge_profile_d();
  return j.dump();
}

EigenSolution from_json_record(const std::string& text, const Modulus& modulus) {
  const nlohmann::json j = nlohmann::json::parse(text);
  return EigenSolution(j.at("nu").get<double>(), j.at("n").get<int>(), modulus,
                       j.at("lambda").get<double>(),
                       j.at("gegenbauer").get<std::vector<double>>());
}

EigenCache::EigenCache(std::string directory) : directory_(std::move(directory)) {}

EigenCache::Key EigenCache::make_key(double nu, int n, double k) {
  return {std::llround(nu * 1e12), n, std::llround(k * 1e12)};
}

std::string EigenCache::record_path(double nu, int n, double k) const {
  const Key key = make_key(nu, n, k);
  char buf[128];
  std::snprintf(buf, sizeof buf, "lw_%lld_%d_%lld.json",
                static_cast<long long>(std::get<0>(key)), n,
                static_cast<long long>(std::get<2>(key)));
  return (std::filesystem::path(directory_) / buf).string();
}

EigenSolutionPtr EigenCache::load(double nu, int n, const Modulus& modulus) const {
  if (directory_.empty()) return nullptr;
  std::ifstream in(record_path(nu, n, modulus.k()));
  if (!in) return nullptr;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return std::make_shared<const EigenSolution>(from_json_record(ss.str(), modulus));
  } catch (const nlohmann::json::exception&) {
    return nullptr;
  }
}

void EigenCache::store(const EigenSolution& sol) const {
  if (directory_.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  const std::string path = record_path(sol.nu(), sol.n(), sol.modulus().k());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << to_json_record(sol);
  }
  std::filesystem::rename(tmp, path, ec);
}

EigenSolutionPtr EigenCache::get(double nu, int n, const Modulus& modulus) {
  const Key key = make_key(nu, n, modulus.k());
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  if (EigenSolutionPtr loaded = load(nu, n, modulus)) {
    std::unique_lock lock(mutex_);
    return entries_.emplace(key, loaded).first->second;
  }
  const std::vector<EigenSolutionPtr> family = solve_family(nu, std::max(n, 12), modulus);
  for (const auto& sol : family) store(*sol);
  std::unique_lock lock(mutex_);
  for (const auto& sol : family) entries_.emplace(make_key(nu, sol->n(), modulus.k()), sol);
  return entries_.at(key);
}

std::size_t EigenCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void EigenCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

EigenCache& EigenCache::global() {
  static EigenCache cache([] {
    const char* dir = std::getenv("BICYCLIDE_CACHE_DIR");
    return std::string(dir ? dir : "");
  }());
  return cache;
}

EigenSolutionPtr eigen(double nu, int n, const Modulus& modulus) {
  return EigenCache::global().get(nu, n, modulus);
}

}  // namespace bicyclide
