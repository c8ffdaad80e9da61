#include "bicyclide/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include "bicyclide/coords.hpp"
#include "bicyclide/errors.hpp"
#include "bicyclide/greens.hpp"
#include "bicyclide/harmonics.hpp"
#include "bicyclide/legendre.hpp"
#include "bicyclide/limits.hpp"
#include "bicyclide/wangerin.hpp"

namespace bicyclide::cli {

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + '"';
}

// Flat JSON object with keys in insertion order.
class JsonObject {
 public:
  JsonObject& add(const std::string& key, double v) { return raw(key, num(v)); }
  JsonObject& add(const std::string& key, int v) { return raw(key, std::to_string(v)); }
  JsonObject& add(const std::string& key, const std::string& v) { return raw(key, quoted(v)); }
  JsonObject& add(const std::string& key, const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return raw(key, s + "]");
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  JsonObject& raw(const std::string& key, const std::string& value) {
    if (!body_.empty()) body_ += ",";
    body_ += quoted(key) + ":" + value;
    return *this;
  }
  std::string body_;
};

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string r;
  for (const auto& c : cells) r += (r.empty() ? "" : ",") + c;
  return r + "\n";
}

int zero_count(const EigenSolution& sol) {
  const double K = sol.modulus().bigK();
  const int samples = 4000;
  int count = 0;
  double prev = 0.0;
  for (int i = 1; i < samples; ++i) {
    const double v = eval_interior(sol, K * (-1.0 + 2.0 * i / samples));
    if (std::abs(v) < 1e-300) continue;
    if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++count;
    prev = v;
  }
  return count;
}

double norm_check(const EigenSolution& sol) {
  const SRule rule = mapped_s_rule(256, sol.modulus().bigK());
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.s.size(); ++i) {
    const double w = eval_interior(sol, rule.s[i]);
    sum += rule.weights[i] * w * w;
  }
  return sum;
}

CartesianPoint as_point(const std::vector<double>& v) { return {v.at(0), v.at(1), v.at(2)}; }

struct Options {
  double k = 0.7, s = 0, t = 0, phi = 0, x = 0, y = 0, z = 0;
  double nu = 0.5, tol = 1e-12;
  int n = 0, m = 0, nmax = 10, mmax = 8, ns = 9, nt = 9;
  std::string kind, which;
  std::vector<double> point, r, rstar, p, pstar;
  double a = 0, astar = 0, tt = 0, ttstar = 0;
  double s0 = 0, t0 = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bi-cyclide harmonics toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_k = [&](CLI::App* c) { c->add_option("--k", o.k, "modulus k in (0,1)")->required(); };
  auto add_triple = [](CLI::App* c, const std::string& name, std::vector<double>& v,
                       const std::string& help) {
    c->add_option(name, v, help)->delimiter(',')->expected(3)->required();
  };

  auto* coords = app.add_subcommand("coords", "forward and inverse coordinate map");
  coords->require_subcommand(1);
  auto* to = coords->add_subcommand("to", "(s,t,phi) -> (x,y,z)");
  add_k(to);
  to->add_option("--s", o.s)->required();
  to->add_option("--t", o.t)->required();
  to->add_option("--phi", o.phi)->required();
  auto* from = coords->add_subcommand("from", "(x,y,z) -> (s,t,phi)");
  add_k(from);
  from->add_option("--x", o.x)->required();
  from->add_option("--y", o.y)->required();
  from->add_option("--z", o.z)->required();

  auto* eig = app.add_subcommand("eigen", "one Lame-Wangerin eigenpair");
  add_k(eig);
  eig->add_option("--nu", o.nu)->required();
  eig->add_option("--n", o.n)->required();
  eig->add_option("--tol", o.tol);

  auto* table = app.add_subcommand("eigen-table", "eigenvalues n = 0..nmax as CSV");
  add_k(table);
  table->add_option("--nu", o.nu)->required();
  table->add_option("--nmax", o.nmax)->required();

  auto* harm = app.add_subcommand("harmonic", "evaluate a bi-cyclide harmonic");
  add_k(harm);
  harm->add_option("--kind", o.kind, "internal1|external1|internal2|external2")->required();
  harm->add_option("--m", o.m)->required();
  harm->add_option("--n", o.n)->required();
  add_triple(harm, "--point", o.point, "x,y,z");

  auto* expand = app.add_subcommand("expand", "reciprocal-distance expansion");
  add_k(expand);
  add_triple(expand, "--r", o.r, "x,y,z");
  add_triple(expand, "--rstar", o.rstar, "x,y,z");
  expand->add_option("--kind", o.kind, "first|second")->required();
  expand->add_option("--mmax", o.mmax)->required();
  expand->add_option("--nmax", o.nmax)->required();

  auto* addition = app.add_subcommand("addition", "addition series for Q_{m-1/2}(chi)");
  add_k(addition);
  addition->add_option("--m", o.m)->required();
  add_triple(addition, "--p", o.p, "s,t,phi");
  add_triple(addition, "--pstar", o.pstar, "s,t,phi");
  addition->add_option("--nmax", o.nmax)->required();

  auto* limits = app.add_subcommand("limits", "single limit term A against B");
  add_k(limits);
  limits->add_option("--which", o.which, "bispherical|prolate")->required();
  limits->add_option("--m", o.m)->required();
  limits->add_option("--n", o.n)->required();
  limits->add_option("--a", o.a, "s (bispherical) or sigma (prolate)")->required();
  limits->add_option("--astar", o.astar, "s* or sigma*")->required();
  limits->add_option("--t", o.tt)->required();
  limits->add_option("--tstar", o.ttstar)->required();

  auto* plot = app.add_subcommand("plotdata", "coordinate line and surface samples");
  plot->require_subcommand(1);
  auto* lines = plot->add_subcommand("coordlines", "CSV of coordinate lines in the (R,z) plane");
  add_k(lines);
  lines->add_option("--ns", o.ns)->required();
  lines->add_option("--nt", o.nt)->required();
  auto* surf = plot->add_subcommand("surfaces", "CSV point cloud of s = s0 and t = t0");
  add_k(surf);
  surf->add_option("--s0", o.s0)->required();
  surf->add_option("--t0", o.t0)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!(o.k > 0.0 && o.k < 1.0)) throw DomainError("modulus k must lie in (0,1)");
    const Modulus mod(o.k);
    const double K = mod.bigK(), Kp = mod.bigKprime();

    if (*to) {
      const BiCyclidePoint p{o.s, o.t, o.phi, mod};
      const CartesianPoint q = to_cartesian(p);
      const BiCyclidePoint back = from_cartesian(q, mod);
      const double res = std::hypot(back.s - p.s, back.t - p.t, std::remainder(back.phi - p.phi, 2 * std::numbers::pi));
      out << JsonObject{}.add("s", o.s).add("t", o.t).add("phi", o.phi).add("x", q.x).add("y", q.y)
                 .add("z", q.z).add("residual", res).str()
          << "\n";
    } else if (*from) {
      const CartesianPoint q{o.x, o.y, o.z};
      const BiCyclidePoint p = from_cartesian(q, mod);
      const CartesianPoint back = to_cartesian(p);
      const double res = std::hypot(back.x - q.x, back.y - q.y, back.z - q.z);
      out << JsonObject{}.add("s", p.s).add("t", p.t).add("phi", p.phi).add("x", o.x).add("y", o.y)
                 .add("z", o.z).add("residual", res).str()
          << "\n";
    } else if (*eig) {
      if (o.n < 0) throw DomainError("n must be >= 0");
      const EigenSolutionPtr sol = solve_eigen(o.nu, o.n, mod, o.tol);
      out << JsonObject{}.add("lambda", sol->lambda()).add("norm_check", norm_check(*sol))
                 .add("zero_count", zero_count(*sol)).str()
          << "\n";
    } else if (*table) {
      if (o.nmax < 0) throw DomainError("nmax must be >= 0");
      const auto family = solve_family(o.nu, o.nmax, mod);
      out << "n,lambda,lower_bound\n";
      for (int n = 0; n <= o.nmax; ++n) {
        const double w2 = mod.omega() * mod.omega();
        const double bound = o.nu >= 0.0 ? w2 * std::pow(n + o.nu + 1.0, 2) : 0.5 * w2 - 0.25;
        out << csv_row({std::to_string(n), num(family[static_cast<std::size_t>(n)]->lambda()), num(bound)});
      }
    } else if (*harm) {
      const HarmonicIndex idx{o.m, o.n, parse_harmonic_kind(o.kind)};
      const std::complex<double> v = eval_harmonic(idx, as_point(o.point), mod);
      out << JsonObject{}.add("re", v.real()).add("im", v.imag()).add("convention", std::string("d0=1")).str()
          << "\n";
    } else if (*expand) {
      ExpansionKind kind;
      if (o.kind == "first") kind = ExpansionKind::first;
      else if (o.kind == "second") kind = ExpansionKind::second;
      else throw DomainError("expansion kind must be first or second");
      const SeriesResult r =
          expand_distance(as_point(o.r), as_point(o.rstar), kind, mod, o.mmax, o.nmax, Execution::serial);
      const double direct = *r.direct_value;
      out << JsonObject{}.add("direct", direct).add("series", r.value)
                 .add("relerr", std::abs(r.value - direct) / std::abs(direct))
                 .add("tail_estimate", r.tail_estimate).add("shells", r.shell_sums).str()
          << "\n";
    } else if (*addition) {
      const BiCyclidePoint p{o.p[0], o.p[1], o.p[2], mod}, ps{o.pstar[0], o.pstar[1], o.pstar[2], mod};
      const SeriesResult r = addition_series(o.m, p, ps, o.nmax);
      const double lhs = *r.direct_value;
      out << JsonObject{}.add("lhs_toroidal_Q", lhs).add("rhs_series", r.value)
                 .add("relerr", std::abs(r.value - lhs) / std::abs(lhs)).str()
          << "\n";
    } else if (*limits) {
      double A, B;
      const double half_pi = 0.5 * std::numbers::pi;
      if (o.which == "bispherical") {
        A = bicyclide_A(ExpansionKind::first, o.m, o.n, o.a, o.astar, o.tt, o.ttstar, mod);
        B = bispherical_B({o.m, o.n, o.tt, o.ttstar, half_pi - o.a, half_pi - o.astar});
      } else if (o.which == "prolate") {
        A = bicyclide_A(ExpansionKind::second, o.m, o.n, o.a, o.astar, o.tt, o.ttstar, mod);
        B = prolate_B({o.m, o.n, o.a, o.astar, half_pi - o.tt, half_pi - o.ttstar});
      } else {
        throw DomainError("--which must be bispherical or prolate");
      }
      out << JsonObject{}.add("A", A).add("B", B).add("gap", std::abs(A - B) / std::abs(B)).str() << "\n";
    } else if (*lines) {
      if (o.ns < 1 || o.nt < 1) throw DomainError("--ns and --nt must be >= 1");
      const int samples = 201;
      out << "line_id,s,t,R,z\n";
      int id = 0;
      auto emit = [&](double s, double t) {
        const CylindricalPoint c = to_cylindrical(BiCyclidePoint{s, t, 0.0, mod});
        out << csv_row({std::to_string(id), num(s), num(t), num(c.R), num(c.z)});
      };
      for (int i = 1; i <= o.ns; ++i, ++id) {
        const double s = K * (-1.0 + 2.0 * i / (o.ns + 1));
        for (int j = 0; j < samples; ++j) emit(s, Kp * (-1.0 + (2.0 * j + 1.0) / samples));
      }
      for (int i = 1; i <= o.nt; ++i, ++id) {
        const double t = Kp * (-1.0 + 2.0 * i / (o.nt + 1));
        for (int j = 0; j < samples; ++j) emit(K * (-1.0 + (2.0 * j + 1.0) / samples), t);
      }
    } else if (*surf) {
      validate(BiCyclidePoint{o.s0, o.t0, 0.0, mod});
      const int nu_ = 61, nphi = 48;
      out << "surface,x,y,z\n";
      for (int j = 0; j < nphi; ++j) {
        const double phi = std::numbers::pi * (-1.0 + 2.0 * (j + 1) / nphi);
        for (int i = 0; i < nu_; ++i) {
          const double f = -1.0 + (2.0 * i + 1.0) / nu_;
          const CartesianPoint a = to_cartesian(BiCyclidePoint{o.s0, Kp * f, phi, mod});
          out << csv_row({"s0", num(a.x), num(a.y), num(a.z)});
          const CartesianPoint b = to_cartesian(BiCyclidePoint{K * f, o.t0, phi, mod});
          out << csv_row({"t0", num(b.x), num(b.y), num(b.z)});
        }
      }
    }
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace bicyclide::cli
