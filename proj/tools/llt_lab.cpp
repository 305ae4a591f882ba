// llt-lab: command-line front end over the lltlab library.
//
// Every table goes to --out (or stdout) as CSV with a leading "# metric:" comment line;
// errors go to stderr as one JSON object and the exit status is nonzero.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lltlab/asllt.hpp"
#include "lltlab/bernoulli_part.hpp"
#include "lltlab/characteristics.hpp"
#include "lltlab/dickman.hpp"
#include "lltlab/errors.hpp"
#include "lltlab/exact.hpp"
#include "lltlab/llt.hpp"
#include "lltlab/parallel.hpp"
#include "lltlab/poisson.hpp"
#include "lltlab/stable.hpp"
#include "lltlab/verify.hpp"

using namespace lltlab;

namespace {

constexpr int kExitError = 2;
constexpr int kExitFailed = 1;

/// "16..2048" is the dyadic range, "a,b,c" a list, "n" a single value. Result is strictly increasing.
std::vector<Index> parse_grid(const std::string& text) {
  std::vector<Index> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const Index lo = std::stoll(text.substr(0, dots));
      const Index hi = std::stoll(text.substr(dots + 2));
      if (lo < 1 || hi < lo) throw SpecError("n-grid range must satisfy 1 <= lo <= hi");
      for (Index n = lo; n <= hi; n *= 2) out.push_back(n);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    }
  } catch (const std::logic_error&) {
    throw SpecError("bad n-grid: " + text);
  }
  if (out.empty()) throw SpecError("empty n-grid");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw SpecError("n-grid must be strictly increasing");
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  } catch (const std::logic_error&) {
    throw SpecError("bad number list: " + text);
  }
  if (out.empty()) throw SpecError("empty number list");
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (double v : parse_list(text)) {
    if (v < 0 || v != std::floor(v)) throw SpecError("seeds must be nonnegative integers");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

/// Polyline of (n, error) on log-log axes.
void write_svg(std::ostream& out, const std::vector<ApproxReport>& rows, const std::string& title) {
  constexpr double W = 640, H = 400, M = 50;
  std::vector<std::pair<double, double>> pts;
  for (const ApproxReport& r : rows)
    if (r.n > 0 && r.error > 0.0) pts.emplace_back(std::log10(static_cast<double>(r.n)), std::log10(r.error));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<text x=\"" << M << "\" y=\"20\" font-size=\"14\">" << xml_escape(title) << " (log10 error vs log10 n)</text>\n";
  out << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (pts.size() >= 2) {
    double x0 = pts.front().first, x1 = x0, y0 = pts.front().second, y1 = y0;
    for (const auto& [x, y] : pts) {
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts)
      out << M + (x - x0) / (x1 - x0) * (W - 2 * M) << ',' << H - M - (y - y0) / (y1 - y0) * (H - 2 * M) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << M << "\" y=\"" << H - 15 << "\" font-size=\"11\">n: " << std::pow(10, x0) << " .. "
        << std::pow(10, x1) << ", error: " << std::pow(10, y0) << " .. " << std::pow(10, y1) << "</text>\n";
  }
  out << "</svg>\n";
}

struct Output {
  std::string path;
  std::string format = "csv";

  void emit(const std::function<void(std::ostream&)>& body) const {
    if (path.empty()) {
      body(std::cout);
      return;
    }
    std::ofstream f(path);
    if (!f) throw SpecError("cannot open output file " + path);
    body(f);
  }

  void reports(const std::vector<ApproxReport>& rows, const std::string& formula) const {
    if (format == "svg")
      emit([&](std::ostream& o) { write_svg(o, rows, formula); });
    else
      emit([&](std::ostream& o) { write_csv(o, rows, formula); });
  }
};

void fail_json(const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice-sum distributions and local limit theorem diagnostics"};
  app.require_subcommand(1);

  Output out;
  std::string dist = "bernoulli:0.5", grid = "16..2048", seeds = "1";
  app.add_option("--out", out.path, "Output file (default stdout)");
  app.add_option("--format", out.format, "csv or svg (svg for error tables only)")
      ->check(CLI::IsMember({"csv", "svg"}));

  auto* sum = app.add_subcommand("sum-law", "Exact law of S_n as (k, value_point, mass)");
  Index sum_n = 10;
  sum->add_option("--dist", dist, "Distribution spec: JSON path or shorthand");
  sum->add_option("--n", sum_n, "Number of summands")->check(CLI::PositiveNumber);

  auto* delta = app.add_subcommand("delta-n", "Delta_n = sup |B_n P(S_n=N) - D phi|");
  delta->add_option("--dist", dist);
  delta->add_option("--n", grid, "n-grid: lo..hi (dyadic) or a,b,c");

  auto* edge = app.add_subcommand("edgeworth", "sigma sqrt(n) sup error without and with the third-moment term");
  edge->add_option("--dist", dist);
  edge->add_option("--n", grid);

  auto* chars = app.add_subcommand("characteristics", "delta, theta, D(X,d), H(X,d), nu(X,h)");
  std::string ds = "0.1,0.25,0.5", hs = "2,3";
  chars->set_help_flag("--help", "Print this help message and exit");
  chars->add_option("--dist", dist);
  chars->add_option("--d", ds, "Comma list of d in (0, 1/2]");
  chars->add_option("--h", hs, "Comma list of integer moduli h >= 2");

  auto* dec = app.add_subcommand("decompose", "Bernoulli-part extraction; with --n, the effective-rate sandwich");
  double theta = 0.0;
  Index dec_n = 0;
  dec->add_option("--dist", dist);
  dec->add_option("--theta", theta, "Extracted mass in (0, theta_X]; default theta_X");
  dec->add_option("--n", dec_n, "Sum length for the sandwich table");

  auto* poi = app.add_subcommand("poisson", "Poisson-binomial vs Poisson with the Le Cam bound");
  std::string probs = "0.1,0.1";
  poi->add_option("--p", probs, "Comma list of Bernoulli probabilities");

  auto* rho_cmd = app.add_subcommand("dickman-rho", "Dickman function table (u, rho)");
  int stride = 64;
  rho_cmd->add_option("--stride", stride, "Emit every stride-th grid node")->check(CLI::PositiveNumber);

  auto* dllt = app.add_subcommand("dickman-llt", "n P(T_n = round(x n)) against e^{-gamma} rho(x)");
  double x = 1.0;
  dllt->add_option("--x", x);
  dllt->add_option("--n", grid);

  auto* asl = app.add_subcommand("asllt", "Logarithmic-average path estimators");
  std::string kind = "t1";
  Index N = 10000, paths = 1, fixed_point = 0;
  double kappa = 0.0, p12 = 0.3, p21 = 0.2;
  bool expectation = false;
  asl->add_option("--kind", kind)->check(CLI::IsMember({"t1", "ce", "markov", "dickman"}));
  asl->add_option("--dist", dist);
  asl->add_option("--N", N, "Path length")->check(CLI::Range(Index{2}, Index{1} << 40));
  asl->add_option("--seed,--seeds", seeds, "Master seed(s), comma separated");
  asl->add_option("--paths", paths, "Paths per seed; path index is the stream")->check(CLI::PositiveNumber);
  asl->add_option("--kappa", kappa, "kappa in the lattice rule (t1, markov)");
  asl->add_option("--x", x, "x for the Dickman target");
  asl->add_option("--a", fixed_point, "Fixed lattice index (ce)");
  asl->add_option("--p12", p12, "Markov P(0 -> 1)");
  asl->add_option("--p21", p21, "Markov P(1 -> 0)");
  asl->add_flag("--expectation", expectation, "Exact expectation of the estimator instead of paths");

  auto* st = app.add_subcommand("stable", "alpha in (0,1) power-tail family: LLT error or density values");
  double alpha = 0.5;
  std::string xs;
  st->add_option("--alpha", alpha);
  st->add_option("--n", grid);
  st->add_option("--x", xs, "Comma list of points: print g(x) instead of the LLT table");

  auto* ver = app.add_subcommand("verify", "Acceptance criteria; exit 0 iff all pass");
  std::string suite = "all";
  ver->add_option("--suite", suite, "all or a comma list of criterion numbers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail_json("usage", e.what());
    return kExitError;
  }

  try {
    if (*sum) {
      const SumLawTable t = sum_law(parse_distribution(dist), sum_n);
      out.emit([&](std::ostream& o) { write_csv(o, t); });
    } else if (*delta) {
      const LatticePmf p = parse_distribution(dist);
      const auto ns = parse_grid(grid);
      std::vector<ApproxReport> rows(ns.size());
      parallel_for(ns.size(), [&](std::size_t i) {
        const DeltaResult d = delta_n(p, ns[i]);
        rows[i] = make_report(ns[i], "delta_n", d.value, 0.0, "B_n", d.argmax);
      });
      out.reports(rows, "sup_N |B_n P(S_n=N) - D/sqrt(2pi) exp(-(N-n mu)^2/(2 B_n^2))|; exact=Delta_n, approx=0");
    } else if (*edge) {
      const LatticePmf p = parse_distribution(dist);
      const auto ns = parse_grid(grid);
      std::vector<ApproxReport> rows(2 * ns.size());
      parallel_for(ns.size(), [&](std::size_t i) {
        const double plain = edgeworth_sup_error(p, ns[i], false);
        const double corr = edgeworth_sup_error(p, ns[i], true);
        rows[2 * i] = make_report(ns[i], "edgeworth_plain", plain, 0.0, "sigma*sqrt(n)");
        rows[2 * i + 1] = make_report(ns[i], "edgeworth_corrected", corr, 0.0, "sigma*sqrt(n)");
      });
      out.reports(rows, "sigma sqrt(n) sup_N |P(S_n=N) - local term|, local term with and without mu3/(6 sigma^3 sqrt n) (y^3-3y)");
    } else if (*chars) {
      std::vector<Index> h;
      for (double v : parse_list(hs)) h.push_back(static_cast<Index>(v));
      const CharacteristicsRecord r = characteristics(parse_distribution(dist), parse_list(ds), h);
      out.emit([&](std::ostream& o) { write_csv(o, r); });
    } else if (*dec) {
      const LatticePmf p = parse_distribution(dist);
      const Decomposition d = theta > 0.0 ? decompose(p, theta) : decompose(p);
      if (dec_n <= 0) {
        out.emit([&](std::ostream& o) { o << to_json(d).dump(2) << '\n'; });
      } else {
        const double Theta = static_cast<double>(dec_n) * d.theta;
        const double hn = ger2_h(Theta);
        const EffectiveRateInput inp = effective_input(d, dec_n, hn < 1.0 ? hn : 0.5, effective_C0());
        const SumLawTable law = sum_law(p, dec_n);
        const double window = std::sqrt(Theta / (14.0 * std::log(Theta)));
        out.emit([&](std::ostream& o) {
          o << "# metric: effective-rate sandwich; h=" << inp.h << " H=" << inp.H << " rho=" << inp.rho
            << " C0=" << inp.C0 << "; rows with (k-ES)^2/Var <= " << window << '\n';
          o << "k,exact,lower,upper\n";
          o.precision(12);
          for (const Atom& a : law.base.atoms()) {
            const double v = law.base.value(a.index);
            if ((v - inp.ESn) * (v - inp.ESn) / inp.VarSn > window) continue;
            const SandwichBounds b = effective_bounds(inp, v);
            o << v << ',' << a.mass << ',' << b.lower << ',' << b.upper << '\n';
          }
        });
      }
    } else if (*poi) {
      const auto ps = parse_list(probs);
      double lambda = 0.0;
      for (double q : ps) lambda += q;
      const IntLaw exact = poisson_binomial_law(ps);
      const LeCamRecord lc = lecam_check(ps);
      out.emit([&](std::ostream& o) {
        o << "# tv=" << tv_distance(exact, poisson_law(lambda)) << " full_sum=" << lc.full_sum
          << " lecam_bound=" << lc.bound << '\n';
        write_poisson_csv(o, exact, poisson_law(lambda));
      });
    } else if (*rho_cmd) {
      const DickmanRho rho;
      out.emit([&](std::ostream& o) { write_csv(o, rho, stride); });
    } else if (*dllt) {
      const DickmanRho rho;
      const auto ns = parse_grid(grid);
      std::vector<ApproxReport> rows(ns.size());
      parallel_for(ns.size(), [&](std::size_t i) { rows[i] = dickman_llt_check(ns[i], x, rho); });
      out.reports(rows, "n P(T_n = round(x n)) vs e^{-gamma} rho(x)");
    } else if (*asl) {
      const auto seed_list = parse_seeds(seeds);
      const std::vector<Index> cps = dyadic_checkpoints(N);
      const KappaRule rule{kappa, {}};
      if (expectation) {
        std::vector<std::pair<Index, double>> e;
        double target = 1.0;
        if (kind == "t1") {
          const LatticePmf p = parse_distribution(dist);
          e = asllt_expectation(p, rule, cps);
          target = asllt_target(p, rule);
        } else if (kind == "ce") {
          e = chung_erdos_expectation(parse_distribution(dist), fixed_point, cps);
        } else if (kind == "markov") {
          e = markov_asllt_expectation(TwoStateChain(p12, p21), rule, cps);
          target = normal_pdf(kappa);
        } else {
          e = asllt_dickman_expectation(x, cps);
          target = std::exp(-kEulerGamma) * DickmanRho()(x);
        }
        out.emit([&](std::ostream& o) {
          o << "# metric: exact expectation of the " << kind << " estimator\n";
          o << "kind,N,expectation,target\n";
          o.precision(12);
          for (const auto& [n, v] : e) o << kind << ',' << n << ',' << v << ',' << target << '\n';
        });
      } else {
        std::vector<PathEstimate> all(seed_list.size() * static_cast<std::size_t>(paths));
        const auto path_of = [&](std::size_t i) { return static_cast<std::uint64_t>(i % static_cast<std::size_t>(paths)); };
        const auto seed_of = [&](std::size_t i) { return seed_list[i / static_cast<std::size_t>(paths)]; };
        if (kind == "ce") {
          const LatticePmf p = parse_distribution(dist);
          for (std::size_t s = 0; s < seed_list.size(); ++s) {
            auto block = chung_erdos_paths(p, fixed_point, cps, seed_list[s], 0, static_cast<std::uint64_t>(paths));
            std::move(block.begin(), block.end(), all.begin() + static_cast<std::ptrdiff_t>(s * block.size()));
          }
        } else {
          std::unique_ptr<LatticePmf> p;
          std::unique_ptr<DickmanRho> rho;
          if (kind == "t1") p = std::make_unique<LatticePmf>(parse_distribution(dist));
          if (kind == "dickman") rho = std::make_unique<DickmanRho>();
          const TwoStateChain chain(p12, p21);
          parallel_for(all.size(), [&](std::size_t i) {
            if (kind == "t1")
              all[i] = asllt_path(*p, rule, cps, seed_of(i), path_of(i));
            else if (kind == "markov")
              all[i] = markov_asllt_path(chain, rule, cps, seed_of(i), path_of(i));
            else
              all[i] = asllt_dickman_path(x, cps, *rho, seed_of(i), path_of(i));
          });
        }
        out.emit([&](std::ostream& o) { write_csv(o, all); });
      }
    } else if (*st) {
      const StableDensity g(StableParams{alpha, 1.0, true});
      if (!xs.empty()) {
        const auto pts = parse_list(xs);
        out.emit([&](std::ostream& o) {
          o << "# metric: one-sided stable density, alpha=" << alpha << "\n";
          o << "x,density\n";
          o.precision(12);
          for (double v : pts) o << v << ',' << g(v) << '\n';
        });
      } else {
        const StableTable table = default_table(g);
        const PowerTailFamily family{alpha, 1.0};
        const auto ns = parse_grid(grid);
        std::vector<ApproxReport> rows(ns.size());
        parallel_for(ns.size(), [&](std::size_t i) { rows[i] = stable_llt_error(family, ns[i], 16.0, &table).report; });
        out.reports(rows, "sup_{m <= 16 B_n} |B_n P(S_n=m) - g(m/B_n)|, B_n = n^{1/alpha}");
      }
    } else if (*ver) {
      std::vector<int> only;
      if (suite != "all")
        for (double v : parse_list(suite)) only.push_back(static_cast<int>(v));
      const auto results = run_acceptance(only);
      bool ok = true;
      for (const auto& r : results) ok = ok && r.pass;
      out.emit([&](std::ostream& o) { print_results(o, results); });
      return ok ? 0 : kExitFailed;
    }
  } catch (const Error& e) {
    fail_json(e.kind(), e.what());
    return kExitError;
  } catch (const std::exception& e) {
    fail_json("internal", e.what());
    return kExitError;
  }
  return 0;
}
