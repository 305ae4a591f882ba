#include "lltlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "lltlab/errors.hpp"

namespace lltlab {

double DenseWindow::total() const {
  double s = 0.0;
  for (double m : mass) s += m;
  return s;
}

double PowerTailFamily::mass(Index j) const {
  if (j < 0) return 0.0;
  if (j == 0) return 1.0 - c;
  const double a = std::pow(static_cast<double>(j), -alpha);
  const double b = std::pow(static_cast<double>(j) + 1.0, -alpha);
  return c * (a - b);
}

double PowerTailFamily::tail_above(Index j) const {
  if (j < 0) return 1.0;
  return c * std::pow(static_cast<double>(j) + 1.0, -alpha);
}

DenseWindow PowerTailFamily::window(Index max_index) const {
  DenseWindow w;
  w.first = 0;
  w.mass.resize(static_cast<std::size_t>(max_index) + 1);
  for (Index j = 0; j <= max_index; ++j) w.mass[static_cast<std::size_t>(j)] = mass(j);
  return w;
}

namespace {

void validate_family(const PowerTailFamily& f) {
  if (!(f.alpha > 0.0)) throw PreconditionError("power_tail: alpha must be positive");
  if (!(f.c > 0.0 && f.c <= 1.0)) throw PreconditionError("power_tail: c must lie in (0, 1]");
  if (!(f.truncation_mass > 0.0 && f.truncation_mass < 1.0))
    throw PreconditionError("power_tail: truncation_mass must lie in (0, 1)");
}

}  // namespace

LatticePmf::LatticePmf(double v0, double span, std::vector<Atom> atoms, double mass_tolerance)
    : v0_(v0), span_(span) {
  if (!(span > 0.0) || !std::isfinite(span)) throw PreconditionError("lattice span D must be positive");
  if (!std::isfinite(v0)) throw PreconditionError("lattice offset v0 must be finite");
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.index < b.index; });
  atoms_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass))
      throw PreconditionError("pmf weights must be finite and nonnegative");
    if (a.mass == 0.0) continue;
    if (!atoms_.empty() && atoms_.back().index == a.index) {
      atoms_.back().mass += a.mass;
    } else {
      atoms_.push_back(a);
    }
  }
  if (atoms_.empty()) throw PreconditionError("pmf needs at least one strictly positive weight");
  const double total = total_mass();
  if (std::abs(total - 1.0) > mass_tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "pmf total mass " << total << " differs from 1 by more than " << mass_tolerance;
    throw PreconditionError(os.str());
  }
}

LatticePmf LatticePmf::point_mass(double value) { return LatticePmf(value, 1.0, {{0, 1.0}}); }

LatticePmf LatticePmf::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("bernoulli: p must lie in [0, 1]");
  return LatticePmf(0.0, 1.0, {{0, 1.0 - p}, {1, p}});
}

LatticePmf LatticePmf::uniform(Index lo, Index hi) {
  if (hi < lo) throw PreconditionError("uniform: empty range");
  const double m = 1.0 / static_cast<double>(hi - lo + 1);
  std::vector<Atom> atoms;
  for (Index k = lo; k <= hi; ++k) atoms.push_back({k, m});
  return LatticePmf(0.0, 1.0, std::move(atoms));
}

LatticePmf LatticePmf::from_window(const DenseWindow& w, double v0, double span, double mass_tolerance) {
  std::vector<Atom> atoms;
  atoms.reserve(w.mass.size());
  for (std::size_t i = 0; i < w.mass.size(); ++i)
    if (w.mass[i] > 0.0) atoms.push_back({w.first + static_cast<Index>(i), w.mass[i]});
  return LatticePmf(v0, span, std::move(atoms), mass_tolerance);
}

LatticePmf LatticePmf::power_tail(const PowerTailFamily& family, Index max_index) {
  validate_family(family);
  // smallest J with c (J+1)^{-alpha} < truncation_mass
  const double threshold = std::pow(family.c / family.truncation_mass, 1.0 / family.alpha);
  if (!(threshold < static_cast<double>(max_index)))
    throw ResourceError("power_tail: truncation index exceeds the configured maximum");
  Index J = std::max<Index>(1, static_cast<Index>(std::floor(threshold)) - 1);
  while (family.tail_above(J) >= family.truncation_mass) ++J;
  while (J > 1 && family.tail_above(J - 1) < family.truncation_mass) --J;
  DenseWindow w = family.window(J);
  const double kept = w.total();
  for (double& m : w.mass) m /= kept;
  LatticePmf p = from_window(w, 0.0, 1.0, 1e-9);
  p.tail_ = TailDescriptor{family, J, 1.0 - kept};
  return p;
}

double LatticePmf::mass(Index k) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), k,
                             [](const Atom& a, Index key) { return a.index < key; });
  return (it != atoms_.end() && it->index == k) ? it->mass : 0.0;
}

double LatticePmf::total_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.mass;
  return s;
}

DenseWindow LatticePmf::dense() const {
  DenseWindow w;
  w.first = min_index();
  w.mass.assign(static_cast<std::size_t>(max_index() - min_index() + 1), 0.0);
  for (const Atom& a : atoms_) w.mass[static_cast<std::size_t>(a.index - w.first)] = a.mass;
  return w;
}

LatticePmf LatticePmf::relabeled() const {
  LatticePmf p = *this;
  p.v0_ = 0.0;
  p.span_ = 1.0;
  return p;
}

LatticePmf LatticePmf::reflected() const {
  std::vector<Atom> atoms;
  atoms.reserve(atoms_.size());
  for (const Atom& a : atoms_) atoms.push_back({-a.index, a.mass});
  return LatticePmf(-v0_, span_, std::move(atoms), 1e-9);
}

double MomentSummary::mean() const {
  if (!mu) throw UnavailableError("mean is infinite for this law");
  return *mu;
}

double MomentSummary::variance() const {
  if (!sigma2) throw UnavailableError("variance is infinite for this law");
  return *sigma2;
}

double MomentSummary::third_central() const {
  if (!mu3) throw UnavailableError("third central moment is unavailable for this law");
  return *mu3;
}

Index index_gcd(const LatticePmf& p) {
  if (p.degenerate()) throw DegenerateError("degenerate: span undefined");
  Index g = 0;
  const Index base = p.min_index();
  for (const Atom& a : p.atoms()) g = std::gcd(g, a.index - base);
  return g;
}

double maximal_span(const LatticePmf& p) { return p.span() * static_cast<double>(index_gcd(p)); }

MomentSummary moments(const LatticePmf& p) {
  MomentSummary m;
  if (p.tail()) {
    // Analytic raw moments of the untruncated family:
    // E X^r = sum_{j>=1} (j^r - (j-1)^r) c j^{-alpha}.
    const PowerTailFamily& f = p.tail()->family;
    const double a = f.alpha;
    if (a > 1.0) {
      const double e1 = f.c * std::riemann_zeta(a);
      m.mu = e1;
      if (a > 2.0) {
        const double e2 = f.c * (2.0 * std::riemann_zeta(a - 1.0) - std::riemann_zeta(a));
        m.sigma2 = e2 - e1 * e1;
        if (a > 3.0) {
          const double e3 = f.c * (3.0 * std::riemann_zeta(a - 2.0) - 3.0 * std::riemann_zeta(a - 1.0) +
                                   std::riemann_zeta(a));
          m.mu3 = e3 - 3.0 * e1 * e2 + 2.0 * e1 * e1 * e1;
        }
      }
    }
    return m;
  }
  double mean = 0.0;
  for (const Atom& a : p.atoms()) mean += a.mass * p.value(a.index);
  double m2 = 0.0, m3 = 0.0;
  for (const Atom& a : p.atoms()) {
    const double d = p.value(a.index) - mean;
    m2 += a.mass * d * d;
    m3 += a.mass * d * d * d;
  }
  m.mu = mean;
  m.sigma2 = p.degenerate() ? 0.0 : std::max(0.0, m2);
  m.mu3 = p.degenerate() ? 0.0 : m3;
  return m;
}

std::complex<double> char_fn(const LatticePmf& p, double t) {
  if (t == 0.0) return {1.0, 0.0};
  double re = 0.0, im = 0.0;
  for (const Atom& a : p.atoms()) {
    const double x = t * p.value(a.index);
    re += a.mass * std::cos(x);
    im += a.mass * std::sin(x);
  }
  std::complex<double> z(re, im);
  const double r = std::abs(z);
  if (r > 1.0) z /= r;
  return z;
}

nlohmann::json to_json(const LatticePmf& p) {
  nlohmann::json j;
  if (p.tail()) {
    const PowerTailFamily& f = p.tail()->family;
    j["family"] = "power_tail";
    j["alpha"] = f.alpha;
    j["c"] = f.c;
    j["truncation_mass"] = f.truncation_mass;
    return j;
  }
  j["v0"] = p.v0();
  j["D"] = p.span();
  nlohmann::json rows = nlohmann::json::array();
  for (const Atom& a : p.atoms()) rows.push_back(nlohmann::json::array({a.index, a.mass}));
  j["pmf"] = std::move(rows);
  return j;
}

LatticePmf pmf_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw SpecError("distribution spec must be a JSON object");
    if (j.contains("family")) {
      if (j.at("family") != "power_tail") throw SpecError("unknown family: " + j.at("family").dump());
      PowerTailFamily f;
      f.alpha = j.at("alpha").get<double>();
      f.c = j.value("c", 1.0);
      f.truncation_mass = j.value("truncation_mass", 1e-10);
      return LatticePmf::power_tail(f);
    }
    const double v0 = j.value("v0", 0.0);
    const double span = j.value("D", 1.0);
    std::vector<Atom> atoms;
    for (const auto& row : j.at("pmf")) {
      if (!row.is_array() || row.size() != 2) throw SpecError("pmf rows must be [k, mass] pairs");
      if (!row[0].is_number_integer()) throw SpecError("pmf index must be an integer");
      atoms.push_back({row[0].get<Index>(), row[1].get<double>()});
    }
    return LatticePmf(v0, span, std::move(atoms));
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed distribution spec: ") + e.what());
  }
}

LatticePmf load_pmf(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open distribution spec " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed JSON in ") + path.string() + ": " + e.what());
  }
  return pmf_from_json(j);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw SpecError("bad number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw SpecError("bad number: " + s);
  }
}

Index to_index(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw SpecError("bad integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw SpecError("bad integer: " + s);
  }
}

}  // namespace

LatticePmf parse_distribution(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return load_pmf(text);
  const std::string head = text.substr(0, colon);
  const auto parts = split(text.substr(colon + 1), ':');
  if (head == "bernoulli" && parts.size() == 1) return LatticePmf::bernoulli(to_double(parts[0]));
  if (head == "uniform" && parts.size() == 2) return LatticePmf::uniform(to_index(parts[0]), to_index(parts[1]));
  if (head == "point" && parts.size() == 1) return LatticePmf::point_mass(to_double(parts[0]));
  if (head == "pmf" && parts.size() == 1) {
    std::vector<Atom> atoms;
    for (const auto& kv : split(parts[0], ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw SpecError("pmf entries must be k=mass");
      atoms.push_back({to_index(kv.substr(0, eq)), to_double(kv.substr(eq + 1))});
    }
    return LatticePmf(0.0, 1.0, std::move(atoms));
  }
  if (head == "power_tail" && (parts.size() == 2 || parts.size() == 3)) {
    PowerTailFamily f{to_double(parts[0]), to_double(parts[1]), 1e-10};
    if (parts.size() == 3) f.truncation_mass = to_double(parts[2]);
    return LatticePmf::power_tail(f);
  }
  throw SpecError("unrecognised distribution: " + text);
}

}  // namespace lltlab
