#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <type_traits>
#include <variant>

namespace relwig::cli {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"", {"scenario"}},
      {"constants", {"hbar", "c", "m", "e"}},
      {"run", {"rep", "mode", "kappa", "dt", "steps", "output_every", "snapshot_every", "output_dir", "seed"}},
      {"potential", {"type", "strength", "amplitude", "wavenumber", "component", "A0", "A1", "A2", "A3"}},
      {"grid", {"nx", "ntheta", "x_min", "lx", "ltheta", "k0", "np", "p_min", "lp"}},
      {"initial", {"position", "velocity", "x_center", "width", "momentum", "theta_width", "p_width"}},
      {"dirac", {"branch", "samples", "max_momentum"}},
      {"scalar", {"kinetic", "poly", "sine_amplitude", "sine_wavenumber", "phase_constant", "oracle_samples"}},
      {"klein_gordon", {"n0", "l0", "n1", "l1", "m0", "m1"}},
      {"operator", {"n", "max_degree", "kappas"}},
      {"convergence", {"target", "parameter", "levels"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line;
};

using Table = std::map<std::string, Entry>;

double to_double(const std::string& field, const Entry& en) {
  double v = 0.0;
  const char* b = en.value.data();
  const char* e = b + en.value.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) throw ConfigError(en.line, field + " must be a number, got '" + en.value + "'");
  return v;
}

long long to_integer(const std::string& field, const Entry& en) {
  long long v = 0;
  const char* b = en.value.data();
  const char* e = b + en.value.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) throw ConfigError(en.line, field + " must be an integer, got '" + en.value + "'");
  return v;
}

int to_int(const std::string& field, const Entry& en) {
  const long long v = to_integer(field, en);
  if (v < -2147483647LL || v > 2147483647LL) throw ConfigError(en.line, field + " is out of range");
  return static_cast<int>(v);
}

std::vector<double> to_list(const std::string& field, const Entry& en) {
  std::vector<double> out;
  if (trim(en.value).empty()) return out;
  std::stringstream ss(en.value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(field, Entry{trim(item), en.line}));
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

template <std::size_t N>
std::string fmt_array(const std::array<double, N>& v) {
  return fmt_list(std::vector<double>(v.begin(), v.end()));
}

class Reader {
 public:
  explicit Reader(const Table& t) : t_(t) {}

  const Entry* find(const std::string& key) const {
    const auto it = t_.find(key);
    return it == t_.end() ? nullptr : &it->second;
  }
  void number(const std::string& key, double& out) const {
    if (const Entry* e = find(key)) out = to_double(key, *e);
  }
  void integer(const std::string& key, int& out) const {
    if (const Entry* e = find(key)) out = to_int(key, *e);
  }
  void text(const std::string& key, std::string& out) const {
    if (const Entry* e = find(key)) out = e->value;
  }
  void list(const std::string& key, std::vector<double>& out) const {
    if (const Entry* e = find(key)) out = to_list(key, *e);
  }
  template <std::size_t N>
  void array(const std::string& key, std::array<double, N>& out) const {
    if (const Entry* e = find(key)) {
      const auto v = to_list(key, *e);
      if (v.size() != N) throw ConfigError(e->line, key + " needs " + std::to_string(N) + " values");
      std::copy(v.begin(), v.end(), out.begin());
    }
  }
  int line(const std::string& key) const {
    const Entry* e = find(key);
    return e ? e->line : 0;
  }

 private:
  const Table& t_;
};

PotentialSpec read_potential(const Reader& r) {
  std::string type = "none";
  r.text("potential.type", type);
  double strength = 0.0, amplitude = 0.0, wavenumber = 1.0;
  int component = 0;
  r.number("potential.strength", strength);
  r.number("potential.amplitude", amplitude);
  r.number("potential.wavenumber", wavenumber);
  r.integer("potential.component", component);
  if (component < 0 || component > 3)
    throw ConfigError(r.line("potential.component"), "potential.component must be 0..3");
  if (type == "none") return PotentialSpec::none();
  if (type == "constant_e") return PotentialSpec::constant_e(strength);
  if (type == "constant_b") return PotentialSpec::constant_b(strength);
  if (type == "sine") return PotentialSpec::sine(amplitude, wavenumber, component);
  if (type == "polynomial") {
    PolynomialA p;
    for (int mu = 0; mu < 4; ++mu) r.list("potential.A" + std::to_string(mu), p.coefficients[static_cast<std::size_t>(mu)]);
    return PotentialSpec(p);
  }
  throw ConfigError(r.line("potential.type"),
                    "potential.type must be none, constant_e, constant_b, sine or polynomial, got '" + type + "'");
}

void write_potential(std::ostream& os, const PotentialSpec& A) {
  os << "[potential]\n";
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantE>) {
          os << "type = constant_e\nstrength = " << fmt(v.strength) << "\n";
        } else if constexpr (std::is_same_v<T, ConstantB>) {
          os << "type = constant_b\nstrength = " << fmt(v.strength) << "\n";
        } else if constexpr (std::is_same_v<T, SineA>) {
          os << "type = sine\namplitude = " << fmt(v.amplitude) << "\nwavenumber = " << fmt(v.wavenumber)
             << "\ncomponent = " << v.component << "\n";
        } else {
          bool any = false;
          for (const auto& c : v.coefficients) any = any || !c.empty();
          if (!any) {
            os << "type = none\n";
            return;
          }
          os << "type = polynomial\n";
          for (int mu = 0; mu < 4; ++mu)
            os << "A" << mu << " = " << fmt_list(v.coefficients[static_cast<std::size_t>(mu)]) << "\n";
        }
      },
      A.variant());
}

Table tokenize(const std::string& text) {
  const auto& sch = schema();
  Table table;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!sch.count(section) || section.empty()) throw ConfigError(lineno, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(lineno, "missing key before '='");
    const std::string full = section.empty() ? key : section + "." + key;
    if (!sch.at(section).count(key)) throw ConfigError(lineno, "unknown key '" + full + "'");
    if (table.count(full))
      throw ConfigError(lineno, "duplicate key '" + full + "' (first set on line " + std::to_string(table[full].line) + ")");
    table[full] = Entry{value, lineno};
  }
  return table;
}

}  // namespace

ParsedConfig parse_config_with_lines(const std::string& text) {
  const Table table = tokenize(text);
  const Reader r(table);
  ScenarioConfig c;

  r.text("scenario", c.scenario);

  r.number("constants.hbar", c.constants.hbar);
  r.number("constants.c", c.constants.c);
  r.number("constants.m", c.constants.m);
  r.number("constants.e", c.constants.e);

  if (const Entry* e = r.find("run.rep")) {
    try {
      c.rep = gamma_rep_from_string(e->value);
    } catch (const std::exception&) {
      throw ConfigError(e->line, "run.rep must be dirac or weyl, got '" + e->value + "'");
    }
  }
  if (const Entry* e = r.find("run.mode")) {
    if (e->value == "kvnd") c.kvnd = true;
    else if (e->value == "kappa") c.kvnd = false;
    else throw ConfigError(e->line, "run.mode must be kappa or kvnd, got '" + e->value + "'");
  }
  r.number("run.kappa", c.kappa);
  r.number("run.dt", c.dt);
  r.integer("run.steps", c.steps);
  r.integer("run.output_every", c.output_every);
  r.integer("run.snapshot_every", c.snapshot_every);
  r.text("run.output_dir", c.output_dir);
  if (const Entry* e = r.find("run.seed")) {
    std::uint64_t s = 0;
    const char* b = e->value.data();
    const char* end = b + e->value.size();
    const auto r = std::from_chars(b, end, s);
    if (r.ec != std::errc() || r.ptr != end)
      throw ConfigError(e->line, "run.seed must be an integer in [0, 2^64), got '" + e->value + "'");
    c.seed = s;
  }

  c.potential = read_potential(r);

  r.integer("grid.nx", c.grid.nx);
  r.integer("grid.ntheta", c.grid.ntheta);
  r.number("grid.x_min", c.grid.x_min);
  r.number("grid.lx", c.grid.lx);
  r.number("grid.ltheta", c.grid.ltheta);
  r.number("grid.k0", c.grid.k0);
  r.integer("grid.np", c.np);
  r.number("grid.p_min", c.p_min);
  r.number("grid.lp", c.lp);

  r.array("initial.position", c.position);
  r.array("initial.velocity", c.velocity);
  r.number("initial.x_center", c.x_center);
  r.number("initial.width", c.width);
  r.number("initial.momentum", c.momentum);
  r.number("initial.theta_width", c.theta_width);
  r.number("initial.p_width", c.p_width);

  if (const Entry* e = r.find("dirac.branch")) {
    try {
      c.branch = branch_from_string(e->value);
    } catch (const std::exception&) {
      throw ConfigError(e->line, "dirac.branch must be plus_up, plus_down, minus_up or minus_down, got '" + e->value + "'");
    }
  }
  r.integer("dirac.samples", c.samples);
  r.number("dirac.max_momentum", c.max_momentum);

  if (const Entry* e = r.find("scalar.kinetic")) {
    if (e->value == "salpeter") c.kinetic = KineticForm::Salpeter;
    else if (e->value == "newtonian") c.kinetic = KineticForm::Newtonian;
    else throw ConfigError(e->line, "scalar.kinetic must be salpeter or newtonian, got '" + e->value + "'");
  }
  r.list("scalar.poly", c.scalar_potential.poly);
  r.number("scalar.sine_amplitude", c.scalar_potential.sine_amplitude);
  r.number("scalar.sine_wavenumber", c.scalar_potential.sine_wavenumber);
  r.number("scalar.phase_constant", c.phase_constant);
  r.integer("scalar.oracle_samples", c.oracle_samples);

  r.integer("klein_gordon.n0", c.kg_n0);
  r.integer("klein_gordon.n1", c.kg_n1);
  r.number("klein_gordon.l0", c.kg_l0);
  r.number("klein_gordon.l1", c.kg_l1);
  r.integer("klein_gordon.m0", c.kg_m0);
  r.integer("klein_gordon.m1", c.kg_m1);

  r.integer("operator.n", c.op_n);
  r.integer("operator.max_degree", c.op_degree);
  r.list("operator.kappas", c.op_kappas);

  r.text("convergence.target", c.conv_target);
  r.text("convergence.parameter", c.conv_parameter);
  r.list("convergence.levels", c.conv_levels);

  ParsedConfig out{c, {}};
  for (const auto& [k, v] : table) out.lines[k] = v.line;
  return out;
}

ScenarioConfig parse_config(const std::string& text) { return parse_config_with_lines(text).config; }

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "scenario = " << c.scenario << "\n\n";
  os << "[constants]\nhbar = " << fmt(c.constants.hbar) << "\nc = " << fmt(c.constants.c) << "\nm = "
     << fmt(c.constants.m) << "\ne = " << fmt(c.constants.e) << "\n\n";
  os << "[run]\nrep = " << to_string(c.rep) << "\nmode = " << (c.kvnd ? "kvnd" : "kappa") << "\nkappa = " << fmt(c.kappa)
     << "\ndt = " << fmt(c.dt) << "\nsteps = " << c.steps << "\noutput_every = " << c.output_every
     << "\nsnapshot_every = " << c.snapshot_every << "\noutput_dir = " << c.output_dir << "\nseed = " << c.seed
     << "\n\n";
  write_potential(os, c.potential);
  os << "\n[grid]\nnx = " << c.grid.nx << "\nntheta = " << c.grid.ntheta << "\nx_min = " << fmt(c.grid.x_min)
     << "\nlx = " << fmt(c.grid.lx) << "\nltheta = " << fmt(c.grid.ltheta) << "\nk0 = " << fmt(c.grid.k0)
     << "\nnp = " << c.np << "\np_min = " << fmt(c.p_min) << "\nlp = " << fmt(c.lp) << "\n\n";
  os << "[initial]\nposition = " << fmt_array(c.position) << "\nvelocity = " << fmt_array(c.velocity)
     << "\nx_center = " << fmt(c.x_center) << "\nwidth = " << fmt(c.width) << "\nmomentum = " << fmt(c.momentum)
     << "\ntheta_width = " << fmt(c.theta_width) << "\np_width = " << fmt(c.p_width) << "\n\n";
  os << "[dirac]\nbranch = " << to_string(c.branch) << "\nsamples = " << c.samples
     << "\nmax_momentum = " << fmt(c.max_momentum) << "\n\n";
  os << "[scalar]\nkinetic = " << (c.kinetic == KineticForm::Salpeter ? "salpeter" : "newtonian")
     << "\npoly = " << fmt_list(c.scalar_potential.poly) << "\nsine_amplitude = " << fmt(c.scalar_potential.sine_amplitude)
     << "\nsine_wavenumber = " << fmt(c.scalar_potential.sine_wavenumber) << "\nphase_constant = " << fmt(c.phase_constant)
     << "\noracle_samples = " << c.oracle_samples << "\n\n";
  os << "[klein_gordon]\nn0 = " << c.kg_n0 << "\nl0 = " << fmt(c.kg_l0) << "\nn1 = " << c.kg_n1 << "\nl1 = "
     << fmt(c.kg_l1) << "\nm0 = " << c.kg_m0 << "\nm1 = " << c.kg_m1 << "\n\n";
  os << "[operator]\nn = " << c.op_n << "\nmax_degree = " << c.op_degree << "\nkappas = " << fmt_list(c.op_kappas)
     << "\n\n";
  os << "[convergence]\ntarget = " << c.conv_target << "\nparameter = " << c.conv_parameter
     << "\nlevels = " << fmt_list(c.conv_levels) << "\n";
  return os.str();
}

namespace {

bool pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void validate_config(const ScenarioConfig& c, const std::string& sub, const std::map<std::string, int>& lines) {
  const auto fail = [&](const std::string& key, const std::string& msg) {
    const auto it = lines.find(key);
    throw ConfigError(it == lines.end() ? 0 : it->second, key + " " + msg);
  };
  const auto positive = [&](const std::string& key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(key, "must be positive");
  };
  const auto finite = [&](const std::string& key, double v) {
    if (!std::isfinite(v)) fail(key, "must be finite");
  };

  positive("constants.hbar", c.constants.hbar);
  positive("constants.c", c.constants.c);
  positive("constants.m", c.constants.m);
  finite("constants.e", c.constants.e);
  if (c.output_dir.empty()) fail("run.output_dir", "must not be empty");

  const auto time_stepping = [&] {
    positive("run.dt", c.dt);
    if (c.steps < 1) fail("run.steps", "must be at least 1");
    if (c.output_every < 1) fail("run.output_every", "must be at least 1");
    if (c.snapshot_every < 0) fail("run.snapshot_every", "must be non-negative");
  };
  const auto xtheta = [&] {
    if (!pow2(c.grid.nx) || c.grid.nx < 8) fail("grid.nx", "must be a power of two >= 8");
    if (!pow2(c.grid.ntheta) || c.grid.ntheta < 8) fail("grid.ntheta", "must be a power of two >= 8");
    positive("grid.lx", c.grid.lx);
    positive("grid.ltheta", c.grid.ltheta);
    finite("grid.x_min", c.grid.x_min);
    finite("grid.k0", c.grid.k0);
    positive("initial.width", c.width);
  };
  const auto phase_space = [&] {
    if (!pow2(c.grid.nx) || c.grid.nx < 8) fail("grid.nx", "must be a power of two >= 8");
    if (!pow2(c.np) || c.np < 8) fail("grid.np", "must be a power of two >= 8");
    positive("grid.lx", c.grid.lx);
    positive("grid.lp", c.lp);
    positive("initial.width", c.width);
    positive("initial.p_width", c.p_width);
    if (c.oracle_samples < 1) fail("scalar.oracle_samples", "must be at least 1");
  };
  const auto kappa_ok = [&] {
    if (!c.kvnd && !(c.kappa > 0.0 && c.kappa <= 1.0)) fail("run.kappa", "must lie in (0, 1]");
  };

  if (sub == "trajectory" || sub == "rotor") {
    time_stepping();
    for (double v : c.velocity) finite("initial.velocity", v);
    for (double v : c.position) finite("initial.position", v);
  } else if (sub == "dirac-free") {
    if (c.samples < 1) fail("dirac.samples", "must be at least 1");
    positive("dirac.max_momentum", c.max_momentum);
  } else if (sub == "wigner" || sub == "kvnd") {
    time_stepping();
    xtheta();
    if (sub == "wigner") kappa_ok();
  } else if (sub == "salpeter") {
    time_stepping();
    if (!pow2(c.grid.nx) || c.grid.nx < 8) fail("grid.nx", "must be a power of two >= 8");
    positive("grid.lx", c.grid.lx);
    positive("initial.width", c.width);
  } else if (sub == "kvn") {
    time_stepping();
    phase_space();
  } else if (sub == "klein-gordon") {
    if (!pow2(c.kg_n0) || c.kg_n0 < 2) fail("klein_gordon.n0", "must be a power of two >= 2");
    if (!pow2(c.kg_n1) || c.kg_n1 < 2) fail("klein_gordon.n1", "must be a power of two >= 2");
    positive("klein_gordon.l0", c.kg_l0);
    positive("klein_gordon.l1", c.kg_l1);
    positive("run.dt", c.dt);
    if (c.steps < 1) fail("run.steps", "must be at least 1");
  } else if (sub == "operator-check") {
    if (c.op_n < 8) fail("operator.n", "must be at least 8");
    if (c.op_degree < 1) fail("operator.max_degree", "must be at least 1");
    for (double k : c.op_kappas)
      if (!(k >= 0.0 && k <= 1.0)) fail("operator.kappas", "must lie in [0, 1]");
  } else if (sub == "convergence") {
    if (c.conv_levels.size() < 3) fail("convergence.levels", "needs at least 3 levels");
    for (double v : c.conv_levels) positive("convergence.levels", v);
    const std::string& t = c.conv_target;
    const std::string& p = c.conv_parameter;
    if (p != "dt" && p != "dx" && p != "kappa") fail("convergence.parameter", "must be dt, dx or kappa");
    if (t == "wigner" || t == "kvnd") {
      if (p == "dx") fail("convergence.parameter", "dx is not supported for target " + t);
      if (t == "kvnd" && p == "kappa") fail("convergence.parameter", "kappa requires target wigner");
      time_stepping();
      xtheta();
      if (p == "dt" && t == "wigner") kappa_ok();
      if (p == "kappa")
        for (double k : c.conv_levels)
          if (k > 1.0) fail("convergence.levels", "kappa levels must lie in (0, 1]");
    } else if (t == "salpeter") {
      if (p != "dx") fail("convergence.parameter", "target salpeter supports dx only");
      time_stepping();
      positive("grid.lx", c.grid.lx);
      positive("initial.width", c.width);
    } else if (t == "kvn") {
      if (p == "kappa") fail("convergence.parameter", "target kvn supports dt or dx");
      time_stepping();
      phase_space();
    } else {
      fail("convergence.target", "must be wigner, kvnd, salpeter or kvn");
    }
  } else {
    throw ConfigError(0, "unknown subcommand '" + sub + "'");
  }
}

}  // namespace relwig::cli
