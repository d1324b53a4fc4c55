#include "cs2d/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cs2d/errors.hpp"
#include "cs2d/identity.hpp"
#include "cs2d/oracle.hpp"
#include "cs2d/schrodinger.hpp"
#include "cs2d/su2.hpp"

namespace cs2d::cli {

namespace {

using nlohmann::json;

constexpr const char* kOptionNames[] = {
    "command", "state", "psi",   "alpha", "beta",     "p",         "q",         "nu",
    "terms",   "grid",  "out",   "format", "tolerance", "threads", "bra-psi",  "bra-alpha",
    "bra-beta", "bra-nu", "kind", "n",     "m",         "n-max",   "m-max",    "name"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const char* what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw ValidationError(std::string("invalid number for ") + what + ": '" + text + "'");
  }
  if (!std::isfinite(v)) throw NonFiniteError(std::string("non-finite value for ") + what);
  return v;
}

int parse_int(const std::string& text, const char* what) {
  const std::string t = trim(text);
  int v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw ValidationError(std::string("invalid integer for ") + what + ": '" + text + "'");
  }
  return v;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json grid_json(const GridSpec& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min},
          {"y_max", g.y_max}, {"nx", g.nx},       {"ny", g.ny}};
}

std::string format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::pgm: return "pgm";
    case OutputFormat::json: return "json";
  }
  return "csv";
}

json config_json(const RunConfig& c) {
  json j = {{"state", c.state},   {"psi", complex_json(c.psi)}, {"alpha", complex_json(c.alpha)},
            {"beta", complex_json(c.beta)}, {"p", c.p},          {"q", c.q},
            {"nu", c.nu},         {"format", format_name(c.format)}, {"threads", c.threads}};
  j["terms"] = c.terms ? json(*c.terms) : json(nullptr);
  j["grid"] = c.grid ? grid_json(*c.grid) : json(nullptr);
  j["out"] = c.out_path ? json(*c.out_path) : json(nullptr);
  j["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
  if (c.command == Command::overlap) {
    j["bra_psi"] = c.bra_psi ? complex_json(*c.bra_psi) : json(nullptr);
    j["bra_alpha"] = c.bra_alpha ? complex_json(*c.bra_alpha) : json(nullptr);
    j["bra_beta"] = c.bra_beta ? complex_json(*c.bra_beta) : json(nullptr);
    j["bra_nu"] = c.bra_nu ? json(*c.bra_nu) : json(nullptr);
  }
  if (c.command == Command::verify_identity) {
    j["kind"] = c.kind;
    j["n"] = c.n;
    j["m"] = c.m;
    j["n_max"] = c.n_max;
    j["m_max"] = c.m_max;
  }
  if (c.command == Command::figure) j["name"] = c.name;
  return j;
}

// Figure presets: every parameter the figures leave open is pinned here.
struct FigurePreset {
  const char* name;
  bool schrodinger;
  Complex psi;
  Complex alpha;
  Complex beta;
  int p;
  int q;
  int nu;
  std::optional<int> terms;
  GridSpec grid;
};

const std::vector<FigurePreset>& figure_presets() {
  static const std::vector<FigurePreset> presets = [] {
    const double h = std::sqrt(3.0) / 2.0;
    const Complex a_phase{0.0, h};  // sqrt3/2 e^{i pi/2}
    const Complex a_real{h, 0.0};
    const Complex b{0.5, 0.0};
    const Complex none{};
    const Complex i8 = std::polar(8.0, std::numbers::pi / 2.0);
    const Complex r8 = std::polar(8.0, std::numbers::pi / 4.0);
    const Complex i4 = std::polar(4.0, std::numbers::pi / 2.0);
    return std::vector<FigurePreset>{
        {"fig1-left", false, none, a_phase, b, 1, 1, 40, std::nullopt, GridSpec::symmetric(12.0, 201)},
        {"fig1-right", false, none, a_real, b, 1, 1, 40, std::nullopt, GridSpec::symmetric(12.0, 201)},
        {"fig2-left", true, Complex{8.0, 0.0}, a_phase, b, 1, 1, 0, std::nullopt,
         GridSpec::symmetric(12.0, 241)},
        {"fig2-right", true, r8, a_phase, b, 1, 1, 0, std::nullopt, GridSpec::symmetric(12.0, 241)},
        {"fig3-left", false, none, a_phase, b, 2, 1, 40, std::nullopt, GridSpec::symmetric(16.0, 201)},
        {"fig3-right", false, none, a_real, b, 2, 1, 40, std::nullopt, GridSpec::symmetric(16.0, 201)},
        {"fig5-left", true, Complex{8.0, 0.0}, a_phase, b, 2, 1, 0, 30, GridSpec::symmetric(14.0, 201)},
        {"fig5-right", true, i8, a_phase, b, 2, 1, 0, 30, GridSpec::symmetric(14.0, 201)},
        {"fig6-left", true, Complex{4.0, 0.0}, a_phase, b, 2, 1, 0, 30, GridSpec::symmetric(14.0, 201)},
        {"fig6-right", true, i4, a_phase, b, 2, 1, 0, 30, GridSpec::symmetric(14.0, 201)},
    };
  }();
  return presets;
}

const FigurePreset& find_preset(const std::string& name) {
  for (const auto& p : figure_presets()) {
    if (name == p.name) return p;
  }
  std::string known;
  for (const auto& p : figure_presets()) known += std::string(known.empty() ? "" : ", ") + p.name;
  throw ValidationError("unknown figure '" + name + "' (known: " + known + ")");
}

SU2Params ket_params(const RunConfig& c) { return {c.alpha, c.beta}; }
AnisotropyRatio ratio_of(const RunConfig& c) { return {c.p, c.q}; }

SchrodingerState schrodinger_of(const RunConfig& c) {
  if (c.terms) return {c.psi, ket_params(c), ratio_of(c), *c.terms};
  return SchrodingerState::with_tail_rule(c.psi, ket_params(c), ratio_of(c));
}

json su2_state_json(const SU2State& s) {
  return {{"type", "su2"},
          {"nu", s.nu()},
          {"alpha", complex_json(s.params().alpha())},
          {"beta", complex_json(s.params().beta())},
          {"p", s.ratio().p()},
          {"q", s.ratio().q()}};
}

json schrodinger_state_json(const SchrodingerState& s) {
  return {{"type", "schrodinger"},
          {"psi", complex_json(s.psi())},
          {"alpha", complex_json(s.params().alpha())},
          {"beta", complex_json(s.params().beta())},
          {"p", s.ratio().p()},
          {"q", s.ratio().q()},
          {"terms", s.truncation()}};
}

json coeffs_json(const CoeffVector& v) {
  json arr = json::array();
  for (const auto& [idx, c] : v) {
    arr.push_back({{"n", idx.n}, {"m", idx.m}, {"re", c.real()}, {"im", c.imag()}});
  }
  return arr;
}

json variances_json(const QuadratureVariances& v) {
  return {{"var_x", v.var_x}, {"var_px", v.var_px}, {"var_y", v.var_y}, {"var_py", v.var_py}};
}

double max_variance_gap(const QuadratureVariances& a, const QuadratureVariances& b) {
  return std::max({std::abs(a.var_x - b.var_x), std::abs(a.var_px - b.var_px),
                   std::abs(a.var_y - b.var_y), std::abs(a.var_py - b.var_py)});
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open output file '" + path + "'");
  return os;
}

// Writes the density artifact(s); returns the list of files written.
json write_density(const DensityGrid& grid, const RunConfig& c, const json& state_meta,
                   double captured_norm, const std::optional<std::string>& path) {
  json files = json::array();
  json meta = grid_metadata(grid);
  meta["state"] = state_meta;
  meta["captured_norm"] = captured_norm;
  if (!path) return files;
  if (c.format == OutputFormat::json) {
    json doc = meta;
    json rows = json::array();
    for (int j = 0; j < grid.spec.ny; ++j) {
      json row = json::array();
      for (int i = 0; i < grid.spec.nx; ++i) row.push_back(grid.value(i, j));
      rows.push_back(std::move(row));
    }
    doc["values"] = std::move(rows);
    auto os = open_out(*path);
    os << doc.dump(1) << '\n';
    files.push_back(*path);
    return files;
  }
  {
    auto os = open_out(*path);
    if (c.format == OutputFormat::csv) {
      write_csv(os, grid);
    } else {
      write_pgm(os, grid);
    }
  }
  const std::string sidecar = *path + ".json";
  auto os = open_out(sidecar);
  os << meta.dump(1) << '\n';
  files.push_back(*path);
  files.push_back(sidecar);
  return files;
}

struct Outcome {
  json result;
  json outputs = json::array();
  bool contract_ok = true;
};

Outcome density_su2(const RunConfig& c, const std::optional<std::string>& path) {
  const SU2State state(c.nu, ket_params(c), ratio_of(c));
  const GridSpec spec = c.grid ? *c.grid : default_grid(state);
  const auto grid = render(state, spec, c.threads);
  const double captured = su2_coefficients(state).captured_norm();
  Outcome o;
  o.result = grid_metadata(grid);
  o.result["state"] = su2_state_json(state);
  o.result["captured_norm"] = captured;
  o.outputs = write_density(grid, c, o.result["state"], captured, path);
  return o;
}

Outcome density_schrodinger(const RunConfig& c, const std::optional<std::string>& path) {
  const auto state = schrodinger_of(c);
  const GridSpec spec = c.grid ? *c.grid : default_grid(state);
  const auto grid = render(state, spec, c.threads);
  const double captured = schrodinger_coefficients(state).captured_norm();
  Outcome o;
  o.result = grid_metadata(grid);
  o.result["state"] = schrodinger_state_json(state);
  o.result["captured_norm"] = captured;
  o.result["poisson_partial_sum"] = poisson_partial_sum(std::norm(state.psi()), state.truncation());
  o.outputs = write_density(grid, c, o.result["state"], captured, path);
  return o;
}

Outcome run_coefficients(const RunConfig& c) {
  Outcome o;
  CoeffVector v;
  if (c.state == "schrodinger") {
    const auto s = schrodinger_of(c);
    v = schrodinger_coefficients(s);
    o.result["state"] = schrodinger_state_json(s);
    o.result["poisson_partial_sum"] = poisson_partial_sum(std::norm(s.psi()), s.truncation());
  } else {
    const SU2State s(c.nu, ket_params(c), ratio_of(c));
    v = su2_coefficients(s);
    o.result["state"] = su2_state_json(s);
  }
  o.result["captured_norm"] = v.captured_norm();
  o.result["entries"] = coeffs_json(v);
  if (c.out_path) {
    auto os = open_out(*c.out_path);
    if (c.format == OutputFormat::json) {
      os << o.result.dump(1) << '\n';
    } else {
      std::string line;
      for (const auto& [idx, a] : v) {
        std::ostringstream ss;
        ss.imbue(std::locale::classic());
        ss.precision(17);
        ss << idx.n << ',' << idx.m << ',' << a.real() << ',' << a.imag() << '\n';
        os << ss.str();
      }
    }
    o.outputs.push_back(*c.out_path);
  }
  return o;
}

Outcome run_variances(const RunConfig& c) {
  Outcome o;
  if (c.state == "schrodinger") {
    const auto s = schrodinger_of(c);
    const auto oracle_v = oracle::oracle_variances(schrodinger_coefficients(s));
    o.result["state"] = schrodinger_state_json(s);
    o.result["oracle"] = variances_json(oracle_v);
    if (s.ratio().is_isotropic()) {
      const auto closed = schrodinger_variances(s);
      const double gap = max_variance_gap(closed, oracle_v);
      const double tol = c.tolerance.value_or(1e-6);
      o.result["closed_form"] = variances_json(closed);
      o.result["max_abs_deviation"] = gap;
      o.result["tolerance"] = tol;
      o.contract_ok = gap <= tol;
    } else {
      o.result["closed_form"] = nullptr;
    }
    return o;
  }
  const SU2State s(c.nu, ket_params(c), ratio_of(c));
  const auto closed = su2_variances(s);
  const auto oracle_v = oracle::oracle_variances(su2_coefficients(s));
  const double gap = max_variance_gap(closed, oracle_v);
  const double tol = c.tolerance.value_or(1e-10);
  o.result = {{"state", su2_state_json(s)},
              {"closed_form", variances_json(closed)},
              {"oracle", variances_json(oracle_v)},
              {"max_abs_deviation", gap},
              {"tolerance", tol}};
  o.contract_ok = gap <= tol;
  return o;
}

Outcome run_energy(const RunConfig& c) {
  if (c.state != "su2") throw ValidationError("energy is defined for SU(2) states only");
  const SU2State s(c.nu, ket_params(c), ratio_of(c));
  const auto coeffs = su2_coefficients(s);
  const double closed = su2_energy(s);
  const double number = oracle::oracle_number_energy(coeffs);
  const double tol = c.tolerance.value_or(1e-10);
  Outcome o;
  o.result = {{"state", su2_state_json(s)},
              {"closed_form", closed},
              {"oracle_number_energy", number},
              {"oracle_hamiltonian_expectation", oracle::oracle_hamiltonian_energy(coeffs, s.ratio())},
              {"max_abs_deviation", std::abs(closed - number)},
              {"tolerance", tol}};
  o.contract_ok = std::abs(closed - number) <= tol;
  return o;
}

Outcome run_overlap(const RunConfig& c) {
  Outcome o;
  const SU2Params bra_params(c.bra_alpha.value_or(c.alpha), c.bra_beta.value_or(c.beta));
  Complex closed{};
  Complex numeric{};
  double tol = 0.0;
  if (c.state == "schrodinger") {
    const auto ket = schrodinger_of(c);
    const Complex bpsi = c.bra_psi.value_or(c.psi);
    const SchrodingerState bra =
        c.terms ? SchrodingerState(bpsi, bra_params, ratio_of(c), *c.terms)
                : SchrodingerState::with_tail_rule(bpsi, bra_params, ratio_of(c));
    closed = schrodinger_overlap(bra, ket);
    numeric = inner_product(schrodinger_coefficients(bra), schrodinger_coefficients(ket));
    const double tail = std::sqrt(poisson_tail(std::norm(bra.psi()), bra.truncation())) +
                        std::sqrt(poisson_tail(std::norm(ket.psi()), ket.truncation()));
    tol = c.tolerance.value_or(tail + 1e-12);
    o.result["bra"] = schrodinger_state_json(bra);
    o.result["ket"] = schrodinger_state_json(ket);
  } else {
    const SU2State ket(c.nu, ket_params(c), ratio_of(c));
    const SU2State bra(c.bra_nu.value_or(c.nu), bra_params, ratio_of(c));
    closed = su2_overlap(bra, ket);
    numeric = inner_product(su2_coefficients(bra), su2_coefficients(ket));
    tol = c.tolerance.value_or(1e-12);
    o.result["bra"] = su2_state_json(bra);
    o.result["ket"] = su2_state_json(ket);
  }
  const double gap = std::abs(closed - numeric);
  o.result["closed_form"] = complex_json(closed);
  o.result["coefficient_inner_product"] = complex_json(numeric);
  o.result["max_abs_deviation"] = gap;
  o.result["tolerance"] = tol;
  o.contract_ok = gap <= tol;
  return o;
}

Outcome run_verify_identity(const RunConfig& c) {
  using namespace identity;
  IdentityCheck check;
  const auto& k = c.kind;
  if (k == "su2") {
    check = check_su2_identity(c.nu, ratio_of(c), S3QuadratureSpec::for_nu(c.nu),
                               c.tolerance.value_or(1e-10));
  } else if (k == "full") {
    check = check_full_identity(c.n_max, c.m_max, S3QuadratureSpec::for_nu(c.n_max + c.m_max),
                                c.tolerance.value_or(1e-10));
  } else if (k == "fock") {
    check = check_fock_reconstruction(c.n, c.m, S3QuadratureSpec::for_nu(c.n + c.m),
                                      c.tolerance.value_or(1e-10));
  } else if (k == "weighted" || k == "unweighted") {
    const int nu_max = c.n_max + c.m_max;
    check = check_schrodinger_identity(c.n_max, c.m_max, S3QuadratureSpec::for_nu(nu_max),
                                       PlaneQuadratureSpec::for_nu(nu_max), k == "weighted",
                                       c.tolerance.value_or(1e-8));
  } else if (k == "coherent1d") {
    check = check_coherent1d_identity(c.n_max, PlaneQuadratureSpec::for_nu(c.n_max),
                                      c.tolerance.value_or(1e-10));
  } else {
    throw ValidationError("unknown identity kind '" + k +
                          "' (su2, full, fock, weighted, unweighted, coherent1d)");
  }
  Outcome o;
  o.result = check;
  o.contract_ok = check.passed;
  return o;
}

Outcome run_figure(const RunConfig& c) {
  const auto& preset = find_preset(c.name);
  RunConfig fc = c;
  fc.psi = preset.psi;
  fc.alpha = preset.alpha;
  fc.beta = preset.beta;
  fc.p = preset.p;
  fc.q = preset.q;
  fc.nu = preset.nu;
  fc.terms = preset.terms;
  if (!c.grid) fc.grid = preset.grid;
  const std::optional<std::string> path =
      c.out_path ? c.out_path : std::optional<std::string>(c.name + "." + format_name(c.format));
  Outcome o = preset.schrodinger ? density_schrodinger(fc, path) : density_su2(fc, path);
  o.result["figure"] = c.name;
  return o;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw ValidationError("complex literal must be 're,im': '" + text + "'");
  }
  return {parse_double(text.substr(0, comma), "real part"),
          parse_double(text.substr(comma + 1), "imaginary part")};
}

GridSpec parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ValidationError("grid must be 'xmin:xmax:nx,ymin:ymax:ny': '" + text + "'");
  }
  const auto axis = [&](const std::string& part, double& lo, double& hi, int& count) {
    const auto c1 = part.find(':');
    const auto c2 = part.find(':', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ValidationError("grid axis must be 'min:max:count': '" + part + "'");
    }
    lo = parse_double(part.substr(0, c1), "grid min");
    hi = parse_double(part.substr(c1 + 1, c2 - c1 - 1), "grid max");
    count = parse_int(part.substr(c2 + 1), "grid count");
  };
  GridSpec g;
  axis(text.substr(0, comma), g.x_min, g.x_max, g.nx);
  axis(text.substr(comma + 1), g.y_min, g.y_max, g.ny);
  g.validate();
  return g;
}

Command parse_command(const std::string& text) {
  static const std::map<std::string, Command> table = {
      {"su2-density", Command::su2_density},
      {"schrodinger-density", Command::schrodinger_density},
      {"coefficients", Command::coefficients},
      {"variances", Command::variances},
      {"energy", Command::energy},
      {"overlap", Command::overlap},
      {"verify-identity", Command::verify_identity},
      {"figure", Command::figure}};
  const auto it = table.find(text);
  if (it == table.end()) throw ValidationError("unknown command '" + text + "'");
  return it->second;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::su2_density: return "su2-density";
    case Command::schrodinger_density: return "schrodinger-density";
    case Command::coefficients: return "coefficients";
    case Command::variances: return "variances";
    case Command::energy: return "energy";
    case Command::overlap: return "overlap";
    case Command::verify_identity: return "verify-identity";
    case Command::figure: return "figure";
  }
  return "unknown";
}

RunConfig config_from_options(const OptionMap& options) {
  for (const auto& [key, value] : options) {
    if (std::find(std::begin(kOptionNames), std::end(kOptionNames), key) == std::end(kOptionNames)) {
      throw ValidationError("unknown option '" + key + "'");
    }
  }
  const auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = options.find(key);
    return it == options.end() ? std::nullopt : std::optional<std::string>(it->second);
  };
  RunConfig c;
  const auto cmd = get("command");
  if (!cmd) throw ValidationError("no command given");
  c.command = parse_command(*cmd);
  if (auto v = get("state")) {
    if (*v != "su2" && *v != "schrodinger") throw ValidationError("state must be su2 or schrodinger");
    c.state = *v;
  }
  if (auto v = get("psi")) c.psi = parse_complex(*v);
  if (auto v = get("alpha")) c.alpha = parse_complex(*v);
  if (auto v = get("beta")) c.beta = parse_complex(*v);
  if (auto v = get("p")) c.p = parse_int(*v, "p");
  if (auto v = get("q")) c.q = parse_int(*v, "q");
  if (auto v = get("nu")) c.nu = parse_int(*v, "nu");
  if (auto v = get("terms")) c.terms = parse_int(*v, "terms");
  if (auto v = get("grid")) c.grid = parse_grid(*v);
  if (auto v = get("out")) c.out_path = *v;
  if (auto v = get("format")) {
    if (*v == "csv") {
      c.format = OutputFormat::csv;
    } else if (*v == "pgm") {
      c.format = OutputFormat::pgm;
    } else if (*v == "json") {
      c.format = OutputFormat::json;
    } else {
      throw ValidationError("format must be csv, pgm or json");
    }
  }
  if (auto v = get("tolerance")) c.tolerance = parse_double(*v, "tolerance");
  if (auto v = get("threads")) c.threads = std::max(1, parse_int(*v, "threads"));
  if (auto v = get("bra-psi")) c.bra_psi = parse_complex(*v);
  if (auto v = get("bra-alpha")) c.bra_alpha = parse_complex(*v);
  if (auto v = get("bra-beta")) c.bra_beta = parse_complex(*v);
  if (auto v = get("bra-nu")) c.bra_nu = parse_int(*v, "bra-nu");
  if (auto v = get("kind")) c.kind = *v;
  if (auto v = get("n")) c.n = parse_int(*v, "n");
  if (auto v = get("m")) c.m = parse_int(*v, "m");
  if (auto v = get("n-max")) c.n_max = parse_int(*v, "n-max");
  if (auto v = get("m-max")) c.m_max = parse_int(*v, "m-max");
  if (auto v = get("name")) c.name = *v;
  if (c.command == Command::figure && c.name.empty()) throw ValidationError("figure needs --name");
  // Early validation so usage errors surface before any numerics run.
  (void)AnisotropyRatio(c.p, c.q);
  if (c.command != Command::figure) (void)SU2Params(c.alpha, c.beta);
  return c;
}

OptionMap options_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
  OptionMap out;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      out[key] = value.get<std::string>();
    } else if (value.is_number() || value.is_boolean()) {
      out[key] = value.dump();
    } else {
      throw ValidationError("config value for '" + key + "' must be a scalar");
    }
  }
  return out;
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Coherent states of the 2D harmonic oscillator", "cs2d"};
  std::map<std::string, std::string> raw;
  std::string positional;
  std::string config_path;
  app.add_option("command_name", positional, "command (alternative to --command)");
  app.add_option("--config", config_path, "JSON file with the same keys as the flags");
  for (const char* name : kOptionNames) app.add_option(std::string("--") + name, raw[name]);
  app.parse(argc, const_cast<char**>(argv));

  OptionMap options;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) throw ValidationError("cannot read config file '" + config_path + "'");
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("invalid config JSON: ") + e.what());
    }
    options = options_from_json(j);
  }
  if (!positional.empty()) options["command"] = positional;
  for (const char* name : kOptionNames) {
    if (app.count(std::string("--") + name) > 0) options[name] = raw[name];
  }
  return config_from_options(options);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    switch (config.command) {
      case Command::su2_density: o = density_su2(config, config.out_path); break;
      case Command::schrodinger_density: o = density_schrodinger(config, config.out_path); break;
      case Command::coefficients: o = run_coefficients(config); break;
      case Command::variances: o = run_variances(config); break;
      case Command::energy: o = run_energy(config); break;
      case Command::overlap: o = run_overlap(config); break;
      case Command::verify_identity: o = run_verify_identity(config); break;
      case Command::figure: o = run_figure(config); break;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "contract failure: " << e.what() << '\n';
    return 2;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json report = {{"command", command_name(config.command)},
                 {"parameters", config_json(config)},
                 {"result", o.result},
                 {"outputs", o.outputs},
                 {"status", o.contract_ok ? "ok" : "contract-failure"},
                 {"timings", {{"total_ms", ms}}}};
  out << report.dump(2) << '\n';
  return o.contract_ok ? 0 : 2;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << "usage: cs2d <command> [--flag value ...] | --config file.json\n"
           "commands: su2-density schrodinger-density coefficients variances energy overlap\n"
           "          verify-identity figure\n"
           "flags: --psi --alpha --beta (re,im) --p --q --nu --terms\n"
           "       --grid xmin:xmax:nx,ymin:ymax:ny --out --format csv|pgm|json\n"
           "       --tolerance --threads --state su2|schrodinger --name --kind\n"
           "       --n --m --n-max --m-max --bra-psi --bra-alpha --bra-beta --bra-nu\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return run(config, out, err);
}

}  // namespace cs2d::cli
