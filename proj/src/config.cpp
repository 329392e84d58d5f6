#include "ftlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ftlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  const double x = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument("config: bad number for " + key + ": " + v);
  return x;
}

long to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  const long x = std::stol(v, &used);
  if (used != v.size()) throw std::invalid_argument("config: bad integer for " + key + ": " + v);
  return x;
}

}  // namespace

const std::map<std::string, std::string>& config_key_docs() {
  static const std::map<std::string, std::string> docs = {
      {"d", "spatial dimension, 1 or 2"},
      {"n", "grid points per axis, power of two >= 16"},
      {"l", "torus side length"},
      {"domain_offset", "lower corner of D, one value per axis, space separated"},
      {"domain_side", "side length of the box D"},
      {"cutoff_width", "transition width of the cutoff"},
      {"beta", "product-space order parameter"},
      {"delta", "solution-space order parameter"},
      {"gamma", "time Holder exponent"},
      {"q", "noise integrability exponent"},
      {"sigma2", "diffusion coefficient"},
      {"t", "time horizon"},
      {"m_t", "number of time steps"},
      {"rho", "weight of the norm family, >= 1, or auto"},
      {"tol_picard", "Picard stopping tolerance"},
      {"tol_product", "paraproduct tail tolerance"},
      {"max_iter", "Picard iteration cap"},
      {"u0_kind", "interior_bump or eigenmode_smooth"},
      {"seed", "root seed of every random draw"},
      {"h", "Hurst parameter of the noise"},
      {"kind", "noise kind: fbm1d_exact, levy_spectral, smooth_test"},
      {"band", "mode cap for smooth_test noise (0 gives the zero field)"},
  };
  return docs;
}

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!config_key_docs().count(key))
      throw std::invalid_argument("config: unknown key: " + key);
    kv[key] = value;
  }

  // environment overrides: FT_ + upper-cased key
  for (const auto& [key, doc] : config_key_docs()) {
    (void)doc;
    std::string env_name = "FT_";
    for (char c : key) env_name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (const char* v = std::getenv(env_name.c_str())) kv[key] = v;
  }

  RunConfig cfg;
  // grid first; other defaults depend on it
  int d = 1, n = 256;
  double l = 2.0, domain_side = 0.5, cutoff_width = 0.25;
  std::array<double, 2> offset{0.75, 0.75};
  bool offset_given = false;

  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  if (auto* v = get("d")) d = static_cast<int>(to_int("d", *v));
  if (auto* v = get("n")) n = static_cast<int>(to_int("n", *v));
  if (auto* v = get("l")) l = to_double("l", *v);
  if (auto* v = get("domain_side")) domain_side = to_double("domain_side", *v);
  if (auto* v = get("cutoff_width")) cutoff_width = to_double("cutoff_width", *v);
  if (auto* v = get("domain_offset")) {
    std::istringstream os(*v);
    double x;
    int count = 0;
    while (os >> x) {
      if (count < 2) offset[static_cast<std::size_t>(count)] = x;
      ++count;
    }
    if (count != 1 && count != d)
      throw std::invalid_argument("config: domain_offset needs 1 or d values");
    if (count == 1) offset[1] = offset[0];
    offset_given = true;
  }
  if (!offset_given) {
    offset[0] = offset[1] = (l - domain_side) / 2.0;
  }
  cfg.grid = Grid(d, n, l, offset, domain_side, cutoff_width);

  cfg.solver.grid = cfg.grid;
  if (auto* v = get("beta")) cfg.solver.beta = to_double("beta", *v);
  if (auto* v = get("delta")) cfg.solver.delta = to_double("delta", *v);
  if (auto* v = get("gamma")) cfg.solver.gamma = to_double("gamma", *v);
  if (auto* v = get("q")) cfg.solver.q = to_double("q", *v);
  if (auto* v = get("sigma2")) cfg.solver.sigma2 = to_double("sigma2", *v);
  if (auto* v = get("t")) cfg.solver.horizon = to_double("t", *v);
  if (auto* v = get("m_t")) cfg.solver.time_steps = static_cast<int>(to_int("m_t", *v));
  if (auto* v = get("rho")) {
    if (*v == "auto") {
      cfg.solver.rho_auto = true;
    } else {
      cfg.solver.rho_auto = false;
      cfg.solver.rho = to_double("rho", *v);
    }
  }
  if (auto* v = get("tol_picard")) cfg.solver.tol_picard = to_double("tol_picard", *v);
  if (auto* v = get("tol_product")) cfg.solver.tol_product = to_double("tol_product", *v);
  if (auto* v = get("max_iter")) cfg.solver.max_iter = static_cast<int>(to_int("max_iter", *v));
  if (auto* v = get("u0_kind")) cfg.solver.u0_kind = initial_kind_from_string(*v);
  if (auto* v = get("seed")) cfg.solver.seed = static_cast<std::uint64_t>(to_int("seed", *v));

  cfg.noise.seed = cfg.solver.seed;
  if (auto* v = get("h")) cfg.noise.hurst = to_double("h", *v);
  if (auto* v = get("kind")) cfg.noise.kind = noise_kind_from_string(*v);
  if (auto* v = get("band")) cfg.noise.band = static_cast<int>(to_int("band", *v));

  cfg.entries = std::move(kv);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace ftlab
