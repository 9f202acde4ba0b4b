#include "esdg/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace esdg {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument(std::string(key) + ": cannot parse '" + std::string(text) + "'");
  }
  return v;
}

int parse_int_min(std::string_view key, std::string_view text, int lo) {
  const int v = parse_number<int>(key, text);
  if (v < lo) throw std::invalid_argument(std::string(key) + " must be at least " + std::to_string(lo));
  return v;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

void apply_config_key(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (const auto dot = key.rfind('.'); dot != std::string_view::npos) key = key.substr(dot + 1);
  value = trim(value);
  if (key == "N") {
    cfg.N = parse_int_min(key, value, 1);
  } else if (key == "Ngeo") {
    cfg.Ngeo = parse_int_min(key, value, 1);
  } else if (key == "option") {
    cfg.option = parse_int_min(key, value, 1);
    if (cfg.option > 3) throw std::invalid_argument("option must be 1, 2 or 3");
  } else if (key == "element_kind") {
    cfg.element_kind = parse_mesh_kind(value);
  } else if (key == "nx") {
    cfg.nx = parse_int_min(key, value, 1);
  } else if (key == "ny") {
    cfg.ny = parse_int_min(key, value, 1);
  } else if (key == "domain") {
    double d[4];
    std::string_view rest = value;
    for (int i = 0; i < 4; ++i) {
      const auto comma = rest.find(',');
      if ((i < 3) != (comma != std::string_view::npos)) {
        throw std::invalid_argument("domain must be x0,x1,y0,y1");
      }
      d[i] = parse_number<double>(key, trim(rest.substr(0, comma)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (!(d[1] > d[0]) || !(d[3] > d[2])) throw std::invalid_argument("domain must have x1 > x0 and y1 > y0");
    cfg.domain = {d[0], d[1], d[2], d[3]};
  } else if (key == "alpha") {
    cfg.alpha = parse_number<double>(key, value);
  } else if (key == "cfl") {
    cfg.cfl = parse_number<double>(key, value);
    if (!(cfg.cfl > 0)) throw std::invalid_argument("cfl must be positive");
  } else if (key == "T") {
    cfg.T = parse_number<double>(key, value);
    if (!(cfg.T >= 0)) throw std::invalid_argument("T must be non-negative");
  } else if (key == "flux") {
    if (value == "ec") {
      cfg.flux = FluxMode::EntropyConservative;
    } else if (value == "es") {
      cfg.flux = FluxMode::EntropyStable;
    } else {
      throw std::invalid_argument("flux must be ec or es");
    }
  } else if (key == "gamma") {
    cfg.gamma = parse_number<double>(key, value);
    if (!(cfg.gamma > 1)) throw std::invalid_argument("gamma must exceed 1");
  } else if (key == "out_dir") {
    if (value.empty()) throw std::invalid_argument("out_dir must not be empty");
    cfg.out_dir = std::string(value);
  } else if (key == "threads") {
    cfg.threads = parse_int_min(key, value, 1);
  } else if (key == "seed") {
    cfg.seed = parse_number<unsigned>(key, value);
  } else {
    throw std::invalid_argument("unknown key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::istream& in, const std::string& source, RunConfig base) {
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) throw ConfigError(source, n, "malformed section header");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ConfigError(source, n, "expected key = value");
    const auto key = trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError(source, n, "missing key");
    try {
      apply_config_key(base, key, s.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source, n, e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  return parse_config(in, path, std::move(base));
}

std::string format_config(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "N = " << c.N << "\nNgeo = " << c.Ngeo << "\noption = " << c.option
     << "\nelement_kind = " << to_string(c.element_kind) << "\nnx = " << c.nx << "\nny = " << c.ny
     << "\ndomain = " << c.domain.x0 << "," << c.domain.x1 << "," << c.domain.y0 << "," << c.domain.y1
     << "\nalpha = " << c.alpha << "\ncfl = " << c.cfl << "\nT = " << c.T
     << "\nflux = " << (c.flux == FluxMode::EntropyConservative ? "ec" : "es") << "\ngamma = " << c.gamma
     << "\nout_dir = " << c.out_dir << "\nthreads = " << c.threads << "\nseed = " << c.seed << "\n";
  return os.str();
}

}  // namespace esdg
