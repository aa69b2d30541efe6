#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "belay/core.hpp"
#include "belay/harness.hpp"
#include "belay/testbed.hpp"

namespace belay::harness {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string current;
  std::istringstream stream(value);
  while (std::getline(stream, current, ',')) {
    std::string item = trim(current);
    if (!item.empty()) items.push_back(std::move(item));
  }
  return items;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& value, int line) {
  const char* first = value.data();
  const char* last = value.data() + value.size();
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) fail(line, "invalid number: " + value);
  return out;
}

std::int64_t parse_int(const std::string& value, int line) {
  const char* first = value.data();
  const char* last = value.data() + value.size();
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) fail(line, "invalid integer: " + value);
  return out;
}

std::uint64_t parse_uint(const std::string& value, int line) {
  const char* first = value.data();
  const char* last = value.data() + value.size();
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last)
    fail(line, "invalid unsigned integer: " + value);
  return out;
}

bool parse_bool(const std::string& value, int line) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(line, "invalid boolean (expected true or false): " + value);
}

struct RawEntry {
  std::string value;
  int line = 0;
};

bool method_uses(const std::string& id, const std::string& setting) {
  if (setting == "lr") return true;
  const bool adam_like =
      id == "adam" || id == "ema_adam" || id == "belay_adam";
  const bool ema_like = id == "ema_sgd" || id == "ema_adam";
  const bool belay_like = id == "belay_sgd" || id == "belay_adam";
  if (setting == "lambda") return id == "momentum_sgd";
  if (setting == "beta1" || setting == "beta2" || setting == "eps")
    return adam_like;
  if (setting == "alpha") return ema_like;
  if (setting == "k" || setting == "m1" || setting == "m2" ||
      setting == "c1" || setting == "c2" || setting == "dt" ||
      setting == "fully_damped")
    return belay_like;
  return false;
}

}  // namespace

optim::MethodConfig default_method_config(const std::string& id) {
  optim::MethodConfig cfg;
  if (id == "sgd" || id == "momentum_sgd" || id == "adam" || id == "ema_sgd") {
    cfg.lr = 1e-3;
  } else if (id == "ema_adam") {
    cfg.lr = 1e-2;
  } else if (id == "belay_sgd") {
    cfg.lr = 1e-2;
  } else if (id == "belay_adam") {
    cfg.lr = 5e-2;
  } else {
    throw ConfigError("unknown method identifier: " + id);
  }
  if (id == "belay_sgd" || id == "belay_adam") {
    cfg.belay = fully_damped_params(1.0, 10.0, 20.0, cfg.lr);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  // An unreadable config is a configuration problem for the caller, unlike
  // I/O failures on data files, so it maps to ConfigError.
  if (!in) throw ConfigError("cannot open config file: " + path);

  std::map<std::string, RawEntry> globals;
  // method id -> setting -> entry, in first-seen order via the map key
  std::map<std::string, std::map<std::string, RawEntry>> method_settings;

  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for key '" + key + "'");

    if (key.rfind("method.", 0) == 0) {
      const std::string rest = key.substr(7);
      const auto dot = rest.find('.');
      if (dot == std::string::npos || dot == 0 || dot + 1 >= rest.size()) {
        fail(line_no, "method keys look like method.<id>.<setting>: " + key);
      }
      const std::string id = rest.substr(0, dot);
      const std::string setting = rest.substr(dot + 1);
      auto& slot = method_settings[id][setting];
      if (slot.line != 0) fail(line_no, "duplicate key: " + key);
      slot = {value, line_no};
    } else {
      static const std::set<std::string> known{
          "function", "start", "steps", "seed", "output_dir", "methods", "lrs"};
      if (!known.count(key)) fail(line_no, "unknown key: " + key);
      auto& slot = globals[key];
      if (slot.line != 0) fail(line_no, "duplicate key: " + key);
      slot = {value, line_no};
    }
  }

  ExperimentConfig cfg;

  const auto it_fn = globals.find("function");
  if (it_fn == globals.end()) throw ConfigError("missing required key: function");
  cfg.function = it_fn->second.value;
  const testbed::TestFunction fn = testbed::make_test_function(cfg.function);

  const auto it_methods = globals.find("methods");
  if (it_methods == globals.end())
    throw ConfigError("missing required key: methods");
  const auto method_list = split_list(it_methods->second.value);
  if (method_list.empty())
    fail(it_methods->second.line, "methods list is empty");
  std::set<std::string> seen;
  for (const auto& id : method_list) {
    if (!optim::known_method(id))
      fail(it_methods->second.line, "unknown method identifier: " + id);
    if (!seen.insert(id).second)
      fail(it_methods->second.line, "method listed twice: " + id);
  }

  if (const auto it = globals.find("start"); it != globals.end()) {
    const auto parts = split_list(it->second.value);
    if (parts.empty()) fail(it->second.line, "start vector is empty");
    cfg.start = ParamVector(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      cfg.start[i] = parse_double(parts[i], it->second.line);
    }
  } else {
    cfg.start = fn.default_start;
  }

  if (const auto it = globals.find("steps"); it != globals.end()) {
    cfg.steps = parse_int(it->second.value, it->second.line);
    if (cfg.steps < 1) fail(it->second.line, "steps must be >= 1");
  }

  if (const auto it = globals.find("seed"); it != globals.end()) {
    cfg.seed = parse_uint(it->second.value, it->second.line);
  }

  if (const auto it = globals.find("output_dir"); it != globals.end()) {
    cfg.output_dir = it->second.value;
  } else if (const char* env = std::getenv("BELAY_OUT_DIR")) {
    cfg.output_dir = env;
  }

  if (const auto it = globals.find("lrs"); it != globals.end()) {
    const auto parts = split_list(it->second.value);
    if (parts.empty()) fail(it->second.line, "lrs list is empty");
    for (const auto& p : parts) {
      cfg.lrs.push_back(parse_double(p, it->second.line));
    }
  }

  for (const auto& [id, settings] : method_settings) {
    if (!seen.count(id)) {
      fail(settings.begin()->second.line,
           "settings given for method not in methods list: " + id);
    }
    for (const auto& [setting, entry] : settings) {
      if (!method_uses(id, setting)) {
        fail(entry.line,
             "unknown setting '" + setting + "' for method " + id);
      }
    }
  }

  for (const auto& id : method_list) {
    MethodSpec spec;
    spec.id = id;
    spec.config = default_method_config(id);
    const auto it = method_settings.find(id);
    if (it != method_settings.end()) {
      const auto& settings = it->second;
      const auto get = [&settings](const char* name) {
        const auto s = settings.find(name);
        return s == settings.end() ? nullptr : &s->second;
      };
      if (const auto* e = get("lr")) spec.config.lr = parse_double(e->value, e->line);
      if (const auto* e = get("lambda")) spec.config.lambda = parse_double(e->value, e->line);
      if (const auto* e = get("beta1")) spec.config.beta1 = parse_double(e->value, e->line);
      if (const auto* e = get("beta2")) spec.config.beta2 = parse_double(e->value, e->line);
      if (const auto* e = get("eps")) spec.config.eps = parse_double(e->value, e->line);
      if (const auto* e = get("alpha")) spec.config.ema_alpha = parse_double(e->value, e->line);

      BelayParams& bp = spec.config.belay;
      if (const auto* e = get("k")) bp.k = parse_double(e->value, e->line);
      if (const auto* e = get("m1")) bp.m1 = parse_double(e->value, e->line);
      if (const auto* e = get("m2")) bp.m2 = parse_double(e->value, e->line);
      if (const auto* e = get("dt")) bp.dt = parse_double(e->value, e->line);
      bool want_fully_damped = false;
      if (const auto* e = get("fully_damped")) {
        want_fully_damped = parse_bool(e->value, e->line);
      }
      if (want_fully_damped) {
        bp.c1 = 2.0 * bp.m1 / bp.dt;
        bp.c2 = 2.0 * bp.m2 / bp.dt;
      }
      if (const auto* e = get("c1")) bp.c1 = parse_double(e->value, e->line);
      if (const auto* e = get("c2")) bp.c2 = parse_double(e->value, e->line);
    }
    if (id == "belay_sgd" || id == "belay_adam") {
      spec.config.belay.eta = spec.config.lr;
      if (auto err = validate_params(spec.config.belay)) {
        throw ConfigError("method " + id + ": " + *err);
      }
    }
    cfg.methods.push_back(std::move(spec));
  }

  if (cfg.start.size() != fn.objective.dimension) {
    throw ConfigError("start point dimension does not match function " +
                      cfg.function);
  }
  return cfg;
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write config file: " + path);

  out << "function = " << cfg.function << "\n";
  out << "start = ";
  for (std::size_t i = 0; i < cfg.start.size(); ++i) {
    if (i != 0) out << ", ";
    out << format_double(cfg.start[i]);
  }
  out << "\n";
  out << "steps = " << cfg.steps << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "output_dir = " << cfg.output_dir << "\n";
  out << "methods = ";
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    if (i != 0) out << ", ";
    out << cfg.methods[i].id;
  }
  out << "\n";
  if (!cfg.lrs.empty()) {
    out << "lrs = ";
    for (std::size_t i = 0; i < cfg.lrs.size(); ++i) {
      if (i != 0) out << ", ";
      out << format_double(cfg.lrs[i]);
    }
    out << "\n";
  }

  for (const auto& spec : cfg.methods) {
    const auto key = [&spec](const char* setting) {
      return "method." + spec.id + "." + setting;
    };
    const auto& c = spec.config;
    out << "\n";
    out << key("lr") << " = " << format_double(c.lr) << "\n";
    if (method_uses(spec.id, "lambda")) {
      out << key("lambda") << " = " << format_double(c.lambda) << "\n";
    }
    if (method_uses(spec.id, "beta1")) {
      out << key("beta1") << " = " << format_double(c.beta1) << "\n";
      out << key("beta2") << " = " << format_double(c.beta2) << "\n";
      out << key("eps") << " = " << format_double(c.eps) << "\n";
    }
    if (method_uses(spec.id, "alpha")) {
      out << key("alpha") << " = " << format_double(c.ema_alpha) << "\n";
    }
    if (method_uses(spec.id, "k")) {
      out << key("k") << " = " << format_double(c.belay.k) << "\n";
      out << key("m1") << " = " << format_double(c.belay.m1) << "\n";
      out << key("m2") << " = " << format_double(c.belay.m2) << "\n";
      out << key("c1") << " = " << format_double(c.belay.c1) << "\n";
      out << key("c2") << " = " << format_double(c.belay.c2) << "\n";
      out << key("dt") << " = " << format_double(c.belay.dt) << "\n";
    }
  }
  if (!out) throw IoError("failed writing config file: " + path);
}

}  // namespace belay::harness
