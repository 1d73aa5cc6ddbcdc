#include "resonance/run_config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "resonance/errors.hpp"
#include "resonance/io.hpp"

namespace resonance {

namespace {

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(values[i]);
  }
  return out + "]";
}

void write_model(std::ostringstream& out, const ModelSpec& m) {
  out << "kind = " << quoted(label(m.kind)) << "\n";
  out << "convention = " << quoted(label(m.convention)) << "\n";
  out << "m = " << format_double(m.mass) << "\n";
  out << "gamma = " << format_double(m.width) << "\n";
  out << "residue-re = " << format_double(m.residue_re) << "\n";
  out << "residue-im = " << format_double(m.residue_im) << "\n";
  out << "background = " << array(m.background) << "\n";
  out << "cross-section-background = " << (m.cross_section_background ? "true" : "false") << "\n";
}

using Setter = std::function<void(const std::vector<std::string>&)>;

std::string single(const std::vector<std::string>& in) {
  if (in.size() != 1) throw ValidationError("expected a single value");
  return in.front();
}

Setter set_double(double& target) {
  return [&target](const auto& in) { target = parse_double(single(in)); };
}

template <typename Int>
Setter set_int(Int& target) {
  return [&target](const auto& in) {
    const std::string s = single(in);
    Int value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw ValidationError("not an integer: '" + s + "'");
    }
    target = value;
  };
}

Setter set_string(std::string& target) {
  return [&target](const auto& in) { target = single(in); };
}

Setter set_bool(bool& target) {
  return [&target](const auto& in) {
    const std::string s = single(in);
    if (s == "true") {
      target = true;
    } else if (s == "false") {
      target = false;
    } else {
      throw ValidationError("not a boolean: '" + s + "'");
    }
  };
}

Setter set_doubles(std::vector<double>& target) {
  return [&target](const auto& in) {
    target.clear();
    for (const std::string& s : in) {
      if (s.empty() || s == "[]") continue;
      target.push_back(parse_double(s));
    }
  };
}

template <typename Enum, typename Parse>
Setter set_enum(Enum& target, Parse parse) {
  return [&target, parse](const auto& in) {
    const std::string s = single(in);
    const auto value = parse(s);
    if (!value) throw ValidationError("unknown value '" + s + "'");
    target = *value;
  };
}

void add_model_keys(std::map<std::string, Setter>& keys, const std::string& section,
                    ModelSpec& m) {
  keys[section + ".kind"] = set_enum(m.kind, parse_lineshape_kind);
  keys[section + ".convention"] = set_enum(m.convention, parse_convention);
  keys[section + ".m"] = set_double(m.mass);
  keys[section + ".gamma"] = set_double(m.width);
  keys[section + ".residue-re"] = set_double(m.residue_re);
  keys[section + ".residue-im"] = set_double(m.residue_im);
  keys[section + ".background"] = set_doubles(m.background);
  keys[section + ".cross-section-background"] = set_bool(m.cross_section_background);
}

std::map<std::string, Setter> key_table(RunConfig& c) {
  std::map<std::string, Setter> keys;
  keys["seed"] = set_int(c.seed);
  keys["output-dir"] = set_string(c.output_dir);

  keys["convert.from"] = set_enum(c.convert.from, parse_convention);
  keys["convert.m"] = set_double(c.convert.mass);
  keys["convert.gamma"] = set_double(c.convert.width);
  keys["convert.to"] = set_enum(c.convert.to, parse_convention);

  add_model_keys(keys, "synth", c.synth.model);
  keys["synth.x-min"] = set_double(c.synth.x_min);
  keys["synth.x-max"] = set_double(c.synth.x_max);
  keys["synth.points"] = set_int(c.synth.points);
  keys["synth.noise"] = set_double(c.synth.noise);
  keys["synth.out"] = set_string(c.synth.out);

  add_model_keys(keys, "fit", c.fit.model);
  keys["fit.data"] = set_string(c.fit.data);
  keys["fit.max-iter"] = set_int(c.fit.max_iter);
  keys["fit.out"] = set_string(c.fit.out);

  keys["evolve.z-real"] = set_double(c.evolve.z_real);
  keys["evolve.gamma"] = set_double(c.evolve.gamma);
  keys["evolve.order"] = set_int(c.evolve.order);
  keys["evolve.t-max"] = set_double(c.evolve.t_max);
  keys["evolve.steps"] = set_int(c.evolve.steps);
  keys["evolve.out"] = set_string(c.evolve.out);

  keys["survival.er-over-gamma"] = set_double(c.survival.er_over_gamma);
  keys["survival.gamma"] = set_double(c.survival.gamma);
  keys["survival.t-max"] = set_double(c.survival.t_max);
  keys["survival.steps"] = set_int(c.survival.steps);
  keys["survival.method"] = set_enum(c.survival.method, parse_survival_method);
  keys["survival.out"] = set_string(c.survival.out);
  return keys;
}

}  // namespace

std::string serialize_run_config(const RunConfig& c) {
  std::ostringstream out;
  out << "seed = " << c.seed << "\n";
  out << "output-dir = " << quoted(c.output_dir) << "\n";

  out << "\n[convert]\n";
  out << "from = " << quoted(label(c.convert.from)) << "\n";
  out << "m = " << format_double(c.convert.mass) << "\n";
  out << "gamma = " << format_double(c.convert.width) << "\n";
  out << "to = " << quoted(label(c.convert.to)) << "\n";

  out << "\n[synth]\n";
  write_model(out, c.synth.model);
  out << "x-min = " << format_double(c.synth.x_min) << "\n";
  out << "x-max = " << format_double(c.synth.x_max) << "\n";
  out << "points = " << c.synth.points << "\n";
  out << "noise = " << format_double(c.synth.noise) << "\n";
  out << "out = " << quoted(c.synth.out) << "\n";

  out << "\n[fit]\n";
  write_model(out, c.fit.model);
  out << "data = " << quoted(c.fit.data) << "\n";
  out << "max-iter = " << c.fit.max_iter << "\n";
  out << "out = " << quoted(c.fit.out) << "\n";

  out << "\n[evolve]\n";
  out << "z-real = " << format_double(c.evolve.z_real) << "\n";
  out << "gamma = " << format_double(c.evolve.gamma) << "\n";
  out << "order = " << c.evolve.order << "\n";
  out << "t-max = " << format_double(c.evolve.t_max) << "\n";
  out << "steps = " << c.evolve.steps << "\n";
  out << "out = " << quoted(c.evolve.out) << "\n";

  out << "\n[survival]\n";
  out << "er-over-gamma = " << format_double(c.survival.er_over_gamma) << "\n";
  out << "gamma = " << format_double(c.survival.gamma) << "\n";
  out << "t-max = " << format_double(c.survival.t_max) << "\n";
  out << "steps = " << c.survival.steps << "\n";
  out << "method = " << quoted(label(c.survival.method)) << "\n";
  out << "out = " << quoted(c.survival.out) << "\n";
  return out.str();
}

RunConfig parse_run_config(std::string_view text, const RunConfig& base) {
  RunConfig config = base;
  const auto keys = key_table(config);

  std::istringstream in{std::string(text)};
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::ParseError& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  for (const CLI::ConfigItem& item : items) {
    // section open/close markers
    if (item.name == "++" || item.name == "--") continue;
    const std::string key = item.fullname();
    const auto it = keys.find(key);
    if (it == keys.end()) throw ValidationError("config: unknown key '" + key + "'");
    try {
      it->second(item.inputs);
    } catch (const ValidationError& e) {
      throw ValidationError("config: key '" + key + "': " + e.what());
    }
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& base) {
  const std::string text = read_text_file(path);
  try {
    return parse_run_config(text, base);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace resonance
