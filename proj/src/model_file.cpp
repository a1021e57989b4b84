// Copyright 2026 The lcel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcel/model_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "lcel/parse.hpp"

namespace lcel {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k == s.size() || s[k] == sep) {
      out.push_back(trim(s.substr(start, k - start)));
      start = k + 1;
    }
  }
  return out;
}

double parse_number(const std::string& text, int line) {
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size() || text.empty()) {
    throw ModelFileError(kBadValue, "expected a number, got '" + text + "'", line);
  }
  return v;
}

int parse_int(const std::string& text, int line) {
  int v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size() || text.empty()) {
    throw ModelFileError(kBadValue, "expected an integer, got '" + text + "'", line);
  }
  return v;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

int line_of(const ModelFile& f, const std::string& key) {
  const auto it = f.lines.find(key);
  return it == f.lines.end() ? 0 : it->second;
}

}  // namespace

ModelFileError::ModelFileError(std::string code, const std::string& message, int line)
    : InvalidArgument(code + (line > 0 ? " (line " + std::to_string(line) + ")" : std::string()) + ": " + message),
      code_(std::move(code)),
      line_(line) {}

std::vector<std::pair<std::string, double>> parse_assignments(std::string_view text, int line) {
  std::vector<std::pair<std::string, double>> out;
  if (trim(text).empty()) return out;
  for (const std::string& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ModelFileError(kSyntaxError, "expected name=value, got '" + item + "'", line);
    const std::string name = trim(std::string_view(item).substr(0, eq));
    if (name.empty()) throw ModelFileError(kSyntaxError, "missing name in '" + item + "'", line);
    out.emplace_back(name, parse_number(trim(std::string_view(item).substr(eq + 1)), line));
  }
  return out;
}

ModelFile parse_model_file(std::string_view text) {
  static const std::set<std::string> kTopKeys{"dim", "order", "coordinates", "lagrangian", "sigma", "parameters"};
  static const std::set<std::string> kSimKeys{"t0", "t1", "dt", "init"};
  ModelFile f;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool in_block = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(std::string_view(raw).substr(0, hash));
    if (content.empty()) continue;
    if (!in_block && content.rfind("simulation", 0) == 0 && content.back() == '{' &&
        trim(std::string_view(content).substr(10, content.size() - 11)).empty()) {
      if (f.simulation) throw ModelFileError(kSyntaxError, "duplicate simulation block", line);
      f.simulation.emplace();
      f.lines["simulation"] = line;
      in_block = true;
      continue;
    }
    if (content == "}") {
      if (!in_block) throw ModelFileError(kSyntaxError, "unmatched '}'", line);
      in_block = false;
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ModelFileError(kSyntaxError, "expected 'key = value'", line);
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    const std::string scoped = in_block ? "simulation." + key : key;
    if ((in_block ? kSimKeys : kTopKeys).count(key) == 0) {
      throw ModelFileError(kSyntaxError, "unknown key '" + key + "'", line);
    }
    if (!f.lines.emplace(scoped, line).second) throw ModelFileError(kSyntaxError, "duplicate key '" + key + "'", line);
    if (in_block) {
      SimulationBlock& sim = *f.simulation;
      if (key == "init") {
        sim.init = parse_assignments(value, line);
      } else {
        (key == "t0" ? sim.t0 : key == "t1" ? sim.t1 : sim.dt) = parse_number(value, line);
      }
    } else if (key == "dim") {
      f.dim = parse_int(value, line);
    } else if (key == "order") {
      f.order = parse_int(value, line);
    } else if (key == "coordinates") {
      f.coordinates = split(value, ',');
      for (const std::string& c : f.coordinates) {
        if (!is_identifier(c) || is_reserved_name(c)) {
          throw ModelFileError(kBadValue, "invalid coordinate name '" + c + "'", line);
        }
      }
      if (std::set<std::string>(f.coordinates.begin(), f.coordinates.end()).size() != f.coordinates.size()) {
        throw ModelFileError(kBadValue, "duplicate coordinate name", line);
      }
    } else if (key == "lagrangian") {
      f.lagrangian = value;
    } else if (key == "sigma") {
      f.sigma = value;
    } else {
      for (const auto& [name, v] : parse_assignments(value, line)) {
        if (!is_identifier(name) || is_reserved_name(name)) {
          throw ModelFileError(kBadValue, "invalid parameter name '" + name + "'", line);
        }
        f.parameters[name] = v;
      }
    }
  }
  if (in_block) throw ModelFileError(kSyntaxError, "unterminated simulation block", line);
  for (const char* key : {"dim", "order", "coordinates", "lagrangian"}) {
    if (f.lines.count(key) == 0) throw ModelFileError(kMissingKey, std::string("missing key '") + key + "'");
  }
  if (f.dim < 1) throw ModelFileError(kBadValue, "dim must be positive", line_of(f, "dim"));
  if (f.order < 1) throw ModelFileError(kBadValue, "order must be positive", line_of(f, "order"));
  return f;
}

ModelFile read_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFileError(kSyntaxError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_file(buf.str());
}

LagrangianModel build_model(const ModelFile& f) {
  if (static_cast<int>(f.coordinates.size()) != f.dim) {
    throw ModelFileError(kCoordinateCount,
                         "dim is " + std::to_string(f.dim) + " but " + std::to_string(f.coordinates.size()) +
                             " coordinates are listed",
                         line_of(f, "coordinates"));
  }
  for (const std::string& c : f.coordinates) {
    if (f.parameters.count(c)) {
      throw ModelFileError(kBadValue, "'" + c + "' is both a coordinate and a parameter", line_of(f, "parameters"));
    }
  }
  // Parse against a roomier jet space so that excess orders surface as
  // order violations rather than parse errors.
  const JetSpace roomy(f.dim, f.order, 2 * f.order + 64);
  ParseOptions options;
  options.coordinates = f.coordinates;
  options.parameters.emplace();
  for (const auto& [name, _] : f.parameters) options.parameters->insert(name);

  auto parse = [&](const std::string& text, const char* key) {
    try {
      return parse_expression(text, roomy, options);
    } catch (const ParseError& e) {
      throw ModelFileError(kExpressionParse, std::string(key) + ": " + e.what(), line_of(f, key));
    }
  };
  const Expr lagrangian = parse(f.lagrangian, "lagrangian");
  if (lagrangian.max_order() > f.order) {
    throw ModelFileError(kLagrangianOrder,
                         "the Lagrangian involves derivatives of order " + std::to_string(lagrangian.max_order()) +
                             " but order is " + std::to_string(f.order),
                         line_of(f, "lagrangian"));
  }
  ConformalFactor sigma = ConformalFactor::zero();
  if (trim(f.sigma) == "abstract") {
    sigma = ConformalFactor::abstract();
  } else {
    const Expr s = parse(f.sigma, "sigma");
    if (s.max_order() > 0) {
      throw ModelFileError(kSigmaOrder, "sigma may depend on the coordinates only, not their derivatives",
                           line_of(f, "sigma"));
    }
    sigma = ConformalFactor::concrete(s);
  }
  LagrangianModel model{JetSpace(f.dim, f.order), lagrangian, sigma, f.coordinates, f.parameters};
  model.validate();
  return model;
}

std::map<JetKey, double> resolve_jets(const LagrangianModel& model,
                                      const std::vector<std::pair<std::string, double>>& values) {
  ParseOptions options;
  options.coordinates = model.coordinates;
  options.parameters.emplace();
  std::map<JetKey, double> out;
  for (const auto& [label, value] : values) {
    Expr e;
    try {
      e = parse_expression(label, model.space, options);
    } catch (const ParseError& err) {
      throw ModelFileError(kExpressionParse, "initial value '" + label + "': " + err.what());
    }
    if (e.kind() != Kind::kJet) throw ModelFileError(kBadValue, "'" + label + "' is not a coordinate jet");
    if (!out.emplace(e.node().jet, value).second) {
      throw ModelFileError(kBadValue, "'" + label + "' is given twice");
    }
  }
  return out;
}

}  // namespace lcel
