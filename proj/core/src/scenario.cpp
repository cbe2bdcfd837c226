#include "privwit/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "privwit/channels.hpp"
#include "privwit/keyrates.hpp"
#include "privwit/version.hpp"

namespace privwit {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

double parse_double(const std::string& raw, const std::string& where) {
  try {
    size_t used = 0;
    double v = std::stod(raw, &used);
    if (trim(raw.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  fail(where, "expected a real number, got '" + raw + "'");
}

long long parse_int(const std::string& raw, const std::string& where) {
  try {
    size_t used = 0;
    long long v = std::stoll(raw, &used);
    if (trim(raw.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  fail(where, "expected an integer, got '" + raw + "'");
}

std::uint64_t parse_u64(const std::string& raw, const std::string& where) {
  try {
    size_t used = 0;
    unsigned long long v = std::stoull(raw, &used);
    if (trim(raw.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  fail(where, "expected a non-negative integer, got '" + raw + "'");
}

std::vector<std::vector<double>> parse_matrix(const std::string& raw, const std::string& where) {
  std::vector<std::vector<double>> m;
  std::stringstream rows(raw);
  std::string row;
  while (std::getline(rows, row, ';')) {
    row = trim(row);
    if (row.empty()) continue;
    std::vector<double> r;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) r.push_back(parse_double(trim(cell), where));
    m.push_back(std::move(r));
  }
  if (m.empty()) fail(where, "empty matrix");
  return m;
}

// Dispatch one "section.key = value" assignment onto the scenario. `where`
// prefixes every diagnostic (file:line for INI, file + field path for JSON).
void set_field(Scenario& sc, const std::string& section, const std::string& key, const std::string& value,
               const std::string& where) {
  auto is = [&](const char* s, const char* k) { return section == s && key == k; };
  // INI callers pass a bare file:line; JSON callers already cite the field path.
  const std::string at = where.find("field '") != std::string::npos
                             ? where
                             : where + ", field '" + (section.empty() ? key : section + "." + key) + "'";
  if (is("", "task")) sc.task = value;
  else if (is("", "setting")) sc.setting = static_cast<int>(parse_int(value, at));
  else if (is("", "threads")) sc.threads = static_cast<int>(parse_int(value, at));
  else if (is("", "deriv_tol")) sc.deriv_tol = parse_double(value, at);
  else if (is("", "p_grid_points")) sc.p_grid_points = static_cast<int>(parse_int(value, at));
  else if (is("state", "family")) sc.state.family = value;
  else if (is("state", "ds")) sc.state.ds = static_cast<int>(parse_int(value, at));
  else if (is("state", "da")) sc.state.da = static_cast<int>(parse_int(value, at));
  else if (is("state", "db")) sc.state.db = static_cast<int>(parse_int(value, at));
  else if (is("state", "d")) sc.state.d = static_cast<int>(parse_int(value, at));
  else if (is("state", "seed")) sc.state.seed = parse_u64(value, at);
  else if (is("state", "c")) sc.state.c = parse_matrix(value, at);
  else if (is("channel", "kind")) sc.channel.kind = value;
  else if (is("channel", "alpha")) sc.channel.alpha = parse_double(value, at);
  else if (is("dynamics", "kind")) sc.dynamics.kind = value;
  else if (is("dynamics", "gamma")) sc.dynamics.gamma = parse_double(value, at);
  else if (is("dynamics", "omega")) sc.dynamics.omega = parse_double(value, at);
  else if (is("sweep", "start")) sc.sweep.start = parse_double(value, at);
  else if (is("sweep", "stop")) sc.sweep.stop = parse_double(value, at);
  else if (is("sweep", "count")) sc.sweep.count = static_cast<int>(parse_int(value, at));
  else if (is("grid", "start")) sc.grid.start = parse_double(value, at);
  else if (is("grid", "stop")) sc.grid.stop = parse_double(value, at);
  else if (is("grid", "count")) sc.grid.count = static_cast<int>(parse_int(value, at));
  else if (is("witness", "kind")) sc.witness.kind = value;
  else if (is("witness", "seed")) sc.witness.seed = parse_u64(value, at);
  else if (is("witness", "ds")) sc.witness.ds = static_cast<int>(parse_int(value, at));
  else if (is("region", "kind")) sc.region.kind = value;
  else if (is("region", "d_A")) sc.region.d_A = static_cast<int>(parse_int(value, at));
  else if (is("region", "x_start")) sc.region.x.start = parse_double(value, at);
  else if (is("region", "x_stop")) sc.region.x.stop = parse_double(value, at);
  else if (is("region", "x_count")) sc.region.x.count = static_cast<int>(parse_int(value, at));
  else if (is("region", "y_start")) sc.region.y.start = parse_double(value, at);
  else if (is("region", "y_stop")) sc.region.y.stop = parse_double(value, at);
  else if (is("region", "y_count")) sc.region.y.count = static_cast<int>(parse_int(value, at));
  else if (is("bounds", "S_a")) sc.bounds.S_a = parse_double(value, at);
  else if (is("bounds", "S_b")) sc.bounds.S_b = parse_double(value, at);
  else if (is("bounds", "dim_a")) sc.bounds.dim_a = static_cast<int>(parse_int(value, at));
  else if (is("bounds", "d_A")) sc.bounds.d_A = static_cast<int>(parse_int(value, at));
  else if (is("bounds", "d_B")) sc.bounds.d_B = static_cast<int>(parse_int(value, at));
  else if (is("bounds", "d_X")) sc.bounds.d_X = static_cast<int>(parse_int(value, at));
  else if (is("bounds", "S_C")) sc.bounds.S_C = parse_double(value, at);
  else if (is("bounds", "S_D")) sc.bounds.S_D = parse_double(value, at);
  else if (is("bounds", "cmi")) sc.bounds.cmi = parse_double(value, at);
  else if (is("bounds", "cmi_er")) sc.bounds.cmi_er = parse_double(value, at);
  else if (is("bounds", "er_infinity")) sc.bounds.er_infinity = parse_double(value, at);
  else if (is("output", "path")) sc.output.path = value;
  else if (is("output", "format")) sc.output.format = value;
  else if (is("output", "report_path")) sc.output.report_path = value;
  else
    fail(where, "unknown field '" + (section.empty() ? key : section + "." + key) + "'");
}

Scenario parse_ini(const std::string& text, const std::string& name) {
  Scenario sc;
  std::stringstream in(text);
  std::string line;
  std::string section;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    const std::string where = name + ":" + std::to_string(ln);
    if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(where, "unterminated section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(where, "empty section name");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) fail(where, "expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(where, "missing key before '='");
    set_field(sc, section, key, value, where);
  }
  return sc;
}

// Recast every JSON scalar as the string the INI dialect would have carried,
// so both loaders share one field dispatcher (and one set of diagnostics).
std::string scalar_to_string(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  fail(where, "expected a string or number");
}

std::string matrix_to_string(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of rows");
  std::string out;
  for (const auto& row : v) {
    if (!row.is_array()) fail(where, "expected an array of rows");
    if (!out.empty()) out += ";";
    std::string r;
    for (const auto& cell : row) {
      if (!r.empty()) r += ",";
      r += scalar_to_string(cell, where);
    }
    out += r;
  }
  return out;
}

Scenario parse_json_text(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(name + ": " + e.what());
  }
  if (!doc.is_object()) fail(name, "top-level JSON value must be an object");

  Scenario sc;
  auto grid_keys = [](const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "_" + key;
  };
  for (const auto& [key, value] : doc.items()) {
    const std::string where = name + ": field '" + key + "'";
    if (value.is_object()) {
      for (const auto& [sub, sv] : value.items()) {
        const std::string swhere = name + ": field '" + key + "." + sub + "'";
        if (key == "state" && sub == "c")
          set_field(sc, key, sub, matrix_to_string(sv, swhere), swhere);
        else if (key == "region" && (sub == "x" || sub == "y") && sv.is_object()) {
          for (const auto& [gk, gv] : sv.items()) {
            const std::string gwhere = name + ": field '" + key + "." + sub + "." + gk + "'";
            set_field(sc, key, grid_keys(sub, gk), scalar_to_string(gv, gwhere), gwhere);
          }
        } else
          set_field(sc, key, sub, scalar_to_string(sv, swhere), swhere);
      }
    } else {
      set_field(sc, "", key, scalar_to_string(value, where), where);
    }
  }
  return sc;
}

void append(std::string& s, const std::string& key, const std::string& v) {
  s += key;
  s += '=';
  s += v;
  s += '\n';
}

std::string real17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> GridSpec::points() const {
  if (count < 1) throw ValidationError("grid count must be >= 1");
  std::vector<double> p(count);
  if (count == 1) {
    p[0] = start;
    return p;
  }
  for (int i = 0; i < count; ++i) p[i] = start + (stop - start) * i / (count - 1);
  return p;
}

void Scenario::validate() const {
  auto in_set = [](const std::string& v, std::initializer_list<const char*> set) {
    for (const char* s : set)
      if (v == s) return true;
    return false;
  };
  if (!in_set(task, {"attack", "regions", "bounds", "randomness", "markov", "demo-superdense"}))
    throw ValidationError("task: unknown task '" + task + "'");
  if (!in_set(state.family, {"gamma-swap", "bell", "product-zero", "maximally-mixed", "block-orthogonal",
                             "mcs-random", "mcs", "superdense"}))
    throw ValidationError("state.family: unknown family '" + state.family + "'");
  if (state.ds < 1) throw ValidationError("state.ds must be >= 1");
  if (task == "attack" && state.ds < 2) throw ValidationError("state.ds must be >= 2 for attack sweeps");
  if (state.da < 1 || state.db < 1) throw ValidationError("state.da and state.db must be >= 1");
  if (state.d < 1) throw ValidationError("state.d must be >= 1");
  if (state.family == "mcs") {
    if (state.c.empty()) throw ValidationError("state.c: family 'mcs' needs an explicit coefficient matrix");
    for (const auto& row : state.c)
      if (row.size() != state.c.size())
        throw ValidationError("state.c must be a square matrix");
  }
  parse_channel_kind(channel.kind);  // throws naming the kind
  if (channel.alpha < 0 || channel.alpha > 1)
    throw ValidationError("channel.alpha must lie in [0,1], got " + real17(channel.alpha));
  if (!in_set(dynamics.kind, {"semigroup", "oscillating"}))
    throw ValidationError("dynamics.kind: unknown dynamics '" + dynamics.kind + "'");
  if (dynamics.gamma <= 0) throw ValidationError("dynamics.gamma must be > 0");
  if (dynamics.omega < 0) throw ValidationError("dynamics.omega must be >= 0");
  if (sweep.count < 1) throw ValidationError("sweep.count must be >= 1");
  if (sweep.stop < sweep.start) throw ValidationError("sweep.stop must be >= sweep.start");
  if (task == "attack" && (sweep.start < 0 || sweep.stop > 1))
    throw ValidationError("sweep: alpha sweep must stay inside [0,1]");
  if (task == "markov") {
    if (grid.count < 3) throw ValidationError("grid.count must be >= 3 for derivative analysis");
    if (grid.stop <= grid.start) throw ValidationError("grid.stop must exceed grid.start");
    if (grid.start < 0) throw ValidationError("grid.start must be >= 0");
  }
  if (p_grid_points < 2) throw ValidationError("p_grid_points must be >= 2");
  if (!in_set(witness.kind, {"coherence", "random"}))
    throw ValidationError("witness.kind: unknown witness '" + witness.kind + "'");
  if (witness.ds < 1) throw ValidationError("witness.ds must be >= 1");
  if (deriv_tol <= 0) throw ValidationError("deriv_tol must be > 0");
  if (setting < 1 || setting > 4) throw ValidationError("setting must be 1..4");
  parse_region_kind(region.kind);
  if (region.d_A < 2) throw ValidationError("region.d_A must be >= 2");
  if (region.x.count < 1 || region.y.count < 1)
    throw ValidationError("region grid counts must be >= 1");
  if (region.x.start < 0) throw ValidationError("region.x: the information axis starts at >= 0");
  if (bounds.S_a < 0 || bounds.S_b < 0 || bounds.S_C < 0 || bounds.S_D < 0)
    throw ValidationError("bounds: entropies must be >= 0");
  if (bounds.dim_a < 1 || bounds.d_A < 1 || bounds.d_B < 1 || bounds.d_X < 1)
    throw ValidationError("bounds: dimensions must be >= 1");
  if (bounds.cmi < 0) throw ValidationError("bounds.cmi must be >= 0");
  if (bounds.cmi_er < 0) throw ValidationError("bounds.cmi_er must be >= 0");
  if (bounds.er_infinity < 0) throw ValidationError("bounds.er_infinity must be >= 0");
  if (threads < 0) throw ValidationError("threads must be >= 0");
  if (!in_set(output.format, {"", "csv", "json"}))
    throw ValidationError("output.format must be 'csv' or 'json'");
}

std::string Scenario::canonical() const {
  std::string s;
  append(s, "task", task);
  append(s, "state.family", state.family);
  append(s, "state.ds", std::to_string(state.ds));
  append(s, "state.da", std::to_string(state.da));
  append(s, "state.db", std::to_string(state.db));
  append(s, "state.d", std::to_string(state.d));
  append(s, "state.seed", std::to_string(state.seed));
  std::string cm;
  for (const auto& row : state.c) {
    if (!cm.empty()) cm += ";";
    for (size_t j = 0; j < row.size(); ++j) cm += (j ? "," : "") + real17(row[j]);
  }
  append(s, "state.c", cm);
  append(s, "channel.kind", channel.kind);
  append(s, "channel.alpha", real17(channel.alpha));
  append(s, "dynamics.kind", dynamics.kind);
  append(s, "dynamics.gamma", real17(dynamics.gamma));
  append(s, "dynamics.omega", real17(dynamics.omega));
  append(s, "sweep", real17(sweep.start) + ":" + real17(sweep.stop) + ":" + std::to_string(sweep.count));
  append(s, "grid", real17(grid.start) + ":" + real17(grid.stop) + ":" + std::to_string(grid.count));
  append(s, "p_grid_points", std::to_string(p_grid_points));
  append(s, "witness.kind", witness.kind);
  append(s, "witness.seed", std::to_string(witness.seed));
  append(s, "witness.ds", std::to_string(witness.ds));
  append(s, "region.kind", region.kind);
  append(s, "region.d_A", std::to_string(region.d_A));
  append(s, "region.x", real17(region.x.start) + ":" + real17(region.x.stop) + ":" + std::to_string(region.x.count));
  append(s, "region.y", real17(region.y.start) + ":" + real17(region.y.stop) + ":" + std::to_string(region.y.count));
  append(s, "deriv_tol", real17(deriv_tol));
  append(s, "setting", std::to_string(setting));
  append(s, "bounds.S_a", real17(bounds.S_a));
  append(s, "bounds.S_b", real17(bounds.S_b));
  append(s, "bounds.dim_a", std::to_string(bounds.dim_a));
  append(s, "bounds.d_A", std::to_string(bounds.d_A));
  append(s, "bounds.d_B", std::to_string(bounds.d_B));
  append(s, "bounds.d_X", std::to_string(bounds.d_X));
  append(s, "bounds.S_C", real17(bounds.S_C));
  append(s, "bounds.S_D", real17(bounds.S_D));
  append(s, "bounds.cmi", real17(bounds.cmi));
  append(s, "bounds.cmi_er", real17(bounds.cmi_er));
  append(s, "bounds.er_infinity", real17(bounds.er_infinity));
  return s;
}

std::string Scenario::hash() const { return fnv1a_hex(canonical()); }

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open scenario file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

Scenario parse_scenario(const std::string& text, const std::string& name) {
  bool looks_json = name.size() >= 5 && name.substr(name.size() - 5) == ".json";
  if (!looks_json) {
    size_t first = text.find_first_not_of(" \t\r\n");
    looks_json = first != std::string::npos && text[first] == '{';
  }
  Scenario sc = looks_json ? parse_json_text(text, name) : parse_ini(text, name);
  try {
    sc.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(name + ": " + e.what());
  }
  return sc;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::map<std::string, std::string> standard_meta(const Scenario& sc) {
  std::map<std::string, std::string> m;
  m["scenario"] = sc.hash();
  m["tol_herm"] = format_real(tol::herm);
  m["tol_trace"] = format_real(tol::trace);
  m["tol_psd"] = format_real(tol::psd);
  m["tol_cptp"] = format_real(tol::cptp);
  m["tol_deriv"] = format_real(tol::deriv);
  return m;
}

namespace {
std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}
}  // namespace

std::string ResultTable::to_csv() const {
  std::string out = "# privwit ";
  out += version();
  for (const auto& [k, v] : meta) {
    out += ' ';
    out += k;
    out += '=';
    out += v;
  }
  out += '\n';
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_quote(columns[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw ValidationError("result table is not rectangular");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_real(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string ResultTable::to_json_text() const {
  json doc;
  doc["version"] = version();
  doc["meta"] = meta;
  doc["columns"] = columns;
  json jr = json::array();
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw ValidationError("result table is not rectangular");
    json r = json::array();
    for (double v : row) {
      if (std::isfinite(v))
        r.push_back(v);
      else
        r.push_back(format_real(v));
    }
    jr.push_back(std::move(r));
  }
  doc["rows"] = std::move(jr);
  return doc.dump(2) + "\n";
}

}  // namespace privwit
