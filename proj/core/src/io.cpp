#include "spinorflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace spinorflow {

namespace {

using nlohmann::json;

double finite_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SchemaError(where + " must be finite");
  return x;
}

std::vector<double> number_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + " must be an array");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(finite_number(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

LapseProfile lapse_from(const json& j) {
  if (!j.is_object()) throw SchemaError("beta must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw SchemaError("beta.kind must be a string");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "constant") {
      if (!j.contains("value")) throw SchemaError("beta.value is required");
      return LapseProfile::constant(finite_number(j["value"], "beta.value"));
    }
    if (kind == "tabulated") {
      if (!j.contains("times") || !j.contains("values"))
        throw SchemaError("beta.times and beta.values are required");
      return LapseProfile::tabulated(number_array(j["times"], "beta.times"),
                                     number_array(j["values"], "beta.values"));
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("beta: ") + e.what());
  }
  throw SchemaError("beta.kind must be \"constant\" or \"tabulated\"");
}

PairInput pair_from(const json& j) {
  if (!j.is_object()) throw SchemaError("pair document must be an object");
  if (!j.contains("theta") || !j["theta"].is_object()) throw SchemaError("theta object is required");
  const json& th = j["theta"];
  std::array<double, 6> c{};
  const char* names[6] = {"uu", "ul", "un", "ll", "ln", "nn"};
  for (std::size_t i = 0; i < 6; ++i) {
    if (!th.contains(names[i])) throw SchemaError(std::string("theta.") + names[i] + " is required");
    c[i] = finite_number(th[names[i]], std::string("theta.") + names[i]);
  }
  PairInput in;
  in.pair.theta = Sym3(c[0], c[1], c[2], c[3], c[4], c[5]);
  if (j.contains("beta")) in.beta = lapse_from(j["beta"]);
  return in;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

PairInput parse_pair(const std::string& text) { return pair_from(parse_json(text)); }

std::vector<PairInput> parse_sweep(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw SchemaError("sweep document must be an array of pairs");
  std::vector<PairInput> out;
  for (const auto& e : j) out.push_back(pair_from(e));
  return out;
}

LapseProfile parse_lapse(const std::string& text) {
  const json j = parse_json(text);
  if (j.is_object() && j.contains("beta")) return lapse_from(j["beta"]);
  return lapse_from(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

// JsonWriter

void JsonWriter::separator() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  first_.pop_back();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  first_.pop_back();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separator();
  out_ += json(k).dump();
  out_ += ':';
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  if (!std::isfinite(x)) return value(format_double(x));
  separator();
  out_ += format_double(x);
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  separator();
  out_ += json(s).dump();
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  separator();
  out_ += b ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(long long n) {
  separator();
  out_ += std::to_string(n);
  return *this;
}

JsonWriter& JsonWriter::null() {
  separator();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::value(const std::optional<double>& x) { return x ? value(*x) : null(); }

// Tables

std::vector<std::string> trajectory_columns() {
  return {"t",       "B_t",  "theta_uu", "theta_ul", "theta_un", "theta_ll", "theta_ln", "theta_nn",
          "U_uu",    "U_ul", "U_un",     "U_lu",     "U_ll",     "U_ln",     "U_nu",     "U_nl",
          "U_nn",    "h_uu", "h_ul",     "h_un",     "h_ll",     "h_ln",     "h_nn",     "H_t",
          "r1",      "r2",   "r3",       "r4"};
}

namespace {

std::vector<double> row_values(const TrajectoryRow& r) {
  std::vector<double> v{r.state.t, r.b};
  for (double x : r.state.theta.components()) v.push_back(x);
  for (double x : r.state.frame.m) v.push_back(x);
  for (double x : r.state.metric.components()) v.push_back(x);
  v.push_back(r.state.hamiltonian);
  v.push_back(r.residuals.frame_evolution);
  v.push_back(r.residuals.structure);
  v.push_back(r.residuals.transport);
  v.push_back(r.residuals.closedness);
  return v;
}

}  // namespace

std::string format_bound(const std::optional<double>& b) { return b ? format_double(*b) : "unknown"; }

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows,
                           const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  const auto cols = trajectory_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : rows) {
    const auto v = row_values(r);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += format_double(v[i]);
    }
    out += '\n';
  }
  return out;
}

void write_lifespan(JsonWriter& w, const Lifespan& ls) {
  w.begin_object();
  w.key("t_minus").value(ls.t_minus);
  w.key("t_plus").value(ls.t_plus);
  w.key("immortal").value(ls.immortal);
  w.key("forward_criterion_immortal");
  if (ls.forward_criterion_immortal) w.value(*ls.forward_criterion_immortal);
  else w.null();
  w.end_object();
}

std::string trajectory_json(const std::vector<TrajectoryRow>& rows, const Lifespan& lifespan,
                            const std::string& method, const std::vector<std::string>& warnings) {
  JsonWriter w;
  w.begin_object();
  w.key("method").value(method);
  w.key("lifespan");
  write_lifespan(w, lifespan);
  w.key("warnings").begin_array();
  for (const auto& s : warnings) w.value(s);
  w.end_array();
  const auto cols = trajectory_columns();
  w.key("columns").begin_array();
  for (const auto& c : cols) w.value(c);
  w.end_array();
  w.key("rows").begin_array();
  for (const auto& r : rows) {
    w.begin_array();
    for (double x : row_values(r)) w.value(x);
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

}  // namespace spinorflow
