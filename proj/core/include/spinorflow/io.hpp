#pragma once

// JSON input documents and CSV/JSON output tables. All floating point output
// goes through format_double so identical runs give identical bytes.

#include <optional>
#include <string>
#include <vector>

#include "spinorflow/cauchy_pair.hpp"
#include "spinorflow/flow_exact.hpp"
#include "spinorflow/flow_numeric.hpp"
#include "spinorflow/lapse.hpp"

namespace spinorflow {

struct PairInput {
  CauchyPair pair;
  LapseProfile beta = LapseProfile::constant(1.0);
};

/// {"theta": {"uu":..,"ul":..,"un":..,"ll":..,"ln":..,"nn":..}, "beta": {...}}
/// "beta" is optional. Throws SchemaError.
PairInput parse_pair(const std::string& text);
/// JSON array of pair documents.
std::vector<PairInput> parse_sweep(const std::string& text);
/// {"kind":"constant","value":v} or {"kind":"tabulated","times":[..],"values":[..]}
LapseProfile parse_lapse(const std::string& text);

/// Throws IoError.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// printf "%.12e"; non-finite values print as inf, -inf, nan.
std::string format_double(double x);

/// Minimal streaming JSON emitter with fixed number formatting.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double x);  ///< non-finite values become strings
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const char* s) { return value(std::string(s)); }
  JsonWriter& value(bool b);
  JsonWriter& value(long long n);
  JsonWriter& null();
  /// Empty optional becomes null.
  JsonWriter& value(const std::optional<double>& x);

  const std::string& str() const { return out_; }

 private:
  void separator();
  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

struct TrajectoryRow {
  FlowState state;
  double b = 0.0;  ///< B_t
  ResidualReport residuals;
};

/// Column names t, B_t, theta_*, U_*, h_*, H_t, r1..r4.
std::vector<std::string> trajectory_columns();

/// Lines starting with '#' carry `comments`, then the header and one row per state.
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows,
                           const std::vector<std::string>& comments = {});

std::string trajectory_json(const std::vector<TrajectoryRow>& rows, const Lifespan& lifespan,
                            const std::string& method, const std::vector<std::string>& warnings);

void write_lifespan(JsonWriter& w, const Lifespan& ls);
std::string format_bound(const std::optional<double>& b);

}  // namespace spinorflow
