#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "hsym/hitchin.hpp"
#include "hsym/transforms.hpp"

namespace hsym {

using Json = nlohmann::ordered_json;

// Numbers go out with 17 significant digits; arrays of scalars stay on one line.
std::string emit_json(const Json& j);
Json parse_json_text(const std::string& text);
std::string read_text(const std::string& path, std::istream& in);  // "-" reads in

Json alg_to_json(const AlgebraSpec& a);
AlgebraSpec alg_from_json(const Json& j);

// rows is n x n for an element, 2n x 2n for a 2x2 matrix, 2n x n for a vector.
enum class DocShape { Element, Mat2, Vec2 };
struct Document {
  AlgebraSpec alg;
  DocShape shape = DocShape::Element;
  Element e;
  Mat2 m;
  Vec2 v;
};
Json element_doc(const Element& e);
Json mat2_doc(const Mat2& m);
Json vec2_doc(const Vec2& v);
Document parse_document(const Json& j);

Json point_doc(const ModelPoint& p);
// The base algebra is read off the document's tower.
ModelPoint point_from_doc(const ModelId& mid, const Document& d);
Json tangent_doc(const TangentVector& t);
TangentVector tangent_from_doc(const ModelPoint& p, const Document& d);

// "C", "P+", "U-", "B" and the long names Cmodel, Pmodel, ...
ModelId parse_model_id(ModelFamily f, const std::string& s, int default_sign = 1);
std::string model_id_name(const ModelId& m);

struct CheckStat {
  std::string name;
  double tol = 0;
  double max = 0;
  int failed = 0;
};

struct SuiteResult {
  std::string name;
  int criterion = 0;
  int cases = 0;
  std::vector<CheckStat> checks;
  std::vector<double> case_residuals;  // worst residual/tol per case
  std::vector<std::string> failures;   // first few
  bool pass = true;
  double seconds = 0;
};

struct BatteryOptions {
  std::uint64_t seed = 42;
  int cases = 0;          // 0: the counts the criteria ask for
  double tol_scale = 1.0;
  std::string filter;     // substring of suite names
};

std::vector<std::string> suite_names();
std::vector<SuiteResult> run_battery(const BatteryOptions& opt);
// Timing fields are left out unless with_times.
Json battery_json(const BatteryOptions& opt, const std::vector<SuiteResult>& r, bool per_case, bool with_times);

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hsym
