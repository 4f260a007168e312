#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hsym/cli.hpp"

namespace hsym {

namespace {

std::string number(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return j.dump();
  double x = j.get<double>();
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) x = 0.0;  // no -0, it would come back as an integer
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void emit(const Json& j, int indent, std::string& out) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(it.key()).dump() + ": ";
      emit(it.value(), indent + 2, out);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array()) {
    bool flat = true;
    for (const auto& x : j) flat = flat && scalar(x);
    bool cells = !flat;
    for (const auto& x : j) {
      if (!x.is_array()) {
        cells = false;
        break;
      }
      for (const auto& y : x) cells = cells && scalar(y);
    }
    if (flat || cells) {
      // numbers and arrays of numbers stay on one line
      out += "[";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ", ";
        emit(j[k], indent + 2, out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) out += ",\n";
      out += inner;
      emit(j[k], indent + 2, out);
    }
    out += "\n" + pad + "]";
  } else if (j.is_number()) {
    out += number(j);
  } else {
    out += j.dump();
  }
}

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json cells_of(const Element& e, int r0, int c0, int rows, int cols) {
  Json out = Json::array();
  for (int r = 0; r < rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < cols; ++c) {
      Json cell = Json::array();
      const double* co = e.entry(r0 + r, c0 + c);
      for (int u = 0; u < e.dim(); ++u) cell.push_back(co[u]);
      row.push_back(cell);
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace

std::string emit_json(const Json& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) bad("cannot read " + path);
  ss << f.rdbuf();
  return ss.str();
}

Json alg_to_json(const AlgebraSpec& a) {
  const char* g = a.tower.ground == Ground::R ? "R" : a.tower.ground == Ground::C ? "C" : "H";
  const char* e = a.tower.ext == Ext::None ? "none" : a.tower.ext == Ext::Cplx ? "c" : "h";
  Json j;
  j["ground"] = g;
  j["n"] = a.n;
  j["ext"] = e;
  j["centralI"] = a.tower.central;
  j["sigma"] = sigma_name(a.tower, a.sigma);
  return j;
}

AlgebraSpec alg_from_json(const Json& j) {
  AlgebraSpec a;
  const Json &g = field(j, "ground"), &n = field(j, "n"), &e = field(j, "ext"), &c = field(j, "centralI"),
             &s = field(j, "sigma");
  if (!g.is_string() || !n.is_number_integer() || !e.is_string() || !c.is_boolean() || !s.is_string())
    bad("alg fields have the wrong types");
  const std::string gs = g.get<std::string>(), es = e.get<std::string>();
  if (gs == "R") a.tower.ground = Ground::R;
  else if (gs == "C") a.tower.ground = Ground::C;
  else if (gs == "H") a.tower.ground = Ground::H;
  else bad("unknown ground '" + gs + "'");
  if (es == "none") a.tower.ext = Ext::None;
  else if (es == "c") a.tower.ext = Ext::Cplx;
  else if (es == "h") a.tower.ext = Ext::Quat;
  else bad("unknown ext '" + es + "'");
  a.tower.central = c.get<bool>();
  a.n = n.get<int>();
  if (a.n < 1 || a.n > 64) bad("matrix size out of range");
  a.sigma = parse_sigma(a.tower, s.get<std::string>());
  try {
    validate(a);
  } catch (const Error& err) {
    bad(err.what());
  }
  return a;
}

Json element_doc(const Element& e) {
  Json j;
  j["alg"] = alg_to_json(e.spec());
  j["rows"] = cells_of(e, 0, 0, e.n(), e.n());
  return j;
}

Json mat2_doc(const Mat2& m) {
  Element b = to_block(m);
  Json j;
  j["alg"] = alg_to_json(m.spec());
  j["rows"] = cells_of(b, 0, 0, b.n(), b.n());
  return j;
}

Json vec2_doc(const Vec2& v) {
  const int n = v.spec().n;
  Json rows = cells_of(v.x1, 0, 0, n, n);
  for (auto& r : cells_of(v.x2, 0, 0, n, n)) rows.push_back(r);
  Json j;
  j["alg"] = alg_to_json(v.spec());
  j["rows"] = rows;
  return j;
}

Document parse_document(const Json& j) {
  Document d;
  d.alg = alg_from_json(field(j, "alg"));
  const Json& rows = field(j, "rows");
  const int n = d.alg.n, dim = d.alg.dim();
  if (!rows.is_array() || rows.empty()) bad("rows must be a nonempty array");
  const int nr = int(rows.size());
  if (!rows[0].is_array()) bad("rows must hold arrays");
  const int nc = int(rows[0].size());
  if (nr == n && nc == n) d.shape = DocShape::Element;
  else if (nr == 2 * n && nc == 2 * n) d.shape = DocShape::Mat2;
  else if (nr == 2 * n && nc == n) d.shape = DocShape::Vec2;
  else bad("rows have shape " + std::to_string(nr) + "x" + std::to_string(nc) + " for n = " + std::to_string(n));
  AlgebraSpec big = d.shape == DocShape::Element ? d.alg : resized(d.alg, 2 * n);
  Element all(big);
  for (int r = 0; r < nr; ++r) {
    const Json& row = rows[r];
    if (!row.is_array() || int(row.size()) != nc) bad("ragged rows");
    for (int c = 0; c < nc; ++c) {
      const Json& cell = row[c];
      if (!cell.is_array() || int(cell.size()) != dim)
        bad("coefficient arrays need exactly " + std::to_string(dim) + " entries");
      for (int u = 0; u < dim; ++u) {
        if (!cell[u].is_number()) bad("coefficients must be numbers");
        all(r, c, u) = cell[u].get<double>();
      }
    }
  }
  switch (d.shape) {
    case DocShape::Element: d.e = all; break;
    case DocShape::Mat2: d.m = from_block(all); break;
    case DocShape::Vec2: {
      Element x1(d.alg), x2(d.alg);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          for (int u = 0; u < dim; ++u) {
            x1(r, c, u) = all(r, c, u);
            x2(r, c, u) = all(n + r, c, u);
          }
      d.v = {x1, x2};
      break;
    }
  }
  return d;
}

Json point_doc(const ModelPoint& p) {
  switch (p.mid.kind) {
    case Kind::C: return mat2_doc(p.J);
    case Kind::P: return vec2_doc(p.x);
    default: return element_doc(p.z);
  }
}

namespace {

void need_shape(const Document& d, DocShape want, const ModelId& mid) {
  if (d.shape != want) bad("document shape does not fit the " + model_id_name(mid) + " model");
}

}  // namespace

ModelPoint point_from_doc(const ModelId& mid, const Document& d) {
  AlgebraSpec base = base_of(d.alg);
  switch (mid.kind) {
    case Kind::C: need_shape(d, DocShape::Mat2, mid); return make_c(mid, base, d.m);
    case Kind::P: need_shape(d, DocShape::Vec2, mid); return make_p(mid, base, d.v);
    default: need_shape(d, DocShape::Element, mid); return make_z(mid, base, d.e);
  }
}

Json tangent_doc(const TangentVector& t) {
  switch (t.at.mid.kind) {
    case Kind::C: return mat2_doc(t.L);
    case Kind::P: return vec2_doc(t.w);
    default: return element_doc(t.v);
  }
}

TangentVector tangent_from_doc(const ModelPoint& p, const Document& d) {
  switch (p.mid.kind) {
    case Kind::C: need_shape(d, DocShape::Mat2, p.mid); return tangent_c(p, d.m);
    case Kind::P: need_shape(d, DocShape::Vec2, p.mid); return tangent_p(p, d.v);
    default: need_shape(d, DocShape::Element, p.mid); return tangent_z(p, d.e);
  }
}

ModelId parse_model_id(ModelFamily f, const std::string& s, int default_sign) {
  if (s.empty()) bad("empty model name");
  std::string k = s;
  int sign = default_sign;
  if (k.back() == '+' || k.back() == '-') {
    sign = k.back() == '+' ? 1 : -1;
    k.pop_back();
  }
  return {f, parse_kind(k), sign};
}

std::string model_id_name(const ModelId& m) {
  std::string k = kind_name(m.kind);
  if (m.kind == Kind::P || m.kind == Kind::U) k += m.sign > 0 ? "+" : "-";
  return k;
}

}  // namespace hsym
