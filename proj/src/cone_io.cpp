#include "icr/cone_io.hpp"

#include "icr/errors.hpp"

#include <fstream>
#include <sstream>

namespace icr {

namespace {

const Int kMaxExact = (Int(1) << 53) - 1;

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Int parse_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw ParseError("not an integer: \"" + s + "\"");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw ParseError("not an integer: \"" + s + "\"");
  return Int(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Json int_to_json(const Int& x) {
  if (abs(x) <= kMaxExact) return Json(x.get_si());
  return Json(x.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Int(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) return parse_decimal(j.get<std::string>());
  throw ParseError("expected an integer, got " + j.dump());
}

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(x.get_str());
  return a;
}

IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of integers, got " + j.dump());
  IntVector v;
  for (const Json& x : j) v.push_back(int_from_json(x));
  return v;
}

ConeDocument parse_cone_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
  }
  if (!j.is_object() || !j.contains("generators")) throw ParseError("missing \"generators\"", 1);
  const Json& g = j["generators"];
  if (!g.is_array() || g.empty()) throw ParseError("\"generators\" must be a non-empty array of integer vectors");

  // Locate each generator's line so errors point into the file.
  auto gen_line = [&](std::size_t idx) {
    std::size_t pos = text.find("\"generators\"");
    pos = text.find('[', pos);
    for (std::size_t seen = 0; pos != std::string::npos; ) {
      pos = text.find('[', pos + 1);
      if (pos == std::string::npos) break;
      if (seen++ == idx) return line_of(text, pos);
      pos = text.find(']', pos);
    }
    return std::size_t(0);
  };

  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < g.size(); ++i) {
    try {
      cols.push_back(int_vector_from_json(g[i]));
    } catch (const ParseError& e) {
      std::size_t line = gen_line(i);
      throw ParseError("line " + std::to_string(line) + ": generator " + std::to_string(i + 1) + ": " + e.what(), line);
    }
    if (cols.back().size() != cols.front().size()) {
      std::size_t line = gen_line(i);
      throw ParseError("line " + std::to_string(line) + ": generator " + std::to_string(i + 1) + " has " +
                           std::to_string(cols.back().size()) + " entries, expected " + std::to_string(cols.front().size()),
                       line);
    }
  }
  if (cols.front().empty()) throw ParseError("generators must be non-empty vectors");
  IntMatrix m(cols.front().size(), cols.size());
  for (std::size_t j2 = 0; j2 < cols.size(); ++j2) m.set_column(j2, cols[j2]);

  ConeDocument doc;
  try {
    doc.cone = SimplicialCone(m);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("generators: ") + e.what());
  }
  if (j.contains("name") && j["name"].is_string()) doc.name = j["name"].get<std::string>();
  if (j.contains("source") && j["source"].is_string()) doc.source = j["source"].get<std::string>();
  return doc;
}

ConeDocument load_cone_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cone_document(ss.str());
}

std::string dump_cone_document(const ConeDocument& doc) {
  Json j;
  if (!doc.name.empty()) j["name"] = doc.name;
  if (!doc.source.empty()) j["source"] = doc.source;
  Json g = Json::array();
  for (std::size_t i = 0; i < doc.cone.dim(); ++i) g.push_back(to_json(doc.cone.generator(i)));
  j["generators"] = g;
  return j.dump(2) + "\n";
}

IntVector parse_int_list(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw ParseError("unbalanced brackets in \"" + text + "\"");
    s = s.substr(1, s.size() - 2);
  }
  IntVector out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty entry in \"" + text + "\"");
    out.push_back(parse_decimal(item.substr(a, b - a + 1)));
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

namespace {

const char* kind_name(TraceStep::Kind k) {
  switch (k) {
    case TraceStep::Kind::Strip: return "strip";
    case TraceStep::Kind::Project: return "project";
    case TraceStep::Kind::Base: return "base";
    case TraceStep::Kind::Cover5: return "cover5";
  }
  return "?";
}

}  // namespace

Json to_json(const TraceStep& s) {
  Json j;
  j["kind"] = kind_name(s.kind);
  j["dim"] = s.dim;
  switch (s.kind) {
    case TraceStep::Kind::Strip:
      j["i"] = s.i + 1;
      j["mu"] = int_to_json(s.value);
      break;
    case TraceStep::Kind::Project:
      j["i"] = s.i + 1;
      j["j"] = s.j + 1;
      j["sigma"] = int_to_json(s.value);
      break;
    case TraceStep::Kind::Base:
      j["method"] = s.method;
      break;
    case TraceStep::Kind::Cover5:
      j["subcone"] = s.subcone + 1;
      break;
  }
  return j;
}

TraceStep trace_step_from_json(const Json& j) {
  TraceStep s;
  const std::string k = j.at("kind").get<std::string>();
  s.dim = j.at("dim").get<std::size_t>();
  if (k == "strip") {
    s.kind = TraceStep::Kind::Strip;
    s.i = j.at("i").get<std::size_t>() - 1;
    s.value = int_from_json(j.at("mu"));
  } else if (k == "project") {
    s.kind = TraceStep::Kind::Project;
    s.i = j.at("i").get<std::size_t>() - 1;
    s.j = j.at("j").get<std::size_t>() - 1;
    s.value = int_from_json(j.at("sigma"));
  } else if (k == "base") {
    s.kind = TraceStep::Kind::Base;
    s.method = j.at("method").get<std::string>();
  } else if (k == "cover5") {
    s.kind = TraceStep::Kind::Cover5;
    s.subcone = j.at("subcone").get<std::size_t>() - 1;
  } else {
    throw ParseError("unknown trace step kind \"" + k + "\"");
  }
  return s;
}

Json to_json(const Decomposition& d) {
  Json j;
  j["target"] = to_json(d.target);
  Json terms = Json::array();
  for (const Term& t : d.terms) terms.push_back({{"coeff", int_to_json(t.coeff)}, {"vector", to_json(t.vector)}});
  j["terms"] = terms;
  j["term_count"] = d.term_count();
  j["raw_term_count"] = d.raw_term_count;
  j["all_hilbert"] = d.all_hilbert;
  Json tr = Json::array();
  for (const TraceStep& s : d.trace.steps) tr.push_back(to_json(s));
  j["trace"] = tr;
  return j;
}

Decomposition decomposition_from_json(const Json& j) {
  Decomposition d;
  d.target = int_vector_from_json(j.at("target"));
  for (const Json& t : j.at("terms")) d.terms.push_back({int_from_json(t.at("coeff")), int_vector_from_json(t.at("vector"))});
  d.raw_term_count = j.at("raw_term_count").get<std::size_t>();
  d.all_hilbert = j.at("all_hilbert").get<bool>();
  for (const Json& s : j.at("trace")) d.trace.steps.push_back(trace_step_from_json(s));
  return d;
}

Json to_json(const UnimodularCover& c) {
  Json j;
  Json subs = Json::array();
  for (std::size_t s = 0; s < c.subcones.size(); ++s) {
    Json gens = Json::array();
    for (std::size_t k = 0; k < c.subcones[s].cols(); ++k) gens.push_back(to_json(c.subcones[s].column(k)));
    subs.push_back({{"label", c.labels[s]},
                    {"generators", gens},
                    {"cone_generators", c.generator_counts[s]},
                    {"det", int_to_json(c.determinants[s])}});
  }
  Json ys = Json::array();
  for (const IntVector& y : c.y) ys.push_back(to_json(y));
  Json order = Json::array();
  for (std::size_t o : c.order) order.push_back(o + 1);
  j["relabel_order"] = order;
  j["y"] = ys;
  j["subcones"] = subs;
  j["certificates"] = {{"unimodular", c.unimodular},
                       {"disjoint_pairs", c.disjoint_pairs},
                       {"disjoint", c.disjoint},
                       {"volume", c.volume.get_str()},
                       {"expected_volume", c.expected_volume.get_str()},
                       {"certified", c.certified()}};
  return j;
}

Json to_json(const CosetProfile& p) {
  Json j;
  Json flags = Json::array(), classes = Json::array(), pairs = Json::array();
  for (bool b : p.integral_flags) flags.push_back(b);
  for (std::size_t c : p.class_of) classes.push_back(c);
  for (const auto& [a, b] : p.equal_pairs) pairs.push_back({a + 1, b + 1});
  j["integral"] = flags;
  j["class_of"] = classes;
  j["equal_pairs"] = pairs;
  j["nontrivial_classes"] = p.nontrivial_class_count;
  j["elementary_divisors"] = to_json(p.elementary_divisors);
  j["cyclic"] = p.cyclic;
  return j;
}

}  // namespace icr
