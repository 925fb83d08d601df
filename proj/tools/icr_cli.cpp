#include "icr/cone_io.hpp"
#include "icr/cosets.hpp"
#include "icr/decomposition.hpp"
#include "icr/errors.hpp"
#include "icr/experiment.hpp"
#include "icr/oracle.hpp"
#include "icr/special_cones.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace icr;

namespace {

enum Exit { kOk = 0, kParse = 2, kMembership = 3, kPrecondition = 4, kInternal = 5, kUnresolved = 6 };

std::string theorem_of(const std::string& method) {
  if (method == "sebo-dim3") return "Sebo (dim <= 3)";
  if (method == "theorem1") return "bound n for |det| <= 5";
  if (method == "corollary") return "Corollary (<= 3 nontrivial cosets)";
  if (method == "theorem2") return "bound n + |det| - 3 for 6 <= |det| <= n";
  return "Sebo (2n - 2)";
}

int cmd_analyze(const std::string& file, bool json) {
  ConeDocument doc = load_cone_file(file);
  const SimplicialCone& c = doc.cone;
  CosetProfile p = coset_profile(c);
  HilbertBasis hb = hilbert_basis(c);
  IcrBound b = icr_upper_bound(c);
  if (json) {
    Json j;
    j["dimension"] = c.dim();
    j["ambient_dimension"] = c.ambient_dim();
    j["multiplicity"] = int_to_json(multiplicity(c));
    j["cosets"] = to_json(p);
    Json h = Json::array();
    for (const IntVector& v : hb.elements) h.push_back(to_json(v));
    j["hilbert_basis"] = h;
    j["bound"] = {{"value", int_to_json(b.value)}, {"method", b.method}};
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "dimension            " << c.dim() << " (ambient " << c.ambient_dim() << ")\n";
  std::cout << "multiplicity         " << multiplicity(c) << "\n";
  std::cout << "elementary divisors  " << to_string(p.elementary_divisors) << "\n";
  std::cout << "cyclic               " << (p.cyclic ? "yes" : "no") << "\n";
  std::cout << "nontrivial classes   " << p.nontrivial_class_count << "\n";
  for (std::size_t i = 0; i < c.dim(); ++i)
    std::cout << "  r" << i + 1 << " " << to_string(c.generator(i)) << "  class "
              << (p.class_of[i] == 0 ? std::string("trivial") : std::to_string(p.class_of[i])) << "\n";
  std::cout << "hilbert basis size   " << hb.size() << "\n";
  std::cout << "applicable result    " << theorem_of(b.method) << "\n";
  std::cout << "icr upper bound      " << b.value << " (" << b.method << ")\n";
  return kOk;
}

int cmd_decompose(const std::string& file, const std::string& z_text, bool certify, bool hilbert_only) {
  ConeDocument doc = load_cone_file(file);
  IntVector z = parse_int_list(z_text);
  DecompositionEngine eng(doc.cone);
  Decomposition d = eng.decompose(z);
  Decomposition h = eng.reduce_to_hilbert(d);
  Json j = to_json(hilbert_only ? h : d);
  j["hilbert_term_count"] = h.term_count();
  if (certify) {
    OracleReport o = min_terms(doc.cone, z);
    Json oj;
    oj["status"] = o.status == OracleReport::Status::Exact ? "exact" : "inconclusive";
    if (o.status == OracleReport::Status::Exact) {
      oj["min_terms"] = o.min_terms;
      Json w = Json::array();
      for (const Term& t : o.witness.terms) w.push_back({{"coeff", int_to_json(t.coeff)}, {"vector", to_json(t.vector)}});
      oj["witness"] = w;
    }
    oj["nodes"] = o.nodes;
    oj["bound"] = o.bound;
    j["oracle"] = oj;
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_cover5(const std::string& file) {
  ConeDocument doc = load_cone_file(file);
  UnimodularCover cv = build_cover_det5(doc.cone);
  CoverVerification v = verify_cover(cv, doc.cone);
  Json j = to_json(cv);
  Json vj = {{"ok", v.ok}, {"volume", v.volume.get_str()}, {"disjoint_pairs", v.disjoint_pairs}, {"sampled_points", v.sampled_points}};
  Json f = Json::array();
  for (const std::string& s : v.failures) f.push_back(s);
  vj["failures"] = f;
  j["oracle_verification"] = vj;
  std::cout << j.dump(2) << "\n";
  std::size_t three = 0, two = 0, one = 0;
  for (std::size_t c : cv.generator_counts) {
    three += c == 3;
    two += c == 2;
    one += c == 1;
  }
  std::cerr << "subcones " << cv.subcones.size() << " (census " << three << "/" << two << "/" << one << "), volume "
            << cv.volume.get_str() << " = " << cv.expected_volume.get_str() << ", disjoint pairs " << cv.disjoint_pairs
            << ", oracle " << (v.ok ? "ok" : "FAILED") << "\n";
  return v.ok ? kOk : kInternal;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      std::size_t d = std::stoul(s);
      return {d, d};
    }
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParseError("--dims expects a or a..b, got \"" + s + "\"");
  }
}

int cmd_experiment(const std::string& dims, ExperimentConfig c, const std::string& out) {
  std::tie(c.dim_lo, c.dim_hi) = parse_dims(dims);
  std::string csv;
  ExperimentResult r;
  if (c.count > 0 && c.min_det <= c.max_det) r = run_experiment(c);
  csv = to_csv(r.rows);
  if (out.empty() || out == "-") {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ParseError("cannot write " + out);
    f << csv;
  }
  std::cerr << r.rows.size() << " cones, " << r.points << " sample points, " << r.violations << " violations\n";
  return r.violations == 0 ? kOk : kInternal;
}

int cmd_prop1(const std::string& r_text, long dilation) {
  SkewCone s = make_skew_cone(parse_int_list(r_text));
  SkewCheck chk = check_prop_skew(s.spec);
  Json j;
  j["n"] = s.spec.n;
  j["delta"] = int_to_json(s.spec.delta);
  j["r"] = to_json(s.spec.r);
  Json vals = Json::array();
  for (const Int& v : s.spec.values) vals.push_back(int_to_json(v));
  j["I"] = vals;
  j["hypothesis"] = s.spec.hypothesis;
  j["nontrivial_classes"] = chk.nontrivial_classes;
  j["cross_checks_ok"] = chk.ok;
  Json f = Json::array();
  for (const std::string& m : chk.failures) f.push_back(m);
  j["failures"] = f;
  SampleReport sr = sample_icp(s.cone, dilation);
  j["sampled_max_min_terms"] = sr.max_min_terms;
  j["sampled_icp"] = sr.max_min_terms <= s.spec.n;
  std::cout << j.dump(2) << "\n";
  return chk.ok ? kOk : kInternal;
}

Json gorenstein_json(const GorensteinCheck& g) {
  Json j;
  j["lambda"] = to_json(g.lambda);
  j["y"] = g.y_integral ? to_json(g.y) : to_json(g.y_rational);
  j["y_integral"] = g.y_integral;
  j["y_interior"] = g.y_interior;
  j["y_in_par"] = g.y_in_par;
  j["covering_sampled"] = g.covering_sampled;
  j["sampled_interior_points"] = g.sampled_interior;
  j["premise_holds"] = g.premise_holds;
  j["divisor_count"] = g.divisor_count;
  j["cyclic"] = g.cyclic;
  return j;
}

int cmd_prop2(const std::string& file, long dilation) {
  ConeDocument doc = load_cone_file(file);
  Json j = gorenstein_json(gorenstein_check(doc.cone, dilation));
  j["sampled_max_min_terms"] = sample_icp(doc.cone, dilation).max_min_terms;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_pq(long p, long q, long dilation) {
  PqCone c = make_pq_cone(p, q);
  Json j;
  j["p"] = p;
  j["q"] = q;
  j["k"] = c.k;
  j["l"] = c.l;
  Json g = Json::array();
  for (std::size_t i = 0; i < 4; ++i) g.push_back(to_json(c.cone.generator(i)));
  j["generators"] = g;
  j["det"] = int_to_json(multiplicity(c.cone));
  j["gorenstein"] = gorenstein_json(gorenstein_check(c.cone, dilation));
  j["hnf_not_skew"] = pq_not_skew(c.cone);
  if (auto re = skew_reordering(c.cone)) {
    Json order = Json::array();
    for (std::size_t o : re->order) order.push_back(o + 1);
    j["skew_after_reordering"] = {{"order", order}, {"r", to_json(re->r)}, {"hypothesis", make_skew_cone(re->r).spec.hypothesis}};
  } else {
    j["skew_after_reordering"] = nullptr;
  }
  j["sampled_max_min_terms"] = sample_icp(c.cone, dilation).max_min_terms;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer Caratheodory rank of simplicial cones: analysis, decomposition, certificates"};
  app.require_subcommand(1);

  std::string file, z, dims = "3..4", out, r_text;
  bool json = false, certify = false, hilbert_only = false;
  ExperimentConfig ec;
  long p = 2, q = 3, dilation = 2;

  auto* analyze = app.add_subcommand("analyze", "Multiplicity, cosets, Hilbert basis and the applicable bound");
  analyze->add_option("file", file, "cone JSON")->required();
  analyze->add_flag("--json", json, "machine-readable output");

  auto* dec = app.add_subcommand("decompose", "Decompose an integer point of the cone");
  dec->add_option("file", file, "cone JSON")->required();
  dec->add_option("--z", z, "target, e.g. 3,2")->required();
  dec->add_flag("--certify-oracle", certify, "also compute the exact minimum");
  dec->add_flag("--hilbert-only", hilbert_only, "emit the Hilbert basis reduction");

  auto* cover = app.add_subcommand("cover5", "Unimodular cover of a 4-dimensional multiplicity-5 cone");
  cover->add_option("file", file, "cone JSON")->required();

  auto* exp = app.add_subcommand("experiment", "Random sweep written as CSV");
  exp->add_option("--dims", dims, "a..b")->capture_default_str();
  exp->add_option("--min-det", ec.min_det)->capture_default_str();
  exp->add_option("--max-det", ec.max_det)->capture_default_str();
  exp->add_option("--count", ec.count, "cones per (dim, det) cell")->capture_default_str();
  exp->add_option("--dilation", ec.dilation)->capture_default_str();
  exp->add_option("--seed", ec.seed)->capture_default_str();
  exp->add_option("--out", out, "CSV path, stdout when omitted");
  exp->add_flag("--timing", ec.timing, "fill elapsed_ms (output no longer byte-stable)");

  auto* special = app.add_subcommand("special", "Special cone families");
  special->require_subcommand(1);
  auto* prop1 = special->add_subcommand("prop1", "Skew-vector cone (e1, ..., e_{n-1}, r)");
  prop1->add_option("--r", r_text, "r with r_n = delta, e.g. 0,1,2,4")->required();
  prop1->add_option("--dilation", dilation)->capture_default_str();
  auto* prop2 = special->add_subcommand("prop2", "Gorenstein-type premise check");
  prop2->add_option("file", file, "cone JSON")->required();
  prop2->add_option("--dilation", dilation)->capture_default_str();
  auto* pq = special->add_subcommand("pq", "The p,q example cone");
  pq->add_option("--p", p)->capture_default_str();
  pq->add_option("--q", q)->capture_default_str();
  pq->add_option("--dilation", dilation)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*analyze) return cmd_analyze(file, json);
    if (*dec) return cmd_decompose(file, z, certify, hilbert_only);
    if (*cover) return cmd_cover5(file);
    if (*exp) return cmd_experiment(dims, ec, out);
    if (*prop1) return cmd_prop1(r_text, dilation);
    if (*prop2) return cmd_prop2(file, dilation);
    if (*pq) return cmd_pq(p, q, dilation);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const NotInCone& e) {
    std::cerr << "not in cone: " << e.what() << "\n";
    return kMembership;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const Unresolved& e) {
    std::cerr << "unresolved: " << e.what() << "\n";
    return kUnresolved;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
